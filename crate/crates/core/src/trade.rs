//! Payoffs from costly trade in markets formed by network components.
//!
//! A player in a component of `k` players with `lambda` links earns the
//! expected gross gain from trade `G(k)` and pays an equal share
//! `c * lambda / k` of the component's link costs, where
//!
//! ```text
//! G(k) = 1 / (k 2^k) * sum_{r=1}^{k-1} C(k, r) sqrt(r (k - r)),   G(1) = 0.
//! ```
//!
//! Square roots are replaced once, at construction, by continued-fraction
//! convergents with bounded denominator; everything downstream is exact.

use num_bigint::BigInt;
use num_integer::Roots;

use crate::error::{Error, Result};
use crate::network::PlayerSet;
use crate::payoff::NetworkPayoff;
use crate::rational::Rational;

pub const DEFAULT_PRECISION: u64 = 1_000_000_000_000;

/// The last convergent of the continued fraction of `sqrt(m)` whose denominator
/// does not exceed `max_denom`. Exact when `m` is a perfect square.
pub fn sqrt_approx(m: u64, max_denom: u64) -> Rational {
    let a0 = m.sqrt();
    if a0 * a0 == m {
        return Rational::from_bigints(BigInt::from(a0), BigInt::from(1));
    }
    let (m, a0) = (m as i128, a0 as i128);
    let bound = max_denom.max(1) as i128;
    // convergents p/q, seeded with p_{-1}/q_{-1} = 1/0
    let (mut p_prev, mut q_prev) = (1i128, 0i128);
    let (mut p, mut q) = (a0, 1i128);
    let (mut mk, mut dk, mut ak) = (0i128, 1i128, a0);
    loop {
        mk = dk * ak - mk;
        dk = (m - mk * mk) / dk;
        ak = (a0 + mk) / dk;
        let p_next = ak * p + p_prev;
        let q_next = ak * q + q_prev;
        if q_next > bound {
            break;
        }
        (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
    }
    Rational::from_bigints(BigInt::from(p), BigInt::from(q))
}

fn binomial(k: u64, r: u64) -> i64 {
    let mut acc: i64 = 1;
    for t in 0..r {
        acc = acc * (k - t) as i64 / (t + 1) as i64;
    }
    acc
}

/// Expected gross gain `G(k)` per member of a `k`-player market.
pub fn gross_gain(k: usize, precision: u64) -> Rational {
    if k <= 1 {
        return Rational::zero();
    }
    let k = k as u64;
    let mut sum = Rational::zero();
    for r in 1..k {
        let root = sqrt_approx(r * (k - r), precision);
        sum += Rational::from_integer(binomial(k, r)) * root;
    }
    let scale = Rational::from_integer((k as i64) << k);
    sum / scale
}

/// Trade payoffs for every network on `players` with per-link cost `c`.
pub fn trade_payoffs(players: &PlayerSet, c: &Rational, precision: u64) -> Result<NetworkPayoff> {
    if precision == 0 || precision > 1_000_000_000_000_000_000 {
        return Err(Error::Precondition(format!(
            "precision bound must lie in 1..=10^18, got {precision}"
        )));
    }
    let n = players.n();
    let gains: Vec<Rational> = (0..=n).map(|k| gross_gain(k, precision)).collect();
    Ok(NetworkPayoff::from_fn(players, |g, i| {
        let comp = players
            .components(g)
            .into_iter()
            .find(|comp| comp.contains(&i))
            .expect("every player has a component");
        let k = comp.len();
        let lambda = g
            .link_indices()
            .filter(|&l| comp.contains(&players.pair(l).i))
            .count();
        let share = c * Rational::new(lambda as i64, k as i64);
        &gains[k] - share
    }))
}
