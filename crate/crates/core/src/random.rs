//! Seeded random instances for property runs and batch verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::game::TableGame;
use crate::network::{Network, PlayerSet};
use crate::payoff::{CostStructure, NetworkPayoff};
use crate::rational::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| <= spread * q` and `q` in `1..=max_den`.
pub fn rational(rng: &mut impl Rng, spread: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den.max(1));
    let p = rng.gen_range(-spread * q..=spread * q);
    Rational::new(p, q)
}

/// Independent entries for every network and player. Small spreads give many ties.
pub fn payoff_table(ps: &PlayerSet, rng: &mut impl Rng, spread: i64, max_den: i64) -> NetworkPayoff {
    NetworkPayoff::from_fn(ps, |_, _| rational(rng, spread, max_den))
}

/// Strictly positive costs in `(0, max]` with denominators up to `max_den`.
pub fn positive_costs(n: usize, rng: &mut impl Rng, max: i64, max_den: i64) -> CostStructure {
    CostStructure::from_fn(n, |_, _| {
        let q = rng.gen_range(1..=max_den.max(1));
        Rational::new(rng.gen_range(1..=max.max(1) * q), q)
    })
}

/// Non-negative costs, zero with probability about one in four.
pub fn nonnegative_costs(n: usize, rng: &mut impl Rng, max: i64, max_den: i64) -> CostStructure {
    CostStructure::from_fn(n, |_, _| {
        if rng.gen_ratio(1, 4) {
            Rational::zero()
        } else {
            let q = rng.gen_range(1..=max_den.max(1));
            Rational::new(rng.gen_range(1..=max.max(1) * q), q)
        }
    })
}

/// `phi_i(g) = Lambda(g) + D_i(g - L_i(g))` for random `Lambda` and `D_i`,
/// which admits the exact potential `Lambda`. Returns `phi` and `Lambda`.
pub fn potential_payoff(ps: &PlayerSet, rng: &mut impl Rng, spread: i64, max_den: i64) -> (NetworkPayoff, Vec<Rational>) {
    let lambda: Vec<Rational> = (0..ps.num_networks()).map(|_| rational(rng, spread, max_den)).collect();
    let dummy: Vec<Vec<Rational>> = (0..ps.n())
        .map(|_| (0..ps.num_networks()).map(|_| rational(rng, spread, max_den)).collect())
        .collect();
    let phi = NetworkPayoff::from_fn(ps, |g, i| {
        let rest: Network = g.minus(ps.incident(i));
        &lambda[g.index()] + &dummy[i][rest.index()]
    });
    (phi, lambda)
}

/// A random table game with the given strategy counts.
pub fn table_game(counts: &[usize], rng: &mut impl Rng, spread: i64) -> Result<TableGame> {
    let n = counts.len();
    TableGame::from_fn(counts, |_| {
        (0..n)
            .map(|_| Rational::from_integer(rng.gen_range(-spread..=spread)))
            .collect()
    })
}
