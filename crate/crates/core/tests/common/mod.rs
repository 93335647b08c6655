//! Fixture loading and a brute-force oracle for integration tests.
//!
//! The oracle works directly on link bitmasks and signal matrices and shares no
//! code with the library's stability or equilibrium modules.

#![allow(dead_code)]

use std::path::PathBuf;

use netform::model::Model;
use netform::{CostStructure, Limits, Network, NetworkPayoff, PlayerSet, Rational};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> Model {
    Model::load(fixture_path(name), Limits::default()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn net(ps: &PlayerSet, key: &str) -> Network {
    ps.parse_network(key).unwrap()
}

pub fn keys(ps: &PlayerSet, set: &[Network]) -> Vec<String> {
    set.iter().map(|&g| ps.key(g)).collect()
}

/// Link bits incident to player `i` (0-based) in the lexicographic link order.
fn own_links(n: usize, i: usize) -> u32 {
    let mut mask = 0;
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if a == i || b == i {
                mask |= 1 << k;
            }
            k += 1;
        }
    }
    mask
}

fn link_bit(n: usize, a: usize, b: usize) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let mut k = 0;
    for x in 0..n {
        for y in x + 1..n {
            if (x, y) == (a, b) {
                return 1 << k;
            }
            k += 1;
        }
    }
    unreachable!()
}

fn pay(phi: &NetworkPayoff, bits: u32, i: usize) -> Rational {
    phi.get(Network(bits), i).clone()
}

/// Sub-masks of `m`, including zero.
fn submasks(m: u32) -> Vec<u32> {
    let mut out = vec![0];
    let mut s = m;
    while s != 0 {
        out.push(s);
        s = (s - 1) & m;
    }
    out
}

pub fn sldp(phi: &NetworkPayoff, g: u32) -> bool {
    let n = phi.n();
    (0..n).all(|i| {
        let mine = g & own_links(n, i);
        submasks(mine).into_iter().all(|h| pay(phi, g & !h, i) <= pay(phi, g, i))
    })
}

/// Every missing link hurts both endpoints strictly.
pub fn slap(phi: &NetworkPayoff, g: u32) -> bool {
    let n = phi.n();
    for a in 0..n {
        for b in a + 1..n {
            let bit = link_bit(n, a, b);
            if g & bit != 0 {
                continue;
            }
            let d = g | bit;
            if pay(phi, d, a) >= pay(phi, g, a) || pay(phi, d, b) >= pay(phi, g, b) {
                return false;
            }
        }
    }
    true
}

pub fn all_networks(n: usize) -> Vec<u32> {
    (0..1u32 << (n * (n - 1) / 2)).collect()
}

pub fn sldp_set(phi: &NetworkPayoff) -> Vec<Network> {
    all_networks(phi.n()).into_iter().filter(|&g| sldp(phi, g)).map(Network).collect()
}

pub fn strict_ps_set(phi: &NetworkPayoff) -> Vec<Network> {
    all_networks(phi.n())
        .into_iter()
        .filter(|&g| sldp(phi, g) && slap(phi, g))
        .map(Network)
        .collect()
}

/// `phi_i(g) - sum_{j in N_i(g)} c_ij`.
pub fn net_two_sided(phi: &NetworkPayoff, c: &CostStructure) -> NetworkPayoff {
    let n = phi.n();
    NetworkPayoff::from_fn(phi.players(), |g, i| {
        let mut v = phi.get(g, i).clone();
        for j in 0..n {
            if j != i && g.bits() & link_bit(n, i, j) != 0 {
                v = v - c.get(i, j).clone();
            }
        }
        v
    })
}

/// A signal matrix as `n` rows of bits; bit `j` of row `i` is `l_ij`.
fn signal_network(n: usize, rows: &[u32]) -> u32 {
    let mut g = 0;
    for a in 0..n {
        for b in a + 1..n {
            if rows[a] >> b & 1 == 1 && rows[b] >> a & 1 == 1 {
                g |= link_bit(n, a, b);
            }
        }
    }
    g
}

fn signal_payoff(phi: &NetworkPayoff, c: &CostStructure, rows: &[u32], i: usize) -> Rational {
    let n = phi.n();
    let mut v = pay(phi, signal_network(n, rows), i);
    for j in 0..n {
        if rows[i] >> j & 1 == 1 {
            v = v - c.get(i, j).clone();
        }
    }
    v
}

/// Rows available to player `i`: any subset of the others.
fn rows_for(n: usize, i: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|r| r >> i & 1 == 0).collect()
}

/// Networks supported by a pure Nash equilibrium of the two-sided consent game,
/// by full enumeration of signal matrices.
pub fn two_sided_nash_networks(phi: &NetworkPayoff, c: &CostStructure) -> Vec<Network> {
    let n = phi.n();
    let options: Vec<Vec<u32>> = (0..n).map(|i| rows_for(n, i)).collect();
    let mut found = std::collections::BTreeSet::new();
    let total: usize = options.iter().map(Vec::len).product();
    for code in 0..total {
        let mut rest = code;
        let rows: Vec<u32> = options
            .iter()
            .map(|o| {
                let r = o[rest % o.len()];
                rest /= o.len();
                r
            })
            .collect();
        let nash = (0..n).all(|i| {
            let base = signal_payoff(phi, c, &rows, i);
            options[i].iter().all(|&alt| {
                let mut dev = rows.clone();
                dev[i] = alt;
                signal_payoff(phi, c, &dev, i) <= base
            })
        });
        if nash {
            found.insert(signal_network(n, &rows));
        }
    }
    found.into_iter().map(Network).collect()
}

/// Expected payoffs of a distribution over profiles, given a payoff lookup.
pub fn expectation(support: &[(Vec<usize>, Rational)], n: usize, payoff: impl Fn(&[usize]) -> Vec<Rational>) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for (p, w) in support {
        for (a, v) in acc.iter_mut().zip(payoff(p)) {
            *a = a.clone() + w.clone() * v;
        }
    }
    acc
}
