//! Consent models of network formation: the Myerson signalling game, its
//! two-sided cost variant, and the one-sided initiator/responder variant.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{self, FiniteGame, Profiles};
use crate::network::{Network, PlayerSet};
use crate::payoff::{CostStructure, NetworkPayoff};
use crate::rational::Rational;
use crate::report::{format_set, TheoremReport};
use crate::stability::NetworkClass;

/// Drops bit `i` from a row over players, giving a strategy index over the others.
pub fn row_to_strategy(i: usize, row: u32) -> usize {
    let low = row & ((1 << i) - 1);
    let high = row >> (i + 1);
    (low | (high << i)) as usize
}

/// Inverse of [`row_to_strategy`].
pub fn strategy_to_row(i: usize, s: usize) -> u32 {
    let s = s as u32;
    let low = s & ((1 << i) - 1);
    let high = s >> i;
    low | (high << (i + 1))
}

fn parse_row(n: usize, i: usize, row: &[u8]) -> Result<u32> {
    let mut bits = 0u32;
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let cells: Vec<(usize, u8)> = if row.len() == n {
        row.iter().copied().enumerate().filter(|&(j, _)| j != i).collect()
    } else if row.len() + 1 == n {
        others.iter().copied().zip(row.iter().copied()).collect()
    } else {
        return Err(Error::Parse(format!(
            "row {} has {} entries; expected {n} or {}",
            i + 1,
            row.len(),
            n - 1
        )));
    };
    for (j, v) in cells {
        match v {
            0 => {}
            1 => bits |= 1 << j,
            _ => return Err(Error::Parse(format!("signal entries must be 0 or 1, got {v}"))),
        }
    }
    Ok(bits)
}

fn fmt_rows(f: &mut fmt::Formatter<'_>, n: usize, rows: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for i in 0..n {
        if i > 0 {
            write!(f, ",")?;
        }
        let cells: Vec<String> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (rows[i] >> j & 1).to_string())
            .collect();
        write!(f, "({})", cells.join(","))?;
    }
    write!(f, ")")
}

/// A signal profile `l`: `l_ij = 1` when `i` asks for a link with `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignalProfile {
    n: usize,
    rows: Vec<u32>,
}

impl SignalProfile {
    pub fn empty(n: usize) -> Self {
        SignalProfile { n, rows: vec![0; n] }
    }

    /// Rows as player bitmasks; the diagonal and out-of-range bits are cleared.
    pub fn from_rows(rows: Vec<u32>) -> Self {
        let n = rows.len();
        let full = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| r & full & !(1 << i))
            .collect();
        SignalProfile { n, rows }
    }

    /// From 0/1 rows of length `n` (diagonal ignored) or `n - 1` (others ascending).
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let bits = rows
            .iter()
            .enumerate()
            .map(|(i, r)| parse_row(n, i, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(SignalProfile { n, rows: bits })
    }

    /// The non-superfluous profile of `g`: `l_ij = 1` exactly when `ij` is in `g`.
    pub fn non_superfluous(ps: &PlayerSet, g: Network) -> Self {
        let mut p = Self::empty(ps.n());
        for l in ps.links(g) {
            p.set(l.i, l.j, true);
            p.set(l.j, l.i, true);
        }
        p
    }

    pub fn from_strategies(strategies: &[usize]) -> Self {
        SignalProfile {
            n: strategies.len(),
            rows: strategies
                .iter()
                .enumerate()
                .map(|(i, &s)| strategy_to_row(i, s))
                .collect(),
        }
    }

    pub fn to_strategies(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| row_to_strategy(i, r))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i != j);
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub fn set_row(&mut self, i: usize, row: u32) {
        self.rows[i] = row & !(1 << i);
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `g(l) = { ij : l_ij = l_ji = 1 }`.
    pub fn network(&self, ps: &PlayerSet) -> Network {
        supported_network(ps, &self.rows)
    }

    /// Every request is reciprocated: `l_ij = l_ji` for all pairs.
    pub fn is_non_superfluous(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == self.get(j, i)))
    }

    /// `n x n` 0/1 matrix with a zero diagonal.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| (self.rows[i] >> j & 1) as u8).collect())
            .collect()
    }
}

impl fmt::Display for SignalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, self.n, &self.rows)
    }
}

impl Serialize for SignalProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_matrix().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignalProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(d)?;
        SignalProfile::from_matrix(&rows).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn supported_network(ps: &PlayerSet, rows: &[u32]) -> Network {
    let mut g = 0u32;
    for k in 0..ps.num_links() {
        let l = ps.pair(k);
        if rows[l.i] >> l.j & 1 == 1 && rows[l.j] >> l.i & 1 == 1 {
            g |= 1 << k;
        }
    }
    Network(g)
}

/// A one-sided profile: `l_ij = 1` when `i` initiates toward `j`, `r_ij = 1`
/// when `i` accepts an initiation from `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadProfile {
    n: usize,
    l: Vec<u32>,
    r: Vec<u32>,
}

impl DyadProfile {
    pub fn empty(n: usize) -> Self {
        DyadProfile {
            n,
            l: vec![0; n],
            r: vec![0; n],
        }
    }

    pub fn from_matrices(l: &[Vec<u8>], r: &[Vec<u8>]) -> Result<Self> {
        let n = l.len();
        if r.len() != n {
            return Err(Error::Parse("initiation and response matrices differ in size".into()));
        }
        Ok(DyadProfile {
            n,
            l: (0..n).map(|i| parse_row(n, i, &l[i])).collect::<Result<_>>()?,
            r: (0..n).map(|i| parse_row(n, i, &r[i])).collect::<Result<_>>()?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self, i: usize, j: usize) -> bool {
        self.l[i] >> j & 1 == 1
    }

    pub fn r(&self, i: usize, j: usize) -> bool {
        self.r[i] >> j & 1 == 1
    }

    pub fn set_l(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.l[i] |= 1 << j;
        } else {
            self.l[i] &= !(1 << j);
        }
    }

    pub fn set_r(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.r[i] |= 1 << j;
        } else {
            self.r[i] &= !(1 << j);
        }
    }

    /// Strategy index for player `i`: initiation bits low, response bits high.
    pub fn strategy(&self, i: usize) -> usize {
        let k = self.n - 1;
        row_to_strategy(i, self.l[i]) | (row_to_strategy(i, self.r[i]) << k)
    }

    pub fn to_strategies(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.strategy(i)).collect()
    }

    pub fn from_strategies(strategies: &[usize]) -> Self {
        let n = strategies.len();
        let k = n - 1;
        let mask = (1usize << k) - 1;
        DyadProfile {
            n,
            l: strategies.iter().enumerate().map(|(i, &s)| strategy_to_row(i, s & mask)).collect(),
            r: strategies.iter().enumerate().map(|(i, &s)| strategy_to_row(i, s >> k)).collect(),
        }
    }

    /// `g^b(l, r)`: links whose initiation is accepted, in either direction.
    pub fn network(&self, ps: &PlayerSet) -> Network {
        one_sided_network(ps, &self.l, &self.r)
    }

    /// Every initiation is accepted and each established link is initiated by exactly one side.
    pub fn is_non_superfluous(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i == j {
                    return true;
                }
                let init_ok = !self.l(i, j) || (self.r(j, i) && !self.l(j, i) && !self.r(i, j));
                let resp_ok = !self.r(i, j) || (self.l(j, i) && !self.l(i, j) && !self.r(j, i));
                init_ok && resp_ok
            })
        })
    }

    pub fn initiation_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| (self.l[i] >> j & 1) as u8).collect())
            .collect()
    }

    pub fn response_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| (self.r[i] >> j & 1) as u8).collect())
            .collect()
    }
}

impl fmt::Display for DyadProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l = ")?;
        fmt_rows(f, self.n, &self.l)?;
        write!(f, ", r = ")?;
        fmt_rows(f, self.n, &self.r)
    }
}

#[derive(Serialize, Deserialize)]
struct DyadJson {
    l: Vec<Vec<u8>>,
    r: Vec<Vec<u8>>,
}

impl Serialize for DyadProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DyadJson {
            l: self.initiation_matrix(),
            r: self.response_matrix(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DyadProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DyadJson::deserialize(d)?;
        DyadProfile::from_matrices(&j.l, &j.r).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn one_sided_network(ps: &PlayerSet, l: &[u32], r: &[u32]) -> Network {
    let mut g = 0u32;
    for k in 0..ps.num_links() {
        let p = ps.pair(k);
        let (i, j) = (p.i, p.j);
        let forward = l[i] >> j & 1 == 1 && r[j] >> i & 1 == 1;
        let backward = l[j] >> i & 1 == 1 && r[i] >> j & 1 == 1;
        if forward || backward {
            g |= 1 << k;
        }
    }
    Network(g)
}

fn signal_cost(c: &CostStructure, i: usize, row: u32) -> Rational {
    let mut total = Rational::zero();
    let mut rest = row;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += c.get(i, j);
    }
    total
}

/// `pi^m_i(l) = phi_i(g(l))`.
pub fn payoff_basic(phi: &NetworkPayoff, l: &SignalProfile) -> Vec<Rational> {
    let g = l.network(phi.players());
    phi.vector(g).to_vec()
}

/// `pi^a_i(l) = phi_i(g(l)) - sum_j l_ij c_ij`.
pub fn payoff_two_sided(phi: &NetworkPayoff, c: &CostStructure, l: &SignalProfile) -> Vec<Rational> {
    let g = l.network(phi.players());
    (0..phi.n())
        .map(|i| phi.get(g, i) - signal_cost(c, i, l.row(i)))
        .collect()
}

/// `pi^b_i(l, r) = phi_i(g^b(l, r)) - sum_j l_ij gamma_ij`.
pub fn payoff_one_sided(phi: &NetworkPayoff, gamma: &CostStructure, d: &DyadProfile) -> Vec<Rational> {
    let g = d.network(phi.players());
    (0..phi.n())
        .map(|i| phi.get(g, i) - signal_cost(gamma, i, d.l[i]))
        .collect()
}

/// `phi^a`, see [`NetworkPayoff::net_of_two_sided`].
pub fn net_payoff_a(phi: &NetworkPayoff, c: &CostStructure) -> Result<NetworkPayoff> {
    phi.net_of_two_sided(c)
}

/// `phi^b`, see [`NetworkPayoff::net_of_one_sided`].
pub fn net_payoff_b(phi: &NetworkPayoff, gamma: &CostStructure) -> Result<NetworkPayoff> {
    phi.net_of_one_sided(gamma)
}

/// The Myerson signalling game, optionally with two-sided signal costs.
#[derive(Debug, Clone, Copy)]
pub struct MyersonGame<'a> {
    phi: &'a NetworkPayoff,
    costs: Option<&'a CostStructure>,
}

impl<'a> MyersonGame<'a> {
    pub fn basic(phi: &'a NetworkPayoff) -> Self {
        MyersonGame { phi, costs: None }
    }

    pub fn two_sided(phi: &'a NetworkPayoff, c: &'a CostStructure) -> Result<Self> {
        c.check_players(phi.n())?;
        Ok(MyersonGame { phi, costs: Some(c) })
    }

    pub fn payoff_function(&self) -> &NetworkPayoff {
        self.phi
    }
}

impl FiniteGame for MyersonGame<'_> {
    fn num_players(&self) -> usize {
        self.phi.n()
    }

    fn num_strategies(&self, _player: usize) -> usize {
        1 << (self.phi.n() - 1)
    }

    fn payoff(&self, profile: &[usize], player: usize) -> Rational {
        let rows: Vec<u32> = profile
            .iter()
            .enumerate()
            .map(|(i, &s)| strategy_to_row(i, s))
            .collect();
        let g = supported_network(self.phi.players(), &rows);
        let v = self.phi.get(g, player);
        match self.costs {
            Some(c) => v - signal_cost(c, player, rows[player]),
            None => v.clone(),
        }
    }

    fn strategy_label(&self, player: usize, strategy: usize) -> String {
        let row = strategy_to_row(player, strategy);
        let cells: Vec<String> = (0..self.phi.n())
            .filter(|&j| j != player)
            .map(|j| (row >> j & 1).to_string())
            .collect();
        format!("({})", cells.join(","))
    }
}

/// The one-sided consent game.
#[derive(Debug, Clone, Copy)]
pub struct OneSidedGame<'a> {
    phi: &'a NetworkPayoff,
    gamma: &'a CostStructure,
}

impl<'a> OneSidedGame<'a> {
    pub fn new(phi: &'a NetworkPayoff, gamma: &'a CostStructure) -> Result<Self> {
        gamma.check_players(phi.n())?;
        Ok(OneSidedGame { phi, gamma })
    }
}

impl FiniteGame for OneSidedGame<'_> {
    fn num_players(&self) -> usize {
        self.phi.n()
    }

    fn num_strategies(&self, _player: usize) -> usize {
        1 << (2 * (self.phi.n() - 1))
    }

    fn payoff(&self, profile: &[usize], player: usize) -> Rational {
        let d = DyadProfile::from_strategies(profile);
        let g = d.network(self.phi.players());
        self.phi.get(g, player) - signal_cost(self.gamma, player, d.l[player])
    }
}

/// How a supported-network set is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Network-space scan of the characterising predicate.
    Characterization,
    /// Strategy-space enumeration of Nash equilibria.
    Direct,
    /// Both, failing if they disagree.
    Both,
}

fn check_costs(c: &CostStructure, name: &str) -> Result<()> {
    if !c.all_nonnegative() {
        return Err(Error::Precondition(format!("{name} costs must be non-negative")));
    }
    Ok(())
}

/// All Nash equilibria of the Myerson game, with two-sided costs when given.
pub fn nash_profiles_two_sided(phi: &NetworkPayoff, c: Option<&CostStructure>) -> Result<Vec<SignalProfile>> {
    let ps = phi.players();
    ps.check_profile_capacity("signal-profile enumeration")?;
    let game = match c {
        Some(c) => {
            check_costs(c, "two-sided")?;
            MyersonGame::two_sided(phi, c)?
        }
        None => MyersonGame::basic(phi),
    };
    let first: Vec<usize> = (0..game.num_strategies(0)).collect();
    let found: Vec<Vec<SignalProfile>> = first
        .par_iter()
        .map(|&s0| {
            let radix: Vec<usize> = (1..game.num_players()).map(|i| game.num_strategies(i)).collect();
            Profiles::new(radix)
                .filter_map(|rest| {
                    let mut p = Vec::with_capacity(game.num_players());
                    p.push(s0);
                    p.extend(rest);
                    game::is_nash(&game, &p).then(|| SignalProfile::from_strategies(&p))
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn networks_of<'a>(ps: &PlayerSet, profiles: impl IntoIterator<Item = &'a SignalProfile>) -> Vec<Network> {
    let set: BTreeSet<Network> = profiles.into_iter().map(|p| p.network(ps)).collect();
    set.into_iter().collect()
}

fn reconcile(ps: &PlayerSet, what: &str, a: Vec<Network>, b: Vec<Network>) -> Result<Vec<Network>> {
    if a != b {
        return Err(Error::Inconsistent(format!(
            "{what}: characterisation gives {} but enumeration gives {}",
            format_set(ps, &a),
            format_set(ps, &b)
        )));
    }
    Ok(a)
}

/// Networks supported by a Nash equilibrium of the Myerson game.
pub fn m_networks(phi: &NetworkPayoff, method: Method) -> Result<Vec<Network>> {
    let ps = phi.players();
    let by_char = || NetworkClass::Sldp.members(phi);
    let by_enum = || -> Result<Vec<Network>> { Ok(networks_of(ps, &nash_profiles_two_sided(phi, None)?)) };
    match method {
        Method::Characterization => Ok(by_char()),
        Method::Direct => by_enum(),
        Method::Both => reconcile(ps, "M-networks", by_char(), by_enum()?),
    }
}

/// Networks supported by a Nash equilibrium of the two-sided cost game.
pub fn nash_networks_two_sided(phi: &NetworkPayoff, c: &CostStructure, method: Method) -> Result<Vec<Network>> {
    check_costs(c, "two-sided")?;
    let ps = phi.players();
    let by_char = || -> Result<Vec<Network>> { Ok(NetworkClass::Sldp.members(&phi.net_of_two_sided(c)?)) };
    let by_enum = || -> Result<Vec<Network>> { Ok(networks_of(ps, &nash_profiles_two_sided(phi, Some(c))?)) };
    match method {
        Method::Characterization => by_char(),
        Method::Direct => by_enum(),
        Method::Both => reconcile(ps, "two-sided Nash networks", by_char()?, by_enum()?),
    }
}

/// Precomputed rows for fast one-sided payoff evaluation.
struct OneSidedTable<'a> {
    phi: &'a NetworkPayoff,
    k: usize,
    /// `(l_row, r_row, initiation cost)` per player and strategy.
    decoded: Vec<Vec<(u32, u32, Rational)>>,
}

impl<'a> OneSidedTable<'a> {
    fn new(phi: &'a NetworkPayoff, gamma: &'a CostStructure) -> Self {
        let n = phi.n();
        let k = n - 1;
        let decoded = (0..n)
            .map(|i| {
                (0..1usize << (2 * k))
                    .map(|s| {
                        let l = strategy_to_row(i, s & ((1 << k) - 1));
                        let r = strategy_to_row(i, s >> k);
                        (l, r, signal_cost(gamma, i, l))
                    })
                    .collect()
            })
            .collect();
        OneSidedTable { phi, k, decoded }
    }

    fn payoff(&self, l: &[u32], r: &[u32], i: usize, s: usize) -> Rational {
        let g = one_sided_network(self.phi.players(), l, r);
        self.phi.get(g, i) - &self.decoded[i][s].2
    }

    fn is_nash(&self, profile: &[usize]) -> bool {
        let n = profile.len();
        let mut l: Vec<u32> = (0..n).map(|i| self.decoded[i][profile[i]].0).collect();
        let mut r: Vec<u32> = (0..n).map(|i| self.decoded[i][profile[i]].1).collect();
        for i in 0..n {
            let base = self.payoff(&l, &r, i, profile[i]);
            let (l0, r0) = (l[i], r[i]);
            for s in 0..1usize << (2 * self.k) {
                if s == profile[i] {
                    continue;
                }
                l[i] = self.decoded[i][s].0;
                r[i] = self.decoded[i][s].1;
                let better = self.payoff(&l, &r, i, s) > base;
                l[i] = l0;
                r[i] = r0;
                if better {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether a one-sided profile is a Nash equilibrium, scanning every own strategy.
pub fn is_one_sided_nash(phi: &NetworkPayoff, gamma: &CostStructure, d: &DyadProfile) -> Result<bool> {
    gamma.check_players(phi.n())?;
    Ok(OneSidedTable::new(phi, gamma).is_nash(&d.to_strategies()))
}

/// All Nash equilibria of the one-sided game.
pub fn nash_profiles_one_sided(phi: &NetworkPayoff, gamma: &CostStructure) -> Result<Vec<DyadProfile>> {
    let ps = phi.players();
    ps.check_profile_capacity("one-sided profile enumeration")?;
    check_costs(gamma, "one-sided")?;
    gamma.check_players(phi.n())?;
    let table = OneSidedTable::new(phi, gamma);
    let n = phi.n();
    let per = 1usize << (2 * (n - 1));
    let found: Vec<Vec<DyadProfile>> = (0..per)
        .into_par_iter()
        .map(|s0| {
            Profiles::new(vec![per; n - 1])
                .filter_map(|rest| {
                    let mut p = Vec::with_capacity(n);
                    p.push(s0);
                    p.extend(rest);
                    table.is_nash(&p).then(|| DyadProfile::from_strategies(&p))
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Networks supported by some Nash equilibrium of the one-sided game.
pub fn nash_networks_one_sided(phi: &NetworkPayoff, gamma: &CostStructure) -> Result<Vec<Network>> {
    let ps = phi.players();
    let set: BTreeSet<Network> = nash_profiles_one_sided(phi, gamma)?
        .iter()
        .map(|d| d.network(ps))
        .collect();
    Ok(set.into_iter().collect())
}

/// Every non-superfluous one-sided profile supporting `g`: one per orientation of its links.
pub fn non_superfluous_profiles(ps: &PlayerSet, g: Network) -> Vec<DyadProfile> {
    let links = ps.links(g);
    (0..1u32 << links.len())
        .map(|orient| {
            let mut d = DyadProfile::empty(ps.n());
            for (t, l) in links.iter().enumerate() {
                let (a, b) = if orient >> t & 1 == 0 { (l.i, l.j) } else { (l.j, l.i) };
                d.set_l(a, b, true);
                d.set_r(b, a, true);
            }
            d
        })
        .collect()
}

/// A non-superfluous Nash equilibrium of the one-sided game supporting `g`, if any.
pub fn non_superfluous_one_sided_support(
    phi: &NetworkPayoff,
    gamma: &CostStructure,
    g: Network,
) -> Result<Option<DyadProfile>> {
    gamma.check_players(phi.n())?;
    let table = OneSidedTable::new(phi, gamma);
    Ok(non_superfluous_profiles(phi.players(), g)
        .into_iter()
        .find(|d| table.is_nash(&d.to_strategies())))
}

/// Net payoff when each link is financed by the endpoint with the highest
/// stand-alone marginal net benefit `phi_k({ij}) - phi_k(g0) - gamma_kl`,
/// ties to the lower index.
pub fn highest_marginal_financing_payoff(phi: &NetworkPayoff, gamma: &CostStructure) -> Result<NetworkPayoff> {
    gamma.check_players(phi.n())?;
    let ps = phi.players();
    let mut financer = vec![0usize; ps.num_links()];
    for (k, f) in financer.iter_mut().enumerate() {
        let l = ps.pair(k);
        let single = Network(1 << k);
        let mi = phi.gain(l.i, single, Network::EMPTY) - gamma.get(l.i, l.j);
        let mj = phi.gain(l.j, single, Network::EMPTY) - gamma.get(l.j, l.i);
        *f = if mj > mi { l.j } else { l.i };
    }
    Ok(NetworkPayoff::from_fn(ps, |g, i| {
        let mut v = phi.get(g, i).clone();
        for k in ps.links_of(g, i).link_indices() {
            if financer[k] == i {
                v -= gamma.get(i, ps.pair(k).other(i));
            }
        }
        v
    }))
}

/// Signal profiles of the Myerson game that are Nash and immune to every pair
/// deviation in which one member gains while the other does not lose.
pub fn pairwise_nash_profiles(phi: &NetworkPayoff) -> Result<Vec<SignalProfile>> {
    let ps = phi.players();
    let n = ps.n();
    let per = 1usize << (n - 1);
    let nash = nash_profiles_two_sided(phi, None)?;
    Ok(nash
        .into_par_iter()
        .filter(|l| {
            let base = payoff_basic(phi, l);
            for i in 0..n {
                for j in i + 1..n {
                    for si in 0..per {
                        for sj in 0..per {
                            let mut dev = l.clone();
                            dev.set_row(i, strategy_to_row(i, si));
                            dev.set_row(j, strategy_to_row(j, sj));
                            let g = dev.network(ps);
                            for (a, b) in [(i, j), (j, i)] {
                                if phi.get(g, a) > &base[a] && phi.get(g, b) >= &base[b] {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            true
        })
        .collect())
}

pub fn pairwise_nash_networks(phi: &NetworkPayoff) -> Result<Vec<Network>> {
    Ok(networks_of(phi.players(), &pairwise_nash_profiles(phi)?))
}

/// M-networks by both methods, the empty-network lemma, the link-monotone
/// case, and the pairwise-Nash / bilateral-stability equivalence.
pub fn verify_m_networks(phi: &NetworkPayoff) -> Result<TheoremReport> {
    let ps = phi.players();
    let mut rep = TheoremReport::new("m-networks");
    let sldp = NetworkClass::Sldp.members(phi);
    let direct = m_networks(phi, Method::Direct)?;
    rep.sets_equal("M-networks equal the SLDP networks", ps, &direct, &sldp);
    let empty = SignalProfile::empty(ps.n());
    let game = MyersonGame::basic(phi);
    rep.claim(
        "the all-zero signal profile is a Nash equilibrium",
        game::is_nash(&game, &empty.to_strategies()),
        None,
    );
    rep.claim("the empty network is an M-network", direct.contains(&Network::EMPTY), None);
    if crate::stability::is_link_monotone(phi) {
        let all: Vec<Network> = ps.networks().collect();
        rep.sets_equal("link monotone: every network is an M-network", ps, &direct, &all);
    }
    let pn = pairwise_nash_networks(phi)?;
    let bil = crate::stability::bilateral_stable_networks(phi);
    rep.sets_equal("pairwise Nash networks equal bilaterally stable networks", ps, &pn, &bil);
    Ok(rep)
}

/// Two-sided costs: Nash networks equal the SLDP networks of `phi^a`, each
/// supported by its non-superfluous profile, and with positive costs every
/// equilibrium is non-superfluous.
pub fn verify_two_sided(phi: &NetworkPayoff, c: &CostStructure) -> Result<TheoremReport> {
    check_costs(c, "two-sided")?;
    let ps = phi.players();
    let mut rep = TheoremReport::new("two-sided");
    let phia = phi.net_of_two_sided(c)?;
    let sldp = NetworkClass::Sldp.members(&phia);
    let profiles = nash_profiles_two_sided(phi, Some(c))?;
    let direct = networks_of(ps, &profiles);
    rep.sets_equal("two-sided Nash networks equal SLDP networks of the net payoff", ps, &direct, &sldp);
    let game = MyersonGame::two_sided(phi, c)?;
    let unsupported: Vec<Network> = sldp
        .iter()
        .copied()
        .filter(|&g| !game::is_nash(&game, &SignalProfile::non_superfluous(ps, g).to_strategies()))
        .collect();
    rep.claim(
        "each such network is supported by its non-superfluous profile",
        unsupported.is_empty(),
        Some(format!("not supported: {}", format_set(ps, &unsupported))),
    );
    if c.all_positive() {
        let superfluous: Vec<String> = profiles
            .iter()
            .filter(|p| !p.is_non_superfluous())
            .map(|p| p.to_string())
            .collect();
        rep.claim(
            "with positive costs every Nash equilibrium is non-superfluous",
            superfluous.is_empty(),
            Some(format!("superfluous equilibria: {}", superfluous.join("; "))),
        );
    }
    let zero = CostStructure::zero(ps.n());
    if *c == zero {
        let m = NetworkClass::Sldp.members(phi);
        rep.sets_equal("zero costs: two-sided Nash networks equal M-networks", ps, &direct, &m);
    }
    Ok(rep)
}

/// SLDP networks of `phi^b` are supported by non-superfluous one-sided equilibria.
pub fn check_thm5(phi: &NetworkPayoff, gamma: &CostStructure) -> Result<TheoremReport> {
    let ps = phi.players();
    let mut rep = TheoremReport::new("one-sided-inclusion");
    let phib = phi.net_of_one_sided(gamma)?;
    let sldp = NetworkClass::Sldp.members(&phib);
    let supported = nash_networks_one_sided(phi, gamma)?;
    rep.subset("SLDP networks of the one-sided net payoff are one-sided supported", ps, &sldp, &supported);
    let mut lacking = Vec::new();
    for &g in &sldp {
        if non_superfluous_one_sided_support(phi, gamma, g)?.is_none() {
            lacking.push(g);
        }
    }
    rep.claim(
        "each is supported by a non-superfluous equilibrium",
        lacking.is_empty(),
        Some(format!("no non-superfluous support: {}", format_set(ps, &lacking))),
    );
    let extra: Vec<Network> = supported.iter().copied().filter(|g| !sldp.contains(g)).collect();
    if !extra.is_empty() {
        rep.note(format!(
            "converse fails: one-sided supported but not SLDP for the net payoff: {}",
            format_set(ps, &extra)
        ));
    }
    Ok(rep)
}

/// With one-sided costs equal to two-sided costs, every two-sided supported
/// network has a non-superfluous one-sided equilibrium.
pub fn check_thm6(phi: &NetworkPayoff, c: &CostStructure) -> Result<TheoremReport> {
    let ps = phi.players();
    let mut rep = TheoremReport::new("sunk-cost-inclusion");
    let two = nash_networks_two_sided(phi, c, Method::Direct)?;
    let one = nash_networks_one_sided(phi, c)?;
    rep.subset("two-sided supported networks are one-sided supported", ps, &two, &one);
    let mut lacking = Vec::new();
    for &g in &two {
        if non_superfluous_one_sided_support(phi, c, g)?.is_none() {
            lacking.push(g);
        }
    }
    rep.claim(
        "each is supported by a non-superfluous one-sided equilibrium",
        lacking.is_empty(),
        Some(format!("no non-superfluous support: {}", format_set(ps, &lacking))),
    );
    let extra: Vec<Network> = one.iter().copied().filter(|g| !two.contains(g)).collect();
    if !extra.is_empty() {
        rep.note(format!(
            "converse fails: one-sided supported but not two-sided supported: {}",
            format_set(ps, &extra)
        ));
    }
    Ok(rep)
}

/// Networks supported in each model when the initiator bears both costs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseAComparison {
    pub two_sided: Vec<String>,
    pub one_sided: Vec<String>,
    pub only_two_sided: Vec<String>,
    pub only_one_sided: Vec<String>,
}

/// Compares the two-sided model under `c` with the one-sided model under
/// `gamma_ij = c_ij + c_ji`. Neither inclusion is expected; the report only records them.
pub fn compare_case_a(phi: &NetworkPayoff, c: &CostStructure) -> Result<(CaseAComparison, TheoremReport)> {
    let ps = phi.players();
    let gamma = CostStructure::from_fn(c.n(), |i, j| c.get(i, j) + c.get(j, i));
    let two = nash_networks_two_sided(phi, c, Method::Direct)?;
    let one = nash_networks_one_sided(phi, &gamma)?;
    let keys = |v: &[Network]| v.iter().map(|&g| ps.key(g)).collect::<Vec<_>>();
    let only_two: Vec<Network> = two.iter().copied().filter(|g| !one.contains(g)).collect();
    let only_one: Vec<Network> = one.iter().copied().filter(|g| !two.contains(g)).collect();
    let mut rep = TheoremReport::new("initiator-bears-all");
    rep.note(format!("two-sided only: {}", format_set(ps, &only_two)));
    rep.note(format!("one-sided only: {}", format_set(ps, &only_one)));
    Ok((
        CaseAComparison {
            two_sided: keys(&two),
            one_sided: keys(&one),
            only_two_sided: keys(&only_two),
            only_one_sided: keys(&only_one),
        },
        rep,
    ))
}
