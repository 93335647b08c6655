//! Exact and ordinal potentials, for network payoff functions and for finite games.
//!
//! Both kinds are constructed, not only decided. Exact potentials are summed
//! along a spanning tree of single-link (or single-coordinate) changes and then
//! checked on every edge. Ordinal potentials come from a three-way constraint
//! graph: equalities are contracted, strict arcs must be acyclic, and values
//! are longest-path levels.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::consent::MyersonGame;
use crate::error::{Error, Result};
use crate::game::{self, FiniteGame, Profiles};
use crate::network::{Network, PlayerSet};
use crate::payoff::{CostStructure, NetworkPayoff};
use crate::rational::Rational;
use crate::report::{format_set, TheoremReport};
use crate::stability::NetworkClass;
use crate::trust::{monadic_networks, MonadicSearch};

/// Largest profile space for game potentials; the payoff table is held in memory.
pub const MAX_POTENTIAL_PROFILES: u64 = 1 << 20;

/// Why no potential of the requested kind exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialFailure<N> {
    /// The two endpoints of a link value it differently (exact) or with opposite signs (ordinal).
    EndpointConflict {
        at: N,
        without: N,
        players: (usize, usize),
        deltas: (Rational, Rational),
    },
    /// The tree-built potential disagrees with a player's marginal on one edge.
    Inconsistent {
        at: N,
        without: N,
        player: usize,
        expected: Rational,
        found: Rational,
    },
    /// Strict ordinal constraints close a cycle through these nodes.
    Cycle(Vec<N>),
}

impl<N> PotentialFailure<N> {
    pub fn describe(&self, show: impl Fn(&N) -> String) -> String {
        match self {
            PotentialFailure::EndpointConflict {
                at,
                without,
                players,
                deltas,
            } => format!(
                "between {} and {}: player {} gains {} while player {} gains {}",
                show(without),
                show(at),
                players.0 + 1,
                deltas.0,
                players.1 + 1,
                deltas.1
            ),
            PotentialFailure::Inconsistent {
                at,
                without,
                player,
                expected,
                found,
            } => format!(
                "between {} and {}: player {} gains {} but the potential changes by {}",
                show(without),
                show(at),
                player + 1,
                expected,
                found
            ),
            PotentialFailure::Cycle(nodes) => {
                let parts: Vec<String> = nodes.iter().map(&show).collect();
                format!("strict preference cycle through {}", parts.join(" -> "))
            }
        }
    }
}

/// `Lambda` on every network, `Lambda(g0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkPotential {
    players: PlayerSet,
    values: Vec<Rational>,
}

impl NetworkPotential {
    pub fn get(&self, g: Network) -> &Rational {
        &self.values[g.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Network key to value, for JSON output.
    pub fn table(&self) -> BTreeMap<String, Rational> {
        self.players
            .networks()
            .map(|g| (self.players.key(g), self.get(g).clone()))
            .collect()
    }
}

impl Serialize for NetworkPotential {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.table().serialize(s)
    }
}

/// `P` on every profile in mixed-radix order, zero at the all-first profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GamePotential {
    radix: Vec<usize>,
    values: Vec<Rational>,
}

impl GamePotential {
    pub fn get(&self, profile: &[usize]) -> &Rational {
        &self.values[index(&self.radix, profile)]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn entries(&self) -> Vec<(Vec<usize>, Rational)> {
        Profiles::new(self.radix.clone())
            .zip(self.values.iter().cloned())
            .collect()
    }
}

fn index(radix: &[usize], profile: &[usize]) -> usize {
    profile.iter().zip(radix).fold(0, |acc, (&s, &k)| acc * k + s)
}

/// Orders nodes so that every strict constraint goes up; equal constraints share a level.
/// `edges` carry `(a, b, cmp(P(a), P(b)))`.
fn ordinal_levels(nodes: usize, edges: &[(usize, usize, Ordering)]) -> std::result::Result<Vec<i64>, Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(nodes);
    for &(a, b, o) in edges {
        if o == Ordering::Equal {
            uf.union(a, b);
        }
    }
    let mut class_of: Vec<usize> = vec![usize::MAX; nodes];
    let mut graph = DiGraph::<usize, ()>::new();
    let mut class_node: Vec<NodeIndex> = Vec::new();
    for v in 0..nodes {
        let r = uf.find(v);
        if class_of[r] == usize::MAX {
            class_of[r] = class_node.len();
            class_node.push(graph.add_node(r));
        }
        class_of[v] = class_of[r];
    }
    for &(a, b, o) in edges {
        let (lo, hi) = match o {
            Ordering::Equal => continue,
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
        };
        if class_of[lo] == class_of[hi] {
            return Err(vec![lo, hi]);
        }
        graph.add_edge(class_node[class_of[lo]], class_node[class_of[hi]], ());
    }
    let order = match toposort(&graph, None) {
        Ok(order) => order,
        Err(_) => {
            let scc = tarjan_scc(&graph)
                .into_iter()
                .find(|c| c.len() > 1)
                .expect("a cycle lies in a non-trivial component");
            return Err(scc.into_iter().map(|ix| graph[ix]).collect());
        }
    };
    let mut level = vec![0i64; class_node.len()];
    let pos: BTreeMap<NodeIndex, usize> = class_node.iter().enumerate().map(|(c, &ix)| (ix, c)).collect();
    for ix in order {
        let from = level[pos[&ix]];
        for next in graph.neighbors(ix) {
            let c = pos[&next];
            level[c] = level[c].max(from + 1);
        }
    }
    Ok((0..nodes).map(|v| level[class_of[v]]).collect())
}

fn link_marginals(phi: &NetworkPayoff, g: Network, k: usize) -> ((usize, Rational), (usize, Rational)) {
    let l = phi.players().pair(k);
    let without = Network(g.bits() & !(1 << k));
    (
        (l.i, phi.gain(l.i, g, without)),
        (l.j, phi.gain(l.j, g, without)),
    )
}

/// An exact network potential: `phi_i(g) - phi_i(g - ij) = Lambda(g) - Lambda(g - ij)`.
pub fn exact_network_potential(phi: &NetworkPayoff) -> std::result::Result<NetworkPotential, PotentialFailure<Network>> {
    let ps = phi.players();
    let mut values = vec![Rational::zero(); ps.num_networks()];
    for g in ps.networks().skip(1) {
        let top = 31 - g.bits().leading_zeros() as usize;
        let ((i, di), (j, dj)) = link_marginals(phi, g, top);
        let without = Network(g.bits() & !(1 << top));
        if di != dj {
            return Err(PotentialFailure::EndpointConflict {
                at: g,
                without,
                players: (i, j),
                deltas: (di, dj),
            });
        }
        values[g.index()] = &values[without.index()] + di;
    }
    for g in ps.networks() {
        for k in g.link_indices() {
            let without = Network(g.bits() & !(1 << k));
            let found = &values[g.index()] - &values[without.index()];
            for (p, d) in {
                let (a, b) = link_marginals(phi, g, k);
                [a, b]
            } {
                if d != found {
                    return Err(PotentialFailure::Inconsistent {
                        at: g,
                        without,
                        player: p,
                        expected: d,
                        found,
                    });
                }
            }
        }
    }
    Ok(NetworkPotential {
        players: ps.clone(),
        values,
    })
}

/// An ordinal network potential matching the sign of every own-link marginal.
pub fn ordinal_network_potential(
    phi: &NetworkPayoff,
) -> std::result::Result<NetworkPotential, PotentialFailure<Network>> {
    let ps = phi.players();
    let mut edges = Vec::new();
    for g in ps.networks() {
        for k in g.link_indices() {
            let without = Network(g.bits() & !(1 << k));
            let ((i, di), (j, dj)) = link_marginals(phi, g, k);
            if di.signum() != dj.signum() {
                return Err(PotentialFailure::EndpointConflict {
                    at: g,
                    without,
                    players: (i, j),
                    deltas: (di, dj),
                });
            }
            edges.push((g.index(), without.index(), di.signum()));
        }
    }
    match ordinal_levels(ps.num_networks(), &edges) {
        Ok(levels) => {
            let base = levels[0];
            Ok(NetworkPotential {
                players: ps.clone(),
                values: levels.into_iter().map(|v| Rational::from_integer(v - base)).collect(),
            })
        }
        Err(cycle) => Err(PotentialFailure::Cycle(cycle.into_iter().map(|v| Network(v as u32)).collect())),
    }
}

struct PayoffTable {
    radix: Vec<usize>,
    n: usize,
    values: Vec<Rational>,
}

impl PayoffTable {
    fn build<G: FiniteGame + ?Sized>(game: &G) -> Result<Self> {
        let count = game::profile_count(game);
        if count > MAX_POTENTIAL_PROFILES {
            return Err(Error::Capacity {
                what: "potential detection profile space".into(),
                required: count,
                limit: MAX_POTENTIAL_PROFILES,
            });
        }
        let n = game.num_players();
        let radix: Vec<usize> = (0..n).map(|i| game.num_strategies(i)).collect();
        let mut values = Vec::with_capacity(count as usize * n);
        for p in Profiles::new(radix.clone()) {
            values.extend(game.payoffs(&p));
        }
        Ok(PayoffTable { radix, n, values })
    }

    fn get(&self, idx: usize, i: usize) -> &Rational {
        &self.values[idx * self.n + i]
    }

    fn stride(&self, i: usize) -> usize {
        self.radix[i + 1..].iter().product()
    }

    /// `(profile index, player, deviation index)` for every upward single-coordinate change.
    fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        Profiles::new(self.radix.clone()).enumerate().flat_map(move |(idx, p)| {
            (0..self.n).flat_map(move |i| {
                let stride = self.stride(i);
                let cur = p[i];
                (cur + 1..self.radix[i]).map(move |t| (idx, i, idx + (t - cur) * stride))
            })
        })
    }

    fn profile(&self, mut idx: usize) -> Vec<usize> {
        let mut p = vec![0; self.n];
        for i in (0..self.n).rev() {
            p[i] = idx % self.radix[i];
            idx /= self.radix[i];
        }
        p
    }
}

/// An exact potential in the Monderer-Shapley sense.
pub fn exact_game_potential<G: FiniteGame + ?Sized>(
    game: &G,
) -> Result<std::result::Result<GamePotential, PotentialFailure<Vec<usize>>>> {
    let t = PayoffTable::build(game)?;
    let total: usize = t.radix.iter().product();
    let mut values = vec![Rational::zero(); total];
    for (idx, p) in Profiles::new(t.radix.clone()).enumerate().skip(1) {
        let i = (0..t.n).rev().find(|&i| p[i] != 0).expect("non-initial profile");
        let prev = idx - p[i] * t.stride(i);
        values[idx] = &values[prev] + (t.get(idx, i) - t.get(prev, i));
    }
    for (a, i, b) in t.edges() {
        let expected = t.get(b, i) - t.get(a, i);
        let found = &values[b] - &values[a];
        if expected != found {
            return Ok(Err(PotentialFailure::Inconsistent {
                at: t.profile(b),
                without: t.profile(a),
                player: i,
                expected,
                found,
            }));
        }
    }
    Ok(Ok(GamePotential { radix: t.radix, values }))
}

/// An ordinal potential: every unilateral change moves `P` with the same sign as the mover's payoff.
pub fn ordinal_game_potential<G: FiniteGame + ?Sized>(
    game: &G,
) -> Result<std::result::Result<GamePotential, PotentialFailure<Vec<usize>>>> {
    let t = PayoffTable::build(game)?;
    let total: usize = t.radix.iter().product();
    let edges: Vec<(usize, usize, Ordering)> = t
        .edges()
        .map(|(a, i, b)| (b, a, t.get(b, i).cmp(t.get(a, i))))
        .collect();
    Ok(match ordinal_levels(total, &edges) {
        Ok(levels) => {
            let base = levels[0];
            Ok(GamePotential {
                radix: t.radix,
                values: levels.into_iter().map(|v| Rational::from_integer(v - base)).collect(),
            })
        }
        Err(cycle) => Err(PotentialFailure::Cycle(cycle.into_iter().map(|v| t.profile(v)).collect())),
    })
}

/// Which potentials a model admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PotentialFlags {
    pub network_exact: bool,
    pub network_ordinal: bool,
    pub myerson_exact: bool,
    pub myerson_ordinal: bool,
    /// Only computed when costs are supplied.
    pub two_sided_ordinal: Option<bool>,
}

pub fn potential_flags(phi: &NetworkPayoff, c: Option<&CostStructure>) -> Result<PotentialFlags> {
    let m = MyersonGame::basic(phi);
    Ok(PotentialFlags {
        network_exact: exact_network_potential(phi).is_ok(),
        network_ordinal: ordinal_network_potential(phi).is_ok(),
        myerson_exact: exact_game_potential(&m)?.is_ok(),
        myerson_ordinal: ordinal_game_potential(&m)?.is_ok(),
        two_sided_ordinal: match c {
            Some(c) => Some(ordinal_game_potential(&MyersonGame::two_sided(phi, c)?)?.is_ok()),
            None => None,
        },
    })
}

/// Checks every existence consequence of the potentials `phi` admits against
/// brute-force stability sets.
pub fn existence_report(phi: &NetworkPayoff, c: Option<&CostStructure>) -> Result<TheoremReport> {
    let ps = phi.players();
    let f = potential_flags(phi, c)?;
    let mut rep = TheoremReport::new("potentials-existence");
    rep.note(format!(
        "exact network {}, ordinal network {}, exact Myerson {}, ordinal Myerson {}{}",
        f.network_exact,
        f.network_ordinal,
        f.myerson_exact,
        f.myerson_ordinal,
        f.two_sided_ordinal
            .map(|v| format!(", ordinal two-sided {v}"))
            .unwrap_or_default()
    ));
    rep.claim(
        "an exact network potential is ordinal",
        !f.network_exact || f.network_ordinal,
        None,
    );
    rep.equivalence(
        "exact network potential iff exact Myerson potential",
        f.network_exact,
        f.myerson_exact,
        String::new,
    );
    rep.claim(
        "an ordinal Myerson potential gives an ordinal network potential",
        !f.myerson_ordinal || f.network_ordinal,
        None,
    );
    if f.network_ordinal {
        let p = NetworkClass::Ps.members(phi);
        rep.claim("ordinal network potential: some network is PS", !p.is_empty(), None);
        let sps = NetworkClass::Sps.members(phi);
        let strict = NetworkClass::SpsStrict.members(phi);
        rep.sets_equal("ordinal network potential: SPS equals SPS*", ps, &sps, &strict);
    }
    if f.myerson_ordinal {
        let strict = NetworkClass::SpsStrict.members(phi);
        rep.claim(
            "ordinal Myerson potential: some network is SPS*",
            !strict.is_empty(),
            None,
        );
    }
    if let (Some(true), Some(c)) = (f.two_sided_ordinal, c) {
        let monadic = monadic_networks(phi, c, MonadicSearch::Auto)?;
        rep.claim(
            "ordinal two-sided potential: some network is monadically stable",
            !monadic.is_empty(),
            Some(format!("monadic set {}", format_set(ps, &monadic))),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::TableGame;
    use crate::rational::int;

    #[test]
    fn zero_payoff_has_zero_potentials() {
        let ps = PlayerSet::new(3).unwrap();
        let phi = NetworkPayoff::zero(&ps);
        let e = exact_network_potential(&phi).unwrap();
        assert!(e.values().iter().all(|v| v.is_zero()));
        let o = ordinal_network_potential(&phi).unwrap();
        assert!(o.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn link_count_potential_recovered() {
        let ps = PlayerSet::new(4).unwrap();
        let phi = NetworkPayoff::from_fn(&ps, |g, _| int(g.len() as i64 * 2));
        let e = exact_network_potential(&phi).unwrap();
        for g in ps.networks() {
            assert_eq!(*e.get(g), int(g.len() as i64 * 2));
        }
    }

    #[test]
    fn sign_conflict_is_reported() {
        let ps = PlayerSet::new(3).unwrap();
        let mut phi = NetworkPayoff::zero(&ps);
        phi.set_vector(ps.link(0, 1), vec![int(1), int(-1), int(0)]).unwrap();
        match ordinal_network_potential(&phi) {
            Err(PotentialFailure::EndpointConflict { at, players, .. }) => {
                assert_eq!(at, ps.link(0, 1));
                assert_eq!(players, (0, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn matching_pennies_has_no_ordinal_potential() {
        let g = TableGame::from_fn(&[2, 2], |p| {
            if p[0] == p[1] {
                vec![int(1), int(-1)]
            } else {
                vec![int(-1), int(1)]
            }
        })
        .unwrap();
        assert!(matches!(ordinal_game_potential(&g).unwrap(), Err(PotentialFailure::Cycle(_))));
        assert!(exact_game_potential(&g).unwrap().is_err());
    }

    #[test]
    fn ordinal_levels_respect_constraints() {
        let edges = vec![(1, 0, Ordering::Greater), (2, 1, Ordering::Equal), (3, 2, Ordering::Greater)];
        let lv = ordinal_levels(4, &edges).unwrap();
        assert!(lv[1] > lv[0]);
        assert_eq!(lv[1], lv[2]);
        assert!(lv[3] > lv[2]);
        assert!(ordinal_levels(2, &[(0, 1, Ordering::Less), (1, 0, Ordering::Less)]).is_err());
    }
}
