//! Trust-based stability: unilateral stability in the costless Myerson model,
//! and weak monadic and monadic stability in the two-sided cost model.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::consent::{supported_network, SignalProfile};
use crate::error::{Error, Result};
use crate::network::{Network, PlayerSet};
use crate::payoff::{CostStructure, NetworkPayoff};
use crate::rational::Rational;
use crate::report::{format_set, TheoremReport};
use crate::stability::{is_link_monotone, is_strictly_link_monotone, sldp_violation, NetworkClass, Witness};

/// Monadic search enumerates `3^(non-links)` supporting profiles; beyond this it is refused.
pub const MAX_TRUST_PLAYERS: usize = 5;

/// Player `owner`'s conjecture about everybody's signals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BeliefProfile {
    pub owner: usize,
    /// Row `owner` holds the owner's own signals and is not a belief.
    rows: Vec<u32>,
}

impl BeliefProfile {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, j: usize, k: usize) -> bool {
        self.rows[j] >> k & 1 == 1
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// As a signal profile, with the owner's row taken from the underlying profile.
    pub fn as_profile(&self) -> SignalProfile {
        SignalProfile::from_rows(self.rows.clone())
    }
}

/// Rows of the other players, the owner's own position shown as `-`.
impl fmt::Display for BeliefProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let parts: Vec<String> = (0..n)
            .map(|j| {
                if j == self.owner {
                    "-".to_string()
                } else {
                    let cells: Vec<String> = (0..n)
                        .filter(|&k| k != j)
                        .map(|k| (self.rows[j] >> k & 1).to_string())
                        .collect();
                    format!("({})", cells.join(","))
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct BeliefJson {
    owner: usize,
    beliefs: SignalProfile,
}

impl Serialize for BeliefProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BeliefJson {
            owner: self.owner + 1,
            beliefs: self.as_profile(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BeliefProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BeliefJson::deserialize(d)?;
        if j.owner == 0 || j.owner > j.beliefs.n() {
            return Err(serde::de::Error::custom(format!("owner {} out of range", j.owner)));
        }
        Ok(BeliefProfile {
            owner: j.owner - 1,
            rows: j.beliefs.rows().to_vec(),
        })
    }
}

/// Player `i`'s monadic belief system about `l`: each `j` is believed to keep
/// `ij` when `phi_j(g - ij) + c_ji <= phi_j(g)` and to form it when
/// `phi_j(g + ij) - c_ji >= phi_j(g)`; signals not aimed at `i` are copied.
pub fn monadic_beliefs(phi: &NetworkPayoff, c: &CostStructure, l: &SignalProfile, i: usize) -> BeliefProfile {
    let ps = phi.players();
    let g = l.network(ps);
    let mut rows = l.rows().to_vec();
    for j in ps.players().filter(|&j| j != i) {
        let link = ps.link(i, j);
        let believe = if g.contains(link) {
            phi.get(g.minus(link), j) + c.get(j, i) <= *phi.get(g, j)
        } else {
            phi.get(g.union(link), j) - c.get(j, i) >= *phi.get(g, j)
        };
        if believe {
            rows[j] |= 1 << i;
        } else {
            rows[j] &= !(1 << i);
        }
    }
    BeliefProfile { owner: i, rows }
}

fn signal_cost(c: &CostStructure, i: usize, row: u32) -> Rational {
    (0..c.n()).filter(|&j| row >> j & 1 == 1).map(|j| c.get(i, j)).sum()
}

fn payoff_against(phi: &NetworkPayoff, c: &CostStructure, rows: &mut [u32], i: usize, row: u32) -> Rational {
    let saved = rows[i];
    rows[i] = row;
    let g = supported_network(phi.players(), rows);
    rows[i] = saved;
    phi.get(g, i) - signal_cost(c, i, row)
}

/// Whether `l_i` maximises `pi^a_i` against `i`'s monadic beliefs.
pub fn is_best_response_to_beliefs(phi: &NetworkPayoff, c: &CostStructure, l: &SignalProfile, i: usize) -> bool {
    let n = phi.n();
    let beliefs = monadic_beliefs(phi, c, l, i);
    let mut rows = beliefs.rows;
    let base = payoff_against(phi, c, &mut rows, i, l.row(i));
    let others = ((1u32 << n) - 1) & !(1 << i);
    // iterate over all subsets of the other players
    let mut sub = others;
    loop {
        if payoff_against(phi, c, &mut rows, i, sub) > base {
            return false;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
    true
}

fn is_weak_support(phi: &NetworkPayoff, c: &CostStructure, l: &SignalProfile) -> bool {
    (0..phi.n()).all(|i| is_best_response_to_beliefs(phi, c, l, i))
}

fn is_confirmed(phi: &NetworkPayoff, c: &CostStructure, l: &SignalProfile) -> bool {
    (0..phi.n()).all(|i| {
        let b = monadic_beliefs(phi, c, l, i);
        (0..phi.n()).all(|j| j == i || b.get(j, i) == l.get(j, i))
    })
}

/// Every signal profile `l` with `g(l) = g`: links are mutually signalled and
/// each absent pair sends at most one of the two signals.
pub fn supporting_profiles(ps: &PlayerSet, g: Network) -> Result<Vec<SignalProfile>> {
    check_trust_capacity(ps)?;
    let base = SignalProfile::non_superfluous(ps, g);
    let absent: Vec<_> = ps.links(ps.complete().minus(g));
    let count = 3usize.pow(absent.len() as u32);
    let mut out = Vec::with_capacity(count);
    for code in 0..count {
        let mut p = base.clone();
        let mut rest = code;
        for l in &absent {
            match rest % 3 {
                1 => p.set(l.i, l.j, true),
                2 => p.set(l.j, l.i, true),
                _ => {}
            }
            rest /= 3;
        }
        out.push(p);
    }
    Ok(out)
}

fn check_trust_capacity(ps: &PlayerSet) -> Result<()> {
    if ps.n() > MAX_TRUST_PLAYERS {
        return Err(Error::Capacity {
            what: format!("monadic support search on {} players", ps.n()),
            required: ps.n() as u64,
            limit: MAX_TRUST_PLAYERS as u64,
        });
    }
    Ok(())
}

fn check_costs(phi: &NetworkPayoff, c: &CostStructure) -> Result<()> {
    c.check_players(phi.n())?;
    if !c.all_nonnegative() {
        return Err(Error::Precondition("two-sided costs must be non-negative".into()));
    }
    Ok(())
}

/// A profile supporting `g` as weakly monadically stable, if one exists.
pub fn weak_monadic_support(phi: &NetworkPayoff, c: &CostStructure, g: Network) -> Result<Option<SignalProfile>> {
    check_costs(phi, c)?;
    Ok(supporting_profiles(phi.players(), g)?
        .into_iter()
        .find(|l| is_weak_support(phi, c, l)))
}

pub fn is_weak_monadic(phi: &NetworkPayoff, c: &CostStructure, g: Network) -> Result<bool> {
    Ok(weak_monadic_support(phi, c, g)?.is_some())
}

/// Which supporting profiles the monadic search inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonadicSearch {
    /// Only the non-superfluous profile when every cost is positive, all profiles otherwise.
    #[default]
    Auto,
    Exhaustive,
    NonSuperfluousOnly,
}

/// Every profile supporting `g` as monadically stable, under the given search.
pub fn monadic_supports(
    phi: &NetworkPayoff,
    c: &CostStructure,
    g: Network,
    search: MonadicSearch,
) -> Result<Vec<SignalProfile>> {
    check_costs(phi, c)?;
    let ps = phi.players();
    let only_ns = match search {
        MonadicSearch::Auto => c.all_positive(),
        MonadicSearch::Exhaustive => false,
        MonadicSearch::NonSuperfluousOnly => true,
    };
    let candidates = if only_ns {
        vec![SignalProfile::non_superfluous(ps, g)]
    } else {
        supporting_profiles(ps, g)?
    };
    Ok(candidates
        .into_iter()
        .filter(|l| is_confirmed(phi, c, l) && is_weak_support(phi, c, l))
        .collect())
}

pub fn monadic_support(
    phi: &NetworkPayoff,
    c: &CostStructure,
    g: Network,
    search: MonadicSearch,
) -> Result<Option<SignalProfile>> {
    Ok(monadic_supports(phi, c, g, search)?.into_iter().next())
}

pub fn is_monadic(phi: &NetworkPayoff, c: &CostStructure, g: Network, search: MonadicSearch) -> Result<bool> {
    Ok(monadic_support(phi, c, g, search)?.is_some())
}

fn collect_networks(
    phi: &NetworkPayoff,
    test: impl Fn(Network) -> Result<bool> + Sync,
) -> Result<Vec<Network>> {
    let all: Vec<Network> = phi.players().networks().collect();
    let flags = all.par_iter().map(|&g| test(g)).collect::<Result<Vec<bool>>>()?;
    Ok(all.into_iter().zip(flags).filter(|&(_, f)| f).map(|(g, _)| g).collect())
}

pub fn weak_monadic_networks(phi: &NetworkPayoff, c: &CostStructure) -> Result<Vec<Network>> {
    collect_networks(phi, |g| is_weak_monadic(phi, c, g))
}

pub fn monadic_networks(phi: &NetworkPayoff, c: &CostStructure, search: MonadicSearch) -> Result<Vec<Network>> {
    collect_networks(phi, |g| is_monadic(phi, c, g, search))
}

/// The first unilateral proposal that breaks stability: an SLDP failure, or a
/// player `i` who deletes `h-` and proposes `h+` so that `i` gains while no
/// newly chosen neighbour loses.
pub fn unilateral_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    if let Some(w) = sldp_violation(phi, g) {
        return Some(w);
    }
    let ps = phi.players();
    for i in ps.players() {
        let own = ps.links_of(g, i);
        let absent = ps.incident(i).minus(g);
        for hp in absent.nonempty_subsets() {
            for hm in own.subsets() {
                let d = g.union(hp).minus(hm);
                if phi.get(d, i) <= phi.get(g, i) {
                    continue;
                }
                let objected = hp.link_indices().any(|k| {
                    let j = ps.pair(k).other(i);
                    phi.get(d, j) < phi.get(g, j)
                });
                if !objected {
                    return Some(Witness {
                        network: g,
                        player: i,
                        partner: None,
                        links: hp.union(hm),
                        deviation: d,
                        reason: "unopposed unilateral proposal",
                    });
                }
            }
        }
    }
    None
}

pub fn is_unilaterally_stable(phi: &NetworkPayoff, g: Network) -> bool {
    unilateral_violation(phi, g).is_none()
}

pub fn unilateral_networks(phi: &NetworkPayoff) -> Vec<Network> {
    phi.players()
        .networks()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&g| is_unilaterally_stable(phi, g))
        .collect()
}

/// Unilaterally stable networks are SPS; under link monotonicity the complete
/// network is unilaterally stable, and the only one when monotonicity is strict.
pub fn verify_unilateral(phi: &NetworkPayoff) -> TheoremReport {
    let ps = phi.players();
    let mut rep = TheoremReport::new("unilateral");
    let uni = unilateral_networks(phi);
    let sps = NetworkClass::Sps.members(phi);
    rep.subset("unilaterally stable networks are SPS", ps, &uni, &sps);
    if is_strictly_link_monotone(phi) {
        rep.sets_equal(
            "strictly link monotone: the complete network is the unique unilaterally stable network",
            ps,
            &uni,
            &[ps.complete()],
        );
    } else if is_link_monotone(phi) {
        rep.claim(
            "link monotone: the complete network is unilaterally stable",
            uni.contains(&ps.complete()),
            Some(format!("unilaterally stable: {}", format_set(ps, &uni))),
        );
        if uni.len() > 1 {
            rep.note(format!("not unique under weak monotonicity: {}", format_set(ps, &uni)));
        }
    }
    rep
}

/// With positive costs, monadic stability equals strict pairwise stability of
/// the cost-netted payoff; monadic supports are non-superfluous and weakly monadic.
pub fn verify_monadic_equivalence(phi: &NetworkPayoff, c: &CostStructure) -> Result<TheoremReport> {
    check_costs(phi, c)?;
    if !c.all_positive() {
        return Err(Error::Precondition(
            "monadic equivalence needs c_ij > 0 for every pair".into(),
        ));
    }
    let ps = phi.players();
    let mut rep = TheoremReport::new("monadic-equivalence");
    let phia = phi.net_of_two_sided(c)?;
    let strict = NetworkClass::SpsStrict.members(&phia);
    let all: Vec<Network> = ps.networks().collect();
    let supports = all
        .par_iter()
        .map(|&g| monadic_supports(phi, c, g, MonadicSearch::Exhaustive))
        .collect::<Result<Vec<_>>>()?;
    let monadic: Vec<Network> = all
        .iter()
        .zip(&supports)
        .filter(|(_, s)| !s.is_empty())
        .map(|(&g, _)| g)
        .collect();
    rep.sets_equal(
        "monadically stable networks equal SPS* networks of the net payoff",
        ps,
        &monadic,
        &strict,
    );
    let fast = monadic_networks(phi, c, MonadicSearch::NonSuperfluousOnly)?;
    rep.sets_equal(
        "the non-superfluous search finds the same monadic networks",
        ps,
        &fast,
        &monadic,
    );
    let superfluous: Vec<String> = supports
        .iter()
        .flatten()
        .filter(|l| !l.is_non_superfluous())
        .map(|l| l.to_string())
        .collect();
    rep.claim(
        "every monadic support is non-superfluous",
        superfluous.is_empty(),
        Some(format!("superfluous supports: {}", superfluous.join("; "))),
    );
    let weak = weak_monadic_networks(phi, c)?;
    rep.subset("monadically stable networks are weakly monadically stable", ps, &monadic, &weak);
    Ok(rep)
}
