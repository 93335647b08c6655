//! Link-based stability: deletion and addition proofness, the pairwise
//! stability family, the structural payoff predicates, and coalitional
//! (strong) stability.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::network::{Network, PlayerSet};
use crate::payoff::NetworkPayoff;
use crate::report::TheoremReport;

/// A concrete reason a predicate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub network: Network,
    /// The player whose incentive breaks the property.
    pub player: usize,
    /// The other endpoint, for link-level violations.
    pub partner: Option<usize>,
    /// Links deleted or added.
    pub links: Network,
    /// The network reached.
    pub deviation: Network,
    pub reason: &'static str,
}

impl Witness {
    pub fn describe(&self, ps: &PlayerSet) -> String {
        let partner = self
            .partner
            .map(|j| format!(" with player {}", j + 1))
            .unwrap_or_default();
        format!(
            "{} at {}: player {}{} via links {{{}}} reaching {}",
            self.reason,
            ps.display(self.network),
            self.player + 1,
            partner,
            ps.key(self.links),
            ps.display(self.deviation)
        )
    }
}

fn witness(
    g: Network,
    player: usize,
    partner: Option<usize>,
    links: Network,
    deviation: Network,
    reason: &'static str,
) -> Witness {
    Witness {
        network: g,
        player,
        partner,
        links,
        deviation,
        reason,
    }
}

pub fn ldp_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    let ps = phi.players();
    for i in ps.players() {
        for k in ps.links_of(g, i).link_indices() {
            let h = Network(1 << k);
            let d = g.minus(h);
            if phi.get(d, i) > phi.get(g, i) {
                return Some(witness(g, i, Some(ps.pair(k).other(i)), h, d, "gain from deleting a link"));
            }
        }
    }
    None
}

pub fn sldp_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    let ps = phi.players();
    for i in ps.players() {
        for h in ps.links_of(g, i).nonempty_subsets() {
            let d = g.minus(h);
            if phi.get(d, i) > phi.get(g, i) {
                return Some(witness(g, i, None, h, d, "gain from deleting links"));
            }
        }
    }
    None
}

/// Iterates the links absent from `g` as `(index, i, j)`.
fn missing_links(ps: &PlayerSet, g: Network) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    ps.complete().minus(g).link_indices().map(move |k| {
        let l = ps.pair(k);
        (k, l.i, l.j)
    })
}

pub fn lap_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    let ps = phi.players();
    for (k, a, b) in missing_links(ps, g) {
        let h = Network(1 << k);
        let d = g.union(h);
        for (i, j) in [(a, b), (b, a)] {
            if phi.get(d, i) > phi.get(g, i) && phi.get(d, j) >= phi.get(g, j) {
                return Some(witness(g, i, Some(j), h, d, "gain from adding a link without objection"));
            }
        }
    }
    None
}

pub fn star_lap_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    let ps = phi.players();
    for (k, a, b) in missing_links(ps, g) {
        let h = Network(1 << k);
        let d = g.union(h);
        for (i, j) in [(a, b), (b, a)] {
            if phi.get(d, i) >= phi.get(g, i) && phi.get(d, j) >= phi.get(g, j) {
                return Some(witness(g, i, Some(j), h, d, "weak gain from adding a link without objection"));
            }
        }
    }
    None
}

/// SLAP: every absent link makes both endpoints strictly worse off.
pub fn slap_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    let ps = phi.players();
    for (k, a, b) in missing_links(ps, g) {
        let h = Network(1 << k);
        let d = g.union(h);
        for (i, j) in [(a, b), (b, a)] {
            if phi.get(d, i) >= phi.get(g, i) {
                return Some(witness(g, i, Some(j), h, d, "absent link not strictly harmful"));
            }
        }
    }
    None
}

pub fn is_ldp(phi: &NetworkPayoff, g: Network) -> bool {
    ldp_violation(phi, g).is_none()
}

pub fn is_sldp(phi: &NetworkPayoff, g: Network) -> bool {
    sldp_violation(phi, g).is_none()
}

pub fn is_lap(phi: &NetworkPayoff, g: Network) -> bool {
    lap_violation(phi, g).is_none()
}

pub fn is_star_lap(phi: &NetworkPayoff, g: Network) -> bool {
    star_lap_violation(phi, g).is_none()
}

pub fn is_slap(phi: &NetworkPayoff, g: Network) -> bool {
    slap_violation(phi, g).is_none()
}

pub fn is_pairwise_stable(phi: &NetworkPayoff, g: Network) -> bool {
    is_ldp(phi, g) && is_lap(phi, g)
}

pub fn is_strongly_pairwise_stable(phi: &NetworkPayoff, g: Network) -> bool {
    is_sldp(phi, g) && is_lap(phi, g)
}

pub fn is_strictly_pairwise_stable(phi: &NetworkPayoff, g: Network) -> bool {
    is_sldp(phi, g) && is_slap(phi, g)
}

/// A family of networks defined by one of the link-based predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetworkClass {
    All,
    Ldp,
    Sldp,
    Lap,
    StarLap,
    Slap,
    Ps,
    Sps,
    SpsStrict,
}

impl NetworkClass {
    pub fn contains(self, phi: &NetworkPayoff, g: Network) -> bool {
        match self {
            NetworkClass::All => true,
            NetworkClass::Ldp => is_ldp(phi, g),
            NetworkClass::Sldp => is_sldp(phi, g),
            NetworkClass::Lap => is_lap(phi, g),
            NetworkClass::StarLap => is_star_lap(phi, g),
            NetworkClass::Slap => is_slap(phi, g),
            NetworkClass::Ps => is_pairwise_stable(phi, g),
            NetworkClass::Sps => is_strongly_pairwise_stable(phi, g),
            NetworkClass::SpsStrict => is_strictly_pairwise_stable(phi, g),
        }
    }

    /// Members in ascending bitmask order.
    pub fn members(self, phi: &NetworkPayoff) -> Vec<Network> {
        phi.players()
            .networks()
            .filter(|&g| self.contains(phi, g))
            .collect()
    }
}

impl fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NetworkClass::All => "all",
            NetworkClass::Ldp => "LDP",
            NetworkClass::Sldp => "SLDP",
            NetworkClass::Lap => "LAP",
            NetworkClass::StarLap => "star-LAP",
            NetworkClass::Slap => "SLAP",
            NetworkClass::Ps => "PS",
            NetworkClass::Sps => "SPS",
            NetworkClass::SpsStrict => "SPS*",
        };
        f.write_str(s)
    }
}

/// Convexity in deletion form on a class: for every `g` in the class, player
/// `i` and `h` within `L_i(g)`, if the single-link deletion marginals
/// `sum_{ij in h} [phi_i(g) - phi_i(g - ij)]` are non-negative in total then
/// `phi_i(g) >= phi_i(g - h)`.
pub fn convexity_violation_on(phi: &NetworkPayoff, class: &[Network]) -> Option<Witness> {
    let ps = phi.players();
    for &g in class {
        for i in ps.players() {
            let own = ps.links_of(g, i);
            if own.len() < 2 {
                continue;
            }
            for h in own.nonempty_subsets() {
                let marginal: crate::rational::Rational = h
                    .link_indices()
                    .map(|k| phi.gain(i, g, g.minus(Network(1 << k))))
                    .sum();
                let d = g.minus(h);
                if !marginal.is_negative() && phi.get(d, i) > phi.get(g, i) {
                    return Some(witness(g, i, None, h, d, "marginals non-negative but joint deletion profitable"));
                }
            }
        }
    }
    None
}

/// Convexity in addition form, read literally: for every `g` in the class,
/// player `i` with at least one neighbour in `g`, and `h` of links of `i`
/// absent from `g`, non-negative single-link addition marginals imply
/// `phi_i(g + h) >= phi_i(g)`.
pub fn addition_convexity_violation_on(phi: &NetworkPayoff, class: &[Network]) -> Option<Witness> {
    let ps = phi.players();
    for &g in class {
        for i in ps.players() {
            if ps.links_of(g, i).is_empty() {
                continue;
            }
            let absent = ps.incident(i).minus(g);
            for h in absent.nonempty_subsets() {
                let marginal: crate::rational::Rational = h
                    .link_indices()
                    .map(|k| phi.gain(i, g.union(Network(1 << k)), g))
                    .sum();
                let d = g.union(h);
                if !marginal.is_negative() && phi.get(d, i) < phi.get(g, i) {
                    return Some(witness(g, i, None, h, d, "marginals non-negative but joint addition harmful"));
                }
            }
        }
    }
    None
}

/// Discerning: no absent link leaves both endpoints exactly indifferent.
pub fn discerning_violation_on(phi: &NetworkPayoff, class: &[Network]) -> Option<Witness> {
    let ps = phi.players();
    for &g in class {
        for (k, i, j) in missing_links(ps, g) {
            let d = g.union(Network(1 << k));
            if phi.get(d, i) == phi.get(g, i) && phi.get(d, j) == phi.get(g, j) {
                return Some(witness(g, i, Some(j), Network(1 << k), d, "non-discerning link"));
            }
        }
    }
    None
}

/// Uniform: for absent `ij`, a weak gain for `i` implies a weak gain for `j`
/// (both orders).
pub fn uniform_violation_on(phi: &NetworkPayoff, class: &[Network]) -> Option<Witness> {
    let ps = phi.players();
    for &g in class {
        for (k, a, b) in missing_links(ps, g) {
            let d = g.union(Network(1 << k));
            for (i, j) in [(a, b), (b, a)] {
                if phi.get(d, i) >= phi.get(g, i) && phi.get(d, j) < phi.get(g, j) {
                    return Some(witness(g, i, Some(j), Network(1 << k), d, "non-uniform link"));
                }
            }
        }
    }
    None
}

/// Link monotone: adding any own link never lowers a player's payoff.
pub fn link_monotonicity_violation(phi: &NetworkPayoff) -> Option<Witness> {
    let ps = phi.players();
    for g in ps.networks() {
        for (k, a, b) in missing_links(ps, g) {
            let d = g.union(Network(1 << k));
            for (i, j) in [(a, b), (b, a)] {
                if phi.get(d, i) < phi.get(g, i) {
                    return Some(witness(g, i, Some(j), Network(1 << k), d, "adding an own link lowers payoff"));
                }
            }
        }
    }
    None
}

/// Strict link monotonicity: adding any own link strictly raises payoff.
pub fn strict_link_monotonicity_violation(phi: &NetworkPayoff) -> Option<Witness> {
    let ps = phi.players();
    for g in ps.networks() {
        for (k, a, b) in missing_links(ps, g) {
            let d = g.union(Network(1 << k));
            for (i, j) in [(a, b), (b, a)] {
                if phi.get(d, i) <= phi.get(g, i) {
                    return Some(witness(g, i, Some(j), Network(1 << k), d, "adding an own link does not raise payoff"));
                }
            }
        }
    }
    None
}

pub fn is_convex_on(phi: &NetworkPayoff, class: &[Network]) -> bool {
    convexity_violation_on(phi, class).is_none()
}

pub fn is_convex_on_ldp(phi: &NetworkPayoff) -> bool {
    is_convex_on(phi, &NetworkClass::Ldp.members(phi))
}

pub fn is_discerning_on(phi: &NetworkPayoff, class: &[Network]) -> bool {
    discerning_violation_on(phi, class).is_none()
}

pub fn is_uniform_on(phi: &NetworkPayoff, class: &[Network]) -> bool {
    uniform_violation_on(phi, class).is_none()
}

pub fn is_link_monotone(phi: &NetworkPayoff) -> bool {
    link_monotonicity_violation(phi).is_none()
}

pub fn is_strictly_link_monotone(phi: &NetworkPayoff) -> bool {
    strict_link_monotonicity_violation(phi).is_none()
}

/// Which coalitional deviations block a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrongStabilityMode {
    /// Blocked when some member strictly gains and no member loses.
    #[default]
    Jvdn,
    /// Blocked only when every member strictly gains.
    Dm,
}

/// A blocking coalition and the network it reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionWitness {
    pub network: Network,
    /// Player bitmask.
    pub coalition: u32,
    pub deviation: Network,
}

impl CoalitionWitness {
    pub fn members(&self) -> Vec<usize> {
        (0..32).filter(|i| self.coalition >> i & 1 == 1).collect()
    }

    pub fn describe(&self, ps: &PlayerSet) -> String {
        let members: Vec<String> = self.members().iter().map(|i| (i + 1).to_string()).collect();
        format!(
            "coalition {{{}}} moves {} to {}",
            members.join(","),
            ps.display(self.network),
            ps.display(self.deviation)
        )
    }
}

/// Networks obtainable from `g` by coalition `S` (a non-empty player mask):
/// `g + h+ - h-` with `h+` within the links among `S` absent from `g` and
/// `h-` within the links of `g` touching `S`. Includes `g` itself.
pub fn obtainable(ps: &PlayerSet, g: Network, coalition: u32) -> Vec<Network> {
    let add = ps.complete_on(coalition).minus(g);
    let del = ps.links_of_coalition(g, coalition);
    let mut out = Vec::with_capacity(1 << (add.len() + del.len()));
    for hp in add.subsets() {
        for hm in del.subsets() {
            out.push(g.union(hp).minus(hm));
        }
    }
    out.sort_unstable();
    out
}

fn blocks(phi: &NetworkPayoff, g: Network, d: Network, coalition: u32, mode: StrongStabilityMode) -> bool {
    let members = (0..phi.n()).filter(|i| coalition >> i & 1 == 1);
    match mode {
        StrongStabilityMode::Jvdn => {
            let mut gain = false;
            for i in members {
                match phi.get(d, i).cmp(phi.get(g, i)) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => gain = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            gain
        }
        StrongStabilityMode::Dm => members.into_iter().all(|i| phi.get(d, i) > phi.get(g, i)),
    }
}

/// First blocking deviation by a coalition of at most `max_size` members.
pub fn coalition_violation(
    phi: &NetworkPayoff,
    g: Network,
    max_size: usize,
    mode: StrongStabilityMode,
) -> Option<CoalitionWitness> {
    let n = phi.n();
    for coalition in 1u32..(1 << n) {
        if coalition.count_ones() as usize > max_size {
            continue;
        }
        for d in obtainable(phi.players(), g, coalition) {
            if d != g && blocks(phi, g, d, coalition, mode) {
                return Some(CoalitionWitness {
                    network: g,
                    coalition,
                    deviation: d,
                });
            }
        }
    }
    None
}

pub fn is_strongly_stable(phi: &NetworkPayoff, g: Network, mode: StrongStabilityMode) -> bool {
    coalition_violation(phi, g, phi.n(), mode).is_none()
}

/// Strong stability restricted to coalitions of at most `r` players.
pub fn is_stable_of_order(phi: &NetworkPayoff, g: Network, r: usize) -> bool {
    coalition_violation(phi, g, r, StrongStabilityMode::Jvdn).is_none()
}

/// Bilateral stability: SLDP, and no pair `i, j` can reach
/// `g + h - h_i - h_j` (with `h` empty or `{ij}`) so that one of them gains
/// while the other does not lose.
pub fn bilateral_violation(phi: &NetworkPayoff, g: Network) -> Option<Witness> {
    if let Some(w) = sldp_violation(phi, g) {
        return Some(w);
    }
    let ps = phi.players();
    for a in ps.players() {
        for b in a + 1..ps.n() {
            let link = ps.link(a, b);
            let extra = if g.contains(link) { Network::EMPTY } else { link };
            let del = ps.links_of(g, a).union(ps.links_of(g, b));
            for hh in extra.subsets() {
                for hm in del.subsets() {
                    let d = g.union(hh).minus(hm);
                    for (i, j) in [(a, b), (b, a)] {
                        if phi.get(d, i) > phi.get(g, i) && phi.get(d, j) >= phi.get(g, j) {
                            return Some(witness(g, i, Some(j), hh.union(hm), d, "profitable pair deviation"));
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_bilaterally_stable(phi: &NetworkPayoff, g: Network) -> bool {
    bilateral_violation(phi, g).is_none()
}

pub fn bilateral_stable_networks(phi: &NetworkPayoff) -> Vec<Network> {
    phi.players()
        .networks()
        .filter(|&g| is_bilaterally_stable(phi, g))
        .collect()
}

fn describe_opt(ps: &PlayerSet, w: Option<Witness>) -> String {
    w.map(|w| w.describe(ps)).unwrap_or_else(|| "no structural violation".into())
}

/// LDP versus SLDP: `g0` is SLDP, SLDP is within LDP, and the two coincide
/// exactly when `phi` is convex on the LDP networks.
pub fn verify_deletion_equivalence(phi: &NetworkPayoff) -> TheoremReport {
    let ps = phi.players();
    let mut rep = TheoremReport::new("deletion-equivalence");
    let d = NetworkClass::Ldp.members(phi);
    let ds = NetworkClass::Sldp.members(phi);
    rep.claim("the empty network is SLDP", ds.contains(&Network::EMPTY), None);
    rep.subset("SLDP networks are LDP", ps, &ds, &d);
    let conv = convexity_violation_on(phi, &d);
    rep.equivalence(
        "LDP equals SLDP iff convex on the LDP networks",
        d == ds,
        conv.is_none(),
        || describe_opt(ps, conv.clone()),
    );
    if let Some(w) = addition_convexity_violation_on(phi, &d) {
        rep.note(format!("addition-form convexity fails: {}", w.describe(ps)));
    }
    rep
}

/// The addition-proofness chain and its two equivalences, plus the combined one.
pub fn verify_addition_equivalences(phi: &NetworkPayoff) -> TheoremReport {
    let ps = phi.players();
    let mut rep = TheoremReport::new("addition-equivalence");
    let a = NetworkClass::Lap.members(phi);
    let astar = NetworkClass::StarLap.members(phi);
    let as_ = NetworkClass::Slap.members(phi);
    rep.claim("the complete network is SLAP", as_.contains(&ps.complete()), None);
    rep.subset("SLAP networks are star-LAP", ps, &as_, &astar);
    rep.subset("star-LAP networks are LAP", ps, &astar, &a);
    let disc = discerning_violation_on(phi, &a);
    rep.equivalence(
        "star-LAP equals LAP iff discerning on LAP",
        astar == a,
        disc.is_none(),
        || describe_opt(ps, disc.clone()),
    );
    let unif = uniform_violation_on(phi, &astar);
    rep.equivalence(
        "SLAP equals star-LAP iff uniform on star-LAP",
        as_ == astar,
        unif.is_none(),
        || describe_opt(ps, unif.clone()),
    );
    let unif_a = uniform_violation_on(phi, &a);
    rep.equivalence(
        "SLAP equals LAP iff discerning and uniform on LAP",
        as_ == a,
        disc.is_none() && unif_a.is_none(),
        || format!("{}; {}", describe_opt(ps, disc.clone()), describe_opt(ps, unif_a.clone())),
    );
    rep
}

/// The pairwise stability chain and its equivalences, together with the
/// coalitional inclusions: strongly stable within SPS, order-1 equal to SLDP,
/// order-2 equal to bilateral stability, and order stability antitone in `r`.
pub fn verify_pairwise_corollaries(phi: &NetworkPayoff) -> TheoremReport {
    let ps = phi.players();
    let mut rep = TheoremReport::new("pairwise-corollaries");
    let p = NetworkClass::Ps.members(phi);
    let pstar = NetworkClass::Sps.members(phi);
    let psx = NetworkClass::SpsStrict.members(phi);
    rep.subset("SPS* networks are SPS", ps, &psx, &pstar);
    rep.subset("SPS networks are PS", ps, &pstar, &p);
    let conv = convexity_violation_on(phi, &p);
    rep.equivalence("PS equals SPS iff convex on PS", p == pstar, conv.is_none(), || {
        describe_opt(ps, conv.clone())
    });
    let disc_star = discerning_violation_on(phi, &pstar);
    let unif_star = uniform_violation_on(phi, &pstar);
    rep.equivalence(
        "SPS equals SPS* iff discerning and uniform on SPS",
        pstar == psx,
        disc_star.is_none() && unif_star.is_none(),
        || format!("{}; {}", describe_opt(ps, disc_star.clone()), describe_opt(ps, unif_star.clone())),
    );
    let disc = discerning_violation_on(phi, &p);
    let unif = uniform_violation_on(phi, &p);
    rep.equivalence(
        "PS equals SPS* iff convex, discerning and uniform on PS",
        p == psx,
        conv.is_none() && disc.is_none() && unif.is_none(),
        || {
            format!(
                "{}; {}; {}",
                describe_opt(ps, conv.clone()),
                describe_opt(ps, disc.clone()),
                describe_opt(ps, unif.clone())
            )
        },
    );

    let strong: Vec<Network> = ps
        .networks()
        .filter(|&g| is_strongly_stable(phi, g, StrongStabilityMode::Jvdn))
        .collect();
    rep.subset("strongly stable networks are SPS", ps, &strong, &pstar);
    let order = |r: usize| -> Vec<Network> { ps.networks().filter(|&g| is_stable_of_order(phi, g, r)).collect() };
    let sldp = NetworkClass::Sldp.members(phi);
    rep.sets_equal("order-1 stable networks are the SLDP networks", ps, &order(1), &sldp);
    let order2 = order(2);
    rep.sets_equal(
        "order-2 stable networks are the bilaterally stable networks",
        ps,
        &order2,
        &bilateral_stable_networks(phi),
    );
    let mut prev = order(1);
    for r in 2..=ps.n() {
        let cur = if r == 2 { order2.clone() } else { order(r) };
        rep.subset(format!("order-{r} stable networks are order-{} stable", r - 1), ps, &cur, &prev);
        prev = cur;
    }
    rep.sets_equal("order-n stability is strong stability", ps, &prev, &strong);
    rep
}
