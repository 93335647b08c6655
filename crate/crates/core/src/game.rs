//! Finite games in strategic form with pure strategies.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default bound on the number of profiles a single enumeration may visit.
pub const DEFAULT_MAX_PROFILES: u64 = 1 << 24;

/// A finite game: `n` players, finitely many strategies each, exact payoffs.
pub trait FiniteGame: Sync {
    fn num_players(&self) -> usize;

    fn num_strategies(&self, player: usize) -> usize;

    /// `pi_i(a)`. Must be total and deterministic.
    fn payoff(&self, profile: &[usize], player: usize) -> Rational;

    fn payoffs(&self, profile: &[usize]) -> Vec<Rational> {
        (0..self.num_players())
            .map(|i| self.payoff(profile, i))
            .collect()
    }

    fn strategy_label(&self, _player: usize, strategy: usize) -> String {
        strategy.to_string()
    }
}

/// Total number of pure profiles, saturating.
pub fn profile_count<G: FiniteGame + ?Sized>(game: &G) -> u64 {
    (0..game.num_players()).fold(1u64, |acc, i| {
        acc.saturating_mul(game.num_strategies(i) as u64)
    })
}

pub fn check_profile<G: FiniteGame + ?Sized>(game: &G, profile: &[usize]) -> Result<()> {
    if profile.len() != game.num_players() {
        return Err(Error::Precondition(format!(
            "profile has {} entries for {} players",
            profile.len(),
            game.num_players()
        )));
    }
    for (i, &s) in profile.iter().enumerate() {
        if s >= game.num_strategies(i) {
            return Err(Error::Precondition(format!(
                "strategy {s} out of range for player {}",
                i + 1
            )));
        }
    }
    Ok(())
}

fn check_capacity(what: &str, required: u64, limit: u64) -> Result<()> {
    if required > limit {
        return Err(Error::Capacity {
            what: what.to_string(),
            required,
            limit,
        });
    }
    Ok(())
}

/// Mixed-radix index of a profile; player 0 is the most significant digit.
pub fn profile_index<G: FiniteGame + ?Sized>(game: &G, profile: &[usize]) -> usize {
    profile
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &s)| acc * game.num_strategies(i) + s)
}

pub fn profile_from_index<G: FiniteGame + ?Sized>(game: &G, mut index: usize) -> Vec<usize> {
    let n = game.num_players();
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        let k = game.num_strategies(i);
        out[i] = index % k;
        index /= k;
    }
    out
}

/// Iterates all profiles in lexicographic order (the first player varies slowest).
pub struct Profiles {
    radix: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Profiles {
    pub fn new(radix: Vec<usize>) -> Self {
        let next = if radix.iter().all(|&k| k > 0) {
            Some(vec![0; radix.len()])
        } else {
            None
        };
        Profiles { radix, next }
    }

    pub fn of<G: FiniteGame + ?Sized>(game: &G) -> Self {
        Self::new((0..game.num_players()).map(|i| game.num_strategies(i)).collect())
    }
}

impl Iterator for Profiles {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.radix[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    }
}

/// The argmax set of `pi_i(., a_-i)`; never empty.
pub fn best_responses<G: FiniteGame + ?Sized>(game: &G, i: usize, profile: &[usize]) -> Vec<usize> {
    let mut p = profile.to_vec();
    let mut best: Option<Rational> = None;
    let mut out = Vec::new();
    for s in 0..game.num_strategies(i) {
        p[i] = s;
        let v = game.payoff(&p, i);
        match best.as_ref().map(|b| v.cmp(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                best = Some(v);
                out.clear();
                out.push(s);
            }
            Some(std::cmp::Ordering::Equal) => out.push(s),
            Some(std::cmp::Ordering::Less) => {}
        }
    }
    out
}

/// A profitable unilateral deviation `(player, strategy)`, if any.
pub fn profitable_deviation<G: FiniteGame + ?Sized>(
    game: &G,
    profile: &[usize],
) -> Option<(usize, usize)> {
    let mut p = profile.to_vec();
    for i in 0..game.num_players() {
        let base = game.payoff(profile, i);
        for s in 0..game.num_strategies(i) {
            if s == profile[i] {
                continue;
            }
            p[i] = s;
            let better = game.payoff(&p, i) > base;
            p[i] = profile[i];
            if better {
                return Some((i, s));
            }
        }
    }
    None
}

pub fn is_nash<G: FiniteGame + ?Sized>(game: &G, profile: &[usize]) -> bool {
    profitable_deviation(game, profile).is_none()
}

/// All pure Nash equilibria, in lexicographic profile order.
pub fn enumerate_nash<G: FiniteGame + ?Sized>(game: &G, max_profiles: u64) -> Result<Vec<Vec<usize>>> {
    check_capacity("Nash enumeration", profile_count(game), max_profiles)?;
    Ok(Profiles::of(game).filter(|p| is_nash(game, p)).collect())
}

/// A coalition deviation `b_S` under which some member strictly gains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionDeviation {
    /// Members, 0-based, ascending.
    pub coalition: Vec<usize>,
    pub deviation: Vec<usize>,
    /// The member who strictly gains.
    pub gainer: usize,
}

/// Checks the strong-equilibrium condition: for every non-empty coalition `S`
/// and every joint deviation `b_S`, every member `i` of `S` has
/// `pi_i(a_{N-S}, b_S) <= pi_i(a)`. Returns the first violation.
pub fn strong_equilibrium_violation<G: FiniteGame + ?Sized>(
    game: &G,
    profile: &[usize],
    max_profiles: u64,
) -> Result<Option<CoalitionDeviation>> {
    let n = game.num_players();
    // sum over coalitions of their joint strategy counts is below prod (k_i + 1)
    let work = (0..n).fold(1u64, |acc, i| {
        acc.saturating_mul(game.num_strategies(i) as u64 + 1)
    });
    check_capacity("strong equilibrium check", work, max_profiles)?;
    let base = game.payoffs(profile);
    for mask in 1u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let radix: Vec<usize> = members.iter().map(|&i| game.num_strategies(i)).collect();
        for joint in Profiles::new(radix) {
            let mut p = profile.to_vec();
            for (k, &i) in members.iter().enumerate() {
                p[i] = joint[k];
            }
            if p == profile {
                continue;
            }
            for &i in &members {
                if game.payoff(&p, i) > base[i] {
                    return Ok(Some(CoalitionDeviation {
                        coalition: members.clone(),
                        deviation: p,
                        gainer: i,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_strong_equilibrium<G: FiniteGame + ?Sized>(
    game: &G,
    profile: &[usize],
    max_profiles: u64,
) -> Result<bool> {
    Ok(strong_equilibrium_violation(game, profile, max_profiles)?.is_none())
}

/// A game given by an explicit payoff table with labelled strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGame {
    labels: Vec<Vec<String>>,
    payoffs: Vec<Vec<Rational>>,
}

impl TableGame {
    /// `labels[i]` names player `i`'s strategies; unlisted profiles pay zero.
    pub fn new(labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.is_empty() || labels.iter().any(|l| l.is_empty()) {
            return Err(Error::Precondition(
                "every player needs at least one strategy".to_string(),
            ));
        }
        for (i, l) in labels.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            if !l.iter().all(|s| seen.insert(s)) {
                return Err(Error::Parse(format!(
                    "duplicate strategy label for player {}",
                    i + 1
                )));
            }
        }
        let count: usize = labels.iter().map(Vec::len).product();
        let n = labels.len();
        Ok(TableGame {
            labels,
            payoffs: vec![vec![Rational::zero(); n]; count],
        })
    }

    /// A game where player `i` has `counts[i]` unnamed strategies.
    pub fn with_counts(counts: &[usize]) -> Result<Self> {
        Self::new(
            counts
                .iter()
                .map(|&k| (0..k).map(|s| s.to_string()).collect())
                .collect(),
        )
    }

    pub fn from_fn(counts: &[usize], mut f: impl FnMut(&[usize]) -> Vec<Rational>) -> Result<Self> {
        let mut g = Self::with_counts(counts)?;
        for p in Profiles::new(counts.to_vec()) {
            let v = f(&p);
            g.set(&p, v)?;
        }
        Ok(g)
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn set(&mut self, profile: &[usize], payoffs: Vec<Rational>) -> Result<()> {
        check_profile(self, profile)?;
        if payoffs.len() != self.labels.len() {
            return Err(Error::Parse(format!(
                "payoff vector has {} entries for {} players",
                payoffs.len(),
                self.labels.len()
            )));
        }
        let k = profile_index(self, profile);
        self.payoffs[k] = payoffs;
        Ok(())
    }

    pub fn strategy_index(&self, player: usize, label: &str) -> Result<usize> {
        self.labels[player]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown strategy `{label}` for player {}",
                    player + 1
                ))
            })
    }

    /// Parses a comma-separated list of strategy labels.
    pub fn parse_profile(&self, key: &str) -> Result<Vec<usize>> {
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        if parts.len() != self.labels.len() {
            return Err(Error::Parse(format!(
                "profile `{key}` should name {} strategies",
                self.labels.len()
            )));
        }
        parts
            .iter()
            .enumerate()
            .map(|(i, s)| self.strategy_index(i, s))
            .collect()
    }

    pub fn profile_key(&self, profile: &[usize]) -> String {
        profile
            .iter()
            .enumerate()
            .map(|(i, &s)| self.labels[i][s].clone())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Payoff table keyed by profile label string.
    pub fn entries(&self) -> HashMap<String, Vec<Rational>> {
        Profiles::of(self)
            .map(|p| (self.profile_key(&p), self.payoffs(&p)))
            .collect()
    }
}

impl FiniteGame for TableGame {
    fn num_players(&self) -> usize {
        self.labels.len()
    }

    fn num_strategies(&self, player: usize) -> usize {
        self.labels[player].len()
    }

    fn payoff(&self, profile: &[usize], player: usize) -> Rational {
        self.payoffs[profile_index(self, profile)][player].clone()
    }

    fn payoffs(&self, profile: &[usize]) -> Vec<Rational> {
        self.payoffs[profile_index(self, profile)].clone()
    }

    fn strategy_label(&self, player: usize, strategy: usize) -> String {
        self.labels[player][strategy].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn chicken() -> TableGame {
        let l = vec!["S".to_string(), "C".to_string()];
        let mut g = TableGame::new(vec![l.clone(), l]).unwrap();
        g.set(&[0, 0], vec![int(5), int(5)]).unwrap();
        g.set(&[0, 1], vec![int(2), int(7)]).unwrap();
        g.set(&[1, 0], vec![int(7), int(2)]).unwrap();
        g.set(&[1, 1], vec![int(0), int(0)]).unwrap();
        g
    }

    #[test]
    fn chicken_best_responses() {
        let g = chicken();
        assert_eq!(best_responses(&g, 0, &[0, 1]), vec![0]);
        assert_eq!(best_responses(&g, 0, &[0, 0]), vec![1]);
    }

    #[test]
    fn chicken_nash() {
        let g = chicken();
        assert!(is_nash(&g, &[0, 1]));
        assert!(!is_nash(&g, &[1, 1]));
        let ne = enumerate_nash(&g, DEFAULT_MAX_PROFILES).unwrap();
        assert_eq!(ne, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn chicken_equilibria_are_not_strong() {
        let g = chicken();
        let v = strong_equilibrium_violation(&g, &[0, 1], DEFAULT_MAX_PROFILES)
            .unwrap()
            .unwrap();
        assert_eq!(v.coalition, vec![0, 1]);
        assert_eq!(v.deviation, vec![0, 0]);
        assert_eq!(v.gainer, 0);
    }

    #[test]
    fn one_player_games() {
        let g = TableGame::from_fn(&[3], |p| vec![int([1, 4, 2][p[0]])]).unwrap();
        assert!(is_nash(&g, &[1]));
        assert!(is_strong_equilibrium(&g, &[1], DEFAULT_MAX_PROFILES).unwrap());
        let single = TableGame::from_fn(&[1, 2], |_| vec![int(0), int(0)]).unwrap();
        assert_eq!(best_responses(&single, 0, &[0, 1]), vec![0]);
    }

    #[test]
    fn constant_games() {
        let g = TableGame::from_fn(&[2, 3, 2], |_| vec![int(1); 3]).unwrap();
        assert_eq!(enumerate_nash(&g, 100).unwrap().len(), 12);
        assert!(is_strong_equilibrium(&g, &[1, 2, 0], DEFAULT_MAX_PROFILES).unwrap());
        assert!(matches!(enumerate_nash(&g, 5), Err(Error::Capacity { .. })));
    }

    #[test]
    fn profile_indexing_round_trips() {
        let g = TableGame::with_counts(&[2, 3, 4]).unwrap();
        for (k, p) in Profiles::of(&g).enumerate() {
            assert_eq!(profile_index(&g, &p), k);
            assert_eq!(profile_from_index(&g, k), p);
        }
    }

    fn arb_game() -> impl Strategy<Value = TableGame> {
        (proptest::collection::vec(1usize..4, 1..4), any::<u64>()).prop_map(|(counts, seed)| {
            let mut s = seed;
            TableGame::from_fn(&counts, |_| {
                (0..counts.len())
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        int((s >> 60) as i64 - 4)
                    })
                    .collect()
            })
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn strong_implies_nash(g in arb_game()) {
            for p in Profiles::of(&g) {
                if is_strong_equilibrium(&g, &p, DEFAULT_MAX_PROFILES).unwrap() {
                    prop_assert!(is_nash(&g, &p));
                }
            }
        }

        #[test]
        fn enumeration_matches_predicate(g in arb_game()) {
            let ne = enumerate_nash(&g, DEFAULT_MAX_PROFILES).unwrap();
            for p in Profiles::of(&g) {
                prop_assert_eq!(ne.contains(&p), is_nash(&g, &p));
            }
        }

        #[test]
        fn best_responses_ignore_constant_shift(g in arb_game(), shift in -5i64..5) {
            let n = g.num_players();
            let counts: Vec<usize> = (0..n).map(|i| g.num_strategies(i)).collect();
            let shifted = TableGame::from_fn(&counts, |p| {
                let mut v = g.payoffs(p);
                v[0] += int(shift);
                v
            }).unwrap();
            for p in Profiles::of(&g) {
                prop_assert_eq!(best_responses(&g, 0, &p), best_responses(&shifted, 0, &p));
            }
        }
    }
}
