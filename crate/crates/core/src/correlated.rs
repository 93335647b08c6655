//! Correlation devices over finite games, and two ways a device can be self-enforcing.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{self, FiniteGame};
use crate::rational::Rational;

/// A probability distribution over pure profiles with exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationDevice {
    support: Vec<(Vec<usize>, Rational)>,
}

impl CorrelationDevice {
    /// Validates profiles against `game`: positive weights summing to one, no repeats.
    pub fn new<G: FiniteGame + ?Sized>(game: &G, support: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDevice("empty support".into()));
        }
        let mut seen = BTreeMap::new();
        for (p, w) in &support {
            game::check_profile(game, p).map_err(|e| Error::InvalidDevice(e.to_string()))?;
            if !w.is_positive() {
                return Err(Error::InvalidDevice(format!("probability {w} is not positive")));
            }
            if seen.insert(p.clone(), ()).is_some() {
                return Err(Error::InvalidDevice(format!("profile {p:?} listed twice")));
            }
        }
        let total: Rational = support.iter().map(|(_, w)| w).sum();
        if total != Rational::one() {
            return Err(Error::InvalidDevice(format!("probabilities sum to {total}, not 1")));
        }
        Ok(CorrelationDevice { support })
    }

    pub fn point_mass<G: FiniteGame + ?Sized>(game: &G, profile: Vec<usize>) -> Result<Self> {
        Self::new(game, vec![(profile, Rational::one())])
    }

    pub fn support(&self) -> &[(Vec<usize>, Rational)] {
        &self.support
    }
}

/// `sum_a p(a) pi(a)`.
pub fn expected_payoffs<G: FiniteGame + ?Sized>(device: &CorrelationDevice, game: &G) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); game.num_players()];
    for (p, w) in &device.support {
        for (t, v) in total.iter_mut().zip(game.payoffs(p)) {
            *t += w * v;
        }
    }
    total
}

/// Expected payoff of `player` always playing `strategy` while the others obey.
pub fn deviation_value<G: FiniteGame + ?Sized>(
    device: &CorrelationDevice,
    game: &G,
    player: usize,
    strategy: usize,
) -> Rational {
    device
        .support
        .iter()
        .map(|(p, w)| {
            let mut d = p.clone();
            d[player] = strategy;
            w * game.payoff(&d, player)
        })
        .sum()
}

/// A recommendation a player would rather not follow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObedienceWitness {
    pub player: usize,
    /// Absent for ex-ante checks, where the deviation ignores the recommendation.
    pub recommended: Option<usize>,
    pub deviation: usize,
    /// Expected payoff of obeying, conditional on the recommendation when there is one.
    pub obey: Rational,
    pub deviate: Rational,
}

impl ObedienceWitness {
    pub fn describe<G: FiniteGame + ?Sized>(&self, game: &G) -> String {
        let label = |s| game.strategy_label(self.player, s);
        match self.recommended {
            Some(r) => format!(
                "player {} told {} gets {} by obeying but {} by playing {}",
                self.player + 1,
                label(r),
                self.obey,
                self.deviate,
                label(self.deviation)
            ),
            None => format!(
                "player {} gets {} by obeying but {} by always playing {}",
                self.player + 1,
                self.obey,
                self.deviate,
                label(self.deviation)
            ),
        }
    }
}

/// First player and recommendation for which some fixed alternative beats
/// obedience, conditional on being told that recommendation.
pub fn correlated_violation<G: FiniteGame + ?Sized>(device: &CorrelationDevice, game: &G) -> Option<ObedienceWitness> {
    for i in 0..game.num_players() {
        let mut told: BTreeMap<usize, Vec<&(Vec<usize>, Rational)>> = BTreeMap::new();
        for entry in &device.support {
            told.entry(entry.0[i]).or_default().push(entry);
        }
        for (&s, states) in &told {
            let mass: Rational = states.iter().map(|(_, w)| w).sum();
            let obey: Rational = states.iter().map(|(p, w)| w * game.payoff(p, i)).sum();
            for t in (0..game.num_strategies(i)).filter(|&t| t != s) {
                let dev: Rational = states
                    .iter()
                    .map(|(p, w)| {
                        let mut d = p.clone();
                        d[i] = t;
                        w * game.payoff(&d, i)
                    })
                    .sum();
                if dev > obey {
                    return Some(ObedienceWitness {
                        player: i,
                        recommended: Some(s),
                        deviation: t,
                        obey: &obey / &mass,
                        deviate: dev / &mass,
                    });
                }
            }
        }
    }
    None
}

pub fn is_correlated_equilibrium<G: FiniteGame + ?Sized>(device: &CorrelationDevice, game: &G) -> bool {
    correlated_violation(device, game).is_none()
}

/// First player with a constant strategy beating obedience in expectation.
pub fn ex_ante_violation<G: FiniteGame + ?Sized>(device: &CorrelationDevice, game: &G) -> Option<ObedienceWitness> {
    let base = expected_payoffs(device, game);
    for (i, obey) in base.into_iter().enumerate() {
        for t in 0..game.num_strategies(i) {
            let dev = deviation_value(device, game, i, t);
            if dev > obey {
                return Some(ObedienceWitness {
                    player: i,
                    recommended: None,
                    deviation: t,
                    obey,
                    deviate: dev,
                });
            }
        }
    }
    None
}

pub fn is_ex_ante_self_enforcing<G: FiniteGame + ?Sized>(device: &CorrelationDevice, game: &G) -> bool {
    ex_ante_violation(device, game).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::TableGame;
    use crate::rational::{int, q};

    fn chicken() -> TableGame {
        let mut g = TableGame::new(vec![vec!["S".into(), "C".into()], vec!["S".into(), "C".into()]]).unwrap();
        for (p, v) in [([0, 0], [5, 5]), ([0, 1], [2, 7]), ([1, 0], [7, 2]), ([1, 1], [0, 0])] {
            g.set(&p, v.iter().map(|&x| int(x)).collect()).unwrap();
        }
        g
    }

    #[test]
    fn traffic_light() {
        let g = chicken();
        let d = CorrelationDevice::new(&g, vec![(vec![0, 1], q(1, 2)), (vec![1, 0], q(1, 2))]).unwrap();
        assert_eq!(expected_payoffs(&d, &g), vec![q(9, 2), q(9, 2)]);
        assert!(is_correlated_equilibrium(&d, &g));
        assert!(is_ex_ante_self_enforcing(&d, &g));
    }

    #[test]
    fn invalid_devices() {
        let g = chicken();
        assert!(CorrelationDevice::new(&g, vec![(vec![0, 1], q(1, 2))]).is_err());
        assert!(CorrelationDevice::new(&g, vec![(vec![0, 2], int(1))]).is_err());
        assert!(CorrelationDevice::new(&g, vec![(vec![0, 1], int(2)), (vec![1, 0], int(-1))]).is_err());
        assert!(CorrelationDevice::new(&g, vec![(vec![0, 1], q(1, 2)), (vec![0, 1], q(1, 2))]).is_err());
    }

    #[test]
    fn always_red_fails() {
        let g = chicken();
        let d = CorrelationDevice::point_mass(&g, vec![0, 0]).unwrap();
        let w = correlated_violation(&d, &g).unwrap();
        assert_eq!((w.player, w.deviation, w.deviate), (0, 1, int(7)));
        assert!(!is_ex_ante_self_enforcing(&d, &g));
    }
}
