//! Named theorem checks over a model, and random batches of them.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::consent;
use crate::error::{Error, Result};
use crate::model::Model;
use crate::network::PlayerSet;
use crate::payoff::CostStructure;
use crate::potentials;
use crate::random;
use crate::rational::Rational;
use crate::report::TheoremReport;
use crate::stability;
use crate::trust;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    DeletionEquivalence,
    AdditionEquivalence,
    PairwiseCorollaries,
    MNetworks,
    TwoSided,
    OneSidedInclusion,
    SunkCostInclusion,
    MonadicEquivalence,
    PotentialsExistence,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::DeletionEquivalence,
        TheoremId::AdditionEquivalence,
        TheoremId::PairwiseCorollaries,
        TheoremId::MNetworks,
        TheoremId::TwoSided,
        TheoremId::OneSidedInclusion,
        TheoremId::SunkCostInclusion,
        TheoremId::MonadicEquivalence,
        TheoremId::PotentialsExistence,
    ];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::DeletionEquivalence => "deletion-equivalence",
            TheoremId::AdditionEquivalence => "addition-equivalence",
            TheoremId::PairwiseCorollaries => "pairwise-corollaries",
            TheoremId::MNetworks => "m-networks",
            TheoremId::TwoSided => "two-sided",
            TheoremId::OneSidedInclusion => "one-sided-inclusion",
            TheoremId::SunkCostInclusion => "sunk-cost-inclusion",
            TheoremId::MonadicEquivalence => "monadic-equivalence",
            TheoremId::PotentialsExistence => "potentials-existence",
        })
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.to_string() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

fn need<'a>(c: &'a Option<CostStructure>, field: &str, id: TheoremId) -> Result<&'a CostStructure> {
    c.as_ref()
        .ok_or_else(|| Error::Precondition(format!("{id} needs `{field}` in the model")))
}

/// Runs one theorem check. Missing cost blocks are precondition errors.
pub fn run(id: TheoremId, model: &Model) -> Result<TheoremReport> {
    let phi = &model.phi;
    match id {
        TheoremId::DeletionEquivalence => Ok(stability::verify_deletion_equivalence(phi)),
        TheoremId::AdditionEquivalence => Ok(stability::verify_addition_equivalences(phi)),
        TheoremId::PairwiseCorollaries => {
            let mut rep = stability::verify_pairwise_corollaries(phi);
            rep.absorb(trust::verify_unilateral(phi));
            Ok(rep)
        }
        TheoremId::MNetworks => consent::verify_m_networks(phi),
        TheoremId::TwoSided => consent::verify_two_sided(phi, need(&model.costs_two_sided, "costs_two_sided", id)?),
        TheoremId::OneSidedInclusion => {
            consent::check_thm5(phi, need(&model.costs_one_sided, "costs_one_sided", id)?)
        }
        TheoremId::SunkCostInclusion => {
            consent::check_thm6(phi, need(&model.costs_two_sided, "costs_two_sided", id)?)
        }
        TheoremId::MonadicEquivalence => {
            trust::verify_monadic_equivalence(phi, need(&model.costs_two_sided, "costs_two_sided", id)?)
        }
        TheoremId::PotentialsExistence => potentials::existence_report(phi, model.costs_two_sided.as_ref()),
    }
}

/// A random model suited to `id`: a rational payoff table, plus positive
/// two-sided costs (all ones for the monadic check) and non-negative one-sided costs.
pub fn random_model(id: TheoremId, ps: &PlayerSet, rng: &mut impl Rng) -> Model {
    let n = ps.n();
    let phi = random::payoff_table(ps, rng, 6, 3);
    let mut model = Model::new(phi);
    model.costs_two_sided = Some(match id {
        TheoremId::MonadicEquivalence => CostStructure::uniform(n, Rational::one()),
        _ => random::positive_costs(n, rng, 3, 2),
    });
    model.costs_one_sided = Some(random::nonnegative_costs(n, rng, 3, 2));
    model
}

/// Outcome of a random batch: how many instances failed, and the first failure.
#[derive(Debug, Clone, Serialize)]
pub struct BatchOutcome {
    pub theorem: TheoremId,
    pub instances: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<BatchFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchFailure {
    pub instance: usize,
    pub model: serde_json::Value,
    pub report: TheoremReport,
}

impl BatchOutcome {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `id` on `k` random models on `ps`, seeded by `seed`.
pub fn run_random(id: TheoremId, ps: &PlayerSet, k: usize, seed: u64) -> Result<BatchOutcome> {
    let mut rng = random::rng(seed);
    let mut out = BatchOutcome {
        theorem: id,
        instances: k,
        failures: 0,
        first_failure: None,
    };
    for instance in 0..k {
        let model = random_model(id, ps, &mut rng);
        let rep = run(id, &model)?;
        if !rep.holds() {
            out.failures += 1;
            if out.first_failure.is_none() {
                out.first_failure = Some(BatchFailure {
                    instance,
                    model: serde_json::from_str(&model.to_json())?,
                    report: rep,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.to_string().parse::<TheoremId>().unwrap(), t);
        }
        assert!("theorem-9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn missing_costs_are_reported() {
        let ps = PlayerSet::new(3).unwrap();
        let model = Model::new(crate::payoff::NetworkPayoff::zero(&ps));
        assert!(matches!(run(TheoremId::TwoSided, &model), Err(Error::Precondition(_))));
        assert!(run(TheoremId::DeletionEquivalence, &model).unwrap().holds());
    }
}
