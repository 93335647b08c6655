//! Per-network classification across every stability concept.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::Model;
use crate::network::Network;
use crate::payoff::CostStructure;
use crate::rational::Rational;
use crate::stability::{self, StrongStabilityMode};
use crate::trust::{self, MonadicSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Ldp,
    Sldp,
    Lap,
    StarLap,
    Slap,
    Ps,
    Sps,
    SpsStrict,
    MNetwork,
    Bilateral,
    Strong,
    StrongDm,
    Order(usize),
    Unilateral,
    WeakMonadic,
    Monadic,
}

impl Concept {
    /// Everything except the order-`r` family, which is parameterised.
    pub const ALL: [Concept; 15] = [
        Concept::Ldp,
        Concept::Sldp,
        Concept::Lap,
        Concept::StarLap,
        Concept::Slap,
        Concept::Ps,
        Concept::Sps,
        Concept::SpsStrict,
        Concept::MNetwork,
        Concept::Bilateral,
        Concept::Strong,
        Concept::StrongDm,
        Concept::Unilateral,
        Concept::WeakMonadic,
        Concept::Monadic,
    ];

    /// Concepts that require the two-sided cost structure.
    pub fn uses_costs(self) -> bool {
        matches!(self, Concept::WeakMonadic | Concept::Monadic)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Concept::Ldp => "ldp",
            Concept::Sldp => "sldp",
            Concept::Lap => "lap",
            Concept::StarLap => "star-lap",
            Concept::Slap => "slap",
            Concept::Ps => "ps",
            Concept::Sps => "sps",
            Concept::SpsStrict => "sps-strict",
            Concept::MNetwork => "m-network",
            Concept::Bilateral => "bilateral",
            Concept::Strong => "strong",
            Concept::StrongDm => "strong-dm",
            Concept::Order(r) => return write!(f, "order-{r}"),
            Concept::Unilateral => "unilateral",
            Concept::WeakMonadic => "weak-monadic",
            Concept::Monadic => "monadic",
        };
        f.write_str(s)
    }
}

impl FromStr for Concept {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(r) = s.strip_prefix("order-") {
            let r: usize = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad coalition size in `{s}`")))?;
            if r == 0 {
                return Err(Error::Parse("order must be at least 1".into()));
            }
            return Ok(Concept::Order(r));
        }
        Concept::ALL
            .iter()
            .copied()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown concept `{s}`")))
    }
}

/// One network and its verdicts, in the requested concept order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityRow {
    pub network: Network,
    pub key: String,
    pub payoffs: Vec<Rational>,
    pub flags: Vec<(Concept, bool)>,
}

impl StabilityRow {
    pub fn flag(&self, c: Concept) -> Option<bool> {
        self.flags.iter().find(|(k, _)| *k == c).map(|&(_, v)| v)
    }

    /// Names of the concepts that hold, space separated, or `none`.
    pub fn summary(&self) -> String {
        let on: Vec<String> = self
            .flags
            .iter()
            .filter(|(_, v)| *v)
            .map(|(c, _)| c.to_string())
            .collect();
        if on.is_empty() {
            "none".into()
        } else {
            on.join(" ")
        }
    }
}

struct Flags<'a>(&'a [(Concept, bool)]);

impl Serialize for Flags<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (c, v) in self.0 {
            m.serialize_entry(&c.to_string(), v)?;
        }
        m.end()
    }
}

impl Serialize for StabilityRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("network", &self.key)?;
        m.serialize_entry("payoffs", &self.payoffs)?;
        m.serialize_entry("flags", &Flags(&self.flags))?;
        m.end()
    }
}

fn evaluate(model: &Model, costs: &CostStructure, g: Network, c: Concept) -> Result<bool> {
    let phi = &model.phi;
    Ok(match c {
        Concept::Ldp => stability::is_ldp(phi, g),
        Concept::Sldp | Concept::MNetwork => stability::is_sldp(phi, g),
        Concept::Lap => stability::is_lap(phi, g),
        Concept::StarLap => stability::is_star_lap(phi, g),
        Concept::Slap => stability::is_slap(phi, g),
        Concept::Ps => stability::is_pairwise_stable(phi, g),
        Concept::Sps => stability::is_strongly_pairwise_stable(phi, g),
        Concept::SpsStrict => stability::is_strictly_pairwise_stable(phi, g),
        Concept::Bilateral => stability::is_bilaterally_stable(phi, g),
        Concept::Strong => stability::is_strongly_stable(phi, g, StrongStabilityMode::Jvdn),
        Concept::StrongDm => stability::is_strongly_stable(phi, g, StrongStabilityMode::Dm),
        Concept::Order(r) => stability::is_stable_of_order(phi, g, r),
        Concept::Unilateral => trust::is_unilaterally_stable(phi, g),
        Concept::WeakMonadic => trust::is_weak_monadic(phi, costs, g)?,
        Concept::Monadic => trust::is_monadic(phi, costs, g, MonadicSearch::Auto)?,
    })
}

/// `(stronger, weaker)` pairs that must hold on every row where both are present.
const IMPLICATIONS: [(Concept, Concept); 13] = [
    (Concept::Sldp, Concept::Ldp),
    (Concept::Slap, Concept::StarLap),
    (Concept::StarLap, Concept::Lap),
    (Concept::SpsStrict, Concept::Sps),
    (Concept::Sps, Concept::Ps),
    (Concept::Sps, Concept::Sldp),
    (Concept::Ps, Concept::Lap),
    (Concept::Strong, Concept::Sps),
    (Concept::Unilateral, Concept::Sps),
    (Concept::Monadic, Concept::WeakMonadic),
    (Concept::MNetwork, Concept::Sldp),
    (Concept::Sldp, Concept::MNetwork),
    (Concept::Bilateral, Concept::Sldp),
];

fn check_row(row: &StabilityRow) -> Result<()> {
    let mut pairs: Vec<(Concept, Concept)> = IMPLICATIONS.to_vec();
    for &(c, _) in &row.flags {
        if let Concept::Order(r) = c {
            if r > 1 {
                pairs.push((Concept::Order(r), Concept::Order(r - 1)));
            }
            if r == 1 {
                pairs.push((Concept::Order(1), Concept::Sldp));
                pairs.push((Concept::Sldp, Concept::Order(1)));
            }
            if r == 2 {
                pairs.push((Concept::Order(2), Concept::Bilateral));
                pairs.push((Concept::Bilateral, Concept::Order(2)));
            }
        }
    }
    for (strong, weak) in pairs {
        if let (Some(true), Some(false)) = (row.flag(strong), row.flag(weak)) {
            return Err(Error::Inconsistent(format!(
                "network {} is {strong} but not {weak}",
                row.key
            )));
        }
    }
    Ok(())
}

/// Classifies every network in ascending bitmask order. Monadic concepts use
/// the two-sided costs, or zero costs when the model has none.
pub fn classify(model: &Model, concepts: &[Concept]) -> Result<Vec<StabilityRow>> {
    let ps = model.players();
    let zero = CostStructure::zero(ps.n());
    let costs = model.costs_two_sided.as_ref().unwrap_or(&zero);
    // checks run against these as well, then only the requested ones are shown
    let mut all = concepts.to_vec();
    for c in [Concept::Ldp, Concept::Sldp, Concept::Lap, Concept::StarLap, Concept::Slap] {
        if !all.contains(&c) {
            all.push(c);
        }
    }
    let networks: Vec<Network> = ps.networks().collect();
    networks
        .par_iter()
        .map(|&g| {
            let flags = all
                .iter()
                .map(|&c| Ok((c, evaluate(model, costs, g, c)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut row = StabilityRow {
                network: g,
                key: ps.key(g),
                payoffs: model.phi.vector(g).to_vec(),
                flags,
            };
            check_row(&row)?;
            row.flags.truncate(concepts.len());
            Ok(row)
        })
        .collect()
}

/// Networks flagged with `c`.
pub fn members(rows: &[StabilityRow], c: Concept) -> Vec<Network> {
    rows.iter()
        .filter(|r| r.flag(c) == Some(true))
        .map(|r| r.network)
        .collect()
}

/// Aligned text table: network, payoff vector, then one column per concept.
pub fn format_table(rows: &[StabilityRow]) -> String {
    let Some(first) = rows.first() else { return String::new() };
    let mut header = vec!["network".to_string(), "payoffs".to_string()];
    header.extend(first.flags.iter().map(|(c, _)| c.to_string()));
    let mut cells: Vec<Vec<String>> = vec![header];
    for r in rows {
        let pay: Vec<String> = r.payoffs.iter().map(|v| v.to_string()).collect();
        let mut line = vec![format!("{{{}}}", r.key), format!("({})", pay.join(", "))];
        line.extend(r.flags.iter().map(|(_, v)| if *v { "yes" } else { "-" }.to_string()));
        cells.push(line);
    }
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|k| cells.iter().map(|l| l[k].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in cells {
        let padded: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::PlayerSet;
    use crate::payoff::NetworkPayoff;

    #[test]
    fn concept_names_round_trip() {
        for c in Concept::ALL {
            assert_eq!(c.to_string().parse::<Concept>().unwrap(), c);
        }
        assert_eq!("order-3".parse::<Concept>().unwrap(), Concept::Order(3));
        assert!("order-0".parse::<Concept>().is_err());
        assert!("nash".parse::<Concept>().is_err());
    }

    #[test]
    fn zero_model_rows() {
        let ps = PlayerSet::new(3).unwrap();
        let model = Model::new(NetworkPayoff::zero(&ps));
        let rows = classify(&model, &[Concept::Sldp, Concept::Slap]).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.flag(Concept::Sldp) == Some(true)));
        assert_eq!(members(&rows, Concept::Slap), vec![ps.complete()]);
        assert_eq!(rows[0].flags.len(), 2);
        let table = format_table(&rows);
        assert!(table.starts_with("network"));
        assert_eq!(table.lines().count(), 9);
    }
}
