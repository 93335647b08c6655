//! JSON file formats: network models, strategic-form games and correlation devices.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::consent::SignalProfile;
use crate::correlated::CorrelationDevice;
use crate::error::{Error, Result};
use crate::game::{FiniteGame, TableGame};
use crate::network::{Limits, PlayerSet};
use crate::payoff::{CostStructure, NetworkPayoff};
use crate::rational::Rational;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    n: usize,
    #[serde(default)]
    payoffs: BTreeMap<String, Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    costs_two_sided: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    costs_one_sided: Option<Vec<Vec<Rational>>>,
}

/// A network payoff function with optional link-formation costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub phi: NetworkPayoff,
    pub costs_two_sided: Option<CostStructure>,
    pub costs_one_sided: Option<CostStructure>,
}

fn costs(rows: Option<Vec<Vec<Rational>>>, n: usize, name: &str) -> Result<Option<CostStructure>> {
    let Some(rows) = rows else { return Ok(None) };
    let c = CostStructure::from_matrix(rows).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
    c.check_players(n).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
    if !c.all_nonnegative() {
        return Err(Error::Parse(format!("{name}: costs must be non-negative")));
    }
    Ok(Some(c))
}

impl Model {
    pub fn new(phi: NetworkPayoff) -> Self {
        Model {
            phi,
            costs_two_sided: None,
            costs_one_sided: None,
        }
    }

    pub fn players(&self) -> &PlayerSet {
        self.phi.players()
    }

    pub fn from_json(text: &str, limits: Limits) -> Result<Self> {
        let raw: ModelJson = serde_json::from_str(text)?;
        let ps = PlayerSet::with_limits(raw.n, limits)?;
        let mut phi = NetworkPayoff::zero(&ps);
        let mut seen = std::collections::BTreeSet::new();
        for (key, v) in raw.payoffs {
            let g = ps.parse_network(&key)?;
            if !seen.insert(g) {
                return Err(Error::Parse(format!("network `{key}` is listed twice")));
            }
            phi.set_vector(g, v)
                .map_err(|e| Error::Parse(format!("network `{key}`: {e}")))?;
        }
        Ok(Model {
            costs_two_sided: costs(raw.costs_two_sided, raw.n, "costs_two_sided")?,
            costs_one_sided: costs(raw.costs_one_sided, raw.n, "costs_one_sided")?,
            phi,
        })
    }

    /// Canonical JSON: only networks with a non-zero payoff vector are listed.
    pub fn to_json(&self) -> String {
        let ps = self.players();
        let raw = ModelJson {
            n: ps.n(),
            payoffs: self
                .phi
                .support()
                .into_iter()
                .map(|g| (ps.key(g), self.phi.vector(g).to_vec()))
                .collect(),
            costs_two_sided: self.costs_two_sided.as_ref().map(CostStructure::to_matrix),
            costs_one_sided: self.costs_one_sided.as_ref().map(CostStructure::to_matrix),
        };
        serde_json::to_string_pretty(&raw).expect("model serialises")
    }

    pub fn load(path: impl AsRef<Path>, limits: Limits) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?, limits)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameJson {
    players: usize,
    strategies: Vec<Vec<String>>,
    #[serde(default)]
    payoffs: BTreeMap<String, Vec<Rational>>,
}

/// Reads `{"players": n, "strategies": [[labels]..], "payoffs": {"S,C": [..]}}`; unlisted profiles pay zero.
pub fn game_from_json(text: &str) -> Result<TableGame> {
    let raw: GameJson = serde_json::from_str(text)?;
    if raw.players != raw.strategies.len() {
        return Err(Error::Parse(format!(
            "{} players but {} strategy lists",
            raw.players,
            raw.strategies.len()
        )));
    }
    let mut g = TableGame::new(raw.strategies)?;
    for (key, v) in raw.payoffs {
        let p = g.parse_profile(&key)?;
        g.set(&p, v)?;
    }
    Ok(g)
}

pub fn game_to_json(game: &TableGame) -> String {
    let raw = GameJson {
        players: game.num_players(),
        strategies: game.labels().to_vec(),
        payoffs: game.entries().into_iter().collect(),
    };
    serde_json::to_string_pretty(&raw).expect("game serialises")
}

pub fn load_game(path: impl AsRef<Path>) -> Result<TableGame> {
    game_from_json(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceEntry {
    profile: Value,
    prob: Rational,
}

/// How device profiles are written: strategy labels for table games, signal matrices for network models.
pub trait ProfileCodec {
    fn decode(&self, v: &Value) -> Result<Vec<usize>>;
    fn encode(&self, profile: &[usize]) -> Value;
}

impl ProfileCodec for TableGame {
    fn decode(&self, v: &Value) -> Result<Vec<usize>> {
        match v {
            Value::String(s) => self.parse_profile(s),
            _ => Err(Error::Parse(format!("expected a profile string such as \"S,C\", got {v}"))),
        }
    }

    fn encode(&self, profile: &[usize]) -> Value {
        Value::String(self.profile_key(profile))
    }
}

/// Signal profiles of the Myerson game on `n` players, as 0/1 matrices.
pub struct SignalCodec(pub usize);

impl ProfileCodec for SignalCodec {
    fn decode(&self, v: &Value) -> Result<Vec<usize>> {
        let p: SignalProfile = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("signal profile {v}: {e}")))?;
        if p.n() != self.0 {
            return Err(Error::Parse(format!("signal profile has {} rows for {} players", p.n(), self.0)));
        }
        Ok(p.to_strategies())
    }

    fn encode(&self, profile: &[usize]) -> Value {
        serde_json::to_value(SignalProfile::from_strategies(profile)).expect("profile serialises")
    }
}

/// Reads `[{"profile": .., "prob": "p/q"}, ..]` and validates it against `game`.
pub fn device_from_json<G: FiniteGame + ?Sized>(text: &str, codec: &dyn ProfileCodec, game: &G) -> Result<CorrelationDevice> {
    let entries: Vec<DeviceEntry> =
        serde_json::from_str(text).map_err(|e| Error::InvalidDevice(e.to_string()))?;
    let support = entries
        .iter()
        .map(|e| Ok((codec.decode(&e.profile).map_err(|e| Error::InvalidDevice(e.to_string()))?, e.prob.clone())))
        .collect::<Result<Vec<_>>>()?;
    CorrelationDevice::new(game, support)
}

pub fn device_to_json(device: &CorrelationDevice, codec: &dyn ProfileCodec) -> String {
    let entries: Vec<DeviceEntry> = device
        .support()
        .iter()
        .map(|(p, w)| DeviceEntry {
            profile: codec.encode(p),
            prob: w.clone(),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("device serialises")
}
