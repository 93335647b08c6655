//! Players, links and networks.
//!
//! A network is a bitmask over the links of the complete graph, indexed in
//! lexicographic order of `(i, j)` with `i < j`. Players are 0-based
//! internally and printed 1-based, so the key `"12,13"` is the network with
//! links between players 1 and 2 and between 1 and 3.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest player count the bitmask representation supports.
pub const HARD_MAX_PLAYERS: usize = 8;

/// Enumeration caps. Exceeding one is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` for which all `2^(n(n-1)/2)` networks are enumerated.
    pub max_network_players: usize,
    /// Largest `n` for which full strategy-profile enumeration is allowed.
    pub max_profile_players: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_network_players: 6,
            max_profile_players: 4,
        }
    }
}

/// An unordered pair of distinct players, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Link {
    pub i: usize,
    pub j: usize,
}

impl Link {
    pub fn new(a: usize, b: usize) -> Result<Link> {
        if a == b {
            return Err(Error::SelfLink(a + 1));
        }
        Ok(Link {
            i: a.min(b),
            j: a.max(b),
        })
    }

    /// The endpoint that is not `k`.
    pub fn other(&self, k: usize) -> usize {
        if k == self.i {
            self.j
        } else {
            self.i
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i + 1, self.j + 1)
    }
}

/// A set of links, as a bitmask over link indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Network(pub u32);

impl Network {
    pub const EMPTY: Network = Network(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn has(self, link_index: usize) -> bool {
        self.0 >> link_index & 1 == 1
    }

    pub fn contains(self, other: Network) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn is_disjoint(self, other: Network) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Network) -> Network {
        Network(self.0 | other.0)
    }

    pub fn intersection(self, other: Network) -> Network {
        Network(self.0 & other.0)
    }

    pub fn minus(self, other: Network) -> Network {
        Network(self.0 & !other.0)
    }

    /// `g + h`, rejecting links already present.
    pub fn add_links(self, h: Network) -> Result<Network> {
        if !self.is_disjoint(h) {
            return Err(Error::LinkPresent(format!("{:#b}", self.0 & h.0)));
        }
        Ok(self.union(h))
    }

    /// `g - h`, rejecting links that are absent.
    pub fn remove_links(self, h: Network) -> Result<Network> {
        if !self.contains(h) {
            return Err(Error::LinkAbsent(format!("{:#b}", h.0 & !self.0)));
        }
        Ok(self.minus(h))
    }

    /// Indices of the links present, ascending.
    pub fn link_indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(k)
        })
    }

    /// Every subset of `self`, the empty set and `self` included.
    pub fn subsets(self) -> impl Iterator<Item = Network> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Network(cur))
        })
    }

    /// Every non-empty subset of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = Network> {
        self.subsets().filter(|h| !h.is_empty())
    }
}

/// The player set `N = {1, ..., n}` together with link-index tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerSet {
    n: usize,
    limits: Limits,
    pairs: Vec<(usize, usize)>,
    incident: Vec<Network>,
}

impl PlayerSet {
    /// A player set with the default enumeration limits.
    pub fn new(n: usize) -> Result<PlayerSet> {
        Self::with_limits(n, Limits::default())
    }

    pub fn with_limits(n: usize, limits: Limits) -> Result<PlayerSet> {
        if n < 2 {
            return Err(Error::Precondition(format!(
                "at least two players are required, got {n}"
            )));
        }
        let hard = HARD_MAX_PLAYERS as u64;
        let allowed = (limits.max_network_players as u64).min(hard);
        if n as u64 > allowed {
            return Err(Error::Capacity {
                what: format!("enumerating networks on {n} players"),
                required: n as u64,
                limit: allowed,
            });
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        let mut incident = vec![Network::EMPTY; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            incident[i].0 |= 1 << k;
            incident[j].0 |= 1 << k;
        }
        Ok(PlayerSet {
            n,
            limits,
            pairs,
            incident,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn players(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn num_links(&self) -> usize {
        self.pairs.len()
    }

    pub fn num_networks(&self) -> usize {
        1 << self.pairs.len()
    }

    pub fn check_player(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::InvalidPlayer {
                player: i + 1,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Lexicographic index of the link between `a` and `b`.
    pub fn link_index(&self, a: usize, b: usize) -> Result<usize> {
        self.check_player(a)?;
        self.check_player(b)?;
        let l = Link::new(a, b)?;
        Ok(self.index_of(l.i, l.j))
    }

    /// Unchecked version of [`link_index`](Self::link_index) for `i < j < n`.
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// The single-link network `{ab}`. Panics on invalid players.
    pub fn link(&self, a: usize, b: usize) -> Network {
        let (i, j) = (a.min(b), a.max(b));
        assert!(i != j && j < self.n, "invalid link {a}-{b}");
        Network(1 << self.index_of(i, j))
    }

    pub fn pair(&self, k: usize) -> Link {
        let (i, j) = self.pairs[k];
        Link { i, j }
    }

    pub fn empty(&self) -> Network {
        Network::EMPTY
    }

    pub fn complete(&self) -> Network {
        Network(((1u64 << self.pairs.len()) - 1) as u32)
    }

    /// Networks in ascending bitmask order.
    pub fn networks(&self) -> impl Iterator<Item = Network> {
        (0..self.num_networks() as u32).map(Network)
    }

    /// `L_i(g)`: the links of `g` involving `i`.
    pub fn links_of(&self, g: Network, i: usize) -> Network {
        g.intersection(self.incident[i])
    }

    /// All links of the complete network involving `i`.
    pub fn incident(&self, i: usize) -> Network {
        self.incident[i]
    }

    /// `N_i(g)`, ascending.
    pub fn neighbours(&self, g: Network, i: usize) -> Vec<usize> {
        self.links_of(g, i)
            .link_indices()
            .map(|k| self.pair(k).other(i))
            .collect()
    }

    /// `g^S`: the complete network on the coalition given as a player mask.
    pub fn complete_on(&self, coalition: u32) -> Network {
        let mut g = Network::EMPTY;
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if coalition >> i & 1 == 1 && coalition >> j & 1 == 1 {
                g.0 |= 1 << k;
            }
        }
        g
    }

    /// Union of `L_i(g)` over the players of a coalition mask.
    pub fn links_of_coalition(&self, g: Network, coalition: u32) -> Network {
        let mut h = Network::EMPTY;
        for i in self.players() {
            if coalition >> i & 1 == 1 {
                h = h.union(self.links_of(g, i));
            }
        }
        h
    }

    pub fn links(&self, g: Network) -> Vec<Link> {
        g.link_indices().map(|k| self.pair(k)).collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self, g: Network) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in self.players() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbours(g, v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The canonical key: sorted links joined by commas, `""` for the empty network.
    pub fn key(&self, g: Network) -> String {
        self.links(g)
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable name: the key in braces, with `g0` and `gN` for the extremes.
    pub fn display(&self, g: Network) -> String {
        if g.is_empty() {
            "g0".to_string()
        } else if g == self.complete() {
            "gN".to_string()
        } else {
            format!("{{{}}}", self.key(g))
        }
    }

    /// Parses a key such as `"12,13"`. Links may appear in any order; duplicates are rejected.
    pub fn parse_network(&self, key: &str) -> Result<Network> {
        let mut g = Network::EMPTY;
        for part in key.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let digits: Vec<u32> = part.chars().filter_map(|c| c.to_digit(10)).collect();
            if digits.len() != 2 || part.chars().count() != 2 {
                return Err(Error::Parse(format!(
                    "link `{part}` must be two player digits"
                )));
            }
            let (a, b) = (digits[0] as usize, digits[1] as usize);
            if a == 0 || b == 0 {
                return Err(Error::Parse(format!("players are numbered from 1 in `{part}`")));
            }
            let k = self.link_index(a - 1, b - 1)?;
            if g.has(k) {
                return Err(Error::Parse(format!("duplicate link `{part}` in `{key}`")));
            }
            g.0 |= 1 << k;
        }
        Ok(g)
    }

    /// Fails with a capacity error when full profile enumeration is too large.
    pub fn check_profile_capacity(&self, what: &str) -> Result<()> {
        if self.n > self.limits.max_profile_players {
            return Err(Error::Capacity {
                what: format!("{what} on {} players", self.n),
                required: self.n as u64,
                limit: self.limits.max_profile_players as u64,
            });
        }
        Ok(())
    }
}
