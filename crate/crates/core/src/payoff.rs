//! Network payoff functions and link-formation costs.

use crate::error::{Error, Result};
use crate::network::{Network, PlayerSet};
use crate::rational::Rational;

/// A network payoff function `phi`, stored densely: one vector per network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkPayoff {
    players: PlayerSet,
    values: Vec<Rational>,
}

impl NetworkPayoff {
    /// The payoff function that is zero everywhere.
    pub fn zero(players: &PlayerSet) -> Self {
        NetworkPayoff {
            values: vec![Rational::zero(); players.num_networks() * players.n()],
            players: players.clone(),
        }
    }

    pub fn from_fn(players: &PlayerSet, mut f: impl FnMut(Network, usize) -> Rational) -> Self {
        let n = players.n();
        let mut values = Vec::with_capacity(players.num_networks() * n);
        for g in players.networks() {
            for i in 0..n {
                values.push(f(g, i));
            }
        }
        NetworkPayoff {
            players: players.clone(),
            values,
        }
    }

    /// Builds a payoff from explicit entries; unlisted networks pay zero.
    pub fn from_entries<I>(players: &PlayerSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Network, Vec<Rational>)>,
    {
        let mut phi = Self::zero(players);
        for (g, v) in entries {
            phi.set_vector(g, v)?;
        }
        Ok(phi)
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.n()
    }

    pub fn get(&self, g: Network, i: usize) -> &Rational {
        &self.values[g.index() * self.players.n() + i]
    }

    pub fn vector(&self, g: Network) -> &[Rational] {
        let n = self.players.n();
        &self.values[g.index() * n..(g.index() + 1) * n]
    }

    pub fn set(&mut self, g: Network, i: usize, v: Rational) {
        let n = self.players.n();
        self.values[g.index() * n + i] = v;
    }

    pub fn set_vector(&mut self, g: Network, v: Vec<Rational>) -> Result<()> {
        let n = self.players.n();
        if v.len() != n {
            return Err(Error::Parse(format!(
                "payoff vector for {} has {} entries, expected {n}",
                self.players.display(g),
                v.len()
            )));
        }
        if g.index() >= self.players.num_networks() {
            return Err(Error::Parse(format!("network {:#b} out of range", g.0)));
        }
        for (i, x) in v.into_iter().enumerate() {
            self.values[g.index() * n + i] = x;
        }
        Ok(())
    }

    /// Networks with a non-zero payoff vector, ascending.
    pub fn support(&self) -> Vec<Network> {
        self.players
            .networks()
            .filter(|&g| self.vector(g).iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// `phi_i(g) - phi_i(g')`.
    pub fn gain(&self, i: usize, to: Network, from: Network) -> Rational {
        self.get(to, i) - self.get(from, i)
    }

    /// Two-sided net payoff `phi^a_i(g) = phi_i(g) - sum over neighbours j of c_ij`.
    pub fn net_of_two_sided(&self, c: &CostStructure) -> Result<NetworkPayoff> {
        c.check_players(self.n())?;
        let ps = &self.players;
        Ok(NetworkPayoff::from_fn(ps, |g, i| {
            let mut v = self.get(g, i).clone();
            for j in ps.neighbours(g, i) {
                v -= c.get(i, j);
            }
            v
        }))
    }

    /// One-sided net payoff `phi^b_i(g) = phi_i(g) - sum over financed links of gamma_ij`,
    /// the financer of each link being the cheaper endpoint with ties to the lower index.
    pub fn net_of_one_sided(&self, gamma: &CostStructure) -> Result<NetworkPayoff> {
        gamma.check_players(self.n())?;
        let ps = &self.players;
        Ok(NetworkPayoff::from_fn(ps, |g, i| {
            let mut v = self.get(g, i).clone();
            for j in ps.neighbours(g, i) {
                if gamma.finances(i, j) {
                    v -= gamma.get(i, j);
                }
            }
            v
        }))
    }
}

/// Link costs `c_ij`, one per ordered pair; `c_ij` is what `i` pays toward `ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostStructure {
    n: usize,
    values: Vec<Rational>,
}

impl CostStructure {
    pub fn zero(n: usize) -> Self {
        Self::uniform(n, Rational::zero())
    }

    pub fn uniform(n: usize, v: Rational) -> Self {
        CostStructure::from_fn(n, |_, _| v.clone())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut values = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    values[i * n + j] = f(i, j);
                }
            }
        }
        CostStructure { n, values }
    }

    /// From an `n x n` matrix; the diagonal is ignored.
    pub fn from_matrix(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("cost matrix must be {n} x {n}")));
        }
        Ok(CostStructure::from_fn(n, |i, j| rows[i][j].clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.values[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.values[i * self.n + j] = v;
    }

    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn all_positive(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_positive()))
    }

    pub fn all_nonnegative(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !self.get(i, j).is_negative()))
    }

    /// Whether `i` is the financer of `ij` under the cheaper-endpoint rule:
    /// `gamma_ij < gamma_ji`, or equal costs and `i < j`.
    pub fn finances(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.get(i, j), self.get(j, i));
        a < b || (a == b && i < j)
    }

    pub fn check_players(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::Precondition(format!(
                "cost structure is for {} players, payoff for {n}",
                self.n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn net_payoffs_subtract_the_right_costs() {
        let ps = PlayerSet::new(3).unwrap();
        let phi = NetworkPayoff::from_fn(&ps, |g, _| int(10 * g.len() as i64));
        let c = CostStructure::from_fn(3, |i, j| int((i * 3 + j) as i64));
        let a = phi.net_of_two_sided(&c).unwrap();
        let g = ps.parse_network("12,13").unwrap();
        assert_eq!(*a.get(g, 0), int(20 - 1 - 2));
        assert_eq!(*a.get(g, 1), int(20 - 3));
        // gamma_12 = 1 < gamma_21 = 3, so player 1 finances 12; gamma_13 = 2 < 6.
        let b = phi.net_of_one_sided(&c).unwrap();
        assert_eq!(*b.get(g, 0), int(20 - 1 - 2));
        assert_eq!(*b.get(g, 1), int(20));
        assert_eq!(*b.get(g, 2), int(20));
    }

    #[test]
    fn ties_go_to_the_lower_index() {
        let c = CostStructure::uniform(3, int(1));
        assert!(c.finances(0, 2));
        assert!(!c.finances(2, 0));
    }

    #[test]
    fn vector_length_is_checked() {
        let ps = PlayerSet::new(3).unwrap();
        let mut phi = NetworkPayoff::zero(&ps);
        assert!(phi.set_vector(Network(1), vec![int(1)]).is_err());
        assert!(phi.support().is_empty());
    }
}
