//! Two-player supermodular games on finite-lattice strategy spaces:
//! supermodularity / increasing-differences verification, extremal
//! best-response iteration, and brute-force equilibrium-set structure
//! checks. Payoffs are exact rationals so argmax tie-sets are
//! well-defined.

use num_rational::Rational64;

use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    One,
    Two,
}

#[derive(Debug, Clone)]
pub struct SupermodularGame {
    s1: Lattice,
    s2: Lattice,
    /// Row = player-1 strategy index, column = player-2 strategy index.
    u1: Vec<Rational64>,
    u2: Vec<Rational64>,
}

/// First violated inequality, in index order.
#[derive(Debug, Clone)]
pub enum Violation {
    OwnSupermodularity {
        player: Player,
        own_a: usize,
        own_b: usize,
        opponent: usize,
    },
    IncreasingDifferences {
        player: Player,
        own_lo: usize,
        own_hi: usize,
        opp_lo: usize,
        opp_hi: usize,
    },
}

#[derive(Debug, Clone)]
pub struct SupermodularReport {
    pub holds: bool,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone)]
pub struct EquilibriumReport {
    pub equilibria: Vec<(usize, usize)>,
    pub least: (usize, usize),
    pub greatest: (usize, usize),
    pub is_complete_lattice: bool,
}

impl SupermodularGame {
    pub fn new(
        s1: Lattice,
        s2: Lattice,
        u1: Vec<Rational64>,
        u2: Vec<Rational64>,
    ) -> Result<Self, LatticeError> {
        let cells = s1.n() * s2.n();
        if u1.len() != cells || u2.len() != cells {
            return Err(LatticeError::InvalidParameter(format!(
                "payoff tables must have {} entries, got {} and {}",
                cells,
                u1.len(),
                u2.len()
            )));
        }
        Ok(SupermodularGame { s1, s2, u1, u2 })
    }

    pub fn strategies(&self, player: Player) -> &Lattice {
        match player {
            Player::One => &self.s1,
            Player::Two => &self.s2,
        }
    }

    pub fn payoff(&self, player: Player, x: usize, y: usize) -> Rational64 {
        let cell = x * self.s2.n() + y;
        match player {
            Player::One => self.u1[cell],
            Player::Two => self.u2[cell],
        }
    }

    /// Checks supermodularity in own strategy (for each fixed opponent
    /// strategy) plus increasing differences across players, for both
    /// payoff tables.
    pub fn check_supermodular(&self) -> SupermodularReport {
        for player in [Player::One, Player::Two] {
            let (own, opp) = match player {
                Player::One => (&self.s1, &self.s2),
                Player::Two => (&self.s2, &self.s1),
            };
            let u = |x: usize, y: usize| match player {
                Player::One => self.payoff(player, x, y),
                Player::Two => self.payoff(player, y, x),
            };
            for y in 0..opp.n() {
                for a in 0..own.n() {
                    for b in 0..own.n() {
                        if u(own.join(a, b), y) + u(own.meet(a, b), y) < u(a, y) + u(b, y) {
                            return SupermodularReport {
                                holds: false,
                                violation: Some(Violation::OwnSupermodularity {
                                    player,
                                    own_a: a,
                                    own_b: b,
                                    opponent: y,
                                }),
                            };
                        }
                    }
                }
            }
            for xl in 0..own.n() {
                for xh in 0..own.n() {
                    if !own.leq(xl, xh) {
                        continue;
                    }
                    for yl in 0..opp.n() {
                        for yh in 0..opp.n() {
                            if !opp.leq(yl, yh) {
                                continue;
                            }
                            if u(xh, yh) - u(xl, yh) < u(xh, yl) - u(xl, yl) {
                                return SupermodularReport {
                                    holds: false,
                                    violation: Some(Violation::IncreasingDifferences {
                                        player,
                                        own_lo: xl,
                                        own_hi: xh,
                                        opp_lo: yl,
                                        opp_hi: yh,
                                    }),
                                };
                            }
                        }
                    }
                }
            }
        }
        SupermodularReport {
            holds: true,
            violation: None,
        }
    }

    /// The argmax set of `player`'s payoff against a fixed opponent
    /// strategy. For a supermodular game this is a sublattice of the
    /// player's strategy lattice and is ≤ᵛ-monotone in the opponent's
    /// strategy.
    pub fn best_response(&self, player: Player, opponent_strategy: usize) -> ElementSet {
        let own = self.strategies(player);
        let u = |x: usize| match player {
            Player::One => self.payoff(player, x, opponent_strategy),
            Player::Two => self.payoff(player, opponent_strategy, x),
        };
        let best = (0..own.n()).map(u).max().expect("nonempty strategy space");
        ElementSet::from_indices(own.n(), (0..own.n()).filter(|&x| u(x) == best))
    }

    /// Least and greatest pure Nash equilibria by extremal best-response
    /// iteration (from the bottoms and from the tops), the full
    /// equilibrium set by exhaustive scan, and the complete-lattice
    /// closure check on that set.
    pub fn solve(&self) -> Result<EquilibriumReport, LatticeError> {
        if !self.check_supermodular().holds {
            return Err(LatticeError::InvalidParameter(
                "game is not supermodular; solve refuses".into(),
            ));
        }
        let least = self.iterate(
            (self.s1.bottom(), self.s2.bottom()),
            |l: &Lattice, s: &ElementSet| l.meet_set(s),
        );
        let greatest = self.iterate(
            (self.s1.top(), self.s2.top()),
            |l: &Lattice, s: &ElementSet| l.join_set(s),
        );

        let mut equilibria = Vec::new();
        for x in 0..self.s1.n() {
            for y in 0..self.s2.n() {
                let best1 = (0..self.s1.n()).all(|x2| {
                    self.payoff(Player::One, x2, y) <= self.payoff(Player::One, x, y)
                });
                let best2 = (0..self.s2.n()).all(|y2| {
                    self.payoff(Player::Two, x, y2) <= self.payoff(Player::Two, x, y)
                });
                if best1 && best2 {
                    equilibria.push((x, y));
                }
            }
        }
        // Topkis: nonempty, and the iteration fixed points are the
        // componentwise extremes of the exhaustive scan.
        assert!(!equilibria.is_empty(), "supermodular game with no equilibrium");
        assert!(equilibria.contains(&least) && equilibria.contains(&greatest));
        for &(x, y) in &equilibria {
            assert!(self.s1.leq(least.0, x) && self.s2.leq(least.1, y));
            assert!(self.s1.leq(x, greatest.0) && self.s2.leq(y, greatest.1));
        }
        // Zhou: closure under componentwise meet/join (pairwise closure
        // gives arbitrary nonempty closure by finiteness).
        let is_complete_lattice = equilibria.iter().all(|&(x1, y1)| {
            equilibria.iter().all(|&(x2, y2)| {
                equilibria.contains(&(self.s1.meet(x1, x2), self.s2.meet(y1, y2)))
                    && equilibria.contains(&(self.s1.join(x1, x2), self.s2.join(y1, y2)))
            })
        });
        Ok(EquilibriumReport {
            equilibria,
            least,
            greatest,
            is_complete_lattice,
        })
    }

    fn iterate(
        &self,
        start: (usize, usize),
        pick: impl Fn(&Lattice, &ElementSet) -> usize,
    ) -> (usize, usize) {
        let (mut x, mut y) = start;
        // Monotone on a finite lattice: must settle within the number of
        // cells, else something is broken.
        for _ in 0..=self.s1.n() * self.s2.n() {
            let nx = pick(&self.s1, &self.best_response(Player::One, y));
            let ny = pick(&self.s2, &self.best_response(Player::Two, x));
            if (nx, ny) == (x, y) {
                return (x, y);
            }
            (x, y) = (nx, ny);
        }
        panic!("extremal best-response iteration failed to converge");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogSpec};
    use crate::veinott::{is_sublattice, veinott_leq};

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    /// 2x2 coordination game: payoff 1 on the diagonal, 0 off it.
    fn coordination() -> SupermodularGame {
        let chain = build(&CatalogSpec::Chain(1)).unwrap();
        let u = vec![r(1), r(0), r(0), r(1)];
        SupermodularGame::new(chain.clone(), chain, u.clone(), u).unwrap()
    }

    fn matching_pennies() -> SupermodularGame {
        let chain = build(&CatalogSpec::Chain(1)).unwrap();
        let u1 = vec![r(1), r(-1), r(-1), r(1)];
        let u2 = vec![r(-1), r(1), r(1), r(-1)];
        SupermodularGame::new(chain.clone(), chain, u1, u2).unwrap()
    }

    fn constant() -> SupermodularGame {
        let a = build(&CatalogSpec::Chain(1)).unwrap();
        let b = build(&CatalogSpec::Chain(2)).unwrap();
        let cells = a.n() * b.n();
        SupermodularGame::new(a, b, vec![r(5); cells], vec![r(5); cells]).unwrap()
    }

    #[test]
    fn coordination_is_supermodular() {
        assert!(coordination().check_supermodular().holds);
    }

    #[test]
    fn matching_pennies_is_not() {
        let report = matching_pennies().check_supermodular();
        assert!(!report.holds);
        assert!(matches!(
            report.violation,
            Some(Violation::IncreasingDifferences { .. })
        ));
    }

    #[test]
    fn constant_payoffs_are_supermodular() {
        assert!(constant().check_supermodular().holds);
    }

    #[test]
    fn best_response_examples() {
        let g = coordination();
        assert_eq!(
            g.best_response(Player::One, 1).iter().collect::<Vec<_>>(),
            vec![1]
        );
        assert_eq!(
            g.best_response(Player::One, 0).iter().collect::<Vec<_>>(),
            vec![0]
        );
        let c = constant();
        assert_eq!(c.best_response(Player::Two, 0).len(), 3);
    }

    #[test]
    fn best_response_monotone_for_coordination() {
        let g = coordination();
        let l = g.strategies(Player::One);
        for y in 0..2 {
            for y2 in 0..2 {
                if !g.strategies(Player::Two).leq(y, y2) {
                    continue;
                }
                let lo = g.best_response(Player::One, y);
                let hi = g.best_response(Player::One, y2);
                assert!(is_sublattice(l, &lo));
                assert!(veinott_leq(l, &lo, &hi));
            }
        }
    }

    #[test]
    fn solve_coordination() {
        let report = coordination().solve().unwrap();
        assert_eq!(report.equilibria, vec![(0, 0), (1, 1)]);
        assert_eq!(report.least, (0, 0));
        assert_eq!(report.greatest, (1, 1));
        assert!(report.is_complete_lattice);
    }

    #[test]
    fn solve_constant() {
        let report = constant().solve().unwrap();
        assert_eq!(report.equilibria.len(), 6);
        assert_eq!(report.least, (0, 0));
        assert_eq!(report.greatest, (1, 2));
        assert!(report.is_complete_lattice);
    }

    #[test]
    fn solve_single_strategy_players() {
        let one = build(&CatalogSpec::Chain(0)).unwrap();
        let g = SupermodularGame::new(one.clone(), one, vec![r(3)], vec![r(4)]).unwrap();
        let report = g.solve().unwrap();
        assert_eq!(report.equilibria, vec![(0, 0)]);
        assert!(report.is_complete_lattice);
    }

    #[test]
    fn solve_refuses_non_supermodular() {
        assert!(matching_pennies().solve().is_err());
    }

    #[test]
    fn payoff_table_size_checked() {
        let chain = build(&CatalogSpec::Chain(1)).unwrap();
        assert!(SupermodularGame::new(chain.clone(), chain, vec![r(0)], vec![r(0)]).is_err());
    }
}
