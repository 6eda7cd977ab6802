//! File formats and exports: the textual lattice document, the game
//! document, DOT diagrams, and the machine-readable analysis verdict.
//!
//! The lattice document is a mapping with keys `elements` (names in
//! input order) and `covers` (2-element name lists, sorted
//! lexicographically on serialization so round-trips are byte-stable).

use serde::{Deserialize, Serialize};

use num_rational::Rational64;

use crate::error::LatticeError;
use crate::games::SupermodularGame;
use crate::lattice::{Lattice, PosetReport};
use crate::veinott::{SlPoset, VeinottVerdict};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &Lattice) -> Self {
        let mut covers: Vec<[String; 2]> = l
            .covers()
            .into_iter()
            .map(|(x, y)| [l.label(x).to_owned(), l.label(y).to_owned()])
            .collect();
        covers.sort();
        LatticeDoc {
            elements: l.labels().to_vec(),
            covers,
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice, PosetReport> {
        let covers: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|[a, b]| (a.clone(), b.clone()))
            .collect();
        Lattice::from_covers(&self.elements, &covers)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice doc serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(text)
            .map_err(|e| LatticeError::InvalidParameter(format!("malformed lattice document: {e}")))
    }
}

/// Two lattice documents plus two payoff matrices; rows are player-1
/// strategies (in element order), columns player-2 strategies, entries
/// rationals written `p/q` (or a bare integer).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameDoc {
    pub player1: LatticeDoc,
    pub player2: LatticeDoc,
    pub payoff1: Vec<Vec<String>>,
    pub payoff2: Vec<Vec<String>>,
}

impl GameDoc {
    pub fn from_game(g: &SupermodularGame) -> Self {
        let s1 = g.strategies(crate::games::Player::One);
        let s2 = g.strategies(crate::games::Player::Two);
        let table = |player| {
            (0..s1.n())
                .map(|x| {
                    (0..s2.n())
                        .map(|y| format_rational(g.payoff(player, x, y)))
                        .collect()
                })
                .collect()
        };
        GameDoc {
            player1: LatticeDoc::from_lattice(s1),
            player2: LatticeDoc::from_lattice(s2),
            payoff1: table(crate::games::Player::One),
            payoff2: table(crate::games::Player::Two),
        }
    }

    pub fn to_game(&self) -> Result<SupermodularGame, LatticeError> {
        let s1 = self
            .player1
            .to_lattice()
            .map_err(|r| LatticeError::InvalidParameter(r.reason))?;
        let s2 = self
            .player2
            .to_lattice()
            .map_err(|r| LatticeError::InvalidParameter(r.reason))?;
        let flatten = |rows: &Vec<Vec<String>>| -> Result<Vec<Rational64>, LatticeError> {
            rows.iter()
                .flatten()
                .map(|s| parse_rational(s))
                .collect()
        };
        SupermodularGame::new(s1, s2, flatten(&self.payoff1)?, flatten(&self.payoff2)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("game doc serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(text)
            .map_err(|e| LatticeError::InvalidParameter(format!("malformed game document: {e}")))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational64, LatticeError> {
    let bad = || LatticeError::InvalidParameter(format!("malformed rational '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(
            s.trim().parse().map_err(|_| bad())?,
        )),
    }
}

pub fn format_rational(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// DOT rendering of the Hasse diagram: edges are covers (drawn upward),
/// elements grouped into ranks by order-theoretic height so the layout
/// matches the usual diagrams, bottom at rank 0.
pub fn hasse_dot(l: &Lattice) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    for x in 0..l.n() {
        out.push_str(&format!("  {};\n", quote(l.label(x))));
    }
    let max_height = (0..l.n()).map(|x| l.height(x)).max().unwrap_or(0);
    for h in 0..=max_height {
        let level: Vec<usize> = (0..l.n()).filter(|&x| l.height(x) == h).collect();
        if !level.is_empty() {
            out.push_str("  { rank=same;");
            for x in level {
                out.push_str(&format!(" {};", quote(l.label(x))));
            }
            out.push_str(" }\n");
        }
    }
    for (x, y) in l.covers() {
        out.push_str(&format!(
            "  {} -> {};\n",
            quote(l.label(x)),
            quote(l.label(y))
        ));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the Veinott poset ⟨SL(C), ≤ᵛ⟩: one node per
/// sublattice (its sorted element names), edges the cover relation.
pub fn sl_dot(l: &Lattice, poset: &SlPoset) -> String {
    let m = poset.len();
    let name = |i: usize| {
        quote(&format!(
            "{{{}}}",
            poset.sublattices()[i].labels(l).join(",")
        ))
    };
    let mut out = String::from("digraph veinott {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..m {
        out.push_str(&format!("  {};\n", name(i)));
    }
    for i in 0..m {
        for j in 0..m {
            if i != j && poset.leq(i, j) {
                // Cover: nothing strictly between i and j.
                let between = (0..m)
                    .filter(|&k| poset.leq(i, k) && poset.leq(k, j))
                    .count();
                if between == 2 {
                    out.push_str(&format!("  {} -> {};\n", name(i), name(j)));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Machine-readable mirror of `VeinottVerdict`; sublattices appear as
/// their sorted element-name lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub is_lattice: bool,
    pub sl_size: usize,
    pub failure: Option<FailureDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureDoc {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub maximal_lower_bounds: Vec<Vec<String>>,
}

impl VerdictDoc {
    pub fn from_verdict(l: &Lattice, v: &VeinottVerdict) -> Self {
        VerdictDoc {
            is_lattice: v.is_lattice,
            sl_size: v.sl_size,
            failure: v.failure.as_ref().map(|f| FailureDoc {
                left: f.left.labels(l),
                right: f.right.labels(l),
                maximal_lower_bounds: f
                    .maximal_lower_bounds
                    .iter()
                    .map(|s| s.labels(l))
                    .collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogSpec};
    use crate::veinott::enumerate_sl;

    #[test]
    fn lattice_doc_round_trip() {
        for spec in [CatalogSpec::N5, CatalogSpec::Boolean(2), CatalogSpec::Divisor(12)] {
            let l = build(&spec).unwrap();
            let doc = LatticeDoc::from_lattice(&l);
            let back = doc.to_lattice().unwrap();
            assert_eq!(l.labels(), back.labels());
            for x in 0..l.n() {
                for y in 0..l.n() {
                    assert_eq!(l.leq(x, y), back.leq(x, y));
                }
            }
            // Serialization is byte-stable.
            let doc2 = LatticeDoc::from_lattice(&back);
            assert_eq!(doc.to_json(), doc2.to_json());
        }
    }

    #[test]
    fn covers_are_sorted() {
        let l = build(&CatalogSpec::Boolean(2)).unwrap();
        let doc = LatticeDoc::from_lattice(&l);
        let mut sorted = doc.covers.clone();
        sorted.sort();
        assert_eq!(doc.covers, sorted);
    }

    #[test]
    fn malformed_document_rejected() {
        assert!(LatticeDoc::from_json("{").is_err());
        let doc = LatticeDoc {
            elements: vec!["a".into(), "b".into(), "c".into()],
            covers: vec![["a".into(), "b".into()], ["a".into(), "c".into()]],
        };
        assert!(doc.to_lattice().is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational64::new(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), Rational64::from_integer(-2));
        assert_eq!(format_rational(Rational64::new(6, 8)), "3/4");
        assert_eq!(format_rational(Rational64::from_integer(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn game_doc_round_trip() {
        let chain = build(&CatalogSpec::Chain(1)).unwrap();
        let one = Rational64::from_integer(1);
        let zero = Rational64::from_integer(0);
        let g = SupermodularGame::new(
            chain.clone(),
            chain,
            vec![one, zero, zero, one],
            vec![one, zero, zero, one],
        )
        .unwrap();
        let doc = GameDoc::from_game(&g);
        let back = doc.to_game().unwrap();
        assert_eq!(
            back.payoff(crate::games::Player::One, 0, 0),
            one
        );
        assert_eq!(doc.to_json(), GameDoc::from_game(&back).to_json());
    }

    #[test]
    fn hasse_dot_shape() {
        let l = build(&CatalogSpec::N5).unwrap();
        let dot = hasse_dot(&l);
        assert!(dot.starts_with("digraph hasse {"));
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("rank=same"));
    }

    #[test]
    fn sl_dot_shape() {
        let l = build(&CatalogSpec::Chain(1)).unwrap();
        let poset = SlPoset::new(&l, enumerate_sl(&l, 100).unwrap());
        let dot = sl_dot(&l, &poset);
        assert!(dot.starts_with("digraph veinott {"));
        // {0} <v {0,1} <v {1} is the chain of SL(chain(1)).
        assert!(dot.contains("\"{0}\" -> \"{0,1}\";"));
        assert!(dot.contains("\"{0,1}\" -> \"{1}\";"));
    }
}
