//! Built-in generator suite of named lattices: the pentagon and diamond,
//! chains, boolean algebras, divisor lattices, products, the two-rail
//! "D" lattice, and seed-deterministic random lattices.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::set::ElementSet;
use crate::veinott::{Sublattice, SublatticeFamily};

const ATOM_LETTERS: &[u8] = b"pqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogSpec {
    N5,
    M3,
    /// A chain of `n + 1` totally ordered elements labeled `0 ..= n`.
    Chain(usize),
    /// The powerset of `n` atoms (`1 ..= 10`), bottom `bot`, top `top`,
    /// other elements labeled by their atom letters (`p`, `q`, `pq`, ...).
    Boolean(usize),
    /// Divisors of `n` under divisibility, `1 ..= 1_000_000`.
    Divisor(u64),
    Product(Box<CatalogSpec>, Box<CatalogSpec>),
    /// Finite truncation of the two-rail lattice `D`: elements
    /// `top, b, a0..an, b0..bn, aw, bot`.
    DLattice(usize),
    /// Seed-deterministic lattice: intersection-closure of the principal
    /// down-sets of a random poset on `size` points.
    Random { seed: u64, size: usize },
}

pub fn build(spec: &CatalogSpec) -> Result<Lattice, LatticeError> {
    match spec {
        CatalogSpec::N5 => ok(Lattice::from_covers(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("a", "c"), ("c", "d"), ("b", "e"), ("d", "e")],
        )),
        CatalogSpec::M3 => ok(Lattice::from_covers(
            &["a", "b", "c", "d", "e"],
            &[
                ("a", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "e"),
                ("c", "e"),
                ("d", "e"),
            ],
        )),
        CatalogSpec::Chain(n) => {
            let labels: Vec<String> = (0..=*n).map(|i| i.to_string()).collect();
            ok(Lattice::from_leq(&labels, |x, y| x <= y))
        }
        CatalogSpec::Boolean(n) => {
            let n = *n;
            if n == 0 || n > 10 {
                return Err(LatticeError::InvalidParameter(format!(
                    "boolean({n}): atom count must be in 1..=10"
                )));
            }
            let labels: Vec<String> = (0u32..1 << n).map(|mask| boolean_label(mask, n)).collect();
            ok(Lattice::from_leq(&labels, |x, y| x & !y == 0))
        }
        CatalogSpec::Divisor(n) => {
            let n = *n;
            if n == 0 || n > 1_000_000 {
                return Err(LatticeError::InvalidParameter(format!(
                    "divisor({n}): argument must be in 1..=1000000"
                )));
            }
            let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            let labels: Vec<String> = divisors.iter().map(|d| d.to_string()).collect();
            ok(Lattice::from_leq(&labels, |x, y| {
                divisors[y].is_multiple_of(divisors[x])
            }))
        }
        CatalogSpec::Product(a, b) => {
            let la = build(a)?;
            let lb = build(b)?;
            let nb = lb.n();
            let mut labels = Vec::with_capacity(la.n() * nb);
            for x in 0..la.n() {
                for y in 0..nb {
                    labels.push(format!("({},{})", la.label(x), lb.label(y)));
                }
            }
            ok(Lattice::from_leq(&labels, |i, j| {
                la.leq(i / nb, j / nb) && lb.leq(i % nb, j % nb)
            }))
        }
        CatalogSpec::DLattice(n) => {
            let n = *n;
            let mut labels = vec!["top".to_owned(), "b".to_owned()];
            labels.extend((0..=n).map(|i| format!("a{i}")));
            labels.extend((0..=n).map(|i| format!("b{i}")));
            labels.push("aw".to_owned());
            labels.push("bot".to_owned());
            let mut covers: Vec<(String, String)> = vec![
                ("a0".into(), "top".into()),
                ("b".into(), "top".into()),
                ("b0".into(), "b".into()),
            ];
            for i in 0..n {
                covers.push((format!("a{}", i + 1), format!("a{i}")));
                covers.push((format!("b{}", i + 1), format!("b{i}")));
            }
            for i in 0..=n {
                covers.push((format!("b{i}"), format!("a{i}")));
            }
            covers.push(("aw".into(), format!("a{n}")));
            covers.push(("bot".into(), format!("b{n}")));
            covers.push(("bot".into(), "aw".into()));
            ok(Lattice::from_covers(&labels, &covers))
        }
        CatalogSpec::Random { seed, size } => {
            let size = *size;
            if size == 0 || size > 12 {
                return Err(LatticeError::InvalidParameter(format!(
                    "random(size {size}): size must be in 1..=12"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut leq = vec![false; size * size];
            for i in 0..size {
                leq[i * size + i] = true;
                for j in i + 1..size {
                    leq[i * size + j] = rng.gen_ratio(1, 3);
                }
            }
            for k in 0..size {
                for i in 0..size {
                    if leq[i * size + k] {
                        for j in 0..size {
                            if leq[k * size + j] {
                                leq[i * size + j] = true;
                            }
                        }
                    }
                }
            }
            // Intersection-closure of the principal down-sets, plus the
            // full carrier: a closure system, hence a lattice under ⊆.
            let mut family: Vec<ElementSet> = vec![ElementSet::full(size)];
            for x in 0..size {
                let down =
                    ElementSet::from_indices(size, (0..size).filter(|&y| leq[y * size + x]));
                if !family.contains(&down) {
                    family.push(down);
                }
            }
            let mut i = 0;
            while i < family.len() {
                for j in 0..i {
                    let meet = family[i].intersection(&family[j]);
                    if !family.contains(&meet) {
                        family.push(meet);
                    }
                }
                i += 1;
            }
            family.sort();
            let labels: Vec<String> = (0..family.len()).map(|i| format!("c{i}")).collect();
            ok(Lattice::from_leq(&labels, |x, y| {
                family[x].is_subset(&family[y])
            }))
        }
    }
}

fn ok(result: Result<Lattice, crate::lattice::PosetReport>) -> Result<Lattice, LatticeError> {
    result.map_err(|report| LatticeError::InvalidParameter(report.reason))
}

fn boolean_label(mask: u32, n: usize) -> String {
    if mask == 0 {
        return "bot".into();
    }
    if mask == (1 << n) - 1 {
        return "top".into();
    }
    (0..n)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| ATOM_LETTERS[i] as char)
        .collect()
}

/// The paper-style family on a `d_lattice(n)`: `X_i = {top, a0, ..., ai}`
/// for `i = 0 ..= n`. Each member is a sublattice.
pub fn d_family(l: &Lattice) -> Result<SublatticeFamily, LatticeError> {
    let top = l
        .index_of("top")
        .filter(|&t| t == l.top())
        .ok_or_else(|| wrong_kind(l))?;
    l.index_of("aw").ok_or_else(|| wrong_kind(l))?;
    let mut rail = Vec::new();
    while let Some(a) = l.index_of(&format!("a{}", rail.len())) {
        rail.push(a);
    }
    if rail.is_empty() {
        return Err(wrong_kind(l));
    }
    let mut members = Vec::new();
    let mut carrier = ElementSet::singleton(l.n(), top);
    for a in rail {
        carrier.insert(a);
        members.push(Sublattice::new(l, carrier.clone())?);
    }
    Ok(SublatticeFamily::new(members))
}

fn wrong_kind(l: &Lattice) -> LatticeError {
    LatticeError::WrongCatalogKind {
        expected: "d_lattice(n)".into(),
        detail: format!("labels {:?}", l.labels()),
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpec::N5 => write!(f, "n5"),
            CatalogSpec::M3 => write!(f, "m3"),
            CatalogSpec::Chain(n) => write!(f, "chain:{n}"),
            CatalogSpec::Boolean(n) => write!(f, "boolean:{n}"),
            CatalogSpec::Divisor(n) => write!(f, "divisor:{n}"),
            CatalogSpec::Product(a, b) => write!(f, "product:{a}*{b}"),
            CatalogSpec::DLattice(n) => write!(f, "d:{n}"),
            CatalogSpec::Random { seed, size } => write!(f, "random:{seed}:{size}"),
        }
    }
}

impl FromStr for CatalogSpec {
    type Err = LatticeError;

    /// Parses `n5`, `m3`, `chain:N`, `boolean:N`, `divisor:N`, `d:N`,
    /// `random:SEED:SIZE`, and `product:A*B`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::InvalidParameter(format!("unknown catalog spec '{s}'"));
        match s {
            "n5" => return Ok(CatalogSpec::N5),
            "m3" => return Ok(CatalogSpec::M3),
            _ => {}
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "chain" => Ok(CatalogSpec::Chain(rest.parse().map_err(|_| bad())?)),
            "boolean" => Ok(CatalogSpec::Boolean(rest.parse().map_err(|_| bad())?)),
            "divisor" => Ok(CatalogSpec::Divisor(rest.parse().map_err(|_| bad())?)),
            "d" => Ok(CatalogSpec::DLattice(rest.parse().map_err(|_| bad())?)),
            "random" => {
                let (seed, size) = rest.split_once(':').ok_or_else(bad)?;
                Ok(CatalogSpec::Random {
                    seed: seed.parse().map_err(|_| bad())?,
                    size: size.parse().map_err(|_| bad())?,
                })
            }
            "product" => {
                let (a, b) = split_product(rest).ok_or_else(bad)?;
                Ok(CatalogSpec::Product(
                    Box::new(a.parse()?),
                    Box::new(b.parse()?),
                ))
            }
            _ => Err(bad()),
        }
    }
}

/// Splits `A*B` at the last top-level `*` so nested products associate
/// to the left.
fn split_product(s: &str) -> Option<(&str, &str)> {
    s.rfind('*').map(|i| (&s[..i], &s[i + 1..]))
}
