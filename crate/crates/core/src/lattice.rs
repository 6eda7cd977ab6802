//! Finite lattices: construction from cover relations, order queries,
//! meet/join tables, closures, distributivity and forbidden-sublattice
//! detection, atoms, and dualization.
//!
//! A `Lattice` is immutable after construction and every operation here is
//! a pure function of its inputs, so sharing one across threads is safe.

use std::collections::HashMap;
use std::fmt;

use crate::set::ElementSet;

/// Outcome of validating a candidate order that failed to be a lattice
/// (or even a poset). The first failing pair in element-index order is
/// reported, so diagnostics are deterministic.
#[derive(Debug, Clone)]
pub struct PosetReport {
    pub is_lattice: bool,
    pub failing_pair: Option<(String, String)>,
    pub reason: String,
}

impl fmt::Display for PosetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)
    }
}

/// Which of the two forbidden five-element sublattices was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenKind {
    N5,
    M3,
}

/// Witness that a lattice is not distributive: five elements forming a
/// pentagon or a diamond. Elements are listed bottom-first, top-last; for
/// the pentagon the short side comes before the two-element chain.
#[derive(Debug, Clone)]
pub struct ForbiddenSublattice {
    pub kind: ForbiddenKind,
    pub elements: [usize; 5],
}

/// A finite lattice over elements `0 .. n-1` with precomputed order and
/// meet/join tables.
#[derive(Clone)]
pub struct Lattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// downs[x] = { y | y <= x }
    downs: Vec<ElementSet>,
    /// ups[x] = { y | x <= y }
    ups: Vec<ElementSet>,
    meet_table: Vec<u32>,
    join_table: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("labels", &self.labels)
            .field("covers", &self.covers())
            .finish()
    }
}

impl Lattice {
    /// Builds a lattice from a Hasse diagram: `covers` lists pairs
    /// `(x, y)` meaning `x` is covered by `y` (`x < y` with nothing in
    /// between). The order is the reflexive-transitive closure of the
    /// covers; validation rejects duplicate labels, cycles, and pairs
    /// with no meet or no join.
    pub fn from_covers<S: AsRef<str>>(
        labels: &[S],
        covers: &[(S, S)],
    ) -> Result<Lattice, PosetReport> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let n = labels.len();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetReport {
                    is_lattice: false,
                    failing_pair: Some((l.clone(), l.clone())),
                    reason: format!("duplicate label '{l}'"),
                });
            }
        }
        if n == 0 {
            return Err(PosetReport {
                is_lattice: false,
                failing_pair: None,
                reason: "a lattice needs at least one element".into(),
            });
        }
        let mut ups: Vec<ElementSet> = (0..n).map(|x| ElementSet::singleton(n, x)).collect();
        for (lo, hi) in covers {
            let (lo, hi) = (lo.as_ref(), hi.as_ref());
            match (index.get(lo), index.get(hi)) {
                (Some(&x), Some(&y)) => ups[x].insert(y),
                _ => {
                    return Err(PosetReport {
                        is_lattice: false,
                        failing_pair: Some((lo.to_owned(), hi.to_owned())),
                        reason: format!("cover ({lo}, {hi}) references an unknown label"),
                    })
                }
            }
        }
        // Warshall closure of the reflexive cover relation.
        for k in 0..n {
            for x in 0..n {
                if ups[x].contains(k) {
                    ups[x] = ups[x].union(&ups[k]);
                }
            }
        }
        Self::build(labels, index, ups)
    }

    /// Builds a lattice from an order predicate directly (used by the
    /// catalog generators whose order is easier to state than its covers).
    /// The predicate must already be reflexive and transitive.
    pub fn from_leq<S: AsRef<str>>(
        labels: &[S],
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Lattice, PosetReport> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let n = labels.len();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetReport {
                    is_lattice: false,
                    failing_pair: Some((l.clone(), l.clone())),
                    reason: format!("duplicate label '{l}'"),
                });
            }
        }
        if n == 0 {
            return Err(PosetReport {
                is_lattice: false,
                failing_pair: None,
                reason: "a lattice needs at least one element".into(),
            });
        }
        let ups: Vec<ElementSet> = (0..n)
            .map(|x| ElementSet::from_indices(n, (0..n).filter(|&y| leq(x, y))))
            .collect();
        for (x, up) in ups.iter().enumerate() {
            assert!(up.contains(x), "leq must be reflexive");
        }
        for x in 0..n {
            for &y in ups[x].iter().collect::<Vec<_>>().iter() {
                assert!(
                    ups[y].is_subset(&ups[x]),
                    "leq must be transitive ({} <= {} <= ...)",
                    labels[x],
                    labels[y]
                );
            }
        }
        Self::build(labels, index, ups)
    }

    fn build(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        ups: Vec<ElementSet>,
    ) -> Result<Lattice, PosetReport> {
        let n = labels.len();
        // Antisymmetry: a two-way reachability is a cycle in the covers.
        for x in 0..n {
            for y in x + 1..n {
                if ups[x].contains(y) && ups[y].contains(x) {
                    return Err(PosetReport {
                        is_lattice: false,
                        failing_pair: Some((labels[x].clone(), labels[y].clone())),
                        reason: format!(
                            "cover cycle: {} <= {} <= {}",
                            labels[x], labels[y], labels[x]
                        ),
                    });
                }
            }
        }
        let mut downs: Vec<ElementSet> = vec![ElementSet::empty(n); n];
        for (x, up) in ups.iter().enumerate() {
            for y in up.iter() {
                downs[y].insert(x);
            }
        }
        let mut meet_table = vec![0u32; n * n];
        let mut join_table = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let glb = greatest_of(&downs[x].intersection(&downs[y]), &downs);
                let lub = greatest_of(&ups[x].intersection(&ups[y]), &ups);
                match (glb, lub) {
                    (Some(m), Some(j)) => {
                        meet_table[x * n + y] = m as u32;
                        meet_table[y * n + x] = m as u32;
                        join_table[x * n + y] = j as u32;
                        join_table[y * n + x] = j as u32;
                    }
                    _ => {
                        let which = if glb.is_none() { "meet" } else { "join" };
                        return Err(PosetReport {
                            is_lattice: false,
                            failing_pair: Some((labels[x].clone(), labels[y].clone())),
                            reason: format!(
                                "pair ({}, {}) has no {which}",
                                labels[x], labels[y]
                            ),
                        });
                    }
                }
            }
        }
        let bottom = (0..n)
            .reduce(|a, b| meet_table[a * n + b] as usize)
            .unwrap();
        let top = (0..n)
            .reduce(|a, b| join_table[a * n + b] as usize)
            .unwrap();
        Ok(Lattice {
            labels,
            index,
            downs,
            ups,
            meet_table,
            join_table,
            bottom,
            top,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.check(x);
        self.check(y);
        self.ups[x].contains(y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.check(x);
        self.check(y);
        self.meet_table[x * self.n() + y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.check(x);
        self.check(y);
        self.join_table[x * self.n() + y] as usize
    }

    /// Meet of a nonempty set; a fold of the binary table, so the result
    /// is independent of iteration order.
    pub fn meet_set(&self, s: &ElementSet) -> usize {
        s.iter()
            .reduce(|a, b| self.meet(a, b))
            .expect("meet_set of an empty set")
    }

    pub fn join_set(&self, s: &ElementSet) -> usize {
        s.iter()
            .reduce(|a, b| self.join(a, b))
            .expect("join_set of an empty set")
    }

    /// `{ y | y <= x }`; always contains the bottom and `x` itself.
    pub fn down_set(&self, x: usize) -> ElementSet {
        self.check(x);
        self.downs[x].clone()
    }

    pub fn up_set(&self, x: usize) -> ElementSet {
        self.check(x);
        self.ups[x].clone()
    }

    /// Common lower bounds of `s`: the intersection of the down-sets of
    /// its members. By the empty-intersection convention,
    /// `lower_bounds(∅)` is the whole carrier.
    pub fn lower_bounds(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .map(|x| self.downs[x].clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| ElementSet::full(self.n()))
    }

    pub fn upper_bounds(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .map(|x| self.ups[x].clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| ElementSet::full(self.n()))
    }

    /// The nonempty Moore closure: all meets of nonempty subsets of `s`.
    /// Computed by saturating under binary meet, which coincides with the
    /// subset definition on a finite lattice.
    pub fn moore_closure(&self, s: &ElementSet) -> ElementSet {
        assert!(!s.is_empty(), "moore_closure of an empty set");
        self.saturate(s, |a, b| self.meet(a, b))
    }

    /// Dual closure: all joins of nonempty subsets of `s`.
    pub fn join_closure(&self, s: &ElementSet) -> ElementSet {
        assert!(!s.is_empty(), "join_closure of an empty set");
        self.saturate(s, |a, b| self.join(a, b))
    }

    fn saturate(&self, s: &ElementSet, op: impl Fn(usize, usize) -> usize) -> ElementSet {
        let mut out = s.clone();
        let mut worklist: Vec<usize> = out.iter().collect();
        while let Some(x) = worklist.pop() {
            let members: Vec<usize> = out.iter().collect();
            for y in members {
                let z = op(x, y);
                if !out.contains(z) {
                    out.insert(z);
                    worklist.push(z);
                }
            }
        }
        out
    }

    /// True iff `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
    pub fn is_distributive(&self) -> bool {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Finds a pentagon or diamond sublattice, which exists exactly when
    /// the lattice is not distributive. A non-modular lattice yields a
    /// pentagon via the classical `x ∨ (y ∧ z)` vs `(x ∨ y) ∧ z` gap; a
    /// modular non-distributive one yields a diamond via the median
    /// construction. Every returned witness is re-verified.
    pub fn find_forbidden_sublattice(&self) -> Option<ForbiddenSublattice> {
        let n = self.n();
        // Pentagon from a modularity violation.
        for x in 0..n {
            for z in 0..n {
                if x == z || !self.leq(x, z) {
                    continue;
                }
                for y in 0..n {
                    let u = self.join(x, self.meet(y, z));
                    let v = self.meet(self.join(x, y), z);
                    if u == v {
                        continue;
                    }
                    let w = [self.meet(y, z), y, u, v, self.join(x, y)];
                    if self.check_n5(&w) {
                        return Some(ForbiddenSublattice {
                            kind: ForbiddenKind::N5,
                            elements: w,
                        });
                    }
                }
            }
        }
        // Diamond from a distributivity violation in a modular lattice.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z))
                        == self.join(self.meet(x, y), self.meet(x, z))
                    {
                        continue;
                    }
                    let p = self.join(
                        self.join(self.meet(x, y), self.meet(y, z)),
                        self.meet(z, x),
                    );
                    let q = self.meet(
                        self.meet(self.join(x, y), self.join(y, z)),
                        self.join(z, x),
                    );
                    let w = [
                        p,
                        self.join(p, self.meet(x, q)),
                        self.join(p, self.meet(y, q)),
                        self.join(p, self.meet(z, q)),
                        q,
                    ];
                    if self.check_m3(&w) {
                        return Some(ForbiddenSublattice {
                            kind: ForbiddenKind::M3,
                            elements: w,
                        });
                    }
                }
            }
        }
        None
    }

    fn check_n5(&self, w: &[usize; 5]) -> bool {
        let [a, b, c, d, e] = *w;
        let distinct = {
            let mut v = *w;
            v.sort_unstable();
            v.windows(2).all(|p| p[0] != p[1])
        };
        distinct
            && self.leq(a, b)
            && self.leq(b, e)
            && self.leq(a, c)
            && self.leq(c, d)
            && self.leq(d, e)
            && !self.leq(b, c)
            && !self.leq(c, b)
            && !self.leq(b, d)
            && !self.leq(d, b)
            && self.meet(b, c) == a
            && self.join(b, c) == e
            && self.meet(b, d) == a
            && self.join(b, d) == e
    }

    fn check_m3(&self, w: &[usize; 5]) -> bool {
        let [a, b, c, d, e] = *w;
        let distinct = {
            let mut v = *w;
            v.sort_unstable();
            v.windows(2).all(|p| p[0] != p[1])
        };
        distinct
            && [b, c, d].iter().all(|&m| self.leq(a, m) && self.leq(m, e))
            && [(b, c), (b, d), (c, d)]
                .iter()
                .all(|&(p, q)| self.meet(p, q) == a && self.join(p, q) == e)
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> ElementSet {
        ElementSet::from_indices(
            self.n(),
            (0..self.n()).filter(|&x| self.downs[x].len() == 2 && self.downs[x].contains(self.bottom)),
        )
    }

    /// True iff every non-bottom element dominates an atom (vacuously true
    /// for the one-element lattice).
    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.n())
            .filter(|&x| x != self.bottom)
            .all(|x| !self.downs[x].intersection(&atoms).is_empty())
    }

    /// The order-dual: same elements, order reversed, meet and join
    /// swapped, top and bottom swapped. An involution element-by-element.
    pub fn dual(&self) -> Lattice {
        Lattice {
            labels: self.labels.clone(),
            index: self.index.clone(),
            downs: self.ups.clone(),
            ups: self.downs.clone(),
            meet_table: self.join_table.clone(),
            join_table: self.meet_table.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// The cover relation `(lower, upper)` recovered from the order,
    /// in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n() {
            for y in 0..self.n() {
                if x != y
                    && self.leq(x, y)
                    && self.ups[x].intersection(&self.downs[y]).len() == 2
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Order-theoretic height: length of the longest chain from the
    /// bottom up to `x`.
    pub fn height(&self, x: usize) -> usize {
        self.check(x);
        let mut heights = vec![0usize; self.n()];
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| self.downs[v].len());
        for v in order {
            heights[v] = self.downs[v]
                .iter()
                .filter(|&u| u != v)
                .map(|u| heights[u] + 1)
                .max()
                .unwrap_or(0);
        }
        heights[x]
    }

    /// Parses a set of element names into an `ElementSet`.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Option<ElementSet> {
        let mut out = ElementSet::empty(self.n());
        for name in names {
            out.insert(self.index_of(name.as_ref())?);
        }
        Some(out)
    }

    /// Renders a set as its sorted element names.
    pub fn set_labels(&self, s: &ElementSet) -> Vec<String> {
        let mut out: Vec<String> = s.iter().map(|x| self.labels[x].clone()).collect();
        out.sort();
        out
    }

    fn check(&self, x: usize) {
        assert!(x < self.n(), "element index {x} out of range (n = {})", self.n());
    }
}

fn greatest_of(candidates: &ElementSet, downs: &[ElementSet]) -> Option<usize> {
    candidates
        .iter()
        .find(|&g| candidates.is_subset(&downs[g]))
}

/// Checks whether two lattices are order-isomorphic by backtracking over
/// label assignments. Intended for small (desk-scale) lattices in tests.
pub fn isomorphic(a: &Lattice, b: &Lattice) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let n = a.n();
    // Match elements with equal (in-degree, out-degree) profiles.
    let profile = |l: &Lattice, x: usize| (l.down_set(x).len(), l.up_set(x).len());
    let mut assigned = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn backtrack(
        a: &Lattice,
        b: &Lattice,
        x: usize,
        assigned: &mut Vec<usize>,
        used: &mut Vec<bool>,
        profile: &impl Fn(&Lattice, usize) -> (usize, usize),
    ) -> bool {
        if x == a.n() {
            return true;
        }
        for y in 0..b.n() {
            if used[y] || profile(a, x) != profile(b, y) {
                continue;
            }
            let consistent = (0..x).all(|x2| {
                a.leq(x, x2) == b.leq(y, assigned[x2]) && a.leq(x2, x) == b.leq(assigned[x2], y)
            });
            if consistent {
                assigned[x] = y;
                used[y] = true;
                if backtrack(a, b, x + 1, assigned, used, profile) {
                    return true;
                }
                assigned[x] = usize::MAX;
                used[y] = false;
            }
        }
        false
    }
    backtrack(a, b, 0, &mut assigned, &mut used, &profile)
}
