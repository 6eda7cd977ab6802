//! The Veinott (strong set) order on the nonempty sublattices of a finite
//! lattice: enumeration of SL(C), the order decision, lattice-structure
//! analysis of ⟨SL(C), ≤ᵛ⟩, and greatest lower / least upper bounds both
//! by brute force and by the closed-form construction
//! `G = {x ∈ M*(∪Aᵢ) | ∀k. M*(∪Aᵢ) ∩ ↓x ≤ᵛ A_k}`.
//!
//! On a finite lattice every sublattice is subcomplete, so SL(C) is the
//! set of nonempty subsets closed under binary meet and join.

use std::collections::{HashMap, HashSet};

use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::set::ElementSet;

/// A member of SL(C): a nonempty carrier closed under meet and join.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    carrier: ElementSet,
}

impl Sublattice {
    pub fn new(l: &Lattice, carrier: ElementSet) -> Result<Self, LatticeError> {
        if !is_sublattice(l, &carrier) {
            return Err(LatticeError::NotASublattice(
                l.set_labels(&carrier).join(","),
            ));
        }
        Ok(Sublattice { carrier })
    }

    pub fn from_names<S: AsRef<str>>(l: &Lattice, names: &[S]) -> Result<Self, LatticeError> {
        let carrier = l.set_of(names).ok_or_else(|| {
            LatticeError::InvalidParameter(format!(
                "unknown element name among {:?}",
                names.iter().map(|s| s.as_ref()).collect::<Vec<_>>()
            ))
        })?;
        Self::new(l, carrier)
    }

    pub fn carrier(&self) -> &ElementSet {
        &self.carrier
    }

    /// Sorted element names, the canonical serialized form.
    pub fn labels(&self, l: &Lattice) -> Vec<String> {
        l.set_labels(&self.carrier)
    }
}

/// A nonempty indexed family over one lattice, the input to glb/lub.
#[derive(Debug, Clone)]
pub struct SublatticeFamily {
    members: Vec<Sublattice>,
}

impl SublatticeFamily {
    pub fn new(members: Vec<Sublattice>) -> Self {
        assert!(!members.is_empty(), "a sublattice family must be nonempty");
        let n = members[0].carrier.universe_size();
        assert!(
            members.iter().all(|m| m.carrier.universe_size() == n),
            "family members must live over the same lattice"
        );
        SublatticeFamily { members }
    }

    pub fn members(&self) -> &[Sublattice] {
        &self.members
    }
}

/// True iff `s` is nonempty and closed under binary meet and join.
pub fn is_sublattice(l: &Lattice, s: &ElementSet) -> bool {
    if s.is_empty() {
        return false;
    }
    let members: Vec<usize> = s.iter().collect();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if !s.contains(l.meet(x, y)) || !s.contains(l.join(x, y)) {
                return false;
            }
        }
    }
    true
}

/// The smallest sublattice containing `s`: alternating meet/join
/// saturation to a fixed point.
pub fn sublattice_closure(l: &Lattice, s: &ElementSet) -> Sublattice {
    assert!(!s.is_empty(), "closure of an empty set");
    let mut out = s.clone();
    let mut worklist: Vec<usize> = out.iter().collect();
    while let Some(x) = worklist.pop() {
        let members: Vec<usize> = out.iter().collect();
        for y in members {
            for z in [l.meet(x, y), l.join(x, y)] {
                if !out.contains(z) {
                    out.insert(z);
                    worklist.push(z);
                }
            }
        }
    }
    Sublattice { carrier: out }
}

/// All nonempty sublattices of `l`, each exactly once, sorted by carrier
/// bit pattern. Generation is breadth-first: seed with singletons, extend
/// each known sublattice by one element and re-close. Errors out (with
/// the partial count) once more than `cap` sublattices exist.
pub fn enumerate_sl(l: &Lattice, cap: usize) -> Result<Vec<Sublattice>, LatticeError> {
    let n = l.n();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut work: Vec<ElementSet> = Vec::new();
    for x in 0..n {
        let s = ElementSet::singleton(n, x);
        seen.insert(s.clone());
        work.push(s);
    }
    if seen.len() > cap {
        return Err(LatticeError::CapExceeded {
            cap,
            found: seen.len(),
        });
    }
    while let Some(s) = work.pop() {
        for e in 0..n {
            if s.contains(e) {
                continue;
            }
            let mut seed = s.clone();
            seed.insert(e);
            let t = sublattice_closure(l, &seed).carrier;
            if seen.insert(t.clone()) {
                if seen.len() > cap {
                    return Err(LatticeError::CapExceeded {
                        cap,
                        found: seen.len(),
                    });
                }
                work.push(t);
            }
        }
    }
    let mut out: Vec<Sublattice> = seen
        .into_iter()
        .map(|carrier| Sublattice { carrier })
        .collect();
    out.sort();
    Ok(out)
}

/// The Veinott order: `S ≤ᵛ T ⟺ ∀s∈S ∀t∈T. s∧t ∈ S and s∨t ∈ T`.
/// Defined on arbitrary nonempty sets; reflexivity holds exactly on
/// sublattices.
pub fn veinott_leq(l: &Lattice, s: &ElementSet, t: &ElementSet) -> bool {
    let ss: Vec<usize> = s.iter().collect();
    let ts: Vec<usize> = t.iter().collect();
    for &x in &ss {
        for &y in &ts {
            if !s.contains(l.meet(x, y)) || !t.contains(l.join(x, y)) {
                return false;
            }
        }
    }
    true
}

/// All members of `universe` that are ≤ᵛ every member of the family,
/// together with the maximal elements among them.
pub fn veinott_lower_bounds(
    l: &Lattice,
    family: &SublatticeFamily,
    universe: &[Sublattice],
) -> (Vec<Sublattice>, Vec<Sublattice>) {
    let bounds: Vec<Sublattice> = universe
        .iter()
        .filter(|u| {
            family
                .members()
                .iter()
                .all(|a| veinott_leq(l, &u.carrier, &a.carrier))
        })
        .cloned()
        .collect();
    let maximal: Vec<Sublattice> = bounds
        .iter()
        .filter(|b| {
            !bounds
                .iter()
                .any(|o| o.carrier != b.carrier && veinott_leq(l, &b.carrier, &o.carrier))
        })
        .cloned()
        .collect();
    (bounds, maximal)
}

/// The precomputed ≤ᵛ relation over an enumerated SL(C); the workhorse
/// behind `analyze` and the brute-force glb/lub oracles.
pub struct SlPoset {
    subs: Vec<Sublattice>,
    index: HashMap<ElementSet, usize>,
    /// below[i] = { j | subs[j] ≤ᵛ subs[i] } as a bitset over SL indices.
    below: Vec<ElementSet>,
    above: Vec<ElementSet>,
}

impl SlPoset {
    pub fn new(l: &Lattice, subs: Vec<Sublattice>) -> Self {
        let m = subs.len();
        let mut below = vec![ElementSet::empty(m); m];
        let mut above = vec![ElementSet::empty(m); m];
        for i in 0..m {
            for j in 0..m {
                if veinott_leq(l, &subs[i].carrier, &subs[j].carrier) {
                    below[j].insert(i);
                    above[i].insert(j);
                }
            }
        }
        let index = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.carrier.clone(), i))
            .collect();
        SlPoset {
            subs,
            index,
            below,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn sublattices(&self) -> &[Sublattice] {
        &self.subs
    }

    pub fn index_of(&self, carrier: &ElementSet) -> Option<usize> {
        self.index.get(carrier).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// Indices of common ≤ᵛ lower bounds of the given members.
    pub fn lower_bound_set(&self, members: &[usize]) -> ElementSet {
        members
            .iter()
            .map(|&i| self.below[i].clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| ElementSet::full(self.len()))
    }

    pub fn upper_bound_set(&self, members: &[usize]) -> ElementSet {
        members
            .iter()
            .map(|&i| self.above[i].clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| ElementSet::full(self.len()))
    }

    pub fn maximal_of(&self, set: &ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&k| self.above[k].intersection(set).len() == 1)
            .collect()
    }

    pub fn minimal_of(&self, set: &ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&k| self.below[k].intersection(set).len() == 1)
            .collect()
    }

    /// The greatest element of `set` under ≤ᵛ, if it has one: climb from
    /// any element to a maximal one, then check it dominates the whole
    /// set. If the set has a greatest element every climb reaches it.
    pub fn greatest_of(&self, set: &ElementSet) -> Option<usize> {
        let mut k = set.first()?;
        loop {
            let mut strictly_above = self.above[k].intersection(set);
            strictly_above.remove(k);
            match strictly_above.first() {
                Some(next) => k = next,
                None => break,
            }
        }
        set.is_subset(&self.below[k]).then_some(k)
    }

    pub fn least_of(&self, set: &ElementSet) -> Option<usize> {
        let mut k = set.first()?;
        loop {
            let mut strictly_below = self.below[k].intersection(set);
            strictly_below.remove(k);
            match strictly_below.first() {
                Some(next) => k = next,
                None => break,
            }
        }
        set.is_subset(&self.above[k]).then_some(k)
    }

    /// Pairwise (or family) glb in ⟨SL, ≤ᵛ⟩, if it exists.
    pub fn glb(&self, members: &[usize]) -> Option<usize> {
        self.greatest_of(&self.lower_bound_set(members))
    }

    pub fn lub(&self, members: &[usize]) -> Option<usize> {
        self.least_of(&self.upper_bound_set(members))
    }
}

/// Brute-force Veinott glb over a pre-enumerated universe.
pub fn veinott_glb_bruteforce_in(
    l: &Lattice,
    family: &SublatticeFamily,
    universe: &[Sublattice],
) -> Option<Sublattice> {
    let (bounds, maximal) = veinott_lower_bounds(l, family, universe);
    if maximal.len() != 1 {
        return None;
    }
    let g = &maximal[0];
    bounds
        .iter()
        .all(|b| veinott_leq(l, &b.carrier, &g.carrier))
        .then(|| g.clone())
}

/// Brute-force Veinott glb: enumerates SL(C) (subject to `cap`) and tests
/// every candidate. The independent oracle for `veinott_glb_formula`.
pub fn veinott_glb_bruteforce(
    l: &Lattice,
    family: &SublatticeFamily,
    cap: usize,
) -> Result<Option<Sublattice>, LatticeError> {
    let universe = enumerate_sl(l, cap)?;
    Ok(veinott_glb_bruteforce_in(l, family, &universe))
}

pub fn veinott_lub_bruteforce_in(
    l: &Lattice,
    family: &SublatticeFamily,
    universe: &[Sublattice],
) -> Option<Sublattice> {
    let bounds: Vec<&Sublattice> = universe
        .iter()
        .filter(|u| {
            family
                .members()
                .iter()
                .all(|a| veinott_leq(l, &a.carrier, &u.carrier))
        })
        .collect();
    let minimal: Vec<&&Sublattice> = bounds
        .iter()
        .filter(|b| {
            !bounds
                .iter()
                .any(|o| o.carrier != b.carrier && veinott_leq(l, &o.carrier, &b.carrier))
        })
        .collect();
    if minimal.len() != 1 {
        return None;
    }
    let g: &Sublattice = minimal[0];
    bounds
        .iter()
        .all(|b| veinott_leq(l, &g.carrier, &b.carrier))
        .then(|| g.clone())
}

pub fn veinott_lub_bruteforce(
    l: &Lattice,
    family: &SublatticeFamily,
    cap: usize,
) -> Result<Option<Sublattice>, LatticeError> {
    let universe = enumerate_sl(l, cap)?;
    Ok(veinott_lub_bruteforce_in(l, family, &universe))
}

/// The closed-form glb on a distributive lattice:
/// `U = M*(∪Aᵢ)`, `G = {x ∈ U | ∀k. U ∩ ↓x ≤ᵛ A_k}`.
///
/// Refuses non-distributive lattices: there the construction has no
/// guarantee (on the pentagon no glb exists at all), so callers are
/// directed to the brute-force oracle instead.
pub fn veinott_glb_formula(
    l: &Lattice,
    family: &SublatticeFamily,
) -> Result<Sublattice, LatticeError> {
    if !l.is_distributive() {
        return Err(LatticeError::NotDistributive);
    }
    let union = family
        .members()
        .iter()
        .map(|a| a.carrier.clone())
        .reduce(|a, b| a.union(&b))
        .unwrap();
    let u = l.moore_closure(&union);
    let g = ElementSet::from_indices(
        l.n(),
        u.iter().filter(|&x| {
            let principal = u.intersection(&l.down_set(x));
            family
                .members()
                .iter()
                .all(|a| veinott_leq(l, &principal, &a.carrier))
        }),
    );
    debug_assert!(is_sublattice(l, &g));
    Ok(Sublattice { carrier: g })
}

/// The closed-form lub, obtained by running the glb construction in the
/// dual lattice (where ≤ᵛ reverses) and mapping the carrier back.
pub fn veinott_lub_formula(
    l: &Lattice,
    family: &SublatticeFamily,
) -> Result<Sublattice, LatticeError> {
    let g = veinott_glb_formula(&l.dual(), family)?;
    Ok(Sublattice { carrier: g.carrier })
}

/// `Z^⊥ = {x ∨ ⊥ | x ∈ Z}` where `⊥ = ⋀ᵢ ⋀Aᵢ`. For a lower bound `Z` of
/// the family on a distributive lattice this lands inside the formula
/// glb, with `Z ≤ᵛ Z^⊥` and `Z^⊥ ≤ᵛ Aᵢ` for every member.
pub fn bottom_shift(
    l: &Lattice,
    z: &Sublattice,
    family: &SublatticeFamily,
) -> Result<Sublattice, LatticeError> {
    if !l.is_distributive() {
        return Err(LatticeError::NotDistributive);
    }
    for a in family.members() {
        if !veinott_leq(l, &z.carrier, &a.carrier) {
            return Err(LatticeError::NotALowerBound(z.labels(l).join(",")));
        }
    }
    let family_bottom = family
        .members()
        .iter()
        .map(|a| l.meet_set(&a.carrier))
        .reduce(|a, b| l.meet(a, b))
        .unwrap();
    let carrier =
        ElementSet::from_indices(l.n(), z.carrier.iter().map(|x| l.join(x, family_bottom)));
    Sublattice::new(l, carrier)
}

/// Analysis verdict for ⟨SL(C), ≤ᵛ⟩.
#[derive(Debug, Clone)]
pub struct VeinottVerdict {
    pub is_lattice: bool,
    pub sl_size: usize,
    pub failure: Option<VeinottFailure>,
}

/// A pair of sublattices with no ≤ᵛ glb, plus the (two or more) maximal
/// common lower bounds witnessing the failure.
#[derive(Debug, Clone)]
pub struct VeinottFailure {
    pub left: Sublattice,
    pub right: Sublattice,
    pub maximal_lower_bounds: Vec<Sublattice>,
}

/// Decides whether ⟨SL(C), ≤ᵛ⟩ is a lattice by enumerating SL(C) and
/// checking every pair for a glb. Since SL(C) is finite with greatest
/// element {⊤}, pairwise glbs imply pairwise lubs, so a glb scan decides
/// the whole question; on failure the first failing pair in canonical
/// order is reported.
pub fn analyze(l: &Lattice, cap: usize) -> Result<VeinottVerdict, LatticeError> {
    let subs = enumerate_sl(l, cap)?;
    let poset = SlPoset::new(l, subs);
    let m = poset.len();
    for i in 0..m {
        for j in i + 1..m {
            let lb = poset.lower_bound_set(&[i, j]);
            if poset.greatest_of(&lb).is_none() {
                let maximal = poset
                    .maximal_of(&lb)
                    .into_iter()
                    .map(|k| poset.sublattices()[k].clone())
                    .collect();
                return Ok(VeinottVerdict {
                    is_lattice: false,
                    sl_size: m,
                    failure: Some(VeinottFailure {
                        left: poset.sublattices()[i].clone(),
                        right: poset.sublattices()[j].clone(),
                        maximal_lower_bounds: maximal,
                    }),
                });
            }
        }
    }
    Ok(VeinottVerdict {
        is_lattice: true,
        sl_size: m,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogSpec};
    use proptest::prelude::*;

    fn n5() -> Lattice {
        build(&CatalogSpec::N5).unwrap()
    }

    fn sub(l: &Lattice, names: &[&str]) -> Sublattice {
        Sublattice::from_names(l, names).unwrap()
    }

    #[test]
    fn sublattice_recognition() {
        let l = n5();
        assert!(is_sublattice(&l, &l.set_of(&["e", "d"]).unwrap()));
        assert!(is_sublattice(&l, &l.set_of(&["a", "b", "c", "e"]).unwrap()));
        assert!(!is_sublattice(&l, &l.set_of(&["b", "c"]).unwrap()));
        for x in 0..l.n() {
            assert!(is_sublattice(&l, &ElementSet::singleton(l.n(), x)));
        }
        assert!(!is_sublattice(&l, &ElementSet::empty(l.n())));
    }

    #[test]
    fn closure_examples() {
        let l = n5();
        let c = sublattice_closure(&l, &l.set_of(&["b", "c"]).unwrap());
        assert_eq!(c.labels(&l), ["a", "b", "c", "e"]);
        let s = l.set_of(&["e", "d"]).unwrap();
        assert_eq!(sublattice_closure(&l, &s).carrier(), &s);
        let bt = l.set_of(&["a", "e"]).unwrap();
        assert_eq!(sublattice_closure(&l, &bt).carrier(), &bt);
    }

    /// Independent oracle: scan all 2^n subsets.
    fn sl_by_subset_scan(l: &Lattice) -> Vec<ElementSet> {
        let n = l.n();
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let s = ElementSet::from_indices(n, (0..n).filter(|&x| mask >> x & 1 == 1));
            if is_sublattice(l, &s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_subset_scan() {
        for spec in [
            CatalogSpec::N5,
            CatalogSpec::M3,
            CatalogSpec::Chain(2),
            CatalogSpec::Chain(3),
            CatalogSpec::Boolean(2),
        ] {
            let l = build(&spec).unwrap();
            let fast: Vec<ElementSet> = enumerate_sl(&l, 100_000)
                .unwrap()
                .into_iter()
                .map(|s| s.carrier)
                .collect();
            assert_eq!(fast, sl_by_subset_scan(&l), "mismatch for {spec:?}");
        }
    }

    #[test]
    fn chain2_has_all_seven_subsets() {
        let l = build(&CatalogSpec::Chain(2)).unwrap();
        assert_eq!(enumerate_sl(&l, 100).unwrap().len(), 7);
    }

    #[test]
    fn singleton_lattice_has_one_sublattice() {
        let l = build(&CatalogSpec::Chain(0)).unwrap();
        assert_eq!(enumerate_sl(&l, 100).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_cap() {
        let l = build(&CatalogSpec::Chain(4)).unwrap();
        match enumerate_sl(&l, 3) {
            Err(LatticeError::CapExceeded { cap: 3, found }) => assert!(found > 3),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn veinott_order_examples() {
        let l = n5();
        let ed = l.set_of(&["e", "d"]).unwrap();
        let ab = l.set_of(&["a", "b"]).unwrap();
        let ac = l.set_of(&["a", "c"]).unwrap();
        assert!(veinott_leq(&l, &ab, &ed));
        assert!(veinott_leq(&l, &ac, &ed));
        assert!(!veinott_leq(&l, &ab, &ac));
        assert!(!veinott_leq(&l, &ac, &ab));
        // Reflexivity holds exactly on sublattices.
        assert!(veinott_leq(&l, &ed, &ed));
        let bc = l.set_of(&["b", "c"]).unwrap();
        assert!(!veinott_leq(&l, &bc, &bc));
    }

    #[test]
    fn n5_lower_bounds_of_ed_abce() {
        let l = n5();
        let universe = enumerate_sl(&l, 100_000).unwrap();
        let family = SublatticeFamily::new(vec![sub(&l, &["e", "d"]), sub(&l, &["a", "b", "c", "e"])]);
        let (bounds, maximal) = veinott_lower_bounds(&l, &family, &universe);
        let bound_names: Vec<Vec<String>> = bounds.iter().map(|s| s.labels(&l)).collect();
        assert_eq!(bound_names, [vec!["a"], vec!["a", "b"], vec!["a", "c"]]);
        let max_names: Vec<Vec<String>> = maximal.iter().map(|s| s.labels(&l)).collect();
        assert_eq!(max_names, [vec!["a", "b"], vec!["a", "c"]]);
    }

    #[test]
    fn singleton_family_lower_bounds() {
        let l = n5();
        let universe = enumerate_sl(&l, 100_000).unwrap();
        let s = sub(&l, &["e", "d"]);
        let family = SublatticeFamily::new(vec![s.clone()]);
        let (bounds, maximal) = veinott_lower_bounds(&l, &family, &universe);
        assert!(bounds
            .iter()
            .all(|u| veinott_leq(&l, &u.carrier, &s.carrier)));
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0], s);
    }

    #[test]
    fn m3_incomparable_lower_bounds() {
        let l = build(&CatalogSpec::M3).unwrap();
        let universe = enumerate_sl(&l, 100_000).unwrap();
        let family = SublatticeFamily::new(vec![sub(&l, &["e", "b"]), sub(&l, &["e", "c"])]);
        let (bounds, _) = veinott_lower_bounds(&l, &family, &universe);
        let abce = sub(&l, &["a", "b", "c", "e"]);
        let abcde = sub(&l, &["a", "b", "c", "d", "e"]);
        assert!(bounds.contains(&abce));
        assert!(bounds.contains(&abcde));
        assert!(!veinott_leq(&l, &abce.carrier, &abcde.carrier));
        assert!(!veinott_leq(&l, &abcde.carrier, &abce.carrier));
        assert!(veinott_glb_bruteforce(&l, &family, 100_000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn bruteforce_glb_examples() {
        let l = n5();
        let family =
            SublatticeFamily::new(vec![sub(&l, &["e", "d"]), sub(&l, &["a", "b", "c", "e"])]);
        assert!(veinott_glb_bruteforce(&l, &family, 100_000).unwrap().is_none());

        let s = sub(&l, &["a", "b"]);
        let idem = SublatticeFamily::new(vec![s.clone(), s.clone()]);
        assert_eq!(veinott_glb_bruteforce(&l, &idem, 100_000).unwrap(), Some(s));

        let b2 = build(&CatalogSpec::Boolean(2)).unwrap();
        let family = SublatticeFamily::new(vec![sub(&b2, &["bot", "p"]), sub(&b2, &["bot", "q"])]);
        let glb = veinott_glb_bruteforce(&b2, &family, 100_000).unwrap().unwrap();
        assert_eq!(glb.labels(&b2), ["bot"]);
    }

    #[test]
    fn formula_glb_examples() {
        let b2 = build(&CatalogSpec::Boolean(2)).unwrap();
        let family = SublatticeFamily::new(vec![sub(&b2, &["bot", "p"]), sub(&b2, &["bot", "q"])]);
        let g = veinott_glb_formula(&b2, &family).unwrap();
        assert_eq!(g.labels(&b2), ["bot"]);
        assert_eq!(
            Some(g),
            veinott_glb_bruteforce(&b2, &family, 100_000).unwrap()
        );

        // Singleton family: G = S.
        for spec in [CatalogSpec::Boolean(2), CatalogSpec::Chain(3), CatalogSpec::Divisor(12)] {
            let l = build(&spec).unwrap();
            for s in enumerate_sl(&l, 100_000).unwrap() {
                let family = SublatticeFamily::new(vec![s.clone()]);
                assert_eq!(veinott_glb_formula(&l, &family).unwrap(), s);
            }
        }

        // {top} is the greatest element, so glb({top}, A) is a lower bound of A.
        let l = build(&CatalogSpec::Chain(3)).unwrap();
        let top = Sublattice::new(&l, ElementSet::singleton(l.n(), l.top())).unwrap();
        for a in enumerate_sl(&l, 100_000).unwrap() {
            let family = SublatticeFamily::new(vec![top.clone(), a.clone()]);
            let g = veinott_glb_formula(&l, &family).unwrap();
            assert!(veinott_leq(&l, &g.carrier, &a.carrier));
        }
    }

    #[test]
    fn formula_refuses_nondistributive() {
        let l = n5();
        let family = SublatticeFamily::new(vec![sub(&l, &["e", "d"])]);
        assert!(matches!(
            veinott_glb_formula(&l, &family),
            Err(LatticeError::NotDistributive)
        ));
        assert!(matches!(
            veinott_lub_formula(&l, &family),
            Err(LatticeError::NotDistributive)
        ));
    }

    #[test]
    fn formula_lub_examples() {
        let b2 = build(&CatalogSpec::Boolean(2)).unwrap();
        let family = SublatticeFamily::new(vec![sub(&b2, &["p", "top"]), sub(&b2, &["q", "top"])]);
        let g = veinott_lub_formula(&b2, &family).unwrap();
        assert_eq!(g.labels(&b2), ["top"]);

        let chain = build(&CatalogSpec::Chain(3)).unwrap();
        let family = SublatticeFamily::new(vec![sub(&chain, &["0"]), sub(&chain, &["2"])]);
        let g = veinott_lub_formula(&chain, &family).unwrap();
        assert_eq!(g.labels(&chain), ["2"]);
        assert_eq!(
            Some(g),
            veinott_lub_bruteforce(&chain, &family, 100_000).unwrap()
        );

        let family = SublatticeFamily::new(vec![sub(&chain, &["1", "2"])]);
        assert_eq!(
            veinott_lub_formula(&chain, &family).unwrap(),
            sub(&chain, &["1", "2"])
        );
    }

    #[test]
    fn bottom_shift_examples() {
        let b2 = build(&CatalogSpec::Boolean(2)).unwrap();
        let family = SublatticeFamily::new(vec![sub(&b2, &["bot", "p"]), sub(&b2, &["bot", "q"])]);
        let z = sub(&b2, &["bot"]);
        let shifted = bottom_shift(&b2, &z, &family).unwrap();
        assert_eq!(shifted.labels(&b2), ["bot"]);

        // Family bottom is p, so the shift moves {bot,p} up to {p}.
        let family = SublatticeFamily::new(vec![sub(&b2, &["p", "top"]), sub(&b2, &["top"])]);
        let z = sub(&b2, &["bot", "p"]);
        assert!(veinott_leq(&b2, &z.carrier, &family.members()[0].carrier));
        assert!(veinott_leq(&b2, &z.carrier, &family.members()[1].carrier));
        let shifted = bottom_shift(&b2, &z, &family).unwrap();
        assert_eq!(shifted.labels(&b2), ["p"]);
        // Postconditions from the construction.
        assert!(veinott_leq(&b2, &z.carrier, &shifted.carrier));
        for a in family.members() {
            assert!(veinott_leq(&b2, &shifted.carrier, &a.carrier));
        }
        let g = veinott_glb_formula(&b2, &family).unwrap();
        assert!(shifted.carrier.is_subset(&g.carrier));
    }

    #[test]
    fn bottom_shift_rejects_non_lower_bound() {
        let b2 = build(&CatalogSpec::Boolean(2)).unwrap();
        let family = SublatticeFamily::new(vec![sub(&b2, &["bot", "p"])]);
        let z = sub(&b2, &["q", "top"]);
        assert!(matches!(
            bottom_shift(&b2, &z, &family),
            Err(LatticeError::NotALowerBound(_))
        ));
    }

    #[test]
    fn analyze_verdicts() {
        let v = analyze(&n5(), 100_000).unwrap();
        assert!(!v.is_lattice);
        let f = v.failure.unwrap();
        assert!(f.maximal_lower_bounds.len() >= 2);
        // The witness is re-checkable: no greatest common lower bound.
        let l = n5();
        let universe = enumerate_sl(&l, 100_000).unwrap();
        let family = SublatticeFamily::new(vec![f.left, f.right]);
        assert!(veinott_glb_bruteforce_in(&l, &family, &universe).is_none());

        assert!(analyze(&build(&CatalogSpec::Boolean(2)).unwrap(), 100_000)
            .unwrap()
            .is_lattice);
        assert!(!analyze(&build(&CatalogSpec::M3).unwrap(), 100_000)
            .unwrap()
            .is_lattice);
    }

    #[test]
    fn top_singleton_is_greatest() {
        for spec in [CatalogSpec::N5, CatalogSpec::M3, CatalogSpec::Boolean(2)] {
            let l = build(&spec).unwrap();
            let top = ElementSet::singleton(l.n(), l.top());
            for s in enumerate_sl(&l, 100_000).unwrap() {
                assert!(veinott_leq(&l, s.carrier(), &top));
            }
        }
    }

    proptest! {
        /// Reflexivity of ≤ᵛ characterizes sublattices, on arbitrary
        /// nonempty subsets of the pentagon and of boolean(2).
        #[test]
        fn reflexive_iff_sublattice(mask in 1u64..512) {
            for spec in [CatalogSpec::N5, CatalogSpec::Boolean(2)] {
                let l = build(&spec).unwrap();
                let bits = mask & ((1 << l.n()) - 1);
                if bits == 0 { continue; }
                let s = ElementSet::from_indices(l.n(), (0..l.n()).filter(|&x| bits >> x & 1 == 1));
                prop_assert_eq!(veinott_leq(&l, &s, &s), is_sublattice(&l, &s));
            }
        }

        /// Transitivity over sublattices of the pentagon.
        #[test]
        fn transitive_on_n5(i in 0usize..32, j in 0usize..32, k in 0usize..32) {
            let l = n5();
            let subs = enumerate_sl(&l, 1000).unwrap();
            let (a, b, c) = (&subs[i % subs.len()], &subs[j % subs.len()], &subs[k % subs.len()]);
            if veinott_leq(&l, a.carrier(), b.carrier()) && veinott_leq(&l, b.carrier(), c.carrier()) {
                prop_assert!(veinott_leq(&l, a.carrier(), c.carrier()));
            }
        }
    }
}
