//! Affine automorphisms of the rational function field, finite groups of
//! them, conjugation orbits, stabilizers and double cosets.
//!
//! An automorphism acts by substitution `x_v -> scale[v] * x_{perm[v]} +
//! shift[v]`. The triple `(perm, scale, shift)` is the unique normal form;
//! the derived lexicographic order on those fields is the total order used
//! for canonical double-coset representatives.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_string, Rat};
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineAut {
    perm: Vec<u32>,
    scale: Vec<Rat>,
    shift: Vec<Rat>,
}

impl AffineAut {
    pub fn new(perm: Vec<u32>, scale: Vec<Rat>, shift: Vec<Rat>) -> Result<AffineAut> {
        let n = perm.len();
        if scale.len() != n || shift.len() != n {
            return Err(Error::Invalid("automorphism field lengths differ".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if (p as usize) >= n || seen[p as usize] {
                return Err(Error::Invalid("perm is not a bijection".into()));
            }
            seen[p as usize] = true;
        }
        if scale.iter().any(|s| s.is_zero()) {
            return Err(Error::Invalid("zero scale entry".into()));
        }
        Ok(AffineAut { perm, scale, shift })
    }

    pub fn identity(n: usize) -> AffineAut {
        AffineAut {
            perm: (0..n as u32).collect(),
            scale: vec![Rat::one(); n],
            shift: vec![Rat::zero(); n],
        }
    }

    pub fn pure_shift(shift: Vec<Rat>) -> AffineAut {
        let n = shift.len();
        AffineAut {
            perm: (0..n as u32).collect(),
            scale: vec![Rat::one(); n],
            shift,
        }
    }

    /// Unit shift of a single variable by `amount`.
    pub fn unit_shift(n: usize, var: usize, amount: Rat) -> AffineAut {
        let mut shift = vec![Rat::zero(); n];
        shift[var] = amount;
        AffineAut::pure_shift(shift)
    }

    pub fn permutation(perm: Vec<u32>) -> Result<AffineAut> {
        let n = perm.len();
        AffineAut::new(perm, vec![Rat::one(); n], vec![Rat::zero(); n])
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> AffineAut {
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.swap(a, b);
        AffineAut::permutation(perm).expect("valid transposition")
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn scale(&self) -> &[Rat] {
        &self.scale
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
            && self.scale.iter().all(|s| s.is_one())
            && self.shift.iter().all(|s| s.is_zero())
    }

    pub fn is_pure_shift(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
            && self.scale.iter().all(|s| s.is_one())
    }

    pub fn shift_vector(&self) -> Option<&[Rat]> {
        if self.is_pure_shift() {
            Some(&self.shift)
        } else {
            None
        }
    }

    /// `compose(a, b)` applies `b` first: `apply(compose(a,b), f) =
    /// apply(a, apply(b, f))`.
    pub fn compose(&self, other: &AffineAut) -> Result<AffineAut> {
        if self.nvars() != other.nvars() {
            return Err(Error::SettingMismatch);
        }
        let n = self.nvars();
        let mut perm = Vec::with_capacity(n);
        let mut scale = Vec::with_capacity(n);
        let mut shift = Vec::with_capacity(n);
        for v in 0..n {
            let w = other.perm[v] as usize;
            perm.push(self.perm[w]);
            scale.push(&other.scale[v] * &self.scale[w]);
            shift.push(&other.scale[v] * &self.shift[w] + &other.shift[v]);
        }
        Ok(AffineAut { perm, scale, shift })
    }

    pub fn invert(&self) -> AffineAut {
        let n = self.nvars();
        let mut inv_perm = vec![0u32; n];
        for (v, &p) in self.perm.iter().enumerate() {
            inv_perm[p as usize] = v as u32;
        }
        let mut perm = Vec::with_capacity(n);
        let mut scale = Vec::with_capacity(n);
        let mut shift = Vec::with_capacity(n);
        for v in 0..n {
            let w = inv_perm[v] as usize;
            perm.push(w as u32);
            let s = self.scale[w].clone().recip();
            shift.push(-(&self.shift[w] * &s));
            scale.push(s);
        }
        AffineAut { perm, scale, shift }
    }

    /// `g o phi o g^{-1}` (the fixed conjugation convention `phi^g`).
    pub fn conjugate_by(&self, g: &AffineAut) -> Result<AffineAut> {
        g.compose(&self.compose(&g.invert())?)
    }

    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc> {
        f.compose_affine(&self.perm, &self.scale, &self.shift)
    }

    pub fn apply_poly(&self, p: &crate::poly::Poly) -> Result<crate::poly::Poly> {
        p.compose_affine(&self.perm, &self.scale, &self.shift)
    }

    /// Image of an evaluation point: `(apply(self, f))(p) = f(point_image(p))`.
    pub fn point_image(&self, p: &[Rat]) -> Vec<Rat> {
        (0..self.nvars())
            .map(|v| &self.scale[v] * &p[self.perm[v] as usize] + &self.shift[v])
            .collect()
    }

    /// Extends to a larger variable set, acting as the identity elsewhere;
    /// `map[v]` is the new index of old variable `v`.
    pub fn embed(&self, total: usize, map: &[u32]) -> AffineAut {
        let mut out = AffineAut::identity(total);
        for v in 0..self.nvars() {
            let nv = map[v] as usize;
            out.perm[nv] = map[self.perm[v] as usize];
            out.scale[nv] = self.scale[v].clone();
            out.shift[nv] = self.shift[v].clone();
        }
        out
    }

    pub fn power(&self, k: i64) -> AffineAut {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = AffineAut::identity(self.nvars());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base).expect("same setting");
        }
        out
    }

    /// Short text form: `e`, `sh(..)` for pure shifts, or the full normal
    /// form. Only the shift form is accepted back by the parser.
    pub fn render(&self) -> String {
        if self.is_identity() {
            return "e".into();
        }
        if let Some(v) = self.shift_vector() {
            let body: Vec<String> = v.iter().map(rat_string).collect();
            return format!("sh({})", body.join(","));
        }
        let perm: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        let scale: Vec<String> = self.scale.iter().map(rat_string).collect();
        let shift: Vec<String> = self.shift.iter().map(rat_string).collect();
        format!(
            "aut{{perm=[{}];scale=[{}];shift=[{}]}}",
            perm.join(","),
            scale.join(","),
            shift.join(",")
        )
    }
}

/// A finite group of affine automorphisms, closed under composition and
/// inverse, with a deterministic element order.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    elements: Vec<AffineAut>,
    generators: Vec<AffineAut>,
    index: HashMap<AffineAut, usize>,
}

impl FiniteGroup {
    pub fn trivial(n: usize) -> FiniteGroup {
        FiniteGroup::from_closed_elements(vec![AffineAut::identity(n)], vec![])
    }

    /// Builds from an element list already closed under the group operations.
    pub fn from_closed_elements(mut elements: Vec<AffineAut>, generators: Vec<AffineAut>) -> FiniteGroup {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        FiniteGroup {
            elements,
            generators,
            index,
        }
    }

    /// Closure of the generators; `ClosureCapExceeded` past `cap` elements.
    pub fn closure(generators: Vec<AffineAut>, cap: usize) -> Result<FiniteGroup> {
        if cap == 0 {
            return Err(Error::Invalid("closure cap must be at least 1".into()));
        }
        let n = generators
            .first()
            .map(|g| g.nvars())
            .ok_or_else(|| Error::Invalid("no generators; use FiniteGroup::trivial".into()))?;
        if generators.iter().any(|g| g.nvars() != n) {
            return Err(Error::SettingMismatch);
        }
        let mut step: Vec<AffineAut> = generators.clone();
        step.extend(generators.iter().map(|g| g.invert()));
        let mut seen: BTreeSet<AffineAut> = BTreeSet::new();
        seen.insert(AffineAut::identity(n));
        let mut frontier: Vec<AffineAut> = vec![AffineAut::identity(n)];
        while let Some(a) = frontier.pop() {
            for g in &step {
                let next = g.compose(&a)?;
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureCapExceeded(cap));
                    }
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        Ok(FiniteGroup::from_closed_elements(
            seen.into_iter().collect(),
            generators,
        ))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn nvars(&self) -> usize {
        self.elements[0].nvars()
    }

    pub fn elements(&self) -> &[AffineAut] {
        &self.elements
    }

    pub fn generators(&self) -> &[AffineAut] {
        &self.generators
    }

    /// Generators when known, otherwise all elements. A property that cuts
    /// out a subgroup (fixing an element, normalizing a set) holds for the
    /// whole group iff it holds on these.
    pub fn checking_generators(&self) -> &[AffineAut] {
        if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }

    pub fn contains(&self, a: &AffineAut) -> bool {
        self.index.contains_key(a)
    }

    pub fn identity(&self) -> AffineAut {
        AffineAut::identity(self.nvars())
    }
}

/// Conjugation stabilizer, orbit and coset representatives of `phi` under
/// `G`. The orbit is duplicate-free and `orbit[i] = conjugate(reps[i], phi)`.
pub fn stabilizer_and_orbit(
    group: &FiniteGroup,
    phi: &AffineAut,
) -> Result<(FiniteGroup, Vec<AffineAut>, Vec<AffineAut>)> {
    let mut stab = Vec::new();
    let mut orbit: Vec<AffineAut> = Vec::new();
    let mut reps: Vec<AffineAut> = Vec::new();
    let mut seen: BTreeSet<AffineAut> = BTreeSet::new();
    for g in group.elements() {
        let c = phi.conjugate_by(g)?;
        if &c == phi {
            stab.push(g.clone());
        }
        if seen.insert(c.clone()) {
            orbit.push(c);
            reps.push(g.clone());
        }
    }
    let stab_group = FiniteGroup::from_closed_elements(stab, vec![]);
    debug_assert_eq!(orbit.len() * stab_group.order(), group.order());
    Ok((stab_group, orbit, reps))
}

/// The set `{g1 o phi o g2 : g1, g2 in G}`.
pub fn double_coset_set(group: &FiniteGroup, phi: &AffineAut) -> Result<BTreeSet<AffineAut>> {
    let mut out = BTreeSet::new();
    for g1 in group.elements() {
        let left = g1.compose(phi)?;
        for g2 in group.elements() {
            out.insert(left.compose(g2)?);
        }
    }
    Ok(out)
}

pub fn double_coset_equal(group: &FiniteGroup, phi: &AffineAut, psi: &AffineAut) -> Result<bool> {
    // psi in G phi G  iff  g1^{-1} psi g2^{-1} = phi for some pair; scan the
    // products of psi instead of materializing both cosets.
    for g1 in group.elements() {
        let left = g1.compose(psi)?;
        for g2 in group.elements() {
            if &left.compose(g2)? == phi {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Canonical double-coset data: the order-minimal representative, the
/// stabilizer order `|G n rep G rep^{-1}|` and the simple-class dimension
/// `|G : H|`. On a separating monoid the stabilizer agrees with the
/// conjugation stabilizer of the representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DoubleCoset {
    pub rep: AffineAut,
    pub stab_order: usize,
    pub orbit_size: usize,
}

pub fn canonical_double_coset(group: &FiniteGroup, phi: &AffineAut) -> Result<DoubleCoset> {
    let set = double_coset_set(group, phi)?;
    let rep = set.iter().next().expect("nonempty coset").clone();
    let g2 = group.order() * group.order();
    debug_assert_eq!(g2 % set.len(), 0);
    let stab_order = g2 / set.len();
    debug_assert_eq!(group.order() % stab_order, 0);
    let orbit_size = group.order() / stab_order;
    Ok(DoubleCoset {
        rep,
        stab_order,
        orbit_size,
    })
}

/// Partition of `G` by `g ~ g'  iff  G phi g psi G = G phi g' psi G`.
pub fn g_equivalence_classes(
    group: &FiniteGroup,
    phi: &AffineAut,
    psi: &AffineAut,
) -> Result<Vec<Vec<AffineAut>>> {
    let mut classes: std::collections::BTreeMap<AffineAut, Vec<AffineAut>> = Default::default();
    for g in group.elements() {
        let tau = phi.compose(g)?.compose(psi)?;
        let key = canonical_double_coset(group, &tau)?.rep;
        classes.entry(key).or_default().push(g.clone());
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn swap2() -> AffineAut {
        AffineAut::transposition(2, 0, 1)
    }

    fn sh(a: i64, b: i64) -> AffineAut {
        AffineAut::pure_shift(vec![rat(a), rat(b)])
    }

    fn s2() -> FiniteGroup {
        FiniteGroup::closure(vec![swap2()], 10).unwrap()
    }

    #[test]
    fn compose_and_invert() {
        let s = swap2();
        assert!(s.compose(&s).unwrap().is_identity());
        // shift(1,0) o swap = swap o shift(0,1)
        let lhs = sh(1, 0).compose(&s).unwrap();
        let rhs = s.compose(&sh(0, 1)).unwrap();
        assert_eq!(lhs, rhs);
        // invert(x -> 2x+1) = x -> (x-1)/2
        let a = AffineAut::new(vec![0], vec![rat(2)], vec![rat(1)]).unwrap();
        let inv = a.invert();
        assert!(a.compose(&inv).unwrap().is_identity());
        assert_eq!(inv.scale()[0], crate::rat::ratf(1, 2));
        assert_eq!(inv.shift()[0], crate::rat::ratf(-1, 2));
        // involution t -> 2 - t
        let e = AffineAut::new(vec![0], vec![rat(-1)], vec![rat(2)]).unwrap();
        assert!(e.compose(&e).unwrap().is_identity());
        assert_eq!(e.invert(), e);
        assert!(sh(-1, 0).compose(&sh(1, 0)).unwrap().is_identity());
    }

    #[test]
    fn conjugation() {
        let g = s2();
        let c = sh(1, 0).conjugate_by(&swap2()).unwrap();
        assert_eq!(c, sh(0, 1));
        assert_eq!(
            AffineAut::identity(2).conjugate_by(&swap2()).unwrap(),
            AffineAut::identity(2)
        );
        assert_eq!(sh(1, 0).conjugate_by(&g.identity()).unwrap(), sh(1, 0));
        // conjugate(g1 g2, phi) = conjugate(g1, conjugate(g2, phi))
        let phi = sh(2, -1);
        for g1 in g.elements() {
            for g2 in g.elements() {
                let lhs = phi.conjugate_by(&g1.compose(g2).unwrap()).unwrap();
                let rhs = phi.conjugate_by(g2).unwrap().conjugate_by(g1).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn closure_orders() {
        assert_eq!(s2().order(), 2);
        // adjacent transpositions of S2 x S3 on 5 variables -> order 12
        let g = FiniteGroup::closure(
            vec![
                AffineAut::transposition(5, 0, 1),
                AffineAut::transposition(5, 2, 3),
                AffineAut::transposition(5, 3, 4),
            ],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 12);
        // infinite cyclic: x -> x+1 exceeds any cap
        let shift1 = AffineAut::pure_shift(vec![rat(1)]);
        assert!(matches!(
            FiniteGroup::closure(vec![shift1], 100),
            Err(Error::ClosureCapExceeded(100))
        ));
    }

    #[test]
    fn orbit_stabilizer() {
        let g = s2();
        let (h, orbit, reps) = stabilizer_and_orbit(&g, &sh(1, 0)).unwrap();
        assert_eq!(h.order(), 1);
        assert_eq!(orbit, vec![sh(1, 0), sh(0, 1)]);
        assert_eq!(reps.len(), 2);
        let (h, orbit, _) = stabilizer_and_orbit(&g, &sh(1, 1)).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(orbit.len(), 1);
    }

    #[test]
    fn double_cosets() {
        let g = s2();
        let phi = sh(1, 0);
        let conj = phi.conjugate_by(&swap2()).unwrap();
        assert!(double_coset_equal(&g, &phi, &conj).unwrap());
        assert!(double_coset_equal(&g, &phi, &sh(0, 1)).unwrap());
        assert!(!double_coset_equal(&g, &phi, &sh(2, 0)).unwrap());
        let dc = canonical_double_coset(&g, &sh(0, 1)).unwrap();
        // orbit has two shifts; the order-minimal representative is chosen
        assert_eq!(dc.rep, sh(0, 1).min(sh(1, 0)));
        assert_eq!(dc.stab_order, 1);
        assert_eq!(dc.orbit_size, 2);
        let dc_e = canonical_double_coset(&g, &g.identity()).unwrap();
        assert_eq!(dc_e.rep, g.identity());
        assert_eq!(dc_e.orbit_size, 1);
    }

    #[test]
    fn equivalence_classes() {
        let g = s2();
        // phi = psi = shift(1,0): classes {e} and {swap}
        let classes = g_equivalence_classes(&g, &sh(1, 0), &sh(1, 0)).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 1));
        // phi = psi = identity: one class of size |G|
        let classes = g_equivalence_classes(&g, &g.identity(), &g.identity()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 2);
    }
}
