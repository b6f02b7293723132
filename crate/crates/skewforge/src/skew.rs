//! Elements of the skew group ring L * M and of the invariant subring
//! K = (L * M)^G: orbit-sum construction, the twisted product, supports,
//! bimodule projections, class decomposition and structure probes.
//!
//! Coefficients are stored on the left, `x = sum x_m . m`, and the product
//! twists the right coefficient by the left automorphism:
//! `(r1 m1)(r2 m2) = (r1 . m1(r2)) (m1 m2)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;


use crate::aut::{
    canonical_double_coset, stabilizer_and_orbit, AffineAut, DoubleCoset,
};
use crate::error::{Error, Result};
use crate::monoid::ShiftMonoid;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::setting::Setting;

#[derive(Debug, Clone)]
pub struct SkewElement {
    setting: Arc<Setting>,
    terms: BTreeMap<AffineAut, RatFunc>,
}

impl PartialEq for SkewElement {
    fn eq(&self, other: &Self) -> bool {
        compatible(&self.setting, &other.setting) && self.terms == other.terms
    }
}
impl Eq for SkewElement {}

fn compatible(a: &Arc<Setting>, b: &Arc<Setting>) -> bool {
    Arc::ptr_eq(a, b) || (a.label == b.label && a.nvars() == b.nvars())
}

impl SkewElement {
    pub fn zero(setting: Arc<Setting>) -> SkewElement {
        SkewElement {
            setting,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(setting: Arc<Setting>) -> SkewElement {
        SkewElement::scalar(setting, RatFunc::one()).expect("scalar in range")
    }

    /// `coeff * e` (identity automorphism).
    pub fn scalar(setting: Arc<Setting>, coeff: RatFunc) -> Result<SkewElement> {
        let e = AffineAut::identity(setting.nvars());
        SkewElement::term(setting, coeff, e)
    }

    /// Single term `coeff * aut`.
    pub fn term(setting: Arc<Setting>, coeff: RatFunc, aut: AffineAut) -> Result<SkewElement> {
        if aut.nvars() != setting.nvars() {
            return Err(Error::SettingMismatch);
        }
        if let Some(v) = coeff.max_var() {
            if v as usize >= setting.nvars() {
                return Err(Error::UnknownVariable(v));
            }
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(aut, coeff);
        }
        Ok(SkewElement { setting, terms })
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineAut, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, aut: &AffineAut) -> RatFunc {
        self.terms.get(aut).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> BTreeSet<AffineAut> {
        self.terms.keys().cloned().collect()
    }

    fn add_term(&mut self, aut: AffineAut, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(aut) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SkewElement) -> Result<SkewElement> {
        if !compatible(&self.setting, &other.setting) {
            return Err(Error::SettingMismatch);
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SkewElement) -> Result<SkewElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SkewElement {
        SkewElement {
            setting: self.setting.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> SkewElement {
        SkewElement {
            setting: self.setting.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(a, k)| {
                    let s = k.scale(c);
                    if s.is_zero() {
                        None
                    } else {
                        Some((a.clone(), s))
                    }
                })
                .collect(),
        }
    }

    /// Skew product: bilinear extension of `(r1 m1)(r2 m2) = r1 m1(r2) m1 m2`.
    pub fn mul(&self, other: &SkewElement) -> Result<SkewElement> {
        if !compatible(&self.setting, &other.setting) {
            return Err(Error::SettingMismatch);
        }
        let mut out = SkewElement::zero(self.setting.clone());
        for (m1, r1) in &self.terms {
            for (m2, r2) in &other.terms {
                let twisted = m1.apply(r2)?;
                out.add_term(m1.compose(m2)?, r1.mul(&twisted));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<SkewElement> {
        let mut out = SkewElement::one(self.setting.clone());
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &SkewElement) -> Result<SkewElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Multiplicative inverse of a single-term element `c * m`.
    pub fn invert_single(&self) -> Result<SkewElement> {
        if self.terms.len() != 1 {
            return Err(Error::Invalid(
                "only single-term elements are invertible here".into(),
            ));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let minv = m.invert();
        let coeff = minv.apply(&c.recip()?)?;
        SkewElement::term(self.setting.clone(), coeff, minv)
    }

    /// Exact invariance test: `x_{m^g} = g(x_m)` for all g and m.
    pub fn is_invariant(&self) -> Result<bool> {
        for g in self.setting.group.elements() {
            for (m, c) in &self.terms {
                let key = m.conjugate_by(g)?;
                let expect = g.apply(c)?;
                if self.terms.get(&key) != Some(&expect) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Drops terms outside `s`; idempotent.
    pub fn restrict_support(&self, s: &BTreeSet<AffineAut>) -> SkewElement {
        SkewElement {
            setting: self.setting.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| s.contains(*a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = self.setting.var_names();
        let mut parts = Vec::new();
        for (a, c) in &self.terms {
            parts.push(format!("{} * {}", render_coeff(c, &names), a.render()));
        }
        parts.join(" + ")
    }
}

fn render_coeff(c: &RatFunc, names: &[String]) -> String {
    let body = c.render(names);
    if c.is_polynomial() && c.num().num_terms() <= 1 && !body.starts_with('-') {
        body
    } else if body.starts_with('(') {
        body
    } else {
        format!("({body})")
    }
}

/// A skew element that passed the G-invariance check at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantElement(SkewElement);

impl InvariantElement {
    pub fn new(x: SkewElement) -> Result<InvariantElement> {
        if !x.is_invariant()? {
            return Err(Error::Invalid("element is not G-invariant".into()));
        }
        Ok(InvariantElement(x))
    }

    pub fn zero(setting: Arc<Setting>) -> InvariantElement {
        InvariantElement(SkewElement::zero(setting))
    }

    pub fn as_skew(&self) -> &SkewElement {
        &self.0
    }

    pub fn into_skew(self) -> SkewElement {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn support(&self) -> BTreeSet<AffineAut> {
        self.0.support()
    }

    pub fn setting(&self) -> &Arc<Setting> {
        self.0.setting()
    }

    pub fn add(&self, other: &InvariantElement) -> Result<InvariantElement> {
        Ok(InvariantElement(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &InvariantElement) -> Result<InvariantElement> {
        Ok(InvariantElement(self.0.sub(&other.0)?))
    }

    /// Product of invariants is invariant; verified exactly.
    pub fn mul(&self, other: &InvariantElement) -> Result<InvariantElement> {
        InvariantElement::new(self.0.mul(&other.0)?)
    }

    pub fn commutator(&self, other: &InvariantElement) -> Result<InvariantElement> {
        InvariantElement::new(self.0.commutator(&other.0)?)
    }

    pub fn render(&self) -> String {
        self.0.render()
    }
}

/// The orbit sum `[a phi] = sum_{g in G/H_phi} a^g phi^g`.
///
/// `a` must be fixed by the conjugation stabilizer of `phi`; a zero `a`
/// yields the zero element.
pub fn make_invariant(
    setting: &Arc<Setting>,
    a: &RatFunc,
    phi: &AffineAut,
) -> Result<InvariantElement> {
    if phi.nvars() != setting.nvars() {
        return Err(Error::SettingMismatch);
    }
    if a.is_zero() {
        return Ok(InvariantElement::zero(setting.clone()));
    }
    if let Some(v) = a.max_var() {
        if v as usize >= setting.nvars() {
            return Err(Error::UnknownVariable(v));
        }
    }
    let (stab, orbit, reps) = stabilizer_and_orbit(&setting.group, phi)?;
    for h in stab.elements() {
        if &h.apply(a)? != a {
            return Err(Error::NotStabilizerInvariant);
        }
    }
    let mut out = SkewElement::zero(setting.clone());
    for (conj, rep) in orbit.iter().zip(reps.iter()) {
        out.add_term(conj.clone(), rep.apply(a)?);
    }
    InvariantElement::new(out)
}

/// `x . (gamma e) . y` for a Gamma scalar; support lands in the orbit
/// product of the factors.
pub fn invariant_mul(
    x: &InvariantElement,
    gamma: &RatFunc,
    y: &InvariantElement,
) -> Result<InvariantElement> {
    let setting = x.setting();
    if !setting.is_gamma(gamma)? {
        return Err(Error::NotGammaElement);
    }
    let middle = SkewElement::scalar(setting.clone(), gamma.clone())?;
    InvariantElement::new(x.as_skew().mul(&middle)?.mul(y.as_skew())?)
}

/// Applies the bimodule operator `f_T, T = supp x \ S`:
/// `u -> prod_{t in T} (f u - u f^{t^{-1}})`. The result has support in `S`.
pub fn project_component(
    x: &InvariantElement,
    s: &BTreeSet<AffineAut>,
    f: &RatFunc,
) -> Result<InvariantElement> {
    let setting = x.setting();
    if !setting.is_gamma(f)? {
        return Err(Error::NotGammaElement);
    }
    let supp = x.support();
    if !s.iter().all(|a| supp.contains(a)) {
        return Err(Error::Invalid("target set is not inside the support".into()));
    }
    let fe = SkewElement::scalar(setting.clone(), f.clone())?;
    let mut u = x.as_skew().clone();
    for t in supp.difference(s) {
        let ft = t.invert().apply(f)?;
        let fte = SkewElement::scalar(setting.clone(), ft)?;
        u = fe.mul(&u)?.sub(&u.mul(&fte)?)?;
    }
    debug_assert!(u.support().is_subset(s));
    InvariantElement::new(u)
}

/// Searches Gamma for an `f` whose projection operator is nonzero on every
/// member of `S`, then applies it. Candidates: the Gamma generators, their
/// pairwise sums and products, and small integer translates; capped at 100.
pub fn project_component_auto(
    x: &InvariantElement,
    s: &BTreeSet<AffineAut>,
) -> Result<(InvariantElement, RatFunc)> {
    let setting = x.setting();
    let supp = x.support();
    let t: Vec<AffineAut> = supp.difference(s).cloned().collect();
    for f in gamma_candidates(setting, 100) {
        // Diagonal scalar on key m is prod_{t}(f - f^{m t^{-1}}): nonzero on
        // all of S means the operator embeds U(S) intact.
        let mut ok = true;
        'keys: for m in s {
            let mut scalar = RatFunc::one();
            for tt in &t {
                let mts = m.compose(&tt.invert())?;
                let moved = mts.apply(&f)?;
                scalar = scalar.mul(&f.sub(&moved));
                if scalar.is_zero() {
                    ok = false;
                    break 'keys;
                }
            }
        }
        if ok {
            let projected = project_component(x, s, &f)?;
            return Ok((projected, f));
        }
    }
    Err(Error::ProjectionSearchFailed)
}

/// Candidate Gamma elements for searches: generators, pairwise sums and
/// products, and generators shifted by small integers.
pub fn gamma_candidates(setting: &Arc<Setting>, cap: usize) -> Vec<RatFunc> {
    let gens = setting.gamma_gens();
    let mut out: Vec<RatFunc> = Vec::new();
    out.extend(gens.iter().cloned());
    'outer: for i in 0..gens.len() {
        for j in i..gens.len() {
            out.push(gens[i].add(&gens[j]));
            out.push(gens[i].mul(&gens[j]));
            if out.len() >= cap {
                break 'outer;
            }
        }
    }
    for k in 1..=3i64 {
        for g in gens {
            out.push(g.add(&RatFunc::constant(crate::rat::rat(k))));
            if out.len() >= cap {
                return out;
            }
        }
    }
    out.truncate(cap);
    out
}

/// One double coset per G-orbit of the support.
pub fn decompose_bimodule_classes(x: &InvariantElement) -> Result<Vec<DoubleCoset>> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let setting = x.setting();
    let mut seen: BTreeSet<AffineAut> = BTreeSet::new();
    let mut out: Vec<DoubleCoset> = Vec::new();
    for m in x.support() {
        if seen.contains(&m) {
            continue;
        }
        let (_, orbit, _) = stabilizer_and_orbit(&setting.group, &m)?;
        seen.extend(orbit);
        let dc = canonical_double_coset(&setting.group, &m)?;
        if !out.iter().any(|d| d.rep == dc.rep) {
            out.push(dc);
        }
    }
    out.sort();
    Ok(out)
}

/// Center test: support inside {e}, coefficient G-invariant and fixed by
/// every monoid generator.
pub fn center_membership(x: &InvariantElement) -> Result<bool> {
    let setting = x.setting();
    let e = AffineAut::identity(setting.nvars());
    for (m, _) in x.as_skew().terms() {
        if m != &e {
            return Ok(false);
        }
    }
    let c = x.as_skew().coeff(&e);
    if c.is_zero() {
        return Ok(true);
    }
    if !setting.is_g_invariant(&c)? {
        return Ok(false);
    }
    for m in setting.monoid.generator_auts() {
        if m.apply(&c)? != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `supp x` not inside {e}: a Gamma element `gamma` with
/// `gamma x != x gamma`, verified by the skew product. `None` when the
/// support is inside {e}.
pub fn noncommute_witness(x: &InvariantElement) -> Result<Option<RatFunc>> {
    let setting = x.setting();
    let e = AffineAut::identity(setting.nvars());
    let Some(m) = x.support().into_iter().find(|m| m != &e) else {
        return Ok(None);
    };
    for gamma in gamma_candidates(setting, 100) {
        if m.apply(&gamma)? != gamma {
            let ge = SkewElement::scalar(setting.clone(), gamma.clone())?;
            let diff = ge.mul(x.as_skew())?.sub(&x.as_skew().mul(&ge)?)?;
            if !diff.is_zero() {
                return Ok(Some(gamma));
            }
        }
    }
    Ok(None)
}

/// Whether the supports of the given elements generate M as a semigroup.
///
/// Lattice case: the support shift vectors must span the lattice over Z and
/// their rational cone must be the whole space (then every lattice point is
/// a nonnegative combination). Finite case: closure under composition must
/// reach every element.
pub fn galois_generator_check(
    setting: &Arc<Setting>,
    gens: &[InvariantElement],
) -> Result<bool> {
    let mut supports: BTreeSet<AffineAut> = BTreeSet::new();
    for g in gens {
        supports.extend(g.support());
    }
    match &setting.monoid {
        ShiftMonoid::Lattice { basis } => {
            if supports.is_empty() {
                return Ok(false);
            }
            let rank = basis.len();
            let mut vecs: Vec<Vec<num_bigint::BigInt>> = Vec::new();
            for m in &supports {
                let Some(v) = m.shift_vector() else {
                    return Err(Error::UnsupportedMonoid);
                };
                let coords = setting
                    .monoid
                    .lattice_coords(v)
                    .ok_or(Error::UnsupportedMonoid)?;
                if !coords.iter().all(crate::rat::is_integer) {
                    return Err(Error::UnsupportedMonoid);
                }
                if m.is_identity() {
                    continue;
                }
                vecs.push(coords.iter().map(|c| c.numer().clone()).collect());
            }
            if rank == 0 {
                return Ok(true);
            }
            if vecs.is_empty() {
                return Ok(false);
            }
            Ok(crate::linalg::spans_full_integer_lattice(&vecs, rank)
                && crate::linalg::cone_is_full_space(&vecs, rank))
        }
        ShiftMonoid::Finite { elements } => {
            if supports.is_empty() {
                return Ok(false);
            }
            let mut closed: BTreeSet<AffineAut> = supports.clone();
            closed.insert(setting.group.identity());
            loop {
                let mut new = Vec::new();
                for a in &closed {
                    for b in &closed {
                        let c = a.compose(b)?;
                        if !closed.contains(&c) {
                            new.push(c);
                        }
                    }
                }
                if new.is_empty() {
                    break;
                }
                closed.extend(new);
            }
            Ok(elements.iter().all(|m| closed.contains(m)))
        }
        ShiftMonoid::FgMonoid { .. } => Err(Error::UnsupportedMonoid),
    }
}

/// Description of the two-sided ideal of K attached to a support set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealClosure {
    /// The ideal is everything (M a group: K is simple).
    WholeMonoid,
    /// Generators of the G-invariant monoid ideal.
    Ideal(Vec<AffineAut>),
}

pub fn ideal_support_closure(
    setting: &Arc<Setting>,
    s: &BTreeSet<AffineAut>,
) -> Result<IdealClosure> {
    if s.is_empty() {
        return Err(Error::EmptySupport);
    }
    for m in s {
        if !setting.monoid.contains(m) {
            return Err(Error::Invalid("support set not inside the monoid".into()));
        }
    }
    match &setting.monoid {
        ShiftMonoid::Lattice { .. } => Ok(IdealClosure::WholeMonoid),
        ShiftMonoid::Finite { elements } => {
            if setting.monoid.is_group() {
                return Ok(IdealClosure::WholeMonoid);
            }
            // Finite saturation: close under conjugation and two-sided
            // multiplication by monoid elements.
            let mut ideal: BTreeSet<AffineAut> = BTreeSet::new();
            for m in s {
                for g in setting.group.elements() {
                    ideal.insert(m.conjugate_by(g)?);
                }
            }
            loop {
                let mut new = Vec::new();
                for i in &ideal {
                    for m in elements {
                        for c in [m.compose(i)?, i.compose(m)?] {
                            if !ideal.contains(&c) {
                                new.push(c);
                            }
                        }
                    }
                }
                if new.is_empty() {
                    break;
                }
                ideal.extend(new);
            }
            if ideal.len() == elements.len() {
                Ok(IdealClosure::WholeMonoid)
            } else {
                Ok(IdealClosure::Ideal(ideal.into_iter().collect()))
            }
        }
        ShiftMonoid::FgMonoid { gens } => {
            // G-invariant generating set, minimalized within the commutative
            // shift monoid: drop any generator reachable from another one.
            let mut gen_set: BTreeSet<AffineAut> = BTreeSet::new();
            for m in s {
                for g in setting.group.elements() {
                    gen_set.insert(m.conjugate_by(g)?);
                }
            }
            let all: Vec<AffineAut> = gen_set.iter().cloned().collect();
            let mut minimal: Vec<AffineAut> = Vec::new();
            'outer: for m in &all {
                for other in &all {
                    if other == m {
                        continue;
                    }
                    // m = other + monoid element?
                    let diff = other.invert().compose(m)?;
                    if ShiftMonoid::fg_monoid(gens.clone())?.contains(&diff) && !diff.is_identity()
                    {
                        continue 'outer;
                    }
                }
                minimal.push(m.clone());
            }
            Ok(IdealClosure::Ideal(minimal))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::FiniteGroup;
    use crate::monoid::ShiftMonoid;
    use crate::poly::Poly;
    use crate::rat::rat;
    use crate::setting::VarInfo;

    fn lat2() -> Arc<Setting> {
        let x = Poly::var(0);
        let y = Poly::var(1);
        Setting::new(
            "lat2",
            vec![VarInfo::plain("x1"), VarInfo::plain("x2")],
            FiniteGroup::closure(vec![AffineAut::transposition(2, 0, 1)], 10).unwrap(),
            ShiftMonoid::lattice(vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]).unwrap(),
            vec![
                RatFunc::from_poly(x.add(&y)),
                RatFunc::from_poly(x.mul(&y)),
            ],
            2,
        )
        .unwrap()
    }

    fn sh(s: &Arc<Setting>, a: i64, b: i64) -> AffineAut {
        let _ = s;
        AffineAut::pure_shift(vec![rat(a), rat(b)])
    }

    #[test]
    fn make_invariant_orbit_sum() {
        let s = lat2();
        // [x1 * shift(1,0)] = x1 sh(1,0) + x2 sh(0,1)
        let u = make_invariant(&s, &RatFunc::var(0), &sh(&s, 1, 0)).unwrap();
        assert_eq!(u.as_skew().num_terms(), 2);
        assert_eq!(u.as_skew().coeff(&sh(&s, 1, 0)), RatFunc::var(0));
        assert_eq!(u.as_skew().coeff(&sh(&s, 0, 1)), RatFunc::var(1));
        assert!(u.as_skew().is_invariant().unwrap());
        // x1 is not symmetric, shift(1,1) is stabilized by all of G
        assert!(matches!(
            make_invariant(&s, &RatFunc::var(0), &sh(&s, 1, 1)),
            Err(Error::NotStabilizerInvariant)
        ));
        // zero coefficient gives the zero element
        assert!(make_invariant(&s, &RatFunc::zero(), &sh(&s, 1, 0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn skew_square_support() {
        let s = lat2();
        let u = make_invariant(&s, &RatFunc::one(), &sh(&s, 1, 0)).unwrap();
        let uu = u.mul(&u).unwrap();
        // 1*sh(2,0) + 2*sh(1,1) + 1*sh(0,2)
        assert_eq!(uu.as_skew().num_terms(), 3);
        assert_eq!(uu.as_skew().coeff(&sh(&s, 2, 0)), RatFunc::one());
        assert_eq!(
            uu.as_skew().coeff(&sh(&s, 1, 1)),
            RatFunc::constant(rat(2))
        );
        assert_eq!(uu.as_skew().coeff(&sh(&s, 0, 2)), RatFunc::one());
        let expected: BTreeSet<_> = [sh(&s, 2, 0), sh(&s, 1, 1), sh(&s, 0, 2)].into();
        assert_eq!(uu.support(), expected);
    }

    #[test]
    fn invariance_detection() {
        let s = lat2();
        let lone = SkewElement::term(s.clone(), RatFunc::var(0), sh(&s, 1, 0)).unwrap();
        assert!(!lone.is_invariant().unwrap());
        assert!(SkewElement::zero(s.clone()).is_invariant().unwrap());
    }

    #[test]
    fn invariant_mul_support_law() {
        let s = lat2();
        let u = make_invariant(&s, &RatFunc::one(), &sh(&s, 1, 0)).unwrap();
        let gamma = RatFunc::from_poly(Poly::var(0).add(&Poly::var(1)));
        let prod = invariant_mul(&u, &gamma, &u).unwrap();
        let expected: BTreeSet<_> = [sh(&s, 2, 0), sh(&s, 1, 1), sh(&s, 0, 2)].into();
        assert_eq!(prod.support(), expected);
        // x1 is not G-invariant, so it is not a Gamma scalar
        assert!(matches!(
            invariant_mul(&u, &RatFunc::var(0), &u),
            Err(Error::NotGammaElement)
        ));
    }

    #[test]
    fn restrict_and_project() {
        let s = lat2();
        let u = make_invariant(&s, &RatFunc::one(), &sh(&s, 1, 0)).unwrap();
        let uu = u.mul(&u).unwrap();
        let mid: BTreeSet<_> = [sh(&s, 1, 1)].into();
        let r = uu.as_skew().restrict_support(&mid);
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coeff(&sh(&s, 1, 1)), RatFunc::constant(rat(2)));
        // restriction to the full support is the identity
        assert_eq!(uu.as_skew().restrict_support(&uu.support()), *uu.as_skew());
        // restriction to the empty set is zero
        assert!(uu.as_skew().restrict_support(&BTreeSet::new()).is_zero());

        // project x = [1 sh(1,0)] + [1 sh(2,0)] onto the orbit of sh(1,0)
        let x = u
            .add(&make_invariant(&s, &RatFunc::one(), &sh(&s, 2, 0)).unwrap())
            .unwrap();
        let target: BTreeSet<_> = [sh(&s, 1, 0), sh(&s, 0, 1)].into();
        let f = RatFunc::from_poly(Poly::var(0).add(&Poly::var(1)));
        let p = project_component(&x, &target, &f).unwrap();
        assert!(!p.is_zero());
        assert_eq!(p.support(), target);
        // empty complement: the operator is the identity
        let idp = project_component(&x, &x.support(), &f).unwrap();
        assert_eq!(idp.as_skew(), x.as_skew());
        // constant f kills everything once the complement is nonempty
        let c = project_component(&x, &target, &RatFunc::one()).unwrap();
        assert!(c.is_zero());
        // automatic search finds a working f
        let (pa, _f) = project_component_auto(&x, &target).unwrap();
        assert!(!pa.is_zero());
        assert!(pa.support().is_subset(&target));
    }

    #[test]
    fn bimodule_classes() {
        let s = lat2();
        let u = make_invariant(&s, &RatFunc::one(), &sh(&s, 1, 0)).unwrap();
        let classes = decompose_bimodule_classes(&u).unwrap();
        assert_eq!(classes.len(), 1);
        let x = u
            .add(&make_invariant(&s, &RatFunc::one(), &sh(&s, 2, 0)).unwrap())
            .unwrap();
        assert_eq!(decompose_bimodule_classes(&x).unwrap().len(), 2);
        let uu = u.mul(&u).unwrap();
        let classes = decompose_bimodule_classes(&uu).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(matches!(
            decompose_bimodule_classes(&InvariantElement::zero(s.clone())),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn center_and_witness() {
        let s = lat2();
        // symmetric scalar moved by shifts: not central
        let e1 = RatFunc::from_poly(Poly::var(0).add(&Poly::var(1)));
        let x = InvariantElement::new(
            SkewElement::scalar(s.clone(), e1.clone()).unwrap(),
        )
        .unwrap();
        assert!(!center_membership(&x).unwrap());
        // constants are central
        let c = InvariantElement::new(
            SkewElement::scalar(s.clone(), RatFunc::constant(rat(5))).unwrap(),
        )
        .unwrap();
        assert!(center_membership(&c).unwrap());
        // scalar elements commute with Gamma
        assert!(noncommute_witness(&x).unwrap().is_none());
        // a shifted element does not
        let u = make_invariant(&s, &RatFunc::one(), &sh(&s, 1, 0)).unwrap();
        assert!(!center_membership(&u).unwrap());
        let gamma = noncommute_witness(&u).unwrap().expect("witness exists");
        let ge = SkewElement::scalar(s.clone(), gamma).unwrap();
        assert!(!ge
            .mul(u.as_skew())
            .unwrap()
            .sub(&u.as_skew().mul(&ge).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn generator_check_and_ideals() {
        let s = lat2();
        let up = make_invariant(&s, &RatFunc::one(), &sh(&s, 1, 0)).unwrap();
        let down = make_invariant(&s, &RatFunc::one(), &sh(&s, -1, 0)).unwrap();
        assert!(galois_generator_check(&s, &[up.clone(), down]).unwrap());
        // one direction only generates a half-space
        assert!(!galois_generator_check(&s, &[up.clone()]).unwrap());
        assert!(!galois_generator_check(&s, &[]).unwrap());

        let supp: BTreeSet<_> = [sh(&s, 1, 0)].into();
        assert_eq!(
            ideal_support_closure(&s, &supp).unwrap(),
            IdealClosure::WholeMonoid
        );
        let e: BTreeSet<_> = [AffineAut::identity(2)].into();
        assert_eq!(
            ideal_support_closure(&s, &e).unwrap(),
            IdealClosure::WholeMonoid
        );
        assert!(matches!(
            ideal_support_closure(&s, &BTreeSet::new()),
            Err(Error::EmptySupport)
        ));
    }
}
