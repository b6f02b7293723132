//! The Gelfand-Tsetlin realization of U(gl_n) inside the invariant skew
//! group ring: triangular variable table, row-permutation group, unit-shift
//! lattice, raising/lowering generator images, the gl_n relation suite, and
//! the module action on generic tableaux.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::aut::{AffineAut, FiniteGroup};
use crate::error::{Error, Result};
use crate::monoid::ShiftMonoid;
use crate::poly::Poly;
use crate::rat::{is_integer, rat, Rat};
use crate::ratfunc::RatFunc;
use crate::setting::{Setting, VarInfo};
use crate::skew::{make_invariant, InvariantElement, SkewElement};

/// Sign of a raising (+) or lowering (-) generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Elementary symmetric polynomials e_1..e_k of the given variables.
fn elementary_symmetric(vars: &[u32]) -> Vec<Poly> {
    let mut e = vec![Poly::one()];
    for &v in vars {
        let x = Poly::var(v);
        let mut next = Vec::with_capacity(e.len() + 1);
        next.push(Poly::one());
        for j in 1..=e.len() {
            let mut t = if j < e.len() {
                e[j].clone()
            } else {
                Poly::zero()
            };
            t = t.add(&e[j - 1].mul(&x));
            next.push(t);
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}

/// Builds the Gelfand-Tsetlin setting for gl_n: variables `l{i}{j}` for
/// `1 <= j <= i <= n` listed top row first, the product of row symmetric
/// groups, the rank-n(n-1)/2 unit shift lattice on the non-top rows, and the
/// rowwise elementary symmetric Gamma generators.
pub fn build_gt(n: u32) -> Result<Arc<Setting>> {
    if n < 1 {
        return Err(Error::IndexOutOfRange("gt(n) needs n >= 1".into()));
    }
    let mut vars = Vec::new();
    for i in (1..=n).rev() {
        for j in 1..=i {
            vars.push(VarInfo {
                name: format!("l{i}{j}"),
                row: i,
                col: j,
            });
        }
    }
    let nvars = vars.len();
    let var_at = |row: u32, col: u32| -> usize {
        vars.iter()
            .position(|v| v.row == row && v.col == col)
            .expect("triangular index")
    };

    let mut gens = Vec::new();
    for i in 2..=n {
        for j in 1..i {
            gens.push(AffineAut::transposition(nvars, var_at(i, j), var_at(i, j + 1)));
        }
    }
    let mut cap: usize = 1;
    for i in 1..=n as usize {
        cap = cap.saturating_mul((1..=i).product::<usize>());
    }
    let group = if gens.is_empty() {
        FiniteGroup::trivial(nvars)
    } else {
        FiniteGroup::closure(gens, cap + 1)?
    };

    let mut basis = Vec::new();
    for k in 1..n {
        for i in 1..=k {
            let mut v = vec![Rat::zero(); nvars];
            v[var_at(k, i)] = Rat::one();
            basis.push(v);
        }
    }
    let monoid = ShiftMonoid::lattice(basis)?;

    let mut gamma = Vec::new();
    for i in 1..=n {
        let row_vars: Vec<u32> = (1..=i).map(|j| var_at(i, j) as u32).collect();
        for e in elementary_symmetric(&row_vars) {
            gamma.push(RatFunc::from_poly(e));
        }
    }

    Setting::new(format!("gt({n})"), vars, group, monoid, gamma, 2)
}

fn var_index(setting: &Setting, row: u32, col: u32) -> Result<u32> {
    setting
        .var_by_row_col(row, col)
        .ok_or_else(|| Error::IndexOutOfRange(format!("no variable at row {row}, col {col}")))
}

/// The rational function `a_{ki}^{sign}`:
/// `-+ prod_j (l_{k+-1, j} - l_{ki}) / prod_{j != i} (l_{kj} - l_{ki})`.
pub fn gt_coefficient(setting: &Setting, k: u32, i: u32, sign: Sign) -> Result<RatFunc> {
    let n = setting.max_row();
    if !(1 <= k && k < n) || !(1 <= i && i <= k) {
        return Err(Error::IndexOutOfRange(format!("a_({k},{i}) outside rows of gt({n})")));
    }
    let lki = Poly::var(var_index(setting, k, i)?);
    let other_row = match sign {
        Sign::Plus => k + 1,
        Sign::Minus => k - 1,
    };
    let mut num = Poly::one();
    for j in 1..=other_row {
        let v = Poly::var(var_index(setting, other_row, j)?);
        num = num.mul(&v.sub(&lki));
    }
    if sign == Sign::Plus {
        num = num.neg();
    }
    let mut den = Poly::one();
    for j in 1..=k {
        if j != i {
            let v = Poly::var(var_index(setting, k, j)?);
            den = den.mul(&v.sub(&lki));
        }
    }
    RatFunc::new(num, den)
}

/// Unit shift `+-delta^{ki}`.
pub fn gt_shift(setting: &Setting, k: u32, i: u32, sign: Sign) -> Result<AffineAut> {
    let v = var_index(setting, k, i)? as usize;
    let amount = match sign {
        Sign::Plus => rat(1),
        Sign::Minus => rat(-1),
    };
    Ok(AffineAut::unit_shift(setting.nvars(), v, amount))
}

/// Image of the Chevalley generator `e_{k,k+1}` (Plus) or `e_{k+1,k}`
/// (Minus): the orbit sum of `a_{k1}` against the shift `+-delta^{k1}`,
/// with the coefficient transported by the shift so that the stored
/// left-coefficient form equals `sum_i (+-delta^{ki}) a_{ki}`.
pub fn gt_generator_image(
    setting: &Arc<Setting>,
    k: u32,
    sign: Sign,
) -> Result<InvariantElement> {
    let n = setting.max_row();
    if !(1 <= k && k < n) {
        return Err(Error::IndexOutOfRange(format!(
            "generator row {k} outside 1..{}",
            n.saturating_sub(1)
        )));
    }
    let phi = gt_shift(setting, k, 1, sign)?;
    let a = gt_coefficient(setting, k, 1, sign)?;
    let coeff = phi.apply(&a)?;
    make_invariant(setting, &coeff, &phi)
}

/// Outcome of one relation check.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub name: String,
    pub ok: bool,
    pub residual: Option<String>,
}

fn check_zero(name: impl Into<String>, residual: SkewElement) -> RelationCheck {
    let ok = residual.is_zero();
    RelationCheck {
        name: name.into(),
        ok,
        residual: if ok { None } else { Some(residual.render()) },
    }
}

/// Symbolic verification of the gl_n presentation on the generator images:
/// Cartan elements `h_k = [E_k^+, E_k^-]` live in the identity component
/// with G-invariant polynomial coefficient, mixed raising/lowering pairs
/// commute, `[h_i, E_j^+-] = +-c_{ij} E_j^+-` with the A-type Cartan matrix,
/// and the Serre relations hold. All checks are exact.
pub fn gt_verify_relations(setting: &Arc<Setting>) -> Result<Vec<RelationCheck>> {
    let n = setting.max_row();
    let mut checks = Vec::new();
    let ranks: Vec<u32> = (1..n).collect();
    let mut eplus = BTreeMap::new();
    let mut eminus = BTreeMap::new();
    for &k in &ranks {
        eplus.insert(k, gt_generator_image(setting, k, Sign::Plus)?);
        eminus.insert(k, gt_generator_image(setting, k, Sign::Minus)?);
    }
    let mut cartan = BTreeMap::new();
    let e_aut = AffineAut::identity(setting.nvars());
    for &k in &ranks {
        let h = eplus[&k].as_skew().commutator(eminus[&k].as_skew())?;
        let off_identity: Vec<_> = h
            .terms()
            .filter(|(a, _)| *a != &e_aut)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        let mut stray = SkewElement::zero(setting.clone());
        for (a, c) in off_identity {
            stray = stray.add(&SkewElement::term(setting.clone(), c, a)?)?;
        }
        checks.push(check_zero(format!("h{k}-support-identity"), stray));
        let coeff = h.coeff(&e_aut);
        let poly_ok = coeff.is_polynomial();
        let inv_ok = setting.is_g_invariant(&coeff)?;
        checks.push(RelationCheck {
            name: format!("h{k}-coefficient-gamma"),
            ok: poly_ok && inv_ok,
            residual: if poly_ok && inv_ok {
                None
            } else {
                Some(coeff.render(&setting.var_names()))
            },
        });
        cartan.insert(k, h);
    }
    for &i in &ranks {
        for &j in &ranks {
            if i != j {
                let r = eplus[&i].as_skew().commutator(eminus[&j].as_skew())?;
                checks.push(check_zero(format!("commute-E{i}+-E{j}-"), r));
            }
        }
    }
    // Cartan action: c_{ij} = 2 d_{ij} - d_{|i-j|,1}
    for &i in &ranks {
        for &j in &ranks {
            let c = if i == j {
                2i64
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
            let cr = Rat::from_integer(BigInt::from(c));
            let rp = cartan[&i]
                .commutator(eplus[&j].as_skew())?
                .sub(&eplus[&j].as_skew().scale(&cr))?;
            checks.push(check_zero(format!("cartan-h{i}-E{j}+"), rp));
            let rm = cartan[&i]
                .commutator(eminus[&j].as_skew())?
                .sub(&eminus[&j].as_skew().scale(&(-cr)))?;
            checks.push(check_zero(format!("cartan-h{i}-E{j}-"), rm));
        }
    }
    // Serre relations
    for &i in &ranks {
        for &j in &ranks {
            if i == j {
                continue;
            }
            if i.abs_diff(j) == 1 {
                let inner = eplus[&i].as_skew().commutator(eplus[&j].as_skew())?;
                checks.push(check_zero(
                    format!("serre-E{i}+-E{j}+"),
                    eplus[&i].as_skew().commutator(&inner)?,
                ));
                let inner = eminus[&i].as_skew().commutator(eminus[&j].as_skew())?;
                checks.push(check_zero(
                    format!("serre-E{i}--E{j}-"),
                    eminus[&i].as_skew().commutator(&inner)?,
                ));
            } else {
                let r = eplus[&i].as_skew().commutator(eplus[&j].as_skew())?;
                checks.push(check_zero(format!("commute-E{i}+-E{j}+"), r));
                let r = eminus[&i].as_skew().commutator(eminus[&j].as_skew())?;
                checks.push(check_zero(format!("commute-E{i}--E{j}-"), r));
            }
        }
    }
    Ok(checks)
}

/// A vector in the generic-tableau module: a base tableau plus a finite
/// amplitude map over the shift lattice (coordinates in basis order).
#[derive(Debug, Clone)]
pub struct GTState {
    setting: Arc<Setting>,
    base: Vec<Rat>,
    amplitudes: BTreeMap<Vec<i64>, Rat>,
}

impl PartialEq for GTState {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.amplitudes == other.amplitudes
    }
}
impl Eq for GTState {}

impl GTState {
    /// Requires genericity: entries within a row or in adjacent rows never
    /// differ by an integer.
    pub fn new(
        setting: Arc<Setting>,
        base: Vec<Rat>,
        amplitudes: BTreeMap<Vec<i64>, Rat>,
    ) -> Result<GTState> {
        if base.len() != setting.nvars() {
            return Err(Error::SettingMismatch);
        }
        for (v, a) in setting.vars.iter().enumerate() {
            for (w, b) in setting.vars.iter().enumerate().skip(v + 1) {
                if a.row.abs_diff(b.row) <= 1 {
                    let diff = &base[v] - &base[w];
                    if is_integer(&diff) {
                        return Err(Error::NonGenericTableau(format!(
                            "{} - {} is an integer",
                            a.name, b.name
                        )));
                    }
                }
            }
        }
        let mut clean = amplitudes;
        clean.retain(|_, c| !c.is_zero());
        Ok(GTState {
            setting,
            base,
            amplitudes: clean,
        })
    }

    /// The vacuum state: amplitude 1 at the origin.
    pub fn vacuum(setting: Arc<Setting>, base: Vec<Rat>) -> Result<GTState> {
        let rank = lattice_rank(&setting)?;
        let mut amp = BTreeMap::new();
        amp.insert(vec![0i64; rank], Rat::one());
        GTState::new(setting, base, amp)
    }

    pub fn amplitudes(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.amplitudes
    }

    pub fn base(&self) -> &[Rat] {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Tableau point attached to the lattice index `m`: `base - shift(m)`.
    fn point(&self, coords: &[i64]) -> Result<Vec<Rat>> {
        let ShiftMonoid::Lattice { basis } = &self.setting.monoid else {
            return Err(Error::UnsupportedSetting("lattice monoid required".into()));
        };
        let mut p = self.base.clone();
        for (c, b) in coords.iter().zip(basis.iter()) {
            if *c == 0 {
                continue;
            }
            let f = Rat::from_integer(BigInt::from(*c));
            for (x, y) in p.iter_mut().zip(b.iter()) {
                *x -= &f * y;
            }
        }
        Ok(p)
    }
}

fn lattice_rank(setting: &Setting) -> Result<usize> {
    setting
        .monoid
        .rank()
        .ok_or_else(|| Error::UnsupportedSetting("lattice monoid required".into()))
}

/// Basis position of `delta^{ki}` in the lattice coordinate order.
fn basis_pos(k: u32, i: u32) -> usize {
    ((k - 1) * k / 2 + (i - 1)) as usize
}

/// One generator step of the module action:
/// `E_k^+- |m> = sum_i a_{ki}^{+-}(base - m) |m +- delta^{ki}>`, the
/// coefficient evaluated at the tableau of the vector being acted on.
pub fn gt_module_act(state: &GTState, k: u32, sign: Sign) -> Result<GTState> {
    let setting = &state.setting;
    let n = setting.max_row();
    if !(1 <= k && k < n) {
        return Err(Error::IndexOutOfRange(format!(
            "generator row {k} outside 1..{}",
            n.saturating_sub(1)
        )));
    }
    let rank = lattice_rank(setting)?;
    let mut out: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for (m, amp) in &state.amplitudes {
        let point = state.point(m)?;
        for i in 1..=k {
            let a = gt_coefficient(setting, k, i, sign)?;
            let value = a.eval(&point).map_err(|e| match e {
                Error::PoleAtPoint => {
                    Error::NonGenericTableau("denominator vanished during the action".into())
                }
                other => other,
            })?;
            if value.is_zero() {
                continue;
            }
            let mut target = m.clone();
            let pos = basis_pos(k, i);
            debug_assert!(pos < rank);
            target[pos] += match sign {
                Sign::Plus => 1,
                Sign::Minus => -1,
            };
            let entry = out.entry(target).or_insert_with(Rat::zero);
            *entry += amp * &value;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(GTState {
        setting: setting.clone(),
        base: state.base.clone(),
        amplitudes: out,
    })
}

/// Action of a symbolic skew element on a state: every term `c * w_s` sends
/// `|m>` to `c(base - shift(m + s)) |m + s>`. This is left multiplication in
/// the module `(L_S * M) (x) (L_S / base)`, so it is exactly compatible with
/// the skew product.
pub fn act_skew_on_state(x: &SkewElement, state: &GTState) -> Result<GTState> {
    let setting = &state.setting;
    let mut out: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for (aut, c) in x.terms() {
        let Some(shift) = aut.shift_vector() else {
            return Err(Error::UnsupportedSetting(
                "module action needs pure-shift support".into(),
            ));
        };
        let coords = setting
            .monoid
            .lattice_coords(shift)
            .ok_or_else(|| Error::UnsupportedSetting("support outside the lattice".into()))?;
        let coords: Vec<i64> = coords
            .iter()
            .map(|c| {
                if is_integer(c) {
                    c.numer().to_string().parse::<i64>().map_err(|_| {
                        Error::UnsupportedSetting("shift coordinate overflow".into())
                    })
                } else {
                    Err(Error::UnsupportedSetting("non-integer shift".into()))
                }
            })
            .collect::<Result<_>>()?;
        for (m, amp) in &state.amplitudes {
            let target: Vec<i64> = m.iter().zip(coords.iter()).map(|(a, b)| a + b).collect();
            let point = state.point(&target)?;
            let value = c.eval(&point).map_err(|e| match e {
                Error::PoleAtPoint => {
                    Error::NonGenericTableau("denominator vanished during the action".into())
                }
                other => other,
            })?;
            if value.is_zero() {
                continue;
            }
            let entry = out.entry(target).or_insert_with(Rat::zero);
            *entry += amp * &value;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(GTState {
        setting: setting.clone(),
        base: state.base.clone(),
        amplitudes: out,
    })
}

const PRIMES: [i64; 21] = [
    5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
];

/// Random generic tableau: each entry gets a distinct prime denominator, so
/// no two entries ever differ by an integer.
pub fn random_generic_tableau<R: Rng>(setting: &Setting, rng: &mut R) -> Vec<Rat> {
    (0..setting.nvars())
        .map(|v| {
            let p = PRIMES[v % PRIMES.len()];
            let whole = rng.gen_range(-3i64..=3);
            let frac = rng.gen_range(1..p);
            rat(whole) + Rat::new(BigInt::from(frac), BigInt::from(p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratf;

    #[test]
    fn gt_setting_shapes() {
        let s1 = build_gt(1).unwrap();
        assert_eq!(s1.nvars(), 1);
        assert_eq!(s1.group.order(), 1);
        assert_eq!(s1.monoid.rank(), Some(0));

        let s2 = build_gt(2).unwrap();
        assert_eq!(s2.nvars(), 3);
        assert_eq!(s2.group.order(), 2);
        assert_eq!(s2.monoid.rank(), Some(1));
        assert_eq!(s2.gamma_gens().len(), 3);

        let s3 = build_gt(3).unwrap();
        assert_eq!(s3.nvars(), 6);
        assert_eq!(s3.group.order(), 12);
        assert_eq!(s3.monoid.rank(), Some(3));
    }

    #[test]
    fn generator_images_n2() {
        let s = build_gt(2).unwrap();
        // E+ : single term at delta^{11} (the stabilizer is all of G)
        let ep = gt_generator_image(&s, 1, Sign::Plus).unwrap();
        assert_eq!(ep.as_skew().num_terms(), 1);
        let phi = gt_shift(&s, 1, 1, Sign::Plus).unwrap();
        let a = gt_coefficient(&s, 1, 1, Sign::Plus).unwrap();
        assert_eq!(ep.as_skew().coeff(&phi), phi.apply(&a).unwrap());
        // E- : coefficient is 1 (empty product over row 0)
        let em = gt_generator_image(&s, 1, Sign::Minus).unwrap();
        let psi = gt_shift(&s, 1, 1, Sign::Minus).unwrap();
        assert_eq!(em.as_skew().coeff(&psi), RatFunc::one());
        // out of range
        assert!(gt_generator_image(&s, 2, Sign::Plus).is_err());
    }

    #[test]
    fn h1_pinned_value_n2() {
        // h1 = (l21 + l22 - 2 l11 - 1) * e
        let s = build_gt(2).unwrap();
        let ep = gt_generator_image(&s, 1, Sign::Plus).unwrap();
        let em = gt_generator_image(&s, 1, Sign::Minus).unwrap();
        let h = ep.as_skew().commutator(em.as_skew()).unwrap();
        assert_eq!(h.num_terms(), 1);
        let l21 = Poly::var(0);
        let l22 = Poly::var(1);
        let l11 = Poly::var(2);
        let expect = l21
            .add(&l22)
            .sub(&l11.scale(&rat(2)))
            .sub(&Poly::one());
        assert_eq!(
            h.coeff(&AffineAut::identity(3)),
            RatFunc::from_poly(expect)
        );
    }

    #[test]
    fn relations_n2() {
        let s = build_gt(2).unwrap();
        let checks = gt_verify_relations(&s).unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.ok, "relation {} failed: {:?}", c.name, c.residual);
        }
    }

    #[test]
    fn generator_images_n3_expand_orbit() {
        let s = build_gt(3).unwrap();
        let e2 = gt_generator_image(&s, 2, Sign::Plus).unwrap();
        // two terms delta^{21}, delta^{22}, each with its transported a_{2i}
        assert_eq!(e2.as_skew().num_terms(), 2);
        for i in 1..=2u32 {
            let aut = gt_shift(&s, 2, i, Sign::Plus).unwrap();
            let a = gt_coefficient(&s, 2, i, Sign::Plus).unwrap();
            assert_eq!(e2.as_skew().coeff(&aut), aut.apply(&a).unwrap());
        }
    }

    #[test]
    fn module_action_n2() {
        let s = build_gt(2).unwrap();
        let base = vec![ratf(1, 2), ratf(5, 3), ratf(1, 7)];
        let v = GTState::vacuum(s.clone(), base.clone()).unwrap();
        // E-: amplitude 1 lands at -delta^{11}
        let down = gt_module_act(&v, 1, Sign::Minus).unwrap();
        assert_eq!(down.amplitudes().len(), 1);
        assert_eq!(down.amplitudes()[&vec![-1i64]], rat(1));
        // (E+E- - E-E+) on the vacuum equals h1 evaluated at the base:
        // l21 + l22 - 2 l11 - 1 at (1/2, 5/3, 1/7) = 37/42
        let plus_minus = gt_module_act(&down, 1, Sign::Plus).unwrap();
        let minus_plus =
            gt_module_act(&gt_module_act(&v, 1, Sign::Plus).unwrap(), 1, Sign::Minus).unwrap();
        let comm = &plus_minus.amplitudes()[&vec![0i64]] - &minus_plus.amplitudes()[&vec![0i64]];
        let expect = ratf(1, 2) + ratf(5, 3) - ratf(2, 7) - rat(1);
        assert_eq!(expect, ratf(37, 42));
        assert_eq!(comm, expect);
    }

    #[test]
    fn non_generic_rejected() {
        let s = build_gt(2).unwrap();
        // l21 - l22 = 1 is an integer: rejected
        let base = vec![ratf(3, 2), ratf(1, 2), ratf(1, 7)];
        assert!(matches!(
            GTState::vacuum(s, base),
            Err(Error::NonGenericTableau(_))
        ));
    }

    #[test]
    fn symbolic_and_module_action_agree_n2() {
        let s = build_gt(2).unwrap();
        let base = vec![ratf(1, 2), ratf(5, 3), ratf(1, 7)];
        let v = GTState::vacuum(s.clone(), base).unwrap();
        let ep = gt_generator_image(&s, 1, Sign::Plus).unwrap();
        let em = gt_generator_image(&s, 1, Sign::Minus).unwrap();
        // word E+ E-
        let w = ep.as_skew().mul(em.as_skew()).unwrap();
        let symbolic = act_skew_on_state(&w, &v).unwrap();
        let stepwise = gt_module_act(&gt_module_act(&v, 1, Sign::Minus).unwrap(), 1, Sign::Plus)
            .unwrap();
        assert_eq!(symbolic.amplitudes(), stepwise.amplitudes());
    }
}
