//! Double-coset combinatorics: simple balanced-bimodule classes, tensor
//! product decomposition, Hecke-algebra products over the basis `b_phi`
//! (sum over the double coset G phi G), and the Grothendieck-to-Hecke map
//! `[V(phi)] -> (1/|G|) b_phi`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::aut::{canonical_double_coset, AffineAut, DoubleCoset, FiniteGroup};
use crate::aut::{double_coset_equal, g_equivalence_classes};
use crate::error::{Error, Result};
use crate::rat::{rat_string, Rat};
use crate::setting::Setting;

/// Isomorphism class of the simple balanced bimodule V(phi); two classes are
/// equal iff the double cosets coincide, so the canonical representative is
/// the key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleClass {
    pub coset: DoubleCoset,
}

pub fn simple_class(group: &FiniteGroup, phi: &AffineAut) -> Result<SimpleClass> {
    Ok(SimpleClass {
        coset: canonical_double_coset(group, phi)?,
    })
}

/// Left/right K-dimension of the simple class: `|G : H_phi|`.
pub fn class_dimension(c: &SimpleClass) -> usize {
    c.coset.orbit_size
}

/// Nonnegative-integer combination of simple classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassSum {
    /// canonical representative -> (coset data, multiplicity >= 1)
    pub terms: BTreeMap<AffineAut, (DoubleCoset, u64)>,
}

impl ClassSum {
    pub fn add_class(&mut self, coset: DoubleCoset, mult: u64) {
        if mult == 0 {
            return;
        }
        self.terms
            .entry(coset.rep.clone())
            .and_modify(|(_, m)| *m += mult)
            .or_insert((coset, mult));
    }

    pub fn single(coset: DoubleCoset) -> ClassSum {
        let mut s = ClassSum::default();
        s.add_class(coset, 1);
        s
    }

    /// Total dimension `sum mult * dim`.
    pub fn dimension(&self) -> u64 {
        self.terms
            .values()
            .map(|(c, m)| m * c.orbit_size as u64)
            .sum()
    }
}

/// Rational combination of double cosets (an element of the Hecke algebra in
/// the `b_phi` basis).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    pub terms: BTreeMap<AffineAut, (DoubleCoset, Rat)>,
}

impl HeckeElement {
    pub fn zero() -> HeckeElement {
        HeckeElement::default()
    }

    pub fn basis(group: &FiniteGroup, phi: &AffineAut) -> Result<HeckeElement> {
        let mut h = HeckeElement::zero();
        h.add(canonical_double_coset(group, phi)?, Rat::one());
        Ok(h)
    }

    pub fn add(&mut self, coset: DoubleCoset, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(coset.rep.clone()) {
            Entry::Vacant(e) => {
                e.insert((coset, c));
            }
            Entry::Occupied(mut e) => {
                e.get_mut().1 += c;
                if e.get().1.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn plus(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (c, k) in other.terms.values() {
            out.add(c.clone(), k.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (coset, k) in self.terms.values() {
            out.add(coset.clone(), k * c);
        }
        out
    }

    /// True when all coefficients are nonnegative integers.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms
            .values()
            .all(|(_, c)| crate::rat::is_integer(c) && !c.is_negative())
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .values()
            .map(|(coset, c)| format!("{} * b[{}]", rat_string(c), coset.rep.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Tensor decomposition of simple classes:
/// `V(phi) (x) V(psi) = (+)_{c_g} V(phi g psi)^(s |c_g|)` with
/// `s = |H_{phi g psi}| / (|H_phi| |H_psi|)`.
pub fn tensor_decompose(
    group: &FiniteGroup,
    a: &SimpleClass,
    b: &SimpleClass,
) -> Result<ClassSum> {
    let phi = &a.coset.rep;
    let psi = &b.coset.rep;
    let h_phi = a.coset.stab_order as i64;
    let h_psi = b.coset.stab_order as i64;
    let mut out = ClassSum::default();
    for class in g_equivalence_classes(group, phi, psi)? {
        let g = &class[0];
        let tau = phi.compose(g)?.compose(psi)?;
        let coset = canonical_double_coset(group, &tau)?;
        let mult = Rat::new(
            BigInt::from(coset.stab_order as i64 * class.len() as i64),
            BigInt::from(h_phi * h_psi),
        );
        if !crate::rat::is_integer(&mult) || mult.is_negative() || mult.is_zero() {
            return Err(Error::NonIntegerMultiplicity(rat_string(&mult)));
        }
        let m: u64 = mult
            .numer()
            .to_string()
            .parse()
            .map_err(|_| Error::NonIntegerMultiplicity(rat_string(&mult)))?;
        out.add_class(coset, m);
    }
    Ok(out)
}

/// Reference decomposition by the double sum over coset representatives:
/// each pair `(g, g')` contributes `|H_{g phi g' psi}| / |G|` to the class of
/// `g phi g' psi`. Used as the independent oracle in tests.
pub fn tensor_decompose_reference(
    group: &FiniteGroup,
    a: &SimpleClass,
    b: &SimpleClass,
) -> Result<ClassSum> {
    let phi = &a.coset.rep;
    let psi = &b.coset.rep;
    let reps_phi = coset_reps(group, phi)?;
    let reps_psi = coset_reps(group, psi)?;
    let mut acc: BTreeMap<AffineAut, (DoubleCoset, Rat)> = BTreeMap::new();
    for g in &reps_phi {
        let left = g.compose(phi)?;
        for gp in &reps_psi {
            let tau = left.compose(gp)?.compose(psi)?;
            let coset = canonical_double_coset(group, &tau)?;
            let w = Rat::new(
                BigInt::from(coset.stab_order as i64),
                BigInt::from(group.order() as i64),
            );
            acc.entry(coset.rep.clone())
                .and_modify(|(_, c)| *c += w.clone())
                .or_insert((coset, w));
        }
    }
    let mut out = ClassSum::default();
    for (coset, c) in acc.into_values() {
        if !crate::rat::is_integer(&c) || c.is_negative() {
            return Err(Error::NonIntegerMultiplicity(rat_string(&c)));
        }
        let m: u64 = c
            .numer()
            .to_string()
            .parse()
            .map_err(|_| Error::NonIntegerMultiplicity(rat_string(&c)))?;
        out.add_class(coset, m);
    }
    Ok(out)
}

/// Representatives of `G / St(phi i)` where the stabilizer is
/// `{g : phi^{-1} g phi in G}`.
fn coset_reps(group: &FiniteGroup, phi: &AffineAut) -> Result<Vec<AffineAut>> {
    let phi_inv = phi.invert();
    let stab: Vec<AffineAut> = group
        .elements()
        .iter()
        .filter_map(|g| {
            let t = phi_inv.compose(g).ok()?.compose(phi).ok()?;
            if group.contains(&t) {
                Some(g.clone())
            } else {
                None
            }
        })
        .collect();
    let mut reps = Vec::new();
    let mut covered: std::collections::BTreeSet<AffineAut> = Default::default();
    for g in group.elements() {
        if covered.contains(g) {
            continue;
        }
        reps.push(g.clone());
        for h in &stab {
            covered.insert(g.compose(h)?);
        }
    }
    Ok(reps)
}

/// Basis product
/// `b_phi b_psi = (|G| / (|H_phi| |H_psi|)) sum_{g in G} |H_{phi g psi}| b_{phi g psi}`,
/// extended bilinearly.
pub fn hecke_mul(group: &FiniteGroup, x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero();
    for (ca, ka) in x.terms.values() {
        for (cb, kb) in y.terms.values() {
            let base = Rat::new(
                BigInt::from(group.order() as i64),
                BigInt::from((ca.stab_order * cb.stab_order) as i64),
            );
            for g in group.elements() {
                let tau = ca.rep.compose(g)?.compose(&cb.rep)?;
                let coset = canonical_double_coset(group, &tau)?;
                let coeff = ka * kb * &base * Rat::from_integer(BigInt::from(coset.stab_order));
                out.add(coset, coeff);
            }
        }
    }
    Ok(out)
}

/// `Psi([V(phi)]) = (1/|G|) b_phi`, extended linearly.
pub fn grothendieck_to_hecke(group: &FiniteGroup, x: &ClassSum) -> HeckeElement {
    let inv_g = Rat::new(BigInt::one(), BigInt::from(group.order() as i64));
    let mut out = HeckeElement::zero();
    for (coset, mult) in x.terms.values() {
        out.add(coset.clone(), &inv_g * Rat::from_integer(BigInt::from(*mult)));
    }
    out
}

/// Multiplicity of `V(phi)` in the bimodule described by a G-invariant
/// family of automorphisms: the sum of `|H| / |G|` over family members in the
/// double coset of `phi`.
pub fn multiplicity_from_family(
    setting: &Setting,
    family: &[AffineAut],
    phi: &AffineAut,
) -> Result<Rat> {
    let group = &setting.group;
    // Family must be closed (as a multiset of K-restrictions) under left
    // composition with group elements.
    let class_of = |a: &AffineAut, pool: &[AffineAut]| -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        for (i, b) in pool.iter().enumerate() {
            if setting.restriction_equal_on_k(a, b)? {
                idx.push(i);
            }
        }
        Ok(idx)
    };
    for g in group.elements() {
        let moved: Vec<AffineAut> = family
            .iter()
            .map(|a| g.compose(a))
            .collect::<Result<_>>()?;
        // Compare multisets of restrictions.
        let mut used = vec![false; family.len()];
        for a in &moved {
            let mut matched = false;
            for i in class_of(a, family)? {
                if !used[i] {
                    used[i] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Err(Error::NotGInvariantFamily);
            }
        }
    }
    let target = canonical_double_coset(group, phi)?;
    let mut total = Rat::zero();
    for a in family {
        if double_coset_equal(group, &target.rep, a)? {
            total += Rat::new(
                BigInt::from(target.stab_order as i64),
                BigInt::from(group.order() as i64),
            );
        }
    }
    Ok(total)
}

/// Structure-constant table for `(1/|G|) b_phi b_psi` over a pool of classes:
/// plain text plus a JSON mirror.
pub fn structure_table(
    group: &FiniteGroup,
    pool: &[SimpleClass],
) -> Result<(String, serde_json::Value)> {
    let labels: Vec<String> = pool.iter().map(|c| c.coset.rep.render()).collect();
    let mut text = String::new();
    let mut rows_json = Vec::new();
    text.push_str(&format!("(1/|G|) b_phi b_psi with |G| = {}\n", group.order()));
    let inv_g = Rat::new(BigInt::one(), BigInt::from(group.order() as i64));
    for (i, a) in pool.iter().enumerate() {
        for (j, b) in pool.iter().enumerate() {
            let prod = hecke_mul(
                group,
                &HeckeElement::basis(group, &a.coset.rep)?,
                &HeckeElement::basis(group, &b.coset.rep)?,
            )?
            .scale(&inv_g);
            text.push_str(&format!(
                "  [{}] * [{}] = {}\n",
                labels[i],
                labels[j],
                prod.render()
            ));
            let entries: Vec<serde_json::Value> = prod
                .terms
                .values()
                .map(|(c, k)| {
                    serde_json::json!({
                        "rep": c.rep.render(),
                        "coeff": rat_string(k),
                    })
                })
                .collect();
            rows_json.push(serde_json::json!({
                "left": labels[i],
                "right": labels[j],
                "product": entries,
            }));
        }
    }
    Ok((
        text,
        serde_json::json!({
            "group_order": group.order(),
            "classes": labels,
            "products": rows_json,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn s2() -> FiniteGroup {
        FiniteGroup::closure(vec![AffineAut::transposition(2, 0, 1)], 10).unwrap()
    }

    fn sh(a: i64, b: i64) -> AffineAut {
        AffineAut::pure_shift(vec![rat(a), rat(b)])
    }

    #[test]
    fn dimensions() {
        let g = s2();
        let e = simple_class(&g, &g.identity()).unwrap();
        assert_eq!(class_dimension(&e), 1);
        let c = simple_class(&g, &sh(1, 0)).unwrap();
        assert_eq!(class_dimension(&c), 2);
    }

    #[test]
    fn tensor_worked_example() {
        let g = s2();
        let c = simple_class(&g, &sh(1, 0)).unwrap();
        let t = tensor_decompose(&g, &c, &c).unwrap();
        // V(sh(2,0))^1 (+) V(swap-twisted sh(1,1))^2; dims 2*2 = 1*2 + 2*1
        assert_eq!(t.terms.len(), 2);
        assert_eq!(t.dimension(), 4);
        let mults: Vec<u64> = t.terms.values().map(|(_, m)| *m).collect();
        let dims: Vec<usize> = t.terms.values().map(|(c, _)| c.orbit_size).collect();
        assert!(mults.contains(&1) && mults.contains(&2));
        assert!(dims.contains(&2) && dims.contains(&1));
        // matches the double-sum reference
        let r = tensor_decompose_reference(&g, &c, &c).unwrap();
        assert_eq!(t, r);
    }

    #[test]
    fn tensor_unit_and_trivial_group() {
        let g = s2();
        let e = simple_class(&g, &g.identity()).unwrap();
        let c = simple_class(&g, &sh(1, 0)).unwrap();
        let t = tensor_decompose(&g, &e, &c).unwrap();
        assert_eq!(t, ClassSum::single(c.coset.clone()));

        let triv = FiniteGroup::trivial(2);
        let a = simple_class(&triv, &sh(1, 0)).unwrap();
        let b = simple_class(&triv, &sh(0, 1)).unwrap();
        let t = tensor_decompose(&triv, &a, &b).unwrap();
        let expect = simple_class(&triv, &sh(1, 1)).unwrap();
        assert_eq!(t, ClassSum::single(expect.coset));
    }

    #[test]
    fn hecke_worked_example() {
        let g = s2();
        let b = HeckeElement::basis(&g, &sh(1, 0)).unwrap();
        let prod = hecke_mul(&g, &b, &b).unwrap();
        let half = prod.scale(&crate::rat::ratf(1, 2));
        // (1/|G|) b b = b_{(2,0)-class} + 2 b_{(1,1)-class}
        assert!(half.is_nonneg_integral());
        assert_eq!(half.terms.len(), 2);
        let c20 = canonical_double_coset(&g, &sh(2, 0)).unwrap();
        let c11 = canonical_double_coset(&g, &sh(1, 1)).unwrap();
        assert_eq!(half.terms[&c20.rep].1, rat(1));
        assert_eq!(half.terms[&c11.rep].1, rat(2));
        // identity coset acts as |G| times the unit
        let be = HeckeElement::basis(&g, &g.identity()).unwrap();
        let p = hecke_mul(&g, &be, &b).unwrap();
        assert_eq!(p, b.scale(&rat(2)));
    }

    #[test]
    fn psi_is_multiplicative() {
        let g = s2();
        let c = simple_class(&g, &sh(1, 0)).unwrap();
        let t = tensor_decompose(&g, &c, &c).unwrap();
        let lhs = grothendieck_to_hecke(&g, &t);
        let half_b = HeckeElement::basis(&g, &c.coset.rep).unwrap().scale(&crate::rat::ratf(1, 2));
        let rhs = hecke_mul(&g, &half_b, &half_b).unwrap();
        assert_eq!(lhs, rhs);
    }
}
