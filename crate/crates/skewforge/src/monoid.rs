//! Shift monoids: the translation part M of the skew group ring L * M.
//!
//! Three kinds are supported: a full lattice group of shifts given by a
//! basis, a finitely generated monoid of shifts given by its generator list,
//! and an explicit finite monoid (not necessarily shifts) given by its
//! element list. The finite kind covers finite-rank examples whose elements
//! scale variables.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::aut::{AffineAut, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Rat;

#[derive(Debug, Clone)]
pub enum ShiftMonoid {
    /// Group of all integer combinations of the basis shift vectors.
    Lattice { basis: Vec<Vec<Rat>> },
    /// Monoid of nonnegative integer combinations of the generator shifts.
    FgMonoid { gens: Vec<AffineAut> },
    /// Explicit finite monoid, closed under composition.
    Finite { elements: Vec<AffineAut> },
}

impl ShiftMonoid {
    pub fn lattice(basis: Vec<Vec<Rat>>) -> Result<ShiftMonoid> {
        if let Some(n) = basis.first().map(|v| v.len()) {
            if basis.iter().any(|v| v.len() != n) {
                return Err(Error::Invalid("basis vectors of unequal length".into()));
            }
            let rows: Vec<Vec<Rat>> = basis.clone();
            if linalg::rank(&rows) != basis.len() {
                return Err(Error::Invalid("lattice basis is linearly dependent".into()));
            }
        }
        Ok(ShiftMonoid::Lattice { basis })
    }

    pub fn fg_monoid(gens: Vec<AffineAut>) -> Result<ShiftMonoid> {
        if gens.iter().any(|g| !g.is_pure_shift()) {
            return Err(Error::Invalid(
                "finitely generated shift monoid requires pure shifts".into(),
            ));
        }
        Ok(ShiftMonoid::FgMonoid { gens })
    }

    /// Closes `elements` under composition; errors if the closure exceeds
    /// `cap` (the set would be infinite).
    pub fn finite(elements: Vec<AffineAut>, cap: usize) -> Result<ShiftMonoid> {
        let n = elements
            .first()
            .map(|a| a.nvars())
            .ok_or_else(|| Error::Invalid("empty finite monoid".into()))?;
        let mut set: std::collections::BTreeSet<AffineAut> = elements.into_iter().collect();
        set.insert(AffineAut::identity(n));
        loop {
            let mut new = Vec::new();
            for a in &set {
                for b in &set {
                    let c = a.compose(b)?;
                    if !set.contains(&c) {
                        new.push(c);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            if set.len() + new.len() > cap {
                return Err(Error::ClosureCapExceeded(cap));
            }
            set.extend(new);
        }
        Ok(ShiftMonoid::Finite {
            elements: set.into_iter().collect(),
        })
    }

    pub fn nvars(&self) -> Option<usize> {
        match self {
            ShiftMonoid::Lattice { basis } => basis.first().map(|v| v.len()),
            ShiftMonoid::FgMonoid { gens } => gens.first().map(|g| g.nvars()),
            ShiftMonoid::Finite { elements } => elements.first().map(|a| a.nvars()),
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            ShiftMonoid::Lattice { basis } => Some(basis.len()),
            _ => None,
        }
    }

    pub fn is_group(&self) -> bool {
        match self {
            ShiftMonoid::Lattice { .. } => true,
            ShiftMonoid::FgMonoid { gens } => gens.is_empty(),
            ShiftMonoid::Finite { elements } => {
                elements.iter().all(|a| {
                    let inv = a.invert();
                    elements.contains(&inv)
                })
            }
        }
    }

    /// Coordinates of a shift vector in the lattice basis, if in the span.
    pub fn lattice_coords(&self, shift: &[Rat]) -> Option<Vec<Rat>> {
        match self {
            ShiftMonoid::Lattice { basis } => linalg::solve_columns(basis, shift),
            _ => None,
        }
    }

    pub fn contains(&self, a: &AffineAut) -> bool {
        match self {
            ShiftMonoid::Lattice { .. } => {
                let Some(v) = a.shift_vector() else {
                    return false;
                };
                match self.lattice_coords(v) {
                    Some(coords) => coords.iter().all(crate::rat::is_integer),
                    None => false,
                }
            }
            ShiftMonoid::FgMonoid { gens } => {
                if a.is_identity() {
                    return true;
                }
                let Some(v) = a.shift_vector() else {
                    return false;
                };
                // Independent generators give a unique candidate combination.
                let cols: Vec<Vec<Rat>> = gens
                    .iter()
                    .map(|g| g.shift_vector().unwrap().to_vec())
                    .collect();
                if linalg::rank(&cols) == cols.len() {
                    match linalg::solve_columns(&cols, v) {
                        Some(c) => c
                            .iter()
                            .all(|x| crate::rat::is_integer(x) && !x.is_negative()),
                        None => false,
                    }
                } else {
                    // Dependent generators: bounded word search.
                    self.ball(8).contains(a)
                }
            }
            ShiftMonoid::Finite { elements } => elements.contains(a),
        }
    }

    /// Generating automorphisms (for a lattice: the basis shifts and their
    /// inverses).
    pub fn generator_auts(&self) -> Vec<AffineAut> {
        match self {
            ShiftMonoid::Lattice { basis } => {
                let mut out = Vec::new();
                for b in basis {
                    out.push(AffineAut::pure_shift(b.clone()));
                    out.push(AffineAut::pure_shift(b.iter().map(|x| -x.clone()).collect()));
                }
                out
            }
            ShiftMonoid::FgMonoid { gens } => gens.clone(),
            ShiftMonoid::Finite { elements } => elements.clone(),
        }
    }

    /// Finite sample of monoid elements: lattice box of the given radius in
    /// basis coordinates, words up to the given length, or all elements.
    pub fn ball(&self, radius: usize) -> Vec<AffineAut> {
        match self {
            ShiftMonoid::Lattice { basis } => {
                let Some(n) = self.nvars() else {
                    return vec![AffineAut::identity(0)];
                };
                let rank = basis.len();
                let r = radius as i64;
                let mut out = Vec::new();
                let mut coords = vec![-r; rank];
                loop {
                    let mut shift = vec![Rat::zero(); n];
                    for (c, b) in coords.iter().zip(basis.iter()) {
                        let f = Rat::from_integer(BigInt::from(*c));
                        for (s, x) in shift.iter_mut().zip(b.iter()) {
                            *s += &f * x;
                        }
                    }
                    out.push(AffineAut::pure_shift(shift));
                    let mut i = 0;
                    loop {
                        if i == rank {
                            return out;
                        }
                        if coords[i] < r {
                            coords[i] += 1;
                            break;
                        }
                        coords[i] = -r;
                        i += 1;
                    }
                }
            }
            ShiftMonoid::FgMonoid { gens } => {
                let n = self.nvars().unwrap_or(0);
                let mut set: std::collections::BTreeSet<AffineAut> =
                    [AffineAut::identity(n)].into();
                let mut frontier: Vec<AffineAut> = set.iter().cloned().collect();
                for _ in 0..radius {
                    let mut next = Vec::new();
                    for a in &frontier {
                        for g in gens {
                            let c = a.compose(g).expect("same setting");
                            if set.insert(c.clone()) {
                                next.push(c);
                            }
                        }
                    }
                    frontier = next;
                }
                set.into_iter().collect()
            }
            ShiftMonoid::Finite { elements } => elements.clone(),
        }
    }

    /// Checks `conjugate(g, m) in M` over the group's generators and the
    /// monoid's generators; sufficient because the normalizer is a subgroup
    /// and conjugation acts linearly on shift vectors.
    pub fn normalized_by(&self, group: &FiniteGroup) -> Result<bool> {
        let gens = match self {
            ShiftMonoid::Finite { elements } => elements.clone(),
            _ => self.generator_auts(),
        };
        for g in group.checking_generators() {
            for m in &gens {
                if !self.contains(&m.conjugate_by(g)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl ShiftMonoid {
    /// `|M|` for the finite kind.
    pub fn finite_order(&self) -> Option<usize> {
        match self {
            ShiftMonoid::Finite { elements } => Some(elements.len()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn z2() -> ShiftMonoid {
        ShiftMonoid::lattice(vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]).unwrap()
    }

    #[test]
    fn lattice_membership() {
        let m = z2();
        assert!(m.contains(&AffineAut::pure_shift(vec![rat(3), rat(-2)])));
        assert!(!m.contains(&AffineAut::pure_shift(vec![crate::rat::ratf(1, 2), rat(0)])));
        assert!(!m.contains(&AffineAut::transposition(2, 0, 1)));
        assert!(m.is_group());
    }

    #[test]
    fn sublattice_membership() {
        // only the diagonal
        let m = ShiftMonoid::lattice(vec![vec![rat(1), rat(1)]]).unwrap();
        assert!(m.contains(&AffineAut::pure_shift(vec![rat(2), rat(2)])));
        assert!(!m.contains(&AffineAut::pure_shift(vec![rat(1), rat(0)])));
    }

    #[test]
    fn fg_monoid_membership() {
        // N generated by t -> t - 1
        let sigma = AffineAut::pure_shift(vec![rat(-1)]);
        let m = ShiftMonoid::fg_monoid(vec![sigma.clone()]).unwrap();
        assert!(m.contains(&sigma.power(3)));
        assert!(!m.contains(&sigma.invert()));
        assert!(!m.is_group());
    }

    #[test]
    fn finite_closure() {
        let nu = AffineAut::new(
            vec![0, 1],
            vec![rat(-1), rat(-1)],
            vec![rat(0), rat(0)],
        )
        .unwrap();
        let m = ShiftMonoid::finite(vec![nu.clone()], 10).unwrap();
        assert_eq!(m.finite_order(), Some(2));
        assert!(m.contains(&nu));
        assert!(m.is_group());
    }

    #[test]
    fn normalizer_checks() {
        let g = FiniteGroup::closure(vec![AffineAut::transposition(2, 0, 1)], 10).unwrap();
        assert!(z2().normalized_by(&g).unwrap());
        let line = ShiftMonoid::lattice(vec![vec![rat(1), rat(0)]]).unwrap();
        assert!(!line.normalized_by(&g).unwrap());
        let trivial = FiniteGroup::trivial(2);
        assert!(line.normalized_by(&trivial).unwrap());
    }

    #[test]
    fn lattice_ball() {
        let m = ShiftMonoid::lattice(vec![vec![rat(1)]]).unwrap();
        let ball = m.ball(2);
        assert_eq!(ball.len(), 5);
    }
}
