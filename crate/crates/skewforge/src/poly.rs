//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are sparse exponent maps ordered graded-lexicographically over
//! the fixed variable-id order (lower ids are more significant). Polynomials
//! never store zero coefficients, so structural equality decides value
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_string, Rat};

/// Sparse monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: u32, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Componentwise quotient, `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(v, e) in &other.0 {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                let (w, f) = self.0[i];
                if w < v {
                    out.push((w, f));
                    i += 1;
                } else if w == v {
                    if f < e {
                        return None;
                    }
                    if f > e {
                        out.push((w, f - e));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    /// Drops the exponent of `v`, returning it.
    pub fn without_var(&self, v: u32) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, f)| {
                if w == v {
                    e = f;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex with variable 0
    /// most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // Remaining exponents in `other` sit at later variables, so at
                // the current variable `self` has the larger exponent.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(v, e)), Some(&(w, f))) => {
                    if v < w {
                        return Ordering::Greater;
                    }
                    if v > w {
                        return Ordering::Less;
                    }
                    match e.cmp(&f) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

/// Sparse multivariate polynomial over `Rat`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: u32) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(Monomial::var(v), Rat::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn vars_used(&self) -> std::collections::BTreeSet<u32> {
        let mut out = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for &(v, _) in m.pairs() {
                out.insert(v);
            }
        }
        out
    }

    /// Leading term under graded lex (largest monomial).
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point
                    .get(v as usize)
                    .ok_or(Error::UnknownVariable(v))?;
                let mut p = Rat::one();
                for _ in 0..e {
                    p *= x;
                }
                t *= p;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `x_v -> scale[v] * x_{perm[v]} + shift[v]`.
    pub fn compose_affine(&self, perm: &[u32], scale: &[Rat], shift: &[Rat]) -> Result<Poly> {
        let n = perm.len() as u32;
        if let Some(v) = self.max_var() {
            if v >= n {
                return Err(Error::UnknownVariable(v));
            }
        }
        // Cache powers of each substituted variable image.
        let mut cache: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let key = (v, e);
                if !cache.contains_key(&key) {
                    let vi = v as usize;
                    let image = if scale[vi].is_one() && shift[vi].is_zero() {
                        Poly::var(perm[vi])
                    } else {
                        let mut img = Poly::zero();
                        img.add_term(Monomial::var(perm[vi]), scale[vi].clone());
                        img.add_term(Monomial::one(), shift[vi].clone());
                        img
                    };
                    cache.insert(key, image.pow(e));
                }
                t = t.mul(&cache[&key]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Remaps variable ids (used when embedding into a larger setting).
    pub fn map_vars(&self, map: &[u32]) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut pairs = Vec::with_capacity(m.pairs().len());
            for &(v, e) in m.pairs() {
                let nv = *map
                    .get(v as usize)
                    .ok_or(Error::UnknownVariable(v))?;
                pairs.push((nv, e));
            }
            out.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        Ok(out)
    }

    pub fn partial(&self, v: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let (rest, _) = m.without_var(v);
                let lowered = rest.mul(&Monomial::var_pow(v, e - 1));
                out.add_term(lowered, c * Rat::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Top-degree homogeneous part.
    pub fn top_form(&self) -> Poly {
        let d = self.degree();
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Content of the zero polynomial is 1.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// `self / content(self)`: coprime integer coefficients, sign preserved.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Exact multivariate division; `None` when the division is not exact.
    pub fn try_div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            quot.add_term(qm.clone(), qc.clone());
            let piece = divisor.mul_monomial(&qm, &qc);
            rem = rem.sub(&piece);
        }
        Some(quot)
    }

    /// Renders with the given variable names, descending graded lex.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_is_one = abs.is_one();
            if m.is_one() {
                out.push_str(&rat_string(&abs));
            } else {
                if !coeff_is_one {
                    out.push_str(&rat_string(&abs));
                    out.push('*');
                }
                let mut first = true;
                for &(v, e) in m.pairs() {
                    if !first {
                        out.push('*');
                    }
                    first = false;
                    let name = names
                        .get(v as usize)
                        .cloned()
                        .unwrap_or_else(|| format!("x{v}"));
                    out.push_str(&name);
                    if e > 1 {
                        out.push_str(&format!("^{e}"));
                    }
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Multivariate gcd via a primitive pseudo-remainder sequence.
// ---------------------------------------------------------------------------

/// Univariate view of a `Poly` in one main variable; coefficients are
/// polynomials in the remaining variables.
struct UniPoly {
    var: u32,
    coeffs: Vec<Poly>,
}

impl UniPoly {
    fn from_poly(p: &Poly, var: u32) -> UniPoly {
        let mut coeffs: Vec<Poly> = Vec::new();
        for (m, c) in p.terms() {
            let (rest, e) = m.without_var(var);
            if coeffs.len() <= e as usize {
                coeffs.resize(e as usize + 1, Poly::zero());
            }
            coeffs[e as usize].add_term(rest, c.clone());
        }
        let mut u = UniPoly { var, coeffs };
        u.trim();
        u
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &Poly {
        self.coeffs.last().expect("nonzero")
    }

    fn to_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in self.coeffs.iter().enumerate() {
            for (m, k) in c.terms() {
                out.add_term(m.mul(&Monomial::var_pow(self.var, e as u32)), k.clone());
            }
        }
        out
    }

    fn scale(&self, p: &Poly) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    fn sub(&self, other: &UniPoly) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), Poly::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].sub(c);
        }
        let mut u = UniPoly {
            var: self.var,
            coeffs,
        };
        u.trim();
        u
    }

    /// `self * x^k`
    fn shifted(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly {
                var: self.var,
                coeffs: vec![],
            };
        }
        let mut coeffs = vec![Poly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly {
            var: self.var,
            coeffs,
        }
    }

    /// Pseudo-remainder of `self` by `other` (both nonzero, deg self >= deg other).
    /// Rational contents are stripped along the way to keep integers small;
    /// only the primitive part of the result is meaningful to the PRS.
    fn pseudo_rem(&self, other: &UniPoly) -> UniPoly {
        let db = other.degree();
        let lb = other.lc().clone();
        let lb_const = lb.is_constant();
        let mut r = UniPoly {
            var: self.var,
            coeffs: self.coeffs.clone(),
        };
        while !r.is_zero() && r.degree() >= db {
            let dr = r.degree();
            let lr = r.lc().clone();
            if lb_const {
                let f = lb.as_constant().unwrap().recip();
                r = r.sub(&other.shifted(dr - db).scale(&lr.scale(&f)));
            } else {
                r = r.scale(&lb).sub(&other.shifted(dr - db).scale(&lr));
                r.strip_rational_content();
            }
        }
        r
    }

    fn strip_rational_content(&mut self) {
        let mut c: Option<Rat> = None;
        for p in &self.coeffs {
            if !p.is_zero() {
                let pc = p.content();
                c = Some(match c {
                    None => pc,
                    Some(prev) => {
                        // gcd of positive rationals
                        use num_integer::Integer as _;
                        Rat::new(
                            prev.numer().gcd(pc.numer()),
                            prev.denom().lcm(pc.denom()),
                        )
                    }
                });
            }
        }
        if let Some(c) = c {
            if !c.is_one() {
                let inv = c.recip();
                for p in self.coeffs.iter_mut() {
                    *p = p.scale(&inv);
                }
            }
        }
    }

    /// Gcd of all coefficients, folded from the smallest one so the running
    /// gcd stays small.
    fn content(&self) -> Poly {
        let mut coeffs: Vec<&Poly> = self.coeffs.iter().filter(|c| !c.is_zero()).collect();
        coeffs.sort_by_key(|c| c.num_terms());
        let mut g = Poly::zero();
        for c in coeffs {
            g = poly_gcd(&g, c);
            if g.as_constant().map(|c| c.is_one()).unwrap_or(false) {
                break;
            }
        }
        g
    }

    fn div_coeffs(&self, d: &Poly) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.try_div_exact(d).expect("content divides"))
                .collect(),
        }
    }
}

/// Degree of the gcd of the univariate specializations of `a` and `b` in the
/// variable `w`, all other variables evaluated at a deterministic sequence of
/// points. Sound upper bound: `deg_w gcd(a,b) <= deg gcd(a(p), b(p))`
/// whenever a leading coefficient survives the specialization; `None` when no
/// tried point certifies that.
fn specialized_gcd_degree(a: &Poly, b: &Poly, w: u32) -> Option<usize> {
    let nvars = (a.max_var().unwrap_or(0).max(b.max_var().unwrap_or(0)) + 1) as usize;
    let au = UniPoly::from_poly(a, w);
    let bu = UniPoly::from_poly(b, w);
    for attempt in 0..4u64 {
        // Deterministic pseudo-random rationals with spread denominators.
        let point: Vec<Rat> = (0..nvars)
            .map(|v| {
                let h = (v as u64)
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add(attempt.wrapping_mul(0xbf58476d1ce4e5b9));
                let num = ((h >> 16) % 41) as i64 - 20;
                let den = ((h >> 40) % 7) as i64 + 2;
                Rat::new(BigInt::from(num * 2 + 1), BigInt::from(den))
            })
            .collect();
        let lc_ok = |u: &UniPoly| -> Option<bool> {
            Some(!u.lc().eval(&point).ok()?.is_zero())
        };
        match (lc_ok(&au), lc_ok(&bu)) {
            (Some(true), _) | (_, Some(true)) => {}
            _ => continue,
        }
        let specialize = |u: &UniPoly| -> Option<Vec<Rat>> {
            u.coeffs.iter().map(|c| c.eval(&point).ok()).collect()
        };
        let (Some(ua), Some(ub)) = (specialize(&au), specialize(&bu)) else {
            continue;
        };
        return Some(univariate_gcd_degree(ua, ub));
    }
    None
}

fn univariate_degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn univariate_gcd_degree(mut p: Vec<Rat>, mut q: Vec<Rat>) -> usize {
    loop {
        let (Some(dp), Some(dq)) = (univariate_degree(&p), univariate_degree(&q)) else {
            return univariate_degree(&p)
                .or(univariate_degree(&q))
                .unwrap_or(0);
        };
        if dp < dq {
            std::mem::swap(&mut p, &mut q);
            continue;
        }
        let dq = univariate_degree(&q).unwrap();
        let factor = &p[univariate_degree(&p).unwrap()] / &q[dq];
        let shift = univariate_degree(&p).unwrap() - dq;
        for i in 0..=dq {
            let t = &q[i] * &factor;
            p[i + shift] -= t;
        }
        if univariate_degree(&p).is_none() {
            return dq;
        }
    }
}

/// Canonical gcd representative: primitive integer coefficients with positive
/// leading coefficient under graded lex.
fn gcd_canonical(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let prim = p.primitive_part();
    if prim.leading_coeff().is_negative() {
        prim.neg()
    } else {
        prim
    }
}

/// Gcd of multivariate polynomials over the rationals, up to the canonical
/// normalization above. `gcd(0, p) = canonical(p)`, `gcd` of two nonzero
/// constants is 1.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return gcd_canonical(b);
    }
    if b.is_zero() {
        return gcd_canonical(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if std::env::var_os("SKEWFORGE_GCD_DEBUG").is_some() {
        eprintln!(
            "gcd enter: {} terms deg {} vs {} terms deg {}",
            a.num_terms(),
            a.degree(),
            b.num_terms(),
            b.degree()
        );
    }
    // Polynomials in disjoint variables have no common nonunit divisor.
    let shared: Vec<u32> = a
        .vars_used()
        .intersection(&b.vars_used())
        .copied()
        .collect();
    if shared.is_empty() {
        return Poly::one();
    }
    // Cheap exact-divisibility probes catch the common cases where one side
    // divides the other (e.g. cancelling a denominator factor).
    if a.degree() >= b.degree() && a.try_div_exact(b).is_some() {
        return gcd_canonical(b);
    }
    if b.degree() > a.degree() && b.try_div_exact(a).is_some() {
        return gcd_canonical(a);
    }
    // Specialization screen: if every shared variable certifies a trivial
    // univariate gcd, the polynomials are coprime.
    let mut candidates: Vec<(u32, Option<usize>)> = Vec::new();
    let mut all_trivial = true;
    for &w in &shared {
        let d = specialized_gcd_degree(a, b, w);
        match d {
            Some(0) => {}
            _ => {
                all_trivial = false;
                candidates.push((w, d));
            }
        }
    }
    if all_trivial {
        return Poly::one();
    }
    // Interpolation first: reconstruct a candidate factor from monic
    // univariate images over a small tensor grid (degree bounds from the
    // screens) and verify it by exact division. Sound regardless of the
    // heuristics; on success peel the factor and recurse.
    if let Some(g) = interpolated_gcd(a, b, &shared, &candidates) {
        if std::env::var_os("SKEWFORGE_GCD_DEBUG").is_some() {
            eprintln!("  interp hit: {} terms deg {}", g.num_terms(), g.degree());
        }
        let ar = a.try_div_exact(&g).expect("verified divisor");
        let br = b.try_div_exact(&g).expect("verified divisor");
        return gcd_canonical(&g.mul(&poly_gcd(&ar, &br)));
    }
    if std::env::var_os("SKEWFORGE_GCD_DEBUG").is_some() {
        eprintln!("  prs fallback: cands {candidates:?}");
    }
    prs_gcd(a, b, &candidates)
}

/// Degree bound per variable used by the interpolation: the screen degree
/// when certified, otherwise the smaller input degree.
fn var_bound(a: &Poly, b: &Poly, w: u32, candidates: &[(u32, Option<usize>)]) -> usize {
    for &(cw, d) in candidates {
        if cw == w {
            return match d {
                Some(d) => d,
                None => {
                    let da = UniPoly::from_poly(a, w).degree();
                    let db = UniPoly::from_poly(b, w).degree();
                    da.min(db)
                }
            };
        }
    }
    0
}

/// Brown-style reconstruction of the gcd: monic univariate images in a main
/// variable `v` (valid because a leading coefficient of an input in `v` is
/// constant), interpolated coefficient-wise over the remaining variables.
/// Returns a verified common divisor, or `None` to fall back.
fn interpolated_gcd(
    a: &Poly,
    b: &Poly,
    shared: &[u32],
    candidates: &[(u32, Option<usize>)],
) -> Option<Poly> {
    // Main variable: certified-positive with the smallest image degree and a
    // constant leading coefficient on at least one side (so the gcd is monic
    // in it up to a constant).
    let mut main: Option<(u32, usize)> = None;
    for &(w, d) in candidates {
        let Some(d) = d else { continue };
        if d == 0 {
            continue;
        }
        let monic_ok = UniPoly::from_poly(a, w).lc().is_constant()
            || UniPoly::from_poly(b, w).lc().is_constant();
        if !monic_ok {
            continue;
        }
        if main.map(|(_, best)| d < best).unwrap_or(true) {
            main = Some((w, d));
        }
    }
    let (v, dv) = main?;
    let nvars = (a.max_var().unwrap_or(0).max(b.max_var().unwrap_or(0)) + 1) as usize;
    // Interpolation variables: every other shared variable, with its bound.
    let mut grid_vars: Vec<(u32, usize)> = Vec::new();
    let mut grid_size = 1usize;
    for &w in shared {
        if w == v {
            continue;
        }
        let bound = var_bound(a, b, w, candidates);
        grid_size = grid_size.saturating_mul(bound + 1);
        if grid_size > 512 {
            return None;
        }
        grid_vars.push((w, bound));
    }
    let au = UniPoly::from_poly(a, v);
    let bu = UniPoly::from_poly(b, v);
    'attempt: for attempt in 0..3i64 {
        // Node values: per-variable arithmetic progressions, distinct per
        // attempt; unused variables get fixed values.
        let nodes: Vec<(u32, Vec<Rat>)> = grid_vars
            .iter()
            .map(|&(w, bound)| {
                let base = 2 + attempt * 7 + (w as i64 % 5);
                (
                    w,
                    (0..=bound as i64)
                        .map(|k| Rat::from_integer(BigInt::from(base + 3 * k)))
                        .collect::<Vec<Rat>>(),
                )
            })
            .collect();
        let fixed: Vec<Rat> = (0..nvars)
            .map(|u| {
                let h = (u as i64 + 1) * 5 + attempt * 13;
                Rat::new(BigInt::from(2 * h + 1), BigInt::from(3))
            })
            .collect();
        // Collect monic images over the grid.
        let mut images: std::collections::BTreeMap<Vec<usize>, Vec<Rat>> = Default::default();
        let mut idx = vec![0usize; grid_vars.len()];
        loop {
            let mut point = fixed.clone();
            for (slot, &(w, _)) in grid_vars.iter().enumerate() {
                point[w as usize] = nodes[slot].1[idx[slot]].clone();
            }
            let specialize = |u: &UniPoly| -> Option<Vec<Rat>> {
                u.coeffs.iter().map(|c| c.eval(&point).ok()).collect()
            };
            let (Some(ua), Some(ub)) = (specialize(&au), specialize(&bu)) else {
                continue 'attempt;
            };
            if univariate_degree(&ua) != Some(au.degree())
                && univariate_degree(&ub) != Some(bu.degree())
            {
                continue 'attempt;
            }
            let g = univariate_gcd_monic(ua, ub);
            if univariate_degree(&g) != Some(dv) {
                continue 'attempt;
            }
            images.insert(idx.clone(), g);
            // advance the grid index
            let mut slot = 0;
            loop {
                if slot == grid_vars.len() {
                    break;
                }
                idx[slot] += 1;
                if idx[slot] <= grid_vars[slot].1 {
                    break;
                }
                idx[slot] = 0;
                slot += 1;
            }
            if slot == grid_vars.len() {
                break;
            }
        }
        // Interpolate each coefficient below the monic leading one.
        let mut g = Poly::from_terms([(Monomial::var_pow(v, dv as u32), Rat::one())]);
        for j in 0..dv {
            let coeff = interpolate_tensor(&nodes, &mut |ix: &[usize]| {
                images[&ix.to_vec()][j].clone()
            });
            for (m, c) in coeff.terms() {
                g.add_term(m.mul(&Monomial::var_pow(v, j as u32)), c.clone());
            }
        }
        let g = gcd_canonical(&g);
        if a.try_div_exact(&g).is_some() && b.try_div_exact(&g).is_some() {
            return Some(g);
        }
    }
    None
}

/// Tensor-product Lagrange interpolation over the given nodes.
fn interpolate_tensor(
    nodes: &[(u32, Vec<Rat>)],
    value: &mut dyn FnMut(&[usize]) -> Rat,
) -> Poly {
    fn rec(
        nodes: &[(u32, Vec<Rat>)],
        prefix: &mut Vec<usize>,
        value: &mut dyn FnMut(&[usize]) -> Rat,
    ) -> Poly {
        let Some((v, pts)) = nodes.first() else {
            return Poly::constant(value(prefix));
        };
        let mut acc = Poly::zero();
        for i in 0..pts.len() {
            prefix.push(i);
            let sub = rec(&nodes[1..], prefix, value);
            prefix.pop();
            if sub.is_zero() {
                continue;
            }
            let mut basis = Poly::one();
            for (k, nk) in pts.iter().enumerate() {
                if k != i {
                    let scale = (&pts[i] - nk).recip();
                    let lin = Poly::var(*v)
                        .sub(&Poly::constant(nk.clone()))
                        .scale(&scale);
                    basis = basis.mul(&lin);
                }
            }
            acc = acc.add(&sub.mul(&basis));
        }
        acc
    }
    let mut prefix = Vec::new();
    rec(nodes, &mut prefix, value)
}

/// Monic univariate gcd over the rationals.
fn univariate_gcd_monic(mut p: Vec<Rat>, mut q: Vec<Rat>) -> Vec<Rat> {
    loop {
        let (dp, dq) = match (univariate_degree(&p), univariate_degree(&q)) {
            (Some(dp), Some(dq)) => (dp, dq),
            (Some(dp), None) => {
                let lead = p[dp].clone();
                for c in p.iter_mut() {
                    *c /= &lead;
                }
                p.truncate(dp + 1);
                return p;
            }
            (None, Some(dq)) => {
                let lead = q[dq].clone();
                for c in q.iter_mut() {
                    *c /= &lead;
                }
                q.truncate(dq + 1);
                return q;
            }
            (None, None) => return vec![],
        };
        if dp < dq {
            std::mem::swap(&mut p, &mut q);
            continue;
        }
        let dq = univariate_degree(&q).unwrap();
        let dp = univariate_degree(&p).unwrap();
        let factor = &p[dp] / &q[dq];
        let shift = dp - dq;
        for i in 0..=dq {
            let t = &q[i] * &factor;
            p[i + shift] -= t;
        }
    }
}

/// Fallback: primitive pseudo-remainder sequence in a main variable chosen
/// to keep the divisor monic when possible.
fn prs_gcd(a: &Poly, b: &Poly, candidates: &[(u32, Option<usize>)]) -> Poly {
    let small = if a.num_terms() <= b.num_terms() { a } else { b };
    let large = if a.num_terms() <= b.num_terms() { b } else { a };
    let mut best: (u32, i64) = (candidates[0].0, i64::MIN);
    for &(w, d) in candidates {
        let mut score: i64 = 0;
        if UniPoly::from_poly(small, w).lc().is_constant() {
            score += 100;
        }
        if UniPoly::from_poly(large, w).lc().is_constant() {
            score += 10;
        }
        if let Some(d) = d {
            score -= d as i64;
        } else {
            score -= 50;
        }
        if score > best.1 {
            best = (w, score);
        }
    }
    let v = best.0;
    let au = UniPoly::from_poly(a, v);
    let bu = UniPoly::from_poly(b, v);
    let ca = au.content();
    let cb = bu.content();
    let c = poly_gcd(&ca, &cb);
    let mut p = au.div_coeffs(&ca);
    let mut q = bu.div_coeffs(&cb);
    if p.degree() < q.degree() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.pseudo_rem(&q);
        if r.is_zero() {
            break;
        }
        if r.degree() == 0 {
            // Coprime in the main variable.
            return gcd_canonical(&c);
        }
        p = q;
        q = UniPoly {
            var: r.var,
            coeffs: {
                let rc = r.content();
                r.div_coeffs(&rc).coeffs
            },
        };
    }
    gcd_canonical(&c.mul(&q.to_poly()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn grlex_order() {
        let m_x2 = Monomial::var_pow(0, 2);
        let m_xy = Monomial::from_pairs([(0, 1), (1, 1)]);
        let m_y2 = Monomial::var_pow(1, 2);
        let m_x = Monomial::var(0);
        assert!(m_x2 > m_xy);
        assert!(m_xy > m_y2);
        assert!(m_y2 > m_x);
        assert!(m_x > Monomial::one());
    }

    #[test]
    fn arithmetic() {
        let p = x().add(&Poly::one()); // x + 1
        let q = x().sub(&Poly::one()); // x - 1
        let prod = p.mul(&q);
        let expect = x().mul(&x()).sub(&Poly::one());
        assert_eq!(prod, expect);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn division_exact() {
        let p = x().pow(2).sub(&y().pow(2));
        let d = x().sub(&y());
        let q = p.try_div_exact(&d).unwrap();
        assert_eq!(q, x().add(&y()));
        assert!(p.try_div_exact(&x().add(&Poly::one())).is_none());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let common = x().add(&y()).mul(&x().sub(&Poly::one()));
        let a = common.mul(&x());
        let b = common.mul(&y().add(&Poly::constant(rat(2))));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, gcd_canonical(&common));
    }

    #[test]
    fn gcd_of_constants_is_one() {
        let a = Poly::constant(rat(4));
        let b = Poly::constant(rat(6));
        assert_eq!(poly_gcd(&a, &b), Poly::one());
    }

    #[test]
    fn content_and_primitive() {
        let p = x().scale(&rat(2)).add(&Poly::constant(rat(2)));
        assert_eq!(p.content(), rat(2));
        assert_eq!(p.primitive_part(), x().add(&Poly::one()));
    }

    #[test]
    fn compose_affine_shift() {
        // t^2 under t -> t - 1 becomes t^2 - 2t + 1
        let p = x().pow(2);
        let out = p
            .compose_affine(&[0], &[rat(1)], &[rat(-1)])
            .unwrap();
        let expect = x().pow(2).sub(&x().scale(&rat(2))).add(&Poly::one());
        assert_eq!(out, expect);
    }

    #[test]
    fn eval_exact() {
        let p = x().mul(&y()).add(&Poly::one());
        let v = p.eval(&[rat(2), rat(3)]).unwrap();
        assert_eq!(v, rat(7));
    }

    #[test]
    fn partials_and_top_form() {
        let p = x().pow(2).mul(&y()).add(&x()); // x^2 y + x
        assert_eq!(p.partial(0), x().mul(&y()).scale(&rat(2)).add(&Poly::one()));
        assert_eq!(p.top_form(), x().pow(2).mul(&y()));
    }
}
