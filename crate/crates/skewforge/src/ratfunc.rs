//! Normalized rational functions: elements of the coefficient field L.
//!
//! Canonical representative: numerator and denominator coprime, jointly
//! primitive with integer coefficients, and the denominator's graded-lex
//! leading coefficient positive. Structural equality therefore decides value
//! equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, Poly};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds the canonical representative of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.try_div_exact(&g).expect("gcd divides numerator"),
                den.try_div_exact(&g).expect("gcd divides denominator"),
            )
        };
        // Joint scaling: integer coefficients, coprime across both parts.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in num.terms().chain(den.terms()) {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scale = Rat::new(den_lcm, num_gcd);
        num = num.scale(&scale);
        den = den.scale(&scale);
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc::new(p, Poly::one()).expect("unit denominator")
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var(v: u32) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True when the value is a polynomial (constant denominator).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial value, when `is_polynomial`.
    pub fn as_poly(&self) -> Option<Poly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.as_constant().unwrap() / self.den.as_constant().unwrap())
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.num.max_var().max(self.den.max_var())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = poly_gcd(&self.den, &other.den);
        let (db, dd) = if g.is_constant() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.try_div_exact(&g).unwrap(),
                other.den.try_div_exact(&g).unwrap(),
            )
        };
        let num = self.num.mul(&dd).add(&other.num.mul(&db));
        let den = self.den.mul(&dd);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let a = self.num.try_div_exact(&g1).unwrap();
        let d = other.den.try_div_exact(&g1).unwrap();
        let c = other.num.try_div_exact(&g2).unwrap();
        let b = self.den.try_div_exact(&g2).unwrap();
        RatFunc::new(a.mul(&c), b.mul(&d)).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        let mut out = RatFunc::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation; `PoleAtPoint` when the denominator vanishes.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.eval(point)?;
        Ok(n / d)
    }

    /// Substitutes `x_v -> scale[v] * x_{perm[v]} + shift[v]`.
    pub fn compose_affine(&self, perm: &[u32], scale: &[Rat], shift: &[Rat]) -> Result<RatFunc> {
        let num = self.num.compose_affine(perm, scale, shift)?;
        let den = self.den.compose_affine(perm, scale, shift)?;
        RatFunc::new(num, den)
    }

    pub fn map_vars(&self, map: &[u32]) -> Result<RatFunc> {
        RatFunc::new(self.num.map_vars(map)?, self.den.map_vars(map)?)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_polynomial() && self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return self.num.render(names);
        }
        format!("({})/({})", self.num.render(names), self.den.render(names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratf};

    fn x() -> Poly {
        Poly::var(0)
    }

    #[test]
    fn normalize_common_factor() {
        // (x^2 - 1, x - 1) -> (x + 1)/1
        let f = RatFunc::new(x().pow(2).sub(&Poly::one()), x().sub(&Poly::one())).unwrap();
        assert_eq!(f, RatFunc::from_poly(x().add(&Poly::one())));
        assert!(f.is_polynomial());
    }

    #[test]
    fn normalize_zero() {
        let f = RatFunc::new(Poly::zero(), x().pow(3)).unwrap();
        assert_eq!(f, RatFunc::zero());
        assert_eq!(f.den(), &Poly::one());
    }

    #[test]
    fn normalize_content() {
        // (2x + 2, 4) -> (x+1)/2
        let f = RatFunc::new(
            x().scale(&rat(2)).add(&Poly::constant(rat(2))),
            Poly::constant(rat(4)),
        )
        .unwrap();
        assert_eq!(f.num(), &x().add(&Poly::one()));
        assert_eq!(f.den(), &Poly::constant(rat(2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFunc::new(Poly::one(), Poly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn field_ops() {
        let inv_x = RatFunc::new(Poly::one(), x()).unwrap();
        let two_over_x = inv_x.add(&inv_x);
        assert_eq!(two_over_x, RatFunc::new(Poly::constant(rat(2)), x()).unwrap());
        let f = RatFunc::new(x().add(&Poly::one()), x().sub(&Poly::one())).unwrap();
        assert_eq!(f.mul(&RatFunc::one()), f);
        // (x^2-1)/1 divided by (x+1)/1 = x-1
        let a = RatFunc::from_poly(x().pow(2).sub(&Poly::one()));
        let b = RatFunc::from_poly(x().add(&Poly::one()));
        assert_eq!(a.div(&b).unwrap(), RatFunc::from_poly(x().sub(&Poly::one())));
    }

    #[test]
    fn eval_and_pole() {
        let f = RatFunc::new(x().add(&Poly::one()), x().sub(&Poly::one())).unwrap();
        assert_eq!(f.eval(&[rat(3)]).unwrap(), rat(2));
        assert!(matches!(f.eval(&[rat(1)]), Err(Error::PoleAtPoint)));
    }

    #[test]
    fn eval_gt_coefficient() {
        // -(l21 - l11)(l22 - l11) at (l21, l22, l11) = (5/2, 1/3, 0) -> -5/6
        let l21 = Poly::var(0);
        let l22 = Poly::var(1);
        let l11 = Poly::var(2);
        let p = l21.sub(&l11).mul(&l22.sub(&l11)).neg();
        let f = RatFunc::from_poly(p);
        let v = f.eval(&[ratf(5, 2), ratf(1, 3), rat(0)]).unwrap();
        assert_eq!(v, ratf(-5, 6));
    }
}
