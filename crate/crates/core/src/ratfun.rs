//! Rational functions over ℚ in canonical form.

use core::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::poly::{gcd, MPoly, PolyDisplay};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in lex order.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.as_constant() {
            return RatFun { num: num.scale(&c.recip()), den: MPoly::one(n) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coeff().recip();
        RatFun { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFun { num: MPoly::zero(nvars), den: MPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RatFun { num: MPoly::one(nvars), den: MPoly::one(nvars) }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        RatFun { num: MPoly::constant(nvars, c), den: MPoly::one(nvars) }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFun { num: p, den: MPoly::one(n) }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, v))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_constant() && o.den.is_constant() {
            // both polynomial
            return RatFun { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// Partial derivative with respect to `x_v` (quotient rule).
    pub fn derivative(&self, v: usize) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_constant() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        Self::new(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }

    /// Substitutes each indeterminate by a polynomial image.
    pub fn substitute(&self, images: &[MPoly]) -> Self {
        Self::new(self.num.substitute(images), self.den.substitute(images))
    }

    /// Renders with the given indeterminate names.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> RatFunDisplay<'a, S> {
        RatFunDisplay { f: self, names }
    }

    /// True when printing needs parentheses to be used as a factor.
    pub fn is_compound(&self) -> bool {
        !self.den.is_constant() || self.num.num_terms() > 1
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [&str; 0] = [];
        write!(f, "{}", self.display(&names))
    }
}

pub struct RatFunDisplay<'a, S: AsRef<str>> {
    f: &'a RatFun,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for RatFunDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = PolyDisplay { poly: &self.f.num, names: self.names };
        if self.f.den.is_constant() {
            return write!(f, "{}", num);
        }
        let den = PolyDisplay { poly: &self.f.den, names: self.names };
        if self.f.num.num_terms() > 1 {
            write!(f, "({})", num)?;
        } else {
            write!(f, "{}", num)?;
        }
        if self.f.den.num_terms() > 1 {
            write!(f, "/({})", den)
        } else {
            write!(f, "/{}", den)
        }
    }
}
