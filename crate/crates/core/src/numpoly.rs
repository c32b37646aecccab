//! Numerical polynomials in the binomial basis `C(t+i, i)`.
//!
//! A numerical polynomial takes integer values at all sufficiently large
//! integers; in the basis `C(t+i, i)` its coefficients are integers. Both the
//! univariate and the multivariate (tensor-product basis) forms are kept in
//! normalized integer form.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `C(r + i, i)` for any integer `r`, via the falling-factorial product.
pub fn binom_shifted(r: i64, i: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..=i as i64 {
        num *= BigInt::from(r + j);
        den *= BigInt::from(j);
    }
    num / den
}

/// Dense polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DensePoly(pub Vec<BigRational>);

impl DensePoly {
    pub fn from_ints(c: &[i64]) -> Self {
        DensePoly(c.iter().map(|&x| BigRational::from_integer(x.into())).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    fn add_scaled(&mut self, other: &DensePoly, s: &BigRational) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigRational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * s;
        }
    }

    fn mul_linear(&self, c0: &BigRational) -> DensePoly {
        // self * (t + c0)
        let mut out = vec![BigRational::zero(); self.0.len() + 1];
        for (i, a) in self.0.iter().enumerate() {
            out[i] += a * c0;
            out[i + 1] += a;
        }
        DensePoly(out).trimmed()
    }
}

/// Dense expansion of `C(t - c + k, k) = Π_{j=1..k} (t - c + j) / k!`.
fn shifted_binomial_dense(c: i64, k: usize) -> DensePoly {
    let mut p = DensePoly(vec![BigRational::one()]);
    let mut fact = BigInt::one();
    for j in 1..=k as i64 {
        p = p.mul_linear(&BigRational::from_integer(BigInt::from(j - c)));
        fact *= BigInt::from(j);
    }
    let inv = BigRational::new(BigInt::one(), fact);
    DensePoly(p.0.into_iter().map(|a| a * &inv).collect())
}

fn to_integer(c: &BigRational) -> Result<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(Error::NotNumerical(c.to_string()))
    }
}

/// Rational binomial-basis coordinates of a dense polynomial.
fn dense_to_binomial_rational(p: &DensePoly) -> Vec<BigRational> {
    let mut rest = p.clone().trimmed();
    let top = rest.degree();
    if top < 0 {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); top as usize + 1];
    for i in (0..=top as usize).rev() {
        let lead = rest.0.get(i).cloned().unwrap_or_else(BigRational::zero);
        if lead.is_zero() {
            continue;
        }
        // C(t+i, i) has leading coefficient 1/i!
        let fact: BigInt = (1..=i as u64).map(BigInt::from).product();
        let a = lead * BigRational::from_integer(fact);
        rest.add_scaled(&shifted_binomial_dense(0, i), &-a.clone());
        out[i] = a;
    }
    out
}

/// Univariate numerical polynomial `Σ a_i · C(t+i, i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NumericalPolynomial {
    coeffs: Vec<BigInt>,
}

/// Degree, leading binomial coefficient and top coefficient of a polynomial
/// relative to a degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    /// Degree; `-1` for the zero polynomial.
    pub degree: i64,
    /// Coefficient of `C(t+d, d)`; zero for the zero polynomial.
    pub leading: BigInt,
    /// Coefficient of `C(t+cap, cap)`; zero when the degree is below the cap.
    pub top: BigInt,
}

impl NumericalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        let mut p = NumericalPolynomial { coeffs: coeffs.into_iter().collect() };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    /// Builds from rational binomial coordinates, rejecting non-integers.
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Result<Self> {
        let ints = coeffs.iter().map(to_integer).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(ints))
    }

    /// `C(t - shift + k, k)` rewritten in the basis `C(t+i, i)`.
    pub fn shifted_binomial(shift: i64, k: usize) -> Self {
        if shift == 0 {
            let mut c = vec![BigInt::zero(); k + 1];
            c[k] = BigInt::one();
            return Self::from_coeffs(c);
        }
        Self::from_rational_coeffs(&dense_to_binomial_rational(&shifted_binomial_dense(shift, k)))
            .expect("shifted binomials are numerical")
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `-1`.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Coefficient `a_i` of `C(t+i, i)`.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, r: i64) -> BigInt {
        self.coeffs.iter().enumerate().map(|(i, a)| a * binom_shifted(r, i)).sum()
    }

    pub fn to_dense(&self) -> DensePoly {
        let mut out = DensePoly::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            out.add_scaled(&shifted_binomial_dense(0, i), &BigRational::from_integer(a.clone()));
        }
        out.trimmed()
    }

    /// The unique binomial-basis representation of a dense polynomial.
    pub fn to_binomial_basis(p: &DensePoly) -> Result<Self> {
        Self::from_rational_coeffs(&dense_to_binomial_rational(p))
    }

    /// Fits a polynomial of degree `<= degree_bound` through the first
    /// `degree_bound + 1` points and checks every remaining point against it.
    ///
    /// Points must be consecutive in `r` and at least `degree_bound + 2` of
    /// them must be supplied.
    pub fn interpolate(values: &[(i64, BigInt)], degree_bound: usize) -> Result<Self> {
        let needed = degree_bound + 2;
        if values.len() < needed {
            return Err(Error::WindowTooSmall { needed, got: values.len() });
        }
        for w in values.windows(2) {
            if w[1].0 != w[0].0 + 1 {
                return Err(Error::NonConsecutive(w[1].0));
            }
        }
        let r0 = values[0].0;
        // forward differences of the fitting window
        let mut diffs: Vec<BigInt> = values[..=degree_bound].iter().map(|(_, v)| v.clone()).collect();
        let mut newton = Vec::with_capacity(degree_bound + 1);
        for _ in 0..=degree_bound {
            newton.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // Σ Δ^k f(r0) · C(t - r0, k), with C(t - r0, k) = C(t - (r0 + k) + k, k)
        let mut p = NumericalPolynomial::zero();
        for (k, d) in newton.iter().enumerate() {
            if !d.is_zero() {
                p = p.add(&Self::shifted_binomial(r0 + k as i64, k).scale(d));
            }
        }
        for (r, v) in &values[degree_bound + 1..] {
            if &p.eval(*r) != v {
                return Err(Error::NotEventuallyPolynomial { r: *r });
            }
        }
        Ok(p)
    }

    /// `(d, c_d, c_{m+n})` with `cap = m + n`.
    pub fn invariants(&self, m: usize, n: usize) -> Result<Invariants> {
        let cap = m + n;
        let degree = self.degree();
        if degree > cap as i64 {
            return Err(Error::DegreeExceedsCap { degree, cap });
        }
        let leading = if degree < 0 { BigInt::zero() } else { self.coeff(degree as usize) };
        Ok(Invariants { degree, leading, top: self.coeff(cap) })
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) + o.coeff(i)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) - o.coeff(i)))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * s))
    }

    /// Comparison by eventual dominance: the sign of `self(r) - other(r)` for
    /// all sufficiently large `r`.
    pub fn cmp_eventual(&self, other: &Self) -> Ordering {
        let diff = self.sub(other);
        match diff.coeffs.last() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl fmt::Display for NumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", a.abs())?;
            } else {
                write!(f, "{}*C(t+{},{})", a.abs(), i, i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalPolynomial({})", self)
    }
}

/// Set of maxima of `set` under every lexicographic order obtained by
/// permuting coordinate priority.
pub fn maximal_index_set(set: &BTreeSet<Vec<usize>>) -> Result<BTreeSet<Vec<usize>>> {
    let first = set.iter().next().ok_or(Error::EmptySet)?;
    let width = first.len();
    let mut perm: Vec<usize> = (0..width).collect();
    let mut out = BTreeSet::new();
    loop {
        let best = set
            .iter()
            .max_by(|a, b| perm.iter().map(|&j| a[j].cmp(&b[j])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
            .unwrap();
        out.insert(best.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Multivariate numerical polynomial
/// `Σ a_{i_1..i_k} · C(t_1+i_1, i_1) ⋯ C(t_k+i_k, i_k)` with `0 <= i_j <= caps[j]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiNumericalPolynomial {
    caps: Vec<usize>,
    coeffs: Vec<BigInt>,
}

/// Invariants of a multivariate numerical polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiInvariants {
    pub total_degree: i64,
    /// Coefficients of the terms of total degree `total_degree`.
    pub top_terms: Vec<(Vec<usize>, BigInt)>,
    /// Coefficient at the cap index `(m_1..m_p, n_1..n_q)`.
    pub top_coefficient: BigInt,
    /// Support set of nonzero coefficients.
    pub support: BTreeSet<Vec<usize>>,
    /// Maxima of the support under all coordinate-permuted lex orders.
    pub maximal: BTreeSet<Vec<usize>>,
}

impl MultiNumericalPolynomial {
    pub fn zero(caps: Vec<usize>) -> Self {
        let len = caps.iter().map(|c| c + 1).product();
        MultiNumericalPolynomial { caps, coeffs: vec![BigInt::zero(); len] }
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn arity(&self) -> usize {
        self.caps.len()
    }

    fn offset(&self, idx: &[usize]) -> Option<usize> {
        if idx.len() != self.caps.len() {
            return None;
        }
        let mut off = 0;
        for (i, c) in idx.iter().zip(&self.caps) {
            if i > c {
                return None;
            }
            off = off * (c + 1) + i;
        }
        Some(off)
    }

    fn index_of(&self, mut off: usize) -> Vec<usize> {
        let mut idx = vec![0; self.caps.len()];
        for (slot, c) in idx.iter_mut().zip(&self.caps).rev() {
            *slot = off % (c + 1);
            off /= c + 1;
        }
        idx
    }

    pub fn coeff(&self, idx: &[usize]) -> BigInt {
        self.offset(idx).map(|o| self.coeffs[o].clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn set_coeff(&mut self, idx: &[usize], value: BigInt) -> Result<()> {
        let off = self.offset(idx).ok_or(Error::DegreeExceedsCap {
            degree: idx.iter().sum::<usize>() as i64,
            cap: self.caps.iter().sum(),
        })?;
        self.coeffs[off] = value;
        Ok(())
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(o, c)| (self.index_of(o), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Product of univariate polynomials in distinct variables.
    pub fn outer_product(factors: &[NumericalPolynomial], caps: Vec<usize>) -> Result<Self> {
        assert_eq!(factors.len(), caps.len());
        for (f, &c) in factors.iter().zip(&caps) {
            if f.degree() > c as i64 {
                return Err(Error::DegreeExceedsCap { degree: f.degree(), cap: c });
            }
        }
        let mut out = Self::zero(caps);
        for off in 0..out.coeffs.len() {
            let idx = out.index_of(off);
            out.coeffs[off] = idx.iter().zip(factors).map(|(&i, f)| f.coeff(i)).product();
        }
        Ok(out)
    }

    pub fn eval(&self, r: &[i64]) -> BigInt {
        assert_eq!(r.len(), self.caps.len());
        let tables: Vec<Vec<BigInt>> =
            r.iter().zip(&self.caps).map(|(&ri, &c)| (0..=c).map(|i| binom_shifted(ri, i)).collect()).collect();
        self.terms().map(|(idx, a)| idx.iter().zip(&tables).fold(a.clone(), |acc, (&i, tab)| acc * &tab[i])).sum()
    }

    /// Converts a dense multivariate polynomial (monomial exponent vector →
    /// rational coefficient) into the tensor binomial basis.
    pub fn to_multi_binomial_basis<'a, I>(terms: I, caps: Vec<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [usize], &'a BigRational)>,
    {
        // conversion matrices: column j = binomial coordinates of t^j
        let mats: Vec<Vec<Vec<BigRational>>> = caps
            .iter()
            .map(|&c| {
                (0..=c)
                    .map(|j| {
                        let mut mono = vec![BigRational::zero(); j + 1];
                        mono[j] = BigRational::one();
                        let mut col = dense_to_binomial_rational(&DensePoly(mono));
                        col.resize(c + 1, BigRational::zero());
                        col
                    })
                    .collect()
            })
            .collect();
        let len: usize = caps.iter().map(|c| c + 1).product();
        let mut acc = vec![BigRational::zero(); len];
        let shape = Self::zero(caps.clone());
        for (mono, c) in terms {
            if mono.len() != caps.len() {
                return Err(Error::SignatureMismatch("monomial arity differs from caps".to_string()));
            }
            for (j, (&e, &cap)) in mono.iter().zip(&caps).enumerate() {
                if e > cap {
                    return Err(Error::DegreeExceedsCap { degree: e as i64, cap: caps[j] });
                }
            }
            for (off, slot) in acc.iter_mut().enumerate() {
                let idx = shape.index_of(off);
                let mut w = c.clone();
                for (k, (&i, &e)) in idx.iter().zip(mono).enumerate() {
                    w *= &mats[k][e][i];
                    if w.is_zero() {
                        break;
                    }
                }
                *slot += w;
            }
        }
        let coeffs = acc.iter().map(to_integer).collect::<Result<Vec<_>>>()?;
        Ok(MultiNumericalPolynomial { caps, coeffs })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.caps, o.caps);
        MultiNumericalPolynomial {
            caps: self.caps.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.caps, o.caps);
        MultiNumericalPolynomial {
            caps: self.caps.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        MultiNumericalPolynomial { caps: self.caps.clone(), coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// Degree in `t_j`; `-1` for the zero polynomial.
    pub fn partial_degree(&self, j: usize) -> i64 {
        self.terms().map(|(idx, _)| idx[j] as i64).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms().map(|(idx, _)| idx.iter().sum::<usize>() as i64).max().unwrap_or(-1)
    }

    pub fn support(&self) -> BTreeSet<Vec<usize>> {
        self.terms().map(|(idx, _)| idx).collect()
    }

    /// Fails with [`Error::EmptySet`] on the zero polynomial.
    pub fn multi_invariants(&self) -> Result<MultiInvariants> {
        let support = self.support();
        let maximal = maximal_index_set(&support)?;
        let total_degree = self.total_degree();
        let top_terms = self
            .terms()
            .filter(|(idx, _)| idx.iter().sum::<usize>() as i64 == total_degree)
            .map(|(idx, c)| (idx, c.clone()))
            .collect();
        Ok(MultiInvariants { total_degree, top_terms, top_coefficient: self.coeff(&self.caps), support, maximal })
    }
}

impl fmt::Display for MultiNumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, a)) in terms.iter().rev().enumerate() {
            if n == 0 {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            write!(f, "{}", a.abs())?;
            for (j, &i) in idx.iter().enumerate() {
                if i > 0 {
                    write!(f, "*C(t{}+{},{})", j + 1, i, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiNumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiNumericalPolynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pts(v: &[(i64, i64)]) -> Vec<(i64, BigInt)> {
        v.iter().map(|&(r, x)| (r, big(x))).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(NumericalPolynomial::from_i64(&[0, 0, 1]).eval(3), big(10));
        assert_eq!(NumericalPolynomial::zero().eval(17), big(0));
        assert_eq!(NumericalPolynomial::from_i64(&[-1, 2]).eval(5), big(11));
    }

    #[test]
    fn eval_is_total_on_integers() {
        // C(t+2,2) at t=-1,-2 vanishes and at t=-3 is 1
        let p = NumericalPolynomial::from_i64(&[0, 0, 1]);
        assert_eq!(p.eval(-1), big(0));
        assert_eq!(p.eval(-2), big(0));
        assert_eq!(p.eval(-3), big(1));
    }

    #[test]
    fn basis_change_examples() {
        let t_plus_1 = DensePoly::from_ints(&[1, 1]);
        assert_eq!(NumericalPolynomial::to_binomial_basis(&t_plus_1).unwrap(), NumericalPolynomial::from_i64(&[0, 1]));
        let half = BigRational::new(1.into(), 2.into());
        let p = DensePoly(vec![BigRational::from_integer(1.into()), BigRational::new(3.into(), 2.into()), half]);
        assert_eq!(NumericalPolynomial::to_binomial_basis(&p).unwrap(), NumericalPolynomial::from_i64(&[0, 0, 1]));
        let t2 = DensePoly::from_ints(&[0, 0, 1]);
        assert_eq!(NumericalPolynomial::to_binomial_basis(&t2).unwrap(), NumericalPolynomial::from_i64(&[1, -3, 2]));
    }

    #[test]
    fn basis_change_rejects_non_numerical() {
        let p = DensePoly(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        assert!(matches!(NumericalPolynomial::to_binomial_basis(&p), Err(Error::NotNumerical(_))));
    }

    #[test]
    fn interpolation_examples() {
        let p = NumericalPolynomial::interpolate(&pts(&[(5, 6), (6, 7), (7, 8)]), 1).unwrap();
        assert_eq!(p, NumericalPolynomial::from_i64(&[0, 1]));
        assert_eq!(
            NumericalPolynomial::interpolate(&pts(&[(4, 2), (5, 2), (6, 3), (7, 3)]), 1),
            Err(Error::NotEventuallyPolynomial { r: 6 })
        );
        let s = NumericalPolynomial::from_i64(&[0, 0, 3]);
        let vals: Vec<_> = (10..=14).map(|r| (r, s.eval(r))).collect();
        assert_eq!(NumericalPolynomial::interpolate(&vals, 2).unwrap(), s);
    }

    #[test]
    fn interpolation_window_errors() {
        assert_eq!(
            NumericalPolynomial::interpolate(&pts(&[(0, 1), (1, 2)]), 1),
            Err(Error::WindowTooSmall { needed: 3, got: 2 })
        );
        assert_eq!(
            NumericalPolynomial::interpolate(&pts(&[(0, 1), (2, 2), (3, 3)]), 1),
            Err(Error::NonConsecutive(2))
        );
    }

    #[test]
    fn invariant_examples() {
        let p = NumericalPolynomial::from_i64(&[0, 1, 3]);
        assert_eq!(p.invariants(1, 1).unwrap(), Invariants { degree: 2, leading: big(3), top: big(3) });
        let p = NumericalPolynomial::from_i64(&[0, 5]);
        assert_eq!(p.invariants(2, 1).unwrap(), Invariants { degree: 1, leading: big(5), top: big(0) });
        let free = NumericalPolynomial::from_i64(&[0, 0, 1]);
        assert_eq!(free.invariants(1, 1).unwrap(), Invariants { degree: 2, leading: big(1), top: big(1) });
        assert_eq!(free.invariants(1, 0), Err(Error::DegreeExceedsCap { degree: 2, cap: 1 }));
        let z = NumericalPolynomial::zero().invariants(1, 0).unwrap();
        assert_eq!(z.degree, -1);
    }

    #[test]
    fn shifted_binomial_matches_values() {
        for c in -3..6 {
            for k in 0..4 {
                let p = NumericalPolynomial::shifted_binomial(c, k);
                for r in -5..10 {
                    assert_eq!(p.eval(r), binom_shifted(r - c, k), "c={} k={} r={}", c, k, r);
                }
            }
        }
    }

    #[test]
    fn eventual_comparison() {
        let a = NumericalPolynomial::from_i64(&[100, 1]);
        let b = NumericalPolynomial::from_i64(&[0, 0, 1]);
        assert_eq!(a.cmp_eventual(&b), Ordering::Less);
        assert_eq!(b.cmp_eventual(&a), Ordering::Greater);
        assert_eq!(a.cmp_eventual(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn text_rendering() {
        assert_eq!(format!("{}", NumericalPolynomial::from_i64(&[1, -3, 2])), "2*C(t+2,2) - 3*C(t+1,1) + 1");
        assert_eq!(format!("{}", NumericalPolynomial::from_i64(&[-4])), "-4");
        assert_eq!(format!("{}", NumericalPolynomial::zero()), "0");
    }

    #[test]
    fn worked_maximal_set() {
        let a: BTreeSet<Vec<usize>> = [
            vec![1, 1, 1],
            vec![2, 3, 0],
            vec![0, 2, 3],
            vec![2, 0, 5],
            vec![3, 3, 1],
            vec![4, 1, 1],
            vec![2, 3, 3],
        ]
        .into_iter()
        .collect();
        let expect: BTreeSet<Vec<usize>> =
            [vec![2, 0, 5], vec![3, 3, 1], vec![4, 1, 1], vec![2, 3, 3]].into_iter().collect();
        assert_eq!(maximal_index_set(&a).unwrap(), expect);
    }

    #[test]
    fn maximal_set_small_cases() {
        let single: BTreeSet<Vec<usize>> = [vec![1, 2]].into_iter().collect();
        assert_eq!(maximal_index_set(&single).unwrap(), single);
        let chain: BTreeSet<Vec<usize>> = [vec![0, 0], vec![1, 1], vec![2, 2]].into_iter().collect();
        assert_eq!(maximal_index_set(&chain).unwrap(), [vec![2, 2]].into_iter().collect());
        assert_eq!(maximal_index_set(&BTreeSet::new()), Err(Error::EmptySet));
    }

    #[test]
    fn multivariate_free_invariants() {
        let f = NumericalPolynomial::from_i64(&[0, 1]);
        let phi = MultiNumericalPolynomial::outer_product(&[f.clone(), f], vec![1, 1]).unwrap();
        let inv = phi.multi_invariants().unwrap();
        assert_eq!(inv.top_coefficient, big(1));
        assert_eq!(inv.total_degree, 2);
        assert_eq!(inv.maximal, [vec![1, 1]].into_iter().collect());
        assert_eq!(phi.eval(&[3, 4]), big(20));
        assert_eq!(format!("{}", phi), "1*C(t1+1,1)*C(t2+1,1)");
    }

    #[test]
    fn multivariate_zero_has_no_maximal_set() {
        let z = MultiNumericalPolynomial::zero(vec![1, 1]);
        assert!(z.support().is_empty());
        assert_eq!(z.multi_invariants(), Err(Error::EmptySet));
    }

    #[test]
    fn multivariate_basis_change() {
        // 2*(t1+1)*(t2+1) = 2*t1*t2 + 2*t1 + 2*t2 + 2
        let two = BigRational::from_integer(2.into());
        let monos: [(Vec<usize>, BigRational); 4] =
            [(vec![1, 1], two.clone()), (vec![1, 0], two.clone()), (vec![0, 1], two.clone()), (vec![0, 0], two)];
        let phi = MultiNumericalPolynomial::to_multi_binomial_basis(
            monos.iter().map(|(m, c)| (m.as_slice(), c)),
            vec![1, 1],
        )
        .unwrap();
        assert_eq!(phi.coeff(&[1, 1]), big(2));
        assert_eq!(phi.support().len(), 1);
        for r1 in 0..4 {
            for r2 in 0..4 {
                assert_eq!(phi.eval(&[r1, r2]), big(2 * (r1 + 1) * (r2 + 1)));
            }
        }
    }
}
