//! Sparse multivariate polynomials over ℚ with a recursive gcd.
//!
//! Monomials are stored as exponent vectors keyed in a `BTreeMap`, so the
//! map's natural order is lexicographic with `x_0` most significant and the
//! last key is the lex-leading monomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The indeterminate `x_v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable index out of range");
        let mut mono = vec![0; nvars];
        mono[v] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(mono, BigRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().iter().all(|&e| e == 0),
            _ => false,
        }
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[v]).max()
    }

    pub fn depends_on(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m[v] > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, mono: &[u32]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(mono).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = rc / &dc;
            let step = Self::from_terms(self.nvars, [(qm.clone(), qc.clone())]);
            rem = rem.sub(&d.mul(&step));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales so the lex-leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Partial derivative with respect to `x_v`.
    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[v] > 0 {
                let mut m2 = m.clone();
                m2[v] -= 1;
                out.add_term(m2, c * BigRational::from_integer(BigInt::from(m[v])));
            }
        }
        out
    }

    /// Substitutes each `x_v` by `images[v]`.
    pub fn substitute(&self, images: &[MPoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.nvars, c.clone());
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[v].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Coefficients with respect to `x_v`: `self = Σ_k coeffs[k] · x_v^k`.
    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = core::mem::replace(&mut m2[v], 0);
            out.entry(k).or_insert_with(|| MPoly::zero(self.nvars)).add_term(m2, c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> MPoly {
        self.coeffs_in(v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| Self::zero(self.nvars))
    }

    fn content_in(&self, v: usize) -> MPoly {
        let mut g = Self::zero(self.nvars);
        for (_, c) in self.coeffs_in(v) {
            g = gcd(&g, &c);
            if g.is_constant() {
                return Self::one(self.nvars);
            }
        }
        g
    }

    fn primitive_part_in(&self, v: usize) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides polynomial").integer_primitive()
    }

    /// Scaled to coprime integer coefficients with positive lead.
    fn integer_primitive(&self) -> MPoly {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return self.clone();
        }
        let mut s = BigRational::new(den, num);
        if self.leading_coeff().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Integer coefficients of a polynomial in `x_v` alone, lowest degree first.
    fn dense_integer(&self, v: usize) -> Vec<BigInt> {
        let p = self.integer_primitive();
        let mut out = vec![BigInt::zero(); p.degree_in(v).unwrap_or(0) as usize + 1];
        for (m, c) in &p.terms {
            out[m[v] as usize] = c.to_integer();
        }
        out
    }

    fn pseudo_rem_in(&self, g: &MPoly, v: usize) -> MPoly {
        let dg = g.degree_in(v).unwrap_or(0);
        let lg = g.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v).unwrap();
            if dr < dg {
                break;
            }
            let lr = r.lc_in(v);
            let mut shift = vec![0u32; self.nvars];
            shift[v] = dr - dg;
            r = lg.mul(&r).sub(&lr.mul(&g.mul_monomial(&shift)));
        }
        r
    }
}

/// Monic greatest common divisor over ℚ. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    let v = (0..n).find(|&v| a.depends_on(v) || b.depends_on(v)).unwrap();
    if (v + 1..n).all(|w| !a.depends_on(w) && !b.depends_on(w)) && a.depends_on(v) && b.depends_on(v) {
        if let Some(g) = heuristic_gcd(&a.dense_integer(v), &b.dense_integer(v)) {
            let mut out = MPoly::zero(n);
            for (k, c) in g.into_iter().enumerate() {
                let mut m = vec![0; n];
                m[v] = k as u32;
                out.add_term(m, BigRational::from_integer(c));
            }
            return out.monic();
        }
    }
    if !a.depends_on(v) {
        return gcd(a, &b.content_in(v));
    }
    if !b.depends_on(v) {
        return gcd(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides").integer_primitive();
    let pb = b.div_exact(&cb).expect("content divides").integer_primitive();
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    while !g.is_zero() {
        let r = f.pseudo_rem_in(&g, v);
        f = g;
        g = r.primitive_part_in(v);
    }
    c.mul(&f.primitive_part_in(v)).monic()
}

fn eval_dense(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Whether `d` divides `p` over ℤ (both dense, lowest degree first).
fn divides_dense(d: &[BigInt], p: &[BigInt]) -> bool {
    let lead = d.last().expect("nonzero divisor");
    let mut rem = p.to_vec();
    while rem.len() >= d.len() {
        let top = rem.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return false;
        }
        let shift = rem.len() + 1 - d.len();
        for (k, c) in d[..d.len() - 1].iter().enumerate() {
            rem[shift + k] -= &q * c;
        }
    }
    rem.iter().all(Zero::is_zero)
}

/// Heuristic gcd of two primitive integer polynomials: evaluate at a large
/// integer, take the integer gcd and read the result back in balanced base
/// `ξ`. A candidate that divides both inputs is the gcd; `None` asks the
/// caller to fall back to remainder sequences.
fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let norm = |p: &[BigInt]| p.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut xi: BigInt = norm(a).min(norm(b)) * 2u32 + 29u32;
    for _ in 0..6 {
        let gamma = eval_dense(a, &xi).gcd(&eval_dense(b, &xi));
        if !gamma.is_zero() {
            let half = &xi / 2u32;
            let mut g = Vec::new();
            let mut rest = gamma;
            while !rest.is_zero() {
                let mut c = rest.mod_floor(&xi);
                if c > half {
                    c -= &xi;
                }
                rest = (rest - &c) / &xi;
                g.push(c);
            }
            let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !content.is_zero() {
                let sign = if g.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
                let g: Vec<BigInt> = g.iter().map(|c| c / &content * &sign).collect();
                if divides_dense(&g, a) && divides_dense(&g, b) {
                    return Some(g);
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", PolyDisplay::<&str> { poly: self, names: &[] })
    }
}

/// Renders a polynomial with the given variable names (falls back to `x0, x1, …`).
pub struct PolyDisplay<'a, S: AsRef<str>> {
    pub poly: &'a MPoly,
    pub names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let is_const = m.iter().all(|&e| e == 0);
            let mut wrote = false;
            if !abs.is_one() || is_const {
                write!(f, "{}", abs)?;
                wrote = true;
            }
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                match self.names.get(v) {
                    Some(name) => write!(f, "{}", name.as_ref())?,
                    None => write!(f, "x{}", v)?,
                }
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}
