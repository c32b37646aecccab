use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::ratfun::RatFun;

/// How a derivation acts on the indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Zero,
    /// `∂/∂x_v`.
    Partial(usize),
}

/// `x ↦ scale·x + shift` with `scale ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: BigRational,
    pub shift: BigRational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { scale: BigRational::one(), shift: BigRational::zero() }
    }

    pub fn shift(c: BigRational) -> Self {
        AffineMap { scale: BigRational::one(), shift: c }
    }

    pub fn scaling(c: BigRational) -> Self {
        AffineMap { scale: c, shift: BigRational::zero() }
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }

    pub fn inverse(&self) -> Self {
        let inv = self.scale.recip();
        AffineMap { shift: -(&self.shift * &inv), scale: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineMap { scale: &self.scale * &other.scale, shift: &self.scale * &other.shift + &self.shift }
    }

    /// `self^k`; negative `k` uses the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = AffineMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }
}

/// `ℚ(x_1..x_k)` with `m` derivations and `n` affine automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundField {
    names: Vec<String>,
    deltas: Vec<Derivation>,
    alphas: Vec<Vec<AffineMap>>,
}

fn reserved(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('d' | 'a' | 'e' | 'h'))
        && !chars.as_str().is_empty()
        && chars.as_str().chars().all(|c| c.is_ascii_digit())
}

impl GroundField {
    /// `alphas[j][v]` is the image rule of `x_v` under `α_j`.
    pub fn new(names: Vec<String>, deltas: Vec<Derivation>, alphas: Vec<Vec<AffineMap>>) -> Result<Self> {
        let k = names.len();
        for (i, name) in names.iter().enumerate() {
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || reserved(name) {
                return Err(Error::InvalidField(format!("bad indeterminate name {:?}", name)));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidField(format!("duplicate indeterminate {:?}", name)));
            }
        }
        for (i, d) in deltas.iter().enumerate() {
            if let Derivation::Partial(v) = d {
                if *v >= k {
                    return Err(Error::InvalidField(format!("d{} differentiates a missing indeterminate", i + 1)));
                }
            }
        }
        for (j, maps) in alphas.iter().enumerate() {
            if maps.len() != k {
                return Err(Error::InvalidField(format!("a{} gives {} images for {} indeterminates", j + 1, maps.len(), k)));
            }
            if maps.iter().any(|a| a.scale.is_zero()) {
                return Err(Error::InvalidField(format!("a{} is not invertible", j + 1)));
            }
        }
        let field = GroundField { names, deltas, alphas };
        field.check_commuting()?;
        Ok(field)
    }

    /// Constants only: every operator acts trivially.
    pub fn constants(m: usize, n: usize) -> Self {
        GroundField {
            names: Vec::new(),
            deltas: (0..m).map(|_| Derivation::Zero).collect(),
            alphas: (0..n).map(|_| Vec::new()).collect(),
        }
    }

    /// Both compositions of each pair of maps are twisted derivations or
    /// automorphisms, so agreement on the indeterminates is enough.
    fn check_commuting(&self) -> Result<()> {
        let k = self.nvars();
        let xs: Vec<RatFun> = (0..k).map(|v| RatFun::var(k, v)).collect();
        for i in 0..self.m() {
            for j in 0..self.n() {
                for x in &xs {
                    if self.derive(i, &self.translate(j, x)) != self.translate(j, &self.derive(i, x)) {
                        return Err(Error::InvalidField(format!("d{} and a{} do not commute", i + 1, j + 1)));
                    }
                }
            }
        }
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                for x in &xs {
                    if self.translate(i, &self.translate(j, x)) != self.translate(j, &self.translate(i, x)) {
                        return Err(Error::InvalidField(format!("a{} and a{} do not commute", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.deltas.len()
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn derivation(&self, i: usize) -> &Derivation {
        &self.deltas[i]
    }

    pub fn translation(&self, j: usize) -> &[AffineMap] {
        &self.alphas[j]
    }

    /// True when all operators fix every scalar.
    pub fn is_trivial(&self) -> bool {
        self.deltas.iter().all(|d| *d == Derivation::Zero) && self.alphas.iter().flatten().all(AffineMap::is_identity)
    }

    pub fn zero(&self) -> RatFun {
        RatFun::zero(self.nvars())
    }

    pub fn one(&self) -> RatFun {
        RatFun::one(self.nvars())
    }

    pub fn var(&self, v: usize) -> RatFun {
        RatFun::var(self.nvars(), v)
    }

    pub fn derive(&self, i: usize, a: &RatFun) -> RatFun {
        match self.deltas[i] {
            Derivation::Zero => self.zero(),
            Derivation::Partial(v) => a.derivative(v),
        }
    }

    fn apply_affine(&self, maps: &[AffineMap], a: &RatFun) -> RatFun {
        if maps.iter().all(AffineMap::is_identity) || a.as_constant().is_some() {
            return a.clone();
        }
        let k = self.nvars();
        let images: Vec<MPoly> = maps
            .iter()
            .enumerate()
            .map(|(v, map)| MPoly::var(k, v).scale(&map.scale).add(&MPoly::constant(k, map.shift.clone())))
            .collect();
        a.substitute(&images)
    }

    pub fn translate(&self, j: usize, a: &RatFun) -> RatFun {
        self.apply_affine(&self.alphas[j], a)
    }

    /// `α_j^l(a)`; negative `l` applies the inverse automorphism.
    pub fn translate_pow(&self, j: usize, l: i64, a: &RatFun) -> RatFun {
        if l == 0 {
            return a.clone();
        }
        let maps: Vec<AffineMap> = self.alphas[j].iter().map(|m| m.pow(l)).collect();
        self.apply_affine(&maps, a)
    }

    pub fn apply_inverse_translation(&self, a: &RatFun, j: usize) -> RatFun {
        self.translate_pow(j, -1, a)
    }

    /// `δ^κ α^l (a)` for `coords = (κ, l)`.
    pub fn act(&self, coords: &[i64], a: &RatFun) -> RatFun {
        let m = self.m();
        let mut out = a.clone();
        for j in 0..self.n() {
            out = self.translate_pow(j, coords[m + j], &out);
        }
        for (i, &k) in coords[..m].iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = self.derive(i, &out);
            }
        }
        out
    }
}
