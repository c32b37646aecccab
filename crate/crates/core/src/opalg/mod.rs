//! Rings of difference-differential operators and free modules over them.
//!
//! An operator is a finite sum `Σ a_λ λ` with coefficients in a
//! [`GroundField`] and `λ` ranging over power products with nonnegative
//! exponents. Multiplication follows `δa = aδ + δ(a)` and `αa = α(a)α`.
//!
//! Module elements live in the free module with basis `e_1..e_s`; components
//! are indexed from 0 in the API and printed from 1.

mod field;
mod groebner;
mod homog;
mod order;
mod parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::monoid::{Exponent, PartitionSpec, Signature};
use crate::numpoly::binom_shifted;
use crate::ratfun::RatFun;

pub use field::{AffineMap, Derivation, GroundField};
pub use homog::{dehomogenize, homogenize, homogenized_basis, homogenized_leads, HomogenizedBasis};
pub use order::TermOrder;
pub use parse::{parse_element, parse_operator};

/// Operator ring over a ground field, optionally multi-homogenized.
///
/// A homogenized algebra has one extra central variable `h_b` per block of a
/// partition, and the rule `δa = aδ + δ(a)·h_b` for `δ` in block `b`.
/// Setting every `h_b = 1` recovers the ordinary ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    sig: Signature,
    field: GroundField,
    homog: Option<PartitionSpec>,
    hblock: Vec<usize>,
}

impl Algebra {
    /// Operators use nonnegative exponents even under an inversive signature.
    pub fn new(sig: Signature, field: GroundField) -> Result<Self> {
        if field.m() != sig.m || field.n() != sig.n {
            return Err(Error::SignatureMismatch(format!(
                "ground field has {} derivations and {} translations, signature expects {} and {}",
                field.m(),
                field.n(),
                sig.m,
                sig.n
            )));
        }
        let sig = Signature { inversive: false, ..sig };
        Ok(Algebra { sig, field, homog: None, hblock: Vec::new() })
    }

    /// Constants-only ground field.
    pub fn constants(sig: Signature) -> Self {
        let field = GroundField::constants(sig.m, sig.n);
        Algebra { sig: Signature { inversive: false, ..sig }, field, homog: None, hblock: Vec::new() }
    }

    pub fn homogenized(&self, part: &PartitionSpec) -> Self {
        let block_of = part.block_of();
        Algebra {
            sig: self.sig,
            field: self.field.clone(),
            homog: Some(part.clone()),
            hblock: block_of[..self.sig.m].to_vec(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn field(&self) -> &GroundField {
        &self.field
    }

    pub fn homogenization(&self) -> Option<&PartitionSpec> {
        self.homog.as_ref()
    }

    /// Coordinates per exponent: `m + n`, plus one per block when homogenized.
    pub fn width(&self) -> usize {
        self.sig.width() + self.homog.as_ref().map_or(0, |p| p.num_blocks())
    }

    pub fn check_exponent(&self, e: &Exponent) -> Result<()> {
        if e.width() != self.width() {
            return Err(Error::SignatureMismatch(format!(
                "exponent has {} coordinates, expected {}",
                e.width(),
                self.width()
            )));
        }
        if e.0.iter().any(|&c| c < 0) {
            return Err(Error::SignatureMismatch("operator exponents must be nonnegative".into()));
        }
        Ok(())
    }

    fn check_operator(&self, a: &OreOperator) -> Result<()> {
        for (e, c) in &a.terms {
            self.check_exponent(e)?;
            self.check_scalar(c)?;
        }
        Ok(())
    }

    pub fn check_element(&self, v: &ModuleElement) -> Result<()> {
        for ((i, e), c) in &v.terms {
            if *i >= v.rank {
                return Err(Error::ComponentOutOfRange { index: *i, rank: v.rank });
            }
            self.check_exponent(e)?;
            self.check_scalar(c)?;
        }
        Ok(())
    }

    fn check_scalar(&self, c: &RatFun) -> Result<()> {
        if c.nvars() != self.field.nvars() {
            return Err(Error::SignatureMismatch("coefficient from a different ground field".into()));
        }
        Ok(())
    }

    /// `λ·a` rewritten as `Σ c_μ μ`.
    pub fn monomial_times_scalar(&self, lam: &Exponent, a: &RatFun) -> Vec<(Exponent, RatFun)> {
        let m = self.sig.m;
        if self.field.is_trivial() {
            return alloc::vec![(lam.clone(), a.clone())];
        }
        let mut shifted = a.clone();
        for j in 0..self.sig.n {
            shifted = self.field.translate_pow(j, lam.0[m + j], &shifted);
        }
        let mut out = Vec::new();
        let mut mu = lam.clone();
        self.leibniz(0, lam, &shifted, &BigInt::one(), &mut mu, &mut out);
        out
    }

    fn leibniz(&self, i: usize, lam: &Exponent, b: &RatFun, coef: &BigInt, mu: &mut Exponent, out: &mut Vec<(Exponent, RatFun)>) {
        if b.is_zero() {
            return;
        }
        if i == self.sig.m {
            let c = b.mul(&RatFun::constant(b.nvars(), BigRational::from_integer(coef.clone())));
            out.push((mu.clone(), c));
            return;
        }
        let k = lam.0[i];
        let h = self.hblock.get(i).map(|b| self.sig.width() + b);
        let mut d = b.clone();
        for j in 0..=k {
            mu.0[i] = k - j;
            if let Some(h) = h {
                mu.0[h] += j;
            }
            let c = coef * binom_shifted(k - j, j as usize);
            self.leibniz(i + 1, lam, &d, &c, mu, out);
            if let Some(h) = h {
                mu.0[h] -= j;
            }
            if j < k {
                d = self.field.derive(i, &d);
                if d.is_zero() {
                    break;
                }
            }
        }
        mu.0[i] = k;
    }

    /// Operator product `A·B`.
    pub fn op_mul(&self, a: &OreOperator, b: &OreOperator) -> Result<OreOperator> {
        self.check_operator(a)?;
        self.check_operator(b)?;
        let mut acc: BTreeMap<Exponent, RatFun> = BTreeMap::new();
        for (lam, ca) in &a.terms {
            for (mu, cb) in &b.terms {
                for (nu, c) in self.monomial_times_scalar(lam, cb) {
                    add_into(&mut acc, nu.mul(mu), ca.mul(&c));
                }
            }
        }
        Ok(OreOperator::from_map(acc))
    }

    /// Left action `A·v`.
    pub fn act(&self, a: &OreOperator, v: &ModuleElement) -> Result<ModuleElement> {
        self.check_operator(a)?;
        self.check_element(v)?;
        Ok(self.act_unchecked(a, v))
    }

    fn act_unchecked(&self, a: &OreOperator, v: &ModuleElement) -> ModuleElement {
        let mut acc: BTreeMap<(usize, Exponent), RatFun> = BTreeMap::new();
        for (lam, ca) in &a.terms {
            for ((i, mu), cb) in &v.terms {
                for (nu, c) in self.monomial_times_scalar(lam, cb) {
                    add_into(&mut acc, (*i, nu.mul(mu)), ca.mul(&c));
                }
            }
        }
        ModuleElement::from_map(v.rank, acc)
    }

    /// `λ·v` for a power product `λ`.
    pub fn mul_monomial(&self, lam: &Exponent, v: &ModuleElement) -> ModuleElement {
        if lam.is_zero() {
            return v.clone();
        }
        let mut acc: BTreeMap<(usize, Exponent), RatFun> = BTreeMap::new();
        for ((i, mu), cb) in &v.terms {
            for (nu, c) in self.monomial_times_scalar(lam, cb) {
                add_into(&mut acc, (*i, nu.mul(mu)), c);
            }
        }
        ModuleElement::from_map(v.rank, acc)
    }

    /// Name of coordinate `i`: `d*`, `a*` or `h*`.
    fn coord_name(&self, i: usize) -> String {
        let (m, n) = (self.sig.m, self.sig.n);
        if i < m {
            format!("d{}", i + 1)
        } else if i < m + n {
            format!("a{}", i - m + 1)
        } else {
            format!("h{}", i - m - n + 1)
        }
    }

    fn monomial_string(&self, e: &Exponent) -> String {
        let mut parts = Vec::new();
        for (i, &c) in e.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(self.coord_name(i)),
                _ => parts.push(format!("{}^{}", self.coord_name(i), c)),
            }
        }
        parts.join("*")
    }

    fn term_string(&self, c: &RatFun, mono: &str) -> String {
        let names = self.field.names();
        if mono.is_empty() {
            return format!("{}", c.display(names));
        }
        if c.is_one() {
            return String::from(mono);
        }
        if c.neg().is_one() {
            return format!("-{}", mono);
        }
        if c.is_compound() {
            format!("({})*{}", c.display(names), mono)
        } else {
            format!("{}*{}", c.display(names), mono)
        }
    }

    pub fn display_operator<'a>(&'a self, a: &'a OreOperator) -> OperatorDisplay<'a> {
        OperatorDisplay { alg: self, op: a }
    }

    pub fn display_element<'a>(&'a self, v: &'a ModuleElement) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, v }
    }
}

fn add_into<K: Ord>(acc: &mut BTreeMap<K, RatFun>, k: K, c: RatFun) {
    match acc.entry(k) {
        alloc::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut slot) => {
            let s = slot.get().add(&c);
            *slot.get_mut() = s;
        }
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[String]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, t) in terms.iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => write!(f, "{}", t)?,
            (_, Some(rest)) => write!(f, " - {}", rest)?,
            (_, None) => write!(f, " + {}", t)?,
        }
    }
    Ok(())
}

/// `Σ a_λ λ` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OreOperator {
    terms: BTreeMap<Exponent, RatFun>,
}

impl OreOperator {
    pub fn zero() -> Self {
        OreOperator::default()
    }

    pub fn monomial(e: Exponent, c: RatFun) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn scalar(width: usize, c: RatFun) -> Self {
        Self::monomial(Exponent::zero(width), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, RatFun)>>(terms: I) -> Self {
        let mut acc = BTreeMap::new();
        for (e, c) in terms {
            add_into(&mut acc, e, c);
        }
        Self::from_map(acc)
    }

    fn from_map(mut terms: BTreeMap<Exponent, RatFun>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        OreOperator { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, RatFun> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&RatFun> {
        self.terms.get(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `max ord λ` over the support; `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().map(Exponent::ord).max()
    }

    /// The scalar when the support is `{1}`.
    pub fn as_scalar(&self) -> Option<&RatFun> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && e.is_zero() => Some(c),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut acc = self.terms.clone();
        for (e, c) in &o.terms {
            add_into(&mut acc, e.clone(), c.clone());
        }
        Self::from_map(acc)
    }

    pub fn neg(&self) -> Self {
        OreOperator { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: &RatFun) -> Self {
        Self::from_map(self.terms.iter().map(|(e, a)| (e.clone(), c.mul(a))).collect())
    }

    pub fn lead(&self, ord: &TermOrder) -> Option<(&Exponent, &RatFun)> {
        self.terms.iter().max_by(|a, b| ord.cmp_exponents(a.0, b.0))
    }

    /// `A·e_i` in a module of the given rank.
    pub fn to_element(&self, rank: usize, i: usize) -> ModuleElement {
        ModuleElement { rank, terms: self.terms.iter().map(|(e, c)| ((i, e.clone()), c.clone())).collect() }
    }
}

/// Element of the free module `D^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    rank: usize,
    terms: BTreeMap<(usize, Exponent), RatFun>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement { rank, terms: BTreeMap::new() }
    }

    /// Basis vector `e_i`.
    pub fn basis(alg: &Algebra, rank: usize, i: usize) -> Self {
        Self::monomial(rank, i, Exponent::zero(alg.width()), alg.field.one())
    }

    pub fn monomial(rank: usize, i: usize, e: Exponent, c: RatFun) -> Self {
        Self::from_terms(rank, [((i, e), c)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((usize, Exponent), RatFun)>>(rank: usize, terms: I) -> Self {
        let mut acc = BTreeMap::new();
        for (k, c) in terms {
            add_into(&mut acc, k, c);
        }
        Self::from_map(rank, acc)
    }

    fn from_map(rank: usize, mut terms: BTreeMap<(usize, Exponent), RatFun>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        ModuleElement { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<(usize, Exponent), RatFun> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: usize, e: &Exponent) -> Option<&RatFun> {
        self.terms.get(&(i, e.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().map(|(_, e)| e.ord()).max()
    }

    /// The operator in component `i`.
    pub fn component(&self, i: usize) -> OreOperator {
        OreOperator {
            terms: self.terms.iter().filter(|((c, _), _)| *c == i).map(|((_, e), a)| (e.clone(), a.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut acc = self.terms.clone();
        for (k, c) in &o.terms {
            add_into(&mut acc, k.clone(), c.clone());
        }
        Self::from_map(self.rank.max(o.rank), acc)
    }

    pub fn neg(&self) -> Self {
        ModuleElement { rank: self.rank, terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: &RatFun) -> Self {
        Self::from_map(self.rank, self.terms.iter().map(|(k, a)| (k.clone(), c.mul(a))).collect())
    }

    /// `self -= c·p`, in place.
    fn sub_scaled(&mut self, c: &RatFun, p: &ModuleElement) {
        for (k, a) in &p.terms {
            add_into(&mut self.terms, k.clone(), c.mul(a).neg());
            if self.terms.get(k).is_some_and(RatFun::is_zero) {
                self.terms.remove(k);
            }
        }
    }

    pub fn lead(&self, ord: &TermOrder) -> Option<(usize, &Exponent, &RatFun)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_terms((a.0 .0, &a.0 .1), (b.0 .0, &b.0 .1)))
            .map(|((i, e), c)| (*i, e, c))
    }

    /// Scaled so the lead coefficient is 1.
    pub fn monic(&self, ord: &TermOrder) -> Self {
        match self.lead(ord) {
            Some((_, _, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }
}

/// Printer in descending [`TermOrder::Graded`] order.
pub struct OperatorDisplay<'a> {
    alg: &'a Algebra,
    op: &'a OreOperator,
}

impl fmt::Display for OperatorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(&Exponent, &RatFun)> = self.op.terms.iter().collect();
        keys.sort_by(|a, b| TermOrder::Graded.cmp_exponents(b.0, a.0));
        let terms: Vec<String> =
            keys.into_iter().map(|(e, c)| self.alg.term_string(c, &self.alg.monomial_string(e))).collect();
        write_sum(f, &terms)
    }
}

pub struct ElementDisplay<'a> {
    alg: &'a Algebra,
    v: &'a ModuleElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(&(usize, Exponent), &RatFun)> = self.v.terms.iter().collect();
        keys.sort_by(|a, b| TermOrder::Graded.cmp_terms((b.0 .0, &b.0 .1), (a.0 .0, &a.0 .1)));
        let terms: Vec<String> = keys
            .into_iter()
            .map(|((i, e), c)| {
                let mono = self.alg.monomial_string(e);
                let mono = if mono.is_empty() { format!("e{}", i + 1) } else { format!("{}*e{}", mono, i + 1) };
                self.alg.term_string(c, &mono)
            })
            .collect();
        write_sum(f, &terms)
    }
}
