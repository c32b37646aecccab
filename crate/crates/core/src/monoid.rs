//! Power products of the basic operators and their orders.
//!
//! An [`Exponent`] stores `(k_1..k_m, l_1..l_n)`: derivation exponents first,
//! then translation exponents. Translation exponents may be negative only
//! under an inversive [`Signature`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};

/// Counts of derivations and translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub m: usize,
    pub n: usize,
    pub inversive: bool,
}

impl Signature {
    pub fn new(m: usize, n: usize, inversive: bool) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::InvalidSignature("m + n must be at least 1".into()));
        }
        Ok(Signature { m, n, inversive })
    }

    pub fn width(&self) -> usize {
        self.m + self.n
    }

    /// Checks arity and sign constraints.
    pub fn check(&self, e: &Exponent) -> Result<()> {
        if e.0.len() != self.width() {
            return Err(Error::SignatureMismatch(format!(
                "exponent has {} coordinates, signature expects {}",
                e.0.len(),
                self.width()
            )));
        }
        let bad = if self.inversive { &e.0[..self.m] } else { &e.0[..] };
        if bad.iter().any(|&c| c < 0) {
            return Err(Error::SignatureMismatch("negative exponent outside the inversive block".into()));
        }
        Ok(())
    }
}

/// A power product `δ_1^{k_1}…δ_m^{k_m} α_1^{l_1}…α_n^{l_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(width: usize) -> Self {
        Exponent(vec![0; width])
    }

    pub fn from_parts(k: &[i64], l: &[i64]) -> Self {
        Exponent(k.iter().chain(l).copied().collect())
    }

    /// Single generator: unit vector at coordinate `i`.
    pub fn unit(width: usize, i: usize) -> Self {
        let mut e = Self::zero(width);
        e.0[i] = 1;
        e
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total order `Σ k_i + Σ |l_j|`.
    pub fn ord(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    /// Order restricted to a coordinate range.
    pub fn ord_range(&self, r: Range<usize>) -> i64 {
        self.0[r].iter().map(|c| c.abs()).sum()
    }

    /// Order with respect to block `block` of a partition (`ord_i` for the
    /// derivation blocks, `ord'_j` for the translation blocks).
    pub fn ord_block(&self, part: &PartitionSpec, block: usize) -> Result<i64> {
        let ranges = part.ranges();
        let r = ranges.get(block).ok_or(Error::BlockOutOfRange { block, blocks: ranges.len() })?;
        Ok(self.ord_range(r.clone()))
    }

    /// Orders for every block of the partition.
    pub fn block_ords(&self, part: &PartitionSpec) -> Vec<i64> {
        part.ranges().into_iter().map(|r| self.ord_range(r)).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self - o`; callers check divisibility first.
    pub fn div(&self, o: &Self) -> Self {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// Coordinatewise maximum (least common multiple on ℕ-exponents).
    pub fn join(&self, o: &Self) -> Self {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Orthant-wise divisibility: `self | other` iff each coordinate of
    /// `self` lies between 0 and the matching coordinate of `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        if self.0.len() != other.0.len() {
            return Err(Error::SignatureMismatch(format!(
                "exponents of width {} and {}",
                self.0.len(),
                other.0.len()
            )));
        }
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| if b >= 0 { 0 <= a && a <= b } else { b <= a && a <= 0 })
    }

    /// Text form such as `d1^2 d2 a1^-3`; the identity renders as `1`.
    pub fn display(&self, m: usize) -> ExponentDisplay<'_> {
        ExponentDisplay { e: self, m }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub struct ExponentDisplay<'a> {
    e: &'a Exponent,
    m: usize,
}

impl fmt::Display for ExponentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.e.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = if i < self.m { format!("d{}", i + 1) } else { format!("a{}", i - self.m + 1) };
            if c == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, c)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Contiguous partition of the derivations into `p` blocks and the
/// translations into `q` blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionSpec {
    delta: Vec<usize>,
    sigma: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(sig: &Signature, delta: Vec<usize>, sigma: Vec<usize>) -> Result<Self> {
        if delta.iter().chain(&sigma).any(|&b| b == 0) {
            return Err(Error::InvalidPartition("blocks must be nonempty".into()));
        }
        if delta.iter().sum::<usize>() != sig.m {
            return Err(Error::InvalidPartition(format!("derivation blocks do not sum to m = {}", sig.m)));
        }
        if sigma.iter().sum::<usize>() != sig.n {
            return Err(Error::InvalidPartition(format!("translation blocks do not sum to n = {}", sig.n)));
        }
        Ok(PartitionSpec { delta, sigma })
    }

    /// One block for the derivations (if any) and one for the translations (if any).
    pub fn coarse(sig: &Signature) -> Self {
        let delta = if sig.m > 0 { vec![sig.m] } else { vec![] };
        let sigma = if sig.n > 0 { vec![sig.n] } else { vec![] };
        PartitionSpec { delta, sigma }
    }

    pub fn p(&self) -> usize {
        self.delta.len()
    }

    pub fn q(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.delta.len() + self.sigma.len()
    }

    /// Block sizes `(m_1..m_p, n_1..n_q)`.
    pub fn sizes(&self) -> Vec<usize> {
        self.delta.iter().chain(&self.sigma).copied().collect()
    }

    pub fn delta_blocks(&self) -> &[usize] {
        &self.delta
    }

    pub fn sigma_blocks(&self) -> &[usize] {
        &self.sigma
    }

    /// Coordinate ranges of each block within an exponent.
    pub fn ranges(&self) -> Vec<Range<usize>> {
        let mut out = Vec::with_capacity(self.num_blocks());
        let mut start = 0;
        for &b in self.delta.iter().chain(&self.sigma) {
            out.push(start..start + b);
            start += b;
        }
        out
    }

    /// Block index of each coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (b, r) in self.ranges().into_iter().enumerate() {
            out.extend(r.map(|_| b));
        }
        out
    }
}

/// Bound for enumeration: total order, or per-block orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Total(i64),
    Blockwise { part: PartitionSpec, r: Vec<i64> },
}

impl Bound {
    /// Whether an exponent lies within the bound.
    pub fn contains(&self, e: &Exponent) -> bool {
        match self {
            Bound::Total(r) => e.ord() <= *r,
            Bound::Blockwise { part, r } => e.block_ords(part).iter().zip(r).all(|(o, b)| o <= b),
        }
    }
}

/// All exponents within `bound`, ordered by total order then lexicographically.
pub fn enumerate(sig: &Signature, bound: &Bound) -> Vec<Exponent> {
    let width = sig.width();
    let (block_of, budgets): (Vec<usize>, Vec<i64>) = match bound {
        Bound::Total(r) => (vec![0; width], vec![*r]),
        Bound::Blockwise { part, r } => {
            assert_eq!(r.len(), part.num_blocks(), "one bound per block");
            (part.block_of(), r.clone())
        }
    };
    if budgets.iter().any(|&b| b < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; width];
    let mut budgets = budgets;
    fill(sig, &block_of, 0, &mut cur, &mut budgets, &mut out);
    out.sort_by(|a, b| a.ord().cmp(&b.ord()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn fill(
    sig: &Signature,
    block_of: &[usize],
    i: usize,
    cur: &mut Vec<i64>,
    budgets: &mut [i64],
    out: &mut Vec<Exponent>,
) {
    if i == cur.len() {
        out.push(Exponent(cur.clone()));
        return;
    }
    let b = block_of[i];
    let left = budgets[b];
    let signed = sig.inversive && i >= sig.m;
    let lo = if signed { -left } else { 0 };
    for c in lo..=left {
        cur[i] = c;
        budgets[b] = left - c.abs();
        fill(sig, block_of, i + 1, cur, budgets, out);
    }
    budgets[b] = left;
    cur[i] = 0;
}
