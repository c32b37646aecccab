//! Lattice-point counting over monomial staircases.
//!
//! A [`LeadSet`] records, per component of a free module, the lead exponents
//! of a Gröbner basis. Counting the exponents divisible by some lead gives
//! the dimension of the submodule's filtration component; the complement is
//! the dimension of the quotient.
//!
//! Leads may carry a per-block `shift`. A shifted lead `(λ, c)` covers `e`
//! under blockwise bounds `r` when `λ | e` and `ord_b(e) + c_b <= r_b` for
//! every block `b`. Shifts arise from multi-homogenized bases (see
//! [`crate::opalg::homogenized_leads`]); plain leads have no shift.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monoid::{enumerate, Bound, Exponent, PartitionSpec, Signature};
use crate::numpoly::{MultiNumericalPolynomial, NumericalPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lead {
    pub exp: Exponent,
    /// Per-block shift; empty means all zero.
    pub shift: Vec<i64>,
}

impl Lead {
    pub fn plain(exp: Exponent) -> Self {
        Lead { exp, shift: Vec::new() }
    }

    fn shift_at(&self, b: usize) -> i64 {
        self.shift.get(b).copied().unwrap_or(0)
    }

    fn dominates(&self, other: &Lead) -> bool {
        let k = self.shift.len().max(other.shift.len());
        self.exp.divides_unchecked(&other.exp) && (0..k).all(|b| self.shift_at(b) <= other.shift_at(b))
    }

    fn join(&self, other: &Lead) -> Lead {
        let k = self.shift.len().max(other.shift.len());
        Lead { exp: self.exp.join(&other.exp), shift: (0..k).map(|b| self.shift_at(b).max(other.shift_at(b))).collect() }
    }

    fn covers(&self, e: &Exponent, bound: &Bound) -> bool {
        if !self.exp.divides_unchecked(e) {
            return false;
        }
        match bound {
            Bound::Total(r) => e.ord() + self.shift.iter().sum::<i64>() <= *r,
            Bound::Blockwise { part, r } => {
                e.block_ords(part).iter().enumerate().all(|(b, o)| o + self.shift_at(b) <= r[b])
            }
        }
    }
}

/// Per-component antichains of lead exponents sharing one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadSet {
    sig: Signature,
    components: Vec<Vec<Lead>>,
}

impl LeadSet {
    /// Plain leads; non-minimal elements are removed.
    pub fn new(sig: Signature, components: Vec<Vec<Exponent>>) -> Result<Self> {
        Self::with_shifts(sig, components.into_iter().map(|c| c.into_iter().map(Lead::plain).collect()).collect())
    }

    pub fn with_shifts(sig: Signature, components: Vec<Vec<Lead>>) -> Result<Self> {
        for lead in components.iter().flatten() {
            sig.check(&lead.exp)?;
        }
        let components = components.into_iter().map(antichain).collect();
        Ok(LeadSet { sig, components })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// Number of components `s`.
    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &[Lead] {
        &self.components[i]
    }

    pub fn components(&self) -> &[Vec<Lead>] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(|c| c.is_empty())
    }
}

fn antichain(mut leads: Vec<Lead>) -> Vec<Lead> {
    leads.sort();
    leads.dedup();
    let keep: Vec<bool> = leads
        .iter()
        .enumerate()
        .map(|(i, a)| !leads.iter().enumerate().any(|(j, b)| j != i && b.dominates(a) && !(a.dominates(b) && j > i)))
        .collect();
    leads.into_iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| l).collect()
}

/// `#{(i, e) : e within bound, some lead of component i covers e}`.
pub fn count_exact(leads: &LeadSet, bound: &Bound) -> u64 {
    let all = enumerate(&leads.sig, bound);
    leads
        .components
        .iter()
        .map(|comp| all.iter().filter(|e| comp.iter().any(|l| l.covers(e, bound))).count() as u64)
        .sum()
}

/// `s · |Λ(bound)| - count_exact`: the exponents no lead covers.
pub fn complement_count_exact(leads: &LeadSet, bound: &Bound) -> u64 {
    let total = enumerate(&leads.sig, bound).len() as u64;
    total * leads.rank() as u64 - count_exact(leads, bound)
}

/// Signed multiplicities of subset joins: key is the join's weight.
fn inclusion_exclusion<K, F>(comp: &[Lead], width: usize, weight: &F, acc: &mut BTreeMap<K, BigInt>)
where
    K: Ord + Clone,
    F: Fn(&Lead) -> K,
{
    fn walk<K: Ord + Clone, F: Fn(&Lead) -> K>(
        comp: &[Lead],
        start: usize,
        cur: &Lead,
        sign: &BigInt,
        weight: &F,
        acc: &mut BTreeMap<K, BigInt>,
    ) {
        for i in start..comp.len() {
            let joined = cur.join(&comp[i]);
            let s = -sign.clone();
            *acc.entry(weight(&joined)).or_insert_with(BigInt::zero) += &s;
            walk(comp, i + 1, &joined, &s, weight, acc);
        }
    }
    let empty = Lead::plain(Exponent::zero(width));
    *acc.entry(weight(&empty)).or_insert_with(BigInt::zero) += BigInt::one();
    walk(comp, 0, &empty, &BigInt::one(), weight, acc);
}

/// Eventual polynomial of [`complement_count_exact`] under the total bound,
/// with a threshold `r_0` from which it agrees with the exact count.
pub fn complement_polynomial(leads: &LeadSet) -> Result<(NumericalPolynomial, i64)> {
    if leads.sig.inversive {
        return Err(Error::InversiveUnsupported);
    }
    let width = leads.sig.width();
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    for comp in &leads.components {
        inclusion_exclusion(comp, width, &|l: &Lead| l.exp.ord() + l.shift.iter().sum::<i64>(), &mut acc);
    }
    let mut poly = NumericalPolynomial::zero();
    let mut threshold = 0;
    for (w, mult) in acc {
        if mult.is_zero() {
            continue;
        }
        threshold = threshold.max(w);
        poly = poly.add(&NumericalPolynomial::shifted_binomial(w, width).scale(&mult));
    }
    Ok((poly, threshold))
}

/// Blockwise analog of [`complement_polynomial`]: a product of binomials per
/// block for each subset join, with a per-block threshold.
pub fn complement_polynomial_blockwise(
    leads: &LeadSet,
    part: &PartitionSpec,
) -> Result<(MultiNumericalPolynomial, Vec<i64>)> {
    if leads.sig.inversive {
        return Err(Error::InversiveUnsupported);
    }
    let sizes = part.sizes();
    let k = sizes.len();
    let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for comp in &leads.components {
        let weight = |l: &Lead| -> Vec<i64> {
            l.exp.block_ords(part).iter().enumerate().map(|(b, o)| o + l.shift_at(b)).collect()
        };
        inclusion_exclusion(comp, leads.sig.width(), &weight, &mut acc);
    }
    let mut poly = MultiNumericalPolynomial::zero(sizes.clone());
    let mut threshold = vec![0i64; k];
    for (w, mult) in acc {
        if mult.is_zero() {
            continue;
        }
        for (t, wb) in threshold.iter_mut().zip(&w) {
            *t = (*t).max(*wb);
        }
        let factors: Vec<NumericalPolynomial> =
            w.iter().zip(&sizes).map(|(&wb, &nb)| NumericalPolynomial::shifted_binomial(wb, nb)).collect();
        let term = MultiNumericalPolynomial::outer_product(&factors, sizes.clone())?;
        poly = poly.add(&term.scale(&mult));
    }
    Ok((poly, threshold))
}
