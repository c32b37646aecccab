//! Lead data for blockwise filtrations.
//!
//! A single block-graded order does not make lead counts agree with
//! `dim(N ∩ F_{r_1..r_k})` once relations mix blocks: for `N = D(δ + α)`
//! the order picks one of the two terms and miscounts. Instead the
//! generators are multi-homogenized with a central `h_b` per block, the
//! module is saturated with respect to each `h_b` in turn (Bayer's method:
//! a Gröbner basis under an order that ranks `h_b` lowest, divided by the
//! largest power of `h_b` dividing each element), and the final basis is
//! read off as shifted leads `(λ, c)`. The multidegree-`r` part of the
//! saturated module maps bijectively onto `N ∩ F_r` by setting `h = 1`, so
//! counting monomials of multidegree `r` in the lead module gives the
//! blockwise dimension.

use alloc::vec::Vec;

use super::{Algebra, ModuleElement, TermOrder};
use crate::error::{Error, Result};
use crate::monoid::{Exponent, PartitionSpec, Signature};
use crate::staircase::{Lead, LeadSet};

/// Saturated homogenized basis together with its shifted leads.
#[derive(Clone, Debug)]
pub struct HomogenizedBasis {
    pub algebra: Algebra,
    pub order: TermOrder,
    pub basis: Vec<ModuleElement>,
    pub leads: LeadSet,
}

fn weight(part: &PartitionSpec, e: &Exponent, base: usize) -> Vec<i64> {
    Exponent(e.0[..base].to_vec()).block_ords(part)
}

/// Multi-homogenizes `v` (an element over `alg`) into the homogenized algebra.
pub fn homogenize(alg: &Algebra, part: &PartitionSpec, v: &ModuleElement) -> ModuleElement {
    let base = alg.sig.width();
    let k = part.num_blocks();
    let mut top = alloc::vec![0i64; k];
    for (_, e) in v.terms.keys() {
        for (t, w) in top.iter_mut().zip(weight(part, e, base)) {
            *t = (*t).max(w);
        }
    }
    ModuleElement::from_terms(
        v.rank,
        v.terms.iter().map(|((i, e), c)| {
            let w = weight(part, e, base);
            let mut coords = e.0[..base].to_vec();
            coords.extend(top.iter().zip(&w).map(|(t, w)| t - w));
            ((*i, Exponent(coords)), c.clone())
        }),
    )
}

/// Sets every `h_b = 1`.
pub fn dehomogenize(base: usize, v: &ModuleElement) -> ModuleElement {
    ModuleElement::from_terms(v.rank, v.terms.iter().map(|((i, e), c)| ((*i, Exponent(e.0[..base].to_vec())), c.clone())))
}

fn divide_out(v: &ModuleElement, coord: usize) -> ModuleElement {
    let low = v.terms.keys().map(|(_, e)| e.0[coord]).min().unwrap_or(0);
    if low == 0 {
        return v.clone();
    }
    ModuleElement {
        rank: v.rank,
        terms: v
            .terms
            .iter()
            .map(|((i, e), c)| {
                let mut e = e.clone();
                e.0[coord] -= low;
                ((*i, e), c.clone())
            })
            .collect(),
    }
}

/// Saturated homogenized Gröbner basis of the submodule generated by `gens`.
pub fn homogenized_basis(alg: &Algebra, rank: usize, gens: &[ModuleElement], part: &PartitionSpec) -> Result<HomogenizedBasis> {
    if alg.homog.is_some() {
        return Err(Error::SignatureMismatch("algebra is already homogenized".into()));
    }
    let sig = Signature::new(alg.sig.m, alg.sig.n, false)?;
    if part.sizes().iter().sum::<usize>() != sig.width() {
        return Err(Error::InvalidPartition("partition does not match the signature".into()));
    }
    for g in gens {
        alg.check_element(g)?;
        if g.rank > rank {
            return Err(Error::ComponentOutOfRange { index: g.rank - 1, rank });
        }
    }
    let halg = alg.homogenized(part);
    let base = sig.width();
    let k = part.num_blocks();
    let mut current: Vec<ModuleElement> = gens.iter().map(|g| homogenize(alg, part, g)).collect();
    let mut order = TermOrder::Homogenized { part: part.clone(), saturate: 0 };
    for b in 0..k {
        order = TermOrder::Homogenized { part: part.clone(), saturate: b };
        let gb = halg.groebner(&current, &order);
        current = gb.iter().map(|g| divide_out(g, base + b)).collect();
    }
    let basis = halg.groebner(&current, &order);
    let mut comps: Vec<Vec<Lead>> = (0..rank).map(|_| Vec::new()).collect();
    for (c, e, _) in basis.iter().filter_map(|g| g.lead(&order)) {
        comps[c].push(Lead { exp: Exponent(e.0[..base].to_vec()), shift: e.0[base..base + k].to_vec() });
    }
    let leads = LeadSet::with_shifts(sig, comps)?;
    Ok(HomogenizedBasis { algebra: halg, order, basis, leads })
}

/// Shifted leads whose blockwise counts give `dim(N ∩ F_r)`.
pub fn homogenized_leads(alg: &Algebra, rank: usize, gens: &[ModuleElement], part: &PartitionSpec) -> Result<LeadSet> {
    homogenized_basis(alg, rank, gens, part).map(|h| h.leads)
}
