//! Descending chains of intermediate fields, checked at the module level.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kaehler::{chi_intermediate, in_submodule, ExtensionPresentation, IntermediateFieldSpec, ReportOptions};
use crate::monoid::Exponent;
use crate::numpoly::NumericalPolynomial;
use crate::opalg::{ModuleElement, OreOperator};

/// `F_0 ⊇ F_1 ⊇ … ⊇ F_p` inside one extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    presentation: ExtensionPresentation,
    fields: Vec<IntermediateFieldSpec>,
}

impl ChainSpec {
    /// Checks that every generator of `F_{i+1}` lies in the submodule of `F_i`.
    pub fn new(presentation: ExtensionPresentation, fields: Vec<IntermediateFieldSpec>) -> Result<Self> {
        for (link, pair) in fields.windows(2).enumerate() {
            for g in &pair[1].generators {
                if !in_submodule(&presentation, &pair[0].generators, g)? {
                    return Err(Error::ContainmentViolated { link });
                }
            }
        }
        Ok(ChainSpec { presentation, fields })
    }

    pub fn presentation(&self) -> &ExtensionPresentation {
        &self.presentation
    }

    pub fn fields(&self) -> &[IntermediateFieldSpec] {
        &self.fields
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAudit {
    /// `(χ_i, threshold)` for each member.
    pub polynomials: Vec<(NumericalPolynomial, i64)>,
    /// `(i, deg(χ_i - χ_{i+1}))`, with `-1` for equal polynomials.
    pub gaps: Vec<(usize, i64)>,
}

impl ChainAudit {
    /// Every link drops the polynomial.
    pub fn strictly_descending(&self) -> bool {
        self.gaps.iter().all(|(_, g)| *g >= 0)
    }
}

pub fn degree_gap_audit(c: &ChainSpec) -> Result<ChainAudit> {
    let opts = ReportOptions { r_table: Some(0), verify: None };
    let mut polynomials = Vec::with_capacity(c.fields.len());
    for f in &c.fields {
        let rep = chi_intermediate(&c.presentation, f, None, &opts)?;
        let (p, t, _) = rep.polynomial.univariate().expect("univariate report");
        polynomials.push((p.clone(), t));
    }
    let gaps = polynomials.windows(2).enumerate().map(|(i, w)| (i, w[0].0.sub(&w[1].0).degree())).collect();
    Ok(ChainAudit { polynomials, gaps })
}

fn require_single_free(x: &ExtensionPresentation) -> Result<()> {
    if !x.is_free() {
        return Err(Error::NotFree);
    }
    if x.rank() != 1 {
        return Err(Error::NotSingleGenerator(x.rank()));
    }
    Ok(())
}

/// Nested chains through `K⟨x⟩` for a free single generator `x`.
///
/// With `u_l = δ_l` for the derivations and `u_l = α_l - 1` for the
/// translations, `P_l = u_1^{i_1}⋯u_l^{i_l}` and
/// `S_l = {P_{j-1} u_j^{i_j+1} x : j < l}`, level `l` runs through
/// `S_l ∪ {P_{l-1} u_l^k x}` for `k = 0..=i_l+1`. Level `l+1` is spliced in
/// between `k = i_l` and `k = i_l+1`, and the chain closes with `K`.
pub fn theorem5_chain(x: &ExtensionPresentation, caps: &[usize]) -> Result<ChainSpec> {
    require_single_free(x)?;
    let alg = x.algebra();
    let sig = *x.signature();
    let width = sig.width();
    if caps.len() != width {
        return Err(Error::InvalidSignature(alloc::format!("expected {} caps, got {}", width, caps.len())));
    }
    let one = alg.field().one();
    let u: Vec<OreOperator> = (0..width)
        .map(|l| {
            let mono = OreOperator::monomial(Exponent::unit(width, l), one.clone());
            if l < sig.m {
                mono
            } else {
                mono.sub(&OreOperator::scalar(width, one.clone()))
            }
        })
        .collect();
    let power = |powers: &[usize]| -> Result<ModuleElement> {
        let mut acc = OreOperator::scalar(width, one.clone());
        for (l, &k) in powers.iter().enumerate() {
            for _ in 0..k {
                acc = alg.op_mul(&acc, &u[l])?;
            }
        }
        Ok(acc.to_element(1, 0))
    };
    // u-exponents of P_{l-1}·u_l^last
    let prefix = |l: usize, last: usize| -> Vec<usize> {
        let mut p: Vec<usize> = caps[..l].to_vec();
        p.push(last);
        p
    };
    fn level(
        l: usize,
        caps: &[usize],
        prefix: &dyn Fn(usize, usize) -> Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
        skip_first: bool,
    ) {
        let s: Vec<Vec<usize>> = (0..l).map(|j| prefix(j, caps[j] + 1)).collect();
        let member = |k: usize| {
            let mut m = s.clone();
            m.push(prefix(l, k));
            m
        };
        for k in 0..=caps[l] {
            if !(skip_first && k == 0) {
                out.push(member(k));
            }
        }
        if l + 1 < caps.len() {
            level(l + 1, caps, prefix, out, true);
        }
        out.push(member(caps[l] + 1));
    }
    let mut members: Vec<Vec<Vec<usize>>> = Vec::new();
    level(0, caps, &prefix, &mut members, false);
    let mut fields = Vec::with_capacity(members.len() + 1);
    for m in &members {
        let gens = m.iter().map(|p| power(p)).collect::<Result<Vec<_>>>()?;
        fields.push(IntermediateFieldSpec::closed(gens));
    }
    fields.push(IntermediateFieldSpec::closed(Vec::new()));
    ChainSpec::new(x.clone(), fields)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimBoundReport {
    /// Lower bound for the type: `m + n`.
    pub type_lower_bound: usize,
    /// `c_{m+n}` along `⟨e_1..e_k⟩ ⊇ ⟨e_1..e_{k-1}⟩ ⊇ … ⊇ 0`.
    pub top_coefficients: Vec<BigInt>,
    pub drops: Vec<BigInt>,
    /// Sum of the drops.
    pub dim: BigInt,
    pub audit: ChainAudit,
}

/// Counts along the chain cut out by `k` independent generators.
pub fn dim_bound_report(x: &ExtensionPresentation, k: usize) -> Result<DimBoundReport> {
    if !x.is_free() {
        return Err(Error::NotFree);
    }
    if x.rank() != k {
        return Err(Error::SignatureMismatch(alloc::format!("expected {} generators, the extension has {}", k, x.rank())));
    }
    let fields: Vec<IntermediateFieldSpec> =
        (0..=k).rev().map(|j| IntermediateFieldSpec::closed((0..j).map(|i| x.basis(i)).collect())).collect();
    let chain = ChainSpec::new(x.clone(), fields)?;
    let audit = degree_gap_audit(&chain)?;
    let cap = x.signature().width();
    let top_coefficients: Vec<BigInt> = audit.polynomials.iter().map(|(p, _)| p.coeff(cap)).collect();
    let drops: Vec<BigInt> = top_coefficients.windows(2).map(|w| &w[0] - &w[1]).collect();
    let dim = drops.iter().sum();
    Ok(DimBoundReport { type_lower_bound: cap, top_coefficients, drops, dim, audit })
}
