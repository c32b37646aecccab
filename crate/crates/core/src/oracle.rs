//! Brute-force ground truth by exact linear algebra.
//!
//! Nothing here uses Gröbner bases. For a generator set `G` the oracle spans
//! `W_j = span{λ·g : g ∈ G, ord λ <= j}` inside the free module, puts it in
//! echelon form with columns ranked by order first, and reads off
//! `dim(W_j ∩ F_r)` from the pivots. `j` grows one step at a time until the
//! table stops changing; a table that never settles within the window's
//! `closure_depth` yields [`Error::NotStabilized`].

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::kaehler::ExtensionPresentation;
use crate::linalg::{Echelon, Row, Scalar};
use crate::monoid::{enumerate, Bound, Exponent, PartitionSpec};
use crate::opalg::{Algebra, ModuleElement};
use crate::ratfun::RatFun;

/// Bounds for the brute-force computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    /// Largest order tabulated (per block for blockwise tables).
    pub r_max: i64,
    /// Most extra multiplication sweeps tried before giving up.
    pub closure_depth: usize,
}

impl TruncationWindow {
    pub fn new(r_max: i64, closure_depth: usize) -> Result<Self> {
        if r_max < 0 {
            return Err(Error::InvalidSignature("r_max must be nonnegative".into()));
        }
        Ok(TruncationWindow { r_max, closure_depth: closure_depth.max(1) })
    }
}

/// Values indexed by blockwise bounds `(r_1, .., r_k)`.
pub type BlockTable = BTreeMap<Vec<i64>, u64>;

/// Column key: order first so that echelon pivots respect the filtration.
type Col = (i64, usize, Exponent);

fn to_row<S: Scalar>(v: &ModuleElement, conv: fn(&RatFun) -> S) -> Row<Col, S> {
    v.terms().iter().map(|((i, e), c)| ((e.ord(), *i, e.clone()), conv(c))).collect()
}

fn as_rational(c: &RatFun) -> BigRational {
    c.as_constant().expect("constant ground field")
}

fn as_ratfun(c: &RatFun) -> RatFun {
    c.clone()
}

fn min_ord(gens: &[ModuleElement]) -> i64 {
    gens.iter().filter_map(ModuleElement::ord).min().unwrap_or(0)
}

/// Grows `W_j` until `table` returns the same value twice in a row.
fn sweep<S: Scalar, T: PartialEq>(
    alg: &Algebra,
    gens: &[ModuleElement],
    j0: i64,
    depth: usize,
    conv: fn(&RatFun) -> S,
    table: &dyn Fn(&Echelon<Col, S>) -> T,
) -> Result<T> {
    let gens: Vec<&ModuleElement> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut ech = Echelon::new();
    if gens.is_empty() {
        return Ok(table(&ech));
    }
    let sig = *alg.signature();
    let mut prev: Option<T> = None;
    for step in 0..=depth {
        let hi = j0 + step as i64;
        let lo = if step == 0 { 0 } else { hi };
        for lam in enumerate(&sig, &Bound::Total(hi)).into_iter().filter(|l| l.ord() >= lo) {
            for g in &gens {
                ech.insert(to_row(&alg.mul_monomial(&lam, g), conv));
            }
        }
        let t = table(&ech);
        if prev.as_ref() == Some(&t) {
            return Ok(t);
        }
        prev = Some(t);
    }
    Err(Error::NotStabilized { cap: depth })
}

fn total_table<S: Scalar>(ech: &Echelon<Col, S>, r_max: i64) -> Vec<u64> {
    let mut out = alloc::vec![0u64; r_max as usize + 1];
    for (ord, _, _) in ech.pivot_columns() {
        if *ord <= r_max {
            for v in &mut out[*ord as usize..] {
                *v += 1;
            }
        }
    }
    out
}

fn block_bounds(k: usize, r_max: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = alloc::vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (0..=r_max).map(move |r| {
            let mut w = v.clone();
            w.push(r);
            w
        })).collect();
    }
    out
}

/// `dim(W ∩ F_r) = dim W - rank of W projected onto the columns outside F_r`.
fn block_table<S: Scalar>(ech: &Echelon<Col, S>, part: &PartitionSpec, r_max: i64) -> BlockTable {
    let rank = ech.rank() as u64;
    block_bounds(part.num_blocks(), r_max)
        .into_iter()
        .map(|r| {
            let outside = |e: &Exponent| e.block_ords(part).iter().zip(&r).any(|(o, b)| o > b);
            let mut proj: Echelon<Col, S> = Echelon::new();
            for row in ech.rows() {
                proj.insert(row.iter().filter(|(k, _)| outside(&k.2)).map(|(k, v)| (k.clone(), v.clone())).collect());
            }
            (r, rank - proj.rank() as u64)
        })
        .collect()
}

/// `dim(N ∩ F_r)` for `r = 0..=r_max`, where `N ⊆ D^rank` is generated by `gens`.
pub fn submodule_table(alg: &Algebra, gens: &[ModuleElement], w: &TruncationWindow) -> Result<Vec<u64>> {
    for g in gens {
        alg.check_element(g)?;
    }
    let j0 = (w.r_max - min_ord(gens)).max(0);
    if alg.field().nvars() == 0 {
        sweep(alg, gens, j0, w.closure_depth, as_rational, &|e| total_table(e, w.r_max))
    } else {
        sweep(alg, gens, j0, w.closure_depth, as_ratfun, &|e| total_table(e, w.r_max))
    }
}

/// Blockwise `dim(N ∩ F_r)` for every `r` with all `r_b <= r_max`.
pub fn submodule_table_blockwise(
    alg: &Algebra,
    gens: &[ModuleElement],
    part: &PartitionSpec,
    w: &TruncationWindow,
) -> Result<BlockTable> {
    for g in gens {
        alg.check_element(g)?;
    }
    let j0 = (w.r_max * part.num_blocks() as i64 - min_ord(gens)).max(0);
    if alg.field().nvars() == 0 {
        sweep(alg, gens, j0, w.closure_depth, as_rational, &|e| block_table(e, part, w.r_max))
    } else {
        sweep(alg, gens, j0, w.closure_depth, as_ratfun, &|e| block_table(e, part, w.r_max))
    }
}

fn with_relations(x: &ExtensionPresentation, gens: &[ModuleElement]) -> Vec<ModuleElement> {
    gens.iter().chain(x.relations()).cloned().collect()
}

/// `dim(N ∩ M_r)` in `M = D^s / R` for the submodule `N` generated by the
/// images of `gens`.
pub fn dim_intersection(x: &ExtensionPresentation, gens: &[ModuleElement], w: &TruncationWindow) -> Result<Vec<u64>> {
    let alg = x.algebra();
    let big = submodule_table(alg, &with_relations(x, gens), w)?;
    let rel = submodule_table(alg, x.relations(), w)?;
    Ok(big.iter().zip(&rel).map(|(a, b)| a - b).collect())
}

pub fn dim_intersection_blockwise(
    x: &ExtensionPresentation,
    gens: &[ModuleElement],
    part: &PartitionSpec,
    w: &TruncationWindow,
) -> Result<BlockTable> {
    let alg = x.algebra();
    let big = submodule_table_blockwise(alg, &with_relations(x, gens), part, w)?;
    let rel = submodule_table_blockwise(alg, x.relations(), part, w)?;
    Ok(big.iter().map(|(r, a)| (r.clone(), a - rel[r])).collect())
}

/// `dim M_r = s·|Λ(r)| - dim(R ∩ F_r)`.
pub fn module_table(x: &ExtensionPresentation, w: &TruncationWindow) -> Result<Vec<u64>> {
    let basis: Vec<ModuleElement> = (0..x.rank()).map(|i| ModuleElement::basis(x.algebra(), x.rank(), i)).collect();
    dim_intersection(x, &basis, w)
}

pub fn module_table_blockwise(x: &ExtensionPresentation, part: &PartitionSpec, w: &TruncationWindow) -> Result<BlockTable> {
    let basis: Vec<ModuleElement> = (0..x.rank()).map(|i| ModuleElement::basis(x.algebra(), x.rank(), i)).collect();
    dim_intersection_blockwise(x, &basis, part, w)
}

/// Whether `v` is found in `W_j` for some `j` within the window.
///
/// A `true` answer is a certificate; `false` means no combination of order
/// up to `ord v - min ord g + closure_depth` was found.
pub fn membership(alg: &Algebra, gens: &[ModuleElement], v: &ModuleElement, w: &TruncationWindow) -> Result<bool> {
    alg.check_element(v)?;
    for g in gens {
        alg.check_element(g)?;
    }
    if v.is_zero() {
        return Ok(true);
    }
    let j0 = (v.ord().unwrap_or(0) - min_ord(gens)).max(0);
    if alg.field().nvars() == 0 {
        member_sweep(alg, gens, v, j0, w.closure_depth, as_rational)
    } else {
        member_sweep(alg, gens, v, j0, w.closure_depth, as_ratfun)
    }
}

fn member_sweep<S: Scalar>(
    alg: &Algebra,
    gens: &[ModuleElement],
    v: &ModuleElement,
    j0: i64,
    depth: usize,
    conv: fn(&RatFun) -> S,
) -> Result<bool> {
    let sig = *alg.signature();
    let mut ech = Echelon::new();
    for step in 0..=depth {
        let hi = j0 + step as i64;
        let lo = if step == 0 { 0 } else { hi };
        for lam in enumerate(&sig, &Bound::Total(hi)).into_iter().filter(|l| l.ord() >= lo) {
            for g in gens.iter().filter(|g| !g.is_zero()) {
                ech.insert(to_row(&alg.mul_monomial(&lam, g), conv));
            }
        }
        if ech.contains(to_row(v, conv)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `trdeg_K K(λη_j : listed, ord λ <= r)` for distinct monomial images in a
/// free extension, which are algebraically independent.
pub fn trdeg_monomial_field(x: &ExtensionPresentation, monomials: &[(usize, Exponent)], r: i64) -> Result<u64> {
    if !x.is_free() {
        return Err(Error::AmbientNotFree);
    }
    for (j, e) in monomials {
        if *j >= x.rank() {
            return Err(Error::ComponentOutOfRange { index: *j, rank: x.rank() });
        }
        x.algebra().check_exponent(e)?;
    }
    let distinct: BTreeSet<&(usize, Exponent)> = monomials.iter().filter(|(_, e)| e.ord() <= r).collect();
    Ok(distinct.len() as u64)
}
