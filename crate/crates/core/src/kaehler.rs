//! Extensions `L = K⟨η_1..η_s⟩` presented through their module of
//! differentials `M = D^s / R`, intermediate fields given by differentials of
//! their generators, and the dimension polynomials attached to both.
//!
//! For a submodule `N ⊆ M` the counted quantity is `dim(N ∩ M_r)`. Lifting to
//! `D^s`, this is `dim((N'+R) ∩ F_r) - dim(R ∩ F_r)`, and each term is read off
//! from the lead set of a Gröbner basis under an order-graded term order.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monoid::{Bound, Exponent, PartitionSpec, Signature};
use crate::numpoly::{Invariants, MultiInvariants, MultiNumericalPolynomial, NumericalPolynomial};
use crate::opalg::{homogenized_leads, Algebra, ModuleElement, TermOrder};
use crate::oracle::{self, TruncationWindow};
use crate::staircase::{complement_count_exact, complement_polynomial, complement_polynomial_blockwise, LeadSet};

/// `M = D^s / R` for an extension generated by `s` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPresentation {
    algebra: Algebra,
    s: usize,
    relations: Vec<ModuleElement>,
}

impl ExtensionPresentation {
    pub fn new(algebra: Algebra, s: usize, relations: Vec<ModuleElement>) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidSignature("an extension needs at least one generator".into()));
        }
        for r in &relations {
            check_in(&algebra, s, r)?;
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(ExtensionPresentation { algebra, s, relations })
    }

    /// Generators with no relations among them.
    pub fn free(algebra: Algebra, s: usize) -> Result<Self> {
        Self::new(algebra, s, Vec::new())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn signature(&self) -> &Signature {
        self.algebra.signature()
    }

    pub fn rank(&self) -> usize {
        self.s
    }

    pub fn relations(&self) -> &[ModuleElement] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// `e_i` in `D^s`.
    pub fn basis(&self, i: usize) -> ModuleElement {
        ModuleElement::basis(&self.algebra, self.s, i)
    }

    fn relation_basis(&self) -> Vec<ModuleElement> {
        self.algebra.groebner(&self.relations, &TermOrder::Graded)
    }
}

fn check_in(alg: &Algebra, s: usize, v: &ModuleElement) -> Result<()> {
    alg.check_element(v)?;
    if v.rank() != s {
        return Err(Error::ComponentOutOfRange { index: v.rank().saturating_sub(1), rank: s });
    }
    Ok(())
}

/// `F = K⟨ζ_1..ζ_k⟩ ⊆ L` through the differentials `dζ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateFieldSpec {
    pub generators: Vec<ModuleElement>,
    /// Caller's assertion that `F` is closed under the basic operators.
    pub sigma_delta_closed: bool,
}

impl IntermediateFieldSpec {
    pub fn new(generators: Vec<ModuleElement>, sigma_delta_closed: bool) -> Self {
        IntermediateFieldSpec { generators, sigma_delta_closed }
    }

    /// The field generated as a difference-differential field by the `ζ_i`.
    pub fn closed(generators: Vec<ModuleElement>) -> Self {
        Self::new(generators, true)
    }
}

/// Eventual polynomial with the bound from which it is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimensionPolynomial {
    Univariate { poly: NumericalPolynomial, threshold: i64, invariants: Invariants },
    Multivariate { poly: MultiNumericalPolynomial, threshold: Vec<i64>, invariants: MultiInvariants },
}

impl DimensionPolynomial {
    pub fn eval(&self, r: &[i64]) -> BigInt {
        match self {
            DimensionPolynomial::Univariate { poly, .. } => poly.eval(r[0]),
            DimensionPolynomial::Multivariate { poly, .. } => poly.eval(r),
        }
    }

    /// Whether `r` is at or beyond the threshold in every coordinate.
    pub fn in_range(&self, r: &[i64]) -> bool {
        match self {
            DimensionPolynomial::Univariate { threshold, .. } => r[0] >= *threshold,
            DimensionPolynomial::Multivariate { threshold, .. } => r.iter().zip(threshold).all(|(a, b)| a >= b),
        }
    }

    pub fn univariate(&self) -> Option<(&NumericalPolynomial, i64, &Invariants)> {
        match self {
            DimensionPolynomial::Univariate { poly, threshold, invariants } => Some((poly, *threshold, invariants)),
            _ => None,
        }
    }

    pub fn multivariate(&self) -> Option<(&MultiNumericalPolynomial, &[i64], &MultiInvariants)> {
        match self {
            DimensionPolynomial::Multivariate { poly, threshold, invariants } => Some((poly, threshold, invariants)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub r: Vec<i64>,
    /// Exact dimension from lead-term counting.
    pub value: u64,
    pub polynomial: BigInt,
    pub oracle: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRecord {
    pub r_max: i64,
    /// Rows where the oracle disagrees with the exact value, or with the
    /// polynomial at or beyond the threshold.
    pub mismatches: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub polynomial: DimensionPolynomial,
    pub table: Vec<TableRow>,
    pub oracle: Option<OracleRecord>,
}

impl DimensionReport {
    /// Rows at or beyond the threshold where value and polynomial differ.
    pub fn polynomial_mismatches(&self) -> Vec<Vec<i64>> {
        self.table
            .iter()
            .filter(|row| self.polynomial.in_range(&row.r) && BigInt::from(row.value) != row.polynomial)
            .map(|row| row.r.clone())
            .collect()
    }

    pub fn oracle_agrees(&self) -> bool {
        self.oracle.as_ref().is_none_or(|o| o.mismatches.is_empty())
    }

    /// `(d, c_d, c_{m+n})` of a univariate report.
    pub fn invariant_triple(&self) -> Option<(i64, BigInt, BigInt)> {
        self.polynomial.univariate().map(|(_, _, inv)| (inv.degree, inv.leading.clone(), inv.top.clone()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Largest `r` (per block for multivariate reports) in the value table;
    /// defaults to four past the threshold.
    pub r_table: Option<i64>,
    /// Cross-check the table against the brute-force oracle.
    pub verify: Option<TruncationWindow>,
}

/// `dim(Big ∩ F_r) - dim(Small ∩ F_r)` for lifted submodules `Small ⊆ Big`.
struct Difference<'a> {
    x: &'a ExtensionPresentation,
    small: Vec<ModuleElement>,
    big: Vec<ModuleElement>,
    /// Generators of `N` for the oracle; `None` means all of `M`.
    oracle_gens: Option<Vec<ModuleElement>>,
}

impl Difference<'_> {
    fn leads(&self, gens: &[ModuleElement]) -> Result<LeadSet> {
        let alg = self.x.algebra();
        let gb = alg.groebner(gens, &TermOrder::Graded);
        alg.lead_set(self.x.rank(), &gb, &TermOrder::Graded)
    }

    fn univariate(&self, opts: &ReportOptions) -> Result<DimensionReport> {
        let sig = *self.x.signature();
        let small = self.leads(&self.small)?;
        let big = self.leads(&self.big)?;
        let (ps, ts) = complement_polynomial(&small)?;
        let (pb, tb) = complement_polynomial(&big)?;
        let poly = ps.sub(&pb);
        let threshold = ts.max(tb);
        let invariants = poly.invariants(sig.m, sig.n)?;
        let r_hi = opts.r_table.unwrap_or(threshold + 4).max(opts.verify.map_or(0, |w| w.r_max));
        let oracle = match &opts.verify {
            Some(w) => Some(self.oracle_univariate(w)?),
            None => None,
        };
        let table: Vec<TableRow> = (0..=r_hi)
            .map(|r| {
                let b = Bound::Total(r);
                TableRow {
                    r: alloc::vec![r],
                    value: complement_count_exact(&small, &b) - complement_count_exact(&big, &b),
                    polynomial: poly.eval(r),
                    oracle: oracle.as_ref().and_then(|t| t.get(r as usize).copied()),
                }
            })
            .collect();
        let polynomial = DimensionPolynomial::Univariate { poly, threshold, invariants };
        let record = opts.verify.map(|w| OracleRecord { r_max: w.r_max, mismatches: mismatches(&polynomial, &table) });
        Ok(DimensionReport { polynomial, table, oracle: record })
    }

    fn oracle_univariate(&self, w: &TruncationWindow) -> Result<Vec<u64>> {
        match &self.oracle_gens {
            Some(g) => oracle::dim_intersection(self.x, g, w),
            None => oracle::module_table(self.x, w),
        }
    }

    fn multivariate(&self, part: &PartitionSpec, opts: &ReportOptions) -> Result<DimensionReport> {
        let alg = self.x.algebra();
        let s = self.x.rank();
        let small = homogenized_leads(alg, s, &self.small, part)?;
        let big = homogenized_leads(alg, s, &self.big, part)?;
        let (ps, ts) = complement_polynomial_blockwise(&small, part)?;
        let (pb, tb) = complement_polynomial_blockwise(&big, part)?;
        let poly = ps.sub(&pb);
        let threshold: Vec<i64> = ts.iter().zip(&tb).map(|(a, b)| *a.max(b)).collect();
        let invariants = poly.multi_invariants()?;
        let top = threshold.iter().copied().max().unwrap_or(0);
        let r_hi = opts.r_table.unwrap_or(top + 1).max(opts.verify.map_or(0, |w| w.r_max));
        let oracle = match (&opts.verify, &self.oracle_gens) {
            (Some(w), Some(g)) => Some(oracle::dim_intersection_blockwise(self.x, g, part, w)?),
            (Some(w), None) => Some(oracle::module_table_blockwise(self.x, part, w)?),
            (None, _) => None,
        };
        let table: Vec<TableRow> = grid(part.num_blocks(), r_hi)
            .into_iter()
            .map(|r| {
                let b = Bound::Blockwise { part: part.clone(), r: r.clone() };
                TableRow {
                    value: complement_count_exact(&small, &b) - complement_count_exact(&big, &b),
                    polynomial: poly.eval(&r),
                    oracle: oracle.as_ref().and_then(|t| t.get(&r).copied()),
                    r,
                }
            })
            .collect();
        let polynomial = DimensionPolynomial::Multivariate { poly, threshold, invariants };
        let record = opts.verify.map(|w| OracleRecord { r_max: w.r_max, mismatches: mismatches(&polynomial, &table) });
        Ok(DimensionReport { polynomial, table, oracle: record })
    }

    fn report(&self, part: Option<&PartitionSpec>, opts: &ReportOptions) -> Result<DimensionReport> {
        match part {
            None => self.univariate(opts),
            Some(p) => self.multivariate(p, opts),
        }
    }
}

fn grid(k: usize, hi: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = alloc::vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=hi).map(move |r| {
                    let mut w = v.clone();
                    w.push(r);
                    w
                })
            })
            .collect();
    }
    out
}

fn mismatches(p: &DimensionPolynomial, table: &[TableRow]) -> Vec<Vec<i64>> {
    table
        .iter()
        .filter(|row| match row.oracle {
            Some(o) => o != row.value || (p.in_range(&row.r) && BigInt::from(o) != row.polynomial),
            None => false,
        })
        .map(|row| row.r.clone())
        .collect()
}

/// `χ_{η|K}` (or the blockwise `Φ_η` when a partition is given): the
/// dimension of `M_r` for the presented module.
pub fn chi_extension(x: &ExtensionPresentation, part: Option<&PartitionSpec>, opts: &ReportOptions) -> Result<DimensionReport> {
    let all: Vec<ModuleElement> = (0..x.rank()).map(|i| x.basis(i)).collect();
    Difference { x, small: x.relations().to_vec(), big: all, oracle_gens: None }.report(part, opts)
}

/// `χ_{K,F,η}`: the dimension of `N ∩ M_r` where `N` is generated by the
/// differentials of the generators of `F`.
pub fn chi_intermediate(
    x: &ExtensionPresentation,
    f: &IntermediateFieldSpec,
    part: Option<&PartitionSpec>,
    opts: &ReportOptions,
) -> Result<DimensionReport> {
    if !f.sigma_delta_closed {
        return Err(Error::NotSigmaDeltaClosed);
    }
    let gens = reduced_generators(x, &f.generators)?;
    let mut big = gens.clone();
    big.extend(x.relations().iter().cloned());
    Difference { x, small: x.relations().to_vec(), big, oracle_gens: Some(f.generators.clone()) }.report(part, opts)
}

/// Normal forms of `gens` modulo the relations, zeros dropped.
fn reduced_generators(x: &ExtensionPresentation, gens: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
    for g in gens {
        check_in(x.algebra(), x.rank(), g)?;
    }
    let rb = x.relation_basis();
    Ok(gens
        .iter()
        .map(|g| x.algebra().normal_form(g, &rb, &TermOrder::Graded))
        .filter(|g| !g.is_zero())
        .collect())
}

/// Whether `v` lies in the image of the submodule generated by `gens` in `M`.
pub fn in_submodule(x: &ExtensionPresentation, gens: &[ModuleElement], v: &ModuleElement) -> Result<bool> {
    check_in(x.algebra(), x.rank(), v)?;
    for g in gens {
        check_in(x.algebra(), x.rank(), g)?;
    }
    let mut all = gens.to_vec();
    all.extend(x.relations().iter().cloned());
    let gb = x.algebra().groebner(&all, &TermOrder::Graded);
    Ok(x.algebra().contains(&gb, v, &TermOrder::Graded))
}

/// Outcome of fitting a polynomial to a value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// The values agree with `poly` from `threshold` through the end of the table.
    Polynomial { poly: NumericalPolynomial, threshold: i64 },
    /// No tail of the table long enough to be conclusive fits a polynomial
    /// of degree at most `m + n`; `r` is the first point off the fit of the
    /// whole table.
    NotEventuallyPolynomial { r: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    /// `(r, trdeg_K F_r)` for `r = 0..=r_max`.
    pub values: Vec<(i64, u64)>,
    pub verdict: ProbeVerdict,
}

/// `trdeg_K F_r` for the field generated (as a plain field) by listed
/// monomial images `λη_j` in a free extension, with a polynomial fit.
pub fn quasi_polynomial_probe(x: &ExtensionPresentation, gens: &[ModuleElement], r_max: i64) -> Result<ProbeReport> {
    if !x.is_free() {
        return Err(Error::AmbientNotFree);
    }
    if r_max < 0 {
        return Err(Error::InvalidSignature("r_max must be nonnegative".into()));
    }
    let mut monomials: Vec<(usize, Exponent)> = Vec::with_capacity(gens.len());
    for (idx, g) in gens.iter().enumerate() {
        check_in(x.algebra(), x.rank(), g)?;
        match g.terms().keys().next() {
            Some((j, e)) if g.num_terms() == 1 => monomials.push((*j, e.clone())),
            _ => return Err(Error::NonMonomialGenerator(idx)),
        }
    }
    let values: Vec<(i64, u64)> =
        (0..=r_max).map(|r| oracle::trdeg_monomial_field(x, &monomials, r).map(|v| (r, v))).collect::<Result<_>>()?;
    let bound = x.signature().width();
    Ok(ProbeReport { verdict: fit_tail(&values, bound), values })
}

/// The longest tail of at least `bound + 3` points that a polynomial of
/// degree `<= bound` fits exactly.
pub fn fit_tail(values: &[(i64, u64)], bound: usize) -> ProbeVerdict {
    let pts: Vec<(i64, BigInt)> = values.iter().map(|(r, v)| (*r, BigInt::from(*v))).collect();
    let min_len = bound + 3;
    if pts.len() >= min_len {
        for start in 0..=pts.len() - min_len {
            if let Ok(poly) = NumericalPolynomial::interpolate(&pts[start..], bound) {
                return ProbeVerdict::Polynomial { poly, threshold: pts[start].0 };
            }
        }
    }
    let r = match NumericalPolynomial::interpolate(&pts, bound) {
        Err(Error::NotEventuallyPolynomial { r }) => r,
        _ => pts.last().map_or(0, |p| p.0),
    };
    ProbeVerdict::NotEventuallyPolynomial { r }
}

/// One side of a change of generators.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorSide<'a> {
    pub presentation: &'a ExtensionPresentation,
    pub field: Option<&'a IntermediateFieldSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub left: DimensionReport,
    pub right: DimensionReport,
    pub left_invariants: (i64, BigInt, BigInt),
    pub right_invariants: (i64, BigInt, BigInt),
    pub agree: bool,
}

/// `Σ_i A_i e'_i ↦ Σ_i A_i·images[i]`.
fn apply_map(alg: &Algebra, images: &[ModuleElement], v: &ModuleElement, target_rank: usize) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero(target_rank);
    for (i, img) in images.iter().enumerate() {
        let a = v.component(i);
        if !a.is_zero() {
            out = out.add(&alg.act(&a, img)?);
        }
    }
    Ok(out)
}

/// Computes the reports for two generator families of one extension and
/// compares `(d, c_d, c_{m+n})`.
///
/// `forward[i]` is `dη'_i` written in the left presentation and
/// `backward[i]` is `dη_i` written in the right one. Both maps must respect
/// the relations and compose to the identity on each module.
pub fn compare_generator_sets(
    left: GeneratorSide<'_>,
    right: GeneratorSide<'_>,
    forward: &[ModuleElement],
    backward: &[ModuleElement],
    opts: &ReportOptions,
) -> Result<ComparisonReport> {
    let (x, y) = (left.presentation, right.presentation);
    let alg = x.algebra();
    if alg != y.algebra() {
        return Err(Error::SignatureMismatch("presentations use different operator rings".into()));
    }
    let s = x.rank();
    if y.rank() != s || forward.len() != s || backward.len() != s {
        return Err(Error::TransitionNotInvertible("transition must be a square matrix of the common rank".into()));
    }
    for v in forward {
        check_in(alg, s, v)?;
    }
    for v in backward {
        check_in(alg, s, v)?;
    }
    let to_left = |v: &ModuleElement| apply_map(alg, forward, v, s);
    let to_right = |v: &ModuleElement| apply_map(alg, backward, v, s);
    let gx = alg.groebner(x.relations(), &TermOrder::Graded);
    let gy = alg.groebner(y.relations(), &TermOrder::Graded);
    let zero_in = |gb: &[ModuleElement], v: &ModuleElement| alg.contains(gb, v, &TermOrder::Graded);
    for r in y.relations() {
        if !zero_in(&gx, &to_left(r)?) {
            return Err(Error::TransitionNotInvertible("a relation of the right presentation does not map to zero".into()));
        }
    }
    for r in x.relations() {
        if !zero_in(&gy, &to_right(r)?) {
            return Err(Error::TransitionNotInvertible("a relation of the left presentation does not map to zero".into()));
        }
    }
    for i in 0..s {
        if !zero_in(&gx, &to_left(&to_right(&x.basis(i))?)?.sub(&x.basis(i))) {
            return Err(Error::TransitionNotInvertible(alloc::format!("round trip on the left moves e{}", i + 1)));
        }
        if !zero_in(&gy, &to_right(&to_left(&y.basis(i))?)?.sub(&y.basis(i))) {
            return Err(Error::TransitionNotInvertible(alloc::format!("round trip on the right moves e{}", i + 1)));
        }
    }
    let (lrep, rrep) = match (left.field, right.field) {
        (Some(f), Some(g)) => {
            for (k, v) in g.generators.iter().enumerate() {
                if !in_submodule(x, &f.generators, &to_left(v)?)? {
                    return Err(Error::FieldMismatch(alloc::format!("right generator {} is not in the left field", k + 1)));
                }
            }
            for (k, v) in f.generators.iter().enumerate() {
                if !in_submodule(y, &g.generators, &to_right(v)?)? {
                    return Err(Error::FieldMismatch(alloc::format!("left generator {} is not in the right field", k + 1)));
                }
            }
            (chi_intermediate(x, f, None, opts)?, chi_intermediate(y, g, None, opts)?)
        }
        (None, None) => (chi_extension(x, None, opts)?, chi_extension(y, None, opts)?),
        _ => return Err(Error::FieldMismatch("the field must be given on both sides or neither".into())),
    };
    let li = lrep.invariant_triple().expect("univariate");
    let ri = rrep.invariant_triple().expect("univariate");
    Ok(ComparisonReport { agree: li == ri, left: lrep, right: rrep, left_invariants: li, right_invariants: ri })
}
