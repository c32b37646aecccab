use dimpoly_core::kaehler::{
    chi_extension, chi_intermediate, compare_generator_sets, quasi_polynomial_probe, ExtensionPresentation,
    GeneratorSide, IntermediateFieldSpec, ProbeVerdict, ReportOptions,
};
use dimpoly_core::monoid::{PartitionSpec, Signature};
use dimpoly_core::numpoly::{MultiNumericalPolynomial, NumericalPolynomial};
use dimpoly_core::opalg::{parse_element, AffineMap, Algebra, Derivation, GroundField, ModuleElement};
use dimpoly_core::oracle::TruncationWindow;
use dimpoly_core::Error;
use num_bigint::BigInt;

fn sig(m: usize, n: usize) -> Signature {
    Signature::new(m, n, false).unwrap()
}

fn free(m: usize, n: usize, s: usize) -> ExtensionPresentation {
    ExtensionPresentation::free(Algebra::constants(sig(m, n)), s).unwrap()
}

fn el(x: &ExtensionPresentation, src: &str) -> ModuleElement {
    parse_element(x.algebra(), x.rank(), src).unwrap()
}

fn verify(r: i64) -> ReportOptions {
    ReportOptions { r_table: None, verify: Some(TruncationWindow::new(r, 4).unwrap()) }
}

fn uni(rep: &dimpoly_core::kaehler::DimensionReport) -> (NumericalPolynomial, i64) {
    let (p, t, _) = rep.polynomial.univariate().unwrap();
    (p.clone(), t)
}

fn qx_field() -> Algebra {
    let f = GroundField::new(
        vec!["x".into()],
        vec![Derivation::Partial(0)],
        vec![vec![AffineMap::shift(BigInt::from(1).into())]],
    )
    .unwrap();
    Algebra::new(sig(1, 1), f).unwrap()
}

#[test]
fn free_extension() {
    for (m, n, s) in [(1, 0, 1), (1, 1, 2), (0, 2, 3)] {
        let rep = chi_extension(&free(m, n, s), None, &verify(3)).unwrap();
        let (p, t) = uni(&rep);
        assert_eq!(p, NumericalPolynomial::shifted_binomial(0, m + n).scale(&BigInt::from(s)));
        assert_eq!(t, 0);
        assert!(rep.oracle_agrees());
        assert_eq!(rep.invariant_triple().unwrap(), ((m + n) as i64, BigInt::from(s), BigInt::from(s)));
    }
}

#[test]
fn one_relation() {
    let a = Algebra::constants(sig(1, 0));
    let x = ExtensionPresentation::new(a.clone(), 1, vec![parse_element(&a, 1, "d1^2*e1").unwrap()]).unwrap();
    let rep = chi_extension(&x, None, &verify(5)).unwrap();
    assert_eq!(uni(&rep).0, NumericalPolynomial::from_i64(&[2]));
    assert!(rep.oracle_agrees());
    assert!(rep.polynomial_mismatches().is_empty());
}

#[test]
fn free_blockwise() {
    let x = free(1, 1, 2);
    let part = PartitionSpec::new(x.signature(), vec![1], vec![1]).unwrap();
    let rep = chi_extension(&x, Some(&part), &verify(3)).unwrap();
    let (p, t, inv) = rep.polynomial.multivariate().unwrap();
    let b = NumericalPolynomial::shifted_binomial(0, 1);
    let expect = MultiNumericalPolynomial::outer_product(&[b.clone(), b], vec![1, 1]).unwrap().scale(&BigInt::from(2));
    assert_eq!(p, &expect);
    assert_eq!(t, &[0, 0]);
    assert_eq!(inv.top_coefficient, BigInt::from(2));
    assert!(rep.oracle_agrees());
}

#[test]
fn whole_extension_as_intermediate_field() {
    let x = free(1, 1, 2);
    let f = IntermediateFieldSpec::closed(vec![el(&x, "e1"), el(&x, "e2")]);
    let a = chi_intermediate(&x, &f, None, &ReportOptions::default()).unwrap();
    let b = chi_extension(&x, None, &ReportOptions::default()).unwrap();
    assert_eq!(a.polynomial, b.polynomial);
}

#[test]
fn second_derivative_field() {
    let x = free(1, 0, 1);
    let f = IntermediateFieldSpec::closed(vec![el(&x, "d1^2*e1")]);
    let rep = chi_intermediate(&x, &f, None, &verify(8)).unwrap();
    assert_eq!(uni(&rep), (NumericalPolynomial::from_i64(&[-2, 1]), 2));
    assert!(rep.oracle_agrees());
    let values: Vec<u64> = rep.table.iter().map(|r| r.value).collect();
    assert_eq!(&values[..5], &[0, 0, 1, 2, 3]);
}

#[test]
fn derivative_multiples_in_two_operators() {
    let x = free(1, 1, 1);
    let f = IntermediateFieldSpec::closed(vec![el(&x, "d1*e1")]);
    let rep = chi_intermediate(&x, &f, None, &verify(8)).unwrap();
    assert!(rep.oracle_agrees());
    for row in &rep.table {
        let r = row.r[0] as u64;
        assert_eq!(row.value, r * (r + 1) / 2);
    }
    assert_eq!(rep.invariant_triple().unwrap(), (2, BigInt::from(1), BigInt::from(1)));
}

#[test]
fn unclosed_field_is_rejected() {
    let x = free(1, 0, 1);
    let f = IntermediateFieldSpec::new(vec![el(&x, "d1*e1")], false);
    assert_eq!(chi_intermediate(&x, &f, None, &ReportOptions::default()), Err(Error::NotSigmaDeltaClosed));
}

#[test]
fn smaller_submodule_smaller_polynomial() {
    let x = free(1, 1, 1);
    let big = chi_intermediate(&x, &IntermediateFieldSpec::closed(vec![el(&x, "d1*e1")]), None, &ReportOptions::default())
        .unwrap();
    let small = chi_intermediate(&x, &IntermediateFieldSpec::closed(vec![el(&x, "d1^2*a1*e1")]), None, &ReportOptions::default())
        .unwrap();
    assert!(uni(&big).0.cmp_eventual(&uni(&small).0).is_gt());
}

#[test]
fn rational_function_coefficients() {
    let a = qx_field();
    let x = ExtensionPresentation::new(a.clone(), 1, vec![parse_element(&a, 1, "(x*d1 - a1)*e1").unwrap()]).unwrap();
    let rep = chi_extension(&x, None, &verify(3)).unwrap();
    assert!(rep.oracle_agrees(), "{:?}", rep.oracle);
    let f = IntermediateFieldSpec::closed(vec![parse_element(&a, 1, "(d1 + x)*e1").unwrap()]);
    let rep = chi_intermediate(&x, &f, None, &verify(3)).unwrap();
    assert!(rep.oracle_agrees(), "{:?}", rep.oracle);
}

fn dpow(x: &ExtensionPresentation, k: u32) -> ModuleElement {
    el(x, &format!("d1^{}*e1", k))
}

#[test]
fn half_order_probe() {
    let x = free(1, 0, 1);
    let gens: Vec<_> = (1..=6).map(|k| dpow(&x, 2 * k)).collect();
    let p = quasi_polynomial_probe(&x, &gens, 12).unwrap();
    for (r, v) in &p.values {
        assert_eq!(*v as i64, r / 2);
    }
    assert!(matches!(p.verdict, ProbeVerdict::NotEventuallyPolynomial { .. }));
}

#[test]
fn logarithmic_probe() {
    let x = free(1, 0, 1);
    let gens: Vec<_> = (1..=4).map(|k| dpow(&x, 1 << k)).collect();
    let p = quasi_polynomial_probe(&x, &gens, 16).unwrap();
    for (r, v) in p.values.iter().filter(|(r, _)| *r >= 2) {
        assert_eq!(*v as i64, r.ilog2() as i64);
    }
    assert!(matches!(p.verdict, ProbeVerdict::NotEventuallyPolynomial { .. }));
}

#[test]
fn closed_monomial_probe_matches_field() {
    let x = free(1, 0, 1);
    let gens: Vec<_> = (1..=10).map(|k| dpow(&x, k)).collect();
    let p = quasi_polynomial_probe(&x, &gens, 10).unwrap();
    let rep = chi_intermediate(&x, &IntermediateFieldSpec::closed(vec![dpow(&x, 1)]), None, &ReportOptions::default())
        .unwrap();
    match p.verdict {
        ProbeVerdict::Polynomial { poly, .. } => assert_eq!(poly, uni(&rep).0),
        v => panic!("{:?}", v),
    }
}

#[test]
fn probe_needs_monomials() {
    let x = free(1, 1, 1);
    let gens = vec![el(&x, "d1*e1"), el(&x, "d1*e1 + a1*e1")];
    assert_eq!(quasi_polynomial_probe(&x, &gens, 4), Err(Error::NonMonomialGenerator(1)));
}

fn side<'a>(x: &'a ExtensionPresentation, f: Option<&'a IntermediateFieldSpec>) -> GeneratorSide<'a> {
    GeneratorSide { presentation: x, field: f }
}

#[test]
fn identity_and_swap() {
    let x = free(1, 1, 2);
    let id = vec![el(&x, "e1"), el(&x, "e2")];
    let c = compare_generator_sets(side(&x, None), side(&x, None), &id, &id, &ReportOptions::default()).unwrap();
    assert!(c.agree);
    assert_eq!(c.left, c.right);
    let swap = vec![el(&x, "e2"), el(&x, "e1")];
    let f = IntermediateFieldSpec::closed(vec![el(&x, "d1*e1")]);
    let g = IntermediateFieldSpec::closed(vec![el(&x, "d1*e2")]);
    let c = compare_generator_sets(side(&x, Some(&f)), side(&x, Some(&g)), &swap, &swap, &ReportOptions::default()).unwrap();
    assert!(c.agree);
}

#[test]
fn triangular_change() {
    let x = free(1, 1, 2);
    let fwd = vec![el(&x, "e1 + d1*e2"), el(&x, "e2")];
    let back = vec![el(&x, "e1 - d1*e2"), el(&x, "e2")];
    let f = IntermediateFieldSpec::closed(vec![el(&x, "a1*e1")]);
    let g = IntermediateFieldSpec::closed(vec![el(&x, "a1*e1 - a1*d1*e2")]);
    let c = compare_generator_sets(side(&x, Some(&f)), side(&x, Some(&g)), &fwd, &back, &ReportOptions::default()).unwrap();
    assert!(c.agree);
    assert_eq!(c.left_invariants, (2, BigInt::from(1), BigInt::from(1)));
}

#[test]
fn non_invertible_change() {
    let x = free(1, 0, 1);
    let fwd = vec![el(&x, "d1*e1 + e1")];
    let back = vec![el(&x, "e1")];
    let r = compare_generator_sets(side(&x, None), side(&x, None), &fwd, &back, &ReportOptions::default());
    assert!(matches!(r, Err(Error::TransitionNotInvertible(_))));
}

#[test]
fn mismatched_fields() {
    let x = free(1, 0, 1);
    let id = vec![el(&x, "e1")];
    let f = IntermediateFieldSpec::closed(vec![el(&x, "d1*e1")]);
    let g = IntermediateFieldSpec::closed(vec![el(&x, "d1^2*e1")]);
    let r = compare_generator_sets(side(&x, Some(&f)), side(&x, Some(&g)), &id, &id, &ReportOptions::default());
    assert!(matches!(r, Err(Error::FieldMismatch(_))));
}
