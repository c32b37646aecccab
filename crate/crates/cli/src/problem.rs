//! Problem files: TOML in, validated core objects out.
//!
//! ```toml
//! name = "one derivation, one shift"
//!
//! [signature]
//! m = 1
//! n = 1
//!
//! [field]
//! indeterminates = ["x"]
//! derivations = ["x"]                        # d1 = d/dx; "0" for the zero derivation
//! translations = [{ x = { shift = 1 } }]     # a1 : x -> x + 1
//!
//! [partition]
//! derivation_blocks = [1]
//! translation_blocks = [1]
//!
//! [extension]
//! generators = 1
//! relations = ["(x*d1 - a1)*e1"]
//!
//! [verify]
//! r_max = 6
//!
//! [[task]]
//! kind = "chi_extension"
//! ```

use std::collections::BTreeMap;
use std::ops::Range;
use std::str::FromStr;

use dimpoly_core::kaehler::{ExtensionPresentation, IntermediateFieldSpec};
use dimpoly_core::monoid::{PartitionSpec, Signature};
use dimpoly_core::opalg::{parse_element, AffineMap, Algebra, Derivation, GroundField, ModuleElement};
use dimpoly_core::oracle::TruncationWindow;
use num_rational::BigRational;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{CliError, Kind, Location, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    name: Option<String>,
    signature: RawSignature,
    field: Option<RawField>,
    partition: Option<Spanned<RawPartition>>,
    extension: RawExtension,
    verify: Option<RawVerify>,
    #[serde(default, rename = "task")]
    tasks: Vec<Spanned<RawTask>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    m: usize,
    n: usize,
    #[serde(default)]
    inversive: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    indeterminates: Vec<String>,
    #[serde(default)]
    derivations: Vec<Spanned<String>>,
    #[serde(default)]
    translations: Vec<Spanned<BTreeMap<String, RawAffine>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAffine {
    scale: Option<Number>,
    shift: Option<Number>,
}

/// An integer or a string such as `"-3/4"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Option<BigRational> {
        match self {
            Number::Int(v) => Some(BigRational::from_integer((*v).into())),
            Number::Text(s) => BigRational::from_str(s.trim()).ok(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartition {
    #[serde(default)]
    derivation_blocks: Vec<usize>,
    #[serde(default)]
    translation_blocks: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    generators: usize,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    r_max: i64,
    closure_depth: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    kind: String,
    generators: Option<Vec<Spanned<String>>>,
    closed: Option<bool>,
    r_max: Option<i64>,
    require_polynomial: Option<bool>,
    chain: Option<Vec<Vec<Spanned<String>>>>,
    caps: Option<Vec<usize>>,
    k: Option<usize>,
    relations: Option<Vec<Spanned<String>>>,
    forward: Option<Vec<Spanned<String>>>,
    backward: Option<Vec<Spanned<String>>>,
    left_field: Option<Vec<Spanned<String>>>,
    right_field: Option<Vec<Spanned<String>>>,
}

pub const DEFAULT_CLOSURE_DEPTH: usize = 4;

/// A validated problem.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: Option<String>,
    pub signature: Signature,
    pub partition: Option<PartitionSpec>,
    pub extension: ExtensionPresentation,
    pub verify: Option<TruncationWindow>,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Task {
    ChiExtension,
    ChiIntermediate { field: IntermediateFieldSpec },
    QuasiProbe { generators: Vec<ModuleElement>, r_max: i64, require_polynomial: bool },
    ChainAudit { fields: Vec<IntermediateFieldSpec> },
    Theorem5Chain { caps: Vec<usize> },
    DimBound { k: usize },
    CompareGenerators {
        right: ExtensionPresentation,
        forward: Vec<ModuleElement>,
        backward: Vec<ModuleElement>,
        fields: Option<(IntermediateFieldSpec, IntermediateFieldSpec)>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::ChiExtension => "chi_extension",
            Task::ChiIntermediate { .. } => "chi_intermediate",
            Task::QuasiProbe { .. } => "quasi_probe",
            Task::ChainAudit { .. } => "chain_audit",
            Task::Theorem5Chain { .. } => "theorem5_chain",
            Task::DimBound { .. } => "dim_bound",
            Task::CompareGenerators { .. } => "compare_generators",
        }
    }
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn loc(&self, span: &Range<usize>) -> Location {
        Location::of(self.src, span.start)
    }

    fn invalid(&self, span: &Range<usize>, msg: impl Into<String>) -> CliError {
        CliError::validation(msg).at(self.loc(span))
    }

    fn core(&self, span: &Range<usize>, e: dimpoly_core::Error) -> CliError {
        CliError::from_core(&e).at(self.loc(span))
    }

    /// Parses an element; error positions point inside the quoted string.
    fn element(&self, alg: &Algebra, rank: usize, s: &Spanned<String>) -> Result<ModuleElement> {
        parse_element(alg, rank, s.get_ref()).map_err(|e| {
            let inner = match e {
                dimpoly_core::Error::Parse { pos, .. } => s.span().start + 1 + pos,
                _ => s.span().start,
            };
            CliError::from_core(&e).at(Location::of(self.src, inner))
        })
    }

    fn elements(&self, alg: &Algebra, rank: usize, v: &[Spanned<String>]) -> Result<Vec<ModuleElement>> {
        v.iter().map(|s| self.element(alg, rank, s)).collect()
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(src: &str) -> Result<ProblemSpec> {
    let raw: RawProblem = toml::from_str(src).map_err(|e| {
        let err = CliError::new(Kind::ParseError, e.message().to_string());
        match e.span() {
            Some(span) => err.at(Location::of(src, span.start)),
            None => err,
        }
    })?;
    let ctx = Ctx { src };
    let signature = Signature::new(raw.signature.m, raw.signature.n, raw.signature.inversive)
        .map_err(|e| CliError::from_core(&e))?;
    let field = match &raw.field {
        None => GroundField::constants(signature.m, signature.n),
        Some(f) => build_field(&ctx, f, &signature)?,
    };
    let algebra = Algebra::new(signature, field).map_err(|e| CliError::from_core(&e))?;
    let partition = match &raw.partition {
        None => None,
        Some(p) => Some(
            PartitionSpec::new(&signature, p.get_ref().derivation_blocks.clone(), p.get_ref().translation_blocks.clone())
                .map_err(|e| ctx.core(&p.span(), e))?,
        ),
    };
    let s = raw.extension.generators;
    let relations = ctx.elements(&algebra, s, &raw.extension.relations)?;
    let extension = ExtensionPresentation::new(algebra.clone(), s, relations).map_err(|e| CliError::from_core(&e))?;
    let verify = match &raw.verify {
        None => None,
        Some(v) => Some(
            TruncationWindow::new(v.r_max, v.closure_depth.unwrap_or(DEFAULT_CLOSURE_DEPTH))
                .map_err(|e| CliError::from_core(&e))?,
        ),
    };
    let tasks = raw
        .tasks
        .iter()
        .enumerate()
        .map(|(i, t)| build_task(&ctx, &extension, t).map_err(|e| e.in_task(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProblemSpec { name: raw.name, signature, partition, extension, verify, tasks })
}

fn build_field(ctx: &Ctx, f: &RawField, sig: &Signature) -> Result<GroundField> {
    let names = &f.indeterminates;
    let var = |name: &Spanned<String>| -> Result<usize> {
        names.iter().position(|n| n == name.get_ref()).ok_or_else(|| {
            ctx.invalid(&name.span(), format!("unknown indeterminate {:?}", name.get_ref()))
        })
    };
    let deltas = if f.derivations.is_empty() {
        vec![Derivation::Zero; sig.m]
    } else {
        f.derivations
            .iter()
            .map(|d| match d.get_ref().trim() {
                "0" | "" => Ok(Derivation::Zero),
                _ => var(d).map(Derivation::Partial),
            })
            .collect::<Result<Vec<_>>>()?
    };
    let alphas = if f.translations.is_empty() {
        vec![vec![AffineMap::identity(); names.len()]; sig.n]
    } else {
        let mut out = Vec::new();
        for t in &f.translations {
            let mut maps = vec![AffineMap::identity(); names.len()];
            for (name, a) in t.get_ref() {
                let v = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| ctx.invalid(&t.span(), format!("unknown indeterminate {:?}", name)))?;
                let num = |n: &Option<Number>, default: i64| -> Result<BigRational> {
                    match n {
                        None => Ok(BigRational::from_integer(default.into())),
                        Some(n) => n.value().ok_or_else(|| ctx.invalid(&t.span(), "expected a rational number")),
                    }
                };
                maps[v] = AffineMap { scale: num(&a.scale, 1)?, shift: num(&a.shift, 0)? };
            }
            out.push(maps);
        }
        out
    };
    if deltas.len() != sig.m || alphas.len() != sig.n {
        return Err(CliError::validation(format!(
            "field declares {} derivations and {} translations, signature has m = {}, n = {}",
            deltas.len(),
            alphas.len(),
            sig.m,
            sig.n
        )));
    }
    GroundField::new(names.clone(), deltas, alphas).map_err(|e| CliError::from_core(&e))
}

fn required<'a, T>(ctx: &Ctx, t: &Spanned<RawTask>, v: &'a Option<T>, key: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| ctx.invalid(&t.span(), format!("task {:?} needs `{}`", t.get_ref().kind, key)))
}

fn build_task(ctx: &Ctx, x: &ExtensionPresentation, t: &Spanned<RawTask>) -> Result<Task> {
    let raw = t.get_ref();
    let alg = x.algebra();
    let s = x.rank();
    let closed = raw.closed.unwrap_or(false);
    let task = match raw.kind.as_str() {
        "chi_extension" => Task::ChiExtension,
        "chi_intermediate" => {
            let gens = ctx.elements(alg, s, required(ctx, t, &raw.generators, "generators")?)?;
            Task::ChiIntermediate { field: IntermediateFieldSpec::new(gens, closed) }
        }
        "quasi_probe" => Task::QuasiProbe {
            generators: ctx.elements(alg, s, required(ctx, t, &raw.generators, "generators")?)?,
            r_max: *required(ctx, t, &raw.r_max, "r_max")?,
            require_polynomial: raw.require_polynomial.unwrap_or(false),
        },
        "chain_audit" => {
            let chain = required(ctx, t, &raw.chain, "chain")?;
            let fields = chain
                .iter()
                .map(|gens| ctx.elements(alg, s, gens).map(|g| IntermediateFieldSpec::new(g, closed)))
                .collect::<Result<Vec<_>>>()?;
            Task::ChainAudit { fields }
        }
        "theorem5_chain" => Task::Theorem5Chain { caps: required(ctx, t, &raw.caps, "caps")?.clone() },
        "dim_bound" => Task::DimBound { k: raw.k.unwrap_or(s) },
        "compare_generators" => {
            let rels = ctx.elements(alg, s, raw.relations.as_deref().unwrap_or(&[]))?;
            let right = ExtensionPresentation::new(alg.clone(), s, rels).map_err(|e| ctx.core(&t.span(), e))?;
            let forward = ctx.elements(alg, s, required(ctx, t, &raw.forward, "forward")?)?;
            let backward = ctx.elements(alg, s, required(ctx, t, &raw.backward, "backward")?)?;
            let fields = match (&raw.left_field, &raw.right_field) {
                (Some(l), Some(r)) => Some((
                    IntermediateFieldSpec::new(ctx.elements(alg, s, l)?, true),
                    IntermediateFieldSpec::new(ctx.elements(alg, s, r)?, true),
                )),
                (None, None) => None,
                _ => return Err(ctx.invalid(&t.span(), "give both `left_field` and `right_field` or neither")),
            };
            Task::CompareGenerators { right, forward, backward, fields }
        }
        other => return Err(ctx.invalid(&t.span(), format!("unknown task kind {:?}", other))),
    };
    Ok(task)
}
