//! Machine reports (sorted-key JSON, `"schema": 1`) and their plain-text
//! rendering. Every report embeds the witnesses it relies on, as
//! coordinate vectors in the document's basis, so it can be re-checked
//! without rerunning anything.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::analyze::{
    classify_small, combine, hypothesis_report, lemma_checks, simplicity_oracle, simplicity_theorem_mode, Certificate,
    ClassificationResult, HypothesisReport, OracleRun, RootMultViolation, SimplicityVerdict,
};
use crate::connect::{
    connected, connection_classes, decompose, neg_i_connected, neg_i_connectivity, witness_is_valid, ConnectivitySummary,
    GradedConnectionWitness, Slot,
};
use crate::exactlin::{Field, Scalar};
use crate::splitdec::{split, CartanInput, Root, RootPartition, SplitDecomposition, SplitError, Upsilon};
use crate::superalg::{GradedSubspace, Parity, Superalgebra, Violation};

pub const SCHEMA: u64 = 1;

/// Problems with the request itself rather than with the mathematics.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error("the document has no cartan generators")]
    MissingCartan,
    #[error("cannot parse {0:?}: expected comma-separated values, with @0 or @1 for a graded slot")]
    BadRoot(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A check failed or a required verdict was not reached.
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub outcome: Outcome,
    pub body: Value,
}

impl Report {
    fn new(command: &'static str, outcome: Outcome, body: Value) -> Self {
        Report { command, outcome, body }
    }

    pub fn to_json(&self) -> Value {
        let mut m = match &self.body {
            Value::Object(m) => m.clone(),
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other.clone());
                m
            }
        };
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("ok".into(), json!(self.outcome == Outcome::Pass));
        Value::Object(m)
    }

    /// Compact JSON with a trailing newline. Keys come out sorted because
    /// `serde_json` maps are ordered.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        render(&self.to_json(), 0, &mut out);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

/// Small values that read better on one line: scalars, arrays of scalars
/// and objects of at most three such fields.
fn is_flat(v: &Value) -> bool {
    let simple = |x: &Value| is_scalar(x) || x.as_array().is_some_and(|a| a.iter().all(is_scalar));
    match v {
        Value::Object(m) => m.len() <= 3 && m.values().all(simple),
        Value::Array(items) => items.iter().all(|x| simple(x) || is_flat(x)) && inline(v).len() <= 100,
        _ => true,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!("{{{}}}", m.iter().map(|(k, x)| format!("{k}: {}", inline(x))).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Building blocks

fn vec_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(|c| json!(c.to_string())).collect())
}

fn root_json<S: Scalar>(r: &Root<S>) -> Value {
    vec_json(r.values())
}

fn slot_json<S: Scalar>(s: &Slot<S>) -> Value {
    json!({ "root": root_json(&s.0), "parity": s.1.bit() })
}

fn subspace_json<F: Field>(alg: &Superalgebra<F>, w: &GradedSubspace<F::Elem>) -> Value {
    let part = |p: Parity| Value::Array(w.part(p).basis_vectors().iter().map(|v| vec_json(v)).collect());
    let span: Vec<Value> = w.basis_vectors().iter().map(|v| json!(alg.describe(v))).collect();
    json!({ "dim": w.dim(), "even": part(Parity::Even), "odd": part(Parity::Odd), "span": span })
}

fn roots_by_parity<S: Scalar>(sets: &[Vec<Root<S>>; 2]) -> Value {
    json!({
        "even": sets[0].iter().map(root_json).collect::<Vec<_>>(),
        "odd": sets[1].iter().map(root_json).collect::<Vec<_>>(),
    })
}

fn violation_json<S: Scalar>(v: &Violation<S>) -> Value {
    match v {
        Violation::Grading { i, j, k } => json!({ "kind": "grading", "i": i, "j": j, "k": k }),
        Violation::Identity { i, j, k, residual } => {
            json!({ "kind": "identity", "i": i, "j": j, "k": k, "residual": vec_json(residual) })
        }
    }
}

fn split_error_json<F: Field>(alg: &Superalgebra<F>, e: &SplitError<F::Elem>) -> Value {
    let mut m = Map::new();
    m.insert("message".into(), json!(e.to_string()));
    let kind = match e {
        SplitError::NotValidated => "NotValidated",
        SplitError::Dimension { .. } => "Dimension",
        SplitError::NotGraded { .. } => "NotGraded",
        SplitError::DependentCartan => "DependentCartan",
        SplitError::NotAbelian { .. } => "NotAbelian",
        SplitError::NotSplit(reason) => {
            if let crate::splitdec::NotSplitReason::ZeroSpaceExceedsH { extra, extra_names } = reason {
                m.insert("extra".into(), Value::Array(extra.iter().map(|v| vec_json(v)).collect()));
                m.insert("extra_names".into(), json!(extra_names));
            }
            "NotSplit"
        }
        SplitError::Field(_) => "Field",
    };
    m.insert("kind".into(), json!(kind));
    let _ = alg;
    Value::Object(m)
}

fn partition_json<F: Field>(alg: &Superalgebra<F>, p: &RootPartition<F::Elem>) -> Value {
    json!({
        "frak_i": subspace_json(alg, &p.frak_i),
        "lambda_i": roots_by_parity(&p.lambda_i),
        "lambda_not_i": roots_by_parity(&p.lambda_not_i),
        "unclassified": p.unclassified.iter().map(slot_json).collect::<Vec<_>>(),
        "maximal_length": p.maximal_length,
    })
}

fn decomposition_json<F: Field>(d: &SplitDecomposition<'_, F>) -> Value {
    let alg = d.algebra();
    let roots: Vec<Value> = d
        .root_spaces()
        .iter()
        .map(|rs| json!({ "root": root_json(&rs.root), "space": subspace_json(alg, &rs.space) }))
        .collect();
    let facts: Vec<Value> = d
        .verify_split_facts()
        .iter()
        .map(|v| json!({ "left": slot_json(&v.left), "right": slot_json(&v.right), "product": vec_json(&v.product) }))
        .collect();
    json!({
        "cartan": d.cartan().vectors.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        "h": subspace_json(alg, d.h()),
        "roots": roots,
        "direct_sum": d.is_direct_sum(),
        "split_fact_violations": facts,
    })
}

fn graded_witness_json<S: Scalar>(w: &Option<GradedConnectionWitness<S>>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({ "chain": w.chain.iter().map(slot_json).collect::<Vec<_>>(), "trivial": w.trivial }),
    }
}

fn summary_json<S: Scalar>(s: &ConnectivitySummary<S>) -> Value {
    let table: Vec<Value> = s
        .table
        .iter()
        .map(|(a, b, w)| json!({ "from": slot_json(a), "to": slot_json(b), "witness": graded_witness_json(w) }))
        .collect();
    json!({
        "upsilon": s.upsilon.to_string(),
        "all_connected": s.all_connected,
        "first_failure": s.first_failure.as_ref().map(|(a, b)| json!([slot_json(a), slot_json(b)])),
        "table": table,
    })
}

/// Parses `v1,v2,...` into a root, or `v1,...@p` into a graded slot.
pub fn parse_slot<F: Field>(field: &F, s: &str) -> Result<(Root<F::Elem>, Option<Parity>), ReportError> {
    let bad = || ReportError::BadRoot(s.to_string());
    let (vals, parity) = match s.rsplit_once('@') {
        Some((v, p)) => (v, Some(p.trim().parse::<u8>().ok().and_then(Parity::from_bit).ok_or_else(bad)?)),
        None => (s, None),
    };
    let values = vals.split(',').map(|x| field.parse(x.trim()).map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    Ok((Root(values), parity))
}

// ---------------------------------------------------------------------------
// Subcommands

pub fn check_report<F: Field>(alg: &mut Superalgebra<F>) -> Report {
    let violations = alg.validate();
    let body = json!({
        "dim": alg.dim(),
        "field": alg.field().descriptor().to_string(),
        "violations": violations.iter().map(violation_json).collect::<Vec<_>>(),
    });
    Report::new("check", if violations.is_empty() { Outcome::Pass } else { Outcome::Fail }, body)
}

/// Validation and split; on failure the finished report is returned as
/// the error.
fn prepare<F: Field>(
    command: &'static str,
    alg: &mut Superalgebra<F>,
    cartan: Option<&[Vec<F::Elem>]>,
) -> Result<Result<CartanInput<F::Elem>, Report>, ReportError> {
    let cartan = cartan.ok_or(ReportError::MissingCartan)?;
    let violations = alg.validate();
    if !violations.is_empty() {
        let body = json!({ "error": { "kind": "NotValidated", "violations": violations.iter().map(violation_json).collect::<Vec<_>>() } });
        return Ok(Err(Report::new(command, Outcome::Fail, body)));
    }
    Ok(Ok(CartanInput::new(cartan.to_vec())))
}

macro_rules! prepared {
    ($command:expr, $alg:expr, $cartan:expr) => {{
        match prepare($command, $alg, $cartan)? {
            Ok(c) => c,
            Err(report) => return Ok(report),
        }
    }};
}

macro_rules! split_or_report {
    ($command:expr, $alg:expr, $cartan:expr) => {{
        match split($alg, &$cartan) {
            Ok(d) => d,
            Err(e) => return Ok(Report::new($command, Outcome::Fail, json!({ "error": split_error_json($alg, &e) }))),
        }
    }};
}

pub fn split_report<F: Field>(alg: &mut Superalgebra<F>, cartan: Option<&[Vec<F::Elem>]>) -> Result<Report, ReportError> {
    let c = prepared!("split", alg, cartan);
    let alg = &*alg;
    let d = split_or_report!("split", alg, c);
    let p = d.partition_roots(&alg.frak_i());
    let mut body = decomposition_json(&d);
    body["partition"] = partition_json(alg, &p);
    let ok = d.verify_split_facts().is_empty() && d.is_direct_sum();
    Ok(Report::new("split", if ok { Outcome::Pass } else { Outcome::Fail }, body))
}

/// What `connect` should compute.
#[derive(Debug, Clone, Default)]
pub struct ConnectRequest {
    pub from: Option<String>,
    pub to: Option<String>,
    /// Graded connections through the given side instead of plain ones.
    pub neg_i: Option<Upsilon>,
}

pub fn connect_report<F: Field>(
    alg: &mut Superalgebra<F>,
    cartan: Option<&[Vec<F::Elem>]>,
    req: &ConnectRequest,
) -> Result<Report, ReportError> {
    let c = prepared!("connect", alg, cartan);
    let alg = &*alg;
    let d = split_or_report!("connect", alg, c);
    let field = alg.field();
    let classes: Vec<Value> = connection_classes(&d).iter().map(|c| Value::Array(c.iter().map(root_json).collect())).collect();
    let mut body = json!({ "classes": classes });
    let pair = match (&req.from, &req.to) {
        (Some(a), Some(b)) => Some((parse_slot(field, a)?, parse_slot(field, b)?)),
        (None, None) => None,
        _ => return Err(ReportError::Usage("--from and --to must be given together".into())),
    };
    let mut outcome = Outcome::Pass;
    match req.neg_i {
        None => {
            if let Some(((a, _), (b, _))) = pair {
                let res = match connected(&d, &a, &b) {
                    Ok(w) => w,
                    Err(e) => return Err(ReportError::Usage(e.to_string())),
                };
                body["witness"] = match res {
                    None => json!({ "from": root_json(&a), "to": root_json(&b), "connected": false }),
                    Some(w) => {
                        let valid = witness_is_valid(&d, &a, &b, &w);
                        if !valid {
                            outcome = Outcome::Fail;
                        }
                        json!({
                            "from": root_json(&a), "to": root_json(&b), "connected": true,
                            "chain": w.chain.iter().map(root_json).collect::<Vec<_>>(),
                            "sign": w.sign, "negated_target_not_root": w.negated_target_not_root, "valid": valid,
                        })
                    }
                };
            }
        }
        Some(u) => {
            let p = d.partition_roots(&alg.frak_i());
            body["partition"] = partition_json(alg, &p);
            match pair {
                Some(((a, pa), (b, pb))) => {
                    let (Some(pa), Some(pb)) = (pa, pb) else {
                        return Err(ReportError::Usage("graded connections need slots written as root@parity".into()));
                    };
                    let (sa, sb) = ((a, pa), (b, pb));
                    let w = neg_i_connected(&p, &sa, &sb, u).map_err(|e| ReportError::Usage(e.to_string()))?;
                    body["witness"] = json!({ "from": slot_json(&sa), "to": slot_json(&sb), "upsilon": u.to_string(), "witness": graded_witness_json(&w) });
                }
                None => match neg_i_connectivity(&p, u) {
                    Ok(s) => body["summary"] = summary_json(&s),
                    Err(e) => {
                        body["summary"] = json!({ "error": e.to_string() });
                        outcome = Outcome::Fail;
                    }
                },
            }
        }
    }
    Ok(Report::new("connect", outcome, body))
}

pub fn decompose_report<F: Field>(alg: &mut Superalgebra<F>, cartan: Option<&[Vec<F::Elem>]>) -> Result<Report, ReportError> {
    let c = prepared!("decompose", alg, cartan);
    let alg = &*alg;
    let d = split_or_report!("decompose", alg, c);
    Ok(match decompose(&d) {
        Err(e) => Report::new("decompose", Outcome::Fail, json!({ "error": { "kind": "Verification", "message": e.to_string() } })),
        Ok(dec) => {
            let classes: Vec<Value> = dec
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "roots": c.roots.iter().map(root_json).collect::<Vec<_>>(),
                        "h_class": subspace_json(alg, &c.h_class),
                        "v_class": subspace_json(alg, &c.v_class),
                        "ideal": subspace_json(alg, &c.i_class),
                    })
                })
                .collect();
            let body = json!({
                "classes": classes,
                "h_lambda": subspace_json(alg, &dec.h_lambda),
                "u": subspace_json(alg, &dec.u),
                "centerless_perfect_direct": match dec.centerless {
                    crate::connect::CenterlessCheck::Holds => json!("holds"),
                    crate::connect::CenterlessCheck::NotApplicable => json!("not applicable"),
                },
            });
            Report::new("decompose", Outcome::Pass, body)
        }
    })
}

fn root_mult_json<S: Scalar>(v: &RootMultViolation<S>) -> Value {
    match v {
        RootMultViolation::NotISum { alpha, beta } => json!({ "condition": 1, "alpha": slot_json(alpha), "beta": slot_json(beta) }),
        RootMultViolation::ISum { alpha, gamma } => json!({ "condition": 2, "alpha": slot_json(alpha), "gamma": slot_json(gamma) }),
    }
}

fn hypotheses_json<S: Scalar>(h: &HypothesisReport<S>) -> Value {
    json!({
        "maximal_length": h.maximal_length,
        "H_equals_H_Lambda": h.h_equals_h_lambda,
        "center_zero": h.center_zero,
        "lie_annihilator_zero": h.lie_annihilator_zero,
        "perfect": h.perfect,
        "root_multiplicative": h.root_multiplicative,
        "root_mult_violations": h.root_mult_violations.iter().map(root_mult_json).collect::<Vec<_>>(),
        "card_notI": h.card_not_i,
        "card_I": h.card_i,
        "eq11_holds": h.eq11_holds,
    })
}

fn certificate_json<F: Field>(alg: &Superalgebra<F>, c: &Certificate<F::Elem>) -> Value {
    match c {
        Certificate::Connectivity { i_connected, not_i_connected, failure } => json!({
            "kind": "connectivity",
            "i_connected": i_connected,
            "not_i_connected": not_i_connected,
            "failure": failure.as_ref().map(|(u, a, b)| json!({ "upsilon": u.to_string(), "from": slot_json(a), "to": slot_json(b) })),
        }),
        Certificate::IdealList(v) => {
            json!({ "kind": "ideal_list", "ideals": v.iter().map(|w| subspace_json(alg, w)).collect::<Vec<_>>() })
        }
        Certificate::Ideal(w) => json!({ "kind": "ideal", "ideal": subspace_json(alg, w) }),
        Certificate::ZeroProduct => json!({ "kind": "zero_product" }),
        Certificate::FailedHypothesis(h) => json!({ "kind": "failed_hypothesis", "hypothesis": h.to_string() }),
        Certificate::IncompleteLattice => json!({ "kind": "incomplete_lattice" }),
    }
}

fn verdict_json<F: Field>(alg: &Superalgebra<F>, v: &SimplicityVerdict<F::Elem>) -> Value {
    json!({ "verdict": v.verdict.to_string(), "mode": v.mode.to_string(), "certificate": certificate_json(alg, &v.certificate) })
}

fn oracle_json<F: Field>(alg: &Superalgebra<F>, o: &OracleRun<F::Elem>) -> Value {
    let mut v = verdict_json(alg, &o.verdict);
    v["candidates"] = json!(o.candidates);
    v["lattice_complete"] = json!(o.lattice_complete);
    v["h_lattice_size"] = json!(o.lattice.len());
    v["ideals"] = Value::Array(o.ideals.iter().map(|w| subspace_json(alg, w)).collect());
    v
}

fn classification_json<F: Field>(alg: &Superalgebra<F>, c: &ClassificationResult<F::Elem>) -> Value {
    json!({
        "applicable": true,
        "case": c.case_tag.to_string(),
        "I": c.i.as_ref().map(|w| subspace_json(alg, w)),
        "K": c.k.as_ref().map(|w| subspace_json(alg, w)),
        "char": c.char_k,
        "parameters": c.parameters,
        "diagnostics": c.diagnostics,
    })
}

/// Options for the full pipeline.
#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub oracle_bound: u64,
    pub expect_simple: bool,
}

/// Hypotheses, both verdicts, lemma checks and classification.
pub fn analyze_report<F: Field>(
    alg: &mut Superalgebra<F>,
    cartan: Option<&[Vec<F::Elem>]>,
    opts: AnalyzeOptions,
) -> Result<Report, ReportError> {
    let c = prepared!("analyze", alg, cartan);
    let alg = &*alg;
    let d = split_or_report!("analyze", alg, c);
    let p = d.partition_roots(&alg.frak_i());
    let hyp = hypothesis_report(&d, &p);
    let mut body = json!({
        "split": decomposition_json(&d),
        "partition": partition_json(alg, &p),
        "hypotheses": hypotheses_json(&hyp),
        "notes": [
            "the ideal list {0, frak_i, L} is read as a set, so frak_i = 0 or frak_i = L leaves two ideals",
            "the oracle H lattice is exhaustive only when dim H <= 1",
        ],
    });
    let mut outcome = Outcome::Pass;
    let summaries = match crate::connect::neg_i_connectivity_summary(&p) {
        Ok(s) => Some(s),
        Err(e) => {
            body["connectivity"] = json!({ "error": e.to_string() });
            None
        }
    };
    let mut final_verdict = None;
    if let Some(summaries) = &summaries {
        body["connectivity"] = json!({ "I": summary_json(&summaries[0]), "notI": summary_json(&summaries[1]) });
        let theorem = simplicity_theorem_mode(&hyp, summaries);
        body["theorem"] = verdict_json(alg, &theorem);
        match simplicity_oracle(&d, &p, opts.oracle_bound) {
            Ok(oracle) => {
                body["oracle"] = oracle_json(alg, &oracle);
                let lemmas = lemma_checks(&d, &p, &hyp, summaries, &oracle.ideals);
                body["lemma_violations"] = Value::Array(lemmas.iter().map(|l| json!(format!("{l:?}"))).collect());
                if !lemmas.is_empty() {
                    outcome = Outcome::Fail;
                }
                match combine(&theorem, &oracle.verdict) {
                    Some(v) => {
                        body["verdict"] = verdict_json(alg, &v);
                        final_verdict = Some(v.verdict);
                    }
                    None => {
                        body["verdict"] = json!({ "verdict": "Disagreement" });
                        outcome = Outcome::Fail;
                    }
                }
                body["classification"] = match classify_small(&d, &p, &hyp, summaries, &oracle) {
                    Ok(c) => classification_json(alg, &c),
                    Err(e) => json!({ "applicable": false, "reason": e.to_string() }),
                };
            }
            Err(e) => {
                body["oracle"] = json!({ "error": e.to_string() });
                body["verdict"] = verdict_json(alg, &theorem);
                final_verdict = Some(theorem.verdict);
            }
        }
    }
    if opts.expect_simple && final_verdict != Some(crate::analyze::Verdict::Simple) {
        outcome = Outcome::Fail;
    }
    Ok(Report::new("analyze", outcome, body))
}
