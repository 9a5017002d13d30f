//! Structure analysis of maximal-length splits: the hypotheses of the
//! simplicity criterion, theorem-mode and oracle verdicts, lemma-level
//! cross checks and the small-root-system classification.

use std::fmt;

use thiserror::Error;

use crate::connect::{ConnectError, ConnectivitySummary, Slot};
use crate::exactlin::{Field, Scalar};
use crate::splitdec::{RootPartition, SplitDecomposition, Upsilon};
use crate::superalg::{GradedSubspace, Parity};

mod classify;
mod oracle;

pub use classify::{classify_small, match_templates, CaseTag, ClassificationResult};
pub use oracle::{lemma_checks, simplicity_oracle, LemmaViolation, OracleRun, DEFAULT_ORACLE_BOUND};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("the split is not of maximal length")]
    NotMaximalLength,
    #[error("the oracle would test {candidates} candidates, above the bound {bound}")]
    BoundExceeded { candidates: u128, bound: u64 },
    #[error("classification precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Connect(#[from] ConnectError),
}

/// A failure of root-multiplicativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootMultViolation<S: Scalar> {
    /// `α, β ∈ Λ^¬𝔦` with `α + β ∈ Λ` but `[L_{α,i}, L_{β,j}] = 0`.
    NotISum { alpha: Slot<S>, beta: Slot<S> },
    /// `α ∈ Λ^¬𝔦`, `γ ∈ Λ^𝔦` with `α + γ ∈ Λ^𝔦` but `[L_{γ,j}, L_{α,i}] = 0`.
    ISum { alpha: Slot<S>, gamma: Slot<S> },
}

impl<S: Scalar> fmt::Display for RootMultViolation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootMultViolation::NotISum { alpha, beta } => {
                write!(f, "[L({},{}), L({},{})] = 0 with both roots in notI", alpha.0, alpha.1, beta.0, beta.1)
            }
            RootMultViolation::ISum { alpha, gamma } => {
                write!(f, "[L({},{}), L({},{})] = 0 with the sum in I", gamma.0, gamma.1, alpha.0, alpha.1)
            }
        }
    }
}

pub(crate) fn graded_slot<F: Field>(d: &SplitDecomposition<'_, F>, s: &Slot<F::Elem>) -> GradedSubspace<F::Elem> {
    let n = d.algebra().dim();
    let sp = d.slot(&s.0, s.1);
    match s.1 {
        Parity::Even => GradedSubspace::new(sp, crate::exactlin::Subspace::zero(n)),
        Parity::Odd => GradedSubspace::new(crate::exactlin::Subspace::zero(n), sp),
    }
}

fn brackets_vanish<F: Field>(d: &SplitDecomposition<'_, F>, left: &Slot<F::Elem>, right: &Slot<F::Elem>) -> bool {
    d.algebra().product_space(&graded_slot(d, left), &graded_slot(d, right)).is_zero()
}

/// Both root-multiplicativity conditions, scanned over all graded slots.
/// The second condition keeps the displayed order, `𝔦` factor on the left.
pub fn root_multiplicative<F: Field>(d: &SplitDecomposition<'_, F>, p: &RootPartition<F::Elem>) -> Vec<RootMultViolation<F::Elem>> {
    let not_i = p.slots(Upsilon::NotI);
    let i_slots = p.slots(Upsilon::I);
    let i_union = p.union(Upsilon::I);
    let mut out = Vec::new();
    for a in &not_i {
        for b in &not_i {
            if d.is_root(&a.0.add(&b.0)) && brackets_vanish(d, a, b) {
                out.push(RootMultViolation::NotISum { alpha: a.clone(), beta: b.clone() });
            }
        }
    }
    for a in &not_i {
        for g in &i_slots {
            if i_union.binary_search(&a.0.add(&g.0)).is_ok() && brackets_vanish(d, g, a) {
                out.push(RootMultViolation::ISum { alpha: a.clone(), gamma: g.clone() });
            }
        }
    }
    out
}

/// Elements killing every `L_α` with `α ∉ Λ^𝔦_0 ∪ Λ^𝔦_1`, from both sides.
pub fn lie_annihilator<F: Field>(d: &SplitDecomposition<'_, F>, p: &RootPartition<F::Elem>) -> GradedSubspace<F::Elem> {
    let i_union = p.union(Upsilon::I);
    let targets: Vec<Vec<F::Elem>> = d
        .root_spaces()
        .iter()
        .filter(|rs| i_union.binary_search(&rs.root).is_err())
        .flat_map(|rs| rs.space.basis_vectors())
        .collect();
    d.algebra().annihilator_of(&targets)
}

/// `H_Λ = Σ_{β∈Λ} [L_β, L_{-β}]`.
pub fn h_lambda<F: Field>(d: &SplitDecomposition<'_, F>) -> GradedSubspace<F::Elem> {
    crate::connect::bracket_pairs(d, &d.roots())
}

/// `Σ [L_{-α,j}, L_{α,i}]` over `α ∈ Λ^¬𝔦_i` and both `j`; its even and odd
/// parts are the two displayed sums for `H_0` and `H_1`.
pub fn not_i_bracket_sum<F: Field>(d: &SplitDecomposition<'_, F>, p: &RootPartition<F::Elem>) -> GradedSubspace<F::Elem> {
    let alg = d.algebra();
    let mut acc = GradedSubspace::zero(alg.dim());
    for a in p.slots(Upsilon::NotI) {
        for j in Parity::BOTH {
            let prod = alg.product_space(&graded_slot(d, &(a.0.neg(), j)), &graded_slot(d, &a));
            acc = acc.sum(&prod).expect("same ambient");
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport<S: Scalar> {
    pub maximal_length: bool,
    pub h_equals_h_lambda: bool,
    pub center_zero: bool,
    pub lie_annihilator_zero: bool,
    pub perfect: bool,
    pub root_multiplicative: bool,
    pub root_mult_violations: Vec<RootMultViolation<S>>,
    pub card_not_i: usize,
    pub card_i: usize,
    /// `H` is spanned by the brackets over `Λ^¬𝔦` alone. False whenever
    /// `H != H_Λ`.
    pub eq11_holds: bool,
}

pub fn hypothesis_report<F: Field>(d: &SplitDecomposition<'_, F>, p: &RootPartition<F::Elem>) -> HypothesisReport<F::Elem> {
    let alg = d.algebra();
    let h_equals_h_lambda = &h_lambda(d) == d.h();
    let root_mult_violations = root_multiplicative(d, p);
    HypothesisReport {
        maximal_length: p.maximal_length,
        h_equals_h_lambda,
        center_zero: alg.center().is_zero(),
        lie_annihilator_zero: lie_annihilator(d, p).is_zero(),
        perfect: alg.derived().dim() == alg.dim(),
        root_multiplicative: root_mult_violations.is_empty(),
        root_mult_violations,
        card_not_i: p.card(Upsilon::NotI),
        card_i: p.card(Upsilon::I),
        eq11_holds: h_equals_h_lambda && &not_i_bracket_sum(d, p) == d.h(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Simple,
    NotSimple,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Simple => "Simple",
            Verdict::NotSimple => "NotSimple",
            Verdict::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Theorem,
    Oracle,
    Both,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Theorem => "TheoremMode",
            Mode::Oracle => "OracleMode",
            Mode::Both => "Both",
        };
        f.write_str(s)
    }
}

/// A hypothesis of the simplicity criterion that did not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    MaximalLength,
    HEqualsHLambda,
    LieAnnihilatorZero,
    RootMultiplicative,
    CardNotI(usize),
    CardI(usize),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::MaximalLength => write!(f, "maximal_length"),
            Hypothesis::HEqualsHLambda => write!(f, "H = H_Lambda"),
            Hypothesis::LieAnnihilatorZero => write!(f, "Z_Lie = 0"),
            Hypothesis::RootMultiplicative => write!(f, "root_multiplicative"),
            Hypothesis::CardNotI(c) => write!(f, "card_notI = {c} <= 2"),
            Hypothesis::CardI(c) => write!(f, "card_I = {c} <= 2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<S: Scalar> {
    /// Theorem mode: both connectivity summaries, with the first
    /// disconnected pair when there is one.
    Connectivity { i_connected: bool, not_i_connected: bool, failure: Option<(Upsilon, Slot<S>, Slot<S>)> },
    /// Oracle: every graded ideal, canonically sorted.
    IdealList(Vec<GradedSubspace<S>>),
    /// A graded ideal outside `{0, 𝔦, L}`.
    Ideal(GradedSubspace<S>),
    /// `[L, L] = 0` and no other ideal exists.
    ZeroProduct,
    FailedHypothesis(Hypothesis),
    /// No extra ideal among the candidates, but the `H` lattice is not
    /// exhaustive.
    IncompleteLattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict<S: Scalar> {
    pub verdict: Verdict,
    pub mode: Mode,
    pub certificate: Certificate<S>,
}

/// The hypothesis check behind theorem mode; the first failure in a fixed
/// order, or `None` when the criterion applies.
pub fn first_failed_hypothesis<S: Scalar>(hyp: &HypothesisReport<S>) -> Option<Hypothesis> {
    if !hyp.maximal_length {
        Some(Hypothesis::MaximalLength)
    } else if !hyp.h_equals_h_lambda {
        Some(Hypothesis::HEqualsHLambda)
    } else if !hyp.lie_annihilator_zero {
        Some(Hypothesis::LieAnnihilatorZero)
    } else if !hyp.root_multiplicative {
        Some(Hypothesis::RootMultiplicative)
    } else if hyp.card_not_i <= 2 {
        Some(Hypothesis::CardNotI(hyp.card_not_i))
    } else if hyp.card_i <= 2 {
        Some(Hypothesis::CardI(hyp.card_i))
    } else {
        None
    }
}

/// Simple iff both root sets are fully connected, when the criterion's
/// hypotheses hold.
pub fn simplicity_theorem_mode<S: Scalar>(hyp: &HypothesisReport<S>, summaries: &[ConnectivitySummary<S>; 2]) -> SimplicityVerdict<S> {
    if let Some(h) = first_failed_hypothesis(hyp) {
        return SimplicityVerdict { verdict: Verdict::Undetermined, mode: Mode::Theorem, certificate: Certificate::FailedHypothesis(h) };
    }
    let failure = summaries.iter().find_map(|s| s.first_failure.clone().map(|(a, b)| (s.upsilon, a, b)));
    let conn = |u: Upsilon| summaries.iter().filter(|s| s.upsilon == u).all(|s| s.all_connected);
    let verdict = if failure.is_none() { Verdict::Simple } else { Verdict::NotSimple };
    SimplicityVerdict {
        verdict,
        mode: Mode::Theorem,
        certificate: Certificate::Connectivity { i_connected: conn(Upsilon::I), not_i_connected: conn(Upsilon::NotI), failure },
    }
}

/// Merges the two modes: the oracle's certificate wins when it is
/// determinate, tagged `Both` when theorem mode agrees. `None` on a
/// determinate disagreement.
pub fn combine<S: Scalar>(theorem: &SimplicityVerdict<S>, oracle: &SimplicityVerdict<S>) -> Option<SimplicityVerdict<S>> {
    match (theorem.verdict, oracle.verdict) {
        (_, Verdict::Undetermined) => Some(theorem.clone()),
        (Verdict::Undetermined, _) => Some(oracle.clone()),
        (t, o) if t == o => Some(SimplicityVerdict { mode: Mode::Both, ..oracle.clone() }),
        _ => None,
    }
}
