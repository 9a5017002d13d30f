//! Exhaustive search for graded ideals of a maximal-length split.
//!
//! Every graded ideal is aligned with the root decomposition, so outside
//! `H` it is a sum of whole root slots. The `H` part is drawn from the
//! lattice generated by the lines `[L_{β,i}, L_{-β,j}]`, together with `0`
//! and `H`. That lattice contains every subspace of `H` only when
//! `dim H <= 1`; beyond that the search can still prove non-simplicity but
//! never simplicity.

use std::collections::BTreeSet;

use crate::connect::{ConnectivitySummary, Slot};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::splitdec::{RootPartition, SplitDecomposition, Upsilon};
use crate::superalg::{GradedSubspace, Parity};

use super::{graded_slot, lie_annihilator, AnalyzeError, Certificate, HypothesisReport, Mode, SimplicityVerdict, Verdict};

pub const DEFAULT_ORACLE_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRun<S: Scalar> {
    pub verdict: SimplicityVerdict<S>,
    /// All graded ideals found, sorted by dimension and then basis.
    pub ideals: Vec<GradedSubspace<S>>,
    /// Ideals other than `0`, `𝔦` and `L`, in the same order.
    pub extra: Vec<GradedSubspace<S>>,
    pub candidates: u64,
    pub lattice: Vec<GradedSubspace<S>>,
    pub lattice_complete: bool,
}

struct Tables<S: Scalar> {
    slots: Vec<Slot<S>>,
    /// Slots hit by products of slot `s` with the basis.
    need: Vec<u64>,
    /// Slots hit by products of lattice element `l` with the basis.
    lattice_need: Vec<u64>,
    /// Whether the `H` components produced by slot `s` lie in element `l`.
    contains: Vec<Vec<bool>>,
}

/// The `H` lattice generated by the bracket lines.
fn h_lattice<F: Field>(d: &SplitDecomposition<'_, F>) -> Vec<GradedSubspace<F::Elem>> {
    let alg = d.algebra();
    let n = alg.dim();
    let mut lines: BTreeSet<GradedSubspace<F::Elem>> = BTreeSet::new();
    for r in d.roots() {
        if !d.is_root(&r.neg()) {
            continue;
        }
        for i in Parity::BOTH {
            for j in Parity::BOTH {
                let prod = alg.product_space(&graded_slot(d, &(r.clone(), i)), &graded_slot(d, &(r.neg(), j)));
                for v in prod.basis_vectors() {
                    lines.insert(alg.graded_span([v]));
                }
            }
        }
    }
    let mut lattice: BTreeSet<GradedSubspace<F::Elem>> = BTreeSet::new();
    lattice.insert(GradedSubspace::zero(n));
    for line in &lines {
        let grown: Vec<_> = lattice.iter().map(|s| s.sum(line).expect("same ambient")).collect();
        lattice.extend(grown);
    }
    lattice.insert(d.h().clone());
    let mut v: Vec<_> = lattice.into_iter().collect();
    v.sort_by_key(|s| s.canonical_key());
    v
}

fn build_tables<F: Field>(d: &SplitDecomposition<'_, F>, lattice: &[GradedSubspace<F::Elem>]) -> Tables<F::Elem> {
    let alg = d.algebra();
    let field = alg.field();
    let n = alg.dim();
    let mut slots = Vec::new();
    let mut rows = d.h().basis_vectors();
    let hdim = rows.len();
    for rs in d.root_spaces() {
        for p in Parity::BOTH {
            if let Some(v) = rs.slot(p).basis_vectors().into_iter().next() {
                slots.push((rs.root.clone(), p));
                rows.push(v);
            }
        }
    }
    // Row r of `basis` is the r-th adapted basis vector; coordinates of `v`
    // are `(basis^T)^{-1} v`.
    let basis = Matrix::from_rows_with_cols(rows.clone(), n);
    let to_coords = basis.transpose().inverse(field).expect("split decomposition is direct");
    let split = |v: &[F::Elem]| -> (u64, Vec<F::Elem>) {
        let c = to_coords.mul_vec(field, v);
        let mut mask = 0u64;
        let mut hpart = alg.zero_vector();
        for (r, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if r < hdim {
                for (t, y) in rows[r].iter().enumerate() {
                    hpart[t] = hpart[t].add(&x.mul(y));
                }
            } else {
                mask |= 1 << (r - hdim);
            }
        }
        (mask, hpart)
    };
    let products = |x: &[F::Elem]| -> Vec<Vec<F::Elem>> {
        (0..n).flat_map(|k| {
            let b = alg.basis_vector(k);
            [alg.mul(x, &b), alg.mul(&b, x)]
        })
        .collect()
    };

    let mut need = Vec::with_capacity(slots.len());
    let mut contains = Vec::with_capacity(slots.len());
    for v in &rows[hdim..] {
        let mut mask = 0u64;
        let mut hparts = Vec::new();
        for prod in products(v) {
            let (m, h) = split(&prod);
            mask |= m;
            if h.iter().any(|c| !c.is_zero()) {
                hparts.push(h);
            }
        }
        need.push(mask);
        contains.push(lattice.iter().map(|l| hparts.iter().all(|h| alg.graded_contains(l, h))).collect());
    }
    let lattice_need = lattice
        .iter()
        .map(|l| {
            let mut mask = 0u64;
            for x in l.basis_vectors() {
                for prod in products(&x) {
                    // H is abelian and acts diagonally, so no H component
                    // appears here.
                    mask |= split(&prod).0;
                }
            }
            mask
        })
        .collect();
    Tables { slots, need, lattice_need, contains }
}

/// Tests every candidate `W_H ⊕ (sum of chosen slots)` for the two-sided
/// ideal property.
pub fn simplicity_oracle<F: Field>(
    d: &SplitDecomposition<'_, F>,
    p: &RootPartition<F::Elem>,
    bound: u64,
) -> Result<OracleRun<F::Elem>, AnalyzeError> {
    if !p.maximal_length {
        return Err(AnalyzeError::NotMaximalLength);
    }
    let alg = d.algebra();
    let n = alg.dim();
    let lattice = h_lattice(d);
    let slot_count: usize = d.root_spaces().iter().map(|r| r.space.dim()).sum();
    let candidates = if slot_count >= 64 { u128::MAX } else { (1u128 << slot_count) * lattice.len() as u128 };
    if candidates > bound as u128 {
        return Err(AnalyzeError::BoundExceeded { candidates, bound });
    }
    let t = build_tables(d, &lattice);
    let m = t.slots.len();

    let mut found = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let mut closed = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            closed |= t.need[s];
            bits &= bits - 1;
        }
        if closed & !mask != 0 {
            continue;
        }
        for (l, ln) in t.lattice_need.iter().enumerate() {
            if ln & !mask != 0 {
                continue;
            }
            let mut ok = true;
            let mut bits = mask;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                if !t.contains[s][l] {
                    ok = false;
                    break;
                }
                bits &= bits - 1;
            }
            if ok {
                found.push((mask, l));
            }
        }
    }

    let mut ideals: Vec<GradedSubspace<F::Elem>> = found
        .into_iter()
        .map(|(mask, l)| {
            let vecs = (0..m).filter(|s| mask >> s & 1 == 1).flat_map(|s| d.slot(&t.slots[s].0, t.slots[s].1).basis_vectors());
            lattice[l].sum(&alg.graded_span(vecs)).expect("same ambient")
        })
        .collect();
    ideals.sort_by_key(|s| s.canonical_key());
    ideals.dedup();

    let zero = GradedSubspace::zero(n);
    let whole = alg.whole();
    let extra: Vec<_> = ideals.iter().filter(|w| **w != zero && **w != p.frak_i && **w != whole).cloned().collect();
    let lattice_complete = d.h().dim() <= 1;
    let h_plus_i = d.h().sum(&p.frak_i).expect("same ambient");
    let (verdict, certificate) = if !extra.is_empty() {
        let pick = extra.iter().find(|w| !h_plus_i.contains(w).expect("same ambient")).unwrap_or(&extra[0]);
        (Verdict::NotSimple, Certificate::Ideal(pick.clone()))
    } else if alg.derived().is_zero() {
        (Verdict::NotSimple, Certificate::ZeroProduct)
    } else if lattice_complete {
        (Verdict::Simple, Certificate::IdealList(ideals.clone()))
    } else {
        (Verdict::Undetermined, Certificate::IncompleteLattice)
    };
    Ok(OracleRun {
        verdict: SimplicityVerdict { verdict, mode: Mode::Oracle, certificate },
        ideals,
        extra,
        candidates: candidates as u64,
        lattice,
        lattice_complete,
    })
}

/// A failed lemma-level check on an enumerated ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaViolation<S: Scalar> {
    /// `dim(I ∩ H) + Σ dim(I ∩ L_{α,i}) != dim I`.
    NotRootAligned(GradedSubspace<S>),
    /// An ideal not inside `H + 𝔦` that is not the whole algebra.
    OutsideButProper(GradedSubspace<S>),
    /// A nonzero ideal inside `𝔦` that is not `𝔦`.
    InsideButProper(GradedSubspace<S>),
    /// An ideal inside `H + 𝔦` whose `H` part is not in `Z_Lie`.
    HPartNotInAnnihilator(GradedSubspace<S>),
}

/// Cross checks on the ideals found by the oracle. The two implications
/// about `I ⊄ H + 𝔦` and `I ⊆ 𝔦` are only tested when their hypotheses
/// hold.
pub fn lemma_checks<F: Field>(
    d: &SplitDecomposition<'_, F>,
    p: &RootPartition<F::Elem>,
    hyp: &HypothesisReport<F::Elem>,
    summaries: &[ConnectivitySummary<F::Elem>; 2],
    ideals: &[GradedSubspace<F::Elem>],
) -> Vec<LemmaViolation<F::Elem>> {
    let alg = d.algebra();
    let field = alg.field();
    let connected = |u: Upsilon| summaries.iter().filter(|s| s.upsilon == u).all(|s| s.all_connected);
    let outside_applies = hyp.h_equals_h_lambda && hyp.root_multiplicative && connected(Upsilon::NotI) && hyp.card_not_i > 2;
    let inside_applies =
        hyp.h_equals_h_lambda && hyp.lie_annihilator_zero && hyp.root_multiplicative && connected(Upsilon::I) && hyp.card_i > 2;
    let z_lie = lie_annihilator(d, p);
    let h_plus_i = d.h().sum(&p.frak_i).expect("same ambient");
    let whole = alg.whole();
    let mut out = Vec::new();
    for w in ideals {
        let meet = |s: &GradedSubspace<F::Elem>| w.intersect(field, s).expect("same ambient");
        let h_part = meet(d.h());
        let mut pieces = h_part.dim();
        for rs in d.root_spaces() {
            pieces += meet(&rs.space).dim();
        }
        if pieces != w.dim() {
            out.push(LemmaViolation::NotRootAligned(w.clone()));
        }
        let inside_h_i = h_plus_i.contains(w).expect("same ambient");
        if outside_applies && !inside_h_i && *w != whole {
            out.push(LemmaViolation::OutsideButProper(w.clone()));
        }
        if inside_applies && !w.is_zero() && p.frak_i.contains(w).expect("same ambient") && *w != p.frak_i {
            out.push(LemmaViolation::InsideButProper(w.clone()));
        }
        if inside_h_i && !z_lie.contains(&h_part).expect("same ambient") {
            out.push(LemmaViolation::HPartNotInAnnihilator(w.clone()));
        }
    }
    out
}
