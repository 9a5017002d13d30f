//! Matching non-simple small root systems against the decomposition
//! templates `L = (...) ⊕ I ⊕ K`.
//!
//! Templates are read literally. An instance that fits none of them is
//! reported as unclassified together with the ideals that were found.

use std::fmt;

use crate::connect::ConnectivitySummary;
use crate::exactlin::{Field, Scalar, Subspace};
use crate::splitdec::{Root, RootPartition, SplitDecomposition, Upsilon};
use crate::superalg::{GradedSubspace, Parity};

use super::{graded_slot, AnalyzeError, HypothesisReport, OracleRun, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Case1Simple,
    Case2i,
    Case2ii,
    Case3,
    Case4i,
    Case4ii,
    Case4iii,
    Unclassified,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Case1Simple => "Case1_Simple",
            CaseTag::Case2i => "Case2i",
            CaseTag::Case2ii => "Case2ii",
            CaseTag::Case3 => "Case3",
            CaseTag::Case4i => "Case4i",
            CaseTag::Case4ii => "Case4ii",
            CaseTag::Case4iii => "Case4iii",
            CaseTag::Unclassified => "Unclassified",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult<S: Scalar> {
    pub case_tag: CaseTag,
    pub i: Option<GradedSubspace<S>>,
    pub k: Option<GradedSubspace<S>>,
    pub char_k: u64,
    /// Root and parities the template was instantiated with.
    pub parameters: String,
    pub diagnostics: Vec<String>,
}

/// A successful template instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateMatch<S: Scalar> {
    pub case_tag: CaseTag,
    pub i: GradedSubspace<S>,
    pub k: GradedSubspace<S>,
    pub parameters: String,
}

struct Ctx<'d, 'a, F: Field> {
    d: &'d SplitDecomposition<'a, F>,
    p: &'d RootPartition<F::Elem>,
    n: usize,
}

impl<F: Field> Ctx<'_, '_, F> {
    fn gs(&self, r: &Root<F::Elem>, par: Parity) -> GradedSubspace<F::Elem> {
        graded_slot(self.d, &(r.clone(), par))
    }

    fn zero(&self) -> GradedSubspace<F::Elem> {
        GradedSubspace::zero(self.n)
    }

    fn sum<'x>(&self, parts: impl IntoIterator<Item = &'x GradedSubspace<F::Elem>>) -> GradedSubspace<F::Elem>
    where
        F::Elem: 'x,
    {
        parts.into_iter().fold(self.zero(), |acc, s| acc.sum(s).expect("same ambient"))
    }

    fn bracket(&self, a: &GradedSubspace<F::Elem>, b: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
        self.d.algebra().product_space(a, b)
    }

    fn meet(&self, a: &GradedSubspace<F::Elem>, b: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
        a.intersect(self.d.algebra().field(), b).expect("same ambient")
    }

    fn h_part(&self, par: Parity) -> GradedSubspace<F::Elem> {
        let h = self.d.h().part(par).clone();
        match par {
            Parity::Even => GradedSubspace::new(h, Subspace::zero(self.n)),
            Parity::Odd => GradedSubspace::new(Subspace::zero(self.n), h),
        }
    }

    /// `𝔦` slots inside `ideal` and outside it.
    fn i_slots_split(&self, ideal: &GradedSubspace<F::Elem>) -> (GradedSubspace<F::Elem>, GradedSubspace<F::Elem>) {
        let mut inside = self.zero();
        let mut outside = self.zero();
        for s in self.p.slots(Upsilon::I) {
            let g = graded_slot(self.d, &s);
            if ideal.contains(&g).expect("same ambient") {
                inside = inside.sum(&g).expect("same ambient");
            } else {
                outside = outside.sum(&g).expect("same ambient");
            }
        }
        (inside, outside)
    }

    /// The pieces span `L` and their dimensions add up to `dim L`.
    fn is_direct_whole(&self, parts: &[&GradedSubspace<F::Elem>]) -> bool {
        let dims: usize = parts.iter().map(|s| s.dim()).sum();
        dims == self.n && self.sum(parts.iter().copied()).dim() == self.n
    }

    fn structural(&self, ideal: &GradedSubspace<F::Elem>, i_t: &GradedSubspace<F::Elem>, k_t: &GradedSubspace<F::Elem>) -> bool {
        let alg = self.d.algebra();
        ideal == i_t && alg.is_ideal(i_t) && alg.is_subalgebra(k_t)
    }

    fn abelian(&self, k: &GradedSubspace<F::Elem>) -> bool {
        self.bracket(k, k).is_zero()
    }
}

/// Tries every template on every extra ideal, in order, and returns the
/// first instance that re-validates.
pub fn match_templates<F: Field>(
    d: &SplitDecomposition<'_, F>,
    p: &RootPartition<F::Elem>,
    extra: &[GradedSubspace<F::Elem>],
) -> Option<TemplateMatch<F::Elem>> {
    let c = Ctx { d, p, n: d.algebra().dim() };
    let char_two = d.algebra().field().characteristic() == 2;
    let roots = d.roots();
    let frak_i = &p.frak_i;
    let h = d.h();
    let not_i_part = c.sum(p.slots(Upsilon::NotI).iter().map(|s| graded_slot(d, s)).collect::<Vec<_>>().iter());
    let hit = |case_tag, i: &GradedSubspace<F::Elem>, k: GradedSubspace<F::Elem>, parameters: String| {
        Some(TemplateMatch { case_tag, i: i.clone(), k, parameters })
    };

    for ideal in extra {
        let (i_in, i_out) = c.i_slots_split(ideal);
        if !char_two && !ideal.is_zero() && frak_i.contains(ideal).expect("same ambient") && ideal != frak_i {
            // Case 2: 𝔦 = I ⊕ K and L = H ⊕ (notI slots) ⊕ I ⊕ K.
            let shape_ok = |i_t: &GradedSubspace<F::Elem>, k_t: &GradedSubspace<F::Elem>| {
                !k_t.is_zero()
                    && c.abelian(k_t)
                    && c.structural(ideal, i_t, k_t)
                    && i_t.dim() + k_t.dim() == frak_i.dim()
                    && &i_t.sum(k_t).expect("same ambient") == frak_i
                    && c.is_direct_whole(&[h, &not_i_part, i_t, k_t])
            };
            for g in &roots {
                for i in Parity::BOTH {
                    for j in Parity::BOTH {
                        let (a, b) = (c.gs(g, i), c.gs(&g.neg(), j));
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        let i_t = c.sum([&a, &b]);
                        let k_t = c.sum([&c.gs(g, i.flip()), &c.gs(&g.neg(), j.flip())]);
                        if i_t.dim() == 2 && shape_ok(&i_t, &k_t) {
                            return hit(CaseTag::Case2i, ideal, k_t, format!("gamma = {g}, i = {i}, j = {j}"));
                        }
                    }
                }
            }
            for g in &roots {
                for i in Parity::BOTH {
                    let parts = [c.gs(g, Parity::Even), c.gs(g, Parity::Odd), c.gs(&g.neg(), i)];
                    if parts.iter().any(|s| s.is_zero()) {
                        continue;
                    }
                    let i_t = c.sum(parts.iter());
                    let k_t = c.gs(&g.neg(), i.flip());
                    if i_t.dim() == 3 && k_t.dim() == 1 && shape_ok(&i_t, &k_t) {
                        return hit(CaseTag::Case2ii, ideal, k_t, format!("gamma = {g}, i = {i}"));
                    }
                }
            }
        }

        if char_two && ideal != frak_i {
            // Case 3: L = I ⊕ K ⊕ (𝔦 slots outside I).
            for a in &roots {
                for i in Parity::BOTH {
                    let (la, lb) = (c.gs(a, i), c.gs(a, i.flip()));
                    if la.is_zero() || lb.is_zero() {
                        continue;
                    }
                    let mixed = c.sum([&c.bracket(&la, &lb), &c.bracket(&lb, &la)]);
                    let i_t = c.sum([&mixed, &la, &i_in]);
                    let k_t = c.sum([&c.bracket(&lb, &lb), &lb]);
                    if k_t.dim() == 2 && c.structural(ideal, &i_t, &k_t) && c.is_direct_whole(&[&i_t, &k_t, &i_out]) {
                        return hit(CaseTag::Case3, ideal, k_t, format!("alpha = {a}, i = {i}"));
                    }
                }
            }
        }

        if !char_two {
            // Case 4: L = I ⊕ K.
            let (h0, h1) = (c.h_part(Parity::Even), c.h_part(Parity::Odd));
            let (ih0, ih1) = (c.meet(ideal, &h0), c.meet(ideal, &h1));
            for a in &roots {
                let na = a.neg();
                for i in Parity::BOTH {
                    let j = i.flip();
                    let (a_i, a_j, na_i, na_j) = (c.gs(a, i), c.gs(a, j), c.gs(&na, i), c.gs(&na, j));
                    let accept = |i_t: &GradedSubspace<F::Elem>, k_t: &GradedSubspace<F::Elem>| {
                        c.structural(ideal, i_t, k_t) && c.is_direct_whole(&[i_t, k_t])
                    };

                    if c.sum([&a_i, &a_j, &na_j]).dim() == 3 {
                        let i_t = c.sum([&h1, &a_i, &i_in]);
                        let k_t = c.sum([&h0, &a_j, &na_j, &i_out]);
                        if accept(&i_t, &k_t) {
                            return hit(CaseTag::Case4i, ideal, k_t, format!("alpha = {a}, i = {i}"));
                        }
                    }

                    if c.sum([&a_i, &na_i, &a_j, &na_j]).dim() == 4 {
                        let mut k0 = c.zero();
                        for (x, y) in [(&a_j, &na_j), (&na_j, &a_j)] {
                            let br = c.bracket(x, y);
                            if c.meet(&br, ideal).is_zero() {
                                k0 = k0.sum(&br).expect("same ambient");
                            }
                        }
                        let i_t = c.sum([&ih0, &h1, &a_i, &na_i, &i_in]);
                        let k_t = c.sum([&k0, &a_j, &na_j, &i_out]);
                        if accept(&i_t, &k_t) {
                            return hit(CaseTag::Case4ii, ideal, k_t, format!("alpha = {a}, i = {i}"));
                        }

                        let mut kk = c.zero();
                        for (eps, neps) in [(a, &na), (&na, a)] {
                            for k in Parity::BOTH {
                                for jj in Parity::BOTH {
                                    let br = c.bracket(&c.gs(eps, k), &c.gs(neps, k + jj));
                                    if c.meet(&br, ideal).is_zero() {
                                        kk = kk.sum(&br).expect("same ambient");
                                    }
                                }
                            }
                        }
                        let i_t = c.sum([&ih0, &ih1, &a_i, &i_in]);
                        let k_t = c.sum([&kk, &na_i, &a_j, &na_j, &i_out]);
                        if accept(&i_t, &k_t) {
                            return hit(CaseTag::Case4iii, ideal, k_t, format!("alpha = {a}, i = {i}"));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Runs the classification on an oracle result. The hypotheses are checked
/// first; a simple algebra is case one, otherwise the extra ideals are
/// matched against the templates.
pub fn classify_small<F: Field>(
    d: &SplitDecomposition<'_, F>,
    p: &RootPartition<F::Elem>,
    hyp: &HypothesisReport<F::Elem>,
    summaries: &[ConnectivitySummary<F::Elem>; 2],
    oracle: &OracleRun<F::Elem>,
) -> Result<ClassificationResult<F::Elem>, AnalyzeError> {
    let checks = [
        (hyp.maximal_length, "maximal_length"),
        (hyp.h_equals_h_lambda, "H = H_Lambda"),
        (hyp.lie_annihilator_zero, "Z_Lie = 0"),
        (hyp.root_multiplicative, "root_multiplicative"),
        (summaries.iter().all(|s| s.all_connected), "connectivity"),
        (hyp.card_not_i <= 2 || hyp.card_i <= 2, "card_notI <= 2 or card_I <= 2"),
    ];
    if let Some((_, name)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(AnalyzeError::Precondition((*name).to_string()));
    }
    let char_k = d.algebra().field().characteristic();
    let mut result =
        ClassificationResult { case_tag: CaseTag::Unclassified, i: None, k: None, char_k, parameters: String::new(), diagnostics: Vec::new() };
    match oracle.verdict.verdict {
        Verdict::Simple => result.case_tag = CaseTag::Case1Simple,
        Verdict::NotSimple => match match_templates(d, p, &oracle.extra) {
            Some(m) => {
                result.case_tag = m.case_tag;
                result.i = Some(m.i);
                result.k = Some(m.k);
                result.parameters = m.parameters;
            }
            None => {
                let alg = d.algebra();
                result.diagnostics.push(format!("{} extra ideals, none fits a template", oracle.extra.len()));
                for w in &oracle.extra {
                    let names: Vec<String> = w.basis_vectors().iter().map(|v| alg.describe(v)).collect();
                    result.diagnostics.push(format!("ideal <{}>", names.join(", ")));
                }
            }
        },
        Verdict::Undetermined => result.diagnostics.push("oracle undetermined: the H lattice is incomplete".into()),
    }
    Ok(result)
}
