//! Connections of roots, connection classes and the class ideals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::exactlin::{Field, Scalar};
use crate::splitdec::{Root, RootPartition, SplitDecomposition, Upsilon};
use crate::superalg::{GradedSubspace, Parity};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("({root}, {parity}) is not in the {upsilon} root set")]
    EndpointNotInSet { root: String, parity: Parity, upsilon: Upsilon },
    #[error("connections with graded steps need a maximal length decomposition")]
    NotMaximalLength,
    #[error("verification failed: {what}; witness {witness}")]
    Verification { what: String, witness: String },
}

/// A chain `α_1, ..., α_n` in `±Λ` with partial sums in `±Λ` and total
/// `sign * target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionWitness<S: Scalar> {
    pub chain: Vec<Root<S>>,
    /// `+1` when the total is the target, `-1` when it is its negative.
    pub sign: i8,
    /// The total is `-target` and `-target` is not itself a root.
    pub negated_target_not_root: bool,
}

/// `Λ ∪ -Λ` as a sorted set.
pub fn signed_roots<F: Field>(d: &SplitDecomposition<'_, F>) -> BTreeSet<Root<F::Elem>> {
    let mut s = BTreeSet::new();
    for r in d.roots() {
        s.insert(r.neg());
        s.insert(r);
    }
    s
}

fn require_root<F: Field>(d: &SplitDecomposition<'_, F>, r: &Root<F::Elem>) -> Result<(), ConnectError> {
    if d.is_root(r) {
        Ok(())
    } else {
        Err(ConnectError::NotARoot(r.to_string()))
    }
}

/// Breadth-first search over partial sums. Letters are tried in sorted
/// order, so the first path found to a state is the lexicographically
/// least among the shortest ones.
fn bfs<S: Ord + Clone>(start: S, letters: &[S], step: impl Fn(&S, &S) -> Option<S>, accept: impl Fn(&S) -> bool) -> Option<Vec<S>> {
    let mut parent: BTreeMap<S, Option<(S, S)>> = BTreeMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if accept(&state) {
            let mut letters_rev = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, letter))) = parent.get(&cur) {
                letters_rev.push(letter.clone());
                cur = prev.clone();
            }
            letters_rev.reverse();
            return Some(letters_rev);
        }
        for g in letters {
            if let Some(next) = step(&state, g) {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((state.clone(), g.clone())));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// A shortest connection from `a` to `b`, if any.
pub fn connected<F: Field>(
    d: &SplitDecomposition<'_, F>,
    a: &Root<F::Elem>,
    b: &Root<F::Elem>,
) -> Result<Option<ConnectionWitness<F::Elem>>, ConnectError> {
    require_root(d, a)?;
    require_root(d, b)?;
    let pm = signed_roots(d);
    let letters: Vec<Root<F::Elem>> = pm.iter().cloned().collect();
    let neg_b = b.neg();
    let path = bfs(
        a.clone(),
        &letters,
        |s, g| {
            let t = s.add(g);
            pm.contains(&t).then_some(t)
        },
        |s| s == b || *s == neg_b,
    );
    Ok(path.map(|steps| {
        let mut chain = vec![a.clone()];
        chain.extend(steps);
        let total = chain.iter().skip(1).fold(a.clone(), |acc, g| acc.add(g));
        let sign = if &total == b { 1 } else { -1 };
        ConnectionWitness { chain, sign, negated_target_not_root: sign < 0 && !d.is_root(&neg_b) }
    }))
}

/// Re-checks a witness against the definition, independently of the
/// search that produced it.
pub fn witness_is_valid<F: Field>(
    d: &SplitDecomposition<'_, F>,
    a: &Root<F::Elem>,
    b: &Root<F::Elem>,
    w: &ConnectionWitness<F::Elem>,
) -> bool {
    let pm = signed_roots(d);
    if w.chain.first() != Some(a) || !w.chain.iter().all(|g| pm.contains(g)) {
        return false;
    }
    let mut sum = w.chain[0].clone();
    // Every partial sum short of the full chain must stay in ±Λ.
    for g in w.chain.iter().skip(1) {
        if !pm.contains(&sum) {
            return false;
        }
        sum = sum.add(g);
    }
    match w.sign {
        1 => &sum == b,
        -1 => sum == b.neg(),
        _ => false,
    }
}

/// States reachable from `a` through partial sums in `±Λ`.
pub fn reachable<F: Field>(d: &SplitDecomposition<'_, F>, a: &Root<F::Elem>) -> BTreeSet<Root<F::Elem>> {
    let pm = signed_roots(d);
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(s) = queue.pop_front() {
        for g in &pm {
            let t = s.add(g);
            if pm.contains(&t) && seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Equivalence classes of the connection relation, each sorted, ordered
/// by their least element.
pub fn connection_classes<F: Field>(d: &SplitDecomposition<'_, F>) -> Vec<Vec<Root<F::Elem>>> {
    let roots = d.roots();
    let mut uf = UnionFind::<usize>::new(roots.len());
    for (i, a) in roots.iter().enumerate() {
        let reach = reachable(d, a);
        for (j, b) in roots.iter().enumerate() {
            if reach.contains(b) || reach.contains(&b.neg()) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Root<F::Elem>>> = BTreeMap::new();
    for (i, r) in roots.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(r.clone());
    }
    let mut classes: Vec<Vec<Root<F::Elem>>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    classes
}

/// `H_[α]`, `V_[α]` and `I_[α] = H_[α] ⊕ V_[α]` for one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassIdeal<S: Scalar> {
    pub roots: Vec<Root<S>>,
    pub h_class: GradedSubspace<S>,
    pub v_class: GradedSubspace<S>,
    pub i_class: GradedSubspace<S>,
}

/// `Σ [L_β, L_{-β}]` over the given roots, skipping `β` with `-β ∉ Λ`.
pub fn bracket_pairs<F: Field>(d: &SplitDecomposition<'_, F>, roots: &[Root<F::Elem>]) -> GradedSubspace<F::Elem> {
    let alg = d.algebra();
    let mut acc = GradedSubspace::zero(alg.dim());
    for b in roots {
        let (Some(pos), Some(neg)) = (d.root_space(b), d.root_space(&b.neg())) else { continue };
        acc = acc.sum(&alg.product_space(&pos.space, &neg.space)).expect("same ambient");
    }
    acc
}

pub fn class_ideal<F: Field>(d: &SplitDecomposition<'_, F>, cls: &[Root<F::Elem>]) -> Result<ClassIdeal<F::Elem>, ConnectError> {
    let alg = d.algebra();
    for r in cls {
        require_root(d, r)?;
    }
    let h_class = bracket_pairs(d, cls);
    let mut v_class = GradedSubspace::zero(alg.dim());
    for r in cls {
        v_class = v_class.sum(&d.root_space(r).expect("checked").space).expect("same ambient");
    }
    let i_class = h_class.sum(&v_class).expect("same ambient");
    let label = || cls.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    if !alg.is_subalgebra(&i_class) {
        return Err(ConnectError::Verification { what: format!("class {{{}}} is not a subalgebra", label()), witness: String::new() });
    }
    if let Some(p) = alg.ideal_witness(&i_class) {
        return Err(ConnectError::Verification { what: format!("class {{{}}} is not an ideal", label()), witness: alg.describe(&p) });
    }
    Ok(ClassIdeal { roots: cls.to_vec(), h_class, v_class, i_class })
}

/// Outcome of the refinement for centerless perfect algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterlessCheck {
    /// The center is nonzero or the algebra is not perfect.
    NotApplicable,
    /// The sum of class ideals is direct and `U = 0`.
    Holds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecomposition<S: Scalar> {
    pub classes: Vec<ClassIdeal<S>>,
    pub h_lambda: GradedSubspace<S>,
    pub u: GradedSubspace<S>,
    pub centerless: CenterlessCheck,
}

/// `L = U + Σ I_[α]` with `[I_[α], I_[β]] = 0` for distinct classes.
pub fn decompose<F: Field>(d: &SplitDecomposition<'_, F>) -> Result<ClassDecomposition<F::Elem>, ConnectError> {
    let alg = d.algebra();
    let n = alg.dim();
    let classes: Vec<ClassIdeal<F::Elem>> =
        connection_classes(d).iter().map(|c| class_ideal(d, c)).collect::<Result<_, _>>()?;
    let h_lambda = bracket_pairs(d, &d.roots());
    let u = h_lambda.complement_in(d.h()).expect("same ambient");
    let mut total = u.clone();
    for c in &classes {
        total = total.sum(&c.i_class).expect("same ambient");
    }
    if total.dim() != n {
        return Err(ConnectError::Verification {
            what: format!("U plus the class ideals spans only {} of {n} dimensions", total.dim()),
            witness: String::new(),
        });
    }
    for (j, a) in classes.iter().enumerate() {
        for b in classes.iter().skip(j + 1) {
            for (x, y) in [(&a.i_class, &b.i_class), (&b.i_class, &a.i_class)] {
                let p = alg.product_space(x, y);
                if !p.is_zero() {
                    return Err(ConnectError::Verification {
                        what: "distinct class ideals do not annihilate each other".into(),
                        witness: alg.describe(&p.basis_vectors()[0]),
                    });
                }
            }
        }
    }
    let centerless = if alg.center().is_zero() && alg.derived().dim() == n {
        let dims = u.dim() + classes.iter().map(|c| c.i_class.dim()).sum::<usize>();
        if dims != n || !u.is_zero() {
            return Err(ConnectError::Verification {
                what: format!("centerless perfect algebra but the sum is not direct with U = 0 (dim U = {})", u.dim()),
                witness: String::new(),
            });
        }
        CenterlessCheck::Holds
    } else {
        CenterlessCheck::NotApplicable
    };
    Ok(ClassDecomposition { classes, h_lambda, u, centerless })
}

/// A graded slot `(α, p)`.
pub type Slot<S> = (Root<S>, Parity);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedConnectionWitness<S: Scalar> {
    pub chain: Vec<Slot<S>>,
    pub upsilon: Upsilon,
    /// The target is the source or its negative.
    pub trivial: bool,
}

fn check_endpoint<S: Scalar>(p: &RootPartition<S>, s: &Slot<S>, u: Upsilon) -> Result<(), ConnectError> {
    if p.contains(u, &s.0, s.1) {
        Ok(())
    } else {
        Err(ConnectError::EndpointNotInSet { root: s.0.to_string(), parity: s.1, upsilon: u })
    }
}

/// Graded connection from `a` to `b` through `Λ^Υ`, with steps in `Λ^¬𝔦`.
pub fn neg_i_connected<S: Scalar>(
    p: &RootPartition<S>,
    a: &Slot<S>,
    b: &Slot<S>,
    upsilon: Upsilon,
) -> Result<Option<GradedConnectionWitness<S>>, ConnectError> {
    if !p.maximal_length {
        return Err(ConnectError::NotMaximalLength);
    }
    check_endpoint(p, a, upsilon)?;
    check_endpoint(p, b, upsilon)?;
    if b.0 == a.0 || b.0 == a.0.neg() {
        return Ok(Some(GradedConnectionWitness { chain: vec![a.clone()], upsilon, trivial: true }));
    }
    let letters = p.slots(Upsilon::NotI);
    let path = bfs(
        a.clone(),
        &letters,
        |(sigma, par), (g, j)| {
            let t = (sigma.add(g), *par + *j);
            p.contains(upsilon, &t.0, t.1).then_some(t)
        },
        |s| s == b,
    );
    Ok(path.map(|steps| {
        let mut chain = vec![a.clone()];
        chain.extend(steps);
        GradedConnectionWitness { chain, upsilon, trivial: false }
    }))
}

/// Independent re-check of a graded witness.
pub fn graded_witness_is_valid<S: Scalar>(p: &RootPartition<S>, a: &Slot<S>, b: &Slot<S>, w: &GradedConnectionWitness<S>) -> bool {
    if w.chain.first() != Some(a) {
        return false;
    }
    if w.trivial {
        return w.chain.len() == 1 && (b.0 == a.0 || b.0 == a.0.neg());
    }
    let (mut sum, mut par) = a.clone();
    for (g, j) in w.chain.iter().skip(1) {
        if !p.contains(Upsilon::NotI, g, *j) {
            return false;
        }
        sum = sum.add(g);
        par = par + *j;
        if !p.contains(w.upsilon, &sum, par) {
            return false;
        }
    }
    (sum, par) == *b
}

/// Whether every pair of slots in `Λ^Υ` is connected, with all witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivitySummary<S: Scalar> {
    pub upsilon: Upsilon,
    pub all_connected: bool,
    pub table: Vec<(Slot<S>, Slot<S>, Option<GradedConnectionWitness<S>>)>,
    pub first_failure: Option<(Slot<S>, Slot<S>)>,
}

pub fn neg_i_connectivity<S: Scalar>(p: &RootPartition<S>, upsilon: Upsilon) -> Result<ConnectivitySummary<S>, ConnectError> {
    let slots = p.slots(upsilon);
    let mut table = Vec::new();
    let mut first_failure = None;
    for a in &slots {
        for b in &slots {
            let w = neg_i_connected(p, a, b, upsilon)?;
            if w.is_none() && first_failure.is_none() {
                first_failure = Some((a.clone(), b.clone()));
            }
            table.push((a.clone(), b.clone(), w));
        }
    }
    Ok(ConnectivitySummary { upsilon, all_connected: first_failure.is_none(), table, first_failure })
}

/// Summaries for `Υ = 𝔦` and `Υ = ¬𝔦`, in that order.
pub fn neg_i_connectivity_summary<S: Scalar>(p: &RootPartition<S>) -> Result<[ConnectivitySummary<S>; 2], ConnectError> {
    Ok([neg_i_connectivity(p, Upsilon::I)?, neg_i_connectivity(p, Upsilon::NotI)?])
}
