//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sll_core::analyze::{
    classify_small, hypothesis_report, lemma_checks, simplicity_oracle, simplicity_theorem_mode, AnalyzeError, CaseTag,
    Certificate, Hypothesis, Verdict, DEFAULT_ORACLE_BOUND,
};
use sll_core::connect::{connected, connection_classes, decompose, neg_i_connectivity_summary, witness_is_valid, CenterlessCheck};
use sll_core::exactlin::{Field, Rationals};
use sll_core::iocli::generators::{example1, example1_cartan, example2, example2_cartan};
use sll_core::iocli::{fuzz_corpus, AlgebraDocument, AnyLoaded};
use sll_core::splitdec::{split, CartanInput, NotSplitReason, Root, SplitError, Upsilon};
use sll_core::superalg::{GradedSubspace, Parity};
use sll_core::{QAlgebra, QRoot, Q};

const CORPUS_SEED: u64 = 20240531;
const CORPUS_SIZE: usize = 100;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(v: i64) -> Q {
    Rationals.from_i64(v)
}

fn root(vals: &[i64]) -> QRoot {
    Root(vals.iter().map(|&v| q(v)).collect())
}

fn span(alg: &QAlgebra, idx: &[usize]) -> GradedSubspace<Q> {
    alg.graded_span(idx.iter().map(|&i| alg.basis_vector(i)))
}

fn set(vals: &[i64]) -> Vec<QRoot> {
    let mut v: Vec<QRoot> = vals.iter().map(|&x| root(&[x])).collect();
    v.sort();
    v
}

fn criterion1() -> Check {
    let alg = example1(Rationals).validated().map_err(|v| format!("validate reported {} violations", v.len()))?;
    let d = split(&alg, &CartanInput::new(example1_cartan(&alg))).map_err(|e| e.to_string())?;
    ensure(d.roots() == set(&[2, -2, -1, 1]), || format!("roots {:?}", d.roots()))?;
    for (value, index) in [(2, 1), (-2, 0), (-1, 3), (1, 4)] {
        let rs = d.root_space(&root(&[value])).ok_or("missing root space")?;
        ensure(rs.space == span(&alg, &[index]), || format!("root space of {value} is not spanned by basis vector {index}"))?;
    }
    let frak_i = alg.frak_i();
    ensure(frak_i == span(&alg, &[3, 4]), || "frak_i differs from <e1, e2>".into())?;
    let p = d.partition_roots(&frak_i);
    ensure(p.set(Upsilon::NotI, Parity::Even) == set(&[-2, 2]).as_slice(), || "Lambda^notI_0 differs".into())?;
    ensure(p.set(Upsilon::I, Parity::Odd) == set(&[-1, 1]).as_slice(), || "Lambda^I_1 differs".into())?;
    ensure(p.set(Upsilon::NotI, Parity::Odd).is_empty() && p.set(Upsilon::I, Parity::Even).is_empty(), || {
        "a partition expected empty is not".into()
    })?;
    ensure(p.unclassified.is_empty() && p.maximal_length, || "not maximal length".into())?;
    Ok("roots {2,-2,-1,1}, frak_i = <e1,e2>, partitions exact, maximal length".into())
}

fn criterion2() -> Check {
    for n in [1usize, 3, 5] {
        let alg = example2(Rationals, n).validated().map_err(|_| format!("n={n}: validate failed"))?;
        ensure(alg.dim() == n + 4, || format!("n={n}: dim {}", alg.dim()))?;
        let d = split(&alg, &CartanInput::new(example2_cartan(&alg))).map_err(|e| format!("n={n}: {e}"))?;
        let mut expected: Vec<i64> = vec![2, -2];
        expected.extend((0..=n as i64).map(|k| n as i64 - 2 * k));
        ensure(d.roots() == set(&expected), || format!("n={n}: roots {:?}", d.roots()))?;
        let frak_i = alg.frak_i();
        ensure(frak_i == span(&alg, &(3..n + 4).collect::<Vec<_>>()), || format!("n={n}: frak_i differs from <e0..en>"))?;
        ensure(d.partition_roots(&frak_i).maximal_length, || format!("n={n}: not maximal length"))?;
    }
    for n in [2usize, 4] {
        let alg = example2(Rationals, n).validated().map_err(|_| format!("n={n}: validate failed"))?;
        match split(&alg, &CartanInput::new(example2_cartan(&alg))) {
            Err(SplitError::NotSplit(NotSplitReason::ZeroSpaceExceedsH { extra_names, .. })) => {
                let want = format!("e{}", n / 2);
                ensure(extra_names == [want.clone()], || format!("n={n}: named {extra_names:?}, expected {want}"))?;
            }
            other => return Err(format!("n={n}: expected NotSplit, got {other:?}")),
        }
    }
    Ok("n in {1,3,5} exact; n in {2,4} NotSplit naming e1, e2".into())
}

struct MemberStats {
    classes: usize,
    pairs: usize,
}

fn corpus_member_properties(doc: &AlgebraDocument, base: &AlgebraDocument) -> Result<MemberStats, String> {
    let AnyLoaded::Q(l) = doc.load(None).map_err(|e| e.to_string())? else { return Err("not rational".into()) };
    let alg = l.algebra.validated().map_err(|v| format!("{} identity violations", v.len()))?;
    let d = split(&alg, &CartanInput::new(l.cartan.ok_or("no cartan")?)).map_err(|e| e.to_string())?;
    let facts = d.verify_split_facts();
    ensure(facts.is_empty(), || format!("{} split-fact violations", facts.len()))?;
    let frak_i = alg.frak_i();
    ensure(alg.check_eq1(&frak_i), || "[L, frak_i] != 0".into())?;

    let roots = d.roots();
    let mut rel = BTreeMap::new();
    for a in &roots {
        for b in &roots {
            let w = connected(&d, a, b).map_err(|e| e.to_string())?;
            if let Some(w) = &w {
                ensure(witness_is_valid(&d, a, b, w), || format!("invalid witness {a} -> {b}"))?;
            }
            rel.insert((a.clone(), b.clone()), w.is_some());
        }
    }
    for a in &roots {
        ensure(rel[&(a.clone(), a.clone())], || format!("{a} not connected to itself"))?;
        for b in &roots {
            ensure(rel[&(a.clone(), b.clone())] == rel[&(b.clone(), a.clone())], || format!("asymmetric at {a}, {b}"))?;
            if !rel[&(a.clone(), b.clone())] {
                continue;
            }
            for c in &roots {
                if rel[&(b.clone(), c.clone())] {
                    ensure(rel[&(a.clone(), c.clone())], || format!("not transitive at {a}, {b}, {c}"))?;
                }
            }
        }
    }

    let dec = decompose(&d).map_err(|e| e.to_string())?;
    let mut total = dec.u.clone();
    for (j, c) in dec.classes.iter().enumerate() {
        ensure(alg.is_ideal(&c.i_class), || format!("class ideal {j} is not an ideal"))?;
        for other in &dec.classes[j + 1..] {
            ensure(alg.product_space(&c.i_class, &other.i_class).is_zero(), || "class ideals do not commute".into())?;
            ensure(alg.product_space(&other.i_class, &c.i_class).is_zero(), || "class ideals do not commute".into())?;
        }
        total = total.sum(&c.i_class).map_err(|e| e.to_string())?;
    }
    ensure(total == alg.whole(), || "U plus class ideals is not L".into())?;

    // Equivariance: same Cartan elements, transported, give the same roots
    // with the same graded multiplicities.
    let table = |doc: &AlgebraDocument| -> Result<Vec<(QRoot, usize, usize)>, String> {
        let AnyLoaded::Q(l) = doc.load(None).map_err(|e| e.to_string())? else { unreachable!() };
        let alg = l.algebra.validated().map_err(|_| "base fails validate".to_string())?;
        let d = split(&alg, &CartanInput::new(l.cartan.unwrap())).map_err(|e| e.to_string())?;
        Ok(d.root_spaces().iter().map(|r| (r.root.clone(), r.slot(Parity::Even).dim(), r.slot(Parity::Odd).dim())).collect())
    };
    let mine: Vec<_> = d.root_spaces().iter().map(|r| (r.root.clone(), r.slot(Parity::Even).dim(), r.slot(Parity::Odd).dim())).collect();
    ensure(mine == table(base)?, || "root multiset changed under the change of basis".into())?;
    Ok(MemberStats { classes: dec.classes.len(), pairs: rel.len() })
}

fn criterion4() -> Check {
    let corpus = fuzz_corpus(CORPUS_SEED, CORPUS_SIZE);
    let again = fuzz_corpus(CORPUS_SEED, CORPUS_SIZE);
    ensure(corpus.iter().zip(&again).all(|(a, b)| a.document == b.document), || "corpus is not deterministic".into())?;
    let (mut classes, mut pairs, mut max_dim) = (0, 0, 0);
    for (i, m) in corpus.iter().enumerate() {
        let s = corpus_member_properties(&m.document, &m.base).map_err(|e| format!("member {i} ({}): {e}", m.provenance))?;
        classes += s.classes;
        pairs += s.pairs;
        max_dim = max_dim.max(m.document.dim);
    }
    Ok(format!("{CORPUS_SIZE} members, seed {CORPUS_SEED}, max dim {max_dim}, {pairs} root pairs, {classes} class ideals, 0 violations"))
}

fn criterion5() -> Check {
    let alg = example1(Rationals).validated().unwrap();
    let d = split(&alg, &CartanInput::new(example1_cartan(&alg))).map_err(|e| e.to_string())?;
    let p = d.partition_roots(&alg.frak_i());
    let o = simplicity_oracle(&d, &p, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
    ensure(o.verdict.verdict == Verdict::Simple, || format!("example 1 oracle verdict {}", o.verdict.verdict))?;
    let want = vec![GradedSubspace::zero(5), span(&alg, &[3, 4]), alg.whole()];
    ensure(o.ideals == want, || format!("example 1 ideals {:?}", o.ideals.iter().map(|w| w.dim()).collect::<Vec<_>>()))?;
    ensure(o.candidates == 32, || format!("example 1 candidates {}", o.candidates))?;
    let ex1_candidates = o.candidates;
    let hyp = hypothesis_report(&d, &p);
    let summaries = neg_i_connectivity_summary(&p).map_err(|e| e.to_string())?;
    let c = classify_small(&d, &p, &hyp, &summaries, &o).map_err(|e| format!("example 1: {e}"))?;
    ensure(c.case_tag == CaseTag::Case1Simple, || format!("example 1 classified {}", c.case_tag))?;

    for n in [1usize, 3] {
        let alg = example2(Rationals, n).validated().unwrap();
        let d = split(&alg, &CartanInput::new(example2_cartan(&alg))).map_err(|e| e.to_string())?;
        let frak_i = alg.frak_i();
        let p = d.partition_roots(&frak_i);
        let o = simplicity_oracle(&d, &p, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
        ensure(o.verdict.verdict == Verdict::Simple, || format!("n={n}: oracle verdict {}", o.verdict.verdict))?;
        ensure(o.ideals == vec![GradedSubspace::zero(n + 4), frak_i.clone(), alg.whole()], || format!("n={n}: ideal list differs"))?;
        let hyp = hypothesis_report(&d, &p);
        let summaries = neg_i_connectivity_summary(&p).map_err(|e| e.to_string())?;
        let c = classify_small(&d, &p, &hyp, &summaries, &o).map_err(|e| format!("n={n}: {e}"))?;
        ensure(c.case_tag == CaseTag::Case1Simple, || format!("n={n}: classified {}", c.case_tag))?;
    }

    let (sum, cartan) = two_blocks()?;
    let d = split(&sum, &CartanInput::new(cartan)).map_err(|e| e.to_string())?;
    let p = d.partition_roots(&sum.frak_i());
    let o = simplicity_oracle(&d, &p, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
    ensure(o.verdict.verdict == Verdict::NotSimple, || format!("direct sum oracle verdict {}", o.verdict.verdict))?;
    let Certificate::Ideal(w) = &o.verdict.certificate else { return Err("direct sum certificate is not an ideal".into()) };
    ensure(sum.is_ideal(w) && !w.is_zero() && *w != sum.whole() && *w != p.frak_i, || "certificate does not re-validate".into())?;
    Ok(format!(
        "example 1 ideals {{0, <e1,e2>, L}} over {} candidates (2^4 slot subsets x 2 H-parts); example 2 n in {{1,3}} ideals {{0, frak_i, L}}; Case1_Simple; direct sum NotSimple via a {}-dim ideal",
        ex1_candidates,
        w.dim()
    ))
}

struct AgreementStats {
    determinate: usize,
    determinate_small_h: usize,
    compared: usize,
    skipped: usize,
    ideals: usize,
    outside_applicable: usize,
    inside_applicable: usize,
}

fn corpus_analysis() -> Result<AgreementStats, String> {
    let mut s = AgreementStats {
        determinate: 0,
        determinate_small_h: 0,
        compared: 0,
        skipped: 0,
        ideals: 0,
        outside_applicable: 0,
        inside_applicable: 0,
    };
    for (i, m) in fuzz_corpus(CORPUS_SEED, CORPUS_SIZE).iter().enumerate() {
        let tag = || format!("member {i} ({})", m.provenance);
        let AnyLoaded::Q(l) = m.document.load(None).map_err(|e| e.to_string())? else { unreachable!() };
        let alg = l.algebra.validated().map_err(|_| format!("{}: validate", tag()))?;
        let d = split(&alg, &CartanInput::new(l.cartan.unwrap())).map_err(|e| format!("{}: {e}", tag()))?;
        let p = d.partition_roots(&alg.frak_i());
        let hyp = hypothesis_report(&d, &p);
        let summaries = neg_i_connectivity_summary(&p).map_err(|e| format!("{}: {e}", tag()))?;
        let theorem = simplicity_theorem_mode(&hyp, &summaries);
        let oracle = match simplicity_oracle(&d, &p, DEFAULT_ORACLE_BOUND) {
            Ok(o) => o,
            Err(AnalyzeError::BoundExceeded { .. }) => {
                s.skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("{}: {e}", tag())),
        };
        let determinate = theorem.verdict != Verdict::Undetermined;
        if determinate {
            s.determinate += 1;
            if d.h().dim() <= 1 {
                s.determinate_small_h += 1;
            }
        }
        if determinate && oracle.verdict.verdict != Verdict::Undetermined {
            s.compared += 1;
            ensure(theorem.verdict == oracle.verdict.verdict, || {
                format!("{}: theorem {} but oracle {}", tag(), theorem.verdict, oracle.verdict.verdict)
            })?;
        }
        ensure(!determinate || d.h().dim() > 1 || oracle.verdict.verdict == theorem.verdict, || {
            format!("{}: oracle undetermined with dim H <= 1", tag())
        })?;
        let violations = lemma_checks(&d, &p, &hyp, &summaries, &oracle.ideals);
        ensure(violations.is_empty(), || format!("{}: {:?}", tag(), violations[0]))?;
        s.ideals += oracle.ideals.len();
        let conn = |u: Upsilon| summaries.iter().filter(|x| x.upsilon == u).all(|x| x.all_connected);
        if hyp.h_equals_h_lambda && hyp.root_multiplicative && conn(Upsilon::NotI) && hyp.card_not_i > 2 {
            s.outside_applicable += 1;
        }
        if hyp.h_equals_h_lambda && hyp.lie_annihilator_zero && hyp.root_multiplicative && conn(Upsilon::I) && hyp.card_i > 2 {
            s.inside_applicable += 1;
        }
    }
    Ok(s)
}

fn criterion6(stats: &Result<AgreementStats, String>) -> Check {
    let s = stats.as_ref().map_err(|e| e.clone())?;
    let alg = example1(Rationals).validated().unwrap();
    let d = split(&alg, &CartanInput::new(example1_cartan(&alg))).map_err(|e| e.to_string())?;
    let p = d.partition_roots(&alg.frak_i());
    let hyp = hypothesis_report(&d, &p);
    let theorem = simplicity_theorem_mode(&hyp, &neg_i_connectivity_summary(&p).map_err(|e| e.to_string())?);
    ensure(theorem.verdict == Verdict::Undetermined, || format!("example 1 theorem verdict {}", theorem.verdict))?;
    let Certificate::FailedHypothesis(h) = &theorem.certificate else { return Err("no failed hypothesis named".into()) };
    ensure(*h == Hypothesis::CardNotI(2), || format!("example 1 names {h}"))?;
    Ok(format!(
        "example 1 Undetermined naming \"{h}\"; corpus: {} determinate theorem verdicts ({} with dim H <= 1), {} compared with the oracle, 0 disagreements, {} over the oracle bound",
        s.determinate, s.determinate_small_h, s.compared, s.skipped
    ))
}

fn criterion7(stats: &Result<AgreementStats, String>) -> Check {
    let s = stats.as_ref().map_err(|e| e.clone())?;
    Ok(format!(
        "{} enumerated ideals root-aligned; outside-ideal check applicable on {} members, inside-ideal check on {}; 0 violations",
        s.ideals, s.outside_applicable, s.inside_applicable
    ))
}

fn two_blocks() -> Result<(QAlgebra, Vec<Vec<Q>>), String> {
    let sum = example1(Rationals).direct_sum(&example2(Rationals, 1)).validated().map_err(|_| "direct sum fails validate".to_string())?;
    let cartan = [2, 5]
        .iter()
        .map(|&at| {
            let mut h = vec![q(0); sum.dim()];
            h[at] = q(1);
            h
        })
        .collect();
    Ok((sum, cartan))
}

fn criterion3() -> Check {
    let alg = example1(Rationals).validated().unwrap();
    let d = split(&alg, &CartanInput::new(example1_cartan(&alg))).map_err(|e| e.to_string())?;
    let classes = connection_classes(&d);
    ensure(classes.len() == 1 && classes[0].len() == 4, || format!("example 1 classes {classes:?}"))?;
    let (alpha, beta) = (root(&[2]), root(&[-1]));
    let w = connected(&d, &alpha, &beta).map_err(|e| e.to_string())?.ok_or("alpha and beta not connected")?;
    ensure(witness_is_valid(&d, &alpha, &beta, &w), || "witness does not re-validate".into())?;
    let dec = decompose(&d).map_err(|e| e.to_string())?;
    ensure(dec.u.is_zero() && dec.classes.len() == 1 && dec.classes[0].i_class == alg.whole(), || "decomposition differs".into())?;
    ensure(alg.center().is_zero() && alg.derived() == alg.whole(), || "center or derived algebra differs".into())?;
    ensure(dec.centerless == CenterlessCheck::Holds, || "direct-sum refinement not applied".into())?;

    let (sum, cartan) = two_blocks()?;
    let d = split(&sum, &CartanInput::new(cartan)).map_err(|e| e.to_string())?;
    let n = connection_classes(&d).len();
    ensure(n == 2, || format!("direct sum has {n} classes"))?;
    Ok(format!(
        "one class of 4 roots; witness {} for (2, -1) re-validates; U = 0, single ideal L, Z = 0, perfect; direct sum has 2 classes",
        w.chain.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" + ")
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Check| {
        let t = Instant::now();
        let res = f();
        let el = t.elapsed();
        let res = match (res, limit) {
            (Ok(_), Some(l)) if el > l => Err(format!("took {el:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match res {
            Ok(detail) => println!("PASS [{n}] {name}: {detail} ({el:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL [{n}] {name}: {e} ({el:.2?})");
            }
        }
    };
    report(1, "example 1 golden split", Some(Duration::from_secs(1)), &mut criterion1);
    report(2, "example 2 golden splits", Some(Duration::from_secs(3)), &mut criterion2);
    report(3, "connection machinery", Some(Duration::from_secs(1)), &mut criterion3);
    report(4, "fuzz corpus property suite", Some(Duration::from_secs(60)), &mut criterion4);
    report(5, "simplicity oracle and classification", Some(Duration::from_secs(5)), &mut criterion5);
    let t = Instant::now();
    let stats = corpus_analysis();
    println!("     corpus analysis ran in {:.2?}", t.elapsed());
    report(6, "theorem/oracle agreement", None, &mut || criterion6(&stats));
    report(7, "lemma checks during oracle runs", None, &mut || criterion7(&stats));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
