//! Deterministic corpus of valid algebras.
//!
//! Random structure constants would almost never satisfy the identity, so
//! every member is built from the two worked examples and abelian blocks
//! by operations that preserve it: direct sums, rescaling a block's Cartan
//! generator, and a random graded change of basis.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Field, Matrix, Rationals};
use crate::superalg::{Parity, Superalgebra};

use super::document::{AlgebraDocument, Meta};
use super::generators::{example1, example1_cartan, example2, example2_cartan};

type Q = num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct CorpusMember {
    /// The presented algebra, after the change of basis.
    pub document: AlgebraDocument,
    /// The direct sum before the change of basis, same Cartan elements.
    pub base: AlgebraDocument,
    pub provenance: String,
    /// Number of direct summands.
    pub blocks: usize,
}

struct Block {
    alg: Superalgebra<Rationals>,
    cartan: Vec<Vec<Q>>,
    label: String,
}

const SCALES: [(i64, i64); 7] = [(1, 1), (2, 1), (3, 1), (-1, 1), (1, 2), (-3, 2), (5, 3)];

fn random_block(rng: &mut ChaCha8Rng) -> Block {
    let f = Rationals;
    let (alg, cartan, label) = match rng.random_range(0..5) {
        0 => {
            let a = example1(f);
            let h = example1_cartan(&a);
            (a, h, "example1".to_string())
        }
        k @ 1..=3 => {
            let n = [1, 3, 5][k - 1];
            let a = example2(f, n);
            let h = example2_cartan(&a);
            (a, h, format!("example2(n={n})"))
        }
        _ => {
            let parity: Vec<Parity> = (0..rng.random_range(1..=2)).map(|_| Parity::from_bit(rng.random_range(0..2)).unwrap()).collect();
            let a = Superalgebra::abelian(f, parity);
            let h = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
            let label = format!("abelian({})", a.parity().iter().map(|p| p.bit().to_string()).collect::<String>());
            (a, h, label)
        }
    };
    let (num, den) = SCALES[rng.random_range(0..SCALES.len())];
    let s = f.from_ratio(&BigInt::from(num), &BigInt::from(den)).expect("nonzero denominator");
    let cartan = cartan.into_iter().map(|v| v.iter().map(|x| x * &s).collect()).collect();
    Block { alg, cartan, label: format!("{label}*{num}/{den}") }
}

/// `B · Π` with `B` a random integer matrix supported on same-parity
/// pairs and `Π` a permutation, so every column stays homogeneous.
fn random_change(rng: &mut ChaCha8Rng, parity: &[Parity]) -> Matrix<Q> {
    let f = Rationals;
    let n = parity.len();
    loop {
        let mut b = Matrix::zeros(&f, n, n);
        for r in 0..n {
            for c in 0..n {
                if parity[r] == parity[c] {
                    b.set(r, c, f.from_i64(rng.random_range(-1..=2)));
                }
            }
        }
        if b.inverse(&f).is_none() {
            continue;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut p = Matrix::zeros(&f, n, n);
        for (c, &src) in perm.iter().enumerate() {
            for r in 0..n {
                p.set(r, c, b.get(r, src).clone());
            }
        }
        return p;
    }
}

/// `count` members drawn from one ChaCha stream seeded with `seed`.
pub fn fuzz_corpus(seed: u64, count: usize) -> Vec<CorpusMember> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Rationals;
    (0..count)
        .map(|index| {
            let blocks: Vec<Block> = (0..rng.random_range(1..=2)).map(|_| random_block(&mut rng)).collect();
            let mut alg = blocks[0].alg.clone();
            let mut cartan = blocks[0].cartan.clone();
            for b in &blocks[1..] {
                let shift = alg.dim();
                let total = shift + b.alg.dim();
                let pad = |v: &[Q], at: usize| -> Vec<Q> {
                    let mut out = vec![f.zero(); total];
                    out[at..at + v.len()].clone_from_slice(v);
                    out
                };
                cartan = cartan.iter().map(|v| pad(v, 0)).collect();
                cartan.extend(b.cartan.iter().map(|v| pad(v, shift)));
                alg = alg.direct_sum(&b.alg);
            }
            let label = blocks.iter().map(|b| b.label.as_str()).collect::<Vec<_>>().join(" + ");
            let base_meta = Meta { name: Some(format!("fuzz-{seed}-{index}-base")), seed: Some(seed), provenance: Some(label.clone()), basis: None };
            let base = AlgebraDocument::from_algebra(&alg, Some(&cartan), base_meta);

            let p = random_change(&mut rng, alg.parity());
            let inv = p.inverse(&f).expect("invertible by construction");
            let changed = alg.change_basis(&p).expect("homogeneous invertible change");
            let new_cartan: Vec<Vec<Q>> = cartan.iter().map(|v| inv.mul_vec(&f, v)).collect();
            let provenance = format!("{label}; graded change of basis");
            let meta = Meta { name: Some(format!("fuzz-{seed}-{index}")), seed: Some(seed), provenance: Some(provenance.clone()), basis: None };
            let document = AlgebraDocument::from_algebra(&changed, Some(&new_cartan), meta);
            CorpusMember { document, base, provenance, blocks: blocks.len() }
        })
        .collect()
}
