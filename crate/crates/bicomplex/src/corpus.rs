//! Deterministic random inputs for the verification suites: multisets in a
//! box, bidegree-wise changes of basis, and zero-sum fillings.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{bd, Bidegree, DoubleComplex};
use crate::formal::{FillingMap, FillingSign};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::shape::{IrreducibleShape, Multiset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every shape whose components all lie in `[0,max]^2`.
pub fn shapes_in_box(max: i32) -> Vec<IrreducibleShape> {
    let fits = |s: &IrreducibleShape| {
        s.cells()
            .iter()
            .all(|c| (0..=max).contains(&c.p) && (0..=max).contains(&c.q))
    };
    let mut out = Vec::new();
    for p in 0..=max {
        for q in 0..=max {
            for k in 0..=(2 * max) {
                let s = IrreducibleShape::odd(p, q, k);
                if fits(&s) {
                    out.push(s);
                }
            }
            for l in 1..=(max.max(1) as u32) {
                for s in [IrreducibleShape::even_h(p, q, l), IrreducibleShape::even_v(p, q, l)] {
                    if fits(&s) {
                        out.push(s);
                    }
                }
            }
            let s = IrreducibleShape::square(p, q);
            if fits(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A random non-negative multiset supported in `[0,max]^2` with at most
/// `max_shapes` irreducibles (counted with multiplicity).
pub fn random_multiset(rng: &mut ChaCha8Rng, max: i32, max_shapes: usize) -> Multiset {
    let pool = shapes_in_box(max);
    let count = rng.gen_range(0..=max_shapes);
    let mut m = Multiset::new();
    for _ in 0..count {
        m.add(*pool.choose(rng).unwrap(), 1);
    }
    m
}

/// A random invertible matrix with small Gaussian-integer entries, built
/// from elementary operations so invertibility is guaranteed.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let coeff = Scalar::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-1..=1), 1);
        // row_i += coeff * row_j
        for col in 0..n {
            let v = m.get(i, col) + &(&coeff * m.get(j, col));
            m.set(i, col, v);
        }
    }
    m
}

/// Conjugate a complex by an independent random change of basis in every
/// bidegree. The result has the same decomposition.
pub fn random_basis_change(c: &DoubleComplex, rng: &mut ChaCha8Rng) -> DoubleComplex {
    let mut change: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut inverse: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut get = |cell: Bidegree, dim: usize, rng: &mut ChaCha8Rng| {
        if !change.contains_key(&cell) {
            let m = random_invertible(rng, dim);
            inverse.insert(cell, m.inverse().unwrap());
            change.insert(cell, m);
        }
        (change[&cell].clone(), inverse[&cell].clone())
    };
    let mut del_h = BTreeMap::new();
    let mut del_v = BTreeMap::new();
    let cells: Vec<Bidegree> = c.support().collect();
    for &cell in &cells {
        let (_, inv_src) = get(cell, c.dim(cell), rng);
        for (target, table, block) in [
            (cell.shifted(1, 0), &mut del_h, c.h(cell)),
            (cell.shifted(0, 1), &mut del_v, c.v(cell)),
        ] {
            if c.dim(target) == 0 {
                continue;
            }
            let (m_dst, _) = get(target, c.dim(target), rng);
            table.insert(cell, m_dst.mul(&block).unwrap().mul(&inv_src).unwrap());
        }
    }
    DoubleComplex::new(c.dims().clone(), del_h, del_v)
}

/// A random zero-row-sum, zero-column-sum filling on one side of the
/// degree-k antidiagonal, assembled from `moves` rectangle updates. Small
/// regions force anchors at negative bidegrees, which the fillings allow.
pub fn random_filling(
    rng: &mut ChaCha8Rng,
    k: i32,
    sign: FillingSign,
    moves: usize,
) -> FillingMap {
    let mut values: BTreeMap<Bidegree, i64> = BTreeMap::new();
    for _ in 0..moves {
        // Pick the extreme corner on the constrained side first, then grow
        // the rectangle away from the diagonal; every corner stays inside.
        let (p1, p2, q1, q2) = match sign {
            FillingSign::Minus => {
                // (p2, q2) must satisfy p2 + q2 < k.
                let p2 = rng.gen_range((k - 5)..=(k - 1));
                let q2 = rng.gen_range((k - 4 - p2)..=(k - 1 - p2));
                let p1 = p2 - rng.gen_range(1..=3);
                let q1 = q2 - rng.gen_range(1..=3);
                (p1, p2, q1, q2)
            }
            FillingSign::Plus => {
                // (p1, q1) must satisfy p1 + q1 > k.
                let p1 = rng.gen_range(0..=(k + 3));
                let q1 = k + 1 - p1 + rng.gen_range(0..=3);
                let p2 = p1 + rng.gen_range(1..=3);
                let q2 = q1 + rng.gen_range(1..=3);
                (p1, p2, q1, q2)
            }
        };
        for (cell, v) in [
            (bd(p1, q1), 1),
            (bd(p2, q2), 1),
            (bd(p1, q2), -1),
            (bd(p2, q1), -1),
        ] {
            *values.entry(cell).or_insert(0) += v;
        }
    }
    values.retain(|_, &mut v| v != 0);
    FillingMap::new(k, sign, values).expect("rectangle moves preserve the zero-sum conditions")
}
