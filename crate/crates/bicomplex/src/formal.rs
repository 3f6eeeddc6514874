//! Formal combinatorics over multisets: counting independent zigzag classes
//! in a symmetric grid, building formal differences that all cohomologies
//! fail to see, and the named fixture multisets used throughout the tests
//! and examples.

use std::collections::{BTreeMap, BTreeSet};

use crate::cohomology::{InvariantBundle, Window};
use crate::complex::{bd, Bidegree};
use crate::decompose::predict_invariants_in;
use crate::error::{Error, Result};
use crate::shape::{IrreducibleShape, Multiset};

pub use crate::pieces::{solve_piece_counts, PieceVector};

/// A formal difference of square-free multisets. The two sides are kept
/// disjoint and non-negative; squares are dropped on construction since
/// formal classes are taken modulo squares.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalElement {
    pub pos: Multiset,
    pub neg: Multiset,
}

impl FormalElement {
    /// Canonical form of `a - b`: common shapes cancel, squares are dropped.
    pub fn from_difference(a: &Multiset, b: &Multiset) -> FormalElement {
        let diff = a.without_squares().minus(&b.without_squares());
        let mut pos = Multiset::new();
        let mut neg = Multiset::new();
        for (shape, mult) in diff.iter() {
            if mult > 0 {
                pos.add(*shape, mult);
            } else {
                neg.add(*shape, -mult);
            }
        }
        FormalElement { pos, neg }
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }
}

/// Closed form for the number of independent zigzag classes in the
/// `[0,n]^2` grid subject to the two reflection symmetries and the
/// corners-are-dots constraint. Matches the brute-force orbit count of
/// [`enumerate_rank`] and starts 6, 18, 39, 70, 114 from n = 2.
pub fn rank_formula(n: u32) -> Result<u64> {
    match n {
        0 => Err(Error::Domain("grid rank is defined for n >= 1".into())),
        1 => Ok(2),
        n => {
            let n = n as i64;
            let value = ((4 * n * n * n - 4 * n) / 3 + 5 * n * n - 13 + ((n + 1) % 2)) / 4 + 2;
            Ok(value as u64)
        }
    }
}

/// All zigzag shapes (no squares) whose components lie in `[0,n]^2` and
/// avoid the four corner cells.
fn zigzags_avoiding_corners(n: i32) -> Vec<IrreducibleShape> {
    let corners = [bd(0, 0), bd(n, 0), bd(0, n), bd(n, n)];
    let fits = |shape: &IrreducibleShape| {
        shape.cells().iter().all(|c| {
            c.p >= 0 && c.p <= n && c.q >= 0 && c.q <= n && !corners.contains(c)
        })
    };
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            // Dots and both odd orientations.
            for k in 0..=(2 * n) {
                let shape = IrreducibleShape::odd(p, q, k);
                if shape.length() <= (2 * n + 1) as usize && fits(&shape) {
                    out.push(shape);
                }
            }
            for l in 1..=(n as u32) {
                for shape in [IrreducibleShape::even_h(p, q, l), IrreducibleShape::even_v(p, q, l)]
                {
                    if fits(&shape) {
                        out.push(shape);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Total number of zigzags in the corner-free grid, for cross-checking the
/// orbit census: `(4n^3 + 12n^2 - 13n - 21) / 3`.
pub fn zigzag_census(n: u32) -> u64 {
    zigzags_avoiding_corners(n as i32).len() as u64
}

/// Brute-force oracle for [`rank_formula`]: enumerate the corner-free
/// zigzags, act by the Klein four-group generated by the two reflections of
/// the grid, count orbits, and add the two corner-dot classes.
pub fn enumerate_rank(n: u32) -> Result<u64> {
    if !(2..=6).contains(&n) {
        return Err(Error::Domain("orbit enumeration supports 2 <= n <= 6".into()));
    }
    let n = n as i32;
    let shapes = zigzags_avoiding_corners(n);
    let mut seen = BTreeSet::new();
    let mut orbits = 0u64;
    for shape in shapes {
        if seen.contains(&shape) {
            continue;
        }
        orbits += 1;
        for image in [
            shape,
            shape.transposed(),
            shape.antitransposed(n),
            shape.rotated(n),
        ] {
            seen.insert(image);
        }
    }
    Ok(orbits + 2)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FillingSign {
    /// Anchors below the diagonal: `p + q < k`.
    Minus,
    /// Anchors above the diagonal: `p + q > k`.
    Plus,
}

/// An integer filling of one side of the degree-`k` antidiagonal whose rows
/// and columns each sum to zero. Such a filling assembles a formal
/// difference of odd zigzags invisible to every cohomological invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FillingMap {
    pub k: i32,
    pub sign: FillingSign,
    pub values: BTreeMap<Bidegree, i64>,
}

impl FillingMap {
    pub fn new(k: i32, sign: FillingSign, values: BTreeMap<Bidegree, i64>) -> Result<Self> {
        let f = FillingMap { k, sign, values };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let mut rows: BTreeMap<i32, i64> = BTreeMap::new();
        let mut cols: BTreeMap<i32, i64> = BTreeMap::new();
        for (&cell, &v) in &self.values {
            let side_ok = match self.sign {
                FillingSign::Minus => cell.total() < self.k,
                FillingSign::Plus => cell.total() > self.k,
            };
            if v != 0 && !side_ok {
                return Err(Error::Domain(format!(
                    "filling value at {cell} lies on the wrong side of degree {}",
                    self.k
                )));
            }
            *rows.entry(cell.q).or_insert(0) += v;
            *cols.entry(cell.p).or_insert(0) += v;
        }
        for (q, sum) in rows {
            if sum != 0 {
                return Err(Error::Domain(format!("row q={q} sums to {sum}, expected 0")));
            }
        }
        for (p, sum) in cols {
            if sum != 0 {
                return Err(Error::Domain(format!("column p={p} sums to {sum}, expected 0")));
            }
        }
        Ok(())
    }

    /// The formal difference of odd zigzags `Z^{p,q}_k` weighted by the
    /// filling; positive weights on one side, negative on the other.
    pub fn kernel_element(&self) -> Result<FormalElement> {
        self.check()?;
        let mut pos = Multiset::new();
        let mut neg = Multiset::new();
        for (&cell, &v) in &self.values {
            if v > 0 {
                pos.add(IrreducibleShape::odd(cell.p, cell.q, self.k), v);
            } else if v < 0 {
                neg.add(IrreducibleShape::odd(cell.p, cell.q, self.k), -v);
            }
        }
        Ok(FormalElement { pos, neg })
    }
}

/// Predicted bundles of both sides of a formal element over their common
/// window, plus whether every chi-array entry agrees.
pub fn chi_difference(e: &FormalElement) -> Result<(InvariantBundle, InvariantBundle, bool)> {
    let window = Window::for_box(&e.pos.bounding_box().union(&e.neg.bounding_box()));
    let pos = predict_invariants_in(&e.pos, &window)?;
    let neg = predict_invariants_in(&e.neg, &window)?;
    let equal = pos.chi_eq(&neg);
    Ok((pos, neg, equal))
}

fn shapes(list: &[IrreducibleShape]) -> Multiset {
    Multiset::from_shapes(list.iter().copied())
}

/// The small three-zigzag complex used as a running sample: two odd
/// zigzags of degree 3 (lengths 5 and 3) and a dot of degree 4.
pub fn sample() -> Multiset {
    shapes(&[
        IrreducibleShape::odd(0, 1, 3),
        IrreducibleShape::odd(3, 1, 3),
        IrreducibleShape::odd(3, 1, 4),
    ])
}

/// The positive side of the generator of the chi-kernel in the 3x3 grid:
/// two length-5 odd zigzags and four dots around the center.
pub fn chi_kernel_pos() -> Multiset {
    shapes(&[
        IrreducibleShape::odd(2, 2, 2),
        IrreducibleShape::odd(1, 1, 4),
        IrreducibleShape::dot(1, 1),
        IrreducibleShape::dot(2, 1),
        IrreducibleShape::dot(1, 2),
        IrreducibleShape::dot(2, 2),
    ])
}

/// The negative side: six length-3 odd zigzags with the same chi-array.
pub fn chi_kernel_neg() -> Multiset {
    shapes(&[
        IrreducibleShape::odd(1, 2, 2),
        IrreducibleShape::odd(2, 1, 2),
        IrreducibleShape::odd(1, 2, 4),
        IrreducibleShape::odd(2, 1, 4),
        IrreducibleShape::odd(2, 2, 3),
        IrreducibleShape::odd(1, 1, 3),
    ])
}

/// First generator pair of the kernel of the corner-truncated numbers in
/// the 3x3 grid: eight length-2 zigzags versus four length-4 ones.
pub fn bigolin_kernel_a_left() -> Multiset {
    shapes(&[
        IrreducibleShape::even_v(0, 1, 1),
        IrreducibleShape::even_h(0, 1, 1),
        IrreducibleShape::even_v(1, 0, 1),
        IrreducibleShape::even_h(1, 0, 1),
        IrreducibleShape::even_h(1, 3, 1),
        IrreducibleShape::even_v(2, 2, 1),
        IrreducibleShape::even_h(2, 2, 1),
        IrreducibleShape::even_v(3, 1, 1),
    ])
}

pub fn bigolin_kernel_a_right() -> Multiset {
    shapes(&[
        IrreducibleShape::even_h(0, 1, 2),
        IrreducibleShape::even_v(1, 0, 2),
        IrreducibleShape::even_h(1, 3, 2),
        IrreducibleShape::even_v(3, 1, 2),
    ])
}

/// Second generator pair, living around the center of the grid.
pub fn bigolin_kernel_b_left() -> Multiset {
    shapes(&[
        IrreducibleShape::even_h(0, 2, 1),
        IrreducibleShape::even_h(1, 2, 1),
        IrreducibleShape::even_v(1, 2, 1),
        IrreducibleShape::even_v(1, 1, 1),
        IrreducibleShape::even_h(1, 1, 1),
        IrreducibleShape::even_h(2, 1, 1),
        IrreducibleShape::even_v(2, 1, 1),
        IrreducibleShape::even_v(2, 0, 1),
    ])
}

pub fn bigolin_kernel_b_right() -> Multiset {
    shapes(&[
        IrreducibleShape::even_h(0, 2, 2),
        IrreducibleShape::even_v(2, 0, 2),
        IrreducibleShape::even_h(1, 2, 2),
        IrreducibleShape::even_v(2, 1, 2),
    ])
}

/// A pair of complexes in the 4x4 grid with identical corner-truncated,
/// total, one-sided, Bott-Chern, Aeppli, and refined cohomologies but
/// different even-zigzag multiplicities. Left: eight length-4 zigzags.
pub fn dim4_left() -> Multiset {
    shapes(&[
        IrreducibleShape::even_h(0, 3, 2),
        IrreducibleShape::even_v(2, 2, 2),
        IrreducibleShape::even_v(3, 0, 2),
        IrreducibleShape::even_h(2, 2, 2),
        IrreducibleShape::even_v(2, 1, 2),
        IrreducibleShape::even_v(3, 1, 2),
        IrreducibleShape::even_h(1, 2, 2),
        IrreducibleShape::even_h(1, 3, 2),
    ])
}

/// Right: four length-6 zigzags and four length-2 ones.
pub fn dim4_right() -> Multiset {
    shapes(&[
        IrreducibleShape::even_h(0, 3, 3),
        IrreducibleShape::even_v(3, 0, 3),
        IrreducibleShape::even_h(1, 3, 3),
        IrreducibleShape::even_v(3, 1, 3),
        IrreducibleShape::even_h(1, 2, 1),
        IrreducibleShape::even_h(2, 2, 1),
        IrreducibleShape::even_v(2, 2, 1),
        IrreducibleShape::even_v(2, 1, 1),
    ])
}

/// All named fixture multisets, by a stable name usable from the CLI.
pub fn fixtures() -> BTreeMap<&'static str, Multiset> {
    BTreeMap::from([
        ("sample", sample()),
        ("chi_pos", chi_kernel_pos()),
        ("chi_neg", chi_kernel_neg()),
        ("bigolin3a_left", bigolin_kernel_a_left()),
        ("bigolin3a_right", bigolin_kernel_a_right()),
        ("bigolin3b_left", bigolin_kernel_b_left()),
        ("bigolin3b_right", bigolin_kernel_b_right()),
        ("dim4_left", dim4_left()),
        ("dim4_right", dim4_right()),
    ])
}
