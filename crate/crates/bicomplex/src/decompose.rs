//! The inverse problem: recover the multiset of squares and zigzags of a
//! valid complex, and predict every invariant of a multiset by counting
//! rules alone.
//!
//! Squares are read off from the ranks of the composite differential; even
//! zigzag multiplicities from the page differentials of the two spectral
//! sequences; odd multiplicities from alternating sums of corner-truncated
//! cohomology numbers, which vanish on even zigzags and telescope to one
//! anchor per degree.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cohomology::{
    bigolin_row, dolbeault, invariant_bundle_in, nine_invariants, InvariantBundle, PageData,
    VarouchasGroup, Window,
};
use crate::complex::{bd, Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::pieces::PieceVector;
use crate::shape::{ComponentPattern, IrreducibleShape, Multiset, ZigzagPiece};
use crate::spectral::{Frolicher, TotalComplex};

/// Number of squares with lower-left corner at each bidegree: the rank of
/// the composite differential out of that bidegree.
pub fn square_mults(c: &DoubleComplex) -> BTreeMap<Bidegree, i64> {
    let mut out = BTreeMap::new();
    for cell in c.support() {
        let rank = c.h(cell.shifted(0, 1)).mul(&c.v(cell)).unwrap().rank();
        if rank > 0 {
            out.insert(cell, rank as i64);
        }
    }
    out
}

fn even_mults_std(c: &DoubleComplex) -> BTreeMap<(Bidegree, u32), i64> {
    let mut out = BTreeMap::new();
    let b = c.bounding_box();
    if b.is_empty() {
        return out;
    }
    // Each horizontal even zigzag of length 2l contributes 2 to the total
    // page-1 dimension and nothing to total cohomology, so the difference
    // counts how many remain to be found.
    let tot = TotalComplex::new(c);
    let betti_total: usize = (b.total_min()..=b.total_max())
        .map(|k| tot.cohomology_dim(k))
        .sum();
    let page1_total: usize = b.cells().map(|cell| dolbeault(c, cell.p, cell.q)).sum();
    debug_assert!(page1_total >= betti_total && (page1_total - betti_total) % 2 == 0);
    let mut remaining = (page1_total - betti_total) / 2;
    if remaining == 0 {
        return out;
    }
    let f = Frolicher::new(c);
    for l in 1..=(f.p_width() as i32) {
        if remaining == 0 {
            break;
        }
        for cell in b.cells() {
            let rank = f.rank_d(l, cell.p, cell.q);
            if rank > 0 {
                out.insert((cell, l as u32), rank as i64);
                remaining -= rank;
            }
        }
    }
    debug_assert_eq!(remaining, 0);
    out
}

/// Multiplicity of each horizontal even zigzag `Z^{a,b}_{1,l}`: the rank of
/// the page-l differential at its left end.
pub fn even_horizontal_mults(c: &DoubleComplex) -> BTreeMap<(Bidegree, u32), i64> {
    even_mults_std(c)
}

/// Multiplicities of vertical even zigzags, via the transposed complex.
pub fn even_vertical_mults(c: &DoubleComplex) -> BTreeMap<(Bidegree, u32), i64> {
    even_mults_std(&c.transpose())
        .into_iter()
        .map(|((cell, l), m)| ((cell.swapped(), l), m))
        .collect()
}

/// Multiplicity of every odd zigzag `Z^{p,q}_k`, keyed by `((p,q), k)`.
///
/// The corner-truncated numbers are computed after translating the complex
/// into the first quadrant (they are blind to the shift and the counting
/// identities hold verbatim there); anchors are shifted back afterwards.
pub fn odd_mults(c: &DoubleComplex) -> Result<BTreeMap<(Bidegree, i32), i64>> {
    let b = c.bounding_box();
    if b.is_empty() {
        return Ok(BTreeMap::new());
    }
    let (dp, dq) = (-b.p_min, -b.q_min);
    let shifted = c.translate(dp, dq);
    let sb = shifted.bounding_box();
    let t_min = sb.total_min();
    let t_max = sb.total_max();
    // Truncated cohomology for every corner in the grown box, for the
    // degrees the finite differences consume.
    let corners: Vec<Bidegree> = (-1..=sb.p_max)
        .flat_map(|p| (-1..=sb.q_max).map(move |q| bd(p, q)))
        .collect();
    let grid: BTreeMap<Bidegree, Vec<usize>> = corners
        .par_iter()
        .map(|&corner| {
            (corner, bigolin_row(&shifted, corner.p, corner.q, t_min - 1, t_max - 1))
        })
        .collect();
    let h = |p: i32, q: i32, k: i32| -> i64 {
        if k < t_min - 1 || k > t_max - 1 {
            return 0;
        }
        grid[&bd(p, q)][(k - (t_min - 1)) as usize] as i64
    };
    let mut out = BTreeMap::new();
    for p in 0..=sb.p_max {
        for q in 0..=sb.q_max {
            // s_k = h~^k - h~^{k-1} + ... telescopes to the count of
            // anchors in degree k+1.
            let mut s = 0i64;
            for k in (t_min - 1)..=(t_max - 1) {
                let htilde = h(p - 1, q - 1, k) - h(p - 1, q, k) - h(p, q - 1, k) + h(p, q, k);
                s = htilde - s;
                if s < 0 {
                    return Err(Error::Integrity(format!(
                        "negative odd multiplicity at ({},{}) degree {}",
                        p - dp,
                        q - dq,
                        k + 1
                    )));
                }
                if s > 0 {
                    out.insert((bd(p - dp, q - dq), k + 1 - dp - dq), s);
                }
            }
        }
    }
    Ok(out)
}

/// Full decomposition of a valid complex into squares and zigzags. The
/// dimension bookkeeping is verified cell by cell; failure signals an
/// invalid complex.
pub fn decompose(c: &DoubleComplex) -> Result<Multiset> {
    let mut m = Multiset::new();
    for (cell, mult) in square_mults(c) {
        m.add(IrreducibleShape::square(cell.p, cell.q), mult);
    }
    for ((cell, l), mult) in even_horizontal_mults(c) {
        m.add(IrreducibleShape::even_h(cell.p, cell.q, l), mult);
    }
    for ((cell, l), mult) in even_vertical_mults(c) {
        m.add(IrreducibleShape::even_v(cell.p, cell.q, l), mult);
    }
    for ((cell, k), mult) in odd_mults(c)? {
        m.add(IrreducibleShape::odd(cell.p, cell.q, k), mult);
    }
    let mut expected: BTreeMap<Bidegree, i64> =
        c.dims().iter().map(|(&cell, &d)| (cell, d as i64)).collect();
    expected.retain(|_, &mut d| d != 0);
    if m.footprint() != expected {
        return Err(Error::Integrity(
            "decomposition does not account for the dimensions of the complex".into(),
        ));
    }
    Ok(m)
}

/// Classify the zigzag components of a multiset at one bidegree by their
/// local arrow pattern. Squares are not pieces and are skipped.
pub fn piece_counts(m: &Multiset, p: i32, q: i32) -> Result<PieceVector> {
    if !m.is_nonnegative() {
        return Err(Error::Domain("piece counts need non-negative multiplicities".into()));
    }
    let cell = bd(p, q);
    let mut counts = PieceVector::default();
    for (shape, mult) in m.iter() {
        if shape.is_square() {
            continue;
        }
        for (c2, pattern) in shape.components() {
            if c2 == cell {
                if let ComponentPattern::Piece(piece) = pattern {
                    counts.0[piece.index()] += mult as u64;
                }
            }
        }
    }
    Ok(counts)
}

fn piece_contributions(
    bundle: &mut InvariantBundle,
    cell: Bidegree,
    piece: ZigzagPiece,
    mult: usize,
) {
    let bump = |map: &mut BTreeMap<Bidegree, usize>| {
        *map.entry(cell).or_insert(0) += mult;
    };
    if !piece.has_outgoing() {
        bump(&mut bundle.bott_chern);
    }
    if !piece.has_incoming() {
        bump(&mut bundle.aeppli);
    }
    if !piece.has_vertical() {
        bump(&mut bundle.dolbeault);
    }
    if !piece.has_horizontal() {
        bump(&mut bundle.conj_dolbeault);
    }
    use VarouchasGroup::*;
    use ZigzagPiece::*;
    let groups: &[VarouchasGroup] = match piece {
        Dot => &[],
        InBoth => &[A, B, D],
        InV => &[D],
        InH => &[B],
        OutV => &[C],
        OutH => &[E],
        OutBoth => &[C, E, F],
    };
    for &g in groups {
        *bundle.varouchas.entry((g, cell)).or_insert(0) += mult;
    }
}

struct PageAccumulator {
    r_max: i32,
    dims: BTreeMap<Bidegree, Vec<usize>>,
    ranks: BTreeMap<Bidegree, Vec<usize>>,
    stable: BTreeMap<Bidegree, usize>,
}

impl PageAccumulator {
    fn new(r_max: i32) -> Self {
        PageAccumulator {
            r_max,
            dims: BTreeMap::new(),
            ranks: BTreeMap::new(),
            stable: BTreeMap::new(),
        }
    }

    fn add_dims(&mut self, cell: Bidegree, r_from: i32, r_to: i32, mult: usize) {
        let seq = self.dims.entry(cell).or_insert_with(|| vec![0; self.r_max as usize]);
        for r in r_from..=r_to.min(self.r_max) {
            seq[r as usize - 1] += mult;
        }
    }

    fn add_rank(&mut self, cell: Bidegree, r: i32, mult: usize) {
        if r <= self.r_max {
            let seq = self.ranks.entry(cell).or_insert_with(|| vec![0; self.r_max as usize]);
            seq[r as usize - 1] += mult;
        }
    }

    fn add_stable(&mut self, cell: Bidegree, mult: usize) {
        self.add_dims(cell, 1, self.r_max, mult);
        *self.stable.entry(cell).or_insert(0) += mult;
    }

    fn finish(self) -> PageData {
        let mut data = PageData::default();
        let mut cells: Vec<Bidegree> = self.dims.keys().copied().collect();
        cells.extend(self.ranks.keys().copied());
        cells.sort();
        cells.dedup();
        let zero = vec![0; self.r_max as usize];
        for cell in cells {
            let dims = self.dims.get(&cell).unwrap_or(&zero);
            let ranks = self.ranks.get(&cell).unwrap_or(&zero);
            let mut seq: Vec<(usize, usize)> =
                dims.iter().zip(ranks.iter()).map(|(&d, &r)| (d, r)).collect();
            let stable = self.stable.get(&cell).copied().unwrap_or(0);
            while seq.last() == Some(&(stable, 0)) {
                seq.pop();
            }
            if !seq.is_empty() {
                data.pages.insert(cell, seq);
            }
            if stable > 0 {
                data.stable.insert(cell, stable);
            }
        }
        data
    }
}

/// Predict the full invariant bundle of a non-negative multiset without
/// building any matrices, over an explicit window.
pub fn predict_invariants_in(m: &Multiset, window: &Window) -> Result<InvariantBundle> {
    if !m.is_nonnegative() {
        return Err(Error::Domain("cannot predict invariants of a formal difference".into()));
    }
    let mut bundle = InvariantBundle::default();
    let mut std_pages = PageAccumulator::new(window.r_max);
    let mut conj_pages = PageAccumulator::new(window.r_max);

    for (shape, mult_i) in m.iter() {
        let mult = mult_i as usize;
        match *shape {
            IrreducibleShape::Odd { p, q, k } => {
                *bundle.betti.entry(k).or_insert(0) += mult;
                // The two one-sided survivors anchor the stable pages.
                std_pages.add_stable(bd(p, k - p), mult);
                conj_pages.add_stable(bd(k - q, q), mult);
            }
            IrreducibleShape::EvenH { p, q, l } => {
                let l = l as i32;
                std_pages.add_dims(bd(p, q), 1, l, mult);
                std_pages.add_dims(bd(p + l, q - l + 1), 1, l, mult);
                std_pages.add_rank(bd(p, q), l, mult);
            }
            IrreducibleShape::EvenV { p, q, l } => {
                let l = l as i32;
                conj_pages.add_dims(bd(p, q), 1, l, mult);
                conj_pages.add_dims(bd(p - l + 1, q + l), 1, l, mult);
                conj_pages.add_rank(bd(p, q), l, mult);
            }
            IrreducibleShape::Square { .. } => {}
        }
        if !shape.is_square() {
            for (cell, pattern) in shape.components() {
                if let ComponentPattern::Piece(piece) = pattern {
                    piece_contributions(&mut bundle, cell, piece, mult);
                }
            }
        }
    }
    bundle.frolicher_std = std_pages.finish();
    bundle.frolicher_conj = conj_pages.finish();

    // Corner-truncated numbers by the per-shape counting rules (exact for
    // first-quadrant shapes over the grown window).
    let corner_box = window.cells.grown(1);
    if !corner_box.is_empty() {
        for corner in corner_box.cells() {
            for k in (window.k_min - 1)..=(window.k_max + 1) {
                let mut total = 0i64;
                for (shape, mult) in m.iter() {
                    let hit = match *shape {
                        IrreducibleShape::Odd { p, q, k: j } => {
                            (j == k && p <= corner.p && q <= corner.q)
                                || (j == k + 1 && p > corner.p && q > corner.q)
                        }
                        IrreducibleShape::EvenH { p, q, l } => {
                            p + q == k && p <= corner.p && corner.p < p + l as i32
                        }
                        IrreducibleShape::EvenV { p, q, l } => {
                            p + q == k && q <= corner.q && corner.q < q + l as i32
                        }
                        IrreducibleShape::Square { .. } => false,
                    };
                    if hit {
                        total += mult;
                    }
                }
                if total > 0 {
                    bundle.bigolin.insert((k, corner), total as usize);
                }
            }
        }
    }
    // Drop zero entries for comparability with measured bundles.
    bundle.betti.retain(|_, &mut v| v > 0);
    bundle.dolbeault.retain(|_, &mut v| v > 0);
    bundle.conj_dolbeault.retain(|_, &mut v| v > 0);
    bundle.bott_chern.retain(|_, &mut v| v > 0);
    bundle.aeppli.retain(|_, &mut v| v > 0);
    bundle.varouchas.retain(|_, &mut v| v > 0);
    Ok(bundle)
}

/// Predict the invariants over the multiset's own support window.
pub fn predict_invariants(m: &Multiset) -> Result<InvariantBundle> {
    predict_invariants_in(m, &Window::for_box(&m.bounding_box()))
}

/// Equal zigzag multiplicities (squares ignored).
pub fn is_quasi_isomorphic(c1: &DoubleComplex, c2: &DoubleComplex) -> Result<bool> {
    Ok(decompose(c1)?.without_squares() == decompose(c2)?.without_squares())
}

/// Equal one-sided, Bott-Chern, Aeppli, and all six refined cohomologies at
/// every bidegree.
pub fn is_locally_similar(c1: &DoubleComplex, c2: &DoubleComplex) -> bool {
    let b = c1.bounding_box().union(&c2.bounding_box());
    let cells: Vec<Bidegree> = b.cells().collect();
    cells
        .iter()
        .all(|cell| nine_invariants(c1, cell.p, cell.q) == nine_invariants(c2, cell.p, cell.q))
}

/// Measured bundle of the canonical complex of a multiset, over the
/// multiset's window (the comparison target for `predict_invariants`).
pub fn measured_bundle(m: &Multiset) -> Result<InvariantBundle> {
    let c = crate::shape::synthesize(m)?;
    Ok(invariant_bundle_in(&c, &Window::for_box(&m.bounding_box())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::synthesize;

    fn ms(shapes: impl IntoIterator<Item = IrreducibleShape>) -> Multiset {
        Multiset::from_shapes(shapes)
    }

    #[test]
    fn square_mults_examples() {
        let c = synthesize(&ms([IrreducibleShape::square(1, 1)])).unwrap();
        assert_eq!(square_mults(&c), BTreeMap::from([(bd(1, 1), 1)]));
        let minimal = synthesize(&ms([
            IrreducibleShape::odd(0, 1, 3),
            IrreducibleShape::even_h(0, 1, 2),
        ]))
        .unwrap();
        assert!(square_mults(&minimal).is_empty());
    }

    #[test]
    fn even_mults_examples() {
        let c = synthesize(&ms([IrreducibleShape::even_h(0, 1, 2)])).unwrap();
        assert_eq!(even_horizontal_mults(&c), BTreeMap::from([((bd(0, 1), 2), 1)]));
        assert!(even_vertical_mults(&c).is_empty());

        let v = synthesize(&ms([IrreducibleShape::even_v(1, 0, 2)])).unwrap();
        assert_eq!(even_vertical_mults(&v), BTreeMap::from([((bd(1, 0), 2), 1)]));
        assert!(even_horizontal_mults(&v).is_empty());

        let odd = synthesize(&ms([IrreducibleShape::odd(2, 2, 2)])).unwrap();
        assert!(even_horizontal_mults(&odd).is_empty());
    }

    #[test]
    fn even_mults_of_the_short_long_fixture_pair() {
        // Eight length-2 zigzags: four horizontal, four vertical.
        let left = synthesize(&crate::formal::bigolin_kernel_a_left()).unwrap();
        let h = even_horizontal_mults(&left);
        assert_eq!(h.len(), 4);
        assert!(h.iter().all(|(&(_, l), &m)| l == 1 && m == 1));
        let v = even_vertical_mults(&left);
        assert_eq!(v.len(), 4);

        // The partner complex pairs them into length-4 zigzags.
        let right = synthesize(&crate::formal::bigolin_kernel_a_right()).unwrap();
        assert_eq!(
            even_vertical_mults(&right),
            BTreeMap::from([((bd(1, 0), 2), 1), ((bd(3, 1), 2), 1)])
        );
        let sq = synthesize(&ms([IrreducibleShape::square(0, 0)])).unwrap();
        assert!(even_vertical_mults(&sq).is_empty());
    }

    #[test]
    fn odd_mults_of_the_sample_complex() {
        let c = synthesize(&ms([
            IrreducibleShape::odd(0, 1, 3),
            IrreducibleShape::odd(3, 1, 3),
            IrreducibleShape::odd(3, 1, 4),
        ]))
        .unwrap();
        let odd = odd_mults(&c).unwrap();
        assert_eq!(
            odd,
            BTreeMap::from([((bd(0, 1), 3), 1), ((bd(3, 1), 3), 1), ((bd(3, 1), 4), 1)])
        );
    }

    #[test]
    fn single_dot_round_trip() {
        let m = ms([IrreducibleShape::dot(2, 1)]);
        let c = synthesize(&m).unwrap();
        assert_eq!(odd_mults(&c).unwrap(), BTreeMap::from([((bd(2, 1), 3), 1)]));
        assert_eq!(decompose(&c).unwrap(), m);
    }

    #[test]
    fn mixed_round_trip() {
        let m = ms([
            IrreducibleShape::odd(2, 2, 2),
            IrreducibleShape::odd(1, 1, 4),
            IrreducibleShape::even_h(0, 3, 2),
            IrreducibleShape::even_v(3, 0, 1),
            IrreducibleShape::square(1, 1),
            IrreducibleShape::dot(0, 0),
        ]);
        let c = synthesize(&m).unwrap();
        assert_eq!(decompose(&c).unwrap(), m);
    }

    #[test]
    fn negative_support_round_trip() {
        let m = ms([
            IrreducibleShape::odd(-2, -1, -3),
            IrreducibleShape::square(-1, -1),
            IrreducibleShape::even_h(-3, 0, 1),
        ]);
        let c = synthesize(&m).unwrap();
        assert_eq!(decompose(&c).unwrap(), m);
    }

    #[test]
    fn predict_matches_measured_on_a_mixed_multiset() {
        let m = ms([
            IrreducibleShape::odd(0, 1, 3),
            IrreducibleShape::odd(2, 2, 2),
            IrreducibleShape::even_h(0, 1, 2),
            IrreducibleShape::even_v(2, 0, 2),
            IrreducibleShape::square(0, 0),
            IrreducibleShape::dot(1, 1),
        ]);
        let predicted = predict_invariants(&m).unwrap();
        let measured = measured_bundle(&m).unwrap();
        assert_eq!(predicted, measured);
    }

    #[test]
    fn quasi_isomorphism_ignores_squares() {
        let a = synthesize(&ms([IrreducibleShape::dot(0, 0)])).unwrap();
        let b = a.direct_sum(&synthesize(&ms([IrreducibleShape::square(2, 2)])).unwrap());
        assert!(is_quasi_isomorphic(&a, &b).unwrap());
        assert!(is_locally_similar(&a, &b));
        let c = synthesize(&ms([IrreducibleShape::dot(1, 0)])).unwrap();
        assert!(!is_quasi_isomorphic(&a, &c).unwrap());
        assert!(!is_locally_similar(&a, &c));
    }

    #[test]
    fn piece_counts_examples() {
        let m = ms([IrreducibleShape::dot(1, 1), IrreducibleShape::square(1, 1)]);
        let counts = piece_counts(&m, 1, 1).unwrap();
        assert_eq!(counts.0, [1, 0, 0, 0, 0, 0, 0]);
        // Interior source of a looking-up zigzag.
        let m = ms([IrreducibleShape::odd(2, 2, 2)]);
        assert_eq!(piece_counts(&m, 0, 1).unwrap().0, [0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(piece_counts(&m, 1, 1).unwrap().0, [0, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn cutting_a_long_zigzag_drops_the_degree() {
        use crate::complex::CutSide;
        let c = synthesize(&ms([IrreducibleShape::odd(4, 4, 5)])).unwrap();
        let cut = c.cut(CutSide::Above, 2).cut(CutSide::Right, 3);
        assert!(cut.validate().is_valid());
        let m = decompose(&cut).unwrap();
        assert_eq!(m, ms([IrreducibleShape::odd(2, 1, 4)]));
    }

    #[test]
    fn cutting_a_looking_down_zigzag_preserves_the_degree() {
        use crate::complex::CutSide;
        let c = synthesize(&ms([IrreducibleShape::odd(0, 0, 3)])).unwrap();
        let cut = c.cut(CutSide::Above, 2);
        let m = decompose(&cut).unwrap();
        assert_eq!(m.iter().count(), 1);
        let (&shape, mult) = m.iter().next().unwrap();
        assert_eq!(mult, 1);
        match shape {
            IrreducibleShape::Odd { k, .. } => assert_eq!(k, 3),
            other => panic!("expected an odd zigzag, got {other}"),
        }
    }
}
