//! Bounded double complexes with exact matrix differentials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::ExactMatrix;

/// A position in the bigraded plane. Negative coordinates are allowed;
/// cuttings and duality arguments need them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

pub fn bd(p: i32, q: i32) -> Bidegree {
    Bidegree { p, q }
}

impl Bidegree {
    pub fn total(&self) -> i32 {
        self.p + self.q
    }

    pub fn shifted(&self, dp: i32, dq: i32) -> Bidegree {
        bd(self.p + dp, self.q + dq)
    }

    pub fn swapped(&self) -> Bidegree {
        bd(self.q, self.p)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Inclusive bounding box of a support, with the total-degree range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Box2 {
    pub p_min: i32,
    pub p_max: i32,
    pub q_min: i32,
    pub q_max: i32,
}

impl Box2 {
    pub fn empty() -> Self {
        Box2 { p_min: 0, p_max: -1, q_min: 0, q_max: -1 }
    }

    pub fn is_empty(&self) -> bool {
        self.p_min > self.p_max || self.q_min > self.q_max
    }

    pub fn of(cells: impl IntoIterator<Item = Bidegree>) -> Self {
        let mut b = Box2::empty();
        for c in cells {
            b.insert(c);
        }
        b
    }

    pub fn insert(&mut self, c: Bidegree) {
        if self.is_empty() {
            *self = Box2 { p_min: c.p, p_max: c.p, q_min: c.q, q_max: c.q };
        } else {
            self.p_min = self.p_min.min(c.p);
            self.p_max = self.p_max.max(c.p);
            self.q_min = self.q_min.min(c.q);
            self.q_max = self.q_max.max(c.q);
        }
    }

    pub fn union(&self, other: &Box2) -> Box2 {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Box2 {
            p_min: self.p_min.min(other.p_min),
            p_max: self.p_max.max(other.p_max),
            q_min: self.q_min.min(other.q_min),
            q_max: self.q_max.max(other.q_max),
        }
    }

    pub fn grown(&self, by: i32) -> Box2 {
        if self.is_empty() {
            return *self;
        }
        Box2 {
            p_min: self.p_min - by,
            p_max: self.p_max + by,
            q_min: self.q_min - by,
            q_max: self.q_max + by,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Bidegree> + '_ {
        let b = *self;
        (b.p_min..=b.p_max).flat_map(move |p| (b.q_min..=b.q_max).map(move |q| bd(p, q)))
    }

    pub fn total_min(&self) -> i32 {
        self.p_min + self.q_min
    }

    pub fn total_max(&self) -> i32 {
        self.p_max + self.q_max
    }

    pub fn p_width(&self) -> usize {
        if self.is_empty() { 0 } else { (self.p_max - self.p_min + 1) as usize }
    }

    pub fn q_width(&self) -> usize {
        if self.is_empty() { 0 } else { (self.q_max - self.q_min + 1) as usize }
    }
}

/// Which half-plane a cutting keeps is determined by the side name:
/// `Above p` keeps `q <= p`, `Below p` keeps `q > p`, `Right p` keeps
/// `r <= p`, `Left p` keeps `r > p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CutSide {
    Above,
    Below,
    Right,
    Left,
}

impl CutSide {
    fn keeps(&self, cell: Bidegree, degree: i32) -> bool {
        match self {
            CutSide::Above => cell.q <= degree,
            CutSide::Below => cell.q > degree,
            CutSide::Right => cell.p <= degree,
            CutSide::Left => cell.p > degree,
        }
    }
}

/// A bigraded space with two anticommuting square-zero differentials of
/// bidegree (1,0) and (0,1). `del_h[(p,q)]` is the matrix of the horizontal
/// map out of `(p,q)`, `del_v[(p,q)]` the vertical one; absent entries are
/// zero maps. The structure is immutable after construction.
#[derive(Clone, PartialEq)]
pub struct DoubleComplex {
    dims: BTreeMap<Bidegree, usize>,
    del_h: BTreeMap<Bidegree, ExactMatrix>,
    del_v: BTreeMap<Bidegree, ExactMatrix>,
}

/// One failed structural check, located at the source bidegree of the
/// offending composite or matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    HorizontalShape { at: Bidegree, expected: (usize, usize), got: (usize, usize) },
    VerticalShape { at: Bidegree, expected: (usize, usize), got: (usize, usize) },
    HorizontalSquare { at: Bidegree },
    VerticalSquare { at: Bidegree },
    Anticommutation { at: Bidegree },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HorizontalShape { at, expected, got } => write!(
                f,
                "horizontal map at {at} has shape {}x{}, expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            Violation::VerticalShape { at, expected, got } => write!(
                f,
                "vertical map at {at} has shape {}x{}, expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            Violation::HorizontalSquare { at } => {
                write!(f, "horizontal differential does not square to zero at {at}")
            }
            Violation::VerticalSquare { at } => {
                write!(f, "vertical differential does not square to zero at {at}")
            }
            Violation::Anticommutation { at } => {
                write!(f, "differentials do not anticommute at {at}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

impl DoubleComplex {
    pub fn new(
        dims: BTreeMap<Bidegree, usize>,
        del_h: BTreeMap<Bidegree, ExactMatrix>,
        del_v: BTreeMap<Bidegree, ExactMatrix>,
    ) -> Self {
        let dims: BTreeMap<_, _> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let keep = |m: &BTreeMap<Bidegree, ExactMatrix>| {
            m.iter()
                .filter(|(_, mat)| mat.rows() > 0 && mat.cols() > 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect()
        };
        DoubleComplex { del_h: keep(&del_h), del_v: keep(&del_v), dims }
    }

    pub fn empty() -> Self {
        DoubleComplex::new(BTreeMap::new(), BTreeMap::new(), BTreeMap::new())
    }

    pub fn dim(&self, cell: Bidegree) -> usize {
        self.dims.get(&cell).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn del_h_entries(&self) -> &BTreeMap<Bidegree, ExactMatrix> {
        &self.del_h
    }

    pub fn del_v_entries(&self) -> &BTreeMap<Bidegree, ExactMatrix> {
        &self.del_v
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn bounding_box(&self) -> Box2 {
        Box2::of(self.support())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The horizontal map out of `cell`, materialized with the shape the
    /// dimension table dictates. Stored matrices of the wrong shape are
    /// replaced by zero here; `validate` reports them.
    pub fn h(&self, cell: Bidegree) -> ExactMatrix {
        self.materialize(&self.del_h, cell, cell.shifted(1, 0))
    }

    /// The vertical map out of `cell`.
    pub fn v(&self, cell: Bidegree) -> ExactMatrix {
        self.materialize(&self.del_v, cell, cell.shifted(0, 1))
    }

    fn materialize(
        &self,
        table: &BTreeMap<Bidegree, ExactMatrix>,
        cell: Bidegree,
        target: Bidegree,
    ) -> ExactMatrix {
        let shape = (self.dim(target), self.dim(cell));
        match table.get(&cell) {
            Some(m) if (m.rows(), m.cols()) == shape => m.clone(),
            _ => ExactMatrix::zero(shape.0, shape.1),
        }
    }

    /// Every bidegree at which a shape or relation check fails. An empty
    /// report means the complex is a genuine double complex.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&cell, m) in &self.del_h {
            let expected = (self.dim(cell.shifted(1, 0)), self.dim(cell));
            if (m.rows(), m.cols()) != expected {
                violations.push(Violation::HorizontalShape {
                    at: cell,
                    expected,
                    got: (m.rows(), m.cols()),
                });
            }
        }
        for (&cell, m) in &self.del_v {
            let expected = (self.dim(cell.shifted(0, 1)), self.dim(cell));
            if (m.rows(), m.cols()) != expected {
                violations.push(Violation::VerticalShape {
                    at: cell,
                    expected,
                    got: (m.rows(), m.cols()),
                });
            }
        }
        for cell in self.support() {
            if self.dim(cell) == 0 {
                continue;
            }
            let hh = self.h(cell.shifted(1, 0)).mul(&self.h(cell)).unwrap();
            if !hh.is_zero() {
                violations.push(Violation::HorizontalSquare { at: cell });
            }
            let vv = self.v(cell.shifted(0, 1)).mul(&self.v(cell)).unwrap();
            if !vv.is_zero() {
                violations.push(Violation::VerticalSquare { at: cell });
            }
            let hv = self.h(cell.shifted(0, 1)).mul(&self.v(cell)).unwrap();
            let vh = self.v(cell.shifted(1, 0)).mul(&self.h(cell)).unwrap();
            if !hv.add(&vh).unwrap().is_zero() {
                violations.push(Violation::Anticommutation { at: cell });
            }
        }
        violations.sort_by_key(|v| match v {
            Violation::HorizontalShape { at, .. } => (*at, 0),
            Violation::VerticalShape { at, .. } => (*at, 1),
            Violation::HorizontalSquare { at } => (*at, 2),
            Violation::VerticalSquare { at } => (*at, 3),
            Violation::Anticommutation { at } => (*at, 4),
        });
        ValidationReport { violations }
    }

    /// Block-diagonal sum in every bidegree; self occupies the leading block.
    pub fn direct_sum(&self, other: &DoubleComplex) -> DoubleComplex {
        let mut dims = BTreeMap::new();
        for cell in self.support().chain(other.support()) {
            dims.insert(cell, self.dim(cell) + other.dim(cell));
        }
        let block = |a: &ExactMatrix, b: &ExactMatrix| {
            let mut m = ExactMatrix::zero(a.rows() + b.rows(), a.cols() + b.cols());
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
                }
            }
            m
        };
        let mut del_h = BTreeMap::new();
        let mut del_v = BTreeMap::new();
        for (&cell, _) in &dims {
            del_h.insert(cell, block(&self.h(cell), &other.h(cell)));
            del_v.insert(cell, block(&self.v(cell), &other.v(cell)));
        }
        DoubleComplex::new(dims, del_h, del_v)
    }

    /// Zero out the half-plane the cut removes; maps crossing the boundary
    /// become zero maps. Cutting is idempotent for a fixed side and degree.
    pub fn cut(&self, side: CutSide, degree: i32) -> DoubleComplex {
        let keep = |cell: Bidegree| side.keeps(cell, degree);
        let dims: BTreeMap<_, _> = self
            .dims
            .iter()
            .filter(|(&cell, _)| keep(cell))
            .map(|(&cell, &d)| (cell, d))
            .collect();
        let filter_map = |table: &BTreeMap<Bidegree, ExactMatrix>, dp: i32, dq: i32| {
            table
                .iter()
                .filter(|(&cell, _)| keep(cell) && keep(cell.shifted(dp, dq)))
                .map(|(&cell, m)| (cell, m.clone()))
                .collect()
        };
        DoubleComplex::new(dims, filter_map(&self.del_h, 1, 0), filter_map(&self.del_v, 0, 1))
    }

    /// Swap the two gradings and the roles of the differentials. The
    /// anticommutator is symmetric in the two maps, so no sign adjustment
    /// is needed; the result is again a valid double complex.
    pub fn transpose(&self) -> DoubleComplex {
        let dims = self.dims.iter().map(|(&c, &d)| (c.swapped(), d)).collect();
        let del_h = self.del_v.iter().map(|(&c, m)| (c.swapped(), m.clone())).collect();
        let del_v = self.del_h.iter().map(|(&c, m)| (c.swapped(), m.clone())).collect();
        DoubleComplex::new(dims, del_h, del_v)
    }

    /// Shift every bidegree by `(dp, dq)`.
    pub fn translate(&self, dp: i32, dq: i32) -> DoubleComplex {
        let shift = |c: Bidegree| c.shifted(dp, dq);
        DoubleComplex::new(
            self.dims.iter().map(|(&c, &d)| (shift(c), d)).collect(),
            self.del_h.iter().map(|(&c, m)| (shift(c), m.clone())).collect(),
            self.del_v.iter().map(|(&c, m)| (shift(c), m.clone())).collect(),
        )
    }
}

impl fmt::Debug for DoubleComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleComplex{:?}", self.dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{synthesize, IrreducibleShape, Multiset};

    fn square_complex() -> DoubleComplex {
        synthesize(&Multiset::from_shapes([IrreducibleShape::square(0, 0)])).unwrap()
    }

    #[test]
    fn empty_is_valid() {
        assert!(DoubleComplex::empty().validate().is_valid());
    }

    #[test]
    fn square_is_valid_and_breaking_a_sign_is_reported() {
        let c = square_complex();
        assert!(c.validate().is_valid());

        // Flip the sign of the vertical arrow out of (1,0): the composite
        // out of the (0,0) generator no longer cancels.
        let mut del_v = c.del_v_entries().clone();
        del_v.insert(bd(1, 0), ExactMatrix::identity(1));
        let broken = DoubleComplex::new(c.dims().clone(), c.del_h_entries().clone(), del_v);
        let report = broken.validate();
        assert_eq!(report.violations, vec![Violation::Anticommutation { at: bd(0, 0) }]);
    }

    #[test]
    fn direct_sum_dims_add_and_stay_valid() {
        let dot = synthesize(&Multiset::from_shapes([IrreducibleShape::odd(0, 0, 0)])).unwrap();
        let both = dot.direct_sum(&dot);
        assert_eq!(both.dim(bd(0, 0)), 2);
        assert!(both.validate().is_valid());

        let c = square_complex();
        assert_eq!(c.direct_sum(&DoubleComplex::empty()).dims(), c.dims());

        let z = synthesize(&Multiset::from_shapes([IrreducibleShape::even_h(0, 1, 1)])).unwrap();
        let sum = z.direct_sum(&c);
        for (cell, expect) in [(bd(0, 0), 1), (bd(0, 1), 2), (bd(1, 0), 1), (bd(1, 1), 2)] {
            assert_eq!(sum.dim(cell), expect, "at {cell}");
        }
        assert!(sum.validate().is_valid());
    }

    #[test]
    fn cut_is_idempotent_and_nonstrict_cut_is_identity() {
        let c = square_complex();
        let cut = c.cut(CutSide::Above, 0);
        assert_eq!(cut.dims(), c.cut(CutSide::Above, 0).cut(CutSide::Above, 0).dims());
        assert!(cut.validate().is_valid());
        assert_eq!(cut.dim(bd(0, 1)), 0);
        assert_eq!(cut.dim(bd(0, 0)), 1);
        // Non-strict: nothing above q=5 to remove.
        assert_eq!(c.cut(CutSide::Above, 5), c);
    }

    #[test]
    fn transpose_is_valid_involution() {
        let c = square_complex();
        let t = c.transpose();
        assert!(t.validate().is_valid());
        assert_eq!(t.transpose(), c);

        let dot = synthesize(&Multiset::from_shapes([IrreducibleShape::odd(2, 1, 3)])).unwrap();
        assert_eq!(dot.transpose().dim(bd(1, 2)), 1);
    }
}
