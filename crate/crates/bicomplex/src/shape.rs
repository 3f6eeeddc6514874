//! Symbolic irreducible shapes (zigzags and squares), multisets of shapes,
//! and the canonical synthesis of a double complex from a multiset.
//!
//! Odd zigzags are encoded as `Z^{p,q}_k`; the orientation is implied by the
//! anchor: a dot when `p+q = k`, looking up (most components on the higher
//! of its two total degrees, which is `k`) when `p+q > k`, looking down when
//! `p+q < k`. For a looking-up zigzag `p` is the column of the bottom-right
//! component and `q` the row of the top-left one; for a looking-down zigzag
//! `p` is the column of the top-left component and `q` the row of the
//! bottom-right one. Even zigzags `Z^{p,q}_{1,l}` (horizontal, leftmost
//! component at `(p,q)`) and `Z^{p,q}_{2,l}` (vertical, bottom component at
//! `(p,q)`) have length `2l`. All arrows point up or right.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{bd, Bidegree, Box2, DoubleComplex};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// The seven local arrow patterns a zigzag component can realize.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ZigzagPiece {
    Dot,
    InBoth,
    InV,
    InH,
    OutV,
    OutH,
    OutBoth,
}

impl ZigzagPiece {
    pub const ALL: [ZigzagPiece; 7] = [
        ZigzagPiece::Dot,
        ZigzagPiece::InBoth,
        ZigzagPiece::InV,
        ZigzagPiece::InH,
        ZigzagPiece::OutV,
        ZigzagPiece::OutH,
        ZigzagPiece::OutBoth,
    ];

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|p| p == self).unwrap()
    }

    pub fn has_outgoing(&self) -> bool {
        matches!(self, ZigzagPiece::OutV | ZigzagPiece::OutH | ZigzagPiece::OutBoth)
    }

    pub fn has_incoming(&self) -> bool {
        matches!(self, ZigzagPiece::InV | ZigzagPiece::InH | ZigzagPiece::InBoth)
    }

    pub fn has_vertical(&self) -> bool {
        matches!(
            self,
            ZigzagPiece::InV | ZigzagPiece::OutV | ZigzagPiece::InBoth | ZigzagPiece::OutBoth
        )
    }

    pub fn has_horizontal(&self) -> bool {
        matches!(
            self,
            ZigzagPiece::InH | ZigzagPiece::OutH | ZigzagPiece::InBoth | ZigzagPiece::OutBoth
        )
    }
}

/// Local role of a component: a zigzag piece or a square corner.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentPattern {
    Piece(ZigzagPiece),
    SquareCorner(SquareCorner),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SquareCorner {
    LowerLeft,
    LowerRight,
    UpperLeft,
    UpperRight,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    Right,
    Up,
}

/// One arrow of a shape: from `from` in direction `dir` with sign `sign`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub from: Bidegree,
    pub dir: Dir,
    pub sign: i64,
}

impl Arrow {
    pub fn to(&self) -> Bidegree {
        match self.dir {
            Dir::Right => self.from.shifted(1, 0),
            Dir::Up => self.from.shifted(0, 1),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IrreducibleShape {
    /// `Z^{p,q}_k`: dot, looking-up, or looking-down odd zigzag.
    Odd { p: i32, q: i32, k: i32 },
    /// `Z^{p,q}_{1,l}`: horizontal even zigzag, leftmost component `(p,q)`.
    EvenH { p: i32, q: i32, l: u32 },
    /// `Z^{p,q}_{2,l}`: vertical even zigzag, bottom component `(p,q)`.
    EvenV { p: i32, q: i32, l: u32 },
    /// 4-dimensional square with lower-left corner `(p,q)`.
    Square { p: i32, q: i32 },
}

pub use IrreducibleShape::*;

impl IrreducibleShape {
    pub fn odd(p: i32, q: i32, k: i32) -> Self {
        Odd { p, q, k }
    }

    pub fn dot(p: i32, q: i32) -> Self {
        Odd { p, q, k: p + q }
    }

    pub fn even_h(p: i32, q: i32, l: u32) -> Self {
        assert!(l >= 1, "even zigzag length parameter must be >= 1");
        EvenH { p, q, l }
    }

    pub fn even_v(p: i32, q: i32, l: u32) -> Self {
        assert!(l >= 1, "even zigzag length parameter must be >= 1");
        EvenV { p, q, l }
    }

    pub fn square(p: i32, q: i32) -> Self {
        Square { p, q }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, Odd { .. })
    }

    pub fn is_square(&self) -> bool {
        matches!(self, Square { .. })
    }

    /// Total dimension (number of components).
    pub fn length(&self) -> usize {
        match self {
            Odd { p, q, k } => 2 * (p + q - k).unsigned_abs() as usize + 1,
            EvenH { l, .. } | EvenV { l, .. } => 2 * *l as usize,
            Square { .. } => 4,
        }
    }

    /// For odd zigzags the total degree in the `Z^{p,q}_k` sense; for even
    /// zigzags the total degree of the starting component; for squares the
    /// degree of the lower-left corner. Used for report ordering.
    pub fn degree_key(&self) -> i32 {
        match self {
            Odd { k, .. } => *k,
            EvenH { p, q, .. } | EvenV { p, q, .. } | Square { p, q } => p + q,
        }
    }

    /// Components with their local arrow patterns.
    pub fn components(&self) -> Vec<(Bidegree, ComponentPattern)> {
        use ComponentPattern::*;
        match *self {
            Odd { p, q, k } => {
                let m = p + q - k;
                if m == 0 {
                    vec![(bd(p, q), Piece(ZigzagPiece::Dot))]
                } else if m > 0 {
                    // Looking up: sinks on total degree k, sources below.
                    let mut out = Vec::new();
                    for i in 0..=m {
                        let cell = bd(k - q + i, q - i);
                        let piece = if i == 0 {
                            ZigzagPiece::InV
                        } else if i == m {
                            ZigzagPiece::InH
                        } else {
                            ZigzagPiece::InBoth
                        };
                        out.push((cell, Piece(piece)));
                        if i < m {
                            out.push((bd(k - q + i, q - 1 - i), Piece(ZigzagPiece::OutBoth)));
                        }
                    }
                    out
                } else {
                    // Looking down: sources on total degree k, sinks above.
                    let m = -m;
                    let mut out = Vec::new();
                    for i in 0..=m {
                        let cell = bd(p + i, k - p - i);
                        let piece = if i == 0 {
                            ZigzagPiece::OutH
                        } else if i == m {
                            ZigzagPiece::OutV
                        } else {
                            ZigzagPiece::OutBoth
                        };
                        out.push((cell, Piece(piece)));
                        if i < m {
                            out.push((bd(p + i + 1, k - p - i), Piece(ZigzagPiece::InBoth)));
                        }
                    }
                    out
                }
            }
            EvenH { p, q, l } => {
                let l = l as i32;
                let mut out = Vec::new();
                for i in 0..l {
                    let src = if i == 0 { ZigzagPiece::OutH } else { ZigzagPiece::OutBoth };
                    out.push((bd(p + i, q - i), Piece(src)));
                    let sink = if i == l - 1 { ZigzagPiece::InH } else { ZigzagPiece::InBoth };
                    out.push((bd(p + i + 1, q - i), Piece(sink)));
                }
                out
            }
            EvenV { p, q, l } => {
                let l = l as i32;
                let mut out = Vec::new();
                for i in 0..l {
                    let src = if i == 0 { ZigzagPiece::OutV } else { ZigzagPiece::OutBoth };
                    out.push((bd(p - i, q + i), Piece(src)));
                    let sink = if i == l - 1 { ZigzagPiece::InV } else { ZigzagPiece::InBoth };
                    out.push((bd(p - i, q + i + 1), Piece(sink)));
                }
                out
            }
            Square { p, q } => vec![
                (bd(p, q), SquareCorner(self::SquareCorner::LowerLeft)),
                (bd(p + 1, q), SquareCorner(self::SquareCorner::LowerRight)),
                (bd(p, q + 1), SquareCorner(self::SquareCorner::UpperLeft)),
                (bd(p + 1, q + 1), SquareCorner(self::SquareCorner::UpperRight)),
            ],
        }
    }

    /// The arrows of the canonical realization: every zigzag arrow carries
    /// coefficient 1; the square uses (1,1,1,-1) with the -1 on the vertical
    /// arrow out of its lower-right corner, so the two composites across the
    /// diagonal cancel.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        match *self {
            Odd { p, q, k } => {
                let m = p + q - k;
                if m > 0 {
                    for i in 0..m {
                        let src = bd(k - q + i, q - 1 - i);
                        out.push(Arrow { from: src, dir: Dir::Up, sign: 1 });
                        out.push(Arrow { from: src, dir: Dir::Right, sign: 1 });
                    }
                } else if m < 0 {
                    let m = -m;
                    for i in 0..=m {
                        let src = bd(p + i, k - p - i);
                        if i < m {
                            out.push(Arrow { from: src, dir: Dir::Right, sign: 1 });
                        }
                        if i > 0 {
                            out.push(Arrow { from: src, dir: Dir::Up, sign: 1 });
                        }
                    }
                }
            }
            EvenH { p, q, l } => {
                for i in 0..l as i32 {
                    let src = bd(p + i, q - i);
                    out.push(Arrow { from: src, dir: Dir::Right, sign: 1 });
                    if i > 0 {
                        out.push(Arrow { from: src, dir: Dir::Up, sign: 1 });
                    }
                }
            }
            EvenV { p, q, l } => {
                for i in 0..l as i32 {
                    let src = bd(p - i, q + i);
                    out.push(Arrow { from: src, dir: Dir::Up, sign: 1 });
                    if i > 0 {
                        out.push(Arrow { from: src, dir: Dir::Right, sign: 1 });
                    }
                }
            }
            Square { p, q } => {
                out.push(Arrow { from: bd(p, q), dir: Dir::Right, sign: 1 });
                out.push(Arrow { from: bd(p, q), dir: Dir::Up, sign: 1 });
                out.push(Arrow { from: bd(p, q + 1), dir: Dir::Right, sign: 1 });
                out.push(Arrow { from: bd(p + 1, q), dir: Dir::Up, sign: -1 });
            }
        }
        out
    }

    pub fn cells(&self) -> Vec<Bidegree> {
        self.components().into_iter().map(|(c, _)| c).collect()
    }

    /// Image under the reflection across the main diagonal `p = q`.
    pub fn transposed(&self) -> IrreducibleShape {
        match *self {
            Odd { p, q, k } => Odd { p: q, q: p, k },
            EvenH { p, q, l } => EvenV { p: q, q: p, l },
            EvenV { p, q, l } => EvenH { p: q, q: p, l },
            Square { p, q } => Square { p: q, q: p },
        }
    }

    /// Image under the half-turn of the grid `[0,n]^2` (cells map by
    /// `(x,y) -> (n-x, n-y)` and all arrows reverse).
    pub fn rotated(&self, n: i32) -> IrreducibleShape {
        match *self {
            Odd { p, q, k } => Odd { p: n - p, q: n - q, k: 2 * n - k },
            EvenH { p, q, l } => EvenH { p: n - p - l as i32, q: n - q + l as i32 - 1, l },
            EvenV { p, q, l } => EvenV { p: n - p + l as i32 - 1, q: n - q - l as i32, l },
            Square { p, q } => Square { p: n - 1 - p, q: n - 1 - q },
        }
    }

    /// Image under the reflection across the antidiagonal from `(n,0)` to
    /// `(0,n)` (arrows reverse; incoming and outgoing patterns swap).
    pub fn antitransposed(&self, n: i32) -> IrreducibleShape {
        self.transposed().rotated(n)
    }
}

impl fmt::Display for IrreducibleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Odd { p, q, k } => write!(f, "Z^{{{p},{q}}}_{k}"),
            EvenH { p, q, l } => write!(f, "Z^{{{p},{q}}}_{{1,{l}}}"),
            EvenV { p, q, l } => write!(f, "Z^{{{p},{q}}}_{{2,{l}}}"),
            Square { p, q } => write!(f, "S^{{{p},{q}}}"),
        }
    }
}

/// A finitely supported multiset of shapes. Negative multiplicities are
/// allowed so formal differences can be manipulated; operations that build
/// an actual complex insist on non-negative entries.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Multiset {
    entries: BTreeMap<IrreducibleShape, i64>,
}

impl Multiset {
    pub fn new() -> Self {
        Multiset::default()
    }

    pub fn from_shapes(shapes: impl IntoIterator<Item = IrreducibleShape>) -> Self {
        let mut m = Multiset::new();
        for s in shapes {
            m.add(s, 1);
        }
        m
    }

    pub fn add(&mut self, shape: IrreducibleShape, mult: i64) {
        let entry = self.entries.entry(shape).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.entries.remove(&shape);
        }
    }

    pub fn get(&self, shape: &IrreducibleShape) -> i64 {
        self.entries.get(shape).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrreducibleShape, i64)> {
        self.entries.iter().map(|(s, &m)| (s, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&m| m >= 0)
    }

    pub fn shape_count(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn plus(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (s, m) in other.iter() {
            out.add(*s, m);
        }
        out
    }

    pub fn minus(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (s, m) in other.iter() {
            out.add(*s, -m);
        }
        out
    }

    pub fn without_squares(&self) -> Multiset {
        Multiset {
            entries: self
                .entries
                .iter()
                .filter(|(s, _)| !s.is_square())
                .map(|(s, &m)| (*s, m))
                .collect(),
        }
    }

    /// Per-bidegree component counts of the whole multiset.
    pub fn footprint(&self) -> BTreeMap<Bidegree, i64> {
        let mut out = BTreeMap::new();
        for (shape, mult) in self.iter() {
            for cell in shape.cells() {
                *out.entry(cell).or_insert(0) += mult;
            }
        }
        out.retain(|_, &mut m| m != 0);
        out
    }

    pub fn bounding_box(&self) -> Box2 {
        Box2::of(self.iter().flat_map(|(s, _)| s.cells()))
    }

    pub fn map_shapes(&self, f: impl Fn(&IrreducibleShape) -> IrreducibleShape) -> Multiset {
        let mut out = Multiset::new();
        for (s, m) in self.iter() {
            out.add(f(s), m);
        }
        out
    }
}

impl FromIterator<(IrreducibleShape, i64)> for Multiset {
    fn from_iter<T: IntoIterator<Item = (IrreducibleShape, i64)>>(iter: T) -> Self {
        let mut m = Multiset::new();
        for (s, mult) in iter {
            m.add(s, mult);
        }
        m
    }
}

/// Build the canonical complex realizing a non-negative multiset: one basis
/// vector per shape component, arrows as in `IrreducibleShape::arrows`.
pub fn synthesize(m: &Multiset) -> Result<DoubleComplex> {
    if !m.is_nonnegative() {
        return Err(Error::Domain(
            "cannot synthesize a multiset with negative multiplicities".into(),
        ));
    }
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    // Index of each (shape instance, cell) in its bidegree block.
    let mut slots: Vec<(IrreducibleShape, BTreeMap<Bidegree, usize>)> = Vec::new();
    for (shape, mult) in m.iter() {
        for _ in 0..mult {
            let mut local = BTreeMap::new();
            for cell in shape.cells() {
                let d = dims.entry(cell).or_insert(0);
                local.insert(cell, *d);
                *d += 1;
            }
            slots.push((*shape, local));
        }
    }
    let mut del_h: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut del_v: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let dim = |dims: &BTreeMap<Bidegree, usize>, cell: Bidegree| {
        dims.get(&cell).copied().unwrap_or(0)
    };
    for (shape, local) in &slots {
        for arrow in shape.arrows() {
            let from = arrow.from;
            let to = arrow.to();
            let table = match arrow.dir {
                Dir::Right => &mut del_h,
                Dir::Up => &mut del_v,
            };
            let mat = table
                .entry(from)
                .or_insert_with(|| ExactMatrix::zero(dim(&dims, to), dim(&dims, from)));
            mat.set(local[&to], local[&from], Scalar::from_int(arrow.sign));
        }
    }
    Ok(DoubleComplex::new(dims, del_h, del_v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_zigzag_expansions() {
        // A dot.
        assert_eq!(
            IrreducibleShape::odd(1, 1, 2).components(),
            vec![(bd(1, 1), ComponentPattern::Piece(ZigzagPiece::Dot))]
        );
        // Looking up, length 5, top-left at (0,2) and bottom-right at (2,0).
        let up = IrreducibleShape::odd(2, 2, 2);
        let cells = up.cells();
        assert_eq!(cells, vec![bd(0, 2), bd(0, 1), bd(1, 1), bd(1, 0), bd(2, 0)]);
        // Looking down, same staircase band shifted to the sink diagonal.
        let down = IrreducibleShape::odd(0, 0, 2);
        assert_eq!(down.cells(), vec![bd(0, 2), bd(1, 2), bd(1, 1), bd(2, 1), bd(2, 0)]);
        assert_eq!(up.length(), 5);
        assert_eq!(down.length(), 5);
    }

    #[test]
    fn even_zigzag_expansion_matches_patterns() {
        use ComponentPattern::Piece;
        use ZigzagPiece::*;
        let z = IrreducibleShape::even_h(0, 1, 2);
        assert_eq!(
            z.components(),
            vec![
                (bd(0, 1), Piece(OutH)),
                (bd(1, 1), Piece(InBoth)),
                (bd(1, 0), Piece(OutBoth)),
                (bd(2, 0), Piece(InH)),
            ]
        );
        let zv = IrreducibleShape::even_v(1, 0, 2);
        assert_eq!(zv.cells(), vec![bd(1, 0), bd(1, 1), bd(0, 1), bd(0, 2)]);
    }

    #[test]
    fn synthesize_square_and_sample_dims() {
        let sq = synthesize(&Multiset::from_shapes([IrreducibleShape::square(1, 1)])).unwrap();
        for cell in [bd(1, 1), bd(2, 1), bd(1, 2), bd(2, 2)] {
            assert_eq!(sq.dim(cell), 1);
        }
        assert!(sq.validate().is_valid());
        // The composite across the diagonal of the square is +-1.
        let hv = sq.h(bd(1, 2)).mul(&sq.v(bd(1, 1))).unwrap();
        assert_eq!(hv.rank(), 1);

        let sample = synthesize(&Multiset::from_shapes([
            IrreducibleShape::odd(0, 1, 3),
            IrreducibleShape::odd(3, 1, 3),
            IrreducibleShape::odd(3, 1, 4),
        ]))
        .unwrap();
        let expected = [
            (bd(0, 3), 1),
            (bd(1, 3), 1),
            (bd(1, 2), 1),
            (bd(2, 2), 1),
            (bd(2, 1), 2),
            (bd(2, 0), 1),
            (bd(3, 0), 1),
            (bd(3, 1), 1),
        ];
        for (cell, d) in expected {
            assert_eq!(sample.dim(cell), d, "at {cell}");
        }
        assert_eq!(sample.total_dim(), 9);
        assert!(sample.validate().is_valid());
    }

    #[test]
    fn synthesize_rejects_negative() {
        let mut m = Multiset::new();
        m.add(IrreducibleShape::dot(0, 0), -1);
        assert!(synthesize(&m).is_err());
    }

    #[test]
    fn symmetry_actions_permute_components() {
        let n = 3;
        let shapes = [
            IrreducibleShape::odd(2, 2, 2),
            IrreducibleShape::odd(1, 1, 4),
            IrreducibleShape::odd(1, 2, 3),
            IrreducibleShape::even_h(0, 2, 2),
            IrreducibleShape::even_v(2, 0, 1),
            IrreducibleShape::square(1, 1),
            IrreducibleShape::dot(0, 3),
        ];
        for s in shapes {
            let cells: Vec<Bidegree> = s.cells();
            let mut t: Vec<Bidegree> = cells.iter().map(|c| c.swapped()).collect();
            let mut got = s.transposed().cells();
            t.sort();
            got.sort();
            assert_eq!(got, t, "transpose of {s}");

            let mut r: Vec<Bidegree> = cells.iter().map(|c| bd(n - c.p, n - c.q)).collect();
            let mut got = s.rotated(n).cells();
            r.sort();
            got.sort();
            assert_eq!(got, r, "rotation of {s}");

            assert_eq!(s.rotated(n).rotated(n), s);
            assert_eq!(s.transposed().transposed(), s);
            assert_eq!(s.antitransposed(n).antitransposed(n), s);
        }
    }

    #[test]
    fn footprint_matches_synthesized_dims() {
        let m = Multiset::from_shapes([
            IrreducibleShape::even_h(0, 1, 1),
            IrreducibleShape::square(0, 0),
            IrreducibleShape::odd(2, 2, 2),
        ]);
        let c = synthesize(&m).unwrap();
        for (cell, count) in m.footprint() {
            assert_eq!(c.dim(cell) as i64, count, "at {cell}");
        }
    }
}
