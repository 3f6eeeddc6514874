//! The seven-piece local model: every zigzag component realizes one of
//! seven arrow patterns, and the nine per-bidegree cohomologies are linear
//! in the piece counts. The 9x7 system below is injective, so the counts
//! can be recovered exactly from the nine values.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::shape::ZigzagPiece;

/// Piece counts at one bidegree, indexed like [`ZigzagPiece::ALL`]:
/// (dot, in-both, in-v, in-h, out-v, out-h, out-both).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct PieceVector(pub [u64; 7]);

impl PieceVector {
    pub fn get(&self, piece: ZigzagPiece) -> u64 {
        self.0[piece.index()]
    }
}

/// Rows in the order (Bott-Chern, Aeppli, one-sided vertical, A..F);
/// columns in the order of [`ZigzagPiece::ALL`]. Row r applied to the
/// pieces present at a bidegree gives invariant r there.
pub const LOCAL_SYSTEM: [[u64; 7]; 9] = [
    [1, 1, 1, 1, 0, 0, 0], // no outgoing arrows
    [1, 0, 0, 0, 1, 1, 1], // no incoming arrows
    [1, 0, 0, 1, 0, 1, 0], // no vertical arrows
    [0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 1],
];

pub fn local_system_matrix() -> ExactMatrix {
    ExactMatrix::from_fn(9, 7, |i, j| Scalar::from_int(LOCAL_SYSTEM[i][j] as i64))
}

/// Apply the system to a piece vector, producing the nine invariants.
pub fn apply_local_system(pieces: &PieceVector) -> [u64; 9] {
    let mut out = [0; 9];
    for (i, row) in LOCAL_SYSTEM.iter().enumerate() {
        out[i] = row.iter().zip(pieces.0.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

/// Exact solve of the 9x7 system: the unique piece configuration producing
/// the nine given values, or an error when no configuration does.
pub fn solve_piece_counts(nine: &[u64; 9]) -> Result<PieceVector> {
    let m = local_system_matrix();
    let rhs: Vec<Scalar> = nine.iter().map(|&v| Scalar::from_int(v as i64)).collect();
    let solution = m
        .solve_unique(&rhs)?
        .ok_or_else(|| Error::Domain("no piece configuration matches the nine values".into()))?;
    use num_traits::{One, Zero};
    let mut counts = [0u64; 7];
    for (i, value) in solution.iter().enumerate() {
        if !value.im.is_zero() || !value.re.denom().is_one() {
            return Err(Error::Domain("piece counts are not integral".into()));
        }
        let n: num_bigint::BigInt = value.re.numer().clone();
        if n.sign() == num_bigint::Sign::Minus {
            return Err(Error::Domain("piece counts are negative".into()));
        }
        counts[i] = u64::try_from(n).map_err(|_| Error::Domain("piece count overflow".into()))?;
    }
    Ok(PieceVector(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::nine_invariants;
    use crate::complex::bd;
    use crate::shape::{synthesize, ComponentPattern, IrreducibleShape, Multiset};

    #[test]
    fn system_has_full_column_rank() {
        assert_eq!(local_system_matrix().rank(), 7);
    }

    #[test]
    fn solve_recovers_every_unit_vector() {
        for i in 0..7 {
            let mut pieces = PieceVector::default();
            pieces.0[i] = 1;
            let nine = apply_local_system(&pieces);
            assert_eq!(solve_piece_counts(&nine).unwrap(), pieces);
        }
        assert_eq!(solve_piece_counts(&[0; 9]).unwrap(), PieceVector::default());
    }

    #[test]
    fn solve_rejects_impossible_values() {
        // A alone is positive but Bott-Chern is zero: no configuration.
        let nine = [0, 0, 0, 1, 0, 0, 0, 0, 0];
        assert!(solve_piece_counts(&nine).is_err());
    }

    /// The frozen system must agree with the cohomology computed from
    /// actual matrices. For each piece, synthesize a zigzag containing a
    /// component with exactly that pattern (alone at its bidegree) and
    /// compare the measured nine values against the matrix column.
    #[test]
    fn system_matches_the_matrix_level_oracle() {
        let up = IrreducibleShape::odd(2, 2, 2);
        let down = IrreducibleShape::odd(0, 0, 2);
        let probes = [
            (IrreducibleShape::dot(1, 1), bd(1, 1), ZigzagPiece::Dot),
            (up, bd(1, 1), ZigzagPiece::InBoth),
            (up, bd(0, 2), ZigzagPiece::InV),
            (up, bd(2, 0), ZigzagPiece::InH),
            (down, bd(2, 0), ZigzagPiece::OutV),
            (down, bd(0, 2), ZigzagPiece::OutH),
            (down, bd(1, 1), ZigzagPiece::OutBoth),
        ];
        for (shape, cell, piece) in probes {
            // The probe cell must carry exactly the claimed pattern.
            let found = shape
                .components()
                .into_iter()
                .find(|&(c, _)| c == cell)
                .unwrap();
            assert_eq!(found.1, ComponentPattern::Piece(piece));
            let c = synthesize(&Multiset::from_shapes([shape])).unwrap();
            let nine = nine_invariants(&c, cell.p, cell.q);
            let expected: Vec<usize> =
                (0..9).map(|r| LOCAL_SYSTEM[r][piece.index()] as usize).collect();
            assert_eq!(nine.to_vec(), expected, "piece {piece:?}");
        }
    }
}
