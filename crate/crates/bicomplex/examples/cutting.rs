//! Cuttings zero out a half-plane and induce the differentials on what is
//! left. Cutting odd zigzags moves their total degree in a controlled way;
//! that mechanism is what makes the corner-truncated numbers computable.

use bicomplex::cohomology::{betti, bigolin};
use bicomplex::complex::CutSide;
use bicomplex::decompose::decompose;
use bicomplex::report::render_decomposition;
use bicomplex::shape::{synthesize, IrreducibleShape, Multiset};

fn main() {
    // A length-7 looking-up zigzag of total degree 5.
    let complex =
        synthesize(&Multiset::from_shapes([IrreducibleShape::odd(4, 4, 5)])).unwrap();
    println!("before: {}", render_decomposition(&decompose(&complex).unwrap()));

    let cut = complex.cut(CutSide::Above, 2).cut(CutSide::Right, 3);
    assert!(cut.validate().is_valid());
    println!("after cutting above 2 and right of 3:");
    print!("{}", render_decomposition(&decompose(&cut).unwrap()));
    assert_eq!(betti(&cut, 4), 1);

    // Cutting twice with the same parameters changes nothing.
    assert_eq!(cut.cut(CutSide::Above, 2), cut);

    // The corner-truncated cohomology of a minimal complex is the total
    // cohomology of the matching rectangle cut.
    let sample = synthesize(&Multiset::from_shapes([
        IrreducibleShape::odd(0, 1, 3),
        IrreducibleShape::odd(3, 1, 3),
        IrreducibleShape::odd(3, 1, 4),
    ]))
    .unwrap();
    for (k, p, q) in [(3, 2, 2), (3, 3, 1), (2, 1, 1), (4, 3, 1)] {
        let rect = sample.cut(CutSide::Above, q).cut(CutSide::Right, p);
        assert_eq!(bigolin(&sample, k, p, q), betti(&rect, k));
    }
    println!();
    println!("rectangle cuts reproduce the corner-truncated numbers on a minimal complex");
}
