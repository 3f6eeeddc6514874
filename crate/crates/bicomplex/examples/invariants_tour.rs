//! Build a small double complex from symbolic shapes and walk through every
//! invariant the library computes.

use bicomplex::cohomology::{bigolin, invariant_bundle};
use bicomplex::report::{render_bundle, render_diamond};
use bicomplex::shape::{synthesize, IrreducibleShape, Multiset};

fn main() {
    // Two odd zigzags of total degree 3 (lengths 5 and 3) and a dot of
    // degree 4 -- the running sample of the test-suite.
    let multiset = Multiset::from_shapes([
        IrreducibleShape::odd(0, 1, 3),
        IrreducibleShape::odd(3, 1, 3),
        IrreducibleShape::odd(3, 1, 4),
    ]);
    let complex = synthesize(&multiset).unwrap();
    assert!(complex.validate().is_valid());

    println!("dimensions per bidegree:");
    for (cell, dim) in complex.dims() {
        println!("  {cell}: {dim}");
    }

    let bundle = invariant_bundle(&complex);
    println!();
    println!("{}", render_bundle(&bundle));

    // Corner-truncated numbers answer pointwise queries too.
    println!("h^3 at corner (2,2): {}", bigolin(&complex, 3, 2, 2));
    println!("h^3 at corner (0,3): {}", bigolin(&complex, 3, 0, 3));

    println!();
    println!("diamond only:\n{}", render_diamond(&bundle));
}
