//! Synthesize random multisets, scramble the bases, and recover the exact
//! multiset by decomposition.

use bicomplex::corpus::{random_basis_change, random_multiset, rng};
use bicomplex::decompose::decompose;
use bicomplex::report::render_decomposition;
use bicomplex::shape::synthesize;

fn main() {
    let mut rng = rng(2024);
    for round in 0..5 {
        let multiset = random_multiset(&mut rng, 4, 12);
        let complex = synthesize(&multiset).unwrap();

        // The canonical matrices decompose back to the input...
        assert_eq!(decompose(&complex).unwrap(), multiset);

        // ...and so does any bidegree-wise change of basis: multiplicities
        // are isomorphism invariants.
        let scrambled = random_basis_change(&complex, &mut rng);
        assert!(scrambled.validate().is_valid());
        assert_eq!(decompose(&scrambled).unwrap(), multiset);

        println!("round {round}: recovered after a random change of basis");
    }
    let multiset = random_multiset(&mut rng, 4, 12);
    println!();
    print!("{}", render_decomposition(&multiset));
}
