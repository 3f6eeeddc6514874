//! Decompose almost-abelian complexes two ways: directly from the matrices
//! and through the weight multiplicities of the shift operator. Both agree,
//! and the closed-form dimension formulas match the matrix-level numbers.

use bicomplex::cohomology::{aeppli, bott_chern, dolbeault};
use bicomplex::decompose::decompose;
use bicomplex::lie::{
    ab_formulas, almost_abelian, ce_complex, predict_decomposition, sl2_multiplicities,
    AlmostAbelianSpec,
};
use bicomplex::report::render_decomposition;

fn main() {
    for ks in [vec![1u32], vec![2], vec![3], vec![2, 2]] {
        let spec = AlmostAbelianSpec::new(ks.clone()).unwrap();
        let complex = ce_complex(&almost_abelian(&spec));
        let direct = decompose(&complex).unwrap();
        let predicted = predict_decomposition(&spec);
        assert_eq!(direct, predicted);
        let n = spec.chain_dim() as i32 + 1;
        for p in 0..=n {
            for q in 0..=n {
                let (h, bc, ae) = ab_formulas(&spec, p, q);
                assert_eq!(h as usize, dolbeault(&complex, p, q));
                assert_eq!(bc as usize, bott_chern(&complex, p, q));
                assert_eq!(ae as usize, aeppli(&complex, p, q));
            }
        }
        println!(
            "chains {ks:?}: matrix-level and weight-level decompositions agree; \
             all dimension formulas check out"
        );
    }

    let spec = AlmostAbelianSpec::new(vec![3]).unwrap();
    println!();
    println!("weight multiplicities for a single length-3 chain, center bidegree:");
    println!("  c = {:?}", sl2_multiplicities(&spec, 1, 1).unwrap());
    println!();
    print!("{}", render_decomposition(&predict_decomposition(&spec)));
}
