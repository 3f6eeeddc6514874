//! Two six-real-dimensional nilpotent structures with the same total,
//! one-sided, and Bott-Chern cohomologies whose complexes are nonetheless
//! non-isomorphic: their decompositions differ by the chi-kernel pair.

use bicomplex::cohomology::{invariant_bundle_in, Window};
use bicomplex::decompose::decompose;
use bicomplex::formal::{chi_kernel_neg, chi_kernel_pos, FormalElement};
use bicomplex::lie::{ce_complex, no_square_criterion, six_dim_structure, SixDimParams};
use bicomplex::report::render_decomposition;
use bicomplex::scalar::Scalar;

fn main() {
    let scalar = |text: &str| -> Scalar { text.parse().unwrap() };
    let zero = Scalar::zero();

    // d w^3 = w^{12} + w^{1,1bar} + D w^{2,2bar}; only D varies.
    let left_params =
        SixDimParams::new(false, true, scalar("1"), zero.clone(), zero.clone(), scalar("2"));
    let right_params = SixDimParams::new(
        false,
        true,
        scalar("1"),
        zero.clone(),
        zero.clone(),
        scalar("1/2+1/2*i"),
    );

    println!("square obstruction: left {}, right {}",
        if no_square_criterion(&left_params) { "absent" } else { "present" },
        if no_square_criterion(&right_params) { "absent" } else { "present" });

    let left = ce_complex(&six_dim_structure(&left_params));
    let right = ce_complex(&six_dim_structure(&right_params));

    let window = Window::for_box(&left.bounding_box().union(&right.bounding_box()));
    let bl = invariant_bundle_in(&left, &window);
    let br = invariant_bundle_in(&right, &window);
    assert_eq!(bl.betti, br.betti);
    assert_eq!(bl.dolbeault, br.dolbeault);
    assert_eq!(bl.conj_dolbeault, br.conj_dolbeault);
    assert_eq!(bl.bott_chern, br.bott_chern);
    assert_eq!(bl.aeppli, br.aeppli);
    println!("total, one-sided, Bott-Chern, Aeppli numbers: all equal");

    let dl = decompose(&left).unwrap();
    let dr = decompose(&right).unwrap();
    assert_ne!(dl, dr);
    println!();
    println!("left decomposition:");
    print!("{}", render_decomposition(&dl));
    println!();
    println!("right decomposition:");
    print!("{}", render_decomposition(&dr));

    // The difference, modulo squares, is exactly the chi-kernel pair.
    let difference = FormalElement::from_difference(&dl, &dr);
    let expected = FormalElement::from_difference(&chi_kernel_pos(), &chi_kernel_neg());
    assert_eq!(difference, expected);
    println!();
    println!("difference of the decompositions = the chi-kernel pair (mod squares)");
}
