//! Build formal differences of odd zigzags that every cohomological
//! invariant fails to see, from integer fillings with vanishing row and
//! column sums.

use std::collections::BTreeMap;

use bicomplex::complex::bd;
use bicomplex::formal::{chi_difference, FillingMap, FillingSign, FormalElement};
use bicomplex::report::render_decomposition;

fn main() {
    // The smallest interesting filling below degree 3: a 2x2 checkerboard.
    let filling = FillingMap::new(
        3,
        FillingSign::Minus,
        BTreeMap::from([
            (bd(1, 0), 1),
            (bd(0, 1), 1),
            (bd(0, 0), -1),
            (bd(1, 1), -1),
        ]),
    )
    .unwrap();
    let element = filling.kernel_element().unwrap();

    println!("positive side:");
    print!("{}", render_decomposition(&element.pos));
    println!("negative side:");
    print!("{}", render_decomposition(&element.neg));

    let (pos, neg, equal) = chi_difference(&element).unwrap();
    println!("chi arrays equal: {equal}");
    assert!(equal);
    assert_eq!(pos.betti, neg.betti);
    assert_eq!(pos.bott_chern, neg.bott_chern);

    // Dropping one zigzag from the positive side breaks the balance.
    let mut broken_pos = element.pos.clone();
    let (&first, _) = broken_pos.iter().next().unwrap();
    broken_pos.add(first, -1);
    let broken = FormalElement { pos: broken_pos, neg: element.neg.clone() };
    let (_, _, still_equal) = chi_difference(&broken).unwrap();
    println!("after dropping {first}: chi arrays equal: {still_equal}");
    assert!(!still_equal);

    // A lone nonzero value is not a legal filling at all.
    let bad = FillingMap::new(3, FillingSign::Minus, BTreeMap::from([(bd(0, 0), 1)]));
    println!("single +1 filling rejected: {}", bad.is_err());
}
