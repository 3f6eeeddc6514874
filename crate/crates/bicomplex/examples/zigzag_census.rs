//! Count independent zigzag classes in the symmetric n-grid: closed form
//! against brute-force orbit enumeration.

use bicomplex::formal::{enumerate_rank, rank_formula, zigzag_census};

fn main() {
    println!(" n   classes   orbit check   zigzags in the grid");
    for n in 2..=6 {
        let formula = rank_formula(n).unwrap();
        let enumerated = enumerate_rank(n).unwrap();
        assert_eq!(formula, enumerated);
        println!(
            "{n:2}   {formula:7}   {enumerated:11}   {:12}",
            zigzag_census(n)
        );
    }
    println!();
    println!("closed form continues: {} {} ...", rank_formula(7).unwrap(), rank_formula(8).unwrap());
}
