//! Page-by-page behavior of the column spectral sequence on the
//! irreducible shapes: squares die at page one, odd zigzags park a single
//! class forever, and a horizontal even zigzag of length 2l survives
//! unchanged until its page-l differential wipes it out.

use bicomplex::cohomology::betti;
use bicomplex::shape::{synthesize, IrreducibleShape, Multiset};
use bicomplex::spectral::Frolicher;

fn show_pages(label: &str, shape: IrreducibleShape, max_r: i32) {
    let complex = synthesize(&Multiset::from_shapes([shape])).unwrap();
    let pages = Frolicher::new(&complex);
    let b = complex.bounding_box();
    println!("{label} ({shape}):");
    for r in 1..=max_r {
        let mut entries = Vec::new();
        for cell in b.cells() {
            let dim = pages.dim_e(r, cell.p, cell.q);
            let rank = pages.rank_d(r, cell.p, cell.q);
            if dim > 0 || rank > 0 {
                entries.push(format!("E_{r}{cell} = {dim} (d_{r} rank {rank})"));
            }
        }
        if entries.is_empty() {
            println!("  page {r}: zero");
        } else {
            println!("  page {r}: {}", entries.join(", "));
        }
    }
    println!();
}

fn main() {
    show_pages("square", IrreducibleShape::square(0, 0), 2);
    show_pages("odd zigzag", IrreducibleShape::odd(2, 2, 2), 3);
    show_pages("even horizontal, length 6", IrreducibleShape::even_h(0, 2, 3), 4);
    show_pages("even vertical, length 4", IrreducibleShape::even_v(1, 0, 2), 2);

    // The stable page always sums to the total cohomology.
    let mixed = Multiset::from_shapes([
        IrreducibleShape::odd(0, 1, 3),
        IrreducibleShape::even_h(0, 1, 2),
        IrreducibleShape::square(1, 1),
    ]);
    let complex = synthesize(&mixed).unwrap();
    let pages = Frolicher::new(&complex);
    let b = complex.bounding_box();
    let r = pages.p_width() as i32 + 1;
    for k in b.total_min()..=b.total_max() {
        let stable: usize = (b.p_min..=b.p_max).map(|p| pages.dim_e(r, p, k - p)).sum();
        assert_eq!(stable, betti(&complex, k));
    }
    println!("stable page of a mixed complex reproduces its total cohomology");
}
