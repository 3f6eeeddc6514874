//! The spectral sequence of the column filtration of the total complex.
//!
//! The filtration is `F_l Tot^k = sum of the cells with p >= l`. Page
//! spaces are computed through the classical formulas
//! `Z_r^{p,q} = F_p Tot^{p+q} meet d^{-1}(F_{p+r} Tot^{p+q+1})` and
//! `E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})`,
//! with the page differential rank obtained as the rank of the map induced
//! by the total differential on the subquotients. The conjugate (row)
//! filtration is handled by transposing the complex first.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::complex::{Bidegree, DoubleComplex};
use crate::matrix::{induced_map_rank, subquotient_dim, ExactMatrix};

struct DegreeLayout {
    /// Cells of this total degree sorted by p descending, with offsets.
    cells: Vec<(Bidegree, usize, usize)>,
    total: usize,
}

impl DegreeLayout {
    /// Number of leading coordinates with cell column >= p.
    fn prefix(&self, p: i32) -> usize {
        self.cells
            .iter()
            .take_while(|(cell, _, _)| cell.p >= p)
            .last()
            .map_or(0, |(_, off, dim)| off + dim)
    }

    /// Number of trailing coordinates with cell column < p.
    fn suffix_start(&self, p: i32) -> usize {
        self.prefix(p)
    }
}

pub struct TotalComplex {
    degrees: BTreeMap<i32, DegreeLayout>,
    diff: BTreeMap<i32, ExactMatrix>,
}

impl TotalComplex {
    pub fn new(c: &DoubleComplex) -> Self {
        let mut degrees: BTreeMap<i32, DegreeLayout> = BTreeMap::new();
        let mut by_degree: BTreeMap<i32, Vec<Bidegree>> = BTreeMap::new();
        for cell in c.support() {
            by_degree.entry(cell.total()).or_default().push(cell);
        }
        for (k, mut cells) in by_degree {
            cells.sort_by_key(|cell| -cell.p);
            let mut layout = Vec::new();
            let mut offset = 0;
            for cell in cells {
                let d = c.dim(cell);
                layout.push((cell, offset, d));
                offset += d;
            }
            degrees.insert(k, DegreeLayout { cells: layout, total: offset });
        }
        let empty = DegreeLayout { cells: Vec::new(), total: 0 };
        let mut diff = BTreeMap::new();
        let ks: Vec<i32> = degrees.keys().copied().collect();
        for &k in &ks {
            let src = &degrees[&k];
            let dst = degrees.get(&(k + 1)).unwrap_or(&empty);
            let mut m = ExactMatrix::zero(dst.total, src.total);
            let dst_offset: HashMap<Bidegree, usize> =
                dst.cells.iter().map(|&(cell, off, _)| (cell, off)).collect();
            for &(cell, src_off, src_dim) in &src.cells {
                for (block, target) in
                    [(c.h(cell), cell.shifted(1, 0)), (c.v(cell), cell.shifted(0, 1))]
                {
                    let Some(&dst_off) = dst_offset.get(&target) else { continue };
                    for i in 0..block.rows() {
                        for j in 0..src_dim {
                            let v = block.get(i, j);
                            if !v.is_zero() {
                                m.set(dst_off + i, src_off + j, v.clone());
                            }
                        }
                    }
                }
            }
            diff.insert(k, m);
        }
        TotalComplex { degrees, diff }
    }

    pub fn dim(&self, k: i32) -> usize {
        self.degrees.get(&k).map_or(0, |l| l.total)
    }

    /// Matrix of the total differential out of degree k.
    pub fn d(&self, k: i32) -> ExactMatrix {
        self.diff
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(self.dim(k + 1), self.dim(k)))
    }

    /// Dimension of the total cohomology in degree k.
    pub fn cohomology_dim(&self, k: i32) -> usize {
        let dim = self.dim(k);
        dim - self.d(k).rank() - self.d(k - 1).rank()
    }
}

pub struct Frolicher {
    tot: TotalComplex,
    /// Memoized Z-space bases keyed by (r, p, total degree), as column
    /// matrices in the coordinates of Tot^k.
    cache: RefCell<HashMap<(i32, i32, i32), Rc<ExactMatrix>>>,
    p_min: i32,
    p_max: i32,
}

impl Frolicher {
    pub fn new(c: &DoubleComplex) -> Self {
        let b = c.bounding_box();
        Frolicher {
            tot: TotalComplex::new(c),
            cache: RefCell::new(HashMap::new()),
            p_min: b.p_min,
            p_max: b.p_max,
        }
    }

    pub fn total(&self) -> &TotalComplex {
        &self.tot
    }

    /// Pages stabilize from `p_width() + 1` on.
    pub fn p_width(&self) -> usize {
        if self.p_max < self.p_min {
            0
        } else {
            (self.p_max - self.p_min + 1) as usize
        }
    }

    /// Basis of `Z_r^{p, k-p}` embedded in Tot^k coordinates.
    fn z(&self, r: i32, p: i32, k: i32) -> Rc<ExactMatrix> {
        let key = (r.min(self.p_width() as i32 + 2), p, k);
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let (r, p, k) = key;
        let tot_dim = self.tot.dim(k);
        let result = {
            let layout = self.tot.degrees.get(&k);
            let prefix = layout.map_or(0, |l| l.prefix(p));
            if prefix == 0 {
                ExactMatrix::zero(tot_dim, 0)
            } else {
                // Rows of d whose target column is < p + r.
                let d = self.tot.d(k);
                let next = self.tot.degrees.get(&(k + 1));
                let row_start = next.map_or(0, |l| l.suffix_start(p + r));
                let row_count = d.rows() - row_start;
                let restricted = ExactMatrix::from_fn(row_count, prefix, |i, j| {
                    d.get(row_start + i, j).clone()
                });
                let kernel = restricted.kernel_basis();
                // Embed: the prefix columns are the leading coordinates.
                ExactMatrix::from_fn(tot_dim, kernel.cols(), |i, j| {
                    if i < prefix {
                        kernel.get(i, j).clone()
                    } else {
                        crate::scalar::Scalar::zero()
                    }
                })
            }
        };
        let rc = Rc::new(result);
        self.cache.borrow_mut().insert(key, rc.clone());
        rc
    }

    /// The boundary part of the page-r denominator at (p,q).
    fn denominator(&self, r: i32, p: i32, k: i32) -> ExactMatrix {
        let stable = self.z(r - 1, p + 1, k);
        let image_src = self.z(r - 1, p - r + 1, k - 1);
        let image = self.tot.d(k - 1).mul(&image_src).unwrap();
        ExactMatrix::hstack(&[&stable, &image]).unwrap()
    }

    /// Dimension of the page-r entry at (p, q).
    pub fn dim_e(&self, r: i32, p: i32, q: i32) -> usize {
        assert!(r >= 1, "pages are defined for r >= 1");
        let k = p + q;
        if self.tot.dim(k) == 0 {
            return 0;
        }
        let numerator = self.z(r, p, k);
        let denominator = self.denominator(r, p, k);
        subquotient_dim(&numerator, &denominator).unwrap()
    }

    /// Rank of the page-r differential leaving (p, q) for (p+r, q-r+1).
    pub fn rank_d(&self, r: i32, p: i32, q: i32) -> usize {
        assert!(r >= 1, "pages are defined for r >= 1");
        let k = p + q;
        if self.tot.dim(k) == 0 || self.tot.dim(k + 1) == 0 {
            return 0;
        }
        let dom_u = self.z(r, p, k);
        let dom_w = self.denominator(r, p, k);
        let cod_w = self.denominator(r, p + r, k + 1);
        induced_map_rank(&self.tot.d(k), &dom_u, &dom_w, &cod_w).unwrap()
    }
}
