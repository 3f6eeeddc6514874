//! Cohomological invariants of a double complex, all as exact subquotient
//! dimensions: total (de Rham) cohomology, the two one-sided cohomologies,
//! Bott-Chern and Aeppli, the six Varouchas groups, the pages of both
//! spectral sequences, and the corner-truncated (Bigolin) cohomologies.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::complex::{bd, Bidegree, Box2, DoubleComplex};
use crate::matrix::{intersect, subquotient_dim, ExactMatrix};
use crate::spectral::{Frolicher, TotalComplex};

/// The six Varouchas groups, in the order they pair off against the
/// Bott-Chern/Aeppli-style numerators and denominators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarouchasGroup {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl VarouchasGroup {
    pub const ALL: [VarouchasGroup; 6] = [
        VarouchasGroup::A,
        VarouchasGroup::B,
        VarouchasGroup::C,
        VarouchasGroup::D,
        VarouchasGroup::E,
        VarouchasGroup::F,
    ];
}

impl fmt::Display for VarouchasGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Betti number in total degree `k`.
pub fn betti(c: &DoubleComplex, k: i32) -> usize {
    TotalComplex::new(c).cohomology_dim(k)
}

/// Dimension of `ker del_v / im del_v` at `(p,q)`.
pub fn dolbeault(c: &DoubleComplex, p: i32, q: i32) -> usize {
    let cell = bd(p, q);
    c.dim(cell) - c.v(cell).rank() - c.v(cell.shifted(0, -1)).rank()
}

/// Dimension of `ker del_h / im del_h` at `(p,q)`.
pub fn conj_dolbeault(c: &DoubleComplex, p: i32, q: i32) -> usize {
    let cell = bd(p, q);
    c.dim(cell) - c.h(cell).rank() - c.h(cell.shifted(-1, 0)).rank()
}

/// The subspaces of the component at `cell` every per-bidegree invariant is
/// built from, as column-span matrices in the local ambient space.
struct LocalSpaces {
    ker_h: ExactMatrix,
    ker_v: ExactMatrix,
    ker_hv: ExactMatrix,
    im_h: ExactMatrix,
    im_v: ExactMatrix,
    im_hv: ExactMatrix,
}

impl LocalSpaces {
    fn new(c: &DoubleComplex, cell: Bidegree) -> Self {
        let h_out = c.h(cell);
        let v_out = c.v(cell);
        // The composite out of `cell` and the composite arriving at `cell`.
        let hv_out = c.h(cell.shifted(0, 1)).mul(&v_out).unwrap();
        let hv_in = c
            .h(cell.shifted(-1, 0))
            .mul(&c.v(cell.shifted(-1, -1)))
            .unwrap();
        LocalSpaces {
            ker_h: h_out.kernel_basis(),
            ker_v: v_out.kernel_basis(),
            ker_hv: hv_out.kernel_basis(),
            im_h: c.h(cell.shifted(-1, 0)),
            im_v: c.v(cell.shifted(0, -1)),
            im_hv: hv_in,
        }
    }
}

/// One of the six Varouchas subquotients at `(p,q)`.
pub fn varouchas(c: &DoubleComplex, group: VarouchasGroup, p: i32, q: i32) -> usize {
    let s = LocalSpaces::new(c, bd(p, q));
    varouchas_from(&s, group)
}

fn varouchas_from(s: &LocalSpaces, group: VarouchasGroup) -> usize {
    let dim = |num: &ExactMatrix, den: &ExactMatrix| subquotient_dim(num, den).unwrap();
    match group {
        VarouchasGroup::A => dim(&intersect(&s.im_h, &s.im_v).unwrap(), &s.im_hv),
        VarouchasGroup::B => dim(&intersect(&s.im_h, &s.ker_v).unwrap(), &s.im_hv),
        VarouchasGroup::C => {
            dim(&s.ker_hv, &ExactMatrix::hstack(&[&s.ker_v, &s.im_h]).unwrap())
        }
        VarouchasGroup::D => dim(&intersect(&s.ker_h, &s.im_v).unwrap(), &s.im_hv),
        VarouchasGroup::E => {
            dim(&s.ker_hv, &ExactMatrix::hstack(&[&s.ker_h, &s.im_v]).unwrap())
        }
        VarouchasGroup::F => {
            dim(&s.ker_hv, &ExactMatrix::hstack(&[&s.ker_v, &s.ker_h]).unwrap())
        }
    }
}

/// `(ker del_h meet ker del_v) / im (del_h del_v)` at `(p,q)`.
pub fn bott_chern(c: &DoubleComplex, p: i32, q: i32) -> usize {
    let s = LocalSpaces::new(c, bd(p, q));
    subquotient_dim(&intersect(&s.ker_h, &s.ker_v).unwrap(), &s.im_hv).unwrap()
}

/// `ker (del_h del_v) / (im del_h + im del_v)` at `(p,q)`.
pub fn aeppli(c: &DoubleComplex, p: i32, q: i32) -> usize {
    let s = LocalSpaces::new(c, bd(p, q));
    subquotient_dim(&s.ker_hv, &ExactMatrix::hstack(&[&s.im_h, &s.im_v]).unwrap()).unwrap()
}

/// The nine per-bidegree invariants in the fixed order
/// (Bott-Chern, Aeppli, one-sided, A, B, C, D, E, F); this is the row order
/// of the 7-piece linear system.
pub fn nine_invariants(c: &DoubleComplex, p: i32, q: i32) -> [usize; 9] {
    let cell = bd(p, q);
    let s = LocalSpaces::new(c, cell);
    let bc = subquotient_dim(&intersect(&s.ker_h, &s.ker_v).unwrap(), &s.im_hv).unwrap();
    let ae =
        subquotient_dim(&s.ker_hv, &ExactMatrix::hstack(&[&s.im_h, &s.im_v]).unwrap()).unwrap();
    let dolb = subquotient_dim(&s.ker_v, &s.im_v).unwrap();
    let mut out = [bc, ae, dolb, 0, 0, 0, 0, 0, 0];
    for (i, g) in VarouchasGroup::ALL.iter().enumerate() {
        out[3 + i] = varouchas_from(&s, *g);
    }
    out
}

/// Which filtration of the total complex drives the spectral sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Filtration {
    /// By columns; the page-1 entry at `(p,q)` is `dolbeault(p,q)`.
    Std,
    /// By rows, computed on the transposed complex.
    Conj,
}

/// `(dim E_r^{p,q}, rank of d_r out of (p,q))` for the chosen filtration.
pub fn frolicher(c: &DoubleComplex, filtration: Filtration, r: i32, p: i32, q: i32) -> (usize, usize) {
    match filtration {
        Filtration::Std => {
            let f = Frolicher::new(c);
            (f.dim_e(r, p, q), f.rank_d(r, p, q))
        }
        Filtration::Conj => {
            let f = Frolicher::new(&c.transpose());
            (f.dim_e(r, q, p), f.rank_d(r, q, p))
        }
    }
}

/// Cells of the corner-truncated space in degree `k` for the corner `(p,q)`:
/// the rectangle diagonal `{r+s=k, 0<=r<=p, 0<=s<=q}` while `k <= p+q`, and
/// the open upper quadrant diagonal `{r+s=k+1, r>p, s>q}` beyond.
fn truncated_cells(k: i32, p: i32, q: i32) -> Vec<Bidegree> {
    let mut out = Vec::new();
    if k <= p + q {
        let lo = 0.max(k - q);
        let hi = p.min(k);
        for r in lo..=hi {
            out.push(bd(r, k - r));
        }
    } else {
        let t = k + 1;
        let lo = p + 1;
        let hi = t - (q + 1);
        for r in lo..=hi {
            out.push(bd(r, t - r));
        }
    }
    out
}

/// The truncated-corner complex for `(p,q)` over a degree window, with its
/// cohomology dimensions. The differential is the total differential
/// followed by the projection onto the retained cells; at degree `p+q` it
/// degenerates to the composite of the two differentials out of `(p,q)`.
struct TruncatedComplex {
    k_min: i32,
    /// dims[i] is the dimension in degree k_min + i; ranks[i] the rank of
    /// the differential out of that degree.
    dims: Vec<usize>,
    ranks: Vec<usize>,
}

impl TruncatedComplex {
    fn new(c: &DoubleComplex, p: i32, q: i32, k_min: i32, k_max: i32) -> Self {
        let layout: Vec<Vec<(Bidegree, usize, usize)>> = (k_min..=k_max)
            .map(|k| {
                let mut cells = Vec::new();
                let mut offset = 0;
                for cell in truncated_cells(k, p, q) {
                    let d = c.dim(cell);
                    if d > 0 {
                        cells.push((cell, offset, d));
                        offset += d;
                    }
                }
                cells
            })
            .collect();
        let dims: Vec<usize> = layout
            .iter()
            .map(|cells| cells.iter().map(|&(_, _, d)| d).sum())
            .collect();
        let mut ranks = vec![0; dims.len()];
        for (i, k) in (k_min..=k_max).enumerate() {
            let src = &layout[i];
            let dst = if i + 1 < layout.len() { &layout[i + 1] } else { continue };
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let dst_dim = dims[i + 1];
            let find = |cell: Bidegree| dst.iter().find(|&&(c2, _, _)| c2 == cell).map(|&(_, o, _)| o);
            let mut m = ExactMatrix::zero(dst_dim, dims[i]);
            if k == p + q {
                // Corner map: the composite out of (p,q) is the only block
                // that lands in the retained cells.
                if let (Some(&(_, src_off, src_dim)), Some(dst_off)) = (
                    src.iter().find(|&&(c2, _, _)| c2 == bd(p, q)),
                    find(bd(p + 1, q + 1)),
                ) {
                    let comp = c.h(bd(p, q + 1)).mul(&c.v(bd(p, q))).unwrap();
                    for a in 0..comp.rows() {
                        for b in 0..src_dim {
                            m.set(dst_off + a, src_off + b, comp.get(a, b).clone());
                        }
                    }
                }
            } else {
                for &(cell, src_off, src_dim) in src {
                    for (block, target) in
                        [(c.h(cell), cell.shifted(1, 0)), (c.v(cell), cell.shifted(0, 1))]
                    {
                        let Some(dst_off) = find(target) else { continue };
                        for a in 0..block.rows() {
                            for b in 0..src_dim {
                                let v = block.get(a, b);
                                if !v.is_zero() {
                                    m.set(dst_off + a, src_off + b, v.clone());
                                }
                            }
                        }
                    }
                }
            }
            ranks[i] = m.rank();
        }
        TruncatedComplex { k_min, dims, ranks }
    }

    fn cohomology(&self, k: i32) -> usize {
        let idx = k - self.k_min;
        if idx < 0 || idx as usize >= self.dims.len() {
            return 0;
        }
        let idx = idx as usize;
        let incoming = if idx == 0 { 0 } else { self.ranks[idx - 1] };
        self.dims[idx] - self.ranks[idx] - incoming
    }
}

/// Dimension of the degree-`k` cohomology of the corner-truncated complex
/// at `(p,q)`. Oblivious to squares.
pub fn bigolin(c: &DoubleComplex, k: i32, p: i32, q: i32) -> usize {
    TruncatedComplex::new(c, p, q, k - 1, k + 1).cohomology(k)
}

/// All Bigolin numbers for one corner over a degree window; shares the rank
/// computations between consecutive degrees.
pub fn bigolin_row(c: &DoubleComplex, p: i32, q: i32, k_min: i32, k_max: i32) -> Vec<usize> {
    let t = TruncatedComplex::new(c, p, q, k_min - 1, k_max + 1);
    (k_min..=k_max).map(|k| t.cohomology(k)).collect()
}

/// Aggregation window for an invariant bundle. Bundles of two complexes are
/// comparable when computed over the same window.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub cells: Box2,
    pub k_min: i32,
    pub k_max: i32,
    /// Pages are stored for `1..=r_max`.
    pub r_max: i32,
}

impl Window {
    pub fn for_box(b: &Box2) -> Window {
        if b.is_empty() {
            return Window { cells: *b, k_min: 0, k_max: -1, r_max: 1 };
        }
        Window {
            cells: *b,
            k_min: b.total_min(),
            k_max: b.total_max(),
            r_max: (b.p_width().max(b.q_width()) as i32) + 1,
        }
    }

    pub fn union(&self, other: &Window) -> Window {
        Window {
            cells: self.cells.union(&other.cells),
            k_min: self.k_min.min(other.k_min),
            k_max: self.k_max.max(other.k_max),
            r_max: self.r_max.max(other.r_max),
        }
    }
}

/// Page data of one filtration: per cell, the list of `(dim, rank d_r)` for
/// `r = 1, 2, ...` truncated once it settles at `(stable dim, 0)`, plus the
/// stable dimension itself. The normalization makes equality of the maps
/// meaningful for complexes of different widths.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PageData {
    pub pages: BTreeMap<Bidegree, Vec<(usize, usize)>>,
    pub stable: BTreeMap<Bidegree, usize>,
}

impl PageData {
    /// `(dim E_r, rank d_r)` at any page `r >= 1`.
    pub fn at(&self, r: i32, cell: Bidegree) -> (usize, usize) {
        if let Some(seq) = self.pages.get(&cell) {
            if r >= 1 && (r as usize) <= seq.len() {
                return seq[r as usize - 1];
            }
        }
        (self.stable.get(&cell).copied().unwrap_or(0), 0)
    }

    fn insert(&mut self, cell: Bidegree, mut seq: Vec<(usize, usize)>, stable: usize) {
        while seq.last() == Some(&(stable, 0)) {
            seq.pop();
        }
        if !seq.is_empty() {
            self.pages.insert(cell, seq);
        }
        if stable > 0 {
            self.stable.insert(cell, stable);
        }
    }
}

/// Every invariant of a complex over a fixed window, zero entries omitted.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct InvariantBundle {
    pub betti: BTreeMap<i32, usize>,
    pub dolbeault: BTreeMap<Bidegree, usize>,
    pub conj_dolbeault: BTreeMap<Bidegree, usize>,
    pub bott_chern: BTreeMap<Bidegree, usize>,
    pub aeppli: BTreeMap<Bidegree, usize>,
    pub varouchas: BTreeMap<(VarouchasGroup, Bidegree), usize>,
    pub frolicher_std: PageData,
    pub frolicher_conj: PageData,
    pub bigolin: BTreeMap<(i32, Bidegree), usize>,
}

impl InvariantBundle {
    /// Equality of everything the chi-array records: all cohomologies and
    /// both spectral sequences, but not the corner-truncated numbers.
    pub fn chi_eq(&self, other: &InvariantBundle) -> bool {
        self.betti == other.betti
            && self.dolbeault == other.dolbeault
            && self.conj_dolbeault == other.conj_dolbeault
            && self.bott_chern == other.bott_chern
            && self.aeppli == other.aeppli
            && self.varouchas == other.varouchas
            && self.frolicher_std == other.frolicher_std
            && self.frolicher_conj == other.frolicher_conj
    }

    /// Equality of the nine per-bidegree invariants (one-sided, Bott-Chern,
    /// Aeppli, and the six refined groups).
    pub fn local_eq(&self, other: &InvariantBundle) -> bool {
        self.dolbeault == other.dolbeault
            && self.bott_chern == other.bott_chern
            && self.aeppli == other.aeppli
            && self.varouchas == other.varouchas
    }
}

fn page_data(c: &DoubleComplex, window: &Window, conj: bool) -> PageData {
    let work = if conj { c.transpose() } else { c.clone() };
    let f = Frolicher::new(&work);
    let mut data = PageData::default();
    if window.cells.is_empty() {
        return data;
    }
    let stable_r = f.p_width() as i32 + 1;
    for cell in window.cells.cells() {
        let inner = if conj { cell.swapped() } else { cell };
        let seq: Vec<(usize, usize)> = (1..=window.r_max)
            .map(|r| (f.dim_e(r, inner.p, inner.q), f.rank_d(r, inner.p, inner.q)))
            .collect();
        let stable = f.dim_e(stable_r.max(window.r_max), inner.p, inner.q);
        data.insert(cell, seq, stable);
    }
    data
}

/// Compute the full bundle of a valid complex over an explicit window.
pub fn invariant_bundle_in(c: &DoubleComplex, window: &Window) -> InvariantBundle {
    let mut bundle = InvariantBundle::default();
    let tot = TotalComplex::new(c);
    for k in window.k_min..=window.k_max {
        let b = tot.cohomology_dim(k);
        if b > 0 {
            bundle.betti.insert(k, b);
        }
    }
    // The per-bidegree invariants are independent across cells.
    let cells: Vec<Bidegree> = window.cells.cells().collect();
    let nine: Vec<(Bidegree, [usize; 9])> = cells
        .par_iter()
        .map(|&cell| (cell, nine_invariants(c, cell.p, cell.q)))
        .collect();
    for (cell, values) in nine {
        let [bc, ae, dolb, a, b_, c_, d, e, f] = values;
        if bc > 0 {
            bundle.bott_chern.insert(cell, bc);
        }
        if ae > 0 {
            bundle.aeppli.insert(cell, ae);
        }
        if dolb > 0 {
            bundle.dolbeault.insert(cell, dolb);
        }
        for (g, v) in VarouchasGroup::ALL.into_iter().zip([a, b_, c_, d, e, f]) {
            if v > 0 {
                bundle.varouchas.insert((g, cell), v);
            }
        }
        let cd = conj_dolbeault(c, cell.p, cell.q);
        if cd > 0 {
            bundle.conj_dolbeault.insert(cell, cd);
        }
    }
    bundle.frolicher_std = page_data(c, window, false);
    bundle.frolicher_conj = page_data(c, window, true);

    let corner_box = window.cells.grown(1);
    if !corner_box.is_empty() {
        let corners: Vec<Bidegree> = corner_box.cells().collect();
        let rows: Vec<(Bidegree, Vec<usize>)> = corners
            .par_iter()
            .map(|&corner| {
                (
                    corner,
                    bigolin_row(c, corner.p, corner.q, window.k_min - 1, window.k_max + 1),
                )
            })
            .collect();
        for (corner, row) in rows {
            for (i, &h) in row.iter().enumerate() {
                if h > 0 {
                    bundle.bigolin.insert((window.k_min - 1 + i as i32, corner), h);
                }
            }
        }
    }
    bundle
}

/// The full bundle over the complex's own support window.
pub fn invariant_bundle(c: &DoubleComplex) -> InvariantBundle {
    invariant_bundle_in(c, &Window::for_box(&c.bounding_box()))
}
