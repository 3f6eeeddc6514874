//! Chevalley-Eilenberg double complexes: generic structure equations with a
//! bigraded exterior-algebra builder, the 6-dimensional nilpotent family,
//! the almost-abelian family, and the weight-theoretic predictions of its
//! decomposition.

use std::collections::BTreeMap;

use crate::complex::{bd, Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::shape::{IrreducibleShape, Multiset};

/// A degree-one generator: `Hol(i)` is the i-th holomorphic form, `Bar(i)`
/// its conjugate (1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Generator {
    Hol(u32),
    Bar(u32),
}

impl Generator {
    fn conj(self) -> Generator {
        match self {
            Generator::Hol(i) => Generator::Bar(i),
            Generator::Bar(i) => Generator::Hol(i),
        }
    }
}

/// One wedge pair with its coefficient; pairs are kept in canonical order
/// (holomorphic generators before conjugates, indices ascending).
pub type TwoFormTerm = (Generator, Generator, Scalar);

/// Structure equations of a complex-n-dimensional Lie algebra presented on
/// the dual: the differential of each holomorphic generator as a two-form.
/// The conjugate equations follow by conjugation; the extension to the
/// whole exterior algebra follows from the graded Leibniz rule.
///
/// Construction checks the integrability constraint (no conjugate-conjugate
/// wedge pairs in the image of a holomorphic generator) and that the
/// extended differential squares to zero on every generator.
#[derive(Clone, Debug)]
pub struct StructureEquations {
    n: u32,
    d_hol: Vec<Vec<TwoFormTerm>>,
}

/// A wedge monomial: bitmasks of holomorphic and conjugate factors.
type Mono = (u32, u32);

/// Formal sum of monomials.
type Form = BTreeMap<Mono, Scalar>;

fn add_term(form: &mut Form, mono: Mono, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    let entry = form.entry(mono).or_insert_with(Scalar::zero);
    *entry = &*entry + &coeff;
    if entry.is_zero() {
        form.remove(&mono);
    }
}

/// Insert a generator into a monomial; `None` if already present. The sign
/// counts the factors it moves past in the canonical order.
fn insert_generator(gen: Generator, mono: Mono) -> Option<(Mono, i64)> {
    let (hol, barred) = mono;
    match gen {
        Generator::Hol(i) => {
            let bit = 1u32 << (i - 1);
            if hol & bit != 0 {
                return None;
            }
            let before = (hol & (bit - 1)).count_ones();
            Some(((hol | bit, barred), if before % 2 == 0 { 1 } else { -1 }))
        }
        Generator::Bar(i) => {
            let bit = 1u32 << (i - 1);
            if barred & bit != 0 {
                return None;
            }
            let before = hol.count_ones() + (barred & (bit - 1)).count_ones();
            Some(((hol, barred | bit), if before % 2 == 0 { 1 } else { -1 }))
        }
    }
}

fn generators_of(mono: Mono) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 0..32 {
        if mono.0 & (1 << i) != 0 {
            out.push(Generator::Hol(i + 1));
        }
    }
    for i in 0..32 {
        if mono.1 & (1 << i) != 0 {
            out.push(Generator::Bar(i + 1));
        }
    }
    out
}

impl StructureEquations {
    pub fn new(n: u32, d_hol: Vec<Vec<TwoFormTerm>>) -> Result<Self> {
        if d_hol.len() != n as usize {
            return Err(Error::Domain(format!(
                "expected {n} differential equations, got {}",
                d_hol.len()
            )));
        }
        let index_ok = |g: &Generator| match g {
            Generator::Hol(i) | Generator::Bar(i) => (1..=n).contains(i),
        };
        for (idx, terms) in d_hol.iter().enumerate() {
            for (g1, g2, _) in terms {
                if !index_ok(g1) || !index_ok(g2) {
                    return Err(Error::Domain(format!(
                        "generator index out of range in equation {}",
                        idx + 1
                    )));
                }
                if g1 >= g2 {
                    return Err(Error::Domain(format!(
                        "wedge pair out of canonical order in equation {}",
                        idx + 1
                    )));
                }
                if matches!((g1, g2), (Generator::Bar(_), Generator::Bar(_))) {
                    return Err(Error::Domain(format!(
                        "equation {} has a conjugate-conjugate term; the image of a \
                         holomorphic generator must lie in bidegrees (2,0) and (1,1)",
                        idx + 1
                    )));
                }
            }
        }
        let eqs = StructureEquations { n, d_hol };
        for i in 1..=n {
            for gen in [Generator::Hol(i), Generator::Bar(i)] {
                let d1 = eqs.d_generator(gen);
                let mut dd: Form = Form::new();
                for (&mono, coeff) in &d1 {
                    for (m2, c2) in eqs.d_mono(mono) {
                        add_term(&mut dd, m2, &c2 * coeff);
                    }
                }
                if !dd.is_empty() {
                    let name = match gen {
                        Generator::Hol(i) => format!("omega^{i}"),
                        Generator::Bar(i) => format!("conj(omega^{i})"),
                    };
                    return Err(Error::NonIntegrable { generator: name });
                }
            }
        }
        Ok(eqs)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The differential of a single generator as a form.
    fn d_generator(&self, gen: Generator) -> Form {
        let mut out = Form::new();
        match gen {
            Generator::Hol(i) => {
                for (g1, g2, c) in &self.d_hol[(i - 1) as usize] {
                    let (m1, s1) = insert_generator(*g1, (0, 0)).unwrap();
                    let (m2, s2) = insert_generator(*g2, m1).unwrap();
                    add_term(&mut out, m2, &c.clone() * &Scalar::from_int(s1 * s2));
                }
            }
            Generator::Bar(i) => {
                // Conjugation: conjugate both factors and the coefficient,
                // then restore canonical order.
                for (g1, g2, c) in &self.d_hol[(i - 1) as usize] {
                    let (a, b) = (g1.conj(), g2.conj());
                    let (a, b, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                    let (m1, s1) = insert_generator(a, (0, 0)).unwrap();
                    let (m2, s2) = insert_generator(b, m1).unwrap();
                    add_term(&mut out, m2, &c.conj() * &Scalar::from_int(sign * s1 * s2));
                }
            }
        }
        out
    }

    /// Leibniz extension of the differential to a monomial.
    fn d_mono(&self, mono: Mono) -> Form {
        let mut out = Form::new();
        let gens = generators_of(mono);
        for (t, &gen) in gens.iter().enumerate() {
            // Remove gen: moving it to the front passes t earlier factors.
            let rest = match gen {
                Generator::Hol(i) => (mono.0 & !(1 << (i - 1)), mono.1),
                Generator::Bar(i) => (mono.0, mono.1 & !(1 << (i - 1))),
            };
            let front_sign = if t % 2 == 0 { 1 } else { -1 };
            for (dm, coeff) in self.d_generator(gen) {
                // dm is a two-generator monomial; wedge it back onto rest.
                let mut acc = vec![(rest, Scalar::from_int(front_sign))];
                for g in generators_of(dm).into_iter().rev() {
                    let mut next = Vec::new();
                    for (m, c) in acc {
                        if let Some((m2, s)) = insert_generator(g, m) {
                            next.push((m2, &c * &Scalar::from_int(s)));
                        }
                    }
                    acc = next;
                }
                for (m, c) in acc {
                    add_term(&mut out, m, &c * &coeff);
                }
            }
        }
        out
    }
}

/// Wedge-monomial basis of bidegree (p,q), in increasing bitmask order.
fn mono_basis(n: u32, p: u32, q: u32) -> Vec<Mono> {
    fn subsets(n: u32, k: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() == k {
                out.push(mask);
            }
        }
        out
    }
    let mut out = Vec::new();
    for h in subsets(n, p) {
        for b in subsets(n, q) {
            out.push((h, b));
        }
    }
    out.sort();
    out
}

/// The bigraded exterior algebra of the structure equations, with the
/// differential split by target bidegree into the two anticommuting maps.
pub fn ce_complex(eqs: &StructureEquations) -> DoubleComplex {
    let n = eqs.n;
    let mut index: BTreeMap<Bidegree, BTreeMap<Mono, usize>> = BTreeMap::new();
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let basis = mono_basis(n, p, q);
            let cell = bd(p as i32, q as i32);
            dims.insert(cell, basis.len());
            index.insert(cell, basis.iter().enumerate().map(|(i, &m)| (m, i)).collect());
        }
    }
    let mut del_h: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut del_v: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    for p in 0..=n as i32 {
        for q in 0..=n as i32 {
            let cell = bd(p, q);
            let basis = mono_basis(n, p as u32, q as u32);
            let h_cell = cell.shifted(1, 0);
            let v_cell = cell.shifted(0, 1);
            let mut h = ExactMatrix::zero(dims.get(&h_cell).copied().unwrap_or(0), basis.len());
            let mut v = ExactMatrix::zero(dims.get(&v_cell).copied().unwrap_or(0), basis.len());
            for (col, &mono) in basis.iter().enumerate() {
                for (target, coeff) in eqs.d_mono(mono) {
                    let t_cell =
                        bd(target.0.count_ones() as i32, target.1.count_ones() as i32);
                    if t_cell == h_cell {
                        h.set(index[&h_cell][&target], col, coeff);
                    } else if t_cell == v_cell {
                        v.set(index[&v_cell][&target], col, coeff);
                    } else {
                        unreachable!("differential changed total degree by more than one");
                    }
                }
            }
            del_h.insert(cell, h);
            del_v.insert(cell, v);
        }
    }
    DoubleComplex::new(dims, del_h, del_v)
}

/// Parameters of the 6-real-dimensional nilpotent family.
#[derive(Clone, Debug)]
pub struct SixDimParams {
    pub eps: bool,
    pub rho: bool,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl SixDimParams {
    pub fn new(eps: bool, rho: bool, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        SixDimParams { eps, rho, a, b, c, d }
    }
}

/// The normal-form structure equations on three holomorphic generators:
/// the first is closed, the second maps to `eps * w^1 ^ conj(w^1)`, the
/// third to `rho w^{12} + (1-eps)A w^{1,1bar} + B w^{1,2bar} + C w^{2,1bar}
/// + (1-eps)D w^{2,2bar}`.
pub fn six_dim_structure(p: &SixDimParams) -> StructureEquations {
    use Generator::*;
    let gate = |on: bool, s: &Scalar| if on { s.clone() } else { Scalar::zero() };
    let mut d2 = Vec::new();
    if p.eps {
        d2.push((Hol(1), Bar(1), Scalar::one()));
    }
    let mut d3: Vec<TwoFormTerm> = Vec::new();
    if p.rho {
        d3.push((Hol(1), Hol(2), Scalar::one()));
    }
    for (g1, g2, coeff) in [
        (Hol(1), Bar(1), gate(!p.eps, &p.a)),
        (Hol(1), Bar(2), p.b.clone()),
        (Hol(2), Bar(1), p.c.clone()),
        (Hol(2), Bar(2), gate(!p.eps, &p.d)),
    ] {
        if !coeff.is_zero() {
            d3.push((g1, g2, coeff));
        }
    }
    StructureEquations::new(3, vec![Vec::new(), d2, d3])
        .expect("the normal form is integrable for every parameter choice")
}

/// Exactly when the complex of [`six_dim_structure`] contains no square:
/// for eps = 1 the third equation must vanish; for eps = 0 the obstruction
/// is `rho^2 + |B|^2 + |C|^2 - 2 Re(A conj(D))`.
pub fn no_square_criterion(p: &SixDimParams) -> bool {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    if p.eps {
        !p.rho && p.b.is_zero() && p.c.is_zero()
    } else {
        let rho_sq = if p.rho { BigRational::one() } else { BigRational::zero() };
        let lhs = rho_sq + p.b.norm_sqr() + p.c.norm_sqr();
        let re_ad = (&p.a * &p.d.conj()).re;
        lhs == re_ad * BigRational::from_integer(BigInt::from(2))
    }
}

/// Specification of an almost-abelian structure: the lengths of the shift
/// chains on the codimension-two part (the extra closed generator and its
/// conjugate are implicit).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlmostAbelianSpec {
    pub ks: Vec<u32>,
}

impl AlmostAbelianSpec {
    pub fn new(ks: Vec<u32>) -> Result<Self> {
        if ks.is_empty() || ks.iter().any(|&k| k == 0) {
            return Err(Error::Domain("chain lengths must be positive and non-empty".into()));
        }
        Ok(AlmostAbelianSpec { ks })
    }

    /// Dimension of the shifted part (complex dimension minus one).
    pub fn chain_dim(&self) -> u32 {
        self.ks.iter().sum()
    }
}

/// Structure equations with one closed generator `alpha` and, per chain of
/// length k, generators `beta_1..beta_k` with `d beta_1 = 0` and
/// `d beta_i = (alpha + conj(alpha)) ^ beta_{i-1}`.
pub fn almost_abelian(spec: &AlmostAbelianSpec) -> StructureEquations {
    use Generator::*;
    let n = 1 + spec.chain_dim();
    let mut d = vec![Vec::new()];
    let mut offset = 2u32;
    for &k in &spec.ks {
        for i in 1..=k {
            let m = offset + i - 1;
            if i == 1 {
                d.push(Vec::new());
            } else {
                d.push(vec![
                    (Hol(1), Hol(m - 1), Scalar::one()),
                    (Hol(m - 1), Bar(1), Scalar::from_int(-1)),
                ]);
            }
        }
        offset += k;
    }
    StructureEquations::new(n, d).expect("shift-chain equations are integrable")
}

/// Multiplicities of the irreducible weight spaces in the (p,q) part of the
/// exterior algebra of the chains: `c_k` counts the k-dimensional
/// irreducible, computed from weight multiplicities alone.
pub fn sl2_multiplicities(
    spec: &AlmostAbelianSpec,
    p: u32,
    q: u32,
) -> Result<BTreeMap<u32, u64>> {
    let dim = spec.chain_dim();
    if p > dim || q > dim {
        return Err(Error::Domain(format!(
            "bidegree ({p},{q}) outside the 0..={dim} range"
        )));
    }
    let weights: Vec<i64> = spec
        .ks
        .iter()
        .flat_map(|&k| (0..k).map(move |i| k as i64 - 1 - 2 * i as i64))
        .collect();
    // Weight multiset of the exterior power: subset sums by count.
    let exterior = |count: u32| -> BTreeMap<i64, u64> {
        let mut table: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); count as usize + 1];
        table[0].insert(0, 1);
        for &w in &weights {
            for c in (1..=count as usize).rev() {
                let prev: Vec<(i64, u64)> =
                    table[c - 1].iter().map(|(&k, &v)| (k, v)).collect();
                for (sum, mult) in prev {
                    *table[c].entry(sum + w).or_insert(0) += mult;
                }
            }
        }
        table[count as usize].clone()
    };
    let wp = exterior(p);
    let wq = exterior(q);
    let mut tensor: BTreeMap<i64, u64> = BTreeMap::new();
    for (&a, &ma) in &wp {
        for (&b, &mb) in &wq {
            *tensor.entry(a + b).or_insert(0) += ma * mb;
        }
    }
    let mult = |w: i64| tensor.get(&w).copied().unwrap_or(0);
    let mut out = BTreeMap::new();
    let max_k = (2 * dim) as i64 + 1;
    for k in 1..=max_k {
        let c = mult(k - 1).saturating_sub(mult(k + 1));
        if c > 0 {
            out.insert(k as u32, c);
        }
    }
    Ok(out)
}

/// The predicted decomposition of the almost-abelian complex: dots, squares
/// and length-3 odd zigzags with multiplicities given by the `c_k`.
pub fn predict_decomposition(spec: &AlmostAbelianSpec) -> Multiset {
    let dim = spec.chain_dim() as i32;
    let c = |p: i32, q: i32| -> BTreeMap<u32, u64> {
        if (0..=dim).contains(&p) && (0..=dim).contains(&q) {
            sl2_multiplicities(spec, p as u32, q as u32).unwrap()
        } else {
            BTreeMap::new()
        }
    };
    let mut m = Multiset::new();
    for p in 0..=dim {
        for q in 0..=dim {
            let ck = c(p, q);
            let tail: u64 = ck.iter().filter(|(&k, _)| k >= 2).map(|(_, &v)| v).sum();
            let squares: u64 = ck
                .iter()
                .filter(|(&k, _)| k >= 3)
                .map(|(&k, &v)| (k as u64 - 2) * v)
                .sum();
            if squares > 0 {
                m.add(IrreducibleShape::square(p, q), squares as i64);
            }
            if tail > 0 {
                // One looking-up zigzag with source at (p,q)...
                m.add(IrreducibleShape::odd(p + 1, q + 1, p + q + 1), tail as i64);
                // ...and one looking-down zigzag with sink at (p+1,q+1).
                m.add(IrreducibleShape::odd(p, q, p + q + 1), tail as i64);
            }
        }
    }
    for p in 0..=(dim + 1) {
        for q in 0..=(dim + 1) {
            let sum_all = |p2: i32, q2: i32| -> u64 { c(p2, q2).values().sum() };
            let c1 = |p2: i32, q2: i32| -> u64 { c(p2, q2).get(&1).copied().unwrap_or(0) };
            let dots = sum_all(p, q) + c1(p - 1, q) + c1(p, q - 1) + sum_all(p - 1, q - 1);
            if dots > 0 {
                m.add(IrreducibleShape::dot(p, q), dots as i64);
            }
        }
    }
    m
}

/// Closed forms for the one-sided, Bott-Chern, and Aeppli dimensions of the
/// almost-abelian complex at (p,q), in terms of the `c_k`.
pub fn ab_formulas(spec: &AlmostAbelianSpec, p: i32, q: i32) -> (u64, u64, u64) {
    let dim = spec.chain_dim() as i32;
    let c = |p2: i32, q2: i32| -> BTreeMap<u32, u64> {
        if (0..=dim).contains(&p2) && (0..=dim).contains(&q2) {
            sl2_multiplicities(spec, p2 as u32, q2 as u32).unwrap()
        } else {
            BTreeMap::new()
        }
    };
    let delta = |p2: i32, q2: i32| -> u64 { c(p2, q2).values().sum() };
    let weighted = |p2: i32, q2: i32| -> u64 {
        c(p2, q2)
            .iter()
            .map(|(&k, &v)| if k == 1 { v } else { 2 * v })
            .sum()
    };
    let hodge = delta(p, q) + delta(p - 1, q) + delta(p, q - 1) + delta(p - 1, q - 1);
    let bc = delta(p, q) + delta(p - 1, q) + delta(p, q - 1) + weighted(p - 1, q - 1);
    let aeppli = weighted(p, q) + delta(p - 1, q) + delta(p, q - 1) + delta(p - 1, q - 1);
    (hodge, bc, aeppli)
}
