//! Human-readable tables: the diamond of one-sided cohomology numbers,
//! per-bidegree invariant tables, and decomposition listings. All output is
//! deterministic (sorted map iteration only).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cohomology::{InvariantBundle, VarouchasGroup};
use crate::complex::Bidegree;
use crate::shape::{IrreducibleShape, Multiset};

/// The triangular diamond layout of the one-sided numbers of a
/// first-quadrant bundle: top row `h^{n,n}`, middle row `h^{n,0}..h^{0,n}`,
/// bottom row `h^{0,0}`.
pub fn render_diamond(bundle: &InvariantBundle) -> String {
    let keys: Vec<Bidegree> = bundle
        .dolbeault
        .keys()
        .chain(bundle.bott_chern.keys())
        .chain(bundle.aeppli.keys())
        .copied()
        .collect();
    let Some(n) = keys.iter().map(|c| c.p.max(c.q)).max() else {
        return String::new();
    };
    let value = |p: i32, q: i32| bundle.dolbeault.get(&Bidegree { p, q }).copied().unwrap_or(0);
    let width = (0..=n)
        .flat_map(|p| (0..=n).map(move |q| value(p, q)))
        .max()
        .unwrap_or(0)
        .to_string()
        .len()
        .max(1);
    let mut out = String::new();
    // Row d runs over the antidiagonal p + q = 2n - d, p descending.
    for d in 0..=(2 * n) {
        let k = 2 * n - d;
        let p_hi = n.min(k);
        let p_lo = (k - n).max(0);
        let entries: Vec<String> = (p_lo..=p_hi)
            .rev()
            .map(|p| format!("{:width$}", value(p, k - p)))
            .collect();
        let pad = " ".repeat(((2 * n - (p_hi - p_lo + 1) + 1) as usize * (width + 1)) / 2);
        let _ = writeln!(out, "{pad}{}", entries.join(" "));
    }
    out
}

fn cell_table<V: std::fmt::Display>(name: &str, map: &BTreeMap<Bidegree, V>) -> String {
    if map.is_empty() {
        return format!("{name}: none\n");
    }
    let mut out = format!("{name}:\n");
    for (cell, v) in map {
        let _ = writeln!(out, "  {cell} = {v}");
    }
    out
}

/// Flat tables for every invariant of a bundle, diamond first.
pub fn render_bundle(bundle: &InvariantBundle) -> String {
    let mut out = String::new();
    let diamond = render_diamond(bundle);
    if !diamond.is_empty() {
        out.push_str("hodge diamond:\n");
        out.push_str(&diamond);
    }
    if bundle.betti.is_empty() {
        out.push_str("betti: none\n");
    } else {
        out.push_str("betti:\n");
        for (k, v) in &bundle.betti {
            let _ = writeln!(out, "  b_{k} = {v}");
        }
    }
    out.push_str(&cell_table("dolbeault", &bundle.dolbeault));
    out.push_str(&cell_table("conjugate dolbeault", &bundle.conj_dolbeault));
    out.push_str(&cell_table("bott-chern", &bundle.bott_chern));
    out.push_str(&cell_table("aeppli", &bundle.aeppli));
    if bundle.varouchas.is_empty() {
        out.push_str("varouchas: none\n");
    } else {
        out.push_str("varouchas:\n");
        for g in VarouchasGroup::ALL {
            for (&(group, cell), v) in &bundle.varouchas {
                if group == g {
                    let _ = writeln!(out, "  {g}{cell} = {v}");
                }
            }
        }
    }
    out.push_str("spectral pages (dim, rank of page differential):\n");
    for (label, data) in [("columns", &bundle.frolicher_std), ("rows", &bundle.frolicher_conj)] {
        let _ = writeln!(out, "  {label}:");
        for (cell, seq) in &data.pages {
            let body: Vec<String> =
                seq.iter().map(|(d, r)| format!("({d},{r})")).collect();
            let _ = writeln!(out, "    {cell}: {}", body.join(" "));
        }
        for (cell, v) in &data.stable {
            let _ = writeln!(out, "    {cell} stable dim {v}");
        }
    }
    if bundle.bigolin.is_empty() {
        out.push_str("bigolin: none\n");
    } else {
        out.push_str("bigolin (degree, corner) -> dim:\n");
        for (&(k, cell), v) in &bundle.bigolin {
            let _ = writeln!(out, "  h^{k}_{cell} = {v}");
        }
    }
    out
}

fn shape_kind_rank(shape: &IrreducibleShape) -> u8 {
    match shape {
        IrreducibleShape::Odd { .. } => 0,
        IrreducibleShape::EvenH { .. } => 1,
        IrreducibleShape::EvenV { .. } => 2,
        IrreducibleShape::Square { .. } => 3,
    }
}

fn shape_anchor(shape: &IrreducibleShape) -> (i32, i32) {
    match *shape {
        IrreducibleShape::Odd { p, q, .. }
        | IrreducibleShape::EvenH { p, q, .. }
        | IrreducibleShape::EvenV { p, q, .. }
        | IrreducibleShape::Square { p, q } => (p, q),
    }
}

fn shape_description(shape: &IrreducibleShape) -> &'static str {
    match shape {
        IrreducibleShape::Odd { p, q, k } => {
            use std::cmp::Ordering::*;
            match (p + q).cmp(k) {
                Equal => "dot",
                Greater => "odd, looking up",
                Less => "odd, looking down",
            }
        }
        IrreducibleShape::EvenH { .. } => "even, horizontal",
        IrreducibleShape::EvenV { .. } => "even, vertical",
        IrreducibleShape::Square { .. } => "square",
    }
}

/// Listing of a decomposition, sorted by (total degree, p, q, shape kind).
pub fn render_decomposition(m: &Multiset) -> String {
    if m.is_empty() {
        return "decomposition: empty\n".to_string();
    }
    let mut shapes: Vec<(&IrreducibleShape, i64)> = m.iter().collect();
    shapes.sort_by_key(|(s, _)| {
        let (p, q) = shape_anchor(s);
        (s.degree_key(), p, q, shape_kind_rank(s))
    });
    let total: i64 = shapes.iter().map(|&(_, m)| m).sum();
    let mut out = format!("decomposition ({total} irreducibles):\n");
    for (shape, mult) in shapes {
        let _ = writeln!(
            out,
            "  {:<16} x{:<4} len {:<3} {}",
            shape.to_string(),
            mult,
            shape.length(),
            shape_description(shape)
        );
    }
    out
}
