//! File formats: complexes, multisets, filling values, and invariant
//! bundles as structured JSON with scalar literals in `a/b+c/d*i` form.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cohomology::{InvariantBundle, PageData};
use crate::complex::{bd, Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::formal::{FillingMap, FillingSign};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::shape::{IrreducibleShape, Multiset};

/// On-disk form of a double complex: dimensions plus the nonzero matrices
/// of the two differentials, row-major with scalar literals.
#[derive(Serialize, Deserialize)]
pub struct ComplexFile {
    pub dims: Vec<(i32, i32, usize)>,
    #[serde(default)]
    pub del_h: Vec<(i32, i32, Vec<Vec<Scalar>>)>,
    #[serde(default)]
    pub del_v: Vec<(i32, i32, Vec<Vec<Scalar>>)>,
}

fn matrix_to_rows(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

impl ComplexFile {
    pub fn from_complex(c: &DoubleComplex) -> Self {
        let dims = c.dims().iter().map(|(&cell, &d)| (cell.p, cell.q, d)).collect();
        let table = |entries: &BTreeMap<Bidegree, ExactMatrix>| {
            entries
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&cell, m)| (cell.p, cell.q, matrix_to_rows(m)))
                .collect()
        };
        ComplexFile {
            dims,
            del_h: table(c.del_h_entries()),
            del_v: table(c.del_v_entries()),
        }
    }

    pub fn into_complex(self) -> Result<DoubleComplex> {
        let mut dims = BTreeMap::new();
        for (p, q, d) in self.dims {
            dims.insert(bd(p, q), d);
        }
        let build = |entries: Vec<(i32, i32, Vec<Vec<Scalar>>)>| -> Result<BTreeMap<Bidegree, ExactMatrix>> {
            let mut out = BTreeMap::new();
            for (p, q, rows) in entries {
                out.insert(bd(p, q), ExactMatrix::from_rows(rows)?);
            }
            Ok(out)
        };
        Ok(DoubleComplex::new(dims, build(self.del_h)?, build(self.del_v)?))
    }
}

/// One multiset entry; `k_or_l` is the degree index of an odd zigzag or the
/// half-length of an even one, and is ignored for squares.
#[derive(Serialize, Deserialize)]
pub struct ShapeEntry {
    pub shape: String,
    pub p: i32,
    pub q: i32,
    #[serde(default)]
    pub k_or_l: i64,
    pub mult: i64,
}

pub fn multiset_to_entries(m: &Multiset) -> Vec<ShapeEntry> {
    m.iter()
        .map(|(shape, mult)| {
            let (name, p, q, k_or_l) = match *shape {
                IrreducibleShape::Odd { p, q, k } => ("odd", p, q, k as i64),
                IrreducibleShape::EvenH { p, q, l } => ("even_h", p, q, l as i64),
                IrreducibleShape::EvenV { p, q, l } => ("even_v", p, q, l as i64),
                IrreducibleShape::Square { p, q } => ("square", p, q, 0),
            };
            ShapeEntry { shape: name.to_string(), p, q, k_or_l, mult }
        })
        .collect()
}

pub fn entries_to_multiset(entries: Vec<ShapeEntry>) -> Result<Multiset> {
    let mut m = Multiset::new();
    for e in entries {
        let shape = match e.shape.as_str() {
            "odd" => IrreducibleShape::odd(e.p, e.q, e.k_or_l as i32),
            "even_h" | "even_v" => {
                if e.k_or_l < 1 {
                    return Err(Error::Parse(format!(
                        "even zigzag at ({},{}) needs k_or_l >= 1",
                        e.p, e.q
                    )));
                }
                if e.shape == "even_h" {
                    IrreducibleShape::even_h(e.p, e.q, e.k_or_l as u32)
                } else {
                    IrreducibleShape::even_v(e.p, e.q, e.k_or_l as u32)
                }
            }
            "square" => IrreducibleShape::square(e.p, e.q),
            other => {
                return Err(Error::Parse(format!(
                    "unknown shape kind `{other}` (expected odd, even_h, even_v, square)"
                )))
            }
        };
        m.add(shape, e.mult);
    }
    Ok(m)
}

fn parse_error(path: &Path, err: serde_json::Error) -> Error {
    Error::Parse(format!("{}: {err}", path.display()))
}

pub fn read_complex(path: &Path) -> Result<DoubleComplex> {
    let text = std::fs::read_to_string(path)?;
    let file: ComplexFile = serde_json::from_str(&text).map_err(|e| parse_error(path, e))?;
    file.into_complex()
}

pub fn write_complex(path: &Path, c: &DoubleComplex) -> Result<()> {
    let file = ComplexFile::from_complex(c);
    std::fs::write(path, serde_json::to_string_pretty(&file).unwrap() + "\n")?;
    Ok(())
}

pub fn read_multiset(path: &Path) -> Result<Multiset> {
    let text = std::fs::read_to_string(path)?;
    let entries: Vec<ShapeEntry> =
        serde_json::from_str(&text).map_err(|e| parse_error(path, e))?;
    entries_to_multiset(entries)
}

pub fn write_multiset(path: &Path, m: &Multiset) -> Result<()> {
    let entries = multiset_to_entries(m);
    std::fs::write(path, serde_json::to_string_pretty(&entries).unwrap() + "\n")?;
    Ok(())
}

/// Filling values file: a JSON list of `[p, q, value]` triples.
pub fn read_filling_values(path: &Path) -> Result<BTreeMap<Bidegree, i64>> {
    let text = std::fs::read_to_string(path)?;
    let triples: Vec<(i32, i32, i64)> =
        serde_json::from_str(&text).map_err(|e| parse_error(path, e))?;
    Ok(triples.into_iter().map(|(p, q, v)| (bd(p, q), v)).collect())
}

pub fn filling_from_parts(
    k: i32,
    sign: FillingSign,
    values: BTreeMap<Bidegree, i64>,
) -> Result<FillingMap> {
    FillingMap::new(k, sign, values)
}

#[derive(Serialize)]
struct PageDataOut {
    pages: Vec<(i32, i32, Vec<(usize, usize)>)>,
    stable: Vec<(i32, i32, usize)>,
}

fn page_data_out(d: &PageData) -> PageDataOut {
    PageDataOut {
        pages: d.pages.iter().map(|(c, v)| (c.p, c.q, v.clone())).collect(),
        stable: d.stable.iter().map(|(c, &v)| (c.p, c.q, v)).collect(),
    }
}

#[derive(Serialize)]
struct BundleOut {
    betti: Vec<(i32, usize)>,
    dolbeault: Vec<(i32, i32, usize)>,
    conj_dolbeault: Vec<(i32, i32, usize)>,
    bott_chern: Vec<(i32, i32, usize)>,
    aeppli: Vec<(i32, i32, usize)>,
    varouchas: Vec<(String, i32, i32, usize)>,
    frolicher_std: PageDataOut,
    frolicher_conj: PageDataOut,
    bigolin: Vec<(i32, i32, i32, usize)>,
}

/// Canonical structured text of a bundle: every map as a sorted key/value
/// list, suitable for diffing.
pub fn bundle_to_json(b: &InvariantBundle) -> String {
    let per_cell = |m: &BTreeMap<Bidegree, usize>| {
        m.iter().map(|(c, &v)| (c.p, c.q, v)).collect::<Vec<_>>()
    };
    let out = BundleOut {
        betti: b.betti.iter().map(|(&k, &v)| (k, v)).collect(),
        dolbeault: per_cell(&b.dolbeault),
        conj_dolbeault: per_cell(&b.conj_dolbeault),
        bott_chern: per_cell(&b.bott_chern),
        aeppli: per_cell(&b.aeppli),
        varouchas: b
            .varouchas
            .iter()
            .map(|(&(g, c), &v)| (g.to_string(), c.p, c.q, v))
            .collect(),
        frolicher_std: page_data_out(&b.frolicher_std),
        frolicher_conj: page_data_out(&b.frolicher_conj),
        bigolin: b.bigolin.iter().map(|(&(k, c), &v)| (k, c.p, c.q, v)).collect(),
    };
    serde_json::to_string_pretty(&out).unwrap() + "\n"
}
