use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::Ring;
use crate::error::{Error, Result};

/// A square matrix whose entries are element indices of some base ring.
///
/// Rows and columns are 0-based here; the text format is semicolon-separated
/// rows of comma-separated entries, e.g. `1,0;0,1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixElem {
    n: usize,
    entries: Vec<usize>,
}

impl MatrixElem {
    pub fn zero(n: usize) -> Self {
        MatrixElem { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix rows must all have length n".into()));
        }
        Ok(MatrixElem { n, entries: rows.concat() })
    }

    pub fn from_entries(n: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not fill a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(MatrixElem { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn set_row(&mut self, i: usize, row: &[usize]) {
        self.entries[i * self.n..(i + 1) * self.n].copy_from_slice(row);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn sub(&self, other: &MatrixElem, base: &Ring) -> MatrixElem {
        debug_assert_eq!(self.n, other.n);
        MatrixElem {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| base.sub(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &MatrixElem, base: &Ring) -> MatrixElem {
        debug_assert_eq!(self.n, other.n);
        MatrixElem {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| base.add(a, b)).collect(),
        }
    }
}

impl fmt::Display for MatrixElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for MatrixElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad matrix entry {e:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixElem::from_rows(&rows)
    }
}

/// Determinant by cofactor expansion along the first row.
///
/// Uses only ring addition, subtraction and multiplication, so it is valid
/// over any commutative base.
pub fn det_entries(base: &Ring, n: usize, entries: &[usize]) -> usize {
    let cols: Vec<usize> = (0..n).collect();
    expand(base, n, entries, 0, &cols)
}

fn expand(base: &Ring, n: usize, entries: &[usize], row: usize, cols: &[usize]) -> usize {
    match cols.len() {
        0 => base.one(),
        1 => entries[row * n + cols[0]],
        2 => {
            let a = base.mul(entries[row * n + cols[0]], entries[(row + 1) * n + cols[1]]);
            let b = base.mul(entries[row * n + cols[1]], entries[(row + 1) * n + cols[0]]);
            base.sub(a, b)
        }
        _ => {
            let mut acc = 0;
            let mut minor = Vec::with_capacity(cols.len() - 1);
            for (k, &c) in cols.iter().enumerate() {
                let e = entries[row * n + c];
                if e == 0 {
                    continue;
                }
                minor.clear();
                minor.extend(cols.iter().copied().filter(|&x| x != c));
                let term = base.mul(e, expand(base, n, entries, row + 1, &minor));
                acc = if k % 2 == 0 { base.add(acc, term) } else { base.sub(acc, term) };
            }
            acc
        }
    }
}
