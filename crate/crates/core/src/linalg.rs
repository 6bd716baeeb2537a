//! Sparse linear algebra over `F_p`: incremental row echelon forms, rank and
//! kernels.

use crate::field::PrimeField;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// A sparse vector: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, u32)>;

/// `a + s * b`.
pub fn axpy(fp: &PrimeField, a: &[(usize, u32)], s: u32, b: &[(usize, u32)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push((b[j].0, fp.mul(s, b[j].1)));
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                let v = fp.add(a[i].1, fp.mul(s, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(c, v)| (c, fp.mul(s, v))));
    out
}

/// Builds a sparse row from unsorted entries, summing duplicates.
pub fn sparse_from(fp: &PrimeField, mut entries: Vec<(usize, u32)>) -> SparseRow {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = fp.add(last.1, v),
            _ => out.push((c, v)),
        }
        if out.last().is_some_and(|e| e.1 == 0) {
            out.pop();
        }
    }
    out
}

/// Row echelon form built one row at a time. Pivot rows are monic in their
/// first entry. Each stored row remembers which inserted rows produced it, so
/// dependencies can be read off when `track` is set.
pub struct Echelon {
    fp: PrimeField,
    pivots: BTreeMap<usize, (SparseRow, SparseRow)>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new(fp: PrimeField) -> Self {
        Echelon { fp, pivots: BTreeMap::new(), track: false, inserted: 0 }
    }

    /// An echelon form that records each pivot row as a combination of inputs.
    pub fn tracking(fp: PrimeField) -> Self {
        Echelon { fp, pivots: BTreeMap::new(), track: true, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots; returns the remainder together with
    /// the combination of inputs it represents.
    fn reduce(&self, mut row: SparseRow, mut comb: SparseRow) -> (SparseRow, SparseRow) {
        let mut start = 0;
        while start < row.len() {
            let (col, v) = row[start];
            match self.pivots.get(&col) {
                Some((prow, pcomb)) => {
                    let s = self.fp.neg(v);
                    let tail = axpy(&self.fp, &row[start..], s, prow);
                    row.truncate(start);
                    row.extend(tail);
                    if self.track {
                        comb = axpy(&self.fp, &comb, s, pcomb);
                    }
                }
                None => start += 1,
            }
        }
        (row, comb)
    }

    /// Inserts a row. Returns `None` if it was independent of earlier rows,
    /// otherwise the dependency (when tracking): a combination of inserted
    /// rows, including this one with coefficient 1, that vanishes.
    pub fn insert(&mut self, row: SparseRow) -> Option<SparseRow> {
        let id = self.inserted;
        self.inserted += 1;
        let comb = if self.track { alloc::vec![(id, 1)] } else { Vec::new() };
        let (mut row, mut comb) = self.reduce(row, comb);
        if row.is_empty() {
            return Some(comb);
        }
        let inv = self.fp.inv(row[0].1);
        for e in row.iter_mut() {
            e.1 = self.fp.mul(e.1, inv);
        }
        for e in comb.iter_mut() {
            e.1 = self.fp.mul(e.1, inv);
        }
        self.pivots.insert(row[0].0, (row, comb));
        None
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row, Vec::new()).0.is_empty()
    }
}

/// Rank of the matrix with the given rows.
pub fn rank(fp: &PrimeField, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new(*fp);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// A basis of the left kernel: combinations of `rows` that vanish.
pub fn left_kernel(fp: &PrimeField, rows: impl IntoIterator<Item = SparseRow>) -> Vec<SparseRow> {
    let mut e = Echelon::tracking(*fp);
    rows.into_iter().filter_map(|r| e.insert(r)).collect()
}
