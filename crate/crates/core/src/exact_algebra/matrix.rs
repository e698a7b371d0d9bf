use std::fmt;

use super::integer::Integer;
use super::ring::Ring;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Integer)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Integer)>, ring: Ring) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Integer)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = ring.add(w, &v),
                _ => entries.push((i, ring.reduce(&v))),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, Integer::ONE)],
        }
    }

    pub fn from_dense(values: &[Integer], ring: Ring) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, ring.reduce(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SparseVec { entries }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Integer> {
        let mut out = vec![Integer::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Integer)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Integer {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Integer::ZERO,
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += coef * other`.
    pub fn axpy(&mut self, coef: &Integer, other: &SparseVec, ring: Ring) {
        if coef.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => merged.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = b.next().unwrap();
                    merged.push((*j, ring.mul(coef, w)));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = ring.add(&v, &ring.mul(coef, w));
                    if !s.is_zero() {
                        merged.push((i, s));
                    }
                }
                (Some(_), None) => merged.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    merged.push((*j, ring.mul(coef, w)));
                }
                (None, None) => break,
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.entries = merged;
    }

    pub fn scale(&mut self, coef: &Integer, ring: Ring) {
        for (_, v) in self.entries.iter_mut() {
            *v = ring.mul(v, coef);
        }
        self.entries.retain(|(_, v)| !v.is_zero());
    }

    pub fn reduce(&self, ring: Ring) -> SparseVec {
        let entries = self
            .entries
            .iter()
            .map(|(i, v)| (*i, ring.reduce(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SparseVec { entries }
    }

    /// Keeps entries whose index passes `keep`, renumbered through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        let mut entries: Vec<(usize, Integer)> = self
            .entries
            .iter()
            .filter_map(|(i, v)| map(*i).map(|j| (j, v.clone())))
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    pub fn dot(&self, other: &SparseVec, ring: Ring) -> Integer {
        let mut acc = Integer::ZERO;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, v)), Some((j, w))) = (a.peek(), b.peek()) {
            match i.cmp(j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    acc += &(v * w);
                    a.next();
                    b.next();
                }
            }
        }
        ring.reduce(&acc)
    }
}

/// Exact matrix over ℤ or ℤ_p, stored column-major with sparse columns.
///
/// The ring is not part of the value: every arithmetic method takes it, and
/// entries are kept reduced for whichever ring produced them.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntegerMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        IntegerMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Dense row-major construction; convenient in tests.
    pub fn from_rows<T: Into<Integer> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                let v: Integer = v.clone().into();
                if !v.is_zero() {
                    columns[j].push((i, v));
                }
            }
        }
        IntegerMatrix {
            rows: nrows,
            cols: ncols,
            columns: columns.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Integer {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, c)| c.entries.len() == 1 && c.entries[0].0 == j && c.entries[0].1.is_one())
    }

    pub fn to_dense(&self) -> Vec<Vec<Integer>> {
        let mut out = vec![vec![Integer::ZERO; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                out[i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut columns: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                columns[i].push((j, v.clone()));
            }
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: columns.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn reduce(&self, ring: Ring) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.reduce(ring)).collect(),
        }
    }

    /// `self * v` for a sparse column vector `v`.
    pub fn mul_vec(&self, v: &SparseVec, ring: Ring) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        for (k, x) in v.iter() {
            acc.add_scaled(&self.columns[k], x);
        }
        acc.finish(ring)
    }

    pub fn mul(&self, other: &IntegerMatrix, ring: Ring) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, x) in col.iter() {
                    acc.add_scaled(&self.columns[k], x);
                }
                acc.finish(ring)
            })
            .collect();
        IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    /// `self + coef * other`.
    pub fn add_scaled(&self, coef: &Integer, other: &IntegerMatrix, ring: Ring) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (c, o) in out.columns.iter_mut().zip(&other.columns) {
            c.axpy(coef, o, ring);
        }
        out
    }

    pub fn add(&self, other: &IntegerMatrix, ring: Ring) -> IntegerMatrix {
        self.add_scaled(&Integer::ONE, other, ring)
    }

    pub fn sub(&self, other: &IntegerMatrix, ring: Ring) -> IntegerMatrix {
        self.add_scaled(&Integer::from(-1), other, ring)
    }

    /// Columns `range` as a new matrix.
    pub fn column_range(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: range.len(),
            columns: self.columns[range].to_vec(),
        }
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        let start = range.start;
        let len = range.len();
        IntegerMatrix {
            rows: len,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| c.remap(|i| (i >= start && i < start + len).then(|| i - start)))
                .collect(),
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Dense scratch accumulator for building one sparse column at a time.
struct Accumulator {
    values: Vec<Integer>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Accumulator {
            values: vec![Integer::ZERO; len],
            touched: Vec::new(),
            marked: vec![false; len],
        }
    }

    fn add_scaled(&mut self, col: &SparseVec, x: &Integer) {
        for (i, v) in col.iter() {
            if !self.marked[i] {
                self.marked[i] = true;
                self.touched.push(i);
            }
            self.values[i] += &(v * x);
        }
    }

    fn finish(&mut self, ring: Ring) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = ring.reduce(&std::mem::take(&mut self.values[i]));
            self.marked[i] = false;
            if !v.is_zero() {
                entries.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec { entries }
    }
}
