use std::fmt;

use super::ring::is_prime;
use crate::error::{Error, Result};

/// Dense matrix over ℤ_p with entries in `0..p`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl PrimeFieldMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeFieldMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Entries may be any integers; they are reduced mod `p`.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, nrows, ncols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u64);
            }
        }
        Ok(m)
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows, columns.len())?;
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> PrimeFieldMatrix {
        let mut t = PrimeFieldMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (a, b)| (acc + a * (b % self.p)) % self.p)
            })
            .collect())
    }

    fn echelon(&self) -> Echelon {
        let p = self.p;
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = inverse_mod(rows[r][c], p);
            for v in rows[r].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot_row = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let f = row[c];
                    for (v, w) in row.iter_mut().zip(&pivot_row) {
                        *v = (*v + p - f * w % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per non-pivot column in increasing
    /// column order, with a one in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let ech = self.echelon();
        (0..self.cols)
            .filter(|c| !ech.pivots.contains(c))
            .map(|free| {
                let mut x = vec![0u64; self.cols];
                x[free] = 1;
                for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                    x[pc] = (p - row[free]) % p;
                }
                x
            })
            .collect()
    }

    /// Reduced echelon basis of the column space.
    pub fn image_basis(&self) -> Vec<Vec<u64>> {
        self.transpose().echelon().rows
    }

    /// Some `x` with `Mx = b`, or `None` when `b` is outside the column space.
    pub fn solve_in_span(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = PrimeFieldMatrix::zeros(self.p, self.rows, self.cols + 1)?;
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            x[pc] = row[self.cols];
        }
        Ok(Some(x))
    }
}

pub(crate) fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PrimeFieldMatrix mod {} {}x{} [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let m = PrimeFieldMatrix::zeros(2, 2, 3).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = PrimeFieldMatrix::identity(3, 3).unwrap();
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        // Exhaustive over Z2^2: only (0,0) and (1,1) satisfy x0 + x1 = 0.
        let m = PrimeFieldMatrix::from_rows(2, &[vec![1, 1]]).unwrap();
        let solutions: Vec<Vec<u64>> = (0..4u64)
            .map(|k| vec![k & 1, k >> 1])
            .filter(|x| m.mul_vec(x).unwrap() == vec![0])
            .collect();
        assert_eq!(solutions, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeFieldMatrix::zeros(6, 1, 1), Err(Error::NotPrime(6)));
    }

    #[test]
    fn solve_cases() {
        let id = PrimeFieldMatrix::identity(5, 3).unwrap();
        assert_eq!(id.solve_in_span(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));

        let zero = PrimeFieldMatrix::zeros(2, 2, 2).unwrap();
        assert_eq!(zero.solve_in_span(&[1, 0]).unwrap(), None);

        // Exhaustive search over Z2^2 for [[1,1],[0,1]] x = (0,1).
        let m = PrimeFieldMatrix::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let brute: Vec<Vec<u64>> = (0..4u64)
            .map(|k| vec![k & 1, k >> 1])
            .filter(|x| m.mul_vec(x).unwrap() == vec![0, 1])
            .collect();
        assert_eq!(brute, vec![vec![1, 1]]);
        assert_eq!(m.solve_in_span(&[0, 1]).unwrap(), Some(vec![1, 1]));

        assert!(matches!(m.solve_in_span(&[1]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rank_nullity() {
        let m = PrimeFieldMatrix::from_rows(3, &[vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]]).unwrap();
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len() + m.rank(), 4);
        for x in &kernel {
            assert!(m.mul_vec(x).unwrap().iter().all(|&v| v == 0));
        }
        assert_eq!(m.image_basis().len(), m.rank());
    }
}
