//! Smith normal form with recorded, invertible changes of basis.
//!
//! Row and column operations add a multiple of one line to another or scale
//! a line by a unit; the final pivot ordering acts as a permutation. Each
//! operation is mirrored on `U`, `U⁻¹`, `V` and `V⁻¹`, and `U·A·V = D` holds
//! exactly at the end.
//!
//! Pivot rule: the nonzero entry of smallest Euclidean norm among the rows
//! and columns not yet finalized, ties broken by smallest row, then column.

use std::cmp::Ordering;

use super::integer::Integer;
use super::matrix::{IntegerMatrix, SparseVec};
use super::ring::Ring;

/// `U·A·V = D` with `D` diagonal, `d₁ | d₂ | ⋯ | d_rank`, all later entries 0.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub ring: Ring,
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.rank).map(|k| self.d.get(k, k)).collect()
    }

    /// Number of leading diagonal entries equal to one.
    pub fn unit_count(&self) -> usize {
        self.diagonal().iter().take_while(|d| d.is_one()).count()
    }
}

/// Smith normal form over ℤ.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfDecomposition {
    smith_normal_form_over(a, Ring::Integers)
}

/// Smith normal form over ℤ or a prime field. Over ℤ_p every nonzero
/// diagonal entry is normalized to one.
pub fn smith_normal_form_over(a: &IntegerMatrix, ring: Ring) -> SnfDecomposition {
    let a = a.reduce(ring);
    Reducer::new(&a, ring).run()
}

struct Reducer {
    ring: Ring,
    m: usize,
    n: usize,
    a: Vec<SparseVec>,
    /// Columns of Uᵀ: a row operation on U is a column operation here.
    u_t: Vec<SparseVec>,
    u_inv: Vec<SparseVec>,
    v: Vec<SparseVec>,
    /// Columns of (V⁻¹)ᵀ.
    v_inv_t: Vec<SparseVec>,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
    /// Per active column: smallest-norm entry as (value, row), refreshed lazily.
    best: Vec<Option<(Integer, usize)>>,
    dirty: Vec<bool>,
    pivots: Vec<(usize, usize, Integer)>,
}

impl Reducer {
    fn new(a: &IntegerMatrix, ring: Ring) -> Self {
        let (m, n) = (a.nrows(), a.ncols());
        let eye = |k: usize| (0..k).map(SparseVec::unit).collect::<Vec<_>>();
        Reducer {
            ring,
            m,
            n,
            a: a.columns().to_vec(),
            u_t: eye(m),
            u_inv: eye(m),
            v: eye(n),
            v_inv_t: eye(n),
            row_active: vec![true; m],
            col_active: vec![true; n],
            best: vec![None; n],
            dirty: vec![true; n],
            pivots: Vec::new(),
        }
    }

    /// Orders candidate pivots by (norm, row, column).
    fn better(&self, x: (&Integer, usize, usize), y: (&Integer, usize, usize)) -> bool {
        match self.ring.cmp_norm(x.0, y.0) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => (x.1, x.2) < (y.1, y.2),
        }
    }

    fn refresh(&mut self, c: usize) {
        let mut best: Option<(Integer, usize)> = None;
        for (i, x) in self.a[c].iter() {
            debug_assert!(self.row_active[i]);
            let take = match &best {
                None => true,
                Some((b, r)) => self.better((x, i, c), (b, *r, c)),
            };
            if take {
                best = Some((x.clone(), i));
            }
        }
        self.best[c] = best;
        self.dirty[c] = false;
    }

    fn global_pivot(&mut self) -> Option<(usize, usize)> {
        let mut found: Option<(Integer, usize, usize)> = None;
        for c in 0..self.n {
            if !self.col_active[c] {
                continue;
            }
            if self.dirty[c] {
                self.refresh(c);
            }
            if let Some((x, r)) = &self.best[c] {
                let take = match &found {
                    None => true,
                    Some((b, br, bc)) => self.better((x, *r, c), (b, *br, *bc)),
                };
                if take {
                    found = Some((x.clone(), *r, c));
                }
            }
        }
        found.map(|(_, r, c)| (r, c))
    }

    /// Active columns with a nonzero entry in row `i`.
    fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&c| self.col_active[c] && !self.a[c].get(i).is_zero())
            .collect()
    }

    /// column `c` -= q · column `j`.
    fn col_op(&mut self, c: usize, j: usize, q: &Integer) {
        let ring = self.ring;
        let neg = ring.neg(q);
        let src = self.a[j].clone();
        self.a[c].axpy(&neg, &src, ring);
        let src = self.v[j].clone();
        self.v[c].axpy(&neg, &src, ring);
        let src = self.v_inv_t[c].clone();
        self.v_inv_t[j].axpy(q, &src, ring);
        self.dirty[c] = true;
    }

    /// row `k` -= q · row `i`; `support` lists the columns where row `i` is nonzero.
    fn row_op(&mut self, k: usize, i: usize, q: &Integer, support: &[usize]) {
        let ring = self.ring;
        let neg = ring.neg(q);
        for &c in support {
            let x = self.a[c].get(i);
            let delta = SparseVec::from_pairs(vec![(k, ring.mul(&neg, &x))], ring);
            self.a[c].axpy(&Integer::ONE, &delta, ring);
            self.dirty[c] = true;
        }
        let src = self.u_t[i].clone();
        self.u_t[k].axpy(&neg, &src, ring);
        let src = self.u_inv[k].clone();
        self.u_inv[i].axpy(q, &src, ring);
    }

    /// row `i` *= unit.
    fn row_scale(&mut self, i: usize, unit: &Integer, support: &[usize]) {
        let ring = self.ring;
        for &c in support {
            let x = self.a[c].get(i);
            let delta = SparseVec::from_pairs(vec![(i, ring.sub(&ring.mul(&x, unit), &x))], ring);
            self.a[c].axpy(&Integer::ONE, &delta, ring);
            self.dirty[c] = true;
        }
        self.u_t[i].scale(unit, ring);
        let inv = ring.inverse(unit);
        self.u_inv[i].scale(&inv, ring);
    }

    /// Brings a pivot to a position where it is alone in its row and column
    /// and divides every remaining active entry. Returns its final position.
    fn isolate(&mut self, mut i: usize, mut j: usize) -> (usize, usize) {
        let ring = self.ring;
        loop {
            let p = self.a[j].get(i);
            debug_assert!(!p.is_zero());

            let mut next: Option<(Integer, usize, usize)> = None;
            let consider = |me: &Self, x: Integer, r: usize, c: usize, next: &mut Option<(Integer, usize, usize)>| {
                let take = match next {
                    None => true,
                    Some((b, br, bc)) => me.better((&x, r, c), (b, *br, *bc)),
                };
                if take {
                    *next = Some((x, r, c));
                }
            };

            for c in self.row_support(i) {
                if c == j {
                    continue;
                }
                let x = self.a[c].get(i);
                let (q, r) = ring.div_rem(&x, &p);
                if !q.is_zero() {
                    self.col_op(c, j, &q);
                }
                if !r.is_zero() {
                    let rem = self.a[c].get(i);
                    consider(self, rem, i, c, &mut next);
                }
            }
            if let Some((_, r, c)) = next {
                (i, j) = (r, c);
                continue;
            }

            let below: Vec<(usize, Integer)> = self.a[j]
                .iter()
                .filter(|(k, _)| *k != i)
                .map(|(k, x)| (k, x.clone()))
                .collect();
            for (k, x) in below {
                let (q, r) = ring.div_rem(&x, &p);
                if !q.is_zero() {
                    self.row_op(k, i, &q, &[j]);
                }
                if !r.is_zero() {
                    let rem = self.a[j].get(k);
                    consider(self, rem, k, j, &mut next);
                }
            }
            if let Some((_, r, c)) = next {
                (i, j) = (r, c);
                continue;
            }

            if !ring.is_unit(&p) {
                let offending = (0..self.n)
                    .filter(|&c| c != j && self.col_active[c])
                    .find_map(|c| self.a[c].iter().find(|(_, x)| !ring.divides(&p, x)).map(|(k, _)| k));
                if let Some(k) = offending {
                    let support = self.row_support(k);
                    self.row_op(i, k, &Integer::from(-1), &support);
                    continue;
                }
            }
            return (i, j);
        }
    }

    fn run(mut self) -> SnfDecomposition {
        while let Some((i0, j0)) = self.global_pivot() {
            let (i, j) = self.isolate(i0, j0);
            let p = self.a[j].get(i);
            let unit = self.ring.normalizing_unit(&p);
            if !unit.is_one() {
                self.row_scale(i, &unit, &[j]);
            }
            let p = self.a[j].get(i);
            self.row_active[i] = false;
            self.col_active[j] = false;
            self.pivots.push((i, j, p));
        }
        self.assemble()
    }

    fn assemble(self) -> SnfDecomposition {
        let rank = self.pivots.len();
        let row_order: Vec<usize> = self
            .pivots
            .iter()
            .map(|(i, _, _)| *i)
            .chain((0..self.m).filter(|&i| self.row_active[i]))
            .collect();
        let col_order: Vec<usize> = self
            .pivots
            .iter()
            .map(|(_, j, _)| *j)
            .chain((0..self.n).filter(|&j| self.col_active[j]))
            .collect();
        let mut d_cols = vec![SparseVec::new(); self.n];
        for (k, (_, _, p)) in self.pivots.iter().enumerate() {
            d_cols[k] = SparseVec::from_pairs(vec![(k, p.clone())], self.ring);
        }
        // U' = P·U: row k of U' is row row_order[k] of U; column k of U'ᵀ likewise.
        let u_t: Vec<SparseVec> = row_order.iter().map(|&i| self.u_t[i].clone()).collect();
        let u = IntegerMatrix::from_columns(self.m, u_t).transpose();
        // U'⁻¹ = U⁻¹·Pᵀ: column k is column row_order[k].
        let u_inv = IntegerMatrix::from_columns(self.m, row_order.iter().map(|&i| self.u_inv[i].clone()).collect());
        let v = IntegerMatrix::from_columns(self.n, col_order.iter().map(|&j| self.v[j].clone()).collect());
        let v_inv = IntegerMatrix::from_columns(self.n, col_order.iter().map(|&j| self.v_inv_t[j].clone()).collect())
            .transpose();

        SnfDecomposition {
            ring: self.ring,
            d: IntegerMatrix::from_columns(self.m, d_cols),
            u,
            u_inv,
            v,
            v_inv,
            rank,
        }
    }
}
