//! Finite simplicial complexes over a globally ordered vertex set.
//!
//! Vertex order is the numeric order of ids, and within each dimension
//! simplices are kept in lexicographic order of their vertex sequences. That
//! order is the basis order of every chain group, so it fixes the row and
//! column indexing of all matrices built from a complex.

mod collapse;

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact_algebra::{Integer, IntegerMatrix, Ring, SparseVec};

pub use collapse::{collapse_thin, Thinning};

pub type VertexId = u32;

/// An oriented simplex `[v₀, …, v_q]` with `v₀ < ⋯ < v_q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() || !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Caller guarantees the vertices are strictly increasing and nonempty.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces `(i, [v₀,…,v̂_i,…,v_q])`; empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (i, Simplex(v))
        })
    }

    /// Every nonempty face, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.0.len()).flat_map(move |k| self.0.iter().copied().combinations(k).map(Simplex))
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite simplicial complex, closed under faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The closure of a set of simplices under taking faces.
    pub fn closure_from_maximal<I>(maximal: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in maximal {
            for face in s.faces() {
                let d = face.dim();
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, Vec::new());
                }
                by_dim[d].push(face);
            }
        }
        for layer in by_dim.iter_mut() {
            layer.sort_unstable();
            layer.dedup();
        }
        SimplicialComplex { by_dim }
    }

    /// Parses the complex file format: one maximal simplex per line as
    /// strictly increasing decimal vertex ids separated by single spaces;
    /// `#` comment lines and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut maximal = Vec::new();
        for (n, line) in text.split('\n').enumerate() {
            let line_no = n + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let vertices = line
                .split(' ')
                .map(|tok| {
                    tok.parse::<VertexId>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid vertex id {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let simplex = Simplex::new(vertices).map_err(|_| Error::Parse {
                line: line_no,
                message: "vertices must be strictly increasing".into(),
            })?;
            maximal.push(simplex);
        }
        if maximal.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "empty input: no simplices".into(),
            });
        }
        Ok(Self::closure_from_maximal(maximal))
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// `K^(q)` in basis order.
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.by_dim.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn total_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Basis index of the simplex with the given vertex list.
    pub fn index_of(&self, vertices: &[VertexId]) -> Option<usize> {
        let q = vertices.len().checked_sub(1)?;
        self.simplices(q)
            .binary_search_by(|s| s.0.as_slice().cmp(vertices))
            .ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s.vertices()).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    /// Simplices that are not a proper face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for q in 0..self.by_dim.len() {
            for s in &self.by_dim[q] {
                let covered = self.simplices(q + 1).iter().any(|t| s.is_face_of(t));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Renders the maximal simplices in the complex file format.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for s in self.maximal_simplices() {
            out.push_str(&s.0.iter().join(" "));
            out.push('\n');
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(q, l)| if q % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Matrix of ∂_q relative to the bases `K^(q)` (columns) and `K^(q−1)`
    /// (rows). Requires `1 <= q <= dim K`.
    pub fn boundary_matrix(&self, q: usize, ring: Ring) -> Result<IntegerMatrix> {
        let max = self.dim().unwrap_or(0);
        if q == 0 || q > max {
            return Err(Error::DimensionOutOfRange { requested: q, max });
        }
        Ok(self.boundary_operator(q, ring))
    }

    /// ∂_q for any `q`, as a (possibly empty) matrix; ∂₀ is the zero map to
    /// the zero group.
    pub fn boundary_operator(&self, q: usize, ring: Ring) -> IntegerMatrix {
        if q == 0 {
            return IntegerMatrix::zeros(0, self.count(0));
        }
        let columns = self
            .simplices(q)
            .iter()
            .map(|s| {
                let pairs = s
                    .facets()
                    .map(|(i, face)| {
                        let row = self.index_of(face.vertices()).expect("complex is face-closed");
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (row, Integer::from(sign))
                    })
                    .collect();
                SparseVec::from_pairs(pairs, ring)
            })
            .collect();
        IntegerMatrix::from_columns(self.count(q - 1), columns)
    }

    /// Subcomplex keeping the simplices for which `keep` holds. The caller
    /// must keep a face-closed set.
    pub(crate) fn filtered(&self, keep: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        let mut by_dim: Vec<Vec<Simplex>> = self
            .by_dim
            .iter()
            .map(|l| l.iter().filter(|s| keep(s)).cloned().collect())
            .collect();
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex { by_dim }
    }
}
