//! Chains, cochains, and contractions between free chain complexes.
//!
//! Cochains are stored in dual-basis coordinates (`σ*` for `σ ∈ K^(q)`), so
//! the dual of a contraction is literally the transpose of its matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{Integer, IntegerMatrix, Ring, SparseVec};
use crate::simplicial::{Simplex, SimplicialComplex};

/// A `q`-chain: coefficients on `K^(q)` in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub ring: Ring,
    pub coeffs: SparseVec,
}

/// A `q`-cochain in dual-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: SparseVec,
}

fn terms_to_vec(k: &SimplicialComplex, degree: usize, ring: Ring, terms: &[(Simplex, i64)]) -> Result<SparseVec> {
    let pairs = terms
        .iter()
        .map(|(s, c)| {
            if s.dim() != degree {
                return Err(Error::WrongDegree {
                    expected: degree,
                    got: s.dim(),
                });
            }
            let idx = k
                .index_of(s.vertices())
                .ok_or_else(|| Error::UnknownSimplex(s.vertices().to_vec()))?;
            Ok((idx, Integer::from(*c)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_pairs(pairs, ring))
}

impl Chain {
    pub fn zero(degree: usize, ring: Ring) -> Self {
        Chain {
            degree,
            ring,
            coeffs: SparseVec::new(),
        }
    }

    pub fn from_terms(k: &SimplicialComplex, degree: usize, ring: Ring, terms: &[(Simplex, i64)]) -> Result<Self> {
        Ok(Chain {
            degree,
            ring,
            coeffs: terms_to_vec(k, degree, ring, terms)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// `(simplex, coefficient)` pairs in basis order.
    pub fn terms<'a>(&'a self, k: &'a SimplicialComplex) -> impl Iterator<Item = (&'a Simplex, &'a Integer)> + 'a {
        let basis = k.simplices(self.degree);
        self.coeffs.iter().map(move |(i, c)| (&basis[i], c))
    }
}

impl Cochain {
    pub fn zero(degree: usize, ring: Ring) -> Self {
        Cochain {
            degree,
            ring,
            values: SparseVec::new(),
        }
    }

    pub fn from_terms(k: &SimplicialComplex, degree: usize, ring: Ring, terms: &[(Simplex, i64)]) -> Result<Self> {
        Ok(Cochain {
            degree,
            ring,
            values: terms_to_vec(k, degree, ring, terms)?,
        })
    }

    /// Cochain with `values[i]` on the `i`-th `degree`-simplex.
    pub fn from_values(degree: usize, ring: Ring, values: &[Integer]) -> Self {
        Cochain {
            degree,
            ring,
            values: SparseVec::from_dense(values, ring),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn value_at(&self, index: usize) -> Integer {
        self.values.get(index)
    }

    /// Value on a simplex given by its vertices; zero off the complex.
    pub fn value_on(&self, k: &SimplicialComplex, vertices: &[u32]) -> Integer {
        k.index_of(vertices).map_or(Integer::ZERO, |i| self.values.get(i))
    }

    pub fn to_dense(&self, k: &SimplicialComplex) -> Vec<Integer> {
        self.values.to_dense(k.count(self.degree))
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut values = self.values.clone();
        values.axpy(&Integer::ONE, &other.values, self.ring);
        Ok(Cochain {
            degree: self.degree,
            ring: self.ring,
            values,
        })
    }

    /// Same coordinates read in another ring (e.g. reduction mod 2).
    pub fn change_ring(&self, ring: Ring) -> Cochain {
        Cochain {
            degree: self.degree,
            ring,
            values: self.values.reduce(ring),
        }
    }

    /// The pairing `c(a)`.
    pub fn evaluate(&self, chain: &Chain) -> Result<Integer> {
        if self.ring != chain.ring {
            return Err(Error::RingMismatch(self.ring, chain.ring));
        }
        if self.degree != chain.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                got: chain.degree,
            });
        }
        Ok(self.values.dot(&chain.coeffs, self.ring))
    }
}

/// ∂ of a chain by the alternating face formula. Degree-0 chains map to zero.
pub fn boundary(k: &SimplicialComplex, a: &Chain) -> Result<Chain> {
    if a.degree == 0 {
        return Ok(Chain::zero(0, a.ring));
    }
    let basis = k.simplices(a.degree);
    let mut pairs = Vec::new();
    for (i, coef) in a.coeffs.iter() {
        let s = basis
            .get(i)
            .ok_or_else(|| Error::Consistency(format!("chain index {i} outside K^({})", a.degree)))?;
        for (pos, face) in s.facets() {
            let row = k
                .index_of(face.vertices())
                .ok_or_else(|| Error::UnknownSimplex(face.vertices().to_vec()))?;
            let c = if pos % 2 == 0 { coef.clone() } else { -coef };
            pairs.push((row, c));
        }
    }
    Ok(Chain {
        degree: a.degree - 1,
        ring: a.ring,
        coeffs: SparseVec::from_pairs(pairs, a.ring),
    })
}

/// δc with `(δc)(σ) = c(∂σ)` on every `(q+1)`-simplex.
pub fn coboundary(k: &SimplicialComplex, c: &Cochain) -> Cochain {
    let q = c.degree;
    let values = k
        .simplices(q + 1)
        .iter()
        .enumerate()
        .filter_map(|(j, s)| {
            let mut acc = Integer::ZERO;
            for (pos, face) in s.facets() {
                let v = c.value_on(k, face.vertices());
                if pos % 2 == 0 {
                    acc += &v;
                } else {
                    acc -= &v;
                }
            }
            let acc = c.ring.reduce(&acc);
            (!acc.is_zero()).then_some((j, acc))
        })
        .collect();
    Cochain {
        degree: q + 1,
        ring: c.ring,
        values: SparseVec::from_pairs(values, c.ring),
    }
}

/// Direction of a complex's differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Chain complex, differential of degree −1.
    Chain,
    /// Cochain complex, differential of degree +1.
    Cochain,
}

impl Grading {
    pub fn shift(self) -> isize {
        match self {
            Grading::Chain => -1,
            Grading::Cochain => 1,
        }
    }

    fn opposite(self) -> Grading {
        match self {
            Grading::Chain => Grading::Cochain,
            Grading::Cochain => Grading::Chain,
        }
    }
}

/// A bounded complex of finitely generated free modules with chosen bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ring: Ring,
    pub grading: Grading,
    ranks: Vec<usize>,
    /// `differentials[q]`: degree `q` to degree `q + shift`.
    differentials: Vec<IntegerMatrix>,
}

fn target(q: usize, shift: isize) -> Option<usize> {
    q.checked_add_signed(shift)
}

impl ChainComplex {
    /// Builds a complex; `differentials[q]` must have shape
    /// `rank(q + shift) × rank(q)` (missing degrees count as rank zero).
    pub fn new(ring: Ring, grading: Grading, ranks: Vec<usize>, differentials: Vec<IntegerMatrix>) -> Result<Self> {
        let cx = ChainComplex {
            ring,
            grading,
            ranks,
            differentials,
        };
        for q in 0..cx.ranks.len() {
            let d = cx.differential(q);
            let rows = target(q, grading.shift()).map_or(0, |t| cx.rank(t));
            if d.nrows() != rows || d.ncols() != cx.rank(q) {
                return Err(Error::Consistency(format!("differential {q} has wrong shape")));
            }
        }
        Ok(cx)
    }

    /// `C_*(K)` over `ring` in the simplex bases.
    pub fn of_complex(k: &SimplicialComplex, ring: Ring) -> Self {
        let top = k.dim().map_or(0, |d| d + 1);
        ChainComplex {
            ring,
            grading: Grading::Chain,
            ranks: (0..top).map(|q| k.count(q)).collect(),
            differentials: (0..top).map(|q| k.boundary_operator(q, ring)).collect(),
        }
    }

    /// One past the highest degree with a (possibly zero) group.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Differential out of degree `q`, zero-shaped when out of range.
    pub fn differential(&self, q: usize) -> IntegerMatrix {
        match self.differentials.get(q) {
            Some(d) => d.clone(),
            None => {
                let rows = target(q, self.grading.shift()).map_or(0, |t| self.rank(t));
                IntegerMatrix::zeros(rows, self.rank(q))
            }
        }
    }

    /// The Hom-dual complex with transposed differentials.
    pub fn dual(&self) -> ChainComplex {
        let s = self.grading.shift();
        let differentials = (0..self.len())
            .map(|q| match target(q, -s) {
                Some(src) if src < self.len() => self.differential(src).transpose(),
                _ => {
                    let rows = target(q, -s).map_or(0, |t| self.rank(t));
                    IntegerMatrix::zeros(rows, self.rank(q))
                }
            })
            .collect();
        ChainComplex {
            ring: self.ring,
            grading: self.grading.opposite(),
            ranks: self.ranks.clone(),
            differentials,
        }
    }

    pub fn with_ring(&self, ring: Ring) -> ChainComplex {
        ChainComplex {
            ring,
            grading: self.grading,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(|d| d.reduce(ring)).collect(),
        }
    }
}

/// A family of matrices `maps[q]` from degree `q` to degree `q + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: isize,
    pub maps: Vec<IntegerMatrix>,
}

impl GradedMap {
    /// The component out of degree `q`, zero when not stored.
    pub fn at(&self, q: usize, source: &ChainComplex, target_cx: &ChainComplex) -> IntegerMatrix {
        match self.maps.get(q) {
            Some(m) => m.clone(),
            None => {
                let rows = target(q, self.shift).map_or(0, |t| target_cx.rank(t));
                IntegerMatrix::zeros(rows, source.rank(q))
            }
        }
    }

    pub fn get(&self, q: usize) -> Option<&IntegerMatrix> {
        self.maps.get(q)
    }
}

/// The contraction identities, named for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    Shape,
    ProjectionInclusion,
    Homotopy,
    HomotopyInclusion,
    ProjectionHomotopy,
    HomotopySquared,
    ProjectionChainMap,
    InclusionChainMap,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::Shape => "matrix shapes",
            Identity::ProjectionInclusion => "fg = 1",
            Identity::Homotopy => "1 - gf = phi d + d phi",
            Identity::HomotopyInclusion => "phi g = 0",
            Identity::ProjectionHomotopy => "f phi = 0",
            Identity::HomotopySquared => "phi phi = 0",
            Identity::ProjectionChainMap => "f d = d f",
            Identity::InclusionChainMap => "g d = d g",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub degree: usize,
}

/// Violated identities; empty iff the contraction is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionReport {
    pub violations: Vec<Violation>,
}

impl ContractionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("OK");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} (degree {})", v.identity, v.degree))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// A contraction `(f, g, φ)` of `big` onto `small`: `fg = 1`,
/// `1 − gf = φd + dφ`, `φg = 0`, `fφ = 0`, `φφ = 0`, with `f` and `g` chain maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub big: ChainComplex,
    pub small: ChainComplex,
    pub f: GradedMap,
    pub g: GradedMap,
    pub phi: GradedMap,
}

impl Contraction {
    pub fn ring(&self) -> Ring {
        self.big.ring
    }

    /// The same matrices read over another ring (e.g. an integral
    /// contraction reduced mod p).
    pub fn with_ring(&self, ring: Ring) -> Contraction {
        let reduce = |m: &GradedMap| GradedMap {
            shift: m.shift,
            maps: m.maps.iter().map(|x| x.reduce(ring)).collect(),
        };
        Contraction {
            big: self.big.with_ring(ring),
            small: self.small.with_ring(ring),
            f: reduce(&self.f),
            g: reduce(&self.g),
            phi: reduce(&self.phi),
        }
    }

    pub fn identity(cx: &ChainComplex) -> Self {
        let n = cx.len();
        let eye: Vec<IntegerMatrix> = (0..n).map(|q| IntegerMatrix::identity(cx.rank(q))).collect();
        let s = -cx.grading.shift();
        let phi = (0..n)
            .map(|q| {
                let rows = target(q, s).map_or(0, |t| cx.rank(t));
                IntegerMatrix::zeros(rows, cx.rank(q))
            })
            .collect();
        Contraction {
            big: cx.clone(),
            small: cx.clone(),
            f: GradedMap {
                shift: 0,
                maps: eye.clone(),
            },
            g: GradedMap { shift: 0, maps: eye },
            phi: GradedMap { shift: s, maps: phi },
        }
    }

    /// Evaluates every contraction identity degree by degree.
    pub fn check(&self) -> ContractionReport {
        let ring = self.ring();
        let (big, small) = (&self.big, &self.small);
        let s = big.grading.shift();
        let mut violations = Vec::new();
        let degrees = big.len().max(small.len());
        let fail = |violations: &mut Vec<Violation>, identity, degree| violations.push(Violation { identity, degree });

        if self.phi.shift != -s || self.f.shift != 0 || self.g.shift != 0 || big.grading != small.grading {
            fail(&mut violations, Identity::Shape, 0);
            return ContractionReport { violations };
        }

        for q in 0..degrees {
            let f = self.f.at(q, big, small);
            let g = self.g.at(q, small, big);
            let phi = self.phi.at(q, big, big);
            let d_big = big.differential(q);
            let d_small = small.differential(q);
            let shapes_ok = f.nrows() == small.rank(q)
                && f.ncols() == big.rank(q)
                && g.nrows() == big.rank(q)
                && g.ncols() == small.rank(q)
                && phi.ncols() == big.rank(q)
                && phi.nrows() == target(q, -s).map_or(0, |t| big.rank(t));
            if !shapes_ok {
                fail(&mut violations, Identity::Shape, q);
                continue;
            }

            if !f.mul(&g, ring).is_identity() && small.rank(q) > 0 {
                fail(&mut violations, Identity::ProjectionInclusion, q);
            }

            // 1 − gf = φ_{q+s} d_q + d_{q−s} φ_q
            let mut rhs = IntegerMatrix::zeros(big.rank(q), big.rank(q));
            if let Some(t) = target(q, s) {
                let phi_back = self.phi.at(t, big, big);
                if phi_back.ncols() == d_big.nrows() {
                    rhs = rhs.add(&phi_back.mul(&d_big, ring), ring);
                }
            }
            if let Some(t) = target(q, -s) {
                let d_up = big.differential(t);
                if d_up.ncols() == phi.nrows() && d_up.nrows() == big.rank(q) {
                    rhs = rhs.add(&d_up.mul(&phi, ring), ring);
                }
            }
            let lhs = IntegerMatrix::identity(big.rank(q)).sub(&g.mul(&f, ring), ring);
            if lhs != rhs {
                fail(&mut violations, Identity::Homotopy, q);
            }

            if !phi.mul(&g, ring).is_zero() {
                fail(&mut violations, Identity::HomotopyInclusion, q);
            }
            if let Some(t) = target(q, -s) {
                let f_t = self.f.at(t, big, small);
                if !f_t.mul(&phi, ring).is_zero() {
                    fail(&mut violations, Identity::ProjectionHomotopy, q);
                }
                let phi_t = self.phi.at(t, big, big);
                if !phi_t.mul(&phi, ring).is_zero() {
                    fail(&mut violations, Identity::HomotopySquared, q);
                }
            }
            if let Some(t) = target(q, s) {
                let f_t = self.f.at(t, big, small);
                if f_t.mul(&d_big, ring) != d_small.mul(&f, ring) {
                    fail(&mut violations, Identity::ProjectionChainMap, q);
                }
                let g_t = self.g.at(t, small, big);
                if g_t.mul(&d_small, ring) != d_big.mul(&g, ring) {
                    fail(&mut violations, Identity::InclusionChainMap, q);
                }
            }
        }
        ContractionReport { violations }
    }

    /// The contraction `(f*, g*, φ*)` of the Hom-dual complexes:
    /// `f*(c) = c∘g`, `g*(c′) = c′∘f`, `φ*(c) = c∘φ`.
    pub fn dualize(&self) -> Contraction {
        let s = self.big.grading.shift();
        let (big, small) = (&self.big, &self.small);
        let n = big.len().max(small.len());
        let f_star = (0..n).map(|q| self.g.at(q, small, big).transpose()).collect();
        let g_star = (0..n).map(|q| self.f.at(q, big, small).transpose()).collect();
        // dual φ goes from degree q to q + s; it is the transpose of φ out of q + s
        let phi_star = (0..n)
            .map(|q| match target(q, s) {
                Some(src) => self.phi.at(src, big, big).transpose(),
                None => IntegerMatrix::zeros(0, big.rank(q)),
            })
            .collect();
        Contraction {
            big: big.dual(),
            small: small.dual(),
            f: GradedMap { shift: 0, maps: f_star },
            g: GradedMap { shift: 0, maps: g_star },
            phi: GradedMap {
                shift: s,
                maps: phi_star,
            },
        }
    }

    /// Composite `big → self.small = next.big → next.small`:
    /// `(f₂f₁, g₁g₂, φ₁ + g₁φ₂f₁)`.
    pub fn compose(&self, next: &Contraction) -> Result<Contraction> {
        let ring = self.ring();
        if next.ring() != ring {
            return Err(Error::RingMismatch(ring, next.ring()));
        }
        if self.small.ranks() != next.big.ranks() {
            return Err(Error::Consistency("composed contractions do not match".into()));
        }
        let (a, m, b) = (&self.big, &self.small, &next.small);
        let s = -a.grading.shift();
        let n = a.len();
        let f = (0..n)
            .map(|q| next.f.at(q, m, b).mul(&self.f.at(q, a, m), ring))
            .collect();
        let g = (0..n)
            .map(|q| self.g.at(q, m, a).mul(&next.g.at(q, b, m), ring))
            .collect();
        let phi = (0..n)
            .map(|q| {
                let base = self.phi.at(q, a, a);
                match target(q, s) {
                    Some(t) if t < n => {
                        let extra = self
                            .g
                            .at(t, m, a)
                            .mul(&next.phi.at(q, m, m), ring)
                            .mul(&self.f.at(q, a, m), ring);
                        base.add(&extra, ring)
                    }
                    _ => base,
                }
            })
            .collect();
        Ok(Contraction {
            big: a.clone(),
            small: b.clone(),
            f: GradedMap { shift: 0, maps: f },
            g: GradedMap { shift: 0, maps: g },
            phi: GradedMap { shift: s, maps: phi },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spx(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_boundary() {
        let k = SimplicialComplex::parse("0 1 2").unwrap();
        let a = Chain::from_terms(&k, 2, Ring::Integers, &[(spx(&[0, 1, 2]), 1)]).unwrap();
        let b = boundary(&k, &a).unwrap();
        let expected = Chain::from_terms(
            &k,
            1,
            Ring::Integers,
            &[(spx(&[1, 2]), 1), (spx(&[0, 2]), -1), (spx(&[0, 1]), 1)],
        )
        .unwrap();
        assert_eq!(b, expected);
        assert!(boundary(&k, &b).unwrap().is_zero());
    }

    #[test]
    fn vertex_boundary_is_zero() {
        let k = SimplicialComplex::parse("0 1").unwrap();
        let a = Chain::from_terms(&k, 0, Ring::Integers, &[(spx(&[1]), 3)]).unwrap();
        assert!(boundary(&k, &a).unwrap().is_zero());
    }

    #[test]
    fn boundary_squared_on_tetrahedron() {
        let k = SimplicialComplex::parse("0 1 2 3").unwrap();
        let a = Chain::from_terms(&k, 3, Ring::Integers, &[(spx(&[0, 1, 2, 3]), 1)]).unwrap();
        let bb = boundary(&k, &boundary(&k, &a).unwrap()).unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn chain_rejects_foreign_simplex() {
        let k = SimplicialComplex::parse("0 1").unwrap();
        let err = Chain::from_terms(&k, 1, Ring::Integers, &[(spx(&[0, 2]), 1)]).unwrap_err();
        assert_eq!(err, Error::UnknownSimplex(vec![0, 2]));
    }

    #[test]
    fn coboundary_of_vertex_dual() {
        let k = SimplicialComplex::parse("0 1 2").unwrap();
        let c = Cochain::from_terms(&k, 0, Ring::Integers, &[(spx(&[1]), 1)]).unwrap();
        let dc = coboundary(&k, &c);
        // (δc)([0,1]) = c([1]) - c([0]) = 1
        assert_eq!(dc.value_on(&k, &[0, 1]), Integer::ONE);
        assert_eq!(dc.value_on(&k, &[1, 2]), Integer::from(-1));
        assert_eq!(dc.value_on(&k, &[0, 2]), Integer::ZERO);
        assert!(coboundary(&k, &dc).is_zero());
    }

    #[test]
    fn constant_zero_cochain_is_cocycle() {
        let k = SimplicialComplex::parse("0 1 2\n2 3").unwrap();
        let ones = vec![Integer::ONE; k.count(0)];
        let c = Cochain::from_values(0, Ring::Integers, &ones);
        assert!(coboundary(&k, &c).is_zero());
    }

    #[test]
    fn identity_contraction_checks_and_dualizes() {
        let k = SimplicialComplex::parse("0 1 2\n2 3").unwrap();
        let cx = ChainComplex::of_complex(&k, Ring::Integers);
        let id = Contraction::identity(&cx);
        assert!(id.check().is_ok());
        let dual = id.dualize();
        assert!(dual.check().is_ok());
        assert_eq!(dual, Contraction::identity(&cx.dual()));
        assert_eq!(dual.dualize(), id);
    }

    #[test]
    fn zero_homotopy_breaks_homotopy_identity() {
        // Contract a segment onto one endpoint with φ forgotten.
        let k = SimplicialComplex::parse("0 1").unwrap();
        let big = ChainComplex::of_complex(&k, Ring::Integers);
        let small = ChainComplex::new(
            Ring::Integers,
            Grading::Chain,
            vec![1, 0],
            vec![IntegerMatrix::zeros(0, 1), IntegerMatrix::zeros(1, 0)],
        )
        .unwrap();
        let mut r = Contraction {
            big: big.clone(),
            small,
            f: GradedMap {
                shift: 0,
                maps: vec![IntegerMatrix::from_rows(&[vec![1i64, 1]]), IntegerMatrix::zeros(0, 1)],
            },
            g: GradedMap {
                shift: 0,
                maps: vec![
                    IntegerMatrix::from_rows(&[vec![1i64], vec![0]]),
                    IntegerMatrix::zeros(1, 0),
                ],
            },
            phi: GradedMap {
                shift: 1,
                maps: vec![IntegerMatrix::from_rows(&[vec![0i64, 1]]), IntegerMatrix::zeros(0, 1)],
            },
        };
        assert!(r.check().is_ok(), "{}", r.check());
        assert!(r.dualize().check().is_ok());
        r.phi.maps[0] = IntegerMatrix::zeros(1, 2);
        let report = r.check();
        assert!(report.violations.iter().any(|v| v.identity == Identity::Homotopy));
    }
}
