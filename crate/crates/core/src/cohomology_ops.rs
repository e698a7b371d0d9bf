//! Cohomology operations as matrices between cohomology bases, and the Adem
//! secondary operation `Ψ₂` with its indeterminacy.

use crate::cochain_ops::{cup, cup_i, p1_cochain, psi_cochain, sq_cochain};
use crate::complexes::{coboundary, Cochain};
use crate::error::{Error, Result};
use crate::exact_algebra::{PrimeFieldMatrix, Ring};
use crate::minimal_model::{IntegralClass, ModelCache};
use crate::simplicial::SimplicialComplex;

/// A primary operation evaluated at cochain level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    /// `Sq^i` over ℤ₂.
    Sq(usize),
    /// `P₁` over ℤ_p, `p` odd.
    P1(u64),
    /// `α ↦ α ⌣ α` over ℤ_p.
    CupSquare(u64),
}

impl Operation {
    pub fn ring(&self) -> Result<Ring> {
        match *self {
            Operation::Sq(_) => Ok(Ring::Mod(2)),
            Operation::P1(2) => Err(Error::Unsupported("P1 needs an odd prime; use Sq^i for p = 2".into())),
            Operation::P1(p) | Operation::CupSquare(p) => Ring::prime_field(p),
        }
    }

    pub fn target_degree(&self, q: usize) -> usize {
        match *self {
            Operation::Sq(i) => q + i,
            Operation::P1(p) => (p as usize * q).saturating_sub(1),
            Operation::CupSquare(_) => 2 * q,
        }
    }

    pub fn apply(&self, k: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
        match *self {
            Operation::Sq(i) => sq_cochain(k, c, i),
            Operation::P1(p) => p1_cochain(k, c, p),
            Operation::CupSquare(_) => cup(k, c, c),
        }
    }
}

/// Matrix of an operation `H^q → H^{q′}` in the model bases, with kernel and
/// image bases over the prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationMatrix {
    pub source_degree: usize,
    pub target_degree: usize,
    pub ring: Ring,
    /// Column `j` is `f*(op(g*(α_j)))`.
    pub matrix: PrimeFieldMatrix,
    pub kernel: Vec<Vec<u64>>,
    pub image: Vec<Vec<u64>>,
}

impl OperationMatrix {
    fn from_columns(
        source_degree: usize,
        target_degree: usize,
        ring: Ring,
        rows: usize,
        columns: &[Vec<u64>],
    ) -> Result<Self> {
        let matrix = PrimeFieldMatrix::from_columns(ring.characteristic(), rows, columns)?;
        Ok(OperationMatrix {
            source_degree,
            target_degree,
            ring,
            kernel: matrix.kernel_basis(),
            image: matrix.image_basis(),
            matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.image.len()
    }
}

/// Applies `op` to a cocycle and checks the output is a cocycle.
fn apply_checked(k: &SimplicialComplex, op: &Operation, c: &Cochain) -> Result<Cochain> {
    let out = op.apply(k, c)?;
    if !coboundary(k, &out).is_zero() {
        return Err(Error::Consistency(format!("{op:?} produced a non-cocycle")));
    }
    Ok(out)
}

/// The matrix of `op` on `H^q(K; ℤ_p)`: `f* op g*` column by column.
pub fn operation_matrix(cache: &ModelCache, op: Operation, q: usize) -> Result<OperationMatrix> {
    let ring = op.ring()?;
    let k = cache.complex();
    let model = cache.model(ring);
    let source = model.cohomology_basis(q)?;
    let target_degree = op.target_degree(q);
    let target = model.cohomology_basis(target_degree)?;
    let columns = source
        .representatives
        .iter()
        .map(|c| target.coordinates(&apply_checked(k, &op, c)?))
        .collect::<Result<Vec<_>>>()?;
    OperationMatrix::from_columns(q, target_degree, ring, target.dim(), &columns)
}

/// `P₁` on `H^q(K; ℤ_p)`.
pub fn p1_matrix(cache: &ModelCache, p: u64, q: usize) -> Result<OperationMatrix> {
    operation_matrix(cache, Operation::P1(p), q)
}

/// Products `α_i ⌣ α_j` of basis classes of `H^q(K; ℤ_p)`, as coordinates in
/// `H^{2q}`; entry `[i][j]`.
pub fn cup_product_table(cache: &ModelCache, p: u64, q: usize) -> Result<Vec<Vec<Vec<u64>>>> {
    let ring = Ring::prime_field(p)?;
    let k = cache.complex();
    let model = cache.model(ring);
    let source = model.cohomology_basis(q)?;
    let target = model.cohomology_basis(2 * q)?;
    source
        .representatives
        .iter()
        .map(|a| {
            source
                .representatives
                .iter()
                .map(|b| target.coordinates(&cup(k, a, b)?))
                .collect()
        })
        .collect()
}

/// `N^q(K)`, the kernel of `Sq²: H^q(K; ℤ) → H^{q+2}(K; ℤ₂)`.
#[derive(Clone, Debug)]
pub struct Sq2Kernel {
    pub degree: usize,
    /// Generators of `H^q(K; ℤ)`; kernel vectors are mod-2 coefficients on these.
    pub generators: Vec<IntegralClass>,
    /// Columns are `Sq²` of the reduced generators in `H^{q+2}(K; ℤ₂)`.
    pub matrix: PrimeFieldMatrix,
    pub kernel: Vec<Vec<u64>>,
}

impl Sq2Kernel {
    pub fn contains(&self, alpha: &[u64]) -> Result<bool> {
        Ok(self.matrix.mul_vec(alpha)?.iter().all(|&v| v == 0))
    }

    /// The integral cocycle `Σ α_j c_j` with `α_j ∈ {0, 1}`.
    pub fn lift(&self, alpha: &[u64]) -> Result<Cochain> {
        if alpha.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                got: alpha.len(),
            });
        }
        let mut c = Cochain::zero(self.degree, Ring::Integers);
        for (a, g) in alpha.iter().zip(&self.generators) {
            if a % 2 == 1 {
                c = c.add(&g.representative)?;
            }
        }
        Ok(c)
    }

    /// Integral representatives of a basis of `N^q`.
    pub fn representatives(&self) -> Result<Vec<Cochain>> {
        self.kernel.iter().map(|v| self.lift(v)).collect()
    }
}

pub fn sq2_kernel(cache: &ModelCache, q: usize) -> Result<Sq2Kernel> {
    let k = cache.complex();
    let z = cache.model(Ring::Integers);
    let z2 = Ring::Mod(2);
    let target = cache.model(z2).cohomology_basis(q + 2)?;
    let generators = z.integral_generators(q)?;
    let columns = generators
        .iter()
        .map(|g| {
            let c = g.representative.change_ring(z2);
            target.coordinates(&apply_checked(k, &Operation::Sq(2), &c)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = PrimeFieldMatrix::from_columns(2, target.dim(), &columns)?;
    Ok(Sq2Kernel {
        degree: q,
        kernel: matrix.kernel_basis(),
        generators,
        matrix,
    })
}

/// A class in `H^5(K; ℤ₂)` modulo an indeterminacy subspace.
#[derive(Clone, Debug)]
pub struct SecondaryValue {
    pub representative: Vec<u64>,
    /// Basis of the indeterminacy subspace.
    pub indeterminacy: Vec<Vec<u64>>,
}

impl SecondaryValue {
    fn indeterminacy_matrix(&self) -> Result<PrimeFieldMatrix> {
        PrimeFieldMatrix::from_columns(2, self.representative.len(), &self.indeterminacy)
    }

    /// Whether the representative lies in the indeterminacy.
    pub fn is_zero(&self) -> Result<bool> {
        Ok(self
            .indeterminacy_matrix()?
            .solve_in_span(&self.representative)?
            .is_some())
    }

    /// Coset equality: the representatives differ by an indeterminacy element.
    pub fn same_coset(&self, other: &SecondaryValue) -> Result<bool> {
        if self.representative.len() != other.representative.len() {
            return Err(Error::DimensionMismatch {
                expected: self.representative.len(),
                got: other.representative.len(),
            });
        }
        let diff: Vec<u64> = self
            .representative
            .iter()
            .zip(&other.representative)
            .map(|(a, b)| (a + b) % 2)
            .collect();
        Ok(self.indeterminacy_matrix()?.solve_in_span(&diff)?.is_some())
    }
}

/// Indeterminacy of `Ψ₂`: the image of `Sq²` on `H³(K; ℤ₂)`.
pub fn secondary_indeterminacy(cache: &ModelCache) -> Result<Vec<Vec<u64>>> {
    Ok(operation_matrix(cache, Operation::Sq(2), 3)?.image)
}

/// `b = φ*(c̄ ⌣₀ c̄)` from the mod-2 dual contraction; `δb = c̄ ⌣₀ c̄` when
/// the class of `c̄ ⌣₀ c̄` vanishes.
pub fn bounding_cochain(cache: &ModelCache, c: &Cochain) -> Result<Cochain> {
    let k = cache.complex();
    let z2 = Ring::Mod(2);
    let c_bar = c.change_ring(z2);
    let x = cup_i(k, &c_bar, &c_bar, 0)?;
    let dual = &cache.model(z2).dual;
    let phi = dual.phi.at(4, &dual.big, &dual.big);
    Ok(Cochain {
        degree: 3,
        ring: z2,
        values: phi.mul_vec(&x.values, z2),
    })
}

/// The value `f*ψ₂(c, b)` for an integral 2-cocycle `c` and an admissible `b`.
pub fn secondary_value(cache: &ModelCache, c: &Cochain, b: &Cochain) -> Result<SecondaryValue> {
    let k = cache.complex();
    let psi = psi_cochain(k, c, b)?;
    if !coboundary(k, &psi).is_zero() {
        return Err(Error::Consistency("psi is not a cocycle".into()));
    }
    let target = cache.model(Ring::Mod(2)).cohomology_basis(5)?;
    Ok(SecondaryValue {
        representative: target.coordinates(&psi)?,
        indeterminacy: secondary_indeterminacy(cache)?,
    })
}

/// `Ψ₂(α)` for `α ∈ N²(K)` given by mod-2 coefficients on the generators of
/// `H²(K; ℤ)`.
pub fn adem_secondary(cache: &ModelCache, alpha: &[u64]) -> Result<SecondaryValue> {
    let n2 = sq2_kernel(cache, 2)?;
    let c = n2.lift(alpha)?;
    if !n2.contains(alpha)? {
        return Err(Error::NotInSq2Kernel);
    }
    let b = bounding_cochain(cache, &c)?;
    secondary_value(cache, &c, &b)
}

/// `Ψ₂` on the class of an integral 2-cocycle `c`.
pub fn adem_secondary_of_cocycle(cache: &ModelCache, c: &Cochain) -> Result<SecondaryValue> {
    let b = bounding_cochain(cache, c)?;
    match secondary_value(cache, c, &b) {
        Err(Error::NotBounding) => Err(Error::NotInSq2Kernel),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixture_named;

    fn cache(name: &str) -> ModelCache {
        ModelCache::new(fixture_named(name).unwrap().complex)
    }

    #[test]
    fn sq1_on_rp2() {
        let m = operation_matrix(&cache("rp2"), Operation::Sq(1), 1).unwrap();
        assert_eq!(m.matrix, PrimeFieldMatrix::from_rows(2, &[vec![1]]).unwrap());
    }

    #[test]
    fn sq0_is_identity_and_high_squares_vanish() {
        let c = cache("torus");
        for q in 0..3 {
            let m = operation_matrix(&c, Operation::Sq(0), q).unwrap();
            let n = m.matrix.ncols();
            assert_eq!(m.matrix, PrimeFieldMatrix::identity(2, n).unwrap());
        }
        assert!(operation_matrix(&c, Operation::Sq(2), 1).unwrap().matrix.is_zero());
    }

    #[test]
    fn torus_cup_product_is_nondegenerate() {
        let table = cup_product_table(&cache("torus"), 2, 1).unwrap();
        assert_eq!(table[0][1], vec![1]);
        assert_eq!(table[1][0], vec![1]);
    }

    #[test]
    fn sq2_kernel_low_degrees() {
        let c = cache("sphere");
        assert_eq!(sq2_kernel(&c, 0).unwrap().kernel.len(), 1);
        assert_eq!(sq2_kernel(&c, 2).unwrap().kernel.len(), 1);
        let t = cache("torus");
        assert_eq!(sq2_kernel(&t, 1).unwrap().kernel.len(), 2);
    }

    #[test]
    fn secondary_on_low_dimensional_complex_is_zero() {
        let c = cache("sphere");
        let v = adem_secondary(&c, &[1]).unwrap();
        assert!(v.representative.is_empty());
        assert!(v.is_zero().unwrap());
    }

    #[test]
    fn secondary_rejects_wrong_length() {
        let c = cache("sphere");
        assert!(matches!(
            adem_secondary(&c, &[1, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn p1_rejects_two() {
        assert!(p1_matrix(&cache("sphere"), 2, 1).is_err());
    }
}
