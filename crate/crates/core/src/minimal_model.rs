//! Algebraic minimal models: a contraction of `C_*(K)` onto a chain complex
//! whose differentials have no unit entries in Smith normal form.
//!
//! The model is built degree by degree. At step `q` the current differential
//! `d = f_{q−1}∂_q` is brought to Smith form `U·d·V = D`; the first `t`
//! diagonal entries are units and the corresponding basis pairs are split
//! off. With `f_{q−1}` taken before the update,
//!
//! ```text
//! f_{q−1} ← U[t..,:]·f_{q−1}      g_{q−1} ← g_{q−1}·U⁻¹[:,t..]
//! f_q     ← V⁻¹[t..,:]            g_q     ← V[:,t..]
//! φ_{q−1} ← V[:,..t]·U[..t,:]·f_{q−1}
//! ∂^M_{q−1} ← ∂^M_{q−1}·U⁻¹[:,t..]  ∂^M_q ← D[t..,t..]
//! ```

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::complexes::{ChainComplex, Cochain, Contraction, GradedMap, Grading};
use crate::error::{Error, Result};
use crate::exact_algebra::{smith_normal_form_over, Integer, IntegerMatrix, Ring, SparseVec};
use crate::simplicial::{collapse_thin, SimplicialComplex, Thinning};

/// A minimal chain complex together with the chains of `C_*(K)` its
/// generators stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    pub ring: Ring,
    /// `differentials[q]`: `M_q → M_{q−1}`.
    pub differentials: Vec<IntegerMatrix>,
    /// Column `j` of `provenance[q]` is the chain of `C_q(K)` for generator `j`.
    pub provenance: Vec<IntegerMatrix>,
}

impl MinimalModel {
    pub fn generator_count(&self, q: usize) -> usize {
        self.provenance.get(q).map_or(0, IntegerMatrix::ncols)
    }

    pub fn top(&self) -> usize {
        self.provenance.len()
    }

    pub fn differential(&self, q: usize) -> IntegerMatrix {
        match self.differentials.get(q) {
            Some(d) => d.clone(),
            None => IntegerMatrix::zeros(
                q.checked_sub(1).map_or(0, |p| self.generator_count(p)),
                self.generator_count(q),
            ),
        }
    }

    pub fn as_chain_complex(&self) -> ChainComplex {
        let ranks = (0..self.top()).map(|q| self.generator_count(q)).collect();
        ChainComplex::new(self.ring, Grading::Chain, ranks, self.differentials.clone())
            .expect("model differentials are well shaped")
    }
}

/// `ring^rank ⊕ ⨁ ring/t_i`, with `t₁ | t₂ | ⋯` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub rank: usize,
    pub torsion: Vec<Integer>,
}

impl GroupPresentation {
    pub fn free(rank: usize) -> Self {
        GroupPresentation {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Builds the minimal model of `K` over `ring` and the contraction of
/// `C_*(K)` onto it. The empty complex gives the empty model.
pub fn build_minimal_model(k: &SimplicialComplex, ring: Ring) -> (MinimalModel, Contraction) {
    let big = ChainComplex::of_complex(k, ring);
    let top = big.len();
    if top == 0 {
        let model = MinimalModel {
            ring,
            differentials: Vec::new(),
            provenance: Vec::new(),
        };
        return (model, Contraction::identity(&big));
    }

    let mut f: Vec<IntegerMatrix> = vec![IntegerMatrix::identity(k.count(0))];
    let mut g: Vec<IntegerMatrix> = vec![IntegerMatrix::identity(k.count(0))];
    let mut phi: Vec<IntegerMatrix> = Vec::with_capacity(top);
    let mut dm: Vec<IntegerMatrix> = vec![IntegerMatrix::zeros(0, k.count(0))];

    for q in 1..top {
        let boundary = big.differential(q);
        let f_prev = &f[q - 1];
        let d = f_prev.mul(&boundary, ring);
        let snf = smith_normal_form_over(&d, ring);
        let t = snf.unit_count();
        let (m, n) = (d.nrows(), d.ncols());

        let u_head = snf.u.row_range(0..t);
        let phi_prev = snf.v.column_range(0..t).mul(&u_head.mul(f_prev, ring), ring);
        let u_inv_tail = snf.u_inv.column_range(t..m);
        let f_new = snf.u.row_range(t..m).mul(f_prev, ring);
        let g_new = g[q - 1].mul(&u_inv_tail, ring);
        let dm_prev = dm[q - 1].mul(&u_inv_tail, ring);

        f[q - 1] = f_new;
        g[q - 1] = g_new;
        dm[q - 1] = dm_prev;
        phi.push(phi_prev);

        f.push(snf.v_inv.row_range(t..n));
        g.push(snf.v.column_range(t..n));
        dm.push(snf.d.row_range(t..m).column_range(t..n));
    }
    phi.push(IntegerMatrix::zeros(0, k.count(top - 1)));

    let model = MinimalModel {
        ring,
        differentials: dm,
        provenance: g.clone(),
    };
    let contraction = Contraction {
        big,
        small: model.as_chain_complex(),
        f: GradedMap { shift: 0, maps: f },
        g: GradedMap { shift: 0, maps: g },
        phi: GradedMap { shift: 1, maps: phi },
    };
    (model, contraction)
}

/// `H_q` for every `q` up to `dim K`, read off the model's differentials.
pub fn homology_presentations(model: &MinimalModel) -> Vec<GroupPresentation> {
    let snfs: Vec<_> = (0..=model.top())
        .map(|q| smith_normal_form_over(&model.differential(q), model.ring))
        .collect();
    (0..model.top())
        .map(|q| {
            let incoming = &snfs[q + 1];
            let rank = model.generator_count(q) - snfs[q].rank - incoming.rank;
            let torsion = incoming
                .diagonal()
                .into_iter()
                .filter(|t| !model.ring.is_unit(t))
                .collect();
            GroupPresentation { rank, torsion }
        })
        .collect()
}

/// `H^q` for every `q` up to `dim K`: free part as in homology, torsion
/// shifted up one degree.
pub fn cohomology_presentations(model: &MinimalModel) -> Vec<GroupPresentation> {
    let homology = homology_presentations(model);
    (0..model.top())
        .map(|q| GroupPresentation {
            rank: homology[q].rank,
            torsion: q.checked_sub(1).map_or_else(Vec::new, |p| homology[p].torsion.clone()),
        })
        .collect()
}

/// A basis of `H^q(K; ℤ_p)` with representative cocycles and the projection
/// `f*` onto its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub ring: Ring,
    /// `g*(e_j)` for each generator `e_j`.
    pub representatives: Vec<Cochain>,
    /// `f*_q`: rows index generators, columns index `K^(q)`.
    pub projection: IntegerMatrix,
}

impl CohomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cocycle.
    pub fn coordinates(&self, c: &Cochain) -> Result<Vec<u64>> {
        if c.ring != self.ring {
            return Err(Error::RingMismatch(self.ring, c.ring));
        }
        if c.degree != self.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                got: c.degree,
            });
        }
        let y = self.projection.mul_vec(&c.values, self.ring);
        Ok(y.to_dense(self.dim())
            .iter()
            .map(|v| v.rem_u64(self.ring.characteristic()))
            .collect())
    }

    /// `g*` of a coordinate vector.
    pub fn representative(&self, coords: &[u64]) -> Cochain {
        let mut out = Cochain::zero(self.degree, self.ring);
        for (c, rep) in coords.iter().zip(&self.representatives) {
            out.values.axpy(&Integer::from(*c), &rep.values, self.ring);
        }
        out
    }
}

fn field_basis(dual: &Contraction, ring: Ring, q: usize) -> CohomologyBasis {
    let g_star = dual.g.at(q, &dual.small, &dual.big);
    let representatives = g_star
        .columns()
        .iter()
        .map(|col| Cochain {
            degree: q,
            ring,
            values: col.clone(),
        })
        .collect();
    CohomologyBasis {
        degree: q,
        ring,
        representatives,
        projection: dual.f.at(q, &dual.big, &dual.small),
    }
}

/// Basis of `H^q(K; ℤ_p)` from the mod-`p` minimal model.
pub fn cohomology_basis(k: &SimplicialComplex, p: u64, q: usize) -> Result<CohomologyBasis> {
    let ring = Ring::prime_field(p)?;
    let (_, contraction) = build_minimal_model(k, ring);
    Ok(field_basis(&contraction.dualize(), ring, q))
}

/// A generator of `H^q(K; ℤ)` with an integral representative cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralClass {
    pub representative: Cochain,
    /// `None` for a free generator, otherwise its finite order.
    pub order: Option<Integer>,
}

/// Generators of `H^q(K; ℤ)`: free generators first, then torsion in
/// increasing order, each with a representative in `C^q(K; ℤ)`.
pub fn integral_cohomology_generators(model: &MinimalModel, contraction: &Contraction, q: usize) -> Vec<IntegralClass> {
    let ring = Ring::Integers;
    let n = model.generator_count(q);
    if n == 0 {
        return Vec::new();
    }
    // Cocycles of Hom(M, ℤ): y with yᵀ·∂_{q+1} = 0, i.e. rows rank.. of U.
    let outgoing = smith_normal_form_over(&model.differential(q + 1), ring);
    let r = outgoing.rank;
    let kernel_rows = outgoing.u.row_range(r..n);
    // Coboundaries are the rows of ∂_q, in kernel coordinates (∂_q·U⁻¹)[:, r..]ᵀ.
    let incoming = model.differential(q);
    let coords = incoming.mul(&outgoing.u_inv.column_range(r..n), ring).transpose();
    let quotient = smith_normal_form_over(&coords, ring);
    let kernel_dim = n - r;

    let f_q = contraction.f.at(q, &contraction.big, &contraction.small);
    let to_cochain = |z: &SparseVec| -> Cochain {
        // y = Σ z_k · (row r+k of U); representative is f_qᵀ·y.
        let y = kernel_rows.transpose().mul_vec(z, ring);
        let values = f_q.transpose().mul_vec(&y, ring);
        Cochain {
            degree: q,
            ring,
            values,
        }
    };

    let diagonal = quotient.diagonal();
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for i in 0..kernel_dim {
        let order = diagonal.get(i).cloned();
        if order.as_ref().is_some_and(|d| d.is_one()) {
            continue;
        }
        let class = IntegralClass {
            representative: to_cochain(quotient.u_inv.column(i)),
            order,
        };
        if class.order.is_some() {
            torsion.push(class);
        } else {
            free.push(class);
        }
    }
    free.extend(torsion);
    free
}

/// A model, its contraction and the dual contraction, for one ring.
#[derive(Debug)]
pub struct BuiltModel {
    pub model: MinimalModel,
    pub contraction: Contraction,
    pub dual: Contraction,
}

impl BuiltModel {
    pub fn ring(&self) -> Ring {
        self.model.ring
    }

    /// Basis of `H^q` over a prime field.
    pub fn cohomology_basis(&self, q: usize) -> Result<CohomologyBasis> {
        if !self.ring().is_field() {
            return Err(Error::WrongRing {
                expected: "a prime field".into(),
                got: self.ring(),
            });
        }
        Ok(field_basis(&self.dual, self.ring(), q))
    }

    pub fn integral_generators(&self, q: usize) -> Result<Vec<IntegralClass>> {
        if self.ring() != Ring::Integers {
            return Err(Error::WrongRing {
                expected: "Z".into(),
                got: self.ring(),
            });
        }
        Ok(integral_cohomology_generators(&self.model, &self.contraction, q))
    }
}

/// A complex together with its minimal models, built on demand once per ring.
#[derive(Debug)]
pub struct ModelCache {
    complex: SimplicialComplex,
    thinning: Option<Thinning>,
    models: Mutex<HashMap<Ring, Arc<BuiltModel>>>,
}

impl ModelCache {
    pub fn new(complex: SimplicialComplex) -> Self {
        ModelCache {
            complex,
            thinning: None,
            models: Mutex::new(HashMap::new()),
        }
    }

    /// Models are built on the collapsed complex and composed with the
    /// collapse contraction, so all contractions still start at `C_*(K)`.
    pub fn thinned(complex: SimplicialComplex) -> Self {
        let thinning = collapse_thin(&complex);
        ModelCache {
            complex,
            thinning: Some(thinning),
            models: Mutex::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn thinning(&self) -> Option<&Thinning> {
        self.thinning.as_ref()
    }

    fn build(&self, ring: Ring) -> (MinimalModel, Contraction) {
        let Some(thin) = &self.thinning else {
            return build_minimal_model(&self.complex, ring);
        };
        let (mut model, onto_model) = build_minimal_model(&thin.complex, ring);
        let contraction = thin
            .contraction
            .with_ring(ring)
            .compose(&onto_model)
            .expect("collapse contraction ends where the model starts");
        model.provenance = contraction.g.maps.clone();
        (model, contraction)
    }

    pub fn model(&self, ring: Ring) -> Arc<BuiltModel> {
        if let Some(m) = self.models.lock().expect("model cache poisoned").get(&ring) {
            return Arc::clone(m);
        }
        let (model, contraction) = self.build(ring);
        let dual = contraction.dualize();
        let built = Arc::new(BuiltModel {
            model,
            contraction,
            dual,
        });
        self.models
            .lock()
            .expect("model cache poisoned")
            .entry(ring)
            .or_insert(built)
            .clone()
    }
}
