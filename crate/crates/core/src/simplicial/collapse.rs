use std::collections::{BTreeSet, HashMap, HashSet};

use crate::complexes::{ChainComplex, Contraction, GradedMap};
use crate::exact_algebra::{Integer, IntegerMatrix, Ring, SparseVec};

use super::{Simplex, SimplicialComplex};

/// Result of repeated elementary collapses.
#[derive(Clone, Debug)]
pub struct Thinning {
    pub complex: SimplicialComplex,
    /// Integral contraction of `C_*(K)` onto `C_*(complex)`.
    pub contraction: Contraction,
}

/// One elementary collapse: `τ` is facet number `position` of `σ`.
struct Step {
    tau: Simplex,
    sigma: Simplex,
    position: usize,
}

/// Removes free pairs, smallest `τ` (lexicographic vertex order) first, and
/// composes the elementary-collapse contractions.
pub fn collapse_thin(k: &SimplicialComplex) -> Thinning {
    let steps = collapse_sequence(k);
    let removed: HashSet<&Simplex> = steps.iter().flat_map(|s| [&s.tau, &s.sigma]).collect();
    let small = k.filtered(|s| !removed.contains(s));
    let contraction = composite_contraction(k, &small, &steps);
    Thinning {
        complex: small,
        contraction,
    }
}

fn collapse_sequence(k: &SimplicialComplex) -> Vec<Step> {
    let mut cofacets: HashMap<Simplex, BTreeSet<Simplex>> = k.iter().map(|s| (s.clone(), BTreeSet::new())).collect();
    for s in k.iter() {
        for (_, face) in s.facets() {
            cofacets.get_mut(&face).expect("complex is closed").insert(s.clone());
        }
    }

    let is_free = |cofacets: &HashMap<Simplex, BTreeSet<Simplex>>, tau: &Simplex| -> Option<Simplex> {
        let up = cofacets.get(tau)?;
        if up.len() != 1 {
            return None;
        }
        let sigma = up.iter().next()?;
        cofacets[sigma].is_empty().then(|| sigma.clone())
    };

    let mut candidates: BTreeSet<Vec<u32>> = k
        .iter()
        .filter(|s| is_free(&cofacets, s).is_some())
        .map(|s| s.vertices().to_vec())
        .collect();

    let mut steps = Vec::new();
    while let Some(key) = candidates.pop_first() {
        let tau = Simplex::from_sorted(key);
        let Some(sigma) = is_free(&cofacets, &tau) else {
            continue;
        };
        let position = sigma
            .facets()
            .position(|(_, f)| f == tau)
            .expect("tau is a facet of sigma");
        for (_, face) in sigma.facets() {
            if let Some(up) = cofacets.get_mut(&face) {
                up.remove(&sigma);
            }
            if face != tau {
                candidates.insert(face.vertices().to_vec());
            }
        }
        for (_, face) in tau.facets() {
            if let Some(up) = cofacets.get_mut(&face) {
                up.remove(&tau);
            }
            candidates.insert(face.vertices().to_vec());
        }
        cofacets.remove(&sigma);
        cofacets.remove(&tau);
        steps.push(Step { tau, sigma, position });
    }
    steps
}

/// Composite of the elementary contractions
/// `f(τ) = −ε(∂σ − ετ)`, `f(σ) = 0`, `φ(τ) = εσ`, with `g` the inclusion.
///
/// Unrolled, the composite satisfies `F(τ_e) = −ε Σ ±F(ρ)` and
/// `Φ(τ_e) = εσ_e − ε Σ ±Φ(ρ)` over the other facets `ρ` of `σ_e`, so both are
/// filled in reverse collapse order.
fn composite_contraction(k: &SimplicialComplex, small: &SimplicialComplex, steps: &[Step]) -> Contraction {
    let ring = Ring::Integers;
    let top = k.dim().map_or(0, |d| d + 1);
    let index = |s: &Simplex| k.index_of(s.vertices()).expect("simplex of K");

    // F as columns over the small complex's basis; Φ as columns over K.
    let mut f_cols: Vec<Vec<SparseVec>> = (0..top)
        .map(|q| {
            k.simplices(q)
                .iter()
                .map(|s| {
                    small
                        .index_of(s.vertices())
                        .map_or_else(SparseVec::new, SparseVec::unit)
                })
                .collect()
        })
        .collect();
    let mut phi_cols: Vec<Vec<SparseVec>> = (0..top).map(|q| vec![SparseVec::new(); k.count(q)]).collect();

    for step in steps.iter().rev() {
        let q = step.tau.dim();
        let eps = if step.position % 2 == 0 {
            Integer::ONE
        } else {
            Integer::from(-1)
        };
        let mut f_tau = SparseVec::new();
        let mut phi_tau = SparseVec::from_pairs(vec![(index(&step.sigma), eps.clone())], ring);
        for (pos, rho) in step.sigma.facets() {
            if pos == step.position {
                continue;
            }
            // −ε·(−1)^pos
            let coef = if (pos + step.position) % 2 == 0 {
                Integer::from(-1)
            } else {
                Integer::ONE
            };
            let r = index(&rho);
            f_tau.axpy(&coef, &f_cols[q][r], ring);
            phi_tau.axpy(&coef, &phi_cols[q][r], ring);
        }
        let t = index(&step.tau);
        f_cols[q][t] = f_tau;
        phi_cols[q][t] = phi_tau;
        f_cols[q + 1][index(&step.sigma)] = SparseVec::new();
    }

    let big = ChainComplex::of_complex(k, ring);
    let small_cx = ChainComplex::of_complex(small, ring);
    let f = f_cols
        .into_iter()
        .enumerate()
        .map(|(q, cols)| IntegerMatrix::from_columns(small.count(q), cols))
        .collect();
    let g = (0..top)
        .map(|q| {
            let cols = small.simplices(q).iter().map(|s| SparseVec::unit(index(s))).collect();
            IntegerMatrix::from_columns(k.count(q), cols)
        })
        .collect();
    let phi = phi_cols
        .into_iter()
        .enumerate()
        .map(|(q, cols)| IntegerMatrix::from_columns(k.count(q + 1), cols))
        .collect();
    Contraction {
        big,
        small: small_cx,
        f: GradedMap { shift: 0, maps: f },
        g: GradedMap { shift: 0, maps: g },
        phi: GradedMap { shift: 1, maps: phi },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_triangle_collapses_to_vertex() {
        let k = SimplicialComplex::parse("0 1 2").unwrap();
        let t = collapse_thin(&k);
        assert_eq!(t.complex.total_count(), 1);
        assert_eq!(t.complex.simplices(0)[0].vertices(), &[2]);
        assert!(t.contraction.check().is_ok(), "{}", t.contraction.check());
    }

    #[test]
    fn hollow_triangle_is_unchanged() {
        let k = SimplicialComplex::parse("0 1\n1 2\n0 2").unwrap();
        let t = collapse_thin(&k);
        assert_eq!(t.complex, k);
        assert!(t.contraction.check().is_ok());
        assert!(t.contraction.phi.maps.iter().all(IntegerMatrix::is_zero));
    }

    #[test]
    fn tetrahedron_with_tail() {
        let k = SimplicialComplex::parse("0 1 2 3\n3 4\n4 5 6").unwrap();
        let t = collapse_thin(&k);
        assert_eq!(t.complex.total_count(), 1);
        assert!(t.contraction.check().is_ok(), "{}", t.contraction.check());
    }

    #[test]
    fn empty_complex() {
        let t = collapse_thin(&SimplicialComplex::empty());
        assert!(t.complex.is_empty());
        assert!(t.contraction.check().is_ok());
    }
}
