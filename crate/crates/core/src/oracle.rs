//! Independent checks: Betti numbers by plain Gaussian elimination, fixture
//! complexes with their known groups, and seeded random complexes.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact_algebra::{smith_normal_form, Integer, PrimeFieldMatrix, Ring};
use crate::minimal_model::GroupPresentation;
use crate::simplicial::{Simplex, SimplicialComplex};

/// Matrix of `δ^q: C^q → C^{q+1}` over ℤ_p, built straight from the face
/// formula.
fn coboundary_matrix(k: &SimplicialComplex, p: u64, q: usize) -> Result<PrimeFieldMatrix> {
    let mut m = PrimeFieldMatrix::zeros(p, k.count(q + 1), k.count(q))?;
    for (row, s) in k.simplices(q + 1).iter().enumerate() {
        for i in 0..s.vertices().len() {
            let mut face = s.vertices().to_vec();
            face.remove(i);
            let col = k.index_of(&face).expect("complex is closed");
            m.set(row, col, if i % 2 == 0 { 1 } else { p - 1 });
        }
    }
    Ok(m)
}

/// `dim H^q(K; ℤ_p) = dim ker δ^q − dim im δ^{q−1}`.
pub fn betti_oracle(k: &SimplicialComplex, p: u64, q: usize) -> Result<usize> {
    let kernel = k.count(q) - coboundary_matrix(k, p, q)?.rank();
    let image = match q {
        0 => 0,
        _ => coboundary_matrix(k, p, q - 1)?.rank(),
    };
    Ok(kernel - image)
}

/// Betti numbers mod `p` for `q = 0..=dim K`.
pub fn betti_numbers(k: &SimplicialComplex, p: u64) -> Result<Vec<usize>> {
    (0..k.dim().map_or(0, |d| d + 1))
        .map(|q| betti_oracle(k, p, q))
        .collect()
}

/// `H_q(K; ℤ)` from Smith forms of the raw boundary matrices, without any
/// contraction.
pub fn presentations_by_snf(k: &SimplicialComplex) -> Vec<GroupPresentation> {
    let top = k.dim().map_or(0, |d| d + 1);
    let snfs: Vec<_> = (0..=top)
        .map(|q| smith_normal_form(&k.boundary_operator(q, Ring::Integers)))
        .collect();
    (0..top)
        .map(|q| GroupPresentation {
            rank: k.count(q) - snfs[q].rank - snfs[q + 1].rank,
            torsion: snfs[q + 1].diagonal().into_iter().filter(|d| !d.is_one()).collect(),
        })
        .collect()
}

/// A named complex with its known integral homology.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub maximal: Vec<Simplex>,
    pub complex: SimplicialComplex,
    /// `H_q(K; ℤ)` for `q = 0..=dim K`.
    pub homology: Vec<GroupPresentation>,
    /// Whether the complex is meant to triangulate a closed surface.
    pub surface: bool,
}

impl Fixture {
    /// `dim H_q(K; ℤ_p)` by universal coefficients: free rank plus the
    /// torsion coefficients divisible by `p` in degrees `q` and `q − 1`.
    pub fn betti_mod(&self, p: u64) -> Vec<usize> {
        let divisible = |q: usize| self.homology[q].torsion.iter().filter(|t| t.rem_u64(p) == 0).count();
        (0..self.homology.len())
            .map(|q| self.homology[q].rank + divisible(q) + q.checked_sub(1).map_or(0, divisible))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.homology
            .iter()
            .enumerate()
            .map(|(q, h)| if q % 2 == 0 { h.rank as i64 } else { -(h.rank as i64) })
            .sum()
    }

    /// Checks closure, the closed-surface condition, Euler characteristic,
    /// and oracle Betti numbers mod 2 and 3 against the expected groups.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let closed = SimplicialComplex::closure_from_maximal(self.maximal.clone());
        if closed != self.complex || self.complex.maximal_simplices() != self.maximal {
            return Err(format!("{}: closure is inconsistent", self.name));
        }
        if self.surface {
            for edge in self.complex.simplices(1) {
                let n = self.complex.simplices(2).iter().filter(|t| edge.is_face_of(t)).count();
                if n != 2 {
                    return Err(format!("{}: edge {edge} lies in {n} triangles", self.name));
                }
            }
        }
        if self.complex.euler_characteristic() != self.euler_characteristic() {
            return Err(format!(
                "{}: Euler characteristic {} differs from {}",
                self.name,
                self.complex.euler_characteristic(),
                self.euler_characteristic()
            ));
        }
        for p in [2, 3] {
            let got = betti_numbers(&self.complex, p).map_err(|e| e.to_string())?;
            if got != self.betti_mod(p) {
                return Err(format!(
                    "{}: mod {p} Betti numbers {got:?} differ from {:?}",
                    self.name,
                    self.betti_mod(p)
                ));
            }
        }
        Ok(())
    }
}

fn groups(spec: &[(usize, &[i64])]) -> Vec<GroupPresentation> {
    spec.iter()
        .map(|(rank, torsion)| GroupPresentation {
            rank: *rank,
            torsion: torsion.iter().map(|&t| Integer::from(t)).collect(),
        })
        .collect()
}

fn fixture(name: &'static str, text: &str, homology: Vec<GroupPresentation>, surface: bool) -> Fixture {
    let complex = SimplicialComplex::parse(text).expect("fixture file parses");
    Fixture {
        name,
        maximal: complex.maximal_simplices(),
        complex,
        homology,
        surface,
    }
}

/// The fixture complexes shipped under `fixtures/`.
pub fn fixtures() -> Vec<Fixture> {
    let point = groups(&[(1, &[])]);
    let disk = |n: usize| {
        let mut h = point.clone();
        h.extend(groups(&[(0, &[])]).into_iter().cycle().take(n));
        h
    };
    vec![
        fixture("point", include_str!("../fixtures/point.cplx"), point.clone(), false),
        fixture(
            "circle",
            include_str!("../fixtures/circle.cplx"),
            groups(&[(1, &[]), (1, &[])]),
            false,
        ),
        fixture("simplex1", include_str!("../fixtures/simplex1.cplx"), disk(1), false),
        fixture("simplex2", include_str!("../fixtures/simplex2.cplx"), disk(2), false),
        fixture("simplex3", include_str!("../fixtures/simplex3.cplx"), disk(3), false),
        fixture("simplex4", include_str!("../fixtures/simplex4.cplx"), disk(4), false),
        fixture("simplex5", include_str!("../fixtures/simplex5.cplx"), disk(5), false),
        fixture(
            "sphere",
            include_str!("../fixtures/sphere.cplx"),
            groups(&[(1, &[]), (0, &[]), (1, &[])]),
            true,
        ),
        fixture(
            "rp2",
            include_str!("../fixtures/rp2.cplx"),
            groups(&[(1, &[]), (0, &[2]), (0, &[])]),
            true,
        ),
        fixture(
            "torus",
            include_str!("../fixtures/torus.cplx"),
            groups(&[(1, &[]), (2, &[]), (1, &[])]),
            true,
        ),
        fixture(
            "klein",
            include_str!("../fixtures/klein.cplx"),
            groups(&[(1, &[]), (1, &[2]), (0, &[])]),
            true,
        ),
        fixture(
            "sphere2_sphere5",
            include_str!("../fixtures/sphere2_sphere5.cplx"),
            groups(&[(1, &[]), (0, &[]), (1, &[]), (0, &[]), (0, &[]), (1, &[])]),
            false,
        ),
        fixture(
            "rp2_sphere5",
            include_str!("../fixtures/rp2_sphere5.cplx"),
            groups(&[(1, &[]), (0, &[2]), (0, &[]), (0, &[]), (0, &[]), (1, &[])]),
            false,
        ),
        fixture(
            "spheres_2_3_5",
            include_str!("../fixtures/spheres_2_3_5.cplx"),
            groups(&[(1, &[]), (0, &[]), (1, &[]), (1, &[]), (0, &[]), (1, &[])]),
            false,
        ),
    ]
}

/// Looks up a fixture by name.
pub fn fixture_named(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

/// Closure of a seeded random set of simplices on at most `max_vertices`
/// vertices (at most 8), each of dimension at most `max_dim`.
pub fn random_complex(seed: u64, max_vertices: u32, max_dim: usize) -> SimplicialComplex {
    assert!((1..=8).contains(&max_vertices), "random complexes use 1 to 8 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_vertices);
    let count = rng.gen_range(1..=6);
    let maximal: Vec<Simplex> = (0..count)
        .map(|_| {
            let d = rng.gen_range(0..=max_dim.min(n as usize - 1));
            let mut v: Vec<u32> = sample(&mut rng, n as usize, d + 1)
                .into_iter()
                .map(|i| i as u32)
                .collect();
            v.sort_unstable();
            Simplex::new(v).expect("distinct sorted vertices")
        })
        .collect();
    SimplicialComplex::closure_from_maximal(maximal)
}

/// Closure of `tetrahedra` seeded random 3-simplices on `max_vertices`
/// vertices; meant for timing runs.
pub fn random_large_complex(seed: u64, max_vertices: u32, tetrahedra: usize) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maximal: Vec<Simplex> = (0..tetrahedra)
        .map(|_| {
            let mut v: Vec<u32> = sample(&mut rng, max_vertices as usize, 4)
                .into_iter()
                .map(|i| i as u32)
                .collect();
            v.sort_unstable();
            Simplex::new(v).expect("distinct sorted vertices")
        })
        .collect();
    SimplicialComplex::closure_from_maximal(maximal)
}
