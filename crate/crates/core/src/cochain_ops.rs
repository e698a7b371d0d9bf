//! Cochain-level products and operations: cup, cup-i, Steenrod squares, the
//! reduced power `P₁`, and the cochains `E₃`, `η`, `ψ` behind the secondary
//! operation.
//!
//! Every formula is evaluated simplex by simplex on the vertex sequence
//! `(v₀ < ⋯ < v_n)`, reading cochain values on faces spanned by positions.

use itertools::Itertools;

use crate::complexes::{coboundary, Cochain};
use crate::error::{Error, Result};
use crate::exact_algebra::{Integer, Ring, SparseVec};
use crate::simplicial::SimplicialComplex;

/// Dense view of a cochain for fast lookups by vertex sequence.
struct Lookup<'a> {
    k: &'a SimplicialComplex,
    values: Vec<Integer>,
}

impl<'a> Lookup<'a> {
    fn new(k: &'a SimplicialComplex, c: &Cochain) -> Self {
        Lookup {
            k,
            values: c.to_dense(k),
        }
    }

    fn at(&self, vertices: &[u32]) -> &Integer {
        match self.k.index_of(vertices) {
            Some(i) => &self.values[i],
            None => &Integer::ZERO,
        }
    }

    /// Value on the face of `sigma` spanned by `positions`.
    fn face(&self, sigma: &[u32], positions: &[usize], buf: &mut Vec<u32>) -> &Integer {
        buf.clear();
        buf.extend(positions.iter().map(|&p| sigma[p]));
        self.at(buf)
    }
}

/// Evaluates `value` on every `degree`-simplex.
fn tabulate(k: &SimplicialComplex, degree: usize, ring: Ring, mut value: impl FnMut(&[u32]) -> Integer) -> Cochain {
    let pairs = k
        .simplices(degree)
        .iter()
        .enumerate()
        .filter_map(|(j, s)| {
            let v = ring.reduce(&value(s.vertices()));
            (!v.is_zero()).then_some((j, v))
        })
        .collect();
    Cochain {
        degree,
        ring,
        values: SparseVec::from_pairs(pairs, ring),
    }
}

fn require_ring(c: &Cochain, ring: Ring) -> Result<()> {
    if c.ring != ring {
        return Err(Error::WrongRing {
            expected: ring.to_string(),
            got: c.ring,
        });
    }
    Ok(())
}

fn require_degree(c: &Cochain, degree: usize) -> Result<()> {
    if c.degree != degree {
        return Err(Error::WrongDegree {
            expected: degree,
            got: c.degree,
        });
    }
    Ok(())
}

/// `(c ⌣ c′)(v₀,…,v_{p+q}) = c(v₀,…,v_p)·c′(v_p,…,v_{p+q})`.
pub fn cup(k: &SimplicialComplex, c: &Cochain, c2: &Cochain) -> Result<Cochain> {
    if c.ring != c2.ring {
        return Err(Error::RingMismatch(c.ring, c2.ring));
    }
    let ring = c.ring;
    let (p, q) = (c.degree, c2.degree);
    let (a, b) = (Lookup::new(k, c), Lookup::new(k, c2));
    Ok(tabulate(k, p + q, ring, |s| {
        let x = a.at(&s[..=p]);
        if x.is_zero() {
            return Integer::ZERO;
        }
        ring.mul(x, b.at(&s[p..]))
    }))
}

/// A splitting of `{0,…,n}` into blocks: positions read by the first and by
/// the second argument of a cup-i product.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Splitting {
    first: Vec<usize>,
    second: Vec<usize>,
}

/// Cut points `0 ≤ a₀ < ⋯ < a_i ≤ n` give blocks `[0,a₀], [a₀,a₁], …, [a_i,n]`;
/// even blocks go to the first argument, odd blocks to the second.
fn cup_i_splittings(n: usize, i: usize, p: usize, q: usize) -> Vec<Splitting> {
    (0..=n)
        .combinations(i + 1)
        .filter_map(|cuts| {
            let mut first = Vec::new();
            let mut second = Vec::new();
            let mut start = 0;
            for (b, end) in cuts.iter().copied().chain([n]).enumerate() {
                let target = if b % 2 == 0 { &mut first } else { &mut second };
                target.extend(start..=end);
                start = end;
            }
            first.dedup();
            second.dedup();
            (first.len() == p + 1 && second.len() == q + 1).then_some(Splitting { first, second })
        })
        .collect()
}

/// Steenrod's cup-i product over ℤ₂, of degree `p + q − i`. Negative `i`
/// gives the zero cochain.
pub fn cup_i(k: &SimplicialComplex, c: &Cochain, c2: &Cochain, i: isize) -> Result<Cochain> {
    let ring = Ring::Mod(2);
    require_ring(c, ring)?;
    require_ring(c2, ring)?;
    let (p, q) = (c.degree, c2.degree);
    let n = (p + q) as isize - i;
    if n < 0 {
        return Err(Error::Unsupported(format!("cup-{i} of degrees {p} and {q}")));
    }
    let n = n as usize;
    if i < 0 {
        return Ok(Cochain::zero(n, ring));
    }
    let splittings = cup_i_splittings(n, i as usize, p, q);
    let (a, b) = (Lookup::new(k, c), Lookup::new(k, c2));
    let (mut buf_a, mut buf_b) = (Vec::new(), Vec::new());
    Ok(tabulate(k, n, ring, |s| {
        let odd = splittings
            .iter()
            .filter(|sp| a.face(s, &sp.first, &mut buf_a).is_one() && b.face(s, &sp.second, &mut buf_b).is_one())
            .count();
        Integer::from(odd as u64 % 2)
    }))
}

/// `Sq^i(c) = c ⌣_{j−i} c` for a `j`-cochain over ℤ₂; zero when `i > j`.
pub fn sq_cochain(k: &SimplicialComplex, c: &Cochain, i: usize) -> Result<Cochain> {
    let j = c.degree as isize;
    cup_i(k, c, c, j - i as isize)
}

/// One summand of `P₁`: a sign and `p` faces, each given by `q + 1` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Term {
    pub negative: bool,
    pub factors: Vec<Vec<usize>>,
}

/// Summands of `P₁(c)(v₀,…,v_{pq−1})` for a `q`-cochain: for `j = 1,…,p−1`
/// and `i = jq,…,(j+1)q−1`, sign `(−1)^((i+1)(q+1)+1)` times
/// `c(v_{kq},…,v_{(k+1)q})` for `k < j−1`,
/// `c(v_{(j−1)q},…,v_{i−q}, v_i,…,v_{(j+1)q−1})`,
/// `c(v_{kq−1},…,v_{(k+1)q−1})` for `k > j`, and `c(v_{i−q},…,v_i)`.
pub fn p1_terms(p: usize, q: usize) -> Vec<P1Term> {
    let mut terms = Vec::new();
    for j in 1..p {
        for i in j * q..(j + 1) * q {
            let mut factors: Vec<Vec<usize>> = (0..j.saturating_sub(1))
                .map(|k| (k * q..=(k + 1) * q).collect())
                .collect();
            factors.push(((j - 1) * q..=i - q).chain(i..(j + 1) * q).collect());
            factors.extend((j + 1..p).map(|k| (k * q - 1..=(k + 1) * q - 1).collect()));
            factors.push((i - q..=i).collect());
            let negative = ((i + 1) * (q + 1) + 1) % 2 == 1;
            terms.push(P1Term { negative, factors });
        }
    }
    terms
}

/// Number of summands of `P₁` per `(pq−1)`-simplex, `(p−1)q`.
pub fn p1_summand_count(p: usize, q: usize) -> usize {
    p1_terms(p, q).len()
}

/// The reduced power `P₁` on a `q`-cochain over ℤ_p, `p` odd, of degree `pq − 1`.
pub fn p1_cochain(k: &SimplicialComplex, c: &Cochain, p: u64) -> Result<Cochain> {
    if p == 2 {
        return Err(Error::Unsupported("P1 needs an odd prime; use Sq^i for p = 2".into()));
    }
    let ring = Ring::prime_field(p)?;
    require_ring(c, ring)?;
    let q = c.degree;
    if q == 0 {
        return Err(Error::Unsupported("P1 on 0-cochains has negative degree".into()));
    }
    let terms = p1_terms(p as usize, q);
    let a = Lookup::new(k, c);
    let mut buf = Vec::new();
    Ok(tabulate(k, p as usize * q - 1, ring, |s| {
        let mut total = Integer::ZERO;
        for term in &terms {
            let mut prod = Integer::ONE;
            for f in &term.factors {
                prod = ring.mul(&prod, a.face(s, f, &mut buf));
                if prod.is_zero() {
                    break;
                }
            }
            total = if term.negative {
                ring.sub(&total, &prod)
            } else {
                ring.add(&total, &prod)
            };
        }
        total
    }))
}

/// Summands of `E₃(c⁴)` as vertex positions of the four factors.
///
/// The second summand reads `c(v₀,v₄,v₅)·c(v₂,v₃,v₄)·c(v₀,v₁,v₂)²`; with
/// that factor the relation `δE₃(c⁴) = Sq²Sq²c + Sq³Sq¹c` holds on cocycles.
const E3_TERMS: [[[usize; 3]; 4]; 5] = [
    [[0, 2, 3], [0, 1, 2], [3, 4, 5], [2, 3, 5]],
    [[0, 4, 5], [2, 3, 4], [0, 1, 2], [0, 1, 2]],
    [[0, 1, 5], [3, 4, 5], [1, 2, 3], [1, 2, 3]],
    [[0, 1, 2], [2, 4, 5], [2, 3, 4], [2, 3, 4]],
    [[0, 1, 2], [2, 3, 5], [3, 4, 5], [3, 4, 5]],
];

/// `E₃(c⁴)` for a 2-cochain over ℤ₂.
pub fn e3_cochain(k: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
    let ring = Ring::Mod(2);
    require_ring(c, ring)?;
    require_degree(c, 2)?;
    let a = Lookup::new(k, c);
    let mut buf = Vec::new();
    Ok(tabulate(k, 5, ring, |s| {
        let odd = E3_TERMS
            .iter()
            .filter(|term| term.iter().all(|f| a.face(s, f, &mut buf).is_one()))
            .count();
        Integer::from(odd as u64 % 2)
    }))
}

/// `η(c) = ½(c ⌣_q c + c)` pointwise: `c(σ)(c(σ)+1)/2 mod 2`, which depends
/// only on `c(σ) mod 4`.
pub fn eta_cochain(c: &Cochain) -> Result<Cochain> {
    require_ring(c, Ring::Integers)?;
    let ring = Ring::Mod(2);
    let pairs = c
        .values
        .iter()
        .filter(|(_, v)| matches!(v.rem_u64(4), 1 | 2))
        .map(|(i, _)| (i, Integer::ONE))
        .collect();
    Ok(Cochain {
        degree: c.degree,
        ring,
        values: SparseVec::from_pairs(pairs, ring),
    })
}

/// `ψ₂(c) = b⌣₁b + b⌣₂δb + E₃(c̄) + η(c)⌣₋₁η(c) + η(c)⌣₀δη(c)` for an
/// integral 2-cocycle `c` and a 3-cochain `b` over ℤ₂ with `δb = c̄ ⌣₀ c̄`.
pub fn psi_cochain(k: &SimplicialComplex, c: &Cochain, b: &Cochain) -> Result<Cochain> {
    require_ring(c, Ring::Integers)?;
    if c.degree != 2 {
        return Err(Error::Unsupported(format!(
            "psi is only available in degree 2, got degree {}",
            c.degree
        )));
    }
    let z2 = Ring::Mod(2);
    require_ring(b, z2)?;
    require_degree(b, 3)?;
    let c_bar = c.change_ring(z2);
    let db = coboundary(k, b);
    if db != cup_i(k, &c_bar, &c_bar, 0)? {
        return Err(Error::NotBounding);
    }
    let eta = eta_cochain(c)?;
    let terms = [
        cup_i(k, b, b, 1)?,
        cup_i(k, b, &db, 2)?,
        e3_cochain(k, &c_bar)?,
        cup_i(k, &eta, &eta, -1)?,
        cup_i(k, &eta, &coboundary(k, &eta), 0)?,
    ];
    terms.iter().try_fold(Cochain::zero(5, z2), |acc, t| acc.add(t))
}
