//! Homology of finitely generated chain complexes over the supported
//! coefficient rings, reported as free rank plus invariant factors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;
use crate::matrix::IntMatrix;
use crate::ring::CoefficientRing;
use crate::snf::{invariant_factors, smith_normal_form};

/// Free rank and torsion invariant factors of one homology group.
///
/// Over a field the torsion list is empty. The invariant factors form a
/// divisibility chain, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologySummary {
    pub fn free(rank: usize) -> Self {
        HomologySummary {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cardinality of a minimal generating set: free rank plus the number of
/// cyclic torsion summands.
pub fn minimal_generator_count(h: &HomologySummary) -> usize {
    h.free_rank + h.torsion.len()
}

/// Homology `ker(d_out) / im(d_in)` at the middle term of
/// `C_prev --d_in--> C --d_out--> C_next`.
///
/// `d_out` is a `dim C_next x dim C` matrix and `d_in` is
/// `dim C x dim C_prev`; both act on column vectors. The composite
/// `d_out * d_in` must vanish over the given ring.
pub fn homology_at(
    d_out: &IntMatrix,
    d_in: &IntMatrix,
    ring: &CoefficientRing,
) -> Result<HomologySummary, LinalgError> {
    let dim = d_out.cols();
    if d_in.rows() != dim {
        return Err(LinalgError::DimensionMismatch(
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols(),
        ));
    }
    check_composition(d_out, d_in, ring)?;

    match ring {
        CoefficientRing::Rationals => {
            let rank_out = d_out.rank_rational();
            let rank_in = d_in.rank_rational();
            Ok(HomologySummary::free(dim - rank_out - rank_in))
        }
        CoefficientRing::PrimeField(p) => {
            let rank_out = d_out.rank_mod_p(*p);
            let rank_in = d_in.rank_mod_p(*p);
            Ok(HomologySummary::free(dim - rank_out - rank_in))
        }
        CoefficientRing::Integers => {
            let rank_out = d_out.rank_rational();
            // ker(d_out) is a pure sublattice, so the elementary divisors of
            // d_in as a map into the kernel agree with those of d_in itself.
            let factors = invariant_factors(d_in);
            let rank_in = factors.len();
            let torsion: Vec<BigInt> = factors
                .into_iter()
                .filter(|f| !f.is_one())
                .collect();
            Ok(HomologySummary {
                free_rank: dim - rank_out - rank_in,
                torsion,
            })
        }
        CoefficientRing::ModM(m) => homology_mod_m(d_out, d_in, *m),
    }
}

/// Homology of a free Z/m complex. Computed from integer matrices: the
/// kernel of `d_out mod m` is a full lattice L containing m*Z^dim; the image
/// lattice is spanned by the columns of `d_in` together with m*Z^dim; the
/// quotient L/M is read off a Smith form in the coordinates of L.
fn homology_mod_m(
    d_out: &IntMatrix,
    d_in: &IntMatrix,
    m: u64,
) -> Result<HomologySummary, LinalgError> {
    let dim = d_out.cols();
    let m_big = BigInt::from(m);
    if dim == 0 {
        return Ok(HomologySummary::free(0));
    }

    // Lattice L = { x : d_out x ≡ 0 mod m }, basis columns of V * diag(t_i)
    // where t_i = m / gcd(s_i, m) for the Smith diagonal s_i of d_out.
    let snf_out = smith_normal_form(d_out);
    let mut scale = vec![BigInt::one(); dim];
    let diag = snf_out.diagonal();
    for (i, s) in scale.iter_mut().enumerate() {
        if i < diag.len() && !diag[i].is_zero() {
            let g = gcd(&diag[i], &m_big);
            *s = &m_big / g;
        }
    }
    // Generators of M: columns of d_in together with m * identity, expressed
    // in the L-basis. L = V * diag(t), so coordinates are
    // diag(t)^{-1} * V^{-1} * gens. The m*I block makes the coordinate
    // matrix full rank, so the quotient is pure torsion with orders
    // dividing m.
    let gens = d_in.hstack(&IntMatrix::identity(dim).scaled(&m_big));
    let v_inv = unimodular_inverse(&snf_out.v);
    let in_v_coords = v_inv.mul(&gens);
    let mut coords = IntMatrix::zero(dim, gens.cols());
    for i in 0..dim {
        for j in 0..gens.cols() {
            let num = &in_v_coords[(i, j)];
            debug_assert!((num % &scale[i]).is_zero(), "image not inside kernel lattice");
            coords[(i, j)] = num / &scale[i];
        }
    }

    let torsion = invariant_factors(&coords)
        .into_iter()
        .filter(|f| !f.is_one())
        .collect();
    Ok(HomologySummary {
        free_rank: 0,
        torsion,
    })
}

fn check_composition(
    d_out: &IntMatrix,
    d_in: &IntMatrix,
    ring: &CoefficientRing,
) -> Result<(), LinalgError> {
    let prod = d_out.mul(d_in);
    let mu = ring.mu();
    for (i, j, e) in prod.entries() {
        let vanishes = if mu == 0 {
            e.is_zero()
        } else {
            (e % BigInt::from(mu)).is_zero()
        };
        if !vanishes {
            return Err(LinalgError::CompositionNonzero { row: i, col: j });
        }
    }
    Ok(())
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (g, _, _) = crate::ring::extended_gcd(a, b);
    g.abs()
}

/// Inverse of a unimodular matrix (integer entries, determinant ±1).
fn unimodular_inverse(v: &IntMatrix) -> IntMatrix {
    let n = v.rows();
    assert_eq!(n, v.cols());
    let snf = smith_normal_form(v);
    // U V W = I with diagonal all ones for unimodular V, so V^{-1} = W U.
    debug_assert!(snf.diagonal().iter().all(|d| d.is_one()));
    snf.v.mul(&snf.u)
}

impl IntMatrix {
    fn scaled(&self, factor: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                let cur = std::mem::take(&mut out[(i, j)]);
                out[(i, j)] = cur * factor;
            }
        }
        out
    }
}
