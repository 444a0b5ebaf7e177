//! The free associative ring on `rank` generators truncated above a degree.
//!
//! A Lie element maps to its associative polynomial (`[u,v] -> uv - vu`), and a
//! free-group element `g` maps to its Magnus series (`x_i -> 1 + X_i`). The
//! integer coordinates of a homogeneous Lie polynomial in the Hall basis are
//! recovered by an exact Hermite solve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{hall_basis_rank, HallTree};
use crate::linalg::{Hermite, IntMatrix};

/// Homogeneous polynomial of degree `deg` as dense coefficients over the
/// `rank^deg` words, indexed in base `rank` with the first letter most significant.
pub fn lie_polynomial(tree: &HallTree, rank: usize) -> Vec<BigInt> {
    match tree {
        HallTree::Leaf(g) => {
            let mut v = vec![BigInt::zero(); rank];
            v[*g] = BigInt::one();
            v
        }
        HallTree::Node(u, v) => {
            let pu = lie_polynomial(u, rank);
            let pv = lie_polynomial(v, rank);
            let mut out = concat_product(&pu, &pv);
            for (o, s) in out.iter_mut().zip(concat_product(&pv, &pu)) {
                *o -= s;
            }
            out
        }
    }
}

fn concat_product(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] += x * y;
            }
        }
    }
    out
}

/// Solves for Hall-basis coordinates of homogeneous Lie polynomials.
pub(crate) struct LieSolver {
    hermite: Hermite,
}

impl LieSolver {
    fn new(rank: usize, degree: usize) -> Self {
        let basis = hall_basis_rank(rank, degree);
        let cols = rank.pow(degree as u32);
        let rows = basis.iter().map(|t| lie_polynomial(t, rank)).collect();
        LieSolver { hermite: IntMatrix::from_rows(cols, rows).hermite() }
    }

    /// Shared solver for `(rank, degree)`.
    pub(crate) fn get(rank: usize, degree: usize) -> Arc<LieSolver> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<LieSolver>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().expect("solver cache poisoned").get(&(rank, degree)) {
            return hit.clone();
        }
        let solver = Arc::new(LieSolver::new(rank, degree));
        cache.lock().expect("solver cache poisoned").insert((rank, degree), solver.clone());
        solver
    }

    /// Coordinates in the Hall basis (descending order), or `None` if the
    /// polynomial is not a Lie polynomial.
    pub(crate) fn coordinates(&self, poly: &[BigInt]) -> Option<Vec<BigInt>> {
        self.hermite.solve_left(poly)
    }
}

/// Word indexing for the truncated algebra: words of length `d` occupy
/// `offsets[d] .. offsets[d] + rank^d`.
#[derive(Debug, PartialEq, Eq)]
pub(crate) struct Monomials {
    pub rank: usize,
    pub max_degree: usize,
    pub offsets: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Monomials {
    pub(crate) fn new(rank: usize, max_degree: usize) -> Self {
        let mut offsets = Vec::with_capacity(max_degree + 2);
        let mut sizes = Vec::with_capacity(max_degree + 1);
        let mut off = 0;
        for d in 0..=max_degree {
            offsets.push(off);
            let size = rank.pow(d as u32);
            sizes.push(size);
            off += size;
        }
        offsets.push(off);
        Monomials { rank, max_degree, offsets, sizes }
    }

    pub(crate) fn dim(&self) -> usize {
        self.offsets[self.max_degree + 1]
    }
}

/// An element of the truncated free associative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Series {
    pub space: Arc<Monomials>,
    pub coeffs: Vec<BigInt>,
}

impl Series {
    pub(crate) fn zero(space: &Arc<Monomials>) -> Self {
        Series { space: space.clone(), coeffs: vec![BigInt::zero(); space.dim()] }
    }

    pub(crate) fn one(space: &Arc<Monomials>) -> Self {
        let mut s = Self::zero(space);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `(1 + X_g)^e`, using generalized binomial coefficients for negative `e`.
    pub(crate) fn generator_power(space: &Arc<Monomials>, g: usize, e: &BigInt) -> Self {
        let mut s = Self::one(space);
        let mut binom = BigInt::one();
        let mut code = 0usize;
        for j in 1..=space.max_degree {
            binom = binom * (e - BigInt::from(j - 1)) / BigInt::from(j);
            if binom.is_zero() {
                break;
            }
            code = code * space.rank + g;
            s.coeffs[space.offsets[j] + code] = binom.clone();
        }
        s
    }

    #[cfg(test)]
    pub(crate) fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Lowest degree `>= 1` with a nonzero coefficient.
    pub(crate) fn valuation(&self) -> Option<usize> {
        (1..=self.space.max_degree).find(|&d| self.component(d).iter().any(|c| !c.is_zero()))
    }

    pub(crate) fn component(&self, d: usize) -> &[BigInt] {
        &self.coeffs[self.space.offsets[d]..self.space.offsets[d + 1]]
    }

    pub(crate) fn mul(&self, other: &Series) -> Series {
        let sp = &self.space;
        let mut out = Series::zero(sp);
        let nz = |s: &Series| -> Vec<(usize, usize, usize)> {
            let mut v = Vec::new();
            for d in 0..=sp.max_degree {
                for code in 0..sp.sizes[d] {
                    if !s.coeffs[sp.offsets[d] + code].is_zero() {
                        v.push((d, code, sp.offsets[d] + code));
                    }
                }
            }
            v
        };
        let left = nz(self);
        let right = nz(other);
        for &(da, ca, ia) in &left {
            let a = &self.coeffs[ia];
            for &(db, cb, ib) in &right {
                if da + db > sp.max_degree {
                    break;
                }
                let idx = sp.offsets[da + db] + ca * sp.sizes[db] + cb;
                out.coeffs[idx] += a * &other.coeffs[ib];
            }
        }
        out
    }

    /// `self^e` for a series with constant term 1, via the binomial series of
    /// `(1 + B)^e`, which terminates because `B` has positive valuation.
    pub(crate) fn pow(&self, e: &BigInt) -> Series {
        debug_assert!(self.coeffs[0].is_one(), "power of a non-unipotent series");
        let sp = &self.space;
        let mut b = self.clone();
        b.coeffs[0] = BigInt::zero();
        let Some(v) = b.valuation() else {
            return Series::one(sp);
        };
        let mut out = Series::one(sp);
        let mut term = Series::one(sp);
        let mut binom = BigInt::one();
        for j in 1..=sp.max_degree / v {
            binom = binom * (e - BigInt::from(j - 1)) / BigInt::from(j);
            term = term.mul(&b);
            if binom.is_zero() {
                break;
            }
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                if !t.is_zero() {
                    *o += &binom * t;
                }
            }
        }
        out
    }

    pub(crate) fn inverse(&self) -> Series {
        self.pow(&BigInt::from(-1))
    }

    /// Largest absolute coefficient bit length.
    pub(crate) fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}
