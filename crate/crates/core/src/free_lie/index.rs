use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::embedding::{lie_polynomial, LieSolver};
use super::{hall_basis, LieElement};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::presentations::BSParams;

/// The substitution `x -> x, y -> kappa y`; a tree with `e` copies of `y`
/// gets its coefficient multiplied by `kappa^e`.
pub fn psi_substitute(kappa: &BigInt, u: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (tree, c) in u.terms() {
        out.add_term(tree.clone(), c * kappa.pow(tree.y_degree() as u32));
    }
    out
}

/// Total `y`-degree over the degree-`c` Hall basis.
pub fn y_degree_sum(c: usize) -> usize {
    hall_basis(c).iter().map(|t| t.y_degree()).sum()
}

/// Index of `psi(gr_c(F))` in `gr_c(F)`, i.e. `|kappa|^{T_c}`.
pub fn lattice_index(c: usize, kappa: &BigInt) -> BigInt {
    kappa.abs().pow(y_degree_sum(c) as u32)
}

/// Matrix of `psi` on the degree-`c` Hall basis, computed without using
/// multihomogeneity: each basis tree is expanded to its associative polynomial,
/// every word is scaled by `kappa^(number of y letters)`, and the result is
/// solved back into Hall coordinates.
pub fn psi_matrix(c: usize, kappa: &BigInt) -> IntMatrix {
    let basis = hall_basis(c);
    let solver = LieSolver::get(2, c);
    let rows = basis
        .iter()
        .map(|tree| {
            let mut poly = lie_polynomial(tree, 2);
            for (code, coeff) in poly.iter_mut().enumerate() {
                if !coeff.is_zero() {
                    *coeff *= kappa.pow(code.count_ones());
                }
            }
            solver.coordinates(&poly).expect("substituted Lie polynomial left the Lie ring")
        })
        .collect();
    IntMatrix::from_rows(basis.len(), rows)
}

/// `|det psi_c|`, the index computed from the matrix.
pub fn lattice_index_by_determinant(c: usize, kappa: &BigInt) -> BigInt {
    psi_matrix(c, kappa).determinant().abs()
}

/// Upper bound for `|gr_c(BS(m, n))|` when `c >= 2`: `|delta|^{T_c}` if
/// `delta != 0`, and `m^{T_c}` otherwise. The true order divides it.
pub fn grc_order_bound(p: &BSParams, c: usize) -> Result<BigInt> {
    if c < 2 {
        return Err(Error::TooSmall { what: "class", min: 2, got: c as i64 });
    }
    let kappa = if p.delta != 0 { p.delta } else { p.m };
    Ok(lattice_index(c, &BigInt::from(kappa)))
}
