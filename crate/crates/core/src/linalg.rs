//! Dense integer matrices: Smith and Hermite normal forms, determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// `col[dst] += q * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// Replaces rows `a`, `b` by `(s a + t b, u a + v b)`.
    fn combine_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = u * x + v * y;
        }
    }

    /// Determinant of a square matrix by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Smith normal form `left * self * right = diag(divisors)`.
    ///
    /// Pivots are chosen with minimal absolute value to slow coefficient growth.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut left = IntMatrix::identity(r);
        let mut right = IntMatrix::identity(c);
        for t in 0..r.min(c) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let v = a.get(i, j);
                        if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return SmithForm::finish(a, left, right);
                };
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                let pivot = a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..r {
                    let q = -a.get(i, t).div_floor(&pivot);
                    a.add_row(i, t, &q);
                    left.add_row(i, t, &q);
                    clean &= a.get(i, t).is_zero();
                }
                for j in t + 1..c {
                    let q = -a.get(t, j).div_floor(&pivot);
                    a.add_col(j, t, &q);
                    right.add_col(j, t, &q);
                    clean &= a.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => {
                        let one = BigInt::one();
                        a.add_row(t, i, &one);
                        left.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                left.negate_row(t);
            }
        }
        SmithForm::finish(a, left, right)
    }

    /// Row-style Hermite normal form with transform: `transform * self` has
    /// the echelon rows `hnf` on top and zero rows below.
    ///
    /// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
    pub fn hermite(&self) -> Hermite {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = IntMatrix::identity(r);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            for i in row + 1..r {
                if a.get(i, col).is_zero() {
                    continue;
                }
                if a.get(row, col).is_zero() {
                    a.swap_rows(row, i);
                    u.swap_rows(row, i);
                    continue;
                }
                let x = a.get(row, col).clone();
                let y = a.get(i, col).clone();
                let e = x.extended_gcd(&y);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (p, q) = (-(&y / &g), &x / &g);
                a.combine_rows(row, i, &s, &t, &p, &q);
                u.combine_rows(row, i, &s, &t, &p, &q);
            }
            if a.get(row, col).is_zero() {
                continue;
            }
            if a.get(row, col).is_negative() {
                a.negate_row(row);
                u.negate_row(row);
            }
            let pivot = a.get(row, col).clone();
            for i in 0..row {
                let q = -a.get(i, col).div_floor(&pivot);
                a.add_row(i, row, &q);
                u.add_row(i, row, &q);
            }
            pivots.push(col);
            row += 1;
        }
        let hnf = IntMatrix::from_rows(c, (0..row).map(|i| a.row(i).to_vec()).collect());
        Hermite { hnf, transform: u, pivots }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `min(rows, cols)` nonnegative diagonal entries, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    fn finish(a: IntMatrix, left: IntMatrix, right: IntMatrix) -> Self {
        let divisors = (0..a.rows.min(a.cols)).map(|i| a.get(i, i).clone()).collect();
        SmithForm { divisors, left, right }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    a.smith_normal_form()
}

#[derive(Clone, Debug)]
pub struct Hermite {
    pub hnf: IntMatrix,
    pub transform: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer solution `x` of `x * original = v` if one exists.
    pub fn solve_left(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let rank = self.rank();
        let mut y = vec![BigInt::zero(); rank];
        let mut rest = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let (q, rem) = rest[p].div_rem(self.hnf.get(i, p));
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, r) in rest.iter_mut().enumerate() {
                    let h = self.hnf.get(i, j);
                    if !h.is_zero() {
                        *r -= &q * h;
                    }
                }
            }
            y[i] = q;
        }
        if rest.iter().any(|r| !r.is_zero()) {
            return None;
        }
        let rows = self.transform.rows();
        let mut x = vec![BigInt::zero(); rows];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, xj) in x.iter_mut().enumerate() {
                let u = self.transform.get(i, j);
                if !u.is_zero() {
                    *xj += yi * u;
                }
            }
        }
        Some(x)
    }
}

/// `Z^free_rank + Z/t1 + ... + Z/tk` with `t1 | t2 | ... | tk`, all `ti >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    /// Invariants of `Z^generators / rowspace(relations)`.
    pub fn from_relations(generators: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.cols(), generators, "relation matrix width");
        let snf = relations.smith_normal_form();
        let nonzero: Vec<&BigInt> = snf.divisors.iter().filter(|d| !d.is_zero()).collect();
        AbelianInvariants {
            free_rank: generators - nonzero.len(),
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn diag_check(a: &IntMatrix) -> Vec<BigInt> {
        let snf = a.smith_normal_form();
        let d = snf.left.mul(a).mul(&snf.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "off-diagonal entry in\n{d}");
                } else {
                    assert_eq!(d.get(i, i), &snf.divisors[i]);
                }
            }
        }
        assert!(snf.left.determinant().abs().is_one());
        assert!(snf.right.determinant().abs().is_one());
        for w in snf.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        snf.divisors
    }

    #[test]
    fn smith_examples() {
        assert_eq!(diag_check(&IntMatrix::identity(2)), big(&[1, 1]));
        assert_eq!(diag_check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])), big(&[2, 4]));
        assert_eq!(diag_check(&IntMatrix::zeros(2, 3)), big(&[0, 0]));
        assert_eq!(diag_check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])), big(&[1, 6]));
        diag_check(&IntMatrix::from_i64(&[&[4, 6, -2], &[10, 0, 14], &[3, 3, 3], &[0, 1, 0]]));
    }

    #[test]
    fn determinant_matches_expansion() {
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[3, -1, 4], &[5, 9, 2]]);
        // cofactor expansion along the first row
        let expected = -2 * (3 * 2 - 4 * 5) + (3 * 9 + 5);
        assert_eq!(m.determinant(), BigInt::from(expected));
        assert_eq!(IntMatrix::from_i64(&[&[2, 4], &[1, 2]]).determinant(), BigInt::zero());
    }

    #[test]
    fn hermite_solves_and_is_canonical() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[3, 1, 0], &[5, 5, 6]]);
        let h = m.hermite();
        assert_eq!(h.rank(), 2);
        let top = IntMatrix::from_rows(3, (0..2).map(|i| h.transform.row(i).to_vec()).collect());
        assert_eq!(top.mul(&m), h.hnf);
        let target = big(&[7, 9, 12]);
        let x = h.solve_left(&target).expect("2 * (2,4,6) + (3,1,0)");
        assert_eq!(m.left_apply(&x), target);
        assert!(h.solve_left(&big(&[1, 0, 0])).is_none());
        // same lattice, different generators
        let m2 = IntMatrix::from_i64(&[&[5, 5, 6], &[3, 1, 0]]);
        assert_eq!(m2.hermite().hnf, h.hnf);
    }

    #[test]
    fn invariants_from_relations() {
        let inv = AbelianInvariants::from_relations(2, &IntMatrix::from_i64(&[&[0, 4]]));
        assert_eq!(inv.to_string(), "Z + Z/4");
        assert_eq!(AbelianInvariants::from_relations(2, &IntMatrix::zeros(0, 2)).to_string(), "Z^2");
        let inv = AbelianInvariants::from_relations(1, &IntMatrix::from_i64(&[&[1]]));
        assert!(inv.is_trivial());
        assert_eq!(inv.order(), Some(BigInt::one()));
    }
}
