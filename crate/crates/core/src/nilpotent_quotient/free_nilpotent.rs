//! The free nilpotent group `F / gamma_{c+1}(F)` realized inside the truncated
//! Magnus ring. Its Mal'cev basis is the Hall basis of weights `1..=c`, each
//! tree read as an iterated group commutator; coordinates are recovered one
//! weight layer at a time.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Budget;
use crate::error::{Error, Result};
use crate::free_lie::embedding::{LieSolver, Monomials, Series};
use crate::free_lie::{hall_basis_rank, witt_rank_for, HallTree};
use crate::presentations::FreeWord;

pub(crate) struct FreeNilpotent {
    pub rank: usize,
    pub class: usize,
    pub space: Arc<Monomials>,
    pub trees: Vec<HallTree>,
    pub weights: Vec<usize>,
    /// `layers[w - 1]` is the depth range of weight `w`.
    pub layers: Vec<Range<usize>>,
    basis: Vec<Series>,
    solvers: Vec<Arc<LieSolver>>,
    budget: Budget,
}

impl FreeNilpotent {
    pub fn new(rank: usize, class: usize, budget: Budget) -> Result<Self> {
        let total: BigInt = (1..=class as u32).map(|w| witt_rank_for(rank as u64, w)).sum();
        if total > BigInt::from(budget.max_generators) {
            return Err(Error::Budget(format!(
                "free nilpotent group of rank {rank} and class {class} needs {total} generators (limit {})",
                budget.max_generators
            )));
        }
        let monomials: BigInt = (0..=class as u32).map(|d| BigInt::from(rank).pow(d)).sum();
        if monomials > BigInt::from(budget.max_monomials) {
            return Err(Error::Budget(format!(
                "Magnus truncation needs {monomials} monomials (limit {})",
                budget.max_monomials
            )));
        }
        let space = Arc::new(Monomials::new(rank, class));
        let mut trees = Vec::new();
        let mut weights = Vec::new();
        let mut layers = Vec::new();
        let mut solvers = Vec::new();
        for w in 1..=class {
            let start = trees.len();
            trees.extend(hall_basis_rank(rank, w).iter().cloned());
            weights.resize(trees.len(), w);
            layers.push(start..trees.len());
            solvers.push(LieSolver::get(rank, w));
        }
        let mut memo: HashMap<HallTree, Series> = HashMap::new();
        let basis = trees.iter().map(|t| tree_series(t, &space, &mut memo)).collect();
        Ok(FreeNilpotent { rank, class, space, trees, weights, layers, basis, solvers, budget })
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn one(&self) -> Series {
        Series::one(&self.space)
    }

    pub fn generator(&self, g: usize) -> Series {
        self.basis[g].clone()
    }

    pub fn word_series(&self, w: &FreeWord) -> Series {
        let mut s = self.one();
        for syl in w.syllables() {
            s = s.mul(&Series::generator_power(&self.space, syl.generator, &syl.exponent));
        }
        s
    }

    pub fn check(&self, s: &Series) -> Result<()> {
        let bits = s.max_bits();
        if bits > self.budget.max_bits {
            return Err(Error::Budget(format!(
                "coefficient size {bits} bits exceeds the limit of {}",
                self.budget.max_bits
            )));
        }
        Ok(())
    }

    /// Coordinates on the weight-`w` layer of an element of `gamma_w`.
    pub fn layer_coords(&self, s: &Series, w: usize) -> Vec<BigInt> {
        self.solvers[w - 1]
            .coordinates(s.component(w))
            .expect("Magnus component is not a Lie element")
    }

    /// Depth and exponent of the first nonzero Mal'cev coordinate.
    pub fn lead(&self, s: &Series) -> Option<(usize, BigInt)> {
        let w = s.valuation()?;
        let coords = self.layer_coords(s, w);
        let (i, e) = coords.into_iter().enumerate().find(|(_, e)| !e.is_zero())?;
        Some((self.layers[w - 1].start + i, e))
    }

    pub fn basis_power(&self, depth: usize, e: &BigInt) -> Series {
        if e.is_one() {
            self.basis[depth].clone()
        } else {
            self.basis[depth].pow(e)
        }
    }

    /// `prod b_j^{e_j}` over one weight layer, in depth order.
    pub fn layer_product(&self, w: usize, coords: &[BigInt]) -> Series {
        let mut s = self.one();
        for (i, e) in coords.iter().enumerate() {
            if !e.is_zero() {
                s = s.mul(&self.basis_power(self.layers[w - 1].start + i, e));
            }
        }
        s
    }

    /// Full Mal'cev coordinates.
    #[cfg(test)]
    pub fn coords(&self, s: &Series) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.len());
        let mut tail = s.clone();
        for w in 1..=self.class {
            let c = self.layer_coords(&tail, w);
            if c.iter().any(|e| !e.is_zero()) {
                tail = self.layer_product(w, &c).inverse().mul(&tail);
            }
            out.extend(c);
        }
        debug_assert!(tail.is_one());
        out
    }

    #[cfg(test)]
    pub fn compose_coords(&self, coords: &[BigInt]) -> Series {
        let mut s = self.one();
        for (depth, e) in coords.iter().enumerate() {
            if !e.is_zero() {
                s = s.mul(&self.basis_power(depth, e));
            }
        }
        s
    }
}

fn tree_series(t: &HallTree, space: &Arc<Monomials>, memo: &mut HashMap<HallTree, Series>) -> Series {
    if let Some(s) = memo.get(t) {
        return s.clone();
    }
    let s = match t {
        HallTree::Leaf(g) => Series::generator_power(space, *g, &BigInt::one()),
        HallTree::Node(u, v) => {
            let su = tree_series(u, space, memo);
            let sv = tree_series(v, space, memo);
            commutator(&su, &sv)
        }
    };
    memo.insert(t.clone(), s.clone());
    s
}

/// `u^-1 v^-1 u v`.
pub(crate) fn commutator(u: &Series, v: &Series) -> Series {
    u.inverse().mul(&v.inverse()).mul(u).mul(v)
}

/// `x^-1 g x`.
pub(crate) fn conjugate(g: &Series, x: &Series) -> Series {
    x.inverse().mul(g).mul(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(c: usize) -> FreeNilpotent {
        FreeNilpotent::new(2, c, Budget::default()).unwrap()
    }

    #[test]
    fn basis_elements_have_unit_coordinates() {
        let f = phi(4);
        for j in 0..f.len() {
            let mut expect = vec![BigInt::zero(); f.len()];
            expect[j] = BigInt::one();
            assert_eq!(f.coords(&f.generator(j)), expect);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = phi(4);
        let w = FreeWord::from_syllables([(0, 3), (1, -2), (0, -1), (1, 5), (0, 2)]);
        let s = f.word_series(&w);
        let c = f.coords(&s);
        assert_eq!(f.compose_coords(&c), s);
        // the weight-1 coordinates are the exponent sums
        assert_eq!(c[0], BigInt::from(4));
        assert_eq!(c[1], BigInt::from(3));
    }

    #[test]
    fn budget_rejects_large_class() {
        let tight = Budget { max_generators: 10, ..Budget::default() };
        assert!(matches!(FreeNilpotent::new(2, 6, tight), Err(Error::Budget(_))));
    }
}
