//! The free Lie ring over the integers: Hall bases, bracket arithmetic, Witt
//! ranks, the substitution map `y -> kappa y` and the finiteness bound for `gr_c`.
//!
//! The public API works in rank 2 with generators `x` (index 0) and `y` (index 1);
//! the machinery underneath accepts any rank so that the nilpotent quotient
//! engine can reuse it.

mod bracket;
pub(crate) mod embedding;
mod index;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use bracket::{bracket, bracket_trees, bracket_trees_uncached};
pub use embedding::lie_polynomial;
pub use index::{
    grc_order_bound, lattice_index, lattice_index_by_determinant, psi_matrix, psi_substitute, y_degree_sum,
};

/// Index of `x` in rank 2.
pub const X: usize = 0;
/// Index of `y` in rank 2.
pub const Y: usize = 1;

/// A bracket tree over generator leaves.
///
/// Trees are ordered by degree, then leaves by descending generator index
/// (so `x > y`), then nodes lexicographically by `(left, right)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum HallTree {
    Leaf(usize),
    Node(Arc<HallTree>, Arc<HallTree>),
}

impl HallTree {
    pub fn leaf(generator: usize) -> Self {
        HallTree::Leaf(generator)
    }

    /// The formal bracket `[u, v]`; no Hall-set check is made.
    pub fn node(u: HallTree, v: HallTree) -> Self {
        HallTree::Node(Arc::new(u), Arc::new(v))
    }

    pub fn x() -> Self {
        HallTree::Leaf(X)
    }

    pub fn y() -> Self {
        HallTree::Leaf(Y)
    }

    pub fn degree(&self) -> usize {
        match self {
            HallTree::Leaf(_) => 1,
            HallTree::Node(u, v) => u.degree() + v.degree(),
        }
    }

    /// Number of leaves carrying `generator`.
    pub fn multiplicity(&self, generator: usize) -> usize {
        match self {
            HallTree::Leaf(g) => usize::from(*g == generator),
            HallTree::Node(u, v) => u.multiplicity(generator) + v.multiplicity(generator),
        }
    }

    pub fn y_degree(&self) -> usize {
        self.multiplicity(Y)
    }

    pub fn max_generator(&self) -> usize {
        match self {
            HallTree::Leaf(g) => *g,
            HallTree::Node(u, v) => u.max_generator().max(v.max_generator()),
        }
    }

    pub fn children(&self) -> Option<(&HallTree, &HallTree)> {
        match self {
            HallTree::Leaf(_) => None,
            HallTree::Node(u, v) => Some((u, v)),
        }
    }

    /// Hall-set membership: a node `[u, v]` is Hall iff `u` and `v` are, `u > v`,
    /// and either `u` is a leaf or the right child of `u` is `<= v`.
    pub fn is_hall(&self) -> bool {
        match self {
            HallTree::Leaf(_) => true,
            HallTree::Node(u, v) => {
                u.is_hall()
                    && v.is_hall()
                    && u > v
                    && match u.children() {
                        None => true,
                        Some((_, u2)) => u2 <= v,
                    }
            }
        }
    }
}

impl Ord for HallTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| match (self, other) {
            (HallTree::Leaf(a), HallTree::Leaf(b)) => b.cmp(a),
            (HallTree::Node(a1, a2), HallTree::Node(b1, b2)) => a1.cmp(b1).then_with(|| a2.cmp(b2)),
            (HallTree::Leaf(_), HallTree::Node(..)) => Ordering::Less,
            (HallTree::Node(..), HallTree::Leaf(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for HallTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn generator_name(index: usize, rank: usize) -> String {
    if rank <= 3 {
        ["x", "y", "z"][index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

impl HallTree {
    pub fn display_in_rank(&self, rank: usize) -> String {
        match self {
            HallTree::Leaf(g) => generator_name(*g, rank.max(g + 1)),
            HallTree::Node(u, v) => format!("[{},{}]", u.display_in_rank(rank), v.display_in_rank(rank)),
        }
    }
}

impl fmt::Display for HallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in_rank(self.max_generator() + 1))
    }
}

impl fmt::Debug for HallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type BasisCache = Mutex<HashMap<(usize, usize), Arc<Vec<HallTree>>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Hall trees of degree exactly `c` over `rank` generators, in descending order.
pub fn hall_basis_rank(rank: usize, c: usize) -> Arc<Vec<HallTree>> {
    if let Some(hit) = basis_cache().lock().expect("basis cache poisoned").get(&(rank, c)) {
        return hit.clone();
    }
    let mut trees: Vec<HallTree> = if c == 0 {
        Vec::new()
    } else if c == 1 {
        (0..rank).map(HallTree::Leaf).collect()
    } else {
        let mut out = Vec::new();
        for i in 1..c {
            let left = hall_basis_rank(rank, i);
            let right = hall_basis_rank(rank, c - i);
            for u in left.iter() {
                for v in right.iter() {
                    let ok = u > v
                        && match u.children() {
                            None => true,
                            Some((_, u2)) => u2 <= v,
                        };
                    if ok {
                        out.push(HallTree::node(u.clone(), v.clone()));
                    }
                }
            }
        }
        out
    };
    trees.sort_by(|a, b| b.cmp(a));
    let trees = Arc::new(trees);
    basis_cache().lock().expect("basis cache poisoned").insert((rank, c), trees.clone());
    trees
}

/// Hall basis of degree `c` in rank 2, e.g. `[[x,y],x], [[x,y],y]` for `c = 3`.
pub fn hall_basis(c: usize) -> Vec<HallTree> {
    hall_basis_rank(2, c).as_ref().clone()
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the degree-`c` component of the free Lie ring on `rank` generators:
/// `(1/c) sum_{e | c} mobius(e) rank^(c/e)`.
pub fn witt_rank_for(rank: u64, c: u32) -> BigInt {
    assert!(c >= 1, "degree must be positive");
    let mut total = BigInt::zero();
    for e in 1..=c {
        if c.is_multiple_of(e) {
            total += BigInt::from(mobius(u64::from(e))) * BigInt::from(rank).pow(c / e);
        }
    }
    total / BigInt::from(c)
}

pub fn witt_rank(c: u32) -> BigInt {
    witt_rank_for(2, c)
}

/// An integer combination of Hall trees with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<HallTree, BigInt>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn basis(tree: HallTree) -> Self {
        Self::term(tree, BigInt::one())
    }

    pub fn term(tree: HallTree, coeff: BigInt) -> Self {
        let mut e = LieElement::zero();
        e.add_term(tree, coeff);
        e
    }

    pub fn x() -> Self {
        Self::basis(HallTree::x())
    }

    pub fn y() -> Self {
        Self::basis(HallTree::y())
    }

    pub fn add_term(&mut self, tree: HallTree, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tree);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HallTree, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tree: &HallTree) -> BigInt {
        self.terms.get(tree).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LieElement::zero();
        }
        LieElement { terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect() }
    }

    pub fn neg(&self) -> Self {
        LieElement { terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &LieElement) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> Self {
        self.add(&other.neg())
    }

    /// The homogeneous component of degree `c`.
    pub fn component(&self, c: usize) -> Self {
        LieElement {
            terms: self.terms.iter().filter(|(t, _)| t.degree() == c).map(|(t, k)| (t.clone(), k.clone())).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(HallTree::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(t, c)| format!("{c}*{t}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
