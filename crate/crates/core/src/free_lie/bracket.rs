use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::{HallTree, LieElement};

type BracketCache = RwLock<HashMap<(HallTree, HallTree), LieElement>>;

fn cache() -> &'static BracketCache {
    static CACHE: OnceLock<BracketCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `[u, v]` for Hall trees `u`, `v`, rewritten into the Hall basis.
///
/// Straightening uses antisymmetry and the Jacobi form
/// `[[u1, u2], v] = [[u1, v], u2] + [u1, [u2, v]]` whenever `[u, v]` is not Hall.
pub fn bracket_trees(u: &HallTree, v: &HallTree) -> LieElement {
    straighten(u, v, true)
}

/// Same as [`bracket_trees`] but bypasses the shared memo table.
pub fn bracket_trees_uncached(u: &HallTree, v: &HallTree) -> LieElement {
    straighten(u, v, false)
}

fn straighten(u: &HallTree, v: &HallTree, memo: bool) -> LieElement {
    debug_assert!(u.is_hall() && v.is_hall(), "bracket of non-Hall trees");
    if u == v {
        return LieElement::zero();
    }
    if u < v {
        return straighten(v, u, memo).neg();
    }
    let key = (u.clone(), v.clone());
    if memo {
        if let Some(hit) = cache().read().expect("bracket cache poisoned").get(&key) {
            return hit.clone();
        }
    }
    let result = match u.children() {
        Some((u1, u2)) if u2 > v => {
            let first = combine(&straighten(u1, v, memo), &LieElement::basis(u2.clone()), memo);
            let second = combine(&LieElement::basis(u1.clone()), &straighten(u2, v, memo), memo);
            first.add(&second)
        }
        _ => LieElement::basis(HallTree::node(u.clone(), v.clone())),
    };
    if memo {
        cache().write().expect("bracket cache poisoned").insert(key, result.clone());
    }
    result
}

fn combine(a: &LieElement, b: &LieElement, memo: bool) -> LieElement {
    let mut out = LieElement::zero();
    for (s, cs) in a.terms() {
        for (t, ct) in b.terms() {
            let prod = cs * ct;
            for (tree, c) in straighten(s, t, memo).terms() {
                out.add_term(tree.clone(), c * &prod);
            }
        }
    }
    out
}

/// Bilinear extension of [`bracket_trees`].
pub fn bracket(u: &LieElement, v: &LieElement) -> LieElement {
    combine(u, v, true)
}
