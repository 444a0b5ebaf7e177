//! Workloads shared by the criterion benches.

use solitar_core::presentations::{commutator_word, A, T};
use solitar_core::{BSParams, FreeWord};

/// Groups the kernels are timed on: one per branch of the classification.
pub const GROUPS: [(i64, i64); 4] = [(1, 3), (2, 3), (2, 4), (6, 12)];

pub fn params(m: i64, n: i64) -> BSParams {
    BSParams::new(m, n).expect("bench parameters are valid")
}

/// A word with `depth` nested conjugations by `t`, freely reduced but far
/// from Britton-reduced: `t^-k a^m t^k` pushes exponents through every layer.
pub fn nested_conjugates(p: &BSParams, depth: usize) -> FreeWord {
    let mut w = FreeWord::power(A, p.m);
    for i in 0..depth {
        let t = FreeWord::power(T, if i % 3 == 2 { 1 } else { -1 });
        w = w.conjugate(&t).concat(&FreeWord::power(A, p.m * (i as i64 + 1)));
    }
    w
}

/// `[t^-k a^mu t^k, a^nu]` products for `|k| <= k_window`, the words the
/// verifier pushes through nilpotent quotients.
pub fn commutator_batch(p: &BSParams, k_window: i64) -> Vec<FreeWord> {
    (-k_window..=k_window)
        .map(|k| {
            let inner = FreeWord::from_syllables([(T, -k), (A, p.d), (T, k)]);
            commutator_word(&inner, &FreeWord::power(A, 1 + k.abs()))
        })
        .collect()
}
