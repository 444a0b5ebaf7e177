//! The groups the acceptance suite and the bundled corpus are run against.

use crate::presentations::BSParams;

/// Parameter pairs covering every branch of the classification.
pub const ACCEPTANCE: [(i64, i64); 9] = [(1, 3), (2, 2), (2, -2), (2, 3), (2, 4), (3, 5), (6, 9), (6, 10), (6, 12)];

/// The acceptance set plus a few extra residually nilpotent and prime-power cases.
pub const CORPUS: [(i64, i64); 12] =
    [(1, 2), (1, 3), (2, 2), (2, -2), (2, 3), (2, 4), (3, 5), (4, 4), (4, 6), (6, 9), (6, 10), (6, 12)];

/// Groups the classification marks residually nilpotent.
pub const RESIDUALLY_NILPOTENT: [(i64, i64); 4] = [(1, 3), (2, 2), (2, -2), (4, 4)];

pub fn params(pairs: &[(i64, i64)]) -> Vec<BSParams> {
    pairs.iter().map(|&(m, n)| BSParams::new(m, n).expect("fixture parameters are valid")).collect()
}
