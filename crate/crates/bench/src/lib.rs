//! Benchmark fixtures for `fns-core`; the benches live in `benches/`.

use fns_core::fields::random_field;
use fns_core::{Chart, MixedField};

/// Nonzero random field of bidegree `(k, l)` on `R^dim` with quadratic coefficients.
pub fn fixture(dim: usize, k: usize, l: usize, seed: u64) -> MixedField {
    let chart = Chart::euclidean(dim);
    (seed..)
        .map(|s| random_field(&chart, k, l, 2, s).expect("k <= dim"))
        .find(|f| !f.is_zero())
        .expect("some seed gives a nonzero field")
}
