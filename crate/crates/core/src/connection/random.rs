use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ConnectionData, MetricData};
use crate::chart::Chart;
use crate::fields::random_polynomial;
use crate::polyring::Polynomial;

/// Random metric `g = PᵀP` with `P` unipotent upper triangular, so that
/// `g^{-1} = P^{-1} P^{-T}` is again polynomial. Returns the Levi-Civita
/// connection with the metric attached.
pub fn random_metric_with<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, max_degree: u32) -> ConnectionData {
    let n = chart.dim();
    let zero = Polynomial::zero(chart);
    let mut p = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        p[i][i] = Polynomial::one(chart);
        for j in i + 1..n {
            p[i][j] = random_polynomial(rng, chart, max_degree);
        }
    }
    // P Q = I, solved column by column from the diagonal upwards
    let mut q = vec![vec![zero.clone(); n]; n];
    for j in 0..n {
        q[j][j] = Polynomial::one(chart);
        for i in (0..j).rev() {
            let mut acc = zero.clone();
            for k in i + 1..=j {
                acc = &acc - &(&p[i][k] * &q[k][j]);
            }
            q[i][j] = acc;
        }
    }
    let mut g = vec![vec![zero.clone(); n]; n];
    let mut ginv = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                g[i][j] = &g[i][j] + &(&p[k][i] * &p[k][j]);
                ginv[i][j] = &ginv[i][j] + &(&q[i][k] * &q[j][k]);
            }
        }
    }
    let metric = MetricData::new(chart, g, ginv).expect("square matrices on one chart");
    metric.levi_civita()
}

pub fn random_metric(chart: &Chart, max_degree: u32, seed: u64) -> ConnectionData {
    random_metric_with(&mut ChaCha8Rng::seed_from_u64(seed), chart, max_degree)
}
