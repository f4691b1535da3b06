use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::coset_projection_sup;
use crate::metrics::transition_mask;
use crate::util::{batch_means_se, linear_fit, mean};
use crate::walk::measure::StepDistribution;
use crate::walk::sampler::walk_visit;

#[derive(Debug, Clone, Serialize)]
pub struct TrackingRow {
    pub n: u32,
    /// mean of d(omega_n, Tr alpha)/n, alpha the normal-form geodesic to the
    /// walk's terminal position.
    pub mean_deviation: f64,
    pub deviation_se: f64,
    /// mean of sup_U d_U(1, omega_n)/n over factor cosets.
    pub mean_projection: f64,
    pub projection_se: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrackingTable {
    pub rows: Vec<TrackingRow>,
    /// Least-squares slope of the mean deviation column against n.
    pub deviation_trend_slope: f64,
    pub projection_trend_slope: f64,
    pub transition_radius: u32,
    pub walk_length: u32,
    pub walks: u64,
}

/// Sub-linear tracking diagnostic: at each checkpoint n <= N/2 report the
/// normalized distance from omega_n to the transition points of the terminal
/// geodesic, and the normalized largest coset projection. Checkpoints stop
/// at N/2 so the terminal segment pins down the end.
pub fn tracking_diagnostic(
    mu: &StepDistribution,
    n_steps: u32,
    n_walks: u64,
    checkpoints: &[u32],
    transition_radius: u32,
    master_seed: u64,
) -> Result<TrackingTable> {
    if checkpoints.is_empty() {
        return Err(Error::Precondition("no checkpoints given".into()));
    }
    let mut cps = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    if cps[0] < 1 || *cps.last().unwrap() > n_steps / 2 {
        return Err(Error::Precondition(format!(
            "checkpoints must lie in [1, N/2] = [1, {}]",
            n_steps / 2
        )));
    }
    if transition_radius < 1 {
        return Err(Error::Precondition("transition radius must be >= 1".into()));
    }
    let spec = mu.spec();

    // per walk, per checkpoint: (deviation/n, projection/n)
    let per_walk: Vec<Vec<(f64, f64)>> = (0..n_walks)
        .into_par_iter()
        .map(|w| {
            let mut snapshots = Vec::with_capacity(cps.len());
            let mut terminal = spec.identity();
            let mut next = 0usize;
            walk_visit(mu, n_steps, master_seed, w, |k, pos| {
                if next < cps.len() && k == cps[next] {
                    snapshots.push(pos.clone());
                    next += 1;
                }
                if k == n_steps {
                    terminal = pos.clone();
                }
            });
            let mask = transition_mask(spec, &terminal, transition_radius);
            let path = spec.geodesic_generators(&terminal);
            let mut out = Vec::with_capacity(cps.len());
            for (ci, x) in snapshots.iter().enumerate() {
                let n = cps[ci] as f64;
                // sweep z = x^{-1} * alpha_k along the geodesic, O(1) per step
                let mut z = spec.invert(x).expect("same spec");
                let mut len = spec.word_length(&z);
                let mut best = if mask[0] { len } else { u64::MAX };
                for (k, &gi) in path.iter().enumerate() {
                    spec.apply_generator_tracked(&mut z, gi, &mut len);
                    if mask[k + 1] {
                        best = best.min(len);
                    }
                }
                let (proj, _) = coset_projection_sup(spec, x).expect("same spec");
                out.push((best as f64 / n, proj as f64 / n));
            }
            out
        })
        .collect();

    let mut rows = Vec::with_capacity(cps.len());
    for (ci, &n) in cps.iter().enumerate() {
        let devs: Vec<f64> = per_walk.iter().map(|w| w[ci].0).collect();
        let projs: Vec<f64> = per_walk.iter().map(|w| w[ci].1).collect();
        rows.push(TrackingRow {
            n,
            mean_deviation: mean(&devs),
            deviation_se: batch_means_se(&devs, 32),
            mean_projection: mean(&projs),
            projection_se: batch_means_se(&projs, 32),
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let dev_ys: Vec<f64> = rows.iter().map(|r| r.mean_deviation).collect();
    let proj_ys: Vec<f64> = rows.iter().map(|r| r.mean_projection).collect();
    let (dev_slope, _, _) = linear_fit(&xs, &dev_ys);
    let (proj_slope, _, _) = linear_fit(&xs, &proj_ys);
    Ok(TrackingTable {
        rows,
        deviation_trend_slope: dev_slope,
        projection_trend_slope: proj_slope,
        transition_radius,
        walk_length: n_steps,
        walks: n_walks,
    })
}
