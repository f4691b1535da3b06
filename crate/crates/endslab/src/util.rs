//! Deterministic seeding, order-independent reductions and small statistics
//! helpers shared across the estimator pipelines.

/// SplitMix64 step; fixed here so seed derivation never changes between
/// platforms or releases.
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-task seed: hash of (master seed, task index). Tasks indexed
/// identically produce identical streams regardless of worker count.
pub fn derive_seed(master: u64, index: u64) -> [u8; 32] {
    let mut state = master ^ 0xD1B54A32D192ED03u64.wrapping_mul(index.wrapping_add(1));
    let mut out = [0u8; 32];
    for chunk in out.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    out
}

/// Pairwise summation over a slice in index order; the result depends only
/// on the values and their order, never on thread scheduling.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Sample standard deviation (n-1 in the denominator).
pub fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let sq: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
    (pairwise_sum(&sq) / (n as f64 - 1.0)).sqrt()
}

/// Standard error of the mean via batch means over `batches` fixed,
/// index-contiguous batches.
pub fn batch_means_se(values: &[f64], batches: usize) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let b = batches.clamp(2, n);
    let size = n / b;
    if size == 0 {
        return sample_sd(values) / (n as f64).sqrt();
    }
    let means: Vec<f64> = (0..b)
        .map(|i| mean(&values[i * size..(i + 1) * size]))
        .collect();
    sample_sd(&means) / (b as f64).sqrt()
}

/// Least-squares line fit y = a + b x. Returns (slope, intercept, slope_se)
/// where slope_se comes from the residual variance.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return (0.0, ys.first().copied().unwrap_or(0.0), 0.0);
    }
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return (0.0, my, 0.0);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (intercept + slope * x);
        ss_res += r * r;
    }
    let dof = (n - 2.0).max(1.0);
    let se = (ss_res / dof / sxx).sqrt();
    (slope, intercept, se)
}

/// Weighted least-squares slope of y against x with per-point standard
/// deviations; returns (slope, slope_se) with the error propagated from the
/// per-point sigmas.
pub fn weighted_slope_se(xs: &[f64], ys: &[f64], sigmas: &[f64]) -> (f64, f64) {
    let (slope, _, _) = linear_fit(xs, ys);
    // propagate per-point errors through the unweighted LS coefficients
    let mx = mean(xs);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return (slope, 0.0);
    }
    let var: f64 = xs
        .iter()
        .zip(sigmas)
        .map(|(x, s)| {
            let c = (x - mx) / sxx;
            c * c * s * s
        })
        .sum();
    (slope, var.sqrt())
}

/// Upper-tail p-value of a one-sided t test for "slope > 0" given the fitted
/// slope and its standard error, with `dof` degrees of freedom. Uses the
/// regularized incomplete beta function.
pub fn slope_positive_p_value(slope: f64, se: f64, dof: f64) -> f64 {
    if se == 0.0 {
        return if slope > 0.0 { 0.0 } else { 1.0 };
    }
    let t = slope / se;
    // P(T > t) = I_{dof/(dof+t^2)}(dof/2, 1/2) / 2 for t >= 0
    let x = dof / (dof + t * t);
    let p_two = incomplete_beta(x, dof / 2.0, 0.5);
    if t >= 0.0 {
        p_two / 2.0
    } else {
        1.0 - p_two / 2.0
    }
}

/// Regularized incomplete beta I_x(a, b) by continued fraction
/// (Lentz's method), as in standard numerical references.
fn incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    let use_direct = x < (a + 1.0) / (a + b + 2.0);
    let (aa, bb, xx) = if use_direct { (a, b, x) } else { (b, a, 1.0 - x) };
    let mut c = 1.0;
    let mut d = 1.0 - (aa + bb) * xx / (aa + 1.0);
    if d.abs() < 1e-300 {
        d = 1e-300;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..200 {
        let m = m as f64;
        let num = m * (bb - m) * xx / ((aa + 2.0 * m - 1.0) * (aa + 2.0 * m));
        d = 1.0 + num * d;
        if d.abs() < 1e-300 {
            d = 1e-300;
        }
        d = 1.0 / d;
        c = 1.0 + num / c;
        if c.abs() < 1e-300 {
            c = 1e-300;
        }
        h *= d * c;
        let num = -(aa + m) * (aa + bb + m) * xx / ((aa + 2.0 * m) * (aa + 2.0 * m + 1.0));
        d = 1.0 + num * d;
        if d.abs() < 1e-300 {
            d = 1e-300;
        }
        d = 1.0 / d;
        c = 1.0 + num / c;
        if c.abs() < 1e-300 {
            c = 1e-300;
        }
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-12 {
            break;
        }
    }
    let val = front * h / aa;
    if use_direct {
        val
    } else {
        1.0 - val
    }
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        pi.ln() - (pi * x).sin().ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut a = COEF[0];
        let t = x + 7.5;
        for (i, c) in COEF.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
}
