//! Derived quantities and the finite-size-scaling data-collapse fit.

use crate::codes::StabilizerCode;
use crate::extraction::GraphExtraction;
use crate::gf2::binomial;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("collapse fit needs at least two distinct code distances")]
    InsufficientData,
    #[error("quantity requires a k = 1 code")]
    RequiresSingleLogical,
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

/// Fraction of stabilizer syndromes corrected with certainty:
/// sum_{q<=t} C(N,q) 3^q / 2^(N-k). Returned as an exact reduced rational
/// together with its floating-point value.
pub fn correctable_fraction(code: &StabilizerCode) -> Result<(u128, u128, f64), AnalysisError> {
    let n = code.n() as u64;
    let mut numerator: u128 = 0;
    for q in 0..=code.t() as u64 {
        let term = binomial(n, q)
            .checked_mul(3u128.checked_pow(q as u32).ok_or(AnalysisError::Overflow("3^q"))?)
            .ok_or(AnalysisError::Overflow("C(N,q) 3^q"))?;
        numerator = numerator
            .checked_add(term)
            .ok_or(AnalysisError::Overflow("sum"))?;
    }
    let exponent = (code.n() - code.k()) as u32;
    if exponent >= 128 {
        return Err(AnalysisError::Overflow("2^(N-k)"));
    }
    let mut denominator: u128 = 1 << exponent;
    let mut num = numerator;
    while num.is_multiple_of(2) && denominator.is_multiple_of(2) {
        num /= 2;
        denominator /= 2;
    }
    Ok((num, denominator, numerator as f64 / (1u128 << exponent) as f64))
}

/// BDD search-space cardinality sum_{q<=T} C(n_eff, q), where n_eff is the
/// full qubit count, or the right-partition size when the CSS reduction
/// applies.
pub fn search_space(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    t: usize,
    css: bool,
) -> u128 {
    let n_eff = if css {
        ext.right_nodes().len()
    } else {
        code.n()
    } as u64;
    (0..=t as u64).map(|q| binomial(n_eff, q)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingletonReport {
    pub t_over_n: f64,
    /// Quantum singleton bound for k = 1: t/N <= 1/4 - 1/(4N).
    pub bound: f64,
    pub violated: bool,
}

pub fn singleton_report(code: &StabilizerCode) -> Result<SingletonReport, AnalysisError> {
    if code.k() != 1 {
        return Err(AnalysisError::RequiresSingleLogical);
    }
    let n = code.n() as f64;
    let t_over_n = code.t() as f64 / n;
    let bound = 0.25 - 1.0 / (4.0 * n);
    Ok(SingletonReport {
        t_over_n,
        bound,
        violated: t_over_n > bound + 1e-12,
    })
}

/// One (p, d, p_L) measurement for the collapse fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapsePoint {
    pub p: f64,
    pub d: usize,
    pub p_l: f64,
    /// Standard error of p_l; points are weighted by 1/stderr^2 when every
    /// point carries one, uniformly otherwise.
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CollapseConfig {
    /// p_c search window (the fit is only meaningful near the crossover).
    pub window: (f64, f64),
    pub poly_degree: usize,
    pub nu_range: (f64, f64),
    pub p_c_step: f64,
    pub nu_step: f64,
    pub refine_iters: usize,
}

impl CollapseConfig {
    pub fn with_window(window: (f64, f64)) -> Self {
        Self {
            window,
            poly_degree: 3,
            nu_range: (0.5, 3.0),
            p_c_step: 0.002,
            nu_step: 0.05,
            refine_iters: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseFit {
    pub p_c: f64,
    pub nu: f64,
    pub poly_degree: usize,
    pub residual: f64,
    pub window: (f64, f64),
    pub points_used: usize,
    pub converged: bool,
}

/// Known optimal-decoding thresholds quoted for comparison in reports.
pub const P_C_OPT_COLOR: f64 = 0.109;
pub const P_C_OPT_SURFACE: f64 = 0.1094;

/// Weighted least-squares residual of fitting p_L against a polynomial in
/// x = (p - p_c) d^(1/nu). Returns f64::INFINITY when the normal equations
/// are singular.
fn collapse_residual(
    points: &[CollapsePoint],
    weights: &[f64],
    p_c: f64,
    nu: f64,
    degree: usize,
) -> f64 {
    let m = degree + 1;
    let mut ata = vec![0.0f64; m * m];
    let mut atb = vec![0.0f64; m];
    for (pt, &w) in points.iter().zip(weights) {
        let x = (pt.p - p_c) * (pt.d as f64).powf(1.0 / nu);
        let mut basis = vec![0.0f64; m];
        let mut acc = 1.0;
        for b in basis.iter_mut() {
            *b = acc;
            acc *= x;
        }
        for i in 0..m {
            for j in 0..m {
                ata[i * m + j] += w * basis[i] * basis[j];
            }
            atb[i] += w * basis[i] * pt.p_l;
        }
    }
    // solve (A^T W A) c = A^T W b by partial-pivot elimination
    let mut a = ata;
    let mut b = atb;
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&i, &j| {
                a[i * m + col]
                    .abs()
                    .partial_cmp(&a[j * m + col].abs())
                    .unwrap()
            })
            .unwrap();
        if a[pivot * m + col].abs() < 1e-12 {
            return f64::INFINITY;
        }
        if pivot != col {
            for j in 0..m {
                a.swap(col * m + j, pivot * m + j);
            }
            b.swap(col, pivot);
        }
        for row in 0..m {
            if row == col {
                continue;
            }
            let factor = a[row * m + col] / a[col * m + col];
            for j in col..m {
                a[row * m + j] -= factor * a[col * m + j];
            }
            b[row] -= factor * b[col];
        }
    }
    let coeffs: Vec<f64> = (0..m).map(|i| b[i] / a[i * m + i]).collect();

    let mut residual = 0.0;
    for (pt, &w) in points.iter().zip(weights) {
        let x = (pt.p - p_c) * (pt.d as f64).powf(1.0 / nu);
        let mut fit = 0.0;
        let mut acc = 1.0;
        for &c in &coeffs {
            fit += c * acc;
            acc *= x;
        }
        residual += w * (pt.p_l - fit) * (pt.p_l - fit);
    }
    residual
}

/// Simultaneous (p_c, nu) optimization: coarse grid over the window, then
/// a small deterministic Nelder-Mead refinement. Input order does not
/// matter; points are sorted internally before any accumulation.
pub fn collapse_fit(
    points: &[CollapsePoint],
    cfg: &CollapseConfig,
) -> Result<CollapseFit, AnalysisError> {
    let mut pts: Vec<CollapsePoint> = points.to_vec();
    pts.sort_by(|a, b| {
        (a.p, a.d, a.p_l)
            .partial_cmp(&(b.p, b.d, b.p_l))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut distances: Vec<usize> = pts.iter().map(|p| p.d).collect();
    distances.sort_unstable();
    distances.dedup();
    if distances.len() < 2 || pts.len() < cfg.poly_degree + 2 {
        return Err(AnalysisError::InsufficientData);
    }

    let weights: Vec<f64> = if pts.iter().all(|p| p.stderr.is_some_and(|s| s > 0.0)) {
        pts.iter()
            .map(|p| 1.0 / (p.stderr.unwrap() * p.stderr.unwrap()))
            .collect()
    } else {
        vec![1.0; pts.len()]
    };

    let objective = |p_c: f64, nu: f64| -> f64 {
        if nu <= 0.05 {
            return f64::INFINITY;
        }
        collapse_residual(&pts, &weights, p_c, nu, cfg.poly_degree)
    };

    // coarse grid
    let mut best = (cfg.window.0, cfg.nu_range.0, f64::INFINITY);
    let mut p_c = cfg.window.0;
    while p_c <= cfg.window.1 + 1e-12 {
        let mut nu = cfg.nu_range.0;
        while nu <= cfg.nu_range.1 + 1e-12 {
            let r = objective(p_c, nu);
            if r < best.2 {
                best = (p_c, nu, r);
            }
            nu += cfg.nu_step;
        }
        p_c += cfg.p_c_step;
    }
    let grid_best = best;

    // Nelder-Mead refinement around the grid optimum
    let clamp = |p: f64, nu: f64| {
        (
            p.clamp(cfg.window.0, cfg.window.1),
            nu.clamp(0.1, 10.0),
        )
    };
    let mut simplex = [(best.0, best.1),
        clamp(best.0 + cfg.p_c_step, best.1),
        clamp(best.0, best.1 + cfg.nu_step)];
    let mut values: Vec<f64> = simplex.iter().map(|&(p, nu)| objective(p, nu)).collect();
    for _ in 0..cfg.refine_iters {
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let (b, m, w) = (order[0], order[1], order[2]);
        let centroid = (
            (simplex[b].0 + simplex[m].0) / 2.0,
            (simplex[b].1 + simplex[m].1) / 2.0,
        );
        let reflect = clamp(
            centroid.0 + (centroid.0 - simplex[w].0),
            centroid.1 + (centroid.1 - simplex[w].1),
        );
        let fr = objective(reflect.0, reflect.1);
        if fr < values[b] {
            let expand = clamp(
                centroid.0 + 2.0 * (centroid.0 - simplex[w].0),
                centroid.1 + 2.0 * (centroid.1 - simplex[w].1),
            );
            let fe = objective(expand.0, expand.1);
            if fe < fr {
                simplex[w] = expand;
                values[w] = fe;
            } else {
                simplex[w] = reflect;
                values[w] = fr;
            }
        } else if fr < values[m] {
            simplex[w] = reflect;
            values[w] = fr;
        } else {
            let contract = clamp(
                centroid.0 + 0.5 * (simplex[w].0 - centroid.0),
                centroid.1 + 0.5 * (simplex[w].1 - centroid.1),
            );
            let fc = objective(contract.0, contract.1);
            if fc < values[w] {
                simplex[w] = contract;
                values[w] = fc;
            } else {
                for i in 0..3 {
                    if i != b {
                        simplex[i] = clamp(
                            (simplex[i].0 + simplex[b].0) / 2.0,
                            (simplex[i].1 + simplex[b].1) / 2.0,
                        );
                        values[i] = objective(simplex[i].0, simplex[i].1);
                    }
                }
            }
        }
    }
    let best_idx = (0..3)
        .min_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap())
        .unwrap();
    let converged = values[best_idx].is_finite();
    let (p_c, nu, residual) = if converged && values[best_idx] <= grid_best.2 {
        (simplex[best_idx].0, simplex[best_idx].1, values[best_idx])
    } else {
        grid_best
    };

    Ok(CollapseFit {
        p_c,
        nu,
        poly_degree: cfg.poly_degree,
        residual,
        window: cfg.window,
        points_used: pts.len(),
        converged,
    })
}
