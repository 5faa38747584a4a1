//! Numerical verification of Paley-Wiener-type decay: the transform of a
//! compactly supported function, evaluated along vertical spectral lines,
//! grows with exponential type equal to the gauge of the support, and its
//! restriction to the real axis decays faster than any polynomial.
//!
//! Only the "maps into" direction is checked; surjectivity is not a
//! numerically testable statement.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dunkl1d::{transform_at, transform_constant, Multiplicity1D};
use crate::error::{DunklError, Result};
use crate::grid::{Grid1D, SampledFunction};
use crate::productnd::ProductMultiplicity;
use crate::quad::QuadratureRule;

/// Overflow guard for the vertical-line evaluation: `t * R` beyond this
/// leaves the range of the kernel evaluation.
const MAX_EXPONENT: f64 = 680.0;

/// Fitted decay data along one spectral direction.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DecayReport {
    /// Unit direction of the vertical line.
    pub direction: Vec<f64>,
    /// Imaginary parts sampled (possibly truncated by the overflow guard).
    pub t_samples: Vec<f64>,
    /// `log |h(i t v)|` per sample.
    pub log_moduli: Vec<f64>,
    /// Least-squares slope of the last half of the samples.
    pub fitted_rate: f64,
    /// The gauge of the support in the sampled direction (the expected
    /// exponential type).
    pub gauge_value: f64,
    /// Polynomial order checked on the real axis (0 when not part of this
    /// report).
    pub polynomial_order_checked: u32,
    /// Whether the sample list was truncated by the overflow guard.
    pub truncated: bool,
}

impl DecayReport {
    pub fn rate_ratio(&self) -> f64 {
        self.fitted_rate / self.gauge_value
    }
}

/// The smooth bump `exp(-1/(1-(x/R)^2))` on `|x| < R`, zero outside,
/// sampled on `grid` with declared support radius `R`.
pub fn bump_function(radius: f64, grid: Grid1D) -> Result<SampledFunction> {
    if !(radius > 0.0) {
        return Err(DunklError::Domain(format!(
            "bump radius must be positive, got {radius}"
        )));
    }
    if !grid.covers(-radius, radius) {
        return Err(DunklError::Coverage(
            "grid does not cover the bump support".into(),
        ));
    }
    SampledFunction::from_real_fn(
        grid,
        |x| {
            let u = x / radius;
            let s = 1.0 - u * u;
            if s > 0.0 {
                (-1.0 / s).exp()
            } else {
                0.0
            }
        },
        Some(radius),
    )
}

/// Default sample list for rate fitting: the window must reach
/// `t_max ~ 400 / R` before the finite-window bias of the least-squares
/// slope (the sqrt(t) subleading term of the bump) drops under 5%.
pub fn default_t_samples(support_radius: f64, count: usize) -> Vec<f64> {
    let t_max = 400.0 / support_radius.max(1e-6);
    let t_min = t_max / 20.0;
    (0..count)
        .map(|i| t_min + (t_max - t_min) * i as f64 / (count.max(2) - 1) as f64)
        .collect()
}

/// Default sample list for the 2D rectangle check: the window extends to
/// the largest `t` the per-coordinate overflow guard allows, which also
/// minimizes the finite-window bias of the fitted rate.
pub fn default_t_samples_2d(
    half_widths: [f64; 2],
    direction: &[f64],
    count: usize,
) -> Result<Vec<f64>> {
    if direction.len() != 2 {
        return Err(DunklError::Domain("direction must be 2-dimensional".into()));
    }
    let dn = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
    if dn == 0.0 {
        return Err(DunklError::Domain("direction must be nonzero".into()));
    }
    let reach = (direction[0].abs() / dn * half_widths[0])
        .max(direction[1].abs() / dn * half_widths[1]);
    let t_max = 0.9 * MAX_EXPONENT / reach;
    let t_min = t_max / 20.0;
    Ok((0..count)
        .map(|i| t_min + (t_max - t_min) * i as f64 / (count.max(2) - 1) as f64)
        .collect())
}

/// Least-squares slope over the last half of `(t, log|h|)`.
fn fit_rate(ts: &[f64], logs: &[f64]) -> f64 {
    let n = ts.len();
    let start = n / 2;
    let (ts, logs) = (&ts[start..], &logs[start..]);
    let m = ts.len() as f64;
    let mean_t: f64 = ts.iter().sum::<f64>() / m;
    let mean_l: f64 = logs.iter().sum::<f64>() / m;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, l) in ts.iter().zip(logs) {
        num += (t - mean_t) * (l - mean_l);
        den += (t - mean_t) * (t - mean_t);
    }
    num / den
}

/// Evaluate `h(xi0 + i t) = (1/c) Integral f(x) E(-i(xi0 + i t), x)
/// |x|^{2k} dx` for one `t`; the kernel argument is
/// `lambda = -i (xi0 + i t) = t - i xi0`.
fn vertical_value(
    k: Multiplicity1D,
    f: &SampledFunction,
    pieces: &[(f64, f64)],
    spline: &crate::grid::ComplexSpline,
    xi0: f64,
    t: f64,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    let lambda = Complex64::new(t, -xi0);
    let scale = f.max_abs();
    let v: Complex64 = crate::dunkl1d::integrate_pieces(
        k,
        pieces,
        xi0.abs(),
        scale,
        rule,
        &|x, w| {
            crate::dunkl1d::dunkl_kernel_complex(k, lambda, x).map(|e| spline.eval(x) * e * w)
        },
    )?;
    Ok(v / transform_constant(k))
}

/// Transform of a compactly supported sampled function along the vertical
/// line `xi0 + i t`, with the exponential rate fitted over the last half of
/// the samples. `t` values whose exponent would overflow are dropped (with
/// the `truncated` flag set).
pub fn transform_on_vertical_line(
    k: Multiplicity1D,
    f: &SampledFunction,
    xi0: f64,
    t_list: &[f64],
    rule: &QuadratureRule,
) -> Result<DecayReport> {
    let radius = f.declared_support_radius().ok_or_else(|| {
        DunklError::Domain("vertical-line decay needs a declared support radius".into())
    })?;
    let Some((lo, hi)) = f.effective_support() else {
        return Err(DunklError::Domain("function is identically zero".into()));
    };
    let reach = lo.abs().max(hi.abs());
    let mut ts: Vec<f64> = Vec::with_capacity(t_list.len());
    let mut truncated = false;
    for &t in t_list {
        if t.abs() * reach > MAX_EXPONENT {
            truncated = true;
        } else {
            ts.push(t);
        }
    }
    if ts.len() < 4 {
        return Err(DunklError::Domain(
            "too few usable t samples for a rate fit".into(),
        ));
    }
    let spline = f.spline();
    let pieces = crate::dunkl1d::knot_pieces(f.grid(), lo, hi);

    let eval = |&t: &f64| -> Result<f64> {
        let h = vertical_value(k, f, &pieces, &spline, xi0, t, rule)?;
        Ok(h.norm().ln())
    };
    #[cfg(feature = "parallel")]
    let logs: Result<Vec<f64>> = ts.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let logs: Result<Vec<f64>> = ts.iter().map(eval).collect();
    let logs = logs?;

    let fitted_rate = fit_rate(&ts, &logs);
    Ok(DecayReport {
        direction: vec![1.0],
        t_samples: ts,
        log_moduli: logs,
        fitted_rate,
        gauge_value: radius,
        polynomial_order_checked: 0,
        truncated,
    })
}

/// Geometric decay check in the `Z_2^2` product case: the transform of a
/// tensor bump supported in the rectangle `[-R1,R1] x [-R2,R2]`, evaluated
/// along `xi = i t v`, must grow with type `chi(v) = R1 |v1| + R2 |v2|`
/// (the dual gauge of the rectangle). The tensor structure reduces the 2D
/// spectral integral to a product of one-dimensional factors.
pub fn gauge_decay_check_2d(
    pk: &ProductMultiplicity,
    half_widths: [f64; 2],
    direction: &[f64],
    t_list: &[f64],
    rule: &QuadratureRule,
) -> Result<DecayReport> {
    if pk.dim() != 2 {
        return Err(DunklError::Unsupported(
            "the geometric decay check is implemented for N = 2".into(),
        ));
    }
    if direction.len() != 2 {
        return Err(DunklError::Domain("direction must be 2-dimensional".into()));
    }
    let dn = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
    if dn == 0.0 {
        return Err(DunklError::Domain("direction must be nonzero".into()));
    }
    let v = [direction[0] / dn, direction[1] / dn];
    let gauge = half_widths[0] * v[0].abs() + half_widths[1] * v[1].abs();

    // Per-coordinate bumps, splines and integration pieces.
    let mut coords = Vec::with_capacity(2);
    for j in 0..2 {
        let r = half_widths[j];
        if !(r > 0.0) {
            return Err(DunklError::Domain("rectangle half-widths must be positive".into()));
        }
        let grid = Grid1D::symmetric(1.05 * r, 2049)?;
        let f = bump_function(r, grid)?;
        let (lo, hi) = f.effective_support().expect("bump is not zero");
        let pieces = crate::dunkl1d::knot_pieces(f.grid(), lo, hi);
        coords.push((f, pieces));
    }

    // The factors are evaluated separately and only their logs are summed,
    // so the overflow guard applies per coordinate.
    let reaches: Vec<f64> = coords
        .iter()
        .map(|(f, _)| {
            let (lo, hi) = f.effective_support().expect("bump is not zero");
            lo.abs().max(hi.abs())
        })
        .collect();
    let mut ts: Vec<f64> = Vec::new();
    let mut truncated = false;
    for &t in t_list {
        let worst = ((t * v[0]).abs() * reaches[0]).max((t * v[1]).abs() * reaches[1]);
        if worst > MAX_EXPONENT {
            truncated = true;
        } else {
            ts.push(t);
        }
    }
    if ts.len() < 4 {
        return Err(DunklError::Domain(
            "too few usable t samples for a rate fit".into(),
        ));
    }

    let splines: Vec<crate::grid::ComplexSpline> =
        coords.iter().map(|(f, _)| f.spline()).collect();
    let eval = |&t: &f64| -> Result<f64> {
        let mut log_abs = 0.0;
        for j in 0..2 {
            let h = vertical_value(
                pk.coordinate(j),
                &coords[j].0,
                &coords[j].1,
                &splines[j],
                0.0,
                t * v[j],
                rule,
            )?;
            log_abs += h.norm().ln();
        }
        Ok(log_abs)
    };
    #[cfg(feature = "parallel")]
    let logs: Result<Vec<f64>> = ts.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let logs: Result<Vec<f64>> = ts.iter().map(eval).collect();
    let logs = logs?;

    let fitted_rate = fit_rate(&ts, &logs);
    Ok(DecayReport {
        direction: v.to_vec(),
        t_samples: ts,
        log_moduli: logs,
        fitted_rate,
        gauge_value: gauge,
        polynomial_order_checked: 0,
        truncated,
    })
}

/// Boundedness data for `(1+|xi|)^M |h(xi)|` on a real-axis window.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PolynomialDecayCheck {
    pub order: u32,
    pub xi_max: f64,
    pub max_value: f64,
    pub argmax: f64,
    pub tail_max: f64,
    /// The weighted transform is judged bounded when its maximum sits well
    /// inside the window and the trailing quarter has decayed.
    pub bounded: bool,
}

/// Evaluate `(1+xi)^M |Df(xi)|` on `[0, xi_max]` and report whether the
/// polynomial-weighted transform is bounded (the maximum is attained in the
/// interior and the tail has decayed).
pub fn polynomial_decay_check(
    k: Multiplicity1D,
    f: &SampledFunction,
    order: u32,
    xi_max: f64,
    samples: usize,
    rule: &QuadratureRule,
) -> Result<PolynomialDecayCheck> {
    if samples < 16 {
        return Err(DunklError::Domain("need at least 16 samples".into()));
    }
    let xis: Vec<f64> = (0..samples)
        .map(|i| xi_max * i as f64 / (samples - 1) as f64)
        .collect();
    let values = transform_at(k, f, &xis, rule)?;
    let weighted: Vec<f64> = xis
        .iter()
        .zip(&values)
        .map(|(xi, h)| (1.0 + xi).powi(order as i32) * h.norm())
        .collect();
    let (argmax_idx, max_value) = weighted
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, v)| (i, *v))
        .unwrap();
    let tail_start = samples - samples / 4;
    let tail_max = weighted[tail_start..].iter().fold(0.0_f64, |m, &v| m.max(v));
    let argmax = xis[argmax_idx];
    let bounded = argmax <= 0.75 * xi_max && tail_max <= 0.2 * max_value;
    Ok(PolynomialDecayCheck {
        order,
        xi_max,
        max_value,
        argmax,
        tail_max,
        bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mult(k: f64) -> Multiplicity1D {
        Multiplicity1D::new(k).unwrap()
    }

    #[test]
    fn bump_values() {
        let grid = Grid1D::symmetric(1.5, 301).unwrap();
        let f = bump_function(1.0, grid).unwrap();
        let mid = f.values()[150];
        assert!((mid.re - (-1.0_f64).exp()).abs() < 1e-15);
        // zero at and beyond the boundary
        let x_idx = |x: f64| ((x + 1.5) / grid.step()).round() as usize;
        assert_eq!(f.values()[x_idx(1.0)].re, 0.0);
        assert_eq!(f.values()[x_idx(1.3)].re, 0.0);
        assert!(f.declared_support_radius() == Some(1.0));
        // positive total integral
        let total: f64 = f.values().iter().map(|v| v.re).sum::<f64>() * grid.step();
        assert!(total > 0.0 && total.is_finite());
    }

    #[test]
    fn vertical_rate_classical_oracle() {
        // k = 0 is the classical case: the transform of a bump with support
        // radius R has exponential type exactly R. The fitted rate must land
        // in [0.95, 1.0] x R.
        let grid = Grid1D::symmetric(1.05, 2049).unwrap();
        let f = bump_function(1.0, grid).unwrap();
        let ts = default_t_samples(1.0, 40);
        let rep =
            transform_on_vertical_line(mult(0.0), &f, 0.0, &ts, &QuadratureRule::default())
                .unwrap();
        let ratio = rep.rate_ratio();
        assert!(
            (0.95..=1.0).contains(&ratio),
            "classical rate ratio {ratio}"
        );
    }

    #[test]
    fn vertical_rate_tracks_support_radius() {
        // Fitted rates for nested supports are ordered and near each R.
        let rule = QuadratureRule::default();
        let k = mult(1.0);
        let mut prev = 0.0;
        for &r in &[0.5, 1.0, 2.0] {
            let grid = Grid1D::symmetric(1.05 * r, 2049).unwrap();
            let f = bump_function(r, grid).unwrap();
            let ts = default_t_samples(r, 40);
            let rep = transform_on_vertical_line(k, &f, 0.0, &ts, &rule).unwrap();
            assert!(
                (0.95..=1.0).contains(&rep.rate_ratio()),
                "R={r}: ratio {}",
                rep.rate_ratio()
            );
            assert!(rep.fitted_rate > prev, "rates must grow with R");
            prev = rep.fitted_rate;
        }
    }

    #[test]
    fn rate_monotone_in_window() {
        // Fitted rates over increasing windows approach the gauge from below.
        let grid = Grid1D::symmetric(1.05, 2049).unwrap();
        let f = bump_function(1.0, grid).unwrap();
        let rule = QuadratureRule::default();
        let k = mult(0.5);
        let mut prev = 0.0;
        for t_max in [60.0, 150.0, 400.0] {
            let ts: Vec<f64> = (0..32).map(|i| 5.0 + (t_max - 5.0) * i as f64 / 31.0).collect();
            let rep = transform_on_vertical_line(k, &f, 0.0, &ts, &rule).unwrap();
            assert!(
                rep.fitted_rate >= prev - 1e-6,
                "window rates not monotone: {} then {}",
                prev,
                rep.fitted_rate
            );
            assert!(rep.fitted_rate <= rep.gauge_value * 1.02);
            prev = rep.fitted_rate;
        }
    }

    #[test]
    fn overflow_guard_truncates() {
        let grid = Grid1D::symmetric(2.1, 2049).unwrap();
        let f = bump_function(2.0, grid).unwrap();
        let ts: Vec<f64> = (1..40).map(|i| i as f64 * 20.0).collect(); // up to 780
        let rep =
            transform_on_vertical_line(mult(1.0), &f, 0.0, &ts, &QuadratureRule::default())
                .unwrap();
        assert!(rep.truncated);
        assert!(rep.t_samples.len() < 39);
    }

    #[test]
    fn gauge_decay_2d_axis_matches_1d() {
        // Along a coordinate axis the tensor factorization reduces to the
        // 1D case; the rates must agree within 1%.
        let pk = ProductMultiplicity::new(&[1.0, 1.0]).unwrap();
        let rule = QuadratureRule::default();
        let ts = default_t_samples(1.0, 32);
        let rep2 = gauge_decay_check_2d(&pk, [1.0, 2.0], &[1.0, 0.0], &ts, &rule).unwrap();
        assert!((rep2.gauge_value - 1.0).abs() < 1e-12);
        let grid = Grid1D::symmetric(1.05, 2049).unwrap();
        let f = bump_function(1.0, grid).unwrap();
        let rep1 = transform_on_vertical_line(mult(1.0), &f, 0.0, &ts, &rule).unwrap();
        let rel = ((rep2.fitted_rate - rep1.fitted_rate) / rep1.fitted_rate).abs();
        assert!(rel < 0.01, "axis rate differs from 1D by {rel}");
    }

    #[test]
    fn gauge_decay_2d_diagonal() {
        let pk = ProductMultiplicity::new(&[1.0, 1.0]).unwrap();
        let rule = QuadratureRule::default();
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let gauge = (1.0 + 2.0) * inv;
        let ts = default_t_samples_2d([1.0, 2.0], &[inv, inv], 32).unwrap();
        let rep = gauge_decay_check_2d(&pk, [1.0, 2.0], &[inv, inv], &ts, &rule).unwrap();
        assert!((rep.gauge_value - gauge).abs() < 1e-12);
        let ratio = rep.rate_ratio();
        assert!((0.95..=1.0).contains(&ratio), "diagonal ratio {ratio}");
    }

    #[test]
    fn gauge_matches_rootgeom_orbit_maximum() {
        // The rectangle is the orbit hull of (R1, R2) under Z2^2; its dual
        // gauge max_{g} <g.L, v> must equal R1|v1| + R2|v2|.
        let rs = crate::rootgeom::RootSystemModel::named("A1xA1").unwrap();
        let lambda = [1.0, 2.0];
        for v in [[1.0, 0.0], [0.0, 1.0], [0.6, -0.8], [-0.3, 0.95]] {
            let orbit_max = rs
                .group()
                .iter()
                .map(|g| crate::rootgeom::dot(&g.apply(&lambda), &v))
                .fold(f64::MIN, f64::max);
            let expected = 1.0 * v[0].abs() + 2.0 * v[1].abs();
            assert!((orbit_max - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn polynomial_weighted_transform_is_bounded() {
        let grid = Grid1D::symmetric(1.05, 2049).unwrap();
        let f = bump_function(1.0, grid).unwrap();
        let check = polynomial_decay_check(
            mult(0.5),
            &f,
            3,
            200.0,
            600,
            &QuadratureRule::default(),
        )
        .unwrap();
        assert!(check.bounded, "{check:?}");
        assert!(check.max_value.is_finite());
    }
}
