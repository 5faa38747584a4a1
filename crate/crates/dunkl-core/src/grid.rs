//! Uniform grids, sampled functions, and the cubic-spline interpolation that
//! turns sampled data back into integrands.
//!
//! A [`SampledFunction`] serializes to CSV with the fixed header `x,re,im`
//! (one row per node) and to an equivalent JSON array of records. Floats are
//! printed with Rust's shortest round-trip formatting, so emitted files
//! re-parse to bit-identical values.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{DunklError, Result};

/// Uniform one-dimensional grid specification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    min: f64,
    max: f64,
    count: usize,
}

impl Grid1D {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(DunklError::Domain(format!(
                "grid requires min < max, got [{min}, {max}]"
            )));
        }
        if count < 2 {
            return Err(DunklError::Domain(format!(
                "grid requires at least 2 nodes, got {count}"
            )));
        }
        Ok(Self { min, max, count })
    }

    /// Symmetric grid on `[-extent, extent]`.
    pub fn symmetric(extent: f64, count: usize) -> Result<Self> {
        Self::new(-extent, extent, count)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        self.min + self.step() * i as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.node(i)).collect()
    }

    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.min <= lo + 1e-12 && self.max >= hi - 1e-12
    }
}

/// A function sampled on a uniform grid, with an optional declared support
/// radius (values beyond the radius must vanish to 1e-12).
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    grid: Grid1D,
    values: Vec<Complex64>,
    declared_support_radius: Option<f64>,
}

impl SampledFunction {
    pub fn new(
        grid: Grid1D,
        values: Vec<Complex64>,
        declared_support_radius: Option<f64>,
    ) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(DunklError::Domain(format!(
                "value count {} does not match grid count {}",
                values.len(),
                grid.count()
            )));
        }
        if let Some(radius) = declared_support_radius {
            if !(radius > 0.0) {
                return Err(DunklError::Domain(format!(
                    "declared support radius must be positive, got {radius}"
                )));
            }
            for (i, v) in values.iter().enumerate() {
                if grid.node(i).abs() > radius && v.norm() >= 1e-12 {
                    return Err(DunklError::Domain(format!(
                        "declared support radius {radius} violated at x = {} (|value| = {})",
                        grid.node(i),
                        v.norm()
                    )));
                }
            }
        }
        Ok(Self {
            grid,
            values,
            declared_support_radius,
        })
    }

    pub fn from_fn(
        grid: Grid1D,
        f: impl Fn(f64) -> Complex64,
        declared_support_radius: Option<f64>,
    ) -> Result<Self> {
        let values = (0..grid.count()).map(|i| f(grid.node(i))).collect();
        Self::new(grid, values, declared_support_radius)
    }

    pub fn from_real_fn(
        grid: Grid1D,
        f: impl Fn(f64) -> f64,
        declared_support_radius: Option<f64>,
    ) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0), declared_support_radius)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn declared_support_radius(&self) -> Option<f64> {
        self.declared_support_radius
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Range of nodes where the samples are nonnegligible, intersected with
    /// the declared support when present. Returns `None` for all-zero data.
    pub fn effective_support(&self) -> Option<(f64, f64)> {
        let peak = self.max_abs();
        if peak == 0.0 {
            return None;
        }
        let cut = 1e-14 * peak;
        let mut lo = None;
        let mut hi = None;
        for i in 0..self.grid.count() {
            if self.values[i].norm() > cut {
                let x = self.grid.node(i);
                if lo.is_none() {
                    lo = Some(x);
                }
                hi = Some(x);
            }
        }
        let (mut lo, mut hi) = (lo?, hi?);
        // One extra step of margin keeps the spline's closing flank.
        lo = (lo - self.grid.step()).max(self.grid.min());
        hi = (hi + self.grid.step()).min(self.grid.max());
        if let Some(r) = self.declared_support_radius {
            lo = lo.max(-r);
            hi = hi.min(r);
        }
        (lo < hi).then_some((lo, hi))
    }

    /// Cubic-spline interpolant of the samples (zero outside the grid).
    pub fn spline(&self) -> ComplexSpline {
        ComplexSpline::new(self)
    }

    /// Write CSV with header `x,re,im`.
    pub fn to_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "x,re,im")?;
        for i in 0..self.grid.count() {
            let v = self.values[i];
            writeln!(out, "{},{},{}", self.grid.node(i), v.re, v.im)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.to_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Parse CSV produced by [`Self::to_csv`]. The grid is reconstructed from
    /// the x column, which must be uniform.
    pub fn from_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| DunklError::Parse("empty CSV".into()))?
            .map_err(|e| DunklError::Parse(e.to_string()))?;
        if header.trim() != "x,re,im" {
            return Err(DunklError::Parse(format!(
                "expected header 'x,re,im', got '{header}'"
            )));
        }
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for line in lines {
            let line = line.map_err(|e| DunklError::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let mut next = |name: &str| -> Result<f64> {
                parts
                    .next()
                    .ok_or_else(|| DunklError::Parse(format!("missing {name} column")))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| DunklError::Parse(format!("bad {name} value: {e}")))
            };
            xs.push(next("x")?);
            let re = next("re")?;
            let im = next("im")?;
            values.push(Complex64::new(re, im));
        }
        if xs.len() < 2 {
            return Err(DunklError::Parse("CSV must contain at least 2 rows".into()));
        }
        let step = xs[1] - xs[0];
        for w in xs.windows(2) {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * step.abs().max(1.0) {
                return Err(DunklError::Parse("x column is not uniform".into()));
            }
        }
        let grid = Grid1D::new(xs[0], *xs.last().unwrap(), xs.len())?;
        Self::new(grid, values, None)
    }

    /// JSON array-of-records equivalent of the CSV format.
    pub fn to_json_records(&self) -> serde_json::Value {
        let records: Vec<serde_json::Value> = (0..self.grid.count())
            .map(|i| {
                serde_json::json!({
                    "x": self.grid.node(i),
                    "re": self.values[i].re,
                    "im": self.values[i].im,
                })
            })
            .collect();
        serde_json::Value::Array(records)
    }

    pub fn from_json_records(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| DunklError::Parse("expected a JSON array of records".into()))?;
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for rec in arr {
            let get = |key: &str| -> Result<f64> {
                rec.get(key)
                    .and_then(serde_json::Value::as_f64)
                    .ok_or_else(|| DunklError::Parse(format!("record missing numeric '{key}'")))
            };
            xs.push(get("x")?);
            values.push(Complex64::new(get("re")?, get("im")?));
        }
        if xs.len() < 2 {
            return Err(DunklError::Parse("need at least 2 records".into()));
        }
        let grid = Grid1D::new(xs[0], *xs.last().unwrap(), xs.len())?;
        Self::new(grid, values, None)
    }
}

/// Not-a-knot cubic spline on a uniform grid. Evaluates to 0 outside the
/// grid (sampled functions here decay below noise at the grid edges).
#[derive(Clone, Debug)]
pub struct CubicSpline {
    min: f64,
    step: f64,
    y: Vec<f64>,
    // Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn from_values(grid: &Grid1D, y: Vec<f64>) -> Self {
        let n = y.len();
        assert!(n >= 2);
        let h = grid.step();
        let m = if n == 2 {
            vec![0.0; 2]
        } else if n == 3 {
            // Single interior equation with not-a-knot <=> single parabola.
            let m1 = (y[0] - 2.0 * y[1] + y[2]) / (h * h);
            vec![m1, m1, m1]
        } else {
            solve_not_a_knot(&y, h)
        };
        Self {
            min: grid.min(),
            step: h,
            y,
            m,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.y.len();
        let span = self.step * (n - 1) as f64;
        let t = x - self.min;
        if t < 0.0 || t > span {
            return 0.0;
        }
        let mut i = (t / self.step) as usize;
        if i >= n - 1 {
            i = n - 2;
        }
        let a = t - self.step * i as f64;
        let b = self.step - a;
        let h = self.step;
        // Standard cubic form in terms of knot values and second derivatives.
        (self.m[i] * b * b * b + self.m[i + 1] * a * a * a) / (6.0 * h)
            + (self.y[i] / h - self.m[i] * h / 6.0) * b
            + (self.y[i + 1] / h - self.m[i + 1] * h / 6.0) * a
    }
}

/// Not-a-knot second-derivative solve (uniform spacing): continuity of the
/// third derivative at the first and last interior knots gives
/// `m0 = 2 m1 - m2` and `m_{n-1} = 2 m_{n-2} - m_{n-3}`.
fn solve_not_a_knot(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let k = n - 2; // unknowns m1..m_{n-2}
    let mut diag = vec![4.0; k];
    let mut lower = vec![1.0; k];
    let mut upper = vec![1.0; k];
    let mut rhs: Vec<f64> = (1..=k)
        .map(|i| 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h))
        .collect();
    // First row: m0 = 2 m1 - m2 folded into the i=1 equation.
    diag[0] = 6.0;
    upper[0] = 0.0;
    // Last row: m_{n-1} = 2 m_{n-2} - m_{n-3} folded into the i=n-2 equation.
    diag[k - 1] = 6.0;
    lower[k - 1] = 0.0;

    // Thomas algorithm.
    for i in 1..k {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    let mut m_inner = vec![0.0; k];
    m_inner[k - 1] = rhs[k - 1] / diag[k - 1];
    for i in (0..k - 1).rev() {
        m_inner[i] = (rhs[i] - upper[i] * m_inner[i + 1]) / diag[i];
    }

    let mut m = vec![0.0; n];
    m[1..=k].copy_from_slice(&m_inner);
    m[0] = 2.0 * m[1] - m[2];
    m[n - 1] = 2.0 * m[n - 2] - m[n - 3];
    m
}

/// Complex-valued spline: independent real and imaginary splines.
#[derive(Clone, Debug)]
pub struct ComplexSpline {
    re: CubicSpline,
    im: CubicSpline,
    all_real: bool,
}

impl ComplexSpline {
    fn new(f: &SampledFunction) -> Self {
        let re: Vec<f64> = f.values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = f.values.iter().map(|v| v.im).collect();
        let all_real = im.iter().all(|&v| v == 0.0);
        Self {
            re: CubicSpline::from_values(&f.grid, re),
            im: CubicSpline::from_values(&f.grid, im),
            all_real,
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if self.all_real {
            Complex64::new(self.re.eval(x), 0.0)
        } else {
            Complex64::new(self.re.eval(x), self.im.eval(x))
        }
    }

    pub fn eval_re(&self, x: f64) -> f64 {
        self.re.eval(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_basics() {
        let g = Grid1D::new(-2.0, 2.0, 5).unwrap();
        assert_eq!(g.step(), 1.0);
        assert_eq!(g.nodes(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(Grid1D::new(1.0, 1.0, 4).is_err());
        assert!(Grid1D::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn support_radius_enforced() {
        let g = Grid1D::symmetric(2.0, 5).unwrap();
        let bad = SampledFunction::from_real_fn(g, |_| 1.0, Some(1.0));
        assert!(bad.is_err());
        let ok = SampledFunction::from_real_fn(
            g,
            |x| if x.abs() <= 1.0 { 1.0 } else { 0.0 },
            Some(1.0),
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let g = Grid1D::new(-1.0, 1.0, 9).unwrap();
        let f = SampledFunction::from_fn(
            g,
            |x| Complex64::new((x * 1.3).sin(), x / 3.0),
            None,
        )
        .unwrap();
        let csv = f.to_csv_string();
        let parsed = SampledFunction::from_csv(csv.as_bytes()).unwrap();
        assert_eq!(f.values(), parsed.values());
        assert_eq!(parsed.to_csv_string(), csv);
    }

    #[test]
    fn json_round_trip() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let f = SampledFunction::from_fn(g, |x| Complex64::new(x, -x), None).unwrap();
        let json = f.to_json_records();
        let back = SampledFunction::from_json_records(&json).unwrap();
        assert_eq!(f.values(), back.values());
    }

    #[test]
    fn spline_reproduces_cubics_exactly() {
        let g = Grid1D::new(-1.0, 2.0, 16).unwrap();
        let f = |x: f64| 0.5 * x * x * x - x * x + 3.0 * x - 0.25;
        let s = CubicSpline::from_values(&g, g.nodes().iter().map(|&x| f(x)).collect());
        for i in 0..100 {
            let x = -1.0 + 3.0 * (i as f64) / 99.0;
            assert_relative_eq!(s.eval(x), f(x), epsilon = 1e-12, max_relative = 1e-12);
        }
    }

    #[test]
    fn spline_accuracy_on_gaussian() {
        let g = Grid1D::symmetric(8.0, 1601).unwrap();
        let f = SampledFunction::from_real_fn(g, |x| (-0.5 * x * x).exp(), None).unwrap();
        let s = f.spline();
        for i in 0..500 {
            let x = -7.9 + 15.8 * (i as f64) / 499.0;
            let err = (s.eval_re(x) - (-0.5 * x * x).exp()).abs();
            assert!(err < 1e-9, "spline error {err} at {x}");
        }
        // zero outside
        assert_eq!(s.eval(9.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn effective_support_respects_declared_radius() {
        let g = Grid1D::symmetric(4.0, 401).unwrap();
        let f = SampledFunction::from_real_fn(
            g,
            |x| if x.abs() < 1.0 { (1.0 - x * x).exp() - 1.0 } else { 0.0 },
            Some(1.0),
        )
        .unwrap();
        let (lo, hi) = f.effective_support().unwrap();
        assert!(lo >= -1.0 - 1e-12 && hi <= 1.0 + 1e-12);
        assert!(lo < -0.9 && hi > 0.9);
    }
}
