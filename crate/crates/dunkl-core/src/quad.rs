//! Quadrature machinery shared by every integral operation: composite
//! Gauss-Legendre panels with doubling, and tanh-sinh (double exponential)
//! rules for integrands with algebraic endpoint singularities.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{DunklError, Result};

/// Integration scheme selector.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadScheme {
    /// Composite Gauss-Legendre: `nodes_per_panel` nodes, panel count doubled
    /// until two successive refinements agree within tolerance.
    GaussLegendrePanels {
        nodes_per_panel: usize,
        max_panels: usize,
    },
    /// Tanh-sinh rule, refined by halving the step up to `max_level` times.
    TanhSinh { max_level: u32 },
}

/// Nodes/weights scheme plus the truncation and tolerance metadata used by
/// every integral operation.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub scheme: QuadScheme,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl QuadratureRule {
    pub fn new(scheme: QuadScheme, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(DunklError::Domain(format!(
                "quadrature tolerances must be positive, got abs {abs_tol}, rel {rel_tol}"
            )));
        }
        match scheme {
            QuadScheme::GaussLegendrePanels {
                nodes_per_panel,
                max_panels,
            } if nodes_per_panel == 0 || max_panels == 0 => Err(DunklError::Domain(
                "panel and node counts must be at least 1".into(),
            )),
            _ => Ok(Self {
                scheme,
                abs_tol,
                rel_tol,
            }),
        }
    }

    /// Default for smooth integrands: 64-node Gauss-Legendre panels.
    pub fn gauss_default() -> Self {
        Self {
            scheme: QuadScheme::GaussLegendrePanels {
                nodes_per_panel: 64,
                max_panels: 4096,
            },
            abs_tol: 1e-12,
            rel_tol: 1e-9,
        }
    }

    /// Default for integrands with endpoint singularities.
    pub fn tanh_sinh_default() -> Self {
        Self {
            scheme: QuadScheme::TanhSinh { max_level: 10 },
            abs_tol: 1e-12,
            rel_tol: 1e-9,
        }
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::gauss_default()
    }
}

/// Values a quadrature can accumulate (f64, Complex64).
pub trait Accumulable:
    Copy + Add<Output = Self> + std::ops::Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Accumulable for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Accumulable for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], cached per node count.
pub fn gauss_legendre_table(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_gauss_legendre(n)))
        .clone()
}

/// Newton iteration on the Legendre polynomial; standard and accurate to
/// machine precision for the node counts used here.
fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed-panel composite Gauss-Legendre pass.
pub fn gauss_panels<T, F>(f: &F, a: f64, b: f64, panels: usize, nodes_per_panel: usize) -> T
where
    T: Accumulable,
    F: Fn(f64) -> T,
{
    let table = gauss_legendre_table(nodes_per_panel);
    let (nodes, weights) = (&table.0, &table.1);
    let h = (b - a) / panels as f64;
    let mut acc = T::zero();
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in nodes.iter().zip(weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
    }
    acc
}

/// Adaptive integral of `f` over `[a, b]` under a rule. Panel counts double
/// (Gauss) or levels deepen (tanh-sinh) until two refinements agree.
pub fn integrate<T, F>(rule: &QuadratureRule, f: F, a: f64, b: f64) -> Result<T>
where
    T: Accumulable,
    F: Fn(f64) -> T,
{
    if !(a < b) {
        if a == b {
            return Ok(T::zero());
        }
        return Err(DunklError::Domain(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    match rule.scheme {
        QuadScheme::GaussLegendrePanels {
            nodes_per_panel,
            max_panels,
        } => {
            let mut panels = 1;
            let mut prev = gauss_panels(&f, a, b, panels, nodes_per_panel);
            while panels < max_panels {
                panels *= 2;
                let cur = gauss_panels(&f, a, b, panels, nodes_per_panel);
                let diff = (cur - prev).magnitude();
                if diff <= rule.abs_tol.max(rule.rel_tol * cur.magnitude()) {
                    return Ok(cur);
                }
                prev = cur;
            }
            Err(DunklError::QuadratureNonConvergence(format!(
                "Gauss-Legendre refinement exhausted {max_panels} panels on [{a}, {b}]"
            )))
        }
        QuadScheme::TanhSinh { max_level } => tanh_sinh(
            |x, _, _| f(x),
            a,
            b,
            rule.abs_tol,
            rule.rel_tol,
            max_level,
        ),
    }
}

/// Tanh-sinh quadrature. The integrand receives `(x, x - a, b - x)`; the
/// endpoint distances are computed without cancellation, so algebraic
/// singular factors like `(x-a)^{k-1}` can be evaluated exactly.
pub fn tanh_sinh<T, F>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_level: u32,
) -> Result<T>
where
    T: Accumulable,
    F: Fn(f64, f64, f64) -> T,
{
    if !(a < b) {
        if a == b {
            return Ok(T::zero());
        }
        return Err(DunklError::Domain(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    const T_MAX: f64 = 5.0;
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> T {
        // x_hat = tanh(u), u = (pi/2) sinh t; distances to the endpoints are
        // 1 -+ x_hat, formed from exponentials to avoid cancellation.
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let (da_hat, db_hat) = if u >= 0.0 {
            let e = (-2.0 * u).exp();
            (2.0 / (1.0 + e), 2.0 * e / (1.0 + e))
        } else {
            let e = (2.0 * u).exp();
            (2.0 * e / (1.0 + e), 2.0 / (1.0 + e))
        };
        let da = half * da_hat;
        let db = half * db_hat;
        let x = if da_hat <= db_hat { a + da } else { b - db };
        let sech = 1.0 / u.cosh();
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() * sech * sech;
        if w == 0.0 || da == 0.0 || db == 0.0 {
            return T::zero();
        }
        f(x, da, db) * w
    };

    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut m = 1;
    loop {
        let t = m as f64 * h;
        if t > T_MAX {
            break;
        }
        sum = sum + eval(t) + eval(-t);
        m += 1;
    }
    let mut prev = sum * (h * half);

    for _ in 1..=max_level {
        h *= 0.5;
        // Only the new midpoints at odd multiples of h.
        let mut m = 1;
        loop {
            let t = m as f64 * h;
            if t > T_MAX {
                break;
            }
            sum = sum + eval(t) + eval(-t);
            m += 2;
        }
        let cur = sum * (h * half);
        let diff = (cur - prev).magnitude();
        if diff <= abs_tol.max(rel_tol * cur.magnitude()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(DunklError::QuadratureNonConvergence(format!(
        "tanh-sinh refinement exhausted {max_level} levels on [{a}, {b}]"
    )))
}
