//! Interactive browser demo: three operations exposed to a static page
//! through `wasm-bindgen`, each returning a JSON document ready to plot.
//!
//! The functions are plain Rust and run natively too; the test suite
//! exercises them on the host. Build the wasm artifact with
//! `wasm-pack build --target web crates/dunkl-demo` (or
//! `cargo build --target wasm32-unknown-unknown` plus `wasm-bindgen`).

use wasm_bindgen::prelude::*;

use dunkl_core::dunkl1d::Multiplicity1D;
use dunkl_core::quad::QuadratureRule;
use dunkl_core::rootgeom::{support_shell_contains, RootSystemModel};
use dunkl_core::translate1d::{
    gamma_density, sharp_constant, total_variation_direct, total_variation_theta,
};

fn err_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

/// Scan of the signed translation kernel `gamma(x, y, z)` and its weighted
/// density, with the support interval, the total variation, and the sharp
/// bound.
#[wasm_bindgen]
pub fn kernel_scan(k: f64, x: f64, y: f64, n: usize) -> String {
    match kernel_scan_impl(k, x, y, n) {
        Ok(s) => s,
        Err(e) => err_json(&e.to_string()),
    }
}

fn kernel_scan_impl(k: f64, x: f64, y: f64, n: usize) -> dunkl_core::Result<String> {
    let km = Multiplicity1D::new(k)?;
    if x == 0.0 || y == 0.0 {
        return Ok(err_json("x and y must be nonzero (point-mass case)"));
    }
    let n = n.clamp(64, 4096);
    let hi = x.abs() + y.abs();
    let lo = (x.abs() - y.abs()).abs();
    let span = 1.1 * hi;
    let mut zs = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    let mut weighted = Vec::with_capacity(n);
    for i in 0..n {
        let z = -span + 2.0 * span * i as f64 / (n - 1) as f64;
        let g = gamma_density(km, x, y, z).unwrap_or(f64::NAN);
        zs.push(z);
        density.push(g);
        weighted.push(g * z.abs().powf(2.0 * k));
    }
    let rule = QuadratureRule::tanh_sinh_default();
    let tv = total_variation_direct(km, x, y, &rule)?;
    let ak = sharp_constant(k)?;
    Ok(serde_json::json!({
        "schema_version": "1",
        "k": k, "x": x, "y": y,
        "support": {"lo": lo, "hi": hi},
        "z": zs,
        "gamma": density,
        "weighted_gamma": weighted,
        "total_variation": tv,
        "sharp_constant": ak,
        "bound_ok": tv <= ak + 1e-9,
    })
    .to_string())
}

/// The sharp constant curve `k -> A_k` with the `sqrt(2)` asymptote and a
/// quadrature cross-check at a probe multiplicity.
#[wasm_bindgen]
pub fn sharp_curve(k_max: f64, n: usize, k_probe: f64) -> String {
    match sharp_curve_impl(k_max, n, k_probe) {
        Ok(s) => s,
        Err(e) => err_json(&e.to_string()),
    }
}

fn sharp_curve_impl(k_max: f64, n: usize, k_probe: f64) -> dunkl_core::Result<String> {
    let n = n.clamp(8, 2048);
    let k_max = if k_max.is_finite() && k_max > 0.1 { k_max } else { 10.0 };
    let mut ks = Vec::with_capacity(n);
    let mut aks = Vec::with_capacity(n);
    for i in 0..n {
        let k = k_max * i as f64 / (n - 1) as f64;
        ks.push(k);
        aks.push(sharp_constant(k)?);
    }
    let probe = if k_probe > 0.0 {
        let rule = QuadratureRule::tanh_sinh_default();
        let quad = total_variation_theta(Multiplicity1D::new(k_probe)?, 1.0, &rule)?;
        serde_json::json!({
            "k": k_probe,
            "closed_form": sharp_constant(k_probe)?,
            "quadrature": quad,
        })
    } else {
        serde_json::Value::Null
    };
    Ok(serde_json::json!({
        "schema_version": "1",
        "k": ks,
        "a_k": aks,
        "asymptote": std::f64::consts::SQRT_2,
        "probe": probe,
    })
    .to_string())
}

/// 2D product-case support map: the exact tensor density
/// `gamma(x1,y1,z1) gamma(x2,y2,z2)` on a grid, the refined support
/// rectangles, and the spherical shell radii.
#[wasm_bindgen]
pub fn support_map(k1: f64, k2: f64, x1: f64, x2: f64, y1: f64, y2: f64, n: usize) -> String {
    match support_map_impl(k1, k2, x1, x2, y1, y2, n) {
        Ok(s) => s,
        Err(e) => err_json(&e.to_string()),
    }
}

fn support_map_impl(
    k1: f64,
    k2: f64,
    x1: f64,
    x2: f64,
    y1: f64,
    y2: f64,
    n: usize,
) -> dunkl_core::Result<String> {
    let ka = Multiplicity1D::new(k1)?;
    let kb = Multiplicity1D::new(k2)?;
    if x1 == 0.0 || x2 == 0.0 || y1 == 0.0 || y2 == 0.0 {
        return Ok(err_json("all coordinates of x and y must be nonzero"));
    }
    let n = n.clamp(16, 256);
    let x = [x1, x2];
    let y = [y1, y2];
    let hi = [x1.abs() + y1.abs(), x2.abs() + y2.abs()];
    let lo = [(x1.abs() - y1.abs()).abs(), (x2.abs() - y2.abs()).abs()];
    let span = 1.1 * hi[0].max(hi[1]);
    let axis: Vec<f64> = (0..n)
        .map(|i| -span + 2.0 * span * i as f64 / (n - 1) as f64)
        .collect();
    // tensor density evaluated cheaply along the two axes
    let line = |k: Multiplicity1D, xj: f64, yj: f64| -> Vec<f64> {
        axis.iter()
            .map(|&z| gamma_density(k, xj, yj, z).unwrap_or(f64::NAN))
            .collect()
    };
    let g1 = line(ka, x[0], y[0]);
    let g2 = line(kb, x[1], y[1]);
    let mut values = Vec::with_capacity(n * n);
    for v1 in &g1 {
        for v2 in &g2 {
            values.push(v1 * v2);
        }
    }
    // predicate agreement samples on the grid corners of the region
    let rs = RootSystemModel::named("A1xA1")?;
    let probe_points = [
        [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])],
        [hi[0] + 0.3, 0.5 * (lo[1] + hi[1])],
    ];
    let predicate_samples: Vec<serde_json::Value> = probe_points
        .iter()
        .map(|p| {
            serde_json::json!({
                "z": p,
                "region": rs.support_region_contains(&x, &y, p).unwrap_or(false),
                "shell": support_shell_contains(&x, &y, p),
            })
        })
        .collect();
    let shell = {
        let nx = (x1 * x1 + x2 * x2).sqrt();
        let ny = (y1 * y1 + y2 * y2).sqrt();
        serde_json::json!({"r_min": (nx - ny).abs(), "r_max": nx + ny})
    };
    Ok(serde_json::json!({
        "schema_version": "1",
        "k": [k1, k2],
        "x": x, "y": y,
        "axis": axis,
        "values": values,
        "region": {"lo": lo, "hi": hi},
        "shell": shell,
        "predicate_samples": predicate_samples,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_scan_reports_consistent_data() {
        let doc: serde_json::Value =
            serde_json::from_str(&kernel_scan(1.0, 1.0, 1.0, 256)).unwrap();
        assert_eq!(doc["schema_version"], "1");
        assert!((doc["sharp_constant"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-10);
        let tv = doc["total_variation"].as_f64().unwrap();
        assert!((tv - 4.0 / 3.0).abs() < 1e-7, "TV at x=y: {tv}");
        assert_eq!(doc["bound_ok"], true);
        let z = doc["z"].as_array().unwrap();
        let g = doc["gamma"].as_array().unwrap();
        assert_eq!(z.len(), 256);
        assert_eq!(g.len(), 256);
        // density vanishes outside the support
        let hi = doc["support"]["hi"].as_f64().unwrap();
        for (zv, gv) in z.iter().zip(g) {
            if zv.as_f64().unwrap().abs() > hi + 1e-9 {
                assert_eq!(gv.as_f64().unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn sharp_curve_is_monotone_with_probe() {
        let doc: serde_json::Value =
            serde_json::from_str(&sharp_curve(10.0, 64, 1.0)).unwrap();
        let aks = doc["a_k"].as_array().unwrap();
        let mut prev = -1.0;
        for a in aks {
            let a = a.as_f64().unwrap();
            assert!(a > prev && a < std::f64::consts::SQRT_2);
            prev = a;
        }
        let probe = &doc["probe"];
        let diff = (probe["closed_form"].as_f64().unwrap()
            - probe["quadrature"].as_f64().unwrap())
        .abs();
        assert!(diff < 1e-7);
    }

    #[test]
    fn support_map_matches_rectangles() {
        let doc: serde_json::Value =
            serde_json::from_str(&support_map(1.0, 1.0, 1.0, 2.0, 2.0, 1.0, 64)).unwrap();
        assert_eq!(doc["region"]["lo"][0].as_f64().unwrap(), 1.0);
        assert_eq!(doc["region"]["hi"][0].as_f64().unwrap(), 3.0);
        let axis: Vec<f64> = doc["axis"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .collect();
        let values = doc["values"].as_array().unwrap();
        let n = axis.len();
        for (i, &z1) in axis.iter().enumerate() {
            for (j, &z2) in axis.iter().enumerate() {
                let v = values[i * n + j].as_f64().unwrap();
                let inside = (1.0..=3.0).contains(&z1.abs()) && (1.0..=3.0).contains(&z2.abs());
                if !inside && v.is_finite() {
                    assert_eq!(v, 0.0, "density leaked outside at ({z1}, {z2})");
                }
            }
        }
        assert_eq!(doc["predicate_samples"][0]["region"], true);
        assert_eq!(doc["predicate_samples"][1]["region"], false);
        assert_eq!(doc["predicate_samples"][0]["shell"], true);
    }

    #[test]
    fn errors_become_json() {
        let doc: serde_json::Value = serde_json::from_str(&kernel_scan(-1.0, 1.0, 1.0, 64)).unwrap();
        assert!(doc["error"].is_string());
        let doc: serde_json::Value = serde_json::from_str(&kernel_scan(1.0, 0.0, 1.0, 64)).unwrap();
        assert!(doc["error"].is_string());
    }
}
