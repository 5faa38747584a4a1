//! Finite reflection-group geometry: group generation from a root system,
//! dominant representatives, the longest element, dominance order, orbit
//! hulls `C^L = co(G.L)`, polar sets `C_L`, admissibility, gauges, and the
//! support-region predicates for generalized translations.
//!
//! Supported systems are the rank <= 2 cases appearing in the translation
//! and Paley-Wiener checks (`A1`, `A1xA1`, `A2`, `B2`, `G2`) together with
//! the orthogonal products `Z2^N`; arbitrary systems can be supplied as an
//! explicit JSON root list.

use crate::error::{DunklError, Result};

const GROUP_BOUND: usize = 10_000;
const MATRIX_TOL: f64 = 1e-9;
const GEOM_TOL: f64 = 1e-9;

// ---- small dense linear algebra on Vec<f64> ----

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[f64], t: f64) -> Vec<f64> {
    a.iter().map(|x| x * t).collect()
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, v)).collect()
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    out
}

fn mat_close(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).abs() <= tol))
}

fn identity_matrix(n: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

/// Reflection `I - 2 a a^T / <a,a>` through the hyperplane orthogonal to `a`.
fn reflection_matrix(alpha: &[f64]) -> Vec<Vec<f64>> {
    let n = alpha.len();
    let nn = dot(alpha, alpha);
    let mut m = identity_matrix(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] -= 2.0 * alpha[i] * alpha[j] / nn;
        }
    }
    m
}

/// An orthogonal map of the generated group, with the generating-reflection
/// word kept for provenance.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Vec<Vec<f64>>,
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        mat_vec(&self.matrix, v)
    }

    pub fn is_identity(&self) -> bool {
        mat_close(&self.matrix, &identity_matrix(self.matrix.len()), MATRIX_TOL)
    }
}

/// A reduced root system with its positive subsystem, simple roots,
/// multiplicities, and the generated reflection group. Immutable after
/// construction; every query is read-only.
#[derive(Clone, Debug)]
pub struct RootSystemModel {
    dim: usize,
    roots: Vec<Vec<f64>>,
    positive_roots: Vec<Vec<f64>>,
    simple_roots: Vec<Vec<f64>>,
    multiplicities: Vec<f64>,
    crystallographic: bool,
    group: Vec<GroupElement>,
    longest_idx: usize,
}

impl RootSystemModel {
    /// Construct a named system: `A1`, `A1xA1`, `Z2^n`, `A2`, `B2`, `G2`.
    /// Multiplicities default to 1 on every root.
    pub fn named(name: &str) -> Result<Self> {
        let seeds: Vec<Vec<f64>> = match name {
            "A1" | "a1" => vec![vec![1.0]],
            "A1xA1" | "a1xa1" => vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            "A2" | "a2" => vec![vec![1.0, 0.0], vec![-0.5, 0.75_f64.sqrt()]],
            "B2" | "b2" => vec![vec![1.0, -1.0], vec![0.0, 1.0]],
            "G2" | "g2" => vec![vec![1.0, 0.0], vec![-1.5, 0.75_f64.sqrt()]],
            other => {
                if let Some(n) = other
                    .strip_prefix("Z2^")
                    .or_else(|| other.strip_prefix("z2^"))
                {
                    let n: usize = n
                        .parse()
                        .map_err(|_| DunklError::Parse(format!("bad Z2 power in '{other}'")))?;
                    if n == 0 || n > 8 {
                        return Err(DunklError::Domain(
                            "Z2^n supported for 1 <= n <= 8".into(),
                        ));
                    }
                    (0..n)
                        .map(|i| {
                            let mut e = vec![0.0; n];
                            e[i] = 1.0;
                            e
                        })
                        .collect()
                } else {
                    return Err(DunklError::Parse(format!(
                        "unknown root system '{other}' (expected A1, A1xA1, Z2^n, A2, B2, G2)"
                    )));
                }
            }
        };
        let group = generate_group_from(&seeds)?;
        let mut roots: Vec<Vec<f64>> = Vec::new();
        for g in &group {
            for s in &seeds {
                let r = g.apply(s);
                if !roots.iter().any(|q| vec_close(q, &r, MATRIX_TOL)) {
                    roots.push(r);
                }
            }
        }
        Self::assemble(seeds[0].len(), roots, None, group)
    }

    /// Construct from an explicit JSON description
    /// `{"roots": [[...], ...], "k": [...]}`. The root list must be closed
    /// under negation and under all root reflections; `k` is one label per
    /// root and must be constant on group orbits.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let roots_v = value
            .get("roots")
            .and_then(|v| v.as_array())
            .ok_or_else(|| DunklError::Parse("missing 'roots' array".into()))?;
        let mut roots: Vec<Vec<f64>> = Vec::with_capacity(roots_v.len());
        for rv in roots_v {
            let row = rv
                .as_array()
                .ok_or_else(|| DunklError::Parse("each root must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_f64()
                        .ok_or_else(|| DunklError::Parse("root coordinates must be numbers".into()))
                })
                .collect::<Result<Vec<f64>>>()?;
            roots.push(row);
        }
        if roots.is_empty() {
            return Err(DunklError::Parse("empty root list".into()));
        }
        let dim = roots[0].len();
        if roots.iter().any(|r| r.len() != dim) || dim == 0 {
            return Err(DunklError::Parse("inconsistent root dimensions".into()));
        }
        if roots.iter().any(|r| norm(r) < GEOM_TOL) {
            return Err(DunklError::Domain("roots must be nonzero".into()));
        }
        // reduced: no root may be a multiple of another except its negative
        for (i, a) in roots.iter().enumerate() {
            for b in roots.iter().skip(i + 1) {
                let cos = dot(a, b) / (norm(a) * norm(b));
                if (cos.abs() - 1.0).abs() < GEOM_TOL && cos > 0.0 {
                    return Err(DunklError::Domain(
                        "root system is not reduced (parallel roots)".into(),
                    ));
                }
            }
        }
        for r in &roots {
            let neg = scale(r, -1.0);
            if !roots.iter().any(|q| vec_close(q, &neg, MATRIX_TOL)) {
                return Err(DunklError::Domain(
                    "root set is not closed under negation".into(),
                ));
            }
        }
        let multiplicities = match value.get("k") {
            None => None,
            Some(kv) => {
                let ks = kv
                    .as_array()
                    .ok_or_else(|| DunklError::Parse("'k' must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_f64()
                            .ok_or_else(|| DunklError::Parse("'k' entries must be numbers".into()))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                if ks.len() != roots.len() {
                    return Err(DunklError::Parse(format!(
                        "'k' has {} entries for {} roots",
                        ks.len(),
                        roots.len()
                    )));
                }
                if ks.iter().any(|&k| k < 0.0) {
                    return Err(DunklError::Domain("multiplicities must be >= 0".into()));
                }
                Some(ks)
            }
        };
        let group = generate_group_from(&roots)?;
        // closure of the root set under every reflection
        for g in &group {
            for r in &roots {
                let img = g.apply(r);
                if !roots.iter().any(|q| vec_close(q, &img, 1e-7)) {
                    return Err(DunklError::Domain(
                        "root set is not closed under its reflections".into(),
                    ));
                }
            }
        }
        Self::assemble(dim, roots, multiplicities, group)
    }

    fn assemble(
        dim: usize,
        roots: Vec<Vec<f64>>,
        multiplicities: Option<Vec<f64>>,
        group: Vec<GroupElement>,
    ) -> Result<Self> {
        // Positive subsystem through a generic linear functional with
        // irrational coordinate ratios (1, 1/pi, 1/pi^2, ...).
        let phi: Vec<f64> = (0..dim)
            .map(|i| std::f64::consts::PI.powi(-(i as i32)))
            .collect();
        for r in &roots {
            if dot(&phi, r).abs() < GEOM_TOL * norm(r) {
                return Err(DunklError::Domain(
                    "generic functional degenerates on a root; rescale the input".into(),
                ));
            }
        }
        let positive_roots: Vec<Vec<f64>> = roots
            .iter()
            .filter(|r| dot(&phi, r) > 0.0)
            .cloned()
            .collect();
        let simple_roots = derive_simple_roots(dim, &positive_roots)?;
        let crystallographic = is_crystallographic(&roots);
        let multiplicities = match multiplicities {
            Some(ks) => {
                // G-invariance: k(g.alpha) = k(alpha)
                for g in &group {
                    for (i, r) in roots.iter().enumerate() {
                        let img = g.apply(r);
                        let j = roots
                            .iter()
                            .position(|q| vec_close(q, &img, 1e-7))
                            .expect("closure validated above");
                        if (ks[i] - ks[j]).abs() > 1e-12 {
                            return Err(DunklError::Domain(
                                "multiplicities are not constant on group orbits".into(),
                            ));
                        }
                    }
                }
                ks
            }
            None => vec![1.0; roots.len()],
        };
        let longest_idx = find_longest(&group, &positive_roots, &simple_roots)?;
        Ok(Self {
            dim,
            roots,
            positive_roots,
            simple_roots,
            multiplicities,
            crystallographic,
            group,
            longest_idx,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Vec<f64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<f64>] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Vec<f64>] {
        &self.simple_roots
    }

    pub fn multiplicities(&self) -> &[f64] {
        &self.multiplicities
    }

    pub fn is_crystallographic(&self) -> bool {
        self.crystallographic
    }

    /// The generated reflection group.
    pub fn group(&self) -> &[GroupElement] {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    /// The longest element `g0`, the unique element mapping the positive
    /// chamber onto its negative.
    pub fn longest_element(&self) -> &GroupElement {
        &self.group[self.longest_idx]
    }

    /// Orbit `G.v`, deduplicated.
    pub fn orbit(&self, v: &[f64]) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for g in &self.group {
            let w = g.apply(v);
            if !out.iter().any(|q| vec_close(q, &w, MATRIX_TOL)) {
                out.push(w);
            }
        }
        out
    }

    /// The dominant representative `x_+` of the orbit of `x`, together with
    /// a group element mapping `x` to it.
    pub fn dominant_rep(&self, x: &[f64]) -> (Vec<f64>, GroupElement) {
        self.check_dim(x);
        let mut cur = x.to_vec();
        let mut m = identity_matrix(self.dim);
        let scale_tol = 1e-12 * (1.0 + norm(x));
        let cap = self.group.len() * self.positive_roots.len() + 8;
        for _ in 0..cap {
            let mut moved = false;
            for alpha in &self.simple_roots {
                if dot(alpha, &cur) < -scale_tol {
                    let refl = reflection_matrix(alpha);
                    cur = mat_vec(&refl, &cur);
                    m = mat_mul(&refl, &m);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        // match the accumulated product to a group element
        let idx = self
            .group
            .iter()
            .position(|g| mat_close(&g.matrix, &m, 1e-7))
            .expect("reflection walk stays inside the group");
        (cur, self.group[idx].clone())
    }

    /// Dominance order: `a <= b` iff `b - a` lies in the closed cone spanned
    /// by the positive roots, decided in the simple-root basis (least
    /// squares when the simple roots do not span).
    pub fn dominance_leq(&self, a: &[f64], b: &[f64]) -> bool {
        self.check_dim(a);
        self.check_dim(b);
        let d = sub(b, a);
        let m = self.simple_roots.len();
        // normal equations S^T S c = S^T d
        let mut gram = vec![vec![0.0; m]; m];
        let mut rhs = vec![0.0; m];
        for i in 0..m {
            for j in 0..m {
                gram[i][j] = dot(&self.simple_roots[i], &self.simple_roots[j]);
            }
            rhs[i] = dot(&self.simple_roots[i], &d);
        }
        let Some(c) = solve_dense(&mut gram, &mut rhs) else {
            return false;
        };
        let tol = GEOM_TOL * (1.0 + norm(&d));
        if c.iter().any(|&ci| ci < -tol) {
            return false;
        }
        // feasibility: the least-squares residual must vanish
        let mut recon = vec![0.0; self.dim];
        for (ci, s) in c.iter().zip(&self.simple_roots) {
            recon = add(&recon, &scale(s, *ci));
        }
        norm(&sub(&recon, &d)) <= tol
    }

    /// Membership of `p` in the orbit hull `C^L = co(G.L)`, decided through
    /// the chamber identity: `p in C^L` iff `p_+ <= L_+` in dominance order.
    pub fn orbit_hull_contains(&self, lambda: &[f64], p: &[f64]) -> bool {
        let (lp, _) = self.dominant_rep(lambda);
        let (pp, _) = self.dominant_rep(p);
        self.dominance_leq(&pp, &lp)
    }

    /// Membership of `p` in the polar set
    /// `C_L = { p : <p, g.L> <= 1 for all g }`, by the orbit maximum.
    pub fn polar_contains(&self, lambda: &[f64], p: &[f64]) -> bool {
        self.check_dim(lambda);
        self.check_dim(p);
        self.group
            .iter()
            .all(|g| dot(p, &g.apply(lambda)) <= 1.0 + GEOM_TOL)
    }

    /// The chamber form of polar membership: `<L_+, p_+> <= 1`. Agrees with
    /// [`Self::polar_contains`]; kept as an independent route.
    pub fn polar_contains_chamber(&self, lambda: &[f64], p: &[f64]) -> bool {
        let (lp, _) = self.dominant_rep(lambda);
        let (pp, _) = self.dominant_rep(p);
        dot(&lp, &pp) <= 1.0 + GEOM_TOL
    }

    /// Admissibility of a spectral parameter: the orbit of `L` spans the
    /// whole space, equivalently `C_L` is bounded and `C^L` is a
    /// neighborhood of the origin.
    pub fn is_admissible(&self, lambda: &[f64]) -> bool {
        self.check_dim(lambda);
        let orbit = self.orbit(lambda);
        matrix_rank(&orbit, GEOM_TOL * (1.0 + norm(lambda))) == self.dim
    }

    /// The gauge `chi_L(xi) = min { r >= 0 : xi in r C^L }`, computed by
    /// bisection on hull membership to absolute accuracy 1e-10. Equals the
    /// support function `max_{x in C_L} <x, xi>`.
    pub fn gauge(&self, lambda: &[f64], xi: &[f64]) -> Result<f64> {
        if !self.is_admissible(lambda) {
            return Err(DunklError::Domain(
                "gauge requires an admissible spectral parameter".into(),
            ));
        }
        if norm(xi) == 0.0 {
            return Ok(0.0);
        }
        let (lp, _) = self.dominant_rep(lambda);
        let (xp, _) = self.dominant_rep(xi);
        let contains = |r: f64| self.dominance_leq(&xp, &scale(&lp, r));
        let mut hi = 1.0;
        let mut doublings = 0;
        while !contains(hi) {
            hi *= 2.0;
            doublings += 1;
            if doublings > 80 {
                return Err(DunklError::Domain(
                    "gauge bracket failed; parameter is numerically inadmissible".into(),
                ));
            }
        }
        let mut lo = 0.0;
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if contains(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Refined support region for translations (crystallographic case):
    /// `z_+ <= x_+ + y_+`, `z_+ >= y_+ + g0.x_+`, and `z_+ >= x_+ + g0.y_+`.
    pub fn support_region_contains(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<bool> {
        if !self.crystallographic {
            return Err(DunklError::Unsupported(
                "the refined support region requires a crystallographic group".into(),
            ));
        }
        let (xp, _) = self.dominant_rep(x);
        let (yp, _) = self.dominant_rep(y);
        let (zp, _) = self.dominant_rep(z);
        let g0 = self.longest_element();
        let upper = self.dominance_leq(&zp, &add(&xp, &yp));
        let lower1 = self.dominance_leq(&add(&yp, &g0.apply(&xp)), &zp);
        let lower2 = self.dominance_leq(&add(&xp, &g0.apply(&yp)), &zp);
        Ok(upper && lower1 && lower2)
    }

    fn check_dim(&self, v: &[f64]) {
        assert_eq!(
            v.len(),
            self.dim,
            "vector dimension {} does not match the root system dimension {}",
            v.len(),
            self.dim
        );
    }
}

/// Spherical-shell support predicate: `||x|-|y|| <= |z| <= |x|+|y|`.
pub fn support_shell_contains(x: &[f64], y: &[f64], z: &[f64]) -> bool {
    let (nx, ny, nz) = (norm(x), norm(y), norm(z));
    let tol = GEOM_TOL * (1.0 + nx + ny);
    nz >= (nx - ny).abs() - tol && nz <= nx + ny + tol
}

fn vec_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// BFS closure of the reflections in the given vectors; errors out if the
/// closure exceeds the safety bound (malformed input).
fn generate_group_from(generators: &[Vec<f64>]) -> Result<Vec<GroupElement>> {
    let dim = generators[0].len();
    let gens: Vec<Vec<Vec<f64>>> = generators.iter().map(|a| reflection_matrix(a)).collect();
    let mut elements = vec![GroupElement {
        matrix: identity_matrix(dim),
        word: vec![],
    }];
    let mut frontier = vec![0usize];
    while let Some(&idx) = frontier.first() {
        frontier.remove(0);
        for (gi, g) in gens.iter().enumerate() {
            let m = mat_mul(g, &elements[idx].matrix);
            if !elements.iter().any(|e| mat_close(&e.matrix, &m, MATRIX_TOL)) {
                let mut word = elements[idx].word.clone();
                word.push(gi);
                elements.push(GroupElement { matrix: m, word });
                frontier.push(elements.len() - 1);
                if elements.len() > GROUP_BOUND {
                    return Err(DunklError::Domain(format!(
                        "reflection closure exceeded {GROUP_BOUND} elements; input is not a finite root system"
                    )));
                }
            }
        }
    }
    Ok(elements)
}

/// Simple roots: extremal generators of the cone over the positive roots.
/// Handled cases: rank 1, all-orthogonal (products of A1), and planar
/// systems where the extremes are the angular boundary rays.
fn derive_simple_roots(dim: usize, positive: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if positive.is_empty() {
        return Err(DunklError::Domain("no positive roots".into()));
    }
    if positive.len() == 1 {
        return Ok(positive.to_vec());
    }
    let all_orthogonal = positive.iter().enumerate().all(|(i, a)| {
        positive
            .iter()
            .skip(i + 1)
            .all(|b| dot(a, b).abs() < GEOM_TOL * norm(a) * norm(b))
    });
    if all_orthogonal {
        return Ok(positive.to_vec());
    }
    if dim == 2 {
        let mut sorted: Vec<&Vec<f64>> = positive.iter().collect();
        sorted.sort_by(|a, b| {
            let ta = a[1].atan2(a[0]);
            let tb = b[1].atan2(b[0]);
            ta.partial_cmp(&tb).unwrap()
        });
        return Ok(vec![sorted[0].clone(), sorted[sorted.len() - 1].clone()]);
    }
    Err(DunklError::Unsupported(
        "simple-root derivation implemented for rank <= 2 and orthogonal products".into(),
    ))
}

/// Crystallographic test: all Cartan numbers `2 <a,b> / <a,a>` are integers.
fn is_crystallographic(roots: &[Vec<f64>]) -> bool {
    roots.iter().all(|a| {
        roots.iter().all(|b| {
            let cartan = 2.0 * dot(a, b) / dot(a, a);
            (cartan - cartan.round()).abs() < 1e-7
        })
    })
}

/// The longest element sends a regular dominant vector to an antidominant
/// one; the sum of the positive roots is regular dominant.
fn find_longest(
    group: &[GroupElement],
    positive: &[Vec<f64>],
    simple: &[Vec<f64>],
) -> Result<usize> {
    let dim = positive[0].len();
    let mut v = vec![0.0; dim];
    for r in positive {
        v = add(&v, r);
    }
    for (i, g) in group.iter().enumerate() {
        let w = g.apply(&v);
        if simple.iter().all(|a| dot(a, &w) <= GEOM_TOL * (1.0 + norm(&v))) {
            return Ok(i);
        }
    }
    Err(DunklError::Domain(
        "no longest element found; root data is inconsistent".into(),
    ))
}

/// Row rank of a set of vectors by Gaussian elimination with partial
/// pivoting.
fn matrix_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some((pivot_row, _)) = m
            .iter()
            .enumerate()
            .skip(rank)
            .map(|(i, r)| (i, r[col].abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        else {
            break;
        };
        if m[pivot_row][col].abs() <= tol {
            continue;
        }
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        for i in (rank + 1)..m.len() {
            let f = m[i][col] / pivot;
            for j in col..ncols {
                m[i][j] -= f * m[rank][j];
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solve a small symmetric positive system in place; `None` when singular.
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|i| (i, a[i][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if pivot_abs < 1e-13 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        let pivot = a[col][col];
        for i in (col + 1)..n {
            let f = a[i][col] / pivot;
            for j in col..n {
                a[i][j] -= f * a[col][j];
            }
            b[i] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in (i + 1)..n {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    Some(x)
}
