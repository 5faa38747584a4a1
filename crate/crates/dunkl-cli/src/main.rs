//! `dunkl` — command line for the Dunkl analysis toolkit.
//!
//! Every subcommand is deterministic given its flags; sampling commands take
//! an explicit `--seed`. Exit codes: 0 all internal cross-checks pass,
//! 2 cross-check mismatch, 3 bound violation, 4 support/region
//! inconsistency, 5 decay-rate inconsistency, 1 usage or numerical failure.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dunkl_core::dunkl1d::{
    dunkl_inverse, dunkl_transform, gaussian_sample, Multiplicity1D,
};
use dunkl_core::grid::{Grid1D, SampledFunction};
use dunkl_core::productnd::{
    gamma_eps_probe, GammaEpsProbe, MollifierProfile, MollifierSpec, ProductMultiplicity,
};
use dunkl_core::pwverify::{
    bump_function, default_t_samples, default_t_samples_2d, gauge_decay_check_2d,
    polynomial_decay_check, transform_on_vertical_line,
};
use dunkl_core::quad::QuadratureRule;
use dunkl_core::rootgeom::{dot, support_shell_contains, RootSystemModel};
use dunkl_core::translate1d::{
    kernel_sample, sharp_constant, total_variation_direct, total_variation_theta, translate,
};

const SCHEMA_VERSION: &str = "1";
const EXIT_CROSSCHECK: u8 = 2;
const EXIT_BOUND: u8 = 3;
const EXIT_REGION: u8 = 4;
const EXIT_RATE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "dunkl",
    version,
    about = "One-dimensional Dunkl analysis: sharp constants, signed kernels, transforms, \
             translations, support probes, and Paley-Wiener decay checks",
    after_help = "Exit codes: 0 ok, 2 cross-check mismatch, 3 bound violation, \
                  4 support/region inconsistency, 5 decay-rate inconsistency."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"], default_value = "json")]
    format: String,
    /// Output path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct TolOpts {
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
}

impl TolOpts {
    fn gauss(&self) -> QuadratureRule {
        QuadratureRule::gauss_default().with_tolerances(self.abs_tol, self.rel_tol)
    }

    fn tanh_sinh(&self) -> QuadratureRule {
        QuadratureRule::tanh_sinh_default().with_tolerances(self.abs_tol, self.rel_tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sharp constant A_k: closed form, quadrature cross-check, sqrt(2) gap.
    Ak {
        /// Multiplicity k >= 0.
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        /// Sweep instead: KMIN KMAX N.
        #[arg(long, num_args = 3, value_names = ["KMIN", "KMAX", "N"])]
        sweep: Option<Vec<f64>>,
        #[command(flatten)]
        out: OutputOpts,
        #[command(flatten)]
        tol: TolOpts,
    },
    /// Total variation of the translation measure, by both integral routes.
    Tv {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[command(flatten)]
        out: OutputOpts,
        #[command(flatten)]
        tol: TolOpts,
    },
    /// Scan the signed kernel gamma(x, y, z): CSV `z,gamma,weighted_gamma`.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        /// Scan range (defaults to the closed support interval).
        #[arg(long, allow_hyphen_values = true)]
        z_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        z_max: Option<f64>,
        #[arg(long, default_value_t = 2001)]
        count: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generalized translation tau_x f on a y grid: CSV `x,re,im`.
    Translate {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Input samples as CSV `x,re,im` (alternative to --function).
        #[arg(long, conflicts_with = "function")]
        input: Option<PathBuf>,
        /// Built-in test function: `gaussian` or `bump:R`.
        #[arg(long)]
        function: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        y_max: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolOpts,
    },
    /// Dunkl transform (or inverse) of a sampled function: CSV `x,re,im`.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, conflicts_with = "function")]
        input: Option<PathBuf>,
        /// Built-in test function: `gaussian` or `bump:R`.
        #[arg(long)]
        function: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = -12.0)]
        xi_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 12.0)]
        xi_max: f64,
        #[arg(long, default_value_t = 1201)]
        count: usize,
        /// Apply the inverse transform instead.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolOpts,
    },
    /// Mollified support probe on Z2^2: CSV heatmap plus JSON region summary.
    Support2d {
        /// Root system (must be the rank-2 product, `A1xA1`/`Z2^2`).
        #[arg(long, default_value = "A1xA1")]
        root: String,
        /// Comma-separated multiplicities, e.g. `1,1`.
        #[arg(long, default_value = "1,1")]
        k: String,
        /// Base point x, e.g. `1,2`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Base point y, e.g. `2,1`.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Nodes per axis of the probe grid.
        #[arg(long, default_value_t = 121)]
        grid: usize,
        /// Mollifier profile: `tensor` (fast) or `radial`.
        #[arg(long, value_parser = ["tensor", "radial"], default_value = "tensor")]
        mollifier: String,
        /// Spectral node budget per axis for the radial profile.
        #[arg(long, default_value_t = 256)]
        xi_budget: usize,
        /// Heatmap CSV path (stdout when omitted).
        #[arg(long)]
        heatmap: Option<PathBuf>,
        /// Summary JSON path (stderr when omitted, so both can stream).
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        tol: TolOpts,
    },
    /// Root-system report: group order, longest element, admissibility,
    /// gauges, orbit hull vertices, membership cross-checks.
    Rootinfo {
        /// Named system: A1, A1xA1, Z2^n, A2, B2, G2.
        #[arg(long, conflicts_with = "roots_json")]
        root: Option<String>,
        /// Explicit JSON root list `{"roots": [[...]], "k": [...]}`.
        #[arg(long)]
        roots_json: Option<PathBuf>,
        /// Spectral parameter, e.g. `1,0`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Seed for the membership cross-check samples.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of membership cross-check samples.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Paley-Wiener decay report along a vertical spectral line.
    Pw {
        /// 1D mode: multiplicity.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<f64>,
        /// 1D mode: bump support radius.
        #[arg(long)]
        r: Option<f64>,
        /// 2D mode: comma-separated multiplicities, e.g. `1,1`.
        #[arg(long)]
        k2: Option<String>,
        /// 2D mode: rectangle half-widths `R1,R2`.
        #[arg(long)]
        rect: Option<String>,
        /// 2D mode: direction `v1,v2` (normalized internally).
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        #[arg(long, default_value_t = 40)]
        samples: usize,
        /// Override the top of the t window.
        #[arg(long)]
        t_max: Option<f64>,
        /// Also check (1+xi)^M |h(xi)| boundedness on the real axis (1D).
        #[arg(long)]
        poly_order: Option<u32>,
        #[arg(long, default_value_t = 200.0)]
        poly_max: f64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn parse_vec2(s: &str, name: &str) -> anyhow::Result<[f64; 2]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("{name} must be two comma-separated numbers, got '{s}'"))?;
    if parts.len() != 2 {
        bail!("{name} must have exactly 2 components, got {}", parts.len());
    }
    Ok([parts[0], parts[1]])
}

fn parse_vecn(s: &str, name: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .with_context(|| format!("bad component in {name}: '{p}'"))
        })
        .collect()
}

fn write_to(path: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            f.write_all(content.as_bytes())?;
        }
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
        }
    }
    Ok(())
}

fn load_function(
    input: &Option<PathBuf>,
    function: &Option<String>,
    default_extent: f64,
    default_count: usize,
) -> anyhow::Result<SampledFunction> {
    if let Some(path) = input {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        return Ok(SampledFunction::from_csv(BufReader::new(file))?);
    }
    let spec = function.as_deref().unwrap_or("gaussian");
    if spec == "gaussian" {
        let grid = Grid1D::symmetric(default_extent, default_count)?;
        return Ok(gaussian_sample(grid));
    }
    if let Some(r) = spec.strip_prefix("bump:") {
        let r: f64 = r.parse().context("bump radius must be a number")?;
        let grid = Grid1D::symmetric(1.05 * r, default_count)?;
        return Ok(bump_function(r, grid)?);
    }
    bail!("unknown --function '{spec}' (expected 'gaussian' or 'bump:R')");
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Ak { k, sweep, out, tol } => cmd_ak(k, sweep, out, tol),
        Command::Tv { k, x, y, out, tol } => cmd_tv(k, x, y, out, tol),
        Command::Kernel {
            k,
            x,
            y,
            z_min,
            z_max,
            count,
            output,
        } => cmd_kernel(k, x, y, z_min, z_max, count, output),
        Command::Translate {
            k,
            x,
            input,
            function,
            y_min,
            y_max,
            count,
            output,
            tol,
        } => cmd_translate(k, x, input, function, y_min, y_max, count, output, tol),
        Command::Transform {
            k,
            input,
            function,
            xi_min,
            xi_max,
            count,
            inverse,
            output,
            tol,
        } => cmd_transform(k, input, function, xi_min, xi_max, count, inverse, output, tol),
        Command::Support2d {
            root,
            k,
            x,
            y,
            eps,
            grid,
            mollifier,
            xi_budget,
            heatmap,
            summary,
            tol,
        } => cmd_support2d(root, k, x, y, eps, grid, mollifier, xi_budget, heatmap, summary, tol),
        Command::Rootinfo {
            root,
            roots_json,
            lambda,
            seed,
            samples,
            output,
        } => cmd_rootinfo(root, roots_json, lambda, seed, samples, output),
        Command::Pw {
            k,
            r,
            k2,
            rect,
            direction,
            samples,
            t_max,
            poly_order,
            poly_max,
            output,
            tol,
        } => cmd_pw(k, r, k2, rect, direction, samples, t_max, poly_order, poly_max, output, tol),
    }
}

fn cmd_ak(
    k: f64,
    sweep: Option<Vec<f64>>,
    out: OutputOpts,
    tol: TolOpts,
) -> anyhow::Result<ExitCode> {
    let rule = tol.tanh_sinh();
    let sqrt2 = std::f64::consts::SQRT_2;
    let one = |k: f64| -> anyhow::Result<(f64, f64, f64)> {
        let closed = sharp_constant(k)?;
        // classical limit: the measures are point masses and TV = 1 exactly
        let cross = if k > 0.0 {
            total_variation_theta(Multiplicity1D::new(k)?, 1.0, &rule)?
        } else {
            1.0
        };
        let rel = ((closed - cross) / closed).abs();
        Ok((closed, cross, rel))
    };

    let ks: Vec<f64> = match &sweep {
        Some(s) => {
            let n = s[2] as usize;
            if n < 2 || s[1] <= s[0] {
                bail!("--sweep needs KMIN < KMAX and N >= 2");
            }
            (0..n).map(|i| s[0] + (s[1] - s[0]) * i as f64 / (n - 1) as f64).collect()
        }
        None => vec![k],
    };
    let mut rows = Vec::with_capacity(ks.len());
    let mut worst = 0.0_f64;
    for &kk in &ks {
        let (closed, cross, rel) = one(kk)?;
        worst = worst.max(rel);
        rows.push((kk, closed, cross, rel, sqrt2 - closed));
    }
    let content = match out.format.as_str() {
        "csv" => {
            let mut s = String::from("k,a_k,cross_check,rel_diff,sqrt2_gap\n");
            for (k, a, c, r, g) in &rows {
                s.push_str(&format!("{k},{a},{c},{r},{g}\n"));
            }
            s
        }
        _ => {
            let records: Vec<serde_json::Value> = rows
                .iter()
                .map(|(k, a, c, r, g)| {
                    serde_json::json!({
                        "k": k, "a_k": a, "cross_check": c,
                        "rel_diff": r, "sqrt2_gap": g,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "tolerances": {"rel": tol.rel_tol, "abs": tol.abs_tol},
                "records": records,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    };
    write_to(&out.output, &content)?;
    if worst > 1e-6 {
        eprintln!("cross-check mismatch: worst relative difference {worst:.3e} > 1e-6");
        return Ok(ExitCode::from(EXIT_CROSSCHECK));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tv(k: f64, x: f64, y: f64, out: OutputOpts, tol: TolOpts) -> anyhow::Result<ExitCode> {
    let rule = tol.tanh_sinh();
    let km = Multiplicity1D::new(k)?;
    let direct = total_variation_direct(km, x, y, &rule)?;
    // second route: the theta representation for matching signs, the exact
    // value 1 for opposite signs (positive measure)
    let theta = if x * y > 0.0 {
        let s = x.abs().max(y.abs()) / x.abs().min(y.abs());
        total_variation_theta(km, s, &rule)?
    } else {
        1.0
    };
    let ak = sharp_constant(k)?;
    let agree = ((direct - theta) / theta).abs() <= 1e-7;
    let bound_ok = direct <= ak + 1e-9;
    let content = match out.format.as_str() {
        "csv" => format!(
            "k,x,y,tv_direct,tv_theta,a_k,agree,bound_ok\n{k},{x},{y},{direct},{theta},{ak},{agree},{bound_ok}\n"
        ),
        _ => {
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "k": k, "x": x, "y": y,
                "tv_direct": direct,
                "tv_theta": theta,
                "a_k": ak,
                "agree": agree,
                "bound_ok": bound_ok,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    };
    write_to(&out.output, &content)?;
    if !agree {
        eprintln!("integral routes disagree: {direct} vs {theta}");
        return Ok(ExitCode::from(EXIT_CROSSCHECK));
    }
    if !bound_ok {
        eprintln!("total variation {direct} exceeds the sharp bound {ak}");
        return Ok(ExitCode::from(EXIT_BOUND));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kernel(
    k: f64,
    x: f64,
    y: f64,
    z_min: Option<f64>,
    z_max: Option<f64>,
    count: usize,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let km = Multiplicity1D::new(k)?;
    if x == 0.0 || y == 0.0 {
        bail!("the kernel scan needs x, y != 0 (the measure is a point mass otherwise)");
    }
    let hi = x.abs() + y.abs();
    let lo = z_min.unwrap_or(-hi);
    let hi_z = z_max.unwrap_or(hi);
    let grid = Grid1D::new(lo, hi_z, count.max(2))?;
    let mut s = String::from("z,gamma,weighted_gamma\n");
    let mut skipped = 0usize;
    for i in 0..grid.count() {
        let z = grid.node(i);
        match kernel_sample(km, x, y, z) {
            Ok(sample) => {
                s.push_str(&format!(
                    "{z},{},{}\n",
                    sample.density, sample.weighted_density
                ));
            }
            Err(_) => skipped += 1, // singular node (support endpoint, k < 1)
        }
    }
    if skipped > 0 {
        eprintln!("note: skipped {skipped} singular node(s) at the support boundary");
    }
    write_to(&output, &s)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_translate(
    k: f64,
    x: f64,
    input: Option<PathBuf>,
    function: Option<String>,
    y_min: Option<f64>,
    y_max: Option<f64>,
    count: Option<usize>,
    output: Option<PathBuf>,
    tol: TolOpts,
) -> anyhow::Result<ExitCode> {
    let km = Multiplicity1D::new(k)?;
    let f = load_function(&input, &function, 8.5, 1601)?;
    // default y grid: the input grid itself (so x = 0 reproduces the input
    // bit for bit)
    let y_grid = match (y_min, y_max, count) {
        (None, None, None) => *f.grid(),
        _ => Grid1D::new(
            y_min.unwrap_or(-4.0),
            y_max.unwrap_or(4.0),
            count.unwrap_or(801),
        )?,
    };
    let rule = tol.tanh_sinh();
    let result = translate(km, x, &f, &y_grid, &rule)?;
    write_to(&output, &result.to_csv_string())?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    k: f64,
    input: Option<PathBuf>,
    function: Option<String>,
    xi_min: f64,
    xi_max: f64,
    count: usize,
    inverse: bool,
    output: Option<PathBuf>,
    tol: TolOpts,
) -> anyhow::Result<ExitCode> {
    let km = Multiplicity1D::new(k)?;
    let f = load_function(&input, &function, 8.5, 1601)?;
    let grid = Grid1D::new(xi_min, xi_max, count)?;
    let rule = tol.gauss();
    let result = if inverse {
        dunkl_inverse(km, &f, &grid, &rule)?
    } else {
        dunkl_transform(km, &f, &grid, &rule)?
    };
    write_to(&output, &result.to_csv_string())?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_support2d(
    root: String,
    k: String,
    x: String,
    y: String,
    eps: f64,
    grid: usize,
    mollifier: String,
    xi_budget: usize,
    heatmap: Option<PathBuf>,
    summary: Option<PathBuf>,
    tol: TolOpts,
) -> anyhow::Result<ExitCode> {
    let rs = RootSystemModel::named(&root)?;
    if rs.dim() != 2 || rs.order() != 4 {
        bail!("support2d requires the rank-2 product system (A1xA1 / Z2^2)");
    }
    let ks = parse_vecn(&k, "--k")?;
    let pk = ProductMultiplicity::new(&ks)?;
    let x = parse_vec2(&x, "--x")?;
    let y = parse_vec2(&y, "--y")?;
    let profile = if mollifier == "radial" {
        MollifierProfile::Radial
    } else {
        MollifierProfile::Tensor
    };
    // mollifier support inside -co(G.u) for the unit diagonal direction
    let radius = 0.7;
    let spec = MollifierSpec::new(eps, radius, profile)?;
    let span = (x[0].abs() + y[0].abs()).max(x[1].abs() + y[1].abs()) + 0.5;
    let gz = Grid1D::symmetric(span, grid.max(9))?;
    let rule = tol.gauss();
    let probe = gamma_eps_probe(&pk, &spec, &x, &y, (gz, gz), &rule, xi_budget)?;

    // Region bookkeeping: the refined support is the product of the 1D
    // intervals; its dilation by the mollifier reach carries the mass check.
    let lo = [
        (x[0].abs() - y[0].abs()).abs(),
        (x[1].abs() - y[1].abs()).abs(),
    ];
    let hi = [x[0].abs() + y[0].abs(), x[1].abs() + y[1].abs()];
    let slack = spec.dilation() + 2.0 * gz.step().max(1e-3);
    let inside1 = |j: usize| {
        move |z: f64| {
            let t = z.abs();
            t >= lo[j] - slack && t <= hi[j] + slack
        }
    };
    let (mass_inside, mass_total) = match probe_masses(&probe, &pk, inside1(0), inside1(1)) {
        Some(m) => m,
        None => bail!("mass accounting failed"),
    };
    let mass_outside = (mass_total - mass_inside).max(0.0);
    let outside_fraction = mass_outside / mass_total;

    // cross-check the region predicate against the rootgeom formulation and
    // predicate (i) on the grid
    let mut region_matches = true;
    let mut shell_ok = true;
    for i in 0..gz.count() {
        for j in 0..gz.count() {
            let z = [gz.node(i), gz.node(j)];
            let product_region = (lo[0]..=hi[0]).contains(&z[0].abs())
                && (lo[1]..=hi[1]).contains(&z[1].abs());
            let predicate = rs.support_region_contains(&x, &y, &z)?;
            if predicate != product_region {
                // tolerate the boundary band
                let near = (z[0].abs() - lo[0]).abs() < 2.0 * gz.step()
                    || (z[0].abs() - hi[0]).abs() < 2.0 * gz.step()
                    || (z[1].abs() - lo[1]).abs() < 2.0 * gz.step()
                    || (z[1].abs() - hi[1]).abs() < 2.0 * gz.step();
                if !near {
                    region_matches = false;
                }
            }
            if predicate && !support_shell_contains(&x, &y, &z) {
                shell_ok = false;
            }
        }
    }

    let mut heat = Vec::new();
    probe.field.to_csv(&mut heat)?;
    write_to(&heatmap, std::str::from_utf8(&heat)?)?;

    let region_vertices = serde_json::json!([
        [lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]],
    ]);
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "root": root,
        "k": ks,
        "x": x,
        "y": y,
        "eps": eps,
        "mollifier": mollifier,
        "grid": {"min": gz.min(), "max": gz.max(), "count": gz.count()},
        "mass_inside": mass_inside,
        "mass_outside": mass_outside,
        "outside_fraction": outside_fraction,
        "region_vertices": region_vertices,
        "region_matches_predicate": region_matches,
        "shell_ok": shell_ok,
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&doc)?);
    match &summary {
        Some(p) => write_to(&Some(p.clone()), &text)?,
        None => eprint!("{text}"),
    }

    if outside_fraction >= 0.01 || !region_matches || !shell_ok {
        return Ok(ExitCode::from(EXIT_REGION));
    }
    Ok(ExitCode::SUCCESS)
}

fn probe_masses(
    probe: &GammaEpsProbe,
    pk: &ProductMultiplicity,
    in1: impl Fn(f64) -> bool,
    in2: impl Fn(f64) -> bool,
) -> Option<(f64, f64)> {
    match probe.tensor_masses(pk, &in1, &in2) {
        Ok(m) => Some(m),
        Err(_) => {
            let (inside, total) = probe.grid_masses(pk, |z1, z2| in1(z1) && in2(z2));
            (total > 0.0).then_some((inside, total))
        }
    }
}

fn cmd_rootinfo(
    root: Option<String>,
    roots_json: Option<PathBuf>,
    lambda: Option<String>,
    seed: u64,
    samples: usize,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let (rs, label) = match (&root, &roots_json) {
        (Some(name), None) => (RootSystemModel::named(name)?, name.clone()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            (RootSystemModel::from_json(&value)?, path.display().to_string())
        }
        _ => bail!("provide exactly one of --root or --roots-json"),
    };
    let g0 = rs.longest_element();
    let minus_id = (0..rs.dim()).all(|i| {
        (0..rs.dim()).all(|j| {
            let want = if i == j { -1.0 } else { 0.0 };
            (g0.matrix[i][j] - want).abs() < 1e-9
        })
    });

    let lambda_doc = match &lambda {
        None => serde_json::Value::Null,
        Some(s) => {
            let lam = parse_vecn(s, "--lambda")?;
            if lam.len() != rs.dim() {
                bail!("--lambda must have dimension {}", rs.dim());
            }
            let admissible = rs.is_admissible(&lam);
            let orbit = rs.orbit(&lam);
            let gauges = if admissible && rs.dim() == 2 {
                let dirs = [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8], [-0.8, 0.6]];
                let mut out = Vec::new();
                for d in dirs {
                    out.push(serde_json::json!({
                        "xi": d,
                        "gauge": rs.gauge(&lam, &d)?,
                    }));
                }
                serde_json::Value::Array(out)
            } else if admissible && rs.dim() == 1 {
                serde_json::json!([{"xi": [1.0], "gauge": rs.gauge(&lam, &[1.0])?}])
            } else {
                serde_json::Value::Array(vec![])
            };
            serde_json::json!({
                "value": lam,
                "admissible": admissible,
                "orbit_vertices": orbit,
                "gauge_samples": gauges,
            })
        }
    };

    // membership cross-check: the two polar formulations on seeded samples
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probe_lambda: Vec<f64> = (0..rs.dim()).map(|i| 1.0 + 0.3 * i as f64).collect();
    let mut agreements = 0usize;
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < samples && attempts < 100 * samples.max(1) {
        attempts += 1;
        let p: Vec<f64> = (0..rs.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let m = rs
            .group()
            .iter()
            .map(|g| dot(&p, &g.apply(&probe_lambda)))
            .fold(f64::MIN, f64::max);
        if (m - 1.0).abs() < 1e-7 {
            continue; // indecisive boundary band
        }
        checked += 1;
        if rs.polar_contains(&probe_lambda, &p) == rs.polar_contains_chamber(&probe_lambda, &p) {
            agreements += 1;
        }
    }

    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "root_system": label,
        "dimension": rs.dim(),
        "group_order": rs.order(),
        "crystallographic": rs.is_crystallographic(),
        "root_count": rs.roots().len(),
        "positive_roots": rs.positive_roots(),
        "simple_roots": rs.simple_roots(),
        "longest_element": g0.matrix,
        "longest_is_minus_identity": minus_id,
        "lambda": lambda_doc,
        "membership_check": {
            "seed": seed,
            "samples": checked,
            "agreements": agreements,
        },
    });
    write_to(&output, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    if agreements != checked {
        eprintln!("polar membership formulations disagree on {} samples", checked - agreements);
        return Ok(ExitCode::from(EXIT_CROSSCHECK));
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_pw(
    k: Option<f64>,
    r: Option<f64>,
    k2: Option<String>,
    rect: Option<String>,
    direction: Option<String>,
    samples: usize,
    t_max: Option<f64>,
    poly_order: Option<u32>,
    poly_max: f64,
    output: Option<PathBuf>,
    tol: TolOpts,
) -> anyhow::Result<ExitCode> {
    let rule = tol.gauss();
    let (report, poly_doc) = match (&k2, &rect) {
        (Some(ks), Some(widths)) => {
            let ks = parse_vec2(ks, "--k2")?;
            let widths = parse_vec2(widths, "--rect")?;
            let dir = parse_vec2(direction.as_deref().unwrap_or("1,0"), "--direction")?;
            let pk = ProductMultiplicity::new(&ks)?;
            let ts = match t_max {
                Some(tm) => linspace(tm / 20.0, tm, samples),
                None => default_t_samples_2d(widths, &dir, samples)?,
            };
            let rep = gauge_decay_check_2d(&pk, widths, &dir, &ts, &rule)?;
            (rep, serde_json::Value::Null)
        }
        (None, None) => {
            let k = k.ok_or_else(|| anyhow::anyhow!("1D mode needs --k and --r"))?;
            let r = r.ok_or_else(|| anyhow::anyhow!("1D mode needs --k and --r"))?;
            let km = Multiplicity1D::new(k)?;
            let grid = Grid1D::symmetric(1.05 * r, 2049)?;
            let f = bump_function(r, grid)?;
            let ts = match t_max {
                Some(tm) => linspace(tm / 20.0, tm, samples),
                None => default_t_samples(r, samples),
            };
            let rep = transform_on_vertical_line(km, &f, 0.0, &ts, &rule)?;
            let poly_doc = match poly_order {
                None => serde_json::Value::Null,
                Some(m) => {
                    let check = polynomial_decay_check(km, &f, m, poly_max, 600, &rule)?;
                    serde_json::to_value(&check)?
                }
            };
            (rep, poly_doc)
        }
        _ => bail!("2D mode needs both --k2 and --rect"),
    };

    let samples_doc: Vec<serde_json::Value> = report
        .t_samples
        .iter()
        .zip(&report.log_moduli)
        .map(|(t, l)| serde_json::json!({"t": t, "log_modulus": l}))
        .collect();
    let ratio = report.rate_ratio();
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "direction": report.direction,
        "gauge_value": report.gauge_value,
        "fitted_rate": report.fitted_rate,
        "ratio": ratio,
        "truncated": report.truncated,
        "samples": samples_doc,
        "polynomial_check": poly_doc,
    });
    write_to(&output, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;

    let poly_ok = match &doc["polynomial_check"] {
        serde_json::Value::Null => true,
        v => v["bounded"].as_bool().unwrap_or(false),
    };
    if !(0.9..=1.02).contains(&ratio) || !poly_ok {
        eprintln!("decay-rate cross-check failed: ratio {ratio}, polynomial bounded: {poly_ok}");
        return Ok(ExitCode::from(EXIT_RATE));
    }
    Ok(ExitCode::SUCCESS)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n.max(2))
        .map(|i| a + (b - a) * i as f64 / (n.max(2) - 1) as f64)
        .collect()
}
