use std::path::Path;

use gradient_boussinesq::model::{self, Material};
use gradient_boussinesq::superposition::{settlement_profile, AxisymmetricLoad};
use gradient_boussinesq::surface::{log_grid, settlement_fit_over, SurfaceProfile};
use gradient_boussinesq::transform::{verify, Perturbation, VerifyConfig};
use serde::Serialize;

use crate::cli::Shape;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::{num, opt, row};

pub const PROFILE_HEADER: &str = "r_prime,u3_hat,ur_hat,u3_classical_hat,ur_classical_hat,quad_err_u3,quad_err_ur";
pub const POINT_HEADER: &str = "r,r_prime,u_r,u3,ur_hat,u3_hat,quad_err_ur,quad_err_u3";
pub const SWEEP_HEADER: &str = "nu,u3_hat_origin,quad_err";
pub const CONVOLVE_HEADER: &str = "r,u3";

/// Text produced by a command. `error` is set when the output is partial or
/// records a failure; the text is still written.
pub struct Outcome {
    pub text: String,
    pub rows: usize,
    pub error: Option<CliError>,
    /// `(intercept, slope)` of a sweep.
    pub fit: Option<(f64, f64)>,
}

#[derive(Serialize)]
pub struct Summary {
    pub status: &'static str,
    pub exit_code: i32,
    pub rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        "profile" => profile(cfg),
        "point" => point(cfg),
        "sweep" => sweep(cfg),
        "verify" => run_verify(cfg),
        "convolve" => convolve(cfg),
        other => unreachable!("unknown command {other}"),
    }
}

fn with_converged_column(header: &str, lines: Vec<String>, converged: &[bool]) -> String {
    let mut text = format!("{header},converged\n");
    for (line, ok) in lines.iter().zip(converged) {
        text.push_str(line.trim_end());
        text.push_str(if *ok { ",true\n" } else { ",false\n" });
    }
    text
}

fn assemble(header: &str, lines: Vec<String>, converged: &[bool]) -> Outcome {
    let rows = lines.len();
    let failed = converged.iter().filter(|ok| !**ok).count();
    if failed == 0 {
        let mut text = format!("{header}\n");
        text.extend(lines);
        Outcome { text, rows, error: None, fit: None }
    } else {
        Outcome {
            text: with_converged_column(header, lines, converged),
            rows,
            error: Some(CliError::Unconverged(failed)),
            fit: None,
        }
    }
}

fn profile(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = cfg.profile.expect("profile settings");
    let grid = log_grid(s.r_min, s.r_max, s.n_points)?;
    let p = SurfaceProfile::compute(&grid, cfg.material.nu, &cfg.quadrature())?;
    let lines = (0..p.len())
        .map(|i| {
            row([
                num(p.r_prime[i]),
                num(p.u3_hat[i]),
                num(p.ur_hat[i]),
                opt(p.u3_class_hat[i]),
                opt(p.ur_class_hat[i]),
                num(p.quad_u3[i].err_est),
                num(p.quad_ur[i].err_est),
            ])
        })
        .collect();
    let converged: Vec<bool> = (0..p.len()).map(|i| p.quad_u3[i].converged && p.quad_ur[i].converged).collect();
    Ok(assemble(PROFILE_HEADER, lines, &converged))
}

fn point(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let radii = &cfg.point.as_ref().expect("point settings").r;
    let (material, load) = (cfg.material(), cfg.point_load());
    let r_prime: Vec<f64> = radii.iter().map(|&r| model::normalize_radius(r, material.c)).collect();
    let p = SurfaceProfile::compute(&r_prime, material.nu, &cfg.quadrature())?;
    let lines = (0..p.len())
        .map(|i| {
            let (u_r, u3) = model::dimensionalize(p.ur_hat[i], p.u3_hat[i], &material, &load);
            row([
                num(radii[i]),
                num(r_prime[i]),
                num(u_r),
                num(u3),
                num(p.ur_hat[i]),
                num(p.u3_hat[i]),
                num(p.quad_ur[i].err_est),
                num(p.quad_u3[i].err_est),
            ])
        })
        .collect();
    let converged: Vec<bool> = (0..p.len()).map(|i| p.quad_u3[i].converged && p.quad_ur[i].converged).collect();
    Ok(assemble(POINT_HEADER, lines, &converged))
}

/// `nu_min, nu_min + step, ...` up to `nu_max` inclusive.
pub fn sweep_values(nu_min: f64, nu_max: f64, step: f64) -> Vec<f64> {
    let n = ((nu_max - nu_min) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| nu_min + k as f64 * step).collect()
}

fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = cfg.sweep.expect("sweep settings");
    let nus = sweep_values(s.nu_min, s.nu_max, s.nu_step);
    for &nu in &nus {
        Material::new(cfg.material.mu, nu, cfg.material.c)?;
    }
    let fit = settlement_fit_over(&nus, &cfg.quadrature())?;
    let mut text = format!("{SWEEP_HEADER}\n");
    for i in 0..fit.nu.len() {
        text.push_str(&row([num(fit.nu[i]), num(fit.settlement[i]), num(fit.quad_err[i])]));
    }
    text.push_str(&row(["fit".to_string(), num(fit.intercept), num(fit.slope)]));
    Ok(Outcome { text, rows: fit.nu.len(), error: None, fit: Some((fit.intercept, fit.slope)) })
}

fn run_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let v = cfg.verify.as_ref().expect("verify settings");
    let config = VerifyConfig {
        samples: v.samples,
        seed: v.seed,
        material: cfg.material(),
        load: cfg.point_load(),
        threshold: v.threshold,
        perturbation: v.perturb_index.map(|index| Perturbation { index, rel: v.perturb_rel.unwrap_or(1e-6) }),
    };
    let report = verify(&config)?;
    if let Some(path) = &v.csv {
        write_file(path, &report.to_csv())?;
    }
    let mut text = report.to_string();
    text.push('\n');
    let error = (!report.passed()).then(|| {
        let worst = report.worst_sample().map_or(0, |w| w.index);
        CliError::Verification(format!("worst sample {worst}"))
    });
    Ok(Outcome { text, rows: report.samples.len(), error, fit: None })
}

/// Equally spaced radii on `[0, r_max]`.
pub fn linear_radii(r_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| if k == n - 1 { r_max } else { r_max * k as f64 / (n - 1) as f64 }).collect()
}

fn convolve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = cfg.convolve.expect("convolve settings");
    let load = match s.shape {
        Shape::Disc => AxisymmetricLoad::uniform_disc(s.pressure, s.radius)?,
    };
    let radii = linear_radii(s.r_max, s.n_points);
    let u3 = settlement_profile(&load, &cfg.material(), &radii, &cfg.quadrature())?;
    let mut text = format!("{CONVOLVE_HEADER}\n");
    for (r, u) in radii.iter().zip(&u3) {
        text.push_str(&row([num(*r), num(*u)]));
    }
    Ok(Outcome { text, rows: radii.len(), error: None, fit: None })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

/// A gnuplot script plotting the CSV at `csv`.
pub fn gnuplot_script(cfg: &RunConfig, outcome: &Outcome, csv: &Path) -> String {
    let name = csv.file_name().map_or_else(|| csv.display().to_string(), |n| n.to_string_lossy().into_owned());
    let png = Path::new(&name).with_extension("png");
    let mut s = format!(
        "set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 900,600\nset output '{}'\nset grid\n",
        png.display()
    );
    let body = match cfg.command {
        "profile" => format!(
            "set xlabel \"r'\"\nset ylabel 'normalized displacement'\nset yrange [-1:2]\n\
             plot '{name}' using 1:2 with lines, '' using 1:4 with lines dt 2, \
             '' using 1:3 with lines, '' using 1:5 with lines dt 2\n"
        ),
        "point" => format!("set xlabel 'r'\nset ylabel 'displacement'\nplot '{name}' using 1:4 with linespoints, '' using 1:3 with linespoints\n"),
        "sweep" => format!(
            "set xlabel 'nu'\nset ylabel \"u3_hat(0)\"\nplot '{name}' using 1:2 with points pt 7, \
             {} + ({})*x title 'linear fit'\n",
            num(outcome.fit.map_or(0.0, |f| f.0)),
            num(outcome.fit.map_or(0.0, |f| f.1))
        ),
        "convolve" => format!("set xlabel 'r'\nset ylabel 'u3'\nplot '{name}' using 1:2 with lines\n"),
        _ => String::new(),
    };
    s.push_str(&body);
    s
}
