//! Resolution of the run configuration: flags, then the config file, then
//! defaults.

use std::path::{Path, PathBuf};

use gradient_boussinesq::model::{self, Material, PointLoad};
use gradient_boussinesq::quadrature::QuadratureSpec;
use serde::{Deserialize, Serialize};

use crate::cli::{Cli, Command, Shape};
use crate::error::CliError;

/// Overrides the default relative quadrature tolerance.
pub const REL_TOL_ENV: &str = "GRADBQ_REL_TOL";

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub output: Option<PathBuf>,
    pub material: MaterialFile,
    pub load: LoadFile,
    pub quadrature: QuadratureFile,
    pub profile: ProfileFile,
    pub point: PointFile,
    pub sweep: SweepFile,
    pub verify: VerifyFile,
    pub convolve: ConvolveFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialFile {
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub c: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LoadFile {
    pub p: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureFile {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_intervals: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileFile {
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub n_points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PointFile {
    pub r: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepFile {
    pub nu_min: Option<f64>,
    pub nu_max: Option<f64>,
    pub nu_step: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyFile {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub threshold: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvolveFile {
    pub shape: Option<Shape>,
    pub radius: Option<f64>,
    pub pressure: Option<f64>,
    pub r_max: Option<f64>,
    pub n_points: Option<usize>,
}

/// Fully resolved settings of one run; printed to stderr before computing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub gnuplot: bool,
    pub material: ResolvedMaterial,
    pub load: ResolvedLoad,
    pub quadrature: ResolvedQuadrature,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convolve: Option<ConvolveSettings>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedMaterial {
    pub mu: f64,
    pub nu: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedLoad {
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedQuadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSettings {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSettings {
    pub r: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSettings {
    pub nu_min: f64,
    pub nu_max: f64,
    pub nu_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySettings {
    pub samples: usize,
    pub seed: u64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb_rel: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvolveSettings {
    pub shape: Shape,
    pub radius: f64,
    pub pressure: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl RunConfig {
    pub fn material(&self) -> Material {
        let m = self.material;
        Material { mu: m.mu, nu: m.nu, c: m.c }
    }

    pub fn point_load(&self) -> PointLoad {
        PointLoad { p: self.load.p }
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        let q = self.quadrature;
        QuadratureSpec {
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            max_zero_intervals: q.max_intervals,
            ..QuadratureSpec::default()
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }
}

pub fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let display = path.display().to_string();
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig { path: display.clone(), source })?;
    toml::from_str(&text).map_err(|source| CliError::ParseConfig { path: display, source })
}

fn default_rel_tol() -> Result<f64, CliError> {
    match std::env::var(REL_TOL_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Config(format!("{REL_TOL_ENV}={s:?} is not a number"))),
        Err(_) => Ok(QuadratureSpec::default().rel_tol),
    }
}

/// Merges flags over the file over the defaults and validates the result.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.common.config {
        Some(path) => read_file(path)?,
        None => FileConfig::default(),
    };
    let a = &cli.common;
    let defaults = QuadratureSpec::default();
    let rel_tol = match a.rel_tol.or(file.quadrature.rel_tol) {
        Some(t) => t,
        None => default_rel_tol()?,
    };
    let mut run = RunConfig {
        command: "",
        output: a.output.clone().or(file.output),
        gnuplot: a.gnuplot,
        material: ResolvedMaterial {
            mu: a.mu.or(file.material.mu).unwrap_or(1.0),
            nu: a.nu.or(file.material.nu).unwrap_or(0.3),
            c: a.c.or(file.material.c).unwrap_or(1.0),
        },
        load: ResolvedLoad { p: a.load.or(file.load.p).unwrap_or(1.0) },
        quadrature: ResolvedQuadrature {
            rel_tol,
            abs_tol: a.abs_tol.or(file.quadrature.abs_tol).unwrap_or(defaults.abs_tol),
            max_intervals: a.max_intervals.or(file.quadrature.max_intervals).unwrap_or(defaults.max_zero_intervals),
        },
        profile: None,
        point: None,
        sweep: None,
        verify: None,
        convolve: None,
    };
    match &cli.command {
        Command::Profile { r_min, r_max, n_points } => {
            run.command = "profile";
            let f = &file.profile;
            run.profile = Some(ProfileSettings {
                r_min: r_min.or(f.r_min).unwrap_or(1e-3),
                r_max: r_max.or(f.r_max).unwrap_or(20.0),
                n_points: n_points.or(f.n_points).unwrap_or(200),
            });
        }
        Command::Point { r } => {
            run.command = "point";
            let r = if r.is_empty() { file.point.r.clone().unwrap_or_default() } else { r.clone() };
            if r.is_empty() {
                return Err(CliError::Config("point needs at least one --r".into()));
            }
            if let Some(x) = r.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
                return Err(CliError::Config(format!("radius must be finite and >= 0, got {x}")));
            }
            run.point = Some(PointSettings { r });
        }
        Command::Sweep { nu_min, nu_max, nu_step } => {
            run.command = "sweep";
            let f = &file.sweep;
            let s = SweepSettings {
                nu_min: nu_min.or(f.nu_min).unwrap_or(0.0),
                nu_max: nu_max.or(f.nu_max).unwrap_or(0.45),
                nu_step: nu_step.or(f.nu_step).unwrap_or(0.05),
            };
            if !(s.nu_step > 0.0) || !(s.nu_max > s.nu_min) {
                return Err(CliError::Config(format!(
                    "sweep needs nu_min < nu_max and nu_step > 0, got {} {} {}",
                    s.nu_min, s.nu_max, s.nu_step
                )));
            }
            run.sweep = Some(s);
        }
        Command::Verify { samples, seed, threshold, csv, perturb_index, perturb_rel } => {
            run.command = "verify";
            let f = &file.verify;
            let v = VerifySettings {
                samples: samples.or(f.samples).unwrap_or(100),
                seed: seed.or(f.seed).unwrap_or(1),
                threshold: threshold.or(f.threshold).unwrap_or(1e-10),
                csv: csv.clone(),
                perturb_index: *perturb_index,
                perturb_rel: perturb_index.map(|_| perturb_rel.unwrap_or(1e-6)),
            };
            if v.samples == 0 || !(v.threshold > 0.0) {
                return Err(CliError::Config("verify needs samples > 0 and threshold > 0".into()));
            }
            if v.perturb_index.is_some_and(|i| i >= 6) {
                return Err(CliError::Config("perturbation index must be in 0..6".into()));
            }
            run.verify = Some(v);
        }
        Command::Convolve { shape, radius, pressure, r_max, n_points } => {
            run.command = "convolve";
            let f = &file.convolve;
            let radius = radius.or(f.radius).unwrap_or(1.0);
            let s = ConvolveSettings {
                shape: shape.or(f.shape).unwrap_or(Shape::Disc),
                radius,
                pressure: pressure.or(f.pressure).unwrap_or(1.0),
                r_max: r_max.or(f.r_max).unwrap_or(4.0 * radius),
                n_points: n_points.or(f.n_points).unwrap_or(81),
            };
            if !(s.radius > 0.0 && s.radius.is_finite()) || !(s.r_max > 0.0 && s.r_max.is_finite()) || s.n_points < 2 {
                return Err(CliError::Config("convolve needs radius > 0, r_max > 0 and n_points >= 2".into()));
            }
            if !s.pressure.is_finite() {
                return Err(CliError::Config("pressure must be finite".into()));
            }
            run.convolve = Some(s);
        }
    }
    model::validate(&run.material())?;
    PointLoad::new(run.load.p)?;
    run.quadrature().validate()?;
    if run.gnuplot && run.command == "verify" {
        return Err(CliError::Config("--gnuplot applies to CSV commands only".into()));
    }
    if run.gnuplot && run.output.is_none() {
        return Err(CliError::Config("--gnuplot needs --output".into()));
    }
    Ok(run)
}
