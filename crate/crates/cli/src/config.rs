//! Pipeline configuration: a TOML document with nested sections, overlaid by
//! command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use focusreg::focus::DEFAULT_SPLINE_SIGMA;
use focusreg::imaging::DEFAULT_BINS;
use focusreg::{Criterion, Error, GaussianComponent, PresetParams, Result, SearchSpec};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Restoration,
    Implant,
    Bone,
    Cephalo,
    Gaussians,
    #[default]
    Uniform,
    File,
}

/// File layout. Every key is optional; flags fill in or override.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub preset: Option<Preset>,
    pub criterion: Option<Criterion>,
    pub bins: Option<usize>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub paths: PathsSection,
    #[serde(default)]
    pub focus: FocusSection,
    #[serde(default)]
    pub search: SearchSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsSection {
    pub reference: Option<PathBuf>,
    pub test: Option<PathBuf>,
    pub focus: Option<PathBuf>,
    pub transform: Option<PathBuf>,
    pub points: Option<PathBuf>,
    pub test_points: Option<PathBuf>,
    #[serde(default)]
    pub curves: Vec<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FocusSection {
    pub median_radius: Option<usize>,
    pub sigma_edge: Option<f64>,
    pub sigma_spline: Option<f64>,
    pub threshold: Option<f64>,
    pub close_radius: Option<usize>,
    pub dilate_radius: Option<usize>,
    #[serde(default)]
    pub gaussians: Vec<GaussianComponent>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub box_matrix: Option<f64>,
    pub box_translation: Option<f64>,
    pub levels: Option<usize>,
    pub restarts: Option<usize>,
    pub max_evals: Option<usize>,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub transform: Option<PathBuf>,
    pub focus: Option<PathBuf>,
    pub subtraction: Option<PathBuf>,
    pub trace: Option<PathBuf>,
}

/// Flags shared by all subcommands; each mirrors a config key.
#[derive(Debug, Default, Args)]
pub struct Flags {
    /// TOML configuration file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Reference image (PGM or 8-bit grayscale PNG)
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Test image
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Focus map file, used by the `file` preset
    #[arg(long)]
    pub focus: Option<PathBuf>,
    /// Transform file (evaluate, subtract)
    #[arg(long)]
    pub transform: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// MI, NMI or ECC
    #[arg(long)]
    pub criterion: Option<Criterion>,
    /// Number of gray bins
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub sigma_edge: Option<f64>,
    #[arg(long)]
    pub sigma_spline: Option<f64>,
    #[arg(long)]
    pub median_radius: Option<usize>,
    #[arg(long)]
    pub close_radius: Option<usize>,
    #[arg(long)]
    pub dilate_radius: Option<usize>,
    /// Manual patch threshold in [0, 1]; Otsu when absent
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Landmarks on the reference image ("x,y" lines)
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Matching landmarks on the test image
    #[arg(long)]
    pub test_points: Option<PathBuf>,
    /// Curve file: "x,y" table (one curve) or TOML document of named curves; repeatable
    #[arg(long)]
    pub curves: Vec<PathBuf>,
    /// Half-width of the search box on the matrix entries
    #[arg(long)]
    pub box_matrix: Option<f64>,
    /// Half-width of the search box on the translation, in pixels
    #[arg(long)]
    pub box_translation: Option<f64>,
    /// Pyramid levels (1 = full resolution only)
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub max_evals: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Selects the set of restart points
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_transform: Option<PathBuf>,
    #[arg(long)]
    pub out_focus: Option<PathBuf>,
    #[arg(long)]
    pub out_subtraction: Option<PathBuf>,
    #[arg(long)]
    pub out_trace: Option<PathBuf>,
}

/// Effective settings after merging file and flags.
#[derive(Debug)]
pub struct PipelineConfig {
    pub reference: Option<PathBuf>,
    pub test: Option<PathBuf>,
    pub focus_file: Option<PathBuf>,
    pub transform: Option<PathBuf>,
    pub points: Option<PathBuf>,
    pub test_points: Option<PathBuf>,
    pub curves: Vec<PathBuf>,
    pub preset: Preset,
    pub bins: usize,
    pub params: PresetParams,
    pub sigma_spline: f64,
    pub gaussians: Vec<GaussianComponent>,
    pub search: SearchSpec,
    pub levels: usize,
    pub out_transform: Option<PathBuf>,
    pub out_focus: Option<PathBuf>,
    pub out_subtraction: Option<PathBuf>,
    pub out_trace: Option<PathBuf>,
}

/// Relative paths in a config file are read against the file's directory.
fn anchor(base: &Path, p: PathBuf) -> PathBuf {
    if p.is_relative() {
        base.join(p)
    } else {
        p
    }
}

impl PipelineConfig {
    pub fn load(flags: Flags) -> Result<Self> {
        let mut file = match &flags.config {
            Some(path) => {
                let text = fs::read_to_string(path)?;
                toml::from_str::<ConfigFile>(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        if let Some(base) = flags.config.as_ref().and_then(|p| p.parent()) {
            let fix = |p: &mut Option<PathBuf>| *p = p.take().map(|p| anchor(base, p));
            let paths = &mut file.paths;
            for p in [
                &mut paths.reference,
                &mut paths.test,
                &mut paths.focus,
                &mut paths.transform,
                &mut paths.points,
                &mut paths.test_points,
            ] {
                fix(p);
            }
            paths.curves = paths.curves.drain(..).map(|p| anchor(base, p)).collect();
            let out = &mut file.output;
            for p in [&mut out.transform, &mut out.focus, &mut out.subtraction, &mut out.trace] {
                fix(p);
            }
        }
        Self::merge(file, flags)
    }

    fn merge(file: ConfigFile, flags: Flags) -> Result<Self> {
        let defaults = PresetParams::default();
        let bins = flags.bins.or(file.bins).unwrap_or(DEFAULT_BINS);
        if bins < 2 {
            return Err(Error::InvalidParameter(format!("bins must be >= 2, got {bins}")));
        }
        let params = PresetParams {
            median_radius: flags.median_radius.or(file.focus.median_radius).unwrap_or(defaults.median_radius),
            sigma_edge: flags.sigma_edge.or(file.focus.sigma_edge).unwrap_or(defaults.sigma_edge),
            threshold: flags.threshold.or(file.focus.threshold),
            close_radius: flags.close_radius.or(file.focus.close_radius).unwrap_or(defaults.close_radius),
            dilate_radius: flags.dilate_radius.or(file.focus.dilate_radius).unwrap_or(defaults.dilate_radius),
            bins,
        };
        let base = SearchSpec::default();
        let m = flags.box_matrix.or(file.search.box_matrix).unwrap_or(base.half_widths[0]);
        let t = flags.box_translation.or(file.search.box_translation).unwrap_or(base.half_widths[4]);
        let search = SearchSpec {
            criterion: flags.criterion.or(file.criterion).unwrap_or_default(),
            restarts: flags.restarts.or(file.search.restarts).unwrap_or(base.restarts),
            restart_offset: flags.seed.or(file.seed).unwrap_or(0),
            max_evals: flags.max_evals.or(file.search.max_evals).unwrap_or(base.max_evals),
            tolerance: flags.tolerance.or(file.search.tolerance).unwrap_or(base.tolerance),
            ..base.with_box(m, t)
        };
        search.validate()?;
        let curves = if flags.curves.is_empty() {
            file.paths.curves
        } else {
            flags.curves
        };
        Ok(Self {
            reference: flags.reference.or(file.paths.reference),
            test: flags.test.or(file.paths.test),
            focus_file: flags.focus.or(file.paths.focus),
            transform: flags.transform.or(file.paths.transform),
            points: flags.points.or(file.paths.points),
            test_points: flags.test_points.or(file.paths.test_points),
            curves,
            preset: flags.preset.or(file.preset).unwrap_or_default(),
            bins,
            params,
            sigma_spline: flags.sigma_spline.or(file.focus.sigma_spline).unwrap_or(DEFAULT_SPLINE_SIGMA),
            gaussians: file.focus.gaussians,
            search,
            levels: flags.levels.or(file.search.levels).unwrap_or(1),
            out_transform: flags.out_transform.or(file.output.transform),
            out_focus: flags.out_focus.or(file.output.focus),
            out_subtraction: flags.out_subtraction.or(file.output.subtraction),
            out_trace: flags.out_trace.or(file.output.trace),
        })
    }
}

/// `Some(path)` or an input error naming the missing setting.
pub fn required<'a>(path: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("missing {what} (flag or config key)")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: ConfigFile = toml::from_str(
            r#"
preset = "implant"
bins = 32
[focus]
sigma_edge = 1.5
threshold = 0.6
[search]
box_translation = 5.0
levels = 2
[[focus.gaussians]]
weight = 1.0
center = [3.0, 4.0]
sigma = 2.0
"#,
        )
        .unwrap();
        let flags = Flags {
            bins: Some(16),
            sigma_edge: Some(3.0),
            ..Flags::default()
        };
        let c = PipelineConfig::merge(file, flags).unwrap();
        assert_eq!(c.preset, Preset::Implant);
        assert_eq!(c.bins, 16);
        assert_eq!(c.params.bins, 16);
        assert_eq!(c.params.sigma_edge, 3.0);
        assert_eq!(c.params.threshold, Some(0.6));
        assert_eq!(c.search.half_widths[4], 5.0);
        assert_eq!(c.search.half_widths[0], 0.15);
        assert_eq!(c.levels, 2);
        assert_eq!(c.gaussians.len(), 1);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_bins() {
        assert!(toml::from_str::<ConfigFile>("colour = 3").is_err());
        let flags = Flags {
            bins: Some(1),
            ..Flags::default()
        };
        assert!(PipelineConfig::merge(ConfigFile::default(), flags).is_err());
    }
}
