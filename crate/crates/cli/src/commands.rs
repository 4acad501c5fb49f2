use std::fs;
use std::path::{Path, PathBuf};

use focusreg::focus::{
    gaussian_mixture_focus, preset_bone_focus, preset_implant_focus, preset_restoration_focus, spline_focus,
};
use focusreg::io::{
    focus_to_text, parse_curve_document, parse_focus_text, parse_points, parse_transform, read_image,
    transform_to_record, transform_to_toml, write_gray8,
};
use focusreg::{
    evaluate_all, fit_affine_least_squares, multiresolution_register, subtract, AffineTransform, BinningScheme, Error,
    FocusMap, Image, Result, SplineCurve,
};

use crate::config::{required, PipelineConfig, Preset};

fn load_pair(config: &PipelineConfig) -> Result<(Image, Image)> {
    let reference = read_image(required(&config.reference, "reference image")?)?;
    let test = read_image(required(&config.test, "test image")?)?;
    if reference.dims() != test.dims() {
        return Err(Error::DimensionMismatch {
            expected: reference.dims(),
            actual: test.dims(),
        });
    }
    Ok((reference, test))
}

/// A curve file is a TOML document when it has `[[curve]]` tables, else an "x,y" table.
fn read_curves(paths: &[PathBuf]) -> Result<Vec<SplineCurve>> {
    let mut curves = Vec::new();
    for path in paths {
        let text = fs::read_to_string(path)?;
        if text.contains("[[curve]]") {
            curves.extend(parse_curve_document(&text)?.to_splines()?);
        } else {
            curves.push(SplineCurve::new(parse_points(&text)?)?);
        }
    }
    Ok(curves)
}

/// Focus for the selected preset; `None` means unit weights everywhere.
fn build_focus(config: &PipelineConfig, reference: &Image) -> Result<Option<FocusMap>> {
    let (w, h) = reference.dims();
    let p = &config.params;
    let focus = match config.preset {
        Preset::Uniform => return Ok(None),
        Preset::Restoration => preset_restoration_focus(reference, p)?,
        Preset::Implant => preset_implant_focus(reference, p)?,
        Preset::Bone => preset_bone_focus(reference, p)?,
        Preset::Cephalo => {
            if config.curves.is_empty() {
                return Err(Error::InvalidParameter("cephalo preset needs --curves".into()));
            }
            spline_focus(&read_curves(&config.curves)?, w, h, config.sigma_spline)?
        }
        Preset::Gaussians => gaussian_mixture_focus(w, h, &config.gaussians)?,
        Preset::File => {
            let path = required(&config.focus_file, "focus map file")?;
            let f = parse_focus_text(&fs::read_to_string(path)?)?;
            if f.dims() != (w, h) {
                return Err(Error::DimensionMismatch {
                    expected: (w, h),
                    actual: f.dims(),
                });
            }
            f
        }
    };
    Ok(Some(focus))
}

fn read_transform(config: &PipelineConfig) -> Result<AffineTransform> {
    parse_transform(&fs::read_to_string(required(&config.transform, "transform file")?)?)
}

fn write_transform(path: &Path, t: &AffineTransform) -> Result<()> {
    let is_toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    let text = if is_toml {
        transform_to_toml(t)
    } else {
        transform_to_record(t)
    };
    fs::write(path, text)?;
    Ok(())
}

/// Path of the 8-bit visualization written next to a focus map file.
fn visualization_path(path: &Path) -> PathBuf {
    let vis = path.with_extension("pgm");
    if vis == path {
        path.with_extension("vis.pgm")
    } else {
        vis
    }
}

pub fn focus(config: &PipelineConfig) -> Result<()> {
    let reference = read_image(required(&config.reference, "reference image")?)?;
    let focus = match build_focus(config, &reference)? {
        Some(f) => f,
        None => FocusMap::uniform(reference.width(), reference.height())?,
    };
    let out = required(&config.out_focus, "focus output path (--out-focus)")?;
    fs::write(out, focus_to_text(&focus))?;
    write_gray8(visualization_path(out), focus.width(), focus.height(), &focus.to_gray8())?;
    println!(
        "focus {}x{} support {} pixels",
        focus.width(),
        focus.height(),
        focus.support_len()
    );
    Ok(())
}

fn initial_guess(config: &PipelineConfig) -> Result<Option<AffineTransform>> {
    match (&config.points, &config.test_points) {
        (Some(r), Some(t)) => {
            let reference = parse_points(&fs::read_to_string(r)?)?;
            let test = parse_points(&fs::read_to_string(t)?)?;
            fit_affine_least_squares(&reference, &test).map(Some)
        }
        (None, None) => Ok(None),
        _ => Err(Error::InvalidParameter(
            "landmark initial guess needs both --points and --test-points".into(),
        )),
    }
}

pub fn register(config: &PipelineConfig) -> Result<()> {
    let (reference, test) = load_pair(config)?;
    let focus = build_focus(config, &reference)?;
    let mut spec = config.search.clone();
    if let Some(initial) = initial_guess(config)? {
        spec.initial = initial;
    }
    let scheme = BinningScheme::new(config.bins)?;
    let result = multiresolution_register(&reference, &test, focus.as_ref(), &spec, &scheme, config.levels)?;
    println!("{} {:.12}", spec.criterion, result.best_value);
    println!("overlap {:.12}", result.overlap_fraction);
    println!("evaluations {}", result.evaluations);
    print!("transform {}", transform_to_record(&result.best));
    if let Some(path) = &config.out_transform {
        write_transform(path, &result.best)?;
    }
    if let Some(path) = &config.out_trace {
        fs::write(path, result.trace_table())?;
    }
    if let Some(path) = &config.out_subtraction {
        let sub = subtract(&reference, &test, &result.best)?;
        write_gray8(path, sub.width(), sub.height(), &sub.to_gray8())?;
    }
    if let Some(path) = &config.out_focus {
        if let Some(f) = &focus {
            fs::write(path, focus_to_text(f))?;
        }
    }
    Ok(())
}

pub fn evaluate(config: &PipelineConfig) -> Result<()> {
    let (reference, test) = load_pair(config)?;
    let focus = build_focus(config, &reference)?;
    let t = read_transform(config)?;
    let v = evaluate_all(&reference, &test, &t, &BinningScheme::new(config.bins)?, focus.as_ref())?;
    println!("MI {:.12}", v.mi);
    println!("NMI {:.12}", v.nmi);
    println!("ECC {:.12}", v.ecc);
    Ok(())
}

pub fn subtract_cmd(config: &PipelineConfig) -> Result<()> {
    let (reference, test) = load_pair(config)?;
    let t = read_transform(config)?;
    let out = required(&config.out_subtraction, "subtraction output path (--out-subtraction)")?;
    let sub = subtract(&reference, &test, &t)?;
    write_gray8(out, sub.width(), sub.height(), &sub.to_gray8())?;
    println!("overlap {} pixels", sub.overlap_count());
    Ok(())
}
