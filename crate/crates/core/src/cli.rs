//! `thermoscope` command-line front end.
//!
//! Exit codes: 0 success, 1 round-trip check failed, 2 input could not be
//! read or decoded, 3 output could not be written, 4 degenerate data
//! (uniform image, invalid calibration, undefined metric), 5 usage error.
//!
//! Every command prints a short human-readable summary on stdout. `--json`
//! prints the JSON report instead, and `--report <path>` also writes it to a
//! file. The report always carries the full effective configuration.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::colormap::{legend_strip, pseudocolor};
use crate::estimation::{
    accuracy, roi_temperature, temperature_map, Aggregator, CalibrationRange, EstimationError, ValidationReport,
};
use crate::imaging::{
    crop, decode, encode, intensity_extent, red_channel, sniff_format, GrayImage, ImageError, ImageFormat,
    IntensityExtent, RgbImage, Roi,
};
use crate::synthesis::{
    render, round_trip_bound, round_trip_error, SceneKind, SynthesisError, SyntheticScene, FLOAT_SLACK,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_DECODE: i32 = 2;
pub const EXIT_WRITE: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_USAGE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "thermoscope",
    version,
    about = "Estimate temperatures from the red channel of RGB images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render the red channel of an image as a jet pseudocolor image.
    Pseudocolor(PseudocolorArgs),
    /// Estimate the temperature of a rectangular region.
    Estimate(EstimateArgs),
    /// Compare an estimate against reference readings.
    Validate(ValidateArgs),
    /// Generate a synthetic scene image and its ground-truth field.
    Synth(SynthArgs),
    /// Check the pipeline against a synthetic scene.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtentScope {
    /// Intensity extent of the whole decoded frame.
    #[default]
    Frame,
    /// Intensity extent of the ROI only.
    Roi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Png,
    Ppm,
}

impl From<FormatArg> for ImageFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Png => ImageFormat::Png,
            FormatArg::Ppm => ImageFormat::Ppm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AggregatorArg {
    Mean,
    Median,
    Max,
}

impl From<AggregatorArg> for Aggregator {
    fn from(a: AggregatorArg) -> Self {
        match a {
            AggregatorArg::Mean => Aggregator::Mean,
            AggregatorArg::Median => Aggregator::Median,
            AggregatorArg::Max => Aggregator::Max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Noise,
    Hotspots,
}

impl From<KindArg> for SceneKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Noise => SceneKind::Noise,
            KindArg::Hotspots => SceneKind::Hotspots,
        }
    }
}

#[derive(Debug, Args)]
struct CalArgs {
    /// Temperature mapped to the lowest intensity, °C.
    #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
    t_low: f64,
    /// Temperature mapped to the highest intensity, °C.
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    t_high: f64,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct PseudocolorArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Output format; defaults to the output file extension, then png.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write a 256x16 colour bar to this path.
    #[arg(long)]
    legend: Option<PathBuf>,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct RegionArgs {
    /// Region as x,y,w,h in pixels.
    #[arg(long)]
    roi: Option<String>,
    #[arg(long, value_enum, default_value_t = ExtentScope::Frame)]
    extent_scope: ExtentScope,
    #[arg(long, value_enum, default_value_t = AggregatorArg::Mean)]
    aggregator: AggregatorArg,
    #[command(flatten)]
    cal: CalArgs,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[command(flatten)]
    region: RegionArgs,
    /// Write the pseudocolor rendering of the frame to this path.
    #[arg(long)]
    pseudocolor: Option<PathBuf>,
    /// Reference readings in °C; adds a validation block.
    #[arg(long = "reference", allow_negative_numbers = true)]
    references: Vec<f64>,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Estimated temperature in °C; otherwise estimated from --input/--roi.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "input")]
    estimated: Option<f64>,
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    region: RegionArgs,
    #[arg(long = "reference", allow_negative_numbers = true)]
    references: Vec<f64>,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct SceneArgs {
    #[arg(long, default_value_t = 64)]
    width: usize,
    #[arg(long, default_value_t = 64)]
    height: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = KindArg::Noise)]
    kind: KindArg,
    #[command(flatten)]
    cal: CalArgs,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    scene: SceneArgs,
    /// Rendered image path.
    #[arg(short, long)]
    output: PathBuf,
    /// Ground-truth field path (plain-text scene file).
    #[arg(long)]
    field: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct RoundtripArgs {
    #[command(flatten)]
    scene: SceneArgs,
    /// Load the scene from a field file instead of generating one.
    #[arg(long)]
    field: Option<PathBuf>,
    #[command(flatten)]
    report: ReportArgs,
}

/// Effective configuration echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub roi: Option<Roi>,
    pub calibration: CalibrationJson,
    pub extent_scope: Option<ExtentScope>,
    pub aggregator: Option<Aggregator>,
    pub references_c: Vec<f64>,
    pub estimated_c: Option<f64>,
    pub format: Option<&'static str>,
    pub report: Option<PathBuf>,
    pub pseudocolor: Option<PathBuf>,
    pub legend: Option<PathBuf>,
    pub field: Option<PathBuf>,
    pub scene: Option<SceneJson>,
}

impl RunConfig {
    fn new(command: &'static str) -> Self {
        RunConfig {
            command,
            input: None,
            output: None,
            roi: None,
            calibration: CalibrationJson::from(CalibrationRange::default()),
            extent_scope: None,
            aggregator: None,
            references_c: Vec::new(),
            estimated_c: None,
            format: None,
            report: None,
            pseudocolor: None,
            legend: None,
            field: None,
            scene: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationJson {
    pub t_low_c: f64,
    pub t_high_c: f64,
}

impl From<CalibrationRange> for CalibrationJson {
    fn from(c: CalibrationRange) -> Self {
        CalibrationJson {
            t_low_c: c.t_low(),
            t_high_c: c.t_high(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneJson {
    pub width: usize,
    pub height: usize,
    pub seed: u64,
    pub kind: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoiStatsJson {
    pub mean: f64,
    pub median: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationJson {
    pub estimated_c: f64,
    pub references_c: Vec<f64>,
    pub mean_reference_c: f64,
    pub abs_error_c: f64,
    pub accuracy_pct: f64,
    pub accuracy_display: String,
}

impl From<&ValidationReport> for ValidationJson {
    fn from(r: &ValidationReport) -> Self {
        ValidationJson {
            estimated_c: r.estimated,
            references_c: r.references.clone(),
            mean_reference_c: r.mean_reference,
            abs_error_c: r.abs_error,
            accuracy_pct: r.accuracy_pct,
            accuracy_display: r.accuracy_display(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripJson {
    pub max_abs_error_c: f64,
    pub bound_c: f64,
    pub within_bound: bool,
}

/// JSON report. Blocks that do not apply to a command are omitted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extent: Option<IntensityExtent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roi_temperature_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roi_statistics_c: Option<RoiStatsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<RoundtripJson>,
}

impl Report {
    fn new(config: RunConfig) -> Self {
        Report {
            command: config.command,
            config,
            extent: None,
            roi_temperature_c: None,
            roi_statistics_c: None,
            validation: None,
            roundtrip: None,
        }
    }
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<EstimationError> for Failure {
    fn from(e: EstimationError) -> Self {
        let code = match &e {
            EstimationError::Image(ImageError::RoiOutOfBounds { .. }) | EstimationError::NoReferences => EXIT_USAGE,
            _ => EXIT_DEGENERATE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ImageError> for Failure {
    fn from(e: ImageError) -> Self {
        let code = match e {
            ImageError::RoiOutOfBounds { .. } => EXIT_USAGE,
            _ => EXIT_DEGENERATE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<SynthesisError> for Failure {
    fn from(e: SynthesisError) -> Self {
        match e {
            SynthesisError::Calibration(inner) => inner.into(),
            SynthesisError::Parse { .. } => Failure::new(EXIT_DECODE, e.to_string()),
            SynthesisError::TooSmall { .. } => Failure::new(EXIT_USAGE, e.to_string()),
            _ => Failure::new(EXIT_DEGENERATE, e.to_string()),
        }
    }
}

type CmdResult = Result<(Report, String), Failure>;

/// Parses `args` (including the program name) and runs one command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let (report_args, outcome) = match &cli.command {
        Command::Pseudocolor(a) => (&a.report, cmd_pseudocolor(a)),
        Command::Estimate(a) => (&a.report, cmd_estimate(a)),
        Command::Validate(a) => (&a.report, cmd_validate(a)),
        Command::Synth(a) => (&a.report, cmd_synth(a)),
        Command::Roundtrip(a) => (&a.report, cmd_roundtrip(a)),
    };

    match outcome.and_then(|(report, summary)| emit(&report, &summary, report_args, stdout)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(report: &Report, summary: &str, args: &ReportArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    if let Some(path) = &args.report {
        write_file(path, format!("{json}\n").as_bytes())?;
    }
    let text = if args.json { json } else { summary.trim_end().to_owned() };
    let _ = writeln!(stdout, "{text}");
    let failed = report.roundtrip.as_ref().is_some_and(|r| !r.within_bound);
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::new(EXIT_WRITE, format!("cannot write {}: {e}", path.display())))
}

fn read_image(path: &Path) -> Result<RgbImage, Failure> {
    let bytes =
        fs::read(path).map_err(|e| Failure::new(EXIT_DECODE, format!("cannot read {}: {e}", path.display())))?;
    let format = sniff_format(&bytes)
        .or_else(|| ImageFormat::from_path(path))
        .ok_or_else(|| Failure::new(EXIT_DECODE, format!("{}: not a PNG or binary PPM file", path.display())))?;
    decode(&bytes, format).map_err(|e| Failure::new(EXIT_DECODE, format!("{}: {e}", path.display())))
}

fn write_image(path: &Path, img: &RgbImage, format: ImageFormat) -> Result<(), Failure> {
    let bytes = encode(img, format).map_err(|e| Failure::new(EXIT_WRITE, e.to_string()))?;
    write_file(path, &bytes)
}

fn output_format(path: &Path, explicit: Option<FormatArg>) -> ImageFormat {
    explicit
        .map(ImageFormat::from)
        .or_else(|| ImageFormat::from_path(path))
        .unwrap_or(ImageFormat::Png)
}

fn calibration(args: &CalArgs) -> Result<CalibrationRange, Failure> {
    Ok(CalibrationRange::new(args.t_low, args.t_high)?)
}

fn cmd_pseudocolor(a: &PseudocolorArgs) -> CmdResult {
    let img = read_image(&a.input)?;
    let format = output_format(&a.output, a.format);
    let gray = red_channel(&img);
    write_image(&a.output, &pseudocolor(&gray), format)?;
    if let Some(legend) = &a.legend {
        write_image(legend, &legend_strip(256, 16), output_format(legend, a.format))?;
    }

    let mut config = RunConfig::new("pseudocolor");
    config.input = Some(a.input.clone());
    config.output = Some(a.output.clone());
    config.format = Some(format.as_str());
    config.report = a.report.report.clone();
    config.legend = a.legend.clone();
    let mut report = Report::new(config);
    let extent = intensity_extent(&gray)?;
    report.extent = Some(extent);
    let summary = format!(
        "pseudocolor {}x{} -> {} ({format})\nred extent [{}, {}]",
        img.width(),
        img.height(),
        a.output.display(),
        extent.i_min,
        extent.i_max
    );
    Ok((report, summary))
}

struct RegionEstimate {
    extent: IntensityExtent,
    stats: RoiStatsJson,
    selected: f64,
}

fn estimate_region(
    gray: &GrayImage,
    roi: Roi,
    region: &RegionArgs,
    cal: CalibrationRange,
) -> Result<RegionEstimate, Failure> {
    roi.check_within(gray.width(), gray.height())?;
    let (field, roi_in_field) = match region.extent_scope {
        ExtentScope::Frame => (gray.clone(), roi),
        ExtentScope::Roi => {
            let c = crop(gray, roi)?;
            let full = Roi::full(&c);
            (c, full)
        }
    };
    let extent = intensity_extent(&field)?;
    let map = temperature_map(&field, cal, extent)?;
    let stat = |how| roi_temperature(&map, roi_in_field, how);
    let stats = RoiStatsJson {
        mean: stat(Aggregator::Mean)?,
        median: stat(Aggregator::Median)?,
        max: stat(Aggregator::Max)?,
    };
    let selected = match Aggregator::from(region.aggregator) {
        Aggregator::Mean => stats.mean,
        Aggregator::Median => stats.median,
        Aggregator::Max => stats.max,
    };
    Ok(RegionEstimate {
        extent,
        stats,
        selected,
    })
}

fn parse_roi(region: &RegionArgs) -> Result<Roi, Failure> {
    let text = region
        .roi
        .as_deref()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "--roi x,y,w,h is required"))?;
    text.parse()
        .map_err(|e: crate::imaging::ParseRoiError| Failure::new(EXIT_USAGE, e.to_string()))
}

fn region_config(config: &mut RunConfig, region: &RegionArgs, roi: Roi, cal: CalibrationRange) {
    config.roi = Some(roi);
    config.calibration = cal.into();
    config.extent_scope = Some(region.extent_scope);
    config.aggregator = Some(region.aggregator.into());
}

fn region_summary(
    roi: Roi,
    cal: CalibrationRange,
    scope: ExtentScope,
    est: &RegionEstimate,
    how: Aggregator,
) -> String {
    format!(
        "roi {roi}  calibration {}..{} °C  extent {} [{}, {}]\n\
         mean {:.6} °C  median {:.6} °C  max {:.6} °C\n\
         roi temperature ({how}): {:.6} °C",
        cal.t_low(),
        cal.t_high(),
        match scope {
            ExtentScope::Frame => "frame",
            ExtentScope::Roi => "roi",
        },
        est.extent.i_min,
        est.extent.i_max,
        est.stats.mean,
        est.stats.median,
        est.stats.max,
        est.selected,
    )
}

fn validation_summary(v: &ValidationReport) -> String {
    format!(
        "estimated {} °C  reference mean {} °C  abs error {:.6} °C\naccuracy {:.6}% ({})",
        v.estimated,
        v.mean_reference,
        v.abs_error,
        v.accuracy_pct,
        v.accuracy_display()
    )
}

fn cmd_estimate(a: &EstimateArgs) -> CmdResult {
    let roi = parse_roi(&a.region)?;
    let cal = calibration(&a.region.cal)?;
    let img = read_image(&a.input)?;
    let gray = red_channel(&img);
    let est = estimate_region(&gray, roi, &a.region, cal)?;

    if let Some(path) = &a.pseudocolor {
        write_image(path, &pseudocolor(&gray), output_format(path, None))?;
    }

    let mut config = RunConfig::new("estimate");
    config.input = Some(a.input.clone());
    region_config(&mut config, &a.region, roi, cal);
    config.references_c = a.references.clone();
    config.pseudocolor = a.pseudocolor.clone();
    config.report = a.report.report.clone();

    let how = Aggregator::from(a.region.aggregator);
    let mut summary = region_summary(roi, cal, a.region.extent_scope, &est, how);
    let mut report = Report::new(config);
    report.extent = Some(est.extent);
    report.roi_temperature_c = Some(est.selected);
    report.roi_statistics_c = Some(est.stats);
    if !a.references.is_empty() {
        let v = accuracy(est.selected, &a.references)?;
        summary = format!("{summary}\n{}", validation_summary(&v));
        report.validation = Some((&v).into());
    }
    Ok((report, summary))
}

fn cmd_validate(a: &ValidateArgs) -> CmdResult {
    if a.references.is_empty() {
        return Err(Failure::new(EXIT_USAGE, "at least one --reference is required"));
    }
    let mut config = RunConfig::new("validate");
    config.references_c = a.references.clone();
    config.report = a.report.report.clone();

    let mut report;
    let mut summary = String::new();
    let estimated = match (a.estimated, &a.input) {
        (Some(t), _) => {
            config.estimated_c = Some(t);
            report = Report::new(config);
            t
        }
        (None, Some(input)) => {
            let roi = parse_roi(&a.region)?;
            let cal = calibration(&a.region.cal)?;
            let gray = red_channel(&read_image(input)?);
            let est = estimate_region(&gray, roi, &a.region, cal)?;
            config.input = Some(input.clone());
            region_config(&mut config, &a.region, roi, cal);
            let how = Aggregator::from(a.region.aggregator);
            summary = format!("{}\n", region_summary(roi, cal, a.region.extent_scope, &est, how));
            report = Report::new(config);
            report.extent = Some(est.extent);
            report.roi_temperature_c = Some(est.selected);
            report.roi_statistics_c = Some(est.stats);
            est.selected
        }
        (None, None) => {
            return Err(Failure::new(
                EXIT_USAGE,
                "either --estimated or --input with --roi is required",
            ))
        }
    };
    let v = accuracy(estimated, &a.references)?;
    summary.push_str(&validation_summary(&v));
    report.validation = Some((&v).into());
    Ok((report, summary))
}

fn scene_from_args(args: &SceneArgs) -> Result<SyntheticScene, Failure> {
    let cal = calibration(&args.cal)?;
    Ok(SyntheticScene::generate(
        args.kind.into(),
        args.width,
        args.height,
        cal,
        args.seed,
    )?)
}

fn scene_json(args: &SceneArgs) -> SceneJson {
    SceneJson {
        width: args.width,
        height: args.height,
        seed: args.seed,
        kind: Some(match args.kind {
            KindArg::Noise => "noise",
            KindArg::Hotspots => "hotspots",
        }),
    }
}

fn cmd_synth(a: &SynthArgs) -> CmdResult {
    let scene = scene_from_args(&a.scene)?;
    let format = output_format(&a.output, a.format);
    write_image(&a.output, &render(&scene), format)?;
    write_file(&a.field, scene.to_text().as_bytes())?;

    let mut config = RunConfig::new("synth");
    config.output = Some(a.output.clone());
    config.field = Some(a.field.clone());
    config.format = Some(format.as_str());
    config.calibration = scene.calibration().into();
    config.scene = Some(scene_json(&a.scene));
    config.report = a.report.report.clone();
    let summary = format!(
        "scene {}x{} seed {} -> {} ({format}), field -> {}",
        scene.width(),
        scene.height(),
        scene.seed(),
        a.output.display(),
        a.field.display()
    );
    Ok((Report::new(config), summary))
}

fn cmd_roundtrip(a: &RoundtripArgs) -> CmdResult {
    let mut config = RunConfig::new("roundtrip");
    let scene = match &a.field {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_DECODE, format!("cannot read {}: {e}", path.display())))?;
            let scene = SyntheticScene::from_text(&text)?;
            config.field = Some(path.clone());
            config.scene = Some(SceneJson {
                width: scene.width(),
                height: scene.height(),
                seed: scene.seed(),
                kind: None,
            });
            scene
        }
        None => {
            config.scene = Some(scene_json(&a.scene));
            scene_from_args(&a.scene)?
        }
    };
    config.calibration = scene.calibration().into();
    config.report = a.report.report.clone();

    let err = round_trip_error(&scene)?;
    let bound = round_trip_bound(scene.calibration());
    let within = err <= bound + FLOAT_SLACK;
    let mut report = Report::new(config);
    report.roundtrip = Some(RoundtripJson {
        max_abs_error_c: err,
        bound_c: bound,
        within_bound: within,
    });
    let summary = format!(
        "max_abs_error {err:.6} °C\nbound {bound:.6} °C\nwithin bound: {}",
        if within { "yes" } else { "no" }
    );
    Ok((report, summary))
}
