//! Measured-vs-model validation reports and plot series.
//!
//! [`fi_validation`] fits the single-frequency FI model per (frequency,
//! condition) group of measured data and compares the result against the
//! TR 38.901 InH model — either by fitting synthetic samples generated from
//! it or by reading its exact single-frequency FI reduction.
//! [`abg_validation`] does the multi-frequency analogue: one pooled ABG fit
//! per condition over a band of frequencies, compared against the InH
//! coefficients directly or against a pooled synthetic fit.
//!
//! Every comparison row carries absolute parameter deltas that are
//! recomputable from the row itself, and a provenance block recording how
//! the model side was obtained. JSON output is byte-deterministic; the
//! 2-decimal CSV/markdown renderings round half away from zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fit::{self, FitError};
use crate::io::{partition, BandSet, SampleSet};
use crate::models::{
    self, AbgParams, Condition, DomainMode, FiParams, ModelError, NlosOption, ThreeGppInhSpec,
};
use crate::synth::{self, DistanceGrid, ShadowFading, Spacing, SynthConfig, SynthError, SynthModel};

/// Errors raised while assembling or rendering a report.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("cannot render FI and ABG rows into one table")]
    MixedFamilies,
    #[error("report serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

/// How the model-side parameters of a row were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeGppSource {
    /// Fit of samples generated from the InH equations.
    FitOfSynthetic,
    /// The InH coefficients read off directly.
    DirectCoefficientRead,
}

/// Where a model-side shadow fading figure comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaProvenance {
    /// The nominal 3 / 8.03 / 8.29 dB figures.
    Nominal,
    /// The RMS residual of the synthetic-side fit.
    Fitted,
}

/// Model-side sigma handling for synthetic fits.
///
/// A noiseless synthetic fit has a zero residual, which is not what the
/// InH model states for itself; by default the nominal figure is reported
/// instead. `AlwaysFitted` keeps the raw residual, which is what a
/// self-consistency check (synthetic data on both sides) wants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaPolicy {
    NominalWhenNoiseless,
    AlwaysFitted,
}

/// Recipe for the model side of a validation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationPolicy {
    pub source: ThreeGppSource,
    /// Grid for synthetic LOS fits.
    pub los_grid: DistanceGrid,
    /// Grid for synthetic NLOS fits. Defaults to d ≥ 4 m so the LOS floor
    /// never binds and the fit recovers the raw NLOS coefficients; start it
    /// at 1 m to study the floored model instead (the fitted slope then
    /// differs slightly).
    pub nlos_grid: DistanceGrid,
    pub shadow_fading: ShadowFading,
    pub seed: u64,
    pub replicates_per_distance: usize,
    pub apply_los_floor: bool,
    pub sigma_policy: SigmaPolicy,
}

impl Default for ValidationPolicy {
    fn default() -> ValidationPolicy {
        ValidationPolicy {
            source: ThreeGppSource::FitOfSynthetic,
            los_grid: DistanceGrid::new(1.0, 100.0, 100, Spacing::Log),
            nlos_grid: DistanceGrid::new(4.0, 100.0, 100, Spacing::Log),
            shadow_fading: ShadowFading::Off,
            seed: 0,
            replicates_per_distance: 1,
            apply_los_floor: true,
            sigma_policy: SigmaPolicy::NominalWhenNoiseless,
        }
    }
}

impl ValidationPolicy {
    /// The default recipe for multi-frequency ABG comparisons, where the
    /// model side is the coefficient set itself.
    pub fn direct_read() -> ValidationPolicy {
        ValidationPolicy {
            source: ThreeGppSource::DirectCoefficientRead,
            ..ValidationPolicy::default()
        }
    }
}

/// Fitted parameters of either comparison family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelParams {
    Fi(FiParams),
    Abg(AbgParams),
}

impl ModelParams {
    fn distance_exponent(&self) -> f64 {
        match self {
            ModelParams::Fi(p) => p.distance_exponent,
            ModelParams::Abg(p) => p.distance_exponent,
        }
    }

    fn frequency_exponent(&self) -> Option<f64> {
        match self {
            ModelParams::Fi(_) => None,
            ModelParams::Abg(p) => Some(p.frequency_exponent),
        }
    }

    fn sigma_sf_db(&self) -> f64 {
        match self {
            ModelParams::Fi(p) => p.sigma_sf_db,
            ModelParams::Abg(p) => p.sigma_sf_db,
        }
    }
}

/// One model-side parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeGppSide {
    pub params: ModelParams,
    pub sigma_provenance: SigmaProvenance,
}

/// Absolute |measured − model| differences against one model side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptionDeltas {
    pub distance_exponent: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_exponent: Option<f64>,
    pub sigma_sf_db: f64,
}

/// Deltas per model side. LOS rows populate `option1` only.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Deltas {
    pub option1: Option<OptionDeltas>,
    pub option2: Option<OptionDeltas>,
}

/// Provenance block stamped into every row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub threegpp_source: ThreeGppSource,
    /// Present when the model side was fitted from synthetic samples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synth_policy: Option<ValidationPolicy>,
}

/// One comparison-table row.
///
/// NLOS rows carry both model-side option sets; LOS rows carry exactly one
/// (in `threegpp_option1`). A group whose measured side cannot be fitted is
/// kept, with `unfittable_reason` set and no deltas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub group: String,
    pub condition: Condition,
    pub measured: Option<ModelParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unfittable_reason: Option<String>,
    pub threegpp_option1: Option<ThreeGppSide>,
    pub threegpp_option2: Option<ThreeGppSide>,
    pub deltas: Deltas,
    pub provenance: Provenance,
}

fn option_deltas(measured: &ModelParams, side: &ThreeGppSide) -> OptionDeltas {
    OptionDeltas {
        distance_exponent: (measured.distance_exponent() - side.params.distance_exponent()).abs(),
        frequency_exponent: measured.frequency_exponent().and_then(|m| {
            side.params
                .frequency_exponent()
                .map(|t| (m - t).abs())
        }),
        sigma_sf_db: (measured.sigma_sf_db() - side.params.sigma_sf_db()).abs(),
    }
}

fn synth_provenance(policy: &ValidationPolicy) -> Provenance {
    Provenance {
        threegpp_source: policy.source,
        synth_policy: match policy.source {
            ThreeGppSource::FitOfSynthetic => Some(policy.clone()),
            ThreeGppSource::DirectCoefficientRead => None,
        },
    }
}

fn fitted_sigma_provenance(
    policy: &ValidationPolicy,
    nominal_sigma: f64,
    fitted: &mut f64,
) -> SigmaProvenance {
    if policy.shadow_fading.is_off() && policy.sigma_policy == SigmaPolicy::NominalWhenNoiseless {
        *fitted = nominal_sigma;
        SigmaProvenance::Nominal
    } else {
        SigmaProvenance::Fitted
    }
}

/// Model side of an FI row: the InH model reduced to (or fitted as) a
/// single-frequency FI line.
fn threegpp_fi_side(
    condition: Condition,
    option: NlosOption,
    frequency_ghz: f64,
    policy: &ValidationPolicy,
) -> Result<ThreeGppSide, ReportError> {
    match policy.source {
        ThreeGppSource::DirectCoefficientRead => {
            let params = match condition {
                Condition::Los => models::inh_los_fi_params(frequency_ghz)?,
                Condition::Nlos => models::inh_nlos_fi_params(option, frequency_ghz)?,
            };
            Ok(ThreeGppSide {
                params: ModelParams::Fi(params),
                sigma_provenance: SigmaProvenance::Nominal,
            })
        }
        ThreeGppSource::FitOfSynthetic => {
            let (spec, grid) = match condition {
                Condition::Los => (ThreeGppInhSpec::los(), policy.los_grid),
                Condition::Nlos => (
                    ThreeGppInhSpec::nlos(option, policy.apply_los_floor),
                    policy.nlos_grid,
                ),
            };
            let config = SynthConfig {
                model: SynthModel::ThreeGpp(spec),
                frequencies_ghz: vec![frequency_ghz],
                grid,
                shadow_fading: policy.shadow_fading,
                seed: policy.seed,
                replicates_per_distance: policy.replicates_per_distance,
                domain_mode: DomainMode::Strict,
            };
            let samples = synth::generate_samples(&config)?;
            let (mut params, _) = fit::fit_fi(&samples)?;
            let sigma_provenance = fitted_sigma_provenance(
                policy,
                spec.nominal_sigma_sf_db(),
                &mut params.sigma_sf_db,
            );
            Ok(ThreeGppSide {
                params: ModelParams::Fi(params),
                sigma_provenance,
            })
        }
    }
}

/// Model side of an ABG row.
fn threegpp_abg_side(
    condition: Condition,
    option: NlosOption,
    band: &BandSet,
    policy: &ValidationPolicy,
) -> Result<ThreeGppSide, ReportError> {
    match policy.source {
        ThreeGppSource::DirectCoefficientRead => {
            let params = match condition {
                Condition::Los => models::inh_los_abg_params(),
                Condition::Nlos => models::inh_nlos_abg_params(option),
            };
            Ok(ThreeGppSide {
                params: ModelParams::Abg(params),
                sigma_provenance: SigmaProvenance::Nominal,
            })
        }
        ThreeGppSource::FitOfSynthetic => {
            let (spec, grid) = match condition {
                Condition::Los => (ThreeGppInhSpec::los(), policy.los_grid),
                Condition::Nlos => (
                    ThreeGppInhSpec::nlos(option, policy.apply_los_floor),
                    policy.nlos_grid,
                ),
            };
            let config = SynthConfig {
                model: SynthModel::ThreeGpp(spec),
                frequencies_ghz: band.member_frequencies_ghz.clone(),
                grid,
                shadow_fading: policy.shadow_fading,
                seed: policy.seed,
                replicates_per_distance: policy.replicates_per_distance,
                domain_mode: DomainMode::Strict,
            };
            let samples = synth::generate_samples(&config)?;
            let (mut params, _) = fit::fit_abg(&samples)?;
            let sigma_provenance = fitted_sigma_provenance(
                policy,
                spec.nominal_sigma_sf_db(),
                &mut params.sigma_sf_db,
            );
            Ok(ThreeGppSide {
                params: ModelParams::Abg(params),
                sigma_provenance,
            })
        }
    }
}

fn assemble_row(
    group: String,
    condition: Condition,
    measured: Result<ModelParams, String>,
    option1: ThreeGppSide,
    option2: Option<ThreeGppSide>,
    policy: &ValidationPolicy,
) -> ComparisonRow {
    let (measured, unfittable_reason) = match measured {
        Ok(params) => (Some(params), None),
        Err(reason) => (None, Some(reason)),
    };
    let deltas = match &measured {
        Some(m) => Deltas {
            option1: Some(option_deltas(m, &option1)),
            option2: option2.as_ref().map(|side| option_deltas(m, side)),
        },
        None => Deltas::default(),
    };
    ComparisonRow {
        group,
        condition,
        measured,
        unfittable_reason,
        threegpp_option1: Some(option1),
        threegpp_option2: option2,
        deltas,
        provenance: synth_provenance(policy),
    }
}

/// Builds one FI comparison row from already-fitted (or externally
/// published) measured-side parameters.
pub fn fi_comparison_row(
    frequency_ghz: f64,
    condition: Condition,
    measured: Result<FiParams, String>,
    policy: &ValidationPolicy,
) -> Result<ComparisonRow, ReportError> {
    let option1 = threegpp_fi_side(condition, NlosOption::Option1, frequency_ghz, policy)?;
    let option2 = match condition {
        Condition::Los => None,
        Condition::Nlos => Some(threegpp_fi_side(
            condition,
            NlosOption::Option2,
            frequency_ghz,
            policy,
        )?),
    };
    Ok(assemble_row(
        format!("{frequency_ghz} GHz"),
        condition,
        measured.map(ModelParams::Fi),
        option1,
        option2,
        policy,
    ))
}

/// Builds one ABG comparison row from already-fitted (or externally
/// published) measured-side parameters.
pub fn abg_comparison_row(
    band: &BandSet,
    condition: Condition,
    measured: Result<AbgParams, String>,
    policy: &ValidationPolicy,
) -> Result<ComparisonRow, ReportError> {
    let option1 = threegpp_abg_side(condition, NlosOption::Option1, band, policy)?;
    let option2 = match condition {
        Condition::Los => None,
        Condition::Nlos => Some(threegpp_abg_side(
            condition,
            NlosOption::Option2,
            band,
            policy,
        )?),
    };
    Ok(assemble_row(
        band.name.clone(),
        condition,
        measured.map(ModelParams::Abg),
        option1,
        option2,
        policy,
    ))
}

/// Per-frequency FI validation of measured data against the InH model.
///
/// The measured set is split into (frequency, condition) groups and each
/// group is FI-fitted; groups that cannot be fitted yield rows marked
/// unfittable without affecting the rest.
pub fn fi_validation(
    measured: &SampleSet,
    policy: &ValidationPolicy,
) -> Result<Vec<ComparisonRow>, ReportError> {
    let groups = partition(measured, true, true, None);
    let mut rows = Vec::with_capacity(groups.groups.len());
    for (key, samples) in &groups.groups {
        let frequency = key.frequency_ghz.expect("partitioned by frequency");
        let condition = key.condition.expect("partitioned by condition");
        let fitted = fit::fit_fi(samples)
            .map(|(params, _)| params)
            .map_err(|e| e.to_string());
        rows.push(fi_comparison_row(frequency, condition, fitted, policy)?);
    }
    Ok(rows)
}

/// Pooled multi-frequency ABG validation over a band.
///
/// Band-filters the measured set, fits one ABG model per condition on the
/// pooled samples, and compares against the InH coefficients. Unlike the FI
/// flow, a rank-deficient pooled fit (e.g. a single distinct frequency
/// after filtering) is a hard error.
pub fn abg_validation(
    measured: &SampleSet,
    band: &BandSet,
    policy: &ValidationPolicy,
) -> Result<Vec<ComparisonRow>, ReportError> {
    let groups = partition(measured, true, false, Some(band));
    let mut rows = Vec::with_capacity(groups.groups.len());
    for (key, samples) in &groups.groups {
        let condition = key.condition.expect("partitioned by condition");
        let (params, _) = fit::fit_abg(samples)?;
        rows.push(abg_comparison_row(band, condition, Ok(params), policy)?);
    }
    Ok(rows)
}

/// Output format of [`render_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Full-precision structured output.
    Json,
    /// 2-decimal table, one line per row.
    Csv,
    /// 2-decimal pipe table.
    Markdown,
}

/// Rounds half away from zero at 2 decimals and formats with exactly
/// two digits.
fn format_2dp(value: f64) -> String {
    let mut rounded = (value * 100.0).round() / 100.0;
    if rounded == 0.0 {
        rounded = 0.0; // normalize -0.00
    }
    format!("{rounded:.2}")
}

fn dual_cell(a: Option<f64>, b: Option<f64>) -> String {
    match (a, b) {
        (Some(a), Some(b)) => format!("{}/{}", format_2dp(a), format_2dp(b)),
        (Some(a), None) => format_2dp(a),
        _ => "-".to_string(),
    }
}

#[derive(PartialEq, Clone, Copy)]
enum RowFamily {
    Fi,
    Abg,
}

fn row_family(row: &ComparisonRow) -> Result<RowFamily, ReportError> {
    match row
        .threegpp_option1
        .as_ref()
        .map(|s| s.params)
        .or(row.measured)
    {
        Some(ModelParams::Fi(_)) => Ok(RowFamily::Fi),
        Some(ModelParams::Abg(_)) => Ok(RowFamily::Abg),
        None => Ok(RowFamily::Fi),
    }
}

fn table_cells(row: &ComparisonRow, family: RowFamily) -> Vec<String> {
    let m = row.measured.as_ref();
    let t1 = row.threegpp_option1.as_ref().map(|s| s.params);
    let t2 = row.threegpp_option2.as_ref().map(|s| s.params);
    let d1 = row.deltas.option1;
    let d2 = row.deltas.option2;

    let measured_cell = |f: &dyn Fn(&ModelParams) -> f64| match m {
        Some(p) => format_2dp(f(p)),
        None => "-".to_string(),
    };
    let model_cell = |f: &dyn Fn(&ModelParams) -> f64| {
        dual_cell(t1.as_ref().map(f), t2.as_ref().map(f))
    };
    let delta_cell = |f: &dyn Fn(&OptionDeltas) -> f64| {
        dual_cell(d1.as_ref().map(f), d2.as_ref().map(f))
    };

    let mut cells = vec![row.group.clone(), row.condition.to_string()];
    match family {
        RowFamily::Fi => {
            let intercept = |p: &ModelParams| match p {
                ModelParams::Fi(p) => p.intercept_db,
                ModelParams::Abg(_) => f64::NAN,
            };
            cells.push(measured_cell(&intercept));
            cells.push(measured_cell(&|p| p.distance_exponent()));
            cells.push(measured_cell(&|p| p.sigma_sf_db()));
            cells.push(model_cell(&intercept));
            cells.push(model_cell(&|p| p.distance_exponent()));
            cells.push(model_cell(&|p| p.sigma_sf_db()));
            cells.push(delta_cell(&|d| d.distance_exponent));
            cells.push(delta_cell(&|d| d.sigma_sf_db));
        }
        RowFamily::Abg => {
            let offset = |p: &ModelParams| match p {
                ModelParams::Abg(p) => p.offset_db,
                ModelParams::Fi(_) => f64::NAN,
            };
            let freq_exp = |p: &ModelParams| p.frequency_exponent().unwrap_or(f64::NAN);
            cells.push(measured_cell(&|p| p.distance_exponent()));
            cells.push(measured_cell(&offset));
            cells.push(measured_cell(&freq_exp));
            cells.push(measured_cell(&|p| p.sigma_sf_db()));
            cells.push(model_cell(&|p| p.distance_exponent()));
            cells.push(model_cell(&offset));
            cells.push(model_cell(&freq_exp));
            cells.push(model_cell(&|p| p.sigma_sf_db()));
            cells.push(delta_cell(&|d| d.distance_exponent));
            cells.push(delta_cell(&|d| d.frequency_exponent.unwrap_or(f64::NAN)));
            cells.push(delta_cell(&|d| d.sigma_sf_db));
        }
    }
    cells.push(row.unfittable_reason.clone().unwrap_or_default());
    cells
}

const FI_HEADER: [&str; 11] = [
    "group",
    "condition",
    "measured_intercept_db",
    "measured_distance_exponent",
    "measured_sigma_sf_db",
    "threegpp_intercept_db",
    "threegpp_distance_exponent",
    "threegpp_sigma_sf_db",
    "delta_distance_exponent",
    "delta_sigma_sf_db",
    "note",
];

const ABG_HEADER: [&str; 14] = [
    "group",
    "condition",
    "measured_distance_exponent",
    "measured_offset_db",
    "measured_frequency_exponent",
    "measured_sigma_sf_db",
    "threegpp_distance_exponent",
    "threegpp_offset_db",
    "threegpp_frequency_exponent",
    "threegpp_sigma_sf_db",
    "delta_distance_exponent",
    "delta_frequency_exponent",
    "delta_sigma_sf_db",
    "note",
];

/// Renders comparison rows as a document.
///
/// JSON preserves raw unrounded values; CSV and markdown render the
/// comparison-table layout with 2-decimal cells and dual NLOS option cells
/// rendered `x/y`. An empty row list yields a valid document with a header.
pub fn render_report(rows: &[ComparisonRow], format: ReportFormat) -> Result<String, ReportError> {
    if format == ReportFormat::Json {
        let mut doc = serde_json::to_string_pretty(rows)?;
        doc.push('\n');
        return Ok(doc);
    }

    let family = match rows.first() {
        None => RowFamily::Fi,
        Some(first) => {
            let family = row_family(first)?;
            for row in rows {
                if row_family(row)? != family {
                    return Err(ReportError::MixedFamilies);
                }
            }
            family
        }
    };
    let header: Vec<&str> = match family {
        RowFamily::Fi => FI_HEADER.to_vec(),
        RowFamily::Abg => ABG_HEADER.to_vec(),
    };

    let mut doc = String::new();
    match format {
        ReportFormat::Csv => {
            doc.push_str(&header.join(","));
            doc.push('\n');
            for row in rows {
                doc.push_str(&table_cells(row, family).join(","));
                doc.push('\n');
            }
        }
        ReportFormat::Markdown => {
            doc.push_str(&format!("| {} |\n", header.join(" | ")));
            doc.push_str(&format!("|{}\n", " --- |".repeat(header.len())));
            for row in rows {
                doc.push_str(&format!("| {} |\n", table_cells(row, family).join(" | ")));
            }
        }
        ReportFormat::Json => unreachable!(),
    }
    Ok(doc)
}

/// Kind of a plot series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Scatter,
    Line,
}

/// One plottable series of (distance_m, path_loss_db) points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSeries {
    pub name: String,
    pub kind: SeriesKind,
    pub points: Vec<[f64; 2]>,
}

impl PlotSeries {
    /// Two-column CSV of the series.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance_m,path_loss_db\n");
        for [d, pl] in &self.points {
            out.push_str(&format!("{d},{pl}\n"));
        }
        out
    }
}

/// Scatter plus model-line series for one figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotBundle {
    pub series: Vec<PlotSeries>,
}

impl PlotBundle {
    pub fn to_json(&self) -> Result<String, ReportError> {
        let mut doc = serde_json::to_string_pretty(self)?;
        doc.push('\n');
        Ok(doc)
    }
}

/// A named model evaluated as a line series.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotModel {
    pub name: String,
    pub model: SynthModel,
    pub frequency_ghz: f64,
}

/// Emits one scatter series per measured condition and one line series per
/// named model sampled on the grid. Distances are raw; log axes are the
/// plotter's concern. Models are evaluated permissively so lines may extend
/// beyond the strict domain.
pub fn emit_plot_data(
    measured: &SampleSet,
    models: &[PlotModel],
    grid: &DistanceGrid,
) -> Result<PlotBundle, ReportError> {
    let mut series = Vec::new();
    for condition in [Condition::Los, Condition::Nlos] {
        let points: Vec<[f64; 2]> = measured
            .samples
            .iter()
            .filter(|s| s.condition == condition)
            .map(|s| [s.distance_m, s.path_loss_db])
            .collect();
        if !points.is_empty() {
            series.push(PlotSeries {
                name: format!("measured-{}", condition.to_string().to_lowercase()),
                kind: SeriesKind::Scatter,
                points,
            });
        }
    }
    let distances = grid.distances()?;
    for model in models {
        let mut points = Vec::with_capacity(distances.len());
        for &d in &distances {
            let pl = model
                .model
                .mean_path_loss(d, model.frequency_ghz, DomainMode::Permissive)?;
            points.push([d, pl]);
        }
        series.push(PlotSeries {
            name: model.name.clone(),
            kind: SeriesKind::Line,
            points,
        });
    }
    Ok(PlotBundle { series })
}
