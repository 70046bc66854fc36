//! Path loss model evaluators.
//!
//! Every function here returns the deterministic *mean* path loss in dB;
//! shadow fading is a generative concern and lives in [`crate::synth`].
//!
//! Model families:
//!
//! - **FSPL** — free-space path loss at a 1 m reference distance, the anchor
//!   of the CI model.
//! - **FI** (floating intercept) — single-frequency line in log-distance,
//!   `PL = intercept + 10·b·log10(d)`.
//! - **ABG** (alpha-beta-gamma) — multi-frequency,
//!   `PL = offset + 10·α·log10(d) + 10·γ·log10(f)`.
//! - **CI** (close-in) — `PL = FSPL(1 m, f) + 10·n·log10(d)`.
//! - **TR 38.901 InH** — the indoor-hotspot LOS and NLOS (Option1/Option2)
//!   equations. These are exact ABG instances and are evaluated through the
//!   ABG path so the equivalence holds bitwise.
//!
//! The FI and ABG parameter structs spell out field roles instead of using
//! bare α/β symbols: the two families use those letters with swapped
//! meanings, which is a reliable source of bugs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Errors raised by the model evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// An input that must be a positive finite real was not.
    #[error("{quantity} must be positive and finite, got {value}")]
    NonPositive { quantity: &'static str, value: f64 },
    /// Strict-mode evaluation outside the model's stated domain.
    #[error("{quantity} = {value} is outside the model domain [{min}, {max}]")]
    OutOfDomain {
        quantity: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    /// A parameter set violates its own invariants.
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
}

/// Line-of-sight condition of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "LOS")]
    Los,
    #[serde(rename = "NLOS")]
    Nlos,
}

impl Condition {
    /// Case-insensitive parse of "LOS"/"NLOS".
    pub fn parse(text: &str) -> Option<Condition> {
        match text.trim().to_ascii_uppercase().as_str() {
            "LOS" => Some(Condition::Los),
            "NLOS" => Some(Condition::Nlos),
            _ => None,
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::Los => "LOS",
            Condition::Nlos => "NLOS",
        })
    }
}

/// The two alternative NLOS coefficient sets of the TR 38.901 InH model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NlosOption {
    #[serde(rename = "option1")]
    Option1,
    #[serde(rename = "option2")]
    Option2,
}

impl std::fmt::Display for NlosOption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NlosOption::Option1 => "Option1",
            NlosOption::Option2 => "Option2",
        })
    }
}

/// Domain enforcement for the TR 38.901 evaluators.
///
/// `Strict` rejects inputs outside 1–150 m / 0.5–100 GHz; `Permissive`
/// evaluates anyway and attaches a warning, for callers that extrapolate
/// deliberately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainMode {
    #[default]
    Strict,
    Permissive,
}

/// A domain-checked evaluation result.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub path_loss_db: f64,
    /// Present when the input lies outside the model's stated domain and
    /// evaluation proceeded in [`DomainMode::Permissive`].
    pub domain_warning: Option<String>,
}

/// Floating-intercept model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiParams {
    /// Intercept at 1 m in dB.
    pub intercept_db: f64,
    /// Dimensionless slope on 10·log10(d).
    pub distance_exponent: f64,
    /// Shadow fading standard deviation in dB, ≥ 0.
    pub sigma_sf_db: f64,
}

impl FiParams {
    pub fn new(intercept_db: f64, distance_exponent: f64, sigma_sf_db: f64) -> FiParams {
        FiParams {
            intercept_db,
            distance_exponent,
            sigma_sf_db,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        finite_params(&[
            ("intercept_db", self.intercept_db),
            ("distance_exponent", self.distance_exponent),
        ])?;
        sigma_check(self.sigma_sf_db)
    }
}

/// Alpha-beta-gamma model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbgParams {
    /// Dimensionless slope on 10·log10(d) (the family's α).
    pub distance_exponent: f64,
    /// Optimized offset in dB (the family's β, devoid of physical meaning).
    pub offset_db: f64,
    /// Dimensionless slope on 10·log10(f) (the family's γ).
    pub frequency_exponent: f64,
    /// Shadow fading standard deviation in dB, ≥ 0.
    pub sigma_sf_db: f64,
}

impl AbgParams {
    pub fn new(
        distance_exponent: f64,
        offset_db: f64,
        frequency_exponent: f64,
        sigma_sf_db: f64,
    ) -> AbgParams {
        AbgParams {
            distance_exponent,
            offset_db,
            frequency_exponent,
            sigma_sf_db,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        finite_params(&[
            ("distance_exponent", self.distance_exponent),
            ("offset_db", self.offset_db),
            ("frequency_exponent", self.frequency_exponent),
        ])?;
        sigma_check(self.sigma_sf_db)
    }
}

/// Close-in model parameters, anchored to free space at 1 m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CiParams {
    /// Path loss exponent n.
    pub path_loss_exponent: f64,
    /// Fixed at exactly 1.0 m.
    pub reference_distance_m: f64,
    /// Shadow fading standard deviation in dB, ≥ 0.
    pub sigma_sf_db: f64,
}

impl CiParams {
    pub fn new(path_loss_exponent: f64, sigma_sf_db: f64) -> CiParams {
        CiParams {
            path_loss_exponent,
            reference_distance_m: 1.0,
            sigma_sf_db,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        finite_params(&[("path_loss_exponent", self.path_loss_exponent)])?;
        if self.reference_distance_m != 1.0 {
            return Err(ModelError::InvalidParams(format!(
                "reference_distance_m must be exactly 1.0, got {}",
                self.reference_distance_m
            )));
        }
        sigma_check(self.sigma_sf_db)
    }
}

fn finite_params(fields: &[(&str, f64)]) -> Result<(), ModelError> {
    for &(name, value) in fields {
        if !value.is_finite() {
            return Err(ModelError::InvalidParams(format!(
                "{name} must be finite, got {value}"
            )));
        }
    }
    Ok(())
}

fn sigma_check(sigma: f64) -> Result<(), ModelError> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(ModelError::InvalidParams(format!(
            "sigma_sf_db must be finite and >= 0, got {sigma}"
        )));
    }
    Ok(())
}

fn positive(quantity: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::NonPositive { quantity, value })
    }
}

/// Free-space path loss at a 1 m reference distance, in dB.
///
/// `20·log10(4π·f_Hz / c)` evaluated at d = 1 m, i.e.
/// `32.4478 + 20·log10(f_GHz)` with the physical constant, not the rounded
/// 32.4 of the TR 38.901 equations. The 0.048 dB gap between the two is
/// deliberate: CI is defined against physical free space.
pub fn fspl_at_1m(frequency_ghz: f64) -> Result<f64, ModelError> {
    let f = positive("frequency_ghz", frequency_ghz)?;
    let f_hz = f * 1e9;
    Ok(20.0 * (4.0 * std::f64::consts::PI * f_hz / SPEED_OF_LIGHT_M_PER_S).log10())
}

/// Mean FI path loss in dB.
pub fn fi_path_loss(params: &FiParams, distance_m: f64) -> Result<f64, ModelError> {
    params.validate()?;
    let d = positive("distance_m", distance_m)?;
    Ok(params.intercept_db + 10.0 * params.distance_exponent * d.log10())
}

/// Mean ABG path loss in dB.
pub fn abg_path_loss(
    params: &AbgParams,
    distance_m: f64,
    frequency_ghz: f64,
) -> Result<f64, ModelError> {
    params.validate()?;
    let d = positive("distance_m", distance_m)?;
    let f = positive("frequency_ghz", frequency_ghz)?;
    Ok(abg_mean_unchecked(params, d, f))
}

/// ABG mean without input validation; shared by the TR 38.901 evaluators so
/// the "InH LOS is exactly an ABG instance" identity holds bitwise.
fn abg_mean_unchecked(params: &AbgParams, distance_m: f64, frequency_ghz: f64) -> f64 {
    params.offset_db
        + 10.0 * params.distance_exponent * distance_m.log10()
        + 10.0 * params.frequency_exponent * frequency_ghz.log10()
}

/// Mean CI path loss in dB.
pub fn ci_path_loss(
    params: &CiParams,
    distance_m: f64,
    frequency_ghz: f64,
) -> Result<f64, ModelError> {
    params.validate()?;
    let d = positive("distance_m", distance_m)?;
    let anchor = fspl_at_1m(frequency_ghz)?;
    Ok(anchor + 10.0 * params.path_loss_exponent * d.log10())
}

/// TR 38.901 InH LOS parameters in ABG form: (α, β, γ, nominal σ_SF).
pub fn inh_los_abg_params() -> AbgParams {
    AbgParams::new(1.73, 32.4, 2.0, 3.0)
}

/// TR 38.901 InH NLOS parameters (the un-floored branch) in ABG form.
pub fn inh_nlos_abg_params(option: NlosOption) -> AbgParams {
    match option {
        NlosOption::Option1 => AbgParams::new(3.83, 17.3, 2.49, 8.03),
        NlosOption::Option2 => AbgParams::new(3.19, 32.4, 2.0, 8.29),
    }
}

/// Nominal shadow fading of the InH model in dB: 3 (LOS), 8.03 / 8.29 (NLOS).
pub fn inh_nominal_sigma_sf_db(condition: Condition, option: NlosOption) -> f64 {
    match condition {
        Condition::Los => 3.0,
        Condition::Nlos => inh_nlos_abg_params(option).sigma_sf_db,
    }
}

/// The exact single-frequency FI reduction of the InH LOS model.
pub fn inh_los_fi_params(frequency_ghz: f64) -> Result<FiParams, ModelError> {
    let abg = inh_los_abg_params();
    let f = positive("frequency_ghz", frequency_ghz)?;
    Ok(FiParams::new(
        abg.offset_db + 10.0 * abg.frequency_exponent * f.log10(),
        abg.distance_exponent,
        abg.sigma_sf_db,
    ))
}

/// The exact single-frequency FI reduction of the un-floored InH NLOS branch.
pub fn inh_nlos_fi_params(option: NlosOption, frequency_ghz: f64) -> Result<FiParams, ModelError> {
    let abg = inh_nlos_abg_params(option);
    let f = positive("frequency_ghz", frequency_ghz)?;
    Ok(FiParams::new(
        abg.offset_db + 10.0 * abg.frequency_exponent * f.log10(),
        abg.distance_exponent,
        abg.sigma_sf_db,
    ))
}

fn inh_domain_check(
    distance_m: f64,
    frequency_ghz: f64,
    mode: DomainMode,
) -> Result<Option<String>, ModelError> {
    positive("distance_m", distance_m)?;
    positive("frequency_ghz", frequency_ghz)?;
    let mut violations = Vec::new();
    if !(ThreeGppInhSpec::D3D_MIN_M..=ThreeGppInhSpec::D3D_MAX_M).contains(&distance_m) {
        violations.push((
            "distance_m",
            distance_m,
            ThreeGppInhSpec::D3D_MIN_M,
            ThreeGppInhSpec::D3D_MAX_M,
        ));
    }
    if !(ThreeGppInhSpec::FC_MIN_GHZ..=ThreeGppInhSpec::FC_MAX_GHZ).contains(&frequency_ghz) {
        violations.push((
            "frequency_ghz",
            frequency_ghz,
            ThreeGppInhSpec::FC_MIN_GHZ,
            ThreeGppInhSpec::FC_MAX_GHZ,
        ));
    }
    match violations.first() {
        None => Ok(None),
        Some(&(quantity, value, min, max)) => match mode {
            DomainMode::Strict => Err(ModelError::OutOfDomain {
                quantity,
                value,
                min,
                max,
            }),
            DomainMode::Permissive => Ok(Some(
                violations
                    .iter()
                    .map(|(q, v, lo, hi)| format!("{q} = {v} outside [{lo}, {hi}]"))
                    .collect::<Vec<_>>()
                    .join("; "),
            )),
        },
    }
}

/// Mean TR 38.901 InH LOS path loss: `32.4 + 17.3·log10(d) + 20·log10(f)`.
pub fn inh_los_path_loss(
    distance_m: f64,
    frequency_ghz: f64,
    mode: DomainMode,
) -> Result<Evaluation, ModelError> {
    let domain_warning = inh_domain_check(distance_m, frequency_ghz, mode)?;
    Ok(Evaluation {
        path_loss_db: abg_mean_unchecked(&inh_los_abg_params(), distance_m, frequency_ghz),
        domain_warning,
    })
}

/// Mean TR 38.901 InH NLOS path loss.
///
/// The un-floored branch is `17.3 + 38.3·log10(d) + 24.9·log10(f)` (Option1)
/// or `32.4 + 31.9·log10(d) + 20·log10(f)` (Option2). With
/// `apply_los_floor` the result is `max(LOS, branch)`.
pub fn inh_nlos_path_loss(
    distance_m: f64,
    frequency_ghz: f64,
    option: NlosOption,
    apply_los_floor: bool,
    mode: DomainMode,
) -> Result<Evaluation, ModelError> {
    let domain_warning = inh_domain_check(distance_m, frequency_ghz, mode)?;
    let prime = abg_mean_unchecked(&inh_nlos_abg_params(option), distance_m, frequency_ghz);
    let path_loss_db = if apply_los_floor {
        let los = abg_mean_unchecked(&inh_los_abg_params(), distance_m, frequency_ghz);
        los.max(prime)
    } else {
        prime
    };
    Ok(Evaluation {
        path_loss_db,
        domain_warning,
    })
}

/// A fully specified TR 38.901 InH model instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeGppInhSpec {
    pub condition: Condition,
    /// Meaningful only when `condition` is NLOS.
    pub nlos_option: NlosOption,
    /// Whether the NLOS result is floored at the LOS value.
    pub apply_los_floor: bool,
}

impl ThreeGppInhSpec {
    pub const D3D_MIN_M: f64 = 1.0;
    pub const D3D_MAX_M: f64 = 150.0;
    pub const FC_MIN_GHZ: f64 = 0.5;
    pub const FC_MAX_GHZ: f64 = 100.0;

    pub fn los() -> ThreeGppInhSpec {
        ThreeGppInhSpec {
            condition: Condition::Los,
            nlos_option: NlosOption::Option1,
            apply_los_floor: true,
        }
    }

    pub fn nlos(option: NlosOption, apply_los_floor: bool) -> ThreeGppInhSpec {
        ThreeGppInhSpec {
            condition: Condition::Nlos,
            nlos_option: option,
            apply_los_floor,
        }
    }

    /// Mean path loss in dB under this spec's condition and option.
    pub fn eval(
        &self,
        distance_m: f64,
        frequency_ghz: f64,
        mode: DomainMode,
    ) -> Result<Evaluation, ModelError> {
        match self.condition {
            Condition::Los => inh_los_path_loss(distance_m, frequency_ghz, mode),
            Condition::Nlos => inh_nlos_path_loss(
                distance_m,
                frequency_ghz,
                self.nlos_option,
                self.apply_los_floor,
                mode,
            ),
        }
    }

    /// Nominal shadow fading of this instance in dB.
    pub fn nominal_sigma_sf_db(&self) -> f64 {
        inh_nominal_sigma_sf_db(self.condition, self.nlos_option)
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle constants stay verbatim
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    // Frozen against an independent high-precision evaluation of
    // 20*log10(4*pi*f/c) and the InH equations.
    const FSPL_1M_1GHZ: f64 = 32.447783221883374;
    const FSPL_1M_6P75GHZ: f64 = 49.033858678503872;
    const LOS_1M_6P75: f64 = 48.986075456620498;
    const LOS_1M_16P95: f64 = 56.983394050782019;
    const LOS_10M_6P75: f64 = 66.286075456620498;
    const NLOS1_1M_6P75: f64 = 37.949663943492521;
    const NLOS1_100M_6P75: f64 = 114.549663943492521;
    const CROSSOVER_6P75_OPT1: f64 = 3.353848226765490;

    #[test]
    fn fspl_anchor_known_values() {
        assert!((fspl_at_1m(1.0).unwrap() - FSPL_1M_1GHZ).abs() < TOL);
        assert!((fspl_at_1m(6.75).unwrap() - FSPL_1M_6P75GHZ).abs() < TOL);
    }

    #[test]
    fn fspl_two_decades_is_40_db() {
        let f0 = 0.7;
        let delta = fspl_at_1m(100.0 * f0).unwrap() - fspl_at_1m(f0).unwrap();
        assert!((delta - 40.0).abs() < 1e-9, "got {delta}");
    }

    #[test]
    fn fspl_rejects_nonpositive_frequency() {
        assert!(matches!(
            fspl_at_1m(0.0),
            Err(ModelError::NonPositive { .. })
        ));
        assert!(matches!(
            fspl_at_1m(-3.0),
            Err(ModelError::NonPositive { .. })
        ));
    }

    #[test]
    fn fi_zero_model() {
        let p = FiParams::new(0.0, 0.0, 0.0);
        assert_eq!(fi_path_loss(&p, 17.2).unwrap(), 0.0);
    }

    #[test]
    fn fi_inh_los_intercept_row() {
        let p = FiParams::new(48.98, 1.73, 3.0);
        assert!((fi_path_loss(&p, 1.0).unwrap() - 48.98).abs() < TOL);
        assert!((fi_path_loss(&p, 10.0).unwrap() - 66.28).abs() < TOL);
    }

    #[test]
    fn fi_rejects_nonpositive_distance() {
        let p = FiParams::new(40.0, 2.0, 0.0);
        assert!(matches!(
            fi_path_loss(&p, 0.0),
            Err(ModelError::NonPositive { .. })
        ));
    }

    #[test]
    fn abg_both_logs_vanish() {
        let p = AbgParams::new(1.73, 32.4, 2.0, 0.0);
        assert_eq!(abg_path_loss(&p, 1.0, 1.0).unwrap(), 32.4);
    }

    #[test]
    fn abg_at_1m_matches_inh_los_intercept() {
        let p = AbgParams::new(1.73, 32.4, 2.0, 0.0);
        assert!((abg_path_loss(&p, 1.0, 6.75).unwrap() - LOS_1M_6P75).abs() < TOL);
    }

    #[test]
    fn abg_nlos_option1_intercept() {
        let p = AbgParams::new(3.83, 17.3, 2.49, 0.0);
        let pl = abg_path_loss(&p, 1.0, 6.75).unwrap();
        assert!((pl - NLOS1_1M_6P75).abs() < TOL);
        assert!((pl - 37.94).abs() < 0.01);
    }

    #[test]
    fn ci_anchor_only_at_reference() {
        let p = CiParams::new(2.0, 0.0);
        assert!((ci_path_loss(&p, 1.0, 1.0).unwrap() - FSPL_1M_1GHZ).abs() < TOL);
        assert!((ci_path_loss(&p, 10.0, 1.0).unwrap() - (FSPL_1M_1GHZ + 20.0)).abs() < TOL);
    }

    #[test]
    fn ci_zero_exponent_is_distance_free() {
        let p = CiParams::new(0.0, 0.0);
        for d in [1.0, 7.0, 120.0] {
            assert_eq!(
                ci_path_loss(&p, d, 28.0).unwrap(),
                fspl_at_1m(28.0).unwrap()
            );
        }
    }

    #[test]
    fn inh_los_known_values() {
        let v = |d, f| {
            inh_los_path_loss(d, f, DomainMode::Strict)
                .unwrap()
                .path_loss_db
        };
        assert!((v(1.0, 6.75) - LOS_1M_6P75).abs() < TOL);
        assert!((v(1.0, 16.95) - LOS_1M_16P95).abs() < TOL);
        assert!((v(10.0, 6.75) - LOS_10M_6P75).abs() < TOL);
    }

    #[test]
    fn inh_nlos_floor_binds_below_crossover() {
        let e = inh_nlos_path_loss(1.0, 6.75, NlosOption::Option1, true, DomainMode::Strict)
            .unwrap()
            .path_loss_db;
        assert!((e - LOS_1M_6P75).abs() < TOL, "floor should bind at 1 m");
        let far = inh_nlos_path_loss(100.0, 6.75, NlosOption::Option1, true, DomainMode::Strict)
            .unwrap()
            .path_loss_db;
        assert!((far - NLOS1_100M_6P75).abs() < TOL);
    }

    #[test]
    fn inh_nlos_floor_crossover_location() {
        // the floor binds iff d < d*; check both sides of the frozen d*
        let just_below = CROSSOVER_6P75_OPT1 - 1e-3;
        let just_above = CROSSOVER_6P75_OPT1 + 1e-3;
        for (d, expect_bound) in [(just_below, true), (just_above, false)] {
            let floored = inh_nlos_path_loss(d, 6.75, NlosOption::Option1, true, DomainMode::Strict)
                .unwrap()
                .path_loss_db;
            let unfloored =
                inh_nlos_path_loss(d, 6.75, NlosOption::Option1, false, DomainMode::Strict)
                    .unwrap()
                    .path_loss_db;
            assert_eq!(floored > unfloored, expect_bound, "d = {d}");
        }
    }

    #[test]
    fn strict_mode_rejects_out_of_domain() {
        for (d, f) in [(0.5, 6.75), (151.0, 6.75), (10.0, 0.4), (10.0, 101.0)] {
            assert!(matches!(
                inh_los_path_loss(d, f, DomainMode::Strict),
                Err(ModelError::OutOfDomain { .. })
            ));
        }
        // domain edge itself is allowed
        assert!(inh_los_path_loss(1.0, 0.5, DomainMode::Strict).is_ok());
        assert!(inh_los_path_loss(150.0, 100.0, DomainMode::Strict).is_ok());
    }

    #[test]
    fn permissive_mode_warns_and_evaluates() {
        let e = inh_los_path_loss(0.5, 6.75, DomainMode::Permissive).unwrap();
        assert!(e.domain_warning.is_some());
        let expected = 32.4 + 10.0 * 1.73 * 0.5f64.log10() + 10.0 * 2.0 * 6.75f64.log10();
        assert!((e.path_loss_db - expected).abs() < TOL);
        // in-domain input carries no warning
        assert!(inh_los_path_loss(10.0, 6.75, DomainMode::Permissive)
            .unwrap()
            .domain_warning
            .is_none());
    }

    #[test]
    fn inh_los_equals_abg_instance_bitwise() {
        let abg = inh_los_abg_params();
        for d in [1.0, 2.5, 33.0, 150.0] {
            for f in [0.5, 6.75, 16.95, 100.0] {
                let los = inh_los_path_loss(d, f, DomainMode::Strict)
                    .unwrap()
                    .path_loss_db;
                let via_abg = abg_path_loss(&abg, d, f).unwrap();
                assert_eq!(los.to_bits(), via_abg.to_bits(), "d={d} f={f}");
            }
        }
    }

    #[test]
    fn abg_with_zero_gamma_reduces_to_fi() {
        let abg = AbgParams::new(2.2, 41.5, 0.0, 0.0);
        let fi = FiParams::new(41.5, 2.2, 0.0);
        for d in [1.0, 3.0, 97.0] {
            for f in [0.5, 7.0, 73.0] {
                assert_eq!(
                    abg_path_loss(&abg, d, f).unwrap().to_bits(),
                    fi_path_loss(&fi, d).unwrap().to_bits()
                );
            }
        }
    }

    #[test]
    fn fi_decade_scale_law() {
        let p = FiParams::new(40.0, 2.7, 0.0);
        for d in [1.0, 4.2, 13.0] {
            let delta = fi_path_loss(&p, 10.0 * d).unwrap() - fi_path_loss(&p, d).unwrap();
            assert!((delta - 27.0).abs() < 1e-9, "d={d} delta={delta}");
        }
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(FiParams::new(40.0, 2.0, -1.0).validate().is_err());
        assert!(FiParams::new(f64::NAN, 2.0, 1.0).validate().is_err());
        let mut ci = CiParams::new(2.0, 0.0);
        ci.reference_distance_m = 2.0;
        assert!(ci.validate().is_err());
    }

    #[test]
    fn nominal_sigmas() {
        assert_eq!(ThreeGppInhSpec::los().nominal_sigma_sf_db(), 3.0);
        assert_eq!(
            ThreeGppInhSpec::nlos(NlosOption::Option1, true).nominal_sigma_sf_db(),
            8.03
        );
        assert_eq!(
            ThreeGppInhSpec::nlos(NlosOption::Option2, true).nominal_sigma_sf_db(),
            8.29
        );
    }
}
