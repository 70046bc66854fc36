//! End-to-end flow: generate → emit → reload → group → fit → report.

use pathloss::fit::fit_fi;
use pathloss::io::{load_csv, partition, write_csv, BandSet, SampleSet};
use pathloss::models::{Condition, NlosOption, ThreeGppInhSpec};
use pathloss::report::{
    abg_validation, fi_validation, render_report, ReportFormat, SigmaPolicy, ValidationPolicy,
};
use pathloss::synth::{generate_samples, DistanceGrid, ShadowFading, Spacing, SynthConfig, SynthModel};

fn noisy_inh_set() -> SampleSet {
    let mut samples = Vec::new();
    for &f in &[6.75, 16.95] {
        for (spec, grid) in [
            (
                ThreeGppInhSpec::los(),
                DistanceGrid::new(1.0, 100.0, 40, Spacing::Log),
            ),
            (
                ThreeGppInhSpec::nlos(NlosOption::Option1, true),
                DistanceGrid::new(4.0, 100.0, 40, Spacing::Log),
            ),
        ] {
            let mut config = SynthConfig::new(SynthModel::ThreeGpp(spec), f, grid);
            config.shadow_fading = ShadowFading::Gaussian {
                sigma_db: spec.nominal_sigma_sf_db(),
            };
            config.seed = 11;
            config.replicates_per_distance = 25;
            samples.extend(generate_samples(&config).unwrap());
        }
    }
    SampleSet::from_samples(samples, "synthetic campaign")
}

#[test]
fn synthetic_campaign_round_trip() {
    let set = noisy_inh_set();

    // emit and reload reproduces the set exactly
    let mut buf = Vec::new();
    write_csv(&set.samples, &mut buf, &["pipeline fixture".to_string()]).unwrap();
    let reloaded = load_csv(buf.as_slice(), "pipeline").unwrap();
    assert_eq!(reloaded.samples, set.samples);

    // per-group FI fits land near the generating model
    let groups = partition(&reloaded, true, true, None);
    assert_eq!(groups.groups.len(), 4);
    for (key, samples) in &groups.groups {
        let (p, diag) = fit_fi(samples).unwrap();
        assert_eq!(diag.n_samples, 1000);
        match key.condition.unwrap() {
            Condition::Los => {
                assert!((p.distance_exponent - 1.73).abs() < 0.15, "{key:?} {p:?}");
                assert!((p.sigma_sf_db - 3.0).abs() < 0.25);
            }
            Condition::Nlos => {
                assert!((p.distance_exponent - 3.83).abs() < 0.35, "{key:?} {p:?}");
                assert!((p.sigma_sf_db - 8.03).abs() < 0.6);
            }
        }
    }

    // FI validation: deltas against the model stay small for noisy
    // samples generated from that very model
    let policy = ValidationPolicy::default();
    let rows = fi_validation(&reloaded, &policy).unwrap();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let d = row.deltas.option1.unwrap();
        assert!(d.distance_exponent < 0.4, "{row:?}");
    }
    let json = render_report(&rows, ReportFormat::Json).unwrap();
    assert!(json.contains("\"threegpp_source\": \"fit_of_synthetic\""));

    // ABG validation over the 7-24 pool
    let rows = abg_validation(&reloaded, &BandSet::preset_7_24(), &ValidationPolicy::direct_read())
        .unwrap();
    assert_eq!(rows.len(), 2);
    let md = render_report(&rows, ReportFormat::Markdown).unwrap();
    assert!(md.lines().count() == 4); // header + separator + LOS + NLOS
}

#[test]
fn shipped_example_files_stay_loadable() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let example = std::fs::File::open(format!("{root}/data/example_measurements.csv")).unwrap();
    let set = load_csv(example, "example").unwrap();
    assert_eq!(set.len(), 5);
    assert!(set.diagnostics.is_empty());
    assert!(set.samples.iter().all(|s| s.tags["polarization"] == "VV"));

    let map = pathloss::io::ColumnMap::from_path(
        format!("{root}/data/adapters/example_column_map.csv").as_ref(),
    )
    .unwrap();
    let external = "Frequency (GHz),T-R Separation Distance (m),Omnidirectional Path Loss (dB),Environment\n6.75,13.0,68.7,LOS\n";
    let set = pathloss::io::load_csv_with_map(external.as_bytes(), &map, "external").unwrap();
    assert_eq!(set.len(), 1);
}

#[test]
fn sigma_policy_controls_model_side_sigma() {
    let set = noisy_inh_set();
    let fitted_policy = ValidationPolicy {
        sigma_policy: SigmaPolicy::AlwaysFitted,
        ..ValidationPolicy::default()
    };
    let rows = fi_validation(&set, &fitted_policy).unwrap();
    for row in rows {
        let side = row.threegpp_option1.unwrap();
        // noiseless synthetic side with AlwaysFitted reports a ~zero residual
        match side.params {
            pathloss::report::ModelParams::Fi(p) => assert!(p.sigma_sf_db < 1e-9),
            _ => panic!("expected FI side"),
        }
    }
}
