use secmac::experiments::*;
use secmac::gaussian::{upper_bound_value, Conference, NetworkGeometry};

fn coarse(cfg: SweepConfig<f64>) -> SweepConfig<f64> {
    let mut cfg = cfg.with_range(0.0, 2.0, 0.25);
    cfg.settings.coarse_steps = 61;
    cfg.settings.refine_rounds = 3;
    cfg
}

#[test]
fn reference_sweep_properties() {
    let cfg = coarse(SweepConfig::reference()).with_c12_list(vec![
        Conference::Finite(0.0),
        Conference::Finite(1.0),
        Conference::Finite(4.0),
        Conference::Finite(6.0),
        Conference::Infinite,
    ]);
    let rows = run_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 9 * 5);
    for at_d in rows.chunks(5) {
        let d = at_d[0].d;
        assert!(at_d.iter().all(|r| r.d == d && r.upper_value == at_d[0].upper_value));
        for w in at_d.windows(2) {
            assert!(w[1].lower_value >= w[0].lower_value - 1e-9, "d={d}");
        }
        for r in at_d {
            assert!(r.lower_value <= r.upper_value + 1e-3);
            assert!((r.noise_power + r.conf_power - 1.0).abs() < 1e-9);
        }
        // Where the correlation maximising the upper objective is nonnegative,
        // unlimited conferencing closes the gap.
        let ch = NetworkGeometry::reference(d).compile().unwrap();
        let psi_star = (0..=2000)
            .map(|i| -1.0 + i as f64 / 1000.0)
            .max_by(|a, b| {
                upper_bound_value(&ch, *a)
                    .unwrap()
                    .partial_cmp(&upper_bound_value(&ch, *b).unwrap())
                    .unwrap()
            })
            .unwrap();
        let gap = at_d[4].lower_value - at_d[4].upper_value;
        if psi_star >= 0.0 {
            assert!((-1e-3..=1e-9).contains(&gap), "d={d} gap={gap}");
        }
    }
}

#[test]
fn reversed_geometry_keeps_positive_rate() {
    let cfg = coarse(SweepConfig::reversed_reference()).with_c12_list(vec![Conference::Finite(6.0)]);
    let best = run_sweep(&cfg)
        .unwrap()
        .iter()
        .map(|r| r.lower_value)
        .fold(0.0, f64::max);
    assert!(best > 0.01);
}

#[test]
fn csv_and_svg_are_stable() {
    let cfg = coarse(SweepConfig::reference()).with_range(0.9, 1.1, 0.1);
    let a = run_sweep(&cfg).unwrap();
    let b = run_sweep(&cfg).unwrap();
    assert_eq!(to_csv(&a), to_csv(&b));
    assert_eq!(bounds_svg(&a), bounds_svg(&b));
    let csv = to_csv(&a);
    assert!(csv.starts_with(CSV_HEADER));
    assert_eq!(csv.lines().count(), 1 + 3 * 4);
    let report = power_split_report(&a);
    assert!(report
        .iter()
        .filter(|r| r.d > 0.95 && r.d < 1.05)
        .all(|r| r.near_destination_flag.is_some()));
}
