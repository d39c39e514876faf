use woods_saxon_kg::model::{PhysicalConstants, WoodsSaxonSystem};
use woods_saxon_kg::spectrum::{allowed_radial_count, energy_roots, BoundState};
use woods_saxon_kg::wavefunction::{
    normalization_constant, normalization_integral, physical_domain_integral, sample_wavefunction,
    QuadratureConfig, WavefunctionSpec,
};

fn pion_well() -> WoodsSaxonSystem {
    WoodsSaxonSystem::new(40.0, 2.5, 1.0, 139.57, PhysicalConstants::default()).unwrap()
}

fn valid_states(s: &WoodsSaxonSystem, l: u32) -> Vec<BoundState> {
    (0..allowed_radial_count(s, l).unwrap())
        .filter_map(|n| energy_roots(s, n, l).ok())
        .flatten()
        .filter(|st| st.valid)
        .collect()
}

#[test]
fn normalization_is_quadrature_stable() {
    let s = pion_well();
    let config = QuadratureConfig::default();
    let halved = QuadratureConfig {
        step: config.step / 2.0,
        ..config
    };
    let mut checked = 0;
    for l in 1..=4 {
        for st in valid_states(&s, l) {
            let spec = WavefunctionSpec::new(&s, &st).unwrap();
            let a = normalization_integral(&spec, &config).unwrap();
            let b = normalization_integral(&spec, &halved).unwrap();
            assert!((a - b).abs() <= 1e-10 * a, "l={l} E={}: {a} vs {b}", st.energy);
            checked += 1;
        }
    }
    assert!(checked >= 8);
}

#[test]
fn physical_half_line_holds_most_of_the_norm() {
    let s = pion_well();
    for st in valid_states(&s, 2) {
        let mut spec = WavefunctionSpec::new(&s, &st).unwrap();
        normalization_constant(&mut spec, &QuadratureConfig::default()).unwrap();
        let p = physical_domain_integral(&spec, &QuadratureConfig::default()).unwrap();
        assert!(p > 0.5 && p < 1.0, "E={}: {p}", st.energy);
    }
}

#[test]
fn sampled_function_decays_outside_the_well() {
    let s = pion_well();
    let st = valid_states(&s, 1)[0];
    let mut spec = WavefunctionSpec::new(&s, &st).unwrap();
    normalization_constant(&mut spec, &QuadratureConfig::default()).unwrap();
    let grid: Vec<f64> = (0..=60).map(|i| f64::from(i) * 0.5).collect();
    let samples = sample_wavefunction(&spec, &grid).unwrap();
    let tail: Vec<f64> = samples[20..].iter().map(|x| x.u.abs()).collect();
    assert!(tail.windows(2).all(|w| w[1] < w[0]));
    // Asymptotically u ~ exp(-eps r / a).
    let ratio = samples[60].u / samples[50].u;
    assert!((ratio.ln() / 5.0 + spec.eps).abs() < 1e-3, "{ratio}");
}
