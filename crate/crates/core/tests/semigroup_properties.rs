use proptest::prelude::*;
use rbound_core::rademacher::RandomConfig;
use rbound_core::rbound::SearchConfig;
use rbound_core::semigroup::{
    fractional_power_apply, semigroup_apply, sharpness_experiment, thm_semigroup_experiment, DiagonalSemigroup,
    FractionalKind, Semigroup, TranslationGroup, Verdict,
};
use rbound_core::{NormedSpace, SharpnessConfig};

fn bump(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        (-1.0 / (t * (1.0 - t))).exp()
    }
}

fn log_rates(k: usize, top: f64) -> Vec<f64> {
    (0..k).map(|i| top.powf(i as f64 / (k - 1) as f64)).collect()
}

#[test]
fn translation_law_on_aligned_shifts() {
    let tr = TranslationGroup::new(4.0, 256, 1.5).unwrap();
    let g = Semigroup::Translation(tr);
    let x: Vec<f64> = (0..256).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
    for (s, t) in [(0.25, 0.5), (-1.0, 3.125), (1.5, -1.5)] {
        let lhs = semigroup_apply(&g, t, &semigroup_apply(&g, s, &x).unwrap()).unwrap();
        assert_eq!(lhs, semigroup_apply(&g, s + t, &x).unwrap());
    }
    assert_eq!(semigroup_apply(&g, 4.0, &x).unwrap(), x);
    // translations are isometries of L^p
    let sp = tr.space().unwrap();
    assert!((sp.norm(&semigroup_apply(&g, 0.75, &x).unwrap()) - sp.norm(&x)).abs() < 1e-12);
}

#[test]
fn generator_power_scales_with_the_bump() {
    // (−A)^α ψ_c = c^α [(−A)^α ψ]_c, hence ‖(−A)^α ψ_N‖_p = N^{α−1/p} ‖(−A)^α ψ‖_p
    let tr = TranslationGroup::new(16.0, 1 << 16, 2.0).unwrap();
    let g = Semigroup::Translation(tr);
    let sp = tr.space().unwrap();
    let norm_for = |c: f64, alpha: f64| {
        let x: Vec<f64> = (0..tr.n).map(|i| bump(c * (i as f64 * tr.step() - 1.0))).collect();
        sp.norm(&fractional_power_apply(&g, alpha, FractionalKind::Generator, &x).unwrap())
    };
    for alpha in [0.25, 0.5, 0.75] {
        let base = norm_for(1.0, alpha);
        for n in [2.0f64, 4.0, 8.0] {
            let want = n.powf(alpha - 0.5) * base;
            let got = norm_for(n, alpha);
            assert!((got - want).abs() < 0.02 * want, "α={alpha} N={n}: {got} vs {want}");
        }
    }
}

#[test]
fn hilbert_semigroup_family_is_capped() {
    let rates = log_rates(6, 1e3);
    let g = DiagonalSemigroup::new(rates, NormedSpace::hilbert(6).unwrap()).unwrap();
    let times = [0.0, 1e-3, 1e-2, 0.1, 1.0];
    let search = SearchConfig { restarts: 3, sweeps: 30, ..Default::default() };
    for seed in 0..4 {
        let rep = thm_semigroup_experiment(&g, 0.6, 2.0, 2.0, 4, &times, &RandomConfig::with_seed(seed), &search).unwrap();
        assert!(rep.lower_bound <= 1.0 + 1e-6, "{}", rep.lower_bound);
        assert!(rep.lower_bound >= 1.0 - 1e-9);
        assert!(rep.hilbert_value.unwrap() <= 1.0 + 1e-12);
    }
}

#[test]
fn holder_certificate_ignores_the_rates() {
    // sup_u u^{−α}(1 − e^{−u}), independent of λ
    let alpha: f64 = 0.5;
    let oracle = (1..200_000).map(|i| {
        let u = (i as f64) * 1e-4;
        u.powf(-alpha) * (1.0 - (-u).exp())
    });
    let oracle = oracle.fold(0.0, f64::max);
    let cfg = RandomConfig::default();
    let search = SearchConfig { restarts: 1, sweeps: 5, ..Default::default() };
    let mut seen = Vec::new();
    for k in [2, 4, 8] {
        let space = NormedSpace::new(k, 1.5).unwrap();
        let g = DiagonalSemigroup::new(log_rates(k, 1e3), space).unwrap();
        let rep = thm_semigroup_experiment(&g, alpha, 1.5, 4.0, 2, &[0.0, 0.5], &cfg, &search).unwrap();
        seen.push(rep.holder_certificate);
    }
    for c in &seen {
        assert!((c - oracle).abs() < 0.01 * oracle, "{seen:?} vs {oracle}");
    }
}

#[test]
fn sharpness_slopes_straddle_the_threshold() {
    let mut slopes = Vec::new();
    for alpha in [0.25, 0.75] {
        let rep = sharpness_experiment(&SharpnessConfig::new(1.0, alpha, vec![4, 8, 16])).unwrap();
        assert!((rep.fit.slope - rep.expected_slope).abs() <= 0.1, "α={alpha}: {} vs {}", rep.fit.slope, rep.expected_slope);
        for row in &rep.rows {
            assert!(row.pattern_deviation <= 1e-10);
            assert!((row.numerator_p_power - rep.psi_p_power).abs() <= 1e-10 * rep.psi_p_power);
        }
        slopes.push((rep.fit.slope, rep.verdict));
    }
    assert_eq!(slopes[0].1, Verdict::Unbounded);
    assert_eq!(slopes[1].1, Verdict::RBoundedConsistent);
}

#[test]
fn sharpness_in_hilbert_space_has_slope_minus_alpha() {
    let cfg = SharpnessConfig::new(2.0, 0.5, vec![4, 8, 16]);
    let rep = sharpness_experiment(&cfg).unwrap();
    assert!((rep.fit.slope + 0.5).abs() <= 0.1, "{}", rep.fit.slope);
    // for p = 2 the numerator is exactly ‖ψ‖_2
    for row in &rep.rows {
        assert!((row.numerator - rep.psi_p_power.sqrt()).abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagonal_semigroup_law(
        rates in prop::collection::vec(0.01f64..50.0, 1..8),
        s in 0.0f64..2.0,
        t in 0.0f64..2.0,
    ) {
        let k = rates.len();
        let g = Semigroup::Diagonal(DiagonalSemigroup::new(rates, NormedSpace::new(k, 3.0).unwrap()).unwrap());
        let x: Vec<f64> = (0..k).map(|i| i as f64 - 2.5).collect();
        let lhs = semigroup_apply(&g, t, &semigroup_apply(&g, s, &x).unwrap()).unwrap();
        let rhs = semigroup_apply(&g, s + t, &x).unwrap();
        for (a, b) in lhs.iter().zip(&rhs) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn diagonal_fractional_powers_compose(
        rates in prop::collection::vec(0.01f64..50.0, 1..8),
        a in 0.0f64..1.0,
        b in 0.0f64..1.0,
    ) {
        let k = rates.len();
        let g = Semigroup::Diagonal(DiagonalSemigroup::new(rates, NormedSpace::hilbert(k).unwrap()).unwrap());
        let x: Vec<f64> = (0..k).map(|i| 1.0 + i as f64).collect();
        let kind = FractionalKind::Bessel;
        let lhs = fractional_power_apply(&g, a, kind, &fractional_power_apply(&g, b, kind, &x).unwrap()).unwrap();
        let rhs = fractional_power_apply(&g, a + b, kind, &x).unwrap();
        for (u, v) in lhs.iter().zip(&rhs) {
            prop_assert!((u - v).abs() <= 1e-12 * v.abs());
        }
    }
}
