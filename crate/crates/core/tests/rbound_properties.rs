use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbound_core::linalg::Matrix;
use rbound_core::rademacher::{NormedSpace, RandomConfig};
use rbound_core::rbound::{
    rbound_lower, rbound_ratio, uniform_norm_lower, Assignment, OperatorFamily, SearchConfig, Strategy,
};

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<f64> {
    let data = (0..r * c).map(|_| rng.random_range(-1.0..1.0)).collect();
    Matrix::from_row_major(r, c, data).unwrap()
}

fn random_assignment(rng: &mut ChaCha8Rng, n: usize, k: usize, dim: usize) -> Assignment<f64> {
    Assignment::new(
        (0..n).map(|_| rng.random_range(0..k)).collect(),
        (0..n).map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).collect(),
    )
}

#[test]
fn hilbert_cap_holds_for_every_assignment() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let cfg = RandomConfig::default();
    let l2 = NormedSpace::hilbert(3).unwrap();
    for _ in 0..50 {
        let ops = vec![random_matrix(&mut rng, 3, 3), random_matrix(&mut rng, 3, 3)];
        let cap = ops.iter().map(|m| m.spectral_norm()).fold(0.0, f64::max);
        let fam = OperatorFamily::new(l2.clone(), l2.clone(), ops).unwrap();
        for n in 1..=8 {
            let a = random_assignment(&mut rng, n, 2, 3);
            assert!(rbound_ratio(&fam, &a, &cfg).unwrap() <= cap + 1e-9);
        }
    }
}

#[test]
fn singleton_search_reaches_operator_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cfg = RandomConfig::with_seed(3);
    let search = SearchConfig { restarts: 4, sweeps: 60, ..Default::default() };
    for dim in [2usize, 3] {
        let l2 = NormedSpace::hilbert(dim).unwrap();
        for _ in 0..10 {
            let fam = OperatorFamily::new(l2.clone(), l2.clone(), vec![random_matrix(&mut rng, dim, dim)]).unwrap();
            let norm = uniform_norm_lower(&fam, &cfg);
            let est = rbound_lower(&fam, 3, &cfg, &search).unwrap();
            assert!(est.lower_bound >= 0.99 * norm, "{} vs {norm}", est.lower_bound);
            assert!(est.lower_bound <= norm + 1e-9);
        }
    }
}

#[test]
fn ratio_is_scale_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let cfg = RandomConfig::default();
    let fam = OperatorFamily::from_matrices(3.0, 1.5, vec![random_matrix(&mut rng, 2, 3), random_matrix(&mut rng, 2, 3)])
        .unwrap();
    for c in [-2.5, 0.1, 7.0] {
        let a = random_assignment(&mut rng, 5, 2, 3);
        let r = rbound_ratio(&fam, &a, &cfg).unwrap();
        let rc = rbound_ratio(&fam.scaled(c), &a, &cfg).unwrap();
        assert!((rc - c.abs() * r).abs() <= 1e-12 * rc.max(1.0));
    }
}

#[test]
fn doubling_budget_never_lowers_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let fam = OperatorFamily::from_matrices(
        4.0,
        1.5,
        vec![random_matrix(&mut rng, 3, 3), random_matrix(&mut rng, 3, 3), random_matrix(&mut rng, 3, 3)],
    )
    .unwrap();
    let cfg = RandomConfig::with_seed(17);
    for strategy in [Strategy::Random, Strategy::CoordinateAscent] {
        let mut prev = 0.0;
        for budget in [1usize, 2, 4, 8, 16] {
            let s = SearchConfig { strategy, restarts: budget, sweeps: 5 * budget, step: 0.1 };
            let est = rbound_lower(&fam, 3, &cfg, &s).unwrap();
            assert!(est.lower_bound >= prev, "{strategy:?} budget {budget}: {} < {prev}", est.lower_bound);
            prev = est.lower_bound;
        }
    }
}

#[test]
fn exhaustive_small_agrees_with_ascent() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let cfg = RandomConfig::with_seed(4);
    let fam = OperatorFamily::from_matrices(1.5, 3.0, vec![random_matrix(&mut rng, 2, 2), random_matrix(&mut rng, 2, 2)])
        .unwrap();
    let ex = rbound_lower(&fam, 3, &cfg, &SearchConfig { strategy: Strategy::ExhaustiveSmall, sweeps: 150, ..Default::default() })
        .unwrap();
    let ca = rbound_lower(&fam, 3, &cfg, &SearchConfig { restarts: 16, sweeps: 150, ..Default::default() }).unwrap();
    assert!((ex.lower_bound - ca.lower_bound).abs() <= 0.02 * ex.lower_bound, "{} vs {}", ex.lower_bound, ca.lower_bound);
}

/// Diagonal functionals `t(i) e_i^*` on `ℓ^q`: over diagonal assignments the
/// ratio is `‖tα‖₂/‖α‖_q`, whose supremum is `‖t‖_v`, `1/v = 1/2 − 1/q`.
#[test]
fn diagonal_functional_family_sup_is_hoelder_dual() {
    let q = 4.0;
    let v = 1.0 / (0.5 - 1.0 / q);
    let t = [1.0, 0.5, 0.25];
    let t_v = t.iter().map(|x: &f64| x.powf(v)).sum::<f64>().powf(1.0 / v);

    // brute-force oracle: α on a simplex grid
    let mut best: f64 = 0.0;
    let steps = 60;
    for i in 0..=steps {
        for j in 0..=(steps - i) {
            let a = [i as f64, j as f64, (steps - i - j) as f64];
            let num = t.iter().zip(&a).map(|(t, a)| (t * a).powi(2)).sum::<f64>().sqrt();
            let den = a.iter().map(|x| x.powf(q)).sum::<f64>().powf(1.0 / q);
            if den > 0.0 {
                best = best.max(num / den);
            }
        }
    }
    assert!(best <= t_v + 1e-12 && best >= 0.999 * t_v, "{best} vs {t_v}");

    let ops: Vec<Matrix<f64>> = (0..3)
        .map(|i| {
            let mut row = vec![0.0; 3];
            row[i] = t[i];
            Matrix::from_rows(&[row]).unwrap()
        })
        .collect();
    let fam = OperatorFamily::new(NormedSpace::new(3, q).unwrap(), NormedSpace::hilbert(1).unwrap(), ops).unwrap();
    let est = rbound_lower(&fam, 3, &RandomConfig::with_seed(5), &SearchConfig::default()).unwrap();
    assert!(est.lower_bound <= t_v + 1e-9, "{} exceeds {t_v}", est.lower_bound);
    assert!(est.lower_bound >= 0.99 * t_v, "{} vs {t_v}", est.lower_bound);
}
