//! The acceptance suite behind `verify-all`.
//!
//! Each criterion draws its inputs from a fixed seed and compares library
//! output with an oracle computed here, independently of the code under
//! test. Quick mode shrinks the trial counts of the expensive criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rbound_core::besov::{lambda_besov_norm, Convention};
use rbound_core::gamma::verify_gamma_multiplier;
use rbound_core::integral::{verify_integral_rbound, IntegralSearch};
use rbound_core::measure::{lorentz_norm, LorentzForm};
use rbound_core::rademacher::RandomConfig;
use rbound_core::rbound::{rbound_lower, SearchConfig};
use rbound_core::semigroup::{sharpness_experiment, Verdict};
use rbound_core::typecotype::{cotype_indicator_construction, type_cotype_ratio, Inequality};
use rbound_core::{
    BesovParams, DiscreteMeasureSpace, GammaOperator, GridFunction, Matrix, NormedSpace, OperatorFamily,
    OperatorValuedStep, SharpnessConfig, StepFunction,
};
use serde::Serialize;

use crate::error::Result;

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "lorentz-identity"),
    (2, "dilation-law"),
    (3, "hilbert-rbound-cap"),
    (4, "type-cotype-exactness"),
    (5, "indicator-construction"),
    (6, "l1-cap"),
    (7, "gamma-multiplier-hilbert"),
    (8, "sharpness-slope"),
    (9, "besov-closed-forms"),
    (10, "determinism"),
];

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7262_6c61_6200 + stream)
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| standard_normal(rng)).collect();
    Matrix::from_row_major(rows, cols, data).expect("shape")
}

fn gaussian_vec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| standard_normal(rng)).collect()
}

fn e(x: f64) -> String {
    format!("{x:.3e}")
}

/// Eigenvalues of a symmetric 3×3 matrix by the trigonometric formula.
fn symmetric3_eigenvalues(a: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    if p1 == 0.0 {
        return [a[0][0], a[1][1], a[2][2]];
    }
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = a;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (*v - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    let l1 = q + 2.0 * p * phi.cos();
    let l3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    [l1, 3.0 * q - l1 - l3, l3]
}

/// Largest singular value of a 3×3 matrix.
fn sigma_max3(m: &Matrix) -> f64 {
    let mut g = [[0.0; 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..3).map(|k| m[(k, i)] * m[(k, j)]).sum();
        }
    }
    symmetric3_eigenvalues(g).iter().cloned().fold(0.0, f64::max).max(0.0).sqrt()
}

fn random_step(rng: &mut ChaCha8Rng, atoms: usize) -> StepFunction {
    let weights: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.05..2.0)).collect();
    // a small value pool forces ties in the rearrangement
    let pool: Vec<f64> = (0..4).map(|_| rng.random_range(-3.0..3.0)).collect();
    let values = (0..atoms)
        .map(|_| if rng.random_bool(0.3) { pool[rng.random_range(0..4)] } else { rng.random_range(-3.0..3.0) })
        .collect();
    StepFunction::from_parts(weights, values).expect("valid step function")
}

fn c1_lorentz() -> Result<(bool, String)> {
    let mut r = rng(1);
    let (mut worst_id, mut worst_forms) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let atoms = r.random_range(1..=16);
        let f = random_step(&mut r, atoms);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let direct: f64 =
                f.weights().iter().zip(f.values()).map(|(w, v)| w * v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
            let lpp = lorentz_norm(&f, p, p, LorentzForm::Rearrangement)?;
            worst_id = worst_id.max((lpp - direct).abs() / direct.max(f64::MIN_POSITIVE));
            for q in [p, 1.0, 2.0, 4.0] {
                let a = lorentz_norm(&f, p, q, LorentzForm::Rearrangement)?;
                let b = lorentz_norm(&f, p, q, LorentzForm::Distribution)?;
                worst_forms = worst_forms.max((a - b).abs() / a.max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok((
        worst_id <= 1e-10 && worst_forms <= 1e-10,
        format!("max rel err L^{{p,p}} vs L^p {}, forms {}", e(worst_id), e(worst_forms)),
    ))
}

fn c2_dilation() -> Result<(bool, String)> {
    let phi = |x: f64| (-x * x).exp() * (1.0 + 0.5 * (3.0 * x).sin());
    let n = 1 << 12;
    let mut worst = 0.0f64;
    for r in [2.0, 4.0] {
        let rp = r / (r - 1.0);
        let norm = |k: i32| -> Result<f64> {
            let c = 2f64.powi(k);
            let f = StepFunction::from_grid(-4.0, 4.0, n, |x| c * phi(c * x))?;
            Ok(lorentz_norm(&f, rp, 1.0, LorentzForm::Rearrangement)?)
        };
        let base = norm(0)?;
        for k in 1..=3 {
            let want = 2f64.powf(k as f64 / r) * base;
            worst = worst.max((norm(k)? - want).abs() / want);
        }
    }
    Ok((worst <= 0.02, format!("max rel deviation from 2^{{n/r}} {}", e(worst))))
}

fn c3_hilbert_cap(quick: bool) -> Result<(bool, String)> {
    let mut r = rng(3);
    let l2 = NormedSpace::hilbert(3)?;
    let search = SearchConfig { restarts: 2, sweeps: 20, ..Default::default() };
    let families = if quick { 20 } else { 100 };
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_singleton = 0.0f64;
    for i in 0..families {
        let ops = vec![gaussian_matrix(&mut r, 3, 3), gaussian_matrix(&mut r, 3, 3)];
        let cap = ops.iter().map(sigma_max3).fold(0.0, f64::max);
        let family = OperatorFamily::new(l2.clone(), l2.clone(), ops.clone())?;
        let n = 2 + i % 7;
        let est = rbound_lower(&family, n, &RandomConfig::with_seed(i as u64), &search)?;
        worst_excess = worst_excess.max(est.lower_bound - cap);

        let single = OperatorFamily::new(l2.clone(), l2.clone(), vec![ops[0].clone()])?;
        let est = rbound_lower(&single, 2, &RandomConfig::with_seed(i as u64), &search)?;
        let s = sigma_max3(&ops[0]);
        worst_singleton = worst_singleton.max((s - est.lower_bound) / s);
    }
    Ok((
        worst_excess <= 1e-9 && worst_singleton <= 0.01,
        format!("{families} families: max(ratio - σ_max) {}, singleton gap {}", e(worst_excess), e(worst_singleton)),
    ))
}

fn c4_type_cotype() -> Result<(bool, String)> {
    let mut r = rng(4);
    let l2 = NormedSpace::hilbert(4)?;
    let cfg = RandomConfig::default();
    let mut worst = 0.0f64;
    for n in 1..=10 {
        for _ in 0..3 {
            let xs: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(&mut r, 4)).collect();
            for ineq in [Inequality::Type, Inequality::Cotype] {
                worst = worst.max((type_cotype_ratio(&l2, ineq, 2.0, &xs, &cfg)? - 1.0).abs());
            }
        }
    }
    let basis = |s: &NormedSpace| (0..s.dim()).map(|i| s.standard_basis(i)).collect::<Vec<_>>();
    let mut l4_dev = 0.0f64;
    let mut linf_dev = 0.0f64;
    for n in [4, 9, 16] {
        let l4 = NormedSpace::new(n, 4.0)?;
        l4_dev = l4_dev.max((type_cotype_ratio(&l4, Inequality::Cotype, 4.0, &basis(&l4), &cfg)? - 1.0).abs());
        let linf = NormedSpace::new(n, f64::INFINITY)?;
        let got = type_cotype_ratio(&linf, Inequality::Cotype, 2.0, &basis(&linf), &cfg)?;
        linf_dev = linf_dev.max((got - (n as f64).sqrt()).abs());
    }
    // "exactly" for ℓ^4 allows the last-bit rounding of a fourth root
    let pass = worst <= 1e-9 && l4_dev <= 4.0 * f64::EPSILON && linf_dev == 0.0;
    Ok((pass, format!("ℓ²_4 max |ratio-1| {}, ℓ^4 basis dev {}, ℓ^∞ basis dev {}", e(worst), e(l4_dev), e(linf_dev))))
}

fn c5_indicator() -> Result<(bool, String)> {
    let mut r = rng(5);
    let l2 = NormedSpace::hilbert(3)?;
    let mut worst = 0.0f64;
    for n in 1..=8 {
        for q in [2.0, 3.0, 4.5] {
            let xs: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(&mut r, 3)).collect();
            let want: f64 = xs.iter().map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt().powf(q)).sum();
            let (lhs, _) = cotype_indicator_construction(&xs, &l2, q, 0.37, &RandomConfig::default())?;
            worst = worst.max((lhs - want).abs() / want);
        }
    }
    Ok((worst <= 1e-10, format!("max rel err {}", e(worst))))
}

fn c6_l1_cap(quick: bool) -> Result<(bool, String)> {
    let mut r = rng(6);
    // pairs where the operator norm has a closed form
    let pairs = [
        (NormedSpace::new(3, 1.0)?, NormedSpace::new(2, 3.0)?),
        (NormedSpace::new(2, 1.5)?, NormedSpace::new(3, f64::INFINITY)?),
        (NormedSpace::hilbert(3)?, NormedSpace::hilbert(2)?),
        (NormedSpace::new(2, 1.0)?, NormedSpace::new(2, f64::INFINITY)?),
        (NormedSpace::weighted(2.0, vec![0.5, 2.0])?, NormedSpace::hilbert(3)?),
    ];
    let operators = 10;
    let per = if quick { 10 } else { 100 };
    let mut worst = 0.0f64;
    let mut all_exact = true;
    for i in 0..operators {
        let (x, y) = pairs[i % pairs.len()].clone();
        let atoms = r.random_range(3..=6);
        let space = DiscreteMeasureSpace::new((0..atoms).map(|_| r.random_range(0.2..2.0)).collect())?;
        let ms = (0..atoms).map(|_| gaussian_matrix(&mut r, y.dim(), x.dim())).collect();
        let t = OperatorValuedStep::new(space, x, y, ms)?;
        let rep = verify_integral_rbound(&t, 1.0, per, &RandomConfig::with_seed(i as u64), &IntegralSearch::default())?;
        all_exact &= rep.normalizer_exact;
        worst = worst.max(rep.max_lower_bound / (2.0 * rep.normalizer));
    }
    let trials = operators * per;
    Ok((all_exact && worst <= 1.0, format!("{trials} trials: max lower bound / (2·L¹ cap) {}", e(worst))))
}

fn c7_gamma(quick: bool) -> Result<(bool, String)> {
    let mut r = rng(7);
    let trials = if quick { 20 } else { 100 };
    let mut worst = 0.0f64;
    let mut all_exact = true;
    for t in 0..trials {
        let n = 1 + t % 6;
        let dim = 2 + t % 3;
        let h = 1 + t % 4;
        let y = if t % 2 == 0 {
            NormedSpace::hilbert(dim)?
        } else {
            NormedSpace::weighted(2.0, (0..dim).map(|_| r.random_range(0.2..3.0)).collect())?
        };
        let psis: Vec<GammaOperator> =
            (0..n).map(|_| GammaOperator::new(gaussian_matrix(&mut r, dim, h), y.clone())).collect::<Result<_, _>>()?;
        let fs: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(&mut r, h)).collect();
        let rep = verify_gamma_multiplier(&psis, &fs, &RandomConfig::with_seed(t as u64))?;
        all_exact &= rep.exact;
        worst = worst.max(rep.ratio);
    }
    Ok((all_exact && worst <= 1.0 + 1e-9, format!("{trials} trials: max ratio {}", e(worst))))
}

fn c8_sharpness() -> Result<(bool, String)> {
    let mut slopes = Vec::new();
    let mut pass = true;
    for alpha in [0.25, 0.75] {
        let rep = sharpness_experiment(&SharpnessConfig::new(1.0, alpha, vec![4, 8, 16]))?;
        let want = 1.0 - 0.5 - alpha;
        pass &= (rep.fit.slope - want).abs() <= 0.1;
        pass &= rep.rows.iter().all(|row| row.pattern_deviation <= 1e-10);
        pass &= rep.verdict == if alpha < 0.5 { Verdict::Unbounded } else { Verdict::RBoundedConsistent };
        slopes.push(format!("α={alpha}: slope {:.4} (expected {want:+.2}, {})", rep.fit.slope, rep.verdict.as_str()));
    }
    Ok((pass, slopes.join("; ")))
}

/// Restrict-convention norm of `r ↦ r` on `(0, 1)`: `‖r‖_p = (p+1)^{-1/p}`
/// and `ϱ_p(t) = g(min(t, p/(p+1)))` with `g(h) = h(1-h)^{1/p}`.
fn linear_oracle(s: f64, p: f64, q: f64, levels: usize) -> f64 {
    let g = |t: f64| {
        let h = t.min(p / (p + 1.0));
        h * (1.0 - h).powf(1.0 / p)
    };
    let terms = (0..=levels).map(|j| 2f64.powf(j as f64 * s) * g(0.5f64.powi(j as i32)));
    let semi = if q.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        terms.map(|x| x.powf(q) * std::f64::consts::LN_2).sum::<f64>().powf(1.0 / q)
    };
    (1.0 / (p + 1.0)).powf(1.0 / p) + semi
}

fn c9_besov() -> Result<(bool, String)> {
    let n = 1 << 12;
    let lin = GridFunction::sample(0.0, 1.0, n, |r| r)?;
    let cst = GridFunction::sample(0.0, 1.0, n, |_| -1.75)?;
    let mut worst = 0.0f64;
    for (s, p, q) in [(0.5, 1.0, 1.0), (0.5, 2.0, 1.0), (0.3, 1.0, 2.0), (0.7, 3.0, f64::INFINITY)] {
        let params = BesovParams { convention: Convention::Restrict, ..BesovParams::new(s, p, q) };
        let want = linear_oracle(s, p, q, params.levels);
        worst = worst.max((lambda_besov_norm(&lin, &params)? - want).abs() / want);
        worst = worst.max((lambda_besov_norm(&cst, &params)? - 1.75).abs() / 1.75);
    }
    Ok((worst <= 0.01, format!("max rel err {}", e(worst))))
}

fn run_one(id: u8, quick: bool) -> Result<(bool, String)> {
    match id {
        1 => c1_lorentz(),
        2 => c2_dilation(),
        3 => c3_hilbert_cap(quick),
        4 => c4_type_cotype(),
        5 => c5_indicator(),
        6 => c6_l1_cap(quick),
        7 => c7_gamma(quick),
        8 => c8_sharpness(),
        9 => c9_besov(),
        10 => c10_determinism(),
        _ => unreachable!("criteria are numbered 1 to 10"),
    }
}

/// Runs criteria 1–9 in quick mode on one and on four worker threads and
/// compares the rendered reports byte for byte.
fn c10_determinism() -> Result<(bool, String)> {
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| render_table(&(1..=9).map(|id| criterion(id, true)).collect::<Vec<_>>()))
    };
    let a = render(1);
    let b = render(4);
    let same = a == b;
    Ok((same, format!("{} report bytes, {}", a.len(), if same { "identical across thread counts" } else { "reports differ" })))
}

/// Evaluates one criterion; library errors count as failures.
pub fn criterion(id: u8, quick: bool) -> Outcome {
    let name = CRITERIA[(id - 1) as usize].1;
    match run_one(id, quick) {
        Ok((passed, detail)) => Outcome { id, name, passed, detail },
        Err(err) => Outcome { id, name, passed: false, detail: format!("error: {err}") },
    }
}

pub fn verify_all(quick: bool) -> Vec<Outcome> {
    (1..=10).map(|id| criterion(id, quick)).collect()
}

/// One line per criterion plus a summary line.
pub fn render_table(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&format!(
            "{:>2}  {:<26} {}  {}\n",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        ));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    out
}
