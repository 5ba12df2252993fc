//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the lines are always printed.
//! Tolerances are pinned as constants below.

use std::process::Command;
use std::time::Instant;

use sectorlab::ensemble::{random_accretive, random_hpd, stream_seed, SectorSpec};
use sectorlab::entropy::{
    relative_entropy, relative_entropy_hpd, tsallis_entropy, tsallis_from_mean, tsallis_limit_probe,
};
use sectorlab::linalg::{AccretiveMatrix, ComplexMatrix};
use sectorlab::means::{drury_mean, geometric_mean, geometric_mean_hpd, IntegrationConfig, Weight};
use sectorlab::quadrature::{beta_normalization, gauss_jacobi, gauss_legendre, RuleKind};
use sectorlab::verify::{self, EnsembleSpec, PropertyReport, Status};
use sectorlab::LoewnerTolerance;

const HPD_MEAN_REL_TOL: f64 = 1e-8;
const DRURY_REL_TOL: f64 = 1e-8;
const ENTROPY_REL_TOL: f64 = 1e-8;
const TSALLIS_REP_REL_TOL: f64 = 1e-9;
const LIMIT_RATIO: (f64, f64) = (2.0 * 0.8, 2.0 * 1.2);
const WEIGHT_SUM_REL_TOL: f64 = 1e-11;
const EXACTNESS_REL_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-10;
const HOMOGENEITY_TOL: f64 = 1e-9;
const RUNTIME_TARGET_SECS: f64 = 30.0;

const LAMBDAS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
const ANGLE: f64 = 0.4 * std::f64::consts::FRAC_PI_2;
const COND_CAP: f64 = 10.0;

type M = ComplexMatrix<f64>;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    summary: String,
}

fn rel(x: &M, reference: &M) -> f64 {
    (x - reference).frobenius_norm() / reference.frobenius_norm()
}

fn hpd_pair(k: u64, dim: usize) -> (AccretiveMatrix<f64>, AccretiveMatrix<f64>) {
    let a = random_hpd(dim, COND_CAP, stream_seed(1001, k, "A")).unwrap();
    let b = random_hpd(dim, COND_CAP, stream_seed(1001, k, "B")).unwrap();
    (AccretiveMatrix::from_hermitian(&a).unwrap(), AccretiveMatrix::from_hermitian(&b).unwrap())
}

fn sector_pair(k: u64, dim: usize, seed: u64) -> (AccretiveMatrix<f64>, AccretiveMatrix<f64>) {
    let spec = |tag| SectorSpec { dim, angle: ANGLE, cond_cap: COND_CAP, seed: stream_seed(seed, k, tag) };
    (random_accretive(&spec("A")).unwrap(), random_accretive(&spec("B")).unwrap())
}

fn dim_for(k: u64, lo: usize, hi: usize) -> usize {
    lo + (k as usize) % (hi - lo + 1)
}

fn hpd_agreement() -> Outcome {
    let start = Instant::now();
    let cfg = IntegrationConfig::fixed(64);
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let (a, b) = hpd_pair(k, dim_for(k, 2, 6));
        for &l in &LAMBDAS {
            let w = Weight::new(l).unwrap();
            let g = geometric_mean(&a, &b, w, &cfg).unwrap();
            let closed = geometric_mean_hpd(&a.real_part(), &b.real_part(), w).unwrap();
            worst = worst.max(rel(&g, closed.as_matrix()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: worst <= HPD_MEAN_REL_TOL && secs < RUNTIME_TARGET_SECS,
        summary: format!("200 pairs x 5 weights, worst rel {worst:.2e} (tol {HPD_MEAN_REL_TOL:e}), {secs:.2} s"),
    }
}

fn drury_equivalence() -> Outcome {
    let cfg = IntegrationConfig::default();
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let (a, b) = sector_pair(k, dim_for(k, 2, 6), 2002);
        let d = drury_mean(&a, &b, &cfg).unwrap();
        let g = geometric_mean(&a, &b, Weight::half(), &cfg).unwrap();
        worst = worst.max(rel(&d, &g));
    }
    Outcome {
        pass: worst <= DRURY_REL_TOL,
        summary: format!("100 pairs, worst rel {worst:.2e} (tol {DRURY_REL_TOL:e})"),
    }
}

fn relative_entropy_agreement() -> Outcome {
    let cfg = IntegrationConfig::default();
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let (a, b) = hpd_pair(k + 10_000, dim_for(k, 2, 6));
        let s = relative_entropy(&a, &b, &cfg).unwrap();
        let closed = relative_entropy_hpd(&a.real_part(), &b.real_part()).unwrap();
        worst = worst.max(rel(&s, closed.as_matrix()));
    }
    Outcome {
        pass: worst <= ENTROPY_REL_TOL,
        summary: format!("200 pairs, worst rel {worst:.2e} (tol {ENTROPY_REL_TOL:e})"),
    }
}

fn tsallis_representation_and_limit() -> Outcome {
    let cfg = IntegrationConfig::default();
    let mut worst_rep: f64 = 0.0;
    let (mut lo_ratio, mut hi_ratio) = (f64::INFINITY, 0.0f64);
    let probe: Vec<f64> = (3..=10).map(|k| 0.5f64.powi(k)).collect();
    for k in 0..20 {
        let (a, b) = sector_pair(k, dim_for(k, 2, 4), 4004);
        for &l in &LAMBDAS {
            let w = Weight::new(l).unwrap();
            let direct = tsallis_entropy(&a, &b, w, &cfg).unwrap();
            let via_mean = tsallis_from_mean(&a, &b, w, &cfg).unwrap();
            worst_rep = worst_rep.max(rel(&direct, &via_mean));
        }
        let devs = tsallis_limit_probe(&a, &b, &probe, &cfg).unwrap();
        for pair in devs.windows(2) {
            let r = pair[0].1 / pair[1].1;
            lo_ratio = lo_ratio.min(r);
            hi_ratio = hi_ratio.max(r);
        }
    }
    let rep_ok = worst_rep <= TSALLIS_REP_REL_TOL;
    let limit_ok = lo_ratio >= LIMIT_RATIO.0 && hi_ratio <= LIMIT_RATIO.1;
    Outcome {
        pass: rep_ok && limit_ok,
        summary: format!(
            "representations worst rel {worst_rep:.2e} (tol {TSALLIS_REP_REL_TOL:e}); \
             halving ratios in [{lo_ratio:.4}, {hi_ratio:.4}] (window [{}, {}])",
            LIMIT_RATIO.0, LIMIT_RATIO.1
        ),
    }
}

fn ensemble(dim: usize, seed: u64) -> EnsembleSpec {
    EnsembleSpec { dim, trials: 500, seed, sector_angle: ANGLE, ..EnsembleSpec::default() }
}

fn summarize(reports: &[PropertyReport]) -> Outcome {
    let pass = reports.iter().all(|r| r.status == Status::Pass);
    let violations: usize = reports.iter().map(|r| r.violations).sum();
    let worst = reports.iter().map(|r| r.worst_margin).fold(f64::INFINITY, f64::min);
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{}: {:?} {}", r.property_id, r.status, r.detail.clone().unwrap_or_default()))
        .collect();
    let mut summary = format!("{} reports, {violations} violations, worst margin {worst:.3e}", reports.len());
    if !failing.is_empty() {
        summary.push_str(&format!(" [{}]", failing.join("; ")));
    }
    Outcome { pass, summary }
}

fn loewner_theorems() -> Outcome {
    let mut reports = Vec::new();
    for dim in 2..=4 {
        let spec = ensemble(dim, 5005);
        assert_eq!(spec.tolerance, LoewnerTolerance::DEFAULT);
        reports.push(verify::check_re_geometric(&spec).unwrap());
        reports.push(verify::check_re_harmonic(&spec).unwrap());
        reports.push(verify::check_re_relative_entropy(&spec).unwrap());
        reports.push(verify::check_re_tsallis(&spec).unwrap());
    }
    summarize(&reports)
}

fn vector_norm_bilinear_homogeneity() -> Outcome {
    let mut reports = Vec::new();
    for dim in 2..=4 {
        let spec = ensemble(dim, 6006);
        for size in [1, 3, 8] {
            reports.push(verify::check_vector_family(&spec, size).unwrap());
        }
        reports.push(verify::check_norm_inequality(&spec).unwrap());
        reports.push(verify::check_bilinear(&spec).unwrap());
        let h = verify::check_homogeneity(&spec, &[(1.0, 1.0), (4.0, 9.0), (0.5, 7.3)]).unwrap();
        assert_eq!(h.tolerance_used.relative, HOMOGENEITY_TOL);
        reports.push(h);
    }
    summarize(&reports)
}

fn symmetry() -> Outcome {
    let reports: Vec<_> = (2..=4).map(|dim| verify::check_symmetry(&ensemble(dim, 7007)).unwrap()).collect();
    let worst_dev = reports.iter().map(|r| -r.worst_margin).fold(0.0, f64::max);
    let mut o = summarize(&reports);
    o.pass &= worst_dev <= SYMMETRY_TOL;
    o.summary = format!("{}, worst deviation {worst_dev:.2e} (tol {SYMMETRY_TOL:e})", o.summary);
    o
}

/// `∫₀¹ t^{k+β} (1-t)^α dt` from the mass through `B(x+1, y) = B(x, y) · x/(x+y)`.
fn jacobi_moment(alpha: f64, beta: f64, mass: f64, k: usize) -> f64 {
    (0..k).fold(mass, |m, j| m * (beta + 1.0 + j as f64) / (alpha + beta + 2.0 + j as f64))
}

fn quadrature_units() -> Outcome {
    let mut worst_sum: f64 = 0.0;
    for i in 1..=19 {
        let l = 0.05 * i as f64;
        let exact = beta_normalization(l).unwrap();
        for n in [1, 8, 64, 512] {
            let rule = RuleKind::mean_kernel(l).build::<f64>(n).unwrap();
            worst_sum = worst_sum.max((rule.weight_sum() - exact).abs() / exact);
        }
    }
    let mut worst_exact: f64 = 0.0;
    for n in [2, 4, 8, 16] {
        let legendre = gauss_legendre::<f64>(n).unwrap();
        for k in 0..2 * n {
            let exact = 1.0 / (k as f64 + 1.0);
            worst_exact = worst_exact.max((legendre.integrate_scalar(|t| t.powi(k as i32)) - exact).abs() / exact);
        }
        for (alpha, beta) in [(-0.3, -0.7), (-0.6, 0.6), (0.5, 1.5)] {
            let rule = gauss_jacobi::<f64>(n, alpha, beta).unwrap();
            let mass = RuleKind::Jacobi { alpha, beta }.mass();
            for k in 0..2 * n {
                let exact = jacobi_moment(alpha, beta, mass, k);
                let got = rule.integrate_scalar(|t| t.powi(k as i32));
                worst_exact = worst_exact.max((got - exact).abs() / exact);
            }
        }
    }
    Outcome {
        pass: worst_sum <= WEIGHT_SUM_REL_TOL && worst_exact <= EXACTNESS_REL_TOL,
        summary: format!(
            "weight sums worst rel {worst_sum:.2e} (tol {WEIGHT_SUM_REL_TOL:e}); \
             degree 2n-1 exactness worst rel {worst_exact:.2e} (tol {EXACTNESS_REL_TOL:e})"
        ),
    }
}

fn agh_search() -> Outcome {
    let spec = EnsembleSpec {
        dim: 2,
        trials: 2000,
        seed: 0,
        sector_angle: 0.49 * std::f64::consts::FRAC_PI_2,
        lambda_grid: vec![Weight::half()],
        ..EnsembleSpec::default()
    };
    let r = verify::search_agh_counterexample(&spec).unwrap();
    let pass = matches!(r.status, Status::WitnessFound | Status::Warning);
    Outcome {
        pass,
        summary: format!(
            "status {:?}, {} of {} trials break the chain, witness seed {} ({})",
            r.status,
            r.violations,
            r.trials,
            r.worst_seed,
            r.detail.unwrap_or_default()
        ),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_sectorlab"))
            .args(["verify", "--dim", "3", "--trials", "40", "--seed", "1234", "--report"])
            .arg(&path)
            .env("RAYON_NUM_THREADS", threads)
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        (status.code(), std::fs::read(&path).unwrap())
    };
    let (c1, first) = run("1", "a.json");
    let (c2, second) = run("1", "b.json");
    let (c3, parallel) = run("4", "c.json");
    let identical = first == second && first == parallel;
    Outcome {
        pass: identical && c1 == Some(0) && c2 == c1 && c3 == c1,
        summary: format!(
            "two runs at 1 thread and one at 4 threads: {} ({} bytes), exit codes {c1:?}/{c2:?}/{c3:?}",
            if identical { "byte-identical" } else { "DIFFER" },
            first.len()
        ),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 hpd agreement", hpd_agreement),
        ("2 drury equivalence", drury_equivalence),
        ("3 relative entropy agreement", relative_entropy_agreement),
        ("4 tsallis representation and limit", tsallis_representation_and_limit),
        ("5 loewner theorems", loewner_theorems),
        ("6 vector, norm, bilinear, homogeneity", vector_norm_bilinear_homogeneity),
        ("7 symmetry", symmetry),
        ("8 quadrature units", quadrature_units),
        ("9 agh counterexample search", agh_search),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        let outcome = criterion();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {name}: {} [{:.1} s]", outcome.summary, start.elapsed().as_secs_f64());
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
