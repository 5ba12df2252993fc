//! Ensemble verification of the operator inequalities satisfied by the
//! accretive geometric mean and entropies.
//!
//! Each check has two layers: a per-pair function returning a [`PairOutcome`]
//! (usable directly on hand-built matrices), and an ensemble driver that draws
//! `spec.trials` seeded pairs, evaluates them in parallel and aggregates a
//! [`PropertyReport`]. Trial `i` always sees the same matrices regardless of
//! which check runs it or how many threads are in use.
//!
//! Margins are normalized so one unit serves every check:
//! * Loewner checks report `λ_min(LHS - RHS) / max(1, ‖LHS‖, ‖RHS‖)`;
//! * scalar checks `lhs ≤ rhs` report `(rhs - lhs) / max(1, |lhs|, |rhs|)`;
//! * identity checks report minus the relative Frobenius deviation.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensemble::{random_accretive, random_unit_vectors, stream_seed, SectorSpec, GENERATOR};
use crate::entropy::{relative_entropy, relative_entropy_hpd, tsallis_from_mean, tsallis_hpd};
use crate::error::{Error, Result};
use crate::json::{ser_f64, ser_f64_seq};
use crate::linalg::{
    inverse, loewner_geq, op_norm, real_part, AccretiveMatrix, ComplexMatrix, HermitianMatrix, LoewnerTolerance,
    MAX_DIM,
};
use crate::means::{
    arithmetic_mean, geometric_mean, geometric_mean_hpd, harmonic_mean, scalar_geometric, IntegrationConfig, Weight,
};

type C64 = Complex<f64>;
type Acc = AccretiveMatrix<f64>;
type Cfg = IntegrationConfig<f64>;

pub const SYMMETRY_THRESHOLD: f64 = 1e-10;
pub const HOMOGENEITY_THRESHOLD: f64 = 1e-9;
pub const DEFAULT_FAMILY_SIZE: usize = 3;
pub const BILINEAR_PAIRS: usize = 8;
pub const DEFAULT_SCALES: [(f64, f64); 3] = [(1.0, 1.0), (4.0, 9.0), (0.5, 7.3)];
pub const DEFAULT_COND_CAP: f64 = 10.0;

pub const RE_GEOMETRIC: &str = "check_re_geometric";
pub const RE_HARMONIC: &str = "check_re_harmonic";
pub const RE_RELATIVE_ENTROPY: &str = "check_re_relative_entropy";
pub const RE_TSALLIS: &str = "check_re_tsallis";
pub const VECTOR_FAMILY: &str = "check_vector_family";
pub const NORM_INEQUALITY: &str = "check_norm_inequality";
pub const BILINEAR: &str = "check_bilinear";
pub const HOMOGENEITY: &str = "check_homogeneity";
pub const SYMMETRY: &str = "check_symmetry";
pub const AGH_SEARCH: &str = "search_agh_counterexample";

/// Checks whose violation means a numerical bug, in `run_all` order.
pub const THEOREM_BACKED: [&str; 9] = [
    RE_GEOMETRIC,
    RE_HARMONIC,
    RE_RELATIVE_ENTROPY,
    RE_TSALLIS,
    VECTOR_FAMILY,
    NORM_INEQUALITY,
    BILINEAR,
    HOMOGENEITY,
    SYMMETRY,
];

pub const ALL_PROPERTIES: [&str; 10] = [
    RE_GEOMETRIC,
    RE_HARMONIC,
    RE_RELATIVE_ENTROPY,
    RE_TSALLIS,
    VECTOR_FAMILY,
    NORM_INEQUALITY,
    BILINEAR,
    HOMOGENEITY,
    SYMMETRY,
    AGH_SEARCH,
];

pub fn is_theorem_backed(property_id: &str) -> bool {
    THEOREM_BACKED.contains(&property_id)
}

/// Seeded recipe for a verification ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Sector half-angle in radians, `[0, π/2)`.
    pub sector_angle: f64,
    pub lambda_grid: Vec<Weight<f64>>,
    /// Condition bound of the real parts of the drawn matrices.
    pub cond_cap: f64,
    /// Quadrature nodes for every mean/entropy integral.
    pub rule_nodes: usize,
    pub tolerance: LoewnerTolerance,
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self {
            dim: 2,
            trials: 100,
            seed: 0,
            sector_angle: 0.4 * std::f64::consts::FRAC_PI_2,
            lambda_grid: [0.1, 0.5, 0.9].iter().map(|&l| Weight::new(l).expect("valid weight")).collect(),
            cond_cap: DEFAULT_COND_CAP,
            rule_nodes: crate::quadrature::DEFAULT_NODES,
            tolerance: LoewnerTolerance::DEFAULT,
        }
    }
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > MAX_DIM {
            return Err(Error::InvalidSpec(format!("dim {} outside 1..={MAX_DIM}", self.dim)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidSpec("trials must be at least 1".into()));
        }
        if !(self.sector_angle >= 0.0 && self.sector_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidSpec(format!("sector angle {} outside [0, π/2)", self.sector_angle)));
        }
        if self.lambda_grid.is_empty() {
            return Err(Error::InvalidSpec("lambda grid is empty".into()));
        }
        LoewnerTolerance::new(self.tolerance.absolute, self.tolerance.relative)?;
        self.integration().validate()
    }

    pub fn integration(&self) -> Cfg {
        IntegrationConfig::fixed(self.rule_nodes)
    }

    /// Seed of trial `index`; also the key for regenerating it.
    pub fn trial_seed(&self, index: usize) -> u64 {
        stream_seed(self.seed, index as u64, "trial")
    }

    pub fn trial(&self, index: usize) -> Result<Trial> {
        self.trial_from_seed(index, self.trial_seed(index))
    }

    /// Regenerates the pair for a recorded trial seed.
    pub fn trial_from_seed(&self, index: usize, seed: u64) -> Result<Trial> {
        let sector = |tag| SectorSpec {
            dim: self.dim,
            angle: self.sector_angle,
            cond_cap: self.cond_cap,
            seed: stream_seed(seed, 0, tag),
        };
        Ok(Trial { index, seed, a: random_accretive(&sector("A"))?, b: random_accretive(&sector("B"))? })
    }
}

/// One drawn pair.
#[derive(Debug, Clone)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    pub a: Acc,
    pub b: Acc,
}

impl Trial {
    pub fn vectors(&self, count: usize, tag: &str) -> Result<Vec<Vec<C64>>> {
        random_unit_vectors(self.a.dim(), count, stream_seed(self.seed, 0, tag))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// No violations.
    Pass,
    /// A theorem-backed check failed on at least one trial.
    Violated,
    /// The counterexample search found a witness.
    WitnessFound,
    /// The counterexample search found nothing.
    Warning,
    /// The check could not be evaluated.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property_id: String,
    pub trials: usize,
    pub violations: usize,
    #[serde(serialize_with = "ser_f64")]
    pub worst_margin: f64,
    pub worst_seed: u64,
    #[serde(rename = "tolerance")]
    pub tolerance_used: LoewnerTolerance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Result of one check on one pair (minimized over the λ grid by the drivers).
#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcome {
    pub margin: f64,
    pub violated: bool,
    pub note: Option<String>,
}

impl PairOutcome {
    fn loewner(lhs: &HermitianMatrix<f64>, rhs: &HermitianMatrix<f64>, tol: LoewnerTolerance) -> Result<Self> {
        let r = loewner_geq(lhs, rhs, tol)?;
        Ok(Self { margin: r.margin / r.scale.max(1.0), violated: !r.holds, note: None })
    }

    /// `lhs ≤ rhs` with slack `tol.slack(max(|lhs|, |rhs|))`.
    fn scalar_leq(lhs: f64, rhs: f64, tol: LoewnerTolerance) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        let diff = rhs - lhs;
        Self { margin: diff / scale.max(1.0), violated: !(diff >= -tol.slack(scale)), note: None }
    }

    fn deviation(dev: f64, threshold: f64) -> Self {
        Self { margin: -dev, violated: !(dev <= threshold), note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Keeps the smaller margin; violations accumulate.
    fn combine(self, other: Self) -> Self {
        let violated = self.violated || other.violated;
        let mut worst = if other.margin < self.margin { other } else { self };
        worst.violated = violated;
        worst
    }
}

fn fold_outcomes(outcomes: impl IntoIterator<Item = Result<PairOutcome>>) -> Result<PairOutcome> {
    let mut acc: Option<PairOutcome> = None;
    for o in outcomes {
        let o = o?;
        acc = Some(match acc {
            None => o,
            Some(a) => a.combine(o),
        });
    }
    acc.ok_or_else(|| Error::InvalidSpec("nothing to evaluate".into()))
}

fn hermitian_inverse(h: &HermitianMatrix<f64>) -> Result<HermitianMatrix<f64>> {
    Ok(HermitianMatrix::symmetrize(&inverse(h.as_matrix())?))
}

fn real_form(h: &HermitianMatrix<f64>, x: &[C64]) -> f64 {
    h.as_matrix().quadratic_form(x).re
}

fn relative_deviation(x: &ComplexMatrix<f64>, reference: &ComplexMatrix<f64>) -> f64 {
    (x - reference).frobenius_norm() / reference.frobenius_norm().max(f64::MIN_POSITIVE)
}

// Per-pair checks.

/// `ℜ(A ♯_λ B) ⪰ (ℜA) ♯_λ (ℜB)`.
pub fn re_geometric_margin(a: &Acc, b: &Acc, w: Weight<f64>, cfg: &Cfg, tol: LoewnerTolerance) -> Result<PairOutcome> {
    let lhs = real_part(&geometric_mean(a, b, w, cfg)?);
    let rhs = geometric_mean_hpd(&a.real_part(), &b.real_part(), w)?;
    PairOutcome::loewner(&lhs, &rhs, tol)
}

/// `ℜ(A !_λ B) ⪰ (ℜA) !_λ (ℜB)`.
pub fn re_harmonic_margin(a: &Acc, b: &Acc, w: Weight<f64>, tol: LoewnerTolerance) -> Result<PairOutcome> {
    let lhs = real_part(&harmonic_mean(a, b, w)?);
    let ra = AccretiveMatrix::unvalidated(a.real_part().into_matrix())?;
    let rb = AccretiveMatrix::unvalidated(b.real_part().into_matrix())?;
    let rhs = HermitianMatrix::symmetrize(&harmonic_mean(&ra, &rb, w)?);
    PairOutcome::loewner(&lhs, &rhs, tol)
}

/// `ℜ S(A|B) ⪰ S(ℜA|ℜB)`.
pub fn re_relative_entropy_margin(a: &Acc, b: &Acc, cfg: &Cfg, tol: LoewnerTolerance) -> Result<PairOutcome> {
    let lhs = real_part(&relative_entropy(a, b, cfg)?);
    let rhs = relative_entropy_hpd(&a.real_part(), &b.real_part())?;
    PairOutcome::loewner(&lhs, &rhs, tol)
}

/// `ℜ T_λ(A|B) ⪰ T_λ(ℜA|ℜB)`.
pub fn re_tsallis_margin(a: &Acc, b: &Acc, w: Weight<f64>, cfg: &Cfg, tol: LoewnerTolerance) -> Result<PairOutcome> {
    let lhs = real_part(&tsallis_from_mean(a, b, w, cfg)?);
    let rhs = tsallis_hpd(&a.real_part(), &b.real_part(), w)?;
    PairOutcome::loewner(&lhs, &rhs, tol)
}

/// `Σ⟨(ℜ(A♯_λB))⁻¹x,x⟩ ≤ (Σ⟨(ℜA)⁻¹x,x⟩) ♯_λ (Σ⟨(ℜB)⁻¹x,x⟩)` over a vector family.
pub fn vector_family_margin(
    a: &Acc,
    b: &Acc,
    w: Weight<f64>,
    cfg: &Cfg,
    family: &[Vec<C64>],
    tol: LoewnerTolerance,
) -> Result<PairOutcome> {
    let mean_inv = hermitian_inverse(&real_part(&geometric_mean(a, b, w, cfg)?))?;
    let ra_inv = hermitian_inverse(&a.real_part())?;
    let rb_inv = hermitian_inverse(&b.real_part())?;
    let lhs: f64 = family.iter().map(|x| real_form(&mean_inv, x)).sum();
    let sa: f64 = family.iter().map(|x| real_form(&ra_inv, x)).sum();
    let sb: f64 = family.iter().map(|x| real_form(&rb_inv, x)).sum();
    let rhs = if sa > 0.0 && sb > 0.0 { scalar_geometric(sa, sb, w)? } else { 0.0 };
    Ok(PairOutcome::scalar_leq(lhs, rhs, tol))
}

/// `‖(ℜ(A♯_λB))⁻¹‖ ≤ ‖(ℜA)⁻¹‖^{1-λ} ‖(ℜB)⁻¹‖^λ`.
pub fn norm_inequality_margin(
    a: &Acc,
    b: &Acc,
    w: Weight<f64>,
    cfg: &Cfg,
    tol: LoewnerTolerance,
) -> Result<PairOutcome> {
    let mean_inv = hermitian_inverse(&real_part(&geometric_mean(a, b, w, cfg)?))?;
    let lhs = op_norm(mean_inv.as_matrix())?;
    let na = op_norm(hermitian_inverse(&a.real_part())?.as_matrix())?;
    let nb = op_norm(hermitian_inverse(&b.real_part())?.as_matrix())?;
    Ok(PairOutcome::scalar_leq(lhs, scalar_geometric(na, nb, w)?, tol))
}

/// `(ℜ⟨x*,x⟩)² ≤ ⟨ℜ(A♯_λB)x*,x*⟩ · (⟨(ℜA)⁻¹x,x⟩ ♯_λ ⟨(ℜB)⁻¹x,x⟩)` for each `(x, x*)` pair.
pub fn bilinear_margin(
    a: &Acc,
    b: &Acc,
    w: Weight<f64>,
    cfg: &Cfg,
    pairs: &[(Vec<C64>, Vec<C64>)],
    tol: LoewnerTolerance,
) -> Result<PairOutcome> {
    let re_mean = real_part(&geometric_mean(a, b, w, cfg)?);
    let ra_inv = hermitian_inverse(&a.real_part())?;
    let rb_inv = hermitian_inverse(&b.real_part())?;
    fold_outcomes(pairs.iter().map(|(x, xs)| {
        if xs.iter().all(|z| z.norm_sqr() == 0.0) {
            return Ok(PairOutcome::scalar_leq(0.0, 0.0, tol));
        }
        let inner: f64 = xs.iter().zip(x).map(|(u, v)| (u * v.conj()).re).sum();
        let lhs = inner * inner;
        let qa = real_form(&ra_inv, x);
        let qb = real_form(&rb_inv, x);
        let mean_form = if qa > 0.0 && qb > 0.0 { scalar_geometric(qa, qb, w)? } else { 0.0 };
        Ok(PairOutcome::scalar_leq(lhs, real_form(&re_mean, xs) * mean_form, tol))
    }))
}

/// Relative deviation of `(αA) ♯_λ (βB)` from `α^{1-λ}β^λ (A ♯_λ B)`.
pub fn homogeneity_deviation(a: &Acc, b: &Acc, w: Weight<f64>, cfg: &Cfg, alpha: f64, beta: f64) -> Result<f64> {
    let scaled = geometric_mean(&a.scaled(alpha)?, &b.scaled(beta)?, w, cfg)?;
    let reference = geometric_mean(a, b, w, cfg)?.scale(scalar_geometric(alpha, beta, w)?);
    Ok(relative_deviation(&scaled, &reference))
}

/// Relative deviation of `B ♯_{1-λ} A` from `A ♯_λ B`.
pub fn symmetry_deviation(a: &Acc, b: &Acc, w: Weight<f64>, cfg: &Cfg) -> Result<f64> {
    let forward = geometric_mean(a, b, w, cfg)?;
    let backward = geometric_mean(b, a, w.complement(), cfg)?;
    Ok(relative_deviation(&backward, &forward))
}

/// Tests both links of `ℜ(A!_λB) ⪯ ℜ(A♯_λB) ⪯ ℜ(A∇_λB)`. `violated` means a
/// link broke; the note names it.
pub fn agh_chain_margin(a: &Acc, b: &Acc, w: Weight<f64>, cfg: &Cfg, tol: LoewnerTolerance) -> Result<PairOutcome> {
    let re_h = real_part(&harmonic_mean(a, b, w)?);
    let re_g = real_part(&geometric_mean(a, b, w, cfg)?);
    let re_a = real_part(&arithmetic_mean(a, b, w)?);
    let lower =
        PairOutcome::loewner(&re_g, &re_h, tol)?.with_note(format!("harmonic <= geometric at lambda={}", w.value()));
    let upper =
        PairOutcome::loewner(&re_a, &re_g, tol)?.with_note(format!("geometric <= arithmetic at lambda={}", w.value()));
    Ok(lower.combine(upper))
}

// Ensemble drivers.

fn run_check<F>(spec: &EnsembleSpec, id: &str, tolerance_used: LoewnerTolerance, eval: F) -> Result<PropertyReport>
where
    F: Fn(&Trial) -> Result<PairOutcome> + Sync,
{
    spec.validate()?;
    let outcomes: Vec<(u64, Result<PairOutcome>)> = (0..spec.trials)
        .into_par_iter()
        .map(|i| {
            let seed = spec.trial_seed(i);
            (seed, spec.trial_from_seed(i, seed).and_then(|t| eval(&t)))
        })
        .collect();

    let mut violations = 0;
    let mut worst: Option<(f64, u64, Option<String>)> = None;
    for (seed, outcome) in outcomes {
        let o = outcome.map_err(|e| Error::TrialFailed {
            property: id.to_string(),
            trial_seed: seed,
            source: Box::new(e),
        })?;
        if o.violated {
            violations += 1;
        }
        if worst.as_ref().is_none_or(|(m, _, _)| o.margin < *m) {
            worst = Some((o.margin, seed, o.note));
        }
    }
    let (worst_margin, worst_seed, note) = worst.expect("at least one trial");
    Ok(PropertyReport {
        property_id: id.to_string(),
        trials: spec.trials,
        violations,
        worst_margin,
        worst_seed,
        tolerance_used,
        status: if violations == 0 { Status::Pass } else { Status::Violated },
        detail: if violations > 0 { note } else { None },
    })
}

fn over_grid(spec: &EnsembleSpec, f: impl Fn(Weight<f64>) -> Result<PairOutcome>) -> Result<PairOutcome> {
    fold_outcomes(spec.lambda_grid.iter().map(|&w| f(w)))
}

pub fn check_re_geometric(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    run_check(spec, RE_GEOMETRIC, tol, |t| over_grid(spec, |w| re_geometric_margin(&t.a, &t.b, w, &cfg, tol)))
}

pub fn check_re_harmonic(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let tol = spec.tolerance;
    run_check(spec, RE_HARMONIC, tol, |t| over_grid(spec, |w| re_harmonic_margin(&t.a, &t.b, w, tol)))
}

pub fn check_re_relative_entropy(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    run_check(spec, RE_RELATIVE_ENTROPY, tol, |t| re_relative_entropy_margin(&t.a, &t.b, &cfg, tol))
}

pub fn check_re_tsallis(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    run_check(spec, RE_TSALLIS, tol, |t| over_grid(spec, |w| re_tsallis_margin(&t.a, &t.b, w, &cfg, tol)))
}

pub fn check_vector_family(spec: &EnsembleSpec, family_size: usize) -> Result<PropertyReport> {
    if family_size == 0 {
        return Err(Error::InvalidSpec("family size must be at least 1".into()));
    }
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    run_check(spec, VECTOR_FAMILY, tol, |t| {
        let family = t.vectors(family_size, "family")?;
        over_grid(spec, |w| vector_family_margin(&t.a, &t.b, w, &cfg, &family, tol))
    })
}

pub fn check_norm_inequality(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    run_check(spec, NORM_INEQUALITY, tol, |t| over_grid(spec, |w| norm_inequality_margin(&t.a, &t.b, w, &cfg, tol)))
}

pub fn check_bilinear(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    run_check(spec, BILINEAR, tol, |t| {
        let xs = t.vectors(BILINEAR_PAIRS, "x")?;
        let duals = t.vectors(BILINEAR_PAIRS, "x_star")?;
        let pairs: Vec<_> = xs.into_iter().zip(duals).collect();
        over_grid(spec, |w| bilinear_margin(&t.a, &t.b, w, &cfg, &pairs, tol))
    })
}

pub fn check_homogeneity(spec: &EnsembleSpec, scales: &[(f64, f64)]) -> Result<PropertyReport> {
    if scales.is_empty() {
        return Err(Error::InvalidSpec("no scale pairs given".into()));
    }
    let cfg = spec.integration();
    let tol = LoewnerTolerance { absolute: 0.0, relative: HOMOGENEITY_THRESHOLD };
    run_check(spec, HOMOGENEITY, tol, |t| {
        over_grid(spec, |w| {
            fold_outcomes(scales.iter().map(|&(alpha, beta)| {
                let dev = homogeneity_deviation(&t.a, &t.b, w, &cfg, alpha, beta)?;
                Ok(PairOutcome::deviation(dev, HOMOGENEITY_THRESHOLD)
                    .with_note(format!("alpha={alpha}, beta={beta}, lambda={}", w.value())))
            }))
        })
    })
}

pub fn check_symmetry(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let cfg = spec.integration();
    let tol = LoewnerTolerance { absolute: 0.0, relative: SYMMETRY_THRESHOLD };
    run_check(spec, SYMMETRY, tol, |t| {
        over_grid(spec, |w| Ok(PairOutcome::deviation(symmetry_deviation(&t.a, &t.b, w, &cfg)?, SYMMETRY_THRESHOLD)))
    })
}

/// Random search for pairs breaking the real-part AGH chain. Finding one is
/// the expected outcome for wide sectors and is reported as `witness_found`;
/// finding none yields `warning`.
pub fn search_agh_counterexample(spec: &EnsembleSpec) -> Result<PropertyReport> {
    let (cfg, tol) = (spec.integration(), spec.tolerance);
    // λ = 1/2 first, then the rest of the grid.
    let mut weights = vec![Weight::half()];
    weights.extend(spec.lambda_grid.iter().copied().filter(|w| w.value() != 0.5));
    let mut report = run_check(spec, AGH_SEARCH, tol, |t| {
        fold_outcomes(weights.iter().map(|&w| agh_chain_margin(&t.a, &t.b, w, &cfg, tol)))
    })?;
    report.status = if report.violations > 0 { Status::WitnessFound } else { Status::Warning };
    if report.violations == 0 {
        report.detail = Some(format!("no AGH-chain violation found in {} trials", report.trials));
    }
    Ok(report)
}

/// Runs one property by id with the default parameters of `run_all`.
pub fn run_property(spec: &EnsembleSpec, id: &str) -> Result<PropertyReport> {
    match id {
        RE_GEOMETRIC => check_re_geometric(spec),
        RE_HARMONIC => check_re_harmonic(spec),
        RE_RELATIVE_ENTROPY => check_re_relative_entropy(spec),
        RE_TSALLIS => check_re_tsallis(spec),
        VECTOR_FAMILY => check_vector_family(spec, DEFAULT_FAMILY_SIZE),
        NORM_INEQUALITY => check_norm_inequality(spec),
        BILINEAR => check_bilinear(spec),
        HOMOGENEITY => check_homogeneity(spec, &DEFAULT_SCALES),
        SYMMETRY => check_symmetry(spec),
        AGH_SEARCH => search_agh_counterexample(spec),
        other => Err(Error::InvalidSpec(format!("unknown property id {other:?}"))),
    }
}

/// Runs the listed properties; a failing check becomes an `error` report
/// instead of aborting the rest.
pub fn run_selected(spec: &EnsembleSpec, ids: &[&str]) -> Vec<PropertyReport> {
    ids.iter()
        .map(|&id| {
            run_property(spec, id).unwrap_or_else(|e| PropertyReport {
                property_id: id.to_string(),
                trials: spec.trials,
                violations: 0,
                worst_margin: 0.0,
                worst_seed: 0,
                tolerance_used: spec.tolerance,
                status: Status::Error,
                detail: Some(e.to_string()),
            })
        })
        .collect()
}

pub fn run_all(spec: &EnsembleSpec) -> Vec<PropertyReport> {
    run_selected(spec, &ALL_PROPERTIES)
}

#[derive(Serialize)]
struct SpecRecord<'a> {
    dim: usize,
    trials: usize,
    seed: u64,
    #[serde(serialize_with = "ser_f64")]
    sector_angle: f64,
    #[serde(serialize_with = "ser_f64_seq")]
    lambda_grid: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    cond_cap: f64,
    rule_nodes: usize,
    tolerance: LoewnerTolerance,
    generator: &'a str,
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    spec: SpecRecord<'a>,
    reports: &'a [PropertyReport],
}

/// The persisted report: `{"spec": {...}, "reports": [...]}` with fixed key order.
pub fn report_json(spec: &EnsembleSpec, reports: &[PropertyReport]) -> String {
    let doc = ReportDocument {
        spec: SpecRecord {
            dim: spec.dim,
            trials: spec.trials,
            seed: spec.seed,
            sector_angle: spec.sector_angle,
            lambda_grid: spec.lambda_grid.iter().map(|w| w.value()).collect(),
            cond_cap: spec.cond_cap,
            rule_nodes: spec.rule_nodes,
            tolerance: spec.tolerance,
            generator: GENERATOR,
        },
        reports,
    };
    serde_json::to_string_pretty(&doc).expect("report serialization is infallible")
}
