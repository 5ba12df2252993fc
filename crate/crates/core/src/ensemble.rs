//! Seeded generation of positive definite and sector (accretive) matrices.
//!
//! Every generator is a pure function of its arguments. Independent streams
//! are derived from `(seed, index, tag)` with a SplitMix64 mix and fed to
//! ChaCha8, so any trial can be regenerated in isolation.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{congruence, hpd_sqrt_and_inv_sqrt, AccretiveMatrix, ComplexMatrix, HermitianMatrix, MAX_DIM};

type C64 = Complex<f64>;

/// Recorded in verification reports so frozen baselines name their source.
pub const GENERATOR: &str = "chacha8 (rand_chacha 0.9), streams keyed by splitmix64(seed, index, tag)";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent 64-bit stream seed.
pub fn stream_seed(seed: u64, index: u64, tag: &str) -> u64 {
    let tag_hash =
        tag.bytes().fold(0xCBF2_9CE4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3));
    splitmix64(splitmix64(seed) ^ splitmix64(index.wrapping_add(tag_hash)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Gaussian matrix.
fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix<f64> {
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|_| (0..dim).map(|_| gaussian_complex(rng)).collect()).collect();
    for j in 0..dim {
        // Two passes keep orthogonality at rounding level.
        for _ in 0..2 {
            for k in 0..j {
                let proj: C64 = cols[k].iter().zip(&cols[j]).map(|(q, v)| q.conj() * v).sum();
                let qk = cols[k].clone();
                for (v, q) in cols[j].iter_mut().zip(&qk) {
                    *v -= q * proj;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

fn conjugate_diag(u: &ComplexMatrix<f64>, diag: &[f64]) -> HermitianMatrix<f64> {
    let d = ComplexMatrix::from_real_diag(diag);
    HermitianMatrix::symmetrize(&(&(u * &d) * &u.adjoint()))
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidSpec(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

/// `U diag(μ) U*` with Haar `U` and log-uniform `μ ∈ [cond_cap^{-1/2}, cond_cap^{1/2}]`.
pub fn random_hpd(dim: usize, cond_cap: f64, seed: u64) -> Result<HermitianMatrix<f64>> {
    check_dim(dim)?;
    if !(cond_cap >= 1.0 && cond_cap.is_finite()) {
        return Err(Error::InvalidSpec(format!("cond_cap {cond_cap} must be finite and at least 1")));
    }
    if cond_cap == 1.0 {
        return Ok(HermitianMatrix::identity(dim));
    }
    let mut r = rng(seed);
    let half_log = 0.5 * cond_cap.ln();
    let mu: Vec<f64> = (0..dim).map(|_| r.random_range(-half_log..=half_log).exp()).collect();
    let u = random_unitary(dim, &mut r);
    Ok(conjugate_diag(&u, &mu))
}

/// Hermitian with spectrum uniform in [-1, 1], so `‖H‖ ≤ 1`.
fn random_contraction(dim: usize, seed: u64) -> HermitianMatrix<f64> {
    let mut r = rng(seed);
    let nu: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..=1.0)).collect();
    let w = random_unitary(dim, &mut r);
    conjugate_diag(&w, &nu)
}

/// Recipe for one sector matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpec {
    pub dim: usize,
    /// Half-angle of the sector containing the numerical range, radians in [0, π/2).
    pub angle: f64,
    pub cond_cap: f64,
    pub seed: u64,
}

impl SectorSpec {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.dim)?;
        if !(self.angle >= 0.0 && self.angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidSpec(format!("sector angle {} outside [0, π/2)", self.angle)));
        }
        if !(self.cond_cap >= 1.0 && self.cond_cap.is_finite()) {
            return Err(Error::InvalidSpec(format!("cond_cap {} must be finite and at least 1", self.cond_cap)));
        }
        Ok(())
    }
}

/// `A = P + i·tan(angle)·P^{1/2} H P^{1/2}` with `P` random positive definite
/// and `‖H‖ ≤ 1`, so `ℜA = P` and `-tan(angle)·P ⪯ ℑA ⪯ tan(angle)·P`.
pub fn random_accretive(spec: &SectorSpec) -> Result<AccretiveMatrix<f64>> {
    spec.validate()?;
    let p = random_hpd(spec.dim, spec.cond_cap, stream_seed(spec.seed, 0, "real"))?;
    let k = if spec.angle == 0.0 {
        None
    } else {
        let h = random_contraction(spec.dim, stream_seed(spec.seed, 0, "imag"));
        let (sqrt_p, _) = hpd_sqrt_and_inv_sqrt(&p)?;
        Some(congruence(&sqrt_p, &h).scale(spec.angle.tan()))
    };
    let a = match k {
        None => p.into_matrix(),
        Some(k) => {
            let pm = p.as_matrix();
            let km = k.as_matrix();
            ComplexMatrix::from_fn(spec.dim, |i, j| pm[(i, j)] + C64::i() * km[(i, j)])
        }
    };
    AccretiveMatrix::new(a)
}

/// Complex Gaussian vectors normalized to unit Euclidean length.
pub fn random_unit_vectors(dim: usize, count: usize, seed: u64) -> Result<Vec<Vec<C64>>> {
    check_dim(dim)?;
    if count == 0 {
        return Err(Error::InvalidSpec("vector count must be at least 1".into()));
    }
    let mut r = rng(seed);
    Ok((0..count)
        .map(|_| loop {
            let v: Vec<C64> = (0..dim).map(|_| gaussian_complex(&mut r)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-150 {
                break v.into_iter().map(|z| z / norm).collect();
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{herm_eig, imag_part};

    #[test]
    fn stream_seeds_differ_by_tag_and_index() {
        let base = stream_seed(7, 0, "A");
        assert_ne!(base, stream_seed(7, 0, "B"));
        assert_ne!(base, stream_seed(7, 1, "A"));
        assert_ne!(base, stream_seed(8, 0, "A"));
        assert_eq!(base, stream_seed(7, 0, "A"));
    }

    #[test]
    fn hpd_examples() {
        assert_eq!(random_hpd(4, 1.0, 99).unwrap(), HermitianMatrix::identity(4));
        let s = random_hpd(1, 16.0, 3).unwrap();
        let v = s.as_matrix()[(0, 0)];
        assert_eq!(v.im, 0.0);
        assert!(v.re >= 0.25 * (1.0 - 1e-12) && v.re <= 4.0 * (1.0 + 1e-12));
        assert_eq!(random_hpd(3, 10.0, 5).unwrap(), random_hpd(3, 10.0, 5).unwrap());
        assert_ne!(random_hpd(3, 10.0, 5).unwrap(), random_hpd(3, 10.0, 6).unwrap());
    }

    #[test]
    fn hpd_rejects_bad_args() {
        assert!(random_hpd(0, 2.0, 1).is_err());
        assert!(random_hpd(65, 2.0, 1).is_err());
        assert!(random_hpd(2, 0.5, 1).is_err());
    }

    #[test]
    fn accretive_examples() {
        let spec = SectorSpec { dim: 3, angle: 0.0, cond_cap: 10.0, seed: 11 };
        let a = random_accretive(&spec).unwrap();
        assert!(HermitianMatrix::is_exactly_hermitian(a.as_matrix()));

        let spec = SectorSpec { dim: 1, angle: std::f64::consts::FRAC_PI_4, cond_cap: 10.0, seed: 12 };
        let z = random_accretive(&spec).unwrap().as_matrix()[(0, 0)];
        assert!(z.im.abs() > 0.0 && z.im.abs() <= z.re * (1.0 + 1e-15));

        let spec = SectorSpec { dim: 4, angle: 1.0, cond_cap: 10.0, seed: 13 };
        assert_eq!(random_accretive(&spec).unwrap(), random_accretive(&spec).unwrap());
    }

    #[test]
    fn imaginary_part_bounded_by_real_part() {
        let angle = 1.2;
        let spec = SectorSpec { dim: 4, angle, cond_cap: 10.0, seed: 21 };
        let a = random_accretive(&spec).unwrap();
        let re = a.real_part();
        let im = imag_part(a.as_matrix());
        let upper = re.scale(angle.tan()).sub(&im);
        let lower = re.scale(angle.tan()).add(&im);
        assert!(herm_eig(&upper).unwrap().min() > -1e-12);
        assert!(herm_eig(&lower).unwrap().min() > -1e-12);
    }

    #[test]
    fn spec_validation() {
        let bad = SectorSpec { dim: 2, angle: std::f64::consts::FRAC_PI_2, cond_cap: 10.0, seed: 0 };
        assert!(random_accretive(&bad).is_err());
        let bad = SectorSpec { dim: 2, angle: 0.3, cond_cap: 0.9, seed: 0 };
        assert!(random_accretive(&bad).is_err());
    }

    #[test]
    fn unit_vectors() {
        let v = random_unit_vectors(1, 1, 4).unwrap();
        assert!((v[0][0].norm() - 1.0).abs() < 1e-15);
        for v in random_unit_vectors(6, 20, 5).unwrap() {
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-14);
        }
        assert_eq!(random_unit_vectors(3, 4, 9).unwrap(), random_unit_vectors(3, 4, 9).unwrap());
        assert!(random_unit_vectors(3, 0, 9).is_err());
    }
}
