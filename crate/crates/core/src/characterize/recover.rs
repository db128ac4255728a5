//! Recovery of `ψ` and the conjugation flag from a conforming operator.
//!
//! With `U` the operator (or, for a T-form operator, the inverse transform
//! composed with it):
//!
//! 1. every `U(δ_x)` must be `{0,1}`-valued with a single support point
//!    `φ(x)`, since `δ_x` is an idempotent with singleton support;
//! 2. `U(1) = 1`;
//! 3. `φ` must be a bijection fixing `0` and additive; then `ψ = φ⁻¹`;
//! 4. the scalar map `m(α) = U(α·1)(0)` must not depend on the evaluation
//!    point, must be multiplicative and conjugate-additive, and must be
//!    either the identity or complex conjugation, which `m(i)` decides;
//! 5. finally `U f = m∘(f∘ψ)` is checked on every scaled point mass and on
//!    seeded random functions.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Form, Operator};
use crate::group::{find_additivity_violation, Automorphism, EXHAUSTIVE_HOMOMORPHISM_LIMIT};
use crate::random::{random_function, seeded_rng};
use crate::transform::{max_abs_diff, GFunction, Side, DEFAULT_SUPPORT_TOL_REL};
use crate::{Error, Result};

/// Scalars at which `m` is sampled.
pub const SCALAR_PROBES: [Complex64; 6] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(2.0, 0.0),
    Complex64::new(0.5, 0.0),
    Complex64::new(1.0, 1.0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RecoverOptions {
    /// Tolerance for algebraic identities.
    pub tol: f64,
    /// Support threshold relative to the sup norm of the function examined.
    pub support_tol_rel: f64,
    /// Seed for the random residual functions.
    pub seed: u64,
    pub random_trials: usize,
    /// Evaluate independent probes on the rayon pool. Reports are identical
    /// either way; set to `false` for operators that must not run
    /// concurrently.
    pub parallel: bool,
}

impl Default for RecoverOptions {
    fn default() -> Self {
        RecoverOptions {
            tol: 1e-9,
            support_tol_rel: DEFAULT_SUPPORT_TOL_REL,
            seed: 0,
            random_trials: 32,
            parallel: true,
        }
    }
}

impl RecoverOptions {
    pub fn with_tol(tol: f64) -> Self {
        RecoverOptions { tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarLaw {
    Multiplicativity,
    ConjugateAdditivity,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecoveryFailure {
    #[error("U(δ_{x}) is not {{0,1}}-valued (off by {error:.3e})")]
    NotIdempotent { x: usize, error: f64 },

    #[error("U(δ_{x}) has support {support:?}, expected a single point")]
    SupportNotSingleton { x: usize, support: Vec<usize> },

    #[error("U(1) differs from 1 by {error:.3e}")]
    UnitNotPreserved { error: f64 },

    #[error("point map sends both {first} and {second} to {image}")]
    NotBijective { first: usize, second: usize, image: usize },

    #[error("point map sends the identity to {image}")]
    IdentityNotFixed { image: usize },

    #[error("point map is not additive at the pair ({x}, {y})")]
    NotHomomorphism { x: usize, y: usize },

    #[error("U({alpha}·1) is not constant (spread {error:.3e})")]
    ScalarNotUniform { alpha: Complex64, error: f64 },

    #[error("scalar map is neither identity nor conjugation: m({alpha}) = {m}")]
    DichotomyViolation { alpha: Complex64, m: Complex64 },

    #[error("scalar map violates {law:?} by {error:.3e}")]
    ScalarLawViolation { law: ScalarLaw, error: f64 },

    #[error("vanishing correspondence fails for α·δ_{x}")]
    StarConditionViolated { x: usize },

    #[error("residual {residual:.3e} exceeds tolerance")]
    ResidualTooLarge { residual: f64 },
}

/// Per-step measurements taken during recovery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub form: Form,
    pub unit_error: f64,
    pub idempotency_error: f64,
    pub singleton_supports: bool,
    pub identity_fixed: bool,
    pub homomorphism: bool,
    /// whether additivity was checked on all pairs rather than sampled
    pub homomorphism_exhaustive: bool,
    pub scalar_uniformity_error: f64,
    pub multiplicativity_error: f64,
    pub conjugate_additivity_error: f64,
    pub star_condition: bool,
    pub probe_residual: f64,
    pub random_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryReport {
    pub psi: Automorphism,
    /// `true` when `m` is complex conjugation.
    pub conjugation: bool,
    pub residual: f64,
    pub m_samples: Vec<(Complex64, Complex64)>,
    pub diagnostics: Diagnostics,
    pub seed: u64,
}

impl RecoveryReport {
    /// The support map `φ = ψ⁻¹`.
    pub fn phi(&self) -> Automorphism {
        self.psi.inverse()
    }

    pub fn matches(&self, psi: &Automorphism, conjugation: bool) -> bool {
        self.psi.perm() == psi.perm() && self.conjugation == conjugation
    }
}

/// The operator viewed as a map on primal functions.
struct Reduced<'a> {
    op: &'a Operator,
    form: Form,
}

impl Reduced<'_> {
    fn new(op: &Operator) -> Result<Reduced<'_>> {
        let form = op.form().ok_or(Error::UnsupportedForm {
            input: op.input_side(),
            output: op.output_side(),
        })?;
        Ok(Reduced { op, form })
    }

    fn apply(&self, f: &GFunction) -> Result<GFunction> {
        let out = self.op.apply(f)?;
        match self.form {
            Form::U => Ok(out),
            Form::T => out.fft_inverse(),
        }
    }

    /// `m∘(f∘ψ)`
    fn expected(&self, f: &GFunction, psi: &Automorphism, conjugation: bool) -> GFunction {
        let pulled = f.compose_indices(psi.perm());
        if conjugation {
            pulled.conj()
        } else {
            pulled
        }
    }
}

fn map_indices<T: Send>(n: usize, parallel: bool, f: impl Fn(usize) -> T + Send + Sync) -> Vec<T> {
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

fn distance_to_bits(v: Complex64) -> f64 {
    v.norm().min((v - 1.0).norm())
}

/// Recovers `ψ` and the conjugation flag, or reports the first step at which
/// the operator fails to be essentially the Fourier transform.
pub fn recover(op: &Operator, options: &RecoverOptions) -> Result<RecoveryReport> {
    let u = Reduced::new(op)?;
    let group = op.group();
    let n = group.size();
    let tol = options.tol;
    let one = Complex64::new(1.0, 0.0);

    // point masses: φ(x) = the support point of U(δ_x)
    let images = map_indices(n, options.parallel, |x| -> Result<(usize, f64)> {
        let d = u.apply(&GFunction::delta(group, x))?;
        let idempotency = d.values().iter().map(|&v| distance_to_bits(v)).fold(0.0, f64::max);
        if idempotency > tol {
            return Err(RecoveryFailure::NotIdempotent { x, error: idempotency }.into());
        }
        let support = d.support(options.support_tol_rel * d.norm_inf());
        match support.singleton() {
            Some(y) => Ok((y, idempotency)),
            None => Err(RecoveryFailure::SupportNotSingleton { x, support: support.to_vec() }.into()),
        }
    });
    let mut phi = Vec::with_capacity(n);
    let mut idempotency_error = 0.0f64;
    for image in images {
        let (y, err) = image?;
        phi.push(y);
        idempotency_error = idempotency_error.max(err);
    }

    let unit = GFunction::constant(group, Side::Primal, one);
    let unit_error = u.apply(&unit)?.max_abs_diff(&unit);
    if unit_error > tol {
        return Err(RecoveryFailure::UnitNotPreserved { error: unit_error }.into());
    }

    let mut preimage = vec![usize::MAX; n];
    for (x, &y) in phi.iter().enumerate() {
        if preimage[y] != usize::MAX {
            return Err(RecoveryFailure::NotBijective { first: preimage[y], second: x, image: y }.into());
        }
        preimage[y] = x;
    }
    if phi[0] != 0 {
        return Err(RecoveryFailure::IdentityNotFixed { image: phi[0] }.into());
    }
    if let Some((x, y)) = find_additivity_violation(&phi, group) {
        return Err(RecoveryFailure::NotHomomorphism { x, y }.into());
    }
    let psi = Automorphism::from_perm_unchecked(group, preimage);

    // scalar map
    let m_of = |alpha: Complex64| -> Result<(Complex64, f64)> {
        let image = u.apply(&unit.scale(alpha))?;
        let m = image.at(0);
        let spread = image.values().iter().map(|v| (v - m).norm()).fold(0.0, f64::max);
        Ok((m, spread))
    };
    let mut m_samples = Vec::with_capacity(SCALAR_PROBES.len());
    let mut scalar_uniformity_error = 0.0f64;
    for alpha in SCALAR_PROBES {
        let (m, spread) = m_of(alpha)?;
        if spread > tol {
            return Err(RecoveryFailure::ScalarNotUniform { alpha, error: spread }.into());
        }
        scalar_uniformity_error = scalar_uniformity_error.max(spread);
        m_samples.push((alpha, m));
    }
    let i = Complex64::i();
    let m_i = m_samples[2].1;
    let conjugation = if (m_i + i).norm() < (m_i - i).norm() && (m_i + i).norm() <= tol {
        true
    } else if (m_i - i).norm() <= tol {
        false
    } else {
        return Err(RecoveryFailure::DichotomyViolation { alpha: i, m: m_i }.into());
    };
    let scalar = |a: Complex64| if conjugation { a.conj() } else { a };
    for &(alpha, m) in &m_samples {
        if (m - scalar(alpha)).norm() > tol {
            return Err(RecoveryFailure::DichotomyViolation { alpha, m }.into());
        }
    }
    let mut multiplicativity_error = 0.0f64;
    let mut conjugate_additivity_error = 0.0f64;
    for &(a, ma) in &m_samples {
        for &(b, mb) in &m_samples {
            let (m_ab, _) = m_of(a * b)?;
            multiplicativity_error = multiplicativity_error.max((m_ab - ma * mb).norm());
            let (m_sum, _) = m_of(a + b.conj())?;
            conjugate_additivity_error = conjugate_additivity_error.max((m_sum - ma - mb.conj()).norm());
        }
    }
    if multiplicativity_error > tol {
        return Err(RecoveryFailure::ScalarLawViolation {
            law: ScalarLaw::Multiplicativity,
            error: multiplicativity_error,
        }
        .into());
    }
    if conjugate_additivity_error > tol {
        return Err(RecoveryFailure::ScalarLawViolation {
            law: ScalarLaw::ConjugateAdditivity,
            error: conjugate_additivity_error,
        }
        .into());
    }

    // residual on α·δ_x, together with the vanishing correspondence
    let probes = map_indices(n, options.parallel, |x| -> Result<(f64, bool)> {
        let mut worst = 0.0f64;
        let mut vanishing_ok = true;
        for alpha in SCALAR_PROBES {
            let f = GFunction::scaled_delta(group, Side::Primal, x, alpha);
            let uf = u.apply(&f)?;
            worst = worst.max(uf.max_abs_diff(&u.expected(&f, &psi, conjugation)));
            let support = uf.support(options.support_tol_rel * uf.norm_inf());
            vanishing_ok &= support.singleton() == Some(phi[x]);
        }
        Ok((worst, vanishing_ok))
    });
    let mut probe_residual = 0.0f64;
    for (x, probe) in probes.into_iter().enumerate() {
        let (err, vanishing_ok) = probe?;
        if !vanishing_ok {
            return Err(RecoveryFailure::StarConditionViolated { x }.into());
        }
        probe_residual = probe_residual.max(err);
    }
    let random_residual = random_residual(&u, &psi, conjugation, options.random_trials, options.seed)?;
    let residual = probe_residual.max(random_residual);
    if residual > tol {
        return Err(RecoveryFailure::ResidualTooLarge { residual }.into());
    }

    Ok(RecoveryReport {
        psi,
        conjugation,
        residual,
        m_samples,
        diagnostics: Diagnostics {
            form: u.form,
            unit_error,
            idempotency_error,
            singleton_supports: true,
            identity_fixed: true,
            homomorphism: true,
            homomorphism_exhaustive: n <= EXHAUSTIVE_HOMOMORPHISM_LIMIT,
            scalar_uniformity_error,
            multiplicativity_error,
            conjugate_additivity_error,
            star_condition: true,
            probe_residual,
            random_residual,
        },
        seed: options.seed,
    })
}

fn random_residual(u: &Reduced<'_>, psi: &Automorphism, conjugation: bool, trials: usize, seed: u64) -> Result<f64> {
    let group = u.op.group();
    let mut rng = seeded_rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let f = random_function(group, Side::Primal, &mut rng);
        let uf = u.apply(&f)?;
        worst = worst.max(max_abs_diff(uf.values(), u.expected(&f, psi, conjugation).values()));
    }
    Ok(worst)
}

/// Independent check of a report: max-abs of `U f - m∘(f∘ψ)` over every
/// point mass and `trials` fresh random functions drawn from `seed`.
pub fn verify_recovery(op: &Operator, report: &RecoveryReport, trials: usize, seed: u64) -> Result<f64> {
    let u = Reduced::new(op)?;
    let group = op.group();
    group.ensure_same(report.psi.group())?;
    let mut worst = 0.0f64;
    for x in 0..group.size() {
        let f = GFunction::delta(group, x);
        let uf = u.apply(&f)?;
        worst = worst.max(uf.max_abs_diff(&u.expected(&f, &report.psi, report.conjugation)));
    }
    Ok(worst.max(random_residual(&u, &report.psi, report.conjugation, trials, seed)?))
}
