//! Black-box operators on function spaces, the algebraic laws that force an
//! operator to be essentially the Fourier transform, and the constructive
//! recovery of the automorphism behind such an operator.
//!
//! Two shapes of operator are distinguished by their declared sides:
//!
//! * **T-form**, primal → dual: expected to look like `f ↦ (f∘ψ)^` or
//!   `f ↦ (conj(f∘ψ))^`. It must exchange products and convolutions.
//! * **U-form**, primal → primal: expected to look like `f ↦ f∘ψ` or
//!   `f ↦ conj(f∘ψ)`. It must preserve products and convolutions.
//!
//! A T-form operator reduces to a U-form one by composing with the inverse
//! transform. Nothing here assumes linearity; operators are only ever
//! evaluated.

mod hypotheses;
mod recover;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::group::{Automorphism, Group};
use crate::transform::{GFunction, Side};
use crate::{Error, Result};

pub use hypotheses::{check_hypotheses, HypothesisReport, POINT_MASS_PAIR_LIMIT};
pub use recover::{
    recover, verify_recovery, Diagnostics, RecoverOptions, RecoveryFailure, RecoveryReport, ScalarLaw, SCALAR_PROBES,
};

type ApplyFn = dyn Fn(&[Complex64]) -> Vec<Complex64> + Send + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    /// primal → dual
    T,
    /// primal → primal
    U,
}

impl Form {
    pub fn output_side(self) -> Side {
        match self {
            Form::T => Side::Dual,
            Form::U => Side::Primal,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::T => "T",
            Form::U => "U",
        })
    }
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "T" | "t" => Ok(Form::T),
            "U" | "u" => Ok(Form::U),
            other => Err(format!("unknown operator form {other:?}, expected T or U")),
        }
    }
}

/// Dense matrix serialization of an operator: `apply(f) = M · f`, or
/// `M · conj(f)` when `conjugate_input` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixForm {
    dim: usize,
    /// row-major, `entries[row * dim + col]`
    entries: Vec<Complex64>,
    conjugate_input: bool,
}

impl MatrixForm {
    pub fn new(dim: usize, entries: Vec<Complex64>, conjugate_input: bool) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Format(format!(
                "matrix has {} entries, expected {dim}×{dim}",
                entries.len()
            )));
        }
        Ok(MatrixForm { dim, entries, conjugate_input })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conjugate_input(&self) -> bool {
        self.conjugate_input
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for col in 0..self.dim {
            self.entries.swap(a * self.dim + col, b * self.dim + col);
        }
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|row| {
                self.row(row)
                    .iter()
                    .zip(f)
                    .map(|(m, v)| if self.conjugate_input { m * v.conj() } else { m * v })
                    .sum()
            })
            .collect()
    }
}

/// A map from functions on one side of a group to functions on a side of the
/// same group.
#[derive(Clone)]
pub struct Operator {
    group: Group,
    input_side: Side,
    output_side: Side,
    apply: Arc<ApplyFn>,
    matrix: Option<Arc<MatrixForm>>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator")
            .field("group", &self.group)
            .field("input_side", &self.input_side)
            .field("output_side", &self.output_side)
            .field("has_matrix", &self.matrix.is_some())
            .finish()
    }
}

impl Operator {
    /// Wraps an arbitrary map on value vectors. `apply` must return a vector
    /// of the group's size.
    pub fn new(
        group: &Group,
        input_side: Side,
        output_side: Side,
        apply: impl Fn(&[Complex64]) -> Vec<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Operator {
            group: group.clone(),
            input_side,
            output_side,
            apply: Arc::new(apply),
            matrix: None,
        }
    }

    pub fn from_matrix(group: &Group, input_side: Side, output_side: Side, matrix: MatrixForm) -> Result<Self> {
        if matrix.dim != group.size() {
            return Err(Error::Format(format!(
                "matrix dimension {} does not match group size {}",
                matrix.dim,
                group.size()
            )));
        }
        let matrix = Arc::new(matrix);
        let inner = matrix.clone();
        Ok(Operator {
            group: group.clone(),
            input_side,
            output_side,
            apply: Arc::new(move |f: &[Complex64]| inner.apply(f)),
            matrix: Some(matrix),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn input_side(&self) -> Side {
        self.input_side
    }

    pub fn output_side(&self) -> Side {
        self.output_side
    }

    pub fn form(&self) -> Option<Form> {
        match (self.input_side, self.output_side) {
            (Side::Primal, Side::Dual) => Some(Form::T),
            (Side::Primal, Side::Primal) => Some(Form::U),
            _ => None,
        }
    }

    pub fn matrix(&self) -> Option<&MatrixForm> {
        self.matrix.as_deref()
    }

    pub fn apply(&self, f: &GFunction) -> Result<GFunction> {
        self.group.ensure_same(f.group())?;
        if f.side() != self.input_side {
            return Err(Error::SideMismatch {
                expected: self.input_side,
                found: f.side(),
            });
        }
        let out = (self.apply)(f.values());
        GFunction::new(&self.group, self.output_side, out)
    }

    /// Dense matrix whose columns are the images of the point masses.
    ///
    /// This reproduces the operator exactly only when it is linear
    /// (`conjugate_input = false`) or conjugate-linear (`true`).
    pub fn capture_matrix(&self, conjugate_input: bool) -> Result<MatrixForm> {
        let n = self.group.size();
        let mut entries = vec![Complex64::default(); n * n];
        for col in 0..n {
            let image = self.apply(&GFunction::scaled_delta(
                &self.group,
                self.input_side,
                col,
                Complex64::new(1.0, 0.0),
            ))?;
            for (row, v) in image.values().iter().enumerate() {
                entries[row * n + col] = *v;
            }
        }
        MatrixForm::new(n, entries, conjugate_input)
    }

    /// The same operator with its matrix form attached, captured from the
    /// point masses.
    pub fn with_captured_matrix(mut self, conjugate_input: bool) -> Result<Self> {
        let matrix = self.capture_matrix(conjugate_input)?;
        self.matrix = Some(Arc::new(matrix));
        Ok(self)
    }
}

/// The operator `f ↦ f∘ψ` (U-form) or `f ↦ (f∘ψ)^` (T-form), with `f`
/// conjugated first when `conjugation` is set.
pub fn build_reference_operator(group: &Group, psi: &Automorphism, conjugation: bool, form: Form) -> Result<Operator> {
    group.ensure_same(psi.group())?;
    let perm: Arc<[usize]> = psi.perm().into();
    let pull_back = move |f: &[Complex64]| -> Vec<Complex64> {
        perm.iter()
            .map(|&j| if conjugation { f[j].conj() } else { f[j] })
            .collect()
    };
    Ok(match form {
        Form::U => Operator::new(group, Side::Primal, Side::Primal, pull_back),
        Form::T => {
            let plan = group.plan().clone();
            Operator::new(group, Side::Primal, Side::Dual, move |f| {
                let mut values = pull_back(f);
                plan.forward(&mut values);
                values
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_function, seeded_rng};

    #[test]
    fn reference_u_identity_is_identity() {
        let g = Group::new(&[3, 4]).unwrap();
        let op = build_reference_operator(&g, &Automorphism::identity(&g), false, Form::U).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(1));
        assert_eq!(op.apply(&f).unwrap(), f);
        assert_eq!(op.form(), Some(Form::U));
    }

    #[test]
    fn reference_t_identity_is_fourier() {
        let g = Group::new(&[6, 5]).unwrap();
        let op = build_reference_operator(&g, &Automorphism::identity(&g), false, Form::T).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(2));
        let out = op.apply(&f).unwrap();
        assert_eq!(out.side(), Side::Dual);
        assert!(out.max_abs_diff(&f.dft_naive().unwrap()) < 1e-10);
    }

    #[test]
    fn reference_u_pulls_back_point_masses() {
        // (δ_1 ∘ ψ)(x) = δ_1(3x), which is δ_3 because 3·3 = 1 mod 4
        let z4 = Group::new(&[4]).unwrap();
        let psi = Automorphism::from_perm(&z4, vec![0, 3, 2, 1]).unwrap();
        let op = build_reference_operator(&z4, &psi, false, Form::U).unwrap();
        let out = op.apply(&GFunction::delta(&z4, 1)).unwrap();
        let table: Vec<Complex64> = (0..4)
            .map(|x| if (3 * x) % 4 == 1 { Complex64::new(1.0, 0.0) } else { Complex64::default() })
            .collect();
        assert_eq!(out.values(), &table[..]);
        assert_eq!(out, GFunction::delta(&z4, 3));
    }

    #[test]
    fn conjugating_reference_conjugates() {
        let g = Group::new(&[5]).unwrap();
        let op = build_reference_operator(&g, &Automorphism::identity(&g), true, Form::U).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(4));
        assert_eq!(op.apply(&f).unwrap(), f.conj());
    }

    #[test]
    fn apply_checks_side_and_group() {
        let g = Group::new(&[4]).unwrap();
        let op = build_reference_operator(&g, &Automorphism::identity(&g), false, Form::T).unwrap();
        assert!(matches!(
            op.apply(&GFunction::zeros(&g, Side::Dual)),
            Err(Error::SideMismatch { .. })
        ));
        let other = Group::new(&[2, 2]).unwrap();
        assert!(matches!(
            op.apply(&GFunction::zeros(&other, Side::Primal)),
            Err(Error::GroupMismatch { .. })
        ));
        let psi = Automorphism::identity(&other);
        assert!(build_reference_operator(&g, &psi, false, Form::U).is_err());
    }

    #[test]
    fn captured_matrix_reproduces_operator() {
        let g = Group::new(&[3, 3]).unwrap();
        let psi = crate::random_automorphism(&g, 7).unwrap();
        for conj in [false, true] {
            let op = build_reference_operator(&g, &psi, conj, Form::T).unwrap();
            let m = op.capture_matrix(conj).unwrap();
            let dense = Operator::from_matrix(&g, Side::Primal, Side::Dual, m).unwrap();
            let f = random_function(&g, Side::Primal, &mut seeded_rng(8));
            let err = dense.apply(&f).unwrap().max_abs_diff(&op.apply(&f).unwrap());
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn two_point_fourier_matrix() {
        let z2 = Group::new(&[2]).unwrap();
        let op = build_reference_operator(&z2, &Automorphism::identity(&z2), false, Form::T).unwrap();
        let m = op.capture_matrix(false).unwrap();
        let expected = [1.0, 1.0, 1.0, -1.0].map(|re| Complex64::new(re, 0.0));
        assert!(crate::transform::max_abs_diff(m.entries(), &expected) < 1e-15);
    }
}
