use serde::{Deserialize, Serialize};

use super::Operator;
use crate::random::{random_function, seeded_rng};
use crate::transform::GFunction;
use crate::Result;

/// Point-mass pairs are checked exhaustively while `size² ≤` this.
pub const POINT_MASS_PAIR_LIMIT: usize = 4096;

/// Worst observed discrepancy for each of the three laws.
///
/// * `a`: additivity twisted by the involution. `U(f + g*) = U(f) + U(g)*`
///   when the operator keeps the side; when it changes sides the image of
///   `g*` is the pointwise conjugate, `T(f + g*) = T(f) + conj(T(g))`, since
///   the transform sends `g*` to `conj(ĝ)`;
/// * `b`: the product law, `T(f·g) = T(f) ∗ T(g)` when the operator changes
///   sides and `U(f·g) = U(f)·U(g)` when it does not;
/// * `c`: the convolution law, `T(f∗g) = T(f)·T(g)` when it changes sides and
///   `U(f∗g) = U(f) ∗ U(g)` when it does not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub max_err_a: f64,
    pub max_err_b: f64,
    pub max_err_c: f64,
    pub pass_a: bool,
    pub pass_b: bool,
    pub pass_c: bool,
    pub tol: f64,
    /// random pairs evaluated
    pub trials: usize,
    /// point-mass pairs evaluated
    pub point_mass_pairs: usize,
    pub seed: u64,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.pass_a && self.pass_b && self.pass_c
    }
}

struct Errors {
    a: f64,
    b: f64,
    c: f64,
}

fn convolve(f: &GFunction, g: &GFunction) -> Result<GFunction> {
    // direct summation is exact enough and cheap on small groups
    if f.group().size() <= 64 {
        f.convolve(g)
    } else {
        f.convolve_fast(g)
    }
}

fn evaluate_pair(op: &Operator, f: &GFunction, g: &GFunction) -> Result<Errors> {
    let exchanges = op.input_side() != op.output_side();
    let tf = op.apply(f)?;
    let tg = op.apply(g)?;

    let lhs_a = op.apply(&f.add(&g.star())?)?;
    let rhs_a = if exchanges { tf.add(&tg.conj())? } else { tf.add(&tg.star())? };

    let lhs_b = op.apply(&f.pointwise_product(g)?)?;
    let rhs_b = if exchanges { convolve(&tf, &tg)? } else { tf.pointwise_product(&tg)? };

    let lhs_c = op.apply(&convolve(f, g)?)?;
    let rhs_c = if exchanges { tf.pointwise_product(&tg)? } else { convolve(&tf, &tg)? };

    Ok(Errors {
        a: lhs_a.max_abs_diff(&rhs_a),
        b: lhs_b.max_abs_diff(&rhs_b),
        c: lhs_c.max_abs_diff(&rhs_c),
    })
}

/// Evaluates the three laws on every pair of point masses (when
/// `size² ≤ POINT_MASS_PAIR_LIMIT`) and on `trials` seeded pairs of complex
/// Gaussian functions, recording the max-abs discrepancy of each.
pub fn check_hypotheses(op: &Operator, trials: usize, seed: u64, tol: f64) -> Result<HypothesisReport> {
    let group = op.group();
    let side = op.input_side();
    let n = group.size();
    let mut worst = Errors { a: 0.0, b: 0.0, c: 0.0 };
    let mut absorb = |e: Errors| {
        worst.a = worst.a.max(e.a);
        worst.b = worst.b.max(e.b);
        worst.c = worst.c.max(e.c);
    };

    let mut point_mass_pairs = 0;
    if n * n <= POINT_MASS_PAIR_LIMIT {
        let one = num_complex::Complex64::new(1.0, 0.0);
        let deltas: Vec<GFunction> = (0..n)
            .map(|x| GFunction::scaled_delta(group, side, x, one))
            .collect();
        for f in &deltas {
            for g in &deltas {
                absorb(evaluate_pair(op, f, g)?);
                point_mass_pairs += 1;
            }
        }
    }

    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        let f = random_function(group, side, &mut rng);
        let g = random_function(group, side, &mut rng);
        absorb(evaluate_pair(op, &f, &g)?);
    }

    Ok(HypothesisReport {
        pass_a: worst.a <= tol,
        pass_b: worst.b <= tol,
        pass_c: worst.c <= tol,
        max_err_a: worst.a,
        max_err_b: worst.b,
        max_err_c: worst.c,
        tol,
        trials,
        point_mass_pairs,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::{build_reference_operator, Form, MatrixForm};
    use crate::group::{random_automorphism, Automorphism, Group};
    use crate::transform::Side;

    #[test]
    fn reference_t_operator_passes() {
        let g = Group::new(&[4, 3]).unwrap();
        let psi = random_automorphism(&g, 1).unwrap();
        for conj in [false, true] {
            let op = build_reference_operator(&g, &psi, conj, Form::T).unwrap();
            let report = check_hypotheses(&op, 8, 42, 1e-10).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.point_mass_pairs, 144);
        }
    }

    #[test]
    fn identity_u_passes_exactly() {
        let g = Group::new(&[5, 2]).unwrap();
        let op = build_reference_operator(&g, &Automorphism::identity(&g), false, Form::U).unwrap();
        let report = check_hypotheses(&op, 4, 0, 1e-9).unwrap();
        assert_eq!(report.max_err_a, 0.0);
        assert_eq!(report.max_err_b, 0.0);
        assert!(report.passed());
    }

    #[test]
    fn swapped_basis_outputs_break_the_convolution_law() {
        let z4 = Group::new(&[4]).unwrap();
        let psi = Automorphism::from_perm(&z4, vec![0, 3, 2, 1]).unwrap();
        let op = build_reference_operator(&z4, &psi, false, Form::U).unwrap();
        let m = op.capture_matrix(false).unwrap();
        // exchange the images of δ_1 and δ_2
        let n = m.dim();
        let mut entries = m.entries().to_vec();
        for row in 0..n {
            entries.swap(row * n + 1, row * n + 2);
        }
        let bad = Operator::from_matrix(&z4, Side::Primal, Side::Primal, MatrixForm::new(n, entries, false).unwrap())
            .unwrap();
        let report = check_hypotheses(&bad, 4, 0, 1e-9).unwrap();
        assert!(!report.passed());
        assert!(report.max_err_c >= 0.5, "{report:?}");
    }

    #[test]
    fn deterministic_in_seed() {
        let g = Group::new(&[9]).unwrap();
        let op = build_reference_operator(&g, &random_automorphism(&g, 3).unwrap(), true, Form::T).unwrap();
        let a = check_hypotheses(&op, 5, 77, 1e-9).unwrap();
        let b = check_hypotheses(&op, 5, 77, 1e-9).unwrap();
        assert_eq!(a, b);
    }
}
