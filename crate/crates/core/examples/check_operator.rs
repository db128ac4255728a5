// Testing an operator against the product, involution and convolution laws.

use abelian_fourier::characterize::MatrixForm;
use abelian_fourier::{build_reference_operator, check_hypotheses, random_automorphism, Form, Group, Operator, Side};

pub fn run_example() -> abelian_fourier::Result<()> {
    let g = Group::new(&[3, 4])?;
    let psi = random_automorphism(&g, 7)?;
    let op = build_reference_operator(&g, &psi, true, Form::T)?;
    let report = check_hypotheses(&op, 16, 0, 1e-9)?;
    println!(
        "reference operator: a={:.1e} b={:.1e} c={:.1e} passed={}",
        report.max_err_a,
        report.max_err_b,
        report.max_err_c,
        report.passed()
    );

    // exchange two outputs of a point-mass permutation
    let id = build_reference_operator(&g, &psi, false, Form::U)?;
    let mut m: MatrixForm = id.capture_matrix(false)?;
    m.swap_rows(1, 2);
    let broken = Operator::from_matrix(&g, Side::Primal, Side::Primal, m)?;
    let report = check_hypotheses(&broken, 16, 0, 1e-9)?;
    println!(
        "rows swapped: a={:.1e} b={:.1e} c={:.1e} passed={}",
        report.max_err_a,
        report.max_err_b,
        report.max_err_c,
        report.passed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    run_example()
}
