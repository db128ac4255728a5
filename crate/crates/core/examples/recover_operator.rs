// Recovering ψ and the conjugation flag from a black-box operator, and
// watching recovery refuse something that is not of that shape.

use abelian_fourier::characterize::MatrixForm;
use abelian_fourier::{
    build_reference_operator, random_automorphism, recover, verify_recovery, Complex64, Error, Form, Group, Operator,
    RecoverOptions, Side,
};

pub fn run_example() -> abelian_fourier::Result<()> {
    let g = Group::new(&[2, 6])?;
    let psi = random_automorphism(&g, 3)?;
    let op = build_reference_operator(&g, &psi, true, Form::T)?;

    let report = recover(&op, &RecoverOptions::default())?;
    println!("hidden ψ    {:?}", psi.perm());
    println!("recovered ψ {:?}", report.psi.perm());
    println!("conjugation {}, residual {:.1e}", report.conjugation, report.residual);
    for (alpha, m) in &report.m_samples {
        println!("  m({alpha}) = {m:.3}");
    }
    println!("independent check: {:.1e}", verify_recovery(&op, &report, 8, 99)?);

    let n = g.size();
    let ones = MatrixForm::new(n, vec![Complex64::new(1.0, 0.0); n * n], false)?;
    let smeared = Operator::from_matrix(&g, Side::Primal, Side::Primal, ones)?;
    match recover(&smeared, &RecoverOptions::default()) {
        Err(Error::Recovery(why)) => println!("all-ones matrix: {why}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    run_example()
}
