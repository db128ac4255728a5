// Forward and inverse transforms on Z_4 × Z_3, fast path against the
// direct sum, and Plancherel.

use abelian_fourier::{Complex64, GFunction, Group, Side};

pub fn run_example() -> abelian_fourier::Result<()> {
    let g = Group::new(&[4, 3])?;
    println!("group {g:?}, {} elements", g.size());

    let f = GFunction::from_fn(&g, Side::Primal, |j| Complex64::new(j as f64, -(j as f64) / 2.0));
    let fast = f.fft_forward()?;
    let naive = f.dft_naive()?;
    println!("fft vs direct sum: {:.2e}", fast.max_abs_diff(&naive));

    let back = fast.fft_inverse()?;
    println!("inverse round trip: {:.2e}", back.max_abs_diff(&f));
    println!("‖f‖₂ = {:.6}, ‖f̂‖₂ = {:.6}", f.norm_2(), fast.norm_2());

    let x = g.element(&[1, 2])?;
    let spike = GFunction::delta(&g, x.index());
    println!("δ_(1,2)^ at ξ=(1,0): {:.3}", spike.fft_forward()?.at(g.element(&[1, 0])?.index()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    run_example()
}
