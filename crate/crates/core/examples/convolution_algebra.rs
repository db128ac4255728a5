// The two products of the group algebra and how the transform swaps them.

use abelian_fourier::random::{random_function, seeded_rng};
use abelian_fourier::{GFunction, Group, Side};

pub fn run_example() -> abelian_fourier::Result<()> {
    let g = Group::new(&[6, 5])?;
    let mut rng = seeded_rng(1);
    let f = random_function(&g, Side::Primal, &mut rng);
    let h = random_function(&g, Side::Primal, &mut rng);
    let (fh, hh) = (f.fft_forward()?, h.fft_forward()?);

    let conv = f.convolve(&h)?;
    println!("direct vs fast convolution: {:.2e}", conv.max_abs_diff(&f.convolve_fast(&h)?));
    println!("(f∗h)^ - f̂ĥ: {:.2e}", conv.fft_forward()?.max_abs_diff(&fh.pointwise_product(&hh)?));

    // the dual side carries weight 1/|G|
    let prod = f.pointwise_product(&h)?;
    println!("(fh)^ - f̂∗ĥ: {:.2e}", prod.fft_forward()?.max_abs_diff(&fh.convolve(&hh)?));

    println!("(f*)^ - conj(f̂): {:.2e}", f.star().fft_forward()?.max_abs_diff(&fh.conj()));

    let unit = GFunction::delta(&g, 0);
    println!("δ_0 ∗ f - f: {:.2e}", unit.convolve(&f)?.max_abs_diff(&f));
    let a = GFunction::delta(&g, g.element(&[2, 4])?.index());
    let b = GFunction::delta(&g, g.element(&[5, 3])?.index());
    let at = a.convolve(&b)?.support_default().to_vec();
    println!("δ_(2,4) ∗ δ_(5,3) is supported at {:?}", g.element_of(at[0])?.coords());
    Ok(())
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    run_example()
}
