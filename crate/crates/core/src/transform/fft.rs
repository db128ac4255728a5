//! Fast transform plans.
//!
//! A multi-dimensional transform is done row-column: a 1-D transform along
//! each cyclic factor in turn. Each 1-D length is factored into radices 4, 2,
//! 3, 5 and primes; smooth lengths run a recursive decimation-in-time
//! Cooley–Tukey, and the largest prime factor of a non-smooth length is
//! handled at the leaves by Bluestein's chirp-z algorithm on a power-of-two
//! grid. Twiddles are computed directly (never by repeated multiplication) and
//! cached per plan; 1-D kernels are shared between factors of equal order.
//!
//! All kernels compute the forward transform `X_k = Σ_j x_j e^{-2πi jk/n}`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::group::root_of_unity;

/// Largest prime handled by a direct butterfly inside Cooley–Tukey. Lengths
/// with two or more prime factors above this go to Bluestein as a whole.
const MAX_GENERIC_RADIX: usize = 61;

/// e^{-2πi k/n}
fn root(k: usize, n: usize) -> Complex64 {
    root_of_unity(k, n).conj()
}

pub(crate) struct FftPlan {
    orders: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    kernels: Vec<Option<Arc<Kernel>>>,
}

impl FftPlan {
    pub(crate) fn new(orders: &[usize]) -> Self {
        let mut cache: HashMap<usize, Arc<Kernel>> = HashMap::new();
        let kernels = orders
            .iter()
            .map(|&n| {
                (n > 1).then(|| cache.entry(n).or_insert_with(|| Arc::new(Kernel::new(n))).clone())
            })
            .collect();
        let mut strides = vec![1; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        FftPlan {
            orders: orders.to_vec(),
            strides,
            size: orders.iter().product(),
            kernels,
        }
    }

    /// In-place forward transform of a row-major array.
    pub(crate) fn forward(&self, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.size);
        for (axis, kernel) in self.kernels.iter().enumerate() {
            let Some(kernel) = kernel else { continue };
            let n = self.orders[axis];
            let stride = self.strides[axis];
            let block = n * stride;
            let mut line = vec![Complex64::default(); n];
            let mut out = vec![Complex64::default(); n];
            for base in (0..self.size).step_by(block) {
                for inner in 0..stride {
                    let start = base + inner;
                    for (j, v) in line.iter_mut().enumerate() {
                        *v = data[start + j * stride];
                    }
                    kernel.process(&line, &mut out);
                    for (j, v) in out.iter().enumerate() {
                        data[start + j * stride] = *v;
                    }
                }
            }
        }
    }

    /// In-place inverse transform, including the `1/size` factor.
    pub(crate) fn inverse(&self, data: &mut [Complex64]) {
        data.iter_mut().for_each(|v| *v = v.conj());
        self.forward(data);
        let scale = 1.0 / self.size as f64;
        data.iter_mut().for_each(|v| *v = v.conj() * scale);
    }
}

/// A 1-D forward transform of fixed length.
pub(crate) enum Kernel {
    Trivial,
    CooleyTukey(MixedRadix),
    Bluestein(Bluestein),
}

impl Kernel {
    pub(crate) fn new(n: usize) -> Self {
        if n <= 1 {
            return Kernel::Trivial;
        }
        let mut smooth = Vec::new();
        let mut rest = n;
        for p in [4, 2, 3, 5] {
            while rest.is_multiple_of(p) {
                smooth.push(p);
                rest /= p;
            }
        }
        let mut rough = prime_factors(rest);
        match rough.pop() {
            None => {
                let leaf = smooth.pop().expect("n > 1 has a factor");
                Kernel::CooleyTukey(MixedRadix::new(n, smooth, Leaf::Direct(leaf)))
            }
            Some(largest) if rough.iter().all(|&p| p <= MAX_GENERIC_RADIX) => {
                if smooth.is_empty() && rough.is_empty() {
                    return Kernel::Bluestein(Bluestein::new(n));
                }
                smooth.extend(rough);
                Kernel::CooleyTukey(MixedRadix::new(
                    n,
                    smooth,
                    Leaf::Bluestein(Box::new(Bluestein::new(largest))),
                ))
            }
            Some(_) => Kernel::Bluestein(Bluestein::new(n)),
        }
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        match self {
            Kernel::Trivial => 1,
            Kernel::CooleyTukey(k) => k.n,
            Kernel::Bluestein(k) => k.n,
        }
    }

    pub(crate) fn process(&self, input: &[Complex64], output: &mut [Complex64]) {
        match self {
            Kernel::Trivial => output.copy_from_slice(input),
            Kernel::CooleyTukey(k) => k.process(input, 1, output),
            Kernel::Bluestein(k) => k.process(input, 1, output),
        }
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) enum Leaf {
    Direct(usize),
    Bluestein(Box<Bluestein>),
}

impl Leaf {
    fn len(&self) -> usize {
        match self {
            Leaf::Direct(n) => *n,
            Leaf::Bluestein(b) => b.n,
        }
    }
}

/// Recursive decimation-in-time Cooley–Tukey over a list of radices, outermost
/// first, ending in a leaf transform.
pub(crate) struct MixedRadix {
    n: usize,
    radices: Vec<usize>,
    leaf: Leaf,
    twiddles: Vec<Complex64>,
}

impl MixedRadix {
    fn new(n: usize, radices: Vec<usize>, leaf: Leaf) -> Self {
        debug_assert_eq!(radices.iter().product::<usize>() * leaf.len(), n);
        let twiddles = (0..n).map(|k| root(k, n)).collect();
        MixedRadix { n, radices, leaf, twiddles }
    }

    fn process(&self, input: &[Complex64], stride: usize, output: &mut [Complex64]) {
        self.step(input, stride, output, 0);
    }

    fn step(&self, input: &[Complex64], stride: usize, output: &mut [Complex64], depth: usize) {
        let len = output.len();
        let Some(&p) = self.radices.get(depth) else {
            return self.leaf_transform(input, stride, output);
        };
        let m = len / p;
        for r in 0..p {
            self.step(&input[r * stride..], stride * p, &mut output[r * m..(r + 1) * m], depth + 1);
        }
        // W_len^{j} = W_n^{j·n/len}
        let step = self.n / len;
        let p_step = self.n / p;
        let mut scratch = [Complex64::default(); MAX_GENERIC_RADIX];
        for k1 in 0..m {
            match p {
                2 => {
                    let a0 = output[k1];
                    let a1 = output[m + k1] * self.twiddles[k1 * step];
                    output[k1] = a0 + a1;
                    output[m + k1] = a0 - a1;
                }
                3 => {
                    let a0 = output[k1];
                    let a1 = output[m + k1] * self.twiddles[k1 * step];
                    let a2 = output[2 * m + k1] * self.twiddles[2 * k1 * step];
                    let half = 0.5 * (a1 + a2);
                    let rot = (a1 - a2) * Complex64::new(0.0, -(3f64.sqrt() / 2.0));
                    output[k1] = a0 + a1 + a2;
                    output[m + k1] = a0 - half + rot;
                    output[2 * m + k1] = a0 - half - rot;
                }
                4 => {
                    let a0 = output[k1];
                    let a1 = output[m + k1] * self.twiddles[k1 * step];
                    let a2 = output[2 * m + k1] * self.twiddles[2 * k1 * step];
                    let a3 = output[3 * m + k1] * self.twiddles[3 * k1 * step];
                    let s02 = a0 + a2;
                    let d02 = a0 - a2;
                    let s13 = a1 + a3;
                    // -i·(a1 - a3)
                    let d13 = a1 - a3;
                    let rot = Complex64::new(d13.im, -d13.re);
                    output[k1] = s02 + s13;
                    output[m + k1] = d02 + rot;
                    output[2 * m + k1] = s02 - s13;
                    output[3 * m + k1] = d02 - rot;
                }
                _ => {
                    let a = &mut scratch[..p];
                    for (r, slot) in a.iter_mut().enumerate() {
                        *slot = output[r * m + k1] * self.twiddles[r * k1 * step];
                    }
                    for k2 in 0..p {
                        let mut acc = Complex64::default();
                        for (r, v) in a.iter().enumerate() {
                            acc += v * self.twiddles[(r * k2 % p) * p_step];
                        }
                        output[k2 * m + k1] = acc;
                    }
                }
            }
        }
    }

    fn leaf_transform(&self, input: &[Complex64], stride: usize, output: &mut [Complex64]) {
        match &self.leaf {
            Leaf::Direct(len) => {
                let len = *len;
                let p_step = self.n / len;
                for (k, out) in output.iter_mut().enumerate() {
                    let mut acc = Complex64::default();
                    for j in 0..len {
                        acc += input[j * stride] * self.twiddles[(j * k % len) * p_step];
                    }
                    *out = acc;
                }
            }
            Leaf::Bluestein(b) => b.process(input, stride, output),
        }
    }
}

/// Bluestein's chirp-z transform: a length-`n` DFT as a circular convolution
/// on a power-of-two grid of length at least `2n - 1`.
pub(crate) struct Bluestein {
    n: usize,
    /// `e^{-πi k²/n}` for `k < n`
    chirp: Vec<Complex64>,
    /// forward transform of the conjugate chirp, wrapped onto the grid
    kernel_spectrum: Vec<Complex64>,
    inner: MixedRadix,
}

impl Bluestein {
    fn new(n: usize) -> Self {
        let grid = (2 * n - 1).next_power_of_two();
        let chirp: Vec<Complex64> = (0..n)
            .map(|k| {
                // k² mod 2n keeps the angle exact for large k
                let q = (k as u128 * k as u128 % (2 * n) as u128) as f64;
                Complex64::cis(-PI * q / n as f64)
            })
            .collect();
        let inner = power_of_two(grid);
        let mut kernel = vec![Complex64::default(); grid];
        kernel[0] = chirp[0].conj();
        for k in 1..n {
            kernel[k] = chirp[k].conj();
            kernel[grid - k] = chirp[k].conj();
        }
        let mut kernel_spectrum = vec![Complex64::default(); grid];
        inner.process(&kernel, 1, &mut kernel_spectrum);
        Bluestein { n, chirp, kernel_spectrum, inner }
    }

    fn process(&self, input: &[Complex64], stride: usize, output: &mut [Complex64]) {
        let grid = self.kernel_spectrum.len();
        let mut a = vec![Complex64::default(); grid];
        for (k, w) in self.chirp.iter().enumerate() {
            a[k] = input[k * stride] * w;
        }
        let mut spec = vec![Complex64::default(); grid];
        self.inner.process(&a, 1, &mut spec);
        // inverse transform by conjugation: ifft(y) = conj(fft(conj(y))) / grid
        for (s, k) in spec.iter_mut().zip(&self.kernel_spectrum) {
            *s = (*s * k).conj();
        }
        self.inner.process(&spec, 1, &mut a);
        let scale = 1.0 / grid as f64;
        for (k, out) in output.iter_mut().enumerate() {
            *out = a[k].conj() * scale * self.chirp[k];
        }
    }
}

fn power_of_two(n: usize) -> MixedRadix {
    debug_assert!(n.is_power_of_two() && n >= 2);
    let mut radices = Vec::new();
    let mut rest = n;
    while rest.is_multiple_of(4) && rest > 4 {
        radices.push(4);
        rest /= 4;
    }
    MixedRadix::new(n, radices, Leaf::Direct(rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(input: &[Complex64]) -> Vec<Complex64> {
        let n = input.len();
        (0..n)
            .map(|k| {
                input
                    .iter()
                    .enumerate()
                    .map(|(j, x)| x * Complex64::cis(-std::f64::consts::TAU * ((j * k % n) as f64) / n as f64))
                    .sum()
            })
            .collect()
    }

    fn signal(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|j| Complex64::new((j as f64 * 0.37).sin() + 0.1, (j as f64 * 1.3).cos()))
            .collect()
    }

    #[test]
    fn kernel_selection() {
        assert!(matches!(Kernel::new(1), Kernel::Trivial));
        assert!(matches!(Kernel::new(64), Kernel::CooleyTukey(_)));
        assert!(matches!(Kernel::new(60), Kernel::CooleyTukey(_)));
        assert!(matches!(Kernel::new(7), Kernel::Bluestein(_)));
        assert!(matches!(Kernel::new(31), Kernel::Bluestein(_)));
        assert!(matches!(Kernel::new(14), Kernel::CooleyTukey(_)));
        // two primes above the generic radix limit
        assert!(matches!(Kernel::new(67 * 71), Kernel::Bluestein(_)));
    }

    #[test]
    fn one_dimensional_lengths_match_naive() {
        for n in (1..=130).chain([143, 221, 256, 343, 1000, 1009, 67 * 71]) {
            let x = signal(n);
            let kernel = Kernel::new(n);
            assert_eq!(kernel.len(), n);
            let mut out = vec![Complex64::default(); n];
            kernel.process(&x, &mut out);
            let expected = naive(&x);
            let err = out.iter().zip(&expected).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let l1: f64 = x.iter().map(|v| v.norm()).sum();
            assert!(err <= 1e-9 * (1.0 + l1), "n={n} err={err}");
        }
    }

    #[test]
    fn shared_kernels_for_equal_orders() {
        let plan = FftPlan::new(&[6, 5, 6]);
        let (a, c) = (plan.kernels[0].as_ref().unwrap(), plan.kernels[2].as_ref().unwrap());
        assert!(Arc::ptr_eq(a, c));
    }
}
