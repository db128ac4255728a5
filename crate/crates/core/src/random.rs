//! Seeded randomness for fixtures and probes. Every random draw in the crate
//! goes through [`seeded_rng`], so results are reproducible from the seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::group::Group;
use crate::transform::{GFunction, Side};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts independent `N(0, 1/2)`.
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_function(group: &Group, side: Side, rng: &mut impl Rng) -> GFunction {
    let values = (0..group.size()).map(|_| complex_gaussian(rng)).collect();
    GFunction::from_values_unchecked(group, side, values)
}

/// Random list of 1 to 4 cyclic orders (each in `1..=32`) with product at
/// most `max_size`.
pub fn random_group(rng: &mut impl Rng, max_size: usize) -> Group {
    loop {
        let rank = rng.random_range(1..=4);
        let orders: Vec<usize> = (0..rank).map(|_| rng.random_range(1..=32)).collect();
        if orders.iter().product::<usize>() <= max_size {
            return Group::new(&orders).expect("orders are positive");
        }
    }
}
