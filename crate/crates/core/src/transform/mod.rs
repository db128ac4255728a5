//! Functions on a group or its dual, the Fourier transform, and the two
//! products of the group algebra.
//!
//! The side of a function fixes its Haar weight: `1` per point on the primal
//! side, `1/|G|` per point on the dual side. Convolution and the 2-norm use
//! that weight, so
//!
//! * `(f ∗ g)^ = f̂ · ĝ` and `(f · g)^ = f̂ ∗ ĝ`,
//! * `(f*)^ = conj(f̂)` and `(conj f)^ = (f̂)*`,
//! * `‖f‖₂ = ‖f̂‖₂`,
//!
//! all hold exactly up to rounding.

pub(crate) mod fft;

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::{Error, Result};

/// Relative support threshold used when none is given: `1e-12 · ‖f‖∞`.
pub const DEFAULT_SUPPORT_TOL_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Functions on `G`, counting measure.
    Primal,
    /// Functions on the dual, counting measure scaled by `1/|G|`.
    Dual,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }

    /// Haar weight of a single point.
    pub fn weight(self, size: usize) -> f64 {
        match self {
            Side::Primal => 1.0,
            Side::Dual => 1.0 / size as f64,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        })
    }
}

/// A dense complex function; `values[j]` is the value at the element with
/// row-major index `j`.
#[derive(Clone, PartialEq)]
pub struct GFunction {
    group: Group,
    side: Side,
    values: Vec<Complex64>,
}

impl fmt::Debug for GFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GFunction")
            .field("group", &self.group)
            .field("side", &self.side)
            .field("values", &self.values)
            .finish()
    }
}

impl GFunction {
    pub fn new(group: &Group, side: Side, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::Format(format!(
                "expected {} values for group {:?}, got {}",
                group.size(),
                group.orders(),
                values.len()
            )));
        }
        Ok(GFunction { group: group.clone(), side, values })
    }

    pub(crate) fn from_values_unchecked(group: &Group, side: Side, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), group.size());
        GFunction { group: group.clone(), side, values }
    }

    pub fn zeros(group: &Group, side: Side) -> Self {
        Self::constant(group, side, Complex64::default())
    }

    pub fn constant(group: &Group, side: Side, value: Complex64) -> Self {
        GFunction {
            group: group.clone(),
            side,
            values: vec![value; group.size()],
        }
    }

    /// Point mass at index `at` on the primal side.
    ///
    /// # Panics
    /// If `at` is out of range.
    pub fn delta(group: &Group, at: usize) -> Self {
        Self::scaled_delta(group, Side::Primal, at, Complex64::new(1.0, 0.0))
    }

    pub fn scaled_delta(group: &Group, side: Side, at: usize, scale: Complex64) -> Self {
        let mut f = Self::zeros(group, side);
        f.values[at] = scale;
        f
    }

    pub fn from_fn(group: &Group, side: Side, mut value: impl FnMut(usize) -> Complex64) -> Self {
        GFunction {
            group: group.clone(),
            side,
            values: (0..group.size()).map(&mut value).collect(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    /// Same values, relabeled onto the other side.
    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    fn expect_side(&self, expected: Side) -> Result<()> {
        if self.side == expected {
            Ok(())
        } else {
            Err(Error::SideMismatch { expected, found: self.side })
        }
    }

    fn expect_compatible(&self, other: &GFunction) -> Result<()> {
        self.group.ensure_same(&other.group)?;
        other.expect_side(self.side)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GFunction {
            group: self.group.clone(),
            side: self.side,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_with(&self, other: &GFunction, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.expect_compatible(other)?;
        Ok(GFunction {
            group: self.group.clone(),
            side: self.side,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &GFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        self.map(|v| alpha * v)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// `f*(x) = conj(f(-x))`. Stays on the same side.
    pub fn star(&self) -> Self {
        let g = &self.group;
        GFunction {
            group: g.clone(),
            side: self.side,
            values: (0..g.size()).map(|x| self.values[g.neg_index(x)].conj()).collect(),
        }
    }

    /// `x ↦ f(a(x))` for an index map `a`.
    pub fn compose_indices(&self, map: &[usize]) -> Self {
        GFunction {
            group: self.group.clone(),
            side: self.side,
            values: map.iter().map(|&j| self.values[j]).collect(),
        }
    }

    pub fn pointwise_product(&self, other: &GFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `(f ∗ g)(x) = w · Σ_y f(x - y) g(y)` by direct summation, with `w` the
    /// side's Haar weight.
    pub fn convolve(&self, other: &GFunction) -> Result<Self> {
        self.expect_compatible(other)?;
        let g = &self.group;
        let n = g.size();
        let w = self.side.weight(n);
        let values = (0..n)
            .map(|x| {
                let sum: Complex64 = (0..n)
                    .map(|y| self.values[g.sub_index(x, y)] * other.values[y])
                    .sum();
                sum * w
            })
            .collect();
        Ok(GFunction { group: g.clone(), side: self.side, values })
    }

    /// Same as [`GFunction::convolve`], computed by transform, multiply and
    /// inverse transform.
    pub fn convolve_fast(&self, other: &GFunction) -> Result<Self> {
        self.expect_compatible(other)?;
        let plan = self.group.plan();
        let n = self.group.size();
        let mut a = self.values.clone();
        let mut b = other.values.clone();
        plan.forward(&mut a);
        plan.forward(&mut b);
        a.iter_mut().zip(&b).for_each(|(x, y)| *x *= y);
        plan.inverse(&mut a);
        let w = self.side.weight(n);
        if w != 1.0 {
            a.iter_mut().for_each(|v| *v *= w);
        }
        Ok(GFunction { group: self.group.clone(), side: self.side, values: a })
    }

    /// `f̂(ξ) = Σ_x f(x) conj(⟨x, ξ⟩)`, evaluated term by term in `O(|G|²)`.
    pub fn dft_naive(&self) -> Result<Self> {
        self.expect_side(Side::Primal)?;
        let g = &self.group;
        let values = (0..g.size())
            .map(|xi| {
                self.values
                    .iter()
                    .enumerate()
                    .map(|(x, v)| v * g.character_index(x, xi).conj())
                    .sum()
            })
            .collect();
        Ok(GFunction { group: g.clone(), side: Side::Dual, values })
    }

    /// The inverse of [`GFunction::dft_naive`]:
    /// `f(x) = (1/|G|) Σ_ξ F(ξ) ⟨x, ξ⟩`, term by term.
    pub fn idft_naive(&self) -> Result<Self> {
        self.expect_side(Side::Dual)?;
        let g = &self.group;
        let scale = 1.0 / g.size() as f64;
        let values = (0..g.size())
            .map(|x| {
                let sum: Complex64 = self
                    .values
                    .iter()
                    .enumerate()
                    .map(|(xi, v)| v * g.character_index(x, xi))
                    .sum();
                sum * scale
            })
            .collect();
        Ok(GFunction { group: g.clone(), side: Side::Primal, values })
    }

    pub fn fft_forward(&self) -> Result<Self> {
        self.expect_side(Side::Primal)?;
        let mut values = self.values.clone();
        self.group.plan().forward(&mut values);
        Ok(GFunction { group: self.group.clone(), side: Side::Dual, values })
    }

    pub fn fft_inverse(&self) -> Result<Self> {
        self.expect_side(Side::Dual)?;
        let mut values = self.values.clone();
        self.group.plan().inverse(&mut values);
        Ok(GFunction { group: self.group.clone(), side: Side::Primal, values })
    }

    /// Indices where `|f| > tol`.
    pub fn support(&self, tol: f64) -> SupportSet {
        SupportSet(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| v.norm() > tol)
                .map(|(j, _)| j)
                .collect(),
        )
    }

    /// Support at the default threshold `1e-12 · ‖f‖∞`.
    pub fn support_default(&self) -> SupportSet {
        self.support(DEFAULT_SUPPORT_TOL_REL * self.norm_inf())
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm_1(&self) -> f64 {
        self.side.weight(self.group.size()) * self.values.iter().map(|v| v.norm()).sum::<f64>()
    }

    /// `(w Σ |f|²)^{1/2}` with the side weight `w`.
    pub fn norm_2(&self) -> f64 {
        (self.side.weight(self.group.size()) * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `max_j |f_j - g_j|`, ignoring sides.
    pub fn max_abs_diff(&self, other: &GFunction) -> f64 {
        max_abs_diff(&self.values, &other.values)
    }
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Set of element indices where a function is numerically nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportSet(BTreeSet<usize>);

impl SupportSet {
    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The single element, if the set is a singleton.
    pub fn singleton(&self) -> Option<usize> {
        let mut it = self.0.iter();
        match (it.next(), it.next()) {
            (Some(&x), None) => Some(x),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for SupportSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SupportSet(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_function, seeded_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_values(f: &GFunction, expected: &[Complex64], tol: f64) {
        let err = max_abs_diff(f.values(), expected);
        assert!(err <= tol, "got {:?}, expected {expected:?}", f.values());
    }

    #[test]
    fn dft_naive_examples() {
        let z2 = Group::new(&[2]).unwrap();
        assert_values(&GFunction::delta(&z2, 0).dft_naive().unwrap(), &[c(1., 0.), c(1., 0.)], 1e-15);

        let z6 = Group::new(&[6]).unwrap();
        let ones = GFunction::constant(&z6, Side::Primal, c(1., 0.));
        let mut expected = vec![c(0., 0.); 6];
        expected[0] = c(6., 0.);
        assert_values(&ones.dft_naive().unwrap(), &expected, 1e-12);

        // f̂(ξ) = conj(⟨1, ξ⟩) = e^{-2πiξ/4}
        let z4 = Group::new(&[4]).unwrap();
        let spectrum = GFunction::delta(&z4, 1).dft_naive().unwrap();
        assert_values(&spectrum, &[c(1., 0.), c(0., -1.), c(-1., 0.), c(0., 1.)], 1e-15);
        assert_eq!(spectrum.side(), Side::Dual);
    }

    #[test]
    fn side_checks() {
        let g = Group::new(&[3]).unwrap();
        let dual = GFunction::zeros(&g, Side::Dual);
        assert!(matches!(dual.dft_naive(), Err(Error::SideMismatch { .. })));
        assert!(matches!(dual.fft_forward(), Err(Error::SideMismatch { .. })));
        let primal = GFunction::zeros(&g, Side::Primal);
        assert!(matches!(primal.fft_inverse(), Err(Error::SideMismatch { .. })));
        assert!(matches!(primal.convolve(&dual), Err(Error::SideMismatch { .. })));
        assert!(matches!(primal.pointwise_product(&dual), Err(Error::SideMismatch { .. })));
        let other = GFunction::zeros(&Group::new(&[4]).unwrap(), Side::Primal);
        assert!(matches!(primal.convolve(&other), Err(Error::GroupMismatch { .. })));
        assert!(GFunction::new(&g, Side::Primal, vec![c(0., 0.); 2]).is_err());
    }

    #[test]
    fn fft_matches_naive_on_prime_order() {
        let z7 = Group::new(&[7]).unwrap();
        let f = GFunction::delta(&z7, 1);
        let err = f.fft_forward().unwrap().max_abs_diff(&f.dft_naive().unwrap());
        assert!(err < 1e-12);
    }

    #[test]
    fn fft_inverse_round_trip() {
        let g = Group::new(&[8, 9, 5]).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(11));
        let back = f.fft_forward().unwrap().fft_inverse().unwrap();
        assert!(back.max_abs_diff(&f) <= 1e-9);
        let naive_back = f.dft_naive().unwrap().idft_naive().unwrap();
        assert!(naive_back.max_abs_diff(&f) <= 1e-9);
    }

    #[test]
    fn star_examples() {
        let z4 = Group::new(&[4]).unwrap();
        let even = GFunction::new(&z4, Side::Primal, vec![c(2., 0.), c(5., 0.), c(-1., 0.), c(5., 0.)]).unwrap();
        assert_eq!(even.star(), even);
        assert_eq!(GFunction::delta(&z4, 1).star(), GFunction::delta(&z4, 3));
        let i_delta = GFunction::scaled_delta(&z4, Side::Primal, 0, c(0., 1.));
        assert_eq!(i_delta.star(), GFunction::scaled_delta(&z4, Side::Primal, 0, c(0., -1.)));
        let f = random_function(&z4, Side::Dual, &mut seeded_rng(3));
        assert_eq!(f.star().star(), f);
    }

    #[test]
    fn involution_exchanges_with_conjugation() {
        let g = Group::new(&[4, 3]).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(21));
        let fhat = f.fft_forward().unwrap();
        assert!(f.star().fft_forward().unwrap().max_abs_diff(&fhat.conj()) < 1e-12);
        assert!(f.conj().fft_forward().unwrap().max_abs_diff(&fhat.star()) < 1e-12);

        // (δ_1*)^ = δ_3^ = i^ξ on Z_4, while (δ_1^)* = (-i)^ξ
        let z4 = Group::new(&[4]).unwrap();
        let d = GFunction::delta(&z4, 1);
        let lhs = d.star().fft_forward().unwrap();
        assert_values(&lhs, &[c(1., 0.), c(0., 1.), c(-1., 0.), c(0., -1.)], 1e-15);
        let starred = d.fft_forward().unwrap().star();
        assert_values(&starred, &[c(1., 0.), c(0., -1.), c(-1., 0.), c(0., 1.)], 1e-15);
    }

    #[test]
    fn pointwise_product_examples() {
        let g = Group::new(&[3, 2]).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(5));
        let one = GFunction::constant(&g, Side::Primal, c(1., 0.));
        assert_eq!(f.pointwise_product(&one).unwrap(), f);
        let (a, b) = (GFunction::delta(&g, 1), GFunction::delta(&g, 4));
        assert_eq!(a.pointwise_product(&b).unwrap(), GFunction::zeros(&g, Side::Primal));
        assert_eq!(a.pointwise_product(&a).unwrap(), a);
    }

    #[test]
    fn convolution_examples() {
        let g = Group::new(&[4, 3]).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(9));
        let unit = GFunction::delta(&g, 0);
        assert!(unit.convolve(&f).unwrap().max_abs_diff(&f) < 1e-15);
        for a in 0..g.size() {
            for b in 0..g.size() {
                let conv = GFunction::delta(&g, a).convolve(&GFunction::delta(&g, b)).unwrap();
                assert_eq!(conv, GFunction::delta(&g, g.add_index(a, b)));
            }
        }
        let one = GFunction::constant(&g, Side::Primal, c(1., 0.));
        let total: Complex64 = f.values().iter().sum();
        let expected = GFunction::constant(&g, Side::Primal, total);
        assert!(one.convolve(&f).unwrap().max_abs_diff(&expected) < 1e-12);
        let fast = one.convolve_fast(&f).unwrap();
        assert!(fast.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn dual_convolution_uses_normalized_weight() {
        let g = Group::new(&[5]).unwrap();
        let unit = GFunction::scaled_delta(&g, Side::Dual, 0, c(5., 0.));
        let f = random_function(&g, Side::Dual, &mut seeded_rng(2));
        assert!(unit.convolve(&f).unwrap().max_abs_diff(&f) < 1e-14);
        assert!(unit.convolve_fast(&f).unwrap().max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn support_examples() {
        let g = Group::new(&[5]).unwrap();
        assert_eq!(GFunction::delta(&g, 3).support(0.0).to_vec(), vec![3]);
        assert!(GFunction::zeros(&g, Side::Primal).support(0.0).is_empty());
        assert!(GFunction::zeros(&g, Side::Primal).support_default().is_empty());
        let z2 = Group::new(&[2]).unwrap();
        let f = GFunction::new(&z2, Side::Primal, vec![c(1e-15, 0.), c(1., 0.)]).unwrap();
        assert_eq!(f.support(1e-12).singleton(), Some(1));
        assert_eq!(f.support_default().singleton(), Some(1));
    }

    #[test]
    fn norms_use_side_weight() {
        let g = Group::new(&[4]).unwrap();
        let f = GFunction::constant(&g, Side::Primal, c(1., 0.));
        assert!((f.norm_2() - 2.0).abs() < 1e-15);
        let dual = f.clone().with_side(Side::Dual);
        assert!((dual.norm_2() - 1.0).abs() < 1e-15);
        assert_eq!(f.norm_inf(), 1.0);
        assert!((f.fft_forward().unwrap().norm_2() - f.norm_2()).abs() < 1e-12);
    }
}
