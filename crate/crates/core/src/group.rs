//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}`, their elements, characters
//! and automorphisms.
//!
//! Elements are indexed row-major: the last coordinate varies fastest, so
//! `index = Σ_i x_i · Π_{j>i} n_j`. Function vectors are exchanged by this
//! index everywhere in the crate, including the file formats.
//!
//! The group law is written additively. The dual group is identified with the
//! group itself through the same list of orders, with the pairing
//! `⟨x, ξ⟩ = exp(2πi Σ_i x_i ξ_i / n_i)`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::random::seeded_rng;
use crate::transform::fft::FftPlan;
use crate::{Error, Result};

/// Largest group for which [`random_automorphism`] will run.
pub const MAX_AUTOMORPHISM_SAMPLING_SIZE: usize = 1 << 20;

/// Up to this size, [`is_automorphism`] checks additivity on every pair.
pub const EXHAUSTIVE_HOMOMORPHISM_LIMIT: usize = 4096;

const SAMPLING_ATTEMPTS: usize = 10_000;

/// A finite abelian group given by the orders of its cyclic factors.
///
/// Cloning is cheap; clones share the cached transform plan.
#[derive(Clone)]
pub struct Group(Arc<GroupInner>);

struct GroupInner {
    orders: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    /// Exponent of the group, the lcm of the orders.
    exponent: usize,
    plan: OnceLock<Arc<FftPlan>>,
}

/// Serialized form of a group: `{"orders": [n_1, ..., n_k]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub orders: Vec<usize>,
}

impl Group {
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("empty list of orders".into()));
        }
        if let Some(pos) = orders.iter().position(|&n| n == 0) {
            return Err(Error::InvalidGroup(format!("order at position {pos} is zero")));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("group size overflows".into()))?;
        let mut strides = vec![1; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        let exponent = orders.iter().fold(1, |l, &n| l / gcd(l, n) * n);
        Ok(Group(Arc::new(GroupInner {
            orders: orders.to_vec(),
            strides,
            size,
            exponent,
            plan: OnceLock::new(),
        })))
    }

    /// Like [`Group::new`], but accepts signed input so that negative orders
    /// are reported rather than silently wrapped.
    pub fn from_signed(orders: &[i64]) -> Result<Self> {
        let orders = orders
            .iter()
            .enumerate()
            .map(|(pos, &n)| {
                usize::try_from(n)
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::InvalidGroup(format!("order {n} at position {pos} is not positive")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&orders)
    }

    pub fn orders(&self) -> &[usize] {
        &self.0.orders
    }

    /// Row-major strides: `strides[i] = Π_{j>i} n_j`.
    pub fn strides(&self) -> &[usize] {
        &self.0.strides
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn rank(&self) -> usize {
        self.0.orders.len()
    }

    pub fn record(&self) -> GroupRecord {
        GroupRecord { orders: self.0.orders.clone() }
    }

    pub(crate) fn plan(&self) -> &Arc<FftPlan> {
        self.0.plan.get_or_init(|| Arc::new(FftPlan::new(&self.0.orders)))
    }

    pub(crate) fn ensure_same(&self, other: &Group) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.orders().to_vec(),
                right: other.orders().to_vec(),
            })
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its order.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidGroup(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(self.orders())
            .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
            .collect();
        Ok(Element { group: self.clone(), coords })
    }

    pub fn element_of(&self, index: usize) -> Result<Element> {
        self.check_index(index)?;
        Ok(Element {
            group: self.clone(),
            coords: self.coords_of(index),
        })
    }

    pub fn index_of(&self, x: &Element) -> Result<usize> {
        self.ensure_same(&x.group)?;
        Ok(self.index_of_coords(&x.coords))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(move |j| Element {
            group: self.clone(),
            coords: self.coords_of(j),
        })
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds { index, size: self.size() })
        }
    }

    pub(crate) fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.0.orders[i];
            coords[i] = index % n;
            index /= n;
        }
        coords
    }

    pub(crate) fn index_of_coords(&self, coords: &[usize]) -> usize {
        coords.iter().zip(self.strides()).map(|(c, s)| c * s).sum()
    }

    /// Index of `x + y`, working on indices directly.
    pub fn add_index(&self, mut x: usize, mut y: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &n in self.0.orders.iter().rev() {
            let d = (x % n + y % n) % n;
            out += d * place;
            place *= n;
            x /= n;
            y /= n;
        }
        out
    }

    /// Index of `-x`.
    pub fn neg_index(&self, mut x: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &n in self.0.orders.iter().rev() {
            let d = (n - x % n) % n;
            out += d * place;
            place *= n;
            x /= n;
        }
        out
    }

    /// Index of `x - y`.
    pub fn sub_index(&self, mut x: usize, mut y: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &n in self.0.orders.iter().rev() {
            let d = (x % n + n - y % n) % n;
            out += d * place;
            place *= n;
            x /= n;
            y /= n;
        }
        out
    }

    /// `⟨x, ξ⟩` for element indices `x` (in `G`) and `xi` (in the dual).
    pub fn character_index(&self, mut x: usize, mut xi: usize) -> Complex64 {
        // Σ x_i ξ_i / n_i as an exact fraction over the exponent
        let e = self.0.exponent as u128;
        let mut k = 0u128;
        for &n in self.0.orders.iter().rev() {
            let prod = (x % n) as u128 * (xi % n) as u128 % n as u128;
            k = (k + prod * (e / n as u128)) % e;
            x /= n;
            xi /= n;
        }
        root_of_unity(k as usize, self.0.exponent)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.orders == other.0.orders
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group{:?}", self.0.orders)
    }
}

impl TryFrom<GroupRecord> for Group {
    type Error = Error;

    fn try_from(record: GroupRecord) -> Result<Self> {
        Group::new(&record.orders)
    }
}

/// An element of a [`Group`] (or of its dual, depending on context).
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    group: Group,
    coords: Vec<usize>,
}

impl Element {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn index(&self) -> usize {
        self.group.index_of_coords(&self.coords)
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.group.ensure_same(&other.group)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.orders())
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        Ok(Element { group: self.group.clone(), coords })
    }

    pub fn neg(&self) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(self.group.orders())
            .map(|(a, n)| (n - a) % n)
            .collect();
        Element { group: self.group.clone(), coords }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// The pairing `⟨x, ξ⟩ = exp(2πi Σ_i x_i ξ_i / n_i)`.
pub fn character(x: &Element, xi: &Element) -> Result<Complex64> {
    x.group.ensure_same(&xi.group)?;
    Ok(x.group.character_index(x.index(), xi.index()))
}

/// A group automorphism stored as a permutation of element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    group: Group,
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(group: &Group) -> Self {
        Automorphism {
            group: group.clone(),
            perm: (0..group.size()).collect(),
        }
    }

    /// Validates `perm` with [`is_automorphism`].
    pub fn from_perm(group: &Group, perm: Vec<usize>) -> Result<Self> {
        if is_automorphism(&perm, group)? {
            Ok(Automorphism { group: group.clone(), perm })
        } else {
            Err(Error::InvalidPermutation(
                "permutation is not a group automorphism".into(),
            ))
        }
    }

    pub(crate) fn from_perm_unchecked(group: &Group, perm: Vec<usize>) -> Self {
        Automorphism { group: group.clone(), perm }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_index(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let j = self.group.index_of(x)?;
        self.group.element_of(self.perm[j])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        self.group.ensure_same(&other.group)?;
        Ok(Automorphism {
            group: self.group.clone(),
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { group: self.group.clone(), perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism{:?}", self.perm)
    }
}

/// Whether `perm` is a bijection of the index set that fixes the identity and
/// is additive.
///
/// Additivity is checked on every pair up to [`EXHAUSTIVE_HOMOMORPHISM_LIMIT`]
/// elements, and on `10 · size` seeded random pairs above that.
pub fn is_automorphism(perm: &[usize], group: &Group) -> Result<bool> {
    let n = group.size();
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} does not match group size {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &y in perm {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Ok(false);
        }
    }
    if perm[0] != 0 {
        return Ok(false);
    }
    Ok(find_additivity_violation(perm, group).is_none())
}

/// First pair `(x, y)` with `perm(x + y) ≠ perm(x) + perm(y)`, if any.
pub(crate) fn find_additivity_violation(perm: &[usize], group: &Group) -> Option<(usize, usize)> {
    let n = group.size();
    let holds = |x: usize, y: usize| perm[group.add_index(x, y)] == group.add_index(perm[x], perm[y]);
    if n <= EXHAUSTIVE_HOMOMORPHISM_LIMIT {
        (0..n)
            .flat_map(|x| (x..n).map(move |y| (x, y)))
            .find(|&(x, y)| !holds(x, y))
    } else {
        let mut rng = seeded_rng(0x5eed_0fad);
        (0..10 * n)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .find(|&(x, y)| !holds(x, y))
    }
}

/// `e^{2πi k/n}`, exact when `k/n` is a multiple of a quarter turn.
pub(crate) fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k as u128).is_multiple_of(n as u128) {
        return match 4 * k as u128 / n as u128 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::cis(TAU * (k as f64 / n as f64))
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Draws a seeded random automorphism by rejection sampling over
/// endomorphism matrices.
///
/// Entry `(i, j)` is a homomorphism `Z_{n_j} → Z_{n_i}`, i.e. a multiple of
/// `n_i / gcd(n_i, n_j)`. A draw is accepted when the induced map on indices
/// is a bijection.
pub fn random_automorphism(group: &Group, seed: u64) -> Result<Automorphism> {
    let size = group.size();
    if size > MAX_AUTOMORPHISM_SAMPLING_SIZE {
        return Err(Error::GroupTooLarge {
            size,
            limit: MAX_AUTOMORPHISM_SAMPLING_SIZE,
        });
    }
    let orders = group.orders();
    let k = orders.len();
    let mut rng = seeded_rng(seed);
    let mut seen = vec![false; size];
    for _ in 0..SAMPLING_ATTEMPTS {
        // matrix[i][j]: image of the generator of factor j, coordinate i
        let matrix: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let g = gcd(orders[i], orders[j]);
                        rng.random_range(0..g) * (orders[i] / g)
                    })
                    .collect()
            })
            .collect();
        seen.iter_mut().for_each(|s| *s = false);
        let mut perm = Vec::with_capacity(size);
        let mut bijective = true;
        let mut image_coords = vec![0; k];
        for x in 0..size {
            let coords = group.coords_of(x);
            for (i, row) in matrix.iter().enumerate() {
                let n = orders[i] as u128;
                image_coords[i] = (row
                    .iter()
                    .zip(&coords)
                    .map(|(&c, &xj)| c as u128 * xj as u128 % n)
                    .sum::<u128>()
                    % n) as usize;
            }
            let image = group.index_of_coords(&image_coords);
            if std::mem::replace(&mut seen[image], true) {
                bijective = false;
                break;
            }
            perm.push(image);
        }
        if bijective {
            return Ok(Automorphism::from_perm_unchecked(group, perm));
        }
    }
    Err(Error::SamplingExhausted { attempts: SAMPLING_ATTEMPTS })
}
