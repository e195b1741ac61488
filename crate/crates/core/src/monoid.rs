//! Free monoids ℕʳ, simple morphisms between them, and the unit-root step of
//! lifting a chart along the diagonal morphism `⊕(×bᵢ)`.

use std::fmt;

use num_integer::Roots;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// The free monoid ℕʳ with standard generators e₁..e_r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeMonoid {
    pub rank: usize,
}

impl FreeMonoid {
    pub fn new(rank: usize) -> Self {
        FreeMonoid { rank }
    }

    pub fn generator(&self, j: usize) -> Vec<u64> {
        let mut e = vec![0; self.rank];
        e[j] = 1;
        e
    }

    /// The irreducible elements, which for ℕʳ are exactly the generators.
    pub fn irreducibles(&self) -> Vec<Vec<u64>> {
        (0..self.rank).map(|j| self.generator(j)).collect()
    }

    /// Whether `m` is irreducible. The monoid has no units other than 0, and
    /// 0 itself is never irreducible.
    pub fn is_irreducible(&self, m: &[u64]) -> Result<bool> {
        if m.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: m.len() });
        }
        Ok(m.iter().sum::<u64>() == 1)
    }
}

/// A morphism ℕʳ → ℕʳ′ given by a non-negative integer matrix whose column j
/// is the image of e_j.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeMonoidMorphism {
    source_rank: usize,
    target_rank: usize,
    /// Row-major, `target_rank × source_rank`.
    matrix: Vec<u64>,
}

/// Where a generator goes under a simple morphism: `φ(e_source) = multiplier · e_target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorImage {
    pub target: usize,
    pub multiplier: u64,
}

impl FreeMonoidMorphism {
    /// Builds a morphism from the rows of its matrix (`rows.len()` is the target rank).
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let target_rank = rows.len();
        let source_rank = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != source_rank) {
            return Err(Error::DimensionMismatch { expected: source_rank, got: bad.len() });
        }
        Ok(FreeMonoidMorphism { source_rank, target_rank, matrix: rows.concat() })
    }

    pub fn diagonal(multipliers: &[u64]) -> Self {
        let r = multipliers.len();
        let mut matrix = vec![0; r * r];
        for (i, &b) in multipliers.iter().enumerate() {
            matrix[i * r + i] = b;
        }
        FreeMonoidMorphism { source_rank: r, target_rank: r, matrix }
    }

    pub fn identity(rank: usize) -> Self {
        Self::diagonal(&vec![1; rank])
    }

    /// Rebuilds the monomial matrix that sends `e_j` to `images[j]`.
    pub fn from_images(target_rank: usize, images: &[GeneratorImage]) -> Result<Self> {
        let source_rank = images.len();
        let mut matrix = vec![0; target_rank * source_rank];
        for (j, img) in images.iter().enumerate() {
            if img.target >= target_rank {
                return Err(Error::IndexOutOfRange { index: img.target, len: target_rank });
            }
            matrix[img.target * source_rank + j] = img.multiplier;
        }
        Ok(FreeMonoidMorphism { source_rank, target_rank, matrix })
    }

    pub fn source(&self) -> FreeMonoid {
        FreeMonoid::new(self.source_rank)
    }

    pub fn target(&self) -> FreeMonoid {
        FreeMonoid::new(self.target_rank)
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.matrix[row * self.source_rank + col]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.target_rank).map(|i| self.entry(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.matrix.chunks(self.source_rank.max(1)).take(self.target_rank).map(<[u64]>::to_vec).collect()
    }

    pub fn apply(&self, m: &[u64]) -> Result<Vec<u64>> {
        if m.len() != self.source_rank {
            return Err(Error::DimensionMismatch { expected: self.source_rank, got: m.len() });
        }
        Ok((0..self.target_rank)
            .map(|i| (0..self.source_rank).map(|j| self.entry(i, j) * m[j]).sum())
            .collect())
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &FreeMonoidMorphism) -> Result<Self> {
        if first.target_rank != self.source_rank {
            return Err(Error::DimensionMismatch { expected: self.source_rank, got: first.target_rank });
        }
        let mut matrix = vec![0; self.target_rank * first.source_rank];
        for i in 0..self.target_rank {
            for j in 0..first.source_rank {
                matrix[i * first.source_rank + j] =
                    (0..self.source_rank).map(|k| self.entry(i, k) * first.entry(k, j)).sum();
            }
        }
        Ok(FreeMonoidMorphism { source_rank: first.source_rank, target_rank: self.target_rank, matrix })
    }

    /// Injectivity of the induced map ℕʳ → ℕʳ′, via rank of the matrix over ℚ.
    pub fn is_injective(&self) -> bool {
        let rows: Vec<Vec<i64>> =
            self.rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        if self.target_rank == 0 || self.source_rank == 0 {
            return self.source_rank == 0;
        }
        crate::linalg::QMatrix::from_integers(&rows).rank() == self.source_rank
    }

    fn column_image(&self, j: usize) -> std::result::Result<GeneratorImage, String> {
        let nonzero: Vec<usize> = (0..self.target_rank).filter(|&i| self.entry(i, j) != 0).collect();
        match nonzero.as_slice() {
            [k] => Ok(GeneratorImage { target: *k, multiplier: self.entry(*k, j) }),
            [] => Err(format!("e{} maps to 0", j + 1)),
            _ => Err(format!("e{} maps to a combination of {} generators", j + 1, nonzero.len())),
        }
    }

    fn simplicity_defect(&self) -> Option<String> {
        if self.source_rank != self.target_rank {
            return Some(format!("ranks differ ({} vs {})", self.source_rank, self.target_rank));
        }
        let mut hit = vec![false; self.target_rank];
        for j in 0..self.source_rank {
            match self.column_image(j) {
                Ok(img) if hit[img.target] => {
                    return Some(format!("two generators map into e{}", img.target + 1));
                }
                Ok(img) => hit[img.target] = true,
                Err(e) => return Some(e),
            }
        }
        if !self.is_injective() {
            return Some("not injective".into());
        }
        None
    }

    /// Same rank, injective, and every generator goes to a positive multiple
    /// of a single generator.
    pub fn is_simple(&self) -> bool {
        self.simplicity_defect().is_none()
    }

    /// The bijection on irreducibles induced by a simple morphism, with the
    /// multiplier of each generator.
    pub fn irreducible_bijection(&self) -> Result<Vec<GeneratorImage>> {
        if let Some(why) = self.simplicity_defect() {
            return Err(Error::NotSimple(why));
        }
        Ok((0..self.source_rank).map(|j| self.column_image(j).expect("checked simple")).collect())
    }

    /// Multipliers of a diagonal morphism with positive entries.
    pub fn diagonal_multipliers(&self) -> Result<Vec<u64>> {
        let r = self.source_rank;
        if self.target_rank != r {
            return Err(Error::NotDiagonal);
        }
        let mut out = Vec::with_capacity(r);
        for i in 0..r {
            for j in 0..r {
                let v = self.entry(i, j);
                if (i == j && v == 0) || (i != j && v != 0) {
                    return Err(Error::NotDiagonal);
                }
            }
            out.push(self.entry(i, i));
        }
        Ok(out)
    }
}

impl fmt::Debug for FreeMonoidMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeMonoidMorphism{:?}", self.rows())
    }
}

/// A field in which we can decide whether b-th roots exist.
pub trait RootField {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;
    fn is_unit(&self, u: &Self::Elem) -> bool;
    fn pow(&self, u: &Self::Elem, b: u64) -> Self::Elem;
    /// Whether the integer `b` is nonzero in the field.
    fn is_invertible(&self, b: u64) -> bool;
    /// Some `v` with `v^b = u`, if one exists.
    fn root(&self, u: &Self::Elem, b: u64) -> Option<Self::Elem>;
}

/// ℚ. Roots exist only for perfect powers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

fn exact_int_root(x: i64, b: u64) -> Option<i64> {
    let b32 = u32::try_from(b).ok()?;
    if x < 0 {
        if b % 2 == 0 {
            return None;
        }
        return exact_int_root(-x, b).map(|r| -r);
    }
    let r = x.nth_root(b32);
    (r.checked_pow(b32) == Some(x)).then_some(r)
}

impl RootField for Rationals {
    type Elem = Rational64;

    fn name(&self) -> String {
        "Q".into()
    }

    fn is_unit(&self, u: &Rational64) -> bool {
        !u.is_zero()
    }

    fn pow(&self, u: &Rational64, b: u64) -> Rational64 {
        (0..b).fold(Rational64::from_integer(1), |acc, _| acc * u)
    }

    fn is_invertible(&self, b: u64) -> bool {
        b != 0
    }

    fn root(&self, u: &Rational64, b: u64) -> Option<Rational64> {
        if b == 0 {
            return None;
        }
        let num = exact_int_root(*u.numer(), b)?;
        let den = exact_int_root(*u.denom(), b)?;
        Some(Rational64::new(num, den))
    }
}

/// The prime field 𝔽_p, elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Exhaustive root search limits this to small primes.
    pub const MAX_PRIME: u64 = 1 << 20;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > Self::MAX_PRIME || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidField(format!("{p} is not a prime below {}", Self::MAX_PRIME)));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
}

impl RootField for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }

    fn is_unit(&self, u: &u64) -> bool {
        u % self.p != 0
    }

    fn pow(&self, u: &u64, mut b: u64) -> u64 {
        let p = self.p as u128;
        let mut base = (*u as u128) % p;
        let mut acc = 1u128 % p;
        while b > 0 {
            if b & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            b >>= 1;
        }
        acc as u64
    }

    fn is_invertible(&self, b: u64) -> bool {
        b % self.p != 0
    }

    fn root(&self, u: &u64, b: u64) -> Option<u64> {
        let target = u % self.p;
        (0..self.p).find(|v| self.pow(v, b) == target)
    }
}

/// Adjusts the units of a chart so that it lifts along the diagonal morphism
/// `rho = ⊕(×bᵢ)`: returns `vᵢ` with `vᵢ^{bᵢ} = uᵢ`.
pub fn lift_chart<F: RootField>(rho: &FreeMonoidMorphism, units: &[F::Elem], field: &F) -> Result<Vec<F::Elem>> {
    let orders = rho.diagonal_multipliers()?;
    if units.len() != orders.len() {
        return Err(Error::DimensionMismatch { expected: orders.len(), got: units.len() });
    }
    orders
        .iter()
        .zip(units)
        .map(|(&b, u)| {
            if !field.is_invertible(b) {
                return Err(Error::OrderNotInvertible { order: b, field: field.name() });
            }
            if !field.is_unit(u) {
                return Err(Error::InvalidInput(format!("{u:?} is not a unit in {}", field.name())));
            }
            field
                .root(u, b)
                .ok_or_else(|| Error::NoRoot { value: format!("{u:?}"), order: b, field: field.name() })
        })
        .collect()
}
