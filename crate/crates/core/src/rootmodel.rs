//! The affine local model of a root stack: `Spec k[y₁..yₙ]` with the cover
//! `xᵢ = yᵢ^{bᵢ}` (i ≤ r) and the group `ℤ/b₁ × ⋯ × ℤ/b_r` acting on `yᵢ`
//! through characters.
//!
//! Monomial modules are principal, generated by `y₁^{a₁}⋯y_r^{a_r}`; the
//! non-boundary variables carry the trivial action and are left out.

use crate::error::{Error, Result};
use crate::schedule::Schedule;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalChart {
    n: usize,
    root_orders: Vec<u64>,
}

impl LocalChart {
    pub fn new(n: usize, root_orders: Vec<u64>) -> Result<Self> {
        if root_orders.len() > n {
            return Err(Error::InvalidInput(format!(
                "{} boundary components exceed ambient dimension {n}",
                root_orders.len()
            )));
        }
        if root_orders.contains(&0) {
            return Err(Error::InvalidInput("root orders must be positive".into()));
        }
        Ok(LocalChart { n, root_orders })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of boundary components `r`.
    pub fn boundary_len(&self) -> usize {
        self.root_orders.len()
    }

    pub fn root_orders(&self) -> &[u64] {
        &self.root_orders
    }

    /// The character `(e₁ mod b₁, …, e_r mod b_r)` of the monomial `y^e`.
    pub fn character_of_monomial(&self, e: &[u64]) -> Result<Vec<u64>> {
        if e.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: e.len() });
        }
        Ok(self.root_orders.iter().zip(e).map(|(b, x)| x % b).collect())
    }

    fn is_invariant(&self, boundary_exponents: &[u64]) -> bool {
        self.root_orders.iter().zip(boundary_exponents).all(|(b, x)| x % b == 0)
    }

    /// `π*O_X(−Dᵢ) = O(−bᵢ D̃ᵢ)`: the multiplicity is the root order.
    pub fn pullback_multiplicity(&self, component: usize) -> Result<u64> {
        self.root_orders
            .get(component)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: component, len: self.root_orders.len() })
    }

    /// Coarse divisor coefficients of the `(∏bᵢ)`-th power of `O(Σ aᵢ D̃ᵢ)`.
    pub fn coarse_degree_of_power(&self, a: &[i64]) -> Result<CoarsePower> {
        if a.len() != self.root_orders.len() {
            return Err(Error::DimensionMismatch { expected: self.root_orders.len(), got: a.len() });
        }
        let power: u64 = self.root_orders.iter().product();
        let coefficients =
            a.iter().zip(&self.root_orders).map(|(&ai, &b)| ai * (power / b) as i64).collect();
        Ok(CoarsePower { power, coefficients })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarsePower {
    pub power: u64,
    pub coefficients: Vec<i64>,
}

/// The principal module `(y₁^{a₁}⋯y_r^{a_r})` on a chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialModule {
    pub chart: LocalChart,
    pub generator_exponents: Vec<u64>,
}

/// Invariant part of a monomial module: generated upstairs by `y^l`, equal to
/// `O_X(−Σ cᵢ Dᵢ)` downstairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSubmodule {
    pub cover_exponents: Vec<u64>,
    pub coarse_coefficients: Vec<u64>,
}

impl MonomialModule {
    pub fn new(chart: LocalChart, generator_exponents: Vec<u64>) -> Result<Self> {
        if generator_exponents.len() != chart.boundary_len() {
            return Err(Error::DimensionMismatch { expected: chart.boundary_len(), got: generator_exponents.len() });
        }
        Ok(MonomialModule { chart, generator_exponents })
    }

    /// `lᵢ = ⌈aᵢ/bᵢ⌉·bᵢ`, the smallest multiple of `bᵢ` that is at least `aᵢ`.
    pub fn invariant_submodule(&self) -> InvariantSubmodule {
        let coarse: Vec<u64> =
            self.generator_exponents.iter().zip(self.chart.root_orders()).map(|(&a, &b)| a.div_ceil(b)).collect();
        InvariantSubmodule {
            cover_exponents: coarse.iter().zip(self.chart.root_orders()).map(|(c, b)| c * b).collect(),
            coarse_coefficients: coarse,
        }
    }

    /// Brute force: scan every monomial of the module with exponents `≤ bound`,
    /// keep the invariant ones, and take their componentwise minimum.
    pub fn invariant_submodule_oracle(&self, bound: u64, schedule: Schedule) -> Result<InvariantSubmodule> {
        let a = &self.generator_exponents;
        let r = a.len();
        if a.iter().any(|&ai| ai > bound) {
            return Err(Error::BoundTooSmall(bound));
        }
        if r == 0 {
            return Ok(InvariantSubmodule { cover_exponents: vec![], coarse_coefficients: vec![] });
        }
        // one slab per value of the first exponent; slabs merge by componentwise min
        let slabs: Vec<u64> = (a[0]..=bound).collect();
        let partial = schedule.map(slabs, |first| {
            let mut best: Option<Vec<u64>> = None;
            let mut e = a.clone();
            e[0] = first;
            loop {
                if self.chart.is_invariant(&e) {
                    best = Some(match best {
                        None => e.clone(),
                        Some(b) => b.iter().zip(&e).map(|(x, y)| *x.min(y)).collect(),
                    });
                }
                let mut i = 1;
                loop {
                    if i == r {
                        return best;
                    }
                    if e[i] < bound {
                        e[i] += 1;
                        break;
                    }
                    e[i] = a[i];
                    i += 1;
                }
            }
        });
        let generator = partial
            .into_iter()
            .flatten()
            .reduce(|x, y| x.iter().zip(&y).map(|(p, q)| *p.min(q)).collect())
            .ok_or(Error::BoundTooSmall(bound))?;
        // the minimum of invariant monomials must itself be invariant and lie in the module
        if !self.chart.is_invariant(&generator) {
            return Err(Error::BoundTooSmall(bound));
        }
        let coarse = generator.iter().zip(self.chart.root_orders()).map(|(l, b)| l / b).collect();
        Ok(InvariantSubmodule { cover_exponents: generator, coarse_coefficients: coarse })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdivisor::{hyperplane_name, QDivisor};
    use num_rational::Rational64;

    fn chart(n: usize, b: &[u64]) -> LocalChart {
        LocalChart::new(n, b.to_vec()).unwrap()
    }

    fn module(b: &[u64], a: &[u64]) -> MonomialModule {
        MonomialModule::new(chart(b.len(), b), a.to_vec()).unwrap()
    }

    #[test]
    fn characters() {
        let c = chart(2, &[2, 3]);
        assert_eq!(c.character_of_monomial(&[2, 3]).unwrap(), vec![0, 0]);
        assert_eq!(c.character_of_monomial(&[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(chart(3, &[4]).character_of_monomial(&[5, 7, 9]).unwrap(), vec![1]);
        assert!(c.character_of_monomial(&[1]).is_err());
    }

    #[test]
    fn invariant_submodule_examples() {
        let inv = module(&[2], &[3]).invariant_submodule();
        assert_eq!(inv.cover_exponents, vec![4]);
        assert_eq!(inv.coarse_coefficients, vec![2]);
        let inv = module(&[2, 3, 5], &[0, 0, 0]).invariant_submodule();
        assert_eq!(inv.cover_exponents, vec![0, 0, 0]);
        let m = module(&[2, 3], &[3, 4]);
        let inv = m.invariant_submodule();
        assert_eq!(inv.cover_exponents, vec![4, 6]);
        assert_eq!(inv.coarse_coefficients, vec![2, 2]);
        // oracle bound a + 2b
        assert_eq!(m.invariant_submodule_oracle(10, Schedule::Sequential).unwrap(), inv);
    }

    #[test]
    fn oracle_examples() {
        let s = Schedule::Parallel;
        assert_eq!(module(&[2], &[3]).invariant_submodule_oracle(8, s).unwrap().cover_exponents, vec![4]);
        assert_eq!(module(&[5], &[5]).invariant_submodule_oracle(12, s).unwrap().cover_exponents, vec![5]);
        assert_eq!(module(&[2, 3], &[1, 1]).invariant_submodule_oracle(8, s).unwrap().cover_exponents, vec![2, 3]);
        assert!(matches!(module(&[5], &[3]).invariant_submodule_oracle(4, s), Err(Error::BoundTooSmall(4))));
    }

    #[test]
    fn pullback_multiplicities() {
        let c = chart(2, &[2, 3]);
        assert_eq!(c.pullback_multiplicity(0).unwrap(), 2);
        assert_eq!(c.pullback_multiplicity(1).unwrap(), 3);
        assert_eq!(chart(1, &[1]).pullback_multiplicity(0).unwrap(), 1);
        assert!(c.pullback_multiplicity(2).is_err());
    }

    #[test]
    fn coarse_powers() {
        let p = chart(2, &[2, 3]).coarse_degree_of_power(&[1, 1]).unwrap();
        assert_eq!(p, CoarsePower { power: 6, coefficients: vec![3, 2] });
        assert_eq!(chart(1, &[2]).coarse_degree_of_power(&[2]).unwrap().coefficients, vec![2]);
        assert_eq!(chart(2, &[2, 3]).coarse_degree_of_power(&[0, 0]).unwrap().coefficients, vec![0, 0]);
    }

    #[test]
    fn chart_validation() {
        assert!(LocalChart::new(1, vec![2, 2]).is_err());
        assert!(LocalChart::new(2, vec![0]).is_err());
    }

    fn for_each_config(mut f: impl FnMut(&[u64], &[u64])) {
        for r in 1..=3usize {
            let mut b = vec![1u64; r];
            loop {
                let mut a = vec![0u64; r];
                loop {
                    f(&b, &a);
                    if !bump(&mut a, 0, 12) {
                        break;
                    }
                }
                if !bump(&mut b, 1, 6) {
                    break;
                }
            }
        }
    }

    fn bump(v: &mut [u64], lo: u64, hi: u64) -> bool {
        for x in v.iter_mut() {
            if *x < hi {
                *x += 1;
                return true;
            }
            *x = lo;
        }
        false
    }

    #[test]
    fn coarse_coefficient_is_round_up_of_divisor() {
        for_each_config(|b, a| {
            if a.iter().any(|&x| x > 6) {
                return;
            }
            let inv = module(b, a).invariant_submodule();
            let e = QDivisor::new(
                a.iter().zip(b).enumerate().map(|(i, (&ai, &bi))| (hyperplane_name(i), Rational64::new(ai as i64, bi as i64))),
            );
            let up = e.round_up();
            for i in 0..b.len() {
                assert_eq!(Rational64::from_integer(inv.coarse_coefficients[i] as i64), up.coefficient(&hyperplane_name(i)));
            }
        });
    }

    #[test]
    fn pushforward_of_pullback_is_identity() {
        for_each_config(|b, c| {
            let a: Vec<u64> = c.iter().zip(b).map(|(ci, bi)| ci * bi).collect();
            assert_eq!(module(b, &a).invariant_submodule().coarse_coefficients, c.to_vec());
        });
    }

    #[test]
    fn character_zero_iff_fixed_by_whole_group() {
        // g ∈ ∏ ℤ/bᵢ multiplies y^e by exp(2πi Σ gᵢeᵢ/bᵢ); fixed iff that phase is integral.
        for b0 in 1..=4u64 {
            for b1 in 1..=4u64 {
                let c = chart(3, &[b0, b1]);
                for e0 in 0..9u64 {
                    for e1 in 0..9u64 {
                        let fixed = (0..b0).all(|g0| {
                            (0..b1).all(|g1| {
                                let phase = Rational64::new((g0 * e0) as i64, b0 as i64)
                                    + Rational64::new((g1 * e1) as i64, b1 as i64);
                                phase.is_integer()
                            })
                        });
                        let ch = c.character_of_monomial(&[e0, e1, 5]).unwrap();
                        assert_eq!(fixed, ch.iter().all(|&x| x == 0), "b=({b0},{b1}) e=({e0},{e1})");
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn closed_form_matches_oracle(ba in proptest::collection::vec((1u64..=9, 0u64..=30), 1..=4), extra in 0usize..2) {
                let (b, a): (Vec<u64>, Vec<u64>) = ba.into_iter().unzip();
                let chart = LocalChart::new(b.len() + extra, b.clone()).unwrap();
                let m = MonomialModule::new(chart, a.clone()).unwrap();
                let bound = a.iter().max().unwrap() + b.iter().max().unwrap();
                let inv = m.invariant_submodule();
                prop_assert_eq!(m.invariant_submodule_oracle(bound, Schedule::Parallel).unwrap(), inv.clone());
                for ((l, ai), bi) in inv.cover_exponents.iter().zip(&a).zip(&b) {
                    prop_assert!(l >= ai && l - ai < *bi && l % bi == 0);
                }
            }
        }
    }
}
