//! SNC pairs with root orders, and ℚ-divisors with their integral part,
//! round-up and fractional part.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the coordinate hyperplane `{x_j = 0}` of ℙⁿ.
pub fn hyperplane_name(j: usize) -> String {
    format!("D{j}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    /// In toric mode, the coordinate hyperplane this component is.
    pub hyperplane: Option<usize>,
    pub root_order: u64,
}

/// A smooth variety of dimension `ambient_dim` with an SNC boundary
/// `D = ⋃ Dᵢ`; each component carries the order of the root taken along it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncPair {
    pub ambient_dim: usize,
    pub components: Vec<Component>,
}

impl SncPair {
    pub fn new(ambient_dim: usize, components: Vec<Component>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for c in &components {
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate component `{}`", c.name)));
            }
            if c.root_order == 0 {
                return Err(Error::InvalidInput(format!("root order of `{}` must be positive", c.name)));
            }
        }
        Ok(SncPair { ambient_dim, components })
    }

    /// ℙⁿ with boundary the coordinate hyperplanes listed in `boundary`.
    pub fn toric(n: usize, boundary: &[usize], root_orders: &[u64]) -> Result<Self> {
        if boundary.len() != root_orders.len() {
            return Err(Error::DimensionMismatch { expected: boundary.len(), got: root_orders.len() });
        }
        let mut sorted = boundary.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != boundary.len() {
            return Err(Error::InvalidInput("boundary hyperplanes repeat".into()));
        }
        if let Some(&j) = boundary.iter().find(|&&j| j > n) {
            return Err(Error::IndexOutOfRange { index: j, len: n + 1 });
        }
        let components = boundary
            .iter()
            .zip(root_orders)
            .map(|(&j, &b)| Component { name: hyperplane_name(j), hyperplane: Some(j), root_order: b })
            .collect();
        Self::new(n, components)
    }

    pub fn is_toric(&self) -> bool {
        self.components.iter().all(|c| c.hyperplane.is_some_and(|j| j <= self.ambient_dim))
    }

    /// Boundary hyperplane indices, in component order. Only meaningful in toric mode.
    pub fn boundary_hyperplanes(&self) -> Vec<usize> {
        self.components.iter().filter_map(|c| c.hyperplane).collect()
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    /// Whether `name` denotes a divisor of the ambient variety: a boundary
    /// component, or in toric mode any coordinate hyperplane.
    pub fn knows(&self, name: &str) -> bool {
        self.component(name).is_some()
            || (self.is_toric() && (0..=self.ambient_dim).any(|j| hyperplane_name(j) == name))
    }

    pub fn check_divisor(&self, e: &QDivisor) -> Result<()> {
        match e.coefficients.keys().find(|k| !self.knows(k)) {
            Some(k) => Err(Error::UnknownComponent(k.clone())),
            None => Ok(()),
        }
    }
}

/// A formal ℚ-linear combination of named divisors. Zero coefficients are
/// not stored.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDivisor {
    pub coefficients: BTreeMap<String, Rational64>,
}

impl QDivisor {
    pub fn new<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational64)>,
        S: Into<String>,
    {
        let mut coefficients = BTreeMap::new();
        for (name, a) in terms {
            *coefficients.entry(name.into()).or_insert_with(Rational64::zero) += a;
        }
        coefficients.retain(|_, a: &mut Rational64| !a.is_zero());
        QDivisor { coefficients }
    }

    pub fn zero() -> Self {
        QDivisor::default()
    }

    pub fn coefficient(&self, name: &str) -> Rational64 {
        self.coefficients.get(name).copied().unwrap_or_else(Rational64::zero)
    }

    fn map(&self, f: impl Fn(Rational64) -> Rational64) -> Self {
        QDivisor::new(self.coefficients.iter().map(|(k, &a)| (k.clone(), f(a))))
    }

    /// Componentwise floor `[E]`.
    pub fn integral_part(&self) -> Self {
        self.map(|a| a.floor())
    }

    /// Componentwise ceiling `⌈E⌉`.
    pub fn round_up(&self) -> Self {
        self.map(|a| a.ceil())
    }

    /// `⟨E⟩ = E − [E]`, every coefficient in `[0, 1)`.
    pub fn fractional_part(&self) -> Self {
        self.map(|a| a - a.floor())
    }

    /// Coefficients of `⟨E⟩` as reduced fractions `(aᵢ, bᵢ)` with `gcd(aᵢ, bᵢ) = 1`.
    pub fn reduced_fractions(&self) -> BTreeMap<String, (i64, i64)> {
        self.fractional_part().coefficients.into_iter().map(|(k, a)| (k, (*a.numer(), *a.denom()))).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.values().all(|a| a.is_integer())
    }

    pub fn degree(&self) -> Rational64 {
        self.coefficients.values().copied().sum()
    }

    pub fn support(&self) -> Vec<&str> {
        self.coefficients.keys().map(String::as_str).collect()
    }

    /// Integer coefficients; `None` if some coefficient is fractional.
    pub fn integer_coefficients(&self) -> Option<BTreeMap<String, i64>> {
        self.coefficients.iter().map(|(k, a)| a.is_integer().then(|| (k.clone(), a.to_integer()))).collect()
    }
}

impl std::ops::Neg for &QDivisor {
    type Output = QDivisor;
    fn neg(self) -> QDivisor {
        self.map(|a| -a)
    }
}

impl std::ops::Add for &QDivisor {
    type Output = QDivisor;
    fn add(self, rhs: &QDivisor) -> QDivisor {
        QDivisor::new(self.coefficients.iter().chain(&rhs.coefficients).map(|(k, &a)| (k.clone(), a)))
    }
}

impl fmt::Debug for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.coefficients.iter().map(|(k, a)| format!("({a}){k}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Whether `⌈(a+1)/b⌉ = ⌈a/b⌉`. Holds exactly when `b ∤ a`.
pub fn ceil_stability(a: i64, b: u64) -> bool {
    assert!(b >= 1, "root order must be positive");
    let b = b as i64;
    Integer::div_ceil(&(a + 1), &b) == Integer::div_ceil(&a, &b)
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("malformed rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
    }
    Ok(Rational64::new(num, den))
}

pub fn format_rational(a: &Rational64) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Total degree on ℙⁿ, where every coordinate hyperplane is a hyperplane class.
pub fn check_ample_on_projective_space(e: &QDivisor) -> Result<()> {
    let deg = e.degree();
    if deg.is_positive() {
        Ok(())
    } else {
        Err(Error::NotAmple(format_rational(&deg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn div(terms: &[(&str, Rational64)]) -> QDivisor {
        QDivisor::new(terms.iter().map(|(k, a)| (*k, *a)))
    }

    /// max{t ∈ ℤ | t ≤ r} by scanning a window of integers.
    fn floor_by_definition(r: Rational64) -> i64 {
        (-1000..=1000).filter(|&t| q(t, 1) <= r).max().unwrap()
    }

    #[test]
    fn integral_part_examples() {
        let e = div(&[("D1", q(1, 2)), ("D2", q(5, 3))]);
        assert_eq!(e.integral_part(), div(&[("D2", q(1, 1))]));
        assert_eq!(QDivisor::zero().integral_part(), QDivisor::zero());
        let e = div(&[("D1", q(-1, 2))]);
        assert_eq!(floor_by_definition(q(-1, 2)), -1);
        assert_eq!(e.integral_part(), div(&[("D1", q(-1, 1))]));
    }

    #[test]
    fn round_up_examples() {
        let e = div(&[("D1", q(1, 2)), ("D2", q(5, 3))]);
        assert_eq!(e.round_up(), div(&[("D1", q(1, 1)), ("D2", q(2, 1))]));
        let e = div(&[("D1", q(3, 1))]);
        assert_eq!(e.round_up(), e);
        assert_eq!(div(&[("D1", q(-1, 2))]).round_up(), QDivisor::zero());
    }

    #[test]
    fn fractional_part_examples() {
        let e = div(&[("D1", q(1, 2)), ("D2", q(5, 3))]);
        assert_eq!(e.fractional_part(), div(&[("D1", q(1, 2)), ("D2", q(2, 3))]));
        assert_eq!(div(&[("D1", q(4, 1)), ("D3", q(-2, 1))]).fractional_part(), QDivisor::zero());
        assert_eq!(div(&[("D1", q(-1, 2))]).fractional_part(), div(&[("D1", q(1, 2))]));
        let fr = div(&[("D1", q(10, 4)), ("D2", q(-7, 6))]).reduced_fractions();
        assert_eq!(fr["D1"], (1, 2));
        assert_eq!(fr["D2"], (5, 6));
    }

    #[test]
    fn ceil_stability_examples() {
        assert!(ceil_stability(3, 2));
        assert!(!ceil_stability(4, 2));
        assert!(!ceil_stability(0, 5));
    }

    #[test]
    fn ceil_stability_exhaustive() {
        for b in 1..=20u64 {
            for a in -100..=100i64 {
                let direct = q(a + 1, b as i64).ceil() == q(a, b as i64).ceil();
                assert_eq!(ceil_stability(a, b), direct);
                if a % b as i64 != 0 {
                    assert!(ceil_stability(a, b), "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), q(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn pair_validation() {
        let pair = SncPair::toric(2, &[0, 2], &[2, 3]).unwrap();
        assert!(pair.is_toric());
        assert_eq!(pair.boundary_hyperplanes(), vec![0, 2]);
        assert!(pair.check_divisor(&div(&[("D1", q(1, 1))])).is_ok());
        assert!(matches!(pair.check_divisor(&div(&[("D7", q(1, 1))])), Err(Error::UnknownComponent(_))));
        assert!(SncPair::toric(2, &[0, 0], &[2, 2]).is_err());
        assert!(SncPair::toric(2, &[3], &[2]).is_err());
        assert!(SncPair::toric(2, &[1], &[0]).is_err());
    }

    #[test]
    fn ampleness_is_degree() {
        assert!(check_ample_on_projective_space(&div(&[("D0", q(1, 2))])).is_ok());
        assert!(check_ample_on_projective_space(&div(&[("D0", q(1, 2)), ("D1", q(-1, 2))])).is_err());
    }

    fn arb_divisor() -> impl Strategy<Value = QDivisor> {
        proptest::collection::vec((-200i64..200, 1i64..=60), 1..5).prop_map(|cs| {
            QDivisor::new(cs.into_iter().enumerate().map(|(i, (n, d))| (hyperplane_name(i), q(n, d))))
        })
    }

    proptest! {
        #[test]
        fn round_up_is_negated_floor_of_negation(e in arb_divisor()) {
            prop_assert_eq!(e.round_up(), -&(-&e).integral_part());
        }

        #[test]
        fn floor_plus_fraction_recovers(e in arb_divisor()) {
            prop_assert_eq!(&e.integral_part() + &e.fractional_part(), e.clone());
            for a in e.fractional_part().coefficients.values() {
                prop_assert!(*a >= q(0, 1) && *a < q(1, 1));
            }
        }
    }
}
