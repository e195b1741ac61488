//! Torus-equivariant Čech cohomology on ℙⁿ with its standard affine cover.
//!
//! The Čech complex of an equivariant sheaf splits into one finite complex
//! per torus weight. Weights are recorded homogeneously as `e ∈ ℤ^{n+1}` with
//! `Σ e = m`. A weight complex depends on `e` only through the sign pattern
//! of its coordinates (negative, zero, positive), so each distinct pattern is
//! assembled and checked once and its cohomology is reused for the others.

mod bott;
mod complex;
mod model;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use bott::{binomial, bott_oracle, line_bundle_closed_form};
pub use complex::WeightComplex;
pub use model::{EquivariantSheafModel, Laurent, LaurentMatrix};

use crate::error::{Error, Result};
use crate::schedule::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanOptions {
    pub schedule: Schedule,
    /// Overrides [`weight_support_bound`].
    pub weight_bound: Option<i64>,
}

impl ScanOptions {
    pub fn sequential() -> Self {
        ScanOptions { schedule: Schedule::Sequential, weight_bound: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightContribution {
    pub weight: Vec<i64>,
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDecomposition {
    pub bound: i64,
    pub weights_scanned: usize,
    /// Distinct weight complexes built and checked.
    pub complexes_assembled: usize,
    /// Weights with nonzero cohomology, in lexicographic order.
    pub contributions: Vec<WeightContribution>,
    pub total: Vec<usize>,
}

/// A box half-width containing every weight with nonzero cohomology of
/// `Ω^i(log D) ⊗ O(m)` on ℙⁿ: `|m| + n + i + 1`.
pub fn weight_support_bound(n: usize, form_degree: usize, _boundary_len: usize, m: i64) -> i64 {
    m.abs() + n as i64 + form_degree as i64 + 1
}

/// All `e ∈ [−B, B]^{n+1}` with `Σ e = m`, lexicographic.
pub fn projective_weights(n: usize, m: i64, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut tail = vec![-bound; n];
    loop {
        let head = m - tail.iter().sum::<i64>();
        if head.abs() <= bound {
            let mut e = Vec::with_capacity(n + 1);
            e.push(head);
            e.extend_from_slice(&tail);
            out.push(e);
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if tail[i] < bound {
                tail[i] += 1;
                break;
            }
            tail[i] = -bound;
        }
    }
}

fn sign_pattern(weight: &[i64]) -> Vec<i8> {
    weight.iter().map(|&x| x.signum() as i8).collect()
}

fn on_shell(weight: &[i64], bound: i64) -> bool {
    weight.iter().any(|x| x.abs() == bound)
}

/// Cohomology of every weight in `weights`, checking `d∘d = 0` and the Euler
/// characteristic on each distinct complex, and that no weight on the shell
/// `max |e_j| = bound` contributes.
pub fn scan_weights(
    model: &EquivariantSheafModel,
    weights: Vec<Vec<i64>>,
    bound: i64,
    schedule: Schedule,
) -> Result<WeightDecomposition> {
    let n = model.dim();
    let mut patterns: BTreeMap<Vec<i8>, Vec<i64>> = BTreeMap::new();
    for w in &weights {
        patterns.entry(sign_pattern(w)).or_insert_with(|| w.clone());
    }
    let reps: Vec<(Vec<i8>, Vec<i64>)> = patterns.into_iter().collect();
    let solved = schedule.try_map(reps, |(pattern, rep)| {
        let complex = WeightComplex::assemble(model, &rep)?;
        complex.check_d_squared()?;
        let h = complex.cohomology();
        let alternating: i64 = h.iter().enumerate().map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        if alternating != complex.euler_characteristic() {
            return Err(Error::EulerMismatch(rep));
        }
        Ok((pattern, h))
    })?;
    let complexes_assembled = solved.len();
    let by_pattern: BTreeMap<Vec<i8>, Vec<usize>> = solved.into_iter().collect();

    let weights_scanned = weights.len();
    let mut total = vec![0usize; n + 1];
    let mut contributions = Vec::new();
    for w in weights {
        let h = &by_pattern[&sign_pattern(&w)];
        if h.iter().all(|&x| x == 0) {
            continue;
        }
        if on_shell(&w, bound) {
            return Err(Error::WeightBound { weight: w, bound });
        }
        total.iter_mut().zip(h).for_each(|(t, x)| *t += x);
        contributions.push(WeightContribution { weight: w, dims: h.clone() });
    }
    contributions.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(WeightDecomposition { bound, weights_scanned, complexes_assembled, contributions, total })
}

/// Full weight decomposition of `H^*(ℙⁿ, Ω^i(log D_S) ⊗ O(m))`.
pub fn weight_decomposition(model: &EquivariantSheafModel, opts: ScanOptions) -> Result<WeightDecomposition> {
    model.check_cocycle()?;
    let n = model.dim();
    let bound = opts.weight_bound.unwrap_or_else(|| {
        weight_support_bound(n, model.form_degree(), model.boundary_indices().len(), model.twist())
    });
    if bound < 1 {
        return Err(Error::InvalidInput(format!("weight bound {bound} must be positive")));
    }
    scan_weights(model, projective_weights(n, model.twist(), bound), bound, opts.schedule)
}

/// `h^j(ℙⁿ, Ω^i(log D_S) ⊗ O(m))` for `j = 0..=n`.
pub fn log_differential_cohomology(model: &EquivariantSheafModel, opts: ScanOptions) -> Result<Vec<usize>> {
    Ok(weight_decomposition(model, opts)?.total)
}

/// `h^j(ℙⁿ, O(m))` for `j = 0..=n`.
pub fn line_bundle_cohomology(n: usize, m: i64, opts: ScanOptions) -> Result<Vec<usize>> {
    let model = EquivariantSheafModel::new(n, 0, &[], m)?;
    log_differential_cohomology(&model, opts)
}

/// Dimensions `h^{i,j}` keyed by `(form degree i, cohomological degree j, twist)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    entries: BTreeMap<(usize, usize, i64), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub twist: i64,
    pub dimension: usize,
}

impl CohomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `h^0..h^n` for form degree `i` at `twist`.
    pub fn insert_slice(&mut self, i: usize, twist: i64, dims: &[usize]) {
        for (j, &d) in dims.iter().enumerate() {
            self.entries.insert((i, j, twist), d);
        }
    }

    pub fn get(&self, i: usize, j: usize, twist: i64) -> Option<usize> {
        self.entries.get(&(i, j, twist)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = TableEntry> + '_ {
        self.entries.iter().map(|(&(i, j, twist), &dimension)| TableEntry { i, j, twist, dimension })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same `(i, j)` grid with the twist keys ignored.
    pub fn same_dimensions(&self, other: &CohomologyTable) -> bool {
        let strip = |t: &CohomologyTable| t.entries().map(|e| (e.i, e.j, e.dimension)).collect::<Vec<_>>();
        strip(self) == strip(other)
    }
}

impl Serialize for CohomologyTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries())
    }
}

impl<'de> Deserialize<'de> for CohomologyTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<TableEntry>::deserialize(d)?;
        Ok(CohomologyTable { entries: rows.into_iter().map(|e| ((e.i, e.j, e.twist), e.dimension)).collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> ScanOptions {
        ScanOptions::sequential()
    }

    /// Degree-m monomials in n+1 variables, counted by enumeration.
    fn count_monomials(n: usize, m: i64) -> usize {
        projective_weights(n, m, m.abs() + 1).iter().filter(|e| e.iter().all(|&x| x >= 0)).count()
    }

    #[test]
    fn line_bundle_examples() {
        assert_eq!(count_monomials(2, 2), 6);
        assert_eq!(line_bundle_cohomology(2, 2, opts()).unwrap(), vec![6, 0, 0]);
        assert_eq!(line_bundle_cohomology(2, -1, opts()).unwrap(), vec![0, 0, 0]);
        assert_eq!(line_bundle_cohomology(2, -3, opts()).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn log_differential_examples() {
        let full = EquivariantSheafModel::new(2, 1, &[0, 1, 2], -3).unwrap();
        assert_eq!(log_differential_cohomology(&full, opts()).unwrap(), vec![0, 0, 2]);
        for s in [vec![], vec![1], vec![0, 2], vec![0, 1, 2]] {
            let m = EquivariantSheafModel::new(2, 0, &s, 0).unwrap();
            assert_eq!(log_differential_cohomology(&m, opts()).unwrap(), vec![1, 0, 0]);
        }
        let empty = EquivariantSheafModel::new(2, 1, &[], 0).unwrap();
        assert_eq!(log_differential_cohomology(&empty, opts()).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn support_bound_examples() {
        assert_eq!(weight_support_bound(2, 0, 0, 2), 5);
        assert_eq!(weight_support_bound(2, 0, 0, -3), 6);
        assert_eq!(weight_support_bound(3, 0, 2, 0), 4);
        let dec = weight_decomposition(&EquivariantSheafModel::new(2, 0, &[], 2).unwrap(), opts()).unwrap();
        assert!(dec.contributions.iter().all(|c| c.weight.iter().all(|&x| (0..=2).contains(&x))));
        let dec = weight_decomposition(&EquivariantSheafModel::new(2, 0, &[], -3).unwrap(), opts()).unwrap();
        assert_eq!(dec.contributions, vec![WeightContribution { weight: vec![-1, -1, -1], dims: vec![0, 0, 1] }]);
        let dec = weight_decomposition(&EquivariantSheafModel::new(3, 0, &[], 0).unwrap(), opts()).unwrap();
        assert_eq!(dec.contributions, vec![WeightContribution { weight: vec![0; 4], dims: vec![1, 0, 0, 0] }]);
    }

    #[test]
    fn too_small_bound_is_reported() {
        let model = EquivariantSheafModel::new(2, 0, &[], 4).unwrap();
        let r = weight_decomposition(&model, ScanOptions { weight_bound: Some(3), ..opts() });
        assert!(matches!(r, Err(Error::WeightBound { bound: 3, .. })));
        let r = weight_decomposition(&model, ScanOptions { weight_bound: Some(5), ..opts() });
        assert_eq!(r.unwrap().total, vec![15, 0, 0]);
    }

    #[test]
    fn schedules_agree() {
        let model = EquivariantSheafModel::new(3, 2, &[0, 3], -2).unwrap();
        let a = weight_decomposition(&model, opts()).unwrap();
        let b = weight_decomposition(&model, ScanOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn projective_weights_enumeration() {
        let w = projective_weights(1, 0, 2);
        assert_eq!(w, vec![vec![-2, 2], vec![-1, 1], vec![0, 0], vec![1, -1], vec![2, -2]]);
        assert_eq!(projective_weights(2, 0, 3).len(), 37);
    }

    #[test]
    fn table_slices() {
        let mut t = CohomologyTable::new();
        t.insert_slice(1, -3, &[0, 0, 2]);
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(1, 2, -3), Some(2));
        assert_eq!(t.get(0, 0, -3), None);
    }
}
