//! The weight-`e` slice of the Čech complex of an [`EquivariantSheafModel`].
//!
//! For a chart set `I` with `k = min I`, a weight-`e` section over `U_I` is
//! `Σ_T c_T · x^{e − χ_k(T)} · φ^{(k)}_T`, and the frame element indexed by
//! `T` is allowed iff that monomial is regular on `U_I`, i.e.
//! `e_j ≥ [j ∈ T∖S]` for every `j ∉ I`. Restrictions change frames with the
//! scalar transition matrices.

use num_rational::Rational64;

use super::model::{combinations, EquivariantSheafModel};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightComplex {
    pub weight: Vec<i64>,
    /// `dims[p]` is the dimension of the degree-p cochain space.
    pub dims: Vec<usize>,
    /// `differentials[p]: C^p → C^{p+1}`, shaped `dims[p+1] × dims[p]`.
    pub differentials: Vec<QMatrix>,
}

/// Nonempty chart sets grouped by cardinality: `chart_sets(n)[p]` has size `p + 1`.
pub(crate) fn chart_sets(n: usize) -> Vec<Vec<Vec<usize>>> {
    let charts: Vec<usize> = (0..=n).collect();
    (1..=n + 1).map(|size| combinations(&charts, size)).collect()
}

fn allowed(model: &EquivariantSheafModel, weight: &[i64], charts: &[usize]) -> Vec<usize> {
    let k = charts[0];
    model
        .frame(k)
        .iter()
        .enumerate()
        .filter(|(_, forms)| {
            (0..=model.dim()).filter(|j| !charts.contains(j)).all(|j| {
                let pole = forms.contains(&j) && !model.in_boundary(j);
                weight[j] >= i64::from(pole)
            })
        })
        .map(|(idx, _)| idx)
        .collect()
}

impl WeightComplex {
    pub fn assemble(model: &EquivariantSheafModel, weight: &[i64]) -> Result<Self> {
        let n = model.dim();
        if weight.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, got: weight.len() });
        }
        let sets = chart_sets(n);
        // per degree: (chart set, allowed frame indices, offset)
        let blocks: Vec<Vec<(Vec<usize>, Vec<usize>, usize)>> = sets
            .iter()
            .map(|level| {
                let mut offset = 0;
                level
                    .iter()
                    .map(|charts| {
                        let a = allowed(model, weight, charts);
                        let entry = (charts.clone(), a, offset);
                        offset += entry.1.len();
                        entry
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = blocks.iter().map(|level| level.iter().map(|b| b.1.len()).sum()).collect();

        let mut differentials = Vec::with_capacity(n);
        for p in 0..n {
            let mut d = QMatrix::zeros(dims[p + 1], dims[p]);
            for (big, big_allowed, row_off) in &blocks[p + 1] {
                for (s, dropped) in big.iter().enumerate() {
                    let small: Vec<usize> = big.iter().copied().filter(|c| c != dropped).collect();
                    let (_, small_allowed, col_off) =
                        blocks[p].iter().find(|b| b.0 == small).expect("face of a chart set");
                    let sign = if s % 2 == 0 { 1 } else { -1 };
                    let g = model.scalar_transition(big[0], small[0]);
                    for (ci, &t) in small_allowed.iter().enumerate() {
                        for (tp, row) in g.iter().enumerate() {
                            let v = row[t];
                            if v == 0 {
                                continue;
                            }
                            let Some(ri) = big_allowed.iter().position(|&x| x == tp) else {
                                return Err(Error::IrregularRestriction(format!(
                                    "weight {weight:?}, {small:?} → {big:?}, frame {t} → {tp}"
                                )));
                            };
                            d.set(row_off + ri, col_off + ci, Rational64::from_integer(sign * v));
                        }
                    }
                }
            }
            differentials.push(d);
        }
        Ok(WeightComplex { weight: weight.to_vec(), dims, differentials })
    }

    /// `d_{p+1} ∘ d_p = 0` for every p, exactly.
    pub fn check_d_squared(&self) -> Result<()> {
        for pair in self.differentials.windows(2) {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(Error::NonZeroSquare(self.weight.clone()));
            }
        }
        Ok(())
    }

    /// `h^p = dim C^p − rank d_p − rank d_{p−1}`.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(QMatrix::rank).collect();
        (0..self.dims.len())
            .map(|p| {
                let out = ranks.get(p).copied().unwrap_or(0);
                let inc = if p == 0 { 0 } else { ranks[p - 1] };
                self.dims[p] - out - inc
            })
            .collect()
    }

    /// Alternating sum of cochain dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}
