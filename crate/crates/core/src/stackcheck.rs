//! Stack-side cohomology of the root stack of `(ℙⁿ, D_S)` with a common root
//! order `b`, compared against coarse-side computations on ℙⁿ.
//!
//! The stack is the toric stack whose fan has rays `b·v_j` for `j ∈ S` and
//! `v_j` otherwise. Its equivariant sheaves are computed on the homogeneous
//! cover with coordinates `y_0..y_n` (`x_j = y_j^{b_j}`): a Laurent monomial
//! `y^c` contributes to the line bundle `O(Σ c⁰_j D̃_j)` exactly when
//! `c ≡ c⁰ (mod b_j)` coordinatewise and `Σ c_j / b_j = Σ c⁰_j / b_j`. When
//! `S` is the whole boundary the cover is ℙⁿ itself, the second condition is
//! `Σ c = Σ c⁰`, and the first says the weight is invariant under
//! `μ_b^{n+1}/μ_b`. Per-weight cohomology comes from the same weight
//! complexes as on the coarse side, with `y` in place of `x`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cechtoric::{
    log_differential_cohomology, scan_weights, CohomologyTable, EquivariantSheafModel, ScanOptions,
    WeightDecomposition,
};
use crate::error::{Error, Result};
use crate::qdivisor::{check_ample_on_projective_space, format_rational, hyperplane_name, QDivisor, SncPair};

/// Root stack of ℙⁿ along the coordinate hyperplanes in `boundary`, all with
/// root order `root_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalQuotientModel {
    n: usize,
    boundary: Vec<usize>,
    root_order: u64,
}

/// Which differential forms on the stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StackForms {
    /// `Ω^i_𝒳`.
    Plain,
    /// `Ω^i_𝒳(log D̃) = π*Ω^i_X(log D)`.
    Log,
}

impl GlobalQuotientModel {
    pub fn new(n: usize, boundary: &[usize], root_order: u64) -> Result<Self> {
        if n == 0 || n > EquivariantSheafModel::MAX_DIM {
            return Err(Error::InvalidInput(format!("unsupported dimension {n}")));
        }
        if root_order == 0 {
            return Err(Error::InvalidInput("root order must be positive".into()));
        }
        let set: BTreeSet<usize> = boundary.iter().copied().collect();
        if set.len() != boundary.len() {
            return Err(Error::InvalidInput("boundary hyperplanes repeat".into()));
        }
        if let Some(&j) = set.iter().find(|&&j| j > n) {
            return Err(Error::IndexOutOfRange { index: j, len: n + 1 });
        }
        Ok(GlobalQuotientModel { n, boundary: set.into_iter().collect(), root_order })
    }

    /// The model for a toric pair; every component must carry the same root order.
    pub fn from_pair(pair: &SncPair) -> Result<Self> {
        if !pair.is_toric() {
            return Err(Error::Unsupported("global quotient model needs a toric pair".into()));
        }
        let orders: BTreeSet<u64> = pair.components.iter().map(|c| c.root_order).collect();
        let b = match orders.len() {
            0 => 1,
            1 => *orders.first().unwrap(),
            _ => return Err(Error::UnequalRootOrders),
        };
        Self::new(pair.ambient_dim, &pair.boundary_hyperplanes(), b)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sorted boundary hyperplanes.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn is_full_boundary(&self) -> bool {
        self.boundary.len() == self.n + 1
    }

    /// `b_j`: the root order on boundary hyperplanes, 1 elsewhere.
    pub fn hyperplane_orders(&self) -> Vec<i64> {
        (0..=self.n).map(|j| if self.boundary.contains(&j) { self.root_order as i64 } else { 1 }).collect()
    }

    /// Whether the cover weight `c` carries the same character as `base`
    /// under the residual group.
    pub fn is_invariant(&self, c: &[i64], base: &[i64]) -> bool {
        self.hyperplane_orders().iter().zip(c.iter().zip(base)).all(|(b, (x, y))| (x - y).rem_euclid(*b) == 0)
    }

    /// Cover weights `c ∈ [−B, B]^{n+1}` of the line bundle with cover
    /// exponents `base`, lexicographic.
    pub fn cover_weights(&self, base: &[i64], bound: i64) -> Vec<Vec<i64>> {
        let b = self.hyperplane_orders();
        let n = self.n;
        // c_j = base_j + b_j w_j for j ≥ 1, and c_0 = base_0 − b_0 Σ w_j
        let range = |j: usize| {
            let lo = (-bound - base[j]).div_euclid(b[j]) + i64::from((-bound - base[j]).rem_euclid(b[j]) != 0);
            let hi = (bound - base[j]).div_euclid(b[j]);
            (lo, hi)
        };
        let ranges: Vec<(i64, i64)> = (1..=n).map(range).collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return Vec::new();
        }
        let mut w: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        let mut out = Vec::new();
        loop {
            let c0 = base[0] - b[0] * w.iter().sum::<i64>();
            if c0.abs() <= bound {
                let mut c = vec![c0];
                c.extend((1..=n).map(|j| base[j] + b[j] * w[j - 1]));
                out.push(c);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if w[i] < ranges[i].1 {
                    w[i] += 1;
                    break;
                }
                w[i] = ranges[i].0;
            }
        }
    }

    /// Cover exponents of `O(−π*[E] − Σ aᵢ D̃ᵢ)`; `a` follows [`boundary`](Self::boundary).
    pub fn cover_exponents(&self, a: &[i64], integral_part: &[i64]) -> Result<Vec<i64>> {
        if a.len() != self.boundary.len() {
            return Err(Error::DimensionMismatch { expected: self.boundary.len(), got: a.len() });
        }
        if integral_part.len() != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: integral_part.len() });
        }
        let b = self.hyperplane_orders();
        let mut base: Vec<i64> = (0..=self.n).map(|j| -b[j] * integral_part[j]).collect();
        for (&j, &aj) in self.boundary.iter().zip(a) {
            base[j] -= aj;
        }
        Ok(base)
    }

    fn stack_bound(&self, form_degree: usize, base: &[i64]) -> i64 {
        base.iter().map(|x| x.abs()).sum::<i64>() + self.root_order as i64 * (self.n + form_degree + 1) as i64
    }
}

/// Weight decomposition of `H^*(𝒳, Ω^i ⊗ O(−π*[E] − Σ aᵢ D̃ᵢ))` over cover weights.
pub fn stack_weight_decomposition(
    model: &GlobalQuotientModel,
    form_degree: usize,
    forms: StackForms,
    a: &[i64],
    integral_part: &[i64],
    opts: ScanOptions,
) -> Result<WeightDecomposition> {
    let base = model.cover_exponents(a, integral_part)?;
    let log_set: &[usize] = match forms {
        StackForms::Plain => &[],
        StackForms::Log => &model.boundary,
    };
    let sheaf = EquivariantSheafModel::new(model.n, form_degree, log_set, base.iter().sum())?;
    let bound = opts.weight_bound.unwrap_or_else(|| model.stack_bound(form_degree, &base));
    scan_weights(&sheaf, model.cover_weights(&base, bound), bound, opts.schedule)
}

/// `h^0..h^n` of `Ω^i_𝒳 ⊗ O(−π*[E] − Σ aᵢ D̃ᵢ)` (or its log variant) as
/// invariants of cover cohomology.
pub fn stack_cohomology(
    model: &GlobalQuotientModel,
    form_degree: usize,
    forms: StackForms,
    a: &[i64],
    integral_part: &[i64],
    opts: ScanOptions,
) -> Result<Vec<usize>> {
    Ok(stack_weight_decomposition(model, form_degree, forms, a, integral_part, opts)?.total)
}

/// `h^0..h^n` of `Ω^i(log D_S) ⊗ O(Σ c_j D_j)` on ℙⁿ.
pub fn coarse_cohomology(
    n: usize,
    form_degree: usize,
    log_boundary: &[usize],
    coefficients: &[i64],
    opts: ScanOptions,
) -> Result<Vec<usize>> {
    let model = EquivariantSheafModel::new(n, form_degree, log_boundary, coefficients.iter().sum())?;
    log_differential_cohomology(&model, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushforwardCheck {
    pub forms: StackForms,
    /// `⌈aᵢ/b⌉` per boundary component.
    pub coarse_coefficients: Vec<i64>,
    pub coarse: CohomologyTable,
    pub stack: CohomologyTable,
    pub pass: bool,
}

/// Compares `Ω^i(log D) ⊗ O(−[E] − Σ⌈aᵢ/b⌉Dᵢ)` on ℙⁿ with the stack side for
/// every form degree. With [`StackForms::Plain`] each `aᵢ` must be positive
/// and not divisible by `b`.
pub fn verify_pushforward(
    model: &GlobalQuotientModel,
    a: &[i64],
    integral_part: Option<&[i64]>,
    forms: StackForms,
    opts: ScanOptions,
) -> Result<PushforwardCheck> {
    let n = model.n;
    let zeros = vec![0; n + 1];
    let integral_part = integral_part.unwrap_or(&zeros);
    let b = model.root_order as i64;
    if a.len() != model.boundary.len() {
        return Err(Error::DimensionMismatch { expected: model.boundary.len(), got: a.len() });
    }
    if let Some(&neg) = a.iter().find(|&&x| x < 0) {
        return Err(Error::InvalidInput(format!("coefficient {neg} must be non-negative")));
    }
    if forms == StackForms::Plain {
        if let Some((&j, &aj)) = model.boundary.iter().zip(a).find(|(_, &aj)| aj % b == 0) {
            return Err(Error::RootOrderDividesCoefficient { component: j, order: b as u64, coefficient: aj });
        }
    }
    let rounded: Vec<i64> = a.iter().map(|&aj| aj.div_euclid(b) + i64::from(aj.rem_euclid(b) != 0)).collect();
    let mut coarse_coeffs: Vec<i64> = integral_part.iter().map(|x| -x).collect();
    for (&j, &c) in model.boundary.iter().zip(&rounded) {
        coarse_coeffs[j] -= c;
    }
    let coarse_twist: i64 = coarse_coeffs.iter().sum();
    let stack_twist: i64 = model.cover_exponents(a, integral_part)?.iter().sum();

    let mut coarse = CohomologyTable::new();
    let mut stack = CohomologyTable::new();
    for i in 0..=n {
        coarse.insert_slice(i, coarse_twist, &coarse_cohomology(n, i, &model.boundary, &coarse_coeffs, opts)?);
        stack.insert_slice(i, stack_twist, &stack_cohomology(model, i, forms, a, integral_part, opts)?);
    }
    let pass = coarse.same_dimensions(&stack);
    Ok(PushforwardCheck { forms, coarse_coefficients: rounded, coarse, stack, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub i: usize,
    pub j: usize,
    pub dimension: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackComparison {
    pub root_order: u64,
    /// Numerators `aᵢ` of `⟨E⟩ = Σ (aᵢ/b) Dᵢ`, in boundary order.
    pub numerators: Vec<i64>,
    pub table: CohomologyTable,
    /// The coarse and stack tables agree.
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub dimension: usize,
    pub boundary: Vec<usize>,
    pub divisor: BTreeMap<String, String>,
    pub integral_part: BTreeMap<String, i64>,
    pub round_up: BTreeMap<String, i64>,
    /// Degree of `O(−⌈E⌉)`.
    pub twist: i64,
    pub coarse: CohomologyTable,
    /// One entry per `(i, j)` with `i + j < d`.
    pub verdicts: Vec<VanishingEntry>,
    pub stack: Option<StackComparison>,
    /// Some `(i, j)` with `i + j = d` has nonzero dimension.
    pub nontrivial: bool,
    pub pass: bool,
}

fn integer_map(e: &QDivisor) -> BTreeMap<String, i64> {
    e.integer_coefficients().expect("integral divisor")
}

/// Computes `h^j(ℙⁿ, Ω^i(log D) ⊗ O(−⌈E⌉))` and checks it vanishes for
/// `i + j < n`. When `⟨E⟩` is supported on all of `D` with a single
/// denominator `b`, also computes `h^j(𝒳, Ω^i_𝒳 ⊗ O(−π*[E] − Σ aᵢ D̃ᵢ))` on the
/// root stack and compares.
pub fn kv_vanishing_check(pair: &SncPair, e: &QDivisor, opts: ScanOptions) -> Result<VanishingReport> {
    if !pair.is_toric() {
        return Err(Error::Unsupported("vanishing check needs a toric pair on ℙⁿ".into()));
    }
    pair.check_divisor(e)?;
    check_ample_on_projective_space(e)?;
    let n = pair.ambient_dim;
    let boundary_names: BTreeSet<&str> = pair.components.iter().map(|c| c.name.as_str()).collect();
    let fractional = e.fractional_part();
    if let Some(outside) = fractional.support().into_iter().find(|k| !boundary_names.contains(k)) {
        return Err(Error::FractionalSupportOutsideBoundary(outside.to_string()));
    }
    let mut boundary = pair.boundary_hyperplanes();
    boundary.sort_unstable();

    let up = e.round_up();
    let floor = e.integral_part();
    let twist = -up.degree().to_integer();
    let mut coarse = CohomologyTable::new();
    for i in 0..=n {
        let model = EquivariantSheafModel::new(n, i, &boundary, twist)?;
        coarse.insert_slice(i, twist, &log_differential_cohomology(&model, opts)?);
    }

    let mut verdicts = Vec::new();
    let mut nontrivial = false;
    for entry in coarse.entries() {
        if entry.i + entry.j < n {
            let verdict = if entry.dimension == 0 { Verdict::Pass } else { Verdict::Fail };
            verdicts.push(VanishingEntry { i: entry.i, j: entry.j, dimension: entry.dimension, verdict });
        } else if entry.i + entry.j == n && entry.dimension > 0 {
            nontrivial = true;
        }
    }

    let stack = stack_side(pair, n, &boundary, &fractional, &floor, &coarse, opts)?;
    let pass = verdicts.iter().all(|v| v.verdict == Verdict::Pass) && stack.as_ref().map_or(true, |s| s.equal);
    Ok(VanishingReport {
        dimension: n,
        boundary,
        divisor: e.coefficients.iter().map(|(k, a)| (k.clone(), format_rational(a))).collect(),
        integral_part: integer_map(&floor),
        round_up: integer_map(&up),
        twist,
        coarse,
        verdicts,
        stack,
        nontrivial,
        pass,
    })
}

fn stack_side(
    pair: &SncPair,
    n: usize,
    boundary: &[usize],
    fractional: &QDivisor,
    floor: &QDivisor,
    coarse: &CohomologyTable,
    opts: ScanOptions,
) -> Result<Option<StackComparison>> {
    let fractions = fractional.reduced_fractions();
    let denominators: BTreeSet<i64> = fractions.values().map(|&(_, d)| d).collect();
    if fractions.len() != pair.components.len() || denominators.len() != 1 {
        return Ok(None);
    }
    let b = *denominators.first().unwrap();
    let model = GlobalQuotientModel::new(n, boundary, b as u64)?;
    let numerators: Vec<i64> = model.boundary().iter().map(|&j| fractions[&hyperplane_name(j)].0).collect();
    let integral: Vec<i64> = (0..=n).map(|j| floor.coefficient(&hyperplane_name(j)).to_integer()).collect();
    let stack_twist: i64 = model.cover_exponents(&numerators, &integral)?.iter().sum();
    let mut table = CohomologyTable::new();
    for i in 0..=n {
        table.insert_slice(i, stack_twist, &stack_cohomology(&model, i, StackForms::Plain, &numerators, &integral, opts)?);
    }
    let equal = table.same_dimensions(coarse);
    Ok(Some(StackComparison { root_order: b as u64, numerators, table, equal }))
}
