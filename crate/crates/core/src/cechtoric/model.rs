//! Torus-equivariant model of `Ω^i(log D_S) ⊗ O(m)` on ℙⁿ over the standard
//! cover `U_k = {x_k ≠ 0}`.
//!
//! On `U_k` the degree-one frame is, for `t ≠ k`,
//!
//! ```text
//!   x_k^m · dlog(x_t/x_k)   if t ∈ S
//!   x_k^m · d(x_t/x_k)      if t ∉ S
//! ```
//!
//! and `Ω^i` uses the wedge products of these over sorted index sets `T`.
//! Every frame element is a torus eigenvector, so transitions between charts
//! are matrices of Laurent monomials; each entry is homogeneous of a fixed
//! character and its scalar part is what the per-weight Čech complexes use.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A Laurent polynomial in the homogeneous coordinates `x_0..x_n`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Vec<i64>, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn monomial(coefficient: i64, exponent: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        if coefficient != 0 {
            terms.insert(exponent, coefficient);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// `(coefficient, exponent)` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, &[i64])> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((e, &c)), None) => Some((c, e)),
            _ => None,
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert(0);
            *slot += c;
            if *slot == 0 {
                terms.remove(e);
            }
        }
        Laurent { terms }
    }

    pub fn scale(&self, c: i64) -> Laurent {
        if c == 0 {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, &v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(&Laurent::monomial(c1 * c2, e));
            }
        }
        out
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}·x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub type LaurentMatrix = Vec<Vec<Laurent>>;

fn laurent_matmul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Laurent::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
fn laurent_det(m: &LaurentMatrix) -> Laurent {
    let n = m.len();
    if n == 0 {
        return Laurent::monomial(1, vec![0; 0]);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Laurent::zero();
    for (c, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: LaurentMatrix =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect()).collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&pivot.mul(&laurent_det(&minor)).scale(sign));
    }
    acc
}

/// Sorted `k`-subsets of `items`, lexicographic.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            cur.push(items[idx]);
            go(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `Ω^i(log D_S) ⊗ O(m)` on ℙⁿ, with chart frames and transition data.
#[derive(Clone)]
pub struct EquivariantSheafModel {
    n: usize,
    form_degree: usize,
    boundary: Vec<bool>,
    twist: i64,
    /// `frames[k]`: index sets `T ⊆ {0..n}∖{k}` with `|T| = i`, lexicographic.
    frames: Vec<Vec<Vec<usize>>>,
    /// `transitions[l][k]`: chart-k frame written in the chart-l frame.
    transitions: Vec<Vec<LaurentMatrix>>,
    /// Scalar parts of `transitions`, valid for every weight.
    scalar: Vec<Vec<Vec<Vec<i64>>>>,
}

impl fmt::Debug for EquivariantSheafModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantSheafModel")
            .field("n", &self.n)
            .field("form_degree", &self.form_degree)
            .field("boundary", &self.boundary_indices())
            .field("twist", &self.twist)
            .finish()
    }
}

impl EquivariantSheafModel {
    /// Largest supported dimension; ranks and subset masks stay small.
    pub const MAX_DIM: usize = 8;

    pub fn new(n: usize, form_degree: usize, boundary: &[usize], twist: i64) -> Result<Self> {
        if n == 0 || n > Self::MAX_DIM {
            return Err(Error::InvalidInput(format!("dimension {n} outside 1..={}", Self::MAX_DIM)));
        }
        if form_degree > n {
            return Err(Error::InvalidInput(format!("form degree {form_degree} exceeds dimension {n}")));
        }
        let mut mask = vec![false; n + 1];
        for &j in boundary {
            if j > n {
                return Err(Error::IndexOutOfRange { index: j, len: n + 1 });
            }
            mask[j] = true;
        }
        let frames: Vec<Vec<Vec<usize>>> = (0..=n)
            .map(|k| {
                let coords: Vec<usize> = (0..=n).filter(|&t| t != k).collect();
                combinations(&coords, form_degree)
            })
            .collect();
        let mut model = EquivariantSheafModel {
            n,
            form_degree,
            boundary: mask,
            twist,
            frames,
            transitions: Vec::new(),
            scalar: Vec::new(),
        };
        model.transitions = (0..=n).map(|l| (0..=n).map(|k| model.build_transition(l, k)).collect()).collect();
        model.check_cocycle()?;
        model.scalar = model.scalar_parts()?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn boundary_indices(&self) -> Vec<usize> {
        (0..=self.n).filter(|&j| self.boundary[j]).collect()
    }

    pub fn in_boundary(&self, j: usize) -> bool {
        self.boundary[j]
    }

    pub fn rank(&self) -> usize {
        self.frames[0].len()
    }

    pub fn frame(&self, chart: usize) -> &[Vec<usize>] {
        &self.frames[chart]
    }

    pub fn transition(&self, to: usize, from: usize) -> &LaurentMatrix {
        &self.transitions[to][from]
    }

    pub(crate) fn scalar_transition(&self, to: usize, from: usize) -> &[Vec<i64>] {
        &self.scalar[to][from]
    }

    /// Replaces one transition entry. Used to exercise the consistency checks;
    /// call [`check_cocycle`](Self::check_cocycle) afterwards.
    pub fn set_transition_entry(&mut self, to: usize, from: usize, row: usize, col: usize, value: Laurent) {
        self.transitions[to][from][row][col] = value;
    }

    fn unit(&self, j: usize) -> Vec<i64> {
        let mut e = vec![0; self.n + 1];
        e[j] = 1;
        e
    }

    fn diff(&self, a: usize, b: usize) -> Vec<i64> {
        let mut e = self.unit(a);
        e[b] -= 1;
        e
    }

    /// Character of the chart-k frame element indexed by `T`.
    pub fn frame_character(&self, chart: usize, forms: &[usize]) -> Vec<i64> {
        let mut chi = self.unit(chart).iter().map(|x| x * self.twist).collect::<Vec<_>>();
        for &t in forms {
            if !self.boundary[t] {
                chi[t] += 1;
                chi[chart] -= 1;
            }
        }
        chi
    }

    /// Degree-one transition from chart `k` to chart `l`, without the twist.
    ///
    /// `dlog(x_t/x_k) = ψ_t − ψ_k` with `ψ_j = dlog(x_j/x_l)` (and `ψ_l = 0`),
    /// where `ψ_j` is the chart-l frame element for `j ∈ S` and
    /// `(x_l/x_j)` times it otherwise; the chart-k element for `t ∉ S` carries
    /// an extra factor `x_t/x_k`.
    fn degree_one(&self, l: usize, k: usize) -> LaurentMatrix {
        let n = self.n;
        let zero = vec![0i64; n + 1];
        let rows: Vec<usize> = (0..=n).filter(|&t| t != l).collect();
        let cols: Vec<usize> = (0..=n).filter(|&t| t != k).collect();
        let pos = |j: usize| rows.iter().position(|&r| r == j).expect("coordinate of chart l");
        let mut g = vec![vec![Laurent::zero(); n]; n];
        if l == k {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = Laurent::monomial(1, zero.clone());
            }
            return g;
        }
        let psi = |j: usize| if self.boundary[j] { zero.clone() } else { self.diff(l, j) };
        for (c, &t) in cols.iter().enumerate() {
            let lambda = if self.boundary[t] { zero.clone() } else { self.diff(t, k) };
            let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
            if t != l {
                let r = pos(t);
                g[r][c] = g[r][c].add(&Laurent::monomial(1, add(&lambda, &psi(t))));
            }
            let r = pos(k);
            g[r][c] = g[r][c].add(&Laurent::monomial(-1, add(&lambda, &psi(k))));
        }
        g
    }

    fn build_transition(&self, l: usize, k: usize) -> LaurentMatrix {
        let g1 = self.degree_one(l, k);
        let row_coords: Vec<usize> = (0..=self.n).filter(|&t| t != l).collect();
        let col_coords: Vec<usize> = (0..=self.n).filter(|&t| t != k).collect();
        let mut twist = self.diff(k, l);
        twist.iter_mut().for_each(|x| *x *= self.twist);
        let twist = if l == k { Laurent::monomial(1, vec![0; self.n + 1]) } else { Laurent::monomial(1, twist) };
        self.frames[l]
            .iter()
            .map(|rt| {
                let ri: Vec<usize> = rt.iter().map(|t| row_coords.iter().position(|x| x == t).unwrap()).collect();
                self.frames[k]
                    .iter()
                    .map(|ct| {
                        let ci: Vec<usize> =
                            ct.iter().map(|t| col_coords.iter().position(|x| x == t).unwrap()).collect();
                        let sub: LaurentMatrix =
                            ri.iter().map(|&r| ci.iter().map(|&c| g1[r][c].clone()).collect()).collect();
                        let det = if sub.is_empty() { Laurent::monomial(1, vec![0; self.n + 1]) } else { laurent_det(&sub) };
                        det.mul(&twist)
                    })
                    .collect()
            })
            .collect()
    }

    /// `g_{pl} · g_{lk} = g_{pk}` for all charts, and `g_{kk} = 1`.
    pub fn check_cocycle(&self) -> Result<()> {
        let n = self.n;
        let rank = self.rank();
        let one = Laurent::monomial(1, vec![0; n + 1]);
        for k in 0..=n {
            let g = &self.transitions[k][k];
            for (r, row) in g.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if *x != if r == c { one.clone() } else { Laurent::zero() } {
                        return Err(Error::CocycleFailure(k, k, k));
                    }
                }
            }
            debug_assert_eq!(g.len(), rank);
        }
        for k in 0..=n {
            for l in 0..=n {
                for p in 0..=n {
                    if k == l || l == p {
                        continue;
                    }
                    let composed = laurent_matmul(&self.transitions[p][l], &self.transitions[l][k]);
                    if composed != self.transitions[p][k] {
                        return Err(Error::CocycleFailure(k, l, p));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks every entry is a single monomial of character `χ_k(T) − χ_l(T′)`
    /// and returns the coefficients.
    fn scalar_parts(&self) -> Result<Vec<Vec<Vec<Vec<i64>>>>> {
        (0..=self.n)
            .map(|l| {
                (0..=self.n)
                    .map(|k| {
                        self.frames[l]
                            .iter()
                            .zip(&self.transitions[l][k])
                            .map(|(rt, row)| {
                                self.frames[k]
                                    .iter()
                                    .zip(row)
                                    .map(|(ct, entry)| {
                                        if entry.is_zero() {
                                            return Ok(0);
                                        }
                                        let expected: Vec<i64> = self
                                            .frame_character(k, ct)
                                            .iter()
                                            .zip(self.frame_character(l, rt))
                                            .map(|(a, b)| a - b)
                                            .collect();
                                        match entry.as_monomial() {
                                            Some((c, e)) if e == expected.as_slice() => Ok(c),
                                            _ => Err(Error::Inhomogeneous(format!(
                                                "chart {k}→{l}, T={ct:?}, T'={rt:?}: {entry:?}, expected character {expected:?}"
                                            ))),
                                        }
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Re-derives the scalar transitions after the transition data changed.
    pub fn revalidate(&mut self) -> Result<()> {
        self.check_cocycle()?;
        self.scalar = self.scalar_parts()?;
        Ok(())
    }
}
