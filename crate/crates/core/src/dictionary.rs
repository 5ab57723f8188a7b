//! Ridge activations, dictionary units and sparse covers of the ℓ1 ball.
//!
//! A unit is `h(x) = s·φ(θ·(x, 1))`: inputs are lifted by a constant one so the
//! bias sits in the last slot of `θ`, and the ℓ1 budget `Λ` applies to the whole
//! lifted vector.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seed::Rng;

/// Default ceiling on the number of cover elements that may be materialized.
pub const DEFAULT_COVER_CAP: u128 = 1_000_000;

/// Relative slack used when checking ℓ1 budgets.
const L1_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Activation {
    /// `u ↦ max(0, u)`
    Ramp,
    Sine,
    /// Hyperbolic tangent sigmoid.
    Tanh,
}

impl Activation {
    pub const ALL: [Activation; 3] = [Activation::Ramp, Activation::Sine, Activation::Tanh];

    #[inline]
    pub fn apply(self, u: f64) -> f64 {
        match self {
            Activation::Ramp => u.max(0.0),
            Activation::Sine => u.sin(),
            Activation::Tanh => u.tanh(),
        }
    }

    /// Derivative, taking the right derivative of the ramp at zero as 0.
    #[inline]
    pub fn derivative(self, u: f64) -> f64 {
        match self {
            Activation::Ramp => {
                if u > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Sine => u.cos(),
            Activation::Tanh => {
                let t = u.tanh();
                1.0 - t * t
            }
        }
    }

    /// Sup-norm of `φ(θ·(x,1))` over the cube with `‖θ‖₁ ≤ 2`.
    ///
    /// Ramps are left unnormalized, so they reach 2.
    pub fn bound(self) -> f64 {
        match self {
            Activation::Ramp => 2.0,
            Activation::Sine | Activation::Tanh => 1.0,
        }
    }

    /// Sup-norm of the unit when `‖θ‖₁ ≤ radius` and `x ∈ [-1,1]^d`.
    pub fn bound_for_radius(self, radius: f64) -> f64 {
        match self {
            Activation::Ramp => radius,
            Activation::Sine => radius.min(1.0),
            Activation::Tanh => radius.tanh(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::Ramp => "ramp",
            Activation::Sine => "sine",
            Activation::Tanh => "tanh",
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ramp" => Ok(Activation::Ramp),
            "sine" | "sin" => Ok(Activation::Sine),
            "tanh" | "sigmoid" | "tanh-sigmoid" => Ok(Activation::Tanh),
            _ => Err(Error::input(format!("unknown activation `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// One dictionary element `s·φ(θ·(x,1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeUnit {
    pub activation: Activation,
    /// Lifted parameter of length `d + 1`; the last entry multiplies the constant input.
    pub theta: Vec<f64>,
    pub sign: Sign,
}

impl RidgeUnit {
    pub fn new(activation: Activation, theta: Vec<f64>, sign: Sign) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::input("theta must contain at least the bias slot"));
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::input("theta has non-finite entries"));
        }
        Ok(Self {
            activation,
            theta,
            sign,
        })
    }

    /// Ramp unit `s·(α·x − t)₊`.
    pub fn ramp(alpha: &[f64], t: f64, sign: Sign) -> Self {
        let mut theta = alpha.to_vec();
        theta.push(-t);
        Self {
            activation: Activation::Ramp,
            theta,
            sign,
        }
    }

    /// Dimension of the (unlifted) input.
    pub fn input_dim(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn l1_norm(&self) -> f64 {
        self.theta.iter().map(|t| t.abs()).sum()
    }

    pub fn within_radius(&self, radius: f64) -> bool {
        within_radius(&self.theta, radius)
    }

    /// `θ·(x, 1)`, without a length check.
    #[inline]
    pub fn pre_activation(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len() + 1, self.theta.len());
        let d = x.len();
        let mut acc = self.theta[d];
        for (t, xi) in self.theta[..d].iter().zip(x) {
            acc += t * xi;
        }
        acc
    }

    /// Unit value without a length check. Prefer [`eval_unit`] at API boundaries.
    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        self.sign.value() * self.activation.apply(self.pre_activation(x))
    }

    /// Unit value at `x`; fails when `x` does not match the unit's input dimension.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() + 1 != self.theta.len() {
            return Err(Error::DimensionMismatch {
                expected: self.theta.len() - 1,
                got: x.len(),
            });
        }
        Ok(self.value(x))
    }

    /// Lexicographic order on (theta, sign, activation), used for deterministic ties.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        lex_cmp(&self.theta, &other.theta)
            .then(self.sign.cmp(&other.sign))
            .then(self.activation.cmp(&other.activation))
    }
}

/// `sign·φ(θ·(x,1))`.
pub fn eval_unit(unit: &RidgeUnit, x: &[f64]) -> Result<f64> {
    unit.eval(x)
}

pub(crate) fn within_radius(theta: &[f64], radius: f64) -> bool {
    let l1: f64 = theta.iter().map(|t| t.abs()).sum();
    l1 <= radius * (1.0 + L1_TOL)
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// `C(n, k)` in exact integer arithmetic, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `ln C(n, k)` in floating point.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// One grid point `(Λ/m)·Σ u_j` of a sparse cover, kept together with the
/// multiset of symbols that produced it.
///
/// `counts` has `2·dim + 1` slots: slot 0 is the zero vector, slot `2j+1` is
/// `+e_j` and slot `2j+2` is `−e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverElement {
    pub counts: Vec<u32>,
    pub theta: Vec<f64>,
}

/// Exhaustive enumeration of the sparse ℓ1-ball grid.
#[derive(Debug, Clone)]
pub struct SparseCover {
    pub dim: usize,
    pub m_grid: usize,
    pub radius: f64,
    /// Sorted lexicographically by `theta`, then by `counts`.
    pub elements: Vec<CoverElement>,
}

impl SparseCover {
    /// Number of multisets, which is `C(2·dim + m_grid, m_grid)`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Exact membership of a parameter vector.
    pub fn contains(&self, theta: &[f64]) -> bool {
        self.elements.binary_search_by(|e| lex_cmp(&e.theta, theta)).is_ok()
    }

    /// Distinct parameter vectors, in lexicographic order.
    ///
    /// Different multisets can land on the same vector (`+e_j` and `−e_j`
    /// cancel), so this can be shorter than [`SparseCover::len`].
    pub fn distinct_thetas(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for e in &self.elements {
            if out.last() != Some(&e.theta) {
                out.push(e.theta.clone());
            }
        }
        out
    }
}

/// Coordinates of the grid point for a symbol multiset.
pub fn cover_theta(counts: &[u32], m_grid: usize, radius: f64) -> Vec<f64> {
    let dim = (counts.len() - 1) / 2;
    let step = radius / m_grid as f64;
    (0..dim)
        .map(|j| step * (counts[2 * j + 1] as f64 - counts[2 * j + 2] as f64))
        .collect()
}

/// Enumerates every multiset of `m_grid` symbols drawn from
/// `{0, ±e_1, …, ±e_dim}` and the grid point it induces.
pub fn enumerate_cover(dim: usize, m_grid: usize, radius: f64) -> Result<SparseCover> {
    enumerate_cover_capped(dim, m_grid, radius, DEFAULT_COVER_CAP)
}

pub fn enumerate_cover_capped(dim: usize, m_grid: usize, radius: f64, cap: u128) -> Result<SparseCover> {
    if dim == 0 || m_grid == 0 {
        return Err(Error::input("cover needs dim >= 1 and m_grid >= 1"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::input("cover radius must be positive and finite"));
    }
    let count = binomial((2 * dim + m_grid) as u64, m_grid as u64);
    match count {
        Some(c) if c <= cap => {}
        _ => {
            return Err(Error::Size(format!(
                "cover of dim {dim} with m_grid {m_grid} has more than {cap} elements; \
                 use sampled covers (sparsify_theta) instead"
            )))
        }
    }

    let slots = 2 * dim + 1;
    let mut elements = Vec::with_capacity(count.unwrap_or(0) as usize);
    let mut counts = vec![0u32; slots];
    compositions(&mut counts, 0, m_grid as u32, &mut |c| {
        elements.push(CoverElement {
            counts: c.to_vec(),
            theta: cover_theta(c, m_grid, radius),
        });
    });
    elements.sort_by(|a, b| lex_cmp(&a.theta, &b.theta).then_with(|| a.counts.cmp(&b.counts)));
    Ok(SparseCover {
        dim,
        m_grid,
        radius,
        elements,
    })
}

fn compositions(counts: &mut [u32], slot: usize, remaining: u32, emit: &mut impl FnMut(&[u32])) {
    if slot == counts.len() - 1 {
        counts[slot] = remaining;
        emit(counts);
        counts[slot] = 0;
        return;
    }
    for q in 0..=remaining {
        counts[slot] = q;
        compositions(counts, slot + 1, remaining - q, emit);
    }
    counts[slot] = 0;
}

/// Result of one Maurey draw of an internal parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Sparsified {
    pub theta: Vec<f64>,
    pub counts: Vec<u32>,
}

/// Draws `θ̃ = (Λ/m)·Σ v_j`, where each `v_j` equals `sgn(θ_i)·Λ·e_i` with
/// probability `|θ_i|/Λ` and the zero vector otherwise. `θ̃` is unbiased for
/// `θ` and lies on the sparse cover grid.
pub fn sparsify_theta(theta: &[f64], m_grid: usize, radius: f64, rng: &mut Rng) -> Result<Sparsified> {
    if m_grid == 0 {
        return Err(Error::input("m_grid must be >= 1"));
    }
    if !(radius > 0.0) {
        return Err(Error::input("radius must be positive"));
    }
    if !within_radius(theta, radius) {
        return Err(Error::input(format!(
            "‖θ‖₁ = {} exceeds radius {radius}",
            theta.iter().map(|t| t.abs()).sum::<f64>()
        )));
    }
    let dim = theta.len();
    let mut counts = vec![0u32; 2 * dim + 1];
    for _ in 0..m_grid {
        let u: f64 = rng.gen::<f64>() * radius;
        let mut acc = 0.0;
        let mut slot = 0;
        for (i, t) in theta.iter().enumerate() {
            if *t == 0.0 {
                continue;
            }
            acc += t.abs();
            if u < acc {
                slot = if *t > 0.0 { 2 * i + 1 } else { 2 * i + 2 };
                break;
            }
        }
        counts[slot] += 1;
    }
    Ok(Sparsified {
        theta: cover_theta(&counts, m_grid, radius),
        counts,
    })
}

/// Uniformly random grid point: `m_grid` symbols drawn uniformly with replacement.
pub fn random_cover_element(dim: usize, m_grid: usize, radius: f64, rng: &mut Rng) -> Vec<f64> {
    let mut counts = vec![0u32; 2 * dim + 1];
    for _ in 0..m_grid {
        let k = rng.gen_range(0..counts.len());
        counts[k] += 1;
    }
    cover_theta(&counts, m_grid, radius)
}

/// Count of equal-weight `m`-term combinations from a library of size `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LibraryCount {
    /// `C(M − 1 + m, m)`.
    pub count: u128,
    pub ln_count: f64,
    /// `m·ln(e·(M/m + 1))`.
    pub ln_bound: f64,
}

pub fn cover_count_library(library_size: u64, terms: u64) -> Result<LibraryCount> {
    if library_size == 0 || terms == 0 {
        return Err(Error::input("library size and terms must be >= 1"));
    }
    let n = library_size - 1 + terms;
    let count =
        binomial(n, terms).ok_or_else(|| Error::Size(format!("C({n}, {terms}) overflows a 128-bit integer")))?;
    let m = terms as f64;
    Ok(LibraryCount {
        count,
        ln_count: ln_binomial(n, terms),
        ln_bound: m * (std::f64::consts::E * (library_size as f64 / m + 1.0)).ln(),
    })
}
