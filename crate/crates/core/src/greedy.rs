//! ℓ1-penalized greedy pursuit.
//!
//! Each step picks the dictionary unit with the largest inner product with
//! the current residual, then solves the two-variable convex problem
//! `min_{α∈[0,1], β≥0} ‖Y − (1−α)f − βh‖²_n + w((1−α)v + β)`.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::Rng as _;
use rayon::prelude::*;

use crate::design::Design;
use crate::dictionary::{self, Activation, RidgeUnit, Sign, DEFAULT_COVER_CAP};
use crate::error::{Error, Result};
use crate::model::RidgeModel;
use crate::seed;
use crate::targets::{fmt17, Dataset};

/// Convex, nondecreasing penalty `w(v)` on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PenaltyFn {
    Linear {
        lambda: f64,
    },
    Power {
        lambda: f64,
        exponent: f64,
    },
    /// `Σ c_k v^{p_k}` with `c_k ≥ 0`, `p_k ≥ 1`.
    PowerSum(Vec<(f64, f64)>),
    /// Piecewise-linear interpolation of `(v, w)` samples, extended linearly.
    Tabulated(Vec<(f64, f64)>),
}

impl Default for PenaltyFn {
    fn default() -> Self {
        PenaltyFn::Linear { lambda: 0.0 }
    }
}

impl PenaltyFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn eval(&self, v: f64) -> f64 {
        match self {
            PenaltyFn::Linear { lambda } => lambda * v,
            PenaltyFn::Power { lambda, exponent } => lambda * v.max(0.0).powf(*exponent),
            PenaltyFn::PowerSum(terms) => terms.iter().map(|(c, p)| c * v.max(0.0).powf(*p)).sum(),
            PenaltyFn::Tabulated(pts) => interpolate(pts, v),
        }
    }

    pub fn is_linear(&self) -> Option<f64> {
        match self {
            PenaltyFn::Linear { lambda } => Some(*lambda),
            _ => None,
        }
    }

    /// Parameter checks plus a midpoint-convexity and monotonicity scan on
    /// 1000 seeded triples over `[0, v_max]`.
    pub fn validate(&self, v_max: f64) -> Result<()> {
        let bad = |r: &str| {
            Err(Error::Config {
                key: "penalty".into(),
                reason: r.into(),
            })
        };
        match self {
            PenaltyFn::Linear { lambda } if !(*lambda >= 0.0) => return bad("lambda must be >= 0"),
            PenaltyFn::Power { lambda, exponent } if !(*lambda >= 0.0 && *exponent >= 1.0) => {
                return bad("need lambda >= 0 and exponent >= 1")
            }
            PenaltyFn::PowerSum(t) if t.iter().any(|(c, p)| !(*c >= 0.0 && *p >= 1.0)) => {
                return bad("need coefficients >= 0 and exponents >= 1")
            }
            PenaltyFn::Tabulated(pts) => {
                if pts.len() < 2 {
                    return bad("tabulated penalty needs at least two samples");
                }
                if pts.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return bad("tabulated abscissae must increase strictly");
                }
                if pts.iter().any(|p| !(p.1 >= 0.0)) {
                    return bad("tabulated values must be >= 0");
                }
            }
            _ => {}
        }
        let mut rng = seed::rng(0x5eed);
        for _ in 0..1000 {
            let a: f64 = rng.gen_range(0.0..=v_max);
            let b: f64 = rng.gen_range(0.0..=v_max);
            let (wa, wb, wm) = (self.eval(a), self.eval(b), self.eval(0.5 * (a + b)));
            let tol = 1e-12 * (wa.abs() + wb.abs() + 1.0);
            if wm > 0.5 * (wa + wb) + tol {
                return bad("penalty is not convex");
            }
            if (a < b && wa > wb + tol) || (b < a && wb > wa + tol) {
                return bad("penalty must be nondecreasing");
            }
        }
        Ok(())
    }
}

fn interpolate(pts: &[(f64, f64)], v: f64) -> f64 {
    let seg = |i: usize| {
        let ((x0, y0), (x1, y1)) = (pts[i], pts[i + 1]);
        y0 + (v - x0) * (y1 - y0) / (x1 - x0)
    };
    let k = pts.partition_point(|p| p.0 <= v);
    match k {
        0 => seg(0),
        k if k >= pts.len() => seg(pts.len() - 2),
        k => seg(k - 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerStrategy {
    #[default]
    CoverExhaustive,
    ProjectedGradient,
    FrankWolfe,
}

impl FromStr for InnerStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cover-exhaustive" | "cover" => Ok(InnerStrategy::CoverExhaustive),
            "projected-gradient" | "pgd" => Ok(InnerStrategy::ProjectedGradient),
            "frank-wolfe" | "fw" => Ok(InnerStrategy::FrankWolfe),
            _ => Err(Error::input(format!("unknown inner strategy `{s}`"))),
        }
    }
}

impl fmt::Display for InnerStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerStrategy::CoverExhaustive => "cover-exhaustive",
            InnerStrategy::ProjectedGradient => "projected-gradient",
            InnerStrategy::FrankWolfe => "frank-wolfe",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyConfig {
    pub radius: f64,
    pub activation: Activation,
    pub m_max: usize,
    pub penalty: PenaltyFn,
    pub inner: InnerStrategy,
    pub restarts: usize,
    pub steps: usize,
    /// Sparsity of the cover grid used for search and for the `c` diagnostic.
    pub cover_m: usize,
    pub cover_cap: u128,
    /// Compute the cover-grid value even for continuous strategies.
    pub c_report: bool,
    pub seed: u64,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        Self {
            radius: 2.0,
            activation: Activation::Ramp,
            m_max: 20,
            penalty: PenaltyFn::zero(),
            inner: InnerStrategy::CoverExhaustive,
            restarts: 32,
            steps: 200,
            cover_m: 2,
            cover_cap: DEFAULT_COVER_CAP,
            c_report: false,
            seed: 0,
        }
    }
}

impl GreedyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Config {
                key: "radius".into(),
                reason: "must be > 0".into(),
            });
        }
        if self.cover_m == 0 {
            return Err(Error::Config {
                key: "cover_m".into(),
                reason: "must be >= 1".into(),
            });
        }
        if self.inner != InnerStrategy::CoverExhaustive && (self.restarts == 0 || self.steps == 0) {
            return Err(Error::Config {
                key: "restarts".into(),
                reason: "restarts and steps must be >= 1".into(),
            });
        }
        self.penalty.validate(64.0 * self.radius.max(1.0))
    }
}

/// Sparse parameter vector: `(index, value)` pairs over the lifted coordinates.
type Sparse = Vec<(usize, f64)>;

/// Precomputed search state for one design.
pub struct InnerSearch<'a> {
    x: &'a Design,
    cfg: &'a GreedyConfig,
    cover: Option<Vec<Sparse>>,
}

impl<'a> InnerSearch<'a> {
    pub fn new(x: &'a Design, cfg: &'a GreedyConfig) -> Result<Self> {
        let need_cover = cfg.inner == InnerStrategy::CoverExhaustive || cfg.c_report;
        let cover = if need_cover {
            let c = dictionary::enumerate_cover_capped(x.d() + 1, cfg.cover_m, cfg.radius, cfg.cover_cap)?;
            Some(
                c.distinct_thetas()
                    .into_iter()
                    .map(|t| t.iter().copied().enumerate().filter(|(_, v)| *v != 0.0).collect())
                    .collect(),
            )
        } else {
            None
        };
        Ok(Self { x, cfg, cover })
    }

    pub fn cover_size(&self) -> Option<usize> {
        self.cover.as_ref().map(|c| c.len())
    }

    fn correlation_sparse(&self, r: &[f64], theta: &Sparse) -> f64 {
        let d = self.x.d();
        let act = self.cfg.activation;
        let mut acc = 0.0;
        for (ri, row) in r.iter().zip(self.x.rows()) {
            let mut z = 0.0;
            for &(j, t) in theta {
                z += t * if j == d { 1.0 } else { row[j] };
            }
            acc += ri * act.apply(z);
        }
        acc / r.len() as f64
    }

    fn correlation(&self, r: &[f64], theta: &[f64]) -> f64 {
        correlation(self.x, self.cfg.activation, r, theta)
    }

    /// Best signed correlation over the cover grid; ties go to the lexicographically first theta.
    fn cover_best(&self, r: &[f64]) -> Option<(f64, Vec<f64>)> {
        let cover = self.cover.as_ref()?;
        let dim = self.x.d() + 1;
        let (idx, val) = cover
            .par_iter()
            .enumerate()
            .map(|(i, t)| (i, self.correlation_sparse(r, t)))
            .reduce(|| (usize::MAX, 0.0), better);
        if idx == usize::MAX {
            return Some((0.0, vec![0.0; dim]));
        }
        let mut theta = vec![0.0; dim];
        for &(j, t) in &cover[idx] {
            theta[j] = t;
        }
        Some((val, theta))
    }

    fn continuous_best(&self, r: &[f64], step_seed: u64) -> (f64, Vec<f64>) {
        let dim = self.x.d() + 1;
        let lip = self
            .x
            .rows()
            .zip(r)
            .map(|(row, ri)| ri.abs() * (1.0 + row.iter().map(|v| v * v).sum::<f64>()));
        let lip = lip.sum::<f64>() / r.len() as f64;
        let best = (0..self.cfg.restarts)
            .into_par_iter()
            .map(|k| {
                let mut rng = seed::child(step_seed, k as u64);
                let start = dictionary::random_cover_element(dim, self.cfg.cover_m, self.cfg.radius, &mut rng);
                let (v, t) = match self.cfg.inner {
                    InnerStrategy::FrankWolfe => self.frank_wolfe(r, start),
                    _ => self.projected_gradient(r, start, lip),
                };
                (k, v.abs(), t)
            })
            .reduce(
                || (usize::MAX, 0.0, Vec::new()),
                |a, b| {
                    let (i, _) = better((a.0, a.1), (b.0, b.1));
                    if i == a.0 {
                        a
                    } else {
                        b
                    }
                },
            );
        if best.0 == usize::MAX {
            return (0.0, vec![0.0; dim]);
        }
        let t = best.2;
        (self.correlation(r, &t), t)
    }

    fn gradient(&self, r: &[f64], theta: &[f64]) -> Vec<f64> {
        let d = self.x.d();
        let act = self.cfg.activation;
        let mut g = vec![0.0; d + 1];
        for (ri, row) in r.iter().zip(self.x.rows()) {
            let z = lifted_dot(theta, row);
            let k = ri * act.derivative(z);
            if k == 0.0 {
                continue;
            }
            for (gj, xj) in g.iter_mut().zip(row) {
                *gj += k * xj;
            }
            g[d] += k;
        }
        let n = r.len() as f64;
        g.iter_mut().for_each(|v| *v /= n);
        g
    }

    /// Ascent on `|⟨R, φ(θ·x̃)⟩_n|`, keeping the best iterate.
    fn projected_gradient(&self, r: &[f64], start: Vec<f64>, lip: f64) -> (f64, Vec<f64>) {
        let mut theta = start;
        let mut cur = self.correlation(r, &theta);
        let mut best = (cur, theta.clone());
        if lip <= 0.0 {
            return best;
        }
        for _ in 0..self.cfg.steps {
            let s = if cur < 0.0 { -1.0 } else { 1.0 };
            let g = self.gradient(r, &theta);
            for (t, gj) in theta.iter_mut().zip(&g) {
                *t += s * gj / lip;
            }
            theta = project_l1(&theta, self.cfg.radius);
            cur = self.correlation(r, &theta);
            if cur.abs() > best.0.abs() {
                best = (cur, theta.clone());
            }
        }
        best
    }

    /// Coordinate Frank–Wolfe with vertices `±Λe_j` and step `2/(k+2)`.
    fn frank_wolfe(&self, r: &[f64], start: Vec<f64>) -> (f64, Vec<f64>) {
        let lam = self.cfg.radius;
        let mut theta = start;
        let mut cur = self.correlation(r, &theta);
        let mut best = (cur, theta.clone());
        for k in 0..self.cfg.steps {
            let s = if cur < 0.0 { -1.0 } else { 1.0 };
            let g = self.gradient(r, &theta);
            let (j, gj) = g.iter().enumerate().fold(
                (0, 0.0f64),
                |acc, (j, v)| if v.abs() > acc.1.abs() { (j, *v) } else { acc },
            );
            if gj == 0.0 {
                break;
            }
            let gamma = 2.0 / (k as f64 + 2.0);
            for t in theta.iter_mut() {
                *t *= 1.0 - gamma;
            }
            theta[j] += gamma * lam * (s * gj).signum();
            cur = self.correlation(r, &theta);
            if cur.abs() > best.0.abs() {
                best = (cur, theta.clone());
            }
        }
        best
    }

    /// Maximizes `⟨R, h⟩_n` over signed units with `‖θ‖₁ ≤ Λ`.
    pub fn maximize(&self, r: &[f64], step_seed: u64) -> Result<InnerResult> {
        if r.len() != self.x.n() {
            return Err(Error::DimensionMismatch {
                expected: self.x.n(),
                got: r.len(),
            });
        }
        let dim = self.x.d() + 1;
        let act = self.cfg.activation;
        if r.iter().all(|v| *v == 0.0) {
            return Ok(InnerResult {
                unit: RidgeUnit {
                    activation: act,
                    theta: vec![0.0; dim],
                    sign: Sign::Plus,
                },
                value: 0.0,
                cover_value: Some(0.0),
                c_ratio: 1.0,
            });
        }
        let cover = self.cover_best(r);
        let (corr, theta) = match self.cfg.inner {
            InnerStrategy::CoverExhaustive => cover.clone().expect("cover built for exhaustive search"),
            _ => {
                let (c, t) = self.continuous_best(r, step_seed);
                match &cover {
                    Some((cv, ct)) if cv.abs() > c.abs() => (*cv, ct.clone()),
                    _ => (c, t),
                }
            }
        };
        let value = corr.abs();
        let cover_value = cover.map(|c| c.0.abs());
        let c_ratio = match cover_value {
            Some(cv) if value > 0.0 => (cv / value).max(1.0),
            Some(cv) if cv > 0.0 => f64::INFINITY,
            _ => 1.0,
        };
        Ok(InnerResult {
            unit: RidgeUnit {
                activation: act,
                theta,
                sign: Sign::of(corr),
            },
            value,
            cover_value,
            c_ratio,
        })
    }
}

/// Picks the larger `|value|`; on equal magnitude the smaller index wins.
fn better(a: (usize, f64), b: (usize, f64)) -> (usize, f64) {
    match a.1.abs().partial_cmp(&b.1.abs()).unwrap_or(Ordering::Equal) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.0 <= b.0 {
                a
            } else {
                b
            }
        }
    }
}

#[inline]
fn lifted_dot(theta: &[f64], x: &[f64]) -> f64 {
    let d = x.len();
    let mut z = theta[d];
    for (t, xi) in theta[..d].iter().zip(x) {
        z += t * xi;
    }
    z
}

/// `(1/n)Σ R_i φ(θ·(X_i,1))`.
pub fn correlation(x: &Design, act: Activation, r: &[f64], theta: &[f64]) -> f64 {
    let s: f64 = r
        .iter()
        .zip(x.rows())
        .map(|(ri, row)| ri * act.apply(lifted_dot(theta, row)))
        .sum();
    s / r.len() as f64
}

/// Euclidean projection onto the ℓ1 ball of the given radius (sort-based).
pub fn project_l1(v: &[f64], radius: f64) -> Vec<f64> {
    let l1: f64 = v.iter().map(|x| x.abs()).sum();
    if l1 <= radius {
        return v.to_vec();
    }
    let mut u: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut shift = 0.0;
    for (k, uk) in u.iter().enumerate() {
        cum += uk;
        let t = (cum - radius) / (k + 1) as f64;
        if *uk > t {
            shift = t;
        }
    }
    v.iter().map(|x| x.signum() * (x.abs() - shift).max(0.0)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerResult {
    pub unit: RidgeUnit,
    /// `⟨R, h⟩_n ≥ 0`.
    pub value: f64,
    /// Best value on the cover grid, when it was searched.
    pub cover_value: Option<f64>,
    /// `max(1, cover_value / value)`.
    pub c_ratio: f64,
}

pub fn inner_maximize(r: &[f64], x: &Design, cfg: &GreedyConfig, step_seed: u64) -> Result<InnerResult> {
    InnerSearch::new(x, cfg)?.maximize(r, step_seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearch {
    pub alpha: f64,
    pub beta: f64,
    pub objective: f64,
}

/// Quadratic form of the line-search objective in `(a, β)` with `a = 1 − α`.
struct Quad {
    yy: f64,
    yf: f64,
    yh: f64,
    ff: f64,
    fh: f64,
    hh: f64,
}

impl Quad {
    fn loss(&self, a: f64, b: f64) -> f64 {
        let v =
            self.yy - 2.0 * a * self.yf - 2.0 * b * self.yh + a * a * self.ff + 2.0 * a * b * self.fh + b * b * self.hh;
        v.max(0.0)
    }
}

fn golden(lo: f64, hi: f64, iters: usize, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Jointly minimizes the step objective over `α ∈ [0,1]`, `β ≥ 0`.
///
/// `f_prev`, `h` and `y` are values on the design; `v_prev` is the variation of `f_prev`.
pub fn line_search(f_prev: &[f64], v_prev: f64, h: &[f64], y: &[f64], w: &PenaltyFn) -> LineSearch {
    let n = y.len().max(1) as f64;
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>() / n;
    let q = Quad {
        yy: dot(y, y),
        yf: dot(y, f_prev),
        yh: dot(y, h),
        ff: dot(f_prev, f_prev),
        fh: dot(f_prev, h),
        hh: dot(h, h),
    };
    let obj = |a: f64, b: f64| q.loss(a, b) + w.eval(a * v_prev + b);
    let best_beta = |a: f64| -> f64 {
        if q.hh <= 0.0 {
            return 0.0;
        }
        // ⟨r, h⟩ with r = y − a·f
        let rh = q.yh - a * q.fh;
        let b_ls = (rh / q.hh).max(0.0);
        if let Some(lambda) = w.is_linear() {
            return ((rh - lambda / 2.0) / q.hh).max(0.0);
        }
        if b_ls == 0.0 {
            return 0.0;
        }
        golden(0.0, b_ls, 60, |b| obj(a, b))
    };
    let profile = |alpha: f64| {
        let a = 1.0 - alpha;
        let b = best_beta(a);
        (obj(a, b), b)
    };
    let first_step = q.ff == 0.0 && v_prev == 0.0;
    let mut cands: Vec<(f64, f64, f64)> = Vec::with_capacity(4);
    if first_step {
        let (o, b) = profile(1.0);
        cands.push((o, 1.0, b));
    } else {
        let alpha = golden(0.0, 1.0, 60, |al| profile(al).0);
        for al in [alpha, 0.0, 1.0] {
            let (o, b) = profile(al);
            cands.push((o, al, b));
        }
    }
    cands.push((obj(1.0, 0.0), 0.0, 0.0));
    let (objective, alpha, beta) = cands
        .into_iter()
        .fold((f64::INFINITY, 0.0, 0.0), |acc, c| if c.0 < acc.0 { c } else { acc });
    LineSearch { alpha, beta, objective }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub m: usize,
    pub v_m: f64,
    pub alpha: f64,
    pub beta: f64,
    pub inner_value: f64,
    pub train_mse: f64,
    pub penalty: f64,
    pub objective: f64,
    pub c_ratio: f64,
    pub model: RidgeModel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyPath {
    pub dim: usize,
    /// Objective of the zero model, i.e. `‖Y‖²_n + w(0)`.
    pub initial_objective: f64,
    pub records: Vec<StepRecord>,
}

impl GreedyPath {
    /// `f_m`; `m = 0` is the zero model.
    pub fn model_at(&self, m: usize) -> Option<RidgeModel> {
        if m == 0 {
            return Some(RidgeModel::zero(self.dim));
        }
        self.records.get(m - 1).map(|r| r.model.clone())
    }

    pub fn final_model(&self) -> RidgeModel {
        self.model_at(self.records.len()).expect("last record exists")
    }

    /// Largest inner-step ratio seen on the path.
    pub fn max_c_ratio(&self) -> f64 {
        self.records.iter().map(|r| r.c_ratio).fold(1.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "m,v_m,alpha,beta,inner_value,train_mse,penalty,objective")?;
        for r in &self.records {
            let vals = [
                r.v_m,
                r.alpha,
                r.beta,
                r.inner_value,
                r.train_mse,
                r.penalty,
                r.objective,
            ];
            let cols: Vec<String> = vals.iter().map(|v| fmt17(*v)).collect();
            writeln!(out, "{},{}", r.m, cols.join(","))?;
        }
        Ok(())
    }
}

pub fn fit_lpgp(data: &Dataset, cfg: &GreedyConfig) -> Result<GreedyPath> {
    fit_lpgp_xy(&data.x, &data.y, cfg)
}

pub fn fit_lpgp_xy(x: &Design, y: &[f64], cfg: &GreedyConfig) -> Result<GreedyPath> {
    cfg.validate()?;
    if x.n() == 0 {
        return Err(Error::input("empty design"));
    }
    if y.len() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            got: y.len(),
        });
    }
    let n = x.n() as f64;
    let mse = |f: &[f64]| y.iter().zip(f).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / n;
    let mut fvals = vec![0.0; x.n()];
    let mut model = RidgeModel::zero(x.d());
    let initial_objective = mse(&fvals) + cfg.penalty.eval(0.0);
    let mut prev_obj = initial_objective;
    let mut records = Vec::with_capacity(cfg.m_max);
    if cfg.m_max == 0 {
        return Ok(GreedyPath {
            dim: x.d(),
            initial_objective,
            records,
        });
    }
    let search = InnerSearch::new(x, cfg)?;
    for m in 1..=cfg.m_max {
        let r: Vec<f64> = y.iter().zip(&fvals).map(|(a, b)| a - b).collect();
        let inner = search.maximize(&r, seed::derive(cfg.seed, m as u64))?;
        let h = inner.unit.clone();
        let hvals = x.map_rows(|row| h.value(row));
        let ls = line_search(&fvals, model.v(), &hvals, y, &cfg.penalty);
        let a = 1.0 - ls.alpha;
        let mut next = model.clone();
        if a != 1.0 {
            next.scale_terms(a);
        }
        if ls.beta > 0.0 {
            next.push(ls.beta, h)?;
        }
        next.retain_nonzero();
        let next_vals: Vec<f64> = fvals.iter().zip(&hvals).map(|(f, hv)| a * f + ls.beta * hv).collect();
        let v_m = a * model.v() + ls.beta;
        let train_mse = mse(&next_vals);
        let pen = cfg.penalty.eval(v_m);
        let mut objective = train_mse + pen;
        let (alpha, beta);
        if objective > prev_obj {
            // rounding in the closed-form objective; keep f_{m-1}
            objective = prev_obj;
            alpha = 0.0;
            beta = 0.0;
        } else {
            alpha = ls.alpha;
            beta = ls.beta;
            model = next;
            fvals = next_vals;
        }
        assert!(objective <= prev_obj, "objective increased at step {m}");
        prev_obj = objective;
        records.push(StepRecord {
            m,
            v_m: model.v(),
            alpha,
            beta,
            inner_value: inner.value,
            train_mse: mse(&fvals),
            penalty: cfg.penalty.eval(model.v()),
            objective,
            c_ratio: inner.c_ratio,
            model: model.clone(),
        });
    }
    Ok(GreedyPath {
        dim: x.d(),
        initial_objective,
        records,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRhs {
    pub b_f: f64,
    /// `‖f*−f‖² + w(c·v_f) + 4b_f/m`.
    pub rhs: f64,
    /// `(‖f*−f‖ + 2(c+1)v_f·K/√m)² + w(c·v_f)`.
    pub refined: f64,
}

/// Right-hand side of the greedy risk bound for a comparison function `f`.
///
/// `unit_bound` is `K ≥ sup|h|` over the dictionary; `K = 1` gives the
/// normalized-dictionary formula `b_f = c²v_f² + 2v_f‖f*‖(c+1) − ‖f‖²`.
#[allow(clippy::too_many_arguments)]
pub fn greedy_bound_rhs(
    v_f: f64,
    norm_fstar: f64,
    norm_f: f64,
    dist_sq: f64,
    c: f64,
    m: usize,
    w: &PenaltyFn,
    unit_bound: f64,
) -> Result<BoundRhs> {
    if m == 0 {
        return Err(Error::input("m must be >= 1"));
    }
    if !(c >= 1.0) {
        return Err(Error::input("c must be >= 1"));
    }
    let k = unit_bound;
    let b_f = c * c * v_f * v_f * k * k + 2.0 * v_f * norm_fstar * (c + 1.0) * k - norm_f * norm_f;
    let mf = m as f64;
    let wc = w.eval(c * v_f);
    let rhs = dist_sq + wc + 4.0 * b_f / mf;
    let refined = (dist_sq.sqrt() + 2.0 * (c + 1.0) * v_f * k / mf.sqrt()).powi(2) + wc;
    Ok(BoundRhs { b_f, rhs, refined })
}
