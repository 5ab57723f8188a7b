//! Empirical losses, penalized model selection, and Monte Carlo checks of the
//! symmetrization and noise concentration inequalities.

use std::io::Write;

use rayon::prelude::*;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::greedy::{fit_lpgp, GreedyConfig, GreedyPath};
use crate::model::RidgeModel;
use crate::penalty::{self, PenaltyConfig, Tail};
use crate::seed;
use crate::stats::mean_se;
use crate::targets::{fmt17, gen_dataset_with_law, sample_design, Dataset, DesignLaw, NoiseRegime, Target};

/// A model composed with `T` at level `B_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedModel {
    pub model: RidgeModel,
    pub b_n: f64,
}

impl Target for TruncatedModel {
    fn dim(&self) -> usize {
        self.model.dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        penalty::truncate(self.model.value(x), self.b_n)
    }
    fn sup_bound(&self) -> f64 {
        self.model.sup_bound().min(self.b_n)
    }
    fn variation_bound(&self) -> f64 {
        self.model.v()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossReport {
    /// `D_n(f, f*)` on the training design.
    pub d_n: f64,
    /// `D′_n(f, f*)` on the held-out design.
    pub d_n_test: f64,
    /// `P_n(f‖f*) = (1/n)Σ[(Y_i − f(X_i))² − (Y_i − f*(X_i))²]`.
    pub p_n: f64,
    pub p_n_test: f64,
    /// Held-out squared distance of the truncated fit; equals `d_n_test` when no level is given.
    pub test_mse: f64,
    pub m_hat: usize,
    pub pen: f64,
}

fn sq_dist(f: &dyn Target, g: &dyn Target, x: &Design) -> f64 {
    x.rows().map(|r| (f.value(r) - g.value(r)).powi(2)).sum::<f64>() / x.n().max(1) as f64
}

fn relative_loss(f: &dyn Target, fstar: &dyn Target, x: &Design, y: &[f64]) -> f64 {
    x.rows()
        .zip(y)
        .map(|(r, yi)| (yi - f.value(r)).powi(2) - (yi - fstar.value(r)).powi(2))
        .sum::<f64>()
        / x.n().max(1) as f64
}

/// Losses of `model` against `fstar`; `b_n` adds the truncated held-out error.
pub fn losses(model: &RidgeModel, fstar: &dyn Target, data: &Dataset, b_n: Option<f64>) -> Result<LossReport> {
    if model.dim() != data.d() || fstar.dim() != data.d() {
        return Err(Error::DimensionMismatch {
            expected: data.d(),
            got: model.dim(),
        });
    }
    let d_n_test = sq_dist(model, fstar, &data.x_test);
    let test_mse = match b_n {
        Some(b) => sq_dist(
            &TruncatedModel {
                model: model.clone(),
                b_n: b,
            },
            fstar,
            &data.x_test,
        ),
        None => d_n_test,
    };
    Ok(LossReport {
        d_n: sq_dist(model, fstar, &data.x),
        d_n_test,
        p_n: relative_loss(model, fstar, &data.x, &data.y),
        p_n_test: relative_loss(model, fstar, &data.x_test, &data.y_test),
        test_mse,
        m_hat: model.num_terms(),
        pen: 0.0,
    })
}

/// `D_n − (2/n)Σ ε_i g(X_i)` with `g = f − f*`; needs the realized noise.
pub fn p_n_from_noise(model: &RidgeModel, fstar: &dyn Target, x: &Design, noise: &[f64]) -> f64 {
    let n = x.n().max(1) as f64;
    let mut d = 0.0;
    let mut cross = 0.0;
    for (r, e) in x.rows().zip(noise) {
        let g = model.value(r) - fstar.value(r);
        d += g * g;
        cross += e * g;
    }
    (d - 2.0 * cross) / n
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectOptions {
    /// Multiplier applied to the regime penalty in the selection criterion.
    pub pen_scale: f64,
    /// Extra cost per term, added as `term_cost·m`.
    pub term_cost: f64,
    /// Replace the greedy `w` by the `v`-dependent part of the scaled regime penalty.
    pub couple_penalty: bool,
}

impl Default for SelectOptions {
    fn default() -> Self {
        Self {
            pen_scale: 1.0,
            term_cost: 0.0,
            couple_penalty: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub model: TruncatedModel,
    pub m_hat: usize,
    pub v_hat: f64,
    /// Penalty per sample at `m̂` (scaled, plus the term cost).
    pub pen_per_n: f64,
    /// `(m, criterion)` for every candidate.
    pub criteria: Vec<(usize, f64)>,
    pub path: GreedyPath,
    pub report: Option<LossReport>,
}

/// `{0, 1, 2, 4, …}` up to and including `m_max`.
pub fn default_m_grid(m_max: usize) -> Vec<usize> {
    let mut g = vec![0];
    let mut m = 1;
    while m < m_max {
        g.push(m);
        m *= 2;
    }
    if m_max > 0 {
        g.push(m_max);
    }
    g
}

/// Fits the greedy path up to `max(m_grid)` and selects `m̂` by penalized training error.
pub fn fit_and_select(
    data: &Dataset,
    fstar: Option<&dyn Target>,
    gcfg: &GreedyConfig,
    pcfg: &PenaltyConfig,
    m_grid: &[usize],
    opts: &SelectOptions,
) -> Result<Selection> {
    if m_grid.is_empty() {
        return Err(Error::input("m_grid is empty"));
    }
    let (n, d) = (data.n(), data.d());
    let mut g = gcfg.clone();
    g.m_max = *m_grid.iter().max().unwrap();
    if opts.couple_penalty {
        g.penalty = penalty::greedy_penalty(pcfg, n, d, opts.pen_scale)?;
    }
    let path = fit_lpgp(data, &g)?;
    let t_n = penalty::tail_tn(&data.y, pcfg.b_n);
    let mut criteria = Vec::with_capacity(m_grid.len());
    let mut best: Option<(f64, usize, f64)> = None;
    let mut grid = m_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    for &m in &grid {
        let (mse, v) = if m == 0 {
            (data.y.iter().map(|y| y * y).sum::<f64>() / n as f64, 0.0)
        } else {
            let r = &path.records[m - 1];
            (r.train_mse, r.v_m)
        };
        let pen = opts.pen_scale * penalty::regime_penalty(pcfg, v, n, d, t_n)?.pen_per_n + opts.term_cost * m as f64;
        let crit = mse + pen;
        criteria.push((m, crit));
        if best.is_none_or(|b| crit < b.0) {
            best = Some((crit, m, pen));
        }
    }
    let (best_crit, m_hat, pen_per_n) = best.unwrap();
    debug_assert!(criteria.iter().all(|c| best_crit <= c.1));
    let model = path.model_at(m_hat).expect("m in range");
    let report = match fstar {
        Some(f) => {
            let mut r = losses(&model, f, data, Some(pcfg.b_n))?;
            r.m_hat = m_hat;
            r.pen = pen_per_n;
            Some(r)
        }
        None => None,
    };
    Ok(Selection {
        v_hat: model.v(),
        model: TruncatedModel { model, b_n: pcfg.b_n },
        m_hat,
        pen_per_n,
        criteria,
        path,
        report,
    })
}

/// `(2(τ+1)·pen/n, (τ+1)·pen/n)` from a penalty already divided by `n`.
pub fn risk_bounds(tau: f64, pen_per_n: f64) -> (f64, f64) {
    (2.0 * (tau + 1.0) * pen_per_n, (tau + 1.0) * pen_per_n)
}

/// Finite class `{g}` with complexities `L(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountableClassSpec {
    pub name: String,
    pub members: Vec<(RidgeModel, f64)>,
}

impl CountableClassSpec {
    pub fn kraft_sum(&self) -> f64 {
        self.members.iter().map(|(_, l)| (-l).exp()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.members.is_empty() {
            return Err(Error::input("class is empty"));
        }
        let dim = self.members[0].0.dim();
        if self.members.iter().any(|(g, _)| g.dim() != dim) {
            return Err(Error::input("class members differ in dimension"));
        }
        let k = self.kraft_sum();
        if k > 1.0 + 1e-12 {
            return Err(Error::input(format!("Kraft sum {k} exceeds 1")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.members[0].0.dim()
    }

    /// `K = max_g sup|g|`.
    pub fn sup_bound(&self) -> f64 {
        self.members.iter().map(|(g, _)| g.sup_bound()).fold(0.0, f64::max)
    }
}

/// Classes exercised by the concentration checks.
pub fn shipped_class_specs(dim: usize) -> Vec<CountableClassSpec> {
    use crate::dictionary::{enumerate_cover, Activation, RidgeUnit, Sign};
    let unit = |theta: Vec<f64>, sign| RidgeUnit::new(Activation::Ramp, theta, sign).unwrap();
    let mut e1 = vec![0.0; dim + 1];
    e1[0] = 1.0;
    let g1 = RidgeModel::from_terms(dim, vec![(1.0, unit(e1.clone(), Sign::Plus))]).unwrap();
    let mut e2 = vec![0.0; dim + 1];
    e2[dim.min(1)] = -1.0;
    e2[dim] = 0.5;
    let g2 = RidgeModel::from_terms(dim, vec![(0.8, unit(e2, Sign::Minus))]).unwrap();
    let ln2 = 2f64.ln();
    let cover = enumerate_cover(dim + 1, 1, 2.0).expect("small cover");
    let thetas = cover.distinct_thetas();
    let l = (thetas.len() as f64).ln();
    let cover_class = thetas
        .into_iter()
        .map(|t| {
            (
                RidgeModel::from_terms(dim, vec![(0.5, unit(t, Sign::Plus))]).unwrap(),
                l,
            )
        })
        .collect();
    vec![
        CountableClassSpec {
            name: "zero".into(),
            members: vec![(RidgeModel::zero(dim), 0.0)],
        },
        CountableClassSpec {
            name: "singleton".into(),
            members: vec![(g1.clone(), 0.0)],
        },
        CountableClassSpec {
            name: "pair".into(),
            members: vec![(g1, ln2), (g2, ln2)],
        },
        CountableClassSpec {
            name: "cover".into(),
            members: cover_class,
        },
    ]
}

fn run_trials(trials: usize, seed_base: u64, f: impl Fn(u64) -> f64 + Sync) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::input("trials must be >= 1"));
    }
    let vals: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| f(seed::derive(seed_base, t)))
        .collect();
    Ok(mean_se(&vals))
}

/// Monte Carlo estimate of `E sup_g {D′_n(g) − D_n(g) − (γ/n)L(g) − s²(g)/(2γ)}`.
pub fn mc_symmetrization_check(
    spec: &CountableClassSpec,
    gamma: f64,
    n: usize,
    trials: usize,
    law: DesignLaw,
    seed_base: u64,
) -> Result<(f64, f64)> {
    spec.validate()?;
    if !(gamma > 0.0) || n == 0 {
        return Err(Error::input("need gamma > 0 and n >= 1"));
    }
    let d = spec.dim();
    let nf = n as f64;
    run_trials(trials, seed_base, |s| {
        let mut rng = seed::rng(s);
        let x = sample_design(n, d, law, &mut rng);
        let xp = sample_design(n, d, law, &mut rng);
        spec.members
            .iter()
            .map(|(g, l)| {
                let mut dn = 0.0;
                let mut dp = 0.0;
                let mut s2 = 0.0;
                for (a, b) in x.rows().zip(xp.rows()) {
                    let (ga, gb) = (g.value(a).powi(2), g.value(b).powi(2));
                    dn += ga;
                    dp += gb;
                    s2 += (ga - gb).powi(2);
                }
                (dp - dn) / nf - gamma * l / nf - s2 / nf / (2.0 * gamma)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

/// Monte Carlo estimate of `E sup_g {(1/n)Σε_i g(X_i) − (γ/n)L(g) − (1/(An))Σg²(X_i)}`
/// with `γ = Aσ²/2 + Kη`.
pub fn mc_noise_check(
    spec: &CountableClassSpec,
    a: f64,
    n: usize,
    trials: usize,
    regime: NoiseRegime,
    law: DesignLaw,
    seed_base: u64,
) -> Result<(f64, f64)> {
    spec.validate()?;
    regime.validate()?;
    if !(a > 0.0) || n == 0 {
        return Err(Error::input("need A > 0 and n >= 1"));
    }
    let gamma = a * regime.variance() / 2.0 + spec.sup_bound() * regime.bernstein_eta();
    let d = spec.dim();
    let nf = n as f64;
    run_trials(trials, seed_base, |s| {
        let mut rng = seed::rng(s);
        let x = sample_design(n, d, law, &mut rng);
        let eps: Vec<f64> = (0..n).map(|_| regime.sample(&mut rng)).collect();
        spec.members
            .iter()
            .map(|(g, l)| {
                let mut cross = 0.0;
                let mut sq = 0.0;
                for (r, e) in x.rows().zip(&eps) {
                    let v = g.value(r);
                    cross += e * v;
                    sq += v * v;
                }
                cross / nf - gamma * l / nf - sq / (a * nf)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiskCurveConfig {
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub regime: NoiseRegime,
    pub law: DesignLaw,
    pub greedy: GreedyConfig,
    pub penalty: PenaltyConfig,
    /// When set, `B_n` is recomputed per `n` with this tail class.
    pub auto_bn: Option<Tail>,
    pub m_grid: Vec<usize>,
    pub select: SelectOptions,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiskRow {
    pub n: usize,
    pub d: usize,
    pub trial: usize,
    pub regime: String,
    pub m_hat: usize,
    pub v_hat: f64,
    pub test_mse: f64,
    pub pen_per_n: f64,
    /// `0 + pen(f*)/n` at the generating model, with the selection scale.
    pub resolvability_proxy: f64,
    /// `2(τ+1)·pen(f*)/n` with the unscaled penalty.
    pub bound: f64,
    /// Same bound with the selection scale applied.
    pub bound_scaled: f64,
}

pub fn risk_curve(target: &dyn Target, cfg: &RiskCurveConfig) -> Result<Vec<RiskRow>> {
    let d = target.dim();
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let mut rows: Vec<RiskRow> = jobs
        .par_iter()
        .map(|&(n, trial)| {
            let s = seed::derive(seed::derive(cfg.seed, n as u64), trial as u64);
            let mut pcfg = cfg.penalty.clone();
            if let Some(tail) = cfg.auto_bn {
                pcfg.b_n = penalty::select_bn(pcfg.b, pcfg.nu, n, tail).max(pcfg.b);
            }
            let data = gen_dataset_with_law(target, n, cfg.regime, cfg.law, s)?;
            let mut g = cfg.greedy.clone();
            g.seed = s;
            let sel = fit_and_select(&data, Some(target), &g, &pcfg, &cfg.m_grid, &cfg.select)?;
            let report = sel.report.expect("target given");
            let t_n = penalty::tail_tn(&data.y, pcfg.b_n);
            let pen_star = penalty::regime_penalty(&pcfg, target.variation_bound(), n, d, t_n)?.pen_per_n;
            let tau = pcfg.tau();
            Ok(RiskRow {
                n,
                d,
                trial,
                regime: pcfg.regime.to_string(),
                m_hat: sel.m_hat,
                v_hat: sel.v_hat,
                test_mse: report.test_mse,
                pen_per_n: sel.pen_per_n,
                resolvability_proxy: cfg.select.pen_scale * pen_star,
                bound: risk_bounds(tau, pen_star).0,
                bound_scaled: risk_bounds(tau, cfg.select.pen_scale * pen_star).0,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| (r.n, r.trial));
    Ok(rows)
}

pub fn write_risk_csv<W: Write>(out: &mut W, rows: &[RiskRow]) -> Result<()> {
    writeln!(
        out,
        "n,d,trial,regime,m_hat,v_hat,test_mse,pen_per_n,resolvability_proxy"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.d,
            r.trial,
            r.regime,
            r.m_hat,
            fmt17(r.v_hat),
            fmt17(r.test_mse),
            fmt17(r.pen_per_n),
            fmt17(r.resolvability_proxy)
        )?;
    }
    Ok(())
}
