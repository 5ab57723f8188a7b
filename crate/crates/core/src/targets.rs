//! Synthetic regression targets and datasets.
//!
//! [`SpectralTarget`] is a finite sum of cosines whose spectral norms have a
//! closed form. [`sample_ramp_model`] draws an `m`-term ramp network from the
//! integral representation of such a target, and [`gen_dataset`] produces
//! training and held-out samples under zero, Gaussian or Laplace noise.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use crate::design::Design;
use crate::dictionary::{RidgeUnit, Sign};
use crate::error::{Error, Result};
use crate::model::RidgeModel;
use crate::seed::{self, Rng};

/// Anything that can play the role of the regression function.
pub trait Target: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    /// Upper bound on `sup |f|` over the cube.
    fn sup_bound(&self) -> f64;
    /// Upper bound on the variation with respect to the ramp dictionary,
    /// excluding any affine part.
    fn variation_bound(&self) -> f64;
}

impl Target for RidgeModel {
    fn dim(&self) -> usize {
        RidgeModel::dim(self)
    }
    fn value(&self, x: &[f64]) -> f64 {
        RidgeModel::value(self, x)
    }
    fn sup_bound(&self) -> f64 {
        RidgeModel::sup_bound(self)
    }
    fn variation_bound(&self) -> f64 {
        self.v()
    }
}

/// One cosine component `a·cos(ω·x + b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub omega: Vec<f64>,
    pub magnitude: f64,
    pub phase: f64,
}

impl Atom {
    pub fn omega_l1(&self) -> f64 {
        self.omega.iter().map(|w| w.abs()).sum()
    }
}

/// `f*(x) = Σ_j a_j cos(ω_j·x + b_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTarget {
    dim: usize,
    atoms: Vec<Atom>,
}

impl SpectralTarget {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if a.omega.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.omega.len(),
                });
            }
            if !(a.magnitude > 0.0 && a.magnitude.is_finite()) {
                return Err(Error::input("atom magnitude must be positive"));
            }
            if !(a.phase.abs() <= PI) {
                return Err(Error::input("atom phase must lie in [-pi, pi]"));
            }
        }
        Ok(Self { dim, atoms })
    }

    /// Single atom `cos(ω·x)`.
    pub fn cosine(omega: Vec<f64>) -> Self {
        Self {
            dim: omega.len(),
            atoms: vec![Atom {
                omega,
                magnitude: 1.0,
                phase: 0.0,
            }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `v_{f,s} = Σ_j a_j ‖ω_j‖₁^s`.
    pub fn spectral_norm(&self, s: f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| {
                let c = a.omega_l1();
                // 0^0 = 1 so that s = 0 returns Σ a_j
                a.magnitude * if s == 0.0 { 1.0 } else { c.powf(s) }
            })
            .sum()
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(Target::value(self, x))
    }

    pub fn value_at_zero(&self) -> f64 {
        self.atoms.iter().map(|a| a.magnitude * a.phase.cos()).sum()
    }

    /// `∇f*(0) = −Σ_j a_j sin(b_j) ω_j`.
    pub fn gradient_at_zero(&self) -> Vec<f64> {
        let mut g = vec![0.0; self.dim];
        for a in &self.atoms {
            let k = -a.magnitude * a.phase.sin();
            for (gi, w) in g.iter_mut().zip(&a.omega) {
                *gi += k * w;
            }
        }
        g
    }
}

impl Target for SpectralTarget {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.atoms
            .iter()
            .map(|a| {
                let z: f64 = a.omega.iter().zip(x).map(|(w, xi)| w * xi).sum();
                a.magnitude * (z + a.phase).cos()
            })
            .sum()
    }

    fn sup_bound(&self) -> f64 {
        self.spectral_norm(0.0)
    }

    fn variation_bound(&self) -> f64 {
        self.spectral_norm(2.0)
    }
}

/// Antiderivative of `|cos u|`, continuous on the whole line.
pub(crate) fn abs_cos_antiderivative(u: f64) -> f64 {
    let k = ((u + FRAC_PI_2) / PI).floor();
    2.0 * k + (u - k * PI).sin()
}

/// `∫₀¹ |cos(c·t + p)| dt` for `c > 0`.
pub(crate) fn abs_cos_integral(c: f64, p: f64) -> f64 {
    (abs_cos_antiderivative(c + p) - abs_cos_antiderivative(p)) / c
}

/// The sampling law over `(atom, z, t)` used to build ramp approximations.
///
/// Each atom with `c = ‖ω‖₁ > 0` carries mass `a·c²·∫₀¹|cos(z·c·t + b)|dt`
/// for `z = ±1`; `v` is the total mass.
#[derive(Debug, Clone)]
pub struct RampSampler<'a> {
    target: &'a SpectralTarget,
    /// (atom index, z, mass)
    cells: Vec<(usize, f64, f64)>,
    normalizer: f64,
}

impl<'a> RampSampler<'a> {
    pub fn new(target: &'a SpectralTarget) -> Self {
        let mut cells = Vec::new();
        for (j, a) in target.atoms.iter().enumerate() {
            let c = a.omega_l1();
            if c == 0.0 {
                continue;
            }
            for z in [1.0, -1.0] {
                let mass = a.magnitude * c * c * abs_cos_integral(c, z * a.phase);
                if mass > 0.0 {
                    cells.push((j, z, mass));
                }
            }
        }
        let normalizer = cells.iter().map(|c| c.2).sum();
        Self {
            target,
            cells,
            normalizer,
        }
    }

    /// The normalizer `v`, at most `2·v_{f,2}`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// Draws one signed ramp unit `s(zt, ω)·(z·α·x − t)₊`.
    pub fn draw(&self, rng: &mut Rng) -> RidgeUnit {
        let u = rng.gen::<f64>() * self.normalizer;
        let mut acc = 0.0;
        let mut pick = self.cells[self.cells.len() - 1];
        for cell in &self.cells {
            acc += cell.2;
            if u < acc {
                pick = *cell;
                break;
            }
        }
        let (j, z, _) = pick;
        let atom = &self.target.atoms[j];
        let c = atom.omega_l1();
        let p = z * atom.phase;
        let t = sample_abs_cos(c, p, rng.gen::<f64>());
        let alpha: Vec<f64> = atom.omega.iter().map(|w| z * w / c).collect();
        // s(zt, ω) = −sgn cos(c·z·t + b)
        let sign = Sign::of(-(c * z * t + atom.phase).cos());
        RidgeUnit::ramp(&alpha, t, sign)
    }
}

/// Inverse CDF of the density on `[0,1]` proportional to `|cos(c·t + p)|`.
fn sample_abs_cos(c: f64, p: f64, u: f64) -> f64 {
    let g0 = abs_cos_antiderivative(p);
    let total = abs_cos_antiderivative(c + p) - g0;
    let goal = u * total;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if abs_cos_antiderivative(c * mid + p) - g0 < goal {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `m`-term ramp approximation `(v/m)·Σ h_k + x·∇f*(0) + f*(0)`.
///
/// Targets whose atoms all have zero frequency yield the affine part alone.
pub fn sample_ramp_model(target: &SpectralTarget, m: usize, rng: &mut Rng) -> Result<RidgeModel> {
    if m == 0 {
        return Err(Error::input("m must be >= 1"));
    }
    if target.atoms.is_empty() {
        return Err(Error::input("target has no atoms"));
    }
    let base = RidgeModel::zero(target.dim).with_affine(target.value_at_zero(), target.gradient_at_zero())?;
    let sampler = RampSampler::new(target);
    if sampler.cells.is_empty() {
        return Ok(base);
    }
    let weight = sampler.normalizer / m as f64;
    let mut model = base;
    for _ in 0..m {
        model.push(weight, sampler.draw(rng))?;
    }
    Ok(model)
}

/// Law of the design points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DesignLaw {
    #[default]
    Uniform,
    /// Independent coordinates equal to ±1 with probability one half.
    Bernoulli,
}

impl FromStr for DesignLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(DesignLaw::Uniform),
            "bernoulli" | "symmetric-bernoulli" => Ok(DesignLaw::Bernoulli),
            _ => Err(Error::input(format!("unknown design law `{s}`"))),
        }
    }
}

impl fmt::Display for DesignLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignLaw::Uniform => "uniform",
            DesignLaw::Bernoulli => "bernoulli",
        })
    }
}

pub fn sample_design(n: usize, d: usize, law: DesignLaw, rng: &mut Rng) -> Design {
    let data = (0..n * d)
        .map(|_| match law {
            DesignLaw::Uniform => rng.gen_range(-1.0..=1.0),
            DesignLaw::Bernoulli => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
        })
        .collect();
    Design::new(n, d, data).expect("sized by construction")
}

/// Additive noise law.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NoiseRegime {
    #[default]
    Zero,
    Gaussian {
        sigma: f64,
    },
    /// Laplace with scale `nu`; satisfies the Bernstein condition with `η = nu`.
    Laplace {
        nu: f64,
    },
}

impl NoiseRegime {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseRegime::Zero => Ok(()),
            NoiseRegime::Gaussian { sigma } if sigma >= 0.0 && sigma.is_finite() => Ok(()),
            NoiseRegime::Laplace { nu } if nu >= 0.0 && nu.is_finite() => Ok(()),
            _ => Err(Error::input("noise scale must be finite and >= 0")),
        }
    }

    pub fn sample(&self, rng: &mut Rng) -> f64 {
        match *self {
            NoiseRegime::Zero => 0.0,
            NoiseRegime::Gaussian { sigma } => {
                let z: f64 = StandardNormal.sample(rng);
                sigma * z
            }
            NoiseRegime::Laplace { nu } => {
                let u: f64 = rng.gen::<f64>() - 0.5;
                -nu * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            NoiseRegime::Zero => 0.0,
            NoiseRegime::Gaussian { sigma } => sigma * sigma,
            NoiseRegime::Laplace { nu } => 2.0 * nu * nu,
        }
    }

    /// A Bernstein parameter `η` valid for this law.
    pub fn bernstein_eta(&self) -> f64 {
        match *self {
            NoiseRegime::Zero => 0.0,
            NoiseRegime::Gaussian { sigma } => sigma,
            NoiseRegime::Laplace { nu } => nu,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            NoiseRegime::Zero => true,
            NoiseRegime::Gaussian { sigma } => sigma == 0.0,
            NoiseRegime::Laplace { nu } => nu == 0.0,
        }
    }
}

impl fmt::Display for NoiseRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseRegime::Zero => f.write_str("zero"),
            NoiseRegime::Gaussian { sigma } => write!(f, "gaussian({sigma})"),
            NoiseRegime::Laplace { nu } => write!(f, "laplace({nu})"),
        }
    }
}

/// Training sample plus an independent copy drawn from the same laws.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub x: Design,
    pub y: Vec<f64>,
    /// Realized noise, `y − f*(x)`; empty when unknown (e.g. loaded from CSV).
    pub noise: Vec<f64>,
    pub x_test: Design,
    pub y_test: Vec<f64>,
    pub noise_test: Vec<f64>,
    pub regime: NoiseRegime,
    pub seed: u64,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn d(&self) -> usize {
        self.x.d()
    }

    /// Dataset without a held-out copy (the test half mirrors the training half).
    pub fn from_xy(x: Design, y: Vec<f64>) -> Result<Self> {
        if x.n() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.n(),
                got: y.len(),
            });
        }
        if x.n() == 0 {
            return Err(Error::input("dataset is empty"));
        }
        Ok(Self {
            x_test: x.clone(),
            y_test: y.clone(),
            x,
            y,
            noise: Vec::new(),
            noise_test: Vec::new(),
            regime: NoiseRegime::Zero,
            seed: 0,
        })
    }
}

pub fn gen_dataset(target: &dyn Target, n: usize, regime: NoiseRegime, seed: u64) -> Result<Dataset> {
    gen_dataset_with_law(target, n, regime, DesignLaw::Uniform, seed)
}

/// Draws `n` training and `n` held-out observations; the held-out copy uses `seed + 1`.
pub fn gen_dataset_with_law(
    target: &dyn Target,
    n: usize,
    regime: NoiseRegime,
    law: DesignLaw,
    seed: u64,
) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::input("n must be >= 1"));
    }
    regime.validate()?;
    let d = target.dim();
    let draw = |s: u64| {
        let mut rng = seed::rng(s);
        let x = sample_design(n, d, law, &mut rng);
        let noise: Vec<f64> = (0..n).map(|_| regime.sample(&mut rng)).collect();
        let y: Vec<f64> = x.rows().zip(&noise).map(|(r, e)| target.value(r) + e).collect();
        (x, y, noise)
    };
    let (x, y, noise) = draw(seed);
    let (x_test, y_test, noise_test) = draw(seed.wrapping_add(1));
    Ok(Dataset {
        x,
        y,
        noise,
        x_test,
        y_test,
        noise_test,
        regime,
        seed,
    })
}

/// Monte Carlo estimate of `‖f − g‖²` over the given evaluation points.
pub fn mc_sq_distance(f: &dyn Target, g: &dyn Target, points: &Design) -> f64 {
    if points.n() == 0 {
        return 0.0;
    }
    points.rows().map(|x| (f.value(x) - g.value(x)).powi(2)).sum::<f64>() / points.n() as f64
}

/// Writes `x1,…,xd,y` rows with 17 significant digits.
pub fn write_csv<W: Write>(out: W, header_lines: &[String], x: &Design, y: &[f64]) -> Result<()> {
    let mut out = out;
    for line in header_lines {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (1..=x.d()).map(|j| format!("x{j}")).collect();
    header.push("y".into());
    w.write_record(&header)?;
    for (row, yi) in x.rows().zip(y) {
        let rec: Vec<String> = row.iter().chain(std::iter::once(yi)).map(|v| fmt17(*v)).collect();
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Reads a CSV produced by [`write_csv`]; `#` lines are skipped.
pub fn read_csv<R: Read>(input: R) -> Result<(Design, Vec<f64>)> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = r.headers()?.clone();
    let cols = headers.len();
    if cols < 2 || headers.get(cols - 1) != Some("y") {
        return Err(Error::Io("CSV header must be x1,...,xd,y".into()));
    }
    for (j, h) in headers.iter().take(cols - 1).enumerate() {
        if h != format!("x{}", j + 1) {
            return Err(Error::Io(format!("unexpected column `{h}`")));
        }
    }
    let d = cols - 1;
    let mut data = Vec::new();
    let mut y = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        for (j, field) in rec.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Io(format!("not a number: `{field}`")))?;
            if j < d {
                data.push(v);
            } else {
                y.push(v);
            }
        }
    }
    let design = Design::new(y.len(), d, data)?;
    Ok((design, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        s * h / 3.0
    }

    #[test]
    fn spectral_norm_examples() {
        let t = SpectralTarget::cosine(vec![1.0, 1.0]);
        assert_eq!(t.spectral_norm(2.0), 4.0);
        assert_eq!(t.spectral_norm(0.0), 1.0);
        let t2 = SpectralTarget::new(
            2,
            vec![
                Atom {
                    omega: vec![1.0, 0.0],
                    magnitude: 2.0,
                    phase: 0.3,
                },
                Atom {
                    omega: vec![0.0, 3.0],
                    magnitude: 1.0,
                    phase: -1.0,
                },
            ],
        )
        .unwrap();
        assert_eq!(t2.spectral_norm(1.0), 5.0);
        assert_eq!(t2.spectral_norm(0.0), 3.0);
    }

    #[test]
    fn eval_target_examples() {
        let t = SpectralTarget::cosine(vec![1.0, 1.0]);
        assert_eq!(t.eval(&[0.0, 0.0]).unwrap(), 1.0);
        assert!(t.eval(&[FRAC_PI_2 / 2.0, FRAC_PI_2 / 2.0]).unwrap().abs() < 1e-15);
        let a = SpectralTarget::new(
            2,
            vec![Atom {
                omega: vec![0.5, -1.0],
                magnitude: 0.7,
                phase: 0.2,
            }],
        )
        .unwrap();
        let b = SpectralTarget::new(
            2,
            vec![Atom {
                omega: vec![2.0, 0.0],
                magnitude: 1.3,
                phase: -2.0,
            }],
        )
        .unwrap();
        let both = SpectralTarget::new(2, [a.atoms.clone(), b.atoms.clone()].concat()).unwrap();
        let x = [0.3, -0.4];
        let sum = a.eval(&x).unwrap() + b.eval(&x).unwrap();
        assert!((both.eval(&x).unwrap() - sum).abs() < 1e-15);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let t = SpectralTarget::new(
            3,
            vec![
                Atom {
                    omega: vec![1.0, -2.0, 0.5],
                    magnitude: 0.8,
                    phase: 0.7,
                },
                Atom {
                    omega: vec![0.0, 1.5, -1.0],
                    magnitude: 1.2,
                    phase: -2.1,
                },
            ],
        )
        .unwrap();
        let g = t.gradient_at_zero();
        let h = 1e-5;
        for j in 0..3 {
            let mut p = vec![0.0; 3];
            let mut q = vec![0.0; 3];
            p[j] = h;
            q[j] = -h;
            let fd = (t.eval(&p).unwrap() - t.eval(&q).unwrap()) / (2.0 * h);
            assert!(
                (fd - g[j]).abs() <= 1e-6 * g[j].abs().max(1.0),
                "j={j} fd={fd} g={}",
                g[j]
            );
        }
    }

    #[test]
    fn abs_cos_integral_matches_quadrature() {
        for &(c, p) in &[(2.0, 0.0), (2.0, 1.0), (0.3, -2.5), (7.5, 3.0), (2.0, -PI)] {
            let exact = abs_cos_integral(c, p);
            let quad = simpson(|t| (c * t + p).cos().abs(), 0.0, 1.0, 200_000);
            assert!((exact - quad).abs() < 1e-8, "c={c} p={p}: {exact} vs {quad}");
        }
    }

    #[test]
    fn ramp_normalizer_bounded_by_twice_v2() {
        let t = SpectralTarget::cosine(vec![1.0, 1.0]);
        let s = RampSampler::new(&t);
        let quad = 4.0
            * (simpson(|u| (2.0 * u).cos().abs(), 0.0, 1.0, 200_000)
                + simpson(|u| (2.0 * u).cos().abs(), 0.0, 1.0, 200_000));
        assert!((s.normalizer() - quad).abs() < 1e-8);
        assert!(s.normalizer() <= 2.0 * t.spectral_norm(2.0));
    }

    #[test]
    fn ramp_units_respect_parameter_bounds() {
        let t = SpectralTarget::new(
            3,
            vec![
                Atom {
                    omega: vec![1.0, -2.0, 0.5],
                    magnitude: 0.8,
                    phase: 0.7,
                },
                Atom {
                    omega: vec![0.0, 1.5, -1.0],
                    magnitude: 1.2,
                    phase: -2.1,
                },
            ],
        )
        .unwrap();
        let mut rng = seed::rng(5);
        let m = sample_ramp_model(&t, 200, &mut rng).unwrap();
        for (_, h) in m.terms() {
            let alpha_l1: f64 = h.theta[..3].iter().map(|a| a.abs()).sum();
            assert!((alpha_l1 - 1.0).abs() < 1e-12);
            let t = -h.theta[3];
            assert!((0.0..=1.0).contains(&t));
        }
    }

    #[test]
    fn constant_target_gives_affine_model() {
        let t = SpectralTarget::cosine(vec![0.0, 0.0]);
        let m = sample_ramp_model(&t, 10, &mut seed::rng(1)).unwrap();
        assert_eq!(m.num_terms(), 0);
        assert_eq!(m.intercept(), 1.0);
        assert_eq!(m.eval(&[0.3, -0.2]).unwrap(), 1.0);
    }

    #[test]
    fn dataset_regimes_and_determinism() {
        let t = SpectralTarget::cosine(vec![1.0, -0.5]);
        let z = gen_dataset(&t, 50, NoiseRegime::Zero, 9).unwrap();
        for (x, y) in z.x.rows().zip(&z.y) {
            assert_eq!(*y, Target::value(&t, x));
        }
        let g0 = gen_dataset(&t, 50, NoiseRegime::Gaussian { sigma: 0.0 }, 9).unwrap();
        assert_eq!(g0.y, z.y);
        assert_eq!(g0.x, z.x);
        let a = gen_dataset(&t, 50, NoiseRegime::Laplace { nu: 0.3 }, 4).unwrap();
        let b = gen_dataset(&t, 50, NoiseRegime::Laplace { nu: 0.3 }, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.x.as_slice().iter().all(|v| v.abs() <= 1.0));
        assert_ne!(a.x, a.x_test);
        assert!(gen_dataset(&t, 0, NoiseRegime::Zero, 0).is_err());
        assert!(gen_dataset(&t, 5, NoiseRegime::Gaussian { sigma: -1.0 }, 0).is_err());
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let t = SpectralTarget::cosine(vec![1.0, 2.0, 3.0]);
        let data = gen_dataset(&t, 20, NoiseRegime::Gaussian { sigma: 0.7 }, 1).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &["seed=1".into()], &data.x, &data.y).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# seed=1\nx1,x2,x3,y\n"));
        let (x, y) = read_csv(&buf[..]).unwrap();
        assert_eq!(x, data.x);
        assert_eq!(y, data.y);
    }
}
