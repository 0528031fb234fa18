//! The fractional family `f(x) = x^c / (x^c + a(1 − x)^c)`, its companion
//! `g(y) = b y^c`, and the logit machinery that turns the defining
//! functional equation into a Pexider equation.
//!
//! The Möbius maps `f_p(x) = x / (xp + 1 − p)`, `p < 1`, are the members with
//! `c = 1`, `a = 1 − p`.

use serde::{Deserialize, Serialize};

use crate::effects::Effect;
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// Violation threshold used by the pointwise rigidity checks.
pub const RIGIDITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl FracParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::ParamError(format!("{name} = {v} must be positive")));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn identity() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            c: 1.0,
        }
    }

    /// Parameters of `f⁻¹`, which stays in the family: `(a^{−1/c}, 1/c)`.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.a.powf(-1.0 / self.c),
            b: self.b,
            c: 1.0 / self.c,
        }
    }
}

/// The parameter `p < 1` of `f_p`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct FpParam(f64);

impl FpParam {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p < 1.0) {
            return Err(Error::ParamError(format!(
                "p = {p} must be a real number below 1"
            )));
        }
        Ok(Self(p))
    }

    pub fn identity() -> Self {
        Self(0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `(a, b, c) = (1 − p, 1, 1)`.
    pub fn to_frac(self) -> FracParams {
        FracParams {
            a: 1.0 - self.0,
            b: 1.0,
            c: 1.0,
        }
    }

    /// `p = 1 − a`; requires `c = 1` up to `1e−12`.
    pub fn from_frac(params: &FracParams) -> Result<Self> {
        if (params.c - 1.0).abs() > 1e-12 {
            return Err(Error::NotInFamily { exponent: params.c });
        }
        Self::new(1.0 - params.a)
    }

    /// Parameter of `f_p⁻¹`: `a ↦ 1/a`, so `p′ = 1 − 1/(1 − p)`.
    pub fn inverse(self) -> Self {
        Self(1.0 - 1.0 / (1.0 - self.0))
    }

    /// `f_p(x) = x / (xp + 1 − p)` on `[0, 1]`.
    pub fn eval(self, x: f64) -> Result<f64> {
        check_unit(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(self, x: f64) -> f64 {
        let p = self.0;
        x / (x * p + (1.0 - p))
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::DomainError {
            value: x,
            domain: "[0, 1]",
        })
    }
}

/// `f(x) = x^c / (x^c + a(1 − x)^c)`, continuously extended by `f(0) = 0`
/// and `f(1) = 1`.
pub fn f_eval(params: &FracParams, x: f64) -> Result<f64> {
    check_unit(x)?;
    Ok(f_raw(params, x))
}

fn f_raw(params: &FracParams, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let num = x.powf(params.c);
    num / (num + params.a * (1.0 - x).powf(params.c))
}

/// `(f(x), 1 − f(x))` from `(x, 1 − x)`, both tails without cancellation.
fn f_pair(params: &FracParams, x: f64, xc: f64) -> (f64, f64) {
    let num = x.powf(params.c);
    let den = params.a * xc.powf(params.c);
    (num / (num + den), den / (num + den))
}

/// `(α(t), 1 − α(t))`.
fn alpha_pair(t: f64) -> (f64, f64) {
    if t > 0.0 {
        let e = (-t).exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    } else {
        let e = t.exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    }
}

/// The unique `x` with `f(x) = y`.
pub fn f_inverse(params: &FracParams, y: f64) -> Result<f64> {
    f_eval(&params.inverse(), y)
}

/// `g(y) = b y^c`.
pub fn g_eval(params: &FracParams, y: f64) -> f64 {
    params.b * y.powf(params.c)
}

/// Applies `f_p` through the functional calculus of `A`.
pub fn fp_apply(p: FpParam, a: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
    if p.value() == 0.0 {
        return Ok(a.clone());
    }
    let d = a.eig(tol)?;
    let m = d.map_spectrum(|l| p.eval_unchecked(l.clamp(0.0, 1.0)));
    Ok(Effect::from_trusted(m))
}

/// `α(t) = 1 / (1 + eᵗ)`.
pub fn alpha(t: f64) -> f64 {
    1.0 / (1.0 + t.exp())
}

/// `α⁻¹ = β`.
pub fn alpha_inv(x: f64) -> f64 {
    beta(x)
}

/// `β(x) = ln((1 − x)/x)` on `]0, 1[`.
pub fn beta(x: f64) -> f64 {
    ((1.0 - x) / x).ln()
}

/// `β⁻¹(u) = 1 / (1 + eᵘ)`.
pub fn beta_inv(u: f64) -> f64 {
    alpha(u)
}

/// `γ(y) = ln y` on `]0, 1[`.
pub fn gamma(y: f64) -> f64 {
    y.ln()
}

pub fn gamma_inv(v: f64) -> f64 {
    v.exp()
}

/// `F = α⁻¹∘f∘α`, `G = β∘f∘β⁻¹`, `H = γ∘g∘γ⁻¹` built from an `(f, g)` pair.
///
/// Whenever `(f, g)` solves the functional equation these satisfy
/// `F(u + v) = G(u) + H(v)` for `u ∈ ℝ`, `v < 0`.
#[derive(Debug, Clone, Copy)]
pub struct PexiderDecomposition {
    pub f: FracParams,
    pub g: FracParams,
}

impl PexiderDecomposition {
    pub fn new(f: FracParams, g: FracParams) -> Self {
        Self { f, g }
    }

    // α⁻¹ and β take `(y, 1 − y)` pairs here so that neither tail of `f`
    // loses digits to cancellation.
    pub fn big_f(&self, w: f64) -> f64 {
        let (x, xc) = alpha_pair(w);
        let (y, yc) = f_pair(&self.f, x, xc);
        (yc / y).ln()
    }

    pub fn big_g(&self, u: f64) -> f64 {
        let (x, xc) = alpha_pair(u);
        let (y, yc) = f_pair(&self.f, x, xc);
        (yc / y).ln()
    }

    pub fn big_h(&self, v: f64) -> f64 {
        gamma(g_eval(&self.g, gamma_inv(v)))
    }

    /// `|F(u + v) − G(u) − H(v)|`.
    pub fn residual(&self, u: f64, v: f64) -> f64 {
        (self.big_f(u + v) - self.big_g(u) - self.big_h(v)).abs()
    }

    /// Maximum residual over the image of the interior lattice under
    /// `u = β(x)`, `v = γ(y)`.
    pub fn max_residual(&self, grid: usize) -> f64 {
        let pts = lattice(grid);
        let mut worst = 0.0_f64;
        for &x in &pts {
            for &y in &pts {
                worst = worst.max(self.residual(beta(x), gamma(y)));
            }
        }
        worst
    }
}

/// Interior lattice `i/(grid+1)`, `i = 1..=grid`.
pub fn lattice(grid: usize) -> Vec<f64> {
    (1..=grid).map(|i| i as f64 / (grid + 1) as f64).collect()
}

/// Maximum over a `grid × grid` interior lattice of
/// `|f(x/(x + (1−x)y)) − f(x)/(f(x) + (1 − f(x)) g(y))|`.
pub fn verify_pexider(f: &FracParams, g: &FracParams, grid: usize) -> f64 {
    let pts = lattice(grid.max(2));
    let mut worst = 0.0_f64;
    for &x in &pts {
        let fx = f_raw(f, x);
        for &y in &pts {
            let lhs = f_raw(f, x / (x + (1.0 - x) * y));
            let rhs = fx / (fx + (1.0 - fx) * g_eval(g, y));
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracFit {
    /// Fitted `(a, c)`; `b` is reported as `1`.
    pub params: FracParams,
    /// Root-mean-square residual of the line in logit coordinates.
    pub residual: f64,
}

/// Least-squares line through `(β(x), β(f(x)))`: slope `c`, intercept `ln a`.
pub fn fit_frac(samples: &[(f64, f64)]) -> Result<FracFit> {
    if samples.len() < 3 {
        return Err(Error::FitError(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    let mut pts = Vec::with_capacity(samples.len());
    for &(x, y) in samples {
        if !(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) {
            return Err(Error::FitError(format!(
                "sample ({x}, {y}) is not inside the open unit square"
            )));
        }
        pts.push((beta(x), beta(y)));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx.is_nan() || sxx <= 1e-24 * m {
        return Err(Error::FitError("sample abscissae are collinear".into()));
    }
    let c = sxy / sxx;
    let intercept = my - c * mx;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::FitError(format!(
            "fitted exponent {c} is not positive"
        )));
    }
    let a = intercept.exp();
    let residual = (pts
        .iter()
        .map(|p| (p.1 - c * p.0 - intercept).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(FracFit {
        params: FracParams::new(a, 1.0, c).map_err(|e| Error::FitError(e.to_string()))?,
        residual,
    })
}

/// Whether `g(1 − x) = 1 − g(x)` holds on the interior lattice, for
/// `g(y) = b y^c`.
pub fn g_symmetry_check(b: f64, c: f64, grid: usize) -> bool {
    lattice(grid.max(2))
        .into_iter()
        .all(|x| (b * (1.0 - x).powf(c) - (1.0 - b * x.powf(c))).abs() <= RIGIDITY_EPS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RigidityKind {
    /// `f_p(λ) = λ`
    FixedPoint,
    /// `f_p(1 − λ) = 1 − f_p(λ)`
    Symmetry,
    /// `f_p(xy) = f_p(x) f_p(y)`
    Multiplicative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Counterexample {
    Point { x: f64, violation: f64 },
    Pair { x: f64, y: f64, violation: f64 },
}

impl Counterexample {
    pub fn violation(&self) -> f64 {
        match *self {
            Counterexample::Point { violation, .. } | Counterexample::Pair { violation, .. } => {
                violation
            }
        }
    }
}

/// Scans the interior lattice in order and returns the first point (or
/// pair) where `f_p` violates the chosen property by more than
/// [`RIGIDITY_EPS`]. Each property holds only for `p = 0`.
pub fn rigidity_probe(p: FpParam, kind: RigidityKind, grid: usize) -> Option<Counterexample> {
    let pts = lattice(grid.max(3));
    let f = |x: f64| p.eval_unchecked(x);
    match kind {
        RigidityKind::FixedPoint => pts.iter().find_map(|&x| {
            let violation = (f(x) - x).abs();
            (violation > RIGIDITY_EPS).then_some(Counterexample::Point { x, violation })
        }),
        RigidityKind::Symmetry => pts.iter().find_map(|&x| {
            let violation = (f(1.0 - x) - (1.0 - f(x))).abs();
            (violation > RIGIDITY_EPS).then_some(Counterexample::Point { x, violation })
        }),
        RigidityKind::Multiplicative => pts.iter().find_map(|&x| {
            pts.iter().find_map(|&y| {
                let violation = (f(x * y) - f(x) * f(y)).abs();
                (violation > RIGIDITY_EPS).then_some(Counterexample::Pair { x, y, violation })
            })
        }),
    }
}
