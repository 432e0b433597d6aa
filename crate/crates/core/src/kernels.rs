//! Closed-form kernels of the evolution operator.
//!
//! In the two-atom basis `|+,+>, |+,->, |-,+>, |-,->` the propagator
//! `U(t) = exp(-iHt)` is a 4x4 matrix whose entries are functions of the
//! field operators. Every entry acting on an equal-occupation Fock state
//! `|n,n>` reduces to a complex scalar built from
//!
//! ```text
//! lambda = 2[(n+1)^2 + n^2]
//! theta  = sqrt(4 lambda + alpha^2)
//! A      = exp(-i alpha gt/2) [cos(theta gt/2) + i (alpha/theta) sin(theta gt/2)] - 1
//! B      = exp(-i (alpha+theta) gt/2) [1 - exp(i theta gt)]
//! ```
//!
//! # The `U22` / `U23` entries
//!
//! The one-excitation pair `|+,->|n,n>`, `|-,+>|n,n>` splits into the
//! antisymmetric combination, which is dark to the field and only feels the
//! dipole term (energy `-alpha`), and the symmetric combination, which is
//! shifted by `+alpha` and couples to the rest of the block. Writing
//! `S = <s|U|s>` for the symmetric amplitude,
//!
//! ```text
//! U22 = (S + exp(i alpha gt)) / 2
//! U23 = (S - exp(i alpha gt)) / 2
//! S   = exp(-i alpha gt/2) [cos(theta gt/2) - i (alpha/theta) sin(theta gt/2)]
//! ```
//!
//! Pulling out the common prefactor `exp(-i (alpha+theta) gt/2) / (4 theta)`
//! gives
//!
//! ```text
//! U22 = pref * { alpha [1 - e^{i theta gt}] + 2 theta e^{i (3 alpha + theta) gt/2} + theta [1 + e^{i theta gt}] }
//! U23 = pref * { alpha [1 - e^{i theta gt}] - 2 theta e^{i (3 alpha + theta) gt/2} + theta [1 + e^{i theta gt}] }
//! ```
//!
//! The middle term carries the dark-state phase: `pref * 2 theta * X = e^{i alpha gt} / 2`
//! forces `X = exp(i (3 alpha + theta) gt / 2)`, with `gt` inside the exponent.
//! [`MiddleTerm`] keeps two wrong readings of that term around so the
//! validation gate can be shown to reject them.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Photon numbers of the two cavity modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockPair {
    pub n1: u32,
    pub n2: u32,
}

impl FockPair {
    pub const fn new(n1: u32, n2: u32) -> Self {
        FockPair { n1, n2 }
    }

    /// `|n, n>`, the only kind of field state the two-photon blocks reach.
    pub const fn diagonal(n: u32) -> Self {
        FockPair { n1: n, n2: n }
    }

    /// Shared occupation, or an error when the modes differ.
    pub fn equal_occupation(&self) -> Result<u32> {
        if self.n1 == self.n2 {
            Ok(self.n1)
        } else {
            Err(Error::UnequalOccupation {
                n1: self.n1,
                n2: self.n2,
            })
        }
    }
}

/// Dimensionless dipole strength `alpha = Omega / g` and scaled time `g t`
/// (with `hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
    gt: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, gt: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if !gt.is_finite() || gt < 0.0 {
            return Err(Error::InvalidParams(format!(
                "gt must be finite and >= 0, got {gt}"
            )));
        }
        Ok(ModelParams { alpha, gt })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gt(&self) -> f64 {
        self.gt
    }

    /// Same coupling, different time.
    pub fn at(&self, gt: f64) -> Result<Self> {
        ModelParams::new(self.alpha, gt)
    }
}

/// How the middle exponential of `U22`/`U23` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MiddleTerm {
    /// `exp(i (3 alpha + theta) gt / 2)`; reproduces `exp(-iHt)`.
    #[default]
    Derived,
    /// The unbalanced bracket closed before the time factor:
    /// `exp(i (3 alpha + theta) / 2) * gt`.
    BracketLiteral,
    /// `exp(-i (3 alpha + theta) gt / 2)`.
    SignFlipped,
}

/// `A`, `B`, `lambda` and `theta` evaluated on one `|n,n>` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarKernels {
    pub lambda: f64,
    pub theta: f64,
    pub a: Complex64,
    pub b: Complex64,
}

impl ScalarKernels {
    pub fn evaluate(fock: FockPair, params: ModelParams) -> Result<Self> {
        let n = fock.equal_occupation()?;
        Ok(Self::on_level(n, params))
    }

    pub(crate) fn on_level(n: u32, params: ModelParams) -> Self {
        let (lambda, theta) = lambda_theta_level(n, params.alpha);
        ScalarKernels {
            lambda,
            theta,
            a: kernel_a_level(theta, params),
            b: kernel_b_level(theta, params),
        }
    }

    /// `A / lambda`, the coefficient carried by the two-photon diagonal entries.
    pub fn a_over_lambda(&self) -> Complex64 {
        self.a / self.lambda
    }

    /// `B / theta`, the coefficient carried by the one-pair exchange entries.
    pub fn b_over_theta(&self) -> Complex64 {
        self.b / self.theta
    }
}

pub(crate) fn lambda_theta_level(n: u32, alpha: f64) -> (f64, f64) {
    let n = n as f64;
    let lambda = 2.0 * ((n + 1.0).powi(2) + n * n);
    (lambda, (4.0 * lambda + alpha * alpha).sqrt())
}

fn kernel_a_level(theta: f64, params: ModelParams) -> Complex64 {
    let (alpha, gt) = (params.alpha, params.gt);
    let half = 0.5 * theta * gt;
    let brace = Complex64::new(half.cos(), (alpha / theta) * half.sin());
    Complex64::from_polar(1.0, -0.5 * alpha * gt) * brace - 1.0
}

fn kernel_b_level(theta: f64, params: ModelParams) -> Complex64 {
    let (alpha, gt) = (params.alpha, params.gt);
    Complex64::from_polar(1.0, -0.5 * (alpha + theta) * gt)
        * (1.0 - Complex64::from_polar(1.0, theta * gt))
}

/// Fock-diagonal values of `lambda` and `theta`.
pub fn lambda_theta(fock: FockPair, alpha: f64) -> Result<(f64, f64)> {
    let n = fock.equal_occupation()?;
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidParams(format!(
            "alpha must be finite and >= 0, got {alpha}"
        )));
    }
    Ok(lambda_theta_level(n, alpha))
}

pub fn kernel_a(fock: FockPair, params: ModelParams) -> Result<Complex64> {
    Ok(ScalarKernels::evaluate(fock, params)?.a)
}

pub fn kernel_b(fock: FockPair, params: ModelParams) -> Result<Complex64> {
    Ok(ScalarKernels::evaluate(fock, params)?.b)
}

/// `(U22)_{n,n}` and `(U23)_{n,n}`.
pub fn u_diag_pair(fock: FockPair, params: ModelParams) -> Result<(Complex64, Complex64)> {
    u_diag_pair_with(fock, params, MiddleTerm::Derived)
}

pub fn u_diag_pair_with(
    fock: FockPair,
    params: ModelParams,
    middle: MiddleTerm,
) -> Result<(Complex64, Complex64)> {
    let n = fock.equal_occupation()?;
    Ok(u_diag_pair_level(n, params, middle))
}

pub(crate) fn u_diag_pair_level(
    n: u32,
    params: ModelParams,
    middle: MiddleTerm,
) -> (Complex64, Complex64) {
    let (alpha, gt) = (params.alpha, params.gt);
    let (_, theta) = lambda_theta_level(n, alpha);
    let rot = Complex64::from_polar(1.0, theta * gt);
    let prefactor = Complex64::from_polar(1.0, -0.5 * (alpha + theta) * gt) / (4.0 * theta);
    let phase = 0.5 * (3.0 * alpha + theta);
    let mid = 2.0
        * theta
        * match middle {
            MiddleTerm::Derived => (I * phase * gt).exp(),
            MiddleTerm::BracketLiteral => (I * phase).exp() * gt,
            MiddleTerm::SignFlipped => (-I * phase * gt).exp(),
        };
    let common = alpha * (1.0 - rot) + theta * (1.0 + rot);
    (prefactor * (common + mid), prefactor * (common - mid))
}
