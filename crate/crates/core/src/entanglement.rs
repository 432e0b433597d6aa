//! Reduced two-atom states, concurrence and sudden-death windows.

// negated comparisons reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::dynamics::{evolve, AmplitudeVector, Family, WStateSpec, AMP_NORM_TOL};
use crate::error::{Error, Result};
use crate::kernels::ModelParams;

pub type CMatrix4 = Matrix4<Complex64>;

/// Concurrence at or below this value counts as zero.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-9;
/// Shortest zero run reported as a death window, in `gt` units.
pub const DEFAULT_MIN_WINDOW: f64 = 0.05;
/// Precision of refined window endpoints.
pub const ENDPOINT_TOL: f64 = 1e-6;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Two-atom density matrix in the `PP, PM, MP, MM` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicDensityMatrix {
    matrix: CMatrix4,
}

impl AtomicDensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(matrix: CMatrix4) -> Result<Self> {
        let herm = (matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if !(herm <= HERMITIAN_TOL) {
            return Err(Error::NotADensityMatrix(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let trace = matrix.trace();
        if !((trace - 1.0).norm() <= TRACE_TOL) {
            return Err(Error::NotADensityMatrix(format!("trace is {trace}")));
        }
        let min_eig = SymmetricEigen::new(matrix).eigenvalues.min();
        if min_eig < -PSD_TOL {
            return Err(Error::NotADensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(AtomicDensityMatrix { matrix })
    }

    pub fn matrix(&self) -> &CMatrix4 {
        &self.matrix
    }

    /// Entry by atomic-state indices.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }
}

/// Traces the field out of a pure block state.
pub fn reduced_density(amps: &AmplitudeVector) -> Result<AtomicDensityMatrix> {
    let norm_sq = amps.norm_sqr();
    if (norm_sq - 1.0).abs() > AMP_NORM_TOL {
        return Err(Error::Unnormalized { norm_sq });
    }
    let labels = amps.basis().labels();
    let x = amps.amps();
    let mut rho = CMatrix4::zeros();
    for (k, (sk, fk)) in labels.iter().enumerate() {
        for (l, (sl, fl)) in labels.iter().enumerate() {
            if fk == fl {
                rho[(sk.index(), sl.index())] += x[k] * x[l].conj();
            }
        }
    }
    AtomicDensityMatrix::new(rho)
}

/// Closed-form concurrence of the X-shaped reduced states:
/// `2|X1 X2|` for family 1 and `2 max(0, |X2 X3| - |X1 X4|)` for family 2.
pub fn concurrence_xstate(amps: &AmplitudeVector) -> Result<f64> {
    let x = amps.amps();
    let c = match amps.basis().family() {
        Some(Family::Family1) => 2.0 * (x[0] * x[1]).norm(),
        Some(Family::Family2) => 2.0 * ((x[1] * x[2]).norm() - (x[0] * x[3]).norm()).max(0.0),
        None => return Err(Error::UnknownFamily),
    };
    Ok(c.min(1.0))
}

fn spin_flip() -> CMatrix4 {
    // sigma_y (x) sigma_y
    let mut y = CMatrix4::zeros();
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

fn hermitian_sqrt(m: &CMatrix4) -> CMatrix4 {
    let eig = SymmetricEigen::new(*m);
    let roots = eig
        .eigenvalues
        .map(|e| Complex64::new(e.max(0.0).sqrt(), 0.0));
    let v = eig.eigenvectors;
    v * CMatrix4::from_diagonal(&roots) * v.adjoint()
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
///
/// The `l_i` are the square roots of the eigenvalues of
/// `sqrt(rho) Y rho* Y sqrt(rho)`, which are the singular values of
/// `sqrt(rho) Y sqrt(rho)*`. Taking singular values directly avoids the square
/// root of eigenvalues that are zero up to rounding.
pub fn concurrence_wootters(rho: &AtomicDensityMatrix) -> f64 {
    let root = hermitian_sqrt(&rho.matrix);
    let m = root * spin_flip() * root.conjugate();
    let mut l: Vec<f64> = m.singular_values().iter().copied().collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0)
}

/// Validates `matrix` and returns its Wootters concurrence.
pub fn concurrence_wootters_matrix(matrix: CMatrix4) -> Result<f64> {
    Ok(concurrence_wootters(&AtomicDensityMatrix::new(matrix)?))
}

/// Concurrence sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceSeries {
    gts: Vec<f64>,
    values: Vec<f64>,
}

impl ConcurrenceSeries {
    pub fn new(gts: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if gts.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} times but {} concurrence values",
                gts.len(),
                values.len()
            )));
        }
        if gts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "times must be strictly increasing".into(),
            ));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidArgument(format!(
                "concurrence {v} outside [0, 1]"
            )));
        }
        Ok(ConcurrenceSeries { gts, values })
    }

    pub fn gts(&self) -> &[f64] {
        &self.gts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.gts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gts.is_empty()
    }

    /// Trapezoidal time average over the sampled span.
    pub fn time_average(&self) -> Result<f64> {
        match self.len() {
            0 => Err(Error::EmptySeries),
            1 => Ok(self.values[0]),
            _ => {
                let span = self.gts[self.len() - 1] - self.gts[0];
                let area: f64 = self
                    .gts
                    .windows(2)
                    .zip(self.values.windows(2))
                    .map(|(t, c)| 0.5 * (t[1] - t[0]) * (c[0] + c[1]))
                    .sum();
                Ok(area / span)
            }
        }
    }
}

/// Evolves `spec` over `grid`, returning every amplitude vector.
pub fn sample_amplitudes(
    spec: &WStateSpec,
    alpha: f64,
    grid: &[f64],
) -> Result<Vec<AmplitudeVector>> {
    grid.iter()
        .map(|&gt| evolve(spec, ModelParams::new(alpha, gt)?))
        .collect()
}

pub fn concurrence_series(
    spec: &WStateSpec,
    alpha: f64,
    grid: &[f64],
) -> Result<ConcurrenceSeries> {
    let values = sample_amplitudes(spec, alpha, grid)?
        .iter()
        .map(concurrence_xstate)
        .collect::<Result<Vec<_>>>()?;
    ConcurrenceSeries::new(grid.to_vec(), values)
}

/// Maximal intervals on which the concurrence stays at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EsdReport {
    pub windows: Vec<(f64, f64)>,
    pub zero_threshold: f64,
    pub min_window: f64,
}

impl EsdReport {
    pub fn count(&self) -> usize {
        self.windows.len()
    }

    pub fn total_dark_time(&self) -> f64 {
        self.windows.iter().fold(0.0, |acc, (a, b)| acc + (b - a))
    }
}

/// Death windows with endpoints at sample times.
pub fn scan_esd(
    series: &ConcurrenceSeries,
    zero_threshold: f64,
    min_window: f64,
) -> Result<EsdReport> {
    scan(series, zero_threshold, min_window, None::<fn(f64) -> f64>)
}

/// Death windows with endpoints bisected on `concurrence(gt)` to [`ENDPOINT_TOL`].
pub fn scan_esd_refined<F>(
    series: &ConcurrenceSeries,
    zero_threshold: f64,
    min_window: f64,
    concurrence: F,
) -> Result<EsdReport>
where
    F: Fn(f64) -> f64,
{
    scan(series, zero_threshold, min_window, Some(concurrence))
}

fn scan<F: Fn(f64) -> f64>(
    series: &ConcurrenceSeries,
    zero_threshold: f64,
    min_window: f64,
    concurrence: Option<F>,
) -> Result<EsdReport> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    if !(zero_threshold > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "zero threshold must be positive, got {zero_threshold}"
        )));
    }
    let gts = series.gts();
    let spacing = gts.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    if !(min_window >= spacing * (1.0 - 1e-9)) {
        return Err(Error::InvalidArgument(format!(
            "min window {min_window} is below the grid spacing {spacing}"
        )));
    }

    let is_zero = |c: f64| c <= zero_threshold;
    // first time with zero concurrence between a live sample and a dead one
    let boundary = |mut live: f64, mut dead: f64, f: &F| {
        while (dead - live).abs() > 0.1 * ENDPOINT_TOL {
            let mid = 0.5 * (live + dead);
            if is_zero(f(mid)) {
                dead = mid;
            } else {
                live = mid;
            }
        }
        dead
    };

    let values = series.values();
    let last = values.len() - 1;
    let mut windows = Vec::new();
    let mut i = 0;
    while i <= last {
        if !is_zero(values[i]) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < last && is_zero(values[j + 1]) {
            j += 1;
        }
        let (mut start, mut end) = (gts[i], gts[j]);
        if let Some(f) = &concurrence {
            if i > 0 {
                start = boundary(gts[i - 1], gts[i], f);
            }
            if j < last {
                end = boundary(gts[j + 1], gts[j], f);
            }
        }
        if end - start >= min_window {
            windows.push((start, end));
        }
        i = j + 1;
    }
    Ok(EsdReport {
        windows,
        zero_threshold,
        min_window,
    })
}

/// Series and refined death windows for one initial state and dipole strength.
pub fn scan_state(
    spec: &WStateSpec,
    alpha: f64,
    grid: &[f64],
    zero_threshold: f64,
    min_window: f64,
) -> Result<(ConcurrenceSeries, EsdReport)> {
    let series = concurrence_series(spec, alpha, grid)?;
    let analytic = |gt: f64| {
        ModelParams::new(alpha, gt)
            .and_then(|p| evolve(spec, p))
            .and_then(|x| concurrence_xstate(&x))
            .unwrap_or(f64::NAN)
    };
    let report = scan_esd_refined(&series, zero_threshold, min_window, analytic)?;
    Ok((series, report))
}
