//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Coefficients arrive as raw real weights from sliders and are normalized
//! here. All exported functions return flat `Float64Array`s.

use tavis_core::dynamics::{Family, WStateSpec};
use tavis_core::entanglement::{concurrence_series, scan_state};
use tavis_core::{grid, oracle, Complex64};
use wasm_bindgen::prelude::*;

/// Plain-Rust implementations behind the exported functions.
pub mod demo {
    use super::*;

    pub fn spec(family: u8, a: f64, b: f64, c: f64) -> Result<WStateSpec, String> {
        let family = Family::from_number(family).map_err(|e| e.to_string())?;
        let norm = (a * a + b * b + c * c).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err("at least one coefficient must be non-zero".into());
        }
        let coeffs = [a, b, c].map(|x| Complex64::new(x / norm, 0.0));
        WStateSpec::new(family, coeffs[0], coeffs[1], coeffs[2]).map_err(|e| e.to_string())
    }

    pub fn time_grid(gt_max: f64, steps: usize) -> Result<Vec<f64>, String> {
        grid::uniform(0.0, gt_max, steps).map_err(|e| e.to_string())
    }

    pub fn curve(
        family: u8,
        coeffs: [f64; 3],
        alpha: f64,
        gt_max: f64,
        steps: usize,
    ) -> Result<Vec<f64>, String> {
        let s = spec(family, coeffs[0], coeffs[1], coeffs[2])?;
        let g = time_grid(gt_max, steps)?;
        let series = concurrence_series(&s, alpha, &g).map_err(|e| e.to_string())?;
        Ok(series.values().to_vec())
    }

    pub fn windows(
        family: u8,
        coeffs: [f64; 3],
        alpha: f64,
        gt_max: f64,
        steps: usize,
        zero_threshold: f64,
        min_window: f64,
    ) -> Result<Vec<f64>, String> {
        let s = spec(family, coeffs[0], coeffs[1], coeffs[2])?;
        let g = time_grid(gt_max, steps)?;
        let (_, report) =
            scan_state(&s, alpha, &g, zero_threshold, min_window).map_err(|e| e.to_string())?;
        Ok(report.windows.iter().flat_map(|&(a, b)| [a, b]).collect())
    }

    /// Rows of `[alpha, n_windows, total_dark_time, mean_concurrence]`, flattened.
    #[allow(clippy::too_many_arguments)]
    pub fn sweep(
        family: u8,
        coeffs: [f64; 3],
        alpha_max: f64,
        alpha_step: f64,
        gt_max: f64,
        steps: usize,
        zero_threshold: f64,
        min_window: f64,
    ) -> Result<Vec<f64>, String> {
        let s = spec(family, coeffs[0], coeffs[1], coeffs[2])?;
        let g = time_grid(gt_max, steps)?;
        let alphas =
            grid::inclusive_range(0.0, alpha_max, alpha_step).map_err(|e| e.to_string())?;
        let mut out = Vec::with_capacity(4 * alphas.len());
        for alpha in alphas {
            let (series, report) =
                scan_state(&s, alpha, &g, zero_threshold, min_window).map_err(|e| e.to_string())?;
            let mean = series.time_average().map_err(|e| e.to_string())?;
            out.extend([alpha, report.count() as f64, report.total_dark_time(), mean]);
        }
        Ok(out)
    }

    pub fn deviation(family: u8, alpha: f64, gt_max: f64, points: usize) -> Result<f64, String> {
        let family = Family::from_number(family).map_err(|e| e.to_string())?;
        let g = time_grid(gt_max, points)?;
        oracle::validate_analytic(family, alpha, &g).map_err(|e| e.to_string())
    }
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// Concurrence on `steps` uniform points of `[0, gt_max]`.
#[wasm_bindgen(js_name = concurrenceCurve)]
pub fn concurrence_curve(
    family: u8,
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
    gt_max: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    demo::curve(family, [a, b, c], alpha, gt_max, steps).map_err(js)
}

/// Death windows as `[start0, end0, start1, end1, ...]`.
#[wasm_bindgen(js_name = deathWindows)]
#[allow(clippy::too_many_arguments)]
pub fn death_windows(
    family: u8,
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
    gt_max: f64,
    steps: usize,
    zero_threshold: f64,
    min_window: f64,
) -> Result<Vec<f64>, JsError> {
    demo::windows(
        family,
        [a, b, c],
        alpha,
        gt_max,
        steps,
        zero_threshold,
        min_window,
    )
    .map_err(js)
}

#[wasm_bindgen(js_name = alphaSweep)]
#[allow(clippy::too_many_arguments)]
pub fn alpha_sweep(
    family: u8,
    a: f64,
    b: f64,
    c: f64,
    alpha_max: f64,
    alpha_step: f64,
    gt_max: f64,
    steps: usize,
    zero_threshold: f64,
    min_window: f64,
) -> Result<Vec<f64>, JsError> {
    demo::sweep(
        family,
        [a, b, c],
        alpha_max,
        alpha_step,
        gt_max,
        steps,
        zero_threshold,
        min_window,
    )
    .map_err(js)
}

/// Largest `|U_analytic - exp(-iH gt)|` over `points` times.
#[wasm_bindgen(js_name = oracleDeviation)]
pub fn oracle_deviation(
    family: u8,
    alpha: f64,
    gt_max: f64,
    points: usize,
) -> Result<f64, JsError> {
    demo::deviation(family, alpha, gt_max, points).map_err(js)
}
