use crate::error::{Error, Result};

/// `steps` evenly spaced points on `[start, end]`, endpoints included.
pub fn uniform(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if !(start.is_finite() && end.is_finite()) || end < start {
        return Err(Error::InvalidArgument(format!(
            "grid bounds must be finite with end >= start, got [{start}, {end}]"
        )));
    }
    match steps {
        0 => Err(Error::InvalidArgument(
            "grid needs at least one point".into(),
        )),
        1 => Ok(vec![start]),
        _ => {
            let span = end - start;
            let last = (steps - 1) as f64;
            Ok((0..steps)
                .map(|i| start + span * (i as f64) / last)
                .collect())
        }
    }
}

/// Inclusive range `start:end:step`, computed by index so that endpoints are exact.
pub fn inclusive_range(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && end.is_finite() && step.is_finite()) {
        return Err(Error::InvalidArgument("range values must be finite".into()));
    }
    if end < start {
        return Err(Error::InvalidArgument(format!(
            "range end {end} is below start {start}"
        )));
    }
    if end == start {
        return Ok(vec![start]);
    }
    if step <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "range step must be positive, got {step}"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| start + step * i as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_hits_both_endpoints() {
        let g = uniform(0.0, 25.0, 2001).unwrap();
        assert_eq!(g.len(), 2001);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[2000], 25.0);
        assert!((g[1] - 0.0125).abs() < 1e-15);
    }

    #[test]
    fn uniform_rejects_empty() {
        assert!(uniform(0.0, 1.0, 0).is_err());
        assert_eq!(uniform(2.0, 2.0, 1).unwrap(), vec![2.0]);
    }

    #[test]
    fn inclusive_range_counts() {
        assert_eq!(inclusive_range(0.0, 6.0, 1.0).unwrap().len(), 7);
        assert_eq!(inclusive_range(0.0, 1.0, 0.3).unwrap().len(), 4);
        assert_eq!(inclusive_range(3.0, 3.0, 0.0).unwrap(), vec![3.0]);
        assert!(inclusive_range(0.0, 1.0, -1.0).is_err());
    }
}
