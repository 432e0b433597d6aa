//! Brute-force reference propagator.
//!
//! The interaction Hamiltonian (in units of `hbar g`)
//!
//! ```text
//! H = sum_i (a1+ a2+ R_i- + R_i+ a1 a2) + alpha (R_1+ R_2- + R_2+ R_1-)
//! ```
//!
//! is evaluated label by label on an invariant block using explicit ladder
//! matrix elements, and `exp(-i H gt)` comes from a real symmetric
//! eigendecomposition. Nothing here touches the closed-form kernels.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::dynamics::{analytic_block_u_with, block_basis, BlockBasis, CMatrix, Family};
use crate::error::{Error, Result};
use crate::kernels::{FockPair, MiddleTerm, ModelParams};
use crate::AtomicState;

/// Tolerance the analytic propagators must meet against the oracle.
pub const ORACLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockHamiltonian {
    pub basis: BlockBasis,
    pub matrix: DMatrix<f64>,
    pub alpha: f64,
}

fn atoms(s: AtomicState) -> [bool; 2] {
    match s {
        AtomicState::PP => [true, true],
        AtomicState::PM => [true, false],
        AtomicState::MP => [false, true],
        AtomicState::MM => [false, false],
    }
}

fn from_atoms(a: [bool; 2]) -> AtomicState {
    match a {
        [true, true] => AtomicState::PP,
        [true, false] => AtomicState::PM,
        [false, true] => AtomicState::MP,
        [false, false] => AtomicState::MM,
    }
}

/// `H |s; n1, n2>` as a list of `(coefficient, label)` terms.
fn apply_hamiltonian(
    (s, f): (AtomicState, FockPair),
    alpha: f64,
) -> Vec<(f64, (AtomicState, FockPair))> {
    let mut out = Vec::new();
    let exc = atoms(s);
    for i in 0..2 {
        let mut flipped = exc;
        flipped[i] = !exc[i];
        if exc[i] {
            // a1+ a2+ R_i-
            let amp = ((f.n1 + 1) as f64).sqrt() * ((f.n2 + 1) as f64).sqrt();
            out.push((
                amp,
                (from_atoms(flipped), FockPair::new(f.n1 + 1, f.n2 + 1)),
            ));
        } else if f.n1 > 0 && f.n2 > 0 {
            // R_i+ a1 a2
            let amp = (f.n1 as f64).sqrt() * (f.n2 as f64).sqrt();
            out.push((
                amp,
                (from_atoms(flipped), FockPair::new(f.n1 - 1, f.n2 - 1)),
            ));
        }
    }
    // dipole exchange
    if exc[0] != exc[1] {
        out.push((alpha, (from_atoms([exc[1], exc[0]]), f)));
    }
    out
}

pub fn build_hamiltonian(family: Family, alpha: f64) -> Result<BlockHamiltonian> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidParams(format!(
            "alpha must be finite and >= 0, got {alpha}"
        )));
    }
    let basis = block_basis(family);
    let labels = basis.labels();
    let dim = labels.len();
    let mut matrix = DMatrix::<f64>::zeros(dim, dim);
    for (j, &label) in labels.iter().enumerate() {
        for (amp, target) in apply_hamiltonian(label, alpha) {
            match labels.iter().position(|&l| l == target) {
                Some(i) => matrix[(i, j)] += amp,
                None if amp != 0.0 => {
                    return Err(Error::InvalidBasis(format!(
                        "block is not invariant: |{};{},{}> leaks",
                        target.0, target.1.n1, target.1.n2
                    )))
                }
                None => {}
            }
        }
    }
    Ok(BlockHamiltonian {
        basis,
        matrix,
        alpha,
    })
}

/// `exp(-i H gt)` via `H = V diag(e) V^T`.
pub fn oracle_u(ham: &BlockHamiltonian, gt: f64) -> Result<CMatrix> {
    if !gt.is_finite() || gt < 0.0 {
        return Err(Error::InvalidParams(format!(
            "gt must be finite and >= 0, got {gt}"
        )));
    }
    let dim = ham.matrix.nrows();
    if gt == 0.0 {
        return Ok(CMatrix::identity(dim, dim));
    }
    let eig = SymmetricEigen::new(ham.matrix.clone());
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        eig.eigenvalues
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * gt)),
    ));
    Ok(&v * phases * v.transpose())
}

/// Largest entrywise `|analytic - oracle|` over the grid.
pub fn validate_analytic(family: Family, alpha: f64, grid: &[f64]) -> Result<f64> {
    validate_analytic_with(family, alpha, grid, MiddleTerm::Derived)
}

pub fn validate_analytic_with(
    family: Family,
    alpha: f64,
    grid: &[f64],
    middle: MiddleTerm,
) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("validation grid is empty".into()));
    }
    let ham = build_hamiltonian(family, alpha)?;
    let mut worst = 0.0f64;
    for &gt in grid {
        let exact = oracle_u(&ham, gt)?;
        let analytic = analytic_block_u_with(family, ModelParams::new(alpha, gt)?, middle);
        let dev = (analytic - exact)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Truncated two-mode Fock space, used to cross-check the block builder.
pub mod fock {
    use nalgebra::DMatrix;

    use crate::dynamics::BlockBasis;
    use crate::AtomicState;

    /// Index of `|n1, n2>` with `cutoff` photons per mode at most.
    pub fn two_mode_index(cutoff: usize, n1: usize, n2: usize) -> usize {
        n1 * (cutoff + 1) + n2
    }

    fn single_mode_annihilator(cutoff: usize) -> DMatrix<f64> {
        let d = cutoff + 1;
        DMatrix::from_fn(
            d,
            d,
            |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 },
        )
    }

    /// `a_1` (`mode = 0`) or `a_2` (`mode = 1`) on the two-mode space.
    pub fn mode_annihilator(cutoff: usize, mode: usize) -> DMatrix<f64> {
        let a = single_mode_annihilator(cutoff);
        let id = DMatrix::<f64>::identity(cutoff + 1, cutoff + 1);
        match mode {
            0 => a.kronecker(&id),
            1 => id.kronecker(&a),
            _ => panic!("only two modes"),
        }
    }

    /// `R_i+` for atom `i` on the `PP, PM, MP, MM` basis.
    fn raising(atom: usize) -> DMatrix<f64> {
        let sp = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let id = DMatrix::<f64>::identity(2, 2);
        match atom {
            0 => sp.kronecker(&id),
            _ => id.kronecker(&sp),
        }
    }

    /// Full Hamiltonian on `4 * (cutoff+1)^2` states, atomic index major.
    pub fn truncated_hamiltonian(alpha: f64, cutoff: usize) -> DMatrix<f64> {
        let a1 = mode_annihilator(cutoff, 0);
        let a2 = mode_annihilator(cutoff, 1);
        let pair_down = &a1 * &a2;
        let pair_up = pair_down.transpose();
        let field_dim = (cutoff + 1) * (cutoff + 1);
        let mut h = DMatrix::<f64>::zeros(4 * field_dim, 4 * field_dim);
        for atom in 0..2 {
            let up = raising(atom);
            let down = up.transpose();
            h += down.kronecker(&pair_up) + up.kronecker(&pair_down);
        }
        let exchange = raising(0) * raising(1).transpose() + raising(1) * raising(0).transpose();
        h += (exchange * alpha).kronecker(&DMatrix::<f64>::identity(field_dim, field_dim));
        h
    }

    pub fn full_index(cutoff: usize, s: AtomicState, n1: usize, n2: usize) -> usize {
        s.index() * (cutoff + 1) * (cutoff + 1) + two_mode_index(cutoff, n1, n2)
    }

    /// Rows and columns of `h` belonging to `basis`.
    pub fn restrict(h: &DMatrix<f64>, cutoff: usize, basis: &BlockBasis) -> DMatrix<f64> {
        let idx: Vec<usize> = basis
            .labels()
            .iter()
            .map(|(s, f)| full_index(cutoff, *s, f.n1 as usize, f.n2 as usize))
            .collect();
        DMatrix::from_fn(idx.len(), idx.len(), |i, j| h[(idx[i], idx[j])])
    }
}
