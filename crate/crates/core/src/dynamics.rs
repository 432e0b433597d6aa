//! Invariant blocks, analytic block propagators and the evolution of the two
//! W-like initial-state families.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{u_diag_pair_level, FockPair, MiddleTerm, ModelParams, ScalarKernels};

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance on `|a|^2 + |b|^2 + |c|^2 = 1` for initial coefficients.
pub const SPEC_NORM_TOL: f64 = 1e-12;
/// Tolerance on the norm of evolved amplitude vectors.
pub const AMP_NORM_TOL: f64 = 1e-10;

/// Two-atom basis state, `P` for excited (`+`) and `M` for ground (`-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomicState {
    PP,
    PM,
    MP,
    MM,
}

impl AtomicState {
    pub const ALL: [AtomicState; 4] = [
        AtomicState::PP,
        AtomicState::PM,
        AtomicState::MP,
        AtomicState::MM,
    ];

    /// Position in the fixed `PP, PM, MP, MM` ordering.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn excited_atoms(self) -> u32 {
        match self {
            AtomicState::PP => 2,
            AtomicState::PM | AtomicState::MP => 1,
            AtomicState::MM => 0,
        }
    }
}

impl fmt::Display for AtomicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AtomicState::PP => "+,+",
            AtomicState::PM => "+,-",
            AtomicState::MP => "-,+",
            AtomicState::MM => "-,-",
        };
        f.write_str(s)
    }
}

/// The two initial-state families.
///
/// * `Family1`: `a|+,-;0,0> + b|-,+;0,0> + c|-,-;1,1>`
/// * `Family2`: `a|+,+;0,0> + b|+,-;1,1> + c|-,+;1,1>`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Family1,
    Family2,
}

impl Family {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Family::Family1),
            2 => Ok(Family::Family2),
            _ => Err(Error::InvalidArgument(format!(
                "family must be 1 or 2, got {n}"
            ))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Family::Family1 => 1,
            Family::Family2 => 2,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Family::Family1 => 3,
            Family::Family2 => 4,
        }
    }
}

/// Ordered labels `(atomic state, field state)` spanning one invariant subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockBasis {
    labels: Vec<(AtomicState, FockPair)>,
}

impl BlockBasis {
    /// Checks that the labels are distinct, use equal mode occupations and
    /// share one excitation number `n + (excited atoms)`.
    pub fn from_labels(labels: Vec<(AtomicState, FockPair)>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidBasis("no labels".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidBasis(format!(
                    "duplicate label |{};{},{}>",
                    l.0, l.1.n1, l.1.n2
                )));
            }
            l.1.equal_occupation()?;
        }
        let excitation = |(s, f): &(AtomicState, FockPair)| f.n1 + s.excited_atoms();
        let first = excitation(&labels[0]);
        if labels.iter().any(|l| excitation(l) != first) {
            return Err(Error::InvalidBasis("labels mix excitation numbers".into()));
        }
        Ok(BlockBasis { labels })
    }

    pub fn labels(&self) -> &[(AtomicState, FockPair)] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Conserved `n + (excited atoms)` shared by every label.
    pub fn excitation_number(&self) -> u32 {
        let (s, f) = self.labels[0];
        f.n1 + s.excited_atoms()
    }

    /// Which family this basis belongs to, if any.
    pub fn family(&self) -> Option<Family> {
        [Family::Family1, Family::Family2]
            .into_iter()
            .find(|&f| block_basis(f) == *self)
    }
}

pub fn block_basis(family: Family) -> BlockBasis {
    use AtomicState::*;
    let labels = match family {
        Family::Family1 => vec![
            (PM, FockPair::diagonal(0)),
            (MP, FockPair::diagonal(0)),
            (MM, FockPair::diagonal(1)),
        ],
        Family::Family2 => vec![
            (PP, FockPair::diagonal(0)),
            (PM, FockPair::diagonal(1)),
            (MP, FockPair::diagonal(1)),
            (MM, FockPair::diagonal(2)),
        ],
    };
    BlockBasis { labels }
}

/// Normalized initial state of one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WStateSpec {
    family: Family,
    coeffs: [Complex64; 3],
}

impl WStateSpec {
    pub fn new(family: Family, a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let norm_sq = a.norm_sqr() + b.norm_sqr() + c.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > SPEC_NORM_TOL {
            return Err(Error::Unnormalized { norm_sq });
        }
        Ok(WStateSpec {
            family,
            coeffs: [a, b, c],
        })
    }

    pub fn real(family: Family, a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(family, a.into(), b.into(), c.into())
    }

    /// Rescales the coefficients when their squared norm is within `tolerance`
    /// of one. Returns the spec and the original deviation `|norm^2 - 1|`.
    pub fn normalizing(
        family: Family,
        coeffs: [Complex64; 3],
        tolerance: f64,
    ) -> Result<(Self, f64)> {
        let norm_sq: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if !norm_sq.is_finite() || deviation > tolerance || norm_sq == 0.0 {
            return Err(Error::Unnormalized { norm_sq });
        }
        let scale = norm_sq.sqrt();
        let [a, b, c] = coeffs.map(|z| z / scale);
        Ok((Self::new(family, a, b, c)?, deviation))
    }

    /// `a = b = c = 1/sqrt(3)`.
    pub fn equal_weights(family: Family) -> Self {
        let w = Complex64::from(1.0 / 3f64.sqrt());
        WStateSpec {
            family,
            coeffs: [w, w, w],
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn coeffs(&self) -> [Complex64; 3] {
        self.coeffs
    }

    /// Initial amplitudes in block-basis order.
    pub fn initial_vector(&self) -> DVector<Complex64> {
        let [a, b, c] = self.coeffs;
        match self.family {
            Family::Family1 => DVector::from_vec(vec![a, b, c]),
            Family::Family2 => DVector::from_vec(vec![a, b, c, Complex64::new(0.0, 0.0)]),
        }
    }
}

/// Evolved amplitudes `X_i` with their labels.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    basis: BlockBasis,
    amps: Vec<Complex64>,
    gt: f64,
}

impl AmplitudeVector {
    pub fn new(basis: BlockBasis, amps: Vec<Complex64>, gt: f64) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for a {}-dimensional basis",
                amps.len(),
                basis.dim()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > AMP_NORM_TOL {
            return Err(Error::Unnormalized { norm_sq });
        }
        Ok(AmplitudeVector { basis, amps, gt })
    }

    pub fn basis(&self) -> &BlockBasis {
        &self.basis
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn gt(&self) -> f64 {
        self.gt
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Analytic block propagator; column `j` is the evolved `j`-th basis vector.
pub fn analytic_block_u(family: Family, params: ModelParams) -> CMatrix {
    analytic_block_u_with(family, params, MiddleTerm::Derived)
}

pub fn analytic_block_u_with(family: Family, params: ModelParams, middle: MiddleTerm) -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    match family {
        Family::Family1 => {
            let k = ScalarKernels::on_level(0, params);
            let (u22, u23) = u_diag_pair_level(0, params, middle);
            let bt = k.b_over_theta();
            let dd = one + 2.0 * k.a_over_lambda();
            CMatrix::from_row_slice(3, 3, &[u22, u23, bt, u23, u22, bt, bt, bt, dd])
        }
        Family::Family2 => {
            let k = ScalarKernels::on_level(1, params);
            let (u22, u23) = u_diag_pair_level(1, params, middle);
            let bt = k.b_over_theta();
            let al = k.a_over_lambda();
            #[rustfmt::skip]
            let entries = [
                one + 2.0 * al, bt,        bt,        4.0 * al,
                bt,             u22,       u23,       2.0 * bt,
                bt,             u23,       u22,       2.0 * bt,
                4.0 * al,       2.0 * bt,  2.0 * bt,  one + 8.0 * al,
            ];
            CMatrix::from_row_slice(4, 4, &entries)
        }
    }
}

pub fn evolve(spec: &WStateSpec, params: ModelParams) -> Result<AmplitudeVector> {
    evolve_with(spec, params, MiddleTerm::Derived)
}

pub fn evolve_with(
    spec: &WStateSpec,
    params: ModelParams,
    middle: MiddleTerm,
) -> Result<AmplitudeVector> {
    let u = analytic_block_u_with(spec.family, params, middle);
    let x = u * spec.initial_vector();
    AmplitudeVector::new(
        block_basis(spec.family),
        x.iter().copied().collect(),
        params.gt(),
    )
}

/// Amplitudes written out one by one from the closed-form `X_i` expressions,
/// kept as an independent transcription of the block products in [`evolve`].
pub fn amplitudes_by_formula(spec: &WStateSpec, params: ModelParams) -> Vec<Complex64> {
    let [a, b, c] = spec.coeffs;
    let one = Complex64::new(1.0, 0.0);
    match spec.family {
        Family::Family1 => {
            let k = ScalarKernels::on_level(0, params);
            let (u22, u23) = u_diag_pair_level(0, params, MiddleTerm::Derived);
            let bt = k.b / k.theta;
            vec![
                u22 * a + u23 * b + bt * c,
                u23 * a + u22 * b + bt * c,
                bt * a + bt * b + (one + 2.0 * k.a / k.lambda) * c,
            ]
        }
        Family::Family2 => {
            let k = ScalarKernels::on_level(1, params);
            let (u22, u23) = u_diag_pair_level(1, params, MiddleTerm::Derived);
            let bt = k.b / k.theta;
            let al = k.a / k.lambda;
            vec![
                (one + 2.0 * al) * a + bt * b + bt * c,
                bt * a + u22 * b + u23 * c,
                bt * a + u23 * b + u22 * c,
                4.0 * al * a + 2.0 * bt * b + 2.0 * bt * c,
            ]
        }
    }
}

/// Largest entry modulus of `U U^dagger - 1`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let prod = u * u.adjoint();
    let id = CMatrix::identity(u.nrows(), u.ncols());
    (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use AtomicState::*;

    fn p(alpha: f64, gt: f64) -> ModelParams {
        ModelParams::new(alpha, gt).unwrap()
    }

    fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn fixed_bases() {
        let b1 = block_basis(Family::Family1);
        assert_eq!(
            b1.labels(),
            &[
                (PM, FockPair::diagonal(0)),
                (MP, FockPair::diagonal(0)),
                (MM, FockPair::diagonal(1))
            ]
        );
        let b2 = block_basis(Family::Family2);
        assert_eq!(
            b2.labels(),
            &[
                (PP, FockPair::diagonal(0)),
                (PM, FockPair::diagonal(1)),
                (MP, FockPair::diagonal(1)),
                (MM, FockPair::diagonal(2))
            ]
        );
        assert_eq!(b1.excitation_number(), 1);
        assert_eq!(b2.excitation_number(), 2);
        for b in [b1, b2] {
            let rebuilt = BlockBasis::from_labels(b.labels().to_vec()).unwrap();
            assert_eq!(rebuilt, b);
        }
        assert_eq!(block_basis(Family::Family2).family(), Some(Family::Family2));
    }

    #[test]
    fn basis_validation() {
        let dup = vec![(PM, FockPair::diagonal(0)), (PM, FockPair::diagonal(0))];
        assert!(BlockBasis::from_labels(dup).is_err());
        let mixed = vec![(PM, FockPair::diagonal(0)), (MM, FockPair::diagonal(0))];
        assert!(BlockBasis::from_labels(mixed).is_err());
        let unequal = vec![(PM, FockPair::new(1, 0))];
        assert!(matches!(
            BlockBasis::from_labels(unequal),
            Err(Error::UnequalOccupation { .. })
        ));
        let partial = BlockBasis::from_labels(vec![(PM, FockPair::diagonal(0))]).unwrap();
        assert_eq!(partial.family(), None);
    }

    #[test]
    fn spec_normalization() {
        assert!(WStateSpec::real(Family::Family1, 1.0, 1.0, 0.0).is_err());
        assert!(WStateSpec::real(Family::Family1, 1.0, 0.0, 0.0).is_ok());
        let s = 1.0 / 3f64.sqrt();
        let (spec, dev) =
            WStateSpec::normalizing(Family::Family2, [c(0.57735), c(0.57735), c(0.57735)], 1e-4)
                .unwrap();
        assert!(dev > 0.0 && dev < 1e-4);
        assert!((spec.coeffs()[0].re - s).abs() < 1e-12);
        assert!(WStateSpec::normalizing(Family::Family2, [c(0.5), c(0.5), c(0.5)], 1e-6).is_err());
    }

    #[test]
    fn identity_at_time_zero() {
        for family in [Family::Family1, Family::Family2] {
            let u = analytic_block_u(family, p(3.0, 0.0));
            let id = CMatrix::identity(family.dim(), family.dim());
            assert!(max_diff(&u, &id) < 1e-15);
            let spec = WStateSpec::new(family, c(0.6), Complex64::new(0.0, 0.48), c(0.64)).unwrap();
            let x = evolve(&spec, p(3.0, 0.0)).unwrap();
            let init = spec.initial_vector();
            for (xi, yi) in x.amps().iter().zip(init.iter()) {
                assert!((xi - yi).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn antisymmetric_state_decouples_without_dipole() {
        let h = 1.0 / 2f64.sqrt();
        let spec = WStateSpec::real(Family::Family1, h, -h, 0.0).unwrap();
        for gt in [0.2, 1.0, 7.3, 24.9] {
            let x = evolve(&spec, p(0.0, gt)).unwrap();
            assert!((x.amps()[0].norm() - h).abs() < 1e-13);
            assert!((x.amps()[1].norm() - h).abs() < 1e-13);
            assert!(x.amps()[2].norm() < 1e-13);
            // eigenvector with unit-modulus eigenvalue
            let u = analytic_block_u(Family::Family1, p(0.0, gt));
            let v = DVector::from_vec(vec![c(h), c(-h), c(0.0)]);
            let uv = &u * &v;
            let eig = uv[0] / v[0];
            assert!((eig.norm() - 1.0).abs() < 1e-13);
            assert!((uv - v * eig).norm() < 1e-13);
        }
    }

    #[test]
    fn block_matches_oracle_family2() {
        let h = oracle::build_hamiltonian(Family::Family2, 6.0).unwrap();
        let want = oracle::oracle_u(&h, 1.0).unwrap();
        let got = analytic_block_u(Family::Family2, p(6.0, 1.0));
        assert!(max_diff(&got, &want) < 1e-10);

        let spec = WStateSpec::equal_weights(Family::Family2);
        let x = evolve(&spec, p(6.0, 2.0)).unwrap();
        let want = oracle::oracle_u(&h, 2.0).unwrap() * spec.initial_vector();
        for (xi, yi) in x.amps().iter().zip(want.iter()) {
            assert!((xi - yi).norm() < 1e-10);
        }
    }

    #[test]
    fn formula_path_matches_block_path() {
        let specs = [
            WStateSpec::equal_weights(Family::Family1),
            WStateSpec::real(
                Family::Family1,
                (2.0f64 / 3.0).sqrt(),
                1.0 / 6f64.sqrt(),
                1.0 / 6f64.sqrt(),
            )
            .unwrap(),
            WStateSpec::equal_weights(Family::Family2),
            WStateSpec::new(Family::Family2, c(0.6), Complex64::new(0.0, 0.48), c(0.64)).unwrap(),
        ];
        for spec in specs {
            for alpha in [0.0, 1.0, 3.0, 6.0] {
                for i in 0..50 {
                    let params = p(alpha, 0.5 * i as f64);
                    let block = evolve(&spec, params).unwrap();
                    let formula = amplitudes_by_formula(&spec, params);
                    for (x, y) in block.amps().iter().zip(&formula) {
                        assert!((x - y).norm() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn unitarity_group_and_inverse() {
        for family in [Family::Family1, Family::Family2] {
            for alpha in [0.0, 1.0, 6.0] {
                for n in 0..200 {
                    let gt = 25.0 * n as f64 / 199.0;
                    let u = analytic_block_u(family, p(alpha, gt));
                    assert!(unitarity_defect(&u) < 1e-10);
                    let inv = u.clone().try_inverse().unwrap();
                    assert!(max_diff(&u.adjoint(), &inv) < 1e-10);
                }
                for (t1, t2) in [(0.3, 1.1), (2.5, 7.75), (10.0, 12.5), (0.0, 4.2)] {
                    let lhs = analytic_block_u(family, p(alpha, t1 + t2));
                    let rhs = analytic_block_u(family, p(alpha, t1))
                        * analytic_block_u(family, p(alpha, t2));
                    assert!(max_diff(&lhs, &rhs) < 1e-9);
                }
            }
        }
    }

    #[test]
    fn amplitude_vector_checks() {
        let b = block_basis(Family::Family1);
        assert!(AmplitudeVector::new(b.clone(), vec![c(1.0), c(0.0)], 0.0).is_err());
        assert!(matches!(
            AmplitudeVector::new(b.clone(), vec![c(1.0), c(1.0), c(0.0)], 0.0),
            Err(Error::Unnormalized { .. })
        ));
        assert!(AmplitudeVector::new(b, vec![c(0.0), c(0.0), c(1.0)], 0.0).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn evolution_preserves_norm(
                fam in 1u8..=2,
                re in proptest::array::uniform3(-1.0f64..1.0),
                im in proptest::array::uniform3(-1.0f64..1.0),
                alpha in 0.0f64..10.0,
                gt in 0.0f64..50.0,
            ) {
                let coeffs = [0, 1, 2].map(|i| Complex64::new(re[i], im[i]));
                let norm: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                prop_assume!(norm > 1e-3);
                let coeffs = coeffs.map(|z| z / norm);
                let spec = WStateSpec::new(Family::from_number(fam).unwrap(), coeffs[0], coeffs[1], coeffs[2]).unwrap();
                let x = evolve(&spec, p(alpha, gt)).unwrap();
                prop_assert!((x.norm_sqr() - 1.0).abs() < 1e-10);
            }
        }
    }
}
