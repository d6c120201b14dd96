//! Truncated phase-space operators on the 2D plane.
//!
//! Each spatial axis carries a truncated harmonic-oscillator (Fock) basis of
//! dimension `d_axis`; the canonical pair on an axis is
//!
//! ```text
//! q = sqrt(hbar/2) (a + a†),    k = i sqrt(hbar/2) (a† - a)
//! ```
//!
//! and the 2D operators act on the d_axis² system space by tensoring with the
//! identity on the other axis. The Bopp shift maps the canonical pair to the
//! noncommuting pair
//!
//! ```text
//! x_a = q_a - (theta/2) eps_ab k_b,    p_a = k_a + (sigma/2) eps_ab q_b
//! ```
//!
//! which reproduces [x_a, x_b] = i hbar theta eps_ab, [p_a, p_b] = i hbar
//! sigma eps_ab and [x_a, p_b] = i hbar (delta_ab + theta sigma / 4 delta_ab)
//! on the low-lying subspace. Canonical commutation cannot hold exactly in
//! finite dimension (trace obstruction); the violation sits in the truncation
//! corner n = d_axis - 1.

use ndarray::{Array2, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, C64};

/// Default cap on the composite (system x environment) dimension.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Antisymmetric tensor with eps_12 = +1 (indices 0-based).
pub fn epsilon(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Environment bank label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BankLabel {
    C,
    D,
}

/// Hilbert-space layout: Fock truncation per axis plus environment qubit banks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HilbertSpec {
    pub d_axis: usize,
    /// Ordered qubit banks; qubits are laid out bank by bank.
    pub env_banks: Vec<(BankLabel, usize)>,
    /// Cap on the composite dimension, checked before any allocation.
    #[serde(default = "default_cap")]
    pub dim_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_DIM_CAP
}

impl HilbertSpec {
    pub fn new(d_axis: usize, env_banks: Vec<(BankLabel, usize)>) -> Result<Self> {
        let spec = HilbertSpec {
            d_axis,
            env_banks,
            dim_cap: DEFAULT_DIM_CAP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_axis < 4 {
            return Err(Error::InvalidParameter(format!(
                "d_axis = {} but meaningful commutator checks need d_axis >= 4",
                self.d_axis
            )));
        }
        if self.env_banks.iter().any(|&(_, n)| n == 0) {
            return Err(Error::InvalidParameter(
                "environment bank with zero qubits".into(),
            ));
        }
        self.composite_dim()?;
        Ok(())
    }

    pub fn system_dim(&self) -> usize {
        self.d_axis * self.d_axis
    }

    pub fn env_qubits(&self) -> usize {
        self.env_banks.iter().map(|&(_, n)| n).sum()
    }

    pub fn env_dim(&self) -> usize {
        1usize << self.env_qubits()
    }

    /// Composite dimension, refused with an explicit size report when it
    /// exceeds the cap.
    pub fn composite_dim(&self) -> Result<usize> {
        let qubits = self.env_qubits();
        let dim = (self.d_axis as u128)
            .checked_pow(2)
            .and_then(|s| 1u128.checked_shl(qubits as u32).map(|e| s * e))
            .unwrap_or(u128::MAX);
        if dim > self.dim_cap as u128 {
            return Err(Error::DimensionOverflow {
                dim: dim.min(usize::MAX as u128) as usize,
                cap: self.dim_cap,
            });
        }
        Ok(dim as usize)
    }
}

/// Dense operator with an optional Hermiticity promise.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Array2<C64>,
    hermitian_hint: bool,
}

impl OperatorMatrix {
    /// Wrap a matrix; when `hermitian_hint` is set the Hermiticity deviation
    /// must be below 1e-12.
    pub fn new(entries: Array2<C64>, hermitian_hint: bool) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                context: "OperatorMatrix",
                expected: dim,
                got: entries.ncols(),
            });
        }
        if hermitian_hint {
            let dev = linalg::hermiticity_deviation(&entries.view());
            if dev >= 1e-12 {
                return Err(Error::NotHermitian { deviation: dev });
            }
        }
        Ok(OperatorMatrix {
            dim,
            entries,
            hermitian_hint,
        })
    }

    pub fn hermitian(entries: Array2<C64>) -> Result<Self> {
        Self::new(entries, true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn view(&self) -> ArrayView2<'_, C64> {
        self.entries.view()
    }

    pub fn is_hermitian_hinted(&self) -> bool {
        self.hermitian_hint
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.entries.view())
    }
}

/// Noncommutativity parameters in natural units.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NCParams {
    pub theta: f64,
    pub sigma: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub charge_e: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for NCParams {
    fn default() -> Self {
        NCParams {
            theta: 0.0,
            sigma: 0.0,
            hbar: 1.0,
            charge_e: 1.0,
        }
    }
}

impl NCParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        for (name, v) in [
            ("theta", self.theta),
            ("sigma", self.sigma),
            ("charge_e", self.charge_e),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} is not finite")));
            }
        }
        Ok(())
    }
}

/// Single-axis truncated position operator (d x d).
pub fn axis_position(d: usize, hbar: f64) -> Array2<C64> {
    let s = (hbar / 2.0).sqrt();
    let mut q = Array2::zeros((d, d));
    for n in 1..d {
        let v = C64::new(s * (n as f64).sqrt(), 0.0);
        q[(n - 1, n)] = v;
        q[(n, n - 1)] = v;
    }
    q
}

/// Single-axis truncated momentum operator (d x d).
pub fn axis_momentum(d: usize, hbar: f64) -> Array2<C64> {
    let s = (hbar / 2.0).sqrt();
    let mut k = Array2::zeros((d, d));
    for n in 1..d {
        // i sqrt(hbar/2) (a† - a): a† lowers the column index relation
        k[(n, n - 1)] = C64::new(0.0, s * (n as f64).sqrt());
        k[(n - 1, n)] = C64::new(0.0, -s * (n as f64).sqrt());
    }
    k
}

/// Canonical pair on the 2D system space, one operator per axis.
#[derive(Debug, Clone)]
pub struct CanonicalOps {
    pub q: [OperatorMatrix; 2],
    pub k: [OperatorMatrix; 2],
    pub d_axis: usize,
    pub hbar: f64,
}

/// Build q_1, q_2, k_1, k_2 embedded on the d_axis² system space.
pub fn build_canonical_ops(spec: &HilbertSpec, hbar: f64) -> Result<CanonicalOps> {
    spec.validate()?;
    if !(hbar > 0.0) {
        return Err(Error::InvalidParameter("hbar must be positive".into()));
    }
    let d = spec.d_axis;
    let q = axis_position(d, hbar);
    let k = axis_momentum(d, hbar);
    let id = linalg::eye(d);
    let q1 = linalg::kron(&q.view(), &id.view());
    let q2 = linalg::kron(&id.view(), &q.view());
    let k1 = linalg::kron(&k.view(), &id.view());
    let k2 = linalg::kron(&id.view(), &k.view());
    Ok(CanonicalOps {
        q: [OperatorMatrix::hermitian(q1)?, OperatorMatrix::hermitian(q2)?],
        k: [OperatorMatrix::hermitian(k1)?, OperatorMatrix::hermitian(k2)?],
        d_axis: d,
        hbar,
    })
}

/// Bopp-shifted noncommutative operators.
#[derive(Debug, Clone)]
pub struct BoppOps {
    pub x: [OperatorMatrix; 2],
    pub p: [OperatorMatrix; 2],
}

/// x_a = q_a - (theta/2) eps_ab k_b,  p_a = k_a + (sigma/2) eps_ab q_b.
pub fn bopp_shift(canonical: &CanonicalOps, params: &NCParams) -> Result<BoppOps> {
    params.validate()?;
    let dim = canonical.q[0].dim();
    for op in canonical.q.iter().chain(canonical.k.iter()) {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: "bopp_shift",
                expected: dim,
                got: op.dim(),
            });
        }
    }
    let mut x = Vec::with_capacity(2);
    let mut p = Vec::with_capacity(2);
    for a in 0..2 {
        let mut xa = canonical.q[a].view().to_owned();
        let mut pa = canonical.k[a].view().to_owned();
        for b in 0..2 {
            let eps = epsilon(a, b);
            if eps != 0.0 {
                xa = xa - canonical.k[b].view().mapv(|v| v * (params.theta / 2.0 * eps));
                pa = pa + canonical.q[b].view().mapv(|v| v * (params.sigma / 2.0 * eps));
            }
        }
        x.push(OperatorMatrix::hermitian(xa)?);
        p.push(OperatorMatrix::hermitian(pa)?);
    }
    let [x1, x2]: [OperatorMatrix; 2] = x.try_into().unwrap();
    let [p1, p2]: [OperatorMatrix; 2] = p.try_into().unwrap();
    Ok(BoppOps {
        x: [x1, x2],
        p: [p1, p2],
    })
}

/// Full eigendecomposition of a truncated Hermitian observable.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, same order as `values`.
    pub vectors: Array2<C64>,
}

/// Eigenbasis of a truncated q̂ (or k̂) operator; eigenvalues ascending,
/// eigenvectors orthonormal to 1e-10.
pub fn position_eigenbasis(op: &OperatorMatrix) -> Result<Eigenbasis> {
    let dev = op.hermiticity_deviation();
    if dev >= 1e-12 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let (values, vectors) = linalg::eigh(&op.view())?;
    let gram = linalg::adjoint_matmul(&vectors.view(), &vectors.view());
    let dev = linalg::max_abs_diff(&gram.view(), &linalg::eye(op.dim()).view());
    if dev >= 1e-10 {
        return Err(Error::EigenFailure(format!(
            "eigenvectors not orthonormal (deviation {dev:.3e})"
        )));
    }
    Ok(Eigenbasis { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, eye, max_abs, max_abs_diff};
    use ndarray::Array2;

    fn spec(d: usize) -> HilbertSpec {
        HilbertSpec::new(d, vec![(BankLabel::C, 1), (BankLabel::D, 1)]).unwrap()
    }

    #[test]
    fn lowest_fock_commutator_element_is_exact() {
        let ops = build_canonical_ops(&spec(4), 1.0).unwrap();
        let c = commutator(&ops.q[0].view(), &ops.k[0].view());
        let v = c[(0, 0)];
        assert!((v - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn different_axes_commute_exactly() {
        let ops = build_canonical_ops(&spec(6), 1.0).unwrap();
        let c = commutator(&ops.q[0].view(), &ops.q[1].view());
        assert_eq!(max_abs(&c.view()), 0.0);
        let c = commutator(&ops.q[0].view(), &ops.k[1].view());
        assert_eq!(max_abs(&c.view()), 0.0);
    }

    /// Oracle: dense commutator on the truncated matrices; the canonical
    /// relation fails only at the truncation corner n = d_axis - 1.
    #[test]
    fn canonical_commutator_on_low_lying_subspace() {
        let d = 8;
        let ops = build_canonical_ops(&spec(d), 1.0).unwrap();
        let c = commutator(&ops.q[0].view(), &ops.k[0].view());
        let expect = eye(d * d).mapv(|v| v * C64::new(0.0, 1.0));
        let mut dev: f64 = 0.0;
        for m in 0..d * d {
            for n in 0..d * d {
                let (m1, m2) = (m / d, m % d);
                let (n1, n2) = (n / d, n % d);
                if m1 <= 4 && m2 <= 4 && n1 <= 4 && n2 <= 4 {
                    dev = dev.max((c[(m, n)] - expect[(m, n)]).norm());
                }
            }
        }
        assert!(dev < 1e-10, "deviation {dev:.3e}");
    }

    #[test]
    fn bopp_identity_at_zero_parameters() {
        let ops = build_canonical_ops(&spec(6), 1.0).unwrap();
        let params = NCParams::default();
        let bopp = bopp_shift(&ops, &params).unwrap();
        for a in 0..2 {
            assert_eq!(max_abs_diff(&bopp.x[a].view(), &ops.q[a].view()), 0.0);
            assert_eq!(max_abs_diff(&bopp.p[a].view(), &ops.k[a].view()), 0.0);
        }
    }

    /// Hand expansion of the shift with eps_12 = +1, eps_21 = -1.
    #[test]
    fn bopp_hand_expansion_theta_only() {
        let ops = build_canonical_ops(&spec(6), 1.0).unwrap();
        let params = NCParams {
            theta: 0.1,
            ..NCParams::default()
        };
        let bopp = bopp_shift(&ops, &params).unwrap();
        let x1_expect = ops.q[0].view().to_owned() - ops.k[1].view().mapv(|v| v * 0.05);
        let x2_expect = ops.q[1].view().to_owned() + ops.k[0].view().mapv(|v| v * 0.05);
        assert!(max_abs_diff(&bopp.x[0].view(), &x1_expect.view()) < 1e-15);
        assert!(max_abs_diff(&bopp.x[1].view(), &x2_expect.view()) < 1e-15);
        assert_eq!(max_abs_diff(&bopp.p[0].view(), &ops.k[0].view()), 0.0);
    }

    /// Oracle: dense commutators of the constructed matrices, restricted to
    /// the low-lying subspace. The (1 + theta sigma / 4) factor is the
    /// hand-expanded diagonal of the deformed algebra.
    #[test]
    fn nc_algebra_on_low_lying_subspace() {
        let d = 8;
        let ops = build_canonical_ops(&spec(d), 1.0).unwrap();
        let (theta, sigma) = (0.1, 0.01);
        let params = NCParams {
            theta,
            sigma,
            ..NCParams::default()
        };
        let bopp = bopp_shift(&ops, &params).unwrap();
        let low = |m: usize, n: usize| {
            let (m1, m2) = (m / d, m % d);
            let (n1, n2) = (n / d, n % d);
            m1 <= 4 && m2 <= 4 && n1 <= 4 && n2 <= 4
        };
        let check = |c: Array2<C64>, scale: f64, label: &str| {
            let mut dev: f64 = 0.0;
            for m in 0..d * d {
                for n in 0..d * d {
                    if low(m, n) {
                        let expect = if m == n {
                            C64::new(0.0, scale)
                        } else {
                            C64::new(0.0, 0.0)
                        };
                        dev = dev.max((c[(m, n)] - expect).norm());
                    }
                }
            }
            assert!(dev < 1e-9, "{label}: deviation {dev:.3e}");
        };
        check(
            commutator(&bopp.x[0].view(), &bopp.x[1].view()),
            theta,
            "[x1,x2]",
        );
        check(
            commutator(&bopp.p[0].view(), &bopp.p[1].view()),
            sigma,
            "[p1,p2]",
        );
        check(
            commutator(&bopp.x[0].view(), &bopp.p[0].view()),
            1.0 + theta * sigma / 4.0,
            "[x1,p1]",
        );
        check(
            commutator(&bopp.x[1].view(), &bopp.p[1].view()),
            1.0 + theta * sigma / 4.0,
            "[x2,p2]",
        );
        check(
            commutator(&bopp.x[0].view(), &bopp.p[1].view()),
            0.0,
            "[x1,p2]",
        );
        check(
            commutator(&bopp.x[1].view(), &bopp.p[0].view()),
            0.0,
            "[x2,p1]",
        );
    }

    /// bopp_shift is linear in (theta, sigma): the shifts add exactly.
    #[test]
    fn bopp_shift_linearity() {
        let ops = build_canonical_ops(&spec(5), 1.0).unwrap();
        let mk = |theta: f64, sigma: f64| NCParams {
            theta,
            sigma,
            ..NCParams::default()
        };
        let (t1, t2) = (0.07, 0.21);
        let b1 = bopp_shift(&ops, &mk(t1, 0.0)).unwrap();
        let b2 = bopp_shift(&ops, &mk(t2, 0.0)).unwrap();
        let b12 = bopp_shift(&ops, &mk(t1 + t2, 0.0)).unwrap();
        let lhs = b12.x[0].view().to_owned() - ops.q[0].view();
        let rhs = (b1.x[0].view().to_owned() - ops.q[0].view())
            + (b2.x[0].view().to_owned() - ops.q[0].view());
        assert_eq!(max_abs_diff(&lhs.view(), &rhs.view()), 0.0);
    }

    #[test]
    fn eigenbasis_d2_values() {
        // 2x2 truncated q has eigenvalues +-sqrt(1/2)
        let q = axis_position(2, 1.0);
        let op = OperatorMatrix::hermitian(q).unwrap();
        let basis = position_eigenbasis(&op).unwrap();
        let r = (0.5_f64).sqrt();
        assert!((basis.values[0] + r).abs() < 1e-12);
        assert!((basis.values[1] - r).abs() < 1e-12);
    }

    #[test]
    fn eigenbasis_trace_and_orthonormality() {
        let q = axis_position(8, 1.0);
        let op = OperatorMatrix::hermitian(q).unwrap();
        let basis = position_eigenbasis(&op).unwrap();
        let sum: f64 = basis.values.iter().sum();
        assert!(sum.abs() < 1e-10);
        let gram = linalg::adjoint_matmul(&basis.vectors.view(), &basis.vectors.view());
        assert!(max_abs_diff(&gram.view(), &eye(8).view()) < 1e-10);
        // d=8 spectrum matches the degree-8 Hermite roots
        assert!((basis.values[7] - 2.930637420257244).abs() < 1e-9);
        assert!((basis.values[5] - 1.1571937124467802).abs() < 1e-9);
    }

    #[test]
    fn momentum_eigenbasis_shares_spectrum() {
        let k = axis_momentum(8, 1.0);
        let op = OperatorMatrix::hermitian(k).unwrap();
        let q = axis_position(8, 1.0);
        let qop = OperatorMatrix::hermitian(q).unwrap();
        let kb = position_eigenbasis(&op).unwrap();
        let qb = position_eigenbasis(&qop).unwrap();
        for (a, b) in kb.values.iter().zip(qb.values.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut q = axis_position(4, 1.0);
        q[(0, 1)] += C64::new(1e-3, 0.0);
        assert!(OperatorMatrix::hermitian(q.clone()).is_err());
        let op = OperatorMatrix::new(q, false).unwrap();
        assert!(matches!(
            position_eigenbasis(&op),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn dimension_cap_refused_with_size_report() {
        let spec = HilbertSpec::new(8, vec![(BankLabel::C, 10)]);
        match spec {
            Err(Error::DimensionOverflow { dim, cap }) => {
                assert_eq!(dim, 64 * 1024);
                assert_eq!(cap, DEFAULT_DIM_CAP);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn small_d_axis_rejected() {
        assert!(HilbertSpec::new(3, vec![(BankLabel::C, 1)]).is_err());
    }
}
