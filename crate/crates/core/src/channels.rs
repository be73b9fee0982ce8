//! Kraus sets for the four noise channels, with partial memory between the
//! two channel uses (one use per qubit).
//!
//! Pauli-family channels with memory mu combine into the single operator set
//!
//!   A_ij = sqrt(p_i [(1-mu) p_j + mu delta_ij]) sigma_i (x) sigma_j
//!
//! so a correlated error (same Pauli on both qubits) happens with probability
//! mu and independent errors with probability 1-mu. Amplitude damping is not
//! a Pauli channel; its correlated branch is the dedicated two-qubit pair
//! from [`correlated_ad_kraus`], mixed with the uncorrelated tensor branch:
//!
//!   rho -> (1-mu) sum_ij (A_i (x) A_j) rho (.)^dag + mu sum_k A_kk^c rho A_kk^c^dag

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix};
use crate::unruh::DensityMatrix;

pub const COMPLETENESS_TOL: f64 = 1e-12;

/// The four channel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    Depolarizing,
    BitPhaseFlip,
    PhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::Depolarizing,
        ChannelKind::BitPhaseFlip,
        ChannelKind::PhaseFlip,
    ];

    /// Short code used on the CLI and in CSV output.
    pub fn code(&self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Depolarizing => "dep",
            ChannelKind::BitPhaseFlip => "bpf",
            ChannelKind::PhaseFlip => "pf",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude damping",
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::BitPhaseFlip => "bit-phase flip",
            ChannelKind::PhaseFlip => "phase flip",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "ad" => Some(ChannelKind::AmplitudeDamping),
            "dep" => Some(ChannelKind::Depolarizing),
            "bpf" => Some(ChannelKind::BitPhaseFlip),
            "pf" => Some(ChannelKind::PhaseFlip),
            _ => None,
        }
    }

    pub fn is_pauli(&self) -> bool {
        !matches!(self, ChannelKind::AmplitudeDamping)
    }
}

/// A channel pick together with its decoherence strength p and memory
/// degree mu, both in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub p: f64,
    pub mu: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, p: f64, mu: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("mu", mu)?;
        Ok(Self { kind, p, mu })
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::ParamOutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// A set of 4x4 Kraus operators realizing rho -> sum_k K_k rho K_k^dag.
#[derive(Debug, Clone)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Validates the completeness relation sum_k K_k^dag K_k = I within
    /// [`COMPLETENESS_TOL`].
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let set = Self::unchecked(operators);
        let residual = completeness_residual(&set);
        if residual > COMPLETENESS_TOL {
            return Err(Error::IncompleteKraus {
                residual,
                tol: COMPLETENESS_TOL,
            });
        }
        Ok(set)
    }

    /// Skips the completeness check. Meant for diagnostics on deliberately
    /// broken sets; physical channels go through [`KrausSet::new`].
    pub fn unchecked(operators: Vec<ComplexMatrix>) -> Self {
        Self { operators }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// sum_k K_k m K_k^dag
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
        for k in &self.operators {
            out = &out + &(&(k * m) * &k.dagger());
        }
        out
    }
}

/// Largest absolute entry of sum_k K_k^dag K_k - I.
pub fn completeness_residual(ks: &KrausSet) -> f64 {
    let n = ks
        .operators
        .first()
        .map(|k| k.cols())
        .unwrap_or(0);
    let mut acc = ComplexMatrix::zeros(n, n);
    for k in &ks.operators {
        acc = &acc + &(&k.dagger() * k);
    }
    acc.max_abs_diff(&ComplexMatrix::identity(n))
}

/// Single-qubit (single-use) Kraus operators for one channel.
///
/// AD:  {diag(1, sqrt(1-p)), sqrt(p)|0><1|}
/// Dep: {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
/// BPF: {sqrt(1-p) I, sqrt(p) Y}
/// PF:  {sqrt(1-p) I, sqrt(p) Z}
pub fn single_qubit_kraus(kind: ChannelKind, p: f64) -> Result<Vec<ComplexMatrix>> {
    check_unit("p", p)?;
    Ok(match kind {
        ChannelKind::AmplitudeDamping => {
            let a0 = ComplexMatrix::real_diag(&[1.0, (1.0 - p).sqrt()]);
            let a1 = ComplexMatrix::basis_outer(2, 0, 1).scale_re(p.sqrt());
            vec![a0, a1]
        }
        _ => {
            let pv = pauli_probability_vector(kind, p)?;
            (0..4)
                .map(|i| pauli(i).scale_re(pv[i].sqrt()))
                .collect()
        }
    })
}

/// Probabilities over (sigma_0, sigma_x, sigma_y, sigma_z) for the Pauli
/// channels. Amplitude damping has no such representation and is rejected.
pub fn pauli_probability_vector(kind: ChannelKind, p: f64) -> Result<[f64; 4]> {
    check_unit("p", p)?;
    match kind {
        ChannelKind::Depolarizing => Ok([1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p]),
        ChannelKind::BitPhaseFlip => Ok([1.0 - p, 0.0, p, 0.0]),
        ChannelKind::PhaseFlip => Ok([1.0 - p, 0.0, 0.0, p]),
        ChannelKind::AmplitudeDamping => Err(Error::NotPauliChannel { kind }),
    }
}

/// Two-use Pauli channel with partial memory: the 16 operators
/// A_ij = sqrt(p_i [(1-mu) p_j + mu delta_ij]) sigma_i (x) sigma_j,
/// zero-weight entries dropped.
pub fn correlated_pauli_kraus(kind: ChannelKind, p: f64, mu: f64) -> Result<KrausSet> {
    check_unit("mu", mu)?;
    let pv = pauli_probability_vector(kind, p)?;
    let mut ops = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let w = pv[i] * ((1.0 - mu) * pv[j] + if i == j { mu } else { 0.0 });
            if w == 0.0 {
                continue;
            }
            ops.push(pauli(i).tensor(&pauli(j)).scale_re(w.sqrt()));
        }
    }
    KrausSet::new(ops)
}

/// The fully correlated amplitude-damping pair with sin chi = sqrt(p):
///
///   A_00^c = diag(cos chi, 1, 1, 1),   A_11^c = sin chi |11><00|
///
/// |01>, |10>, |11> and their combinations pass undisturbed; only |00>
/// is damped.
pub fn correlated_ad_kraus(p: f64) -> Result<KrausSet> {
    check_unit("p", p)?;
    let chi = p.sqrt().asin();
    let a00 = ComplexMatrix::real_diag(&[chi.cos(), 1.0, 1.0, 1.0]);
    let a11 = ComplexMatrix::basis_outer(4, 3, 0).scale_re(chi.sin());
    let ops = if p == 0.0 { vec![a00] } else { vec![a00, a11] };
    KrausSet::new(ops)
}

/// Memoryless two-use channel: all tensor products of the single-qubit
/// operators. This is the mu = 0 reference route.
pub fn uncorrelated_tensor_kraus(kind: ChannelKind, p: f64) -> Result<KrausSet> {
    let singles = single_qubit_kraus(kind, p)?;
    let mut ops = Vec::new();
    for a in &singles {
        for b in &singles {
            let t = a.tensor(b);
            if t.max_abs() == 0.0 {
                continue;
            }
            ops.push(t);
        }
    }
    KrausSet::new(ops)
}

/// The full two-use Kraus set for a channel spec, memory included.
pub fn kraus_set(spec: &ChannelSpec) -> Result<KrausSet> {
    match spec.kind {
        ChannelKind::AmplitudeDamping => {
            let mut ops = Vec::new();
            if spec.mu < 1.0 {
                let w = (1.0 - spec.mu).sqrt();
                for k in uncorrelated_tensor_kraus(spec.kind, spec.p)?.operators() {
                    ops.push(k.scale_re(w));
                }
            }
            if spec.mu > 0.0 {
                let w = spec.mu.sqrt();
                for k in correlated_ad_kraus(spec.p)?.operators() {
                    ops.push(k.scale_re(w));
                }
            }
            KrausSet::new(ops)
        }
        _ => correlated_pauli_kraus(spec.kind, spec.p, spec.mu),
    }
}

/// Sends a state through the channel in operator-sum form. The output is
/// re-validated; a violation there means a bug, not bad input.
pub fn apply_channel(rho: &DensityMatrix, spec: &ChannelSpec) -> Result<DensityMatrix> {
    let ks = kraus_set(spec)?;
    let out = ks.apply(rho.matrix());
    DensityMatrix::new(out).map_err(|e| {
        Error::NumericalFailure(format!(
            "channel output violated state invariants ({e}) for {spec:?}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli_x, pauli_y, pauli_z};
    use crate::unruh::{unruh_density_matrix, UnruhParam};

    #[test]
    fn pauli_probability_vectors() {
        assert_eq!(
            pauli_probability_vector(ChannelKind::PhaseFlip, 0.5).unwrap(),
            [0.5, 0.0, 0.0, 0.5]
        );
        assert_eq!(
            pauli_probability_vector(ChannelKind::Depolarizing, 1.0).unwrap(),
            [0.25, 0.25, 0.25, 0.25]
        );
        assert_eq!(
            pauli_probability_vector(ChannelKind::BitPhaseFlip, 0.0).unwrap(),
            [1.0, 0.0, 0.0, 0.0]
        );
        assert!(pauli_probability_vector(ChannelKind::AmplitudeDamping, 0.5).is_err());
        for kind in [
            ChannelKind::Depolarizing,
            ChannelKind::BitPhaseFlip,
            ChannelKind::PhaseFlip,
        ] {
            for k in 0..=10 {
                let pv = pauli_probability_vector(kind, k as f64 / 10.0).unwrap();
                assert!((pv.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn single_qubit_sets_match_their_table_forms() {
        let pf0 = single_qubit_kraus(ChannelKind::PhaseFlip, 0.0).unwrap();
        assert_eq!(pf0[0], ComplexMatrix::identity(2));
        assert_eq!(pf0[3].max_abs(), 0.0);

        let ad1 = single_qubit_kraus(ChannelKind::AmplitudeDamping, 1.0).unwrap();
        assert_eq!(ad1[0], ComplexMatrix::real_diag(&[1.0, 0.0]));
        assert_eq!(ad1[1], ComplexMatrix::basis_outer(2, 0, 1));

        let dep1 = single_qubit_kraus(ChannelKind::Depolarizing, 1.0).unwrap();
        assert_eq!(dep1[0], ComplexMatrix::identity(2).scale_re(0.5));
        assert_eq!(dep1[1], pauli_x().scale_re(0.5));
        assert_eq!(dep1[2], pauli_y().scale_re(0.5));
        assert_eq!(dep1[3], pauli_z().scale_re(0.5));
    }

    #[test]
    fn single_qubit_completeness() {
        for kind in ChannelKind::ALL {
            for k in 0..=10 {
                let p = k as f64 / 10.0;
                let ops = single_qubit_kraus(kind, p).unwrap();
                let mut acc = ComplexMatrix::zeros(2, 2);
                for op in &ops {
                    acc = &acc + &(&op.dagger() * op);
                }
                assert!(
                    acc.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12,
                    "{kind:?} p={p}"
                );
            }
        }
    }

    #[test]
    fn correlated_pauli_mu1_phase_flip_keeps_two_operators() {
        let ks = correlated_pauli_kraus(ChannelKind::PhaseFlip, 0.3, 1.0).unwrap();
        assert_eq!(ks.operators().len(), 2);
        let zz = pauli_z().tensor(&pauli_z());
        assert!(ks.operators()[0]
            .max_abs_diff(&ComplexMatrix::identity(4).scale_re(0.7f64.sqrt()))
            < 1e-15);
        assert!(ks.operators()[1].max_abs_diff(&zz.scale_re(0.3f64.sqrt())) < 1e-15);
    }

    #[test]
    fn mu1_phase_flip_fixes_bell_state() {
        let bell = unruh_density_matrix(&UnruhParam::new(0.0).unwrap());
        for p in [0.2, 0.5, 0.9] {
            let spec = ChannelSpec::new(ChannelKind::PhaseFlip, p, 1.0).unwrap();
            let out = apply_channel(&bell, &spec).unwrap();
            assert!(out.matrix().max_abs_diff(bell.matrix()) < 1e-15);
        }
    }

    #[test]
    fn correlated_ad_limits() {
        let ks0 = correlated_ad_kraus(0.0).unwrap();
        assert_eq!(ks0.operators().len(), 1);
        assert_eq!(ks0.operators()[0], ComplexMatrix::identity(4));

        let ks1 = correlated_ad_kraus(1.0).unwrap();
        assert!(ks1.operators()[0]
            .max_abs_diff(&ComplexMatrix::real_diag(&[0.0, 1.0, 1.0, 1.0]))
            < 1e-15);
        assert!(ks1.operators()[1].max_abs_diff(&ComplexMatrix::basis_outer(4, 3, 0)) < 1e-15);
    }

    #[test]
    fn correlated_ad_leaves_upper_subspace_alone() {
        // any state supported on span{|01>,|10>,|11>} is a fixed point
        let mut m = ComplexMatrix::zeros(4, 4);
        m = &m + &ComplexMatrix::basis_outer(4, 1, 1).scale_re(0.25);
        m = &m + &ComplexMatrix::basis_outer(4, 2, 2).scale_re(0.35);
        m = &m + &ComplexMatrix::basis_outer(4, 3, 3).scale_re(0.40);
        m = &m + &ComplexMatrix::basis_outer(4, 1, 2).scale_re(0.1);
        m = &m + &ComplexMatrix::basis_outer(4, 2, 1).scale_re(0.1);
        for p in [0.2, 0.7, 1.0] {
            let ks = correlated_ad_kraus(p).unwrap();
            assert!(ks.apply(&m).max_abs_diff(&m) < 1e-15, "p={p}");
        }
    }

    #[test]
    fn completeness_residual_detects_corruption() {
        let mut ops: Vec<ComplexMatrix> = correlated_ad_kraus(0.3)
            .unwrap()
            .operators()
            .to_vec();
        ops[0] = ops[0].scale_re(1.01);
        let corrupted = KrausSet::unchecked(ops);
        let res = completeness_residual(&corrupted);
        assert!((res - (1.01f64 * 1.01 - 1.0)).abs() < 1e-12, "res={res}");
        assert!(KrausSet::new(corrupted.operators().to_vec()).is_err());
    }

    #[test]
    fn completeness_residual_of_healthy_sets() {
        assert!(completeness_residual(&correlated_ad_kraus(0.3).unwrap()) < 1e-15);
        let ks = correlated_pauli_kraus(ChannelKind::Depolarizing, 0.7, 0.4).unwrap();
        assert!(completeness_residual(&ks) < 1e-12);
    }

    #[test]
    fn p_zero_is_identity_channel() {
        let rho = unruh_density_matrix(&UnruhParam::new(0.4).unwrap());
        for kind in ChannelKind::ALL {
            for mu in [0.0, 0.5, 1.0] {
                let spec = ChannelSpec::new(kind, 0.0, mu).unwrap();
                let out = apply_channel(&rho, &spec).unwrap();
                assert!(
                    out.matrix().max_abs_diff(rho.matrix()) < 1e-14,
                    "{kind:?} mu={mu}"
                );
            }
        }
    }

    #[test]
    fn full_damping_sends_bell_to_ground() {
        let bell = unruh_density_matrix(&UnruhParam::new(0.0).unwrap());
        let spec = ChannelSpec::new(ChannelKind::AmplitudeDamping, 1.0, 0.0).unwrap();
        let out = apply_channel(&bell, &spec).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::basis_outer(4, 0, 0)) < 1e-15);
    }

    #[test]
    fn mu_zero_reduces_to_tensor_channel() {
        let rho = unruh_density_matrix(&UnruhParam::new(0.3).unwrap());
        for kind in ChannelKind::ALL {
            for k in 0..=5 {
                let p = k as f64 / 5.0;
                let spec = ChannelSpec::new(kind, p, 0.0).unwrap();
                let corr = apply_channel(&rho, &spec).unwrap();
                let tens = uncorrelated_tensor_kraus(kind, p)
                    .unwrap()
                    .apply(rho.matrix());
                assert!(
                    corr.matrix().max_abs_diff(&tens) < 1e-12,
                    "{kind:?} p={p}"
                );
            }
        }
    }

    #[test]
    fn spec_rejects_out_of_range() {
        assert!(ChannelSpec::new(ChannelKind::PhaseFlip, -0.1, 0.0).is_err());
        assert!(ChannelSpec::new(ChannelKind::PhaseFlip, 0.0, 1.1).is_err());
        assert!(ChannelSpec::new(ChannelKind::PhaseFlip, f64::NAN, 0.0).is_err());
        assert!(correlated_ad_kraus(1.5).is_err());
        assert!(correlated_pauli_kraus(ChannelKind::AmplitudeDamping, 0.5, 0.5).is_err());
    }
}
