//! Complex state vectors, operators, and 2⊗2 composite vectors.
//!
//! Everything downstream computes on these: tensor products, partial traces
//! over either factor, phase-insensitive comparison, and closed-form
//! eigenvalues of 2×2 Hermitian matrices. All values are immutable after
//! construction and every operation is a pure function.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance for validating constructed states and operators.
pub const NORM_TOL: f64 = 1e-10;

/// Tolerance for internal algebraic identities at dimension 2 and 4.
pub const IDENTITY_TOL: f64 = 1e-12;

fn all_finite(amps: &[C64]) -> bool {
    amps.iter().all(|a| a.re.is_finite() && a.im.is_finite())
}

/// A normalized state vector with complex amplitudes.
///
/// Construction rejects non-finite components and vectors whose norm
/// deviates from 1 by more than [`NORM_TOL`]; nothing is silently rescaled.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if !all_finite(&amps) {
            return Err(Error::NonFinite {
                what: "state vector amplitude",
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amps })
    }

    /// Rescales `amps` to unit norm. Fails on non-finite input or a vector
    /// too close to zero for the direction to be meaningful.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        if !all_finite(&amps) {
            return Err(Error::NonFinite {
                what: "state vector amplitude",
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq < 1e-28 {
            return Err(Error::VanishingSuperposition);
        }
        let inv = norm_sq.sqrt().recip();
        Ok(Self {
            amps: amps.into_iter().map(|a| a * inv).collect(),
        })
    }

    /// The `k`-th canonical basis vector of a `dim`-dimensional space.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amp(&self, k: usize) -> C64 {
        self.amps[k]
    }

    /// Inner product ⟨self∣other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// The rank-1 projector ∣self⟩⟨self∣.
    pub fn projector(&self) -> Operator {
        let d = self.dim();
        let mut entries = vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = self.amps[i] * self.amps[j].conj();
            }
        }
        Operator { dim: d, entries }
    }
}

/// True iff the two states agree up to a global phase: ∣⟨a∣b⟩∣ ≥ 1 − tol.
pub fn states_equal_up_to_phase(a: &StateVector, b: &StateVector, tol: f64) -> Result<bool> {
    Ok(a.inner(b)?.norm() >= 1.0 - tol)
}

/// A dense complex square matrix (dimension 2 or 4 in practice).
///
/// General operators (observables, commutators, residuals) are not required
/// to be states; [`Operator::validate_state`] checks the state-operator
/// invariants where a state is expected.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<C64>, // row-major
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite {
                what: "operator entry",
            });
        }
        Ok(Self { dim, entries })
    }

    /// Diagonal matrix with the given real diagonal.
    pub fn diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut m = Self::zeros(d);
        for (k, &x) in diag.iter().enumerate() {
            m.entries[k * d + k] = C64::new(x, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.dim + j] = v;
    }

    /// self += factor · other (dimensions must agree).
    pub fn add_assign_scaled(&mut self, other: &Self, factor: f64) {
        assert_eq!(self.dim, other.dim, "operator dimensions must agree");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * factor;
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self.entry(k, k)).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                out.entries[i * d + j] = acc;
            }
        }
        Ok(out)
    }

    /// Commutator [self, other] = self·other − other·self.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Largest entry magnitude (max-norm); the residual measure used by
    /// every 1e−12 identity in this crate.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if (self.entry(i, j) - self.entry(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Eigenvalues of a 2×2 Hermitian matrix in ascending order, by the
    /// closed trace/determinant form: m ± √((Δ/2)² + ∣b∣²).
    pub fn eigenvalues_hermitian_2x2(&self) -> Result<[f64; 2]> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim,
            });
        }
        let a = self.entry(0, 0).re;
        let d = self.entry(1, 1).re;
        let b = self.entry(0, 1).norm();
        let mid = 0.5 * (a + d);
        let disc = (0.5 * (a - d)).hypot(b);
        Ok([mid - disc, mid + disc])
    }

    /// Checks the state-operator invariants: Hermitian, positive
    /// semidefinite, unit trace, all within `tol`. Dimension 2 uses the
    /// closed-form spectrum; dimension 4 is not needed here and rejected.
    pub fn validate_state(&self, tol: f64) -> Result<()> {
        if !all_finite(&self.entries) {
            return Err(Error::NonFinite {
                what: "operator entry",
            });
        }
        if !self.is_hermitian(tol) {
            return Err(Error::OutOfDomain {
                name: "hermiticity deviation",
                value: f64::NAN,
                domain: "state operators must be Hermitian",
            });
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::OutOfDomain {
                name: "trace",
                value: tr.re,
                domain: "1 (unit trace)",
            });
        }
        let low = self.eigenvalues_hermitian_2x2()?[0];
        if low < -tol {
            return Err(Error::OutOfDomain {
                name: "smallest eigenvalue",
                value: low,
                domain: "[0, 1] (positive semidefinite)",
            });
        }
        Ok(())
    }

    /// Partial trace over the opposite factor of a 4×4 composite operator,
    /// leaving the 2×2 subsystem operator. Index convention (o, s) ↦ 2o+s.
    pub fn trace_out_opposite(&self) -> Result<Operator> {
        self.partial_trace(true)
    }

    /// Partial trace over the subsystem factor, leaving the 2×2 opposite
    /// operator.
    pub fn trace_out_subsystem(&self) -> Result<Operator> {
        self.partial_trace(false)
    }

    fn partial_trace(&self, over_opposite: bool) -> Result<Operator> {
        if self.dim != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: self.dim,
            });
        }
        let mut out = Operator::zeros(2);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..2 {
                    // summed index k runs over the traced factor
                    let (i, j) = if over_opposite {
                        (2 * k + a, 2 * k + b)
                    } else {
                        (2 * a + k, 2 * b + k)
                    };
                    acc += self.entry(i, j);
                }
                out.set(a, b, acc);
            }
        }
        Ok(out)
    }
}

/// A normalized pure state of the 2⊗2 composite space, amplitudes indexed
/// by (opposite, subsystem) as 2o+s.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeVector {
    amps: [C64; 4],
}

impl CompositeVector {
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        if !all_finite(&amps) {
            return Err(Error::NonFinite {
                what: "composite amplitude",
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amps })
    }

    pub fn amps(&self) -> &[C64; 4] {
        &self.amps
    }

    pub fn amp(&self, o: usize, s: usize) -> C64 {
        self.amps[2 * o + s]
    }

    /// The 4×4 projector ∣self⟩⟨self∣.
    pub fn density(&self) -> Operator {
        let mut m = Operator::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        m
    }
}

/// Tensor product of two single-qubit states: amps(o, s) = a_o · b_s.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<CompositeVector> {
    for (v, name) in [(a, "left factor"), (b, "right factor")] {
        if v.dim() != 2 {
            let _ = name;
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: v.dim(),
            });
        }
    }
    let mut amps = [C64::new(0.0, 0.0); 4];
    for o in 0..2 {
        for s in 0..2 {
            amps[2 * o + s] = a.amp(o) * b.amp(s);
        }
    }
    CompositeVector::new(amps)
}

/// State operator of the subsystem: traces the opposite factor out of
/// ∣v⟩⟨v∣. The result is Hermitian, PSD, and unit-trace by construction.
pub fn partial_trace_opposite(v: &CompositeVector) -> Operator {
    let mut out = Operator::zeros(2);
    for s in 0..2 {
        for t in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for o in 0..2 {
                acc += v.amp(o, s) * v.amp(o, t).conj();
            }
            out.set(s, t, acc);
        }
    }
    out
}

/// State operator of the opposite subsystem: traces the subsystem out.
pub fn partial_trace_subsystem(v: &CompositeVector) -> Operator {
    let mut out = Operator::zeros(2);
    for o in 0..2 {
        for p in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for s in 0..2 {
                acc += v.amp(o, s) * v.amp(p, s).conj();
            }
            out.set(o, p, acc);
        }
    }
    out
}
