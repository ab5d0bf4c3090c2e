//! Distant preparation of decompositions by yes-no measurements on the
//! opposite subsystem.
//!
//! A rank-2 mixture ρ is purified to the biorthogonal composite state
//! ∣ω⟩ = √r ∣1⟩ₒ∣1⟩ + √(1−r) ∣2⟩ₒ∣2⟩. Measuring a two-outcome observable
//! with eigenvectors ∣μ₁⟩ₒ, ∣μ₂⟩ₒ (parametrized by (q, λ)) selectively
//! collapses the subsystem onto the two states of exactly one two-term
//! decomposition of ρ, and the (p, θ) ↔ (q, λ) correspondence is a
//! bijection. The nonselective version produces the induced composite
//! mixture, and commutation of the observable with the opposite-subsystem
//! state is the criterion for the decomposition being orthogonal (distant
//! measurement).

use num_complex::Complex64 as C64;
use std::f64::consts::TAU;

use crate::decomposition::{canonical_angle, MinimalMixture, RangeState};
use crate::error::{Error, Result};
use crate::states::{partial_trace_subsystem, CompositeVector, Operator, StateVector};

/// Max-norm tolerance on [A_o, ρ_o] for the distant-measurement test.
pub const COMMUTATOR_TOL: f64 = 1e-12;

/// Branch probabilities below this leave no conditional state to report.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-14;

/// The canonical purification of a mixture: Schmidt coefficients √r and
/// √(1−r) on the paired canonical bases of the two factors.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtState {
    r: f64,
    composite: CompositeVector,
}

impl SchmidtState {
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn composite(&self) -> &CompositeVector {
        &self.composite
    }
}

/// Builds ∣ω⟩ = √r ∣1⟩ₒ∣1⟩ + √(1−r) ∣2⟩ₒ∣2⟩, the composite pure state whose
/// subsystem partial trace is diag(r, 1−r).
pub fn purify(rho: &MinimalMixture) -> SchmidtState {
    let r = rho.r();
    let amps = [
        C64::new(r.sqrt(), 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new((1.0 - r).sqrt(), 0.0),
    ];
    SchmidtState {
        r,
        composite: CompositeVector::new(amps)
            .expect("Schmidt coefficients are normalized by construction"),
    }
}

/// A two-outcome observable on the opposite subsystem, given by the
/// orthonormal eigenbasis
///
/// ∣μ₁⟩ₒ = q∣1⟩ₒ + √(1−q²) e^{iλ} ∣2⟩ₒ,
/// ∣μ₂⟩ₒ = √(1−q²)∣1⟩ₒ − q e^{iλ} ∣2⟩ₒ.
///
/// The eigenvalue labels are irrelevant to everything computed here and are
/// fixed to 1 and 2. λ is canonicalized to 0 at q ∈ {0, 1}, where it drops
/// out of both eigenvectors up to phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YesNoMeasurement {
    q: f64,
    lambda: f64,
}

impl YesNoMeasurement {
    pub fn new(q: f64, lambda: f64) -> Result<Self> {
        if !q.is_finite() || !(0.0..=1.0).contains(&q) {
            return Err(Error::OutOfDomain {
                name: "q",
                value: q,
                domain: "[0, 1]",
            });
        }
        if !lambda.is_finite() {
            return Err(Error::NonFinite { what: "lambda" });
        }
        let lambda = if q == 0.0 || q == 1.0 {
            0.0
        } else {
            canonical_angle(lambda)
        };
        Ok(Self { q, lambda })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu1(&self) -> StateVector {
        let q_perp = (1.0 - self.q * self.q).max(0.0).sqrt();
        StateVector::new(vec![
            C64::new(self.q, 0.0),
            C64::from_polar(q_perp, self.lambda),
        ])
        .expect("μ₁ is normalized by construction")
    }

    pub fn mu2(&self) -> StateVector {
        let q_perp = (1.0 - self.q * self.q).max(0.0).sqrt();
        StateVector::new(vec![
            C64::new(q_perp, 0.0),
            -C64::from_polar(self.q, self.lambda),
        ])
        .expect("μ₂ is normalized by construction")
    }

    fn mu(&self, branch: Branch) -> StateVector {
        match branch {
            Branch::Mu1 => self.mu1(),
            Branch::Mu2 => self.mu2(),
        }
    }

    /// The observable A_o = 1·∣μ₁⟩⟨μ₁∣ₒ + 2·∣μ₂⟩⟨μ₂∣ₒ.
    pub fn observable(&self) -> Operator {
        let mut m = self.mu1().projector();
        m.add_assign_scaled(&self.mu2().projector(), 2.0);
        m
    }
}

/// The two outcomes of a yes-no measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Mu1,
    Mu2,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Mu1 => "mu1",
            Branch::Mu2 => "mu2",
        }
    }
}

/// Result of selecting one branch of a yes-no measurement on ∣ω⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    pub branch: Branch,
    /// Probability of the branch; the two branches sum to 1.
    pub probability: f64,
    /// The normalized subsystem state left behind by the collapse.
    pub conditional_state: StateVector,
}

/// The unique (q, λ)-measurement that induces a given (p, θ)-decomposition:
/// q = √(w/r)·p and λ = 2π − θ (wrapped into [0, 2π)).
///
/// q is evaluated as q² = p²(1−r) / (p²(1−r) + (1−p²)r), the same quantity
/// with the weight substituted in; this form is a ratio of nonnegative
/// terms and stays exact at the boundaries p ∈ {0, 1}.
pub fn measurement_for_decomposition(rho: &MinimalMixture, range: &RangeState) -> YesNoMeasurement {
    let r = rho.r();
    let p_sq = range.p() * range.p();
    let favored = p_sq * (1.0 - r);
    let q = (favored / (favored + (1.0 - p_sq) * r)).sqrt().min(1.0);
    let lambda = canonical_angle(TAU - range.theta());
    YesNoMeasurement::new(q, lambda).expect("q ∈ [0, 1] is guaranteed by the weight bounds")
}

/// The (p, θ)-decomposition induced by a given (q, λ)-measurement:
/// w = (2r−1)q² + (1−r), p = √(r/w)·q, θ = 2π − λ. Returns the range state
/// and the weight of its branch. The division is safe because w ≥ r > 0.
///
/// The weight is evaluated as the convex form w = rq² + (1−r)(1−q²), which
/// is the same polynomial without the cancelling term and is exact at the
/// boundaries q ∈ {0, 1}.
pub fn decomposition_for_measurement(
    rho: &MinimalMixture,
    m: &YesNoMeasurement,
) -> (RangeState, f64) {
    let r = rho.r();
    let q_sq = m.q() * m.q();
    let favored = r * q_sq;
    let w = favored + (1.0 - r) * (1.0 - q_sq);
    let p = (favored / w).sqrt().min(1.0);
    let theta = canonical_angle(TAU - m.lambda());
    let range = RangeState::new(p, theta).expect("p ∈ [0, 1] by the weight bounds");
    (range, w)
}

/// Selective ideal measurement: projects ∣ω⟩ with ∣μ_branch⟩⟨μ_branch∣ ⊗ 1
/// and normalizes. The branch probability is the squared norm of the
/// projected vector, and the conditional state is the corresponding member
/// of the induced decomposition (up to global phase).
pub fn luders_select(
    omega: &SchmidtState,
    m: &YesNoMeasurement,
    branch: Branch,
) -> Result<MeasurementOutcome> {
    let unnormalized = project_branch(omega, &m.mu(branch));
    let probability: f64 = unnormalized.iter().map(|a| a.norm_sqr()).sum();
    if probability < MIN_BRANCH_PROBABILITY {
        return Err(Error::VanishingBranch { probability });
    }
    let conditional_state = StateVector::normalized(unnormalized.to_vec())?;
    Ok(MeasurementOutcome {
        branch,
        probability,
        conditional_state,
    })
}

/// Partial inner product (⟨μ∣ₒ ⊗ 1)∣ω⟩: the unnormalized subsystem vector
/// of the branch.
fn project_branch(omega: &SchmidtState, mu: &StateVector) -> [C64; 2] {
    let mut out = [C64::new(0.0, 0.0); 2];
    for (s, amp) in out.iter_mut().enumerate() {
        for o in 0..2 {
            *amp += mu.amp(o).conj() * omega.composite.amp(o, s);
        }
    }
    out
}

/// Nonselective ideal measurement of the observable: converts ∣ω⟩⟨ω∣ into
/// Σᵢ ∣μᵢ⟩⟨μᵢ∣ₒ ⊗ ∣φᵢ′⟩⟨φᵢ′∣, whose subsystem partial trace is still ρ.
pub fn nonselective_measure(omega: &SchmidtState, m: &YesNoMeasurement) -> Operator {
    let mut out = Operator::zeros(4);
    for branch in [Branch::Mu1, Branch::Mu2] {
        let mu = m.mu(branch);
        let sub = project_branch(omega, &mu);
        // amplitudes of ∣μ⟩ ⊗ ∣φ′⟩ in the (o, s) ↦ 2o+s convention
        let mut component = [C64::new(0.0, 0.0); 4];
        for o in 0..2 {
            for s in 0..2 {
                component[2 * o + s] = mu.amp(o) * sub[s];
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let add = component[i] * component[j].conj();
                out.set(i, j, out.entry(i, j) + add);
            }
        }
    }
    out
}

/// True iff measuring the observable leaves the subsystem decomposition
/// orthogonal, i.e. iff [A_o, ρ_o] = 0 within [`COMMUTATOR_TOL`]. For a
/// nondegenerate mixture this holds exactly when the eigenbasis is the
/// Schmidt basis (q ∈ {0, 1}); for r = 1/2 the opposite state is a multiple
/// of the identity and every measurement qualifies.
pub fn is_distant_measurement(omega: &SchmidtState, m: &YesNoMeasurement) -> bool {
    let rho_o = partial_trace_subsystem(&omega.composite);
    let a_o = m.observable();
    let comm = a_o
        .commutator(&rho_o)
        .expect("observable and opposite state share dimension 2");
    comm.max_abs() <= COMMUTATOR_TOL
}
