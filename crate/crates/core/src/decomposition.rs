//! Two-term decompositions of a rank-2 mixed state.
//!
//! A minimal-term mixture ρ = r∣1⟩⟨1∣ + (1−r)∣2⟩⟨2∣ with 0 < r ≤ 1/2 admits,
//! for every pure state ∣φ⟩ in its range, exactly one decomposition
//! ρ = w∣φ⟩⟨φ∣ + (1−w)∣φ^c⟩⟨φ^c∣. This module parametrizes the range states
//! by (p, θ), computes the weight and the counter state in closed form,
//! inverts the weight map, and provides the under/over-weight split used to
//! certify uniqueness.
//!
//! All states are expressed in the eigenbasis of the mixture: the canonical
//! (e₁, e₂) stands in for the eigenvectors belonging to r and 1−r.

use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::states::{Operator, StateVector};

/// Wraps an angle into [0, 2π).
pub(crate) fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Spectral data of a rank-2 state operator, diag(r, 1−r) in its eigenbasis.
///
/// The smaller eigenvalue r lies in (0, 1/2]; r = 1/2 is the degenerate case
/// in which every two-term decomposition is orthogonal and carries weight 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalMixture {
    r: f64,
}

impl MinimalMixture {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 || r > 0.5 {
            return Err(Error::OutOfDomain {
                name: "r",
                value: r,
                domain: "(0, 1/2]",
            });
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Both eigenvalues coincide at 1/2; the eigenbasis is then non-unique
    /// and the weight map below becomes constant.
    pub fn is_degenerate(&self) -> bool {
        self.r == 0.5
    }

    /// The state operator diag(r, 1−r).
    pub fn operator(&self) -> Operator {
        Operator::diagonal(&[self.r, 1.0 - self.r])
    }

    /// Statistical weight of the (p, θ)-range state in the unique two-term
    /// decomposition through it:
    ///
    /// w = r(1−r) / (p²(1−r) + (1−p²)r),
    ///
    /// always inside [r, 1−r]; the denominator is strictly positive on the
    /// whole domain. θ does not enter.
    pub fn weight_for(&self, range: &RangeState) -> f64 {
        let r = self.r;
        let p_sq = range.p * range.p;
        r * (1.0 - r) / (p_sq * (1.0 - r) + (1.0 - p_sq) * r)
    }

    /// Solves the weight formula for p. Only meaningful for nondegenerate
    /// mixtures (r < 1/2, where p ↦ w is a strictly decreasing bijection of
    /// [0,1] onto [r, 1−r]); closed form p² = r(1−r−w) / (w(1−2r)).
    pub fn p_for_weight(&self, w: f64) -> Result<f64> {
        if self.is_degenerate() {
            return Err(Error::DegenerateWeight);
        }
        if !w.is_finite() || w < self.r - 1e-12 || w > 1.0 - self.r + 1e-12 {
            return Err(Error::OutOfDomain {
                name: "w",
                value: w,
                domain: "[r, 1-r]",
            });
        }
        let r = self.r;
        let p_sq = r * (1.0 - r - w) / (w * (1.0 - 2.0 * r));
        Ok(p_sq.clamp(0.0, 1.0).sqrt())
    }

    /// The unique two-term decomposition of ρ through the given range state:
    /// the weight, the state itself, and its counter state
    ///
    /// ∣φ^c⟩ = √((r − wp²)/(1−w)) ∣1⟩ + √(((1−r) − w(1−p²))/(1−w)) e^{i(θ+π)} ∣2⟩.
    ///
    /// With w substituted in, the radicand numerators reduce to
    /// r²(1−p²)/denom and (1−r)²p²/denom — products of nonnegative terms,
    /// evaluated in that form so they vanish exactly at p ∈ {0, 1} instead
    /// of leaving √(rounding) residue in the counter state. The clamp below
    /// is therefore a guard only; rounding noise down to −1e−9 would be
    /// clamped to zero, anything lower signals inconsistent inputs.
    pub fn decompose(&self, range: &RangeState) -> Result<PairDecomposition> {
        let r = self.r;
        let p_sq = range.p * range.p;
        let denom = p_sq * (1.0 - r) + (1.0 - p_sq) * r;
        let w = r * (1.0 - r) / denom;
        let counter_weight = 1.0 - w;
        let a = sqrt_clamped(r * r * (1.0 - p_sq) / denom / counter_weight)?;
        let b = sqrt_clamped((1.0 - r) * (1.0 - r) * p_sq / denom / counter_weight)?;
        let counter =
            StateVector::new(vec![C64::new(a, 0.0), C64::from_polar(b, range.theta + PI)])?;
        Ok(PairDecomposition {
            weight: w,
            state: range.vector(),
            counter,
        })
    }

    /// Splits off a fraction `s` ∈ (0, 1] of the maximal pure-component
    /// weight and returns the residual state ρ′ with
    /// ρ = ws∣φ⟩⟨φ∣ + (1−ws)ρ′:
    ///
    /// ρ′ = ((w−ws)/(1−ws)) ∣φ⟩⟨φ∣ + ((1−w)/(1−ws)) ∣φ^c⟩⟨φ^c∣.
    ///
    /// At s = 1 the residual is the pure counter state; for s > 1 no valid
    /// residual exists (see [`MinimalMixture::verify_no_overweight`]).
    pub fn split_residual(&self, range: &RangeState, s: f64) -> Result<Operator> {
        if !s.is_finite() || s <= 0.0 || s > 1.0 {
            return Err(Error::OutOfDomain {
                name: "s",
                value: s,
                domain: "(0, 1]",
            });
        }
        let d = self.decompose(range)?;
        let w = d.weight;
        let ws = w * s;
        let mut residual = d.state.projector().scaled((w - ws) / (1.0 - ws));
        residual.add_assign_scaled(&d.counter.projector(), (1.0 - w) / (1.0 - ws));
        Ok(residual)
    }

    /// Confirms that extracting more than the maximal weight of ∣φ⟩⟨φ∣ is
    /// impossible: for s > 1 (with ws < 1) the candidate residual
    /// (ρ − ws∣φ⟩⟨φ∣)/(1−ws) is never positive semidefinite. Returns true
    /// when the candidate indeed fails PSD, i.e. when the impossibility is
    /// confirmed. Eigenvalues below −1e−9 count as negative.
    pub fn verify_no_overweight(&self, range: &RangeState, s: f64) -> Result<bool> {
        if !s.is_finite() || s <= 1.0 {
            return Err(Error::OutOfDomain {
                name: "s",
                value: s,
                domain: "(1, ∞) with w·s < 1",
            });
        }
        let d = self.decompose(range)?;
        let ws = d.weight * s;
        if ws >= 1.0 {
            return Err(Error::OutOfDomain {
                name: "w*s",
                value: ws,
                domain: "[0, 1) (the split degenerates at w·s = 1)",
            });
        }
        let candidate = self
            .operator()
            .sub(&d.state.projector().scaled(ws))?
            .scaled((1.0 - ws).recip());
        let low = candidate.eigenvalues_hermitian_2x2()?[0];
        Ok(low < -PSD_EIGENVALUE_TOL)
    }
}

/// Eigenvalues above this (in magnitude) are treated as genuinely nonzero
/// when classifying residuals as non-PSD or mixed; well above accumulation
/// error at dimension 2.
pub const PSD_EIGENVALUE_TOL: f64 = 1e-9;

fn sqrt_clamped(radicand: f64) -> Result<f64> {
    if radicand < -PSD_EIGENVALUE_TOL {
        return Err(Error::NegativeRadicand { value: radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// The (p, θ) parametrization of a pure state in the range of ρ:
/// ∣φ⟩ = p∣1⟩ + √(1−p²) e^{iθ} ∣2⟩, p ∈ [0,1], θ ∈ [0, 2π).
///
/// θ is physically undefined at p ∈ {0, 1} and canonicalized to 0 there,
/// which makes equality of parametrizations testable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeState {
    p: f64,
    theta: f64,
}

impl RangeState {
    pub fn new(p: f64, theta: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfDomain {
                name: "p",
                value: p,
                domain: "[0, 1]",
            });
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "theta" });
        }
        let theta = if p == 0.0 || p == 1.0 {
            0.0
        } else {
            canonical_angle(theta)
        };
        Ok(Self { p, theta })
    }

    /// Reads the parametrization off a dimension-2 state vector, discarding
    /// the global phase: p = ∣a₁∣, θ = arg(a₂) − arg(a₁).
    pub fn from_vector(v: &StateVector) -> Result<Self> {
        if v.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: v.dim(),
            });
        }
        let p = v.amp(0).norm().min(1.0);
        let theta = if p == 0.0 || p == 1.0 {
            0.0
        } else {
            v.amp(1).arg() - v.amp(0).arg()
        };
        Self::new(p, theta)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The state vector p∣1⟩ + √(1−p²) e^{iθ} ∣2⟩.
    pub fn vector(&self) -> StateVector {
        let p_perp = (1.0 - self.p * self.p).max(0.0).sqrt();
        StateVector::new(vec![
            C64::new(self.p, 0.0),
            C64::from_polar(p_perp, self.theta),
        ])
        .expect("(p, θ) parametrization is normalized by construction")
    }
}

/// The unique two-term decomposition ρ = w∣φ⟩⟨φ∣ + (1−w)∣φ^c⟩⟨φ^c∣.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDecomposition {
    /// Weight of `state`; always inside [r, 1−r].
    pub weight: f64,
    /// The chosen range state ∣φ⟩.
    pub state: StateVector,
    /// Its counter state ∣φ^c⟩, carrying weight 1 − w.
    pub counter: StateVector,
}

impl PairDecomposition {
    pub fn counter_weight(&self) -> f64 {
        1.0 - self.weight
    }

    /// w∣φ⟩⟨φ∣ + (1−w)∣φ^c⟩⟨φ^c∣, for residual checks against diag(r, 1−r).
    pub fn reconstruct(&self) -> Operator {
        let mut m = self.state.projector().scaled(self.weight);
        m.add_assign_scaled(&self.counter.projector(), 1.0 - self.weight);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::states_equal_up_to_phase;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    /// Independent oracle: rebuilds w∣φ⟩⟨φ∣ + (1−w)∣φ^c⟩⟨φ^c∣ with raw
    /// complex arithmetic (no Operator machinery) and returns the max-norm
    /// deviation from diag(r, 1−r).
    fn reconstruction_residual_oracle(r: f64, d: &PairDecomposition) -> f64 {
        let f = d.state.amps();
        let g = d.counter.amps();
        let w = d.weight;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let val = f[i] * f[j].conj() * w + g[i] * g[j].conj() * (1.0 - w);
                let expect = if i == j {
                    if i == 0 {
                        r
                    } else {
                        1.0 - r
                    }
                } else {
                    0.0
                };
                worst = worst.max((val - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn range_state_recovers_the_basis_cases() {
        let e1 = RangeState::new(1.0, 0.0).unwrap().vector();
        assert_eq!(e1, StateVector::basis(2, 0));
        let e2 = RangeState::new(0.0, 0.0).unwrap().vector();
        assert_eq!(e2, StateVector::basis(2, 1));
    }

    #[test]
    fn equal_superposition_is_the_interference_state() {
        let psi = RangeState::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
            .unwrap()
            .vector();
        let expect = StateVector::new(vec![
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap();
        assert!(states_equal_up_to_phase(&psi, &expect, 1e-12).unwrap());
    }

    #[test]
    fn weight_hits_its_bounds_at_the_basis_states() {
        for r in [0.05, 0.2, 0.37, 0.5] {
            let rho = MinimalMixture::new(r).unwrap();
            let w1 = rho.weight_for(&RangeState::new(1.0, 0.0).unwrap());
            assert_abs_diff_eq!(w1, r, epsilon = 1e-15);
            let w0 = rho.weight_for(&RangeState::new(0.0, 0.0).unwrap());
            assert_abs_diff_eq!(w0, 1.0 - r, epsilon = 1e-15);
        }
    }

    #[test]
    fn degenerate_mixture_has_constant_weight_one_half() {
        let rho = MinimalMixture::new(0.5).unwrap();
        for p in [0.0, 0.3, 0.71, 1.0] {
            for theta in [0.0, 1.0, 4.5] {
                let w = rho.weight_for(&RangeState::new(p, theta).unwrap());
                assert_abs_diff_eq!(w, 0.5, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn frozen_weight_value_and_reconstruction() {
        // oracle value 35/74, cross-checked by matrix reconstruction
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        let w = rho.weight_for(&rs);
        assert_abs_diff_eq!(w, 0.472_972_972_972_973, epsilon = 1e-12);
        assert_abs_diff_eq!(w, 35.0 / 74.0, epsilon = 1e-15);
        let d = rho.decompose(&rs).unwrap();
        assert!(reconstruction_residual_oracle(0.3, &d) <= 1e-12);
    }

    #[test]
    fn whole_weight_on_an_eigenstate_makes_the_counter_the_other_eigenstate() {
        let rho = MinimalMixture::new(0.3).unwrap();
        let d = rho.decompose(&RangeState::new(1.0, 0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(d.weight, 0.3, epsilon = 1e-15);
        assert!(states_equal_up_to_phase(&d.state, &StateVector::basis(2, 0), 1e-12).unwrap());
        assert!(states_equal_up_to_phase(&d.counter, &StateVector::basis(2, 1), 1e-12).unwrap());
    }

    #[test]
    fn degenerate_counter_state_is_the_orthogonal_complement() {
        // ∣φ^c⟩ = √(1−p²)∣1⟩ − p e^{iθ}∣2⟩ at r = 1/2
        let rho = MinimalMixture::new(0.5).unwrap();
        for (p, theta) in [(0.6, 0.0), (0.3, 1.2), (0.9, 5.0)] {
            let rs = RangeState::new(p, theta).unwrap();
            let d = rho.decompose(&rs).unwrap();
            let p_perp = (1.0 - p * p).sqrt();
            let expect =
                StateVector::new(vec![C64::new(p_perp, 0.0), -C64::from_polar(p, theta)]).unwrap();
            assert!(states_equal_up_to_phase(&d.counter, &expect, 1e-12).unwrap());
            assert_abs_diff_eq!(
                d.state.inner(&d.counter).unwrap().norm(),
                0.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn frozen_counter_state_amplitudes() {
        // oracle: reconstruction of diag(0.3, 0.7) to 1e-12; frozen values
        // computed from the closed forms with an independent reference
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, FRAC_PI_4).unwrap();
        let d = rho.decompose(&rs).unwrap();
        assert_abs_diff_eq!(d.weight, 0.472_972_972_972_973, epsilon = 1e-12);
        assert_abs_diff_eq!(
            d.counter.amp(0).re,
            0.496_138_938_356_833_87,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(d.counter.amp(0).im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            d.counter.amp(1).norm(),
            0.868_243_142_124_459_2,
            epsilon = 1e-12
        );
        // phase of the second amplitude is θ + π
        assert_abs_diff_eq!(
            canonical_angle(d.counter.amp(1).arg()),
            canonical_angle(FRAC_PI_4 + PI),
            epsilon = 1e-12
        );
        assert!(reconstruction_residual_oracle(0.3, &d) <= 1e-12);
    }

    #[test]
    fn weight_inversion_closed_form() {
        let rho = MinimalMixture::new(0.3).unwrap();
        assert_abs_diff_eq!(rho.p_for_weight(0.3).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.p_for_weight(0.7).unwrap(), 0.0, epsilon = 1e-12);
        // frozen: p = √0.3; oracle = substitute back into the weight formula
        let p = rho.p_for_weight(0.5).unwrap();
        assert_abs_diff_eq!(p, 0.547_722_557_505_166_1, epsilon = 1e-12);
        let w_back = rho.weight_for(&RangeState::new(p, 0.0).unwrap());
        assert_abs_diff_eq!(w_back, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn weight_inversion_rejects_out_of_domain_inputs() {
        let rho = MinimalMixture::new(0.3).unwrap();
        assert!(matches!(
            rho.p_for_weight(0.2),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            rho.p_for_weight(0.8),
            Err(Error::OutOfDomain { .. })
        ));
        let degenerate = MinimalMixture::new(0.5).unwrap();
        assert!(matches!(
            degenerate.p_for_weight(0.5),
            Err(Error::DegenerateWeight)
        ));
    }

    #[test]
    fn weight_inversion_roundtrip() {
        let rho = MinimalMixture::new(0.17).unwrap();
        for p in [0.0, 0.1, 0.43, 0.68, 0.95, 1.0] {
            let w = rho.weight_for(&RangeState::new(p, 0.0).unwrap());
            assert_abs_diff_eq!(rho.p_for_weight(w).unwrap(), p, epsilon = 1e-12);
        }
    }

    #[test]
    fn half_weight_occurs_at_p_equal_sqrt_r() {
        // closed form gives p² = r at w = 1/2 for every nondegenerate r
        for r in [0.1, 0.3, 0.49] {
            let rho = MinimalMixture::new(r).unwrap();
            assert_abs_diff_eq!(rho.p_for_weight(0.5).unwrap(), r.sqrt(), epsilon = 1e-12);
            let w = rho.weight_for(&RangeState::new(r.sqrt(), 0.0).unwrap());
            assert_abs_diff_eq!(w, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn full_split_leaves_the_pure_counter_state() {
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        let residual = rho.split_residual(&rs, 1.0).unwrap();
        let d = rho.decompose(&rs).unwrap();
        assert!(residual.sub(&d.counter.projector()).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn tiny_split_still_reconstructs_exactly() {
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        let s = 1e-6;
        let residual = rho.split_residual(&rs, s).unwrap();
        let d = rho.decompose(&rs).unwrap();
        let ws = d.weight * s;
        let mut rebuilt = d.state.projector().scaled(ws);
        rebuilt.add_assign_scaled(&residual, 1.0 - ws);
        assert!(rebuilt.sub(&rho.operator()).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn split_residual_is_a_valid_state() {
        // oracle: explicit eigenvalue check of the 2×2 matrix
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        let residual = rho.split_residual(&rs, 0.5).unwrap();
        residual.validate_state(1e-10).unwrap();
        let [low, high] = residual.eigenvalues_hermitian_2x2().unwrap();
        assert!(low >= -1e-12);
        assert_abs_diff_eq!(low + high, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn split_rejects_out_of_range_fractions() {
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        assert!(rho.split_residual(&rs, 0.0).is_err());
        assert!(rho.split_residual(&rs, -0.1).is_err());
        assert!(rho.split_residual(&rs, 1.0 + 1e-9).is_err());
    }

    #[test]
    fn overweight_split_is_never_a_state() {
        // oracle: hand-computed candidate matrix and its eigenvalue signs
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        assert!(rho.verify_no_overweight(&rs, 1.1).unwrap());

        let candidate_low = {
            let w = rho.weight_for(&rs);
            let ws = w * 1.1;
            let f = rs.vector();
            let m00 = (0.3 - ws * f.amp(0).norm_sqr()) / (1.0 - ws);
            let m11 = (0.7 - ws * f.amp(1).norm_sqr()) / (1.0 - ws);
            let m01 = -ws * (f.amp(0) * f.amp(1).conj()).norm() / (1.0 - ws);
            let mid = 0.5 * (m00 + m11);
            mid - (0.5 * (m00 - m11)).hypot(m01)
        };
        assert!(candidate_low < -1e-9);

        let degenerate = MinimalMixture::new(0.5).unwrap();
        let rs45 = RangeState::new(std::f64::consts::FRAC_1_SQRT_2, 0.0).unwrap();
        assert!(degenerate.verify_no_overweight(&rs45, 1.5).unwrap());
    }

    #[test]
    fn overweight_check_rejects_degenerate_splits() {
        let rho = MinimalMixture::new(0.3).unwrap();
        let rs = RangeState::new(0.6, 0.0).unwrap();
        // s = 1 is the valid-split boundary, not an overweight case
        assert!(rho.verify_no_overweight(&rs, 1.0).is_err());
        // w = 0.95 at p = 0 for r = 0.05, so s = 1.1 pushes ws past 1
        let rho = MinimalMixture::new(0.05).unwrap();
        let rs0 = RangeState::new(0.0, 0.0).unwrap();
        assert!(matches!(
            rho.verify_no_overweight(&rs0, 1.1),
            Err(Error::OutOfDomain { name: "w*s", .. })
        ));
    }

    #[test]
    fn radicand_clamping_separates_noise_from_errors() {
        assert_eq!(sqrt_clamped(-1e-13).unwrap(), 0.0);
        assert_eq!(sqrt_clamped(-1e-10).unwrap(), 0.0);
        assert!(matches!(
            sqrt_clamped(-1e-8),
            Err(Error::NegativeRadicand { .. })
        ));
        assert_abs_diff_eq!(sqrt_clamped(0.25).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn parameters_are_canonicalized() {
        let rs = RangeState::new(1.0, 2.5).unwrap();
        assert_eq!(rs.theta(), 0.0);
        let rs = RangeState::new(0.5, -FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(rs.theta(), TAU - FRAC_PI_4, epsilon = 1e-15);
        let rs = RangeState::new(0.5, TAU + 1.0).unwrap();
        assert_abs_diff_eq!(rs.theta(), 1.0, epsilon = 1e-15);
        assert!(RangeState::new(1.2, 0.0).is_err());
        assert!(RangeState::new(0.5, f64::NAN).is_err());
        assert!(MinimalMixture::new(0.0).is_err());
        assert!(MinimalMixture::new(0.6).is_err());
    }

    #[test]
    fn parametrization_roundtrips_through_the_vector() {
        for (p, theta) in [(0.3, 1.0), (0.999, 6.0), (0.0, 2.0), (1.0, 2.0)] {
            let rs = RangeState::new(p, theta).unwrap();
            let back = RangeState::from_vector(&rs.vector()).unwrap();
            assert_abs_diff_eq!(back.p(), rs.p(), epsilon = 1e-15);
            assert_abs_diff_eq!(back.theta(), rs.theta(), epsilon = 1e-12);
        }
    }

    #[test]
    fn counter_of_the_counter_returns_the_state() {
        let rho = MinimalMixture::new(0.3).unwrap();
        for (p, theta) in [(0.6, FRAC_PI_4), (0.2, 5.9), (0.95, 3.3)] {
            let rs = RangeState::new(p, theta).unwrap();
            let d = rho.decompose(&rs).unwrap();
            let counter_rs = RangeState::from_vector(&d.counter).unwrap();
            let dd = rho.decompose(&counter_rs).unwrap();
            assert!(states_equal_up_to_phase(&dd.counter, &d.state, 1e-12).unwrap());
            assert_abs_diff_eq!(dd.weight, 1.0 - d.weight, epsilon = 1e-12);
        }
    }
}
