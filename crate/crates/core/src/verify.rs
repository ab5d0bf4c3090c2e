//! Self-verification suites: the invariant grids and randomized checks
//! behind the `verify` command, reporting max residuals per identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::TAU;

use crate::decomposition::{MinimalMixture, RangeState, PSD_EIGENVALUE_TOL};
use crate::distant::{
    decomposition_for_measurement, is_distant_measurement, luders_select,
    measurement_for_decomposition, nonselective_measure, purify, Branch, YesNoMeasurement,
};
use crate::json;
use crate::states::IDENTITY_TOL;

/// Parameter grid over (r, p, θ) — and, mirrored, over (q, λ).
///
/// r takes `r_steps` values (1/2)·k/r_steps, k = 1..=r_steps; p and q take
/// `p_steps`+1 values j/p_steps including both boundaries; θ and λ take
/// `theta_steps` values m·2π/theta_steps. The default reproduces the
/// acceptance grid: r ∈ {0.05, …, 0.5}, p ∈ {0, 0.1, …, 1},
/// θ ∈ {0, π/4, …, 7π/4}.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub r_steps: usize,
    pub p_steps: usize,
    pub theta_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_steps: 10,
            p_steps: 10,
            theta_steps: 8,
        }
    }
}

impl GridSpec {
    pub fn with_steps(steps: usize) -> Self {
        Self {
            r_steps: steps.max(1),
            p_steps: steps.max(1),
            theta_steps: 8,
        }
    }

    fn r_values(&self) -> Vec<f64> {
        (1..=self.r_steps)
            .map(|k| 0.5 * k as f64 / self.r_steps as f64)
            .collect()
    }

    fn p_values(&self) -> Vec<f64> {
        (0..=self.p_steps)
            .map(|j| j as f64 / self.p_steps as f64)
            .collect()
    }

    fn theta_values(&self) -> Vec<f64> {
        (0..self.theta_steps)
            .map(|m| TAU * m as f64 / self.theta_steps as f64)
            .collect()
    }
}

/// Outcome of one check: how many cases ran, how many violated the
/// tolerance, and the worst residual seen (where the check measures one).
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn from_residuals(
        name: &'static str,
        tolerance: f64,
        residuals: impl IntoIterator<Item = f64>,
    ) -> Self {
        let mut cases = 0;
        let mut violations = 0;
        let mut max_residual: f64 = 0.0;
        for r in residuals {
            cases += 1;
            max_residual = max_residual.max(r);
            if r > tolerance {
                violations += 1;
            }
        }
        Self {
            name,
            cases,
            violations,
            max_residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "cases": self.cases,
            "violations": self.violations,
            "max_residual": json::number(self.max_residual),
            "tolerance": json::number(self.tolerance),
            "passed": self.passed(),
        })
    }
}

/// Aggregate of every suite; `passed` commands the process exit status.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
        })
    }
}

fn grid_points(grid: &GridSpec) -> Vec<(MinimalMixture, RangeState)> {
    let mut out = Vec::new();
    for &r in &grid.r_values() {
        let rho = MinimalMixture::new(r).expect("grid r values lie in (0, 1/2]");
        for &p in &grid.p_values() {
            for &theta in &grid.theta_values() {
                let rs = RangeState::new(p, theta).expect("grid (p, θ) values are valid");
                out.push((rho, rs));
            }
        }
    }
    out
}

/// Max-norm residual of w∣φ⟩⟨φ∣ + (1−w)∣φ^c⟩⟨φ^c∣ − diag(r, 1−r) over the
/// grid.
pub fn reconstruction(grid: &GridSpec) -> CheckResult {
    CheckResult::from_residuals(
        "reconstruction",
        IDENTITY_TOL,
        grid_points(grid).iter().map(|(rho, rs)| {
            let d = rho.decompose(rs).expect("grid inputs are consistent");
            d.reconstruct()
                .sub(&rho.operator())
                .expect("dimensions agree")
                .max_abs()
        }),
    )
}

/// Violation of r ≤ w ≤ 1−r over the grid; the residual is the overshoot,
/// allowed a few ulps of rounding at the boundary points.
pub fn weight_bounds(grid: &GridSpec) -> CheckResult {
    CheckResult::from_residuals(
        "weight_bounds",
        1e-15,
        grid_points(grid).iter().map(|(rho, rs)| {
            let w = rho.weight_for(rs);
            (rho.r() - w).max(w - (1.0 - rho.r())).max(0.0)
        }),
    )
}

/// Strict decrease of w in p² for nondegenerate r: residual is the worst
/// non-decrease between consecutive grid values of p.
pub fn weight_monotonicity(grid: &GridSpec) -> CheckResult {
    let mut residuals = Vec::new();
    for &r in &grid.r_values() {
        if r >= 0.5 {
            continue;
        }
        let rho = MinimalMixture::new(r).expect("grid r values are valid");
        let ps = grid.p_values();
        for pair in ps.windows(2) {
            let w_lo = rho.weight_for(&RangeState::new(pair[0], 0.0).expect("valid p"));
            let w_hi = rho.weight_for(&RangeState::new(pair[1], 0.0).expect("valid p"));
            // p² increased, so w must strictly decrease
            residuals.push((w_hi - w_lo).max(0.0));
        }
    }
    CheckResult::from_residuals("weight_monotonicity", 0.0, residuals)
}

/// Degenerate case r = 1/2: w = 1/2 and ⟨φ^c∣φ⟩ = 0 for every (p, θ).
pub fn degenerate_case(grid: &GridSpec) -> CheckResult {
    let rho = MinimalMixture::new(0.5).expect("1/2 is a valid eigenvalue");
    let mut residuals = Vec::new();
    for &p in &grid.p_values() {
        for &theta in &grid.theta_values() {
            let rs = RangeState::new(p, theta).expect("grid values are valid");
            let d = rho
                .decompose(&rs)
                .expect("degenerate inputs are consistent");
            residuals.push((d.weight - 0.5).abs());
            residuals.push(d.state.inner(&d.counter).expect("equal dimensions").norm());
        }
    }
    CheckResult::from_residuals("degenerate_case", IDENTITY_TOL, residuals)
}

/// Closure of (p, θ) → (q, λ) → (p, θ) and (q, λ) → (p, θ) → (q, λ) over
/// the grid, boundaries included.
pub fn roundtrip(grid: &GridSpec) -> CheckResult {
    let mut residuals = Vec::new();
    for (rho, rs) in grid_points(grid) {
        let m = measurement_for_decomposition(&rho, &rs);
        let (back, _) = decomposition_for_measurement(&rho, &m);
        residuals.push((back.p() - rs.p()).abs());
        residuals.push(angle_distance(back.theta(), rs.theta()));
    }
    // reverse direction: the same lattice read as (q, λ)
    for &r in &grid.r_values() {
        let rho = MinimalMixture::new(r).expect("grid r values are valid");
        for &q in &grid.p_values() {
            for &lambda in &grid.theta_values() {
                let m = YesNoMeasurement::new(q, lambda).expect("grid (q, λ) values are valid");
                let (rs, _) = decomposition_for_measurement(&rho, &m);
                let back = measurement_for_decomposition(&rho, &rs);
                residuals.push((back.q() - m.q()).abs());
                residuals.push(angle_distance(back.lambda(), m.lambda()));
            }
        }
    }
    CheckResult::from_residuals("roundtrip_bijection", IDENTITY_TOL, residuals)
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(TAU - d)
}

/// Agreement of the three routes to the weight: the (p, θ) formula, the
/// (q, λ) formula, and the selective branch probability.
pub fn weight_three_ways(grid: &GridSpec) -> CheckResult {
    CheckResult::from_residuals(
        "weight_three_ways",
        IDENTITY_TOL,
        grid_points(grid).iter().map(|(rho, rs)| {
            let w_range = rho.weight_for(rs);
            let m = measurement_for_decomposition(rho, rs);
            let (_, w_measurement) = decomposition_for_measurement(rho, &m);
            let omega = purify(rho);
            let w_selective = luders_select(&omega, &m, Branch::Mu1)
                .expect("grid branch probabilities are bounded below by r")
                .probability;
            (w_range - w_measurement)
                .abs()
                .max((w_range - w_selective).abs())
        }),
    )
}

/// Selective branch states match the decomposition pair up to phase, and
/// the eigenbasis stays orthonormal, over the grid.
pub fn selective_branches(grid: &GridSpec) -> CheckResult {
    CheckResult::from_residuals(
        "selective_branch_states",
        IDENTITY_TOL,
        grid_points(grid).iter().flat_map(|(rho, rs)| {
            let d = rho.decompose(rs).expect("grid inputs are consistent");
            let m = measurement_for_decomposition(rho, rs);
            let omega = purify(rho);
            let mu_orthogonality = m.mu1().inner(&m.mu2()).expect("equal dimensions").norm();
            let phase_residual = |branch: Branch, target: &crate::states::StateVector| {
                let out = luders_select(&omega, &m, branch).expect("branch probability ≥ r");
                1.0 - out
                    .conditional_state
                    .inner(target)
                    .expect("equal dimensions")
                    .norm()
            };
            [
                mu_orthogonality,
                phase_residual(Branch::Mu1, &d.state),
                phase_residual(Branch::Mu2, &d.counter),
            ]
        }),
    )
}

/// Nonselective output is a composite state whose subsystem trace is ρ.
pub fn nonselective_consistency(grid: &GridSpec) -> CheckResult {
    CheckResult::from_residuals(
        "nonselective_consistency",
        IDENTITY_TOL,
        grid_points(grid).iter().map(|(rho, rs)| {
            let m = measurement_for_decomposition(rho, rs);
            let omega = purify(rho);
            let mixed = nonselective_measure(&omega, &m);
            let trace_residual = (mixed.trace().re - 1.0).abs();
            let sub_residual = mixed
                .trace_out_opposite()
                .expect("composite operator is 4×4")
                .sub(&rho.operator())
                .expect("dimensions agree")
                .max_abs();
            trace_residual.max(sub_residual)
        }),
    )
}

fn random_mixture(rng: &mut ChaCha8Rng) -> MinimalMixture {
    MinimalMixture::new(rng.random_range(1e-3..=0.5)).expect("sampled r lies in (0, 1/2]")
}

fn random_range_state(rng: &mut ChaCha8Rng) -> RangeState {
    RangeState::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..TAU))
        .expect("sampled (p, θ) lies in the domain")
}

/// Uniqueness of the two-term decomposition: for random weights w″ ≠ w the
/// candidate residual (ρ − w″∣φ⟩⟨φ∣)/(1−w″) is never pure — its smaller
/// eigenvalue stays away from zero (or goes negative). The residual
/// recorded is the shortfall below the eigenvalue floor.
pub fn uniqueness_random(cases: u64, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residuals = Vec::with_capacity(cases as usize);
    for _ in 0..cases {
        let rho = random_mixture(&mut rng);
        let rs = random_range_state(&mut rng);
        let w = rho.weight_for(&rs);
        let w_other = loop {
            let candidate: f64 = rng.random_range(1e-3..1.0);
            if (candidate - w).abs() >= 1e-6 {
                break candidate;
            }
        };
        let candidate = rho
            .operator()
            .sub(&rs.vector().projector().scaled(w_other))
            .expect("dimensions agree")
            .scaled((1.0 - w_other).recip());
        let low = candidate
            .eigenvalues_hermitian_2x2()
            .expect("candidate is 2×2")[0];
        // pure would need ∣low∣ ≈ 0; require it beyond the PSD floor
        residuals.push((PSD_EIGENVALUE_TOL - low.abs()).max(0.0));
    }
    CheckResult::from_residuals("uniqueness_random", 0.0, residuals)
}

/// Boundary of the under/over-weight split: for s ∈ (0, 1] the residual is
/// a valid state reconstructing ρ; for s > 1 (kept inside ws < 1) the
/// candidate is never PSD.
pub fn split_boundary_random(cases: u64, seed: u64) -> [CheckResult; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid_residuals = Vec::with_capacity(cases as usize);
    let mut overweight_failures = Vec::with_capacity(cases as usize);
    for _ in 0..cases {
        let rho = random_mixture(&mut rng);
        let rs = random_range_state(&mut rng);
        let w = rho.weight_for(&rs);

        let s_valid: f64 = rng.random_range(f64::MIN_POSITIVE..=1.0);
        let residual = rho
            .split_residual(&rs, s_valid)
            .expect("s ∈ (0, 1] is the valid branch");
        let state_ok = residual.validate_state(crate::states::NORM_TOL).is_ok();
        let ws = w * s_valid;
        let mut rebuilt = rs.vector().projector().scaled(ws);
        rebuilt.add_assign_scaled(&residual, 1.0 - ws);
        let rebuild_residual = rebuilt
            .sub(&rho.operator())
            .expect("dimensions agree")
            .max_abs();
        valid_residuals.push(if state_ok { rebuild_residual } else { 1.0 });

        let s_max = (1.0 / w).min(2.0) * (1.0 - 1e-9);
        let s_over: f64 = rng.random_range((1.0 + 1e-6)..s_max);
        let confirmed = rho
            .verify_no_overweight(&rs, s_over)
            .expect("s lies in (1, 1/w)");
        overweight_failures.push(if confirmed { 0.0 } else { 1.0 });
    }
    [
        CheckResult::from_residuals("split_valid_random", IDENTITY_TOL, valid_residuals),
        CheckResult::from_residuals("split_overweight_random", 0.0, overweight_failures),
    ]
}

/// The distant-measurement criterion: commutation of the observable with
/// the opposite state agrees with orthogonality of the induced
/// decomposition on random cases; Schmidt-basis measurements always
/// qualify; every measurement on the degenerate mixture qualifies.
pub fn distant_criterion_random(cases: u64, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    for k in 0..cases {
        let (rho, m) = match k % 10 {
            // mix in the guaranteed-distant families
            0 => (
                random_mixture(&mut rng),
                YesNoMeasurement::new(if k % 20 == 0 { 0.0 } else { 1.0 }, 0.0)
                    .expect("q ∈ {0, 1} is valid"),
            ),
            1 => (
                MinimalMixture::new(0.5).expect("1/2 is a valid eigenvalue"),
                YesNoMeasurement::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..TAU))
                    .expect("sampled (q, λ) lies in the domain"),
            ),
            _ => (
                random_mixture(&mut rng),
                YesNoMeasurement::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..TAU))
                    .expect("sampled (q, λ) lies in the domain"),
            ),
        };
        let omega = purify(&rho);
        let commutes = is_distant_measurement(&omega, &m);
        let (rs, _) = decomposition_for_measurement(&rho, &m);
        let d = rho
            .decompose(&rs)
            .expect("induced decomposition is consistent");
        let orthogonal =
            d.state.inner(&d.counter).expect("equal dimensions").norm() <= PSD_EIGENVALUE_TOL;
        disagreements.push(if commutes == orthogonal { 0.0 } else { 1.0 });
    }
    CheckResult::from_residuals("distant_criterion_random", 0.0, disagreements)
}

/// Runs every suite.
pub fn run_all(grid: &GridSpec, random_cases: u64, seed: u64) -> VerifyReport {
    let [split_valid, split_overweight] = split_boundary_random(random_cases, seed);
    VerifyReport {
        checks: vec![
            reconstruction(grid),
            weight_bounds(grid),
            weight_monotonicity(grid),
            degenerate_case(grid),
            roundtrip(grid),
            weight_three_ways(grid),
            selective_branches(grid),
            nonselective_consistency(grid),
            uniqueness_random(random_cases, seed),
            split_valid,
            split_overweight,
            distant_criterion_random(random_cases, seed),
        ],
    }
}
