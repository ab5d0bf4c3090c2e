//! Discretized two-slit waves and their interference patterns.
//!
//! A pair of normalized slit waves ψ₁(x), ψ₂(x) sampled on a screen grid
//! yields three localization densities: the interference pattern
//! p_i = ∣ψ₁+ψ₂∣²/2, the counter-interference pattern p_i^c = ∣ψ₁−ψ₂∣²/2,
//! and the incoherent mixture p = (∣ψ₁∣²+∣ψ₂∣²)/2. The first two cancel
//! against each other pointwise: p_i + p_i^c = ∣ψ₁∣² + ∣ψ₂∣².
//!
//! Norms and integrals use the trapezoidal rule, so all densities are per
//! unit length and comparisons are resolution-independent.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Normalization tolerance for sampled waves and pattern integrals.
pub const GRID_NORM_TOL: f64 = 1e-8;

/// Uniform sample grid on a screen interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl ScreenGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || x_min >= x_max {
            return Err(Error::OutOfDomain {
                name: "x_max - x_min",
                value: x_max - x_min,
                domain: "(0, ∞) (x_min < x_max)",
            });
        }
        if n < 2 {
            return Err(Error::OutOfDomain {
                name: "n",
                value: n as f64,
                domain: "n ≥ 2",
            });
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        self.x_min + self.spacing() * k as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.point(k)).collect()
    }

    /// Trapezoidal integral of a real function sampled on this grid.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.n);
        let h = self.spacing();
        let interior: f64 = values[1..self.n - 1].iter().sum();
        h * (0.5 * (values[0] + values[self.n - 1]) + interior)
    }

    /// Trapezoidal inner product ⟨a∣b⟩ of two sampled complex functions.
    pub fn inner(&self, a: &[C64], b: &[C64]) -> C64 {
        debug_assert_eq!(a.len(), self.n);
        debug_assert_eq!(b.len(), self.n);
        let h = self.spacing();
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..self.n {
            let weight = if k == 0 || k == self.n - 1 { 0.5 } else { 1.0 };
            acc += a[k].conj() * b[k] * weight;
        }
        acc * h
    }
}

/// A complex wave sampled on a screen grid, unit-normalized under the
/// trapezoidal rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    grid: ScreenGrid,
    amps: Vec<C64>,
}

impl SampledWave {
    pub fn grid(&self) -> ScreenGrid {
        self.grid
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    /// The localization density ∣ψ(x)∣² per unit length.
    pub fn density(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// The two slit waves, each grid-normalized to within [`GRID_NORM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct SlitWavePair {
    grid: ScreenGrid,
    psi1: Vec<C64>,
    psi2: Vec<C64>,
}

impl SlitWavePair {
    pub fn new(grid: ScreenGrid, psi1: Vec<C64>, psi2: Vec<C64>) -> Result<Self> {
        if psi1.len() != grid.len() || psi2.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: if psi1.len() != grid.len() {
                    psi1.len()
                } else {
                    psi2.len()
                },
            });
        }
        for psi in [&psi1, &psi2] {
            if !psi.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::NonFinite {
                    what: "slit wave sample",
                });
            }
            let norm_sq = grid.inner(psi, psi).re;
            let deviation = (norm_sq - 1.0).abs();
            if deviation > GRID_NORM_TOL {
                return Err(Error::NotNormalized { deviation });
            }
        }
        Ok(Self { grid, psi1, psi2 })
    }

    pub fn grid(&self) -> ScreenGrid {
        self.grid
    }

    pub fn psi1(&self) -> &[C64] {
        &self.psi1
    }

    pub fn psi2(&self) -> &[C64] {
        &self.psi2
    }

    /// The grid-quadrature overlap ⟨ψ₁∣ψ₂⟩. The pattern identities assume
    /// this vanishes; its actual value is reported alongside results.
    pub fn overlap(&self) -> C64 {
        self.grid.inner(&self.psi1, &self.psi2)
    }

    /// The wave c₁ψ₁ + c₂ψ₂, renormalized under the grid quadrature; the
    /// position-space realization of a subsystem state with amplitudes
    /// (c₁, c₂) on the slit basis.
    pub fn combine(&self, c1: C64, c2: C64) -> Result<SampledWave> {
        let amps: Vec<C64> = self
            .psi1
            .iter()
            .zip(&self.psi2)
            .map(|(a, b)| c1 * a + c2 * b)
            .collect();
        let norm_sq = self.grid.inner(&amps, &amps).re;
        if norm_sq < 1e-24 {
            return Err(Error::VanishingSuperposition);
        }
        let inv = norm_sq.sqrt().recip();
        Ok(SampledWave {
            grid: self.grid,
            amps: amps.into_iter().map(|a| a * inv).collect(),
        })
    }
}

/// Relative sign of the two-slit superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Default preset: grid [−10, 10] with 2048 samples, slit separation 4,
/// width 0.5, phase tilt 6 — several visible fringes at desk scale. The
/// values are conventions, not data.
pub mod preset {
    pub const X_MIN: f64 = -10.0;
    pub const X_MAX: f64 = 10.0;
    pub const SAMPLES: usize = 2048;
    pub const SEPARATION: f64 = 4.0;
    pub const WIDTH: f64 = 0.5;
    pub const TILT: f64 = 6.0;
}

/// Two Gaussian slit waves centered at ±separation/2 with a relative phase
/// gradient tilt·x between them:
///
/// ψ₁,₂(x) ∝ exp(−(x ∓ separation/2)² / width²) · e^{±i·tilt·x/2}.
///
/// `width` is the 1/e half-width of the amplitude envelope. Each wave is
/// normalized under the grid quadrature.
pub fn gaussian_two_slit(
    grid: ScreenGrid,
    separation: f64,
    width: f64,
    tilt: f64,
) -> Result<SlitWavePair> {
    if !width.is_finite() || width <= 0.0 {
        return Err(Error::OutOfDomain {
            name: "width",
            value: width,
            domain: "(0, ∞)",
        });
    }
    if !separation.is_finite() || !tilt.is_finite() {
        return Err(Error::NonFinite {
            what: "slit parameter",
        });
    }
    let build = |center: f64, phase_sign: f64| -> Result<Vec<C64>> {
        let amps: Vec<C64> = grid
            .points()
            .iter()
            .map(|&x| {
                let u = (x - center) / width;
                C64::from_polar((-u * u).exp(), phase_sign * 0.5 * tilt * x)
            })
            .collect();
        let norm_sq = grid.inner(&amps, &amps).re;
        if norm_sq <= 0.0 {
            return Err(Error::VanishingSuperposition);
        }
        let inv = norm_sq.sqrt().recip();
        Ok(amps.into_iter().map(|a| a * inv).collect())
    };
    let psi1 = build(separation / 2.0, 1.0)?;
    let psi2 = build(-separation / 2.0, -1.0)?;
    SlitWavePair::new(grid, psi1, psi2)
}

/// The balanced superposition (ψ₁ ± ψ₂)/√2, renormalized under the grid
/// quadrature because sampled waves are generally not exactly orthogonal.
/// Fails when the combination is numerically zero (Minus on identical
/// waves).
pub fn superpose(pair: &SlitWavePair, sign: Sign) -> Result<SampledWave> {
    let c = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match sign {
        Sign::Plus => pair.combine(c, c),
        Sign::Minus => pair.combine(c, -c),
    }
}

/// The three pattern densities on the common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternSet {
    grid: ScreenGrid,
    interference: Vec<f64>,
    counter: Vec<f64>,
    incoherent: Vec<f64>,
}

impl PatternSet {
    pub fn grid(&self) -> ScreenGrid {
        self.grid
    }

    /// p_i(x) = ∣ψ₁(x) + ψ₂(x)∣² / 2.
    pub fn interference(&self) -> &[f64] {
        &self.interference
    }

    /// p_i^c(x) = ∣ψ₁(x) − ψ₂(x)∣² / 2.
    pub fn counter(&self) -> &[f64] {
        &self.counter
    }

    /// p(x) = (∣ψ₁(x)∣² + ∣ψ₂(x)∣²) / 2 = (p_i + p_i^c) / 2.
    pub fn incoherent(&self) -> &[f64] {
        &self.incoherent
    }

    /// Integrals of the three densities, in the order (p_i, p_i^c, p);
    /// each equals 1 up to the overlap ⟨ψ₁∣ψ₂⟩ of the underlying waves.
    pub fn integrals(&self) -> [f64; 3] {
        [
            self.grid.integrate(&self.interference),
            self.grid.integrate(&self.counter),
            self.grid.integrate(&self.incoherent),
        ]
    }
}

/// Evaluates the interference, counter-interference, and incoherent
/// densities of the pair. The cancellation identity
/// p_i + p_i^c = ∣ψ₁∣² + ∣ψ₂∣² holds pointwise to rounding by the
/// parallelogram law.
pub fn patterns(pair: &SlitWavePair) -> PatternSet {
    let n = pair.grid.len();
    let mut interference = Vec::with_capacity(n);
    let mut counter = Vec::with_capacity(n);
    let mut incoherent = Vec::with_capacity(n);
    for (a, b) in pair.psi1.iter().zip(&pair.psi2) {
        interference.push((a + b).norm_sqr() * 0.5);
        counter.push((a - b).norm_sqr() * 0.5);
        incoherent.push((a.norm_sqr() + b.norm_sqr()) * 0.5);
    }
    PatternSet {
        grid: pair.grid,
        interference,
        counter,
        incoherent,
    }
}
