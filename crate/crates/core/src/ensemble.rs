//! Monte Carlo realization of the ensemble view: per-photon yes-no
//! measurement outcomes and screen positions.
//!
//! Each photon of the ensemble is assigned branch μ₁ with the analytic
//! branch probability w (taken from the selective-measurement layer, not
//! re-derived), otherwise μ₂; with a screen attached, a position is drawn
//! from the branch's conditional density by inverse-CDF sampling on the
//! discretized density. Photon i consumes its own ChaCha8 sub-stream, so
//! reports are bit-identical for a given seed regardless of thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::decomposition::MinimalMixture;
use crate::distant::{luders_select, purify, Branch, YesNoMeasurement};
use crate::error::{Error, Result};
use crate::interference::{PatternSet, SampledWave, SlitWavePair};
use crate::json;

/// Name of the random source; part of the report contract.
pub const GENERATOR: &str = "chacha8(stream = photon index)";

/// Default number of histogram bins over the screen interval.
pub const DEFAULT_BINS: usize = 64;

/// Bins whose expected count falls below this are pooled out of the
/// Pearson statistic.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

/// Configuration of one simulation run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub seed: u64,
    pub n_photons: u64,
    pub mixture: MinimalMixture,
    pub measurement: YesNoMeasurement,
    /// Slit waves; screen-position sampling is enabled when present.
    pub pair: Option<SlitWavePair>,
    /// Histogram bin count over the screen interval.
    pub bins: usize,
}

impl SimConfig {
    pub fn new(
        seed: u64,
        n_photons: u64,
        mixture: MinimalMixture,
        measurement: YesNoMeasurement,
        pair: Option<SlitWavePair>,
    ) -> Result<Self> {
        let config = Self {
            seed,
            n_photons,
            mixture,
            measurement,
            pair,
            bins: DEFAULT_BINS,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_bins(mut self, bins: usize) -> Result<Self> {
        self.bins = bins;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.n_photons == 0 {
            return Err(Error::OutOfDomain {
                name: "n_photons",
                value: 0.0,
                domain: "n ≥ 1",
            });
        }
        if self.bins == 0 {
            return Err(Error::OutOfDomain {
                name: "bins",
                value: 0.0,
                domain: "bins ≥ 1",
            });
        }
        Ok(())
    }
}

/// Per-branch tally of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTally {
    pub branch: Branch,
    pub count: u64,
    /// Empirical branch fraction count / n.
    pub weight: f64,
    /// Binomial standard error √(f(1−f)/n) of the empirical fraction.
    pub std_err: f64,
}

/// Screen-position histogram of one branch.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub branch: Branch,
    pub x_min: f64,
    pub x_max: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Element-wise merge of two histograms over the same interval.
    pub fn merged_with(&self, other: &Histogram) -> Result<Histogram> {
        if self.counts.len() != other.counts.len()
            || self.x_min != other.x_min
            || self.x_max != other.x_max
        {
            return Err(Error::GridMismatch {
                detail: "histograms cover different intervals or bin counts",
            });
        }
        Ok(Histogram {
            branch: self.branch,
            x_min: self.x_min,
            x_max: self.x_max,
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Everything a run produces. Equal configurations (seed included) produce
/// equal reports, bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub seed: u64,
    pub generator: &'static str,
    pub n_photons: u64,
    pub branches: [BranchTally; 2],
    pub histograms: Option<[Histogram; 2]>,
}

impl SimReport {
    /// The report as a JSON value with the wire schema
    /// {seed, generator, n, branches: [{label, count, weight, stderr}], histograms?}.
    pub fn to_json(&self) -> Value {
        let branches: Vec<Value> = self
            .branches
            .iter()
            .map(|b| {
                json!({
                    "label": b.branch.label(),
                    "count": b.count,
                    "weight": json::number(b.weight),
                    "stderr": json::number(b.std_err),
                })
            })
            .collect();
        let mut out = json!({
            "seed": self.seed,
            "generator": self.generator,
            "n": self.n_photons,
            "branches": branches,
        });
        if let Some(histograms) = &self.histograms {
            let hs: Vec<Value> = histograms
                .iter()
                .map(|h| {
                    json!({
                        "label": h.branch.label(),
                        "x_min": json::number(h.x_min),
                        "x_max": json::number(h.x_max),
                        "bins": h.counts.len(),
                        "counts": h.counts,
                    })
                })
                .collect();
            out["histograms"] = Value::Array(hs);
        }
        out
    }
}

/// Inverse-CDF sampler over a density sampled on a uniform grid: cumulative
/// trapezoid between nodes, linear interpolation within a cell.
#[derive(Debug, Clone)]
pub(crate) struct CdfSampler {
    x_min: f64,
    spacing: f64,
    cdf: Vec<f64>,
}

impl CdfSampler {
    pub(crate) fn new(x_min: f64, spacing: f64, density: &[f64]) -> Self {
        let mut cdf = Vec::with_capacity(density.len());
        let mut acc = 0.0;
        cdf.push(0.0);
        for pair in density.windows(2) {
            acc += 0.5 * (pair[0] + pair[1]) * spacing;
            cdf.push(acc);
        }
        let total = *cdf.last().expect("density has at least two samples");
        debug_assert!(total > 0.0);
        for c in &mut cdf {
            *c /= total;
        }
        Self {
            x_min,
            spacing,
            cdf,
        }
    }

    pub(crate) fn from_wave(wave: &SampledWave) -> Self {
        let grid = wave.grid();
        Self::new(grid.x_min(), grid.spacing(), &wave.density())
    }

    /// Position with CDF value `u` ∈ [0, 1].
    pub(crate) fn quantile(&self, u: f64) -> f64 {
        let k = match self.cdf.partition_point(|&c| c <= u) {
            0 => 0,
            idx if idx >= self.cdf.len() => self.cdf.len() - 2,
            idx => idx - 1,
        };
        let lo = self.cdf[k];
        let hi = self.cdf[k + 1];
        let frac = if hi > lo { (u - lo) / (hi - lo) } else { 0.0 };
        self.x_min + self.spacing * (k as f64 + frac)
    }

    /// CDF at an arbitrary position, linearly interpolated; the same curve
    /// the sampler draws from, so expected bin counts derived from it are
    /// exactly calibrated.
    pub(crate) fn cdf_at(&self, x: f64) -> f64 {
        let t = (x - self.x_min) / self.spacing;
        if t <= 0.0 {
            return 0.0;
        }
        let last = (self.cdf.len() - 1) as f64;
        if t >= last {
            return 1.0;
        }
        let k = t.floor() as usize;
        let frac = t - k as f64;
        self.cdf[k] + (self.cdf[k + 1] - self.cdf[k]) * frac
    }
}

#[derive(Default, Clone)]
struct Tally {
    counts: [u64; 2],
    bins: Option<[Vec<u64>; 2]>,
}

impl Tally {
    fn new(bins: Option<usize>) -> Self {
        Self {
            counts: [0, 0],
            bins: bins.map(|n| [vec![0; n], vec![0; n]]),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.counts[0] += other.counts[0];
        self.counts[1] += other.counts[1];
        if let (Some(mine), Some(theirs)) = (&mut self.bins, &other.bins) {
            for side in 0..2 {
                for (a, b) in mine[side].iter_mut().zip(&theirs[side]) {
                    *a += b;
                }
            }
        }
        self
    }
}

/// Runs the simulation described by `config`.
///
/// The branch probability is ⟨φ₁′∣φ₁′⟩ of the selective measurement; branch
/// position densities are the ∣c₁ψ₁ + c₂ψ₂∣² built from the conditional
/// states — one source of truth for both.
pub fn run(config: &SimConfig) -> Result<SimReport> {
    config.validate()?;
    let omega = purify(&config.mixture);
    let out1 = luders_select(&omega, &config.measurement, Branch::Mu1)?;
    let out2 = luders_select(&omega, &config.measurement, Branch::Mu2)?;
    let w = out1.probability;

    let samplers: Option<[CdfSampler; 2]> = match &config.pair {
        Some(pair) => {
            let waves = [
                pair.combine(out1.conditional_state.amp(0), out1.conditional_state.amp(1))?,
                pair.combine(out2.conditional_state.amp(0), out2.conditional_state.amp(1))?,
            ];
            Some([
                CdfSampler::from_wave(&waves[0]),
                CdfSampler::from_wave(&waves[1]),
            ])
        }
        None => None,
    };

    let (x_min, x_max) = config
        .pair
        .as_ref()
        .map(|p| (p.grid().x_min(), p.grid().x_max()))
        .unwrap_or((0.0, 1.0));
    let bins = config.bins;
    let bin_of = |x: f64| -> usize {
        let t = (x - x_min) / (x_max - x_min) * bins as f64;
        (t.floor() as usize).min(bins - 1)
    };

    let tally = (0..config.n_photons)
        .into_par_iter()
        .fold(
            || Tally::new(samplers.as_ref().map(|_| bins)),
            |mut tally, photon| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(photon);
                let side = usize::from(rng.random::<f64>() >= w);
                tally.counts[side] += 1;
                if let (Some(bin_counts), Some(samplers)) = (&mut tally.bins, &samplers) {
                    let x = samplers[side].quantile(rng.random::<f64>());
                    bin_counts[side][bin_of(x)] += 1;
                }
                tally
            },
        )
        .reduce(|| Tally::new(samplers.as_ref().map(|_| bins)), Tally::merge);

    let n = config.n_photons as f64;
    let branches = [Branch::Mu1, Branch::Mu2].map(|branch| {
        let count = tally.counts[branch as usize];
        let fraction = count as f64 / n;
        BranchTally {
            branch,
            count,
            weight: fraction,
            std_err: (fraction * (1.0 - fraction) / n).sqrt(),
        }
    });
    let histograms = tally.bins.map(|bin_counts| {
        let [mu1, mu2] = bin_counts;
        [
            Histogram {
                branch: Branch::Mu1,
                x_min,
                x_max,
                counts: mu1,
            },
            Histogram {
                branch: Branch::Mu2,
                x_min,
                x_max,
                counts: mu2,
            },
        ]
    });

    Ok(SimReport {
        seed: config.seed,
        generator: GENERATOR,
        n_photons: config.n_photons,
        branches,
        histograms,
    })
}

/// Pearson χ² of a histogram against an analytic density sampled on a grid
/// covering the same interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquared {
    pub statistic: f64,
    /// Included bins minus one.
    pub dof: u64,
    pub bins_used: usize,
}

impl ChiSquared {
    pub fn reduced(&self) -> f64 {
        self.statistic / self.dof as f64
    }
}

/// Pearson χ² of `hist` against a density sampled on the uniform grid
/// [x_min, x_max] with `density.len()` nodes. Expected bin probabilities
/// come from the same cumulative-trapezoid CDF the sampler uses; bins with
/// expected count below [`MIN_EXPECTED_COUNT`] are excluded.
pub fn chi_squared(
    hist: &Histogram,
    x_min: f64,
    x_max: f64,
    density: &[f64],
) -> Result<ChiSquared> {
    if density.len() < 2 {
        return Err(Error::GridMismatch {
            detail: "density needs at least two samples",
        });
    }
    if (hist.x_min - x_min).abs() > 1e-12 || (hist.x_max - x_max).abs() > 1e-12 {
        return Err(Error::GridMismatch {
            detail: "histogram and density cover different intervals",
        });
    }
    let spacing = (x_max - x_min) / (density.len() - 1) as f64;
    let cdf = CdfSampler::new(x_min, spacing, density);
    let n = hist.total() as f64;
    let bins = hist.counts.len();
    let bin_width = (x_max - x_min) / bins as f64;
    let mut statistic = 0.0;
    let mut used = 0usize;
    for (k, &observed) in hist.counts.iter().enumerate() {
        let left = x_min + bin_width * k as f64;
        let right = x_min + bin_width * (k + 1) as f64;
        let expected = n * (cdf.cdf_at(right) - cdf.cdf_at(left));
        if expected < MIN_EXPECTED_COUNT {
            continue;
        }
        let diff = observed as f64 - expected;
        statistic += diff * diff / expected;
        used += 1;
    }
    if used < 2 {
        return Err(Error::GridMismatch {
            detail: "fewer than two bins exceed the expected-count threshold",
        });
    }
    Ok(ChiSquared {
        statistic,
        dof: (used - 1) as u64,
        bins_used: used,
    })
}

/// χ² statistics of a report's histograms against the analytic patterns:
/// branch μ₁ vs the interference density, branch μ₂ vs the
/// counter-interference density, and the merged histogram vs the incoherent
/// mixture density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternChiSquared {
    pub mu1_vs_interference: ChiSquared,
    pub mu2_vs_counter: ChiSquared,
    pub merged_vs_incoherent: ChiSquared,
}

pub fn chi_squared_against(report: &SimReport, analytic: &PatternSet) -> Result<PatternChiSquared> {
    let histograms = report.histograms.as_ref().ok_or(Error::MissingHistograms)?;
    let grid = analytic.grid();
    let merged = histograms[0].merged_with(&histograms[1])?;
    Ok(PatternChiSquared {
        mu1_vs_interference: chi_squared(
            &histograms[0],
            grid.x_min(),
            grid.x_max(),
            analytic.interference(),
        )?,
        mu2_vs_counter: chi_squared(
            &histograms[1],
            grid.x_min(),
            grid.x_max(),
            analytic.counter(),
        )?,
        merged_vs_incoherent: chi_squared(
            &merged,
            grid.x_min(),
            grid.x_max(),
            analytic.incoherent(),
        )?,
    })
}
