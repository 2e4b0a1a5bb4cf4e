//! Seeded synthetic stream generation for the twelve benchmark distributions.
//!
//! Streams are reproducible: a [`DistSpec`] names a distribution, its
//! parameters and a 64-bit seed, and the resulting sequence is a pure
//! function of that spec. The underlying uniform source is xoshiro256++
//! seeded via SplitMix64 (see [`rng`]); every distribution is derived from
//! that one stream by a fixed, documented transform, so the raw 64-bit
//! sequence is identical on every platform and the derived floats match up
//! to possible unit-in-the-last-place differences between `libm`
//! implementations.
//!
//! Transforms used per kind:
//!
//! * `uniform(min, max)` — `min + u * (max - min)`, `u` in `[0, 1)`
//! * `normal(mean, sigma)` — Box–Muller pair, cosine branch first
//! * `log-normal(mu, sigma)` — `exp(mu + sigma * z)`
//! * `half-normal(scale)` — `scale * |z|`
//! * `exponential(rate)` — inverse CDF `-ln(u) / rate`, `u` in `(0, 1]`
//! * `gamma(shape, scale)` — Marsaglia–Tsang; shape boost below 1
//! * `chi-squared(dof)` — `gamma(dof / 2, 2)`
//! * `beta(alpha, beta)` — ratio of two unit-scale gammas
//! * `inverse-gaussian(mean, shape)` — Michael–Schucany–Haas transform
//! * `pareto(scale, shape)` — inverse CDF `scale * u^(-1/shape)`, `u` in `(0, 1]`
//! * `poisson(mean)` — Knuth product method, `O(mean)` per draw
//! * `zipf(elements, exponent)` — Hörmann–Derflinger rejection-inversion,
//!   `O(1)` expected per draw with no rank table
//!
//! Discrete kinds (`poisson`, `zipf`) emit integers represented as `f64`.

pub mod rng;

use crate::error::{Error, Result};
use rng::Xoshiro256pp;

/// Distribution kind plus parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dist {
    Beta { alpha: f64, beta: f64 },
    ChiSquared { dof: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, scale: f64 },
    HalfNormal { scale: f64 },
    InverseGaussian { mean: f64, shape: f64 },
    LogNormal { mu: f64, sigma: f64 },
    Normal { mean: f64, sigma: f64 },
    Pareto { scale: f64, shape: f64 },
    Poisson { mean: f64 },
    Uniform { min: f64, max: f64 },
    Zipf { elements: u64, exponent: f64 },
}

/// A distribution together with the seed that fixes its stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistSpec {
    pub dist: Dist,
    pub seed: u64,
}

impl DistSpec {
    pub fn new(dist: Dist, seed: u64) -> Self {
        DistSpec { dist, seed }
    }
}

/// Knuth's product method underflows past this mean.
const MAX_POISSON_MEAN: f64 = 700.0;

impl Dist {
    /// Kind name as accepted by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Dist::Beta { .. } => "beta",
            Dist::ChiSquared { .. } => "chi-squared",
            Dist::Exponential { .. } => "exponential",
            Dist::Gamma { .. } => "gamma",
            Dist::HalfNormal { .. } => "half-normal",
            Dist::InverseGaussian { .. } => "inverse-gaussian",
            Dist::LogNormal { .. } => "log-normal",
            Dist::Normal { .. } => "normal",
            Dist::Pareto { .. } => "pareto",
            Dist::Poisson { .. } => "poisson",
            Dist::Uniform { .. } => "uniform",
            Dist::Zipf { .. } => "zipf",
        }
    }

    /// The twelve benchmark distributions with their canonical parameters.
    pub fn benchmark_suite() -> [Dist; 12] {
        [
            Dist::Beta {
                alpha: 2.0,
                beta: 0.25,
            },
            Dist::ChiSquared { dof: 3.0 },
            Dist::Exponential { rate: 0.5 },
            Dist::Gamma {
                shape: 1.0,
                scale: 2.0,
            },
            Dist::HalfNormal { scale: 0.5 },
            Dist::InverseGaussian {
                mean: 2.0,
                shape: 1.0,
            },
            Dist::LogNormal {
                mu: 1.0,
                sigma: 3.0,
            },
            Dist::Normal {
                mean: 1.0,
                sigma: 3.0,
            },
            Dist::Pareto {
                scale: 3.0,
                shape: 0.75,
            },
            Dist::Poisson { mean: 3.0 },
            Dist::Uniform {
                min: 0.0,
                max: 100_000.0,
            },
            Dist::Zipf {
                elements: 100_000_000,
                exponent: 1.2,
            },
        ]
    }

    /// Looks up a benchmark distribution by its kind name.
    pub fn benchmark_default(name: &str) -> Option<Dist> {
        Dist::benchmark_suite()
            .into_iter()
            .find(|d| d.name() == name)
    }

    /// Returns the same distribution with named parameters overridden.
    ///
    /// Accepted keys per kind mirror the field names (`alpha`, `beta`, `dof`,
    /// `rate`, `shape`, `scale`, `mean`, `mu`, `sigma`, `min`, `max`,
    /// `elements`, `exponent`).
    pub fn with_param(self, key: &str, value: f64) -> Result<Dist> {
        let bad_key = || {
            Err(Error::invalid(
                "param",
                format!(
                    "unknown parameter `{key}` for distribution `{}`",
                    self.name()
                ),
            ))
        };
        let dist = match self {
            Dist::Beta { alpha, beta } => match key {
                "alpha" => Dist::Beta { alpha: value, beta },
                "beta" => Dist::Beta { alpha, beta: value },
                _ => return bad_key(),
            },
            Dist::ChiSquared { .. } => match key {
                "dof" => Dist::ChiSquared { dof: value },
                _ => return bad_key(),
            },
            Dist::Exponential { .. } => match key {
                "rate" => Dist::Exponential { rate: value },
                _ => return bad_key(),
            },
            Dist::Gamma { shape, scale } => match key {
                "shape" => Dist::Gamma {
                    shape: value,
                    scale,
                },
                "scale" => Dist::Gamma {
                    shape,
                    scale: value,
                },
                _ => return bad_key(),
            },
            Dist::HalfNormal { .. } => match key {
                "scale" => Dist::HalfNormal { scale: value },
                _ => return bad_key(),
            },
            Dist::InverseGaussian { mean, shape } => match key {
                "mean" => Dist::InverseGaussian { mean: value, shape },
                "shape" => Dist::InverseGaussian { mean, shape: value },
                _ => return bad_key(),
            },
            Dist::LogNormal { mu, sigma } => match key {
                "mu" => Dist::LogNormal { mu: value, sigma },
                "sigma" => Dist::LogNormal { mu, sigma: value },
                _ => return bad_key(),
            },
            Dist::Normal { mean, sigma } => match key {
                "mean" => Dist::Normal { mean: value, sigma },
                "sigma" => Dist::Normal { mean, sigma: value },
                _ => return bad_key(),
            },
            Dist::Pareto { scale, shape } => match key {
                "scale" => Dist::Pareto {
                    scale: value,
                    shape,
                },
                "shape" => Dist::Pareto {
                    scale,
                    shape: value,
                },
                _ => return bad_key(),
            },
            Dist::Poisson { .. } => match key {
                "mean" => Dist::Poisson { mean: value },
                _ => return bad_key(),
            },
            Dist::Uniform { min, max } => match key {
                "min" => Dist::Uniform { min: value, max },
                "max" => Dist::Uniform { min, max: value },
                _ => return bad_key(),
            },
            Dist::Zipf { elements, exponent } => match key {
                "elements" => {
                    if value < 1.0 || value.fract() != 0.0 || value > (1u64 << 53) as f64 {
                        return Err(Error::invalid("elements", "must be a positive integer"));
                    }
                    Dist::Zipf {
                        elements: value as u64,
                        exponent,
                    }
                }
                "exponent" => Dist::Zipf {
                    elements,
                    exponent: value,
                },
                _ => return bad_key(),
            },
        };
        Ok(dist)
    }

    /// Checks domain constraints on the parameters.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, "must be finite and > 0"))
            }
        };
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(name, "must be finite"))
            }
        };
        match *self {
            Dist::Beta { alpha, beta } => {
                positive("alpha", alpha)?;
                positive("beta", beta)
            }
            Dist::ChiSquared { dof } => positive("dof", dof),
            Dist::Exponential { rate } => positive("rate", rate),
            Dist::Gamma { shape, scale } => {
                positive("shape", shape)?;
                positive("scale", scale)
            }
            Dist::HalfNormal { scale } => positive("scale", scale),
            Dist::InverseGaussian { mean, shape } => {
                positive("mean", mean)?;
                positive("shape", shape)
            }
            Dist::LogNormal { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)
            }
            Dist::Normal { mean, sigma } => {
                finite("mean", mean)?;
                positive("sigma", sigma)
            }
            Dist::Pareto { scale, shape } => {
                positive("scale", scale)?;
                positive("shape", shape)
            }
            Dist::Poisson { mean } => {
                positive("mean", mean)?;
                if mean > MAX_POISSON_MEAN {
                    return Err(Error::invalid(
                        "mean",
                        format!("product-method sampler supports mean <= {MAX_POISSON_MEAN}"),
                    ));
                }
                Ok(())
            }
            Dist::Uniform { min, max } => {
                finite("min", min)?;
                finite("max", max)?;
                if min < max {
                    Ok(())
                } else {
                    Err(Error::invalid("min", "must be strictly below max"))
                }
            }
            Dist::Zipf { elements, exponent } => {
                positive("exponent", exponent)?;
                if elements >= 1 {
                    Ok(())
                } else {
                    Err(Error::invalid("elements", "must be at least 1"))
                }
            }
        }
    }
}

/// Streaming sampler for one [`DistSpec`]. Infinite iterator over `f64`.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: Xoshiro256pp,
    dist: Dist,
    zipf: Option<ZipfSampler>,
    spare_normal: Option<f64>,
}

impl Generator {
    pub fn new(spec: &DistSpec) -> Result<Self> {
        spec.dist.validate()?;
        let zipf = match spec.dist {
            Dist::Zipf { elements, exponent } => Some(ZipfSampler::new(elements, exponent)),
            _ => None,
        };
        Ok(Generator {
            rng: Xoshiro256pp::seed_from_u64(spec.seed),
            dist: spec.dist,
            zipf,
            spare_normal: None,
        })
    }

    pub fn dist(&self) -> &Dist {
        &self.dist
    }

    pub fn next_value(&mut self) -> f64 {
        match self.dist {
            Dist::Beta { alpha, beta } => {
                let a = self.gamma(alpha, 1.0);
                let b = self.gamma(beta, 1.0);
                a / (a + b)
            }
            Dist::ChiSquared { dof } => self.gamma(dof / 2.0, 2.0),
            Dist::Exponential { rate } => -self.rng.unit_positive().ln() / rate,
            Dist::Gamma { shape, scale } => self.gamma(shape, scale),
            Dist::HalfNormal { scale } => scale * self.standard_normal().abs(),
            Dist::InverseGaussian { mean, shape } => self.inverse_gaussian(mean, shape),
            Dist::LogNormal { mu, sigma } => (mu + sigma * self.standard_normal()).exp(),
            Dist::Normal { mean, sigma } => mean + sigma * self.standard_normal(),
            Dist::Pareto { scale, shape } => scale * self.rng.unit_positive().powf(-1.0 / shape),
            Dist::Poisson { mean } => self.poisson(mean),
            Dist::Uniform { min, max } => min + self.rng.unit() * (max - min),
            Dist::Zipf { .. } => self
                .zipf
                .as_ref()
                .expect("zipf sampler prepared")
                .sample(&mut self.rng),
        }
    }

    fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.rng.unit_positive();
        let u2 = self.rng.unit();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }

    fn gamma(&mut self, shape: f64, scale: f64) -> f64 {
        if shape < 1.0 {
            // Boost: gamma(shape) = gamma(shape + 1) * U^(1/shape).
            let boost = self.rng.unit_positive().powf(1.0 / shape);
            return self.gamma(shape + 1.0, scale) * boost;
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let z = self.standard_normal();
            let v = 1.0 + c * z;
            if v <= 0.0 {
                continue;
            }
            let v3 = v * v * v;
            let u = self.rng.unit_positive();
            if u < 1.0 - 0.0331 * (z * z) * (z * z) {
                return d * v3 * scale;
            }
            if u.ln() < 0.5 * z * z + d * (1.0 - v3 + v3.ln()) {
                return d * v3 * scale;
            }
        }
    }

    fn inverse_gaussian(&mut self, mean: f64, shape: f64) -> f64 {
        let z = self.standard_normal();
        let y = z * z;
        let x = mean + mean * mean * y / (2.0 * shape)
            - mean / (2.0 * shape) * (4.0 * mean * shape * y + mean * mean * y * y).sqrt();
        // Cancellation can push the root fractionally below zero.
        let x = x.max(f64::MIN_POSITIVE);
        if self.rng.unit() <= mean / (mean + x) {
            x
        } else {
            mean * mean / x
        }
    }

    fn poisson(&mut self, mean: f64) -> f64 {
        let threshold = (-mean).exp();
        let mut count = 0u64;
        let mut product = 1.0;
        loop {
            product *= self.rng.unit();
            if product <= threshold {
                return count as f64;
            }
            count += 1;
        }
    }
}

impl Iterator for Generator {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_value())
    }
}

/// Generates the first `n` values of the stream fixed by `spec`.
pub fn generate(spec: &DistSpec, n: usize) -> Result<Vec<f64>> {
    let generator = Generator::new(spec)?;
    Ok(generator.take(n).collect())
}

/// Zipf over ranks `1..=elements` with pmf proportional to `rank^-exponent`,
/// by rejection-inversion; expected `O(1)` per draw, no table.
#[derive(Debug, Clone)]
struct ZipfSampler {
    elements: f64,
    exponent: f64,
    h_x1: f64,
    h_elements: f64,
    cutoff: f64,
}

impl ZipfSampler {
    fn new(elements: u64, exponent: f64) -> Self {
        let mut sampler = ZipfSampler {
            elements: elements as f64,
            exponent,
            h_x1: 0.0,
            h_elements: 0.0,
            cutoff: 0.0,
        };
        sampler.h_x1 = sampler.h_integral(1.5) - 1.0;
        sampler.h_elements = sampler.h_integral(sampler.elements + 0.5);
        sampler.cutoff = 2.0 - sampler.h_integral_inverse(sampler.h_integral(2.5) - sampler.h(2.0));
        sampler
    }

    fn h(&self, x: f64) -> f64 {
        (-self.exponent * x.ln()).exp()
    }

    fn h_integral(&self, x: f64) -> f64 {
        let log_x = x.ln();
        if self.exponent == 1.0 {
            log_x
        } else {
            ((1.0 - self.exponent) * log_x).exp_m1() / (1.0 - self.exponent)
        }
    }

    fn h_integral_inverse(&self, y: f64) -> f64 {
        if self.exponent == 1.0 {
            y.exp()
        } else {
            // Clamped for numerical stability near the distribution head.
            let t = (y * (1.0 - self.exponent)).max(-1.0);
            (t.ln_1p() / (1.0 - self.exponent)).exp()
        }
    }

    fn sample(&self, rng: &mut Xoshiro256pp) -> f64 {
        loop {
            let u = self.h_elements + rng.unit() * (self.h_x1 - self.h_elements);
            let x = self.h_integral_inverse(u);
            let rank = (x + 0.5).floor().clamp(1.0, self.elements);
            if rank - x <= self.cutoff || u >= self.h_integral(rank + 0.5) - self.h(rank) {
                return rank;
            }
        }
    }
}
