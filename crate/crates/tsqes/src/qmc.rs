//! Monte-Carlo realization of the interference eigensolver.
//!
//! Instead of post-selecting k ancilla outcomes, the normalized expectation
//! after k cosine-branch iterations is written as a ratio of two quantities,
//!
//!   <O> = N(O) / D,
//!   D    = || cos^k((H - e_s) t) |psi0> ||^2,
//!   N(O) = <psi0| cos^k(...) O cos^k(...) |psi0>,
//!
//! each of which is an expectation of Hadamard-test readouts over integers
//! drawn from the binomial distribution B(k, 1/2):
//!
//!   D    = E_{k1', k2'} <psi0| U_f^{2 k1' - 2 k2'} |psi0>,
//!   N(O) = ||O||_1 E_{n, k1, k2} sign(c_n)
//!            <psi0| U_f^{k - 2 k2} sigma_n U_f^{2 k1 - k} |psi0>,
//!
//! with sigma_n drawn with probability |c_n| / ||O||_1. The denominator
//! assembles its complex readout as <X> + i <Y>, the numerator as
//! <X> - i <Y>; the sign pair is pinned by tests against the statevector
//! route, since a flipped convention conjugates the estimate.
//!
//! Two shot modes share one code path: `ExactExpectation` returns the exact
//! ancilla expectation per sample (isolating the (n, k1, k2) sampling
//! variance), `SingleShot` draws a single ±1 readout from it.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};
use crate::spectral::SpectralDecomposition;
use crate::state::StateVector;

/// How the ancilla readout of each sample is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShotMode {
    #[default]
    ExactExpectation,
    SingleShot,
}

/// Ancilla measurement basis: X reads the real part, Y the imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    X,
    Y,
}

#[derive(Debug, Clone)]
pub struct QmcConfig {
    /// Iteration order k.
    pub k: usize,
    pub e_s: f64,
    pub t: f64,
    /// Denominator sample count.
    pub n_d: usize,
    /// Numerator sample count.
    pub n_n: usize,
    pub seed: u64,
    pub shot_mode: ShotMode,
    /// Worker count for sample partitioning. Each worker draws from its own
    /// counter-indexed RNG stream, so the merged estimate is bit-identical
    /// for a fixed (seed, workers) pair no matter how threads are scheduled.
    pub workers: usize,
}

impl QmcConfig {
    pub fn new(k: usize, e_s: f64, t: f64, n_d: usize, n_n: usize, seed: u64) -> Result<QmcConfig> {
        if n_d == 0 || n_n == 0 {
            return Err(Error::InvalidArgument(
                "sample counts must be at least 1".into(),
            ));
        }
        Ok(QmcConfig {
            k,
            e_s,
            t,
            n_d,
            n_n,
            seed,
            shot_mode: ShotMode::ExactExpectation,
            workers: 1,
        })
    }

    pub fn with_shot_mode(mut self, mode: ShotMode) -> QmcConfig {
        self.shot_mode = mode;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> QmcConfig {
        self.workers = workers.max(1);
        self
    }
}

/// A complex mean with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct ComplexEstimate {
    pub value: Complex64,
    /// Quadrature combination of the real- and imaginary-half standard
    /// errors.
    pub standard_error: f64,
    pub sample_count: usize,
}

/// The ratio estimate with both halves attached.
#[derive(Debug, Clone)]
pub struct ObservableEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub numerator: ComplexEstimate,
    pub denominator: ComplexEstimate,
}

/// Sample budgets for a target (epsilon, delta).
///
/// `n_d` / `n_n` are the pre-asymptotic Hoeffding budgets 2K/eps^2 (the
/// actionable ones, used by the calibration suite); `order_n_d` /
/// `order_n_n` evaluate the asymptotic order expressions
/// K (||O||+1)^2 / (a_s^4 eps^{4cq}) with base-2 logs, whose absolute
/// constants are not specified.
#[derive(Debug, Clone, Copy)]
pub struct SampleBudget {
    pub n_d: usize,
    pub n_n: usize,
    pub order_n_d: f64,
    pub order_n_n: f64,
    /// K = 2 ln(8 / delta).
    pub k_bound: f64,
    pub delta: f64,
    pub epsilon_d: f64,
    pub epsilon_n: f64,
}

/// j ~ B(k, 1/2): popcount of k fair bits.
pub fn sample_binomial(k: usize, rng: &mut impl Rng) -> usize {
    let mut remaining = k;
    let mut total = 0usize;
    while remaining > 0 {
        let take = remaining.min(64);
        let bits: u64 = rng.random();
        let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
        total += (bits & mask).count_ones() as usize;
        remaining -= take;
    }
    total
}

/// psi0 expressed in the eigenbasis, with the per-eigenvalue phase angles.
struct EigenContext<'a> {
    d: &'a SpectralDecomposition,
    coeffs: DVector<Complex64>,
    thetas: Vec<f64>,
}

impl<'a> EigenContext<'a> {
    fn new(
        psi0: &StateVector,
        d: &'a SpectralDecomposition,
        e_s: f64,
        t: f64,
    ) -> Result<EigenContext<'a>> {
        let coeffs = d.to_eigenbasis(psi0)?;
        let thetas = d.eigenvalues().iter().map(|&e| (e - e_s) * t).collect();
        Ok(EigenContext { d, coeffs, thetas })
    }

    /// U_f^power |psi0> in the computational basis, optionally hit by a
    /// signed Pauli string afterwards.
    fn branch(&self, power: i64, insert: Option<(f64, &PauliString)>) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        for (ci, &theta) in c.iter_mut().zip(self.thetas.iter()) {
            *ci *= Complex64::from_polar(1.0, -(power as f64) * theta);
        }
        let v = self.d.eigenvectors() * c;
        match insert {
            None => v.as_slice().to_vec(),
            Some((sign, string)) => {
                let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
                string.apply_scaled_into(Complex64::new(sign, 0.0), v.as_slice(), &mut out);
                out
            }
        }
    }

    /// <branch0 | branch1> with branch0 = insert . U^{power0} |psi0> and
    /// branch1 = U^{power1} |psi0>.
    fn overlap(
        &self,
        power0: i64,
        insert: Option<(f64, &PauliString)>,
        power1: i64,
    ) -> Complex64 {
        let b0 = self.branch(power0, insert);
        let b1 = self.branch(power1, None);
        b0.iter()
            .zip(b1.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn readout(
        &self,
        power0: i64,
        insert: Option<(f64, &PauliString)>,
        power1: i64,
        basis: Basis,
        mode: ShotMode,
        rng: &mut impl Rng,
    ) -> f64 {
        let ov = self.overlap(power0, insert, power1);
        let exact = match basis {
            Basis::X => ov.re,
            Basis::Y => ov.im,
        };
        match mode {
            ShotMode::ExactExpectation => exact,
            ShotMode::SingleShot => {
                let p_plus = (0.5 * (1.0 + exact)).clamp(0.0, 1.0);
                if rng.random::<f64>() < p_plus {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Exact ancilla expectation (or one ±1 shot) of the two-branch Hadamard
/// test with branch-0 = insert . U_f^{power0} |psi0> and
/// branch-1 = U_f^{power1} |psi0>. The X basis reads
/// Re <branch0|branch1>, the Y basis Im <branch0|branch1>.
#[allow(clippy::too_many_arguments)]
pub fn hadamard_test(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    e_s: f64,
    t: f64,
    power0: i64,
    insert: Option<(f64, &PauliString)>,
    power1: i64,
    basis: Basis,
    mode: ShotMode,
    rng: &mut impl Rng,
) -> Result<f64> {
    let ctx = EigenContext::new(psi0, d, e_s, t)?;
    if let Some((_, s)) = insert {
        if (1usize << s.qubit_count()) != psi0.dimension() {
            return Err(Error::DimensionMismatch {
                expected: psi0.dimension(),
                actual: 1usize << s.qubit_count(),
            });
        }
    }
    Ok(ctx.readout(power0, insert, power1, basis, mode, rng))
}

/// Deterministic chunk boundaries for worker partitioning.
fn chunk_ranges(n: usize, workers: usize) -> Vec<(usize, usize)> {
    let w = workers.max(1).min(n.max(1));
    (0..w)
        .map(|i| (i * n / w, (i + 1) * n / w))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Welford accumulator; keeps the variance of constant samples at exactly 0.
#[derive(Clone, Copy, Default)]
struct HalfStats {
    count: usize,
    mean: f64,
    m2: f64,
}

impl HalfStats {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let delta = v - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(self, other: HalfStats) -> HalfStats {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let delta = other.mean - self.mean;
        HalfStats {
            count: self.count + other.count,
            mean: self.mean + delta * nb / (na + nb),
            m2: self.m2 + other.m2 + delta * delta * na * nb / (na + nb),
        }
    }

    fn se2(&self) -> f64 {
        if self.count > 1 {
            self.m2.max(0.0) / (self.count as f64 - 1.0) / self.count as f64
        } else {
            0.0
        }
    }
}

fn merge_stats(chunks: Vec<(HalfStats, HalfStats)>, total: usize) -> ComplexEstimate {
    let mut x = HalfStats::default();
    let mut y = HalfStats::default();
    for (cx, cy) in chunks {
        x = x.merge(cx);
        y = y.merge(cy);
    }
    ComplexEstimate {
        value: Complex64::new(x.mean, y.mean),
        standard_error: (x.se2() + y.se2()).sqrt(),
        sample_count: total,
    }
}

/// RNG stream ids: denominator chunks use the low range, numerator chunks
/// are offset so the two estimators never share a stream.
const NUMERATOR_STREAM_BASE: u64 = 1 << 32;

/// Denominator estimator: mean over n_d samples of
/// D(k1', k2') = <psi0| U_f^{2 k1' - 2 k2'} |psi0>, with k1', k2' ~ B(k, 1/2)
/// and the X / Y ancilla bases alternating per sample (X takes the extra
/// sample when n_d is odd).
pub fn estimate_d(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    cfg: &QmcConfig,
) -> Result<ComplexEstimate> {
    let ctx = EigenContext::new(psi0, d, cfg.e_s, cfg.t)?;
    let ranges = chunk_ranges(cfg.n_d, cfg.workers);
    let chunks: Vec<(HalfStats, HalfStats)> = ranges
        .par_iter()
        .enumerate()
        .map(|(chunk_idx, &(start, end))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(chunk_idx as u64);
            let mut x = HalfStats::default();
            let mut y = HalfStats::default();
            for q in start..end {
                let k1 = sample_binomial(cfg.k, &mut rng) as i64;
                let k2 = sample_binomial(cfg.k, &mut rng) as i64;
                let basis = if q % 2 == 0 { Basis::X } else { Basis::Y };
                let v = ctx.readout(
                    2 * k1 - 2 * k2,
                    None,
                    0,
                    basis,
                    cfg.shot_mode,
                    &mut rng,
                );
                let h = if q % 2 == 0 { &mut x } else { &mut y };
                h.push(v);
            }
            (x, y)
        })
        .collect();
    Ok(merge_stats(chunks, cfg.n_d))
}

/// Numerator estimator: mean over n_n samples of
/// N(n, k1, k2) = ||O||_1 sign(c_n)
///   <psi0| U_f^{k - 2 k2} sigma_n U_f^{2 k1 - k} |psi0>
/// assembled as <X> - i <Y>, with sigma_n drawn with probability
/// |c_n| / ||O||_1 and k1, k2 ~ B(k, 1/2).
pub fn estimate_n(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    observable: &PauliSum,
    cfg: &QmcConfig,
) -> Result<ComplexEstimate> {
    if observable.is_zero() {
        return Err(Error::ZeroObservable);
    }
    let one_norm = observable.one_norm();
    let cumulative: Vec<f64> = {
        let mut acc = 0.0;
        observable
            .terms()
            .iter()
            .map(|t| {
                acc += t.coefficient().abs() / one_norm;
                acc
            })
            .collect()
    };
    let ctx = EigenContext::new(psi0, d, cfg.e_s, cfg.t)?;
    let k = cfg.k as i64;
    let ranges = chunk_ranges(cfg.n_n, cfg.workers);
    let chunks: Vec<(HalfStats, HalfStats)> = ranges
        .par_iter()
        .enumerate()
        .map(|(chunk_idx, &(start, end))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(NUMERATOR_STREAM_BASE + chunk_idx as u64);
            let mut x = HalfStats::default();
            let mut y = HalfStats::default();
            for q in start..end {
                let u: f64 = rng.random();
                let n_idx = cumulative.partition_point(|&c| c < u).min(cumulative.len() - 1);
                let term = &observable.terms()[n_idx];
                let sign = term.coefficient().signum();
                let k1 = sample_binomial(cfg.k, &mut rng) as i64;
                let k2 = sample_binomial(cfg.k, &mut rng) as i64;
                let basis = if q % 2 == 0 { Basis::X } else { Basis::Y };
                let v = ctx.readout(
                    2 * k1 - k,
                    Some((sign, term.string())),
                    -(k - 2 * k2),
                    basis,
                    cfg.shot_mode,
                    &mut rng,
                ) * one_norm;
                let h = if q % 2 == 0 { &mut x } else { &mut y };
                h.push(v);
            }
            (x, y)
        })
        .collect();
    let mut est = merge_stats(chunks, cfg.n_n);
    // N = <X> - i <Y> per the numerator convention
    est.value = Complex64::new(est.value.re, -est.value.im);
    Ok(est)
}

/// Ratio estimator <O> = Re(N / D) with a first-order propagated error bar.
/// Fails when the denominator is statistically consistent with zero (the
/// overlap is too small or k is too large for the sample budget).
pub fn estimate_observable(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    observable: &PauliSum,
    cfg: &QmcConfig,
) -> Result<ObservableEstimate> {
    let den = estimate_d(psi0, d, cfg)?;
    let num = estimate_n(psi0, d, observable, cfg)?;
    let dmag = den.value.norm();
    if cfg.shot_mode == ShotMode::SingleShot || den.standard_error > 0.0 {
        if dmag <= 3.0 * den.standard_error {
            return Err(Error::UnstableRatio {
                value: dmag,
                stderr: den.standard_error,
            });
        }
    }
    let ratio = num.value / den.value;
    let nmag = num.value.norm();
    let se = ((num.standard_error / dmag).powi(2)
        + (nmag * den.standard_error / (dmag * dmag)).powi(2))
    .sqrt();
    Ok(ObservableEstimate {
        value: ratio.re,
        standard_error: se,
        numerator: num,
        denominator: den,
    })
}

fn binomial_weights(k: usize) -> Vec<f64> {
    // C(k, j) / 2^k via the multiplicative recurrence
    let mut w = Vec::with_capacity(k + 1);
    let mut c = 0.5f64.powi(k as i32);
    for j in 0..=k {
        w.push(c);
        if j < k {
            c *= (k - j) as f64 / (j + 1) as f64;
        }
    }
    w
}

/// Exact D by full enumeration of (k1', k2') against the binomial PMF,
/// through the same Hadamard-test readouts the sampler uses.
pub fn enumerate_d(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    k: usize,
    e_s: f64,
    t: f64,
) -> Result<Complex64> {
    let ctx = EigenContext::new(psi0, d, e_s, t)?;
    let w = binomial_weights(k);
    let mut total = Complex64::new(0.0, 0.0);
    for (k1, &w1) in w.iter().enumerate() {
        for (k2, &w2) in w.iter().enumerate() {
            let ov = ctx.overlap(2 * k1 as i64 - 2 * k2 as i64, None, 0);
            total += Complex64::new(w1 * w2, 0.0) * ov;
        }
    }
    Ok(total)
}

/// Exact N(O) by full enumeration of (n, k1, k2).
pub fn enumerate_n(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    observable: &PauliSum,
    k: usize,
    e_s: f64,
    t: f64,
) -> Result<Complex64> {
    if observable.is_zero() {
        return Err(Error::ZeroObservable);
    }
    let one_norm = observable.one_norm();
    let ctx = EigenContext::new(psi0, d, e_s, t)?;
    let w = binomial_weights(k);
    let ki = k as i64;
    let mut total = Complex64::new(0.0, 0.0);
    for term in observable.terms() {
        let p_n = term.coefficient().abs() / one_norm;
        let sign = term.coefficient().signum();
        for (k1, &w1) in w.iter().enumerate() {
            for (k2, &w2) in w.iter().enumerate() {
                let ov = ctx.overlap(
                    2 * k1 as i64 - ki,
                    Some((sign, term.string())),
                    -(ki - 2 * k2 as i64),
                );
                // <X> - i <Y> with <X> = Re ov, <Y> = Im ov
                let estimator = Complex64::new(ov.re, -ov.im);
                total += Complex64::new(p_n * w1 * w2 * one_norm, 0.0) * estimator;
            }
        }
    }
    Ok(total)
}

/// <O> with sampling replaced by exact expectation over the product
/// distribution: the unbiasedness reference for the sampled estimators.
pub fn estimate_observable_enumerated(
    psi0: &StateVector,
    d: &SpectralDecomposition,
    observable: &PauliSum,
    k: usize,
    e_s: f64,
    t: f64,
) -> Result<f64> {
    let den = enumerate_d(psi0, d, k, e_s, t)?;
    let num = enumerate_n(psi0, d, observable, k, e_s, t)?;
    if den.norm() == 0.0 {
        return Err(Error::UnstableRatio {
            value: 0.0,
            stderr: 0.0,
        });
    }
    Ok((num / den).re)
}

/// Sample budgets for |estimate - truth| <= epsilon with failure
/// probability at most delta.
///
/// `lambda_s` is the per-step multiplier normalized to <= 1 (the raw
/// amplification factor divided by 2) and must lie in (2^-q, 1); `c` links
/// the iteration order to the precision via k = c log2(1/epsilon).
#[allow(clippy::too_many_arguments)]
pub fn required_samples(
    epsilon: f64,
    delta: f64,
    o_one_norm: f64,
    a_s: f64,
    lambda_s: f64,
    c: f64,
    q: f64,
) -> Result<SampleBudget> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument("epsilon must be in (0, 1)".into()));
    }
    // delta < 8 keeps K positive; values >= 1 are only useful for checking
    // the K = 2 ln(8/delta) arithmetic
    if !(delta > 0.0 && delta < 8.0) {
        return Err(Error::InvalidArgument("delta must be in (0, 8)".into()));
    }
    if !(o_one_norm > 0.0) {
        return Err(Error::ZeroObservable);
    }
    if !(a_s > 0.0 && a_s <= 1.0) {
        return Err(Error::InvalidArgument(
            "overlap magnitude must be in (0, 1]".into(),
        ));
    }
    if !(c > 0.0 && q > 0.0) {
        return Err(Error::InvalidArgument("c and q must be positive".into()));
    }
    if !(lambda_s > 0.5f64.powf(q) && lambda_s < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "lambda_s = {lambda_s} must lie in (2^-q, 1) = ({}, 1)",
            0.5f64.powf(q)
        )));
    }
    let k_bound = 2.0 * (8.0 / delta).ln();
    let a4 = a_s.powi(4);

    // order expressions, base-2 logs
    let eps_pow = epsilon.powf(4.0 * c * q);
    let order_n_d = k_bound * (o_one_norm + 1.0).powi(2) / (a4 * eps_pow);
    let order_n_n = k_bound * o_one_norm.powi(2) / (a4 * eps_pow);

    // pre-asymptotic Hoeffding forms at k = ceil(c log2(1/eps)), with the
    // target error split evenly between the two estimators through the
    // denominator lower bound a_s^2 lambda_s^{2k}
    let k_iter = (c * (1.0 / epsilon).log2()).ceil().max(1.0);
    let d_lower = a_s * a_s * lambda_s.powf(2.0 * k_iter);
    let epsilon_d = epsilon * d_lower / (2.0 * (o_one_norm + 1.0));
    let epsilon_n = epsilon * d_lower / 2.0;
    let n_d = (2.0 * k_bound / (epsilon_d * epsilon_d)).ceil() as usize;
    let n_n = (2.0 * k_bound * o_one_norm * o_one_norm / (epsilon_n * epsilon_n)).ceil() as usize;

    Ok(SampleBudget {
        n_d,
        n_n,
        order_n_d,
        order_n_n,
        k_bound,
        delta,
        epsilon_d,
        epsilon_n,
    })
}
