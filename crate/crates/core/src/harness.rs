//! Sign checks on Bernoulli moments of spectra, threshold search in `nu`,
//! and the asymptotic trace sequence.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::thread;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bernoulli::bernoulli_numbers;
use crate::bernoulli_poly::{normalize, BernoulliPolyError};
use crate::moments::{gamma_series, q_series, v_sing};
use crate::rational::{binomial_q, int, pow, rat, to_f64, Rational};
use crate::series::TruncatedSeries;
use crate::spectra::Spectrum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("the sign condition fails already at nu = {0}")]
    FailsAtUpperBound(Rational),
    #[error("steps must be at least 1")]
    NoSteps,
    #[error("nu must be positive (got {0})")]
    NonpositiveNu(Rational),
    #[error("k_max must be at least 1")]
    EmptyRange,
    #[error("need n_1, n_2 >= 1, w_1, w_2 >= 1 and w_2 > w_1 n_1 n_2")]
    BadCurveData,
    #[error(transparent)]
    Normalization(#[from] BernoulliPolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `nu = n + 1`, strict signs.
    Weak,
    /// `nu = alpha_mu - alpha_1`, signs allowed to vanish.
    Strong,
}

impl Mode {
    pub fn nu_for(&self, s: &Spectrum) -> Rational {
        match self {
            Mode::Weak => int(s.n() + 1),
            Mode::Strong => s.width(),
        }
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, Mode::Weak)
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "W" | "w" => Ok(Mode::Weak),
            "S" | "s" => Ok(Mode::Strong),
            _ => Err(format!("unknown mode {s:?} (expected W or S)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "W",
            Mode::Strong => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub k: usize,
    pub gamma: Rational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub mode: Mode,
    pub nu: Rational,
    pub k_max: usize,
    pub verdicts: Vec<Verdict>,
    pub overall: bool,
}

impl ConjectureReport {
    /// Rows `k<TAB>Gamma_2k<TAB>ok|fail`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for v in &self.verdicts {
            let tag = if v.ok { "ok" } else { "fail" };
            s.push_str(&format!("{}\t{}\t{}\n", v.k, v.gamma, tag));
        }
        s
    }
}

fn sign_ok(k: usize, gamma: &Rational, strict: bool) -> bool {
    let signed = if k % 2 == 0 { gamma.clone() } else { -gamma.clone() };
    if strict {
        signed.is_positive()
    } else {
        !signed.is_negative()
    }
}

/// `Gamma_0, ..., Gamma_{2 k_max}` of the spectrum at `nu`.
pub fn gamma_moments(s: &Spectrum, nu: &Rational, k_max: usize) -> Vec<Rational> {
    let g = gamma_series(&v_sing(s, 2 * k_max).series, nu);
    (0..=k_max).map(|k| g.moment(2 * k)).collect()
}

pub fn check_conjecture(s: &Spectrum, mode: Mode, k_max: usize) -> ConjectureReport {
    let nu = mode.nu_for(s);
    let verdicts: Vec<Verdict> = gamma_moments(s, &nu, k_max)
        .into_iter()
        .enumerate()
        .map(|(k, gamma)| {
            // Gamma_0 = mu > 0 in both modes
            let ok = if k == 0 { gamma.is_positive() } else { sign_ok(k, &gamma, mode.is_strict()) };
            Verdict { k, gamma, ok }
        })
        .collect();
    let overall = verdicts.iter().all(|v| v.ok);
    ConjectureReport { mode, nu, k_max, verdicts, overall }
}

/// Checks many spectra on worker threads; results keep input order.
pub fn check_batch(spectra: &[Spectrum], mode: Mode, k_max: usize) -> Vec<ConjectureReport> {
    let workers = thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(spectra.len().max(1));
    let chunk = spectra.len().div_ceil(workers).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = spectra
            .chunks(chunk)
            .map(|c| scope.spawn(move || c.iter().map(|s| check_conjecture(s, mode, k_max)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// `(-1)^{k'} Gamma_{2k'}(V, nu) >= 0` for all `k <= k' <= k_cap`.
pub fn signs_hold(v: &TruncatedSeries, nu: &Rational, k: usize, k_cap: usize) -> bool {
    let g = gamma_series(&v.truncate(2 * k_cap), nu);
    (k..=k_cap).all(|j| sign_ok(j, &g.moment(2 * j), false))
}

/// Bisection for the smallest `nu` in `[0, nu_hi]` at which the signs of
/// `Gamma_{2k'}` are right for `k <= k' <= k_cap` (default `k_cap = k`).
/// Returns the upper end of the final bracket.
pub fn nu_threshold(
    s: &Spectrum,
    k: usize,
    nu_hi: &Rational,
    steps: usize,
    k_cap: Option<usize>,
) -> Result<Rational, HarnessError> {
    if steps == 0 {
        return Err(HarnessError::NoSteps);
    }
    let cap = k_cap.unwrap_or(k).max(k);
    let v = v_sing(s, 2 * cap).series;
    if !signs_hold(&v, nu_hi, k, cap) {
        return Err(HarnessError::FailsAtUpperBound(nu_hi.clone()));
    }
    let mut lo = Rational::zero();
    if signs_hold(&v, &lo, k, cap) {
        return Ok(lo);
    }
    let mut hi = nu_hi.clone();
    for _ in 0..steps {
        let mid = (&lo + &hi) / int(2);
        if signs_hold(&v, &mid, k, cap) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `sum m cos(2 pi (alpha - (n-1)/2))`.
pub fn trace_target(s: &Spectrum) -> f64 {
    s.centered().iter().map(|(c, m)| to_f64(m) * (2.0 * PI * to_f64(c)).cos()).sum()
}

/// `(-1)^k Gamma_{2k} (2pi)^{2k} Gamma(nu) / (2 (2k)! (2k)^{nu-1})` for
/// `k = 1..=k_max`.
pub fn trace_convergence(s: &Spectrum, nu: &Rational, k_max: usize) -> Result<Vec<f64>, HarnessError> {
    if !nu.is_positive() {
        return Err(HarnessError::NonpositiveNu(nu.clone()));
    }
    if k_max == 0 {
        return Err(HarnessError::EmptyRange);
    }
    let nuf = to_f64(nu);
    gamma_moments(s, nu, k_max)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, g)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            Ok(normalize(g, 2 * k, nuf, sign)?)
        })
        .collect()
}

/// Observed sign of `(-1)^k Q_{2k}(w)` for each `w` and `2 <= k <= k_max`,
/// as `(w, k, sign)` rows. Positivity is known on `(0, 1/2)` and `(1, oo)`;
/// elsewhere the sign is only tabulated.
pub fn q_sign_table(ws: &[Rational], k_max: usize) -> Vec<(Rational, usize, i8)> {
    let mut rows = Vec::new();
    for w in ws {
        let q = q_series(w, 2 * k_max);
        for k in 2..=k_max {
            let v = if k % 2 == 0 { q.moment(2 * k) } else { -q.moment(2 * k) };
            let sign = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
            rows.push((w.clone(), k, sign));
        }
    }
    rows
}

/// Terms of the factored form of `Gamma_{2k}(., 2)` for the difference
/// of two curve pieces, each divided by `Delta (n_2 - 1)` where
/// `Delta = w_2 - w_1 n_1 n_2`. Every term has sign `(-1)^k`.
pub fn curve_difference_terms(n1: i64, n2: i64, w1: i64, w2: i64, k: usize) -> Result<Vec<Rational>, HarnessError> {
    let u = w1 * n1 * n2;
    if n1 < 1 || n2 < 1 || w1 < 1 || w2 <= u {
        return Err(HarnessError::BadCurveData);
    }
    let b = bernoulli_numbers(2 * k + 1);
    let (uq, vq, nq) = (int(u), int(w2), int(n2));
    let geo_n = |e: usize| -> Rational {
        // sum_{j=0}^{2(e-1)} n_2^j / n_2^{2e-1}
        (0..=2 * (e as i64 - 1)).map(|j| pow(&nq, j)).sum::<Rational>() / pow(&nq, 2 * e as i64 - 1)
    };
    let geo_w = |i: usize| -> Rational {
        (0..=2 * (i as i64 - 1))
            .map(|j| pow(&vq, j) * pow(&uq, 2 * (i as i64 - 1) - j))
            .sum::<Rational>()
            / pow(&(&uq * &vq), 2 * i as i64 - 1)
    };
    if k == 0 {
        return Ok(vec![]);
    }
    let mut terms = vec![-&b[2 * k] * (geo_n(k) + geo_w(k))];
    for i in 1..k {
        let c = binomial_q(2 * k as u32, 2 * i as u32) * &b[2 * i] * &b[2 * k - 2 * i];
        terms.push(c * geo_w(i) * geo_n(k - i));
    }
    Ok(terms)
}

/// `Gamma_{2k}(V, 2)` of the moment series of
/// `(G(w_2) - G(w_1 n_1 n_2)) G(n_2)` with `G(a) = sum_{j=1}^{a-1} T^{j/a}`,
/// computed from the series.
pub fn curve_difference_gamma(n1: i64, n2: i64, w1: i64, w2: i64, k: usize) -> Rational {
    let u = w1 * n1 * n2;
    let order = 2 * k;
    let mut v = TruncatedSeries::zero(order);
    for (a, sign) in [(w2, 1), (u, -1)] {
        for i in 1..a {
            for j in 1..n2 {
                let e = rat(i, a) + rat(j, n2) - int(1);
                let term = TruncatedSeries::exp_linear(&e, order).scale(&int(sign));
                v = v.add(&term).expect("equal orders");
            }
        }
    }
    gamma_series(&v, &int(2)).moment(order)
}
