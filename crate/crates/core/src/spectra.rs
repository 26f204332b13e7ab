//! Spectra of isolated hypersurface singularities.
//!
//! A spectrum is stored as sorted `(alpha, multiplicity)` pairs together
//! with `n`, where the singularity lives in `n + 1` variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::UniPoly;
use crate::rational::{common_denominator, int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("spectrum is empty")]
    Empty,
    #[error("multiplicity {mult} of {alpha} is not positive")]
    NonpositiveMultiplicity { alpha: Rational, mult: Rational },
    #[error("spectral number {alpha} lies outside (-1, {n})")]
    OutOfRange { alpha: Rational, n: i64 },
    #[error("spectrum is not symmetric under alpha -> {n} - 1 - alpha (no partner for {alpha})")]
    NotSymmetric { alpha: Rational, n: i64 },
    #[error("need at least one weight")]
    NoWeights,
    #[error("weight {0} is outside (0, 1/2]")]
    BadWeight(Rational),
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("T_pqr needs p, q, r >= 2 (got {0}, {1}, {2})")]
    BadTpqr(i64, i64, i64),
    #[error("invalid Puiseux data: {0}")]
    BadPuiseux(String),
    #[error("expansion produced coefficient {coeff} at exponent {exponent}")]
    BadCoefficient { exponent: Rational, coeff: Rational },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: i64,
    entries: Vec<(Rational, Rational)>,
}

impl Spectrum {
    /// Validates and normalizes: equal spectral numbers are merged and the
    /// entries sorted. Multiplicities may be any positive rationals.
    pub fn new(n: i64, entries: Vec<(Rational, Rational)>) -> Result<Self, SpectrumError> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (a, m) in entries {
            if !m.is_positive() {
                return Err(SpectrumError::NonpositiveMultiplicity { alpha: a, mult: m });
            }
            *merged.entry(a).or_insert_with(Rational::zero) += m;
        }
        if merged.is_empty() {
            return Err(SpectrumError::Empty);
        }
        let lo = int(-1);
        let hi = int(n);
        for (a, m) in &merged {
            if *a <= lo || *a >= hi {
                return Err(SpectrumError::OutOfRange { alpha: a.clone(), n });
            }
            let partner = int(n - 1) - a;
            if merged.get(&partner) != Some(m) {
                return Err(SpectrumError::NotSymmetric { alpha: a.clone(), n });
            }
        }
        Ok(Spectrum { n, entries: merged.into_iter().collect() })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn entries(&self) -> &[(Rational, Rational)] {
        &self.entries
    }

    /// Total multiplicity.
    pub fn milnor_number(&self) -> Rational {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(_, m)| m.is_integer())
    }

    pub fn alpha_min(&self) -> &Rational {
        &self.entries[0].0
    }

    pub fn alpha_max(&self) -> &Rational {
        &self.entries[self.entries.len() - 1].0
    }

    /// `alpha_mu - alpha_1`.
    pub fn width(&self) -> Rational {
        self.alpha_max() - self.alpha_min()
    }

    /// `(alpha - (n-1)/2, multiplicity)` pairs.
    pub fn centered(&self) -> Vec<(Rational, Rational)> {
        let c = rat(self.n - 1, 2);
        self.entries.iter().map(|(a, m)| (a - &c, m.clone())).collect()
    }

    /// Text form: `n <int>` followed by `alpha <p/q> mult <p/q>` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (a, m) in &self.entries {
            s.push_str(&format!("alpha {a} mult {m}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, SpectrumError> {
        let mut n = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let perr = |msg: String| SpectrumError::Parse { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match tokens.as_slice() {
                ["n", v] if n.is_none() => {
                    n = Some(v.parse::<i64>().map_err(|e| perr(format!("bad n: {e}")))?);
                }
                ["alpha", a, "mult", m] if n.is_some() => {
                    let a = parse_rational(a).map_err(|e| perr(e.to_string()))?;
                    let m = parse_rational(m).map_err(|e| perr(e.to_string()))?;
                    entries.push((a, m));
                }
                _ if n.is_none() => return Err(perr("expected `n <int>` first".into())),
                _ => return Err(perr(format!("cannot read {body:?}"))),
            }
        }
        let n = n.ok_or(SpectrumError::Parse { line: 0, msg: "missing `n` line".into() })?;
        Spectrum::new(n, entries)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Normalized weights `w_0, ..., w_n`, each in `(0, 1/2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<Rational>,
}

impl WeightSystem {
    pub fn new(weights: Vec<Rational>) -> Result<Self, SpectrumError> {
        if weights.is_empty() {
            return Err(SpectrumError::NoWeights);
        }
        let half = rat(1, 2);
        if let Some(w) = weights.iter().find(|w| !w.is_positive() || **w > half) {
            return Err(SpectrumError::BadWeight(w.clone()));
        }
        Ok(WeightSystem { weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn n(&self) -> i64 {
        self.weights.len() as i64 - 1
    }

    /// `prod (1/w_i - 1)`.
    pub fn milnor_number(&self) -> Rational {
        self.weights.iter().map(|w| w.recip() - int(1)).product()
    }

    /// `sum (1 - 2 w_i)`, which is `alpha_mu - alpha_1`.
    pub fn width(&self) -> Rational {
        self.weights.iter().map(|w| int(1) - w * int(2)).sum()
    }
}

fn small(b: &BigInt) -> usize {
    b.to_usize().expect("exponent fits in usize")
}

pub fn spectrum_from_weights(w: &WeightSystem) -> Result<Spectrum, SpectrumError> {
    let d = common_denominator(w.weights());
    let du = small(&d);
    let expo: Vec<usize> = w.weights().iter().map(|x| small(&(x * &d).to_integer())).collect();
    let one = Rational::one();
    let mut num = UniPoly::constant(one.clone());
    for &a in &expo {
        let f = &UniPoly::monomial(one.clone(), a) - &UniPoly::monomial(one.clone(), du);
        num = &num * &f;
    }
    for &a in &expo {
        let f = &UniPoly::constant(one.clone()) - &UniPoly::monomial(one.clone(), a);
        let (q, r) = num.div_rem(&f);
        if !r.is_zero() {
            return Err(SpectrumError::InexactDivision);
        }
        num = q;
    }
    let dq = Rational::from_integer(d);
    let entries = num
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (int(e as i64) / &dq - int(1), c.clone()))
        .collect();
    Spectrum::new(w.n(), entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TpqrParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl TpqrParams {
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self, SpectrumError> {
        if p < 2 || q < 2 || r < 2 {
            return Err(SpectrumError::BadTpqr(p, q, r));
        }
        Ok(TpqrParams { p, q, r })
    }

    /// `1/p + 1/q + 1/r < 1`.
    pub fn is_hyperbolic(&self) -> bool {
        rat(1, self.p) + rat(1, self.q) + rat(1, self.r) < int(1)
    }

    pub fn milnor_number(&self) -> i64 {
        self.p + self.q + self.r - 1
    }
}

pub fn spectrum_tpqr(t: &TpqrParams) -> Spectrum {
    let mut entries = vec![(int(0), int(1)), (int(1), int(1))];
    for d in [t.p, t.q, t.r] {
        entries.extend((1..d).map(|i| (rat(i, d), int(1))));
    }
    Spectrum::new(2, entries).expect("T_pqr spectrum is symmetric")
}

/// Puiseux pairs `(n_i, r_i)` of an irreducible plane curve germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxData {
    pairs: Vec<(i64, i64)>,
    w: Vec<i64>,
}

impl PuiseuxData {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self, SpectrumError> {
        let bad = |m: String| Err(SpectrumError::BadPuiseux(m));
        if pairs.is_empty() {
            return bad("need at least one pair".into());
        }
        for &(n, r) in &pairs {
            if n < 2 {
                return bad(format!("n = {n} must be at least 2"));
            }
            if r < 1 || n.gcd(&r) != 1 {
                return bad(format!("pair ({n}, {r}) is not coprime"));
            }
        }
        if pairs[0].1 <= pairs[0].0 {
            return bad(format!("r_1 = {} must exceed n_1 = {}", pairs[0].1, pairs[0].0));
        }
        let mut w = vec![pairs[0].1];
        for k in 1..pairs.len() {
            let (nk, rk) = pairs[k - 1];
            let (n1, r1) = pairs[k];
            let wk = w[k - 1];
            let next = r1 - rk * n1 + nk * n1 * wk;
            let delta = next - wk * nk * n1;
            if delta <= 0 {
                return bad(format!("w_{} - w_{} n_{} n_{} = {delta} is not positive", k + 1, k, k, k + 1));
            }
            w.push(next);
        }
        Ok(PuiseuxData { pairs, w })
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    /// `w_1, ..., w_g`.
    pub fn w(&self) -> &[i64] {
        &self.w
    }

    /// `n'_k = n_{k+1} ... n_g` for `k = 0..=g`.
    pub fn n_prime(&self) -> Vec<i64> {
        (0..=self.genus())
            .map(|k| self.pairs[k..].iter().map(|p| p.0).product())
            .collect()
    }
}

/// `sum_{j=1}^{d-1} T^{j/d}` as exponent -> coefficient.
fn geometric(d: i64) -> BTreeMap<Rational, Rational> {
    (1..d).map(|j| (rat(j, d), int(1))).collect()
}

fn product(a: &BTreeMap<Rational, Rational>, b: &BTreeMap<Rational, Rational>) -> BTreeMap<Rational, Rational> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out
}

fn accumulate(acc: &mut BTreeMap<Rational, Rational>, t: BTreeMap<Rational, Rational>, sign: i64) {
    for (e, c) in t {
        *acc.entry(e).or_insert_with(Rational::zero) += c * int(sign);
    }
}

pub fn spectrum_curve(data: &PuiseuxData) -> Result<Spectrum, SpectrumError> {
    let np = data.n_prime();
    let w = data.w();
    let g = data.genus();
    let mut acc = product(&geometric(np[0]), &geometric(w[0] * np[1]));
    for k in 1..g {
        let right = geometric(np[k]);
        accumulate(&mut acc, product(&geometric(w[k] * np[k + 1]), &right), 1);
        accumulate(&mut acc, product(&geometric(w[k - 1] * np[k - 1]), &right), -1);
    }
    let mut entries = Vec::new();
    for (e, c) in acc {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() || !c.is_integer() {
            return Err(SpectrumError::BadCoefficient { exponent: e, coeff: c });
        }
        entries.push((e - int(1), c));
    }
    Spectrum::new(1, entries)
}

pub fn thom_sebastiani(a: &Spectrum, b: &Spectrum) -> Spectrum {
    let mut entries = Vec::with_capacity(a.entries.len() * b.entries.len());
    for (x, m) in &a.entries {
        for (y, k) in &b.entries {
            entries.push((x + y + int(1), m * k));
        }
    }
    Spectrum::new(a.n + b.n + 1, entries).expect("sum of symmetric spectra is symmetric")
}

pub fn spectrum_abstract(n: i64, entries: Vec<(Rational, Rational)>) -> Result<Spectrum, SpectrumError> {
    Spectrum::new(n, entries)
}

/// Abstract surface spectrum with centered spectral numbers `-1/2, 0, 1/2`
/// and multiplicities `r, mu - 2r, r` (so `n = 2`, stored as `0, 1/2, 1`).
pub fn three_point_spectrum(mu: &Rational, r: &Rational) -> Result<Spectrum, SpectrumError> {
    let mid = mu - r * int(2);
    let entries = [(int(0), r.clone()), (rat(1, 2), mid), (int(1), r.clone())]
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .collect();
    Spectrum::new(2, entries)
}
