//! Manifold moments from Chern numbers.
//!
//! Symmetric polynomials are [`MPoly`] values with `nu` at index 0 and the
//! elementary symmetric functions (later Chern classes) `y_1, ..., y_m` at
//! indices `1..=m`. `y_i` has weight `i`.
//!
//! The generating series are expanded in a total-degree variable `s`, where
//! `t` and `y_i` both count toward the degree; an auxiliary variable at
//! index `m + 1` records the power of `t` so each `s`-coefficient is a
//! polynomial.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::bernoulli::bernoulli_numbers;
use crate::moments::Manifold;
use crate::poly::MPoly;
use crate::rational::{binomial_q, factorial_q, int, parse_rational, Rational};
use crate::series::TruncatedSeries;

pub const NU_VAR: usize = 0;

/// Largest `k` for which `q_{kj}` is built on demand.
pub const K_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChernError {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("k = {0} exceeds the supported maximum {K_CAP}")]
    KTooLarge(usize),
    #[error("missing Chern number for partition {0:?}")]
    Missing(Vec<u32>),
    #[error("{0:?} is not a partition of {1}")]
    NotAPartition(Vec<u32>, u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn y(i: usize) -> MPoly {
    MPoly::var(i)
}

/// Weight of each variable for the quasihomogeneity grading.
pub fn y_weight(var: usize) -> u32 {
    if var == NU_VAR {
        0
    } else {
        var as u32
    }
}

/// `p_r(x_1..x_m)` in terms of `sigma_1..sigma_m` via Newton's identities.
pub fn power_sum_in_elementary(r: usize, m: usize) -> MPoly {
    let mut p: Vec<MPoly> = vec![MPoly::constant(int(m as i64))];
    for k in 1..=r {
        let mut acc = MPoly::zero();
        for i in 1..k.min(m + 1) {
            let term = &y(i) * &p[k - i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        if k <= m {
            let last = y(k).scale(&int(k as i64));
            acc = if k % 2 == 1 { &acc + &last } else { &acc - &last };
        }
        p.push(acc);
    }
    p.swap_remove(r)
}

/// `a^{(m)}_{k, 2k-j}`: the `t^j` coefficient of
/// `sum_i (x_i^{2k} - (x_i - t)^{2k} + t^{2k})` in elementary symmetric form.
pub fn a_sym(k: usize, j: usize, m: usize) -> Result<MPoly, ChernError> {
    if k < 1 || j < 1 || j > 2 * k - 1 {
        return Err(ChernError::Index(format!("a needs k >= 1, 1 <= j <= 2k-1 (k = {k}, j = {j})")));
    }
    let sign = if j % 2 == 0 { int(-1) } else { int(1) };
    let c = binomial_q(2 * k as u32, j as u32) * sign;
    Ok(power_sum_in_elementary(2 * k - j, m).scale(&c))
}

/// Coefficient tables `b_{kl}` and `c_{kl}` (`k + l <= order`) for `m` roots.
#[derive(Debug, Clone)]
pub struct ChernTables {
    m: usize,
    order: usize,
    b: TruncatedSeries<MPoly>,
    c: TruncatedSeries<MPoly>,
}

impl ChernTables {
    pub fn new(m: usize, order: usize) -> Self {
        let m = m.max(1);
        let tau = m + 1;
        let bern = bernoulli_numbers(order + 1);
        let exponent = |with_nu: bool| {
            TruncatedSeries::from_fn(order, |deg| {
                if deg == 0 || deg % 2 == 1 {
                    return MPoly::zero();
                }
                let k = deg / 2;
                let theta = -&bern[deg] / (int(deg as i64) * factorial_q(deg as u32));
                let mut acc = MPoly::zero();
                for j in 1..deg {
                    let a = a_sym(k, j, m).expect("valid indices");
                    acc = &acc + &(&a * &MPoly::term(mono(tau, j), int(1)));
                }
                if with_nu {
                    let nu_t = MPoly::term(nu_tau(tau, deg), int(-1));
                    acc = &acc + &nu_t;
                }
                acc.scale(&theta)
            })
        };
        let b = exponent(false).exp().expect("zero constant term");
        let c = exponent(true).exp().expect("zero constant term");
        ChernTables { m, order, b, c }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn extract(&self, series: &TruncatedSeries<MPoly>, k: usize, l: usize) -> Result<MPoly, ChernError> {
        if k + l > self.order {
            return Err(ChernError::Index(format!("k + l = {} exceeds table order {}", k + l, self.order)));
        }
        Ok(series.coeff(k + l).coefficient_of(self.m + 1, k as u32))
    }

    /// `b_{kl}`: coefficient of `t^k` in weighted degree `l` (no `nu` factor).
    pub fn b(&self, k: usize, l: usize) -> Result<MPoly, ChernError> {
        self.extract(&self.b, k, l)
    }

    /// `c_{kl}`: same with the extra factor `exp(-nu Theta(t))`.
    pub fn c(&self, k: usize, l: usize) -> Result<MPoly, ChernError> {
        self.extract(&self.c, k, l)
    }

    /// `d_{kj} = k! (-1)^j c_{k-j, j}`.
    pub fn d(&self, k: usize, j: usize) -> Result<MPoly, ChernError> {
        if j > k {
            return Err(ChernError::Index(format!("d needs j <= k (k = {k}, j = {j})")));
        }
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        Ok(self.c(k - j, j)?.scale(&(factorial_q(k as u32) * sign)))
    }
}

fn mono(var: usize, e: usize) -> Vec<u32> {
    let mut v = vec![0; var + 1];
    v[var] = e as u32;
    v
}

fn nu_tau(tau: usize, e: usize) -> Vec<u32> {
    let mut v = mono(tau, e);
    v[NU_VAR] = 1;
    v
}

pub fn b_sym(k: usize, l: usize, m: usize) -> Result<MPoly, ChernError> {
    ChernTables::new(m, k + l).b(k, l)
}

pub fn c_sym(k: usize, l: usize, m: usize) -> Result<MPoly, ChernError> {
    ChernTables::new(m, k + l).c(k, l)
}

static Q_CACHE: OnceLock<Mutex<HashMap<(usize, usize), MPoly>>> = OnceLock::new();

/// `q_{kj} = d^{(j)}_{2k, j}`, a polynomial in `nu` and `y_1..y_j`.
pub fn q_poly(k: usize, j: usize) -> Result<MPoly, ChernError> {
    if k < 1 || j > 2 * k - 1 {
        return Err(ChernError::Index(format!("q needs k >= 1, 0 <= j <= 2k-1 (k = {k}, j = {j})")));
    }
    if k > K_CAP {
        return Err(ChernError::KTooLarge(k));
    }
    let cache = Q_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("q cache poisoned").get(&(k, j)) {
        return Ok(p.clone());
    }
    let p = ChernTables::new(j.max(1), 2 * k).d(2 * k, j)?;
    cache.lock().expect("q cache poisoned").insert((k, j), p.clone());
    Ok(p)
}

/// Chern numbers `int_X c_{j_1} ... c_{j_s}` keyed by partitions of `n`
/// (parts sorted in decreasing order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    n: u32,
    numbers: BTreeMap<Vec<u32>, Rational>,
}

fn normalize(mut parts: Vec<u32>) -> Vec<u32> {
    parts.retain(|&p| p != 0);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `n`, parts in decreasing order.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut out);
    out
}

impl ChernData {
    pub fn new(n: u32) -> Self {
        ChernData { n, numbers: BTreeMap::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn insert(&mut self, parts: Vec<u32>, value: Rational) -> Result<(), ChernError> {
        let key = normalize(parts.clone());
        if key.iter().sum::<u32>() != self.n {
            return Err(ChernError::NotAPartition(parts, self.n));
        }
        self.numbers.insert(key, value);
        Ok(())
    }

    pub fn get(&self, parts: &[u32]) -> Result<Rational, ChernError> {
        let key = normalize(parts.to_vec());
        self.numbers.get(&key).cloned().ok_or(ChernError::Missing(key))
    }

    pub fn numbers(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.numbers
    }

    /// Reads `n <int>` followed by `partition j1,j2,... value p/q` lines.
    pub fn parse(text: &str) -> Result<Self, ChernError> {
        let mut data: Option<ChernData> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let perr = |msg: String| ChernError::Parse { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match (tokens.as_slice(), data.as_mut()) {
                (["n", v], None) => {
                    let n = v.parse::<u32>().map_err(|e| perr(format!("bad n: {e}")))?;
                    data = Some(ChernData::new(n));
                }
                (["partition", p, "value", v], Some(d)) => {
                    let parts = p
                        .split(',')
                        .map(|x| x.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| perr(format!("bad partition: {e}")))?;
                    let value = parse_rational(v).map_err(|e| perr(e.to_string()))?;
                    d.insert(parts, value).map_err(|e| perr(e.to_string()))?;
                }
                (_, None) => return Err(perr("expected `n <int>` first".into())),
                _ => return Err(perr(format!("cannot read {body:?}"))),
            }
        }
        data.ok_or(ChernError::Parse { line: 0, msg: "missing `n` line".into() })
    }
}

/// Chern numbers of projective space, a K3 surface or a genus-g curve.
pub fn chern_data_builtin(which: Manifold) -> ChernData {
    let n = which.dim() as u32;
    let mut d = ChernData::new(n);
    for parts in partitions_of(n) {
        let v = match which {
            Manifold::Pn(n) => parts.iter().map(|&j| binomial_q(n as u32 + 1, j)).product(),
            Manifold::K3 => {
                if parts == [2] {
                    int(24)
                } else {
                    int(0)
                }
            }
            Manifold::Genus(g) => int(2 - 2 * g),
        };
        d.insert(parts, v).expect("partition of n");
    }
    d
}

/// `int_X q(nu0, c) * c_{n-j}` for a polynomial in `nu` and `y`.
fn integrate(x: &ChernData, q: &MPoly, nu0: &Rational, extra: u32) -> Result<Rational, ChernError> {
    let mut total = Rational::zero();
    for (m, coeff) in q.terms() {
        let mut parts = Vec::new();
        let mut value = coeff.clone();
        for (var, &e) in m.iter().enumerate() {
            if var == NU_VAR {
                value *= crate::rational::pow(nu0, e as i64);
            } else {
                parts.extend(std::iter::repeat_n(var as u32, e as usize));
            }
        }
        if extra > 0 {
            parts.push(extra);
        }
        total += value * x.get(&parts)?;
    }
    Ok(total)
}

/// `Gamma_{2k}(V^mfd, nu)` as `sum_j int q_{kj}(n - nu, c) c_{n-j}`.
pub fn gamma_mfd_from_chern(x: &ChernData, nu: &Rational, k: usize) -> Result<Rational, ChernError> {
    let n = x.n();
    if k == 0 {
        return x.get(&[n]);
    }
    let shifted = int(n as i64) - nu;
    let mut total = Rational::zero();
    for j in 0..=(2 * k - 1).min(n as usize) {
        total += integrate(x, &q_poly(k, j)?, &shifted, n - j as u32)?;
    }
    Ok(total)
}

/// `V^mfd_{2k}`, the Bernoulli moment at `nu = 0`.
pub fn v_mfd_from_chern(x: &ChernData, k: usize) -> Result<Rational, ChernError> {
    gamma_mfd_from_chern(x, &Rational::zero(), k)
}
