//! Generalized Bernoulli polynomials `A_k(x, nu)`, defined by
//!
//! ```text
//! e^{x t} * exp(nu * Theta(t)) = sum_k A_k(x, nu) t^k / k!
//! ```
//!
//! and Nörlund's `B_k^{(nu)}(x) = A_k(x - nu/2, nu)`.
//!
//! Polynomials are [`MPoly`] values in the variables [`X`] and [`NU`].

use std::f64::consts::PI;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::bernoulli::{bernoulli_numbers, theta_ber};
use crate::poly::{MPoly, UniPoly};
use crate::rational::{binomial_q, factorial_q, from_f64, from_f64_simplest, int, ln_abs, rat, Rational};
use crate::series::TruncatedSeries;

/// Variable index of `x`.
pub const X: usize = 0;
/// Variable index of `nu`.
pub const NU: usize = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BernoulliPolyError {
    #[error("nu = {0} is a nonpositive integer")]
    NonpositiveIntegerNu(f64),
    #[error("index k = {0} is out of range for this operation")]
    IndexOutOfRange(usize),
    #[error("argument is not a finite number")]
    NotFinite,
    #[error("need an integer nu >= 1 and k >= nu (got k = {k}, nu = {nu})")]
    MultiplicationPrecondition { k: usize, nu: i64 },
}

static CACHE: OnceLock<RwLock<Vec<MPoly>>> = OnceLock::new();

/// Expands `e^{xt} exp(nu Theta(t))` with symbolic `x` and `nu` up to `t^order`.
fn generate(order: usize) -> Vec<MPoly> {
    let theta = theta_ber(order);
    let nu_theta: TruncatedSeries<MPoly> =
        theta.map(|c| MPoly::term(vec![0, 1], c.clone()));
    let e_nu = nu_theta.exp().expect("Theta has zero constant term");
    let e_x = TruncatedSeries::from_fn(order, |k| {
        MPoly::term(vec![k as u32], factorial_q(k as u32).recip())
    });
    let prod = e_x.mul(&e_nu).expect("equal orders");
    (0..=order).map(|k| prod.moment(k)).collect()
}

/// `A_k(x, nu)` as an exact polynomial. Results are memoized.
pub fn a_poly(k: usize) -> MPoly {
    let cache = CACHE.get_or_init(|| RwLock::new(Vec::new()));
    {
        let c = cache.read().expect("a_poly cache poisoned");
        if let Some(p) = c.get(k) {
            return p.clone();
        }
    }
    let mut c = cache.write().expect("a_poly cache poisoned");
    if c.len() <= k {
        let order = k.max(2 * c.len()).max(16);
        *c = generate(order);
    }
    c[k].clone()
}

/// `A_{2j}(0, nu)` for `j = 0..=max_half`, obtained by integrating the
/// `nu`-derivative rule `d/dnu A_k = sum_j C(k,2j) (-B_{2j}/(2j)) A_{k-2j}`
/// from `A_k(0, 0) = 0^k`. Independent of the series expansion above.
pub fn a_center_polys(max_half: usize) -> Vec<UniPoly> {
    let b = bernoulli_numbers(2 * max_half + 1);
    let mut out: Vec<UniPoly> = vec![UniPoly::constant(Rational::one())];
    for m in 1..=max_half {
        let k = 2 * m as u32;
        let mut deriv = UniPoly::zero();
        for j in 1..=m {
            let c = binomial_q(k, 2 * j as u32) * -&b[2 * j] / int(2 * j as i64);
            deriv = &deriv + &out[m - j].scale(&c);
        }
        out.push(integrate(&deriv));
    }
    out
}

fn integrate(p: &UniPoly) -> UniPoly {
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c / int(i as i64 + 1)),
    );
    UniPoly::new(coeffs)
}

/// `A_k(x, nu) = sum_j C(k, 2j) A_{2j}(0, nu) x^{k-2j}` built from
/// [`a_center_polys`]. Cross-check route for [`a_poly`].
pub fn a_poly_assembled(k: usize) -> MPoly {
    let centers = a_center_polys(k / 2);
    let mut out = MPoly::zero();
    for (j, center) in centers.iter().enumerate() {
        let xpow = MPoly::term(vec![(k - 2 * j) as u32], binomial_q(k as u32, 2 * j as u32));
        out = &out + &(&xpow * &MPoly::from_unipoly(center, NU));
    }
    out
}

/// Exact `A_k(x, nu)`.
pub fn a_eval(k: usize, x: &Rational, nu: &Rational) -> Rational {
    a_poly(k).eval(&[x.clone(), nu.clone()])
}

/// `A_0(x,nu), ..., A_order(x,nu)` at a fixed rational point, computed from
/// the rational series directly. Much cheaper than [`a_eval`] for large `k`.
pub fn a_values(x: &Rational, nu: &Rational, order: usize) -> Vec<Rational> {
    let gen = TruncatedSeries::exp_linear(x, order)
        .mul(&exp_theta(nu, order))
        .expect("equal orders");
    (0..=order).map(|k| gen.moment(k)).collect()
}

/// A single `A_k(x,nu)` at a rational point: `sum_j C(k,j) x^{k-j} E_j`
/// with `E_j` the moments of `exp(nu Theta^Ber)`.
pub fn a_value(k: usize, x: &Rational, nu: &Rational) -> Rational {
    let e = exp_theta(nu, k);
    let mut total = Rational::zero();
    let mut x_pow = Rational::one();
    // j runs downward so x^{k-j} grows incrementally; odd moments vanish
    for j in (0..=k).rev() {
        if j % 2 == 0 {
            total += binomial_q(k as u32, j as u32) * &x_pow * e.moment(j);
        }
        x_pow *= x;
    }
    total
}

/// `exp(nu * Theta^Ber(t))` to `order`, memoized per `nu`.
fn exp_theta(nu: &Rational, order: usize) -> TruncatedSeries {
    static SERIES: OnceLock<Mutex<HashMap<Rational, TruncatedSeries>>> = OnceLock::new();
    let cache = SERIES.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("cache poisoned").get(nu) {
        if s.order() >= order {
            return s.truncate(order);
        }
    }
    let s = theta_ber(order).scale(nu).exp().expect("zero constant term");
    cache.lock().expect("cache poisoned").insert(nu.clone(), s.clone());
    s
}

/// Nörlund's `B_k^{(nu)}(x) = A_k(x - nu/2, nu)`.
pub fn norlund_b(k: usize, nu: &Rational, x: &Rational) -> Rational {
    a_eval(k, &(x - nu / int(2)), nu)
}

/// Classical Bernoulli polynomial `B_k(x) = B_k^{(1)}(x)`.
pub fn bernoulli_poly_value(k: usize, x: &Rational) -> Rational {
    norlund_b(k, &Rational::one(), x)
}

/// `(sign, ln |Gamma(nu)|)`, rejecting poles.
pub(crate) fn ln_gamma_signed(nu: f64) -> Result<(f64, f64), BernoulliPolyError> {
    if !nu.is_finite() {
        return Err(BernoulliPolyError::NotFinite);
    }
    if nu <= 0.0 && nu.fract() == 0.0 {
        return Err(BernoulliPolyError::NonpositiveIntegerNu(nu));
    }
    if nu > 0.0 {
        return Ok((1.0, ln_gamma(nu)));
    }
    // reflection: Gamma(nu) Gamma(1 - nu) = pi / sin(pi nu)
    let s = (PI * nu).sin();
    Ok((s.signum(), PI.ln() - s.abs().ln() - ln_gamma(1.0 - nu)))
}

/// Log of the normalizing factor `(2 pi)^m Gamma(nu) / (2 m! m^{nu-1})`,
/// with its sign.
pub(crate) fn ln_normalizer(m: usize, nu: f64) -> Result<(f64, f64), BernoulliPolyError> {
    let (gsign, lgamma) = ln_gamma_signed(nu)?;
    let mf = m as f64;
    let l = mf * (2.0 * PI).ln() + lgamma - 2f64.ln() - ln_gamma(mf + 1.0) - (nu - 1.0) * mf.ln();
    Ok((gsign, l))
}

fn exact_point(x: f64, nu: f64) -> Result<(Rational, Rational), BernoulliPolyError> {
    let xq = from_f64_simplest(x).ok_or(BernoulliPolyError::NotFinite)?;
    let nq = from_f64_simplest(nu).ok_or(BernoulliPolyError::NotFinite)?;
    Ok((xq, nq))
}

/// Scales an exact value by the normalizer in the log domain.
pub(crate) fn normalize(value: &Rational, m: usize, nu: f64, sign: f64) -> Result<f64, BernoulliPolyError> {
    let (vs, lv) = ln_abs(value);
    if vs == 0 {
        return Ok(0.0);
    }
    let (gs, ln) = ln_normalizer(m, nu)?;
    Ok(sign * f64::from(vs) * gs * (lv + ln).exp())
}

/// `(-1)^k A_{2k}(x,nu) (2pi)^{2k} Gamma(nu) / (2 (2k)! (2k)^{nu-1})`,
/// which tends to `cos(2 pi x)` as `k` grows.
pub fn normalized_a(k: usize, x: f64, nu: f64) -> Result<f64, BernoulliPolyError> {
    if k == 0 {
        return Err(BernoulliPolyError::IndexOutOfRange(k));
    }
    ln_gamma_signed(nu)?;
    let (xq, nq) = exact_point(x, nu)?;
    let a = a_value(2 * k, &xq, &nq);
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    normalize(&a, 2 * k, nu, sign)
}

/// Odd-index companion of [`normalized_a`]:
/// `(-1)^{k-1} A_{2k-1}(x,nu) (2pi)^{2k-1} Gamma(nu) / (2 (2k-1)! (2k-1)^{nu-1})`,
/// which tends to `sin(2 pi x)`.
pub fn normalized_a_odd(k: usize, x: f64, nu: f64) -> Result<f64, BernoulliPolyError> {
    if k == 0 {
        return Err(BernoulliPolyError::IndexOutOfRange(k));
    }
    ln_gamma_signed(nu)?;
    let (xq, nq) = exact_point(x, nu)?;
    let a = a_value(2 * k - 1, &xq, &nq);
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    normalize(&a, 2 * k - 1, nu, sign)
}

/// Reduces `x` into `(-1/2, 1/2]` by subtracting the nearest integer.
pub fn reduce_periodic(x: f64) -> f64 {
    let r = x - x.round();
    if r <= -0.5 {
        r + 1.0
    } else {
        r
    }
}

/// The 1-periodic function agreeing with `A_k(x, 1)` on `(-1/2, 1/2]`.
pub fn periodic_a(k: usize, x: f64) -> Result<f64, BernoulliPolyError> {
    let r = from_f64(reduce_periodic(x)).ok_or(BernoulliPolyError::NotFinite)?;
    Ok(crate::rational::to_f64(&a_eval(k, &r, &Rational::one())))
}

/// Partial sum with `terms` harmonics of the Fourier series of
/// [`periodic_a`].
pub fn fourier_partial_sum(k: usize, x: f64, terms: usize) -> Result<f64, BernoulliPolyError> {
    if k < 1 {
        return Err(BernoulliPolyError::IndexOutOfRange(k));
    }
    if !x.is_finite() {
        return Err(BernoulliPolyError::NotFinite);
    }
    let kf = k as f64;
    // 2 k! / (2 pi)^k
    let scale = (2f64.ln() + ln_gamma(kf + 1.0) - kf * (2.0 * PI).ln()).exp();
    let mut sum = 0.0;
    for n in (1..=terms).rev() {
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let arg = 2.0 * PI * nf * reduce_periodic(x);
        let wave = if k % 2 == 0 { arg.cos() } else { arg.sin() };
        sum += sign * wave / nf.powi(k as i32);
    }
    let m = k.div_ceil(2);
    let lead = if k % 2 == 0 {
        if (m - 1) % 2 == 0 { 1.0 } else { -1.0 }
    } else if m % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    Ok(lead * scale * sum)
}

/// Checks, as exact polynomial identities in `x`, the expansion of
/// `A_k(x, nu)` through `A_j(x, nu)` and `A_{k-j}(x + (nu-1)/2 - l, 1)` for
/// every shift `l = 0..nu-1`.
pub fn verify_multiplication_formula(k: usize, nu: i64) -> Result<bool, BernoulliPolyError> {
    if nu < 1 || (k as i64) < nu {
        return Err(BernoulliPolyError::MultiplicationPrecondition { k, nu });
    }
    let nuq = int(nu);
    let n1 = (nu - 1) as u32;
    let lhs = a_poly(k).specialize(NU, &nuq);
    let prefactor = binomial_q(k as u32 - 1, n1);
    for l in 0..nu {
        let shift = rat(nu - 1, 2) - int(l);
        let shifted_x = &MPoly::var(X) + &MPoly::constant(shift);
        let mut rhs = MPoly::zero();
        for j in 0..=n1 {
            let sign = if (n1 - j) % 2 == 0 { int(1) } else { int(-1) };
            let c = &prefactor * sign * binomial_q(n1, j) * int(k as i64) / int(k as i64 - j as i64);
            let aj = a_poly(j as usize).specialize(NU, &nuq);
            let akj = a_poly(k - j as usize)
                .specialize(NU, &Rational::one())
                .substitute(X, &shifted_x);
            rhs = &rhs + &(&aj * &akj).scale(&c);
        }
        if rhs != lhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `true` iff every coefficient of `(-1)^k A_{2k}(0, nu)` is nonnegative.
pub fn center_sign_law_holds(k: usize) -> bool {
    let p = a_poly(2 * k).specialize(X, &Rational::zero());
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let ok = p.terms().all(|(_, c)| !(c * &sign).is_negative());
    ok
}
