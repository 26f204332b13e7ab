//! Moment generating series of spectra and of Hodge data, and their
//! Bernoulli moments `Gamma(V, nu) = V * exp(nu * Theta)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bernoulli::{bernoulli_numbers, theta_ber};
use crate::bernoulli_poly::{a_value, norlund_b};
use crate::poly::{MPoly, UniPoly};
use crate::rational::{binomial_q, factorial_q, int, pow, rat, Rational};
use crate::series::{SeriesError, TruncatedSeries};
use crate::spectra::{Spectrum, TpqrParams, WeightSystem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentsError {
    #[error("expected a raw moment series, got Bernoulli moments at nu = {0}")]
    NotRaw(Rational),
    #[error("chi vector must have n + 1 = {expected} entries, got {got}")]
    ChiLength { expected: usize, got: usize },
    #[error("chi vector is not symmetric: chi_{p} != chi_{q}")]
    ChiNotSymmetric { p: usize, q: usize },
    #[error("weight 1 has no quotient form")]
    WeightOne,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MomentKind {
    Raw,
    Gamma(Rational),
}

/// An even exact series together with what it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSeries {
    pub series: TruncatedSeries,
    pub kind: MomentKind,
}

impl MomentSeries {
    pub fn raw(series: TruncatedSeries) -> Self {
        MomentSeries { series, kind: MomentKind::Raw }
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `j! * coeff_j`, so `moment(2k)` is `V_{2k}` or `Gamma_{2k}`.
    pub fn moment(&self, j: usize) -> Rational {
        self.series.moment(j)
    }

    /// `moment(2k)` for `k = 0..=k_max`.
    pub fn even_moments(&self, k_max: usize) -> Vec<Rational> {
        (0..=k_max).map(|k| self.moment(2 * k)).collect()
    }
}

/// `sum m * e^{t (alpha - (n-1)/2)}`.
pub fn v_sing(s: &Spectrum, order: usize) -> MomentSeries {
    let mut v = TruncatedSeries::zero(order);
    for (c, m) in s.centered() {
        v = v.add(&TruncatedSeries::exp_linear(&c, order).scale(&m)).expect("equal orders");
    }
    MomentSeries::raw(v)
}

/// `V * exp(nu * Theta)` on a bare series.
pub fn gamma_series(v: &TruncatedSeries, nu: &Rational) -> TruncatedSeries {
    let e = theta_ber(v.order()).scale(nu).exp().expect("zero constant term");
    v.mul(&e).expect("equal orders")
}

pub fn gamma_ber(v: &MomentSeries, nu: &Rational) -> Result<MomentSeries, MomentsError> {
    if let MomentKind::Gamma(old) = &v.kind {
        return Err(MomentsError::NotRaw(old.clone()));
    }
    Ok(MomentSeries { series: gamma_series(&v.series, nu), kind: MomentKind::Gamma(nu.clone()) })
}

/// `Gamma_{2k}` as `sum m * A_{2k}(alpha - (n-1)/2, nu)`.
pub fn gamma_ber_direct(s: &Spectrum, nu: &Rational, k: usize) -> Rational {
    s.centered()
        .iter()
        .map(|(c, m)| m * a_value(2 * k, c, nu))
        .sum()
}

/// Even series with `t^{2k}` coefficient `f(k) / (2k)!`.
fn even_from_moments(order: usize, mut f: impl FnMut(usize) -> Rational) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |j| {
        if j % 2 == 1 {
            Rational::zero()
        } else {
            f(j / 2) / factorial_q(j as u32)
        }
    })
}

fn product_of(order: usize, factors: impl IntoIterator<Item = TruncatedSeries>) -> TruncatedSeries {
    factors
        .into_iter()
        .fold(TruncatedSeries::one(order), |acc, f| acc.mul(&f).expect("equal orders"))
}

/// Product over the weights of `sum_k w^{2k} (2/(2k+1)) B_{2k+1}(1/(2w)) t^{2k}/(2k)!`.
pub fn v_sing_closed_qh(w: &WeightSystem, order: usize) -> MomentSeries {
    let one = Rational::one();
    let factors = w.weights().iter().map(|wi| {
        let x = (wi * int(2)).recip();
        even_from_moments(order, |k| {
            pow(wi, 2 * k as i64) * rat(2, 2 * k as i64 + 1) * norlund_b(2 * k + 1, &one, &x)
        })
    });
    MomentSeries::raw(product_of(order, factors.collect::<Vec<_>>()))
}

/// Product over the weights of `sum_k (-B_{2k}) (1 - w^{2k-1}) t^{2k}/(2k)!`,
/// which is `Gamma(V, n + 1)`.
pub fn gamma_w_closed_qh(w: &WeightSystem, order: usize) -> MomentSeries {
    let b = bernoulli_numbers(order + 1);
    let factors: Vec<_> = w
        .weights()
        .iter()
        .map(|wi| even_from_moments(order, |k| -&b[2 * k] * (int(1) - pow(wi, 2 * k as i64 - 1))))
        .collect();
    MomentSeries {
        series: product_of(order, factors),
        kind: MomentKind::Gamma(int(w.n() + 1)),
    }
}

/// `p_{2k}(w) = 1 - 2w + w^{2k} - (1-w)^{2k}`.
pub fn p_poly(k: usize) -> UniPoly {
    let one = Rational::one();
    let w = UniPoly::x();
    let one_minus_w = UniPoly::new(vec![one.clone(), -one.clone()]);
    let mut wk = UniPoly::constant(one.clone());
    let mut uk = UniPoly::constant(one.clone());
    for _ in 0..2 * k {
        wk = &wk * &w;
        uk = &uk * &one_minus_w;
    }
    let lin = UniPoly::new(vec![one.clone(), int(-2)]);
    &(&lin + &wk) - &uk
}

/// `Q(t, w) = exp(sum_k (-1/(2k)) B_{2k} p_{2k}(w) t^{2k}/(2k)!)` at a fixed `w`.
pub fn q_series(w: &Rational, order: usize) -> TruncatedSeries {
    let b = bernoulli_numbers(order + 1);
    let arg = even_from_moments(order, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            -&b[2 * k] / int(2 * k as i64) * p_poly(k).eval(w)
        }
    });
    arg.exp().expect("zero constant term")
}

/// `Q(t, w)` with symbolic `w` (variable 0).
pub fn q_series_symbolic(order: usize) -> TruncatedSeries<MPoly> {
    let b = bernoulli_numbers(order + 1);
    let arg = TruncatedSeries::from_fn(order, |j| {
        if j == 0 || j % 2 == 1 {
            return MPoly::zero();
        }
        let k = j / 2;
        let c = -&b[j] / (int(j as i64) * factorial_q(j as u32));
        MPoly::from_unipoly(&p_poly(k), 0).scale(&c)
    });
    arg.exp().expect("zero constant term")
}

/// `Q(t, w)` as `w/(1-w) * (e^{(w-1/2)t} - e^{t/2}) / (1 - e^{wt}) * exp((1-2w) Theta)`.
pub fn q_series_quotient(w: &Rational, order: usize) -> Result<TruncatedSeries, MomentsError> {
    if w.is_one() {
        return Err(MomentsError::WeightOne);
    }
    let half = rat(1, 2);
    let o = order + 1;
    let num = TruncatedSeries::exp_linear(&(w - &half), o).sub(&TruncatedSeries::exp_linear(&half, o))?;
    let den = TruncatedSeries::one(o).sub(&TruncatedSeries::exp_linear(w, o))?;
    let quotient = num.div_by_t()?.div(&den.div_by_t()?)?;
    let scaled = quotient.scale(&(w / (int(1) - w)));
    Ok(gamma_series(&scaled, &(int(1) - w * int(2))))
}

/// `mu * prod Q(t, w_i)`, which is `Gamma(V, alpha_mu - alpha_1)`.
pub fn gamma_s_closed_qh(w: &WeightSystem, order: usize) -> MomentSeries {
    let factors: Vec<_> = w.weights().iter().map(|wi| q_series(wi, order)).collect();
    MomentSeries {
        series: product_of(order, factors).scale(&w.milnor_number()),
        kind: MomentKind::Gamma(w.width()),
    }
}

/// `Gamma_{2k} = B_{2k} (-1 + p^{1-2k} + q^{1-2k} + r^{1-2k})`, i.e. `Gamma(V, 1)`.
pub fn gamma_tpqr_closed(t: &TpqrParams, order: usize) -> MomentSeries {
    let b = bernoulli_numbers(order + 1);
    let series = even_from_moments(order, |k| {
        let e = 1 - 2 * k as i64;
        &b[2 * k] * (int(-1) + pow(&int(t.p), e) + pow(&int(t.q), e) + pow(&int(t.r), e))
    });
    MomentSeries { series, kind: MomentKind::Gamma(int(1)) }
}

/// Signed Hodge Euler characteristics `chi_0, ..., chi_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiVector {
    n: usize,
    chi: Vec<i64>,
}

impl ChiVector {
    pub fn new(n: usize, chi: Vec<i64>) -> Result<Self, MomentsError> {
        if chi.len() != n + 1 {
            return Err(MomentsError::ChiLength { expected: n + 1, got: chi.len() });
        }
        for p in 0..=n {
            if chi[p] != chi[n - p] {
                return Err(MomentsError::ChiNotSymmetric { p, q: n - p });
            }
        }
        Ok(ChiVector { n, chi })
    }

    /// Reads the dimension off the vector length.
    pub fn from_values(chi: Vec<i64>) -> Result<Self, MomentsError> {
        let n = chi.len().checked_sub(1).ok_or(MomentsError::ChiLength { expected: 1, got: 0 })?;
        ChiVector::new(n, chi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi(&self) -> &[i64] {
        &self.chi
    }
}

/// Manifolds with closed-form Bernoulli moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Manifold {
    /// Projective space of the given dimension.
    Pn(usize),
    K3,
    /// Compact Riemann surface of the given genus.
    Genus(i64),
}

impl Manifold {
    pub fn dim(&self) -> usize {
        match self {
            Manifold::Pn(n) => *n,
            Manifold::K3 => 2,
            Manifold::Genus(_) => 1,
        }
    }

    pub fn chi(&self) -> ChiVector {
        let v = match self {
            Manifold::Pn(n) => vec![1; n + 1],
            Manifold::K3 => vec![2, 20, 2],
            Manifold::Genus(g) => vec![1 - g, 1 - g],
        };
        ChiVector::from_values(v).expect("builtin chi vectors are symmetric")
    }
}

/// `sum chi_p e^{t (p - n/2)}`.
pub fn v_mfd(chi: &ChiVector, order: usize) -> MomentSeries {
    let mut v = TruncatedSeries::zero(order);
    for (p, c) in chi.chi().iter().enumerate() {
        let shift = rat(2 * p as i64 - chi.n() as i64, 2);
        v = v.add(&TruncatedSeries::exp_linear(&shift, order).scale(&int(*c))).expect("equal orders");
    }
    MomentSeries::raw(v)
}

/// Closed form of `Gamma(V^mfd, dim)`.
pub fn gamma_mfd_closed(which: Manifold, order: usize) -> MomentSeries {
    let zero = Rational::zero();
    let series = match which {
        Manifold::Pn(n) => {
            let nu = int(n as i64 + 1);
            even_from_moments(order, |k| rat(-2, 2 * k as i64 + 1) * norlund_b(2 * k + 1, &nu, &zero))
        }
        Manifold::K3 => even_from_moments(order, |k| {
            rat(-4, 2 * k as i64 + 1) * norlund_b(2 * k + 1, &int(3), &zero)
                + int(18) * norlund_b(2 * k, &int(2), &int(1))
        }),
        Manifold::Genus(g) => {
            let b = bernoulli_numbers(order + 1);
            even_from_moments(order, |k| int(2 * (1 - g)) * &b[2 * k])
        }
    };
    MomentSeries { series, kind: MomentKind::Gamma(int(which.dim() as i64)) }
}

/// `(sinh(t/2) / (t/2))^m`.
pub fn sinc_power(m: usize, order: usize) -> TruncatedSeries {
    let half = rat(1, 2);
    let sinc = TruncatedSeries::from_fn(order, |j| {
        if j % 2 == 1 {
            Rational::zero()
        } else {
            pow(&half, j as i64) / factorial_q(j as u32 + 1)
        }
    });
    (0..m).fold(TruncatedSeries::one(order), |acc, _| acc.mul(&sinc).expect("equal orders"))
}

/// `Gamma(V, n+1) * sinc^{n+1} == V`, the formal quotient identity.
pub fn sinc_quotient_holds(v: &TruncatedSeries, n: usize) -> bool {
    let g = gamma_series(v, &int(n as i64 + 1));
    g.mul(&sinc_power(n + 1, v.order())).expect("equal orders") == *v
}

/// `Gamma_{2k}` is a combination `sum_l c_l(nu) V_{2l}`; returns the
/// coefficient polynomials `c_0, ..., c_k` in `nu`.
pub fn gamma_coefficient_polys(k: usize) -> Vec<UniPoly> {
    // Gamma_{2k} = sum_l C(2k, 2l) V_{2l} A_{2k-2l}(0, nu)
    let centers = crate::bernoulli_poly::a_center_polys(k);
    (0..=k)
        .map(|l| centers[k - l].scale(&binomial_q(2 * k as u32, 2 * l as u32)))
        .collect()
}
