//! Truncated formal power series in one variable `t`.
//!
//! A [`TruncatedSeries`] of order `N` knows the coefficients of `t^0..=t^N`;
//! everything above is unknown rather than zero. Coefficients are plain
//! Taylor coefficients. Moments in the `sum V_k t^k / k!` convention are read
//! through [`TruncatedSeries::moment`].
//!
//! The engine is generic over the coefficient ring so the same `exp`/`log`
//! code serves rational series and series whose coefficients are
//! polynomials in auxiliary variables.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::MPoly;
use crate::rational::{factorial_q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("exp needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("log needs a series with constant term 1")]
    ConstantTermNotOne,
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("cannot divide by t: constant term is nonzero")]
    NotDivisibleByT,
}

/// A commutative Q-algebra usable as series coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn try_recip(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn try_recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coefficient for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rational) -> Self {
        MPoly::scale(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        MPoly::constant(c)
    }
    fn try_recip(&self) -> Option<Self> {
        let c = self.constant_term();
        (self.len() == 1 && !Zero::is_zero(&c)).then(|| MPoly::constant(c.recip()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C = Rational> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients beyond the order.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// `c * t^k`, or zero when `k > order`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from a coefficient rule `k -> c_k`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`. Panics when `k` exceeds the order.
    pub fn coeff(&self, k: usize) -> &C {
        assert!(k <= self.order(), "coefficient {k} beyond order {}", self.order());
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `k! * coeff(k)`, the moment in the exponential-generating convention.
    pub fn moment(&self, k: usize) -> C {
        self.coeff(k).scale(&factorial_q(k as u32))
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(C::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order by truncation");
        Self::from_coeffs(self.coeffs[..=order].to_vec(), order)
    }

    fn check_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.order() != rhs.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: rhs.order() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, c: &C) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-<Rational as One>::one())
    }

    /// `s(lambda * t)`: coefficient `k` multiplied by `lambda^k`.
    pub fn scale_arg(&self, lambda: &Rational) -> Self {
        let mut p = <Rational as One>::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.scale(&p));
            p *= lambda;
        }
        TruncatedSeries { coeffs }
    }

    /// `exp(s)` via `(exp s)' = s' exp s`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut e = Vec::with_capacity(n + 1);
        e.push(C::one());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in (1..=k).filter(|&j| !self.coeffs[j].is_zero()) {
                let term = self.coeffs[j].times(&e[k - j]);
                acc = acc.plus(&term.scale(&Rational::from_integer(j.into())));
            }
            e.push(acc.scale(&Rational::new(1.into(), k.into())));
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// `log(s)` via `s' = (log s)' s`; requires constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let mut l = vec![C::zero(); n + 1];
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..k {
                if l[j].is_zero() || self.coeffs[k - j].is_zero() {
                    continue;
                }
                let term = l[j].times(&self.coeffs[k - j]);
                acc = acc.plus(&term.scale(&Rational::from_integer(j.into())));
            }
            l[k] = self.coeffs[k].minus(&acc.scale(&Rational::new(1.into(), k.into())));
        }
        Ok(TruncatedSeries { coeffs: l })
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0inv = self.coeffs[0].try_recip().ok_or(SeriesError::NotInvertible)?;
        let n = self.order();
        let mut inv: Vec<C> = Vec::with_capacity(n + 1);
        inv.push(c0inv.clone());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in (1..=k).filter(|&j| !self.coeffs[j].is_zero()) {
                acc = acc.plus(&self.coeffs[j].times(&inv[k - j]));
            }
            inv.push(acc.times(&c0inv).scale(&-<Rational as One>::one()));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.mul(&rhs.inverse()?)
    }

    /// `s / t`. The result has order one less; requires a zero constant term.
    pub fn div_by_t(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisibleByT);
        }
        let order = self.order().saturating_sub(1);
        Ok(Self::from_coeffs(self.coeffs[1..].to_vec(), order))
    }

    pub fn map<D: Coefficient>(&self, f: impl FnMut(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl TruncatedSeries<Rational> {
    /// Truncation of `e^{a t}`; coefficient `k` is `a^k / k!`.
    pub fn exp_linear(a: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = <Rational as One>::one();
        coeffs.push(c.clone());
        for k in 1..=order {
            c = c * a / Rational::from_integer(k.into());
            coeffs.push(c.clone());
        }
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !Zero::is_zero(*c)) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.add(b)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.mul(b)
}

pub fn series_exp(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    s.exp()
}

pub fn series_log(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    s.log()
}

pub fn series_scale_arg(s: &TruncatedSeries, lambda: &Rational) -> TruncatedSeries {
    s.scale_arg(lambda)
}

pub fn exp_linear(a: &Rational, order: usize) -> TruncatedSeries {
    TruncatedSeries::exp_linear(a, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial_q, int, rat};
    use proptest::prelude::*;

    fn s(c: &[Rational], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.to_vec(), order)
    }

    #[test]
    fn add_examples() {
        let a = s(&[int(1), int(1)], 3);
        let b = s(&[int(1), int(-1)], 3);
        assert_eq!(a.add(&b).unwrap(), TruncatedSeries::constant(int(2), 3));
        assert_eq!(a.add(&TruncatedSeries::<Rational>::zero(3)).unwrap(), a);
        let c = s(&[int(0), int(0), rat(1, 2)], 2).add(&s(&[int(0), int(0), rat(1, 3)], 2));
        assert_eq!(*c.unwrap().coeff(2), rat(5, 6));
        assert_eq!(
            a.add(&TruncatedSeries::<Rational>::zero(4)),
            Err(SeriesError::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn mul_examples() {
        let a = s(&[int(1), int(1)], 2);
        let b = s(&[int(1), int(-1)], 2);
        assert_eq!(a.mul(&b).unwrap(), s(&[int(1), int(0), int(-1)], 2));
        assert_eq!(a.mul(&TruncatedSeries::<Rational>::one(2)).unwrap(), a);
        assert!(a.mul(&TruncatedSeries::<Rational>::one(3)).is_err());
        for order in 0..12 {
            let p = exp_linear(&int(1), order).mul(&exp_linear(&int(-1), order)).unwrap();
            assert_eq!(p, TruncatedSeries::<Rational>::one(order));
        }
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::<Rational>::zero(5).exp().unwrap(), TruncatedSeries::<Rational>::one(5));
        let e = s(&[int(0), int(1)], 8).exp().unwrap();
        for k in 0..=8 {
            assert_eq!(*e.coeff(k), factorial_q(k as u32).recip());
        }
        // log(1+t) = sum (-1)^{k+1} t^k / k
        let log1p = TruncatedSeries::from_fn(9, |k| {
            if k == 0 {
                int(0)
            } else {
                rat(if k % 2 == 1 { 1 } else { -1 }, k as i64)
            }
        });
        assert_eq!(log1p.exp().unwrap(), s(&[int(1), int(1)], 9));
        assert_eq!(TruncatedSeries::<Rational>::one(3).exp(), Err(SeriesError::NonzeroConstantTerm));
    }

    #[test]
    fn log_examples() {
        assert_eq!(TruncatedSeries::<Rational>::one(6).log().unwrap(), TruncatedSeries::<Rational>::zero(6));
        let t2 = s(&[int(0), int(0), int(1)], 10);
        assert_eq!(t2.exp().unwrap().log().unwrap(), t2);
        assert_eq!(TruncatedSeries::constant(int(2), 3).log(), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn scale_arg_examples() {
        let e = exp_linear(&int(1), 6);
        assert_eq!(e.scale_arg(&int(1)), e);
        assert_eq!(e.scale_arg(&int(0)), TruncatedSeries::<Rational>::one(6));
        assert_eq!(*e.scale_arg(&int(2)).coeff(2), int(2));
        assert_eq!(e.scale_arg(&int(2)), exp_linear(&int(2), 6));
    }

    #[test]
    fn exp_linear_examples() {
        assert_eq!(exp_linear(&int(0), 4), TruncatedSeries::<Rational>::one(4));
        assert_eq!(*exp_linear(&rat(1, 6), 4).coeff(2), rat(1, 72));
        let p = exp_linear(&rat(-1, 2), 7).mul(&exp_linear(&rat(1, 2), 7)).unwrap();
        assert_eq!(p, TruncatedSeries::<Rational>::one(7));
    }

    #[test]
    fn inverse_and_division_by_t() {
        let a = s(&[int(2), int(3), int(-1)], 6);
        assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), TruncatedSeries::<Rational>::one(6));
        assert_eq!(TruncatedSeries::<Rational>::zero(3).inverse(), Err(SeriesError::NotInvertible));
        let t = s(&[int(0), int(5), int(7)], 3).div_by_t().unwrap();
        assert_eq!(t, s(&[int(5), int(7)], 2));
        assert!(a.div_by_t().is_err());
    }

    #[test]
    fn moments_and_parity() {
        let c = TruncatedSeries::exp_linear(&rat(1, 6), 6)
            .add(&exp_linear(&rat(-1, 6), 6))
            .unwrap();
        assert!(c.is_even());
        assert_eq!(c.moment(2), rat(1, 18));
        assert!(!exp_linear(&int(1), 3).is_even());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn series_with_constant(c: Rational, order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(small_rat(), order).prop_map(move |tail| {
            let mut v = vec![c.clone()];
            v.extend(tail);
            TruncatedSeries::from_coeffs(v, order)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exp_log_inverse(a in series_with_constant(int(0), 7), b in series_with_constant(int(1), 7)) {
            prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
            prop_assert_eq!(b.log().unwrap().exp().unwrap(), b);
        }

        #[test]
        fn mul_commutes_and_associates(
            a in series_with_constant(int(3), 6),
            b in series_with_constant(rat(-1, 2), 6),
            c in series_with_constant(int(0), 6),
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn exp_linear_inverse_pair(a in small_rat(), order in 0usize..14) {
            let p = exp_linear(&a, order).mul(&exp_linear(&-a.clone(), order)).unwrap();
            prop_assert_eq!(p, TruncatedSeries::<Rational>::one(order));
        }
    }
}
