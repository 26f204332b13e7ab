//! Polynomials over the rationals: a dense univariate type and a sparse
//! multivariate type.
//!
//! [`MPoly`] identifies variables by index only. Monomials are exponent
//! vectors with trailing zeros trimmed, so a polynomial that never mentions
//! variable 5 compares equal no matter how many variables the caller had in
//! mind. Names are supplied when printing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{binomial_q, Rational};

/// Dense polynomial in one variable, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    pub fn x() -> Self {
        UniPoly::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division. Only the nonzero terms of the divisor are visited,
    /// which keeps sparse divisors like `1 - x^e` cheap at high degree.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let support: Vec<(usize, &Rational)> = divisor
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if nd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for &(j, dj) in &support {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Unique polynomial of degree `< points.len()` through the given points
    /// (Newton divided differences). Panics on repeated abscissae.
    pub fn interpolate(points: &[(Rational, Rational)]) -> UniPoly {
        let n = points.len();
        let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = xs[i] - xs[i - level];
                assert!(!den.is_zero(), "interpolation nodes must be distinct");
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        let mut result = UniPoly::zero();
        for i in (0..n).rev() {
            let shift = UniPoly::new(vec![-xs[i].clone(), Rational::one()]);
            result = &(&result * &shift) + &UniPoly::constant(dd[i].clone());
        }
        result
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*w")?,
                _ => write!(f, "({c})*w^{i}")?,
            }
        }
        Ok(())
    }
}

/// Exponent vector with trailing zeros trimmed.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn exp_of(m: &Monomial, var: usize) -> u32 {
    m.get(var).copied().unwrap_or(0)
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.len().max(b.len());
    (0..n).map(|i| exp_of(a, i) + exp_of(b, i)).collect()
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(Vec::new(), c)
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        MPoly::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(m), c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms
            .get(&trim(m.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&[])
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(MPoly::one(), |acc, _| &acc * self)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| exp_of(m, var)).max()
    }

    /// Maximum over terms of `sum_i weight(i) * exponent_i`.
    pub fn weighted_degree(&self, weight: impl Fn(usize) -> u32) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().enumerate().map(|(i, e)| weight(i) * e).sum())
            .max()
    }

    /// True when every term has the same weighted degree `deg`.
    pub fn is_weighted_homogeneous(&self, weight: impl Fn(usize) -> u32, deg: u32) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().enumerate().map(|(i, e)| weight(i) * e).sum::<u32>() == deg)
    }

    /// Keeps only the terms whose weighted degree equals `deg`.
    pub fn weighted_part(&self, weight: impl Fn(usize) -> u32, deg: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().enumerate().map(|(i, e)| weight(i) * e).sum::<u32>() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `var^deg`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: usize, deg: u32) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if exp_of(m, var) == deg {
                let mut m = m.clone();
                if var < m.len() {
                    m[var] = 0;
                }
                out.add_term(m, c.clone());
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = exp_of(m, var);
            if e > 0 {
                let mut m = m.clone();
                m[var] -= 1;
                out.add_term(m, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Replaces `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &MPoly) -> Self {
        let max = self.degree_in(var).unwrap_or(0);
        let mut powers = vec![MPoly::one()];
        for i in 1..=max as usize {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = exp_of(m, var) as usize;
            let mut rest = m.clone();
            if var < rest.len() {
                rest[var] = 0;
            }
            let part = &MPoly::term(rest, c.clone()) * &powers[e];
            out = &out + &part;
        }
        out
    }

    /// Replaces `var` by a rational number.
    pub fn specialize(&self, var: usize, value: &Rational) -> Self {
        self.substitute(var, &MPoly::constant(value.clone()))
    }

    /// Full evaluation. Variables beyond `values.len()` must not occur.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let v = values
                        .get(i)
                        .unwrap_or_else(|| panic!("no value supplied for variable {i}"));
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Univariate view in `var`; panics if any other variable occurs.
    pub fn to_unipoly(&self, var: usize) -> UniPoly {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            assert!(
                m.iter().enumerate().all(|(i, &e)| i == var || e == 0),
                "polynomial is not univariate in variable {var}"
            );
            coeffs[exp_of(m, var) as usize] += c;
        }
        UniPoly::new(coeffs)
    }

    pub fn from_unipoly(p: &UniPoly, var: usize) -> Self {
        let mut out = MPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            let mut m = vec![0; var + 1];
            m[var] = i as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// `(x_var + shift)^n`, expanded.
    pub fn shifted_power(var: usize, shift: &Rational, n: u32) -> Self {
        let mut out = MPoly::zero();
        for j in 0..=n {
            let mut m = vec![0; var + 1];
            m[var] = j;
            let c = binomial_q(n, j) * num_traits::pow(shift.clone(), (n - j) as usize);
            out.add_term(m, c);
        }
        out
    }

    /// Renders with the given variable names; unnamed variables print as `v<i>`.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        MPolyDisplay { poly: self, names }
    }

    /// One `(exponents, coefficient)` row per term, in monomial order.
    pub fn rows(&self) -> Vec<(Monomial, Rational)> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
    }
}

struct MPolyDisplay<'a> {
    poly: &'a MPoly,
    names: &'a [&'a str],
}

impl fmt::Display for MPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.iter().enumerate().filter(|(_, e)| **e > 0) {
                let name = self.names.get(i).map(|s| s.to_string()).unwrap_or(format!("v{i}"));
                if e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), a * b);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn division_is_exact_for_products() {
        let a = up(&[1, -2, 0, 5]);
        let b = up(&[1, 0, 0, 0, -1]);
        let (q, r) = (&a * &b).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (q, r) = up(&[1, 1, 1]).div_rem(&up(&[1, 1]));
        assert_eq!(q, up(&[0, 1]));
        assert_eq!(r, up(&[1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::new(vec![rat(1, 2), int(0), rat(-3, 7), int(2)]);
        let pts: Vec<_> = (0..4).map(|i| (int(i), p.eval(&int(i)))).collect();
        assert_eq!(UniPoly::interpolate(&pts), p);
    }

    #[test]
    fn mpoly_arithmetic() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[1, 1]), int(2));
        assert_eq!(sq.len(), 3);
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.degree_in(1), Some(2));
        assert_eq!(sq.derivative(0), (&x + &y).scale(&int(2)));
        let shifted = sq.substitute(0, &(&x + &MPoly::constant(int(1))));
        assert_eq!(shifted.eval(&[int(0), int(0)]), int(1));
        assert_eq!(sq.coefficient_of(0, 1), y.scale(&int(2)));
        assert_eq!(
            MPoly::shifted_power(0, &rat(1, 2), 2),
            &(&x + &MPoly::constant(rat(1, 2))) * &(&x + &MPoly::constant(rat(1, 2)))
        );
        // trailing-zero trimming makes variable counts irrelevant
        assert_eq!(MPoly::term(vec![1, 0, 0], int(3)), x.scale(&int(3)));
    }
}
