//! Bernoulli numbers and the even series `log((t/2) / sinh(t/2))`.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::rational::{binomial_q, factorial_q, Rational};
use crate::series::TruncatedSeries;

static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// `B_0, ..., B_{count-1}` from the recursion `sum_{j<k} C(k,j) B_j = 0`
/// (`k >= 2`), with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(count: usize) -> Vec<Rational> {
    let table = TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]));
    {
        let t = table.read().expect("bernoulli table poisoned");
        if t.len() >= count {
            return t[..count].to_vec();
        }
    }
    let mut t = table.write().expect("bernoulli table poisoned");
    while t.len() < count {
        let m = t.len() as u32;
        let sum = t
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| acc + binomial_q(m + 1, j as u32) * b);
        t.push(-sum / Rational::from_integer((m + 1).into()));
    }
    t[..count].to_vec()
}

/// The single Bernoulli number `B_k`.
pub fn bernoulli(k: usize) -> Rational {
    bernoulli_numbers(k + 1).pop().expect("non-empty")
}

/// `Theta(t) = sum_{k>=1} (-1/(2k)) B_{2k} t^{2k} / (2k)!`, truncated at `order`.
pub fn theta_ber(order: usize) -> TruncatedSeries {
    let b = bernoulli_numbers(order + 1);
    TruncatedSeries::from_fn(order, |k| {
        if k == 0 || k % 2 == 1 {
            Rational::zero()
        } else {
            -&b[k] / (Rational::from_integer(k.into()) * factorial_q(k as u32))
        }
    })
}
