//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use specmom::bernoulli::bernoulli_numbers;
use specmom::bernoulli_poly::{a_poly, a_poly_assembled, verify_multiplication_formula, NU, X};
use specmom::poly::MPoly;
use specmom::rational::{binomial_q, factorial_q, int, rat, Rational};
use specmom::spectra::{spectrum_from_weights, Spectrum, WeightSystem};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut StdRng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

/// Weights of one block: Brieskorn-Pham `x^a`, chain `x^a y + y^b` or
/// loop `x^a y + y^b x`.
fn random_block(rng: &mut StdRng, room: usize) -> Vec<Rational> {
    let kind = if room >= 2 { rng.gen_range(0..3) } else { 0 };
    let a = rng.gen_range(2..=5i64);
    let b = rng.gen_range(2..=5i64);
    match kind {
        0 => vec![rat(1, a)],
        1 => vec![rat(b - 1, a * b), rat(1, b)],
        _ => vec![rat(b - 1, a * b - 1), rat(a - 1, a * b - 1)],
    }
}

/// Weight system of an isolated quasihomogeneous singularity with
/// `min..=max` variables.
pub fn random_weights(rng: &mut StdRng, min: usize, max: usize) -> WeightSystem {
    let target = rng.gen_range(min..=max);
    let mut w = Vec::new();
    while w.len() < target {
        w.extend(random_block(rng, target - w.len()));
    }
    WeightSystem::new(w).expect("block weights lie in (0, 1/2]")
}

pub fn random_qh_spectrum(rng: &mut StdRng, min: usize, max: usize) -> Spectrum {
    spectrum_from_weights(&random_weights(rng, min, max)).expect("valid weights")
}

/// `sum m (alpha - (n-1)/2)^{2k}` by direct summation.
pub fn raw_moment(s: &Spectrum, k: u32) -> Rational {
    s.centered()
        .iter()
        .map(|(c, m)| m * num_traits::pow(c.clone(), 2 * k as usize))
        .sum()
}

fn shift(var: usize, by: &Rational) -> MPoly {
    &MPoly::var(var) + &MPoly::constant(by.clone())
}

pub fn identity_at_nu_zero(k_max: usize) -> bool {
    (0..=k_max).all(|k| a_poly(k).specialize(NU, &Rational::zero()) == MPoly::term(vec![k as u32], int(1)))
}

pub fn odd_centers_vanish(k_max: usize) -> bool {
    (0..=k_max).all(|k| a_poly(2 * k + 1).specialize(X, &Rational::zero()).is_zero())
}

pub fn center_sign_law(k_max: usize) -> bool {
    (0..=k_max).all(|k| {
        let p = a_poly(2 * k).specialize(X, &Rational::zero());
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let signs = p.terms().all(|(_, c)| c * &sign >= Rational::zero());
        signs && p.degree_in(NU) == Some(k as u32)
    })
}

pub fn addition_theorem(k_max: usize, rng: &mut StdRng, points: usize) -> bool {
    (0..points).all(|_| {
        let (x1, n1, x2, n2) = (
            random_rational(rng, 7, 5),
            random_rational(rng, 7, 5),
            random_rational(rng, 7, 5),
            random_rational(rng, 7, 5),
        );
        (0..=k_max).all(|k| {
            let lhs = a_poly(k).eval(&[&x1 + &x2, &n1 + &n2]);
            let rhs: Rational = (0..=k)
                .map(|j| {
                    binomial_q(k as u32, j as u32)
                        * a_poly(j).eval(&[x1.clone(), n1.clone()])
                        * a_poly(k - j).eval(&[x2.clone(), n2.clone()])
                })
                .sum();
            lhs == rhs
        })
    })
}

pub fn parity(k_max: usize) -> bool {
    (0..=k_max).all(|k| {
        let flipped = a_poly(k).substitute(X, &MPoly::var(X).scale(&int(-1)));
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        flipped == a_poly(k).scale(&sign)
    })
}

pub fn x_derivative(k_max: usize) -> bool {
    (1..=k_max).all(|k| a_poly(k).derivative(X) == a_poly(k - 1).scale(&int(k as i64)))
}

pub fn nu_derivative(k_max: usize) -> bool {
    let b = bernoulli_numbers(k_max + 2);
    (0..=k_max).all(|k| {
        let mut rhs = MPoly::zero();
        for j in 1..=k / 2 {
            let c = binomial_q(k as u32, 2 * j as u32) * -&b[2 * j] / int(2 * j as i64);
            rhs = &rhs + &a_poly(k - 2 * j).scale(&c);
        }
        a_poly(k).derivative(NU) == rhs
    })
}

pub fn difference_relation(k_max: usize) -> bool {
    let half = rat(1, 2);
    (1..=k_max).all(|k| {
        let up = a_poly(k).substitute(NU, &shift(NU, &int(1)));
        let lhs = &up.substitute(X, &shift(X, &half)) - &up.substitute(X, &shift(X, &-half.clone()));
        lhs == a_poly(k - 1).scale(&int(k as i64))
    })
}

pub fn three_term_relation(k_max: usize) -> bool {
    let half = rat(1, 2);
    (1..=k_max).all(|k| {
        let up = a_poly(k).substitute(NU, &shift(NU, &int(1)));
        [int(1), int(-1)].iter().all(|sign| {
            let lhs = &MPoly::var(NU) * &up.substitute(X, &shift(X, &(&half * sign)));
            let nu_minus_k = shift(NU, &-int(k as i64));
            let lin = &MPoly::var(X) + &MPoly::var(NU).scale(&(&half * sign));
            let rhs = &(&nu_minus_k * &a_poly(k)) + &(&lin * &a_poly(k - 1)).scale(&int(k as i64));
            lhs == rhs
        })
    })
}

pub fn factorization(k_max: usize) -> bool {
    (0..=k_max).all(|k| {
        let lhs = a_poly(k).specialize(NU, &int(k as i64 + 1));
        let rhs = (0..k).fold(MPoly::one(), |acc, j| {
            &acc * &shift(X, &(rat(k as i64 - 1, 2) - int(j as i64)))
        });
        lhs == rhs
    })
}

/// `A_k = k!/(nu-1)! * d^{nu-1-k}/dx^{nu-1-k} A_{nu-1}` at integer `nu >= k+1`.
pub fn derivative_representation(pairs: &[(usize, i64)]) -> bool {
    pairs.iter().all(|&(k, nu)| {
        let nuq = int(nu);
        let mut p = a_poly(nu as usize - 1).specialize(NU, &nuq);
        for _ in 0..(nu as usize - 1 - k) {
            p = p.derivative(X);
        }
        let c = factorial_q(k as u32) / factorial_q(nu as u32 - 1);
        p.scale(&c) == a_poly(k).specialize(NU, &nuq)
    })
}

pub fn routes_agree(k_max: usize) -> bool {
    (0..=k_max).all(|k| a_poly(k) == a_poly_assembled(k))
}

pub fn multiplication_examples() -> bool {
    [(4, 2), (6, 3), (2, 2), (5, 1), (7, 4)]
        .iter()
        .all(|&(k, nu)| verify_multiplication_formula(k, nu) == Ok(true))
}
