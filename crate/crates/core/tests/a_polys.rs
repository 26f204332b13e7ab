mod common;

use common::*;
use specmom::bernoulli_poly::{a_eval, a_poly, bernoulli_poly_value, norlund_b, NU, X};
use specmom::poly::MPoly;
use specmom::rational::{int, rat};

#[test]
fn reduces_to_powers_at_nu_zero() {
    assert!(identity_at_nu_zero(12));
}

#[test]
fn odd_polys_vanish_at_zero() {
    assert!(odd_centers_vanish(6));
}

#[test]
fn center_values_have_alternating_sign_and_full_degree() {
    assert!(center_sign_law(8));
}

#[test]
fn addition_theorem_at_random_points() {
    assert!(addition_theorem(8, &mut rng(316), 5));
}

#[test]
fn parity_in_x() {
    assert!(parity(12));
}

#[test]
fn x_derivative_lowers_index() {
    assert!(x_derivative(12));
}

#[test]
fn nu_derivative_matches_theta() {
    assert!(nu_derivative(10));
}

#[test]
fn unit_difference_in_x() {
    assert!(difference_relation(10));
}

#[test]
fn three_term_relation_symbolic() {
    assert!(three_term_relation(10));
}

#[test]
fn falling_factorial_at_nu_k_plus_one() {
    assert!(factorization(8));
}

#[test]
fn derivative_of_top_polynomial() {
    assert!(derivative_representation(&[(2, 4), (3, 5), (2, 6)]));
}

#[test]
fn series_and_assembled_routes_agree() {
    assert!(routes_agree(14));
}

#[test]
fn multiplication_formula_examples() {
    assert!(multiplication_examples());
}

#[test]
fn small_polynomials() {
    // A_2 = x^2 - nu/12, A_4 = x^4 - nu x^2/2 + nu/120 + nu^2/48
    let at = |k, x: i64, nu: i64| a_eval(k, &int(x), &int(nu));
    assert_eq!(at(2, 3, 12), int(8));
    assert_eq!(at(4, 0, 1), rat(1, 120) + rat(1, 48));
    assert_eq!(a_poly(1), MPoly::var(X));
    assert_eq!(a_poly(6).degree_in(NU), Some(3));
    assert_eq!(a_poly(6).degree_in(X), Some(6));
}

#[test]
fn classical_bernoulli_polynomials() {
    // B_2(x) = x^2 - x + 1/6, B_3(x) = x^3 - 3x^2/2 + x/2
    let x = rat(2, 5);
    assert_eq!(bernoulli_poly_value(2, &x), &x * &x - &x + rat(1, 6));
    assert_eq!(bernoulli_poly_value(3, &x), &x * &x * &x - rat(3, 2) * &x * &x + &x / int(2));
    // B^{(2)}_2(x) = x^2 - 2x + 5/6
    assert_eq!(norlund_b(2, &int(2), &x), &x * &x - int(2) * &x + rat(5, 6));
}
