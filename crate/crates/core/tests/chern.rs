use specmom::chern::{
    chern_data_builtin, gamma_mfd_from_chern, q_poly, v_mfd_from_chern, y_weight, ChernTables, NU_VAR,
};
use specmom::moments::{gamma_ber, v_mfd, Manifold};
use specmom::poly::MPoly;
use specmom::rational::{factorial_q, int, Rational};

fn y(i: usize) -> MPoly {
    if i == 0 {
        MPoly::one()
    } else {
        MPoly::var(i)
    }
}

fn sign(j: usize) -> Rational {
    if j % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Degree-`m` part of `(sum_k t^k sum_l c_kl)(sum_i y_{m-i} (-t)^i)` at `t^k`.
fn product_coefficient(tables: &ChernTables, m: usize, k: usize) -> MPoly {
    let mut acc = MPoly::zero();
    for i in 0..=k.min(m) {
        for l in 0..=(k + m) {
            if (k - i) + l > k + m {
                continue;
            }
            let c = tables.c(k - i, l).unwrap();
            acc = &acc + &(&c * &y(m - i)).scale(&sign(i));
        }
    }
    acc.weighted_part(y_weight, m as u32)
}

#[test]
fn product_bookkeeping_reproduces_d() {
    for m in 1..=3usize {
        let tables = ChernTables::new(m, 4 + m + 4);
        assert_eq!(product_coefficient(&tables, m, 0), y(m));
        for k in 1..=4usize {
            let mut expect = MPoly::zero();
            for j in 0..=(k - 1).min(m) {
                expect = &expect + &(&y(m - j) * &tables.d(k, j).unwrap());
            }
            let expect = expect.scale(&(int(1) / factorial_q(k as u32)));
            assert_eq!(product_coefficient(&tables, m, k), expect, "m = {m}, k = {k}");
        }
    }
}

#[test]
fn tables_are_stable_in_m() {
    for m in 1..=3usize {
        let (small, large) = (ChernTables::new(m, 8), ChernTables::new(m + 1, 8));
        for k in 0..=4usize {
            for l in 0..=m.min(8 - k) {
                assert_eq!(small.b(k, l).unwrap(), large.b(k, l).unwrap(), "b m = {m} k = {k} l = {l}");
                assert_eq!(small.c(k, l).unwrap(), large.c(k, l).unwrap(), "c m = {m} k = {k} l = {l}");
            }
            for j in 0..=m.min(k) {
                assert_eq!(small.d(k, j).unwrap(), large.d(k, j).unwrap(), "d m = {m} k = {k} j = {j}");
            }
        }
    }
}

#[test]
fn q_degrees_in_nu() {
    for k in 1..=3usize {
        assert_eq!(q_poly(k, 0).unwrap().degree_in(NU_VAR), Some(k as u32));
        for j in 1..2 * k {
            let q = q_poly(k, j).unwrap();
            let bound = k as u32 - 1 - (j / 2) as u32;
            assert!(q.degree_in(NU_VAR).unwrap_or(0) <= bound, "q_{k},{j}");
            assert!(q.is_weighted_homogeneous(y_weight, j as u32) || q.is_zero(), "q_{k},{j} weight");
        }
    }
}

#[test]
fn chern_route_matches_euler_characteristics() {
    let manifolds =
        [Manifold::Pn(1), Manifold::Pn(2), Manifold::Pn(3), Manifold::K3, Manifold::Genus(0), Manifold::Genus(2), Manifold::Genus(3)];
    for m in manifolds {
        let data = chern_data_builtin(m);
        let v = v_mfd(&m.chi(), 6);
        let n = int(m.dim() as i64);
        let g = gamma_ber(&v, &n).unwrap();
        for k in 0..=3 {
            assert_eq!(v_mfd_from_chern(&data, k).unwrap(), v.moment(2 * k), "{m:?} V_{}", 2 * k);
            assert_eq!(gamma_mfd_from_chern(&data, &n, k).unwrap(), g.moment(2 * k), "{m:?} Gamma_{}", 2 * k);
        }
    }
}

