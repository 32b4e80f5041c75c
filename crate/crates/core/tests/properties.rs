use std::sync::OnceLock;

use cymirror::enumerative::{
    gv_genus0, gw_bps_convert, integer_table, yukawa_from, Direction, GVTable, QData,
};
use cymirror::geometry::{pfaffian, SkewPolyMatrix, WeightedSpace};
use cymirror::linalg::det_bareiss;
use cymirror::mpoly::MPoly;
use cymirror::oracle::{LaurentMonomial, LaurentMonomialSystem};
use cymirror::rational::{frac, int, rat};
use cymirror::{fit_operator, operator_equal, Integer, Rational, Series, ThetaOperator};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

const N: usize = 10;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x00c0_ffee),
        failure_persistence: None,
        ..Config::default()
    }
}

fn series_strategy() -> impl Strategy<Value = Series> {
    prop::collection::vec(-20i64..20, N + 1).prop_map(|c| Series::from_ints(&c, N))
}

fn unit_series() -> impl Strategy<Value = Series> {
    (1i64..5, prop::collection::vec(-9i64..9, N)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        Series::from_ints(&c, N)
    })
}

/// `x + O(x²)`
fn tangent_series() -> impl Strategy<Value = Series> {
    prop::collection::vec(-9i64..9, N - 1).prop_map(|rest| {
        let mut c = vec![0, 1];
        c.extend(rest);
        Series::from_ints(&c, N)
    })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn ring_laws(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in series_strategy(), u in unit_series()) {
        prop_assert_eq!((&a * &u).try_div(&u).unwrap(), a);
    }

    #[test]
    fn exp_log_inverse(u in unit_series()) {
        let v = u.scale(&u.coeff(0).recip());
        prop_assert_eq!(v.log().unwrap().exp().unwrap(), v);
    }

    #[test]
    fn theta_integration_inverse(a in series_strategy()) {
        let a0 = &a - &Series::constant(a.coeff(0).clone(), N);
        prop_assert_eq!(a0.integrate_theta().unwrap().theta(), a0);
    }

    #[test]
    fn reversion_round_trip(s in tangent_series()) {
        let r = s.reversion().unwrap();
        prop_assert_eq!(s.compose(&r).unwrap(), Series::variable(N));
        prop_assert_eq!(r.compose(&s).unwrap(), Series::variable(N));
        prop_assert_eq!(r.reversion().unwrap(), s);
    }
}

proptest! {
    #![proptest_config(config(16))]

    /// A random first-order-in-φ operator with a MUM point is recovered from its own
    /// recurrence solution.
    #[test]
    fn fit_solve_round_trip(p1 in prop::collection::vec(-6i64..6, 5), lead in 1i64..4) {
        // a root at k >= 0 truncates the solution to a polynomial; one at -4..-1
        // cancels against (Θ+1)^4 and admits a smaller operator
        prop_assume!((-4..30i64).all(|k| (0..5).map(|i| p1[i] * k.pow(i as u32)).sum::<i64>() != 0));
        let coeffs: Vec<Vec<Integer>> = (0..=4)
            .map(|i| vec![if i == 4 { int(lead) } else { int(0) }, int(p1[i])])
            .collect();
        let op = ThetaOperator::new(coeffs);
        let s = op.recurrence_solve(&rat(1), 30).unwrap();
        prop_assert!(op.apply(&s).is_zero());
        let fitted = fit_operator(&s, 4, 1).unwrap().expect("operator found");
        prop_assert!(operator_equal(&fitted, &op));
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..=3, entries in prop::collection::vec(-7i64..7, 15)) {
        let n = 2 * half;
        let mut k = 0;
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                a[i][j] = entries[k];
                a[j][i] = -entries[k];
                k += 1;
            }
        }
        let m = SkewPolyMatrix::new(
            a.iter().map(|r| r.iter().map(|&x| MPoly::constant(0, rat(x))).collect()).collect(),
        ).unwrap();
        let pf = pfaffian(&m);
        let pf = pf.terms().values().next().cloned().unwrap_or_else(|| rat(0));
        let det = det_bareiss(&a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>());
        prop_assert_eq!(&pf * &pf, Rational::from_integer(det));
    }

    #[test]
    fn gv_inversion_round_trip(n0 in prop::collection::vec(-1000i64..1000, 6), n1 in prop::collection::vec(-1000i64..1000, 6)) {
        let to_ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        let t0 = integer_table("t", 0, &to_ints(&n0));
        let t1 = integer_table("t", 1, &to_ints(&n1));
        let gw0 = gw_bps_convert(&t0, Direction::BpsToGw, 6, None).unwrap();
        prop_assert_eq!(gw_bps_convert(&gw0, Direction::GwToBps, 6, None).unwrap().entries, t0.entries.clone());
        let gw1 = gw_bps_convert(&t1, Direction::BpsToGw, 6, Some(&t0)).unwrap();
        prop_assert_eq!(gw_bps_convert(&gw1, Direction::GwToBps, 6, Some(&t0)).unwrap().entries, t1.entries);
    }

    #[test]
    fn genus0_linear_in_degree(num in 1i64..40, den in 1i64..7) {
        let (op, qd, base) = hypergeometric();
        let a = frac(num, den);
        let k = yukawa_from(qd, op, &a).unwrap();
        let t = gv_genus0(&k, 4).unwrap();
        for d in 1..=4 {
            prop_assert_eq!(t.get(d), base.get(d) * &a);
        }
    }

    #[test]
    fn monomial_counts_match_generating_function(w in prop::collection::vec(1u32..4, 1..6), k in 0i64..12) {
        let space = WeightedSpace::new(w.clone()).unwrap();
        let mut gf = Series::one(12);
        for &wi in &w {
            let mut c = vec![0i64; 13];
            for m in (0..=12).step_by(wi as usize) {
                c[m] = 1;
            }
            gf = &gf * &Series::from_ints(&c, 12);
        }
        prop_assert_eq!(Rational::from_integer(space.h0(k)), gf.coeff(k as usize).clone());
    }

    #[test]
    fn oracle_paths_agree(
        exps in prop::collection::vec((-2i64..3, -2i64..3, 1u32..3), 4),
        t_power in 0u64..7,
    ) {
        let mono = |(a, b, t): (i64, i64, u32)| LaurentMonomial { x: vec![a, b], t };
        let rows = vec![exps[..2].iter().copied().map(mono).collect(), exps[2..].iter().copied().map(mono).collect()];
        let sys = LaurentMonomialSystem::new(rows).unwrap();
        prop_assert_eq!(sys.constant_term_coefficient(t_power), sys.constant_term_coefficient_naive(t_power));
    }
}

fn hypergeometric() -> &'static (ThetaOperator, QData, GVTable) {
    static CELL: OnceLock<(ThetaOperator, QData, GVTable)> = OnceLock::new();
    CELL.get_or_init(|| {
        let op = ThetaOperator::parse("T^4 - 9*p*(3*T+1)^2*(3*T+2)^2").unwrap();
        let qd = QData::new(&op, 8).unwrap();
        let k = yukawa_from(&qd, &op, &rat(1)).unwrap();
        let base = gv_genus0(&k, 4).unwrap();
        (op, qd, base)
    })
}
