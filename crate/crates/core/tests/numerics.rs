use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use infsubst::numerics::roots::{count_roots_closed, rational_roots, squarefree_part};
use infsubst::numerics::{factor_integer_poly, isolate_real_roots, refine_root};
use infsubst::spectral::certified_complex_roots;
use infsubst::{Ball, IntPolynomial};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ip(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn arb_rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| q(n, d))
}

fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..20, 1..7).prop_map(|c| ip(&c)).prop_filter("nonzero", |p| !p.is_zero())
}

fn enclose(x: &BigRational, prec: u32, widen: i64) -> Ball {
    let b = Ball::from_rational(x, prec);
    let w = Ball::from_rational(&q(widen, 1 << 20), prec);
    let lo = &b - &w;
    let hi = &b + &w;
    Ball::from_endpoints(&lo.lower(), &hi.upper(), prec)
}

proptest! {
    #[test]
    fn ball_arithmetic_contains_exact_results(x in arb_rat(), y in arb_rat(), wx in 0i64..3, wy in 0i64..3, prec in 32u32..160) {
        let (bx, by) = (enclose(&x, prec, wx), enclose(&y, prec, wy));
        prop_assert!(bx.contains_rational(&x));
        prop_assert!((&bx + &by).contains_rational(&(&x + &y)));
        prop_assert!((&bx - &by).contains_rational(&(&x - &y)));
        prop_assert!((&bx * &by).contains_rational(&(&x * &y)));
        if let Some(d) = bx.checked_div(&by) {
            prop_assert!(d.contains_rational(&(&x / &y)));
        }
        prop_assert!(bx.powu(5).contains_rational(&num_traits::Pow::pow(&x, 5u32)));
    }

    #[test]
    fn ball_sqrt_contains_root(n in 1i64..100_000, prec in 32u32..200) {
        let r = Ball::from_int(n).with_prec(prec).sqrt().unwrap();
        let sq = &r * &r;
        prop_assert!(sq.contains_rational(&q(n, 1)));
        prop_assert!(r.rad_at_most_pow2(prec as i64 - 24));
    }

    #[test]
    fn factorisation_reproduces_input(p in arb_poly()) {
        let f = factor_integer_poly(&p).unwrap();
        prop_assert_eq!(f.expand(), p.to_rational());
        for g in f.irreducible_factors() {
            prop_assert!(g.lead().unwrap() > &BigInt::from(0));
            prop_assert_eq!(g.content(), BigInt::from(1));
        }
    }

    #[test]
    fn factorisation_of_products(roots in prop::collection::vec((-9i64..9, 1i64..5), 1..5), extra in arb_poly()) {
        let mut p = extra.clone();
        for (a, b) in &roots {
            p = &p * &ip(&[-a, *b]);
        }
        let f = factor_integer_poly(&p).unwrap();
        prop_assert_eq!(f.expand(), p.to_rational());
        for (a, b) in &roots {
            prop_assert!(p.to_rational().eval(&q(*a, *b)) == BigRational::from_integer(0.into()));
            prop_assert!(rational_roots(&p).contains(&q(*a, *b)));
        }
    }

    #[test]
    fn isolation_separates_distinct_rational_roots(rs in prop::collection::btree_set((-30i64..30, 1i64..4), 1..6)) {
        let mut p = ip(&[1]);
        let mut vals: Vec<BigRational> = rs.iter().map(|(a, b)| q(*a, *b)).collect();
        vals.sort();
        vals.dedup();
        for v in &vals {
            p = &p * &IntPolynomial::from_rational(&infsubst::RatPolynomial::new(vec![-v.clone(), q(1, 1)]));
        }
        let iso = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(iso.len(), vals.len());
        for v in &vals {
            prop_assert_eq!(iso.iter().filter(|r| r.contains(v)).count(), 1);
        }
    }

    #[test]
    fn refinement_of_square_roots(n in 2i64..500, bits in 64u32..300) {
        prop_assume!(((n as f64).sqrt().round() as i64).pow(2) != n);
        let p = ip(&[-n, 0, 1]);
        let b = refine_root(&p, &q(0, 1), &q(n, 1), bits).unwrap();
        prop_assert!(b.rad_at_most_pow2(bits as i64));
        prop_assert!((&b * &b).contains_rational(&q(n, 1)));
    }
}

#[test]
fn squarefree_and_counting() {
    // (x - 1)^2 (x + 2)
    let p = ip(&[2, -3, 0, 1]);
    assert_eq!(squarefree_part(&p), ip(&[-2, 1, 1]));
    assert_eq!(count_roots_closed(&p, &q(-3, 1), &q(3, 1)).unwrap(), 2);
    assert_eq!(count_roots_closed(&p, &q(1, 1), &q(1, 1)).unwrap(), 1);
}

#[test]
fn quartic_splits_into_quadratics() {
    // -(x^4 + 2x^3 + 2x - 1) = -(x^2 + 1)(x^2 + 2x - 1)
    let p = ip(&[1, -2, 0, -2, -1]);
    let f = factor_integer_poly(&p).unwrap();
    let mut got: Vec<IntPolynomial> = f.irreducible_factors().cloned().collect();
    got.sort_by_key(|g| g.to_string());
    let mut want = vec![ip(&[1, 0, 1]), ip(&[-1, 2, 1])];
    want.sort_by_key(|g| g.to_string());
    assert_eq!(got, want);
    assert_eq!(f.constant, q(-1, 1));
}

#[test]
fn certified_complex_roots_of_quadratic() {
    // 3x^2 + x + 1 has roots (-1 ± i sqrt 11)/6 with |z|^2 = 1/3
    let z = certified_complex_roots(&ip(&[1, 1, 3]), 128).unwrap();
    assert_eq!(z.len(), 2);
    for r in &z {
        assert!(r.norm_sqr().contains_rational(&q(1, 3)));
        assert!(r.re.contains_rational(&q(-1, 6)));
    }
}
