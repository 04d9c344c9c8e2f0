//! Randomized invariants of the exact building blocks.

use std::cmp::Ordering;

use num_bigint::{BigUint, Sign};
use num_traits::Zero;
use polypade::arith::{binom, int, Rat};
use polypade::criterion::single_shift_condition;
use polypade::logexpr::LogExpr;
use polypade::mu::clears_pochhammer;
use polypade::series::bernoulli_poly;
use polypade::{LaurentSeries, PAdic, Poly};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-400i64..400, 1i64..60).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |x| !x.is_zero())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn vp(x: &Rat, p: u64) -> i64 {
    PAdic::from_rat(x, p, 64).unwrap().valuation().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn padic_ring_laws(p in prime(), a in small_rat(), b in small_rat(), c in small_rat()) {
        let n = 10;
        let [pa, pb, pc] = [&a, &b, &c].map(|x| PAdic::from_rat(x, p, n).unwrap());
        let l = pa.add(&pb).add(&pc);
        let r = pa.add(&pb.add(&pc));
        let k = l.abs_precision().min(r.abs_precision());
        prop_assert!(l.agrees_to(&r, k));

        let l = pa.mul(&pb.add(&pc));
        let r = pa.mul(&pb).add(&pa.mul(&pc));
        let k = l.abs_precision().min(r.abs_precision());
        prop_assert!(l.agrees_to(&r, k));
        // And both are the image of the exact value.
        let exact = PAdic::from_rat(&(&a * (&b + &c)), p, k + 8).unwrap();
        prop_assert!(exact.agrees_to(&l, k));
    }

    #[test]
    fn valuation_laws(p in prime(), x in nonzero_rat(), y in nonzero_rat()) {
        prop_assert_eq!(vp(&(&x * &y), p), vp(&x, p) + vp(&y, p));
        let s = &x + &y;
        if !s.is_zero() {
            let (vx, vy) = (vp(&x, p), vp(&y, p));
            let vs = vp(&s, p);
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
    }

    #[test]
    fn poly_ring_laws(f in poly(5), g in poly(5), h in poly(5), x in small_rat()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
    }

    #[test]
    fn shift_and_difference(f in poly(6), a in small_rat(), x in small_rat(), k in 0u64..5) {
        prop_assert_eq!(f.shift(&a).eval(&x), f.eval(&(&x + &a)));
        // Δ_a^k f(x) = Σ_j (-1)^{k-j} C(k,j) f(x + j a)
        let mut want = Rat::zero();
        for j in 0..=k {
            let term = Rat::from_integer(binom(k, j)) * f.eval(&(&x + &a * int(j as i64)));
            if (k - j) % 2 == 0 { want += term } else { want -= term }
        }
        prop_assert_eq!(f.delta_pow(&a, k).eval(&x), want);
        if let Some(d) = f.degree() {
            if d >= 1 && !a.is_zero() {
                prop_assert_eq!(f.delta(&a).degree(), Some(d - 1));
            }
        }
    }

    #[test]
    fn difference_raises_order_at_infinity(
        coeffs in prop::collection::vec(small_rat(), 12),
        a in small_rat(),
    ) {
        // Σ_{k=1}^{12} c_k z^{-k}
        let f = LaurentSeries::new(1, coeffs);
        let d = f.delta(&a);
        match f.ord() {
            Some(o) => prop_assert!(d.ord_at_least(o + 1)),
            None => prop_assert!(d.ord().is_none()),
        }
    }

    #[test]
    fn bernoulli_identities(n in 1usize..=20, x in small_rat(), y in small_rat()) {
        let b = bernoulli_poly(n);
        let lhs = b.eval(&(&x + int(1))) - b.eval(&x);
        prop_assert_eq!(lhs, int(n as i64) * num_traits::pow(x.clone(), n - 1));
        if n <= 12 {
            let mut sum = Rat::zero();
            for k in 0..=n {
                sum += Rat::from_integer(binom(n as u64, k as u64))
                    * num_traits::pow(y.clone(), n - k)
                    * bernoulli_poly(k).eval(&x);
            }
            prop_assert_eq!(sum, b.eval(&(&x + &y)));
        }
    }

    #[test]
    fn log_expressions_are_exact(a in 1u64..5000, b in 1u64..5000) {
        let (ba, bb) = (BigUint::from(a), BigUint::from(b));
        let split = LogExpr::ln_int(&(&ba * &bb)).sub(&LogExpr::ln_int(&ba)).sub(&LogExpr::ln_int(&bb));
        prop_assert!(split.is_zero());
        let q = LogExpr::ln_rat(&Rat::new(a.into(), b.into()));
        let want = (a as f64 / b as f64).ln();
        let iv = q.eval(80);
        let (lo, hi) = iv.to_f64();
        prop_assert!(lo <= want + 1e-12 && want - 1e-12 <= hi);
        prop_assert!(iv.width() < Rat::new(1.into(), 1_000_000_000.into()));
        let want_sign = match a.cmp(&b) {
            Ordering::Less => Sign::Minus,
            Ordering::Equal => Sign::NoSign,
            Ordering::Greater => Sign::Plus,
        };
        prop_assert_eq!(q.sign(), want_sign);
    }

    #[test]
    fn pochhammer_denominators_clear(num in -40i64..40, den in 1i64..=12, n in 0u64..=20, k in 0u64..=20) {
        prop_assume!(k <= n);
        let alpha = Rat::new(num.into(), den.into());
        prop_assert!(clears_pochhammer(&alpha, n, k).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn single_shift_condition_is_monotone(m in 1u64..=2, p in 2u64..400, step in 1u64..2000) {
        let (lo, hi) = (BigUint::from(p), BigUint::from(p + step));
        if single_shift_condition(&lo, 1, m).unwrap() {
            prop_assert!(single_shift_condition(&hi, 1, m).unwrap());
        }
    }
}
