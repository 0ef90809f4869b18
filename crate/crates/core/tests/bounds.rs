use subcount::arith::primes_up_to;
use subcount::bounds::{
    bound_for_order, bound_pqr, bound_three_prime, bound_two_prime, candidate_orders, Shape, Theorem, PRIME_WINDOW,
};
use subcount::{Error, FactoredOrder};

#[test]
fn worked_values() {
    assert_eq!(bound_two_prime(2, 3, 1, 1).unwrap(), 6);
    assert_eq!(bound_two_prime(2, 3, 2, 1).unwrap(), 8);
    assert_eq!(bound_two_prime(2, 3, 7, 1).unwrap(), 18);
    assert_eq!(bound_two_prime(2, 5, 7, 1).unwrap(), 20);
    assert_eq!(bound_three_prime(2, 3, 5, 1, 1, 1).unwrap(), 15);
    assert_eq!(bound_three_prime(2, 3, 5, 2, 1, 1).unwrap(), 18);
    assert!(bound_three_prime(2, 3, 7, 2, 1, 1).unwrap() >= 20);
    assert_eq!(bound_pqr(2, 3, 5).unwrap(), 15);
    assert_eq!(bound_pqr(2, 3, 7).unwrap(), 17);
    assert_eq!(bound_pqr(2, 3, 11).unwrap(), 21);
}

#[test]
fn misordered_primes_are_rejected() {
    assert!(matches!(bound_two_prime(3, 2, 1, 1), Err(Error::Precondition(_))));
    assert!(matches!(bound_pqr(2, 5, 3), Err(Error::Precondition(_))));
    assert!(matches!(bound_three_prime(2, 3, 4, 1, 1, 1), Err(Error::Precondition(_))));
}

#[test]
fn two_prime_bound_grows_with_q() {
    let primes = primes_up_to(PRIME_WINDOW);
    for a in 1..=7 {
        for b in 1..=5 {
            for (i, &p) in primes.iter().enumerate() {
                let values: Vec<_> = primes[i + 1..].iter().map(|&q| bound_two_prime(p, q, a, b).unwrap()).collect();
                assert!(values.windows(2).all(|w| w[0] <= w[1]), "p={p} a={a} b={b}: {values:?}");
            }
        }
    }
}

#[test]
fn three_prime_remark_thresholds() {
    let primes = primes_up_to(PRIME_WINDOW);
    let exps = [[2, 1, 1], [1, 2, 1], [1, 1, 2], [2, 2, 1], [3, 1, 1], [1, 1, 3], [2, 2, 2]];
    for (i, &p) in primes.iter().enumerate() {
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            for &r in &primes[j + 1..] {
                for [a, b, c] in exps {
                    let bound = bound_three_prime(p, q, r, a, b, c).unwrap();
                    let floor = if r >= 7 { 20 } else { 18 };
                    assert!(bound >= floor, "{p}^{a} {q}^{b} {r}^{c}: {bound}");
                }
            }
        }
    }
}

#[test]
fn theorem_follows_the_prime_count() {
    let cases = [
        ("2^3", Theorem::PGroup),
        ("2^2*3", Theorem::TwoPrime),
        ("2*3*5", Theorem::Pqr),
        ("2^2*3*5", Theorem::ThreePrime),
        ("2*3*5*7", Theorem::FourOrMore),
    ];
    for (s, t) in cases {
        let r = bound_for_order(&s.parse::<FactoredOrder>().unwrap()).unwrap();
        assert_eq!(r.theorem, t, "{s}");
        assert!(r.bound >= 2);
    }
    assert!(bound_for_order(&FactoredOrder::of(7)).is_err());
}

#[test]
fn four_prime_family_appears_at_twenty() {
    let has_four = |k| candidate_orders(k).unwrap().iter().any(|r| r.shape == Shape::FourOrMore);
    assert!(!has_four(19));
    assert!(has_four(20));
    assert!(matches!(candidate_orders(31), Err(Error::Window(_))));
}

#[test]
fn candidate_families_only_grow_with_k() {
    let mut previous = 0;
    for k in 6..=30 {
        let n = candidate_orders(k).unwrap().len();
        assert!(n >= previous, "k={k}");
        previous = n;
    }
}

#[test]
fn renders_as_tab_separated_rows() {
    let rows: Vec<String> = candidate_orders(19).unwrap().iter().map(|r| r.to_string()).collect();
    assert!(rows.contains(&"p^7 q with q = 3\t18\ttwo-prime".to_string()));
    assert!(rows.contains(&"p q r with r <= 7\t15\tpqr".to_string()));
    assert!(rows.contains(&"2^i with 3 <= i <= 6\t6\tp-group".to_string()));
}
