mod common;

use fiblucas::exactnum::{binomial, factorial, falling_factorial, frac, Rational};
use fiblucas::families::FamilyTable;
use fiblucas::identity::phi_subst;
use fiblucas::polyring::Substitution;
use fiblucas::{FamilyKind, Monomial, Poly, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| frac(p, q))
}

fn poly(max_gen: u32) -> impl Strategy<Value = Poly> {
    let term = (
        rational(),
        prop::collection::vec((0..=max_gen, 1u32..=2), 0..=3),
    );
    prop::collection::vec(term, 0..=5).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(c, vs)| {
            (
                c,
                Monomial::from_pairs(vs.into_iter().map(|(i, e)| (Var::Gen(i), e))),
            )
        }))
    })
}

/// Sparse, low-degree polynomials for substitution images.
fn small_poly(max_gen: u32) -> impl Strategy<Value = Poly> {
    let term = (rational(), prop::collection::vec(0..=max_gen, 0..=2));
    prop::collection::vec(term, 0..=3).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(c, vs)| {
            (
                c,
                Monomial::from_pairs(vs.into_iter().map(|i| (Var::Gen(i), 1))),
            )
        }))
    })
}

fn univariate() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 1..=6).prop_map(|c| Poly::from_x_coeffs(&c))
}

proptest! {
    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert!((&a * a.recip()).is_one());
        }
    }

    #[test]
    fn ring_axioms(p in poly(5), q in poly(5), r in poly(5)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p * &Poly::zero()).is_zero());
    }

    #[test]
    fn subst_is_homomorphism(p in poly(3), q in poly(3), images in prop::collection::vec(small_poly(3), 4)) {
        let s: Substitution = images.into_iter().enumerate().map(|(i, im)| (Var::Gen(i as u32), im)).collect();
        prop_assert_eq!((&p + &q).subst(&s).unwrap(), &p.subst(&s).unwrap() + &q.subst(&s).unwrap());
        prop_assert_eq!((&p * &q).subst(&s).unwrap(), &p.subst(&s).unwrap() * &q.subst(&s).unwrap());
    }

    #[test]
    fn diff_x_leibniz(p in univariate(), q in univariate()) {
        let lhs = (&p * &q).diff_x().unwrap();
        let rhs = &(&p.diff_x().unwrap() * &q) + &(&p * &q.diff_x().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip(p in poly(6), with_x in any::<bool>()) {
        let p = if with_x { &p * &(&Poly::x() + &Poly::one()) } else { p };
        let text = p.to_json();
        let back = Poly::from_json(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn phi_is_homomorphism(p in poly(6), q in poly(6)) {
        for kind in [FamilyKind::Fibonacci, FamilyKind::Lucas] {
            let prod = phi_subst(kind, &(&p * &q)).unwrap();
            prop_assert_eq!(prod, &phi_subst(kind, &p).unwrap() * &phi_subst(kind, &q).unwrap());
        }
    }
}

#[test]
fn falling_factorial_is_scaled_binomial() {
    for n in 0..=30i64 {
        for a in 0..=n as u32 {
            assert_eq!(
                falling_factorial(n, a),
                binomial(n, i64::from(a)) * factorial(a)
            );
        }
    }
}

#[test]
fn leibniz_and_linearity_200() {
    common::leibniz_and_linearity(200, 11).unwrap();
}

#[test]
fn phi_intertwines_derivative_100() {
    common::phi_commutes_with_derivative(100, 12).unwrap();
}

#[test]
fn series_reciprocal_100() {
    common::reciprocal_round_trip(100, 13).unwrap();
}

#[test]
fn det_agrees_with_cofactor_expansion() {
    common::det_matches_cofactor(40, 14).unwrap();
}

#[test]
fn weitzenbock_relation_2_to_12() {
    common::weitzenbock_range().unwrap();
}

/// Truncated `t`-series with polynomial coefficients.
fn series_mul(a: &[Poly], b: &[Poly], order: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); order];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j < order {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Expands `numer / (1 - x t - t^2)` as `numer * sum_k (x t + t^2)^k` up to `t^(order-1)`.
fn expand_generating_function(numer: &[Poly], order: usize) -> Vec<Poly> {
    let u = vec![Poly::zero(), Poly::x(), Poly::one()];
    let mut power = vec![Poly::one()];
    let mut geometric = vec![Poly::zero(); order];
    for _ in 0..order {
        for (i, c) in power.iter().enumerate().take(order) {
            geometric[i] += c.clone();
        }
        power = series_mul(&power, &u, order);
    }
    series_mul(numer, &geometric, order)
}

#[test]
fn generating_functions_reproduce_families() {
    let order = 13;
    let fib = expand_generating_function(&[Poly::zero(), Poly::one()], order);
    let lucas = expand_generating_function(&[Poly::one(), Poly::zero(), Poly::one()], order);
    let f = FamilyTable::new(FamilyKind::Fibonacci, order - 1);
    let l = FamilyTable::new(FamilyKind::Lucas, order - 1);
    for n in 0..order {
        assert_eq!(&fib[n], f.get(n), "F_{n}");
        assert_eq!(&lucas[n], l.get(n), "L_{n}");
    }
}

#[test]
fn family_degrees() {
    let f = FamilyTable::new(FamilyKind::Fibonacci, 25);
    let l = FamilyTable::new(FamilyKind::Lucas, 25);
    for n in 1..=25u32 {
        assert_eq!(f.get(n as usize).degree_in(Var::X), n - 1);
        assert_eq!(l.get(n as usize).degree_in(Var::X), n);
    }
}
