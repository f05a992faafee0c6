use chirolab::chirotope::{chirotope_of, signs_of, Chirotope};
use chirolab::configuration::{
    agreement_check, closed_form, closed_form_symbolic, construct_sequence, Configuration,
    ParamPoint,
};
use chirolab::exact::{
    cross, det3, dot, gp3_identity_check, rat, Monomial, Poly3, Rational, Sign, Vec3,
};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(p, q)| rat(p, q))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=63).prop_map(|p| rat(p, 64))
}

fn vec3() -> impl Strategy<Value = Vec3<Rational>> {
    (rational(), rational(), rational()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn poly() -> impl Strategy<Value = Poly3> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -9i64..=9, 1i64..=5), 0..5).prop_map(
        |terms| {
            terms.into_iter().fold(Poly3::zero(), |acc, ((a, b, c), p, q)| {
                acc + Poly3::term(Monomial::new(a, b, c), rat(p, q))
            })
        },
    )
}

fn param() -> impl Strategy<Value = ParamPoint> {
    (unit_rational(), unit_rational(), unit_rational()).prop_map(|(s, t, u)| ParamPoint::new(s, t, u))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_add_sub_round_trip(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!(a.denom() > &0.into());
        prop_assert!(num_integer::Integer::gcd(a.numer(), a.denom()) == 1.into() || a.is_zero());
    }

    #[test]
    fn cross_is_antisymmetric(a in vec3(), b in vec3()) {
        prop_assert_eq!(cross(&a, &b), -cross(&b, &a));
    }

    #[test]
    fn determinant_is_triple_product(a in vec3(), b in vec3(), c in vec3()) {
        prop_assert_eq!(det3(&a, &b, &c), dot(&a, &cross(&b, &c)));
        prop_assert_eq!(det3(&a, &b, &c), -det3(&b, &a, &c));
    }

    #[test]
    fn polynomial_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), s in rational(), t in rational(), u in rational()) {
        prop_assert_eq!((&p + &q).eval(&s, &t, &u), p.eval(&s, &t, &u) + q.eval(&s, &t, &u));
        prop_assert_eq!((&p * &q).eval(&s, &t, &u), p.eval(&s, &t, &u) * q.eval(&s, &t, &u));
    }

    #[test]
    fn symbolic_closed_form_evaluates_to_numeric(p in param()) {
        prop_assert_eq!(closed_form_symbolic().eval(&p), closed_form(&p));
    }

    #[test]
    fn eval_is_alternating(p in param(), i in 1u8..=13, j in 1u8..=13, k in 1u8..=13) {
        let chi = signs_of(&closed_form(&p));
        let v = chi.eval(i, j, k).unwrap();
        let perms = [
            ((i, j, k), Sign::Pos), ((j, k, i), Sign::Pos), ((k, i, j), Sign::Pos),
            ((j, i, k), Sign::Neg), ((i, k, j), Sign::Neg), ((k, j, i), Sign::Neg),
        ];
        for ((a, b, c), parity) in perms {
            prop_assert_eq!(chi.eval(a, b, c).unwrap(), parity * v);
        }
    }

    #[test]
    fn sequence_and_closed_form_share_chirotope(p in param()) {
        if let Ok(report) = agreement_check(&p) {
            if report.passes() {
                let seq = construct_sequence(&p).unwrap().configuration;
                prop_assert_eq!(signs_of(&seq), signs_of(&closed_form(&p)));
            }
        }
    }
}

#[test]
fn determinant_identity_on_random_tuples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6a09e667);
    let draw = |rng: &mut rand::rngs::StdRng| {
        let mut q = || rat(rng.gen_range(-40..=40), rng.gen_range(1..=12));
        Vec3::new(q(), q(), q())
    };
    for _ in 0..1000 {
        let x = [draw(&mut rng), draw(&mut rng), draw(&mut rng)];
        let y = [draw(&mut rng), draw(&mut rng), draw(&mut rng)];
        let report = gp3_identity_check(&x, &y);
        assert!(report.holds(), "{x:?} {y:?}");
    }
}

#[test]
fn realized_chirotopes_satisfy_exchange_axiom() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let cols = (0..13)
            .map(|_| {
                let mut q = || rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
                Vec3::new(q(), q(), q())
            })
            .collect();
        let Ok(chi) = chirotope_of(&Configuration::new(cols)) else { continue };
        assert!(chi.check_axioms().passes());
    }
}

#[test]
fn negated_chirotope_also_passes() {
    let chi: Chirotope = -signs_of(&closed_form(&ParamPoint::from_fracs((1, 4), (3, 4), (1, 8))));
    assert!(chi.axiom3_violations().is_empty());
}
