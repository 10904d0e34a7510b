use ainfty::{Error, Field, Scalar};
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 65_521];

fn small() -> impl Strategy<Value = i64> {
    -1000i64..1000
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), proptest::sample::select(&PRIMES[..]).prop_map(Field::Prime)]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Reduced fraction as text, computed with machine integers.
fn fraction_text(n: i128, d: i128) -> String {
    let g = gcd(n, d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn q(n: i64, d: i64) -> Scalar {
    Field::Rational.parse(&format!("{n}/{d}")).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(f in field(), a in small(), b in small(), c in small()) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &f.zero(), a.clone());
        prop_assert_eq!(&a * &f.one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), f.zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.try_inv().unwrap()).is_one());
        }
    }

    #[test]
    fn prime_field_matches_integer_arithmetic(p in proptest::sample::select(&PRIMES[..]), a in small(), b in small()) {
        let f = Field::Prime(p);
        let m = |x: i128| (x.rem_euclid(p as i128)) as u64;
        let expect = |x: i128| Scalar::Mod { value: m(x), p };
        prop_assert_eq!(&f.from_i64(a) + &f.from_i64(b), expect(a as i128 + b as i128));
        prop_assert_eq!(&f.from_i64(a) * &f.from_i64(b), expect(a as i128 * b as i128));
        prop_assert_eq!(&f.from_i64(a) - &f.from_i64(b), expect(a as i128 - b as i128));
        if m(b as i128) != 0 {
            let quotient = f.from_i64(a).try_div(&f.from_i64(b)).unwrap();
            prop_assert_eq!(&quotient * &f.from_i64(b), f.from_i64(a));
        }
    }

    #[test]
    fn rationals_match_fraction_arithmetic(n1 in small(), d1 in 1i64..50, n2 in small(), d2 in 1i64..50) {
        let (a, b) = (q(n1, d1), q(n2, d2));
        let (n1, d1, n2, d2) = (n1 as i128, d1 as i128, n2 as i128, d2 as i128);
        prop_assert_eq!((&a + &b).to_string(), fraction_text(n1 * d2 + n2 * d1, d1 * d2));
        prop_assert_eq!((&a * &b).to_string(), fraction_text(n1 * n2, d1 * d2));
        prop_assert_eq!((&a - &b).to_string(), fraction_text(n1 * d2 - n2 * d1, d1 * d2));
    }

    #[test]
    fn parse_display_round_trip(f in field(), n in small(), d in 1i64..50) {
        let x = f.parse(&format!("{n}/{d}"));
        if let Ok(x) = x {
            prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        } else {
            prop_assert!(f.characteristic() > 0 && (d as u64).is_multiple_of(f.characteristic()));
        }
    }

    #[test]
    fn signs_alternate(f in field(), e in -20i64..20) {
        prop_assert_eq!(&f.sign(e) * &f.sign(e + 1), f.from_i64(-1));
        prop_assert_eq!(f.one().signed(e), f.sign(e));
    }
}

#[test]
fn canonical_forms() {
    assert_eq!(q(6, -4).to_string(), "-3/2");
    assert_eq!(q(8, 4).to_string(), "2");
    assert_eq!(Field::Prime(5).from_i64(-1).to_string(), "4");
    assert_eq!(Field::Prime(7).parse("1/2").unwrap(), Field::Prime(7).from_i64(4));
}

#[test]
fn division_by_zero_is_an_error() {
    for f in [Field::Rational, Field::Prime(3)] {
        assert!(matches!(f.zero().try_inv(), Err(Error::DivisionByZero)));
    }
    assert!(Field::Rational.parse("1/0").is_err());
    assert!(Field::Prime(3).parse("1/3").is_err());
}

#[test]
fn field_tags() {
    assert_eq!(Field::Rational.tag(), "Q");
    assert_eq!(Field::Prime(5).tag(), "Fp:5");
    assert_eq!(Field::from_tag("Fp:5").unwrap(), Field::Prime(5));
    assert_eq!(Field::from_tag("Q").unwrap(), Field::Rational);
    assert!(Field::from_tag("Fp:6").is_err());
    assert!(Field::from_tag("R").is_err());
    assert!(Field::prime(1 << 33).is_err());
}
