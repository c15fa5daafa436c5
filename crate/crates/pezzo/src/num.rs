//! Scalar abstraction used by every numeric routine in the crate.
//!
//! All arithmetic is exact: computations run over `Ratio<T>` where `T` is an
//! integer scalar. The crate root instantiates `T = BigInt`, which the
//! discrepancy solver needs (intermediate determinants outgrow machine words
//! on adversarial input), but the routines stay generic so small closed
//! systems can run on `i64` when a caller knows the magnitudes involved.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num::rational::Ratio;
use num::{FromPrimitive, Integer, One, Signed};

/// Integer scalar underlying all exact rational arithmetic.
///
/// A blanket impl covers everything with the right bounds; in practice that is
/// `BigInt`, `i64`, and `i128`.
pub trait Scalar:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + Send + Sync + 'static
{
}

/// Converts an `i64` into the scalar type.
pub fn int<T: Scalar>(value: i64) -> T {
    T::from_i64(value).expect("i64 converts into any Scalar")
}

/// Builds the exact rational `numer/denom` from machine integers.
///
/// Panics if `denom == 0`; callers only pass literal nonzero denominators.
pub fn rat<T: Scalar>(numer: i64, denom: i64) -> Ratio<T> {
    Ratio::new(int(numer), int(denom))
}

/// Embeds an `i64` as an exact rational.
pub fn rat_int<T: Scalar>(value: i64) -> Ratio<T> {
    Ratio::from_integer(int(value))
}

/// Smallest integer not less than `q`.
pub fn ceil_int<T: Scalar>(q: &Ratio<T>) -> T {
    q.ceil().to_integer()
}

/// Largest integer not greater than `q`.
pub fn floor_int<T: Scalar>(q: &Ratio<T>) -> T {
    q.floor().to_integer()
}

/// Renders a rational as `p/q`, or plain `p` when the denominator is one.
///
/// This is the only formatting used in reports and CLI output, so the wire
/// format does not depend on the `Display` impl of the backing crate.
pub fn format_ratio<T: Scalar>(q: &Ratio<T>) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, Zero};
    use proptest::prelude::*;

    type R = Ratio<BigInt>;

    #[test]
    fn ratio_normalizes_sign_and_reduces() {
        let q: R = rat(10, -4);
        assert_eq!(q, rat::<BigInt>(-5, 2));
        assert!(q.denom() > &BigInt::from(0));
    }

    #[test]
    fn ceil_and_floor_on_integers_are_identity() {
        let q: R = rat_int(3);
        assert_eq!(ceil_int(&q), BigInt::from(3));
        assert_eq!(floor_int(&q), BigInt::from(3));
    }

    // Oracle: scan candidate integers around q and take the extremal one that
    // brackets it. Independent of Ratio::ceil / Ratio::floor.
    fn ceil_by_scan(num: i64, den: i64) -> i64 {
        let lo = num / den - 2;
        (lo..lo + 5)
            .find(|&k| i128::from(k) * i128::from(den) >= i128::from(num))
            .unwrap()
    }

    fn floor_by_scan(num: i64, den: i64) -> i64 {
        let lo = num / den + 2;
        (lo - 4..=lo)
            .rev()
            .find(|&k| i128::from(k) * i128::from(den) <= i128::from(num))
            .unwrap()
    }

    #[test]
    fn ceil_floor_match_scan_oracle_on_paper_values() {
        // -105/37 sits between -3 and -2.
        assert_eq!(ceil_by_scan(-105, 37), -2);
        assert_eq!(floor_by_scan(-105, 37), -3);
        let q: R = rat(-105, 37);
        assert_eq!(ceil_int(&q), BigInt::from(-2));
        assert_eq!(floor_int(&q), BigInt::from(-3));

        // -42/19 is about -2.21.
        assert_eq!(ceil_by_scan(-42, 19), -2);
        let q: R = rat(-42, 19);
        assert_eq!(ceil_int(&q), BigInt::from(-2));
    }

    #[test]
    fn format_ratio_uses_slash_form_only_for_proper_fractions() {
        assert_eq!(format_ratio(&rat::<BigInt>(-15, 37)), "-15/37");
        assert_eq!(format_ratio(&rat::<BigInt>(8, 703)), "8/703");
        assert_eq!(format_ratio(&rat::<BigInt>(6, 3)), "2");
        assert_eq!(format_ratio(&rat_int::<BigInt>(0)), "0");
    }

    proptest::proptest! {
        #[test]
        fn ceil_is_negated_floor_of_negation(n in -2000i64..2000, d in 1i64..200) {
            let q: Ratio<i64> = rat(n, d);
            prop_assert_eq!(ceil_int(&q), -floor_int(&(-q)));
        }

        #[test]
        fn ceil_floor_bracket_the_value(n in -2000i64..2000, d in 1i64..200) {
            let q: Ratio<i64> = rat(n, d);
            let c = Ratio::from_integer(ceil_int(&q));
            let f = Ratio::from_integer(floor_int(&q));
            prop_assert!(c - Ratio::from_integer(1) < q && q <= c + Ratio::from_integer(0));
            prop_assert!(f <= q && q < f + Ratio::from_integer(1));
        }

        // Exactness regression guard: field axioms hold on random triples.
        #[test]
        fn rational_field_axioms(
            (an, ad) in (-50i64..50, 1i64..20),
            (bn, bd) in (-50i64..50, 1i64..20),
            (cn, cd) in (-50i64..50, 1i64..20),
        ) {
            let a: R = rat(an, ad);
            let b: R = rat(bn, bd);
            let c: R = rat(cn, cd);
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if !c.numer().is_zero() {
                let a2: R = rat(an, ad);
                prop_assert_eq!((a * c.clone()) / c, a2);
            }
        }
    }
}
