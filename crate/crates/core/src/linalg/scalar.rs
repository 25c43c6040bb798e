//! Exact scalars: arbitrary-precision rationals and the cyclotomic field
//! ℚ(ω), where ω is a primitive cube root of unity (ω² + ω + 1 = 0).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Formats a rational as `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// An element `re + om·ω` of ℚ(ω).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic {
    re: Rational,
    om: Rational,
}

impl Cyclotomic {
    pub fn new(re: Rational, om: Rational) -> Self {
        Cyclotomic { re, om }
    }

    pub fn zero() -> Self {
        Cyclotomic::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    /// ω = e^{2πi/3}.
    pub fn omega() -> Self {
        Cyclotomic::new(Rational::zero(), Rational::one())
    }

    /// ω̄ = ω² = −1 − ω.
    pub fn omega_bar() -> Self {
        Cyclotomic::new(-Rational::one(), -Rational::one())
    }

    pub fn from_rational(re: Rational) -> Self {
        Cyclotomic::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Cyclotomic::from_rational(rational(numer, denom))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn om(&self) -> &Rational {
        &self.om
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.om.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }

    /// True when both coordinates are integers, i.e. the element lies in ℤ[ω].
    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.om.is_integer()
    }

    /// Complex conjugation: ω ↦ ω̄, so (a, b) ↦ (a − b, −b).
    pub fn conj(&self) -> Self {
        Cyclotomic::new(&self.re - &self.om, -&self.om)
    }

    /// Field norm a² − ab + b², which equals |a + bω|².
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Cyclotomic::new(c.re / &n, c.om / n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn mul_ref(&self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.om.is_zero() && rhs.om.is_zero() {
            return Cyclotomic::from_rational(&self.re * &rhs.re);
        }
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = &self.om * &rhs.om;
        let re = &self.re * &rhs.re - &bd;
        let om = &self.re * &rhs.om + &self.om * &rhs.re - bd;
        Cyclotomic::new(re, om)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.om.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}ω", self.om),
            (false, false) => {
                if self.om.is_negative() {
                    write!(f, "{} - {}ω", self.re, -&self.om)
                } else {
                    write!(f, "{} + {}ω", self.re, self.om)
                }
            }
        }
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.re + &rhs.re, &self.om + &rhs.om)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.re - &rhs.re, &self.om - &rhs.om)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        let inv = rhs.inv().expect("division by zero in ℚ(ω)");
        self.mul_ref(&inv)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-&self.re, -&self.om)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-self.re, -self.om)
    }
}

macro_rules! forward_owned_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $Trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl<'a> $Trait<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.re += &rhs.re;
        self.om += &rhs.om;
    }
}

impl AddAssign for Cyclotomic {
    fn add_assign(&mut self, rhs: Cyclotomic) {
        self.re += rhs.re;
        self.om += rhs.om;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.re -= &rhs.re;
        self.om -= &rhs.om;
    }
}

impl SubAssign for Cyclotomic {
    fn sub_assign(&mut self, rhs: Cyclotomic) {
        self.re -= rhs.re;
        self.om -= rhs.om;
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.mul_ref(rhs);
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Cyclotomic {
    fn product<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::one(), |acc, x| &acc * &x)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("re", &format_rational(&self.re))?;
        st.serialize_field("om", &format_rational(&self.om))?;
        st.end()
    }
}

/// Accepts either `{"re": "p/q", "om": "p/q"}` or a bare rational string.
impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair {
                re: String,
                #[serde(default)]
                om: Option<String>,
            },
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Pair { re, om } => {
                let re = parse_rational(&re).map_err(de::Error::custom)?;
                let om = match om {
                    Some(s) => parse_rational(&s).map_err(de::Error::custom)?,
                    None => Rational::zero(),
                };
                Ok(Cyclotomic::new(re, om))
            }
            Repr::Text(s) => parse_rational(&s)
                .map(Cyclotomic::from_rational)
                .map_err(de::Error::custom),
            Repr::Int(n) => Ok(Cyclotomic::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(a: (i64, i64), b: (i64, i64)) -> Cyclotomic {
        Cyclotomic::new(rational(a.0, a.1), rational(b.0, b.1))
    }

    #[test]
    fn omega_is_a_primitive_cube_root() {
        let w = Cyclotomic::omega();
        assert_eq!(&(&w * &w) + &(&w + &Cyclotomic::one()), Cyclotomic::zero());
        assert_eq!(w.pow(3), Cyclotomic::one());
        assert_ne!(w, Cyclotomic::one());
        assert_eq!(w.conj(), Cyclotomic::omega_bar());
        assert_eq!(&w * &w, Cyclotomic::omega_bar());
    }

    #[test]
    fn conjugation_matches_coordinates() {
        let x = c((3, 2), (-1, 5));
        let cx = x.conj();
        assert_eq!(cx.re(), &(rational(3, 2) - rational(-1, 5)));
        assert_eq!(cx.om(), &rational(1, 5));
        assert!((&x * &cx).is_rational());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-1/4").unwrap(), rational(-1, 4));
        assert_eq!(parse_rational("6/8").unwrap(), rational(3, 4));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rational(-2, 8)), "-1/4");
    }

    #[test]
    fn serde_shape() {
        let x = c((-1, 4), (3, 1));
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"re": "-1/4", "om": "3/1"}));
        let back: Cyclotomic = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
        let r: Cyclotomic = serde_json::from_str("\"2/3\"").unwrap();
        assert_eq!(r, Cyclotomic::from_ratio(2, 3));
    }

    fn arb() -> impl Strategy<Value = Cyclotomic> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c_, d)| c((a, b), (c_, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Cyclotomic::one());
            }
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }
    }
}
