//! Arbitrary-precision integers, normalized rationals and exact square roots.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Signed arbitrary-precision integer.
pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("square root of negative integer {0}")]
    NegativeSqrt(Integer),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Exact fraction `num/den`, always stored with `den > 0` and
/// `gcd(|num|, den) = 1`. Zero is `0/1`, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: Integer,
    den: Integer,
}

impl Rational {
    pub fn new(num: Integer, den: Integer) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Integer, mut den: Integer) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Rational { num, den }
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational { num: n, den: Integer::one() }
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num.into(), den.into()).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Self::from_integer(Integer::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(Integer::one())
    }

    pub fn numer(&self) -> &Integer {
        &self.num
    }

    pub fn denom(&self) -> &Integer {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Self> {
        rhs.recip().map(|r| self * &r)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i32) -> Option<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Some(Rational {
            num: num_traits::pow(base.num, e as usize),
            den: num_traits::pow(base.den, e as usize),
        })
    }

    /// Height `max(|num|, den)` of the reduced fraction.
    pub fn height(&self) -> Integer {
        core::cmp::max(self.num.abs(), self.den.clone())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n.into())
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Self::from_integer(n)
    }
}

impl From<&Integer> for Rational {
    fn from(n: &Integer) -> Self {
        Self::from_integer(n.clone())
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical form: `num/den`, or just `num` when the denominator is 1.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: Integer = n.trim().parse().map_err(|_| bad())?;
                let d: Integer = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -&self.num, den: self.den.clone() }
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::normalized(&self.num + &rhs.num, self.den.clone());
        }
        Rational::normalized(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::normalized(&self.num - &rhs.num, self.den.clone());
        }
        Rational::normalized(&self.num * &rhs.den - &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num * &rhs.num);
        }
        Rational::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like integer division.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { (&self).$m(&rhs) }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational { (&self).$m(rhs) }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `(floor(sqrt(n)), n is a perfect square)`.
///
/// Newton iteration started above the root, so the iterates decrease
/// monotonically to the floor; a final correction step guards the result.
pub fn isqrt(n: &Integer) -> Result<(Integer, bool), ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeSqrt(n.clone()));
    }
    if let Some(small) = n.to_u128() {
        let r = isqrt_u128(small);
        return Ok((r.into(), r * r == small));
    }
    let bits = n.bits();
    let mut x: Integer = Integer::one() << bits.div_ceil(2);
    loop {
        let y: Integer = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    loop {
        let next: Integer = &x + 1u32;
        if &next * &next <= *n {
            x = next;
        } else {
            break;
        }
    }
    let exact = &x * &x == *n;
    Ok((x, exact))
}

/// Floor square root on machine words, same Newton scheme as [`isqrt`].
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Non-negative square root of `q` when it is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (rn, en) = isqrt(q.numer()).ok()?;
    if !en {
        return None;
    }
    let (rd, ed) = isqrt(q.denom()).ok()?;
    if !ed {
        return None;
    }
    // num and den are coprime, so their roots are too.
    Some(Rational { num: rn, den: rd })
}

/// True iff `q = c^2` for some rational `c`.
pub fn is_square_rational(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

const fn residue_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

static SQUARES_MOD_64: [bool; 64] = residue_table::<64>();
static SQUARES_MOD_63: [bool; 63] = residue_table::<63>();
static SQUARES_MOD_65: [bool; 65] = residue_table::<65>();

/// Cheap necessary condition for `n` to be a perfect square: quadratic
/// residue tables mod 64, 63 and 65. `false` means certainly not a square.
pub fn may_be_square_u128(n: u128) -> bool {
    SQUARES_MOD_64[(n % 64) as usize]
        && SQUARES_MOD_63[(n % 63) as usize]
        && SQUARES_MOD_65[(n % 65) as usize]
}

/// [`may_be_square_u128`] for big integers. Negative values are never squares.
pub fn may_be_square(n: &Integer) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    if let Some(small) = n.to_u128() {
        return may_be_square_u128(small);
    }
    let r = |m: u32| (n % m).to_u32().unwrap_or(0) as usize;
    SQUARES_MOD_64[r(64)] && SQUARES_MOD_63[r(63)] && SQUARES_MOD_65[r(65)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Integer {
        n.into()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&int(64)).unwrap(), (int(8), true));
        assert_eq!(isqrt(&int(63)).unwrap(), (int(7), false));
        assert_eq!(isqrt(&int(0)).unwrap(), (int(0), true));
        assert_eq!(isqrt(&int(-1)), Err(ArithError::NegativeSqrt(int(-1))));
    }

    #[test]
    fn isqrt_large_square() {
        let root: Integer = "123456789012345678901234567890123".parse().unwrap();
        let sq = &root * &root;
        assert_eq!(isqrt(&sq).unwrap(), (root.clone(), true));
        assert_eq!(isqrt(&(&sq - 1u32)).unwrap(), (&root - 1u32, false));
        assert_eq!(isqrt(&(&sq + 1u32)).unwrap(), (root, false));
    }

    #[test]
    fn isqrt_u128_extremes() {
        assert_eq!(isqrt_u128(u128::MAX), u64::MAX as u128);
        assert_eq!(isqrt_u128(3), 1);
        assert_eq!(isqrt_u128(4), 2);
    }

    #[test]
    fn square_rational_examples() {
        assert!(is_square_rational(&Rational::frac(256, 625)));
        assert_eq!(rational_sqrt(&Rational::frac(256, 625)), Some(Rational::frac(16, 25)));
        assert!(!is_square_rational(&Rational::from(-4)));
        assert!(!is_square_rational(&Rational::from(2)));
        assert!(is_square_rational(&Rational::zero()));
    }

    #[test]
    fn normalization_is_eager() {
        let a = Rational::new(int(6), int(-4)).unwrap();
        assert_eq!(a.numer(), &int(-3));
        assert_eq!(a.denom(), &int(2));
        assert_eq!(Rational::new(int(0), int(-7)).unwrap().denom(), &int(1));
        assert_eq!(Rational::new(int(1), int(0)), Err(ArithError::ZeroDenominator));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Rational::frac(-3, 6).to_string(), "-1/2");
        assert_eq!(Rational::from(5).to_string(), "5");
        assert_eq!("10/-4".parse::<Rational>().unwrap(), Rational::frac(-5, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn residue_filter_accepts_all_squares() {
        for k in 0u128..5000 {
            assert!(may_be_square_u128(k * k));
        }
        assert!(!may_be_square_u128(2));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in any::<u128>()) {
            let n = Integer::from(n) * Integer::from(u64::MAX) + 12345u32;
            let (r, exact) = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1u32;
            prop_assert!(n < &r1 * &r1);
            prop_assert_eq!(exact, &r * &r == n);
        }

        #[test]
        fn isqrt_u128_matches_bigint(n in any::<u128>()) {
            let (r, _) = isqrt(&(Integer::from(n) + 0u32)).unwrap();
            prop_assert_eq!(Integer::from(isqrt_u128(n)), r);
        }

        #[test]
        fn squares_are_detected(c in rational()) {
            let sq = &c * &c;
            prop_assert!(is_square_rational(&sq));
            let root = rational_sqrt(&sq).unwrap();
            prop_assert_eq!(&root * &root, sq);
            prop_assert!(may_be_square(&(c.numer() * c.numer())));
        }

        #[test]
        fn field_round_trips(a in rational(), b in rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
