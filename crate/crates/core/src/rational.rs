//! Exact rationals with a machine-word fast path.
//!
//! Almost every coefficient that shows up in realizations and hom solves is a
//! small dyadic rational, so values are kept as `Ratio<i64>` until an
//! operation overflows, at which point they are promoted to `BigRational`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Q(Repr);

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q(Repr::Small(Ratio::new(num, den)))
    }

    pub fn from_int(n: i64) -> Q {
        Q(Repr::Small(Ratio::from_integer(n)))
    }

    pub fn zero() -> Q {
        Q::from_int(0)
    }

    pub fn one() -> Q {
        Q::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(r) => r.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(r) => {
                // Ratio::recip on i64::MIN numerators overflows.
                if *r.numer() == i64::MIN {
                    Q(Repr::Big(to_big(r).recip())).normalize()
                } else {
                    Q(Repr::Small(r.recip()))
                }
            }
            Repr::Big(r) => Q(Repr::Big(r.recip())).normalize(),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        let b = self.to_big();
        (b.numer().clone(), b.denom().clone())
    }

    fn normalize(self) -> Q {
        match self.0 {
            Repr::Big(r) => match (r.numer().to_i64(), r.denom().to_i64()) {
                (Some(n), Some(d)) => Q(Repr::Small(Ratio::new_raw(n, d))),
                _ => Q(Repr::Big(r)),
            },
            small => Q(small),
        }
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

macro_rules! binop {
    ($fn_name:ident, $checked:ident, $op:tt) => {
        fn $fn_name(a: &Q, b: &Q) -> Q {
            if let (Repr::Small(x), Repr::Small(y)) = (&a.0, &b.0) {
                if x.is_integer() && y.is_integer() {
                    if let Some(n) = i64::$checked(*x.numer(), *y.numer()) {
                        return Q(Repr::Small(Ratio::from_integer(n)));
                    }
                }
                if let Some(r) = x.$checked(y) {
                    return Q(Repr::Small(r));
                }
            }
            Q(Repr::Big(a.to_big() $op b.to_big())).normalize()
        }
    };
}

binop!(q_add, checked_add, +);
binop!(q_sub, checked_sub, -);
binop!(q_mul, checked_mul, *);

fn q_div(a: &Q, b: &Q) -> Q {
    if let (Repr::Small(x), Repr::Small(y)) = (&a.0, &b.0) {
        if let Some(r) = x.checked_div(y) {
            return Q(Repr::Small(r));
        }
    }
    Q(Repr::Big(a.to_big() / b.to_big())).normalize()
}

macro_rules! forward_ops {
    ($trait:ident, $method:ident, $fun:ident) => {
        impl $trait<&Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                $fun(self, rhs)
            }
        }
        impl $trait<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $fun(&self, &rhs)
            }
        }
        impl $trait<&Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                $fun(&self, rhs)
            }
        }
        impl $trait<Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $fun(self, &rhs)
            }
        }
    };
}

forward_ops!(Add, add, q_add);
forward_ops!(Sub, sub, q_sub);
forward_ops!(Mul, mul, q_mul);

impl Div<&Q> for &Q {
    type Output = Q;
    fn div(self, rhs: &Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        q_div(self, rhs)
    }
}

impl Div<Q> for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        &self / &rhs
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = q_add(self, rhs);
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = q_sub(self, rhs);
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        *self = q_mul(self, rhs);
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match &self.0 {
            Repr::Small(r) if *r.numer() != i64::MIN => Q(Repr::Small(-*r)),
            _ => Q(Repr::Big(-self.to_big())).normalize(),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Small and big representations of one value must hash alike; values
        // are normalized back to Small whenever they fit.
        match &self.0 {
            Repr::Small(r) => {
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Repr::Big(r) => {
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Q {
        Q(Repr::Big(r)).normalize()
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{}", r),
            Repr::Big(r) => write!(f, "{}", r),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Q, String> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, String> {
            t.trim().parse::<BigInt>().map_err(|_| format!("invalid integer '{}'", t))
        };
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        Ok(Q::from(r))
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::from_int(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
    }

    #[test]
    fn parse_and_print() {
        let q: Q = "-6/4".parse().unwrap();
        assert_eq!(q, Q::new(-3, 2));
        assert_eq!(q.to_string(), "-3/2");
        assert!("1/0".parse::<Q>().is_err());
    }

    #[test]
    fn min_value_negation() {
        let m = Q::from_int(i64::MIN);
        let n = -&m;
        assert_eq!(&n + &m, Q::zero());
        assert_eq!(m.recip() * m, Q::one());
    }
}
