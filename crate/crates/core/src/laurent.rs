//! Laurent polynomials in `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Laurent(BTreeMap<i32, BigInt>);

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent(BTreeMap::new())
    }

    pub fn one() -> Laurent {
        Laurent::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(e: i32, c: i64) -> Laurent {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, BigInt::from(c));
        }
        Laurent(m)
    }

    pub fn q_pow(e: i32) -> Laurent {
        Laurent::monomial(e, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, e: i32) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        let slot = self.0.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn shift(&self, k: i32) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (e + k, c.clone())).collect())
    }

    /// Substitutes `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.0.values().sum()
    }

    pub fn pow(&self, k: u32) -> Laurent {
        (0..k).fold(Laurent::one(), |acc, _| &acc * self)
    }

    fn fmt_unparenthesized(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{}", e),
            };
            if var.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}*{}", a, var)?;
            }
        }
        Ok(())
    }

    /// Formats, wrapping in parentheses when there is more than one term.
    pub fn fmt_factor(&self) -> String {
        if self.0.len() > 1 {
            format!("({})", self)
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_unparenthesized(f)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.0 {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.0 {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &rhs.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        let v = &Laurent::q_pow(-1) + &Laurent::q_pow(1);
        assert_eq!(v.to_string(), "q^-1 + q");
        assert_eq!(v.fmt_factor(), "(q^-1 + q)");
        assert_eq!(Laurent::monomial(0, -2).to_string(), "-2");
        assert_eq!(Laurent::monomial(3, -2).to_string(), "-2*q^3");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn square_of_quantum_two() {
        let v = &Laurent::q_pow(-1) + &Laurent::q_pow(1);
        let sq = &v * &v;
        assert_eq!(sq.to_string(), "q^-2 + 2 + q^2");
        assert_eq!(sq.at_one(), BigInt::from(4));
    }
}
