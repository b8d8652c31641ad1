//! The graded polynomial ring `R_n = Q[x_1, ..., x_n]` with `deg x_i = 2`,
//! together with the action of the simple transpositions and the splitting
//! of a polynomial into its `s_i`-invariant and anti-invariant parts.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Largest number of variables a [`Monomial`] can hold.
pub const MAX_VARS: usize = 8;

const EXP_BITS: u32 = 7;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;
const DEG_SHIFT: u32 = 56;

/// A monomial packed into a single word: the total degree sits in the top
/// byte and the exponent of `x_{i+1}` in the 7-bit field below the previous
/// one. Integer order on the packed word is graded lexicographic order, and
/// multiplication is integer addition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        debug_assert!(var < MAX_VARS);
        DEG_SHIFT - EXP_BITS * (var as u32 + 1)
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "at most {} variables are supported", MAX_VARS);
        let mut packed = 0u64;
        let mut total = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!((e as u64) <= EXP_MASK, "exponent {} too large", e);
            packed |= (e as u64) << Self::shift(i);
            total += e as u64;
        }
        assert!(total < 256, "total degree {} too large", total);
        Monomial(packed | (total << DEG_SHIFT))
    }

    /// `x_{var+1}` (zero-based variable index).
    pub fn var(var: usize) -> Monomial {
        let mut e = [0u32; MAX_VARS];
        e[var] = 1;
        Monomial::from_exponents(&e[..=var])
    }

    pub fn exponent(&self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & EXP_MASK) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|v| self.exponent(v)).collect()
    }

    /// Ordinary total degree; the graded degree is twice this.
    pub fn total_degree(&self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(self.total_degree() + other.total_degree() < 256);
        debug_assert!((0..MAX_VARS).all(|v| self.exponent(v) + other.exponent(v) <= EXP_MASK as u32));
        Monomial(self.0 + other.0)
    }

    fn with_exponent(self, var: usize, e: u32) -> Monomial {
        let old = self.exponent(var) as u64;
        let s = Self::shift(var);
        let total = self.total_degree() as u64 - old + e as u64;
        let cleared = (self.0 & !(EXP_MASK << s)) & !(0xff << DEG_SHIFT);
        Monomial(cleared | ((e as u64) << s) | (total << DEG_SHIFT))
    }

    /// Swaps the exponents of two variables.
    pub fn swap(self, a: usize, b: usize) -> Monomial {
        let ea = self.exponent(a);
        let eb = self.exponent(b);
        self.with_exponent(a, eb).with_exponent(b, ea)
    }

    /// Moves every exponent `offset` variables to the right.
    pub fn shift_vars(self, offset: usize, nvars: usize) -> Monomial {
        let mut e = vec![0; offset];
        e.extend(self.exponents(nvars));
        Monomial::from_exponents(&e)
    }

    /// All monomials of the given total degree in `nvars` variables, in
    /// increasing order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if var + 1 == nvars {
                cur.push(left);
                out.push(Monomial::from_exponents(cur));
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(nvars, var + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(nvars, 0, degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// A polynomial with exact rational coefficients in a fixed number of
/// variables. Terms are kept sorted by [`Monomial`] order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        assert!(nvars <= MAX_VARS, "at most {} variables are supported", MAX_VARS);
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        Poly::monomial(nvars, Monomial::ONE, c)
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Q::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Q) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// The variable `x_i` (one-based).
    pub fn var(nvars: usize, i: usize) -> Poly {
        assert!(i >= 1 && i <= nvars, "variable x{} out of range", i);
        Poly::monomial(nvars, Monomial::var(i - 1), Q::one())
    }

    /// The simple coroot `x_i - x_{i+1}`.
    pub fn coroot(nvars: usize, i: usize) -> Poly {
        Poly::var(nvars, i) - Poly::var(nvars, i + 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, Q)>) -> Poly {
        Poly::collect_terms(nvars, &mut terms)
    }

    /// Like [`Poly::from_terms`], but drains a reusable buffer.
    pub fn collect_terms(nvars: usize, terms: &mut Vec<(Monomial, Q)>) -> Poly {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: Monomial) -> Q {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(&m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Graded degree (`2 *` total degree) if the polynomial is a nonzero
    /// homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let first = self.terms.first()?.0.total_degree();
        if self.terms.iter().all(|(m, _)| m.total_degree() == first) {
            Some(2 * first as i32)
        } else {
            None
        }
    }

    /// True if the polynomial is zero or homogeneous of graded degree `d`.
    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.terms.iter().all(|(m, _)| 2 * m.total_degree() as i32 == d)
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { -c } else { c.clone() })));
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(*mb), ca * cb));
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Q, other: &Poly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        *self = self.merge(&other.scale(c), false);
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < 1 || i + 1 > self.nvars {
            return Err(Error::IndexOutOfRange { index: i, strands: self.nvars });
        }
        Ok(())
    }

    /// Applies the simple transposition `s_i`, swapping `x_i` and `x_{i+1}`.
    pub fn act_transposition(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        Ok(self.swap_vars(i - 1, i))
    }

    fn swap_vars(&self, a: usize, b: usize) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.swap(a, b), c.clone())).collect();
        Poly::from_terms(self.nvars, terms)
    }

    /// Applies a permutation of the variables: `x_j` is sent to `x_{perm[j-1]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; self.nvars];
                for (j, &target) in perm.iter().enumerate() {
                    e[target - 1] = m.exponent(j);
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Poly::from_terms(self.nvars, terms)
    }

    pub fn is_invariant(&self, i: usize) -> Result<bool> {
        Ok(self.act_transposition(i)? == *self)
    }

    /// Splits `p = even + (x_i - x_{i+1}) * odd` with `even` and `odd` both
    /// fixed by `s_i`.
    pub fn invariant_split(&self, i: usize) -> Result<(Poly, Poly)> {
        let swapped = self.act_transposition(i)?;
        let half = Q::new(1, 2);
        let even = self.merge(&swapped, false).scale(&half);
        let anti = self.merge(&swapped, true);
        let odd = anti.div_linear(i - 1, i).scale(&half);
        Ok((even, odd))
    }

    /// Exact division by `x_{a+1} - x_{b+1}` (zero-based indices) using
    /// synthetic division in `x_{a+1}`. Panics if the division leaves a
    /// remainder.
    pub(crate) fn div_linear(&self, a: usize, b: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        // Coefficients of powers of x_a, each a polynomial free of x_a.
        let top = self.terms.iter().map(|(m, _)| m.exponent(a)).max().unwrap_or(0) as usize;
        let mut coeffs: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(a) as usize;
            coeffs[k].push((m.with_exponent(a, 0), c.clone()));
        }
        let coeffs: Vec<Poly> = coeffs.into_iter().map(|t| Poly::from_terms(self.nvars, t)).collect();
        let xb = Monomial::var(b);
        // q_{k-1} = c_k + x_b * q_k, remainder c_0 + x_b * q_0.
        let mut quotient = vec![Poly::zero(self.nvars); top];
        let mut carry = Poly::zero(self.nvars);
        for k in (1..=top).rev() {
            let qk = coeffs[k].merge(&carry, false);
            carry = qk.mul_monomial(xb, &Q::one());
            quotient[k - 1] = qk;
        }
        let remainder = coeffs[0].merge(&carry, false);
        assert!(remainder.is_zero(), "inexact division by x{} - x{}", a + 1, b + 1);
        let mut terms = Vec::new();
        for (k, q) in quotient.into_iter().enumerate() {
            for (m, c) in q.terms {
                terms.push((m.with_exponent(a, m.exponent(a) + k as u32), c));
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Re-embeds the polynomial into `nvars` variables, sending `x_j` to
    /// `x_{j+offset}`.
    pub fn reindex(&self, offset: usize, nvars: usize) -> Poly {
        assert!(offset + self.nvars <= nvars, "reindexing out of range");
        let terms = self.terms.iter().map(|(m, c)| (m.shift_vars(offset, self.nvars), c.clone())).collect();
        Poly::from_terms(nvars, terms)
    }

    /// Parses the textual format, with the variable count supplied.
    pub fn parse(nvars: usize, s: &str) -> Result<Poly> {
        parse_poly(nvars, s)
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.try_add(&rhs).expect("variable count mismatch")
    }
}

impl std::ops::Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self.try_sub(&rhs).expect("variable count mismatch")
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.try_mul(&rhs).expect("variable count mismatch")
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Poly {
    /// Terms in decreasing graded-lex order, e.g. `x1^2 - 2*x1*x2 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for v in 0..self.nvars {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    e => factors.push(format!("x{}^{}", v + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_poly(nvars: usize, s: &str) -> Result<Poly> {
    let bytes: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::Parse { line: 1, column: pos + 1, message: msg.to_string() };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| bytes[start..*pos].iter().collect())
    };

    let mut terms = Vec::new();
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty polynomial"));
    }
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        let mut sign = Q::one();
        if bytes[pos] == '+' || bytes[pos] == '-' {
            if bytes[pos] == '-' {
                sign = -Q::one();
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;

        let mut coeff = Q::one();
        let mut exps = vec![0u32; nvars];
        loop {
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let num = read_int(&mut pos).unwrap();
                let mut q: Q = num.parse().map_err(|e: String| err(pos, &e))?;
                if pos < bytes.len() && bytes[pos] == '/' {
                    pos += 1;
                    let den = read_int(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                    let d: Q = den.parse().map_err(|e: String| err(pos, &e))?;
                    if d.is_zero() {
                        return Err(err(pos, "zero denominator"));
                    }
                    q = &q / &d;
                }
                coeff = &coeff * &q;
            } else if pos < bytes.len() && bytes[pos] == 'x' {
                let start = pos;
                pos += 1;
                let idx = read_int(&mut pos).ok_or_else(|| err(pos, "expected variable index"))?;
                let idx: usize = idx.parse().map_err(|_| err(start, "bad variable index"))?;
                if idx < 1 || idx > nvars {
                    return Err(err(start, &format!("variable x{} out of range for {} variables", idx, nvars)));
                }
                let mut e = 1u32;
                if pos < bytes.len() && bytes[pos] == '^' {
                    pos += 1;
                    let ex = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    e = ex.parse().map_err(|_| err(pos, "bad exponent"))?;
                }
                exps[idx - 1] += e;
            } else {
                return Err(err(pos, "expected coefficient or variable"));
            }
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        terms.push((Monomial::from_exponents(&exps), &sign * &coeff));
    }
    Ok(Poly::from_terms(nvars, terms))
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses with the variable count inferred from the largest index used.
    fn from_str(s: &str) -> Result<Poly> {
        let mut max = 0;
        let chars: Vec<char> = s.chars().collect();
        for (i, ch) in chars.iter().enumerate() {
            if *ch == 'x' {
                let digits: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
                if let Ok(v) = digits.parse::<usize>() {
                    max = max.max(v);
                }
            }
        }
        parse_poly(max, s)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, s).unwrap()
    }

    /// Divided difference computed monomial by monomial, independent of the
    /// synthetic division used by `invariant_split`.
    fn demazure(f: &Poly, i: usize) -> Poly {
        let (a, b) = (i - 1, i);
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let (ea, eb) = (m.exponent(a), m.exponent(b));
            let (lo, hi, sign) = if ea >= eb { (eb, ea, c.clone()) } else { (ea, eb, -c) };
            for t in 0..hi.saturating_sub(lo) {
                let mm = m.with_exponent(a, lo + t).with_exponent(b, hi - 1 - t);
                terms.push((mm, sign.clone()));
            }
        }
        Poly::from_terms(f.nvars(), terms)
    }

    #[test]
    fn arithmetic_examples() {
        let a = p(2, "x1 - x2");
        let b = p(2, "x1 + x2");
        assert_eq!(&a * &b, p(2, "x1^2 - x2^2"));
        assert!((&a * &Poly::zero(2)).is_zero());
        assert_eq!(&a * &a, p(2, "x1^2 - 2*x1*x2 + x2^2"));
        assert!(Poly::var(2, 1).try_add(&Poly::var(3, 1)).is_err());
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(p(2, "x1").act_transposition(1).unwrap(), p(2, "x2"));
        assert_eq!(p(2, "x1*x2").act_transposition(1).unwrap(), p(2, "x1*x2"));
        assert_eq!(p(3, "x1").act_transposition(2).unwrap(), p(3, "x1"));
        assert!(p(2, "x1").act_transposition(2).is_err());
        assert!(p(2, "x1").act_transposition(0).is_err());
    }

    #[test]
    fn split_examples() {
        let (e, o) = p(2, "x1").invariant_split(1).unwrap();
        assert_eq!(e, p(2, "1/2*x1 + 1/2*x2"));
        assert_eq!(o, p(2, "1/2"));
        let (e, o) = p(3, "x3").invariant_split(1).unwrap();
        assert_eq!(e, p(3, "x3"));
        assert!(o.is_zero());
        let (e, o) = p(2, "x1^2").invariant_split(1).unwrap();
        assert_eq!(e, p(2, "1/2*x1^2 + 1/2*x2^2"));
        assert_eq!(o, p(2, "1/2*x1 + 1/2*x2"));
    }

    #[test]
    fn invariance_examples() {
        assert!(p(2, "x1 + x2").is_invariant(1).unwrap());
        assert!(!p(2, "x1").is_invariant(1).unwrap());
        assert!(p(3, "x1").is_invariant(2).unwrap());
    }

    #[test]
    fn printing_is_canonical() {
        let q = p(3, "x2*x1 + 1/2 - 3*x3^2 + x1^2");
        assert_eq!(q.to_string(), "x1^2 + x1*x2 - 3*x3^2 + 1/2");
        assert_eq!(p(3, &q.to_string()), q);
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!(p(2, "-x1").to_string(), "-x1");
    }

    #[test]
    fn parse_errors_carry_columns() {
        match Poly::parse(2, "x1 + x3") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("unexpected {:?}", other),
        }
        assert!(Poly::parse(2, "x1 x2").is_err());
        assert!(Poly::parse(2, "").is_err());
    }

    #[test]
    fn all_of_degree_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
        assert_eq!(Monomial::all_of_degree(0, 0), vec![Monomial::ONE]);
        assert!(Monomial::all_of_degree(0, 1).is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
            prop::collection::vec((prop::collection::vec(0u32..4, nvars), -6i64..7, 1i64..4), 0..6).prop_map(
                move |ts| {
                    Poly::from_terms(
                        nvars,
                        ts.into_iter().map(|(e, n, d)| (Monomial::from_exponents(&e), Q::new(n, d))).collect(),
                    )
                },
            )
        }

        proptest! {
            #[test]
            fn split_reconstructs(f in arb_poly(3), i in 1usize..3) {
                let (e, o) = f.invariant_split(i).unwrap();
                let alpha = Poly::coroot(3, i);
                prop_assert_eq!(&e + &(&alpha * &o), f.clone());
                prop_assert!(e.is_invariant(i).unwrap());
                prop_assert!(o.is_invariant(i).unwrap());
                // odd part is half the divided difference
                prop_assert_eq!(o.scale(&Q::from_int(2)), demazure(&f, i));
            }

            #[test]
            fn split_is_linear(f in arb_poly(3), g in arb_poly(3), n in -3i64..4) {
                let c = Q::from_int(n);
                let (ef, of) = f.invariant_split(2).unwrap();
                let (eg, og) = g.invariant_split(2).unwrap();
                let (e, o) = (&f.scale(&c) + &g).invariant_split(2).unwrap();
                prop_assert_eq!(e, &ef.scale(&c) + &eg);
                prop_assert_eq!(o, &of.scale(&c) + &og);
            }

            #[test]
            fn transposition_is_involutive_homomorphism(f in arb_poly(3), g in arb_poly(3), i in 1usize..3) {
                let sf = f.act_transposition(i).unwrap();
                prop_assert_eq!(sf.act_transposition(i).unwrap(), f.clone());
                let sg = g.act_transposition(i).unwrap();
                prop_assert_eq!((&f * &g).act_transposition(i).unwrap(), &sf * &sg);
                if let Some(d) = f.homogeneous_degree() {
                    prop_assert!(sf.is_homogeneous_of(d));
                }
            }

            #[test]
            fn text_round_trip(f in arb_poly(3)) {
                prop_assert_eq!(Poly::parse(3, &f.to_string()).unwrap(), f);
            }
        }
    }
}
