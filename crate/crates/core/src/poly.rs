//! Integer polynomials (dense) and integer Laurent polynomials (sparse).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial in `t` with integer coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(a: BigInt) -> Self {
        Self::new(vec![a])
    }

    /// `a t^k`
    pub fn monomial(a: BigInt, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.c.iter().map(|x| x / &g).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    /// `t^deg f(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(c)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.c[k.min(self.c.len())..].to_vec())
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// `Z[t]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.c.clone();
        let dl = d.lc();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &qk * dj;
            }
            q[k] = qk;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        let dl = d.lc();
        let dd = d.degree();
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let rl = r.lc();
            r = &r.scale(&dl) - &(&IntPoly::monomial(rl, k) * d);
        }
        r
    }

    /// Primitive greatest common divisor (contents are ignored), positive
    /// leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// The `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> IntPoly {
        // t^n - 1 divided by the cyclotomic factors of proper divisors
        let mut p = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = p.div_exact(&IntPoly::cyclotomic(d)).expect("cyclotomic divides t^n - 1");
            }
        }
        p
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lp = LaurentPoly::from_poly(self, 0);
        write!(f, "{lp}")
    }
}

/// Laurent polynomial in `t`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(it: I) -> Self {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in it {
            *terms.entry(e).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    /// `t^shift * p(t)`
    pub fn from_poly(p: &IntPoly, shift: i64) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())))
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(0)
    }

    pub fn max_exp(&self) -> i64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// Ordinary polynomial `t^(-min_exp) * self` together with `min_exp`.
    pub fn to_poly(&self) -> (IntPoly, i64) {
        let lo = self.min_exp();
        let n = (self.max_exp() - lo) as usize + 1;
        let mut c = vec![BigInt::zero(); if self.is_zero() { 0 } else { n }];
        for (e, v) in &self.terms {
            c[(e - lo) as usize] = v.clone();
        }
        (IntPoly::new(c), lo)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn eval(&self, x: &BigInt) -> num_rational::BigRational {
        use num_rational::BigRational;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                BigRational::from_integer(x.pow(*e as u32))
            } else {
                BigRational::new(BigInt::one(), x.pow((-*e) as u32))
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at `t = -1`.
    pub fn at_minus_one(&self) -> BigInt {
        self.terms.iter().map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c }).sum()
    }

    /// Shift to be symmetric under `t -> 1/t` (when possible) and scale by
    /// `-1` so the value at `1` is positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let span = self.max_exp() + self.min_exp();
        // centre the support; odd span cannot be centred exactly
        let shift = -span.div_euclid(2);
        let sgn = if self.at_one().is_negative()
            || (self.at_one().is_zero() && self.terms.values().next_back().unwrap().is_negative())
        {
            -1
        } else {
            1
        };
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + shift, c * sgn)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(v) => m.serialize_entry(&e.to_string(), &v)?,
                None => m.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut terms = vec![];
        for (k, v) in raw {
            let e: i64 = k.parse().map_err(serde::de::Error::custom)?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => {
                    BigInt::from(n.as_i64().ok_or_else(|| serde::de::Error::custom("bad coefficient"))?)
                }
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom)?,
                _ => return Err(serde::de::Error::custom("bad coefficient")),
            };
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).div_exact(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 2, 1])), b);
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(IntPoly::cyclotomic(1), p(&[-1, 1]));
        assert_eq!(IntPoly::cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(IntPoly::cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn laurent_display_and_normalize() {
        let l = LaurentPoly::from_i64(&[(0, -1), (1, 3), (2, -1)]);
        let n = l.normalized();
        assert_eq!(n, LaurentPoly::from_i64(&[(-1, 1), (0, -3), (1, 1)]).normalized());
        assert!(n.is_symmetric());
        assert_eq!(n.at_one(), BigInt::from(1));
        assert_eq!(n.to_string(), "-t + 3 - t^-1");
        let j = serde_json::to_string(&n).unwrap();
        let back: LaurentPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, n);
    }
}
