//! Factorisation of integer polynomials into irreducibles over `Z`.
//!
//! Square-free part, then Cantor-Zassenhaus modulo one prime large enough
//! that factor coefficients are recovered directly from their symmetric
//! residues, then recombination of modular factors by subset trial division.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::poly::IntPoly;

/// `content * prod(f_i ^ e_i)` with every `f_i` primitive, irreducible, with
/// positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = &acc * f;
            }
        }
        acc
    }
}

pub fn factor_integer_poly(p: &IntPoly) -> Result<Factorization, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut content = p.content();
    if p.lc().is_negative() {
        content = -content;
    }
    let f = p.primitive();
    let mut factors: Vec<(IntPoly, usize)> = vec![];
    let v = f.valuation();
    if v > 0 {
        factors.push((IntPoly::x(), v));
    }
    let f = f.shift_down(v);
    if f.degree() > 0 {
        let kernel = f.div_exact(&f.gcd(&f.derivative())).expect("gcd divides").primitive();
        let mut rest = f.clone();
        for q in factor_squarefree(&kernel)? {
            let mut e = 0;
            while let Some(r) = rest.div_exact(&q) {
                rest = r;
                e += 1;
            }
            debug_assert!(e > 0);
            factors.push((q, e));
        }
        debug_assert_eq!(rest.degree(), 0);
    }
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
    Ok(Factorization { content, factors })
}

/// Irreducible factors of a primitive square-free polynomial.
fn factor_squarefree(g: &IntPoly) -> Result<Vec<IntPoly>, AlgebraError> {
    if g.degree() <= 1 {
        return Ok(vec![g.primitive()]);
    }
    let lc = g.lc().abs();
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let bound = BigInt::from(2) * &lc * (BigInt::one() << g.degree()) * (norm2.sqrt() + 1u32);
    let start = bound.to_u64().filter(|&b| b < (1u64 << 62)).ok_or(AlgebraError::DegreeTooLarge(g.degree()))?;
    let mut p = start.max(3) | 1;
    let gp = loop {
        if is_prime(p) && !(&lc % p).is_zero() {
            let gp = ModPoly::from_int(g, p);
            let d = gp.derivative();
            if gp.gcd(&d).deg() == 0 {
                break gp;
            }
        }
        p += 2;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modf: Vec<ModPoly> = vec![];
    for (h, d) in distinct_degree(&gp.monic()) {
        modf.extend(equal_degree(&h, d, &mut rng));
    }
    // recombine
    let mut out = vec![];
    let mut cur = g.clone();
    let mut s = 1;
    while 2 * s <= modf.len() {
        let mut found = false;
        for subset in subsets(modf.len(), s) {
            let lcb = cur.lc();
            let mut prod = ModPoly::constant(big_mod(&lcb, p), p);
            for &i in &subset {
                prod = prod.mul(&modf[i]);
            }
            let cand = prod.to_symmetric_int().primitive();
            if let Some(q) = cur.div_exact(&cand) {
                out.push(cand);
                cur = q;
                let mut i = 0;
                modf.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if cur.degree() > 0 {
        out.push(cur.primitive());
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

fn big_mod(a: &BigInt, p: u64) -> u64 {
    let r = a % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Dense polynomial over `F_p`, lowest degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ModPoly {
    c: Vec<u64>,
    p: u64,
}

impl ModPoly {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c, p }
    }
    fn constant(a: u64, p: u64) -> Self {
        Self::new(vec![a % p], p)
    }
    fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }
    fn from_int(f: &IntPoly, p: u64) -> Self {
        Self::new(f.coeffs().iter().map(|a| big_mod(a, p)).collect(), p)
    }
    fn to_symmetric_int(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&a| if a > half { BigInt::from(a) - BigInt::from(self.p) } else { BigInt::from(a) })
                .collect(),
        )
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }
    fn inv(&self, a: u64) -> u64 {
        powmod(a, self.p - 2, self.p)
    }
    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let i = self.inv(self.lc());
        Self::new(self.c.iter().map(|&a| mulmod(a, i, self.p)).collect(), self.p)
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            (0..n)
                .map(|i| {
                    let a = *self.c.get(i).unwrap_or(&0);
                    let b = *o.c.get(i).unwrap_or(&0);
                    (a + p - b) % p
                })
                .collect(),
            p,
        )
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![], self.p);
        }
        let p = self.p;
        let mut c = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u128 * b as u128) % p as u128;
            }
        }
        Self::new(c.into_iter().map(|x| x as u64).collect(), p)
    }
    fn divrem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::new(vec![], p), self.clone());
        }
        let mut r = self.c.clone();
        let inv = self.inv(d.lc());
        let dd = d.deg();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = mulmod(r[k + dd], inv, p);
            q[k] = t;
            if t == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(t, b, p)) % p;
            }
        }
        (Self::new(q, p), Self::new(r, p))
    }
    fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % p, p)).collect(), p)
    }
    fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::constant(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }
}

/// Split a monic square-free polynomial into products of equal-degree
/// irreducibles: `(product, degree)`.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut out = vec![];
    let mut f = f.clone();
    let mut h = ModPoly::x(p);
    let mut d = 1;
    while f.deg() >= 2 * d {
        h = h.powmod(p, &f);
        let g = f.gcd(&h.sub(&ModPoly::x(p)));
        if g.deg() > 0 {
            f = f.divrem(&g).0;
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if f.deg() > 0 {
        let k = f.deg();
        out.push((f, k));
    }
    out
}

fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    loop {
        let a = ModPoly::new((0..f.deg()).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.deg() == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut t = a.rem(f);
        let mut frob = t.clone();
        for _ in 1..d {
            frob = frob.powmod(p, f);
            t = t.mul(&frob).rem(f);
        }
        let b = t.powmod((p - 1) / 2, f);
        let g = f.gcd(&b.sub(&ModPoly::constant(1, p)));
        if g.deg() > 0 && g.deg() < f.deg() {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.divrem(&g).0, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_cases() {
        let f = factor_integer_poly(&p(&[2, -5, 2])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-2, 1]), 1), (p(&[-1, 2]), 1)]);
        let f = factor_integer_poly(&p(&[1, -1, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, -1, 1]), 1)]);
        let f = factor_integer_poly(&p(&[-6, 0, 6])).unwrap();
        assert_eq!(f.content, BigInt::from(6));
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn repeated_and_monomial_factors() {
        // t^2 (t - 1)^3 (t^2 + 1)
        let a = p(&[-1, 1]);
        let b = p(&[1, 0, 1]);
        let mut g = p(&[0, 0, 1]);
        for _ in 0..3 {
            g = &g * &a;
        }
        g = &g * &b;
        let f = factor_integer_poly(&g).unwrap();
        assert_eq!(f.expand(), g);
        assert_eq!(f.factors, vec![(a, 3), (p(&[0, 1]), 2), (b, 1)]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = factor_integer_poly(&p(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn primes() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
        assert!(is_prime(2_305_843_009_213_693_951));
    }
}
