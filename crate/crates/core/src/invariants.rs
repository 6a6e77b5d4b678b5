//! Classical concordance invariants computed from a Seifert matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::CrossingChangeCertificate;
use crate::error::{AlgebraError, DiagramError};
use crate::factor::factor_integer_poly;
use crate::matrix::{det_poly, symmetric_signature, to_rational};
use crate::poly::{IntPoly, LaurentPoly};
use crate::seifert::SeifertMatrix;

/// `det(V - t V^T)`, shifted to be symmetric with value 1 at `t = 1`.
pub fn alexander_polynomial(v: &SeifertMatrix) -> LaurentPoly {
    let n = v.dim();
    let t = IntPoly::x();
    let m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = IntPoly::constant(BigInt::from(v.rows[i][j]));
                    let b = t.scale(&BigInt::from(v.rows[j][i]));
                    &a - &b
                })
                .collect()
        })
        .collect();
    LaurentPoly::from_poly(&det_poly(&m), 0).normalized()
}

/// `|Delta(-1)|`
pub fn determinant(v: &SeifertMatrix) -> BigInt {
    alexander_polynomial(v).at_minus_one().abs()
}

/// Signature of `V + V^T` and its nullity.
pub fn signature(v: &SeifertMatrix) -> (i64, usize) {
    symmetric_signature(&to_rational(&v.symmetrized()))
}

/// Arf invariant from the Alexander polynomial: 0 when `Delta(-1)` is
/// `+-1 mod 8`, else 1.
pub fn arf(v: &SeifertMatrix) -> u8 {
    arf_from_alexander(&alexander_polynomial(v))
}

pub fn arf_from_alexander(delta: &LaurentPoly) -> u8 {
    let r = delta.at_minus_one().mod_floor(&BigInt::from(8));
    let r = r.to_i64().unwrap();
    if r == 1 || r == 7 {
        0
    } else {
        1
    }
}

/// Whether the Alexander polynomial factors as `f(t) f(t^-1)` up to units.
pub fn fox_milnor(delta: &LaurentPoly) -> Result<bool, AlgebraError> {
    if !delta.is_symmetric() {
        return Err(AlgebraError::NotSymmetric);
    }
    let (p, _) = delta.to_poly();
    let fz = factor_integer_poly(&p)?;
    for (f, e) in &fz.factors {
        if f.degree() == 0 {
            continue;
        }
        let r = f.reversed().primitive();
        if &r == f {
            if e % 2 == 1 {
                return Ok(false);
            }
        } else {
            let er = fz.factors.iter().find(|(g, _)| *g == r).map(|(_, k)| *k).unwrap_or(0);
            if er != *e {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Primitive integer vector `(a, b)` with `x^T V x = 0`, for genus-one `V`.
/// Among the (at most two) isotropic lines the one with larger slope `a/b` is
/// returned, with `b >= 0`.
pub fn genus1_metabolizer(v: &SeifertMatrix) -> Result<Option<(i64, i64)>, AlgebraError> {
    if v.dim() != 2 {
        return Err(AlgebraError::Shape);
    }
    let a = v.rows[0][0] as i128;
    let b = (v.rows[0][1] + v.rows[1][0]) as i128;
    let c = v.rows[1][1] as i128;
    if a == 0 {
        return Ok(Some((1, 0)));
    }
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Ok(None);
    }
    let s = disc.isqrt();
    if s * s != disc {
        return Ok(None);
    }
    // roots x/y = (-b +- s) / 2a
    let roots: Vec<BigRational> =
        [-b + s, -b - s].iter().map(|num| BigRational::new(BigInt::from(*num), BigInt::from(2 * a))).collect();
    let best = roots.into_iter().max().unwrap();
    let x = best.numer().to_i64().unwrap();
    let y = best.denom().to_i64().unwrap();
    Ok(Some((x, y)))
}

/// Upper bounds `(kappa_plus, kappa_minus)` from a verified crossing-change
/// certificate: the number of positive and of negative crossings switched.
pub fn kinkiness_bounds(cert: &CrossingChangeCertificate) -> Result<(usize, usize), DiagramError> {
    cert.verify()?;
    Ok(cert.switch_counts())
}

/// `cot(pi q)` is the real parameter of the Hermitian form at `exp(2 pi i q)`
/// after dividing by `1 - cos(2 pi q)`.
fn hermitian_at(v: &SeifertMatrix, kappa: &BigRational) -> Vec<Vec<BigRational>> {
    let s = to_rational(&v.symmetrized());
    let a = to_rational(&v.antisymmetrized());
    let n = v.dim();
    let mut m = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = s[i][j].clone();
            m[n + i][n + j] = s[i][j].clone();
            m[i][n + j] = kappa * &a[i][j];
            m[n + i][j] = -(kappa * &a[i][j]);
        }
    }
    m
}

/// `det` of the realified Hermitian form as a polynomial in the parameter.
fn hermitian_det_poly(v: &SeifertMatrix) -> IntPoly {
    let s = v.symmetrized();
    let a = v.antisymmetrized();
    let n = v.dim();
    let k = IntPoly::x();
    let c = |x: i64| IntPoly::constant(BigInt::from(x));
    let mut m = vec![vec![IntPoly::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = c(s[i][j]);
            m[n + i][n + j] = c(s[i][j]);
            m[i][n + j] = k.scale(&BigInt::from(a[i][j]));
            m[n + i][j] = k.scale(&BigInt::from(-a[i][j]));
        }
    }
    det_poly(&m)
}

/// Whether `exp(2 pi i q)` is a root of the Alexander polynomial.
pub fn is_alexander_root(delta: &LaurentPoly, q: &BigRational) -> bool {
    let den = q.denom().to_u64().unwrap_or(0);
    if den == 0 {
        return false;
    }
    let (p, _) = delta.to_poly();
    // Phi_den has degree phi(den); a longer cyclotomic factor cannot divide
    if euler_phi(den) > p.degree() as u64 {
        return false;
    }
    p.gcd(&IntPoly::cyclotomic(den)).degree() > 0
}

fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// The rational with smallest denominator strictly between `lo` and `hi`
/// (`0 <= lo < hi`), by descent in the Stern-Brocot tree.
pub fn simplest_between(lo: f64, hi: f64) -> BigRational {
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, 0i64);
    loop {
        let (p, q) = (a + c, b + d);
        let x = p as f64 / q as f64;
        if x <= lo {
            a = p;
            b = q;
        } else if x >= hi {
            c = p;
            d = q;
        } else {
            return BigRational::new(p.into(), q.into());
        }
    }
}

/// Levine-Tristram signature at `omega = exp(2 pi i q)` for rational
/// `q in (0, 1)`; rejects roots of the Alexander polynomial.
pub fn levine_tristram(v: &SeifertMatrix, q: &BigRational) -> Result<i64, AlgebraError> {
    if !q.is_positive() || q >= &BigRational::one() {
        return Err(AlgebraError::OutOfRange(format!("q = {q} is not in (0, 1)")));
    }
    if v.dim() == 0 {
        return Ok(0);
    }
    let delta = alexander_polynomial(v);
    if is_alexander_root(&delta, q) {
        return Err(AlgebraError::AlexanderRoot(q.to_string()));
    }
    let kappa = rational_parameter(v, q)?;
    let (sig, _) = symmetric_signature(&hermitian_at(v, &kappa));
    Ok(sig / 2)
}

/// A rational point in the same root-free interval of the Hermitian
/// determinant as `cot(pi q)`.
fn rational_parameter(v: &SeifertMatrix, q: &BigRational) -> Result<BigRational, AlgebraError> {
    let half = BigRational::new(1.into(), 2.into());
    if *q == half {
        return Ok(BigRational::zero());
    }
    let qf = q.to_f64().unwrap();
    let kappa = 1.0 / (std::f64::consts::PI * qf).tan();
    let sturm = Sturm::new(&hermitian_det_poly(v));
    for bits in [20i32, 28, 36, 42] {
        let scale = 2f64.powi(bits);
        let r = BigRational::from_float((kappa * scale).round() / scale).unwrap();
        let width = kappa.abs().max(1.0) * 2f64.powi(-bits + 6);
        let w = BigRational::from_float(width).unwrap();
        // f64 evaluation of cot is accurate to far better than `width`
        if sturm.count(&(&r - &w), &(&r + &w)) == 0 {
            return Ok(r);
        }
    }
    Err(AlgebraError::Other(format!("could not isolate cot(pi * {q}) from the jump points")))
}

/// Approximate parameters `q in (0, 1)` of the unit-circle roots of the
/// Alexander polynomial, where the Levine-Tristram signature may jump.
pub fn jump_points(v: &SeifertMatrix) -> Vec<f64> {
    if v.dim() == 0 {
        return vec![];
    }
    let sturm = Sturm::new(&hermitian_det_poly(v));
    let mut out = vec![];
    for (lo, hi) in sturm.isolate(1e-12) {
        let k = ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap();
        // kappa = cot(pi q)
        let q = (std::f64::consts::FRAC_PI_2 - k.atan()) / std::f64::consts::PI;
        out.push(q);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Sturm sequence of the square-free part of a polynomial.
struct Sturm {
    seq: Vec<Vec<BigRational>>,
}

fn rpoly(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rtrim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rrem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &f * bj;
        }
        r.pop();
        r = rtrim(r);
    }
    r
}

fn reval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

impl Sturm {
    fn new(p: &IntPoly) -> Self {
        let sq = if p.degree() > 0 { p.div_exact(&p.gcd(&p.derivative())).unwrap() } else { p.clone() };
        let mut seq = vec![rpoly(&sq)];
        if sq.degree() > 0 {
            seq.push(rpoly(&sq.derivative()));
            loop {
                let n = seq.len();
                let r = rrem(&seq[n - 2], &seq[n - 1]);
                if r.is_empty() {
                    break;
                }
                seq.push(r.into_iter().map(|c| -c).collect());
            }
        }
        Sturm { seq }
    }

    fn changes(&self, x: &BigRational) -> usize {
        let signs: Vec<i8> = self
            .seq
            .iter()
            .map(|p| {
                let v = reval(p, x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.changes(lo) - self.changes(hi)
    }

    fn isolate(&self, tol: f64) -> Vec<(BigRational, BigRational)> {
        let p = &self.seq[0];
        if p.len() <= 1 {
            return vec![];
        }
        // Cauchy bound
        let lead = p.last().unwrap().abs();
        let m = p.iter().map(|c| c.abs() / &lead).max().unwrap() + BigRational::one();
        let tol = BigRational::from_float(tol).unwrap();
        let mut out = vec![];
        let mut stack = vec![(-m.clone(), m)];
        while let Some((lo, hi)) = stack.pop() {
            let c = self.count(&lo, &hi);
            if c == 0 {
                continue;
            }
            if c == 1 && &hi - &lo < tol {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out
    }
}

/// Everything the `invariants` command reports for one knot.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub crossings: Option<usize>,
    pub writhe: Option<i64>,
    pub seifert_circles: Option<usize>,
    pub genus_bound: usize,
    pub seifert_matrix: SeifertMatrix,
    pub alexander: LaurentPoly,
    pub determinant: String,
    pub signature: i64,
    pub nullity: usize,
    pub arf: u8,
    pub fox_milnor: bool,
    pub metabolizer: Option<(i64, i64)>,
    pub levine_tristram: Vec<LtValue>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LtValue {
    pub q: String,
    pub value: Option<i64>,
    pub note: Option<String>,
}

impl InvariantReport {
    pub fn compute(name: &str, v: &SeifertMatrix, lt: &[BigRational]) -> Result<Self, AlgebraError> {
        let delta = alexander_polynomial(v);
        let (sig, nul) = signature(v);
        let levine_tristram = lt
            .iter()
            .map(|q| match levine_tristram(v, q) {
                Ok(x) => LtValue { q: q.to_string(), value: Some(x), note: None },
                Err(e) => LtValue { q: q.to_string(), value: None, note: Some(e.to_string()) },
            })
            .collect();
        Ok(InvariantReport {
            name: name.to_string(),
            crossings: None,
            writhe: None,
            seifert_circles: None,
            genus_bound: v.genus,
            seifert_matrix: v.clone(),
            determinant: delta.at_minus_one().abs().to_string(),
            arf: arf_from_alexander(&delta),
            fox_milnor: fox_milnor(&delta)?,
            metabolizer: if v.dim() == 2 { genus1_metabolizer(v)? } else { None },
            alexander: delta,
            signature: sig,
            nullity: nul,
            levine_tristram,
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("knot            {}\n", self.name));
        if let Some(c) = self.crossings {
            s.push_str(&format!("crossings       {c}\n"));
        }
        if let Some(w) = self.writhe {
            s.push_str(&format!("writhe          {w}\n"));
        }
        if let Some(c) = self.seifert_circles {
            s.push_str(&format!("seifert circles {c}\n"));
        }
        s.push_str(&format!("genus bound     {}\n", self.genus_bound));
        s.push_str(&format!("seifert matrix  {:?}\n", self.seifert_matrix.rows));
        s.push_str(&format!("alexander       {}\n", self.alexander));
        s.push_str(&format!("determinant     {}\n", self.determinant));
        s.push_str(&format!("signature       {} (nullity {})\n", self.signature, self.nullity));
        s.push_str(&format!("arf             {}\n", self.arf));
        s.push_str(&format!("fox-milnor      {}\n", if self.fox_milnor { "satisfied" } else { "fails" }));
        if self.seifert_matrix.dim() == 2 {
            match self.metabolizer {
                Some((a, b)) => s.push_str(&format!("metabolizer     ({a}, {b})\n")),
                None => s.push_str("metabolizer     none\n"),
            }
        }
        for lt in &self.levine_tristram {
            match (&lt.value, &lt.note) {
                (Some(v), _) => s.push_str(&format!("sigma at q={:<6} {v}\n", lt.q)),
                (None, Some(n)) => s.push_str(&format!("sigma at q={:<6} undefined ({n})\n", lt.q)),
                _ => {}
            }
        }
        s
    }
}
