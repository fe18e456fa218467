//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycScalar`] stores its coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}` after reduction modulo the `N`-th cyclotomic
//! polynomial. Operands of different orders are embedded into `Q(ζ_L)` with
//! `L = lcm` of the orders before any binary operation, so scalars of mixed
//! orders can be combined freely and compared for equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficients of `Φ_N`, lowest degree first. Monic of degree `φ(N)`.
fn cyclotomic_poly(order: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&order) {
        return Arc::clone(p);
    }
    let poly = Arc::new(compute_cyclotomic(order));
    let mut w = cache.write().expect("cyclotomic cache poisoned");
    Arc::clone(w.entry(order).or_insert(poly))
}

fn compute_cyclotomic(order: u32) -> Vec<i64> {
    assert!(order >= 1, "cyclotomic order must be positive");
    // x^N - 1 divided by Φ_d for every proper divisor d.
    let n = order as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..order {
        if order % d == 0 {
            let div = cyclotomic_poly(d);
            num = poly_div_exact(&num, &div);
        }
    }
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for top in (dn..num.len()).rev() {
        let c = rem[top];
        if c != 0 {
            quot[top - dn] = c;
            for (i, &d) in den.iter().enumerate() {
                rem[top - dn + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Element of the cyclotomic field `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar { order: 1, coeffs: vec![r] }
    }

    /// `ζ_N^power`.
    pub fn zeta(order: u32, power: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let k = (power % order as u64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(order, poly)
    }

    /// Builds `Σ poly[k] ζ_N^k`, reducing modulo `Φ_N`.
    pub fn from_poly(order: u32, mut poly: Vec<BigRational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        reduce_in_place(&mut poly, &phi);
        poly.resize(deg, BigRational::zero());
        CycScalar { order, coeffs: poly }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates in `Q(ζ_order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return Some(self.coeffs[0].clone());
        }
        self.restrict(1).map(|s| s.coeffs[0].clone())
    }

    /// Image under `Q(ζ_N) → Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> CycScalar {
        assert!(
            target % self.order == 0,
            "cannot embed Q(ζ_{}) into Q(ζ_{})",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[k * step] = c.clone();
            }
        }
        Self::from_poly(target, poly)
    }

    /// Preimage under `Q(ζ_m) → Q(ζ_N)` when the value lies in the subfield.
    pub fn restrict(&self, m: u32) -> Option<CycScalar> {
        if m == self.order {
            return Some(self.clone());
        }
        if m == 0 || self.order % m != 0 {
            return None;
        }
        let small = totient(m);
        let big = self.coeffs.len();
        // Columns: images of the power basis of Q(ζ_m).
        let mut sys = vec![vec![BigRational::zero(); small + 1]; big];
        for j in 0..small {
            let img = CycScalar::zeta(m, j as u64).embed(self.order);
            for (i, row) in sys.iter_mut().enumerate() {
                row[j] = img.coeffs[i].clone();
            }
        }
        for (i, row) in sys.iter_mut().enumerate() {
            row[small] = self.coeffs[i].clone();
        }
        let sol = solve_rational(sys, small)?;
        Some(CycScalar { order: m, coeffs: sol })
    }

    /// Equivalent scalar in the smallest cyclotomic field containing it.
    pub fn simplify(&self) -> CycScalar {
        let mut divisors: Vec<u32> = (1..=self.order).filter(|d| self.order % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if totient(d) > self.coeffs.len() {
                continue;
            }
            if let Some(s) = self.restrict(d) {
                return s;
            }
        }
        self.clone()
    }

    /// Complex conjugation: the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycScalar {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut poly = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = (n - k) % n;
                poly[idx] += c;
            }
        }
        Self::from_poly(self.order, poly)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let deg = self.coeffs.len();
        if deg == 1 {
            return Ok(CycScalar {
                order: self.order,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // Solve (mult-by-self) x = 1 in the power basis.
        let mut sys = vec![vec![BigRational::zero(); deg + 1]; deg];
        for j in 0..deg {
            let col = self * &CycScalar::zeta(self.order, j as u64);
            for (i, row) in sys.iter_mut().enumerate() {
                row[j] = col.coeffs[i].clone();
            }
        }
        sys[0][deg] = BigRational::one();
        let sol = solve_rational(sys, deg).ok_or(Error::DivisionByZero)?;
        Ok(CycScalar { order: self.order, coeffs: sol })
    }

    pub fn try_div(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> CycScalar {
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Value at `ζ_N = exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(v, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }

    /// Lexicographic comparison of coordinates after embedding both operands
    /// into a common field. Deterministic total order used for sorting.
    pub fn cmp_coords(&self, other: &CycScalar) -> Ordering {
        let (a, b) = common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }

    /// Text form in `Q(ζ_field)` following the scalar grammar. The scalar's own
    /// order must divide `field`.
    pub fn to_text(&self, field: u32) -> Result<String> {
        if field % self.order != 0 {
            return Err(Error::ScalarParse(format!(
                "scalar of order {} does not live in Q(ζ_{})",
                self.order, field
            )));
        }
        let s = self.embed(field);
        let mut out = String::new();
        for (k, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let first = out.is_empty();
            let neg = c.is_negative();
            let mag = c.abs();
            if !first {
                out.push(if neg { '-' } else { '+' });
            }
            let mag_txt = fmt_rational(&mag);
            if k == 0 {
                if first && neg {
                    out.push('-');
                }
                out.push_str(&mag_txt);
                continue;
            }
            let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
            if mag.is_one() {
                if first && neg {
                    // A bare `-z` is not a term; keep an explicit coefficient.
                    out.push_str("-1*");
                }
                out.push_str(&z);
            } else {
                if first && neg {
                    out.push('-');
                }
                out.push_str(&mag_txt);
                out.push('*');
                out.push_str(&z);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        Ok(out)
    }

    /// Parses the scalar grammar with `z = ζ_field`.
    pub fn parse(text: &str, field: u32) -> Result<CycScalar> {
        if field == 0 {
            return Err(Error::ScalarParse("field order must be positive".into()));
        }
        Parser::new(text, field).parse()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn reduce_in_place(poly: &mut Vec<BigRational>, phi: &[i64]) {
    let deg = phi.len() - 1;
    if poly.len() <= deg {
        return;
    }
    for top in (deg..poly.len()).rev() {
        if poly[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[top], BigRational::zero());
        for (i, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                poly[top - deg + i] -= &c * BigRational::from_integer(BigInt::from(p));
            }
        }
    }
    poly.truncate(deg);
}

/// Solves a consistent rational system given as augmented rows with `n`
/// unknowns. Returns the unique solution, or `None` when the system is
/// inconsistent or underdetermined.
fn solve_rational(mut rows: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=n {
                    let delta = &f * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| rows[i][n].clone()).collect())
}

fn common(a: &CycScalar, b: &CycScalar) -> (CycScalar, CycScalar) {
    if a.order == b.order {
        return (a.clone(), b.clone());
    }
    let l = lcm(a.order, b.order);
    (a.embed(l), b.embed(l))
}

fn zip_coeffs(
    a: &CycScalar,
    b: &CycScalar,
    f: impl Fn(&BigRational, &BigRational) -> BigRational,
) -> CycScalar {
    if a.order == b.order {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
        return CycScalar { order: a.order, coeffs };
    }
    let (a, b) = common(a, b);
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
    CycScalar { order: a.order, coeffs }
}

fn mul_same(a: &CycScalar, b: &CycScalar) -> CycScalar {
    if a.coeffs.len() == 1 {
        return CycScalar {
            order: a.order,
            coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
        };
    }
    let n = a.coeffs.len();
    let mut poly = vec![BigRational::zero(); 2 * n - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                poly[i + j] += x * y;
            }
        }
    }
    CycScalar::from_poly(a.order, poly)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        zip_coeffs(self, rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        zip_coeffs(self, rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.is_zero() || rhs.is_zero() {
            return CycScalar::zero();
        }
        if self.order == rhs.order {
            return mul_same(self, rhs);
        }
        if self.order == 1 {
            return rhs.scale_rational(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale_rational(&rhs.coeffs[0]);
        }
        let (a, b) = common(self, rhs);
        mul_same(&a, &b)
    }
}

impl CycScalar {
    fn scale_rational(&self, r: &BigRational) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        CycScalar::from_int(v)
    }
}

impl fmt::Display for CycScalar {
    /// Grammar form with `z = ζ_order`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.simplify();
        let txt = s.to_text(s.order).map_err(|_| fmt::Error)?;
        if s.order > 1 {
            write!(f, "{txt} (z=ζ_{})", s.order)
        } else {
            f.write_str(&txt)
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: u32,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: u32) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0, field }
    }

    fn err(&self, msg: &str) -> Error {
        Error::ScalarParse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn parse(mut self) -> Result<CycScalar> {
        let n = totient(self.field);
        let mut poly = vec![BigRational::zero(); n.max(1)];
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (coef, power) = self.term()?;
            let power = power % self.field as u64;
            let idx = power as usize;
            if idx >= poly.len() {
                poly.resize(idx + 1, BigRational::zero());
            }
            poly[idx] += sign * coef;
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
        Ok(CycScalar::from_poly(self.field, poly))
    }

    fn term(&mut self) -> Result<(BigRational, u64)> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok((BigRational::one(), self.power()?))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                let r = BigRational::new(num, den);
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'z') {
                        return Err(self.err("expected 'z'"));
                    }
                    self.pos += 1;
                    return Ok((r, self.power()?));
                }
                Ok((r, 0))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn power(&mut self) -> Result<u64> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let p = self.uint()?;
            return p.to_u64().ok_or_else(|| self.err("exponent too large"));
        }
        Ok(1)
    }
}
