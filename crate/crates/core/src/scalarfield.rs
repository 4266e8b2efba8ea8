//! Exact scalars: formal rational powers of the base parameter `q`, and the
//! field of rational functions in a root of `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `q^exp` of the torsion-free group of formal parameter powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarExp {
    pub exp: Rational64,
}

impl ScalarExp {
    pub fn new(exp: Rational64) -> Self {
        ScalarExp { exp }
    }

    pub fn from_int(e: i64) -> Self {
        ScalarExp {
            exp: Rational64::from_integer(e),
        }
    }

    pub fn one() -> Self {
        ScalarExp {
            exp: Rational64::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exp.is_zero()
    }

    pub fn inv(&self) -> Self {
        ScalarExp { exp: -self.exp }
    }

    pub fn to_coeff(&self) -> Coeff {
        Coeff::qpow(self.exp)
    }
}

impl Mul for ScalarExp {
    type Output = ScalarExp;
    fn mul(self, rhs: ScalarExp) -> ScalarExp {
        ScalarExp {
            exp: self.exp + rhs.exp,
        }
    }
}

impl Div for ScalarExp {
    type Output = ScalarExp;
    fn div(self, rhs: ScalarExp) -> ScalarExp {
        ScalarExp {
            exp: self.exp - rhs.exp,
        }
    }
}

/// `s^n`: the exponent is multiplied by `n`.
pub fn scalar_pow(s: ScalarExp, n: Rational64) -> ScalarExp {
    ScalarExp { exp: s.exp * n }
}

fn fmt_exp(e: &Rational64) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for ScalarExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp.is_zero() {
            write!(f, "1")
        } else if self.exp.is_one() {
            write!(f, "q")
        } else {
            write!(f, "q^{{{}}}", fmt_exp(&self.exp))
        }
    }
}

/// Coefficient fields usable by [`Poly`] and [`RatFunc`].
pub trait Field: Num + Clone + Neg<Output = Self> + fmt::Debug + fmt::Display + Send + Sync {}

impl<T> Field for T where T: Num + Clone + Neg<Output = T> + fmt::Debug + fmt::Display + Send + Sync {}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: T) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn from_coeffs(c: Vec<T>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    fn trim(&mut self) {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.c.last()
    }

    /// Number of vanishing low-order coefficients.
    pub fn low_zeros(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    /// Divides by `u^k`; the caller guarantees `k <= low_zeros()`.
    fn drop_low(&mut self, k: usize) {
        self.c.drain(..k);
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![T::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Substitutes `u -> u^k`.
    pub fn stretch(&self, k: usize) -> Self {
        if k == 1 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![T::zero(); (self.c.len() - 1) * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * k] = a.clone();
        }
        Poly { c }
    }

    /// gcd of the exponents carrying nonzero coefficients (0 for constants).
    fn exponent_gcd(&self) -> usize {
        let mut g = 0usize;
        for (i, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                g = g.gcd(&i);
            }
        }
        g
    }

    /// Substitutes `u^k -> u`; the caller guarantees every exponent is a multiple of `k`.
    fn compress(&self, k: usize) -> Self {
        if k <= 1 {
            return self.clone();
        }
        Poly {
            c: self.c.iter().step_by(k).cloned().collect(),
        }
    }

    pub fn scale(&self, a: &T) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x.clone() * a.clone()).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = T::one() / d.c[dd].clone();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd].clone() * lead_inv.clone();
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] = r[i + j].clone() - coef.clone() * b.clone();
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(T::zero);
            let b = rhs.c.get(i).cloned().unwrap_or_else(T::zero);
            c.push(a + b);
        }
        Poly::from_coeffs(c)
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(T::zero);
            let b = rhs.c.get(i).cloned().unwrap_or_else(T::zero);
            c.push(a - b);
        }
        Poly::from_coeffs(c)
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(c)
    }
}

/// A rational function `u^val * num(u) / den(u)` in `u = q^{1/d}`.
///
/// Canonical form: `num(0) != 0`, `den(0) != 0`, `den` monic, `gcd(num, den) = 1`,
/// and `d` minimal. Zero is `num = 0, val = 0, d = 1, den = 1`. Canonical forms
/// are unique, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<T> {
    d: u32,
    val: i64,
    num: Poly<T>,
    den: Poly<T>,
}

/// The coefficient field used throughout the crate.
pub type Coeff = RatFunc<BigRational>;

impl<T: Field> RatFunc<T> {
    pub fn zero() -> Self {
        RatFunc {
            d: 1,
            val: 0,
            num: Poly::zero(),
            den: Poly::constant(T::one()),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(a: T) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        RatFunc {
            d: 1,
            val: 0,
            num: Poly::constant(a),
            den: Poly::constant(T::one()),
        }
    }

    /// `q^e`.
    pub fn qpow(e: Rational64) -> Self {
        Self::monomial(T::one(), e)
    }

    /// `a q^e`.
    pub fn monomial(a: T, e: Rational64) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        RatFunc {
            d: *e.denom() as u32,
            val: *e.numer(),
            num: Poly::constant(a),
            den: Poly::constant(T::one()),
        }
    }

    /// The Laurent polynomial `sum a_i q^{e_i}`.
    pub fn laurent(terms: &[(T, Rational64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, (a, e)| &acc + &Self::monomial(a.clone(), *e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is trivial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Terms `(coefficient, exponent of q)` when the value is a Laurent polynomial.
    pub fn laurent_terms(&self) -> Option<Vec<(T, Rational64)>> {
        if !self.is_laurent() {
            return None;
        }
        Some(Self::poly_terms(&self.num, self.val, self.d))
    }

    fn poly_terms(p: &Poly<T>, val: i64, d: u32) -> Vec<(T, Rational64)> {
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (a.clone(), Rational64::new(val + i as i64, d as i64)))
            .collect()
    }

    /// If the value is `a q^e`, returns `(a, e)`.
    pub fn as_monomial(&self) -> Option<(T, Rational64)> {
        if self.is_laurent() && self.num.coeffs().len() == 1 {
            Some((self.num.coeffs()[0].clone(), Rational64::new(self.val, self.d as i64)))
        } else {
            None
        }
    }

    fn normalize(mut d: u32, mut val: i64, mut num: Poly<T>, mut den: Poly<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        assert!(!den.is_zero(), "zero denominator");
        let k = num.low_zeros();
        num.drop_low(k);
        val += k as i64;
        let k = den.low_zeros();
        den.drop_low(k);
        val -= k as i64;
        if !den.is_one() {
            if den.degree() != Some(0) {
                let g = num.gcd(&den);
                if g.degree().map_or(false, |x| x > 0) {
                    num = num.divrem(&g).0;
                    den = den.divrem(&g).0;
                }
            }
            let l = den.lead().cloned().expect("nonzero");
            if !l.is_one() {
                let inv = T::one() / l;
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        let mut g = (d as usize).gcd(&num.exponent_gcd()).gcd(&den.exponent_gcd());
        g = g.gcd(&(val.unsigned_abs() as usize));
        if g > 1 {
            num = num.compress(g);
            den = den.compress(g);
            d /= g as u32;
            val /= g as i64;
        }
        RatFunc { d, val, num, den }
    }

    fn lifted(&self, d: u32) -> (i64, Poly<T>, Poly<T>) {
        let k = (d / self.d) as usize;
        (self.val * k as i64, self.num.stretch(k), self.den.stretch(k))
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            d: self.d,
            val: self.val,
            num: self.num.scale(&-T::one()),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.d, -self.val, self.den.clone(), self.num.clone()))
    }

    /// Exact quotient; errors on division by zero.
    pub fn checked_div(&self, b: &Self) -> Result<Self> {
        let inv = b.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Multiplies by `q^e`.
    pub fn mul_qpow(&self, e: Rational64) -> Self {
        if e.is_zero() || self.is_zero() {
            return self.clone();
        }
        let ed = *e.denom() as u32;
        let d = (self.d).lcm(&ed);
        let (val, num, den) = self.lifted(d);
        let shift = *e.numer() * (d / ed) as i64;
        Self::normalize(d, val + shift, num, den)
    }

    pub fn scale(&self, a: &T) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        RatFunc {
            d: self.d,
            val: self.val,
            num: self.num.scale(a),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().expect("zero to a negative power").pow(-n);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }
}

impl<T: Field> Add for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn add(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let d = self.d.lcm(&rhs.d);
        let (v1, n1, d1) = self.lifted(d);
        let (v2, n2, d2) = rhs.lifted(d);
        let v = v1.min(v2);
        let a = n1.shift((v1 - v) as usize);
        let b = n2.shift((v2 - v) as usize);
        if d1.is_one() && d2.is_one() {
            return RatFunc::normalize(d, v, &a + &b, d1);
        }
        if d1 == d2 {
            return RatFunc::normalize(d, v, &a + &b, d1);
        }
        let num = &(&a * &d2) + &(&b * &d1);
        RatFunc::normalize(d, v, num, &d1 * &d2)
    }
}

impl<T: Field> Sub for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn sub(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        self + &rhs.neg()
    }
}

impl<T: Field> Mul for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn mul(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let d = self.d.lcm(&rhs.d);
        let (v1, n1, d1) = self.lifted(d);
        let (v2, n2, d2) = rhs.lifted(d);
        if d1.is_one() && d2.is_one() {
            return RatFunc::normalize(d, v1 + v2, &n1 * &n2, d1);
        }
        RatFunc::normalize(d, v1 + v2, &n1 * &n2, &d1 * &d2)
    }
}

impl<T: Field> Neg for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn neg(self) -> RatFunc<T> {
        RatFunc::neg(self)
    }
}

/// `a / b`; errors when `b = 0`.
pub fn coeff_div(a: &Coeff, b: &Coeff) -> Result<Coeff> {
    a.checked_div(b)
}

fn fmt_rational(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn fmt_laurent(terms: &[(BigRational, Rational64)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (a, e)) in terms.iter().rev().enumerate() {
        let neg = a.is_negative();
        let mag = a.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = ScalarExp::new(*e);
        if e.is_zero() {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&unit.to_string());
        } else {
            out.push_str(&format!("{}*{}", fmt_rational(&mag), unit));
        }
    }
    out
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num = Self::poly_terms(&self.num, self.val, self.d);
        if self.is_laurent() {
            return write!(f, "{}", fmt_laurent(&num));
        }
        let den = Self::poly_terms(&self.den, 0, self.d);
        write!(f, "({})/({})", fmt_laurent(&num), fmt_laurent(&den))
    }
}

/// Convenience constructor for integer coefficients.
pub fn int(a: i64) -> Coeff {
    Coeff::constant(BigRational::from_integer(BigInt::from(a)))
}

/// Parses a rational literal such as `-3`, `1/2`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Parses a small rational exponent such as `-1/2`.
pub fn parse_exponent(s: &str) -> Result<Rational64> {
    let r = parse_rational(s)?;
    let conv = |b: &BigInt| i64::try_from(b.clone()).map_err(|_| Error::Parse(format!("exponent out of range `{s}`")));
    Ok(Rational64::new(conv(r.numer())?, conv(r.denom())?))
}
