//! Configurable-precision real and complex scalars.
//!
//! `BigReal` wraps an arbitrary-precision float and carries its working
//! precision in decimal digits. Binary operations round correctly to the
//! larger precision of the two operands; every series and prefactor in this
//! crate is built on top of these two types.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

/// Minimum supported precision in decimal digits.
pub const MIN_DIGITS: u32 = 16;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache allocation"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary mantissa length for a decimal digit count, with a few guard bits.
fn bits_for(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8
}

/// Arbitrary-precision real scalar with a stated decimal precision.
#[derive(Clone, Debug)]
pub struct BigReal {
    x: BigFloat,
    digits: u32,
}

impl BigReal {
    fn wrap(x: BigFloat, digits: u32) -> Self {
        debug_assert!(!x.is_nan(), "NaN produced in BigReal arithmetic");
        BigReal { x, digits }
    }

    pub fn zero(digits: u32) -> Self {
        Self::wrap(BigFloat::new(bits_for(digits)), digits)
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_i64(v, bits_for(digits)), digits)
    }

    pub fn from_f64(v: f64, digits: u32) -> Self {
        assert!(v.is_finite(), "BigReal::from_f64 needs a finite value");
        Self::wrap(BigFloat::from_f64(v, bits_for(digits)), digits)
    }

    /// Exact ratio of two integers, rounded once to `digits`.
    pub fn from_ratio(num: i64, den: i64, digits: u32) -> Self {
        assert!(den != 0, "zero denominator");
        let p = bits_for(digits);
        let n = BigFloat::from_i64(num, p);
        let d = BigFloat::from_i64(den, p);
        Self::wrap(n.div(&d, p, RM), digits)
    }

    /// Parses a decimal string such as `"1.234e-5"`.
    pub fn parse(s: &str, digits: u32) -> Option<Self> {
        let x = with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits_for(digits), RM, cc));
        if x.is_nan() {
            None
        } else {
            Some(Self::wrap(x, digits))
        }
    }

    /// 10^k for any integer k.
    pub fn pow10(k: i32, digits: u32) -> Self {
        let p = bits_for(digits);
        let ten = BigFloat::from_i64(10, p);
        let pos = ten.powi(k.unsigned_abs() as usize, p, RM);
        if k >= 0 {
            Self::wrap(pos, digits)
        } else {
            Self::wrap(BigFloat::from_i64(1, p).div(&pos, p, RM), digits)
        }
    }

    pub fn pi(digits: u32) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(bits_for(digits), RM)), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Same value rounded to a different stated precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let mut x = self.x.clone();
        // widening keeps the value exact; narrowing rounds correctly
        x.set_precision(bits_for(digits), RM)
            .expect("precision change");
        Self::wrap(x, digits)
    }

    fn join(&self, rhs: &Self) -> (usize, u32) {
        let digits = self.digits.max(rhs.digits);
        (bits_for(digits), digits)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative() && !self.x.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.x.is_positive() && !self.x.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.x.abs(), self.digits)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        let p = bits_for(self.digits);
        Self::wrap(self.x.sqrt(p, RM), self.digits)
    }

    pub fn exp(&self) -> Self {
        let p = bits_for(self.digits);
        Self::wrap(with_consts(|cc| self.x.exp(p, RM, cc)), self.digits)
    }

    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of non-positive value");
        let p = bits_for(self.digits);
        Self::wrap(with_consts(|cc| self.x.ln(p, RM, cc)), self.digits)
    }

    pub fn sin(&self) -> Self {
        let p = bits_for(self.digits);
        Self::wrap(with_consts(|cc| self.x.sin(p, RM, cc)), self.digits)
    }

    pub fn cos(&self) -> Self {
        let p = bits_for(self.digits);
        Self::wrap(with_consts(|cc| self.x.cos(p, RM, cc)), self.digits)
    }

    /// Integer power; `0^0 = 1`.
    pub fn powi(&self, n: u32) -> Self {
        let p = bits_for(self.digits);
        if n == 0 {
            return Self::one(self.digits);
        }
        Self::wrap(self.x.powi(n as usize, p, RM), self.digits)
    }

    /// Real power of a positive base, `exp(e ln(self))`.
    pub fn pow(&self, e: &Self) -> Self {
        assert!(self.is_positive(), "pow needs a positive base");
        let (p, digits) = self.join(e);
        Self::wrap(with_consts(|cc| self.x.pow(&e.x, p, RM, cc)), digits)
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.x.floor(), self.digits)
    }

    /// Nearest integer (half away from zero).
    pub fn round_to_int(&self) -> Self {
        let half = Self::from_ratio(1, 2, self.digits);
        let x = if self.is_negative() {
            (self - &half).x.ceil()
        } else {
            (self + &half).x.floor()
        };
        Self::wrap(x, self.digits)
    }

    pub fn to_f64(&self) -> f64 {
        let Some((words, n, sign, e, _)) = self.x.as_raw_parts() else {
            return f64::NAN;
        };
        if n == 0 || words.iter().all(|w| *w == 0) {
            return 0.0;
        }
        // value = 0.mantissa * 2^e, mantissa words little-endian with the
        // MSB in the last word; two words are plenty for an f64
        let mut frac = 0.0f64;
        for w in &words[words.len().saturating_sub(2)..] {
            frac = frac / 18_446_744_073_709_551_616.0 + (*w as f64) / 18_446_744_073_709_551_616.0;
        }
        let v = frac * 2f64.powi(e);
        match sign {
            Sign::Neg => -v,
            Sign::Pos => v,
        }
    }

    /// Scientific-notation string with `sig` significant digits.
    pub fn to_sci_string(&self, sig: u32) -> String {
        let sig = sig.max(1) as usize;
        if self.is_zero() {
            let zeros = "0".repeat(sig.saturating_sub(1));
            return if zeros.is_empty() {
                "0e0".to_string()
            } else {
                format!("0.{zeros}e0")
            };
        }
        let (sign, digits10, exp10) = self.decimal_parts(sig);
        let mut s = String::new();
        if sign == Sign::Neg {
            s.push('-');
        }
        s.push(char::from(b'0' + digits10[0]));
        if digits10.len() > 1 {
            s.push('.');
            for d in &digits10[1..] {
                s.push(char::from(b'0' + *d));
            }
        }
        // leading digit d.ddd => exponent is one less than the digit-count exponent
        s.push('e');
        s.push_str(&(exp10 - 1).to_string());
        s
    }

    /// Decimal mantissa digits (exactly `sig` of them, rounded) and exponent
    /// such that value = 0.d1 d2 ... * 10^exp10.
    fn decimal_parts(&self, sig: usize) -> (Sign, Vec<u8>, i64) {
        let (sign, raw, exp) = with_consts(|cc| self.x.convert_to_radix(Radix::Dec, RM, cc))
            .expect("decimal conversion of finite value");
        // strip leading zeros that convert_to_radix may emit
        let lead = raw.iter().position(|d| *d != 0).unwrap_or(raw.len());
        let mut ds: Vec<u8> = raw[lead..].to_vec();
        let mut exp10 = exp as i64 - lead as i64;
        if ds.is_empty() {
            return (sign, vec![0; sig], 0);
        }
        // round to `sig` digits
        if ds.len() > sig {
            let carry = ds[sig] >= 5;
            ds.truncate(sig);
            if carry {
                let mut i = sig;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        ds.truncate(sig);
                        exp10 += 1;
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        } else {
            ds.resize(sig, 0);
        }
        (sign, ds, exp10)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.x.cmp(&other.x) == Some(0)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.x.cmp(&other.x).map(|s| s.cmp(&0))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(self.digits))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let (p, digits) = self.join(rhs);
                BigReal::wrap(self.x.$raw(&rhs.x, p, RM), digits)
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(BigFloat::neg(&self.x), self.digits)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

/// Exact small rational, used for hypergeometric parameters and series
/// weights so that precision escalation can rebuild them losslessly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            Rational { num: -num, den: -den }
        } else {
            Rational { num, den }
        }
    }

    pub fn from_int(v: i64) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn to_big(&self, digits: u32) -> BigReal {
        BigReal::from_ratio(self.num, self.den, digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn add_int(&self, v: i64) -> Self {
        Rational::new(self.num + v * self.den, self.den)
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        self.num <= 0 && self.num % self.den == 0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Arbitrary-precision complex scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigReal) -> Self {
        let digits = re.digits();
        BigComplex { re, im: BigReal::zero(digits) }
    }

    pub fn zero(digits: u32) -> Self {
        BigComplex { re: BigReal::zero(digits), im: BigReal::zero(digits) }
    }

    pub fn one(digits: u32) -> Self {
        BigComplex { re: BigReal::one(digits), im: BigReal::zero(digits) }
    }

    pub fn digits(&self) -> u32 {
        self.re.digits().max(self.im.digits())
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        BigComplex { re: self.re.with_digits(digits), im: self.im.with_digits(digits) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Cheap magnitude upper bound, `|re| + |im|`.
    pub fn mag_bound(&self) -> BigReal {
        self.re.abs() + self.im.abs()
    }

    /// Euclidean modulus.
    pub fn abs(&self) -> BigReal {
        (&self.re * &self.re + &self.im * &self.im).sqrt()
    }

    pub fn scale(&self, s: &BigReal) -> Self {
        BigComplex { re: &self.re * s, im: &self.im * s }
    }

    /// Division by a real scalar.
    pub fn div_real(&self, s: &BigReal) -> Self {
        BigComplex { re: &self.re / s, im: &self.im / s }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BigComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        BigComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        BigComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: -&self.re, im: -&self.im }
    }

    /// Integer power by repeated squaring; `z^0 = 1`.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigComplex::one(self.digits());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trips_through_f64() {
        let x = BigReal::from_ratio(1, 3, 40);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-15);
        assert!((-&x).is_negative());
    }

    #[test]
    fn mixed_precision_ops_use_wider_operand() {
        let a = BigReal::from_i64(1, 20);
        let b = BigReal::from_ratio(1, 7, 60);
        let c = &a + &b;
        assert_eq!(c.digits(), 60);
        let back = &c - &b;
        assert_eq!(back.to_f64(), 1.0);
    }

    #[test]
    fn pow10_and_parse_agree() {
        let a = BigReal::pow10(-45, 30);
        let b = BigReal::parse("1e-45", 30).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sci_string_has_requested_digits() {
        let x = BigReal::from_ratio(2, 3, 50);
        let s = x.to_sci_string(20);
        assert_eq!(s, "6.6666666666666666667e-1");
        let y = BigReal::from_i64(-1500, 30);
        assert_eq!(y.to_sci_string(3), "-1.50e3");
        assert_eq!(BigReal::zero(20).to_sci_string(4), "0.000e0");
    }

    #[test]
    fn sci_string_survives_carry_propagation() {
        let x = BigReal::parse("9.9999999", 30).unwrap();
        assert_eq!(x.to_sci_string(4), "1.000e1");
    }

    #[test]
    fn complex_powi_matches_repeated_mul() {
        let z = BigComplex::new(BigReal::from_ratio(-1, 2, 40), BigReal::from_ratio(3, 4, 40));
        let mut w = BigComplex::one(40);
        for _ in 0..5 {
            w = w.mul(&z);
        }
        let p = z.powi(5);
        assert!((p.sub(&w)).mag_bound().to_f64() < 1e-35);
    }

    #[test]
    fn to_f64_handles_wide_values() {
        let x = BigReal::parse("1.2345678901234567e100", 60).unwrap();
        assert!((x.to_f64() / 1.2345678901234567e100 - 1.0).abs() < 1e-14);
        let y = BigReal::parse("-4.2e-200", 60).unwrap();
        assert!((y.to_f64() / -4.2e-200 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rational_nonpositive_integer_detection() {
        assert!(Rational::new(-6, 3).is_nonpositive_integer());
        assert!(Rational::new(0, 5).is_nonpositive_integer());
        assert!(!Rational::new(-1, 6).is_nonpositive_integer());
        assert!(!Rational::new(7, 7).is_nonpositive_integer());
    }
}
