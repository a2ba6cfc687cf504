//! Evaluation of the generalized hypergeometric series 0F3(; a, b, c; z),
//! its derivative and contiguous identities, its large-argument asymptotic
//! form, and the Gamma function used by all prefactors.
//!
//! 0F3 is entire, with series coefficients obeying
//! `c_{k+1} = c_k / ((k+1)(k+a)(k+b)(k+c))`, so summation needs no
//! continuation machinery; the work is in the stopping rule and in keeping
//! rounding below the reported truncation bound.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::bigfloat::{BigComplex, BigReal, Rational, MIN_DIGITS};
use crate::error::{Error, Result};

/// Guard digits carried by internal arithmetic so accumulated rounding stays
/// below the stopping-rule threshold of the stated precision.
const GUARD_DIGITS: u32 = 10;

/// Parameter triple (a, b, c) of 0F3. None of them may be zero or a
/// negative integer, which would put a Gamma pole into the coefficients.
#[derive(Clone, Debug)]
pub struct F03Params {
    pub a: BigReal,
    pub b: BigReal,
    pub c: BigReal,
}

impl F03Params {
    pub fn new(a: BigReal, b: BigReal, c: BigReal) -> Result<Self> {
        for v in [&a, &b, &c] {
            validate_not_gamma_pole(v)?;
        }
        Ok(F03Params { a, b, c })
    }

    pub fn from_rationals(a: Rational, b: Rational, c: Rational, digits: u32) -> Result<Self> {
        for r in [a, b, c] {
            if r.is_nonpositive_integer() {
                return Err(Error::InvalidParameter(r.to_string()));
            }
        }
        Ok(F03Params {
            a: a.to_big(digits),
            b: b.to_big(digits),
            c: c.to_big(digits),
        })
    }

    /// (a+1, b+1, c+1), as used by the derivative identity.
    pub fn shifted_up(&self) -> Self {
        let one = BigReal::one(self.a.digits());
        F03Params {
            a: &self.a + &one,
            b: &self.b + &one,
            c: &self.c + &one,
        }
    }

    fn with_digits(&self, digits: u32) -> Self {
        F03Params {
            a: self.a.with_digits(digits),
            b: self.b.with_digits(digits),
            c: self.c.with_digits(digits),
        }
    }
}

fn validate_not_gamma_pole(x: &BigReal) -> Result<()> {
    if x.is_positive() {
        return Ok(());
    }
    let nearest = x.round_to_int();
    let tol = BigReal::pow10(-(x.digits() as i32) + 2, x.digits());
    let scale = x.abs() + BigReal::one(x.digits());
    if (x - &nearest).abs() < &tol * &scale {
        Err(Error::InvalidParameter(format!("{x}")))
    } else {
        Ok(())
    }
}

/// Result of a truncated series evaluation.
///
/// `truncation_bound` estimates the series tail cut off by the stopping
/// rule; arithmetic rounding is kept below it by guard digits.
#[derive(Clone, Debug)]
pub struct SeriesResult<T> {
    pub value: T,
    pub terms_used: usize,
    pub truncation_bound: BigReal,
}

/// Term budget before declaring non-convergence. The turnover index of the
/// 0F3 series scales like |z|^(1/4).
pub fn term_budget(z_mag: f64) -> usize {
    10 * z_mag.abs().powf(0.25).ceil() as usize + 200
}

fn check_precision(precision: u32) -> Result<()> {
    if precision < MIN_DIGITS {
        return Err(Error::InvalidInput(format!(
            "precision {precision} below minimum {MIN_DIGITS}"
        )));
    }
    Ok(())
}

/// 0F3(; a, b, c; z) for real z.
///
/// Stops when three consecutive terms are each below
/// `10^-(precision+5) * |partial sum|`; the largest of the three is reported
/// as the truncation bound.
pub fn f03(params: &F03Params, z: &BigReal, precision: u32) -> Result<SeriesResult<BigReal>> {
    check_precision(precision)?;
    let work = precision + GUARD_DIGITS;
    let p = params.with_digits(work);
    let z = z.with_digits(work);
    let thr = BigReal::pow10(-(precision as i32 + 5), work);
    let budget = term_budget(z.to_f64());

    let mut term = BigReal::one(work);
    let mut sum = term.clone();
    let mut small: Vec<BigReal> = Vec::with_capacity(3);
    for k in 0..budget {
        let kk = BigReal::from_i64(k as i64, work);
        let k1 = BigReal::from_i64(k as i64 + 1, work);
        let denom = &k1 * (&kk + &p.a) * (&kk + &p.b) * (&kk + &p.c);
        term = &term * &z / denom;
        sum = &sum + &term;
        let mag = term.abs();
        if mag <= &thr * &sum.abs() {
            small.push(mag);
            if small.len() == 3 {
                let bound = max_of(&small);
                return Ok(SeriesResult {
                    value: sum.with_digits(precision),
                    terms_used: k + 2,
                    truncation_bound: bound,
                });
            }
        } else {
            small.clear();
        }
    }
    Err(Error::NonConvergence {
        budget,
        z_mag: z.to_f64().abs(),
    })
}

/// 0F3(; a, b, c; z) for complex z. Magnitudes in the stopping rule use the
/// upper bound |re| + |im|.
pub fn f03_complex(
    params: &F03Params,
    z: &BigComplex,
    precision: u32,
) -> Result<SeriesResult<BigComplex>> {
    check_precision(precision)?;
    let work = precision + GUARD_DIGITS;
    let p = params.with_digits(work);
    let z = z.with_digits(work);
    let thr = BigReal::pow10(-(precision as i32 + 5), work);
    let budget = term_budget(z.mag_bound().to_f64());

    let mut term = BigComplex::one(work);
    let mut sum = term.clone();
    let mut small: Vec<BigReal> = Vec::with_capacity(3);
    for k in 0..budget {
        let kk = BigReal::from_i64(k as i64, work);
        let k1 = BigReal::from_i64(k as i64 + 1, work);
        let denom = &k1 * (&kk + &p.a) * (&kk + &p.b) * (&kk + &p.c);
        term = term.mul(&z).div_real(&denom);
        sum = sum.add(&term);
        let mag = term.mag_bound();
        if mag <= &thr * &sum.mag_bound() {
            small.push(mag);
            if small.len() == 3 {
                let bound = max_of(&small);
                return Ok(SeriesResult {
                    value: sum.with_digits(precision),
                    terms_used: k + 2,
                    truncation_bound: bound,
                });
            }
        } else {
            small.clear();
        }
    }
    Err(Error::NonConvergence {
        budget,
        z_mag: z.mag_bound().to_f64(),
    })
}

fn max_of(v: &[BigReal]) -> BigReal {
    let mut m = v[0].clone();
    for x in &v[1..] {
        if *x > m {
            m = x.clone();
        }
    }
    m
}

/// d/dz 0F3(; a, b, c; z) = 0F3(; a+1, b+1, c+1; z) / (a b c).
pub fn f03_derivative(
    params: &F03Params,
    z: &BigReal,
    precision: u32,
) -> Result<SeriesResult<BigReal>> {
    let shifted = params.shifted_up();
    let inner = f03(&shifted, z, precision)?;
    let abc = &params.a * &params.b * &params.c;
    Ok(SeriesResult {
        value: &inner.value / &abc,
        terms_used: inner.terms_used,
        truncation_bound: &inner.truncation_bound / abc.abs(),
    })
}

/// (z d/dz + c - 1) 0F3(; a, b, c; z), summed term by term. Equals
/// (c - 1) 0F3(; a, b, c-1; z); rejected when c = 1.
pub fn f03_contiguous_lower_c(
    params: &F03Params,
    z: &BigReal,
    precision: u32,
) -> Result<SeriesResult<BigReal>> {
    check_precision(precision)?;
    let work = precision + GUARD_DIGITS;
    let p = params.with_digits(work);
    let one = BigReal::one(work);
    let cm1 = &p.c - &one;
    let tol = BigReal::pow10(-(work as i32) + 2, work);
    if cm1.abs() < tol {
        return Err(Error::DegenerateContiguous);
    }
    let z = z.with_digits(work);
    let thr = BigReal::pow10(-(precision as i32 + 5), work);
    let budget = term_budget(z.to_f64());

    let mut term = BigReal::one(work);
    let mut sum = cm1.clone(); // k = 0 contribution: (c - 1) * 1
    let mut small: Vec<BigReal> = Vec::with_capacity(3);
    for k in 0..budget {
        let kk = BigReal::from_i64(k as i64, work);
        let k1 = BigReal::from_i64(k as i64 + 1, work);
        let denom = &k1 * (&kk + &p.a) * (&kk + &p.b) * (&kk + &p.c);
        term = &term * &z / denom;
        let weighted = &term * (&k1 + &cm1);
        sum = &sum + &weighted;
        let mag = weighted.abs();
        if mag <= &thr * &sum.abs() {
            small.push(mag);
            if small.len() == 3 {
                let bound = max_of(&small);
                return Ok(SeriesResult {
                    value: sum.with_digits(precision),
                    terms_used: k + 2,
                    truncation_bound: bound,
                });
            }
        } else {
            small.clear();
        }
    }
    Err(Error::NonConvergence {
        budget,
        z_mag: z.to_f64().abs(),
    })
}

/// Large-argument form of 0F3 on the positive real axis, with the
/// exponentially decaying part omitted:
///
/// `Gamma(a)Gamma(b)Gamma(c) / (2 (2 pi)^(3/2)) * x^g *
///  (e^(4 x^(1/4)) + 2 cos(4 x^(1/4) + 2 pi g))`, `g = -(a+b+c-3/2)/4`.
///
/// The omitted part is relatively of order `e^(-4 x^(1/4))`, so the formula
/// is accepted only when `4 x^(1/4) >= ln(10) * (target_digits + 10)`.
pub fn f03_asymptotic(
    params: &F03Params,
    x: &BigReal,
    precision: u32,
    target_digits: u32,
) -> Result<BigReal> {
    check_precision(precision)?;
    if !x.is_positive() {
        return Err(Error::InvalidInput("asymptotic form needs x > 0".into()));
    }
    let xf = x.to_f64();
    let reached = 4.0 * xf.powf(0.25);
    let required = std::f64::consts::LN_10 * (target_digits as f64 + 10.0);
    if reached < required {
        return Err(Error::AsymptoticRegime {
            reached,
            required,
            target_digits,
        });
    }

    let work = precision + 15;
    let p = params.with_digits(work);
    let x = x.with_digits(work);
    let g = gamma_exponent(&p).with_digits(work);

    let gamma_abc = gamma(&p.a, work)? * gamma(&p.b, work)? * gamma(&p.c, work)?;
    let two_pi = BigReal::from_i64(2, work) * BigReal::pi(work);
    let pref = &gamma_abc
        / (BigReal::from_i64(2, work) * two_pi.powi(3).sqrt());

    let x_quarter = x.sqrt().sqrt();
    let big_x = BigReal::from_i64(4, work) * &x_quarter;
    let phase = &big_x + BigReal::from_i64(2, work) * BigReal::pi(work) * &g;
    let osc = BigReal::from_i64(2, work) * phase.cos();
    let x_pow_g = (&g * x.ln()).exp();

    let value = pref * x_pow_g * (big_x.exp() + osc);
    Ok(value.with_digits(precision))
}

/// Exponent g = -(a + b + c - 3/2)/4 of the asymptotic prefactor.
pub fn gamma_exponent(params: &F03Params) -> BigReal {
    let digits = params.a.digits();
    let three_half = BigReal::from_ratio(3, 2, digits);
    -(&params.a + &params.b + &params.c - three_half) / BigReal::from_i64(4, digits)
}

/// Largest relative defect of the coefficient recurrence
/// `k (k+a-1)(k+b-1)(k+c-1) c_k = c_{k-1}` over `k = 1..=k_max`, with the
/// coefficients built independently from Gamma ratios,
/// `c_k = G(a)G(b)G(c) / (k! G(k+a) G(k+b) G(k+c))`.
///
/// The recurrence route is what the series engine uses; the Gamma route is
/// the definition, so this pins the two against each other.
pub fn pochhammer_recurrence_residual(
    params: &F03Params,
    k_max: usize,
    precision: u32,
) -> Result<BigReal> {
    check_precision(precision)?;
    let work = precision + GUARD_DIGITS;
    let p = params.with_digits(work);
    let g0 = gamma(&p.a, work)? * gamma(&p.b, work)? * gamma(&p.c, work)?;
    let mut factorial = BigReal::one(work);
    let mut worst = BigReal::zero(work);
    let mut prev = BigReal::one(work); // c_0 = 1
    for k in 1..=k_max {
        let kk = BigReal::from_i64(k as i64, work);
        factorial = &factorial * &kk;
        let ck = &g0
            / (&factorial
                * gamma(&(&kk + &p.a), work)?
                * gamma(&(&kk + &p.b), work)?
                * gamma(&(&kk + &p.c), work)?);
        let one = BigReal::one(work);
        let lhs = &kk * (&kk + &p.a - &one) * (&kk + &p.b - &one) * (&kk + &p.c - &one) * &ck;
        let rel = (&lhs - &prev).abs() / prev.abs();
        if rel > worst {
            worst = rel;
        }
        prev = ck;
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Gamma function (Spouge approximation)
// ---------------------------------------------------------------------------

/// Gamma(x) for real x, to `precision` decimal digits.
///
/// Spouge's approximation with a precision-dependent parameter; the
/// alternating coefficient sum cancels by roughly e^a, which is absorbed by
/// widened internal precision. Arguments below 1/2 go through the
/// reflection formula.
pub fn gamma(x: &BigReal, precision: u32) -> Result<BigReal> {
    check_precision(precision)?;
    if !x.is_positive() {
        // poles at 0, -1, -2, ...
        let nearest = x.round_to_int();
        let tol = BigReal::pow10(-(precision as i32) + 2, precision);
        let scale = x.abs() + BigReal::one(precision);
        if (x - &nearest).abs() < &tol * &scale {
            return Err(Error::GammaPole(format!("{x}")));
        }
    }

    let a = spouge_a(precision);
    // alternating-sum cancellation costs about 0.4343 * a digits
    let work = precision + (0.4343 * a as f64).ceil() as u32 + GUARD_DIGITS;
    let half = BigReal::from_ratio(1, 2, work);
    let x = x.with_digits(work);

    if x < half {
        // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        let pi = BigReal::pi(work);
        let sin_pix = (&pi * &x).sin();
        let rest = gamma_spouge_core(&(BigReal::one(work) - &x), a, work);
        return Ok((&pi / (sin_pix * rest)).with_digits(precision));
    }
    Ok(gamma_spouge_core(&x, a, work).with_digits(precision))
}

/// Gamma of an exact rational, memoized per (value, precision).
pub fn gamma_rational(r: Rational, precision: u32) -> Result<BigReal> {
    thread_local! {
        static CACHE: RefCell<HashMap<(i64, i64, u32), BigReal>> = RefCell::new(HashMap::new());
    }
    if let Some(hit) = CACHE.with(|c| c.borrow().get(&(r.num, r.den, precision)).cloned()) {
        return Ok(hit);
    }
    let v = gamma(&r.to_big(precision), precision)?;
    CACHE.with(|c| c.borrow_mut().insert((r.num, r.den, precision), v.clone()));
    Ok(v)
}

/// Spouge parameter for a relative error below 10^-(digits+5):
/// the error bound a^(-1/2) (2 pi)^-(a+1/2) shrinks by one decimal digit per
/// 1/log10(2 pi) increase of a.
fn spouge_a(digits: u32) -> usize {
    (1.2529 * (digits as f64 + 5.0)).ceil() as usize + 2
}

/// Spouge sum for x >= 1/2: Gamma(x) with z = x - 1,
/// Gamma(z+1) = (z+a)^(z+1/2) e^-(z+a) [sqrt(2 pi) + sum_k c_k / (z+k)].
fn gamma_spouge_core(x: &BigReal, a: usize, work: u32) -> BigReal {
    let one = BigReal::one(work);
    let half = BigReal::from_ratio(1, 2, work);
    let z = x - &one;

    let two_pi = BigReal::from_i64(2, work) * BigReal::pi(work);
    let mut sum = two_pi.sqrt();

    let e = BigReal::one(work).exp();
    // running pieces of c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
    let mut exp_part = e.powi(a as u32 - 1);
    let mut factorial = BigReal::one(work);
    for k in 1..a {
        if k >= 2 {
            factorial = &factorial * BigReal::from_i64(k as i64 - 1, work);
            exp_part = &exp_part / &e;
        }
        let base = BigReal::from_i64((a - k) as i64, work);
        let pow_part = base.powi(k as u32) / base.sqrt();
        let ck = &pow_part * &exp_part / &factorial;
        let term = &ck / (&z + BigReal::from_i64(k as i64, work));
        if k % 2 == 1 {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
    }

    let za = &z + BigReal::from_i64(a as i64, work);
    let log_pref = (&z + &half) * za.ln() - &za;
    log_pref.exp() * sum
}
