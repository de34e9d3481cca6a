//! The scalar kernel: one set of numeric operations runnable in three modes.
//!
//! Every algorithm in this crate is generic over [`Real`], which is
//! implemented for
//!
//! * `f64` — fast scans,
//! * [`Ext`] — arbitrary-precision binary floats (mantissa width set per
//!   thread, see [`with_ext_bits`]), used for oracles and overflow regimes,
//! * [`Rat`] (`num_rational::BigRational`) — exact arithmetic for identity
//!   testing.
//!
//! Rational mode is exact for `+ - * /`. Transcendentals (`exp`, `ln`,
//! `sqrt`, roots) have no exact rational value; in rational mode they are
//! evaluated at [`RAT_TRANSCENDENTAL_BITS`] bits and the rounded result is
//! converted back to an exact rational. Identity-testing code paths never
//! call them, so exactness claims are unaffected.

use std::cell::{Cell, RefCell};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Precision used when rational mode has to evaluate a transcendental.
pub const RAT_TRANSCENDENTAL_BITS: u32 = 256;

/// Default mantissa width for extended mode.
pub const DEFAULT_EXT_BITS: u32 = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static EXT_BITS: Cell<u32> = const { Cell::new(DEFAULT_EXT_BITS) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Current extended-mode mantissa width on this thread.
pub fn ext_bits() -> u32 {
    EXT_BITS.with(|b| b.get())
}

/// Runs `f` with extended-mode precision set to `bits` (≥ 64), restoring the
/// previous width afterwards. Worker threads must set their own width.
pub fn with_ext_bits<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    assert!(bits >= 64, "extended mode requires >= 64 bits");
    EXT_BITS.with(|b| {
        let old = b.replace(bits);
        let out = f();
        b.set(old);
        out
    })
}

/// Scalar evaluation mode, selecting which [`Real`] instantiation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarMode {
    Float64,
    Extended { bits: u32 },
    Rational,
}

impl ScalarMode {
    pub fn extended(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::invalid_input("extended mode requires bits >= 64"));
        }
        Ok(ScalarMode::Extended { bits })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarMode::Rational)
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarMode::Float64 => write!(f, "float64"),
            ScalarMode::Extended { bits } => write!(f, "extended:{bits}"),
            ScalarMode::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float64" | "f64" => Ok(ScalarMode::Float64),
            "rational" | "rat" => Ok(ScalarMode::Rational),
            "extended" => Ok(ScalarMode::Extended { bits: DEFAULT_EXT_BITS }),
            other => {
                if let Some(bits) = other
                    .strip_prefix("extended:")
                    .or_else(|| other.strip_prefix("ext:"))
                {
                    let bits: u32 = bits
                        .parse()
                        .map_err(|_| Error::invalid_input(format!("bad precision in mode '{other}'")))?;
                    ScalarMode::extended(bits)
                } else {
                    Err(Error::invalid_input(format!("unknown scalar mode '{other}'")))
                }
            }
        }
    }
}

/// The operations every numeric algorithm in this crate needs.
///
/// Arithmetic is by value; call sites clone operands they want to reuse
/// (free for `f64`, one allocation for the big types).
pub trait Real:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn from_u64(x: u64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Nearest f64 (for reporting; may overflow to ±inf).
    fn approx_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_finite(&self) -> bool;
    fn is_zero(&self) -> bool;
    /// Strictly negative.
    fn is_neg(&self) -> bool;
    /// Strictly positive.
    fn is_pos(&self) -> bool {
        !self.is_neg() && !self.is_zero() && self.is_finite()
    }
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    /// `self^(1/m)` for positive `self`.
    fn nth_root(&self, m: u32) -> Self;
    fn powi(&self, n: i32) -> Self;
    /// Unit roundoff of the mode (zero in rational mode).
    fn unit_eps() -> f64;
    /// The mode this instantiation realizes (extended width read per thread).
    fn mode() -> ScalarMode;
}

/// `max` under a total order where incomparable (NaN) loses.
pub fn rmax<T: Real>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// `min` under a total order where incomparable (NaN) loses.
pub fn rmin<T: Real>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn from_u64(x: u64) -> Self {
        x as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn approx_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_neg(&self) -> bool {
        *self < 0.0
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn nth_root(&self, m: u32) -> Self {
        self.powf(1.0 / m as f64)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn unit_eps() -> f64 {
        f64::EPSILON
    }
    fn mode() -> ScalarMode {
        ScalarMode::Float64
    }
}

/// Arbitrary-precision binary float. The mantissa width of every operation
/// is the thread-local value set by [`with_ext_bits`].
#[derive(Clone, Debug)]
pub struct Ext(BigFloat);

impl Ext {
    fn p() -> usize {
        ext_bits() as usize
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn from_bigfloat(x: BigFloat) -> Self {
        Ext(x)
    }

    /// Exact conversion where possible; NaN if the rational is malformed.
    pub fn from_rat(r: &Rat) -> Self {
        let p = Self::p();
        let num = bigfloat_from_bigint(r.numer(), p);
        let den = bigfloat_from_bigint(r.denom(), p);
        Ext(num.div(&den, p, RM))
    }

    /// Exact conversion of the (finite, dyadic) float value to a rational.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.0.is_nan() || self.0.is_inf() {
            return None;
        }
        if self.0.is_zero() {
            return Some(<Rat as Zero>::zero());
        }
        let (words, n_bits, sign, e, _) = self.0.as_raw_parts()?;
        let mut bytes = Vec::with_capacity(words.len() * 8);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let mant = BigInt::from_bytes_le(IntSign::Plus, &bytes);
        // value = mant / 2^n_bits * 2^e
        let shift = e as i64 - n_bits as i64;
        let two = BigInt::from(2);
        let val = if shift >= 0 {
            Rat::from_integer(mant * two.pow(shift as u32))
        } else {
            Rat::new(mant, two.pow((-shift) as u32))
        };
        Some(if sign == Sign::Neg { -val } else { val })
    }
}

fn bigfloat_from_bigint(x: &BigInt, p: usize) -> BigFloat {
    let (sign, mag) = x.clone().into_parts();
    if mag.bits() == 0 {
        return BigFloat::from_f64(0.0, p);
    }
    let bits = mag.bits() as usize;
    // from_words wants a normalized mantissa: left-align the integer so the
    // top bit of the top word is set, then value = (m / 2^(64·len)) · 2^bits.
    let len = bits.div_ceil(64);
    let shifted = mag << (64 * len - bits);
    let words = shifted.to_u64_digits();
    let mut out = BigFloat::from_words(
        &words,
        if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos },
        bits as astro_float::Exponent,
    );
    if out.mantissa_max_bit_len().unwrap_or(0) != p {
        out.set_precision(p, RM).ok();
    }
    out
}

impl Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.0.cmp(&other.0), Some(0))
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! ext_binop {
    ($trait:ident, $meth:ident) => {
        impl $trait for Ext {
            type Output = Ext;
            fn $meth(self, rhs: Ext) -> Ext {
                Ext(self.0.$meth(&rhs.0, Ext::p(), RM))
            }
        }
    };
}

ext_binop!(Add, add);
ext_binop!(Sub, sub);
ext_binop!(Mul, mul);
ext_binop!(Div, div);

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(self.0.neg())
    }
}

impl Real for Ext {
    fn zero() -> Self {
        Ext(BigFloat::from_f64(0.0, Self::p()))
    }
    fn one() -> Self {
        Ext(BigFloat::from_f64(1.0, Self::p()))
    }
    fn from_f64(x: f64) -> Self {
        Ext(BigFloat::from_f64(x, Self::p()))
    }
    fn from_i64(x: i64) -> Self {
        Ext(BigFloat::from_i64(x, Self::p()))
    }
    fn from_u64(x: u64) -> Self {
        Ext(BigFloat::from_u64(x, Self::p()))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    fn approx_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = words[words.len() - 1] as f64;
        let next = if words.len() > 1 {
            words[words.len() - 2] as f64
        } else {
            0.0
        };
        let frac = top / 2f64.powi(64) + next / 2f64.powi(128);
        let mag = frac * 2f64.powi(e);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }
    fn abs(&self) -> Self {
        Ext(self.0.abs())
    }
    fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_neg(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }
    fn sqrt(&self) -> Self {
        Ext(self.0.sqrt(Self::p(), RM))
    }
    fn exp(&self) -> Self {
        CONSTS.with(|cc| Ext(self.0.exp(Self::p(), RM, &mut cc.borrow_mut())))
    }
    fn ln(&self) -> Self {
        CONSTS.with(|cc| Ext(self.0.ln(Self::p(), RM, &mut cc.borrow_mut())))
    }
    fn nth_root(&self, m: u32) -> Self {
        // exp(ln(x)/m) with guard bits so the 1/m rounding stays below eps.
        let p = Self::p() + 32;
        CONSTS.with(|cc| {
            let mut cc = cc.borrow_mut();
            let l = self.0.ln(p, RM, &mut cc);
            let l = l.div(&BigFloat::from_u64(m as u64, p), p, RM);
            let mut r = l.exp(p, RM, &mut cc);
            r.set_precision(Self::p(), RM).ok();
            Ext(r)
        })
    }
    fn powi(&self, n: i32) -> Self {
        if n >= 0 {
            Ext(self.0.powi(n as usize, Self::p(), RM))
        } else {
            let pos = self.0.powi((-n) as usize, Self::p(), RM);
            Ext(BigFloat::from_f64(1.0, Self::p()).div(&pos, Self::p(), RM))
        }
    }
    fn unit_eps() -> f64 {
        2f64.powi(1 - ext_bits() as i32).max(f64::MIN_POSITIVE)
    }
    fn mode() -> ScalarMode {
        ScalarMode::Extended { bits: ext_bits() }
    }
}

impl Real for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as num_traits::One>::one()
    }
    fn from_f64(x: f64) -> Self {
        Rat::from_float(x).expect("rational mode requires finite inputs")
    }
    fn from_i64(x: i64) -> Self {
        Rat::from_integer(BigInt::from(x))
    }
    fn from_u64(x: u64) -> Self {
        Rat::from_integer(BigInt::from(x))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }
    fn approx_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sqrt(&self) -> Self {
        rat_via_ext(self, |e| Real::sqrt(&e))
    }
    fn exp(&self) -> Self {
        rat_via_ext(self, |e| Real::exp(&e))
    }
    fn ln(&self) -> Self {
        rat_via_ext(self, |e| Real::ln(&e))
    }
    fn nth_root(&self, m: u32) -> Self {
        rat_via_ext(self, |e| e.nth_root(m))
    }
    fn powi(&self, n: i32) -> Self {
        let p = num_traits::Pow::pow(self, n.unsigned_abs() as u64);
        if n < 0 {
            p.recip()
        } else {
            p
        }
    }
    fn unit_eps() -> f64 {
        0.0
    }
    fn mode() -> ScalarMode {
        ScalarMode::Rational
    }
}

/// Rounded transcendental for rational mode: evaluate at
/// [`RAT_TRANSCENDENTAL_BITS`] and convert the dyadic result back exactly.
fn rat_via_ext(x: &Rat, f: impl FnOnce(Ext) -> Ext) -> Rat {
    with_ext_bits(RAT_TRANSCENDENTAL_BITS, || {
        f(Ext::from_rat(x))
            .to_rat()
            .expect("transcendental produced a non-finite value in rational mode")
    })
}
