//! Exact arithmetic in the ring ℚ[s] with `s = (2π)^{-1/2}`.
//!
//! Elements are sparse maps from the exponent of `s` to an arbitrary
//! precision rational. Since `s` is transcendental, the canonical form
//! (no explicit zero coefficients) represents each value uniquely, so `==`
//! on the maps is equality of real numbers.
//!
//! Float evaluation is interval-checked: `eval_enclosure(p)` returns exact
//! rational bounds around the true value whose relative width is at most
//! `2^{1-p}`, built from a scaled-integer Machin enclosure of π and integer
//! square roots. `to_f64` is the midpoint of a 64-bit enclosure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// An exact element of ℚ[s], `s = (2π)^{-1/2}`: the value `Σ_j q_j s^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiElement {
    terms: BTreeMap<u32, BigRational>,
}

impl PiElement {
    /// The zero element (empty map).
    pub fn zero() -> Self {
        PiElement { terms: BTreeMap::new() }
    }

    /// The multiplicative unit.
    pub fn one() -> Self {
        PiElement::from_integer(1)
    }

    /// Constant `n` as a ring element.
    pub fn from_integer(n: i64) -> Self {
        PiElement::term(0, BigRational::from_integer(n.into()))
    }

    /// Constant `num/den` as a ring element.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        PiElement::term(0, BigRational::new(num.into(), den.into()))
    }

    /// The single term `q · s^j`.
    pub fn term(j: u32, q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(j, q);
        }
        PiElement { terms }
    }

    /// `s^j`.
    pub fn s_power(j: u32) -> Self {
        PiElement::term(j, BigRational::one())
    }

    /// True when the element is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `s^j` (zero if absent).
    pub fn coeff(&self, j: u32) -> BigRational {
        self.terms.get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Iterate `(exponent, coefficient)` pairs, ascending in the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().map(|(j, q)| (*j, q))
    }

    /// Highest stored exponent of `s`, `None` for zero.
    pub fn max_exponent(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return PiElement::zero();
        }
        PiElement {
            terms: self.terms.iter().map(|(j, c)| (*j, c * q)).collect(),
        }
    }

    fn insert_add(terms: &mut BTreeMap<u32, BigRational>, j: u32, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = terms.entry(j).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            terms.remove(&j);
        }
    }

    /// Exact rational enclosure `[lo, hi]` of the value with relative width
    /// at most `2^{1-p}` (absolute `2^{-p}` for the zero element).
    pub fn eval_enclosure(&self, p: u32) -> (BigRational, BigRational) {
        if self.terms.is_empty() {
            return (BigRational::zero(), BigRational::zero());
        }
        let max_j = *self.terms.keys().next_back().unwrap();
        let mut bits = p + 2 * max_j + 32;
        for _ in 0..10 {
            let (s_lo, s_hi) = s_enclosure(bits);
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            // Interval powers of s, computed incrementally.
            let mut pow_lo = BigRational::one();
            let mut pow_hi = BigRational::one();
            let mut cur = 0u32;
            for (&j, q) in &self.terms {
                while cur < j {
                    pow_lo *= &s_lo;
                    pow_hi *= &s_hi;
                    cur += 1;
                }
                if q.is_positive() {
                    lo += q * &pow_lo;
                    hi += q * &pow_hi;
                } else {
                    lo += q * &pow_hi;
                    hi += q * &pow_lo;
                }
            }
            let width = &hi - &lo;
            let mid_abs = (&hi + &lo).abs() / BigRational::from_integer(2.into());
            // width <= 2^{1-p} * |mid|
            let scale = BigRational::new(BigInt::from(2), BigInt::one() << (p as usize));
            if !mid_abs.is_zero() && width <= mid_abs * scale {
                return (lo, hi);
            }
            bits *= 2;
        }
        unreachable!("enclosure failed to tighten; nonzero elements cannot cancel to zero");
    }

    /// Float value: midpoint of a 64-bit-relative-error enclosure.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.eval_enclosure(64);
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        rational_to_f64(&mid)
    }

    /// LaTeX rendering in powers of π. Even powers collapse exactly:
    /// `q·s^{2m} = (q/2^m)·π^{-m}`; odd powers keep one factor of
    /// `(2π)^{-1/2}`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&j, q)) in self.terms.iter().enumerate() {
            let m = j / 2;
            let reduced = q / BigRational::from_integer(BigInt::one() << (m as usize));
            let neg = reduced.is_negative();
            let mag = reduced.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut pi_part = String::new();
            if m > 0 {
                pi_part.push_str(&if m == 1 { "\\pi".into() } else { format!("\\pi^{{{m}}}") });
            }
            if j % 2 == 1 {
                pi_part.push_str("\\sqrt{2\\pi}");
            }
            let num = mag.numer().to_string();
            let den = mag.denom();
            if pi_part.is_empty() {
                if den.is_one() {
                    out.push_str(&num);
                } else {
                    out.push_str(&format!("\\frac{{{num}}}{{{den}}}"));
                }
            } else if den.is_one() && mag.numer().is_one() {
                out.push_str(&format!("\\frac{{1}}{{{pi_part}}}"));
            } else if den.is_one() {
                out.push_str(&format!("\\frac{{{num}}}{{{pi_part}}}"));
            } else {
                out.push_str(&format!("\\frac{{{num}}}{{{den}{pi_part}}}"));
            }
        }
        out
    }
}

impl fmt::Display for PiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&j, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if j > 0 {
                if !mag.is_one() {
                    write!(f, "·")?;
                }
                if j == 1 {
                    write!(f, "s")?;
                } else {
                    write!(f, "s^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &PiElement {
    type Output = PiElement;
    fn add(self, rhs: &PiElement) -> PiElement {
        let mut terms = self.terms.clone();
        for (j, q) in &rhs.terms {
            PiElement::insert_add(&mut terms, *j, q);
        }
        PiElement { terms }
    }
}

impl Sub for &PiElement {
    type Output = PiElement;
    fn sub(self, rhs: &PiElement) -> PiElement {
        let mut terms = self.terms.clone();
        for (j, q) in &rhs.terms {
            PiElement::insert_add(&mut terms, *j, &(-q));
        }
        PiElement { terms }
    }
}

impl Neg for &PiElement {
    type Output = PiElement;
    fn neg(self) -> PiElement {
        PiElement {
            terms: self.terms.iter().map(|(j, q)| (*j, -q)).collect(),
        }
    }
}

impl Mul for &PiElement {
    type Output = PiElement;
    fn mul(self, rhs: &PiElement) -> PiElement {
        let mut terms = BTreeMap::new();
        for (j1, q1) in &self.terms {
            for (j2, q2) in &rhs.terms {
                PiElement::insert_add(&mut terms, j1 + j2, &(q1 * q2));
            }
        }
        PiElement { terms }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for PiElement {
            type Output = PiElement;
            fn $method(self, rhs: PiElement) -> PiElement {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for PiElement {
    type Output = PiElement;
    fn neg(self) -> PiElement {
        -&self
    }
}

// --- JSON form: {"terms": [[j, "num/den"], ...]} ---

impl Serialize for PiElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            terms: Vec<(u32, String)>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(j, q)| (*j, format!("{}/{}", q.numer(), q.denom())))
            .collect();
        Wire { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            terms: Vec<(u32, String)>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for (j, s) in wire.terms {
            let (num, den) = s
                .split_once('/')
                .ok_or_else(|| D::Error::custom(format!("rational without '/': {s}")))?;
            let num: BigInt = num.parse().map_err(D::Error::custom)?;
            let den: BigInt = den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            PiElement::insert_add(&mut terms, j, &BigRational::new(num, den));
        }
        Ok(PiElement { terms })
    }
}

/// Round a rational to the nearest f64.
pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

// --- enclosures of π and s ---

/// `atan(1/m)` scaled by `2^bits`: returns `(sum, term_count)` where
/// `|2^bits·atan(1/m) - sum| ≤ term_count + 1`.
fn atan_inv_scaled(m: u64, bits: u32) -> (BigInt, u64) {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut denom_pow = BigInt::from(m); // m^{2k+1}
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = (BigInt::one() << (bits as usize)) / (&denom_pow * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        denom_pow *= &m2;
        k += 1;
    }
    (sum, k)
}

/// Enclosure of π as `[lo, hi] / 2^bits` (Machin's formula).
fn pi_scaled(bits: u32) -> (BigInt, BigInt) {
    let (s5, k5) = atan_inv_scaled(5, bits);
    let (s239, k239) = atan_inv_scaled(239, bits);
    let p = BigInt::from(16) * s5 - BigInt::from(4) * s239;
    let err = BigInt::from(16 * (k5 + 2) + 4 * (k239 + 2));
    (&p - &err, p + err)
}

/// Enclosure `[lo, hi]` of `sqrt(x)` for positive rational `x`, with
/// `hi - lo = 2^{-bits}`.
fn sqrt_enclosure(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    debug_assert!(x.is_positive());
    let shifted = x * BigRational::from_integer(BigInt::one() << (2 * bits as usize));
    let n = shifted.numer() / shifted.denom(); // floor
    let r = n.sqrt();
    let denom = BigInt::one() << (bits as usize);
    (
        BigRational::new(r.clone(), denom.clone()),
        BigRational::new(r + 1, denom),
    )
}

/// Cached enclosure of `s = (2π)^{-1/2}` at a given bit precision.
fn s_enclosure(bits: u32) -> (BigRational, BigRational) {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, (BigRational, BigRational)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let (pi_lo, pi_hi) = pi_scaled(bits + 8);
    let denom = BigInt::one() << ((bits + 8) as usize);
    let two_pi_lo = BigRational::new(pi_lo * 2, denom.clone());
    let two_pi_hi = BigRational::new(pi_hi * 2, denom);
    let (root_lo, _) = sqrt_enclosure(&two_pi_lo, bits + 8);
    let (_, root_hi) = sqrt_enclosure(&two_pi_hi, bits + 8);
    let out = (root_hi.recip(), root_lo.recip());
    cache.lock().unwrap().insert(bits, out.clone());
    out
}
