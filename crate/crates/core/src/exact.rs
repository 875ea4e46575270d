//! Exact rational helpers shared across the crate: parsing/printing of
//! rationals for the CLI formats, and rational multiples of pi for the
//! structural curvature identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

/// Parse a rational from `"p"`, `"p/q"`, or a plain decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() { "0" } else { int };
        let neg = int.starts_with('-');
        let n = BigInt::from_str(int).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let f = BigInt::from_str(frac).expect("digits");
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = n.abs() * &scale + f;
        let mag = if neg { -mag } else { mag };
        return Ok(BigRational::new(mag, scale));
    }
    let n = BigInt::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))?;
    Ok(BigRational::from_integer(n))
}

/// Render as `p/q` (or `p` for integers).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for display of desk-scale rationals.
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// An exact rational multiple of pi. Used wherever an identity is supposed
/// to hold in rational-of-pi arithmetic rather than floating point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PiRational(pub BigRational);

impl PiRational {
    pub fn zero() -> Self {
        PiRational(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        PiRational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(num: i64, den: i64) -> Self {
        PiRational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0) * std::f64::consts::PI
    }
}

impl Add for PiRational {
    type Output = PiRational;
    fn add(self, rhs: Self) -> Self {
        PiRational(self.0 + rhs.0)
    }
}

impl AddAssign for PiRational {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for PiRational {
    type Output = PiRational;
    fn sub(self, rhs: Self) -> Self {
        PiRational(self.0 - rhs.0)
    }
}

impl Neg for PiRational {
    type Output = PiRational;
    fn neg(self) -> Self {
        PiRational(-self.0)
    }
}

/// Scaling by a plain rational keeps the value a multiple of pi.
impl Mul<BigRational> for PiRational {
    type Output = PiRational;
    fn mul(self, rhs: BigRational) -> Self {
        PiRational(self.0 * rhs)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}*pi", rational_string(&self.0))
    }
}
