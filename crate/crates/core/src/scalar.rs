//! Exact field elements over the rationals and over prime fields of odd
//! characteristic.
//!
//! Every [`Scalar`] carries the field it lives in. Mixing fields is an error,
//! never a coercion. Canonical text forms are `a/b` (with `b > 0`, reduced,
//! `/1` omitted) over ℚ and the decimal residue `0..p-1` over 𝔽_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest modulus accepted for prime fields. Keeps residue products inside
/// a `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported word size")]
    PrimeTooLarge(u64),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("cannot parse {0:?} as a scalar")]
    Parse(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDesc, FieldDesc),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation {0:?} needs a second operand")]
    MissingOperand(ArithOp),
}

/// The base field: ℚ or 𝔽_p with `p` an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    Prime(u64),
}

impl FieldDesc {
    /// Validated prime field constructor.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p == 2 {
            return Err(ScalarError::CharacteristicTwo);
        }
        if p > MAX_PRIME {
            return Err(ScalarError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldDesc::Prime(p))
    }

    /// 0 for ℚ, `p` for 𝔽_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Rationals => 0,
            FieldDesc::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// The element ½, which exists in every supported field.
    pub fn half(&self) -> Scalar {
        self.one()
            .checked_div(&self.from_i64(2))
            .expect("2 is invertible in characteristic != 2")
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldDesc::Rationals => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(v)))),
            FieldDesc::Prime(p) => Scalar(Repr::Fp {
                v: v.rem_euclid(*p as i64) as u64,
                p: *p,
            }),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldDesc::Rationals => Scalar(Repr::Q(BigRational::from_integer(v.clone()))),
            FieldDesc::Prime(p) => Scalar(Repr::Fp {
                v: residue(v, *p),
                p: *p,
            }),
        }
    }

    /// Builds a rational `num/den` in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator(format!("{num}/{den}")));
        }
        match self {
            FieldDesc::Rationals => Ok(Scalar(Repr::Q(BigRational::new(num.clone(), den.clone())))),
            FieldDesc::Prime(_) => {
                let n = self.from_bigint(num);
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(ScalarError::ZeroDenominator(format!("{num}/{den}")));
                }
                n.checked_div(&d)
            }
        }
    }

    /// Every element of a prime field, in residue order. `None` over ℚ.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldDesc::Rationals => None,
            FieldDesc::Prime(p) => Some((0..*p).map(|v| Scalar(Repr::Fp { v, p: *p })).collect()),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn residue(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

/// An exact element of a [`FieldDesc`], always in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, ScalarError> {
    let rhs = || b.ok_or(ScalarError::MissingOperand(op));
    match op {
        ArithOp::Add => a.checked_add(rhs()?),
        ArithOp::Sub => a.checked_sub(rhs()?),
        ArithOp::Mul => a.checked_mul(rhs()?),
        ArithOp::Div => a.checked_div(rhs()?),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

/// Parses `±int` or `±int/int` into `field`.
pub fn parse_scalar(text: &str, field: FieldDesc) -> Result<Scalar, ScalarError> {
    let t = text.trim();
    let parse_int = |s: &str| -> Result<BigInt, ScalarError> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ScalarError::Parse(text.to_string()));
        }
        s.parse::<BigInt>().map_err(|_| ScalarError::Parse(text.to_string()))
    };
    match t.split_once('/') {
        None => Ok(field.from_bigint(&parse_int(t)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(ScalarError::ZeroDenominator(text.to_string()));
            }
            field.from_fraction(&n, &d)
        }
    }
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        match &self.0 {
            Repr::Q(_) => FieldDesc::Rationals,
            Repr::Fp { p, .. } => FieldDesc::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { v, .. } => *v == 1,
        }
    }

    /// The residue, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Fp { v, .. } => Some(*v),
            Repr::Q(_) => None,
        }
    }

    /// The rational value, for ℚ scalars.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    pub(crate) fn from_residue(v: u64, p: u64) -> Scalar {
        debug_assert!(v < p);
        Scalar(Repr::Fp { v, p })
    }

    pub(crate) fn from_rational(q: BigRational) -> Scalar {
        Scalar(Repr::Q(q))
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a + b)),
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, .. }) => Scalar(Repr::Fp {
                v: (a + b) % p,
                p: *p,
            }),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a * b)),
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, .. }) => Scalar(Repr::Fp {
                v: a * b % p,
                p: *p,
            }),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(q.recip())),
            Repr::Fp { v, p } => Scalar(Repr::Fp {
                v: inv_mod(*v, *p),
                p: *p,
            }),
        })
    }

    /// `self` raised to a non-negative power.
    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn inv_mod(v: u64, p: u64) -> u64 {
    // Extended Euclid on signed integers.
    let (mut r0, mut r1) = (p as i128, v as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self, self.field())
    }
}

// The operator impls panic on a field mismatch. Library code only combines
// scalars of one algebra, whose field is checked once at construction.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(-q)),
            Repr::Fp { v, p } => Scalar(Repr::Fp {
                v: (p - v) % p,
                p: *p,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// Sign-aware absolute value for ℚ; identity on 𝔽_p.
    pub fn abs(&self) -> Scalar {
        match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(q.abs())),
            Repr::Fp { .. } => self.clone(),
        }
    }
}
