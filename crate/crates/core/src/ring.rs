//! Coefficient rings.
//!
//! Three concrete unital rings are provided: the integers (arbitrary
//! precision), the residues `Z/n`, and 2×2 matrices over `Z/n`. The last one
//! is noncommutative, which matters because commutators of generators pick up
//! the ordered product `ab` of their coefficients.
//!
//! Every [`RingValue`] carries its [`RingSpec`]; mixing values from different
//! rings is an error rather than a coercion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("unknown ring spec `{0}` (expected `Z`, `Z/n` or `M2(Z/n)`)")]
    UnknownSpec(String),
    #[error("malformed literal `{literal}` for ring {spec}")]
    BadLiteral { spec: RingSpec, literal: String },
    #[error("operands belong to different rings: {0} and {1}")]
    Mismatch(RingSpec, RingSpec),
}

/// Which ring a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    IntegersMod(u64),
    Matrices2x2Mod(u64),
}

impl RingSpec {
    pub fn integers_mod(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::BadModulus(n));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn matrices_mod(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::BadModulus(n));
        }
        Ok(RingSpec::Matrices2x2Mod(n))
    }

    pub fn zero(self) -> RingValue {
        self.from_i64(0)
    }

    pub fn one(self) -> RingValue {
        self.from_i64(1)
    }

    /// The image of an integer under the unique unital map `Z -> R`.
    pub fn from_i64(self, v: i64) -> RingValue {
        let repr = match self {
            RingSpec::Integers => Repr::Int(BigInt::from(v)),
            RingSpec::IntegersMod(n) => Repr::Residue(reduce_i128(v as i128, n)),
            RingSpec::Matrices2x2Mod(n) => {
                let d = reduce_i128(v as i128, n);
                Repr::Matrix([d, 0, 0, d])
            }
        };
        RingValue { spec: self, repr }
    }

    /// Number of elements, if finite.
    pub fn cardinality(self) -> Option<u128> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(n) => Some(n as u128),
            RingSpec::Matrices2x2Mod(n) => Some((n as u128).pow(4)),
        }
    }

    /// All elements of a finite ring, in a fixed order. `None` for `Z` or
    /// when there are more than `limit` elements.
    pub fn elements(self, limit: usize) -> Option<Vec<RingValue>> {
        let card = self.cardinality()?;
        if card > limit as u128 {
            return None;
        }
        let out = match self {
            RingSpec::Integers => unreachable!(),
            RingSpec::IntegersMod(n) => (0..n)
                .map(|r| RingValue {
                    spec: self,
                    repr: Repr::Residue(r),
                })
                .collect(),
            RingSpec::Matrices2x2Mod(n) => {
                let mut v = Vec::with_capacity(card as usize);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            for d in 0..n {
                                v.push(RingValue {
                                    spec: self,
                                    repr: Repr::Matrix([a, b, c, d]),
                                });
                            }
                        }
                    }
                }
                v
            }
        };
        Some(out)
    }

    /// A random value. Integers are drawn from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, bound: i64) -> RingValue {
        let repr = match self {
            RingSpec::Integers => Repr::Int(BigInt::from(rng.gen_range(-bound..=bound))),
            RingSpec::IntegersMod(n) => Repr::Residue(rng.gen_range(0..n)),
            RingSpec::Matrices2x2Mod(n) => Repr::Matrix([
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            ]),
        };
        RingValue { spec: self, repr }
    }

    /// A random nonzero value.
    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R, bound: i64) -> RingValue {
        loop {
            let v = self.random(rng, bound.max(1));
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Parses a literal in this ring.
    ///
    /// Scalars are decimal integers with an optional sign (`-` or `−`); in
    /// `Z/n` they are reduced, and in `M2(Z/n)` they denote scalar matrices.
    /// Matrices are written `[a,b;c,d]` and are only accepted by `M2(Z/n)`.
    pub fn parse_value(self, literal: &str) -> Result<RingValue, RingError> {
        let bad = || RingError::BadLiteral {
            spec: self,
            literal: literal.to_string(),
        };
        let text = literal.trim();
        if text.starts_with('[') {
            let RingSpec::Matrices2x2Mod(n) = self else {
                return Err(bad());
            };
            let inner = text
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(bad)?;
            let rows: Vec<&str> = inner.split(';').collect();
            if rows.len() != 2 {
                return Err(bad());
            }
            let mut entries = [0u64; 4];
            for (r, row) in rows.iter().enumerate() {
                let cols: Vec<&str> = row.split(',').collect();
                if cols.len() != 2 {
                    return Err(bad());
                }
                for (c, col) in cols.iter().enumerate() {
                    let v = parse_integer(col).ok_or_else(bad)?;
                    entries[2 * r + c] = reduce_big(&v, n);
                }
            }
            return Ok(RingValue {
                spec: self,
                repr: Repr::Matrix(entries),
            });
        }
        let v = parse_integer(text).ok_or_else(bad)?;
        let repr = match self {
            RingSpec::Integers => Repr::Int(v),
            RingSpec::IntegersMod(n) => Repr::Residue(reduce_big(&v, n)),
            RingSpec::Matrices2x2Mod(n) => {
                let d = reduce_big(&v, n);
                Repr::Matrix([d, 0, 0, d])
            }
        };
        Ok(RingValue { spec: self, repr })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(n) => write!(f, "Z/{n}"),
            RingSpec::Matrices2x2Mod(n) => write!(f, "M2(Z/{n})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || RingError::UnknownSpec(s.to_string());
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(inner) = s.strip_prefix("M2(").and_then(|t| t.strip_suffix(')')) {
            let n = inner.strip_prefix("Z/").ok_or_else(unknown)?;
            return RingSpec::matrices_mod(n.parse().map_err(|_| unknown())?);
        }
        if let Some(n) = s.strip_prefix("Z/") {
            return RingSpec::integers_mod(n.parse().map_err(|_| unknown())?);
        }
        Err(unknown())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    /// Reduced into `[0, n)`.
    Residue(u64),
    /// Row-major `[a, b, c, d]` for `[a,b;c,d]`, entries reduced into `[0, n)`.
    Matrix([u64; 4]),
}

/// An exact element of one of the coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingValue {
    spec: RingSpec,
    repr: Repr,
}

impl RingValue {
    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(v) => v.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Matrix(m) => m.iter().all(|&e| e == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Int(v) => v.is_one(),
            Repr::Residue(r) => *r == 1,
            Repr::Matrix(m) => *m == [1, 0, 0, 1],
        }
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.spec != other.spec {
            return Err(RingError::Mismatch(self.spec, other.spec));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr, self.spec) {
            (Repr::Int(a), Repr::Int(b), _) => Repr::Int(a + b),
            (Repr::Residue(a), Repr::Residue(b), RingSpec::IntegersMod(n)) => {
                Repr::Residue(add_mod(*a, *b, n))
            }
            (Repr::Matrix(a), Repr::Matrix(b), RingSpec::Matrices2x2Mod(n)) => {
                Repr::Matrix(std::array::from_fn(|k| add_mod(a[k], b[k], n)))
            }
            _ => unreachable!("payload does not match its ring spec"),
        };
        Ok(RingValue {
            spec: self.spec,
            repr,
        })
    }

    pub fn neg(&self) -> Self {
        let repr = match (&self.repr, self.spec) {
            (Repr::Int(a), _) => Repr::Int(-a),
            (Repr::Residue(a), RingSpec::IntegersMod(n)) => Repr::Residue(neg_mod(*a, n)),
            (Repr::Matrix(a), RingSpec::Matrices2x2Mod(n)) => {
                Repr::Matrix(std::array::from_fn(|k| neg_mod(a[k], n)))
            }
            _ => unreachable!("payload does not match its ring spec"),
        };
        RingValue {
            spec: self.spec,
            repr,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    /// The product `self · other`, in that order.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr, self.spec) {
            (Repr::Int(a), Repr::Int(b), _) => Repr::Int(a * b),
            (Repr::Residue(a), Repr::Residue(b), RingSpec::IntegersMod(n)) => {
                Repr::Residue(mul_mod(*a, *b, n))
            }
            (Repr::Matrix(a), Repr::Matrix(b), RingSpec::Matrices2x2Mod(n)) => {
                let dot =
                    |x: u64, y: u64, z: u64, w: u64| add_mod(mul_mod(x, y, n), mul_mod(z, w, n), n);
                Repr::Matrix([
                    dot(a[0], b[0], a[1], b[2]),
                    dot(a[0], b[1], a[1], b[3]),
                    dot(a[2], b[0], a[3], b[2]),
                    dot(a[2], b[1], a[3], b[3]),
                ])
            }
            _ => unreachable!("payload does not match its ring spec"),
        };
        Ok(RingValue {
            spec: self.spec,
            repr,
        })
    }

    /// The integer payload, for `Z` values that fit in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.repr {
            Repr::Int(v) => v.to_i64(),
            Repr::Residue(r) => i64::try_from(*r).ok(),
            Repr::Matrix(_) => None,
        }
    }

    /// Matrix entries `[a, b, c, d]` of `[a,b;c,d]`, for `M2(Z/n)` values.
    pub fn matrix_entries(&self) -> Option<[u64; 4]> {
        match &self.repr {
            Repr::Matrix(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Int(v) => write!(f, "{v}"),
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Matrix([a, b, c, d]) => write!(f, "[{a},{b};{c},{d}]"),
        }
    }
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let text = text.trim();
    let (negative, digits) = if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('−') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('+') {
        (false, rest)
    } else {
        (false, text)
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if negative { -v } else { v })
}

fn reduce_big(v: &BigInt, n: u64) -> u64 {
    let m = BigInt::from(n);
    let mut r = v % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().expect("residue below modulus fits in u64")
}

fn reduce_i128(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn neg_mod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}
