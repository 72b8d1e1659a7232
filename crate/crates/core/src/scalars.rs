//! Exact scalars over the rationals, cyclotomic fields and prime fields.
//!
//! Cyclotomic elements are dense coefficient vectors of length φ(n) reduced
//! modulo Φₙ, so structural equality inside one field is field equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot combine scalars from {0} and {1}")]
    FieldMismatch(FieldDesc, FieldDesc),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`: {1}")]
    Parse(String, String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
}

/// Coefficient field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDesc {
    Rationals,
    Cyclotomic(u32),
    PrimeField(u64),
}

impl FieldDesc {
    /// ℚ(ζₙ), with n = 1, 2 collapsing to ℚ.
    pub fn cyclotomic(n: u32) -> Result<FieldDesc, ScalarError> {
        match n {
            0 => Err(ScalarError::InvalidField("cyclotomic order must be positive".into())),
            1 | 2 => Ok(FieldDesc::Rationals),
            _ => Ok(FieldDesc::Cyclotomic(n)),
        }
    }

    pub fn prime(p: u64) -> Result<FieldDesc, ScalarError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(ScalarError::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldDesc::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(k)))
            .expect("integers embed in every field")
    }

    /// Embeds a rational; fails in 𝔽ₚ when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, ScalarError> {
        match *self {
            FieldDesc::Rationals => Ok(Scalar::Q(r.clone())),
            FieldDesc::Cyclotomic(n) => {
                let mut c = vec![BigRational::zero(); phi(n as u64) as usize];
                c[0] = r.clone();
                Ok(Scalar::Cyc(Cyc { n, c }))
            }
            FieldDesc::PrimeField(p) => {
                let num = mod_bigint(r.numer(), p);
                let den = mod_bigint(r.denom(), p);
                if den == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::Fp(Fp { p, v: num * inv_mod(den, p) % p }))
            }
        }
    }

    /// Order of the group of roots of unity contained in the field.
    pub fn roots_of_unity_order(&self) -> u64 {
        match *self {
            FieldDesc::Rationals => 2,
            FieldDesc::Cyclotomic(n) => {
                if n % 2 == 0 {
                    n as u64
                } else {
                    2 * n as u64
                }
            }
            FieldDesc::PrimeField(p) => p - 1,
        }
    }

    /// A generator of the roots of unity of the field.
    pub fn root_of_unity_generator(&self) -> Scalar {
        match *self {
            FieldDesc::Rationals => self.from_i64(-1),
            FieldDesc::Cyclotomic(n) => {
                let z = Scalar::zeta_class(n);
                if n % 2 == 0 {
                    z
                } else {
                    -&z.pow((n as i64 + 1) / 2)
                }
            }
            FieldDesc::PrimeField(p) => Scalar::Fp(Fp { p, v: primitive_root_mod(p) }),
        }
    }

    /// A primitive m-th root of unity inside this field, if one exists.
    pub fn root_of_unity(&self, m: u64) -> Option<Scalar> {
        let r = self.roots_of_unity_order();
        if m == 0 || !r.is_multiple_of(m) {
            return None;
        }
        Some(self.root_of_unity_generator().pow((r / m) as i64))
    }

    /// Smallest field containing both descriptors.
    pub fn join(&self, other: &FieldDesc) -> Result<FieldDesc, ScalarError> {
        use FieldDesc::*;
        match (*self, *other) {
            (a, b) if a == b => Ok(a),
            (Rationals, Cyclotomic(n)) | (Cyclotomic(n), Rationals) => Ok(Cyclotomic(n)),
            (Cyclotomic(m), Cyclotomic(n)) => FieldDesc::cyclotomic(m.lcm(&n)),
            (a, b) => Err(ScalarError::FieldMismatch(a, b)),
        }
    }

    /// Embeds an arbitrary scalar after checking compatibility.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        s.coerce(self)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Cyclotomic(n) => write!(f, "Q(zeta{n})"),
            FieldDesc::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// Accepts the display forms `Q`, `Q(zetaN)`, `GF(p)` and the short forms `zetaN`, `gfP`.
impl std::str::FromStr for FieldDesc {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<FieldDesc, ScalarError> {
        let t = s.trim();
        let bad = || ScalarError::InvalidField(format!("unrecognised field `{s}`"));
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        if t == "Q" || t == "QQ" {
            return Ok(FieldDesc::Rationals);
        }
        if let Some(n) = t.strip_prefix("Q(zeta").and_then(|x| x.strip_suffix(')')).or_else(|| t.strip_prefix("zeta")) {
            return FieldDesc::cyclotomic(u32::try_from(num(n)?).map_err(|_| bad())?);
        }
        if let Some(p) = t.strip_prefix("GF(").and_then(|x| x.strip_suffix(')')).or_else(|| t.strip_prefix("gf")) {
            return FieldDesc::prime(num(p)?);
        }
        Err(bad())
    }
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p: Option<u64>,
}

impl Serialize for FieldDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let j = match *self {
            FieldDesc::Rationals => FieldJson { kind: "Q".into(), n: None, p: None },
            FieldDesc::Cyclotomic(n) => FieldJson { kind: "cyclotomic".into(), n: Some(n), p: None },
            FieldDesc::PrimeField(p) => FieldJson { kind: "gf".into(), n: None, p: Some(p) },
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = FieldJson::deserialize(d)?;
        match j.kind.as_str() {
            "Q" => Ok(FieldDesc::Rationals),
            "cyclotomic" => {
                let n = j.n.ok_or_else(|| D::Error::custom("cyclotomic field needs n"))?;
                FieldDesc::cyclotomic(n).map_err(D::Error::custom)
            }
            "gf" => {
                let p = j.p.ok_or_else(|| D::Error::custom("prime field needs p"))?;
                FieldDesc::prime(p).map_err(D::Error::custom)
            }
            other => Err(D::Error::custom(format!("unknown field kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc {
    n: u32,
    c: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    v: u64,
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Q(BigRational),
    Cyc(Cyc),
    Fp(Fp),
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Q(_) => FieldDesc::Rationals,
            Scalar::Cyc(c) => FieldDesc::Cyclotomic(c.n),
            Scalar::Fp(x) => FieldDesc::PrimeField(x.p),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn zeta_class(n: u32) -> Scalar {
        let d = phi(n as u64) as usize;
        let mut c = vec![BigRational::zero(); d];
        if d > 1 {
            c[1] = BigRational::one();
            Scalar::Cyc(Cyc { n, c })
        } else {
            // φ(n) = 1 only for n ≤ 2, which never reaches this constructor.
            unreachable!("cyclotomic field of degree one")
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Cyc(c) => c.c.iter().all(|x| x.is_zero()),
            Scalar::Fp(x) => x.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Cyc(c) => c.c[0].is_one() && c.c[1..].iter().all(|x| x.is_zero()),
            Scalar::Fp(x) => x.v == 1,
        }
    }

    /// Rational value when the element lies in ℚ (or is a rational element of ℚ(ζₙ)).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.clone()),
            Scalar::Cyc(c) if c.c[1..].iter().all(|x| x.is_zero()) => Some(c.c[0].clone()),
            _ => None,
        }
    }

    pub fn coerce(&self, target: &FieldDesc) -> Result<Scalar, ScalarError> {
        let own = self.field();
        if own == *target {
            return Ok(self.clone());
        }
        match (self, *target) {
            (Scalar::Q(r), t @ FieldDesc::Cyclotomic(_)) => t.from_rational(r),
            (Scalar::Cyc(c), FieldDesc::Cyclotomic(m)) if m % c.n == 0 => {
                let step = (m / c.n) as usize;
                let mut raw = vec![BigRational::zero(); step * c.c.len().max(1)];
                for (j, x) in c.c.iter().enumerate() {
                    raw[j * step] = x.clone();
                }
                Ok(Scalar::Cyc(Cyc { n: m, c: reduce_cyclotomic(raw, m) }))
            }
            (Scalar::Cyc(c), FieldDesc::Rationals) if c.c[1..].iter().all(|x| x.is_zero()) => {
                Ok(Scalar::Q(c.c[0].clone()))
            }
            _ => Err(ScalarError::FieldMismatch(own, *target)),
        }
    }

    fn unify(&self, other: &Scalar) -> Result<(Scalar, Scalar), ScalarError> {
        let (fa, fb) = (self.field(), other.field());
        if fa == fb {
            return Ok((self.clone(), other.clone()));
        }
        let f = fa.join(&fb)?;
        Ok((self.coerce(&f)?, other.coerce(&f)?))
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if self.field() != other.field() {
            let (a, b) = self.unify(other)?;
            return a.try_add(&b);
        }
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(Cyc {
                n: a.n,
                c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
            }),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(Fp { p: a.p, v: (a.v + b.v) % a.p }),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if self.field() != other.field() {
            if let Some(r) = other.as_rational_fast() {
                return Ok(self.scale_q(r));
            }
            if let Some(r) = self.as_rational_fast() {
                return Ok(other.scale_q(r));
            }
            let (a, b) = self.unify(other)?;
            return a.try_mul(&b);
        }
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => {
                let d = a.c.len();
                let mut raw = vec![BigRational::zero(); 2 * d - 1];
                for (i, x) in a.c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.c.iter().enumerate() {
                        if !y.is_zero() {
                            raw[i + j] += x * y;
                        }
                    }
                }
                Scalar::Cyc(Cyc { n: a.n, c: reduce_cyclotomic(raw, a.n) })
            }
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(Fp { p: a.p, v: a.v * b.v % a.p }),
            _ => unreachable!(),
        })
    }

    fn as_rational_fast(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            _ => None,
        }
    }

    fn scale_q(&self, r: &BigRational) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a * r),
            Scalar::Cyc(a) => Scalar::Cyc(Cyc { n: a.n, c: a.c.iter().map(|x| x * r).collect() }),
            Scalar::Fp(_) => panic!("{}", ScalarError::FieldMismatch(self.field(), FieldDesc::Rationals)),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp(a) => Scalar::Fp(Fp { p: a.p, v: inv_mod(a.v, a.p) }),
            Scalar::Cyc(a) => {
                // Solve (multiplication by a) · x = 1 over ℚ.
                let d = a.c.len();
                let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
                let mut basis = vec![BigRational::zero(); d];
                basis[0] = BigRational::one();
                let mut cur = Scalar::Cyc(Cyc { n: a.n, c: basis });
                let z = Scalar::zeta_class(a.n);
                for _ in 0..d {
                    let prod = self.try_mul(&cur).expect("same field");
                    if let Scalar::Cyc(p) = prod {
                        cols.push(p.c);
                    }
                    cur = cur.try_mul(&z).expect("same field");
                }
                let mut rhs = vec![BigRational::zero(); d];
                rhs[0] = BigRational::one();
                let x = solve_rational_square(&cols, &rhs).ok_or(ScalarError::DivisionByZero)?;
                Scalar::Cyc(Cyc { n: a.n, c: x })
            }
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order when the element is a root of unity of the field.
    pub fn root_order(&self) -> Option<u64> {
        let r = self.field().roots_of_unity_order();
        if !self.pow(r as i64).is_one() {
            return None;
        }
        (1..=r).filter(|d| r.is_multiple_of(*d)).find(|d| self.pow(*d as i64).is_one())
    }

    /// Parses a literal interpreted in `field`.
    pub fn parse(s: &str, field: &FieldDesc) -> Result<Scalar, ScalarError> {
        let poly = parse_z_polynomial(s)?;
        let mut acc = field.zero();
        for (deg, coeff) in poly {
            let c = field.from_rational(&coeff)?;
            let term = if deg == 0 {
                c
            } else {
                match field {
                    FieldDesc::Cyclotomic(n) => &c * &Scalar::zeta_class(*n).pow(deg as i64),
                    _ => {
                        return Err(ScalarError::Parse(
                            s.into(),
                            format!("z is not available in {field}"),
                        ))
                    }
                }
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a == b,
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.n == b.n => a.c == b.c,
            (Scalar::Fp(a), Scalar::Fp(b)) => a == b,
            _ => match self.unify(other) {
                Ok((Scalar::Cyc(x), Scalar::Cyc(y))) => x.c == y.c,
                Ok((Scalar::Q(x), Scalar::Q(y))) => x == y,
                _ => false,
            },
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Fp(x) => write!(f, "{}", x.v),
            Scalar::Cyc(c) => {
                let mut first = true;
                for (deg, coeff) in c.c.iter().enumerate().rev() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let neg = coeff.is_negative();
                    let mag = coeff.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, "{}", if neg { " - " } else { " + " })?;
                    }
                    first = false;
                    let mono = match deg {
                        0 => String::new(),
                        1 => "z".to_string(),
                        d => format!("z^{d}"),
                    };
                    if deg == 0 {
                        write!(f, "{}", fmt_rational(&mag))?;
                    } else if mag.is_one() {
                        write!(f, "{mono}")?;
                    } else {
                        write!(f, "{}*{mono}", fmt_rational(&mag))?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on incompatible fields; use the `try_` form to recover.
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Cyc(a) => Scalar::Cyc(Cyc { n: a.n, c: a.c.iter().map(|x| -x).collect() }),
            Scalar::Fp(a) => Scalar::Fp(Fp { p: a.p, v: (a.p - a.v) % a.p }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// A polynomial over ℚ, coefficients from degree 0 upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = Cyc { n: 0, c: self.coeffs.clone() };
        write!(f, "{}", Scalar::Cyc(c))
    }
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclotomic_int(n: u32) -> Arc<Vec<i64>> {
    if let Some(v) = cyclotomic_cache().lock().expect("cache").get(&n) {
        return v.clone();
    }
    // xⁿ − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_int(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let arc = Arc::new(num);
    cyclotomic_cache().lock().expect("cache").insert(n, arc.clone());
    arc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Φₙ as a polynomial over ℚ.
pub fn cyclotomic_polynomial(n: u32) -> Polynomial {
    assert!(n >= 1, "cyclotomic polynomial needs n ≥ 1");
    let c = cyclotomic_int(n);
    Polynomial { coeffs: c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect() }
}

fn reduce_cyclotomic(mut raw: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let m = cyclotomic_int(n);
    let d = m.len() - 1;
    for k in (d..raw.len()).rev() {
        if raw[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut raw[k]);
        for (j, &mj) in m.iter().enumerate().take(d) {
            if mj != 0 {
                raw[k - d + j] -= &c * BigRational::from_integer(BigInt::from(mj));
            }
        }
    }
    raw.resize(d, BigRational::zero());
    raw
}

/// ζₙ as an element of the smallest descriptor field.
pub fn primitive_root(n: u32) -> Scalar {
    match n {
        0 => panic!("primitive_root needs n ≥ 1"),
        1 => FieldDesc::Rationals.one(),
        2 => FieldDesc::Rationals.from_i64(-1),
        _ => Scalar::zeta_class(n),
    }
}

/// Gaussian binomial by the Pascal recurrence.
pub fn q_binomial(m: u64, i: u64, q: &Scalar) -> Result<Scalar, ScalarError> {
    if i > m {
        return Err(ScalarError::Domain(format!("q-binomial [{m} {i}] needs i ≤ m")));
    }
    let f = q.field();
    let mut row = vec![f.one()];
    for mm in 1..=m {
        let mut next = vec![f.zero(); mm as usize + 1];
        for k in 0..=mm as usize {
            let left = if k >= 1 { row[k - 1].clone() } else { f.zero() };
            let right = if k < mm as usize { &q.pow(k as i64) * &row[k] } else { f.zero() };
            next[k] = &left + &right;
        }
        row = next;
    }
    Ok(row[i as usize].clone())
}

pub fn phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_bigint(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root_mod(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Solves a square system given by columns; `None` if singular.
fn solve_rational_square(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = rhs.len();
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=d {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[d].clone()).collect())
}

fn parse_rational(tok: &str) -> Result<BigRational, String> {
    let tok = tok.trim();
    if tok.is_empty() {
        return Ok(BigRational::one());
    }
    let parse_int = |s: &str| s.trim().parse::<BigInt>().map_err(|e| format!("{e}"));
    match tok.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(parse_int(a)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(tok)?)),
    }
}

/// Splits "3/2*z^2 - 1" into (degree, coefficient) terms.
fn parse_z_polynomial(s: &str) -> Result<Vec<(u32, BigRational)>, ScalarError> {
    let err = |m: String| ScalarError::Parse(s.to_string(), m);
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty literal".into()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut out = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b.to_string()),
            None => (1, t.strip_prefix('+').unwrap_or(&t).to_string()),
        };
        if body.is_empty() {
            return Err(err("dangling sign".into()));
        }
        let (coeff_s, mono) = match body.find('z') {
            Some(pos) => (body[..pos].trim_end_matches('*').to_string(), Some(body[pos + 1..].to_string())),
            None => (body.clone(), None),
        };
        let mut coeff = parse_rational(&coeff_s).map_err(err)?;
        if sign < 0 {
            coeff = -coeff;
        }
        let deg = match mono {
            None => 0,
            Some(m) if m.is_empty() => 1,
            Some(m) => m
                .strip_prefix('^')
                .ok_or_else(|| err(format!("unexpected `{m}` after z")))?
                .parse::<u32>()
                .map_err(|e| err(format!("{e}")))?,
        };
        out.push((deg, coeff));
    }
    Ok(out)
}

/// Polynomial arithmetic over a field, coefficients from degree 0 upward.
pub mod poly {
    use super::*;

    pub fn trim(p: &mut Vec<Scalar>) {
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
        let mut acc = x.field().zero();
        for c in p.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Divides by (t − r); returns (quotient, remainder).
    pub fn div_linear(p: &[Scalar], r: &Scalar) -> (Vec<Scalar>, Scalar) {
        let n = p.len();
        if n <= 1 {
            return (vec![r.field().zero()], p.first().cloned().unwrap_or_else(|| r.field().zero()));
        }
        let mut q = vec![r.field().zero(); n - 1];
        let mut acc = p[n - 1].clone();
        for k in (0..n - 1).rev() {
            q[k] = acc.clone();
            acc = &(&acc * r) + &p[k];
        }
        (q, acc)
    }
}

/// Roots of `p` inside `field` found by candidate trial, with multiplicities.
///
/// The flag is `true` when the found roots account for the full degree.
pub fn find_roots(p: &[Scalar], field: &FieldDesc, extra: &[Scalar]) -> (Vec<(Scalar, usize)>, bool) {
    let mut p: Vec<Scalar> = p.iter().map(|c| c.coerce(field).expect("coefficients in field")).collect();
    poly::trim(&mut p);
    let degree = p.len() - 1;
    let mut cands: Vec<Scalar> = vec![field.zero()];
    match *field {
        FieldDesc::PrimeField(q) => cands.extend((1..q).map(|v| field.from_i64(v as i64))),
        FieldDesc::Rationals => cands.extend(rational_candidates(&norm_polynomial(&p, field))
            .into_iter()
            .flat_map(|r| [Scalar::Q(r.clone()), Scalar::Q(-r)])),
        FieldDesc::Cyclotomic(_) => {
            let rs = rational_candidates(&norm_polynomial(&p, field));
            let gen = field.root_of_unity_generator();
            let ord = field.roots_of_unity_order();
            let units: Vec<Scalar> = (0..ord).map(|k| gen.pow(k as i64)).collect();
            for r in rs {
                let rr = field.from_rational(&r).expect("rational");
                for u in &units {
                    cands.push(&rr * u);
                }
            }
        }
    }
    for e in extra {
        if let Ok(c) = e.coerce(field) {
            cands.push(c);
        }
    }
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let mut rest = p.clone();
    for c in cands {
        if roots.iter().any(|(r, _)| *r == c) {
            continue;
        }
        let mut mult = 0;
        loop {
            if rest.len() <= 1 {
                break;
            }
            let (q, r) = poly::div_linear(&rest, &c);
            if r.is_zero() {
                rest = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    (roots, found == degree)
}

/// Norm of a polynomial over ℚ(ζₙ) down to ℚ, via determinant interpolation.
fn norm_polynomial(p: &[Scalar], field: &FieldDesc) -> Vec<BigRational> {
    match *field {
        FieldDesc::Rationals => p.iter().map(|c| c.as_rational().expect("rational")).collect(),
        FieldDesc::Cyclotomic(n) => {
            let d = phi(n as u64) as usize;
            let deg = (p.len() - 1) * d;
            let xs: Vec<BigRational> = (0..=deg).map(|k| BigRational::from_integer(BigInt::from(k as i64))).collect();
            let ys: Vec<BigRational> = xs
                .iter()
                .map(|x| {
                    let v = poly::eval(p, &field.from_rational(x).expect("rational"));
                    cyclotomic_norm(&v, n)
                })
                .collect();
            interpolate(&xs, &ys)
        }
        FieldDesc::PrimeField(_) => Vec::new(),
    }
}

fn cyclotomic_norm(v: &Scalar, n: u32) -> BigRational {
    let d = phi(n as u64) as usize;
    let z = Scalar::zeta_class(n);
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(d);
    let mut cur = v.clone();
    for _ in 0..d {
        match &cur {
            Scalar::Cyc(c) => rows.push(c.c.clone()),
            other => {
                let mut r = vec![BigRational::zero(); d];
                r[0] = other.as_rational().expect("rational");
                rows.push(r);
            }
        }
        cur = &cur * &z;
    }
    rational_det(rows)
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Newton interpolation; returns coefficients from degree 0.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // out = out·(t − xᵢ) + coefᵢ
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if out[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &out[k];
            }
            next[k] -= &out[k] * &xs[i];
        }
        next[0] += &coef[i];
        out = next;
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Positive rational-root candidates of an integer-scaled polynomial.
fn rational_candidates(p: &[BigRational]) -> Vec<BigRational> {
    let mut p = p.to_vec();
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    if p.len() <= 1 {
        return Vec::new();
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints.last().expect("nonempty").abs();
    let (Some(da), Some(dn)) = (divisors(&a0), divisors(&an)) else {
        return Vec::new();
    };
    let mut out: Vec<BigRational> = Vec::new();
    for a in &da {
        for b in &dn {
            let r = BigRational::new(BigInt::from(*a), BigInt::from(*b));
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64().filter(|&v| v > 0 && v < (1u64 << 40))?;
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).collect();
    out.sort_unstable();
    out.dedup();
    if out.len() > 4096 {
        return None;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).to_string(), "z - 1");
        assert_eq!(cyclotomic_polynomial(4).to_string(), "z^2 + 1");
        assert_eq!(cyclotomic_polynomial(6).to_string(), "z^2 - z + 1");
        assert_eq!(cyclotomic_polynomial(12).degree(), 4);
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        assert_eq!(primitive_root(2), q(-1, 1));
        let i = primitive_root(4);
        assert_eq!(i.pow(2), q(-1, 1));
        let z6 = primitive_root(6);
        assert_eq!(z6.pow(3), q(-1, 1));
        assert_ne!(z6, q(-1, 1));
        for n in 3..=24u32 {
            let z = primitive_root(n);
            assert!(z.pow(n as i64).is_one());
            for d in 1..n {
                if n % d == 0 {
                    assert!(!z.pow(d as i64).is_one(), "ζ_{n}^{d} = 1");
                }
            }
            assert_eq!(z.root_order(), Some(n as u64));
        }
    }

    #[test]
    fn q_binomials() {
        let qq = primitive_root(5);
        assert_eq!(q_binomial(2, 1, &qq).unwrap(), &qq + &FieldDesc::Cyclotomic(5).one());
        assert!(q_binomial(7, 0, &qq).unwrap().is_one());
        assert_eq!(q_binomial(4, 2, &q(-1, 1)).unwrap(), q(2, 1));
        assert!(matches!(q_binomial(2, 3, &qq), Err(ScalarError::Domain(_))));
        for m in 0..8u64 {
            for i in 0..=m {
                assert_eq!(q_binomial(m, i, &qq).unwrap(), q_binomial(m, m - i, &qq).unwrap());
                let binom = (0..i).fold(1i64, |acc, k| acc * (m - k) as i64 / (k as i64 + 1));
                assert_eq!(q_binomial(m, i, &q(1, 1)).unwrap(), q(binom, 1));
            }
        }
    }

    #[test]
    fn coercion_and_mismatch() {
        let i = primitive_root(4);
        let w = primitive_root(6);
        let prod = &i * &w;
        assert_eq!(prod.field(), FieldDesc::Cyclotomic(12));
        assert_eq!(prod.pow(12), q(1, 1));
        let f5 = FieldDesc::prime(5).unwrap();
        assert!(f5.one().try_add(&q(1, 2)).is_err());
        assert!(f5.one().try_add(&i).is_err());
        assert_eq!(&q(1, 2) + &FieldDesc::Cyclotomic(4).one(), FieldDesc::Cyclotomic(4).from_rational(&BigRational::new(3.into(), 2.into())).unwrap());
    }

    #[test]
    fn parse_and_print() {
        let f = FieldDesc::Cyclotomic(7);
        let s = Scalar::parse("3/2*z^2 - 1", &f).unwrap();
        assert_eq!(s.to_string(), "3/2*z^2 - 1");
        assert_eq!(Scalar::parse(&s.to_string(), &f).unwrap(), s);
        assert_eq!(Scalar::parse("-2/4", &FieldDesc::Rationals).unwrap(), q(-1, 2));
        assert!(Scalar::parse("z", &FieldDesc::Rationals).is_err());
        assert!(Scalar::parse("1/0", &FieldDesc::Rationals).is_err());
        let g = FieldDesc::prime(7).unwrap();
        assert_eq!(Scalar::parse("1/2", &g).unwrap(), g.from_i64(4));
        let json = serde_json::to_string(&FieldDesc::Cyclotomic(12)).unwrap();
        assert_eq!(json, r#"{"kind":"cyclotomic","n":12}"#);
        let back: FieldDesc = serde_json::from_str(r#"{"kind":"cyclotomic","n":2}"#).unwrap();
        assert_eq!(back, FieldDesc::Rationals);
    }

    #[test]
    fn roots_of_polynomials() {
        let f = FieldDesc::Cyclotomic(4);
        // t⁴ − 1 splits over ℚ(i).
        let p: Vec<Scalar> = [-1, 0, 0, 0, 1].iter().map(|&c| f.from_i64(c)).collect();
        let (roots, complete) = find_roots(&p, &f, &[]);
        assert!(complete);
        assert_eq!(roots.len(), 4);
        // t² − 2 does not split over ℚ.
        let p: Vec<Scalar> = [-2, 0, 1].iter().map(|&c| FieldDesc::Rationals.from_i64(c)).collect();
        let (roots, complete) = find_roots(&p, &FieldDesc::Rationals, &[]);
        assert!(roots.is_empty() && !complete);
        // (t − 2ζ₃)² over ℚ(ζ₃).
        let g = FieldDesc::Cyclotomic(3);
        let r = &g.from_i64(2) * &primitive_root(3);
        let p = vec![&r * &r, -&(&r * &g.from_i64(2)), g.one()];
        let (roots, complete) = find_roots(&p, &g, &[]);
        assert!(complete);
        assert_eq!(roots, vec![(r, 2)]);
    }

    #[test]
    fn field_names_parse() {
        for f in [FieldDesc::Rationals, FieldDesc::Cyclotomic(8), FieldDesc::PrimeField(5)] {
            assert_eq!(f.to_string().parse::<FieldDesc>(), Ok(f));
        }
        assert_eq!("zeta3".parse::<FieldDesc>(), Ok(FieldDesc::Cyclotomic(3)));
        assert!("GF(4)".parse::<FieldDesc>().is_err());
        assert!("R".parse::<FieldDesc>().is_err());
    }

    mod axioms {
        use super::*;
        use proptest::prelude::*;

        fn element(f: FieldDesc) -> impl Strategy<Value = Scalar> {
            let n = match f {
                FieldDesc::Cyclotomic(n) => cyclotomic_polynomial(n).degree(),
                _ => 1,
            };
            proptest::collection::vec((-6i64..7, 1i64..4), n).prop_map(move |cs| {
                let z = f.root_of_unity_generator();
                cs.iter().rev().fold(f.zero(), |acc, (a, b)| {
                    let c = Scalar::rational(*a, *b).coerce(&f).unwrap_or_else(|_| f.from_i64(*a));
                    &(&acc * &z) + &c
                })
            })
        }

        fn fields() -> impl Strategy<Value = FieldDesc> {
            prop_oneof![Just(FieldDesc::Rationals), Just(FieldDesc::Cyclotomic(3)), Just(FieldDesc::Cyclotomic(8)), Just(FieldDesc::Cyclotomic(12)), Just(FieldDesc::PrimeField(7))]
        }

        fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
            fields().prop_flat_map(|f| (element(f), element(f), element(f)))
        }

        proptest! {
            #![proptest_config(ProptestConfig { cases: 96, rng_seed: proptest::test_runner::RngSeed::Fixed(11), ..ProptestConfig::default() })]

            #[test]
            fn ring_laws((a, b, c) in triple()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a - &a, a.field().zero());
            }

            #[test]
            fn inverses((a, _, _) in triple()) {
                match a.inv() {
                    Ok(i) => prop_assert_eq!(&a * &i, a.field().one()),
                    Err(_) => prop_assert!(a.is_zero()),
                }
            }
        }
    }
}
