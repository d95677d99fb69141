//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q[x]/(Phi_N(x))`. Since `Phi_N` is irreducible this representation is
//! canonical, so equality at a fixed level is coefficient-wise equality.
//! Operands of different levels are lifted to the lcm of their levels.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator in {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator in {text:?}")))?;
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Per-level data: `Phi_N` and the reductions of `x^i` for `0 <= i < 2N`.
struct Level {
    phi: Vec<i64>,
    /// `powers[i]` is `x^i mod Phi_N`, of length `deg`.
    powers: Vec<Vec<i64>>,
}

impl Level {
    fn deg(&self) -> usize {
        self.phi.len() - 1
    }
}

fn level_cache() -> &'static Mutex<HashMap<u32, Arc<Level>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Level>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn level_data(n: u32) -> Arc<Level> {
    assert!(n >= 1, "cyclotomic level must be positive");
    if let Some(level) = level_cache().lock().unwrap().get(&n) {
        return level.clone();
    }
    let phi = compute_cyclotomic(n);
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(2 * n as usize);
    let mut current = vec![0i64; deg];
    current[0] = 1;
    for _ in 0..(2 * n as usize).max(2 * deg) {
        powers.push(current.clone());
        // multiply by x and reduce
        let top = current[deg - 1];
        let mut next = vec![0i64; deg];
        for i in (1..deg).rev() {
            next[i] = current[i - 1];
        }
        next[0] = 0;
        if top != 0 {
            for (i, c) in next.iter_mut().enumerate() {
                *c -= top * phi[i];
            }
        }
        current = next;
    }
    let level = Arc::new(Level { phi, powers });
    level_cache().lock().unwrap().insert(n, level.clone());
    level
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd] / lead;
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    poly
}

/// Integer coefficients of `Phi_N`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic_polynomial: N must be positive");
    if let Some(level) = level_cache().lock().unwrap().get(&n) {
        return level.phi.clone();
    }
    level_data(n).phi.clone()
}

/// An exact element of `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero(level: u32) -> Self {
        let deg = level_data(level).deg();
        CycNumber {
            level,
            coeffs: vec![Rational::zero(); deg],
        }
    }

    pub fn one(level: u32) -> Self {
        Self::from_rational(Rational::one(), level)
    }

    pub fn from_rational(value: Rational, level: u32) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[0] = value;
        out
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_rational(rational_int(value), 1)
    }

    /// Builds an element from power-basis coefficients. Longer vectors are
    /// reduced modulo `Phi_N`.
    pub fn from_coeffs(level: u32, coeffs: Vec<Rational>) -> Self {
        let data = level_data(level);
        let deg = data.deg();
        if coeffs.len() == deg {
            return CycNumber { level, coeffs };
        }
        let mut out = vec![Rational::zero(); deg];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(power(&data, i, level)) {
                if *p != 0 {
                    *o += c * BigInt::from(*p);
                }
            }
        }
        CycNumber { level, coeffs: out }
    }

    /// `zeta_N^k`, canonically reduced.
    pub fn root_of_unity(k: i64, n: u32) -> Self {
        let data = level_data(n);
        let e = k.rem_euclid(n as i64) as usize;
        let coeffs = data.powers[e].iter().map(|&c| rational_int(c)).collect();
        CycNumber { level: n, coeffs }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Image under `zeta_N -> zeta_M^(M/N)`.
    pub fn lift_level(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.level) {
            return Err(Error::IncompatibleLevel {
                level: self.level,
                target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let step = (target / self.level) as usize;
        let data = level_data(target);
        let mut out = vec![Rational::zero(); data.deg()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(power(&data, i * step, target)) {
                if *p != 0 {
                    *o += c * BigInt::from(*p);
                }
            }
        }
        Ok(CycNumber {
            level: target,
            coeffs: out,
        })
    }

    fn unify(a: &CycNumber, b: &CycNumber) -> (CycNumber, CycNumber) {
        let level = lcm(a.level, b.level);
        (
            a.lift_level(level).expect("lcm is a multiple"),
            b.lift_level(level).expect("lcm is a multiple"),
        )
    }

    /// The rational value, or `None` when the element is not rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Evaluates at `zeta_N = exp(2 pi i / N)`.
    ///
    /// Evaluation is carried out in double precision, so at most about 15
    /// significant digits are meaningful; larger requests are clamped.
    pub fn complex_embedding(&self, _digits: u32) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / (self.level as f64);
            let value = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(value, angle);
        }
        acc
    }

    /// Multiplicative inverse, via extended Euclid against `Phi_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let data = level_data(self.level);
        let modulus: Vec<Rational> = data.phi.iter().map(|&c| rational_int(c)).collect();
        let a = trim(self.coeffs.clone());
        // invariant: s * a == r (mod phi)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![], vec![Rational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return Err(Error::InternalInconsistency(
                    "non-invertible element in a field".into(),
                ));
            }
        }
        let c = r1[0].clone();
        let s: Vec<Rational> = s1.iter().map(|x| x / &c).collect();
        Ok(CycNumber::from_coeffs(self.level, pad(s, data.deg())))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = CycNumber::one(self.level);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

fn power(data: &Level, e: usize, level: u32) -> &[i64] {
    &data.powers[e % level as usize]
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn pad(mut p: Vec<Rational>, len: usize) -> Vec<Rational> {
    if p.len() < len {
        p.resize(len, Rational::zero());
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        quot[i] = c;
    }
    (trim(quot), trim(rem))
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycNumber::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl From<Rational> for CycNumber {
    fn from(value: Rational) -> Self {
        CycNumber::from_rational(value, 1)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &'a CycNumber) -> CycNumber {
        if self.level != rhs.level {
            let (a, b) = CycNumber::unify(self, rhs);
            return &a + &b;
        }
        CycNumber {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &'a CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &'a CycNumber) -> CycNumber {
        if self.level != rhs.level {
            let (a, b) = CycNumber::unify(self, rhs);
            return &a * &b;
        }
        let data = level_data(self.level);
        let deg = data.deg();
        let mut raw = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = raw[..deg].to_vec();
        for (e, c) in raw.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&data.powers[e]) {
                if *p != 0 {
                    *o += c * BigInt::from(*p);
                }
            }
        }
        CycNumber {
            level: self.level,
            coeffs: out,
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'a CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        if self.level == rhs.level {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.level),
                _ => format!("z{}^{}", self.level, i),
            };
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{abs}*{z}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    level: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycRepr::deserialize(deserializer)?;
        if repr.level == 0 {
            return Err(D::Error::custom("level must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let expected = euler_phi(repr.level);
        if coeffs.len() != expected {
            return Err(D::Error::custom(format!(
                "level {} needs {expected} coefficients, got {}",
                repr.level,
                coeffs.len()
            )));
        }
        Ok(CycNumber::from_coeffs(repr.level, coeffs))
    }
}
