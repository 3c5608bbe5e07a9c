//! Exact field arithmetic over Q, prime fields F_p, and extension fields F_{p^r}.
//!
//! Extension fields are represented as F_p[w]/(m(w)) where m is the
//! lexicographically first irreducible monic polynomial of the requested
//! degree, so a given (p, r) always denotes the same field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_EXTENSION_DEGREE: usize = 4;

/// A field: the rationals, a prime field, or an extension field with an
/// explicit modulus polynomial (little-endian coefficients, monic).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, r: usize, modulus: Vec<u64> },
}

/// An element of some field. Carries no field context; all arithmetic goes
/// through the owning [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<u64>),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    if p < (1 << 32) {
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // extended Euclid on signed 128-bit intermediates
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin, complete for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---- dense univariate arithmetic over F_p, little-endian, for moduli ----

fn upoly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn upoly_eval(a: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = (mulmod(acc, x, p) + c) % p;
    }
    acc
}

fn upoly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(ca, cb, p)) % p;
        }
    }
    out
}

/// Remainder of a modulo the monic polynomial m.
fn upoly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = upoly_deg(m).expect("modulus must be nonzero");
    let mut work = a.to_vec();
    while let Some(da) = upoly_deg(&work) {
        if da < dm {
            break;
        }
        let lead = work[da];
        let shift = da - dm;
        for j in 0..=dm {
            let sub = mulmod(lead, m[j], p);
            work[j + shift] = (work[j + shift] + p - sub) % p;
        }
    }
    work.truncate(dm);
    work.resize(dm, 0);
    work
}

/// Inverse of a modulo the monic irreducible m, if a is nonzero mod m.
fn upoly_invmod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let dm = upoly_deg(m).unwrap();
    let mut r0 = m.to_vec();
    let mut r1 = upoly_rem(a, m, p);
    r1.truncate(upoly_deg(&r1).map_or(0, |d| d + 1));
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    while upoly_deg(&r1).is_some() {
        // divide r0 by r1
        let d1 = upoly_deg(&r1).unwrap();
        let lead_inv = invmod(r1[d1], p)?;
        let mut q = vec![0u64; r0.len()];
        let mut rem = r0.clone();
        while let Some(d0) = upoly_deg(&rem) {
            if d0 < d1 {
                break;
            }
            let c = mulmod(rem[d0], lead_inv, p);
            q[d0 - d1] = c;
            for j in 0..=d1 {
                let sub = mulmod(c, r1[j], p);
                rem[j + d0 - d1] = (rem[j + d0 - d1] + p - sub) % p;
            }
        }
        // (r0, r1) = (r1, rem); (t0, t1) = (t1, t0 - q t1)
        let qt1 = upoly_mul(&q, &t1, p);
        let mut t2 = vec![0u64; t0.len().max(qt1.len())];
        for (i, &c) in t0.iter().enumerate() {
            t2[i] = c;
        }
        for (i, &c) in qt1.iter().enumerate() {
            t2[i] = (t2[i] + p - c % p) % p;
        }
        r0 = r1;
        r1 = rem;
        r1.truncate(upoly_deg(&r1).map_or(0, |d| d + 1));
        t0 = t1;
        t1 = t2;
    }
    // r0 must now be a nonzero constant
    let d0 = upoly_deg(&r0)?;
    if d0 != 0 {
        return None;
    }
    let c = invmod(r0[0], p)?;
    let mut out = upoly_rem(&t0.iter().map(|&x| mulmod(x, c, p)).collect::<Vec<_>>(), m, p);
    out.resize(dm, 0);
    Some(out)
}

/// Irreducibility over F_p by exhaustive factor search, for degree <= 4.
/// Degrees 2 and 3 reduce to root search; degree 4 additionally scans
/// monic quadratic divisors.
fn upoly_irreducible(f: &[u64], p: u64) -> bool {
    let d = upoly_deg(f).unwrap_or(0);
    match d {
        0 => false,
        1 => true,
        2 | 3 => (0..p).all(|x| upoly_eval(f, x, p) != 0),
        4 => {
            if (0..p).any(|x| upoly_eval(f, x, p) == 0) {
                return false;
            }
            // no roots, so any factorization involves an irreducible quadratic
            for c1 in 0..p {
                for c0 in 0..p {
                    let g = [c0, c1, 1];
                    if upoly_deg(&upoly_rem(f, &g, p)).is_none() {
                        return false;
                    }
                }
            }
            true
        }
        _ => unreachable!("extension degree capped at {}", MAX_EXTENSION_DEGREE),
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// A prime field F_p. Primality is checked deterministically.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime { p })
    }

    /// F_{p^r} for odd prime p and 1 <= r <= 4. The modulus is the first
    /// irreducible monic degree-r polynomial in the lexicographic scan of
    /// coefficient vectors (constant coefficient varying fastest), so the
    /// construction is reproducible.
    pub fn extension(p: u64, r: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if r < 1 || r > MAX_EXTENSION_DEGREE {
            return Err(Error::UnsupportedField(format!(
                "extension degree {r} outside supported range 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        if r == 1 {
            return Ok(FieldSpec::Prime { p });
        }
        let count = (p as u128).pow(r as u32);
        let mut idx: u128 = 0;
        while idx < count {
            let mut f = vec![0u64; r + 1];
            let mut rest = idx;
            for c in f.iter_mut().take(r) {
                *c = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            f[r] = 1;
            if upoly_irreducible(&f, p) {
                return Ok(FieldSpec::Extension { p, r, modulus: f });
            }
            idx += 1;
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    /// Well-formedness check for deserialized specs: primality of p and,
    /// for extensions, a monic irreducible modulus of the right degree.
    pub fn check_valid(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime { p } => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::Input(format!("{p} is not prime")))
                }
            }
            FieldSpec::Extension { p, r, modulus } => {
                if !is_prime(*p) {
                    return Err(Error::Input(format!("{p} is not prime")));
                }
                if *r < 2 || *r > MAX_EXTENSION_DEGREE {
                    return Err(Error::UnsupportedField(format!(
                        "extension degree {r} outside supported range 2..={MAX_EXTENSION_DEGREE}"
                    )));
                }
                if modulus.len() != r + 1 || modulus[*r] != 1 || modulus.iter().any(|c| c >= p) {
                    return Err(Error::Input(
                        "modulus must be monic of degree r with reduced coefficients".into(),
                    ));
                }
                if !upoly_irreducible(modulus, *p) {
                    return Err(Error::Input("modulus is reducible".into()));
                }
                Ok(())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
        }
    }

    pub fn extension_degree(&self) -> usize {
        match self {
            FieldSpec::Extension { r, .. } => *r,
            _ => 1,
        }
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Result<u128> {
        match self {
            FieldSpec::Rationals => Err(Error::Input("rationals are not finite".into())),
            FieldSpec::Prime { p } => Ok(*p as u128),
            FieldSpec::Extension { p, r, .. } => Ok((*p as u128).pow(*r as u32)),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime { .. } => Scalar::Mod(0),
            FieldSpec::Extension { r, .. } => Scalar::Ext(vec![0; *r]),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime { .. } => Scalar::Mod(1),
            FieldSpec::Extension { r, .. } => {
                let mut v = vec![0; *r];
                v[0] = 1;
                Scalar::Ext(v)
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime { p } => Scalar::Mod(n.rem_euclid(*p as i64) as u64),
            FieldSpec::Extension { p, r, .. } => {
                let mut v = vec![0; *r];
                v[0] = n.rem_euclid(*p as i64) as u64;
                Scalar::Ext(v)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
            Scalar::Ext(v) => v.iter().all(|&c| c == 0),
        }
    }

    fn p(&self) -> u64 {
        self.characteristic()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (FieldSpec::Extension { p, .. }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(&a, &b)| (a + b) % p).collect())
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime { p }, Scalar::Mod(x)) => Scalar::Mod((p - x % p) % p),
            (FieldSpec::Extension { p, .. }, Scalar::Ext(v)) => {
                Scalar::Ext(v.iter().map(|&c| (p - c % p) % p).collect())
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(mulmod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, r, modulus }, Scalar::Ext(x), Scalar::Ext(y)) => {
                let prod = upoly_mul(x, y, *p);
                let mut red = upoly_rem(&prod, modulus, *p);
                red.resize(*r, 0);
                Scalar::Ext(red)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::Input("division by zero".into()));
        }
        Ok(match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (FieldSpec::Prime { p }, Scalar::Mod(x)) => {
                Scalar::Mod(invmod(*x, *p).expect("nonzero residue is invertible"))
            }
            (FieldSpec::Extension { p, modulus, .. }, Scalar::Ext(v)) => Scalar::Ext(
                upoly_invmod(v, modulus, *p).expect("nonzero element of a field is invertible"),
            ),
            _ => panic!("scalar does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Frobenius endomorphism x -> x^p; identity on prime fields.
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a.clone(),
            _ => self.pow(a, self.p()),
        }
    }

    /// Checks that a scalar is a well-formed member of this field.
    pub fn validate_scalar(&self, a: &Scalar) -> Result<()> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(_)) => Ok(()),
            (FieldSpec::Prime { p }, Scalar::Mod(x)) if x < p => Ok(()),
            (FieldSpec::Extension { p, r, .. }, Scalar::Ext(v))
                if v.len() == *r && v.iter().all(|c| c < p) =>
            {
                Ok(())
            }
            _ => Err(Error::FieldMismatch(format!(
                "scalar {a:?} is not an element of {self}"
            ))),
        }
    }

    /// Uniform random element.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                // small integers keep rational test data well-conditioned
                Scalar::Rat(BigRational::from(BigInt::from(rng.gen_range(-9i64..=9))))
            }
            FieldSpec::Prime { p } => Scalar::Mod(rng.gen_range(0..*p)),
            FieldSpec::Extension { p, r, .. } => {
                Scalar::Ext((0..*r).map(|_| rng.gen_range(0..*p)).collect())
            }
        }
    }

    /// Element with the given index in the field's canonical iteration
    /// order (0 <= idx < order).
    pub fn element(&self, idx: u128) -> Scalar {
        match self {
            FieldSpec::Rationals => panic!("rationals are not enumerable"),
            FieldSpec::Prime { .. } => Scalar::Mod(idx as u64),
            FieldSpec::Extension { p, r, .. } => {
                let mut v = vec![0u64; *r];
                let mut rest = idx;
                for c in v.iter_mut() {
                    *c = (rest % *p as u128) as u64;
                    rest /= *p as u128;
                }
                Scalar::Ext(v)
            }
        }
    }

    /// Reduce a rational scalar modulo p into this finite field.
    pub fn reduce_rational(&self, a: &Scalar) -> Result<Scalar> {
        let p = self.p();
        if p == 0 {
            return Ok(a.clone());
        }
        let Scalar::Rat(x) = a else {
            return Err(Error::FieldMismatch("expected a rational scalar".into()));
        };
        let pb = BigInt::from(p);
        let numer = ((x.numer() % &pb) + &pb) % &pb;
        let denom = ((x.denom() % &pb) + &pb) % &pb;
        let n: u64 = numer.try_into().expect("reduced residue fits u64");
        let d: u64 = denom.try_into().expect("reduced residue fits u64");
        let dinv = invmod(d, p).ok_or(Error::Reduction { p })?;
        let res = mulmod(n, dinv, p);
        match self {
            FieldSpec::Prime { .. } => Ok(Scalar::Mod(res)),
            FieldSpec::Extension { r, .. } => {
                let mut v = vec![0; *r];
                v[0] = res;
                Ok(Scalar::Ext(v))
            }
            FieldSpec::Rationals => unreachable!(),
        }
    }

    /// Whether elements of `self` embed into `other` by the canonical maps
    /// supported here: Q into any F_p (by reduction), F_p into F_{p^r},
    /// and F_{p^r} into F_{p^s} when r divides s.
    pub fn embeds_into(&self, other: &FieldSpec) -> bool {
        match (self, other) {
            (FieldSpec::Rationals, _) => true,
            (a, b) if a == b => true,
            (FieldSpec::Prime { p }, FieldSpec::Extension { p: q, .. }) => p == q,
            (FieldSpec::Extension { p, r, .. }, FieldSpec::Extension { p: q, r: s, .. }) => {
                p == q && s % r == 0
            }
            _ => false,
        }
    }

    /// Embed a scalar of `self` into `other` (see [`Self::embeds_into`]).
    /// For a proper extension-into-extension embedding the image of the
    /// generator is the first root of our modulus in the target field.
    pub fn embed(&self, a: &Scalar, other: &FieldSpec) -> Result<Scalar> {
        if self == other {
            return Ok(a.clone());
        }
        if !self.embeds_into(other) {
            return Err(Error::FieldMismatch(format!(
                "no canonical embedding of {self} into {other}"
            )));
        }
        match (self, a) {
            (FieldSpec::Rationals, _) => other.reduce_rational(a),
            (FieldSpec::Prime { .. }, Scalar::Mod(c)) => match other {
                FieldSpec::Extension { r, .. } => {
                    let mut v = vec![0; *r];
                    v[0] = *c;
                    Ok(Scalar::Ext(v))
                }
                _ => unreachable!(),
            },
            (FieldSpec::Extension { modulus, .. }, Scalar::Ext(coeffs)) => {
                let root = other
                    .first_root(modulus)
                    .expect("subfield modulus splits in the extension");
                let mut acc = other.zero();
                for &c in coeffs.iter().rev() {
                    acc = other.mul(&acc, &root);
                    acc = other.add(&acc, &other.from_i64(c as i64));
                }
                Ok(acc)
            }
            _ => Err(Error::FieldMismatch("malformed scalar".into())),
        }
    }

    /// First root (in canonical element order) of a univariate polynomial
    /// with F_p coefficients, evaluated in this field.
    fn first_root(&self, upoly: &[u64]) -> Option<Scalar> {
        let order = self.order().ok()?;
        for idx in 0..order {
            let x = self.element(idx);
            let mut acc = self.zero();
            for &c in upoly.iter().rev() {
                acc = self.mul(&acc, &x);
                acc = self.add(&acc, &self.from_i64(c as i64));
            }
            if self.is_zero(&acc) {
                return Some(x);
            }
        }
        None
    }

    /// Parse a coefficient string: `a` or `a/b` over Q, a residue over F_p,
    /// and comma-separated residues over F_{p^r}.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {n:?}")))?;
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {d:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            FieldSpec::Prime { p } => {
                let n: i128 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                Ok(Scalar::Mod(n.rem_euclid(*p as i128) as u64))
            }
            FieldSpec::Extension { p, r, .. } => {
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() > *r {
                    return Err(Error::Parse(format!(
                        "residue vector {s:?} longer than extension degree {r}"
                    )));
                }
                let mut v = vec![0u64; *r];
                for (i, part) in parts.iter().enumerate() {
                    let n: i128 = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad residue {part:?}")))?;
                    v[i] = n.rem_euclid(*p as i128) as u64;
                }
                Ok(Scalar::Ext(v))
            }
        }
    }

    pub fn scalar_to_string(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod(x) => x.to_string(),
            Scalar::Ext(v) => v
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, r, .. } => write!(f, "F_{{{p}^{r}}}"),
        }
    }
}

/// Deterministic extension-field constructor, the public entry point:
/// r = 1 gives the prime field, otherwise the lexicographic-scan field.
pub fn make_extension(p: u64, r: usize) -> Result<FieldSpec> {
    FieldSpec::extension(p, r)
}

impl Scalar {
    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }
}
