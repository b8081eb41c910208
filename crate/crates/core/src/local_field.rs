//! Square classes, norm classes and Hilbert symbols over `Q_p` and `R`.
//!
//! A square class is stored as a bit vector over a fixed basis of
//! `F^x / F^x2`:
//! * `p` odd: bit 0 is the unit non-residue `u`, bit 1 is `p`;
//! * `p = 2`: bit 0 is `-1`, bit 1 is `5`, bit 2 is `2`;
//! * real: bit 0 is `-1`.

use crate::error::{Error, Result};
use crate::sign::Sign;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::Mul;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalField {
    PAdic(u32),
    Real,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol of a unit `a` modulo an odd prime `p` (Euler's criterion).
fn legendre(a: i64, p: u32) -> Sign {
    let m = p as i64;
    let a = a.rem_euclid(m) as u64;
    debug_assert!(a != 0);
    Sign::from_bool_minus(pow_mod(a, (p as u64 - 1) / 2, p as u64) != 1)
}

impl LocalField {
    pub fn padic(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(LocalField::PAdic(p))
        } else {
            Err(Error::Field(format!("{p} is not prime")))
        }
    }

    /// Parses `Q3`, `Qp:3`, `p-adic:3`, `R` or `real`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "R" | "real" | "Real" => return Ok(LocalField::Real),
            "C" | "complex" => return Err(Error::Field("the complex field is excluded".into())),
            _ => {}
        }
        let digits = t
            .strip_prefix("Qp:")
            .or_else(|| t.strip_prefix("p-adic:"))
            .or_else(|| t.strip_prefix('Q'))
            .ok_or_else(|| Error::Field(format!("cannot parse field {s:?}")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Field(format!("cannot parse field {s:?}")))?;
        LocalField::padic(p)
    }

    pub fn name(self) -> String {
        match self {
            LocalField::PAdic(p) => format!("Q{p}"),
            LocalField::Real => "R".into(),
        }
    }

    pub fn class_count(self) -> usize {
        match self {
            LocalField::PAdic(2) => 8,
            LocalField::PAdic(_) => 4,
            LocalField::Real => 2,
        }
    }

    /// Smallest positive quadratic non-residue modulo an odd `p`.
    pub fn nonresidue(self) -> Option<u32> {
        match self {
            LocalField::PAdic(p) if p != 2 => (2..p).find(|&a| legendre(a as i64, p).is_minus()),
            _ => None,
        }
    }

    pub fn square_classes(self) -> Vec<SquareClass> {
        (0..self.class_count() as u8)
            .map(|bits| SquareClass { field: self, bits })
            .collect()
    }

    pub fn one(self) -> SquareClass {
        SquareClass { field: self, bits: 0 }
    }

    pub fn minus_one(self) -> SquareClass {
        self.class_of(-1).expect("-1 is nonzero")
    }

    /// Square class of a nonzero integer.
    pub fn class_of(self, n: i64) -> Result<SquareClass> {
        if n == 0 {
            return Err(Error::ClassTag("0".into()));
        }
        let bits = match self {
            LocalField::Real => u8::from(n < 0),
            LocalField::PAdic(2) => {
                let v = n.trailing_zeros();
                let m = (n >> v).rem_euclid(8);
                let unit = match m {
                    1 => 0,
                    7 => 1,
                    5 => 2,
                    3 => 3,
                    _ => unreachable!(),
                };
                unit | (((v & 1) as u8) << 2)
            }
            LocalField::PAdic(p) => {
                let mut m = n;
                let mut v = 0u32;
                while m % p as i64 == 0 {
                    m /= p as i64;
                    v += 1;
                }
                u8::from(legendre(m, p).is_minus()) | (((v & 1) as u8) << 1)
            }
        };
        Ok(SquareClass { field: self, bits })
    }

    /// Accepts canonical tags (`1`, `u`, `p`, `up`, `-5`, ...) and any nonzero integer.
    pub fn parse_class(self, tag: &str) -> Result<SquareClass> {
        let t = tag.trim();
        if let LocalField::PAdic(p) = self {
            if p != 2 {
                let bits = match t {
                    "u" => Some(1),
                    "p" => Some(2),
                    "up" | "pu" => Some(3),
                    _ => None,
                };
                if let Some(bits) = bits {
                    return Ok(SquareClass { field: self, bits });
                }
            }
        }
        let n: i64 = t.parse().map_err(|_| Error::ClassTag(tag.into()))?;
        self.class_of(n)
    }
}

impl fmt::Display for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum FieldRepr {
    #[serde(rename = "p-adic")]
    PAdic { p: u32 },
    #[serde(rename = "real")]
    Real,
    #[serde(rename = "complex")]
    Complex,
}

impl Serialize for LocalField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            LocalField::PAdic(p) => FieldRepr::PAdic { p },
            LocalField::Real => FieldRepr::Real,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match FieldRepr::deserialize(d)? {
            FieldRepr::PAdic { p } => LocalField::padic(p).map_err(serde::de::Error::custom),
            FieldRepr::Real => Ok(LocalField::Real),
            FieldRepr::Complex => Err(serde::de::Error::custom("the complex field is excluded")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    field: LocalField,
    bits: u8,
}

impl SquareClass {
    pub fn field(self) -> LocalField {
        self.field
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn is_one(self) -> bool {
        self.bits == 0
    }

    /// Valuation parity (always 0 over `R`).
    pub fn odd_valuation(self) -> bool {
        match self.field {
            LocalField::Real => false,
            LocalField::PAdic(2) => self.bits & 4 != 0,
            LocalField::PAdic(_) => self.bits & 2 != 0,
        }
    }

    /// Integer representative of the class.
    pub fn rep(self) -> i64 {
        match self.field {
            LocalField::Real => {
                if self.bits == 1 {
                    -1
                } else {
                    1
                }
            }
            LocalField::PAdic(2) => {
                let unit = [1i64, -1, 5, -5][(self.bits & 3) as usize];
                if self.bits & 4 != 0 {
                    2 * unit
                } else {
                    unit
                }
            }
            LocalField::PAdic(p) => {
                let u = self.field.nonresidue().unwrap() as i64;
                let unit = if self.bits & 1 != 0 { u } else { 1 };
                if self.bits & 2 != 0 {
                    unit * p as i64
                } else {
                    unit
                }
            }
        }
    }

    pub fn tag(self) -> String {
        match self.field {
            LocalField::PAdic(p) if p != 2 => ["1", "u", "p", "up"][self.bits as usize].to_string(),
            _ => self.rep().to_string(),
        }
    }

    pub fn checked_mul(self, other: SquareClass) -> Result<SquareClass> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(SquareClass { field: self.field, bits: self.bits ^ other.bits })
    }

    pub fn pow(self, e: u64) -> SquareClass {
        if e % 2 == 0 {
            self.field.one()
        } else {
            self
        }
    }

    /// Closed-form Hilbert symbol `(self, other)_F`.
    pub fn hilbert(self, other: SquareClass) -> Sign {
        debug_assert_eq!(self.field, other.field);
        match self.field {
            LocalField::Real => Sign::from_bool_minus(self.bits == 1 && other.bits == 1),
            LocalField::PAdic(2) => {
                let (e_a, w_a, v_a) = (self.bits & 1, (self.bits >> 1) & 1, (self.bits >> 2) & 1);
                let (e_b, w_b, v_b) = (other.bits & 1, (other.bits >> 1) & 1, (other.bits >> 2) & 1);
                Sign::from_bool_minus((e_a & e_b) ^ (v_a & w_b) ^ (v_b & w_a) == 1)
            }
            LocalField::PAdic(p) => {
                let (r_a, v_a) = (self.bits & 1, (self.bits >> 1) & 1);
                let (r_b, v_b) = (other.bits & 1, (other.bits >> 1) & 1);
                let eps = ((p - 1) / 2 % 2) as u8;
                Sign::from_bool_minus((v_a & v_b & eps) ^ (r_a & v_b) ^ (r_b & v_a) == 1)
            }
        }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        self.checked_mul(rhs).expect("square classes of one field")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

pub fn square_classes(field: LocalField) -> Vec<SquareClass> {
    field.square_classes()
}

pub fn hilbert_symbol(a: SquareClass, b: SquareClass) -> Result<Sign> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(a.hilbert(b))
}

/// `E = F` or `E = F(sqrt d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    field: LocalField,
    d: Option<SquareClass>,
}

impl QuadExt {
    pub fn split(field: LocalField) -> Self {
        QuadExt { field, d: None }
    }

    pub fn new(field: LocalField, d: SquareClass) -> Result<Self> {
        if d.field != field {
            return Err(Error::FieldMismatch);
        }
        if d.is_one() {
            return Err(Error::Invariants("d must be a non-square".into()));
        }
        Ok(QuadExt { field, d: Some(d) })
    }

    pub fn field(self) -> LocalField {
        self.field
    }

    pub fn d(self) -> Option<SquareClass> {
        self.d
    }

    pub fn is_split(self) -> bool {
        self.d.is_none()
    }

    pub fn omega(self, a: SquareClass) -> Result<Sign> {
        let d = self.d.ok_or(Error::SplitExtension)?;
        hilbert_symbol(a, d)
    }

    pub fn norm_class_group(self) -> NormClassGroup {
        let elements = match self.d {
            None => self.field.square_classes(),
            Some(d) => {
                let nonnorm = self
                    .field
                    .square_classes()
                    .into_iter()
                    .find(|c| c.hilbert(d).is_minus())
                    .expect("local class field theory: a non-norm exists");
                vec![self.field.one(), nonnorm]
            }
        };
        NormClassGroup { ext: self, elements }
    }

    /// Canonical representative of the class of `a` in `F^x / N E^x`.
    pub fn reduce(self, a: SquareClass) -> SquareClass {
        match self.d {
            None => a,
            Some(d) => {
                if a.hilbert(d) == Sign::Plus {
                    self.field.one()
                } else {
                    self.norm_class_group().elements[1]
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExtRepr {
    d: String,
}

impl QuadExt {
    pub fn to_json(self) -> serde_json::Value {
        match self.d {
            None => serde_json::Value::Null,
            Some(d) => serde_json::to_value(ExtRepr { d: d.tag() }).unwrap(),
        }
    }

    pub fn from_json(field: LocalField, v: &serde_json::Value) -> Result<Self> {
        if v.is_null() {
            return Ok(QuadExt::split(field));
        }
        let r: ExtRepr = serde_json::from_value(v.clone()).map_err(|e| Error::Input(e.to_string()))?;
        QuadExt::new(field, field.parse_class(&r.d)?)
    }
}

pub fn omega_quadratic(ext: QuadExt, a: SquareClass) -> Result<Sign> {
    ext.omega(a)
}

pub fn norm_class_group(ext: QuadExt) -> NormClassGroup {
    ext.norm_class_group()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormClassGroup {
    pub ext: QuadExt,
    pub elements: Vec<SquareClass>,
}

impl NormClassGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(LocalField::Real.square_classes().len(), 2);
        assert_eq!(LocalField::padic(3).unwrap().square_classes().len(), 4);
        assert_eq!(LocalField::padic(2).unwrap().square_classes().len(), 8);
        assert!(LocalField::padic(9).is_err());
        assert!(LocalField::parse("C").is_err());
    }

    #[test]
    fn tags_round_trip() {
        for f in [LocalField::Real, LocalField::PAdic(2), LocalField::PAdic(3), LocalField::PAdic(7)] {
            for c in f.square_classes() {
                assert_eq!(f.parse_class(&c.tag()).unwrap(), c);
                assert_eq!(f.class_of(c.rep()).unwrap(), c);
            }
        }
        let q3 = LocalField::PAdic(3);
        assert_eq!(q3.square_classes().iter().map(|c| c.tag()).collect::<Vec<_>>(), ["1", "u", "p", "up"]);
        assert_eq!(q3.minus_one().tag(), "u");
        assert_eq!(LocalField::PAdic(5).minus_one().tag(), "1");
        let q2: Vec<i64> = LocalField::PAdic(2).square_classes().iter().map(|c| c.rep()).collect();
        assert_eq!(q2, [1, -1, 5, -5, 2, -2, 10, -10]);
    }

    #[test]
    fn hilbert_laws() {
        for f in [LocalField::Real, LocalField::PAdic(2), LocalField::PAdic(3), LocalField::PAdic(5), LocalField::PAdic(7)] {
            let cs = f.square_classes();
            for &a in &cs {
                assert_eq!(a.hilbert(f.one()), Sign::Plus);
                assert_eq!(a.hilbert(f.minus_one() * a), Sign::Plus);
                if !a.is_one() {
                    assert!(cs.iter().any(|&b| a.hilbert(b).is_minus()));
                }
                for &b in &cs {
                    assert_eq!(a.hilbert(b), b.hilbert(a));
                    for &c in &cs {
                        assert_eq!((a * b).hilbert(c), a.hilbert(c) * b.hilbert(c));
                    }
                }
            }
        }
        let r = LocalField::Real;
        assert_eq!(r.minus_one().hilbert(r.minus_one()), Sign::Minus);
        let q3 = LocalField::PAdic(3);
        let u = q3.parse_class("u").unwrap();
        assert_eq!(u.hilbert(u), Sign::Plus);
    }

    #[test]
    fn norm_groups() {
        let q3 = LocalField::PAdic(3);
        assert_eq!(QuadExt::split(q3).norm_class_group().len(), 4);
        let e = QuadExt::new(q3, q3.parse_class("u").unwrap()).unwrap();
        assert_eq!(e.norm_class_group().len(), 2);
        let p = q3.parse_class("p").unwrap();
        // (3, u)_3 is the Legendre symbol of u
        assert_eq!(e.omega(p).unwrap(), Sign::Minus);
        assert_eq!(e.omega(q3.one()).unwrap(), Sign::Plus);
        assert!(QuadExt::split(q3).omega(p).is_err());
        let c = QuadExt::new(LocalField::Real, LocalField::Real.minus_one()).unwrap();
        assert_eq!(c.norm_class_group().len(), 2);
        assert!(QuadExt::new(q3, q3.one()).is_err());
    }

    #[test]
    fn mismatched_fields() {
        let a = LocalField::PAdic(3).one();
        let b = LocalField::PAdic(5).one();
        assert_eq!(hilbert_symbol(a, b), Err(Error::FieldMismatch));
    }
}
