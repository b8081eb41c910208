//! Invariant-level model of epsilon-Hermitian spaces.
//!
//! A space is never stored as a Gram matrix. Over `Q_p` a quadratic space is
//! determined by `(dim, det, hasse)`, a Hermitian space by `(dim, det)` with
//! `det` in `F^x / N E^x`; over `R` by the signature. Skew-Hermitian forms
//! are normalised to the Hermitian form `delta * q`, and all stored
//! determinants and discriminants refer to that normalisation.

use crate::error::{Error, Result};
use crate::local_field::{LocalField, QuadExt, SquareClass};
use crate::sign::Sign;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    Symmetric,
    Alternating,
    Hermitian,
    SkewHermitian,
}

impl FormKind {
    pub fn of(ext: QuadExt, epsilon: Sign) -> Self {
        match (ext.is_split(), epsilon) {
            (true, Sign::Plus) => FormKind::Symmetric,
            (true, Sign::Minus) => FormKind::Alternating,
            (false, Sign::Plus) => FormKind::Hermitian,
            (false, Sign::Minus) => FormKind::SkewHermitian,
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, FormKind::Hermitian | FormKind::SkewHermitian)
    }
}

/// Optional invariants accepted by [`classify`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Invariants {
    pub disc: Option<SquareClass>,
    pub hasse: Option<Sign>,
    pub signature: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EpsHermSpace {
    ext: QuadExt,
    epsilon: Sign,
    dim: usize,
    det: Option<SquareClass>,
    hasse: Option<Sign>,
    signature: Option<(usize, usize)>,
    witt: usize,
}

fn tri(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

// Serre's existence criterion for p-adic quadratic forms.
fn quad_exists(n: usize, det: SquareClass, hasse: Sign) -> bool {
    let f = det.field();
    match n {
        0 => det.is_one() && hasse == Sign::Plus,
        1 => hasse == Sign::Plus,
        2 => det != f.minus_one() || hasse == Sign::Plus,
        _ => true,
    }
}

fn quad_isotropic(n: usize, det: SquareClass, hasse: Sign) -> bool {
    let f = det.field();
    let m1 = f.minus_one();
    match n {
        0 | 1 => false,
        2 => det == m1,
        3 => m1.hilbert(m1 * det) == hasse,
        4 => !det.is_one() || hasse == m1.hilbert(m1),
        _ => true,
    }
}

fn herm_isotropic(ext: QuadExt, n: usize, det: SquareClass) -> bool {
    match n {
        0 | 1 => false,
        2 => det == ext.reduce(ext.field().minus_one()),
        _ => true,
    }
}

impl EpsHermSpace {
    fn build_quad(ext: QuadExt, dim: usize, det: SquareClass, hasse: Sign) -> Result<Self> {
        if !quad_exists(dim, det, hasse) {
            return Err(Error::NoSuchSpace(format!(
                "quadratic dim {dim}, det {det}, hasse {hasse}"
            )));
        }
        let (mut n, mut d, mut h, mut r) = (dim, det, hasse, 0);
        let m1 = det.field().minus_one();
        while quad_isotropic(n, d, h) {
            h = h * m1.hilbert(m1 * d);
            d = m1 * d;
            n -= 2;
            r += 1;
        }
        Ok(EpsHermSpace {
            ext,
            epsilon: Sign::Plus,
            dim,
            det: Some(det),
            hasse: Some(hasse),
            signature: None,
            witt: r,
        })
    }

    fn build_herm(ext: QuadExt, epsilon: Sign, dim: usize, det: SquareClass) -> Result<Self> {
        let det = ext.reduce(det);
        if dim == 0 && !det.is_one() {
            return Err(Error::NoSuchSpace(format!("zero space with det {det}")));
        }
        let m1 = ext.reduce(ext.field().minus_one());
        let (mut n, mut d, mut r) = (dim, det, 0);
        while herm_isotropic(ext, n, d) {
            d = ext.reduce(m1 * d);
            n -= 2;
            r += 1;
        }
        Ok(EpsHermSpace {
            ext,
            epsilon,
            dim,
            det: Some(det),
            hasse: None,
            signature: None,
            witt: r,
        })
    }

    fn build_real(ext: QuadExt, epsilon: Sign, sig: (usize, usize)) -> Self {
        let (p, q) = sig;
        let f = ext.field();
        let det = f.minus_one().pow(q as u64);
        let hasse = if ext.is_split() {
            Some(Sign::Minus.pow(tri(q)))
        } else {
            None
        };
        EpsHermSpace {
            ext,
            epsilon,
            dim: p + q,
            det: Some(det),
            hasse,
            signature: Some(sig),
            witt: p.min(q),
        }
    }

    fn build_alternating(ext: QuadExt, dim: usize) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(Error::NoSuchSpace(format!("alternating form of odd dim {dim}")));
        }
        Ok(EpsHermSpace {
            ext,
            epsilon: Sign::Minus,
            dim,
            det: None,
            hasse: None,
            signature: None,
            witt: dim / 2,
        })
    }

    pub fn zero(ext: QuadExt, epsilon: Sign) -> Self {
        match FormKind::of(ext, epsilon) {
            FormKind::Alternating => Self::build_alternating(ext, 0).unwrap(),
            _ if ext.field() == LocalField::Real => Self::build_real(ext, epsilon, (0, 0)),
            FormKind::Symmetric => Self::build_quad(ext, 0, ext.field().one(), Sign::Plus).unwrap(),
            _ => Self::build_herm(ext, epsilon, 0, ext.field().one()).unwrap(),
        }
    }

    /// `m` hyperbolic planes.
    pub fn hyperbolic(ext: QuadExt, epsilon: Sign, m: usize) -> Self {
        let mut s = Self::zero(ext, epsilon);
        for _ in 0..m {
            s = s.add_hyperbolic();
        }
        s
    }

    /// The one-dimensional space `<c>` (after normalisation in the unitary case).
    pub fn line(ext: QuadExt, epsilon: Sign, c: SquareClass) -> Result<Self> {
        if c.field() != ext.field() {
            return Err(Error::FieldMismatch);
        }
        match FormKind::of(ext, epsilon) {
            FormKind::Alternating => Err(Error::NoSuchSpace("alternating line".into())),
            _ if ext.field() == LocalField::Real => {
                let neg = ext.reduce(c) != ext.field().one();
                Ok(Self::build_real(ext, epsilon, if neg { (0, 1) } else { (1, 0) }))
            }
            FormKind::Symmetric => Self::build_quad(ext, 1, c, Sign::Plus),
            _ => Self::build_herm(ext, epsilon, 1, c),
        }
    }

    pub fn kind(&self) -> FormKind {
        FormKind::of(self.ext, self.epsilon)
    }

    pub fn ext(&self) -> QuadExt {
        self.ext
    }

    pub fn field(&self) -> LocalField {
        self.ext.field()
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn det(&self) -> Option<SquareClass> {
        self.det
    }

    /// `(-1)^(n(n-1)/2) det`, absent for alternating spaces.
    pub fn disc(&self) -> Option<SquareClass> {
        self.det.map(|d| {
            let raw = self.field().minus_one().pow(tri(self.dim)) * d;
            self.ext.reduce(raw)
        })
    }

    pub fn hasse(&self) -> Option<Sign> {
        self.hasse
    }

    pub fn signature(&self) -> Option<(usize, usize)> {
        self.signature
    }

    pub fn witt(&self) -> usize {
        self.witt
    }

    pub fn anisotropic_dim(&self) -> usize {
        self.dim - 2 * self.witt
    }

    pub fn is_anisotropic(&self) -> bool {
        self.witt == 0
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            disc: self.disc(),
            hasse: self.hasse,
            signature: self.signature,
        }
    }

    /// Orthogonal sum; both summands must share `ext` and `epsilon`.
    pub fn direct_sum(&self, other: &EpsHermSpace) -> Result<Self> {
        if self.ext != other.ext || self.epsilon != other.epsilon {
            return Err(Error::Invariants("direct sum of spaces of different kinds".into()));
        }
        if let (Some((p1, q1)), Some((p2, q2))) = (self.signature, other.signature) {
            return Ok(Self::build_real(self.ext, self.epsilon, (p1 + p2, q1 + q2)));
        }
        let dim = self.dim + other.dim;
        match self.kind() {
            FormKind::Alternating => Self::build_alternating(self.ext, dim),
            FormKind::Symmetric => {
                let (d1, d2) = (self.det.unwrap(), other.det.unwrap());
                let h = self.hasse.unwrap() * other.hasse.unwrap() * d1.hilbert(d2);
                Self::build_quad(self.ext, dim, d1 * d2, h)
            }
            _ => Self::build_herm(self.ext, self.epsilon, dim, self.det.unwrap() * other.det.unwrap()),
        }
    }

    pub fn add_hyperbolic(&self) -> Self {
        let plane = match self.kind() {
            FormKind::Alternating => Self::build_alternating(self.ext, 2).unwrap(),
            _ if self.field() == LocalField::Real => Self::build_real(self.ext, self.epsilon, (1, 1)),
            FormKind::Symmetric => {
                Self::build_quad(self.ext, 2, self.field().minus_one(), Sign::Plus).unwrap()
            }
            _ => Self::build_herm(self.ext, self.epsilon, 2, self.field().minus_one()).unwrap(),
        };
        self.direct_sum(&plane).expect("same kind")
    }

    /// The space `W` with `m H + W` isometric to `self`.
    pub fn remove_hyperbolic(&self, m: usize) -> Result<Self> {
        if m > self.witt {
            return Err(Error::NoSuchSpace(format!(
                "cannot split off {m} hyperbolic planes from a space of Witt index {}",
                self.witt
            )));
        }
        if let Some((p, q)) = self.signature {
            return Ok(Self::build_real(self.ext, self.epsilon, (p - m, q - m)));
        }
        let dim = self.dim - 2 * m;
        let m1 = self.field().minus_one();
        match self.kind() {
            FormKind::Alternating => Self::build_alternating(self.ext, dim),
            FormKind::Symmetric => {
                let (mut d, mut h) = (self.det.unwrap(), self.hasse.unwrap());
                for _ in 0..m {
                    h = h * m1.hilbert(m1 * d);
                    d = m1 * d;
                }
                Self::build_quad(self.ext, dim, d, h)
            }
            _ => Self::build_herm(self.ext, self.epsilon, dim, m1.pow(m as u64) * self.det.unwrap()),
        }
    }

    pub fn witt_decompose(&self) -> (usize, EpsHermSpace) {
        let an = self.remove_hyperbolic(self.witt).expect("witt index planes split off");
        (self.witt, an)
    }

    /// The space `W` with `<c> + W` isometric to `self`.
    pub fn cancel_line(&self, c: SquareClass) -> Result<Self> {
        if self.dim == 0 {
            return Err(Error::NoSuchSpace("zero space represents nothing".into()));
        }
        if let Some((p, q)) = self.signature {
            let neg = self.ext.reduce(c) != self.field().one();
            return match (neg, p, q) {
                (false, 0, _) | (true, _, 0) => {
                    Err(Error::NoSuchSpace(format!("signature ({p},{q}) does not represent {c}")))
                }
                (false, _, _) => Ok(Self::build_real(self.ext, self.epsilon, (p - 1, q))),
                (true, _, _) => Ok(Self::build_real(self.ext, self.epsilon, (p, q - 1))),
            };
        }
        match self.kind() {
            FormKind::Alternating => Err(Error::NoSuchSpace("alternating forms have no lines".into())),
            FormKind::Symmetric => {
                let dw = self.det.unwrap() * c;
                let hw = self.hasse.unwrap() * c.hilbert(dw);
                Self::build_quad(self.ext, self.dim - 1, dw, hw)
            }
            _ => Self::build_herm(self.ext, self.epsilon, self.dim - 1, self.det.unwrap() * c),
        }
    }

    pub fn represents(&self, c: SquareClass) -> bool {
        self.cancel_line(c).is_ok()
    }

    /// Classes a one-dimensional form of this kind can take.
    pub fn line_classes(&self) -> Vec<SquareClass> {
        self.ext.norm_class_group().elements
    }

    /// Whether the nilpotent orbit `[p1, 1^(n-p1)]` has an F-rational point.
    pub fn orbit_admissible(&self, p1: usize) -> bool {
        let (n, r) = (self.dim, self.witt);
        if p1 == 0 || p1 > n {
            return false;
        }
        match self.kind() {
            FormKind::Symmetric => p1 % 2 == 1 && if n == 2 * r { p1 + 1 <= 2 * r } else { p1 <= 2 * r + 1 },
            FormKind::Alternating => p1 % 2 == 0,
            _ => p1 <= 2 * r + 1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpaceRepr {
            epsilon: self.epsilon.to_i8(),
            dim: self.dim,
            disc: self.disc().map(|d| d.tag()),
            hasse: self.hasse.map(|h| h.to_i8()),
            signature: self.signature.map(|(p, q)| [p, q]),
            witt: Some(self.witt),
            anisotropic_dim: Some(self.anisotropic_dim()),
        })
        .unwrap()
    }

    pub fn from_json(ext: QuadExt, v: &serde_json::Value) -> Result<Self> {
        let r: SpaceRepr = serde_json::from_value(v.clone()).map_err(|e| Error::Input(e.to_string()))?;
        let epsilon = Sign::from_i64(r.epsilon as i64).ok_or_else(|| Error::Input("epsilon must be 1 or -1".into()))?;
        let disc = r.disc.map(|t| ext.field().parse_class(&t)).transpose()?;
        let hasse = r
            .hasse
            .map(|h| Sign::from_i64(h as i64).ok_or_else(|| Error::Input("hasse must be 1 or -1".into())))
            .transpose()?;
        let inv = Invariants {
            disc,
            hasse,
            signature: r.signature.map(|[p, q]| (p, q)),
        };
        let s = classify(ext, epsilon, r.dim, &inv)?;
        if r.witt.is_some_and(|w| w != s.witt) {
            return Err(Error::Invariants(format!("declared witt index disagrees (computed {})", s.witt)));
        }
        Ok(s)
    }
}

impl fmt::Display for EpsHermSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} dim {}", self.kind(), self.dim)?;
        if let Some(d) = self.disc() {
            write!(f, " disc {d}")?;
        }
        if let Some(h) = self.hasse {
            write!(f, " hasse {h}")?;
        }
        if let Some((p, q)) = self.signature {
            write!(f, " sig ({p},{q})")?;
        }
        write!(f, " witt {}", self.witt)
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    epsilon: i8,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disc: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hasse: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signature: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witt: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anisotropic_dim: Option<usize>,
}

/// The unique space with the given invariants.
pub fn classify(ext: QuadExt, epsilon: Sign, dim: usize, inv: &Invariants) -> Result<EpsHermSpace> {
    let field = ext.field();
    if inv.disc.is_some_and(|d| d.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let kind = FormKind::of(ext, epsilon);
    if kind == FormKind::Alternating {
        if *inv != Invariants::default() {
            return Err(Error::Invariants("alternating spaces are determined by their dimension".into()));
        }
        return EpsHermSpace::build_alternating(ext, dim);
    }
    if kind.is_unitary() && inv.hasse.is_some() {
        return Err(Error::Invariants("Hermitian spaces carry no Hasse invariant".into()));
    }
    let s = if field == LocalField::Real {
        let (p, q) = inv
            .signature
            .ok_or_else(|| Error::Invariants("real spaces are classified by their signature".into()))?;
        if p + q != dim {
            return Err(Error::Invariants(format!("signature ({p},{q}) does not have dim {dim}")));
        }
        EpsHermSpace::build_real(ext, epsilon, (p, q))
    } else {
        if inv.signature.is_some() {
            return Err(Error::Invariants("signatures only make sense over R".into()));
        }
        let disc = match inv.disc {
            Some(d) => d,
            None if dim == 0 => field.one(),
            None => return Err(Error::Invariants("missing discriminant".into())),
        };
        let det = field.minus_one().pow(tri(dim)) * disc;
        if kind == FormKind::Symmetric {
            let hasse = match inv.hasse {
                Some(h) => h,
                None if dim <= 1 => Sign::Plus,
                None => return Err(Error::Invariants("missing Hasse invariant".into())),
            };
            EpsHermSpace::build_quad(ext, dim, det, hasse)?
        } else {
            EpsHermSpace::build_herm(ext, epsilon, dim, det)?
        }
    };
    if inv.disc.is_some_and(|d| s.disc() != Some(ext.reduce(d))) || inv.hasse.is_some_and(|h| s.hasse != Some(h)) {
        return Err(Error::NoSuchSpace(format!("signature inconsistent with the given invariants ({s})")));
    }
    Ok(s)
}

pub fn witt_decompose(space: &EpsHermSpace) -> (usize, EpsHermSpace) {
    space.witt_decompose()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SoOdd,
    SoEven,
    Sp,
    Mp,
    U,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::SoOdd, Family::SoEven, Family::Sp, Family::Mp, Family::U];

    pub fn name(self) -> &'static str {
        match self {
            Family::SoOdd => "SO_odd",
            Family::SoEven => "SO_even",
            Family::Sp => "Sp",
            Family::Mp => "Mp",
            Family::U => "U",
        }
    }

    /// Parses a family name; a bare `SO` is resolved by the parity of `dim`.
    pub fn parse(s: &str, dim: usize) -> Result<Self> {
        match s {
            "SO_odd" => Ok(Family::SoOdd),
            "SO_even" => Ok(Family::SoEven),
            "SO" if dim % 2 == 1 => Ok(Family::SoOdd),
            "SO" => Ok(Family::SoEven),
            "Sp" => Ok(Family::Sp),
            "Mp" => Ok(Family::Mp),
            "U" => Ok(Family::U),
            _ => Err(Error::Input(format!("unknown group family {s:?}"))),
        }
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::SoOdd | Family::SoEven)
    }

    /// Family of a group acting on a space of dimension `dim`, given that of
    /// an ambient group of this family.
    fn so_of_dim(dim: usize) -> Family {
        if dim % 2 == 1 {
            Family::SoOdd
        } else {
            Family::SoEven
        }
    }

    fn check_space(self, space: &EpsHermSpace) -> Result<()> {
        let ok = match self {
            Family::SoOdd => space.kind() == FormKind::Symmetric && space.dim % 2 == 1,
            Family::SoEven => space.kind() == FormKind::Symmetric && space.dim % 2 == 0,
            Family::Sp | Family::Mp => space.kind() == FormKind::Alternating,
            Family::U => space.kind().is_unitary(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::TypeMismatch(format!("{} cannot act on a {}", self.name(), space)))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A classical group `Isom(V)^0`, or the metaplectic cover for `Mp`.
///
/// `quasi_split` marks the distinguished base form `G*` among its pure inner
/// forms (see [`GroupDesc::base_space`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupDesc {
    pub family: Family,
    pub space: EpsHermSpace,
    pub quasi_split: bool,
}

impl GroupDesc {
    pub fn new(family: Family, space: EpsHermSpace) -> Result<Self> {
        family.check_space(&space)?;
        let base = Self::base_space(family, space.ext, space.dim, space.disc())?;
        Ok(GroupDesc {
            family,
            space,
            quasi_split: base == space,
        })
    }

    /// Quasi-split form with the given discriminant (orthogonal families only;
    /// default `1`).
    pub fn quasi_split(family: Family, ext: QuadExt, dim: usize, disc: Option<SquareClass>) -> Result<Self> {
        let space = Self::base_space(family, ext, dim, disc)?;
        Ok(GroupDesc {
            family,
            space,
            quasi_split: true,
        })
    }

    /// The canonical base space: maximal Witt index, ties broken by the
    /// first Hasse invariant / determinant / signature in enumeration order.
    pub fn base_space(family: Family, ext: QuadExt, dim: usize, disc: Option<SquareClass>) -> Result<EpsHermSpace> {
        let needs_split = family != Family::U;
        if needs_split != ext.is_split() {
            return Err(Error::TypeMismatch(format!("{} needs {}", family.name(), if needs_split { "E = F" } else { "E != F" })));
        }
        if family == Family::SoOdd && dim % 2 == 0 || family == Family::SoEven && dim % 2 == 1 {
            return Err(Error::Dimension(format!("{} with dim {dim}", family.name())));
        }
        let candidates: Vec<EpsHermSpace> = match family {
            Family::Sp | Family::Mp => vec![EpsHermSpace::build_alternating(ext, dim)?],
            Family::SoOdd | Family::SoEven => {
                let disc = disc.unwrap_or(ext.field().one());
                forms_with(ext, Sign::Plus, dim, Some(disc))
            }
            Family::U => forms_with(ext, Sign::Plus, dim, disc.map(|d| ext.reduce(d))),
        };
        let best = candidates.iter().map(|s| s.witt).max();
        candidates
            .into_iter()
            .find(|s| Some(s.witt) == best)
            .ok_or_else(|| Error::NoSuchSpace(format!("{} of dim {dim} with disc {disc:?}", family.name())))
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn ext(&self) -> QuadExt {
        self.space.ext
    }

    pub fn has_maximal_witt_index(&self) -> bool {
        self.space.witt == self.space.dim / 2
            || (self.family == Family::SoEven && self.space.witt + 1 == self.space.dim / 2)
    }

    pub fn orbit_admissible(&self, p1: usize) -> bool {
        self.space.orbit_admissible(p1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "family": self.family.name(),
            "dim": self.dim(),
            "quasi_split": self.quasi_split,
        });
        if self.family.is_orthogonal() {
            v["disc"] = serde_json::json!(self.space.disc().unwrap().tag());
        }
        if !self.quasi_split || self.field_is_real() {
            v["space"] = self.space.to_json();
        }
        v
    }

    fn field_is_real(&self) -> bool {
        self.space.field() == LocalField::Real
    }

    pub fn from_json(ext: QuadExt, v: &serde_json::Value) -> Result<Self> {
        let family = v["family"].as_str().ok_or_else(|| Error::Input("group needs a family".into()))?;
        let dim = v["dim"].as_u64().ok_or_else(|| Error::Input("group needs a dim".into()))? as usize;
        let family = Family::parse(family, dim)?;
        if let Some(space) = v.get("space").filter(|s| !s.is_null()) {
            let space = EpsHermSpace::from_json(ext, space)?;
            if space.dim != dim {
                return Err(Error::Dimension(format!("group dim {dim} but space dim {}", space.dim)));
            }
            return Self::new(family, space);
        }
        let disc = match v.get("disc").and_then(|d| d.as_str()) {
            Some(t) => Some(ext.field().parse_class(t)?),
            None => None,
        };
        Self::quasi_split(family, ext, dim, disc)
    }
}

/// All spaces of a kind with fixed dim (and disc if given), in a fixed order.
fn forms_with(ext: QuadExt, epsilon: Sign, dim: usize, disc: Option<SquareClass>) -> Vec<EpsHermSpace> {
    let field = ext.field();
    let mut out = Vec::new();
    if field == LocalField::Real {
        for q in 0..=dim {
            let s = EpsHermSpace::build_real(ext, epsilon, (dim - q, q));
            if disc.is_none_or(|d| s.disc() == Some(ext.reduce(d))) {
                out.push(s);
            }
        }
        return out;
    }
    let discs = match disc {
        Some(d) => vec![d],
        None => ext.norm_class_group().elements,
    };
    for d in discs {
        let hasses: &[Option<Sign>] = if FormKind::of(ext, epsilon) == FormKind::Symmetric {
            &[Some(Sign::Plus), Some(Sign::Minus)]
        } else {
            &[None]
        };
        for &hasse in hasses {
            let inv = Invariants {
                disc: Some(d),
                hasse,
                signature: None,
            };
            if let Ok(s) = classify(ext, epsilon, dim, &inv) {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Pure inner forms of `G*`: same dim, and same disc in the orthogonal case.
/// Exactly one member (the base space) carries `quasi_split = true`.
pub fn pure_inner_forms(g: &GroupDesc) -> Vec<GroupDesc> {
    let ext = g.ext();
    let disc = if g.family.is_orthogonal() { g.space.disc() } else { None };
    let base = GroupDesc::base_space(g.family, ext, g.dim(), disc).expect("G* is a valid group");
    let spaces = match g.family {
        Family::Sp | Family::Mp => vec![g.space],
        _ => forms_with(ext, g.space.epsilon, g.dim(), disc),
    };
    spaces
        .into_iter()
        .map(|space| GroupDesc {
            family: g.family,
            space,
            quasi_split: space == base,
        })
        .collect()
}

/// The quasi-split group `H*` paired with `G` by an orbit of head `p1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelevantGroup {
    pub family: Family,
    /// Dimension of the space `H` acts on.
    pub dim: usize,
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl RelevantGroup {
    pub fn is_trivial(&self) -> bool {
        self.dim == 0
    }
}

pub fn relevant_pair(g: &GroupDesc, p1: usize) -> Result<RelevantGroup> {
    relevant_family(g.family, g.dim(), p1)
}

pub(crate) fn relevant_family(family: Family, n: usize, p1: usize) -> Result<RelevantGroup> {
    let illegal = || Error::IllegalP1 {
        family: family.name().into(),
        p1,
    };
    if p1 == 0 || p1 > n {
        return Err(illegal());
    }
    let h = match family {
        Family::SoOdd | Family::SoEven if p1 % 2 == 1 => Family::so_of_dim(n - p1),
        Family::Sp if p1 % 2 == 0 => Family::Mp,
        Family::Mp if p1 % 2 == 0 => Family::Sp,
        Family::U => Family::U,
        _ => return Err(illegal()),
    };
    Ok(RelevantGroup { family: h, dim: n - p1 })
}

pub fn orbit_admissible(g: &GroupDesc, p1: usize) -> bool {
    g.orbit_admissible(p1)
}

/// One F-rational orbit of type `[p1, 1^(n-p1)]`, identified by `line_class`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitData {
    pub p1: usize,
    pub m: usize,
    /// `<e,e>` when `p1` is odd, `varsigma` when `p1` is even.
    pub value: SquareClass,
    /// Class of the one-dimensional form `q'_{e,varsigma}`.
    pub line_class: SquareClass,
    pub descended: EpsHermSpace,
}

impl OrbitData {
    /// `mH + <e,e>` for odd `p1`, `mH` for even `p1`.
    pub fn block_space(&self) -> EpsHermSpace {
        let s = &self.descended;
        let h = EpsHermSpace::hyperbolic(s.ext, s.epsilon, self.m);
        if self.p1 % 2 == 1 {
            let line = EpsHermSpace::line(s.ext, s.epsilon, self.value).expect("p1 odd is not alternating");
            h.direct_sum(&line).unwrap()
        } else {
            h
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p1": self.p1,
            "m": self.m,
            "value": self.value.tag(),
            "line_class": self.line_class.tag(),
            "descended_space": self.descended.to_json(),
        })
    }
}

pub fn rational_orbits(space: &EpsHermSpace, p1: usize) -> Result<Vec<OrbitData>> {
    if !space.orbit_admissible(p1) {
        return Err(Error::Inadmissible(p1));
    }
    let ext = space.ext;
    let m = p1 / 2;
    let m1 = space.field().minus_one();
    let v0 = space.remove_hyperbolic(m)?;
    let mut out = Vec::new();
    for c in space.line_classes() {
        if p1 % 2 == 0 {
            out.push(OrbitData {
                p1,
                m,
                value: c,
                line_class: ext.reduce(m1.pow(m as u64 + 1) * c),
                descended: v0,
            });
        } else if let Ok(w) = v0.cancel_line(c) {
            out.push(OrbitData {
                p1,
                m,
                value: c,
                line_class: ext.reduce(m1.pow(m as u64) * c),
                descended: w,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn q(p: u32) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    #[test]
    fn symplectic_dim4() {
        let ext = QuadExt::split(q(3));
        let s = classify(ext, Sign::Minus, 4, &Invariants::default()).unwrap();
        assert_eq!((s.witt(), s.anisotropic_dim()), (2, 0));
        assert!(classify(ext, Sign::Minus, 3, &Invariants::default()).is_err());
    }

    #[test]
    fn hyperbolic_plane_q3() {
        let f = q(3);
        let ext = QuadExt::split(f);
        let inv = Invariants {
            disc: Some(f.one()),
            hasse: Some(Sign::Plus),
            signature: None,
        };
        // disc 1 in dim 2 means det = -1
        let s = classify(ext, Sign::Plus, 2, &inv).unwrap();
        assert_eq!(s.witt(), 1);
        let t = oracle::HilbertTable::new(f);
        let form = [f.one(), f.minus_one()];
        assert_eq!(oracle::diag_invariants(&t, &form), (s.det().unwrap(), s.hasse().unwrap()));
        assert_eq!(oracle::diag_witt_index(&t, &form), 1);
        let (r, an) = s.witt_decompose();
        assert_eq!((r, an.dim()), (1, 0));
    }

    #[test]
    fn hermitian_line_anisotropic() {
        let f = q(3);
        let ext = QuadExt::new(f, f.parse_class("u").unwrap()).unwrap();
        let inv = Invariants {
            disc: Some(f.parse_class("p").unwrap()),
            ..Default::default()
        };
        let s = classify(ext, Sign::Plus, 1, &inv).unwrap();
        assert_eq!(s.witt(), 0);
    }

    #[test]
    fn every_diagonal_form_agrees_with_oracle() {
        for p in [2, 3, 5] {
            let f = q(p);
            let ext = QuadExt::split(f);
            let t = oracle::HilbertTable::new(f);
            for n in 1..=4 {
                for form in oracle::diagonal_forms(f, n) {
                    let (det, hasse) = oracle::diag_invariants(&t, &form);
                    let disc = f.minus_one().pow(tri(n)) * det;
                    let inv = Invariants {
                        disc: Some(disc),
                        hasse: Some(hasse),
                        signature: None,
                    };
                    let s = classify(ext, Sign::Plus, n, &inv).unwrap();
                    assert_eq!(s.witt(), oracle::diag_witt_index(&t, &form), "{form:?}");
                    assert_eq!(s.invariants(), inv);
                }
            }
        }
    }

    #[test]
    fn pure_inner_form_counts() {
        let f = q(3);
        let sp = GroupDesc::quasi_split(Family::Sp, QuadExt::split(f), 4, None).unwrap();
        assert_eq!(pure_inner_forms(&sp).len(), 1);
        let ue = QuadExt::new(f, f.parse_class("u").unwrap()).unwrap();
        let u2 = GroupDesc::quasi_split(Family::U, ue, 2, None).unwrap();
        assert_eq!(pure_inner_forms(&u2).len(), 2);
        let so5 = GroupDesc::quasi_split(Family::SoOdd, QuadExt::split(f), 5, None).unwrap();
        let forms = pure_inner_forms(&so5);
        assert_eq!(forms.len(), 2);
        assert_eq!(forms.iter().filter(|g| g.quasi_split).count(), 1);
        assert_eq!(so5.space.witt(), 2);
    }

    #[test]
    fn relevant_pairs() {
        let f = q(5);
        let sp = GroupDesc::quasi_split(Family::Sp, QuadExt::split(f), 6, None).unwrap();
        assert_eq!(relevant_pair(&sp, 2).unwrap(), RelevantGroup { family: Family::Mp, dim: 4 });
        assert!(relevant_pair(&sp, 3).is_err());
        let ue = QuadExt::new(f, f.parse_class("p").unwrap()).unwrap();
        let u3 = GroupDesc::quasi_split(Family::U, ue, 3, None).unwrap();
        assert!(relevant_pair(&u3, 3).unwrap().is_trivial());
        let so7 = GroupDesc::quasi_split(Family::SoOdd, QuadExt::split(f), 7, None).unwrap();
        assert_eq!(relevant_pair(&so7, 3).unwrap(), RelevantGroup { family: Family::SoEven, dim: 4 });
        assert!(relevant_pair(&so7, 2).is_err());
    }

    #[test]
    fn admissibility_bullets() {
        let f = q(3);
        let so4 = GroupDesc::quasi_split(Family::SoEven, QuadExt::split(f), 4, None).unwrap();
        assert_eq!(so4.space.witt(), 2);
        assert!(so4.orbit_admissible(3));
        assert!(!so4.orbit_admissible(5));
        let ue = QuadExt::new(f, f.parse_class("u").unwrap()).unwrap();
        let an = classify(ue, Sign::Plus, 2, &Invariants { disc: Some(f.parse_class("p").unwrap()), ..Default::default() }).unwrap();
        assert_eq!(an.witt(), 0);
        assert!(!an.orbit_admissible(2));
        assert!(an.orbit_admissible(1));
    }

    #[test]
    fn orbits_sp4_and_so5() {
        let f = q(3);
        let sp = GroupDesc::quasi_split(Family::Sp, QuadExt::split(f), 4, None).unwrap();
        let orbits = rational_orbits(&sp.space, 2).unwrap();
        let lines: std::collections::BTreeSet<_> = orbits.iter().map(|o| o.line_class).collect();
        assert_eq!(lines.len(), 4);
        let so3 = GroupDesc::quasi_split(Family::SoOdd, QuadExt::split(f), 3, None).unwrap();
        for o in rational_orbits(&so3.space, 3).unwrap() {
            assert_eq!(o.descended.dim(), 0);
        }
        let so5 = GroupDesc::quasi_split(Family::SoOdd, QuadExt::split(f), 5, None).unwrap();
        let orbits = rational_orbits(&so5.space, 3).unwrap();
        assert!(!orbits.is_empty());
        for o in &orbits {
            assert_eq!(o.descended.dim(), 2);
            assert_eq!(o.block_space().direct_sum(&o.descended).unwrap(), so5.space);
        }
    }

    #[test]
    fn hyperbolic_plane_keeps_disc_negates_det() {
        let f = q(7);
        let ext = QuadExt::split(f);
        for s in forms_with(ext, Sign::Plus, 3, None) {
            let t = s.add_hyperbolic();
            assert_eq!(t.witt(), s.witt() + 1);
            assert_eq!(t.disc(), s.disc());
            assert_eq!(t.det(), Some(f.minus_one() * s.det().unwrap()));
        }
    }

    #[test]
    fn json_round_trip() {
        let f = q(2);
        let ext = QuadExt::split(f);
        for s in forms_with(ext, Sign::Plus, 4, None) {
            assert_eq!(EpsHermSpace::from_json(ext, &s.to_json()).unwrap(), s);
        }
        let r = QuadExt::split(LocalField::Real);
        let s = classify(r, Sign::Plus, 5, &Invariants { signature: Some((2, 3)), ..Default::default() }).unwrap();
        assert_eq!(EpsHermSpace::from_json(r, &s.to_json()).unwrap(), s);
    }
}
