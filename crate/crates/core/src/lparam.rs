//! Formal L-parameters: an alphabet of irreducibles, simple summands
//! `rho ⊗ mu_b`, good-parity classification, component groups and their
//! characters, twists and contragredients.

use crate::error::{Error, Result};
use crate::hermitian::Family;
use crate::local_field::{QuadExt, SquareClass};
use crate::model::Model;
use crate::sign::Sign;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    Orthogonal,
    Symplectic,
    ConjOrth,
    ConjSymp,
    NonSelfDual,
}

impl Duality {
    pub fn is_self_dual(self) -> bool {
        self != Duality::NonSelfDual
    }

    pub fn is_conjugate(self) -> bool {
        matches!(self, Duality::ConjOrth | Duality::ConjSymp)
    }

    /// Symplectic or conjugate-symplectic.
    pub fn is_symplectic_type(self) -> bool {
        matches!(self, Duality::Symplectic | Duality::ConjSymp)
    }

    pub fn flip(self) -> Self {
        match self {
            Duality::Orthogonal => Duality::Symplectic,
            Duality::Symplectic => Duality::Orthogonal,
            Duality::ConjOrth => Duality::ConjSymp,
            Duality::ConjSymp => Duality::ConjOrth,
            Duality::NonSelfDual => Duality::NonSelfDual,
        }
    }

    /// Type of a tensor product of two (conjugate-)self-dual representations.
    pub fn tensor(self, other: Duality) -> Duality {
        if !self.is_self_dual() || !other.is_self_dual() {
            return Duality::NonSelfDual;
        }
        let symp = self.is_symplectic_type() != other.is_symplectic_type();
        match (self.is_conjugate() || other.is_conjugate(), symp) {
            (false, false) => Duality::Orthogonal,
            (false, true) => Duality::Symplectic,
            (true, false) => Duality::ConjOrth,
            (true, true) => Duality::ConjSymp,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Duality::Orthogonal => "orthogonal",
            Duality::Symplectic => "symplectic",
            Duality::ConjOrth => "conj-orth",
            Duality::ConjSymp => "conj-symp",
            Duality::NonSelfDual => "non-self-dual",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.into())).map_err(|_| Error::Input(format!("unknown duality {s:?}")))
    }
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Alphabet entry as it appears in case files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrSpec {
    pub id: String,
    pub dim: u32,
    pub duality: Duality,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub twists: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pad: bool,
}

impl IrrSpec {
    pub fn new(id: &str, dim: u32, duality: Duality, det: &str) -> Self {
        IrrSpec {
            id: id.into(),
            dim,
            duality,
            det: Some(det.into()),
            partner: None,
            dual: None,
            twists: BTreeMap::new(),
            pad: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIrr {
    pub id: String,
    pub dim: u32,
    pub duality: Duality,
    pub det: SquareClass,
    /// Index of `c(rho)^vee`; the entry itself when conjugate-self-dual.
    pub partner: usize,
    /// Index of `rho^vee`.
    pub dual: usize,
    /// `twists[bits of z]` is the index of `rho ⊗ chi_z`.
    pub twists: Vec<Option<usize>>,
    pub pad: bool,
}

pub const TRIVIAL_ID: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    ext: QuadExt,
    irrs: Vec<FormalIrr>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    /// Builds and validates an alphabet. When `E = F` the trivial character
    /// `"1"` is added if missing.
    pub fn new(ext: QuadExt, specs: &[IrrSpec]) -> Result<Self> {
        let field = ext.field();
        let mut specs = specs.to_vec();
        if ext.is_split() && !specs.iter().any(|s| s.id == TRIVIAL_ID) {
            specs.insert(0, IrrSpec::new(TRIVIAL_ID, 1, Duality::Orthogonal, "1"));
        }
        let mut index = HashMap::new();
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(Error::Alphabet(format!("duplicate id {:?}", s.id)));
            }
        }
        let find = |id: &str| index.get(id).copied().ok_or_else(|| Error::Alphabet(format!("unknown id {id:?}")));
        let mut irrs = Vec::with_capacity(specs.len());
        for s in &specs {
            let bad = |msg: &str| Err(Error::Alphabet(format!("{}: {msg}", s.id)));
            if s.dim == 0 {
                return bad("dimension must be positive");
            }
            if s.duality.is_conjugate() == ext.is_split() && s.duality.is_self_dual() {
                return bad("conjugate-self-dual types occur exactly when E != F");
            }
            let det = match (&s.det, s.duality) {
                (Some(t), _) => field.parse_class(t)?,
                (None, Duality::Symplectic) => field.one(),
                (None, _) if !ext.is_split() => field.one(),
                (None, _) => return bad("det is required when E = F"),
            };
            if s.duality == Duality::Symplectic && (s.dim % 2 == 1 || !det.is_one()) {
                return bad("symplectic irreducibles have even dimension and trivial det");
            }
            let me = index[&s.id];
            let partner = match (&s.partner, s.duality.is_self_dual()) {
                (None, true) => me,
                (Some(p), true) if *p == s.id => me,
                (Some(_), true) => return bad("self-dual entries are their own partner"),
                (None, false) => return bad("non-self-dual entries need a partner"),
                (Some(p), false) => find(p)?,
            };
            if !s.duality.is_self_dual() && partner == me {
                return bad("a non-self-dual entry cannot be its own partner");
            }
            let dual = match &s.dual {
                Some(d) => find(d)?,
                None => partner,
            };
            if !ext.is_split() && !s.twists.is_empty() {
                return bad("twists are only modelled when E = F");
            }
            let mut twists = vec![None; if ext.is_split() { field.class_count() } else { 0 }];
            if ext.is_split() {
                twists[0] = Some(me);
                for (z, t) in &s.twists {
                    let z = field.parse_class(z)?;
                    let t = find(t)?;
                    if z.is_one() && t != me {
                        return bad("twist by the trivial class must be the identity");
                    }
                    twists[z.bits() as usize] = Some(t);
                }
            }
            irrs.push(FormalIrr {
                id: s.id.clone(),
                dim: s.dim,
                duality: s.duality,
                det,
                partner,
                dual,
                twists,
                pad: s.pad,
            });
        }
        let a = Alphabet { ext, irrs, index };
        a.check()?;
        Ok(a)
    }

    fn check(&self) -> Result<()> {
        let field = self.ext.field();
        for (i, r) in self.irrs.iter().enumerate() {
            let bad = |msg: String| Err(Error::Alphabet(format!("{}: {msg}", r.id)));
            let p = &self.irrs[r.partner];
            if p.partner != i || p.dim != r.dim || p.duality != r.duality {
                return bad(format!("partner {} is not a matching involution", p.id));
            }
            if self.ext.is_split() && p.det != r.det {
                return bad(format!("partner {} has a different det", p.id));
            }
            let d = &self.irrs[r.dual];
            if d.dual != i || d.dim != r.dim || d.duality != r.duality {
                return bad(format!("dual {} is not a matching involution", d.id));
            }
            if r.pad && r.duality.is_self_dual() {
                return bad("pad entries must be non-self-dual".into());
            }
            for z in field.square_classes() {
                let Some(t) = r.twists.get(z.bits() as usize).copied().flatten() else {
                    continue;
                };
                let tw = &self.irrs[t];
                if tw.dim != r.dim || tw.duality != r.duality {
                    return bad(format!("twist by {z} changes dim or duality"));
                }
                if tw.det != r.det * z.pow(r.dim as u64) {
                    return bad(format!("det of the twist by {z} should be det * z^dim"));
                }
                match tw.twists.get(z.bits() as usize).copied().flatten() {
                    Some(back) if back != i => return bad(format!("twisting twice by {z} does not return")),
                    _ => {}
                }
                if let Some(pt) = self.irrs[r.partner].twists[z.bits() as usize] {
                    if pt != tw.partner {
                        return bad(format!("twist by {z} does not commute with the partner map"));
                    }
                }
                for w in field.square_classes() {
                    let (Some(a), Some(b)) = (
                        tw.twists.get(w.bits() as usize).copied().flatten(),
                        r.twists.get((z * w).bits() as usize).copied().flatten(),
                    ) else {
                        continue;
                    };
                    if a != b {
                        return bad(format!("twists by {z} and {w} do not compose"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ext(&self) -> QuadExt {
        self.ext
    }

    pub fn len(&self) -> usize {
        self.irrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irrs.is_empty()
    }

    pub fn irrs(&self) -> &[FormalIrr] {
        &self.irrs
    }

    pub fn irr(&self, i: usize) -> &FormalIrr {
        &self.irrs[i]
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.get(id).ok_or_else(|| Error::Alphabet(format!("unknown id {id:?}")))
    }

    pub fn trivial(&self) -> Option<usize> {
        self.get(TRIVIAL_ID)
    }

    pub fn pad(&self) -> Option<usize> {
        self.irrs.iter().position(|r| r.pad)
    }

    /// `rho ⊗ chi_z`.
    pub fn twist(&self, rho: usize, z: SquareClass) -> Result<usize> {
        if z.is_one() {
            return Ok(rho);
        }
        self.irrs[rho]
            .twists
            .get(z.bits() as usize)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Alphabet(format!("twist of {} by {z} leaves the alphabet", self.irrs[rho].id)))
    }

    pub fn to_specs(&self) -> Vec<IrrSpec> {
        let field = self.ext.field();
        self.irrs
            .iter()
            .enumerate()
            .map(|(i, r)| IrrSpec {
                id: r.id.clone(),
                dim: r.dim,
                duality: r.duality,
                det: if self.ext.is_split() { Some(r.det.tag()) } else { None },
                partner: (r.partner != i).then(|| self.irrs[r.partner].id.clone()),
                dual: (r.dual != r.partner).then(|| self.irrs[r.dual].id.clone()),
                twists: field
                    .square_classes()
                    .into_iter()
                    .filter(|z| !z.is_one())
                    .filter_map(|z| {
                        r.twists.get(z.bits() as usize).copied().flatten().map(|t| (z.tag(), self.irrs[t].id.clone()))
                    })
                    .collect(),
                pad: r.pad,
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSummand {
    pub rho: usize,
    pub b: u32,
}

impl SimpleSummand {
    pub fn new(rho: usize, b: u32) -> Self {
        SimpleSummand { rho, b }
    }

    pub fn dim(&self, alph: &Alphabet) -> u32 {
        alph.irr(self.rho).dim * self.b
    }

    /// `det(rho ⊗ mu_b) = det(rho)^b`.
    pub fn det(&self, alph: &Alphabet) -> SquareClass {
        alph.irr(self.rho).det.pow(self.b as u64)
    }

    pub fn duality(&self, alph: &Alphabet) -> Duality {
        summand_duality(alph.irr(self.rho), self.b)
    }

    pub fn label(&self, alph: &Alphabet) -> String {
        format!("{}⊗μ{}", alph.irr(self.rho).id, self.b)
    }
}

/// `mu_b` is orthogonal for odd `b` and symplectic for even `b`.
pub fn summand_duality(rho: &FormalIrr, b: u32) -> Duality {
    if b % 2 == 0 {
        rho.duality.flip()
    } else {
        rho.duality
    }
}

pub type Summands = Vec<(SimpleSummand, u32)>;

/// Sorts and merges a summand list.
pub fn canonical(list: &[(SimpleSummand, u32)]) -> Summands {
    let mut m: BTreeMap<SimpleSummand, u32> = BTreeMap::new();
    for &(s, k) in list {
        *m.entry(s).or_default() += k;
    }
    m.into_iter().filter(|&(_, k)| k > 0).collect()
}

/// Index sets of the decomposition into good parity, bad parity and
/// non-self-dual summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classified {
    pub gp: Vec<usize>,
    pub bp: Vec<usize>,
    pub nsd: Vec<usize>,
}

pub fn classify_list(alph: &Alphabet, kind: Duality, list: &[(SimpleSummand, u32)]) -> Classified {
    let mut c = Classified::default();
    for (i, (s, _)) in list.iter().enumerate() {
        let d = s.duality(alph);
        if d == kind {
            c.gp.push(i);
        } else if d.is_self_dual() {
            c.bp.push(i);
        } else {
            c.nsd.push(i);
        }
    }
    c
}

pub(crate) fn list_dim(alph: &Alphabet, list: &[(SimpleSummand, u32)]) -> usize {
    list.iter().map(|&(s, m)| (s.dim(alph) * m) as usize).sum()
}

pub(crate) fn list_det(alph: &Alphabet, list: &[(SimpleSummand, u32)]) -> SquareClass {
    let one = alph.ext().field().one();
    list.iter().fold(one, |d, &(s, m)| d * s.det(alph).pow(m as u64))
}

/// Kind of the parameter attached to each family.
pub fn family_kind(family: Family) -> Option<Duality> {
    match family {
        Family::SoOdd | Family::Mp => Some(Duality::Symplectic),
        Family::SoEven | Family::Sp => Some(Duality::Orthogonal),
        Family::U => None,
    }
}

/// Dimension of the space a group of `family` acts on, given its parameter's dimension.
pub fn space_dim(family: Family, param_dim: usize) -> usize {
    match family {
        Family::SoOdd => param_dim + 1,
        Family::Sp => param_dim - 1,
        _ => param_dim,
    }
}

/// Dimension of the parameter of a group of `family` acting on a space of dim `n`.
pub fn param_dim(family: Family, n: usize) -> Result<usize> {
    match family {
        Family::SoOdd if n % 2 == 1 => Ok(n - 1),
        Family::SoEven if n % 2 == 0 => Ok(n),
        Family::Sp | Family::Mp if n % 2 == 0 => Ok(if family == Family::Sp { n + 1 } else { n }),
        Family::U => Ok(n),
        _ => Err(Error::Dimension(format!("{} cannot act on a space of dim {n}", family.name()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parameter {
    family: Family,
    kind: Duality,
    summands: Summands,
    disc: Option<SquareClass>,
    dim: usize,
    det: SquareClass,
    generic: bool,
}

impl Parameter {
    /// Validated parameter of a group of `family`. `kind` is only needed for
    /// `U`, where it defaults to the sign of the summands (or `(-1)^(n-1)`).
    /// `disc` is the discriminant of the orthogonal space: it must equal the
    /// determinant for `SO_even` and defaults to `1` for `SO_odd`.
    pub fn new(
        alph: &Alphabet,
        family: Family,
        kind: Option<Duality>,
        summands: &[(SimpleSummand, u32)],
        disc: Option<SquareClass>,
    ) -> Result<Self> {
        Self::build(alph, family, kind, summands, disc, true)
    }

    fn build(
        alph: &Alphabet,
        family: Family,
        kind: Option<Duality>,
        summands: &[(SimpleSummand, u32)],
        disc: Option<SquareClass>,
        check_det: bool,
    ) -> Result<Self> {
        let ext = alph.ext();
        let field = ext.field();
        if (family == Family::U) == ext.is_split() {
            return Err(Error::TypeMismatch(format!("{} parameters need {}", family.name(), if family == Family::U { "E != F" } else { "E = F" })));
        }
        for &(s, m) in summands {
            if s.rho >= alph.len() || s.b == 0 || m == 0 {
                return Err(Error::Parameter("summands need a known irreducible, b >= 1 and multiplicity >= 1".into()));
            }
        }
        let summands = canonical(summands);
        let dim = list_dim(alph, &summands);
        let kind = match (family_kind(family), kind) {
            (Some(k), None) => k,
            (Some(k), Some(g)) if k == g => k,
            (Some(k), Some(g)) => {
                return Err(Error::TypeMismatch(format!("{} parameters are {k}, not {g}", family.name())));
            }
            (None, Some(g)) if g.is_conjugate() => g,
            (None, Some(g)) => return Err(Error::TypeMismatch(format!("U parameters cannot be {g}"))),
            (None, None) => summands
                .iter()
                .map(|(s, m)| (s.duality(alph), m))
                .find(|(d, m)| d.is_self_dual() && *m % 2 == 1)
                .map(|(d, _)| d)
                .unwrap_or(if dim % 2 == 1 { Duality::ConjOrth } else { Duality::ConjSymp }),
        };
        let lookup: HashMap<SimpleSummand, u32> = summands.iter().copied().collect();
        for &(s, m) in &summands {
            let d = s.duality(alph);
            if d == kind {
                continue;
            }
            let label = s.label(alph);
            if d.is_self_dual() {
                if m % 2 == 1 {
                    return Err(Error::Parameter(format!("bad-parity summand {label} has odd multiplicity {m}")));
                }
            } else {
                let p = SimpleSummand::new(alph.irr(s.rho).partner, s.b);
                if lookup.get(&p) != Some(&m) {
                    return Err(Error::Parameter(format!("{label} is not paired with {} at multiplicity {m}", p.label(alph))));
                }
            }
        }
        let det = if ext.is_split() { list_det(alph, &summands) } else { field.one() };
        let disc = match family {
            Family::SoOdd => Some(disc.unwrap_or(field.one())),
            Family::SoEven => {
                if check_det && disc.is_some_and(|d| d != det) {
                    return Err(Error::Parameter(format!("det {det} does not match disc {}", disc.unwrap())));
                }
                Some(disc.unwrap_or(det))
            }
            _ => None,
        };
        let parity_ok = match family {
            Family::SoEven | Family::SoOdd | Family::Mp => dim % 2 == 0,
            Family::Sp => dim % 2 == 1,
            Family::U => true,
        };
        if !parity_ok {
            return Err(Error::Dimension(format!("{} parameter of dim {dim}", family.name())));
        }
        if check_det && family == Family::Sp && !det.is_one() {
            return Err(Error::Parameter(format!("Sp parameters have trivial det, got {det}")));
        }
        Ok(Parameter {
            family,
            kind,
            summands,
            disc,
            dim,
            det,
            generic: true,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kind(&self) -> Duality {
        self.kind
    }

    pub fn summands(&self) -> &[(SimpleSummand, u32)] {
        &self.summands
    }

    pub fn disc(&self) -> Option<SquareClass> {
        self.disc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn det(&self) -> SquareClass {
        self.det
    }

    pub fn generic(&self) -> bool {
        self.generic
    }

    pub fn set_generic(&mut self, g: bool) {
        self.generic = g;
    }

    /// Dimension `n` of the space of the group.
    pub fn space_dim(&self) -> usize {
        space_dim(self.family, self.dim)
    }

    pub fn classify_summands(&self, alph: &Alphabet) -> Classified {
        classify_list(alph, self.kind, &self.summands)
    }

    pub fn component_group(&self, alph: &Alphabet) -> ComponentGroup {
        ComponentGroup::of_list(alph, self.family, self.kind, &self.summands)
    }

    /// Multiplicity-free with only good-parity summands.
    pub fn is_discrete(&self, alph: &Alphabet) -> bool {
        self.summands.iter().all(|&(s, m)| m == 1 && s.duality(alph) == self.kind)
    }

    /// Every formal parameter is tempered; exponents only occur in standard modules.
    pub fn is_tempered(&self) -> bool {
        true
    }

    /// `phi ⊗ chi_z`. For `Sp` the result has det `z` and is not itself an
    /// `Sp` parameter; it is only used inside character formulas.
    pub fn twist(&self, alph: &Alphabet, z: SquareClass) -> Result<Parameter> {
        let list = twist_list(alph, &self.summands, z)?;
        let mut p = Self::build(alph, self.family, Some(self.kind), &list, self.disc, false)?;
        p.generic = self.generic;
        Ok(p)
    }

    /// `phi^vee`.
    pub fn dual(&self, alph: &Alphabet) -> Result<Parameter> {
        let list: Summands = self.summands.iter().map(|&(s, m)| (SimpleSummand::new(alph.irr(s.rho).dual, s.b), m)).collect();
        let mut p = Self::build(alph, self.family, Some(self.kind), &list, self.disc, true)?;
        p.generic = self.generic;
        Ok(p)
    }

    /// Adds summands (keeping family, kind and disc) and re-validates.
    pub fn with_added(&self, alph: &Alphabet, extra: &[(SimpleSummand, u32)]) -> Result<Parameter> {
        let mut list = self.summands.clone();
        list.extend_from_slice(extra);
        Self::build(alph, self.family, Some(self.kind), &list, self.disc, true)
    }

    pub fn to_json(&self, alph: &Alphabet) -> Value {
        let mut v = json!({
            "family": self.family.name(),
            "kind": self.kind.name(),
            "summands": self.summands.iter().map(|&(s, m)| json!([alph.irr(s.rho).id, s.b, m])).collect::<Vec<_>>(),
        });
        if let Some(d) = self.disc {
            v["disc"] = json!(d.tag());
        }
        v
    }

    /// Parses `{"summands": [[id, b, mult], ...], "sign"?, "kind"?, "disc"?}`.
    pub fn from_json(alph: &Alphabet, family: Option<Family>, v: &Value) -> Result<Parameter> {
        let field = alph.ext().field();
        let list = v["summands"].as_array().ok_or_else(|| Error::Input("parameter needs a summands array".into()))?;
        let mut summands = Vec::new();
        for e in list {
            let bad = || Error::Input(format!("summand entries are [id, b, mult], got {e}"));
            let a = e.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let id = a[0].as_str().ok_or_else(bad)?;
            let b = a[1].as_u64().filter(|&b| b >= 1).ok_or_else(bad)? as u32;
            let m = a[2].as_u64().filter(|&m| m >= 1).ok_or_else(bad)? as u32;
            summands.push((SimpleSummand::new(alph.lookup(id)?, b), m));
        }
        let family = match (family, v.get("family").and_then(Value::as_str)) {
            (Some(f), _) => f,
            (None, Some(name)) => {
                let d = list_dim(alph, &summands);
                let kind = v.get("kind").and_then(Value::as_str).map(Duality::parse).transpose()?;
                let n = if name == "SO" && kind == Some(Duality::Symplectic) { d + 1 } else { d };
                Family::parse(name, n)?
            }
            (None, None) => return Err(Error::Input("parameter needs a family".into())),
        };
        let mut kind = v.get("kind").and_then(Value::as_str).map(Duality::parse).transpose()?;
        if let Some(s) = v.get("sign").and_then(Value::as_i64) {
            kind = Some(match s {
                1 => Duality::ConjOrth,
                -1 => Duality::ConjSymp,
                _ => return Err(Error::Input("sign must be 1 or -1".into())),
            });
        }
        let disc = v.get("disc").and_then(Value::as_str).map(|t| field.parse_class(t)).transpose()?;
        Parameter::new(alph, family, kind, &summands, disc)
    }
}

/// Order-preserving `list ⊗ chi_z`, so that coordinates stay aligned.
pub fn twist_list(alph: &Alphabet, list: &[(SimpleSummand, u32)], z: SquareClass) -> Result<Summands> {
    list.iter().map(|&(s, m)| Ok((SimpleSummand::new(alph.twist(s.rho, z)?, s.b), m))).collect()
}

/// The component group `S_phi` inside `A_phi = Z_2^{I_gp}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGroup {
    basis: Vec<SimpleSummand>,
    dims: Vec<u32>,
    constrained: bool,
}

/// A character of `S_phi`, stored on the `A_phi` basis (bit `i` set means
/// value `-1` on coordinate `i`) and normalised modulo the characters that
/// are trivial on `S_phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CharacterVec {
    bits: u64,
}

impl CharacterVec {
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn value(self, i: usize) -> Sign {
        Sign::from_bool_minus(self.bits >> i & 1 == 1)
    }

    pub fn eval(self, e: u64) -> Sign {
        Sign::from_bool_minus((self.bits & e).count_ones() % 2 == 1)
    }
}

impl ComponentGroup {
    pub fn of_list(alph: &Alphabet, family: Family, kind: Duality, list: &[(SimpleSummand, u32)]) -> Self {
        let gp = classify_list(alph, kind, list).gp;
        let basis: Vec<SimpleSummand> = gp.iter().map(|&i| list[i].0).collect();
        let dims: Vec<u32> = basis.iter().map(|s| s.dim(alph)).collect();
        let has_odd = dims.iter().any(|d| d % 2 == 1);
        assert!(basis.len() <= 64, "at most 64 good-parity summands");
        ComponentGroup {
            basis,
            dims,
            constrained: matches!(family, Family::Sp | Family::SoEven) && has_odd,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SimpleSummand] {
        &self.basis
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn is_constrained(&self) -> bool {
        self.constrained
    }

    /// Coordinates of odd dimension.
    pub fn kappa(&self) -> u64 {
        self.dims.iter().enumerate().filter(|(_, d)| *d % 2 == 1).fold(0, |k, (i, _)| k | 1 << i)
    }

    fn full(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    pub fn contains(&self, e: u64) -> bool {
        e & !self.full() == 0 && (!self.constrained || (e & self.kappa()).count_ones() % 2 == 0)
    }

    pub fn elements(&self) -> Vec<u64> {
        (0..=self.full()).filter(|&e| self.contains(e)).collect()
    }

    pub fn order(&self) -> u64 {
        let k = self.rank() as u32;
        if self.constrained {
            1 << (k - 1)
        } else {
            1 << k
        }
    }

    pub fn normalize(&self, bits: u64) -> CharacterVec {
        let mut bits = bits & self.full();
        if self.constrained {
            let k = self.kappa();
            let first = k & k.wrapping_neg();
            if bits & first != 0 {
                bits ^= k;
            }
        }
        CharacterVec { bits }
    }

    pub fn trivial(&self) -> CharacterVec {
        CharacterVec::default()
    }

    pub fn mul(&self, a: CharacterVec, b: CharacterVec) -> CharacterVec {
        self.normalize(a.bits ^ b.bits)
    }

    pub fn from_signs(&self, signs: &[Sign]) -> CharacterVec {
        let bits = signs.iter().enumerate().filter(|(_, s)| s.is_minus()).fold(0, |b, (i, _)| b | 1 << i);
        self.normalize(bits)
    }

    /// All characters of `S_phi`, one representative each.
    pub fn characters(&self) -> Vec<CharacterVec> {
        (0..=self.full()).map(|b| self.normalize(b)).filter(|c| c.bits == (c.bits & self.full())).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn index_of(&self, s: SimpleSummand) -> Option<usize> {
        self.basis.iter().position(|&t| t == s)
    }

    /// Transports a character along a bijection of summands.
    pub fn remap(&self, ch: CharacterVec, target: &ComponentGroup, f: impl Fn(SimpleSummand) -> SimpleSummand) -> Result<CharacterVec> {
        let mut bits = 0;
        for (i, &s) in self.basis.iter().enumerate() {
            if ch.value(i).is_minus() {
                let j = target
                    .index_of(f(s))
                    .ok_or_else(|| Error::Parameter("component groups do not correspond".into()))?;
                bits |= 1 << j;
            }
        }
        Ok(target.normalize(bits))
    }

    pub fn to_json(&self, alph: &Alphabet, ch: CharacterVec) -> Value {
        let m: serde_json::Map<String, Value> =
            self.basis.iter().enumerate().map(|(i, s)| (s.label(alph), json!(ch.value(i).to_i8()))).collect();
        json!({ "chi": m })
    }

    /// Parses `{"chi": {"rho⊗μb": ±1}}`; omitted coordinates are `+1`. The
    /// bare map and a list of signs in basis order are accepted too.
    pub fn from_json(&self, alph: &Alphabet, v: &Value) -> Result<CharacterVec> {
        let v = v.get("chi").unwrap_or(v);
        let sign = |x: &Value| {
            x.as_i64()
                .and_then(Sign::from_i64)
                .ok_or_else(|| Error::Input(format!("character values are 1 or -1, got {x}")))
        };
        match v {
            Value::Null => Ok(self.trivial()),
            Value::Array(a) => {
                if a.len() != self.rank() {
                    return Err(Error::Input(format!("character needs {} values", self.rank())));
                }
                Ok(self.from_signs(&a.iter().map(sign).collect::<Result<Vec<_>>>()?))
            }
            Value::Object(m) => {
                let mut signs = vec![Sign::Plus; self.rank()];
                for (k, x) in m {
                    let i = self
                        .basis
                        .iter()
                        .position(|s| s.label(alph) == *k)
                        .ok_or_else(|| Error::Input(format!("{k:?} is not a good-parity summand")))?;
                    signs[i] = sign(x)?;
                }
                Ok(self.from_signs(&signs))
            }
            _ => Err(Error::Input("a character is a map or a list of signs".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedParameter {
    pub phi: Parameter,
    pub mu: CharacterVec,
}

impl EnhancedParameter {
    pub fn new(alph: &Alphabet, phi: Parameter, mu_bits: u64) -> Self {
        let mu = phi.component_group(alph).normalize(mu_bits);
        EnhancedParameter { phi, mu }
    }

    pub fn trivial(alph: &Alphabet, phi: Parameter) -> Self {
        Self::new(alph, phi, 0)
    }

    pub fn component_group(&self, alph: &Alphabet) -> ComponentGroup {
        self.phi.component_group(alph)
    }

    /// `(phi, mu · eta_a)`.
    pub fn eta_twist(&self, model: &Model, a: SquareClass) -> Result<EnhancedParameter> {
        let cg = self.component_group(&model.alphabet);
        let eta = crate::ggp::eta(model, &self.phi, a)?;
        Ok(EnhancedParameter {
            phi: self.phi.clone(),
            mu: cg.mul(self.mu, eta),
        })
    }

    /// The contragredient, case by case for SO, Sp, Mp and U.
    pub fn contragredient(&self, model: &Model) -> Result<EnhancedParameter> {
        let alph = &model.alphabet;
        let field = alph.ext().field();
        let m1 = field.minus_one();
        match self.phi.family {
            Family::SoOdd | Family::SoEven => Ok(self.clone()),
            Family::Sp => self.eta_twist(model, m1),
            Family::Mp => {
                let twisted = self.eta_twist(model, m1)?;
                let phi = self.phi.twist(alph, m1)?;
                let cg = self.component_group(alph);
                let mu = cg.remap(twisted.mu, &phi.component_group(alph), |s| {
                    SimpleSummand::new(alph.twist(s.rho, m1).expect("twist checked above"), s.b)
                })?;
                Ok(EnhancedParameter { phi, mu })
            }
            Family::U => {
                let phi = self.phi.dual(alph)?;
                let cg = self.component_group(alph);
                let target = phi.component_group(alph);
                let mu = cg.remap(self.mu, &target, |s| SimpleSummand::new(alph.irr(s.rho).dual, s.b))?;
                let mut out = EnhancedParameter { phi, mu };
                if self.phi.space_dim() % 2 == 0 {
                    out = out.eta_twist(model, m1)?;
                }
                Ok(out)
            }
        }
    }

    /// `{mu · eta_z : z in Z}`.
    pub fn z_orbit(&self, model: &Model) -> Result<Vec<CharacterVec>> {
        let mut out = BTreeSet::new();
        for z in model.alphabet.ext().norm_class_group().elements {
            out.insert(self.eta_twist(model, z)?.mu);
        }
        Ok(out.into_iter().collect())
    }

    pub fn is_discrete(&self, alph: &Alphabet) -> bool {
        self.phi.is_discrete(alph)
    }

    pub fn to_json(&self, alph: &Alphabet) -> Value {
        let mut v = self.phi.to_json(alph);
        v["mu"] = self.component_group(alph).to_json(alph, self.mu);
        v
    }

    pub fn from_json(alph: &Alphabet, family: Option<Family>, v: &Value) -> Result<Self> {
        let phi = Parameter::from_json(alph, family, v)?;
        let mu = phi.component_group(alph).from_json(alph, v.get("mu").unwrap_or(&Value::Null))?;
        Ok(EnhancedParameter { phi, mu })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::LocalField;

    fn q3() -> LocalField {
        LocalField::padic(3).unwrap()
    }

    fn alph_q3() -> Alphabet {
        let f = q3();
        let mut specs = vec![
            IrrSpec::new("1", 1, Duality::Orthogonal, "1"),
            IrrSpec::new("chi_u", 1, Duality::Orthogonal, "u"),
            IrrSpec::new("chi_p", 1, Duality::Orthogonal, "p"),
            IrrSpec::new("chi_up", 1, Duality::Orthogonal, "up"),
            IrrSpec::new("s", 2, Duality::Symplectic, "1"),
            IrrSpec::new("o3", 3, Duality::Orthogonal, "1"),
        ];
        let chars = ["1", "chi_u", "chi_p", "chi_up"];
        let tags = ["1", "u", "p", "up"];
        for (i, c) in chars.iter().enumerate() {
            for (j, t) in tags.iter().enumerate().skip(1) {
                let a = f.parse_class(tags[i]).unwrap();
                let b = f.parse_class(t).unwrap();
                let k = tags.iter().position(|x| f.parse_class(x).unwrap() == a * b).unwrap();
                specs[i].twists.insert(tags[j].into(), chars[k].into());
                let _ = c;
            }
        }
        let mut nsd = IrrSpec::new("lam", 1, Duality::NonSelfDual, "1");
        nsd.partner = Some("lam'".into());
        nsd.pad = true;
        let mut nsd2 = IrrSpec::new("lam'", 1, Duality::NonSelfDual, "1");
        nsd2.partner = Some("lam".into());
        specs.push(nsd);
        specs.push(nsd2);
        Alphabet::new(QuadExt::split(f), &specs).unwrap()
    }

    fn ss(a: &Alphabet, id: &str, b: u32) -> SimpleSummand {
        SimpleSummand::new(a.lookup(id).unwrap(), b)
    }

    #[test]
    fn duality_of_summands() {
        let a = alph_q3();
        assert_eq!(ss(&a, "1", 1).duality(&a), Duality::Orthogonal);
        assert_eq!(ss(&a, "s", 2).duality(&a), Duality::Orthogonal);
        assert_eq!(ss(&a, "s", 1).duality(&a), Duality::Symplectic);
        let co = FormalIrr {
            id: "x".into(),
            dim: 1,
            duality: Duality::ConjOrth,
            det: q3().one(),
            partner: 0,
            dual: 0,
            twists: vec![],
            pad: false,
        };
        assert_eq!(summand_duality(&co, 2), Duality::ConjSymp);
    }

    #[test]
    fn classification_and_group_sizes() {
        let a = alph_q3();
        // Sp4: orthogonal dim 5, dims {1,1,3}
        let phi = Parameter::new(&a, Family::Sp, None, &[(ss(&a, "chi_u", 1), 1), (ss(&a, "chi_p", 1), 1), (ss(&a, "chi_up", 3), 1)], None).unwrap();
        assert_eq!(phi.component_group(&a).order(), 4);
        assert!(phi.is_discrete(&a));
        let phi = Parameter::new(&a, Family::Sp, None, &[(ss(&a, "chi_u", 1), 1), (ss(&a, "chi_p", 1), 1), (ss(&a, "chi_up", 1), 3)], None).unwrap();
        assert!(!phi.is_discrete(&a));
        let phi = Parameter::new(&a, Family::Sp, None, &[(ss(&a, "chi_u", 1), 1), (ss(&a, "chi_p", 1), 1), (ss(&a, "o3", 1), 1)], None);
        // det = u * p * 1 = up != 1
        assert!(phi.is_err());
        let phi = Parameter::new(&a, Family::Sp, None, &[(ss(&a, "chi_u", 1), 1), (ss(&a, "chi_u", 3), 1), (ss(&a, "1", 1), 1)], None).unwrap();
        let cg = phi.component_group(&a);
        assert_eq!(cg.dims(), &[1, 1, 3]);
        assert_eq!(cg.order(), 4);
        assert_eq!(cg.elements().len(), 4);
        assert_eq!(cg.characters().len(), 4);
        // a symplectic bad-parity summand with even multiplicity
        let phi = Parameter::new(&a, Family::Sp, None, &[(ss(&a, "1", 1), 1), (ss(&a, "s", 1), 2)], None).unwrap();
        let c = phi.classify_summands(&a);
        assert_eq!((c.gp.len(), c.bp.len(), c.nsd.len()), (1, 1, 0));
        assert!(!phi.is_discrete(&a));
        assert!(Parameter::new(&a, Family::Sp, None, &[(ss(&a, "1", 1), 1), (ss(&a, "s", 1), 1)], None).is_err());
    }

    #[test]
    fn nsd_pairs_must_match() {
        let a = alph_q3();
        let ok = Parameter::new(&a, Family::Mp, None, &[(ss(&a, "lam", 1), 1), (ss(&a, "lam'", 1), 1)], None).unwrap();
        assert_eq!(ok.classify_summands(&a).nsd.len(), 2);
        assert_eq!(ok.component_group(&a).order(), 1);
        assert!(Parameter::new(&a, Family::Mp, None, &[(ss(&a, "lam", 1), 2)], None).is_err());
    }

    #[test]
    fn twist_is_an_involution() {
        let a = alph_q3();
        let f = q3();
        let phi = Parameter::new(&a, Family::SoEven, None, &[(ss(&a, "chi_u", 1), 1), (ss(&a, "chi_p", 1), 1)], None).unwrap();
        for z in f.square_classes() {
            let t = phi.twist(&a, z).unwrap();
            assert_eq!(t.twist(&a, z).unwrap(), phi);
            assert_eq!(t.det(), phi.det() * z.pow(2));
        }
        assert_eq!(phi.twist(&a, f.one()).unwrap(), phi);
    }

    #[test]
    fn characters_modulo_kappa() {
        let a = alph_q3();
        let phi = Parameter::new(&a, Family::SoEven, None, &[(ss(&a, "chi_u", 1), 1), (ss(&a, "chi_p", 1), 1)], None).unwrap();
        let cg = phi.component_group(&a);
        assert!(cg.is_constrained());
        assert_eq!(cg.normalize(0b11), cg.trivial());
        assert_eq!(cg.normalize(0b01), cg.normalize(0b10));
        let js = cg.to_json(&a, cg.normalize(0b10));
        assert_eq!(cg.from_json(&a, &js).unwrap(), cg.normalize(0b10));
    }

    #[test]
    fn json_round_trip() {
        let a = alph_q3();
        let phi = Parameter::new(&a, Family::SoOdd, None, &[(ss(&a, "s", 1), 1), (ss(&a, "1", 2), 1)], None).unwrap();
        assert_eq!(Parameter::from_json(&a, None, &phi.to_json(&a)).unwrap(), phi);
        let b = Alphabet::new(a.ext(), &a.to_specs()).unwrap();
        assert_eq!(a, b);
    }
}
