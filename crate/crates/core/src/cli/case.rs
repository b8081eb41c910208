//! Case files (`"schema": 1`) and the seeded case generator.

use crate::descent::{CandidateClass, SearchConfig};
use crate::epsilon::{validate_table, EpsilonTable};
use crate::error::{Error, Result};
use crate::hermitian::{Family, GroupDesc};
use crate::local_field::{LocalField, SquareClass};
use crate::lparam::{Alphabet, CharacterVec, Duality, EnhancedParameter, IrrSpec, Parameter};
use crate::model::Model;
use crate::random::{random_parameter, random_split_model, random_unitary_model};
use crate::spectrum::PacketEntry;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

/// Default field for case files that omit `"field"`.
pub const FIELD_ENV: &str = "LDESCENT_FIELD";

pub fn env_field() -> Result<Option<LocalField>> {
    match std::env::var(FIELD_ENV) {
        Ok(s) if !s.trim().is_empty() => LocalField::parse(&s).map(Some),
        _ => Ok(None),
    }
}

pub fn desk_fields() -> Vec<LocalField> {
    vec![
        LocalField::PAdic(2),
        LocalField::PAdic(3),
        LocalField::PAdic(5),
        LocalField::PAdic(7),
        LocalField::Real,
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFile {
    pub model: Model,
    pub group: GroupDesc,
    pub phi: Parameter,
    pub mu: CharacterVec,
    pub whittaker: SquareClass,
    pub search: SearchConfig,
    pub seed: Option<u64>,
}

impl CaseFile {
    pub fn field(&self) -> LocalField {
        self.model.field()
    }

    pub fn entry(&self) -> PacketEntry {
        PacketEntry::new(&self.model, self.phi.clone(), self.mu, self.whittaker)
    }

    /// The enhanced parameter labelled relative to the datum `1`.
    pub fn enhanced(&self) -> Result<EnhancedParameter> {
        self.entry().normalized(&self.model)
    }

    pub fn to_json(&self) -> Value {
        let alph = &self.model.alphabet;
        let mut v = json!({
            "schema": SCHEMA,
            "field": self.field(),
            "ext": alph.ext().to_json(),
            "alphabet": alph.to_specs(),
            "group": self.group.to_json(),
            "parameter": self.phi.to_json(alph),
            "mu": self.phi.component_group(alph).to_json(alph, self.mu),
            "whittaker": self.whittaker.tag(),
            "search": search_to_json(alph, &self.search),
        });
        let t = self.model.eps.to_json(alph);
        for k in ["eps_pairs", "eps_singles", "regular"] {
            v[k] = t[k].clone();
        }
        if !self.phi.generic() {
            v["parameter"]["generic"] = json!(false);
        }
        if let Some(s) = self.seed {
            v["seed"] = json!(s);
        }
        v
    }

    pub fn from_json(v: &Value, default_field: Option<LocalField>) -> Result<CaseFile> {
        if let Some(s) = v.get("schema") {
            if s.as_u64() != Some(SCHEMA) {
                return Err(Error::Input(format!("unsupported schema {s}")));
            }
        }
        let field = match v.get("field") {
            Some(f) => serde_json::from_value(f.clone()).map_err(|e| Error::Input(format!("field: {e}")))?,
            None => default_field.ok_or_else(|| Error::Input(format!("no field given and {FIELD_ENV} is unset")))?,
        };
        let ext = crate::local_field::QuadExt::from_json(field, v.get("ext").unwrap_or(&Value::Null))?;
        let specs: Vec<IrrSpec> = serde_json::from_value(v.get("alphabet").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::Input(format!("alphabet: {e}")))?;
        let alph = Alphabet::new(ext, &specs)?;
        let eps = EpsilonTable::from_json(&alph, v)?;
        let model = Model::new(alph, eps);
        let problems = validate_table(&model);
        if !problems.is_empty() {
            return Err(Error::Epsilon(problems.join("; ")));
        }
        let alph = &model.alphabet;
        let group = v.get("group").filter(|g| !g.is_null()).map(|g| GroupDesc::from_json(ext, g)).transpose()?;
        let mut pv = v.get("parameter").cloned().ok_or_else(|| Error::Input("case needs a parameter".into()))?;
        if let Some(g) = &group {
            if g.family.is_orthogonal() && pv.get("disc").is_none() {
                pv["disc"] = json!(g.space.disc().expect("orthogonal spaces have a disc").tag());
            }
        }
        let mut phi = Parameter::from_json(alph, group.map(|g| g.family), &pv)?;
        phi.set_generic(pv.get("generic").and_then(Value::as_bool).unwrap_or(true));
        let group = match group {
            Some(g) => g,
            None => GroupDesc::quasi_split(phi.family(), ext, phi.space_dim(), phi.disc())?,
        };
        if group.family != phi.family() || group.dim() != phi.space_dim() {
            return Err(Error::Dimension(format!(
                "parameter is for {}({}), group is {}({})",
                phi.family().name(),
                phi.space_dim(),
                group.family.name(),
                group.dim()
            )));
        }
        if group.family.is_orthogonal() && group.space.disc() != phi.disc() {
            return Err(Error::Parameter("parameter and group have different discriminants".into()));
        }
        let mu = phi.component_group(alph).from_json(alph, v.get("mu").unwrap_or(&Value::Null))?;
        let whittaker = match v.get("whittaker").and_then(Value::as_str) {
            Some(t) => field.parse_class(t)?,
            None => field.one(),
        };
        let search = search_from_json(alph, v.get("search").unwrap_or(&Value::Null))?;
        let seed = v.get("seed").and_then(Value::as_u64);
        Ok(CaseFile {
            model,
            group,
            phi,
            mu,
            whittaker: ext.reduce(whittaker),
            search,
            seed,
        })
    }
}

pub fn search_to_json(alph: &Alphabet, cfg: &SearchConfig) -> Value {
    let mut v = json!({
        "max_dim": cfg.max_dim,
        "max_summands": cfg.max_summands,
        "max_b": cfg.max_b,
        "class": cfg.class,
    });
    if let Some(c) = &cfg.candidates {
        v["candidates"] = json!(c.iter().map(|&i| alph.irr(i).id.clone()).collect::<Vec<_>>());
    }
    if let Some(z) = &cfg.z {
        v["z"] = json!(z.iter().map(|c| c.tag()).collect::<Vec<_>>());
    }
    v
}

pub fn search_from_json(alph: &Alphabet, v: &Value) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::default();
    if v.is_null() {
        return Ok(cfg);
    }
    let num = |k: &str| v.get(k).map(|x| x.as_u64().ok_or_else(|| Error::Input(format!("search.{k} must be a number"))));
    if let Some(x) = num("max_dim") {
        cfg.max_dim = x? as usize;
    }
    if let Some(x) = num("max_summands") {
        cfg.max_summands = x? as usize;
    }
    if let Some(x) = num("max_b") {
        cfg.max_b = x? as u32;
    }
    if let Some(c) = v.get("class").filter(|c| !c.is_null()) {
        cfg.class = serde_json::from_value(c.clone()).map_err(|e| Error::Input(format!("search.class: {e}")))?;
    }
    if let Some(c) = v.get("candidates").and_then(Value::as_array) {
        let ids = c
            .iter()
            .map(|x| x.as_str().ok_or_else(|| Error::Input("candidate ids are strings".into())).and_then(|s| alph.lookup(s)))
            .collect::<Result<Vec<_>>>()?;
        cfg.candidates = Some(ids);
    }
    if let Some(z) = v.get("z").and_then(Value::as_array) {
        let field = alph.ext().field();
        let zs = z
            .iter()
            .map(|x| x.as_str().ok_or_else(|| Error::Input("z entries are class tags".into())).and_then(|t| field.parse_class(t)))
            .collect::<Result<Vec<_>>>()?;
        cfg.z = Some(zs);
    }
    Ok(cfg)
}

/// Bounds for [`generate_random_case`].
#[derive(Clone, Debug)]
pub struct CaseBounds {
    /// Largest dimension of the space `V`.
    pub max_space_dim: usize,
    /// Base irreducibles besides characters and the pad pair.
    pub max_bases: usize,
    pub field: Option<LocalField>,
    pub search: SearchConfig,
}

impl Default for CaseBounds {
    fn default() -> Self {
        CaseBounds {
            max_space_dim: 6,
            max_bases: 3,
            field: None,
            search: SearchConfig::default(),
        }
    }
}

pub fn space_dims(family: Family, max: usize) -> Vec<usize> {
    let ok = |n: usize| match family {
        Family::SoOdd => n % 2 == 1 && n >= 3,
        Family::SoEven => n % 2 == 0 && n >= 2,
        Family::Sp | Family::Mp => n % 2 == 0 && n >= 2,
        Family::U => n >= 2,
    };
    (1..=max).filter(|&n| ok(n)).collect()
}

pub fn random_model<R: Rng>(rng: &mut R, field: LocalField, family: Family, max_bases: usize) -> Result<Model> {
    if family == Family::U {
        random_unitary_model(rng, field, max_bases + 1)
    } else {
        random_split_model(rng, field, max_bases)
    }
}

/// A random generic tempered parameter of `family` on a space of dimension `n`,
/// with an optional duality constraint (unitary case).
pub fn random_enhanced<R: Rng>(
    rng: &mut R,
    model: &Model,
    family: Family,
    n: usize,
    kind: Option<Duality>,
    search: &SearchConfig,
) -> Result<Option<EnhancedParameter>> {
    let field = model.field();
    let disc = family.is_orthogonal().then(|| *field.square_classes().choose(rng).unwrap());
    let cfg = search.with_class(CandidateClass::AllBounded);
    for _ in 0..8 {
        match random_parameter(rng, model, family, n, disc, &cfg)? {
            Some(ep) if kind.is_none_or(|k| ep.phi.kind() == k) => return Ok(Some(ep)),
            Some(_) => continue,
            None => return Ok(None),
        }
    }
    Ok(None)
}

/// Same seed, same case: the generator is ChaCha8 seeded with `seed`.
pub fn generate_random_case(family: Family, seed: u64, bounds: &CaseBounds) -> Result<CaseFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = space_dims(family, bounds.max_space_dim);
    if dims.is_empty() {
        return Err(Error::Dimension(format!("no {} group with dim <= {}", family.name(), bounds.max_space_dim)));
    }
    loop {
        let field = bounds.field.unwrap_or_else(|| *desk_fields().choose(&mut rng).unwrap());
        let model = random_model(&mut rng, field, family, bounds.max_bases)?;
        let n = *dims.choose(&mut rng).unwrap();
        let Some(ep) = random_enhanced(&mut rng, &model, family, n, None, &bounds.search)? else {
            continue;
        };
        let whittaker = *model.ext().norm_class_group().elements.choose(&mut rng).unwrap();
        let group = GroupDesc::quasi_split(family, model.ext(), n, ep.phi.disc())?;
        return Ok(CaseFile {
            group,
            mu: ep.mu,
            phi: ep.phi,
            whittaker,
            search: bounds.search.clone(),
            seed: Some(seed),
            model,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bytes() {
        for fam in Family::ALL {
            let a = generate_random_case(fam, 99, &CaseBounds::default()).unwrap();
            let b = generate_random_case(fam, 99, &CaseBounds::default()).unwrap();
            assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        }
    }

    #[test]
    fn case_round_trip() {
        for seed in 0..40 {
            let fam = Family::ALL[seed as usize % 5];
            let c = generate_random_case(fam, seed, &CaseBounds::default()).unwrap();
            let back = CaseFile::from_json(&c.to_json(), None).unwrap();
            assert_eq!(back, c);
            assert!(c.group.dim() <= 6);
            assert!(c.phi.generic());
            if fam == Family::Mp {
                assert_eq!(c.phi.dim() % 2, 0);
            }
        }
    }

    #[test]
    fn broken_cases_are_rejected() {
        let c = generate_random_case(Family::Sp, 3, &CaseBounds::default()).unwrap();
        let mut v = c.to_json();
        v["schema"] = json!(2);
        assert!(CaseFile::from_json(&v, None).is_err());
        let mut v = c.to_json();
        v["group"]["dim"] = json!(c.group.dim() + 2);
        assert!(CaseFile::from_json(&v, None).is_err());
        let mut v = c.to_json();
        v.as_object_mut().unwrap().remove("field");
        assert!(CaseFile::from_json(&v, None).is_err());
        assert_eq!(CaseFile::from_json(&v, Some(c.field())).unwrap(), c);
        let mut v = c.to_json();
        v["parameter"]["summands"] = json!([["nope", 1, 1]]);
        assert!(CaseFile::from_json(&v, None).is_err());
    }
}
