//! Subcommand bodies shared by the `ldescent` binary and the bindings.
//! Each returns the JSON document to print and whether violations were found.

pub mod case;
pub mod verify;

use crate::descent::{first_occurrence, Descender};
use crate::error::{Error, Result};
use crate::hermitian::{pure_inner_forms, rational_orbits, EpsHermSpace, GroupDesc};
use crate::local_field::{LocalField, QuadExt};
use crate::spectrum::{orbit_z, spectral_first_occurrence, spectrum_at, submodule_witness, vogan_packet};
use case::{CaseFile, SCHEMA};
use serde_json::{json, Value};

pub struct Output {
    pub json: Value,
    pub violations: bool,
}

impl Output {
    fn ok(mut json: Value) -> Self {
        json["schema"] = json!(SCHEMA);
        Output { json, violations: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Spectral,
    Arithmetic,
    Both,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Mode::Spectral),
            "arithmetic" => Ok(Mode::Arithmetic),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Input(format!("mode is spectral, arithmetic or both, got {s:?}"))),
        }
    }
}

fn field_of(v: &Value, default: Option<LocalField>) -> Result<LocalField> {
    match v.get("field") {
        Some(f) => serde_json::from_value(f.clone()).map_err(|e| Error::Input(format!("field: {e}"))),
        None => default.ok_or_else(|| Error::Input(format!("no field given and {} is unset", case::FIELD_ENV))),
    }
}

/// Invariants, Witt data, pure inner forms and rational orbits of a space
/// (`{"space": ...}`) or of a group (`{"group": ...}`).
pub fn classify_space(v: &Value, default_field: Option<LocalField>) -> Result<Output> {
    let field = field_of(v, default_field)?;
    let ext = QuadExt::from_json(field, v.get("ext").unwrap_or(&Value::Null))?;
    let (space, group) = match (v.get("space"), v.get("group")) {
        (Some(s), _) => (EpsHermSpace::from_json(ext, s)?, None),
        (None, Some(g)) => {
            let g = GroupDesc::from_json(ext, g)?;
            (g.space, Some(g))
        }
        _ => return Err(Error::Input("classify-space needs a space or a group".into())),
    };
    let (r, an) = space.witt_decompose();
    let mut orbits = serde_json::Map::new();
    let mut admissible = vec![];
    for p1 in 1..=space.dim() {
        if space.orbit_admissible(p1) {
            admissible.push(p1);
            let list = rational_orbits(&space, p1)?;
            let mut entries: Vec<Value> = list
                .iter()
                .map(|o| {
                    let mut j = o.to_json();
                    if let Some(g) = &group {
                        j["z"] = json!(orbit_z(ext, g.family, g.dim(), o).tag());
                    }
                    j
                })
                .collect();
            entries.sort_by_key(|e| e.to_string());
            orbits.insert(p1.to_string(), Value::Array(entries));
        }
    }
    let mut out = json!({
        "field": field,
        "ext": ext.to_json(),
        "space": space.to_json(),
        "witt": r,
        "anisotropic": an.to_json(),
        "admissible_p1": admissible,
        "orbits": orbits,
    });
    if let Some(g) = group {
        out["group"] = g.to_json();
        out["pure_inner_forms"] = json!(pure_inner_forms(&g).iter().map(GroupDesc::to_json).collect::<Vec<_>>());
    }
    Ok(Output::ok(out))
}

pub fn packet(c: &CaseFile) -> Result<Output> {
    let m = &c.model;
    let entries = vogan_packet(m, &c.phi, c.whittaker)?;
    Ok(Output::ok(json!({
        "parameter": c.phi.to_json(&m.alphabet),
        "whittaker": c.whittaker.tag(),
        "component_group_order": c.phi.component_group(&m.alphabet).order(),
        "entries": entries.iter().map(|e| e.to_json(m)).collect::<Vec<_>>(),
    })))
}

pub fn descend(c: &CaseFile, ell: usize, z: Option<&str>, max_dim: Option<usize>) -> Result<Output> {
    let m = &c.model;
    let mut cfg = c.search.clone();
    if let Some(d) = max_dim {
        cfg.max_dim = d;
    }
    let ep = c.enhanced()?;
    let mut d = Descender::new(m, cfg);
    let set = match z {
        Some(t) => d.descend_z(&ep, ell, c.field().parse_class(t)?)?,
        None => d.descend(&ep, ell)?,
    };
    Ok(Output::ok(set.to_json(m)))
}

pub fn first_occurrence_cmd(c: &CaseFile, mode: Mode) -> Result<Output> {
    let m = &c.model;
    let arithmetic = || -> Result<_> { first_occurrence(m, &c.enhanced()?, &c.search) };
    let spectral = || spectral_first_occurrence(m, &c.entry(), &c.search);
    Ok(match mode {
        Mode::Arithmetic => Output::ok(arithmetic()?.to_json(m)),
        Mode::Spectral => Output::ok(spectral()?.to_json(m)),
        Mode::Both => {
            let (a, s) = (arithmetic()?, spectral()?);
            let equal = a.ell0 == s.fs;
            let mut o = Output::ok(json!({
                "arithmetic": a.to_json(m),
                "spectral": s.to_json(m),
                "fa": a.ell0,
                "fs": s.fs,
                "equal": equal,
            }));
            o.violations = !equal;
            o
        }
    })
}

pub fn spectrum(c: &CaseFile, p1: usize) -> Result<Output> {
    Ok(Output::ok(spectrum_at(&c.model, &c.entry(), p1, &c.search)?.to_json(&c.model)))
}

pub fn submodule(c: &CaseFile) -> Result<Output> {
    let w = submodule_witness(&c.model, &c.entry(), &c.search)?;
    Ok(Output::ok(json!({ "witness": w.map(|w| w.to_json(&c.model)) })))
}

pub fn verify(suite: verify::Suite, opts: &verify::VerifyOptions) -> Output {
    let r = verify::run_suite(suite, opts);
    Output {
        violations: !r.ok(),
        json: r.to_json(),
    }
}

pub fn generate(family: crate::hermitian::Family, seed: u64, bounds: &case::CaseBounds) -> Result<Output> {
    Ok(Output::ok(case::generate_random_case(family, seed, bounds)?.to_json()))
}

/// Pretty JSON with a trailing newline; object keys are already sorted.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
