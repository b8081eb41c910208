//! Randomised verification suites. Every case is driven by its own seed,
//! drawn from a ChaCha8 stream seeded with the run seed, so a violation can
//! be replayed alone with `--case-seed` and `--family`.

use super::case::{desk_fields, random_enhanced, random_model, space_dims, CaseBounds};
use crate::descent::{first_occurrence, verify_discreteness, verify_tower, SearchConfig};
use crate::error::{Error, Result};
use crate::ggp::multiplicity_tempered;
use crate::hermitian::{pure_inner_forms, rational_orbits, Family, FormKind, GroupDesc};
use crate::local_field::{LocalField, QuadExt, SquareClass};
use crate::lparam::{CharacterVec, Duality, EnhancedParameter};
use crate::model::Model;
use crate::oracle;
use crate::spectrum::{first_descent_spectrum, multiplicity, PacketEntry, StandardModuleData};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Hilbert,
    ComponentGroup,
    Contragredient,
    GgpUniqueness,
    Tower,
    Discreteness,
    Foi,
    FirstDescent,
    GlPadding,
    Spaces,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Hilbert,
        Suite::ComponentGroup,
        Suite::Contragredient,
        Suite::GgpUniqueness,
        Suite::Tower,
        Suite::Discreteness,
        Suite::Foi,
        Suite::FirstDescent,
        Suite::GlPadding,
        Suite::Spaces,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hilbert => "hilbert",
            Suite::ComponentGroup => "component-group",
            Suite::Contragredient => "contragredient",
            Suite::GgpUniqueness => "ggp-uniqueness",
            Suite::Tower => "tower",
            Suite::Discreteness => "discreteness",
            Suite::Foi => "foi",
            Suite::FirstDescent => "first-descent",
            Suite::GlPadding => "gl-padding",
            Suite::Spaces => "spaces",
        }
    }

    /// Exhaustive suites ignore the case count.
    pub fn is_exhaustive(self) -> bool {
        matches!(self, Suite::Hilbert | Suite::Spaces)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub case_seed: u64,
    pub family: Option<Family>,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CaseOutcome {
    pub checked: usize,
    pub stats: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

impl CaseOutcome {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    fn bump(&mut self, key: &str) {
        *self.stats.entry(key.into()).or_default() += 1;
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub checked: usize,
    pub stats: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub wall_seconds: f64,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn stat(&self, key: &str) -> usize {
        self.stats.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": super::case::SCHEMA,
            "suite": self.suite.name(),
            "seed": self.seed,
            "cases": self.cases,
            "checked": self.checked,
            "stats": self.stats,
            "violations": self.violations.iter().map(|v| json!({
                "case_seed": v.case_seed,
                "family": v.family.map(Family::name),
                "detail": v.detail,
            })).collect::<Vec<_>>(),
            "wall_seconds": (self.wall_seconds * 1000.0).round() / 1000.0,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cases: usize,
    pub seed: u64,
    pub bounds: CaseBounds,
    /// Run one case only, e.g. to replay a violation.
    pub case_seed: Option<(u64, Family)>,
}

impl VerifyOptions {
    pub fn new(cases: usize, seed: u64) -> Self {
        VerifyOptions {
            cases,
            seed,
            bounds: CaseBounds::default(),
            case_seed: None,
        }
    }
}

/// Runs a suite on the current rayon pool.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let runs: Vec<(u64, Option<Family>, Result<CaseOutcome>)> = if suite.is_exhaustive() {
        let r = match suite {
            Suite::Hilbert => hilbert_suite(),
            _ => spaces_suite(),
        };
        vec![(opts.seed, None, r)]
    } else {
        let jobs: Vec<(u64, Family)> = match opts.case_seed {
            Some(c) => vec![c],
            None => {
                let mut master = ChaCha8Rng::seed_from_u64(opts.seed);
                (0..opts.cases).map(|i| (master.random::<u64>(), Family::ALL[i % 5])).collect()
            }
        };
        jobs.into_par_iter()
            .map(|(s, fam)| (s, Some(fam), run_case(suite, s, fam, &opts.bounds)))
            .collect()
    };
    let mut rep = VerifyReport {
        suite,
        seed: opts.seed,
        cases: runs.len(),
        checked: 0,
        stats: BTreeMap::new(),
        violations: vec![],
        wall_seconds: 0.0,
    };
    for (case_seed, family, r) in runs {
        match r {
            Ok(o) => {
                rep.checked += o.checked;
                for (k, v) in o.stats {
                    *rep.stats.entry(k).or_default() += v;
                }
                rep.violations.extend(o.violations.into_iter().map(|detail| Violation { case_seed, family, detail }));
            }
            Err(e) => rep.violations.push(Violation {
                case_seed,
                family,
                detail: format!("error: {e}"),
            }),
        }
    }
    rep.violations.sort();
    rep.wall_seconds = start.elapsed().as_secs_f64();
    rep
}

struct Draw {
    model: Model,
    ep: EnhancedParameter,
    n: usize,
}

fn draw(rng: &mut ChaCha8Rng, family: Family, bounds: &CaseBounds) -> Result<Draw> {
    let dims = space_dims(family, bounds.max_space_dim);
    loop {
        let field = bounds.field.unwrap_or_else(|| *desk_fields().choose(rng).unwrap());
        let model = random_model(rng, field, family, bounds.max_bases)?;
        let n = *dims.choose(rng).ok_or_else(|| Error::Dimension("space dimension bound too small".into()))?;
        if let Some(ep) = random_enhanced(rng, &model, family, n, None, &bounds.search)? {
            return Ok(Draw { model, ep, n });
        }
    }
}

fn run_case(suite: Suite, seed: u64, family: Family, bounds: &CaseBounds) -> Result<CaseOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = draw(&mut rng, family, bounds)?;
    let cfg = &bounds.search;
    match suite {
        Suite::ComponentGroup => component_group_case(&d),
        Suite::Contragredient => contragredient_case(&d),
        Suite::GgpUniqueness => ggp_case(&mut rng, &d, bounds),
        Suite::Tower => {
            let r = verify_tower(&d.model, &d.ep, cfg)?;
            let mut o = CaseOutcome {
                checked: 1,
                violations: r.violations,
                ..Default::default()
            };
            if r.checked > 0 {
                o.bump("padded_checks");
                *o.stats.entry("padded_witnesses".into()).or_default() += r.checked;
            }
            Ok(o)
        }
        Suite::Discreteness => {
            let (l0, r) = verify_discreteness(&d.model, &d.ep, cfg)?;
            let mut o = CaseOutcome {
                checked: 1,
                violations: r.violations,
                ..Default::default()
            };
            if l0.is_some() {
                o.bump("with_occurrence");
            }
            Ok(o)
        }
        Suite::Foi | Suite::FirstDescent => occurrence_case(&mut rng, suite, &d),
        Suite::GlPadding => gl_padding_case(&mut rng, &d, bounds),
        Suite::Hilbert | Suite::Spaces => unreachable!("exhaustive suites have no cases"),
    }
}

fn hilbert_suite() -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    for f in desk_fields() {
        let classes = f.square_classes();
        for &a in &classes {
            for &b in &classes {
                o.check(a.hilbert(b) == oracle::hilbert(a, b), || format!("({a}, {b}) over {f}"));
            }
        }
    }
    Ok(o)
}

/// `S_phi` against a direct enumeration of `{0,1}^{I_gp}`.
fn component_group_case(d: &Draw) -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    let alph = &d.model.alphabet;
    let phi = &d.ep.phi;
    let target = phi.kind();
    let gp_dims: Vec<u32> = phi
        .summands()
        .iter()
        .filter(|(s, _)| {
            let r = alph.irr(s.rho).duality;
            if r == Duality::NonSelfDual {
                return false;
            }
            let symp = r.is_symplectic_type() ^ (s.b % 2 == 0);
            symp == target.is_symplectic_type() && r.is_conjugate() == target.is_conjugate()
        })
        .map(|(s, _)| s.dim(alph))
        .collect();
    let cg = phi.component_group(alph);
    let k = gp_dims.len();
    o.check(cg.rank() == k, || format!("rank {} but {k} good-parity summands", cg.rank()));
    let constrained = match phi.family() {
        Family::Sp => true,
        Family::SoEven => gp_dims.iter().any(|d| d % 2 == 1),
        _ => false,
    };
    let mut count = 0u64;
    for e in 0..1u64 << k {
        let weight: u32 = (0..k).filter(|i| e >> i & 1 == 1).map(|i| gp_dims[i]).sum();
        let inside = !constrained || weight % 2 == 0;
        count += u64::from(inside);
        o.check(cg.contains(e) == inside, || format!("membership of {e:b} in S_phi"));
    }
    let full = 1u64 << k;
    o.check(cg.order() == count, || format!("order {} but {count} members", cg.order()));
    o.check(count == full || 2 * count == full, || format!("order {count} for {k} coordinates"));
    let chars = cg.characters();
    let mut seen = std::collections::BTreeSet::new();
    for c in &chars {
        let values: Vec<bool> = cg.elements().iter().map(|&e| c.eval(e).is_minus()).collect();
        seen.insert(values);
    }
    o.check(chars.len() as u64 == count && seen.len() == chars.len(), || "characters are not the dual group".into());
    o.bump(if constrained { "constrained" } else { "full" });
    Ok(o)
}

/// The contragredient written out coordinate by coordinate, keyed by
/// summand labels so that no coordinate remapping is shared with the library.
fn dual_table(m: &Model, ep: &EnhancedParameter) -> Result<(crate::lparam::Parameter, BTreeMap<String, i8>)> {
    let alph = &m.alphabet;
    let m1 = m.field().minus_one();
    let cg = ep.component_group(alph);
    let n = ep.phi.space_dim();
    let mut out = BTreeMap::new();
    let phi = match ep.phi.family() {
        Family::SoOdd | Family::SoEven => ep.phi.clone(),
        Family::Sp => ep.phi.clone(),
        Family::Mp => ep.phi.twist(alph, m1)?,
        Family::U => ep.phi.dual(alph)?,
    };
    for (i, &s) in cg.basis().iter().enumerate() {
        let v = ep.mu.value(i);
        let (label, extra) = match ep.phi.family() {
            Family::SoOdd | Family::SoEven => (s.label(alph), crate::sign::Sign::Plus),
            Family::Sp => (s.label(alph), s.det(alph).hilbert(m1)),
            Family::Mp => {
                let t = crate::lparam::SimpleSummand::new(alph.twist(s.rho, m1)?, s.b);
                (t.label(alph), crate::epsilon::eps_single(m, s, m1)?)
            }
            Family::U => {
                let t = crate::lparam::SimpleSummand::new(alph.irr(s.rho).dual, s.b);
                let e = if n % 2 == 0 { m.ext().omega(m1)?.pow(u64::from(s.dim(alph))) } else { crate::sign::Sign::Plus };
                (t.label(alph), e)
            }
        };
        out.insert(label, (v * extra).to_i8());
    }
    Ok((phi, out))
}

fn contragredient_case(d: &Draw) -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    let m = &d.model;
    let alph = &m.alphabet;
    let dual = d.ep.contragredient(m)?;
    let (phi, table) = dual_table(m, &d.ep)?;
    let expect = phi.component_group(alph).from_json(alph, &json!(table))?;
    o.check(dual.phi == phi && dual.mu == expect, || "contragredient differs from the case table".into());
    o.check(dual.contragredient(m)? == d.ep, || "dual is not an involution".into());
    for a in m.ext().norm_class_group().elements {
        let lhs = d.ep.eta_twist(m, a)?.contragredient(m)?;
        let rhs = dual.eta_twist(m, a)?;
        o.check(lhs == rhs, || format!("dual and eta_{a} do not commute"));
    }
    Ok(o)
}

/// Family and dimensions of a relevant partner of `(family, n)`.
fn partner_dims(family: Family, n: usize) -> (Family, Vec<usize>) {
    match family {
        Family::SoOdd => (Family::SoEven, (0..n).filter(|m| m % 2 == 0).collect()),
        Family::SoEven => (Family::SoOdd, (1..n).filter(|m| m % 2 == 1).collect()),
        Family::Sp => (Family::Mp, (0..n).filter(|m| m % 2 == 0).collect()),
        Family::Mp => (Family::Sp, (0..n).filter(|m| m % 2 == 0).collect()),
        Family::U => (Family::U, (0..n).collect()),
    }
}

fn random_partner(rng: &mut ChaCha8Rng, d: &Draw, bounds: &CaseBounds, max_m: usize) -> Result<Option<EnhancedParameter>> {
    let (h, dims) = partner_dims(d.ep.phi.family(), d.n);
    let dims: Vec<usize> = dims.into_iter().filter(|&m| m <= max_m).collect();
    let kind = (h == Family::U).then(|| d.ep.phi.kind().flip());
    for _ in 0..12 {
        let Some(&m) = dims.choose(rng) else {
            return Ok(None);
        };
        if let Some(ep) = random_enhanced(rng, &d.model, h, m, kind, &bounds.search)? {
            return Ok(Some(ep));
        }
    }
    Ok(None)
}

fn random_z(rng: &mut ChaCha8Rng, m: &Model) -> SquareClass {
    *m.ext().norm_class_group().elements.choose(rng).unwrap()
}

fn ggp_case(rng: &mut ChaCha8Rng, d: &Draw, bounds: &CaseBounds) -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    let m = &d.model;
    let alph = &m.alphabet;
    let Some(psi) = random_partner(rng, d, bounds, d.n)? else {
        o.bump("no_partner");
        return Ok(o);
    };
    let z = random_z(rng, m);
    let mut hits: Vec<(CharacterVec, CharacterVec)> = vec![];
    for mu in d.ep.phi.component_group(alph).characters() {
        for nu in psi.phi.component_group(alph).characters() {
            let a = EnhancedParameter { phi: d.ep.phi.clone(), mu };
            let b = EnhancedParameter { phi: psi.phi.clone(), mu: nu };
            if multiplicity_tempered(m, &a, &b, z)? == 1 {
                hits.push((mu, nu));
            }
        }
    }
    o.check(hits.len() == 1, || format!("{} distinguished pairs at z = {z}", hits.len()));
    Ok(o)
}

fn occurrence_case(rng: &mut ChaCha8Rng, suite: Suite, d: &Draw) -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    let m = &d.model;
    let cfg = SearchConfig::default();
    let a = random_z(rng, m);
    let entry = PacketEntry::new(m, d.ep.phi.clone(), d.ep.mu, a);
    let ep = entry.normalized(m)?;
    let fa = first_occurrence(m, &ep, &cfg)?;
    let (fs, rep) = first_descent_spectrum(m, &entry, &cfg)?;
    if fa.ell0.is_some() {
        o.bump("with_occurrence");
    }
    if fa.bound_limited || fs.bound_limited {
        o.bump("bound_limited");
    }
    match suite {
        Suite::Foi => o.check(fs.fs == fa.ell0, || format!("f_s = {:?} but f_a = {:?}", fs.fs, fa.ell0)),
        _ => {
            o.violations.extend(rep.violations);
            let spec = fs.result.map(|r| r.tempered_duals()).unwrap_or_default();
            let desc = fa.set.map(|s| s.distinct()).unwrap_or_default();
            o.check(spec == desc, || format!("first-descent spectrum has {} members, D_l0 has {}", spec.len(), desc.len()));
            *o.stats.entry("members".into()).or_default() += desc.len();
        }
    }
    Ok(o)
}

fn gl_padding_case(rng: &mut ChaCha8Rng, d: &Draw, bounds: &CaseBounds) -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    let m = &d.model;
    let Some(sigma) = random_partner(rng, d, bounds, d.n.saturating_sub(3))? else {
        o.bump("no_partner");
        return Ok(o);
    };
    let alph = &m.alphabet;
    let pi = StandardModuleData::tempered(d.ep.clone());
    for nu in sigma.phi.component_group(alph).characters() {
        let s0 = StandardModuleData::tempered(EnhancedParameter { phi: sigma.phi.clone(), mu: nu });
        for z in m.ext().norm_class_group().elements {
            let base = multiplicity(m, &pi, &s0, z)?;
            let mut s = s0.clone();
            loop {
                let dim = rng.random_range(1..=2);
                if s.space_dim() + 2 * dim >= d.n {
                    break;
                }
                s = s.with_block(f64::from(rng.random_range(1..=6u8)) / 4.0, dim)?;
                let padded = multiplicity(m, &pi, &s, z)?;
                o.check(padded == base, || format!("multiplicity {base} becomes {padded} with GL blocks {:?}", s.gl_dims));
            }
        }
    }
    Ok(o)
}

/// Witt round trips, orbit invariants and the admissibility table for all
/// spaces of dimension at most 12 over the desk fields.
fn spaces_suite() -> Result<CaseOutcome> {
    let mut o = CaseOutcome::default();
    for f in desk_fields() {
        let mut exts = vec![QuadExt::split(f)];
        for d in f.square_classes().into_iter().filter(|c| !c.is_one()) {
            exts.push(QuadExt::new(f, d)?);
        }
        for ext in exts {
            for n in 1..=12 {
                for g in groups_of_dim(ext, n)? {
                    for form in pure_inner_forms(&g) {
                        space_checks(&mut o, &form)?;
                    }
                }
            }
        }
    }
    Ok(o)
}

fn groups_of_dim(ext: QuadExt, n: usize) -> Result<Vec<GroupDesc>> {
    let f = ext.field();
    let mut out = vec![];
    if ext.is_split() {
        let fam = if n % 2 == 1 { Family::SoOdd } else { Family::SoEven };
        for d in f.square_classes() {
            out.push(GroupDesc::quasi_split(fam, ext, n, Some(d))?);
        }
        if n % 2 == 0 {
            out.push(GroupDesc::quasi_split(Family::Sp, ext, n, None)?);
        }
    } else {
        out.push(GroupDesc::quasi_split(Family::U, ext, n, None)?);
    }
    Ok(out)
}

fn expected_admissible(kind: FormKind, n: usize, r: usize, p1: usize) -> bool {
    if p1 == 0 || p1 > n {
        return false;
    }
    match kind {
        FormKind::Symmetric if n == 2 * r => p1 % 2 == 1 && p1 + 1 <= 2 * r,
        FormKind::Symmetric => p1 % 2 == 1 && p1 <= 2 * r + 1,
        FormKind::Alternating => p1 % 2 == 0,
        _ => p1 <= 2 * r + 1,
    }
}

fn space_checks(o: &mut CaseOutcome, g: &GroupDesc) -> Result<()> {
    let s = g.space;
    let (n, r) = (s.dim(), s.witt());
    let (w, an) = s.witt_decompose();
    let mut back = an;
    for _ in 0..w {
        back = back.add_hyperbolic();
    }
    o.check(w == r && back == s && an.is_anisotropic(), || format!("Witt decomposition of {s}"));
    let inv = s.invariants();
    let again = crate::hermitian::classify(s.ext(), s.epsilon(), n, &inv)?;
    o.check(again == s, || format!("{s} is not recovered from its invariants"));
    for k in 0..=r {
        let t = s.remove_hyperbolic(k)?;
        let mut u = t;
        for _ in 0..k {
            u = u.add_hyperbolic();
        }
        o.check(t.witt() + k == r && u == s, || format!("removing {k} planes from {s}"));
    }
    for p1 in 1..=n {
        let expect = expected_admissible(s.kind(), n, r, p1);
        o.check(s.orbit_admissible(p1) == expect, || format!("admissibility of p1 = {p1} on {s}"));
        o.bump(if expect { "admissible" } else { "inadmissible" });
        if !expect {
            o.check(rational_orbits(&s, p1).is_err(), || format!("orbits listed for inadmissible p1 = {p1} on {s}"));
            continue;
        }
        let orbits = rational_orbits(&s, p1)?;
        o.check(!orbits.is_empty(), || format!("admissible p1 = {p1} on {s} has no orbit"));
        for orb in &orbits {
            let total = orb.block_space().direct_sum(&orb.descended)?;
            o.check(total == s, || format!("orbit {} of p1 = {p1} does not rebuild {s}", orb.value));
            o.check(orb.descended.dim() + 2 * orb.m + p1 % 2 == n, || format!("descended dim for p1 = {p1} on {s}"));
            let m1 = s.field().minus_one();
            let sign = if p1 % 2 == 0 { orb.m + 1 } else { orb.m };
            o.check(orb.line_class == s.ext().reduce(m1.pow(sign as u64) * orb.value), || "line class".into());
        }
        if s.kind() == FormKind::Symmetric && p1 % 2 == 1 && s.field() != LocalField::Real {
            orbit_oracle(o, &s, p1, &orbits);
        }
    }
    Ok(())
}

/// Values `<e,e>` realised by the orthogonal complement of `m` hyperbolic
/// planes, from an explicit diagonal form.
fn orbit_oracle(o: &mut CaseOutcome, s: &crate::hermitian::EpsHermSpace, p1: usize, orbits: &[crate::hermitian::OrbitData]) {
    let v0 = match s.remove_hyperbolic(p1 / 2) {
        Ok(v) => v,
        Err(_) => return,
    };
    if v0.dim() > 4 || v0.dim() == 0 {
        return;
    }
    let f = s.field();
    let t = oracle::HilbertTable::new(f);
    let Some(form) = oracle::diagonal_forms(f, v0.dim())
        .into_iter()
        .find(|form| oracle::diag_invariants(&t, form) == (v0.det().unwrap(), v0.hasse().unwrap()))
    else {
        o.check(false, || format!("no diagonal form for {v0}"));
        return;
    };
    let values = oracle::diag_values(&form);
    let got: std::collections::BTreeSet<SquareClass> = orbits.iter().map(|x| x.value).collect();
    o.check(values == got, || format!("represented values of {v0}"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_are_clean_and_deterministic() {
        for s in [Suite::ComponentGroup, Suite::Contragredient, Suite::GgpUniqueness, Suite::GlPadding] {
            let a = run_suite(s, &VerifyOptions::new(20, 3));
            let b = run_suite(s, &VerifyOptions::new(20, 3));
            assert!(a.ok(), "{s}: {:?}", a.violations);
            assert_eq!((a.checked, &a.stats), (b.checked, &b.stats));
        }
    }

    #[test]
    fn replay_runs_one_case() {
        let mut opts = VerifyOptions::new(50, 1);
        opts.case_seed = Some((12345, Family::Mp));
        let r = run_suite(Suite::Contragredient, &opts);
        assert_eq!(r.cases, 1);
    }
}
