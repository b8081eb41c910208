//! Arithmetic descent: for an enhanced parameter of `G` and a codimension
//! `l`, search bounded parameters of the relevant `H` whose distinguished
//! pair matches, and collect their contragredients.

use crate::error::{Error, Result};
use crate::ggp::chi_twisted;
use crate::hermitian::Family;
use crate::local_field::SquareClass;
use crate::lparam::{param_dim, CharacterVec, Duality, EnhancedParameter, Parameter, SimpleSummand, Summands};
use crate::model::Model;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateClass {
    DiscreteOnly,
    AllBounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest candidate parameter dimension searched.
    pub max_dim: usize,
    /// Distinct simple summands; a non-self-dual pair counts twice.
    pub max_summands: usize,
    pub max_b: u32,
    /// Irreducibles allowed in candidates; `None` means the whole alphabet.
    pub candidates: Option<Vec<usize>>,
    /// Classes `z` to scan; `None` means all of `Z`.
    pub z: Option<Vec<SquareClass>>,
    pub class: CandidateClass,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_dim: 12,
            max_summands: 6,
            max_b: 3,
            candidates: None,
            z: None,
            class: CandidateClass::DiscreteOnly,
        }
    }
}

impl SearchConfig {
    pub fn with_class(&self, class: CandidateClass) -> Self {
        SearchConfig { class, ..self.clone() }
    }
}

/// What a candidate `psi` for `H` must look like.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidateSpec {
    pub family: Family,
    pub kind: Duality,
    pub dim: usize,
    /// Required determinant (`SO_even` and `Sp`).
    pub det: Option<SquareClass>,
    /// Discriminant of the orthogonal space of `H`.
    pub disc: Option<SquareClass>,
}

/// Orthogonal groups need odd `l`, symplectic and metaplectic even `l`.
pub fn legal_ell(family: Family, n: usize, ell: usize) -> bool {
    if ell == 0 || ell > n {
        return false;
    }
    match family {
        Family::SoOdd | Family::SoEven => ell % 2 == 1,
        Family::Sp | Family::Mp => ell % 2 == 0,
        Family::U => true,
    }
}

pub fn legal_ells(family: Family, n: usize) -> Vec<usize> {
    (1..=n).rev().filter(|&l| legal_ell(family, n, l)).collect()
}

pub fn h_family(family: Family, m: usize) -> Family {
    match family {
        Family::SoOdd | Family::SoEven if m % 2 == 1 => Family::SoOdd,
        Family::SoOdd | Family::SoEven => Family::SoEven,
        Family::Sp => Family::Mp,
        Family::Mp => Family::Sp,
        Family::U => Family::U,
    }
}

/// The shape of candidates `psi` for the `(l, z)`-descent of `phi`.
pub fn candidate_spec(model: &Model, phi: &Parameter, ell: usize, z: SquareClass) -> Result<CandidateSpec> {
    let n = phi.space_dim();
    if !legal_ell(phi.family(), n, ell) {
        return Err(Error::IllegalEll(ell));
    }
    let m = n - ell;
    let family = h_family(phi.family(), m);
    let dim = param_dim(family, m)?;
    let field = model.field();
    let (kind, det, disc) = match family {
        Family::SoOdd | Family::SoEven => {
            let d = field.minus_one() * z * phi.disc().unwrap_or(field.one());
            let kind = if family == Family::SoEven { Duality::Orthogonal } else { Duality::Symplectic };
            (kind, (family == Family::SoEven).then_some(d), Some(d))
        }
        Family::Sp => (Duality::Orthogonal, Some(field.one()), None),
        Family::Mp => (Duality::Symplectic, None, None),
        Family::U => (phi.kind().flip(), None, None),
    };
    Ok(CandidateSpec { family, kind, dim, det, disc })
}

struct Block {
    summands: Vec<SimpleSummand>,
    unit: usize,
    step: u32,
    distinct: usize,
    max_units: Option<u32>,
}

/// Irreducibles usable in candidates: the configured subset closed under
/// partners, plus the trivial character.
pub fn candidate_irreps(model: &Model, cfg: &SearchConfig) -> Vec<usize> {
    let alph = &model.alphabet;
    let mut set: BTreeSet<usize> = match &cfg.candidates {
        Some(c) => c.iter().copied().collect(),
        None => (0..alph.len()).collect(),
    };
    for i in set.clone() {
        set.insert(alph.irr(i).partner);
    }
    if let Some(t) = alph.trivial() {
        set.insert(t);
    }
    set.into_iter().collect()
}

/// All canonical parameters matching `spec` within the bounds.
pub fn enumerate_candidates(model: &Model, spec: &CandidateSpec, cfg: &SearchConfig) -> Result<Vec<Parameter>> {
    let alph = &model.alphabet;
    let discrete = cfg.class == CandidateClass::DiscreteOnly;
    let mut blocks = Vec::new();
    for rho in candidate_irreps(model, cfg) {
        let r = alph.irr(rho);
        for b in 1..=cfg.max_b {
            let s = SimpleSummand::new(rho, b);
            let d = s.dim(alph) as usize;
            if d > spec.dim {
                break;
            }
            let ty = s.duality(alph);
            if ty == spec.kind {
                blocks.push(Block {
                    summands: vec![s],
                    unit: d,
                    step: 1,
                    distinct: 1,
                    max_units: discrete.then_some(1),
                });
            } else if discrete {
                continue;
            } else if ty.is_self_dual() {
                blocks.push(Block {
                    summands: vec![s],
                    unit: 2 * d,
                    step: 2,
                    distinct: 1,
                    max_units: None,
                });
            } else if rho < r.partner {
                blocks.push(Block {
                    summands: vec![s, SimpleSummand::new(r.partner, b)],
                    unit: 2 * d,
                    step: 1,
                    distinct: 2,
                    max_units: None,
                });
            }
        }
    }
    let mut out = Vec::new();
    let mut cur: Summands = Vec::new();
    dfs(model, spec, &blocks, 0, spec.dim, cfg.max_summands, &mut cur, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    model: &Model,
    spec: &CandidateSpec,
    blocks: &[Block],
    i: usize,
    rem: usize,
    distinct: usize,
    cur: &mut Summands,
    out: &mut Vec<Parameter>,
) {
    if rem == 0 {
        if let Ok(p) = Parameter::new(&model.alphabet, spec.family, Some(spec.kind), cur, spec.disc) {
            if spec.det.is_none_or(|d| d == p.det()) {
                out.push(p);
            }
        }
        return;
    }
    if i == blocks.len() {
        return;
    }
    dfs(model, spec, blocks, i + 1, rem, distinct, cur, out);
    let bl = &blocks[i];
    if bl.distinct > distinct {
        return;
    }
    let mut k = 1u32;
    while bl.unit * k as usize <= rem && bl.max_units.is_none_or(|m| k <= m) {
        let len = cur.len();
        for &s in &bl.summands {
            cur.push((s, k * bl.step));
        }
        dfs(model, spec, blocks, i + 1, rem - bl.unit * k as usize, distinct - bl.distinct, cur, out);
        cur.truncate(len);
        k += 1;
    }
}

/// One element of a descent: the matched `(psi, nu)` at `z` and its contragredient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DescentMember {
    pub z: SquareClass,
    pub psi: Parameter,
    pub nu: CharacterVec,
    pub member: EnhancedParameter,
}

impl DescentMember {
    pub fn to_json(&self, model: &Model) -> Value {
        let alph = &model.alphabet;
        json!({
            "z": self.z.tag(),
            "member": self.member.to_json(alph),
            "discrete": self.member.is_discrete(alph),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentSet {
    pub ell: usize,
    pub members: Vec<DescentMember>,
    /// Candidates of the required dimension exceeded `max_dim`.
    pub bound_limited: bool,
}

impl DescentSet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Distinct contragredients, forgetting `z`.
    pub fn distinct(&self) -> BTreeSet<EnhancedParameter> {
        self.members.iter().map(|m| m.member.clone()).collect()
    }

    pub fn to_json(&self, model: &Model) -> Value {
        json!({
            "ell": self.ell,
            "bound_limited": self.bound_limited,
            "members": self.members.iter().map(|m| m.to_json(model)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOccurrence {
    pub ell0: Option<usize>,
    pub set: Option<DescentSet>,
    pub bound_limited: bool,
}

impl FirstOccurrence {
    pub fn to_json(&self, model: &Model) -> Value {
        let members: Vec<Value> = self.set.iter().flat_map(|s| s.members.iter().map(|m| m.to_json(model))).collect();
        json!({
            "ell0": self.ell0,
            "members": members,
            "bound_limited": self.bound_limited,
        })
    }
}

/// Candidate search with a cache keyed by the candidate shape.
pub struct Descender<'a> {
    model: &'a Model,
    cfg: SearchConfig,
    cache: HashMap<CandidateSpec, Vec<Parameter>>,
}

impl<'a> Descender<'a> {
    pub fn new(model: &'a Model, cfg: SearchConfig) -> Self {
        Descender {
            model,
            cfg,
            cache: HashMap::new(),
        }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.cfg
    }

    pub fn z_range(&self) -> Vec<SquareClass> {
        let ext = self.model.ext();
        let mut zs: Vec<SquareClass> = match &self.cfg.z {
            Some(z) => z.iter().map(|&z| ext.reduce(z)).collect(),
            None => ext.norm_class_group().elements,
        };
        zs.sort();
        zs.dedup();
        zs
    }

    /// `None` when the shape exceeds `max_dim`.
    pub fn candidates(&mut self, spec: &CandidateSpec) -> Result<Option<&[Parameter]>> {
        if spec.dim > self.cfg.max_dim {
            return Ok(None);
        }
        if !self.cache.contains_key(spec) {
            let c = enumerate_candidates(self.model, spec, &self.cfg)?;
            self.cache.insert(spec.clone(), c);
        }
        Ok(Some(&self.cache[spec]))
    }

    pub fn descend_z(&mut self, ep: &EnhancedParameter, ell: usize, z: SquareClass) -> Result<DescentSet> {
        let model = self.model;
        let spec = candidate_spec(model, &ep.phi, ell, z)?;
        let Some(cands) = self.candidates(&spec)? else {
            return Ok(DescentSet {
                ell,
                members: vec![],
                bound_limited: true,
            });
        };
        let mut members = Vec::new();
        for psi in cands {
            let (a, nu) = chi_twisted(model, &ep.phi, psi, z)?;
            if a == ep.mu {
                let member = EnhancedParameter { phi: psi.clone(), mu: nu }.contragredient(model)?;
                members.push(DescentMember {
                    z: model.ext().reduce(z),
                    psi: psi.clone(),
                    nu,
                    member,
                });
            }
        }
        Ok(DescentSet {
            ell,
            members,
            bound_limited: false,
        })
    }

    pub fn descend(&mut self, ep: &EnhancedParameter, ell: usize) -> Result<DescentSet> {
        let mut out = DescentSet {
            ell,
            members: vec![],
            bound_limited: false,
        };
        for z in self.z_range() {
            let d = self.descend_z(ep, ell, z)?;
            out.bound_limited |= d.bound_limited;
            out.members.extend(d.members);
        }
        out.members.sort();
        Ok(out)
    }

    /// Scans `l` from the top; the first non-empty descent is the first occurrence.
    pub fn first_occurrence(&mut self, ep: &EnhancedParameter) -> Result<FirstOccurrence> {
        let n = ep.phi.space_dim();
        let mut limited = false;
        for ell in legal_ells(ep.phi.family(), n) {
            let d = self.descend(ep, ell)?;
            limited |= d.bound_limited;
            if !d.is_empty() {
                return Ok(FirstOccurrence {
                    ell0: Some(ell),
                    set: Some(d),
                    bound_limited: limited,
                });
            }
        }
        Ok(FirstOccurrence {
            ell0: None,
            set: None,
            bound_limited: limited,
        })
    }
}

pub fn descend(model: &Model, ep: &EnhancedParameter, ell: usize, cfg: &SearchConfig) -> Result<DescentSet> {
    Descender::new(model, cfg.clone()).descend(ep, ell)
}

/// First occurrence, searching discrete candidates only.
pub fn first_occurrence(model: &Model, ep: &EnhancedParameter, cfg: &SearchConfig) -> Result<FirstOccurrence> {
    Descender::new(model, cfg.with_class(CandidateClass::DiscreteOnly)).first_occurrence(ep)
}

/// `psi ⊕ k (pad ⊕ pad^vee)`.
pub fn tower_pad(model: &Model, psi: &Parameter, k: u32) -> Result<Parameter> {
    let alph = &model.alphabet;
    if k == 0 {
        return Ok(psi.clone());
    }
    let pad = alph.pad().ok_or_else(|| Error::Alphabet("no pad irreducible declared".into()))?;
    let partner = alph.irr(pad).partner;
    psi.with_added(alph, &[(SimpleSummand::new(pad, 1), k), (SimpleSummand::new(partner, 1), k)])
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn to_json(&self) -> Value {
        json!({"checked": self.checked, "violations": self.violations})
    }
}

/// Every non-empty `D_l1` propagates to each `l < l1` of the same parity:
/// a witness padded by `(l1 - l)/2` copies of `pad ⊕ pad^vee` must be found
/// again by an all-bounded search at `l`.
pub fn verify_tower(model: &Model, ep: &EnhancedParameter, cfg: &SearchConfig) -> Result<Report> {
    let alph = &model.alphabet;
    let mut rep = Report::default();
    let Some(pad) = alph.pad() else {
        return Ok(rep);
    };
    let n = ep.phi.space_dim();
    let ells = legal_ells(ep.phi.family(), n);
    let mut base = Descender::new(model, cfg.clone());
    let mut witnesses = Vec::new();
    for &l in &ells {
        let d = base.descend(ep, l)?;
        if let Some(w) = d.members.first() {
            witnesses.push((l, w.clone()));
        }
    }
    if witnesses.is_empty() {
        return Ok(rep);
    }
    let mut cands = candidate_irreps(model, cfg);
    cands.push(pad);
    cands.push(alph.irr(pad).partner);
    let padded_cfg = SearchConfig {
        max_dim: cfg.max_dim.max(n + 1),
        max_summands: cfg.max_summands + 2,
        candidates: Some(cands),
        class: CandidateClass::AllBounded,
        ..cfg.clone()
    };
    let mut wide = Descender::new(model, padded_cfg);
    let mut cache: HashMap<usize, DescentSet> = HashMap::new();
    for (l1, w) in &witnesses {
        for &l in ells.iter().filter(|&&l| l < *l1 && (l1 - l) % 2 == 0) {
            rep.checked += 1;
            let k = ((l1 - l) / 2) as u32;
            let psi = tower_pad(model, &w.psi, k)?;
            let nu = psi.component_group(alph).normalize(w.nu.bits());
            let (a, b) = chi_twisted(model, &ep.phi, &psi, w.z)?;
            if a != ep.mu || b != nu {
                rep.violations.push(format!("padded witness from l={l1} is not distinguished at l={l}"));
                continue;
            }
            let expect = EnhancedParameter { phi: psi, mu: nu }.contragredient(model)?;
            if !cache.contains_key(&l) {
                cache.insert(l, wide.descend(ep, l)?);
            }
            let d = &cache[&l];
            if !d.members.iter().any(|m| m.z == w.z && m.member == expect) {
                rep.violations.push(format!("search at l={l} misses the padded witness from l={l1}"));
            }
        }
    }
    Ok(rep)
}

/// At the first occurrence every descent member is discrete, and no
/// all-bounded candidate occurs above it.
pub fn verify_discreteness(model: &Model, ep: &EnhancedParameter, cfg: &SearchConfig) -> Result<(Option<usize>, Report)> {
    let alph = &model.alphabet;
    let mut rep = Report::default();
    let fo = first_occurrence(model, ep, cfg)?;
    let Some(l0) = fo.ell0 else {
        return Ok((None, rep));
    };
    let mut wide = Descender::new(model, cfg.with_class(CandidateClass::AllBounded));
    for l in legal_ells(ep.phi.family(), ep.phi.space_dim()).into_iter().filter(|&l| l >= l0) {
        let d = wide.descend(ep, l)?;
        rep.checked += 1;
        if l > l0 && !d.is_empty() {
            rep.violations.push(format!("non-discrete candidate occurs at l={l} above l0={l0}"));
        }
        if l == l0 {
            for m in &d.members {
                if !m.psi.is_discrete(alph) {
                    rep.violations.push(format!("non-discrete member at l0={l0}: {}", m.member.to_json(alph)));
                }
            }
            if d.distinct() != fo.set.as_ref().map(DescentSet::distinct).unwrap_or_default() {
                rep.violations.push(format!("discrete and all-bounded searches disagree at l0={l0}"));
            }
        }
    }
    Ok((Some(l0), rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggp::eta;
    use crate::local_field::LocalField;
    use crate::random::{random_parameter, random_split_model, random_unitary_model};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ell_parity() {
        assert!(legal_ell(Family::SoOdd, 5, 3));
        assert!(!legal_ell(Family::SoOdd, 5, 2));
        assert!(!legal_ell(Family::Sp, 4, 1));
        assert!(legal_ell(Family::Mp, 4, 4));
        assert!((1..=4).all(|l| legal_ell(Family::U, 4, l)));
        assert!(!legal_ell(Family::U, 4, 0));
    }

    #[test]
    fn top_descent_is_the_eta_orbit_of_the_trivial_character() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = LocalField::padic(3).unwrap();
        let cfg = SearchConfig::default();
        for _ in 0..20 {
            let m = random_split_model(&mut rng, f, 3).unwrap();
            let Some(ep) = random_parameter(&mut rng, &m, Family::SoOdd, 5, None, &cfg).unwrap() else {
                continue;
            };
            for z in f.square_classes() {
                let d = Descender::new(&m, cfg.clone()).descend_z(&ep, 5, z).unwrap();
                let cg = ep.component_group(&m.alphabet);
                let zero_ok = (m.field().minus_one() * z * ep.phi.disc().unwrap()).is_one();
                let expect = zero_ok && ep.mu == cg.mul(cg.trivial(), eta(&m, &ep.phi, z).unwrap());
                assert_eq!(!d.is_empty(), expect);
            }
        }
    }

    #[test]
    fn nu_is_determined() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_split_model(&mut rng, LocalField::padic(5).unwrap(), 3).unwrap();
        let cfg = SearchConfig::default();
        for fam in [Family::Sp, Family::SoEven] {
            let Some(ep) = random_parameter(&mut rng, &m, fam, 4, None, &cfg).unwrap() else {
                continue;
            };
            for l in legal_ells(fam, 4) {
                let d = descend(&m, &ep, l, &cfg.with_class(CandidateClass::AllBounded)).unwrap();
                for x in &d.members {
                    let (a, b) = chi_twisted(&m, &ep.phi, &x.psi, x.z).unwrap();
                    assert_eq!((a, b), (ep.mu, x.nu));
                }
            }
        }
    }

    #[test]
    fn padding_keeps_the_component_group_and_chi() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_split_model(&mut rng, LocalField::padic(3).unwrap(), 3).unwrap();
        let cfg = SearchConfig::default();
        let alph = &m.alphabet;
        let phi = random_parameter(&mut rng, &m, Family::SoOdd, 5, None, &cfg).unwrap().unwrap().phi;
        let psi = random_parameter(&mut rng, &m, Family::SoEven, 2, None, &cfg).unwrap().unwrap().phi;
        assert_eq!(tower_pad(&m, &psi, 0).unwrap(), psi);
        let padded = tower_pad(&m, &psi, 1).unwrap();
        assert_eq!(padded.component_group(alph).basis(), psi.component_group(alph).basis());
        assert_eq!(crate::ggp::chi(&m, &phi, &padded).unwrap(), crate::ggp::chi(&m, &phi, &psi).unwrap());
    }

    #[test]
    fn tower_and_discreteness_on_random_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let cfg = SearchConfig::default();
        for it in 0..12 {
            let f = [LocalField::padic(2).unwrap(), LocalField::padic(3).unwrap(), LocalField::Real][it % 3];
            let (m, fams) = if it % 4 == 3 {
                (random_unitary_model(&mut rng, f, 4).unwrap(), vec![(Family::U, 3), (Family::U, 4)])
            } else {
                (
                    random_split_model(&mut rng, f, 3).unwrap(),
                    vec![(Family::SoOdd, 5), (Family::SoEven, 4), (Family::Sp, 4), (Family::Mp, 4)],
                )
            };
            for (fam, n) in fams {
                let Some(ep) = random_parameter(&mut rng, &m, fam, n, None, &cfg).unwrap() else {
                    continue;
                };
                assert!(verify_tower(&m, &ep, &cfg).unwrap().violations.is_empty());
                assert!(verify_discreteness(&m, &ep, &cfg).unwrap().1.violations.is_empty());
            }
        }
    }

    #[test]
    fn larger_bounds_never_shrink() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_split_model(&mut rng, LocalField::padic(3).unwrap(), 3).unwrap();
        let small = SearchConfig { max_b: 1, max_summands: 3, ..SearchConfig::default() };
        let big = SearchConfig::default();
        for _ in 0..10 {
            let Some(ep) = random_parameter(&mut rng, &m, Family::Sp, 4, None, &small).unwrap() else {
                continue;
            };
            let a = first_occurrence(&m, &ep, &small).unwrap().ell0;
            let b = first_occurrence(&m, &ep, &big).unwrap().ell0;
            assert!(a <= b);
            for l in legal_ells(Family::Sp, 4) {
                let x = descend(&m, &ep, l, &small).unwrap().distinct();
                let y = descend(&m, &ep, l, &big).unwrap().distinct();
                assert!(x.is_subset(&y));
            }
        }
    }

    #[test]
    fn illegal_ell_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_split_model(&mut rng, LocalField::padic(3).unwrap(), 2).unwrap();
        let ep = random_parameter(&mut rng, &m, Family::Sp, 4, None, &SearchConfig::default()).unwrap().unwrap();
        assert!(matches!(descend(&m, &ep, 3, &SearchConfig::default()), Err(Error::IllegalEll(3))));
    }
}
