//! Representation side: Vogan packets, standard modules, the spectrum of a
//! packet member along each rational orbit and the spectral first
//! occurrence. Candidates are produced by a generator of its own (a
//! multiplicity-free good-parity core plus doubled summands `X ⊕ X^vee`)
//! and filtered; only the character formulas are shared with descent.

use crate::descent::{Report, SearchConfig};
use crate::error::{Error, Result};
use crate::ggp::{chi_twisted, multiplicity_tempered};
use crate::hermitian::{pure_inner_forms, rational_orbits, relevant_pair, EpsHermSpace, Family, GroupDesc, OrbitData};
use crate::local_field::{QuadExt, SquareClass};
use crate::lparam::{param_dim, CharacterVec, Duality, EnhancedParameter, Parameter, SimpleSummand, Summands};
use crate::model::Model;
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};

pub const QUASI_SPLIT_TAG: &str = "quasi-split";

/// One member of a Vogan packet, labelled by `mu` relative to the Whittaker datum `whittaker`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacketEntry {
    pub phi: Parameter,
    pub mu: CharacterVec,
    pub whittaker: SquareClass,
    pub form: String,
}

fn form_tag(mu: CharacterVec) -> String {
    if mu.bits() == 0 {
        QUASI_SPLIT_TAG.into()
    } else {
        format!("inner-{:x}", mu.bits())
    }
}

impl PacketEntry {
    pub fn new(model: &Model, phi: Parameter, mu: CharacterVec, whittaker: SquareClass) -> Self {
        let mu = phi.component_group(&model.alphabet).normalize(mu.bits());
        PacketEntry {
            phi,
            mu,
            whittaker: model.ext().reduce(whittaker),
            form: form_tag(mu),
        }
    }

    pub fn is_quasi_split(&self) -> bool {
        self.form == QUASI_SPLIT_TAG
    }

    /// The label relative to the datum `1`: `mu · eta_a`.
    pub fn normalized(&self, model: &Model) -> Result<EnhancedParameter> {
        EnhancedParameter {
            phi: self.phi.clone(),
            mu: self.mu,
        }
        .eta_twist(model, self.whittaker)
    }

    /// The same representation labelled relative to the datum `a`.
    pub fn rebase(&self, model: &Model, a: SquareClass) -> Result<PacketEntry> {
        let e = self.normalized(model)?.eta_twist(model, a)?;
        Ok(PacketEntry::new(model, e.phi, e.mu, a))
    }

    pub fn to_json(&self, model: &Model) -> Value {
        let alph = &model.alphabet;
        json!({
            "parameter": self.phi.to_json(alph),
            "mu": self.phi.component_group(alph).to_json(alph, self.mu),
            "whittaker": self.whittaker.tag(),
            "form": self.form,
        })
    }
}

/// `Pi_phi`, one entry per character of `S_phi`.
pub fn vogan_packet(model: &Model, phi: &Parameter, a: SquareClass) -> Result<Vec<PacketEntry>> {
    if !phi.generic() {
        return Err(Error::Parameter("packets are only built for generic parameters".into()));
    }
    Ok(phi
        .component_group(&model.alphabet)
        .characters()
        .into_iter()
        .map(|mu| PacketEntry::new(model, phi.clone(), mu, a))
        .collect())
}

/// `I(s, tau_1..tau_t, sigma_0)`: only the GL dimensions enter multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardModuleData {
    pub s: Vec<f64>,
    pub gl_dims: Vec<usize>,
    pub sigma0: EnhancedParameter,
}

impl StandardModuleData {
    pub fn tempered(sigma0: EnhancedParameter) -> Self {
        StandardModuleData {
            s: vec![],
            gl_dims: vec![],
            sigma0,
        }
    }

    pub fn new(s: Vec<f64>, gl_dims: Vec<usize>, sigma0: EnhancedParameter) -> Result<Self> {
        if s.len() != gl_dims.len() {
            return Err(Error::Dimension("one exponent per GL block".into()));
        }
        if s.windows(2).any(|w| w[0] < w[1]) || s.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::Input("exponents must be finite, non-negative and non-increasing".into()));
        }
        if gl_dims.contains(&0) {
            return Err(Error::Dimension("GL blocks have positive dimension".into()));
        }
        Ok(StandardModuleData { s, gl_dims, sigma0 })
    }

    pub fn p0(&self) -> usize {
        self.gl_dims.iter().sum()
    }

    pub fn space_dim(&self) -> usize {
        self.sigma0.phi.space_dim() + 2 * self.p0()
    }

    pub fn with_block(&self, s: f64, dim: usize) -> Result<Self> {
        let mut pairs: Vec<(f64, usize)> = self.s.iter().copied().zip(self.gl_dims.iter().copied()).collect();
        pairs.push((s, dim));
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        Self::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect(), self.sigma0.clone())
    }
}

/// `m(pi, sigma)`: both sides are reduced to their tempered parts.
pub fn multiplicity(model: &Model, pi: &StandardModuleData, sigma: &StandardModuleData, z: SquareClass) -> Result<u8> {
    if !pi.sigma0.phi.generic() {
        return Err(Error::Parameter("pi must have a generic parameter".into()));
    }
    let (n, m) = (pi.space_dim(), sigma.space_dim());
    if m >= n {
        return Err(Error::Dimension(format!("sigma acts on dim {m}, pi on dim {n}")));
    }
    multiplicity_tempered(model, &pi.sigma0, &sigma.sigma0, z)
}

/// The class `z` attached to a rational orbit.
pub fn orbit_z(ext: QuadExt, family: Family, n: usize, orbit: &OrbitData) -> SquareClass {
    let m1 = ext.field().minus_one();
    let z = match family {
        Family::SoOdd | Family::SoEven => m1.pow(n as u64) * orbit.value,
        Family::Sp | Family::Mp => orbit.line_class,
        Family::U if orbit.p1 % 2 == 0 => orbit.line_class,
        Family::U => orbit.value,
    };
    ext.reduce(z)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpectrumMember {
    pub p0: usize,
    pub gl_dims: Vec<usize>,
    /// Contragredient of the tempered part.
    pub sigma0_dual: EnhancedParameter,
}

impl SpectrumMember {
    pub fn to_json(&self, model: &Model) -> Value {
        json!({
            "p0": self.p0,
            "gl_dims": self.gl_dims,
            "sigma0_dual": self.sigma0_dual.to_json(&model.alphabet),
            "discrete": self.p0 == 0 && self.sigma0_dual.is_discrete(&model.alphabet),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitHit {
    pub form: GroupDesc,
    pub orbit: OrbitData,
    pub z: SquareClass,
    pub members: Vec<SpectrumMember>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumResult {
    pub p1: usize,
    pub hits: Vec<OrbitHit>,
    pub members: Vec<SpectrumMember>,
    pub bound_limited: bool,
}

impl SpectrumResult {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Contragredients of the tempered members.
    pub fn tempered_duals(&self) -> BTreeSet<EnhancedParameter> {
        self.members.iter().filter(|m| m.p0 == 0).map(|m| m.sigma0_dual.clone()).collect()
    }

    pub fn to_json(&self, model: &Model) -> Value {
        json!({
            "p1": self.p1,
            "bound_limited": self.bound_limited,
            "orbits": self.hits.iter().map(|h| json!({
                "form": h.form.to_json(),
                "orbit": h.orbit.to_json(),
                "z": h.z.tag(),
                "members": h.members.iter().map(|m| m.to_json(model)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "members": self.members.iter().map(|m| m.to_json(model)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Shape {
    family: Family,
    kind: Duality,
    dim: usize,
    det: Option<SquareClass>,
    disc: Option<SquareClass>,
}

fn shape_of(model: &Model, family: Family, phi_kind: Duality, w: &EpsHermSpace) -> Result<Shape> {
    let dim = param_dim(family, w.dim())?;
    let one = model.field().one();
    Ok(match family {
        Family::SoEven => Shape {
            family,
            kind: Duality::Orthogonal,
            dim,
            det: w.disc(),
            disc: w.disc(),
        },
        Family::SoOdd => Shape {
            family,
            kind: Duality::Symplectic,
            dim,
            det: None,
            disc: w.disc(),
        },
        Family::Sp => Shape {
            family,
            kind: Duality::Orthogonal,
            dim,
            det: Some(one),
            disc: None,
        },
        Family::Mp => Shape {
            family,
            kind: Duality::Symplectic,
            dim,
            det: None,
            disc: None,
        },
        Family::U => Shape {
            family,
            kind: phi_kind.flip(),
            dim,
            det: None,
            disc: None,
        },
    })
}

/// Generate-and-filter: a multiplicity-free set of good-parity summands
/// plus a multiset of doubles `X ⊕ X^vee`, then validation.
fn generate(model: &Model, shape: &Shape, cfg: &SearchConfig) -> Vec<Parameter> {
    let alph = &model.alphabet;
    let mut irreps: BTreeSet<usize> = match &cfg.candidates {
        Some(c) => c.iter().copied().collect(),
        None => (0..alph.len()).collect(),
    };
    for i in irreps.clone() {
        irreps.insert(alph.irr(i).partner);
    }
    if let Some(t) = alph.trivial() {
        irreps.insert(t);
    }
    let mut all = Vec::new();
    for &rho in &irreps {
        for b in 1..=cfg.max_b {
            let s = SimpleSummand::new(rho, b);
            if s.dim(alph) as usize <= shape.dim {
                all.push(s);
            }
        }
    }
    let core: Vec<SimpleSummand> = all.iter().copied().filter(|s| s.duality(alph) == shape.kind).collect();
    // one representative per {X, X^vee}
    let doubles: Vec<SimpleSummand> = all
        .iter()
        .copied()
        .filter(|s| {
            let p = alph.irr(s.rho).partner;
            p >= s.rho
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut picked = Vec::new();
    pick_core(model, shape, cfg, &core, &doubles, 0, shape.dim, &mut picked, &mut out);
    out.into_iter().collect()
}

#[allow(clippy::too_many_arguments)]
fn pick_core(
    model: &Model,
    shape: &Shape,
    cfg: &SearchConfig,
    core: &[SimpleSummand],
    doubles: &[SimpleSummand],
    i: usize,
    rem: usize,
    picked: &mut Vec<SimpleSummand>,
    out: &mut BTreeSet<Parameter>,
) {
    if i == core.len() {
        if rem % 2 == 0 {
            let mut pairs = Vec::new();
            pick_doubles(model, shape, cfg, doubles, 0, rem, picked, &mut pairs, out);
        }
        return;
    }
    pick_core(model, shape, cfg, core, doubles, i + 1, rem, picked, out);
    let d = core[i].dim(&model.alphabet) as usize;
    if d <= rem && picked.len() < cfg.max_summands {
        picked.push(core[i]);
        pick_core(model, shape, cfg, core, doubles, i + 1, rem - d, picked, out);
        picked.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn pick_doubles(
    model: &Model,
    shape: &Shape,
    cfg: &SearchConfig,
    doubles: &[SimpleSummand],
    i: usize,
    rem: usize,
    core: &[SimpleSummand],
    pairs: &mut Vec<(SimpleSummand, u32)>,
    out: &mut BTreeSet<Parameter>,
) {
    let alph = &model.alphabet;
    if rem == 0 {
        let mut list: Summands = core.iter().map(|&s| (s, 1)).collect();
        for &(x, k) in pairs.iter() {
            let xv = SimpleSummand::new(alph.irr(x.rho).partner, x.b);
            list.push((x, k));
            list.push((xv, k));
        }
        let Ok(p) = Parameter::new(alph, shape.family, Some(shape.kind), &list, shape.disc) else {
            return;
        };
        if p.summands().len() > cfg.max_summands {
            return;
        }
        if shape.det.is_some_and(|d| d != p.det()) {
            return;
        }
        if cfg.class == crate::descent::CandidateClass::DiscreteOnly && !p.is_discrete(alph) {
            return;
        }
        out.insert(p);
        return;
    }
    if i == doubles.len() {
        return;
    }
    pick_doubles(model, shape, cfg, doubles, i + 1, rem, core, pairs, out);
    let d = 2 * doubles[i].dim(alph) as usize;
    let mut k = 1;
    while k as usize * d <= rem {
        pairs.push((doubles[i], k));
        pick_doubles(model, shape, cfg, doubles, i + 1, rem - k as usize * d, core, pairs, out);
        pairs.pop();
        k += 1;
    }
}

/// Spectrum computations for one packet member, with a candidate cache.
pub struct Spectral<'a> {
    model: &'a Model,
    cfg: SearchConfig,
    pi: EnhancedParameter,
    g: GroupDesc,
    cache: HashMap<Shape, Vec<Parameter>>,
    pairs: HashMap<(Parameter, SquareClass), (CharacterVec, CharacterVec)>,
}

impl<'a> Spectral<'a> {
    pub fn new(model: &'a Model, entry: &PacketEntry, cfg: &SearchConfig) -> Result<Self> {
        if !entry.phi.generic() {
            return Err(Error::Parameter("spectra are only defined for generic parameters".into()));
        }
        let pi = entry.normalized(model)?;
        let phi = &pi.phi;
        let disc = match phi.family() {
            Family::SoOdd | Family::SoEven => phi.disc(),
            _ => None,
        };
        let g = GroupDesc::quasi_split(phi.family(), model.ext(), phi.space_dim(), disc)?;
        Ok(Spectral {
            model,
            cfg: SearchConfig {
                class: crate::descent::CandidateClass::AllBounded,
                ..cfg.clone()
            },
            pi,
            g,
            cache: HashMap::new(),
            pairs: HashMap::new(),
        })
    }

    pub fn group(&self) -> &GroupDesc {
        &self.g
    }

    pub fn pi(&self) -> &EnhancedParameter {
        &self.pi
    }

    fn candidates(&mut self, shape: &Shape) -> Option<Vec<Parameter>> {
        if shape.dim > self.cfg.max_dim {
            return None;
        }
        if !self.cache.contains_key(shape) {
            let c = generate(self.model, shape, &self.cfg);
            self.cache.insert(shape.clone(), c);
        }
        Some(self.cache[shape].clone())
    }

    /// Whether some pure inner form admits orbits of head `p1`.
    pub fn admissible(&self, p1: usize) -> Result<bool> {
        relevant_pair(&self.g, p1)?;
        Ok(pure_inner_forms(&self.g).iter().any(|f| f.orbit_admissible(p1)))
    }

    pub fn spectrum_at(&mut self, p1: usize) -> Result<SpectrumResult> {
        if !self.admissible(p1)? {
            return Err(Error::Inadmissible(p1));
        }
        let model = self.model;
        let family = self.g.family;
        let n = self.g.dim();
        let mut hits = Vec::new();
        let mut all = BTreeSet::new();
        let mut limited = false;
        for form in pure_inner_forms(&self.g) {
            if !form.orbit_admissible(p1) {
                continue;
            }
            for orbit in rational_orbits(&form.space, p1)? {
                let z = orbit_z(model.ext(), family, n, &orbit);
                let w = orbit.descended;
                let mut members = Vec::new();
                for p0 in 0..=w.witt() {
                    let w0 = w.remove_hyperbolic(p0)?;
                    let h = relevant_pair(&self.g, n - w0.dim())?.family;
                    let shape = shape_of(model, h, self.pi.phi.kind(), &w0)?;
                    let Some(cands) = self.candidates(&shape) else {
                        limited = true;
                        continue;
                    };
                    for psi in cands {
                        let key = (psi.clone(), z);
                        let pair = match self.pairs.get(&key) {
                            Some(p) => *p,
                            None => {
                                let p = chi_twisted(model, &self.pi.phi, &psi, z)?;
                                self.pairs.insert(key, p);
                                p
                            }
                        };
                        for nu in psi.component_group(&model.alphabet).characters() {
                            if pair != (self.pi.mu, nu) {
                                continue;
                            }
                            let sigma0 = EnhancedParameter { phi: psi.clone(), mu: nu };
                            members.push(SpectrumMember {
                                p0,
                                gl_dims: if p0 > 0 { vec![p0] } else { vec![] },
                                sigma0_dual: sigma0.contragredient(model)?,
                            });
                        }
                    }
                }
                members.sort();
                members.dedup();
                all.extend(members.iter().cloned());
                if !members.is_empty() {
                    hits.push(OrbitHit { form, orbit, z, members });
                }
            }
        }
        Ok(SpectrumResult {
            p1,
            hits,
            members: all.into_iter().collect(),
            bound_limited: limited,
        })
    }

    pub fn first_occurrence(&mut self) -> Result<SpectralFirst> {
        let n = self.g.dim();
        let mut limited = false;
        for p1 in (1..=n).rev() {
            if !matches!(self.admissible(p1), Ok(true)) {
                continue;
            }
            let r = self.spectrum_at(p1)?;
            limited |= r.bound_limited;
            if !r.is_empty() {
                return Ok(SpectralFirst {
                    fs: Some(p1),
                    result: Some(r),
                    bound_limited: limited,
                });
            }
        }
        Ok(SpectralFirst {
            fs: None,
            result: None,
            bound_limited: limited,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralFirst {
    pub fs: Option<usize>,
    pub result: Option<SpectrumResult>,
    pub bound_limited: bool,
}

impl SpectralFirst {
    pub fn to_json(&self, model: &Model) -> Value {
        json!({
            "fs": self.fs,
            "bound_limited": self.bound_limited,
            "spectrum": self.result.as_ref().map(|r| r.to_json(model)),
        })
    }
}

pub fn spectrum_at(model: &Model, entry: &PacketEntry, p1: usize, cfg: &SearchConfig) -> Result<SpectrumResult> {
    Spectral::new(model, entry, cfg)?.spectrum_at(p1)
}

pub fn spectral_first_occurrence(model: &Model, entry: &PacketEntry, cfg: &SearchConfig) -> Result<SpectralFirst> {
    Spectral::new(model, entry, cfg)?.first_occurrence()
}

/// The spectrum at `f_s`, with a report of members that are not discrete
/// or carry GL blocks.
pub fn first_descent_spectrum(model: &Model, entry: &PacketEntry, cfg: &SearchConfig) -> Result<(SpectralFirst, Report)> {
    let first = spectral_first_occurrence(model, entry, cfg)?;
    let mut rep = Report::default();
    if let Some(r) = &first.result {
        for m in &r.members {
            rep.checked += 1;
            if m.p0 > 0 {
                rep.violations.push(format!("member with GL blocks of total dim {} at f_s", m.p0));
            } else if !m.sigma0_dual.is_discrete(&model.alphabet) {
                rep.violations.push(format!("non-discrete member {}", m.sigma0_dual.to_json(&model.alphabet)));
            }
        }
    }
    Ok((first, rep))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Bessel,
    FourierJacobi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleWitness {
    pub p1: usize,
    pub form: GroupDesc,
    pub orbit: OrbitData,
    pub z: SquareClass,
    pub sigma: EnhancedParameter,
    pub sigma_dual: EnhancedParameter,
    pub kind: WitnessKind,
}

impl SubmoduleWitness {
    pub fn to_json(&self, model: &Model) -> Value {
        let alph = &model.alphabet;
        json!({
            "p1": self.p1,
            "form": self.form.to_json(),
            "orbit": self.orbit.to_json(),
            "z": self.z.tag(),
            "sigma": self.sigma.to_json(alph),
            "sigma_dual": self.sigma_dual.to_json(alph),
            "kind": match self.kind { WitnessKind::Bessel => "bessel", WitnessKind::FourierJacobi => "fourier-jacobi" },
        })
    }
}

/// `p1 = f_s`, an orbit realising it and a discrete `sigma` whose
/// contragredient lies in the spectrum.
pub fn submodule_witness(model: &Model, entry: &PacketEntry, cfg: &SearchConfig) -> Result<Option<SubmoduleWitness>> {
    let first = spectral_first_occurrence(model, entry, cfg)?;
    let Some(r) = first.result else {
        return Ok(None);
    };
    for h in &r.hits {
        if let Some(m) = h.members.iter().find(|m| m.p0 == 0) {
            let sigma = m.sigma0_dual.contragredient(model)?;
            return Ok(Some(SubmoduleWitness {
                p1: r.p1,
                form: h.form,
                orbit: h.orbit,
                z: h.z,
                sigma,
                sigma_dual: m.sigma0_dual.clone(),
                kind: if r.p1 % 2 == 1 { WitnessKind::Bessel } else { WitnessKind::FourierJacobi },
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::first_occurrence;
    use crate::local_field::LocalField;
    use crate::random::{random_parameter, random_split_model};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(seed: u64, family: Family, n: usize) -> (Model, EnhancedParameter) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = SearchConfig::default();
        loop {
            let m = random_split_model(&mut rng, LocalField::padic(3).unwrap(), 3).unwrap();
            if let Some(ep) = random_parameter(&mut rng, &m, family, n, None, &cfg).unwrap() {
                return (m, ep);
            }
        }
    }

    #[test]
    fn packet_size_is_the_group_order() {
        let (m, ep) = sample(1, Family::SoOdd, 5);
        let cg = ep.phi.component_group(&m.alphabet);
        let packet = vogan_packet(&m, &ep.phi, m.field().one()).unwrap();
        assert_eq!(packet.len() as u64, cg.order());
        assert_eq!(packet.iter().filter(|e| e.is_quasi_split()).count(), 1);
    }

    #[test]
    fn rebase_round_trip() {
        let (m, ep) = sample(2, Family::SoEven, 4);
        let e = PacketEntry::new(&m, ep.phi.clone(), ep.mu, m.field().one());
        for a in m.field().square_classes() {
            let r = e.rebase(&m, a).unwrap();
            assert_eq!(r.normalized(&m).unwrap(), e.normalized(&m).unwrap());
            assert_eq!(r.rebase(&m, m.field().one()).unwrap(), e);
        }
    }

    #[test]
    fn gl_blocks_do_not_change_multiplicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_split_model(&mut rng, LocalField::padic(5).unwrap(), 3).unwrap();
        let cfg = SearchConfig::default();
        let pi = random_parameter(&mut rng, &m, Family::SoOdd, 7, None, &cfg).unwrap().unwrap();
        let sig = random_parameter(&mut rng, &m, Family::SoEven, 2, None, &cfg).unwrap().unwrap();
        let p = StandardModuleData::tempered(pi);
        let s = StandardModuleData::tempered(sig);
        let z = m.field().one();
        let base = multiplicity(&m, &p, &s, z).unwrap();
        let s2 = s.with_block(0.5, 1).unwrap().with_block(0.25, 1).unwrap();
        assert_eq!(s2.space_dim(), 6);
        assert_eq!(multiplicity(&m, &p, &s2, z).unwrap(), base);
        assert!(multiplicity(&m, &p, &s2.with_block(0.1, 1).unwrap(), z).is_err());
    }

    #[test]
    fn bad_exponents_are_rejected() {
        let (_, ep) = sample(4, Family::Sp, 2);
        assert!(StandardModuleData::new(vec![0.1, 0.5], vec![1, 1], ep.clone()).is_err());
        assert!(StandardModuleData::new(vec![-1.0], vec![1], ep.clone()).is_err());
        assert!(StandardModuleData::new(vec![1.0], vec![0], ep).is_err());
    }

    #[test]
    fn spectral_and_arithmetic_first_occurrence_agree() {
        let cfg = SearchConfig::default();
        for (seed, fam, n) in [(5, Family::SoOdd, 5), (6, Family::SoEven, 4), (7, Family::Sp, 4), (8, Family::Mp, 4)] {
            let (m, ep) = sample(seed, fam, n);
            let entry = PacketEntry::new(&m, ep.phi.clone(), ep.mu, m.field().one());
            let fa = first_occurrence(&m, &ep, &cfg).unwrap();
            let (fs, rep) = first_descent_spectrum(&m, &entry, &cfg).unwrap();
            assert!(rep.violations.is_empty());
            assert_eq!(fs.fs, fa.ell0);
            if let Some(r) = fs.result {
                assert_eq!(r.tempered_duals(), fa.set.unwrap().distinct());
            }
        }
    }
}
