//! Seeded generation of alphabets, root-number tables and parameters.
//!
//! Alphabets over `E = F` are unions of free twist orbits: every base
//! irreducible `rho` comes with `rho ⊗ chi_z` for all square classes `z`.
//! Root numbers are filled in so that twisting is consistent:
//! `eps(rho_a ⊗ sigma_b) = e · lambda(ab) · (ab, -1)^{dim/2}` with a random
//! sign `e` and a random quadratic character `lambda` per base pair.

use crate::descent::{enumerate_candidates, CandidateSpec, SearchConfig};
use crate::epsilon::EpsilonTable;
use crate::error::Result;
use crate::hermitian::Family;
use crate::local_field::{LocalField, QuadExt, SquareClass};
use crate::lparam::{param_dim, Alphabet, Duality, EnhancedParameter, IrrSpec, Parameter};
use crate::model::Model;
use crate::sign::Sign;
use rand::seq::IndexedRandom;
use rand::Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseIrr {
    pub name: String,
    pub dim: u32,
    pub duality: Duality,
    pub det: SquareClass,
}

fn orbit_id(name: &str, z: SquareClass) -> String {
    match (name, z.is_one()) {
        ("1", true) => "1".into(),
        ("1", false) => format!("chi_{}", z.tag()),
        (_, true) => name.into(),
        (_, false) => format!("{name}_{}", z.tag()),
    }
}

/// `{rho ⊗ chi_z}` with its twist table.
pub fn twist_orbit(field: LocalField, base: &BaseIrr, partner: Option<&str>) -> Vec<IrrSpec> {
    let classes = field.square_classes();
    classes
        .iter()
        .map(|&a| {
            let mut s = IrrSpec::new(&orbit_id(&base.name, a), base.dim, base.duality, &(base.det * a.pow(base.dim as u64)).tag());
            s.partner = partner.map(|p| orbit_id(p, a));
            s.twists = classes
                .iter()
                .filter(|z| !z.is_one())
                .map(|&z| (z.tag(), orbit_id(&base.name, a * z)))
                .collect::<BTreeMap<_, _>>();
            s
        })
        .collect()
}

/// Quadratic characters, the given base orbits and optionally a pad orbit
/// `lam`, `lam'` of non-self-dual characters with det `pad_det`.
pub fn split_alphabet(field: LocalField, bases: &[BaseIrr], pad_det: Option<SquareClass>) -> Result<Alphabet> {
    let one = BaseIrr {
        name: "1".into(),
        dim: 1,
        duality: Duality::Orthogonal,
        det: field.one(),
    };
    let mut specs = twist_orbit(field, &one, None);
    for b in bases {
        specs.extend(twist_orbit(field, b, None));
    }
    if let Some(d) = pad_det {
        let lam = BaseIrr {
            name: "lam".into(),
            dim: 1,
            duality: Duality::NonSelfDual,
            det: d,
        };
        let lam2 = BaseIrr { name: "lam'".into(), ..lam.clone() };
        let mut a = twist_orbit(field, &lam, Some("lam'"));
        a[0].pad = true;
        specs.extend(a);
        specs.extend(twist_orbit(field, &lam2, Some("lam")));
    }
    Alphabet::new(QuadExt::split(field), &specs)
}

fn random_character<R: Rng>(rng: &mut R) -> u8 {
    rng.random::<u8>()
}

fn char_value(mask: u8, z: SquareClass) -> Sign {
    Sign::from_bool_minus((mask & z.bits()).count_ones() % 2 == 1)
}

fn minus_one_value(c: SquareClass) -> Sign {
    c.hilbert(c.field().minus_one())
}

/// Root numbers for an alphabet built by [`split_alphabet`].
pub fn split_table<R: Rng>(rng: &mut R, alph: &Alphabet, bases: &[BaseIrr]) -> Result<EpsilonTable> {
    let field = alph.ext().field();
    let classes = field.square_classes();
    let mut t = EpsilonTable::new();
    let mut orth: Vec<(&str, u32)> = vec![("1", 1)];
    orth.extend(bases.iter().filter(|b| b.duality == Duality::Orthogonal).map(|b| (b.name.as_str(), b.dim)));
    for s in bases.iter().filter(|b| b.duality == Duality::Symplectic) {
        for &(r, rd) in &orth {
            let e = if rng.random_bool(0.5) { Sign::Minus } else { Sign::Plus };
            let lam = random_character(rng);
            for &a in &classes {
                for &b in &classes {
                    let c = a * b;
                    let v = e * char_value(lam, c) * minus_one_value(c).pow((rd * s.dim / 2) as u64);
                    let i = alph.lookup(&orbit_id(r, a))?;
                    let j = alph.lookup(&orbit_id(&s.name, b))?;
                    t.set_pair(alph, i, j, v)?;
                }
            }
        }
    }
    Ok(t)
}

/// Random split model with at most `max_bases` base orbits besides the
/// quadratic characters and the pad.
pub fn random_split_model<R: Rng>(rng: &mut R, field: LocalField, max_bases: usize) -> Result<Model> {
    let classes = field.square_classes();
    let k = rng.random_range(1..=max_bases.max(1));
    let mut bases = Vec::new();
    for i in 0..k {
        let name = ["a", "b", "c", "d", "e", "f"][i % 6].to_string();
        let base = if rng.random_bool(0.5) {
            BaseIrr {
                name,
                dim: *[2, 2, 4].choose(rng).unwrap(),
                duality: Duality::Symplectic,
                det: field.one(),
            }
        } else {
            BaseIrr {
                name,
                dim: rng.random_range(1..=3),
                duality: Duality::Orthogonal,
                det: *classes.choose(rng).unwrap(),
            }
        };
        bases.push(base);
    }
    let pad = *classes.choose(rng).unwrap();
    let alph = split_alphabet(field, &bases, Some(pad))?;
    let eps = split_table(rng, &alph, &bases)?;
    Ok(Model::new(alph, eps))
}

/// Random unitary model: conjugate-orthogonal and conjugate-symplectic
/// characters and planes, and a pad pair.
pub fn random_unitary_model<R: Rng>(rng: &mut R, field: LocalField, max_irrs: usize) -> Result<Model> {
    let nonsquares: Vec<SquareClass> = field.square_classes().into_iter().filter(|c| !c.is_one()).collect();
    let ext = QuadExt::new(field, *nonsquares.choose(rng).unwrap())?;
    let k = rng.random_range(2..=max_irrs.max(2));
    let mut specs = Vec::new();
    for i in 0..k {
        let duality = if i == 0 {
            Duality::ConjOrth
        } else if i == 1 {
            Duality::ConjSymp
        } else if rng.random_bool(0.5) {
            Duality::ConjOrth
        } else {
            Duality::ConjSymp
        };
        let mut s = IrrSpec::new(&format!("x{i}"), rng.random_range(1..=2), duality, "1");
        s.det = None;
        specs.push(s);
    }
    let mut lam = IrrSpec::new("lam", 1, Duality::NonSelfDual, "1");
    lam.det = None;
    lam.partner = Some("lam'".into());
    lam.pad = true;
    let mut lam2 = IrrSpec::new("lam'", 1, Duality::NonSelfDual, "1");
    lam2.det = None;
    lam2.partner = Some("lam".into());
    specs.push(lam);
    specs.push(lam2);
    let alph = Alphabet::new(ext, &specs)?;
    let mut t = EpsilonTable::new();
    for i in 0..alph.len() {
        for j in i + 1..alph.len() {
            if EpsilonTable::in_regime(&alph, i, j) {
                t.set_pair(&alph, i, j, if rng.random_bool(0.5) { Sign::Minus } else { Sign::Plus })?;
            }
        }
    }
    Ok(Model::new(alph, t))
}

/// Uniform choice among the bounded parameters of a group of `family`
/// acting on a space of dimension `n`.
pub fn random_parameter<R: Rng>(
    rng: &mut R,
    model: &Model,
    family: Family,
    n: usize,
    disc: Option<SquareClass>,
    cfg: &SearchConfig,
) -> Result<Option<EnhancedParameter>> {
    let alph = &model.alphabet;
    let field = model.field();
    let dim = param_dim(family, n)?;
    let kind = match family {
        Family::SoOdd | Family::Mp => Duality::Symplectic,
        Family::SoEven | Family::Sp => Duality::Orthogonal,
        Family::U => {
            if rng.random_bool(0.5) {
                Duality::ConjOrth
            } else {
                Duality::ConjSymp
            }
        }
    };
    let det = match family {
        Family::SoEven => Some(disc.unwrap_or(field.one())),
        Family::Sp => Some(field.one()),
        _ => None,
    };
    let disc = match family {
        Family::SoEven => det,
        Family::SoOdd => Some(disc.unwrap_or(field.one())),
        _ => None,
    };
    let spec = CandidateSpec { family, kind, dim, det, disc };
    let cands = enumerate_candidates(model, &spec, cfg)?;
    let Some(phi) = cands.choose(rng) else {
        return Ok(None);
    };
    let chars = phi.component_group(alph).characters();
    let mu = *chars.choose(rng).unwrap();
    Ok(Some(EnhancedParameter { phi: phi.clone(), mu }))
}

pub fn parameter_of(model: &Model, family: Family, list: &[(&str, u32, u32)]) -> Result<Parameter> {
    let alph = &model.alphabet;
    let summands = list
        .iter()
        .map(|&(id, b, m)| Ok((crate::lparam::SimpleSummand::new(alph.lookup(id)?, b), m)))
        .collect::<Result<Vec<_>>>()?;
    Parameter::new(alph, family, None, &summands, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::validate_table;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_tables_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5] {
            let f = LocalField::padic(p).unwrap();
            for _ in 0..5 {
                let m = random_split_model(&mut rng, f, 3).unwrap();
                assert_eq!(validate_table(&m), Vec::<String>::new());
            }
        }
        let m = random_split_model(&mut rng, LocalField::Real, 3).unwrap();
        assert!(validate_table(&m).is_empty());
    }

    #[test]
    fn unitary_models_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_unitary_model(&mut rng, LocalField::padic(5).unwrap(), 4).unwrap();
        assert!(validate_table(&m).is_empty());
        assert!(m.alphabet.pad().is_some());
    }
}
