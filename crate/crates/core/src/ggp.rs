//! Characters `eta_a` and `chi_{phi,psi}` of component groups, the
//! distinguished pair of a pair of parameters and tempered multiplicities.

use crate::epsilon::{eps_pair, eps_single};
use crate::error::{Error, Result};
use crate::hermitian::Family;
use crate::local_field::SquareClass;
use crate::lparam::{canonical, classify_list, list_det, list_dim, twist_list, CharacterVec, Duality, EnhancedParameter, Parameter, SimpleSummand};
use crate::model::Model;
use crate::sign::Sign;
use serde_json::{json, Value};

fn minus_one_value(c: SquareClass) -> Sign {
    c.hilbert(c.field().minus_one())
}

/// Values of `eta_a` on the good-parity coordinates of `list`.
pub fn eta_signs(model: &Model, family: Family, kind: Duality, list: &[(SimpleSummand, u32)], a: SquareClass) -> Result<Vec<Sign>> {
    let alph = &model.alphabet;
    let gp = classify_list(alph, kind, list).gp;
    gp.iter()
        .map(|&i| {
            let s = list[i].0;
            match family {
                Family::U => Ok(model.ext().omega(a)?.pow(s.dim(alph) as u64)),
                Family::Mp => eps_single(model, s, a),
                _ => Ok(s.det(alph).hilbert(a)),
            }
        })
        .collect()
}

/// `eta_a` as a character of `S_phi`.
pub fn eta(model: &Model, phi: &Parameter, a: SquareClass) -> Result<CharacterVec> {
    let signs = eta_signs(model, phi.family(), phi.kind(), phi.summands(), a)?;
    Ok(phi.component_group(&model.alphabet).from_signs(&signs))
}

fn with_trivial(model: &Model, list: &[(SimpleSummand, u32)]) -> Result<Vec<(SimpleSummand, u32)>> {
    let one = model.alphabet.trivial().ok_or_else(|| Error::Epsilon("no trivial character".into()))?;
    let mut l = list.to_vec();
    l.push((SimpleSummand::new(one, 1), 1));
    Ok(canonical(&l))
}

/// Values of `chi_{phi,psi}` on the good-parity coordinates of `phi`.
pub fn chi_signs(
    model: &Model,
    phi_kind: Duality,
    phi: &[(SimpleSummand, u32)],
    psi_kind: Duality,
    psi: &[(SimpleSummand, u32)],
) -> Result<Vec<Sign>> {
    let alph = &model.alphabet;
    let gp: Vec<SimpleSummand> = classify_list(alph, phi_kind, phi).gp.iter().map(|&i| phi[i].0).collect();
    if !alph.ext().is_split() {
        if phi_kind.is_symplectic_type() == psi_kind.is_symplectic_type() {
            return Err(Error::TypeMismatch(format!("{phi_kind} against {psi_kind}")));
        }
        return gp.iter().map(|&s| eps_pair(model, s, psi)).collect();
    }
    if phi_kind == psi_kind || !phi_kind.is_self_dual() || !psi_kind.is_self_dual() {
        return Err(Error::TypeMismatch(format!("{phi_kind} against {psi_kind}")));
    }
    let odd = |l: &[(SimpleSummand, u32)]| list_dim(alph, l) % 2 == 1;
    let phi1 = if odd(phi) { with_trivial(model, phi)? } else { phi.to_vec() };
    let psi1 = if odd(psi) { with_trivial(model, psi)? } else { psi.to_vec() };
    let dim_psi = list_dim(alph, &psi1);
    let det_psi = minus_one_value(list_det(alph, &psi1));
    let _ = phi1;
    gp.iter()
        .map(|&s| {
            let e = eps_pair(model, s, &psi1)?;
            let a = minus_one_value(s.det(alph)).pow((dim_psi / 2) as u64);
            let d = s.dim(alph);
            let b = if d % 2 == 0 {
                det_psi.pow((d / 2) as u64)
            } else if det_psi == Sign::Plus {
                Sign::Plus
            } else {
                return Err(Error::TypeMismatch(format!("(det psi)(-1)^({d}/2) is not defined")));
            };
            Ok(e * a * b)
        })
        .collect()
}

/// `chi_{phi,psi}` as a character of `S_phi`.
pub fn chi(model: &Model, phi: &Parameter, psi: &Parameter) -> Result<CharacterVec> {
    let signs = chi_signs(model, phi.kind(), phi.summands(), psi.kind(), psi.summands())?;
    Ok(phi.component_group(&model.alphabet).from_signs(&signs))
}

/// Checks that `(G, H)` is a relevant pair and returns the codimension `l`.
pub fn relevant_codim(phi: &Parameter, psi: &Parameter) -> Result<usize> {
    let (f, g) = (phi.family(), psi.family());
    let ok = match (f, g) {
        (Family::SoOdd, Family::SoEven) | (Family::SoEven, Family::SoOdd) => true,
        (Family::Sp, Family::Mp) | (Family::Mp, Family::Sp) => true,
        (Family::U, Family::U) => phi.kind().is_symplectic_type() != psi.kind().is_symplectic_type(),
        _ => false,
    };
    let (n, m) = (phi.space_dim(), psi.space_dim());
    if !ok || m >= n {
        return Err(Error::TypeMismatch(format!(
            "{}({n}) and {}({m}) do not form a relevant pair",
            f.name(),
            g.name()
        )));
    }
    Ok(n - m)
}

/// The pair of characters `(chi^z_{phi,psi}, chi^z_{psi,phi})`.
pub fn chi_twisted(model: &Model, phi: &Parameter, psi: &Parameter, z: SquareClass) -> Result<(CharacterVec, CharacterVec)> {
    let alph = &model.alphabet;
    let ell = relevant_codim(phi, psi)?;
    let z = model.ext().reduce(z);
    let cg_phi = phi.component_group(alph);
    let cg_psi = psi.component_group(alph);
    let side = |a: &Parameter, list: &[(SimpleSummand, u32)], b: &Parameter, blist: &[(SimpleSummand, u32)]| {
        chi_signs(model, a.kind(), list, b.kind(), blist)
    };
    let (first, second) = match (phi.family(), psi.family()) {
        (Family::U, _) => {
            let m1 = model.field().minus_one();
            let z2 = if ell % 2 == 1 { m1 * z } else { z };
            let a = cg_phi.mul(chi(model, phi, psi)?, eta(model, phi, z)?);
            let b = cg_psi.mul(chi(model, psi, phi)?, eta(model, psi, z2)?);
            (a, b)
        }
        (Family::Sp, Family::Mp) => {
            let phiz = twist_list(alph, phi.summands(), z)?;
            let a = cg_phi.mul(cg_phi.from_signs(&side(phi, &phiz, psi, psi.summands())?), eta(model, phi, z)?);
            let b = cg_psi.from_signs(&side(psi, psi.summands(), phi, &phiz)?);
            (a, b)
        }
        (Family::Mp, Family::Sp) => {
            let psiz = twist_list(alph, psi.summands(), z)?;
            let a = cg_phi.from_signs(&side(phi, phi.summands(), psi, &psiz)?);
            let b = cg_psi.mul(cg_psi.from_signs(&side(psi, &psiz, phi, phi.summands())?), eta(model, psi, z)?);
            (a, b)
        }
        _ => {
            let a = cg_phi.mul(chi(model, phi, psi)?, eta(model, phi, z)?);
            let b = cg_psi.mul(chi(model, psi, phi)?, eta(model, psi, z)?);
            (a, b)
        }
    };
    Ok((first, second))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPair {
    pub z: SquareClass,
    pub mu: CharacterVec,
    pub nu: CharacterVec,
}

impl DistinguishedPair {
    pub fn to_json(&self, model: &Model, phi: &Parameter, psi: &Parameter) -> Value {
        let alph = &model.alphabet;
        json!({
            "z": self.z.tag(),
            "mu": phi.component_group(alph).to_json(alph, self.mu),
            "nu": psi.component_group(alph).to_json(alph, self.nu),
        })
    }
}

pub fn distinguished_pair(model: &Model, phi: &Parameter, psi: &Parameter, z: SquareClass) -> Result<DistinguishedPair> {
    let (mu, nu) = chi_twisted(model, phi, psi, z)?;
    Ok(DistinguishedPair {
        z: model.ext().reduce(z),
        mu,
        nu,
    })
}

/// Multiplicity `m(pi, sigma)` for tempered members, `0` or `1`.
pub fn multiplicity_tempered(model: &Model, pi: &EnhancedParameter, sigma: &EnhancedParameter, z: SquareClass) -> Result<u8> {
    let (a, b) = chi_twisted(model, &pi.phi, &sigma.phi, z)?;
    Ok(u8::from(a == pi.mu && b == sigma.mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::EpsilonTable;
    use crate::local_field::{LocalField, QuadExt};
    use crate::lparam::{Alphabet, IrrSpec};

    fn q3_model() -> Model {
        let f = LocalField::padic(3).unwrap();
        let alph = Alphabet::new(
            QuadExt::split(f),
            &[IrrSpec::new("r", 1, Duality::Orthogonal, "u"), IrrSpec::new("s", 2, Duality::Symplectic, "1")],
        )
        .unwrap();
        let eps = EpsilonTable::from_json(&alph, &json!({"eps_pairs": [["s", "r", -1]], "eps_singles": [["s", 1]]})).unwrap();
        Model::new(alph, eps)
    }

    fn ss(m: &Model, id: &str, b: u32) -> SimpleSummand {
        SimpleSummand::new(m.alphabet.lookup(id).unwrap(), b)
    }

    #[test]
    fn eta_of_trivial_class_is_trivial() {
        let m = q3_model();
        let phi = Parameter::new(&m.alphabet, Family::SoEven, None, &[(ss(&m, "r", 1), 1), (ss(&m, "1", 1), 1)], None).unwrap();
        assert_eq!(eta(&m, &phi, m.field().one()).unwrap(), phi.component_group(&m.alphabet).trivial());
        // eta_a on SO_odd parameters is trivial: symplectic summands have det 1
        let phi = Parameter::new(&m.alphabet, Family::SoOdd, None, &[(ss(&m, "s", 1), 1)], None).unwrap();
        for a in m.field().square_classes() {
            assert_eq!(eta(&m, &phi, a).unwrap().bits(), 0);
        }
    }

    #[test]
    fn chi_against_zero_is_trivial() {
        let m = q3_model();
        let a = &m.alphabet;
        let phi = Parameter::new(a, Family::SoOdd, None, &[(ss(&m, "s", 1), 1)], None).unwrap();
        let zero = Parameter::new(a, Family::SoEven, None, &[], None).unwrap();
        assert_eq!(chi(&m, &phi, &zero).unwrap().bits(), 0);
    }

    #[test]
    fn chi_so3_so2() {
        let m = q3_model();
        let a = &m.alphabet;
        let phi = Parameter::new(a, Family::SoOdd, None, &[(ss(&m, "s", 1), 1)], None).unwrap();
        let psi = Parameter::new(a, Family::SoEven, None, &[(ss(&m, "r", 1), 1), (ss(&m, "1", 1), 1)], None).unwrap();
        // eps(s⊗r) eps(s⊗1) (det s)(-1)^1 (det psi)(-1)^1 = -1 * 1 * 1 * (u,-1)
        let u = m.field().parse_class("u").unwrap();
        let expect = Sign::Minus * u.hilbert(m.field().minus_one());
        let c = chi(&m, &phi, &psi).unwrap();
        assert_eq!(c.value(0), expect);
    }

    #[test]
    fn same_type_is_a_mismatch() {
        let m = q3_model();
        let a = &m.alphabet;
        let phi = Parameter::new(a, Family::SoEven, None, &[(ss(&m, "r", 1), 1), (ss(&m, "1", 1), 1)], None).unwrap();
        assert!(chi(&m, &phi, &phi).is_err());
        assert!(chi_twisted(&m, &phi, &phi, m.field().one()).is_err());
    }
}
