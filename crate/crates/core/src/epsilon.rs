//! Declared root numbers on pairs of irreducibles and the calculus that
//! extends them to tensor products of summands.

use crate::error::{Error, Result};
use crate::local_field::SquareClass;
use crate::lparam::{Alphabet, Duality, SimpleSummand};
use crate::model::Model;
use crate::sign::Sign;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Clebsch-Gordan: `mu_a ⊗ mu_b = ⊕ mu_c`.
pub fn sl2_tensor(a: u32, b: u32) -> Vec<u32> {
    (0..a.min(b)).map(|k| a + b - 1 - 2 * k).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    pairs: BTreeMap<(usize, usize), Sign>,
    singles: BTreeMap<usize, Sign>,
}

impl Default for EpsilonTable {
    fn default() -> Self {
        Self::new()
    }
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl EpsilonTable {
    pub fn new() -> Self {
        EpsilonTable {
            pairs: BTreeMap::new(),
            singles: BTreeMap::new(),
        }
    }

    /// Whether `{i, j}` carries a declared sign. Pairs with the trivial
    /// character are singles.
    pub fn in_regime(alph: &Alphabet, i: usize, j: usize) -> bool {
        let (a, b) = (alph.irr(i).duality, alph.irr(j).duality);
        if alph.ext().is_split() {
            let triv = alph.trivial();
            if Some(i) == triv || Some(j) == triv {
                return false;
            }
            matches!((a, b), (Duality::Orthogonal, Duality::Symplectic) | (Duality::Symplectic, Duality::Orthogonal))
        } else {
            matches!((a, b), (Duality::ConjOrth, Duality::ConjSymp) | (Duality::ConjSymp, Duality::ConjOrth))
        }
    }

    pub fn single_in_regime(alph: &Alphabet, i: usize) -> bool {
        alph.ext().is_split() && alph.irr(i).duality == Duality::Symplectic
    }

    pub fn set_pair(&mut self, alph: &Alphabet, i: usize, j: usize, s: Sign) -> Result<()> {
        let triv = alph.trivial();
        if triv == Some(i) || triv == Some(j) {
            let other = if triv == Some(i) { j } else { i };
            return self.set_single(alph, other, s);
        }
        if !Self::in_regime(alph, i, j) {
            return Err(Error::Epsilon(format!(
                "no sign is declared for {{{}, {}}}",
                alph.irr(i).id,
                alph.irr(j).id
            )));
        }
        match self.pairs.insert(key(i, j), s) {
            Some(old) if old != s => Err(Error::Epsilon(format!(
                "conflicting signs for {{{}, {}}}",
                alph.irr(i).id,
                alph.irr(j).id
            ))),
            _ => Ok(()),
        }
    }

    pub fn set_single(&mut self, alph: &Alphabet, i: usize, s: Sign) -> Result<()> {
        if !Self::single_in_regime(alph, i) {
            return Err(Error::Epsilon(format!("no single sign is declared for {}", alph.irr(i).id)));
        }
        match self.singles.insert(i, s) {
            Some(old) if old != s => Err(Error::Epsilon(format!("conflicting signs for {}", alph.irr(i).id))),
            _ => Ok(()),
        }
    }

    pub fn single(&self, alph: &Alphabet, i: usize) -> Result<Sign> {
        self.singles
            .get(&i)
            .copied()
            .ok_or_else(|| Error::Epsilon(format!("missing sign for {}", alph.irr(i).id)))
    }

    /// Declared sign of `{i, j}`; a pair with the trivial character is the single of the other.
    pub fn pair(&self, alph: &Alphabet, i: usize, j: usize) -> Result<Sign> {
        let triv = alph.trivial();
        if triv == Some(i) && triv == Some(j) {
            return Err(Error::Epsilon("the trivial character is orthogonal".into()));
        }
        if triv == Some(i) {
            return self.single(alph, j);
        }
        if triv == Some(j) {
            return self.single(alph, i);
        }
        if !Self::in_regime(alph, i, j) {
            return Err(Error::Epsilon(format!(
                "{{{}, {}}} is outside the signed regime",
                alph.irr(i).id,
                alph.irr(j).id
            )));
        }
        self.pairs.get(&key(i, j)).copied().ok_or_else(|| {
            Error::Epsilon(format!("missing sign for {{{}, {}}}", alph.irr(i).id, alph.irr(j).id))
        })
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), Sign)> + '_ {
        self.pairs.iter().map(|(&k, &s)| (k, s))
    }

    pub fn singles(&self) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.singles.iter().map(|(&k, &s)| (k, s))
    }

    pub fn to_json(&self, alph: &Alphabet) -> Value {
        let id = |i: usize| alph.irr(i).id.clone();
        json!({
            "eps_pairs": self.pairs.iter().map(|(&(i, j), s)| json!([id(i), id(j), s.to_i8()])).collect::<Vec<_>>(),
            "eps_singles": self.singles.iter().map(|(&i, s)| json!([id(i), s.to_i8()])).collect::<Vec<_>>(),
            "regular": true,
        })
    }

    /// Reads `eps_pairs`, `eps_singles` and `regular` from an object.
    pub fn from_json(alph: &Alphabet, v: &Value) -> Result<Self> {
        if v.get("regular").and_then(Value::as_bool) == Some(false) {
            return Err(Error::Epsilon("only regular tables are supported".into()));
        }
        let sign = |x: &Value| {
            x.as_i64()
                .and_then(Sign::from_i64)
                .ok_or_else(|| Error::Input(format!("signs are 1 or -1, got {x}")))
        };
        let id = |x: &Value| {
            x.as_str()
                .ok_or_else(|| Error::Input(format!("expected an id, got {x}")))
                .and_then(|s| alph.lookup(s))
        };
        let mut t = EpsilonTable::new();
        for e in v.get("eps_pairs").and_then(Value::as_array).into_iter().flatten() {
            match e.as_array().map(Vec::as_slice) {
                Some([a, b, s]) => t.set_pair(alph, id(a)?, id(b)?, sign(s)?)?,
                _ => return Err(Error::Input(format!("eps_pairs entries are [id, id, sign], got {e}"))),
            }
        }
        for e in v.get("eps_singles").and_then(Value::as_array).into_iter().flatten() {
            match e.as_array().map(Vec::as_slice) {
                Some([a, s]) => t.set_single(alph, id(a)?, sign(s)?)?,
                _ => return Err(Error::Input(format!("eps_singles entries are [id, sign], got {e}"))),
            }
        }
        Ok(t)
    }
}

fn tensor_det(alph: &Alphabet, i: usize, j: usize) -> SquareClass {
    let (a, b) = (alph.irr(i), alph.irr(j));
    a.det.pow(b.dim as u64) * b.det.pow(a.dim as u64)
}

fn minus_one_value(c: SquareClass) -> Sign {
    c.hilbert(c.field().minus_one())
}

/// `eps(rho ⊗ rho' ⊗ mu_c)^m`.
fn piece_pow(model: &Model, i: usize, j: usize, c: u32, m: u32) -> Result<Sign> {
    let alph = &model.alphabet;
    let split = alph.ext().is_split();
    let base = alph.irr(i).duality.tensor(alph.irr(j).duality);
    if !base.is_self_dual() {
        return Err(Error::Epsilon("tensor piece is not self-dual".into()));
    }
    if base.is_symplectic_type() {
        if c % 2 == 0 {
            return Ok(Sign::Plus);
        }
        return Ok(model.eps.pair(alph, i, j)?.pow(m as u64));
    }
    if !split {
        return Ok(Sign::Plus);
    }
    // orthogonal base: eps(sigma)^2 = det(sigma)(-1)
    let d = minus_one_value(tensor_det(alph, i, j));
    if c % 2 == 0 {
        return Ok(d.pow((c / 2 * m) as u64));
    }
    if m % 2 == 1 {
        return Err(Error::Epsilon(format!(
            "root number of the orthogonal piece {}⊗{}⊗μ{c} is not declared",
            alph.irr(i).id,
            alph.irr(j).id
        )));
    }
    Ok(d.pow((m / 2) as u64))
}

/// `eps(s ⊗ t)^m` for self-dual `s` and `t`.
pub fn eps_tensor_pow(model: &Model, s: SimpleSummand, t: SimpleSummand, m: u32) -> Result<Sign> {
    let mut out = Sign::Plus;
    for c in sl2_tensor(s.b, t.b) {
        out *= piece_pow(model, s.rho, t.rho, c, m)?;
    }
    Ok(out)
}

/// `eps(s ⊗ psi)` for a self-dual summand `s` and a summand list `psi`.
pub fn eps_pair(model: &Model, s: SimpleSummand, psi: &[(SimpleSummand, u32)]) -> Result<Sign> {
    let alph = &model.alphabet;
    if !s.duality(alph).is_self_dual() {
        return Err(Error::Epsilon(format!("{} is not self-dual", s.label(alph))));
    }
    let mut out = Sign::Plus;
    for &(t, m) in psi {
        if t.duality(alph).is_self_dual() {
            out *= eps_tensor_pow(model, s, t, m)?;
            continue;
        }
        // t ⊕ t^vee: eps(X ⊕ X^vee) = det(X)(-1), counted once per pair
        let partner = alph.irr(t.rho).partner;
        if t.rho > partner || !alph.ext().is_split() {
            continue;
        }
        let det = s.det(alph).pow(t.dim(alph) as u64) * t.det(alph).pow(s.dim(alph) as u64);
        out *= minus_one_value(det).pow(m as u64);
    }
    Ok(out)
}

/// `eps(s) eps(s ⊗ chi_a) (a, -1)^{dim s / 2}` for a symplectic summand `s`.
pub fn eps_single(model: &Model, s: SimpleSummand, a: SquareClass) -> Result<Sign> {
    let alph = &model.alphabet;
    if s.duality(alph) != Duality::Symplectic {
        return Err(Error::Epsilon(format!("{} is not symplectic", s.label(alph))));
    }
    let one = SimpleSummand::new(alph.trivial().ok_or_else(|| Error::Epsilon("no trivial character".into()))?, 1);
    let sa = SimpleSummand::new(alph.twist(s.rho, a)?, s.b);
    let hs = minus_one_value(a).pow((s.dim(alph) / 2) as u64);
    Ok(eps_tensor_pow(model, s, one, 1)? * eps_tensor_pow(model, sa, one, 1)? * hs)
}

/// Closure, twist compatibility and the character property of singles.
pub fn validate_table(model: &Model) -> Vec<String> {
    let alph = &model.alphabet;
    let t = &model.eps;
    let field = alph.ext().field();
    let n = alph.len();
    let id = |i: usize| alph.irr(i).id.clone();
    let mut out = Vec::new();
    for i in 0..n {
        if EpsilonTable::single_in_regime(alph, i) && t.single(alph, i).is_err() {
            out.push(format!("missing single sign for {}", id(i)));
        }
        for j in i + 1..n {
            if EpsilonTable::in_regime(alph, i, j) && t.pair(alph, i, j).is_err() {
                out.push(format!("missing sign for {{{}, {}}}", id(i), id(j)));
            }
        }
    }
    if !alph.ext().is_split() {
        return out;
    }
    let triv = alph.trivial();
    for i in 0..n {
        for j in 0..n {
            let orth_symp = alph.irr(i).duality == Duality::Orthogonal && alph.irr(j).duality == Duality::Symplectic;
            if !orth_symp {
                continue;
            }
            for z in field.square_classes() {
                let (Ok(iz), Ok(jz)) = (alph.twist(i, z), alph.twist(j, z)) else {
                    continue;
                };
                // (rho ⊗ chi_z) ⊗ rho' = rho ⊗ (rho' ⊗ chi_z)
                if let (Ok(a), Ok(b)) = (t.pair(alph, iz, j), t.pair(alph, i, jz)) {
                    if a != b && i <= iz {
                        out.push(format!("{{{}, {}}} and {{{}, {}}} name the same root number", id(iz), id(j), id(i), id(jz)));
                    }
                }
            }
        }
    }
    for i in 0..n {
        if alph.irr(i).duality != Duality::Symplectic {
            continue;
        }
        let s = SimpleSummand::new(i, 1);
        let mut f = BTreeMap::new();
        for a in field.square_classes() {
            if let Ok(v) = eps_single(model, s, a) {
                f.insert(a, v);
            }
        }
        if f.len() < field.class_count() || triv.is_none() {
            continue;
        }
        'outer: for (&a, &fa) in &f {
            for (&b, &fb) in &f {
                if f[&(a * b)] != fa * fb {
                    out.push(format!("a -> eps({0}) eps({0} ⊗ chi_a) (a,-1)^(dim/2) is not a character", id(i)));
                    break 'outer;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::{LocalField, QuadExt};
    use crate::lparam::IrrSpec;

    fn model(pair: i64, single: i64) -> Model {
        let f = LocalField::padic(3).unwrap();
        let specs = vec![IrrSpec::new("r", 1, Duality::Orthogonal, "u"), IrrSpec::new("s", 2, Duality::Symplectic, "1")];
        let alph = Alphabet::new(QuadExt::split(f), &specs).unwrap();
        let eps = EpsilonTable::from_json(
            &alph,
            &json!({"eps_pairs": [["s", "r", pair]], "eps_singles": [["s", single]], "regular": true}),
        )
        .unwrap();
        Model::new(alph, eps)
    }

    fn ss(m: &Model, id: &str, b: u32) -> SimpleSummand {
        SimpleSummand::new(m.alphabet.lookup(id).unwrap(), b)
    }

    #[test]
    fn clebsch_gordan() {
        assert_eq!(sl2_tensor(1, 5), vec![5]);
        assert_eq!(sl2_tensor(2, 3), vec![4, 2]);
        assert_eq!(sl2_tensor(3, 3), vec![5, 3, 1]);
    }

    #[test]
    fn pair_with_mu_two_squares_away() {
        let m = model(-1, 1);
        // s = s⊗μ2 is orthogonal, r⊗μ1 orthogonal: the single piece has even c
        let got = eps_tensor_pow(&m, ss(&m, "s", 2), ss(&m, "r", 1), 1).unwrap();
        assert_eq!(got, Sign::Plus);
        assert_eq!(eps_tensor_pow(&m, ss(&m, "s", 1), ss(&m, "r", 1), 1).unwrap(), Sign::Minus);
    }

    #[test]
    fn table_power_matches_expansion() {
        let m = model(-1, 1);
        for a in 1..6 {
            for b in 1..6 {
                let s = ss(&m, "s", a);
                let r = ss(&m, "r", b);
                let expect = Sign::Minus.pow((a * b) as u64);
                assert_eq!(eps_tensor_pow(&m, s, r, 1).unwrap(), expect, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn multiplicative_in_psi() {
        let m = model(-1, -1);
        let psi = vec![(ss(&m, "r", 1), 1), (ss(&m, "1", 1), 1)];
        let s = ss(&m, "s", 1);
        let whole = eps_pair(&m, s, &psi).unwrap();
        let parts = eps_pair(&m, s, &psi[..1]).unwrap() * eps_pair(&m, s, &psi[1..]).unwrap();
        assert_eq!(whole, parts);
        assert_eq!(eps_pair(&m, s, &[]).unwrap(), Sign::Plus);
    }

    #[test]
    fn outside_regime_is_an_error() {
        let m = model(1, 1);
        let a = &m.alphabet;
        assert!(m.eps.pair(a, a.lookup("r").unwrap(), a.lookup("r").unwrap()).is_err());
        assert!(eps_tensor_pow(&m, ss(&m, "r", 1), ss(&m, "r", 1), 1).is_err());
        // even power of an orthogonal piece is det(-1)
        let u = a.ext().field().parse_class("u").unwrap();
        let d = u.pow(2).hilbert(u.field().minus_one());
        assert_eq!(eps_tensor_pow(&m, ss(&m, "r", 1), ss(&m, "r", 1), 2).unwrap(), d);
    }

    #[test]
    fn single_at_one_is_trivial() {
        let m = model(1, -1);
        let one = m.field().one();
        assert_eq!(eps_single(&m, ss(&m, "s", 1), one).unwrap(), Sign::Plus);
    }

    #[test]
    fn validation_reports_missing_entries() {
        let f = LocalField::padic(3).unwrap();
        let alph = Alphabet::new(QuadExt::split(f), &[]).unwrap();
        let m = Model::new(alph, EpsilonTable::new());
        assert!(validate_table(&m).is_empty());
        let m = model(1, 1);
        let mut m2 = m.clone();
        m2.eps = EpsilonTable::new();
        assert_eq!(validate_table(&m2).len(), 2);
    }
}
