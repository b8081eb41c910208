//! Brute-force reference computations.
//!
//! Nothing here calls the closed-form symbol or the invariant-level
//! classification; everything is decided by searching for zeros of diagonal
//! forms modulo `p^k` and Hensel lifting them.

use crate::local_field::{LocalField, SquareClass};
use crate::sign::Sign;
use std::collections::{BTreeSet, HashSet};

fn valuation(mut x: i64, p: i64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while x % p == 0 && v < cap {
        x /= p;
        v += 1;
    }
    v
}

/// Hensel precision sufficient for diagonal forms whose coefficients have
/// valuation at most one.
fn precision(p: u32) -> u32 {
    if p == 2 {
        5
    } else {
        3
    }
}

/// Does `sum a_i x_i^2 = 0` have a nontrivial solution over `Z_p`?
///
/// Coefficients must have `p`-adic valuation 0 or 1.
pub fn padic_isotropic(p: u32, coeffs: &[i64]) -> bool {
    let n = coeffs.len();
    if n < 2 {
        return false;
    }
    let pi = p as i64;
    let k = precision(p);
    // primitive vectors mod p, normalised so the first unit coordinate is 1
    let mut level: Vec<(Vec<i64>, usize)> = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (pi as usize).pow(free as u32);
        for idx in 0..count {
            let mut x = vec![0i64; n];
            x[lead] = 1;
            let mut t = idx;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = (t % pi as usize) as i64;
                t /= pi as usize;
            }
            level.push((x, lead));
        }
    }
    let mut modulus = 1i64;
    for j in 1..=k {
        modulus *= pi;
        let prev = modulus / pi;
        let mut next = Vec::new();
        for (x, lead) in &level {
            let free: Vec<usize> = (0..n).filter(|&i| i != *lead).collect();
            let lifts = if j == 1 { 1 } else { (pi as usize).pow(free.len() as u32) };
            for idx in 0..lifts {
                let mut y = x.clone();
                if j > 1 {
                    let mut t = idx;
                    for &i in &free {
                        y[i] = (y[i] + prev * (t % pi as usize) as i64).rem_euclid(modulus);
                        t /= pi as usize;
                    }
                }
                let f: i64 = coeffs
                    .iter()
                    .zip(&y)
                    .map(|(a, xi)| (a * xi % modulus * xi).rem_euclid(modulus))
                    .sum::<i64>()
                    .rem_euclid(modulus);
                if f != 0 {
                    continue;
                }
                let lifts_by_hensel = coeffs.iter().zip(&y).any(|(a, xi)| {
                    let d = (2 * a * xi).rem_euclid(modulus);
                    2 * valuation(d, pi, j) < j
                });
                if lifts_by_hensel {
                    return true;
                }
                next.push((y, *lead));
            }
        }
        if next.is_empty() {
            return false;
        }
        level = next;
    }
    false
}

fn real_isotropic(coeffs: &[i64]) -> bool {
    // search a small box; for sign-definite forms nothing is ever found
    let n = coeffs.len();
    if n < 2 {
        return false;
    }
    let range: Vec<i64> = (-2..=2).collect();
    let total = range.len().pow(n as u32);
    for idx in 1..total {
        let mut t = idx;
        let mut f = 0i64;
        let mut nonzero = false;
        for a in coeffs {
            let x = range[t % range.len()];
            t /= range.len();
            nonzero |= x != 0;
            f += a * x * x;
        }
        if nonzero && f == 0 {
            return true;
        }
    }
    false
}

pub fn isotropic(field: LocalField, coeffs: &[i64]) -> bool {
    match field {
        LocalField::Real => real_isotropic(coeffs),
        LocalField::PAdic(p) => padic_isotropic(p, coeffs),
    }
}

/// Hilbert symbol by solubility of `a x^2 + b y^2 = z^2`.
pub fn hilbert(a: SquareClass, b: SquareClass) -> Sign {
    let field = a.field();
    Sign::from_bool_minus(!isotropic(field, &[a.rep(), b.rep(), -1]))
}

/// Hilbert symbols for every pair of classes, indexed by class bits.
pub struct HilbertTable {
    field: LocalField,
    values: Vec<Vec<Sign>>,
}

impl HilbertTable {
    pub fn new(field: LocalField) -> Self {
        let cs = field.square_classes();
        let values = cs.iter().map(|&a| cs.iter().map(|&b| hilbert(a, b)).collect()).collect();
        HilbertTable { field, values }
    }

    pub fn get(&self, a: SquareClass, b: SquareClass) -> Sign {
        debug_assert_eq!(a.field(), self.field);
        self.values[a.bits() as usize][b.bits() as usize]
    }
}

/// Units modulo `p^k` that are squares of units.
fn unit_squares(p: u32) -> (i64, HashSet<i64>) {
    let m = (p as i64).pow(precision(p));
    let sq = (1..m).filter(|x| x % p as i64 != 0).map(|x| x * x % m).collect();
    (m, sq)
}

/// Number of classes in `Z_p^x / (Z_p^x)^2`, found by listing squares modulo `p^k`.
pub fn unit_class_count(p: u32) -> usize {
    let (m, sq) = unit_squares(p);
    let units = (1..m).filter(|x| x % p as i64 != 0).count();
    units / sq.len()
}

/// Whether two nonzero integers of valuation at most one lie in the same square class.
pub fn same_square_class(p: u32, a: i64, b: i64) -> bool {
    let pi = p as i64;
    let (va, vb) = (valuation(a, pi, 8), valuation(b, pi, 8));
    if va % 2 != vb % 2 {
        return false;
    }
    let (ua, ub) = (a / pi.pow(va), b / pi.pow(vb));
    let (m, sq) = unit_squares(p);
    // ua / ub is a square iff ua * ub is
    sq.contains(&(ua * ub).rem_euclid(m))
}

/// Determinant and Hasse invariant `prod_{i<j} (a_i, a_j)` of a diagonal form.
pub fn diag_invariants(table: &HilbertTable, form: &[SquareClass]) -> (SquareClass, Sign) {
    let field = table.field;
    let mut det = field.one();
    let mut hasse = Sign::Plus;
    for (i, &a) in form.iter().enumerate() {
        for &b in &form[i + 1..] {
            hasse *= table.get(a, b);
        }
        det = det * a;
    }
    (det, hasse)
}

pub fn diag_isotropic(form: &[SquareClass]) -> bool {
    match form.first() {
        None => false,
        Some(a) => isotropic(a.field(), &form.iter().map(|c| c.rep()).collect::<Vec<_>>()),
    }
}

/// All multisets of `n` square classes.
pub fn diagonal_forms(field: LocalField, n: usize) -> Vec<Vec<SquareClass>> {
    fn rec(cs: &[SquareClass], start: usize, n: usize, cur: &mut Vec<SquareClass>, out: &mut Vec<Vec<SquareClass>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..cs.len() {
            cur.push(cs[i]);
            rec(cs, i, n, cur, out);
            cur.pop();
        }
    }
    let cs = field.square_classes();
    let mut out = Vec::new();
    rec(&cs, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Witt index of a diagonal quadratic form over a p-adic field.
///
/// Splits off hyperbolic planes one at a time; the complement is located
/// among diagonal forms of smaller dimension with matching invariants.
pub fn diag_witt_index(table: &HilbertTable, form: &[SquareClass]) -> usize {
    if !diag_isotropic(form) {
        return 0;
    }
    let field = table.field;
    let target = diag_invariants(table, form);
    let h = [field.one(), field.minus_one()];
    for w in diagonal_forms(field, form.len() - 2) {
        let mut sum = h.to_vec();
        sum.extend_from_slice(&w);
        if diag_invariants(table, &sum) == target {
            return 1 + diag_witt_index(table, &w);
        }
    }
    unreachable!("an isotropic form splits a hyperbolic plane")
}

/// Classes represented by a diagonal quadratic form.
pub fn diag_values(form: &[SquareClass]) -> BTreeSet<SquareClass> {
    let Some(first) = form.first() else {
        return BTreeSet::new();
    };
    first
        .field()
        .square_classes()
        .into_iter()
        .filter(|c| {
            let mut f: Vec<i64> = form.iter().map(|a| a.rep()).collect();
            f.push(-c.rep());
            isotropic(c.field(), &f)
        })
        .collect()
}

/// Isotropy of the diagonal Hermitian form `<a_1, ..., a_n>` over `F(sqrt d)`,
/// read as the quadratic form `sum a_i (u_i^2 - d v_i^2)` over `F`.
pub fn hermitian_isotropic(d: SquareClass, form: &[SquareClass]) -> bool {
    let mut q = Vec::new();
    for a in form {
        q.push(a.rep());
        q.push(-(*a * d).rep());
    }
    isotropic(d.field(), &q)
}

/// Is `c` a norm from `F(sqrt d)`?
pub fn is_norm(d: SquareClass, c: SquareClass) -> bool {
    // x^2 - d y^2 = c z^2 has a nontrivial solution
    isotropic(c.field(), &[1, -d.rep(), -c.rep()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // x^2 + y^2 = 0 over Q_5 (i exists)
        assert!(padic_isotropic(5, &[1, 1]));
        assert!(!padic_isotropic(3, &[1, 1]));
        assert!(padic_isotropic(2, &[1, 1, 1, 1, 1]));
        assert!(!padic_isotropic(2, &[1, 1, 1]));
        assert_eq!(unit_class_count(3), 2);
        assert_eq!(unit_class_count(2), 4);
        assert!(same_square_class(3, 1, 4));
        assert!(!same_square_class(3, 1, 2));
        assert!(same_square_class(2, 1, 17));
        assert!(!same_square_class(2, 1, 5));
    }
}
