//! `GL_n(q)` and the semilinear groups `GammaL_{n/d}(q^d)` as permutation
//! groups on the `q^n - 1` nonzero vectors, described by their cycle types.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{big_pow, divides, is_prime, lcm_all, prime_power, ser_big};
use crate::ff::{make_extension, make_prime_field, Field, FieldElement, FieldError, ENUMERATION_LIMIT};
use crate::rng::{stream, DEFAULT_SEED};

/// Largest group that is enumerated element by element.
pub const GROUP_ORDER_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{d} does not divide {n}")]
    NotADivisor { n: usize, d: usize },
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("n = {0} must be an odd prime")]
    BadArity(u64),
    #[error("enumeration guard exceeded: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Multiset of cycle lengths, stored as `length -> count`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleType(BTreeMap<u64, u64>);

impl CycleType {
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Self {
        let mut m = BTreeMap::new();
        for l in lengths {
            *m.entry(l).or_insert(0) += 1;
        }
        CycleType(m)
    }

    pub fn from_counts(counts: &[(u64, u64)]) -> Self {
        CycleType(counts.iter().copied().filter(|&(_, c)| c > 0).collect())
    }

    /// `(length, count)` in increasing length order.
    pub fn parts(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&l, &c)| (l, c))
    }

    pub fn count(&self, length: u64) -> u64 {
        self.0.get(&length).copied().unwrap_or(0)
    }

    /// `sum length * count`.
    pub fn total(&self) -> u64 {
        self.parts().map(|(l, c)| l * c).sum()
    }

    pub fn has_even_part(&self) -> bool {
        self.parts().any(|(l, _)| l % 2 == 0)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "{{{}}}", body.join(", "))
    }
}

/// lcm of the cycle lengths.
pub fn permutation_order(t: &CycleType) -> BigUint {
    lcm_all(t.parts().map(|(l, _)| BigUint::from(l)))
}

/// `prod_{i<n} (q^n - q^i)`.
pub fn order_gl(n: usize, q: u64) -> BigUint {
    let qn = big_pow(q, n as u32);
    (0..n).map(|i| &qn - big_pow(q, i as u32)).product()
}

/// `d * |GL_{n/d}(q^d)|`.
#[allow(non_snake_case)]
pub fn order_gammaL(n: usize, q: u64, d: usize) -> Result<BigUint, GroupError> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(GroupError::NotADivisor { n, d });
    }
    let qd = q.checked_pow(d as u32).ok_or_else(|| GroupError::TooLarge(format!("{q}^{d} overflows")))?;
    Ok(BigUint::from(d) * order_gl(n / d, qd))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum GroupKind {
    GL {
        n: usize,
        q: u64,
    },
    /// `GammaL_e(q^d)` with `e = n/d`, acting on `F_{q^n}`.
    GammaL {
        n: usize,
        q: u64,
        d: usize,
    },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupKind::GL { n, q } => write!(f, "GL_{n}({q})"),
            GroupKind::GammaL { n, q, d } => write!(f, "GammaL_{}({}^{})", n / d, q, d),
        }
    }
}

/// A group together with its exact order and, once enumerated, the number of
/// elements of each cycle type.
#[derive(Clone, Debug, Serialize)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    #[serde(serialize_with = "ser_big")]
    pub order: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<BTreeMap<CycleType, u64>>,
}

impl GroupDescriptor {
    pub fn gl(n: usize, q: u64) -> Self {
        GroupDescriptor { kind: GroupKind::GL { n, q }, order: order_gl(n, q), types: None }
    }

    pub fn gamma_l(n: usize, q: u64, d: usize) -> Result<Self, GroupError> {
        Ok(GroupDescriptor { kind: GroupKind::GammaL { n, q, d }, order: order_gammaL(n, q, d)?, types: None })
    }

    /// Fills in `types` by exhaustive enumeration.
    pub fn enumerate(mut self) -> Result<Self, GroupError> {
        let types = match self.kind {
            GroupKind::GL { n, q } => gl_cycle_types(n, q)?,
            GroupKind::GammaL { n, q, d } => semilinear_cycle_types(q, n, d)?,
        };
        self.types = Some(types);
        Ok(self)
    }
}

/// Cycle types of `x -> M(x^(q^j))`, `M` in `GL_{n/d}(q^d)`, `0 <= j < d`,
/// on `F_{q^n}^*`, with element counts.
pub fn semilinear_cycle_types(q: u64, n: usize, d: usize) -> Result<BTreeMap<CycleType, u64>, GroupError> {
    let order = order_gammaL(n, q, d)?;
    enumerate_semilinear(q, n, d, d, &order)
}

/// Cycle types of `GL_n(q)` on the nonzero vectors of `F_q^n`, with counts.
pub fn gl_cycle_types(n: usize, q: u64) -> Result<BTreeMap<CycleType, u64>, GroupError> {
    if n == 0 {
        return Err(GroupError::NotADivisor { n, d: 1 });
    }
    let order = order_gl(n, q);
    enumerate_semilinear(q, n, 1, 1, &order)
}

/// `F_{q^n}` viewed as an `e`-dimensional space over its subfield of order
/// `q^d`, with coordinates of every element in the basis `1, w, .., w^(e-1)`.
struct Model {
    field: Arc<Field>,
    /// `x^q` is the `k0`-fold `p`-Frobenius.
    p_levels_per_q: usize,
    e: usize,
    sub: Vec<FieldElement>,
    /// `coords[x * e + i]` is the `i`-th coordinate of element `x`.
    coords: Vec<FieldElement>,
}

impl Model {
    fn new(q: u64, n: usize, d: usize) -> Result<Self, GroupError> {
        let (p, k0) = prime_power(q).ok_or(GroupError::NotAPrimePower(q))?;
        let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > ENUMERATION_LIMIT as u128 {
            return Err(GroupError::TooLarge(format!("q^n = {q}^{n} exceeds 2^20")));
        }
        let prime = make_prime_field(p)?;
        let field = make_extension(&prime, k0 as usize * n, None, &mut stream(DEFAULT_SEED, "modulus-search"))?;
        let k0 = k0 as usize;
        let e = n / d;
        let sub: Vec<FieldElement> = field.elements()?.filter(|&x| field.frobenius(x, k0 * d) == x).collect();
        debug_assert_eq!(sub.len() as u64, q.pow(d as u32));
        let w = field.generator();
        let basis: Vec<FieldElement> = (0..e).map(|i| field.pow(w, i as u64)).collect();
        let total = field.order() as usize;
        let mut coords = vec![FieldElement::ZERO; total * e];
        let mut seen = vec![false; total];
        let mut digits = vec![0usize; e];
        loop {
            let x = field.sum(digits.iter().zip(&basis).map(|(&di, &b)| field.mul(sub[di], b)));
            let xi = x.index() as usize;
            if seen[xi] {
                return Err(GroupError::Field(FieldError::BadModulus("generator does not span".into())));
            }
            seen[xi] = true;
            for i in 0..e {
                coords[xi * e + i] = sub[digits[i]];
            }
            let mut i = 0;
            while i < e {
                digits[i] += 1;
                if digits[i] < sub.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == e {
                break;
            }
        }
        Ok(Model { field, p_levels_per_q: k0, e, sub, coords })
    }

    fn span_with(&self, span: &[bool], v: FieldElement) -> Vec<bool> {
        let f = &self.field;
        let mut out = vec![false; span.len()];
        for (x, &inside) in span.iter().enumerate() {
            if !inside {
                continue;
            }
            let x = FieldElement(x as u32);
            for &c in &self.sub {
                out[f.add(x, f.mul(c, v)).index() as usize] = true;
            }
        }
        out
    }
}

fn cycle_type_of(perm: &[u32], visited: &mut [bool]) -> CycleType {
    visited.iter_mut().for_each(|v| *v = false);
    let mut lengths = Vec::new();
    for start in 1..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    CycleType::from_lengths(lengths)
}

fn merge(mut a: BTreeMap<CycleType, u64>, b: BTreeMap<CycleType, u64>) -> BTreeMap<CycleType, u64> {
    for (t, c) in b {
        *a.entry(t).or_insert(0) += c;
    }
    a
}

/// Enumerates bases `(v_0, .., v_{e-1})` of `F_{q^n}` over `F_{q^d}` (so every
/// linear `M`), composing each with the `frobs` powers `x -> x^(q^j)`.
fn enumerate_semilinear(
    q: u64,
    n: usize,
    d: usize,
    frobs: usize,
    order: &BigUint,
) -> Result<BTreeMap<CycleType, u64>, GroupError> {
    if order > &BigUint::from(GROUP_ORDER_LIMIT) {
        return Err(GroupError::TooLarge(format!("group order {order} exceeds 10^7")));
    }
    let model = Model::new(q, n, d)?;
    let f = &model.field;
    let size = f.order() as usize;
    let frob_tables: Vec<Vec<u32>> = (0..frobs)
        .map(|j| (0..size as u32).map(|x| f.frobenius(FieldElement(x), model.p_levels_per_q * j).index()).collect())
        .collect();
    let mut origin = vec![false; size];
    origin[0] = true;

    let counts = (1..size as u32)
        .into_par_iter()
        .map(|v0| {
            let v0 = FieldElement(v0);
            let mut out = BTreeMap::new();
            let mut basis = vec![v0];
            let span = model.span_with(&origin, v0);
            let mut image = vec![0u32; size];
            let mut perm = vec![0u32; size];
            let mut visited = vec![false; size];
            extend_basis(&model, &mut basis, &span, &mut |basis| {
                for x in 0..size {
                    let c = &model.coords[x * model.e..(x + 1) * model.e];
                    image[x] = f.sum(c.iter().zip(basis).map(|(&ci, &b)| f.mul(ci, b))).index();
                }
                for fr in &frob_tables {
                    for x in 0..size {
                        perm[x] = image[fr[x] as usize];
                    }
                    *out.entry(cycle_type_of(&perm, &mut visited)).or_insert(0u64) += 1;
                }
            });
            out
        })
        .reduce(BTreeMap::new, merge);

    let total: u64 = counts.values().sum();
    if BigUint::from(total) != *order {
        return Err(GroupError::TooLarge(format!("enumerated {total} elements, expected {order}")));
    }
    Ok(counts)
}

fn extend_basis<F: FnMut(&[FieldElement])>(model: &Model, basis: &mut Vec<FieldElement>, span: &[bool], visit: &mut F) {
    if basis.len() == model.e {
        visit(basis);
        return;
    }
    for v in 1..span.len() {
        if span[v] {
            continue;
        }
        let v = FieldElement(v as u32);
        let next = if basis.len() + 1 == model.e { Vec::new() } else { model.span_with(span, v) };
        basis.push(v);
        extend_basis(model, basis, &next, visit);
        basis.pop();
    }
}

/// One `m` of the deduction: does `q^m (q^m - 1)(q^n - 1)` divide `n (q^n - 1)`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeductionRow {
    pub m: u64,
    #[serde(serialize_with = "ser_big")]
    pub divisor: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub target: BigUint,
    pub divides: bool,
    /// `q^m | n`, the necessary condition extracted from the `q`-part.
    pub qm_divides_n: bool,
}

/// The branch forced by `q^m | n`: `m = 1`, `q = n`, leaving `n - 1 | 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedBranch {
    pub m: u64,
    pub q: u64,
    pub residual_divisor: u64,
    pub residual_dividend: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub q: u64,
    pub n: u64,
    pub rows: Vec<DeductionRow>,
    pub forced_branch: Option<ForcedBranch>,
    pub no_admissible_m: bool,
}

/// Tabulates `q^m (q^m - 1)(q^n - 1) | n (q^n - 1)` for `1 <= m < n`.
pub fn divisibility_deduction(q: u64, n: u64) -> Result<Deduction, GroupError> {
    if n < 3 || n.is_multiple_of(2) || !is_prime(n) {
        return Err(GroupError::BadArity(n));
    }
    if prime_power(q).is_none() {
        return Err(GroupError::NotAPrimePower(q));
    }
    let qn1 = big_pow(q, n as u32) - BigUint::one();
    let target = BigUint::from(n) * &qn1;
    let nb = BigUint::from(n);
    let rows: Vec<DeductionRow> = (1..n)
        .map(|m| {
            let qm = big_pow(q, m as u32);
            let divisor = &qm * (&qm - BigUint::one()) * &qn1;
            DeductionRow {
                m,
                divides: divides(&divisor, &target),
                qm_divides_n: divides(&qm, &nb),
                divisor,
                target: target.clone(),
            }
        })
        .collect();
    let forced_branch = rows.iter().find(|r| r.qm_divides_n).map(|r| {
        // q^m | n with n prime forces q^m = n; what is left is (q^m - 1) | 1
        let qm = big_pow(q, r.m as u32).to_u64().expect("q^m = n");
        ForcedBranch { m: r.m, q, residual_divisor: qm - 1, residual_dividend: 1, holds: qm - 1 == 1 }
    });
    let no_admissible_m = rows.iter().all(|r| !r.divides);
    Ok(Deduction { q, n, rows, forced_branch, no_admissible_m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(c: &[(u64, u64)]) -> CycleType {
        CycleType::from_counts(c)
    }

    #[test]
    fn orders() {
        assert_eq!(order_gl(1, 7), BigUint::from(6u32));
        assert_eq!(order_gl(3, 2), BigUint::from(168u32));
        assert_eq!(order_gl(2, 3), BigUint::from(48u32));
        assert_eq!(order_gammaL(3, 2, 3).unwrap(), BigUint::from(21u32));
        assert_eq!(order_gammaL(3, 4, 3).unwrap(), BigUint::from(189u32));
        assert_eq!(order_gammaL(4, 2, 2).unwrap(), BigUint::from(360u32));
        assert_eq!(order_gammaL(4, 2, 3).unwrap_err(), GroupError::NotADivisor { n: 4, d: 3 });
        for n in 1..7usize {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                let expect = BigUint::from(n) * (big_pow(q, n as u32) - BigUint::one());
                assert_eq!(order_gammaL(n, q, n).unwrap(), expect);
            }
        }
    }

    #[test]
    fn permutation_orders() {
        assert_eq!(permutation_order(&ct(&[(1, 7)])), BigUint::from(1u32));
        assert_eq!(permutation_order(&ct(&[(3, 2), (1, 1)])), BigUint::from(3u32));
        assert_eq!(permutation_order(&ct(&[(4, 1), (2, 1), (1, 1)])), BigUint::from(4u32));
        assert_eq!(ct(&[(3, 2), (1, 1)]).to_string(), "{1:1, 3:2}");
    }

    #[test]
    fn gammal_1_8() {
        let types = semilinear_cycle_types(2, 3, 3).unwrap();
        assert_eq!(types.values().sum::<u64>(), 21);
        assert!(types.contains_key(&ct(&[(1, 7)])));
        assert!(types.contains_key(&ct(&[(1, 1), (3, 2)])));
        assert!(types.keys().all(|t| !t.has_even_part() && t.total() == 7));
        let trivial = semilinear_cycle_types(2, 1, 1).unwrap();
        assert_eq!(trivial.into_iter().collect::<Vec<_>>(), vec![(ct(&[(1, 1)]), 1)]);
    }

    #[test]
    fn gl_types() {
        let t = gl_cycle_types(1, 3).unwrap();
        assert_eq!(t.keys().cloned().collect::<Vec<_>>(), vec![ct(&[(1, 2)]), ct(&[(2, 1)])]);
        let t = gl_cycle_types(3, 2).unwrap();
        assert_eq!(t.values().sum::<u64>(), 168);
        assert_eq!(t[&ct(&[(7, 1)])], 48);
        assert!(t.keys().any(|t| t.count(4) > 0));
        assert!(t.keys().all(|t| t.total() == 7));
        for s in semilinear_cycle_types(2, 3, 3).unwrap().keys() {
            assert!(t.contains_key(s));
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(gl_cycle_types(5, 3), Err(GroupError::TooLarge(_))));
        assert!(matches!(semilinear_cycle_types(2, 21, 21), Err(GroupError::TooLarge(_))));
    }

    #[test]
    fn deduction_examples() {
        let d = divisibility_deduction(2, 3).unwrap();
        assert_eq!(d.rows[0].divisor, BigUint::from(14u32));
        assert_eq!(d.rows[1].divisor, BigUint::from(84u32));
        assert_eq!(d.rows[0].target, BigUint::from(21u32));
        assert!(d.no_admissible_m);
        assert!(d.forced_branch.is_none());
        let d = divisibility_deduction(3, 3).unwrap();
        assert_eq!(d.rows[0].divisor, BigUint::from(156u32));
        assert_eq!(d.rows[0].target, BigUint::from(78u32));
        let b = d.forced_branch.unwrap();
        assert_eq!((b.m, b.q, b.residual_divisor, b.residual_dividend, b.holds), (1, 3, 2, 1, false));
        assert_eq!(divisibility_deduction(2, 4).unwrap_err(), GroupError::BadArity(4));
        assert_eq!(divisibility_deduction(6, 3).unwrap_err(), GroupError::NotAPrimePower(6));
    }
}
