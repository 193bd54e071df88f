//! `q`-linearized polynomials `L(X) = sum_{i} a_i X^(q^i)` over `F_q`.
//!
//! Construction normalizes to the monic form with `a_0 = 0` (the constant
//! term of `L(X)/X` is absorbed by the shift `t -> t - a_0`). The central
//! operation is [`LinearizedPoly::multiplicity_decomposition`], which writes
//! `L(X)/X = X^(q^m - 1) * h(X)^(q^m)` and checks it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ff::{Embedding, Field, FieldElement, FieldError, ENUMERATION_LIMIT};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("leading coefficient a_{0} is zero")]
    LeadingZero(usize),
    #[error("no coefficients given")]
    Empty,
    #[error("q-degree must be at least 1")]
    ZeroDegree,
    #[error("L(X) = X^(q^n) has no interior term")]
    NoInteriorTerm,
    #[error("q^n = {0} exceeds the dense-expansion limit")]
    TooLarge(u128),
    #[error("multiplicity decomposition check failed: {0}")]
    CheckFailed(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A monic, `a_0`-normalized `q`-linearized polynomial.
#[derive(Clone)]
pub struct LinearizedPoly {
    field: Arc<Field>,
    qdeg: usize,
    /// `a_0..a_n` after normalization: `a_n = 1`, `a_0 = 0`.
    coeffs: Vec<FieldElement>,
    original_a0: FieldElement,
    original_lead: FieldElement,
    mlow: Option<usize>,
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly[{}]({})", self.field, self)
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.field.order() as u128;
        let terms: Vec<String> = (0..=self.qdeg)
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| {
                let c = self.field.format(self.coeffs[i]);
                let mono = format!("X^{}", q.pow(i as u32));
                if c == "1" {
                    mono
                } else if c.contains('+') {
                    format!("({c})*{mono}")
                } else {
                    format!("{c}*{mono}")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `L(X)/X = X^(q^m - 1) * h(X)^(q^m)` with its root multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityDecomposition {
    pub m: usize,
    pub h: Poly,
    /// Multiplicity of the root 0, `q^m - 1`.
    pub zero_root_multiplicity: u64,
    /// Multiplicity of every root of `h`, `q^m`.
    pub h_root_multiplicity: u64,
}

impl LinearizedPoly {
    /// Builds the normalized polynomial from `q`-exponent -> coefficient pairs.
    /// The largest key is the `q`-degree `n` and its coefficient must be nonzero.
    pub fn new(field: &Arc<Field>, coeffs: &BTreeMap<usize, FieldElement>) -> Result<LinearizedPoly, LinError> {
        let (&n, &lead) = coeffs.iter().next_back().ok_or(LinError::Empty)?;
        if lead.is_zero() {
            return Err(LinError::LeadingZero(n));
        }
        if n == 0 {
            return Err(LinError::ZeroDegree);
        }
        let inv = field.inv(lead)?;
        let mut dense = vec![FieldElement::ZERO; n + 1];
        for (&i, &a) in coeffs {
            dense[i] = field.mul(a, inv);
        }
        let original_a0 = coeffs.get(&0).copied().unwrap_or_default();
        dense[0] = FieldElement::ZERO;
        let mlow = (1..n).find(|&i| !dense[i].is_zero());
        Ok(LinearizedPoly { field: field.clone(), qdeg: n, coeffs: dense, original_a0, original_lead: lead, mlow })
    }

    /// Monic `X^(q^n) + sum_{i=1}^{n-1} interior[i-1] X^(q^i)`.
    pub fn from_interior(field: &Arc<Field>, interior: &[FieldElement]) -> Result<LinearizedPoly, LinError> {
        let mut map: BTreeMap<usize, FieldElement> = interior.iter().enumerate().map(|(i, &a)| (i + 1, a)).collect();
        map.insert(interior.len() + 1, FieldElement::ONE);
        LinearizedPoly::new(field, &map)
    }

    /// Every monic normalized `L` of `q`-degree `n` with some nonzero
    /// `a_1..a_{n-1}`, ordered by the interior vector read as a base-`q`
    /// number with `a_1` least significant.
    pub fn all_with_interior_term(field: &Arc<Field>, n: usize) -> Result<Vec<LinearizedPoly>, LinError> {
        if n == 0 {
            return Err(LinError::ZeroDegree);
        }
        let q = field.order() as u128;
        let count = q.pow(n as u32 - 1);
        if count > ENUMERATION_LIMIT as u128 {
            return Err(LinError::TooLarge(count));
        }
        (1..count as u64)
            .map(|mut idx| {
                let interior: Vec<FieldElement> = (1..n)
                    .map(|_| {
                        let c = field.element(idx % q as u64).expect("in range");
                        idx /= q as u64;
                        c
                    })
                    .collect();
                LinearizedPoly::from_interior(field, &interior)
            })
            .collect()
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// The `q`-degree `n`.
    pub fn qdeg(&self) -> usize {
        self.qdeg
    }

    /// Normalized `a_i`.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn original_a0(&self) -> FieldElement {
        self.original_a0
    }

    pub fn original_lead(&self) -> FieldElement {
        self.original_lead
    }

    /// Least `1 <= i <= n-1` with `a_i != 0`.
    pub fn mlow(&self) -> Option<usize> {
        self.mlow
    }

    /// `L = X^(q^n)`, the case without interior term.
    pub fn is_excluded(&self) -> bool {
        self.mlow.is_none()
    }

    /// Compact `i:a_i;...` key over the nonzero normalized coefficients.
    pub fn key(&self) -> String {
        (0..=self.qdeg)
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| format!("{i}:{}", self.field.format(self.coeffs[i])))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn q_pow(&self, i: usize) -> Result<usize, LinError> {
        let v = (self.field.order() as u128).pow(i as u32);
        if v > ENUMERATION_LIMIT as u128 {
            return Err(LinError::TooLarge(v));
        }
        Ok(v as usize)
    }

    fn sparse(&self, terms: impl Iterator<Item = (usize, FieldElement)>) -> Poly {
        let terms: Vec<_> = terms.collect();
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut dense = vec![FieldElement::ZERO; deg + 1];
        for (e, c) in terms {
            dense[e] = self.field.add(dense[e], c);
        }
        Poly::new(self.field.clone(), dense)
    }

    /// `sum a_i X^(q^i)` as an ordinary polynomial of degree `q^n`.
    pub fn conventional_form(&self) -> Result<Poly, LinError> {
        let exps = (0..=self.qdeg).map(|i| self.q_pow(i)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.sparse(exps.into_iter().zip(self.coeffs.iter().copied())))
    }

    /// `L(X)/X = sum a_i X^(q^i - 1)`, of degree `q^n - 1`.
    pub fn reduced_quotient(&self) -> Result<Poly, LinError> {
        let exps = (0..=self.qdeg).map(|i| self.q_pow(i)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.sparse(exps.into_iter().map(|e| e - 1).zip(self.coeffs.iter().copied())))
    }

    /// `L(x) = sum a_i x^(q^i)` evaluated through Frobenius powers in the
    /// target of `emb`.
    pub fn evaluate(&self, emb: &Embedding, x: FieldElement) -> Result<FieldElement, LinError> {
        if **emb.source() != *self.field {
            return Err(FieldError::FieldMismatch.into());
        }
        let t = emb.target();
        let k0 = self.field.degree();
        Ok(t.sum(self.coeffs.iter().enumerate().map(|(i, &a)| t.mul(emb.apply(a), t.frobenius(x, k0 * i)))))
    }

    /// Writes `L(X)/X = X^(q^m - 1) * h(X)^(q^m)` with
    /// `h(X) = sum_{i=m}^{n} a_i X^(q^(i-m) - 1)` and verifies the
    /// reconstruction, the identity `a_m - X h'(X) = h(X)`, and that `h` is
    /// squarefree with `h(0) = a_m != 0`.
    pub fn multiplicity_decomposition(&self) -> Result<MultiplicityDecomposition, LinError> {
        let m = self.mlow.ok_or(LinError::NoInteriorTerm)?;
        let field = &self.field;
        let qm = self.q_pow(m)?;
        let h = self.sparse((m..=self.qdeg).map(|i| {
            let e = (field.order() as usize).pow((i - m) as u32) - 1;
            (e, self.coeffs[i])
        }));

        let rebuilt = h.pow(qm as u64).shift(qm - 1);
        if rebuilt != self.reduced_quotient()? {
            return Err(LinError::CheckFailed("X^(q^m-1) h^(q^m) != L(X)/X"));
        }
        let am = self.coeffs[m];
        let lhs = &Poly::constant(field, am) - &h.derivative().shift(1);
        if lhs != h {
            return Err(LinError::CheckFailed("a_m - X h'(X) != h(X)"));
        }
        if h.coeff(0) != am || am.is_zero() {
            return Err(LinError::CheckFailed("h(0) != a_m"));
        }
        if !h.is_squarefree() {
            return Err(LinError::CheckFailed("h is not squarefree"));
        }
        Ok(MultiplicityDecomposition { m, h, zero_root_multiplicity: qm as u64 - 1, h_root_multiplicity: qm as u64 })
    }

    /// `L(X)/X - c` over the target field of `emb`.
    pub fn specialize(&self, emb: &Embedding, c: FieldElement) -> Result<Poly, LinError> {
        if **emb.source() != *self.field {
            return Err(
                FieldError::EmbeddingUnavailable { from: self.field.order(), into: emb.target().order() }.into()
            );
        }
        let f = emb.apply_poly(&self.reduced_quotient()?)?;
        Ok(&f - &Poly::constant(emb.target(), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_extension, make_prime_field};
    use crate::rng::stream;

    fn lin(field: &Arc<Field>, terms: &[(usize, i64)]) -> LinearizedPoly {
        let map = terms.iter().map(|&(i, a)| (i, field.from_int(a))).collect();
        LinearizedPoly::new(field, &map).unwrap()
    }

    #[test]
    fn construction() {
        let f2 = make_prime_field(2).unwrap();
        let l = lin(&f2, &[(1, 1), (3, 1)]);
        assert_eq!(l.to_string(), "X^8 + X^2");
        assert_eq!(l.mlow(), Some(1));
        let l = lin(&f2, &[(3, 1)]);
        assert_eq!(l.mlow(), None);
        assert!(l.is_excluded());
        assert_eq!(l.multiplicity_decomposition().unwrap_err(), LinError::NoInteriorTerm);
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(lin(&f3, &[(1, 2), (2, 1)]).to_string(), "X^9 + 2*X^3");
        let map = [(2usize, f3.zero())].into_iter().collect();
        assert_eq!(LinearizedPoly::new(&f3, &map).unwrap_err(), LinError::LeadingZero(2));
    }

    #[test]
    fn normalization_divides_by_lead_and_drops_a0() {
        let f5 = make_prime_field(5).unwrap();
        let l = lin(&f5, &[(0, 3), (1, 2), (2, 2)]);
        assert_eq!(l.coeff(2), f5.one());
        assert_eq!(l.coeff(1), f5.one());
        assert_eq!(l.coeff(0), f5.zero());
        assert_eq!(l.original_a0(), f5.from_int(3));
        assert_eq!(l.original_lead(), f5.from_int(2));
    }

    #[test]
    fn forms() {
        let f2 = make_prime_field(2).unwrap();
        let l = lin(&f2, &[(1, 1), (3, 1)]);
        let conv = l.conventional_form().unwrap();
        assert_eq!(conv.degree(), Some(8));
        let nz: Vec<usize> = (0..=8).filter(|&i| !conv.coeff(i).is_zero()).collect();
        assert_eq!(nz, vec![2, 8]);
        let rq = l.reduced_quotient().unwrap();
        assert_eq!(rq, Poly::from_ints(&f2, &[0, 1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(rq.shift(1), conv);
    }

    #[test]
    fn two_evaluation_paths_and_additivity() {
        let mut rng = stream(11, "t");
        for p in [2u64, 3] {
            let fp = make_prime_field(p).unwrap();
            let big = make_extension(&fp, 3, None, &mut rng).unwrap();
            let emb = Embedding::new(&fp, &big).unwrap();
            let l = lin(&fp, &[(1, 1), (2, 1)]);
            let conv = emb.apply_poly(&l.conventional_form().unwrap()).unwrap();
            for _ in 0..50 {
                let x = big.random(&mut rng);
                let y = big.random(&mut rng);
                assert_eq!(conv.eval(x), l.evaluate(&emb, x).unwrap());
                let lxy = l.evaluate(&emb, big.add(x, y)).unwrap();
                let sum = big.add(l.evaluate(&emb, x).unwrap(), l.evaluate(&emb, y).unwrap());
                assert_eq!(lxy, sum);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let f2 = make_prime_field(2).unwrap();
        let d = lin(&f2, &[(1, 1), (3, 1)]).multiplicity_decomposition().unwrap();
        assert_eq!(d.m, 1);
        assert_eq!(d.h, Poly::from_ints(&f2, &[1, 0, 0, 1]));
        assert_eq!((d.zero_root_multiplicity, d.h_root_multiplicity), (1, 2));
        let d = lin(&f2, &[(2, 1), (3, 1)]).multiplicity_decomposition().unwrap();
        assert_eq!(d.m, 2);
        assert_eq!(d.h, Poly::from_ints(&f2, &[1, 1]));
        assert_eq!((d.zero_root_multiplicity, d.h_root_multiplicity), (3, 4));
    }

    #[test]
    fn specialization() {
        let f2 = make_prime_field(2).unwrap();
        let emb = Embedding::identity(&f2).unwrap();
        let l = lin(&f2, &[(1, 1), (3, 1)]);
        let s = l.specialize(&emb, f2.one()).unwrap();
        assert_eq!(s, Poly::from_ints(&f2, &[1, 1, 0, 0, 0, 0, 0, 1]));
        let s0 = l.specialize(&emb, f2.zero()).unwrap();
        assert!(!s0.is_squarefree());
        assert_eq!(s0.degree(), Some(7));
        let f3 = make_prime_field(3).unwrap();
        let other = Embedding::identity(&f3).unwrap();
        assert!(matches!(
            l.specialize(&other, f3.one()),
            Err(LinError::Field(FieldError::EmbeddingUnavailable { .. }))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let f3 = make_prime_field(3).unwrap();
        let all = LinearizedPoly::all_with_interior_term(&f3, 3).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|l| !l.is_excluded() && l.qdeg() == 3));
    }
}
