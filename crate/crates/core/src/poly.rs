//! Dense univariate polynomials over a [`Field`] and their complete
//! factorization: squarefree decomposition (with the `p`-th power branch),
//! distinct-degree and equal-degree splitting.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::arith;
use crate::ff::{Field, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("equal-degree splitting gave up after {0} tries")]
    SplitBudgetExhausted(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Polynomial with coefficients in `field`, little-endian, no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self.format("X"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("X"))
    }
}

fn same_field(a: &Poly, b: &Poly) -> Result<(), PolyError> {
    if Arc::ptr_eq(&a.field, &b.field) || a.field == b.field {
        Ok(())
    } else {
        Err(PolyError::FieldMismatch)
    }
}

impl Poly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Coefficients given as integers, reduced into the prime subfield.
    pub fn from_ints(field: &Arc<Field>, coeffs: &[i64]) -> Poly {
        Poly::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly::constant(field, FieldElement::ONE)
    }

    pub fn x(field: &Arc<Field>) -> Poly {
        Poly::monomial(field, FieldElement::ONE, 1)
    }

    pub fn constant(field: &Arc<Field>, c: FieldElement) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    pub fn monomial(field: &Arc<Field>, c: FieldElement, degree: usize) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for size bookkeeping.
    fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(self.field.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(self.field.clone(), coeffs)
    }

    /// `(leading coefficient, monic associate)`; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> (FieldElement, Poly) {
        let lc = self.leading();
        if self.is_zero() || lc == FieldElement::ONE {
            return (if self.is_zero() { FieldElement::ZERO } else { lc }, self.clone());
        }
        let inv = self.field.inv(lc).expect("nonzero leading coefficient");
        (lc, self.scale(inv))
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        same_field(self, other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(self.field.clone(), (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        same_field(self, other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(self.field.clone(), (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect()))
    }

    /// Schoolbook product; zero coefficients are skipped, so sparse inputs are cheap.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        same_field(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let nz: Vec<(usize, FieldElement)> =
            other.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &nz {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(self.field.clone(), out))
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        same_field(self, divisor)?;
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let f = &self.field;
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Poly::zero(&self.field), self.clone()));
        };
        let lc_inv = f.inv(divisor.leading())?;
        let nz: Vec<(usize, FieldElement)> =
            divisor.coeffs[..db].iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FieldElement::ZERO; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(rem[i + db], lc_inv);
            rem[i + db] = FieldElement::ZERO;
            if c.is_zero() {
                continue;
            }
            quo[i] = c;
            for &(j, b) in &nz {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(self.field.clone(), quo), Poly::new(self.field.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn mod_pow(&self, e: u64, modulus: &Poly) -> Result<Poly, PolyError> {
        self.mod_pow_big(&BigUint::from(e), modulus)
    }

    pub fn mod_pow_big(&self, e: &BigUint, modulus: &Poly) -> Result<Poly, PolyError> {
        let base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Formal derivative; `i * c` is taken in characteristic `p`.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            self.field.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
                .collect(),
        )
    }

    /// `self(X + alpha)` by repeated synthetic division.
    pub fn taylor_shift(&self, alpha: FieldElement) -> Poly {
        let f = &self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = f.add(c[j], f.mul(alpha, c[j + 1]));
            }
        }
        Poly::new(self.field.clone(), c)
    }

    /// Substitutes `X -> X^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::ZERO; self.deg0() * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly::new(self.field.clone(), coeffs)
    }

    /// `c(X)` with `c(X)^p = self`, assuming every exponent is a multiple of `p`.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let levels = f.degree() - 1;
        let coeffs = self.coeffs.iter().step_by(p).map(|&c| f.frobenius(c, levels)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// Formats with variable `var`, highest degree first.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        terms.join(" + ")
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        same_field(self, other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().1)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).map(|g| g.is_one()).unwrap_or(false)
            }
        }
    }

    /// Rabin's test with the `q`-power Frobenius.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree().filter(|&n| n >= 1) else {
            return false;
        };
        if n == 1 {
            return true;
        }
        let a = self.monic().1;
        let q = self.field.order();
        let x = Poly::x(&self.field).rem(&a).expect("nonzero modulus");
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(x.clone());
        for i in 1..=n {
            let next = powers[i - 1].mod_pow(q, &a).expect("nonzero modulus");
            powers.push(next);
        }
        if powers[n] != x {
            return false;
        }
        arith::prime_divisors(n as u64).into_iter().all(|r| {
            let h = &powers[n / r as usize] - &x;
            a.gcd(&h).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    /// Yun-style decomposition adapted to characteristic `p`; returns
    /// `(squarefree part, multiplicity)` pairs sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out = self.monic().1.squarefree_inner(1);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    fn squarefree_inner(&self, mult: usize) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.deg0() == 0 {
            return out;
        }
        let p = self.field.characteristic() as usize;
        let d = self.derivative();
        if d.is_zero() {
            return self.pth_root().squarefree_inner(mult * p);
        }
        let mut c = self.gcd(&d).expect("nonzero");
        let mut w = self.exact_div(&c);
        let mut i = 1;
        while w.deg0() > 0 {
            let y = w.gcd(&c).expect("nonzero");
            let z = w.exact_div(&y);
            if z.deg0() > 0 {
                out.push((z, i * mult));
            }
            c = c.exact_div(&y);
            w = y;
            i += 1;
        }
        if c.deg0() > 0 {
            out.extend(c.pth_root().squarefree_inner(mult * p));
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial into
    /// `(product of all irreducible factors of degree d, d)` parts.
    pub fn ddf(&self) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.deg0() == 0 {
            return Err(PolyError::BadInput("ddf needs degree >= 1".into()));
        }
        if !self.is_monic() {
            return Err(PolyError::BadInput("ddf needs a monic polynomial".into()));
        }
        if !self.is_squarefree() {
            return Err(PolyError::NotSquarefree);
        }
        let q = self.field.order();
        let x = Poly::x(&self.field);
        let mut f = self.clone();
        let mut h = x.rem(&f)?;
        let mut out = Vec::new();
        let mut d = 0;
        while f.deg0() >= 2 * (d + 1) {
            d += 1;
            h = h.mod_pow(q, &f)?;
            let g = f.gcd(&(&h - &x))?;
            if g.deg0() > 0 {
                f = f.exact_div(&g);
                h = h.rem(&f)?;
                out.push((g, d));
            }
        }
        if f.deg0() > 0 {
            let d = f.deg0();
            out.push((f, d));
        }
        Ok(out)
    }

    /// Equal-degree splitting of a monic product of distinct irreducibles of
    /// degree `d`. Odd characteristic uses Cantor–Zassenhaus; characteristic 2
    /// uses the absolute trace `r + r^2 + ... + r^(2^(kd-1)) mod a`.
    pub fn edf<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Result<Vec<Poly>, PolyError> {
        let n = self.deg0();
        if d == 0 || n == 0 || !n.is_multiple_of(d) {
            return Err(PolyError::BadInput(format!("degree {n} is not a positive multiple of {d}")));
        }
        let mut done = Vec::new();
        let mut todo = vec![self.monic().1];
        while let Some(a) = todo.pop() {
            if a.deg0() == d {
                done.push(a);
                continue;
            }
            let g = self.split_once(&a, d, rng)?;
            let other = a.exact_div(&g);
            todo.push(g);
            todo.push(other);
        }
        done.sort();
        Ok(done)
    }

    fn split_once<R: Rng + ?Sized>(&self, a: &Poly, d: usize, rng: &mut R) -> Result<Poly, PolyError> {
        let field = &self.field;
        let n = a.deg0();
        let cap = 64 * d;
        let odd_exp =
            (field.characteristic() != 2).then(|| (arith::big_pow(field.order(), d as u32) - BigUint::one()) >> 1);
        for _ in 0..cap {
            let r = Poly::new(field.clone(), (0..n).map(|_| field.random(rng)).collect());
            if r.deg0() == 0 {
                continue;
            }
            let t = match &odd_exp {
                Some(e) => &r.mod_pow_big(e, a)? - &Poly::one(field),
                None => {
                    let steps = field.degree() * d;
                    let mut cur = r.rem(a)?;
                    let mut acc = cur.clone();
                    for _ in 1..steps {
                        cur = (&cur * &cur).rem(a)?;
                        acc = &acc + &cur;
                    }
                    acc
                }
            };
            if t.is_zero() {
                continue;
            }
            let g = a.gcd(&t)?;
            if g.deg0() > 0 && g.deg0() < n {
                return Ok(g);
            }
        }
        Err(PolyError::SplitBudgetExhausted(cap))
    }

    /// Complete factorization into a unit times monic irreducible powers.
    pub fn factor<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (unit, _) = self.monic();
        let mut factors = Vec::new();
        for (part, mult) in self.squarefree_decomposition()? {
            for (block, d) in part.ddf()? {
                if block.deg0() == d {
                    factors.push((block, mult));
                } else {
                    for g in block.edf(d, rng)? {
                        factors.push((g, mult));
                    }
                }
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics when the operands live over different fields; use the
            /// `checked_*` method to get an error instead.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials over the same field")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(self.field.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

/// `unit * prod factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: &Arc<Field>) -> Poly {
        self.factors.iter().fold(Poly::constant(field, self.unit), |acc, (f, m)| &acc * &f.pow(*m as u64))
    }

    /// Irreducible-factor degrees, each repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.factors.iter().flat_map(|(f, m)| std::iter::repeat_n(f.deg0(), *m)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_extension, make_prime_field};
    use crate::rng::stream;

    fn p(field: &Arc<Field>, c: &[i64]) -> Poly {
        Poly::from_ints(field, c)
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(&p(&f2, &[1, 1]) * &p(&f2, &[1, 1]), p(&f2, &[1, 0, 1]));
        let f3 = make_prime_field(3).unwrap();
        let (q, r) = p(&f3, &[0, -1, 0, 1]).divmod(&p(&f3, &[0, 1])).unwrap();
        assert_eq!(q, p(&f3, &[-1, 0, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&f3, &[1]).divmod(&Poly::zero(&f3)).unwrap_err(), PolyError::DivisionByZero);
        let f5 = make_prime_field(5).unwrap();
        let m = p(&f5, &[1, 0, 1]);
        let naive = Poly::x(&f5).pow(5).rem(&m).unwrap();
        assert_eq!(Poly::x(&f5).mod_pow(5, &m).unwrap(), naive);
        // X^5 = X * (X^2)^2 = X mod X^2 + 1
        assert_eq!(naive, Poly::x(&f5));
        assert_eq!(p(&f5, &[1]).checked_add(&p(&f3, &[1])).unwrap_err(), PolyError::FieldMismatch);
    }

    #[test]
    fn gcd_examples() {
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(p(&f3, &[-1, 0, 1]).gcd(&p(&f3, &[-1, 1])).unwrap(), p(&f3, &[2, 1]));
        let f = p(&f3, &[2, 0, 2]);
        assert_eq!(f.gcd(&Poly::zero(&f3)).unwrap(), p(&f3, &[1, 0, 1]));
        assert_eq!(Poly::zero(&f3).gcd(&Poly::zero(&f3)).unwrap_err(), PolyError::BothZero);
        let f2 = make_prime_field(2).unwrap();
        let f = p(&f2, &[0, 1, 0, 0, 0, 0, 0, 1]);
        let g = f.gcd(&f.derivative()).unwrap();
        assert!(g.degree().unwrap() > 0);
    }

    #[test]
    fn derivative_examples() {
        let f4 = {
            let f2 = make_prime_field(2).unwrap();
            make_extension(&f2, 2, None, &mut stream(0, "m")).unwrap()
        };
        assert!(Poly::monomial(&f4, f4.one(), 4).derivative().is_zero());
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(p(&f2, &[1, 1, 0, 1]).derivative(), p(&f2, &[1, 0, 1]));
        let f3 = make_prime_field(3).unwrap();
        let d = Poly::monomial(&f3, f3.one(), 8).derivative();
        assert_eq!(d.leading(), f3.from_int(2));
        assert_eq!(d.degree(), Some(7));
    }

    #[test]
    fn squarefree_examples() {
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(p(&f2, &[1, 0, 1]).squarefree_decomposition().unwrap(), vec![(p(&f2, &[1, 1]), 2)]);
        let f3 = make_prime_field(3).unwrap();
        let f = &p(&f3, &[0, 1]) * &p(&f3, &[1, 1]).pow(2);
        assert_eq!(f.squarefree_decomposition().unwrap(), vec![(p(&f3, &[0, 1]), 1), (p(&f3, &[1, 1]), 2)]);
        let c = p(&f2, &[1, 1, 0, 1]);
        assert_eq!(c.pow(4).squarefree_decomposition().unwrap(), vec![(c, 4)]);
        assert_eq!(Poly::zero(&f2).squarefree_decomposition().unwrap_err(), PolyError::ZeroPolynomial);
        assert!(!p(&f2, &[1, 0, 1]).is_squarefree());
        assert!(p(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!p(&f2, &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn ddf_examples() {
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(p(&f2, &[0, 1, 1]).ddf().unwrap(), vec![(p(&f2, &[0, 1, 1]), 1)]);
        assert_eq!(p(&f2, &[1, 1, 1]).ddf().unwrap(), vec![(p(&f2, &[1, 1, 1]), 2)]);
        assert_eq!(p(&f2, &[0, 1, 0, 0, 1]).ddf().unwrap(), vec![(p(&f2, &[0, 1, 1]), 1), (p(&f2, &[1, 1, 1]), 2)]);
        assert_eq!(p(&f2, &[1, 0, 1]).ddf().unwrap_err(), PolyError::NotSquarefree);
    }

    #[test]
    fn edf_examples() {
        let mut rng = stream(5, "edf");
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(p(&f2, &[0, 1, 1]).edf(1, &mut rng).unwrap(), vec![p(&f2, &[0, 1]), p(&f2, &[1, 1])]);
        let f5 = make_prime_field(5).unwrap();
        assert_eq!(p(&f5, &[1, 0, 1]).edf(1, &mut rng).unwrap(), vec![p(&f5, &[2, 1]), p(&f5, &[3, 1])]);
        let f4 = make_extension(&f2, 2, None, &mut stream(0, "m")).unwrap();
        // X^2+X+1 splits over F_4 but X^2+X+w does not
        let w = f4.generator();
        assert!(!Poly::new(f4.clone(), vec![f4.one(), f4.one(), f4.one()]).is_irreducible());
        assert!(Poly::new(f4.clone(), vec![w, f4.one(), f4.one()]).is_irreducible());
        let irr: Vec<Poly> = f4
            .elements()
            .unwrap()
            .flat_map(|c0| f4.elements().unwrap().map(move |c1| (c0, c1)))
            .map(|(c0, c1)| Poly::new(f4.clone(), vec![c0, c1, f4.one()]))
            .filter(|q| q.is_irreducible())
            .collect();
        assert_eq!(irr.len(), 6);
        let prod = &irr[0] * &irr[3];
        let mut want = vec![irr[0].clone(), irr[3].clone()];
        want.sort();
        assert_eq!(prod.edf(2, &mut rng).unwrap(), want);
        assert!(matches!(p(&f2, &[1, 1, 1]).edf(3, &mut rng), Err(PolyError::BadInput(_))));
    }

    #[test]
    fn factor_examples() {
        let mut rng = stream(6, "edf");
        let f3 = make_prime_field(3).unwrap();
        let fac = p(&f3, &[0, -1, 0, 1]).factor(&mut rng).unwrap();
        assert_eq!(fac.factors, vec![(p(&f3, &[0, 1]), 1), (p(&f3, &[1, 1]), 1), (p(&f3, &[2, 1]), 1)]);
        let f2 = make_prime_field(2).unwrap();
        assert!(p(&f2, &[1, 1, 0, 0, 1]).factor(&mut rng).unwrap().is_irreducible());
        assert_eq!(Poly::zero(&f2).factor(&mut rng).unwrap_err(), PolyError::ZeroPolynomial);
        let f = p(&f3, &[2, 0, 1, 2]);
        let fac = f.factor(&mut rng).unwrap();
        assert_eq!(fac.product(&f3), f);
        assert_eq!(fac.unit, f3.from_int(2));
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let f3 = make_prime_field(3).unwrap();
        let f = &p(&f3, &[-1, 1]).pow(2) * &p(&f3, &[0, 1]);
        let shifted = f.taylor_shift(f3.one());
        // f(X+1) = X^2 (X+1)
        assert_eq!(shifted, p(&f3, &[0, 0, 1, 1]));
    }
}
