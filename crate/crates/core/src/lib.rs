//! Computational toolkit for Galois groups of `q`-linearized polynomials
//! `L(X) = sum a_i X^(q^i)` over `F_q`.

pub mod arith;
pub mod ff;
pub mod galois;
pub mod groups;
pub mod linpoly;
pub mod parse;
pub mod poly;
pub mod rng;
pub mod series;
