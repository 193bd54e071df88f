use std::sync::Arc;

use linpoly::arith;
use linpoly::ff::{make_extension, make_prime_field, Field, FieldElement};
use linpoly::poly::Poly;
use linpoly::rng::stream;
use proptest::prelude::*;
use rand::Rng;

fn field(q: u64) -> Arc<Field> {
    let (p, k) = arith::prime_power(q).unwrap();
    let base = make_prime_field(p).unwrap();
    make_extension(&base, k as usize, None, &mut stream(q, "modulus-search")).unwrap()
}

fn small_fields(limit: u64) -> Vec<Arc<Field>> {
    (2..=limit).filter(|&q| arith::prime_power(q).is_some()).map(field).collect()
}

fn random_poly<R: Rng>(f: &Arc<Field>, max_deg: usize, rng: &mut R) -> Poly {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let c: Vec<FieldElement> = (0..=d).map(|_| f.random(rng)).collect();
        let p = Poly::new(f.clone(), c);
        if p.degree().unwrap_or(0) >= 1 {
            return p;
        }
    }
}

fn monic_of_degree(f: &Arc<Field>, d: usize) -> Vec<Poly> {
    let q = f.order();
    (0..q.pow(d as u32))
        .map(|mut idx| {
            let mut c: Vec<FieldElement> = (0..d)
                .map(|_| {
                    let e = f.element(idx % q).unwrap();
                    idx /= q;
                    e
                })
                .collect();
            c.push(f.one());
            Poly::new(f.clone(), c)
        })
        .collect()
}

/// Trial division by every monic polynomial of degree <= 3, smallest first.
/// Valid for inputs of degree <= 6.
fn trial_division(f: &Poly, divisors: &[Poly]) -> Vec<(Poly, usize)> {
    let mut rest = f.monic().1;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for g in divisors {
        let mut mult = 0;
        loop {
            let (quo, rem) = rest.divmod(g).unwrap();
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            mult += 1;
        }
        if mult > 0 {
            out.push((g.clone(), mult));
        }
    }
    if rest.degree().unwrap() > 0 {
        out.push((rest, 1));
    }
    out.sort();
    out
}

#[test]
fn factor_agrees_with_trial_division() {
    let fields = small_fields(9);
    let divisors: Vec<Vec<Poly>> =
        fields.iter().map(|f| (1..=3).flat_map(|d| monic_of_degree(f, d)).collect()).collect();
    let mut rng = stream(2024, "oracle");
    let mut edf = stream(2024, "edf");
    for i in 0..500 {
        let which = i % fields.len();
        let f = random_poly(&fields[which], 6, &mut rng);
        let got = f.factor(&mut edf).unwrap();
        assert_eq!(got.factors, trial_division(&f, &divisors[which]), "{f:?}");
    }
}

#[test]
fn factor_round_trip() {
    let fields = small_fields(81);
    let mut rng = stream(77, "round-trip");
    let mut edf = stream(77, "edf");
    for i in 0..500 {
        let f = &fields[i % fields.len()];
        let a = random_poly(f, 12, &mut rng);
        let fac = a.factor(&mut edf).unwrap();
        assert_eq!(fac.product(f), a);
        let total: usize = fac.factors.iter().map(|(g, m)| g.degree().unwrap() * m).sum();
        assert_eq!(Some(total), a.degree());
        for (g, _) in &fac.factors {
            assert!(g.is_monic() && g.is_irreducible(), "{g:?}");
        }
    }
}

#[test]
fn ddf_degrees_divide_their_parts() {
    let fields = small_fields(27);
    let mut rng = stream(5, "ddf");
    for i in 0..200 {
        let f = &fields[i % fields.len()];
        let a = random_poly(f, 12, &mut rng).monic().1;
        for (part, _) in a.squarefree_decomposition().unwrap() {
            for (block, d) in part.ddf().unwrap() {
                assert_eq!(block.degree().unwrap() % d, 0);
            }
        }
    }
}

#[test]
fn factor_product_over_f4_with_repeated_factors() {
    let f = field(4);
    let mut edf = stream(1, "edf");
    let x = Poly::x(&f);
    let w = Poly::constant(&f, f.generator());
    // X^3 (X + w)^4 (X^2 + X + w)^2
    let quad = Poly::new(f.clone(), vec![f.generator(), f.one(), f.one()]);
    let a = &(&x.pow(3) * &(&x + &w).pow(4)) * &quad.pow(2);
    let fac = a.factor(&mut edf).unwrap();
    assert_eq!(fac.degrees(), vec![1, 1, 1, 1, 1, 1, 1, 2, 2]);
    assert_eq!(fac.product(&f), a);
}

proptest! {
    #[test]
    fn squarefree_parts_reassemble(seed in any::<u64>(), qi in 0usize..7) {
        let fields = [2u64, 3, 4, 5, 7, 8, 9];
        let f = field(fields[qi]);
        let mut rng = stream(seed, "prop");
        let a = random_poly(&f, 10, &mut rng).monic().1;
        let parts = a.squarefree_decomposition().unwrap();
        let prod = parts.iter().fold(Poly::one(&f), |acc, (g, m)| &acc * &g.pow(*m as u64));
        prop_assert_eq!(prod, a);
        for (g, _) in &parts {
            prop_assert!(g.is_squarefree());
        }
    }
}
