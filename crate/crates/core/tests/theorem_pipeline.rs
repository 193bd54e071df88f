use linpoly::arith::divides;
use linpoly::ff::make_prime_field;
use linpoly::galois::{classify, proposition_check, verify_theorem, Budget, Verdict};
use linpoly::groups::{order_gl, semilinear_cycle_types};
use linpoly::linpoly::LinearizedPoly;
use linpoly::rng::DEFAULT_SEED;
use num_bigint::BigUint;

#[test]
fn theorem_tables_certify() {
    for (q, n, rows) in [(2u64, 3usize, 3usize), (3, 3, 8), (4, 3, 15), (2, 5, 15)] {
        let t = verify_theorem(q, n, &Budget::default(), DEFAULT_SEED, false).unwrap();
        assert_eq!(t.rows.len(), rows);
        assert!(t.pass, "q={q} n={n}");
        assert!(t.rows.iter().all(|r| r.verdict == Verdict::CertifiedGL && r.reverified));
        let gl = order_gl(n, q);
        for r in &t.rows {
            assert!(divides(r.order_lower_bound.as_ref().unwrap(), &gl));
            assert!(divides(r.proposition_divisor.as_ref().unwrap(), &gl));
        }
    }
}

#[test]
fn tables_are_reproducible() {
    let a = verify_theorem(3, 3, &Budget::default(), 11, true).unwrap();
    let b = verify_theorem(3, 3, &Budget::default(), 11, true).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

fn f2_lin(interior: &[u64]) -> LinearizedPoly {
    let f2 = make_prime_field(2).unwrap();
    let c: Vec<_> = interior.iter().map(|&a| f2.from_int(a as i64)).collect();
    LinearizedPoly::from_interior(&f2, &c).unwrap()
}

#[test]
fn composite_degree_four_certifies_when_not_f4_linear() {
    // X^16 + X^2
    let l = f2_lin(&[1, 0, 0]);
    let r = classify(&l, &Budget::default(), DEFAULT_SEED).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedGL);
    let ds: Vec<(usize, u64)> = r.candidates_excluded.iter().map(|c| (c.d, c.elements_enumerated)).collect();
    assert_eq!(ds, vec![(2, 360), (4, 60)]);
    assert!(r.candidates_excluded.iter().all(|c| c.witness_absent));
    assert!(proposition_check(&l, Some(&r)).unwrap().pass);
}

#[test]
fn f4_linear_polynomial_stays_inside_gammal_2_4() {
    // X^16 + X^4 = X^(4^2) + X^4 commutes with F_4-scalars, so every
    // Frobenius type lies in GammaL_2(4)
    let l = f2_lin(&[0, 1, 0]);
    let r = classify(&l, &Budget::default(), DEFAULT_SEED).unwrap();
    assert_eq!(r.verdict, Verdict::UndeterminedWithinBudget);
    let gamma = semilinear_cycle_types(2, 4, 2).unwrap();
    assert!(!r.observed_types.is_empty());
    assert!(r.observed_types.iter().all(|t| gamma.contains_key(t)));
    let p = proposition_check(&l, Some(&r)).unwrap();
    assert_eq!(p.divisor, BigUint::from(180u32));
    assert_eq!(p.order_gl, BigUint::from(20160u32));
    assert!(p.pass);
}

#[test]
fn composite_propositions() {
    for m in 1..4 {
        let mut interior = vec![0; 3];
        interior[m - 1] = 1;
        let p = proposition_check(&f2_lin(&interior), None).unwrap();
        assert_eq!(p.m, m);
        assert!(p.corollary_matches && p.divides_gl);
    }
}
