use codedcache::caching::{placement, simulate, SchemeParams, SimulationConfig};
use codedcache::codes::build_crt_cyclic;
use codedcache::design::{resolvable_design, verify_resolvable, CodewordMatrix};
use num_bigint::BigUint;
use std::collections::BTreeSet;

/// Members of the Z6 code of length 4 lifted from `<X + 1>` over GF(2) and over GF(3),
/// found by brute force over all of Z6^4: even coordinate sum mod 2 and
/// alternating sum zero mod 3.
fn z6_oracle() -> BTreeSet<Vec<u32>> {
    (0..6u32.pow(4))
        .map(|m| (0..4).map(|i| m / 6u32.pow(i) % 6).collect::<Vec<u32>>())
        .filter(|c| c.iter().sum::<u32>() % 2 == 0)
        .filter(|c| (c[0] + c[2] + 2 * (c[1] + c[3])) % 3 == 0)
        .collect()
}

#[test]
fn crt_lift_matches_brute_force_membership() {
    let code = build_crt_cyclic(&[(vec![1, 1], 2), (vec![1, 1], 3)], 4).unwrap();
    assert_eq!(code.modulus(), 6);
    assert_eq!(code.num_codewords(), 216);
    let t = CodewordMatrix::from_crt(&code).unwrap();
    let words: Vec<Vec<u32>> = (0..t.num_codewords()).map(|j| (0..4).map(|i| t.get(i, j)).collect()).collect();
    let distinct: BTreeSet<Vec<u32>> = words.iter().cloned().collect();
    assert_eq!(distinct.len(), 216, "codewords must be distinct");
    assert_eq!(distinct, z6_oracle());
}

#[test]
fn crt_design_is_resolvable_and_delivers() {
    let code = build_crt_cyclic(&[(vec![1, 1], 2), (vec![1, 1], 3)], 4).unwrap();
    let t = CodewordMatrix::from_crt(&code).unwrap();
    let d = resolvable_design(&t).unwrap();
    assert!(verify_resolvable(&d).is_resolvable());
    assert!(d.classes().iter().flatten().all(|b| b.len() == 36));
    let alpha = code.k_min();
    let scheme = placement(d, alpha).unwrap();
    let users = 24;
    let demands: Vec<usize> = (0..users).map(|u| u % 5).collect();
    let plan = scheme.delivery(&demands).unwrap();
    let params = SchemeParams::new(4, 6, alpha, BigUint::from(216u32));
    assert_eq!(BigUint::from(plan.equations.len()), params.num_equations());
    let report = simulate(&scheme, &plan, &SimulationConfig { num_files: 5, subfile_bytes: 8, seed: 3 }).unwrap();
    assert!(report.all_exact);
    assert_eq!(report.rate, params.base_point().rate);
}

#[test]
fn non_prime_moduli_are_rejected() {
    assert!(build_crt_cyclic(&[(vec![1, 1], 4), (vec![1, 1], 3)], 4).is_err());
    assert!(build_crt_cyclic(&[(vec![1, 1], 3), (vec![1, 1], 3)], 4).is_err());
}
