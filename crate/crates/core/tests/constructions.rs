//! Every builder's output is certified by the exhaustive window check.

use codedcache::codes::{
    build_block_vandermonde, build_cyclic, build_identity_band, build_mds, build_ring_band, build_spc, check_ccp,
    check_ccp_cyclic_shortcut, extend_ccp, extend_ccp_alpha, kron_identity, search_cyclic_generators, window_multiplier,
    CodesError, GeneratorMatrix,
};
use codedcache::gf::ScalarDomain;
use proptest::prelude::*;

const FIELDS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];
const RINGS: [u32; 4] = [4, 6, 10, 12];

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn satisfied(g: &GeneratorMatrix, alpha: usize) -> bool {
    check_ccp(g, alpha).unwrap().satisfied
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vandermonde_has_every_window_property(qi in 0..FIELDS.len(), n in 2usize..14, k in 1usize..8) {
        let q = FIELDS[qi];
        prop_assume!(k < n);
        let f = ScalarDomain::for_order(q).unwrap();
        match build_mds(n, k, &f) {
            Ok(g) => {
                prop_assert!((q as usize) >= n);
                prop_assert!(satisfied(&g, k + 1));
                prop_assert!(satisfied(&g, k));
            }
            Err(e) => {
                let too_small = matches!(e, CodesError::FieldTooSmall { .. });
                prop_assert!(too_small);
            }
        }
    }

    #[test]
    fn spc_over_fields_and_rings(qi in 0..(FIELDS.len() + RINGS.len()), k in 1usize..7) {
        let q = if qi < FIELDS.len() { FIELDS[qi] } else { RINGS[qi - FIELDS.len()] };
        let g = build_spc(k, &ScalarDomain::for_order(q).unwrap()).unwrap();
        prop_assert_eq!((g.k(), g.n()), (k, k + 1));
        prop_assert!(satisfied(&g, k + 1));
    }

    #[test]
    fn identity_band_over_fields(qi in 0..FIELDS.len(), t in 1usize..4, z in 2usize..5) {
        let q = FIELDS[qi];
        prop_assume!(z * t >= 2);
        let f = ScalarDomain::for_order(q).unwrap();
        match build_identity_band(t, z, &f) {
            Ok(g) => {
                prop_assert_eq!((g.k(), g.n()), (z * t - 1, (z + 1) * t));
                prop_assert!(satisfied(&g, g.k() + 1));
            }
            Err(e) => {
                let too_small = matches!(e, CodesError::FieldTooSmall { .. });
                prop_assert!(too_small && (q as usize) < z);
            }
        }
    }

    #[test]
    fn ring_band_over_rings(qi in 0..RINGS.len(), t in 1usize..5) {
        let g = build_ring_band(t, &ScalarDomain::ring(RINGS[qi]).unwrap()).unwrap();
        prop_assert_eq!((g.k(), g.n()), (2 * t - 1, 3 * t));
        prop_assert!(satisfied(&g, 2 * t));
    }

    #[test]
    fn block_vandermonde(qi in 0..FIELDS.len(), t in 1usize..3, z in 2usize..4, a in 4usize..7) {
        let q = FIELDS[qi];
        prop_assume!(gcd(z as u64, a as u64) == 1 && a > z + 1 && (q as usize) > a && t * z >= 2);
        let g = build_block_vandermonde(t, z, a, &ScalarDomain::for_order(q).unwrap()).unwrap();
        prop_assert_eq!((g.k(), g.n()), (t * z - 1, t * a));
        prop_assert!(satisfied(&g, t * z));
    }

    #[test]
    fn extension_preserves_the_property(qi in 0..FIELDS.len(), k in 1usize..5, s in 0usize..3) {
        let f = ScalarDomain::for_order(FIELDS[qi]).unwrap();
        let base = build_spc(k, &f).unwrap();
        let g = extend_ccp(&base, s).unwrap();
        prop_assert_eq!(g.n(), (s + 1) * (k + 1));
        prop_assert!(satisfied(&g, k + 1));
    }

    #[test]
    fn kron_with_identity(qi in 0..FIELDS.len(), z in 1usize..3, extra in 1usize..3, t in 1usize..4) {
        let f = ScalarDomain::for_order(FIELDS[qi]).unwrap();
        prop_assume!((FIELDS[qi] as usize) >= z + extra);
        let base = build_mds(z + extra, z, &f).unwrap();
        let g = kron_identity(&base, t).unwrap();
        prop_assert_eq!((g.k(), g.n()), (z * t, (z + extra) * t));
        prop_assert!(satisfied(&g, z * t));
    }
}

#[test]
fn alpha_extension_over_a_full_rank_window_code() {
    let f = ScalarDomain::field(5).unwrap();
    let base = kron_identity(&build_mds(3, 2, &f).unwrap(), 2).unwrap();
    assert!(satisfied(&base, 3));
    let g = extend_ccp_alpha(&base, 2, 3).unwrap();
    assert_eq!(g.n(), 12);
    assert!(satisfied(&g, 3));
}

#[test]
fn window_multiplier_is_least_common_multiple_ratio() {
    for n in 1..30 {
        for alpha in 1..=n {
            let z = window_multiplier(n, alpha);
            assert_eq!((z * n) % alpha, 0);
            assert!((1..z).all(|y| (y * n) % alpha != 0));
        }
    }
}

#[test]
fn ternary_length_eight_example_code() {
    let f = ScalarDomain::field(3).unwrap();
    let g = build_cyclic(8, &[2, 1, 0, 1, 1], &f).unwrap();
    assert_eq!(g.k(), 4);
    assert!(check_ccp_cyclic_shortcut(&g).unwrap().satisfied);
    assert!(satisfied(&g, 5));
    // Any k consecutive columns of a cyclic code are independent.
    assert!(satisfied(&g, 4));
}

#[test]
fn cyclic_search_only_returns_divisors() {
    use codedcache::codes::poly;
    for q in [2u32, 3, 4, 5] {
        let f = ScalarDomain::for_order(q).unwrap();
        for n in 2..10 {
            for k in 1..n {
                let found = search_cyclic_generators(n, k, &f, 1_000_000).unwrap();
                assert!(!found.inconclusive);
                for gp in found.generators {
                    assert_eq!(gp.len(), n - k + 1);
                    let (_, r) = poly::divmod_monic(&f, &poly::x_pow_minus_one(&f, n), &gp);
                    assert!(poly::trim(r).is_empty(), "q={q} n={n} k={k} gp={gp:?}");
                }
            }
        }
    }
}
