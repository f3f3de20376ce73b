use codedcache::caching::{
    placement, scheme_from_eq_subfile, simulate, CachingScheme, EquationSubfileMatrix, Placement, SchemeParams, SimulationConfig, Term,
};
use codedcache::codes::{build_identity_band, build_spc, GeneratorMatrix};
use codedcache::design::{codeword_matrix, resolvable_design};
use codedcache::gf::ScalarDomain;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use std::collections::BTreeSet;

fn scheme(g: &GeneratorMatrix, alpha: usize) -> CachingScheme {
    placement(resolvable_design(&codeword_matrix(g).unwrap()).unwrap(), alpha).unwrap()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn binary_spc_3_2() -> CachingScheme {
    scheme(&build_spc(2, &ScalarDomain::field(2).unwrap()).unwrap(), 3)
}

fn example_seven() -> EquationSubfileMatrix {
    EquationSubfileMatrix::from_rows(4, &[vec![3, 2, 0, 1, 0, 0], vec![4, 0, 2, 0, 1, 0], vec![0, 4, 3, 0, 0, 1], vec![0, 0, 0, 4, 3, 2]])
        .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Equal up to permuting rows, columns and the nonzero entry values.
/// Rows are compared as a set, which absorbs the row permutation.
fn isomorphic(a: &EquationSubfileMatrix, b: &EquationSubfileMatrix) -> bool {
    if (a.rows(), a.cols(), a.num_users()) != (b.rows(), b.cols(), b.num_users()) {
        return false;
    }
    let target: BTreeSet<Vec<u32>> = b.to_rows().into_iter().collect();
    for relabel in permutations(a.num_users()) {
        for cols in permutations(a.cols()) {
            let mapped: BTreeSet<Vec<u32>> = (0..a.rows())
                .map(|r| {
                    cols.iter()
                        .map(|&c| match a.get(r, c) {
                            0 => 0,
                            v => relabel[v as usize - 1] as u32 + 1,
                        })
                        .collect()
                })
                .collect();
            if mapped == target {
                return true;
            }
        }
    }
    false
}

#[test]
fn binary_spc_delivery_matches_the_four_displayed_equations() {
    let s = binary_spc_3_2();
    let plan = s.delivery(&[0; 6]).unwrap();
    let got: BTreeSet<BTreeSet<Term>> = plan.equations.iter().map(|e| e.terms.iter().copied().collect()).collect();
    let t = |user, subfile| Term { user, subfile };
    let expected: BTreeSet<BTreeSet<Term>> = [
        [t(0, 2), t(2, 1), t(5, 0)],
        [t(0, 3), t(3, 0), t(4, 1)],
        [t(1, 0), t(2, 3), t(4, 2)],
        [t(1, 1), t(3, 2), t(5, 3)],
    ]
    .into_iter()
    .map(|e| e.into_iter().collect())
    .collect();
    assert_eq!(got, expected);
    let report = simulate(&s, &plan.with_demands((0..6).collect()).unwrap(), &SimulationConfig { num_files: 6, subfile_bytes: 5, seed: 1 })
        .unwrap();
    assert!(report.all_exact);
    assert_eq!(report.rate, ratio(1, 1));
}

#[test]
fn exchanging_users_and_subfiles_gives_the_four_user_matrix() {
    let s = binary_spc_3_2();
    let m = EquationSubfileMatrix::from_plan(&s.delivery(&[0; 6]).unwrap());
    let exchanged = m.exchange_users_and_subfiles();
    assert!(exchanged.verify_validity().is_valid());
    assert!(isomorphic(&exchanged, &example_seven()));
    assert_eq!(exchanged.exchange_users_and_subfiles(), m);
}

#[test]
fn four_user_matrix_is_subset_placement_with_two_cached_per_subfile() {
    let (scheme, plan) = scheme_from_eq_subfile(&example_seven()).unwrap();
    let holders: BTreeSet<Vec<usize>> = (0..6).map(|j| (0..4).filter(|&u| scheme.caches(u, j)).collect()).collect();
    let all_pairs: BTreeSet<Vec<usize>> = (0..4).flat_map(|a| (a + 1..4).map(move |b| vec![a, b])).collect();
    assert_eq!(holders, all_pairs);
    let plan = plan.with_demands(vec![0, 1, 2, 3]).unwrap();
    let report = simulate(&scheme, &plan, &SimulationConfig { num_files: 4, subfile_bytes: 3, seed: 9 }).unwrap();
    assert!(report.all_exact);
    assert_eq!(report.rate, ratio(2, 3));
}

#[test]
fn double_transpose_reproduces_base_metrics() {
    let f3 = ScalarDomain::field(3).unwrap();
    let f2 = ScalarDomain::field(2).unwrap();
    for (g, alpha) in [(build_spc(3, &f3).unwrap(), 4), (build_identity_band(3, 2, &f2).unwrap(), 6), (build_spc(2, &f2).unwrap(), 3)] {
        let s = scheme(&g, alpha);
        let plan = s.delivery(&vec![0; s.num_users()]).unwrap();
        let m = EquationSubfileMatrix::from_plan(&plan);
        let (back, _) = scheme_from_eq_subfile(&m.transpose().transpose()).unwrap();
        let params = SchemeParams::from_code(g.n(), g.k(), g.q() as usize, alpha);
        let base = params.base_point();
        assert_eq!(back.rate(), base.rate);
        assert!((0..s.num_users()).all(|u| back.cache_fraction(u) == base.mem));
        assert_eq!(BigUint::from(back.num_subfiles()), base.subpacketization);
    }
}

#[test]
fn nine_five_binary_code_base_and_transposed_schemes() {
    let g = build_identity_band(3, 2, &ScalarDomain::field(2).unwrap()).unwrap();
    let s = scheme(&g, 6);
    assert_eq!((s.num_users(), s.subpacketization()), (18, 64));
    let demands: Vec<usize> = (0..18).map(|u| (u * 7) % 18).collect();
    let plan = s.delivery(&demands).unwrap();
    let cfg = SimulationConfig { num_files: 18, subfile_bytes: 8, seed: 5 };
    let base = simulate(&s, &plan, &cfg).unwrap();
    assert!(base.all_exact);
    assert_eq!(base.rate, ratio(3, 2));

    let transposed = EquationSubfileMatrix::from_plan(&plan).transpose();
    assert!(transposed.verify_validity().is_valid());
    let (ts, tplan) = scheme_from_eq_subfile(&transposed).unwrap();
    assert_eq!((ts.num_users(), ts.num_subfiles()), (18, 96));
    assert!((0..18).all(|u| ts.cache_fraction(u) == ratio(2, 3)));
    assert_eq!(ts.rate(), ratio(2, 3));
    let report = simulate(&ts, &tplan.with_demands(demands).unwrap(), &cfg).unwrap();
    assert!(report.all_exact);
    assert_eq!(report.rate, ratio(2, 3));
}
