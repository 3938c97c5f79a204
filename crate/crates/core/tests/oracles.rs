//! Fast algorithms against brute-force oracles and classical identities.

use kronstab::characters::{centralizer_order, frobenius_character, mn_character, sign};
use kronstab::coefficients::{
    kronecker, kronecker_oracle, kronecker_oracle_expansion, littlewood_richardson, lr_oracle_expansion,
    pieri_count, plethysm_expansion, plethysm_oracle_expansion, verify_schur_weyl_dim, SCHUR_WEYL_MAX_DIM,
    SCHUR_WEYL_MAX_SIZE,
};
use kronstab::partitions::{conjugate, gl_dim, sn_dim};
use kronstab::symfunc::{decompose_into_schur, power_to_schur, schur_polynomial, schur_to_power, SchurExpansion};
use kronstab::{Engine, Partition};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

fn partitions_up_to(n: usize) -> impl Iterator<Item = Partition> {
    (0..=n).flat_map(Partition::all)
}

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    prop::sample::select(Partition::all(n))
}

#[test]
fn mn_matches_frobenius_up_to_8() {
    for n in 0..=8 {
        for lambda in Partition::all(n) {
            for mu in Partition::all(n) {
                assert_eq!(
                    mn_character(&lambda, &mu).unwrap(),
                    frobenius_character(&lambda, &mu).unwrap(),
                    "χ[{lambda}]({mu})"
                );
            }
        }
    }
}

#[test]
fn row_orthogonality_up_to_10() {
    let engine = Engine::default();
    for n in 0..=10 {
        engine.character_table(n).unwrap().check_orthogonality().unwrap();
    }
}

#[test]
fn column_orthogonality_and_conjugation() {
    let engine = Engine::default();
    for n in 1..=9 {
        let table = engine.character_table(n).unwrap();
        let classes = table.classes();
        for (i, ci) in classes.iter().enumerate() {
            for (j, cj) in classes.iter().enumerate() {
                let sum: BigInt = table.rows().iter().map(|(_, row)| &row[i] * &row[j]).sum();
                let expected = if i == j { BigInt::from(centralizer_order(&ci.shape)) } else { BigInt::zero() };
                assert_eq!(sum, expected, "columns {} and {}", ci.shape, cj.shape);
            }
        }
        for (lambda, row) in table.rows() {
            let dual = table.row(&conjugate(lambda)).unwrap();
            for (k, c) in classes.iter().enumerate() {
                assert_eq!(dual[k], &row[k] * sign(&c.shape), "χ[{lambda}'] at {}", c.shape);
            }
        }
    }
}

#[test]
fn kronecker_symmetries_up_to_6() {
    let engine = Engine::default();
    for n in 0..=6 {
        let all = Partition::all(n);
        for l in &all {
            for m in &all {
                for v in &all {
                    let g = kronecker(&engine, l, m, v).unwrap();
                    assert_eq!(g, kronecker(&engine, m, l, v).unwrap());
                    assert_eq!(g, kronecker(&engine, l, v, m).unwrap());
                    assert_eq!(g, kronecker(&engine, v, m, l).unwrap());
                    assert_eq!(g, kronecker(&engine, &conjugate(l), &conjugate(m), v).unwrap());
                    assert_eq!(g, kronecker(&engine, &conjugate(l), m, &conjugate(v)).unwrap());
                }
            }
        }
    }
}

#[test]
fn kronecker_dimension_sum_up_to_7() {
    let engine = Engine::default();
    for n in 0..=7 {
        let all = Partition::all(n);
        for l in &all {
            for m in &all {
                let sum: BigUint = all
                    .iter()
                    .map(|v| kronecker(&engine, l, m, v).unwrap() * sn_dim(v))
                    .sum();
                assert_eq!(sum, sn_dim(l) * sn_dim(m), "λ = {l}, μ = {m}");
            }
        }
    }
}

#[test]
fn kronecker_matches_oracle_up_to_4() {
    let engine = Engine::default();
    for n in 0..=4 {
        let all = Partition::all(n);
        for l in &all {
            let table = kronecker_oracle_expansion(l, n.max(1), n.max(1)).unwrap();
            for m in &all {
                for v in &all {
                    let expected = table.get(&(m.clone(), v.clone())).cloned().unwrap_or_default();
                    assert_eq!(
                        BigInt::from(kronecker(&engine, l, m, v).unwrap()),
                        expected,
                        "g[{l}; {m}; {v}]"
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kronecker_matches_oracle_at_5(l in partition_of(5), m in partition_of(5), v in partition_of(5)) {
        let engine = Engine::default();
        prop_assert_eq!(kronecker(&engine, &l, &m, &v).unwrap(), kronecker_oracle(&l, &m, &v).unwrap());
    }
}

#[test]
fn lr_matches_oracle_up_to_8() {
    for total in 0..=8 {
        for a in 0..=total {
            for mu in Partition::all(a) {
                for nu in Partition::all(total - a) {
                    let expansion = lr_oracle_expansion(&mu, &nu).unwrap();
                    for lambda in Partition::all(total) {
                        assert_eq!(
                            BigInt::from(littlewood_richardson(&lambda, &mu, &nu).unwrap()),
                            expansion.coeff(&lambda),
                            "c[{lambda}; {mu}, {nu}]"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn plethysm_matches_oracle_up_to_degree_8() {
    let engine = Engine::default();
    for a in 1..=8 {
        for b in 1..=8 / a {
            for lambda in Partition::all(a) {
                for mu in Partition::all(b) {
                    let fast = plethysm_expansion(&engine, &lambda, &mu).unwrap();
                    let oracle = plethysm_oracle_expansion(&lambda, &mu, a * b).unwrap();
                    for nu in Partition::all(a * b) {
                        assert_eq!(fast.coeff(&nu), oracle.coeff(&nu), "a[{nu}; {lambda}, {mu}]");
                    }
                }
            }
        }
    }
}

#[test]
fn lr_pieri_rule() {
    for total in 0..=8 {
        for k in 0..=total {
            for mu in Partition::all(total - k) {
                for lambda in Partition::all(total) {
                    let c = littlewood_richardson(&lambda, &mu, &Partition::row(k)).unwrap();
                    assert_eq!(c, BigUint::from(pieri_count(&lambda, &mu, k)), "c[{lambda}; {mu}, ({k})]");
                }
            }
        }
    }
}

#[test]
fn lr_symmetry_and_conjugation() {
    for total in 0..=7 {
        for a in 0..=total {
            for mu in Partition::all(a) {
                for nu in Partition::all(total - a) {
                    for lambda in Partition::all(total) {
                        let c = littlewood_richardson(&lambda, &mu, &nu).unwrap();
                        assert_eq!(c, littlewood_richardson(&lambda, &nu, &mu).unwrap());
                        assert_eq!(
                            c,
                            littlewood_richardson(&conjugate(&lambda), &conjugate(&mu), &conjugate(&nu)).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn schur_weyl_dimension_over_whole_domain() {
    let engine = Engine::default();
    for lambda in partitions_up_to(SCHUR_WEYL_MAX_SIZE) {
        for a in 1..=SCHUR_WEYL_MAX_DIM {
            for b in 1..=SCHUR_WEYL_MAX_DIM {
                let report = verify_schur_weyl_dim(&engine, &lambda, a, b).unwrap();
                assert!(report.equal, "λ = {lambda}, a = {a}, b = {b}: {} vs {}", report.lhs, report.rhs);
            }
        }
    }
}

/// Semistandard tableaux of shape λ with entries `1..=k`, counted cell by cell.
fn count_ssyt(lambda: &Partition, k: usize) -> u64 {
    fn fill(shape: &[usize], k: usize, grid: &mut Vec<Vec<usize>>, r: usize, c: usize) -> u64 {
        if r == shape.len() {
            return 1;
        }
        if c == shape[r] {
            return fill(shape, k, grid, r + 1, 0);
        }
        let low = [
            if c > 0 { grid[r][c - 1] } else { 1 },
            if r > 0 { grid[r - 1][c] + 1 } else { 1 },
        ]
        .into_iter()
        .max()
        .unwrap();
        let mut total = 0;
        for v in low..=k {
            grid[r][c] = v;
            total += fill(shape, k, grid, r, c + 1);
        }
        total
    }
    let shape = lambda.parts();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    fill(shape, k, &mut grid, 0, 0)
}

#[test]
fn gl_dim_counts_tableaux() {
    for lambda in partitions_up_to(7) {
        for k in 0..=4 {
            let expected = BigUint::from(count_ssyt(&lambda, k));
            assert_eq!(gl_dim(&lambda, k), expected, "dim S_{lambda}(C^{k})");
            assert_eq!(
                schur_polynomial(&lambda, k).eval_ones(),
                BigInt::from(expected),
                "s_{lambda}(1^{k})"
            );
        }
    }
}

#[test]
fn schur_power_round_trip() {
    let engine = Engine::default();
    for lambda in partitions_up_to(8) {
        let back = power_to_schur(&engine, &schur_to_power(&engine, &lambda).unwrap()).unwrap();
        assert_eq!(back, SchurExpansion::single(lambda));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_polynomials_are_symmetric_and_decompose(n in 0usize..=6, k in 1usize..=4, seed in any::<prop::sample::Index>()) {
        let all = Partition::all(n);
        let lambda = seed.get(&all).clone();
        let s = schur_polynomial(&lambda, k);
        if lambda.len() > k {
            prop_assert!(s.is_zero());
        } else {
            prop_assert!(s.is_symmetric());
            prop_assert_eq!(s.homogeneous_degree(), Some(n));
            prop_assert_eq!(decompose_into_schur(&s, k).unwrap(), SchurExpansion::single(lambda));
        }
    }

    #[test]
    fn conjugation_is_an_involution(n in 0usize..=12, seed in any::<prop::sample::Index>()) {
        let all = Partition::all(n);
        let lambda = seed.get(&all);
        let dual = conjugate(lambda);
        prop_assert_eq!(dual.size(), n);
        prop_assert_eq!(dual.len(), lambda.part(0));
        prop_assert_eq!(&conjugate(&dual), lambda);
        prop_assert_eq!(sn_dim(&dual), sn_dim(lambda));
    }

    #[test]
    fn scale_add_is_rowwise(a in 0usize..=6, b in 0usize..=6, d in 0usize..=5, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let alpha = i.get(&Partition::all(a)).clone();
        let lambda = j.get(&Partition::all(b)).clone();
        let s = kronstab::partitions::scale_add(&alpha, d, &lambda);
        prop_assert_eq!(s.size(), d * a + b);
        for r in 0..s.len().max(1) {
            prop_assert_eq!(s.part(r), d * alpha.part(r) + lambda.part(r));
        }
        prop_assert_eq!(kronstab::partitions::scale_add(&alpha, 0, &lambda), lambda);
    }

    #[test]
    fn characters_at_identity_are_dimensions(n in 0usize..=14, seed in any::<prop::sample::Index>()) {
        let lambda = seed.get(&Partition::all(n)).clone();
        let identity = Partition::column(n);
        prop_assert_eq!(mn_character(&lambda, &identity).unwrap(), BigInt::from(sn_dim(&lambda)));
    }
}
