use num_bigint::BigInt;
use proptest::prelude::*;
use treecoeff::enumerate::{
    counting_lemma_bruteforce, counting_lemma_closed, shuffle_sign_sum_bruteforce, Caps, SignSumVariant,
};
use treecoeff::numbers::{binomial, stirling_first_signed, stirling_second};
use treecoeff::treepoly::xe_tables;
use treecoeff::Rational;

#[test]
fn sign_sum_tables_match_brute_force() {
    let caps = Caps::default();
    for variant in SignSumVariant::ALL {
        for total in 0..=10u32 {
            for n in 0..=total {
                let m = total - n;
                let brute = shuffle_sign_sum_bruteforce(variant, n, m, &caps).unwrap();
                let entry = xe_tables(variant, n, m);
                assert_eq!(entry.x, BigInt::from(brute), "{variant} n={n} m={m}");
                let count = binomial((n + m) as i64, n as i64);
                assert_eq!(entry.e * Rational::from(count), Rational::from(brute), "{variant} E n={n} m={m}");
            }
        }
    }
}

#[test]
fn counting_identity_matches_brute_force() {
    let caps = Caps::default();
    for n in 1..=6 {
        for s in 0..=4 {
            assert_eq!(
                counting_lemma_bruteforce(n, s, &caps).unwrap(),
                counting_lemma_closed(n, s).unwrap(),
                "n={n} s={s}"
            );
        }
    }
    assert_eq!(counting_lemma_closed(4, 3).unwrap(), -16);
}

#[test]
fn stirling_duality_through_ten() {
    // Σ_j S1(n,j) S2(j,m) = δ_{nm} and the reverse composition.
    for n in 0..=10u32 {
        for m in 0..=10u32 {
            let delta = BigInt::from((n == m) as i32);
            let a: BigInt = (0..=n).map(|j| stirling_first_signed(n, j).unwrap() * stirling_second(j, m)).sum();
            let b: BigInt = (m..=n).map(|j| stirling_second(n, j) * stirling_first_signed(j, m).unwrap()).sum();
            assert_eq!(a, delta, "n={n} m={m}");
            assert_eq!(b, delta, "n={n} m={m}");
        }
    }
}

/// Surjections from an `m`-set onto an `n`-set, counted directly.
fn surjections(m: u32, n: u32) -> u64 {
    if n == 0 {
        return (m == 0) as u64;
    }
    let mut count = 0;
    let total = (n as u64).pow(m);
    for code in 0..total {
        let mut hit = vec![false; n as usize];
        let mut c = code;
        for _ in 0..m {
            hit[(c % n as u64) as usize] = true;
            c /= n as u64;
        }
        count += hit.iter().all(|&h| h) as u64;
    }
    count
}

#[test]
fn surjection_counts() {
    for m in 0..=6 {
        for n in 0..=6 {
            let expected: BigInt = (1..=n as u64).product::<u64>() * stirling_second(m, n);
            assert_eq!(BigInt::from(surjections(m, n)), expected, "m={m} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn tables_are_reproducible(n in 0u32..6, m in 0u32..6) {
        for v in SignSumVariant::ALL {
            prop_assert_eq!(xe_tables(v, n, m), xe_tables(v, n, m));
        }
    }

    #[test]
    fn caps_are_enforced(extra in 1u32..4) {
        let caps = Caps { shuffle: 6, ..Caps::default() };
        prop_assert!(shuffle_sign_sum_bruteforce(SignSumVariant::X0, 3, 3 + extra, &caps).is_err());
    }
}
