//! Exact oracles against the closed-form bounds they are meant to bracket.

use jscc_bounds::bounds::{d_asym, psi_lower_at_weight, psi_lower_finite_n};
use jscc_bounds::broadcast::{fp_binary, g_bsc, rbar_binary};
use jscc_bounds::oracles::{
    binomial_gamma_exact, converse_search_gq, coupling_distance_exact, coupling_within_bound,
    fp_symmetric_search, p2p_bruteforce, p2p_bruteforce_float, parse_rational, rational_to_f64,
    rbar_grid_search, spherical_psi_bruteforce, BigRational, EncoderTable, EnumOptions,
};
use jscc_bounds::SystemParams;

fn rat(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

#[test]
fn exact_and_float_enumerations_agree() {
    for (m, n, delta) in [(1, 3, "1/10"), (2, 3, "1/4"), (2, 4, "1/10")] {
        let exact = p2p_bruteforce(m, n, &rat(delta), &EnumOptions::default()).unwrap();
        let float =
            p2p_bruteforce_float(m, n, rational_to_f64(&rat(delta)), &EnumOptions::default())
                .unwrap();
        assert!((exact.value.to_f64() - float.value.to_f64()).abs() < 1e-12);
        assert!(exact.value.is_exact());
    }
}

#[test]
fn optimum_beats_repetition() {
    let delta = rat("1/10");
    let best = p2p_bruteforce(1, 3, &delta, &EnumOptions::default()).unwrap();
    assert_eq!(best.witness, EncoderTable::repetition(1, 3).unwrap());
    let coded = p2p_bruteforce(2, 4, &delta, &EnumOptions::default()).unwrap();
    assert!(coded.value.to_f64() < rational_to_f64(&delta));
}

#[test]
fn sphere_lower_bound_holds_on_solvable_instances() {
    for &(n, m) in &[(4u32, 2u32), (4, 1), (3, 2), (3, 3), (2, 1)] {
        let rho = n as f64 / m as f64;
        for w in 0..=n {
            let oracle = spherical_psi_bruteforce(m, n, w, None, &EnumOptions::default()).unwrap();
            let lower = psi_lower_at_weight(w as u64, n as u64, rho).unwrap();
            assert!(
                oracle.value.to_f64() >= lower - 1e-12,
                "(n={n}, m={m}, w={w}): {} < {lower}",
                oracle.value
            );
        }
    }
    // the offset form centres the weight at n delta
    let p = SystemParams::with_source_len(4, 2, 0.25).unwrap();
    for k in -1..=3 {
        let oracle =
            spherical_psi_bruteforce(2, 4, (1 + k) as u32, None, &EnumOptions::default()).unwrap();
        assert!(oracle.value.to_f64() >= psi_lower_finite_n(k, &p).unwrap() - 1e-12);
    }
}

#[test]
fn brute_force_respects_asymptotic_converse() {
    for (m, n) in [(1u32, 2u32), (2, 3), (1, 4), (2, 4)] {
        for delta in ["1/10", "1/5", "1/4"] {
            let r = p2p_bruteforce(m, n, &rat(delta), &EnumOptions::default()).unwrap();
            let bound = d_asym(n as f64 / m as f64, rational_to_f64(&rat(delta))).unwrap();
            assert!(r.value.to_f64() >= bound - 1e-12);
        }
    }
}

#[test]
fn binomial_ratio_below_half_for_positive_skew() {
    // delta < 1/2 puts more mass just above the mean than just below
    for k in 1..=5 {
        let g = binomial_gamma_exact(100, &rat("1/5"), k).unwrap();
        assert!(rational_to_f64(&g.gamma) < 0.0, "k = {k}");
    }
}

#[test]
fn coupling_grows_like_square_root() {
    let d1 = rat("1/10");
    let d2 = rat("1/5");
    let small = rational_to_f64(&coupling_distance_exact(100, &d1, &d2).unwrap());
    let large = rational_to_f64(&coupling_distance_exact(400, &d1, &d2).unwrap());
    assert!((large / small - 2.0).abs() < 0.1, "{small} {large}");
    let v = coupling_distance_exact(1000, &d1, &d2).unwrap();
    assert_eq!(coupling_within_bound(1000, &d2, &v), (true, true));
}

#[test]
fn searches_approach_closed_forms_from_the_feasible_side() {
    for &(p, q, d) in &[(0.5, 0.2, 0.1), (0.35, 0.05, 0.3), (0.2, 0.4, 0.05)] {
        let closed = rbar_binary(p, q, d).unwrap();
        let searched = rbar_grid_search(p, q, d, 200).unwrap();
        assert!((closed - searched).abs() < 1e-4, "{closed} {searched}");
    }
    for &(d1, d2, t) in &[(0.11, 0.2, 0.1), (0.3, 0.05, 0.05)] {
        let found = converse_search_gq(d1, d2, t, 5000, 3).unwrap();
        assert!(found <= g_bsc(d1, d2, t).unwrap() + 1e-6);
    }
    let fp = fp_symmetric_search(0.5, 0.25, 0.2, 2000).unwrap();
    assert!((fp - fp_binary(0.5, 0.25, 0.2).unwrap()).abs() < 1e-6);
}
