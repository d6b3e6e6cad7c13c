use proptest::prelude::*;

use lbound::bounds::{explicit_lower, explicit_upper, Height};
use lbound::extremal::ExtremalContext;
use lbound::kahan::ksum;
use lbound::lfunc::{load_descriptor, SelbergDescriptor};
use lbound::primes::{mangoldt, MangoldtTable};
use lbound::zeros::parse_zeros;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sandwich_holds(sigma in 0.51f64..1.0, delta in 0.3f64..6.0, x in -40.0f64..40.0) {
        let ctx = ExtremalContext::new(sigma, delta).unwrap();
        let f = ctx.f(x);
        let g = ctx.g_delta_real(x);
        let m = ctx.m_delta_real(x);
        prop_assert!(g.value <= f + g.tail_bound, "g {} > f {}", g.value, f);
        prop_assert!(f <= m.value + m.tail_bound, "f {} > m {}", f, m.value);
        prop_assert!(m.value >= -m.tail_bound);
    }

    #[test]
    fn zero_tables_round_trip(mut v in prop::collection::vec(0.1f64..1e4, 1..50)) {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let text: String = v.iter().map(|g| format!("{g:?}\n")).collect();
        let z = parse_zeros(&format!("# complete_to=5000\n{text}"), "prop").unwrap();
        prop_assert_eq!(&z.ordinates, &v);
        prop_assert!(z.complete().iter().all(|&g| g <= 5000.0));
    }

    #[test]
    fn compensated_sum_recovers_cancelled_terms(k in 1u32..1000, big in 1e15f64..1e17) {
        let mut terms = vec![big];
        terms.extend(std::iter::repeat(1.0).take(k as usize));
        terms.push(-big);
        prop_assert_eq!(ksum(terms), k as f64);
    }

    #[test]
    fn explicit_bounds_are_ordered(sigma in 0.505f64..0.995, ll in 15.8f64..80.0, lt in 4.0f64..14.0) {
        let z = SelbergDescriptor::zeta();
        let h = Height::synthetic(10f64.powf(lt), ll).unwrap();
        let up = explicit_upper(&z, sigma, &h, None).unwrap();
        let lo = explicit_lower(&z, sigma, &h, None).unwrap();
        prop_assert!(lo.total() <= up.total(), "{} > {}", lo.total(), up.total());
    }
}

#[test]
fn sieve_matches_trial_division() {
    let table = MangoldtTable::new(20_000).unwrap();
    for n in 1..=20_000u64 {
        assert_eq!(table.lambda(n), mangoldt(n), "n = {n}");
    }
    // psi(100) = log lcm(1..100).
    let lcm_log: f64 = [2f64.powi(6), 3f64.powi(4), 5f64.powi(2), 7f64.powi(2)]
        .iter()
        .map(|p| p.ln())
        .chain([11u32, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97].iter().map(|&p| (p as f64).ln()))
        .sum();
    assert!((table.psi(100.0).unwrap() - lcm_log).abs() < 1e-12);
}

#[test]
fn descriptor_sources() {
    let z = load_descriptor("zeta").unwrap();
    assert_eq!(z.invariants().unwrap(), SelbergDescriptor::zeta().invariants().unwrap());
    let d = load_descriptor("dirichlet:5:1").unwrap();
    let inv = d.invariants().unwrap();
    // Conductor 5, degree 1.
    assert!((inv.tau(2.0 * std::f64::consts::PI).unwrap() - 5.0).abs() < 1e-12);
    assert!(load_descriptor("dirichlet:2:1").is_err());
    assert!(load_descriptor("/no/such/descriptor.json").is_err());
}
