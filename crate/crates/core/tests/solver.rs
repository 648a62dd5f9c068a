mod common;

use common::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use wallach_core::einstein::{closed_forms_t_family, default_width, solve, t_family_params};
use wallach_core::omega::eval_q;
use wallach_core::wallach::{homothetic, AParams, MetricTriple};

fn params(a: &[BigRational; 3]) -> AParams {
    AParams::new(a[0].clone(), a[1].clone(), a[2].clone()).unwrap()
}

#[test]
fn rational_solutions_satisfy_the_direct_equations() {
    for t in 2..=6u64 {
        let a = t_family_params(t).unwrap();
        for x in closed_forms_t_family(t).unwrap() {
            if let Some(x) = x.as_rationals() {
                assert_eq!(eq_direct(a.as_array(), &x), [BigRational::zero(), BigRational::zero()]);
            }
        }
    }
    let a = [q(1, 6), q(1, 6), q(1, 6)];
    for x in [[1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 1, 2]] {
        let x = x.map(|v| q(v, 1));
        assert!(eq_direct(&a, &x).iter().all(Zero::is_zero));
    }
}

#[test]
fn exact_solver_output_satisfies_the_direct_equations() {
    let a = AParams::from_ratios([(1, 6); 3]).unwrap();
    let sols = solve(&a, &default_width()).unwrap();
    assert_eq!(sols.len(), 4);
    for s in sols {
        let x = s.metric.as_rationals().expect("standard point has rational metrics");
        assert!(eq_direct(a.as_array(), &x).iter().all(Zero::is_zero));
    }
}

#[test]
fn zero_family_carries_a_double_metric() {
    for t in 2..=4u64 {
        let a = t_family_params(t).unwrap();
        assert!(eval_q(&a).is_zero());
        let sols = solve(&a, &default_width()).unwrap();
        assert!(sols.iter().any(|s| s.multiplicity >= 2), "t = {t}: {sols:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn solutions_are_simple_off_the_surface(a in a_triple()) {
        let p = params(&a);
        prop_assume!(!eval_q(&p).is_zero());
        let sols = solve(&p, &default_width()).unwrap();
        prop_assert!(sols.iter().all(|s| s.multiplicity == 1));
        prop_assert!(!sols.is_empty() && sols.len() <= 4);
    }

    #[test]
    fn solving_commutes_with_permutation(a in a_triple(), which in 0usize..6) {
        let p = params(&a);
        prop_assume!(!eval_q(&p).is_zero());
        let perm = PERMS[which];
        let w = default_width();
        let base = solve(&p, &w).unwrap();
        let moved = solve(&p.permuted(perm), &w).unwrap();
        prop_assert_eq!(base.len(), moved.len());
        // ratios of two enclosures are wider than either
        let loose = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(20));
        for s in &base {
            let image: MetricTriple = s.metric.permuted(perm);
            prop_assert!(moved.iter().any(|m| homothetic(&m.metric, &image, &loose).unwrap()));
        }
    }
}
