use lagrange_core::momentmap::profile;
use lagrange_core::potential::{critical_summary, scan_conjecture, ParamRange, ScanGrid};
use lagrange_core::toric::{classify, Convexity, ToricTolerances};
use lagrange_core::{Component, Executor, MassParams};

#[test]
fn parallel_profile_matches_sequential_bitwise() {
    let par = MassParams::new(2.0, 1.0, 1.0).unwrap();
    let c = critical_summary(&par).unwrap().c0.unwrap() - 0.25;
    for comp in [Component::E, Component::M] {
        let a = profile(c, &par, comp, 40, &Executor::sequential()).unwrap();
        let b = profile(c, &par, comp, 40, &Executor::new(4)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn parallel_scan_preserves_row_order() {
    let grid = ScanGrid {
        m1: ParamRange { lo: 0.5, hi: 4.0, n: 5 },
        m2: ParamRange { lo: -1.0, hi: 3.0, n: 5 },
        eps: ParamRange { lo: 0.0, hi: 2.0, n: 3 },
    };
    let a = scan_conjecture(&grid, &Executor::sequential());
    let b = scan_conjecture(&grid, &Executor::new(3));
    assert_eq!(a, b);
    assert_eq!(a.len(), 75);
    // negative m2 is only defined for the Euler problem
    assert!(a.iter().any(|r| r.error.as_deref() == Some("RegimeUnsupported")));
}

#[test]
fn counterexample_row_in_scan() {
    let grid = ScanGrid {
        m1: ParamRange::single(80.0),
        m2: ParamRange::single(0.0),
        eps: ParamRange::single(8.0),
    };
    let row = &scan_conjecture(&grid, &Executor::sequential())[0];
    assert_eq!(row.holds, Some(false));
    assert_eq!(row.c_crit, -81.0);
    // m2 = 0 is the single-mass degeneration, not a counterexample proper
    assert!(!row.counterexample);
}

#[test]
fn euler_convexity_flips_with_sign_of_m2() {
    let tol = ToricTolerances::default();
    for (m2, want) in [(0.5, Convexity::ConcaveToric), (-0.25, Convexity::ConvexToric)] {
        let par = MassParams::euler(1.0, m2).unwrap();
        let p = profile(-3.0, &par, Component::E, 33, &Executor::new(0)).unwrap();
        let r = classify(&p, tol).unwrap();
        assert_eq!(r.convexity, want, "m2={m2}");
        assert!(r.monotone && r.volume > 0.0);
    }
}

#[test]
fn single_mass_profile_is_a_linear_triangle() {
    let par = MassParams::euler(1.0, 0.0).unwrap();
    let p = profile(-3.0, &par, Component::E, 64, &Executor::new(0)).unwrap();
    let r = classify(&p, ToricTolerances::default()).unwrap();
    assert_eq!(r.convexity, Convexity::Linear);
    assert!(r.monotone);
    let t1max = p.samples.last().unwrap().t1;
    let t2max = p.samples[0].t2;
    let tri = 0.5 * t1max * t2max;
    assert!((r.volume - tri).abs() < 1e-6 * tri);
}

#[test]
fn volume_is_refinement_stable() {
    let par = MassParams::euler(1.0, -0.25).unwrap();
    let v = |n| {
        let p = profile(-3.0, &par, Component::E, n, &Executor::new(0)).unwrap();
        lagrange_core::toric::volume(&p).unwrap()
    };
    let (a, b) = (v(32), v(64));
    assert!((a - b).abs() < 1e-6 * b, "{a} {b}");
}
