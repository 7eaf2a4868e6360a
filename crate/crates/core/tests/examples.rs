//! Worked examples for each public operation.

use confined_hydrogen::analysis::{conjecture1_study_with, critical_beta, critical_beta_oracle, energy_sweep, find_crossing, SweepOptions};
use confined_hydrogen::exact::{
    float_from_int, float_from_rational, float_to_rational, format_rational, isolate_real_roots, rat, sturm_count,
    BigFloat, ExactPolynomial, ExactScalar, SymmetricExactMatrix,
};
use confined_hydrogen::model::{free_atom_energy, scaling_partner, DimensionlessProblem, PhysicalConfig, QuantumNumbers};
use confined_hydrogen::polysol::{
    coefficients_at, node_count, polysol_energy, polysol_roots, recurrence_coefficients, truncation_polynomial,
    RecurrenceSpec,
};
use confined_hydrogen::rrm::{
    assemble, count_below, expectation_inverse_r, ritz_values, ritz_vector, BasisSpec, Certification,
};
use dashu_base::Abs;
use dashu_ratio::RBig;

fn fmt(x: &BigFloat, digits: usize) -> String {
    format_rational(&float_to_rational(x), digits)
}

/// Within half a unit of the ninth significant digit of a published value.
fn close9(x: &BigFloat, reference: &str) -> bool {
    let r = confined_hydrogen::exact::parse_decimal(reference).unwrap();
    let e = confined_hydrogen::exact::decimal_exponent(&r);
    (float_to_rational(x) - &r).abs() <= rat(5, 1) * confined_hydrogen::exact::pow10(e - 9)
}

fn c2_l0_nu1() -> ExactPolynomial {
    // 1 − 2β/3 + 2β²/27
    ExactPolynomial::new(vec![rat(1, 1), rat(-2, 3), rat(2, 27)])
}

#[test]
fn sturm_counts() {
    let x2m2 = ExactPolynomial::from_i64(&[-2, 0, 1]);
    assert_eq!(sturm_count(&x2m2, &rat(0, 1), &rat(2, 1)).unwrap(), 1);
    let x2p1 = ExactPolynomial::from_i64(&[1, 0, 1]);
    assert_eq!(sturm_count(&x2p1, &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
    assert_eq!(sturm_count(&c2_l0_nu1(), &rat(0, 1), &rat(10, 1)).unwrap(), 2);
}

#[test]
fn isolated_roots() {
    let x2m2 = ExactPolynomial::from_i64(&[-2, 0, 1]);
    let r = isolate_real_roots(&x2m2, &rat(0, 1), &rat(2, 1), 10).unwrap();
    assert_eq!(r.iter().map(|x| fmt(x, 10)).collect::<Vec<_>>(), ["1.414213562"]);
    let r = isolate_real_roots(&c2_l0_nu1(), &rat(0, 1), &rat(100, 1), 10).unwrap();
    assert_eq!(r.iter().map(|x| fmt(x, 10)).collect::<Vec<_>>(), ["1.901923789", "7.098076211"]);
    let c1 = truncation_polynomial(RecurrenceSpec::new(0, 0));
    let r = isolate_real_roots(&c1, &rat(0, 1), &rat(100, 1), 10).unwrap();
    assert_eq!(r.iter().map(|x| fmt(x, 10)).collect::<Vec<_>>(), ["2.000000000"]);
}

#[test]
fn inertia_examples() {
    let i = SymmetricExactMatrix::identity(2).inertia();
    assert_eq!((i.negative, i.zero, i.positive), (0, 0, 2));
    let i = SymmetricExactMatrix::diagonal(&[rat(-1, 1), rat(0, 1), rat(3, 1)]).inertia();
    assert_eq!((i.negative, i.zero, i.positive), (1, 1, 1));
    let m = assemble(&BasisSpec::new(0, RBig::ONE, 8).unwrap());
    assert_eq!(m.hamiltonian(&rat(2, 1)).inertia().negative, 1);
}

#[test]
fn unit_reduction() {
    let (p, scale) = PhysicalConfig::atomic_units(rat(1, 1)).to_dimensionless(0).unwrap();
    assert_eq!((p.beta().clone(), scale), (rat(1, 1), rat(1, 1)));
    let (p, scale) = PhysicalConfig::atomic_units(rat(2, 1)).to_dimensionless(0).unwrap();
    assert_eq!((p.beta().clone(), scale), (rat(2, 1), rat(1, 4)));
    let cfg = PhysicalConfig {
        electron_mass: rat(1, 1),
        hbar: rat(1, 1),
        coulomb_strength: rat(3, 1),
        box_radius: rat(4, 1),
    };
    let (p, scale) = cfg.to_dimensionless(0).unwrap();
    assert_eq!((p.beta().clone(), scale), (rat(12, 1), rat(1, 16)));
}

#[test]
fn scaling_partners() {
    let (a, b, f) = scaling_partner(0, &rat(1, 1)).unwrap();
    assert_eq!((a, f), (b, rat(1, 1)));
    for (l, beta, expected) in [(0u32, 2i64, "-0.5000000000"), (1, 6, "-2.000000000")] {
        let (a, b, f) = scaling_partner(l, &rat(beta, 1)).unwrap();
        let ea = ritz_values(&a, 40, 1, 10).unwrap();
        let eb = ritz_values(&b, 40, 1, 10).unwrap();
        assert_eq!(fmt(&ea.values[0], 10), expected);
        assert_eq!(format_rational(&(f * float_to_rational(&eb.values[0])), 10), expected);
    }
}

#[test]
fn free_atom_levels() {
    let e = |n, l| free_atom_energy(QuantumNumbers::new(n, l));
    assert_eq!(e(0, 0), rat(-1, 2));
    assert_eq!(e(1, 1), rat(-1, 18));
    assert_eq!(e(0, 2), e(2, 0));
}

#[test]
fn recurrence_and_truncation() {
    let (_, b) = recurrence_coefficients(RecurrenceSpec::new(0, 0), 0).unwrap();
    assert!(b.is_zero());
    let (a, b) = recurrence_coefficients(RecurrenceSpec::new(0, 1), 0).unwrap();
    assert_eq!(a, ExactPolynomial::new(vec![rat(1, 1), rat(-1, 9)]));
    assert_eq!(b, ExactPolynomial::new(vec![rat(0, 1), rat(1, 9)]));
    let (a, _) = recurrence_coefficients(RecurrenceSpec::new(0, 0), -1).unwrap();
    assert_eq!(a, ExactPolynomial::new(vec![rat(1, 1), rat(-1, 2)]));

    let c1 = truncation_polynomial(RecurrenceSpec::new(0, 0));
    assert_eq!(c1.eval(&rat(2, 1)), RBig::ZERO);
    assert_eq!(c1.degree(), Some(1));
    let c1 = truncation_polynomial(RecurrenceSpec::new(1, 0));
    assert_eq!(c1.eval(&rat(6, 1)), RBig::ZERO);
    assert_eq!(truncation_polynomial(RecurrenceSpec::new(0, 1)), c2_l0_nu1());
}

#[test]
fn truncation_roots() {
    let r5 = polysol_roots(0, 5, 10).unwrap();
    assert!(close9(&r5[0].beta_root, "1.846838425"));
    let r30 = polysol_roots(0, 30, 10).unwrap();
    assert!(close9(&r30[3].beta_root, "22.27087450"));
    let r0 = polysol_roots(0, 0, 10).unwrap();
    assert_eq!(r0.len(), 1);
    assert_eq!(fmt(&r0[0].beta_root, 10), "2.000000000");
    assert_eq!(fmt(&r0[0].energy, 10), "-0.5000000000");
    assert_eq!(r0[0].node_count, 0);
}

#[test]
fn node_counts() {
    let spec = RecurrenceSpec::new(0, 0);
    assert_eq!(node_count(&coefficients_at(spec, &rat(2, 1))).unwrap(), 0);
    // (9 ∓ 3√3)/2 bracketed by rationals on the same side of each root
    let spec = RecurrenceSpec::new(0, 1);
    assert_eq!(node_count(&coefficients_at(spec, &rat(19019, 10000))).unwrap(), 0);
    assert_eq!(node_count(&coefficients_at(spec, &rat(70981, 10000))).unwrap(), 1);
    assert_eq!(node_count(&[rat(3, 1)]).unwrap(), 0);
}

#[test]
fn closed_form_energies() {
    let e = |l, nu, beta| fmt(&polysol_energy(l, nu, &float_from_int(beta, 128)), 10);
    assert_eq!(e(0, 0, 2), "-0.5000000000");
    assert_eq!(e(1, 0, 6), "-2.000000000");
    assert_eq!(e(2, 0, 12), "-4.500000000");
}

#[test]
fn secular_matrix_entries() {
    let m = assemble(&BasisSpec::new(0, RBig::ONE, 3).unwrap());
    assert_eq!(m.s.get(0, 0), &rat(1, 30));
    assert_eq!(m.t.get(0, 0), &rat(1, 6));
    assert_eq!(m.c.get(0, 0), &rat(1, 12));
}

#[test]
fn counts_below() {
    for size in [1, 6, 15] {
        let m = assemble(&BasisSpec::new(0, RBig::ONE, size).unwrap());
        assert_eq!(count_below(&m, &rat(0, 1), &rat(0, 1)).unwrap(), 0);
    }
    let m = assemble(&BasisSpec::new(0, RBig::ONE, 8).unwrap());
    assert_eq!(count_below(&m, &rat(2, 1), &rat(0, 1)).unwrap(), 1);
    let m = assemble(&BasisSpec::new(0, RBig::ONE, 12).unwrap());
    assert_eq!(count_below(&m, &rat(0, 1), &rat(5, 1)).unwrap(), 1);
}

#[test]
fn ritz_value_examples() {
    let s = ritz_values(&DimensionlessProblem::new(0, RBig::ZERO).unwrap(), 30, 1, 10).unwrap();
    assert!(s.certified());
    assert!(close9(&s.values[0], "4.934802200"));
    let s = ritz_values(&DimensionlessProblem::new(0, rat(2, 1)).unwrap(), 40, 2, 10).unwrap();
    assert_eq!(fmt(&s.values[0], 10), "-0.5000000000");
    assert!(close9(&s.values[1], "13.31003662"));
    let s = ritz_values(&DimensionlessProblem::new(3, RBig::ZERO).unwrap(), 30, 1, 10).unwrap();
    assert!(close9(&s.values[0], "24.41559682"));
}

/// `xᵀ M y` in floating point.
fn form(m: &SymmetricExactMatrix, x: &[BigFloat], y: &[BigFloat], bits: usize) -> BigFloat {
    let rows = m.to_float_rows(bits);
    let mut acc = float_from_int(0, bits);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            acc += &x[i] * v * &y[j];
        }
    }
    acc
}

#[test]
fn ritz_vector_examples() {
    let v = ritz_vector(&DimensionlessProblem::new(0, RBig::ZERO).unwrap(), 1, 0, 10).unwrap();
    let c2 = float_to_rational(&(&v.coefficients[0] * &v.coefficients[0]));
    assert!((c2 - rat(30, 1)).abs() < rat(1, 1_000_000_000));

    let problem = DimensionlessProblem::new(0, rat(2, 1)).unwrap();
    let m = assemble(&BasisSpec::for_problem(&problem, 40).unwrap());
    let v0 = ritz_vector(&problem, 40, 0, 10).unwrap();
    let v1 = ritz_vector(&problem, 40, 1, 10).unwrap();
    let bits = v0.coefficients[0].precision();
    let h = m.hamiltonian(&rat(2, 1)).to_float_rows(bits);
    let s = m.s.to_float_rows(bits);
    let mut norm2 = float_from_int(0, bits);
    for i in 0..40 {
        let mut r = float_from_int(0, bits);
        for j in 0..40 {
            r += (&h[i][j] - &v0.value * &s[i][j]) * &v0.coefficients[j];
        }
        norm2 += &r * &r;
    }
    assert!(float_to_rational(&norm2) < rat(1, 10_000_000_000_000_000));
    let overlap = float_to_rational(&form(&m.s, &v0.coefficients, &v1.coefficients, bits));
    assert!(overlap.abs() < rat(1, 100_000_000));
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn inverse_r_expectations() {
    use std::f64::consts::PI;
    // Particle in a box: R = sin(πr)/r, so ⟨1/r⟩ = 2∫ sin²(πr)/r dr.
    let integrand = |r: f64| if r == 0.0 { 0.0 } else { 2.0 * (PI * r).sin().powi(2) / r };
    let oracle = simpson(integrand, 0.0, 1.0, 20_000);
    let free = expectation_inverse_r(&DimensionlessProblem::new(0, RBig::ZERO).unwrap(), 40, 0).unwrap();
    let free: f64 = fmt(&free, 15).parse().unwrap();
    assert!((free - oracle).abs() < 1e-8, "{free} vs {oracle}");

    // At β = 2 the ground state is (1 − r)e^{−r} exactly.
    let density = |r: f64, p: i32| r.powi(p) * (1.0 - r).powi(2) * (-2.0 * r).exp();
    let oracle = simpson(|r| density(r, 1), 0.0, 1.0, 20_000) / simpson(|r| density(r, 2), 0.0, 1.0, 20_000);
    let problem = DimensionlessProblem::new(0, rat(2, 1)).unwrap();
    let bound: f64 = fmt(&expectation_inverse_r(&problem, 40, 0).unwrap(), 15).parse().unwrap();
    assert!((bound - oracle).abs() < 1e-8, "{bound} vs {oracle}");

    let h = rat(1, 1_000_000);
    let e = |b: ExactScalar| {
        let s = ritz_values(&DimensionlessProblem::new(0, b).unwrap(), 40, 1, 10).unwrap();
        float_to_rational(&s.values[0])
    };
    let slope = (e(rat(2, 1) + &h) - e(rat(2, 1) - &h)) / (rat(2, 1) * &h);
    let slope: f64 = format_rational(&slope, 12).parse().unwrap();
    assert!((slope + bound).abs() < 1e-6);

    for level in 0..3 {
        let x = expectation_inverse_r(&DimensionlessProblem::new(1, rat(3, 1)).unwrap(), 20, level).unwrap();
        assert!(x > float_from_int(1, 64));
    }
}

#[test]
fn critical_coupling_examples() {
    for (n, l, golden) in [(0u32, 0u32, "1.835246330"), (1, 2, "19.03014419"), (3, 3, "58.54453721")] {
        let c = critical_beta(n, l, 10, 40).unwrap();
        assert!(close9(&c.beta_c, golden), "({n},{l}): {}", fmt(&c.beta_c, 10));
    }
}

#[test]
fn crossing_examples() {
    for (n, l, lo, hi, beta, shared) in [
        (0u32, 0u32, 1, 3, "2.000000000", "13.31003662"),
        (1, 0, 1, 3, "2.000000000", "37.25660174"),
        (0, 1, 5, 7, "6.000000000", "15.17434035"),
    ] {
        let c = find_crossing(n, l, (rat(lo, 1), rat(hi, 1)), 10, 40).unwrap();
        assert_eq!(fmt(&c.beta_star, 10), beta);
        assert!(close9(&c.shared_energy, shared), "{}", fmt(&c.shared_energy, 10));
    }
}

#[test]
fn gap_examples() {
    let gap_at = |n: u32, nu: u32| {
        let critical = critical_beta_oracle(n, 0, 10).unwrap();
        let study = conjecture1_study_with(0, n, &[nu], 10, critical).unwrap();
        float_to_rational(&study.rows[0].gap)
    };
    assert!((gap_at(0, 30) - rat(5485, 10_000_000)).abs() < rat(1, 10_000_000));
    assert!((gap_at(3, 5) - rat(20258, 10_000)).abs() < rat(1, 10_000));
}

#[test]
fn sweep_examples() {
    let options = SweepOptions { levels: 2, certification: Certification::Skip, marker_nu_max: 0, ..Default::default() };
    let t = energy_sweep(&[0, 2], &rat(2, 1), &rat(1, 1), options).unwrap();
    assert!(t.is_monotone());
    let e00 = &t.column(0, 0).unwrap().values;
    assert!(close9(&e00[0], "4.934802200"));
    let e02 = &t.column(0, 2).unwrap().values;
    assert!(close9(&e02[0], "16.60873095"));
    let e10 = &t.column(1, 0).unwrap().values;
    assert_eq!(fmt(&e10[2], 10), fmt(&e02[2], 10));
    let _ = float_from_rational(&rat(1, 3), 64);
}
