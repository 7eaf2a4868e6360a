//! Invariant suites and golden-table comparisons behind `chbox verify`.

use std::cell::RefCell;
use std::collections::BTreeMap;

use confined_hydrogen::analysis::{bessel, conjecture1_studies, critical_betas, find_crossing, CriticalValue};
use confined_hydrogen::exact::{
    decimal_exponent, float_from_int, float_to_rational, isolate_real_roots, parse_decimal, pow10, rat,
    sturm_count, working_bits_for_digits, ExactScalar, SymmetricExactMatrix,
};
use confined_hydrogen::model::{free_atom_energy, scaling_partner, DimensionlessProblem, PhysicalConfig, QuantumNumbers};
use confined_hydrogen::polysol::{recurrence_coefficients, truncation_polynomial, PolySolution, RecurrenceSpec};
use confined_hydrogen::rrm::{assemble, count_below, ritz_values_converged, BasisSpec, RitzSolver, RitzSpectrum};
use confined_hydrogen::{polysol, Result};
use dashu_ratio::RBig;

use crate::commands::spectrum;
use crate::config::RunConfig;
use crate::golden;
use crate::table::{Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    Exact,
    Model,
    Polysol,
    Rrm,
    Analysis,
    Golden,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Faults {
    pub tamper_s: bool,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub residual: Option<ExactScalar>,
    pub tolerance: Option<ExactScalar>,
    pub note: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn table(&self, digits: usize) -> Table {
        let mut t = Table::new(["suite", "check", "status", "residual", "tolerance", "note"]);
        let num = |x: &Option<ExactScalar>| x.as_ref().map_or(Cell::Empty, |v| Cell::exact(v, digits));
        for c in &self.checks {
            t.push(vec![
                Cell::Text(c.suite.into()),
                Cell::Text(c.name.clone()),
                Cell::Text(if c.passed { "pass" } else { "FAIL" }.into()),
                num(&c.residual),
                num(&c.tolerance),
                if c.note.is_empty() { Cell::Empty } else { Cell::Text(c.note.clone()) },
            ]);
        }
        t
    }
}

struct Suite<'a> {
    name: &'static str,
    checks: &'a mut Vec<Check>,
}

impl Suite<'_> {
    fn push(&mut self, name: String, passed: bool, residual: Option<ExactScalar>, tolerance: Option<ExactScalar>, note: String) {
        self.checks.push(Check { suite: self.name, name, passed, residual, tolerance, note });
    }

    /// Passes when `residual ≤ tolerance`.
    fn within(&mut self, name: impl Into<String>, residual: ExactScalar, tolerance: &ExactScalar) {
        let passed = residual <= *tolerance;
        self.push(name.into(), passed, Some(residual), Some(tolerance.clone()), String::new());
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool, note: impl Into<String>) {
        self.push(name.into(), ok, None, None, note.into());
    }

    /// Runs `f`; an error becomes a failed check carrying the message.
    fn attempt(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.push(name.into(), false, None, None, e.to_string());
        }
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    faults: Faults,
    roots: RefCell<BTreeMap<(u32, u32), Vec<PolySolution>>>,
    criticals: RefCell<BTreeMap<u32, Vec<CriticalValue>>>,
    free_box: RefCell<BTreeMap<u32, RitzSpectrum>>,
}

/// Levels kept of each free-box spectrum: enough for every published shell.
const FREE_BOX_LEVELS: usize = 7;

impl Ctx<'_> {
    fn roots(&self, l: u32, nu: u32) -> Result<Vec<PolySolution>> {
        if let Some(r) = self.roots.borrow().get(&(l, nu)) {
            return Ok(r.clone());
        }
        let r = polysol::polysol_roots(l, nu, self.cfg.digits)?;
        self.roots.borrow_mut().insert((l, nu), r.clone());
        Ok(r)
    }

    /// `β^c_{nl}` for `n = 0 … 3`.
    fn criticals(&self, l: u32) -> Result<Vec<CriticalValue>> {
        if let Some(c) = self.criticals.borrow().get(&l) {
            return Ok(c.clone());
        }
        let c = critical_betas(l, 3, self.cfg.digits, self.cfg.basis_size, self.cfg.precision_bits)?;
        self.criticals.borrow_mut().insert(l, c.clone());
        Ok(c)
    }

    fn free_box(&self, l: u32) -> Result<RitzSpectrum> {
        if let Some(s) = self.free_box.borrow().get(&l) {
            return Ok(s.clone());
        }
        let levels = FREE_BOX_LEVELS.min(self.cfg.basis_size);
        let s = spectrum(l, &RBig::ZERO, levels, self.cfg)?;
        self.free_box.borrow_mut().insert(l, s.clone());
        Ok(s)
    }

    fn solver(&self, l: u32, size: usize) -> Result<RitzSolver> {
        RitzSolver::new(&BasisSpec::new(l, RBig::ONE, size)?, self.cfg.digits, self.cfg.precision_bits)
    }
}

fn abs_diff(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    let d = a - b;
    if d < RBig::ZERO { -d } else { d }
}

/// Half a unit in the ninth significant digit of `reference`: the published
/// tables print ten digits, truncated rather than rounded.
fn golden_tolerance(reference: &ExactScalar) -> ExactScalar {
    let e = if *reference == RBig::ZERO { 0 } else { decimal_exponent(reference) };
    rat(5, 1) * pow10(e - 9)
}

fn golden_value(s: &str) -> ExactScalar {
    parse_decimal(s).expect("reference literals are well formed")
}

/// Deterministic pseudo-random integers in `[-m, m]`.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self, m: i64) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 33) % (2 * m as u64 + 1)) as i64 - m
    }
}

fn exact_suite(ctx: &Ctx, s: &mut Suite) {
    let digits = ctx.cfg.digits;
    for nu in [3u32, 6, 10] {
        let p = truncation_polynomial(RecurrenceSpec::new(0, nu));
        s.attempt(&format!("sturm nested intervals nu={nu}"), |s| {
            let zero = RBig::ZERO;
            let mut last = 0;
            let mut ok = true;
            for k in 0..8 {
                let hi = rat(1 << k, 1) + rat(1, 3);
                let c = sturm_count(&p, &zero, &hi)?;
                ok &= c >= last;
                last = c;
            }
            s.holds(format!("sturm nested intervals nu={nu}"), ok, format!("{last} roots below 128"));
            Ok(())
        });
        s.attempt(&format!("isolate matches sturm nu={nu}"), |s| {
            let (lo, hi) = (RBig::ZERO, rat(1000, 1));
            let count = sturm_count(&p, &lo, &hi)?;
            let roots = isolate_real_roots(&p, &lo, &hi, digits)?;
            let ascending = roots.windows(2).all(|w| w[0] < w[1]);
            s.holds(
                format!("isolate matches sturm nu={nu}"),
                roots.len() == count && ascending,
                format!("{} isolated / {count} counted", roots.len()),
            );
            let bits = 2 * working_bits_for_digits(digits);
            let dp = p.derivative();
            let mut worst = RBig::ZERO;
            for r in &roots {
                let x = r.clone().with_precision(bits).value();
                let (v, d) = (float_to_rational(&p.eval_float(&x)), float_to_rational(&dp.eval_float(&x)));
                let scale = abs_diff(&float_to_rational(&x), &RBig::ZERO).max(RBig::ONE);
                let step = abs_diff(&v, &RBig::ZERO) / (abs_diff(&d, &RBig::ZERO) * scale);
                worst = worst.max(step);
            }
            // A root rounded to `digits` digits is off by up to half a unit in the last place.
            s.within(format!("root residual at double precision nu={nu}"), worst, &pow10(1 - digits as i64));
            Ok(())
        });
    }
    s.attempt("inertia permutation invariance", |s| {
        let size = ctx.cfg.basis_size.min(12);
        let m = assemble(&BasisSpec::new(0, RBig::ONE, size)?).shifted(&rat(2, 1), &rat(30, 1));
        let base = m.inertia();
        let reversed: Vec<usize> = (0..size).rev().collect();
        let rotated: Vec<usize> = (0..size).map(|i| (i + 3) % size).collect();
        let ok = m.permuted(&reversed).inertia() == base && m.permuted(&rotated).inertia() == base;
        let note = format!("inertia: {} negative {} zero {} positive", base.negative, base.zero, base.positive);
        s.holds("inertia permutation invariance", ok, note);
        Ok(())
    });
    let mut rng = Lcg(0x5eed);
    let mut ok = true;
    for _ in 0..8 {
        let mut a = SymmetricExactMatrix::from_fn(4, |_, _| RBig::ZERO);
        for i in 0..4 {
            for j in i..4 {
                a.set(i, j, rat(rng.next(9), 1));
            }
        }
        // Unit upper-triangular times a nonzero diagonal: nonsingular.
        let d: Vec<Vec<ExactScalar>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => rat(rng.next(5), 1),
                        std::cmp::Ordering::Equal => rat(1 + rng.next(3).abs(), 1 + rng.next(2).abs()),
                        std::cmp::Ordering::Greater => RBig::ZERO,
                    })
                    .collect()
            })
            .collect();
        ok &= a.congruence(&d).inertia() == a.inertia();
    }
    s.holds("inertia congruence invariance (8 random 4x4)", ok, "");
}

fn model_suite(ctx: &Ctx, s: &mut Suite) {
    let mut ok = true;
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let (p, q) = (QuantumNumbers::new(a, 0), QuantumNumbers::new(0, b));
            if a != b {
                ok &= (free_atom_energy(p) > free_atom_energy(q)) == (a > b);
            }
        }
    }
    s.holds("free-atom ordering by n+l", ok, "");
    s.attempt("unit round trip", |s| {
        let phys = PhysicalConfig {
            electron_mass: rat(3, 2),
            hbar: rat(2, 3),
            coulomb_strength: rat(5, 4),
            box_radius: rat(7, 3),
        };
        let mut ok = true;
        for e in [rat(-1, 2), rat(13, 7), RBig::ZERO] {
            ok &= phys.dimensionless_energy(&phys.redimensionalize(&e)?)? == e;
        }
        s.holds("unit round trip", ok, "exact");
        Ok(())
    });
    let tol = pow10(-8);
    for beta in [rat(1, 2), rat(2, 1), rat(6, 1)] {
        s.attempt(&format!("scaling identity beta={beta}"), |s| {
            let (a, b, factor) = scaling_partner(0, &beta)?;
            let levels = 3.min(ctx.cfg.basis_size);
            let size = ctx.cfg.basis_size;
            let ea = RitzSolver::new(&BasisSpec::for_problem(&a, size)?, ctx.cfg.digits, ctx.cfg.precision_bits)?
                .spectrum(a.beta(), levels, Default::default())?;
            let eb = RitzSolver::new(&BasisSpec::for_problem(&b, size)?, ctx.cfg.digits, ctx.cfg.precision_bits)?
                .spectrum(b.beta(), levels, Default::default())?;
            for n in 0..levels {
                let lhs = float_to_rational(&ea.values[n]);
                let rhs = &factor * float_to_rational(&eb.values[n]);
                s.within(format!("scaling identity beta={beta} n={n}"), abs_diff(&lhs, &rhs), &tol);
            }
            Ok(())
        });
    }
    s.attempt("free-atom limit", |s| {
        let mut scaled = Vec::new();
        for beta in [4i64, 6, 8, 10] {
            let problem = DimensionlessProblem::new(0, rat(beta, 1))?;
            let e = ritz_values_converged(&problem, ctx.cfg.basis_size.max(5), 1, ctx.cfg.digits)?;
            scaled.push(float_to_rational(&e.values[0]) / rat(beta * beta, 1));
        }
        let half = rat(-1, 2);
        s.within("free-atom limit E00(1 10)/100 + 1/2", abs_diff(&scaled[3], &half), &rat(1, 1000));
        let ok = scaled.windows(2).all(|w| w[1] < w[0]) && scaled.iter().all(|v| *v > half);
        s.holds("free-atom approach decreasing", ok, "beta = 4 6 8 10");
        Ok(())
    });
}

fn polysol_suite(ctx: &Ctx, s: &mut Suite) {
    for l in 0..=5u32 {
        s.attempt(&format!("B_nu vanishes l={l}"), |s| {
            let mut ok = true;
            for nu in 0..=10u32 {
                ok &= recurrence_coefficients(RecurrenceSpec::new(l, nu), nu as i64)?.1.is_zero();
            }
            s.holds(format!("B_nu vanishes l={l}"), ok, "nu = 0..10");
            Ok(())
        });
    }
    const NU_MAX: u32 = 12;
    for l in 0..=3u32 {
        s.attempt(&format!("roots and nodes l={l}"), |s| {
            let mut ok = true;
            for nu in 0..=10u32 {
                let degree = truncation_polynomial(RecurrenceSpec::new(l, nu)).degree();
                let roots = ctx.roots(l, nu)?;
                ok &= degree == Some(nu as usize + 1) && roots.len() == nu as usize + 1;
                ok &= roots.iter().enumerate().all(|(i, r)| r.node_count == i);
            }
            s.holds(format!("roots and nodes l={l}"), ok, "nu = 0..10: nu+1 roots with i nodes");
            Ok(())
        });
        s.attempt(&format!("roots decrease in nu l={l}"), |s| {
            let mut ok = true;
            for n in 0..=3u32 {
                let mut last: Option<ExactScalar> = None;
                for nu in n..=NU_MAX {
                    let b = float_to_rational(&ctx.roots(l, nu)?[n as usize].beta_root);
                    ok &= last.as_ref().is_none_or(|prev| b < *prev);
                    last = Some(b);
                }
            }
            s.holds(format!("roots decrease in nu l={l}"), ok, format!("n = 0..3, nu up to {NU_MAX}"));
            Ok(())
        });
        s.attempt(&format!("roots exceed critical l={l}"), |s| {
            let criticals = ctx.criticals(l)?;
            let mut ok = true;
            for c in &criticals {
                for nu in c.n..=NU_MAX {
                    ok &= ctx.roots(l, nu)?[c.n as usize].beta_root > c.beta_c;
                }
            }
            s.holds(format!("roots exceed critical l={l}"), ok, format!("n = 0..3, nu up to {NU_MAX}"));
            Ok(())
        });
    }
    let tol = pow10(2 - ctx.cfg.digits as i64);
    let mut rng = Lcg(0x0de);
    for (l, nu) in [(0u32, 5u32), (1, 4), (2, 3), (3, 10)] {
        s.attempt(&format!("radial residual l={l} nu={nu}"), |s| {
            let mut worst = RBig::ZERO;
            for sol in ctx.roots(l, nu)? {
                let bits = sol.beta_root.precision();
                for _ in 0..20 {
                    let k = rng.next(499).abs() + 1;
                    let r = float_from_int(k, bits) / float_from_int(501, bits);
                    worst = worst.max(float_to_rational(&sol.radial_residual(&r)));
                }
            }
            s.within(format!("radial residual l={l} nu={nu}"), worst, &tol);
            Ok(())
        });
    }
}

fn rrm_suite(ctx: &Ctx, s: &mut Suite) {
    let size = ctx.cfg.basis_size;
    for l in 0..=3u32 {
        s.attempt(&format!("S positive definite l={l}"), |s| {
            let mut m = assemble(&BasisSpec::new(l, RBig::ONE, size)?).s;
            if ctx.faults.tamper_s {
                let v = -m.get(0, 0).clone();
                m.set(0, 0, v);
            }
            let i = m.inertia();
            let note = format!("inertia: {} negative {} zero {} positive", i.negative, i.zero, i.positive);
            s.holds(format!("S positive definite l={l}"), m.is_positive_definite(), note);
            Ok(())
        });
    }
    let slack = pow10(-12);
    for (l, beta) in [(0u32, RBig::ZERO), (0, rat(2, 1)), (1, rat(6, 1))] {
        s.attempt(&format!("variational monotonicity l={l} beta={beta}"), |s| {
            let mut worst = RBig::ZERO - RBig::ONE;
            let mut previous: Option<Vec<ExactScalar>> = None;
            for n_basis in 5..=size {
                let vals: Vec<ExactScalar> =
                    ctx.solver(l, n_basis)?.approximate_values(&beta, 3)?.iter().map(float_to_rational).collect();
                if let Some(prev) = &previous {
                    for (a, b) in vals.iter().zip(prev) {
                        worst = worst.max(a - b);
                    }
                }
                previous = Some(vals);
            }
            let worst = worst.max(RBig::ZERO);
            s.within(format!("variational monotonicity l={l} beta={beta} N=5..{size}"), worst, &slack);
            Ok(())
        });
    }
    for l in 0..=6u32 {
        s.attempt(&format!("free box vs Bessel l={l}"), |s| {
            let ritz = ctx.free_box(l)?;
            let count = golden::TABLE2.iter().filter(|((_, ll), _)| *ll == l).count();
            let oracle = bessel::box_levels(l, count, ctx.cfg.digits + 2)?;
            for (n, exact) in oracle.iter().enumerate() {
                let name = format!("free box vs Bessel n={n} l={l}");
                match ritz.values.get(n) {
                    Some(w) => {
                        let w = float_to_rational(w);
                        s.within(name.clone(), abs_diff(&w, exact), &golden_tolerance(exact));
                        // The series oracle itself is good to `digits + 2` digits.
                        let slack = exact * pow10(-(ctx.cfg.digits as i64) - 1);
                        s.holds(format!("{name} upper bound"), w >= exact - slack, "");
                    }
                    None => s.holds(name, false, format!("basis of {size} has no level {n}")),
                }
            }
            Ok(())
        });
    }
    let h = rat(1, 1_000_000);
    let tol = pow10(-6);
    for l in 0..=1u32 {
        s.attempt(&format!("Hellmann-Feynman l={l}"), |s| {
            let solver = ctx.solver(l, size)?;
            for beta in [rat(1, 2), rat(1, 1), rat(2, 1), rat(4, 1)] {
                let up = solver.approximate_values(&(&beta + &h), 2)?;
                let down = solver.approximate_values(&(&beta - &h), 2)?;
                for n in 0..2 {
                    let slope = (float_to_rational(&up[n]) - float_to_rational(&down[n])) / (rat(2, 1) * &h);
                    let inv_r = float_to_rational(&solver.vector(&beta, n)?.inverse_r);
                    s.within(format!("Hellmann-Feynman l={l} beta={beta} n={n}"), abs_diff(&slope, &-inv_r), &tol);
                }
            }
            Ok(())
        });
    }
    s.attempt("interlacing", |s| {
        let mats = assemble(&BasisSpec::new(0, RBig::ONE, size)?);
        let beta = rat(2, 1);
        let mut last = 0;
        let mut ok = true;
        for w in [-3i64, -1, 0, 10, 40, 100] {
            let c = count_below(&mats, &beta, &rat(w, 1))?;
            ok &= c >= last;
            last = c;
        }
        s.holds("count_below non-decreasing in W", ok, "beta = 2");
        let w = rat(-1, 4);
        let mut last = 0;
        let mut ok = true;
        for b in [0i64, 1, 2, 4, 8] {
            let c = count_below(&mats, &rat(b, 1), &w)?;
            ok &= c >= last;
            last = c;
        }
        s.holds("count_below non-decreasing in beta", ok, "W = -1/4");
        Ok(())
    });
}

fn analysis_suite(ctx: &Ctx, s: &mut Suite) {
    let tol = pow10(1 - ctx.cfg.digits as i64);
    for l in 0..=3u32 {
        s.attempt(&format!("critical vs Bessel l={l}"), |s| {
            let criticals = ctx.criticals(l)?;
            let oracle = bessel::critical_betas(l, criticals.len(), ctx.cfg.digits + 3)?;
            for (c, o) in criticals.iter().zip(&oracle) {
                let got = float_to_rational(&c.beta_c);
                s.within(format!("critical vs Bessel n={} l={l}", c.n), abs_diff(&got, o), &tol);
            }
            Ok(())
        });
    }
    let tol = pow10(-8);
    for l in 0..=2u32 {
        let beta_l = rat(((l + 1) * (l + 2)) as i64, 1);
        for n in 0..=2u32 {
            let name = format!("crossing n={n} l={l}");
            s.attempt(&name, |s| {
                let bracket = (&beta_l - RBig::ONE, &beta_l + RBig::ONE);
                let c = find_crossing(n, l, bracket, ctx.cfg.digits, ctx.cfg.basis_size)?;
                let got = float_to_rational(&c.beta_star);
                let note = format!(
                    "|D(beta*)| = {}",
                    confined_hydrogen::exact::format_rational(&float_to_rational(&c.residual), 3)
                );
                let passed = abs_diff(&got, &beta_l) <= tol;
                s.push(name.clone(), passed, Some(abs_diff(&got, &beta_l)), Some(tol.clone()), note);
                Ok(())
            });
        }
    }
    s.attempt("truncation gaps", |s| {
        let nus: Vec<u32> = (5..=30).collect();
        let studies = conjecture1_studies(0, &nus, ctx.cfg.digits, ctx.criticals(0)?)?;
        for st in &studies {
            s.holds(format!("gaps positive and decreasing n={}", st.n), st.rows.len() == nus.len(), "nu = 5..30");
            // Slope of ln(gap) against ln(nu) must not grow once nu >= 10.
            let points: Vec<(ExactScalar, ExactScalar)> = st
                .rows
                .iter()
                .filter(|r| r.nu >= 10)
                .map(|r| {
                    let x = float_from_int(r.nu, r.ln_gap.precision()).ln();
                    (float_to_rational(&x), float_to_rational(&r.ln_gap))
                })
                .collect();
            let slopes: Vec<ExactScalar> =
                points.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).collect();
            let bend = slopes.windows(2).map(|w| &w[1] - &w[0]).fold(RBig::ZERO, |m, d| m.max(d));
            s.within(format!("ln gap concave in ln nu n={}", st.n), bend, &RBig::ZERO);
        }
        let gap = float_to_rational(&studies[0].rows.last().expect("rows").gap);
        s.within("gap nu=30 n=0 vs 5.485e-4", abs_diff(&gap, &rat(5485, 10_000_000)), &pow10(-7));
        Ok(())
    });
}

fn golden_suite(ctx: &Ctx, s: &mut Suite) {
    s.attempt("table1", |s| {
        for (nu, row) in golden::TABLE1 {
            let roots = ctx.roots(0, nu)?;
            for (n, g) in row.iter().enumerate() {
                let r = golden_value(g);
                let got = float_to_rational(&roots[n].beta_root);
                s.within(format!("table1 nu={nu} n={n}"), abs_diff(&got, &r), &golden_tolerance(&r));
            }
        }
        Ok(())
    });
    for ((n, l), g) in golden::TABLE2 {
        let name = format!("table2 n={n} l={l}");
        s.attempt(&name, |s| {
            let r = golden_value(g);
            match ctx.free_box(l)?.values.get(n as usize) {
                Some(w) => s.within(name.clone(), abs_diff(&float_to_rational(w), &r), &golden_tolerance(&r)),
                None => s.holds(name.clone(), false, format!("basis of {} has no level {n}", ctx.cfg.basis_size)),
            }
            Ok(())
        });
    }
    s.attempt("table3", |s| {
        let mut rows = Vec::new();
        for (beta, l, golden_row) in golden::TABLE3 {
            let levels = golden_row.len().min(ctx.cfg.basis_size);
            let sp = spectrum(l, &rat(beta, 1), levels, ctx.cfg)?;
            let vals: Vec<ExactScalar> = sp.values.iter().map(float_to_rational).collect();
            for (n, g) in golden_row.iter().enumerate() {
                let name = format!("table3 beta={beta} n={n} l={l}");
                let r = golden_value(g);
                match vals.get(n) {
                    Some(v) => s.within(name, abs_diff(v, &r), &golden_tolerance(&r)),
                    None => s.holds(name, false, format!("basis of {} has no level {n}", ctx.cfg.basis_size)),
                }
            }
            rows.push((beta, l, vals));
        }
        let tol = pow10(-9);
        for (beta, l, exact) in [(2, 0, rat(-1, 2)), (6, 1, rat(-2, 1)), (12, 2, rat(-9, 2))] {
            let (_, _, vals) = rows.iter().find(|(b, ll, _)| *b == beta && *ll == l).expect("row");
            s.within(format!("table3 anchor E_0{l}({beta}) = {exact}"), abs_diff(&vals[0], &exact), &tol);
        }
        let tol = pow10(-8);
        for pair in rows.chunks(2) {
            let ((beta, l, low), (_, _, high)) = ((&pair[0].0, pair[0].1, &pair[0].2), (&pair[1].0, pair[1].1, &pair[1].2));
            for n in 0..3 {
                let name = format!("table3 pair E_{}{l} = E_{n}{} at beta={beta}", n + 1, l + 2);
                match (low.get(n + 1), high.get(n)) {
                    (Some(a), Some(b)) => s.within(name, abs_diff(a, b), &tol),
                    _ => s.holds(name, false, "basis too small"),
                }
            }
        }
        Ok(())
    });
    for (l, row) in golden::TABLE4.iter().enumerate() {
        let l = l as u32;
        s.attempt(&format!("table4 l={l}"), |s| {
            let criticals = ctx.criticals(l)?;
            for (c, g) in criticals.iter().zip(row) {
                let r = golden_value(g);
                let got = float_to_rational(&c.beta_c);
                s.within(format!("table4 n={} l={l}", c.n), abs_diff(&got, &r), &golden_tolerance(&r));
            }
            Ok(())
        });
    }
}

type SuiteFn = fn(&Ctx, &mut Suite);

/// Runs the selected suites (all when `only` is empty) in a fixed order.
/// Errors inside a suite become failed checks rather than aborting the run.
pub fn run(cfg: &RunConfig, faults: Faults, only: &[SuiteName]) -> Report {
    let ctx = Ctx {
        cfg,
        faults,
        roots: RefCell::default(),
        criticals: RefCell::default(),
        free_box: RefCell::default(),
    };
    let suites: [(SuiteName, &'static str, SuiteFn); 6] = [
        (SuiteName::Exact, "exact", exact_suite),
        (SuiteName::Model, "model", model_suite),
        (SuiteName::Polysol, "polysol", polysol_suite),
        (SuiteName::Rrm, "rrm", rrm_suite),
        (SuiteName::Analysis, "analysis", analysis_suite),
        (SuiteName::Golden, "golden", golden_suite),
    ];
    let mut report = Report::default();
    for (id, name, suite) in suites {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        suite(&ctx, &mut Suite { name, checks: &mut report.checks });
    }
    report
}
