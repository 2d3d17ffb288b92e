//! End-to-end reproduction of the reference results: every headline fact is
//! recomputed from the built-in objects and reported with its measured
//! deviation.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{clock_shift_representation, pauli_representation};
use crate::hadamard::{fourier, h_alpha, validate_hadamard, HadamardMatrix};
use crate::linalg::{ComplexMatrix, Tolerance, C64};
use crate::obstruction::{
    adjoint_closure_obstruction, monomializes, mu_power_commutator,
    mu_power_commutator_obstruction, NonzeroThreshold, Verdict, Witness,
};
use crate::properties;
use crate::qls::{from_classical, qls_from_hadamard, validate_qls, ClassicalLatinSquare};
use crate::ueb::{hadamard_basis, nice_error_basis, qsm, sm, validate_ueb};

pub const CHECK_NAMES: [&str; 10] = [
    "qls-example",
    "M-from-qsm",
    "M-is-UEB",
    "commutator",
    "Y-monomialization",
    "adjoint-closure",
    "hadamard-qls",
    "containments",
    "properties",
    "negative-controls",
];

/// The reference objects the suite starts from. Replace a field to check
/// that the suite notices.
#[derive(Debug, Clone, PartialEq)]
pub struct ReproInputs {
    pub qls_rows: Vec<ComplexMatrix>,
    pub hadamard: ComplexMatrix,
    pub basis_m: Vec<ComplexMatrix>,
    pub matrix_y: ComplexMatrix,
}

impl Default for ReproInputs {
    fn default() -> Self {
        Self {
            qls_rows: catalog::example_qls().into_rows(),
            hadamard: catalog::example_hadamard().into_matrix(),
            basis_m: catalog::basis_m_listing(),
            matrix_y: catalog::matrix_y(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproConfig {
    pub tol: Tolerance,
    pub theta: NonzeroThreshold,
    pub seed: u64,
    pub trials: usize,
    /// Run only the named check (or every `properties/...` line for `properties`).
    pub only: Option<String>,
}

impl Default for ReproConfig {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            theta: NonzeroThreshold::default(),
            seed: 2024,
            trials: 100,
            only: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub reference: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproReport {
    pub checks: Vec<Check>,
}

impl ReproReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for ReproReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<32} measured {:.3e} (tolerance {:.0e})  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance,
                c.detail
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

fn check(
    name: &str,
    reference: &'static str,
    passed: bool,
    measured: f64,
    tolerance: f64,
    detail: impl Into<String>,
) -> Check {
    Check {
        name: name.to_string(),
        reference,
        passed,
        measured,
        tolerance,
        detail: detail.into(),
    }
}

/// Worst deviation of the square's row matrices and column matrices from unitarity.
fn qls_defect(rows: &[ComplexMatrix]) -> f64 {
    let n = rows.len();
    let row_defect = rows
        .iter()
        .map(|q| q.unitarity_defect())
        .fold(0.0, f64::max);
    let col_defect = (0..n)
        .map(|j| {
            let cols: Vec<Vec<C64>> = rows.iter().map(|q| q.column(j)).collect();
            ComplexMatrix::from_columns(&cols)
                .map(|m| m.unitarity_defect())
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);
    row_defect.max(col_defect)
}

/// Worst deviation of the family from `Tr(A_k†∘A_l) = n·δ_kl` and from unitarity.
fn ueb_defect(elements: &[ComplexMatrix]) -> f64 {
    let n = elements.first().map_or(0, ComplexMatrix::n) as f64;
    let mut worst: f64 = elements
        .iter()
        .map(|e| e.unitarity_defect())
        .fold(0.0, f64::max);
    for (a, ea) in elements.iter().enumerate() {
        for (b, eb) in elements.iter().enumerate().skip(a) {
            let inner = ea.hs_inner(eb).unwrap_or(C64::new(f64::INFINITY, 0.0));
            let target = if a == b { n } else { 0.0 };
            worst = worst.max((inner - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

fn max_family_diff(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            if x.n() == y.n() {
                x.max_abs_diff(y)
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max)
}

fn check_qls_example(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    let measured = qls_defect(&inp.qls_rows);
    let result = validate_qls(inp.qls_rows.clone(), cfg.tol);
    let detail = match &result {
        Ok(_) => "rows and columns orthonormal".to_string(),
        Err(e) => e.to_string(),
    };
    check(
        "qls-example",
        "order-4 quantum Latin square",
        result.is_ok(),
        measured,
        cfg.tol.eps(),
        detail,
    )
}

fn check_m_from_qsm(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    const TOL: f64 = 1e-12;
    let built = validate_qls(inp.qls_rows.clone(), cfg.tol).and_then(|q| {
        let h = validate_hadamard(inp.hadamard.clone(), cfg.tol)?;
        qsm(&q, &vec![h; q.n()], cfg.tol)
    });
    match built {
        Ok(b) => {
            let d = max_family_diff(b.elements(), &inp.basis_m);
            check(
                "M-from-qsm",
                "basis M as the QSM basis of the example square",
                d <= TOL,
                d,
                TOL,
                "max entry deviation over 16 elements",
            )
        }
        Err(e) => check(
            "M-from-qsm",
            "basis M as the QSM basis of the example square",
            false,
            f64::INFINITY,
            TOL,
            e.to_string(),
        ),
    }
}

fn check_m_is_ueb(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    let measured = ueb_defect(&inp.basis_m);
    let result = validate_ueb(inp.basis_m.clone(), cfg.tol);
    let detail = match &result {
        Ok(_) => "16 unitaries, 120 orthogonal pairs".to_string(),
        Err(e) => e.to_string(),
    };
    check(
        "M-is-UEB",
        "basis M listed entrywise",
        result.is_ok(),
        measured,
        cfg.tol.eps(),
        detail,
    )
}

/// `(12168/15625)·[[−i,0,0,2],[0,0,0,0],[0,0,0,0],[−2,0,0,i]]`.
pub fn expected_commutator() -> ComplexMatrix {
    let k = 12168.0 / 15625.0;
    let z = C64::new(0.0, 0.0);
    ComplexMatrix::from_rows(&[
        [C64::new(0.0, -k), z, z, C64::new(2.0 * k, 0.0)],
        [z, z, z, z],
        [z, z, z, z],
        [C64::new(-2.0 * k, 0.0), z, z, C64::new(0.0, k)],
    ])
    .expect("finite")
}

fn check_commutator(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    const NAME: &str = "commutator";
    const REF: &str = "commutator of 12th powers of M01 and M02";
    if inp.basis_m.len() < 3 {
        return check(
            NAME,
            REF,
            false,
            f64::INFINITY,
            1e-9,
            "basis has fewer than 3 elements",
        );
    }
    let c = match mu_power_commutator(&inp.basis_m[1], &inp.basis_m[2]) {
        Ok(c) => c,
        Err(e) => return check(NAME, REF, false, f64::INFINITY, 1e-9, e.to_string()),
    };
    let entry_dev = c.max_abs_diff(&expected_commutator());
    let norm_target = 12168.0 / 15625.0 * 10f64.sqrt();
    let norm_dev = (c.frobenius_norm() - norm_target).abs();
    let report = mu_power_commutator_obstruction(&inp.basis_m, cfg.theta, cfg.tol);
    let (witness_ok, verdict) = match &report {
        Ok(r) => (
            matches!(
                r.witness,
                Some(Witness::NonCommutingPair {
                    first: 1,
                    second: 2,
                    ..
                })
            ),
            r.verdict.to_string(),
        ),
        Err(e) => (false, e.to_string()),
    };
    check(
        NAME,
        REF,
        entry_dev <= 1e-9 && norm_dev <= 1e-6 && witness_ok,
        entry_dev,
        1e-9,
        format!(
            "frobenius norm {:.12} (target {:.12}); obstruction {verdict}, witness (1, 2) {}",
            c.frobenius_norm(),
            norm_target,
            if witness_ok { "found" } else { "missing" }
        ),
    )
}

pub const Y_ALPHAS: [f64; 5] = [0.0, 0.1, 0.5, 1.0, FRAC_PI_2];

fn check_y(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    const NAME: &str = "Y-monomialization";
    const REF: &str = "Y conjugates the H_alpha Hadamard basis onto F'";
    let y = &inp.matrix_y;
    let y_dag = y.adjoint();
    let mut worst: f64 = 0.0;
    let mut all_monomial = true;
    for alpha in Y_ALPHAS {
        let u = match hadamard_basis(&h_alpha(alpha), cfg.tol) {
            Ok(u) => u,
            Err(e) => return check(NAME, REF, false, f64::INFINITY, 1e-9, e.to_string()),
        };
        match monomializes(y, u.elements(), cfg.tol) {
            Ok(m) => all_monomial &= m,
            Err(e) => return check(NAME, REF, false, f64::INFINITY, 1e-9, e.to_string()),
        }
        let conj: Vec<ComplexMatrix> = u.elements().iter().map(|e| &(y * e) * &y_dag).collect();
        worst = worst.max(max_family_diff(
            &conj,
            &catalog::basis_f_prime_listing(alpha),
        ));
    }
    check(
        NAME,
        REF,
        all_monomial && worst <= 1e-9,
        worst,
        1e-9,
        format!("alpha in {{0, 0.1, 0.5, 1, pi/2}}; all monomial: {all_monomial}"),
    )
}

fn check_adjoint_closure(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    const REF: &str = "adjoint closure of basis M versus nice error bases";
    let mut failures = Vec::new();
    match adjoint_closure_obstruction(&inp.basis_m, cfg.tol) {
        Ok(r) if r.verdict == Verdict::Obstructed => {}
        Ok(_) => failures.push("basis M not obstructed".to_string()),
        Err(e) => failures.push(format!("basis M: {e}")),
    }
    let clock_shift = clock_shift_representation(4, cfg.tol)
        .and_then(|rep| nice_error_basis(&rep, cfg.tol))
        .and_then(|b| adjoint_closure_obstruction(b.elements(), cfg.tol));
    match clock_shift {
        Ok(r) if r.verdict == Verdict::NotObstructed => {}
        Ok(_) => failures.push("clock-shift basis obstructed".to_string()),
        Err(e) => failures.push(format!("clock-shift basis: {e}")),
    }
    match adjoint_closure_obstruction(pauli_representation().images(), cfg.tol) {
        Ok(r) if r.verdict == Verdict::NotObstructed => {}
        Ok(_) => failures.push("Pauli basis obstructed".to_string()),
        Err(e) => failures.push(format!("Pauli basis: {e}")),
    }
    let detail = if failures.is_empty() {
        "M obstructed; clock-shift and Pauli not obstructed".to_string()
    } else {
        failures.join("; ")
    };
    check(
        "adjoint-closure",
        REF,
        failures.is_empty(),
        failures.len() as f64,
        0.0,
        detail,
    )
}

pub fn hadamard_qls_inputs() -> Vec<(String, HadamardMatrix)> {
    let mut out: Vec<(String, HadamardMatrix)> = (2..=6)
        .map(|n| (format!("fourier({n})"), fourier(n)))
        .collect();
    for k in 0..10 {
        let alpha = k as f64 * std::f64::consts::PI / 9.0;
        out.push((format!("h_alpha({alpha:.4})"), h_alpha(alpha)));
    }
    out
}

fn check_hadamard_qls(_: &ReproInputs, cfg: &ReproConfig) -> Check {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (label, h) in hadamard_qls_inputs() {
        match qls_from_hadamard(&h, cfg.tol) {
            Ok(q) => worst = worst.max(qls_defect(q.rows())),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    let detail = if failures.is_empty() {
        "fourier(2..6) and 10 values of alpha in [0, pi]".to_string()
    } else {
        failures.join("; ")
    };
    check(
        "hadamard-qls",
        "quantum Latin square of a Hadamard matrix",
        failures.is_empty() && worst <= cfg.tol.eps(),
        worst,
        cfg.tol.eps(),
        detail,
    )
}

pub fn containment_squares() -> Vec<ClassicalLatinSquare> {
    vec![
        ClassicalLatinSquare::cyclic(2),
        ClassicalLatinSquare::cyclic(3),
        ClassicalLatinSquare::cyclic(4),
        catalog::classical_example(),
        ClassicalLatinSquare::new(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .expect("Klein four table is Latin"),
    ]
}

fn check_containments(_: &ReproInputs, cfg: &ReproConfig) -> Check {
    let mut failures = Vec::new();
    for (k, l) in containment_squares().iter().enumerate() {
        let n = l.n();
        let hs: Vec<HadamardMatrix> = (0..n)
            .map(|j| {
                if n == 4 {
                    h_alpha(0.25 * j as f64)
                } else {
                    fourier(n)
                }
            })
            .collect();
        let same = match (sm(l, &hs, cfg.tol), qsm(&from_classical(l), &hs, cfg.tol)) {
            (Ok(a), Ok(b)) => a.elements() == b.elements(),
            _ => false,
        };
        if !same {
            failures.push(format!("square {k} (order {n})"));
        }
    }
    let mut worst: f64 = 0.0;
    for h in [fourier(4), h_alpha(0.3)] {
        let direct = hadamard_basis(&h, cfg.tol);
        let via = qls_from_hadamard(&h, cfg.tol)
            .and_then(|q| qsm(&q, &vec![h.transpose(); h.n()], cfg.tol));
        match (direct, via) {
            (Ok(a), Ok(b)) => worst = worst.max(max_family_diff(a.elements(), b.elements())),
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
    }
    let passed = failures.is_empty() && worst <= 1e-12;
    let detail = if failures.is_empty() {
        "sm = qsm on 5 classical squares exactly; Hadamard basis = qsm factorization".to_string()
    } else {
        failures.join("; ")
    };
    check(
        "containments",
        "SM within QSM and Hadamard within QSM",
        passed,
        worst,
        1e-12,
        detail,
    )
}

fn property_checks(cfg: &ReproConfig) -> Vec<Check> {
    properties::all(cfg.seed, cfg.trials)
        .into_iter()
        .map(|o| {
            check(
                &format!("properties/{}", o.name),
                "seeded structural identities",
                o.passed,
                o.worst,
                o.bound,
                format!("{} trials, seed {}", o.trials, cfg.seed),
            )
        })
        .collect()
}

fn perturbed(m: &ComplexMatrix, row: usize, col: usize) -> ComplexMatrix {
    m.with_entry(row, col, m[(row, col)] + C64::new(1e-3, 0.0))
        .expect("in range")
}

fn check_negative_controls(inp: &ReproInputs, cfg: &ReproConfig) -> Check {
    let mut failures = Vec::new();
    let mut rows = inp.qls_rows.clone();
    if let Some(q) = rows.get_mut(1) {
        *q = perturbed(q, 3, 1);
    }
    if validate_qls(rows, cfg.tol).is_ok() {
        failures.push("perturbed square accepted");
    }
    if validate_hadamard(perturbed(&inp.hadamard, 2, 3), cfg.tol).is_ok() {
        failures.push("perturbed Hadamard accepted");
    }
    let mut m = inp.basis_m.clone();
    if let Some(e) = m.get_mut(1) {
        *e = perturbed(e, 0, 1);
    }
    if validate_ueb(m, cfg.tol).is_ok() {
        failures.push("perturbed basis accepted");
    }
    let pauli = pauli_representation();
    if !matches!(
        adjoint_closure_obstruction(pauli.images(), cfg.tol),
        Ok(r) if r.verdict == Verdict::NotObstructed
    ) {
        failures.push("Pauli adjoint closure obstructed");
    }
    if !matches!(
        mu_power_commutator_obstruction(pauli.images(), cfg.theta, cfg.tol),
        Ok(r) if r.verdict == Verdict::NotObstructed
    ) {
        failures.push("Pauli commutator obstructed");
    }
    let detail = if failures.is_empty() {
        "1e-3 perturbations rejected; Pauli basis not obstructed".to_string()
    } else {
        failures.join("; ")
    };
    check(
        "negative-controls",
        "validators reject perturbed inputs",
        failures.is_empty(),
        failures.len() as f64,
        0.0,
        detail,
    )
}

/// Runs the suite in its fixed order.
pub fn run(inputs: &ReproInputs, cfg: &ReproConfig) -> Result<ReproReport> {
    if let Some(only) = &cfg.only {
        let group = only.split('/').next().unwrap_or(only);
        if !CHECK_NAMES.contains(&group) {
            return Err(Error::Shape(format!(
                "unknown check '{only}'; expected one of {}",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let wanted = |name: &str| match &cfg.only {
        None => true,
        Some(only) => only == name || only.split('/').next() == Some(name),
    };
    type Single = fn(&ReproInputs, &ReproConfig) -> Check;
    let singles: [(&str, Single); 9] = [
        ("qls-example", check_qls_example),
        ("M-from-qsm", check_m_from_qsm),
        ("M-is-UEB", check_m_is_ueb),
        ("commutator", check_commutator),
        ("Y-monomialization", check_y),
        ("adjoint-closure", check_adjoint_closure),
        ("hadamard-qls", check_hadamard_qls),
        ("containments", check_containments),
        ("negative-controls", check_negative_controls),
    ];
    let mut checks = Vec::new();
    for name in CHECK_NAMES {
        if !wanted(name) {
            continue;
        }
        if name == "properties" {
            let props = property_checks(cfg);
            checks.extend(props.into_iter().filter(|c| {
                cfg.only
                    .as_deref()
                    .is_none_or(|o| o == "properties" || o == c.name)
            }));
        } else if let Some((_, f)) = singles.iter().find(|(n, _)| *n == name) {
            checks.push(f(inputs, cfg));
        }
    }
    Ok(ReproReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> ReproConfig {
        ReproConfig {
            trials: 5,
            ..ReproConfig::default()
        }
    }

    #[test]
    fn default_suite_passes() {
        let report = run(&ReproInputs::default(), &quick()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.checks.len(), 9 + 7);
    }

    #[test]
    fn only_filter() {
        let cfg = ReproConfig {
            only: Some("commutator".into()),
            ..quick()
        };
        let report = run(&ReproInputs::default(), &cfg).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].name, "commutator");
        let cfg = ReproConfig {
            only: Some("properties/monomial-closure".into()),
            ..quick()
        };
        assert_eq!(run(&ReproInputs::default(), &cfg).unwrap().checks.len(), 1);
        let cfg = ReproConfig {
            only: Some("nope".into()),
            ..quick()
        };
        assert!(run(&ReproInputs::default(), &cfg).is_err());
    }

    #[test]
    fn perturbed_m01_fails_m_is_ueb() {
        let mut inputs = ReproInputs::default();
        inputs.basis_m[1] = perturbed(&inputs.basis_m[1], 0, 1);
        let report = run(&inputs, &quick()).unwrap();
        assert!(!report.check("M-is-UEB").unwrap().passed);
        assert!(report.check("qls-example").unwrap().passed);
        assert!(!report.all_passed());
    }
}
