//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{grouplike_counit, comatrix_quotient_projection, q, Q};
use comono_core::coalgebra::regular_comodules;
use comono_core::constructions::{
    algebra_epi_check, beta_map, comatrix, dual_morphism, fuzz_batch, grouplike, matrix_algebra,
    matrix_subalgebra, random_bicomodule, random_morphism, random_right_comodule, trivial_coextension,
};
use comono_core::cotensor::{adjunction_maps, kernel_coinduced_bicomodule, self_cotensor_bicomodule};
use comono_core::criteria::{
    compare_fields, criterion_cotensor_identity, criterion_h0_equal, h0, is_monomorphism,
};
use comono_core::linalg::Execution;
use comono_core::{CoalgebraMorphism, Field, Result};

const FUZZ_SEEDS: u64 = 500;
const FUZZ_MAX_DIM: usize = 6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn fuzz_instances() -> Result<Vec<CoalgebraMorphism>> {
    (0..FUZZ_SEEDS).map(|s| random_morphism(s, FUZZ_MAX_DIM, Q)).collect()
}

fn comatrix_quotient_example() -> Result<Outcome> {
    let start = Instant::now();
    let pi = comatrix_quotient_projection();
    let v = is_monomorphism(&pi)?;
    let elapsed = start.elapsed();
    let ok = v.kernel_dim == 1
        && !v.injective
        && v.cotensor_dim == 4
        && v.cotensor_identity.holds
        && v.delta_surjective == Some(true)
        && v.kernel_cotensor_dim == Some(0)
        && v.is_mono
        && elapsed < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "dim Ker = {}, dim C□C = {}, (3)(4)(7) = {:?}/{:?}/{}, mono = {}, {:.3}s",
            v.kernel_dim,
            v.cotensor_dim,
            v.kernel_cotensor(),
            v.delta_surjective,
            v.cotensor_identity.holds,
            v.is_mono,
            elapsed.as_secs_f64()
        ),
    )
}

fn counterexample() -> Result<Outcome> {
    let eps = grouplike_counit();
    let v = is_monomorphism(&eps)?;
    let w = v.cotensor_identity.witness.clone();
    let witness = w.as_ref().map(|w| w.expanded.clone()).unwrap_or_default();
    let sides = w.as_ref().map(|w| (w.counit_left.clone(), w.counit_right.clone()));
    let ok = !v.is_mono
        && witness == "g⊗h"
        && sides == Some(("h".into(), "g".into()))
        && v.cotensor_dim == 4
        && v.source_dim == 2;
    outcome(
        ok,
        format!("mono = {}, witness {witness}, dim C□C = {} vs dim C = {}", v.is_mono, v.cotensor_dim, v.source_dim),
    )
}

fn theorem_fuzz() -> Result<Outcome> {
    let start = Instant::now();
    let mut total = 0;
    let mut disagreements = vec![];
    let (mut mono, mut hidden) = (0, 0);
    for field in [Q, Field::Prime(7)] {
        for r in fuzz_batch(0..FUZZ_SEEDS, FUZZ_MAX_DIM, field, Execution::Parallel)? {
            total += 1;
            mono += r.summary.cotensor_identity as usize;
            hidden += (r.summary.cotensor_identity && r.summary.kernel_dim > 0) as usize;
            if !r.agree() {
                disagreements.push(format!("{} {}", field, r.seed));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        disagreements.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{total} instances, {mono} mono ({hidden} non-injective), {} disagreements {:?}, {:.1}s",
            disagreements.len(),
            disagreements,
            elapsed.as_secs_f64()
        ),
    )
}

fn adjunction() -> Result<Outcome> {
    let mut checked = 0;
    let mut failures = vec![];
    for (seed, phi) in fuzz_instances()?.iter().enumerate() {
        let seed = seed as u64;
        let c = phi.source();
        let mono = criterion_cotensor_identity(phi)?.holds;
        let mut modules = vec![regular_comodules(c).0];
        for k in 0..2 {
            modules.push(random_right_comodule(seed * 2 + k, c, FUZZ_MAX_DIM)?);
        }
        for m in &modules {
            let maps = adjunction_maps(m, phi)?;
            checked += 1;
            if !maps.nu_after_eta()?.is_identity() {
                failures.push(format!("seed {seed}: ν∘η ≠ id"));
            }
            if mono && !maps.eta_after_nu()?.is_identity() {
                failures.push(format!("seed {seed}: η∘ν ≠ id on a mono"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} comodules, failures {failures:?}"))
}

fn h0_checks() -> Result<Outcome> {
    let m2 = Arc::new(comatrix(Q, 2)?);
    let hm = h0(&regular_comodules(&m2).2)?;
    let exact = hm.dim() == 1 && hm.subspace.basis_vector(0) == [q(1), q(0), q(0), q(1)];
    let g = Arc::new(grouplike(Q, &["g", "h"])?);
    let hg = h0(&regular_comodules(&g).2)?.dim();
    let mut failures = vec![];
    let mut compared = 0;
    for (seed, phi) in fuzz_instances()?.iter().enumerate() {
        let mono = criterion_cotensor_identity(phi)?.holds;
        let x = self_cotensor_bicomodule(phi)?;
        let k = kernel_coinduced_bicomodule(phi)?;
        for (what, n) in [("C□C", x.bicomodule().expect("bicomodule")), ("C□Ker□C", &k)] {
            // containment is enforced inside and surfaces as an error
            match criterion_h0_equal(phi, n) {
                Ok(cmp) => {
                    compared += 1;
                    if mono && !cmp.equal {
                        failures.push(format!("seed {seed}: H⁰ differ on {what} for a mono"));
                    }
                }
                Err(e) => failures.push(format!("seed {seed}: {what}: {e}")),
            }
        }
    }
    outcome(
        exact && hg == 2 && failures.is_empty(),
        format!("dim H⁰(M2) = {}, dim H⁰(k{{g,h}}) = {hg}, {compared} comparisons, failures {failures:?}", hm.dim()),
    )
}

fn coextensions() -> Result<Outcome> {
    let mut pairs = 0;
    let mut betas = 0;
    let mut failures = vec![];
    let mut seed = 0;
    while pairs < 50 {
        let phi = random_morphism(seed, 4, Q)?;
        let c = phi.source().clone();
        let n = random_bicomodule(seed, &phi, 4)?;
        seed += 1;
        let co = trivial_coextension(&c, &n)?;
        pairs += 1;
        if !co.coalgebra.validate().is_valid() {
            failures.push(format!("seed {}: C⋊N invalid", seed - 1));
        }
        if !co.projection.validate().is_valid() {
            failures.push(format!("seed {}: π_C invalid", seed - 1));
        }
        let invariants = h0(&n.corestrict_both(&phi)?)?;
        let through_pi = phi.compose_after(&co.projection)?;
        for gamma in invariants.subspace.basis_vectors() {
            betas += 1;
            let beta = beta_map(&co, gamma)?;
            if !beta.report.is_valid() {
                failures.push(format!("seed {}: β invalid", seed - 1));
            }
            if phi.compose_after(&beta.morphism)?.matrix() != through_pi.matrix() {
                failures.push(format!("seed {}: φ∘β ≠ φ∘π", seed - 1));
            }
        }
    }
    outcome(failures.is_empty(), format!("{pairs} pairs, {betas} functionals, failures {failures:?}"))
}

fn duality() -> Result<Outcome> {
    let b = Arc::new(matrix_algebra(Q, 2)?);
    let classical = algebra_epi_check(&matrix_subalgebra(&b, 2, &[(0, 0), (0, 1), (1, 1)])?)?;
    let mut failures = vec![];
    let mut mono = 0;
    let instances = fuzz_instances()?;
    for (seed, phi) in instances.iter().enumerate() {
        let m = criterion_cotensor_identity(phi)?.holds;
        mono += m as usize;
        let e = algebra_epi_check(&dual_morphism(phi))?;
        if m != e.is_epi {
            failures.push(seed);
        }
    }
    outcome(
        classical.is_epi && classical.tensor_dim == 4 && failures.is_empty(),
        format!(
            "upper triangular ↪ M2: epi = {}, dim B⊗_A B = {}; {} instances ({mono} mono), mismatches {failures:?}",
            classical.is_epi,
            classical.tensor_dim,
            instances.len()
        ),
    )
}

fn field_independence() -> Result<Outcome> {
    let mut report = vec![];
    let mut ok = true;
    for p in [7, 101] {
        let (mut compared, mut flagged, mut bad) = (0, vec![], vec![]);
        for (seed, phi) in fuzz_instances()?.iter().enumerate() {
            if !phi.is_integral() {
                continue;
            }
            compared += 1;
            let cmp = compare_fields(phi, p)?;
            if cmp.characteristic_sensitive {
                flagged.push(seed);
            } else if !cmp.verdicts_agree {
                bad.push(seed);
            }
        }
        ok &= bad.is_empty();
        report.push(format!(
            "p = {p}: {compared} integral instances, characteristic-sensitive {flagged:?}, unflagged disagreements {bad:?}"
        ));
    }
    outcome(ok, report.join("; "))
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("1 comatrix quotient example", comatrix_quotient_example),
        ("2 grouplike counit counterexample", counterexample),
        ("3 theorem-equivalence fuzz", theorem_fuzz),
        ("4 adjunction identities", adjunction),
        ("5 H⁰ checks", h0_checks),
        ("6 coextension suite", coextensions),
        ("7 duality oracle agreement", duality),
        ("8 field independence", field_independence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let (passed, detail) = match run() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !passed as usize;
        println!("[{}] criterion {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
