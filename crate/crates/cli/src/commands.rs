use comono_core::coalgebra::{format_vector, regular_comodules};
use comono_core::constructions::{algebra_epi_check, dual_algebra, dual_morphism, fuzz_batch, is_coideal, quotient,
    trivial_coextension};
use comono_core::cotensor::{cotensor, self_cotensor_bicomodule};
use comono_core::criteria::{evaluate, h0, CheckOptions, MonoVerdict};
use comono_core::linalg::Execution;
use comono_core::{Bicomodule, Field, LeftComodule, RightComodule, ValidationReport};
use serde::Serialize;

use crate::document::{serialize_coalgebra, serialize_morphism, DefinitionDocument};
use crate::error::CliError;

/// What a command produced: a status, a JSON value and the text rendering.
pub struct Outcome {
    pub status: u8,
    pub json: serde_json::Value,
    pub text: String,
}

impl Outcome {
    fn new<T: Serialize>(status: u8, report: &T, text: String) -> Result<Outcome, CliError> {
        let json = serde_json::to_value(report).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Outcome { status, json, text })
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn missing(kind: &str, name: &str) -> CliError {
    CliError::Usage(format!("no {kind} named `{name}` in the document"))
}

#[derive(Serialize)]
struct ItemCheck {
    kind: &'static str,
    name: String,
    valid: bool,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct ValidateReport {
    command: &'static str,
    valid: bool,
    items: Vec<ItemCheck>,
}

fn item(kind: &'static str, name: &str, report: ValidationReport) -> ItemCheck {
    ItemCheck {
        kind,
        name: name.to_string(),
        valid: report.is_valid(),
        violations: report.violations.iter().map(ToString::to_string).collect(),
    }
}

pub fn validate(doc: &DefinitionDocument) -> Result<Outcome, CliError> {
    let mut items = vec![];
    for c in &doc.coalgebras {
        items.push(item("coalgebra", c.name(), c.validate()));
    }
    for (name, f) in &doc.morphisms {
        items.push(item("morphism", name, f.validate()));
    }
    for (name, m) in &doc.right_comodules {
        items.push(item("rightcomodule", name, m.validate()));
    }
    for (name, m) in &doc.left_comodules {
        items.push(item("leftcomodule", name, m.validate()));
    }
    for (name, b) in &doc.bicomodules {
        items.push(item("bicomodule", name, b.validate()));
    }
    let valid = items.iter().all(|i| i.valid);
    let mut text = String::new();
    for i in &items {
        let state = if i.valid { "ok" } else { "INVALID" };
        text.push_str(&format!("{} {}: {state}\n", i.kind, i.name));
        for v in &i.violations {
            text.push_str(&format!("  {v}\n"));
        }
    }
    text.push_str(if valid { "all axioms hold\n" } else { "axiom violations found\n" });
    let report = ValidateReport {
        command: "validate",
        valid,
        items,
    };
    Outcome::new(u8::from(!valid), &report, text)
}

#[derive(Serialize)]
struct WitnessReport {
    tensor: String,
    counit_left: String,
    counit_right: String,
}

#[derive(Serialize)]
struct H0Report {
    over_source: usize,
    over_target: usize,
    equal: bool,
}

#[derive(Serialize)]
struct MonoReport {
    command: &'static str,
    morphism: String,
    source: String,
    target: String,
    source_dim: usize,
    kernel_dim: usize,
    injective: bool,
    cotensor_dim: usize,
    cotensor_identity: bool,
    delta_surjective: Option<bool>,
    kernel_cotensor_dim: Option<usize>,
    kernel_cotensor_zero: Option<bool>,
    h0_self_cotensor: Option<H0Report>,
    witness: Option<WitnessReport>,
    mono: bool,
}

fn mono_report(name: &str, v: &MonoVerdict) -> MonoReport {
    MonoReport {
        command: "mono-check",
        morphism: name.to_string(),
        source: v.source.clone(),
        target: v.target.clone(),
        source_dim: v.source_dim,
        kernel_dim: v.kernel_dim,
        injective: v.injective,
        cotensor_dim: v.cotensor_dim,
        cotensor_identity: v.cotensor_identity.holds,
        delta_surjective: v.delta_surjective,
        kernel_cotensor_dim: v.kernel_cotensor_dim,
        kernel_cotensor_zero: v.kernel_cotensor(),
        h0_self_cotensor: v.h0_self_cotensor.as_ref().map(|h| H0Report {
            over_source: h.over_source.dim(),
            over_target: h.over_target.dim(),
            equal: h.equal,
        }),
        witness: v.cotensor_identity.witness.as_ref().map(|w| WitnessReport {
            tensor: w.expanded.clone(),
            counit_left: w.counit_left.clone(),
            counit_right: w.counit_right.clone(),
        }),
        mono: v.is_mono,
    }
}

fn mono_text(r: &MonoReport) -> String {
    let mut t = format!("morphism {}: {} -> {}\n", r.morphism, r.source, r.target);
    t.push_str(&format!("kernel dim {}, injective {}\n", r.kernel_dim, yes_no(r.injective)));
    t.push_str(&format!("dim(C□_D C) {} (dim C = {})\n", r.cotensor_dim, r.source_dim));
    if let Some(s) = r.delta_surjective {
        t.push_str(&format!("criterion (3) Δ onto C□_D C: {}\n", yes_no(s)));
    }
    if let (Some(z), Some(d)) = (r.kernel_cotensor_zero, r.kernel_cotensor_dim) {
        t.push_str(&format!("criterion (4) C□_D Ker φ = 0: {} (dim {d})\n", yes_no(z)));
    }
    t.push_str(&format!("criterion (7) (ε⊗I) = (I⊗ε) on C□_D C: {}\n", yes_no(r.cotensor_identity)));
    if let Some(h) = &r.h0_self_cotensor {
        t.push_str(&format!(
            "H⁰(C□_D C, C) dim {}, H⁰(C□_D C, D) dim {}, equal {}\n",
            h.over_source,
            h.over_target,
            yes_no(h.equal)
        ));
    }
    if let Some(w) = &r.witness {
        t.push_str(&format!(
            "witness {}: (ε⊗I) gives {}, (I⊗ε) gives {}\n",
            w.tensor, w.counit_left, w.counit_right
        ));
    }
    t.push_str(&format!("verdict: {}\n", if r.mono { "mono" } else { "not mono" }));
    t
}

pub fn mono_check(doc: &DefinitionDocument, name: &str, skip_crosscheck: bool) -> Result<Outcome, CliError> {
    let phi = doc.morphism(name).ok_or_else(|| missing("morphism", name))?;
    let opts = CheckOptions {
        cross_check: !skip_crosscheck,
        h0: !skip_crosscheck,
        exec: Execution::default(),
    };
    let v = evaluate(phi, opts)?;
    if v.disagreement {
        return Err(comono_core::Error::TheoremViolation(format!(
            "criteria disagree on {name}: (7) = {}, (3) = {:?}, (4) = {:?}",
            v.is_mono,
            v.delta_surjective,
            v.kernel_cotensor()
        ))
        .into());
    }
    let report = mono_report(name, &v);
    let text = mono_text(&report);
    Outcome::new(u8::from(!v.is_mono), &report, text)
}

/// A right comodule by name: a declared right comodule, the right side of
/// a bicomodule, or a coalgebra acting on itself.
fn right_comodule(doc: &DefinitionDocument, name: &str) -> Result<RightComodule, CliError> {
    if let Some(m) = doc.right_comodule(name) {
        return Ok(m.clone());
    }
    if let Some(b) = doc.bicomodule(name) {
        return Ok(b.right_comodule());
    }
    if let Some(c) = doc.coalgebra(name) {
        return Ok(regular_comodules(c).0);
    }
    Err(missing("right comodule", name))
}

fn left_comodule(doc: &DefinitionDocument, name: &str) -> Result<LeftComodule, CliError> {
    if let Some(m) = doc.left_comodule(name) {
        return Ok(m.clone());
    }
    if let Some(b) = doc.bicomodule(name) {
        return Ok(b.left_comodule());
    }
    if let Some(c) = doc.coalgebra(name) {
        return Ok(regular_comodules(c).1);
    }
    Err(missing("left comodule", name))
}

fn bicomodule(doc: &DefinitionDocument, name: &str) -> Result<Bicomodule, CliError> {
    if let Some(b) = doc.bicomodule(name) {
        return Ok(b.clone());
    }
    if let Some(c) = doc.coalgebra(name) {
        return Ok(regular_comodules(c).2);
    }
    Err(missing("bicomodule", name))
}

#[derive(Serialize)]
struct CotensorReport {
    command: &'static str,
    left: String,
    right: String,
    over: String,
    dim: usize,
    ambient_dim: usize,
    basis: Vec<String>,
}

pub fn cotensor_cmd(doc: &DefinitionDocument, m: &str, n: &str, along: Option<&str>) -> Result<Outcome, CliError> {
    let mut right = right_comodule(doc, m)?;
    let mut left = left_comodule(doc, n)?;
    if let Some(f) = along {
        let phi = doc.morphism(f).ok_or_else(|| missing("morphism", f))?;
        right = right.corestrict(phi)?;
        left = left.corestrict(phi)?;
    }
    let space = cotensor(&right, &left)?;
    let report = CotensorReport {
        command: "cotensor",
        left: m.to_string(),
        right: n.to_string(),
        over: right.over().name().to_string(),
        dim: space.dim(),
        ambient_dim: space.ambient_dim(),
        basis: space.format_basis(),
    };
    let mut text = format!(
        "{m} □_{} {n}: dim {} inside a {}-dimensional tensor product\n",
        report.over, report.dim, report.ambient_dim
    );
    for b in &report.basis {
        text.push_str(&format!("  {b}\n"));
    }
    Outcome::new(0, &report, text)
}

#[derive(Serialize)]
struct H0CmdReport {
    command: &'static str,
    bicomodule: String,
    coalgebra: String,
    dim: usize,
    basis: Vec<String>,
}

pub fn h0_cmd(doc: &DefinitionDocument, n: &str, coalgebra: &str, via: Option<&str>) -> Result<Outcome, CliError> {
    let mut b = bicomodule(doc, n)?;
    if let Some(f) = via {
        let phi = doc.morphism(f).ok_or_else(|| missing("morphism", f))?;
        b = b.corestrict_both(phi)?;
    }
    if b.left_over().name() != coalgebra {
        return Err(CliError::Usage(format!(
            "`{n}` is a bicomodule over {}, not {coalgebra}; pass --via with a morphism into {coalgebra}",
            b.left_over().name()
        )));
    }
    let space = h0(&b)?;
    let duals: Vec<String> = b.labels().iter().map(|l| format!("{l}*")).collect();
    let basis: Vec<String> = space.subspace.basis_vectors().map(|v| format_vector(&duals, v)).collect();
    let report = H0CmdReport {
        command: "h0",
        bicomodule: n.to_string(),
        coalgebra: coalgebra.to_string(),
        dim: space.dim(),
        basis,
    };
    let mut text = format!("H⁰({n}, {coalgebra}): dim {}\n", report.dim);
    for v in &report.basis {
        text.push_str(&format!("  {v}\n"));
    }
    Outcome::new(0, &report, text)
}

#[derive(Serialize)]
struct QuotientReport {
    command: &'static str,
    coalgebra: String,
    subspace: String,
    is_coideal: bool,
    certificate: Vec<String>,
    quotient_dim: Option<usize>,
    definition: Option<String>,
}

pub fn quotient_cmd(doc: &DefinitionDocument, c: &str, i: &str) -> Result<Outcome, CliError> {
    let coalgebra = doc.coalgebra(c).ok_or_else(|| missing("coalgebra", c))?;
    let (ambient, sub) = doc.subspace(i).ok_or_else(|| missing("subspace", i))?;
    if ambient != c {
        return Err(CliError::Usage(format!("subspace `{i}` lives in {ambient}, not {c}")));
    }
    let check = is_coideal(coalgebra, sub)?;
    if !check.is_coideal {
        let report = QuotientReport {
            command: "quotient",
            coalgebra: c.to_string(),
            subspace: i.to_string(),
            is_coideal: false,
            certificate: check.certificate.clone(),
            quotient_dim: None,
            definition: None,
        };
        let mut text = format!("{i} is not a coideal of {c}\n");
        for line in &check.certificate {
            text.push_str(&format!("  {line}\n"));
        }
        return Outcome::new(1, &report, text);
    }
    let q = quotient(coalgebra, sub)?;
    let definition = format!(
        "{}{}",
        serialize_coalgebra(&q.coalgebra),
        serialize_morphism("projection", &q.projection)
    );
    let report = QuotientReport {
        command: "quotient",
        coalgebra: c.to_string(),
        subspace: i.to_string(),
        is_coideal: true,
        certificate: vec![],
        quotient_dim: Some(q.coalgebra.dim()),
        definition: Some(definition.clone()),
    };
    let text = format!("{c}/{i}: dim {}\n{definition}", q.coalgebra.dim());
    Outcome::new(0, &report, text)
}

#[derive(Serialize)]
struct CoextendReport {
    command: &'static str,
    coalgebra: String,
    bicomodule: String,
    dim: usize,
    coalgebra_valid: bool,
    projection_valid: bool,
    definition: String,
}

pub fn coextend(doc: &DefinitionDocument, c: &str, n: &str) -> Result<Outcome, CliError> {
    let coalgebra = doc.coalgebra(c).ok_or_else(|| missing("coalgebra", c))?;
    let b = bicomodule(doc, n)?;
    let result = trivial_coextension(coalgebra, &b)?;
    let coalgebra_valid = result.coalgebra.validate().is_valid();
    let projection_valid = result.projection.validate().is_valid();
    let definition = format!(
        "{}{}",
        serialize_coalgebra(&result.coalgebra),
        serialize_morphism("projection", &result.projection)
    );
    let report = CoextendReport {
        command: "coextend",
        coalgebra: c.to_string(),
        bicomodule: n.to_string(),
        dim: result.coalgebra.dim(),
        coalgebra_valid,
        projection_valid,
        definition: definition.clone(),
    };
    let ok = coalgebra_valid && projection_valid;
    let text = format!(
        "{}: dim {}, coalgebra valid {}, projection valid {}\n{definition}",
        result.coalgebra.name(),
        report.dim,
        yes_no(coalgebra_valid),
        yes_no(projection_valid)
    );
    Outcome::new(u8::from(!ok), &report, text)
}

#[derive(Serialize)]
struct ProductTerm {
    left: String,
    right: String,
    result: String,
}

#[derive(Serialize)]
struct DualizeReport {
    command: &'static str,
    coalgebra: String,
    algebra: String,
    dim: usize,
    unit: String,
    products: Vec<ProductTerm>,
    valid: bool,
}

pub fn dualize(doc: &DefinitionDocument, c: &str) -> Result<Outcome, CliError> {
    let coalgebra = doc.coalgebra(c).ok_or_else(|| missing("coalgebra", c))?;
    let a = dual_algebra(coalgebra);
    let n = a.dim();
    let mut products = vec![];
    for i in 0..n {
        for j in 0..n {
            let col = a.mult().column(i * n + j);
            if col.iter().any(|x| !x.is_zero()) {
                products.push(ProductTerm {
                    left: a.labels()[i].clone(),
                    right: a.labels()[j].clone(),
                    result: format_vector(a.labels(), &col),
                });
            }
        }
    }
    let report = DualizeReport {
        command: "dualize",
        coalgebra: c.to_string(),
        algebra: a.name().to_string(),
        dim: n,
        unit: format_vector(a.labels(), &a.unit().column(0)),
        products,
        valid: a.validate().is_valid(),
    };
    let mut text = format!("{}: dim {}, unit {}\n", report.algebra, n, report.unit);
    for p in &report.products {
        text.push_str(&format!("  {} · {} = {}\n", p.left, p.right, p.result));
    }
    text.push_str(&format!("algebra axioms hold: {}\n", yes_no(report.valid)));
    Outcome::new(u8::from(!report.valid), &report, text)
}

#[derive(Serialize)]
struct DemoReport {
    command: &'static str,
    example: String,
    kernel_dim: usize,
    kernel: Vec<String>,
    injective: bool,
    cotensor_dim: usize,
    cotensor_basis: Vec<String>,
    criterion_3: bool,
    criterion_4: bool,
    criterion_7: bool,
    h0_equal: bool,
    dual_epi: bool,
    dual_tensor_dim: usize,
    mono: bool,
}

/// The non-injective monomorphism `M2 -> M2/span{c21}` end to end.
pub fn demo_comatrix_quotient(doc: &DefinitionDocument) -> Result<Outcome, CliError> {
    let phi = doc.morphism("pi").ok_or_else(|| missing("morphism", "pi"))?;
    let v = evaluate(phi, CheckOptions::default())?;
    let space = self_cotensor_bicomodule(phi)?;
    let epi = algebra_epi_check(&dual_morphism(phi))?;
    let kernel = phi.kernel();
    let report = DemoReport {
        command: "demo",
        example: "paper-example".into(),
        kernel_dim: v.kernel_dim,
        kernel: kernel.basis_vectors().map(|k| format_vector(phi.source().labels(), k)).collect(),
        injective: v.injective,
        cotensor_dim: v.cotensor_dim,
        cotensor_basis: space.format_basis(),
        criterion_3: v.delta_surjective.unwrap_or(false),
        criterion_4: v.kernel_cotensor().unwrap_or(false),
        criterion_7: v.cotensor_identity.holds,
        h0_equal: v.h0_self_cotensor.as_ref().is_some_and(|h| h.equal),
        dual_epi: epi.is_epi,
        dual_tensor_dim: epi.tensor_dim,
        mono: v.is_mono,
    };
    let mut text = String::from("π: M2 -> M2/span{c21} over Q\n");
    text.push_str(&format!("kernel dim {}: span{{{}}}\n", report.kernel_dim, report.kernel.join(", ")));
    text.push_str(&format!("injective {}\n", yes_no(report.injective)));
    text.push_str(&format!("dim(C□_D C) {}\n", report.cotensor_dim));
    for b in &report.cotensor_basis {
        text.push_str(&format!("  {b}\n"));
    }
    text.push_str(&format!("criterion (3) {}\n", yes_no(report.criterion_3)));
    text.push_str(&format!("criterion (4) {}\n", yes_no(report.criterion_4)));
    text.push_str(&format!("criterion (7) {}\n", yes_no(report.criterion_7)));
    text.push_str(&format!("H⁰(C□_D C, C) = H⁰(C□_D C, D): {}\n", yes_no(report.h0_equal)));
    text.push_str(&format!(
        "dual map epimorphism of algebras: {} (dim B⊗_A B = {})\n",
        yes_no(report.dual_epi),
        report.dual_tensor_dim
    ));
    text.push_str(&format!("verdict: {}\n", if report.mono { "mono" } else { "not mono" }));
    let ok = report.mono && report.criterion_3 && report.criterion_4 && !report.injective;
    Outcome::new(u8::from(!ok), &report, text)
}

#[derive(Serialize)]
struct FuzzLine {
    seed: u64,
    description: String,
    source_dim: usize,
    target_dim: usize,
    kernel_dim: usize,
    cotensor_dim: usize,
    criterion_3: bool,
    criterion_4: bool,
    criterion_7: bool,
    agree: bool,
}

#[derive(Serialize)]
struct FuzzReport {
    command: &'static str,
    field: String,
    seeds: String,
    max_dim: usize,
    instances: usize,
    mono: usize,
    disagreements: usize,
    records: Vec<FuzzLine>,
}

pub fn parse_seed_range(text: &str) -> Result<std::ops::Range<u64>, CliError> {
    let bad = || CliError::Usage(format!("`{text}` is not a seed range like 0..100"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..b)
}

pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let p = t.strip_prefix("Fp").or_else(|| t.strip_prefix('F')).map(str::trim);
    match p.and_then(|p| p.parse::<u64>().ok()) {
        Some(p) => Ok(Field::prime(p)?),
        None => Err(CliError::Usage(format!("unknown field `{text}`; use Q or Fp<p>"))),
    }
}

pub fn fuzz(seeds: std::ops::Range<u64>, max_dim: usize, field: Field) -> Result<Outcome, CliError> {
    let label = format!("{}..{}", seeds.start, seeds.end);
    let records = fuzz_batch(seeds, max_dim, field, Execution::default())?;
    let lines: Vec<FuzzLine> = records
        .iter()
        .map(|r| FuzzLine {
            seed: r.seed,
            description: r
                .description
                .strip_prefix(&format!("seed {}: ", r.seed))
                .unwrap_or(&r.description)
                .to_string(),
            source_dim: r.source_dim,
            target_dim: r.target_dim,
            kernel_dim: r.summary.kernel_dim,
            cotensor_dim: r.summary.cotensor_dim,
            criterion_3: r.summary.delta_surjective,
            criterion_4: r.summary.kernel_cotensor,
            criterion_7: r.summary.cotensor_identity,
            agree: r.agree(),
        })
        .collect();
    let disagreements = lines.iter().filter(|l| !l.agree).count();
    let report = FuzzReport {
        command: "fuzz",
        field: field.to_string(),
        seeds: label,
        max_dim,
        instances: lines.len(),
        mono: lines.iter().filter(|l| l.criterion_7).count(),
        disagreements,
        records: lines,
    };
    let mut text = String::new();
    for l in &report.records {
        text.push_str(&format!(
            "seed {}: {} -> {} ker {} □ {} (3)={} (4)={} (7)={}{}  [{}]\n",
            l.seed,
            l.source_dim,
            l.target_dim,
            l.kernel_dim,
            l.cotensor_dim,
            yes_no(l.criterion_3),
            yes_no(l.criterion_4),
            yes_no(l.criterion_7),
            if l.agree { "" } else { "  DISAGREE" },
            l.description
        ));
    }
    text.push_str(&format!(
        "{} instances over {}, {} mono, {} disagreements\n",
        report.instances, report.field, report.mono, report.disagreements
    ));
    Outcome::new(u8::from(disagreements > 0), &report, text)
}
