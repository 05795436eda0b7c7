use std::fmt::Write as _;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use dirichlet_core::circular::{self, CircularNetwork, CocircuitClass, DualityReport};
use dirichlet_core::dirichlet::{connectivity_criteria, dirichlet_matroid, grove_matroid, lift_matroid};
use dirichlet_core::electrical::{self, ElectricalError, LineRestriction};
use dirichlet_core::field::Field;
use dirichlet_core::linrep::{self, Representability};
use dirichlet_core::matroid::Family as MatroidFamily;
use dirichlet_core::network::Network;
use dirichlet_core::poly::{self, PolyError};
use dirichlet_core::{EdgeSet, IntPoly, Matroid};

use crate::input::{self, Input};
use crate::{Cli, Command, Common, DualArgs, ElectricalArgs, Family, MatroidArgs, PolyArgs, RepArgs, Suite};

const DEFAULT_IDENTITY_POINTS: usize = 20;
const DEFAULT_SAMPLES: u64 = 100;
const VERIFY_LINES: u64 = 10;
/// Ground sets up to this size get the brute-force Tutte connectivity check.
const TUTTE_LIMIT: usize = 14;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] dirichlet_core::Error),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(
    dirichlet_core::MatroidError,
    PolyError,
    ElectricalError,
    linrep::LinRepError,
    dirichlet_core::field::FieldError,
    circular::CircularError
);

/// Text and JSON forms of one command's result.
pub struct Report {
    pub ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn new(ok: bool, text: String, json: Value) -> Report {
        Report { ok, text, json }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut out = serde_json::to_string_pretty(&self.json).expect("values serialize");
            out.push('\n');
            out
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Validate => validate(&input::load(c)?),
        Command::Matroid(a) => matroid(&input::load(c)?.network, a, c),
        Command::Poly(a) => poly_cmd(c, a),
        Command::Electrical(a) => electrical_cmd(&input::load(c)?.network, a, c),
        Command::Rep(a) => rep(&input::load(c)?.network, a),
        Command::Dual(a) => dual(&input::load(c)?, a),
        Command::Verify(a) => verify(&input::load(c)?, a.suite, c),
    }
}

fn labels(n: &Network, x: EdgeSet) -> Vec<String> {
    n.set_labels(x)
}

fn brace(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn poly_json(p: &IntPoly) -> Value {
    json!({ "poly": p.to_string(), "coefficients": p })
}

fn validate(input: &Input) -> Result<Report, CliError> {
    let n = &input.network;
    let mut text = format!(
        "valid network: {} vertices ({} boundary, {} interior), {} edges, {} blocks, largest block boundary {}\n",
        n.vertex_count(),
        n.boundary_count(),
        n.interior_count(),
        n.edge_count(),
        n.blocks().len(),
        n.max_block_boundary()
    );
    let mut j = json!({
        "vertices": n.vertex_count(),
        "boundary": n.boundary_count(),
        "interior": n.interior_count(),
        "edges": n.edge_count(),
        "blocks": n.blocks().len(),
        "max_block_boundary": n.max_block_boundary(),
    });
    if input.has_embedding() {
        let c = input.circular()?;
        writeln!(text, "valid disk embedding: {} inner faces", c.inner_faces().len()).unwrap();
        j["inner_faces"] = json!(c.inner_faces().len());
    }
    Ok(Report::new(true, text, j))
}

fn matroid(n: &Network, a: &MatroidArgs, c: &Common) -> Result<Report, CliError> {
    let m = dirichlet_matroid(n);
    m.check_limit()?;
    let mut text = String::new();
    let mut j = json!({ "ground": m.labels(), "rank": m.full_rank() });
    writeln!(text, "M(N): {} elements, rank {}", m.len(), m.full_rank()).unwrap();
    if let Some(fam) = a.list {
        let (name, kind) = match fam {
            Family::Bases => ("bases", MatroidFamily::Bases),
            Family::Circuits => ("circuits", MatroidFamily::Circuits),
            Family::Cocircuits => ("cocircuits", MatroidFamily::Cocircuits),
            Family::Flats => ("flats", MatroidFamily::Flats),
        };
        let all = m.enumerate(kind)?;
        let shown = c.limit.unwrap_or(all.len()).min(all.len());
        writeln!(text, "{} {name}", all.len()).unwrap();
        for &x in &all[..shown] {
            writeln!(text, "  {}", brace(&labels(n, x))).unwrap();
        }
        if shown < all.len() {
            writeln!(text, "  ... {} more (raise --limit)", all.len() - shown).unwrap();
        }
        j[name] = json!(all[..shown].iter().map(|&x| labels(n, x)).collect::<Vec<_>>());
        j["count"] = json!(all.len());
    }
    if let Some(set) = &a.rank {
        let parts: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let x = n.parse_edge_set(&parts, true)?;
        let r = m.rank(x);
        writeln!(text, "rank {} = {r}", brace(&labels(n, x))).unwrap();
        j["set_rank"] = json!({ "set": labels(n, x), "rank": r });
    }
    if a.connectivity {
        let report = connectivity_criteria(n);
        let tutte = m.tutte_connectivity()?;
        let beta = m.beta()?;
        writeln!(text, "Tutte connectivity {tutte}; beta {beta}").unwrap();
        writeln!(
            text,
            "criteria: 2-connected {}, 3-connected {} (interior connected {})",
            report.two_conn, report.three_conn, report.interior_connected
        )
        .unwrap();
        j["connectivity"] = json!({ "tutte": tutte, "beta": beta, "criteria": report });
    }
    Ok(Report::new(true, text, j))
}

fn poly_cmd(c: &Common, a: &PolyArgs) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut j = json!({});
    let mut ok = true;
    let wants_network = a.precoloring || a.chromatic || a.compare_cpintro || a.hexwheel_scan.is_none();
    if wants_network {
        let n = input::load(c)?.network;
        if a.precoloring || !(a.chromatic || a.compare_cpintro) {
            let p = poly::precoloring_poly(&n)?;
            writeln!(text, "{p}").unwrap();
            j["precoloring"] = poly_json(&p);
        }
        if a.chromatic {
            let chi = dirichlet_matroid(&n).char_poly()?;
            let nabla = poly::chromatic_poly(&n.add_clique())?;
            let gamma = poly::chromatic_poly(&n.graph())?;
            writeln!(text, "characteristic M(N): {chi}").unwrap();
            writeln!(text, "chromatic Γ: {gamma}").unwrap();
            writeln!(text, "chromatic ∇Γ: {nabla}").unwrap();
            j["characteristic"] = poly_json(&chi);
            j["chromatic_graph"] = poly_json(&gamma);
            j["chromatic_nabla"] = poly_json(&nabla);
        }
        if a.compare_cpintro {
            let cmp = poly::cpintro_compare(&n)?;
            ok &= cmp.verdict();
            writeln!(text, "oΓ coefficients  {:?}", cmp.a).unwrap();
            writeln!(text, "precoloring      {:?}", cmp.b).unwrap();
            writeln!(text, "a_i >= b_i: {}; equal below index {}: {}", cmp.dominated, cmp.min_crossing, cmp.equal_below_min_crossing)
                .unwrap();
            j["comparison"] = json!(cmp);
        }
    }
    if let Some(m) = a.hexwheel_scan {
        let report = poly::hexwheel_scan(m)?;
        // The printed recurrence is reported, not enforced.
        ok &= report.base_cases_hold && report.rows.iter().all(|r| r.closed_form_holds);
        for r in &report.rows {
            writeln!(
                text,
                "m={} {}  closed form {}  recurrence {}",
                r.m,
                r.computed,
                r.closed_form_holds,
                r.recurrence_holds.map_or("n/a".into(), |b| b.to_string())
            )
            .unwrap();
        }
        j["hexwheel_scan"] = json!(report);
    }
    Ok(Report::new(ok, text, j))
}

fn parse_vector(text: &str, len: usize) -> Result<Vec<BigRational>, CliError> {
    let v = text
        .split(',')
        .map(|s| s.trim().parse::<BigRational>().map_err(|_| CliError::Usage(format!("not a rational: {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != len {
        return Err(CliError::Usage(format!("expected {len} comma-separated weights in edge-label order, got {}", v.len())));
    }
    Ok(v)
}

fn matrix_text(m: &[Vec<BigRational>]) -> String {
    m.iter().map(|row| format!("  [{}]\n", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect()
}

fn electrical_cmd(n: &Network, a: &ElectricalArgs, c: &Common) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut j = json!({});
    let mut ok = true;
    let ne = n.edge_count();
    if let Some(x) = &a.response {
        let r = electrical::response(n, &parse_vector(x, ne)?)?;
        let names: Vec<&str> = r.boundary.iter().map(|&v| n.vertex_label(v)).collect();
        writeln!(text, "Λ over {}:\n{}trace {}", names.join(","), matrix_text(&r.lambda), r.trace()).unwrap();
        j["response"] = json!(r);
    }
    if a.identities {
        let points = c.limit.unwrap_or(DEFAULT_IDENTITY_POINTS);
        let g = poly::grove_polys(n);
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let (mut checked, mut singular, mut failed) = (0, 0, 0);
        while checked < points {
            let x = electrical::sample_point(&mut rng, ne);
            match electrical::grove_identities_with(n, &g, &x) {
                Ok(r) => {
                    checked += 1;
                    failed += usize::from(!r.holds());
                }
                Err(ElectricalError::SingularInterior) => singular += 1,
                Err(e) => return Err(e.into()),
            }
        }
        ok &= failed == 0;
        writeln!(text, "grove identities: {checked} points, {failed} failures, {singular} singular draws skipped").unwrap();
        j["identities"] = json!({ "points": checked, "failures": failed, "singular_skipped": singular });
    }
    if let Some(t) = a.hpp_sample {
        let h = electrical::hpp_sample(n, t, c.seed);
        let pp = electrical::proper_position_checks(n, t, c.seed);
        ok &= h.holds() && pp.holds();
        writeln!(
            text,
            "half-plane property: {} Rayleigh differences, {}; proper position: {} Wronskian and {} Cauchy-Schwarz checks, {}",
            h.checks,
            verdict(h.holds()),
            pp.wronskian_checks,
            pp.cauchy_schwarz_checks,
            verdict(pp.holds())
        )
        .unwrap();
        j["hpp"] = json!(h);
        j["proper_position"] = json!(pp);
    }
    if let Some(xy) = &a.interlace {
        let line = LineRestriction::new(parse_vector(&xy[0], ne)?, parse_vector(&xy[1], ne)?)?;
        let r = electrical::interlacing(n, &line)?;
        ok &= r.holds();
        writeln!(text, "P0(t) = {}\nP1(t) = {}", r.p0, r.p1).unwrap();
        for root in &r.roots {
            writeln!(text, "  root in [{}, {}] multiplicities P0 {} P1 {}", root.lo, root.hi, root.multiplicity[0], root.multiplicity[1])
                .unwrap();
        }
        writeln!(text, "real-rooted {}, interlacing {}", r.real_rooted, r.interlaces).unwrap();
        j["interlacing"] = json!(r);
    }
    if let Some(t) = a.bound_sample {
        let b = electrical::monotonicity_and_bound(n, t, c.seed);
        ok &= b.holds();
        writeln!(
            text,
            "monotonicity: {} checks; bound: {} checks ({} skipped); {}",
            b.monotonicity_checks,
            b.bound_checks,
            b.bound_skipped,
            verdict(b.holds())
        )
        .unwrap();
        j["bound"] = json!(b);
    }
    if text.is_empty() {
        return Err(CliError::Usage("choose --response, --identities, --hpp-sample, --interlace or --bound-sample".into()));
    }
    Ok(Report::new(ok, text, j))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn parse_field(text: &str) -> Result<Field, CliError> {
    let t = text.trim();
    let spelled = if t.chars().all(|c| c.is_ascii_digit()) { format!("GF({t})") } else { t.to_string() };
    Ok(Field::parse(&spelled)?)
}

fn rep(n: &Network, a: &RepArgs) -> Result<Report, CliError> {
    let field = parse_field(&a.field)?;
    let mut text = String::new();
    let mut ok = true;
    let j = match linrep::representability(n, field)? {
        Representability::Representable { matrix, verified, .. } => {
            writeln!(text, "representable over {field}").unwrap();
            writeln!(text, "columns: {}", matrix.column_labels.join(" ")).unwrap();
            for (label, row) in matrix.row_labels.iter().zip(matrix.dump()) {
                writeln!(text, "  {label}: [{}]", row.join(", ")).unwrap();
            }
            if a.check {
                ok &= verified;
                writeln!(text, "matrix matroid equals M(N): {verified}").unwrap();
            }
            json!({
                "field": field.to_string(),
                "representable": true,
                "rows": matrix.row_labels,
                "columns": matrix.column_labels,
                "matrix": matrix.dump(),
                "verified": verified,
            })
        }
        Representability::NotRepresentable(w) => {
            writeln!(text, "not representable over {field}: a block with {} boundary nodes gives U_2,{}", w.s, w.s + 1).unwrap();
            writeln!(text, "  delete {}  contract {}", brace(&w.delete), brace(&w.contract)).unwrap();
            if a.check {
                ok &= w.verified;
                writeln!(text, "minor verified: {}", w.verified).unwrap();
            }
            json!({ "field": field.to_string(), "representable": false, "witness": w })
        }
    };
    Ok(Report::new(ok, text, j))
}

fn dual(input: &Input, a: &DualArgs) -> Result<Report, CliError> {
    let c = input.circular()?;
    let mut text = String::new();
    let mut j = json!({});
    let mut ok = true;
    if a.build || !a.theorem_check {
        let d = c.dual_network()?;
        let dn = d.circular.network();
        let mut spec = dn.to_spec();
        spec.embedding = Some(d.circular.embedding_spec());
        writeln!(text, "N*: {} boundary regions, {} inner faces, {} edges", dn.boundary_count(), dn.interior_count(), dn.edge_count())
            .unwrap();
        for e in dn.edges() {
            writeln!(text, "  {}* joins {} and {}", e.label, dn.vertex_label(e.ends.0), dn.vertex_label(e.ends.1)).unwrap();
        }
        j["dual"] = json!(spec);
    }
    if a.theorem_check {
        let report = circular::duality_theorem_check(&c)?;
        ok &= report.holds();
        text.push_str(&duality_text(&c, &report));
        j["theorem"] = duality_json(&c, &report);
    }
    Ok(Report::new(ok, text, j))
}

fn duality_text(c: &CircularNetwork, r: &DualityReport) -> String {
    let n = c.network();
    let insulators: Vec<_> = r.cocircuits.iter().filter(|(_, k)| matches!(k, CocircuitClass::Insulator { .. })).collect();
    let mut text = format!(
        "{} cocircuits: {} from M(oΓ), {} of the form Y ∪ eh\n",
        r.cocircuits.len(),
        r.cocircuits.len() - insulators.len(),
        insulators.len()
    );
    for (z, class) in &insulators {
        if let CocircuitClass::Insulator { cover: Some(cover), .. } = class {
            writeln!(text, "  k={} {}", cover.k, brace(&labels(n, *z))).unwrap();
        }
    }
    let m = r.boundary;
    writeln!(
        text,
        "k range {}, required {:.2} <= k < {:.1}: {}; dichotomy {}",
        k_range(r),
        m as f64 / 4.0 + 0.5,
        m as f64 / 2.0 + 1.0,
        verdict(r.bounds_hold()),
        verdict(r.dichotomy_holds())
    )
    .unwrap();
    if let Some(iso) = r.two_boundary_isomorphism {
        writeln!(text, "M*(N) ≅ M(N*) under e ↦ e*: {iso}").unwrap();
    }
    text
}

fn k_range(r: &DualityReport) -> String {
    match (r.min_k, r.max_k) {
        (Some(a), Some(b)) => format!("{a}..={b}"),
        _ => "empty".into(),
    }
}

fn duality_json(c: &CircularNetwork, r: &DualityReport) -> Value {
    let n = c.network();
    let classes: Vec<Value> = r
        .cocircuits
        .iter()
        .map(|(z, class)| match class {
            CocircuitClass::Graphic { graph_cocircuit, dual_circuit } => json!({
                "cocircuit": labels(n, *z), "type": "graphic",
                "graph_cocircuit": graph_cocircuit, "dual_circuit": dual_circuit,
            }),
            CocircuitClass::Insulator { path_insulator, cover } => json!({
                "cocircuit": labels(n, *z), "type": "insulator", "path_insulator": path_insulator,
                "k": cover.as_ref().map(|c| c.k),
                "cover": cover.as_ref().map(|c| c.cover.iter().map(|&x| labels(n, x)).collect::<Vec<_>>()),
            }),
        })
        .collect();
    json!({
        "boundary": r.boundary,
        "min_k": r.min_k,
        "max_k": r.max_k,
        "dichotomy_holds": r.dichotomy_holds(),
        "bounds_hold": r.bounds_hold(),
        "two_boundary_isomorphism": r.two_boundary_isomorphism,
        "cocircuits": classes,
    })
}

struct SuiteLog {
    text: String,
    checks: Vec<Value>,
    ok: bool,
}

impl SuiteLog {
    fn record(&mut self, suite: &str, name: &str, pass: bool, detail: String) {
        writeln!(self.text, "{suite:<12} {name}: {} ({detail})", verdict(pass)).unwrap();
        self.checks.push(json!({ "suite": suite, "check": name, "pass": pass, "detail": detail }));
        self.ok &= pass;
    }
}

fn verify(input: &Input, suite: Suite, c: &Common) -> Result<Report, CliError> {
    let n = &input.network;
    let mut log = SuiteLog { text: String::new(), checks: Vec::new(), ok: true };
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Oracles) {
        let m = dirichlet_matroid(n);
        m.check_limit()?;
        let groves = grove_matroid(n)?;
        log.record("oracles", "grove bases", m.same_rank_function(&groves)?, format!("{} subsets", 1u64 << m.len()));
        log.record("oracles", "lift rank", m.same_rank_function(&lift_matroid(n))?, format!("{} subsets", 1u64 << m.len()));
        let u = linrep::block_injective_u(n, Field::Rational)?;
        let linear = linrep::representation_matrix(n, &u)?.matroid();
        log.record("oracles", "Q representation", m.same_rank_function(&linear)?, "block-injective u".into());
        let chi = m.char_poly()?;
        let lhs = &chi * &IntPoly::falling_factorial(0, n.boundary_count());
        let rhs = &IntPoly::linear(1) * &poly::chromatic_poly(&n.add_clique())?;
        log.record("oracles", "characteristic identity", lhs == rhs, chi.to_string());
        let phi = poly::precoloring_poly(n)?;
        let counts = (n.boundary_count()..=5).all(|k| phi.eval(k as i128) == poly::precolor_count(n, k) as i128);
        log.record("oracles", "precoloring counts", counts, phi.to_string());
    }
    if wants(Suite::Connectivity) {
        let m = dirichlet_matroid(n);
        let report = connectivity_criteria(n);
        if m.len() <= TUTTE_LIMIT {
            let t = m.tutte_connectivity()?;
            let agree = report.two_conn == t.at_least(2) && report.three_conn == t.at_least(3);
            log.record("connectivity", "criteria vs Tutte", agree, format!("Tutte {t}"));
        }
        let nabla = n.add_clique();
        if nabla.edge_count() <= m.limit() {
            let lhs = m.beta()? * (1..=n.boundary_count() as i128 - 2).product::<i128>();
            let rhs = Matroid::graphic(&nabla).beta()?;
            log.record("connectivity", "beta identity", lhs == rhs, format!("β(M(N))·(m−2)! = {lhs}, β(M(∇Γ)) = {rhs}"));
        }
    }
    if wants(Suite::Hpp) {
        let t = c.limit.map_or(DEFAULT_SAMPLES, |l| l as u64);
        let h = electrical::hpp_sample(n, t, c.seed);
        log.record("hpp", "Rayleigh differences", h.holds(), format!("{} checks at {t} points", h.checks));
        let pp = electrical::proper_position_checks(n, t, c.seed);
        log.record("hpp", "proper position", pp.holds(), format!("{} Cauchy-Schwarz checks", pp.cauchy_schwarz_checks));
        let sweep = electrical::interlacing_sample(n, VERIFY_LINES, c.seed);
        log.record("hpp", "interlacing", sweep.holds(), format!("{} lines", sweep.lines));
        let b = electrical::monotonicity_and_bound(n, t, c.seed);
        log.record("hpp", "monotonicity and bound", b.holds(), format!("{} bound checks", b.bound_checks));
    }
    if wants(Suite::Duality) {
        if input.has_embedding() {
            let circ = input.circular()?;
            let r = circular::duality_theorem_check(&circ)?;
            log.record("duality", "cocircuit dichotomy", r.dichotomy_holds(), format!("{} cocircuits", r.cocircuits.len()));
            log.record("duality", "cover bounds", r.bounds_hold(), format!("k range {}", k_range(&r)));
            if let Some(iso) = r.two_boundary_isomorphism {
                log.record("duality", "two-boundary isomorphism", iso, "e ↦ e*".into());
            }
        } else if suite == Suite::Duality {
            return Err(circular::CircularError::MissingEmbedding.into());
        } else {
            writeln!(log.text, "{:<12} skipped (no disk embedding)", "duality").unwrap();
        }
    }
    let j = json!({ "ok": log.ok, "checks": log.checks });
    Ok(Report::new(log.ok, log.text, j))
}
