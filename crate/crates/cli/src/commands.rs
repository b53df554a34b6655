use std::fmt::Write as _;
use std::io::Read;

use anyhow::{bail, ensure, Context, Result};
use double_a::certify::{
    self, default_bound, sample_rho, verify_certificate, ClassSystem, ConstructiveBuilder,
    StabilityCertificate, Verdict,
};
use double_a::chi::{family_report, ChiFamilies, ChiRoute, FamilyId};
use double_a::rnc::RncClassSystem;
use double_a::sections::sections_report;
use double_a::slope::{
    bielliptic_classify, bielliptic_table, polarization_slope, render_table, trigonal_comparison,
    BiellipticStatus,
};
use double_a::{Monomial, OccurrenceVector, RhoWeights};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{
    read_integers, BiellipticArgs, CertifyArgs, ChiBasisArgs, FamilyArgs, FamilyName, FuzzArgs,
    KempfArgs, SectionsArgs, SlopeArgs, SweepArgs, VerifyArgs,
};

/// Process exit status for a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Nonsemistable,
    Rejected,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Nonsemistable => 2,
            Status::Rejected => 1,
        }
    }

    fn from_verdict(nonsemistable: bool) -> Self {
        if nonsemistable {
            Status::Nonsemistable
        } else {
            Status::Success
        }
    }
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

/// `{"command": name, ...fields}`, then the fields of `body` if it is an object.
fn envelope(command: &str, head: Value, body: impl Serialize) -> Result<Value> {
    let mut out = Map::new();
    out.insert("command".into(), command.into());
    let mut merge = |v: Value| {
        if let Value::Object(o) = v {
            out.extend(o);
        }
    };
    merge(head);
    merge(serde_json::to_value(body)?);
    Ok(Value::Object(out))
}

fn check_km(k: usize, m: u32) -> Result<()> {
    ensure!(k >= 2, "--k must be at least 2, got {k}");
    ensure!(m >= 2, "--m must be at least 2, got {m}");
    Ok(())
}

fn rho(source: &str, k: usize) -> Result<RhoWeights> {
    let values = read_integers(source)?;
    ensure!(
        values.len() == 2 * k,
        "expected 2k = {} weights (λ block then ν block), got {}",
        2 * k,
        values.len()
    );
    Ok(RhoWeights::from_flat(&values)?)
}

fn list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn occurrence_table(occ: &OccurrenceVector) -> String {
    let mut s = String::from("  i      x_i    y_i\n");
    for (i, (x, y)) in occ.x.iter().zip(&occ.y).enumerate() {
        let _ = writeln!(s, "  {:<4} {x:>6} {y:>6}", i + 1);
    }
    s
}

fn system(k: usize, m: u32, toy: bool) -> Result<ClassSystem> {
    Ok(if toy {
        ClassSystem::toy(k, m)?
    } else {
        ClassSystem::new(k, m)?
    })
}

pub fn certify(a: &CertifyArgs) -> Result<Report> {
    check_km(a.k, a.m)?;
    ensure!(!(a.toy && a.mode.constructive()), "--toy only supports --mode lp");
    ensure!(a.trials >= 1, "--trials must be at least 1");
    let weights = a.weights.as_deref().map(|w| rho(w, a.k)).transpose()?;
    let (k, m) = (a.k, a.m);
    let mut json = Map::new();
    json.insert("command".into(), "certify".into());
    json.insert("k".into(), k.into());
    json.insert("g".into(), (2 * k).into());
    json.insert("m".into(), m.into());
    json.insert("system".into(), if a.toy { "toy" } else { "curve" }.into());
    let mut text = format!(
        "certify k={k} (g={}) m={m}{}\n",
        2 * k,
        if a.toy { " [toy system]" } else { "" }
    );
    let mut verdicts = Vec::new();

    if a.mode.lp() {
        let sys = system(k, m, a.toy)?;
        let cert = certify::certify(&sys)?;
        let verification = verify_certificate(&cert, &sys);
        ensure!(
            verification.pass,
            "certificate failed self-verification: {:?}",
            verification.problems
        );
        let mut block = json!({ "certificate": cert, "verification": verification });
        let pivots = cert.solver.as_ref().map_or(0, |s| s.pivots);
        match &cert.destabilizer {
            None => {
                let _ = writeln!(
                    text,
                    "  lp: {} (barycenter witness over {} classes, {} monomials, {pivots} pivots, verified)",
                    cert.verdict,
                    sys.classes().len(),
                    sys.monomial_count()
                );
            }
            Some(d) => {
                let _ = writeln!(
                    text,
                    "  lp: {} (destabilizer λ={} ν={}, min basis weight {}, verified)",
                    cert.verdict,
                    list(&d.lambda),
                    list(&d.nu),
                    d.min_weight
                );
            }
        }
        if let Some(r) = &weights {
            let w = sys.min_weight(r)?;
            block["probe"] = json!({ "rho": r.flat(), "min_weight": w });
            let _ = writeln!(text, "  lp: minimum basis weight at ρ={r}: {w}");
        }
        verdicts.push(cert.verdict);
        json.insert("lp".into(), block);
    }

    if a.mode.constructive() {
        let builder = ConstructiveBuilder::new(k, m)?;
        let block = match &weights {
            Some(r) => {
                let basis = builder.build(r)?;
                let _ = writeln!(
                    text,
                    "  constructive: SEMISTABLE evidence at ρ={r}: weight {} = {} (ω) + {} (η) + {} (χ via {})",
                    basis.weight,
                    basis.weight_omega,
                    basis.weight_eta,
                    basis.weight_chi,
                    route_name(&basis.chi_route)
                );
                json!({
                    "verdict": Verdict::Semistable,
                    "source": "weights",
                    "rho": r.flat(),
                    "max_weight": basis.weight,
                    "basis": basis,
                })
            }
            None => {
                let bound = a.bound.unwrap_or_else(|| default_bound(k, m));
                ensure!(bound >= 1, "--bound must be at least 1");
                let weights: Vec<(u64, i64)> = (0..a.trials)
                    .into_par_iter()
                    .map(|t| builder.build(&sample_rho(k, bound, a.seed, t)).map(|b| (t, b.weight)))
                    .collect::<double_a::Result<_>>()?;
                let (arg, max) = weights
                    .iter()
                    .copied()
                    .fold((0, i64::MIN), |best, (t, w)| if w > best.1 { (t, w) } else { best });
                let _ = writeln!(
                    text,
                    "  constructive: SEMISTABLE evidence on {} sampled ρ (seed {}, bound {bound}): max weight {max}",
                    a.trials, a.seed
                );
                json!({
                    "verdict": Verdict::Semistable,
                    "source": "sampled",
                    "trials": a.trials,
                    "seed": a.seed,
                    "bound": bound,
                    "max_weight": max,
                    "argmax_trial": arg,
                    "argmax_rho": sample_rho(k, bound, a.seed, arg).flat(),
                })
            }
        };
        verdicts.push(Verdict::Semistable);
        json.insert("constructive".into(), block);
    }

    let verdict = verdicts[0];
    let agree = verdicts.iter().all(|v| *v == verdict);
    ensure!(agree, "lp and constructive verdicts disagree");
    if a.mode == crate::args::Mode::Both {
        json.insert("modes_agree".into(), agree.into());
    }
    json.insert("verdict".into(), serde_json::to_value(verdict)?);
    json.insert("condition".into(), certify::CONDITION.into());
    let _ = writeln!(text, "verdict: {verdict}");
    Ok(Report {
        json: Value::Object(json),
        text,
        status: Status::from_verdict(verdict == Verdict::Nonsemistable),
    })
}

fn route_name(route: &ChiRoute) -> String {
    match route {
        ChiRoute::Family { id } => id.to_string(),
        ChiRoute::Optimal => "exact minimum".into(),
    }
}

fn by_degree_listing(mons: &[&Monomial]) -> String {
    let mut s = String::new();
    for mon in mons {
        let _ = writeln!(s, "  {:>5}  {mon}", mon.weighted_degree());
    }
    s
}

pub fn chi_basis(a: &ChiBasisArgs) -> Result<Report> {
    check_km(a.k, a.m)?;
    let r = rho(&a.weights, a.k)?;
    let families = ChiFamilies::new(a.k, a.m)?;
    let sel = families.nonpositive(&r)?;
    let dispatch = if a.m == 2 {
        let s = r.last_pair_sum();
        match sel.route {
            ChiRoute::Family { id } => format!(
                "λ_k+ν_k = {s} {} 0: {id} selected",
                if s >= 0 { ">=" } else { "<" }
            ),
            ChiRoute::Optimal => format!("λ_k+ν_k = {s}: exact minimum used"),
        }
    } else {
        match sel.route {
            ChiRoute::Family { id } => format!(
                "lightest of the {} T/S family members: {id}",
                4 * (a.k - 1)
            ),
            ChiRoute::Optimal => "no family member non-positive: exact minimum used".into(),
        }
    };
    let mut text = format!(
        "χ-basis k={} (g={}) m={} ρ={r}\n  route: {dispatch}\n  weight: {}\n  monomials by weighted degree:\n",
        a.k,
        2 * a.k,
        a.m,
        sel.weight
    );
    text.push_str(&by_degree_listing(&sel.basis.by_degree()));
    let mut json = json!({
        "command": "chi-basis",
        "k": a.k,
        "g": 2 * a.k,
        "m": a.m,
        "rho": r.flat(),
        "route": sel.route,
        "dispatch": dispatch,
        "weight": sel.weight,
        "basis": sel.basis.monomials(),
    });
    if a.optimal {
        let (basis, weight) = families.optimal(&r)?;
        let _ = writeln!(text, "  exact minimum over all χ-bases: {weight}");
        text.push_str(&by_degree_listing(&basis.by_degree()));
        json["optimal"] = json!({ "weight": weight, "basis": basis.monomials() });
    }
    Ok(Report {
        json,
        text,
        status: Status::Success,
    })
}

pub fn family(a: &FamilyArgs) -> Result<Report> {
    check_km(a.k, a.m)?;
    let need_s = || a.s.context("--s is required for T and S families");
    let id = match a.family {
        FamilyName::B1 => FamilyId::B1,
        FamilyName::B2 => FamilyId::B2,
        FamilyName::T => FamilyId::T { s: need_s()?, primed: false },
        FamilyName::TPrimed => FamilyId::T { s: need_s()?, primed: true },
        FamilyName::S => FamilyId::S { s: need_s()?, mirrored: false },
        FamilyName::SMirrored => FamilyId::S { s: need_s()?, mirrored: true },
    };
    let report = family_report(a.k, a.m, id)?;
    let mut text = format!(
        "family {} k={} (g={}) m={}\n  validity: {} ({} monomials, expected {}){}\n  occurrences:\n",
        report.family,
        a.k,
        2 * a.k,
        a.m,
        pass(report.valid),
        report.validity.size,
        report.validity.expected_size,
        if report.valid { String::new() } else { format!(": {}", report.validity.summary()) }
    );
    text.push_str(&occurrence_table(&report.occurrence));
    match report.weight_decomposition {
        Some(d) => {
            let _ = writeln!(
                text,
                "  weight = {}·(λ_k+ν_k) + {}·Σ_(i<k)(λ_i+ν_i) = {}·(λ_k+ν_k)",
                d.c_k,
                d.c_rest,
                d.multiple()
            );
        }
        None => text.push_str("  weight has no single-multiple form\n"),
    }
    if report.repairs.is_empty() {
        text.push_str("  repairs: none\n");
    } else {
        text.push_str("  repairs (literal -> shipped):\n");
        for r in &report.repairs {
            let _ = writeln!(text, "    {}: {} -> {}", r.location, r.literal, r.shipped);
        }
    }
    text.push_str("  monomials:\n");
    let mut mons: Vec<&Monomial> = report.monomials.iter().collect();
    mons.sort_by_key(|m| m.weighted_degree());
    text.push_str(&by_degree_listing(&mons));
    let multiple = report.weight_decomposition.map(|d| d.multiple());
    let json = envelope(
        "family",
        json!({ "g": 2 * a.k, "multiple": multiple }),
        &report,
    )?;
    Ok(Report {
        json,
        text,
        status: Status::Success,
    })
}

pub fn sections(a: &SectionsArgs) -> Result<Report> {
    check_km(a.k, a.m)?;
    let r = sections_report(a.k, a.m)?;
    let mut text = format!(
        "sections k={} (g={}) m={}\n  {} basis sections, expected (2m-1)(2k-1) = {}: {}\n  independence: {}\n  product witnesses: {}\n  scroll minors ({}): {}\n  cotangent identities ({}): {}\n  torus weights {}: {}\n",
        r.k,
        r.g,
        r.m,
        r.dimension,
        r.expected_dimension,
        pass(r.dimension == r.expected_dimension),
        pass(r.independent),
        pass(r.witnesses_consistent),
        r.scroll.minors.len(),
        pass(r.scroll.pass),
        r.cotangent.identities.len(),
        pass(r.cotangent.pass),
        list(&r.torus.weights),
        pass(r.torus.multiplicity_free),
    );
    for d in &r.listing_discrepancies {
        let _ = writeln!(
            text,
            "  listed closed form: {} component {} exponent {} (product gives {})",
            d.label, d.component, d.listed_exponent, d.product_exponent
        );
    }
    for s in &r.sections {
        let _ = writeln!(
            text,
            "  {:<10} {:<16} [{}, {}, {}]",
            s.label.to_string(),
            s.witness.to_string(),
            s.components[0],
            s.components[1],
            s.components[2]
        );
    }
    let _ = writeln!(text, "overall: {}", pass(r.pass));
    Ok(Report {
        json: envelope("sections", json!({}), &r)?,
        text,
        status: if r.pass { Status::Success } else { Status::Rejected },
    })
}

pub fn bielliptic(a: &BiellipticArgs) -> Result<Report> {
    if a.g.is_single() && a.m.is_single() {
        let v = bielliptic_classify(a.g.lo, a.m.lo)?;
        let mut text = format!(
            "bielliptic g={} m={}\n  s_m = {}\n  weight bound = {}\n  verdict: {}\n  destabilizer ρ = (-1, ..., -1, {})\n  2m <= g-3: {}\n",
            v.g,
            v.m,
            v.s_m,
            v.weight_bound,
            v.verdict,
            v.g - 1,
            v.in_threshold_range
        );
        if let Some(note) = &v.note {
            let _ = writeln!(text, "  note: {note}");
        }
        let status = Status::from_verdict(v.verdict == BiellipticStatus::Nonsemistable);
        return Ok(Report {
            json: envelope("bielliptic", json!({}), &v)?,
            text,
            status,
        });
    }
    let rows = bielliptic_table(a.g.iter(), a.m.iter())?;
    let any = rows.iter().any(|r| r.verdict == BiellipticStatus::Nonsemistable);
    Ok(Report {
        json: json!({ "command": "bielliptic", "g": a.g.to_string(), "m": a.m.to_string(), "rows": rows }),
        text: render_table(&rows),
        status: Status::from_verdict(any),
    })
}

pub fn slope(a: &SlopeArgs) -> Result<Report> {
    let s = polarization_slope(a.g, a.m)?;
    let mut text = format!(
        "slope g={} m={}\n  λ coefficient {}, δ coefficient {}\n  slope = {}\n",
        s.g, s.m, s.lambda_coefficient, s.delta_coefficient, s.slope
    );
    let mut json = envelope("slope", json!({}), &s)?;
    if a.g >= 3 {
        let t = trigonal_comparison(a.g)?;
        let _ = writeln!(
            text,
            "  trigonal maximum 36(g+1)/(5g+1) = {} <= slope(g,3) = {}: {}\n  (g-3)(2g-5) = {}",
            t.trigonal_max, t.slope_m3, t.holds, t.factor
        );
        json["trigonal"] = serde_json::to_value(&t)?;
    }
    Ok(Report {
        json,
        text,
        status: Status::Success,
    })
}

pub fn fuzz(a: &FuzzArgs) -> Result<Report> {
    check_km(a.k, a.m)?;
    let sys = system(a.k, a.m, a.toy)?;
    let bound = a.bound.unwrap_or_else(|| default_bound(a.k, a.m));
    let injected: Vec<RhoWeights> = a.weights.as_deref().map(|w| rho(w, a.k)).transpose()?.into_iter().collect();
    let r = certify::fuzz(&sys, a.trials, a.seed, bound, &injected)?;
    let text = format!(
        "fuzz k={} (g={}) m={}{}\n  {} trials (seed {}, bound {}, {} injected)\n  max min-basis weight {} at trial {} ρ={}\n  positive trials: {}\n",
        r.k,
        2 * r.k,
        r.m,
        if a.toy { " [toy system]" } else { "" },
        r.trials,
        r.seed,
        r.bound,
        r.injected,
        r.max_weight,
        r.argmax_trial,
        list(&r.argmax_rho),
        r.positive_trials
    );
    let status = Status::from_verdict(r.max_weight > 0);
    Ok(Report {
        json: envelope(
            "fuzz",
            json!({ "g": 2 * a.k, "system": if a.toy { "toy" } else { "curve" } }),
            &r,
        )?,
        text,
        status,
    })
}

pub fn kempf(a: &KempfArgs) -> Result<Report> {
    ensure!(a.k >= 2, "--k must be at least 2, got {}", a.k);
    ensure!(a.m >= 1, "--m must be at least 1");
    let lambda = read_integers(&a.weights)?;
    ensure!(lambda.len() == a.k, "expected k = {} weights, got {}", a.k, lambda.len());
    let sys = RncClassSystem::new(a.k, a.m)?;
    let r = sys.kempf_check(&lambda)?;
    let (basis, _) = sys.min_weight_basis(&lambda)?;
    let mut text = format!(
        "kempf k={} m={} λ={}\n  minimum basis weight {}\n  bound m·(m(k-1)+1)·mean(λ) = {}\n  within bound: {}\n  minimum basis:",
        r.k,
        r.m,
        list(&r.lambda),
        r.min_weight,
        r.bound,
        pass(r.pass)
    );
    for mon in &basis {
        let _ = write!(text, " {mon}");
    }
    text.push('\n');
    let status = if r.pass { Status::Success } else { Status::Rejected };
    Ok(Report {
        json: envelope("kempf", json!({ "basis": basis }), &r)?,
        text,
        status,
    })
}

#[derive(Serialize)]
struct SweepRow {
    k: usize,
    g: usize,
    m: u32,
    classes: usize,
    monomials: usize,
    verdict: Verdict,
    verified: bool,
    pivots: usize,
}

pub fn sweep(a: &SweepArgs) -> Result<Report> {
    ensure!(a.k.lo >= 2 && a.m.lo >= 2, "sweep needs k >= 2 and m >= 2");
    let grid: Vec<(usize, u32)> = a
        .k
        .iter()
        .flat_map(|k| a.m.iter().map(move |m| (k as usize, m as u32)))
        .collect();
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&(k, m)| {
            let sys = ClassSystem::new(k, m)?;
            let cert = certify::certify(&sys)?;
            Ok(SweepRow {
                k,
                g: 2 * k,
                m,
                classes: sys.classes().len(),
                monomials: sys.monomial_count(),
                verdict: cert.verdict,
                verified: verify_certificate(&cert, &sys).pass,
                pivots: cert.solver.map_or(0, |s| s.pivots),
            })
        })
        .collect::<double_a::Result<_>>()?;
    if let Some(r) = rows.iter().find(|r| !r.verified) {
        bail!("certificate for k={} m={} failed self-verification", r.k, r.m);
    }
    let mut text = format!(
        "{:>3} {:>3} {:>3} {:>8} {:>10} {:>14} {:>8} {:>7}\n",
        "k", "g", "m", "classes", "monomials", "verdict", "verified", "pivots"
    );
    for r in &rows {
        let _ = writeln!(
            text,
            "{:>3} {:>3} {:>3} {:>8} {:>10} {:>14} {:>8} {:>7}",
            r.k,
            r.g,
            r.m,
            r.classes,
            r.monomials,
            r.verdict.to_string(),
            r.verified,
            r.pivots
        );
    }
    let any = rows.iter().any(|r| r.verdict == Verdict::Nonsemistable);
    Ok(Report {
        json: json!({ "command": "sweep", "k": a.k.to_string(), "m": a.m.to_string(), "rows": rows }),
        text,
        status: Status::from_verdict(any),
    })
}

pub fn verify(a: &VerifyArgs) -> Result<Report> {
    let raw = if a.certificate == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&a.certificate)
            .with_context(|| format!("reading {}", a.certificate))?
    };
    let value: Value = serde_json::from_str(&raw).context("certificate is not valid JSON")?;
    // accept either a bare certificate or `certify --format json` output
    let cert_value = value
        .get("lp")
        .and_then(|lp| lp.get("certificate"))
        .cloned()
        .unwrap_or(value);
    let cert: StabilityCertificate =
        serde_json::from_value(cert_value).context("not a stability certificate")?;
    let sys = system(cert.k, cert.m, a.toy)?;
    let report = verify_certificate(&cert, &sys);
    let mut text = format!(
        "verify k={} m={} verdict {}: {}\n",
        cert.k,
        cert.m,
        cert.verdict,
        if report.pass { "ACCEPTED" } else { "REJECTED" }
    );
    for p in &report.problems {
        let _ = writeln!(text, "  {p}");
    }
    Ok(Report {
        json: envelope(
            "verify",
            json!({ "k": cert.k, "m": cert.m, "verdict": cert.verdict }),
            &report,
        )?,
        text,
        status: if report.pass { Status::Success } else { Status::Rejected },
    })
}
