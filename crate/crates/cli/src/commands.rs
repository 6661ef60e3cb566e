use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use origami_core::greens::{
    check_core_d_related, check_h_trivial, check_jones_caps, check_regular_r, check_theorem_main,
    compute_greens, is_aperiodic, GreensStructure, Relation,
};
use origami_core::jones::check_diagram_oracle;
use origami_core::origami::{
    check_conjecture, check_finiteness, compare_tables, verify_identities, verify_projections,
    verify_submonoids, ConjectureRules, FormTag, RegularForms,
};
use origami_core::{kb_complete, tc_enumerate, Family, MonoidTable, Report};
use serde_json::{json, Map, Value};

use crate::cache::TableFile;
use crate::config::{Engine, Format, RunConfig, Suite};
use crate::error::{CliError, CliResult};
use crate::output::{emit, json_text};
use crate::pipeline::{obtain, presentation, Obtained};

/// Bumped whenever a report layout changes.
pub const REPORT_VERSION: u32 = 1;

fn format_for(cfg: &RunConfig, allowed: &[Format], command: &str) -> CliResult<Format> {
    let f = cfg.format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(
            format!("{command} does not support --format {f:?}").to_lowercase(),
        ))
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn finish(cfg: &RunConfig, text: String) -> CliResult<u8> {
    emit(cfg.out.as_deref(), &text)?;
    Ok(0)
}

pub fn enumerate(cfg: &RunConfig) -> CliResult<u8> {
    let fmt = format_for(cfg, &[Format::Json, Format::Text], "enumerate")?;
    let t = Instant::now();
    let ob = obtain(cfg)?;
    if ob.source == "cache" {
        eprintln!("origami: loaded from cache");
    }
    let m = &ob.table;
    let text = match fmt {
        Format::Text => format!(
            "{} n={}: {} elements ({} non-identity)\n",
            m.family(),
            m.rank(),
            m.size(),
            m.size() - 1
        ),
        _ => json_text(&json!({
            "report_version": REPORT_VERSION,
            "family": m.family().name(),
            "n": m.rank(),
            "engine": cfg.engine.name(),
            "include_redundant": cfg.include_redundant,
            "generators": m.generator_count(),
            "size": m.size(),
            "non_identity_size": m.size() - 1,
            "timing_ms": elapsed_ms(t),
        })),
    };
    finish(cfg, text)
}

fn histogram(classes: &[Vec<origami_core::ElementId>]) -> Vec<[usize; 2]> {
    let mut h: BTreeMap<usize, usize> = BTreeMap::new();
    for c in classes {
        *h.entry(c.len()).or_default() += 1;
    }
    h.into_iter().map(|(s, c)| [s, c]).collect()
}

pub fn greens(cfg: &RunConfig) -> CliResult<u8> {
    let fmt = format_for(cfg, &[Format::Json, Format::Text], "greens")?;
    let t = Instant::now();
    let ob = obtain(cfg)?;
    let m = &ob.table;
    let g = compute_greens(m);
    let ap = is_aperiodic(m);
    let text = match fmt {
        Format::Text => egg_boxes(m, &g)?,
        _ => {
            let mut counts = Map::new();
            let mut hist = Map::new();
            for rel in Relation::ALL {
                counts.insert(rel.name().into(), json!(g.class_count(rel)));
                hist.insert(rel.name().into(), json!(histogram(g.classes(rel))));
            }
            let d_classes: Vec<Value> = g
                .classes(Relation::D)
                .iter()
                .enumerate()
                .map(|(d, elems)| {
                    let boxm = g.egg_box(d as u32).unwrap_or_default();
                    json!({
                        "id": d,
                        "size": elems.len(),
                        "representative": m.rep(elems[0]).to_string(),
                        "r_classes": boxm.len(),
                        "l_classes": boxm.first().map_or(0, Vec::len),
                    })
                })
                .collect();
            json_text(&json!({
                "report_version": REPORT_VERSION,
                "family": m.family().name(),
                "n": m.rank(),
                "size": m.size(),
                "counts": counts,
                "histograms": hist,
                "d_equals_j": g.d_equals_j(),
                "h_trivial": g.is_h_trivial(),
                "aperiodic": ap.aperiodic,
                "aperiodicity_exponent": ap.exponent,
                "d_classes": d_classes,
                "d_order": g.d_order(),
                "timing_ms": elapsed_ms(t),
            }))
        }
    };
    finish(cfg, text)
}

fn egg_boxes(m: &MonoidTable, g: &GreensStructure) -> CliResult<String> {
    let mut s = String::new();
    for d in 0..g.class_count(Relation::D) {
        let boxm = g.egg_box(d as u32)?;
        let cols = boxm.first().map_or(0, Vec::len);
        let _ = writeln!(
            s,
            "D-class {d}: {} R-classes x {cols} L-classes",
            boxm.len()
        );
        for row in &boxm {
            let cells: Vec<String> = row
                .iter()
                .map(|cell| {
                    cell.iter()
                        .map(|&e| m.rep(e).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect();
            let _ = writeln!(s, "  | {} |", cells.join(" | "));
        }
    }
    Ok(s)
}

/// Lazily built inputs shared by the suites of one `verify` run.
struct Ctx<'a> {
    cfg: &'a RunConfig,
    ob: Obtained,
    greens: Option<GreensStructure>,
    jones: Option<(MonoidTable, GreensStructure)>,
}

impl Ctx<'_> {
    fn greens(&mut self) -> &GreensStructure {
        self.greens
            .get_or_insert_with(|| compute_greens(&self.ob.table))
    }

    fn jones(&mut self) -> CliResult<&(MonoidTable, GreensStructure)> {
        if self.jones.is_none() {
            let j = if self.cfg.family == Family::Jones {
                self.ob.table.clone()
            } else {
                obtain(&self.cfg.jones())?.table
            };
            let gj = compute_greens(&j);
            self.jones = Some((j, gj));
        }
        Ok(self.jones.as_ref().expect("set above"))
    }

    fn run(&mut self, suite: Suite) -> CliResult<Report> {
        let n = self.cfg.n;
        Ok(match suite {
            Suite::Identities => verify_identities(&self.ob.table)?,
            Suite::Submonoids => {
                let j = self.jones()?.0.clone();
                verify_submonoids(&self.ob.table, &j)?
            }
            Suite::Conjecture => check_conjecture(&self.ob.table, ConjectureRules::default())?,
            Suite::Projections => {
                let max_len = match n {
                    0..=5 => 6,
                    6 => 5,
                    _ => 4,
                };
                verify_projections(&self.ob.table, &self.ob.presentation, max_len)?
            }
            Suite::HTrivial => {
                self.greens();
                check_h_trivial(&self.ob.table, self.greens.as_ref().expect("computed"))
            }
            Suite::RegularR => check_regular_r(&self.ob.table, self.ob.table.size() <= 5000)?,
            Suite::Core => {
                self.greens();
                check_core_d_related(&self.ob.table, self.greens.as_ref().expect("computed"))?
            }
            Suite::Theorem => {
                self.greens();
                self.jones()?;
                let (j, gj) = self.jones.as_ref().expect("computed");
                check_theorem_main(
                    &self.ob.table,
                    self.greens.as_ref().expect("computed"),
                    j,
                    gj,
                )?
            }
            Suite::Redundancy => {
                let other = self.cfg.with_redundant(!self.cfg.include_redundant);
                let t = obtain(&RunConfig {
                    engine: Engine::Tc,
                    ..other
                })?
                .table;
                compare_tables(&self.ob.table, &t, "redundancy")
            }
            Suite::Finiteness => check_finiteness(&self.ob.table)?,
            Suite::JonesCaps => {
                self.greens();
                check_jones_caps(&self.ob.table, self.greens.as_ref().expect("computed"))?
            }
            Suite::Diagrams => check_diagram_oracle(&self.ob.table)?,
            Suite::Engines => {
                let p = presentation(self.cfg)?;
                let sys = kb_complete(&p, self.cfg.budget);
                if !sys.is_complete() {
                    return Err(CliError::Budget("completion stopped at its budget".into()));
                }
                let kb = sys.to_table()?;
                let tc = tc_enumerate(&p, self.cfg.tc)?;
                let mut rep = compare_tables(&kb, &tc, "engines");
                rep.metric("rules", sys.len() as u64);
                rep
            }
            Suite::All => unreachable!("expanded before running"),
        })
    }
}

fn report_json(r: &Report) -> Value {
    let metrics: Map<String, Value> = r
        .metrics
        .iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    json!({
        "suite": r.suite,
        "n": r.n,
        "instances_checked": r.instances_checked,
        "failures": r.failures,
        "passed": r.passed(),
        "vacuous": r.is_vacuous(),
        "metrics": metrics,
        "notes": r.notes,
    })
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> CliResult<u8> {
    let fmt = format_for(cfg, &[Format::Json, Format::Text], "verify")?;
    if !suite.applies_to(cfg.family) {
        return Err(CliError::Usage(format!(
            "suite {} does not apply to {} monoids",
            suite.name(),
            cfg.family
        )));
    }
    let t = Instant::now();
    let mut ctx = Ctx {
        cfg,
        ob: obtain(cfg)?,
        greens: None,
        jones: None,
    };
    let mut reports = Vec::new();
    for s in suite.expand(cfg.family) {
        reports.push(ctx.run(s)?);
    }
    let instances: u64 = reports.iter().map(|r| r.instances_checked).sum();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures.iter().map(move |f| format!("{}: {f}", r.suite)))
        .collect();
    let passed = failures.is_empty();
    let text = match fmt {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let status = if !r.passed() {
                    "FAIL"
                } else if r.is_vacuous() {
                    "vacuous"
                } else {
                    "pass"
                };
                let _ = writeln!(
                    s,
                    "{}: {status} ({} instances)",
                    r.suite, r.instances_checked
                );
                for f in &r.failures {
                    let _ = writeln!(s, "  {f}");
                }
            }
            s
        }
        _ => json_text(&json!({
            "report_version": REPORT_VERSION,
            "suite": suite.name(),
            "family": cfg.family.name(),
            "n": cfg.n,
            "instances_checked": instances,
            "failures": failures,
            "passed": passed,
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
            "timing_ms": elapsed_ms(t),
        })),
    };
    emit(cfg.out.as_deref(), &text)?;
    Ok(if passed { 0 } else { 1 })
}

pub fn normal_forms(cfg: &RunConfig) -> CliResult<u8> {
    let fmt = format_for(cfg, &[Format::Text, Format::Json], "normal-forms")?;
    if cfg.family != Family::Origami {
        return Err(CliError::Usage(
            "normal-forms needs --monoid origami".into(),
        ));
    }
    let ob = obtain(cfg)?;
    let m = &ob.table;
    let forms = RegularForms::compute(m)?;
    let text = match fmt {
        Format::Json => {
            let counts = forms.tag_counts();
            let tags: Map<String, Value> = FormTag::ALL
                .iter()
                .map(|t| (t.name().to_string(), json!(counts[*t as usize])))
                .collect();
            let list: Vec<Value> = m
                .elements()
                .map(|e| {
                    let f = forms.get(e);
                    json!({
                        "element": e.0,
                        "representative": m.rep(e).to_string(),
                        "tag": f.tag.name(),
                        "form": f.to_string(),
                    })
                })
                .collect();
            json_text(&json!({
                "report_version": REPORT_VERSION,
                "n": cfg.n,
                "size": m.size(),
                "candidates_evaluated": forms.candidates_evaluated(),
                "tag_counts": tags,
                "forms": list,
            }))
        }
        _ => {
            let mut s = String::new();
            for e in m.elements() {
                let f = forms.get(e);
                let _ = writeln!(s, "{}\t{}\t{f}", m.rep(e), f.tag.name());
            }
            s
        }
    };
    finish(cfg, text)
}

fn dot_label(w: &str) -> String {
    w.replace('"', "")
}

pub fn export(cfg: &RunConfig) -> CliResult<u8> {
    let fmt = format_for(
        cfg,
        &[Format::Json, Format::Dot, Format::Csv, Format::Text],
        "export",
    )?;
    let ob = obtain(cfg)?;
    let m = &ob.table;
    let text = match fmt {
        Format::Json => {
            let v = serde_json::to_value(TableFile::from_table(m, cfg.include_redundant))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            json_text(&v)
        }
        Format::Dot => {
            let g = compute_greens(m);
            let mut s = format!(
                "digraph d_classes_{}_{} {{\n  rankdir=TB;\n",
                m.family(),
                m.rank()
            );
            for (d, elems) in g.classes(Relation::D).iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  d{d} [label=\"{}\"];",
                    dot_label(&m.rep(elems[0]).to_string())
                );
            }
            for &(upper, lower) in g.d_order() {
                let _ = writeln!(s, "  d{upper} -> d{lower};");
            }
            s.push_str("}\n");
            s
        }
        Format::Csv => {
            let g = compute_greens(m);
            let mut s = String::from("element,representative,r,l,h,d,j\n");
            for e in m.elements() {
                let ids: Vec<String> = Relation::ALL
                    .iter()
                    .map(|&r| g.class_of(r, e).to_string())
                    .collect();
                let _ = writeln!(s, "{},{},{}", e.0, m.rep(e), ids.join(","));
            }
            s
        }
        Format::Text => match &ob.rules {
            Some(sys) => sys.to_string(),
            None => ob.presentation.to_string(),
        },
    };
    finish(cfg, text)
}
