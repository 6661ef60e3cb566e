//! Getting a [`MonoidTable`] for a configuration: cache, then the chosen engine.

use origami_core::origami::compare_tables;
use origami_core::{
    build_jones_presentation, build_origami_presentation, kb_complete, tc_enumerate, Family,
    MonoidTable, Presentation, RewriteSystem,
};

use crate::cache;
use crate::config::{Engine, RunConfig};
use crate::error::{CliError, CliResult};

pub fn presentation(cfg: &RunConfig) -> CliResult<Presentation> {
    Ok(match cfg.family {
        Family::Jones => build_jones_presentation(cfg.n)?,
        Family::Origami => build_origami_presentation(cfg.n, cfg.include_redundant)?,
    })
}

/// An enumerated monoid and where it came from.
#[derive(Debug, Clone)]
pub struct Obtained {
    pub table: MonoidTable,
    pub presentation: Presentation,
    /// `"cache"`, `"tc"`, `"kb"` or `"both"`.
    pub source: &'static str,
    /// The completed system when completion ran and finished.
    pub rules: Option<RewriteSystem>,
}

fn warn(msg: &str) {
    eprintln!("origami: {msg}");
}

fn run_kb(p: &Presentation, cfg: &RunConfig) -> CliResult<Option<(RewriteSystem, MonoidTable)>> {
    let sys = kb_complete(p, cfg.budget);
    if !sys.is_complete() {
        return Ok(None);
    }
    let table = sys.to_table()?;
    Ok(Some((sys, table)))
}

pub fn obtain(cfg: &RunConfig) -> CliResult<Obtained> {
    let p = presentation(cfg)?;
    let path = cfg
        .cache_dir
        .as_ref()
        .map(|d| cache::cache_path(d, cfg.family, cfg.n, cfg.include_redundant));

    let (table, source, rules) = match cfg.engine {
        Engine::Tc => match path.as_deref().map(cache::load).transpose()?.flatten() {
            Some(t) => {
                if t.family() != cfg.family || t.rank() != cfg.n {
                    let reason = "contents do not match the file name".to_string();
                    return Err(CliError::Cache {
                        path: path.unwrap_or_default(),
                        reason,
                    });
                }
                (t, "cache", None)
            }
            None => (tc_enumerate(&p, cfg.tc)?, "tc", None),
        },
        Engine::Kb => match run_kb(&p, cfg)? {
            Some((sys, t)) => (t, "kb", Some(sys)),
            None => {
                warn("completion stopped at its budget; falling back to congruence enumeration");
                (tc_enumerate(&p, cfg.tc)?, "tc", None)
            }
        },
        Engine::Both => {
            let Some((sys, kb)) = run_kb(&p, cfg)? else {
                return Err(CliError::Budget(
                    "completion stopped at its budget; engines cannot be compared".into(),
                ));
            };
            let tc = tc_enumerate(&p, cfg.tc)?;
            let cmp = compare_tables(&kb, &tc, "engines");
            if !cmp.passed() {
                return Err(CliError::EngineMismatch(cmp.failures.join("; ")));
            }
            (tc, "both", Some(sys))
        }
    };

    if source != "cache" {
        if let Some(path) = &path {
            if !cache::store(path, &table, cfg.include_redundant)? {
                warn(&format!(
                    "{} is locked by another writer; not updating the cache",
                    path.display()
                ));
            }
        }
    }
    Ok(Obtained {
        table,
        presentation: p,
        source,
        rules,
    })
}
