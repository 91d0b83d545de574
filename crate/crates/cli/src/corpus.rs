//! Golden corpus: `<name>.toml` models with `<name>.expected.json` values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use qtype_core::types::{bound_check, GenericValueReport, Status};

use crate::model_file::{load_model, parse_point, InputError};
use crate::report::{agreed_text, LemmaCheck, Report};
use crate::{generic_value, RunConfig, EXIT_OK, EXIT_UNRESOLVED};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedCase {
    pub q: usize,
    pub point: String,
    /// Agreed value as text (`"4"`, `"inf"`).
    pub value: String,
    #[serde(default)]
    pub status: Option<Status>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundPair {
    pub q: usize,
    pub p0: String,
    pub p: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub cases: Vec<ExpectedCase>,
    #[serde(default)]
    pub bound_pairs: Vec<BoundPair>,
}

/// Model files of a corpus directory, sorted by name.
pub fn corpus_models(dir: &Path) -> Result<Vec<PathBuf>, InputError> {
    let entries = std::fs::read_dir(dir).map_err(|e| InputError::new(dir.display().to_string(), e.to_string()))?;
    let mut out: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    out.sort();
    Ok(out)
}

pub fn expected_path(model: &Path) -> PathBuf {
    let stem = model.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    model.with_file_name(format!("{stem}.expected.json"))
}

pub fn load_expected(path: &Path) -> Result<Expected, InputError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::new(&name, e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| InputError::new(&name, e.to_string()).at(e.line(), e.column()))
}

pub fn run_corpus(cfg: &RunConfig) -> Result<Report, InputError> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut all_ok = true;
    let mut rep = Report::new("corpus", &cfg.view());
    let models = corpus_models(&cfg.dir)?;
    if models.is_empty() {
        return Err(InputError::new(cfg.dir.display().to_string(), "no models in corpus directory"));
    }
    for path in models {
        let model = load_model(&path)?;
        let m = model.real()?;
        let expected = load_expected(&expected_path(&path))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let mut cache: BTreeMap<(usize, String), GenericValueReport> = BTreeMap::new();
        let mut compute = |q: usize, point: &str| -> Result<GenericValueReport, InputError> {
            if let Some(r) = cache.get(&(q, point.to_string())) {
                return Ok(r.clone());
            }
            let p = parse_point(&format!("{name}: point"), point, m.n)?;
            let r = generic_value(cfg, m, &p, q)?;
            cache.insert((q, point.to_string()), r.clone());
            Ok(r)
        };
        for case in &expected.cases {
            let r = compute(case.q, &case.point)?;
            rep.seeds.samples.extend(r.samples.iter().map(|s| s.seed));
            let got = agreed_text(&r);
            let status_ok = case.status.is_none_or(|s| r.agreed_status == Some(s));
            let pass = got == case.value && status_ok;
            all_ok &= pass;
            rows.push(json!({
                "model": name,
                "q": case.q,
                "point": case.point,
                "expected": case.value,
                "value": got,
                "status": r.agreed_status,
                "pass": pass,
            }));
        }
        for pair in &expected.bound_pairs {
            let a = compute(pair.q, &pair.p0)?;
            let b = compute(pair.q, &pair.p)?;
            let check = match (&a.estimate, &b.estimate) {
                (Some(x), Some(y)) if x.upper.is_finite() => Some(bound_check(x, y, m.n, pair.q)),
                _ => None,
            };
            let holds = check.as_ref().map(|c| c.holds);
            all_ok &= holds != Some(false);
            checks.push(LemmaCheck {
                name: format!("local_bound({name}, q={}: {} -> {})", pair.q, pair.p0, pair.p),
                holds,
                detail: serde_json::to_value(&check).unwrap_or_default(),
            });
        }
    }
    rep.result = json!({ "dir": cfg.dir.display().to_string(), "rows": rows });
    rep.lemma_checks = checks;
    rep.exit_code = if all_ok { EXIT_OK } else { EXIT_UNRESOLVED };
    Ok(rep)
}
