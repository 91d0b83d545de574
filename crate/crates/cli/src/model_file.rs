//! Model files: TOML (or a JSON mirror) with `n`, `generators` and `label`.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qtype_core::algebra::{herm_from_text, holo_from_text, point_from_text, GaussianRational as GQ, HoloPoly};
use qtype_core::ideals::HoloIdeal;
use qtype_core::types::HypersurfaceModel;
use qtype_core::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub label: String,
    /// Generators are holomorphic polynomials spanning an ideal.
    #[serde(default)]
    pub holomorphic: bool,
    /// `q` used when the command line gives none.
    #[serde(default)]
    pub default_q: Option<usize>,
    /// Direction `v` of the points `ε·v` used by `demo-usc`.
    #[serde(default)]
    pub usc_direction: Option<Vec<String>>,
}

/// An input problem located in a file, a generator or a flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(source: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            line: None,
            column: None,
            message: message.into(),
        }
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.line = Some(line);
        self.column = Some(column);
        self
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, ":{l}:{c}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

/// 1-based line and column of byte `offset` in `text`.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(offset, |i| offset - i - 1) + 1;
    (line, col)
}

/// Maps a core error inside `src` to a located input error; `base` is the
/// offset of `src` within the file text when known.
fn locate(path: &str, text: &str, src: &str, what: &str, err: Error) -> InputError {
    let base = text.find(src);
    match (&err, base) {
        (Error::Parse { pos, msg }, Some(b)) => {
            let (l, c) = line_col(text, b + pos);
            InputError::new(path, format!("{what}: {msg}")).at(l, c)
        }
        (_, Some(b)) => {
            let (l, c) = line_col(text, b);
            InputError::new(path, format!("{what}: {err}")).at(l, c)
        }
        _ => InputError::new(path, format!("{what}: {err}")),
    }
}

#[derive(Clone, Debug)]
pub enum LoadedModel {
    Real(HypersurfaceModel),
    Holo(HoloIdeal),
}

#[derive(Clone, Debug)]
pub struct Model {
    pub path: PathBuf,
    pub file: ModelFile,
    pub model: LoadedModel,
    pub usc_direction: Option<Vec<GQ>>,
}

impl Model {
    pub fn n(&self) -> usize {
        self.file.n
    }

    pub fn real(&self) -> Result<&HypersurfaceModel, InputError> {
        match &self.model {
            LoadedModel::Real(m) => Ok(m),
            LoadedModel::Holo(_) => Err(InputError::new(
                self.path.display().to_string(),
                "this command needs real generators, found a holomorphic ideal",
            )),
        }
    }
}

pub fn parse_model(path: &Path, text: &str) -> Result<Model, InputError> {
    let name = path.display().to_string();
    let is_json = path.extension().is_some_and(|e| e == "json");
    let file: ModelFile = if is_json {
        serde_json::from_str(text).map_err(|e| InputError::new(&name, e.to_string()).at(e.line(), e.column()))?
    } else {
        toml::from_str(text).map_err(|e| {
            let err = InputError::new(&name, e.message().to_string());
            match e.span() {
                Some(span) => {
                    let (l, c) = line_col(text, span.start);
                    err.at(l, c)
                }
                None => err,
            }
        })?
    };
    if file.n == 0 {
        return Err(InputError::new(&name, "n must be positive"));
    }
    if file.generators.is_empty() {
        return Err(InputError::new(&name, "empty model: no generators"));
    }
    let model = if file.holomorphic {
        let gens: Vec<HoloPoly> = file
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| holo_from_text(g, file.n).map_err(|e| locate(&name, text, g, &format!("generator {}", i + 1), e)))
            .collect::<Result<_, _>>()?;
        LoadedModel::Holo(HoloIdeal::new(file.n, gens).map_err(|e| InputError::new(&name, e.to_string()))?)
    } else {
        let gens = file
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| herm_from_text(g, file.n).map_err(|e| locate(&name, text, g, &format!("generator {}", i + 1), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let label = if file.label.is_empty() { name.clone() } else { file.label.clone() };
        LoadedModel::Real(HypersurfaceModel::new(file.n, gens, label).map_err(|e| InputError::new(&name, e.to_string()))?)
    };
    let usc_direction = match &file.usc_direction {
        None => None,
        Some(v) => {
            let joined = v.join(",");
            let p = point_from_text(&joined).map_err(|e| InputError::new(&name, format!("usc_direction: {e}")))?;
            if p.len() != file.n {
                return Err(InputError::new(&name, format!("usc_direction has {} coordinates, expected {}", p.len(), file.n)));
            }
            Some(p)
        }
    };
    Ok(Model {
        path: path.to_path_buf(),
        file,
        model,
        usc_direction,
    })
}

pub fn load_model(path: &Path) -> Result<Model, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::new(path.display().to_string(), e.to_string()))?;
    parse_model(path, &text)
}

/// Parses `--point`-style coordinates and checks the dimension.
pub fn parse_point(flag: &str, src: &str, n: usize) -> Result<Vec<GQ>, InputError> {
    let p = point_from_text(src).map_err(|e| match e {
        Error::Parse { pos, msg } => InputError::new(flag, msg).at(1, pos + 1),
        other => InputError::new(flag, other.to_string()),
    })?;
    if p.len() != n {
        return Err(InputError::new(flag, format!("point has {} coordinates, model has n = {n}", p.len())));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_json_agree() {
        let t = "label = \"m\"\nn = 2\ngenerators = [\"Re(z2) + |z1|^2\"]\n";
        let j = r#"{"label": "m", "n": 2, "generators": ["Re(z2) + |z1|^2"]}"#;
        let a = parse_model(Path::new("m.toml"), t).unwrap();
        let b = parse_model(Path::new("m.json"), j).unwrap();
        assert_eq!(a.file, b.file);
    }

    #[test]
    fn errors_are_located() {
        let t = "n = 2\ngenerators = [\"Re(z2) + |z1|^2\",\n  \"z1 +* z2\"]\n";
        let e = parse_model(Path::new("bad.toml"), t).unwrap_err();
        assert_eq!(e.line, Some(3));
        assert!(e.message.contains("generator 2"));
        let e = parse_model(Path::new("bad.toml"), "n = 2\ngenerators = [\n").unwrap_err();
        assert!(e.line.is_some());
        let e = parse_model(Path::new("e.toml"), "n = 2\ngenerators = []\n").unwrap_err();
        assert!(e.message.contains("empty"));
        let e = parse_model(Path::new("d.toml"), "n = 1\ngenerators = [\"|z2|^2\"]\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(parse_point("--point", "0,0,1", 2).is_err());
        assert_eq!(parse_point("--point", "0, 1/2", 2).unwrap()[1], GQ::from_ratio(1, 2));
    }
}
