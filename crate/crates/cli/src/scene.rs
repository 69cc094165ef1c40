//! Scene files and manifold references.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qclass_core::base::BaseSection;
use qclass_core::novikov::parse_rational;
use qclass_core::seidel::ActionSection;
use qclass_core::{preset_cpn, BaseModel, CircleAction, ManifoldModel, ModelFile, Rational};
use serde::Deserialize;

use crate::CliError;

pub const PRESET_DIR_VAR: &str = "QCLASS_PRESET_DIR";

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ManifoldRef {
    Named(String),
    Inline(ModelFile),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    manifold: ManifoldRef,
    #[serde(default)]
    tasks: Vec<String>,
    action: Option<ActionSection>,
    base: Option<BaseSection>,
    #[serde(rename = "eL")]
    el: Option<ElSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElSection {
    values: Vec<String>,
}

/// A loaded scene. The model is not validated here; see [`Scene::ensure_valid`].
#[derive(Debug, Clone)]
pub struct Scene {
    pub source: String,
    pub model: Arc<ManifoldModel>,
    pub tasks: Vec<String>,
    pub action: Option<CircleAction>,
    pub base: BaseModel,
    pub el: Vec<Rational>,
}

impl Scene {
    /// Loads a scene file, a model file, or a bare manifold reference.
    pub fn load(target: &str) -> Result<Scene, CliError> {
        let path = Path::new(target);
        if !path.is_file() {
            let model = resolve_named(target, Path::new("."))?;
            return Ok(Scene::bare(target, model));
        }
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {target}: {e}")))?;
        let value: toml::Table = text
            .parse()
            .map_err(|e| CliError::Usage(format!("{target} is not a TOML document: {e}")))?;
        if !value.contains_key("manifold") {
            let model = load_model_text(&text, target)?;
            return Ok(Scene::bare(target, model));
        }
        let file: SceneFile = toml::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("{target}: {}", e.message())))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let model = Arc::new(match file.manifold {
            ManifoldRef::Named(name) => resolve_named(&name, dir)?,
            ManifoldRef::Inline(m) => m.into_model().map_err(invalid)?,
        });
        let action = match file.action {
            Some(a) => Some(a.into_action(&model).map_err(invalid)?),
            None => None,
        };
        let base = match file.base {
            Some(b) => b.into_base().map_err(invalid)?,
            None => BaseModel::point(),
        };
        let el = match file.el {
            Some(s) => s
                .values
                .iter()
                .map(|v| parse_rational(v))
                .collect::<Result<Vec<_>, _>>()
                .map_err(invalid)?,
            None => vec![Rational::default(); action.as_ref().map_or(0, |a| a.weights.len())],
        };
        Ok(Scene { source: target.to_string(), model, tasks: file.tasks, action, base, el })
    }

    fn bare(source: &str, model: ManifoldModel) -> Scene {
        Scene {
            source: source.to_string(),
            model: Arc::new(model),
            tasks: Vec::new(),
            action: None,
            base: BaseModel::point(),
            el: Vec::new(),
        }
    }

    /// Fails with the validation report when the model is inconsistent, and
    /// checks the action against it.
    pub fn ensure_valid(&self) -> Result<(), CliError> {
        let report = qclass_core::validate_model(&self.model);
        if !report.is_valid() {
            return Err(CliError::Invalid(report.to_string().trim_end().to_string()));
        }
        if let Some(a) = &self.action {
            a.validate().map_err(invalid)?;
        }
        Ok(())
    }

    pub fn action(&self) -> Result<&CircleAction, CliError> {
        self.action
            .as_ref()
            .ok_or_else(|| CliError::Invalid(format!("{} has no [action] section", self.source)))
    }
}

fn invalid(e: qclass_core::Error) -> CliError {
    CliError::Invalid(e.to_string())
}

fn load_model_text(text: &str, source: &str) -> Result<ManifoldModel, CliError> {
    ModelFile::parse(text)
        .and_then(ModelFile::into_model)
        .map_err(|e| CliError::Invalid(format!("{source}: {e}")))
}

fn preset_dir() -> PathBuf {
    std::env::var_os(PRESET_DIR_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("presets"))
}

/// Resolves `cpn:N`, a preset name, or a model path relative to `dir`.
///
/// A file `cpn_N.toml` in the preset directory overrides the built-in
/// `cpn:N`.
fn resolve_named(name: &str, dir: &Path) -> Result<ManifoldModel, CliError> {
    let presets = preset_dir();
    if let Some(n) = name.strip_prefix("cpn:") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad preset reference `{name}`")))?;
        let file = presets.join(format!("cpn_{n}.toml"));
        if file.is_file() {
            return read_model(&file);
        }
        return preset_cpn(n).map_err(invalid);
    }
    for candidate in [dir.join(name), presets.join(name), presets.join(format!("{name}.toml"))] {
        if candidate.is_file() {
            return read_model(&candidate);
        }
    }
    Err(CliError::Usage(format!("cannot resolve manifold `{name}`")))
}

fn read_model(path: &Path) -> Result<ManifoldModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    load_model_text(&text, &path.display().to_string())
}
