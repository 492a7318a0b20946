//! Input loading: system descriptors, vectors and elements from JSON files.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use hilmod_core::algebra::PPoly;
use hilmod_core::gallery;
use hilmod_core::module::{ModuleContext, ModuleVector, OrthoSystem};

use crate::CliError;

/// A system source file: either an explicit context-plus-vectors listing or
/// a reference to a named generator.
#[derive(Deserialize)]
#[serde(untagged)]
enum SystemSource {
    Generator {
        generator: String,
        #[serde(default)]
        params: GeneratorParams,
    },
    Explicit {
        context: ModuleContext,
        vectors: Vec<ModuleVector>,
    },
}

#[derive(Deserialize, Default)]
struct GeneratorParams {
    n: Option<u64>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

pub fn load_system(path: &Path) -> Result<OrthoSystem, CliError> {
    let source: SystemSource = read_json(path)?;
    match source {
        SystemSource::Generator { generator, params } => {
            gallery::generator_system(&generator, params.n)
                .map_err(|e| CliError::Input(e.to_string()))
        }
        SystemSource::Explicit { context, vectors } => {
            OrthoSystem::explicit(context, vectors).map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

/// A vector file: a single vector, a bare array, or `{"vectors": [...]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum VectorSource {
    Wrapped { vectors: Vec<ModuleVector> },
    Many(Vec<ModuleVector>),
    One(ModuleVector),
}

pub fn load_vectors(path: &Path, ctx: &ModuleContext) -> Result<Vec<ModuleVector>, CliError> {
    let source: VectorSource = read_json(path)?;
    let vectors = match source {
        VectorSource::Wrapped { vectors } | VectorSource::Many(vectors) => vectors,
        VectorSource::One(v) => vec![v],
    };
    for v in &vectors {
        v.validate_in(ctx)
            .map_err(|e| CliError::Input(format!("vector invalid in context: {e}")))?;
    }
    Ok(vectors)
}

pub fn load_single_vector(path: &Path, ctx: &ModuleContext) -> Result<ModuleVector, CliError> {
    let mut vectors = load_vectors(path, ctx)?;
    if vectors.len() != 1 {
        return Err(CliError::Input(format!(
            "{} must contain exactly one vector, found {}",
            path.display(),
            vectors.len()
        )));
    }
    Ok(vectors.remove(0))
}

pub fn load_ppoly(path: &Path) -> Result<PPoly, CliError> {
    read_json(path)
}
