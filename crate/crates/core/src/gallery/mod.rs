//! Named gallery constructions and their claim suites.
//!
//! Each id rebuilds one catalogued construction exactly and runs its
//! associated claims as exact checks: no tolerances, every verdict decided
//! in rational arithmetic, reports byte-identical across runs.

mod bundles;
mod families;

pub use families::{
    dyadic_breakpoint, half_indicators, lebesgue_unit_interval, CirculantFamily,
    DyadicTailFamily, InterleavedIndicatorFamily, StandardBasisFamily,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::PPoly;
use crate::error::GalleryError;
use crate::exec;
use crate::module::{ModuleContext, ModuleVector, OrthoSystem};

/// Stable gallery identifiers, sorted.
pub const GALLERY_IDS: [&str; 7] = [
    "branched-cover",
    "c0-c1-without-c2",
    "circulant",
    "nonextendable-ons",
    "ons-not-closed",
    "orthogonal-basis-L∞",
    "suspension-not-c1",
];

/// Parameters accepted by every gallery id; `n` is the id's truncation
/// depth, block size or sample count (each id documents its default).
#[derive(Clone, Copy, Debug, Default)]
pub struct GalleryParams {
    pub n: Option<u64>,
}

impl GalleryParams {
    pub fn with_n(n: u64) -> Self {
        GalleryParams { n: Some(n) }
    }

    fn resolve(&self, id: &str, default: u64, max: u64) -> Result<u64, GalleryError> {
        let n = self.n.unwrap_or(default);
        if n < 1 || n > max {
            return Err(GalleryError::BadParams {
                id: id.to_owned(),
                reason: format!("n must be in 1..={max}, got {n}"),
            });
        }
        Ok(n)
    }
}

/// Everything a gallery id defines: its module context, named systems,
/// vectors and algebra elements. Construction is deterministic for fixed
/// parameters.
pub struct ExampleBundle {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub context: ModuleContext,
    pub systems: BTreeMap<String, OrthoSystem>,
    pub vectors: BTreeMap<String, ModuleVector>,
    pub elements: BTreeMap<String, PPoly>,
}

impl ExampleBundle {
    fn new(id: &str, context: ModuleContext) -> Self {
        ExampleBundle {
            id: id.to_owned(),
            params: BTreeMap::new(),
            context,
            systems: BTreeMap::new(),
            vectors: BTreeMap::new(),
            elements: BTreeMap::new(),
        }
    }
}

/// One named check of a verdict report. `passed` is exact: no tolerance
/// enters any verdict, only enclosure widths appear in witness data.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Human-readable statement of the verified property.
    pub claim: String,
    /// Witness data: rational strings, enclosures, failing points.
    pub witness: BTreeMap<String, String>,
}

impl Check {
    pub(crate) fn new(name: &str, claim: &str, passed: bool) -> Self {
        Check {
            name: name.to_owned(),
            passed,
            claim: claim.to_owned(),
            witness: BTreeMap::new(),
        }
    }

    pub(crate) fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.witness.insert(key.into(), value.to_string());
        self
    }
}

/// Machine-readable record of all named checks for one gallery id.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl VerdictReport {
    pub(crate) fn from_checks(
        id: &str,
        params: BTreeMap<String, String>,
        mut checks: Vec<Check>,
    ) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let all_passed = checks.iter().all(|c| c.passed);
        VerdictReport {
            id: id.to_owned(),
            params,
            checks,
            all_passed,
        }
    }
}

/// Resolves an id (exact spelling or the ASCII alias
/// `orthogonal-basis-linf`) to its canonical form.
pub fn canonical_id(id: &str) -> Result<&'static str, GalleryError> {
    if id == "orthogonal-basis-linf" {
        return Ok("orthogonal-basis-L∞");
    }
    GALLERY_IDS
        .iter()
        .find(|k| **k == id)
        .copied()
        .ok_or_else(|| GalleryError::UnknownId(id.to_owned()))
}

/// Rebuilds the named construction with the given parameters.
pub fn build(id: &str, params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    match canonical_id(id)? {
        "branched-cover" => bundles::build_branched_cover(params),
        "c0-c1-without-c2" => bundles::build_c0_c1_without_c2(params),
        "circulant" => bundles::build_circulant(params),
        "nonextendable-ons" => bundles::build_nonextendable_ons(params),
        "ons-not-closed" => bundles::build_ons_not_closed(params),
        "orthogonal-basis-L∞" => bundles::build_orthogonal_basis(params),
        "suspension-not-c1" => bundles::build_suspension_not_c1(params),
        _ => unreachable!("canonical_id covers all ids"),
    }
}

/// Runs the claim suite of the named construction.
pub fn verify(id: &str, params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    match canonical_id(id)? {
        "branched-cover" => bundles::verify_branched_cover(params),
        "c0-c1-without-c2" => bundles::verify_c0_c1_without_c2(params),
        "circulant" => bundles::verify_circulant(params),
        "nonextendable-ons" => bundles::verify_nonextendable_ons(params),
        "ons-not-closed" => bundles::verify_ons_not_closed(params),
        "orthogonal-basis-L∞" => bundles::verify_orthogonal_basis(params),
        "suspension-not-c1" => bundles::verify_suspension_not_c1(params),
        _ => unreachable!("canonical_id covers all ids"),
    }
}

/// Verifies every gallery id with default parameters; ids run in parallel,
/// reports come back in id order.
pub fn verify_all() -> Result<Vec<VerdictReport>, GalleryError> {
    let results: Vec<Result<VerdictReport, GalleryError>> =
        exec::map_collect(&GALLERY_IDS, |id| verify(id, GalleryParams::default()));
    results.into_iter().collect()
}

/// The lazily generated system behind a gallery generator id, for
/// user-supplied table and frame runs. `n` parameterizes the circulant
/// block size and is ignored elsewhere.
pub fn generator_system(id: &str, n: Option<u64>) -> Result<OrthoSystem, GalleryError> {
    let ctx = ModuleContext::free(lebesgue_unit_interval());
    match id {
        "standard-basis" => Ok(OrthoSystem::generated(
            ctx,
            Arc::new(StandardBasisFamily::new(lebesgue_unit_interval())),
        )),
        "ons-not-closed" => Ok(OrthoSystem::generated(ctx, Arc::new(DyadicTailFamily))),
        "nonextendable-ons" => Ok(OrthoSystem::generated(
            ctx,
            Arc::new(InterleavedIndicatorFamily),
        )),
        "circulant" => {
            let n = n.unwrap_or(4);
            if n < 1 || n > 64 {
                return Err(GalleryError::BadParams {
                    id: id.to_owned(),
                    reason: format!("circulant block size must be in 1..=64, got {n}"),
                });
            }
            Ok(OrthoSystem::generated(
                ctx,
                Arc::new(CirculantFamily::new(n)),
            ))
        }
        other => Err(GalleryError::UnknownId(other.to_owned())),
    }
}

/// Named vectors available as table inputs alongside generator systems.
pub fn generator_vector(name: &str) -> Result<ModuleVector, GalleryError> {
    let ctx = ModuleContext::free(lebesgue_unit_interval());
    match name {
        "unit-first-entry" => ModuleVector::basis(&ctx, 1).map_err(GalleryError::Module),
        other => Err(GalleryError::UnknownId(other.to_owned())),
    }
}
