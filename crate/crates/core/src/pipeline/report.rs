//! The full verification battery and its serializable report.

use std::fmt;

use serde::Serialize;

use super::{
    boundary_analysis, build_family, check_affine_space, check_freeness, check_invariance, check_smooth,
    check_stability, invariant_presentation, k_theory_ranks, verify_presentation, Family, FamilySpec,
    KTheoryRanks, PipelineError,
};
use crate::config::Caps;
use crate::groebner::{krull_dimension, Ideal};
use crate::lnd::kernel_linear;

/// Versioned envelope around any report payload.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument<T> {
    pub schema_version: &'static str,
    pub payload: T,
}

impl<T: Serialize> ReportDocument<T> {
    pub fn new(payload: T) -> Self {
        ReportDocument {
            schema_version: "1",
            payload,
        }
    }

    /// Pretty JSON with a trailing newline. Field order is fixed by the
    /// struct definitions, so equal reports give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    #[serde(rename = "X")]
    pub x: usize,
    pub quotient: usize,
    #[serde(rename = "Ybar")]
    pub ybar: usize,
    #[serde(rename = "B")]
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Checks {
    pub invariant: bool,
    pub affine_space: bool,
    pub stable: bool,
    pub free: bool,
    pub ybar_smooth: bool,
    pub boundary_smooth: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.invariant && self.affine_space && self.stable && self.free && self.ybar_smooth && self.boundary_smooth
    }

    fn named(&self) -> [(&'static str, bool); 6] {
        [
            ("invariant", self.invariant),
            ("affineSpace", self.affine_space),
            ("stable", self.stable),
            ("free", self.free),
            ("ybarSmooth", self.ybar_smooth),
            ("boundarySmooth", self.boundary_smooth),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    /// Every relation vanishes on `X` when evaluated at the generators.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub family: Family,
    pub f: String,
    pub trivial_summands: usize,
    pub dims: Dims,
    pub checks: Checks,
    pub boundary_codim: usize,
    pub m: Option<usize>,
    pub k0_ranks: Option<KTheoryRanks>,
    pub presentation: Option<PresentationReport>,
    pub caps_used: Caps,
    pub pass: bool,
}

fn dim(ideal: &Ideal, caps: &Caps) -> Result<usize, PipelineError> {
    Ok(krull_dimension(ideal, caps)?)
}

/// Builds the family member and runs every check in a fixed order. Check
/// outcomes are recorded in the report; only construction errors and
/// resource caps are returned as errors.
pub fn run_battery(spec: &FamilySpec, caps: &Caps) -> Result<VerificationReport, PipelineError> {
    let art = build_family(spec)?;
    let checks = Checks {
        invariant: check_invariance(&art)?,
        affine_space: check_affine_space(&art)?,
        stable: check_stability(&art, caps)?,
        free: check_freeness(&art, caps)?,
        ybar_smooth: check_smooth(&art.ybar_ideal, caps)?,
        boundary_smooth: check_smooth(&art.b_ideal, caps)?,
    };
    let x = dim(&art.x_ideal, caps)?;
    let dims = Dims {
        x,
        quotient: x - 1,
        ybar: dim(&art.ybar_ideal, caps)?,
        b: dim(&art.b_ideal, caps)?,
    };
    let (boundary_codim, m) = boundary_analysis(&art, caps)?;
    let k0_ranks = m.map(k_theory_ranks).transpose()?;

    let presentation = match spec.family {
        Family::V3 => {
            let gens = kernel_linear(&art.w_derivation, caps.kernel_degree, caps)?;
            let pres = invariant_presentation(&art, &gens, caps)?;
            Some(PresentationReport {
                generators: pres.generators.iter().map(|g| g.to_string()).collect(),
                relations: pres.relations.iter().map(|r| r.to_string()).collect(),
                verified: verify_presentation(&art, &pres, caps)?,
            })
        }
        Family::V4 => None,
    };

    let pass = checks.all()
        && boundary_codim == 2
        && spec.squarefree()?
        && presentation.as_ref().is_none_or(|p| p.verified);
    Ok(VerificationReport {
        family: spec.family,
        f: spec.f.to_string(),
        trivial_summands: spec.trivial,
        dims,
        checks,
        boundary_codim,
        m,
        k0_ranks,
        presentation,
        caps_used: *caps,
        pass,
    })
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}  f = {}  trivial summands {}", self.family, self.f, self.trivial_summands)?;
        let d = &self.dims;
        writeln!(f, "dims: X {}  quotient {}  Ybar {}  B {}", d.x, d.quotient, d.ybar, d.b)?;
        for (name, ok) in self.checks.named() {
            writeln!(f, "  {:<15} {}", name, if ok { "ok" } else { "FAILED" })?;
        }
        writeln!(f, "boundary codim: {}", self.boundary_codim)?;
        match (self.m, &self.k0_ranks) {
            (Some(m), Some(r)) => writeln!(
                f,
                "components: {m}  K0 ranks: Z {}  closure {}  quotient {}",
                r.rank_z, r.rank_closure, r.rank_quotient
            )?,
            _ => writeln!(f, "components: not computed")?,
        }
        if let Some(p) = &self.presentation {
            writeln!(f, "invariant generators:")?;
            for (k, g) in p.generators.iter().enumerate() {
                writeln!(f, "  y{} = {}", k + 1, g)?;
            }
            writeln!(f, "relations:")?;
            for r in &p.relations {
                writeln!(f, "  {r} = 0")?;
            }
            writeln!(f, "relations {}", if p.verified { "verified" } else { "NOT verified" })?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}
