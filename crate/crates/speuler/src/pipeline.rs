//! End-to-end pipeline: dual → layout → curves → verified diagram.
//!
//! Curves are rendered at each smoothing level in turn, smoothest first. The
//! polyline level follows the dual exactly, so its well-formedness counts
//! serve as the baseline: a smoother level is accepted only if it is
//! well-matched and introduces no violations beyond that baseline.

use serde::Serialize;

use crate::dual::{build_dual_with, BuildOptions, RankedDual};
use crate::error::PipelineError;
use crate::layout::{layout_circular, CircularLayout};
use crate::model::AbstractDescription;
use crate::render::{render_diagram, Diagram, Smoothing, Style, SMOOTHING_LEVELS};
use crate::verify::{compute_metrics, extract_faces, Arrangement, MetricsReport, WfViolations};
use crate::Scalar;

/// One smoothing level tried.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Attempt {
    pub smoothing: Smoothing,
    pub well_matched: bool,
    pub wf_violations: WfViolations,
    pub accepted: bool,
}

/// A rendered diagram with its verification.
#[derive(Clone, Debug)]
pub struct VerifiedDiagram<T> {
    pub diagram: Diagram<T>,
    pub arrangement: Arrangement<T>,
    pub metrics: MetricsReport,
    pub attempts: Vec<Attempt>,
}

/// All stages for one description.
#[derive(Clone, Debug)]
pub struct PipelineOutput<T> {
    pub dual: RankedDual,
    pub layout: CircularLayout<T>,
    pub verified: VerifiedDiagram<T>,
}

fn measure<T: Scalar>(
    d: &AbstractDescription,
    dual: &RankedDual,
    layout: &CircularLayout<T>,
    style: &Style,
    smoothing: Smoothing,
) -> Result<(Diagram<T>, Arrangement<T>, MetricsReport), PipelineError> {
    let diagram = render_diagram(d, dual, layout, style, smoothing)?;
    let curves = diagram.polylines();
    let arrangement = extract_faces(&curves)?;
    let metrics = compute_metrics(d, &curves, &arrangement);
    Ok((diagram, arrangement, metrics))
}

/// Renders with the smoothing fallback and verifies the chosen result.
pub fn render_verified<T: Scalar>(
    d: &AbstractDescription,
    dual: &RankedDual,
    layout: &CircularLayout<T>,
    style: &Style,
) -> Result<VerifiedDiagram<T>, PipelineError> {
    let safest = SMOOTHING_LEVELS[SMOOTHING_LEVELS.len() - 1];
    let baseline = measure(d, dual, layout, style, safest)?;
    let base_wf = baseline.2.wf_violations;
    let mut attempts = Vec::new();
    for &level in &SMOOTHING_LEVELS[..SMOOTHING_LEVELS.len() - 1] {
        let (diagram, arrangement, metrics) = measure(d, dual, layout, style, level)?;
        let accepted = metrics.matching.well_matched && metrics.wf_violations == base_wf;
        attempts.push(Attempt {
            smoothing: level,
            well_matched: metrics.matching.well_matched,
            wf_violations: metrics.wf_violations,
            accepted,
        });
        if accepted {
            return Ok(VerifiedDiagram { diagram, arrangement, metrics, attempts });
        }
    }
    let (diagram, arrangement, metrics) = baseline;
    attempts.push(Attempt {
        smoothing: safest,
        well_matched: metrics.matching.well_matched,
        wf_violations: metrics.wf_violations,
        accepted: true,
    });
    Ok(VerifiedDiagram { diagram, arrangement, metrics, attempts })
}

/// Builds, lays out, renders and verifies `d`.
pub fn run<T: Scalar>(
    d: &AbstractDescription,
    build: BuildOptions,
    style: &Style,
) -> Result<PipelineOutput<T>, PipelineError> {
    let dual = build_dual_with(d, build)?;
    let layout = layout_circular(&dual);
    let verified = render_verified(d, &dual, &layout, style)?;
    Ok(PipelineOutput { dual, layout, verified })
}
