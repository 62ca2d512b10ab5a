//! Monotone, well-matched Euler diagrams from abstract descriptions.
//!
//! The pipeline turns a description (sets and the zones that must appear)
//! into a rank-based dual graph, places it on concentric rings, traces one
//! closed curve per set through the dual's faces and renders smooth SVG.
//! An independent verifier rebuilds the planar arrangement of the rendered
//! curves and checks that exactly the described zones appear.

pub mod dual;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod layout;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod render;
pub mod verify;

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar used by the geometric stages.
pub trait Scalar: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` constant.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant")
    }
}

impl<T> Scalar for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

pub use dual::{build_dual, build_dual_with, venn_dual, BuildOptions, RankedDual};
pub use error::{BuildError, ParseError, PipelineError, RenderError, VerifyError};
pub use geom::Point;
pub use layout::{layout_circular, CircularLayout};
pub use model::{classify, parse_description, AbstractDescription, ParseOptions, Zone};
pub use oracle::{census, search_monotone, CensusReport, Verdict};
pub use pipeline::{run, PipelineOutput, VerifiedDiagram};
pub use render::{emit_svg, render_diagram, Diagram, Smoothing, Style};
pub use verify::{compute_metrics, extract_faces, Arrangement, MetricsReport};

/// Double-precision aliases.
pub type Point64 = Point<f64>;
pub type Layout64 = CircularLayout<f64>;
pub type Diagram64 = Diagram<f64>;
pub type Arrangement64 = Arrangement<f64>;
pub type PipelineOutput64 = PipelineOutput<f64>;

/// Single-precision aliases.
pub type Point32 = Point<f32>;
pub type Layout32 = CircularLayout<f32>;
pub type Diagram32 = Diagram<f32>;
pub type Arrangement32 = Arrangement<f32>;
pub type PipelineOutput32 = PipelineOutput<f32>;
