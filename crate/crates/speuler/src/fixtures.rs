//! Bundled example descriptions.
//!
//! Fixtures flagged `approximate` were reconstructed from the structure of
//! existing diagrams rather than from a zone list; they are useful inputs but
//! not reference data.

use crate::error::ParseError;
use crate::model::{parse_description, AbstractDescription, ParseOptions};

/// A bundled description in its source format.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub approximate: bool,
}

impl Fixture {
    /// Parses the fixture with default options.
    pub fn description(&self) -> Result<AbstractDescription, ParseError> {
        parse_description(self.source, ParseOptions::default()).map(|(d, _)| d)
    }
}

pub const VENN2: Fixture = Fixture { name: "venn2", source: include_str!("../fixtures/venn2.txt"), approximate: false };
pub const VENN3: Fixture = Fixture { name: "venn3", source: include_str!("../fixtures/venn3.txt"), approximate: false };
pub const VENN4: Fixture = Fixture { name: "venn4", source: include_str!("../fixtures/venn4.txt"), approximate: false };
pub const VENN5: Fixture = Fixture { name: "venn5", source: include_str!("../fixtures/venn5.txt"), approximate: false };
pub const CARIBBEAN: Fixture =
    Fixture { name: "caribbean", source: include_str!("../fixtures/caribbean.txt"), approximate: true };
pub const NO_SINK: Fixture =
    Fixture { name: "no_sink", source: include_str!("../fixtures/no_sink.txt"), approximate: false };
pub const XKCD: Fixture = Fixture { name: "xkcd", source: include_str!("../fixtures/xkcd.json"), approximate: true };
pub const TOPIC_MODELING: Fixture =
    Fixture { name: "topic_modeling", source: include_str!("../fixtures/topic_modeling.json"), approximate: true };

/// Every bundled fixture.
pub const ALL: [Fixture; 8] = [VENN2, VENN3, VENN4, VENN5, CARIBBEAN, NO_SINK, XKCD, TOPIC_MODELING];

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter().copied().find(|f| f.name == name)
}
