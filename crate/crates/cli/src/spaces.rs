//! Space selection and the per-space pieces the commands need.

use std::fmt;

use assembly_chains::assembly_core::AssemblySpace;
use assembly_chains::bounds::{ma_ccg, ma_poly, ma_strings, Variant};
use assembly_chains::space_graphs::GraphSpace;
use assembly_chains::space_polyominoes::PolyominoSpace;
use assembly_chains::space_strings::StringSpace;
use assembly_chains::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Strings,
    Graphs,
    Poly,
}

impl SpaceKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "strings" => Ok(Self::Strings),
            "graphs" => Ok(Self::Graphs),
            "poly" | "polyominoes" => Ok(Self::Poly),
            other => Err(Error::Parse(format!("unknown space '{other}'"))),
        }
    }
}

/// Space selector plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub alphabet: u8,
    pub directed: bool,
    pub colors: u8,
}

impl Default for SpaceSpec {
    fn default() -> Self {
        Self {
            kind: SpaceKind::Strings,
            alphabet: 2,
            directed: true,
            colors: 1,
        }
    }
}

impl SpaceSpec {
    pub fn build(&self) -> Result<Space> {
        match self.kind {
            SpaceKind::Strings => {
                if self.alphabet == 0 {
                    return Err(Error::InvalidArgument("alphabet size must be positive".into()));
                }
                Ok(Space::Strings(StringSpace {
                    alphabet: self.alphabet,
                    directed: self.directed,
                }))
            }
            _ if self.colors == 0 => Err(Error::InvalidArgument("colors must be positive".into())),
            SpaceKind::Graphs => Ok(Space::Graphs(GraphSpace::new(self.colors))),
            SpaceKind::Poly => Ok(Space::Poly(PolyominoSpace::new(self.colors))),
        }
    }
}

pub enum Space {
    Strings(StringSpace),
    Graphs(GraphSpace),
    Poly(PolyominoSpace),
}

/// Runs `$body` with `$s` bound to the concrete space.
macro_rules! with_space {
    ($space:expr, $s:ident => $body:expr) => {
        match $space {
            $crate::spaces::Space::Strings($s) => $body,
            $crate::spaces::Space::Graphs($s) => $body,
            $crate::spaces::Space::Poly($s) => $body,
        }
    };
}
pub(crate) use with_space;

/// `Ma` under both variants; `None` where the variant is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaValues {
    pub paper_literal: Option<u64>,
    pub derived_count: Option<u64>,
}

pub trait CliSpace: AssemblySpace
where
    Self::Object: fmt::Display,
{
    /// Parses a textual object and returns its canonical form.
    fn parse_object(&self, text: &str) -> Result<Self::Object>;

    fn ma_values(&self, size: u64) -> Result<MaValues>;
}

fn trivial(size: u64) -> Option<MaValues> {
    (size < 2).then_some(MaValues {
        paper_literal: Some(0),
        derived_count: Some(0),
    })
}

fn checked<S: AssemblySpace>(space: &S, x: S::Object) -> Result<S::Object> {
    space.validate(&x)?;
    Ok(space.canonical(&x))
}

impl CliSpace for StringSpace {
    fn parse_object(&self, text: &str) -> Result<Self::Object> {
        checked(self, self.parse(text.trim())?)
    }

    fn ma_values(&self, size: u64) -> Result<MaValues> {
        if let Some(t) = trivial(size) {
            return Ok(t);
        }
        let m = ma_strings(size, self.alphabet as u64, self.directed)?;
        Ok(MaValues {
            paper_literal: Some(m),
            derived_count: Some(m),
        })
    }
}

impl CliSpace for GraphSpace {
    fn parse_object(&self, text: &str) -> Result<Self::Object> {
        let text = text.trim();
        let g = if text.starts_with('{') {
            self.from_json(text)?
        } else {
            self.parse_edges(text)?
        };
        checked(self, g)
    }

    fn ma_values(&self, size: u64) -> Result<MaValues> {
        if let Some(t) = trivial(size) {
            return Ok(t);
        }
        let colors = self.colors as u64;
        let literal = match ma_ccg(size, colors, Variant::PaperLiteral) {
            Ok(m) => Some(m),
            Err(Error::Degenerate(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(MaValues {
            paper_literal: literal,
            derived_count: Some(ma_ccg(size, colors, Variant::DerivedCount)?),
        })
    }
}

impl CliSpace for PolyominoSpace {
    fn parse_object(&self, text: &str) -> Result<Self::Object> {
        let text = text.trim();
        let p = if text.starts_with('{') {
            self.from_json(text)?
        } else {
            self.parse_cells(text)?
        };
        checked(self, p)
    }

    fn ma_values(&self, size: u64) -> Result<MaValues> {
        if let Some(t) = trivial(size) {
            return Ok(t);
        }
        let colors = self.colors as u64;
        Ok(MaValues {
            paper_literal: Some(ma_poly(size, colors, Variant::PaperLiteral)?),
            derived_count: Some(ma_poly(size, colors, Variant::DerivedCount)?),
        })
    }
}
