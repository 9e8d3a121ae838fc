//! JSON space definitions. Every rational is a string such as `"-3/4"`.

use std::path::Path;

use mvse_core::exactlin::{RMatrix, RVector};
use mvse_core::spaces::{self, LpExponent, PolyhedralSpace};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub body: SpaceKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceKind {
    LpBall {
        n: usize,
        p: LpExponent,
    },
    LinfSubspace {
        matrix: Vec<RVector>,
    },
    Hrep {
        dim: usize,
        facets: Vec<RVector>,
    },
    Vrep {
        dim: usize,
        vertices: Vec<RVector>,
    },
    L1Sum {
        left: Box<SpaceFile>,
        right: Box<SpaceFile>,
    },
    LinfSum {
        left: Box<SpaceFile>,
        right: Box<SpaceFile>,
    },
    Hexagon,
    SumZero,
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("space file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_space(&self) -> Result<PolyhedralSpace, CliError> {
        let mut space = match &self.body {
            SpaceKind::LpBall { n, p } => spaces::lp_ball(*n, *p)?,
            SpaceKind::LinfSubspace { matrix } => {
                let name = self.name.clone().unwrap_or_else(|| "linf_subspace".into());
                spaces::linf_subspace(name, RMatrix::from_rows(matrix)?)?
            }
            SpaceKind::Hrep { dim, facets } => spaces::hrep("hrep", *dim, facets)?,
            SpaceKind::Vrep { dim, vertices } => spaces::vrep("vrep", *dim, vertices)?,
            SpaceKind::L1Sum { left, right } => {
                spaces::l1_sum(&left.to_space()?, &right.to_space()?)?
            }
            SpaceKind::LinfSum { left, right } => {
                spaces::linf_sum(&left.to_space()?, &right.to_space()?)?
            }
            SpaceKind::Hexagon => spaces::rational_hexagon(),
            SpaceKind::SumZero => spaces::sum_zero(),
        };
        if let Some(name) = &self.name {
            space.name = name.clone();
        }
        Ok(space)
    }

    /// Pretty JSON with every rational in lowest terms.
    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
