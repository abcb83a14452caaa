//! JSON shapes. Each mirrors the corresponding text format field for field.

use gourds_core::board::PropernessReport;
use gourds_core::puzzle::classify;
use gourds_core::{Board, Configuration, HexCoord, Move};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub q: i32,
    pub r: i32,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardJson {
    pub cells: Vec<CellJson>,
}

impl From<&Board> for BoardJson {
    fn from(b: &Board) -> BoardJson {
        let cells = b
            .cells()
            .iter()
            .zip(b.labels())
            .map(|(c, l)| CellJson { q: c.q, r: c.r, label: l.to_string() })
            .collect();
        BoardJson { cells }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GourdJson {
    pub a: CellJson,
    pub b: CellJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub gourds: Vec<GourdJson>,
    pub empty: HexCoord,
}

impl From<&Configuration> for ConfigJson {
    fn from(c: &Configuration) -> ConfigJson {
        let cell = |x: HexCoord, l: gourds_core::Label| CellJson { q: x.q, r: x.r, label: l.to_string() };
        ConfigJson {
            gourds: c
                .gourds
                .iter()
                .map(|g| GourdJson { a: cell(g.end_a, g.label_a), b: cell(g.end_b, g.label_b) })
                .collect(),
            empty: c.empty,
        }
    }
}

/// A move; `kind` is optional on input and always present on output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub tail: HexCoord,
    pub head: HexCoord,
    pub target: HexCoord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Slide,
    Turn,
    Pivot,
    Sharp,
}

impl From<gourds_core::MoveKind> for Kind {
    fn from(k: gourds_core::MoveKind) -> Kind {
        use gourds_core::MoveKind as K;
        match k {
            K::Slide => Kind::Slide,
            K::Turn => Kind::Turn,
            K::Pivot => Kind::Pivot,
            K::SharpTurn => Kind::Sharp,
        }
    }
}

impl From<&Move> for MoveJson {
    fn from(m: &Move) -> MoveJson {
        MoveJson { tail: m.tail, head: m.head, target: m.target, kind: Some(m.kind.into()) }
    }
}

impl MoveJson {
    /// The engine move, or `None` when the cells do not form a move or the
    /// stated kind disagrees with the geometry.
    pub fn to_move(&self) -> Option<Move> {
        let kind = classify(self.tail, self.head, self.target)?;
        match self.kind {
            Some(k) if k != Kind::from(kind) => None,
            _ => Some(Move { tail: self.tail, head: self.head, target: self.target, kind }),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct CreateRequest {
    pub board: String,
    pub config: String,
    #[serde(default)]
    pub target: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetJson {
    /// An explicit target configuration.
    Config { config: ConfigJson },
    /// A colored board; `placement` is the tiling the solver aims for.
    Colored { board: BoardJson, placement: ConfigJson },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub id: String,
    pub proper: bool,
    pub report: PropernessReport,
    pub board: BoardJson,
    pub initial: ConfigJson,
    pub current: ConfigJson,
    pub target: Option<TargetJson>,
    /// Per-cell label match against the target; absent without a target.
    pub solved: Option<bool>,
    pub history: Vec<MoveJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MovesJson {
    pub moves: Vec<MoveJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MoveReply {
    #[serde(rename = "move")]
    pub applied: MoveJson,
    pub state: StateJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HintReply {
    /// First move of a fresh plan; absent when already solved.
    #[serde(rename = "move")]
    pub next: Option<MoveJson>,
    /// Length of that plan.
    pub remaining: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanJson {
    pub strategy: String,
    pub s1: Vec<MoveJson>,
    pub s2: Vec<MoveJson>,
    pub s3: Vec<MoveJson>,
    pub total: usize,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScrambleRequest {
    pub steps: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScrambleReply {
    pub moves: Vec<MoveJson>,
    pub state: StateJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CreateReply {
    pub id: String,
    pub proper: bool,
    pub state: StateJson,
}
