//! Hamiltonian cycles of board graphs and their triangulation structure.

mod geometry;
mod repair;
mod search;
mod split;
mod substructure;

pub use geometry::{inside3, triangulate_cycle, Decomposition, Tri};
pub use repair::{is_zigzag, repair_seven_runs, swap_window, turns};
pub use search::{find_hamiltonian, find_hamiltonian_seeded, HamiltonError, MAX_CELLS};
pub use split::{balanced_split, split_at, split_candidates, Shared, SplitResult};
pub use substructure::{find_substructure, Substructure, SubstructureKind};

use crate::board::Board;
use crate::hex::{signed_area2, HexCoord};
use serde::{Deserialize, Serialize};

/// A cyclic ordering of cells with consecutive cells adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HamiltonianCycle {
    pub order: Vec<HexCoord>,
}

impl HamiltonianCycle {
    /// Build from a cell order, normalized to counterclockwise.
    pub fn new(mut order: Vec<HexCoord>) -> HamiltonianCycle {
        if signed_area2(&order) < 0 {
            order.reverse();
        }
        HamiltonianCycle { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True when this is a Hamiltonian cycle of `b`.
    pub fn is_valid_for(&self, b: &Board) -> bool {
        is_cycle(&self.order) && self.order.len() == b.len() && self.order.iter().all(|c| b.contains(*c))
    }
}

/// Simple closed cycle of pairwise distinct, consecutively adjacent cells.
pub fn is_cycle(order: &[HexCoord]) -> bool {
    let n = order.len();
    if n < 3 {
        return false;
    }
    let distinct: std::collections::HashSet<_> = order.iter().collect();
    distinct.len() == n && (0..n).all(|i| order[i].is_adjacent(order[(i + 1) % n]))
}

pub fn triangulate(h: &HamiltonianCycle) -> Vec<Tri> {
    triangulate_cycle(&h.order)
}

pub fn dual_tree(h: &HamiltonianCycle) -> Decomposition {
    Decomposition::new(&h.order)
}
