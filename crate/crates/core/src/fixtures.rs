//! Named boards and configurations used by tests, benchmarks and the CLI.

use crate::board::{star_of_david_cells, Board, Label};
use crate::hamilton::HamiltonianCycle;
use crate::hex::HexCoord;
use crate::placement::{solve_placement, PlacementInstance};
use crate::puzzle::{Configuration, Gourd};

fn board(cells: impl IntoIterator<Item = HexCoord>) -> Board {
    Board::new(cells).expect("fixture cells form a board")
}

fn hc(q: i32, r: i32) -> HexCoord {
    HexCoord::new(q, r)
}

/// The 3-cell triangle.
pub fn triangle() -> Board {
    board([hc(0, 0), hc(1, 0), hc(0, 1)])
}

/// Cells within distance `radius` of the origin.
pub fn hexagon_cells(radius: i32) -> Vec<HexCoord> {
    let mut v = Vec::new();
    for q in -radius..=radius {
        for r in -radius..=radius {
            if (q + r).abs() <= radius {
                v.push(hc(q, r));
            }
        }
    }
    v
}

pub fn hexagon(radius: i32) -> Board {
    board(hexagon_cells(radius))
}

/// The 7-cell flower: a cell and its six neighbors.
pub fn flower() -> Board {
    hexagon(1)
}

/// The 19-cell hexagon of radius 2.
pub fn hexagon19() -> Board {
    hexagon(2)
}

/// The 13-cell Star of David.
pub fn star_of_david() -> Board {
    board(star_of_david_cells())
}

/// The ring at distance 2 plus one outer cell: 13 cells around a hole.
pub fn annulus() -> Board {
    let mut v: Vec<HexCoord> = hexagon_cells(2).into_iter().filter(|c| c.distance(hc(0, 0)) == 2).collect();
    v.push(hc(3, -1));
    board(v)
}

/// A two-row strip with a degree-2 ear on every boundary edge, so the
/// Hamiltonian cycle is forced into long runs of degree-3 dual nodes.
pub fn comb(k: i32) -> Board {
    let mut v = Vec::new();
    for q in 0..=k {
        v.push(hc(q, 0));
    }
    for q in 0..k {
        v.push(hc(q, 1));
    }
    for q in 1..=k {
        v.push(hc(q, -1));
    }
    for q in 0..k - 1 {
        v.push(hc(q, 2));
    }
    v.push(hc(k, 1));
    board(v)
}

/// The sawtooth cycle of [`comb`] that visits every ear between its two
/// strip neighbors, leaving every strip triangle with three interior sides.
pub fn comb_cycle(k: i32) -> HamiltonianCycle {
    let mut v = vec![hc(0, 0)];
    for q in 1..=k {
        v.push(hc(q, -1));
        v.push(hc(q, 0));
    }
    v.push(hc(k, 1));
    v.push(hc(k - 1, 1));
    for q in (0..k - 1).rev() {
        v.push(hc(q, 2));
        v.push(hc(q, 1));
    }
    HamiltonianCycle::new(v)
}

/// Strip with row 0 at q = 0..=n and row 1 at q = 0..n.
pub fn two_lobe_board(n: i32) -> Board {
    board((0..=n).map(|q| hc(q, 0)).chain((0..n).map(|q| hc(q, 1))))
}

/// Two-lobe instance: `n` upright gourds, red on the left half and blue on
/// the right, with E at the right end; the target swaps the halves.
pub fn two_lobe(n: i32) -> (Board, Configuration, Configuration) {
    let config = |swap: bool| {
        let gourds = (0..n)
            .map(|q| {
                let left = q < n / 2;
                let c = Label::Color(u32::from(left == swap));
                Gourd::new(hc(q, 0), c, hc(q, 1), c)
            })
            .collect();
        Configuration { gourds, empty: hc(n, 0) }
    };
    (two_lobe_board(n), config(false), config(true))
}

/// Radius-2 hexagon split into three 120 degree color sectors around a
/// blank center.
pub fn tricolor_board() -> Board {
    let cells = hexagon_cells(2).into_iter().map(|c| {
        if c == hc(0, 0) {
            return (c, Label::Blank);
        }
        let x = c.q as f64 + c.r as f64 / 2.0;
        let y = c.r as f64 * 3f64.sqrt() / 2.0;
        let deg = (y.atan2(x).to_degrees() - 15.0).rem_euclid(360.0);
        (c, Label::Color((deg / 120.0) as u32))
    });
    Board::with_labels(cells).expect("hexagon")
}

/// The solved photo puzzle: three same-colored gourds per sector and the
/// center empty, found by the placement solver.
pub fn tricolor() -> (Board, Configuration) {
    let b = tricolor_board();
    let budget = (0..3).map(|k| ((Label::Color(k), Label::Color(k)), 3));
    let inst = PlacementInstance::new(b.clone(), budget);
    let c = solve_placement(&inst).expect("valid instance").expect("sectors tile");
    (b, c)
}
