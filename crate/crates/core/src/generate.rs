//! Random proper boards for tests and benchmarks.

use crate::board::{validate_proper, Board, Label};
use crate::hamilton::{find_hamiltonian, HamiltonianCycle};
use crate::puzzle::{scramble, Configuration, Gourd};
use crate::hex::HexCoord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Neighbor offsets in cyclic (counterclockwise) order.
const RING: [HexCoord; 6] = [
    HexCoord::new(1, 0),
    HexCoord::new(1, -1),
    HexCoord::new(0, -1),
    HexCoord::new(-1, 0),
    HexCoord::new(-1, 1),
    HexCoord::new(0, 1),
];

/// Length of the on-board arc around `c`, or 0 when the on-board
/// neighbors do not form one contiguous arc.
fn single_arc(cells: &HashSet<HexCoord>, c: HexCoord) -> usize {
    let on: Vec<bool> = RING.iter().map(|d| cells.contains(&(c + *d))).collect();
    let count = on.iter().filter(|&&x| x).count();
    if count == 6 {
        return 6;
    }
    let starts = (0..6).filter(|&i| on[i] && !on[(i + 5) % 6]).count();
    if starts == 1 {
        count
    } else {
        0
    }
}

/// A random proper board with `size` cells (odd, at least 3).
///
/// Grows from a triangle by adding cells whose board neighbors form one
/// contiguous arc of length two or more, which keeps the board 2-connected
/// and free of holes. `compactness` in [0, 1] biases toward round shapes.
pub fn random_proper_board(size: usize, compactness: f64, seed: u64) -> Board {
    assert!(size >= 3 && size % 2 == 1, "size must be odd and at least 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut cells: HashSet<HexCoord> =
            [HexCoord::new(0, 0), HexCoord::new(1, 0), HexCoord::new(0, 1)].into_iter().collect();
        let mut list: Vec<HexCoord> = cells.iter().copied().collect();
        while cells.len() < size {
            let mut cand: Vec<(HexCoord, usize)> = Vec::new();
            let mut seen = HashSet::new();
            for &c in &list {
                for d in RING {
                    let x = c + d;
                    if !cells.contains(&x) && seen.insert(x) {
                        let arc = single_arc(&cells, x);
                        if arc >= 2 {
                            cand.push((x, arc));
                        }
                    }
                }
            }
            cand.sort();
            let pick = if rng.gen_bool(compactness.clamp(0.0, 1.0)) {
                let best = cand.iter().map(|c| c.1).max().unwrap();
                let top: Vec<_> = cand.iter().filter(|c| c.1 == best).collect();
                top[rng.gen_range(0..top.len())].0
            } else {
                cand[rng.gen_range(0..cand.len())].0
            };
            cells.insert(pick);
            list.push(pick);
        }
        let b = Board::new(list).expect("grown board is connected");
        if validate_proper(&b).proper {
            return b;
        }
    }
}

/// Gourds on consecutive cycle cells after `h.order[0]`, which stays empty.
/// Gourd k carries the numbers 2k+1 and 2k+2.
pub fn numbered_configuration(h: &HamiltonianCycle) -> Configuration {
    let o = &h.order;
    let gourds = (0..o.len() / 2)
        .map(|k| {
            let n = 2 * k as u32;
            Gourd::new(o[1 + 2 * k], Label::Number(n + 1), o[2 + 2 * k], Label::Number(n + 2))
        })
        .collect();
    Configuration { gourds, empty: o[0] }
}

/// A numbered configuration scrambled by `steps` random moves.
pub fn random_configuration(b: &Board, steps: usize, seed: u64) -> Configuration {
    let h = find_hamiltonian(b).expect("proper board");
    let c = numbered_configuration(&h);
    scramble(b, &c, steps, seed).expect("valid configuration").0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_boards_are_proper() {
        for (i, size) in [3usize, 7, 13, 31, 101].into_iter().enumerate() {
            for comp in [0.0, 0.5, 0.9] {
                let b = random_proper_board(size, comp, i as u64);
                assert_eq!(b.len(), size);
                assert!(validate_proper(&b).proper);
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_proper_board(41, 0.3, 9), random_proper_board(41, 0.3, 9));
    }
}
