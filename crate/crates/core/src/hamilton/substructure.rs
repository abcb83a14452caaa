//! Parking and swapping substructures on a cycle.

use super::geometry::{ordered, Decomposition};
use crate::hex::HexCoord;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubstructureKind {
    /// A leaf next to a degree-2 node: cells a,b,c,d consecutive with a next to d.
    TypeI,
    /// A degree-3 node with two leaf neighbors: cells a..e consecutive.
    TypeII,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substructure {
    pub kind: SubstructureKind,
    /// Position of `a` on the cycle; the other cells follow in cycle order.
    pub start: usize,
    pub cells: Vec<HexCoord>,
}

impl Substructure {
    /// The cycle with b and c removed (TypeI only).
    pub fn shortcut(&self, cycle: &[HexCoord]) -> Vec<HexCoord> {
        let n = cycle.len();
        let b = (self.start + 1) % n;
        let c = (self.start + 2) % n;
        cycle.iter().enumerate().filter(|(i, _)| *i != b && *i != c).map(|(_, x)| *x).collect()
    }
}

fn window(cycle: &[HexCoord], start: usize, len: usize) -> Vec<HexCoord> {
    let n = cycle.len();
    (0..len).map(|k| cycle[(start + k) % n]).collect()
}

/// Locate a TypeI or TypeII substructure; TypeI wins when both exist.
pub fn find_substructure(d: &Decomposition) -> Option<Substructure> {
    let cycle = &d.cycle;
    let n = cycle.len();
    if d.len() < 2 {
        return None;
    }
    let pos = d.positions();
    let edges = d.cycle_edges();
    for (li, leaf) in d.triangles.iter().enumerate() {
        if d.degree(li) != 1 || d.degree(d.adjacency[li][0]) != 2 {
            continue;
        }
        let mid = d.triangles[d.adjacency[li][0]];
        let mut want: HashSet<HexCoord> = leaf.corners().into_iter().collect();
        want.extend(mid.corners());
        let apex = leaf
            .corners()
            .into_iter()
            .find(|c| !mid.corners().contains(c))
            .unwrap();
        let p = pos[&apex];
        for start in [(p + n - 2) % n, (p + n - 1) % n] {
            let w = window(cycle, start, 4);
            if w.iter().copied().collect::<HashSet<_>>() == want
                && w[0].is_adjacent(w[3])
                && edges.contains(&ordered(w[0], w[1]))
            {
                return Some(Substructure { kind: SubstructureKind::TypeI, start, cells: w });
            }
        }
    }
    for (di, tri) in d.triangles.iter().enumerate() {
        if d.degree(di) != 3 {
            continue;
        }
        let leaves: Vec<usize> = d.adjacency[di].iter().copied().filter(|&x| d.degree(x) == 1).collect();
        if leaves.len() < 2 {
            continue;
        }
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                let mut want: HashSet<HexCoord> = tri.corners().into_iter().collect();
                for &l in &[leaves[i], leaves[j]] {
                    want.extend(d.triangles[l].corners());
                }
                for &l in &[leaves[i], leaves[j]] {
                    let apex = d.triangles[l].corners().into_iter().find(|c| !tri.corners().contains(c)).unwrap();
                    let p = pos[&apex];
                    for back in 1..=3 {
                        let start = (p + n - back) % n;
                        let w = window(cycle, start, 5);
                        if w.iter().copied().collect::<HashSet<_>>() == want
                            && w[0].is_adjacent(w[2])
                            && w[2].is_adjacent(w[4])
                            && w[0].is_adjacent(w[4])
                        {
                            return Some(Substructure { kind: SubstructureKind::TypeII, start, cells: w });
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamilton::is_cycle;

    fn h(q: i32, r: i32) -> HexCoord {
        HexCoord::new(q, r)
    }

    #[test]
    fn fan_gives_type_one() {
        let cyc = vec![h(0, 0), h(1, 0), h(1, -1), h(0, -1), h(-1, 0), h(-1, 1), h(0, 1)];
        let d = Decomposition::new(&cyc);
        let s = find_substructure(&d).unwrap();
        assert_eq!(s.kind, SubstructureKind::TypeI);
        assert!(s.cells[0].is_adjacent(s.cells[3]));
        let short = s.shortcut(&cyc);
        assert_eq!(short.len(), 5);
        assert!(is_cycle(&short));
    }

    #[test]
    fn star_center_gives_type_two() {
        // degree-3 triangle with three ear triangles; every leaf touches the center node
        let cyc = vec![h(0, 0), h(1, -1), h(1, 0), h(1, 1), h(0, 1), h(-1, 1)];
        let d = Decomposition::new(&cyc);
        assert_eq!(d.degree_histogram(), [0, 3, 0, 1]);
        let s = find_substructure(&d).unwrap();
        assert_eq!(s.kind, SubstructureKind::TypeII);
        assert!(s.cells[0].is_adjacent(s.cells[4]));
    }
}
