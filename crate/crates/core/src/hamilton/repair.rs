//! Rerouting that removes long runs of degree-3 dual nodes.

use super::geometry::Decomposition;
use super::HamiltonianCycle;
use crate::board::Board;
use crate::hex::HexCoord;

/// Reroute x0 x1 x2 x3 into x0 x2 x1 x3 when x0~x2 and x1~x3.
pub fn swap_window(cycle: &[HexCoord], start: usize) -> Option<Vec<HexCoord>> {
    let n = cycle.len();
    if n < 5 {
        return None;
    }
    let i1 = (start + 1) % n;
    let i2 = (start + 2) % n;
    let x0 = cycle[start];
    let x3 = cycle[(start + 3) % n];
    let (x1, x2) = (cycle[i1], cycle[i2]);
    if !x0.is_adjacent(x2) || !x1.is_adjacent(x3) {
        return None;
    }
    let mut out = cycle.to_vec();
    out.swap(i1, i2);
    Some(out)
}

/// Turn direction at each inner node of a dual path: +1 left, -1 right, 0 straight.
pub fn turns(d: &Decomposition, path: &[usize]) -> Vec<i64> {
    path.windows(3)
        .map(|w| {
            let (ax, ay) = d.triangles[w[0]].centroid3();
            let (bx, by) = d.triangles[w[1]].centroid3();
            let (cx, cy) = d.triangles[w[2]].centroid3();
            ((bx - ax) * (cy - by) - (by - ay) * (cx - bx)).signum()
        })
        .collect()
}

/// True when consecutive turns along the path alternate left and right.
pub fn is_zigzag(d: &Decomposition, path: &[usize]) -> bool {
    let t = turns(d, path);
    t.iter().all(|&x| x != 0) && t.windows(2).all(|w| w[0] != w[1])
}

/// Reroute until no path of seven or more degree-3 dual nodes remains.
/// Every accepted rewrite lowers the number of degree-3 nodes.
pub fn repair_seven_runs(_b: &Board, h: &HamiltonianCycle) -> HamiltonianCycle {
    HamiltonianCycle::new(repair_cycle(&h.order))
}

pub(crate) fn repair_cycle(cycle: &[HexCoord]) -> Vec<HexCoord> {
    let mut cyc = cycle.to_vec();
    let n = cyc.len();
    'outer: loop {
        let d = Decomposition::new(&cyc);
        let run = d.longest_degree3_run();
        if run.len() < 7 {
            return cyc;
        }
        let deg3 = d.degree_histogram()[3];
        let pos = d.positions();
        let mid = run.len() / 2;
        let mut order: Vec<usize> = (0..run.len()).collect();
        order.sort_by_key(|&i| (i as i64 - mid as i64).abs());
        let mut starts = Vec::new();
        for &k in &order {
            for c in d.triangles[run[k]].corners() {
                let p = pos[&c];
                for back in 0..4 {
                    let s = (p + n - back) % n;
                    if !starts.contains(&s) {
                        starts.push(s);
                    }
                }
            }
        }
        starts.extend((0..n).filter(|s| !starts.contains(s)).collect::<Vec<_>>());
        for s in starts {
            if let Some(next) = swap_window(&cyc, s) {
                let nd = Decomposition::new(&next);
                if nd.degree_histogram()[3] < deg3 && nd.is_tree() {
                    cyc = next;
                    continue 'outer;
                }
            }
        }
        return cyc;
    }
}
