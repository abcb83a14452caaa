//! Splitting a cycle at a degree-2 dual node into two odd cycles.

use super::geometry::{Decomposition, Tri};
use crate::hex::HexCoord;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shared {
    /// The cycles share only the apex v1.
    OneVertex,
    /// The cycles share all corners of the station triangle and edge e1.
    ThreeVertices,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitResult {
    pub station: Tri,
    /// Cycle edge of the station, in cycle order.
    pub e1: (HexCoord, HexCoord),
    pub v1: HexCoord,
    /// Starts at e1.1 in the one-vertex case and at e1.0 in the three-vertex case.
    pub h1: Vec<HexCoord>,
    /// Starts at v1.
    pub h2: Vec<HexCoord>,
    pub shared: Shared,
    /// Dual node counts: whole cycle and the two parts.
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
}

/// Split at dual node `node`, which must have degree 2.
pub fn split_at(d: &Decomposition, node: usize) -> Option<SplitResult> {
    if d.degree(node) != 2 {
        return None;
    }
    let cycle = &d.cycle;
    let n = cycle.len();
    let pos = d.positions();
    let t = d.triangles[node];
    let corners = t.corners();
    let mut e1 = None;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let (a, b) = (corners[i], corners[j]);
                if (pos[&a] + 1) % n == pos[&b] {
                    e1 = Some((a, b, corners[3 - i - j]));
                }
            }
        }
    }
    let (u, v, v1) = e1?;
    let base = pos[&u];
    let h: Vec<HexCoord> = (0..n).map(|k| cycle[(base + k) % n]).collect();
    let p = (pos[&v1] + n - base) % n;
    let (h1, h2, shared) = if p % 2 == 1 {
        let h1 = h[1..=p].to_vec();
        let mut h2 = h[p..].to_vec();
        h2.push(u);
        (h1, h2, Shared::OneVertex)
    } else {
        let mut h1 = vec![u];
        h1.extend_from_slice(&h[1..=p]);
        let mut h2 = h[p..].to_vec();
        h2.push(u);
        h2.push(v);
        (h1, h2, Shared::ThreeVertices)
    };
    Some(SplitResult {
        station: t,
        e1: (u, v),
        v1,
        m: d.len(),
        m1: h1.len() - 2,
        m2: h2.len() - 2,
        h1,
        h2,
        shared,
    })
}

/// Degree-2 nodes in order of preference: the node reached from the tree
/// centroid first, then the rest by decreasing balance.
pub fn split_candidates(d: &Decomposition) -> Vec<usize> {
    let n = d.len();
    if n < 3 {
        return Vec::new();
    }
    // subtree sizes rooted at 0
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &d.adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &x in order.iter().rev() {
        if parent[x] != usize::MAX {
            size[parent[x]] += size[x];
        }
    }
    // size of the side containing y when edge (x, y) is removed
    let side = |x: usize, y: usize| if parent[y] == x { size[y] } else { n - size[x] };
    let worst = |x: usize| d.adjacency[x].iter().map(|&y| side(x, y)).max().unwrap_or(0);
    let centroid = (0..n).min_by_key(|&x| (worst(x), d.triangles[x])).unwrap();
    let mut out = Vec::new();
    let mut cur = centroid;
    let mut prev = usize::MAX;
    for _ in 0..n {
        if d.degree(cur) == 2 {
            out.push(cur);
            break;
        }
        let next = d.adjacency[cur]
            .iter()
            .copied()
            .filter(|&y| y != prev)
            .max_by(|&a, &b| side(cur, a).cmp(&side(cur, b)).then(d.triangles[b].cmp(&d.triangles[a])));
        match next {
            Some(y) => {
                prev = cur;
                cur = y;
            }
            None => break,
        }
    }
    // balance of a degree-2 node: the smaller of its two sides
    let balance = |x: usize| d.adjacency[x].iter().map(|&y| side(x, y)).min().unwrap_or(0);
    let mut rest: Vec<usize> = (0..n).filter(|&x| d.degree(x) == 2 && !out.contains(&x)).collect();
    rest.sort_by_key(|&x| (std::cmp::Reverse(balance(x)), d.triangles[x]));
    out.extend(rest);
    out
}

/// Split at the centroid-guided degree-2 node.
pub fn balanced_split(d: &Decomposition) -> Option<SplitResult> {
    split_candidates(d).first().and_then(|&x| split_at(d, x))
}
