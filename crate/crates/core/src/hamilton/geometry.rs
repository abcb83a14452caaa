//! Lattice triangles, interior triangulation of a cycle polygon and its dual tree.

use crate::hex::HexCoord;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// A unit lattice triangle. `Up(q,r)` has corners (q,r),(q+1,r),(q,r+1);
/// `Down(q,r)` has corners (q+1,r),(q,r+1),(q+1,r+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tri {
    pub base: HexCoord,
    pub down: bool,
}

impl Tri {
    pub fn up(q: i32, r: i32) -> Tri {
        Tri { base: HexCoord::new(q, r), down: false }
    }

    pub fn down(q: i32, r: i32) -> Tri {
        Tri { base: HexCoord::new(q, r), down: true }
    }

    pub fn corners(&self) -> [HexCoord; 3] {
        let HexCoord { q, r } = self.base;
        if self.down {
            [HexCoord::new(q + 1, r), HexCoord::new(q, r + 1), HexCoord::new(q + 1, r + 1)]
        } else {
            [HexCoord::new(q, r), HexCoord::new(q + 1, r), HexCoord::new(q, r + 1)]
        }
    }

    /// The triangle across each side; sides are listed as corner pairs.
    pub fn across(&self) -> [((HexCoord, HexCoord), Tri); 3] {
        let HexCoord { q, r } = self.base;
        let [a, b, c] = self.corners();
        if self.down {
            [((a, b), Tri::up(q, r)), ((a, c), Tri::up(q + 1, r)), ((b, c), Tri::up(q, r + 1))]
        } else {
            [((a, b), Tri::down(q, r - 1)), ((a, c), Tri::down(q - 1, r)), ((b, c), Tri::down(q, r))]
        }
    }

    /// Three times the centroid in the doubled embedding.
    pub fn centroid3(&self) -> (i64, i64) {
        let mut x = 0;
        let mut y = 0;
        for c in self.corners() {
            let (cx, cy) = c.doubled();
            x += cx;
            y += cy;
        }
        (x, y)
    }

    /// The two lattice triangles whose first corner is `c`; every triangle
    /// arises from exactly one cell this way.
    pub fn based_at(c: HexCoord) -> [Tri; 2] {
        [Tri::up(c.q, c.r), Tri::down(c.q - 1, c.r)]
    }

    /// All six triangles touching cell `c`.
    pub fn around(c: HexCoord) -> [Tri; 6] {
        let HexCoord { q, r } = c;
        [
            Tri::up(q, r),
            Tri::up(q - 1, r),
            Tri::up(q, r - 1),
            Tri::down(q, r - 1),
            Tri::down(q - 1, r),
            Tri::down(q - 1, r - 1),
        ]
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.corners();
        write!(f, "{a}{b}{c}")
    }
}

/// Point-in-polygon for a point given at three times scale, against polygon `cells`.
/// The point must not lie on a lattice line.
pub fn inside3(cells: &[HexCoord], p: (i64, i64)) -> bool {
    let (px, py) = p;
    let n = cells.len();
    let mut inside = false;
    for i in 0..n {
        let (x1, y1) = cells[i].doubled();
        let (x2, y2) = cells[(i + 1) % n].doubled();
        let (x1, y1, x2, y2) = (3 * x1, 3 * y1, 3 * x2, 3 * y2);
        if (y1 > py) != (y2 > py) {
            // crossing x = x1 + (py - y1) (x2 - x1) / (y2 - y1); count if px < crossing
            let lhs = (px - x1) * (y2 - y1);
            let rhs = (py - y1) * (x2 - x1);
            if (y2 > y1 && lhs < rhs) || (y2 < y1 && lhs > rhs) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Interior triangulation of the polygon through `cycle`.
pub fn triangulate_cycle(cycle: &[HexCoord]) -> Vec<Tri> {
    let set: HashSet<HexCoord> = cycle.iter().copied().collect();
    let mut out = Vec::new();
    for &c in cycle {
        for t in Tri::based_at(c) {
            if t.corners().iter().all(|x| set.contains(x)) && inside3(cycle, t.centroid3()) {
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

/// The triangulation of a cycle together with its dual graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub cycle: Vec<HexCoord>,
    pub triangles: Vec<Tri>,
    pub adjacency: Vec<Vec<usize>>,
    pub index: HashMap<Tri, usize>,
}

impl Decomposition {
    pub fn new(cycle: &[HexCoord]) -> Decomposition {
        let triangles = triangulate_cycle(cycle);
        Self::from_triangles(cycle, triangles)
    }

    pub fn from_triangles(cycle: &[HexCoord], triangles: Vec<Tri>) -> Decomposition {
        let index: HashMap<Tri, usize> = triangles.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let adjacency = triangles
            .iter()
            .map(|t| t.across().iter().filter_map(|(_, o)| index.get(o).copied()).collect())
            .collect();
        Decomposition { cycle: cycle.to_vec(), triangles, adjacency, index }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, a) in self.adjacency.iter().enumerate() {
            for &j in a {
                if i < j {
                    e.push((i, j));
                }
            }
        }
        e
    }

    /// Counts of nodes with degree 0..=3.
    pub fn degree_histogram(&self) -> [usize; 4] {
        let mut h = [0; 4];
        for i in 0..self.len() {
            h[self.degree(i).min(3)] += 1;
        }
        h
    }

    pub fn is_tree(&self) -> bool {
        let n = self.len();
        if n == 0 || self.edges().len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Positions of cells along the cycle.
    pub fn positions(&self) -> HashMap<HexCoord, usize> {
        self.cycle.iter().enumerate().map(|(i, &c)| (c, i)).collect()
    }

    /// Set of cycle edges as unordered pairs.
    pub fn cycle_edges(&self) -> HashSet<(HexCoord, HexCoord)> {
        let n = self.cycle.len();
        (0..n).map(|i| ordered(self.cycle[i], self.cycle[(i + 1) % n])).collect()
    }

    /// Number of sides of triangle `i` lying on the cycle.
    pub fn cycle_sides(&self, i: usize, edges: &HashSet<(HexCoord, HexCoord)>) -> usize {
        self.triangles[i]
            .across()
            .iter()
            .filter(|((a, b), _)| edges.contains(&ordered(*a, *b)))
            .count()
    }

    /// Largest number of hexagon sides of a single cell crossed by dual edges.
    /// A dual edge across side (x, y) crosses one side of cell x and one of cell y.
    pub fn max_sides_crossed(&self) -> usize {
        let mut count: HashMap<HexCoord, usize> = HashMap::new();
        for (i, j) in self.edges() {
            let ti = self.triangles[i];
            let tj = self.triangles[j];
            let cj = tj.corners();
            for c in ti.corners() {
                if cj.contains(&c) {
                    *count.entry(c).or_default() += 1;
                }
            }
        }
        count.values().copied().max().unwrap_or(0)
    }

    /// Longest path in the forest induced by degree-3 nodes, as node indices.
    pub fn longest_degree3_run(&self) -> Vec<usize> {
        let deg3: Vec<bool> = (0..self.len()).map(|i| self.degree(i) == 3).collect();
        let mut best: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.len()];
        for s in 0..self.len() {
            if !deg3[s] || seen[s] {
                continue;
            }
            let comp = self.reach(s, &deg3, &mut seen);
            let (far, _) = self.farthest(s, &deg3);
            let (_, path) = self.farthest(far, &deg3);
            let _ = comp;
            if path.len() > best.len() {
                best = path;
            }
        }
        best
    }

    fn reach(&self, s: usize, allowed: &[bool], seen: &mut [bool]) -> usize {
        let mut stack = vec![s];
        seen[s] = true;
        let mut n = 0;
        while let Some(x) = stack.pop() {
            n += 1;
            for &y in &self.adjacency[x] {
                if allowed[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        n
    }

    /// Farthest node from `s` within allowed nodes, with the path to it.
    fn farthest(&self, s: usize, allowed: &[bool]) -> (usize, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.len()];
        let mut dist = vec![usize::MAX; self.len()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut last = s;
        while let Some(x) = queue.pop_front() {
            last = x;
            for &y in &self.adjacency[x] {
                if allowed[y] && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![last];
        let mut cur = last;
        while parent[cur] != usize::MAX {
            cur = parent[cur];
            path.push(cur);
        }
        (last, path)
    }

    /// Diagnostic text dump.
    pub fn dump(&self) -> String {
        let mut s = String::from("gourds-decomposition v1\n");
        s.push_str(&format!("cycle {}\n", self.cycle.len()));
        for c in &self.cycle {
            s.push_str(&format!("v {} {}\n", c.q, c.r));
        }
        s.push_str(&format!("triangles {}\n", self.len()));
        for (i, t) in self.triangles.iter().enumerate() {
            let [a, b, c] = t.corners();
            s.push_str(&format!(
                "t {i} {} {} {} {} {} {} deg {}\n",
                a.q, a.r, b.q, b.r, c.q, c.r,
                self.degree(i)
            ));
        }
        let edges = self.edges();
        s.push_str(&format!("dual_edges {}\n", edges.len()));
        for (i, j) in edges {
            s.push_str(&format!("d {i} {j}\n"));
        }
        let h = self.degree_histogram();
        s.push_str(&format!("degrees d0={} d1={} d2={} d3={}\n", h[0], h[1], h[2], h[3]));
        s
    }
}

pub(crate) fn ordered(a: HexCoord, b: HexCoord) -> (HexCoord, HexCoord) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
