//! Boards: finite connected sets of hexagonal cells with optional labels.

use crate::hex::{HexCoord, DIRECTIONS};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const BOARD_HEADER: &str = "gourds-board v1";
pub(crate) const NONE: u32 = u32::MAX;

/// Cell or gourd-end label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum Label {
    #[default]
    Blank,
    Color(u32),
    Number(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Blank => write!(f, "."),
            Label::Color(k) => write!(f, "c{k}"),
            Label::Number(k) => write!(f, "#{k}"),
        }
    }
}

impl FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "." {
            return Ok(Label::Blank);
        }
        if let Some(rest) = s.strip_prefix('c') {
            return rest
                .parse::<u32>()
                .map(Label::Color)
                .map_err(|_| format!("bad color label `{s}`"));
        }
        if let Some(rest) = s.strip_prefix('#') {
            return match rest.parse::<u32>() {
                Ok(k) if k >= 1 => Ok(Label::Number(k)),
                _ => Err(format!("bad number label `{s}`")),
            };
        }
        Err(format!("unknown label `{s}`"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate cell {cell}")]
    Duplicate { line: usize, cell: HexCoord },
    #[error("board has no cells")]
    Empty,
    #[error("cell set is not connected")]
    Disconnected,
}

/// A connected board. Cells are kept sorted by (q, r); all per-cell tables
/// are indexed by position in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    cells: Vec<HexCoord>,
    labels: Vec<Label>,
    index: HashMap<HexCoord, u32>,
    nbr: Vec<[u32; 6]>,
}

impl Board {
    pub fn new(cells: impl IntoIterator<Item = HexCoord>) -> Result<Board, BoardError> {
        Self::with_labels(cells.into_iter().map(|c| (c, Label::Blank)))
    }

    pub fn with_labels(
        cells: impl IntoIterator<Item = (HexCoord, Label)>,
    ) -> Result<Board, BoardError> {
        let mut list: Vec<(HexCoord, Label)> = cells.into_iter().collect();
        list.sort();
        for w in list.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(BoardError::Duplicate { line: 0, cell: w[0].0 });
            }
        }
        if list.is_empty() {
            return Err(BoardError::Empty);
        }
        let cells: Vec<HexCoord> = list.iter().map(|p| p.0).collect();
        let labels: Vec<Label> = list.iter().map(|p| p.1).collect();
        let index: HashMap<HexCoord, u32> =
            cells.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let nbr = cells
            .iter()
            .map(|&c| c.neighbors().map(|n| index.get(&n).copied().unwrap_or(NONE)))
            .collect();
        let b = Board { cells, labels, index, nbr };
        if b.component_count(None) != 1 {
            return Err(BoardError::Disconnected);
        }
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells sorted by (q, r).
    pub fn cells(&self) -> &[HexCoord] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> HexCoord {
        self.cells[i]
    }

    pub fn index_of(&self, c: HexCoord) -> Option<usize> {
        self.index.get(&c).map(|&i| i as usize)
    }

    pub fn contains(&self, c: HexCoord) -> bool {
        self.index.contains_key(&c)
    }

    pub fn label(&self, c: HexCoord) -> Label {
        self.index_of(c).map_or(Label::Blank, |i| self.labels[i])
    }

    pub fn label_at(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Copy of this board with new labels (cells unchanged).
    pub fn relabeled(&self, f: impl Fn(HexCoord) -> Label) -> Board {
        let mut b = self.clone();
        for (i, c) in b.cells.iter().enumerate() {
            b.labels[i] = f(*c);
        }
        b
    }

    /// Neighbor indices in direction order; `None` where off-board.
    pub fn neighbor_slots(&self, i: usize) -> [Option<usize>; 6] {
        self.nbr[i].map(|x| (x != NONE).then_some(x as usize))
    }

    pub(crate) fn raw_neighbors(&self, i: usize) -> &[u32; 6] {
        &self.nbr[i]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.nbr[i].iter().filter(|&&x| x != NONE).map(|&x| x as usize)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.nbr[i].contains(&(j as u32))
    }

    pub fn graph(&self) -> BoardGraph {
        board_graph(self)
    }

    /// Number of connected components after removing cell `skip`.
    fn component_count(&self, skip: Option<usize>) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        if let Some(s) = skip {
            seen[s] = true;
        }
        let mut comps = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            comps += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        comps
    }

    /// Articulation vertices of the board graph (iterative Tarjan).
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.len();
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut is_art = vec![false; n];
        let mut timer = 0u32;
        // frame: (vertex, parent, next neighbor slot, child count)
        let mut stack: Vec<(usize, usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != u32::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0, 0));
            while let Some(top) = stack.last_mut() {
                let (v, parent, slot, _) = *top;
                if slot < 6 {
                    top.2 += 1;
                    let w = self.nbr[v][slot];
                    if w == NONE {
                        continue;
                    }
                    let w = w as usize;
                    if disc[w] == u32::MAX {
                        top.3 += 1;
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    let (v, parent, _, children) = stack.pop().unwrap();
                    if parent == usize::MAX {
                        if children > 1 {
                            is_art[v] = true;
                        }
                    } else {
                        low[parent] = low[parent].min(low[v]);
                        let pp = stack.last().unwrap().1;
                        if pp != usize::MAX && low[v] >= disc[parent] {
                            is_art[parent] = true;
                        }
                    }
                }
            }
        }
        (0..n).filter(|&i| is_art[i]).collect()
    }

    /// Brute-force 2-connectivity: removing any single cell leaves it connected.
    pub fn two_connected_brute(&self) -> bool {
        self.len() >= 3 && (0..self.len()).all(|i| self.component_count(Some(i)) == 1)
    }

    pub fn is_two_connected(&self) -> bool {
        self.len() >= 3 && self.articulation_points().is_empty()
    }

    /// Flood-fill the complement inside the bounding box grown by one ring;
    /// any component not reaching the box border is a hole.
    pub fn is_hole_free(&self) -> bool {
        let qmin = self.cells.iter().map(|c| c.q).min().unwrap() - 1;
        let qmax = self.cells.iter().map(|c| c.q).max().unwrap() + 1;
        let rmin = self.cells.iter().map(|c| c.r).min().unwrap() - 1;
        let rmax = self.cells.iter().map(|c| c.r).max().unwrap() + 1;
        let inside = |c: HexCoord| c.q >= qmin && c.q <= qmax && c.r >= rmin && c.r <= rmax;
        let on_border = |c: HexCoord| c.q == qmin || c.q == qmax || c.r == rmin || c.r == rmax;
        let mut seen: HashSet<HexCoord> = HashSet::new();
        let mut queue = VecDeque::new();
        for q in qmin..=qmax {
            for r in rmin..=rmax {
                let c = HexCoord::new(q, r);
                if on_border(c) && !self.contains(c) && seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if inside(n) && !self.contains(n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let box_cells = ((qmax - qmin + 1) * (rmax - rmin + 1)) as usize;
        seen.len() + self.len() == box_cells
    }

    /// Canonical cell list up to the 12 lattice symmetries and translation.
    pub fn canonical_form(&self) -> Vec<HexCoord> {
        canonical_form(&self.cells)
    }

    pub fn is_star_of_david(&self) -> bool {
        self.len() == 13 && self.canonical_form() == canonical_form(&star_of_david_cells())
    }

    pub fn to_text(&self) -> String {
        serialize_board(self)
    }
}

/// Canonical representative of a cell set under rotations, reflections and translations.
pub fn canonical_form(cells: &[HexCoord]) -> Vec<HexCoord> {
    let mut best: Option<Vec<HexCoord>> = None;
    let mut cur: Vec<HexCoord> = cells.to_vec();
    for refl in 0..2 {
        if refl == 1 {
            cur = cells.iter().map(|c| c.reflect()).collect();
        }
        for _ in 0..6 {
            cur = cur.iter().map(|c| c.rotate60()).collect();
            let mut v = cur.clone();
            v.sort();
            let m = v[0];
            for c in v.iter_mut() {
                *c = *c - m;
            }
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.unwrap_or_default()
}

/// The 13-cell Star of David: a flower of seven plus six tips.
pub fn star_of_david_cells() -> Vec<HexCoord> {
    let mut v = vec![HexCoord::new(0, 0)];
    v.extend(DIRECTIONS);
    for (q, r) in [(1, 1), (2, -1), (1, -2), (-1, -1), (-2, 1), (-1, 2)] {
        v.push(HexCoord::new(q, r));
    }
    v
}

/// Result of the proper-board test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropernessReport {
    pub odd_size: bool,
    pub connected: bool,
    pub two_connected: bool,
    pub hole_free: bool,
    pub is_star_of_david: bool,
    pub proper: bool,
}

impl fmt::Display for PropernessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "odd_size: {}", self.odd_size)?;
        writeln!(f, "connected: {}", self.connected)?;
        writeln!(f, "two_connected: {}", self.two_connected)?;
        writeln!(f, "hole_free: {}", self.hole_free)?;
        writeln!(f, "is_star_of_david: {}", self.is_star_of_david)?;
        write!(f, "proper: {}", self.proper)
    }
}

pub fn validate_proper(b: &Board) -> PropernessReport {
    let odd_size = b.len() % 2 == 1;
    let connected = b.component_count(None) == 1;
    let two_connected = b.is_two_connected();
    let hole_free = b.is_hole_free();
    let is_star_of_david = b.is_star_of_david();
    PropernessReport {
        odd_size,
        connected,
        two_connected,
        hole_free,
        is_star_of_david,
        proper: odd_size && connected && two_connected && hole_free && !is_star_of_david,
    }
}

/// Simple undirected graph on cell indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardGraph {
    pub vertices: Vec<HexCoord>,
    pub adjacency: Vec<Vec<usize>>,
}

impl BoardGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj {
                if i < j {
                    e.push((i, j));
                }
            }
        }
        e
    }
}

pub fn board_graph(b: &Board) -> BoardGraph {
    BoardGraph {
        vertices: b.cells.clone(),
        adjacency: (0..b.len()).map(|i| b.neighbors(i).collect()).collect(),
    }
}

pub fn parse_board(text: &str) -> Result<Board, BoardError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    match lines.next() {
        Some((_, l)) if l.trim() == BOARD_HEADER => {}
        Some((i, _)) => {
            return Err(BoardError::Syntax { line: i + 1, msg: format!("expected `{BOARD_HEADER}`") })
        }
        None => return Err(BoardError::Empty),
    }
    let mut seen = HashSet::new();
    let mut cells = Vec::new();
    for (i, l) in lines {
        let line = i + 1;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(BoardError::Syntax { line, msg: "expected `q r label`".into() });
        }
        let q = parse_int(parts[0], line)?;
        let r = parse_int(parts[1], line)?;
        let label: Label = parts[2].parse().map_err(|msg| BoardError::Syntax { line, msg })?;
        let c = HexCoord::new(q, r);
        if !seen.insert(c) {
            return Err(BoardError::Duplicate { line, cell: c });
        }
        cells.push((c, label));
    }
    Board::with_labels(cells)
}

pub(crate) fn parse_int(s: &str, line: usize) -> Result<i32, BoardError> {
    s.parse().map_err(|_| BoardError::Syntax { line, msg: format!("bad integer `{s}`") })
}

pub fn serialize_board(b: &Board) -> String {
    let mut s = String::from(BOARD_HEADER);
    s.push('\n');
    for (c, l) in b.cells.iter().zip(&b.labels) {
        s.push_str(&format!("{} {} {}\n", c.q, c.r, l));
    }
    s
}

/// All free polyhexes (connected cell sets up to symmetry) with `size` cells,
/// each in canonical form.
pub fn enumerate_polyhexes(size: usize) -> Vec<Vec<HexCoord>> {
    if size == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<Vec<HexCoord>> = BTreeSet::new();
    level.insert(vec![HexCoord::new(0, 0)]);
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for shape in &level {
            let set: HashSet<HexCoord> = shape.iter().copied().collect();
            let mut tried = HashSet::new();
            for c in shape {
                for n in c.neighbors() {
                    if !set.contains(&n) && tried.insert(n) {
                        let mut grown = shape.clone();
                        grown.push(n);
                        next.insert(canonical_form(&grown));
                    }
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Proper boards with exactly `size` cells, one per congruence class.
pub fn enumerate_proper_boards(size: usize) -> Vec<Board> {
    enumerate_polyhexes(size)
        .into_iter()
        .filter_map(|cells| Board::new(cells).ok())
        .filter(|b| validate_proper(b).proper)
        .collect()
}
