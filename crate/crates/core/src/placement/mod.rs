//! Colored gourd placement: an exact solver and the 1-in-3SAT reduction.

mod reduce;
mod sat;

pub use reduce::{
    brick, clause_gadget_board, clause_option, clause_template, column, reduce_1in3sat, variable_gadget_board,
    variable_template, verify_reduction, ClausePart, ReductionReport, Template, CLAUSE_WIDTH, HEIGHT, VARIABLE_WIDTH,
};
pub use sat::{brute_1in3sat, parse_formula, serialize_formula, Formula1in3, FormulaError, MAX_BRUTE_VARIABLES};

use crate::board::{parse_board, serialize_board, Board, BoardError, Label};
use crate::puzzle::{Configuration, Gourd};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::ControlFlow;
use thiserror::Error;

/// Largest board accepted by [`enumerate_placements`].
pub const ENUMERATE_GUARD: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlacementError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("board has {0} cells, above the enumeration guard of {ENUMERATE_GUARD}")]
    Guard(usize),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// Unordered label pair with the smaller label first.
pub fn pair(a: Label, b: Label) -> (Label, Label) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A colored board and a multiset of gourd color pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementInstance {
    pub board: Board,
    pub budget: BTreeMap<(Label, Label), u32>,
}

impl PlacementInstance {
    pub fn new(board: Board, budget: impl IntoIterator<Item = ((Label, Label), u32)>) -> PlacementInstance {
        let mut b = BTreeMap::new();
        for ((x, y), n) in budget {
            *b.entry(pair(x, y)).or_insert(0) += n;
        }
        b.retain(|_, n| *n > 0);
        PlacementInstance { board, budget: b }
    }

    pub fn gourd_count(&self) -> u32 {
        self.budget.values().sum()
    }

    /// Cells minus gourd ends, per label; a valid instance has a single +1.
    pub fn color_surplus(&self) -> BTreeMap<Label, i64> {
        let mut m: BTreeMap<Label, i64> = BTreeMap::new();
        for &l in self.board.labels() {
            *m.entry(l).or_insert(0) += 1;
        }
        for (&(a, b), &n) in &self.budget {
            *m.entry(a).or_insert(0) -= n as i64;
            *m.entry(b).or_insert(0) -= n as i64;
        }
        m.retain(|_, v| *v != 0);
        m
    }

    pub fn validate(&self) -> Result<(), PlacementError> {
        let cells = self.board.len() as u64;
        let gourds = self.gourd_count() as u64;
        if 2 * gourds + 1 != cells {
            return Err(PlacementError::Malformed(format!("{gourds} gourds cannot leave one of {cells} cells empty")));
        }
        let s = self.color_surplus();
        if s.len() != 1 || s.values().next() != Some(&1) {
            let list: Vec<String> = s.iter().map(|(l, v)| format!("{l}:{v:+}")).collect();
            return Err(PlacementError::Malformed(format!("color counts off: {}", list.join(" "))));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = serialize_board(&self.board);
        for (&(a, b), &n) in &self.budget {
            s.push_str(&format!("b {a} {b} {n}\n"));
        }
        s
    }
}

/// Read a board followed by budget lines `b <colorA> <colorB> <count>`.
pub fn parse_instance(text: &str) -> Result<PlacementInstance, PlacementError> {
    let mut board_text = String::new();
    let mut budget = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let p: Vec<&str> = l.split_whitespace().collect();
        if p.first() == Some(&"b") {
            let bad = |msg: &str| PlacementError::Syntax { line: i + 1, msg: msg.into() };
            if p.len() != 4 {
                return Err(bad("expected `b <colorA> <colorB> <count>`"));
            }
            let a: Label = p[1].parse().map_err(|e: String| bad(&e))?;
            let b: Label = p[2].parse().map_err(|e: String| bad(&e))?;
            let n: u32 = p[3].parse().map_err(|_| bad("bad count"))?;
            budget.push(((a, b), n));
        } else {
            board_text.push_str(l);
        }
        board_text.push('\n');
    }
    Ok(PlacementInstance::new(parse_board(&board_text)?, budget))
}

struct Search<'a> {
    b: &'a Board,
    color: Vec<usize>,
    labels: Vec<Label>,
    /// Pair index per (color, color), `usize::MAX` when absent from the budget.
    pid: Vec<Vec<usize>>,
    budget: Vec<u32>,
    covered: Vec<bool>,
    remaining: Vec<usize>,
    surplus: usize,
    empty: Option<usize>,
    placed: Vec<(usize, usize)>,
    failed: HashSet<(Vec<u64>, Vec<u32>, bool)>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a PlacementInstance) -> Search<'a> {
        let b = &inst.board;
        let mut labels: Vec<Label> = b.labels().to_vec();
        for &(x, y) in inst.budget.keys() {
            labels.push(x);
            labels.push(y);
        }
        labels.sort();
        labels.dedup();
        let idx: HashMap<Label, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let k = labels.len();
        let mut pid = vec![vec![usize::MAX; k]; k];
        let mut budget = Vec::new();
        for (&(x, y), &n) in &inst.budget {
            let (i, j) = (idx[&x], idx[&y]);
            pid[i][j] = budget.len();
            pid[j][i] = budget.len();
            budget.push(n);
        }
        let color: Vec<usize> = b.labels().iter().map(|l| idx[l]).collect();
        let mut remaining = vec![0; k];
        for &c in &color {
            remaining[c] += 1;
        }
        let surplus = idx[inst.color_surplus().keys().next().unwrap()];
        Search {
            b,
            color,
            labels,
            pid,
            budget,
            covered: vec![false; b.len()],
            remaining,
            surplus,
            empty: None,
            placed: Vec::new(),
            failed: HashSet::new(),
        }
    }

    fn key(&self) -> (Vec<u64>, Vec<u32>, bool) {
        let mut bits = vec![0u64; self.covered.len().div_ceil(64)];
        for (i, &c) in self.covered.iter().enumerate() {
            if c {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        (bits, self.budget.clone(), self.empty.is_some())
    }

    fn options(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.b.neighbors(i).filter_map(move |j| {
            if self.covered[j] {
                return None;
            }
            let p = self.pid[self.color[i]][self.color[j]];
            (p != usize::MAX && self.budget[p] > 0).then_some((j, p))
        })
    }

    /// Uncovered components with an odd cell count.
    fn odd_components(&self) -> usize {
        let n = self.b.len();
        let mut seen = self.covered.clone();
        let mut odd = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut size = 0;
            while let Some(x) = stack.pop() {
                size += 1;
                for y in self.b.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            odd += size % 2;
        }
        odd
    }

    fn set(&mut self, i: usize, on: bool) {
        self.covered[i] = on;
        if on {
            self.remaining[self.color[i]] -= 1;
        } else {
            self.remaining[self.color[i]] += 1;
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&Self) -> ControlFlow<()>) -> ControlFlow<(), bool> {
        // most constrained cell first, scarce colors breaking ties
        let mut best: Option<(usize, usize, usize)> = None;
        let mut any = false;
        for i in 0..self.b.len() {
            if self.covered[i] {
                continue;
            }
            any = true;
            let rank = (self.options(i).count(), self.remaining[self.color[i]], i);
            if best.is_none_or(|b| rank < b) {
                best = Some(rank);
            }
        }
        if !any {
            visit(self)?;
            return ControlFlow::Continue(true);
        }
        let key = self.key();
        if self.failed.contains(&key) {
            return ControlFlow::Continue(false);
        }
        let allowed_odd = usize::from(self.empty.is_none());
        let mut found = false;
        if self.odd_components() <= allowed_odd {
            let (_, _, i) = best.unwrap();
            let opts: Vec<(usize, usize)> = self.options(i).collect();
            for (j, p) in opts {
                self.budget[p] -= 1;
                self.set(i, true);
                self.set(j, true);
                self.placed.push((i, j));
                let r = self.run(visit);
                self.placed.pop();
                self.set(i, false);
                self.set(j, false);
                self.budget[p] += 1;
                found |= r?;
            }
            if self.empty.is_none() && self.color[i] == self.surplus {
                self.empty = Some(i);
                self.set(i, true);
                let r = self.run(visit);
                self.set(i, false);
                self.empty = None;
                found |= r?;
            }
        }
        if !found {
            self.failed.insert(key);
        }
        ControlFlow::Continue(found)
    }

    fn configuration(&self) -> Configuration {
        let mut gourds: Vec<Gourd> = self
            .placed
            .iter()
            .map(|&(i, j)| {
                let (i, j) = if self.b.cell(i) <= self.b.cell(j) { (i, j) } else { (j, i) };
                Gourd::new(self.b.cell(i), self.labels[self.color[i]], self.b.cell(j), self.labels[self.color[j]])
            })
            .collect();
        gourds.sort_by_key(|g| (g.end_a, g.end_b));
        Configuration { gourds, empty: self.b.cell(self.empty.expect("one cell stays empty")) }
    }
}

/// A covering of all cells but one that consumes the budget exactly, if any.
pub fn solve_placement(inst: &PlacementInstance) -> Result<Option<Configuration>, PlacementError> {
    inst.validate()?;
    let mut s = Search::new(inst);
    let mut out = None;
    let _ = s.run(&mut |s| {
        out = Some(s.configuration());
        ControlFlow::Break(())
    });
    Ok(out)
}

/// All coverings, up to `limit`, in a canonical order.
pub fn enumerate_placements(inst: &PlacementInstance, limit: usize) -> Result<Vec<Configuration>, PlacementError> {
    if inst.board.len() > ENUMERATE_GUARD {
        return Err(PlacementError::Guard(inst.board.len()));
    }
    inst.validate()?;
    let mut s = Search::new(inst);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if limit > 0 {
        let _ = s.run(&mut |s| {
            let c = s.configuration();
            if seen.insert(format!("{c:?}")) {
                out.push(c);
            }
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    }
    Ok(out)
}

/// True when `c` covers the instance board and uses the budget exactly.
pub fn is_placement(inst: &PlacementInstance, c: &Configuration) -> bool {
    if crate::puzzle::check_covers(&inst.board, c).is_err() {
        return false;
    }
    let mut used: BTreeMap<(Label, Label), u32> = BTreeMap::new();
    for g in &c.gourds {
        if inst.board.label(g.end_a) != g.label_a || inst.board.label(g.end_b) != g.label_b {
            return false;
        }
        *used.entry(pair(g.label_a, g.label_b)).or_insert(0) += 1;
    }
    used == inst.budget
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hex::HexCoord;

    fn c(k: u32) -> Label {
        Label::Color(k)
    }

    fn tri(labels: [u32; 3]) -> Board {
        let cells = [HexCoord::new(0, 0), HexCoord::new(1, 0), HexCoord::new(0, 1)];
        Board::with_labels(cells.into_iter().zip(labels.map(c))).unwrap()
    }

    #[test]
    fn triangle_examples() {
        let inst = PlacementInstance::new(tri([1, 1, 2]), [((c(1), c(2)), 1)]);
        let sol = solve_placement(&inst).unwrap().unwrap();
        assert!(is_placement(&inst, &sol));
        assert_eq!(inst.board.label(sol.empty), c(1));
        assert_eq!(enumerate_placements(&inst, 10).unwrap().len(), 2);

        // no cell matches the budget colors: rejected before any search
        let bad = PlacementInstance::new(tri([1, 1, 1]), [((c(2), c(2)), 1)]);
        assert!(matches!(solve_placement(&bad), Err(PlacementError::Malformed(_))));
    }

    #[test]
    fn color_mismatch_is_unsat() {
        // a path of three cells colored 1,2,1 cannot host a (1,1) gourd
        let cells = [HexCoord::new(0, 0), HexCoord::new(1, 0), HexCoord::new(2, 0)];
        let b = Board::with_labels(cells.into_iter().zip([c(1), c(2), c(1)])).unwrap();
        let inst = PlacementInstance::new(b, [((c(1), c(1)), 1)]);
        inst.validate().unwrap();
        assert_eq!(solve_placement(&inst).unwrap(), None);
        assert!(enumerate_placements(&inst, 5).unwrap().is_empty());
    }

    #[test]
    fn instance_text_round_trip() {
        let inst = PlacementInstance::new(tri([1, 1, 2]), [((c(2), c(1)), 1)]);
        let back = parse_instance(&inst.to_text()).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn guard_applies_to_enumeration() {
        let f = Formula1in3::from_indices(3, vec![[0, 1, 2]; 3]);
        let inst = reduce_1in3sat(&f).unwrap();
        assert!(matches!(enumerate_placements(&inst, 1), Err(PlacementError::Guard(_))));
    }

    #[test]
    fn variable_gadget_has_two_splits() {
        let b = variable_gadget_board();
        assert_eq!(b.len(), 17);
        let mut ok = Vec::new();
        for a in 0..=3u32 {
            let budget = [((c(0), c(0)), a), ((c(0), c(1)), 6 - 2 * a), ((c(1), c(1)), a), ((c(2), c(2)), 2)];
            let inst = PlacementInstance::new(b.clone(), budget);
            if !enumerate_placements(&inst, 1000).unwrap().is_empty() {
                ok.push(a);
            }
        }
        assert_eq!(ok, [0, 3]);
    }

    #[test]
    fn clause_options_all_fit() {
        let whole = clause_gadget_board(ClausePart::Whole);
        assert_eq!(whole.len(), 49);
        for k in 0..3 {
            let mut budget = clause_option(k);
            budget.push(((c(4), c(4)), 12));
            let inst = PlacementInstance::new(whole.clone(), budget);
            let sol = solve_placement(&inst).unwrap().expect("option fits");
            assert!(is_placement(&inst, &sol));
        }
    }

    #[test]
    fn reduction_reports_corruption() {
        let f = Formula1in3::from_indices(3, vec![[0, 1, 2]; 3]);
        let inst = reduce_1in3sat(&f).unwrap();
        assert!(verify_reduction(&inst, &f).ok());

        let mut fewer = inst.clone();
        *fewer.budget.get_mut(&(c(3), c(3))).unwrap() -= 1;
        let rep = verify_reduction(&fewer, &f);
        assert!(!rep.color_counts);

        // color the F cell between the first two sections V
        let bridge = brick(VARIABLE_WIDTH - 1, 1);
        let merged = inst.board.relabeled(|x| if x == bridge { c(3) } else { inst.board.label(x) });
        let rep = verify_reduction(&PlacementInstance { board: merged, budget: inst.budget.clone() }, &f);
        assert!(!rep.disjoint, "{rep}");
    }

    #[test]
    fn budget_arithmetic() {
        for (n, cl) in [(3, vec![[0, 1, 2]; 3]), (4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])] {
            let f = Formula1in3::from_indices(n, cl);
            let inst = reduce_1in3sat(&f).unwrap();
            assert_eq!(inst.gourd_count() as usize, 40 * n);
            assert_eq!(inst.board.len(), 80 * n + 1);
        }
    }
}
