//! Three-phase reconfiguration: align with a Hamiltonian cycle, sort the
//! ring of gourds, then undo the alignment of the target.

mod align;
mod cubic;
mod local;
mod quadratic;
mod ring;

pub use ring::Ring;

use crate::board::{validate_proper, Board, NONE};
use crate::hamilton::{find_hamiltonian, repair_seven_runs, HamiltonError, HamiltonianCycle};
use crate::puzzle::{assigned_target, parse_moves, verify_sequence, Configuration, IMove, Move, PuzzleError, State};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Cycles up to this length are sorted directly by the cubic sorter.
pub const DEFAULT_BASE: usize = 1536;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Cubic,
    #[default]
    Quadratic,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Cubic => "cubic",
            Strategy::Quadratic => "quadratic",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cubic" => Ok(Strategy::Cubic),
            "quadratic" => Ok(Strategy::Quadratic),
            _ => Err(format!("unknown strategy `{s}` (expected cubic or quadratic)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Hamilton(#[from] HamiltonError),
    #[error(transparent)]
    Puzzle(#[from] PuzzleError),
    #[error("cycle does not match the board")]
    BadCycle,
    #[error("internal solver failure: {0}")]
    Internal(String),
}

/// Gourds aligned with cycle edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedState {
    pub cycle: HamiltonianCycle,
    /// Gourd indices in cycle order after E, with `true` when end a comes first.
    pub ring: Vec<(usize, bool)>,
    pub empty_index: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStats {
    pub s1: usize,
    pub s2: usize,
    pub s3: usize,
}

impl PlanStats {
    pub fn total(&self) -> usize {
        self.s1 + self.s2 + self.s3
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvePlan {
    pub s1: Vec<Move>,
    pub s2: Vec<Move>,
    pub s3: Vec<Move>,
    pub stats: PlanStats,
    pub strategy: Strategy,
}

impl SolvePlan {
    pub fn moves(&self) -> Vec<Move> {
        self.s1.iter().chain(&self.s2).chain(&self.s3).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.stats.total()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("gourds-plan v1\n");
        s.push_str(&format!("# strategy {}\n", self.strategy));
        s.push_str(&format!("# moves s1={} s2={} s3={}\n", self.stats.s1, self.stats.s2, self.stats.s3));
        for (tag, ms) in [("[S1]", &self.s1), ("[S2]", &self.s2), ("[S3]", &self.s3)] {
            s.push_str(tag);
            s.push('\n');
            for m in ms {
                s.push_str(&format!("{m}\n"));
            }
        }
        s
    }
}

/// Parse a plan file; a bare move list is read as a single phase.
pub fn parse_plan(text: &str) -> Result<SolvePlan, PuzzleError> {
    let mut parts: [String; 3] = Default::default();
    let mut cur = 0;
    let mut strategy = Strategy::Quadratic;
    for l in text.lines() {
        let t = l.trim();
        match t {
            "[S1]" => cur = 0,
            "[S2]" => cur = 1,
            "[S3]" => cur = 2,
            _ => {
                if let Some(s) = t.strip_prefix("# strategy ") {
                    strategy = s.trim().parse().unwrap_or(strategy);
                }
                parts[cur].push_str(l);
                parts[cur].push('\n');
            }
        }
    }
    let [s1, s2, s3] = [parse_moves(&parts[0])?, parse_moves(&parts[1])?, parse_moves(&parts[2])?];
    let stats = PlanStats { s1: s1.len(), s2: s2.len(), s3: s3.len() };
    Ok(SolvePlan { s1, s2, s3, stats, strategy })
}

/// A board prepared for solving: its repaired Hamiltonian cycle and ring.
#[derive(Clone, Debug)]
pub struct Solver {
    board: Board,
    cycle: HamiltonianCycle,
    ring: Ring,
    base: usize,
}

impl Solver {
    /// Find and repair a Hamiltonian cycle of a proper board.
    pub fn new(b: &Board) -> Result<Solver, SolveError> {
        let h = find_hamiltonian(b)?;
        let h = repair_seven_runs(b, &h);
        Solver::with_cycle(b, h)
    }

    pub fn with_cycle(b: &Board, h: HamiltonianCycle) -> Result<Solver, SolveError> {
        if !h.is_valid_for(b) {
            return Err(SolveError::BadCycle);
        }
        let report = validate_proper(b);
        if !report.proper {
            return Err(HamiltonError::Improper(report).into());
        }
        let cells = h.order.iter().map(|&c| b.index_of(c).unwrap() as u32).collect();
        Ok(Solver { board: b.clone(), ring: Ring::new(cells, b.len()), cycle: h, base: DEFAULT_BASE })
    }

    /// Override the cycle length handed to the cubic sorter.
    pub fn with_base(mut self, base: usize) -> Solver {
        self.base = base;
        self
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn cycle(&self) -> &HamiltonianCycle {
        &self.cycle
    }

    fn to_moves(&self, ms: &[IMove]) -> Vec<Move> {
        ms.iter().map(|m| m.to_move(&self.board)).collect()
    }

    fn aligned(&self, st: &State) -> AlignedState {
        AlignedState {
            cycle: self.cycle.clone(),
            ring: self
                .ring
                .order(st)
                .into_iter()
                .map(|g| (g as usize, self.ring.forward(st, g)))
                .collect(),
            empty_index: self.ring.e_index(st).unwrap(),
        }
    }

    /// Phase one on a configuration.
    pub fn align(&self, c: &Configuration) -> Result<(Vec<Move>, AlignedState), SolveError> {
        let mut st = State::from_config(&self.board, c)?;
        let mut out = Vec::new();
        align::align(&self.board, &self.ring, &mut st, &mut out);
        Ok((self.to_moves(&out), self.aligned(&st)))
    }

    /// Shift E by `k` cycle positions in an aligned configuration.
    pub fn rotate(&self, c: &Configuration, k: i64) -> Result<Vec<Move>, SolveError> {
        let mut st = State::from_config(&self.board, c)?;
        if !self.ring.is_aligned(&st) {
            return Err(SolveError::Internal("configuration is not aligned".into()));
        }
        let mut out = Vec::new();
        let steps = -k * self.ring.gourds() as i64;
        self.ring.rotate(&self.board, &mut st, steps, &mut out);
        Ok(self.to_moves(&out))
    }

    /// Phase two between two aligned configurations of the same gourds.
    pub fn sort(&self, from: &Configuration, to: &Configuration, strategy: Strategy) -> Result<Vec<Move>, SolveError> {
        let mut st = State::from_config(&self.board, from)?;
        let goal = State::from_config(&self.board, to)?;
        if !self.ring.is_aligned(&st) || !self.ring.is_aligned(&goal) {
            return Err(SolveError::Internal("configuration is not aligned".into()));
        }
        let mut out = Vec::new();
        self.sort_states(&mut st, &goal, strategy, &mut out)?;
        Ok(self.to_moves(&out))
    }

    /// Sorts after renaming gourds by ring slot, so the moves depend only on
    /// the cells of both states and not on how their gourds are numbered.
    fn sort_states(&self, st: &mut State, goal: &State, strategy: Strategy, out: &mut Vec<IMove>) -> Result<(), SolveError> {
        let names = self.ring.slot_names(st);
        let mut cur = ring::renamed(st, &names);
        let want = ring::renamed(goal, &names);
        match strategy {
            Strategy::Cubic => cubic::sort_cubic(&self.board, &self.ring, &mut cur, &want, out)?,
            Strategy::Quadratic => quadratic::sort_quadratic(&self.board, &self.ring, &mut cur, &want, self.base, out)?,
        }
        if cur.pos != want.pos || cur.empty != want.empty {
            return Err(SolveError::Internal("sorter stopped short of its goal".into()));
        }
        *st = goal.clone();
        Ok(())
    }

    /// Full plan from `start` to `target`; labels decide which gourd goes where.
    pub fn solve(&self, start: &Configuration, target: &Configuration, strategy: Strategy) -> Result<SolvePlan, SolveError> {
        let b = &self.board;
        let tgt = assigned_target(start, target)?;
        let mut st = State::from_config(b, start)?;
        let mut goal = State::from_config(b, &tgt)?;
        let mut s1 = Vec::new();
        align::align(b, &self.ring, &mut st, &mut s1);
        let mut s3 = Vec::new();
        align::align(b, &self.ring, &mut goal, &mut s3);
        let s3: Vec<IMove> = s3.iter().rev().map(|m| m.inverse()).collect();
        let mut s2 = Vec::new();
        self.sort_states(&mut st, &goal, strategy, &mut s2)?;
        if st != goal {
            return Err(SolveError::Internal("sorted ring differs from the aligned target".into()));
        }
        let plan = SolvePlan {
            stats: PlanStats { s1: s1.len(), s2: s2.len(), s3: s3.len() },
            s1: self.to_moves(&s1),
            s2: self.to_moves(&s2),
            s3: self.to_moves(&s3),
            strategy,
        };
        let end = verify_sequence(b, start, &plan.moves())?;
        if end != tgt {
            return Err(SolveError::Internal("plan does not replay to the target".into()));
        }
        Ok(plan)
    }
}

/// Solve on a fresh [`Solver`] for `b`.
pub fn solve(b: &Board, start: &Configuration, target: &Configuration, strategy: Strategy) -> Result<SolvePlan, SolveError> {
    Solver::new(b)?.solve(start, target, strategy)
}

/// Phase one along a given cycle.
pub fn align_phase(b: &Board, h: &HamiltonianCycle, c: &Configuration) -> Result<(Vec<Move>, AlignedState), SolveError> {
    Solver::with_cycle(b, h.clone())?.align(c)
}

/// Shift E by `k` positions along `h` in an aligned configuration.
pub fn rotate_cycle(b: &Board, h: &HamiltonianCycle, c: &Configuration, k: i64) -> Result<Vec<Move>, SolveError> {
    Solver::with_cycle(b, h.clone())?.rotate(c, k)
}

/// Phase two with the cubic sorter.
pub fn sort_cubic(b: &Board, h: &HamiltonianCycle, from: &Configuration, to: &Configuration) -> Result<Vec<Move>, SolveError> {
    Solver::with_cycle(b, h.clone())?.sort(from, to, Strategy::Cubic)
}

/// Phase two with the divide and conquer sorter.
pub fn sort_quadratic(b: &Board, h: &HamiltonianCycle, from: &Configuration, to: &Configuration) -> Result<Vec<Move>, SolveError> {
    Solver::with_cycle(b, h.clone())?.sort(from, to, Strategy::Quadratic)
}

fn bfs_from(b: &Board, src: usize) -> Vec<u32> {
    let mut d = vec![NONE; b.len()];
    d[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for y in b.neighbors(x) {
            if d[y] == NONE {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

/// Half the summed end-to-end distances between `start` and an assigned
/// target (gourd i of `start` goes to gourd i of `target`), rounded up.
pub fn displacement_lower_bound(b: &Board, start: &Configuration, target: &Configuration) -> Result<u64, PuzzleError> {
    if start.gourds.len() != target.gourds.len() {
        return Err(PuzzleError::LabelMismatch("gourd counts differ".into()));
    }
    let mut cache: std::collections::HashMap<usize, Vec<u32>> = std::collections::HashMap::new();
    let mut dist = |from, to| -> Result<u64, PuzzleError> {
        let i = b.index_of(from).ok_or_else(|| PuzzleError::NotCovering(format!("{from} is off the board")))?;
        let j = b.index_of(to).ok_or_else(|| PuzzleError::NotCovering(format!("{to} is off the board")))?;
        Ok(cache.entry(i).or_insert_with(|| bfs_from(b, i))[j] as u64)
    };
    let mut sum = 0;
    for (g, t) in start.gourds.iter().zip(&target.gourds) {
        sum += dist(g.end_a, t.end_a)? + dist(g.end_b, t.end_b)?;
    }
    Ok(sum.div_ceil(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_configuration, random_proper_board};

    fn check(size: usize, seed: u64, strategy: Strategy, base: usize) -> usize {
        let b = random_proper_board(size, 0.5, seed);
        let s = random_configuration(&b, 40 * size, seed + 1);
        let t = random_configuration(&b, 40 * size, seed + 2);
        let solver = Solver::new(&b).unwrap().with_base(base);
        let plan = solver.solve(&s, &t, strategy).unwrap_or_else(|e| panic!("size {size} seed {seed}: {e}"));
        assert_eq!(verify_sequence(&b, &s, &plan.moves()).unwrap(), t);
        plan.len()
    }

    #[test]
    fn cubic_plans_verify() {
        for seed in 0..30 {
            check(3 + 2 * (seed as usize % 20), seed, Strategy::Cubic, DEFAULT_BASE);
        }
    }

    #[test]
    fn quadratic_plans_verify_with_small_base() {
        for seed in 0..30 {
            check(11 + 4 * (seed as usize % 20), seed, Strategy::Quadratic, 7);
        }
    }

    #[test]
    fn plan_text_round_trip() {
        let b = random_proper_board(15, 0.5, 3);
        let s = random_configuration(&b, 200, 4);
        let t = random_configuration(&b, 200, 5);
        let plan = solve(&b, &s, &t, Strategy::Cubic).unwrap();
        assert_eq!(parse_plan(&plan.to_text()).unwrap(), plan);
    }

    #[test]
    fn rotation_by_one_moves_every_gourd_once() {
        let b = random_proper_board(13, 0.5, 9);
        let solver = Solver::new(&b).unwrap();
        let c = crate::generate::numbered_configuration(solver.cycle());
        let fwd = solver.rotate(&c, 1).unwrap();
        // one step per gourd; a sharp turn is two pivots
        let pivots = fwd.iter().filter(|m| m.kind == crate::puzzle::MoveKind::Pivot).count();
        assert_eq!(pivots % 2, 0);
        assert_eq!(fwd.len() - pivots / 2, 6);
        let mid = verify_sequence(&b, &c, &fwd).unwrap();
        let back = solver.rotate(&mid, -1).unwrap();
        assert_eq!(verify_sequence(&b, &mid, &back).unwrap(), c);
    }
}
