//! Gourds, configurations, the move primitives and the reachability oracle.

use crate::board::{parse_int, Board, BoardError, Label, NONE};
use crate::hex::HexCoord;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

pub const CONFIG_HEADER: &str = "gourds-config v1";
pub const DEFAULT_STATE_GUARD: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gourd {
    pub end_a: HexCoord,
    pub end_b: HexCoord,
    pub label_a: Label,
    pub label_b: Label,
}

impl Gourd {
    pub fn new(end_a: HexCoord, label_a: Label, end_b: HexCoord, label_b: Label) -> Gourd {
        Gourd { end_a, end_b, label_a, label_b }
    }

    /// Unordered label pair, smaller first.
    pub fn label_class(&self) -> (Label, Label) {
        if self.label_a <= self.label_b {
            (self.label_a, self.label_b)
        } else {
            (self.label_b, self.label_a)
        }
    }

    pub fn covers(&self, c: HexCoord) -> bool {
        self.end_a == c || self.end_b == c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub gourds: Vec<Gourd>,
    pub empty: HexCoord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    Slide,
    Turn,
    Pivot,
    /// 120 degree rotation with both ends next to E; only under sharp-turn rules.
    SharpTurn,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::Slide => "slide",
            MoveKind::Turn => "turn",
            MoveKind::Pivot => "pivot",
            MoveKind::SharpTurn => "sharp",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub tail: HexCoord,
    pub head: HexCoord,
    pub target: HexCoord,
    pub kind: MoveKind,
}

impl Move {
    /// Build a pivot-rules move, deriving its kind from the geometry.
    pub fn new(tail: HexCoord, head: HexCoord, target: HexCoord) -> Option<Move> {
        classify(tail, head, target).map(|kind| Move { tail, head, target, kind })
    }

    /// The move undoing this one.
    pub fn inverse(&self) -> Move {
        match self.kind {
            MoveKind::Pivot => Move { tail: self.tail, head: self.target, target: self.head, kind: self.kind },
            _ => Move { tail: self.target, head: self.head, target: self.tail, kind: self.kind },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m {} {} {} {} {} {}",
            self.tail.q, self.tail.r, self.head.q, self.head.r, self.target.q, self.target.r
        )
    }
}

/// Kind of the pivot-rules move (tail, head, target), if the triple is a move at all.
pub fn classify(tail: HexCoord, head: HexCoord, target: HexCoord) -> Option<MoveKind> {
    if !tail.is_adjacent(head) || !head.is_adjacent(target) || target == tail {
        return None;
    }
    if target - head == head - tail {
        Some(MoveKind::Slide)
    } else if target.is_adjacent(tail) {
        Some(MoveKind::Pivot)
    } else {
        Some(MoveKind::Turn)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum OracleMode {
    #[default]
    PivotRules,
    SharpTurnRules,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuzzleError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("configuration does not cover the board: {0}")]
    NotCovering(String),
    #[error("move {index}: {reason}")]
    IllegalMove { index: usize, reason: String },
    #[error("state space exceeds guard of {0} states")]
    StateGuard(usize),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
}

impl From<BoardError> for PuzzleError {
    fn from(e: BoardError) -> Self {
        match e {
            BoardError::Syntax { line, msg } => PuzzleError::Syntax { line, msg },
            other => PuzzleError::Syntax { line: 0, msg: other.to_string() },
        }
    }
}

/// Check that a configuration exactly covers the board.
pub fn check_covers(b: &Board, c: &Configuration) -> Result<(), PuzzleError> {
    let mut seen = HashSet::new();
    let mut claim = |x: HexCoord| -> Result<(), PuzzleError> {
        if !b.contains(x) {
            return Err(PuzzleError::NotCovering(format!("cell {x} is off the board")));
        }
        if !seen.insert(x) {
            return Err(PuzzleError::NotCovering(format!("cell {x} is used twice")));
        }
        Ok(())
    };
    for g in &c.gourds {
        if !g.end_a.is_adjacent(g.end_b) {
            return Err(PuzzleError::NotCovering(format!(
                "gourd ends {} and {} are not adjacent",
                g.end_a, g.end_b
            )));
        }
        claim(g.end_a)?;
        claim(g.end_b)?;
    }
    claim(c.empty)?;
    if seen.len() != b.len() {
        return Err(PuzzleError::NotCovering(format!(
            "{} of {} cells covered",
            seen.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Index-based mutable state used by the solver and the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    /// Per cell: `NONE` when empty, otherwise `gourd << 1 | end` (end 0 = a, 1 = b).
    pub occ: Vec<u32>,
    /// Per gourd: cells of end a and end b.
    pub pos: Vec<[u32; 2]>,
    pub empty: u32,
}

/// A move between cell indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IMove {
    pub tail: u32,
    pub head: u32,
    pub target: u32,
    pub kind: MoveKind,
}

impl IMove {
    pub fn inverse(&self) -> IMove {
        match self.kind {
            MoveKind::Pivot => IMove { tail: self.tail, head: self.target, target: self.head, kind: self.kind },
            _ => IMove { tail: self.target, head: self.head, target: self.tail, kind: self.kind },
        }
    }

    pub fn to_move(&self, b: &Board) -> Move {
        Move {
            tail: b.cell(self.tail as usize),
            head: b.cell(self.head as usize),
            target: b.cell(self.target as usize),
            kind: self.kind,
        }
    }
}

impl State {
    pub fn from_config(b: &Board, c: &Configuration) -> Result<State, PuzzleError> {
        check_covers(b, c)?;
        let mut occ = vec![NONE; b.len()];
        let mut pos = Vec::with_capacity(c.gourds.len());
        for (g, gd) in c.gourds.iter().enumerate() {
            let ia = b.index_of(gd.end_a).unwrap() as u32;
            let ib = b.index_of(gd.end_b).unwrap() as u32;
            occ[ia as usize] = (g as u32) << 1;
            occ[ib as usize] = ((g as u32) << 1) | 1;
            pos.push([ia, ib]);
        }
        Ok(State { occ, pos, empty: b.index_of(c.empty).unwrap() as u32 })
    }

    /// Rebuild a configuration, taking labels from `labels[g] = (label_a, label_b)`.
    pub fn to_config(&self, b: &Board, labels: &[(Label, Label)]) -> Configuration {
        Configuration {
            gourds: self
                .pos
                .iter()
                .zip(labels)
                .map(|(p, l)| Gourd::new(b.cell(p[0] as usize), l.0, b.cell(p[1] as usize), l.1))
                .collect(),
            empty: b.cell(self.empty as usize),
        }
    }

    /// Cell of the other end of the gourd covering `cell`.
    #[inline]
    pub fn partner(&self, cell: u32) -> u32 {
        let code = self.occ[cell as usize];
        self.pos[(code >> 1) as usize][(code & 1 ^ 1) as usize]
    }

    /// Apply a move assumed legal.
    #[inline]
    pub fn apply(&mut self, m: IMove) {
        let hc = self.occ[m.head as usize];
        match m.kind {
            MoveKind::Pivot => {
                self.occ[m.target as usize] = hc;
                self.occ[m.head as usize] = NONE;
                self.pos[(hc >> 1) as usize][(hc & 1) as usize] = m.target;
                self.empty = m.head;
            }
            _ => {
                let tc = self.occ[m.tail as usize];
                self.occ[m.target as usize] = hc;
                self.occ[m.head as usize] = tc;
                self.occ[m.tail as usize] = NONE;
                self.pos[(hc >> 1) as usize][(hc & 1) as usize] = m.target;
                self.pos[(tc >> 1) as usize][(tc & 1) as usize] = m.head;
                self.empty = m.tail;
            }
        }
    }

    /// Check and apply a move between indices.
    pub fn try_apply(&mut self, b: &Board, m: IMove, mode: OracleMode) -> Result<(), String> {
        if m.target != self.empty {
            return Err("target is not the empty cell".into());
        }
        if self.occ[m.head as usize] == NONE || self.partner(m.head) != m.tail {
            return Err("tail and head are not one gourd".into());
        }
        let want = kind_of(b, m.tail, m.head, m.target, mode).ok_or("cells do not form a move")?;
        if want != m.kind {
            return Err(format!("kind {} does not match geometry ({want})", m.kind));
        }
        self.apply(m);
        Ok(())
    }

    /// Legal moves in a fixed order.
    pub fn legal_moves(&self, b: &Board, mode: OracleMode, out: &mut Vec<IMove>) {
        out.clear();
        let e = self.empty;
        for &h in b.raw_neighbors(e as usize) {
            if h == NONE {
                continue;
            }
            let t = self.partner(h);
            if let Some(kind) = kind_of(b, t, h, e, mode) {
                out.push(IMove { tail: t, head: h, target: e, kind });
            }
        }
    }
}

/// Kind of the move (tail, head, target) on indices, or `None` if not a move in `mode`.
pub fn kind_of(b: &Board, t: u32, h: u32, e: u32, mode: OracleMode) -> Option<MoveKind> {
    let (tc, hc, ec) = (b.cell(t as usize), b.cell(h as usize), b.cell(e as usize));
    match classify(tc, hc, ec)? {
        MoveKind::Pivot if mode == OracleMode::SharpTurnRules => Some(MoveKind::SharpTurn),
        k => Some(k),
    }
}

fn to_imove(b: &Board, m: &Move) -> Option<IMove> {
    Some(IMove {
        tail: b.index_of(m.tail)? as u32,
        head: b.index_of(m.head)? as u32,
        target: b.index_of(m.target)? as u32,
        kind: m.kind,
    })
}

fn labels_of(c: &Configuration) -> Vec<(Label, Label)> {
    c.gourds.iter().map(|g| (g.label_a, g.label_b)).collect()
}

fn mode_of(m: &Move) -> OracleMode {
    if m.kind == MoveKind::SharpTurn {
        OracleMode::SharpTurnRules
    } else {
        OracleMode::PivotRules
    }
}

pub fn legal_moves(b: &Board, c: &Configuration, mode: OracleMode) -> Result<Vec<Move>, PuzzleError> {
    let st = State::from_config(b, c)?;
    let mut out = Vec::new();
    st.legal_moves(b, mode, &mut out);
    Ok(out.iter().map(|m| m.to_move(b)).collect())
}

pub fn apply_move(b: &Board, c: &Configuration, m: &Move) -> Result<Configuration, PuzzleError> {
    let mut st = State::from_config(b, c)?;
    let im = to_imove(b, m)
        .ok_or_else(|| PuzzleError::IllegalMove { index: 0, reason: "cell off the board".into() })?;
    st.try_apply(b, im, mode_of(m))
        .map_err(|reason| PuzzleError::IllegalMove { index: 0, reason })?;
    Ok(st.to_config(b, &labels_of(c)))
}

/// Replay `moves` from `start`, checking each step.
pub fn verify_sequence(b: &Board, start: &Configuration, moves: &[Move]) -> Result<Configuration, PuzzleError> {
    let mut st = State::from_config(b, start)?;
    for (index, m) in moves.iter().enumerate() {
        let im = to_imove(b, m)
            .ok_or_else(|| PuzzleError::IllegalMove { index, reason: "cell off the board".into() })?;
        st.try_apply(b, im, mode_of(m))
            .map_err(|reason| PuzzleError::IllegalMove { index, reason })?;
    }
    Ok(st.to_config(b, &labels_of(start)))
}

/// True when both configurations put the same label on every cell and share E.
pub fn same_labels(a: &Configuration, b: &Configuration) -> bool {
    fn cell_labels(c: &Configuration) -> Vec<(HexCoord, Label)> {
        let mut v: Vec<_> = c
            .gourds
            .iter()
            .flat_map(|g| [(g.end_a, g.label_a), (g.end_b, g.label_b)])
            .collect();
        v.sort();
        v
    }
    a.empty == b.empty && cell_labels(a) == cell_labels(b)
}

/// Guard on explored states; `GOURDS_STATE_GUARD` overrides the default.
pub fn state_guard() -> usize {
    std::env::var("GOURDS_STATE_GUARD")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_STATE_GUARD)
}

/// How reachable states are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Gourd identities and end orientations.
    Identity,
    /// Only the label shown on each cell.
    Labels,
}

/// Breadth-first exploration; calls `visit` once per distinct state.
pub fn explore(
    b: &Board,
    start: &Configuration,
    mode: OracleMode,
    eq: Equivalence,
    guard: usize,
    mut visit: impl FnMut(&State),
) -> Result<usize, PuzzleError> {
    let st = State::from_config(b, start)?;
    let label_ids: Vec<[u16; 2]> = {
        let mut ids: HashMap<Label, u16> = HashMap::new();
        start
            .gourds
            .iter()
            .map(|g| {
                let n = ids.len() as u16;
                let a = *ids.entry(g.label_a).or_insert(n);
                let n = ids.len() as u16;
                let bb = *ids.entry(g.label_b).or_insert(n);
                [a, bb]
            })
            .collect()
    };
    let key = |s: &State| -> Box<[u16]> {
        s.occ
            .iter()
            .map(|&c| match (c, eq) {
                (NONE, _) => u16::MAX,
                (c, Equivalence::Identity) => c as u16,
                (c, Equivalence::Labels) => label_ids[(c >> 1) as usize][(c & 1) as usize],
            })
            .collect()
    };
    let mut seen: HashSet<Box<[u16]>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(&st));
    visit(&st);
    queue.push_back(st);
    let mut moves = Vec::new();
    while let Some(s) = queue.pop_front() {
        s.legal_moves(b, mode, &mut moves);
        for &m in &moves {
            let mut nx = s.clone();
            nx.apply(m);
            let k = key(&nx);
            if !seen.contains(&k) {
                if seen.len() >= guard {
                    return Err(PuzzleError::StateGuard(guard));
                }
                seen.insert(k);
                visit(&nx);
                queue.push_back(nx);
            }
        }
    }
    Ok(seen.len())
}

/// All configurations reachable from `start`, identified by gourd identity and orientation.
pub fn reach_states(b: &Board, start: &Configuration, mode: OracleMode) -> Result<Vec<Configuration>, PuzzleError> {
    let labels = labels_of(start);
    let mut out = Vec::new();
    explore(b, start, mode, Equivalence::Identity, state_guard(), |s| out.push(s.to_config(b, &labels)))?;
    Ok(out)
}

/// For each gourd, the number of distinct oriented cell pairs and of
/// unordered cell pairs it occupies across the reachable set.
pub fn gourd_positions(b: &Board, start: &Configuration, mode: OracleMode) -> Result<Vec<(usize, usize)>, PuzzleError> {
    let n = start.gourds.len();
    let mut oriented: Vec<HashSet<[u32; 2]>> = vec![HashSet::new(); n];
    explore(b, start, mode, Equivalence::Identity, state_guard(), |s| {
        for (g, p) in s.pos.iter().enumerate() {
            oriented[g].insert(*p);
        }
    })?;
    Ok(oriented
        .iter()
        .map(|o| {
            let unordered: HashSet<[u32; 2]> = o.iter().map(|&[x, y]| [x.min(y), x.max(y)]).collect();
            (o.len(), unordered.len())
        })
        .collect())
}

/// Number of distinct reachable states under the given equivalence.
pub fn reach_count(b: &Board, start: &Configuration, mode: OracleMode, eq: Equivalence) -> Result<usize, PuzzleError> {
    explore(b, start, mode, eq, state_guard(), |_| {})
}

/// Breadth-first shortest move sequence, if the target is reachable.
pub fn shortest_solution(
    b: &Board,
    start: &Configuration,
    target: &Configuration,
    mode: OracleMode,
) -> Result<Option<Vec<Move>>, PuzzleError> {
    let s0 = State::from_config(b, start)?;
    let goal = State::from_config(b, target)?;
    let guard = state_guard();
    let mut parent: HashMap<Vec<u32>, (Vec<u32>, IMove)> = HashMap::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(s0.occ.clone());
    let mut queue = VecDeque::from([s0]);
    let mut moves = Vec::new();
    while let Some(s) = queue.pop_front() {
        if s.occ == goal.occ {
            let mut path = Vec::new();
            let mut cur = s.occ.clone();
            while let Some((prev, m)) = parent.get(&cur) {
                path.push(m.to_move(b));
                cur = prev.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        s.legal_moves(b, mode, &mut moves);
        for &m in &moves {
            let mut nx = s.clone();
            nx.apply(m);
            if seen.insert(nx.occ.clone()) {
                if seen.len() > guard {
                    return Err(PuzzleError::StateGuard(guard));
                }
                parent.insert(nx.occ.clone(), (s.occ.clone(), m));
                queue.push_back(nx);
            }
        }
    }
    Ok(None)
}

/// Seeded random walk of `steps` legal moves.
pub fn scramble(
    b: &Board,
    c: &Configuration,
    steps: usize,
    seed: u64,
) -> Result<(Configuration, Vec<Move>), PuzzleError> {
    let mut st = State::from_config(b, c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Vec::with_capacity(steps);
    let mut moves = Vec::new();
    for _ in 0..steps {
        st.legal_moves(b, OracleMode::PivotRules, &mut moves);
        let Some(&m) = moves.choose(&mut rng) else { break };
        st.apply(m);
        trace.push(m.to_move(b));
    }
    Ok((st.to_config(b, &labels_of(c)), trace))
}

/// Oriented target slot: cell for end a, cell for end b.
pub type Slot = (HexCoord, HexCoord);

/// Match each start gourd to a target domino with the same unordered label pair.
/// Within a class, gourds and slots are paired in listing order.
pub fn color_assignment(start: &Configuration, target: &Configuration) -> Result<Vec<Slot>, PuzzleError> {
    if start.gourds.len() != target.gourds.len() {
        return Err(PuzzleError::LabelMismatch(format!(
            "{} gourds against {} target slots",
            start.gourds.len(),
            target.gourds.len()
        )));
    }
    let mut slots: HashMap<(Label, Label), VecDeque<&Gourd>> = HashMap::new();
    for t in &target.gourds {
        slots.entry(t.label_class()).or_default().push_back(t);
    }
    let mut out = Vec::with_capacity(start.gourds.len());
    for g in &start.gourds {
        let t = slots
            .get_mut(&g.label_class())
            .and_then(|q| q.pop_front())
            .ok_or_else(|| {
                PuzzleError::LabelMismatch(format!(
                    "no target slot for gourd with labels ({}, {})",
                    g.label_a, g.label_b
                ))
            })?;
        out.push(if t.label_a == g.label_a { (t.end_a, t.end_b) } else { (t.end_b, t.end_a) });
    }
    Ok(out)
}

/// Target configuration whose gourd `i` is start gourd `i` moved to its assigned slot.
pub fn assigned_target(start: &Configuration, target: &Configuration) -> Result<Configuration, PuzzleError> {
    let slots = color_assignment(start, target)?;
    Ok(Configuration {
        gourds: start
            .gourds
            .iter()
            .zip(slots)
            .map(|(g, (a, bb))| Gourd::new(a, g.label_a, bb, g.label_b))
            .collect(),
        empty: target.empty,
    })
}

pub fn parse_config(text: &str) -> Result<Configuration, PuzzleError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    match lines.next() {
        Some((_, l)) if l.trim() == CONFIG_HEADER => {}
        Some((i, _)) => {
            return Err(PuzzleError::Syntax { line: i + 1, msg: format!("expected `{CONFIG_HEADER}`") })
        }
        None => return Err(PuzzleError::Syntax { line: 1, msg: "empty configuration".into() }),
    }
    let mut gourds = Vec::new();
    let mut empty = None;
    for (i, l) in lines {
        let line = i + 1;
        let p: Vec<&str> = l.split_whitespace().collect();
        let label = |s: &str| s.parse::<Label>().map_err(|msg| PuzzleError::Syntax { line, msg });
        match p.as_slice() {
            ["g", qa, ra, la, qb, rb, lb] => gourds.push(Gourd::new(
                HexCoord::new(parse_int(qa, line)?, parse_int(ra, line)?),
                label(la)?,
                HexCoord::new(parse_int(qb, line)?, parse_int(rb, line)?),
                label(lb)?,
            )),
            ["e", q, r] => {
                if empty.is_some() {
                    return Err(PuzzleError::Syntax { line, msg: "second `e` line".into() });
                }
                empty = Some(HexCoord::new(parse_int(q, line)?, parse_int(r, line)?));
            }
            _ => return Err(PuzzleError::Syntax { line, msg: "expected `g ...` or `e q r`".into() }),
        }
    }
    let empty = empty.ok_or(PuzzleError::Syntax { line: 0, msg: "missing `e` line".into() })?;
    Ok(Configuration { gourds, empty })
}

pub fn serialize_config(c: &Configuration) -> String {
    let mut s = format!("{CONFIG_HEADER}\n");
    for g in &c.gourds {
        s.push_str(&format!(
            "g {} {} {} {} {} {}\n",
            g.end_a.q, g.end_a.r, g.label_a, g.end_b.q, g.end_b.r, g.label_b
        ));
    }
    s.push_str(&format!("e {} {}\n", c.empty.q, c.empty.r));
    s
}

/// Parse one `m` line; the kind is derived from geometry under pivot rules.
pub fn parse_move_line(l: &str, line: usize) -> Result<Move, PuzzleError> {
    let p: Vec<&str> = l.split_whitespace().collect();
    let ["m", a, b, c, d, e, f] = p.as_slice() else {
        return Err(PuzzleError::Syntax { line, msg: "expected `m qt rt qh rh qT rT`".into() });
    };
    let tail = HexCoord::new(parse_int(a, line)?, parse_int(b, line)?);
    let head = HexCoord::new(parse_int(c, line)?, parse_int(d, line)?);
    let target = HexCoord::new(parse_int(e, line)?, parse_int(f, line)?);
    Move::new(tail, head, target)
        .ok_or_else(|| PuzzleError::Syntax { line, msg: "cells do not form a move".into() })
}

pub fn parse_moves(text: &str) -> Result<Vec<Move>, PuzzleError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#') && !t.starts_with('[') && !t.starts_with("gourds-")
        })
        .map(|(i, l)| parse_move_line(l, i + 1))
        .collect()
}

pub fn serialize_moves(moves: &[Move]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}
