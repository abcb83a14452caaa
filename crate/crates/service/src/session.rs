//! Sessions and the in-memory store.

use crate::error::ApiError;
use crate::wire::{ConfigJson, MoveJson, StateJson, TargetJson};
use gourds_core::board::{parse_board, validate_proper, PropernessReport};
use gourds_core::placement::{pair, solve_placement, PlacementInstance};
use gourds_core::puzzle::{
    apply_move, assigned_target, check_covers, legal_moves, parse_config, same_labels, scramble, verify_sequence,
};
use gourds_core::solver::{SolvePlan, Solver, Strategy};
use gourds_core::{Board, Configuration, Label, Move, OracleMode};
use rand::Rng;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

pub const DEFAULT_IDLE: Duration = Duration::from_secs(3600);

#[derive(Clone, Debug)]
pub enum Target {
    Config(Configuration),
    /// Colored board with one tiling of it by the session's gourds.
    Colored { board: Board, placement: Configuration },
}

impl Target {
    fn aim(&self) -> &Configuration {
        match self {
            Target::Config(c) => c,
            Target::Colored { placement, .. } => placement,
        }
    }
}

pub struct Session {
    pub id: String,
    pub board: Board,
    pub report: PropernessReport,
    pub initial: Configuration,
    pub current: Configuration,
    pub target: Option<Target>,
    pub history: Vec<Move>,
    solver: Option<Solver>,
    trail: Option<Trail>,
}

/// The most recent plan with the configuration before each of its moves.
struct Trail {
    states: Vec<Configuration>,
    moves: Vec<Move>,
}

impl Trail {
    fn new(b: &Board, start: &Configuration, moves: Vec<Move>) -> Trail {
        let mut states = vec![start.clone()];
        for m in &moves {
            let next = apply_move(b, states.last().expect("non-empty"), m).expect("plans replay");
            states.push(next);
        }
        Trail { states, moves }
    }

    /// Remaining moves when `c` lies on the trail.
    fn rest(&self, c: &Configuration) -> Option<&[Move]> {
        let i = self.states.iter().position(|s| s == c)?;
        Some(&self.moves[i..])
    }
}

fn config_field(field: &'static str, text: &str, b: &Board) -> Result<Configuration, ApiError> {
    let c = parse_config(text).map_err(|source| ApiError::Config { field, source })?;
    check_covers(b, &c).map_err(|source| ApiError::Config { field, source })?;
    Ok(c)
}

fn parse_target(text: &str, b: &Board, current: &Configuration) -> Result<Target, ApiError> {
    let header = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if header.starts_with("gourds-board") {
        let tb = parse_board(text).map_err(|source| ApiError::Board { field: "target", source })?;
        if tb.cells() != b.cells() {
            return Err(ApiError::Target("colored board has different cells".into()));
        }
        let mut budget: BTreeMap<(Label, Label), u32> = BTreeMap::new();
        for g in &current.gourds {
            *budget.entry(pair(g.label_a, g.label_b)).or_default() += 1;
        }
        let inst = PlacementInstance::new(tb.clone(), budget);
        let placement = solve_placement(&inst)?
            .ok_or_else(|| ApiError::Target("the gourds cannot tile this coloring".into()))?;
        return Ok(Target::Colored { board: tb, placement });
    }
    let t = config_field("target", text, b)?;
    assigned_target(current, &t).map_err(|e| ApiError::Target(e.to_string()))?;
    Ok(Target::Config(t))
}

impl Session {
    pub fn create(id: String, board: &str, config: &str, target: Option<&str>) -> Result<Session, ApiError> {
        let b = parse_board(board).map_err(|source| ApiError::Board { field: "board", source })?;
        let report = validate_proper(&b);
        let current = config_field("config", config, &b)?;
        let target = target.map(|t| parse_target(t, &b, &current)).transpose()?;
        Ok(Session {
            id,
            board: b,
            report,
            initial: current.clone(),
            current,
            target,
            history: Vec::new(),
            solver: None,
            trail: None,
        })
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        legal_moves(&self.board, &self.current, OracleMode::PivotRules).unwrap_or_default()
    }

    /// Apply a move; on error the state is unchanged.
    pub fn play(&mut self, m: &MoveJson) -> Result<Move, ApiError> {
        let mv = m.to_move().ok_or_else(|| ApiError::IllegalMove("cells and kind do not form a move".into()))?;
        let next = apply_move(&self.board, &self.current, &mv).map_err(|e| ApiError::IllegalMove(e.to_string()))?;
        self.current = next;
        self.history.push(mv);
        Ok(mv)
    }

    pub fn solved(&self) -> Option<bool> {
        Some(match self.target.as_ref()? {
            Target::Config(t) => same_labels(&self.current, t),
            Target::Colored { board, .. } => self
                .current
                .gourds
                .iter()
                .all(|g| board.label(g.end_a) == g.label_a && board.label(g.end_b) == g.label_b),
        })
    }

    /// A fresh plan from the current state to the target.
    pub fn plan(&mut self, strategy: Strategy) -> Result<SolvePlan, ApiError> {
        let aim = self.target.as_ref().ok_or(ApiError::NoTarget)?.aim().clone();
        if self.solver.is_none() {
            self.solver = Some(Solver::new(&self.board)?);
        }
        let solver = self.solver.as_ref().expect("just built");
        Ok(solver.solve(&self.current, &aim, strategy)?)
    }

    pub fn hint(&mut self, strategy: Strategy) -> Result<(Option<Move>, usize), ApiError> {
        if self.solved() == Some(true) {
            return Ok((None, 0));
        }
        // A fresh plan every call; the previous one is kept only while the
        // player stays on it and it is no longer than the fresh one.
        let fresh = self.plan(strategy)?.moves();
        if let Some(rest) = self.trail.as_ref().and_then(|t| t.rest(&self.current)) {
            if rest.len() <= fresh.len() {
                return Ok((rest.first().copied(), rest.len()));
            }
        }
        let trail = Trail::new(&self.board, &self.current, fresh);
        let out = (trail.moves.first().copied(), trail.moves.len());
        self.trail = Some(trail);
        Ok(out)
    }

    pub fn scramble(&mut self, steps: usize, seed: u64) -> Result<Vec<Move>, ApiError> {
        let (end, moves) =
            scramble(&self.board, &self.current, steps, seed).map_err(|e| ApiError::Internal(e.to_string()))?;
        self.current = end;
        self.history.extend_from_slice(&moves);
        Ok(moves)
    }

    /// True when the history replays from the initial configuration to the current one.
    pub fn history_consistent(&self) -> bool {
        verify_sequence(&self.board, &self.initial, &self.history).is_ok_and(|end| end == self.current)
    }

    pub fn view(&self) -> StateJson {
        StateJson {
            id: self.id.clone(),
            proper: self.report.proper,
            report: self.report,
            board: (&self.board).into(),
            initial: (&self.initial).into(),
            current: (&self.current).into(),
            target: self.target.as_ref().map(|t| match t {
                Target::Config(c) => TargetJson::Config { config: ConfigJson::from(c) },
                Target::Colored { board, placement } => {
                    TargetJson::Colored { board: board.into(), placement: placement.into() }
                }
            }),
            solved: self.solved(),
            history: self.history.iter().map(MoveJson::from).collect(),
        }
    }
}

struct Entry {
    session: Arc<Mutex<Session>>,
    last_used: Instant,
}

/// Sessions keyed by id, dropped after `idle` without access.
pub struct Store {
    sessions: Mutex<HashMap<String, Entry>>,
    idle: Duration,
}

impl Default for Store {
    fn default() -> Store {
        Store::new(DEFAULT_IDLE)
    }
}

impl Store {
    pub fn new(idle: Duration) -> Store {
        Store { sessions: Mutex::new(HashMap::new()), idle }
    }

    fn map(&self) -> MutexGuard<'_, HashMap<String, Entry>> {
        self.sessions.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn new_id() -> String {
        format!("{:032x}", rand::thread_rng().gen::<u128>())
    }

    pub fn insert(&self, s: Session) -> Arc<Mutex<Session>> {
        let id = s.id.clone();
        let session = Arc::new(Mutex::new(s));
        let mut map = self.map();
        map.insert(id, Entry { session: session.clone(), last_used: Instant::now() });
        session
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let mut map = self.map();
        let idle = self.idle;
        match map.get_mut(id) {
            Some(e) if e.last_used.elapsed() < idle => {
                e.last_used = Instant::now();
                Ok(e.session.clone())
            }
            Some(_) => {
                map.remove(id);
                Err(ApiError::UnknownSession(id.to_string()))
            }
            None => Err(ApiError::UnknownSession(id.to_string())),
        }
    }

    /// Drop idle sessions; returns how many were removed.
    pub fn sweep(&self) -> usize {
        let mut map = self.map();
        let before = map.len();
        let idle = self.idle;
        map.retain(|_, e| e.last_used.elapsed() < idle);
        before - map.len()
    }

    pub fn len(&self) -> usize {
        self.map().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gourds_core::board::serialize_board;
    use gourds_core::fixtures::{tricolor, hexagon};
    use gourds_core::generate::random_configuration;
    use gourds_core::puzzle::serialize_config;

    fn hex_session() -> Session {
        let b = hexagon(1);
        let c = random_configuration(&b, 0, 0);
        let t = random_configuration(&b, 40, 3);
        Session::create("s".into(), &serialize_board(&b), &serialize_config(&c), Some(&serialize_config(&t))).unwrap()
    }

    #[test]
    fn colored_target_derives_a_placement() {
        let (b, tiling) = tricolor();
        let start = scramble(&b, &tiling, 30, 5).unwrap().0;
        let s = Session::create("f".into(), &serialize_board(&b), &serialize_config(&start), Some(&serialize_board(&b)))
            .unwrap();
        assert!(s.report.proper);
        let Some(Target::Colored { placement, .. }) = &s.target else { panic!("colored target expected") };
        check_covers(&b, placement).unwrap();
        let mut at_target = s;
        at_target.current = at_target.target.as_ref().unwrap().aim().clone();
        assert_eq!(at_target.solved(), Some(true));
    }

    #[test]
    fn illegal_move_keeps_state() {
        let mut s = hex_session();
        let before = s.current.clone();
        let g = s.current.gourds[0];
        let bogus = MoveJson { tail: g.end_a, head: g.end_b, target: g.end_a, kind: None };
        assert!(matches!(s.play(&bogus), Err(ApiError::IllegalMove(_))));
        assert_eq!(s.current, before);
        assert!(s.history.is_empty());
    }

    #[test]
    fn moves_and_scrambles_keep_history_consistent() {
        let mut s = hex_session();
        for _ in 0..10 {
            let m = s.legal_moves()[0];
            s.play(&MoveJson::from(&m)).unwrap();
        }
        s.scramble(25, 9).unwrap();
        assert_eq!(s.history.len(), 35);
        assert!(s.history_consistent());
    }

    #[test]
    fn hints_reach_the_target() {
        let mut s = hex_session();
        let bound = s.plan(Strategy::Quadratic).unwrap().len();
        let mut steps = 0;
        let mut last = usize::MAX;
        while let (Some(m), remaining) = s.hint(Strategy::Quadratic).unwrap() {
            assert!(remaining < last);
            last = remaining;
            s.play(&MoveJson::from(&m)).unwrap();
            steps += 1;
            assert!(steps <= bound);
        }
        assert_eq!(s.solved(), Some(true));
    }

    #[test]
    fn idle_sessions_expire() {
        let store = Store::new(Duration::ZERO);
        store.insert(hex_session());
        assert!(store.get("s").is_err());
        store.insert(hex_session());
        assert_eq!(store.sweep(), 1);
        assert!(store.is_empty());

        let store = Store::default();
        store.insert(hex_session());
        assert!(store.get("s").is_ok());
        assert_eq!(store.sweep(), 0);
    }
}
