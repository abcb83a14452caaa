//! Exhaustive search confined to a handful of cells.

use crate::board::{Board, NONE};
use crate::puzzle::{IMove, OracleMode, State};
use std::collections::{HashMap, VecDeque};

/// Shortest move sequence using only moves inside `region` that turns the
/// region's occupancy into `goal` (one entry per region cell).
pub fn region_bfs(b: &Board, st: &mut State, region: &[u32], goal: &[u32], out: &mut Vec<IMove>) -> bool {
    let key = |s: &State| -> Vec<u32> { region.iter().map(|&c| s.occ[c as usize]).collect() };
    let inside = |c: u32| region.contains(&c);
    let start = key(st);
    if start == goal {
        return true;
    }
    let mut parent: HashMap<Vec<u32>, (Vec<u32>, IMove)> = HashMap::new();
    let mut states: HashMap<Vec<u32>, State> = HashMap::new();
    states.insert(start.clone(), st.clone());
    let mut queue = VecDeque::from([start.clone()]);
    let mut moves = Vec::new();
    while let Some(k) = queue.pop_front() {
        let s = states[&k].clone();
        if !inside(s.empty) {
            continue;
        }
        s.legal_moves(b, OracleMode::PivotRules, &mut moves);
        for &m in &moves {
            if !(inside(m.tail) && inside(m.head) && inside(m.target)) {
                continue;
            }
            let mut nx = s.clone();
            nx.apply(m);
            let nk = key(&nx);
            if states.contains_key(&nk) {
                continue;
            }
            parent.insert(nk.clone(), (k.clone(), m));
            if nk == goal {
                let mut path = Vec::new();
                let mut cur = nk.clone();
                while let Some((p, m)) = parent.get(&cur) {
                    path.push(*m);
                    cur = p.clone();
                }
                path.reverse();
                for m in path {
                    st.apply(m);
                    out.push(m);
                }
                return true;
            }
            states.insert(nk.clone(), nx);
            queue.push_back(nk);
        }
    }
    false
}


pub const EMPTY: u32 = NONE;
