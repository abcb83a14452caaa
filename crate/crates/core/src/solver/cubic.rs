//! Phase two by local sorting at a parking or swapping substructure.

use super::local::{region_bfs, EMPTY};
use super::ring::Ring;
use super::SolveError;
use crate::board::Board;
use crate::hamilton::{find_substructure, Decomposition, SubstructureKind};
use crate::puzzle::{IMove, State};

/// True when `st` and `goal` agree on every ring cell.
pub fn ring_matches(ring: &Ring, st: &State, goal: &State) -> bool {
    ring.cells.iter().all(|&c| st.occ[c as usize] == goal.occ[c as usize])
}

/// Rotate to the goal's E position and phase (same cyclic order assumed).
pub fn finish_rotation(b: &Board, ring: &Ring, st: &mut State, goal: &State, out: &mut Vec<IMove>) {
    let e = ring.e_index(goal).expect("goal E on ring");
    let first = ring.order(goal)[0];
    let j = ring.steps_to(st, e, first);
    ring.rotate(b, st, j, out);
}

/// Sort the gourds of an aligned ring into the aligned goal.
pub fn sort_cubic(b: &Board, ring: &Ring, st: &mut State, goal: &State, out: &mut Vec<IMove>) -> Result<(), SolveError> {
    debug_assert!(ring.is_aligned(st) && ring.is_aligned(goal));
    if ring_matches(ring, st, goal) {
        return Ok(());
    }
    if ring.len() <= 5 {
        let target: Vec<u32> = ring.cells.iter().map(|&c| goal.occ[c as usize]).collect();
        return if region_bfs(b, st, &ring.cells, &target, out) {
            Ok(())
        } else {
            Err(SolveError::Internal("local search failed on a small cycle".into()))
        };
    }
    let coords: Vec<_> = ring.cells.iter().map(|&c| b.cell(c as usize)).collect();
    let d = Decomposition::new(&coords);
    let sub = find_substructure(&d).ok_or_else(|| SolveError::Internal("no substructure".into()))?;
    match sub.kind {
        SubstructureKind::TypeI => type_one(b, ring, sub.start, st, goal, out)?,
        SubstructureKind::TypeII => type_two(b, ring, sub.start, st, goal, out)?,
    }
    finish_rotation(b, ring, st, goal, out);
    if ring_matches(ring, st, goal) {
        Ok(())
    } else {
        Err(SolveError::Internal("cubic sort missed the goal".into()))
    }
}

fn swap_ends(st: &State, region: &[u32], x: u32, y: u32) -> Vec<u32> {
    region
        .iter()
        .map(|&c| {
            if c == x {
                st.occ[y as usize]
            } else if c == y {
                st.occ[x as usize]
            } else {
                st.occ[c as usize]
            }
        })
        .collect()
}

fn type_one(b: &Board, ring: &Ring, s: usize, st: &mut State, goal: &State, out: &mut Vec<IMove>) -> Result<(), SolveError> {
    let s = s as i64;
    let (ca, cb, cc, cd) = (ring.at(s), ring.at(s + 1), ring.at(s + 2), ring.at(s + 3));
    let pb = ring.pos[cb as usize] as usize;
    let short_cells: Vec<u32> = ring.cells.iter().copied().filter(|&c| c != cb && c != cc).collect();
    let short = Ring::new(short_cells, b.len());
    let tau = ring.order(goal);
    let n = tau.len();
    for idx in 1..n {
        let (g, prev) = (tau[idx], tau[idx - 1]);
        let ord = ring.order(st);
        let kg = ord.iter().position(|&x| x == g).unwrap();
        if ord[(kg + n - 1) % n] == prev {
            continue;
        }
        let j = ring.steps_gourd_to_pair(st, g, pb);
        ring.rotate(b, st, j, out);
        let pa = short.pos[ca as usize] as i64;
        let pair = (pa - 1).rem_euclid(short.len() as i64) as usize;
        let j = short.steps_gourd_to_pair(st, prev, pair);
        short.rotate(b, st, j, out);
        debug_assert!(ring.is_aligned(st));
    }
    // orientation fixes at the triangle next to b, c
    let (region, e_pos, e_first) = if b.adjacent(ca as usize, cc as usize) {
        ([ca, cb, cc], s, true)
    } else {
        ([cb, cc, cd], s + 3, false)
    };
    let e_pos = e_pos.rem_euclid(ring.len() as i64) as usize;
    loop {
        let ord = ring.order(st);
        let wrong: Vec<usize> = (0..n).filter(|&k| ring.forward(st, ord[k]) != ring.forward(goal, ord[k])).collect();
        if wrong.is_empty() {
            break;
        }
        let plan = |k: usize| {
            let first = if e_first { ord[k] } else { ord[(k + 1) % n] };
            ring.steps_to(st, e_pos, first)
        };
        let k = *wrong.iter().min_by_key(|&&k| plan(k).abs()).unwrap();
        let j = plan(k);
        ring.rotate(b, st, j, out);
        let target = swap_ends(st, &region, cb, cc);
        if !region_bfs(b, st, &region, &target, out) {
            return Err(SolveError::Internal("triangle flip failed".into()));
        }
    }
    Ok(())
}

fn type_two(b: &Board, ring: &Ring, s: usize, st: &mut State, goal: &State, out: &mut Vec<IMove>) -> Result<(), SolveError> {
    let s = s as i64;
    let region: Vec<u32> = (0..5).map(|k| ring.at(s + k)).collect();
    let e_pos = (s + 4).rem_euclid(ring.len() as i64) as usize;
    let tau = ring.order(goal);
    let n = tau.len();
    let mut rank = vec![0usize; st.pos.len()];
    for (i, &g) in tau.iter().enumerate() {
        rank[g as usize] = i;
    }
    // bubble sort with tau[0] held fixed as the reference point
    loop {
        let mut swapped = false;
        for i in 1..n.saturating_sub(1) {
            let ord = ring.order(st);
            let k0 = ord.iter().position(|&x| x == tau[0]).unwrap();
            let lin: Vec<u32> = (0..n).map(|t| ord[(k0 + t) % n]).collect();
            if rank[lin[i] as usize] < rank[lin[i + 1] as usize] {
                continue;
            }
            let first = lin[(i + 2) % n];
            let j = ring.steps_to(st, e_pos, first);
            ring.rotate(b, st, j, out);
            let o = |k: usize| st.occ[region[k] as usize];
            let target = vec![o(2), o(3), o(0), o(1), EMPTY];
            if !region_bfs(b, st, &region, &target, out) {
                return Err(SolveError::Internal("swap at station failed".into()));
            }
            swapped = true;
        }
        if !swapped {
            break;
        }
    }
    loop {
        let ord = ring.order(st);
        let wrong: Vec<usize> = (0..n).filter(|&k| ring.forward(st, ord[k]) != ring.forward(goal, ord[k])).collect();
        if wrong.is_empty() {
            break;
        }
        let plan = |k: usize| ring.steps_to(st, e_pos, ord[(k + 2) % n]);
        let k = *wrong.iter().min_by_key(|&&k| plan(k).abs()).unwrap();
        let j = plan(k);
        ring.rotate(b, st, j, out);
        let target = swap_ends(st, &region, region[0], region[1]);
        if !region_bfs(b, st, &region, &target, out) {
            return Err(SolveError::Internal("flip at station failed".into()));
        }
    }
    Ok(())
}
