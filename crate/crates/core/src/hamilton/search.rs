//! Hamiltonian cycle search on proper boards.

use super::HamiltonianCycle;
use crate::board::{validate_proper, Board, PropernessReport};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use thiserror::Error;

pub const MAX_CELLS: usize = 2000;
const RESTARTS: u64 = 20;
const BACKTRACK_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HamiltonError {
    #[error("board is not proper:\n{0}")]
    Improper(PropernessReport),
    #[error("board has {0} cells, above the search limit of {MAX_CELLS}")]
    TooLarge(usize),
    #[error("no Hamiltonian cycle found")]
    NotFound,
}

pub fn find_hamiltonian(b: &Board) -> Result<HamiltonianCycle, HamiltonError> {
    find_hamiltonian_seeded(b, 0)
}

/// Insertion heuristic with seeded restarts, then exhaustive search.
pub fn find_hamiltonian_seeded(b: &Board, seed: u64) -> Result<HamiltonianCycle, HamiltonError> {
    let rep = validate_proper(b);
    if !rep.proper {
        return Err(HamiltonError::Improper(rep));
    }
    if b.len() > MAX_CELLS {
        return Err(HamiltonError::TooLarge(b.len()));
    }
    for k in 0..RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(k));
        if let Some(c) = insertion(b, &mut rng, k > 0) {
            return Ok(to_cycle(b, &c));
        }
    }
    backtrack(b).map(|c| to_cycle(b, &c)).ok_or(HamiltonError::NotFound)
}

fn to_cycle(b: &Board, c: &[usize]) -> HamiltonianCycle {
    HamiltonianCycle::new(c.iter().map(|&i| b.cell(i)).collect())
}

/// Grow a cycle from a triangle by inserting uncovered cells and paths.
fn insertion(b: &Board, rng: &mut ChaCha8Rng, randomize: bool) -> Option<Vec<usize>> {
    let n = b.len();
    let start = if randomize { rng.gen_range(0..n) } else { (0..n).min_by_key(|&i| b.degree(i)).unwrap() };
    let (x, y) = b
        .neighbors(start)
        .flat_map(|x| b.neighbors(start).map(move |y| (x, y)))
        .find(|&(x, y)| x < y && b.adjacent(x, y))?;
    let mut cyc = vec![start, x, y];
    let mut on = vec![false; n];
    for &c in &cyc {
        on[c] = true;
    }
    let mut pos = vec![usize::MAX; n];
    while cyc.len() < n {
        for (i, &c) in cyc.iter().enumerate() {
            pos[c] = i;
        }
        let len = cyc.len();
        let mut uncovered: Vec<usize> = (0..n).filter(|&i| !on[i]).collect();
        // cells with few free neighbors first, so pockets get absorbed early
        if randomize {
            uncovered.shuffle(rng);
        }
        uncovered.sort_by_key(|&u| b.neighbors(u).filter(|&v| !on[v]).count());
        let mut done = false;
        for &u in &uncovered {
            let mut slots: Vec<usize> = b
                .neighbors(u)
                .filter(|&v| on[v])
                .filter(|&v| b.adjacent(u, cyc[(pos[v] + 1) % len]))
                .map(|v| pos[v])
                .collect();
            if randomize {
                slots.shuffle(rng);
            }
            if let Some(&p) = slots.first() {
                cyc.insert(p + 1, u);
                on[u] = true;
                done = true;
                break;
            }
        }
        if done {
            continue;
        }
        // path insertion: shortest path through uncovered cells joining consecutive cycle cells
        let mut best: Option<(usize, Vec<usize>)> = None;
        for &u in &uncovered {
            let anchors: Vec<usize> = b.neighbors(u).filter(|&v| on[v]).collect();
            if anchors.is_empty() {
                continue;
            }
            let mut prev = vec![usize::MAX; n];
            let mut dist = vec![usize::MAX; n];
            dist[u] = 0;
            let mut q = VecDeque::from([u]);
            while let Some(w) = q.pop_front() {
                if best.as_ref().is_some_and(|(l, _)| dist[w] + 1 >= *l) {
                    break;
                }
                if w != u {
                    let hit = anchors.iter().find_map(|&a| {
                        let p = pos[a];
                        if b.adjacent(w, cyc[(p + 1) % len]) {
                            Some((p, true))
                        } else if b.adjacent(w, cyc[(p + len - 1) % len]) {
                            Some((p, false))
                        } else {
                            None
                        }
                    });
                    if let Some((p, fwd)) = hit {
                        // path from u to w
                        let mut path = vec![w];
                        let mut cur = w;
                        while prev[cur] != usize::MAX {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        let at = if fwd {
                            p
                        } else {
                            path.reverse();
                            (p + len - 1) % len
                        };
                        let mut route = vec![at];
                        route.extend(path);
                        best = Some((route.len() - 1, route));
                        break;
                    }
                }
                for v in b.neighbors(w) {
                    if !on[v] && dist[v] == usize::MAX {
                        dist[v] = dist[w] + 1;
                        prev[v] = w;
                        q.push_back(v);
                    }
                }
            }
        }
        if best.is_none() {
            let mut fixed = false;
            'reroute: for radius in 1..=3 {
                for &u in &uncovered {
                    if let Some(next) = local_reroute(b, &cyc, &on, u, radius) {
                        cyc = next;
                        on.iter_mut().for_each(|x| *x = false);
                        for &c in &cyc {
                            on[c] = true;
                        }
                        fixed = true;
                        break 'reroute;
                    }
                }
            }
            if fixed {
                continue;
            }
            return None;
        }
        let (_, route) = best?;
        let at = route[0];
        for (k, &c) in route[1..].iter().enumerate() {
            cyc.insert(at + 1 + k, c);
            on[c] = true;
        }
    }
    debug_assert!((0..n).all(|i| b.adjacent(cyc[i], cyc[(i + 1) % n])));
    Some(cyc)
}

/// Re-route the cycle inside the cells within `radius` of uncovered cell `u` so
/// that `u` joins it. Cycle segments crossing the window keep their endpoints.
fn local_reroute(b: &Board, cyc: &[usize], on: &[bool], u: usize, radius: u32) -> Option<Vec<usize>> {
    let n = cyc.len();
    let cu = b.cell(u);
    let window: Vec<usize> = (0..b.len()).filter(|&i| b.cell(i).distance(cu) <= radius).collect();
    let mut in_win = vec![false; b.len()];
    for &i in &window {
        in_win[i] = true;
    }
    let inside: Vec<bool> = cyc.iter().map(|&c| in_win[c]).collect();
    if inside.iter().all(|&x| x) {
        return None;
    }
    // rotate so position 0 is outside the window, then collect segments
    let off = (0..n).find(|&i| !inside[i])?;
    let mut segs: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < n {
        let p = (off + k) % n;
        if inside[p] {
            let s = k;
            while k < n && inside[(off + k) % n] {
                k += 1;
            }
            segs.push((s, k - 1));
        } else {
            k += 1;
        }
    }
    let ends: Vec<(usize, usize)> = segs.iter().map(|&(s, e)| (cyc[(off + s) % n], cyc[(off + e) % n])).collect();
    let required: Vec<usize> = window.iter().copied().filter(|&i| on[i] || i == u).collect();
    let mut used = vec![false; b.len()];
    for &(a, z) in &ends {
        used[a] = true;
        used[z] = true;
    }
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut budget = 200_000u32;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        b: &Board,
        ends: &[(usize, usize)],
        in_win: &[bool],
        required: &[usize],
        used: &mut Vec<bool>,
        paths: &mut Vec<Vec<usize>>,
        cur: &mut Vec<usize>,
        budget: &mut u32,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let j = paths.len();
        if j == ends.len() {
            return required.iter().all(|&r| used[r]);
        }
        let (a, z) = ends[j];
        if cur.is_empty() {
            cur.push(a);
            if a == z {
                paths.push(std::mem::take(cur));
                if rec(b, ends, in_win, required, used, paths, cur, budget) {
                    return true;
                }
                *cur = paths.pop().unwrap();
                cur.clear();
                return false;
            }
            let ok = rec(b, ends, in_win, required, used, paths, cur, budget);
            if !ok {
                cur.clear();
            }
            return ok;
        }
        let last = *cur.last().unwrap();
        if b.adjacent(last, z) && !cur.is_empty() {
            cur.push(z);
            paths.push(std::mem::take(cur));
            if rec(b, ends, in_win, required, used, paths, cur, budget) {
                return true;
            }
            *cur = paths.pop().unwrap();
            cur.pop();
        }
        let next: Vec<usize> = b.neighbors(last).filter(|&v| in_win[v] && !used[v]).collect();
        for v in next {
            used[v] = true;
            cur.push(v);
            if rec(b, ends, in_win, required, used, paths, cur, budget) {
                return true;
            }
            cur.pop();
            used[v] = false;
        }
        false
    }
    let mut cur = Vec::new();
    if !rec(b, &ends, &in_win, &required, &mut used, &mut paths, &mut cur, &mut budget) {
        return None;
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut k = 0;
    let mut si = 0;
    while k < n {
        if si < segs.len() && segs[si].0 == k {
            out.extend_from_slice(&paths[si]);
            k = segs[si].1 + 1;
            si += 1;
        } else {
            out.push(cyc[(off + k) % n]);
            k += 1;
        }
    }
    Some(out)
}

/// Depth-first search with degree pruning; bounded work.
fn backtrack(b: &Board) -> Option<Vec<usize>> {
    let n = b.len();
    let start = (0..n).min_by_key(|&i| b.degree(i))?;
    let mut path = vec![start];
    let mut on = vec![false; n];
    on[start] = true;
    let mut budget = BACKTRACK_BUDGET;
    fn rec(b: &Board, path: &mut Vec<usize>, on: &mut [bool], budget: &mut u64) -> bool {
        let n = b.len();
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let last = *path.last().unwrap();
        if path.len() == n {
            return b.adjacent(last, path[0]);
        }
        // every free cell needs two usable neighbors
        for v in 0..n {
            if !on[v] {
                let usable = b.neighbors(v).filter(|&w| !on[w] || w == last || w == path[0]).count();
                if usable < 2 {
                    return false;
                }
            }
        }
        let mut next: Vec<usize> = b.neighbors(last).filter(|&v| !on[v]).collect();
        next.sort_by_key(|&v| b.neighbors(v).filter(|&w| !on[w]).count());
        for v in next {
            on[v] = true;
            path.push(v);
            if rec(b, path, on, budget) {
                return true;
            }
            path.pop();
            on[v] = false;
        }
        false
    }
    rec(b, &mut path, &mut on, &mut budget).then_some(path)
}
