//! Phase two by divide and conquer over balanced splits of the cycle.

use super::cubic::{finish_rotation, ring_matches, sort_cubic};
use super::ring::Ring;
use super::SolveError;
use crate::board::{Board, NONE};
use crate::hamilton::{split_at, split_candidates, Decomposition, Shared, SplitResult};
use crate::puzzle::{IMove, State};

/// How many split candidates are tried before falling back to the cubic sorter.
const MAX_CANDIDATES: usize = 6;

pub fn sort_quadratic(
    b: &Board,
    ring: &Ring,
    st: &mut State,
    goal: &State,
    base: usize,
    out: &mut Vec<IMove>,
) -> Result<(), SolveError> {
    if ring_matches(ring, st, goal) {
        return Ok(());
    }
    if ring.len() <= base.max(5) {
        return sort_cubic(b, ring, st, goal, out);
    }
    let coords: Vec<_> = ring.cells.iter().map(|&c| b.cell(c as usize)).collect();
    let d = Decomposition::new(&coords);
    for node in split_candidates(&d).into_iter().take(MAX_CANDIDATES) {
        let Some(split) = split_at(&d, node) else { continue };
        let mut trial = st.clone();
        let mut moves = Vec::new();
        let r = conquer(b, ring, &split, &mut trial, goal, base, &mut moves);
        if r.is_ok() {
            *st = trial;
            out.extend(moves);
            return Ok(());
        }
    }
    sort_cubic(b, ring, st, goal, out)
}

fn idx(b: &Board, cells: &[crate::hex::HexCoord]) -> Vec<u32> {
    cells.iter().map(|&c| b.index_of(c).expect("cell on board") as u32).collect()
}

fn conquer(
    b: &Board,
    ring: &Ring,
    split: &SplitResult,
    st: &mut State,
    goal: &State,
    base: usize,
    out: &mut Vec<IMove>,
) -> Result<(), SolveError> {
    let n = b.len();
    let p = Ring::new(idx(b, &split.h1), n);
    let q = Ring::new(idx(b, &split.h2), n);
    let v1 = b.index_of(split.v1).unwrap() as u32;
    let hub = ring.pos[v1 as usize] as usize;

    // the goal rotated so that E sits at v1
    let mut th = goal.clone();
    let j = ring.steps_to_empty(&th, hub);
    ring.rotate(b, &mut th, j, &mut Vec::new());

    let j = ring.steps_to_empty(st, hub);
    ring.rotate(b, st, j, out);

    // which side each gourd belongs to in the hub goal: true for the Q side
    let q_only = |c: u32| q.contains(c) && !p.contains(c);
    let mut want_q = vec![false; st.pos.len()];
    for &c in &q.cells {
        if q_only(c) && th.occ[c as usize] != NONE {
            want_q[(th.occ[c as usize] >> 1) as usize] = true;
        }
    }
    match split.shared {
        Shared::ThreeVertices => exchange_three(b, &p, &q, v1, st, &want_q, &q_only, out)?,
        Shared::OneVertex => exchange_one(b, &p, &q, v1, st, &want_q, &q_only, out)?,
    }
    sort_quadratic(b, &p, st, &th, base, out)?;
    sort_quadratic(b, &q, st, &th, base, out)?;
    finish_rotation(b, ring, st, goal, out);
    if ring_matches(ring, st, goal) {
        Ok(())
    } else {
        Err(SolveError::Internal("split sort missed the goal".into()))
    }
}

/// Gourds currently on `cells` satisfying `pred`, each listed once.
fn gourds_on(st: &State, cells: impl Iterator<Item = u32>, pred: impl Fn(u32) -> bool) -> Vec<u32> {
    let mut v: Vec<u32> = cells
        .filter(|&c| st.occ[c as usize] != NONE)
        .map(|c| st.occ[c as usize] >> 1)
        .filter(|&g| pred(g))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Rotation of `r` ending with E at `e` that brings one of `cands` onto
/// the `k`-th pair after E.
fn nearest(r: &Ring, st: &State, e: usize, cands: &[u32], k: usize) -> Option<(u32, i64)> {
    let ord = r.order(st);
    let n = ord.len();
    cands
        .iter()
        .filter_map(|&g| {
            let i = ord.iter().position(|&x| x == g)?;
            Some((g, r.steps_to(st, e, ord[(i + n - k % n) % n])))
        })
        .min_by_key(|&(g, j)| (j.abs(), g))
}

/// Index of the pair holding cells `a`, `c` when E sits at ring position `e`.
fn pair_index(r: &Ring, e: usize, a: u32, c: u32) -> Option<usize> {
    let l = r.len() as i64;
    let da = (r.pos[a as usize] as i64 - e as i64).rem_euclid(l);
    let dc = (r.pos[c as usize] as i64 - e as i64).rem_euclid(l);
    let lo = da.min(dc);
    ((da - dc).abs() == 1 && lo % 2 == 1).then_some((lo as usize - 1) / 2)
}

#[allow(clippy::too_many_arguments)]
fn exchange_three(
    b: &Board,
    p: &Ring,
    q: &Ring,
    v1: u32,
    st: &mut State,
    want_q: &[bool],
    q_only: &dyn Fn(u32) -> bool,
    out: &mut Vec<IMove>,
) -> Result<(), SolveError> {
    let ep = p.pos[v1 as usize] as usize;
    let eq = q.pos[v1 as usize] as usize;
    loop {
        // P side: P-only cells plus the shared slot
        let ins = gourds_on(st, p.cells.iter().copied(), |g| want_q[g as usize]);
        let outs = gourds_on(st, q.cells.iter().copied().filter(|&c| q_only(c)), |g| !want_q[g as usize]);
        if ins.is_empty() && outs.is_empty() {
            return Ok(());
        }
        if ins.is_empty() || outs.is_empty() {
            return Err(SolveError::Internal("unbalanced exchange".into()));
        }
        let (_, j) = nearest(p, st, ep, &ins, 0).unwrap();
        p.rotate(b, st, j, out);
        let (_, j) = nearest(q, st, eq, &outs, q.gourds() - 1).unwrap();
        q.rotate(b, st, j, out);
    }
}

/// Transfer geometry for the one-shared-vertex case.
struct Transfer {
    /// Ring that keeps its cells during the exchange.
    other: Ring,
    /// The base ring extended by two cells of the other ring.
    plus: Ring,
    /// E cell while transferring.
    eps: u32,
    /// Pair index of the slot after E in `other` and in `plus`.
    slot_other: usize,
    slot_plus: usize,
    /// True when the base ring is P.
    base_is_p: bool,
}

fn find_transfer(b: &Board, p: &Ring, q: &Ring, v1: u32) -> Option<Transfer> {
    let n = b.len();
    for base_is_p in [true, false] {
        let (base, other) = if base_is_p { (p, q) } else { (q, p) };
        let lb = base.len() as i64;
        let bv = base.pos[v1 as usize] as i64;
        // base pairing from v1: partner of each base-only cell
        let mut base_pair = vec![NONE; n];
        for k in 0..base.gourds() as i64 {
            let (x, y) = (base.at(bv + 1 + 2 * k), base.at(bv + 2 + 2 * k));
            base_pair[x as usize] = y;
            base_pair[y as usize] = x;
        }
        for i in 0..lb {
            let (s, w) = (base.at(i), base.at(i + 1));
            for y in b.neighbors(s as usize) {
                let y = y as u32;
                if base.contains(y) || !other.contains(y) || y == v1 {
                    continue;
                }
                for z in b.neighbors(y as usize) {
                    let z = z as u32;
                    if base.contains(z) || !other.contains(z) || z == v1 || !b.adjacent(z as usize, w as usize) {
                        continue;
                    }
                    let mut cells = Vec::with_capacity(lb as usize + 2);
                    for k in 0..=i {
                        cells.push(base.at(k));
                    }
                    cells.push(y);
                    cells.push(z);
                    for k in i + 1..lb {
                        cells.push(base.at(k));
                    }
                    let plus = Ring::new(cells, n);
                    for eps in [v1, y, z] {
                        let slot: Vec<u32> = [v1, y, z].into_iter().filter(|&c| c != eps).collect();
                        if !b.adjacent(slot[0] as usize, slot[1] as usize) {
                            continue;
                        }
                        let oe = other.pos[eps as usize] as usize;
                        let Some(slot_other) = pair_index(other, oe, slot[0], slot[1]) else { continue };
                        let pe = plus.pos[eps as usize] as i64;
                        let Some(slot_plus) = pair_index(&plus, pe as usize, slot[0], slot[1]) else { continue };
                        // plus pairing from eps must agree with base pairing on base-only cells
                        let ok = (0..plus.gourds() as i64).all(|k| {
                            let (x, y2) = (plus.at(pe + 1 + 2 * k), plus.at(pe + 2 + 2 * k));
                            let bo = |c: u32| base.contains(c) && c != v1;
                            match (bo(x), bo(y2)) {
                                (true, true) => base_pair[x as usize] == y2,
                                (false, false) => true,
                                _ => false,
                            }
                        });
                        if ok {
                            return Some(Transfer { other: other.clone(), plus, eps, slot_other, slot_plus, base_is_p });
                        }
                    }
                }
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn exchange_one(
    b: &Board,
    p: &Ring,
    q: &Ring,
    v1: u32,
    st: &mut State,
    want_q: &[bool],
    q_only: &dyn Fn(u32) -> bool,
    out: &mut Vec<IMove>,
) -> Result<(), SolveError> {
    let p_only = |c: u32| p.contains(c) && c != v1;
    let misplaced = |st: &State| {
        let ins = gourds_on(st, p.cells.iter().copied().filter(|&c| p_only(c)), |g| want_q[g as usize]);
        let outs = gourds_on(st, q.cells.iter().copied().filter(|&c| q_only(c)), |g| !want_q[g as usize]);
        (ins, outs)
    };
    let (ins, outs) = misplaced(st);
    if ins.is_empty() && outs.is_empty() {
        return Ok(());
    }
    let t = find_transfer(b, p, q, v1).ok_or_else(|| SolveError::Internal("no transfer slot".into()))?;
    let base_only = |c: u32| if t.base_is_p { p_only(c) } else { q_only(c) };
    let other_only = |c: u32| t.other.contains(c) && c != v1;
    // gourds that must move into the base ring, and out of it
    let wants_base = |g: u32| want_q[g as usize] != t.base_is_p;
    let oe = t.other.pos[t.eps as usize] as usize;
    let pe = t.plus.pos[t.eps as usize] as usize;
    loop {
        let outs = gourds_on(st, t.other.cells.iter().copied().filter(|&c| other_only(c) || c == v1), wants_base);
        let ins = gourds_on(st, t.plus.cells.iter().copied().filter(|&c| base_only(c)), |g| !wants_base(g));
        if outs.is_empty() && ins.is_empty() {
            break;
        }
        if outs.is_empty() || ins.is_empty() {
            return Err(SolveError::Internal("unbalanced exchange".into()));
        }
        let (_, j) = nearest(&t.other, st, oe, &outs, t.slot_other).unwrap();
        t.other.rotate(b, st, j, out);
        let (_, j) = nearest(&t.plus, st, pe, &ins, t.slot_plus).unwrap();
        t.plus.rotate(b, st, j, out);
    }
    // push the last incoming gourd off the slot and return E to v1
    let j = t.other.steps_to_empty(st, t.other.pos[v1 as usize] as usize);
    t.other.rotate(b, st, j, out);
    let (ins, outs) = misplaced(st);
    if ins.is_empty() && outs.is_empty() {
        Ok(())
    } else {
        Err(SolveError::Internal("exchange left misplaced gourds".into()))
    }
}
