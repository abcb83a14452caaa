//! Aligned states on an odd cycle and the rotation primitive.

use crate::board::{Board, NONE};
use crate::puzzle::{kind_of, IMove, MoveKind, OracleMode, State};

/// An odd cycle of board cells, given by index.
#[derive(Clone, Debug)]
pub struct Ring {
    pub cells: Vec<u32>,
    /// Position on the ring per board cell, `NONE` when absent.
    pub pos: Vec<u32>,
}

impl Ring {
    pub fn new(cells: Vec<u32>, board_len: usize) -> Ring {
        let mut pos = vec![NONE; board_len];
        for (i, &c) in cells.iter().enumerate() {
            pos[c as usize] = i as u32;
        }
        debug_assert!(cells.len() % 2 == 1);
        Ring { cells, pos }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of gourds an aligned state holds.
    pub fn gourds(&self) -> usize {
        self.cells.len() / 2
    }

    #[inline]
    pub fn at(&self, i: i64) -> u32 {
        let l = self.cells.len() as i64;
        self.cells[i.rem_euclid(l) as usize]
    }

    pub fn contains(&self, cell: u32) -> bool {
        self.pos[cell as usize] != NONE
    }

    /// Ring position of E, if E is on the ring.
    pub fn e_index(&self, st: &State) -> Option<usize> {
        let p = self.pos[st.empty as usize];
        (p != NONE).then_some(p as usize)
    }

    /// Renaming of an aligned state's gourds: the gourd on slot k after E
    /// becomes gourd k, with end a on the earlier cell. Entry g is
    /// (new id, ends swapped).
    pub fn slot_names(&self, st: &State) -> Vec<(u32, bool)> {
        let e = self.e_index(st).expect("aligned") as i64;
        let mut names = vec![(0, false); st.pos.len()];
        for k in 0..self.gourds() as i64 {
            let code = st.occ[self.at(e + 1 + 2 * k) as usize];
            names[(code >> 1) as usize] = (k as u32, code & 1 == 1);
        }
        names
    }

    /// Every gourd on the ring covers positions e+1+2k, e+2+2k.
    pub fn is_aligned(&self, st: &State) -> bool {
        let Some(e) = self.e_index(st) else { return false };
        let e = e as i64;
        (0..self.gourds() as i64).all(|k| {
            let x = self.at(e + 1 + 2 * k);
            let y = self.at(e + 2 + 2 * k);
            st.occ[x as usize] != NONE && st.partner(x) == y
        })
    }

    /// Gourd ids in ring order starting right after E (aligned states only).
    pub fn order(&self, st: &State) -> Vec<u32> {
        let e = self.e_index(st).expect("E on ring") as i64;
        (0..self.gourds() as i64).map(|k| st.occ[self.at(e + 1 + 2 * k) as usize] >> 1).collect()
    }

    /// True when gourd `g` has end a before end b in ring direction.
    pub fn forward(&self, st: &State, g: u32) -> bool {
        let [a, b] = st.pos[g as usize];
        let l = self.len() as u32;
        (self.pos[a as usize] + 1) % l == self.pos[b as usize]
    }

    /// Move the gourd right after E back by one cell each end; E advances two.
    pub fn step_forward(&self, b: &Board, st: &mut State, out: &mut Vec<IMove>) {
        let e = self.e_index(st).unwrap() as i64;
        let (t, h, x) = (self.at(e + 2), self.at(e + 1), self.at(e));
        emit_slide(b, st, t, h, x, out);
    }

    /// Move the gourd right before E forward by one cell each end; E retreats two.
    pub fn step_backward(&self, b: &Board, st: &mut State, out: &mut Vec<IMove>) {
        let e = self.e_index(st).unwrap() as i64;
        let (t, h, x) = (self.at(e - 2), self.at(e - 1), self.at(e));
        emit_slide(b, st, t, h, x, out);
    }

    /// Signed step count (positive = forward) reaching E at ring position
    /// `e_target` with gourd `first` right after E, choosing the smallest magnitude.
    pub fn steps_to(&self, st: &State, e_target: usize, first: u32) -> i64 {
        let order = self.order(st);
        let k = order.iter().position(|&g| g == first).expect("gourd on ring") as i64;
        self.steps_to_offset(st, e_target, k)
    }

    /// As [`Ring::steps_to`] with the target first gourd given by its current offset.
    pub fn steps_to_offset(&self, st: &State, e_target: usize, k: i64) -> i64 {
        let l = self.len() as i64;
        let n = self.gourds() as i64;
        let e = self.e_index(st).unwrap() as i64;
        let inv2 = n + 1;
        let j0 = ((e_target as i64 - e).rem_euclid(l) * inv2).rem_euclid(l);
        let t = (k - j0).rem_euclid(n.max(1));
        let j = j0 + l * t;
        let period = l * n.max(1);
        if j > period / 2 {
            j - period
        } else {
            j
        }
    }

    pub fn rotate(&self, b: &Board, st: &mut State, steps: i64, out: &mut Vec<IMove>) {
        for _ in 0..steps.unsigned_abs() {
            if steps > 0 {
                self.step_forward(b, st, out);
            } else {
                self.step_backward(b, st, out);
            }
        }
    }

    /// Cheapest rotation that puts gourd `g` on the pair starting at ring position `p`.
    pub fn steps_gourd_to_pair(&self, st: &State, g: u32, p: usize) -> i64 {
        let order = self.order(st);
        let kg = order.iter().position(|&x| x == g).expect("gourd on ring") as i64;
        let l = self.len() as i64;
        let mut best: Option<i64> = None;
        for m in 0..self.gourds() as i64 {
            // g at offset m after E: E sits at p - 1 - 2m and the first gourd is kg - m
            let e_t = (p as i64 - 1 - 2 * m).rem_euclid(l) as usize;
            let j = self.steps_to_offset(st, e_t, (kg - m).rem_euclid(self.gourds() as i64));
            if best.is_none_or(|b| j.abs() < b.abs()) {
                best = Some(j);
            }
        }
        best.unwrap_or(0)
    }

    /// Cheapest rotation putting E at ring position `e_target`.
    pub fn steps_to_empty(&self, st: &State, e_target: usize) -> i64 {
        let n = self.gourds() as i64;
        (0..n.max(1))
            .map(|k| self.steps_to_offset(st, e_target, k))
            .min_by_key(|j| j.abs())
            .unwrap()
    }
}

/// Move the gourd on (t, h) so that h's end lands on x and t's end on h,
/// using one slide or turn, or two pivots when t, h, x form a triangle.
pub fn emit_slide(b: &Board, st: &mut State, t: u32, h: u32, x: u32, out: &mut Vec<IMove>) {
    match kind_of(b, t, h, x, OracleMode::PivotRules) {
        Some(MoveKind::Pivot) => {
            let m1 = IMove { tail: t, head: h, target: x, kind: MoveKind::Pivot };
            st.apply(m1);
            out.push(m1);
            let m2 = IMove { tail: x, head: t, target: h, kind: MoveKind::Pivot };
            st.apply(m2);
            out.push(m2);
        }
        Some(kind) => {
            let m = IMove { tail: t, head: h, target: x, kind };
            st.apply(m);
            out.push(m);
        }
        None => panic!("cells {t} {h} {x} do not form a move"),
    }
}

/// `st` with gourds renamed by `names` (see `Ring::slot_names`).
pub fn renamed(st: &State, names: &[(u32, bool)]) -> State {
    let mut out = State { occ: st.occ.clone(), pos: st.pos.clone(), empty: st.empty };
    for (g, &(k, swap)) in names.iter().enumerate() {
        let [a, b] = st.pos[g];
        let p = if swap { [b, a] } else { [a, b] };
        out.pos[k as usize] = p;
        out.occ[p[0] as usize] = k << 1;
        out.occ[p[1] as usize] = (k << 1) | 1;
    }
    out
}
