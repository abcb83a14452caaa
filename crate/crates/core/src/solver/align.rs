//! Phase one: bring every gourd onto consecutive cycle cells.

use super::ring::{emit_slide, Ring};
use crate::board::Board;
use crate::puzzle::{IMove, State};

/// Align all gourds with the ring, which must cover every cell.
pub fn align(b: &Board, ring: &Ring, st: &mut State, out: &mut Vec<IMove>) {
    let l = ring.len();
    let limit = 4 * l * l + 16;
    let mut iters = 0;
    while !ring.is_aligned(st) {
        iters += 1;
        assert!(iters <= limit, "alignment did not converge");
        let e = ring.e_index(st).expect("E on ring") as i64;
        let nu = ring.at(e + 1);
        let w = st.partner(nu);
        if w == ring.at(e + 2) {
            ring.step_forward(b, st, out);
        } else {
            // the end on nu moves to E, the other end follows onto nu
            emit_slide(b, st, w, nu, ring.at(e), out);
        }
    }
}
