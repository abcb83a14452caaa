//! Axial hexagonal coordinates.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

/// The six neighbor offsets in their fixed order.
pub const DIRECTIONS: [HexCoord; 6] = [
    HexCoord::new(1, 0),
    HexCoord::new(-1, 0),
    HexCoord::new(0, 1),
    HexCoord::new(0, -1),
    HexCoord::new(1, -1),
    HexCoord::new(-1, 1),
];

/// Axial coordinate of one hexagonal cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HexCoord {
    pub q: i32,
    pub r: i32,
}

impl HexCoord {
    pub const fn new(q: i32, r: i32) -> Self {
        HexCoord { q, r }
    }

    /// Neighbors in the order of [`DIRECTIONS`].
    pub fn neighbors(self) -> [HexCoord; 6] {
        DIRECTIONS.map(|d| self + d)
    }

    pub fn is_adjacent(self, other: HexCoord) -> bool {
        DIRECTIONS.contains(&(other - self))
    }

    /// Lattice distance.
    pub fn distance(self, other: HexCoord) -> u32 {
        let d = other - self;
        let s = -d.q - d.r;
        ((d.q.abs() + d.r.abs() + s.abs()) / 2) as u32
    }

    /// Embedding in the plane scaled so coordinates stay integral:
    /// x = 2q + r, y = r. The real embedding is (x / 2, y * sqrt(3) / 2).
    pub fn doubled(self) -> (i64, i64) {
        (2 * self.q as i64 + self.r as i64, self.r as i64)
    }

    /// Real-valued plane position with unit spacing between adjacent cells.
    pub fn position(self) -> (f64, f64) {
        (
            self.q as f64 + self.r as f64 / 2.0,
            self.r as f64 * 3f64.sqrt() / 2.0,
        )
    }

    /// Rotation by 60 degrees about the origin.
    pub fn rotate60(self) -> HexCoord {
        let s = -self.q - self.r;
        HexCoord::new(-self.r, -s)
    }

    /// Reflection swapping the axial axes.
    pub fn reflect(self) -> HexCoord {
        HexCoord::new(self.r, self.q)
    }
}

impl Add for HexCoord {
    type Output = HexCoord;
    fn add(self, o: HexCoord) -> HexCoord {
        HexCoord::new(self.q + o.q, self.r + o.r)
    }
}

impl Sub for HexCoord {
    type Output = HexCoord;
    fn sub(self, o: HexCoord) -> HexCoord {
        HexCoord::new(self.q - o.q, self.r - o.r)
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.r)
    }
}

/// Twice the signed area of the polygon through `cells` in the doubled embedding.
/// Positive means counterclockwise.
pub fn signed_area2(cells: &[HexCoord]) -> i64 {
    let n = cells.len();
    let mut acc = 0i64;
    for i in 0..n {
        let (x1, y1) = cells[i].doubled();
        let (x2, y2) = cells[(i + 1) % n].doubled();
        acc += x1 * y2 - x2 * y1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_order() {
        let n = HexCoord::new(0, 0).neighbors();
        let want = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];
        for (a, (q, r)) in n.iter().zip(want) {
            assert_eq!(*a, HexCoord::new(q, r));
        }
        let n = HexCoord::new(2, -1).neighbors();
        let want = [(3, -1), (1, -1), (2, 0), (2, -2), (3, -2), (1, 0)];
        for (a, (q, r)) in n.iter().zip(want) {
            assert_eq!(*a, HexCoord::new(q, r));
        }
        assert!(HexCoord::new(1, 0).is_adjacent(HexCoord::new(0, 1)));
    }

    #[test]
    fn neighbors_at_unit_distance() {
        let c = HexCoord::new(3, -2);
        let (x0, y0) = c.position();
        for n in c.neighbors() {
            let (x, y) = n.position();
            assert!(((x - x0).powi(2) + (y - y0).powi(2) - 1.0).abs() < 1e-9);
            assert_eq!(c.distance(n), 1);
        }
    }

    #[test]
    fn rotation_has_order_six() {
        let c = HexCoord::new(2, -5);
        let mut x = c;
        for _ in 0..6 {
            x = x.rotate60();
        }
        assert_eq!(x, c);
        for d in DIRECTIONS {
            assert!(DIRECTIONS.contains(&d.rotate60()));
            assert!(DIRECTIONS.contains(&d.reflect()));
        }
    }
}
