//! Points, lines and hyperplanes of PG(m, 2) for 1 <= m <= 6.
//!
//! A point is a nonzero bitmask encoding a coordinate vector of F2^(m+1)
//! (bit i = coordinate i). A hyperplane is a nonzero functional bitmask `h`;
//! a point `p` lies on it iff `h & p` has even parity. A line is the triple
//! of nonzero points of a 2-dimensional subspace, stored sorted; its id is
//! the rank of the sorted triple in lexicographic enumeration order, which
//! is stable across runs.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Nonzero coordinate bitmask of a projective point.
pub type Point = u32;

/// Index into the lexicographic line enumeration of the ambient space.
pub type LineId = usize;

pub const MIN_DIM: usize = 1;
pub const MAX_DIM: usize = 6;

/// Precomputed incidence tables for one PG(m, 2).
pub struct Geometry {
    pub m: usize,
    /// 2^(m+1) - 1; points and hyperplane functionals both run 1..=point_count.
    pub point_count: u32,
    /// Sorted point triples, lexicographic order; index = line id.
    pub lines: Vec<[Point; 3]>,
    /// Bit j of `line_hmask[id]` is set iff line `id` lies in the hyperplane
    /// with functional j + 1.
    pub line_hmask: Vec<u128>,
    /// Lines through each point, indexed by point - 1, ascending ids.
    pub point_lines: Vec<Vec<LineId>>,
    ids: HashMap<(Point, Point), LineId>,
}

static CACHE: [OnceLock<Geometry>; MAX_DIM] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// True iff point `p` lies on the hyperplane with functional `h`.
#[inline]
pub fn on_hyperplane(h: u32, p: Point) -> bool {
    (h & p).count_ones() % 2 == 0
}

impl Geometry {
    /// The shared table for PG(m, 2), built on first use.
    pub fn get(m: usize) -> Result<&'static Geometry> {
        if !(MIN_DIM..=MAX_DIM).contains(&m) {
            return Err(Error::DimensionOutOfRange(m));
        }
        Ok(CACHE[m - 1].get_or_init(|| Geometry::build(m)))
    }

    fn build(m: usize) -> Geometry {
        let point_count = (1u32 << (m + 1)) - 1;
        let mut lines = Vec::new();
        let mut ids = HashMap::new();
        for p in 1..=point_count {
            for q in p + 1..=point_count {
                let r = p ^ q;
                if r > q {
                    ids.insert((p, q), lines.len());
                    lines.push([p, q, r]);
                }
            }
        }
        let hcount = point_count as usize;
        let mut line_hmask = vec![0u128; lines.len()];
        let mut point_lines = vec![Vec::new(); point_count as usize];
        for (id, pts) in lines.iter().enumerate() {
            for h in 1..=point_count {
                if pts.iter().all(|&p| on_hyperplane(h, p)) {
                    line_hmask[id] |= 1u128 << (h - 1);
                }
            }
            for &p in pts {
                point_lines[(p - 1) as usize].push(id);
            }
        }
        debug_assert!(hcount <= 128);
        Geometry {
            m,
            point_count,
            lines,
            line_hmask,
            point_lines,
            ids,
        }
    }

    pub fn hyperplane_count(&self) -> usize {
        self.point_count as usize
    }

    /// Id of the line through two distinct points, if they are valid.
    pub fn line_id(&self, p: Point, q: Point) -> Option<LineId> {
        if p == 0 || q == 0 || p == q || p > self.point_count || q > self.point_count {
            return None;
        }
        let mut t = [p, q, p ^ q];
        t.sort_unstable();
        self.ids.get(&(t[0], t[1])).copied()
    }

    /// True iff all three points of the line satisfy functional `h`.
    pub fn line_in_hyperplane(&self, id: LineId, h: u32) -> bool {
        self.line_hmask[id] >> (h - 1) & 1 == 1
    }
}

/// Every line of PG(m, 2) exactly once, lexicographically by sorted triple.
pub fn enumerate_lines(m: usize) -> Result<&'static [[Point; 3]]> {
    Ok(&Geometry::get(m)?.lines)
}

/// All nonzero functionals of PG(m, 2) in increasing order.
pub fn enumerate_hyperplanes(m: usize) -> Result<Vec<u32>> {
    let g = Geometry::get(m)?;
    Ok((1..=g.point_count).collect())
}

/// True iff the line lies inside the hyperplane.
pub fn incident(line: &[Point; 3], h: u32) -> bool {
    line.iter().all(|&p| on_hyperplane(h, p))
}

/// Where a point of PG(4, 2) sits relative to a flag l0 < E0 < H0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    OnL0,
    E0MinusL0,
    H0MinusE0,
    Outside,
}

/// A chain line < plane < solid in PG(4, 2).
#[derive(Debug, Clone)]
pub struct Flag {
    pub l0: [Point; 3],
    /// The 7 points of the plane E0, ascending.
    pub e0: [Point; 7],
    /// Functional of the solid H0.
    pub h0: u32,
}

impl Flag {
    pub fn contains_in_e0(&self, p: Point) -> bool {
        self.e0.contains(&p)
    }

    pub fn classify(&self, p: Point) -> Region {
        if self.l0.contains(&p) {
            Region::OnL0
        } else if self.e0.contains(&p) {
            Region::E0MinusL0
        } else if on_hyperplane(self.h0, p) {
            Region::H0MinusE0
        } else {
            Region::Outside
        }
    }
}

/// The standard-basis chain: l0 spanned by e1, e2; E0 by e1..e3; H0 by e1..e4.
///
/// Any flag would do (the collineation group is transitive on flags); fixing
/// this one makes every downstream artifact reproducible.
pub fn standard_flag() -> Flag {
    Flag {
        l0: [1, 2, 3],
        e0: [1, 2, 3, 4, 5, 6, 7],
        h0: 16,
    }
}

pub fn classify_point(flag: &Flag, p: Point) -> Region {
    flag.classify(p)
}
