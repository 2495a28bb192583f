//! The plane PG(2, 4) and its expansion into lines of PG(5, 2).
//!
//! GF(4) elements are encoded 0, 1, 2, 3 with 2 = w, 3 = w^2 = w + 1 for a
//! root w of x^2 + x + 1; addition is XOR and 2 * 3 = 1. Under the basis
//! {1, w} an element maps to the bit pair (low bit, high bit) of its
//! encoding, so F4^3 expands to F2^6 coordinate-wise.

use crate::geometry::{Geometry, LineId};

/// Multiplication table for x^2 + x + 1.
const MUL: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
];

#[inline]
pub fn mul(a: u8, b: u8) -> u8 {
    MUL[a as usize][b as usize]
}

#[inline]
pub fn add(a: u8, b: u8) -> u8 {
    a ^ b
}

/// Homogeneous coordinate triple, canonical form: first nonzero entry is 1.
pub type Gf4Point = [u8; 3];

fn canonical(t: Gf4Point) -> bool {
    match t.iter().find(|&&x| x != 0) {
        Some(&x) => x == 1,
        None => false,
    }
}

/// The 21 points of PG(2, 4), lexicographic canonical order.
pub fn points() -> Vec<Gf4Point> {
    let mut out = Vec::with_capacity(21);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                let t = [a, b, c];
                if canonical(t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// The 21 lines, as canonical functionals; same enumeration order as points.
pub fn lines() -> Vec<Gf4Point> {
    points()
}

#[inline]
pub fn eval(f: &Gf4Point, p: &Gf4Point) -> u8 {
    mul(f[0], p[0]) ^ mul(f[1], p[1]) ^ mul(f[2], p[2])
}

/// The 5 points on the line with functional `f`, in enumeration order.
pub fn line_points(f: &Gf4Point) -> Vec<Gf4Point> {
    points().into_iter().filter(|p| eval(f, p) == 0).collect()
}

fn to_gf2_vector(p: &Gf4Point) -> u32 {
    (p[0] as u32) | (p[1] as u32) << 2 | (p[2] as u32) << 4
}

/// The line of PG(5, 2) spanned by the F2 images of the F4-multiples of `pt`.
///
/// Injective on the 21 canonical points; the image lines are pairwise
/// disjoint and cover all 63 points of PG(5, 2) (a line spread).
pub fn point_to_gf2_line(pt: &Gf4Point) -> LineId {
    let g = Geometry::get(5).expect("PG(5,2) in range");
    let a = to_gf2_vector(&[mul(1, pt[0]), mul(1, pt[1]), mul(1, pt[2])]);
    let b = to_gf2_vector(&[mul(2, pt[0]), mul(2, pt[1]), mul(2, pt[2])]);
    g.line_id(a, b).expect("F4 span is a line")
}

/// A hyperoval: the conic {(1, t, t^2)} plus both exterior points.
///
/// Every line of PG(2, 4) meets it in 0 or 2 points.
pub fn hyperoval() -> Vec<Gf4Point> {
    let mut out = vec![[0, 1, 0], [0, 0, 1]];
    for t in 0..4u8 {
        out.push([1, t, mul(t, t)]);
    }
    out.sort_unstable();
    out
}
