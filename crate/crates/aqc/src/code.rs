//! Line-multiset representation of additive quaternary codes, species and
//! weight computations, the sum / lift / deletion operations, and the
//! [3,2,2] concatenation into binary linear codes.

use std::collections::BTreeMap;

use crate::geometry::{Geometry, LineId};
use crate::{Error, Result};

/// A multiset of lines of PG(k2 - 1, 2) with positive multiplicities.
///
/// This is the canonical representation of an additive quaternary code of
/// F2-dimension k2: each line occurrence contributes one coordinate pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineMultiset {
    k2: usize,
    entries: BTreeMap<LineId, u32>,
}

/// Per-hyperplane count of contained code lines, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeciesVector(pub Vec<u32>);

/// Length, dimension, minimum distance and weight distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSummary {
    pub n: u32,
    pub k2: usize,
    pub d: u32,
    /// weight -> number of nonzero codewords of that weight
    pub weights: BTreeMap<u32, u32>,
}

/// Render a quaternary dimension 2k = k2: integer when even, else `k2/2`.
pub fn render_k(k2: usize) -> String {
    if k2 % 2 == 0 {
        (k2 / 2).to_string()
    } else {
        format!("{}/2", k2)
    }
}

impl CodeSummary {
    pub fn params(&self) -> String {
        format!("[{}, {}, {}]", self.n, render_k(self.k2), self.d)
    }

    pub fn species(&self) -> u32 {
        self.n - self.d
    }
}

impl LineMultiset {
    pub fn new(k2: usize) -> Result<LineMultiset> {
        if !(2..=6).contains(&k2) {
            return Err(Error::DimensionOutOfRange(k2.saturating_sub(1)));
        }
        Ok(LineMultiset {
            k2,
            entries: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(k2: usize, entries: I) -> Result<LineMultiset>
    where
        I: IntoIterator<Item = (LineId, u32)>,
    {
        let mut lm = LineMultiset::new(k2)?;
        for (id, mult) in entries {
            lm.add(id, mult)?;
        }
        Ok(lm)
    }

    pub fn add(&mut self, id: LineId, mult: u32) -> Result<()> {
        let g = self.geometry()?;
        if id >= g.lines.len() {
            return Err(Error::LineAbsent(id));
        }
        if mult > 0 {
            *self.entries.entry(id).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn n(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn entries(&self) -> &BTreeMap<LineId, u32> {
        &self.entries
    }

    pub fn geometry(&self) -> Result<&'static Geometry> {
        Geometry::get(self.k2 - 1)
    }

    /// s(H) for every hyperplane H: contained code lines with multiplicity.
    pub fn species(&self) -> Result<SpeciesVector> {
        let g = self.geometry()?;
        let mut s = vec![0u32; g.hyperplane_count()];
        for (&id, &mult) in &self.entries {
            let mut mask = g.line_hmask[id];
            while mask != 0 {
                let h = mask.trailing_zeros() as usize;
                s[h] += mult;
                mask &= mask - 1;
            }
        }
        Ok(SpeciesVector(s))
    }

    /// Parameters and weight distribution; the weights are the numbers
    /// n - s(H) over all hyperplanes H.
    pub fn summarize(&self) -> Result<CodeSummary> {
        let n = self.n();
        let sv = self.species()?;
        let max = sv.0.iter().copied().max().unwrap_or(0);
        if n == 0 || max == n {
            return Err(Error::DimensionDeficient(self.k2));
        }
        let mut weights = BTreeMap::new();
        for &s in &sv.0 {
            *weights.entry(n - s).or_insert(0) += 1;
        }
        Ok(CodeSummary {
            n,
            k2: self.k2,
            d: n - max,
            weights,
        })
    }

    /// Multiset union: multiplicities and species vectors add pointwise.
    pub fn sum(&self, other: &LineMultiset) -> Result<LineMultiset> {
        if self.k2 != other.k2 {
            return Err(Error::DimensionMismatch(self.k2, other.k2));
        }
        let mut out = self.clone();
        for (&id, &mult) in &other.entries {
            *out.entries.entry(id).or_insert(0) += mult;
        }
        Ok(out)
    }

    /// Increase every line multiplicity of a PG(4, 2) multiset by `t`:
    /// n grows by 155 t, every s(H) by 35 t, d by 120 t.
    pub fn lift(&self, t: u32) -> Result<LineMultiset> {
        if self.k2 != 5 {
            return Err(Error::DimensionMismatch(self.k2, 5));
        }
        let g = self.geometry()?;
        let mut out = self.clone();
        for id in 0..g.lines.len() {
            *out.entries.entry(id).or_insert(0) += t;
        }
        Ok(out)
    }

    /// Remove one occurrence of the given line.
    pub fn delete_line(&self, id: LineId) -> Result<LineMultiset> {
        let mut out = self.clone();
        match out.entries.get_mut(&id) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                out.entries.remove(&id);
            }
            None => return Err(Error::LineAbsent(id)),
        }
        Ok(out)
    }

    /// Greedy shortening: repeatedly delete the line whose removal minimizes
    /// the resulting maximum species (ties: lowest line id). Deletion never
    /// increases any s(H), so a code of species s stays at species <= s.
    pub fn shorten_to(&self, n_target: u32) -> Result<LineMultiset> {
        let g = self.geometry()?;
        let hcount = g.hyperplane_count();
        let mut cur = self.clone();
        let mut n = cur.n();
        if n_target == 0 || n < n_target {
            return Err(Error::InvalidParams(format!(
                "cannot shorten a length {} code to length {}",
                n, n_target
            )));
        }
        let mut sv = cur.species()?.0;
        while n > n_target {
            let mut best: Option<(u32, LineId)> = None;
            for &id in cur.entries.keys() {
                let mask = g.line_hmask[id];
                let mut new_max = 0u32;
                for h in 0..hcount {
                    let dec = (mask >> h & 1) as u32;
                    new_max = new_max.max(sv[h] - dec);
                }
                if best.map_or(true, |(m, _)| new_max < m) {
                    best = Some((new_max, id));
                }
            }
            let (_, id) = best.expect("nonempty multiset");
            let mask = g.line_hmask[id];
            for h in 0..hcount {
                sv[h] -= (mask >> h & 1) as u32;
            }
            cur = cur.delete_line(id)?;
            n -= 1;
        }
        Ok(cur)
    }
}

/// k2 rows over F2, 2n columns in adjacent pairs; each column is stored as a
/// row bitmask. The pair for a line occurrence is its two smallest points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub k2: usize,
    pub cols: Vec<u32>,
}

impl LineMultiset {
    pub fn generator_matrix(&self) -> Result<GeneratorMatrix> {
        let g = self.geometry()?;
        let mut cols = Vec::with_capacity(2 * self.n() as usize);
        for (&id, &mult) in &self.entries {
            let pts = g.lines[id];
            for _ in 0..mult {
                cols.push(pts[0]);
                cols.push(pts[1]);
            }
        }
        Ok(GeneratorMatrix { k2: self.k2, cols })
    }
}

#[inline]
fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

impl GeneratorMatrix {
    pub fn n(&self) -> u32 {
        (self.cols.len() / 2) as u32
    }

    /// Exhaustive enumeration of all 2^k2 - 1 nonzero messages; a coordinate
    /// counts toward the weight iff its column pair evaluates nonzero.
    /// Independent of the species route through hyperplanes.
    pub fn brute_force_summary(&self) -> Result<CodeSummary> {
        assert!(self.k2 <= 16, "exhaustive enumeration limit");
        let n = self.n();
        let mut weights = BTreeMap::new();
        let mut d = u32::MAX;
        for x in 1u32..1 << self.k2 {
            let mut w = 0u32;
            for pair in self.cols.chunks_exact(2) {
                if parity(x & pair[0]) | parity(x & pair[1]) != 0 {
                    w += 1;
                }
            }
            if w == 0 {
                return Err(Error::DimensionDeficient(self.k2));
            }
            d = d.min(w);
            *weights.entry(w).or_insert(0) += 1;
        }
        Ok(CodeSummary {
            n,
            k2: self.k2,
            d,
            weights,
        })
    }

    /// Concatenate with the binary [3,2,2] code: each pair (a, b) becomes
    /// (a, b, a + b), so every nonzero quaternary symbol has binary weight 2.
    pub fn concat_322(&self) -> BinaryLinearCode {
        let mut bcols = Vec::with_capacity(3 * self.cols.len() / 2);
        for pair in self.cols.chunks_exact(2) {
            bcols.push(pair[0]);
            bcols.push(pair[1]);
            bcols.push(pair[0] ^ pair[1]);
        }
        BinaryLinearCode::from_columns(self.k2, &bcols)
    }
}

/// A binary linear code given by generator rows, packed 64 bits per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    pub k: usize,
    pub n_bits: usize,
    rows: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySummary {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub weights: BTreeMap<u32, u32>,
}

impl BinaryLinearCode {
    pub fn from_rows(rows: Vec<Vec<u64>>, n_bits: usize) -> BinaryLinearCode {
        BinaryLinearCode {
            k: rows.len(),
            n_bits,
            rows,
        }
    }

    /// Build from columns given as row bitmasks.
    pub fn from_columns(k: usize, cols: &[u32]) -> BinaryLinearCode {
        let n_bits = cols.len();
        let words = n_bits.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; k];
        for (j, &col) in cols.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                if col >> i & 1 == 1 {
                    row[j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        BinaryLinearCode { k, n_bits, rows }
    }

    pub fn bit(&self, row: usize, col: usize) -> bool {
        self.rows[row][col / 64] >> (col % 64) & 1 == 1
    }

    fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n_bits {
            let (w, b) = (col / 64, col % 64);
            if let Some(p) = (rank..m.len()).find(|&r| m[r][w] >> b & 1 == 1) {
                m.swap(rank, p);
                for r in 0..m.len() {
                    if r != rank && m[r][w] >> b & 1 == 1 {
                        let pivot = m[rank].clone();
                        for (x, y) in m[r].iter_mut().zip(pivot.iter()) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// Exhaustive minimum distance and weight distribution.
    pub fn summary(&self) -> Result<BinarySummary> {
        assert!(self.k <= 16, "exhaustive enumeration limit");
        if self.rank() < self.k {
            return Err(Error::RankDeficient);
        }
        let words = self.n_bits.div_ceil(64);
        let mut weights = BTreeMap::new();
        let mut d = u32::MAX;
        let mut word = vec![0u64; words];
        for x in 1u32..1 << self.k {
            word.iter_mut().for_each(|w| *w = 0);
            for (i, row) in self.rows.iter().enumerate() {
                if x >> i & 1 == 1 {
                    for (w, r) in word.iter_mut().zip(row.iter()) {
                        *w ^= r;
                    }
                }
            }
            let w: u32 = word.iter().map(|v| v.count_ones()).sum();
            d = d.min(w);
            *weights.entry(w).or_insert(0) += 1;
        }
        Ok(BinarySummary {
            n: self.n_bits as u32,
            k: self.k as u32,
            d,
            weights,
        })
    }
}
