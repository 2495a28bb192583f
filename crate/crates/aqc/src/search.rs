//! Deterministic backtracking engines: exact per-point line covers (the V
//! and E sets, spreads) and bounded-hyperplane-species code searches.

use crate::code::LineMultiset;
use crate::geometry::{Geometry, LineId};
use crate::gf4;
use crate::{Error, Result};

/// Exact incidence requirement: each point of PG(m, 2) must lie on exactly
/// `required[point - 1]` chosen lines.
#[derive(Debug, Clone)]
pub struct IncidenceTarget {
    pub m: usize,
    pub required: Vec<u32>,
}

impl IncidenceTarget {
    pub fn new(m: usize, required: Vec<u32>) -> Result<IncidenceTarget> {
        let g = Geometry::get(m)?;
        if required.len() != g.point_count as usize {
            return Err(Error::InvalidParams(format!(
                "target needs {} point counts, got {}",
                g.point_count,
                required.len()
            )));
        }
        Ok(IncidenceTarget { m, required })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub first_only: bool,
    pub max_nodes: u64,
    /// Species search only: fix the first chosen line to the minimal valid
    /// id. Sound for existence questions because the collineation group is
    /// transitive on lines; not for counting. Ignored by `exact_line_cover`,
    /// whose targets are not preserved by the full group.
    pub symmetry_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            first_only: true,
            max_nodes: 100_000_000,
            symmetry_pruning: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
}

struct CoverState<'a> {
    geom: &'static Geometry,
    remaining: Vec<u32>,
    chosen: Vec<LineId>,
    solutions: Vec<Vec<LineId>>,
    stats: SearchStats,
    opts: &'a SearchOptions,
}

impl CoverState<'_> {
    fn line_usable(&self, id: LineId) -> bool {
        self.geom.lines[id]
            .iter()
            .all(|&p| self.remaining[(p - 1) as usize] > 0)
    }

    // returns true when the search should stop (budget or first_only)
    fn recurse(&mut self, last_point: Option<u32>, min_id: LineId) -> Result<bool> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.opts.max_nodes {
            return Err(Error::BudgetExhausted {
                budget: self.opts.max_nodes,
                nodes: self.stats.nodes,
            });
        }
        let point = match self.remaining.iter().position(|&r| r > 0) {
            Some(idx) => idx as u32 + 1,
            None => {
                self.solutions.push(self.chosen.clone());
                self.stats.solutions += 1;
                return Ok(self.opts.first_only);
            }
        };
        // ascending ids per branch point so each solution appears once
        let floor = if last_point == Some(point) { min_id + 1 } else { 0 };
        let candidates: Vec<LineId> = self.geom.point_lines[(point - 1) as usize]
            .iter()
            .copied()
            .filter(|&id| id >= floor && self.line_usable(id))
            .collect();
        for id in candidates {
            for &p in &self.geom.lines[id] {
                self.remaining[(p - 1) as usize] -= 1;
            }
            self.chosen.push(id);
            let stop = self.recurse(Some(point), id)?;
            self.chosen.pop();
            for &p in &self.geom.lines[id] {
                self.remaining[(p - 1) as usize] += 1;
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// All line sets meeting every per-point incidence count exactly, in
/// lexicographic order. Branches on the lowest-index unmet point.
pub fn exact_line_cover(
    target: &IncidenceTarget,
    opts: &SearchOptions,
) -> Result<(Vec<Vec<LineId>>, SearchStats)> {
    let geom = Geometry::get(target.m)?;
    let mut st = CoverState {
        geom,
        remaining: target.required.clone(),
        chosen: Vec::new(),
        solutions: Vec::new(),
        stats: SearchStats::default(),
        opts,
    };
    st.recurse(None, 0)?;
    // independent re-verification of every emitted solution
    for sol in &st.solutions {
        let mut counts = vec![0u32; geom.point_count as usize];
        for &id in sol {
            for &p in &geom.lines[id] {
                counts[(p - 1) as usize] += 1;
            }
        }
        assert_eq!(counts, target.required, "solution fails recount");
    }
    Ok((st.solutions, st.stats))
}

struct SpeciesState<'a> {
    geom: &'static Geometry,
    k2: usize,
    n_target: u32,
    s_max: u32,
    species: Vec<u32>,
    chosen: Vec<LineId>,
    found: Option<LineMultiset>,
    stats: SearchStats,
    opts: &'a SearchOptions,
}

impl SpeciesState<'_> {
    fn recurse(&mut self, min_id: LineId) -> Result<bool> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.opts.max_nodes {
            return Err(Error::BudgetExhausted {
                budget: self.opts.max_nodes,
                nodes: self.stats.nodes,
            });
        }
        if self.chosen.len() as u32 == self.n_target {
            let mut lm = LineMultiset::new(self.k2).expect("k2 in range");
            for &id in &self.chosen {
                lm.add(id, 1).expect("valid id");
            }
            self.stats.solutions += 1;
            if self.found.is_none() {
                self.found = Some(lm);
            }
            return Ok(self.opts.first_only);
        }
        let last = if self.opts.symmetry_pruning && self.chosen.is_empty() {
            min_id // only the minimal valid id at the root
        } else {
            self.geom.lines.len() - 1
        };
        for id in min_id..=last {
            let mask = self.geom.line_hmask[id];
            let mut mask_iter = mask;
            let mut ok = true;
            while mask_iter != 0 {
                let h = mask_iter.trailing_zeros() as usize;
                if self.species[h] + 1 > self.s_max {
                    ok = false;
                    break;
                }
                mask_iter &= mask_iter - 1;
            }
            if !ok {
                continue;
            }
            let mut it = mask;
            while it != 0 {
                let h = it.trailing_zeros() as usize;
                self.species[h] += 1;
                it &= it - 1;
            }
            self.chosen.push(id);
            let stop = self.recurse(id)?; // non-decreasing ids allow multiplicity
            self.chosen.pop();
            let mut it = mask;
            while it != 0 {
                let h = it.trailing_zeros() as usize;
                self.species[h] -= 1;
                it &= it - 1;
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// First multiset of `n_target` lines (non-decreasing ids) of PG(k2 - 1, 2)
/// with every hyperplane species at most `s_max`; `Ok(None)` means the
/// exhaustive search completed empty.
pub fn bounded_species_search(
    n_target: u32,
    s_max: u32,
    k2: usize,
    opts: &SearchOptions,
) -> Result<(Option<LineMultiset>, SearchStats)> {
    if !(2..=6).contains(&k2) {
        return Err(Error::DimensionOutOfRange(k2.saturating_sub(1)));
    }
    if n_target < 1 {
        return Err(Error::InvalidParams("n_target must be positive".into()));
    }
    let geom = Geometry::get(k2 - 1)?;
    let mut st = SpeciesState {
        geom,
        k2,
        n_target,
        s_max,
        species: vec![0; geom.hyperplane_count()],
        chosen: Vec::new(),
        found: None,
        stats: SearchStats::default(),
        opts,
    };
    st.recurse(0)?;
    if let Some(lm) = &st.found {
        // re-verify against independent containment counting
        let sv = lm.species()?;
        assert!(sv.0.iter().all(|&s| s <= s_max), "solution fails recount");
        assert_eq!(lm.n(), n_target);
    }
    Ok((st.found, st.stats))
}

/// First `size`-subset of the points of PG(2, 4), lexicographically, such
/// that every line contains at most `line_cap` of them.
pub fn arc_search(size: usize, line_cap: u32) -> Option<Vec<gf4::Gf4Point>> {
    let pts = gf4::points();
    let lines = gf4::lines();
    // incidence[i][j]: point i on line j
    let on: Vec<Vec<bool>> = pts
        .iter()
        .map(|p| lines.iter().map(|f| gf4::eval(f, p) == 0).collect())
        .collect();
    let mut counts = vec![0u32; lines.len()];
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        size: usize,
        cap: u32,
        on: &[Vec<bool>],
        counts: &mut [u32],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        for i in start..on.len() {
            if on.len() - i < size - chosen.len() {
                break;
            }
            if on[i].iter().enumerate().any(|(j, &hit)| hit && counts[j] + 1 > cap) {
                continue;
            }
            for (j, &hit) in on[i].iter().enumerate() {
                if hit {
                    counts[j] += 1;
                }
            }
            chosen.push(i);
            if rec(i + 1, size, cap, on, counts, chosen) {
                return true;
            }
            chosen.pop();
            for (j, &hit) in on[i].iter().enumerate() {
                if hit {
                    counts[j] -= 1;
                }
            }
        }
        false
    }
    if rec(0, size, line_cap, &on, &mut counts, &mut chosen) {
        Some(chosen.into_iter().map(|i| pts[i]).collect())
    } else {
        None
    }
}
