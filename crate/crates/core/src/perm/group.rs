//! Deterministic Schreier-Sims with explicit transversals.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::{PermError, Permutation};

const NONE: u32 = u32::MAX;

#[derive(Clone)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `slot[x]` indexes `reps`/`inv_reps` for orbit points, `NONE` otherwise.
    slot: Vec<u32>,
    /// `reps[k]` maps `point` to `orbit[k]`.
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NONE; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        self.slot.iter_mut().for_each(|s| *s = NONE);
        self.slot[self.point] = 0;
        self.orbit.push(self.point as u32);
        self.reps.push(Permutation::identity(degree));
        self.inv_reps.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head] as usize;
            for s in &self.gens {
                let y = s.apply(x);
                if self.slot[y] == NONE {
                    let rep = self.reps[head].then(s);
                    self.slot[y] = self.orbit.len() as u32;
                    self.orbit.push(y as u32);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }
}

/// A permutation group stored as a base and strong generating set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &super::format_generators(&self.generators))
            .finish()
    }
}

fn first_moved(p: &Permutation) -> Option<usize> {
    (0..p.degree()).find(|&x| p.apply(x) != x)
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new() }
    }

    /// Group generated by `gens` on `degree` points.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self, PermError> {
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(Self::build(degree, gens, &[]))
    }

    /// As [`from_generators`](Self::from_generators), with `base_prefix` as
    /// the first base points.
    fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        let mut levels: Vec<Level> = base_prefix.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &generators {
            if levels.iter().all(|l| g.apply(l.point) == l.point) {
                let b = first_moved(g).expect("nonidentity");
                levels.push(Level::new(b, degree));
            }
        }
        for i in 0..levels.len() {
            let fixed: Vec<usize> = levels[..i].iter().map(|l| l.point).collect();
            levels[i].gens = generators
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            levels[i].rebuild_orbit(degree);
        }
        let mut group = PermGroup { degree, generators, levels };
        group.complete();
        group
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.failing_schreier_generator(lvl) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = first_moved(&h).expect("nonidentity residue");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for k in lvl + 1..=j {
                        self.levels[k].gens.push(h.clone());
                        self.levels[k].rebuild_orbit(self.degree);
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for (k, &x) in level.orbit.iter().enumerate() {
            for s in &level.gens {
                let y = s.apply(x as usize);
                let back = &level.inv_reps[level.slot[y] as usize];
                let h = level.reps[k].then(s).then(back);
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift(h, lvl + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }

    /// Strips `g` through the levels from `from` on; returns the residue and
    /// the level where it dropped out (`levels.len()` if it went through).
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.apply(level.point);
            let s = level.slot[x];
            if s == NONE {
                return (g, j);
            }
            if s != 0 {
                g = g.then(&level.inv_reps[s as usize]);
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators this group was built from (identity and duplicates
    /// removed).
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Lengths of the fundamental orbits along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// The order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, j) = self.sift(g.clone(), 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Orbit partition of the points, each orbit sorted, ordered by least
    /// element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Orbit of a single point, sorted.
    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![p];
        seen[p] = true;
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        out
    }

    /// Point stabilizer, computed by a base change that puts `p` first.
    pub fn stabilizer(&self, p: usize) -> PermGroup {
        self.pointwise_stabilizer(&[p])
    }

    /// Subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let rebased = Self::build(self.degree, &self.strong_generators(), points);
        let k = points.len();
        let gens = if rebased.levels.len() > k {
            rebased.levels[k].gens.clone()
        } else {
            Vec::new()
        };
        Self::build(self.degree, &gens, &[])
    }

    /// Action on an invariant point set, relabeled so `points[i]` becomes `i`.
    pub fn restrict(&self, points: &[usize]) -> Result<PermGroup, PermError> {
        let mut index_of = vec![None; self.degree];
        for (i, &p) in points.iter().enumerate() {
            if p >= self.degree {
                return Err(PermError::PointOutOfRange { point: p + 1, degree: self.degree });
            }
            if index_of[p].is_some() {
                return Err(PermError::RepeatedPoint(p + 1));
            }
            index_of[p] = Some(i as u32);
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            gens.push(g.restricted(points, &index_of).ok_or(PermError::NotInvariant)?);
        }
        Ok(Self::build(points.len(), &gens, &[]))
    }

    /// Every element, or `None` if the order exceeds `limit`. The order of
    /// the list is deterministic.
    pub fn elements(&self, limit: u64) -> Option<Vec<Permutation>> {
        let order = self.order_u64()?;
        if order > limit {
            return None;
        }
        let mut out = vec![Permutation::identity(self.degree)];
        // g = u_deepest then ... then u_0
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps.len());
            for h in &out {
                for u in &level.reps {
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        Some(out)
    }

    /// True iff both groups act on the same points and contain each other's
    /// generators.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
            && self.generators.iter().all(|g| other.contains(g))
    }
}

/// Orbits of the group generated by `gens`, via union-find.
pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of = vec![usize::MAX; degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        if cell_of[r] == usize::MAX {
            cell_of[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[cell_of[r]].push(x);
    }
    cells
}
