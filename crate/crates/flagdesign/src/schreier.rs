//! Deterministic Schreier–Sims.
//!
//! The chain keeps one level per point of a prescribed base order, most of them
//! trivial. With the natural order `0, 1, .., n-1` the stabilizer at level `l`
//! fixes every point below `l`, which is what the lexicographically minimal coset
//! representative needs.

use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Level {
    point: u32,
    /// Indices into `StabChain::strong` of generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Position of each point in `orbit`, or `NONE`; empty while the orbit is trivial.
    pos: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
}

impl Level {
    fn trivial(point: u32) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            pos: Vec::new(),
            reps: Vec::new(),
            inv_reps: Vec::new(),
        }
    }

    fn position(&self, x: u32) -> Option<usize> {
        if x == self.point {
            return Some(0);
        }
        match self.pos.get(x as usize) {
            Some(&p) if p != NONE => Some(p as usize),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
    strong: Vec<Perm>,
}

impl StabChain {
    /// Builds a chain for `<gens>` with the given base order (a permutation of all points).
    #[must_use]
    pub fn new(n: usize, gens: &[Perm], base_order: &[u32]) -> Self {
        debug_assert_eq!(base_order.len(), n);
        let mut chain = StabChain {
            n,
            levels: base_order.iter().map(|&b| Level::trivial(b)).collect(),
            strong: Vec::new(),
        };
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    /// Chain with base order `0, 1, .., n-1`.
    #[must_use]
    pub fn natural(n: usize, gens: &[Perm]) -> Self {
        let base: Vec<u32> = (0..n as u32).collect();
        Self::new(n, gens, &base)
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Adds `g` to the group. Returns false if it was already a member.
    pub fn extend(&mut self, g: &Perm) -> bool {
        if self.contains(g) {
            return false;
        }
        let l = self.add_strong(g.clone());
        self.close(l);
        true
    }

    fn first_moved_level(&self, g: &Perm) -> usize {
        self.levels
            .iter()
            .position(|lv| g.image(lv.point) != lv.point)
            .expect("non-identity permutation moves a base point")
    }

    fn add_strong(&mut self, g: Perm) -> usize {
        let idx = self.strong.len();
        let j = self.first_moved_level(&g);
        self.strong.push(g);
        for l in 0..=j {
            self.levels[l].gens.push(idx);
        }
        for l in 0..=j {
            self.rebuild_orbit(l);
        }
        j
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let n = self.n;
        let lv = &self.levels[l];
        if lv.gens.is_empty() {
            return;
        }
        let point = lv.point;
        let gens: Vec<&Perm> = lv.gens.iter().map(|&i| &self.strong[i]).collect();
        let mut pos = vec![NONE; n];
        let mut orbit = vec![point];
        let mut reps = vec![Perm::identity(n)];
        pos[point as usize] = 0;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for s in &gens {
                let y = s.image(x);
                if pos[y as usize] == NONE {
                    pos[y as usize] = orbit.len() as u32;
                    orbit.push(y);
                    let r = reps[head].then(s);
                    reps.push(r);
                }
            }
            head += 1;
        }
        let inv_reps = reps.iter().map(Perm::inverse).collect();
        let lv = &mut self.levels[l];
        lv.orbit = orbit;
        lv.pos = pos;
        lv.reps = reps;
        lv.inv_reps = inv_reps;
    }

    /// Verifies Schreier generators from level `start` downwards, adding sift residues.
    fn close(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let l = i as usize;
            if self.levels[l].gens.is_empty() {
                i -= 1;
                continue;
            }
            let orbit_len = self.levels[l].orbit.len();
            for bi in 0..orbit_len {
                let ngens = self.levels[l].gens.len();
                for si in 0..ngens {
                    let lv = &self.levels[l];
                    let s = &self.strong[lv.gens[si]];
                    let beta = lv.orbit[bi];
                    let img = s.image(beta);
                    let pj = lv.position(img).expect("orbit is closed");
                    let h = lv.reps[bi].then(s).then(&lv.inv_reps[pj]);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.sift_from(h, l + 1);
                    if j < self.levels.len() {
                        let k = self.add_strong(res);
                        debug_assert_eq!(k, j);
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts from level `start`; returns the residue and the failing level (`levels.len()` on success).
    fn sift_from(&self, mut h: Perm, start: usize) -> (Perm, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(start) {
            let beta = h.image(lv.point);
            if beta == lv.point {
                continue;
            }
            match lv.position(beta) {
                Some(p) => h = h.then(&lv.inv_reps[p]),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    #[must_use]
    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.sift_from(g.clone(), 0).1 == self.levels.len()
    }

    #[must_use]
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|lv| lv.orbit.len() as u128).product()
    }

    /// Base points of the nontrivial levels, in chain order.
    #[must_use]
    pub fn base(&self) -> Vec<u32> {
        self.levels
            .iter()
            .filter(|lv| lv.orbit.len() > 1)
            .map(|lv| lv.point)
            .collect()
    }

    #[must_use]
    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    /// Strong generators of the stabilizer of the first `depth` points of the base order.
    #[must_use]
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Perm> {
        match self.levels.get(depth) {
            Some(lv) => lv.gens.iter().map(|&i| self.strong[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Orbit of the base point at `depth` under the stabilizer of earlier points.
    #[must_use]
    pub fn level_orbit(&self, depth: usize) -> &[u32] {
        &self.levels[depth].orbit
    }

    /// All elements, each exactly once, in a fixed nested order.
    #[must_use]
    pub fn elements(&self) -> Vec<Perm> {
        let nontrivial: Vec<&Level> = self.levels.iter().filter(|lv| lv.orbit.len() > 1).collect();
        let mut out = vec![Perm::identity(self.n)];
        // g = u_deep ... u_0; build from the deepest level outwards.
        for lv in nontrivial.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lv.reps.len());
            for g in &out {
                for r in &lv.reps {
                    next.push(g.then(r));
                }
            }
            out = next;
        }
        out
    }

    /// Lexicographically least element of the right coset `H·g` (this chain is `H`),
    /// comparing image arrays. Requires the natural base order.
    #[must_use]
    pub fn min_coset_rep(&self, g: &Perm) -> Perm {
        let mut x = g.clone();
        for lv in &self.levels {
            if lv.orbit.len() <= 1 {
                continue;
            }
            let best = (0..lv.orbit.len())
                .min_by_key(|&i| x.image(lv.orbit[i]))
                .expect("orbit is nonempty");
            if best != 0 {
                x = lv.reps[best].then(&x);
            }
        }
        x
    }

    /// Checks the base order is natural (needed by `min_coset_rep`).
    #[must_use]
    pub fn has_natural_base(&self) -> bool {
        self.levels.iter().enumerate().all(|(i, lv)| lv.point == i as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(gens: &[Perm]) -> HashSet<Perm> {
        let n = gens[0].degree();
        let mut seen = HashSet::new();
        let mut queue = vec![Perm::identity(n)];
        seen.insert(Perm::identity(n));
        while let Some(g) = queue.pop() {
            for s in gens {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        seen
    }

    #[test]
    fn symmetric_group_order() {
        let gens = [
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let c = StabChain::natural(5, &gens);
        assert_eq!(c.order(), 120);
        assert_eq!(c.elements().len(), 120);
    }

    #[test]
    fn matches_closure_on_small_groups() {
        let gens = [
            Perm::from_cycles(7, &[&[0, 1, 2], &[3, 4, 5]]).unwrap(),
            Perm::from_cycles(7, &[&[2, 3], &[5, 6]]).unwrap(),
        ];
        let all = closure(&gens);
        let c = StabChain::natural(7, &gens);
        assert_eq!(c.order(), all.len() as u128);
        assert!(all.iter().all(|g| c.contains(g)));
        let els: HashSet<Perm> = c.elements().into_iter().collect();
        assert_eq!(els, all);
    }

    #[test]
    fn min_coset_rep_is_minimum_of_coset() {
        let hgens = [Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap()];
        let h = StabChain::natural(5, &hgens);
        let g = Perm::from_cycles(5, &[&[0, 3], &[1, 4]]).unwrap();
        let coset: Vec<Perm> = h.elements().iter().map(|x| x.then(&g)).collect();
        let best = coset.iter().min().unwrap();
        assert_eq!(&h.min_coset_rep(&g), best);
    }
}
