//! Permutation groups given by generators.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{bound, Error, Result};
use crate::perm::Perm;
use crate::schreier::StabChain;

/// Configurable size limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest index accepted by [`coset_action`].
    pub max_cosets: u64,
    /// Largest group order accepted by element enumeration.
    pub max_elements: u64,
    /// Largest group order for exhaustive subgroup enumeration.
    pub max_exhaustive: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_cosets: 100_000,
            max_elements: 200_000,
            max_exhaustive: 20_000,
        }
    }
}

/// A permutation group on `{0, .., degree-1}` with a lazily built stabilizer chain.
#[derive(Debug, Clone)]
pub struct GenGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<Arc<StabChain>>,
}

/// JSON shape `{degree, generators}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

/// Subdegrees as `length -> multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdegreeReport {
    pub degree: usize,
    pub lengths: BTreeMap<usize, usize>,
}

impl SubdegreeReport {
    #[must_use]
    pub fn from_lengths(degree: usize, lens: impl IntoIterator<Item = usize>) -> Self {
        let mut lengths = BTreeMap::new();
        for l in lens {
            *lengths.entry(l).or_insert(0) += 1;
        }
        SubdegreeReport { degree, lengths }
    }

    /// Nontrivial lengths, with repetition.
    #[must_use]
    pub fn nontrivial(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (&l, &m) in &self.lengths {
            let m = if l == 1 { m - 1 } else { m };
            out.extend(std::iter::repeat(l).take(m));
        }
        out
    }

    /// `1, 7^3, 14` style.
    #[must_use]
    pub fn display(&self) -> String {
        self.lengths
            .iter()
            .map(|(&l, &m)| if m == 1 { l.to_string() } else { format!("{l}^{m}") })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Result of a primitivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// A nontrivial block system when imprimitive; blocks sorted, ordered by least point.
    pub blocks: Option<Vec<Vec<u32>>>,
}

impl GenGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(GenGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    #[must_use]
    pub fn trivial(degree: usize) -> Self {
        GenGroup {
            degree,
            gens: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    fn with_chain(degree: usize, gens: Vec<Perm>, chain: StabChain) -> Self {
        let g = GenGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        };
        let _ = g.chain.set(Arc::new(chain));
        g
    }

    /// A group whose generators are given by a chain already built in natural base order.
    #[must_use]
    pub fn from_chain(chain: StabChain) -> Self {
        debug_assert!(chain.has_natural_base());
        let gens = chain.strong_generators().to_vec();
        Self::with_chain(chain.degree(), gens, chain)
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[must_use]
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    #[must_use]
    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            degree: self.degree,
            generators: self.gens.clone(),
        }
    }

    /// Stabilizer chain with the natural base order.
    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| Arc::new(StabChain::natural(self.degree, &self.gens)))
    }

    #[must_use]
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        Ok(self.chain().contains(g))
    }

    /// Whether every generator of `h` lies in this group.
    #[must_use]
    pub fn contains_group(&self, h: &GenGroup) -> bool {
        h.degree == self.degree && h.gens.iter().all(|g| self.chain().contains(g))
    }

    /// Breadth-first orbit of `x`.
    #[must_use]
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            for g in &self.gens {
                let z = g.image(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                }
            }
            head += 1;
        }
        orbit
    }

    /// All orbits, each sorted, ordered by least point.
    #[must_use]
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y as usize] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    /// Sorted orbit lengths.
    #[must_use]
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }

    #[must_use]
    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// The full stabilizer of `x`.
    #[must_use]
    pub fn point_stabilizer(&self, x: u32) -> GenGroup {
        let mut base = vec![x];
        base.extend((0..self.degree as u32).filter(|&y| y != x));
        let chain = StabChain::new(self.degree, &self.gens, &base);
        let gens = chain.stabilizer_generators(1);
        GenGroup::new(self.degree, gens).expect("same degree")
    }

    /// Points fixed by every generator.
    #[must_use]
    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree as u32)
            .filter(|&x| self.gens.iter().all(|g| g.image(x) == x))
            .collect()
    }

    /// Every element exactly once; fails above `max` elements.
    pub fn elements(&self, max: u64) -> Result<Vec<Perm>> {
        let ord = self.order();
        if ord > u128::from(max) {
            return Err(bound(format!("element enumeration of a group of order {ord}"), max));
        }
        Ok(self.chain().elements())
    }

    /// Minimal-block primitivity test: for each `b != 0`, the finest block system
    /// joining `0` and `b`.
    pub fn is_primitive(&self) -> Result<Primitivity> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree;
        for b in 1..n as u32 {
            let classes = self.minimal_blocks(0, b);
            if classes.len() > 1 {
                return Ok(Primitivity {
                    primitive: false,
                    blocks: Some(classes),
                });
            }
        }
        Ok(Primitivity {
            primitive: true,
            blocks: None,
        })
    }

    /// Finest block system in which `a` and `b` share a block.
    #[must_use]
    pub fn minimal_blocks(&self, a: u32, b: u32) -> Vec<Vec<u32>> {
        let n = self.degree;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let p = parent[x as usize];
                parent[x as usize] = parent[p as usize];
                x = p;
            }
            x
        }
        let mut queue = VecDeque::new();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[rb as usize] = ra;
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.gens {
                let (gx, gy) = (g.image(x), g.image(y));
                let (r1, r2) = (find(&mut parent, gx), find(&mut parent, gy));
                if r1 != r2 {
                    parent[r2 as usize] = r1;
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut classes: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for x in 0..n as u32 {
            let r = find(&mut parent, x);
            classes.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<u32>> = classes.into_values().collect();
        out.sort();
        out
    }

    /// Orbit lengths of the stabilizer of point 0.
    pub fn subdegrees(&self) -> Result<SubdegreeReport> {
        self.subdegrees_at(0)
    }

    pub fn subdegrees_at(&self, x: u32) -> Result<SubdegreeReport> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let stab = self.point_stabilizer(x);
        Ok(SubdegreeReport::from_lengths(
            self.degree,
            stab.orbits().iter().map(Vec::len),
        ))
    }

    /// Orbit of `start` under an arbitrary action together with its full stabilizer.
    /// Fails when the orbit grows past `max_orbit`.
    pub fn orbit_stabilizer<T, F>(&self, start: T, act: F, max_orbit: usize) -> Result<(Vec<T>, GenGroup)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &Perm) -> T,
    {
        let n = self.degree;
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut orbit = vec![start.clone()];
        let mut reps = vec![Perm::identity(n)];
        index.insert(start, 0);
        let mut head = 0;
        while head < orbit.len() {
            for g in &self.gens {
                let y = act(&orbit[head], g);
                if !index.contains_key(&y) {
                    if orbit.len() >= max_orbit {
                        return Err(bound("orbit length", max_orbit as u64));
                    }
                    index.insert(y.clone(), orbit.len());
                    orbit.push(y);
                    let r = reps[head].then(g);
                    reps.push(r);
                }
            }
            head += 1;
        }
        let mut chain = StabChain::natural(n, &[]);
        let target = self.order() / orbit.len() as u128;
        'done: for (i, t) in orbit.iter().enumerate() {
            for g in &self.gens {
                if chain.order() == target {
                    break 'done;
                }
                let y = act(t, g);
                let j = index[&y];
                let s = reps[i].then(g).then(&reps[j].inverse());
                if !s.is_identity() {
                    chain.extend(&s);
                }
            }
        }
        Ok((orbit, GenGroup::from_chain(chain)))
    }

    /// Setwise stabilizer of a point set.
    pub fn set_stabilizer(&self, set: &[u32], max_orbit: usize) -> Result<GenGroup> {
        let mut s = set.to_vec();
        s.sort_unstable();
        Ok(self
            .orbit_stabilizer(s, |b, g| g.image_of_set(b), max_orbit)?
            .1)
    }

    /// Orbit of a point set under the induced action (sets sorted), breadth-first.
    pub fn set_orbit(&self, set: &[u32], max_orbit: usize) -> Result<Vec<Vec<u32>>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        let mut index = std::collections::HashSet::new();
        index.insert(s.clone());
        let mut orbit = vec![s];
        let mut head = 0;
        while head < orbit.len() {
            for g in &self.gens {
                let y = g.image_of_set(&orbit[head]);
                if index.insert(y.clone()) {
                    if orbit.len() >= max_orbit {
                        return Err(bound("set orbit length", max_orbit as u64));
                    }
                    orbit.push(y);
                }
            }
            head += 1;
        }
        Ok(orbit)
    }

    /// Group generated by `self` and `extra`.
    pub fn join(&self, extra: &[Perm]) -> Result<GenGroup> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        GenGroup::new(self.degree, gens)
    }
}

/// Labels of right cosets `H x`, with a map from group elements to their coset permutation.
#[derive(Debug, Clone)]
pub struct CosetTable {
    h_chain: Arc<StabChain>,
    reps: Vec<Perm>,
    index: HashMap<Vec<u32>, u32>,
}

impl CosetTable {
    #[must_use]
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Lexicographically least element of each coset, in label order.
    #[must_use]
    pub fn representatives(&self) -> &[Perm] {
        &self.reps
    }

    /// Label of the coset `H g`.
    #[must_use]
    pub fn label(&self, g: &Perm) -> Option<u32> {
        let r = self.h_chain.min_coset_rep(g);
        self.index.get(r.images()).copied()
    }

    /// The permutation of coset labels induced by right multiplication with `g`.
    #[must_use]
    pub fn act(&self, g: &Perm) -> Perm {
        Perm::from_images_unchecked(
            self.reps
                .iter()
                .map(|r| self.label(&r.then(g)).expect("g lies in the ambient group"))
                .collect(),
        )
    }
}

/// Action of `g` on the right cosets of `h`. Labels are assigned breadth-first from `H`,
/// each coset named by its lexicographically least element.
pub fn coset_action(g: &GenGroup, h: &GenGroup, bounds: &Bounds) -> Result<(GenGroup, CosetTable)> {
    if !g.contains_group(h) {
        return Err(Error::NotASubgroup);
    }
    let index = g.order() / h.order();
    if index > u128::from(bounds.max_cosets) {
        return Err(bound(format!("coset action of index {index}"), bounds.max_cosets));
    }
    let h_chain = h.chain.get_or_init(|| Arc::new(StabChain::natural(h.degree, &h.gens))).clone();
    let id = Perm::identity(g.degree);
    let first = h_chain.min_coset_rep(&id);
    let mut table = CosetTable {
        h_chain,
        reps: vec![first.clone()],
        index: HashMap::new(),
    };
    table.index.insert(first.images().to_vec(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.gens.len()];
    let mut head = 0;
    while head < table.reps.len() {
        for (gi, s) in g.gens.iter().enumerate() {
            let y = table.h_chain.min_coset_rep(&table.reps[head].then(s));
            let next = table.reps.len() as u32;
            let label = *table.index.entry(y.images().to_vec()).or_insert(next);
            if label == next {
                table.reps.push(y);
            }
            images[gi].push(label);
        }
        head += 1;
    }
    let n = table.reps.len();
    let gens: Vec<Perm> = images.into_iter().map(Perm::from_images_unchecked).collect();
    let image = GenGroup::new(n, gens)?;
    let (io, go) = (image.order(), g.order());
    if io != go {
        return Err(Error::NotFaithful { image: io, group: go });
    }
    Ok((image, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic4() -> GenGroup {
        GenGroup::new(4, vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()]).unwrap()
    }

    #[test]
    fn regular_c4_is_imprimitive() {
        let p = cyclic4().is_primitive().unwrap();
        assert!(!p.primitive);
        assert_eq!(p.blocks.unwrap(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn identity_group_basics() {
        let g = GenGroup::trivial(5);
        assert_eq!(g.orbit(3), vec![3]);
        assert_eq!(g.fixed_points(), vec![0, 1, 2, 3, 4]);
        assert_eq!(g.point_stabilizer(2).order(), 1);
        assert!(g.contains(&Perm::identity(5)).unwrap());
        assert!(g.is_primitive().is_err());
    }

    #[test]
    fn coset_action_of_s4_on_cosets_of_s3() {
        let s4 = GenGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let s3 = s4.point_stabilizer(3);
        let (img, table) = coset_action(&s4, &s3, &Bounds::default()).unwrap();
        assert_eq!(img.degree(), 4);
        assert_eq!(img.order(), 24);
        assert_eq!(table.len(), 4);
        // the action of the generators matches the coset action computed via `act`
        for g in s4.generators() {
            let a = table.act(g);
            assert!(img.contains(&a).unwrap());
        }
    }

    #[test]
    fn set_stabilizer_of_pair() {
        let s4 = GenGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let st = s4.set_stabilizer(&[0, 1], 100).unwrap();
        assert_eq!(st.order(), 4);
        assert_eq!(s4.set_orbit(&[0, 1], 100).unwrap().len(), 6);
    }
}
