//! Conjugacy classes of subgroups by cyclic extension, and subgroups of a given order.
//!
//! Every non-perfect subgroup `W` has a normal subgroup `U` of prime index, so starting
//! from the perfect subgroups and repeatedly adjoining elements of `N(U)` whose power
//! falls into `U` reaches every class. Classes are deduplicated by hashing the element
//! sets of all conjugates.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize};
use crate::error::{bound, Error, Result};
use crate::group::{Bounds, GenGroup};
use crate::perm::Perm;
use crate::psl2::{normalizer_in, Catalog, LinearGroup, SubgroupTag};

/// All elements of a group, indexed, with multiplication through base images.
#[derive(Debug, Clone)]
pub struct ElementTable {
    base: Vec<u32>,
    bits: u32,
    elements: Vec<Perm>,
    index: HashMap<u128, u32>,
    inverse: Vec<u32>,
    identity: u32,
}

impl ElementTable {
    pub fn new(g: &GenGroup, max: u64) -> Result<Self> {
        let elements = g.elements(max)?;
        let mut base = g.chain().base();
        if base.is_empty() {
            base.push(0);
        }
        let bits = (usize::BITS - g.degree().leading_zeros()).max(1);
        if base.len() as u32 * bits > 128 {
            return Err(bound("base length for element keys", u64::from(128 / bits)));
        }
        let mut t = ElementTable {
            base,
            bits,
            elements,
            index: HashMap::new(),
            inverse: Vec::new(),
            identity: 0,
        };
        t.index.reserve(t.elements.len());
        for (i, e) in t.elements.iter().enumerate() {
            let k = t.key(e);
            t.index.insert(k, i as u32);
        }
        t.identity = t.index[&t.key(&Perm::identity(g.degree()))];
        t.inverse = t
            .elements
            .iter()
            .map(|e| t.index[&t.key(&e.inverse())])
            .collect();
        Ok(t)
    }

    fn pack(&self, images: impl Iterator<Item = u32>) -> u128 {
        images.fold(0u128, |acc, x| (acc << self.bits) | u128::from(x))
    }

    fn key(&self, p: &Perm) -> u128 {
        self.pack(self.base.iter().map(|&b| p.image(b)))
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[must_use]
    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    #[must_use]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[must_use]
    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(&self.key(p)).copied()
    }

    #[must_use]
    pub fn inverse(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    /// Index of `elements[i].then(elements[j])`.
    #[must_use]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        let a = &self.elements[i as usize];
        let b = &self.elements[j as usize];
        let k = self.pack(self.base.iter().map(|&x| b.image(a.image(x))));
        self.index[&k]
    }

    /// `g^-1 x g`.
    #[must_use]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    #[must_use]
    pub fn pow(&self, x: u32, e: u64) -> u32 {
        let mut r = self.identity;
        for _ in 0..e {
            r = self.mul(r, x);
        }
        r
    }
}

fn set_hash(set: &[u32]) -> u128 {
    let mut h1 = DefaultHasher::new();
    0u8.hash(&mut h1);
    set.hash(&mut h1);
    let mut h2 = DefaultHasher::new();
    1u8.hash(&mut h2);
    set.hash(&mut h2);
    (u128::from(h1.finish()) << 64) | u128::from(h2.finish())
}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupClass {
    pub order: usize,
    /// Sorted element indices of the representative.
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
    pub class_size: usize,
}

/// Subgroup classes of a group whose orders divide one of the target orders.
#[derive(Debug, Clone)]
pub struct Lattice {
    table: ElementTable,
    degree: usize,
    group_gens: Vec<u32>,
    classes: Vec<SubgroupClass>,
    class_of: HashMap<u128, usize>,
    allowed: HashSet<usize>,
}

impl Lattice {
    /// Enumerates classes whose order divides some entry of `targets` (all classes when
    /// `targets` is `None`). `perfect` must contain every perfect subgroup up to conjugacy.
    pub fn build(g: &GenGroup, perfect: &[GenGroup], targets: Option<&[u64]>, bounds: &Bounds) -> Result<Self> {
        if g.order() > u128::from(bounds.max_exhaustive) {
            return Err(bound(
                format!("exhaustive subgroup enumeration of a group of order {}", g.order()),
                bounds.max_exhaustive,
            ));
        }
        let table = ElementTable::new(g, bounds.max_exhaustive)?;
        let n = table.len() as u64;
        let allowed: HashSet<usize> = match targets {
            None => divisors(n).into_iter().map(|d| d as usize).collect(),
            Some(ts) => ts
                .iter()
                .filter(|&&t| t > 0 && n % t == 0)
                .flat_map(|&t| divisors(t))
                .map(|d| d as usize)
                .collect(),
        };
        let group_gens = g
            .generators()
            .iter()
            .map(|p| table.index_of(p).expect("generator is an element"))
            .collect();
        let mut lat = Lattice {
            table,
            degree: g.degree(),
            group_gens,
            classes: Vec::new(),
            class_of: HashMap::new(),
            allowed,
        };
        let mut queue = VecDeque::new();
        let id = lat.table.identity();
        if let Some(c) = lat.register(vec![id], vec![]) {
            queue.push_back(c);
        }
        for p in perfect {
            if !g.contains_group(p) {
                return Err(Error::NotASubgroup);
            }
            let gens: Vec<u32> = p
                .generators()
                .iter()
                .map(|x| lat.table.index_of(x).expect("member"))
                .collect();
            let els = lat.closure(&gens);
            if let Some(c) = lat.register(els, gens) {
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            for w in lat.extensions(c) {
                queue.push_back(w);
            }
        }
        let mut order: Vec<usize> = (0..lat.classes.len()).collect();
        order.sort_by_key(|&i| (lat.classes[i].order, i));
        let classes = order.iter().map(|&i| lat.classes[i].clone()).collect();
        let mut remap = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        for v in lat.class_of.values_mut() {
            *v = remap[*v];
        }
        lat.classes = classes;
        Ok(lat)
    }

    #[must_use]
    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    #[must_use]
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    /// Class representatives of the given order.
    #[must_use]
    pub fn of_order(&self, m: usize) -> Vec<&SubgroupClass> {
        self.classes.iter().filter(|c| c.order == m).collect()
    }

    /// The representative as a permutation group.
    #[must_use]
    pub fn group(&self, c: &SubgroupClass) -> GenGroup {
        let gens = c.generators.iter().map(|&i| self.table.element(i).clone()).collect();
        GenGroup::new(self.degree, gens).expect("consistent degree")
    }

    /// Class index of an arbitrary subgroup given by sorted element indices.
    #[must_use]
    pub fn class_index(&self, elements: &[u32]) -> Option<usize> {
        self.class_of.get(&set_hash(elements)).copied()
    }

    fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = HashSet::new();
        let id = self.table.identity();
        seen.insert(id);
        let mut list = vec![id];
        let mut head = 0;
        while head < list.len() {
            for &s in gens {
                let y = self.table.mul(list[head], s);
                if seen.insert(y) {
                    list.push(y);
                }
            }
            head += 1;
        }
        list.sort_unstable();
        list
    }

    /// Registers a new class unless some conjugate is known; returns its index if new.
    fn register(&mut self, mut elements: Vec<u32>, generators: Vec<u32>) -> Option<usize> {
        elements.sort_unstable();
        if !self.allowed.contains(&elements.len()) {
            return None;
        }
        let h = set_hash(&elements);
        if self.class_of.contains_key(&h) {
            return None;
        }
        let idx = self.classes.len();
        let mut seen = HashSet::new();
        seen.insert(h);
        let mut frontier = vec![elements.clone()];
        while let Some(s) = frontier.pop() {
            for &g in &self.group_gens {
                let mut img: Vec<u32> = s.iter().map(|&x| self.table.conj(x, g)).collect();
                img.sort_unstable();
                let hh = set_hash(&img);
                if seen.insert(hh) {
                    frontier.push(img);
                }
            }
        }
        let class_size = seen.len();
        for hh in seen {
            self.class_of.insert(hh, idx);
        }
        self.classes.push(SubgroupClass {
            order: elements.len(),
            elements,
            generators,
            class_size,
        });
        Some(idx)
    }

    fn normalizer(&self, c: &SubgroupClass) -> Vec<u32> {
        let n = self.table.len();
        let mut member = vec![false; n];
        for &x in &c.elements {
            member[x as usize] = true;
        }
        (0..n as u32)
            .filter(|&g| {
                c.generators
                    .iter()
                    .all(|&u| member[self.table.conj(u, g) as usize])
            })
            .collect()
    }

    fn extensions(&mut self, ci: usize) -> Vec<usize> {
        let c = self.classes[ci].clone();
        let n = self.table.len();
        let mut member = vec![false; n];
        for &x in &c.elements {
            member[x as usize] = true;
        }
        let norm = self.normalizer(&c);
        if norm.len() == c.order {
            return Vec::new();
        }
        let mut covered = vec![false; n];
        let mut new = Vec::new();
        for g in norm {
            if member[g as usize] || covered[g as usize] {
                continue;
            }
            // order of g modulo U
            let mut k = 1u64;
            let mut y = g;
            while !member[y as usize] {
                y = self.table.mul(y, g);
                k += 1;
            }
            if factorize(k).len() != 1 || factorize(k)[0].1 != 1 {
                continue;
            }
            if !self.allowed.contains(&(c.order * k as usize)) {
                continue;
            }
            let mut w = c.elements.clone();
            let mut gi = g;
            for _ in 1..k {
                w.extend(c.elements.iter().map(|&u| self.table.mul(u, gi)));
                gi = self.table.mul(gi, g);
            }
            for &x in &w {
                covered[x as usize] = true;
            }
            let mut gens = c.generators.clone();
            gens.push(g);
            if let Some(idx) = self.register(w, gens) {
                new.push(idx);
            }
        }
        new
    }
}

/// Perfect subgroups of a group between PSL(2,q) and PΓL(2,q), up to conjugacy in the socle:
/// A5 classes (by a (2,3)-scan through a fixed involution), subfield PSL(2,q0) for q0 ≥ 7 and
/// their diagonal conjugates, and the socle. The trivial group is implicit.
pub fn perfect_subgroups(x: &LinearGroup) -> Result<Vec<GenGroup>> {
    let socle = x.socle();
    let psl_order = x.spec.psl_order();
    let cat = Catalog::new(&socle);
    let mut out = Vec::new();
    if psl_order % 60 == 0 && psl_order > 60 {
        out.extend(a5_subgroups(&socle)?);
    }
    let delta = (x.spec.e() == 2).then(|| x.perm(&x.outer_element(1, 0)));
    for (tag, order) in cat.types() {
        if let SubgroupTag::SubfieldPSL(q0) = tag {
            if q0 < 7 || order == 60 {
                continue;
            }
            let r = cat.build(tag)?;
            if let Some(d) = &delta {
                let gens = r.generators().iter().map(|g| g.conjugate_by(d)).collect();
                out.push(GenGroup::new(r.degree(), gens)?);
            }
            out.push(r);
        }
    }
    out.push(socle.group.clone());
    Ok(out)
}

/// Every A5 in PSL(2,q) up to conjugacy contains the first involution `t` of the scan, so
/// closing `<t, s>` over all elements `s` of order 3 finds them all.
fn a5_subgroups(socle: &LinearGroup) -> Result<Vec<GenGroup>> {
    let g = &socle.group;
    let els = g.elements(u64::MAX)?;
    let t = els
        .iter()
        .filter(|e| e.order() == 2)
        .min()
        .cloned()
        .ok_or_else(|| Error::ConstructionFailed("no involution".into()))?;
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut out = Vec::new();
    let mut threes: Vec<&Perm> = els.iter().filter(|e| e.order() == 3).collect();
    threes.sort();
    for s in threes {
        let ts = t.then(s);
        if ts.order() != 5 {
            continue;
        }
        let h = GenGroup::new(g.degree(), vec![t.clone(), s.clone()])?;
        if h.order() != 60 {
            continue;
        }
        let mut key = h.elements(60)?;
        key.sort();
        if seen.insert(key) {
            out.push(h);
        }
    }
    Ok(out)
}

/// How candidate subgroups are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Dickson types in the socle, their diagonal conjugates, and extensions by outer elements.
    Catalog,
    /// Full cyclic-extension enumeration up to conjugacy.
    Exhaustive,
}

/// Subgroups of order `m` of `x`.
pub fn enumerate_subgroups_of_order(x: &LinearGroup, m: u64, strategy: Strategy, bounds: &Bounds) -> Result<Vec<GenGroup>> {
    if x.spec.order() % m != 0 {
        return Ok(Vec::new());
    }
    match strategy {
        Strategy::Exhaustive => {
            let perfect = perfect_subgroups(x)?;
            let lat = Lattice::build(&x.group, &perfect, Some(&[m]), bounds)?;
            Ok(lat.of_order(m as usize).into_iter().map(|c| lat.group(c)).collect())
        }
        Strategy::Catalog => catalog_subgroups(x, m, bounds),
    }
}

fn catalog_subgroups(x: &LinearGroup, m: u64, bounds: &Bounds) -> Result<Vec<GenGroup>> {
    let socle = x.socle();
    let cat = Catalog::new(&socle);
    let delta = (x.spec.e() == 2).then(|| x.perm(&x.outer_element(1, 0)));
    let outer: Vec<Perm> = x
        .spec
        .outer
        .elements
        .iter()
        .filter(|&&o| o != (0, 0))
        .map(|&(a, b)| x.perm(&x.outer_element(a, b)))
        .collect();
    let mut reps: Vec<GenGroup> = Vec::new();
    let push = |reps: &mut Vec<GenGroup>, r: GenGroup| {
        if !reps.iter().any(|s| s.order() == r.order() && s.contains_group(&r)) {
            reps.push(r);
        }
    };
    for d in divisors(u64::from(x.spec.outer.order())) {
        if m % d != 0 {
            continue;
        }
        for entry in cat.dickson_subgroups(m / d)? {
            let mut bases = vec![entry.group.clone()];
            if let Some(dl) = &delta {
                let gens = entry.group.generators().iter().map(|g| g.conjugate_by(dl)).collect();
                let conj = GenGroup::new(entry.group.degree(), gens)?;
                if !entry.group.contains_group(&conj) {
                    bases.push(conj);
                }
            }
            for r in bases {
                if d == 1 {
                    push(&mut reps, r);
                    continue;
                }
                // elements of N(r) outside the socle; the fixed outer generators when the
                // normalizer is out of reach
                let extenders: Vec<Perm> = match normalizer_in(&x.group, &r, bounds) {
                    Ok(n) => n
                        .elements(bounds.max_elements)?
                        .into_iter()
                        .filter(|y| !socle.group.chain().contains(y))
                        .collect(),
                    Err(Error::BoundExceeded { .. }) => outer.clone(),
                    Err(e) => return Err(e),
                };
                for y in &extenders {
                    let ext = r.join(std::slice::from_ref(y))?;
                    if ext.order() == u128::from(m) {
                        push(&mut reps, ext);
                    }
                }
            }
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::build_group_str;

    fn class_orders(spec: &str) -> Vec<usize> {
        let x = build_group_str(spec).unwrap();
        let perfect = perfect_subgroups(&x).unwrap();
        let lat = Lattice::build(&x.group, &perfect, None, &Bounds::default()).unwrap();
        lat.classes().iter().map(|c| c.order).collect()
    }

    #[test]
    fn a5_has_nine_classes() {
        // 1, 2, 3, 4 (V4), 5, 6 (S3), 10 (D10), 12 (A4), 60
        assert_eq!(class_orders("PSL(2,4)"), vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
    }

    #[test]
    fn psl27_has_fifteen_classes() {
        assert_eq!(class_orders("PSL(2,7)").len(), 15);
    }

    #[test]
    fn class_sizes_sum_to_subgroup_count() {
        // S5 has 156 subgroups in 19 classes
        let x = build_group_str("PGammaL(2,4)").unwrap();
        let perfect = perfect_subgroups(&x).unwrap();
        let lat = Lattice::build(&x.group, &perfect, None, &Bounds::default()).unwrap();
        assert_eq!(lat.classes().len(), 19);
        assert_eq!(lat.classes().iter().map(|c| c.class_size).sum::<usize>(), 156);
    }

    #[test]
    fn element_table_multiplication() {
        let x = build_group_str("PSL(2,7)").unwrap();
        let t = ElementTable::new(&x.group, 1000).unwrap();
        assert_eq!(t.len(), 168);
        for i in (0..168).step_by(7) {
            for j in (0..168).step_by(11) {
                let p = t.element(i).then(t.element(j));
                assert_eq!(t.mul(i, j), t.index_of(&p).unwrap());
            }
            assert_eq!(t.mul(i, t.inverse(i)), t.identity());
        }
    }

    #[test]
    fn order_twelve_in_psl211() {
        let x = build_group_str("PSL(2,11)").unwrap();
        let subs = enumerate_subgroups_of_order(&x, 12, Strategy::Exhaustive, &Bounds::default()).unwrap();
        // one class each of A4 and D12
        let mut profiles: Vec<usize> = subs
            .iter()
            .map(|s| s.elements(12).unwrap().iter().filter(|e| e.order() == 2).count())
            .collect();
        profiles.sort_unstable();
        assert_eq!(profiles, vec![3, 7]);
    }

    #[test]
    fn order_eight_in_pgl27() {
        // Sylow-2 of PGL(2,7) is D16: order-8 classes are C8 and two classes of D8
        let x = build_group_str("PGL(2,7)").unwrap();
        let subs = enumerate_subgroups_of_order(&x, 8, Strategy::Exhaustive, &Bounds::default()).unwrap();
        let mut invols: Vec<usize> = subs
            .iter()
            .map(|s| s.elements(8).unwrap().iter().filter(|e| e.order() == 2).count())
            .collect();
        invols.sort_unstable();
        assert_eq!(invols, vec![1, 5, 5]);
    }
}
