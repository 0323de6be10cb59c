//! Property checks shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use flagdesign::arith::prime_power;
use flagdesign::design::{complement, coset_geometry, orbit_design, verify_2design, IncidenceStructure};
use flagdesign::field::FieldSpec;
use flagdesign::group::{Bounds, GenGroup};
use flagdesign::perm::Perm;
use flagdesign::projline::all_baer_sublines;
use flagdesign::psl2::{build_group_str, Catalog, SubgroupTag};

pub type Check = Result<(), String>;

pub fn prime_powers_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&q| prime_power(q).is_some()).collect()
}

/// `a^q = a` for every element, and the field axioms on the given samples.
pub fn field_laws(q: u64, samples: &[(u32, u32, u32)]) -> Check {
    let k = FieldSpec::from_order(q).map_err(|e| e.to_string())?;
    for a in k.elements() {
        if k.pow(a, q) != a {
            return Err(format!("GF({q}): {a}^q != {a}"));
        }
    }
    let (zero, one) = (k.from_int(0), k.from_int(1));
    let n = k.q();
    for &(a, b, c) in samples {
        let (a, b, c) = (a % n, b % n, c % n);
        let ok = k.add(a, b) == k.add(b, a)
            && k.mul(a, b) == k.mul(b, a)
            && k.add(k.add(a, b), c) == k.add(a, k.add(b, c))
            && k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c))
            && k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
            && k.add(a, zero) == a
            && k.mul(a, one) == a
            && k.add(a, k.neg(a)) == zero
            && (a == zero || k.mul(a, k.inv(a).unwrap()) == one);
        if !ok {
            return Err(format!("GF({q}): axioms fail at ({a},{b},{c})"));
        }
    }
    Ok(())
}

/// Closure of the generators by breadth-first search.
pub fn brute_force_order(n: usize, gens: &[Perm]) -> usize {
    let id = Perm::identity(n);
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.images().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.images().to_vec()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

pub fn bsgs_order(n: usize, gens: &[Perm]) -> Check {
    let g = GenGroup::new(n, gens.to_vec()).map_err(|e| e.to_string())?;
    let brute = brute_force_order(n, gens);
    if g.order() == brute as u128 {
        Ok(())
    } else {
        Err(format!("BSGS order {} but closure has {brute} elements", g.order()))
    }
}

/// Each 3-subset of PG(1,q) lies in exactly one Baer subline.
pub fn baer_uniqueness(q: u64) -> Check {
    let k = FieldSpec::from_order(q).map_err(|e| e.to_string())?;
    let lines = all_baer_sublines(&k).map_err(|e| e.to_string())?;
    let n = q as usize + 1;
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut count = vec![0u32; n * n * n];
    for l in &lines {
        for (i, &a) in l.iter().enumerate() {
            for (j, &b) in l.iter().enumerate().skip(i + 1) {
                for &c in &l[j + 1..] {
                    count[idx(a as usize, b as usize, c as usize)] += 1;
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let m = count[idx(a, b, c)];
                if m != 1 {
                    return Err(format!("q={q}: {{{a},{b},{c}}} lies in {m} sublines"));
                }
            }
        }
    }
    Ok(())
}

/// λ if every pair of points lies in the same number of blocks, counted block by block.
pub fn pair_count_oracle(d: &IncidenceStructure) -> Option<u64> {
    let k = d.blocks.first()?.len();
    if d.blocks.iter().any(|b| b.len() != k) {
        return None;
    }
    let sets: Vec<HashSet<u32>> = d.blocks.iter().map(|b| b.iter().copied().collect()).collect();
    let mut lambda = None;
    for x in 0..d.v as u32 {
        for y in x + 1..d.v as u32 {
            let c = sets.iter().filter(|s| s.contains(&x) && s.contains(&y)).count() as u64;
            match lambda {
                None => lambda = Some(c),
                Some(l) if l != c => return None,
                _ => {}
            }
        }
    }
    lambda.filter(|&l| l > 0)
}

/// The orbit structure of `base` under `gens` is a 2-design exactly when the oracle says so.
pub fn verify_agrees_with_oracle(n: usize, gens: &[Perm], base: &[u32]) -> Check {
    let g = GenGroup::new(n, gens.to_vec()).map_err(|e| e.to_string())?;
    let d = orbit_design(&g, base).map_err(|e| e.to_string())?;
    let fast = verify_2design(&d).ok().map(|p| p.lambda);
    let slow = pair_count_oracle(&d);
    if fast == slow {
        Ok(())
    } else {
        Err(format!("verify_2design {fast:?}, oracle {slow:?} on {d:?}"))
    }
}

pub fn complement_involution(d: &IncidenceStructure) -> Check {
    if complement(&complement(d)) == *d {
        Ok(())
    } else {
        Err(format!("complement is not an involution on {d:?}"))
    }
}

/// `|flags| = |G| / |P ∩ Q|` for the coset geometry of `P` and `Q^c` in PSL(2,q).
pub fn coset_flag_count(group: &str, p: SubgroupTag, q: SubgroupTag, c: usize) -> Check {
    let x = build_group_str(group).map_err(|e| e.to_string())?;
    let cat = Catalog::new(&x);
    let bounds = Bounds::default();
    let p = cat.build(p).map_err(|e| e.to_string())?;
    let q0 = cat.build(q).map_err(|e| e.to_string())?;
    let elements = x.group.elements(bounds.max_elements).map_err(|e| e.to_string())?;
    let g = &elements[c % elements.len()];
    let q = GenGroup::new(x.degree(), q0.generators().iter().map(|s| s.conjugate_by(g)).collect())
        .map_err(|e| e.to_string())?;
    let meet = p
        .elements(bounds.max_elements)
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|e| q.chain().contains(e))
        .count() as u128;
    let d = coset_geometry(&x.group, &p, &q, &bounds).map_err(|e| e.to_string())?;
    let flags: u128 = d.blocks.iter().map(|b| b.len() as u128).sum();
    if flags == x.group.order() / meet {
        Ok(())
    } else {
        Err(format!("{group}: {flags} flags, |G|/|P∩Q| = {}", x.group.order() / meet))
    }
}

pub const COSET_PAIRS: [(&str, SubgroupTag, SubgroupTag); 6] = [
    ("PSL(2,5)", SubgroupTag::A4, SubgroupTag::DihedralMinus),
    ("PSL(2,7)", SubgroupTag::S4, SubgroupTag::Borel),
    ("PSL(2,8)", SubgroupTag::DihedralPlus, SubgroupTag::DihedralMinus),
    ("PSL(2,9)", SubgroupTag::A5, SubgroupTag::Borel),
    ("PSL(2,11)", SubgroupTag::A5, SubgroupTag::DihedralPlus),
    ("PSL(2,11)", SubgroupTag::Borel, SubgroupTag::A4),
];

pub fn perm_from_seq(n: usize, seq: &[usize]) -> Perm {
    // Lehmer-style decoding of arbitrary indices into a permutation
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut images = Vec::with_capacity(n);
    for (i, &s) in seq.iter().take(n).enumerate() {
        images.push(pool.remove(s % (n - i)));
    }
    images.extend(pool);
    Perm::from_images(images).expect("a permutation")
}
