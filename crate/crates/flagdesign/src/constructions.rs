//! The flag-transitive 2-(v,k,3) designs with socle PSL(2,q), and the Baer-subline family.

use crate::arith::binomial;
use crate::design::{complement, orbit_design, paley_design, verify_2design, IncidenceStructure};
use crate::error::{Error, Result};
use crate::group::{coset_action, Bounds, GenGroup};
use crate::perm::Perm;
use crate::projline::standard_subline;
use crate::psl2::{build_group, build_group_str, normalizer_in, Catalog, GroupSpec, SubgroupTag};

/// All `k`-subsets of `v` points.
pub fn complete_design(v: usize, k: usize) -> Result<IncidenceStructure> {
    if k <= 2 || k + 1 >= v {
        return Err(Error::InvalidK { v, k });
    }
    let mut blocks = Vec::with_capacity(binomial(v as u64, k as u64) as usize);
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        blocks.push(cur.clone());
        // next combination in lexicographic order
        let mut i = k;
        while i > 0 && cur[i - 1] as usize == v - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    IncidenceStructure::new(v, blocks)
}

/// Intermediate data of the PSL(2,11) degree-11 construction.
#[derive(Debug, Clone)]
pub struct Example1 {
    pub design: IncidenceStructure,
    /// PSL(2,11) acting on the cosets of an A5.
    pub group: GenGroup,
    pub sylow3: GenGroup,
    pub normalizer: GenGroup,
    pub sylow3_fixed_points: Vec<u32>,
    pub sylow3_orbits: Vec<Vec<u32>>,
    /// Length-3 orbits of the Sylow-3 subgroup preserved by its normalizer.
    pub invariant_orbits: Vec<Vec<u32>>,
}

/// PSL(2,11) on the 11 cosets of A5, as a permutation group of degree 11.
pub fn psl2_11_on_11_points() -> Result<(GenGroup, crate::group::CosetTable)> {
    let x = build_group_str("PSL(2,11)")?;
    let a5 = Catalog::new(&x).build(SubgroupTag::A5)?;
    coset_action(&x.group, &a5, &Bounds::default())
}

/// The 2-(11,3,3) design: base block is the length-3 orbit of a Sylow-3 subgroup `C`
/// that `N(C)` preserves.
pub fn example1_details() -> Result<Example1> {
    let x = build_group_str("PSL(2,11)")?;
    let c3 = Catalog::new(&x).build(SubgroupTag::Cyclic(3))?;
    let (group, table) = psl2_11_on_11_points()?;
    let sylow3 = GenGroup::new(11, c3.generators().iter().map(|g| table.act(g)).collect())?;
    let normalizer = normalizer_in(&group, &sylow3, &Bounds::default())?;
    let sylow3_orbits = sylow3.orbits();
    let sylow3_fixed_points = sylow3.fixed_points();
    let invariant_orbits: Vec<Vec<u32>> = sylow3_orbits
        .iter()
        .filter(|o| o.len() == 3)
        .filter(|o| normalizer.generators().iter().all(|n| &n.image_of_set(o) == *o))
        .cloned()
        .collect();
    if invariant_orbits.len() != 1 {
        return Err(Error::ConstructionFailed(format!(
            "expected one N(C)-invariant orbit of length 3, found {}",
            invariant_orbits.len()
        )));
    }
    let design = orbit_design(&group, &invariant_orbits[0])?;
    Ok(Example1 {
        design,
        group,
        sylow3,
        normalizer,
        sylow3_fixed_points,
        sylow3_orbits,
        invariant_orbits,
    })
}

pub fn example1_psl2_11() -> Result<(IncidenceStructure, GenGroup)> {
    let e = example1_details()?;
    Ok((e.design, e.group))
}

/// Coset geometry of PSL(2,11) with `P = A5` and `Q` a conjugate of `D12` meeting `P`
/// in a subgroup of order `intersection`.
pub fn example1_coset_geometry(intersection: u128) -> Result<IncidenceStructure> {
    let x = build_group_str("PSL(2,11)")?;
    let cat = Catalog::new(&x);
    let p = cat.build(SubgroupTag::A5)?;
    let d12 = cat.build(SubgroupTag::DihedralPlus)?;
    let bounds = Bounds::default();
    let p_elements = p.elements(bounds.max_elements)?;
    for g in x.group.elements(bounds.max_elements)? {
        let q = GenGroup::new(x.degree(), d12.generators().iter().map(|s| s.conjugate_by(&g)).collect())?;
        let meet = p_elements.iter().filter(|e| q.chain().contains(e)).count() as u128;
        if meet == intersection {
            return crate::design::coset_geometry(&x.group, &p, &q, &bounds);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no conjugate of D12 meets A5 in order {intersection}"
    )))
}

/// Blocks are the PSL(2,q)-orbit of the standard subline PG(1,√q).
pub fn example2_baer(q: u64) -> Result<(IncidenceStructure, GenGroup)> {
    let x = build_group(&GroupSpec::psl(q)?)?;
    let base = standard_subline(&x.field)?;
    let d = orbit_design(&x.group, &base)?;
    Ok((d, x.group))
}

/// A relabeling of PG(1,7) (index order) onto GF(2)^3 (integer encoding) carrying the
/// PSL(2,7)-orbit of `{∞,0,1,3}` onto the affine planes; found by search and frozen.
pub const AG32_RELABEL: [u32; 8] = [0, 1, 2, 4, 3, 6, 7, 5];

/// Base block `{∞,0,1,3}` on PG(1,7) for the PSL(2,7) design.
pub const AG32_PG17_BASE: [u32; 4] = [0, 1, 2, 4];

/// AG(3,2) on GF(2)^3 with PSL(2,7) acting through [`AG32_RELABEL`].
pub fn ag32_design() -> Result<(IncidenceStructure, GenGroup)> {
    let mut blocks = Vec::new();
    for a in 1u32..8 {
        for c in 0..2 {
            blocks.push((0u32..8).filter(|&x| (x & a).count_ones() % 2 == c).collect());
        }
    }
    let d = IncidenceStructure::new(8, blocks)?;
    let x = build_group_str("PSL(2,7)")?;
    let relabel = Perm::from_images(AG32_RELABEL.to_vec())?;
    let gens = x
        .group
        .generators()
        .iter()
        .map(|g| g.conjugate_by(&relabel))
        .collect();
    Ok((d, GenGroup::new(8, gens)?))
}

/// An element fixing 0 and 1 that preserves the Paley 2-(11,5,2) design; found by
/// backtracking and frozen.
pub const PALEY11_EXTRA: [u32; 11] = [0, 1, 5, 3, 7, 2, 8, 4, 6, 10, 9];

/// PSL(2,11) on Z/11 generated by `x+1`, `3x` and [`PALEY11_EXTRA`].
pub fn psl2_11_on_z11() -> Result<GenGroup> {
    let shift = Perm::from_images((0..11).map(|x| (x + 1) % 11).collect())?;
    let times3 = Perm::from_images((0..11).map(|x| 3 * x % 11).collect())?;
    let extra = Perm::from_images(PALEY11_EXTRA.to_vec())?;
    GenGroup::new(11, vec![shift, times3, extra])
}

/// Complement of the Paley 2-(11,5,2) design.
pub fn paley_complement_11() -> Result<(IncidenceStructure, GenGroup)> {
    let d = complement(&paley_design(11)?);
    Ok((d, psl2_11_on_z11()?))
}

/// Sanity check used by callers that want the stated parameters.
pub fn params_of(d: &IncidenceStructure) -> Result<(u64, u64, u64, u64, u64)> {
    let p = verify_2design(d)?;
    Ok((p.v, p.b, p.r, p.k, p.lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_designs() {
        assert_eq!(params_of(&complete_design(5, 3).unwrap()).unwrap(), (5, 10, 6, 3, 3));
        assert_eq!(params_of(&complete_design(6, 3).unwrap()).unwrap(), (6, 20, 10, 3, 4));
        assert_eq!(complete_design(4, 3), Err(Error::InvalidK { v: 4, k: 3 }));
    }

    #[test]
    fn paley_group_has_order_660() {
        assert_eq!(psl2_11_on_z11().unwrap().order(), 660);
    }
}
