//! Existence search for flag-transitive designs: point actions of degree `v`, block
//! stabilizer candidates of order `|G|/b`, base blocks among their orbits of length `k`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::design::{is_flag_transitive, orbit_design, verify_2design, Certificate, DesignJson, DesignParams, FlagCertificate, IncidenceStructure};
use crate::error::{Error, Result};
use crate::filters::{admissible_params, CandidateParams};
use crate::group::{coset_action, Bounds, CosetTable, GenGroup, GroupJson};
use crate::lattice::{enumerate_subgroups_of_order, perfect_subgroups, Lattice, Strategy};
use crate::psl2::{build_group, Catalog, GroupSpec, LinearGroup, SubgroupTag};

/// One search: a group, target parameters and how subgroups are produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTask {
    pub group: GroupSpec,
    pub params: CandidateParams,
    pub strategy: Strategy,
    pub bounds: Bounds,
}

impl SearchTask {
    #[must_use]
    pub fn new(group: GroupSpec, params: CandidateParams) -> Self {
        SearchTask {
            group,
            params,
            strategy: Strategy::Exhaustive,
            bounds: Bounds::default(),
        }
    }

    #[must_use]
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// How far a candidate got, in increasing order of progress.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    NoSubgroup,
    NoOrbitOfLengthK,
    WrongBlockOrbitSize,
    NotTwoDesign,
    DesignFound,
}

/// A design together with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundDesign {
    pub params: DesignParams,
    pub design: DesignJson,
    pub point_stabilizer_order: u64,
    pub block_stabilizer_order: u64,
    /// Orbit lengths of the block stabilizer on points, sorted.
    pub k_orbit_lengths: Vec<usize>,
    pub flag: FlagCertificate,
    /// The point action the design lives in.
    pub action: GroupJson,
}

impl FoundDesign {
    pub fn structure(&self) -> Result<IncidenceStructure> {
        self.design.structure()
    }

    /// Rebuilds the design from the base block and the action and checks it from scratch.
    pub fn reverify(&self) -> Result<DesignParams> {
        let g = GenGroup::new(self.action.degree, self.action.generators.clone())?;
        let base = &self
            .design
            .certificate
            .as_ref()
            .ok_or_else(|| Error::ConstructionFailed("missing certificate".into()))?
            .base_block;
        let d = orbit_design(&g, base)?;
        if d.blocks != self.design.blocks {
            return Err(Error::ConstructionFailed("block list differs from the base-block orbit".into()));
        }
        let p = verify_2design(&d)?;
        let (ft, _) = is_flag_transitive(&g, &d);
        if !ft {
            return Err(Error::ConstructionFailed("not flag-transitive".into()));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    DesignFound(Box<FoundDesign>),
    NoSubgroup,
    NoOrbitOfLengthK,
    WrongBlockOrbitSize,
    NotTwoDesign,
    BNotDividingOrder,
}

impl Outcome {
    #[must_use]
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::DesignFound(_) => "design",
            Outcome::NoSubgroup => "no subgroup",
            Outcome::NoOrbitOfLengthK => "no orbit of length k",
            Outcome::WrongBlockOrbitSize => "wrong block-orbit size",
            Outcome::NotTwoDesign => "not a 2-design",
            Outcome::BNotDividingOrder => "b does not divide |G|",
        }
    }

    #[must_use]
    pub fn is_design(&self) -> bool {
        matches!(self, Outcome::DesignFound(_))
    }

    fn from_stage(stage: Stage) -> Self {
        match stage {
            Stage::NoSubgroup => Outcome::NoSubgroup,
            Stage::NoOrbitOfLengthK => Outcome::NoOrbitOfLengthK,
            Stage::WrongBlockOrbitSize => Outcome::WrongBlockOrbitSize,
            Stage::NotTwoDesign | Stage::DesignFound => Outcome::NotTwoDesign,
        }
    }
}

/// A length-`k` orbit tried as a base block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTry {
    pub block: Vec<u32>,
    pub block_orbit_size: usize,
    pub stage: Stage,
}

/// One (point action, block-stabilizer candidate) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub point_action: usize,
    pub candidate: usize,
    pub candidate_order: u64,
    pub orbit_lengths: Vec<usize>,
    pub tried: Vec<BlockTry>,
    pub stage: Stage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchVerdict {
    pub group: String,
    pub params: CandidateParams,
    pub outcome: Outcome,
    /// Orders of the point stabilizers of the primitive actions of degree `v` examined.
    pub point_stabilizers: Vec<u64>,
    pub candidates: usize,
    /// Why the candidate list is complete, or what it covers.
    pub completeness: String,
    pub trace: Vec<TraceEntry>,
}

/// A faithful primitive action of `G` on the cosets of `stabilizer`.
#[derive(Debug, Clone)]
pub struct PointAction {
    pub stabilizer: GenGroup,
    pub action: GenGroup,
    pub table: CosetTable,
}

/// Keeps the stabilizers that give faithful primitive actions.
pub fn point_actions(g: &GenGroup, stabilizers: &[GenGroup], bounds: &Bounds) -> Result<Vec<PointAction>> {
    let mut out = Vec::new();
    for h in stabilizers {
        let (action, table) = coset_action(g, h, bounds)?;
        if action.order() != g.order() || !action.is_primitive()?.primitive {
            continue;
        }
        out.push(PointAction {
            stabilizer: h.clone(),
            action,
            table,
        });
    }
    Ok(out)
}

/// Tries every length-`k` orbit of `k_group` (acting through `pa`) as a base block.
fn examine(pa: &PointAction, k_group: &GenGroup, params: &CandidateParams) -> Result<(Stage, Vec<usize>, Vec<BlockTry>, Option<FoundDesign>)> {
    let v = pa.action.degree();
    let kimg = GenGroup::new(v, k_group.generators().iter().map(|s| pa.table.act(s)).collect())?;
    let orbits = kimg.orbits();
    let mut lengths: Vec<usize> = orbits.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    let mut stage = Stage::NoOrbitOfLengthK;
    let mut tried = Vec::new();
    let mut found = None;
    let b = params.b as usize;
    for o in orbits.iter().filter(|o| o.len() as u64 == params.k) {
        let blocks = match pa.action.set_orbit(o, b + 1) {
            Ok(blocks) => blocks,
            Err(Error::BoundExceeded { .. }) => {
                tried.push(BlockTry {
                    block: o.clone(),
                    block_orbit_size: b + 1,
                    stage: Stage::WrongBlockOrbitSize,
                });
                stage = stage.max(Stage::WrongBlockOrbitSize);
                continue;
            }
            Err(e) => return Err(e),
        };
        let size = blocks.len();
        let mut s = Stage::WrongBlockOrbitSize;
        if size == b {
            let d = IncidenceStructure::new(v, blocks)?;
            s = Stage::NotTwoDesign;
            if let Ok(p) = verify_2design(&d) {
                if p.lambda == params.lambda && p.k == params.k && p.r == params.r {
                    let (ft, flag) = is_flag_transitive(&pa.action, &d);
                    if ft {
                        s = Stage::DesignFound;
                        if found.is_none() {
                            let mut json = DesignJson::from_design(&d);
                            json.certificate = Some(Certificate {
                                group: String::new(),
                                base_block: o.clone(),
                                flag_orbit_size: flag.orbit_size,
                            });
                            found = Some(FoundDesign {
                                params: p,
                                design: json,
                                point_stabilizer_order: pa.stabilizer.order() as u64,
                                block_stabilizer_order: k_group.order() as u64,
                                k_orbit_lengths: lengths.clone(),
                                flag,
                                action: pa.action.to_json(),
                            });
                        }
                    }
                }
            }
        }
        tried.push(BlockTry {
            block: o.clone(),
            block_orbit_size: size,
            stage: s,
        });
        stage = stage.max(s);
    }
    Ok((stage, lengths, tried, found))
}

/// Runs every (point action, candidate) pair and folds the results.
fn search_pairs(
    group_name: &str,
    params: &CandidateParams,
    actions: &[PointAction],
    candidates: &[GenGroup],
    completeness: String,
) -> Result<SearchVerdict> {
    let pairs: Vec<(usize, usize)> = (0..actions.len())
        .flat_map(|a| (0..candidates.len()).map(move |c| (a, c)))
        .collect();
    let results: Vec<Result<(TraceEntry, Option<FoundDesign>)>> = pairs
        .par_iter()
        .map(|&(a, c)| {
            let (stage, orbit_lengths, tried, found) = examine(&actions[a], &candidates[c], params)?;
            Ok((
                TraceEntry {
                    point_action: a,
                    candidate: c,
                    candidate_order: candidates[c].order() as u64,
                    orbit_lengths,
                    tried,
                    stage,
                },
                found,
            ))
        })
        .collect();
    let mut trace = Vec::new();
    let mut first = None;
    let mut best = Stage::NoSubgroup;
    for r in results {
        let (t, found) = r?;
        best = best.max(t.stage);
        if first.is_none() {
            first = found;
        }
        trace.push(t);
    }
    let outcome = match first {
        Some(mut f) => {
            if let Some(c) = f.design.certificate.as_mut() {
                c.group = group_name.to_string();
            }
            Outcome::DesignFound(Box::new(f))
        }
        None => Outcome::from_stage(best),
    };
    Ok(SearchVerdict {
        group: group_name.to_string(),
        params: *params,
        outcome,
        point_stabilizers: actions.iter().map(|a| a.stabilizer.order() as u64).collect(),
        candidates: candidates.len(),
        completeness,
        trace,
    })
}

fn b_fails(spec: &GroupSpec, params: &CandidateParams) -> Option<SearchVerdict> {
    (spec.order() % params.b != 0).then(|| SearchVerdict {
        group: spec.to_string(),
        params: *params,
        outcome: Outcome::BNotDividingOrder,
        point_stabilizers: Vec::new(),
        candidates: 0,
        completeness: format!("b = {} does not divide |G| = {}", params.b, spec.order()),
        trace: Vec::new(),
    })
}

/// Subgroups of each requested order, from one lattice (exhaustive) or from the catalog.
fn subgroups_of_orders(x: &LinearGroup, orders: &[u64], strategy: Strategy, bounds: &Bounds) -> Result<Vec<Vec<GenGroup>>> {
    match strategy {
        Strategy::Exhaustive => {
            let lat = Lattice::build(&x.group, &perfect_subgroups(x)?, Some(orders), bounds)?;
            Ok(orders
                .iter()
                .map(|&m| lat.of_order(m as usize).into_iter().map(|c| lat.group(c)).collect())
                .collect())
        }
        Strategy::Catalog => orders
            .iter()
            .map(|&m| enumerate_subgroups_of_order(x, m, Strategy::Catalog, bounds))
            .collect(),
    }
}

fn completeness_note(strategy: Strategy) -> String {
    match strategy {
        Strategy::Exhaustive => "exhaustive: every conjugacy class of subgroups of the required orders".into(),
        Strategy::Catalog => {
            "catalog: Dickson representatives in the socle and their extensions by outer elements".into()
        }
    }
}

/// Searches `task.group` for a flag-transitive design with `task.params`, over every
/// primitive action of degree `v` and every block-stabilizer candidate of order `|G|/b`.
pub fn base_block_search(task: &SearchTask) -> Result<SearchVerdict> {
    let spec = &task.group;
    let p = &task.params;
    if let Some(v) = b_fails(spec, p) {
        return Ok(v);
    }
    let n = spec.order();
    let name = spec.to_string();
    if n % p.v != 0 {
        return Ok(SearchVerdict {
            group: name,
            params: *p,
            outcome: Outcome::NoSubgroup,
            point_stabilizers: Vec::new(),
            candidates: 0,
            completeness: format!("v = {} does not divide |G| = {}", p.v, n),
            trace: Vec::new(),
        });
    }
    let x = build_group(spec)?;
    let orders = [n / p.v, n / p.b];
    let subs = subgroups_of_orders(&x, &orders, task.strategy, &task.bounds)?;
    let actions = point_actions(&x.group, &subs[0], &task.bounds)?;
    let mut note = completeness_note(task.strategy);
    if actions.is_empty() {
        note.push_str("; no primitive action of this degree");
    }
    search_pairs(&name, p, &actions, &subs[1], note)
}

/// One `(design, groups)` line of the classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedDesign {
    pub params: DesignParams,
    pub q: u64,
    pub groups: Vec<String>,
    /// The first design found for this line.
    pub design: FoundDesign,
}

/// Outcome of every task run for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub group: String,
    pub order: u64,
    pub strategy: Strategy,
    pub tasks: Vec<(CandidateParams, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub q_max: u64,
    pub results: Vec<ClassifiedDesign>,
    pub groups: Vec<GroupSummary>,
}

impl ClassifyReport {
    /// `(2-(v,k,λ), groups)` pairs.
    #[must_use]
    pub fn lines(&self) -> Vec<(String, Vec<String>)> {
        self.results.iter().map(|r| (r.params.short(), r.groups.clone())).collect()
    }
}

/// Names under which isomorphic groups are reported; `PSL(2,5) ≅ PSL(2,4)` and
/// `PGL(2,5) ≅ PΓL(2,4)`.
fn canonical_name(spec: &GroupSpec) -> (u64, String) {
    let name = spec.to_string();
    match name.as_str() {
        "PSL(2,5)" => (4, "PSL(2,4)".into()),
        "PGL(2,5)" => (4, "PGammaL(2,4)".into()),
        _ => (u64::from(spec.q), name),
    }
}

/// Arithmetic prefilter: point-stabilizer orders `d` with admissible parameters for
/// `v = |G|/d` satisfying `r | d`, `r² > 3v` and `b | |G|`.
#[must_use]
pub fn prefilter(order: u64) -> Vec<(u64, Vec<CandidateParams>)> {
    let mut out = Vec::new();
    for d in divisors(order) {
        let v = order / d;
        if v < 5 {
            continue;
        }
        let cands: Vec<CandidateParams> = admissible_params(v, 3)
            .into_iter()
            .filter(|c| d % c.r == 0 && c.r_squared_ok() && order % c.b == 0)
            .collect();
        if !cands.is_empty() {
            out.push((d, cands));
        }
    }
    out
}

/// All tasks for one group, with point actions from its subgroup lattice.
pub fn classify_group(spec: &GroupSpec, bounds: &Bounds) -> Result<(GroupSummary, Vec<SearchVerdict>)> {
    let n = spec.order();
    let pre = prefilter(n);
    let strategy = if n <= bounds.max_exhaustive {
        Strategy::Exhaustive
    } else {
        Strategy::Catalog
    };
    let mut summary = GroupSummary {
        group: spec.to_string(),
        order: n,
        strategy,
        tasks: Vec::new(),
    };
    if pre.is_empty() {
        return Ok((summary, Vec::new()));
    }
    let x = build_group(spec)?;
    let mut orders: Vec<u64> = pre.iter().map(|(d, _)| *d).collect();
    for (_, cs) in &pre {
        orders.extend(cs.iter().map(|c| n / c.b));
    }
    orders.sort_unstable();
    orders.dedup();
    let subs = subgroups_of_orders(&x, &orders, strategy, bounds)?;
    let by_order: BTreeMap<u64, &Vec<GenGroup>> = orders.iter().copied().zip(subs.iter()).collect();
    let mut verdicts = Vec::new();
    for (d, cands) in &pre {
        let actions = point_actions(&x.group, by_order[d], bounds)?;
        if actions.is_empty() {
            continue;
        }
        for c in cands {
            let v = search_pairs(&summary.group, c, &actions, by_order[&(n / c.b)], completeness_note(strategy))?;
            summary.tasks.push((*c, v.outcome.label().to_string()));
            verdicts.push(v);
        }
    }
    Ok((summary, verdicts))
}

/// Runs the full pipeline for every prime power `4 ≤ q ≤ q_max` and every group between
/// PSL(2,q) and PΓL(2,q), merging designs with equal parameters and field order.
pub fn classify_theorem_main(q_max: u64, bounds: &Bounds) -> Result<ClassifyReport> {
    let mut specs = Vec::new();
    for q in 4..=q_max {
        if crate::arith::prime_power(q).is_some() {
            specs.extend(GroupSpec::all_between(q)?);
        }
    }
    let results: Vec<Result<(GroupSummary, Vec<SearchVerdict>)>> =
        specs.par_iter().map(|s| classify_group(s, bounds)).collect();
    let mut lines: BTreeMap<(u64, u64, u64, u64), ClassifiedDesign> = BTreeMap::new();
    let mut groups = Vec::new();
    for (spec, r) in specs.iter().zip(results) {
        let (summary, verdicts) = r?;
        groups.push(summary);
        let (q, name) = canonical_name(spec);
        for v in verdicts {
            if let Outcome::DesignFound(f) = v.outcome {
                let key = (q, f.params.v, f.params.k, f.params.b);
                let line = lines.entry(key).or_insert_with(|| ClassifiedDesign {
                    params: f.params.clone(),
                    q,
                    groups: Vec::new(),
                    design: (*f).clone(),
                });
                if !line.groups.contains(&name) {
                    line.groups.push(name.clone());
                }
            }
        }
    }
    let mut results: Vec<ClassifiedDesign> = lines.into_values().collect();
    for r in &mut results {
        r.groups.sort_by_key(|g| g.parse::<GroupSpec>().map(|s| s.order()).unwrap_or(0));
    }
    Ok(ClassifyReport {
        q_max,
        results,
        groups,
    })
}

/// Bounds used by the classification sweep: exhaustive enumeration up to order 40000.
#[must_use]
pub fn classify_bounds() -> Bounds {
    Bounds {
        max_exhaustive: 40_000,
        ..Bounds::default()
    }
}

/// PSL(2,81) on the 369 cosets of PGL(2,9): fixed points of a Sylow 5-subgroup and the
/// order of its normalizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sylow5Check {
    pub degree: usize,
    pub fixed_points: Vec<u32>,
    pub normalizer_order: u64,
}

pub fn sylow5_psl2_81() -> Result<Sylow5Check> {
    let x = build_group(&GroupSpec::psl(81)?)?;
    let cat = Catalog::new(&x);
    let h = cat.build(SubgroupTag::SubfieldPGL(9))?;
    let bounds = Bounds::default();
    let (action, table) = coset_action(&x.group, &h, &bounds)?;
    let c5 = cat.build(SubgroupTag::Cyclic(5))?;
    let c5_img = GenGroup::new(action.degree(), c5.generators().iter().map(|g| table.act(g)).collect())?;
    // Sylow 5-subgroups have order 5 since |PSL(2,81)| = 2^4·3^4·5·41
    if x.spec.order() % 25 == 0 || c5_img.order() != 5 {
        return Err(Error::ConstructionFailed("unexpected Sylow 5-subgroup".into()));
    }
    let normalizer = crate::psl2::normalizer_in(&x.group, &c5, &bounds)?;
    Ok(Sylow5Check {
        degree: action.degree(),
        fixed_points: c5_img.fixed_points(),
        normalizer_order: normalizer.order() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stages_are_ordered() {
        assert!(Stage::NotTwoDesign > Stage::WrongBlockOrbitSize);
        assert!(Stage::WrongBlockOrbitSize > Stage::NoOrbitOfLengthK);
        assert!(Stage::NoOrbitOfLengthK > Stage::NoSubgroup);
    }

    #[test]
    fn prefilter_psl2_4() {
        let pre = prefilter(60);
        assert_eq!(pre.len(), 1);
        assert_eq!(pre[0].0, 12);
        assert_eq!(pre[0].1[0].tuple(), (5, 10, 6, 3));
    }
}
