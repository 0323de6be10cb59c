//! PSL(2,q) ≤ G ≤ PΓL(2,q) acting on PG(1,q), and a Dickson-style subgroup catalog.
//!
//! A group between PSL and PΓL is named by its image in
//! `Out(PSL(2,q)) = <δ> × <φ>`, where `δ: x ↦ ωx` is the diagonal automorphism
//! (order `gcd(2,q-1)`) and `φ: x ↦ x^p` the Frobenius map (order `f`).

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_power};
use crate::error::{bound, Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::group::{Bounds, GenGroup};
use crate::perm::Perm;
use crate::projline::{det, SemilinearMap};

/// A subgroup of `Out = C_e × C_f`, stored as its sorted element list `(a, b) = δ^a φ^b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OuterPart {
    pub elements: Vec<(u32, u32)>,
}

impl OuterPart {
    /// Closure of the given generators in `C_e × C_f`.
    #[must_use]
    pub fn generated(e: u32, f: u32, gens: &[(u32, u32)]) -> Self {
        let mut set = BTreeSet::new();
        set.insert((0, 0));
        let mut frontier = vec![(0u32, 0u32)];
        while let Some((a, b)) = frontier.pop() {
            for &(ga, gb) in gens {
                let x = ((a + ga) % e, (b + gb) % f);
                if set.insert(x) {
                    frontier.push(x);
                }
            }
        }
        OuterPart {
            elements: set.into_iter().collect(),
        }
    }

    #[must_use]
    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }

    #[must_use]
    pub fn contains(&self, x: (u32, u32)) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// A small generating set, chosen greedily in element order.
    #[must_use]
    pub fn generators(&self, e: u32, f: u32) -> Vec<(u32, u32)> {
        let mut gens = Vec::new();
        let mut cur = OuterPart::generated(e, f, &gens);
        for &x in &self.elements {
            if !cur.contains(x) {
                gens.push(x);
                cur = OuterPart::generated(e, f, &gens);
            }
        }
        gens
    }
}

/// `PSL(2,q).S` for a subgroup `S` of the outer automorphism group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub q: u32,
    pub outer: OuterPart,
}

impl GroupSpec {
    pub fn new(q: u64, gens: &[(u32, u32)]) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::UnsupportedQ(q))?;
        if q < 4 {
            return Err(Error::UnsupportedQ(q));
        }
        let e = if p == 2 { 1 } else { 2 };
        Ok(GroupSpec {
            q: q as u32,
            outer: OuterPart::generated(e, f, gens),
        })
    }

    pub fn psl(q: u64) -> Result<Self> {
        Self::new(q, &[])
    }
    pub fn pgl(q: u64) -> Result<Self> {
        Self::new(q, &[(1, 0)])
    }
    pub fn psigmal(q: u64) -> Result<Self> {
        Self::new(q, &[(0, 1)])
    }
    pub fn pgammal(q: u64) -> Result<Self> {
        Self::new(q, &[(1, 0), (0, 1)])
    }

    #[must_use]
    pub fn pf(&self) -> (u32, u32) {
        let (p, f) = prime_power(u64::from(self.q)).expect("validated");
        (p as u32, f)
    }

    /// `gcd(2, q-1)`.
    #[must_use]
    pub fn e(&self) -> u32 {
        if self.q % 2 == 0 {
            1
        } else {
            2
        }
    }

    #[must_use]
    pub fn psl_order(&self) -> u64 {
        let q = u64::from(self.q);
        q * (q * q - 1) / u64::from(self.e())
    }

    #[must_use]
    pub fn order(&self) -> u64 {
        self.psl_order() * u64::from(self.outer.order())
    }

    /// All groups between PSL(2,q) and PΓL(2,q), ordered by outer-part order then elements.
    pub fn all_between(q: u64) -> Result<Vec<GroupSpec>> {
        let base = Self::psl(q)?;
        let (_, f) = base.pf();
        let e = base.e();
        let mut seen = BTreeSet::new();
        for a in 0..e {
            for b in 0..f {
                for c in 0..e {
                    for d in 0..f {
                        seen.insert(OuterPart::generated(e, f, &[(a, b), (c, d)]));
                    }
                }
            }
        }
        let mut out: Vec<GroupSpec> = seen
            .into_iter()
            .map(|outer| GroupSpec { q: q as u32, outer })
            .collect();
        out.sort_by(|x, y| x.outer.order().cmp(&y.outer.order()).then(x.outer.cmp(&y.outer)));
        Ok(out)
    }

    #[must_use]
    pub fn is_psl(&self) -> bool {
        self.outer.order() == 1
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (_, f) = self.pf();
        let e = self.e();
        let q = self.q;
        let has_delta = e == 2 && self.outer.contains((1, 0));
        let all_frob = (0..f).all(|b| self.outer.contains((0, b)));
        let n = self.outer.order();
        let full = e * f;
        if n == 1 {
            return write!(fm, "PSL(2,{q})");
        }
        if has_delta && n == 2 {
            return write!(fm, "PGL(2,{q})");
        }
        if n == full {
            return write!(fm, "PGammaL(2,{q})");
        }
        if all_frob && n == f {
            return write!(fm, "PSigmaL(2,{q})");
        }
        if q == 9 && n == 2 && self.outer.contains((1, 1)) {
            return write!(fm, "M10");
        }
        let gens = self.outer.generators(e, f);
        let words: Vec<String> = gens
            .iter()
            .map(|&(a, b)| {
                let d = if a == 1 { "d" } else { "" };
                let fr = match b {
                    0 => String::new(),
                    1 => "f".into(),
                    k => format!("f^{k}"),
                };
                match (d.is_empty(), fr.is_empty()) {
                    (false, false) => format!("d*{fr}"),
                    (false, true) => d.to_string(),
                    _ => fr,
                }
            })
            .collect();
        write!(fm, "PSL(2,{q}).<{}>", words.join(","))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `PSL(2,q)`, `PGL(2,q)`, `PSigmaL(2,q)`, `PGammaL(2,q)`, `M10`, and
    /// `PSL(2,q).<w,...>` with words `d`, `f`, `f^k`, `d*f^k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "M10" {
            return GroupSpec::new(9, &[(1, 1)]);
        }
        let bad = || Error::Parse(format!("unrecognised group `{s}`"));
        let (head, ext) = match s.find(".<") {
            Some(i) => (&s[..i], Some(&s[i + 2..])),
            None => (s, None),
        };
        let open = head.find("(2,").ok_or_else(bad)?;
        let name = &head[..open];
        let q: u64 = head[open + 3..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        let mut gens: Vec<(u32, u32)> = match name {
            "PSL" => vec![],
            "PGL" => vec![(1, 0)],
            "PSigmaL" | "PΣL" => vec![(0, 1)],
            "PGammaL" | "PΓL" => vec![(1, 0), (0, 1)],
            _ => return Err(bad()),
        };
        if let Some(ext) = ext {
            let body = ext.strip_suffix('>').ok_or_else(bad)?;
            for w in body.split(',').map(str::trim).filter(|w| !w.is_empty()) {
                let mut a = 0;
                let mut b = 0;
                for part in w.split('*') {
                    match part {
                        "d" => a = 1,
                        "f" => b = 1,
                        _ => {
                            let k = part.strip_prefix("f^").ok_or_else(bad)?;
                            b = k.parse().map_err(|_| bad())?;
                        }
                    }
                }
                gens.push((a, b));
            }
        }
        let (p, _) = prime_power(q).ok_or(Error::UnsupportedQ(q))?;
        if p == 2 {
            for g in &mut gens {
                g.0 = 0;
            }
        }
        GroupSpec::new(q, &gens)
    }
}

/// A group between PSL(2,q) and PΓL(2,q) realised on PG(1,q).
#[derive(Debug, Clone)]
pub struct LinearGroup {
    pub spec: GroupSpec,
    pub field: Arc<FieldSpec>,
    pub group: GenGroup,
}

impl LinearGroup {
    #[must_use]
    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn perm(&self, m: &SemilinearMap) -> Perm {
        m.to_perm(&self.field)
    }

    /// `δ^a φ^b` as a semilinear map.
    #[must_use]
    pub fn outer_element(&self, a: u32, b: u32) -> SemilinearMap {
        let w = self.field.primitive();
        let wa = if a % 2 == 1 { w } else { 1 };
        SemilinearMap {
            matrix: [wa, 0, 0, 1],
            frob: b % self.field.f(),
        }
    }

    /// PSL(2,q) inside the same field.
    #[must_use]
    pub fn socle(&self) -> LinearGroup {
        build_on_field(
            GroupSpec {
                q: self.spec.q,
                outer: OuterPart {
                    elements: vec![(0, 0)],
                },
            },
            self.field.clone(),
        )
    }
}

/// Builds `spec` as a permutation group on PG(1,q); generators `x+1`, `x ↦ gx`, `x ↦ -1/x`
/// plus one semilinear map per outer generator.
pub fn build_group(spec: &GroupSpec) -> Result<LinearGroup> {
    let field = Arc::new(FieldSpec::from_order(u64::from(spec.q))?);
    Ok(build_on_field(spec.clone(), field))
}

pub fn build_group_str(s: &str) -> Result<LinearGroup> {
    build_group(&s.parse()?)
}

fn build_on_field(spec: GroupSpec, field: Arc<FieldSpec>) -> LinearGroup {
    let k = &*field;
    let w = k.primitive();
    let g = if spec.e() == 2 { k.mul(w, w) } else { w };
    let mut maps = vec![
        SemilinearMap::mobius([1, 1, 0, 1]),
        SemilinearMap::mobius([g, 0, 0, 1]),
        SemilinearMap::mobius([0, k.neg(1), 1, 0]),
    ];
    let (_, f) = spec.pf();
    for (a, b) in spec.outer.generators(spec.e(), f) {
        maps.push(SemilinearMap {
            matrix: [if a == 1 { w } else { 1 }, 0, 0, 1],
            frob: b,
        });
    }
    let gens = maps.iter().map(|m| m.to_perm(k)).collect();
    let group = GenGroup::new(k.q() as usize + 1, gens).expect("consistent degree");
    LinearGroup { spec, field, group }
}

/// Subgroup types of PSL(2,q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupTag {
    Borel,
    DihedralPlus,
    DihedralMinus,
    A4,
    S4,
    A5,
    SubfieldPSL(u32),
    SubfieldPGL(u32),
    Cyclic(u64),
    /// Translations by an additive subgroup of order `p^a`, `1 < a < f`.
    Elementary(u64),
    SylowP,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupTag::Borel => write!(f, "Borel"),
            SubgroupTag::DihedralPlus => write!(f, "D+"),
            SubgroupTag::DihedralMinus => write!(f, "D-"),
            SubgroupTag::A4 => write!(f, "A4"),
            SubgroupTag::S4 => write!(f, "S4"),
            SubgroupTag::A5 => write!(f, "A5"),
            SubgroupTag::SubfieldPSL(q0) => write!(f, "PSL(2,{q0})"),
            SubgroupTag::SubfieldPGL(q0) => write!(f, "PGL(2,{q0})"),
            SubgroupTag::Cyclic(n) => write!(f, "C{n}"),
            SubgroupTag::Elementary(n) => write!(f, "E{n}"),
            SubgroupTag::SylowP => write!(f, "SylowP"),
        }
    }
}

impl FromStr for SubgroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognised subgroup tag `{s}`"));
        Ok(match s.trim() {
            "Borel" => SubgroupTag::Borel,
            "D+" => SubgroupTag::DihedralPlus,
            "D-" => SubgroupTag::DihedralMinus,
            "A4" => SubgroupTag::A4,
            "S4" => SubgroupTag::S4,
            "A5" => SubgroupTag::A5,
            "SylowP" => SubgroupTag::SylowP,
            t => {
                if let Some(n) = t.strip_prefix('C') {
                    SubgroupTag::Cyclic(n.parse().map_err(|_| bad())?)
                } else if let Some(n) = t.strip_prefix('E') {
                    SubgroupTag::Elementary(n.parse().map_err(|_| bad())?)
                } else if let Some(r) = t.strip_prefix("PSL(2,") {
                    SubgroupTag::SubfieldPSL(r.trim_end_matches(')').parse().map_err(|_| bad())?)
                } else if let Some(r) = t.strip_prefix("PGL(2,") {
                    SubgroupTag::SubfieldPGL(r.trim_end_matches(')').parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// A catalog representative.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub tag: SubgroupTag,
    pub group: GenGroup,
}

/// Every element of PGL(2,q) as a normalised matrix (first nonzero entry 1), in encoding order.
fn pgl_matrices(k: &FieldSpec) -> impl Iterator<Item = [Elem; 4]> + '_ {
    let q = k.q();
    (0..4u32).rev().flat_map(move |lead| {
        // `lead` = number of leading zeros before the entry set to 1
        let free = 3 - lead;
        let total = q.pow(free);
        (0..total).filter_map(move |mut t| {
            let mut m = [0u32; 4];
            let first = lead as usize;
            if first > 3 {
                return None;
            }
            m[first] = 1;
            for i in (first + 1..4).rev() {
                m[i] = t % q;
                t /= q;
            }
            (det(k, &m) != 0).then_some(m)
        })
    })
}

/// Whether a Möbius map lies in PSL(2,q).
fn in_psl(k: &FieldSpec, m: &[Elem; 4]) -> bool {
    k.is_square(det(k, m))
}

fn closure_capped(gens: &[Perm], cap: usize) -> Option<Vec<Perm>> {
    let n = gens[0].degree();
    let mut seen = HashSet::new();
    let id = Perm::identity(n);
    seen.insert(id.clone());
    let mut list = vec![id];
    let mut head = 0;
    while head < list.len() {
        for g in gens {
            let h = list[head].then(g);
            if seen.insert(h.clone()) {
                if list.len() >= cap {
                    return None;
                }
                list.push(h);
            }
        }
        head += 1;
    }
    Some(list)
}

/// Element-order statistics, sorted by order.
fn order_profile(els: &[Perm]) -> Vec<(u64, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for g in els {
        *m.entry(g.order()).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

fn matches_type(tag: SubgroupTag, els: &[Perm]) -> bool {
    let prof = order_profile(els);
    match tag {
        SubgroupTag::A4 => prof == vec![(1, 1), (2, 3), (3, 8)],
        SubgroupTag::S4 => prof == vec![(1, 1), (2, 9), (3, 8), (4, 6)],
        SubgroupTag::A5 => prof == vec![(1, 1), (2, 15), (3, 20), (5, 24)],
        _ => false,
    }
}

/// Catalog of PSL(2,q) subgroup types for the socle of `x`.
pub struct Catalog<'a> {
    x: &'a LinearGroup,
}

impl<'a> Catalog<'a> {
    #[must_use]
    pub fn new(x: &'a LinearGroup) -> Self {
        Catalog { x }
    }

    fn k(&self) -> &FieldSpec {
        &self.x.field
    }

    fn group(&self, maps: &[SemilinearMap]) -> GenGroup {
        let gens = maps.iter().map(|m| m.to_perm(self.k())).collect();
        GenGroup::new(self.x.degree(), gens).expect("consistent degree")
    }

    /// Tag orders that exist in PSL(2,q), in tag order.
    #[must_use]
    pub fn types(&self) -> Vec<(SubgroupTag, u64)> {
        let spec = &self.x.spec;
        let (p, f) = spec.pf();
        let q = u64::from(spec.q);
        let e = u64::from(spec.e());
        let x_order = spec.psl_order();
        let mut out = vec![
            (SubgroupTag::Borel, q * (q - 1) / e),
            (SubgroupTag::DihedralPlus, 2 * (q + 1) / e),
            (SubgroupTag::DihedralMinus, 2 * (q - 1) / e),
        ];
        if p != 2 || f % 2 == 0 {
            out.push((SubgroupTag::A4, 12));
        }
        if p != 2 && (q % 8 == 1 || q % 8 == 7) {
            out.push((SubgroupTag::S4, 24));
        }
        if (q * (q * q - 1)) % 5 == 0 {
            out.push((SubgroupTag::A5, 60));
        }
        for s in (1..f).filter(|s| f % s == 0) {
            let q0 = u64::from(p).pow(s);
            if q0 < 4 {
                continue;
            }
            let e0 = if p == 2 { 1 } else { 2 };
            out.push((SubgroupTag::SubfieldPSL(q0 as u32), q0 * (q0 * q0 - 1) / e0));
            let t = f / s;
            if p == 2 || t % 2 == 0 {
                out.push((SubgroupTag::SubfieldPGL(q0 as u32), q0 * (q0 * q0 - 1)));
            }
        }
        out.retain(|&(_, o)| o < x_order);
        out
    }

    /// One representative per type whose order equals `target`; cyclic and Sylow types are
    /// included when the order matches.
    pub fn dickson_subgroups(&self, target: u64) -> Result<Vec<CatalogEntry>> {
        let spec = &self.x.spec;
        let q = u64::from(spec.q);
        let e = u64::from(spec.e());
        let (p, _) = spec.pf();
        let mut out = Vec::new();
        for (tag, order) in self.types() {
            if order == target {
                out.push(CatalogEntry {
                    tag,
                    group: self.build(tag)?,
                });
            }
        }
        let cyclic_ok = target > 1
            && (((q - 1) / e) % target == 0 || ((q + 1) / e) % target == 0 || target == u64::from(p));
        if cyclic_ok {
            out.push(CatalogEntry {
                tag: SubgroupTag::Cyclic(target),
                group: self.build(SubgroupTag::Cyclic(target))?,
            });
        }
        if target < q && prime_power(target).is_some_and(|(p0, a)| p0 == u64::from(p) && a >= 2) {
            out.push(CatalogEntry {
                tag: SubgroupTag::Elementary(target),
                group: self.build(SubgroupTag::Elementary(target))?,
            });
        }
        if target == q {
            out.push(CatalogEntry {
                tag: SubgroupTag::SylowP,
                group: self.build(SubgroupTag::SylowP)?,
            });
        }
        out.sort_by_key(|c| c.tag);
        Ok(out)
    }

    /// Constructs the representative of a tag, checking its order.
    pub fn build(&self, tag: SubgroupTag) -> Result<GenGroup> {
        let k = self.k();
        let spec = &self.x.spec;
        let e = spec.e();
        let w = k.primitive();
        let g = if e == 2 { k.mul(w, w) } else { w };
        let q = u64::from(spec.q);
        let (expected, group) = match tag {
            SubgroupTag::Borel => (
                q * (q - 1) / u64::from(e),
                self.group(&[SemilinearMap::mobius([1, 1, 0, 1]), SemilinearMap::mobius([g, 0, 0, 1])]),
            ),
            SubgroupTag::DihedralMinus => (
                2 * (q - 1) / u64::from(e),
                self.group(&[
                    SemilinearMap::mobius([g, 0, 0, 1]),
                    SemilinearMap::mobius([0, k.neg(1), 1, 0]),
                ]),
            ),
            SubgroupTag::DihedralPlus => {
                let n = (q + 1) / u64::from(e);
                let c = self.scan_element(n)?;
                let t = self.scan_inverting_involution(&c)?;
                (2 * n, GenGroup::new(self.x.degree(), vec![c, t])?)
            }
            SubgroupTag::A4 => (12, self.scan_23(tag, 12)?),
            SubgroupTag::S4 => (24, self.scan_23(tag, 24)?),
            SubgroupTag::A5 => (60, self.scan_23(tag, 60)?),
            SubgroupTag::SubfieldPSL(q0) | SubgroupTag::SubfieldPGL(q0) => {
                let (p, f) = spec.pf();
                let (p0, s) = prime_power(u64::from(q0)).ok_or(Error::UnsupportedQ(u64::from(q0)))?;
                if p0 != u64::from(p) || f % s != 0 || s == f {
                    return Err(Error::UnsupportedQ(u64::from(q0)));
                }
                let (sub, emb) = k.subfield(s)?;
                let w0 = sub.primitive();
                let q0 = u64::from(q0);
                let (mult, order) = if matches!(tag, SubgroupTag::SubfieldPSL(_)) {
                    let e0 = if p == 2 { 1 } else { 2 };
                    (sub.pow(w0, e0), q0 * (q0 * q0 - 1) / e0)
                } else {
                    (w0, q0 * (q0 * q0 - 1))
                };
                let maps = [
                    SemilinearMap::mobius([1, 1, 0, 1]),
                    SemilinearMap::mobius([emb[mult as usize], 0, 0, 1]),
                    SemilinearMap::mobius([0, k.neg(1), 1, 0]),
                ];
                if !maps.iter().all(|m| in_psl(k, &m.matrix)) {
                    return Err(Error::ConstructionFailed(format!("{tag} is not contained in PSL(2,{q})")));
                }
                (order, self.group(&maps))
            }
            SubgroupTag::Cyclic(n) => (n, GenGroup::new(self.x.degree(), vec![self.scan_element(n)?])?),
            SubgroupTag::Elementary(n) => {
                let (p, f) = spec.pf();
                let (p0, a) = prime_power(n).ok_or(Error::UnsupportedQ(n))?;
                if p0 != u64::from(p) || a >= f {
                    return Err(Error::ConstructionFailed(format!("{tag} is not a proper p-subgroup")));
                }
                let basis = self.frobenius_invariant_basis(a as usize).unwrap_or_else(|| {
                    (0..a).map(|i| k.pow(w, u64::from(i))).collect()
                });
                let maps: Vec<SemilinearMap> = basis.iter().map(|&c| SemilinearMap::mobius([1, c, 0, 1])).collect();
                (n, self.group(&maps))
            }
            SubgroupTag::SylowP => {
                let (_, f) = spec.pf();
                let maps: Vec<SemilinearMap> = (0..f)
                    .map(|i| SemilinearMap::mobius([1, k.pow(w, u64::from(i)), 0, 1]))
                    .collect();
                (q, self.group(&maps))
            }
        };
        let got = group.order();
        if got != u128::from(expected) {
            return Err(Error::ConstructionFailed(format!(
                "{tag}: expected order {expected}, got {got}"
            )));
        }
        Ok(group)
    }

    /// A GF(p)-basis of a Frobenius-invariant additive subgroup of dimension `a`: the
    /// first cyclic submodule `span{c, c^p, c^(p²), ...}` of that dimension in encoding order.
    fn frobenius_invariant_basis(&self, a: usize) -> Option<Vec<Elem>> {
        let k = self.k();
        let f = k.f();
        for c in k.elements().skip(1) {
            let mut basis: Vec<Elem> = Vec::new();
            let mut span: HashSet<Elem> = HashSet::from([0]);
            for i in 0..f {
                let x = k.frob(c, i);
                if span.contains(&x) {
                    continue;
                }
                basis.push(x);
                let mut next = span.clone();
                for &y in &span {
                    let mut z = y;
                    for _ in 1..k.p() {
                        z = k.add(z, x);
                        next.insert(z);
                    }
                }
                span = next;
            }
            if basis.len() == a {
                return Some(basis);
            }
        }
        None
    }

    /// First PSL element (matrix scan order) of projective order `n`.
    fn scan_element(&self, n: u64) -> Result<Perm> {
        let k = self.k();
        for m in pgl_matrices(k) {
            if !in_psl(k, &m) {
                continue;
            }
            let perm = SemilinearMap::mobius(m).to_perm(k);
            if perm.order() == n {
                return Ok(perm);
            }
        }
        Err(Error::ConstructionFailed(format!("no element of order {n}")))
    }

    fn scan_inverting_involution(&self, c: &Perm) -> Result<Perm> {
        let k = self.k();
        let cinv = c.inverse();
        for m in pgl_matrices(k) {
            if !in_psl(k, &m) {
                continue;
            }
            let t = SemilinearMap::mobius(m).to_perm(k);
            if t.order() == 2 && c.conjugate_by(&t) == cinv {
                return Ok(t);
            }
        }
        Err(Error::ConstructionFailed("no inverting involution".into()))
    }

    /// First pair (first involution, order-3 element in scan order) generating the target type.
    fn scan_23(&self, tag: SubgroupTag, order: usize) -> Result<GenGroup> {
        let k = self.k();
        let mut t = None;
        let mut threes = Vec::new();
        for m in pgl_matrices(k) {
            if !in_psl(k, &m) {
                continue;
            }
            let perm = SemilinearMap::mobius(m).to_perm(k);
            match perm.order() {
                2 if t.is_none() => t = Some(perm),
                3 => threes.push(perm),
                _ => {}
            }
        }
        let t = t.ok_or_else(|| Error::ConstructionFailed("no involution".into()))?;
        for s in threes {
            let gens = [t.clone(), s];
            if let Some(els) = closure_capped(&gens, order + 1) {
                if els.len() == order && matches_type(tag, &els) {
                    return GenGroup::new(self.x.degree(), gens.to_vec());
                }
            }
        }
        Err(Error::ConstructionFailed(format!("no (2,3)-generated {tag}")))
    }
}

/// The normalizer of `s` in `g`.
///
/// Uses element enumeration when `|g|` is within `max_elements`; otherwise, when `s`
/// fixes some but not all points, restricts to the setwise stabilizer of `Fix(s)`.
pub fn normalizer_in(g: &GenGroup, s: &GenGroup, bounds: &Bounds) -> Result<GenGroup> {
    let normalizes = |x: &Perm| -> bool {
        s.generators()
            .iter()
            .all(|h| s.chain().contains(&h.conjugate_by(x)))
    };
    let ambient = if g.order() <= u128::from(bounds.max_elements) {
        g.clone()
    } else {
        let fix = s.fixed_points();
        if fix.is_empty() || fix.len() == g.degree() {
            return Err(bound("normalizer without a fixed-point shortcut", bounds.max_elements));
        }
        let st = g.set_stabilizer(&fix, bounds.max_cosets as usize)?;
        if st.order() > u128::from(bounds.max_elements) {
            return Err(bound("normalizer search space", bounds.max_elements));
        }
        st
    };
    let mut chain = crate::schreier::StabChain::natural(g.degree(), s.generators());
    for x in ambient.elements(bounds.max_elements)? {
        if !chain.contains(&x) && normalizes(&x) {
            chain.extend(&x);
        }
    }
    Ok(GenGroup::from_chain(chain))
}

/// `gcd` helper re-exported for the index checks.
#[must_use]
pub fn outer_index(spec: &GroupSpec) -> u64 {
    let (_, f) = spec.pf();
    u64::from(f) * gcd(2, u64::from(spec.q) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["PSL(2,11)", "PGL(2,7)", "PSigmaL(2,25)", "PGammaL(2,8)", "M10", "PSL(2,25).<d*f>", "PSL(2,16).<f^2>"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        // q even: PSigmaL and PGammaL coincide; q prime: PGammaL is PGL
        assert_eq!("PSigmaL(2,8)".parse::<GroupSpec>().unwrap().to_string(), "PGammaL(2,8)");
        assert_eq!("PGammaL(2,7)".parse::<GroupSpec>().unwrap().to_string(), "PGL(2,7)");
        assert!("PSL(2,6)".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn groups_between_for_q9() {
        let names: Vec<String> = GroupSpec::all_between(9).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(names, vec!["PSL(2,9)", "PSigmaL(2,9)", "PGL(2,9)", "M10", "PGammaL(2,9)"]);
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(build_group_str("PSL(2,11)").unwrap().group.order(), 660);
        assert_eq!(build_group_str("PGL(2,7)").unwrap().group.order(), 336);
        assert_eq!(build_group_str("PGammaL(2,4)").unwrap().group.order(), 120);
        assert_eq!(build_group_str("PSigmaL(2,25)").unwrap().group.order(), 15600);
    }

    #[test]
    fn catalog_q11() {
        let x = build_group_str("PSL(2,11)").unwrap();
        let cat = Catalog::new(&x);
        let tags: Vec<SubgroupTag> = cat.dickson_subgroups(12).unwrap().iter().map(|c| c.tag).collect();
        assert_eq!(tags, vec![SubgroupTag::DihedralPlus, SubgroupTag::A4]);
        let a5 = cat.dickson_subgroups(60).unwrap();
        assert_eq!(a5.len(), 1);
        assert_eq!(a5[0].tag, SubgroupTag::A5);
        assert!(x.group.contains_group(&a5[0].group));
    }

    #[test]
    fn normalizers_of_sylow_subgroups() {
        let bounds = Bounds::default();
        let x = build_group_str("PSL(2,11)").unwrap();
        let c3 = Catalog::new(&x).build(SubgroupTag::Cyclic(3)).unwrap();
        assert_eq!(normalizer_in(&x.group, &c3, &bounds).unwrap().order(), 12);
        assert_eq!(normalizer_in(&x.group, &x.group, &bounds).unwrap().order(), 660);

        let x = build_group_str("PSL(2,81)").unwrap();
        let c5 = Catalog::new(&x).build(SubgroupTag::Cyclic(5)).unwrap();
        assert_eq!(normalizer_in(&x.group, &c5, &bounds).unwrap().order(), 80);
    }

    #[test]
    fn subfield_psl9_in_psl81() {
        let x = build_group_str("PSL(2,81)").unwrap();
        let found = Catalog::new(&x).dickson_subgroups(360).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].tag, SubgroupTag::SubfieldPSL(9));
        assert!(x.group.contains_group(&found[0].group));
    }
}
