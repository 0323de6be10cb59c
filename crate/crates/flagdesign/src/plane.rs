//! PG(2,q) for even q: the conic `{(1,t,t²)} ∪ {(0,0,1)}`, its nucleus `(0,1,0)`, the regular
//! hyperoval `J` and the lines external to `J`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{bound, Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::group::GenGroup;
use crate::perm::Perm;

/// A point or line of PG(2,q): a nonzero triple whose last nonzero coordinate is 1.
pub type Triple = [Elem; 3];

/// Scales a nonzero triple so its last nonzero coordinate is 1.
#[must_use]
pub fn canonical(k: &FieldSpec, t: Triple) -> Option<Triple> {
    let last = t.iter().rposition(|&x| x != 0)?;
    let inv = k.inv(t[last]).ok()?;
    Some(t.map(|x| k.mul(x, inv)))
}

/// All `q² + q + 1` canonical triples, ordered by (number of trailing zeros, then encoding).
#[must_use]
pub fn plane_triples(k: &FieldSpec) -> Vec<Triple> {
    let q = k.q();
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            out.push([a, b, 1]);
        }
    }
    for a in 0..q {
        out.push([a, 1, 0]);
    }
    out.push([1, 0, 0]);
    out
}

#[must_use]
pub fn incident(k: &FieldSpec, p: &Triple, l: &Triple) -> bool {
    let s = k.add(k.add(k.mul(p[0], l[0]), k.mul(p[1], l[1])), k.mul(p[2], l[2]));
    s == 0
}

/// How a line meets the conic `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicClass {
    SecantToC,
    TangentToC,
    ExternalToC,
}

/// How a line meets the hyperoval `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HyperovalClass {
    SecantToJ,
    ExternalToJ,
}

#[derive(Debug, Clone)]
pub struct HyperovalModel {
    pub field: FieldSpec,
    pub conic: Vec<Triple>,
    pub nucleus: Triple,
}

impl HyperovalModel {
    pub fn new(q: u64) -> Result<Self> {
        let field = FieldSpec::from_order(q)?;
        if field.p() != 2 {
            return Err(Error::UnsupportedQ(q));
        }
        let k = &field;
        let mut conic: Vec<Triple> = k.elements().map(|t| [1, t, k.mul(t, t)]).collect();
        conic.push([0, 0, 1]);
        let conic = conic.into_iter().map(|p| canonical(k, p).expect("nonzero")).collect();
        let nucleus = [0, 1, 0];
        Ok(HyperovalModel { field, conic, nucleus })
    }

    #[must_use]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `C ∪ {N}`.
    #[must_use]
    pub fn hyperoval(&self) -> Vec<Triple> {
        let mut j = self.conic.clone();
        j.push(canonical(&self.field, self.nucleus).expect("nonzero"));
        j
    }

    #[must_use]
    pub fn on_hyperoval(&self, p: &Triple) -> bool {
        let c = canonical(&self.field, *p);
        self.hyperoval().iter().any(|x| Some(*x) == c)
    }

    /// Intersection counts with `C` and with `J`.
    #[must_use]
    pub fn classify_line(&self, l: &Triple) -> (ConicClass, HyperovalClass) {
        let k = &self.field;
        let on_c = self.conic.iter().filter(|p| incident(k, p, l)).count();
        let on_n = usize::from(incident(k, &self.nucleus, l));
        let c = match on_c {
            2 => ConicClass::SecantToC,
            1 => ConicClass::TangentToC,
            0 => ConicClass::ExternalToC,
            _ => unreachable!("a line meets a conic in at most 2 points"),
        };
        let j = if on_c + on_n == 0 {
            HyperovalClass::ExternalToJ
        } else {
            HyperovalClass::SecantToJ
        };
        (c, j)
    }

    /// Lines missing `J`, in [`plane_triples`] order.
    #[must_use]
    pub fn external_lines(&self) -> Vec<Triple> {
        let j = self.hyperoval();
        plane_triples(&self.field)
            .into_iter()
            .filter(|l| !j.iter().any(|p| incident(&self.field, p, l)))
            .collect()
    }

    /// External lines through a point off `J`.
    pub fn external_pencil(&self, p: &Triple) -> Result<Vec<Triple>> {
        let p = canonical(&self.field, *p).ok_or(Error::PointOnHyperoval)?;
        if self.on_hyperoval(&p) {
            return Err(Error::PointOnHyperoval);
        }
        Ok(self
            .external_lines()
            .into_iter()
            .filter(|l| incident(&self.field, &p, l))
            .collect())
    }

    /// `[[d², 0, c²], [bd, ad+bc, ac], [b², 0, a²]]`: the action of `t ↦ (at+b)/(ct+d)` on
    /// `(y², xy, x²)`, in characteristic 2.
    #[must_use]
    pub fn symmetric_square(&self, m: [Elem; 4]) -> [Elem; 9] {
        let k = &self.field;
        let [a, b, c, d] = m;
        let sq = |x| k.mul(x, x);
        [
            sq(d),
            0,
            sq(c),
            k.mul(b, d),
            k.add(k.mul(a, d), k.mul(b, c)),
            k.mul(a, c),
            sq(b),
            0,
            sq(a),
        ]
    }

    fn apply_point(&self, s: &[Elem; 9], p: &Triple) -> Triple {
        let k = &self.field;
        let row = |i: usize| {
            k.add(
                k.add(k.mul(s[3 * i], p[0]), k.mul(s[3 * i + 1], p[1])),
                k.mul(s[3 * i + 2], p[2]),
            )
        };
        canonical(k, [row(0), row(1), row(2)]).expect("nonsingular")
    }

    /// Line image `ℓ ↦ ℓ · S⁻¹`, with `S⁻¹` given.
    fn apply_line(&self, s_inv: &[Elem; 9], l: &Triple) -> Triple {
        let k = &self.field;
        let col = |j: usize| {
            k.add(
                k.add(k.mul(l[0], s_inv[j]), k.mul(l[1], s_inv[3 + j])),
                k.mul(l[2], s_inv[6 + j]),
            )
        };
        canonical(k, [col(0), col(1), col(2)]).expect("nonsingular")
    }

    fn inverse_mobius(&self, m: [Elem; 4]) -> [Elem; 4] {
        // adjugate; scalars are irrelevant projectively and -1 = 1 in characteristic 2
        [m[3], m[1], m[2], m[0]]
    }

    /// Point permutation of PG(2,q) induced by a Möbius map (on [`plane_triples`] indices).
    #[must_use]
    pub fn point_perm(&self, m: [Elem; 4]) -> Perm {
        let pts = plane_triples(&self.field);
        let index: HashMap<Triple, u32> = pts.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
        let s = self.symmetric_square(m);
        Perm::from_images_unchecked(pts.iter().map(|p| index[&self.apply_point(&s, p)]).collect())
    }

    /// Image of a line under a Möbius map.
    #[must_use]
    pub fn line_image(&self, m: [Elem; 4], l: &Triple) -> Triple {
        let s_inv = self.symmetric_square(self.inverse_mobius(m));
        self.apply_line(&s_inv, l)
    }

    /// Image of a line under `x ↦ x^(2^e)` on coordinates.
    #[must_use]
    pub fn frobenius_line(&self, e: u32, l: &Triple) -> Triple {
        canonical(&self.field, l.map(|x| self.field.frob(x, e))).expect("nonzero")
    }
}

/// PSL(2,q) acting on the external lines, with the line list giving the labels.
pub fn external_line_action(q: u64, max_degree: usize) -> Result<(GenGroup, Vec<Triple>)> {
    let model = HyperovalModel::new(q)?;
    let lines = model.external_lines();
    if lines.len() > max_degree {
        return Err(bound("external-line action degree", max_degree as u64));
    }
    let index: HashMap<Triple, u32> = lines.iter().enumerate().map(|(i, l)| (*l, i as u32)).collect();
    let k = &model.field;
    let w = k.primitive();
    let mobius = [[1, 1, 0, 1], [w, 0, 0, 1], [0, 1, 1, 0]];
    let mut gens = Vec::new();
    for m in mobius {
        let images = lines
            .iter()
            .map(|l| {
                index
                    .get(&model.line_image(m, l))
                    .copied()
                    .ok_or_else(|| Error::ConstructionFailed("J is not invariant".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        gens.push(Perm::from_images(images)?);
    }
    Ok((GenGroup::new(lines.len(), gens)?, lines))
}

/// External lines fixed by the Frobenius map `x ↦ x^2`.
pub fn frobenius_fixed_external_lines(q: u64) -> Result<Vec<Triple>> {
    let model = HyperovalModel::new(q)?;
    Ok(model
        .external_lines()
        .into_iter()
        .filter(|l| model.frobenius_line(1, l) == *l)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q4_line_counts() {
        let m = HyperovalModel::new(4).unwrap();
        let mut counts = HashMap::new();
        for l in plane_triples(&m.field) {
            *counts.entry(m.classify_line(&l).0).or_insert(0) += 1;
        }
        assert_eq!(counts[&ConicClass::SecantToC], 10);
        assert_eq!(counts[&ConicClass::TangentToC], 5);
        assert_eq!(counts[&ConicClass::ExternalToC], 6);
        assert_eq!(m.external_lines().len(), 6);
    }

    #[test]
    fn odd_q_rejected() {
        assert!(HyperovalModel::new(9).is_err());
    }

    #[test]
    fn symmetric_square_preserves_conic() {
        let m = HyperovalModel::new(8).unwrap();
        let k = &m.field;
        let w = k.primitive();
        for mob in [[1, 1, 0, 1], [w, 0, 0, 1], [0, 1, 1, 0]] {
            let s = m.symmetric_square(mob);
            for p in &m.conic {
                assert!(m.conic.contains(&m.apply_point(&s, p)));
            }
            assert_eq!(m.apply_point(&s, &m.nucleus), m.nucleus);
        }
    }
}
