//! The prime spectrum of a band as a finite topological space: basic
//! opens, specialization order, vanishing sets and ideals, stalks,
//! residue fields, and induced maps of spectra.

use std::collections::BTreeSet;

use crate::core::{Band, BandMorphism, ElementId, TriState, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::ideals::{
    m_ideal_generated, maximal_m_ideal, null_ideal_generated, prime_m_ideals, quotient_named,
    stalk_band, MIdeal, PrimeMIdeal,
};

/// The spectrum of a band: its prime m-ideals with the topology
/// generated by the principal opens `U_h`.
pub struct SpecSpace {
    pub band: Band,
    pub points: Vec<PrimeMIdeal>,
    /// `specialization[i][j]` iff p_i ⊆ p_j, i.e. p_j lies in the
    /// closure of p_i.
    pub specialization: Vec<Vec<bool>>,
}

impl SpecSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The principal open `U_h` as a point mask.
    pub fn basic_open(&self, h: ElementId) -> Vec<bool> {
        self.points.iter().map(|p| !p.contains(h)).collect()
    }

    /// All distinct principal opens, with a witness element name each.
    pub fn distinct_basic_opens(&self) -> Vec<(String, Vec<bool>)> {
        let mut out: Vec<(String, Vec<bool>)> = vec![];
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        for h in self.open_witnesses() {
            let mask = self.basic_open(h);
            if seen.insert(mask.clone()) {
                out.push((self.band.elem_name(h), mask));
            }
        }
        out
    }

    /// Elements realizing every distinct principal open. For presented
    /// carriers, products over squarefree variable subsets suffice.
    pub fn open_witnesses(&self) -> Vec<ElementId> {
        if let Ok(elems) = self.band.elements() {
            return elems;
        }
        let p = self.band.presented().expect("presented carrier");
        let arity = p.arity();
        let mut out = vec![self.band.zero(), self.band.one()];
        let noninv: Vec<usize> = (0..arity).filter(|&i| !p.vars[i].invertible).collect();
        for mask in 1u32..(1 << noninv.len()) {
            let subset: Vec<usize> = noninv
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            if let Some(id) = squarefree_product(&self.band, &subset) {
                out.push(id);
            }
        }
        out
    }

    /// Closure of a point set: upward closure under specialization.
    pub fn closure(&self, set: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut out = vec![false; n];
        for i in 0..n {
            if set[i] {
                for (j, flag) in out.iter_mut().enumerate() {
                    *flag |= self.specialization[i][j];
                }
            }
        }
        out
    }

    pub fn is_closed(&self, set: &[bool]) -> bool {
        self.closure(set) == set
    }

    /// Closed points: points closed as singletons.
    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.specialization[i][j] || i == j))
            .collect()
    }

    /// Generic points: points lying in no other point's closure.
    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.specialization[j][i] || i == j))
            .collect()
    }

    /// All closed subsets (the space is finite, hence Alexandrov).
    pub fn closed_subsets(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        assert!(n <= 20, "closed-subset enumeration is for small spectra");
        let mut out = vec![];
        for mask in 0u32..(1u32 << n) {
            let set: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if self.is_closed(&set) {
                out.push(set);
            }
        }
        out
    }

    pub fn is_irreducible_closed(&self, set: &[bool]) -> bool {
        if set.iter().all(|&b| !b) || !self.is_closed(set) {
            return false;
        }
        (0..self.len()).any(|i| set[i] && self.closure(&singleton(self.len(), i)) == set)
    }

    /// Unique generic point of an irreducible closed subset, if any.
    pub fn generic_point_of(&self, set: &[bool]) -> Option<usize> {
        let mut found = None;
        for i in 0..self.len() {
            if set[i] && self.closure(&singleton(self.len(), i)) == set {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn point_names(&self) -> Vec<String> {
        self.points.iter().map(|p| p.describe()).collect()
    }
}

fn singleton(n: usize, i: usize) -> Vec<bool> {
    let mut v = vec![false; n];
    v[i] = true;
    v
}

/// Product of the given non-invertible variables, adjusted to degree 0
/// on graded carriers.
pub(crate) fn squarefree_product(band: &Band, vars: &[usize]) -> Option<ElementId> {
    let p = band.presented()?;
    let mut e = vec![0i32; p.arity()];
    let mut degree = 0i64;
    for &i in vars {
        e[i] = 1;
        degree += p.vars[i].degree;
    }
    if p.degree0 {
        let j0 = p.vars.iter().position(|v| v.invertible)?;
        e[j0] -= (degree / p.vars[j0].degree) as i32;
    }
    band.make_elem(p.base.one(), &crate::core::Monomial(e))
}

/// Computes the spectrum. Supported carriers: finite tables, and
/// presented bands over an idyll with a monoid-algebra presentation.
pub fn spec(band: &Band) -> Result<SpecSpace> {
    let points = prime_m_ideals(band)?;
    let n = points.len();
    let mut specialization = vec![vec![false; n]; n];
    for (i, pi) in points.iter().enumerate() {
        for (j, pj) in points.iter().enumerate() {
            specialization[i][j] = pi.ideal.subset_of(&pj.ideal);
        }
    }
    Ok(SpecSpace { band: band.clone(), points, specialization })
}

/// Vanishing set of a set of elements: the points containing them all.
pub fn vanishing_set(space: &SpecSpace, elems: &[ElementId]) -> Vec<bool> {
    space
        .points
        .iter()
        .map(|p| elems.iter().all(|&h| p.contains(h)))
        .collect()
}

/// Vanishing ideal of a point set: the intersection of its points (the
/// unit ideal for the empty set).
pub fn vanishing_ideal(space: &SpecSpace, set: &[bool]) -> Result<MIdeal> {
    let band = &space.band;
    if set.iter().all(|&b| !b) {
        return m_ideal_generated(band, &[band.one()]);
    }
    if band.is_table() {
        let elems = band.elements()?;
        let members: BTreeSet<ElementId> = elems
            .into_iter()
            .filter(|&a| {
                space
                    .points
                    .iter()
                    .zip(set)
                    .all(|(p, &inz)| !inz || p.contains(a))
            })
            .collect();
        return Ok(MIdeal::from_set(band.clone(), members));
    }
    let p = band
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("vanishing ideal on this carrier".into()))?;
    let noninv: Vec<usize> = (0..p.arity()).filter(|&i| !p.vars[i].invertible).collect();
    let supports: Vec<BTreeSet<usize>> = space
        .points
        .iter()
        .zip(set)
        .filter(|(_, &inz)| inz)
        .map(|(pt, _)| {
            noninv
                .iter()
                .copied()
                .filter(|&i| pt.contains(var_or_ratio(band, i)))
                .collect()
        })
        .collect();
    // minimal transversals of the supports give the squarefree generators
    let mut minimal: Vec<BTreeSet<usize>> = vec![];
    for mask in 1u32..(1u32 << noninv.len()) {
        let subset: BTreeSet<usize> = noninv
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if !supports.iter().all(|s| !s.is_disjoint(&subset)) {
            continue;
        }
        if minimal.iter().any(|m| m.is_subset(&subset)) {
            continue;
        }
        minimal.retain(|m| !subset.is_subset(m));
        minimal.push(subset);
    }
    let mut gens: Vec<ElementId> = minimal
        .into_iter()
        .filter_map(|s| squarefree_product(band, &s.into_iter().collect::<Vec<_>>()))
        .collect();
    gens.sort();
    gens.dedup();
    m_ideal_generated(band, &gens)
}

pub(crate) fn var_or_ratio(band: &Band, i: usize) -> ElementId {
    let p = band.presented().unwrap();
    if !p.degree0 {
        return band.var_elem(i);
    }
    squarefree_product(band, &[i]).expect("ratio element")
}

/// Stalk at a point: the localization at its complement.
pub fn stalk(band: &Band, point: &PrimeMIdeal) -> Result<(Band, BandMorphism)> {
    stalk_band(band, point)
}

/// Residue field at a point: the stalk modulo the null ideal generated
/// by its maximal m-ideal. Always an idyll or the trivial band.
pub struct ResidueField {
    pub band: Band,
    /// Composite morphism from the original band into the residue field.
    pub canonical: BandMorphism,
}

pub fn residue_field(band: &Band, point: &PrimeMIdeal) -> Result<ResidueField> {
    let (local, iota) = stalk_band(band, point)?;
    let maximal = maximal_m_ideal(&local)?;
    let gens: Vec<crate::core::FormalSum> = maximal
        .ideal
        .gens
        .iter()
        .map(|&g| crate::core::FormalSum::singleton(g))
        .collect();
    let ideal = null_ideal_generated(&local, gens, local.null_mode(), DEFAULT_BOUND);
    let (field, pi) = quotient_named(&format!("k({})", point.describe()), &local, &ideal)?;
    let canonical = iota.then(&pi);
    canonical.set_verified(TriState::True, DEFAULT_BOUND);
    Ok(ResidueField { band: field, canonical })
}

/// The continuous map `Spec C -> Spec B` induced by `f: B -> C`:
/// pointwise inverse image of prime m-ideals. Returns, for each point of
/// the target spectrum, the index of its image in the source spectrum.
pub fn spec_map(
    f: &BandMorphism,
    source_spec: &SpecSpace,
    target_spec: &SpecSpace,
) -> Result<Vec<usize>> {
    target_spec
        .points
        .iter()
        .map(|q| preimage_point(f, q, source_spec))
        .collect()
}

fn preimage_point(f: &BandMorphism, q: &PrimeMIdeal, source_spec: &SpecSpace) -> Result<usize> {
    let b = &f.source;
    if b.is_table() {
        let elems = b.elements()?;
        let members: BTreeSet<ElementId> =
            elems.into_iter().filter(|&a| q.contains(f.apply(a))).collect();
        for (i, p) in source_spec.points.iter().enumerate() {
            if p.ideal.elements()? == members {
                return Ok(i);
            }
        }
        return Err(Error::Other("inverse image is not in the computed spectrum".into()));
    }
    let p = b.presented().unwrap();
    let noninv: Vec<usize> = (0..p.arity()).filter(|&i| !p.vars[i].invertible).collect();
    let wanted: BTreeSet<usize> = noninv
        .iter()
        .copied()
        .filter(|&i| q.contains(f.apply(var_or_ratio(b, i))))
        .collect();
    for (i, pt) in source_spec.points.iter().enumerate() {
        let support: BTreeSet<usize> = noninv
            .iter()
            .copied()
            .filter(|&k| pt.contains(var_or_ratio(b, k)))
            .collect();
        if support == wanted {
            return Ok(i);
        }
    }
    Err(Error::Other("inverse image is not in the computed spectrum".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::free_algebra;
    use crate::core::standard::{f1pm, krasner, trivial};

    #[test]
    fn spec_of_idyll_is_a_point() {
        let s = spec(&krasner()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.closed_points(), vec![0]);
    }

    #[test]
    fn spec_of_trivial_band_is_empty() {
        let s = spec(&trivial()).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn affine_plane_has_four_points() {
        let a2 = free_algebra(&f1pm(), &["T1", "T2"]).unwrap();
        let s = spec(&a2).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.closed_points().len(), 1);
        assert_eq!(s.generic_points().len(), 1);
        let closed = &s.points[s.closed_points()[0]];
        assert!(closed.contains(a2.var_elem(0)));
        assert!(closed.contains(a2.var_elem(1)));
        let generic = &s.points[s.generic_points()[0]];
        assert!(!generic.contains(a2.var_elem(0)));
    }

    #[test]
    fn torus_is_a_point() {
        let t = crate::constructions::laurent_algebra(&f1pm(), &["T"]).unwrap();
        let s = spec(&t).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn residue_field_of_affine_line_at_origin() {
        let a1 = free_algebra(&f1pm(), &["T"]).unwrap();
        let s = spec(&a1).unwrap();
        let closed = s.closed_points()[0];
        let rf = residue_field(&a1, &s.points[closed]).unwrap();
        assert_eq!(rf.band.known_len(), 3); // 0, 1, -1
        assert!(rf.band.is_idyll().is_true());
        assert!(rf.canonical.apply(a1.var_elem(0)).is_zero());
    }

    #[test]
    fn nullstellensatz_roundtrip_on_affine_plane() {
        let a2 = free_algebra(&f1pm(), &["x", "y"]).unwrap();
        let s = spec(&a2).unwrap();
        let x = a2.var_elem(0);
        let z = vanishing_set(&s, &[x]);
        let i = vanishing_ideal(&s, &z).unwrap();
        assert_eq!(i.gens, vec![x]);
        for z in s.closed_subsets() {
            let i = vanishing_ideal(&s, &z).unwrap();
            let z2 = vanishing_set(&s, &i.gens);
            assert_eq!(z, z2);
        }
    }
}
