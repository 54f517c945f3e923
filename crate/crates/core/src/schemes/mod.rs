//! Glued band schemes: charts and gluing data, projective space, Proj of
//! graded presentations, Grassmannians, fibre products, and the
//! immersion and separatedness checks.

use std::collections::{BTreeMap, BTreeSet};

use crate::constructions::tensor;
use crate::core::monoid::{PresentedMonoid, VarDecl};
use crate::core::{
    Band, BandBuilder, BandMorphism, Carrier, ElementId, FormalSum, Monomial, MorphismMap,
    NullGens, NullOracle, TriState, DEFAULT_BOUND,
};
use crate::error::{Error, Result};
use crate::ideals::{null_ideal_generated, quotient_named};
use crate::spectrum::{spec, spec_map, SpecSpace};

/// One affine chart of a band scheme.
pub struct Chart {
    pub name: String,
    pub band: Band,
    pub spec: SpecSpace,
}

/// Overlap data between two charts: the intersection band and the two
/// restriction morphisms into it.
pub struct Overlap {
    pub band: Band,
    pub from_i: BandMorphism,
    pub from_j: BandMorphism,
}

/// A point of a glued scheme: its representatives per chart.
#[derive(Clone, Debug)]
pub struct SchemePoint {
    pub reps: BTreeMap<usize, usize>,
    pub label: String,
}

/// A band scheme presented by affine charts and gluing.
pub struct BandScheme {
    pub name: String,
    pub charts: Vec<Chart>,
    pub overlaps: BTreeMap<(usize, usize), Overlap>,
    pub points: Vec<SchemePoint>,
    /// `specialization[p][q]` iff q lies in the closure of p.
    pub specialization: Vec<Vec<bool>>,
}

impl BandScheme {
    pub fn is_affine(&self) -> bool {
        self.charts.len() == 1
    }

    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| (0..self.points.len()).all(|q| !self.specialization[p][q] || p == q))
            .collect()
    }

    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| (0..self.points.len()).all(|q| !self.specialization[q][p] || p == q))
            .collect()
    }

    /// Global sections: the equalizer of the restriction maps, computed
    /// by extending chart-0 sections across all overlaps.
    pub fn global_sections(&self) -> Result<Band> {
        if self.charts.len() == 1 {
            return Ok(self.charts[0].band.clone());
        }
        let c0 = &self.charts[0].band;
        let p0 = c0
            .presented()
            .ok_or_else(|| Error::UnsupportedCarrier("global sections of table charts".into()))?;
        let generators = c0.monoid_generators();
        let mut extendable = vec![];
        for &v in &generators {
            if self.element_extends(0, v)? {
                extendable.push(v);
            }
        }
        if extendable.len() == generators.len() {
            // sections are exactly the chart-0 sections
            let mut builder = BandBuilder::new(
                format!("Gamma({})", self.name),
                Carrier::Presented(p0.clone()),
                if c0.has_direct_oracle() {
                    NullOracle::Direct(std::sync::Arc::new(
                        crate::constructions::monomial_grouping_pred,
                    ))
                } else {
                    NullOracle::Generated
                },
            );
            builder.fusion = c0.fusion_flag();
            let g = builder.build();
            if let Some(gens) = c0.null_gens() {
                let moved: Vec<FormalSum> = gens
                    .sums
                    .iter()
                    .map(|s| {
                        FormalSum::from_terms(s.iter().map(|(a, k)| {
                            let (c, m) = c0.elem_data(a).unwrap();
                            (g.make_elem(c, &m).unwrap(), k)
                        }))
                    })
                    .collect();
                g.set_null_gens(NullGens { sums: moved, mode: gens.mode });
            }
            return Ok(g);
        }
        // check whether any small monomial extends; if none do, the
        // sections are the constants
        for m in c0.monomials_up_to(2) {
            if m.is_one() {
                continue;
            }
            let v = c0.make_elem(p0.base.one(), &m).unwrap();
            if self.element_extends(0, v)? {
                return Err(Error::UnsupportedCarrier(
                    "global sections form a proper subalgebra".into(),
                ));
            }
        }
        Ok(p0.base.clone())
    }

    /// Does a chart element extend compatibly to every other chart?
    fn element_extends(&self, chart: usize, a: ElementId) -> Result<bool> {
        for (&(i, j), ov) in &self.overlaps {
            let (other, res_this, res_other) = if i == chart {
                (j, &ov.from_i, &ov.from_j)
            } else if j == chart {
                (i, &ov.from_j, &ov.from_i)
            } else {
                continue;
            };
            let image = res_this.apply(a);
            if image.is_zero() {
                continue;
            }
            let cb = &self.charts[other].band;
            let w = cb.sum_weight(&FormalSum::singleton(a)).max(3) + 1;
            let found = cb
                .scaling_elements(w)
                .into_iter()
                .any(|cand| res_other.apply(cand) == image);
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The affine scheme of a band: a single chart.
pub fn affine_scheme(band: &Band) -> Result<BandScheme> {
    let sp = spec(band)?;
    let n = sp.len();
    let points = (0..n)
        .map(|i| SchemePoint {
            reps: BTreeMap::from([(0usize, i)]),
            label: sp.points[i].describe(),
        })
        .collect();
    let specialization = sp.specialization.clone();
    Ok(BandScheme {
        name: format!("Spec {}", band.name()),
        charts: vec![Chart { name: "U0".into(), band: band.clone(), spec: sp }],
        overlaps: BTreeMap::new(),
        points,
        specialization,
    })
}

/// One gluing: charts i and j, localized at h_i and h_j, identified
/// along mutually inverse variable substitutions.
pub struct GluingData {
    pub i: usize,
    pub j: usize,
    pub h_i: ElementId,
    pub h_j: ElementId,
    /// Images of chart-i variables in chart j's localization (signed
    /// monomials over chart j's variables).
    pub forward: Vec<(ElementId, Monomial)>,
    /// Images of chart-j variables back in chart i's localization.
    pub backward: Vec<(ElementId, Monomial)>,
}

/// Glues presented charts along localization isomorphisms, verifying
/// that the substitutions are band morphisms and mutually inverse.
pub fn glue(bands: Vec<Band>, gluings: Vec<GluingData>) -> Result<BandScheme> {
    let mut charts = vec![];
    for (k, b) in bands.iter().enumerate() {
        charts.push(Chart { name: format!("U{k}"), band: b.clone(), spec: spec(b)? });
    }
    let mut overlaps = BTreeMap::new();
    for g in &gluings {
        let (bi, bj) = (&bands[g.i], &bands[g.j]);
        let (loc_i, iota_i) = crate::ideals::finite_localization(bi, g.h_i)?;
        let (loc_j, iota_j) = crate::ideals::finite_localization(bj, g.h_j)?;
        if loc_i.arity() != bi.arity() || loc_j.arity() != bj.arity() {
            return Err(Error::UnsupportedCarrier(
                "gluing along a non-variable localization".into(),
            ));
        }
        let fwd = BandMorphism::new(
            loc_i.clone(),
            loc_j.clone(),
            MorphismMap::Substitution { images: g.forward.iter().cloned().map(Some).collect() },
        );
        let bwd = BandMorphism::new(
            loc_j.clone(),
            loc_i.clone(),
            MorphismMap::Substitution { images: g.backward.iter().cloned().map(Some).collect() },
        );
        if crate::core::check_morphism(&fwd, DEFAULT_BOUND)? == TriState::False
            || crate::core::check_morphism(&bwd, DEFAULT_BOUND)? == TriState::False
        {
            return Err(Error::NotOpenEmbedding(format!(
                "gluing map between charts {} and {} is not a band morphism",
                g.i, g.j
            )));
        }
        for k in 0..loc_i.arity() {
            let v = loc_i.var_elem(k);
            if bwd.apply(fwd.apply(v)) != v {
                return Err(Error::CocycleFailure(format!(
                    "gluing maps between charts {} and {} are not mutually inverse",
                    g.i, g.j
                )));
            }
        }
        let from_j = iota_j.then(&bwd);
        let (a, b) = (g.i.min(g.j), g.i.max(g.j));
        if g.i < g.j {
            overlaps.insert((a, b), Overlap { band: loc_i.clone(), from_i: iota_i, from_j });
        } else {
            overlaps.insert((a, b), Overlap { band: loc_i.clone(), from_i: from_j, from_j: iota_i });
        }
    }
    let (points, specialization) = glued_points(&charts, &overlaps)?;
    Ok(BandScheme { name: "glued".into(), charts, overlaps, points, specialization })
}

/// Glued points: disjoint chart spectra modulo overlap identifications.
fn glued_points(
    charts: &[Chart],
    overlaps: &BTreeMap<(usize, usize), Overlap>,
) -> Result<(Vec<SchemePoint>, Vec<Vec<bool>>)> {
    let offsets: Vec<usize> = charts
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.spec.len();
            Some(o)
        })
        .collect();
    let total: usize = charts.iter().map(|c| c.spec.len()).sum();
    let mut uf: Vec<usize> = (0..total).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let r = find(uf, uf[i]);
            uf[i] = r;
        }
        uf[i]
    }
    for (&(i, j), ov) in overlaps {
        let osp = spec(&ov.band)?;
        let to_i = spec_map(&ov.from_i, &charts[i].spec, &osp)?;
        let to_j = spec_map(&ov.from_j, &charts[j].spec, &osp)?;
        for k in 0..osp.len() {
            let a = offsets[i] + to_i[k];
            let b = offsets[j] + to_j[k];
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra != rb {
                uf[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut roots: BTreeMap<usize, SchemePoint> = BTreeMap::new();
    for (ci, chart) in charts.iter().enumerate() {
        for k in 0..chart.spec.len() {
            let r = find(&mut uf, offsets[ci] + k);
            let entry = roots
                .entry(r)
                .or_insert_with(|| SchemePoint { reps: BTreeMap::new(), label: String::new() });
            entry.reps.insert(ci, k);
            if entry.label.is_empty() {
                entry.label = format!("U{}:{}", ci, chart.spec.points[k].describe());
            }
        }
    }
    let points: Vec<SchemePoint> = roots.into_values().collect();
    let specialization = scheme_specialization(charts, &points);
    Ok((points, specialization))
}

/// q lies in the closure of p iff every chart containing q also
/// contains p and p specializes to q there.
fn scheme_specialization(charts: &[Chart], points: &[SchemePoint]) -> Vec<Vec<bool>> {
    let n = points.len();
    let mut out = vec![vec![false; n]; n];
    for (pi, p) in points.iter().enumerate() {
        for (qi, q) in points.iter().enumerate() {
            let mut ok = !q.reps.is_empty();
            for (&cq, &qk) in &q.reps {
                match p.reps.get(&cq) {
                    None => {
                        ok = false;
                        break;
                    }
                    Some(&pk) => {
                        if !charts[cq].spec.specialization[pk][qk] {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            out[pi][qi] = ok;
        }
    }
    out
}

/// Projective n-space over an idyll: n+1 single-variable charts of the
/// graded polynomial algebra, glued through the shared ambient.
pub fn projective_space(base: &Band, n: usize) -> Result<BandScheme> {
    let vars: Vec<String> = (0..=n).map(|i| format!("T{i}")).collect();
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    proj_of(base, &var_refs, &[], &format!("P{n}"))
}

/// A graded presentation: variables with degrees and homogeneous null
/// generators, given as (coefficient, exponent-vector) term lists.
pub struct GradedPresentation {
    pub base: Band,
    pub vars: Vec<String>,
    pub degrees: Vec<i64>,
    pub generators: Vec<Vec<(ElementId, Vec<i32>)>>,
}

/// Proj of a graded presentation: one chart per variable, carrying the
/// degree-0 scalings of the generators as null relations. Charts whose
/// relations collapse monomials are materialized through the quotient
/// machinery.
pub fn proj(gp: &GradedPresentation) -> Result<BandScheme> {
    for g in &gp.generators {
        let degs: BTreeSet<i64> = g
            .iter()
            .map(|(_, e)| e.iter().zip(&gp.degrees).map(|(&x, &d)| x as i64 * d).sum::<i64>())
            .collect();
        if degs.len() > 1 {
            return Err(Error::NonHomogeneousGenerator(format!("degrees {degs:?}")));
        }
    }
    let var_refs: Vec<&str> = gp.vars.iter().map(|s| s.as_str()).collect();
    proj_with_gens(&gp.base, &var_refs, &gp.degrees, &gp.generators, "Proj")
}

fn proj_of(
    base: &Band,
    vars: &[&str],
    gens: &[Vec<(ElementId, Vec<i32>)>],
    name: &str,
) -> Result<BandScheme> {
    let degrees = vec![1i64; vars.len()];
    proj_with_gens(base, vars, &degrees, gens, name)
}

fn degree0_chart(
    base: &Band,
    vars: &[&str],
    degrees: &[i64],
    inverted: &[usize],
    name: String,
) -> Band {
    let decls: Vec<VarDecl> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| VarDecl {
            name: v.to_string(),
            invertible: inverted.contains(&i),
            degree: degrees[i],
        })
        .collect();
    let p = PresentedMonoid { base: base.clone(), vars: decls, rules: vec![], degree0: true };
    let oracle = if base.has_direct_oracle() {
        NullOracle::Direct(std::sync::Arc::new(crate::constructions::monomial_grouping_pred))
    } else {
        NullOracle::Generated
    };
    let mut builder = BandBuilder::new(name, Carrier::Presented(p), oracle);
    builder.fusion = base.fusion_flag();
    let b = builder.build();
    b.set_null_gens(NullGens {
        sums: crate::core::standard::lifted_base_nulls(&b),
        mode: base.null_mode(),
    });
    b
}

fn proj_with_gens(
    base: &Band,
    vars: &[&str],
    degrees: &[i64],
    gens: &[Vec<(ElementId, Vec<i32>)>],
    name: &str,
) -> Result<BandScheme> {
    if !base.is_idyll().is_true() {
        return Err(Error::NotIdyll);
    }
    let nv = vars.len();
    let mut charts = vec![];
    let mut chart_pts: Vec<Vec<(usize, Vec<bool>)>> = vec![];
    for j in 0..nv {
        let pre = degree0_chart(base, vars, degrees, &[j], format!("{name}.U{j}"));
        // scale the homogeneous generators into degree 0
        let mut scaled: Vec<FormalSum> = vec![];
        for g in gens {
            let mut sum = FormalSum::zero();
            for (c, e) in g {
                let d: i64 = e.iter().zip(degrees).map(|(&x, &dd)| x as i64 * dd).sum();
                let mut exps = e.clone();
                exps[j] -= (d / degrees[j]) as i32;
                if let Some(id) = pre.make_elem(*c, &Monomial(exps)) {
                    sum.push(id, 1);
                }
            }
            if !sum.is_zero() && !pre.is_null_bounded(&sum, 4).is_in() {
                scaled.push(sum);
            }
        }
        let (chart_band, pi) = if scaled.is_empty() {
            (pre.clone(), crate::core::identity_morphism(&pre))
        } else {
            let ideal = null_ideal_generated(&pre, scaled, base.null_mode(), DEFAULT_BOUND);
            quotient_named(&format!("{name}.U{j}"), &pre, &ideal)?
        };
        let sp = spec(&chart_band)?;
        let presp = spec(&pre)?;
        let back = spec_map(&pi, &presp, &sp)?;
        let mut pts = vec![];
        for (k, &pre_idx) in back.iter().enumerate() {
            let zeros: Vec<bool> = (0..nv)
                .map(|i| {
                    i != j
                        && presp.points[pre_idx].contains(crate::spectrum::var_or_ratio(&pre, i))
                })
                .collect();
            pts.push((k, zeros));
        }
        chart_pts.push(pts);
        charts.push(Chart { name: format!("U{j}"), band: chart_band, spec: sp });
    }
    // glue by ambient 0/1 tuples: chart j sees tuples with x_j = 1
    let mut tuples: BTreeMap<Vec<bool>, SchemePoint> = BTreeMap::new();
    for (j, pts) in chart_pts.iter().enumerate() {
        for (k, zeros) in pts {
            let entry = tuples.entry(zeros.clone()).or_insert_with(|| SchemePoint {
                reps: BTreeMap::new(),
                label: tuple_label(zeros),
            });
            entry.reps.insert(j, *k);
        }
    }
    let points: Vec<SchemePoint> = tuples.into_values().collect();
    let specialization = scheme_specialization(&charts, &points);
    // overlaps: both coordinates inverted, identity substitutions
    let mut overlaps = BTreeMap::new();
    for i in 0..nv {
        for j in (i + 1)..nv {
            if !charts[i].band.is_presented() || !charts[j].band.is_presented() {
                continue;
            }
            let ov = degree0_chart(base, vars, degrees, &[i, j], format!("{name}.U{i}{j}"));
            let identity_imgs: Vec<Option<(ElementId, Monomial)>> =
                (0..nv).map(|k| Some((base.one(), Monomial::var(nv, k)))).collect();
            let from_i = BandMorphism::new(
                charts[i].band.clone(),
                ov.clone(),
                MorphismMap::Substitution { images: identity_imgs.clone() },
            );
            let from_j = BandMorphism::new(
                charts[j].band.clone(),
                ov.clone(),
                MorphismMap::Substitution { images: identity_imgs },
            );
            overlaps.insert((i, j), Overlap { band: ov, from_i, from_j });
        }
    }
    Ok(BandScheme { name: name.into(), charts, overlaps, points, specialization })
}

fn tuple_label(zeros: &[bool]) -> String {
    let coords: Vec<&str> = zeros.iter().map(|&z| if z { "0" } else { "1" }).collect();
    format!("({})", coords.join(","))
}

/// The Pluecker relations for Gr(r, n), as signed exponent-vector term
/// lists over variables T_I indexed by the r-subsets of {1..n} in
/// lexicographic order. Terms with a repeated index are dropped, and
/// relations that are plainly balanced are omitted.
pub fn plucker_relations(r: usize, n: usize) -> (Vec<Vec<usize>>, Vec<Vec<(i32, Vec<i32>)>>) {
    let subsets = k_subsets(n, r);
    let index: BTreeMap<Vec<usize>, usize> =
        subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let nv = subsets.len();
    let mut relations: BTreeSet<Vec<(i32, Vec<i32>)>> = BTreeSet::new();
    if r == 0 {
        return (subsets, vec![]);
    }
    for i_set in k_subsets(n, r + 1) {
        for j_set in k_subsets(n, r - 1) {
            let mut terms: Vec<(i32, Vec<i32>)> = vec![];
            for &ik in &i_set {
                if j_set.contains(&ik) {
                    continue; // T with a repeated index is 0
                }
                let left: Vec<usize> = i_set.iter().copied().filter(|&e| e != ik).collect();
                let mut right: Vec<usize> = j_set.clone();
                right.push(ik);
                right.sort();
                // count elements of I and J below i_k separately
                let eps = i_set.iter().filter(|&&e| e < ik).count()
                    + j_set.iter().filter(|&&e| e < ik).count();
                let sign = if eps % 2 == 0 { 1 } else { -1 };
                let mut exps = vec![0i32; nv];
                exps[index[&left]] += 1;
                exps[index[&right]] += 1;
                terms.push((sign, exps));
            }
            // drop relations whose terms cancel pairwise
            let mut buckets: BTreeMap<Vec<i32>, i32> = BTreeMap::new();
            for (s, e) in &terms {
                *buckets.entry(e.clone()).or_insert(0) += s;
            }
            if buckets.values().all(|&v| v == 0) {
                continue;
            }
            terms.sort();
            let mut negated: Vec<(i32, Vec<i32>)> =
                terms.iter().map(|(s, e)| (-s, e.clone())).collect();
            negated.sort();
            relations.insert(terms.min(negated));
        }
    }
    (subsets, relations.into_iter().collect())
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// The Grassmannian Gr(r, n): Proj of the Pluecker presentation.
pub fn grassmannian(r: usize, n: usize, base: &Band) -> Result<BandScheme> {
    if r == 0 || r > n {
        return Err(Error::Other("require 0 < r <= n".into()));
    }
    let (subsets, relations) = plucker_relations(r, n);
    let vars: Vec<String> = subsets
        .iter()
        .map(|s| format!("T{}", s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")))
        .collect();
    let minus_one = base.neg(base.one());
    let gens: Vec<Vec<(ElementId, Vec<i32>)>> = relations
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|(s, e)| (if *s > 0 { base.one() } else { minus_one }, e.clone()))
                .collect()
        })
        .collect();
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    proj_of(base, &var_refs, &gens, &format!("Gr({r},{n})"))
}

/// A morphism of band schemes, stored chart-wise as band morphisms in
/// the opposite direction together with a chart assignment.
pub struct SchemeMorphism {
    /// For each source chart i: the target chart receiving its image.
    pub chart_assign: Vec<usize>,
    /// Band morphisms Gamma(V_{assign(i)}) -> Gamma(U_i).
    pub maps: Vec<BandMorphism>,
}

/// Closed immersion test: chart-wise surjectivity of the section maps
/// (the morphism is affine by representation).
pub fn check_closed_immersion(phi: &SchemeMorphism) -> Result<bool> {
    for f in &phi.maps {
        if !surjective_on_sections(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn surjective_on_sections(f: &BandMorphism) -> Result<bool> {
    let target = &f.target;
    if target.is_table() {
        let image: BTreeSet<ElementId> =
            f.source.elements()?.into_iter().map(|a| f.apply(a)).collect();
        return Ok(target.elements()?.iter().all(|a| image.contains(a)));
    }
    let w = 3;
    let mut image: BTreeSet<ElementId> =
        f.source.scaling_elements(w + 2).iter().map(|&a| f.apply(a)).collect();
    image.insert(f.target.zero());
    Ok(target.scaling_elements(w).iter().all(|a| image.contains(a)))
}

/// Separatedness: the diagonal is a closed immersion, checked on all
/// chart pairs by asking whether products of restricted sections
/// exhaust the overlap band.
pub fn check_separated(x: &BandScheme) -> Result<bool> {
    for i in 0..x.charts.len() {
        for j in i..x.charts.len() {
            if i == j {
                continue; // multiplication Gamma(U) x Gamma(U) -> Gamma(U) is onto
            }
            let Some(ov) = x.overlaps.get(&(i, j)) else { continue };
            if !products_cover(&ov.from_i, &ov.from_j, &ov.band)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn products_cover(fi: &BandMorphism, fj: &BandMorphism, overlap: &Band) -> Result<bool> {
    let w = 2;
    let wanted = overlap.scaling_elements(w);
    let ai = fi.source.scaling_elements(w + 2);
    let aj = fj.source.scaling_elements(w + 2);
    let mut products: BTreeSet<ElementId> = BTreeSet::new();
    for &a in &ai {
        let x = fi.apply(a);
        for &b in &aj {
            products.insert(overlap.mul(x, fj.apply(b)));
        }
    }
    Ok(wanted.iter().all(|h| products.contains(h)))
}

/// Fibre product. Affine instances are materialized through the tensor
/// product; X x_X X collapses to X.
pub fn fibre_product(
    x: &BandScheme,
    y: &BandScheme,
    z: &BandScheme,
    to_z_from_x: Option<&BandMorphism>,
    to_z_from_y: Option<&BandMorphism>,
) -> Result<BandScheme> {
    if std::ptr::eq(x, y) && std::ptr::eq(x, z) && x.is_affine() {
        return affine_scheme(&x.charts[0].band);
    }
    if !(x.is_affine() && y.is_affine() && z.is_affine()) {
        return Err(Error::UnsupportedCarrier(
            "fibre products are materialized for affine schemes".into(),
        ));
    }
    let (gx, gy, gz) = (&x.charts[0].band, &y.charts[0].band, &z.charts[0].band);
    let sx = match to_z_from_x {
        Some(f) => f.clone(),
        None => unique_structure_map(gz, gx)?,
    };
    let sy = match to_z_from_y {
        Some(f) => f.clone(),
        None => unique_structure_map(gz, gy)?,
    };
    let t = tensor_bands(gz, &[gx.clone(), gy.clone()], &[sx, sy])?;
    let mut s = affine_scheme(&t)?;
    s.name = format!("{} x_{} {}", x.name, z.name, y.name);
    Ok(s)
}

/// Tensor of algebras over a base, dispatching on carrier kinds.
pub fn tensor_bands(base: &Band, factors: &[Band], structure: &[BandMorphism]) -> Result<Band> {
    if factors.iter().all(|b| b.is_table()) && base.is_table() {
        return tensor(base, factors, structure);
    }
    crate::constructions::tensor_presented(base, factors)
}

fn unique_structure_map(from: &Band, to: &Band) -> Result<BandMorphism> {
    if from.name() == "F1pm" && from.known_len() == 3 {
        let images = vec![to.zero(), to.one(), to.neg(to.one())];
        let f = BandMorphism::new(from.clone(), to.clone(), MorphismMap::Table(images));
        f.set_verified(TriState::True, DEFAULT_BOUND);
        return Ok(f);
    }
    Err(Error::Other("structure map required".into()))
}

/// The affine line with doubled closed point: two copies of A^1 glued
/// along T -> T over the Laurent overlap.
pub fn doubled_line(base: &Band) -> Result<BandScheme> {
    let a1 = crate::constructions::free_algebra(base, &["T"])?;
    let a1_bis = crate::constructions::free_algebra(base, &["T"])?;
    let t0 = a1.var_elem(0);
    let t1 = a1_bis.var_elem(0);
    let mono = Monomial::var(1, 0);
    let mut s = glue(
        vec![a1, a1_bis],
        vec![GluingData {
            i: 0,
            j: 1,
            h_i: t0,
            h_j: t1,
            forward: vec![(base.one(), mono.clone())],
            backward: vec![(base.one(), mono)],
        }],
    )?;
    s.name = "doubled-line".into();
    Ok(s)
}

/// P^1 as two affine lines glued along T -> T^{-1}.
pub fn p1_two_charts(base: &Band) -> Result<BandScheme> {
    let a1 = crate::constructions::free_algebra(base, &["T"])?;
    let a1_bis = crate::constructions::free_algebra(base, &["U"])?;
    let t0 = a1.var_elem(0);
    let t1 = a1_bis.var_elem(0);
    let mut s = glue(
        vec![a1, a1_bis],
        vec![GluingData {
            i: 0,
            j: 1,
            h_i: t0,
            h_j: t1,
            forward: vec![(base.one(), Monomial(vec![-1]))],
            backward: vec![(base.one(), Monomial(vec![-1]))],
        }],
    )?;
    s.name = "P1(glued)".into();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard::f1pm;

    #[test]
    fn projective_line_has_three_points() {
        let p1 = projective_space(&f1pm(), 1).unwrap();
        assert_eq!(p1.points.len(), 3);
        assert_eq!(p1.closed_points().len(), 2);
        assert_eq!(p1.generic_points().len(), 1);
    }

    #[test]
    fn projective_plane_has_seven_points() {
        let p2 = projective_space(&f1pm(), 2).unwrap();
        assert_eq!(p2.points.len(), 7);
        assert_eq!(p2.closed_points().len(), 3);
    }

    #[test]
    fn plucker_gr24_is_the_three_term_relation() {
        let (subsets, rels) = plucker_relations(2, 4);
        assert_eq!(subsets.len(), 6);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].len(), 3);
    }

    #[test]
    fn plucker_gr1n_and_gr23_collapse() {
        let (_, rels) = plucker_relations(1, 4);
        assert!(rels.is_empty());
        let (_, rels) = plucker_relations(2, 3);
        assert!(rels.is_empty());
    }

    #[test]
    fn doubled_line_points_and_sections() {
        let dl = doubled_line(&f1pm()).unwrap();
        assert_eq!(dl.points.len(), 3);
        assert_eq!(dl.closed_points().len(), 2);
        let gamma = dl.global_sections().unwrap();
        assert!(gamma.is_presented());
        assert_eq!(gamma.arity(), 1);
        assert!(!check_separated(&dl).unwrap());
    }

    #[test]
    fn p1_from_gluing_matches_proj() {
        let p1 = p1_two_charts(&f1pm()).unwrap();
        assert_eq!(p1.points.len(), 3);
        assert!(check_separated(&p1).unwrap());
        let gamma = p1.global_sections().unwrap();
        assert_eq!(gamma.known_len(), 3); // only the constants extend
    }

    #[test]
    fn affine_schemes_are_separated() {
        let a2 = crate::constructions::free_algebra(&f1pm(), &["x", "y"]).unwrap();
        let s = affine_scheme(&a2).unwrap();
        assert!(check_separated(&s).unwrap());
    }

    #[test]
    fn proj_with_monomial_relation_collapses_charts() {
        let base = f1pm();
        let gp = GradedPresentation {
            base: base.clone(),
            vars: vec!["T0".into(), "T1".into()],
            degrees: vec![1, 1],
            generators: vec![vec![(base.one(), vec![1, 1])]],
        };
        let s = proj(&gp).unwrap();
        assert_eq!(s.points.len(), 2);
    }
}
