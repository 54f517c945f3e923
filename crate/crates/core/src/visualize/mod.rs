//! Visualizations of band schemes: rational point sets with weak and
//! strong Zariski and fine topologies, the kernel, Tits and null spaces,
//! matroid extraction from Grassmannian points, and the comparison of
//! all these spaces.

mod matroid;
mod topspace;

pub use matroid::{all_matroids, weak_map_exists, Matroid};
pub use topspace::FiniteTopSpace;

use std::collections::{BTreeMap, BTreeSet};

use crate::core::{
    hom_set, Band, BandMorphism, ElementId, FormalSum, Monomial, NullGens, Verdict,
};
use crate::error::{Error, Result};
use crate::ideals::{is_k_ideal_with, known_null_sums, nullker};
use crate::schemes::BandScheme;
use crate::spectrum::spec;

/// A rational point of a glued scheme: compatible chart morphisms.
#[derive(Clone)]
pub struct RationalPoint {
    /// chart index -> index into the chart's hom list
    pub reps: BTreeMap<usize, usize>,
}

/// The set `X(F)` of F-rational points, chart-wise hom sets glued along
/// overlaps.
pub struct RationalPointSet {
    pub band: Band,
    pub chart_homs: Vec<Vec<BandMorphism>>,
    pub points: Vec<RationalPoint>,
}

impl RationalPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// A morphism representing the point (its least chart).
    pub fn rep(&self, p: usize) -> (usize, &BandMorphism) {
        let (&chart, &idx) = self.points[p].reps.iter().next().expect("nonempty point");
        (chart, &self.chart_homs[chart][idx])
    }

    pub fn labels(&self, scheme: &BandScheme) -> Vec<String> {
        self.points
            .iter()
            .map(|p| {
                let (&chart, &idx) = p.reps.iter().next().unwrap();
                let f = &self.chart_homs[chart][idx];
                format!("{}[{}]", scheme.charts[chart].name, f.describe())
            })
            .collect()
    }
}

/// Probe elements determining a morphism from a chart band.
fn chart_probes(band: &Band) -> Vec<ElementId> {
    if band.is_table() {
        return band.elements().expect("finite chart");
    }
    let p = band.presented().expect("chart carrier");
    if !p.degree0 {
        return (0..p.arity()).map(|i| band.var_elem(i)).collect();
    }
    let j0 = p.vars.iter().position(|v| v.invertible).expect("inverted variable");
    (0..p.arity())
        .filter(|&i| i != j0)
        .map(|i| {
            let mut e = vec![0i32; p.arity()];
            e[i] = 1;
            e[j0] -= p.vars[i].degree as i32;
            band.make_elem(p.base.one(), &Monomial(e)).expect("probe ratio")
        })
        .collect()
}

fn hom_fingerprint(probes: &[ElementId], f: &BandMorphism) -> Vec<ElementId> {
    probes.iter().map(|&a| f.apply(a)).collect()
}

/// Enumerates `X(F)` for a finite band F: the complete hom set per
/// chart, glued by identification over the overlaps.
pub fn points(scheme: &BandScheme, f: &Band) -> Result<RationalPointSet> {
    let mut chart_homs: Vec<Vec<BandMorphism>> = vec![];
    let mut probes: Vec<Vec<ElementId>> = vec![];
    for chart in &scheme.charts {
        chart_homs.push(hom_set(&chart.band, f)?);
        probes.push(chart_probes(&chart.band));
    }
    // identify across overlaps: a point of the overlap restricts to a
    // point in each chart
    let offsets: Vec<usize> = chart_homs
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.len();
            Some(o)
        })
        .collect();
    let total: usize = chart_homs.iter().map(|h| h.len()).sum();
    let mut uf: Vec<usize> = (0..total).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let r = find(uf, uf[i]);
            uf[i] = r;
        }
        uf[i]
    }
    for (&(i, j), ov) in &scheme.overlaps {
        let fingerprints_i: BTreeMap<Vec<ElementId>, usize> = chart_homs[i]
            .iter()
            .enumerate()
            .map(|(k, h)| (hom_fingerprint(&probes[i], h), k))
            .collect();
        let fingerprints_j: BTreeMap<Vec<ElementId>, usize> = chart_homs[j]
            .iter()
            .enumerate()
            .map(|(k, h)| (hom_fingerprint(&probes[j], h), k))
            .collect();
        for gamma in hom_set(&ov.band, f)? {
            let via_i: Vec<ElementId> =
                probes[i].iter().map(|&a| gamma.apply(ov.from_i.apply(a))).collect();
            let via_j: Vec<ElementId> =
                probes[j].iter().map(|&a| gamma.apply(ov.from_j.apply(a))).collect();
            if let (Some(&pi), Some(&pj)) = (fingerprints_i.get(&via_i), fingerprints_j.get(&via_j))
            {
                let (a, b) = (offsets[i] + pi, offsets[j] + pj);
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                if ra != rb {
                    uf[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut roots: BTreeMap<usize, RationalPoint> = BTreeMap::new();
    for (ci, homs) in chart_homs.iter().enumerate() {
        for k in 0..homs.len() {
            let r = find(&mut uf, offsets[ci] + k);
            roots
                .entry(r)
                .or_insert_with(|| RationalPoint { reps: BTreeMap::new() })
                .reps
                .insert(ci, k);
        }
    }
    Ok(RationalPointSet {
        band: f.clone(),
        chart_homs,
        points: roots.into_values().collect(),
    })
}

/// Value of a chart element at every point (zero id when the point does
/// not live in the chart). The boolean marks chart membership.
fn eval_table(
    ps: &RationalPointSet,
    chart: usize,
    a: ElementId,
) -> Vec<Option<ElementId>> {
    ps.points
        .iter()
        .map(|p| p.reps.get(&chart).map(|&k| ps.chart_homs[chart][k].apply(a)))
        .collect()
}

/// The weak Zariski topology on `X(F)`: opens are the point sets of open
/// subschemes, generated chart-wise by principal opens.
pub fn weak_zariski(scheme: &BandScheme, ps: &RationalPointSet) -> Result<FiniteTopSpace> {
    let n = ps.len();
    let mut subbasis: Vec<Vec<bool>> = vec![vec![true; n]];
    for (ci, chart) in scheme.charts.iter().enumerate() {
        for h in chart.spec.open_witnesses() {
            let vals = eval_table(ps, ci, h);
            let mask: Vec<bool> = vals
                .iter()
                .map(|v| v.is_some_and(|x| ps.band.is_unit(x)))
                .collect();
            subbasis.push(mask);
        }
    }
    Ok(FiniteTopSpace::from_subbasis(n, subbasis))
}

/// Per-band cap on term multiplicities: once a value occurs `cap` times,
/// further copies never change a null verdict. Verified exhaustively up
/// to the bound; falls back to the bound itself.
fn multiplicity_cap(f: &Band, bound: u32) -> u32 {
    let Ok(elems) = f.elements() else { return bound };
    let sums = match f.sums_up_to(bound.saturating_sub(1)) {
        Ok(s) => s,
        Err(_) => return bound,
    };
    'cap: for cap in 2..bound {
        for s in &sums {
            for &a in elems.iter().filter(|a| !a.is_zero()) {
                if s.multiplicity(a) >= cap {
                    let mut more = s.clone();
                    more.push(a, 1);
                    if f.is_null(&more) != f.is_null(s) {
                        continue 'cap;
                    }
                }
            }
        }
        return cap;
    }
    bound
}

/// The strong Zariski topology: opens `U(F)_h` for ambient-semiring
/// sections `h` of degree at most the bound. Requires an idyll F.
pub fn strong_zariski(
    scheme: &BandScheme,
    ps: &RationalPointSet,
    degree_bound: u32,
) -> Result<FiniteTopSpace> {
    if !ps.band.is_idyll().is_true() {
        return Err(Error::NotIdyll);
    }
    let n = ps.len();
    let cap = multiplicity_cap(&ps.band, degree_bound);
    let mut subbasis: Vec<Vec<bool>> = vec![vec![true; n]];
    for (ci, chart) in scheme.charts.iter().enumerate() {
        // group chart elements by their evaluation vector
        let mut classes: BTreeMap<Vec<Option<ElementId>>, ElementId> = BTreeMap::new();
        for t in chart.band.scaling_elements(term_weight(&chart.band)) {
            classes.entry(eval_table(ps, ci, t)).or_insert(t);
        }
        let class_vectors: Vec<Vec<Option<ElementId>>> = classes.keys().cloned().collect();
        // enumerate multisets of classes with capped multiplicities
        let mut mults = vec![0u32; class_vectors.len()];
        enumerate_multisets(&mut mults, 0, degree_bound, cap, &mut |mults| {
            if mults.iter().all(|&m| m == 0) {
                return;
            }
            let mask: Vec<bool> = (0..n)
                .map(|p| {
                    let mut in_chart = true;
                    let mut sum = FormalSum::zero();
                    for (c, &m) in mults.iter().enumerate() {
                        if m == 0 {
                            continue;
                        }
                        match class_vectors[c][p] {
                            None => {
                                in_chart = false;
                                break;
                            }
                            Some(v) => sum.push(v, m),
                        }
                    }
                    in_chart && !ps.band.is_null(&sum).is_in()
                })
                .collect();
            subbasis.push(mask);
        });
    }
    Ok(FiniteTopSpace::from_subbasis(n, subbasis))
}

fn term_weight(band: &Band) -> u32 {
    if band.is_table() {
        0
    } else {
        3
    }
}

fn enumerate_multisets(
    mults: &mut Vec<u32>,
    i: usize,
    left: u32,
    cap: u32,
    emit: &mut impl FnMut(&[u32]),
) {
    if i == mults.len() {
        emit(mults);
        return;
    }
    for m in 0..=left.min(cap) {
        mults[i] = m;
        enumerate_multisets(mults, i + 1, left - m, cap, emit);
    }
    mults[i] = 0;
}

/// The fine topology on `X(F)` for a finite topological band F: the
/// compact-open topology against the discrete sections, glued along
/// charts.
pub fn fine_topology(scheme: &BandScheme, ps: &RationalPointSet) -> Result<FiniteTopSpace> {
    let f = &ps.band;
    let opens: Vec<u64> = match f.topology() {
        Some(t) => t.to_vec(),
        None if f.is_table() => {
            // discrete topology
            (0..(1u64 << f.known_len())).collect()
        }
        _ => {
            return Err(Error::UnsupportedCarrier(
                "fine topology needs a finite topological band".into(),
            ))
        }
    };
    let n = ps.len();
    let mut subbasis: Vec<Vec<bool>> = vec![vec![true; n]];
    for (ci, chart) in scheme.charts.iter().enumerate() {
        let mut seen: BTreeSet<Vec<Option<ElementId>>> = BTreeSet::new();
        for t in chart.band.scaling_elements(term_weight(&chart.band).max(4)) {
            let vals = eval_table(ps, ci, t);
            if !seen.insert(vals.clone()) {
                continue;
            }
            for &v_open in &opens {
                let mask: Vec<bool> = vals
                    .iter()
                    .map(|v| v.is_some_and(|x| v_open >> x.index() & 1 == 1))
                    .collect();
                subbasis.push(mask);
            }
        }
    }
    Ok(FiniteTopSpace::from_subbasis(n, subbasis))
}

/// The kernel space: the subspace of scheme points whose chart primes
/// are k-ideals (checked at the bound).
pub struct KernelSpace {
    pub point_indices: Vec<usize>,
    pub space: FiniteTopSpace,
}

pub fn kernel_space(scheme: &BandScheme, bound: u32) -> Result<KernelSpace> {
    // null sums once per chart
    let chart_nulls: Vec<Vec<FormalSum>> = scheme
        .charts
        .iter()
        .map(|c| known_null_sums(&c.band, bound))
        .collect::<Result<_>>()?;
    let mut member = vec![];
    for (pi, p) in scheme.points.iter().enumerate() {
        let mut ok = true;
        for (&ci, &k) in &p.reps {
            let chart = &scheme.charts[ci];
            if !is_k_ideal_with(&chart.band, &chart_nulls[ci], &chart.spec.points[k].ideal) {
                ok = false;
                break;
            }
        }
        if ok {
            member.push(pi);
        }
    }
    let space = scheme_subspace(scheme, &member);
    Ok(KernelSpace { point_indices: member, space })
}

/// Subspace topology on a subset of scheme points, generated by the
/// chart-wise principal opens.
fn scheme_subspace(scheme: &BandScheme, subset: &[usize]) -> FiniteTopSpace {
    let n = subset.len();
    let mut subbasis = vec![vec![true; n]];
    for (ci, chart) in scheme.charts.iter().enumerate() {
        for h in chart.spec.open_witnesses() {
            let mask: Vec<bool> = subset
                .iter()
                .map(|&pi| {
                    scheme.points[pi]
                        .reps
                        .get(&ci)
                        .is_some_and(|&k| !chart.spec.points[k].contains(h))
                })
                .collect();
            subbasis.push(mask);
        }
    }
    let mut sp = FiniteTopSpace::from_subbasis(n, subbasis);
    sp.labels = subset.iter().map(|&pi| scheme.points[pi].label.clone()).collect();
    sp
}

/// The characteristic map `X(K) -> X`: each K-point goes to the scheme
/// point carrying its kernel.
pub fn characteristic_map(
    scheme: &BandScheme,
    ps: &RationalPointSet,
) -> Result<Vec<usize>> {
    let mut out = vec![];
    for p in &ps.points {
        let (&ci, &k) = p.reps.iter().next().unwrap();
        let alpha = &ps.chart_homs[ci][k];
        let chart = &scheme.charts[ci];
        let target_spec = spec(&ps.band)?;
        let img = crate::spectrum::spec_map(alpha, &chart.spec, &target_spec)?[0];
        // locate the scheme point with this chart representative
        let found = scheme
            .points
            .iter()
            .position(|sp| sp.reps.get(&ci) == Some(&img))
            .ok_or_else(|| Error::Other("kernel prime not found among scheme points".into()))?;
        out.push(found);
    }
    Ok(out)
}

/// The Tits space: closed points of `X(K)` in the fine topology.
pub struct TitsSpace {
    /// Indices into the K-point set.
    pub point_indices: Vec<usize>,
    pub space: FiniteTopSpace,
}

pub fn tits_space(scheme: &BandScheme) -> Result<TitsSpace> {
    let k = crate::core::standard::krasner();
    let ps = points(scheme, &k)?;
    let fine = fine_topology(scheme, &ps)?;
    let closed = fine.closed_points();
    let space = fine.subspace(&closed);
    Ok(TitsSpace { point_indices: closed, space })
}

/// The band scheme model of SL_n: the polynomial algebra on an n x n
/// matrix of variables with the signed determinant relation.
pub fn sl_band(n: usize) -> Result<Band> {
    let base = crate::core::standard::f1pm();
    let names: Vec<String> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("T{i}{j}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let b = crate::constructions::free_algebra(&base, &refs)?;
    // det(T) - 1 as a formal sum over the permutation expansion
    let mut det = FormalSum::zero();
    for (perm, sign) in permutations_with_sign(n) {
        let mut e = vec![0i32; n * n];
        for (i, &j) in perm.iter().enumerate() {
            e[i * n + j] += 1;
        }
        let coeff = if sign > 0 { base.one() } else { base.neg(base.one()) };
        det.push(b.make_elem(coeff, &Monomial(e)).unwrap(), 1);
    }
    det.push(b.neg(b.one()), 1);
    let mut gens = b.null_gens().map(|g| g.sums.clone()).unwrap_or_default();
    gens.push(det);
    // fresh band with the determinant relation in its null set
    let p = b.presented().unwrap().clone();
    let builder = crate::core::BandBuilder::new(
        format!("SL{n}"),
        crate::core::Carrier::Presented(p),
        crate::core::NullOracle::Generated,
    );
    let sl = builder.build();
    let moved: Vec<FormalSum> = gens
        .iter()
        .map(|s| {
            FormalSum::from_terms(s.iter().map(|(a, k)| {
                let (c, m) = b.elem_data(a).unwrap();
                (sl.make_elem(c, &m).unwrap(), k)
            }))
        })
        .collect();
    sl.set_null_gens(NullGens { sums: moved, mode: crate::core::Mode::Null });
    Ok(sl)
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = vec![];
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if k == 1 {
            let mut inv = 0;
            for i in 0..perm.len() {
                for j in (i + 1)..perm.len() {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            out.push((perm.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut perm, &mut out);
    out.sort();
    out.dedup();
    out
}

/// A point of the null space: the null kernel of a chart morphism into a
/// library idyll whose null set is prime.
pub struct NullPoint {
    pub chart: usize,
    pub idyll: Band,
    pub morphism: BandMorphism,
    pub kernel_scheme_point: usize,
}

pub struct NullPointSet {
    pub points: Vec<NullPoint>,
    /// Map to the underlying scheme points (the kernel space image).
    pub pi: Vec<usize>,
    pub space: FiniteTopSpace,
}

/// Materializes the null-kernel points of the scheme over the given
/// library of idylls, deduplicated by membership agreement on sums of
/// degree <= bound.
pub fn null_kernel_points(
    scheme: &BandScheme,
    library: &[Band],
    bound: u32,
) -> Result<NullPointSet> {
    for f in library {
        if !null_set_is_prime(f, bound)? {
            return Err(Error::Other(format!(
                "library band {} does not have a prime null set",
                f.name()
            )));
        }
    }
    // collect candidate points per chart
    struct Cand {
        chart: usize,
        idyll: Band,
        morphism: BandMorphism,
        fingerprint: Vec<Verdict>,
        scheme_point: usize,
    }
    let mut cands: Vec<Cand> = vec![];
    for (ci, chart) in scheme.charts.iter().enumerate() {
        let probes = null_probe_sums(&chart.band, bound);
        for f in library {
            for alpha in hom_set(&chart.band, f)? {
                let nk = nullker(&alpha, bound);
                let fingerprint: Vec<Verdict> =
                    probes.iter().map(|s| nk.member(s, bound)).collect();
                let target_spec = spec(f)?;
                let img = crate::spectrum::spec_map(&alpha, &chart.spec, &target_spec)?[0];
                let scheme_point = scheme
                    .points
                    .iter()
                    .position(|sp| sp.reps.get(&ci) == Some(&img))
                    .ok_or_else(|| Error::Other("null point misses the scheme".into()))?;
                cands.push(Cand {
                    chart: ci,
                    idyll: f.clone(),
                    morphism: alpha,
                    fingerprint,
                    scheme_point,
                });
            }
        }
    }
    // dedup: same chart and equal fingerprints identify; across charts,
    // identify when both restrict from a common overlap point
    let mut uf: Vec<usize> = (0..cands.len()).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let r = find(uf, uf[i]);
            uf[i] = r;
        }
        uf[i]
    }
    for i in 0..cands.len() {
        for j in (i + 1)..cands.len() {
            if cands[i].chart == cands[j].chart && cands[i].fingerprint == cands[j].fingerprint
            {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                if a != b {
                    uf[a.max(b)] = a.min(b);
                }
            }
        }
    }
    for (&(i, j), ov) in &scheme.overlaps {
        for f in library {
            let probes_i = chart_probes(&scheme.charts[i].band);
            let probes_j = chart_probes(&scheme.charts[j].band);
            for gamma in hom_set(&ov.band, f)? {
                let via_i: Vec<ElementId> =
                    probes_i.iter().map(|&a| gamma.apply(ov.from_i.apply(a))).collect();
                let via_j: Vec<ElementId> =
                    probes_j.iter().map(|&a| gamma.apply(ov.from_j.apply(a))).collect();
                let pi = cands.iter().position(|c| {
                    c.chart == i
                        && *c.idyll.name() == *f.name()
                        && hom_fingerprint(&probes_i, &c.morphism) == via_i
                });
                let pj = cands.iter().position(|c| {
                    c.chart == j
                        && *c.idyll.name() == *f.name()
                        && hom_fingerprint(&probes_j, &c.morphism) == via_j
                });
                if let (Some(a), Some(b)) = (pi, pj) {
                    let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                    if ra != rb {
                        uf[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..cands.len() {
        let r = find(&mut uf, i);
        roots.entry(r).or_insert(i);
    }
    let chosen: Vec<usize> = roots.values().copied().collect();
    let points: Vec<NullPoint> = chosen
        .iter()
        .map(|&i| NullPoint {
            chart: cands[i].chart,
            idyll: cands[i].idyll.clone(),
            morphism: cands[i].morphism.clone(),
            kernel_scheme_point: cands[i].scheme_point,
        })
        .collect();
    let pi: Vec<usize> = points.iter().map(|p| p.kernel_scheme_point).collect();
    // topology: basic opens U_h for bounded ambient sections h
    let n = points.len();
    let mut subbasis = vec![vec![true; n]];
    for (ci, chart) in scheme.charts.iter().enumerate() {
        for s in null_probe_sums(&chart.band, bound) {
            let mask: Vec<bool> = points
                .iter()
                .map(|p| {
                    p.chart == ci
                        && !nullker(&p.morphism, bound).member(&s, bound).is_in()
                })
                .collect();
            subbasis.push(mask);
        }
    }
    let mut space = FiniteTopSpace::from_subbasis(n, subbasis);
    space.labels = points
        .iter()
        .map(|p| format!("nullker(U{} -> {})", p.chart, p.idyll.name()))
        .collect();
    Ok(NullPointSet { points, pi, space })
}

/// Bounded family of formal sums separating null kernels.
fn null_probe_sums(band: &Band, bound: u32) -> Vec<FormalSum> {
    let elems: Vec<ElementId> = if band.is_table() {
        band.elements().unwrap_or_default()
    } else {
        band.scaling_elements(2)
    };
    let mut out = vec![];
    let d = bound.min(3);
    fn rec(
        elems: &[ElementId],
        i: usize,
        left: u32,
        cur: &mut FormalSum,
        out: &mut Vec<FormalSum>,
    ) {
        if i == elems.len() {
            if !cur.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left.min(2) {
            let mut next = cur.clone();
            next.push(elems[i], k);
            rec(elems, i + 1, left - k, &mut next, out);
        }
    }
    rec(&elems, 0, d, &mut FormalSum::zero(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Does the band have a prime null set (complement of N in B+ closed
/// under multiplication)? Checked on sums up to the bound.
pub fn null_set_is_prime(f: &Band, bound: u32) -> Result<bool> {
    if !f.is_table() {
        return Err(Error::UnsupportedCarrier("primality of the null set".into()));
    }
    let sums = f.sums_up_to(bound.min(4))?;
    for s in &sums {
        for t in &sums {
            if s.is_zero() || t.is_zero() {
                continue;
            }
            if f.is_null(s).is_in() || f.is_null(t).is_in() {
                continue;
            }
            // product of the two sums, expanded
            let mut prod = FormalSum::zero();
            for (a, ka) in s.iter() {
                for (b, kb) in t.iter() {
                    prod.push(f.mul(a, b), ka * kb);
                }
            }
            if f.is_null(&prod).is_in() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Extracts the matroid of a Grassmannian K-point: the bases are the
/// subsets with nonvanishing coordinate.
pub fn matroid_from_point(
    subsets: &[Vec<usize>],
    scheme: &BandScheme,
    ps: &RationalPointSet,
    p: usize,
    n: usize,
    r: usize,
) -> Result<Matroid> {
    let point = &ps.points[p];
    let (&ci, &k) = point.reps.iter().next().unwrap();
    let alpha = &ps.chart_homs[ci][k];
    let chart = &scheme.charts[ci];
    let cb = &chart.band;
    let pb = cb.presented().ok_or_else(|| Error::UnsupportedCarrier("chart".into()))?;
    let j0 = pb.vars.iter().position(|v| v.invertible).expect("inverted variable");
    let mut bases = BTreeSet::new();
    for (vi, subset) in subsets.iter().enumerate() {
        let mut e = vec![0i32; pb.arity()];
        e[vi] += 1;
        e[j0] -= 1;
        let ratio = cb.make_elem(pb.base.one(), &Monomial(e)).expect("ratio");
        if !alpha.apply(ratio).is_zero() {
            bases.insert(subset.clone());
        }
    }
    Matroid::new(n, r, bases)
}

/// Specialization preorder of a point set under a topology: `order[p][q]`
/// iff q lies in the closure of p.
pub fn weak_map_order(space: &FiniteTopSpace) -> Vec<Vec<bool>> {
    let n = space.len();
    let mut out = vec![vec![false; n]; n];
    for p in 0..n {
        for q in 0..n {
            out[p][q] = space.in_closure_of(q, p);
        }
    }
    out
}

/// Comparison report for the visualization diagram of one instance.
pub struct ComparisonReport {
    pub fine_refines_strong: bool,
    pub strong_refines_weak: bool,
    pub chi_ker_continuous: bool,
    pub chi_ker_homeo: Option<bool>,
    pub chi_null_continuous: bool,
    pub pi_surjective: bool,
    pub pi_continuous: bool,
    pub tits_into_kernel: bool,
    pub square_commutes: bool,
    pub bound: u32,
}

impl ComparisonReport {
    pub fn all_hold(&self) -> bool {
        self.fine_refines_strong
            && self.strong_refines_weak
            && self.chi_ker_continuous
            && self.chi_ker_homeo.unwrap_or(true)
            && self.chi_null_continuous
            && self.pi_surjective
            && self.pi_continuous
            && self.tits_into_kernel
            && self.square_commutes
    }
}

/// Verifies the continuity and commutativity of the comparison diagram
/// on the given instance over a topological idyll F with prime null set.
pub fn comparison_check(
    scheme: &BandScheme,
    f: &Band,
    strong_bound: u32,
    bound: u32,
) -> Result<ComparisonReport> {
    let ps = points(scheme, f)?;
    let fine = fine_topology(scheme, &ps)?;
    let strong = strong_zariski(scheme, &ps, strong_bound)?;
    let weak = weak_zariski(scheme, &ps)?;
    let fine_refines_strong = fine.refines(&strong);
    let strong_refines_weak = strong.refines(&weak);

    let ker = kernel_space(scheme, bound)?;
    let chi = characteristic_map(scheme, &ps)?;
    // chi lands in the kernel space
    let mut chi_ker: Vec<Option<usize>> = vec![];
    for &img in &chi {
        chi_ker.push(ker.point_indices.iter().position(|&pi| pi == img));
    }
    let lands = chi_ker.iter().all(|o| o.is_some());
    let chi_ker_idx: Vec<usize> = chi_ker.iter().map(|o| o.unwrap_or(0)).collect();
    // continuity of chi^ker from the weak topology
    let chi_ker_continuous = lands && weak.map_continuous(&chi_ker_idx, &ker.space);
    // for K itself: homeomorphism
    let is_k = f.name() == "K";
    let chi_ker_homeo = if is_k && lands {
        Some(fine.homeomorphic_via(&chi_ker_idx, &ker.space))
    } else {
        None
    };

    let nps = null_kernel_points(scheme, &[crate::core::standard::krasner()], bound)?;
    // pi: null -> scheme lands on the kernel space and is onto it
    let pi_in_ker: Vec<Option<usize>> = nps
        .pi
        .iter()
        .map(|&sp| ker.point_indices.iter().position(|&pi| pi == sp))
        .collect();
    let pi_surjective = pi_in_ker.iter().all(|o| o.is_some())
        && (0..ker.point_indices.len())
            .all(|kidx| pi_in_ker.iter().any(|o| *o == Some(kidx)));
    let pi_idx: Vec<usize> = pi_in_ker.iter().map(|o| o.unwrap_or(0)).collect();
    let pi_continuous = nps.space.map_continuous(&pi_idx, &ker.space);

    // chi^null: X(F) -> null points, when F has a prime null set
    let mut chi_null_continuous = true;
    let mut square_commutes = true;
    if is_k {
        let mut chi_null: Vec<usize> = vec![];
        for p in 0..ps.len() {
            let (ci, alpha) = ps.rep(p);
            let probes = null_probe_sums(&scheme.charts[ci].band, bound);
            let nk = nullker(alpha, bound);
            let fp: Vec<Verdict> = probes.iter().map(|s| nk.member(s, bound)).collect();
            let found = nps.points.iter().position(|np| {
                np.chart == ci && {
                    let nk2 = nullker(&np.morphism, bound);
                    probes.iter().map(|s| nk2.member(s, bound)).collect::<Vec<_>>() == fp
                }
            });
            match found {
                Some(idx) => chi_null.push(idx),
                None => {
                    chi_null_continuous = false;
                    square_commutes = false;
                    chi_null.push(0);
                }
            }
        }
        if chi_null_continuous {
            chi_null_continuous = strong.map_continuous(&chi_null, &nps.space);
            // square: pi(chi_null(x)) = chi_ker(x)
            square_commutes = chi_null
                .iter()
                .zip(&chi_ker_idx)
                .all(|(&np, &kp)| pi_idx[np] == kp);
        }
    }

    // Tits space includes into the kernel space
    let tits = tits_space(scheme)?;
    let kpoints = points(scheme, &crate::core::standard::krasner())?;
    let kchi = characteristic_map(scheme, &kpoints)?;
    let tits_into_kernel = tits
        .point_indices
        .iter()
        .all(|&ti| ker.point_indices.contains(&kchi[ti]));

    Ok(ComparisonReport {
        fine_refines_strong,
        strong_refines_weak,
        chi_ker_continuous,
        chi_ker_homeo,
        chi_null_continuous,
        pi_surjective,
        pi_continuous,
        tits_into_kernel,
        square_commutes,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard::{f1pm, krasner, sign};
    use crate::schemes::{affine_scheme, projective_space};

    #[test]
    fn affine_line_points_biject_with_the_band() {
        let a1 = crate::constructions::free_algebra(&f1pm(), &["T"]).unwrap();
        let x = affine_scheme(&a1).unwrap();
        for f in [krasner(), sign()] {
            let ps = points(&x, &f).unwrap();
            assert_eq!(ps.len(), f.known_len());
        }
    }

    #[test]
    fn p1_of_krasner_has_three_points() {
        let p1 = projective_space(&f1pm(), 1).unwrap();
        let ps = points(&p1, &krasner()).unwrap();
        assert_eq!(ps.len(), 3);
    }

    #[test]
    fn fine_topology_of_affine_line_mirrors_the_band() {
        let a1 = crate::constructions::free_algebra(&f1pm(), &["T"]).unwrap();
        let x = affine_scheme(&a1).unwrap();
        let k = krasner();
        let ps = points(&x, &k).unwrap();
        let fine = fine_topology(&x, &ps).unwrap();
        // opens: {}, {T->1}, all -- mirrors K's topology
        assert_eq!(fine.open_count(), 3);
    }

    #[test]
    fn sl2_tits_is_the_weyl_group() {
        let sl2 = sl_band(2).unwrap();
        let x = affine_scheme(&sl2).unwrap();
        let t = tits_space(&x).unwrap();
        assert_eq!(t.point_indices.len(), 2);
    }

    #[test]
    fn kernel_space_of_an_idyll_is_a_point() {
        let x = affine_scheme(&crate::core::standard::ring_band(3)).unwrap();
        let ker = kernel_space(&x, 6).unwrap();
        assert_eq!(ker.point_indices.len(), 1);
    }
}
