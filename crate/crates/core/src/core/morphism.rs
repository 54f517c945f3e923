use std::collections::BTreeSet;
use std::sync::RwLock;

use crate::core::band::{Band, Mode, TriState, Verdict, DEFAULT_BOUND};
use crate::core::elem::{ElementId, FormalSum};
use crate::core::monoid::Monomial;
use crate::error::{Error, Result};

/// Underlying data of a band morphism.
#[derive(Clone, Debug)]
pub enum MorphismMap {
    /// Total assignment, indexed by source element id.
    Table(Vec<ElementId>),
    /// Presented source: a base morphism plus one image per variable.
    Generators {
        base: Box<BandMorphism>,
        vars: Vec<ElementId>,
    },
    /// Presented source and target over the same base band: each source
    /// variable maps to a signed monomial in the target variables (None
    /// sends it to zero). This represents restriction maps between
    /// degree-0 charts, whose variables are not carrier elements.
    Substitution {
        images: Vec<Option<(ElementId, Monomial)>>,
    },
}

/// A multiplicative, unit- and null-preserving map between bands.
///
/// The `verified` flag records the outcome and bound of the last
/// [`check_morphism`] run; constructors that enumerate morphisms set it.
pub struct BandMorphism {
    pub source: Band,
    pub target: Band,
    pub map: MorphismMap,
    verified: RwLock<(TriState, u32)>,
}

impl Clone for BandMorphism {
    fn clone(&self) -> Self {
        BandMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.clone(),
            verified: RwLock::new(*self.verified.read().unwrap()),
        }
    }
}

impl std::fmt::Debug for BandMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {}: {}", self.source.name(), self.target.name(), self.describe())
    }
}

impl BandMorphism {
    pub fn new(source: Band, target: Band, map: MorphismMap) -> Self {
        BandMorphism { source, target, map, verified: RwLock::new((TriState::Unknown, 0)) }
    }

    pub fn verified(&self) -> (TriState, u32) {
        *self.verified.read().unwrap()
    }

    pub fn set_verified(&self, v: TriState, bound: u32) {
        *self.verified.write().unwrap() = (v, bound);
    }

    /// Image of a source element.
    pub fn apply(&self, a: ElementId) -> ElementId {
        if a.is_zero() {
            return self.target.zero();
        }
        match &self.map {
            MorphismMap::Table(images) => images[a.index()],
            MorphismMap::Generators { base, vars } => {
                let (coeff, mono) = self.source.elem_data(a).expect("foreign element");
                let mut acc = base.apply(coeff);
                for (i, &e) in mono.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let img = if e > 0 {
                        self.target.pow(vars[i], e as u32)
                    } else {
                        let inv = self
                            .target
                            .inverse(vars[i])
                            .expect("invertible variable must map to a unit");
                        self.target.pow(inv, (-e) as u32)
                    };
                    acc = self.target.mul(acc, img);
                }
                acc
            }
            MorphismMap::Substitution { images } => {
                let (coeff, mono) = self.source.elem_data(a).expect("foreign element");
                match substitute(&self.target, images, coeff, &mono) {
                    Some((c, m)) => self.target.make_elem(c, &m).unwrap_or(self.target.zero()),
                    None => self.target.zero(),
                }
            }
        }
    }

    /// Linear extension to formal sums (zero images are dropped).
    pub fn apply_sum(&self, s: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (a, k) in s.iter() {
            out.push(self.apply(a), k);
        }
        out
    }

    pub fn describe(&self) -> String {
        match &self.map {
            MorphismMap::Table(images) => images
                .iter()
                .enumerate()
                .map(|(i, &im)| {
                    format!(
                        "{}->{}",
                        self.source.elem_name(ElementId(i as u32)),
                        self.target.elem_name(im)
                    )
                })
                .collect::<Vec<_>>()
                .join(", "),
            MorphismMap::Generators { vars, .. } => self
                .source
                .var_names()
                .iter()
                .zip(vars)
                .map(|(n, &im)| format!("{}->{}", n, self.target.elem_name(im)))
                .collect::<Vec<_>>()
                .join(", "),
            MorphismMap::Substitution { images } => self
                .source
                .var_names()
                .iter()
                .zip(images)
                .map(|(n, im)| match im {
                    None => format!("{n}->0"),
                    Some((_, m)) => format!("{n}->{m:?}"),
                })
                .collect::<Vec<_>>()
                .join(", "),
        }
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &BandMorphism) -> BandMorphism {
        assert!(self.target == other.source, "composition mismatch");
        let map = match &self.map {
            MorphismMap::Table(images) => {
                MorphismMap::Table(images.iter().map(|&a| other.apply(a)).collect())
            }
            MorphismMap::Generators { base, vars } => MorphismMap::Generators {
                base: Box::new(base.then(other)),
                vars: vars.iter().map(|&a| other.apply(a)).collect(),
            },
            MorphismMap::Substitution { .. } => {
                unimplemented!("composition out of a substitution map")
            }
        };
        BandMorphism::new(self.source.clone(), other.target.clone(), map)
    }

    /// Canonical fingerprint used for ordering and deduplication.
    pub fn fingerprint(&self) -> Vec<ElementId> {
        match &self.map {
            MorphismMap::Table(images) => images.clone(),
            MorphismMap::Generators { base, vars } => {
                let mut v = base.fingerprint();
                v.extend(vars.iter().copied());
                v
            }
            MorphismMap::Substitution { .. } => vec![],
        }
    }
}

/// Pushes `coeff * mono` through a variable substitution, returning the
/// raw (coefficient, monomial) over the target presentation, None when
/// a variable with positive exponent maps to zero.
fn substitute(
    target: &Band,
    images: &[Option<(ElementId, Monomial)>],
    coeff: ElementId,
    mono: &Monomial,
) -> Option<(ElementId, Monomial)> {
    let base = target.base_band();
    let arity = target.arity();
    let mut c = coeff;
    let mut out = vec![0i32; arity];
    for (i, &e) in mono.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        match &images[i] {
            None => return None,
            Some((ci, mi)) => {
                for (slot, &x) in out.iter_mut().zip(&mi.0) {
                    *slot += e * x;
                }
                let factor = if e > 0 {
                    base.pow(*ci, e as u32)
                } else {
                    base.pow(base.inverse(*ci).expect("idyll base"), (-e) as u32)
                };
                c = base.mul(c, factor);
            }
        }
    }
    Some((c, Monomial(out)))
}

/// Identity morphism of a band.
pub fn identity_morphism(b: &Band) -> BandMorphism {
    let map = if b.is_presented() {
        let arity = b.arity();
        let one = b.base_band().one();
        MorphismMap::Substitution {
            images: (0..arity).map(|i| Some((one, Monomial::var(arity, i)))).collect(),
        }
    } else {
        let n = b.known_len();
        MorphismMap::Table((0..n as u32).map(ElementId).collect())
    };
    let m = BandMorphism::new(b.clone(), b.clone(), map);
    m.set_verified(TriState::True, DEFAULT_BOUND);
    m
}

/// The structure map of a presented band: its base band included as
/// the constant monomials.
pub fn base_inclusion(b: &Band) -> BandMorphism {
    let base = b.base_band();
    let one_mono = Monomial::one(b.arity());
    let n = base.known_len();
    let images: Vec<ElementId> = (0..n as u32)
        .map(|i| {
            let a = ElementId(i);
            if a.is_zero() {
                b.zero()
            } else {
                b.make_elem(a, &one_mono).expect("nonzero base constant")
            }
        })
        .collect();
    let m = BandMorphism::new(base, b.clone(), MorphismMap::Table(images));
    m.set_verified(TriState::True, DEFAULT_BOUND);
    m
}

/// Checks that `f` is a band morphism.
///
/// Multiplicativity is exhaustive on table sources and reduces to the
/// rewrite rules on presented sources. Null preservation is tested on the
/// source's null generators when they are known to generate (testing on
/// generators suffices); otherwise every null sum up to the bound is
/// mapped and checked.
pub fn check_morphism(f: &BandMorphism, bound: u32) -> Result<TriState> {
    if f.apply(f.source.one()) != f.target.one() {
        return Err(Error::UnitNotPreserved);
    }
    match &f.map {
        MorphismMap::Table(_) => {
            let elems = f.source.elements()?;
            for &a in &elems {
                for &b in &elems {
                    if a > b {
                        continue;
                    }
                    if f.apply(f.source.mul(a, b)) != f.target.mul(f.apply(a), f.apply(b)) {
                        return Err(Error::NotMultiplicative(format!(
                            "at {} * {}",
                            f.source.elem_name(a),
                            f.source.elem_name(b)
                        )));
                    }
                }
            }
        }
        MorphismMap::Generators { base, vars } => {
            let vb = check_morphism(base, bound)?;
            if vb == TriState::False {
                return Ok(TriState::False);
            }
            let p = f.source.presented().unwrap();
            for v in p.vars.iter().zip(vars) {
                if v.0.invertible && !f.target.is_unit(*v.1) {
                    return Err(Error::NotMultiplicative(format!(
                        "invertible variable {} maps to a non-unit",
                        v.0.name
                    )));
                }
            }
            for rule in &p.rules {
                let lhs = eval_monomial(f, &rule.lhs);
                let rhs = match &rule.rhs {
                    None => f.target.zero(),
                    Some((c, m)) => f.target.mul(base.apply(*c), eval_monomial(f, m)),
                };
                if lhs != rhs {
                    return Err(Error::NotMultiplicative("rewrite rule not preserved".into()));
                }
            }
        }
        MorphismMap::Substitution { images } => {
            let p = f.source.presented().unwrap();
            assert!(
                f.source.base_band() == f.target.base_band(),
                "substitution maps require a shared base band"
            );
            for (v, im) in p.vars.iter().zip(images) {
                if v.invertible {
                    match im {
                        None => {
                            return Err(Error::NotMultiplicative(format!(
                                "invertible variable {} maps to zero",
                                v.name
                            )))
                        }
                        Some((c, m)) => {
                            let inv_ok = f.target.base_band().inverse(*c).is_some()
                                && f.target
                                    .make_elem(*c, m)
                                    .map(|id| f.target.is_unit(id))
                                    .unwrap_or(true);
                            if !inv_ok {
                                return Err(Error::NotMultiplicative(format!(
                                    "invertible variable {} maps to a non-unit",
                                    v.name
                                )));
                            }
                        }
                    }
                }
            }
            for rule in &p.rules {
                let one = f.source.base_band().one();
                let lhs = substituted_value(f, images, one, &rule.lhs);
                let rhs = match &rule.rhs {
                    None => f.target.zero(),
                    Some((c, m)) => substituted_value(f, images, *c, m),
                };
                if lhs != rhs {
                    return Err(Error::NotMultiplicative("rewrite rule not preserved".into()));
                }
            }
        }
    }
    // Null preservation.
    let mut verdict = TriState::True;
    if let Some(gens) = f.source.null_gens() {
        let generators_suffice =
            gens.mode == Mode::Null || f.target.fusion_flag() == TriState::True;
        if generators_suffice {
            for g in &gens.sums {
                match f.target.is_null_bounded(&f.apply_sum(g), bound) {
                    Verdict::Out => verdict = TriState::False,
                    Verdict::Unknown => {
                        if verdict == TriState::True {
                            verdict = TriState::Unknown;
                        }
                    }
                    Verdict::In => {}
                }
            }
            f.set_verified(verdict, bound);
            return Ok(verdict);
        }
    }
    // Fall back: map every null sum up to the bound.
    let (nulls, complete) = f.source.null_sums_up_to(bound)?;
    for s in &nulls {
        match f.target.is_null_bounded(&f.apply_sum(s), bound) {
            Verdict::Out => verdict = TriState::False,
            Verdict::Unknown => {
                if verdict == TriState::True {
                    verdict = TriState::Unknown;
                }
            }
            Verdict::In => {}
        }
    }
    if verdict == TriState::True && !complete && !f.source.has_direct_oracle() {
        verdict = TriState::Unknown;
    }
    f.set_verified(verdict, bound);
    Ok(verdict)
}

fn substituted_value(
    f: &BandMorphism,
    images: &[Option<(ElementId, Monomial)>],
    coeff: ElementId,
    m: &Monomial,
) -> ElementId {
    match substitute(&f.target, images, coeff, m) {
        None => f.target.zero(),
        Some((c, mono)) => f.target.make_elem(c, &mono).unwrap_or(f.target.zero()),
    }
}

fn eval_monomial(f: &BandMorphism, m: &Monomial) -> ElementId {
    let MorphismMap::Generators { vars, .. } = &f.map else { unreachable!() };
    let mut acc = f.target.one();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let img = if e > 0 {
            f.target.pow(vars[i], e as u32)
        } else {
            match f.target.inverse(vars[i]) {
                Some(inv) => f.target.pow(inv, (-e) as u32),
                None => return f.target.zero(), // cannot satisfy the rule
            }
        };
        acc = f.target.mul(acc, img);
    }
    acc
}

/// Enumerates the complete hom-set from `source` to a finite band.
///
/// Presented sources are enumerated by generator assignment and filtered
/// through the presentation's rewrite rules and null generators; table
/// sources by total assignment. Results come in canonical order (base
/// morphism first, then variable images in carrier order).
pub fn hom_set(source: &Band, target: &Band) -> Result<Vec<BandMorphism>> {
    if !target.is_table() {
        return Err(Error::InfiniteTarget);
    }
    if source.is_tropical() {
        return Err(Error::UnsupportedCarrier("hom-set from the tropical band".into()));
    }
    if source.is_presented() {
        let base_maps = hom_set(&source.base_band(), target)?;
        let mut out = vec![];
        for bm in &base_maps {
            out.extend(hom_set_over(source, target, bm)?);
        }
        dedup_degree0(source, &mut out);
        return Ok(out);
    }
    // Table source: enumerate total maps.
    let n = source.known_len() as u32;
    let m = target.known_len() as u32;
    let zero_idx = 0u32;
    let one_idx = source.one().0;
    let mut out = vec![];
    let mut assign: Vec<ElementId> = vec![ElementId(0); n as usize];
    assign[zero_idx as usize] = target.zero();
    if one_idx != zero_idx {
        assign[one_idx as usize] = target.one();
    }
    let free: Vec<u32> = (0..n).filter(|&i| i != zero_idx && i != one_idx).collect();
    let mut stack = vec![0u32; free.len()];
    let mut i = 0usize;
    loop {
        if i == free.len() {
            let f = BandMorphism::new(source.clone(), target.clone(), MorphismMap::Table(assign.clone()));
            if let Ok(v) = check_morphism(&f, DEFAULT_BOUND) {
                if v != TriState::False {
                    out.push(f);
                }
            }
            if free.is_empty() {
                break;
            }
            i -= 1;
            stack[i] += 1;
            continue;
        }
        if stack[i] >= m {
            stack[i] = 0;
            if i == 0 {
                break;
            }
            i -= 1;
            stack[i] += 1;
            continue;
        }
        assign[free[i] as usize] = ElementId(stack[i]);
        i += 1;
    }
    Ok(out)
}

/// Hom-set with a fixed base morphism (the k-linear maps).
pub fn hom_set_over(
    source: &Band,
    target: &Band,
    base_map: &BandMorphism,
) -> Result<Vec<BandMorphism>> {
    let p = source
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("hom_set_over needs a presented source".into()))?;
    if !target.is_table() {
        return Err(Error::InfiniteTarget);
    }
    if p.degree0 && !p.rules.is_empty() {
        return Err(Error::UnsupportedCarrier(
            "degree-0 carrier with rewrite rules".into(),
        ));
    }
    let nv = p.arity();
    let telems: Vec<ElementId> = target.elements()?;
    let units: Vec<ElementId> = telems.iter().copied().filter(|&a| target.is_unit(a)).collect();
    let mut out = vec![];
    let mut images = vec![target.zero(); nv];
    fn rec(
        source: &Band,
        target: &Band,
        base_map: &BandMorphism,
        choices: &[Vec<ElementId>],
        images: &mut Vec<ElementId>,
        i: usize,
        out: &mut Vec<BandMorphism>,
    ) {
        if i == choices.len() {
            let f = BandMorphism::new(
                source.clone(),
                target.clone(),
                MorphismMap::Generators { base: Box::new(base_map.clone()), vars: images.clone() },
            );
            if let Ok(v) = check_morphism(&f, DEFAULT_BOUND) {
                if v != TriState::False {
                    out.push(f);
                }
            }
            return;
        }
        for &c in &choices[i] {
            images[i] = c;
            rec(source, target, base_map, choices, images, i + 1, out);
        }
    }
    let choices: Vec<Vec<ElementId>> = p
        .vars
        .iter()
        .map(|v| if v.invertible { units.clone() } else { telems.clone() })
        .collect();
    rec(source, target, base_map, &choices, &mut images, 0, &mut out);
    dedup_degree0(source, &mut out);
    Ok(out)
}

/// On degree-0 carriers, different variable assignments can restrict to
/// the same morphism; deduplicate by evaluating probe monomials.
fn dedup_degree0(source: &Band, morphisms: &mut Vec<BandMorphism>) {
    let Some(p) = source.presented() else { return };
    if !p.degree0 {
        return;
    }
    let Some(j0) = p.vars.iter().position(|v| v.invertible) else { return };
    let arity = p.arity();
    let probes: Vec<Monomial> = (0..arity)
        .filter(|&k| k != j0)
        .map(|k| {
            let mut e = vec![0i32; arity];
            e[k] = 1;
            e[j0] -= p.vars[k].degree as i32; // degree-0 ratio (unit degrees)
            Monomial(e)
        })
        .collect();
    let mut seen: BTreeSet<Vec<ElementId>> = BTreeSet::new();
    morphisms.retain(|f| {
        let key: Vec<ElementId> = probes.iter().map(|m| eval_monomial(f, m)).collect();
        seen.insert(key)
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard_band;

    #[test]
    fn unique_morphism_from_initial_band() {
        let f1 = standard_band("F1pm").unwrap();
        for name in ["K", "S", "F3", "F4"] {
            let b = standard_band(name).unwrap();
            let homs = hom_set(&f1, &b).unwrap();
            assert_eq!(homs.len(), 1, "Hom(F1pm, {name})");
        }
    }

    #[test]
    fn idylls_map_uniquely_to_krasner() {
        let k = standard_band("K").unwrap();
        for name in ["F1pm", "S", "F2", "F3", "F4", "F5"] {
            let b = standard_band(name).unwrap();
            let homs = hom_set(&b, &k).unwrap();
            assert_eq!(homs.len(), 1, "Hom({name}, K)");
        }
    }

    #[test]
    fn no_morphism_f3_to_f2() {
        let f3 = standard_band("F3").unwrap();
        let f2 = standard_band("F2").unwrap();
        assert!(hom_set(&f3, &f2).unwrap().is_empty());
    }
}
