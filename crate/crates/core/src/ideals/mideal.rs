use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core::{Band, ElementId, Monomial};
use crate::error::{Error, Result};

/// An m-ideal of a band: a subset containing 0 and stable under scaling
/// by arbitrary band elements.
#[derive(Clone)]
pub struct MIdeal {
    pub band: Band,
    /// Sorted generators (zero excluded).
    pub gens: Vec<ElementId>,
    backing: Membership,
}

#[derive(Clone)]
enum Membership {
    /// Explicit element set (finite carriers).
    Explicit(Arc<BTreeSet<ElementId>>),
    /// Divisibility by a generator, on normal forms.
    Divisibility,
    /// Complement of the unit group.
    NonUnit,
    /// Normal form has positive exponent on one of these variables.
    VarSupport(Arc<BTreeSet<usize>>),
    /// Arbitrary membership procedure.
    Pred(Arc<dyn Fn(&Band, ElementId) -> bool + Send + Sync>),
}

impl MIdeal {
    pub fn from_set(band: Band, elems: BTreeSet<ElementId>) -> Self {
        let gens = minimal_generators(&band, &elems);
        MIdeal { band, gens, backing: Membership::Explicit(Arc::new(elems)) }
    }

    pub fn from_pred(
        band: Band,
        gens: Vec<ElementId>,
        pred: Arc<dyn Fn(&Band, ElementId) -> bool + Send + Sync>,
    ) -> Self {
        MIdeal { band, gens, backing: Membership::Pred(pred) }
    }

    pub fn contains(&self, a: ElementId) -> bool {
        if a.is_zero() {
            return true;
        }
        match &self.backing {
            Membership::Explicit(set) => set.contains(&a),
            Membership::Pred(f) => f(&self.band, a),
            Membership::NonUnit => !self.band.is_unit(a),
            Membership::VarSupport(vars) => {
                let Some((_, m)) = self.band.elem_data(a) else { return false };
                vars.iter().any(|&i| m.0[i] > 0)
            }
            Membership::Divisibility => {
                let Some((_, m)) = self.band.elem_data(a) else { return false };
                let p = self.band.presented().expect("divisibility needs a presented carrier");
                let mask = p.invertible_mask();
                self.gens.iter().any(|&g| {
                    let (gc, gm) = self.band.elem_data(g).expect("generator");
                    gm.divides(&m, &mask) && self.band.base_band().inverse(gc).is_some()
                })
            }
        }
    }

    /// Explicit element list, for finite carriers.
    pub fn elements(&self) -> Result<BTreeSet<ElementId>> {
        match &self.backing {
            Membership::Explicit(set) => Ok((**set).clone()),
            _ => {
                let elems = self.band.elements()?;
                Ok(elems.into_iter().filter(|&a| self.contains(a)).collect())
            }
        }
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.contains(self.band.one())
    }

    /// Inclusion test. Exact for explicit sets; for divisibility-backed
    /// ideals generator containment suffices.
    pub fn subset_of(&self, other: &MIdeal) -> bool {
        match &self.backing {
            Membership::Explicit(set) => set.iter().all(|&a| other.contains(a)),
            _ => self.gens.iter().all(|&g| other.contains(g)),
        }
    }

    pub fn same_as(&self, other: &MIdeal) -> bool {
        self.subset_of(other) && other.subset_of(self)
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self.gens.iter().map(|&g| self.band.elem_name(g)).collect();
        format!("<{}>", names.join(", "))
    }
}

fn minimal_generators(band: &Band, elems: &BTreeSet<ElementId>) -> Vec<ElementId> {
    let Ok(all) = band.elements() else {
        return elems.iter().copied().filter(|a| !a.is_zero()).collect();
    };
    let divides = |b: ElementId, a: ElementId| all.iter().any(|&c| band.mul(c, b) == a);
    let nonzero: Vec<ElementId> = elems.iter().copied().filter(|a| !a.is_zero()).collect();
    let mut out: Vec<ElementId> = vec![];
    'outer: for &a in &nonzero {
        for &b in &nonzero {
            if b != a && divides(b, a) && !divides(a, b) {
                continue 'outer; // a is a proper multiple of b
            }
        }
        // keep only the least element of each associate orbit
        if out.iter().any(|&b| divides(b, a) && divides(a, b)) {
            continue;
        }
        out.push(a);
    }
    out.sort();
    out
}

/// The m-ideal generated by a subset: `{ a*s | a in B, s in S } ∪ {0}`.
pub fn m_ideal_generated(band: &Band, gens: &[ElementId]) -> Result<MIdeal> {
    let mut sorted: Vec<ElementId> = gens.iter().copied().filter(|a| !a.is_zero()).collect();
    sorted.sort();
    sorted.dedup();
    if band.is_table() {
        let elems = band.elements()?;
        let mut set = BTreeSet::new();
        set.insert(band.zero());
        for &s in &sorted {
            for &a in &elems {
                set.insert(band.mul(a, s));
            }
        }
        let mut ideal = MIdeal::from_set(band.clone(), set);
        if ideal.gens.is_empty() && !sorted.is_empty() {
            ideal.gens = sorted;
        }
        return Ok(ideal);
    }
    if band.is_presented() {
        return Ok(MIdeal { band: band.clone(), gens: sorted, backing: Membership::Divisibility });
    }
    Err(Error::UnsupportedCarrier("m-ideals on this carrier".into()))
}

/// A prime m-ideal together with the record of its primality check.
#[derive(Clone)]
pub struct PrimeMIdeal {
    pub ideal: MIdeal,
    /// Human-readable certificate of the complement-multiplicativity
    /// check (what was verified, and how).
    pub certificate: String,
}

impl PrimeMIdeal {
    pub fn contains(&self, a: ElementId) -> bool {
        self.ideal.contains(a)
    }

    pub fn describe(&self) -> String {
        self.ideal.describe()
    }
}

/// Primality test: the complement must contain 1 and be closed under
/// multiplication. Exhaustive on finite carriers; presented carriers are
/// checked structurally on variable supports.
pub fn is_prime(ideal: &MIdeal) -> Result<bool> {
    if ideal.contains(ideal.band.one()) {
        return Ok(false);
    }
    if ideal.band.is_table() {
        let elems = ideal.band.elements()?;
        for &a in &elems {
            for &b in &elems {
                if !ideal.contains(a) && !ideal.contains(b) && ideal.contains(ideal.band.mul(a, b))
                {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    // presented: generators must be variables (up to unit coefficient)
    // whose support is preserved by every rewrite rule
    let p = ideal
        .band
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("primality on this carrier".into()))?;
    let mut vars = BTreeSet::new();
    for &g in &ideal.gens {
        let (c, m) = ideal.band.elem_data(g).ok_or(Error::ForeignElement)?;
        if ideal.band.base_band().inverse(c).is_none() {
            return Ok(false);
        }
        let support: Vec<usize> = m.support().collect();
        if support.len() != 1 || m.0[support[0]] != 1 {
            return Ok(false);
        }
        if p.vars[support[0]].invertible {
            return Ok(false);
        }
        vars.insert(support[0]);
    }
    Ok(rules_respect_support(p, &vars))
}

/// A rule set respects a variable subset K if K-divisibility of the
/// left-hand side and right-hand side agree for every rule; then
/// "normal form touches K" is multiplicative and has multiplicative
/// complement.
pub(crate) fn rules_respect_support(
    p: &crate::core::PresentedMonoid,
    vars: &BTreeSet<usize>,
) -> bool {
    let touches = |m: &Monomial| m.support().any(|i| vars.contains(&i) && m.0[i] > 0);
    p.rules.iter().all(|r| {
        let l = touches(&r.lhs);
        match &r.rhs {
            None => true, // zero absorbs either way
            Some((_, m)) => l == touches(m),
        }
    })
}

/// The unique maximal proper m-ideal: the complement of the unit group.
pub fn maximal_m_ideal(band: &Band) -> Result<PrimeMIdeal> {
    if band.is_trivial() {
        return Err(Error::UnsupportedCarrier(
            "the trivial band has no proper m-ideal".into(),
        ));
    }
    if band.is_table() {
        let elems = band.elements()?;
        let set: BTreeSet<ElementId> =
            elems.into_iter().filter(|&a| !band.is_unit(a)).collect();
        let ideal = MIdeal::from_set(band.clone(), set);
        return Ok(PrimeMIdeal {
            ideal,
            certificate: "complement = unit group, exhaustively verified".into(),
        });
    }
    if band.is_presented() {
        let p = band.presented().unwrap();
        let gens: Vec<ElementId> = (0..p.arity())
            .filter(|&i| !p.vars[i].invertible)
            .map(|i| noninv_generator(band, i))
            .collect();
        let ideal = MIdeal { band: band.clone(), gens, backing: Membership::NonUnit };
        return Ok(PrimeMIdeal {
            ideal,
            certificate: "complement = unit group (structural)".into(),
        });
    }
    Err(Error::UnsupportedCarrier("maximal m-ideal on this carrier".into()))
}

fn noninv_generator(band: &Band, i: usize) -> ElementId {
    let p = band.presented().unwrap();
    if !p.degree0 {
        return band.var_elem(i);
    }
    // degree-0 carrier: use the ratio against the first invertible var
    let j0 = p.vars.iter().position(|v| v.invertible).expect("an inverted variable");
    let mut e = vec![0i32; p.arity()];
    e[i] = 1;
    e[j0] -= p.vars[i].degree as i32;
    band.make_elem(p.base.one(), &Monomial(e)).expect("ratio element")
}

/// Radical of an m-ideal: elements with some power inside.
pub fn radical(ideal: &MIdeal) -> Result<MIdeal> {
    let band = &ideal.band;
    if band.is_table() {
        let elems = band.elements()?;
        let n = elems.len() as u32;
        let set: BTreeSet<ElementId> = elems
            .iter()
            .copied()
            .filter(|&a| (1..=n).any(|k| ideal.contains(band.pow(a, k))))
            .collect();
        return Ok(MIdeal::from_set(band.clone(), set));
    }
    if band.is_presented() {
        let p = band.presented().unwrap();
        if !p.rules.is_empty() {
            return Err(Error::UnsupportedCarrier(
                "radical of presented ideals requires a rule-free presentation".into(),
            ));
        }
        // radical of a monomial ideal: squarefree supports
        let mut gens = vec![];
        for &g in &ideal.gens {
            let (_, m) = band.elem_data(g).ok_or(Error::ForeignElement)?;
            let mut e = vec![0i32; p.arity()];
            for i in m.support() {
                if m.0[i] > 0 {
                    e[i] = 1;
                }
            }
            if let Some(id) = band.make_elem(p.base.one(), &Monomial(e)) {
                gens.push(id);
            }
        }
        gens.sort();
        gens.dedup();
        return Ok(MIdeal { band: band.clone(), gens, backing: Membership::Divisibility });
    }
    Err(Error::UnsupportedCarrier("radical on this carrier".into()))
}

/// All prime m-ideals of a band. Finite carriers are enumerated through
/// saturated multiplicative complements; presented carriers over an
/// idyll enumerate variable subsets validated against the rewrite rules.
pub fn prime_m_ideals(band: &Band) -> Result<Vec<PrimeMIdeal>> {
    if band.is_table() {
        if band.is_trivial() {
            return Ok(vec![]);
        }
        let elems = band.elements()?;
        // Enumerate divisor-closed multiplicative submonoids S (the
        // complements), via their complements directly: subsets I with
        // B*I = I, 1 not in I, whose complement is multiplicative.
        let candidates: Vec<ElementId> =
            elems.iter().copied().filter(|a| !a.is_zero()).collect();
        let mut out: Vec<BTreeSet<ElementId>> = vec![];
        let mut stack: Vec<(usize, BTreeSet<ElementId>)> = vec![(0, BTreeSet::new())];
        while let Some((i, current)) = stack.pop() {
            if i == candidates.len() {
                let mut set = current.clone();
                set.insert(band.zero());
                // saturate under scaling
                let mut changed = true;
                while changed {
                    changed = false;
                    let snapshot: Vec<ElementId> = set.iter().copied().collect();
                    for &a in &snapshot {
                        for &b in &elems {
                            if set.insert(band.mul(a, b)) {
                                changed = true;
                            }
                        }
                    }
                }
                if set.contains(&band.one()) {
                    continue;
                }
                let complement_mult = elems.iter().all(|&a| {
                    elems.iter().all(|&b| {
                        set.contains(&a) || set.contains(&b) || !set.contains(&band.mul(a, b))
                    })
                });
                if complement_mult && !out.contains(&set) {
                    out.push(set);
                }
                continue;
            }
            let mut with = current.clone();
            with.insert(candidates[i]);
            stack.push((i + 1, current));
            stack.push((i + 1, with));
        }
        out.sort();
        out.dedup();
        let mut primes: Vec<PrimeMIdeal> = out
            .into_iter()
            .map(|set| PrimeMIdeal {
                ideal: MIdeal::from_set(band.clone(), set),
                certificate: "multiplicative complement, exhaustive".into(),
            })
            .collect();
        primes.sort_by_key(|p| p.ideal.elements().unwrap().into_iter().collect::<Vec<_>>());
        return Ok(primes);
    }
    let p = band
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("spectrum of this carrier".into()))?;
    if !p.base.is_idyll().is_true() {
        return Err(Error::UnsupportedCarrier(
            "prime enumeration needs an idyll base".into(),
        ));
    }
    if p.rules.iter().any(|r| match &r.rhs {
        None => false,
        Some((c, _)) => *c != p.base.one(),
    }) {
        return Err(Error::UnsupportedCarrier(
            "prime enumeration needs a monoid-algebra presentation".into(),
        ));
    }
    let noninv: Vec<usize> = (0..p.arity()).filter(|&i| !p.vars[i].invertible).collect();
    let mut out = vec![];
    for mask in 0u32..(1 << noninv.len()) {
        let vars: BTreeSet<usize> = noninv
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if !rules_respect_support(p, &vars) {
            continue;
        }
        let gens: Vec<ElementId> = vars.iter().map(|&i| noninv_generator(band, i)).collect();
        let ideal = MIdeal {
            band: band.clone(),
            gens,
            backing: Membership::VarSupport(Arc::new(vars.clone())),
        };
        out.push(PrimeMIdeal {
            ideal,
            certificate: "variable-support prime, rules respected".into(),
        });
    }
    out.sort_by(|a, b| {
        a.ideal
            .gens
            .len()
            .cmp(&b.ideal.gens.len())
            .then(a.ideal.gens.cmp(&b.ideal.gens))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard::{f1pm, krasner, ring_band};

    #[test]
    fn unit_ideal_is_everything() {
        let k = krasner();
        let i = m_ideal_generated(&k, &[k.one()]).unwrap();
        assert!(i.is_unit_ideal());
        assert_eq!(i.elements().unwrap().len(), 2);
    }

    #[test]
    fn empty_ideal_is_zero() {
        let f3 = ring_band(3);
        let i = m_ideal_generated(&f3, &[]).unwrap();
        assert_eq!(i.elements().unwrap().len(), 1);
    }

    #[test]
    fn idyll_has_one_prime() {
        for b in [f1pm(), krasner(), ring_band(3)] {
            let primes = prime_m_ideals(&b).unwrap();
            assert_eq!(primes.len(), 1);
            assert_eq!(primes[0].ideal.elements().unwrap().len(), 1);
        }
    }

    #[test]
    fn maximal_m_ideal_of_krasner_is_zero() {
        let k = krasner();
        let m = maximal_m_ideal(&k).unwrap();
        assert_eq!(m.ideal.elements().unwrap().len(), 1);
    }
}
