use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, RwLock};

use crate::core::{Band, BandMorphism, FormalSum, Mode, Verdict};
use crate::error::{Error, Result};
use crate::ideals::closure;

/// A null ideal of `B⁺`: an ideal containing the null set, closed under
/// the substitution rule (and the fusion rule in fusion mode).
///
/// Generated ideals answer membership by bounded saturation, so `Out`
/// verdicts degrade to `Unknown`; ideals backed by a decision procedure
/// (null kernels into decidable bands) answer exactly.
#[derive(Clone)]
pub struct NullIdeal {
    pub band: Band,
    pub gens: Vec<FormalSum>,
    pub mode: Mode,
    backing: Arc<Backing>,
}

enum Backing {
    Closure {
        /// User generators together with the band's null-set seed.
        seed: Vec<FormalSum>,
        cache: RwLock<BTreeMap<(u32, u32), Arc<BTreeSet<FormalSum>>>>,
    },
    Direct(Arc<dyn Fn(&FormalSum, u32) -> Verdict + Send + Sync>),
}

impl NullIdeal {
    pub fn member(&self, s: &FormalSum, bound: u32) -> Verdict {
        if s.is_zero() {
            return Verdict::In;
        }
        match &*self.backing {
            Backing::Direct(f) => f(s, bound),
            Backing::Closure { seed, cache } => {
                let wcap = closure::default_weight_cap(&self.band, seed, Some(s));
                let key = (bound, wcap);
                {
                    let cache = cache.read().unwrap();
                    if let Some(set) = cache.get(&key) {
                        return if set.contains(s) { Verdict::In } else { Verdict::Unknown };
                    }
                    for ((b, w), set) in cache.iter() {
                        if *b >= bound && *w >= wcap && set.contains(s) {
                            return Verdict::In;
                        }
                    }
                }
                let set = closure::saturate(&self.band, seed, self.mode, bound, Some(wcap));
                let hit = set.contains(s);
                cache.write().unwrap().insert(key, set);
                if hit {
                    Verdict::In
                } else {
                    Verdict::Unknown
                }
            }
        }
    }

    /// Membership as used by the quotient congruence: saturation-backed
    /// ideals treat underived sums as excluded at the bound; an explicit
    /// Unknown from a decision procedure is a hard error.
    pub fn member_for_congruence(&self, s: &FormalSum, bound: u32) -> Result<bool> {
        match self.member(s, bound) {
            Verdict::In => Ok(true),
            Verdict::Out => Ok(false),
            Verdict::Unknown => match &*self.backing {
                Backing::Closure { .. } => Ok(false),
                Backing::Direct(_) => Err(Error::UndecidedCongruence(self.band.sum_name(s))),
            },
        }
    }

    /// All members of degree <= d (and, on presented carriers, weight
    /// bounded by the seed/query cap) that the backing can produce.
    pub fn members_up_to(&self, d: u32, bound: u32) -> Result<Vec<FormalSum>> {
        match &*self.backing {
            Backing::Closure { seed, .. } => {
                let set = closure::saturate(&self.band, seed, self.mode, d.max(bound), None);
                Ok(set.iter().filter(|s| s.degree() <= d).cloned().collect())
            }
            Backing::Direct(_) => {
                let sums = self.band.sums_up_to(d)?;
                Ok(sums
                    .into_iter()
                    .filter(|s| self.member(s, bound).is_in())
                    .collect())
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(&*self.backing, Backing::Direct(_))
    }

    /// For saturation-backed ideals, the full derived set at the given
    /// bound and weight cap (cached). Direct backings return None.
    pub fn closure_set(
        &self,
        bound: u32,
        wcap: u32,
    ) -> Option<Arc<BTreeSet<FormalSum>>> {
        match &*self.backing {
            Backing::Direct(_) => None,
            Backing::Closure { seed, cache } => {
                let key = (bound, wcap);
                if let Some(set) = cache.read().unwrap().get(&key) {
                    return Some(set.clone());
                }
                let set = closure::saturate(&self.band, seed, self.mode, bound, Some(wcap));
                cache.write().unwrap().insert(key, set.clone());
                Some(set)
            }
        }
    }

    /// Degree-<=2 members at the weight cap (for congruence detection).
    pub fn pair_closure(&self, wcap: u32) -> Option<BTreeSet<FormalSum>> {
        match &*self.backing {
            Backing::Direct(_) => None,
            Backing::Closure { seed, .. } => {
                Some(closure::saturate_pairs(&self.band, seed, self.mode, wcap))
            }
        }
    }

    /// Largest monomial weight among the seed sums.
    pub fn seed_weight(&self) -> u32 {
        match &*self.backing {
            Backing::Direct(_) => 0,
            Backing::Closure { seed, .. } => {
                seed.iter().map(|s| self.band.sum_weight(s)).max().unwrap_or(0)
            }
        }
    }
}

/// Seed for saturating: the band's null generators (or all its null sums
/// up to a small degree when only a decision procedure is available).
pub(crate) fn null_seed(band: &Band) -> Vec<FormalSum> {
    if let Some(g) = band.null_gens() {
        return g.sums.clone();
    }
    if band.is_table() {
        let (nulls, _) = band.null_sums_up_to(4).expect("finite carrier");
        return nulls.into_iter().filter(|s| !s.is_zero()).collect();
    }
    vec![]
}

/// The null (or fusion) ideal generated by the given sums.
pub fn null_ideal_generated(
    band: &Band,
    gens: Vec<FormalSum>,
    mode: Mode,
    _bound: u32,
) -> NullIdeal {
    let mut seed = null_seed(band);
    seed.extend(gens.iter().cloned());
    seed.sort();
    seed.dedup();
    NullIdeal {
        band: band.clone(),
        gens,
        mode,
        backing: Arc::new(Backing::Closure { seed, cache: RwLock::new(BTreeMap::new()) }),
    }
}

/// Null ideal with an exact membership procedure.
pub fn null_ideal_direct(
    band: &Band,
    gens: Vec<FormalSum>,
    mode: Mode,
    f: Arc<dyn Fn(&FormalSum, u32) -> Verdict + Send + Sync>,
) -> NullIdeal {
    NullIdeal { band: band.clone(), gens, mode, backing: Arc::new(Backing::Direct(f)) }
}

/// The null kernel of a morphism: preimage of the target's null set
/// under the linear extension. Exact whenever the target decides.
pub fn nullker(f: &BandMorphism, _bound: u32) -> NullIdeal {
    let source = f.source.clone();
    let target = f.target.clone();
    let fm = f.clone();
    let mode = if target.fusion_flag() == crate::core::TriState::True {
        Mode::Fusion
    } else {
        Mode::Null
    };
    NullIdeal {
        band: source,
        gens: vec![],
        mode,
        backing: Arc::new(Backing::Direct(Arc::new(move |s: &FormalSum, bound: u32| {
            target.is_null_bounded(&fm.apply_sum(s), bound)
        }))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard::f1pm;
    use crate::core::ElementId;

    #[test]
    fn generated_ideal_over_f1pm() {
        let b = f1pm();
        let one = b.one();
        let two = FormalSum::from_terms([(one, 2)]);
        let three = FormalSum::from_terms([(one, 3)]);
        let i = null_ideal_generated(&b, vec![two.clone(), three.clone()], Mode::Null, 6);
        assert!(i.member(&two, 6).is_in());
        assert!(i.member(&three, 6).is_in());
        // 1 - 1 comes from the ambient null set
        let m1 = b.neg(one);
        assert!(i.member(&FormalSum::from_terms([(one, 1), (m1, 1)]), 6).is_in());
        // five ones = 2 + 3
        assert!(i.member(&FormalSum::from_terms([(one, 5)]), 6).is_in());
        // a bare 1 is never derived
        assert_eq!(i.member(&FormalSum::singleton(one), 6), Verdict::Unknown);
        assert_eq!(ElementId(0), b.zero());
    }
}
