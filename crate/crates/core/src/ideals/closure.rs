//! Bounded saturation of generated null and fusion ideals.
//!
//! A null ideal is an ideal of `B⁺` containing the null set and closed
//! under the substitution rule (SR); a fusion ideal additionally
//! satisfies the fusion rule (FR). Membership is only semi-decidable, so
//! this module saturates the generator set under
//!
//!   (i) scaling by band elements,
//!   (ii) addition of two derived sums,
//!   (iii) (SR), and
//!   (iv) (FR) when the mode is fusion,
//!
//! discarding sums whose degree exceeds the bound (and, on presented
//! carriers, sums whose terms exceed a monomial weight cap). Everything
//! derived is a genuine member; absence only means "not derived at this
//! bound".

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core::{Band, FormalSum, Mode};

/// Hard cap on the saturation set, to keep worst cases bounded. Sums
/// derived before the cap is hit are still sound.
const MAX_CLOSURE: usize = 120_000;

/// Saturates `seed` under the closure rules. The result contains exactly
/// the derivable sums of degree <= `degree_bound` whose terms stay within
/// `weight_cap` (presented carriers only).
pub fn saturate(
    band: &Band,
    seed: &[FormalSum],
    mode: Mode,
    degree_bound: u32,
    weight_cap: Option<u32>,
) -> Arc<BTreeSet<FormalSum>> {
    let wcap = weight_cap.unwrap_or_else(|| default_weight_cap(band, seed, None));
    let scalars = band.scaling_elements(wcap);
    let fits = |s: &FormalSum| s.degree() <= degree_bound && band.sum_weight(s) <= wcap;

    let mut seen: BTreeSet<FormalSum> = BTreeSet::new();
    let mut list: Vec<FormalSum> = vec![];
    let push = |s: FormalSum, seen: &mut BTreeSet<FormalSum>, list: &mut Vec<FormalSum>| {
        if seen.len() >= MAX_CLOSURE {
            return;
        }
        if fits(&s) && seen.insert(s.clone()) {
            list.push(s);
        }
    };

    push(FormalSum::zero(), &mut seen, &mut list);
    for g in seed {
        push(g.clone(), &mut seen, &mut list);
    }

    // semi-naive: when item i is processed, it is combined with every
    // item of index <= i, so each unordered pair fires exactly once
    let mut i = 0;
    while i < list.len() {
        if seen.len() >= MAX_CLOSURE {
            break;
        }
        let x = list[i].clone();
        // (i) scaling
        for &a in &scalars {
            push(band.scale_sum(a, &x), &mut seen, &mut list);
        }
        // (ii) addition, (iii)/(iv) substitution and fusion
        let mut j = 0;
        while j <= i {
            let t = list[j].clone();
            if x.degree() + t.degree() <= degree_bound {
                push(x.add(&t), &mut seen, &mut list);
            }
            fuse_into(band, mode, &x, &t, degree_bound, &mut |s| {
                push(s, &mut seen, &mut list)
            });
            fuse_into(band, mode, &t, &x, degree_bound, &mut |s| {
                push(s, &mut seen, &mut list)
            });
            j += 1;
        }
        i += 1;
    }
    Arc::new(seen)
}

/// Applies (SR)/(FR) with `x` in the role `sum(a_i) - c` and `t` in the
/// role `c + sum(b_j)`, for every choice of the pivot term.
fn fuse_into(
    band: &Band,
    mode: Mode,
    x: &FormalSum,
    t: &FormalSum,
    degree_bound: u32,
    emit: &mut impl FnMut(FormalSum),
) {
    if x.degree() == 0 || t.degree() == 0 {
        return;
    }
    if mode == Mode::Null && x.degree() != 2 {
        // (SR) is (FR) restricted to a single a-term.
        return;
    }
    if x.degree() + t.degree() > degree_bound + 2 {
        return;
    }
    for v in x.support() {
        let c = band.neg(v);
        if !t.contains(c) {
            continue;
        }
        let s = x.remove_one(v).unwrap().add(&t.remove_one(c).unwrap());
        emit(s);
    }
}

/// Saturation restricted to sums of degree <= 2 (elements identified
/// with zero, and congruent pairs). Used by quotient constructions.
///
/// New pairs come from scaling a pair, from (SR)/(FR) between pairs, or
/// from a higher-degree member shedding terms one at a time against the
/// pairs and singletons found so far. The higher-degree pool carries the
/// seeds of degree 3 and 4 with their scalings and rewrites; pool-pool
/// fusion is not applied.
pub fn saturate_pairs(
    band: &Band,
    seed: &[FormalSum],
    _mode: Mode,
    weight_cap: u32,
) -> BTreeSet<FormalSum> {
    // (SR) on a pair coincides with (FR); singleton absorption (a = 0)
    // is valid in both modes.
    let scalars = band.scaling_elements(weight_cap);
    let fits = |s: &FormalSum| s.degree() <= 2 && band.sum_weight(s) <= weight_cap;
    let fits_high =
        |s: &FormalSum| (3..=4).contains(&s.degree()) && band.sum_weight(s) <= weight_cap;
    let mut seen: BTreeSet<FormalSum> = BTreeSet::new();
    let mut list: Vec<FormalSum> = vec![];
    let mut high_seen: BTreeSet<FormalSum> = BTreeSet::new();
    let mut high: Vec<FormalSum> = vec![];
    let push = |s: FormalSum,
                seen: &mut BTreeSet<FormalSum>,
                list: &mut Vec<FormalSum>,
                high_seen: &mut BTreeSet<FormalSum>,
                high: &mut Vec<FormalSum>| {
        if seen.len() + high_seen.len() >= MAX_CLOSURE {
            return;
        }
        if fits(&s) {
            if seen.insert(s.clone()) {
                list.push(s);
            }
        } else if fits_high(&s) && high_seen.insert(s.clone()) {
            high.push(s);
        }
    };
    push(FormalSum::zero(), &mut seen, &mut list, &mut high_seen, &mut high);
    for g in seed {
        push(g.clone(), &mut seen, &mut list, &mut high_seen, &mut high);
    }
    loop {
        let before = (seen.len(), high_seen.len());
        // close the pair pool
        let mut i = 0;
        while i < list.len() {
            let x = list[i].clone();
            for &a in &scalars {
                push(band.scale_sum(a, &x), &mut seen, &mut list, &mut high_seen, &mut high);
            }
            let mut j = 0;
            while j <= i {
                let t = list[j].clone();
                fuse_into(band, Mode::Fusion, &x, &t, 2, &mut |s| {
                    push(s, &mut seen, &mut list, &mut high_seen, &mut high)
                });
                fuse_into(band, Mode::Fusion, &t, &x, 2, &mut |s| {
                    push(s, &mut seen, &mut list, &mut high_seen, &mut high)
                });
                j += 1;
            }
            i += 1;
        }
        // let the higher pool shed terms against pairs and singletons
        let mut h = 0;
        while h < high.len() {
            let x = high[h].clone();
            for &a in &scalars {
                push(band.scale_sum(a, &x), &mut seen, &mut list, &mut high_seen, &mut high);
            }
            for t in list.clone() {
                fuse_into(band, Mode::Fusion, &x, &t, 4, &mut |s| {
                    push(s, &mut seen, &mut list, &mut high_seen, &mut high)
                });
                fuse_into(band, Mode::Fusion, &t, &x, 4, &mut |s| {
                    push(s, &mut seen, &mut list, &mut high_seen, &mut high)
                });
            }
            h += 1;
        }
        if (seen.len(), high_seen.len()) == before {
            break;
        }
    }
    seen
}

/// Weight cap heuristic: generators and query must fit, with slack for
/// intermediate scalings.
pub fn default_weight_cap(band: &Band, gens: &[FormalSum], query: Option<&FormalSum>) -> u32 {
    if !band.is_presented() {
        return 0;
    }
    let gw = gens.iter().map(|s| band.sum_weight(s)).max().unwrap_or(0);
    let qw = query.map_or(0, |q| band.sum_weight(q));
    gw.max(qw) + 2
}

/// Bounded membership of `query` in the ideal generated by `gens` (in
/// the given mode). Saturations are cached per band.
pub fn derives(band: &Band, gens: &[FormalSum], mode: Mode, bound: u32, query: &FormalSum) -> bool {
    if query.is_zero() {
        return true;
    }
    if query.degree() > bound {
        return false;
    }
    let wcap = default_weight_cap(band, gens, Some(query));
    let key = (bound, wcap, mode as u8);
    {
        let cache = band.0.closure_cache.read().unwrap();
        if let Some(set) = cache.get(&key) {
            return set.contains(query);
        }
        // A larger cached closure also answers positively.
        for ((b, w, m), set) in cache.iter() {
            if *m == mode as u8 && *b >= bound && *w >= wcap && set.contains(query) {
                return true;
            }
        }
    }
    let set = saturate(band, gens, mode, bound, Some(wcap));
    let hit = set.contains(query);
    band.0.closure_cache.write().unwrap().insert(key, set);
    hit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard_band;

    #[test]
    fn ideal_contains_zero_and_generators() {
        let b = standard_band("F1pm").unwrap();
        let one = b.one();
        let m1 = b.neg(one);
        let g = FormalSum::from_terms([(one, 2)]); // 1+1
        let set = saturate(&b, &[g.clone()], Mode::Null, 6, None);
        assert!(set.contains(&FormalSum::zero()));
        assert!(set.contains(&g));
        // scaled by -1
        assert!(set.contains(&FormalSum::from_terms([(m1, 2)])));
        // 1+1+1+1 by addition
        assert!(set.contains(&FormalSum::from_terms([(one, 4)])));
    }

    #[test]
    fn substitution_rule_fires() {
        // Over F1pm[x]: from x^2+1 and its scalings, (SR) yields x^4-1.
        let b = crate::constructions::free_algebra(&standard_band("F1pm").unwrap(), &["x"]).unwrap();
        let one = b.one();
        let x = b.var_elem(0);
        let x2 = b.mul(x, x);
        let g = FormalSum::from_terms([(x2, 1), (one, 1)]);
        let x4 = b.mul(x2, x2);
        let target = FormalSum::from_terms([(x4, 1), (b.neg(one), 1)]);
        assert!(derives(&b, &[g], Mode::Null, 6, &target));
    }
}
