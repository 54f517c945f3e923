use std::collections::BTreeMap;
use std::sync::Arc;

use crate::core::monoid::{Monomial, RewriteRule, TableMonoid, VarDecl};
use crate::core::{
    Band, BandBuilder, BandMorphism, Carrier, ElementId, FormalSum, MorphismMap, NullGens,
    NullOracle, TriState, Verdict, DEFAULT_BOUND,
};
use crate::error::{Error, Result};
use crate::ideals::mideal::PrimeMIdeal;
use crate::ideals::nullideal::null_seed;

/// Localization `S^{-1}B` of a finite band at a multiplicative subset.
///
/// The carrier is `(S x B)/~` with `(s,a) ~ (s',a')` iff `tsa' = ts'a`
/// for some `t` in S; the null set is generated by the images of null
/// sums, which over a decidable band admits an exact description by
/// clearing denominators.
pub fn localization(band: &Band, s_gens: &[ElementId]) -> Result<(Band, BandMorphism)> {
    if !band.is_table() {
        if let [h] = s_gens {
            return finite_localization(band, *h);
        }
        return Err(Error::UnsupportedCarrier(
            "localization of a presented band at a general set".into(),
        ));
    }
    let elems = band.elements()?;
    let _ = elems.len();
    // multiplicative closure of the given set, always containing 1
    let mut s_set: Vec<ElementId> = vec![band.one()];
    s_set.extend(s_gens.iter().copied());
    s_set.sort();
    s_set.dedup();
    loop {
        let mut grew = false;
        let snapshot = s_set.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                let p = band.mul(a, b);
                if !s_set.contains(&p) {
                    s_set.push(p);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
        s_set.sort();
        s_set.dedup();
    }

    // pairs (s, a) indexed s * n + a
    let pairs: Vec<(ElementId, ElementId)> = s_set
        .iter()
        .flat_map(|&s| elems.iter().map(move |&a| (s, a)))
        .collect();
    let pair_index: BTreeMap<(ElementId, ElementId), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let equivalent = |(s, a): (ElementId, ElementId), (s2, a2): (ElementId, ElementId)| {
        s_set
            .iter()
            .any(|&t| band.mul(band.mul(t, s), a2) == band.mul(band.mul(t, s2), a))
    };
    let mut class_of: Vec<usize> = (0..pairs.len()).collect();
    for i in 0..pairs.len() {
        for j in 0..i {
            if class_of[j] == j && equivalent(pairs[i], pairs[j]) {
                class_of[i] = j;
                break;
            }
        }
    }
    let mut roots: Vec<usize> = class_of.iter().copied().collect();
    roots.sort();
    roots.dedup();
    // order classes: zero, one, then by (a, s) of least member
    let least: BTreeMap<usize, (ElementId, ElementId)> = roots
        .iter()
        .map(|&r| {
            let best = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| class_of[*i] == r)
                .map(|(_, &(s, a))| (a, s))
                .min()
                .unwrap();
            (r, (best.1, best.0)) // store as (s, a)
        })
        .collect();
    let zero_root = class_of[pair_index[&(band.one(), band.zero())]];
    let one_root = class_of[pair_index[&(band.one(), band.one())]];
    let mut ordered = vec![zero_root];
    if one_root != zero_root {
        ordered.push(one_root);
    }
    let mut rest: Vec<usize> = roots.into_iter().filter(|r| !ordered.contains(r)).collect();
    rest.sort_by_key(|r| {
        let (s, a) = least[r];
        (a, s)
    });
    ordered.extend(rest);
    let class_id: BTreeMap<usize, u32> =
        ordered.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let m = ordered.len();
    let reps: Vec<(ElementId, ElementId)> = ordered.iter().map(|r| least[r]).collect();

    let cls = |s: ElementId, a: ElementId| -> u32 {
        class_id[&class_of[pair_index[&(s, a)]]]
    };
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (s1, a1) = reps[i];
            let (s2, a2) = reps[j];
            table[i][j] = cls(band.mul(s1, s2), band.mul(a1, a2));
        }
    }
    let names: Vec<String> = reps
        .iter()
        .map(|&(s, a)| {
            if s == band.one() {
                band.elem_name(a)
            } else {
                format!("{}/{}", band.elem_name(a), band.elem_name(s))
            }
        })
        .collect();
    let tm = TableMonoid::new(table, names)?;

    // membership of a sum of fractions: clear denominators with some
    // u in S, lift termwise to denominator-one representatives, and ask
    // the parent about every lift
    let parent = band.clone();
    let s_all = s_set.clone();
    let reps_cl = reps.clone();
    // denominator-one members per class
    let mut denom1: Vec<Vec<ElementId>> = vec![vec![]; m];
    for &a in &elems {
        denom1[cls(band.one(), a) as usize].push(a);
    }
    let mul_class = {
        let table: Vec<Vec<u32>> = (0..m)
            .map(|i| (0..m).map(|j| {
                let (s1, a1) = reps_cl[i];
                let (s2, a2) = reps_cl[j];
                cls(band.mul(s1, s2), band.mul(a1, a2))
            }).collect())
            .collect();
        table
    };
    let one_class_of_s: BTreeMap<ElementId, u32> =
        s_all.iter().map(|&s| (s, cls(band.one(), s))).collect();
    let exact = band.has_direct_oracle();
    let oracle = move |_q: &Band, sum: &FormalSum, bound: u32| -> Verdict {
        if sum.is_zero() {
            return Verdict::In;
        }
        let mut best = if exact { Verdict::Out } else { Verdict::Unknown };
        for &u in &s_all {
            let ucls = one_class_of_s[&u] as usize;
            let scaled: Vec<u32> = sum
                .iter_expanded()
                .map(|t| mul_class[ucls][t.index()])
                .collect();
            if scaled.iter().any(|&c| denom1[c as usize].is_empty() && c != 0) {
                continue;
            }
            // enumerate lifts
            let lists: Vec<&Vec<ElementId>> = scaled
                .iter()
                .filter(|&&c| c != 0)
                .map(|&c| &denom1[c as usize])
                .collect();
            let mut choice = vec![0usize; lists.len()];
            'outer: loop {
                let lifted =
                    FormalSum::from_terms(lists.iter().zip(&choice).map(|(l, &c)| (l[c], 1)));
                match parent.is_null_bounded(&lifted, bound) {
                    Verdict::In => return Verdict::In,
                    Verdict::Unknown => {
                        if best == Verdict::Out {
                            best = Verdict::Unknown;
                        }
                    }
                    Verdict::Out => {}
                }
                let mut t = 0;
                loop {
                    if t == lists.len() {
                        break 'outer;
                    }
                    choice[t] += 1;
                    if choice[t] < lists[t].len() {
                        break;
                    }
                    choice[t] = 0;
                    t += 1;
                }
            }
        }
        best
    };
    let mut builder = BandBuilder::new(
        format!("{}[S^-1]", band.name()),
        Carrier::Table(tm),
        NullOracle::Defer(Arc::new(oracle)),
    );
    builder.degree_complete = if band.has_direct_oracle() { Some(0) } else { None };
    builder.fusion = band.fusion_flag();
    let loc = builder.build();
    let neg: Vec<ElementId> = (0..m)
        .map(|i| {
            let (s, a) = reps[i];
            ElementId(cls(s, band.neg(a)))
        })
        .collect();
    loc.set_neg_table(neg);
    let images: Vec<ElementId> = elems.iter().map(|&a| ElementId(cls(band.one(), a))).collect();
    let iota = BandMorphism::new(band.clone(), loc.clone(), MorphismMap::Table(images));
    iota.set_verified(TriState::True, DEFAULT_BOUND);
    let mut gens: Vec<FormalSum> = null_seed(band)
        .iter()
        .map(|s| iota.apply_sum(s))
        .filter(|s| !s.is_zero())
        .collect();
    gens.sort();
    gens.dedup();
    loc.set_null_gens(NullGens { sums: gens, mode: band.null_mode() });
    Ok((loc, iota))
}

/// Finite localization `B[h^{-1}]`.
pub fn finite_localization(band: &Band, h: ElementId) -> Result<(Band, BandMorphism)> {
    if h.is_zero() {
        // inverting 0 collapses everything
        let t = crate::core::standard::trivial();
        let n = band.elements().map(|e| e.len()).unwrap_or(0);
        if band.is_table() {
            let images = vec![t.zero(); n];
            let pi = BandMorphism::new(band.clone(), t.clone(), MorphismMap::Table(images));
            return Ok((t, pi));
        }
        return Err(Error::UnsupportedCarrier("inverting 0 in a presented band".into()));
    }
    if band.is_table() {
        // S = powers of h
        return localization(band, &[h]).map(|(b, i)| (b, i));
    }
    let p = band
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("localization of this carrier".into()))?;
    if band.is_unit(h) {
        let (q, pi) = reclone_presented(band, p.clone())?;
        return Ok((q, pi));
    }
    let (c, mono) = band.elem_data(h).ok_or(Error::ForeignElement)?;
    let base = band.base_band();
    let cinv = base.inverse(c).ok_or(Error::NotIdyll)?;
    let _ = &base;
    let support: Vec<usize> = mono.support().collect();
    if support.len() == 1 && mono.0[support[0]] == 1 && c == base.one() {
        // invert a bare variable by flagging it
        let mut monoid = p.clone();
        monoid.vars[support[0]].invertible = true;
        let (q, pi) = reclone_presented(band, monoid)?;
        return Ok((q, pi));
    }
    // adjoin an inverse variable with the relation h * h' = 1
    let mut monoid = p.clone();
    let arity = p.arity();
    monoid.vars.push(VarDecl {
        name: format!("inv({})", band.elem_name(h)),
        invertible: false,
        degree: -mono.graded_degree(&p.var_degrees()),
    });
    for r in &mut monoid.rules {
        r.lhs.0.push(0);
        if let Some((_, m)) = &mut r.rhs {
            m.0.push(0);
        }
    }
    let mut lhs = mono.0.clone();
    lhs.push(1);
    monoid.rules.push(RewriteRule {
        lhs: Monomial(lhs),
        rhs: Some((cinv, Monomial::one(arity + 1))),
    });
    monoid.check_rules()?;
    let mut builder = BandBuilder::new(
        format!("{}[1/{}]", band.name(), band.elem_name(h)),
        Carrier::Presented(monoid),
        match band.has_direct_oracle() {
            true => NullOracle::Direct(Arc::new(crate::constructions::monomial_grouping_pred)),
            false => NullOracle::Generated,
        },
    );
    builder.fusion = band.fusion_flag();
    let q = builder.build();
    let vars: Vec<ElementId> = (0..arity).map(|i| q.var_elem(i)).collect();
    let pi = BandMorphism::new(
        band.clone(),
        q.clone(),
        MorphismMap::Generators {
            base: Box::new(crate::core::base_inclusion(&q)),
            vars,
        },
    );
    pi.set_verified(TriState::True, DEFAULT_BOUND);
    transfer_null_gens(band, &q, &pi);
    Ok((q, pi))
}

/// Fresh presented band with the given monoid, inheriting the oracle
/// style and null generators of the original.
fn reclone_presented(
    band: &Band,
    monoid: crate::core::PresentedMonoid,
) -> Result<(Band, BandMorphism)> {
    let arity = monoid.arity();
    let mut builder = BandBuilder::new(
        format!("{}[loc]", band.name()),
        Carrier::Presented(monoid),
        match band.has_direct_oracle() {
            true => NullOracle::Direct(Arc::new(crate::constructions::monomial_grouping_pred)),
            false => NullOracle::Generated,
        },
    );
    builder.fusion = band.fusion_flag();
    builder.hereditary_fusion = band.hereditary_flag();
    let q = builder.build();
    let vars: Vec<ElementId> = (0..arity).map(|i| q.var_elem(i)).collect();
    let pi = BandMorphism::new(
        band.clone(),
        q.clone(),
        MorphismMap::Generators {
            base: Box::new(crate::core::base_inclusion(&q)),
            vars,
        },
    );
    pi.set_verified(TriState::True, DEFAULT_BOUND);
    transfer_null_gens(band, &q, &pi);
    Ok((q, pi))
}

fn transfer_null_gens(band: &Band, q: &Band, pi: &BandMorphism) {
    let mut gens: Vec<FormalSum> = null_seed(band)
        .iter()
        .map(|s| pi.apply_sum(s))
        .filter(|s| !s.is_zero())
        .collect();
    gens.sort();
    gens.dedup();
    q.set_null_gens(NullGens { sums: gens, mode: band.null_mode() });
}

/// Stalk of Spec B at a prime: the localization at its complement.
pub fn stalk_band(band: &Band, prime: &PrimeMIdeal) -> Result<(Band, BandMorphism)> {
    if band.is_table() {
        let elems = band.elements()?;
        let complement: Vec<ElementId> = elems
            .into_iter()
            .filter(|&a| !prime.contains(a))
            .collect();
        return localization(band, &complement);
    }
    let p = band
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("stalks on this carrier".into()))?;
    // invert every variable outside the prime's support
    let mut monoid = p.clone();
    for (i, v) in monoid.vars.iter_mut().enumerate() {
        let var = band.var_elem(i);
        if !prime.contains(var) {
            v.invertible = true;
        }
        let _ = v;
    }
    reclone_presented(band, monoid)
}
