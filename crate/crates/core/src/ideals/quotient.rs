use std::collections::BTreeMap;
use std::sync::Arc;

use crate::core::monoid::{Monomial, RewriteRule, TableMonoid};
use crate::core::{
    Band, BandBuilder, BandMorphism, Carrier, ElementId, FormalSum, Mode, MorphismMap, NullGens,
    NullOracle, TriState, Verdict, DEFAULT_BOUND,
};
use crate::error::{Error, Result};
use crate::ideals::nullideal::{null_seed, NullIdeal};

/// Batch answer to "is this degree-<=2 sum in the ideal", sharing one
/// saturation across all queries.
struct CongruenceOracle<'a> {
    ideal: &'a NullIdeal,
    set: Option<std::sync::Arc<std::collections::BTreeSet<FormalSum>>>,
}

impl<'a> CongruenceOracle<'a> {
    fn new(ideal: &'a NullIdeal, max_query_weight: u32) -> Self {
        let wcap = ideal.seed_weight().max(max_query_weight) + 2;
        let set = ideal.pair_closure(wcap).map(std::sync::Arc::new);
        CongruenceOracle { ideal, set }
    }

    fn congruent(&self, s: &FormalSum) -> Result<bool> {
        match &self.set {
            Some(set) => Ok(set.contains(s)),
            None => self.ideal.member_for_congruence(s, DEFAULT_BOUND),
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn join(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Quotient of a band by a null ideal: the carrier is `B/~` with
/// `a ~ b` iff `a - b` lies in the ideal, and a sum of classes is null
/// iff some (equivalently, any) representative sum lies in the ideal.
pub fn quotient(band: &Band, ideal: &NullIdeal) -> Result<(Band, BandMorphism)> {
    quotient_named(&format!("{}/I", band.name()), band, ideal)
}

pub fn quotient_named(name: &str, band: &Band, ideal: &NullIdeal) -> Result<(Band, BandMorphism)> {
    assert!(ideal.band == *band, "ideal belongs to another band");
    if band.is_table() {
        quotient_table(name, band, ideal)
    } else if band.is_presented() {
        quotient_presented(name, band, ideal)
    } else {
        Err(Error::UnsupportedCarrier("quotient of this carrier".into()))
    }
}

fn quotient_table(name: &str, band: &Band, ideal: &NullIdeal) -> Result<(Band, BandMorphism)> {
    let elems = band.elements()?;
    let n = elems.len();
    let oracle = CongruenceOracle::new(ideal, 0);
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = band.diff(ElementId(i as u32), ElementId(j as u32));
            if oracle.congruent(&d)? {
                uf.join(i, j);
            }
        }
        if oracle.congruent(&FormalSum::singleton(ElementId(i as u32)))? {
            uf.join(i, 0);
        }
    }
    let class_of: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    build_quotient_from_classes(name, band, ideal, &elems, &class_of)
}

/// Shared finish: given a congruence on a finite element list (roots in
/// `class_of`), produce the quotient table band and projection.
fn build_quotient_from_classes(
    name: &str,
    band: &Band,
    ideal: &NullIdeal,
    elems: &[ElementId],
    class_of: &[usize],
) -> Result<(Band, BandMorphism)> {
    let index_of = |a: ElementId| elems.iter().position(|&e| e == a);
    let zero_pos = index_of(band.zero()).expect("zero is an element");
    let one_pos = index_of(band.one()).expect("one is an element");

    // order classes: zero first, then one's class, then by least member
    let mut roots: Vec<usize> = class_of.to_vec();
    roots.sort();
    roots.dedup();
    let mut ordered: Vec<usize> = vec![class_of[zero_pos]];
    if class_of[one_pos] != class_of[zero_pos] {
        ordered.push(class_of[one_pos]);
    }
    for &r in &roots {
        if !ordered.contains(&r) {
            ordered.push(r);
        }
    }
    let class_id: BTreeMap<usize, u32> = ordered
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, i as u32))
        .collect();
    let m = ordered.len();
    // representatives: least member of each class
    let mut reps: Vec<Option<ElementId>> = vec![None; m];
    for (pos, &root) in class_of.iter().enumerate() {
        let cid = class_id[&root] as usize;
        if reps[cid].is_none_or(|r| elems[pos] < r) {
            reps[cid] = Some(elems[pos]);
        }
    }
    let mut reps: Vec<ElementId> = reps.into_iter().map(|r| r.unwrap()).collect();
    reps[0] = band.zero();

    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let p = band.mul(reps[i], reps[j]);
            let pos = index_of(p).ok_or_else(|| {
                Error::UndecidedCongruence(format!(
                    "product {} escapes the explored carrier",
                    band.elem_name(p)
                ))
            })?;
            table[i][j] = class_id[&class_of[pos]];
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| band.elem_name(r)).collect();
    let tm = TableMonoid::new(table, names)?;

    let ideal_cl = ideal.clone();
    let reps_cl = reps.clone();
    let mut builder = BandBuilder::new(
        name,
        Carrier::Table(tm),
        NullOracle::Defer(Arc::new(move |_q: &Band, s: &FormalSum, bound: u32| {
            let lifted = FormalSum::from_terms(s.iter().map(|(a, k)| (reps_cl[a.index()], k)));
            ideal_cl.member(&lifted, bound)
        })),
    );
    builder.fusion = if ideal.mode == Mode::Fusion { TriState::True } else { TriState::Unknown };
    builder.degree_complete = if ideal.is_exact() { Some(0) } else { None };
    let q = builder.build();
    // negation descends from the parent
    let neg: Vec<ElementId> = (0..m)
        .map(|i| {
            let p = band.neg(reps[i]);
            let pos = index_of(p).expect("negation stays in the carrier");
            ElementId(class_id[&class_of[pos]])
        })
        .collect();
    q.set_neg_table(neg);

    // projection map
    let images: Vec<ElementId> = (0..elems.len())
        .map(|pos| ElementId(class_id[&class_of[pos]]))
        .collect();
    // note: this assumes elems are the ids 0..n in order for table bands
    let pi = BandMorphism::new(band.clone(), q.clone(), MorphismMap::Table(images));
    pi.set_verified(TriState::True, DEFAULT_BOUND);

    // null generators: projected seed
    let mut gens: Vec<FormalSum> = ideal
        .gens
        .iter()
        .chain(null_seed(band).iter())
        .map(|s| pi.apply_sum(s))
        .filter(|s| !s.is_zero())
        .collect();
    gens.sort();
    gens.dedup();
    q.set_null_gens(NullGens { sums: gens, mode: ideal.mode });
    Ok((q, pi))
}

fn quotient_presented(name: &str, band: &Band, ideal: &NullIdeal) -> Result<(Band, BandMorphism)> {
    let p = band.presented().unwrap();
    let seed_weight = ideal
        .gens
        .iter()
        .chain(null_seed(band).iter())
        .map(|s| band.sum_weight(s))
        .max()
        .unwrap_or(0);
    let w = seed_weight.max(2) + 1;
    let mut explored: Vec<ElementId> = band.scaling_elements(w);
    explored.insert(0, band.zero());

    // detect congruent pairs and elements identified with zero
    let oracle = CongruenceOracle::new(ideal, w);
    let mut uf = UnionFind::new(explored.len());
    let mut merged = false;
    for i in 1..explored.len() {
        if oracle.congruent(&FormalSum::singleton(explored[i]))? {
            uf.join(i, 0);
            merged = true;
        }
        for j in (i + 1)..explored.len() {
            let d = band.diff(explored[i], explored[j]);
            if oracle.congruent(&d)? {
                uf.join(i, j);
                merged = true;
            }
        }
    }

    if !merged {
        // carrier unchanged: same presentation, stronger null set
        let monoid = p.clone();
        let mut builder =
            BandBuilder::new(name, Carrier::Presented(monoid), NullOracle::Generated);
        builder.fusion =
            if ideal.mode == Mode::Fusion { TriState::True } else { TriState::Unknown };
        builder.idyll = band.is_idyll();
        let q = builder.build();
        let pi = generator_projection(band, &q);
        let gens = transfer_sums(band, &pi, ideal);
        q.set_null_gens(NullGens { sums: gens, mode: ideal.mode });
        return Ok((q, pi.clone()));
    }

    let class_of: Vec<usize> = (0..explored.len()).map(|i| uf.find(i)).collect();

    // try to materialize a finite quotient: representatives of least
    // weight, all of whose pairwise products stay in the explored set
    if let Some(result) = try_materialize(name, band, ideal, &explored, &class_of)? {
        return Ok(result);
    }

    // compile the detected identifications into rewrite rules
    let mut new_rules: Vec<RewriteRule> = vec![];
    for i in 1..explored.len() {
        let root = class_of[i];
        if root == i {
            continue;
        }
        let (ci, mi) = band.elem_data(explored[i]).unwrap();
        if root == 0 {
            new_rules.push(RewriteRule { lhs: mi, rhs: None });
            continue;
        }
        let (cr, mr) = band.elem_data(explored[root]).unwrap();
        if mi == mr {
            return Err(Error::UndecidedCongruence(format!(
                "coefficient identification {} ~ {} is not a monomial rewrite",
                band.elem_name(explored[i]),
                band.elem_name(explored[root])
            )));
        }
        // orient from the larger monomial to the smaller one
        let (lhs, lc, rhs, rc) = if (mi.weight(), mi.0.clone()) > (mr.weight(), mr.0.clone()) {
            (mi, ci, mr, cr)
        } else {
            (mr, cr, mi, ci)
        };
        let base = band.base_band();
        let c = base.mul(base.inverse(lc).ok_or(Error::NotIdyll)?, rc);
        new_rules.push(RewriteRule { lhs, rhs: Some((c, rhs)) });
    }
    new_rules.sort_by_key(|r| (r.lhs.weight(), r.lhs.0.clone()));
    new_rules.dedup_by(|a, b| a.lhs == b.lhs);
    let mut monoid = p.clone();
    monoid.rules.extend(new_rules);
    monoid.check_rules()?;
    let mut builder = BandBuilder::new(name, Carrier::Presented(monoid), NullOracle::Generated);
    builder.fusion = if ideal.mode == Mode::Fusion { TriState::True } else { TriState::Unknown };
    let q = builder.build();
    let pi = generator_projection(band, &q);
    let gens = transfer_sums(band, &pi, ideal);
    q.set_null_gens(NullGens { sums: gens, mode: ideal.mode });
    Ok((q, pi))
}

fn try_materialize(
    name: &str,
    band: &Band,
    ideal: &NullIdeal,
    explored: &[ElementId],
    class_of: &[usize],
) -> Result<Option<(Band, BandMorphism)>> {
    let mut roots: Vec<usize> = class_of.to_vec();
    roots.sort();
    roots.dedup();
    if roots.len() > 96 {
        return Ok(None);
    }
    // representative of least weight per class
    let weight = |a: ElementId| band.elem_data(a).map_or(0, |(_, m)| m.weight());
    let mut rep: BTreeMap<usize, ElementId> = BTreeMap::new();
    for (i, &root) in class_of.iter().enumerate() {
        let e = explored[i];
        let better = match rep.get(&root) {
            None => true,
            Some(&r) => (weight(e), e) < (weight(r), r),
        };
        if better {
            rep.insert(root, e);
        }
    }
    // products of representatives must be classifiable
    let lookup = |x: ElementId| -> Option<usize> {
        explored.iter().position(|&e| e == x).map(|i| class_of[i])
    };
    for &r1 in rep.values() {
        for &r2 in rep.values() {
            if lookup(band.mul(r1, r2)).is_none() {
                return Ok(None);
            }
        }
    }
    // also negations (always same weight, so they are in the set)
    // order: zero class, one class, then (weight, id) of representative
    let zero_root = class_of[0];
    let one_root = lookup(band.one()).expect("one explored");
    let mut ordered = vec![zero_root];
    if one_root != zero_root {
        ordered.push(one_root);
    }
    let mut rest: Vec<usize> = roots
        .iter()
        .copied()
        .filter(|r| !ordered.contains(r))
        .collect();
    rest.sort_by_key(|r| {
        let e = rep[r];
        (weight(e), e)
    });
    ordered.extend(rest);
    let class_id: BTreeMap<usize, u32> =
        ordered.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let m = ordered.len();
    let reps: Vec<ElementId> = ordered.iter().map(|r| rep[r]).collect();
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let root = lookup(band.mul(reps[i], reps[j])).unwrap();
            table[i][j] = class_id[&root];
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| band.elem_name(r)).collect();
    let tm = TableMonoid::new(table, names)?;
    let ideal_cl = ideal.clone();
    let reps_cl = reps.clone();
    let mut builder = BandBuilder::new(
        name,
        Carrier::Table(tm),
        NullOracle::Defer(Arc::new(move |_q: &Band, s: &FormalSum, bound: u32| {
            let lifted = FormalSum::from_terms(s.iter().map(|(a, k)| (reps_cl[a.index()], k)));
            ideal_cl.member(&lifted, bound)
        })),
    );
    builder.fusion = if ideal.mode == Mode::Fusion { TriState::True } else { TriState::Unknown };
    let q = builder.build();
    let neg: Vec<ElementId> = (0..m)
        .map(|i| ElementId(class_id[&lookup(band.neg(reps[i])).expect("negation explored")]))
        .collect();
    q.set_neg_table(neg);
    // projection: map each variable to the class of its image
    let p = band.presented().unwrap();
    let base = band.base_band();
    let base_to_q = {
        let n = base.elements()?.len();
        let mut images = vec![q.zero(); n];
        for i in 1..n {
            let a = ElementId(i as u32);
            let constant = band
                .make_elem(a, &Monomial::one(p.arity()))
                .expect("nonzero base constant");
            let root = lookup(constant).ok_or_else(|| {
                Error::UndecidedCongruence("base element not explored".into())
            })?;
            images[i] = ElementId(class_id[&root]);
        }
        let f = BandMorphism::new(base.clone(), q.clone(), MorphismMap::Table(images));
        f.set_verified(TriState::True, DEFAULT_BOUND);
        f
    };
    // variables of graded carriers are represented by their degree-0
    // ratios against the inverted variable
    let j0 = p.vars.iter().position(|v| v.invertible);
    let var_images: Vec<ElementId> = (0..p.arity())
        .map(|i| -> Result<ElementId> {
            if p.degree0 && Some(i) == j0 {
                return Ok(q.one());
            }
            let v = if p.degree0 {
                let j0 = j0.expect("graded carrier has an inverted variable");
                let mut e = vec![0i32; p.arity()];
                e[i] = 1;
                e[j0] -= p.vars[i].degree as i32;
                band.make_elem(p.base.one(), &Monomial(e)).expect("ratio element")
            } else {
                band.var_elem(i)
            };
            let root = lookup(v).ok_or_else(|| {
                Error::UndecidedCongruence("variable image not explored".into())
            })?;
            Ok(ElementId(class_id[&root]))
        })
        .collect::<Result<_>>()?;
    let pi = BandMorphism::new(
        band.clone(),
        q.clone(),
        MorphismMap::Generators { base: Box::new(base_to_q), vars: var_images },
    );
    pi.set_verified(TriState::True, DEFAULT_BOUND);
    let mut gens: Vec<FormalSum> = ideal
        .gens
        .iter()
        .chain(null_seed(band).iter())
        .map(|s| pi.apply_sum(s))
        .filter(|s| !s.is_zero())
        .collect();
    gens.sort();
    gens.dedup();
    q.set_null_gens(NullGens { sums: gens, mode: ideal.mode });
    Ok(Some((q, pi)))
}

/// Identity-on-generators projection between presented bands sharing a
/// base and variable list.
fn generator_projection(band: &Band, q: &Band) -> BandMorphism {
    let arity = q.arity();
    let one = q.base_band().one();
    let pi = BandMorphism::new(
        band.clone(),
        q.clone(),
        MorphismMap::Substitution {
            images: (0..arity).map(|i| Some((one, Monomial::var(arity, i)))).collect(),
        },
    );
    pi.set_verified(TriState::True, DEFAULT_BOUND);
    pi
}

/// Re-interns the ideal's generating sums (plus the ambient seed) into
/// the quotient band.
fn transfer_sums(band: &Band, pi: &BandMorphism, ideal: &NullIdeal) -> Vec<FormalSum> {
    let mut gens: Vec<FormalSum> = ideal
        .gens
        .iter()
        .chain(null_seed(band).iter())
        .map(|s| pi.apply_sum(s))
        .filter(|s| !s.is_zero())
        .collect();
    gens.sort();
    gens.dedup();
    gens
}

/// Quotient by a k-ideal: kills exactly the ideal (the kernel of the
/// projection equals the ideal).
pub fn quotient_by_k_ideal(
    band: &Band,
    kideal: &crate::ideals::KIdeal,
    bound: u32,
) -> Result<(Band, BandMorphism)> {
    if !band.is_table() {
        return Err(Error::UnsupportedCarrier("k-ideal quotient of this carrier".into()));
    }
    let elems = band.elements()?;
    let n = elems.len();
    let members: Vec<ElementId> =
        elems.iter().copied().filter(|&a| kideal.contains(a)).collect();
    let paddings = padding_sums(band, &members, bound.saturating_sub(2));
    let mut uf = UnionFind::new(n);
    for &a in &members {
        uf.join(a.index(), 0);
    }
    let congruent = |a: ElementId, b: ElementId| -> bool {
        paddings.iter().any(|pad| {
            let s = band.diff(a, b).add(pad);
            band.is_null_bounded(&s, bound).is_in()
        })
    };
    let mut base_pairs = vec![];
    for i in 1..n {
        for j in (i + 1)..n {
            if kideal.contains(ElementId(i as u32)) || kideal.contains(ElementId(j as u32)) {
                continue;
            }
            if congruent(ElementId(i as u32), ElementId(j as u32)) {
                base_pairs.push((ElementId(i as u32), ElementId(j as u32)));
            }
        }
    }
    // multiplicative closure of the identifications
    for &(a, b) in &base_pairs {
        for &c in &elems {
            uf.join(band.mul(c, a).index(), band.mul(c, b).index());
        }
    }
    let class_of: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();

    // Build the quotient with its own padded null oracle.
    let index_of = |a: ElementId| a.index();
    let mut roots: Vec<usize> = class_of.clone();
    roots.sort();
    roots.dedup();
    let zero_root = class_of[0];
    let one_root = class_of[band.one().index()];
    let mut ordered = vec![zero_root];
    if one_root != zero_root {
        ordered.push(one_root);
    }
    for &r in &roots {
        if !ordered.contains(&r) {
            ordered.push(r);
        }
    }
    let class_id: BTreeMap<usize, u32> =
        ordered.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let m = ordered.len();
    let mut reps: Vec<Vec<ElementId>> = vec![vec![]; m];
    for (pos, &root) in class_of.iter().enumerate() {
        reps[class_id[&root] as usize].push(elems[pos]);
    }
    let rep0: Vec<ElementId> = reps.iter().map(|v| v[0]).collect();
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let p = band.mul(rep0[i], rep0[j]);
            table[i][j] = class_id[&class_of[index_of(p)]];
        }
    }
    let names: Vec<String> = rep0.iter().map(|&r| band.elem_name(r)).collect();
    let tm = TableMonoid::new(table, names)?;
    let parent = band.clone();
    let reps_cl = reps.clone();
    let paddings_cl = paddings.clone();
    let builder = BandBuilder::new(
        format!("{}/k", band.name()),
        Carrier::Table(tm),
        NullOracle::Defer(Arc::new(move |_q: &Band, s: &FormalSum, bound: u32| {
            // search over representative choices and paddings
            let expanded: Vec<ElementId> = s.iter_expanded().collect();
            let mut choice = vec![0usize; expanded.len()];
            loop {
                let lifted = FormalSum::from_terms(
                    expanded
                        .iter()
                        .enumerate()
                        .map(|(t, &cls)| (reps_cl[cls.index()][choice[t]], 1)),
                );
                for pad in &paddings_cl {
                    if lifted.degree() + pad.degree() <= bound.max(DEFAULT_BOUND)
                        && parent.is_null_bounded(&lifted.add(pad), bound).is_in()
                    {
                        return Verdict::In;
                    }
                }
                // next choice vector
                let mut t = 0;
                loop {
                    if t == expanded.len() {
                        return Verdict::Unknown;
                    }
                    choice[t] += 1;
                    if choice[t] < reps_cl[expanded[t].index()].len() {
                        break;
                    }
                    choice[t] = 0;
                    t += 1;
                }
            }
        })),
    );
    let q = builder.build();
    let neg: Vec<ElementId> = (0..m)
        .map(|i| ElementId(class_id[&class_of[band.neg(rep0[i]).index()]]))
        .collect();
    q.set_neg_table(neg);
    let images: Vec<ElementId> = (0..n).map(|pos| ElementId(class_id[&class_of[pos]])).collect();
    let pi = BandMorphism::new(band.clone(), q.clone(), MorphismMap::Table(images));
    pi.set_verified(TriState::True, bound);
    let mut gens: Vec<FormalSum> = null_seed(band)
        .iter()
        .map(|s| pi.apply_sum(s))
        .filter(|s| !s.is_zero())
        .collect();
    gens.sort();
    gens.dedup();
    q.set_null_gens(NullGens { sums: gens, mode: band.null_mode() });
    Ok((q, pi))
}

/// Formal sums over the given elements up to a degree.
fn padding_sums(_band: &Band, members: &[ElementId], max_degree: u32) -> Vec<FormalSum> {
    let nonzero: Vec<ElementId> = members.iter().copied().filter(|a| !a.is_zero()).collect();
    let mut out = vec![FormalSum::zero()];
    let mut frontier = vec![FormalSum::zero()];
    for _ in 0..max_degree {
        let mut next = vec![];
        for s in &frontier {
            for &a in &nonzero {
                let t = {
                    let mut t = s.clone();
                    t.push(a, 1);
                    t
                };
                next.push(t.clone());
                out.push(t);
            }
        }
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard::{f1pm, f5_quotient, ring_band};
    use crate::ideals::null_ideal_generated;

    #[test]
    fn f2_as_quotient_of_f1pm() {
        let b = f1pm();
        let one = b.one();
        let i = null_ideal_generated(&b, vec![FormalSum::from_terms([(one, 2)])], Mode::Null, 6);
        let (q, pi) = quotient_named("F2q", &b, &i).unwrap();
        assert_eq!(q.known_len(), 2);
        // -1 = 1 in the quotient
        assert_eq!(pi.apply(b.neg(one)), pi.apply(one));
        assert!(q.is_null_bounded(&FormalSum::from_terms([(q.one(), 2)]), 6).is_in());
    }

    #[test]
    fn sign_hyperfield_as_fusion_quotient() {
        let b = f1pm();
        let one = b.one();
        let gen = FormalSum::from_terms([(one, 2), (b.neg(one), 1)]);
        let i = null_ideal_generated(&b, vec![gen], Mode::Fusion, 6);
        let (q, _pi) = quotient_named("Sq", &b, &i).unwrap();
        // carrier unchanged: 0, 1, -1
        assert_eq!(q.known_len(), 3);
        let s = crate::core::standard::sign();
        // null verdicts match S on sums of degree <= 5 (In-direction)
        for sum in s.sums_up_to(5).unwrap() {
            let qs = FormalSum::from_terms(sum.iter());
            if s.is_null(&sum).is_in() {
                assert!(q.is_null_bounded(&qs, 6).is_in(), "{}", s.sum_name(&sum));
            } else {
                assert!(!q.is_null_bounded(&qs, 6).is_in(), "{}", s.sum_name(&sum));
            }
        }
    }

    #[test]
    fn f5_quotient_materializes_five_elements() {
        let q = f5_quotient().unwrap();
        assert_eq!(q.known_len(), 5);
        let f5 = ring_band(5);
        assert_eq!(crate::core::hom_set(&q, &f5).unwrap().len(), 
                   crate::core::hom_set(&f5, &q).is_err() as usize + 1);
    }
}
