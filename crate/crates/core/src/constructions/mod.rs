//! Free and monoid algebras, products, equalizers, tensor products,
//! universal ring presentations, fusion completion, and polynomial
//! division over bands.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::core::monoid::{Monomial, PresentedMonoid, RewriteRule, TableMonoid, VarDecl};
use crate::core::{
    Band, BandBuilder, BandMorphism, Carrier, ElementId, FormalSum, Mode, MorphismMap, NullGens,
    NullOracle, TriState, Verdict, DEFAULT_BOUND,
};
use crate::error::{Error, Result};
use crate::ideals::{null_ideal_generated, quotient_named, NullIdeal};

/// Exact null predicate for presented bands whose null set is generated
/// by the base band's null sums: group terms by monomial normal form and
/// test each coefficient sum in the base.
pub fn monomial_grouping_pred(band: &Band, s: &FormalSum) -> bool {
    let base = band.presented().expect("presented carrier").base.clone();
    let mut buckets: BTreeMap<Vec<i32>, FormalSum> = BTreeMap::new();
    for (a, k) in s.iter() {
        let (c, m) = band.elem_data(a).expect("foreign element");
        buckets.entry(m.0).or_default().push(c, k);
    }
    buckets.values().all(|coeffs| base.is_null(coeffs).is_in())
}

/// The free algebra `B[x1, ..., xn]`: monomials with coefficients in B,
/// null set generated by the inclusion of B's null set.
pub fn free_algebra(base: &Band, vars: &[&str]) -> Result<Band> {
    let decls: Vec<VarDecl> = vars.iter().map(|v| VarDecl::plain(*v)).collect();
    monoid_algebra(base, decls, vec![])
}

/// The Laurent algebra `B[x1^{±1}, ..., xn^{±1}]`.
pub fn laurent_algebra(base: &Band, vars: &[&str]) -> Result<Band> {
    let decls: Vec<VarDecl> = vars.iter().map(|v| VarDecl::laurent(*v)).collect();
    monoid_algebra(base, decls, vec![])
}

/// Monoid algebra of a finitely presented commutative monoid over a
/// finite band. Rules must be monoid identities (unit coefficients).
pub fn monoid_algebra(base: &Band, vars: Vec<VarDecl>, rules: Vec<RewriteRule>) -> Result<Band> {
    if !base.is_table() {
        return Err(Error::UnsupportedCarrier(
            "monoid algebras need a finite coefficient band".into(),
        ));
    }
    if vars.is_empty() && rules.is_empty() {
        return Ok(base.clone());
    }
    let names: Vec<&str> = vars.iter().map(|v| v.name.as_str()).collect();
    let name = format!("{}[{}]", base.name(), names.join(","));
    let p = PresentedMonoid { base: base.clone(), vars, rules, degree0: false };
    p.check_rules()?;
    let oracle = if base.has_direct_oracle() {
        NullOracle::Direct(Arc::new(monomial_grouping_pred))
    } else {
        NullOracle::Generated
    };
    let mut builder = BandBuilder::new(name, Carrier::Presented(p), oracle);
    builder.fusion = base.fusion_flag();
    let b = builder.build();
    let gens = crate::core::standard::lifted_base_nulls(&b);
    b.set_null_gens(NullGens { sums: gens, mode: base.null_mode() });
    Ok(b)
}

/// Product of finitely many finite bands: the componentwise table with
/// the componentwise null condition.
pub fn product(factors: &[Band]) -> Result<Band> {
    if factors.is_empty() {
        return Ok(crate::core::standard::trivial());
    }
    if factors.iter().any(|b| !b.is_table()) {
        return Err(Error::MixedRepresentation(
            "products are supported for finite table bands".into(),
        ));
    }
    let sizes: Vec<usize> = factors.iter().map(|b| b.known_len()).collect();
    // tuples in lexicographic order, then reordered to zero, one, rest
    let mut tuples: Vec<Vec<ElementId>> = vec![vec![]];
    for &n in &sizes {
        let mut next = vec![];
        for t in &tuples {
            for i in 0..n {
                let mut t2 = t.clone();
                t2.push(ElementId(i as u32));
                next.push(t2);
            }
        }
        tuples = next;
    }
    let zero: Vec<ElementId> = factors.iter().map(|b| b.zero()).collect();
    let one: Vec<ElementId> = factors.iter().map(|b| b.one()).collect();
    let mut ordered = vec![zero.clone()];
    if one != zero {
        ordered.push(one.clone());
    }
    for t in tuples {
        if t != zero && t != one {
            ordered.push(t);
        }
    }
    let index: BTreeMap<Vec<ElementId>, u32> =
        ordered.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
    let m = ordered.len();
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let t: Vec<ElementId> = factors
                .iter()
                .enumerate()
                .map(|(k, b)| b.mul(ordered[i][k], ordered[j][k]))
                .collect();
            table[i][j] = index[&t];
        }
    }
    let names: Vec<String> = ordered
        .iter()
        .map(|t| {
            let parts: Vec<String> = factors
                .iter()
                .zip(t)
                .map(|(b, &a)| b.elem_name(a))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let tm = TableMonoid::new(table, names)?;
    let factors_cl: Vec<Band> = factors.to_vec();
    let tuples_cl = ordered.clone();
    let oracle = move |_p: &Band, s: &FormalSum, bound: u32| -> Verdict {
        let mut verdict = Verdict::In;
        for (k, b) in factors_cl.iter().enumerate() {
            let proj = FormalSum::from_terms(s.iter().map(|(a, mult)| {
                (tuples_cl[a.index()][k], mult)
            }));
            match b.is_null_bounded(&proj, bound) {
                Verdict::Out => return Verdict::Out,
                Verdict::Unknown => verdict = Verdict::Unknown,
                Verdict::In => {}
            }
        }
        verdict
    };
    let name = factors.iter().map(|b| b.name().to_string()).collect::<Vec<_>>().join("x");
    let mut builder =
        BandBuilder::new(name, Carrier::Table(tm), NullOracle::Defer(Arc::new(oracle)));
    builder.degree_complete = if factors.iter().all(|b| b.has_direct_oracle()) {
        Some(0)
    } else {
        None
    };
    builder.fusion = if factors.iter().all(|b| b.fusion_flag() == TriState::True) {
        TriState::True
    } else {
        TriState::Unknown
    };
    let prod = builder.build();
    let neg: Vec<ElementId> = (0..m)
        .map(|i| {
            let t: Vec<ElementId> = factors
                .iter()
                .enumerate()
                .map(|(k, b)| b.neg(ordered[i][k]))
                .collect();
            ElementId(index[&t])
        })
        .collect();
    prod.set_neg_table(neg);
    Ok(prod)
}

/// Projection onto the k-th factor of a product built by [`product`].
pub fn projection(prod: &Band, factors: &[Band], k: usize) -> Result<BandMorphism> {
    let images: Vec<ElementId> = (0..prod.known_len() as u32)
        .map(|i| {
            // decode the tuple through its printed name is fragile; recompute
            // by scanning factor elements
            let name = prod.elem_name(ElementId(i));
            let inner = name.trim_start_matches('(').trim_end_matches(')');
            let parts: Vec<&str> = inner.split(',').collect();
            let target = &factors[k];
            target
                .elements()
                .unwrap()
                .into_iter()
                .find(|&a| target.elem_name(a) == parts[k])
                .expect("component name resolves")
        })
        .collect();
    let f = BandMorphism::new(prod.clone(), factors[k].clone(), MorphismMap::Table(images));
    f.set_verified(TriState::True, DEFAULT_BOUND);
    Ok(f)
}

/// Equalizer of two morphisms: the subband where they agree, with the
/// restricted null set.
pub fn equalizer(f: &BandMorphism, g: &BandMorphism) -> Result<(Band, BandMorphism)> {
    assert!(f.source == g.source && f.target == g.target);
    let b = &f.source;
    if !b.is_table() {
        return Err(Error::UnsupportedCarrier("equalizer of presented bands".into()));
    }
    let elems = b.elements()?;
    let sub: Vec<ElementId> = elems
        .into_iter()
        .filter(|&a| f.apply(a) == g.apply(a))
        .collect();
    sub_band(b, &sub, &format!("eq({})", b.name()))
}

/// Builds the sub-band on a multiplicatively closed subset containing 0
/// and 1, with the restricted null set.
pub fn sub_band(b: &Band, members: &[ElementId], name: &str) -> Result<(Band, BandMorphism)> {
    let mut members: Vec<ElementId> = members.to_vec();
    members.sort();
    members.dedup();
    if !members.contains(&b.zero()) || !members.contains(&b.one()) {
        return Err(Error::NotAMonoid("subset misses 0 or 1".into()));
    }
    let index: BTreeMap<ElementId, u32> =
        members.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect();
    let m = members.len();
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let p = b.mul(members[i], members[j]);
            table[i][j] = *index
                .get(&p)
                .ok_or_else(|| Error::NotAMonoid("subset not multiplicatively closed".into()))?;
        }
    }
    let names: Vec<String> = members.iter().map(|&a| b.elem_name(a)).collect();
    let tm = TableMonoid::new(table, names)?;
    let parent = b.clone();
    let members_cl = members.clone();
    let oracle = move |_s: &Band, s: &FormalSum, bound: u32| -> Verdict {
        let lifted = FormalSum::from_terms(s.iter().map(|(a, k)| (members_cl[a.index()], k)));
        parent.is_null_bounded(&lifted, bound)
    };
    let mut builder =
        BandBuilder::new(name, Carrier::Table(tm), NullOracle::Defer(Arc::new(oracle)));
    builder.degree_complete = b.degree_complete();
    let sub = builder.build();
    let neg: Vec<ElementId> = members
        .iter()
        .map(|&a| {
            let n = b.neg(a);
            ElementId(*index.get(&n).expect("closed under negation"))
        })
        .collect();
    sub.set_neg_table(neg);
    // inclusion morphism
    let images = members.clone();
    let inc = BandMorphism::new(sub.clone(), b.clone(), MorphismMap::Table(images));
    inc.set_verified(TriState::True, DEFAULT_BOUND);
    Ok((sub, inc))
}

/// Tensor product of finite algebras over a finite base band: tuples
/// modulo transfer of base scalars, with the null set generated by the
/// embedded factor null sets.
pub fn tensor(base: &Band, factors: &[Band], structure: &[BandMorphism]) -> Result<Band> {
    if factors.is_empty() {
        return Ok(base.clone());
    }
    assert_eq!(factors.len(), structure.len());
    if factors.iter().any(|b| !b.is_table()) || !base.is_table() {
        return Err(Error::MixedRepresentation(
            "tensor products are materialized for finite table bands".into(),
        ));
    }
    let sizes: Vec<usize> = factors.iter().map(|b| b.known_len()).collect();
    let mut tuples: Vec<Vec<ElementId>> = vec![vec![]];
    for &n in &sizes {
        let mut next = vec![];
        for t in &tuples {
            for i in 0..n {
                let mut t2 = t.clone();
                t2.push(ElementId(i as u32));
                next.push(t2);
            }
        }
        tuples = next;
    }
    let index: BTreeMap<Vec<ElementId>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut uf: Vec<usize> = (0..tuples.len()).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let r = find(uf, uf[i]);
            uf[i] = r;
        }
        uf[i]
    }
    fn join(uf: &mut Vec<usize>, i: usize, j: usize) {
        let (a, b) = (find(uf, i), find(uf, j));
        if a != b {
            uf[a.max(b)] = a.min(b);
        }
    }
    let base_elems = base.elements()?;
    for (t_idx, t) in tuples.iter().enumerate() {
        for i in 0..factors.len() {
            for j in 0..factors.len() {
                if i == j {
                    continue;
                }
                for &c in &base_elems {
                    // a_i = alpha_i(c) * b_i  and  b_j = alpha_j(c) * a_j
                    let ci = structure[i].apply(c);
                    let cj = structure[j].apply(c);
                    for bi in 0..sizes[i] as u32 {
                        if factors[i].mul(ci, ElementId(bi)) != t[i] {
                            continue;
                        }
                        let mut u = t.clone();
                        u[i] = ElementId(bi);
                        u[j] = factors[j].mul(cj, t[j]);
                        join(&mut uf, t_idx, index[&u]);
                    }
                }
            }
        }
    }
    let class_of: Vec<usize> = (0..tuples.len()).map(|i| find(&mut uf, i)).collect();
    let zero_tuple: Vec<ElementId> = factors.iter().map(|b| b.zero()).collect();
    let one_tuple: Vec<ElementId> = factors.iter().map(|b| b.one()).collect();
    let zero_root = class_of[index[&zero_tuple]];
    let one_root = class_of[index[&one_tuple]];
    let mut roots: Vec<usize> = class_of.clone();
    roots.sort();
    roots.dedup();
    let mut ordered = vec![zero_root];
    if one_root != zero_root {
        ordered.push(one_root);
    }
    for r in roots {
        if !ordered.contains(&r) {
            ordered.push(r);
        }
    }
    let class_id: BTreeMap<usize, u32> =
        ordered.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let m = ordered.len();
    let reps: Vec<Vec<ElementId>> = ordered.iter().map(|&r| tuples[r].clone()).collect();
    let cls = |t: &Vec<ElementId>| class_id[&class_of[index[t]]];
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let t: Vec<ElementId> = factors
                .iter()
                .enumerate()
                .map(|(k, b)| b.mul(reps[i][k], reps[j][k]))
                .collect();
            table[i][j] = cls(&t);
        }
    }
    let names: Vec<String> = reps
        .iter()
        .map(|t| {
            let parts: Vec<String> =
                factors.iter().zip(t).map(|(b, &a)| b.elem_name(a)).collect();
            parts.join("&")
        })
        .collect();
    let tm = TableMonoid::new(table, names)?;
    let name = format!(
        "({})",
        factors.iter().map(|b| b.name().to_string()).collect::<Vec<_>>().join(" (x) ")
    );
    let mut builder = BandBuilder::new(name, Carrier::Table(tm), NullOracle::Generated);
    builder.fusion = TriState::Unknown;
    // plain-ideal generation is complete degreewise
    builder.degree_complete = if factors.iter().all(|b| b.has_direct_oracle()) {
        Some(0)
    } else {
        None
    };
    let tensor_band = builder.build();
    let neg: Vec<ElementId> = (0..m)
        .map(|i| {
            let mut t = reps[i].clone();
            t[0] = factors[0].neg(t[0]);
            ElementId(cls(&t))
        })
        .collect();
    tensor_band.set_neg_table(neg);
    // embedded null generators
    let mut gens: Vec<FormalSum> = vec![];
    for (k, b) in factors.iter().enumerate() {
        let (nulls, _) = b.null_sums_up_to(DEFAULT_BOUND.max(6) + 2)?;
        for s in nulls {
            if s.is_zero() {
                continue;
            }
            let embedded = FormalSum::from_terms(s.iter().map(|(a, mult)| {
                let mut t = one_tuple.clone();
                t[k] = a;
                (ElementId(cls(&t)), mult)
            }));
            if !embedded.is_zero() {
                gens.push(embedded);
            }
        }
    }
    gens.sort();
    gens.dedup();
    tensor_band.set_null_gens(NullGens { sums: gens, mode: Mode::Null });
    Ok(tensor_band)
}

/// Canonical map of the k-th factor into a tensor built by [`tensor`].
pub fn tensor_inclusion(t: &Band, factors: &[Band], k: usize) -> Result<BandMorphism> {
    // resolve through element names of the representative tuples
    let fk = &factors[k];
    let images: Vec<ElementId> = fk
        .elements()?
        .into_iter()
        .map(|a| {
            let mut target_name_parts: Vec<String> = factors
                .iter()
                .map(|b| b.elem_name(b.one()))
                .collect();
            target_name_parts[k] = fk.elem_name(a);
            let wanted = target_name_parts.join("&");
            (0..t.known_len() as u32)
                .map(ElementId)
                .find(|&i| t.elem_name(i) == wanted)
                .unwrap_or_else(|| {
                    // the embedded element may have been merged; multiply out
                    t.zero()
                })
        })
        .collect();
    let f = BandMorphism::new(fk.clone(), t.clone(), MorphismMap::Table(images));
    Ok(f)
}

/// Tensor product of presented algebras over a shared base band: the
/// presentations are concatenated (variables renamed apart, rules and
/// null generators lifted). Finite table factors are first converted to
/// presentations with one generator per element.
pub fn tensor_presented(base: &Band, factors: &[Band]) -> Result<Band> {
    if factors.is_empty() {
        return Ok(base.clone());
    }
    let presented: Vec<Band> = factors
        .iter()
        .map(|b| {
            if b.is_presented() {
                if b.base_band() != *base {
                    Err(Error::MixedRepresentation(
                        "tensor factors must share the base band".into(),
                    ))
                } else {
                    Ok(b.clone())
                }
            } else {
                table_to_presentation(base, b)
            }
        })
        .collect::<Result<_>>()?;
    let mut vars: Vec<VarDecl> = vec![];
    let mut offsets = vec![];
    for (k, b) in presented.iter().enumerate() {
        offsets.push(vars.len());
        let p = b.presented().unwrap();
        for v in &p.vars {
            let mut v2 = v.clone();
            if presented.iter().enumerate().any(|(k2, b2)| {
                k2 != k && b2.var_names().contains(&v.name)
            }) {
                v2.name = format!("{}_{}", v.name, k);
            }
            vars.push(v2);
        }
    }
    let arity = vars.len();
    let mut rules = vec![];
    for (k, b) in presented.iter().enumerate() {
        let p = b.presented().unwrap();
        for r in &p.rules {
            let widen = |m: &Monomial| {
                let mut e = vec![0i32; arity];
                e[offsets[k]..offsets[k] + p.arity()].copy_from_slice(&m.0);
                Monomial(e)
            };
            rules.push(RewriteRule {
                lhs: widen(&r.lhs),
                rhs: r.rhs.as_ref().map(|(c, m)| (*c, widen(m))),
            });
        }
    }
    let monoid = PresentedMonoid { base: base.clone(), vars, rules, degree0: false };
    monoid.check_rules()?;
    let all_direct = presented.iter().all(|b| b.has_direct_oracle());
    let only_base_nulls = presented
        .iter()
        .all(|b| b.null_gens().map_or(true, |g| g.sums.iter().all(|s| b.sum_weight(s) == 0)));
    let oracle = if all_direct && only_base_nulls {
        NullOracle::Direct(Arc::new(monomial_grouping_pred))
    } else {
        NullOracle::Generated
    };
    let name = factors
        .iter()
        .map(|b| b.name().to_string())
        .collect::<Vec<_>>()
        .join(" (x) ");
    let mut builder = BandBuilder::new(name, Carrier::Presented(monoid), oracle);
    builder.fusion = if presented.iter().all(|b| b.fusion_flag() == TriState::True) {
        TriState::True
    } else {
        TriState::Unknown
    };
    let t = builder.build();
    // lift every factor's null generators
    let mut gens: Vec<FormalSum> = vec![];
    for (k, b) in presented.iter().enumerate() {
        let p = b.presented().unwrap();
        let widen = |m: &Monomial| {
            let mut e = vec![0i32; arity];
            e[offsets[k]..offsets[k] + p.arity()].copy_from_slice(&m.0);
            Monomial(e)
        };
        if let Some(g) = b.null_gens() {
            for s in &g.sums {
                let lifted = FormalSum::from_terms(s.iter().map(|(a, mult)| {
                    let (c, m) = b.elem_data(a).unwrap();
                    (t.make_elem(c, &widen(&m)).unwrap(), mult)
                }));
                gens.push(lifted);
            }
        }
    }
    gens.sort();
    gens.dedup();
    t.set_null_gens(NullGens {
        sums: gens,
        mode: if presented.iter().all(|b| b.null_mode() == Mode::Fusion) {
            Mode::Fusion
        } else {
            Mode::Null
        },
    });
    Ok(t)
}

/// Converts a finite band into an equivalent presentation over a base
/// idyll: one generator per element outside {0, 1, -1}, the full
/// multiplication table as rewrite rules.
pub fn table_to_presentation(base: &Band, b: &Band) -> Result<Band> {
    let elems = b.elements()?;
    let minus_one = b.neg(b.one());
    let skip = |a: &ElementId| a.is_zero() || *a == b.one() || *a == minus_one;
    let gens: Vec<ElementId> = elems.iter().copied().filter(|a| !skip(a)).collect();
    let var_index: BTreeMap<ElementId, usize> =
        gens.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let arity = gens.len();
    let base_m1 = base.neg(base.one());
    let encode = |a: ElementId| -> Option<(ElementId, Monomial)> {
        if a.is_zero() {
            None
        } else if a == b.one() {
            Some((base.one(), Monomial::one(arity)))
        } else if a == minus_one {
            Some((base_m1, Monomial::one(arity)))
        } else {
            Some((base.one(), Monomial::var(arity, var_index[&a])))
        }
    };
    let mut rules = vec![];
    for (i, &x) in gens.iter().enumerate() {
        for (j, &y) in gens.iter().enumerate() {
            if j < i {
                continue;
            }
            let mut lhs = vec![0i32; arity];
            lhs[i] += 1;
            lhs[j] += 1;
            rules.push(RewriteRule { lhs: Monomial(lhs), rhs: encode(b.mul(x, y)) });
        }
        // fold the negative of a generator into the sign coefficient
        let neg = b.neg(x);
        if !skip(&neg) && var_index[&neg] > i {
            let mut lhs = vec![0i32; arity];
            lhs[var_index[&neg]] = 1;
            rules.push(RewriteRule {
                lhs: Monomial(lhs),
                rhs: Some((base_m1, Monomial::var(arity, i))),
            });
        }
    }
    let monoid = PresentedMonoid {
        base: base.clone(),
        vars: gens.iter().map(|&a| VarDecl::plain(b.elem_name(a))).collect(),
        rules,
        degree0: false,
    };
    monoid.check_rules()?;
    let builder = BandBuilder::new(
        format!("{}~", b.name()),
        Carrier::Presented(monoid),
        NullOracle::Generated,
    );
    let t = builder.build();
    let (nulls, _) = b.null_sums_up_to(DEFAULT_BOUND)?;
    let gens_sums: Vec<FormalSum> = nulls
        .iter()
        .filter(|s| !s.is_zero())
        .map(|s| {
            FormalSum::from_terms(s.iter().filter_map(|(a, mult)| {
                encode(a).map(|(c, m)| (t.make_elem(c, &m).unwrap(), mult))
            }))
        })
        .collect();
    t.set_null_gens(NullGens { sums: gens_sums, mode: b.null_mode() });
    Ok(t)
}

/// Fusion completion: the quotient by the fusion ideal generated by the
/// null set itself. Fusion bands are fixed points.
pub fn fusion_completion(band: &Band, bound: u32) -> Result<(Band, BandMorphism)> {
    let seed = crate::ideals::closure_seed(band);
    let ideal: NullIdeal = null_ideal_generated(band, seed, Mode::Fusion, bound);
    let (q, pi) = quotient_named(&format!("{}^fuse", band.name()), band, &ideal)?;
    q.set_fusion_flag(TriState::True);
    Ok((q, pi))
}

/// Integer polynomial presentation of the universal ring `Z[B]/<N_B>`.
pub struct RingPresentation {
    pub coefficient_ring: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
}

impl RingPresentation {
    /// Renders the presentation as a text block consumable by a CAS:
    /// one header line, then one relation per line.
    pub fn serialize(&self) -> String {
        let mut out = format!(
            "ring {}[{}]\n",
            self.coefficient_ring,
            self.generators.join(", ")
        );
        for r in &self.relations {
            out.push_str("  ");
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

/// Emits generators (one symbol per nontrivial carrier element or per
/// presentation variable) and relations (monoid identities plus one
/// polynomial per null generator). No ring arithmetic is performed.
pub fn universal_ring_presentation(band: &Band) -> Result<RingPresentation> {
    let sym = |b: &Band, a: ElementId| -> String {
        if a.is_zero() {
            "0".into()
        } else if a == b.one() {
            "1".into()
        } else {
            format!("x_{}", b.elem_name(a).replace(['*', '^', '(', ')', '/'], "_"))
        }
    };
    if band.is_table() {
        let elems = band.elements()?;
        let generators: Vec<String> = elems
            .iter()
            .copied()
            .filter(|&a| !a.is_zero() && a != band.one())
            .map(|a| sym(band, a))
            .collect();
        let mut relations = vec![];
        for &a in &elems {
            for &b in &elems {
                if a.is_zero() || b.is_zero() || a > b || a == band.one() {
                    continue;
                }
                relations.push(format!(
                    "{} * {} = {}",
                    sym(band, a),
                    sym(band, b),
                    sym(band, band.mul(a, b))
                ));
            }
        }
        let gens = match band.null_gens() {
            Some(g) => g.sums.clone(),
            None => band.null_sums_up_to(3)?.0,
        };
        for s in gens {
            if s.is_zero() {
                continue;
            }
            let terms: Vec<String> = s.iter_expanded().map(|a| sym(band, a)).collect();
            relations.push(format!("{} = 0", terms.join(" + ")));
        }
        return Ok(RingPresentation {
            coefficient_ring: "Z".into(),
            generators,
            relations,
        });
    }
    let p = band
        .presented()
        .ok_or_else(|| Error::UnsupportedCarrier("universal ring of this carrier".into()))?;
    let base = universal_ring_presentation(&p.base)?;
    let mut generators = base.generators;
    generators.extend(p.vars.iter().map(|v| v.name.clone()));
    let mut relations = base.relations;
    let mono_str = |m: &crate::core::Monomial| -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    p.vars[i].name.clone()
                } else {
                    format!("{}^{}", p.vars[i].name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    };
    for v in &p.vars {
        if v.invertible {
            relations.push(format!("{} is invertible", v.name));
        }
    }
    for r in &p.rules {
        let rhs = match &r.rhs {
            None => "0".into(),
            Some((c, m)) => format!("{} * {}", sym(&p.base, *c), mono_str(m)),
        };
        relations.push(format!("{} = {}", mono_str(&r.lhs), rhs));
    }
    if let Some(g) = band.null_gens() {
        for s in &g.sums {
            let terms: Vec<String> = s
                .iter_expanded()
                .map(|a| {
                    let (c, m) = band.elem_data(a).unwrap();
                    if c == p.base.one() {
                        mono_str(&m)
                    } else {
                        format!("{}*{}", sym(&p.base, c), mono_str(&m))
                    }
                })
                .collect();
            relations.push(format!("{} = 0", terms.join(" + ")));
        }
    }
    Ok(RingPresentation { coefficient_ring: "Z".into(), generators, relations })
}

/// A univariate polynomial over a band, kept as a formal expression.
#[derive(Clone, Debug)]
pub struct BandPolynomial {
    pub band: Band,
    /// Coefficients c_0 .. c_n with c_n nonzero.
    pub coeffs: Vec<ElementId>,
    pub var: String,
}

impl BandPolynomial {
    pub fn new(band: Band, coeffs: Vec<ElementId>, var: impl Into<String>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() || coeffs.last().unwrap().is_zero() {
            return Err(Error::Other("polynomial must have a nonzero leading coefficient".into()));
        }
        Ok(BandPolynomial { band, coeffs, var: var.into() })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The formal value f(a) as an element of `B⁺`.
    pub fn value_at(&self, a: ElementId) -> FormalSum {
        let mut s = FormalSum::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            s.push(self.band.mul(c, self.band.pow(a, i as u32)), 1);
        }
        s
    }
}

/// Root test: `f(a) = 0` in the sense that the value sum is null.
pub fn root_check(f: &BandPolynomial, a: ElementId, bound: u32) -> Verdict {
    f.band.is_null_bounded(&f.value_at(a), bound)
}

/// Division witness: coefficients of g with `f = (T - a) g` coefficient
/// by coefficient. Searches the carrier in canonical order and returns
/// the first witness.
pub fn divides(
    f: &BandPolynomial,
    a: ElementId,
    search_bound: Option<u32>,
    verdict_bound: u32,
) -> Result<Option<Vec<ElementId>>> {
    let band = &f.band;
    let candidates: Vec<ElementId> = if band.is_table() {
        band.elements()?
    } else {
        match search_bound {
            None => return Err(Error::InfiniteCarrier),
            Some(w) => {
                let mut v = vec![band.zero()];
                v.extend(band.scaling_elements(w));
                v
            }
        }
    };
    let n = f.degree();
    if n == 0 {
        return Ok(None);
    }
    let mut witness = vec![band.zero(); n];
    fn search(
        band: &Band,
        coeffs: &[ElementId],
        a: ElementId,
        candidates: &[ElementId],
        witness: &mut Vec<ElementId>,
        i: usize,
        bound: u32,
    ) -> Option<Vec<ElementId>> {
        let n = coeffs.len() - 1;
        if i == n {
            // last condition: c_n - d_{n-1} null
            let s = band.diff(coeffs[n], witness[n - 1]);
            if band.is_null_bounded(&s, bound).is_in() {
                return Some(witness.clone());
            }
            return None;
        }
        for &d in candidates {
            witness[i] = d;
            // condition at coefficient i: c_0 + a d_0, or c_i + a d_i - d_{i-1}
            let mut s = FormalSum::zero();
            s.push(coeffs[i], 1);
            s.push(band.mul(a, d), 1);
            if i > 0 {
                s.push(band.neg(witness[i - 1]), 1);
            }
            if band.is_null_bounded(&s, bound).is_in() {
                if let Some(w) = search(band, coeffs, a, candidates, witness, i + 1, bound) {
                    return Some(w);
                }
            }
        }
        None
    }
    Ok(search(band, &f.coeffs, a, &candidates, &mut witness, 0, verdict_bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::standard::{f1pm, krasner, ring_band, sign};

    #[test]
    fn free_algebra_nulls_group_by_monomial() {
        let kt = free_algebra(&krasner(), &["T"]).unwrap();
        let t = kt.var_elem(0);
        // T + T is a scaled 1+1
        assert!(kt.is_null(&FormalSum::from_terms([(t, 2)])).is_in());
        let one = kt.one();
        assert_eq!(kt.is_null(&FormalSum::from_terms([(t, 1), (one, 1)])), Verdict::Out);
    }

    #[test]
    fn product_of_f2s() {
        let f2 = ring_band(2);
        let p = product(&[f2.clone(), f2.clone()]).unwrap();
        assert_eq!(p.known_len(), 4);
        // (1,0)*(0,1) = (0,0)
        let elems = p.elements().unwrap();
        let e10 = elems.iter().copied().find(|&a| p.elem_name(a) == "(1,0)").unwrap();
        let e01 = elems.iter().copied().find(|&a| p.elem_name(a) == "(0,1)").unwrap();
        assert!(p.mul(e10, e01).is_zero());
    }

    #[test]
    fn division_theorem_instances() {
        // F3: T^2 - 1 at a = 1 has witness T + 1
        let f3 = ring_band(3);
        let one = f3.one();
        let f = BandPolynomial::new(f3.clone(), vec![f3.neg(one), f3.zero(), one], "T").unwrap();
        assert!(root_check(&f, one, 6).is_in());
        let w = divides(&f, one, None, 6).unwrap().expect("witness");
        // witness g = d0 + d1 T with c0 = -a d0 => d0 = 1, c2 = d1 => d1 = 1
        assert_eq!(w, vec![one, one]);

        // S: T^2 + T - 1 at a = 1: f(1) = 1 + 1 - 1 is null
        let s = sign();
        let one = s.one();
        let f = BandPolynomial::new(s.clone(), vec![s.neg(one), one, one], "T").unwrap();
        assert!(root_check(&f, one, 6).is_in());
        assert!(divides(&f, one, None, 6).unwrap().is_some());

        // trivial: T - a divides itself with witness 1
        let f1 = f1pm();
        let a = f1.neg(f1.one());
        let f = BandPolynomial::new(f1.clone(), vec![f1.neg(a), f1.one()], "T").unwrap();
        let w = divides(&f, a, None, 6).unwrap().expect("witness");
        assert_eq!(w, vec![f1.one()]);
    }

    #[test]
    fn universal_ring_of_f1pm_mentions_sign_relation() {
        let rp = universal_ring_presentation(&f1pm()).unwrap();
        let text = rp.serialize();
        assert!(text.contains("1 + x_-1 = 0"), "{text}");
    }
}
