//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;

use bandkit::constructions::{
    divides, free_algebra, product, root_check, BandPolynomial,
};
use bandkit::core::standard::{
    f1pm, f4_quotient, f5_quotient, gf4, krasner, ring_band, sign, trivial,
};
use bandkit::core::{
    check_band_axioms, check_fusion, make_finite_band, Band, ElementId, FormalSum, Mode, TriState,
    Verdict, DEFAULT_BOUND,
};
use bandkit::ideals::{
    is_k_ideal, k_ideal_generated, localization, m_ideal_generated, null_ideal_generated, nullker,
    prime_m_ideals, quotient, radical, MIdeal,
};
use bandkit::schemes::{
    affine_scheme, check_separated, doubled_line, grassmannian, plucker_relations,
    projective_space,
};
use bandkit::spectrum::{spec, spec_map, vanishing_ideal, vanishing_set};
use bandkit::visualize::{
    all_matroids, comparison_check, fine_topology, matroid_from_point, points,
    sl_band, tits_space, weak_map_exists, weak_map_order,
};

fn pass(criterion: &str) {
    println!("acceptance: PASS - {criterion}");
}

/// The finite-table corpus shared by criteria 3, 4 and 11.
fn corpus() -> Vec<Band> {
    let f2 = ring_band(2);
    vec![
        f1pm(),
        krasner(),
        sign(),
        f2.clone(),
        ring_band(3),
        gf4(),
        ring_band(5),
        product(&[f2.clone(), f2]).unwrap(),
        f3xf3_mod_sign(),
        trivial(),
    ]
}

/// The hyperring quotient (F3 x F3)/{±1}: its multiplication table and
/// null predicate are computed from the product band.
fn f3xf3_mod_sign() -> Band {
    let f3 = ring_band(3);
    let p = product(&[f3.clone(), f3]).unwrap();
    let elems = p.elements().unwrap();
    let minus = |a: ElementId| p.neg(a);
    // orbit representatives under negation
    let mut reps: Vec<ElementId> = vec![];
    for &a in &elems {
        if !reps.contains(&minus(a)) {
            reps.push(a);
        }
    }
    let cls = |a: ElementId| -> u32 {
        reps.iter()
            .position(|&r| r == a || r == minus(a))
            .expect("orbit representative") as u32
    };
    let table: Vec<Vec<u32>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| cls(p.mul(a, b))).collect())
        .collect();
    let names: Vec<String> = reps.iter().map(|&a| format!("[{}]", p.elem_name(a))).collect();
    let parent = p.clone();
    let reps_cl = reps.clone();
    make_finite_band("F3xF3/±", table, names, move |_, s: &FormalSum| {
        // null iff some choice of signs lifts to a null sum of the product
        let expanded: Vec<ElementId> = s.iter_expanded().collect();
        let n = expanded.len();
        (0..(1u32 << n)).any(|mask| {
            let lifted = FormalSum::from_terms(expanded.iter().enumerate().map(|(i, &c)| {
                let r = reps_cl[c.index()];
                (if mask >> i & 1 == 1 { parent.neg(r) } else { r }, 1)
            }));
            parent.is_null(&lifted).is_in()
        })
    })
    .expect("hyperring quotient is a band")
}

#[test]
fn criterion_01_standard_band_validation() {
    for name in ["F1pm", "K", "S", "F2", "F3", "F4", "F5"] {
        let b = bandkit::core::standard_band(name).unwrap();
        assert_eq!(check_band_axioms(&b, 5), TriState::True, "{name} axioms");
    }
    assert_eq!(check_fusion(&krasner(), 6), TriState::True);
    assert_eq!(check_fusion(&sign(), 6), TriState::True);

    // the F5 presentation materializes with exactly 5 elements and its
    // null verdicts match the field's predicate on sums of degree <= 5
    let q = f5_quotient().unwrap();
    assert_eq!(q.known_len(), 5, "F5 presentation has 5 elements");
    let field = ring_band(5);
    // match elements through the unique isomorphism-compatible naming:
    // q's carrier is {0, 1, -1, x, -x} with x^2 = -1; in Z/5, x = 2
    let homs = bandkit::core::hom_set(&q, &field).unwrap();
    assert_eq!(homs.len(), 1, "unique morphism F5q -> Z/5");
    let iso = &homs[0];
    for s in q.sums_up_to(5).unwrap() {
        let target: FormalSum = iso.apply_sum(&s);
        let field_null = field.is_null(&target).is_in();
        let quotient_null = q.is_null_bounded(&s, 6).is_in();
        assert_eq!(
            field_null,
            quotient_null,
            "verdict mismatch on {}",
            q.sum_name(&s)
        );
    }
    // F4 as a quotient matches GF(4) likewise
    let q4 = f4_quotient().unwrap();
    assert_eq!(q4.known_len(), 4);
    // identity and Frobenius
    assert_eq!(bandkit::core::hom_set(&q4, &gf4()).unwrap().len(), 2);
    pass("criterion 1: standard band validation");
}

#[test]
fn criterion_02_spec_counts() {
    let base = f1pm();
    for n in 1..=5usize {
        let vars: Vec<String> = (1..=n).map(|i| format!("T{i}")).collect();
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let a = free_algebra(&base, &refs).unwrap();
        let s = spec(&a).unwrap();
        assert_eq!(s.len(), 1 << n, "|Spec A^{n}|");
        let closed = s.closed_points();
        assert_eq!(closed.len(), 1);
        for i in 0..n {
            assert!(s.points[closed[0]].contains(a.var_elem(i)));
        }
        let generic = s.generic_points();
        assert_eq!(generic.len(), 1);
        assert!((0..n).all(|i| !s.points[generic[0]].contains(a.var_elem(i))));
    }
    for n in 1..=5usize {
        let p = projective_space(&base, n).unwrap();
        assert_eq!(p.points.len(), (1 << (n + 1)) - 1, "|P^{n}|");
        assert_eq!(p.closed_points().len(), n + 1, "closed points of P^{n}");
        assert_eq!(p.generic_points().len(), 1);
    }
    pass("criterion 2: spectrum point counts");
}

/// All m-ideals of a finite band: subsets containing 0 and closed under
/// scaling.
fn all_m_ideals(b: &Band) -> Vec<MIdeal> {
    let elems = b.elements().unwrap();
    let nonzero: Vec<ElementId> = elems.iter().copied().filter(|a| !a.is_zero()).collect();
    let mut out = vec![];
    for mask in 0u32..(1 << nonzero.len()) {
        let mut set: BTreeSet<ElementId> = BTreeSet::new();
        set.insert(b.zero());
        for (i, &a) in nonzero.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.insert(a);
            }
        }
        let closed = set
            .iter()
            .all(|&a| elems.iter().all(|&c| set.contains(&b.mul(c, a))));
        if closed {
            out.push(MIdeal::from_set(b.clone(), set));
        }
    }
    out
}

#[test]
fn criterion_03_nullstellensatz() {
    let mut bands = corpus();
    bands.retain(|b| b.elements().map(|e| e.len() <= 8).unwrap_or(false));
    for b in &bands {
        if b.is_trivial() {
            continue;
        }
        let s = spec(b).unwrap();
        for ideal in all_m_ideals(b) {
            let z = vanishing_set(&s, &ideal.gens);
            let back = vanishing_ideal(&s, &z).unwrap();
            let rad = radical(&ideal).unwrap();
            assert!(
                back.same_as(&rad),
                "I(V(I)) = sqrt(I) fails on {} for {}",
                b.name(),
                ideal.describe()
            );
        }
        for z in s.closed_subsets() {
            let i = vanishing_ideal(&s, &z).unwrap();
            let z2 = vanishing_set(&s, &i.gens);
            assert_eq!(z, z2, "V(I(Z)) = Z fails on {}", b.name());
        }
        // primes <-> irreducible closed subsets
        for (i, _p) in s.points.iter().enumerate() {
            let mut single = vec![false; s.len()];
            single[i] = true;
            assert!(s.is_irreducible_closed(&s.closure(&single)));
        }
        for z in s.closed_subsets() {
            if s.is_irreducible_closed(&z) {
                assert!(s.generic_point_of(&z).is_some(), "sober on {}", b.name());
            }
        }
    }
    // and on the affine plane over F1pm
    let a2 = free_algebra(&f1pm(), &["T1", "T2"]).unwrap();
    let s = spec(&a2).unwrap();
    for z in s.closed_subsets() {
        let i = vanishing_ideal(&s, &z).unwrap();
        assert_eq!(vanishing_set(&s, &i.gens), z);
    }
    pass("criterion 3: Nullstellensatz round trips");
}

#[test]
fn criterion_04_ideal_theory() {
    for b in corpus() {
        if b.is_trivial() {
            continue;
        }
        let elems = b.elements().unwrap();
        // k-ideal generation stabilizes at level 1 on fusion bands
        if b.fusion_flag() == TriState::True {
            let nonzero: Vec<ElementId> =
                elems.iter().copied().filter(|a| !a.is_zero()).collect();
            for mask in 0u32..(1 << nonzero.len().min(4)) {
                let gens: Vec<ElementId> = nonzero
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &a)| a)
                    .collect();
                let k = k_ideal_generated(&b, &gens, 8, DEFAULT_BOUND).unwrap();
                assert!(k.closure_level <= 1, "level on {}", b.name());
                assert!(k.complete);
            }
        }
        // maximal k-ideals are prime
        let m_ideals = all_m_ideals(&b);
        let k_ideals: Vec<&MIdeal> = m_ideals
            .iter()
            .filter(|i| is_k_ideal(&b, i, 8).unwrap())
            .collect();
        let proper: Vec<&&MIdeal> = k_ideals.iter().filter(|i| !i.is_unit_ideal()).collect();
        for i in &proper {
            let maximal = proper
                .iter()
                .all(|j| !(i.subset_of(j) && !j.subset_of(i)));
            if maximal {
                assert!(
                    bandkit::ideals::is_prime(i).unwrap(),
                    "maximal k-ideal prime on {}",
                    b.name()
                );
            }
        }
        // localization prime correspondence
        let primes = prime_m_ideals(&b).unwrap();
        for p in &primes {
            let s_set: Vec<ElementId> =
                elems.iter().copied().filter(|&a| !p.contains(a)).collect();
            let (loc, iota) = localization(&b, &s_set).unwrap();
            let loc_spec = spec(&loc).unwrap();
            let b_spec = spec(&b).unwrap();
            let images = spec_map(&iota, &b_spec, &loc_spec).unwrap();
            // injective, and image = primes disjoint from S
            let image_set: BTreeSet<usize> = images.iter().copied().collect();
            assert_eq!(image_set.len(), images.len(), "injective on {}", b.name());
            let disjoint: BTreeSet<usize> = b_spec
                .points
                .iter()
                .enumerate()
                .filter(|(_, q)| s_set.iter().all(|&a| !q.contains(a)))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(image_set, disjoint, "correspondence on {}", b.name());
        }
        // radical = intersection of containing primes
        for ideal in all_m_ideals(&b) {
            let rad = radical(&ideal).unwrap();
            let inter: BTreeSet<ElementId> = elems
                .iter()
                .copied()
                .filter(|&a| {
                    primes
                        .iter()
                        .filter(|p| ideal.gens.iter().all(|&g| p.contains(g)))
                        .all(|p| p.contains(a))
                })
                .collect();
            let inter_ideal = if primes.iter().any(|p| ideal.gens.iter().all(|&g| p.contains(g)))
            {
                MIdeal::from_set(b.clone(), inter)
            } else {
                m_ideal_generated(&b, &[b.one()]).unwrap()
            };
            assert!(rad.same_as(&inter_ideal), "radical on {}", b.name());
        }
    }
    pass("criterion 4: ideal theory properties");
}

#[test]
fn criterion_05_quotient_null_ideal_bijection() {
    let b = f1pm();
    let one = b.one();
    let m1 = b.neg(one);
    let fx = free_algebra(&b, &["x"]).unwrap();
    let x = fx.var_elem(0);
    let x2 = fx.mul(x, x);
    let fone = fx.one();

    let sum = |terms: &[(ElementId, u32)]| FormalSum::from_terms(terms.iter().copied());
    let cases: Vec<(Band, Vec<FormalSum>, Mode)> = vec![
        (b.clone(), vec![sum(&[(one, 2)])], Mode::Null),
        (b.clone(), vec![sum(&[(one, 3)])], Mode::Null),
        (b.clone(), vec![sum(&[(one, 2)]), sum(&[(one, 3)])], Mode::Null),
        (b.clone(), vec![sum(&[(one, 2), (m1, 1)])], Mode::Fusion),
        (b.clone(), vec![sum(&[(one, 1), (m1, 1)])], Mode::Null),
        (fx.clone(), vec![sum(&[(x, 1), (fx.neg(fone), 1)])], Mode::Null),
        (fx.clone(), vec![sum(&[(x, 1), (fone, 1)])], Mode::Null),
        (fx.clone(), vec![sum(&[(x2, 1), (fx.neg(fone), 1)])], Mode::Null),
        (
            fx.clone(),
            vec![sum(&[(x2, 1), (fone, 1)]), sum(&[(x, 1), (fx.neg(fone), 2)])],
            Mode::Fusion,
        ),
        (fx.clone(), vec![sum(&[(x, 1)])], Mode::Null),
    ];
    assert_eq!(cases.len(), 10);
    for (band, gens, mode) in cases {
        let ideal = null_ideal_generated(&band, gens.clone(), mode, DEFAULT_BOUND);
        let (_q, pi) = quotient(&band, &ideal).unwrap();
        let nk = nullker(&pi, DEFAULT_BOUND);
        let sums: Vec<FormalSum> = if band.is_table() {
            band.sums_up_to(6).unwrap()
        } else {
            // bounded-weight elements of the free algebra
            let elems = band.scaling_elements(2);
            let mut out = vec![];
            for a in &elems {
                for c in &elems {
                    out.push(FormalSum::from_terms([(*a, 1), (*c, 1)]));
                    out.push(FormalSum::from_terms([(*a, 2), (*c, 1)]));
                }
                out.push(FormalSum::singleton(*a));
            }
            out.sort();
            out.dedup();
            out
        };
        for s in &sums {
            if s.degree() > 6 {
                continue;
            }
            let in_ideal = ideal.member(s, DEFAULT_BOUND).is_in();
            let in_nullker = nk.member(s, DEFAULT_BOUND).is_in();
            assert_eq!(
                in_ideal,
                in_nullker,
                "nullker(pi) vs I on {} over {}",
                band.sum_name(s),
                band.name()
            );
        }
    }
    pass("criterion 5: quotient/null-ideal bijection");
}

#[test]
fn criterion_06_grassmannians_and_matroids() {
    let f1 = f1pm();
    let k = krasner();
    // Gr(2,4): set equality of basis systems with the exchange oracle
    let gr24 = grassmannian(2, 4, &f1).unwrap();
    let ps = points(&gr24, &k).unwrap();
    let (subsets, _) = plucker_relations(2, 4);
    let mut extracted: BTreeSet<_> = (0..ps.len())
        .map(|p| matroid_from_point(&subsets, &gr24, &ps, p, 4, 2).unwrap())
        .collect();
    let oracle: BTreeSet<_> = all_matroids(2, 4).into_iter().collect();
    assert_eq!(extracted.len(), ps.len(), "extraction is injective");
    assert_eq!(extracted, oracle, "Gr(2,4)(K) = rank-2 matroids on 4 elements");

    // Gr(1,3) and Gr(2,5): count equality
    let gr13 = grassmannian(1, 3, &f1).unwrap();
    assert_eq!(points(&gr13, &k).unwrap().len(), all_matroids(1, 3).len());
    let gr25 = grassmannian(2, 5, &f1).unwrap();
    assert_eq!(points(&gr25, &k).unwrap().len(), all_matroids(2, 5).len());

    // Tits space of Gr(2,4): the six single-basis matroids
    let tits = tits_space(&gr24).unwrap();
    assert_eq!(tits.point_indices.len(), 6);
    extracted.clear();
    for &ti in &tits.point_indices {
        let m = matroid_from_point(&subsets, &gr24, &ps, ti, 4, 2).unwrap();
        assert_eq!(m.bases.len(), 1, "Tits points have a unique basis");
        extracted.insert(m);
    }
    assert_eq!(extracted.len(), 6);
    pass("criterion 6: Grassmannian matroids vs the exchange oracle");
}

#[test]
fn criterion_07_sl_n_tits() {
    for (n, expected) in [(2usize, 2usize), (3, 6)] {
        let sl = sl_band(n).unwrap();
        let x = affine_scheme(&sl).unwrap();
        let t = tits_space(&x).unwrap();
        assert_eq!(t.point_indices.len(), expected, "|SL{n}^Tits|");
        // the points are exactly the permutation ideals p_sigma
        let k = krasner();
        let ps = points(&x, &k).unwrap();
        let mut seen_perms = BTreeSet::new();
        for &ti in &t.point_indices {
            let (_, alpha) = ps.rep(ti);
            // kernel = variables sent to zero; its complement must be a
            // permutation support
            let mut support = vec![];
            for i in 0..n {
                for j in 0..n {
                    let v = sl.var_elem(i * n + j);
                    if !alpha.apply(v).is_zero() {
                        support.push((i, j));
                    }
                }
            }
            assert_eq!(support.len(), n, "support of a Tits point is a permutation");
            let mut sigma = vec![usize::MAX; n];
            for (i, j) in support {
                assert_eq!(sigma[i], usize::MAX);
                sigma[i] = j;
            }
            let mut sorted = sigma.clone();
            sorted.sort();
            assert_eq!(sorted, (0..n).collect::<Vec<_>>());
            seen_perms.insert(sigma);
        }
        assert_eq!(seen_perms.len(), expected);
    }
    pass("criterion 7: SL_n Tits spaces are the Weyl groups");
}

#[test]
fn criterion_08_division_theorem() {
    for name in ["F2", "F3", "K", "S"] {
        let b = bandkit::core::standard_band(name).unwrap();
        assert_eq!(
            bandkit::core::check_hereditary_fusion(&b, 6),
            TriState::True,
            "{name} hereditary"
        );
        let elems = b.elements().unwrap();
        for c0 in &elems {
            for c1 in &elems {
                for c2 in &elems {
                    for c3 in &elems {
                        if c3.is_zero() && c2.is_zero() && c1.is_zero() {
                            continue;
                        }
                        let coeffs = vec![*c0, *c1, *c2, *c3];
                        let Ok(f) = BandPolynomial::new(b.clone(), coeffs, "T") else {
                            continue;
                        };
                        for &a in &elems {
                            let rc = root_check(&f, a, 6);
                            let wit = divides(&f, a, None, 6).unwrap();
                            assert_eq!(
                                rc == Verdict::In,
                                wit.is_some(),
                                "{name}: f of degree {} at {}",
                                f.degree(),
                                b.elem_name(a)
                            );
                        }
                    }
                }
            }
        }
    }
    pass("criterion 8: division theorem on hereditary fusion bands");
}

#[test]
fn criterion_09_topology_comparisons() {
    let f1 = f1pm();
    let k = krasner();
    let s = sign();
    let a1 = affine_scheme(&free_algebra(&f1, &["T"]).unwrap()).unwrap();
    let a2 = affine_scheme(&free_algebra(&f1, &["x", "y"]).unwrap()).unwrap();
    let p1 = projective_space(&f1, 1).unwrap();
    let gr24 = grassmannian(2, 4, &f1).unwrap();

    for (scheme, strong_bound) in [(&a1, 6u32), (&a2, 4), (&p1, 6), (&gr24, 2)] {
        for f in [&k, &s] {
            let rep = comparison_check(scheme, f, strong_bound, DEFAULT_BOUND).unwrap();
            assert!(rep.strong_refines_weak, "strong>=weak on {} over {}", scheme.name, f.name());
            assert!(rep.chi_ker_continuous, "chi_ker continuous on {}", scheme.name);
            assert!(rep.pi_surjective, "pi onto kernel space on {}", scheme.name);
            assert!(rep.pi_continuous, "pi continuous on {}", scheme.name);
            assert!(rep.tits_into_kernel, "Tits in kernel on {}", scheme.name);
            if f.name() == "K" {
                assert_eq!(rep.chi_ker_homeo, Some(true), "chi_ker homeo on {}", scheme.name);
                assert!(rep.chi_null_continuous, "chi_null continuous on {}", scheme.name);
                assert!(rep.square_commutes, "square commutes on {}", scheme.name);
            }
        }
    }

    // weak-map order on Gr(2,4)(K) equals the oracle order on matroids
    let ps = points(&gr24, &k).unwrap();
    let fine = fine_topology(&gr24, &ps).unwrap();
    let order = weak_map_order(&fine);
    let (subsets, _) = plucker_relations(2, 4);
    let matroids: Vec<_> = (0..ps.len())
        .map(|p| matroid_from_point(&subsets, &gr24, &ps, p, 4, 2).unwrap())
        .collect();
    for (p, mp) in matroids.iter().enumerate() {
        for (q, mq) in matroids.iter().enumerate() {
            assert_eq!(
                order[p][q],
                weak_map_exists(mp, mq),
                "weak map order vs oracle at ({p},{q})"
            );
        }
    }
    pass("criterion 9: topology comparison diagram");
}

/// The remaining clause of criterion 9: "fine refines strong". This is
/// asserted as stated, and it fails: it cannot hold over K or S.
///
/// Counterexample, computed by this library and checkable by hand: on
/// A^1(K) = {T->0, T->1}, the closed subscheme cut out by T - 1 has
/// K-points {T->1}, so {T->0} is strong-Zariski open (the strong
/// topology on A^1(K) is discrete; the singletons Z_{T-c} are closed
/// for c in the base). The fine topology, which is homeomorphic to K
/// itself on A^1(K), has opens {}, {T->1}, all only. Hence the identity
/// map from the fine to the strong topology is not continuous. The same
/// mechanism applies over S and on the other listed instances. The
/// refinement does hold for topological fields, where closed subsets of
/// the unit group are closed in the whole carrier; over K and S the
/// unit group is not closed, and the general claim breaks.
#[test]
fn criterion_09_fine_refines_strong_as_stated() {
    let f1 = f1pm();
    let k = krasner();
    let a1 = affine_scheme(&free_algebra(&f1, &["T"]).unwrap()).unwrap();
    let rep = comparison_check(&a1, &k, 6, DEFAULT_BOUND).unwrap();
    if !rep.fine_refines_strong {
        println!("acceptance: FAIL - criterion 9 (fine refines strong): false over K, see test doc");
    }
    assert!(
        rep.fine_refines_strong,
        "fine does not refine strong on A^1 over K: {{T->0}} is strong-open but not fine-open"
    );
}

#[test]
fn criterion_10_separatedness() {
    let f1 = f1pm();
    let dl = doubled_line(&f1).unwrap();
    assert!(!check_separated(&dl).unwrap(), "doubled line is not separated");
    for b in [f1.clone(), krasner(), free_algebra(&f1, &["T"]).unwrap()] {
        let x = affine_scheme(&b).unwrap();
        assert!(check_separated(&x).unwrap(), "affine {} separated", b.name());
    }
    for n in 1..=3usize {
        let p = projective_space(&f1, n).unwrap();
        assert!(check_separated(&p).unwrap(), "P^{n} separated");
    }
    pass("criterion 10: separatedness detection");
}

#[test]
fn criterion_11_covering_rigidity() {
    for b in corpus() {
        if b.is_trivial() {
            continue;
        }
        let s = spec(&b).unwrap();
        let elems = b.elements().unwrap();
        let n = elems.len();
        assert!(n <= 10);
        let masks: Vec<Vec<bool>> = elems.iter().map(|&h| s.basic_open(h)).collect();
        for family in 1u32..(1 << n) {
            let mut union = vec![false; s.len()];
            let mut has_unit = false;
            for (i, &h) in elems.iter().enumerate() {
                if family >> i & 1 == 1 {
                    for (u, m) in union.iter_mut().zip(&masks[i]) {
                        *u |= m;
                    }
                    has_unit |= b.is_unit(h);
                }
            }
            if union.iter().all(|&x| x) {
                assert!(has_unit, "cover of Spec {} without a unit witness", b.name());
            }
        }
    }
    pass("criterion 11: covering rigidity");
}

#[test]
fn criterion_12_cli_determinism() {
    let exe = env!("CARGO_BIN_EXE_bandkit");
    let run = |args: &[&str]| -> (Vec<u8>, i32) {
        let out = std::process::Command::new(exe)
            .args(args)
            .output()
            .expect("bandkit runs");
        (out.stdout, out.status.code().unwrap_or(-1))
    };
    for args in [
        vec!["spec", "A2"],
        vec!["grassmannian", "2", "4", "--over", "K", "--matroids"],
        vec!["tits", "SL2"],
        vec!["check", "S"],
    ] {
        let (a, code_a) = run(&args);
        let (b, _) = run(&args);
        assert_eq!(a, b, "identical reruns differ for {args:?}");
        assert!(code_a == 0 || code_a == 2);
        let mut with_jobs1 = args.clone();
        with_jobs1.extend(["--jobs", "1"]);
        let mut with_jobs4 = args.clone();
        with_jobs4.extend(["--jobs", "4"]);
        let (c, _) = run(&with_jobs1);
        let (d, _) = run(&with_jobs4);
        assert_eq!(c, d, "jobs=1 vs jobs=4 differ for {args:?}");
        assert_eq!(a, c, "jobs flag changes output for {args:?}");
    }
    pass("criterion 12: CLI determinism");
}
