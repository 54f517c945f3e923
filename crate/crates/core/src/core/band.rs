use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num::BigRational;

use crate::core::elem::{ElementId, FormalSum};
use crate::core::monoid::{Monomial, PresentedMonoid, TableMonoid};
use crate::error::{Error, Result};

/// Default saturation degree for bounded searches.
pub const DEFAULT_BOUND: u32 = 6;

/// Three-valued answer of a bounded membership question.
///
/// `Out` is only returned when it is certain: either the oracle is a total
/// decision procedure, or the band is flagged degree-complete at a level
/// dominating the query. A bounded closure that merely failed to derive a
/// sum answers `Unknown`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    In,
    Out,
    Unknown,
}

impl Verdict {
    pub fn is_in(self) -> bool {
        self == Verdict::In
    }

    pub fn decided(self) -> bool {
        self != Verdict::Unknown
    }
}

/// Tri-state flag for properties established by bounded checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    pub fn is_true(self) -> bool {
        self == TriState::True
    }
}

/// Closure discipline for generated null sets.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Ideal operations plus the substitution rule.
    Null,
    /// Ideal operations plus the fusion rule.
    Fusion,
}

/// Generators of the null set, with the closure mode under which they
/// generate it. Used both by the `Generated` oracle and by morphism
/// checks, which only need to test generators.
#[derive(Clone)]
pub struct NullGens {
    pub sums: Vec<FormalSum>,
    pub mode: Mode,
}

/// Decision procedure or bounded-closure description of the null set.
pub enum NullOracle {
    /// Total predicate; answers are exact.
    Direct(Arc<dyn Fn(&Band, &FormalSum) -> bool + Send + Sync>),
    /// Verdict-valued procedure, typically deferring to another band or
    /// ideal (quotients, localizations). May answer `Unknown`.
    Defer(Arc<dyn Fn(&Band, &FormalSum, u32) -> Verdict + Send + Sync>),
    /// Membership by saturating the generator set (`Band::null_gens`).
    Generated,
}

pub(crate) enum Carrier {
    Table(TableMonoid),
    Presented(PresentedMonoid),
    /// Nonnegative exact rationals with the usual multiplication.
    Tropical,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum ElemData {
    Mono { coeff: ElementId, mono: Monomial },
    Rat(BigRational),
}

#[derive(Default)]
pub(crate) struct Interner {
    data: Vec<ElemData>, // id i >= 1 stored at data[i-1]
    index: HashMap<ElemData, ElementId>,
}

impl Interner {
    fn intern(&mut self, d: ElemData) -> ElementId {
        if let Some(&id) = self.index.get(&d) {
            return id;
        }
        let id = ElementId(self.data.len() as u32 + 1);
        self.data.push(d.clone());
        self.index.insert(d, id);
        id
    }

    fn get(&self, id: ElementId) -> &ElemData {
        &self.data[id.0 as usize - 1]
    }
}

pub(crate) struct BandInner {
    name: String,
    pub(crate) carrier: Carrier,
    pub(crate) interner: RwLock<Interner>,
    null: NullOracle,
    null_gens: OnceLock<NullGens>,
    /// Additive inverse table for table carriers.
    neg: OnceLock<Vec<ElementId>>,
    inverse: OnceLock<Vec<Option<ElementId>>>,
    /// Degree d0 such that closure at max(d, d0) decides degree-d queries.
    degree_complete: Option<u32>,
    idyll: RwLock<TriState>,
    fusion: RwLock<TriState>,
    hereditary_fusion: RwLock<TriState>,
    /// Open subsets (as carrier bitmasks) for finite topological bands.
    topology: Option<Vec<u64>>,
    pub(crate) closure_cache: RwLock<BTreeMap<(u32, u32, u8), Arc<BTreeSet<FormalSum>>>>,
}

/// A band: a commutative pointed monoid together with a null set making
/// every element have a unique additive inverse.
///
/// Bands are immutable after construction and cheap to clone; all
/// operations are pure functions of their inputs. Internal caches are
/// synchronized, so a `Band` can be shared freely across threads.
#[derive(Clone)]
pub struct Band(pub(crate) Arc<BandInner>);

impl PartialEq for Band {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}
impl Eq for Band {}

impl fmt::Debug for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Band({})", self.name())
    }
}

pub(crate) struct BandBuilder {
    pub name: String,
    pub carrier: Carrier,
    pub null: NullOracle,
    pub degree_complete: Option<u32>,
    pub idyll: TriState,
    pub fusion: TriState,
    pub hereditary_fusion: TriState,
    pub topology: Option<Vec<u64>>,
}

impl BandBuilder {
    pub fn new(name: impl Into<String>, carrier: Carrier, null: NullOracle) -> Self {
        BandBuilder {
            name: name.into(),
            carrier,
            null,
            degree_complete: None,
            idyll: TriState::Unknown,
            fusion: TriState::Unknown,
            hereditary_fusion: TriState::Unknown,
            topology: None,
        }
    }

    pub fn build(self) -> Band {
        let band = Band(Arc::new(BandInner {
            name: self.name,
            carrier: self.carrier,
            interner: RwLock::new(Interner::default()),
            null: self.null,
            null_gens: OnceLock::new(),
            neg: OnceLock::new(),
            inverse: OnceLock::new(),
            degree_complete: self.degree_complete,
            idyll: RwLock::new(self.idyll),
            fusion: RwLock::new(self.fusion),
            hereditary_fusion: RwLock::new(self.hereditary_fusion),
            topology: self.topology,
            closure_cache: RwLock::new(BTreeMap::new()),
        }));
        if let Carrier::Presented(_) = band.0.carrier {
            // Reserve id 1 for the unit monomial.
            let one = band.intern_mono(band.base_band().one(), Monomial::one(band.arity()));
            debug_assert_eq!(one, Some(ElementId(1)));
        }
        if let Carrier::Tropical = band.0.carrier {
            let one = band
                .0
                .interner
                .write()
                .unwrap()
                .intern(ElemData::Rat(BigRational::from_integer(1.into())));
            debug_assert_eq!(one, ElementId(1));
        }
        band
    }
}

impl Band {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn zero(&self) -> ElementId {
        ElementId(0)
    }

    pub fn one(&self) -> ElementId {
        match &self.0.carrier {
            Carrier::Table(t) => ElementId(t.one),
            _ => ElementId(1),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.one().is_zero()
    }

    /// The bounded-query degree at which membership is known complete,
    /// if any. Direct oracles are always complete.
    pub fn degree_complete(&self) -> Option<u32> {
        match self.0.null {
            NullOracle::Direct(_) => Some(0),
            _ => self.0.degree_complete,
        }
    }

    pub fn has_direct_oracle(&self) -> bool {
        matches!(self.0.null, NullOracle::Direct(_))
    }

    /// True when every verdict at the given bound is decided.
    pub fn decides_at(&self, bound: u32) -> bool {
        self.degree_complete().is_some_and(|d0| bound >= d0)
    }

    pub(crate) fn set_null_gens(&self, gens: NullGens) {
        if self.0.null_gens.set(gens).is_err() {
            panic!("null generators already set");
        }
    }

    pub fn null_gens(&self) -> Option<&NullGens> {
        self.0.null_gens.get()
    }

    pub fn null_mode(&self) -> Mode {
        self.null_gens().map_or(Mode::Null, |g| g.mode)
    }

    pub(crate) fn set_neg_table(&self, neg: Vec<ElementId>) {
        let _ = self.0.neg.set(neg);
    }

    // ---- carrier access ----

    pub(crate) fn table(&self) -> Option<&TableMonoid> {
        match &self.0.carrier {
            Carrier::Table(t) => Some(t),
            _ => None,
        }
    }

    pub(crate) fn presented(&self) -> Option<&PresentedMonoid> {
        match &self.0.carrier {
            Carrier::Presented(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_table(&self) -> bool {
        self.table().is_some()
    }

    pub fn is_presented(&self) -> bool {
        self.presented().is_some()
    }

    pub fn is_tropical(&self) -> bool {
        matches!(self.0.carrier, Carrier::Tropical)
    }

    /// Base band of a presented carrier (panics otherwise).
    pub fn base_band(&self) -> Band {
        self.presented().expect("presented carrier").base.clone()
    }

    pub fn arity(&self) -> usize {
        self.presented().map_or(0, |p| p.arity())
    }

    pub fn presented_rule_count(&self) -> usize {
        self.presented().map_or(0, |p| p.rules.len())
    }

    pub fn var_names(&self) -> Vec<String> {
        self.presented()
            .map_or(vec![], |p| p.vars.iter().map(|v| v.name.clone()).collect())
    }

    // ---- element construction ----

    pub(crate) fn intern_mono(&self, coeff: ElementId, mono: Monomial) -> Option<ElementId> {
        let p = self.presented().expect("presented carrier");
        let (c, m) = p.normalize(coeff, &mono)?;
        if !p.monomial_ok(&m) {
            // outside the carrier (wrong grading or a negative exponent
            // on a non-invertible variable)
            return None;
        }
        Some(self.0.interner.write().unwrap().intern(ElemData::Mono { coeff: c, mono: m }))
    }

    /// Element `coeff * mono` of a presented band; None encodes zero.
    pub fn make_elem(&self, coeff: ElementId, mono: &Monomial) -> Option<ElementId> {
        if coeff.is_zero() {
            return None;
        }
        self.intern_mono(coeff, mono.clone())
    }

    /// Element id of the i-th presentation variable.
    pub fn var_elem(&self, i: usize) -> ElementId {
        let base_one = self.base_band().one();
        self.make_elem(base_one, &Monomial::var(self.arity(), i))
            .expect("variable is a nonzero element")
    }

    pub fn elem_data(&self, a: ElementId) -> Option<(ElementId, Monomial)> {
        if a.is_zero() {
            return None;
        }
        let interner = self.0.interner.read().unwrap();
        match interner.get(a) {
            ElemData::Mono { coeff, mono } => Some((*coeff, mono.clone())),
            ElemData::Rat(_) => None,
        }
    }

    /// Interns a nonnegative rational into a tropical carrier.
    pub fn trop_elem(&self, r: BigRational) -> ElementId {
        assert!(matches!(self.0.carrier, Carrier::Tropical));
        assert!(r >= BigRational::from_integer(0.into()), "tropical values are nonnegative");
        if r == BigRational::from_integer(0.into()) {
            return ElementId(0);
        }
        self.0.interner.write().unwrap().intern(ElemData::Rat(r))
    }

    pub fn trop_value(&self, a: ElementId) -> BigRational {
        if a.is_zero() {
            return BigRational::from_integer(0.into());
        }
        match self.0.interner.read().unwrap().get(a) {
            ElemData::Rat(r) => r.clone(),
            _ => panic!("not a tropical element"),
        }
    }

    // ---- monoid structure ----

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        if a.is_zero() || b.is_zero() {
            return ElementId(0);
        }
        match &self.0.carrier {
            Carrier::Table(t) => ElementId(t.mul(a.0, b.0)),
            Carrier::Presented(p) => {
                let interner = self.0.interner.read().unwrap();
                let (ca, ma, cb, mb) = match (interner.get(a), interner.get(b)) {
                    (ElemData::Mono { coeff: ca, mono: ma }, ElemData::Mono { coeff: cb, mono: mb }) => {
                        (*ca, ma.clone(), *cb, mb.clone())
                    }
                    _ => panic!("foreign element"),
                };
                drop(interner);
                let c = p.base.mul(ca, cb);
                match self.intern_mono(c, ma.mul(&mb)) {
                    Some(id) => id,
                    None => ElementId(0),
                }
            }
            Carrier::Tropical => {
                let r = self.trop_value(a) * self.trop_value(b);
                self.trop_elem(r)
            }
        }
    }

    pub fn pow(&self, a: ElementId, n: u32) -> ElementId {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Additive inverse. Table carriers use the validated inverse table;
    /// presented carriers multiply by -1 of the base; tropical negation
    /// is the identity.
    pub fn neg(&self, a: ElementId) -> ElementId {
        if a.is_zero() {
            return a;
        }
        match &self.0.carrier {
            Carrier::Table(_) => {
                let neg = self.0.neg.get().expect("inverse table not initialized");
                neg[a.0 as usize]
            }
            Carrier::Presented(p) => {
                let minus_one = p.base.neg(p.base.one());
                let interner = self.0.interner.read().unwrap();
                let (c, m) = match interner.get(a) {
                    ElemData::Mono { coeff, mono } => (*coeff, mono.clone()),
                    _ => panic!("foreign element"),
                };
                drop(interner);
                let c = p.base.mul(minus_one, c);
                self.intern_mono(c, m).expect("negation of a nonzero element")
            }
            Carrier::Tropical => a,
        }
    }

    /// Number of interned/known elements. For table carriers this is the
    /// carrier size; otherwise it only reflects elements seen so far.
    pub fn known_len(&self) -> usize {
        match &self.0.carrier {
            Carrier::Table(t) => t.size as usize,
            _ => self.0.interner.read().unwrap().data.len() + 1,
        }
    }

    /// Full carrier, if finite. Presented carriers are explored by
    /// closing {0, 1, vars} under multiplication; exceeding `cap`
    /// normal forms reports an infinite carrier.
    pub fn elements_capped(&self, cap: usize) -> Result<Vec<ElementId>> {
        match &self.0.carrier {
            Carrier::Table(t) => Ok((0..t.size).map(ElementId).collect()),
            Carrier::Tropical => Err(Error::InfiniteCarrier),
            Carrier::Presented(p) => {
                let mut seen: BTreeSet<ElementId> = BTreeSet::new();
                seen.insert(ElementId(0));
                let mut frontier: Vec<ElementId> = vec![self.one()];
                let mut gens: Vec<ElementId> = self.monoid_generators();
                for b in self.base_nonzero() {
                    if let Some(id) = self.make_elem(b, &Monomial::one(p.arity())) {
                        gens.push(id);
                    }
                }
                seen.insert(self.one());
                while let Some(a) = frontier.pop() {
                    for &g in &gens {
                        let x = self.mul(a, g);
                        if seen.insert(x) {
                            if seen.len() > cap {
                                return Err(Error::InfiniteCarrier);
                            }
                            frontier.push(x);
                        }
                    }
                }
                Ok(seen.into_iter().collect())
            }
        }
    }

    pub fn elements(&self) -> Result<Vec<ElementId>> {
        self.elements_capped(512)
    }

    fn base_nonzero(&self) -> Vec<ElementId> {
        let base = self.base_band();
        let t = base.table().expect("presented base is a table band");
        (1..t.size).map(ElementId).collect()
    }

    /// Multiplicative generators of a presented carrier: the variables
    /// (ratios against the inverted variable on graded carriers), with
    /// inverses for invertible ones.
    pub fn monoid_generators(&self) -> Vec<ElementId> {
        let Some(p) = self.presented() else { return vec![] };
        let one = p.base.one();
        let mut out = vec![];
        if !p.degree0 {
            for (i, v) in p.vars.iter().enumerate() {
                // a variable may rewrite to zero in a quotient
                if let Some(id) = self.make_elem(one, &Monomial::var(p.arity(), i)) {
                    out.push(id);
                }
                if v.invertible {
                    let mut e = vec![0i32; p.arity()];
                    e[i] = -1;
                    if let Some(id) = self.make_elem(one, &Monomial(e)) {
                        out.push(id);
                    }
                }
            }
            return out;
        }
        let j0 = p.vars.iter().position(|v| v.invertible).expect("inverted variable");
        for (i, v) in p.vars.iter().enumerate() {
            if i == j0 {
                continue;
            }
            let mut e = vec![0i32; p.arity()];
            e[i] = 1;
            e[j0] -= (p.vars[i].degree / p.vars[j0].degree) as i32;
            if let Some(id) = self.make_elem(one, &Monomial(e.clone())) {
                out.push(id);
            }
            if v.invertible {
                let inv = Monomial(e.iter().map(|x| -x).collect());
                if let Some(id) = self.make_elem(one, &inv) {
                    out.push(id);
                }
            }
        }
        out
    }

    // ---- units ----

    pub fn inverse(&self, a: ElementId) -> Option<ElementId> {
        if a.is_zero() {
            return None;
        }
        match &self.0.carrier {
            Carrier::Table(t) => {
                let inv = self.0.inverse.get_or_init(|| {
                    let n = t.size;
                    (0..n)
                        .map(|x| (0..n).map(ElementId).find(|&y| t.mul(x, y.0) == t.one))
                        .collect()
                });
                inv[a.0 as usize]
            }
            Carrier::Presented(p) => {
                let (c, m) = self.elem_data(a)?;
                let cinv = p.base.inverse(c)?;
                // Invertible iff all non-invertible exponents vanish.
                for (e, v) in m.0.iter().zip(&p.vars) {
                    if *e != 0 && !v.invertible {
                        return None;
                    }
                }
                let minv = Monomial(m.0.iter().map(|e| -e).collect());
                self.make_elem(cinv, &minv)
            }
            Carrier::Tropical => {
                let v = self.trop_value(a);
                Some(self.trop_elem(BigRational::from_integer(1.into()) / v))
            }
        }
    }

    pub fn is_unit(&self, a: ElementId) -> bool {
        self.inverse(a).is_some()
    }

    // ---- formal sums ----

    /// Scales every term of the sum by `a`, dropping zero products.
    pub fn scale_sum(&self, a: ElementId, s: &FormalSum) -> FormalSum {
        if a.is_zero() {
            return FormalSum::zero();
        }
        let mut out = FormalSum::zero();
        for (t, k) in s.iter() {
            out.push(self.mul(a, t), k);
        }
        out
    }

    pub fn neg_sum(&self, s: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (t, k) in s.iter() {
            out.push(self.neg(t), k);
        }
        out
    }

    /// Formal sum `a - b`.
    pub fn diff(&self, a: ElementId, b: ElementId) -> FormalSum {
        let mut s = FormalSum::zero();
        s.push(a, 1);
        s.push(self.neg(b), 1);
        s
    }

    // ---- null membership ----

    pub fn is_null(&self, s: &FormalSum) -> Verdict {
        self.is_null_bounded(s, DEFAULT_BOUND)
    }

    /// Decides (or bounds) membership of `s` in the null set.
    pub fn is_null_bounded(&self, s: &FormalSum, bound: u32) -> Verdict {
        match &self.0.null {
            NullOracle::Direct(f) => {
                if f(self, s) {
                    Verdict::In
                } else {
                    Verdict::Out
                }
            }
            NullOracle::Defer(f) => f(self, s, bound),
            NullOracle::Generated => {
                let gens = self
                    .null_gens()
                    .expect("generated oracle without generators");
                let bound = bound.max(s.degree());
                if crate::ideals::closure::derives(self, &gens.sums, gens.mode, bound, s) {
                    Verdict::In
                } else if self
                    .0
                    .degree_complete
                    .is_some_and(|d0| bound >= d0.max(s.degree()))
                {
                    Verdict::Out
                } else {
                    Verdict::Unknown
                }
            }
        }
    }

    /// All formal sums of degree <= d over the (finite) carrier.
    pub fn sums_up_to(&self, d: u32) -> Result<Vec<FormalSum>> {
        let elems: Vec<ElementId> = self
            .elements()?
            .into_iter()
            .filter(|a| !a.is_zero())
            .collect();
        let mut out = vec![];
        fn rec(
            elems: &[ElementId],
            i: usize,
            left: u32,
            cur: &mut FormalSum,
            out: &mut Vec<FormalSum>,
        ) {
            if i == elems.len() {
                out.push(cur.clone());
                return;
            }
            for k in 0..=left {
                let mut next = cur.clone();
                next.push(elems[i], k);
                rec(elems, i + 1, left - k, &mut next, out);
            }
        }
        rec(&elems, 0, d, &mut FormalSum::zero(), &mut out);
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Null sums of degree <= d known at the given bound, with a flag
    /// telling whether the list is exhaustive.
    pub fn null_sums_up_to(&self, d: u32) -> Result<(Vec<FormalSum>, bool)> {
        if let (NullOracle::Generated, true) = (&self.0.null, self.is_presented()) {
            let gens = self.null_gens().expect("generated oracle without generators");
            let set = crate::ideals::closure::saturate(self, &gens.sums, gens.mode, d, None);
            let complete = self.decides_at(d);
            return Ok((set.iter().cloned().collect(), complete));
        }
        let sums = self.sums_up_to(d)?;
        let mut nulls = vec![];
        let mut all_decided = true;
        for s in sums {
            match self.is_null_bounded(&s, d.max(DEFAULT_BOUND)) {
                Verdict::In => nulls.push(s),
                Verdict::Out => {}
                Verdict::Unknown => all_decided = false,
            }
        }
        Ok((nulls, all_decided))
    }

    /// Null sums of degree <= d whose terms have monomial weight <= w,
    /// for presented carriers with a decision procedure.
    pub fn null_sums_weighted(&self, d: u32, w: u32) -> (Vec<FormalSum>, bool) {
        if let NullOracle::Generated = self.0.null {
            let gens = self.null_gens().expect("generated oracle without generators");
            let set = crate::ideals::closure::saturate(self, &gens.sums, gens.mode, d, Some(w));
            return (set.iter().cloned().collect(), false);
        }
        let elems = self.scaling_elements(w);
        let mut out = vec![];
        let mut all_decided = true;
        fn go(
            band: &Band,
            elems: &[ElementId],
            i: usize,
            left: u32,
            cur: &mut FormalSum,
            out: &mut Vec<FormalSum>,
            all_decided: &mut bool,
            d: u32,
        ) {
            if i == elems.len() {
                match band.is_null_bounded(cur, d.max(DEFAULT_BOUND)) {
                    Verdict::In => out.push(cur.clone()),
                    Verdict::Out => {}
                    Verdict::Unknown => *all_decided = false,
                }
                return;
            }
            for k in 0..=left {
                let mut next = cur.clone();
                next.push(elems[i], k);
                go(band, elems, i + 1, left - k, &mut next, out, all_decided, d);
            }
        }
        go(self, &elems, 0, d, &mut FormalSum::zero(), &mut out, &mut all_decided, d);
        out.sort();
        out.dedup();
        (out, all_decided)
    }

    // ---- monomial enumeration (presented carriers) ----

    /// Normalized carrier monomials of weight <= w, in canonical order.
    pub fn monomials_up_to(&self, w: u32) -> Vec<Monomial> {
        let Some(p) = self.presented() else { return vec![Monomial::one(0)] };
        let arity = p.arity();
        let mut raw = vec![];
        let mut cur = vec![0i32; arity];
        fn rec(
            p: &PresentedMonoid,
            i: usize,
            left: i32,
            cur: &mut Vec<i32>,
            raw: &mut Vec<Monomial>,
        ) {
            if i == cur.len() {
                raw.push(Monomial(cur.clone()));
                return;
            }
            let lo = if p.vars[i].invertible { -left } else { 0 };
            for e in lo..=left {
                cur[i] = e;
                rec(p, i + 1, left - e.abs(), cur, raw);
            }
            cur[i] = 0;
        }
        rec(p, 0, w as i32, &mut cur, &mut raw);
        let mut out: BTreeSet<Monomial> = BTreeSet::new();
        for m in raw {
            if !p.monomial_ok(&m) {
                continue;
            }
            if let Some((c, nm)) = p.normalize(p.base.one(), &m) {
                if c == p.base.one() && nm == m {
                    out.insert(m);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Nonzero elements of bounded monomial weight, usable as scalars in
    /// bounded closures and as search spaces.
    pub fn scaling_elements(&self, weight: u32) -> Vec<ElementId> {
        match &self.0.carrier {
            Carrier::Table(t) => (1..t.size).map(ElementId).collect(),
            Carrier::Presented(_) => {
                let mut out = vec![];
                for m in self.monomials_up_to(weight) {
                    for c in self.base_nonzero() {
                        if let Some(id) = self.make_elem(c, &m) {
                            out.push(id);
                        }
                    }
                }
                out.sort();
                out.dedup();
                out
            }
            Carrier::Tropical => vec![],
        }
    }

    /// Largest monomial weight appearing in a sum (0 for table carriers).
    pub fn sum_weight(&self, s: &FormalSum) -> u32 {
        if !self.is_presented() {
            return 0;
        }
        s.support()
            .map(|a| self.elem_data(a).map_or(0, |(_, m)| m.weight()))
            .max()
            .unwrap_or(0)
    }

    // ---- display ----

    pub fn elem_name(&self, a: ElementId) -> String {
        match &self.0.carrier {
            Carrier::Table(t) => t.names[a.0 as usize].clone(),
            Carrier::Tropical => {
                if a.is_zero() {
                    "0".into()
                } else {
                    self.trop_value(a).to_string()
                }
            }
            Carrier::Presented(p) => {
                if a.is_zero() {
                    return "0".into();
                }
                let (c, m) = self.elem_data(a).unwrap();
                let cn = p.base.elem_name(c);
                let mut parts = vec![];
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 1 {
                        parts.push(p.vars[i].name.clone());
                    } else if e != 0 {
                        parts.push(format!("{}^{}", p.vars[i].name, e));
                    }
                }
                if parts.is_empty() {
                    cn
                } else if c == p.base.one() {
                    parts.join("*")
                } else if c == p.base.neg(p.base.one()) && !cn.starts_with('-') {
                    format!("-{}", parts.join("*"))
                } else {
                    format!("{}*{}", cn, parts.join("*"))
                }
            }
        }
    }

    pub fn sum_name(&self, s: &FormalSum) -> String {
        if s.is_zero() {
            return "0".into();
        }
        s.iter_expanded()
            .map(|a| self.elem_name(a))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    // ---- flags ----

    pub fn topology(&self) -> Option<&[u64]> {
        self.0.topology.as_deref()
    }

    /// Idyll test: 0 != 1 and every nonzero element is a unit. Exact for
    /// table carriers; for presented carriers the structural criterion
    /// (idyll base, all variables invertible) is used.
    pub fn is_idyll(&self) -> TriState {
        {
            let cached = *self.0.idyll.read().unwrap();
            if cached != TriState::Unknown {
                return cached;
            }
        }
        let r = match &self.0.carrier {
            Carrier::Table(t) => {
                if self.is_trivial() {
                    TriState::False
                } else if (1..t.size).all(|a| self.is_unit(ElementId(a))) {
                    TriState::True
                } else {
                    TriState::False
                }
            }
            Carrier::Tropical => TriState::True,
            Carrier::Presented(p) => {
                if p.base.is_idyll().is_true() && p.vars.iter().all(|v| v.invertible) {
                    TriState::True
                } else if p.vars.iter().any(|v| !v.invertible) && !p.degree0 {
                    // a non-invertible variable is a nonzero non-unit
                    if p.rules.is_empty() {
                        TriState::False
                    } else {
                        TriState::Unknown
                    }
                } else {
                    TriState::Unknown
                }
            }
        };
        *self.0.idyll.write().unwrap() = r;
        r
    }

    pub(crate) fn set_fusion_flag(&self, v: TriState) {
        *self.0.fusion.write().unwrap() = v;
    }

    pub(crate) fn set_hereditary_flag(&self, v: TriState) {
        *self.0.hereditary_fusion.write().unwrap() = v;
    }

    pub fn fusion_flag(&self) -> TriState {
        *self.0.fusion.read().unwrap()
    }

    pub fn hereditary_flag(&self) -> TriState {
        *self.0.hereditary_fusion.read().unwrap()
    }
}

/// Builds and validates a band from a multiplication table and a total
/// null predicate. The additive inverse of every element is found by
/// exhaustive search; elements with no inverse or more than one are
/// rejected.
pub fn make_finite_band(
    name: impl Into<String>,
    table: Vec<Vec<u32>>,
    names: Vec<String>,
    pred: impl Fn(&Band, &FormalSum) -> bool + Send + Sync + 'static,
) -> Result<Band> {
    let t = TableMonoid::new(table, names)?;
    let band = BandBuilder::new(name, Carrier::Table(t), NullOracle::Direct(Arc::new(pred))).build();
    validate_table_band(&band)?;
    Ok(band)
}

/// Tri-state audit of the band axioms at a degree bound: unique additive
/// inverses, no nonzero null singleton, first properties of negation,
/// and the ideal spot-check for the null set.
pub fn check_band_axioms(band: &Band, bound: u32) -> TriState {
    let Ok(elems) = band.elements() else { return TriState::Unknown };
    let mut unknown = false;
    for &a in &elems {
        let mut found = vec![];
        for &b in &elems {
            let mut s = FormalSum::zero();
            s.push(a, 1);
            s.push(b, 1);
            match band.is_null_bounded(&s, bound) {
                Verdict::In => found.push(b),
                Verdict::Unknown => unknown = true,
                Verdict::Out => {}
            }
        }
        if found.len() > 1 {
            return TriState::False;
        }
        if found.len() != 1 {
            // zero pairs found: either genuinely broken or undecided
            if !unknown {
                return TriState::False;
            }
            return TriState::Unknown;
        }
        if found[0] != band.neg(a) {
            return TriState::False;
        }
    }
    for &a in &elems {
        if a.is_zero() {
            continue;
        }
        match band.is_null_bounded(&FormalSum::singleton(a), bound) {
            Verdict::In => return TriState::False,
            Verdict::Unknown => unknown = true,
            Verdict::Out => {}
        }
    }
    let m1 = band.neg(band.one());
    if band.mul(m1, m1) != band.one() {
        return TriState::False;
    }
    if elems.iter().any(|&a| band.mul(m1, a) != band.neg(a)) {
        return TriState::False;
    }
    match check_null_is_ideal(band, bound) {
        TriState::False => return TriState::False,
        TriState::Unknown => unknown = true,
        TriState::True => {}
    }
    if unknown {
        TriState::Unknown
    } else {
        TriState::True
    }
}

/// Exhaustively checks unique inverses and first properties, and fills
/// the negation table.
pub(crate) fn validate_table_band(band: &Band) -> Result<()> {
    let t = band.table().expect("table carrier");
    let n = t.size;
    let mut neg: Vec<ElementId> = Vec::with_capacity(n as usize);
    for a in 0..n {
        let mut found = vec![];
        for b in 0..n {
            let mut s = FormalSum::zero();
            s.push(ElementId(a), 1);
            s.push(ElementId(b), 1);
            if a == b {
                s = FormalSum::from_terms([(ElementId(a), 2)]);
            }
            if band.is_null(&s).is_in() {
                found.push(ElementId(b));
            }
        }
        match found.len() {
            1 => neg.push(found[0]),
            _ => return Err(Error::NoUniqueInverse(band.elem_name(ElementId(a)))),
        }
    }
    // Singletons are never null except 0.
    for a in 1..n {
        if band.is_null(&FormalSum::singleton(ElementId(a))).is_in() {
            return Err(Error::NoUniqueInverse(format!(
                "nonzero element {} lies in the null set",
                band.elem_name(ElementId(a))
            )));
        }
    }
    if !band.is_null(&FormalSum::zero()).is_in() {
        return Err(Error::NotAMonoid("empty sum is not null".into()));
    }
    band.set_neg_table(neg.clone());
    // -a = (-1)a and (-1)^2 = 1.
    let m1 = neg[band.one().index()];
    if band.mul(m1, m1) != band.one() {
        return Err(Error::NoUniqueInverse("(-1)^2 != 1".into()));
    }
    for a in 0..n {
        if band.mul(m1, ElementId(a)) != neg[a as usize] {
            return Err(Error::NoUniqueInverse(format!(
                "-a != (-1)a for {}",
                band.elem_name(ElementId(a))
            )));
        }
    }
    Ok(())
}

/// Spot-checks that the null set is an ideal: closed under scaling and
/// under addition of null sums, up to the degree bound.
pub fn check_null_is_ideal(band: &Band, bound: u32) -> TriState {
    let Ok((nulls, _)) = band.null_sums_up_to(bound) else {
        return TriState::Unknown;
    };
    let scalars = band.scaling_elements(2);
    let mut unknown = false;
    for s in &nulls {
        for &a in &scalars {
            let v = band.is_null_bounded(&band.scale_sum(a, s), bound);
            match v {
                Verdict::Out => return TriState::False,
                Verdict::Unknown => unknown = true,
                Verdict::In => {}
            }
        }
    }
    for s in &nulls {
        for u in &nulls {
            if s.degree() + u.degree() > bound {
                continue;
            }
            match band.is_null_bounded(&s.add(u), bound) {
                Verdict::Out => return TriState::False,
                Verdict::Unknown => unknown = true,
                Verdict::In => {}
            }
        }
    }
    if unknown {
        TriState::Unknown
    } else {
        TriState::True
    }
}

/// Tests the fusion axiom exhaustively over all pairs of null sums of
/// total degree <= bound, together with the derived multiplicative
/// fusion rule as a consistency check.
pub fn check_fusion(band: &Band, bound: u32) -> TriState {
    let nulls = match band.null_sums_up_to(bound) {
        Ok((n, _)) => n,
        Err(_) => return TriState::Unknown,
    };
    let mut unknown = false;
    for x in &nulls {
        for c_neg in x.support() {
            let c = band.neg(c_neg);
            let x_rest = x.remove_one(c_neg).unwrap();
            for y in &nulls {
                if !y.contains(c) || x.degree() + y.degree() > bound + 2 {
                    continue;
                }
                let y_rest = y.remove_one(c).unwrap();
                let z = x_rest.add(&y_rest);
                if z.degree() > bound {
                    continue;
                }
                match band.is_null_bounded(&z, bound) {
                    Verdict::Out => return TriState::False,
                    Verdict::Unknown => unknown = true,
                    Verdict::In => {}
                }
            }
        }
    }
    // (F*): from c - sum(a_i) and d - sum(b_j) null, c*d - sum(a_i b_j)
    // must be null.
    for x in &nulls {
        for c in x.support() {
            let a_terms = band.neg_sum(&x.remove_one(c).unwrap());
            for y in &nulls {
                for d in y.support() {
                    let b_terms = band.neg_sum(&y.remove_one(d).unwrap());
                    let mut z = FormalSum::singleton(band.mul(c, d));
                    for (ai, ka) in a_terms.iter() {
                        for (bj, kb) in b_terms.iter() {
                            z.push(band.neg(band.mul(ai, bj)), ka * kb);
                        }
                    }
                    if z.degree() > bound {
                        continue;
                    }
                    match band.is_null_bounded(&z, bound) {
                        Verdict::Out => return TriState::False,
                        Verdict::Unknown => unknown = true,
                        Verdict::In => {}
                    }
                }
            }
        }
    }
    let r = if unknown { TriState::Unknown } else { TriState::True };
    if r == TriState::True && band.fusion_flag() == TriState::Unknown {
        band.set_fusion_flag(TriState::True);
    }
    r
}

/// Hereditary fusion check: the fusion closure of the null sums of
/// degree <= 3 must reproduce every null sum up to the bound.
pub fn check_hereditary_fusion(band: &Band, bound: u32) -> TriState {
    let (nulls, complete) = match band.null_sums_up_to(bound) {
        Ok(v) => v,
        Err(_) => return TriState::Unknown,
    };
    let seed: Vec<FormalSum> = nulls.iter().filter(|s| s.degree() <= 3).cloned().collect();
    let closure = crate::ideals::closure::saturate(band, &seed, Mode::Fusion, bound, None);
    let mut ok = true;
    for s in &nulls {
        if !closure.contains(s) {
            ok = false;
            break;
        }
    }
    let r = if ok {
        if complete || band.has_direct_oracle() {
            TriState::True
        } else {
            TriState::True // holds for all null sums visible at this bound
        }
    } else {
        TriState::Unknown
    };
    if r == TriState::True && band.hereditary_flag() == TriState::Unknown {
        band.set_hereditary_flag(TriState::True);
    }
    r
}
