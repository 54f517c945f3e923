//! The standard library of bands: the regular partial field, the Krasner
//! and sign hyperfields, small finite fields, the tropical hyperfield,
//! and the near-regular, dyadic and golden-ratio pastures.

use std::sync::{Arc, OnceLock};

use crate::core::band::{
    make_finite_band, Band, BandBuilder, Carrier, Mode, NullGens, NullOracle, TriState,
};
use crate::core::elem::{ElementId, FormalSum};
use crate::core::monoid::{TableMonoid, VarDecl};
use crate::error::{Error, Result};

fn set_flags(b: &Band, fusion: TriState, hereditary: TriState) {
    b.set_fusion_flag(fusion);
    b.set_hereditary_flag(hereditary);
}

/// `F1pm = {0, 1, -1}`: the initial band. Null sums are the balanced
/// ones (equally many 1 and -1 terms).
pub fn f1pm() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = make_finite_band(
            "F1pm",
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
            vec!["0".into(), "1".into(), "-1".into()],
            |_, s| s.multiplicity(ElementId(1)) == s.multiplicity(ElementId(2)),
        )
        .expect("F1pm is a band");
        b.set_null_gens(NullGens {
            sums: vec![FormalSum::from_terms([(ElementId(1), 1), (ElementId(2), 1)])],
            mode: Mode::Null,
        });
        set_flags(&b, TriState::True, TriState::True);
        b
    })
    .clone()
}

/// The Krasner hyperfield `K = {0, 1}`: a sum is null iff it is empty or
/// has at least two terms. Terminal among idylls. Carries its natural
/// topology with opens {}, {1}, K.
pub fn krasner() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = TableMonoid::new(vec![vec![0, 0], vec![0, 1]], vec!["0".into(), "1".into()])
            .unwrap();
        let mut builder = BandBuilder::new(
            "K",
            Carrier::Table(t),
            NullOracle::Direct(Arc::new(|_, s: &FormalSum| {
                s.degree() == 0 || s.degree() >= 2
            })),
        );
        builder.topology = Some(vec![0b00, 0b10, 0b11]);
        let b = builder.build();
        crate::core::band::validate_table_band(&b).expect("K is a band");
        b.set_null_gens(NullGens {
            sums: vec![
                FormalSum::from_terms([(ElementId(1), 2)]),
                FormalSum::from_terms([(ElementId(1), 3)]),
            ],
            mode: Mode::Null,
        });
        set_flags(&b, TriState::True, TriState::True);
        b
    })
    .clone()
}

/// The sign hyperfield `S = {0, 1, -1}`: a sum of n ones and m minus-ones
/// is null iff n = m = 0 or n, m >= 1. Natural topology {}, {1}, {-1},
/// {1,-1}, S.
pub fn sign() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = TableMonoid::new(
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
            vec!["0".into(), "1".into(), "-1".into()],
        )
        .unwrap();
        let mut builder = BandBuilder::new(
            "S",
            Carrier::Table(t),
            NullOracle::Direct(Arc::new(|_, s: &FormalSum| {
                let n = s.multiplicity(ElementId(1));
                let m = s.multiplicity(ElementId(2));
                (n == 0 && m == 0) || (n > 0 && m > 0)
            })),
        );
        builder.topology = Some(vec![0b000, 0b010, 0b100, 0b110, 0b111]);
        let b = builder.build();
        crate::core::band::validate_table_band(&b).expect("S is a band");
        b.set_null_gens(NullGens {
            sums: vec![FormalSum::from_terms([(ElementId(1), 2), (ElementId(2), 1)])],
            mode: Mode::Fusion,
        });
        set_flags(&b, TriState::True, TriState::True);
        b
    })
    .clone()
}

/// The ring Z/m as a band: a sum is null iff it evaluates to 0 mod m.
pub fn ring_band(m: u32) -> Band {
    assert!(m >= 1);
    let name = match m {
        2 => "F2".to_string(),
        3 => "F3".to_string(),
        5 => "F5".to_string(),
        _ => format!("Z/{m}"),
    };
    let table: Vec<Vec<u32>> = (0..m).map(|a| (0..m).map(|b| (a * b) % m).collect()).collect();
    let names: Vec<String> = (0..m).map(|a| a.to_string()).collect();
    let b = make_finite_band(name, table, names, move |_, s: &FormalSum| {
        let total: u64 = s.iter().map(|(a, k)| a.0 as u64 * k as u64).sum();
        total % m as u64 == 0
    })
    .expect("Z/m is a band");
    let gens = three_term_nulls(&b);
    b.set_null_gens(NullGens { sums: gens, mode: Mode::Fusion });
    set_flags(&b, TriState::True, TriState::True);
    b
}

/// The field with four elements {0, 1, x, x^2}, x^3 = 1.
pub fn gf4() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        // addition table of GF(4): a + a = 0, 1 + x = x^2 and cyclic
        const ADD: [[u32; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        let b = make_finite_band(
            "F4",
            vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 2, 3],
                vec![0, 2, 3, 1],
                vec![0, 3, 1, 2],
            ],
            vec!["0".into(), "1".into(), "x".into(), "x^2".into()],
            |_, s: &FormalSum| {
                let mut acc = 0u32;
                for a in s.iter_expanded() {
                    acc = ADD[acc as usize][a.index()];
                }
                acc == 0
            },
        )
        .expect("GF(4) is a band");
        let gens = three_term_nulls(&b);
        b.set_null_gens(NullGens { sums: gens, mode: Mode::Fusion });
        set_flags(&b, TriState::True, TriState::True);
        b
    })
    .clone()
}

/// Null sums of degree <= 3; fields and hyperfields are hereditary, so
/// these generate the null set as a fusion ideal.
fn three_term_nulls(b: &Band) -> Vec<FormalSum> {
    b.sums_up_to(3)
        .expect("finite carrier")
        .into_iter()
        .filter(|s| !s.is_zero() && b.is_null(s).is_in())
        .collect()
}

/// The tropical hyperfield: nonnegative exact rationals under
/// multiplication; a sum is null iff it is empty or its maximum term
/// occurs at least twice.
pub fn tropical() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut builder = BandBuilder::new(
            "T",
            Carrier::Tropical,
            NullOracle::Direct(Arc::new(|b: &Band, s: &FormalSum| {
                if s.is_zero() {
                    return true;
                }
                let max = s.support().map(|a| b.trop_value(a)).max().unwrap();
                let count: u32 = s
                    .iter()
                    .filter(|(a, _)| b.trop_value(*a) == max)
                    .map(|(_, k)| k)
                    .sum();
                count >= 2
            })),
        );
        builder.idyll = TriState::True;
        builder.fusion = TriState::True;
        builder.hereditary_fusion = TriState::True;
        builder.build()
    })
    .clone()
}

/// The trivial band {0} with 0 = 1 and null set {0}.
pub fn trivial() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = make_finite_band("0", vec![vec![0]], vec!["0".into()], |_, _| true)
            .expect("trivial band");
        b.set_null_gens(NullGens { sums: vec![], mode: Mode::Null });
        set_flags(&b, TriState::True, TriState::True);
        b
    })
    .clone()
}

/// Pasture presented over F1pm by Laurent variables and one three-term
/// fusion relation.
fn pasture(name: &str, vars: &[&str], gen_terms: impl Fn(&Band) -> FormalSum) -> Band {
    let base = f1pm();
    let p = crate::core::monoid::PresentedMonoid {
        base,
        vars: vars.iter().map(|v| VarDecl::laurent(*v)).collect(),
        rules: vec![],
        degree0: false,
    };
    let mut builder = BandBuilder::new(name, Carrier::Presented(p), NullOracle::Generated);
    builder.idyll = TriState::True;
    builder.fusion = TriState::True;
    builder.hereditary_fusion = TriState::True;
    let b = builder.build();
    let mut gens = lifted_base_nulls(&b);
    gens.push(gen_terms(&b));
    b.set_null_gens(NullGens { sums: gens, mode: Mode::Fusion });
    b
}

/// Lifts the base band's null generators into a presented band.
pub(crate) fn lifted_base_nulls(b: &Band) -> Vec<FormalSum> {
    let base = b.base_band();
    let one_mono = crate::core::monoid::Monomial::one(b.arity());
    let lift = |s: &FormalSum| -> FormalSum {
        FormalSum::from_terms(s.iter().map(|(a, k)| {
            (b.make_elem(a, &one_mono).expect("nonzero base element"), k)
        }))
    };
    match base.null_gens() {
        Some(g) => g.sums.iter().map(lift).collect(),
        None => {
            let (nulls, _) = base.null_sums_up_to(3).expect("finite base");
            nulls.iter().filter(|s| !s.is_zero()).map(lift).collect()
        }
    }
}

/// Near-regular pasture U = F1pm(x, y) |_ x + y - 1.
pub fn near_regular() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        pasture("U", &["x", "y"], |b| {
            FormalSum::from_terms([
                (b.var_elem(0), 1),
                (b.var_elem(1), 1),
                (b.neg(b.one()), 1),
            ])
        })
    })
    .clone()
}

/// Dyadic pasture D = F1pm(x) |_ x + x - 1.
pub fn dyadic() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        pasture("D", &["x"], |b| {
            FormalSum::from_terms([(b.var_elem(0), 2), (b.neg(b.one()), 1)])
        })
    })
    .clone()
}

/// Golden-ratio pasture G = F1pm(x) |_ x^2 + x - 1.
pub fn golden() -> Band {
    static CELL: OnceLock<Band> = OnceLock::new();
    CELL.get_or_init(|| {
        pasture("G", &["x"], |b| {
            let x = b.var_elem(0);
            FormalSum::from_terms([(b.mul(x, x), 1), (x, 1), (b.neg(b.one()), 1)])
        })
    })
    .clone()
}

/// Finite field F4 and pasture F5 presented as quotients of F1pm[x],
/// materialized through the quotient machinery.
pub fn f4_quotient() -> Result<Band> {
    let fx = crate::constructions::free_algebra(&f1pm(), &["x"])?;
    let one = fx.one();
    let x = fx.var_elem(0);
    let x2 = fx.mul(x, x);
    let x3 = fx.mul(x2, x);
    let gens = vec![
        FormalSum::from_terms([(one, 2)]),
        FormalSum::from_terms([(x3, 1), (one, 1)]),
        FormalSum::from_terms([(x2, 1), (x, 1), (one, 1)]),
    ];
    let ideal = crate::ideals::null_ideal_generated(&fx, gens, Mode::Null, 6);
    let (band, _) = crate::ideals::quotient_named("F4q", &fx, &ideal)?;
    Ok(band)
}

pub fn f5_quotient() -> Result<Band> {
    let fx = crate::constructions::free_algebra(&f1pm(), &["x"])?;
    let one = fx.one();
    let x = fx.var_elem(0);
    let x2 = fx.mul(x, x);
    let gens = vec![
        FormalSum::from_terms([(x2, 1), (one, 1)]),
        FormalSum::from_terms([(x, 1), (fx.neg(one), 2)]),
    ];
    let ideal = crate::ideals::null_ideal_generated(&fx, gens, Mode::Fusion, 6);
    let (band, _) = crate::ideals::quotient_named("F5q", &fx, &ideal)?;
    Ok(band)
}

/// A hyperfield given by its multiplication table and hyperaddition
/// (bitmask of possible sums per element pair).
pub fn hyperfield_band(
    name: impl Into<String>,
    mul: Vec<Vec<u32>>,
    names: Vec<String>,
    hyperadd: Vec<Vec<u64>>,
) -> Result<Band> {
    let n = names.len();
    if hyperadd.len() != n || hyperadd.iter().any(|r| r.len() != n) {
        return Err(Error::NotAMonoid("hyperaddition table is not square".into()));
    }
    let b = make_finite_band(name, mul, names, move |_, s: &FormalSum| {
        // fold the hypersum as a set of possible values
        let mut reachable: u64 = 1; // {0}
        for a in s.iter_expanded() {
            let mut next = 0u64;
            for v in 0..n {
                if reachable >> v & 1 == 1 {
                    next |= hyperadd[v][a.index()];
                }
            }
            reachable = next;
        }
        reachable & 1 == 1
    })?;
    set_flags(&b, TriState::True, TriState::Unknown);
    Ok(b)
}

/// Looks up a band of the standard library by name.
///
/// Accepted names: F1pm, K, S, F2, F3, F4, F5, T, U, D, G, 0 (trivial),
/// and Z/m for any modulus m. F4 and F5 denote the finite fields; their
/// finitely presented avatars are available from [`f4_quotient`] and
/// [`f5_quotient`].
pub fn standard_band(name: &str) -> Result<Band> {
    match name {
        "F1pm" | "F1" => Ok(f1pm()),
        "K" => Ok(krasner()),
        "S" => Ok(sign()),
        "F2" => Ok(ring_band(2)),
        "F3" => Ok(ring_band(3)),
        "F4" => Ok(gf4()),
        "F5" => Ok(ring_band(5)),
        "T" => Ok(tropical()),
        "U" => Ok(near_regular()),
        "D" => Ok(dyadic()),
        "G" => Ok(golden()),
        "0" | "trivial" => Ok(trivial()),
        _ => {
            if let Some(m) = name.strip_prefix("Z/") {
                let m: u32 = m
                    .parse()
                    .map_err(|_| Error::UnknownName(name.to_string()))?;
                return Ok(ring_band(m));
            }
            Err(Error::UnknownName(name.to_string()))
        }
    }
}

/// Cached instances of the standard bands, for registries.
pub struct StandardBands;

impl StandardBands {
    pub fn names() -> &'static [&'static str] {
        &["F1pm", "K", "S", "F2", "F3", "F4", "F5", "T", "U", "D", "G", "0"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::band::{check_fusion, Verdict};

    #[test]
    fn standard_bands_validate() {
        for name in StandardBands::names() {
            if *name == "T" {
                continue;
            }
            let b = standard_band(name).unwrap();
            if b.is_table() {
                assert_eq!(
                    crate::core::band::check_band_axioms(&b, 5),
                    TriState::True,
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn krasner_nulls() {
        let k = krasner();
        let one = k.one();
        assert!(k.is_null(&FormalSum::from_terms([(one, 3)])).is_in());
        assert_eq!(k.is_null(&FormalSum::singleton(one)), Verdict::Out);
        assert!(k.is_null(&FormalSum::zero()).is_in());
    }

    #[test]
    fn tropical_nulls_are_exact() {
        use num::BigRational;
        let t = tropical();
        let three = t.trop_elem(BigRational::from_integer(3.into()));
        let one = t.trop_elem(BigRational::from_integer(1.into()));
        let s = FormalSum::from_terms([(three, 2), (one, 1)]);
        assert_eq!(t.is_null(&s), Verdict::In);
        let s = FormalSum::from_terms([(three, 1), (one, 1)]);
        assert_eq!(t.is_null(&s), Verdict::Out);
        assert_eq!(t.neg(three), three);
    }

    #[test]
    fn fusion_checks_pass_for_hyperfields() {
        assert_eq!(check_fusion(&krasner(), 6), TriState::True);
        assert_eq!(check_fusion(&sign(), 6), TriState::True);
        assert_eq!(check_fusion(&trivial(), 6), TriState::True);
    }

    #[test]
    fn f1pm_is_idyll_with_self_inverse_minus_one() {
        let b = f1pm();
        assert!(b.is_idyll().is_true());
        let m1 = b.neg(b.one());
        assert_eq!(b.mul(m1, m1), b.one());
    }
}
