//! Resolves presentation-file definitions and builtin names into bands
//! and schemes.

use std::collections::BTreeMap;

use crate::cli::parse::{BandDef, GradedDef, Item, MonoExpr, PresentationFile, SchemeDef, SumExpr};
use crate::constructions::monoid_algebra;
use crate::core::monoid::{RewriteRule, VarDecl};
use crate::core::{standard_band, Band, ElementId, FormalSum, Monomial, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::ideals::{null_ideal_generated, quotient_named};
use crate::schemes::{
    affine_scheme, doubled_line, glue, grassmannian, proj, projective_space, BandScheme,
    GluingData, GradedPresentation,
};

/// Named bands and schemes available to the command dispatcher.
/// Scheme definitions are kept as source and rebuilt per lookup.
pub struct Registry {
    pub bands: BTreeMap<String, Band>,
    scheme_defs: BTreeMap<String, SchemeDef>,
    graded_defs: BTreeMap<String, GradedDef>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry {
            bands: BTreeMap::new(),
            scheme_defs: BTreeMap::new(),
            graded_defs: BTreeMap::new(),
        }
    }

    /// Loads every definition of a parsed file, in order. Band blocks
    /// are built eagerly (reporting errors at load time); scheme and
    /// graded blocks are validated by building them once.
    pub fn load(&mut self, file: &PresentationFile) -> Result<()> {
        for item in &file.items {
            match item {
                Item::Band(def) => {
                    let b = self.build_band(def)?;
                    self.bands.insert(def.name.clone(), b);
                }
                Item::Scheme(def) => {
                    self.build_scheme(def)?;
                    self.scheme_defs.insert(def.name.clone(), def.clone());
                }
                Item::Graded(def) => {
                    self.build_graded(def)?;
                    self.graded_defs.insert(def.name.clone(), def.clone());
                }
            }
        }
        Ok(())
    }

    /// Looks up a band: file definitions first, then the standard
    /// library, then coordinate algebras of builtin schemes.
    pub fn band(&self, name: &str) -> Result<Band> {
        if let Some(b) = self.bands.get(name) {
            return Ok(b.clone());
        }
        if let Ok(b) = standard_band(name) {
            return Ok(b);
        }
        match name {
            "A1" => crate::constructions::free_algebra(&crate::core::standard::f1pm(), &["T"]),
            "A2" => {
                crate::constructions::free_algebra(&crate::core::standard::f1pm(), &["x", "y"])
            }
            "A3" => crate::constructions::free_algebra(
                &crate::core::standard::f1pm(),
                &["x", "y", "z"],
            ),
            "F4q" => crate::core::standard::f4_quotient(),
            "F5q" => crate::core::standard::f5_quotient(),
            "SL2" => crate::visualize::sl_band(2),
            "SL3" => crate::visualize::sl_band(3),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// Looks up a scheme: file definitions, then builtins (affine
    /// schemes of known bands, projective spaces, SL_n, the doubled
    /// line, and Gr(r,n) as `Gr24`-style names).
    pub fn scheme(&self, name: &str) -> Result<BandScheme> {
        if let Some(def) = self.scheme_defs.get(name) {
            return self.build_scheme(def);
        }
        if let Some(def) = self.graded_defs.get(name) {
            return self.build_graded(def);
        }
        let f1 = crate::core::standard::f1pm();
        if let Some(n) = name.strip_prefix('P') {
            if let Ok(n) = n.parse::<usize>() {
                return projective_space(&f1, n);
            }
        }
        if let Some(rn) = name.strip_prefix("Gr") {
            let digits: Vec<u32> = rn.chars().filter_map(|c| c.to_digit(10)).collect();
            if digits.len() == 2 {
                return grassmannian(digits[0] as usize, digits[1] as usize, &f1);
            }
        }
        if name == "DL" {
            return doubled_line(&f1);
        }
        affine_scheme(&self.band(name)?)
    }

    fn build_band(&self, def: &BandDef) -> Result<Band> {
        let base = match &def.base {
            None => crate::core::standard::f1pm(),
            Some(name) => self
                .band(name)
                .map_err(|_| Error::UnknownBase(name.clone()))?,
        };
        if !base.is_table() {
            return Err(Error::UnknownBase(format!(
                "{} cannot serve as a coefficient band",
                base.name()
            )));
        }
        let vars: Vec<VarDecl> = def
            .gens
            .iter()
            .map(|g| VarDecl {
                name: g.clone(),
                invertible: def.invertible.contains(g),
                degree: 1,
            })
            .collect();
        let var_index: BTreeMap<&str, usize> =
            def.gens.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let compile_mono = |m: &MonoExpr| -> Result<Monomial> {
            let mut e = vec![0i32; vars.len()];
            for (v, exp) in m {
                let i = var_index
                    .get(v.as_str())
                    .ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
                e[*i] += exp;
            }
            Ok(Monomial(e))
        };
        let minus_one = base.neg(base.one());
        let rules: Vec<RewriteRule> = def
            .monoid
            .iter()
            .map(|(l, r)| {
                Ok(RewriteRule {
                    lhs: compile_mono(l)?,
                    rhs: match r {
                        None => None,
                        Some((sign, m)) => Some((
                            if *sign < 0 { minus_one } else { base.one() },
                            compile_mono(m)?,
                        )),
                    },
                })
            })
            .collect::<Result<_>>()?;
        let algebra = monoid_algebra(&base, vars, rules)?;
        if def.null.is_empty() {
            return Ok(algebra);
        }
        let gens: Vec<FormalSum> = def
            .null
            .iter()
            .map(|s| compile_sum(&algebra, &var_index, s))
            .collect::<Result<_>>()?;
        let ideal = null_ideal_generated(&algebra, gens, def.mode, DEFAULT_BOUND);
        let (band, _pi) = quotient_named(&def.name, &algebra, &ideal)?;
        Ok(band)
    }

    fn build_scheme(&self, def: &SchemeDef) -> Result<BandScheme> {
        let mut bands = vec![];
        let mut labels = BTreeMap::new();
        for (i, (label, band_name)) in def.charts.iter().enumerate() {
            labels.insert(label.as_str(), i);
            bands.push(self.band(band_name)?);
        }
        let mut gluings = vec![];
        for g in &def.glues {
            let i = *labels
                .get(g.chart_a.as_str())
                .ok_or_else(|| Error::UnknownSymbol(g.chart_a.clone()))?;
            let j = *labels
                .get(g.chart_b.as_str())
                .ok_or_else(|| Error::UnknownSymbol(g.chart_b.clone()))?;
            let elem = |band: &Band, (sign, m): &(i32, MonoExpr)| -> Result<ElementId> {
                let names = band.var_names();
                let mut e = vec![0i32; names.len()];
                for (v, exp) in m {
                    let idx = names
                        .iter()
                        .position(|n| n == v)
                        .ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
                    e[idx] += exp;
                }
                let base = band.base_band();
                let c = if *sign < 0 { base.neg(base.one()) } else { base.one() };
                band.make_elem(c, &Monomial(e)).ok_or(Error::ForeignElement)
            };
            let sub = |band: &Band,
                       names_from: &Band,
                       map: &[(String, (i32, MonoExpr))]|
             -> Result<Vec<(ElementId, Monomial)>> {
                let from_names = names_from.var_names();
                let to_names = band.var_names();
                let mut images = vec![None; from_names.len()];
                for (v, (sign, m)) in map {
                    let idx = from_names
                        .iter()
                        .position(|n| n == v)
                        .ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
                    let mut e = vec![0i32; to_names.len()];
                    for (w, exp) in m {
                        let widx = to_names
                            .iter()
                            .position(|n| n == w)
                            .ok_or_else(|| Error::UnknownSymbol(w.clone()))?;
                        e[widx] += exp;
                    }
                    let base = band.base_band();
                    let c = if *sign < 0 { base.neg(base.one()) } else { base.one() };
                    images[idx] = Some((c, Monomial(e)));
                }
                images
                    .into_iter()
                    .enumerate()
                    .map(|(k, im)| {
                        im.ok_or_else(|| Error::UnknownSymbol(from_names[k].clone()))
                    })
                    .collect()
            };
            gluings.push(GluingData {
                i,
                j,
                h_i: elem(&bands[i], &g.h_a)?,
                h_j: elem(&bands[j], &g.h_b)?,
                forward: sub(&bands[j], &bands[i], &g.forward)?,
                backward: sub(&bands[i], &bands[j], &g.backward)?,
            });
        }
        let mut s = glue(bands, gluings)?;
        s.name = def.name.clone();
        Ok(s)
    }

    fn build_graded(&self, def: &GradedDef) -> Result<BandScheme> {
        let base = match &def.base {
            None => crate::core::standard::f1pm(),
            Some(name) => self
                .band(name)
                .map_err(|_| Error::UnknownBase(name.clone()))?,
        };
        let var_index: BTreeMap<&str, usize> =
            def.vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let minus_one = base.neg(base.one());
        let generators: Vec<Vec<(ElementId, Vec<i32>)>> = def
            .relations
            .iter()
            .map(|sum| {
                sum.iter()
                    .map(|(sign, m)| {
                        let mut e = vec![0i32; def.vars.len()];
                        for (v, exp) in m {
                            let i = var_index
                                .get(v.as_str())
                                .ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
                            e[*i] += exp;
                        }
                        Ok((if *sign < 0 { minus_one } else { base.one() }, e))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let gp = GradedPresentation {
            base,
            vars: def.vars.clone(),
            degrees: vec![1; def.vars.len()],
            generators,
        };
        let mut s = proj(&gp)?;
        s.name = def.name.clone();
        Ok(s)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new()
    }
}

fn compile_sum(
    band: &Band,
    var_index: &BTreeMap<&str, usize>,
    sum: &SumExpr,
) -> Result<FormalSum> {
    let base = band.base_band();
    let minus_one = base.neg(base.one());
    let mut out = FormalSum::zero();
    for (sign, m) in sum {
        let mut e = vec![0i32; var_index.len()];
        for (v, exp) in m {
            let i = var_index
                .get(v.as_str())
                .ok_or_else(|| Error::UnknownSymbol(v.clone()))?;
            e[*i] += exp;
        }
        let c = if *sign < 0 { minus_one } else { base.one() };
        if let Some(id) = band.make_elem(c, &Monomial(e)) {
            out.push(id, 1);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::parse;

    #[test]
    fn f5_presentation_from_source() {
        let file = parse("band F5p { gens: x; null: x^2 + 1, x - 1 - 1; mode: fusion }").unwrap();
        let mut reg = Registry::new();
        reg.load(&file).unwrap();
        let b = reg.band("F5p").unwrap();
        assert_eq!(b.known_len(), 5);
    }

    #[test]
    fn undeclared_symbol_is_rejected() {
        let file = parse("band Bad { gens: x; null: y }").unwrap();
        let mut reg = Registry::new();
        match reg.load(&file) {
            Err(Error::UnknownSymbol(s)) => assert_eq!(s, "y"),
            other => panic!("expected UnknownSymbol, got {other:?}"),
        }
    }

    #[test]
    fn builtin_names_resolve() {
        let reg = Registry::new();
        assert_eq!(reg.band("A2").unwrap().arity(), 2);
        assert_eq!(reg.scheme("P2").unwrap().points.len(), 7);
        assert_eq!(reg.scheme("SL2").unwrap().charts.len(), 1);
    }
}
