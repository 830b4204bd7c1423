//! Machine-readable export of the equations: JSON with exact cyclotomic
//! coefficients, or a plain-text polynomial list for pasting into a
//! computer-algebra session.
//!
//! The JSON document round-trips through [`parse_document`]; term order is
//! the BTreeMap order of the underlying polynomials, so identical inputs
//! serialize byte-identically.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicField, CyclotomicNumber, Level};
use crate::error::{Error, Result};
use crate::poly::{SparsePoly, VarSet};
use crate::quadrics::{
    all_generators, canonical_triples, determine_kappa, eliminated_quadric, embed_poly,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportTerm {
    /// Exponent map keyed by variable name (s1..sm, t1..tm).
    pub monomial: BTreeMap<String, u16>,
    pub coeff: CyclotomicNumber,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportPoly {
    pub triple: [i64; 3],
    pub terms: Vec<ExportTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportDocument {
    pub p: u64,
    /// Numerator of the resolved sum-of-squares coefficient; the full
    /// coefficient in the quadrics is kappa/(p-2).
    pub kappa: i64,
    pub weighted_generators: Vec<ExportPoly>,
    pub eliminated_quadrics: Vec<ExportPoly>,
}

fn poly_to_terms(poly: &SparsePoly<CyclotomicNumber>) -> Vec<ExportTerm> {
    let vars = poly.vars;
    poly.terms()
        .map(|(mono, coeff)| {
            let mut map = BTreeMap::new();
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    map.insert(vars.name(i), e);
                }
            }
            ExportTerm {
                monomial: map,
                coeff: coeff.clone(),
            }
        })
        .collect()
}

fn terms_to_poly(level: Level, terms: &[ExportTerm]) -> Result<SparsePoly<CyclotomicNumber>> {
    let f = CyclotomicField::new(level);
    let m = level.m();
    let vars = VarSet::ReducedSt { m };
    let mut poly = SparsePoly::zero(vars);
    for term in terms {
        let mut mono = vec![0u16; vars.nvars()];
        for (name, &e) in &term.monomial {
            let idx = (0..vars.nvars())
                .find(|&i| vars.name(i) == *name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
            mono[idx] = e;
        }
        poly.add_term(&f, mono, term.coeff.clone());
    }
    Ok(poly)
}

/// Builds the full document: generators, resolved kappa, eliminated quadrics.
pub fn build_document(level: Level, order: i64) -> Result<ExportDocument> {
    let kappa = determine_kappa(level, order)?.kappa;
    let kappa_int: i64 = kappa
        .to_integer()
        .try_into()
        .map_err(|_| Error::Parse("kappa out of range".into()))?;
    let weighted_generators = all_generators(level)
        .into_iter()
        .map(|g| ExportPoly {
            triple: [g.triple.0, g.triple.1, g.triple.2],
            terms: poly_to_terms(&embed_poly(level, &g.poly)),
        })
        .collect();
    let eliminated_quadrics = canonical_triples(level)
        .into_iter()
        .map(|triple| {
            let q = eliminated_quadric(level, triple, &kappa)?;
            Ok(ExportPoly {
                triple: [triple.0, triple.1, triple.2],
                terms: poly_to_terms(&embed_poly(level, &q)),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ExportDocument {
        p: level.p() as u64,
        kappa: kappa_int,
        weighted_generators,
        eliminated_quadrics,
    })
}

pub fn to_json(doc: &ExportDocument) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)?)
}

/// Parses a JSON document and re-validates the polynomials against the
/// stated level.
pub fn parse_document(json: &str) -> Result<(ExportDocument, Vec<SparsePoly<CyclotomicNumber>>)> {
    let doc: ExportDocument = serde_json::from_str(json)?;
    let level = Level::new(doc.p)?;
    let polys = doc
        .weighted_generators
        .iter()
        .chain(doc.eliminated_quadrics.iter())
        .map(|ep| terms_to_poly(level, &ep.terms))
        .collect::<Result<_>>()?;
    Ok((doc, polys))
}

/// Plain-text quadric list in s1..sm with rational coefficients, one
/// polynomial per line, headed by a comment with p and kappa.
pub fn to_cas_script(doc: &ExportDocument) -> Result<String> {
    let level = Level::new(doc.p)?;
    let mut out = String::new();
    out.push_str(&format!(
        "# X1({}) as quadrics in s1..s{}; kappa = {} (coefficient kappa/(p-2) on sum of squares)\n",
        doc.p,
        level.m(),
        doc.kappa
    ));
    for ep in &doc.eliminated_quadrics {
        let poly = terms_to_poly(level, &ep.terms)?;
        out.push_str(&format!(
            "q_{}_{}_{} := {};\n",
            ep.triple[0],
            ep.triple[1],
            ep.triple[2],
            format_rational_poly(&poly)?
        ));
    }
    Ok(out)
}

fn format_rational_poly(poly: &SparsePoly<CyclotomicNumber>) -> Result<String> {
    let vars = poly.vars;
    let mut pieces: Vec<String> = Vec::new();
    for (mono, coeff) in poly.terms() {
        let r: BigRational = coeff
            .as_rational()
            .ok_or_else(|| Error::Parse("non-rational coefficient in cas export".into()))?;
        let mono_str: Vec<String> = mono
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars.name(i)
                } else {
                    format!("{}^{}", vars.name(i), e)
                }
            })
            .collect();
        let coeff_str = if r.denom() == &BigInt::from(1) {
            format!("{}", r.numer())
        } else {
            format!("({})", r)
        };
        let piece = if mono_str.is_empty() {
            coeff_str
        } else if r == BigRational::from(BigInt::from(1)) {
            mono_str.join("*")
        } else if r == BigRational::from(BigInt::from(-1)) {
            format!("-{}", mono_str.join("*"))
        } else {
            format!("{}*{}", coeff_str, mono_str.join("*"))
        };
        pieces.push(piece);
    }
    if pieces.is_empty() {
        return Ok("0".into());
    }
    let mut s = pieces[0].clone();
    for piece in &pieces[1..] {
        if let Some(stripped) = piece.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(stripped);
        } else {
            s.push_str(" + ");
            s.push_str(piece);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_roundtrip() {
        let level = Level::new(5).unwrap();
        let doc = build_document(level, 12).unwrap();
        assert_eq!(doc.kappa, 6);
        assert_eq!(doc.weighted_generators.len(), 4);
        assert_eq!(doc.eliminated_quadrics.len(), 4);

        let json = to_json(&doc).unwrap();
        let (parsed, polys) = parse_document(&json).unwrap();
        assert_eq!(parsed.p, 5);
        assert_eq!(parsed.kappa, 6);
        assert_eq!(polys.len(), 8);
        // byte-identical re-serialization
        assert_eq!(to_json(&parsed).unwrap(), json);

        // parsed generators match rebuilt ones exactly
        let rebuilt = all_generators(level);
        for (ep, g) in parsed.weighted_generators.iter().zip(&rebuilt) {
            let poly = terms_to_poly(level, &ep.terms).unwrap();
            assert_eq!(poly, embed_poly(level, &g.poly));
        }
    }

    #[test]
    fn cas_script_shape() {
        let level = Level::new(7).unwrap();
        let doc = build_document(level, 12).unwrap();
        let script = to_cas_script(&doc).unwrap();
        let poly_lines: Vec<&str> = script
            .lines()
            .filter(|l| l.starts_with("q_"))
            .collect();
        assert_eq!(poly_lines.len(), 8);
        assert!(script.starts_with("# X1(7)"));
        assert!(script.contains("kappa = 6"));
        // variables stay in the reduced range and the t's are gone
        for line in &poly_lines {
            assert!(!line.contains("s4"));
            assert!(!line.contains("t1") && !line.contains("t2") && !line.contains("t3"));
        }
    }
}
