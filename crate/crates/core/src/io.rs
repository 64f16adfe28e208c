//! Domain files and the persisted decode table.
//!
//! Domain JSON:
//!
//! ```json
//! {"dim": 2, "box_scale": "2/1",
//!  "polynomials": [{"terms": [{"coeff": "-1", "exponents": [2, 0]}]}]}
//! ```
//!
//! Coefficients are decimal strings of unbounded size.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::enumeration::{Case, Code, Decoder};
use crate::error::{Error, Result};
use crate::exact::{fraction, parse_fraction};
use crate::semialg::{BasicDomain, IntPolynomial};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainFile {
    dim: usize,
    box_scale: String,
    polynomials: Vec<PolynomialFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialFile {
    terms: Vec<TermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    coeff: String,
    exponents: Vec<u32>,
}

fn format_err(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Format { context: context.into(), message: message.into() }
}

fn json_err(what: &str, e: &serde_json::Error) -> Error {
    format_err(format!("{what} line {} column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_domain(text: &str) -> Result<BasicDomain> {
    let file: DomainFile = serde_json::from_str(text).map_err(|e| json_err("domain JSON", &e))?;
    let box_scale = parse_fraction(&file.box_scale)
        .map_err(|e| format_err("box_scale", e.to_string()))?;
    let mut constraints = Vec::with_capacity(file.polynomials.len());
    for (i, poly) in file.polynomials.iter().enumerate() {
        let mut terms = Vec::with_capacity(poly.terms.len());
        for (j, term) in poly.terms.iter().enumerate() {
            let at = |field: &str| format!("polynomials[{i}].terms[{j}].{field}");
            if term.exponents.len() != file.dim {
                return Err(format_err(
                    at("exponents"),
                    format!("dimension mismatch: length {}, expected {}", term.exponents.len(), file.dim),
                ));
            }
            let c: BigInt = term
                .coeff
                .trim()
                .parse()
                .map_err(|e| format_err(at("coeff"), format!("{:?}: {e}", term.coeff)))?;
            terms.push((term.exponents.clone(), c));
        }
        constraints.push(IntPolynomial::from_terms(file.dim, terms)?);
    }
    BasicDomain::new(file.dim, box_scale, constraints)
}

/// Normalised JSON: reduced `p/q` scale, merged terms sorted by exponent.
pub fn serialize_domain(domain: &BasicDomain) -> String {
    let file = DomainFile {
        dim: domain.dim(),
        box_scale: fraction(domain.box_scale()),
        polynomials: domain
            .constraints()
            .iter()
            .map(|p| PolynomialFile {
                terms: p
                    .terms()
                    .map(|(e, c)| TermFile { coeff: c.to_string(), exponents: e.to_vec() })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("domain serialises") + "\n"
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_domain(path: &Path) -> Result<BasicDomain> {
    parse_domain(&read(path)?).map_err(|e| match e {
        Error::Format { context, message } => {
            Error::Format { context: format!("{}: {context}", path.display()), message }
        }
        other => other,
    })
}

pub fn save_domain(path: &Path, domain: &BasicDomain) -> Result<()> {
    write(path, &serialize_domain(domain))
}

const CACHE_FORMAT: &str = "nonperiod-decode-cache";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheFile {
    format: String,
    version: u32,
    limit: u64,
    entries: Vec<CacheEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheEntry {
    code: u64,
    case: String,
    operands: Vec<u64>,
}

fn case_name(case: &Case) -> &'static str {
    match case {
        Case::Identity => "identity",
        Case::Succ(_) => "succ",
        Case::Monus(..) => "monus",
        Case::Quot(..) => "quot",
        Case::Pow(..) => "pow",
        Case::Zero => "zero",
    }
}

pub fn serialize_cache(decoder: &Decoder) -> String {
    let entries = decoder
        .cached_codes()
        .into_iter()
        .map(|code| {
            let case = Case::of(Code(code));
            CacheEntry { code, case: case_name(&case).into(), operands: case.operands() }
        })
        .collect();
    let file = CacheFile { format: CACHE_FORMAT.into(), version: 1, limit: decoder.limit(), entries };
    serde_json::to_string(&file).expect("cache serialises") + "\n"
}

/// Rebuilds a decoder from a persisted table. Every entry is checked against
/// the pairing structure of its code.
pub fn parse_cache(text: &str) -> Result<Decoder> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| json_err("decode cache", &e))?;
    if file.format != CACHE_FORMAT || file.version != 1 {
        return Err(format_err("format", format!("unsupported cache {} v{}", file.format, file.version)));
    }
    let decoder = Decoder::with_limit(file.limit);
    let mut last = None;
    for (i, entry) in file.entries.iter().enumerate() {
        let at = format!("entries[{i}]");
        if last.is_some_and(|prev| entry.code <= prev) {
            return Err(format_err(at, "codes must be strictly ascending"));
        }
        last = Some(entry.code);
        let case = Case::of(Code(entry.code));
        if entry.case != case_name(&case) || entry.operands != case.operands() {
            return Err(format_err(
                at,
                format!("code {} decodes as {} {:?}", entry.code, case_name(&case), case.operands()),
            ));
        }
        if entry.code < file.limit {
            decoder.insert_case(entry.code, case);
        }
    }
    Ok(decoder)
}

pub fn load_cache(path: &Path) -> Result<Decoder> {
    parse_cache(&read(path)?)
}

pub fn save_cache(path: &Path, decoder: &Decoder) -> Result<()> {
    write(path, &serialize_cache(decoder))
}
