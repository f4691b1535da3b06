use std::collections::HashMap;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::element::{FactorElem, GroupElement};
use crate::group::factor::Factor;
use crate::group::spec::GroupSpec;

const MAX_EXPONENT: i64 = 1 << 40;

enum Atom {
    FiniteElem { factor: u8, elem: u16 },
    AbelianDir { factor: u8, coord: u8 },
}

fn name_map(spec: &GroupSpec) -> HashMap<&str, Atom> {
    let mut map = HashMap::new();
    for (fi, factor) in spec.factors().iter().enumerate() {
        match factor {
            Factor::Finite(f) => {
                for (e, n) in f.names.iter().enumerate().skip(1) {
                    map.insert(
                        n.as_str(),
                        Atom::FiniteElem {
                            factor: fi as u8,
                            elem: e as u16,
                        },
                    );
                }
            }
            Factor::Abelian(a) => {
                for (d, n) in a.names.iter().enumerate() {
                    map.insert(
                        n.as_str(),
                        Atom::AbelianDir {
                            factor: fi as u8,
                            coord: d as u8,
                        },
                    );
                }
            }
        }
    }
    map
}

/// Formats the normal form as a `*`-joined word; the identity is `"1"`.
pub fn format_element(spec: &GroupSpec, g: &GroupElement) -> String {
    if g.is_identity() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for syl in g.syllables() {
        match (&spec.factors()[syl.factor as usize], &syl.elem) {
            (Factor::Finite(f), FactorElem::Finite(e)) => {
                parts.push(f.names[*e as usize].clone());
            }
            (Factor::Abelian(a), FactorElem::Vector(v)) => {
                for (d, c) in v.iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    if *c == 1 {
                        parts.push(a.names[d].clone());
                    } else {
                        parts.push(format!("{}^{}", a.names[d], c));
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    parts.join("*")
}

/// Parses a word in the generators/element names into normal form.
/// Tokens are separated by `*` or whitespace; each token is `name` or
/// `name^exponent`; `1` denotes the identity. Arbitrary (non-normal) words
/// are accepted and normalized, so `parse(format(g)) == g`.
pub fn parse_element(spec: &GroupSpec, input: &str) -> Result<GroupElement> {
    let map = name_map(spec);
    let mut out = spec.identity();
    let mut seen_any = false;
    for raw in input.split(|c: char| c == '*' || c.is_whitespace()) {
        let tok = raw.trim();
        if tok.is_empty() {
            continue;
        }
        seen_any = true;
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| Error::Spec(format!("bad exponent in token {tok:?}")))?;
                (n, exp)
            }
            None => (tok, 1),
        };
        if exp.abs() > MAX_EXPONENT {
            return Err(Error::Spec(format!("exponent out of range in {tok:?}")));
        }
        let atom = map
            .get(name)
            .ok_or_else(|| Error::Spec(format!("unknown generator or element name {name:?}")))?;
        let syl: Option<(u8, FactorElem)> = match atom {
            Atom::FiniteElem { factor, elem } => {
                let f = match &spec.factors()[*factor as usize] {
                    Factor::Finite(f) => f,
                    _ => unreachable!(),
                };
                let base = if exp >= 0 { *elem } else { f.inv(*elem) };
                // element order divides the factor order (Lagrange), so the
                // exponent can be reduced mod the factor order
                let mut acc = 0u16;
                for _ in 0..exp.unsigned_abs() % f.order as u64 {
                    acc = f.mul(acc, base);
                }
                if acc == 0 {
                    None
                } else {
                    Some((*factor, FactorElem::Finite(acc)))
                }
            }
            Atom::AbelianDir { factor, coord } => {
                if exp == 0 {
                    None
                } else {
                    let rank = match &spec.factors()[*factor as usize] {
                        Factor::Abelian(a) => a.rank,
                        _ => unreachable!(),
                    };
                    let mut v = SmallVec::from_elem(0i64, rank as usize);
                    v[*coord as usize] = exp;
                    Some((*factor, FactorElem::Vector(v)))
                }
            }
        };
        if let Some((factor, elem)) = syl {
            let atom_el = spec.from_syllables([(factor, elem)])?;
            out = spec.multiply(&out, &atom_el)?;
        }
    }
    if !seen_any {
        return Err(Error::Spec("empty word".into()));
    }
    Ok(out)
}
