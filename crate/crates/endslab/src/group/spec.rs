use std::sync::atomic::{AtomicU32, Ordering};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::element::{FactorElem, GroupElement, Syllable};
use crate::group::factor::{AbelianFactor, Factor, FiniteFactor};

static NEXT_TOKEN: AtomicU32 = AtomicU32::new(1);

/// One generator of the union generating set, as a single-syllable element.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub exponent: i32,
    pub factor: u8,
    pub elem: FactorElem,
    /// Index of the inverse generator in `GroupSpec::generators`.
    pub inverse: u32,
}

/// A free product of tabulated finite factors and free-abelian factors,
/// generated by the union of the factor generating sets. Word length then
/// decomposes exactly over syllables, which keeps every metric computation
/// certifiable.
#[derive(Debug)]
pub struct GroupSpec {
    pub name: String,
    pub(crate) token: u32,
    factors: Vec<Factor>,
    generators: Vec<Generator>,
}

impl GroupSpec {
    /// Validates the free-product invariants: at least two factors, all
    /// non-trivial, and not the two-ended case Z/2 * Z/2.
    pub fn new(name: impl Into<String>, factors: Vec<Factor>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Spec(
                "a free product needs at least 2 factors".into(),
            ));
        }
        if factors.len() > 250 {
            return Err(Error::Spec("too many factors (max 250)".into()));
        }
        if factors.len() == 2 {
            let orders: Vec<_> = factors.iter().map(|f| f.finite_order()).collect();
            if orders == [Some(2), Some(2)] {
                return Err(Error::Spec(
                    "Z/2 * Z/2 is two-ended; the group must have infinitely many ends".into(),
                ));
            }
        }
        let mut generators = Vec::new();
        for (fi, factor) in factors.iter().enumerate() {
            match factor {
                Factor::Finite(f) => {
                    let base = generators.len() as u32;
                    for (k, &g) in f.generators.iter().enumerate() {
                        let inv = f.inv(g);
                        let inv_pos = f.generators.iter().position(|&x| x == inv).unwrap();
                        generators.push(Generator {
                            name: f.names[g as usize].clone(),
                            exponent: 1,
                            factor: fi as u8,
                            elem: FactorElem::Finite(g),
                            inverse: base + inv_pos as u32,
                        });
                        let _ = k;
                    }
                }
                Factor::Abelian(a) => {
                    let base = generators.len() as u32;
                    for d in 0..a.rank {
                        for (j, sign) in [1i32, -1].iter().enumerate() {
                            let mut v = SmallVec::from_elem(0i64, a.rank as usize);
                            v[d as usize] = *sign as i64;
                            generators.push(Generator {
                                name: a.names[d as usize].clone(),
                                exponent: *sign,
                                factor: fi as u8,
                                elem: FactorElem::Vector(v),
                                inverse: base + (2 * d as u32) + (1 - j as u32),
                            });
                        }
                    }
                }
            }
        }
        // Generator names must be unambiguous across the whole group.
        let mut names: Vec<&str> = Vec::new();
        for f in &factors {
            match f {
                Factor::Finite(ff) => names.extend(ff.names.iter().skip(1).map(|s| s.as_str())),
                Factor::Abelian(a) => names.extend(a.names.iter().map(|s| s.as_str())),
            }
        }
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Spec(
                "generator/element names must be distinct across factors".into(),
            ));
        }
        Ok(GroupSpec {
            name: name.into(),
            token: NEXT_TOKEN.fetch_add(1, Ordering::Relaxed),
            factors,
            generators,
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, i: u8) -> &Factor {
        &self.factors[i as usize]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn generator_offset(&self, factor: u8) -> usize {
        let mut off = 0;
        for (fi, f) in self.factors.iter().enumerate() {
            if fi as u8 == factor {
                return off;
            }
            off += match f {
                Factor::Finite(ff) => ff.generators.len(),
                Factor::Abelian(a) => 2 * a.rank as usize,
            };
        }
        off
    }

    /// Generator indices tracing a geodesic from 1 to g: concatenated
    /// factor-geodesics of the syllables. Abelian syllables step coordinate
    /// by coordinate in index order, so the path is canonical.
    pub fn geodesic_generators(&self, g: &GroupElement) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.word_length(g) as usize);
        for syl in &g.syllables {
            let off = self.generator_offset(syl.factor);
            match (&self.factors[syl.factor as usize], &syl.elem) {
                (Factor::Finite(f), FactorElem::Finite(e)) => {
                    for ge in f.geodesic_generators(*e) {
                        let pos = f.generators.iter().position(|&x| x == ge).unwrap();
                        path.push(off + pos);
                    }
                }
                (Factor::Abelian(_), FactorElem::Vector(v)) => {
                    for (d, &c) in v.iter().enumerate() {
                        // +unit at off + 2d, -unit at off + 2d + 1
                        let gen = if c >= 0 { off + 2 * d } else { off + 2 * d + 1 };
                        for _ in 0..c.unsigned_abs() {
                            path.push(gen);
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        path
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            token: self.token,
            syllables: SmallVec::new(),
        }
    }

    pub fn generator_element(&self, i: usize) -> GroupElement {
        let g = &self.generators[i];
        GroupElement {
            token: self.token,
            syllables: SmallVec::from_vec(vec![Syllable {
                factor: g.factor,
                elem: g.elem.clone(),
            }]),
        }
    }

    /// Builds an element from raw syllables, normalizing adjacent syllables
    /// of the same factor and dropping trivial ones.
    pub fn from_syllables(
        &self,
        syllables: impl IntoIterator<Item = (u8, FactorElem)>,
    ) -> Result<GroupElement> {
        let mut out = self.identity();
        for (factor, elem) in syllables {
            if factor as usize >= self.factors.len() {
                return Err(Error::Spec(format!("factor index {factor} out of range")));
            }
            match (&self.factors[factor as usize], &elem) {
                (Factor::Finite(f), FactorElem::Finite(e)) => {
                    if *e >= f.order {
                        return Err(Error::Spec(format!(
                            "element index {e} out of range for factor {factor}"
                        )));
                    }
                }
                (Factor::Abelian(a), FactorElem::Vector(v)) => {
                    if v.len() != a.rank as usize {
                        return Err(Error::Spec(format!(
                            "vector rank {} does not match factor rank {}",
                            v.len(),
                            a.rank
                        )));
                    }
                }
                _ => {
                    return Err(Error::Spec(format!(
                        "syllable content kind does not match factor {factor}"
                    )))
                }
            }
            self.push_syllable(&mut out.syllables, factor, elem);
        }
        Ok(out)
    }

    pub(crate) fn check_token(&self, g: &GroupElement) -> Result<()> {
        if g.token != self.token {
            return Err(Error::Mismatch(format!(
                "element was built from a different group spec (token {} vs {})",
                g.token, self.token
            )));
        }
        Ok(())
    }

    fn combine(&self, factor: u8, a: &FactorElem, b: &FactorElem) -> FactorElem {
        match (&self.factors[factor as usize], a, b) {
            (Factor::Finite(f), FactorElem::Finite(x), FactorElem::Finite(y)) => {
                FactorElem::Finite(f.mul(*x, *y))
            }
            (Factor::Abelian(_), FactorElem::Vector(x), FactorElem::Vector(y)) => {
                let mut v = x.clone();
                for (c, d) in v.iter_mut().zip(y.iter()) {
                    *c += *d;
                }
                FactorElem::Vector(v)
            }
            _ => unreachable!("syllable content checked at construction"),
        }
    }

    fn push_syllable(
        &self,
        stack: &mut SmallVec<[Syllable; 2]>,
        factor: u8,
        elem: FactorElem,
    ) {
        if elem.is_identity() {
            return;
        }
        if let Some(top) = stack.last() {
            if top.factor == factor {
                let merged = self.combine(factor, &top.elem, &elem);
                stack.pop();
                if !merged.is_identity() {
                    stack.push(Syllable { factor, elem: merged });
                }
                return;
            }
        }
        stack.push(Syllable { factor, elem });
    }

    /// The group law on normal forms. Associative; `multiply(a, invert(a))`
    /// is the identity.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_token(a)?;
        self.check_token(b)?;
        let mut out = a.clone();
        for syl in &b.syllables {
            self.push_syllable(&mut out.syllables, syl.factor, syl.elem.clone());
        }
        debug_assert!(out.debug_validate_alternation());
        Ok(out)
    }

    /// In-place right multiplication by generator `gen_idx`; O(1) per call.
    pub fn apply_generator(&self, g: &mut GroupElement, gen_idx: usize) {
        let gen = &self.generators[gen_idx];
        self.push_syllable(&mut g.syllables, gen.factor, gen.elem.clone());
    }

    /// In-place right multiplication by generator `gen_idx`, updating the
    /// caller-maintained word length in O(1).
    pub fn apply_generator_tracked(&self, g: &mut GroupElement, gen_idx: usize, len: &mut u64) {
        let gen = &self.generators[gen_idx];
        let before = match g.syllables.last() {
            Some(top) if top.factor == gen.factor => self.syllable_length(top),
            _ => 0,
        };
        self.push_syllable(&mut g.syllables, gen.factor, gen.elem.clone());
        let after = match g.syllables.last() {
            Some(top) if top.factor == gen.factor => self.syllable_length(top),
            _ => 0,
        };
        *len = *len - before + after;
    }

    /// In-place right multiplication by an arbitrary element, amortized
    /// O(|b|) without re-allocating the accumulator.
    pub fn multiply_in_place(&self, acc: &mut GroupElement, b: &GroupElement) -> Result<()> {
        self.check_token(acc)?;
        self.check_token(b)?;
        for syl in &b.syllables {
            self.push_syllable(&mut acc.syllables, syl.factor, syl.elem.clone());
        }
        Ok(())
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_token(g)?;
        let mut syllables = SmallVec::with_capacity(g.syllables.len());
        for syl in g.syllables.iter().rev() {
            let inv = match (&self.factors[syl.factor as usize], &syl.elem) {
                (Factor::Finite(f), FactorElem::Finite(e)) => FactorElem::Finite(f.inv(*e)),
                (Factor::Abelian(_), FactorElem::Vector(v)) => {
                    FactorElem::Vector(v.iter().map(|c| -c).collect())
                }
                _ => unreachable!(),
            };
            syllables.push(Syllable {
                factor: syl.factor,
                elem: inv,
            });
        }
        Ok(GroupElement {
            token: self.token,
            syllables,
        })
    }

    pub fn syllable_length(&self, syl: &Syllable) -> u64 {
        match (&self.factors[syl.factor as usize], &syl.elem) {
            (Factor::Finite(f), FactorElem::Finite(e)) => f.len(*e) as u64,
            (Factor::Abelian(_), FactorElem::Vector(v)) => {
                v.iter().map(|c| c.unsigned_abs()).sum()
            }
            _ => unreachable!(),
        }
    }

    /// Word length d(1, g) for the union generating set: the sum of the
    /// factor word lengths of the syllables.
    pub fn word_length(&self, g: &GroupElement) -> u64 {
        g.syllables.iter().map(|s| self.syllable_length(s)).sum()
    }

    /// Distance d(a, b) = |a^{-1} b|.
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> Result<u64> {
        let inv = self.invert(a)?;
        let prod = self.multiply(&inv, b)?;
        Ok(self.word_length(&prod))
    }

    /// Decodes the canonical byte encoding produced by
    /// [`GroupElement::encode_into`].
    pub fn decode(&self, mut bytes: &[u8]) -> Result<GroupElement> {
        let mut syllables = SmallVec::new();
        while !bytes.is_empty() {
            let factor = bytes[0];
            bytes = &bytes[1..];
            if factor as usize >= self.factors.len() {
                return Err(Error::Spec(format!("decode: bad factor byte {factor}")));
            }
            let elem = match &self.factors[factor as usize] {
                Factor::Finite(_) => {
                    if bytes.len() < 2 {
                        return Err(Error::Spec("decode: truncated finite syllable".into()));
                    }
                    let e = u16::from_le_bytes([bytes[0], bytes[1]]);
                    bytes = &bytes[2..];
                    FactorElem::Finite(e)
                }
                Factor::Abelian(a) => {
                    let need = 8 * a.rank as usize;
                    if bytes.len() < need {
                        return Err(Error::Spec("decode: truncated vector syllable".into()));
                    }
                    let mut v = SmallVec::with_capacity(a.rank as usize);
                    for k in 0..a.rank as usize {
                        v.push(i64::from_le_bytes(
                            bytes[8 * k..8 * k + 8].try_into().unwrap(),
                        ));
                    }
                    bytes = &bytes[need..];
                    FactorElem::Vector(v)
                }
            };
            syllables.push(Syllable { factor, elem });
        }
        let g = GroupElement {
            token: self.token,
            syllables,
        };
        if !g.debug_validate_alternation() {
            return Err(Error::Spec("decode: not a normal form".into()));
        }
        Ok(g)
    }

    /// Convenience constructors for specs used throughout tests and configs.
    pub fn free_group(rank: u8) -> Result<GroupSpec> {
        let letters = ["a", "b", "c", "d", "e", "f"];
        let factors = (0..rank)
            .map(|i| {
                Factor::Abelian(
                    AbelianFactor::new(1, vec![letters[i as usize].to_string()], "free factor")
                        .unwrap(),
                )
            })
            .collect();
        GroupSpec::new(format!("F{rank}"), factors)
    }

    pub fn cyclic_factor(order: u16, names: Vec<String>) -> Result<FiniteFactor> {
        let o = order as usize;
        let mut table = vec![0u16; o * o];
        for a in 0..o {
            for b in 0..o {
                table[a * o + b] = ((a + b) % o) as u16;
            }
        }
        FiniteFactor::new(table, vec![], names, "cyclic factor")
    }
}
