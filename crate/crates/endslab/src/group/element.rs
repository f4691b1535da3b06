use std::cmp::Ordering;

use smallvec::SmallVec;

/// Content of one syllable: an element of a finite factor (by table index)
/// or a lattice vector in a free-abelian factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorElem {
    Finite(u16),
    Vector(SmallVec<[i64; 2]>),
}

impl FactorElem {
    pub fn is_identity(&self) -> bool {
        match self {
            FactorElem::Finite(e) => *e == 0,
            FactorElem::Vector(v) => v.iter().all(|c| *c == 0),
        }
    }
}

/// One syllable of a normal form: which factor it lives in plus its content.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: u8,
    pub elem: FactorElem,
}

/// A group element in free-product normal form: alternating, non-trivial
/// syllables. Instances are only created through `GroupSpec` methods, which
/// stamp the spec token so cross-spec arithmetic is caught at run time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub(crate) token: u32,
    pub(crate) syllables: SmallVec<[Syllable; 2]>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub(crate) fn debug_validate_alternation(&self) -> bool {
        self.syllables.windows(2).all(|w| w[0].factor != w[1].factor)
            && self.syllables.iter().all(|s| !s.elem.is_identity())
    }

    /// Canonical byte encoding: per syllable one factor byte, then either the
    /// table index (u16 LE) or the coordinate vector (i32 LE each). Unique
    /// per normal form, so it doubles as an interning key.
    pub fn encode_into(&self, out: &mut Vec<u8>) {
        for syl in &self.syllables {
            out.push(syl.factor);
            match &syl.elem {
                FactorElem::Finite(e) => out.extend_from_slice(&e.to_le_bytes()),
                FactorElem::Vector(v) => {
                    for c in v {
                        out.extend_from_slice(&c.to_le_bytes());
                    }
                }
            }
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }
}

fn elem_cmp(a: &FactorElem, b: &FactorElem) -> Ordering {
    match (a, b) {
        (FactorElem::Finite(x), FactorElem::Finite(y)) => x.cmp(y),
        (FactorElem::Vector(x), FactorElem::Vector(y)) => x.as_slice().cmp(y.as_slice()),
        (FactorElem::Finite(_), FactorElem::Vector(_)) => Ordering::Less,
        (FactorElem::Vector(_), FactorElem::Finite(_)) => Ordering::Greater,
    }
}

/// Canonical order: syllable count first, then factor index and content
/// syllable by syllable. Used wherever deterministic iteration or greedy
/// tie-breaking is required.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllables
            .len()
            .cmp(&other.syllables.len())
            .then_with(|| {
                for (a, b) in self.syllables.iter().zip(other.syllables.iter()) {
                    let c = a.factor.cmp(&b.factor).then_with(|| elem_cmp(&a.elem, &b.elem));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
