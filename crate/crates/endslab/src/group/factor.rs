use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite factor given by an explicit multiplication table.
/// Element 0 is the identity. Word lengths are graph distances in the
/// factor's own Cayley graph over the declared generators.
#[derive(Debug, Clone)]
pub struct FiniteFactor {
    pub order: u16,
    table: Vec<u16>,
    inverse: Vec<u16>,
    word_len: Vec<u32>,
    pub generators: Vec<u16>,
    pub names: Vec<String>,
    /// Non-identity elements grouped by word length (index = length).
    by_length: Vec<Vec<u16>>,
    /// BFS tree: generator applied last on a shortest path to each element.
    parent_gen: Vec<u16>,
}

/// A free-abelian factor Z^rank, generated by the +/- unit vectors.
/// Word length is the l1 norm.
#[derive(Debug, Clone)]
pub struct AbelianFactor {
    pub rank: u8,
    pub names: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Factor {
    Finite(FiniteFactor),
    Abelian(AbelianFactor),
}

fn valid_token(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FiniteFactor {
    /// Validates the table (identity, associativity, inverses), the declared
    /// generating set (non-identity, inverse-closed, actually generating) and
    /// precomputes inverses and word lengths.
    pub fn new(
        table: Vec<u16>,
        generators: Vec<u16>,
        names: Vec<String>,
        where_: &str,
    ) -> Result<Self> {
        let order_sq = table.len();
        let order = (order_sq as f64).sqrt().round() as usize;
        if order * order != order_sq || order < 2 {
            return Err(Error::Spec(format!(
                "{where_}: multiplication table must be a square of order >= 2, got {order_sq} entries"
            )));
        }
        if order > 1024 {
            return Err(Error::Spec(format!(
                "{where_}: factor order {order} exceeds the supported 1024"
            )));
        }
        let o = order as u16;
        let idx = |a: u16, b: u16| table[a as usize * order + b as usize];
        if table.iter().any(|&e| e >= o) {
            return Err(Error::Spec(format!(
                "{where_}: table entry out of range 0..{order}"
            )));
        }
        for a in 0..o {
            if idx(0, a) != a || idx(a, 0) != a {
                return Err(Error::Spec(format!(
                    "{where_}: element 0 is not an identity (row/column {a})"
                )));
            }
        }
        for a in 0..o {
            for b in 0..o {
                for c in 0..o {
                    if idx(idx(a, b), c) != idx(a, idx(b, c)) {
                        return Err(Error::Spec(format!(
                            "{where_}: table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![u16::MAX; order];
        for a in 0..o {
            for b in 0..o {
                if idx(a, b) == 0 && idx(b, a) == 0 {
                    inverse[a as usize] = b;
                }
            }
            if inverse[a as usize] == u16::MAX {
                return Err(Error::Spec(format!(
                    "{where_}: element {a} has no two-sided inverse"
                )));
            }
        }
        let generators = if generators.is_empty() {
            (1..o).collect()
        } else {
            generators
        };
        for &g in &generators {
            if g == 0 || g >= o {
                return Err(Error::Spec(format!(
                    "{where_}: generator index {g} is identity or out of range"
                )));
            }
            if !generators.contains(&inverse[g as usize]) {
                return Err(Error::Spec(format!(
                    "{where_}: generating set is not inverse-closed (missing inverse of {g})"
                )));
            }
        }
        // BFS word lengths over the declared generators.
        let mut word_len = vec![u32::MAX; order];
        let mut parent_gen = vec![0u16; order];
        word_len[0] = 0;
        let mut queue = VecDeque::from([0u16]);
        while let Some(a) = queue.pop_front() {
            for &g in &generators {
                let b = idx(a, g);
                if word_len[b as usize] == u32::MAX {
                    word_len[b as usize] = word_len[a as usize] + 1;
                    parent_gen[b as usize] = g;
                    queue.push_back(b);
                }
            }
        }
        if word_len.iter().any(|&l| l == u32::MAX) {
            return Err(Error::Spec(format!(
                "{where_}: declared generators do not generate the factor"
            )));
        }
        let names = if names.is_empty() {
            (0..order).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect()
        } else {
            names
        };
        if names.len() != order {
            return Err(Error::Spec(format!(
                "{where_}: expected {order} element names, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if i > 0 && !valid_token(n) {
                return Err(Error::Spec(format!(
                    "{where_}: element name {n:?} is not a valid token"
                )));
            }
        }
        let max_len = *word_len.iter().max().unwrap() as usize;
        let mut by_length = vec![Vec::new(); max_len + 1];
        for e in 1..o {
            by_length[word_len[e as usize] as usize].push(e);
        }
        Ok(FiniteFactor {
            order: o,
            table,
            inverse,
            word_len,
            generators,
            names,
            by_length,
            parent_gen,
        })
    }

    /// Generators (element indices) whose product is `e`, in order, along a
    /// shortest path in the factor Cayley graph.
    pub fn geodesic_generators(&self, e: u16) -> Vec<u16> {
        let mut rev = Vec::new();
        let mut cur = e;
        while cur != 0 {
            let g = self.parent_gen[cur as usize];
            rev.push(g);
            cur = self.mul(cur, self.inv(g));
        }
        rev.reverse();
        rev
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.order as usize + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    #[inline]
    pub fn len(&self, a: u16) -> u32 {
        self.word_len[a as usize]
    }

    pub fn elements_of_length(&self, l: u32) -> &[u16] {
        self.by_length
            .get(l as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn max_length(&self) -> u32 {
        (self.by_length.len() - 1) as u32
    }
}

impl AbelianFactor {
    pub fn new(rank: u8, names: Vec<String>, where_: &str) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Spec(format!("{where_}: abelian rank must be >= 1")));
        }
        let names = if names.is_empty() {
            (0..rank).map(|i| format!("x{i}")).collect()
        } else {
            names
        };
        if names.len() != rank as usize {
            return Err(Error::Spec(format!(
                "{where_}: expected {rank} generator names, got {}",
                names.len()
            )));
        }
        for n in &names {
            if !valid_token(n) {
                return Err(Error::Spec(format!(
                    "{where_}: generator name {n:?} is not a valid token"
                )));
            }
        }
        Ok(AbelianFactor { rank, names })
    }
}

impl Factor {
    /// Number of group elements the factor contributes (None = infinite).
    pub fn finite_order(&self) -> Option<u16> {
        match self {
            Factor::Finite(f) => Some(f.order),
            Factor::Abelian(_) => None,
        }
    }

    pub fn is_one_ended(&self) -> bool {
        matches!(self, Factor::Abelian(a) if a.rank >= 2)
    }
}
