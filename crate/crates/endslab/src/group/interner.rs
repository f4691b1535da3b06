use std::collections::HashMap;

use smallvec::SmallVec;

use super::window::fnv1a;

/// Append-only interner for canonical element codes. Ids are assigned in
/// insertion order, so any construction that feeds codes in a deterministic
/// order gets deterministic ids.
#[derive(Default)]
pub struct CodeInterner {
    arena: Vec<u8>,
    bounds: Vec<u32>,
    index: HashMap<u64, SmallVec<[u32; 1]>>,
}

impl CodeInterner {
    pub fn new() -> Self {
        CodeInterner {
            arena: Vec::new(),
            bounds: vec![0],
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn code(&self, id: u32) -> &[u8] {
        &self.arena[self.bounds[id as usize] as usize..self.bounds[id as usize + 1] as usize]
    }

    pub fn get(&self, code: &[u8]) -> Option<u32> {
        self.index
            .get(&fnv1a(code))
            .and_then(|c| c.iter().copied().find(|&id| self.code(id) == code))
    }

    pub fn intern(&mut self, code: &[u8]) -> u32 {
        if let Some(id) = self.get(code) {
            return id;
        }
        let id = self.len() as u32;
        self.arena.extend_from_slice(code);
        self.bounds.push(self.arena.len() as u32);
        self.index.entry(fnv1a(code)).or_default().push(id);
        id
    }
}
