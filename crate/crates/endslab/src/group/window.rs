use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::element::GroupElement;
use crate::group::spec::GroupSpec;

/// Stable 64-bit FNV-1a; interning must behave identically across runs.
#[inline]
pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The finite induced subgraph on the radius-`radius` ball around a
/// basepoint, with per-vertex distances and symmetric adjacency. Vertices
/// are interned by their canonical byte code; ids follow BFS discovery
/// order, which is deterministic.
pub struct CayleyWindow {
    spec: Arc<GroupSpec>,
    radius: u32,
    basepoint: GroupElement,
    arena: Vec<u8>,
    bounds: Vec<u32>,
    index: HashMap<u64, SmallVec<[u32; 1]>>,
    dist: Vec<u16>,
    adj_off: Vec<u32>,
    adj: Vec<u32>,
}

impl CayleyWindow {
    pub fn build(
        spec: &Arc<GroupSpec>,
        basepoint: &GroupElement,
        radius: u32,
        vertex_cap: u64,
    ) -> Result<CayleyWindow> {
        spec.check_token(basepoint)?;
        if radius < 1 {
            return Err(Error::Precondition("window radius must be >= 1".into()));
        }
        if radius > u16::MAX as u32 - 1 {
            return Err(Error::Precondition("window radius too large".into()));
        }
        fn lookup(
            code: &[u8],
            index: &HashMap<u64, SmallVec<[u32; 1]>>,
            arena: &[u8],
            bounds: &[u32],
        ) -> Option<u32> {
            index.get(&fnv1a(code)).and_then(|cands| {
                cands.iter().copied().find(|&id| {
                    &arena[bounds[id as usize] as usize..bounds[id as usize + 1] as usize] == code
                })
            })
        }

        fn insert(
            code: &[u8],
            d: u16,
            index: &mut HashMap<u64, SmallVec<[u32; 1]>>,
            arena: &mut Vec<u8>,
            bounds: &mut Vec<u32>,
            dist: &mut Vec<u16>,
        ) -> u32 {
            let id = dist.len() as u32;
            arena.extend_from_slice(code);
            bounds.push(arena.len() as u32);
            dist.push(d);
            index.entry(fnv1a(code)).or_default().push(id);
            id
        }

        let mut arena: Vec<u8> = Vec::new();
        let mut bounds: Vec<u32> = vec![0];
        let mut index: HashMap<u64, SmallVec<[u32; 1]>> = HashMap::new();
        let mut dist: Vec<u16> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut scratch = Vec::new();

        basepoint.encode_into(&mut scratch);
        insert(&scratch, 0, &mut index, &mut arena, &mut bounds, &mut dist);

        let mut queue: VecDeque<u32> = VecDeque::from([0u32]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            let elem = spec
                .decode(&arena[bounds[u as usize] as usize..bounds[u as usize + 1] as usize])
                .map_err(|e| Error::Internal(format!("window decode: {e}")))?;
            for gi in 0..spec.generator_count() {
                let mut nb = elem.clone();
                spec.apply_generator(&mut nb, gi);
                scratch.clear();
                nb.encode_into(&mut scratch);
                match lookup(&scratch, &index, &arena, &bounds) {
                    Some(v) => {
                        // recorded once, by the endpoint processed later
                        if v < u {
                            edges.push((v, u));
                        }
                    }
                    None => {
                        if du as u32 == radius {
                            continue; // neighbor lies outside the window
                        }
                        if dist.len() as u64 >= vertex_cap {
                            return Err(Error::Budget {
                                what: "window vertices",
                                needed: dist.len() as u64 + 1,
                                cap: vertex_cap,
                                largest_feasible: Some(du.saturating_sub(1) as u64),
                            });
                        }
                        let v = insert(
                            &scratch,
                            du + 1,
                            &mut index,
                            &mut arena,
                            &mut bounds,
                            &mut dist,
                        );
                        edges.push((u, v));
                        queue.push_back(v);
                    }
                }
            }
        }

        // CSR with both directions
        let n = dist.len();
        let mut deg = vec![0u32; n];
        for &(a, b) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut adj_off = vec![0u32; n + 1];
        for i in 0..n {
            adj_off[i + 1] = adj_off[i] + deg[i];
        }
        let mut cursor = adj_off.clone();
        let mut adj = vec![0u32; adj_off[n] as usize];
        for &(a, b) in &edges {
            adj[cursor[a as usize] as usize] = b;
            cursor[a as usize] += 1;
            adj[cursor[b as usize] as usize] = a;
            cursor[b as usize] += 1;
        }

        Ok(CayleyWindow {
            spec: Arc::clone(spec),
            radius,
            basepoint: basepoint.clone(),
            arena,
            bounds,
            index,
            dist,
            adj_off,
            adj,
        })
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn basepoint(&self) -> &GroupElement {
        &self.basepoint
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dist(&self, id: u32) -> u32 {
        self.dist[id as usize] as u32
    }

    pub fn neighbors(&self, id: u32) -> &[u32] {
        &self.adj[self.adj_off[id as usize] as usize..self.adj_off[id as usize + 1] as usize]
    }

    pub fn code(&self, id: u32) -> &[u8] {
        &self.arena[self.bounds[id as usize] as usize..self.bounds[id as usize + 1] as usize]
    }

    pub fn element(&self, id: u32) -> GroupElement {
        self.spec
            .decode(self.code(id))
            .expect("window codes are valid by construction")
    }

    pub fn id_of_code(&self, code: &[u8]) -> Option<u32> {
        self.index.get(&fnv1a(code)).and_then(|cands| {
            cands.iter().copied().find(|&id| self.code(id) == code)
        })
    }

    pub fn id_of(&self, g: &GroupElement) -> Option<u32> {
        let mut code = Vec::new();
        g.encode_into(&mut code);
        self.id_of_code(&code)
    }

    /// BFS distances from an arbitrary in-window vertex, computed inside the
    /// window; an over-estimate of the group distance near the rim.
    pub fn distances_from(&self, o: &GroupElement) -> Result<Vec<u16>> {
        let start = self
            .id_of(o)
            .ok_or_else(|| Error::Precondition("basepoint not inside window".into()))?;
        let mut d = vec![u16::MAX; self.len()];
        d[start as usize] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if d[v as usize] == u16::MAX {
                    d[v as usize] = d[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        Ok(d)
    }

    /// Ids ordered by decreasing distance from the basepoint (stable in id
    /// within a shell); used by the level sweeps.
    pub fn ids_by_dist_desc(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = (0..self.len() as u32).collect();
        ids.sort_by_key(|&id| std::cmp::Reverse(self.dist[id as usize]));
        ids
    }
}
