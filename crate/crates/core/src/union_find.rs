//! Disjoint sets with MAKE / FIND / UNION over arbitrary hashable keys.
//!
//! Trees are balanced by rank and compressed on every find. `union(i, j, k)`
//! follows the three-argument form of the classical presentation: `k` names
//! the merged set. The name is bookkeeping only; the tree root is still picked
//! by rank.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnionFindError {
    #[error("key is already known")]
    DuplicateKey,
    #[error("key is not known")]
    UnknownKey,
    #[error("arguments are already in the same set")]
    AlreadyEquivalent,
    #[error("set name must belong to one of the merged sets")]
    ForeignName,
}

/// Cumulative operation counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub makes: u64,
    pub finds: u64,
    pub unions: u64,
    /// Parent links followed while locating roots.
    pub traversals: u64,
}

impl OpCounts {
    pub fn operations(&self) -> u64 {
        self.makes + self.finds + self.unions
    }
}

/// Opaque handle to a set, valid until the next union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SetId(usize);

#[derive(Debug, Clone)]
pub struct Partition<K> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
    parent: Vec<usize>,
    rank: Vec<u8>,
    // valid at roots: element index of the set's reported name
    name: Vec<usize>,
    sets: usize,
    counts: OpCounts,
}

impl<K: Hash + Eq + Clone> Default for Partition<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Hash + Eq + Clone> Partition<K> {
    pub fn new() -> Self {
        Partition {
            index: HashMap::new(),
            keys: Vec::new(),
            parent: Vec::new(),
            rank: Vec::new(),
            name: Vec::new(),
            sets: 0,
            counts: OpCounts::default(),
        }
    }

    pub fn with_capacity(n: usize) -> Self {
        Partition {
            index: HashMap::with_capacity(n),
            keys: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            rank: Vec::with_capacity(n),
            name: Vec::with_capacity(n),
            sets: 0,
            counts: OpCounts::default(),
        }
    }

    fn insert(&mut self, key: K) -> usize {
        let i = self.keys.len();
        self.index.insert(key.clone(), i);
        self.keys.push(key);
        self.parent.push(i);
        self.rank.push(0);
        self.name.push(i);
        self.sets += 1;
        self.counts.makes += 1;
        i
    }

    /// MAKE: creates the singleton `{key}`.
    pub fn make(&mut self, key: K) -> Result<(), UnionFindError> {
        if self.index.contains_key(&key) {
            return Err(UnionFindError::DuplicateKey);
        }
        self.insert(key);
        Ok(())
    }

    fn root(&mut self, mut i: usize) -> usize {
        let start = i;
        while self.parent[i] != i {
            i = self.parent[i];
            self.counts.traversals += 1;
        }
        let root = i;
        let mut j = start;
        while self.parent[j] != root {
            let next = self.parent[j];
            self.parent[j] = root;
            j = next;
        }
        root
    }

    fn lookup(&mut self, key: &K, create_on_miss: bool) -> Result<usize, UnionFindError> {
        match self.index.get(key) {
            Some(&i) => Ok(i),
            None if create_on_miss => Ok(self.insert(key.clone())),
            None => Err(UnionFindError::UnknownKey),
        }
    }

    /// FIND, returning a handle to the set containing `key`.
    ///
    /// With `create_on_miss`, an unknown key first becomes a fresh singleton.
    pub fn find_set(&mut self, key: &K, create_on_miss: bool) -> Result<SetId, UnionFindError> {
        let i = self.lookup(key, create_on_miss)?;
        self.counts.finds += 1;
        Ok(SetId(self.root(i)))
    }

    /// FIND, returning the representative key of the set containing `key`.
    pub fn find(&mut self, key: &K, create_on_miss: bool) -> Result<K, UnionFindError> {
        let s = self.find_set(key, create_on_miss)?;
        Ok(self.keys[s.0].clone())
    }

    pub fn representative(&self, set: SetId) -> &K {
        &self.keys[set.0]
    }

    /// The name most recently given to `set` by [`Partition::union`].
    pub fn set_name(&self, set: SetId) -> &K {
        &self.keys[self.name[set.0]]
    }

    /// UNION(i, j, k): merges the sets of `i` and `j` and names the result `k`.
    pub fn union(&mut self, i: &K, j: &K, k: &K) -> Result<SetId, UnionFindError> {
        let ii = self.lookup(i, false)?;
        let jj = self.lookup(j, false)?;
        let kk = self.lookup(k, false)?;
        let ri = self.root(ii);
        let rj = self.root(jj);
        if ri == rj {
            return Err(UnionFindError::AlreadyEquivalent);
        }
        let rk = self.root(kk);
        if rk != ri && rk != rj {
            return Err(UnionFindError::ForeignName);
        }
        let root = self.link(ri, rj);
        self.name[root] = kk;
        Ok(SetId(root))
    }

    /// Merges two sets found earlier, naming the result after `name`'s root.
    pub fn union_sets(&mut self, a: SetId, b: SetId, name: SetId) -> Result<SetId, UnionFindError> {
        if a == b {
            return Err(UnionFindError::AlreadyEquivalent);
        }
        if name != a && name != b {
            return Err(UnionFindError::ForeignName);
        }
        let named = self.name[name.0];
        let root = self.link(a.0, b.0);
        self.name[root] = named;
        Ok(SetId(root))
    }

    fn link(&mut self, a: usize, b: usize) -> usize {
        debug_assert!(self.parent[a] == a && self.parent[b] == b);
        self.counts.unions += 1;
        self.sets -= 1;
        let (hi, lo) = if self.rank[a] >= self.rank[b] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        hi
    }

    pub fn contains(&self, key: &K) -> bool {
        self.index.contains_key(key)
    }

    /// Number of known keys.
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Number of disjoint sets over the known keys.
    pub fn set_count(&self) -> usize {
        self.sets
    }

    pub fn op_count(&self) -> OpCounts {
        self.counts
    }

    /// Current sets, each listed in insertion order of its members; sets are
    /// ordered by their first member. Does not touch counters or links.
    pub fn classes(&self) -> Vec<Vec<K>> {
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<K>> = Vec::new();
        for i in 0..self.keys.len() {
            let mut r = i;
            while self.parent[r] != r {
                r = self.parent[r];
            }
            let s = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[s].push(self.keys[i].clone());
        }
        out
    }
}
