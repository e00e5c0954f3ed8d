//! Shrinking subset of `0..n` with O(1) uniform sampling, deletion and
//! membership.
//!
//! Two arrays: `members` keeps the current elements packed in its first
//! `size` cells, `position[i]` is the cell holding `i` or [`ABSENT`]. Removal
//! moves the element in the last occupied cell into the hole.

use rand::Rng;

use crate::error::{Error, Result};

pub const ABSENT: isize = -1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    members: Vec<usize>,
    position: Vec<isize>,
    size: usize,
}

impl SampleSet {
    /// The full set `{0, .., n-1}` with `members[i] = position[i] = i`.
    pub fn new_full(n: usize) -> Self {
        SampleSet {
            members: (0..n).collect(),
            position: (0..n as isize).collect(),
            size: n,
        }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Size of the universe, `n`.
    pub fn capacity(&self) -> usize {
        self.position.len()
    }

    /// Occupied prefix of the member array.
    pub fn members(&self) -> &[usize] {
        &self.members[..self.size]
    }

    pub fn positions(&self) -> &[isize] {
        &self.position
    }

    pub fn contains(&self, i: usize) -> Result<bool> {
        match self.position.get(i) {
            Some(&p) => Ok(p != ABSENT),
            None => Err(Error::VertexOutOfRange {
                vertex: i,
                n: self.capacity(),
            }),
        }
    }

    pub fn remove(&mut self, i: usize) -> Result<()> {
        let p = match self.position.get(i) {
            Some(&p) if p != ABSENT => p as usize,
            Some(_) => {
                return Err(Error::Invariant(format!("remove({i}): not a member")));
            }
            None => {
                return Err(Error::VertexOutOfRange {
                    vertex: i,
                    n: self.capacity(),
                })
            }
        };
        let last = self.size - 1;
        let moved = self.members[last];
        self.members[p] = moved;
        self.position[moved] = p as isize;
        self.position[i] = ABSENT;
        self.size = last;
        debug_assert!(self.position[i] == ABSENT);
        debug_assert!(moved == i || self.members[self.position[moved] as usize] == moved);
        Ok(())
    }

    /// Uniform member, leaving the set unchanged.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        if self.size == 0 {
            return Err(Error::EmptySet);
        }
        Ok(self.members[rng.random_range(0..self.size)])
    }

    /// Full O(n) check of the structural invariants.
    pub fn check_invariants(&self) -> bool {
        let forward = self
            .position
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != ABSENT)
            .all(|(i, &p)| (p as usize) < self.size && self.members[p as usize] == i);
        let backward = (0..self.size).all(|p| self.position[self.members[p]] == p as isize);
        let count = self.position.iter().filter(|&&p| p != ABSENT).count() == self.size;
        forward && backward && count
    }
}
