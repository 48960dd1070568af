//! Vertex sets as 64-bit masks.

pub type VertexSet = u64;

#[inline]
pub fn bit(v: usize) -> VertexSet {
    1u64 << v
}

#[inline]
pub fn contains(set: VertexSet, v: usize) -> bool {
    set >> v & 1 == 1
}

#[inline]
pub fn full(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the members of `set` in increasing order.
#[inline]
pub fn members(set: VertexSet) -> Members {
    Members(set)
}

pub fn from_slice(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | bit(v))
}

pub fn to_vec(set: VertexSet) -> Vec<usize> {
    members(set).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct Members(VertexSet);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}
