use serde::Serialize;

use crate::tensor::SpaceId;

/// Summand of a direct sum of spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockKey {
    Space(SpaceId),
    /// The quotient `X̄_{vw}`.
    Bar(i64, i64),
}

/// Ordered direct sum of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Layout {
    pub keys: Vec<BlockKey>,
    pub dims: Vec<usize>,
}

impl Layout {
    pub fn new(blocks: impl IntoIterator<Item = (BlockKey, usize)>) -> Self {
        let (keys, dims) = blocks.into_iter().unzip();
        Layout { keys, dims }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn concat(parts: impl IntoIterator<Item = Layout>) -> Self {
        let mut out = Layout::default();
        for p in parts {
            out.keys.extend(p.keys);
            out.dims.extend(p.dims);
        }
        out
    }

    pub fn position(&self, key: &BlockKey) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    pub fn offset(&self, block: usize) -> usize {
        self.dims[..block].iter().sum()
    }

    /// Basis permutation `perm[i] = j`: coordinate `i` of `self` is coordinate `j` of `other`.
    /// Zero-dimensional blocks are ignored.
    pub fn permutation_to(&self, other: &Layout) -> Option<Vec<usize>> {
        if self.total() != other.total() {
            return None;
        }
        let mut perm = Vec::with_capacity(self.total());
        for (k, key) in self.keys.iter().enumerate() {
            if self.dims[k] == 0 {
                continue;
            }
            let b = other.position(key)?;
            if other.dims[b] != self.dims[k] {
                return None;
            }
            let off = other.offset(b);
            perm.extend(off..off + self.dims[k]);
        }
        Some(perm)
    }
}
