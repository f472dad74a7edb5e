use std::ops::RangeInclusive;

use crate::error::{Error, Result};

/// Largest tree the library will build.
pub const MAX_VERTICES: usize = 1 << 24;

/// The complete k-ary tree `T_(k,h)` with breadth-first labels: the root is
/// 1, its children `2 ..= k+1`, and the children of `v` are
/// `k(v-1)+2 ..= kv+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeShape {
    k: usize,
    h: usize,
    vertex_count: usize,
}

impl TreeShape {
    pub fn new(k: usize, h: usize) -> Result<Self> {
        if k == 0 || h == 0 {
            return Err(Error::InvalidParameter(format!(
                "T_(k,h) needs k >= 1 and h >= 1, got k={k}, h={h}"
            )));
        }
        let mut count: usize = 1;
        let mut level: usize = 1;
        for _ in 0..h {
            level = level
                .checked_mul(k)
                .filter(|&l| l <= MAX_VERTICES)
                .ok_or(Error::TreeTooLarge { k, h })?;
            count += level;
            if count > MAX_VERTICES {
                return Err(Error::TreeTooLarge { k, h });
            }
        }
        Ok(TreeShape {
            k,
            h,
            vertex_count: count,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count - 1
    }

    /// Parent of `v > 1`.
    pub fn parent(&self, v: usize) -> usize {
        debug_assert!(v > 1 && v <= self.vertex_count);
        (v + self.k - 2) / self.k
    }

    /// Children of `v`; empty for leaves.
    pub fn children(&self, v: usize) -> RangeInclusive<usize> {
        let first = self.k * (v - 1) + 2;
        if first > self.vertex_count {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        first..=first + self.k - 1
    }

    /// 1-based position of `v > 1` among its siblings.
    pub fn child_position(&self, v: usize) -> usize {
        v - self.k * (self.parent(v) - 1) - 1
    }

    pub fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while v > 1 {
            v = self.parent(v);
            d += 1;
        }
        d
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children(v).is_empty()
    }

    /// First label at depth `d`.
    pub fn level_start(&self, d: usize) -> usize {
        (0..d).fold(1, |acc, i| acc + self.k.pow(i as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_match_small_pictures() {
        let t = TreeShape::new(2, 2).unwrap();
        assert_eq!(t.vertex_count(), 7);
        assert_eq!(t.children(1), 2..=3);
        assert_eq!(t.children(3), 6..=7);
        assert!(t.is_leaf(4));
        assert_eq!(t.parent(7), 3);
        assert_eq!(t.child_position(7), 2);
        assert_eq!(TreeShape::new(2, 3).unwrap().vertex_count(), 15);
        assert_eq!(TreeShape::new(3, 2).unwrap().children(2), 5..=7);
        assert_eq!(TreeShape::new(3, 3).unwrap().level_start(2), 5);
    }

    #[test]
    fn paths_for_k1() {
        let t = TreeShape::new(1, 5).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.parent(4), 3);
        assert_eq!(t.children(3), 4..=4);
        assert!(t.is_leaf(6));
        assert_eq!(t.depth(6), 5);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(TreeShape::new(0, 3).is_err());
        assert!(TreeShape::new(2, 0).is_err());
        assert_eq!(
            TreeShape::new(2, 40),
            Err(Error::TreeTooLarge { k: 2, h: 40 })
        );
    }

    #[test]
    fn labeling_round_trips() {
        for (k, h) in [(1, 30), (2, 15), (3, 9), (4, 7), (5, 6), (7, 5), (10, 4)] {
            let t = TreeShape::new(k, h).unwrap();
            assert!(t.vertex_count() <= 100_000 + 10_000_000);
            for v in 1..=t.vertex_count() {
                for (j, c) in t.children(v).enumerate() {
                    assert_eq!(t.parent(c), v);
                    assert_eq!(t.child_position(c), j + 1);
                }
                assert_eq!(t.is_leaf(v), t.depth(v) == h, "k={k} h={h} v={v}");
            }
        }
    }
}
