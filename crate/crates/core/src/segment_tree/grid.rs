use std::ops::Bound;

/// The elementary intervals induced by a sorted set of distinct endpoints
/// `e_0 < e_1 < ... < e_{m-1}`:
///
/// ```text
/// leaf 0      1        2          3        ...  2m-1         2m
///      (-inf,e0) [e0,e0] (e0,e1) [e1,e1]  ...  [e_{m-1}]  (e_{m-1},+inf)
/// ```
///
/// Even leaves are open gaps, odd leaves are single endpoints.
#[derive(Debug, Clone, Default)]
pub struct ElementaryGrid {
    endpoints: Vec<f64>,
}

impl ElementaryGrid {
    pub fn new<I: IntoIterator<Item = f64>>(points: I) -> Self {
        let mut endpoints: Vec<f64> = points.into_iter().collect();
        endpoints.sort_unstable_by(f64::total_cmp);
        endpoints.dedup();
        Self { endpoints }
    }

    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    pub fn leaf_count(&self) -> u32 {
        2 * self.endpoints.len() as u32 + 1
    }

    /// The leaf whose range contains `s`.
    pub fn leaf_of(&self, s: f64) -> u32 {
        let i = self.endpoints.partition_point(|&e| e < s);
        if i < self.endpoints.len() && self.endpoints[i] == s {
            2 * i as u32 + 1
        } else {
            2 * i as u32
        }
    }

    /// The leaf of an endpoint known to be on the grid.
    pub(crate) fn point_leaf(&self, e: f64) -> u32 {
        let leaf = self.leaf_of(e);
        debug_assert!(leaf % 2 == 1, "{e} is not a grid endpoint");
        leaf
    }

    pub fn leaf_range(&self, leaf: u32) -> (Bound<f64>, Bound<f64>) {
        let e = &self.endpoints;
        if leaf % 2 == 1 {
            let p = e[(leaf / 2) as usize];
            (Bound::Included(p), Bound::Included(p))
        } else {
            let i = (leaf / 2) as usize;
            let lo = if i == 0 { Bound::Unbounded } else { Bound::Excluded(e[i - 1]) };
            let hi = if i == e.len() { Bound::Unbounded } else { Bound::Excluded(e[i]) };
            (lo, hi)
        }
    }

    /// Range covered by leaves `lo..hi`.
    pub fn span(&self, lo: u32, hi: u32) -> (Bound<f64>, Bound<f64>) {
        (self.leaf_range(lo).0, self.leaf_range(hi - 1).1)
    }

    /// Some point inside the leaf.
    pub fn representative(&self, leaf: u32) -> f64 {
        match self.leaf_range(leaf) {
            (Bound::Included(p), _) => p,
            (Bound::Unbounded, Bound::Unbounded) => 0.0,
            (Bound::Unbounded, Bound::Excluded(b)) => b - 1.0,
            (Bound::Excluded(a), Bound::Unbounded) => a + 1.0,
            (Bound::Excluded(a), Bound::Excluded(b)) => a + (b - a) / 2.0,
            _ => unreachable!(),
        }
    }

    /// Descent rule at a node whose right child starts at leaf `mid`:
    /// returns `(split, closed)` such that `s` belongs to the left child iff
    /// `s < split`, or `s <= split` when `closed`.
    pub(crate) fn split_at(&self, mid: u32) -> (f64, bool) {
        if mid % 2 == 1 {
            // Right child starts at the point leaf [e, e].
            (self.endpoints[(mid / 2) as usize], false)
        } else {
            // Right child starts at the gap (e, ...); e itself is on the left.
            (self.endpoints[(mid / 2 - 1) as usize], true)
        }
    }
}
