use super::{ElementaryGrid, SegNode, SegmentTree};
use crate::index::{QueryStats, TopKIndex};
use crate::interval::{Interval, Query, SortedDataset};

/// Segment tree skeleton where every leaf stores the weight-sorted union of
/// the canonical sets on its root-to-leaf path.
///
/// A query descends to the leaf for `s` and copies the first `k` entries of
/// its array. Arrays live only at leaves: every descent ends at a leaf, so
/// interior arrays would never be read. Entries are full interval records,
/// so answering reads one contiguous run.
#[derive(Debug, Clone)]
pub struct PathArrayTree {
    grid: ElementaryGrid,
    nodes: Vec<SegNode>,
    /// `entries[offsets[j]..offsets[j + 1]]` is the array of leaf `j`.
    offsets: Vec<usize>,
    entries: Vec<Interval>,
    height: usize,
    duplicates_removed: usize,
}

impl PathArrayTree {
    pub fn build(data: &SortedDataset) -> Self {
        SegmentTree::build(data).into_path_arrays()
    }

    pub fn from_segment_tree(tree: SegmentTree) -> Self {
        let SegmentTree {
            data,
            grid,
            nodes,
            canonical,
            height,
        } = tree;

        let leaves = grid.leaf_count() as usize;
        let mut builder = Builder {
            data: &data,
            nodes: &nodes,
            canonical: &canonical,
            path: Vec::with_capacity(height),
            scratch: Vec::new(),
            offsets: Vec::with_capacity(leaves + 1),
            entries: Vec::new(),
            duplicates_removed: 0,
            summed_input: 0,
        };
        builder.offsets.push(0);
        builder.visit(0);
        let Builder {
            offsets,
            mut entries,
            duplicates_removed,
            summed_input,
            ..
        } = builder;
        debug_assert_eq!(offsets.len(), leaves + 1);
        debug_assert_eq!(summed_input, entries.len() + duplicates_removed);
        entries.shrink_to_fit();
        drop(canonical);

        Self {
            grid,
            nodes,
            offsets,
            entries,
            height,
            duplicates_removed,
        }
    }

    pub fn grid(&self) -> &ElementaryGrid {
        &self.grid
    }

    /// Number of levels, root and leaf included.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Entries dropped as duplicates while merging path sets. Always zero
    /// for canonical assignment, since no interval is canonical twice on one
    /// path.
    pub fn duplicates_removed(&self) -> usize {
        self.duplicates_removed
    }

    /// Total entries across all leaf arrays.
    pub fn path_array_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn path_array(&self, leaf: u32) -> impl Iterator<Item = &Interval> + '_ {
        self.leaf_slice(leaf).iter()
    }

    fn leaf_slice(&self, leaf: u32) -> &[Interval] {
        let leaf = leaf as usize;
        &self.entries[self.offsets[leaf]..self.offsets[leaf + 1]]
    }

    /// The leaf reached for `s`.
    #[inline]
    pub fn locate(&self, s: f64, stats: &mut QueryStats) -> u32 {
        let mut cur = 0u32;
        loop {
            let node = &self.nodes[cur as usize];
            stats.nodes += 1;
            if node.is_leaf() {
                return node.lo;
            }
            cur = node.child_for(s);
        }
    }
}

impl TopKIndex for PathArrayTree {
    fn name(&self) -> &'static str {
        "stpsa"
    }

    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats) {
        out.clear();
        let leaf = self.locate(q.s, stats);
        let array = self.leaf_slice(leaf);
        let take = array.len().min(q.k);
        stats.touched += take as u64;
        stats.stabbed += take as u64;
        out.extend_from_slice(&array[..take]);
    }

    fn stored_copies(&self) -> usize {
        self.entries.len()
    }
}

struct Builder<'a> {
    data: &'a SortedDataset,
    nodes: &'a [SegNode],
    canonical: &'a [Vec<u32>],
    path: Vec<&'a [u32]>,
    scratch: Vec<u32>,
    offsets: Vec<usize>,
    entries: Vec<Interval>,
    duplicates_removed: usize,
    summed_input: usize,
}

impl<'a> Builder<'a> {
    fn visit(&mut self, index: u32) {
        let (nodes, canonical) = (self.nodes, self.canonical);
        let node = &nodes[index as usize];
        self.path.push(&canonical[index as usize]);
        if node.is_leaf() {
            self.scratch.clear();
            for list in &self.path {
                self.scratch.extend_from_slice(list);
            }
            self.summed_input += self.scratch.len();
            // The path lists are already sorted runs; the stable sort merges them.
            self.scratch.sort();
            let before = self.scratch.len();
            self.scratch.dedup();
            self.duplicates_removed += before - self.scratch.len();
            debug_assert_eq!(before, self.scratch.len(), "interval canonical twice on one path");
            self.entries.extend(self.scratch.iter().map(|&r| *self.data.get(r)));
            self.offsets.push(self.entries.len());
        } else {
            self.visit(node.left);
            self.visit(node.right);
        }
        self.path.pop();
    }
}
