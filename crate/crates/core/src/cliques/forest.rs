use std::io::Write;

use crate::graph::{Graph, Vertex, VertexSet};

pub type NodeId = u32;

const NONE: NodeId = NodeId::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    vertex: Vertex,
    parent: NodeId,
    first_child: NodeId,
    next_sibling: NodeId,
}

/// Forest whose root-to-leaf paths spell cliques.
#[derive(Debug, Clone, Default)]
pub struct CliqueForest {
    nodes: Vec<Node>,
    roots: Vec<NodeId>,
}

impl CliqueForest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn add_root(&mut self, vertex: Vertex) -> NodeId {
        let id = self.push(vertex, NONE);
        self.roots.push(id);
        id
    }

    pub fn add_child(&mut self, parent: NodeId, vertex: Vertex) -> NodeId {
        let id = self.push(vertex, parent);
        let p = &mut self.nodes[parent as usize];
        let old = p.first_child;
        p.first_child = id;
        self.nodes[id as usize].next_sibling = old;
        id
    }

    fn push(&mut self, vertex: Vertex, parent: NodeId) -> NodeId {
        let id = self.nodes.len() as NodeId;
        self.nodes.push(Node {
            vertex,
            parent,
            first_child: NONE,
            next_sibling: NONE,
        });
        id
    }

    pub fn vertex(&self, id: NodeId) -> Vertex {
        self.nodes[id as usize].vertex
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        let p = self.nodes[id as usize].parent;
        (p != NONE).then_some(p)
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.nodes[id as usize].first_child == NONE
    }

    pub fn children(&self, id: NodeId) -> Children<'_> {
        Children {
            forest: self,
            next: self.nodes[id as usize].first_child,
        }
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as NodeId).filter(move |&id| self.is_leaf(id))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Vertices from the root down to `leaf`.
    pub fn path(&self, leaf: NodeId) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut cur = leaf;
        while cur != NONE {
            out.push(self.nodes[cur as usize].vertex);
            cur = self.nodes[cur as usize].parent;
        }
        out.reverse();
        out
    }

    /// Every root-to-leaf path, in leaf-creation order.
    pub fn paths(&self) -> Vec<Vec<Vertex>> {
        self.leaves().map(|l| self.path(l)).collect()
    }

    pub fn to_clique_set(&self) -> CliqueSet {
        CliqueSet::from_cliques(self.paths())
    }
}

pub struct Children<'a> {
    forest: &'a CliqueForest,
    next: NodeId,
}

impl Iterator for Children<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.next == NONE {
            return None;
        }
        let id = self.next;
        self.next = self.forest.nodes[id as usize].next_sibling;
        Some(id)
    }
}

/// Inserts paths that arrive in depth-first order, so consecutive paths
/// share exactly the nodes of their common prefix.
pub(crate) struct DfsPathInserter {
    parent: Option<NodeId>,
    stack: Vec<(Vertex, NodeId)>,
}

impl DfsPathInserter {
    /// Paths hang below `parent`, or become new trees when `None`.
    pub(crate) fn new(parent: Option<NodeId>) -> Self {
        DfsPathInserter {
            parent,
            stack: Vec::new(),
        }
    }

    pub(crate) fn insert(&mut self, forest: &mut CliqueForest, path: &[Vertex]) {
        let common = self
            .stack
            .iter()
            .zip(path)
            .take_while(|((a, _), b)| a == *b)
            .count();
        self.stack.truncate(common);
        for &x in &path[common..] {
            let id = match self.stack.last().map(|&(_, id)| id).or(self.parent) {
                Some(p) => forest.add_child(p, x),
                None => forest.add_root(x),
            };
            self.stack.push((x, id));
        }
    }
}

/// Canonical collection of cliques: each ascending, the list sorted and
/// free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliqueSet {
    cliques: Vec<VertexSet>,
}

impl CliqueSet {
    pub fn from_cliques<I: IntoIterator<Item = Vec<Vertex>>>(cliques: I) -> Self {
        let mut cliques: Vec<VertexSet> = cliques.into_iter().map(VertexSet::from_unsorted).collect();
        cliques.sort_unstable();
        cliques.dedup();
        CliqueSet { cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.cliques.iter()
    }

    pub fn contains(&self, clique: &VertexSet) -> bool {
        self.cliques.binary_search(clique).is_ok()
    }

    pub fn is_subset_of(&self, other: &CliqueSet) -> bool {
        self.cliques.iter().all(|k| other.contains(k))
    }

    /// Text lines: members' labels ascending, space separated; lines in
    /// byte order.
    pub fn to_lines(&self, g: &Graph) -> Vec<String> {
        let mut lines: Vec<String> = self
            .cliques
            .iter()
            .map(|k| {
                let mut labels: Vec<u64> = k.iter().map(|v| g.label(v)).collect();
                labels.sort_unstable();
                labels
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        lines.sort_unstable();
        lines
    }

    pub fn write_text<W: Write>(&self, g: &Graph, mut out: W) -> std::io::Result<()> {
        for line in self.to_lines(g) {
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dfs_inserter_shares_prefixes() {
        let mut f = CliqueForest::new();
        let mut ins = DfsPathInserter::new(None);
        ins.insert(&mut f, &[0, 1, 2]);
        ins.insert(&mut f, &[0, 1, 3]);
        ins.insert(&mut f, &[0, 4]);
        ins.insert(&mut f, &[5]);
        assert_eq!(f.len(), 6);
        assert_eq!(f.roots().len(), 2);
        let mut paths = f.paths();
        paths.sort();
        assert_eq!(paths, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 4], vec![5]]);
    }

    #[test]
    fn extending_a_leaf_retires_its_path() {
        let mut f = CliqueForest::new();
        let r = f.add_root(3);
        assert!(f.is_leaf(r));
        let c = f.add_child(r, 7);
        assert!(!f.is_leaf(r));
        assert_eq!(f.parent(c), Some(r));
        assert_eq!(f.paths(), vec![vec![3, 7]]);
        assert_eq!(f.children(r).collect::<Vec<_>>(), vec![c]);
    }

    #[test]
    fn clique_set_is_canonical() {
        let s = CliqueSet::from_cliques(vec![vec![3, 1], vec![1, 3], vec![0]]);
        assert_eq!(s.len(), 2);
        let g = Graph::from_edges(4, [(1, 3)]).unwrap().with_labels(vec![10, 2, 5, 9]).unwrap();
        // labels 10 and "2 9" sort bytewise
        assert_eq!(s.to_lines(&g), vec!["10".to_string(), "2 9".to_string()]);
    }
}
