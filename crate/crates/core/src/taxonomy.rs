//! Tree-shaped reference ontologies.
//!
//! A [`Taxonomy`] is an immutable rooted tree of concepts linked by ISA
//! edges. Concepts are addressed by their string id at the API boundary and
//! by a dense [`Concept`] handle internally, so that all per-concept tables
//! are plain vectors.
//!
//! Taxonomies are read from an edge list with one `<child><TAB><parent>`
//! line per concept; the root's parent is `-`, and lines starting with `#`
//! are comments.
//!
//! Classification schemes with multiple inheritance are loaded as a
//! [`DagScheme`] and turned into a tree by [`treeify_dag`], which creates one
//! concept per distinct path from a node up to a root.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Parent token marking a root record in edge-list files.
pub const ROOT_MARKER: &str = "-";

/// Default separator used when concatenating path labels in [`treeify_dag`].
pub const DEFAULT_SEPARATOR: &str = "_";

/// Dense handle of a concept inside one [`Taxonomy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Concept(u32);

impl Concept {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_index(i: usize) -> Self {
        Concept(i as u32)
    }
}

#[derive(Debug, Clone)]
pub struct Taxonomy {
    names: Vec<String>,
    index: HashMap<String, Concept>,
    parent: Vec<Option<Concept>>,
    children: Vec<Vec<Concept>>,
    depth: Vec<u32>,
    /// Number of concepts in the subtree rooted at each concept, itself included.
    subtree: Vec<u32>,
    root: Concept,
    max_depth: u32,
}

fn check_id(id: &str, location: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::parse(location, "empty concept id"));
    }
    if id.contains(['\t', '\n', '\r']) {
        return Err(Error::parse(
            location,
            format!("concept id `{id}` contains a tab or newline"),
        ));
    }
    Ok(())
}

impl Taxonomy {
    /// Builds a taxonomy from `(child, parent)` records, `None` marking the root.
    ///
    /// Concept handles follow the order in which children are first listed.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Option<S>)>,
        S: Into<String>,
    {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, Concept> = HashMap::new();
        let mut parent_names: Vec<Option<String>> = Vec::new();

        for (child, parent) in edges {
            let child = child.into();
            check_id(&child, "taxonomy")?;
            if child == ROOT_MARKER {
                return Err(Error::Structure(format!(
                    "`{ROOT_MARKER}` is reserved and cannot be a concept id"
                )));
            }
            if index.contains_key(&child) {
                return Err(Error::Structure(format!("duplicate concept id `{child}`")));
            }
            index.insert(child.clone(), Concept::from_index(names.len()));
            names.push(child);
            parent_names.push(parent.map(Into::into));
        }
        if names.is_empty() {
            return Err(Error::Structure("taxonomy has no concepts".into()));
        }

        let n = names.len();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (i, p) in parent_names.iter().enumerate() {
            match p {
                None => roots.push(i),
                Some(p) => {
                    let pc = *index.get(p).ok_or_else(|| {
                        Error::Structure(format!(
                            "concept `{}` has undeclared parent `{p}`",
                            names[i]
                        ))
                    })?;
                    parent[i] = Some(pc);
                    children[pc.index()].push(Concept::from_index(i));
                }
            }
        }
        let root = match roots.as_slice() {
            [r] => Concept::from_index(*r),
            [] => return Err(Error::Structure("no root declared".into())),
            many => {
                let listed: Vec<&str> = many.iter().map(|&i| names[i].as_str()).collect();
                return Err(Error::Structure(format!(
                    "multiple roots: {}",
                    listed.join(", ")
                )));
            }
        };

        // Every non-root has exactly one parent, so anything unreachable from
        // the root sits on a cycle.
        let mut depth = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        depth[root.index()] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for &ch in &children[c.index()] {
                depth[ch.index()] = depth[c.index()] + 1;
                order.push(ch);
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| depth[i] == u32::MAX).unwrap();
            return Err(Error::Structure(format!(
                "cycle through concept `{}`",
                names[stuck]
            )));
        }

        let mut subtree = vec![1u32; n];
        for &c in order.iter().rev() {
            if let Some(p) = parent[c.index()] {
                subtree[p.index()] += subtree[c.index()];
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);

        Ok(Taxonomy {
            names,
            index,
            parent,
            children,
            depth,
            subtree,
            root,
            max_depth,
        })
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let location = format!("line {}", lineno + 1);
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(child), Some(parent), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::parse(location, "expected `<child><TAB><parent>`"));
            };
            check_id(child, &location)?;
            check_id(parent, &location)?;
            let parent = (parent != ROOT_MARKER).then(|| parent.to_owned());
            edges.push((child.to_owned(), parent));
        }
        Self::from_edges(edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text).map_err(|e| match e {
            Error::Parse { location, message } => Error::Parse {
                location: format!("{}:{location}", path.display()),
                message,
            },
            other => other,
        })
    }

    /// Serializes in breadth-first order from the root, children in handle order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for c in self.breadth_first() {
            let parent = self.parent(c).map_or(ROOT_MARKER, |p| self.name(p));
            let _ = writeln!(out, "{}\t{}", self.name(c), parent);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of ISA edges, always `len() - 1` for a tree.
    pub fn isa_count(&self) -> usize {
        self.len() - 1
    }

    pub fn root(&self) -> Concept {
        self.root
    }

    pub fn concepts(&self) -> impl ExactSizeIterator<Item = Concept> + '_ {
        (0..self.names.len()).map(Concept::from_index)
    }

    pub fn breadth_first(&self) -> Vec<Concept> {
        let mut order = vec![self.root];
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            order.extend_from_slice(&self.children[c.index()]);
        }
        order
    }

    pub fn name(&self, c: Concept) -> &str {
        &self.names[c.index()]
    }

    pub fn get(&self, id: &str) -> Option<Concept> {
        self.index.get(id).copied()
    }

    pub fn resolve(&self, id: &str) -> Result<Concept> {
        self.get(id).ok_or_else(|| Error::unknown_concept(id))
    }

    pub fn parent(&self, c: Concept) -> Option<Concept> {
        self.parent[c.index()]
    }

    pub fn children(&self, c: Concept) -> &[Concept] {
        &self.children[c.index()]
    }

    /// Edge-counted depth; the root has depth 0.
    pub fn depth_edges(&self, c: Concept) -> usize {
        self.depth[c.index()] as usize
    }

    /// Node-counted depth; the root has depth 1.
    pub fn depth_nodes(&self, c: Concept) -> usize {
        self.depth_edges(c) + 1
    }

    pub fn max_depth_edges(&self) -> usize {
        self.max_depth as usize
    }

    /// Number of proper descendants of `c`.
    pub fn descendant_count(&self, c: Concept) -> usize {
        self.subtree[c.index()] as usize - 1
    }

    /// Proper descendants of `c` (the concept itself is excluded).
    pub fn descendants(&self, c: Concept) -> Vec<Concept> {
        let mut out = Vec::with_capacity(self.descendant_count(c));
        let mut stack: Vec<Concept> = self.children(c).to_vec();
        while let Some(d) = stack.pop() {
            out.push(d);
            stack.extend_from_slice(self.children(d));
        }
        out
    }

    /// Iterates from `c` up to the root, `c` first.
    pub fn ancestors_or_self(&self, c: Concept) -> impl Iterator<Item = Concept> + '_ {
        std::iter::successors(Some(c), move |&x| self.parent(x))
    }

    /// Least common subsumer: the deepest concept subsuming both arguments.
    pub fn lcs(&self, a: Concept, b: Concept) -> Concept {
        let (mut a, mut b) = (a, b);
        while self.depth[a.index()] > self.depth[b.index()] {
            a = self.parent[a.index()].unwrap();
        }
        while self.depth[b.index()] > self.depth[a.index()] {
            b = self.parent[b.index()].unwrap();
        }
        while a != b {
            a = self.parent[a.index()].unwrap();
            b = self.parent[b.index()].unwrap();
        }
        a
    }

    /// Number of edges on the unique tree path between `a` and `b`.
    pub fn path_length_edges(&self, a: Concept, b: Concept) -> usize {
        let l = self.lcs(a, b);
        self.depth_edges(a) + self.depth_edges(b) - 2 * self.depth_edges(l)
    }

    pub fn lcs_by_id(&self, a: &str, b: &str) -> Result<&str> {
        let l = self.lcs(self.resolve(a)?, self.resolve(b)?);
        Ok(self.name(l))
    }

    /// `true` when both taxonomies have identical concept ids, handles and parents.
    pub fn same_shape(&self, other: &Taxonomy) -> bool {
        self.names == other.names && self.parent == other.parent
    }
}

/// Classification scheme whose nodes may have several parents.
#[derive(Debug, Clone, Default)]
pub struct DagScheme {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    parents: Vec<BTreeSet<usize>>,
}

impl DagScheme {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        self.parents.push(BTreeSet::new());
        i
    }

    pub fn add_edge(&mut self, child: &str, parent: &str) {
        let c = self.add_node(child);
        let p = self.add_node(parent);
        self.parents[c].insert(p);
    }

    /// Same line format as taxonomy edge lists, except a child may be listed
    /// under several parents. Nodes that never appear as a child are roots.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut dag = DagScheme::new();
        for (lineno, line) in text.lines().enumerate() {
            let location = format!("line {}", lineno + 1);
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(child), Some(parent), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::parse(location, "expected `<child><TAB><parent>`"));
            };
            check_id(child, &location)?;
            check_id(parent, &location)?;
            if parent == ROOT_MARKER {
                dag.add_node(child);
            } else {
                dag.add_edge(child, parent);
            }
        }
        Ok(dag)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn roots(&self) -> Vec<&str> {
        let mut roots: Vec<&str> = (0..self.len())
            .filter(|&i| self.parents[i].is_empty())
            .map(|i| self.labels[i].as_str())
            .collect();
        roots.sort_unstable();
        roots
    }

    fn children_sorted(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.len()];
        for (c, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                children[p].push(c);
            }
        }
        for list in &mut children {
            list.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        }
        children
    }

    fn check_acyclic(&self, children: &[Vec<usize>]) -> Result<()> {
        let mut indegree: Vec<usize> = self.parents.iter().map(BTreeSet::len).collect();
        let mut ready: Vec<usize> = (0..self.len()).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(n) = ready.pop() {
            seen += 1;
            for &c in &children[n] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(c);
                }
            }
        }
        if seen == self.len() {
            Ok(())
        } else {
            let stuck = (0..self.len()).find(|&i| indegree[i] > 0).unwrap();
            Err(Error::Cycle(self.labels[stuck].clone()))
        }
    }

    /// Number of distinct node-to-root paths, i.e. the concept count of the
    /// treeified scheme minus the synthetic root.
    pub fn root_path_count(&self) -> Result<u128> {
        let children = self.children_sorted();
        self.check_acyclic(&children)?;
        let mut memo: Vec<Option<u128>> = vec![None; self.len()];
        fn paths(dag: &DagScheme, n: usize, memo: &mut [Option<u128>]) -> u128 {
            if let Some(v) = memo[n] {
                return v;
            }
            let v = if dag.parents[n].is_empty() {
                1
            } else {
                dag.parents[n].iter().map(|&p| paths(dag, p, memo)).sum()
            };
            memo[n] = Some(v);
            v
        }
        Ok((0..self.len()).map(|n| paths(self, n, &mut memo)).sum())
    }
}

/// Turns a multi-parent scheme into a tree by path expansion.
///
/// Each distinct path `(x, p, ..., r)` from a node to a root becomes one
/// concept whose id is the labels joined leaf-most first, followed by
/// `root_label`; its parent is the concept of the path `(p, ..., r)`. A node
/// reachable along `k` paths therefore yields `k` concepts. Every root hangs
/// under a synthetic concept named `root_label`.
pub fn treeify_dag(dag: &DagScheme, separator: &str, root_label: &str) -> Result<Taxonomy> {
    let children = dag.children_sorted();
    dag.check_acyclic(&children)?;

    let mut edges: Vec<(String, Option<String>)> = vec![(root_label.to_owned(), None)];
    let mut roots: Vec<usize> = (0..dag.len())
        .filter(|&i| dag.parents[i].is_empty())
        .collect();
    roots.sort_by(|&a, &b| dag.labels[a].cmp(&dag.labels[b]));

    // Depth-first over paths; each entry is (node, path-concept id, parent id).
    let mut stack: Vec<(usize, String, String)> = roots
        .iter()
        .rev()
        .map(|&r| {
            (
                r,
                format!("{}{separator}{root_label}", dag.labels[r]),
                root_label.to_owned(),
            )
        })
        .collect();
    while let Some((node, id, parent_id)) = stack.pop() {
        for &c in children[node].iter().rev() {
            let child_id = format!("{}{separator}{id}", dag.labels[c]);
            stack.push((c, child_id, id.clone()));
        }
        edges.push((id, Some(parent_id)));
    }
    Taxonomy::from_edges(edges)
}
