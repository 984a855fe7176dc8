//! Undirected self-looped graph in compressed-sparse-row form.
//!
//! Every node carries a self-loop after construction (added when absent),
//! neighbor lists are sorted and deduplicated, and the degree of a node is
//! the length of its neighbor list (self-loop included). The quantity the
//! weight formulas call `2m` is the sum of all degrees, exposed here as
//! [`Graph::directed_edge_slot_count`].

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub type NodeId = u32;

#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    min_degree: u32,
    self_loops_applied: bool,
    /// Sorted original ids, present only when the input used sparse ids and
    /// was remapped to dense 0-based ids. `external_ids[internal] = original`.
    external_ids: Option<Vec<u64>>,
}

impl Graph {
    /// Build from undirected edges. `explicit_n` pins the node-id space
    /// `[0, n)`; without it the space is `[0, max id]`. Duplicate edges are
    /// collapsed and a self-loop is added for every node.
    pub fn from_edges(explicit_n: Option<usize>, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let n = match explicit_n {
            Some(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("node count must be >= 1".into()));
                }
                for &(u, v) in edges {
                    let bad = u.max(v);
                    if bad as usize >= n {
                        return Err(Error::NodeOutOfRange {
                            node: bad as u64,
                            node_count: n,
                        });
                    }
                }
                n
            }
            None => {
                let max = edges
                    .iter()
                    .map(|&(u, v)| u.max(v))
                    .max()
                    .ok_or_else(|| Error::InvalidParameter("no edges and no node count".into()))?;
                max as usize + 1
            }
        };

        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u as usize].push(v);
            if u != v {
                adj[v as usize].push(u);
            }
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.push(u as NodeId); // self-loop
            list.sort_unstable();
            list.dedup();
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        let mut min_degree = u32::MAX;
        for list in &adj {
            min_degree = min_degree.min(list.len() as u32);
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }

        Ok(Graph {
            offsets,
            neighbors,
            min_degree,
            self_loops_applied: true,
            external_ids: None,
        })
    }

    /// Load an undirected edge list: lines `u v`, `#` starts a comment, and
    /// an optional `#n <count>` header pins the node-id space (allowing
    /// isolated trailing ids). Without a header, sparse ids are remapped to
    /// dense 0-based ids and the mapping table is kept on the graph.
    pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;

        let mut explicit_n: Option<usize> = None;
        let mut raw_edges: Vec<(u64, u64)> = Vec::new();

        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim_start();
                if let Some(count) = rest.strip_prefix("n ").or_else(|| rest.strip_prefix("n\t")) {
                    let count: usize = count.trim().parse().map_err(|_| {
                        Error::parse(path, line_no, format!("bad node count '{}'", count.trim()))
                    })?;
                    explicit_n = Some(count);
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let (a, b) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::parse(
                        path,
                        line_no,
                        format!("expected two node ids, got '{line}'"),
                    ))
                }
            };
            let u: u64 = a
                .parse()
                .map_err(|_| Error::parse(path, line_no, format!("bad node id '{a}'")))?;
            let v: u64 = b
                .parse()
                .map_err(|_| Error::parse(path, line_no, format!("bad node id '{b}'")))?;
            raw_edges.push((u, v));
        }

        if raw_edges.is_empty() && explicit_n.is_none() {
            return Err(Error::parse(path, 0, "empty edge list".to_string()));
        }

        if let Some(n) = explicit_n {
            if n > u32::MAX as usize {
                return Err(Error::InvalidParameter(format!("node count {n} too large")));
            }
            for &(u, v) in &raw_edges {
                let bad = u.max(v);
                if bad >= n as u64 {
                    return Err(Error::NodeOutOfRange {
                        node: bad,
                        node_count: n,
                    });
                }
            }
            let edges: Vec<(NodeId, NodeId)> = raw_edges
                .iter()
                .map(|&(u, v)| (u as NodeId, v as NodeId))
                .collect();
            return Self::from_edges(Some(n), &edges);
        }

        // No header: dense ids pass through; sparse ids get remapped.
        let distinct: BTreeSet<u64> = raw_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let max_id = *distinct.iter().next_back().expect("nonempty");
        if max_id + 1 == distinct.len() as u64 {
            let edges: Vec<(NodeId, NodeId)> = raw_edges
                .iter()
                .map(|&(u, v)| (u as NodeId, v as NodeId))
                .collect();
            Self::from_edges(Some(distinct.len()), &edges)
        } else {
            let table: Vec<u64> = distinct.into_iter().collect();
            if table.len() > u32::MAX as usize {
                return Err(Error::InvalidParameter("too many distinct node ids".into()));
            }
            let dense = |id: u64| table.binary_search(&id).expect("id collected") as NodeId;
            let edges: Vec<(NodeId, NodeId)> = raw_edges
                .iter()
                .map(|&(u, v)| (dense(u), dense(v)))
                .collect();
            let mut g = Self::from_edges(Some(table.len()), &edges)?;
            g.external_ids = Some(table);
            Ok(g)
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Sum of all degrees, self-loops included (`2m` in the weight formulas).
    pub fn directed_edge_slot_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn degree(&self, u: NodeId) -> u32 {
        (self.offsets[u as usize + 1] - self.offsets[u as usize]) as u32
    }

    pub fn min_degree(&self) -> u32 {
        self.min_degree
    }

    /// Average degree `d_G = 2m / n`.
    pub fn average_degree(&self) -> f64 {
        self.directed_edge_slot_count() as f64 / self.node_count() as f64
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    pub fn self_loops_applied(&self) -> bool {
        self.self_loops_applied
    }

    /// Remapping table from internal dense ids to original file ids, present
    /// only when the loaded edge list used sparse ids.
    pub fn external_ids(&self) -> Option<&[u64]> {
        self.external_ids.as_deref()
    }

    /// Translate an id as written in input files to an internal node id.
    pub fn resolve_external_id(&self, id: u64) -> Result<NodeId> {
        match &self.external_ids {
            None => {
                if id < self.node_count() as u64 {
                    Ok(id as NodeId)
                } else {
                    Err(Error::NodeOutOfRange {
                        node: id,
                        node_count: self.node_count(),
                    })
                }
            }
            Some(table) => table
                .binary_search(&id)
                .map(|i| i as NodeId)
                .map_err(|_| Error::UnknownNodeId(id)),
        }
    }

    fn check_node(&self, u: NodeId) -> Result<()> {
        if (u as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: u as u64,
                node_count: self.node_count(),
            })
        }
    }

    /// Stationary distribution of the random walk: `pi(v) = d_v / 2m`.
    pub fn stationary_distribution(&self) -> Vec<f64> {
        let slots = self.directed_edge_slot_count() as f64;
        (0..self.node_count())
            .map(|u| self.degree(u as NodeId) as f64 / slots)
            .collect()
    }

    /// Row `u` of the transition matrix `P = D^-1 A`: weight `1/d_u` on each
    /// neighbor of `u` (self-loop included).
    pub fn transition_row(&self, u: NodeId) -> Result<Vec<(NodeId, f64)>> {
        self.check_node(u)?;
        let w = 1.0 / self.degree(u) as f64;
        Ok(self.neighbors(u).iter().map(|&v| (v, w)).collect())
    }

    /// Connected-component census by BFS. Sizes are sorted descending.
    pub fn connectivity_report(&self) -> ConnectivityReport {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push(start as NodeId);
            let mut size = 0usize;
            while let Some(u) = queue.pop() {
                size += 1;
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        queue.push(v);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        ConnectivityReport {
            component_count: sizes.len(),
            sizes,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connectivity_report().component_count == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub component_count: usize,
    pub sizes: Vec<usize>,
}

/// Dense row-major feature matrix, one row per graph node.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f32>,
}

impl FeatureMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "feature matrix {rows}x{cols} needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "feature value at row {} col {}",
                bad / cols.max(1),
                bad % cols.max(1)
            )));
        }
        Ok(FeatureMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }
}
