//! Node class labels, optionally multi-label, and one-vs-rest binarization.

use crate::error::{CspError, Result};

/// Per-node class memberships over a dense class index space `[0, C)`.
///
/// Single-label datasets have exactly one class per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    class_names: Vec<String>,
    node_classes: Vec<Vec<u32>>,
}

impl Labels {
    /// `node_classes[i]` lists the classes of node `i`; every id must be `< class_names.len()`.
    pub fn new(class_names: Vec<String>, node_classes: Vec<Vec<u32>>) -> Result<Self> {
        let c = class_names.len();
        for (i, classes) in node_classes.iter().enumerate() {
            if classes.is_empty() {
                return Err(CspError::UnlabeledNode(i.to_string()));
            }
            if let Some(bad) = classes.iter().find(|&&k| k as usize >= c) {
                return Err(CspError::UnknownClass(bad.to_string()));
            }
        }
        let mut node_classes = node_classes;
        for classes in &mut node_classes {
            classes.sort_unstable();
            classes.dedup();
        }
        Ok(Self { class_names, node_classes })
    }

    /// Single-label constructor; class names are the decimal ids.
    pub fn from_dense(ids: &[usize]) -> Self {
        let n_classes = ids.iter().max().map_or(0, |&m| m + 1);
        Self {
            class_names: (0..n_classes).map(|c| c.to_string()).collect(),
            node_classes: ids.iter().map(|&c| vec![c as u32]).collect(),
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.node_classes.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn class_name(&self, c: usize) -> &str {
        &self.class_names[c]
    }

    pub fn classes_of(&self, node: usize) -> &[u32] {
        &self.node_classes[node]
    }

    pub fn is_multi_label(&self) -> bool {
        self.node_classes.iter().any(|c| c.len() > 1)
    }

    /// Single class per node, if the labels are single-label.
    pub fn dense(&self) -> Option<Vec<usize>> {
        self.node_classes.iter().map(|c| (c.len() == 1).then(|| c[0] as usize)).collect()
    }

    /// One-vs-rest indicator for class `c`.
    pub fn binary(&self, c: usize) -> Vec<bool> {
        self.node_classes.iter().map(|cls| cls.binary_search(&(c as u32)).is_ok()).collect()
    }

    pub fn count(&self, c: usize) -> usize {
        self.binary(c).iter().filter(|&&b| b).count()
    }
}

/// `1` where `labels[i] == positive`, else `0`. The class must occur.
pub fn binarize(labels: &[usize], positive: usize) -> Result<Vec<bool>> {
    if !labels.contains(&positive) {
        return Err(CspError::UnknownClass(positive.to_string()));
    }
    Ok(labels.iter().map(|&l| l == positive).collect())
}
