//! Binary edge labelings and their on-disk format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::ColoredTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling refers to edge ({0}, {1}) which is not in the tree")]
    UnknownEdge(u64, u64),
    #[error("edge ({0}, {1}) is labeled twice")]
    DuplicateEdge(u64, u64),
    #[error("labeling is incomplete: {missing} of {total} edges have no label")]
    Incomplete { missing: usize, total: usize },
    #[error("label {0} is not 0 or 1")]
    BadValue(u8),
    #[error("labeling has {got} entries but the tree has {expected} edges")]
    SizeMismatch { got: usize, expected: usize },
    #[error("malformed labeling document: {0}")]
    Syntax(String),
}

/// Membership of each edge in the set X, indexed by the tree's edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling(pub Vec<bool>);

impl EdgeLabeling {
    pub fn zeros(edges: usize) -> Self {
        EdgeLabeling(vec![false; edges])
    }

    pub fn get(&self, e: usize) -> bool {
        self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complemented(&self) -> Self {
        EdgeLabeling(self.0.iter().map(|b| !b).collect())
    }

    /// Number of X edges at node `v`.
    pub fn x_degree(&self, tree: &ColoredTree, v: usize) -> usize {
        tree.ports(v).iter().filter(|&&e| self.0[e]).count()
    }

    pub fn check_size(&self, tree: &ColoredTree) -> Result<(), LabelingError> {
        if self.0.len() == tree.edge_count() {
            Ok(())
        } else {
            Err(LabelingError::SizeMismatch {
                got: self.0.len(),
                expected: tree.edge_count(),
            })
        }
    }

    pub fn to_document(&self, tree: &ColoredTree) -> LabelingDocument {
        LabelingDocument {
            labels: (0..tree.edge_count())
                .map(|e| {
                    let [a, b] = tree.endpoints(e);
                    EdgeRecord {
                        edge: [tree.id(a), tree.id(b)],
                        x: u8::from(self.0[e]),
                    }
                })
                .collect(),
        }
    }

    pub fn from_document(tree: &ColoredTree, doc: &LabelingDocument) -> Result<Self, LabelingError> {
        let mut labels: Vec<Option<bool>> = vec![None; tree.edge_count()];
        for rec in &doc.labels {
            let [a, b] = rec.edge;
            let e = tree
                .edge_by_ids(a, b)
                .ok_or(LabelingError::UnknownEdge(a, b))?;
            let x = match rec.x {
                0 => false,
                1 => true,
                v => return Err(LabelingError::BadValue(v)),
            };
            if labels[e].replace(x).is_some() {
                return Err(LabelingError::DuplicateEdge(a, b));
            }
        }
        let missing = labels.iter().filter(|l| l.is_none()).count();
        if missing > 0 {
            return Err(LabelingError::Incomplete {
                missing,
                total: labels.len(),
            });
        }
        Ok(EdgeLabeling(labels.into_iter().map(|l| l.unwrap_or(false)).collect()))
    }

    pub fn from_json(tree: &ColoredTree, text: &str) -> Result<Self, LabelingError> {
        let doc: LabelingDocument =
            serde_json::from_str(text).map_err(|e| LabelingError::Syntax(e.to_string()))?;
        Self::from_document(tree, &doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub edge: [u64; 2],
    pub x: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDocument {
    pub labels: Vec<EdgeRecord>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{complete_biregular, Color};

    #[test]
    fn document_round_trip() {
        let t = complete_biregular(3, 2, 2, Color::White, None).unwrap();
        let x = EdgeLabeling((0..t.edge_count()).map(|e| e % 2 == 0).collect());
        let text = serde_json::to_string(&x.to_document(&t)).unwrap();
        assert_eq!(EdgeLabeling::from_json(&t, &text).unwrap(), x);
    }

    #[test]
    fn rejects_partial_and_foreign_edges() {
        let t = complete_biregular(3, 2, 2, Color::White, None).unwrap();
        let mut doc = EdgeLabeling::zeros(t.edge_count()).to_document(&t);
        doc.labels.pop();
        assert!(matches!(
            EdgeLabeling::from_document(&t, &doc),
            Err(LabelingError::Incomplete { missing: 1, .. })
        ));
        doc.labels.push(EdgeRecord { edge: [1, 7], x: 0 });
        assert!(matches!(
            EdgeLabeling::from_document(&t, &doc),
            Err(LabelingError::UnknownEdge(1, 7))
        ));
    }
}
