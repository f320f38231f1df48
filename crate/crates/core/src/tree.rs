//! The tree of base-5 suffixes that organises `N` by classification.
//!
//! A node is a digit string `w`; with `N_w` its base-5 value, the node is a
//! leaf of type `C_|w|(N_w)` unless that value is 1, in which case it has the
//! five children `0w, ..., 4w`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::profile::{abc_profile, ProfileError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Internal,
    Leaf { class: u8 },
    /// Internal, but below the requested depth.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BehaviorTreeNode {
    pub digits: String,
    #[serde(flatten)]
    pub kind: NodeKind,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<BehaviorTreeNode>,
}

fn base5_value(digits: &str) -> BigInt {
    digits.bytes().fold(BigInt::zero(), |acc, d| acc * 5 + (d - b'0'))
}

fn classify(digits: &str) -> Result<u8, ProfileError> {
    let level = digits.len();
    let p = abc_profile(base5_value(digits), level)?;
    // an internal parent guarantees C_i = 1 for every i < level
    match p.c.get(level - 1) {
        Some(&c) => Ok(c),
        None => Err(ProfileError::Unresolved { depth: p.c.len() }),
    }
}

fn build(digits: String, max_level: usize) -> Result<BehaviorTreeNode, ProfileError> {
    let class = classify(&digits)?;
    if class != 1 {
        return Ok(BehaviorTreeNode {
            digits,
            kind: NodeKind::Leaf { class },
            children: Vec::new(),
        });
    }
    if digits.len() >= max_level {
        return Ok(BehaviorTreeNode {
            digits,
            kind: NodeKind::Truncated,
            children: Vec::new(),
        });
    }
    let children = expand(&digits, max_level)?;
    Ok(BehaviorTreeNode {
        digits,
        kind: NodeKind::Internal,
        children,
    })
}

fn expand(suffix: &str, max_level: usize) -> Result<Vec<BehaviorTreeNode>, ProfileError> {
    (0..5u8)
        .into_par_iter()
        .map(|x| build(format!("{x}{suffix}"), max_level))
        .collect()
}

/// Builds the tree down to `max_level` digits.
pub fn behavior_tree(max_level: usize) -> Result<BehaviorTreeNode, ProfileError> {
    if max_level == 0 {
        return Err(ProfileError::ZeroDepth);
    }
    Ok(BehaviorTreeNode {
        digits: String::new(),
        kind: NodeKind::Internal,
        children: expand("", max_level)?,
    })
}

impl BehaviorTreeNode {
    pub fn is_internal(&self) -> bool {
        matches!(self.kind, NodeKind::Internal | NodeKind::Truncated)
    }

    pub fn find(&self, digits: &str) -> Option<&BehaviorTreeNode> {
        if self.digits == digits {
            return Some(self);
        }
        self.children
            .iter()
            .filter(|c| digits.ends_with(c.digits.as_str()))
            .find_map(|c| c.find(digits))
    }

    /// Follows the base-5 digits of `n` from least significant upward and
    /// returns the node where the walk stops.
    pub fn traverse(&self, n: &BigInt) -> &BehaviorTreeNode {
        let five = BigInt::from(5);
        let mut rest = n.mod_floor(&num_traits::pow(five.clone(), 64));
        let mut node = self;
        while node.kind == NodeKind::Internal {
            let (q, d) = rest.div_mod_floor(&five);
            rest = q;
            let d = d.to_usize().expect("digit");
            node = &node.children[d];
        }
        node
    }

    /// All nodes at depth `level`, in tree order.
    pub fn level(&self, level: usize) -> Vec<&BehaviorTreeNode> {
        if self.digits.len() == level {
            return vec![self];
        }
        self.children.iter().flat_map(|c| c.level(level)).collect()
    }

    /// Indented listing, one node per line: `digits:type` for leaves, bare
    /// `digits` for internal nodes and `digits:...` for truncated ones.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let label = if self.digits.is_empty() { "*" } else { &self.digits };
        let _ = match self.kind {
            NodeKind::Internal => writeln!(out, "{:indent$}{label}", "", indent = 2 * depth),
            NodeKind::Leaf { class } => {
                writeln!(out, "{:indent$}{label}:{class}", "", indent = 2 * depth)
            }
            NodeKind::Truncated => writeln!(out, "{:indent$}{label}:...", "", indent = 2 * depth),
        };
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }
}
