//! Classification of the named concepts of a terminology.

use std::fmt::Write as _;

use serde::Serialize;

use crate::concept::{Concept, ConceptSymbol};
use crate::tableau::Reasoner;
use crate::terminology::Terminology;

/// An equivalence class of named concepts. The top node also holds every
/// symbol equivalent to `top`, the bottom node every unsatisfiable symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyNode {
    pub name: String,
    pub members: Vec<String>,
}

/// Direct-subsumption DAG over equivalence classes, `top` first, `bottom` last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptHierarchy {
    pub nodes: Vec<HierarchyNode>,
    /// `(child, parent)` node indices, transitively reduced.
    pub edges: Vec<(usize, usize)>,
}

impl ConceptHierarchy {
    pub const TOP: usize = 0;

    pub fn bottom(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node_of(&self, symbol: &str) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.name == symbol || n.members.iter().any(|m| m == symbol))
    }

    pub fn parents(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == node).map(|e| e.1).collect()
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.1 == node).map(|e| e.0).collect()
    }

    pub fn has_edge(&self, child: &str, parent: &str) -> bool {
        match (self.node_of(child), self.node_of(parent)) {
            (Some(c), Some(p)) => self.edges.contains(&(c, p)),
            _ => false,
        }
    }

    /// One `child < parent` line per edge, then `a = b` lines for classes
    /// with more than one member.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for &(c, p) in &self.edges {
            let _ = writeln!(out, "{} < {}", self.nodes[c].name, self.nodes[p].name);
        }
        for node in &self.nodes {
            for m in &node.members {
                if *m != node.name {
                    let _ = writeln!(out, "{} = {}", m, node.name);
                }
            }
        }
        out
    }
}

/// Computes the classification of every named symbol by pairwise subsumption
/// tests and returns its transitive reduction.
pub fn classify(t: &Terminology) -> ConceptHierarchy {
    let reasoner = Reasoner::new(t);
    let symbols: Vec<&ConceptSymbol> = t.topological_order().iter().collect();
    let concept = |s: &ConceptSymbol| Concept::Atom(s.clone());
    let check = |r: Result<bool, _>| r.expect("signature symbols are declared");

    let mut top_members = Vec::new();
    let mut bottom_members = Vec::new();
    let mut live: Vec<&ConceptSymbol> = Vec::new();
    for &s in &symbols {
        if !check(reasoner.is_satisfiable(&concept(s))) {
            bottom_members.push(s.to_string());
        } else if check(reasoner.subsumes(&concept(s), &Concept::Top)) {
            top_members.push(s.to_string());
        } else {
            live.push(s);
        }
    }

    let n = live.len();
    // below[i][j]: live[i] ⪯ live[j]
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            below[i][j] = i == j || check(reasoner.subsumes(&concept(live[j]), &concept(live[i])));
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| below[i][j] && below[j][i]).collect();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }

    let k = classes.len();
    let rep = |c: usize| classes[c][0];
    let strictly_below = |a: usize, b: usize| a != b && below[rep(a)][rep(b)];

    let mut nodes = vec![HierarchyNode {
        name: "top".into(),
        members: top_members,
    }];
    for class in &classes {
        let members: Vec<String> = class.iter().map(|&i| live[i].to_string()).collect();
        nodes.push(HierarchyNode {
            name: members[0].clone(),
            members,
        });
    }
    nodes.push(HierarchyNode {
        name: "bottom".into(),
        members: bottom_members,
    });
    let bottom = k + 1;

    let mut edges = Vec::new();
    for a in 0..k {
        let mut parents: Vec<usize> = (0..k)
            .filter(|&b| strictly_below(a, b))
            .filter(|&b| !(0..k).any(|z| strictly_below(a, z) && strictly_below(z, b)))
            .map(|b| b + 1)
            .collect();
        if parents.is_empty() {
            parents.push(ConceptHierarchy::TOP);
        }
        edges.extend(parents.into_iter().map(|p| (a + 1, p)));
    }
    for a in 0..k {
        if !(0..k).any(|z| strictly_below(z, a)) {
            edges.push((bottom, a + 1));
        }
    }
    if k == 0 {
        edges.push((bottom, ConceptHierarchy::TOP));
    }
    ConceptHierarchy { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terminology::Axiom;

    fn sym(s: &str) -> Concept {
        Concept::atom(s)
    }

    #[test]
    fn empty_terminology() {
        let h = classify(&Terminology::empty());
        assert_eq!(h.nodes.len(), 2);
        assert_eq!(h.edges, vec![(1, 0)]);
        assert_eq!(h.render(), "bottom < top\n");
    }

    #[test]
    fn equivalent_and_unsatisfiable_symbols_grouped() {
        let t = Terminology::validate(
            &["A".into()],
            &[],
            vec![
                Axiom::definition("B", sym("A")),
                Axiom::definition("N", Concept::and(sym("A"), Concept::not(sym("A")))),
                Axiom::definition("T", Concept::or(sym("A"), Concept::not(sym("A")))),
            ],
        )
        .unwrap();
        let h = classify(&t);
        assert_eq!(h.nodes[0].members, vec!["T".to_string()]);
        assert_eq!(h.nodes[h.bottom()].members, vec!["N".to_string()]);
        let a = h.node_of("A").unwrap();
        assert_eq!(h.node_of("B"), Some(a));
        assert!(h.render().contains("B = A"));
        assert_eq!(h.edges, vec![(a, 0), (h.bottom(), a)]);
    }
}
