use std::collections::HashMap;
use std::fmt;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::Direction;

use super::chain::{verified, AssemblyChain, Parent};
use super::AssemblySpace;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagVertex<O> {
    pub object: O,
    pub code: String,
    pub building_block: bool,
}

impl<O> fmt::Display for DagVertex<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

/// Pathway DAG of a chain: building blocks and chain objects as vertices, one
/// edge from each input to the object glued from it. A step gluing an object
/// with itself contributes two parallel edges, so every glued vertex has
/// indegree exactly two.
#[derive(Debug, Clone)]
pub struct PathwayDag<O> {
    pub graph: DiGraph<DagVertex<O>, ()>,
}

impl<O> PathwayDag<O> {
    pub fn sources(&self) -> Vec<NodeIndex> {
        self.graph.externals(Direction::Incoming).collect()
    }

    pub fn sinks(&self) -> Vec<NodeIndex> {
        self.graph.externals(Direction::Outgoing).collect()
    }

    /// Number of vertices with positive indegree.
    pub fn e_plus(&self) -> usize {
        self.graph.node_count() - self.sources().len()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph pathway {\n");
        for v in self.graph.node_indices() {
            let vertex = &self.graph[v];
            let shape = if vertex.building_block { "box" } else { "ellipse" };
            out.push_str(&format!(
                "    {} [label=\"{}\", shape={shape}];\n",
                v.index(),
                vertex.code.replace('"', "\\\"")
            ));
        }
        for e in self.graph.edge_indices() {
            let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
            out.push_str(&format!("    {} -> {};\n", a.index(), b.index()));
        }
        out.push_str("}\n");
        out
    }

    /// Checks the structural invariants of a pathway DAG; returns the first
    /// violation.
    pub fn check(&self, target_size: usize) -> std::result::Result<(), String> {
        if is_cyclic_directed(&self.graph) {
            return Err("graph has a cycle".into());
        }
        let sources = self.sources();
        if sources.len() > target_size {
            return Err(format!("{} sources exceed target size {target_size}", sources.len()));
        }
        if let Some(&v) = sources.iter().find(|&&v| !self.graph[v].building_block) {
            return Err(format!("source {} is not a building block", self.graph[v].code));
        }
        for v in self.graph.node_indices() {
            let indegree = self.graph.edges_directed(v, Direction::Incoming).count();
            if indegree != 0 && indegree != 2 {
                return Err(format!("vertex {} has indegree {indegree}", self.graph[v].code));
            }
        }
        let sinks = self.sinks();
        if sinks.len() != 1 {
            return Err(format!("expected one sink, found {}", sinks.len()));
        }
        Ok(())
    }
}

/// Builds the pathway DAG of a valid chain. Building blocks are merged by code.
pub fn to_dag<S: AssemblySpace>(
    space: &S,
    chain: &AssemblyChain<S::Object>,
) -> Result<PathwayDag<S::Object>> {
    verified(space, chain)?;
    let mut graph = DiGraph::new();
    let mut blocks: HashMap<String, NodeIndex> = HashMap::new();
    let mut steps = Vec::with_capacity(chain.len());
    for step in &chain.steps {
        let mut inputs = [NodeIndex::end(); 2];
        for (slot, parent) in [&step.left, &step.right].into_iter().enumerate() {
            inputs[slot] = match parent {
                Parent::Step(j) => steps[*j],
                Parent::Block(b) => {
                    let code = space.code(b);
                    *blocks.entry(code.clone()).or_insert_with(|| {
                        graph.add_node(DagVertex {
                            object: b.clone(),
                            code,
                            building_block: true,
                        })
                    })
                }
            };
        }
        let v = graph.add_node(DagVertex {
            object: step.object.clone(),
            code: space.code(&step.object),
            building_block: false,
        });
        graph.add_edge(inputs[0], v, ());
        graph.add_edge(inputs[1], v, ());
        steps.push(v);
    }
    Ok(PathwayDag { graph })
}

pub fn e_plus<O>(dag: &PathwayDag<O>) -> usize {
    dag.e_plus()
}
