//! Strong components and the condensation.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Vertex};

/// Strong components of a digraph together with its condensation.
///
/// Components are numbered by their smallest vertex id, so component 0 always
/// contains vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condensation {
    pub component_of: Vec<usize>,
    /// Sorted vertex lists, one per component.
    pub components: Vec<Vec<Vertex>>,
    /// Acyclic digraph on component ids with an arc for every cross arc.
    pub dag: Digraph,
    /// Components with no incoming dag arc.
    pub initial: Vec<usize>,
    /// Components with no outgoing dag arc.
    pub terminal: Vec<usize>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// The unique initial component, if there is exactly one.
    pub fn unique_initial(&self) -> Option<&[Vertex]> {
        match self.initial.as_slice() {
            [c] => Some(&self.components[*c]),
            _ => None,
        }
    }

    pub fn same_component(&self, u: Vertex, v: Vertex) -> bool {
        self.component_of[u] == self.component_of[v]
    }

    /// `reach[c]` lists the components reachable from `c` in the dag,
    /// excluding `c` itself.
    pub fn dag_reachability(&self) -> Vec<Vec<bool>> {
        let m = self.len();
        let mut reach = alloc::vec![alloc::vec![false; m]; m];
        // Component ids are not topologically sorted, so search from each one.
        for (c, row) in reach.iter_mut().enumerate() {
            let mut stack: Vec<usize> = self.dag.out_neighbors(c).to_vec();
            while let Some(x) = stack.pop() {
                if !row[x] {
                    row[x] = true;
                    stack.extend_from_slice(self.dag.out_neighbors(x));
                }
            }
        }
        reach
    }
}

/// Computes the strong components with an iterative Tarjan search.
pub fn strong_components(d: &Digraph) -> Condensation {
    let n = d.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = alloc::vec![UNSEEN; n];
    let mut low = alloc::vec![0usize; n];
    let mut on_stack = alloc::vec![false; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut raw_of = alloc::vec![UNSEEN; n];
    let mut raw_count = 0usize;
    let mut next_index = 0usize;
    // (vertex, position in its out-neighbor list)
    let mut call: Vec<(Vertex, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let nbrs = d.out_neighbors(v);
            if *pos < nbrs.len() {
                let w = nbrs[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    raw_of[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }

    // Renumber by smallest member: scanning vertices in order meets each
    // component first at its minimum.
    let mut renumber = alloc::vec![UNSEEN; raw_count];
    let mut components: Vec<Vec<Vertex>> = Vec::with_capacity(raw_count);
    let mut component_of = alloc::vec![0usize; n];
    for v in 0..n {
        let raw = raw_of[v];
        if renumber[raw] == UNSEEN {
            renumber[raw] = components.len();
            components.push(Vec::new());
        }
        component_of[v] = renumber[raw];
        components[renumber[raw]].push(v);
    }

    let mut dag = Digraph::empty(components.len());
    for (u, v) in d.arcs() {
        let (cu, cv) = (component_of[u], component_of[v]);
        if cu != cv {
            dag.insert_arc(cu, cv);
        }
    }
    let in_deg = dag.in_degrees();
    let initial = (0..dag.n()).filter(|&c| in_deg[c] == 0).collect();
    let terminal = (0..dag.n()).filter(|&c| dag.out_degree(c) == 0).collect();

    Condensation { component_of, components, dag, initial, terminal }
}
