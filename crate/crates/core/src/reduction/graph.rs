use super::formula::ArithFormula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    One,
    /// 1-based variable index.
    Var(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

/// Vertex numbering used by [`formula_to_graph_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VertexOrder {
    /// `s = 0`, `t = 1`, then gadget vertices in construction order.
    #[default]
    Construction,
    /// `s = 0`, gadget vertices in construction order, `t` last. This is
    /// the numbering of the worked example's printed matrix.
    TargetLast,
}

/// Edge-weighted digraph built from a formula's series-parallel gadgets,
/// closed by an edge `t → s` and weight-1 self-loops on every vertex but `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    vertices: usize,
    s: usize,
    t: usize,
    num_vars: usize,
    edges: Vec<Edge>,
}

impl WeightedDigraph {
    /// A graph given directly by its edges; `num_vars` is the largest
    /// variable index any weight may use.
    pub fn from_edges(vertices: usize, s: usize, t: usize, num_vars: usize, edges: Vec<Edge>) -> Self {
        Self {
            vertices,
            s,
            t,
            num_vars,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn source(&self) -> usize {
        self.s
    }

    pub fn sink(&self) -> usize {
        self.t
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, from: usize, to: usize, weight: Weight) -> bool {
        self.edges.contains(&Edge { from, to, weight })
    }

    /// Edges sorted, for multiset comparison.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut e = self.edges.clone();
        e.sort();
        e
    }
}

struct Builder {
    vertices: usize,
    edges: Vec<Edge>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn edge(&mut self, from: usize, to: usize, weight: Option<Weight>) {
        if let Some(weight) = weight {
            self.edges.push(Edge { from, to, weight });
        }
    }

    /// Adds the gadget for `f` starting at `s`; ends at `t` if given,
    /// otherwise at a fresh vertex. Returns the end vertex.
    fn build(&mut self, f: &ArithFormula, s: usize, t: Option<usize>) -> usize {
        match f {
            ArithFormula::Const(c) => {
                let v = self.vertex();
                let t = t.unwrap_or_else(|| self.vertex());
                self.edge(s, v, c.then_some(Weight::One));
                self.edge(v, t, Some(Weight::One));
                t
            }
            ArithFormula::Var(i) => {
                let v = self.vertex();
                let t = t.unwrap_or_else(|| self.vertex());
                self.edge(s, v, Some(Weight::Var(*i)));
                self.edge(v, t, Some(Weight::One));
                t
            }
            ArithFormula::Product(a, b) => {
                let mid = self.build(a, s, None);
                self.build(b, mid, t)
            }
            ArithFormula::Sum(a, b) => {
                let t = self.build(a, s, t);
                self.build(b, s, Some(t))
            }
        }
    }
}

pub fn formula_to_graph(f: &ArithFormula) -> WeightedDigraph {
    formula_to_graph_with(f, VertexOrder::Construction)
}

pub fn formula_to_graph_with(f: &ArithFormula, order: VertexOrder) -> WeightedDigraph {
    let mut b = Builder {
        vertices: 2,
        edges: Vec::new(),
    };
    let (s, t) = (0, 1);
    b.build(f, s, Some(t));
    b.edge(t, s, Some(Weight::One));
    for v in 1..b.vertices {
        b.edge(v, v, Some(Weight::One));
    }
    let mut g = WeightedDigraph {
        vertices: b.vertices,
        s,
        t,
        num_vars: f.num_vars(),
        edges: b.edges,
    };
    if order == VertexOrder::TargetLast {
        let last = g.vertices - 1;
        let relabel = |v: usize| match v {
            1 => last,
            v if v > 1 => v - 1,
            v => v,
        };
        for e in &mut g.edges {
            e.from = relabel(e.from);
            e.to = relabel(e.to);
        }
        g.t = last;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_one_gadget() {
        let g = formula_to_graph(&ArithFormula::Const(true));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 5);
        assert!(g.has_edge(0, 2, Weight::One));
        assert!(g.has_edge(2, 1, Weight::One));
        assert!(g.has_edge(1, 0, Weight::One));
        assert!(!g.has_edge(0, 0, Weight::One));
    }

    #[test]
    fn constant_zero_gadget_drops_the_zero_edge() {
        let g = formula_to_graph(&ArithFormula::Const(false));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 4);
    }

    #[test]
    fn parallel_copies_share_endpoints() {
        let f = ArithFormula::sum(ArithFormula::Var(1), ArithFormula::Var(1));
        let g = formula_to_graph(&f);
        assert_eq!(g.vertex_count(), 4);
        assert!(g.has_edge(0, 2, Weight::Var(1)));
        assert!(g.has_edge(0, 3, Weight::Var(1)));
    }
}
