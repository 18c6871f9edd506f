use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("bad vertex label {0:?}")]
    BadLabel(String),
    #[error("expected {expected} labels or colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("color 0 is not allowed (colors start at 1)")]
    ColorZero,
    #[error("edge {0}-{1} joins two vertices of the same color")]
    ImproperColoring(usize, usize),
}

/// A simple undirected graph on vertices `0..n`, optionally colored.
///
/// Edges are stored as `(s, t)` with `s < t`, sorted and without repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    coloring: Option<Vec<usize>>,
}

impl Graph {
    /// An edgeless graph with labels `v1 .. vn`.
    pub fn new(n: usize) -> Graph {
        Graph {
            labels: (1..=n).map(|i| format!("v{i}")).collect(),
            edges: Vec::new(),
            coloring: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Graph, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::WrongLength {
                expected: self.n(),
                got: labels.len(),
            });
        }
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            let bad = l.is_empty()
                || l.chars()
                    .any(|c| c.is_whitespace() || matches!(c, '#' | '|' | '='))
                || labels[..i].contains(l);
            if bad {
                return Err(GraphError::BadLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = (u.min(v), u.max(v));
        if let Err(pos) = self.edges.binary_search(&e) {
            self.edges.insert(pos, e);
        }
        if let Some(c) = &self.coloring {
            if c[u] == c[v] {
                self.edges.retain(|&x| x != e);
                return Err(GraphError::ImproperColoring(e.0, e.1));
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Colors are `1..=κ`; adjacent vertices must differ.
    pub fn set_coloring(&mut self, colors: Vec<usize>) -> Result<(), GraphError> {
        if colors.len() != self.n() {
            return Err(GraphError::WrongLength {
                expected: self.n(),
                got: colors.len(),
            });
        }
        if colors.contains(&0) {
            return Err(GraphError::ColorZero);
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| colors[u] == colors[v]) {
            return Err(GraphError::ImproperColoring(u, v));
        }
        self.coloring = Some(colors);
        Ok(())
    }

    pub fn clear_coloring(&mut self) {
        self.coloring = None;
    }

    pub fn coloring(&self) -> Option<&[usize]> {
        self.coloring.as_deref()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}
