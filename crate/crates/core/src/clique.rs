//! Exact maximum-clique search, used as the brute-force side of the
//! `AK(n, k, t)` crosscheck and as the engine of the conjecture searches
//! (pairwise-compatible pair systems are exactly cliques in the
//! compatibility graph).
//!
//! Branch and bound with a greedy-coloring bound. Vertices are explored in a
//! fixed order and the incumbent is replaced only on strict improvement, so
//! the returned clique is deterministic.

pub(crate) struct CliqueResult {
    pub best: Vec<usize>,
    /// False when the node budget ran out; `best` is then only a lower bound.
    pub complete: bool,
}

pub(crate) fn max_clique(
    n: usize,
    adjacent: impl Fn(usize, usize) -> bool,
    max_nodes: Option<u64>,
) -> CliqueResult {
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && adjacent(i, j)).collect())
        .collect();
    let mut solver = Solver { adj, best: Vec::new(), nodes: 0, max_nodes, truncated: false };
    let all: Vec<usize> = (0..n).collect();
    let mut current = Vec::new();
    solver.expand(&mut current, &all);
    CliqueResult { best: solver.best, complete: !solver.truncated }
}

struct Solver {
    adj: Vec<Vec<bool>>,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: Option<u64>,
    truncated: bool,
}

impl Solver {
    fn expand(&mut self, current: &mut Vec<usize>, candidates: &[usize]) {
        self.nodes += 1;
        if let Some(max) = self.max_nodes {
            if self.nodes > max {
                self.truncated = true;
                return;
            }
        }
        if candidates.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        let (ordered, colors) = self.color_sort(candidates);
        for idx in (0..ordered.len()).rev() {
            if current.len() + colors[idx] <= self.best.len() {
                return; // earlier candidates have colors at most this one
            }
            let v = ordered[idx];
            let next: Vec<usize> = ordered[..idx].iter().copied().filter(|&w| self.adj[v][w]).collect();
            current.push(v);
            self.expand(current, &next);
            current.pop();
            if self.truncated {
                return;
            }
        }
    }

    /// Greedy coloring in vertex order; returns candidates grouped by color
    /// class with each vertex's color number (an upper bound on any clique
    /// inside the prefix up to it).
    fn color_sort(&self, candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in candidates {
            match classes
                .iter_mut()
                .find(|class| class.iter().all(|&w| !self.adj[v][w]))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut ordered = Vec::with_capacity(candidates.len());
        let mut colors = Vec::with_capacity(candidates.len());
        for (c, class) in classes.iter().enumerate() {
            for &v in class {
                ordered.push(v);
                colors.push(c + 1);
            }
        }
        (ordered, colors)
    }
}
