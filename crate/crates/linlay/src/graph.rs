//! Graphs over GF(2): cut-rank, the associated arrangement of 2-dimensional
//! subspaces (one per vertex, spanned by the unit vector and the neighborhood
//! indicator), linear rank-width via the arrangement solver, and linear
//! clique-width expressions with an evaluator.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::fullset::DpOptions;
use crate::linalg::{rank, FieldSpec, Mat};
use crate::solver::{decide_pathwidth, Decision};
use std::fmt;

/// A simple undirected graph with vertices 0..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, adj: vec![vec![false; n]; n] }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adjacency matrix over GF(2).
    pub fn adjacency_matrix(&self) -> Mat {
        let f = FieldSpec::new(2);
        let rows: Vec<Vec<u8>> = (0..self.n)
            .map(|u| (0..self.n).map(|v| u8::from(self.adj[u][v])).collect())
            .collect();
        if self.n == 0 {
            Mat::zero(f, 0, 0)
        } else {
            Mat::from_rows(f, &rows)
        }
    }

    /// GF(2) rank of the adjacency submatrix between `s` and its complement.
    pub fn cutrank(&self, s: &[usize]) -> usize {
        let mut in_s = vec![false; self.n];
        for &v in s {
            assert!(v < self.n, "vertex {v} out of range");
            in_s[v] = true;
        }
        let comp: Vec<usize> = (0..self.n).filter(|&v| !in_s[v]).collect();
        let a = self.adjacency_matrix();
        rank(&a.submatrix(s, &comp))
    }

    /// Max cut-rank over the proper prefixes of a vertex order.
    pub fn order_width(&self, order: &[usize]) -> usize {
        assert_eq!(order.len(), self.n);
        if self.n <= 1 {
            return 0;
        }
        (1..self.n).map(|i| self.cutrank(&order[..i])).max().unwrap_or(0)
    }

    /// Parses the text format: line 1 `n m`, then m lines `u v` with
    /// 1-indexed endpoints. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut tok = crate::arrangement::parse_tokens(text);
        let n = tok.next_int("vertex count n")?;
        let m = tok.next_int("edge count m")?;
        let mut g = Graph::new(n);
        for _ in 0..m {
            let u = tok.next_int("edge endpoint")?;
            let v = tok.next_int("edge endpoint")?;
            if u == 0 || u > n || v == 0 || v > n {
                return Err(Error::Parse {
                    line: tok.line,
                    message: format!("vertex {} out of range 1..{n}", u.max(v)),
                });
            }
            if u == v {
                return Err(Error::Parse { line: tok.line, message: "self-loop".into() });
            }
            if g.has_edge(u - 1, v - 1) {
                return Err(Error::Parse {
                    line: tok.line,
                    message: format!("duplicate edge {u} {v}"),
                });
            }
            g.add_edge(u - 1, v - 1);
        }
        if let Some(line) = tok.trailing() {
            return Err(Error::Parse { line, message: "trailing tokens after edges".into() });
        }
        Ok(g)
    }
}

/// The arrangement associated with a graph: part i spans e_i and the
/// neighborhood indicator of vertex i in GF(2)^n. Every part-subset
/// connectivity is exactly twice the cut-rank of the same vertex set.
pub fn graph_arrangement(g: &Graph) -> Arrangement {
    let f = FieldSpec::new(2);
    let n = g.n_vertices();
    let mut rows = vec![vec![0u8; 2 * n]; n];
    for i in 0..n {
        rows[i][2 * i] = 1; // e_i
        for j in 0..n {
            if g.has_edge(i, j) {
                rows[j][2 * i + 1] = 1; // neighborhood indicator v_i
            }
        }
    }
    let m = if n == 0 { Mat::zero(f, 0, 0) } else { Mat::from_rows(f, &rows) };
    Arrangement::new(m, (0..n).map(|i| vec![2 * i, 2 * i + 1]).collect()).unwrap()
}

/// Decides whether the linear rank-width is at most k; on success returns a
/// vertex order whose prefix cut-ranks are re-verified to be at most k.
pub fn linear_rankwidth(g: &Graph, k: usize, opts: &DpOptions) -> Option<Vec<usize>> {
    let n = g.n_vertices();
    if n <= 1 {
        return Some((0..n).collect());
    }
    let a = graph_arrangement(g);
    match decide_pathwidth(&a, 2 * k, opts) {
        Decision::Layout(order) => {
            assert!(g.order_width(&order) <= k, "solver order exceeds the cut-rank bound");
            Some(order)
        }
        Decision::No(_) => None,
    }
}

/// Exact linear rank-width with a witness order of exactly that width.
pub fn exact_linear_rankwidth(g: &Graph, opts: &DpOptions) -> (usize, Vec<usize>) {
    for k in 0.. {
        if let Some(order) = linear_rankwidth(g, k, opts) {
            return (g.order_width(&order), order);
        }
    }
    unreachable!()
}

/// A clique-width expression over labeled graphs: single labeled vertices,
/// disjoint union, adding all edges between two labels, and relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueExpression {
    Vertex(usize),
    Union(Box<CliqueExpression>, Box<CliqueExpression>),
    AddEdges(usize, usize, Box<CliqueExpression>),
    Relabel(usize, usize, Box<CliqueExpression>),
}

impl CliqueExpression {
    pub fn vertex_count(&self) -> usize {
        match self {
            CliqueExpression::Vertex(_) => 1,
            CliqueExpression::Union(a, b) => a.vertex_count() + b.vertex_count(),
            CliqueExpression::AddEdges(_, _, a) | CliqueExpression::Relabel(_, _, a) => {
                a.vertex_count()
            }
        }
    }

    /// Highest label mentioned anywhere.
    pub fn label_count(&self) -> usize {
        match self {
            CliqueExpression::Vertex(l) => *l,
            CliqueExpression::Union(a, b) => a.label_count().max(b.label_count()),
            CliqueExpression::AddEdges(i, j, a) => a.label_count().max(*i).max(*j),
            CliqueExpression::Relabel(i, j, a) => a.label_count().max(*i).max(*j),
        }
    }

    /// Linear: one operand of every union has at most one vertex.
    pub fn is_linear(&self) -> bool {
        match self {
            CliqueExpression::Vertex(_) => true,
            CliqueExpression::Union(a, b) => {
                (a.vertex_count() <= 1 || b.vertex_count() <= 1) && a.is_linear() && b.is_linear()
            }
            CliqueExpression::AddEdges(_, _, a) | CliqueExpression::Relabel(_, _, a) => {
                a.is_linear()
            }
        }
    }

    /// Parses the Display syntax: `v<label>`, `u(A,B)`, `e(i,j,A)`,
    /// `r(i,j,A)` (relabel i to j).
    pub fn parse(text: &str) -> Result<CliqueExpression> {
        let mut p = ExprParser { text: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.text.len() {
            return Err(Error::Parse { line: 1, message: format!("trailing input at byte {}", p.pos) });
        }
        Ok(e)
    }
}

impl fmt::Display for CliqueExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliqueExpression::Vertex(l) => write!(f, "v{l}"),
            CliqueExpression::Union(a, b) => write!(f, "u({a},{b})"),
            CliqueExpression::AddEdges(i, j, a) => write!(f, "e({i},{j},{a})"),
            CliqueExpression::Relabel(i, j, a) => write!(f, "r({i},{j},{a})"),
        }
    }
}

struct ExprParser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse { line: 1, message: format!("expected a number at byte {start}") });
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { line: 1, message: "bad number".into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                line: 1,
                message: format!("expected '{}' at byte {}", c as char, self.pos),
            })
        }
    }

    fn expr(&mut self) -> Result<CliqueExpression> {
        self.skip_ws();
        let Some(&c) = self.text.get(self.pos) else {
            return Err(Error::Parse { line: 1, message: "unexpected end of expression".into() });
        };
        self.pos += 1;
        match c {
            b'v' => Ok(CliqueExpression::Vertex(self.number()?)),
            b'u' => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(CliqueExpression::Union(Box::new(a), Box::new(b)))
            }
            b'e' | b'r' => {
                self.expect(b'(')?;
                let i = self.number()?;
                self.expect(b',')?;
                let j = self.number()?;
                self.expect(b',')?;
                let a = self.expr()?;
                self.expect(b')')?;
                if c == b'e' {
                    if i == j {
                        return Err(Error::Parse { line: 1, message: "e(i,i,_) is not allowed".into() });
                    }
                    Ok(CliqueExpression::AddEdges(i, j, Box::new(a)))
                } else {
                    Ok(CliqueExpression::Relabel(i, j, Box::new(a)))
                }
            }
            other => Err(Error::Parse {
                line: 1,
                message: format!("unexpected '{}' at byte {}", other as char, self.pos - 1),
            }),
        }
    }
}

/// Evaluates an expression to a graph. Vertices are numbered in leaf order
/// (left to right), which for expressions from [`clique_expression`] is the
/// placement order of the input vertices.
pub fn eval_expression(e: &CliqueExpression) -> Graph {
    fn go(e: &CliqueExpression, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        // returns (vertex, label) pairs
        match e {
            CliqueExpression::Vertex(l) => {
                let v = *next;
                *next += 1;
                vec![(v, *l)]
            }
            CliqueExpression::Union(a, b) => {
                let mut va = go(a, next, edges);
                va.extend(go(b, next, edges));
                va
            }
            CliqueExpression::AddEdges(i, j, a) => {
                let vs = go(a, next, edges);
                for &(u, lu) in &vs {
                    for &(w, lw) in &vs {
                        if u < w && ((lu == *i && lw == *j) || (lu == *j && lw == *i)) {
                            edges.push((u, w));
                        }
                    }
                }
                vs
            }
            CliqueExpression::Relabel(i, j, a) => {
                let mut vs = go(a, next, edges);
                for (_, l) in vs.iter_mut() {
                    if l == i {
                        *l = *j;
                    }
                }
                vs
            }
        }
    }
    let mut next = 0;
    let mut edges = Vec::new();
    go(e, &mut next, &mut edges);
    let mut g = Graph::new(next);
    for (u, v) in edges {
        if !g.has_edge(u, v) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Builds a linear clique-width expression from a vertex order of prefix
/// cut-rank at most k, using at most 2^k + 1 labels.
///
/// After placing a prefix P, the labels in use are the classes of P under
/// "same neighborhood into the rest" (at most 2^k of them, since class rows
/// lie in the row space of the cut matrix); the incoming vertex takes a fresh
/// label, edges to its adjacent classes are emitted, and classes that merge
/// under the shrunken rest are relabeled to their smallest member label.
pub fn clique_expression(g: &Graph, order: &[usize], k: usize) -> Result<CliqueExpression> {
    let n = g.n_vertices();
    assert_eq!(order.len(), n);
    if n == 0 {
        return Err(Error::InvalidInput("empty graph has no expression".into()));
    }
    if g.order_width(order) > k {
        return Err(Error::InvalidInput(format!(
            "order has prefix cut-rank {} > {k}",
            g.order_width(order)
        )));
    }
    let max_labels = (1usize << k) + 1;

    // label of each placed vertex
    let mut label: Vec<usize> = vec![0; n];
    let mut expr = CliqueExpression::Vertex(1);
    label[order[0]] = 1;
    let mut placed = vec![order[0]];

    for t in 1..n {
        let v = order[t];
        let used: std::collections::BTreeSet<usize> =
            placed.iter().map(|&u| label[u]).collect();
        let fresh = (1..).find(|l| !used.contains(l)).unwrap();
        assert!(used.len() + 1 <= max_labels, "label budget exceeded");
        expr = CliqueExpression::Union(Box::new(expr), Box::new(CliqueExpression::Vertex(fresh)));
        label[v] = fresh;
        // every member of a class has the same adjacency to v
        let adjacent_classes: std::collections::BTreeSet<usize> =
            placed.iter().filter(|&&u| g.has_edge(u, v)).map(|&u| label[u]).collect();
        for &c in &adjacent_classes {
            expr = CliqueExpression::AddEdges(c, fresh, Box::new(expr));
        }
        placed.push(v);

        // regroup by neighborhood into the new rest; classes only merge
        let rest: Vec<usize> = order[t + 1..].to_vec();
        let mut groups: std::collections::BTreeMap<Vec<bool>, Vec<usize>> =
            std::collections::BTreeMap::new();
        for &u in &placed {
            let key: Vec<bool> = rest.iter().map(|&w| g.has_edge(u, w)).collect();
            groups.entry(key).or_default().push(u);
        }
        for members in groups.values() {
            let mut labels: Vec<usize> = members.iter().map(|&u| label[u]).collect();
            labels.sort_unstable();
            labels.dedup();
            let target = labels[0];
            for &l in &labels[1..] {
                expr = CliqueExpression::Relabel(l, target, Box::new(expr));
            }
            for &u in members {
                label[u] = target;
            }
        }
    }
    debug_assert!(expr.is_linear());
    debug_assert!(expr.label_count() <= max_labels);
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{complete_graph, cycle_graph, path_graph, random_graph};
    use itertools::Itertools;

    fn opts() -> DpOptions {
        DpOptions::default()
    }

    /// Exact linear rank-width by trying all vertex orders.
    fn lrw_bruteforce(g: &Graph) -> usize {
        let n = g.n_vertices();
        if n <= 1 {
            return 0;
        }
        (0..n).permutations(n).map(|order| g.order_width(&order)).min().unwrap()
    }

    #[test]
    fn cutrank_examples() {
        let g = complete_graph(3);
        assert_eq!(g.cutrank(&[]), 0);
        assert_eq!(g.cutrank(&[0]), 1);
        let c4 = cycle_graph(4);
        // opposite pair {0, 2}: the 2x2 cross submatrix is all ones
        assert_eq!(c4.cutrank(&[0, 2]), 1);
        assert_eq!(c4.cutrank(&[0, 1]), 2);
    }

    #[test]
    fn cutrank_is_symmetric() {
        let g = random_graph(200, 6, 0.5);
        for mask in 0..64usize {
            let s: Vec<usize> = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
            let comp: Vec<usize> = (0..6).filter(|&i| mask >> i & 1 == 0).collect();
            assert_eq!(g.cutrank(&s), g.cutrank(&comp));
        }
    }

    #[test]
    fn arrangement_connectivity_is_twice_cutrank() {
        // edgeless graph: all parts are spanned by e_i alone
        let e = Graph::new(3);
        let a = graph_arrangement(&e);
        for mask in 0..8usize {
            let s: Vec<usize> = (0..3).filter(|&i| mask >> i & 1 == 1).collect();
            assert_eq!(a.connectivity(&s), 0);
        }
        // K_2
        let k2 = complete_graph(2);
        let a2 = graph_arrangement(&k2);
        assert_eq!(a2.connectivity(&[0]), 2);
        assert_eq!(2 * k2.cutrank(&[0]), 2);
        // random graphs, all subsets
        for seed in 0..8 {
            let g = random_graph(300 + seed, 6, 0.4);
            let a = graph_arrangement(&g);
            for mask in 0..64usize {
                let s: Vec<usize> = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(a.connectivity(&s), 2 * g.cutrank(&s), "seed {seed} mask {mask}");
            }
        }
    }

    #[test]
    fn linear_rankwidth_named_graphs() {
        assert!(linear_rankwidth(&Graph::new(4), 0, &opts()).is_some());
        for n in 2..=5 {
            let order = linear_rankwidth(&complete_graph(n), 1, &opts()).unwrap();
            assert!(complete_graph(n).order_width(&order) <= 1);
        }
        let c5 = cycle_graph(5);
        assert!(linear_rankwidth(&c5, 1, &opts()).is_none());
        let order = linear_rankwidth(&c5, 2, &opts()).unwrap();
        assert!(c5.order_width(&order) <= 2);
    }

    #[test]
    fn exact_lrw_named_graphs() {
        assert_eq!(exact_linear_rankwidth(&path_graph(4), &opts()).0, 1);
        assert_eq!(exact_linear_rankwidth(&cycle_graph(5), &opts()).0, 2);
        assert_eq!(exact_linear_rankwidth(&Graph::new(4), &opts()).0, 0);
        let (w, order) = exact_linear_rankwidth(&complete_graph(4), &opts());
        assert_eq!(w, 1);
        assert_eq!(complete_graph(4).order_width(&order), 1);
    }

    #[test]
    fn exact_lrw_matches_bruteforce() {
        for seed in 0..12 {
            let n = 3 + (seed as usize % 3);
            let g = random_graph(400 + seed, n, 0.5);
            let (w, order) = exact_linear_rankwidth(&g, &opts());
            assert_eq!(w, lrw_bruteforce(&g), "seed {seed}");
            assert_eq!(g.order_width(&order), w);
        }
    }

    #[test]
    fn eval_basic_expressions() {
        let single = CliqueExpression::Vertex(1);
        assert_eq!(eval_expression(&single), Graph::new(1));
        let k2 = CliqueExpression::AddEdges(
            1,
            2,
            Box::new(CliqueExpression::Union(
                Box::new(CliqueExpression::Vertex(1)),
                Box::new(CliqueExpression::Vertex(2)),
            )),
        );
        assert_eq!(eval_expression(&k2), complete_graph(2));
    }

    #[test]
    fn expression_roundtrip_through_display_and_parse() {
        let g = path_graph(4);
        let (w, order) = exact_linear_rankwidth(&g, &opts());
        let e = clique_expression(&g, &order, w).unwrap();
        let text = e.to_string();
        let back = CliqueExpression::parse(&text).unwrap();
        assert_eq!(back, e);
    }

    /// The evaluated graph, mapped back to original vertex ids via the order.
    fn eval_through_order(e: &CliqueExpression, order: &[usize]) -> Graph {
        let h = eval_expression(e);
        assert_eq!(h.n_vertices(), order.len());
        let mut g = Graph::new(order.len());
        for (a, b) in h.edges() {
            g.add_edge(order[a], order[b]);
        }
        g
    }

    #[test]
    fn clique_expression_reconstructs_named_graphs() {
        for g in [complete_graph(3), path_graph(4), cycle_graph(5), Graph::new(1)] {
            let (w, order) = exact_linear_rankwidth(&g, &opts());
            let e = clique_expression(&g, &order, w).unwrap();
            assert!(e.is_linear());
            assert!(e.label_count() <= (1 << w) + 1);
            assert_eq!(eval_through_order(&e, &order), g);
        }
    }

    #[test]
    fn clique_expression_reconstructs_random_graphs() {
        for seed in 0..10 {
            let n = 2 + (seed as usize % 5);
            let g = random_graph(500 + seed, n, 0.5);
            let (w, order) = exact_linear_rankwidth(&g, &opts());
            let e = clique_expression(&g, &order, w).unwrap();
            assert!(e.is_linear());
            assert!(e.label_count() <= (1 << w) + 1, "label budget exceeded");
            assert_eq!(eval_through_order(&e, &order), g, "seed {seed}");
        }
    }

    #[test]
    fn clique_expression_rejects_wide_orders() {
        let c5 = cycle_graph(5);
        let order: Vec<usize> = (0..5).collect();
        // identity order of C_5 has cut-rank 2 somewhere, k = 1 is too small
        assert!(clique_expression(&c5, &order, 1).is_err());
    }

    #[test]
    fn parse_graph_format() {
        let g = Graph::parse("# triangle\n3 3\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!(g, complete_graph(3));
        assert!(matches!(Graph::parse("2 1\n1 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("2 2\n1 2\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        // isolated vertices are fine
        let iso = Graph::parse("4 1\n2 4\n").unwrap();
        assert_eq!(iso.edges(), vec![(1, 3)]);
    }
}
