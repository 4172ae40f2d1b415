//! Command-line front end: parse instance files, run the solvers, and report
//! results in a human-readable or JSON form.
//!
//! Exit codes: 0 = YES / exact value computed, 1 = NO, 2 = input error,
//! 3 = internal verification failure.

use clap::{Args, Parser, Subcommand};
use linlay::arrangement::{bd_width, Arrangement, BranchDecomposition};
use linlay::error::Error;
use linlay::fullset::DpOptions;
use linlay::graph::{
    clique_expression, eval_expression, exact_linear_rankwidth, linear_rankwidth, CliqueExpression,
    Graph,
};
use linlay::matroid::{
    build_trellis, parse_generator, trellis_exact_width, trellis_width, viterbi_decode,
    RepresentedMatroid,
};
use linlay::oracle;
use linlay::solver::{decide_pathwidth, decide_pathwidth_with_bd, Decision, NoWitness};
use serde_json::json;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "linlay", version, about = "Linear layouts of subspace arrangements: path-width, trellis-width, linear rank-width")]
struct Cli {
    /// Accepted for harness uniformity; the pipeline is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide path-width of a subspace arrangement, or compute it exactly.
    Pathwidth(PathwidthArgs),
    /// Trellis-width of a linear block code given by a generator matrix.
    Trellis(TrellisArgs),
    /// Linear rank-width of a graph, optionally with a clique expression.
    Lrw(LrwArgs),
    /// Brute-force references for reproducing reported values.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct PathwidthArgs {
    /// Arrangement file: `q r m n`, column part ids, then the matrix.
    #[arg(long)]
    input: std::path::PathBuf,
    /// Width bound to decide.
    #[arg(long)]
    k: Option<usize>,
    /// Compute the exact path-width instead of deciding a bound.
    #[arg(long)]
    exact: bool,
    /// Branch-decomposition file: nested pairs over 1-based part ids,
    /// e.g. ((1,2),(3,4)). Runs a single DP pass over it.
    #[arg(long)]
    bd: Option<std::path::PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TrellisArgs {
    /// Generator file: `q k n`, then k rows of n entries.
    #[arg(long)]
    input: std::path::PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    exact: bool,
    /// Received word to decode on the optimal-permutation trellis, e.g.
    /// "1,1,0" or "110".
    #[arg(long)]
    decode: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LrwArgs {
    /// Graph file: `n m`, then m edges `u v` (1-indexed).
    #[arg(long)]
    input: std::path::PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    exact: bool,
    /// Also emit a linear clique-width expression for the found order.
    #[arg(long)]
    expr: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    which: OracleCommand,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Typical sequence of a sequence of nonnegative integers.
    Typical {
        /// Whitespace-separated integers, e.g. "1 3 2 5 2 2 4 4 3".
        #[arg(long)]
        seq: String,
    },
    /// Exact path-width by subset dynamic programming (n <= 20).
    Pathwidth {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Exact branch-width by subcubic-tree enumeration (n <= 7).
    Branchwidth {
        #[arg(long)]
        input: std::path::PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Inconsistent(_) => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn read_file(path: &std::path::Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn one_based(layout: &[usize]) -> Vec<usize> {
    layout.iter().map(|&p| p + 1).collect()
}

fn run(cli: Cli) -> Result<i32, Error> {
    let opts = DpOptions::default();
    match cli.command {
        Command::Pathwidth(args) => cmd_pathwidth(args, &opts),
        Command::Trellis(args) => cmd_trellis(args, &opts),
        Command::Lrw(args) => cmd_lrw(args, &opts),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

/// Parses a branch-decomposition as nested pairs over 1-based part ids.
/// The tree shape is kept; the root placement is normalized internally.
fn parse_bd(text: &str, n_parts: usize) -> Result<BranchDecomposition, Error> {
    #[derive(Debug)]
    enum Node {
        Leaf(usize),
        Pair(Box<Node>, Box<Node>),
    }
    struct P<'a> {
        b: &'a [u8],
        pos: usize,
    }
    impl P<'_> {
        fn ws(&mut self) {
            while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn node(&mut self) -> Result<Node, Error> {
            self.ws();
            match self.b.get(self.pos) {
                Some(b'(') => {
                    self.pos += 1;
                    let a = self.node()?;
                    self.ws();
                    if self.b.get(self.pos) != Some(&b',') {
                        return Err(Error::Parse { line: 1, message: "expected ','".into() });
                    }
                    self.pos += 1;
                    let b = self.node()?;
                    self.ws();
                    if self.b.get(self.pos) != Some(&b')') {
                        return Err(Error::Parse { line: 1, message: "expected ')'".into() });
                    }
                    self.pos += 1;
                    Ok(Node::Pair(Box::new(a), Box::new(b)))
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let id: usize = std::str::from_utf8(&self.b[start..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|_| Error::Parse { line: 1, message: "bad part id".into() })?;
                    Ok(Node::Leaf(id))
                }
                _ => Err(Error::Parse {
                    line: 1,
                    message: format!("unexpected input at byte {}", self.pos),
                }),
            }
        }
    }
    let content: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
    let mut p = P { b: content.as_bytes(), pos: 0 };
    let tree = p.node()?;
    p.ws();
    if p.pos != p.b.len() {
        return Err(Error::Parse { line: 1, message: "trailing input after tree".into() });
    }

    // flatten into an unrooted tree: parent-child edges, with the top pair
    // smoothed into a single edge
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut leaf_part: Vec<Option<usize>> = Vec::new();
    fn build(
        node: &Node,
        adjacency: &mut Vec<Vec<usize>>,
        leaf_part: &mut Vec<Option<usize>>,
        n_parts: usize,
    ) -> Result<usize, Error> {
        match node {
            Node::Leaf(id) => {
                if *id == 0 || *id > n_parts {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("part id {id} out of range 1..{n_parts}"),
                    });
                }
                adjacency.push(Vec::new());
                leaf_part.push(Some(id - 1));
                Ok(adjacency.len() - 1)
            }
            Node::Pair(a, b) => {
                let ia = build(a, adjacency, leaf_part, n_parts)?;
                let ib = build(b, adjacency, leaf_part, n_parts)?;
                adjacency.push(Vec::new());
                leaf_part.push(None);
                let id = adjacency.len() - 1;
                adjacency[id].push(ia);
                adjacency[id].push(ib);
                adjacency[ia].push(id);
                adjacency[ib].push(id);
                Ok(id)
            }
        }
    }
    let Node::Pair(a, b) = &tree else {
        return Err(Error::Parse {
            line: 1,
            message: "a branch decomposition needs at least two parts".into(),
        });
    };
    let ia = build(a, &mut adjacency, &mut leaf_part, n_parts)?;
    let ib = build(b, &mut adjacency, &mut leaf_part, n_parts)?;
    adjacency[ia].push(ib);
    adjacency[ib].push(ia);
    let mut seen = vec![false; n_parts];
    for p in leaf_part.iter().flatten() {
        if seen[*p] {
            return Err(Error::Parse { line: 1, message: format!("part {} appears twice", p + 1) });
        }
        seen[*p] = true;
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Parse { line: 1, message: "some part is missing from the tree".into() });
    }
    Ok(BranchDecomposition::from_unrooted(&adjacency, &leaf_part))
}

fn cmd_pathwidth(args: PathwidthArgs, opts: &DpOptions) -> Result<i32, Error> {
    if args.k.is_none() && !args.exact {
        return Err(Error::InvalidInput("pass --k K or --exact".into()));
    }
    let a = Arrangement::parse(&read_file(&args.input)?)?;
    let bd = match &args.bd {
        Some(path) => Some(parse_bd(&read_file(path)?, a.n_parts())?),
        None => None,
    };
    let start = Instant::now();
    let outcome: Result<(Option<usize>, Vec<usize>), NoWitness> = if args.exact {
        let (w, layout) = linlay::solver::exact_pathwidth(&a, bd.as_ref(), opts)?;
        Ok((Some(w), layout))
    } else {
        let k = args.k.unwrap();
        let decision = match &bd {
            Some(bd) => decide_pathwidth_with_bd(&a, bd, k, opts)?,
            None => decide_pathwidth(&a, k, opts),
        };
        match decision {
            Decision::Layout(l) => Ok((None, l)),
            Decision::No(w) => Err(w),
        }
    };
    let elapsed_ms = start.elapsed().as_millis();

    match outcome {
        Ok((exact_width, layout)) => {
            let width = a.layout_width(&layout);
            if let Some(w) = exact_width {
                if w != width {
                    return Err(Error::Inconsistent(format!(
                        "reported width {w} but layout re-verifies to {width}"
                    )));
                }
            } else if let Some(k) = args.k {
                if width > k {
                    return Err(Error::Inconsistent(format!(
                        "layout re-verifies to width {width} > k = {k}"
                    )));
                }
            }
            let cuts: Vec<usize> = (1..a.n_parts().max(1))
                .map(|i| a.connectivity(&layout[..i]))
                .collect();
            if args.json {
                println!(
                    "{}",
                    json!({
                        "answer": "YES",
                        "width": width,
                        "layout": one_based(&layout),
                        "cuts": cuts,
                        "elapsed_ms": elapsed_ms,
                    })
                );
            } else {
                println!("answer: YES");
                println!("width: {width}");
                println!("layout: {}", join_usize(&one_based(&layout)));
                println!("cuts: {}", join_usize(&cuts));
                println!("elapsed_ms: {elapsed_ms}");
            }
            Ok(0)
        }
        Err(witness) => {
            let reason = match witness {
                NoWitness::OverwideIntersection { part, bound } => format!(
                    "part {} meets the span of the rest in dimension > {bound}",
                    part + 1
                ),
                NoWitness::EmptyFullSet { parts_tried } => {
                    format!("no width-bounded layout exists for the first {parts_tried} parts")
                }
            };
            if args.json {
                println!(
                    "{}",
                    json!({
                        "answer": "NO",
                        "width": serde_json::Value::Null,
                        "layout": [],
                        "cuts": [],
                        "reason": reason,
                        "elapsed_ms": elapsed_ms,
                    })
                );
            } else {
                println!("answer: NO");
                println!("reason: {reason}");
                println!("elapsed_ms: {elapsed_ms}");
            }
            Ok(1)
        }
    }
}

fn parse_word(text: &str, q: u16, n: usize) -> Result<Vec<u8>, Error> {
    let word: Vec<u8> = if text.contains(|c: char| c == ',' || c.is_whitespace()) {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u8>().map_err(|_| Error::InvalidInput(format!("bad symbol {t:?}"))))
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidInput(format!("bad symbol {c:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    if word.len() != n {
        return Err(Error::InvalidInput(format!("word length {} != code length {n}", word.len())));
    }
    if word.iter().any(|&x| x as u16 >= q) {
        return Err(Error::InvalidInput(format!("word symbols must be residues mod {q}")));
    }
    Ok(word)
}

fn cmd_trellis(args: TrellisArgs, opts: &DpOptions) -> Result<i32, Error> {
    if args.k.is_none() && !args.exact {
        return Err(Error::InvalidInput("pass --k K or --exact".into()));
    }
    let g = parse_generator(&read_file(&args.input)?)?;
    let n = g.cols();
    let start = Instant::now();
    let solved: Option<(Vec<usize>, usize)> = if args.exact {
        let (w, perm) = trellis_exact_width(&g, opts);
        Some((perm, w))
    } else {
        trellis_width(&g, args.k.unwrap(), opts)
    };
    let elapsed_ms = start.elapsed().as_millis();

    let Some((perm, width)) = solved else {
        let k = args.k.unwrap();
        if args.json {
            println!("{}", json!({"answer": "NO", "k": k, "elapsed_ms": elapsed_ms}));
        } else {
            println!("answer: NO");
            println!("k: {k}");
            println!("elapsed_ms: {elapsed_ms}");
        }
        return Ok(1);
    };
    // re-verify the permutation width on the represented matroid
    let m = RepresentedMatroid::new(g.clone());
    let verified = m.layout_width(&perm);
    if verified != width || args.k.is_some_and(|k| verified > k) {
        return Err(Error::Inconsistent(format!(
            "reported trellis-width {width} but permutation re-verifies to {verified}"
        )));
    }

    let identity: Vec<usize> = (0..n).collect();
    let trellis_before = build_trellis(&g, &identity);
    let trellis_after = build_trellis(&g, &perm);
    let max_before = trellis_before.as_ref().map(|t| t.max_layer_size()).ok();
    let max_after = trellis_after.as_ref().map(|t| t.max_layer_size()).ok();

    let mut decoded = None;
    let mut distance = None;
    if let Some(word_text) = &args.decode {
        let t = trellis_after
            .as_ref()
            .map_err(|e| Error::InvalidInput(format!("cannot build trellis for decoding: {e}")))?;
        let word = parse_word(word_text, g.field().order(), n)?;
        // decode in the permuted coordinate order, then map back
        let permuted: Vec<u8> = perm.iter().map(|&j| word[j]).collect();
        let code_perm = viterbi_decode(t, &permuted);
        let mut codeword = vec![0u8; n];
        for (pos, &j) in perm.iter().enumerate() {
            codeword[j] = code_perm[pos];
        }
        let d = codeword.iter().zip(&word).filter(|(a, b)| a != b).count();
        decoded = Some(codeword);
        distance = Some(d);
    }

    if args.json {
        println!(
            "{}",
            json!({
                "answer": "YES",
                "width": width,
                "permutation": one_based(&perm),
                "max_layer_identity": max_before,
                "max_layer_optimal": max_after,
                "decoded": decoded,
                "distance": distance,
                "elapsed_ms": elapsed_ms,
            })
        );
    } else {
        println!("answer: YES");
        println!("trellis-width: {width}");
        println!("permutation: {}", join_usize(&one_based(&perm)));
        match (max_before, max_after) {
            (Some(b), Some(a)) => println!("max layer size: {b} (input order) -> {a} (permuted)"),
            _ => println!("max layer size: unavailable (code too large to enumerate)"),
        }
        if let (Some(c), Some(d)) = (&decoded, distance) {
            println!("decoded: {}", join_u8(c));
            println!("distance: {d}");
        }
        println!("elapsed_ms: {elapsed_ms}");
    }
    Ok(0)
}

fn cmd_lrw(args: LrwArgs, opts: &DpOptions) -> Result<i32, Error> {
    if args.k.is_none() && !args.exact {
        return Err(Error::InvalidInput("pass --k K or --exact".into()));
    }
    let g = Graph::parse(&read_file(&args.input)?)?;
    let start = Instant::now();
    let solved: Option<(usize, Vec<usize>)> = if args.exact {
        Some(exact_linear_rankwidth(&g, opts))
    } else {
        linear_rankwidth(&g, args.k.unwrap(), opts).map(|order| (g.order_width(&order), order))
    };
    let elapsed_ms = start.elapsed().as_millis();

    let Some((width, order)) = solved else {
        let k = args.k.unwrap();
        if args.json {
            println!("{}", json!({"answer": "NO", "k": k, "elapsed_ms": elapsed_ms}));
        } else {
            println!("answer: NO");
            println!("k: {k}");
            println!("elapsed_ms: {elapsed_ms}");
        }
        return Ok(1);
    };
    if g.order_width(&order) != width {
        return Err(Error::Inconsistent("order re-verification failed".into()));
    }

    let mut expr_text = None;
    let mut labels = None;
    if args.expr {
        if g.n_vertices() == 0 {
            return Err(Error::InvalidInput("empty graph has no expression".into()));
        }
        let e = clique_expression(&g, &order, width)?;
        // verify the round trip before printing
        let back = CliqueExpression::parse(&e.to_string())
            .map_err(|err| Error::Inconsistent(format!("expression does not re-parse: {err}")))?;
        let h = eval_expression(&back);
        let mut mapped = Graph::new(g.n_vertices());
        for (x, y) in h.edges() {
            mapped.add_edge(order[x], order[y]);
        }
        if mapped != g {
            return Err(Error::Inconsistent(
                "expression does not evaluate to the input graph".into(),
            ));
        }
        labels = Some(e.label_count());
        expr_text = Some(e.to_string());
    }

    if args.json {
        println!(
            "{}",
            json!({
                "answer": "YES",
                "width": width,
                "order": one_based(&order),
                "expr": expr_text,
                "labels": labels,
                "elapsed_ms": elapsed_ms,
            })
        );
    } else {
        println!("answer: YES");
        println!("linear rank-width: {width}");
        println!("order: {}", join_usize(&one_based(&order)));
        if let Some(t) = &expr_text {
            println!("expression: {t}");
            println!("labels: {}", labels.unwrap());
        }
        println!("elapsed_ms: {elapsed_ms}");
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> Result<i32, Error> {
    match args.which {
        OracleCommand::Typical { seq } => {
            let xs: Vec<usize> = seq
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad integer {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if xs.is_empty() {
                return Err(Error::InvalidInput("empty sequence".into()));
            }
            println!("{}", join_usize(&oracle::typical_bruteforce(&xs)));
            Ok(0)
        }
        OracleCommand::Pathwidth { input } => {
            let a = Arrangement::parse(&read_file(&input)?)?;
            let (w, layout) = oracle::pathwidth_subset_dp(&a)?;
            println!("pathwidth: {w}");
            println!("layout: {}", join_usize(&one_based(&layout)));
            Ok(0)
        }
        OracleCommand::Branchwidth { input } => {
            let a = Arrangement::parse(&read_file(&input)?)?;
            let (w, bd) = oracle::branchwidth_bruteforce(&a)?;
            debug_assert_eq!(bd_width(&a, &bd), w);
            println!("branchwidth: {w}");
            Ok(0)
        }
    }
}

fn join_usize(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_u8(xs: &[u8]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
