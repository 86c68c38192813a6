//! `regfam`: command-line front end.
//!
//! Exit codes: 0 success (or yes), 1 a no answer, 2 parse error, 3 resource
//! cap exceeded, 4 I/O error.

use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use regfam::codec::{decode, encode_with_cap};
use regfam::oracle::oracle_members;
use regfam::properties::{self, Answer};
use regfam::{crown_regex, Analysis, Config, Error, Graph, Report};
use serde::Serialize;

/// Appends a line to the output buffer.
macro_rules! say {
    ($out:expr) => {
        $out.push('\n')
    };
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

#[derive(Parser)]
#[command(name = "regfam", version, about = "Graph families given by regular languages over {a,b}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print pipeline timings to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args)]
struct Caps {
    /// Largest graph that can be canonicalized.
    #[arg(long, global = true, value_name = "N")]
    cap_canon: Option<usize>,
    /// Largest graph that `encode` accepts.
    #[arg(long, global = true, value_name = "N")]
    cap_encode: Option<usize>,
    /// Most linear pieces kept by normalization.
    #[arg(long, global = true, value_name = "N")]
    cap_pieces: Option<usize>,
    /// Node budget for regular expressions built from automata.
    #[arg(long, global = true, value_name = "N")]
    cap_regex_nodes: Option<usize>,
    /// Step budget for membership and enumeration searches.
    #[arg(long, global = true, value_name = "N")]
    cap_budget: Option<u64>,
}

impl Caps {
    fn config(&self) -> Result<Config, Failure> {
        let mut cfg = Config::default();
        let set = |slot: &mut usize, v: Option<usize>| match v {
            Some(0) => Err(Failure::usage("caps must be positive")),
            Some(v) => {
                *slot = v;
                Ok(())
            }
            None => Ok(()),
        };
        set(&mut cfg.canon_vertices, self.cap_canon)?;
        set(&mut cfg.encode_vertices, self.cap_encode)?;
        set(&mut cfg.max_pieces, self.cap_pieces)?;
        set(&mut cfg.max_regex_nodes, self.cap_regex_nodes)?;
        match self.cap_budget {
            Some(0) => return Err(Failure::usage("caps must be positive")),
            Some(b) => cfg.search_budget = b,
            None => {}
        }
        Ok(cfg)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Lang {
    /// Regular expression over a and b.
    #[arg(long)]
    lang: Option<String>,
    /// Use the crown language around a directed n-cycle.
    #[arg(long, value_name = "N")]
    crown: Option<u32>,
}

impl Lang {
    fn regex(&self) -> String {
        match (&self.lang, self.crown) {
            (Some(r), _) => r.clone(),
            (None, Some(n)) => crown_regex(n),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Torsion, letters, pieces, ranks and chromatic supremum.
    Analyze {
        #[command(flatten)]
        lang: Lang,
    },
    /// Whether a graph belongs to the family; exit 1 when it does not.
    Member {
        #[command(flatten)]
        lang: Lang,
        /// Graph file, or `-` for stdin.
        #[arg(long)]
        graph: String,
    },
    /// All members up to a vertex count, in canonical form.
    Enumerate {
        #[command(flatten)]
        lang: Lang,
        /// Required for infinite families.
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Whether some member has a property; exit 1 on no.
    Decide {
        #[command(flatten)]
        lang: Lang,
        /// hamiltonian, perfect-matching, dominating-log,
        /// defensive-alliance-log, planar, bipartite, colorable, clique.
        #[arg(long)]
        property: String,
        /// Parameter of `colorable` and `clique`.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Short-lex least encoding of a graph.
    Encode {
        /// Graph file, or `-` for stdin.
        #[arg(long)]
        graph: String,
    },
    /// Graph encoded by a word.
    Decode { word: String },
    /// Graphs of all accepted words up to a length, by brute force.
    Oracle {
        #[command(flatten)]
        lang: Lang,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
    },
}

/// A failed command and its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Resource(_) => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn read_graph(path: &str) -> Result<Graph, Failure> {
    let mut text = String::new();
    let io = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    io.map_err(|e| Failure {
        code: 4,
        msg: format!("{path}: {e}"),
    })?;
    Ok(Graph::from_text(&text)?)
}

fn print_json<T: Serialize>(out: &mut String, value: &T) {
    say!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"));
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeOut {
    #[serde(flatten)]
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_size: Option<usize>,
}

#[derive(Serialize)]
struct MemberOut {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    piece: Option<usize>,
}

#[derive(Serialize)]
struct OracleEntry {
    graph: Graph,
    word: String,
}

#[derive(Serialize)]
struct OracleOut {
    members: Vec<OracleEntry>,
    unstored: u64,
    explored: u64,
}

struct Ctx {
    json: bool,
    verbose: bool,
    cfg: Config,
}

impl Ctx {
    fn analyze(&self, lang: &Lang) -> Result<Analysis, Failure> {
        let t = Instant::now();
        let a = Analysis::new(&lang.regex(), &self.cfg)?;
        if self.verbose {
            eprintln!(
                "analysis: {} states, {} letters, {} pieces, {:?}",
                a.dfa().len(),
                a.family().alphabet().len(),
                a.family().pieces().len(),
                t.elapsed()
            );
        }
        Ok(a)
    }
}

fn analyze(ctx: &Ctx, out: &mut String, lang: &Lang) -> Result<u8, Failure> {
    let a = ctx.analyze(lang)?;
    let report = a.report()?;
    let family_size = a.family().max_order().and_then(|n| a.enumerate(n).ok()).map(|v| v.len());
    if ctx.json {
        print_json(out, &AnalyzeOut { report, family_size });
        return Ok(0);
    }
    let tor = report.torsion;
    say!(out, "torsion: t={} p={}", tor.t, tor.p);
    let letters: Vec<String> = report.alphabet.iter().map(|z| z.to_string()).collect();
    say!(out, "alphabet: {}", letters.join(" "));
    for (i, p) in report.pieces.iter().enumerate() {
        say!(out, "piece {i}: rank {}", p.rank);
        let alpha: Vec<String> = p.alpha.iter().map(|(z, m)| format!("{z}={m}")).collect();
        say!(out, "  alpha: {}", alpha.join(" "));
        let edges: Vec<String> = p.marked_graph.edges.iter().map(|(u, v)| format!("({u},{v})")).collect();
        say!(out, "  marked graph: {} vertices, edges {}", p.marked_graph.vertices.len(), edges.join(" "));
        if !p.marked_graph.marks.is_empty() {
            say!(out, "  marks: {}", p.marked_graph.marks.join(" "));
        }
        match p.width_bounds {
            regfam::WidthBounds::Bounded { vertex_cover, bag_size } => {
                say!(out, "  width bounds: vertex cover {vertex_cover}, bag size {bag_size}")
            }
            regfam::WidthBounds::Unbounded => say!(out, "  width bounds: unbounded"),
        }
    }
    say!(out, "overall rank: {}", report.overall_rank);
    say!(out, "chromatic sup: {}", report.chromatic_sup);
    say!(out, "accepts empty word: {}", report.accepts_empty);
    if let Some(n) = family_size {
        say!(out, "family size: {n}");
    }
    Ok(0)
}

fn member(ctx: &Ctx, out: &mut String, lang: &Lang, path: &str) -> Result<u8, Failure> {
    let g = read_graph(path)?;
    let a = ctx.analyze(lang)?;
    let w = a.member(&g)?;
    let verdict = MemberOut {
        member: w.is_some(),
        piece: w.as_ref().and_then(|w| w.realization.piece),
        word: w.map(|w| w.word),
    };
    if ctx.json {
        print_json(out, &verdict);
    } else if let Some(word) = &verdict.word {
        say!(out, "yes");
        say!(out, "word: {word}");
    } else {
        say!(out, "no");
    }
    Ok(if verdict.member { 0 } else { 1 })
}

fn enumerate(ctx: &Ctx, out: &mut String, lang: &Lang, max_vertices: Option<usize>) -> Result<u8, Failure> {
    let a = ctx.analyze(lang)?;
    let n = match max_vertices.or(a.family().max_order()) {
        Some(n) => n,
        None => return Err(Failure::usage("the family is infinite; pass --max-vertices")),
    };
    let graphs = a.enumerate(n)?;
    if ctx.json {
        let texts: Vec<String> = graphs.iter().map(Graph::to_text).collect();
        print_json(out, &texts);
        return Ok(0);
    }
    say!(out, "count={}", graphs.len());
    for g in &graphs {
        say!(out);
        out.push_str(&g.to_text());
    }
    Ok(0)
}

fn decide(ctx: &Ctx, out: &mut String, lang: &Lang, name: &str, k: usize) -> Result<u8, Failure> {
    if name == "custom" {
        return Err(Failure::usage("custom properties are available through the library only"));
    }
    let prop = properties::builtin(name, k).ok_or_else(|| Failure::usage(format!("unknown property {name:?}")))?;
    let a = ctx.analyze(lang)?;
    let v = a.decide(prop.as_ref())?;
    if ctx.json {
        print_json(out, &v);
    } else {
        let answer = match v.answer {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Resource => "resource limit reached",
        };
        say!(out, "{answer}");
        if let Some(g) = &v.witness_graph {
            out.push_str(&g.to_text());
        }
        if let Some(w) = &v.witness_word {
            say!(out, "word: {w}");
        }
        if let Some(note) = &v.note {
            say!(out, "note: {note}");
        }
    }
    Ok(match v.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Resource => 3,
    })
}

fn oracle(ctx: &Ctx, out: &mut String, lang: &Lang, max_len: usize, max_vertices: usize) -> Result<u8, Failure> {
    let a = ctx.analyze(lang)?;
    let run = oracle_members(a.dfa(), max_len, max_vertices);
    if ctx.json {
        print_json(out, &OracleOut {
            members: run.members.iter().map(|(g, w)| OracleEntry { graph: g.clone(), word: w.clone() }).collect(),
            unstored: run.unstored,
            explored: run.explored,
        });
        return Ok(0);
    }
    say!(out, "count={} unstored={}", run.members.len(), run.unstored);
    for (g, w) in &run.members {
        say!(out);
        say!(out, "word: {w}");
        out.push_str(&g.to_text());
    }
    Ok(0)
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Failure> {
    let ctx = Ctx {
        json: cli.json,
        verbose: cli.verbose,
        cfg: cli.caps.config()?,
    };
    match &cli.command {
        Command::Analyze { lang } => analyze(&ctx, out, lang),
        Command::Member { lang, graph } => member(&ctx, out, lang, graph),
        Command::Enumerate { lang, max_vertices } => enumerate(&ctx, out, lang, *max_vertices),
        Command::Decide { lang, property, k } => decide(&ctx, out, lang, property, *k),
        Command::Encode { graph } => {
            let g = read_graph(graph)?;
            let w = encode_with_cap(&g, ctx.cfg.encode_vertices)?;
            if ctx.json {
                print_json(out, &w);
            } else {
                say!(out, "{w}");
            }
            Ok(0)
        }
        Command::Decode { word } => {
            let g = decode(word)?;
            if ctx.json {
                print_json(out, &g.to_text());
            } else {
                out.push_str(&g.to_text());
            }
            Ok(0)
        }
        Command::Oracle { lang, max_len, max_vertices } => oracle(&ctx, out, lang, *max_len, *max_vertices),
    }
}

fn main() -> ExitCode {
    let mut out = String::new();
    let code = match run(Cli::parse(), &mut out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Ok(()) => ExitCode::from(code),
        // A reader that stops early, such as `head`, is not an error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: stdout: {e}");
            ExitCode::from(4)
        }
    }
}
