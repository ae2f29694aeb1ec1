//! Command-line front end: `analyze`, `check`, `drg`, `mc` and `search`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::convolution::{
    check_well_defined, convolution_row, convolution_table, mc_estimate, ConvolutionTable,
    DEFAULT_LAZY_LEVEL,
};
use crate::error::{Error, Result};
use crate::generators::{search_graphs, FamilySpec};
use crate::graph::{metrics, Graph, Vertex};
use crate::hypergroup::{
    classify_base_points, graph_is_productive, productivity, BasePointClassification,
};
use crate::rational::to_wire;
use crate::report::{
    row_json, to_json, BaseJson, ConvolutionReport, GraphJson, McReport, SchemeReport,
    SearchReport, VerdictReport,
};
use crate::scheme::{check_distance_regular, intersection_numbers, srg_parameters};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_NOT_SELF_CENTERED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hypergroup",
    version,
    about = "Hypergroups from random walks on graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Metrics, distance partition and convolution table for one base point.
    Analyze(GraphArgs),
    /// Hypergroup productivity verdict.
    Check(CheckArgs),
    /// Distance-regularity, intersection array and intersection numbers.
    Drg(GraphArgs),
    /// Monte Carlo estimate of one convolution row.
    Mc(McArgs),
    /// Exhaustive search over small connected regular graphs.
    Search(SearchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph spec, e.g. prism:5, tree:3, ladder, file:graph.json
    #[arg(long)]
    pub graph: String,
    /// Base point: a vertex id, coordinates like 0,0, a word, or "all".
    #[arg(long)]
    pub base: Option<String>,
    /// Truncation level for infinite graphs.
    #[arg(long)]
    pub max_level: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Classify every base point of a finite graph.
    #[arg(long)]
    pub all_basepoints: bool,
}

#[derive(Args, Debug)]
pub struct McArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub degree: usize,
    /// Keep only graphs whose every base point is productive.
    #[arg(long)]
    pub productive: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSelfCentered { .. } => EXIT_NOT_SELF_CENTERED,
        Error::MalformedOracle { .. } | Error::NotAScheme(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    let text = match cmd {
        Command::Analyze(a) => analyze(a)?,
        Command::Check(a) => check(a)?,
        Command::Drg(a) => drg(a)?,
        Command::Mc(a) => mc(a)?,
        Command::Search(a) => search(a)?,
    };
    write!(out, "{text}")?;
    if !text.ends_with('\n') {
        writeln!(out)?;
    }
    Ok(())
}

fn load(a: &GraphArgs) -> Result<(FamilySpec, Graph)> {
    let spec: FamilySpec = a.graph.parse()?;
    let g = spec.build()?;
    Ok((spec, g))
}

enum BaseChoice {
    One(Vertex),
    All,
}

fn base_choice(a: &GraphArgs, g: &Graph) -> Result<BaseChoice> {
    match a.base.as_deref() {
        Some("all") => Ok(BaseChoice::All),
        Some(s) => Ok(BaseChoice::One(g.parse_vertex(s)?)),
        None => Ok(BaseChoice::One(g.default_base())),
    }
}

fn lazy_level(a: &GraphArgs, g: &Graph) -> Option<usize> {
    match g {
        Graph::Finite(_) => None,
        Graph::Lazy(_) => Some(a.max_level.unwrap_or(DEFAULT_LAZY_LEVEL)),
    }
}

fn classification(g: &Graph) -> Result<BasePointClassification> {
    match g {
        Graph::Finite(fg) => {
            check_well_defined(g).into_result()?;
            classify_base_points(fg)
        }
        Graph::Lazy(_) => Err(Error::Usage(
            "base-point classification needs a finite graph".into(),
        )),
    }
}

fn table_text(t: &ConvolutionTable, s: &mut String) {
    for (&(i, j), row) in t.rows() {
        if i == 0 || j == 0 || i > j {
            continue;
        }
        s.push_str(&format!("  R{i} ∘ R{j} = {row}\n"));
    }
}

fn analyze(a: &GraphArgs) -> Result<String> {
    let (spec, g) = load(a)?;
    let level = lazy_level(a, &g);
    if let BaseChoice::All = base_choice(a, &g)? {
        let c = classification(&g)?;
        let mut s = format!("graph: {spec}\nbase-point classes: {}\n", c.classes.len());
        for class in &c.classes {
            s.push_str(&format!("class {:?}\n", class.vertices));
            table_text(&class.table, &mut s);
        }
        return Ok(s);
    }
    let BaseChoice::One(v0) = base_choice(a, &g)? else {
        unreachable!()
    };
    check_well_defined(&g).into_result()?;
    let t = convolution_table(&g, &v0, level)?;
    if a.format == Format::Json {
        return Ok(to_json(&ConvolutionReport::new(&t)));
    }
    let mut s = format!("graph: {spec}\nbase: {v0}\n");
    match &g {
        Graph::Finite(fg) => {
            let m = metrics(fg);
            s.push_str(&format!(
                "vertices: {}\nedges: {}\nradius: {}\ndiameter: {}\nself-centered: {}\n",
                fg.order(),
                fg.edge_count(),
                m.radius,
                m.diameter,
                if m.self_centered { "yes" } else { "no" }
            ));
        }
        Graph::Lazy(_) => {
            s.push_str(&format!(
                "infinite graph, truncated at level {}\n",
                t.max_level
            ));
        }
    }
    let sizes: Vec<String> = t.level_sizes.iter().map(usize::to_string).collect();
    s.push_str(&format!("level sizes: {}\n", sizes.join(" ")));
    s.push_str("convolution table:\n");
    table_text(&t, &mut s);
    Ok(s)
}

fn check(a: &CheckArgs) -> Result<String> {
    let ga = &a.graph;
    let (spec, g) = load(ga)?;
    check_well_defined(&g).into_result()?;
    let all = a.all_basepoints || ga.base.as_deref() == Some("all");
    let v0 = match base_choice(ga, &g)? {
        BaseChoice::One(v0) if !all => v0,
        _ if g.is_finite() => g.default_base(),
        _ => {
            return Err(Error::Usage(
                "base-point classification needs a finite graph".into(),
            ))
        }
    };
    let classes = if g.is_finite() {
        Some(classification(&g)?)
    } else {
        None
    };
    let level = lazy_level(ga, &g);
    let mut verdict = productivity(&g, &v0, level)?;
    // With every base point, the verdict covers each class representative.
    if let (true, Some(c)) = (all, &classes) {
        for class in &c.classes[1..] {
            let other = productivity(&g, &Vertex::Id(class.vertices[0]), level)?;
            verdict.productive &= other.productive;
            verdict.failures.extend(other.failures);
        }
    }
    if ga.format == Format::Json {
        return Ok(to_json(&VerdictReport::new(&verdict, classes.as_ref())));
    }
    let mut s = format!("graph: {spec}\n");
    if verdict.truncated {
        s.push_str(&format!(
            "productive: {} (up to level {}, triples with h+i+j <= {})\n",
            verdict.productive, verdict.scope, verdict.triple_bound
        ));
    } else {
        s.push_str(&format!("productive: {}\n", verdict.productive));
    }
    for f in &verdict.failures {
        s.push_str(&format!(
            "failure: {} at {:?}\n  lhs = {}\n  rhs = {}\n",
            f.axiom, f.witness, f.lhs, f.rhs
        ));
    }
    if let Some(c) = &classes {
        s.push_str(&format!("base-point classes: {}\n", c.classes.len()));
        for class in c.classes.iter().filter(|_| all) {
            s.push_str(&format!("class {:?}\n", class.vertices));
            table_text(&class.table, &mut s);
        }
    }
    Ok(s)
}

fn drg(a: &GraphArgs) -> Result<String> {
    let (spec, g) = load(a)?;
    let level = lazy_level(a, &g);
    let verdict = check_distance_regular(&g, level)?;
    let scheme = if verdict.distance_regular {
        Some(intersection_numbers(&g, &g.default_base(), level)?)
    } else {
        None
    };
    let srg = match &g {
        Graph::Finite(fg) => srg_parameters(fg),
        Graph::Lazy(_) => None,
    };
    if a.format == Format::Json {
        return Ok(to_json(&SchemeReport::new(&verdict, scheme.as_ref(), srg)));
    }
    let mut s = format!("graph: {spec}\n");
    match verdict.truncated {
        Some(l) => s.push_str(&format!(
            "distance-regular: {} (up to distance {l} from the base)\n",
            verdict.distance_regular
        )),
        None => s.push_str(&format!("distance-regular: {}\n", verdict.distance_regular)),
    }
    if let Some(arr) = &verdict.array {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        s.push_str(&format!(
            "intersection array: ({}; {})\n",
            join(&arr.b),
            join(&arr.c)
        ));
    }
    if let Some(w) = &verdict.witness {
        s.push_str(&format!(
            "witness: {} at distance {}: ({}, {}) has {}, ({}, {}) has {}\n",
            w.quantity,
            w.distance,
            w.reference.0,
            w.reference.1,
            w.reference_count,
            w.offending.0,
            w.offending.1,
            w.offending_count
        ));
    }
    if let Some((n, k, l, m)) = srg {
        s.push_str(&format!("strongly regular: ({n},{k},{l},{m})\n"));
    }
    Ok(s)
}

fn mc(a: &McArgs) -> Result<String> {
    let ga = &a.graph;
    let (spec, g) = load(ga)?;
    let BaseChoice::One(v0) = base_choice(ga, &g)? else {
        return Err(Error::Usage("mc needs a single base point".into()));
    };
    let est = mc_estimate(&g, &v0, a.i, a.j, a.samples, a.seed)?;
    let exact = convolution_row(&g, &v0, a.i, a.j)?;
    if ga.format == Format::Json {
        let r = McReport {
            base: BaseJson::from(&v0),
            i: a.i,
            j: a.j,
            samples: est.samples,
            seed: est.seed,
            counts: est
                .counts
                .iter()
                .map(|(k, c)| (k.to_string(), *c))
                .collect(),
            exact: row_json(&exact),
        };
        return Ok(to_json(&r));
    }
    let mut s = format!(
        "graph: {spec}\nbase: {v0}\nrow: R{} ∘ R{}\nsamples: {}\nseed: {}\n",
        a.i, a.j, a.samples, a.seed
    );
    let mut ks: BTreeMap<usize, ()> = est.counts.keys().map(|&k| (k, ())).collect();
    ks.extend(exact.support().into_iter().map(|k| (k, ())));
    for k in ks.keys() {
        let c = est.counts.get(k).copied().unwrap_or(0);
        s.push_str(&format!(
            "  R{k}: observed {c}/{} exact {}\n",
            a.samples,
            to_wire(&exact.get(*k))
        ));
    }
    Ok(s)
}

fn search(a: &SearchArgs) -> Result<String> {
    let graphs = search_graphs(a.order, a.degree, |g| {
        !a.productive || graph_is_productive(g).unwrap_or(false)
    })?;
    if a.format == Format::Json {
        return Ok(to_json(&SearchReport {
            order: a.order,
            degree: a.degree,
            productive_only: a.productive,
            graphs: graphs
                .iter()
                .map(|g| GraphJson {
                    n: g.order(),
                    edges: g.edges(),
                })
                .collect(),
        }));
    }
    let mut s = format!(
        "{} connected {}-regular graph(s) on {} vertices{}\n",
        graphs.len(),
        a.degree,
        a.order,
        if a.productive {
            ", every base point productive"
        } else {
            ""
        }
    );
    for g in &graphs {
        let edges: Vec<String> = g.edges().iter().map(|(x, y)| format!("{x}-{y}")).collect();
        let classes = classify_base_points(g)
            .map(|c| c.classes.len())
            .unwrap_or(0);
        s.push_str(&format!("  classes={classes} edges: {}\n", edges.join(" ")));
    }
    Ok(s)
}
