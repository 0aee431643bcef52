//! The `og` command line: load, view, merge, mutate and stats over OG-NQ
//! files.
//!
//! Exit status is 0 on success, 2 when an update target is ambiguous and 1
//! for every other failure. Reports go to standard output as `key=value`
//! lines, diagnostics to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use regex::Regex;

use crate::datatypes::{Literal, LpgValue};
use crate::error::Error;
use crate::io::{self, Format};
use crate::merge::{merge, MergeRules};
use crate::store::{DeletePolicy, Store};
use crate::term::{Sid, Term};
use crate::update::{self, AmbiguityPolicy, Element, InsertSemantics};
use crate::views::{
    dataset_view, expand_name, lpg_view, rdf_star_view, rdf_view, LpgViewConfig, Namespaces,
    RdfMode,
};
use crate::vocab;

#[derive(Parser, Debug)]
#[command(
    name = "og",
    version,
    about = "Statement graphs: load, view, merge, mutate, inspect"
)]
struct Cli {
    /// Deterministic sids: the n-th fresh sid is a fixed function of the seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// JSON object mapping prefix labels to namespace IRIs.
    #[arg(long, global = true, value_name = "FILE")]
    prefixes: Option<PathBuf>,

    /// Namespace under which local ids appear as IRIs.
    #[arg(long, global = true, env = "OG_DEFAULT_NS", default_value = vocab::DEFAULT_NAMESPACE)]
    default_ns: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse inputs into one store and write it as OG-NQ.
    Load {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// One format for all inputs, or one per input; guessed from the
        /// extension when absent.
        #[arg(long, short)]
        format: Vec<Format>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Project an OG-NQ store into another data model.
    View {
        input: PathBuf,
        #[arg(long = "as", value_enum)]
        view: ViewKind,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Merge two OG-NQ stores.
    Merge {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        rules: Option<PathBuf>,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Apply one update operation.
    Mutate(MutateArgs),
    /// Print counts.
    Stats { input: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ViewKind {
    Rdf,
    RdfReified,
    Rdfstar,
    Lpg,
    Dataset,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum AmbiguityArg {
    #[default]
    All,
    Error,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum DeleteArg {
    #[default]
    Cascade,
    Restrict,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum InsertArg {
    #[default]
    Set,
    Multi,
}

#[derive(Args, Debug)]
#[command(group(
    ArgGroup::new("op")
        .required(true)
        .args(["delete_triple", "insert_triple", "annotate", "add_edge", "set_property"])
))]
struct MutateArgs {
    input: PathBuf,
    #[arg(long, short)]
    output: PathBuf,

    #[arg(long, num_args = 3, value_names = ["S", "P", "O"], allow_hyphen_values = true)]
    delete_triple: Option<Vec<String>>,
    #[arg(long, num_args = 3, value_names = ["S", "P", "O"], allow_hyphen_values = true)]
    insert_triple: Option<Vec<String>>,
    #[arg(long, num_args = 5, value_names = ["S", "P", "O", "KEY", "VALUE"], allow_hyphen_values = true)]
    annotate: Option<Vec<String>>,
    #[arg(long, num_args = 3, value_names = ["FROM", "TO", "LABEL"])]
    add_edge: Option<Vec<String>>,
    #[arg(long, num_args = 3, value_names = ["ELEMENT", "KEY", "VALUE"], allow_hyphen_values = true)]
    set_property: Option<Vec<String>>,

    #[arg(long, value_enum, default_value_t)]
    ambiguity: AmbiguityArg,
    #[arg(long, value_enum, default_value_t)]
    delete: DeleteArg,
    #[arg(long, value_enum, default_value_t)]
    insert: InsertArg,
    /// Edge property for --add-edge, as KEY=VALUE; repeatable.
    #[arg(long = "prop", value_name = "KEY=VALUE")]
    props: Vec<String>,
    /// Let --add-edge create missing endpoints.
    #[arg(long)]
    auto_create: bool,
}

/// Failure of a command: what to print and which status to exit with.
struct Failure {
    message: String,
    code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::AmbiguousTarget { .. }) {
            2
        } else {
            1
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 1,
    }
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

struct Context {
    seed: Option<u64>,
    ns: Namespaces,
}

impl Context {
    fn new_store(&self) -> Store {
        match self.seed {
            Some(seed) => Store::with_seed(seed),
            None => Store::new(),
        }
    }

    fn read_store(&self, path: &Path) -> Result<Store, Failure> {
        let text = read(path)?;
        let mut store = self.new_store();
        io::ognq::load_into(&text, &mut store).map_err(in_file(path))?;
        Ok(store)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| fail(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| fail(e.to_string())),
    }
}

fn report(stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| fail(e.to_string()))
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let mut ns = Namespaces::new(cli.default_ns.clone())
        .map_err(|e| fail(format!("default namespace: {e}")))?;
    if let Some(path) = &cli.prefixes {
        ns.prefixes = io::parse_prefix_table(&read(path)?).map_err(in_file(path))?;
    }
    let ctx = Context { seed: cli.seed, ns };
    match cli.command {
        Command::Load {
            inputs,
            format,
            output,
        } => load(&ctx, &inputs, &format, output.as_deref(), stdout),
        Command::View {
            input,
            view,
            output,
        } => {
            let store = ctx.read_store(&input)?;
            let text = render_view(&ctx, &store, view, stderr)?;
            write_out(output.as_deref(), &text, stdout)
        }
        Command::Merge {
            a,
            b,
            rules,
            output,
        } => {
            let rules = match &rules {
                Some(path) => MergeRules::from_json(&read(path)?).map_err(in_file(path))?,
                None => MergeRules::default(),
            };
            let (sa, sb) = (ctx.read_store(&a)?, ctx.read_store(&b)?);
            let (merged, rep) = merge(&sa, &sb, &rules)?;
            write_out(Some(&output), &io::serialize_ognq(&merged), stdout)?;
            report(stdout, &rep.to_string())
        }
        Command::Mutate(args) => mutate(&ctx, args, stdout),
        Command::Stats { input } => {
            let store = ctx.read_store(&input)?;
            report(stdout, &stats(&ctx, &store))
        }
    }
}

fn load(
    ctx: &Context,
    inputs: &[PathBuf],
    formats: &[Format],
    output: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    if formats.len() > 1 && formats.len() != inputs.len() {
        return Err(fail(format!(
            "{} formats given for {} inputs",
            formats.len(),
            inputs.len()
        )));
    }
    let mut store = ctx.new_store();
    for (i, path) in inputs.iter().enumerate() {
        let format = match formats {
            [] => path
                .extension()
                .and_then(|e| e.to_str())
                .and_then(Format::from_extension)
                .ok_or_else(|| {
                    fail(format!(
                        "{}: cannot tell the format; pass --format",
                        path.display()
                    ))
                })?,
            [one] => *one,
            many => many[i],
        };
        let text = read(path)?;
        io::load_into(format, &text, &mut store, &ctx.ns).map_err(in_file(path))?;
    }
    write_out(output, &io::serialize_ognq(&store), stdout)
}

fn render_view(
    ctx: &Context,
    store: &Store,
    kind: ViewKind,
    stderr: &mut dyn Write,
) -> Result<String, Failure> {
    let ns = &ctx.ns;
    Ok(match kind {
        ViewKind::Rdf => io::serialize_ntriples(&rdf_view(store, RdfMode::Hide, ns)),
        ViewKind::RdfReified => io::serialize_ntriples(&rdf_view(store, RdfMode::Reify, ns)),
        ViewKind::Rdfstar => {
            let g = rdf_star_view(store, ns)?;
            let prefixes = io::turtle_star::used_prefixes(&g, &ns.prefixes);
            io::serialize_turtle_star(&g, &prefixes)
        }
        ViewKind::Lpg => {
            let view = lpg_view(store, &LpgViewConfig::with_namespaces(ns.clone()));
            let _ = writeln!(stderr, "dropped={}", view.dropped);
            io::serialize_lpg_jsonl(&view.graph)
        }
        ViewKind::Dataset => {
            let ds = dataset_view(store, ns);
            let mut out = String::from("# default graph\n");
            out.push_str(&io::serialize_ntriples(&ds.default_graph));
            for (g, graph) in &ds.named_graphs {
                out.push_str(&format!("# graph {}\n", ns.expose(g.term())));
                out.push_str(&io::serialize_ntriples(graph));
            }
            out
        }
    })
}

fn stats(ctx: &Context, store: &Store) -> String {
    let view = lpg_view(store, &LpgViewConfig::with_namespaces(ctx.ns.clone()));
    let ground = store.ground_count();
    [
        ("statements", store.len()),
        ("ground", ground),
        ("assertions", store.len() - ground),
        ("graphs", store.list_graphs().len()),
        ("lpg_vertices", view.graph.vertices.len()),
        ("lpg_edges", view.graph.edges.len()),
        ("lpg_dropped", view.dropped),
    ]
    .iter()
    .map(|(k, v)| format!("{k}={v}\n"))
    .collect()
}

static NUMBER: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[+-]?(?:[0-9]+|[0-9]*\.[0-9]+)$").unwrap());

/// Command-line term syntax: OG-NQ terms (`<iri>`, `"lit"@en`, `_:b`,
/// `local:"x"`), bare numbers and booleans, `prefix:name` for known
/// prefixes, and any other word (a leading `:` dropped) as a local id.
fn parse_cli_term(text: &str, ns: &Namespaces) -> Result<Term, Error> {
    if text.starts_with(['<', '"']) || text.starts_with("_:") || text.starts_with("local:\"") {
        return io::parse_term(text);
    }
    if text == "true" || text == "false" {
        return Ok(Literal::boolean(text == "true").into());
    }
    if NUMBER.is_match(text) {
        let dt = if text.contains('.') {
            vocab::XSD_DECIMAL
        } else {
            vocab::XSD_INTEGER
        };
        return Literal::typed_str(text, dt).map(Term::Literal);
    }
    if let Some(expanded) = expand_name(text, &ns.prefixes) {
        return Term::iri(expanded);
    }
    Term::local(text.strip_prefix(':').unwrap_or(text))
}

/// Property values: JSON scalars, anything else as a string.
fn parse_cli_value(text: &str) -> LpgValue {
    match serde_json::from_str::<serde_json::Value>(text) {
        Ok(serde_json::Value::Bool(b)) => LpgValue::Boolean(b),
        Ok(serde_json::Value::String(s)) => LpgValue::String(s),
        Ok(serde_json::Value::Number(n)) => match n.as_i64() {
            Some(i) => LpgValue::Integer(i),
            None => n
                .as_f64()
                .map_or_else(|| LpgValue::String(text.to_owned()), LpgValue::Float),
        },
        _ => LpgValue::String(text.to_owned()),
    }
}

fn mutate(ctx: &Context, args: MutateArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut store = ctx.read_store(&args.input)?;
    let ns = &ctx.ns;
    let config = LpgViewConfig::with_namespaces(ns.clone());
    let terms = |v: &[String]| {
        v.iter()
            .map(|t| parse_cli_term(t, ns))
            .collect::<Result<Vec<_>, _>>()
    };
    let ambiguity = match args.ambiguity {
        AmbiguityArg::All => AmbiguityPolicy::All,
        AmbiguityArg::Error => AmbiguityPolicy::ErrorIfMultiple,
    };
    let mut created: Vec<Sid> = Vec::new();
    let affected = if let Some(v) = &args.delete_triple {
        let t = terms(v)?;
        let delete = match args.delete {
            DeleteArg::Cascade => DeletePolicy::Cascade,
            DeleteArg::Restrict => DeletePolicy::Restrict,
        };
        update::rdf_delete_triple(&mut store, (&t[0], &t[1], &t[2]), ambiguity, delete, ns)?
    } else if let Some(v) = &args.insert_triple {
        let t = terms(v)?;
        let semantics = match args.insert {
            InsertArg::Set => InsertSemantics::SetSemantics,
            InsertArg::Multi => InsertSemantics::Multi,
        };
        created.extend(update::rdf_insert_triple(
            &mut store,
            (&t[0], &t[1], &t[2]),
            semantics,
            ns,
        )?);
        created.len()
    } else if let Some(v) = &args.annotate {
        let t = terms(v)?;
        created = update::star_annotate(
            &mut store,
            (&t[0], &t[1], &t[2]),
            (&t[3], &t[4]),
            ambiguity,
            ns,
        )?;
        created.len()
    } else if let Some(v) = &args.add_edge {
        let props = args
            .props
            .iter()
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.to_owned(), parse_cli_value(v)))
                    .ok_or_else(|| fail(format!("--prop expects KEY=VALUE, got {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let before = store.len();
        let edge = update::lpg_add_edge(
            &mut store,
            (&v[0], &v[1]),
            &v[2],
            &props,
            args.auto_create,
            &config,
        )?;
        created.push(edge);
        store.len() - before
    } else if let Some(v) = &args.set_property {
        let element = match v[0].parse::<Sid>().ok().or_else(|| Sid::from_iri(&v[0])) {
            Some(sid) => Element::Edge(sid),
            None => Element::Vertex(v[0].clone()),
        };
        created.push(update::lpg_set_property(
            &mut store,
            &element,
            &v[1],
            &parse_cli_value(&v[2]),
            &config,
        )?);
        1
    } else {
        unreachable!("clap requires one operation")
    };
    write_out(Some(&args.output), &io::serialize_ognq(&store), stdout)?;
    let mut text = format!("affected={affected}\n");
    for sid in created {
        text.push_str(&format!("sid={sid}\n"));
    }
    report(stdout, &text)
}
