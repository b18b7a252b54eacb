use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubal::collapse::Collapse;
use cubal::constructions::{IntervalModel, PairModel, SignedSetModel};
use cubal::corpus::{delta_swap_mutants, standard_corpus, Instance};
use cubal::cubic::{check_cubic_axioms, check_mr_axiom, CubicAlg};
use cubal::gcover::{find_gcovers, Envelope};
use cubal::io::{self, Document};
use cubal::order::BoolAlg;
use cubal::registry::{run_registry, select, RunOptions};
use cubal::special::{enumerate_specials, show_set, special_failure};

#[derive(Parser)]
#[command(name = "cubal", version, about = "Finite cubic, MR and implication algebras")]
struct Cli {
    /// Seed for sampled quantifiers and mutant generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reject input algebras with more elements than this.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Output format. Each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Largest quantifier domain checked exhaustively by `verify`.
    #[arg(long, global = true, default_value_t = RunOptions::default().budget)]
    budget: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a standard algebra as cubic JSON.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Check the cubic axioms and the MR axiom.
    Check { file: PathBuf },
    /// Compute the implication collapse.
    Collapse {
        file: PathBuf,
        /// Print the Hasse diagram of the quotient as DOT.
        #[arg(long)]
        emit_dot: bool,
    },
    /// List g-covers.
    Gcovers {
        file: PathBuf,
        #[arg(long, conflicts_with = "first")]
        all: bool,
        /// Stop at the first g-cover found.
        #[arg(long)]
        first: bool,
    },
    /// Build the MR envelope from the first g-cover.
    Envelope { file: PathBuf },
    /// Special subalgebras: test one set, or list them all.
    Special {
        file: PathBuf,
        /// List every special subalgebra.
        #[arg(long, conflicts_with = "members")]
        enumerate: bool,
        /// Comma-separated element labels to test. Commas inside
        /// brackets belong to the label.
        #[arg(long, value_parser = label_list)]
        members: Option<Labels>,
    },
    /// Build the algebra of strongly Boolean special subalgebras.
    Lsb { file: PathBuf },
    /// Run registry laws over a corpus.
    Verify {
        /// Algebra files to check.
        files: Vec<PathBuf>,
        /// Comma-separated law ids, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        laws: Vec<String>,
        /// Add the built-in corpus.
        #[arg(long)]
        standard: bool,
        /// Add this many seeded Δ-swap corruptions of each file.
        #[arg(long, default_value_t = 0)]
        mutants: usize,
    },
    /// Write an algebra, its collapse or its ℒ_sB as JSON or DOT.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "algebra")]
        what: ExportWhat,
    },
    /// List registry law ids with their domains.
    Laws,
}

#[derive(Subcommand)]
enum Gen {
    /// Signed sets over `n` atoms.
    Signed {
        #[arg(long)]
        n: usize,
    },
    /// Intervals of a Boolean algebra given by atom names or a count.
    Interval {
        /// Comma-separated atom names.
        #[arg(long, value_delimiter = ',', conflicts_with = "n")]
        atoms: Option<Vec<String>>,
        /// Number of atoms, named p, q, r, ... (default 1).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Pairs over an implication algebra read from JSON.
    Pair {
        #[arg(long)]
        impalg: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    Algebra,
    Collapse,
    Lsb,
}

enum Failure {
    Usage(String),
    Law(String),
}

impl From<cubal::Error> for Failure {
    fn from(e: cubal::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<(String, bool), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

struct Env {
    seed: u64,
    max_size: Option<usize>,
    format: Option<OutFormat>,
    budget: usize,
}

impl Env {
    fn format(&self, default: OutFormat, allowed: &[OutFormat]) -> Result<OutFormat, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            usage(format!("unsupported format `{}` for this command", f.to_possible_value().unwrap().get_name()))
        }
    }

    fn size_ok(&self, l: &CubicAlg) -> Result<(), Failure> {
        match self.max_size {
            Some(m) if l.len() > m => usage(format!("algebra has {} elements, above --max-size {m}", l.len())),
            _ => Ok(()),
        }
    }

    fn load_instance(&self, path: &Path) -> Result<Instance, Failure> {
        let text = std::fs::read_to_string(path).or_else(|e| usage(format!("{}: {e}", path.display())))?;
        let inst = Document::parse(&text)
            .and_then(|d| d.into_instance(path.display().to_string()))
            .or_else(|e| usage(format!("{}: {e}", path.display())))?;
        self.size_ok(&inst.alg)?;
        Ok(inst)
    }

    fn load(&self, path: &Path) -> Result<CubicAlg, Failure> {
        Ok(self.load_instance(path)?.alg)
    }
}

fn json_out(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn gen(env: &Env, what: &Gen) -> Out {
    env.format(OutFormat::Json, &[OutFormat::Json])?;
    let alg = match what {
        Gen::Signed { n } => SignedSetModel::new(*n)?.alg,
        Gen::Interval { atoms: Some(a), .. } => IntervalModel::new(&BoolAlg::with_atoms(a)?)?.alg,
        Gen::Interval { atoms: None, n } => IntervalModel::new(&BoolAlg::new(n.unwrap_or(1), None)?)?.alg,
        Gen::Pair { impalg } => {
            let text = std::fs::read_to_string(impalg).or_else(|e| usage(format!("{}: {e}", impalg.display())))?;
            match Document::parse(&text)? {
                Document::Imp(j) => PairModel::new(&io::imp_from_json(&j)?)?.alg,
                other => return usage(format!("expected an imp document, got {}", other.kind())),
            }
        }
    };
    env.size_ok(&alg)?;
    Ok((Document::Cubic(io::cubic_to_json(&alg)).to_json() + "\n", true))
}

fn check(env: &Env, l: &CubicAlg) -> Out {
    let f = env.format(OutFormat::Text, &[OutFormat::Text, OutFormat::Json])?;
    let axioms = check_cubic_axioms(l);
    let mr = check_mr_axiom(l);
    let witness =
        |w: &Option<Vec<usize>>| w.as_ref().map(|w| w.iter().map(|&x| l.label(x).to_string()).collect::<Vec<_>>());
    let ok = axioms.required_pass();
    if f == OutFormat::Json {
        let entries: Vec<_> = axioms
            .entries
            .iter()
            .map(|a| json!({"name": a.name, "statement": a.statement, "review": a.review, "pass": a.passed(), "witness": witness(&a.witness)}))
            .collect();
        let lab = |w: Option<&[usize]>| w.map(|w| w.iter().map(|&x| l.label(x).to_string()).collect::<Vec<_>>());
        let v = json!({
            "elements": l.len(),
            "cubic": ok,
            "axioms": entries,
            "mr": mr.mr_holds(),
            "mr_witness": lab(mr.mr_witness.as_ref().map(|w| &w[..])),
            "caret_total": mr.caret_total(),
            "caret_witness": lab(mr.caret_witness.as_ref().map(|w| &w[..])),
        });
        return Ok((json_out(&v), ok));
    }
    let mut out = format!("{} elements\n", l.len());
    for a in &axioms.entries {
        let tag = if a.passed() { "pass" } else { "FAIL" };
        let _ = write!(out, "{tag} {:<12} {}", a.name, a.statement);
        if a.review {
            out.push_str("  (review)");
        }
        if let Some(w) = witness(&a.witness) {
            let _ = write!(out, "  witness: ({})", w.join(", "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "cubic algebra: {}", if ok { "yes" } else { "no" });
    let _ = writeln!(out, "MR axiom: {}", if mr.mr_holds() { "holds" } else { "fails" });
    if let Some(w) = mr.mr_witness {
        let _ = writeln!(out, "  witness (x, a, b): ({}, {}, {})", l.label(w[0]), l.label(w[1]), l.label(w[2]));
    }
    let _ = writeln!(out, "caret total: {}", if mr.caret_total() { "yes" } else { "no" });
    Ok((out, ok))
}

fn collapse(env: &Env, l: &CubicAlg, emit_dot: bool) -> Out {
    let default = if emit_dot { OutFormat::Dot } else { OutFormat::Text };
    let f = env.format(default, &[OutFormat::Text, OutFormat::Json, OutFormat::Dot])?;
    let c = Collapse::new(l)?;
    match f {
        OutFormat::Dot => Ok((io::collapse_to_dot(&c), true)),
        OutFormat::Json => Ok((Document::Collapse(io::collapse_to_json(&c)).to_json() + "\n", true)),
        OutFormat::Text => {
            let mut out = format!("{} classes\n", c.len());
            for i in 0..c.len() {
                let _ = writeln!(out, "  [{i}] {}", c.class_label(i));
            }
            let (q, _) = c.quotient_imp()?;
            let _ = writeln!(out, "quotient: {}", Document::Imp(io::imp_to_json(&q)).to_json().replace('\n', "\n  "));
            Ok((out, true))
        }
    }
}

fn gcovers(env: &Env, l: &CubicAlg, first: bool) -> Out {
    let f = env.format(OutFormat::Text, &[OutFormat::Text, OutFormat::Json])?;
    let c = Collapse::new(l)?;
    let found = find_gcovers(&c, first.then_some(1))?;
    let sets: Vec<Vec<&str>> = found.iter().map(|g| g.members().iter().map(|&x| l.label(x)).collect()).collect();
    if f == OutFormat::Json {
        return Ok((json_out(&json!(sets)), true));
    }
    let mut out = format!("{} g-cover(s)\n", found.len());
    for g in &found {
        let _ = writeln!(out, "  {}", show_set(l, g.members()));
    }
    Ok((out, true))
}

fn envelope(env: &Env, l: &CubicAlg) -> Out {
    let f = env.format(OutFormat::Text, &[OutFormat::Text, OutFormat::Json, OutFormat::Dot])?;
    let c = Collapse::new(l)?;
    let e = Envelope::new(&c)?;
    let images: Vec<(String, String)> =
        (0..l.len()).map(|x| (l.label(x).to_string(), e.pairs.alg.label(e.embed.apply(x)).to_string())).collect();
    match f {
        OutFormat::Dot => Ok((io::cubic_to_dot(&e.pairs.alg), true)),
        OutFormat::Json => {
            let v = json!({
                "gcover": e.gcover.members().iter().map(|&x| l.label(x)).collect::<Vec<_>>(),
                "lattice": io::imp_to_json(&e.lattice),
                "envelope": io::cubic_to_json(&e.pairs.alg),
                "embed": images.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "mr": e.mr.mr_holds(),
            });
            Ok((json_out(&v), true))
        }
        OutFormat::Text => {
            let mut out = format!("g-cover: {}\n", show_set(l, e.gcover.members()));
            let base: Vec<String> = e.lattice.members().into_iter().map(|m| e.lattice.show(m)).collect();
            let _ = writeln!(out, "base lattice ({}): {}", base.len(), base.join(", "));
            let _ = writeln!(
                out,
                "envelope: {} elements, MR: {}",
                e.pairs.alg.len(),
                if e.mr.mr_holds() { "yes" } else { "no" }
            );
            for (a, b) in &images {
                let _ = writeln!(out, "  {a} -> {b}");
            }
            Ok((out, true))
        }
    }
}

#[derive(Clone, Debug)]
struct Labels(Vec<String>);

fn label_list(s: &str) -> std::result::Result<Labels, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '{' | '<' | '(' => depth += 1,
            ']' | '}' | '>' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(format!("unbalanced brackets in `{s}`"));
    }
    out.push(cur.trim().to_string());
    Ok(Labels(out))
}

fn special(env: &Env, l: &CubicAlg, enumerate: bool, members: Option<&[String]>) -> Out {
    let f = env.format(OutFormat::Text, &[OutFormat::Text, OutFormat::Json])?;
    if let Some(names) = members {
        let mut ids: Vec<usize> = names
            .iter()
            .map(|n| l.find(n).ok_or_else(|| Failure::Usage(format!("no element labelled `{n}`"))))
            .collect::<Result<_, _>>()?;
        if !ids.contains(&l.top()) {
            ids.push(l.top());
        }
        ids.sort_unstable();
        ids.dedup();
        let failure = special_failure(l, &ids).map(|e| e.describe(l));
        if f == OutFormat::Json {
            return Ok((json_out(&json!({"special": failure.is_none(), "reason": failure})), failure.is_none()));
        }
        let out = match &failure {
            None => format!("{} is special\n", show_set(l, &ids)),
            Some(why) => format!("{} is not special: {why}\n", show_set(l, &ids)),
        };
        return Ok((out, failure.is_none()));
    }
    if !enumerate {
        return usage("pass --enumerate or --members");
    }
    let all = enumerate_specials(l)?;
    if f == OutFormat::Json {
        let sets: Vec<Vec<&str>> = all.iter().map(|s| s.members().iter().map(|&x| l.label(x)).collect()).collect();
        return Ok((json_out(&json!(sets)), true));
    }
    let mut out = format!("{} special subalgebra(s)\n", all.len());
    for s in &all {
        let _ = writeln!(out, "  {}", s.show(l));
    }
    Ok((out, true))
}

fn lsb(env: &Env, l: &CubicAlg) -> Out {
    let f = env.format(OutFormat::Text, &[OutFormat::Text, OutFormat::Json, OutFormat::Dot])?;
    let s = cubal::special::build_lsb(&Collapse::new(l)?)?;
    let report = s.check();
    let ok = report.all_pass();
    match f {
        OutFormat::Dot => Ok((io::lsb_to_dot(&s), ok)),
        OutFormat::Json => Ok((Document::Lsb(io::lsb_to_json(&s)).to_json() + "\n", ok)),
        OutFormat::Text => {
            let mut out = format!("{} elements, {} atoms\n", s.alg().len(), s.atoms().len());
            for (i, e) in s.elements().iter().enumerate() {
                let atom = if s.atoms().contains(&i) { "  atom" } else { "" };
                let _ = writeln!(out, "  [{i}] {}{atom}", e.show(l));
            }
            for c in &report.checks {
                match &c.witness {
                    None => {
                        let _ = writeln!(out, "pass clause ({})", c.clause);
                    }
                    Some(w) => {
                        let _ = writeln!(out, "FAIL clause ({}): {w}", c.clause);
                    }
                }
            }
            Ok((out, ok))
        }
    }
}

fn verify(env: &Env, files: &[PathBuf], laws: &[String], standard: bool, mutants: usize) -> Out {
    let f = env.format(OutFormat::Text, &[OutFormat::Text, OutFormat::Json])?;
    let laws = select(laws)?;
    let mut corpus = Vec::new();
    for path in files {
        let inst = env.load_instance(path)?;
        let bad = if mutants > 0 { delta_swap_mutants(&inst, env.seed, mutants)? } else { Vec::new() };
        corpus.push(inst);
        corpus.extend(bad);
    }
    if standard {
        corpus.extend(standard_corpus()?);
    }
    let report = run_registry(&corpus, &laws, RunOptions { seed: env.seed, budget: env.budget });
    let text = match f {
        OutFormat::Json => report.render_json() + "\n",
        _ => report.render_text(),
    };
    if report.failed() {
        return Err(Failure::Law(text));
    }
    Ok((text, true))
}

fn export(env: &Env, l: &CubicAlg, what: ExportWhat) -> Out {
    let f = env.format(OutFormat::Json, &[OutFormat::Json, OutFormat::Dot])?;
    let out = match (what, f) {
        (ExportWhat::Algebra, OutFormat::Json) => Document::Cubic(io::cubic_to_json(l)).to_json() + "\n",
        (ExportWhat::Algebra, _) => io::cubic_to_dot(l),
        (ExportWhat::Collapse, OutFormat::Json) => {
            Document::Collapse(io::collapse_to_json(&Collapse::new(l)?)).to_json() + "\n"
        }
        (ExportWhat::Collapse, _) => io::collapse_to_dot(&Collapse::new(l)?),
        (ExportWhat::Lsb, OutFormat::Json) => {
            Document::Lsb(io::lsb_to_json(&cubal::special::build_lsb(&Collapse::new(l)?)?)).to_json() + "\n"
        }
        (ExportWhat::Lsb, _) => io::lsb_to_dot(&cubal::special::build_lsb(&Collapse::new(l)?)?),
    };
    Ok((out, true))
}

fn laws(env: &Env) -> Out {
    env.format(OutFormat::Text, &[OutFormat::Text])?;
    let mut out = String::new();
    for law in cubal::registry::registry() {
        let _ = writeln!(out, "{:<22} {}", law.id, law.domain);
    }
    Ok((out, true))
}

fn run(cli: &Cli) -> Out {
    let env = Env { seed: cli.seed, max_size: cli.max_size, format: cli.format, budget: cli.budget.max(1) };
    match &cli.cmd {
        Cmd::Gen { what } => gen(&env, what),
        Cmd::Check { file } => check(&env, &env.load(file)?),
        Cmd::Collapse { file, emit_dot } => collapse(&env, &env.load(file)?, *emit_dot),
        Cmd::Gcovers { file, first, .. } => gcovers(&env, &env.load(file)?, *first),
        Cmd::Envelope { file } => envelope(&env, &env.load(file)?),
        Cmd::Special { file, enumerate, members } => {
            special(&env, &env.load(file)?, *enumerate, members.as_ref().map(|m| m.0.as_slice()))
        }
        Cmd::Lsb { file } => lsb(&env, &env.load(file)?),
        Cmd::Verify { files, laws, standard, mutants } => verify(&env, files, laws, *standard, *mutants),
        Cmd::Export { file, what } => export(&env, &env.load(file)?, *what),
        Cmd::Laws => laws(&env),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Law(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
