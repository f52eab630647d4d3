use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use fpgroups::abelian::{abelian_invariants, AbelianSolver};
use fpgroups::boone::{
    beta, boone_encode, boone_schema_checksum, certificate_from_derivation, format_certificate, parse_certificate,
    post_schema_checksum, verify_certificate,
};
use fpgroups::core::{format_presentation, format_word, parse_presentation, parse_word};
use fpgroups::engines::{
    format_trivial_proof, iso_search, normal_generator_search, prove_word, simple_wp, triviality_semi, Budget,
    ExecMode, IsoWitness, Refutation, WordVerdict, DEFAULT_STEPS,
};
use fpgroups::gadgets::{adversary_demo, free_product_family, phi_family, pi, psi};
use fpgroups::machine::{parse_machine, phi_input, run, zoo, TuringMachine};
use fpgroups::post::{derive_from_trace, format_derivation, format_semigroup, parse_derivation, verify_derivation};
use fpgroups::{abelianize, direct_product_with_cyclic, GroupPresentation, Word};

/// Finitely presented groups: constructions, certificates and bounded searches.
#[derive(Parser, Debug)]
#[command(name = "fpg", disable_version_flag = true)]
struct Cli {
    /// Print version and schema checksums.
    #[arg(long, global = true)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build presentations and encodings.
    #[command(subcommand)]
    Forge(Forge),
    /// Produce or check certificates.
    #[command(subcommand)]
    Prove(Prove),
    /// Word problems.
    #[command(subcommand)]
    Solve(Solve),
    /// Bounded searches.
    #[command(subcommand)]
    Search(Search),
    /// Abelianization.
    #[command(subcommand)]
    Abelian(Abelian),
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Args, Debug, Clone)]
struct Out {
    /// Output file (written atomically); stdout if absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Engine {
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    budget: u64,
    /// Run strategies round-robin on one thread.
    #[arg(long)]
    deterministic: bool,
}

impl Engine {
    fn budget(&self) -> Budget {
        Budget::steps(self.budget)
    }

    fn mode(&self) -> ExecMode {
        if self.deterministic {
            ExecMode::Deterministic
        } else {
            ExecMode::Parallel
        }
    }
}

#[derive(Subcommand, Debug)]
enum Forge {
    /// Post's semigroup of a machine.
    Post {
        #[arg(long)]
        machine: String,
        #[command(flatten)]
        out: Out,
    },
    /// Boone's group of a machine.
    Boone {
        #[arg(long)]
        machine: String,
        #[command(flatten)]
        out: Out,
    },
    /// The perfect presentation that is trivial exactly when the word is.
    Gordon {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        out: Out,
    },
    Pi {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    Psi {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        out: Out,
    },
    Phi {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Free product of the inputs, or `P × Z_p` with `--cyclic p`.
    Product {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        cyclic: Option<u64>,
        #[command(flatten)]
        out: Out,
    },
    Abelianize {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Prove {
    /// Prove or refute `w = 1`; writes a certificate when trivial.
    TrivialWord {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        engine: Engine,
        #[command(flatten)]
        out: Out,
    },
    /// Prove that the presentation defines the trivial group.
    TrivialGroup {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        engine: Engine,
        #[command(flatten)]
        out: Out,
    },
    /// Derivation of the halting word from the machine's run on input n,
    /// or check an existing one with `--check`.
    Derivation {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Triviality certificate in Boone's group from the run on input n, or
    /// check a certificate file against a presentation with `--check`.
    Certificate {
        #[arg(long)]
        machine: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Solve {
    AbelianWp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Word problem in a presentation of a nontrivial simple group.
    SimpleWp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        engine: Engine,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Search {
    Iso {
        /// Two presentations: `--in P --in Q`.
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        engine: Engine,
        #[command(flatten)]
        out: Out,
    },
    NormalGen {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        engine: Engine,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Abelian {
    Invariants {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Wp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Free product of k + 1 machine groups against length-k word pickers.
    Adversary {
        #[arg(long)]
        k: usize,
        /// `machine:n`, repeated k + 1 times.
        #[arg(long = "factor", required = true)]
        factors: Vec<String>,
        #[arg(long)]
        word: Option<String>,
        #[command(flatten)]
        out: Out,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Proven,
    Unknown,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_presentation(path: &Path) -> Result<GroupPresentation> {
    parse_presentation(&read(path)?).with_context(|| path.display().to_string())
}

/// A machine file, or `zoo:<name>` for a built-in machine.
fn load_machine(arg: &str) -> Result<TuringMachine> {
    if let Some(name) = arg.strip_prefix("zoo:") {
        return zoo::by_name(name).ok_or_else(|| anyhow!("no zoo machine `{name}`"));
    }
    let path = Path::new(arg);
    parse_machine(&read(path)?).with_context(|| arg.to_string())
}

fn word(p: &GroupPresentation, text: &str) -> Result<Word> {
    parse_word(p, text).with_context(|| format!("word `{text}`"))
}

fn emit(out: &Out, text: &str) -> Result<()> {
    match &out.out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| e.error).with_context(|| format!("writing {}", path.display()))?;
            Ok(())
        }
    }
}

fn forge(cmd: Forge) -> Result<Status> {
    let (text, out) = match cmd {
        Forge::Post { machine, out } => {
            let m = load_machine(&machine)?;
            (format_semigroup(&fpgroups::post::post_encode(&m)?.presentation), out)
        }
        Forge::Boone { machine, out } => (format_presentation(&boone_encode(&load_machine(&machine)?)?.presentation), out),
        Forge::Gordon { input, word: w, out } => {
            let p = load_presentation(&input)?;
            let w = word(&p, &w)?;
            (format_presentation(&fpgroups::gordon::gordon(&p, &w)?), out)
        }
        Forge::Pi { machine, n, out } => (format_presentation(&pi(&load_machine(&machine)?, n)?), out),
        Forge::Psi { machine, i, out } => (format_presentation(&psi(&load_machine(&machine)?, i)?), out),
        Forge::Phi { machine, i, out } => (format_presentation(&phi_family(&load_machine(&machine)?, i)?), out),
        Forge::Product { inputs, cyclic, out } => {
            let ps = inputs.iter().map(|p| load_presentation(p)).collect::<Result<Vec<_>>>()?;
            let p = match cyclic {
                Some(order) => {
                    if ps.len() != 1 {
                        bail!("--cyclic takes exactly one --in");
                    }
                    direct_product_with_cyclic(&ps[0], order)?
                }
                None => free_product_family(&ps)?,
            };
            (format_presentation(&p), out)
        }
        Forge::Abelianize { input, out } => (format_presentation(&abelianize(&load_presentation(&input)?)), out),
    };
    emit(&out, &text)?;
    Ok(Status::Proven)
}

fn refutation_text(r: &Refutation) -> String {
    match r {
        Refutation::Abelian => "nontrivial in the abelianization".into(),
        Refutation::Action(t) => format!("moves coset 0 of a closed table with {} cosets", t.len()),
        Refutation::QuotientTrivial(tp) => format!("adding it as a relator gives the trivial group ({})", tp.strategy),
    }
}

fn report_verdict(p: &GroupPresentation, w: &Word, v: WordVerdict, out: &Out) -> Result<Status> {
    match v {
        WordVerdict::Trivial(c) => {
            println!("Trivial");
            emit(out, &format_certificate(p, w, &c))?;
            Ok(Status::Proven)
        }
        WordVerdict::Nontrivial(r) => {
            println!("Nontrivial: {}", refutation_text(&r));
            Ok(Status::Proven)
        }
        WordVerdict::Unknown => {
            println!("Unknown");
            Ok(Status::Unknown)
        }
    }
}

fn halted_run(m: &TuringMachine, n: usize, budget: u64) -> Result<Option<fpgroups::machine::RunTrace>> {
    let t = run(m, &phi_input(n), usize::try_from(budget).unwrap_or(usize::MAX))?;
    Ok(t.halted().then_some(t))
}

fn prove(cmd: Prove) -> Result<Status> {
    match cmd {
        Prove::TrivialWord { input, word: w, engine, out } => {
            let p = load_presentation(&input)?;
            let w = word(&p, &w)?;
            let v = prove_word(&p, &w, &engine.budget(), engine.mode());
            report_verdict(&p, &w, v, &out)
        }
        Prove::TrivialGroup { input, engine, out } => {
            let p = load_presentation(&input)?;
            match triviality_semi(&p, &engine.budget(), engine.mode()) {
                Some(tp) => {
                    emit(&out, &format_trivial_proof(&p, &tp))?;
                    eprintln!("trivial ({})", tp.strategy);
                    Ok(Status::Proven)
                }
                None => {
                    println!("Unknown");
                    Ok(Status::Unknown)
                }
            }
        }
        Prove::Derivation { machine, n, check, budget, out } => {
            let m = load_machine(&machine)?;
            let enc = fpgroups::post::post_encode(&m)?;
            if let Some(path) = check {
                let d = parse_derivation(&enc.presentation, &read(&path)?)?;
                if !verify_derivation(&enc.presentation, &d) {
                    bail!("{}: derivation does not verify", path.display());
                }
                println!("valid ({} steps)", d.len());
                return Ok(Status::Proven);
            }
            let n = n.ok_or_else(|| anyhow!("--n or --check is required"))?;
            let Some(t) = halted_run(&m, n, budget)? else {
                println!("Unknown: no halt within {budget} steps");
                return Ok(Status::Unknown);
            };
            let d = derive_from_trace(&enc, &m, &t)?;
            emit(&out, &format_derivation(&enc.presentation, &d))?;
            Ok(Status::Proven)
        }
        Prove::Certificate { machine, n, input, check, budget, out } => {
            if let Some(path) = check {
                let p = match (&input, &machine) {
                    (Some(i), _) => load_presentation(i)?,
                    (None, Some(m)) => boone_encode(&load_machine(m)?)?.presentation,
                    (None, None) => bail!("--check needs --in or --machine"),
                };
                let (target, c) = parse_certificate(&p, &read(&path)?)?;
                if !verify_certificate(&p, &c, &target) {
                    bail!("{}: certificate does not verify", path.display());
                }
                println!("valid ({} entries, target {})", c.len(), format_word(&target, p.generators()));
                return Ok(Status::Proven);
            }
            let m = load_machine(machine.as_deref().ok_or_else(|| anyhow!("--machine is required"))?)?;
            let n = n.ok_or_else(|| anyhow!("--n or --check is required"))?;
            let b = boone_encode(&m)?;
            let Some(t) = halted_run(&m, n, budget)? else {
                println!("Unknown: no halt within {budget} steps");
                return Ok(Status::Unknown);
            };
            let d = derive_from_trace(&b.post, &m, &t)?;
            let c = certificate_from_derivation(&b, &d)?;
            let target = beta(&b, &Word::positive(&phi_input(n)))?;
            if !verify_certificate(&b.presentation, &c, &target) {
                bail!("internal error: certificate failed verification");
            }
            emit(&out, &format_certificate(&b.presentation, &target, &c))?;
            Ok(Status::Proven)
        }
    }
}

fn solve(cmd: Solve) -> Result<Status> {
    match cmd {
        Solve::AbelianWp { input, word: w } => abelian(Abelian::Wp { input, word: w }),
        Solve::SimpleWp { input, word: w, engine, out } => {
            let p = load_presentation(&input)?;
            let w = word(&p, &w)?;
            let v = simple_wp(&p, &w, &engine.budget(), engine.mode())?;
            report_verdict(&p, &w, v, &out)
        }
    }
}

fn format_iso(p: &GroupPresentation, q: &GroupPresentation, w: &IsoWitness) -> String {
    let mut s = format!("iso {} {}\nforward\n", p.name(), q.name());
    for (g, img) in p.generators().iter().zip(w.forward.images()) {
        s.push_str(&format!("  {g} -> {}\n", format_word(img, q.generators())));
    }
    s.push_str("backward\n");
    for (g, img) in q.generators().iter().zip(w.backward.images()) {
        s.push_str(&format!("  {g} -> {}\n", format_word(img, p.generators())));
    }
    let blocks = [
        ("forward-relators", q, &w.forward_relators),
        ("backward-relators", p, &w.backward_relators),
        ("forward-inverse", p, &w.forward_inverse),
        ("backward-inverse", q, &w.backward_inverse),
    ];
    for (name, pres, certs) in blocks {
        s.push_str(&format!("{name} {}\n", certs.len()));
        for c in certs {
            for e in &c.entries {
                s.push_str(&format!(
                    "  conj {} rel {} sign {}\n",
                    format_word(&e.conjugator, pres.generators()),
                    e.relator,
                    if e.sign == 1 { "+1" } else { "-1" }
                ));
            }
            s.push_str("  end\n");
        }
    }
    s
}

fn search(cmd: Search) -> Result<Status> {
    match cmd {
        Search::Iso { inputs, engine, out } => {
            if inputs.len() != 2 {
                bail!("search iso takes exactly two --in files");
            }
            let p = load_presentation(&inputs[0])?;
            let q = load_presentation(&inputs[1])?;
            match iso_search(&p, &q, &engine.budget()) {
                Some(w) => {
                    emit(&out, &format_iso(&p, &q, &w))?;
                    Ok(Status::Proven)
                }
                None => {
                    println!("Unknown");
                    Ok(Status::Unknown)
                }
            }
        }
        Search::NormalGen { input, engine, out } => {
            let p = load_presentation(&input)?;
            match normal_generator_search(&p, &engine.budget()) {
                Some((w, tp)) => {
                    println!("normal generator: {}", format_word(&w, p.generators()));
                    if out.out.is_some() {
                        emit(&out, &format_trivial_proof(&p.with_relator(w)?, &tp))?;
                    }
                    Ok(Status::Proven)
                }
                None => {
                    println!("Unknown");
                    Ok(Status::Unknown)
                }
            }
        }
    }
}

fn abelian(cmd: Abelian) -> Result<Status> {
    match cmd {
        Abelian::Invariants { input } => {
            println!("{}", abelian_invariants(&load_presentation(&input)?));
        }
        Abelian::Wp { input, word: w } => {
            let p = load_presentation(&input)?;
            let w = word(&p, &w)?;
            println!("{}", if AbelianSolver::new(&p).is_trivial(&w) { "Trivial" } else { "Nontrivial" });
        }
    }
    Ok(Status::Proven)
}

fn demo(cmd: Demo) -> Result<Status> {
    let Demo::Adversary { k, factors, word: w, out } = cmd;
    let mut pairs = Vec::new();
    for f in &factors {
        let (m, n) = f.rsplit_once(':').ok_or_else(|| anyhow!("factor `{f}` is not `machine:n`"))?;
        pairs.push((load_machine(m)?, n.parse::<usize>().with_context(|| format!("factor `{f}`"))?));
    }
    let sample = match &w {
        Some(text) => {
            let pis = pairs.iter().map(|(m, n)| pi(m, *n)).collect::<fpgroups::Result<Vec<_>>>()?;
            Some(word(&free_product_family(&pis)?, text)?)
        }
        None => None,
    };
    let report = adversary_demo(k, &pairs, sample.as_ref())?;
    print!("{}", report.narrative);
    if out.out.is_some() {
        emit(&out, &format_presentation(&report.product))?;
    }
    Ok(Status::Proven)
}

fn version() -> String {
    format!(
        "fpg {}\nboone-schema {}\npost-schema {}\n",
        env!("CARGO_PKG_VERSION"),
        boone_schema_checksum(),
        post_schema_checksum()
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.version {
        print!("{}", version());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: no subcommand given (try --help)");
        return ExitCode::from(1);
    };
    let result = match command {
        Command::Forge(c) => forge(c),
        Command::Prove(c) => prove(c),
        Command::Solve(c) => solve(c),
        Command::Search(c) => search(c),
        Command::Abelian(c) => abelian(c),
        Command::Demo(c) => demo(c),
    };
    match result {
        Ok(Status::Proven) => ExitCode::SUCCESS,
        Ok(Status::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
