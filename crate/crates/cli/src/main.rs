use std::io::Read;
use std::process::ExitCode;

use clap::builder::BoolishValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use lch_core::constructions::{connected_sum, connected_sum_gradings, suspend_linearized};
use lch_core::corpus::{list_corpus, make_entry, CorpusPayload, Params};
use lch_core::dga::Dga;
use lch_core::indices::{
    cz_from_front, dimension_cor914, fredholm_index_cz, fredholm_index_selftangency, model_index,
    moduli_dimension, thurston_bennequin, FrontChordData, SelfTangencyVariant, WeightAnglePair,
};
use lch_core::io::{
    augmentation_to_doc, parse_rational, to_canonical_json, ComplexDoc, DgaDocument, ReportDoc, WitnessDoc,
};
use lch_core::linearized::{
    augmentation_cap, full_homology, hlc_classes_capped, homology, LinearizedComplex, PoincarePolynomial,
};
use lch_core::morphisms::{destabilization_iso, StableTameWitness};

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(lch_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Argument(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Argument(_) => "argument",
        }
    }
}

impl<E: Into<lch_core::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Core(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "lch", version, about = "Legendrian contact homology DGAs over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check ∂² = 0, degrees and actions of a DGA document.
    Check { file: String },
    /// Linearized homology classes over all augmentations.
    Hlc {
        file: String,
        /// Grading modulus to reduce to; defaults to the Maslov number.
        #[arg(long = "mod")]
        modulus: Option<u32>,
        /// Maximum number of degree-0 generators.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Suspend a linearized complex, or every class of a DGA with --from-hlc.
    Suspend {
        file: String,
        #[arg(short = 'n', long = "repetitions", default_value_t = 1)]
        repetitions: u32,
        #[arg(long)]
        from_hlc: bool,
    },
    /// Connected sum of two DGAs or two gradings documents.
    Consum {
        a: String,
        b: String,
        #[arg(long)]
        dim: u32,
    },
    /// Export a corpus entry, or `list` the catalog.
    Corpus {
        family: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        g: Option<u32>,
    },
    /// Thurston–Bennequin invariant from the generator degrees.
    Tb { file: String },
    /// Index formulas.
    Index {
        #[command(subcommand)]
        which: IndexCommand,
    },
    /// Stable tame isomorphism for a destabilization A_+ → S(A_-).
    Destab {
        plus: String,
        minus: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Check a stable tame witness between two DGAs.
    VerifyWitness { a: String, b: String, witness: String },
    /// Homology of the full algebra for a linear differential.
    Homology {
        file: String,
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
    },
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CzArgs {
    #[arg(long)]
    down: u32,
    #[arg(long)]
    up: u32,
    #[arg(long)]
    hessian: u32,
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Weighted,
    Tilde,
}

#[derive(Subcommand)]
enum IndexCommand {
    /// Conley–Zehnder index from cusp counts and Morse index.
    Cz(CzArgs),
    /// μ(A) + |a| - |b| - 1.
    #[command(allow_negative_numbers = true)]
    ModuliDim {
        #[arg(long)]
        mu_a: i64,
        #[arg(long)]
        deg_a: i64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        deg_b: Vec<i64>,
    },
    /// Moduli dimension in terms of Conley–Zehnder indices.
    #[command(allow_negative_numbers = true)]
    Cor914 {
        #[arg(long)]
        mu_a: i64,
        #[arg(long)]
        nu_a: i64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        nu_b: Vec<i64>,
        #[arg(long)]
        m: i64,
    },
    /// Fredholm index with several positive punctures.
    #[command(allow_negative_numbers = true)]
    FredholmCz {
        #[arg(long)]
        mu_b: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        nu_pos: Vec<i64>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        nu_neg: Vec<i64>,
    },
    /// Fredholm index near a self-tangency chord.
    #[command(allow_negative_numbers = true)]
    Selftangency {
        #[arg(long)]
        mu_b: i64,
        #[arg(long)]
        nu_a: i64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        nu_b: Vec<i64>,
        #[arg(long, value_delimiter = ',', num_args = 0.., value_parser = BoolishValueParser::new())]
        is_c: Vec<bool>,
        #[arg(long)]
        positive_at_c: bool,
        #[arg(long, value_enum)]
        variant: Variant,
    },
    /// Index of the model operator; each pair is `θ,μ⁺,μ⁻` in units of π.
    #[command(allow_negative_numbers = true)]
    Model {
        #[arg(long = "pair", required = true, allow_hyphen_values = true)]
        pairs: Vec<String>,
    },
}

#[derive(Serialize)]
struct ResultDocument<T: Serialize> {
    command: &'static str,
    input_digest: String,
    payload: T,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct ErrorDocument {
    error: ErrorBody,
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    let io = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

/// Parses a document, unwrapping the payload of a result document.
fn parse_doc<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    let mut v: Value = serde_json::from_slice(bytes)?;
    if let Value::Object(m) = &mut v {
        if m.contains_key("command") && m.contains_key("input_digest") {
            if let Some(p) = m.remove("payload") {
                v = p;
            }
        }
    }
    Ok(serde_json::from_value(v)?)
}

fn load_dga(bytes: &[u8]) -> Result<Dga> {
    let doc: DgaDocument = parse_doc(bytes)?;
    if doc.is_gradings_only() {
        return Err(CliError::Argument(format!(
            "`{}` has no differential",
            doc.name
        )));
    }
    Ok(doc.to_dga()?)
}

struct Digest256(Sha256);

impl Digest256 {
    fn new(command: &str) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        Digest256(h)
    }

    fn input(mut self, bytes: &[u8]) -> Self {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
        self
    }

    fn param(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        let s = format!("{key}={value}");
        self.0.update((s.len() as u64).to_le_bytes());
        self.0.update(s.as_bytes());
        self
    }

    fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

fn emit<T: Serialize>(command: &'static str, digest: Digest256, payload: T) -> String {
    to_canonical_json(&ResultDocument {
        command,
        input_digest: digest.finish(),
        payload,
    })
}

#[derive(Serialize)]
struct HlcClassDoc {
    augmentations: Vec<Vec<String>>,
    poincare: PoincarePolynomial,
}

#[derive(Serialize)]
struct HlcDoc {
    classes: Vec<HlcClassDoc>,
    modulus: u32,
}

#[derive(Serialize)]
struct SuspendDoc {
    complex: ComplexDoc,
    homology: PoincarePolynomial,
}

#[derive(Serialize)]
struct SuspendClassDoc {
    augmentations: Vec<Vec<String>>,
    homology: PoincarePolynomial,
}

#[derive(Serialize)]
struct ListedEntry {
    kind: &'static str,
    name: String,
    provenance: String,
}

#[derive(Serialize)]
struct HomologyDoc {
    dims: PoincarePolynomial,
    unit_exact: bool,
}

/// Sets coefficients to 1 and regrades mod `m`, defaulting to the Maslov number.
fn reduce(d: &Dga, m: Option<u32>) -> Result<Dga> {
    let maslov = d.maslov_number();
    let m = m.unwrap_or(maslov);
    let divides = if m == 0 { maslov == 0 } else { maslov.is_multiple_of(m) };
    if !divides {
        return Err(CliError::Argument(format!(
            "grading is only defined mod {maslov}, not mod {m}"
        )));
    }
    Ok(d.reduce_coefficients(m))
}

fn iterate_suspension(c: &LinearizedComplex, n: u32) -> LinearizedComplex {
    (0..n).fold(c.clone(), |c, _| suspend_linearized(&c))
}

fn run(cmd: Command) -> Result<String> {
    Ok(match cmd {
        Command::Check { file } => {
            let bytes = read_input(&file)?;
            let d = load_dga(&bytes)?;
            emit("check", Digest256::new("check").input(&bytes), ReportDoc::new(d.sig(), &d.check()))
        }
        Command::Hlc { file, modulus, cap } => {
            let bytes = read_input(&file)?;
            let cap = cap.unwrap_or_else(augmentation_cap);
            let d = reduce(&load_dga(&bytes)?, modulus)?;
            let classes = hlc_classes_capped(&d, cap)?
                .into_iter()
                .map(|c| HlcClassDoc {
                    augmentations: c.augmentations.iter().map(|a| augmentation_to_doc(d.sig(), a)).collect(),
                    poincare: c.poincare,
                })
                .collect();
            let digest = Digest256::new("hlc")
                .input(&bytes)
                .param("mod", modulus.map_or("default".into(), |m| m.to_string()))
                .param("cap", cap);
            emit("hlc", digest, HlcDoc { classes, modulus: d.sig().modulus() })
        }
        Command::Suspend { file, repetitions, from_hlc } => {
            let bytes = read_input(&file)?;
            let digest = Digest256::new("suspend")
                .input(&bytes)
                .param("n", repetitions)
                .param("from_hlc", from_hlc);
            if from_hlc {
                let d = reduce(&load_dga(&bytes)?, None)?;
                let classes: Vec<SuspendClassDoc> = hlc_classes_capped(&d, augmentation_cap())?
                    .into_iter()
                    .map(|c| SuspendClassDoc {
                        augmentations: c.augmentations.iter().map(|a| augmentation_to_doc(d.sig(), a)).collect(),
                        homology: homology(&iterate_suspension(&c.complex, repetitions)),
                    })
                    .collect();
                emit("suspend", digest, classes)
            } else {
                let doc: ComplexDoc = parse_doc(&bytes)?;
                let c = iterate_suspension(&doc.to_complex()?, repetitions);
                emit(
                    "suspend",
                    digest,
                    SuspendDoc {
                        homology: homology(&c),
                        complex: ComplexDoc::from_complex(&c),
                    },
                )
            }
        }
        Command::Consum { a, b, dim } => {
            let (ba, bb) = (read_input(&a)?, read_input(&b)?);
            let (da, db): (DgaDocument, DgaDocument) = (parse_doc(&ba)?, parse_doc(&bb)?);
            let digest = Digest256::new("consum").input(&ba).input(&bb).param("dim", dim);
            let out = match (da.is_gradings_only(), db.is_gradings_only()) {
                (false, false) => DgaDocument::from_dga(&connected_sum(&da.to_dga()?, &db.to_dga()?, dim)?),
                (true, true) => {
                    let s = connected_sum_gradings(&da.signature()?, &db.signature()?, dim)?;
                    DgaDocument::from_gradings(&format!("{}#{}", da.name, db.name), &s)
                }
                _ => {
                    return Err(CliError::Argument(
                        "cannot sum a full DGA with a gradings-only document".into(),
                    ))
                }
            };
            emit("consum", digest, out)
        }
        Command::Corpus { family, n, k, s, g } => {
            let mut digest = Digest256::new("corpus").param("family", &family);
            for (key, v) in [("n", n), ("k", k), ("s", s), ("g", g)] {
                if let Some(v) = v {
                    digest = digest.param(key, v);
                }
            }
            if family == "list" {
                let listed: Vec<ListedEntry> = list_corpus()
                    .into_iter()
                    .map(|e| ListedEntry {
                        kind: e.kind.as_str(),
                        name: e.name,
                        provenance: e.provenance,
                    })
                    .collect();
                return Ok(emit("corpus", digest, listed));
            }
            let entry = make_entry(&family, Params { n, k, s, g })?;
            match &entry.payload {
                CorpusPayload::Dga(d) => emit("corpus", digest, DgaDocument::from_dga(d)),
                CorpusPayload::Gradings(sig) => emit("corpus", digest, DgaDocument::from_gradings(&entry.name, sig)),
                CorpusPayload::Complex(c) => emit("corpus", digest, ComplexDoc::from_complex(c)),
            }
        }
        Command::Tb { file } => {
            let bytes = read_input(&file)?;
            let doc: DgaDocument = parse_doc(&bytes)?;
            let degrees: Vec<i64> = doc.generators.iter().map(|g| g.degree).collect();
            let tb = thurston_bennequin(doc.ambient_dim as i64, &degrees);
            emit("tb", Digest256::new("tb").input(&bytes), serde_json::json!({ "tb": tb }))
        }
        Command::Index { which } => run_index(which)?,
        Command::Destab { plus, minus, a, b } => {
            let (bp, bm) = (read_input(&plus)?, read_input(&minus)?);
            let (dp, dm) = (load_dga(&bp)?, load_dga(&bm)?);
            let phi = destabilization_iso(&dp, &dm, &a, &b)?;
            let j = dp.sig().generator(dp.sig().lookup(&a)?).degree;
            let w = StableTameWitness {
                stabilizations_left: Vec::new(),
                stabilizations_right: vec![j],
                morphism: phi,
            };
            let digest = Digest256::new("destab").input(&bp).input(&bm).param("a", &a).param("b", &b);
            emit("destab", digest, WitnessDoc::from_witness(&w, &dp, &dm))
        }
        Command::VerifyWitness { a, b, witness } => {
            let (ba, bb, bw) = (read_input(&a)?, read_input(&b)?, read_input(&witness)?);
            let (da, db) = (load_dga(&ba)?, load_dga(&bb)?);
            let doc: WitnessDoc = parse_doc(&bw)?;
            let verdict = doc.to_witness(&da, &db)?.verify(&da, &db)?;
            let digest = Digest256::new("verify-witness").input(&ba).input(&bb).input(&bw);
            emit("verify-witness", digest, serde_json::json!({ "verdict": verdict }))
        }
        Command::Homology { file, max_degree } => {
            let bytes = read_input(&file)?;
            let h = full_homology(&load_dga(&bytes)?, max_degree)?;
            let digest = Digest256::new("homology").input(&bytes).param("max_degree", max_degree);
            emit("homology", digest, HomologyDoc { dims: h.dims, unit_exact: h.unit_exact })
        }
    })
}

fn list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn run_index(which: IndexCommand) -> Result<String> {
    let (sub, digest, value) = match which {
        IndexCommand::Cz(a) => {
            let f = FrontChordData {
                down_cusps: a.down,
                up_cusps: a.up,
                hessian_index: a.hessian,
            };
            let d = Digest256::new("index")
                .param("sub", "cz")
                .param("down", a.down)
                .param("up", a.up)
                .param("hessian", a.hessian)
                .param("n", a.n);
            ("cz", d, cz_from_front(f, a.n)?)
        }
        IndexCommand::ModuliDim { mu_a, deg_a, deg_b } => {
            let d = Digest256::new("index")
                .param("sub", "moduli-dim")
                .param("mu_a", mu_a)
                .param("deg_a", deg_a)
                .param("deg_b", list(&deg_b));
            ("moduli-dim", d, moduli_dimension(mu_a, deg_a, deg_b.iter().sum()))
        }
        IndexCommand::Cor914 { mu_a, nu_a, nu_b, m } => {
            let d = Digest256::new("index")
                .param("sub", "cor914")
                .param("mu_a", mu_a)
                .param("nu_a", nu_a)
                .param("nu_b", list(&nu_b))
                .param("m", m);
            ("cor914", d, dimension_cor914(mu_a, nu_a, &nu_b, m)?)
        }
        IndexCommand::FredholmCz { mu_b, n, nu_pos, nu_neg } => {
            let d = Digest256::new("index")
                .param("sub", "fredholm-cz")
                .param("mu_b", mu_b)
                .param("n", n)
                .param("nu_pos", list(&nu_pos))
                .param("nu_neg", list(&nu_neg));
            ("fredholm-cz", d, fredholm_index_cz(mu_b, n, &nu_pos, &nu_neg)?)
        }
        IndexCommand::Selftangency {
            mu_b,
            nu_a,
            nu_b,
            is_c,
            positive_at_c,
            variant,
        } => {
            let (v, name) = match variant {
                Variant::Weighted => (SelfTangencyVariant::Weighted, "weighted"),
                Variant::Tilde => (SelfTangencyVariant::Tilde, "tilde"),
            };
            let flags: Vec<String> = is_c.iter().map(bool::to_string).collect();
            let d = Digest256::new("index")
                .param("sub", "selftangency")
                .param("mu_b", mu_b)
                .param("nu_a", nu_a)
                .param("nu_b", list(&nu_b))
                .param("is_c", flags.join(","))
                .param("positive_at_c", positive_at_c)
                .param("variant", name);
            let value = fredholm_index_selftangency(mu_b, nu_a, &nu_b, &is_c, positive_at_c, v)?;
            ("selftangency", d, value)
        }
        IndexCommand::Model { pairs } => {
            let mut d = Digest256::new("index").param("sub", "model");
            let mut parsed = Vec::with_capacity(pairs.len());
            for p in &pairs {
                let parts: Vec<&str> = p.split(',').collect();
                if parts.len() != 3 {
                    return Err(CliError::Argument(format!(
                        "pair `{p}` should be θ,μ⁺,μ⁻"
                    )));
                }
                let r = |s: &str| parse_rational(s.trim());
                let pair = WeightAnglePair::new(r(parts[0])?, r(parts[1])?, r(parts[2])?);
                d = d.param("pair", p);
                parsed.push(pair);
            }
            ("model", d, model_index(&parsed)?)
        }
    };
    Ok(emit("index", digest, serde_json::json!({ "index": sub, "value": value })))
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    print!(
        "{}",
        to_canonical_json(&ErrorDocument {
            error: ErrorBody {
                kind: kind.to_string(),
                message,
            },
        })
    );
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.render().to_string().trim_end().to_string(), 2);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.kind(), e.to_string(), 1),
    }
}
