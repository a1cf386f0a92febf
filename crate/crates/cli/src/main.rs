use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skeinrec::{
    braid_to_morse, check_relation, expand, find_link, link_table, parse_braid, parse_morse, verify_recursion,
    ClosureSide, FunctorId, FunctorSpec, MorseWord, Relation, SkeinContext, Var,
};

#[derive(Parser)]
#[command(name = "skeinrec", about = "Exact HOMFLY/Kauffman invariants and recursion functors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Homfly,
    Kauffman,
    /// Colors are framing variables; differently colored strands are transparent
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Functor {
    #[value(name = "phi-tq", alias = "phi_tq")]
    PhiTq,
    #[value(name = "phi-su", alias = "phi_su")]
    PhiSu,
    Psi,
    Chi,
}

impl Functor {
    fn spec(self) -> FunctorSpec {
        FunctorSpec::new(match self {
            Functor::PhiTq => FunctorId::PhiTq,
            Functor::PhiSu => FunctorId::PhiSu,
            Functor::Psi => FunctorId::Psi,
            Functor::Chi => FunctorId::Chi,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Framed invariant of a link
    Invariant {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Built-in link name, Morse/braid file, or inline braid `n; k1 ...`
        #[arg(long)]
        link: String,
        /// Multiply by v^(-writhe)
        #[arg(long)]
        normalize: bool,
    },
    /// State-sum expansion of a link under a functor
    Expand {
        #[arg(long, value_enum)]
        functor: Functor,
        #[arg(long)]
        link: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the recursion identity; exits nonzero when it fails
    Verify {
        #[arg(long, value_enum)]
        functor: Functor,
        #[arg(long)]
        link: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the defining relations on the functor's 2-strand image
    CheckRelations {
        #[arg(long, value_enum)]
        functor: Functor,
        #[arg(long)]
        json: bool,
    },
    /// List built-in links
    Table,
}

fn resolve_link(arg: &str) -> Result<(String, MorseWord), String> {
    if let Some(e) = find_link(arg) {
        return Ok((e.name.to_string(), e.word().clone()));
    }
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| format!("{}: {}", arg, e))?
    } else if arg.contains(';') {
        arg.to_string()
    } else {
        return Err(format!("unknown link `{}`", arg));
    };
    let word = if text.lines().any(|l| l.trim_start().starts_with("src:")) {
        parse_morse(&text).map_err(|e| e.to_string())?
    } else {
        braid_to_morse(&parse_braid(text.trim()).map_err(|e| e.to_string())?, ClosureSide::Left)
    };
    Ok((arg.to_string(), word))
}

#[derive(Serialize)]
struct TermRecord {
    weight: String,
    word: String,
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Invariant { kind, link, normalize } => {
            let (_, word) = resolve_link(&link)?;
            let (ctx, word, v) = match kind {
                Kind::Homfly => (SkeinContext::homfly(Var::T), word, Var::T),
                Kind::Kauffman => (SkeinContext::kauffman(Var::S), word.unoriented(Var::S), Var::S),
                Kind::Mixed if normalize => return Err("--normalize needs a single-colored link".into()),
                Kind::Mixed => (SkeinContext::mixed(), word, Var::T),
            };
            let mut value = ctx.eval(&word).map_err(|e| e.to_string())?;
            if normalize {
                let writhe = word.validate().map_err(|e| e.to_string())?.writhe();
                value = skeinrec::Scalar::var_pow(v, -writhe) * value;
            }
            println!("{}", value);
            Ok(true)
        }
        Command::Expand { functor, link, json } => {
            let (_, word) = resolve_link(&link)?;
            let spec = functor.spec();
            let source = spec.prepare_source(&word).map_err(|e| e.to_string())?;
            let terms = expand(&spec, &source).map_err(|e| e.to_string())?;
            if json {
                let recs: Vec<TermRecord> = terms
                    .iter()
                    .map(|t| TermRecord { weight: t.weight.to_string(), word: t.colored.to_string() })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&recs).unwrap());
            } else {
                for (i, t) in terms.iter().enumerate() {
                    println!("# term {} weight {}", i + 1, t.weight);
                    print!("{}", t.colored);
                }
            }
            Ok(true)
        }
        Command::Verify { functor, link, json } => {
            let (name, word) = resolve_link(&link)?;
            let report = verify_recursion(&functor.spec(), &word).map_err(|e| e.to_string())?;
            let rec = report.record(&name);
            if json {
                println!("{}", serde_json::to_string_pretty(&rec).unwrap());
            } else {
                println!("functor {}", rec.functor);
                println!("link {}", rec.link);
                println!("lhs {}", rec.lhs);
                println!("rhs {}", rec.rhs);
                println!("equal {}", rec.equal);
                println!("terms {}", rec.term_count);
            }
            Ok(report.equal)
        }
        Command::CheckRelations { functor, json } => {
            let spec = functor.spec();
            let mut all = true;
            let mut recs = Vec::new();
            for r in Relation::ALL {
                let rep = check_relation(&spec, r).map_err(|e| e.to_string())?;
                all &= rep.holds;
                recs.push(rep.record());
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&recs).unwrap());
            } else {
                for rec in &recs {
                    println!("{} {} {}", rec.functor, rec.relation, if rec.holds { "holds" } else { "FAILS" });
                    for line in &rec.residual {
                        println!("  {}", line);
                    }
                }
            }
            Ok(all)
        }
        Command::Table => {
            for e in link_table() {
                println!(
                    "{}\tcomponents={}\twrithe={}\tpresentations={}",
                    e.name,
                    e.components,
                    e.writhe,
                    e.presentations.len()
                );
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
