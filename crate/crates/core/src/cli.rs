//! The `powerfree` command line.
//!
//! Output is line-oriented `key: value`; `--quiet` prints bare values.
//! Exit codes: 0 success or true verdict, 1 false verdict, 2 usage or input
//! error, 3 undecided or resource limit, 4 internal defect.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::Config;
use crate::error::Error;
use crate::extendability::{self, EnumerationLimits, ExtendStatus};
use crate::gamma::{check_gamma, GammaWitness};
use crate::generators::{relabel, theta_word, thue_morse, RightInfiniteWord};
use crate::par::{self, Execution};
use crate::repetition::{is_power_free, max_factor_exponent};
use crate::transition::{build_transition, describe_error, minimal_transition_oracle};
use crate::words::{decode, Alphabet, PowerBound, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "powerfree",
    version,
    about = "Power-free words and transition words"
)]
struct Cli {
    /// Print bare verdicts and words only.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Generator {
    ThueMorse,
    Theta,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a word avoids an exponent bound.
    Check {
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Alphabet size (default: smallest containing the word).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Largest exponent of a factor, with its period and span.
    Maxexp {
        #[arg(long)]
        word: String,
    },
    /// Prefix of a shipped morphic word.
    Generate {
        #[arg(long, value_enum)]
        word: Generator,
        #[arg(long)]
        length: usize,
        /// Letter map such as `0:1,1:2`.
        #[arg(long)]
        relabel: Option<String>,
    },
    /// All power-free words of a given length, in lexicographic order.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        count_only: bool,
        /// Worker threads (1 runs sequentially).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Bounded-depth extendability probe.
    Extendable {
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        depth: usize,
    },
    /// Property report for a candidate Γ witness.
    GammaCheck {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "")]
        w1: String,
        #[arg(long, default_value = "")]
        w2: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "")]
        g: String,
        /// The infinite word `t`.
        #[arg(long, value_enum)]
        t: Generator,
        /// Letter map applied to `t`, such as `0:0,1:1`.
        #[arg(long)]
        t_relabel: Option<String>,
        /// Letters of `t` examined beyond the witness.
        #[arg(long, default_value_t = 512)]
        window: usize,
    },
    /// Construct a transition word from `u` to `v`.
    Transition {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        v: String,
        /// Shared letter (default: the largest letter).
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        probe_depth: Option<usize>,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Shortest, lexicographically first transition word by exhaustive search.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        v: String,
        #[arg(long)]
        max_len: usize,
    },
}

/// Parses `N`, `N/D`, `N+` or `N/D+`.
pub fn parse_power_bound(text: &str) -> crate::error::Result<PowerBound> {
    text.parse()
}

fn parse_word(text: &str, alphabet: Alphabet) -> crate::error::Result<Word> {
    if text == "ε" {
        return Ok(Word::empty(alphabet));
    }
    Word::parse(text, alphabet)
}

fn parse_letter(text: &str, alphabet: Alphabet) -> crate::error::Result<u8> {
    let w = parse_word(text, alphabet)?;
    match w.letters() {
        [c] => Ok(*c),
        _ => Err(Error::InvalidArgument(format!(
            "expected one letter, got {text:?}"
        ))),
    }
}

fn parse_map(text: &str) -> crate::error::Result<Vec<(u8, u8)>> {
    text.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("bad map entry {pair:?}")))?;
            match (decode(a.trim())?.as_slice(), decode(b.trim())?.as_slice()) {
                ([from], [to]) => Ok((*from, *to)),
                _ => Err(Error::InvalidArgument(format!("bad map entry {pair:?}"))),
            }
        })
        .collect()
}

fn generator(which: Generator, map: Option<&str>) -> crate::error::Result<RightInfiniteWord> {
    let base = match which {
        Generator::ThueMorse => thue_morse(),
        Generator::Theta => theta_word(),
    };
    match map {
        None => Ok(base),
        Some(text) => {
            let mapping = parse_map(text)?;
            let top = mapping
                .iter()
                .map(|&(_, to)| to as usize + 1)
                .max()
                .unwrap_or(1);
            let target = Alphabet::new(top.max(base.alphabet().size()))?;
            relabel(base, &mapping, target)
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e.root() {
        Error::Undecided(_) | Error::ResourceLimit(_) => EXIT_UNDECIDED,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    quiet: bool,
}

impl Output<'_> {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> std::io::Result<()> {
        if !self.quiet {
            writeln!(self.out, "{key}: {value}")?;
        }
        Ok(())
    }

    fn bare(&mut self, value: impl std::fmt::Display) -> std::io::Result<()> {
        if self.quiet {
            writeln!(self.out, "{value}")?;
        }
        Ok(())
    }
}

enum Failure {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn execute(cli: Cli, o: &mut Output<'_>) -> Result<i32, Failure> {
    match cli.command {
        Command::Check { alpha, word, k } => {
            let bound = parse_power_bound(&alpha)?;
            let word = match k {
                Some(k) => parse_word(&word, Alphabet::new(k)?)?,
                None if word == "ε" => Word::empty(Alphabet::new(1)?),
                None => Word::parse_inferred(&word)?,
            };
            let verdict = is_power_free(&word, bound);
            o.kv("power-free", verdict)?;
            o.bare(verdict)?;
            if !verdict {
                let r = max_factor_exponent(&word)?;
                o.kv(
                    "max-exponent",
                    format_args!(
                        "{} period={} span={}..{}",
                        r.max_exponent, r.witness_period, r.witness_span.0, r.witness_span.1
                    ),
                )?;
            }
            Ok(if verdict { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Maxexp { word } => {
            let word = Word::parse_inferred(&word)?;
            let r = max_factor_exponent(&word)?;
            o.kv(
                "max-exponent",
                format_args!(
                    "{} period={} span={}..{}",
                    r.max_exponent, r.witness_period, r.witness_span.0, r.witness_span.1
                ),
            )?;
            o.kv(
                "witness",
                word.slice(r.witness_span.0..r.witness_span.1).encode(),
            )?;
            o.bare(format_args!(
                "{} period={}",
                r.max_exponent, r.witness_period
            ))?;
            Ok(EXIT_OK)
        }
        Command::Generate {
            word,
            length,
            relabel,
        } => {
            let mut stream = generator(word, relabel.as_deref())?;
            let prefix = stream.prefix(length)?;
            o.kv("prefix", prefix.encode())?;
            o.bare(prefix.encode())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            k,
            alpha,
            length,
            count_only,
            jobs,
        } => {
            let bound = parse_power_bound(&alpha)?;
            let exec = match jobs {
                Some(1) => Execution::Sequential,
                _ => Execution::Parallel,
            };
            let limits = EnumerationLimits::default();
            let run = || -> crate::error::Result<(u64, Vec<Word>)> {
                if count_only {
                    Ok((
                        extendability::count_with(k, bound, length, exec, &limits)?,
                        Vec::new(),
                    ))
                } else {
                    let words = extendability::enumerate_with(k, bound, length, exec, &limits)?;
                    Ok((words.len() as u64, words))
                }
            };
            let (count, words) = match jobs {
                Some(n) if n > 1 => par::with_threads(n, run)?,
                _ => run()?,
            };
            for w in &words {
                writeln!(o.out, "{}", w.encode())?;
            }
            o.kv("count", count)?;
            if count_only {
                o.bare(count)?;
            }
            Ok(EXIT_OK)
        }
        Command::Extendable {
            side,
            k,
            alpha,
            word,
            depth,
        } => {
            let bound = parse_power_bound(&alpha)?;
            let word = parse_word(&word, Alphabet::new(k)?)?;
            let verdict = match side {
                Side::Right => extendability::right_extendable(&word, k, bound, depth)?,
                Side::Left => extendability::left_extendable(&word, k, bound, depth)?,
            };
            o.kv("status", verdict.status)?;
            o.kv("depth", verdict.depth)?;
            if let Some(w) = &verdict.witness {
                o.kv("witness", w.encode())?;
            }
            o.bare(verdict.status)?;
            Ok(match verdict.status {
                ExtendStatus::ExtendableToDepth => EXIT_OK,
                ExtendStatus::NotExtendable => EXIT_FALSE,
                ExtendStatus::Undecided => EXIT_UNDECIDED,
            })
        }
        Command::GammaCheck {
            k,
            alpha,
            w1,
            w2,
            x,
            g,
            t,
            t_relabel,
            window,
        } => {
            let bound = parse_power_bound(&alpha)?;
            let alphabet = Alphabet::new(k)?;
            let t = generator(t, t_relabel.as_deref())?;
            if t.alphabet().size() > k {
                return Err(Error::InvalidArgument(format!("t uses letters outside Σ_{k}")).into());
            }
            let mut witness = GammaWitness {
                w1: parse_word(&w1, alphabet)?,
                w2: parse_word(&w2, alphabet)?,
                x: parse_letter(&x, alphabet)?,
                g: parse_word(&g, alphabet)?,
                t,
            };
            let report = check_gamma(&mut witness, k, bound, window)?;
            if !o.quiet {
                writeln!(o.out, "{report}")?;
            }
            o.kv("valid", report.all())?;
            o.bare(report.all())?;
            Ok(if report.all() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Transition {
            k,
            alpha,
            u,
            v,
            x,
            probe_depth,
            emit_certificate,
        } => {
            let bound = parse_power_bound(&alpha)?;
            let alphabet = Alphabet::new(k)?;
            let mut config = Config::default();
            if let Some(x) = x {
                config.x_override = Some(parse_letter(&x, alphabet)?);
            }
            if let Some(d) = probe_depth {
                config.probe_depth = d;
            }
            let u = parse_word(&u, alphabet)?;
            let v = parse_word(&v, alphabet)?;
            let cert = build_transition(&u, &v, k, bound, &config)?;
            let text = cert.to_text();
            if let Some(path) = emit_certificate {
                std::fs::write(&path, &text)?;
            }
            if !o.quiet {
                write!(o.out, "{text}")?;
            }
            o.bare(cert.w.encode())?;
            Ok(if cert.verified() {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            })
        }
        Command::Oracle {
            k,
            alpha,
            u,
            v,
            max_len,
        } => {
            let bound = parse_power_bound(&alpha)?;
            let alphabet = Alphabet::new(k)?;
            let u = parse_word(&u, alphabet)?;
            let v = parse_word(&v, alphabet)?;
            match minimal_transition_oracle(&u, &v, k, bound, max_len)? {
                Some(w) => {
                    o.kv("transition", w.encode())?;
                    o.kv("length", w.len())?;
                    o.bare(w.encode())?;
                    Ok(EXIT_OK)
                }
                None => {
                    o.kv("transition", "none")?;
                    o.bare("none")?;
                    Ok(EXIT_FALSE)
                }
            }
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let quiet = cli.quiet;
    let mut o = Output { out, quiet };
    match execute(cli, &mut o) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {}", describe_error(&e));
            error_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["powerfree"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_examples() {
        let (code, out, _) = call(&["check", "--alpha", "2", "--word", "012021012102"]);
        assert_eq!((code, out.as_str()), (0, "power-free: true\n"));
        let (code, out, _) = call(&["check", "--alpha", "2", "--word", "00"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("power-free: false\nmax-exponent: 2 period=1"));
        let (code, out, _) = call(&["check", "--alpha", "2", "--word", "00", "--quiet"]);
        assert_eq!((code, out.as_str()), (1, "false\n"));
    }

    #[test]
    fn maxexp_examples() {
        let (code, out, _) = call(&["maxexp", "--word", "1234123"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("max-exponent: 7/4 period=4 span=0..7\n"));
        let (_, out, _) = call(&["--quiet", "maxexp", "--word", "1234123"]);
        assert_eq!(out, "7/4 period=4\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["check", "--alpha", "x", "--word", "0"]).0, 2);
        assert_eq!(call(&["check", "--word", "0"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(
            call(&[
                "generate",
                "--word",
                "theta",
                "--length",
                "3",
                "--relabel",
                "0:1,1:1,2:3"
            ])
            .0,
            2
        );
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn parse_map_format() {
        assert_eq!(parse_map("0:1,1:2").unwrap(), vec![(0, 1), (1, 2)]);
        assert!(parse_map("0-1").is_err());
        assert!(parse_map("01:2").is_err());
    }
}
