use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use interval_core::ball_iteration::{iterate_m, Endpoints};
use interval_core::cantor_opens::{
    check_hook_identities, check_hook_presentation, check_pair_presentation, check_round_trips,
    lhook, pair_open, rhook, up, GeneratedOpen,
};
use interval_core::coeq::{default_bound, factor_generator, omega_c_witness, CstarOracle};
use interval_core::dyadic::{format_rational, Dyadic, IntervalOpen};
use interval_core::forall_c::{check_adjunction, check_frobenius, theta, PreframeBasic};
use interval_core::inverse_image::{
    cstar_contains, cstar_interval, cstar_lower, cstar_member, cstar_upper, ApproxOpen, Target,
};
use interval_core::report::Report;
use interval_core::streams::{m_s, mid, SignStream, TritStream};
use interval_core::words::{lexl, lexu, lmid, lt, midl, overlap, SElement, SignWord};
use interval_core::Error;

/// Exact arithmetic on [-1,1] with signed-digit streams, and the opens of
/// Cantor space that map onto it.
///
/// Words are strings over `-` and `+`; `_` is the empty word and `bot` the
/// adjoined bottom. Streams are written `prefix(period)`, e.g. `+-(+)`.
/// Opens of Cantor space are `{w1,w2,...}`; opens of the interval are
/// unions such as `[-1,-1/4) u (1/4,1]`.
#[derive(Parser, Debug)]
#[command(name = "interval", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate and evaluate an eventually periodic stream.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        stream: String,
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Midpoint of two streams; sign inputs use the digitwise rule.
    Midpoint {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Halve a sign stream.
    Half {
        #[arg(allow_hyphen_values = true)]
        stream: String,
    },
    /// Decide a relation between two words.
    Relate {
        #[arg(long, value_enum)]
        op: Relation,
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Build an open of Cantor space.
    Open {
        #[arg(value_enum)]
        kind: OpenKind,
        /// One word, or two components for `pair`.
        #[arg(allow_hyphen_values = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Depth-k approximant of the inverse image of an interval open.
    Cstar {
        #[command(flatten)]
        target: CstarTarget,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// Decide exactly whether `↑T` lies in the inverse image instead.
        #[arg(long, allow_hyphen_values = true)]
        member: Option<String>,
    },
    /// The image of a pair (s,t) under the right adjoint of c*.
    Forallc {
        #[arg(allow_hyphen_values = true)]
        pair: String,
    },
    /// The n-th midpoint iterate of a stream between two endpoints.
    Iterate {
        #[arg(long, allow_hyphen_values = true)]
        stream: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        minus: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        plus: String,
    },
    /// Whether a generated open satisfies the coequalizer condition.
    Coeq {
        #[arg(long, allow_hyphen_values = true)]
        check: String,
    },
    /// Factor a word through the inverse image of an interval open.
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Witness search bound; defaults to 2(|word| + depth) + 2.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Run one of the exhaustive checkers.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CstarTarget {
    /// The open `(c′(w),1]`.
    #[arg(long, allow_hyphen_values = true)]
    upper: Option<String>,
    /// The open `[-1,c′(w))`.
    #[arg(long, allow_hyphen_values = true)]
    lower: Option<String>,
    /// Any open of the interval with dyadic endpoints.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Relation {
    Lexl,
    Lexu,
    Lt,
    Overlap,
    Lmid,
    Midl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpenKind {
    Up,
    Rhook,
    Lhook,
    Pair,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Presentations,
    Adjunction,
    Frobenius,
}

fn word(s: &str) -> Result<SignWord, Error> {
    match s {
        "_" => Ok(SignWord::empty()),
        s => s.parse(),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::WitnessBoundExhausted { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    match cli.command {
        Command::Eval { stream, digits } => match stream.parse::<SignStream>() {
            Ok(s) => {
                out.push(s.approximant(digits).to_string());
                out.push(format!("exact: {}", format_rational(&s.exact_value()?)));
            }
            Err(_) => {
                let s: TritStream = stream.parse()?;
                out.push(s.approximant(digits).to_string());
                out.push(format!("exact: {}", format_rational(&s.exact_value()?)));
            }
        },
        Command::Midpoint { a, b, digits } => {
            let m = match (a.parse::<SignStream>(), b.parse::<SignStream>()) {
                (Ok(x), Ok(y)) => m_s(&x, &y),
                _ => mid(&a.parse::<TritStream>()?, &b.parse::<TritStream>()?),
            };
            out.push(m.to_string());
            out.push(m.approximant(digits).to_string());
            out.push(format!("exact: {}", format_rational(&m.exact_value()?)));
        }
        Command::Half { stream } => {
            let h = stream.parse::<SignStream>()?.half();
            out.push(h.to_string());
            out.push(format!("exact: {}", format_rational(&h.exact_value()?)));
        }
        Command::Relate { op, s, t } => {
            let (s, t) = (word(&s)?, word(&t)?);
            let holds = match op {
                Relation::Lexl => lexl(&s, &t),
                Relation::Lexu => lexu(&s, &t),
                Relation::Lt => lt(&s, &t),
                Relation::Overlap => overlap(&s, &t),
                Relation::Lmid => lmid(&s, &t),
                Relation::Midl => midl(&s, &t),
            };
            out.push(holds.to_string());
        }
        Command::Open { kind, args } => {
            let open = match (kind, args.as_slice()) {
                (OpenKind::Up, [w]) => up(&word(w)?),
                (OpenKind::Rhook, [w]) => rhook(&word(w)?),
                (OpenKind::Lhook, [w]) => lhook(&word(w)?),
                (OpenKind::Pair, [s, t]) => pair_open(&s.parse()?, &t.parse::<SElement>()?),
                _ => {
                    return Err(Error::Parse {
                        what: "open arguments",
                        input: args.join(" "),
                        reason: "expected one word, or two components for pair".into(),
                    })
                }
            };
            out.push(open.to_string());
        }
        Command::Cstar {
            target,
            member: Some(t),
            ..
        } => {
            let t = word(&t)?;
            let holds = if let Some(w) = &target.upper {
                cstar_member(&t, &Target::Upper(word(w)?))
            } else if let Some(w) = &target.lower {
                cstar_member(&t, &Target::Lower(word(w)?))
            } else {
                let v: IntervalOpen = target.interval.as_deref().unwrap_or_default().parse()?;
                cstar_contains(&v, &t)?
            };
            out.push(holds.to_string());
        }
        Command::Cstar { target, depth, .. } => {
            let approx: ApproxOpen = if let Some(w) = &target.upper {
                cstar_upper(&word(w)?)
            } else if let Some(w) = &target.lower {
                cstar_lower(&word(w)?)
            } else {
                let v: IntervalOpen = target.interval.as_deref().unwrap_or_default().parse()?;
                cstar_interval(&v)?
            };
            out.push(approx.at_depth(depth).to_string());
        }
        Command::Forallc { pair } => {
            out.push(theta(&pair.parse::<PreframeBasic>()?).to_string());
        }
        Command::Iterate {
            stream,
            steps,
            minus,
            plus,
        } => {
            let e = Endpoints::new(minus.parse::<Dyadic>()?, plus.parse::<Dyadic>()?)?;
            let ball = match stream.parse::<SignStream>() {
                Ok(s) => iterate_m(&e, &s, steps),
                Err(_) => iterate_m(&e, &stream.parse::<TritStream>()?, steps),
            };
            out.push(ball.to_string());
        }
        Command::Coeq { check } => {
            let u: GeneratedOpen = check.parse()?;
            match omega_c_witness(&u, u.max_len(), u.max_len() + 1) {
                None => out.push("true".into()),
                Some(w) => {
                    out.push("false".into());
                    out.push(format!("witness: {}", if w.is_empty() { "_".into() } else { w.to_string() }));
                }
            }
        }
        Command::Factor {
            interval,
            word: w,
            depth,
            bound,
        } => {
            let v: IntervalOpen = interval.parse()?;
            let w = word(&w)?;
            let oracle = CstarOracle::new(v)?;
            let bound = bound.unwrap_or_else(|| default_bound(&w, depth));
            out.push(factor_generator(&w, &oracle, bound)?.to_string());
        }
        Command::Check {
            suite,
            max_len,
            depth,
        } => {
            let report = match suite {
                Suite::Presentations => {
                    let mut r = Report::default();
                    for part in [
                        check_hook_identities(max_len),
                        check_hook_presentation(max_len),
                        check_pair_presentation(max_len),
                        check_round_trips(max_len),
                    ] {
                        r.sections.extend(part.sections);
                    }
                    r
                }
                Suite::Adjunction => check_adjunction(max_len, depth),
                Suite::Frobenius => check_frobenius(max_len, depth),
            };
            out.extend(report.to_string().lines().map(str::to_string));
            out.push(format!("result: {}", if report.passed() { "pass" } else { "fail" }));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
