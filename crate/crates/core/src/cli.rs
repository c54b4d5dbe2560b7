//! The `palc` command line: `check`, `classify`, `query` and `ranges`.
//!
//! Exit codes: 0 success, 1 inconsistent knowledge base, 2 usage or parse
//! error, 3 vacuous query antecedent, 4 soundness violation (an exact range
//! outside its local range; never expected).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::atoms::{DefinitionIndex, DEFAULT_ATOM_CAP};
use crate::concept::{normalize, Concept};
use crate::hierarchy::classify;
use crate::interval::Interval;
use crate::kb::KnowledgeBase;
use crate::oracle::{Consistency, ExactOracle, InconsistencyReport, OracleError, PairRange, Provenance};
use crate::parser::{parse_concept, parse_kb, ParseDiagnostic};
use crate::propagation::{
    propagate_tracked, IntervalMatrix, LocalInconsistency, Propagation, PropagationOptions, PropagationOutcome,
    TrackedConceptSet, DEFAULT_MAX_SWEEPS,
};
use crate::rational::{format_rational, max, Rational, RationalJson};
use crate::report::{
    describe_interval, describe_rational, trace_json, Agreement, CheckReport, HierarchyReport, MethodVerdict,
    QueryReport, QuerySpec, RangeRow, RangesReport, Timings,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VACUOUS: i32 = 3;
pub const EXIT_SOUNDNESS: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "palc", version, about = "Reason over ALC terminologies with interval-valued conditional probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the knowledge base admits a model.
    Check {
        file: PathBuf,
        #[command(flatten)]
        opts: MethodOpts,
    },
    /// Print the subsumption hierarchy of the named concepts.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Tightest known range for one conditional probability.
    Query {
        file: PathBuf,
        /// Antecedent concept.
        #[arg(long)]
        from: String,
        /// Consequent concept.
        #[arg(long)]
        to: String,
        #[command(flatten)]
        opts: MethodOpts,
    },
    /// Ranges for every ordered pair of named concepts.
    Ranges {
        file: PathBuf,
        /// Run both methods and report agreement and slack per pair.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        opts: MethodOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Local,
    Exact,
    Both,
}

impl Method {
    fn local(self) -> bool {
        self != Method::Exact
    }

    fn exact(self) -> bool {
        self != Method::Local
    }

    fn name(self) -> &'static str {
        match self {
            Method::Local => "local",
            Method::Exact => "exact",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Args)]
struct MethodOpts {
    #[arg(long, value_enum, default_value_t = Method::Local)]
    method: Method,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Propagation sweep cap.
    #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
    max_sweeps: usize,
    /// Largest signature the exact oracle will enumerate atoms for.
    #[arg(long, default_value_t = DEFAULT_ATOM_CAP)]
    atom_cap: usize,
    /// Print the propagation trace.
    #[arg(long)]
    trace: bool,
    /// Report wall-clock time per method.
    #[arg(long)]
    timings: bool,
    /// Shuffle the propagation worklist with this seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl MethodOpts {
    fn propagation(&self) -> PropagationOptions {
        PropagationOptions {
            max_sweeps: self.max_sweeps,
            shuffle_seed: self.seed,
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Early exit carrying a status code; the message is already printed.
struct Exit(i32);

type Run<T> = Result<T, Exit>;

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        let _ = writeln!($w, $($arg)*);
    };
}

/// Runs the command line given in `args` (including the program name) and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Check { file, opts } => cmd_check(&mut io, &file, &opts),
        Command::Classify { file, json } => cmd_classify(&mut io, &file, json),
        Command::Query { file, from, to, opts } => cmd_query(&mut io, &file, &from, &to, &opts),
        Command::Ranges { file, compare, opts } => cmd_ranges(&mut io, &file, compare, &opts),
    };
    match result {
        Ok(code) | Err(Exit(code)) => code,
    }
}

fn print_diagnostics(io: &mut Io, origin: &str, diagnostics: &[ParseDiagnostic]) {
    for d in diagnostics {
        say!(io.err, "{origin}:{d}");
    }
}

fn load(io: &mut Io, file: &Path) -> Run<KnowledgeBase> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        say!(io.err, "palc: cannot read {}: {e}", file.display());
        Exit(EXIT_USAGE)
    })?;
    let origin = file.display().to_string();
    let parsed = parse_kb(&text);
    print_diagnostics(io, &origin, &parsed.diagnostics);
    if parsed.has_errors() {
        return Err(Exit(EXIT_USAGE));
    }
    parsed.into_kb().map_err(|diagnostics| {
        print_diagnostics(io, &origin, &diagnostics);
        Exit(EXIT_USAGE)
    })
}

fn emit_json(io: &mut Io, value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    say!(io.out, "{text}");
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn oracle<'k>(io: &mut Io, kb: &'k KnowledgeBase, cap: usize) -> Run<ExactOracle<'k>> {
    ExactOracle::with_atom_cap(kb, cap).map_err(|e| {
        say!(io.err, "palc: exact method unavailable: {e}");
        Exit(EXIT_USAGE)
    })
}

fn warn_non_convergence(io: &mut Io, p: &Propagation) {
    say!(
        io.err,
        "warning: propagation stopped after {} sweeps without reaching a fixpoint; ranges are sound but may not be tightest",
        p.sweeps
    );
}

fn hint_compare(io: &mut Io, opts: &MethodOpts) {
    if opts.method == Method::Local && !opts.json {
        say!(io.err, "hint: local ranges may be wider than the tightest ones; use --method both to compare with the exact oracle");
    }
}

fn describe_constraint(kb: &KnowledgeBase, p: Provenance) -> String {
    let (which, i) = match p {
        Provenance::Lower(i) => ("lower", i),
        Provenance::Upper(i) => ("upper", i),
    };
    let pc = &kb.conditionings()[i];
    format!("{which} bound of conditioning #{i} ({} -> {} : {})", pc.antecedent, pc.consequent, pc.range)
}

fn local_verdict(kb: &KnowledgeBase, outcome: &PropagationOutcome) -> MethodVerdict {
    match outcome {
        PropagationOutcome::Inconsistent(r) => MethodVerdict {
            consistent: false,
            detail: r.conflict.to_string(),
            trace: Some(trace_json(&r.trace)),
            certificate: None,
            witness: None,
        },
        PropagationOutcome::Converged(p) | PropagationOutcome::NonConvergence(p) => MethodVerdict {
            consistent: true,
            detail: format!(
                "no conflict among {} tracked concepts and {} conditionings after {} sweeps",
                p.matrix.len(),
                kb.conditionings().len(),
                p.sweeps
            ),
            trace: None,
            certificate: None,
            witness: None,
        },
    }
}

fn exact_verdict(oracle: &ExactOracle) -> MethodVerdict {
    match oracle.consistency() {
        Consistency::Consistent { witness } => MethodVerdict {
            consistent: true,
            detail: format!("model found over {} atoms", oracle.space().len()),
            trace: None,
            certificate: None,
            witness: Some(witness.weights().iter().map(RationalJson::from_rational).collect()),
        },
        Consistency::Inconsistent(InconsistencyReport::EmptyPolytope { multipliers }) => MethodVerdict {
            consistent: false,
            detail: "no probability distribution over the atoms satisfies every conditioning".into(),
            trace: None,
            certificate: Some(multipliers.iter().map(RationalJson::from_rational).collect()),
            witness: None,
        },
        Consistency::Inconsistent(InconsistencyReport::ForcedEmptyAntecedent { index, antecedent }) => MethodVerdict {
            consistent: false,
            detail: format!(
                "conditioning #{index} needs `{antecedent}` to be non-empty, but every model gives it probability 0"
            ),
            trace: None,
            certificate: None,
            witness: None,
        },
    }
}

fn print_local_conflict(io: &mut Io, r: &LocalInconsistency) {
    say!(io.out, "inconsistent (local): {}", r.conflict);
    say!(io.out, "trace:");
    let _ = io.out.write_all(r.trace.render().as_bytes());
}

fn print_exact_verdict(io: &mut Io, kb: &KnowledgeBase, oracle: &ExactOracle) {
    match oracle.consistency() {
        Consistency::Consistent { witness } => {
            say!(io.out, "consistent (exact): model found over {} atoms", oracle.space().len());
            for (i, w) in witness.weights().iter().enumerate() {
                if !num_traits::Zero::is_zero(w) {
                    say!(io.out, "  {} : {}", oracle.space().atom_concept(i), describe_rational(w));
                }
            }
        }
        Consistency::Inconsistent(InconsistencyReport::EmptyPolytope { multipliers }) => {
            say!(io.out, "inconsistent (exact): no probability distribution over the atoms satisfies every conditioning");
            say!(io.out, "certificate (nonnegative multipliers whose combination is negative on every atom):");
            for (m, c) in multipliers.iter().zip(&oracle.polytope().constraints) {
                if !num_traits::Zero::is_zero(m) {
                    say!(io.out, "  {} x {}", format_rational(m), describe_constraint(kb, c.provenance));
                }
            }
        }
        Consistency::Inconsistent(InconsistencyReport::ForcedEmptyAntecedent { .. }) => {
            say!(io.out, "inconsistent (exact): {}", exact_verdict(oracle).detail);
        }
    }
}

fn cmd_check(io: &mut Io, file: &Path, opts: &MethodOpts) -> Run<i32> {
    let kb = load(io, file)?;
    let mut timings = Timings {
        local_ms: None,
        exact_ms: None,
    };
    let local = opts.method.local().then(|| {
        let start = Instant::now();
        let outcome = propagate_tracked(&kb, &TrackedConceptSet::new(&kb), &opts.propagation());
        timings.local_ms = Some(millis(start));
        outcome
    });
    let exact = if opts.method.exact() {
        let start = Instant::now();
        let o = oracle(io, &kb, opts.atom_cap)?;
        o.consistency();
        timings.exact_ms = Some(millis(start));
        Some(o)
    } else {
        None
    };

    let local_ok = local.as_ref().map(|o| !matches!(o, PropagationOutcome::Inconsistent(_)));
    let exact_ok = exact.as_ref().map(|o| o.consistency().is_consistent());
    let unsound = local_ok == Some(false) && exact_ok == Some(true);
    let consistent = local_ok.unwrap_or(true) && exact_ok.unwrap_or(true);

    if opts.json {
        let report = CheckReport {
            method: opts.method.name().into(),
            consistent,
            local: local.as_ref().map(|o| {
                let mut v = local_verdict(&kb, o);
                if opts.trace {
                    v.trace = o.propagation().map(|p| trace_json(&p.trace)).or(v.trace);
                }
                v
            }),
            exact: exact.as_ref().map(|o| exact_verdict(o)),
            timings: opts.timings.then_some(timings.clone()),
        };
        emit_json(io, &report);
    } else {
        if let Some(outcome) = &local {
            match outcome {
                PropagationOutcome::Inconsistent(r) => print_local_conflict(io, r),
                PropagationOutcome::Converged(p) | PropagationOutcome::NonConvergence(p) => {
                    say!(io.out, "consistent (local): {}", local_verdict(&kb, outcome).detail);
                    if opts.trace {
                        let _ = io.out.write_all(p.trace.render().as_bytes());
                    }
                }
            }
        }
        if let Some(o) = &exact {
            print_exact_verdict(io, &kb, o);
        }
        print_timings(io, opts, &timings);
    }
    if let Some(PropagationOutcome::NonConvergence(p)) = &local {
        warn_non_convergence(io, p);
    }
    if unsound {
        say!(io.err, "palc: soundness violation: local propagation rejected a knowledge base the exact oracle satisfies");
        return Ok(EXIT_SOUNDNESS);
    }
    Ok(if consistent { EXIT_OK } else { EXIT_INCONSISTENT })
}

fn print_timings(io: &mut Io, opts: &MethodOpts, t: &Timings) {
    if !opts.timings {
        return;
    }
    let mut parts = Vec::new();
    if let Some(ms) = t.local_ms {
        parts.push(format!("local {ms:.3} ms"));
    }
    if let Some(ms) = t.exact_ms {
        parts.push(format!("exact {ms:.3} ms"));
    }
    say!(io.out, "timings: {}", parts.join(", "));
}

fn cmd_classify(io: &mut Io, file: &Path, json: bool) -> Run<i32> {
    let kb = load(io, file)?;
    let h = classify(kb.terminology());
    if json {
        emit_json(io, &HierarchyReport::from(&h));
    } else {
        let _ = io.out.write_all(h.render().as_bytes());
    }
    Ok(EXIT_OK)
}

/// Parses, checks and rewrites a query operand.
fn query_concept(io: &mut Io, kb: &KnowledgeBase, flag: &str, text: &str) -> Run<Concept> {
    let c = parse_concept(text).map_err(|diagnostics| {
        print_diagnostics(io, flag, &diagnostics);
        Exit(EXIT_USAGE)
    })?;
    if let Err(e) = kb.terminology().check_concept(&c) {
        say!(io.err, "{flag}: {e}");
        return Err(Exit(EXIT_USAGE));
    }
    DefinitionIndex::new(kb.terminology()).propositionalize(&c).map_err(|e| {
        say!(io.err, "{flag}: {e}");
        Exit(EXIT_USAGE)
    })
}

/// Local answer for one pair: `None` when the antecedent is vacuous.
fn local_pair(m: &IntervalMatrix, a: &Concept, c: &Concept) -> Option<Interval> {
    if normalize(a) == Concept::Bottom {
        return None;
    }
    let x = m.tracked().position(a).expect("antecedent is tracked");
    if m.is_vacuous(x) {
        return None;
    }
    Some(match m.tracked().position(c) {
        Some(y) => m.get(x, y).clone(),
        None => Interval::zero(),
    })
}

fn cmd_query(io: &mut Io, file: &Path, from: &str, to: &str, opts: &MethodOpts) -> Run<i32> {
    let kb = load(io, file)?;
    let a = query_concept(io, &kb, "--from", from)?;
    let c = query_concept(io, &kb, "--to", to)?;
    let mut timings = Timings {
        local_ms: None,
        exact_ms: None,
    };

    let mut trace = None;
    let mut local: Option<Option<Interval>> = None;
    if opts.method.local() {
        let start = Instant::now();
        let tracked = TrackedConceptSet::with_extra(&kb, &[a.clone(), c.clone()]);
        let outcome = propagate_tracked(&kb, &tracked, &opts.propagation());
        timings.local_ms = Some(millis(start));
        match &outcome {
            PropagationOutcome::Inconsistent(r) => {
                if opts.json {
                    emit_json(io, &local_verdict(&kb, &outcome));
                } else {
                    print_local_conflict(io, r);
                }
                return Ok(EXIT_INCONSISTENT);
            }
            PropagationOutcome::NonConvergence(p) => warn_non_convergence(io, p),
            PropagationOutcome::Converged(_) => {}
        }
        let p = outcome.propagation().expect("not inconsistent");
        if opts.trace {
            trace = Some(p.trace.clone());
        }
        local = Some(local_pair(&p.matrix, &a, &c));
    }

    let mut exact: Option<Option<Interval>> = None;
    if opts.method.exact() {
        let start = Instant::now();
        let o = oracle(io, &kb, opts.atom_cap)?;
        let result = o.entail_range(&a, &c);
        timings.exact_ms = Some(millis(start));
        exact = Some(match result {
            Ok(r) => Some(r.range),
            Err(OracleError::VacuousAntecedent { .. }) => None,
            Err(OracleError::InconsistentKb(_)) => {
                if opts.json {
                    emit_json(io, &exact_verdict(&o));
                } else {
                    print_exact_verdict(io, &kb, &o);
                }
                return Ok(EXIT_INCONSISTENT);
            }
            Err(e) => {
                say!(io.err, "palc: {e}");
                return Ok(EXIT_USAGE);
            }
        });
    }

    let local_vacuous = local == Some(None);
    let exact_vacuous = exact == Some(None);
    let agreement = if local_vacuous && exact.as_ref().is_some_and(Option::is_some) {
        Agreement::SoundnessViolation
    } else if local_vacuous || exact_vacuous {
        Agreement::Vacuous
    } else {
        Agreement::compare(local.as_ref().and_then(Option::as_ref), exact.as_ref().and_then(Option::as_ref))
    };

    if opts.json {
        let report = QueryReport {
            query: QuerySpec {
                antecedent: from.trim().to_string(),
                consequent: to.trim().to_string(),
                method: opts.method.name().into(),
            },
            local: local.as_ref().and_then(Option::as_ref).map(Into::into),
            exact: exact.as_ref().and_then(Option::as_ref).map(Into::into),
            agreement,
            trace: trace.as_ref().map(trace_json),
            timings: opts.timings.then_some(timings.clone()),
        };
        emit_json(io, &report);
    } else {
        say!(io.out, "{} -> {}", from.trim(), to.trim());
        let show = |r: &Option<Interval>| r.as_ref().map_or("vacuous".to_string(), describe_interval);
        if let Some(l) = &local {
            say!(io.out, "  local: {}", show(l));
        }
        if let Some(e) = &exact {
            say!(io.out, "  exact: {}", show(e));
        }
        if opts.method == Method::Both {
            say!(io.out, "  agreement: {}", agreement.as_str());
        }
        if let Some(t) = &trace {
            say!(io.out, "trace:");
            let _ = io.out.write_all(t.render().as_bytes());
        }
        print_timings(io, opts, &timings);
        hint_compare(io, opts);
    }

    Ok(match agreement {
        Agreement::SoundnessViolation => {
            say!(io.err, "palc: soundness violation: the exact range is not contained in the local range");
            EXIT_SOUNDNESS
        }
        Agreement::Vacuous => {
            say!(io.err, "palc: antecedent `{}` has probability 0 in every model; the conditional is undefined", from.trim());
            EXIT_VACUOUS
        }
        _ => EXIT_OK,
    })
}

fn cmd_ranges(io: &mut Io, file: &Path, compare: bool, opts: &MethodOpts) -> Run<i32> {
    let kb = load(io, file)?;
    let method = if compare { Method::Both } else { opts.method };
    let named: Vec<Concept> = kb.terminology().signature().iter().map(|s| Concept::Atom(s.clone())).collect();
    let mut timings = Timings {
        local_ms: None,
        exact_ms: None,
    };

    let mut local = None;
    let mut trace = None;
    if method.local() {
        let start = Instant::now();
        let outcome = propagate_tracked(&kb, &TrackedConceptSet::new(&kb), &opts.propagation());
        timings.local_ms = Some(millis(start));
        match outcome {
            PropagationOutcome::Inconsistent(r) => {
                if opts.json {
                    emit_json(io, &local_verdict(&kb, &PropagationOutcome::Inconsistent(r)));
                } else {
                    print_local_conflict(io, &r);
                }
                return Ok(EXIT_INCONSISTENT);
            }
            PropagationOutcome::NonConvergence(p) => {
                warn_non_convergence(io, &p);
                trace = opts.trace.then(|| p.trace.clone());
                local = Some(p.matrix);
            }
            PropagationOutcome::Converged(p) => {
                trace = opts.trace.then(|| p.trace.clone());
                local = Some(p.matrix);
            }
        }
    }

    let mut exact = None;
    if method.exact() {
        let start = Instant::now();
        let o = oracle(io, &kb, opts.atom_cap)?;
        match o.minimal_ranges(&named) {
            Ok(r) => exact = Some(r),
            Err(OracleError::InconsistentKb(_)) => {
                if opts.json {
                    emit_json(io, &exact_verdict(&o));
                } else {
                    print_exact_verdict(io, &kb, &o);
                }
                return Ok(EXIT_INCONSISTENT);
            }
            Err(e) => {
                say!(io.err, "palc: {e}");
                return Ok(EXIT_USAGE);
            }
        }
        timings.exact_ms = Some(millis(start));
    }

    let n = named.len();
    let mut rows = Vec::with_capacity(n * n);
    let mut text_rows = Vec::with_capacity(n * n);
    let mut max_slack: Option<Rational> = None;
    let mut violation = false;
    for (x, a) in named.iter().enumerate() {
        for (y, c) in named.iter().enumerate() {
            let l = local.as_ref().map(|m| local_pair(m, a, c));
            let e = exact.as_ref().map(|r: &Vec<PairRange>| match &r[x * n + y] {
                PairRange::Entailed(e) => Some(e.range.clone()),
                PairRange::Vacuous { .. } => None,
            });
            let agreement = match (&l, &e) {
                (Some(None), Some(Some(_))) => Agreement::SoundnessViolation,
                (Some(None), _) | (_, Some(None)) => Agreement::Vacuous,
                _ => Agreement::compare(l.as_ref().and_then(Option::as_ref), e.as_ref().and_then(Option::as_ref)),
            };
            violation |= agreement == Agreement::SoundnessViolation;
            let slack = match (&l, &e) {
                (Some(Some(l)), Some(Some(e))) => Some(l.width() - e.width()),
                _ => None,
            };
            if let Some(s) = &slack {
                max_slack = Some(max_slack.map_or(s.clone(), |m| max(&m, s)));
            }
            let show = |r: &Option<Option<Interval>>| match r {
                Some(Some(i)) => Some(describe_interval(i)),
                Some(None) => Some("vacuous".to_string()),
                None => None,
            };
            let mut line = format!("{a} -> {c} :");
            match (show(&l), show(&e)) {
                (Some(l), Some(e)) => line.push_str(&format!(" local {l}  exact {e}")),
                (Some(v), None) | (None, Some(v)) => line.push_str(&format!(" {v}")),
                (None, None) => {}
            }
            if compare {
                line.push_str(&format!("  {}", agreement.as_str()));
                if let Some(s) = &slack {
                    line.push_str(&format!(" slack {}", format_rational(s)));
                }
            }
            text_rows.push(line);
            rows.push(RangeRow {
                antecedent: a.to_string(),
                consequent: c.to_string(),
                local: l.as_ref().and_then(Option::as_ref).map(Into::into),
                exact: e.as_ref().and_then(Option::as_ref).map(Into::into),
                agreement,
                slack: slack.as_ref().map(RationalJson::from_rational),
            });
        }
    }

    if opts.json {
        emit_json(
            io,
            &RangesReport {
                method: method.name().into(),
                concepts: named.iter().map(ToString::to_string).collect(),
                rows,
                max_slack: max_slack.as_ref().map(RationalJson::from_rational),
                timings: opts.timings.then_some(timings.clone()),
            },
        );
    } else {
        for line in &text_rows {
            say!(io.out, "{line}");
        }
        if compare {
            if let Some(s) = &max_slack {
                say!(io.out, "max slack: {}", describe_rational(s));
            }
        }
        if let Some(t) = &trace {
            say!(io.out, "trace:");
            let _ = io.out.write_all(t.render().as_bytes());
        }
        print_timings(io, opts, &timings);
        if !compare {
            hint_compare(io, opts);
        }
    }
    if violation {
        say!(io.err, "palc: soundness violation: some exact range is not contained in its local range");
        return Ok(EXIT_SOUNDNESS);
    }
    Ok(EXIT_OK)
}
