//! Subcommand dispatch for the tree-arithmetic kernel: stable text output,
//! JSON mirrors behind `--json`, exit code 0 on success, 1 on domain
//! errors, 2 on malformed input or usage.

use arithmetree::dendriform::{
    decompose_grove, dend_left, dend_right, is_prime, l_mult, ltimes, omega_expr, over, solve_left,
    star, under,
};
use arithmetree::freeprob::{
    cumulants_from_moments, free_joint_moments, freeness_report, moments_from_cumulants,
    parse_freeness_spec, MomentTable, DEFAULT_BOUND,
};
use arithmetree::name::{dagger, is_name, name_of, tree_of, CandidateVec, Name};
use arithmetree::ncp::{from_partition, to_cycles, to_partition, NCPartition};
use arithmetree::tamari::{interval, leq, mobius_closed, mobius_poset};
use arithmetree::tree::{exp_of, Tree};
use arithmetree::{selftest, Error, Grove};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;

pub const USAGE: &str = "\
usage: arithmetree [--json] <command> [args]

trees and names
  name <tree-json>          name of a tree given as 0 / [left,right]
  tree <vector> [--strict]  decode a vector (error-correcting; --strict
                            rejects vectors that name no tree)
  exp <vector>              parenthesized expression of a name
  dagger <vector>           the involution (mirror image)

tamari order
  leq <v> <w>               coordinatewise comparison
  interval <v> <w>          all names between v and w
  mobius <v> [<w>]          closed-form value, or mu(v,w) with two args

grove arithmetic
  sum <g> <g>               grove addition
  left <g> <g>              left part of the split
  right <g> <g>             right part of the split
  over <v> <v>              over operation
  under <v> <v>             under operation
  prod <g> <v>              dendriform multiplication
  lmul <v> <v>              over/under multiplication
  omega <v>                 universal expression
  decompose <grove>         write a grove as dendriform sums + rest
  solve <v> <grove>         solve v + X = grove
  prime <v>                 multiplicative primality

noncrossing partitions
  to-ncp <v>                partition of a tree
  from-ncp <partition>      tree of a partition
  cycles <partition>        disjoint-cycle notation

free probability
  cumulants --moments FILE --n K    free cumulants of a moment table
  moments --cumulants FILE --n K    moments of a cumulant table
  free-check --spec FILE [--n N]    two-way freeness verification

diagnostics
  selftest [--degree n]     run the built-in invariant suites

groves are names joined by '+' (the empty grove is 0); partitions look
like {1,9}{2,6,7}; rationals like 2, -1/3.
";

enum Failure {
    Domain(String),
    Usage(String),
}

type CliResult<T> = Result<T, Failure>;

fn classify(e: Error) -> Failure {
    match e {
        Error::Parse(_)
        | Error::InvalidCandidate(_)
        | Error::NotAName(_)
        | Error::InvalidPartition(_)
        | Error::MalformedGrove(_) => Failure::Usage(e.to_string()),
        other => Failure::Domain(other.to_string()),
    }
}

trait OrFail<T> {
    fn or_fail(self) -> CliResult<T>;
}

impl<T> OrFail<T> for Result<T, Error> {
    fn or_fail(self) -> CliResult<T> {
        self.map_err(classify)
    }
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(args, out) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

struct Parsed {
    command: String,
    positionals: Vec<String>,
    json: bool,
    strict: bool,
    options: BTreeMap<String, String>,
}

fn parse_args(args: &[String]) -> CliResult<Parsed> {
    let mut command = None;
    let mut positionals = Vec::new();
    let mut json = false;
    let mut strict = false;
    let mut options = BTreeMap::new();
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--strict" => strict = true,
            "--help" => command = Some("help".to_string()),
            "--degree" | "--n" | "--moments" | "--cumulants" | "--spec" => {
                let value = iter
                    .next()
                    .ok_or_else(|| Failure::Usage(format!("{arg} needs a value")))?;
                options.insert(arg.trim_start_matches('-').to_string(), value.clone());
            }
            flag if flag.starts_with("--") => {
                return Err(Failure::Usage(format!("unknown flag {flag}")));
            }
            _ if command.is_none() => command = Some(arg.clone()),
            _ => positionals.push(arg.clone()),
        }
    }
    let command = command.ok_or_else(|| Failure::Usage("missing command (see help)".into()))?;
    Ok(Parsed {
        command,
        positionals,
        json,
        strict,
        options,
    })
}

fn positionals<const N: usize>(p: &Parsed) -> CliResult<[&str; N]> {
    if p.positionals.len() != N {
        return Err(Failure::Usage(format!(
            "{} takes {N} argument(s), got {}",
            p.command,
            p.positionals.len()
        )));
    }
    let mut out = [""; N];
    for (slot, value) in out.iter_mut().zip(&p.positionals) {
        *slot = value;
    }
    Ok(out)
}

fn parse_name(s: &str) -> CliResult<Name> {
    s.parse().or_fail()
}

fn parse_grove(s: &str) -> CliResult<Grove> {
    s.parse().or_fail()
}

fn parse_partition(s: &str) -> CliResult<NCPartition> {
    s.parse().or_fail()
}

fn name_json(v: &Name) -> Value {
    Value::Array(v.coords().iter().map(|&c| Value::from(c)).collect())
}

fn emit(out: &mut dyn Write, text: String) -> CliResult<()> {
    match writeln!(out, "{text}") {
        Ok(()) => Ok(()),
        // Downstream closed the pipe; nothing left to say.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Failure::Domain(e.to_string())),
    }
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn parse_usize(p: &Parsed, key: &str) -> CliResult<Option<usize>> {
    match p.options.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("--{key} must be a nonnegative integer"))),
    }
}

fn dispatch(args: &[String], out: &mut dyn Write) -> CliResult<()> {
    let p = parse_args(args)?;
    match p.command.as_str() {
        "help" | "--help" | "-h" => emit(out, USAGE.trim_end().to_string()),
        "name" => {
            let [tree_json] = positionals::<1>(&p)?;
            let tree = Tree::from_json_str(tree_json).or_fail()?;
            let v = name_of(&tree);
            if p.json {
                emit(out, name_json(&v).to_string())
            } else {
                emit(out, v.to_string())
            }
        }
        "tree" => {
            let [vector] = positionals::<1>(&p)?;
            let c: CandidateVec = vector.parse().or_fail()?;
            if p.strict && !is_name(&c) {
                return Err(Failure::Domain(format!(
                    "{c} does not name a tree (strict mode)"
                )));
            }
            let tree = tree_of(&c);
            let v = name_of(&tree);
            if p.json {
                emit(
                    out,
                    json!({ "name": name_json(&v), "tree": tree.to_json() }).to_string(),
                )
            } else {
                emit(out, format!("{v}\n{}", tree.to_json()))
            }
        }
        "exp" => {
            let [vector] = positionals::<1>(&p)?;
            let v = parse_name(vector)?;
            let monomial = exp_of(&tree_of(&v.as_candidate())).or_fail()?;
            if p.json {
                emit(out, Value::from(monomial.to_string()).to_string())
            } else {
                emit(out, monomial.to_string())
            }
        }
        "dagger" => {
            let [vector] = positionals::<1>(&p)?;
            let v = dagger(&parse_name(vector)?);
            if p.json {
                emit(out, name_json(&v).to_string())
            } else {
                emit(out, v.to_string())
            }
        }
        "leq" => {
            let [a, b] = positionals::<2>(&p)?;
            let answer = leq(&parse_name(a)?, &parse_name(b)?).or_fail()?;
            emit(out, answer.to_string())
        }
        "interval" => {
            let [a, b] = positionals::<2>(&p)?;
            let names = interval(&parse_name(a)?, &parse_name(b)?).or_fail()?;
            if p.json {
                emit(
                    out,
                    Value::Array(names.iter().map(name_json).collect()).to_string(),
                )
            } else if names.is_empty() {
                emit(out, "0".to_string())
            } else {
                let parts: Vec<String> = names.iter().map(Name::to_string).collect();
                emit(out, parts.join("+"))
            }
        }
        "mobius" => {
            let value = match p.positionals.len() {
                1 => mobius_closed(&parse_name(&p.positionals[0])?),
                2 => mobius_poset(
                    &parse_name(&p.positionals[0])?,
                    &parse_name(&p.positionals[1])?,
                )
                .or_fail()?,
                n => {
                    return Err(Failure::Usage(format!(
                        "mobius takes 1 or 2 arguments, got {n}"
                    )))
                }
            };
            emit(out, value.to_string())
        }
        "sum" | "left" | "right" => {
            let [a, b] = positionals::<2>(&p)?;
            let ga = parse_grove(a)?;
            let gb = parse_grove(b)?;
            let result = match p.command.as_str() {
                "sum" => star(&ga, &gb),
                "left" => dend_left(&ga, &gb).or_fail()?,
                _ => dend_right(&ga, &gb).or_fail()?,
            };
            if p.json {
                emit(out, result.to_json().to_string())
            } else {
                emit(out, result.to_string())
            }
        }
        "over" | "under" => {
            let [a, b] = positionals::<2>(&p)?;
            let va = parse_name(a)?;
            let vb = parse_name(b)?;
            let result = if p.command == "over" {
                over(&va, &vb)
            } else {
                under(&va, &vb)
            };
            if p.json {
                emit(out, name_json(&result).to_string())
            } else {
                emit(out, result.to_string())
            }
        }
        "prod" => {
            let [a, b] = positionals::<2>(&p)?;
            let g = parse_grove(a)?;
            let v = parse_name(b)?;
            let result = ltimes(&g, &Grove::singleton(v)).or_fail()?;
            if p.json {
                emit(out, result.to_json().to_string())
            } else {
                emit(out, result.to_string())
            }
        }
        "lmul" => {
            let [a, b] = positionals::<2>(&p)?;
            let result = l_mult(&parse_name(a)?, &parse_name(b)?).or_fail()?;
            if p.json {
                emit(out, name_json(&result).to_string())
            } else {
                emit(out, result.to_string())
            }
        }
        "omega" => {
            let [vector] = positionals::<1>(&p)?;
            let expr = omega_expr(&parse_name(vector)?).or_fail()?;
            if p.json {
                emit(out, Value::from(expr.to_string()).to_string())
            } else {
                emit(out, expr.to_string())
            }
        }
        "decompose" => {
            let [g] = positionals::<1>(&p)?;
            let d = decompose_grove(&parse_grove(g)?).or_fail()?;
            if p.json {
                let sums: Vec<Value> = d
                    .sums
                    .iter()
                    .map(|factors| Value::Array(factors.iter().map(name_json).collect()))
                    .collect();
                let rest: Vec<Value> = d.rest.iter().map(name_json).collect();
                emit(out, json!({ "sums": sums, "rest": rest }).to_string())
            } else {
                let mut lines = Vec::new();
                for factors in &d.sums {
                    let parts: Vec<String> = factors.iter().map(Name::to_string).collect();
                    lines.push(format!("sum: {}", parts.join(" ")));
                }
                let rest = if d.rest.is_empty() {
                    "0".to_string()
                } else {
                    let parts: Vec<String> = d.rest.iter().map(Name::to_string).collect();
                    parts.join("+")
                };
                lines.push(format!("rest: {rest}"));
                emit(out, lines.join("\n"))
            }
        }
        "solve" => {
            let [v, g] = positionals::<2>(&p)?;
            match solve_left(&parse_name(v)?, &parse_grove(g)?).or_fail()? {
                Some(solution) => {
                    if p.json {
                        emit(out, solution.to_json().to_string())
                    } else {
                        emit(out, solution.to_string())
                    }
                }
                None => Err(Failure::Domain("no solution".into())),
            }
        }
        "prime" => {
            let [vector] = positionals::<1>(&p)?;
            let answer = is_prime(&parse_name(vector)?).or_fail()?;
            emit(out, answer.to_string())
        }
        "to-ncp" => {
            let [vector] = positionals::<1>(&p)?;
            let v = parse_name(vector)?;
            let partition = to_partition(&tree_of(&v.as_candidate())).or_fail()?;
            if p.json {
                emit(out, partition.to_json().to_string())
            } else {
                emit(out, partition.to_string())
            }
        }
        "from-ncp" => {
            let [text] = positionals::<1>(&p)?;
            let tree = from_partition(&parse_partition(text)?);
            let v = name_of(&tree);
            if p.json {
                emit(
                    out,
                    json!({ "name": name_json(&v), "tree": tree.to_json() }).to_string(),
                )
            } else {
                emit(out, format!("{v}\n{}", tree.to_json()))
            }
        }
        "cycles" => {
            let [text] = positionals::<1>(&p)?;
            let cycles = to_cycles(&parse_partition(text)?);
            if p.json {
                emit(out, Value::from(cycles).to_string())
            } else {
                emit(out, cycles)
            }
        }
        "cumulants" | "moments" => {
            let key = if p.command == "cumulants" {
                "moments"
            } else {
                "cumulants"
            };
            let path = p
                .options
                .get(key)
                .ok_or_else(|| Failure::Usage(format!("{} requires --{key} FILE", p.command)))?;
            let n = parse_usize(&p, "n")?
                .ok_or_else(|| Failure::Usage(format!("{} requires --n K", p.command)))?;
            if n == 0 || n > DEFAULT_BOUND {
                return Err(Failure::Usage(format!(
                    "--n must be between 1 and {DEFAULT_BOUND}"
                )));
            }
            let table = MomentTable::parse(&read_file(path)?, n).or_fail()?;
            let result = if p.command == "cumulants" {
                cumulants_from_moments(&table, n).or_fail()?
            } else {
                moments_from_cumulants(&table, n).or_fail()?
            };
            if p.json {
                let mut map = serde_json::Map::new();
                for word in result.words_up_to(n) {
                    let value = result.get(&word).or_fail()?;
                    map.insert(word, Value::from(value.to_string()));
                }
                emit(out, Value::Object(map).to_string())
            } else {
                let mut lines = Vec::new();
                for word in result.words_up_to(n) {
                    let value = result.get(&word).or_fail()?;
                    lines.push(format!("{word} {value}"));
                }
                emit(out, lines.join("\n"))
            }
        }
        "free-check" => {
            let path = p
                .options
                .get("spec")
                .ok_or_else(|| Failure::Usage("free-check requires --spec FILE".into()))?;
            let (gens, longest) = parse_freeness_spec(&read_file(path)?).or_fail()?;
            if gens.is_empty() {
                return Err(Failure::Usage("no generators declared".into()));
            }
            let bound = parse_usize(&p, "n")?.unwrap_or_else(|| longest.clamp(2, 5));
            let joint = free_joint_moments(&gens, bound).or_fail()?;
            let labels: BTreeMap<char, u32> =
                gens.iter().map(|g| (g.symbol, g.subalgebra)).collect();
            let report = freeness_report(&joint, &labels, bound).or_fail()?;
            if p.json {
                let violations: Vec<Value> = report
                    .alternating_violations
                    .iter()
                    .map(|(d, v)| json!({ "product": d, "value": v.to_string() }))
                    .collect();
                let mixed: Vec<Value> = report
                    .nonzero_mixed_cumulants
                    .iter()
                    .map(|(w, v)| json!({ "word": w, "value": v.to_string() }))
                    .collect();
                emit(
                    out,
                    json!({
                        "bound": report.bound,
                        "alternating_checked": report.alternating_checked,
                        "alternating_violations": violations,
                        "mixed_checked": report.mixed_checked,
                        "nonzero_mixed_cumulants": mixed,
                        "free": report.free,
                    })
                    .to_string(),
                )
            } else {
                emit(out, report.to_string())
            }
        }
        "selftest" => {
            let degree = parse_usize(&p, "degree")?.unwrap_or(4);
            let report = selftest::run(degree).or_fail()?;
            emit(out, report.to_string())?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(Failure::Domain("selftest failed".into()))
            }
        }
        other => Err(Failure::Usage(format!(
            "unknown command {other:?} (see help)"
        ))),
    }
}
