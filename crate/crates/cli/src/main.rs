use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rbgroups::antops::{
    admissible, an_operator_from_descriptor, an_parts, build_an_operator, descendent_structure,
    sharply2, sharply3, verify_an_operator, SharplyTransitiveGroup, Variant, DEFAULT_AN_SAMPLES,
};
use rbgroups::permcore::text::write_group;
use rbgroups::permcore::{exact_factorization, iso_label, FiniteGroup, Permutation};
use rbgroups::rbbuild::{from_factorization, index2_construction, named_example};
use rbgroups::rbcore::format::{read_operator_with, write_operator, OperatorFile};
use rbgroups::rbcore::{ProceduralRule, RbOperator, VerifyMode, DEFAULT_SEED};
use rbgroups::rbenum::{classify, enumerate_rb, Caps};
use rbgroups::stdgroups::{build, GroupSpec};
use rbgroups::Error;

const EXIT_PRECONDITION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "rbgroups",
    version,
    about = "Rota-Baxter operators on finite groups"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Largest group order accepted by enumeration.
    #[arg(long, global = true, default_value_t = 48)]
    max_order: usize,
    /// Largest |G x G| accepted by enumeration.
    #[arg(long, global = true, default_value_t = 2304)]
    max_square_order: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random pairs for sampled verification.
    #[arg(long, global = true)]
    verify_samples: Option<usize>,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also print groups and operators in the file format.
    #[arg(long, global = true)]
    dump: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dihedral,
    Quaternion,
}

#[derive(Subcommand)]
enum Command {
    /// Build one operator from a named example, a factorization or index-2 data.
    Construct {
        #[arg(long, conflicts_with_all = ["split", "index2"])]
        example: Option<String>,
        /// Group, then generator lists of H and L, e.g. `S:3 "(0 1 2)" "(0 1)"`.
        #[arg(long, num_args = 3, value_names = ["G", "H", "L"], conflicts_with = "index2")]
        split: Option<Vec<String>>,
        /// Group, generator lists of K, L and S, then t and r.
        #[arg(long, num_args = 6, value_names = ["G", "K", "L", "S", "T", "R"])]
        index2: Option<Vec<String>>,
    },
    /// All operators on a small group.
    Enumerate {
        group: String,
        #[arg(long)]
        up_to_equivalence: bool,
    },
    /// Equivalence classes and family checks.
    Classify {
        group: Option<String>,
        #[arg(long, value_enum, conflicts_with = "group", requires_all = ["n_from", "n_to"])]
        family: Option<FamilyArg>,
        #[arg(long)]
        n_from: Option<usize>,
        #[arg(long)]
        n_to: Option<usize>,
    },
    /// Check an operator file (`-` reads stdin).
    Verify { file: PathBuf },
    /// Whether A_n carries a non-splitting operator from a sharply transitive group.
    Admissible {
        #[arg(long)]
        n: u64,
    },
    /// Build and verify the non-splitting operator on A_n.
    BuildAn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "default")]
        variant: String,
    },
    /// The sharply 2-transitive group L(m, q, t).
    Sharply2 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// The sharply 3-transitive group M(q).
    Sharply3 {
        #[arg(long)]
        q: u64,
    },
    /// Identities of the descendent product for the A_n operator.
    Descendent {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "default")]
        variant: String,
    },
}

/// Output and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PRECONDITION);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidOperator(_) => ExitCode::from(EXIT_VERIFICATION),
                _ => ExitCode::from(EXIT_PRECONDITION),
            }
        }
    }
}

fn run(cli: &Cli) -> rbgroups::Result<Outcome> {
    let o = &cli.opts;
    let caps = Caps {
        max_order: o.max_order,
        max_square_order: o.max_square_order,
    };
    match &cli.command {
        Command::Construct {
            example,
            split,
            index2,
        } => construct(o, example, split, index2),
        Command::Enumerate {
            group,
            up_to_equivalence,
        } => enumerate(o, &caps, group, *up_to_equivalence),
        Command::Classify {
            group,
            family,
            n_from,
            n_to,
        } => {
            let specs: Vec<GroupSpec> = match (group, family) {
                (Some(g), _) => vec![g.parse()?],
                (None, Some(f)) => {
                    let (a, b) = (n_from.unwrap_or(2), n_to.unwrap_or(2));
                    (a..=b)
                        .map(|n| match f {
                            FamilyArg::Dihedral => Ok(GroupSpec::dihedral(n)),
                            FamilyArg::Quaternion => GroupSpec::new(
                                rbgroups::stdgroups::Family::GeneralizedQuaternion,
                                n,
                            ),
                        })
                        .collect::<rbgroups::Result<_>>()?
                }
                (None, None) => {
                    return Err(Error::precondition("group", "give a group or --family"))
                }
            };
            let mut out = Outcome::ok(String::new());
            for (i, spec) in specs.into_iter().enumerate() {
                let report = classify(&build(spec)?.group, Some(spec), &caps)?;
                if i > 0 {
                    out.text.push('\n');
                }
                out.text.push_str(&report.to_string());
                out.pass &= report.all_checks_hold();
            }
            Ok(out)
        }
        Command::Verify { file } => verify_file(o, file),
        Command::Admissible { n } => {
            if *n < 5 {
                return Err(Error::precondition("n >= 5", format!("n = {n}")));
            }
            Ok(Outcome::ok(format!("{}\n", admissible(*n))))
        }
        Command::BuildAn { n, variant } => {
            let op = build_an_operator(*n, variant.parse()?)?;
            let mut text = String::new();
            if o.dump || o.format == Format::Records {
                text.push_str(&write_operator(&op));
            } else {
                let a = an_parts(&op).expect("A_n operator");
                writeln!(text, "operator: {}", a.descriptor()).unwrap();
            }
            let samples = o.verify_samples.unwrap_or(DEFAULT_AN_SAMPLES);
            let verdict = verify_an_operator(&op, samples, o.seed.unwrap_or(DEFAULT_SEED))?;
            writeln!(text, "{verdict}").unwrap();
            Ok(Outcome {
                text,
                pass: verdict.pass(),
            })
        }
        Command::Sharply2 { m, q, t } => Ok(Outcome::ok(describe(&sharply2(*m, *q, *t)?, o.dump)?)),
        Command::Sharply3 { q } => Ok(Outcome::ok(describe(&sharply3(*q)?, o.dump)?)),
        Command::Descendent { n, variant } => {
            let op = build_an_operator(*n, variant.parse::<Variant>()?)?;
            let samples = o.verify_samples.unwrap_or(10_000);
            let report = descendent_structure(&op, samples, o.seed.unwrap_or(DEFAULT_SEED))?;
            Ok(Outcome::ok(format!("{report}\n")))
        }
    }
}

fn group_of(spec: &str) -> rbgroups::Result<FiniteGroup> {
    Ok(build(spec.parse()?)?.group)
}

/// `;`-separated permutations in cycle notation or as image lists.
fn perms(degree: usize, list: &str) -> rbgroups::Result<Vec<Permutation>> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse(Some(degree), s))
        .collect()
}

fn subgroup(g: &FiniteGroup, name: &str, list: &str) -> rbgroups::Result<FiniteGroup> {
    g.subgroup_generated(name, &perms(g.degree(), list)?)
}

fn construct(
    o: &Opts,
    example: &Option<String>,
    split: &Option<Vec<String>>,
    index2: &Option<Vec<String>>,
) -> rbgroups::Result<Outcome> {
    let op = match (example, split, index2) {
        (Some(name), _, _) => named_example(name)?,
        (_, Some(args), _) => {
            let g = group_of(&args[0])?;
            let (h, l) = (subgroup(&g, "H", &args[1])?, subgroup(&g, "L", &args[2])?);
            let w = exact_factorization(&g, &h, &l)?;
            w.require_exact()?;
            from_factorization(&w)?
        }
        (_, _, Some(args)) => {
            let g = group_of(&args[0])?;
            let n = g.degree();
            let (k, l, s) = (
                subgroup(&g, "K", &args[1])?,
                subgroup(&g, "L", &args[2])?,
                subgroup(&g, "S", &args[3])?,
            );
            let (t, r) = (
                Permutation::parse(Some(n), &args[4])?,
                Permutation::parse(Some(n), &args[5])?,
            );
            index2_construction(&g, &k, &l, &s, &t, &r)?
        }
        _ => {
            return Err(Error::precondition(
                "construct",
                "give --example, --split or --index2",
            ))
        }
    };
    let verdict = table_verdict(o, &op)?;
    Ok(Outcome {
        text: format!("{}{verdict}\n", write_operator(&op)),
        pass: verdict.pass,
    })
}

fn table_verdict(o: &Opts, op: &RbOperator) -> rbgroups::Result<rbgroups::rbcore::Verdict> {
    match o.verify_samples {
        Some(count) => op.verify(VerifyMode::Sampled {
            count,
            seed: o.seed.unwrap_or(DEFAULT_SEED),
        }),
        None => op.verify(VerifyMode::Full),
    }
}

fn enumerate(o: &Opts, caps: &Caps, group: &str, classes: bool) -> rbgroups::Result<Outcome> {
    let spec: GroupSpec = group.parse()?;
    let g = build(spec)?.group;
    let mut text = String::new();
    if classes {
        let report = classify(&g, Some(spec), caps)?;
        if o.format == Format::Records {
            for c in &report.classes {
                writeln!(text, "{}", write_operator(&c.representative)).unwrap();
            }
        } else {
            writeln!(text, "group: {}", report.group_label).unwrap();
            writeln!(text, "operators: {}", report.total).unwrap();
            for (i, c) in report.classes.iter().enumerate() {
                writeln!(
                    text,
                    "class {i}: size={} splitting={} R={} ker={},{} descendent={}",
                    c.size,
                    c.splitting,
                    c.r_label,
                    c.kernel_invariant.0,
                    c.kernel_invariant.1,
                    c.descendent_label
                )
                .unwrap();
            }
        }
        return Ok(Outcome::ok(text));
    }
    let ops = enumerate_rb(&g, caps)?;
    if o.format == Format::Records {
        for op in &ops {
            writeln!(text, "{}", write_operator(op)).unwrap();
        }
    } else {
        writeln!(text, "group: {}", spec.label()).unwrap();
        writeln!(text, "operators: {}", ops.len()).unwrap();
        for (i, op) in ops.iter().enumerate() {
            let table: Vec<String> = op
                .table()
                .expect("table")
                .iter()
                .map(u32::to_string)
                .collect();
            writeln!(
                text,
                "op {i}: splitting={} table={}",
                op.is_splitting()?,
                table.join(" ")
            )
            .unwrap();
        }
    }
    Ok(Outcome::ok(text))
}

fn verify_file(o: &Opts, file: &PathBuf) -> rbgroups::Result<Outcome> {
    let mut text = String::new();
    let io = if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    io.map_err(|e| {
        Error::precondition("readable operator file", format!("{}: {e}", file.display()))
    })?;
    match read_operator_with(&text, false)? {
        OperatorFile::Table(op) => {
            let verdict = table_verdict(o, &op)?;
            Ok(Outcome {
                text: format!("{verdict}\n"),
                pass: verdict.pass,
            })
        }
        OperatorFile::Procedural { descriptor, .. } => {
            let op = an_operator_from_descriptor(&descriptor)?;
            let samples = o.verify_samples.unwrap_or(DEFAULT_AN_SAMPLES);
            let verdict = verify_an_operator(&op, samples, o.seed.unwrap_or(DEFAULT_SEED))?;
            Ok(Outcome {
                text: format!("{verdict}\n"),
                pass: verdict.pass(),
            })
        }
    }
}

fn describe(l: &SharplyTransitiveGroup, dump: bool) -> rbgroups::Result<String> {
    let mut text = String::new();
    writeln!(text, "group: {}", l.group.label()).unwrap();
    writeln!(text, "degree: {}", l.degree).unwrap();
    writeln!(text, "transitivity: {}", l.transitivity).unwrap();
    writeln!(text, "order: {}", l.order()).unwrap();
    if let Some(f) = &l.field {
        writeln!(text, "field: {f}").unwrap();
    }
    writeln!(text, "inside_alternating: {}", l.is_inside_alternating()).unwrap();
    if let Some(n) = &l.n_part {
        writeln!(text, "n_part: {}", iso_label(n)).unwrap();
    }
    for s in &l.index2 {
        writeln!(
            text,
            "index2: {} order={}",
            s.label(),
            s.order().unwrap_or(0)
        )
        .unwrap();
    }
    if dump {
        text.push_str(&write_group(&l.group));
        for s in &l.index2 {
            text.push_str(&write_group(s));
        }
    }
    Ok(text)
}
