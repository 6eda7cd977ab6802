//! Command-line front end. Sources are either a path to a lattice
//! document or a catalog spec like `n5`, `chain:4`, `boolean:2`,
//! `divisor:60`, `d:3`, `random:7:8`, `product:chain:1*chain:2`.
//!
//! Exit codes: 0 success, 1 analysis refusal (a precondition such as
//! distributivity or supermodularity fails), 2 input error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{self, CatalogSpec};
use crate::error::LatticeError;
use crate::heyting;
use crate::io::{hasse_dot, sl_dot, GameDoc, LatticeDoc, VerdictDoc};
use crate::lattice::{ForbiddenKind, Lattice};
use crate::veinott::{
    analyze, enumerate_sl, veinott_glb_bruteforce_in, veinott_leq, veinott_lower_bounds,
    veinott_lub_bruteforce_in, veinott_glb_formula, veinott_lub_formula, SlPoset, Sublattice,
    SublatticeFamily,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "veinott",
    about = "Finite lattice analysis: distributivity, residuation, the Veinott order on sublattices, and supermodular games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// SL(C) enumeration cap.
    #[arg(long, global = true, env = "VEINOTT_CAP", default_value_t = 50_000)]
    pub cap: usize,

    /// Seed for `random:<size>` catalog sources.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a lattice and report distributivity, residuation, atoms.
    Check { source: String },
    /// Enumerate SL(C) and decide whether ⟨SL(C), ≤ᵛ⟩ is a lattice.
    Sl { source: String },
    /// Veinott glb of a family by the closed-form construction,
    /// cross-checked against the brute-force oracle when feasible.
    Glb {
        source: String,
        /// Semicolon-separated sublattices of comma-separated element
        /// names in braces, e.g. '{bot,p};{bot,q}'.
        #[arg(long)]
        family: String,
    },
    /// Veinott lub of a family (glb in the dual lattice).
    Lub {
        source: String,
        #[arg(long)]
        family: String,
    },
    /// Reproduce the pentagon and diamond counterexamples as a self-test.
    Counterexample,
    /// Solve a supermodular game file: equilibria and their lattice structure.
    Game { source: PathBuf },
    /// Emit a DOT diagram of the Hasse diagram or of the Veinott poset.
    Export {
        source: String,
        #[arg(long, value_enum, default_value_t = ExportWhat::Hasse)]
        what: ExportWhat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Hasse,
    Sl,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn refused(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_REFUSED,
            message: message.into(),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::NotDistributive | LatticeError::NotALowerBound(_) => {
                CliError::refused(e.to_string())
            }
            _ => CliError::input(e.to_string()),
        }
    }
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Check { source } => check(&cli, source),
        Command::Sl { source } => sl(&cli, source),
        Command::Glb { source, family } => bound(&cli, source, family, Bound::Glb),
        Command::Lub { source, family } => bound(&cli, source, family, Bound::Lub),
        Command::Counterexample => counterexample(),
        Command::Game { source } => game(&cli, source),
        Command::Export { source, what } => {
            let l = load_lattice(&cli, source)?;
            Ok(match what {
                ExportWhat::Hasse => hasse_dot(&l),
                ExportWhat::Sl => {
                    let poset = SlPoset::new(&l, enumerate_sl(&l, cli.cap)?);
                    sl_dot(&l, &poset)
                }
            })
        }
    }
}

fn load_lattice(cli: &Cli, source: &str) -> Result<Lattice, CliError> {
    if Path::new(source).exists() {
        let text = std::fs::read_to_string(source)
            .map_err(|e| CliError::input(format!("cannot read {source}: {e}")))?;
        let doc = LatticeDoc::from_json(&text)?;
        return doc
            .to_lattice()
            .map_err(|r| CliError::input(format!("invalid lattice in {source}: {}", r.reason)));
    }
    // `random:<size>` picks up the --seed flag.
    let spec: CatalogSpec = match source.strip_prefix("random:") {
        Some(rest) if !rest.contains(':') => format!("random:{}:{rest}", cli.seed)
            .parse()
            .map_err(CliError::from)?,
        _ => source.parse().map_err(CliError::from)?,
    };
    catalog::build(&spec).map_err(CliError::from)
}

#[derive(Serialize)]
struct CheckDoc {
    elements: usize,
    bottom: String,
    top: String,
    distributive: bool,
    forbidden_sublattice: Option<ForbiddenDoc>,
    is_frame: bool,
    is_coframe: bool,
    atoms: Vec<String>,
    atomic: bool,
}

#[derive(Serialize)]
struct ForbiddenDoc {
    kind: String,
    elements: Vec<String>,
}

fn check(cli: &Cli, source: &str) -> Result<String, CliError> {
    let l = load_lattice(cli, source)?;
    let witness = l.find_forbidden_sublattice();
    let residuation = heyting::check_residuation(&l);
    let doc = CheckDoc {
        elements: l.n(),
        bottom: l.label(l.bottom()).to_owned(),
        top: l.label(l.top()).to_owned(),
        distributive: witness.is_none(),
        forbidden_sublattice: witness.as_ref().map(|w| ForbiddenDoc {
            kind: match w.kind {
                ForbiddenKind::N5 => "N5".into(),
                ForbiddenKind::M3 => "M3".into(),
            },
            elements: w.elements.iter().map(|&x| l.label(x).to_owned()).collect(),
        }),
        is_frame: residuation.is_frame,
        is_coframe: residuation.is_coframe,
        atoms: l.set_labels(&l.atoms()),
        atomic: l.is_atomic(),
    };
    Ok(match cli.format {
        Format::Machine => serde_json::to_string_pretty(&doc).unwrap(),
        _ => {
            let mut out = format!(
                "lattice: {} elements, bottom={}, top={}\n",
                doc.elements, doc.bottom, doc.top
            );
            match &doc.forbidden_sublattice {
                None => out.push_str("distributive: yes\n"),
                Some(w) => out.push_str(&format!(
                    "distributive: no ({} witness: {})\n",
                    w.kind,
                    w.elements.join(",")
                )),
            }
            out.push_str(&format!(
                "frame: {}\ncoframe: {}\n",
                yesno(doc.is_frame),
                yesno(doc.is_coframe)
            ));
            out.push_str(&format!(
                "atoms: {{{}}} (atomic: {})\n",
                doc.atoms.join(","),
                yesno(doc.atomic)
            ));
            out
        }
    })
}

fn sl(cli: &Cli, source: &str) -> Result<String, CliError> {
    let l = load_lattice(cli, source)?;
    let verdict = analyze(&l, cli.cap)?;
    let doc = VerdictDoc::from_verdict(&l, &verdict);
    Ok(match cli.format {
        Format::Machine => doc.to_json(),
        Format::Dot => {
            let poset = SlPoset::new(&l, enumerate_sl(&l, cli.cap)?);
            sl_dot(&l, &poset)
        }
        Format::Text => {
            let mut out = format!("|SL| = {}\n", doc.sl_size);
            match &doc.failure {
                None => out.push_str("SL is a lattice under the Veinott order\n"),
                Some(f) => {
                    out.push_str(&format!(
                        "SL not a lattice; witness pair {} / {}; maximal lower bounds {}\n",
                        set_name(&f.left),
                        set_name(&f.right),
                        f.maximal_lower_bounds
                            .iter()
                            .map(|s| set_name(s))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
            }
            out
        }
    })
}

enum Bound {
    Glb,
    Lub,
}

#[derive(Serialize)]
struct BoundDoc {
    result: Vec<String>,
    oracle: String,
}

fn bound(cli: &Cli, source: &str, family_text: &str, which: Bound) -> Result<String, CliError> {
    let l = load_lattice(cli, source)?;
    let family = parse_family(&l, family_text)?;
    let result = match which {
        Bound::Glb => veinott_glb_formula(&l, &family)?,
        Bound::Lub => veinott_lub_formula(&l, &family)?,
    };
    // Cross-check against the brute-force oracle when SL fits the cap.
    let oracle = match enumerate_sl(&l, cli.cap) {
        Ok(universe) => {
            let brute = match which {
                Bound::Glb => veinott_glb_bruteforce_in(&l, &family, &universe),
                Bound::Lub => veinott_lub_bruteforce_in(&l, &family, &universe),
            };
            match brute {
                Some(b) if b == result => "agrees".to_owned(),
                Some(_) => "DISAGREES".to_owned(),
                None => "DISAGREES (oracle found none)".to_owned(),
            }
        }
        Err(LatticeError::CapExceeded { .. }) => "skipped (cap exceeded)".to_owned(),
        Err(e) => return Err(e.into()),
    };
    if oracle.starts_with("DISAGREES") {
        return Err(CliError {
            code: EXIT_REFUSED,
            message: format!("formula/oracle mismatch: {oracle}"),
        });
    }
    let doc = BoundDoc {
        result: result.labels(&l),
        oracle,
    };
    Ok(match cli.format {
        Format::Machine => serde_json::to_string_pretty(&doc).unwrap(),
        _ => format!("{}\noracle: {}\n", set_name(&doc.result), doc.oracle),
    })
}

fn parse_family(l: &Lattice, text: &str) -> Result<SublatticeFamily, CliError> {
    let mut members = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        let inner = part
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .unwrap_or(part);
        let names: Vec<&str> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if names.is_empty() {
            return Err(CliError::input(format!("empty set in family '{text}'")));
        }
        members.push(Sublattice::from_names(l, &names).map_err(CliError::from)?);
    }
    if members.is_empty() {
        return Err(CliError::input("family must be nonempty"));
    }
    Ok(SublatticeFamily::new(members))
}

/// Reproduces the pentagon and diamond facts as a self-verifying install
/// check; any mismatch is reported with a nonzero exit.
fn counterexample() -> Result<String, CliError> {
    let mut out = String::new();

    let l = catalog::build(&CatalogSpec::N5).unwrap();
    let universe = enumerate_sl(&l, 50_000).map_err(CliError::from)?;
    let ed = Sublattice::from_names(&l, &["e", "d"]).unwrap();
    let abce = Sublattice::from_names(&l, &["a", "b", "c", "e"]).unwrap();
    let down = |s: &Sublattice| -> Vec<Vec<String>> {
        universe
            .iter()
            .filter(|u| veinott_leq(&l, u.carrier(), s.carrier()))
            .map(|u| u.labels(&l))
            .collect()
    };
    let down_ed = down(&ed);
    let expected_ed = pinned_sets(&[
        "a", "ab", "c", "ac", "d", "ad", "cd", "acd", "de", "ade", "abde", "cde", "acde", "abcde",
    ]);
    let down_abce = down(&abce);
    let expected_abce = pinned_sets(&["a", "ab", "ac", "abce"]);
    let family = SublatticeFamily::new(vec![ed.clone(), abce.clone()]);
    let (bounds, maximal) = veinott_lower_bounds(&l, &family, &universe);
    let bound_names: Vec<Vec<String>> = bounds.iter().map(|s| s.labels(&l)).collect();
    let maximal_names: Vec<Vec<String>> = maximal.iter().map(|s| s.labels(&l)).collect();
    let verdict = analyze(&l, 50_000).map_err(CliError::from)?;
    let n5_ok = down_ed == expected_ed
        && down_abce == expected_abce
        && bound_names == pinned_sets(&["a", "ab", "ac"])
        && maximal_names == pinned_sets(&["ab", "ac"])
        && !verdict.is_lattice;
    out.push_str(&line("pentagon: SL(N5) is not a lattice (ed/abce)", n5_ok));

    let m = catalog::build(&CatalogSpec::M3).unwrap();
    let m_universe = enumerate_sl(&m, 50_000).map_err(CliError::from)?;
    let eb = Sublattice::from_names(&m, &["e", "b"]).unwrap();
    let ec = Sublattice::from_names(&m, &["e", "c"]).unwrap();
    let m_family = SublatticeFamily::new(vec![eb, ec]);
    let (m_bounds, _) = veinott_lower_bounds(&m, &m_family, &m_universe);
    let abce_m = Sublattice::from_names(&m, &["a", "b", "c", "e"]).unwrap();
    let abcde_m = Sublattice::from_names(&m, &["a", "b", "c", "d", "e"]).unwrap();
    let m3_ok = m_bounds.contains(&abce_m)
        && m_bounds.contains(&abcde_m)
        && !veinott_leq(&m, abce_m.carrier(), abcde_m.carrier())
        && !veinott_leq(&m, abcde_m.carrier(), abce_m.carrier())
        && veinott_glb_bruteforce_in(&m, &m_family, &m_universe).is_none()
        && !analyze(&m, 50_000).map_err(CliError::from)?.is_lattice;
    out.push_str(&line("diamond: the meet of eb and ec does not exist", m3_ok));

    if n5_ok && m3_ok {
        Ok(out)
    } else {
        Err(CliError {
            code: EXIT_REFUSED,
            message: format!("{out}counterexample self-test FAILED"),
        })
    }
}

fn line(what: &str, ok: bool) -> String {
    format!("{}: {what}\n", if ok { "ok" } else { "FAIL" })
}

/// Expands compact letter strings ("abce") into sorted-name lists and
/// orders them canonically (by carrier bit pattern over a..e).
fn pinned_sets(compact: &[&str]) -> Vec<Vec<String>> {
    compact
        .iter()
        .map(|s| {
            let mut names: Vec<String> = s.chars().map(|c| c.to_string()).collect();
            names.sort();
            names
        })
        .collect()
}

#[derive(Serialize)]
struct GameReportDoc {
    supermodular: bool,
    equilibria: Vec<[String; 2]>,
    least: [String; 2],
    greatest: [String; 2],
    is_complete_lattice: bool,
}

fn game(cli: &Cli, source: &Path) -> Result<String, CliError> {
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", source.display())))?;
    let g = GameDoc::from_json(&text)?.to_game()?;
    let supermodularity = g.check_supermodular();
    if !supermodularity.holds {
        return Err(CliError::refused(format!(
            "game is not supermodular: {:?}",
            supermodularity.violation.unwrap()
        )));
    }
    let report = g.solve().map_err(CliError::from)?;
    let s1 = g.strategies(crate::games::Player::One);
    let s2 = g.strategies(crate::games::Player::Two);
    let pair =
        |&(x, y): &(usize, usize)| [s1.label(x).to_owned(), s2.label(y).to_owned()];
    let doc = GameReportDoc {
        supermodular: true,
        equilibria: report.equilibria.iter().map(pair).collect(),
        least: pair(&report.least),
        greatest: pair(&report.greatest),
        is_complete_lattice: report.is_complete_lattice,
    };
    Ok(match cli.format {
        Format::Machine => serde_json::to_string_pretty(&doc).unwrap(),
        _ => format!(
            "supermodular: yes\nequilibria: {}\nleast: ({},{})\ngreatest: ({},{})\ncomplete lattice: {}\n",
            doc.equilibria
                .iter()
                .map(|[a, b]| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join(" "),
            doc.least[0],
            doc.least[1],
            doc.greatest[0],
            doc.greatest[1],
            yesno(doc.is_complete_lattice)
        ),
    })
}

fn set_name(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
