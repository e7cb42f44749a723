//! Batch command-line surface: classification, subgroup computations, the
//! parameterisation bijection, identity verification, and Dynkin diagrams.
//!
//! Output is deterministic: JSON objects have sorted keys and all rationals
//! use the canonical `num/den` form. Exit codes: 0 success, 1 validation or
//! usage error, 2 internal-consistency violation, 3 resource cap.

use crate::affine::AffRoot;
use crate::bijmap;
use crate::finsub::{self, DynkinDiagram};
use crate::identities::{self, LatticeChoice};
use crate::jsonio;
use crate::par::Exec;
use crate::refsub::{self, GfChamberPiece, Volume};
use crate::rootsys::{build_root_system, CartanType, RootSystem};
use crate::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "weylsub",
    about = "Root systems, affine Weyl groups and their reflection subgroups, in exact arithmetic",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Cap on Weyl group enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub weyl_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RLattice {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "P", alias = "p")]
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Action {
    Roots,
    Alcove,
    Volume,
    Index,
    Cosets,
    Elements,
    Type,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Pdual", aliases = ["pdual", "PDual"])]
    Pdual,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the conjugacy classes of root subsystems of a finite system.
    Classify {
        cartan_type: String,
        /// Also run the brute-force oracle and require exact agreement.
        #[arg(long)]
        certify: bool,
    },
    /// Computations on one reflection subgroup of the affine Weyl group.
    Subgroup {
        cartan_type: String,
        /// The subgroup as a (Γ, f) JSON datum.
        #[arg(long)]
        gf: Option<String>,
        /// The subgroup as a (Ψ, X) JSON datum.
        #[arg(long)]
        psix: Option<String>,
        #[arg(long, value_enum)]
        action: Action,
        /// Second (Γ, f) datum for `--action index` (default: the full group).
        #[arg(long)]
        other: Option<String>,
        /// Level window for `--action roots`.
        #[arg(long, default_value_t = 6)]
        level_bound: i64,
        /// Translation lattice for `--action cosets`.
        #[arg(long, value_enum, default_value_t = RLattice::Q)]
        lattice: RLattice,
        /// Coefficient box for `--action elements`.
        #[arg(long, default_value_t = 2)]
        translation_bound: i64,
    },
    /// Convert between the (Γ, f) and (Ψ, X) parameterisations.
    Bij {
        cartan_type: String,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        gf: Option<String>,
        #[arg(long)]
        psix: Option<String>,
    },
    /// Verify the descent/partition identity for one type.
    Identity {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long, value_enum, default_value_t = LatticeArg::P)]
        lattice: LatticeArg,
        #[arg(long, default_value_t = 10)]
        mmax: i64,
    },
    /// Render the Dynkin diagram of a type.
    Diagram { cartan_type: String },
}

fn parse_system(s: &str) -> Result<RootSystem> {
    let t: CartanType = s.parse()?;
    build_root_system(&t)
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::invalid(format!("malformed JSON: {e}")))
}

fn emit(format: Format, value: &Value, table: String) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("serializable"),
        Format::Table => table,
    }
}

/// Run a parsed command, returning the text to print on stdout.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Classify {
            cartan_type,
            certify,
        } => {
            let rs = parse_system(cartan_type)?;
            let classes = if *certify {
                finsub::enumerate_subsystems_certified(&rs, cli.weyl_cap, Exec::Parallel)?
            } else {
                finsub::enumerate_subsystems(&rs, cli.weyl_cap)?
            };
            let value = json!({
                "schema": 1,
                "type": cartan_type,
                "fingerprint_only": classes.fingerprint_only,
                "classes": classes.classes.iter().map(|c| json!({
                    "type": c.type_string,
                    "size": c.size,
                    "closed": c.closed,
                    "dual_closed": c.dual_closed,
                })).collect::<Vec<_>>(),
            });
            let mut table = format!(
                "{} subsystem classes of {}{}\n",
                classes.classes.len(),
                cartan_type,
                if classes.fingerprint_only {
                    " (fingerprint only)"
                } else {
                    ""
                }
            );
            table.push_str("type                     size  closed dual_closed\n");
            for c in &classes.classes {
                table.push_str(&format!(
                    "{:<24} {:>5}  {:<6} {}\n",
                    c.type_string, c.size, c.closed, c.dual_closed
                ));
            }
            Ok(emit(cli.format, &value, table))
        }
        Command::Subgroup {
            cartan_type,
            gf,
            psix,
            action,
            other,
            level_bound,
            lattice,
            translation_bound,
        } => {
            let rs = parse_system(cartan_type)?;
            let gf_pair = match (gf, psix) {
                (Some(s), None) => jsonio::gf_from_value(&rs, &parse_json(s)?)?,
                (None, Some(s)) => {
                    let p = jsonio::psix_from_value(&rs, &parse_json(s)?)?;
                    if *action == Action::Roots {
                        let roots: Vec<AffRoot> =
                            refsub::roots_of_psix(&rs, &p, *level_bound)?.into_iter().collect();
                        return Ok(roots_output(cli.format, &rs, &roots));
                    }
                    if *action == Action::Elements {
                        let els = refsub::elements_of_psix(&rs, &p, *translation_bound)?;
                        let value = json!({
                            "schema": 1,
                            "count": els.len(),
                            "elements": els.iter().map(jsonio::extaff_to_value).collect::<Vec<_>>(),
                        });
                        return Ok(emit(cli.format, &value, format!("{} elements\n", els.len())));
                    }
                    bijmap::j_inverse_checked(&rs, &p)?
                }
                _ => {
                    return Err(Error::invalid(
                        "provide exactly one of --gf or --psix",
                    ))
                }
            };
            match action {
                Action::Roots => {
                    let roots: Vec<AffRoot> =
                        refsub::roots_of_gf(&gf_pair, *level_bound).into_iter().collect();
                    Ok(roots_output(cli.format, &rs, &roots))
                }
                Action::Alcove => {
                    let ch = refsub::alcove_of_gf(&rs, &gf_pair)?;
                    let value = json!({
                        "schema": 1,
                        "inequalities": ch.ineqs.iter().map(jsonio::ineq_to_value).collect::<Vec<_>>(),
                        "fixed_subspace_dim": ch.c0_basis.len(),
                        "pieces": ch.pieces.iter().map(|p| match p {
                            GfChamberPiece::Cone { vertex, rays } => json!({
                                "kind": "cone",
                                "vertex": jsonio::vector_to_value(vertex),
                                "rays": rays.iter().map(jsonio::vector_to_value).collect::<Vec<_>>(),
                            }),
                            GfChamberPiece::Simplex { vertices } => json!({
                                "kind": "simplex",
                                "vertices": vertices.iter().map(jsonio::vector_to_value).collect::<Vec<_>>(),
                            }),
                        }).collect::<Vec<_>>(),
                    });
                    let table = format!(
                        "chamber with {} walls, fixed subspace of dimension {}\n",
                        ch.ineqs.len(),
                        ch.c0_basis.len()
                    );
                    Ok(emit(cli.format, &value, table))
                }
                Action::Volume => {
                    let vol = refsub::volume_of_gf(&rs, &gf_pair)?;
                    let text = match &vol {
                        Volume::Finite(v) => v.to_string(),
                        Volume::Infinite => "infinite".to_string(),
                    };
                    let value = json!({ "schema": 1, "volume": text });
                    Ok(emit(cli.format, &value, format!("{text}\n")))
                }
                Action::Index => {
                    let sup = match other {
                        Some(s) => jsonio::gf_from_value(&rs, &parse_json(s)?)?,
                        None => refsub::full_gf_pair(&rs)?,
                    };
                    let idx = refsub::index_of_gf(&rs, &gf_pair, &sup)?;
                    let value = json!({ "schema": 1, "index": idx.to_string() });
                    Ok(emit(cli.format, &value, format!("{idx}\n")))
                }
                Action::Cosets => {
                    let (q, p, _) = rs.lattices()?;
                    let r = match lattice {
                        RLattice::Q => q,
                        RLattice::P => p,
                    };
                    let reps = refsub::coset_reps(&rs, &gf_pair, &r)?;
                    let value = json!({
                        "schema": 1,
                        "count": reps.reps.len(),
                        "index": reps.index.to_string(),
                        "r_over_q": reps.r_over_q.to_string(),
                        "reps": reps.reps.iter().map(jsonio::extaff_to_value).collect::<Vec<_>>(),
                    });
                    let table = format!(
                        "{} coset representatives (index {}, [R:Q] = {})\n",
                        reps.reps.len(),
                        reps.index,
                        reps.r_over_q
                    );
                    Ok(emit(cli.format, &value, table))
                }
                Action::Elements => Err(Error::invalid(
                    "--action elements requires a --psix datum",
                )),
                Action::Type => {
                    let t = refsub::isomorphism_type(&rs, &gf_pair)?;
                    let strings: Vec<String> = t.iter().map(|c| c.to_string()).collect();
                    let value = json!({ "schema": 1, "components": strings });
                    Ok(emit(cli.format, &value, strings.join(" x ") + "\n"))
                }
            }
        }
        Command::Bij {
            cartan_type,
            direction,
            gf,
            psix,
        } => {
            let rs = parse_system(cartan_type)?;
            match direction {
                Direction::Forward => {
                    let s = gf
                        .as_ref()
                        .ok_or_else(|| Error::invalid("forward direction requires --gf"))?;
                    let p = jsonio::gf_from_value(&rs, &parse_json(s)?)?;
                    let x = bijmap::j_forward(&rs, &p)?;
                    let value = jsonio::psix_to_value(&rs, &x);
                    Ok(emit(cli.format, &value, format!("{value}\n")))
                }
                Direction::Inverse => {
                    let s = psix
                        .as_ref()
                        .ok_or_else(|| Error::invalid("inverse direction requires --psix"))?;
                    let x = jsonio::psix_from_value(&rs, &parse_json(s)?)?;
                    // Both inverse routes, cross-validated.
                    let p = bijmap::j_inverse_checked(&rs, &x)?;
                    let value = jsonio::gf_to_value(&rs, &p);
                    Ok(emit(cli.format, &value, format!("{value}\n")))
                }
            }
        }
        Command::Identity {
            cartan_type,
            lattice,
            mmax,
        } => {
            let rs = parse_system(cartan_type)?;
            let choice = match lattice {
                LatticeArg::P => LatticeChoice::P,
                LatticeArg::Pdual => LatticeChoice::PDual,
            };
            let profile = identities::descent_stats(&rs, choice, Exec::Parallel)?;
            let report = identities::verify_identity(&profile, 1..=*mmax)?;
            let value = json!({
                "schema": 1,
                "type": cartan_type,
                "d": report.d,
                "f": report.f_phi,
                "divisibility_pass": report.divisibility_pass,
                "symmetry_pass": report.symmetry_pass,
                "checks": report.checks.iter().map(|c| json!({
                    "M": c.m, "lhs": c.lhs, "rhs": c.rhs, "pass": c.pass,
                })).collect::<Vec<_>>(),
                "all_pass": report.all_pass,
            });
            let mut table = format!(
                "d = {:?}, f = {}, divisibility {}, symmetry {}\n",
                report.d, report.f_phi, report.divisibility_pass, report.symmetry_pass
            );
            for c in &report.checks {
                table.push_str(&format!(
                    "M = {:>3}: lhs {} rhs {} {}\n",
                    c.m,
                    c.lhs,
                    c.rhs,
                    if c.pass { "ok" } else { "FAIL" }
                ));
            }
            table.push_str(if report.all_pass { "all pass\n" } else { "FAILURES\n" });
            Ok(emit(cli.format, &value, table))
        }
        Command::Diagram { cartan_type } => {
            let rs = parse_system(cartan_type)?;
            let simples: Vec<usize> = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
            let diag = DynkinDiagram::from_simple_set(&rs, &simples)?;
            let render = diag.render();
            let types = diag.classify()?;
            let value = json!({
                "schema": 1,
                "render": render,
                "components": types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            });
            Ok(emit(cli.format, &value, render + "\n"))
        }
    }
}

fn roots_output(format: Format, rs: &RootSystem, roots: &[AffRoot]) -> String {
    let value = json!({
        "schema": 1,
        "count": roots.len(),
        "roots": roots.iter().map(|x| jsonio::affroot_to_value(rs, x)).collect::<Vec<_>>(),
    });
    let mut table = format!("{} roots\n", roots.len());
    for x in roots {
        table.push_str(&format!("{:?} + {}δ\n", rs.roots[x.root], x.level));
    }
    emit(format, &value, table)
}

/// Entry point used by the binary: parse, run, print, map errors to exit
/// codes.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are successes.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
