//! Command line front end: generation, conversion, symmetry actions,
//! counting, fixed points, orbits, verification and rendering, all speaking
//! the canonical one-line text protocol so commands compose through pipes.
//!
//! Exit codes: 0 success, 1 input validation failure, 2 verification found
//! a formula/brute-force mismatch, 3 usage error.

use catmirror::codec::{self, Object};
use catmirror::enumeration::{
    brute_statistic, burnside_orbits, closed_form, fixed_points, orbit_transversal, verify_report,
    GroupSpec, Statistic, Variant,
};
use catmirror::generators;
use catmirror::render::{self, RenderOptions};
use catmirror::{bijections, symmetry, DihedralElement, Error};
use clap::{Parser, Subcommand};
use std::io::{Read, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "catmirror",
    version,
    about = "Non-crossing trees, quadrangular dissections, ternary trees and their dualities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stream a whole family in canonical order, one object per line
    Gen {
        /// nct | qd | ternary | pcdd | self-dual-ternary
        family: String,
        /// Vertex count for nct/qd, internal count for the tree families
        size: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Apply a bijection to every input object
    Convert {
        /// phi | phi-inv | psi | psi-inv | sigma | sigma-inv | medial |
        /// medial-inv | tau
        map: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        inline: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Apply a symmetry operator to every input object
    Act {
        /// delta | delta-inv | star | barstar | reflect-s | rev |
        /// rotate:<j> | dihedral:<k>,<f>
        op: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        inline: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print an exact count
    Count {
        /// nu | self-dual | q-rot | q-dihedral | nct-rot | nct-dihedral |
        /// s-oriented | s-unoriented | anti-self-dual
        stat: String,
        n: u32,
        #[arg(long, default_value = "aligned")]
        variant: String,
    },
    /// Fixed dissections of the element delta^k r^f
    Fixed {
        k: u32,
        f: u8,
        n: u32,
        #[arg(long)]
        witnesses: bool,
    },
    /// Orbit count under a label group (c2n, d2n, cn, dn)
    Orbits {
        group: String,
        n: u32,
        #[arg(long)]
        transversal: bool,
    },
    /// Compare every closed form against brute force up to a size
    Verify {
        #[arg(long)]
        max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Render input objects as SVG (trees, dissections) or DOT (ternary,
    /// ditrees); --overlay draws a dissection with both derived trees
    Render {
        #[arg(long)]
        overlay: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        inline: Option<String>,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let usage_ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if usage_ok { 0 } else { 3 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Argument(_) => 3,
                _ => 1,
            }
        }
    }
}

fn read_objects(
    input: &Option<PathBuf>,
    inline: &Option<String>,
) -> catmirror::Result<Vec<Object>> {
    let text = if let Some(inline) = inline {
        inline.clone()
    } else if let Some(path) = input {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?
    } else {
        let mut buf = String::new();
        std::io::stdin()
            .lock()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Argument(format!("cannot read stdin: {e}")))?;
        buf
    };
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(codec::parse_line)
        .collect()
}

fn emit(objects: impl IntoIterator<Item = Object>, format: &str) -> catmirror::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for obj in objects {
        let line = match format {
            "text" => codec::format_object(&obj),
            "json" => codec::to_json(&obj).to_string(),
            other => {
                return Err(Error::Argument(format!(
                    "unknown format {other}; expected text or json"
                )))
            }
        };
        if writeln!(out, "{line}").is_err() {
            break; // downstream pipe closed
        }
    }
    Ok(())
}

fn run(cli: Cli) -> catmirror::Result<i32> {
    match cli.cmd {
        Cmd::Gen {
            family,
            size,
            format,
        } => {
            let key: String = family
                .to_ascii_lowercase()
                .chars()
                .filter(|c| c.is_ascii_alphanumeric())
                .collect();
            if (key == "nct" || key == "qd") && size < 1 {
                return Err(Error::Argument("size must be at least 1".into()));
            }
            match key.as_str() {
                "nct" => emit(generators::gen_ncts(size).map(Object::Nct), &format)?,
                "qd" => emit(generators::gen_dissections(size).map(Object::Qd), &format)?,
                "ternary" => emit(generators::gen_ternary(size).map(Object::Ternary), &format)?,
                "pcdd" => emit(generators::gen_pcdds(size).map(Object::Pcdd), &format)?,
                "selfdualternary" => emit(
                    generators::gen_self_dual_ternary(size).map(Object::Ternary),
                    &format,
                )?,
                other => return Err(Error::Argument(format!(
                    "unknown family {other}; expected nct, qd, ternary, pcdd or self-dual-ternary"
                ))),
            }
            Ok(0)
        }
        Cmd::Convert {
            map,
            input,
            inline,
            format,
        } => {
            let objects = read_objects(&input, &inline)?;
            let mut mapped = Vec::with_capacity(objects.len());
            for obj in objects {
                mapped.push(convert_one(&map, obj)?);
            }
            emit(mapped, &format)?;
            Ok(0)
        }
        Cmd::Act {
            op,
            input,
            inline,
            format,
        } => {
            let objects = read_objects(&input, &inline)?;
            let mut mapped = Vec::with_capacity(objects.len());
            for obj in objects {
                mapped.push(act_one(&op, obj)?);
            }
            emit(mapped, &format)?;
            Ok(0)
        }
        Cmd::Count { stat, n, variant } => {
            let key: String = stat
                .to_ascii_lowercase()
                .chars()
                .filter(|c| c.is_ascii_alphanumeric())
                .collect();
            if key == "nu" {
                let v = match variant.as_str() {
                    "brute" => num_bigint::BigUint::from(generators::gen_ncts(n).count()),
                    _ => generators::nu(n)?,
                };
                println!("{v}");
                return Ok(0);
            }
            let statistic: Statistic = stat.parse()?;
            match variant.as_str() {
                "printed" | "as-printed" => {
                    let v = closed_form(statistic, n, Variant::AsPrinted)?;
                    if v.is_integral() {
                        println!("{v}");
                    } else {
                        println!("{v} [non-integer]");
                    }
                }
                "aligned" | "oracle-aligned" => {
                    println!("{}", closed_form(statistic, n, Variant::OracleAligned)?)
                }
                "brute" => println!("{}", brute_statistic(statistic, n)?),
                other => {
                    return Err(Error::Argument(format!(
                        "unknown variant {other}; expected printed, aligned or brute"
                    )))
                }
            }
            Ok(0)
        }
        Cmd::Fixed { k, f, n, witnesses } => {
            if n < 1 {
                return Err(Error::Argument("size must be at least 1".into()));
            }
            let g = DihedralElement::new(2 * n, k as i64, f != 0)?;
            let (count, wit) = fixed_points(&g, n)?;
            println!("{count}");
            if witnesses {
                for q in wit {
                    println!("{}", codec::format_qd(&q));
                }
            }
            Ok(0)
        }
        Cmd::Orbits {
            group,
            n,
            transversal,
        } => {
            if n < 1 {
                return Err(Error::Argument("size must be at least 1".into()));
            }
            let spec: GroupSpec = group.parse()?;
            println!("{}", burnside_orbits(spec, n));
            if transversal {
                for q in orbit_transversal(spec, n) {
                    println!("{}", codec::format_qd(&q));
                }
            }
            Ok(0)
        }
        Cmd::Verify { max, json } => {
            let report = verify_report(max)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", report.to_text());
            }
            if report.has_formula_mismatch() || !report.all_checks_pass() {
                Ok(2)
            } else {
                Ok(0)
            }
        }
        Cmd::Render {
            overlay,
            out,
            input,
            inline,
        } => {
            let objects = read_objects(&input, &inline)?;
            let first = objects
                .into_iter()
                .next()
                .ok_or_else(|| Error::Argument("render needs one input object".into()))?;
            let opts = RenderOptions::default();
            let text = match (overlay, first) {
                (true, Object::Qd(q)) => {
                    let odd = bijections::phi(&q)?;
                    let even = symmetry::nct_delta(&odd, false);
                    render::render_overlay_svg(&q, &odd, &even, opts)?
                }
                (true, other) => {
                    return Err(Error::Argument(format!(
                        "--overlay expects a dissection, got {}",
                        other.kind()
                    )))
                }
                (false, Object::Nct(t)) => render::render_nct_svg(&t, opts),
                (false, Object::Qd(q)) => render::render_qd_svg(&q, opts),
                (false, Object::Ternary(t)) => render::render_ternary_dot(&t),
                (false, Object::Pcdd(p)) => render::render_pcdd_dot(&p),
            };
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    Error::Argument(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn convert_one(map: &str, obj: Object) -> catmirror::Result<Object> {
    let wrong = |expected: &str, got: &Object| {
        Error::Argument(format!(
            "map {map} expects {expected} input, got {}",
            got.kind()
        ))
    };
    Ok(match map {
        "phi" => match obj {
            Object::Qd(q) => Object::Nct(bijections::phi(&q)?),
            other => return Err(wrong("qd", &other)),
        },
        "phi-inv" => match obj {
            Object::Nct(t) => Object::Qd(bijections::phi_inv(&t)),
            other => return Err(wrong("nct", &other)),
        },
        "psi" => match obj {
            Object::Qd(q) => Object::Ternary(bijections::psi(&q)?),
            other => return Err(wrong("qd", &other)),
        },
        "psi-inv" => match obj {
            Object::Ternary(t) => Object::Qd(bijections::psi_inv(&t)),
            other => return Err(wrong("ternary", &other)),
        },
        "sigma" => match obj {
            Object::Nct(t) => Object::Ternary(bijections::sigma(&t)),
            other => return Err(wrong("nct", &other)),
        },
        "sigma-inv" => match obj {
            Object::Ternary(t) => Object::Nct(bijections::sigma_inv(&t)),
            other => return Err(wrong("ternary", &other)),
        },
        "medial" => match obj {
            Object::Nct(t) => Object::Pcdd(bijections::medial(&t)),
            other => return Err(wrong("nct", &other)),
        },
        "medial-inv" => match obj {
            Object::Pcdd(p) => Object::Nct(bijections::medial_inv(&p)?),
            other => return Err(wrong("pcdd", &other)),
        },
        "tau" => match obj {
            Object::Pcdd(p) => Object::Ternary(bijections::tau(&p)?),
            other => return Err(wrong("pcdd", &other)),
        },
        other => {
            return Err(Error::Argument(format!(
                "unknown map {other}; expected phi, phi-inv, psi, psi-inv, sigma, sigma-inv, medial, medial-inv or tau"
            )))
        }
    })
}

fn act_one(op: &str, obj: Object) -> catmirror::Result<Object> {
    let wrong = |expected: &str, got: &Object| {
        Error::Argument(format!(
            "op {op} expects {expected} input, got {}",
            got.kind()
        ))
    };
    if let Some(j) = op.strip_prefix("rotate:") {
        let j: i64 = j
            .parse()
            .map_err(|_| Error::Argument(format!("bad rotation count in {op}")))?;
        return match obj {
            Object::Nct(t) => Ok(Object::Nct(symmetry::nct_rotate(&t, j))),
            other => Err(wrong("nct", &other)),
        };
    }
    if let Some(kf) = op.strip_prefix("dihedral:") {
        let (k, f) = kf
            .split_once(',')
            .ok_or_else(|| Error::Argument(format!("expected dihedral:<k>,<f>, got {op}")))?;
        let k: i64 = k
            .parse()
            .map_err(|_| Error::Argument(format!("bad rotation exponent in {op}")))?;
        let f: u8 = f
            .parse()
            .map_err(|_| Error::Argument(format!("bad reflection flag in {op}")))?;
        return match obj {
            Object::Qd(q) => {
                let g = DihedralElement::new(q.polygon_size(), k, f != 0)?;
                Ok(Object::Qd(g.apply(&q)?))
            }
            other => Err(wrong("qd", &other)),
        };
    }
    Ok(match op {
        "delta" => match obj {
            Object::Nct(t) => Object::Nct(symmetry::nct_delta(&t, false)),
            other => return Err(wrong("nct", &other)),
        },
        "delta-inv" => match obj {
            Object::Nct(t) => Object::Nct(symmetry::nct_delta(&t, true)),
            other => return Err(wrong("nct", &other)),
        },
        "star" => match obj {
            Object::Nct(t) => Object::Nct(symmetry::nct_star(&t)),
            Object::Ternary(t) => Object::Ternary(symmetry::ternary_star(&t)),
            Object::Pcdd(p) => Object::Pcdd(symmetry::pcdd_star(&p)?),
            Object::Qd(q) => {
                let r = DihedralElement::reflection_r(q.polygon_size());
                Object::Qd(r.apply(&q)?)
            }
        },
        "barstar" => match obj {
            Object::Nct(t) => Object::Nct(symmetry::nct_barstar(&t)),
            Object::Pcdd(p) => Object::Pcdd(symmetry::pcdd_barstar(&p)?),
            other => return Err(wrong("nct or pcdd", &other)),
        },
        "bar" => match obj {
            Object::Pcdd(p) => Object::Pcdd(symmetry::pcdd_bar(&p)?),
            other => return Err(wrong("pcdd", &other)),
        },
        "reflect-s" => match obj {
            Object::Nct(t) => Object::Nct(symmetry::nct_reflect_s(&t)),
            other => return Err(wrong("nct", &other)),
        },
        "rev" => match obj {
            Object::Nct(t) => Object::Nct(symmetry::nct_rev(&t)),
            other => return Err(wrong("nct", &other)),
        },
        other => {
            return Err(Error::Argument(format!(
                "unknown op {other}; expected delta, delta-inv, star, barstar, bar, reflect-s, rev, rotate:<j> or dihedral:<k>,<f>"
            )))
        }
    })
}
