use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use trisym::curvature::{Curvature, CurvatureReport, MetricSpec, PinchConfig};
use trisym::rational::{fmt_q, parse_q};
use trisym::rootsys::{DynkinType, RootSystem};
use trisym::threesym::{enumerate_order3, Auto3Kind, Auto3Spec, ThreeSymSpace};
use trisym::{presets, Error};

#[derive(Parser, Debug)]
#[command(name = "trisym", version, about = "Root systems, 3-symmetric spaces and their sectional curvature")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simple and positive roots, gram matrix, maximal root and marks
    Roots {
        /// Dynkin type, e.g. G2, C3, E8
        #[arg(value_name = "TYPE")]
        ty: String,
    },
    /// Order-3 inner automorphisms and their fixed algebras
    Auto3 {
        #[arg(value_name = "TYPE")]
        ty: String,
        /// A3I, A3II, A3III or A3IV
        kind: Option<String>,
        /// node (1-based)
        i: Option<usize>,
        /// second node for A3II
        j: Option<usize>,
        /// every automorphism allowed by the marks
        #[arg(long, conflicts_with_all = ["kind", "i", "j"])]
        all: bool,
        /// with --all, drop specs related by a diagram symmetry
        #[arg(long, requires = "all")]
        dedup: bool,
    },
    /// Curvature report for a named space (cp3-sp, s6, f6, ...) or TYPE:KIND:i[:j]
    Curv {
        space: String,
        /// metric -c B, given as p/q
        #[arg(long, default_value = "1/2")]
        scale: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> trisym::Result<Output> {
    match &cli.command {
        Command::Roots { ty } => {
            let rs = RootSystem::new(ty.parse()?)?;
            Ok(Output { text: render_roots(&rs, cli.format), code: 0 })
        }
        Command::Auto3 { ty, kind, i, j, all, dedup } => {
            let ty: DynkinType = ty.parse()?;
            let rs = RootSystem::new(ty)?;
            let specs = if *all {
                enumerate_order3(&rs, *dedup)
            } else {
                let (Some(kind), Some(i)) = (kind, i) else {
                    return Err(Error::InvalidArgument("give KIND and i, or --all".into()));
                };
                let kind: Auto3Kind = kind.parse()?;
                let node = |k: usize| {
                    k.checked_sub(1)
                        .ok_or_else(|| Error::InvalidArgument("nodes are numbered from 1".into()))
                };
                vec![Auto3Spec::new(kind, node(*i)?, j.map(node).transpose()?)]
            };
            let spaces = specs
                .iter()
                .map(|s| ThreeSymSpace::from_type(ty, *s))
                .collect::<trisym::Result<Vec<_>>>()?;
            Ok(Output { text: render_auto3(&spaces, cli.format), code: 0 })
        }
        Command::Curv { space, scale, seed, starts, max_iter } => {
            let metric = MetricSpec::new(parse_q(scale)?)?;
            let built = presets::build(space)?;
            let model = Curvature::new(&built, metric)?.with_name(space.as_str());
            let cfg = PinchConfig { starts: *starts, seed: *seed, max_iter: *max_iter, ..Default::default() };
            let report = CurvatureReport::run(&model, &cfg)?;
            let code = if report.fully_converged() { 0 } else { 3 };
            Ok(Output { text: render_curv(&report, cli.format), code })
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn coords(v: &[i32]) -> String {
    let parts: Vec<String> = v.iter().map(i32::to_string).collect();
    format!("({})", parts.join(","))
}

/// 17 significant digits.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn render_roots(rs: &RootSystem, format: Format) -> String {
    let j = rs.to_json();
    let mut s = String::new();
    match format {
        Format::Json => return json(&j),
        Format::Csv => {
            s.push_str("index,height,root\n");
            for (k, r) in j.positive.iter().enumerate() {
                let _ = writeln!(s, "{},{},\"{}\"", k + 1, j.heights[k], coords(r));
            }
        }
        Format::Table => {
            let _ = writeln!(s, "type          {}", j.r#type);
            let _ = writeln!(s, "rank          {}", j.rank);
            let _ = writeln!(s, "positive      {}", j.positive.len());
            let _ = writeln!(s, "maximal root  {}", coords(&j.maximal_root));
            let _ = writeln!(s, "marks         {}", coords(&j.marks));
            s.push_str("simple roots\n");
            for &k in &j.simple {
                let _ = writeln!(s, "  a{}  {}", k + 1, coords(&j.positive[k]));
            }
            s.push_str("gram\n");
            for row in &j.gram {
                let _ = writeln!(s, "  {}", row.iter().map(|x| format!("{x:>8}")).collect::<String>());
            }
            s.push_str("positive roots (height)\n");
            for (k, r) in j.positive.iter().enumerate() {
                let _ = writeln!(s, "  {:>3}  {:>3}  {}", k + 1, j.heights[k], coords(r));
            }
        }
    }
    s
}

fn render_auto3(spaces: &[ThreeSymSpace], format: Format) -> String {
    let rows: Vec<_> = spaces.iter().map(|sp| sp.to_json(&sp.spec().to_string())).collect();
    let mut s = String::new();
    match format {
        Format::Json => return json(&rows),
        Format::Csv => {
            s.push_str("type,spec,H,isotropy,dim_k,dim_m,piH,alphaH\n");
            for r in &rows {
                let pi: Vec<String> = r.pi_h.iter().map(|v| coords(v)).collect();
                let hist: Vec<String> = r.alpha_h.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                let _ = writeln!(
                    s,
                    "{},{},\"{}\",{},{},{},\"{}\",\"{}\"",
                    r.r#type,
                    r.spec,
                    r.h.join(" "),
                    r.isotropy,
                    r.dim_k,
                    r.dim_m,
                    pi.join(" "),
                    hist.join(" ")
                );
            }
        }
        Format::Table => {
            for r in &rows {
                let pi: Vec<String> = r.pi_h.iter().map(|v| coords(v)).collect();
                let dh: Vec<String> = r.delta_h_plus.iter().map(|v| coords(v)).collect();
                let hist: Vec<String> = r.alpha_h.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                let _ = writeln!(s, "{} {}", r.r#type, r.spec);
                let _ = writeln!(s, "  H          ({})", r.h.join(", "));
                let _ = writeln!(s, "  isotropy   {}", r.isotropy);
                let _ = writeln!(s, "  dim k      {}", r.dim_k);
                let _ = writeln!(s, "  dim m      {}", r.dim_m);
                let _ = writeln!(s, "  piH        {}", pi.join(" "));
                let _ = writeln!(s, "  deltaH+    {}", dh.join(" "));
                let _ = writeln!(s, "  alphaH     {}", hist.join(" "));
            }
        }
    }
    s
}

fn render_curv(r: &CurvatureReport, format: Format) -> String {
    let mut s = String::new();
    let scalars = [
        ("kmin", r.kmin()),
        ("kmax", r.kmax()),
        ("delta", r.delta()),
        ("einstein_defect", r.einstein_defect),
    ];
    match format {
        Format::Json => {
            s = r.to_json();
            s.push('\n');
        }
        Format::Csv => {
            s.push_str("field,i,j,value\n");
            let _ = writeln!(s, "space,,,{}", r.space);
            let _ = writeln!(s, "scale,,,{}", fmt_q(&r.scale));
            let _ = writeln!(s, "dim_m,,,{}", r.dim_m());
            for (k, v) in scalars {
                let _ = writeln!(s, "{k},,,{}", float(v));
            }
            match &r.flat_witness {
                Some(w) => {
                    let _ = writeln!(s, "flat_numerator,,,{}", float(w.numerator));
                    let _ = writeln!(s, "flat_centralizer_dim,,,{}", w.centralizer_dim);
                }
                None => s.push_str("flat_numerator,,,none\n"),
            }
            let _ = writeln!(s, "starts,,,{}", r.config.starts);
            let _ = writeln!(s, "seed,,,{}", r.config.seed);
            let _ = writeln!(s, "max_iter,,,{}", r.config.max_iter);
            let _ = writeln!(s, "converged_starts,,,{}", r.converged_starts());
            for e in &r.basis_table {
                let _ = writeln!(s, "basis,{},{},{}", e.i, e.j, fmt_q(&e.k));
            }
        }
        Format::Table => {
            let _ = writeln!(s, "space             {}", r.space);
            let _ = writeln!(s, "scale             {}", fmt_q(&r.scale));
            let _ = writeln!(s, "dim m             {}", r.dim_m());
            for (k, v) in scalars {
                let _ = writeln!(s, "{k:<18}{}", float(v));
            }
            match &r.flat_witness {
                Some(w) => {
                    let _ = writeln!(
                        s,
                        "flat plane        numerator {}, centralizer dim {}",
                        float(w.numerator),
                        w.centralizer_dim
                    );
                }
                None => s.push_str("flat plane        none found\n"),
            }
            let _ = writeln!(
                s,
                "starts            {} (seed {}, max_iter {}, converged {})",
                r.config.starts,
                r.config.seed,
                r.config.max_iter,
                r.converged_starts()
            );
            s.push_str("basis pairs (i, j, K)\n");
            for e in &r.basis_table {
                let _ = writeln!(s, "  {:>3} {:>3}  {}", e.i, e.j, fmt_q(&e.k));
            }
        }
    }
    s
}
