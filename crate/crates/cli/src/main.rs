//! `tlbraid`: verification suites, fusion tables, diagram rendering and
//! twist eigenvalues for the braided Temperley-Lieb category.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tlcore::braid;
use tlcore::fusion::{self, Factor};
use tlcore::morphism::Morphism;
use tlcore::repr::{self, LinkModule};
use tlcore::scalar::Specialization;
use tlcore::suite::{self, Suite, SuiteOptions};
use tlcore::twist;

/// Directory for reports and pictures when `--out` is not given.
const OUT_DIR_VAR: &str = "TLBRAID_OUT_DIR";

#[derive(Parser)]
#[command(name = "tlbraid", version, about = "Exact checks for the braided Temperley-Lieb category")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its JSON report.
    Verify {
        /// tl, combinatorics, braid, twist, repr, fusion, integrable, dilute or all
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// generic, root:L, rational:P/Q or cyclo:N:A
        #[arg(long, default_value = "generic")]
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Random diagram pairs for naturality.
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fusion of two modules: `S2,2 S1,1`, `End2 End2`, or `n1 k1 n2 k2`,
    /// optionally followed by the specialization.
    FusionTable {
        #[arg(num_args = 2..=5, required = true)]
        args: Vec<String>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a diagram, a morphism, or a named generator
    /// (`e:i:n`, `t:i:n`, `eta:r:s`, `id:n`, `dilute-eta`).
    Render {
        text: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twist eigenvalue and det(t_1) on the standard module S_{n,k}.
    Eigen {
        #[arg(num_args = 0..=2)]
        label: Vec<usize>,
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        module: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Ascii,
}

/// Usage problems exit with 2, mathematical failures with 1.
enum Failure {
    Usage(anyhow::Error),
    Math(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = match cli.command {
        Command::Verify { suite, max_n, spec, seed, jobs, random, out } => verify(&suite, max_n, &spec, seed, jobs, random, out),
        Command::FusionTable { args, spec, seed, out } => fusion_table(&args, spec.as_deref(), seed, out),
        Command::Render { text, format, out } => render_cmd(&text, format, out).map_err(Failure::from),
        Command::Eigen { label, module } => eigen(label, module),
    };
    eprintln!("wall time: {:.2}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            eprintln!("failure: {:#}", e);
            ExitCode::from(1)
        }
    }
}

fn parse_spec(text: &str) -> Result<Specialization> {
    text.parse().map_err(|e| anyhow!("{}", e))
}

/// `--out` if given, else `$TLBRAID_OUT_DIR/name`, else `./name`.
fn out_path(out: Option<PathBuf>, name: &str) -> PathBuf {
    out.unwrap_or_else(|| match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) => Path::new(&dir).join(name),
        None => PathBuf::from(name),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn verify(name: &str, max_n: usize, spec: &str, seed: u64, jobs: usize, random: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let suite: Suite = name.parse().map_err(|e: String| anyhow!(e))?;
    let spec = parse_spec(spec)?;
    if matches!(spec, Specialization::Complex(_)) {
        return Err(anyhow!("complex specializations are for display only").into());
    }
    if max_n < 2 {
        return Err(anyhow!("--max-n must be at least 2").into());
    }
    let opts = SuiteOptions { max_n, spec, seed, random };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| anyhow!(e))?;
    let report = pool.install(|| suite::run(suite, &opts));
    let path = out_path(out, &format!("verify-{}.json", suite));
    write_file(&path, &report.to_json_string())?;
    println!("{}: {} passed, {} failed -> {}", report.suite, report.passed(), report.failed(), path.display());
    for c in report.failures().take(10) {
        println!("  FAIL {} {}", c.identity, c.parameters);
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Math(anyhow!("{} case(s) failed", report.failed())))
    }
}

fn parse_factors(args: &[String], spec_flag: Option<&str>) -> Result<(Factor, Factor, String)> {
    let numeric: Vec<Option<usize>> = args.iter().map(|a| a.parse().ok()).collect();
    let (a, b, rest) = if args.len() >= 4 && numeric[..4].iter().all(Option::is_some) {
        let v: Vec<usize> = numeric[..4].iter().map(|x| x.unwrap()).collect();
        let a = Factor::Standard { n: v[0], k: v[1] };
        let b = Factor::Standard { n: v[2], k: v[3] };
        a.module().map_err(|e| anyhow!("{}", e))?;
        b.module().map_err(|e| anyhow!("{}", e))?;
        (a, b, &args[4..])
    } else {
        let a: Factor = args[0].parse().map_err(|e| anyhow!("{}: {}", args[0], e))?;
        let b: Factor = args.get(1).ok_or_else(|| anyhow!("need two factors"))?.parse().map_err(|e| anyhow!("{}: {}", args[1], e))?;
        (a, b, &args[2..])
    };
    let spec = match (rest, spec_flag) {
        ([], None) => "generic".to_string(),
        ([], Some(s)) => s.to_string(),
        ([s], None) => s.clone(),
        ([_], Some(_)) => bail!("specialization given twice"),
        _ => bail!("too many arguments"),
    };
    Ok((a, b, spec))
}

fn fusion_table(args: &[String], spec_flag: Option<&str>, seed: u64, out: Option<PathBuf>) -> Result<(), Failure> {
    let (a, b, spec_text) = parse_factors(args, spec_flag)?;
    let spec = parse_spec(&spec_text)?;
    let table = match fusion::fusion_table(a, b, &spec, seed) {
        Ok(t) => t,
        Err(fusion::FusionError::Unsupported(s)) => return Err(anyhow!("unsupported specialization {}", s).into()),
        Err(e) => return Err(Failure::Math(anyhow!("{}", e))),
    };
    let text = serde_json::to_string_pretty(&table).map_err(|e| anyhow!(e))? + "\n";
    if let Some(p) = out {
        write_file(&p, &text)?;
    }
    print!("{}", text);
    if table.routes_agree && table.relations_hold {
        Ok(())
    } else {
        Err(Failure::Math(anyhow!("monodromy routes or relations disagree")))
    }
}

fn named(text: &str) -> Result<Option<Morphism>> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| anyhow!("bad index `{}`", s));
    let m = match parts.as_slice() {
        ["e", i, n] => Morphism::e(num(i)?, num(n)?).map_err(|e| anyhow!("{}", e))?,
        ["t", i, n] => Morphism::t(num(i)?, num(n)?).map_err(|e| anyhow!("{}", e))?,
        ["eta", r, s] => braid::commutor(num(r)?, num(s)?),
        ["id", n] => Morphism::identity(num(n)?, false),
        ["dilute-eta"] => tlcore::dilute::eta11(),
        _ => return Ok(None),
    };
    Ok(Some(m))
}

fn parse_drawable(text: &str) -> Result<Morphism> {
    if let Some(m) = named(text.trim())? {
        return Ok(m);
    }
    if text.contains("<-") {
        return Morphism::parse(text).map_err(|e| anyhow!("{}", e));
    }
    let d = tlcore::diagram::Diagram::parse(text).map_err(|e| anyhow!("{}", e))?;
    Ok(Morphism::from_diagram(d))
}

fn render_cmd(text: &str, format: Format, out: Option<PathBuf>) -> Result<()> {
    let f = parse_drawable(text)?;
    let (body, ext) = match format {
        Format::Svg => (render::svg(&f), "svg"),
        Format::Ascii => (render::ascii(&f), "txt"),
    };
    if out.is_some() || std::env::var_os(OUT_DIR_VAR).is_some() {
        let path = out_path(out, &format!("render.{}", ext));
        write_file(&path, &body)?;
        println!("{}", path.display());
    } else {
        print!("{}", body);
    }
    Ok(())
}

fn eigen(label: Vec<usize>, module: Option<Vec<usize>>) -> Result<(), Failure> {
    let (n, k) = match (label.as_slice(), module.as_deref()) {
        ([n, k], None) | ([], Some([n, k])) => (*n, *k),
        _ => return Err(anyhow!("give the module as `eigen N K` or `--module N K`").into()),
    };
    let m = LinkModule::standard(n, k).map_err(|e| anyhow!("{}", e))?;
    let gamma = repr::gamma(k);
    let acting = repr::eigenvalue_on_standard(&twist::twist_element(n).value, &m).map_err(|e| Failure::Math(anyhow!("{}", e)))?;
    let mut out = json!({
        "module": m.label(),
        "n": n,
        "k": k,
        "dim": m.dim(),
        "gamma": gamma.to_text(),
        "gamma_q_exponent": format!("{}/2", k * (k + 2)),
        "gamma_on_module": acting.to_text(),
    });
    let mut ok = acting == gamma;
    if n >= 2 {
        let det = twist::det_t1(n, k);
        let want = twist::expected_det_t1(n, k);
        ok &= det == want;
        out["det_t1"] = json!(det.to_text());
        out["det_t1_formula"] = json!(want.to_text());
    }
    out["agree"] = json!(ok);
    println!("{}", serde_json::to_string_pretty(&out).map_err(|e| anyhow!(e))?);
    if ok {
        Ok(())
    } else {
        Err(Failure::Math(anyhow!("twist eigenvalue or det(t_1) disagrees with the closed form")))
    }
}
