//! Command-line surface: classify singularity sets, inspect discriminant
//! forms, enumerate rank-2 genera, compute Brown invariants, and run the
//! acceptance corpus.

use sextic::classify::rigid_isotopy_classes;
use sextic::config::Limits;
use sextic::error::Error;
use sextic::fqf::{
    brown_blocks, brown_gauss, from_blocks, normal_form, parse_form_expression, render_blocks,
};
use sextic::lattice::{parse_gram, AdeSymbol, GramLattice};
use sextic::rank2::enumerate_genus;
use sextic::rootdata::{make_root_lattice, parse_singularities};

const USAGE: &str = "\
usage: sextic <subcommand> [options]

subcommands:
  classify <SIGMA>              rigid isotopy classification of sextics with
                                the given singularities (e.g. \"2A9+A1\")
  discr <SYMBOL|SET|FILE>       discriminant form of an ADE lattice, of a
                                singularity-set root lattice, or of a Gram
                                matrix file (rank header + rows)
  genus2 --det <D> --discr <F>  all reduced M(a,b,c) with the given
                                discriminant form (|F| must equal D)
  brown <FORM>                  Brown invariant, by Gauss sum and by blocks
  selftest                      run the acceptance corpus

options:
  --json                        machine-readable output (classify)
  --max-group-order <n>         enumeration bound on finite groups [4096]
  --max-work <n>                work budget for backtracking searches
  --debug-full-root-check       verify the root condition on all roots
  --seed <n>                    seed for randomized property sampling

environment fallbacks: SEXTIC_JSON, SEXTIC_MAX_GROUP_ORDER, SEXTIC_MAX_WORK,
SEXTIC_DEBUG_FULL_ROOT_CHECK, SEXTIC_SEED (flags take precedence).
exit codes: 0 success, 1 domain error, 2 bound exceeded, 3 internal
inconsistency.
";

struct Invocation {
    limits: Limits,
    json: bool,
    positionals: Vec<String>,
    det: Option<i64>,
    discr: Option<String>,
}

fn parse_args(args: &[String]) -> Result<Invocation, Error> {
    let mut limits = Limits::default();
    let mut json = false;
    if let Ok(v) = std::env::var("SEXTIC_MAX_GROUP_ORDER") {
        limits.max_group_order = v
            .parse()
            .map_err(|_| Error::Domain("bad SEXTIC_MAX_GROUP_ORDER".into()))?;
    }
    if let Ok(v) = std::env::var("SEXTIC_MAX_WORK") {
        limits.max_work = v
            .parse()
            .map_err(|_| Error::Domain("bad SEXTIC_MAX_WORK".into()))?;
    }
    if let Ok(v) = std::env::var("SEXTIC_SEED") {
        limits.seed = v
            .parse()
            .map_err(|_| Error::Domain("bad SEXTIC_SEED".into()))?;
    }
    if let Ok(v) = std::env::var("SEXTIC_DEBUG_FULL_ROOT_CHECK") {
        limits.debug_full_root_check = v == "1" || v.eq_ignore_ascii_case("true");
    }
    if let Ok(v) = std::env::var("SEXTIC_JSON") {
        json = v == "1" || v.eq_ignore_ascii_case("true");
    }

    let mut positionals = Vec::new();
    let mut det = None;
    let mut discr = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--debug-full-root-check" => limits.debug_full_root_check = true,
            "--max-group-order" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Domain("--max-group-order needs a value".into()))?;
                limits.max_group_order = v
                    .parse()
                    .map_err(|_| Error::Domain("bad --max-group-order".into()))?;
            }
            "--max-work" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Domain("--max-work needs a value".into()))?;
                limits.max_work = v
                    .parse()
                    .map_err(|_| Error::Domain("bad --max-work".into()))?;
            }
            "--seed" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Domain("--seed needs a value".into()))?;
                limits.seed = v.parse().map_err(|_| Error::Domain("bad --seed".into()))?;
            }
            "--det" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Domain("--det needs a value".into()))?;
                det = Some(v.parse().map_err(|_| Error::Domain("bad --det".into()))?);
            }
            "--discr" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Domain("--discr needs a value".into()))?;
                discr = Some(v.clone());
            }
            other if other.starts_with("--") => {
                return Err(Error::Domain(format!("unknown flag {other}")));
            }
            other => positionals.push(other.to_string()),
        }
    }
    if limits.max_group_order == 0 || limits.max_work == 0 {
        return Err(Error::Domain("bounds must be positive".into()));
    }
    Ok(Invocation {
        limits,
        json,
        positionals,
        det,
        discr,
    })
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        print!("{USAGE}");
        std::process::exit(if args.is_empty() { 1 } else { 0 });
    }
    let sub = args[0].clone();
    let rest = args[1..].to_vec();
    match run(&sub, &rest) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(sub: &str, rest: &[String]) -> Result<i32, Error> {
    let inv = parse_args(rest)?;
    match sub {
        "classify" => cmd_classify(&inv),
        "discr" => cmd_discr(&inv),
        "genus2" => cmd_genus2(&inv),
        "brown" => cmd_brown(&inv),
        "selftest" => cmd_selftest(&inv),
        other => Err(Error::Domain(format!(
            "unknown subcommand `{other}`; try --help"
        ))),
    }
}

fn cmd_classify(inv: &Invocation) -> Result<i32, Error> {
    let expr = inv
        .positionals
        .first()
        .ok_or_else(|| Error::Domain("classify needs a singularity set".into()))?;
    let sigma = parse_singularities(expr)?;
    let report = rigid_isotopy_classes(&sigma, &inv.limits)?;
    if inv.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).unwrap()
        );
    } else {
        print!("{}", report.render_text());
    }
    Ok(0)
}

fn cmd_discr(inv: &Invocation) -> Result<i32, Error> {
    let what = inv
        .positionals
        .first()
        .ok_or_else(|| Error::Domain("discr needs a lattice symbol or file".into()))?;
    let lattice: GramLattice = if std::path::Path::new(what).exists() {
        let text = std::fs::read_to_string(what)
            .map_err(|e| Error::Domain(format!("cannot read {what}: {e}")))?;
        parse_gram(&text)?
    } else if let Some(l) = parse_single_symbol(what)? {
        l
    } else {
        parse_singularities(what)?.lattice()
    };
    let det = lattice.det();
    if det.magnitude() == &num_bigint::BigUint::from(1u8) {
        println!("0");
        return Ok(0);
    }
    let disc = lattice.discriminant_form()?;
    println!("{}", render_blocks(&normal_form(&disc.form)));
    Ok(0)
}

fn parse_single_symbol(text: &str) -> Result<Option<GramLattice>, Error> {
    let t = text.trim().to_ascii_uppercase();
    let Some(first) = t.chars().next() else {
        return Ok(None);
    };
    if !matches!(first, 'A' | 'D' | 'E') {
        return Ok(None);
    }
    let Ok(rank) = t[1..].parse::<u32>() else {
        return Ok(None);
    };
    let symbol = match first {
        'A' => AdeSymbol::A(rank),
        'D' => AdeSymbol::D(rank),
        _ => AdeSymbol::E(rank),
    };
    Ok(Some(make_root_lattice(symbol)?))
}

fn cmd_genus2(inv: &Invocation) -> Result<i32, Error> {
    let det = inv
        .det
        .ok_or_else(|| Error::Domain("genus2 needs --det".into()))?;
    let expr = inv
        .discr
        .as_ref()
        .ok_or_else(|| Error::Domain("genus2 needs --discr".into()))?;
    let form = from_blocks(&parse_form_expression(expr)?)?;
    let order = form.group_order()? as i64;
    if order != det {
        return Err(Error::Domain(format!(
            "|discr| = {order} does not match --det {det}"
        )));
    }
    let genus = enumerate_genus(&form, &inv.limits)?;
    if genus.is_empty() {
        println!("genus is empty");
    } else {
        for m in genus {
            println!("{m}");
        }
    }
    Ok(0)
}

fn cmd_brown(inv: &Invocation) -> Result<i32, Error> {
    let expr = inv
        .positionals
        .first()
        .ok_or_else(|| Error::Domain("brown needs a form expression".into()))?;
    let form = from_blocks(&parse_form_expression(expr)?)?.validated(&inv.limits)?;
    println!(
        "gauss: {}, blocks: {}",
        brown_gauss(&form),
        brown_blocks(&form)
    );
    Ok(0)
}

fn cmd_selftest(inv: &Invocation) -> Result<i32, Error> {
    let results = sextic::selftest::run_all(&inv.limits);
    let mut failed = 0;
    for r in &results {
        println!(
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} criteria, {} failed", results.len(), failed);
    Ok(if failed == 0 { 0 } else { 1 })
}
