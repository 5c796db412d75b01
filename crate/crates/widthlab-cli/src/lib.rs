//! Command execution for the `widthlab` binary.
//!
//! Four commands — `verify-a5`, `certify <target>`, `analyze`, `suite` — all
//! produce a [`Report`] of named checks plus an exit code:
//! 0 = every check passed, 1 = some check failed, 2 = invalid parameters or
//! group spec, 3 = a resource cap prevented the computation.

pub mod report;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use widthlab::catalog::build_group;
use widthlab::constructions::{
    avm_identities_check, certify_b_shift, certify_gn_perfect_width2, certify_mn_perfect,
    gn_group, mg_diameter_check, Params,
};
use widthlab::duality::certify_duality;
use widthlab::group::{
    abelianization_invariants, center, commutator_width_analysis, cr_radical, is_abelian,
    is_almost_simple, is_central_ext_of_semisimple, is_central_product_of_quasisimples,
    is_perfect, is_quasisimple, is_semisimple, is_simple, is_solvable, mask_order,
    normal_subgroups, quotient_group, solvable_radical, Group, GroupSpec,
};
use widthlab::linalg::{BlockShape, FqVector};
use widthlab::{Check, Error};

pub use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "widthlab",
    version,
    about = "Exact verification of finite-group commutator-width certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Block count p (a prime ≥ 5).
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u64,
    /// Field size q (a prime ≠ p).
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u64,
    /// Value modulus m (coprime to p and q); defaults to 3, or 1 for
    /// `certify gn` where values play no role.
    #[arg(long, global = true)]
    pub m: Option<u64>,
    /// Blocks dimension n ≥ 1.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: u32,
    /// Seed for all sampled checks (the seed fully determines them).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample count for randomized identity checks.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: u64,
    /// Cap on group/module enumeration sizes.
    #[arg(long = "cap-enum", global = true, default_value_t = 20_000)]
    pub cap_enum: u64,
    /// Cap on the group size for exact-width breadth-first search.
    #[arg(long = "cap-width", global = true, default_value_t = 20_000)]
    pub cap_width: u64,
    /// Cap on the unknown count for the linear solver.
    #[arg(long = "cap-solve", global = true, default_value_t = 10_000)]
    pub cap_solve: u64,
    /// Write the JSON report to this path (stdout always gets the table).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<std::path::PathBuf>,
    /// Omit elapsed-ms from the report so output is byte-stable per seed.
    #[arg(long, global = true)]
    pub stable: bool,
    /// Group to analyze: a5 | s5 | sl2(5) | subdirect-sl25 | gn(p,q,n) |
    /// perm{…} | mat(q){…}.
    #[arg(long, global = true, value_name = "SPEC")]
    pub group: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustively verify the fixed-point property of commutator pairs in A5.
    VerifyA5,
    /// Run a certificate battery at the configured parameters.
    Certify {
        #[arg(value_enum)]
        target: CertifyTarget,
    },
    /// Structural analysis of the group named by --group.
    Analyze,
    /// The full default verification battery across all reference parameters.
    Suite,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyTarget {
    /// The semidirect product V_n⋊A_p: perfectness and width ≤ 2.
    Gn,
    /// The function module M_n: generated by commutators.
    Mn,
    /// Both of the above (the full product group's perfectness inputs).
    Pn,
    /// Invariant functionals: existence on subgroups, obstruction globally.
    Duality,
}

/// A run that could not produce a report at all.
#[derive(Debug)]
pub struct Fatal {
    pub code: u8,
    pub message: String,
}

/// A finished run: the report plus the process exit code.
#[derive(Debug)]
pub struct RunOutput {
    pub report: Report,
    pub exit: u8,
}

fn fatal(code: u8, message: impl Into<String>) -> Fatal {
    Fatal { code, message: message.into() }
}

/// Stamp every check missing a time with the wall time of the whole battery.
fn stamp(mut checks: Vec<Check>, start: Instant) -> Vec<Check> {
    let elapsed = start.elapsed();
    for c in &mut checks {
        if c.elapsed.is_none() {
            c.elapsed = Some(elapsed);
        }
    }
    checks
}

/// Exit code from the final check list: failures win over cap skips.
fn exit_code(checks: &[Check], cap_aborted: bool) -> u8 {
    if checks.iter().any(|c| c.failed()) {
        1
    } else if cap_aborted {
        3
    } else {
        0
    }
}

/// Default defining vectors for the duality construction: none for n = 1;
/// for n ≥ 2 the single sum-zero vector with blocks (e₁, −e₁, 0, …, 0).
pub fn default_defining(params: Params) -> Vec<FqVector> {
    if params.n < 2 {
        return Vec::new();
    }
    let shape = BlockShape { p: params.p as usize, n: params.n as usize };
    let q = params.q as u32;
    let e1 = FqVector::unit(q, params.n as usize, 0);
    let mut blocks = vec![FqVector::zero(q, params.n as usize); shape.p];
    blocks[0] = e1.clone();
    blocks[1] = e1.neg();
    vec![shape.from_blocks(q, &blocks)]
}

fn echo_common(report: &mut Report, cli: &Cli, m: u64) {
    report.param("p", cli.p);
    report.param("q", cli.q);
    report.param("m", m);
    report.param("n", cli.n);
    echo_run_knobs(report, cli);
}

fn echo_run_knobs(report: &mut Report, cli: &Cli) {
    report.param("seed", cli.seed);
    report.param("samples", cli.samples);
    report.param("cap-enum", cli.cap_enum);
    report.param("cap-width", cli.cap_width);
    report.param("cap-solve", cli.cap_solve);
}

/// Run a battery, converting a cap abort into a single skipped check so the
/// run still yields a structured report (exit code 3).
fn battery(
    name: &str,
    out: &mut Vec<Check>,
    cap_aborted: &mut bool,
    run: impl FnOnce() -> widthlab::Result<Vec<Check>>,
) -> Result<(), Fatal> {
    let start = Instant::now();
    match run() {
        Ok(checks) => {
            out.extend(stamp(checks, start));
            Ok(())
        }
        Err(Error::CapExceeded { what, needed, cap }) => {
            *cap_aborted = true;
            out.push(Check::skipped(
                name,
                format!("{what}: needs at least {needed} elements, cap is {cap}"),
            ));
            Ok(())
        }
        Err(Error::InvalidParameter(msg)) => Err(fatal(2, msg)),
        Err(e) => Err(fatal(1, e.to_string())),
    }
}

pub fn execute(cli: &Cli) -> Result<RunOutput, Fatal> {
    match &cli.command {
        Command::VerifyA5 => run_verify_a5(cli),
        Command::Certify { target } => run_certify(cli, *target),
        Command::Analyze => run_analyze(cli),
        Command::Suite => run_suite(cli),
    }
}

fn run_verify_a5(cli: &Cli) -> Result<RunOutput, Fatal> {
    let mut report = Report::new("verify-a5");
    echo_run_knobs(&mut report, cli);
    let start = Instant::now();
    let lemma = widthlab::perm::verify_a5_fixed_point_lemma();
    report.checks = stamp(lemma.checks, start);
    let exit = exit_code(&report.checks, false);
    Ok(RunOutput { report, exit })
}

fn run_certify(cli: &Cli, target: CertifyTarget) -> Result<RunOutput, Fatal> {
    let m = cli.m.unwrap_or(match target {
        CertifyTarget::Gn => 1,
        _ => 3,
    });
    let params = Params::new(cli.p, cli.q, m, cli.n).map_err(|e| fatal(2, e.to_string()))?;
    let command = match target {
        CertifyTarget::Gn => "certify-gn",
        CertifyTarget::Mn => "certify-mn",
        CertifyTarget::Pn => "certify-pn",
        CertifyTarget::Duality => "certify-duality",
    };
    let mut report = Report::new(command);
    echo_common(&mut report, cli, m);
    if target == CertifyTarget::Duality {
        let defining: Vec<String> =
            default_defining(params).iter().map(|v| v.to_string()).collect();
        report.param("defining", Value::from(defining));
    }

    let mut cap_aborted = false;
    let checks = &mut report.checks;
    match target {
        CertifyTarget::Gn => {
            battery("gn-certificate", checks, &mut cap_aborted, || {
                certify_gn_perfect_width2(cli.p, cli.q, cli.n, cli.cap_enum, cli.cap_width)
            })?;
        }
        CertifyTarget::Mn => {
            battery("mn-certificate", checks, &mut cap_aborted, || {
                certify_mn_perfect(params, cli.cap_enum, cli.seed, cli.samples)
            })?;
        }
        CertifyTarget::Pn => {
            let mut gn_checks = Vec::new();
            battery("gn-certificate", &mut gn_checks, &mut cap_aborted, || {
                certify_gn_perfect_width2(cli.p, cli.q, cli.n, cli.cap_enum, cli.cap_width)
            })?;
            checks.extend(widthlab::check::namespaced("gn", gn_checks));
            let mut mn_checks = Vec::new();
            battery("mn-certificate", &mut mn_checks, &mut cap_aborted, || {
                certify_mn_perfect(params, cli.cap_enum, cli.seed, cli.samples)
            })?;
            checks.extend(widthlab::check::namespaced("mn", mn_checks));
        }
        CertifyTarget::Duality => {
            let defining = default_defining(params);
            battery("duality-certificate", checks, &mut cap_aborted, || {
                certify_duality(
                    params,
                    &defining,
                    cli.cap_enum,
                    cli.cap_solve,
                    cli.samples,
                    cli.seed,
                )
            })?;
        }
    }
    let exit = exit_code(&report.checks, cap_aborted);
    Ok(RunOutput { report, exit })
}

/// One analysis item: runs the closure; a cap error becomes a skipped check.
fn analysis_item(
    name: &str,
    checks: &mut Vec<Check>,
    capped: &mut bool,
    run: impl FnOnce() -> widthlab::Result<String>,
) -> Result<(), Fatal> {
    let start = Instant::now();
    match run() {
        Ok(details) => {
            checks.push(Check::pass(name, details).with_elapsed(start.elapsed()));
            Ok(())
        }
        Err(Error::CapExceeded { what, needed, cap }) => {
            *capped = true;
            checks.push(Check::skipped(
                name,
                format!("{what}: needs at least {needed} elements, cap is {cap}"),
            ));
            Ok(())
        }
        Err(e) => Err(fatal(2, e.to_string())),
    }
}

fn format_invariants(inv: &[u64]) -> String {
    if inv.is_empty() {
        "trivial".to_string()
    } else {
        format!("[{}]", inv.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "))
    }
}

fn run_analyze(cli: &Cli) -> Result<RunOutput, Fatal> {
    let spec_text = cli
        .group
        .as_deref()
        .ok_or_else(|| fatal(2, "analyze requires --group SPEC"))?;
    let spec: GroupSpec = spec_text.parse().map_err(|e: Error| fatal(2, e.to_string()))?;
    let mut report = Report::new("analyze");
    report.param("group", spec_text);
    report.param("cap-enum", cli.cap_enum);
    report.param("cap-width", cli.cap_width);

    let mut capped = false;
    let g = match build_group(&spec, cli.cap_enum) {
        Ok(g) => g,
        Err(Error::CapExceeded { what, needed, cap }) => {
            report.checks.push(Check::skipped(
                "group-built",
                format!("{what}: needs at least {needed} elements, cap is {cap}"),
            ));
            return Ok(RunOutput { report, exit: 3 });
        }
        Err(e) => return Err(fatal(2, e.to_string())),
    };

    let checks = &mut report.checks;
    checks.push(Check::pass("order", format!("|{}| = {}", g.name(), g.size())));
    analysis_item("predicate-abelian", checks, &mut capped, || Ok(is_abelian(&g).to_string()))?;
    analysis_item("predicate-solvable", checks, &mut capped, || Ok(is_solvable(&g).to_string()))?;
    analysis_item("predicate-perfect", checks, &mut capped, || Ok(is_perfect(&g).to_string()))?;
    analysis_item("predicate-simple", checks, &mut capped, || Ok(is_simple(&g).to_string()))?;
    analysis_item("predicate-semisimple", checks, &mut capped, || {
        Ok(is_semisimple(&g, cli.cap_enum)?.to_string())
    })?;
    analysis_item("predicate-quasisimple", checks, &mut capped, || {
        Ok(is_quasisimple(&g)?.to_string())
    })?;
    analysis_item("predicate-almost-simple", checks, &mut capped, || {
        Ok(is_almost_simple(&g, cli.cap_enum)?.to_string())
    })?;
    analysis_item("predicate-central-product-of-quasisimples", checks, &mut capped, || {
        Ok(is_central_product_of_quasisimples(&g, cli.cap_enum)?.to_string())
    })?;
    analysis_item("predicate-central-extension-of-semisimple", checks, &mut capped, || {
        Ok(is_central_ext_of_semisimple(&g, cli.cap_enum)?.to_string())
    })?;
    analysis_item("center-order", checks, &mut capped, || {
        Ok(mask_order(&center(&g)).to_string())
    })?;
    analysis_item("normal-subgroup-count", checks, &mut capped, || {
        Ok(normal_subgroups(&g, cli.cap_enum)?.len().to_string())
    })?;
    analysis_item("solvable-radical-order", checks, &mut capped, || {
        let subs = normal_subgroups(&g, cli.cap_enum)?;
        Ok(mask_order(&solvable_radical(&g, &subs)?).to_string())
    })?;
    analysis_item("cr-radical-order", checks, &mut capped, || {
        let subs = normal_subgroups(&g, cli.cap_enum)?;
        Ok(mask_order(&cr_radical(&g, &subs, cli.cap_enum)?).to_string())
    })?;
    analysis_item("abelianization", checks, &mut capped, || {
        Ok(format_invariants(&abelianization_invariants(&g)?))
    })?;
    analysis_item("commutator-width", checks, &mut capped, || {
        let analysis = commutator_width_analysis(&g, cli.cap_width)?;
        Ok(match analysis.width {
            Some(w) => format!("{w}"),
            None => "undefined (commutators do not generate the group)".to_string(),
        })
    })?;

    let exit = if report.checks.iter().any(|c| c.failed()) {
        1
    } else if capped {
        3
    } else {
        0
    };
    Ok(RunOutput { report, exit })
}

/// Assertion battery over the named catalog groups: classification facts
/// with expected values, exact orders included.
pub fn classification_checks(cap: u64) -> widthlab::Result<Vec<Check>> {
    let mut checks = Vec::new();
    let expect = |checks: &mut Vec<Check>, name: &str, ok: bool, details: String| {
        checks.push(Check::expect(name, ok, details));
    };

    let a5 = widthlab::catalog::a5();
    expect(&mut checks, "a5-simple", is_simple(&a5), "A5 is simple".into());
    expect(&mut checks, "a5-semisimple", is_semisimple(&a5, cap)?, "A5 is semisimple".into());
    expect(&mut checks, "a5-quasisimple", is_quasisimple(&a5)?, "A5 is quasisimple".into());
    expect(
        &mut checks,
        "a5-almost-simple",
        is_almost_simple(&a5, cap)?,
        "A5 is almost simple".into(),
    );
    let a5_width = commutator_width_analysis(&a5, cap)?.width;
    expect(
        &mut checks,
        "a5-width-1",
        a5_width == Some(1),
        format!("commutator width of A5 is {a5_width:?}, expected Some(1)"),
    );

    let s5 = widthlab::catalog::s5();
    expect(
        &mut checks,
        "s5-almost-simple",
        is_almost_simple(&s5, cap)?,
        "S5 is almost simple".into(),
    );
    expect(&mut checks, "s5-not-perfect", !is_perfect(&s5), "S5 is not perfect".into());

    let sl25 = widthlab::catalog::sl2(5, cap)?;
    expect(&mut checks, "sl25-quasisimple", is_quasisimple(&sl25)?, "SL2(5) is quasisimple".into());
    let z = center(&sl25);
    expect(
        &mut checks,
        "sl25-center-order-2",
        mask_order(&z) == 2,
        format!("|Z(SL2(5))| = {}", mask_order(&z)),
    );
    let central_quotient = quotient_group(&sl25, &z)?;
    expect(
        &mut checks,
        "sl25-central-quotient-simple",
        is_simple(&central_quotient),
        "SL2(5)/Z is simple".into(),
    );

    let a5xa5 = widthlab::catalog::a5xa5();
    expect(
        &mut checks,
        "a5xa5-semisimple",
        is_semisimple(&a5xa5, cap)?,
        "A5×A5 is semisimple".into(),
    );
    let normal_count = normal_subgroups(&a5xa5, cap)?.len();
    expect(
        &mut checks,
        "a5xa5-normal-subgroup-count-4",
        normal_count == 4,
        format!("A5×A5 has {normal_count} normal subgroups, expected 4"),
    );

    let sub = widthlab::catalog::subdirect_sl25(cap)?;
    expect(
        &mut checks,
        "subdirect-order-240",
        sub.size() == 240,
        format!("|{}| = {}", sub.name(), sub.size()),
    );
    expect(
        &mut checks,
        "subdirect-not-perfect",
        !is_perfect(&sub),
        "the subdirect group is not perfect".into(),
    );
    let sub_ab = abelianization_invariants(&sub)?;
    expect(
        &mut checks,
        "subdirect-abelianization-2",
        sub_ab == vec![2],
        format!("abelianization invariants {}", format_invariants(&sub_ab)),
    );
    expect(
        &mut checks,
        "subdirect-not-central-product",
        !is_central_product_of_quasisimples(&sub, cap)?,
        "the subdirect group is not a central product of quasisimples".into(),
    );
    Ok(checks)
}

fn run_suite(cli: &Cli) -> Result<RunOutput, Fatal> {
    let mut report = Report::new("suite");
    echo_run_knobs(&mut report, cli);
    let mut cap_aborted = false;
    let mut all = Vec::new();

    let add = |all: &mut Vec<Check>,
                   cap_aborted: &mut bool,
                   prefix: &str,
                   run: Box<dyn FnOnce() -> widthlab::Result<Vec<Check>> + '_>|
     -> Result<(), Fatal> {
        let mut segment = Vec::new();
        battery(prefix, &mut segment, cap_aborted, run)?;
        all.extend(widthlab::check::namespaced(prefix, segment));
        Ok(())
    };

    add(&mut all, &mut cap_aborted, "a5", Box::new(|| {
        Ok(widthlab::perm::verify_a5_fixed_point_lemma().checks)
    }))?;
    for (p, q, n) in [(5u64, 2u64, 1u32), (5, 3, 1)] {
        add(&mut all, &mut cap_aborted, &format!("gn({p},{q},{n})"), Box::new(move || {
            certify_gn_perfect_width2(p, q, n, cli.cap_enum, cli.cap_width)
        }))?;
    }
    for (q, m) in [(2u64, 3u64), (3, 2), (3, 4), (5, 6)] {
        add(&mut all, &mut cap_aborted, &format!("bf({q},{m})"), Box::new(move || {
            certify_b_shift(q, m, cli.cap_enum)
        }))?;
    }
    for (p, q, m, n) in [(5u64, 2u64, 3u64, 1u32), (5, 3, 2, 1)] {
        let params = Params::new(p, q, m, n).map_err(|e| fatal(2, e.to_string()))?;
        add(&mut all, &mut cap_aborted, &format!("mn({p},{q},{m},{n})"), Box::new(move || {
            certify_mn_perfect(params, cli.cap_enum, cli.seed, cli.samples)
        }))?;
        add(&mut all, &mut cap_aborted, &format!("avm({p},{q},{m},{n})"), Box::new(move || {
            avm_identities_check(params, cli.cap_enum, cli.samples, cli.seed)
        }))?;
    }
    add(&mut all, &mut cap_aborted, "mg(5,2,1)", Box::new(|| {
        let gn = gn_group(5, 2, 1, cli.cap_enum)?;
        let mask = gn.vector_part_mask();
        Ok(mg_diameter_check(&gn.group, &mask, cli.cap_width))
    }))?;
    for (p, q, m, n) in [(5u64, 2u64, 3u64, 1u32), (5, 2, 3, 2)] {
        let params = Params::new(p, q, m, n).map_err(|e| fatal(2, e.to_string()))?;
        add(&mut all, &mut cap_aborted, &format!("duality({p},{q},{m},{n})"), Box::new(move || {
            let defining = default_defining(params);
            certify_duality(params, &defining, cli.cap_enum, cli.cap_solve, cli.samples, cli.seed)
        }))?;
    }
    add(&mut all, &mut cap_aborted, "classify", Box::new(|| {
        classification_checks(cli.cap_enum)
    }))?;

    report.checks = all;
    let exit = exit_code(&report.checks, cap_aborted);
    Ok(RunOutput { report, exit })
}

/// Build a [`Group`] for tests and external callers using the same path the
/// analyze command takes.
pub fn build_named_group(spec_text: &str, cap: u64) -> widthlab::Result<Group> {
    build_group(&spec_text.parse::<GroupSpec>()?, cap)
}
