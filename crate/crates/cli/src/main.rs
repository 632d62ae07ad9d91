use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lowerk::abelian::{
    amalgam_k_assemble, bundled_ksheet, bundled_spec, carter_rank, k_minus1, negk_consistency, AssemblySpec, KError,
    NegKCheck,
};
use lowerk::casebook::{run_case, CaseError, CASES};
use lowerk::group::{build_group_with, GroupError};
use lowerk::presentation::DEFAULT_COSET_LIMIT;
use lowerk::repcount::{count_irreducibles, local_counts, p_singular_classes, FusionSpec, RepError};
use lowerk::{CaseReport, FgAbelianGroup, FiniteGroup};

#[derive(Parser)]
#[command(name = "lowerk", version, about = "Lower K-theory of amalgams of finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Coset limit for groups built by enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a bundled group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Fused conjugacy classes, or p-singular classes.
    Classes {
        name: String,
        /// `q`, `qp:<p>`, `fp:<p>` or `singular:<p>`.
        #[arg(long, default_value = "q")]
        fusion: String,
    },
    /// Representation counts and lower K-groups of a finite group.
    Ksheet { name: String },
    /// Assemble the lower K-groups of an amalgam from a spec file or bundled spec name.
    Assemble { spec: String },
    /// Run a worked example.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["pb3", "b3", "mcg-rp2-3", "words", "all"]))]
        case: String,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, centre, class sizes and element orders.
    Info { name: String },
}

/// Error categories, by exit code.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    DataGap(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::DataGap(_) => 3,
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<KError> for Failure {
    fn from(e: KError) -> Self {
        match e {
            KError::UnknownSchurData(_) | KError::MissingSheet(_) | KError::IllFormedMap(_) => {
                Failure::DataGap(e.into())
            }
            KError::MissingDegree(_) | KError::Schema(_) => Failure::Usage(e.into()),
        }
    }
}

impl From<CaseError> for Failure {
    fn from(e: CaseError) -> Self {
        match e {
            CaseError::K(k) => k.into(),
            CaseError::MissingData(_) => Failure::DataGap(e.into()),
            other => Failure::Usage(other.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (Failure::Usage(e) | Failure::DataGap(e)) = &f;
            eprintln!("error: {e:#}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let build = |name: &str| build_group_with(name, cli.coset_limit);
    match &cli.command {
        Command::Group {
            action: GroupAction::Info { name },
        } => {
            let info = GroupInfo::new(&build(name)?);
            emit(cli.format, &info, || info.table());
            Ok(0)
        }
        Command::Classes { name, fusion } => {
            let g = build(name)?;
            let rows = class_rows(&g, fusion)?;
            emit(cli.format, &rows, || class_table(&rows));
            Ok(0)
        }
        Command::Ksheet { name } => {
            let g = build(name)?;
            let (sheet, gap) = KSheetReport::new(&g);
            emit(cli.format, &sheet, || sheet.table());
            match gap {
                Some(e) => Err(e.into()),
                None => Ok(0),
            }
        }
        Command::Assemble { spec } => {
            let spec = load_spec(spec)?;
            let assembly = amalgam_k_assemble(&spec)?;
            emit(cli.format, &assembly, || {
                let mut out = format!("{}\n", assembly.name);
                for d in &assembly.degrees {
                    out += &format!(
                        "{:<7} = {:<28} coker {}, ker {}, Nil {}\n",
                        d.degree.to_string(),
                        d.to_string(),
                        d.coker,
                        d.ker_shift,
                        d.nil
                    );
                }
                out
            });
            Ok(0)
        }
        Command::Verify { case } => {
            let names: Vec<&str> = if case == "all" { CASES.to_vec() } else { vec![case.as_str()] };
            let reports = run_cases(&names)?;
            if cli.format == Format::Json {
                let text = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                println!("{}", text.expect("reports serialize"));
            } else {
                for r in &reports {
                    println!("{}", r.to_table());
                }
            }
            let failed: Vec<String> = reports
                .iter()
                .flat_map(|r| r.failures().map(move |c| format!("{}: {}", r.case, c.name)))
                .collect();
            for f in &failed {
                eprintln!("failed check {f}");
            }
            Ok(if failed.is_empty() { 0 } else { 1 })
        }
    }
}

/// Runs cases concurrently; reports come back in the requested order.
fn run_cases(names: &[&str]) -> Result<Vec<CaseReport>, CaseError> {
    std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|&n| s.spawn(move || run_case(n))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("case thread panicked"))
            .collect()
    })
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("output serializes")),
        Format::Table => print!("{}", table()),
    }
}

fn load_spec(arg: &str) -> Result<AssemblySpec, Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)
            .with_context(|| format!("reading {arg}"))
            .map_err(Failure::Usage)?;
        return Ok(AssemblySpec::from_json(&text)?);
    }
    bundled_spec(arg).ok_or_else(|| Failure::Usage(anyhow!("no spec file or bundled spec named `{arg}`")))
}

#[derive(Serialize)]
struct GroupInfo {
    name: String,
    order: usize,
    center_order: usize,
    abelian: bool,
    class_sizes: Vec<usize>,
    /// `(element order, count)` pairs.
    order_histogram: Vec<(usize, usize)>,
}

impl GroupInfo {
    fn new(g: &FiniteGroup) -> Self {
        let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        class_sizes.sort_unstable();
        GroupInfo {
            name: g.name().to_string(),
            order: g.order(),
            center_order: g.center().order(),
            abelian: g.is_abelian(),
            class_sizes,
            order_histogram: g.order_histogram(),
        }
    }

    fn table(&self) -> String {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
        format!(
            "group          {}\norder          {}\ncenter order   {}\nabelian        {}\nclasses        {} (sizes {})\nelement orders {}\n",
            self.name,
            self.order,
            self.center_order,
            self.abelian,
            self.class_sizes.len(),
            join(&mut self.class_sizes.iter().map(ToString::to_string)),
            join(&mut self.order_histogram.iter().map(|(o, n)| format!("{o}:{n}"))),
        )
    }
}

#[derive(Serialize)]
struct ClassRow {
    /// Element orders of the member classes.
    orders: Vec<usize>,
    /// Member classes, each as a list of element labels.
    classes: Vec<Vec<String>>,
}

fn class_rows(g: &FiniteGroup, fusion: &str) -> Result<Vec<ClassRow>, Failure> {
    let names = |c: &[usize]| c.iter().map(|&e| g.element_name(e).to_string()).collect::<Vec<_>>();
    if let Some(p) = fusion.strip_prefix("singular:") {
        let p: u64 = p.parse().map_err(|_| RepError::BadSpec(fusion.to_string()))?;
        return Ok(p_singular_classes(g, p)?
            .into_iter()
            .map(|c| ClassRow {
                orders: vec![c.order],
                classes: vec![names(&c.elements)],
            })
            .collect());
    }
    let spec: FusionSpec = fusion.parse()?;
    Ok(count_irreducibles(g, spec)?
        .blocks
        .into_iter()
        .map(|b| ClassRow {
            orders: b.iter().map(|c| g.element_order(c[0])).collect(),
            classes: b.iter().map(|c| names(c)).collect(),
        })
        .collect())
}

fn class_table(rows: &[ClassRow]) -> String {
    let mut out = format!("{} row{}\n", rows.len(), if rows.len() == 1 { "" } else { "s" });
    for (i, r) in rows.iter().enumerate() {
        let orders: Vec<String> = r.orders.iter().map(ToString::to_string).collect();
        let classes: Vec<String> = r.classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
        out += &format!("{:>3}  order {:<8} {}\n", i + 1, orders.join(","), classes.join(" "));
    }
    out
}

#[derive(Serialize)]
struct LocalCount {
    p: u64,
    q_p: usize,
    f_p: usize,
}

#[derive(Serialize)]
struct KSheetReport {
    group: String,
    r_q: usize,
    local: Vec<LocalCount>,
    sc_rank: i64,
    carter_rank: i64,
    /// `None` when the torsion part is not bundled.
    k_minus1: Option<FgAbelianGroup>,
    wh: Option<FgAbelianGroup>,
    k0_reduced: Option<FgAbelianGroup>,
    negk: NegKCheck,
}

impl KSheetReport {
    fn new(g: &FiniteGroup) -> (Self, Option<KError>) {
        let r_q = count_irreducibles(g, FusionSpec::Rational).expect("rational fusion").count();
        let negk = negk_consistency(g);
        let (k_minus1, gap) = match k_minus1(g, None) {
            Ok(k) => (Some(k), None),
            Err(e) => (None, Some(e)),
        };
        let sheet = bundled_ksheet(g.name());
        let report = KSheetReport {
            group: g.name().to_string(),
            r_q,
            local: local_counts(g)
                .into_iter()
                .map(|(p, q_p, f_p)| LocalCount { p, q_p, f_p })
                .collect(),
            sc_rank: negk.sc_rank,
            carter_rank: carter_rank(g),
            k_minus1,
            wh: sheet.as_ref().map(|s| s.wh.clone()),
            k0_reduced: sheet.map(|s| s.k0t),
            negk,
        };
        (report, gap)
    }

    fn table(&self) -> String {
        let show = |g: &Option<FgAbelianGroup>| g.as_ref().map_or("not bundled".to_string(), ToString::to_string);
        let mut out = format!("group        {}\nr_Q          {}\n", self.group, self.r_q);
        for l in &self.local {
            out += &format!("p = {:<8} r_Q{} = {}, r_F{} = {}\n", l.p, l.p, l.q_p, l.p, l.f_p);
        }
        out += &format!("sc_rank      {}\ncarter_rank  {}\n", self.sc_rank, self.carter_rank);
        out += &format!(
            "K_-1         {}\n",
            self.k_minus1
                .as_ref()
                .map_or_else(|| unknown_torsion(self.carter_rank), ToString::to_string)
        );
        out += &format!("Wh           {}\nK0~          {}\n", show(&self.wh), show(&self.k0_reduced));
        out += &format!(
            "negK check   {} (sc {} - rational {} = carter {})\n",
            if self.negk.holds { "holds" } else { "FAILS" },
            self.negk.sc_rank,
            self.negk.rational_rank,
            self.negk.carter_rank
        );
        out
    }
}

fn unknown_torsion(rank: i64) -> String {
    match rank {
        0 => "unknown 2-torsion".to_string(),
        1 => "Z + unknown 2-torsion".to_string(),
        r => format!("Z^{r} + unknown 2-torsion"),
    }
}
