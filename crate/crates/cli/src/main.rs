//! `heats`: size a structure's heating load and pick matching devices.
//!
//! Exit codes: 0 success, 1 data or environment failure, 2 usage or
//! validation failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heats_api::numbers::{format_fixed, POWER_DP};
use heats_api::{size_request, AppState, SizingRequest};
use heats_core::catalog::{
    BurnerFilter, Catalog, CatalogError, CombustionFilter, Device, FilterCriteria, FuelFilter,
    MatchQuery,
};
use heats_core::seed::{self, SeedError};
use heats_core::DEFAULT_HEADROOM;

const EXIT_DATA: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "heats",
    version,
    about = "Heating load sizing and heating device selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DataDir {
    /// Directory holding cities.csv, destinations.csv, gn.csv and devices.json
    #[arg(long, env = "HEATS_DATA_DIR", default_value = "data")]
    data_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the heating power a structure needs
    Size(SizeArgs),
    /// List catalog devices able to supply a power requirement
    Devices(DevicesArgs),
    /// Check every file of a data directory
    Validate(DataDir),
    /// Run the HTTP service
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SizeArgs {
    #[arg(long)]
    city: String,
    #[arg(long)]
    destination: String,
    #[arg(long)]
    levels: i64,
    /// Building surface over volume, m²/m³
    #[arg(long)]
    av_ratio: f64,
    /// Footprint area, m²
    #[arg(long)]
    area: f64,
    /// Interior height, m
    #[arg(long)]
    height: f64,
    /// Print the sizing document as JSON
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    data: DataDir,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct DevicesArgs {
    /// Power requirement, kW
    #[arg(long)]
    required_kw: f64,
    /// Largest accepted ratio of device minimum power to the requirement
    #[arg(long, default_value_t = DEFAULT_HEADROOM)]
    headroom: f64,
    #[arg(long, default_value = "Any")]
    combustion: CombustionFilter,
    #[arg(long, default_value = "Any")]
    burner: BurnerFilter,
    #[arg(long, default_value = "Any")]
    fuel: FuelFilter,
    /// Print the matching devices as JSON
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    data: DataDir,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, env = "HEATS_ADDR", default_value = "127.0.0.1:8080")]
    addr: String,
    #[command(flatten)]
    data: DataDir,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let code = match cli.command {
        Command::Size(args) => size(args),
        Command::Devices(args) => devices(args),
        Command::Validate(args) => validate(&args.data_dir),
        Command::Serve(args) => serve(args),
    };
    ExitCode::from(code)
}

fn size(args: SizeArgs) -> u8 {
    let tables = match seed::load_tables(&args.data.data_dir) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    };
    let request = SizingRequest {
        city: args.city,
        destination: args.destination,
        levels: args.levels,
        av_ratio: args.av_ratio,
        footprint_area_m2: args.area,
        height_m: args.height,
    };
    let response = match size_request(&request, &tables) {
        Ok(r) => r,
        Err(errors) => {
            for e in errors {
                eprintln!("error: {} ({}): {}", e.field, e.code, e.message);
            }
            return EXIT_USAGE;
        }
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&response).expect("response serializes")
        );
    } else {
        println!(
            "Result: {} kW ({} MCal)",
            format_fixed(response.q_kw, POWER_DP),
            format_fixed(response.q_mcal, POWER_DP)
        );
    }
    if let Some(warning) = &response.warning {
        eprintln!("warning: {warning}");
    }
    0
}

fn set_list<T: std::fmt::Debug>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|i| format!("{i:?}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn print_table(devices: &[&Device]) {
    let rows: Vec<[String; 6]> = devices
        .iter()
        .map(|d| {
            [
                d.producer.clone(),
                d.model.clone(),
                format!("{:.2}-{:.2}", d.power_min_kw, d.power_max_kw),
                set_list(&d.combustion),
                format!("{:?}", d.burner_type),
                set_list(&d.fuels),
            ]
        })
        .collect();
    let header = [
        "Producer",
        "Model",
        "Power kW",
        "Combustion",
        "Burner",
        "Fuels",
    ];
    let mut widths = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[&str]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    println!("{}", line(&header));
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        println!("{}", line(&cells));
    }
}

fn devices(args: DevicesArgs) -> u8 {
    let criteria = FilterCriteria {
        combustion: args.combustion,
        burner_type: args.burner,
        fuel: args.fuel,
    };
    let query = match MatchQuery::new(args.required_kw, args.headroom, criteria) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let catalog = match Catalog::load(&args.data.data_dir.join(seed::DEVICES_FILE)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    };
    let found = catalog.match_devices(&query);
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&found).expect("devices serialize")
        );
    } else if found.is_empty() {
        println!("no matching devices");
    } else {
        print_table(&found);
    }
    0
}

fn report_problems(file: &str, err: &SeedError, out: &mut impl Write) -> std::io::Result<()> {
    match err {
        SeedError::Invalid { problems, .. } => {
            for p in problems {
                writeln!(out, "  {file} line {}: {}", p.line, p.message)?;
            }
        }
        SeedError::Catalog(CatalogError::Invalid { problems }) => {
            for p in problems {
                writeln!(out, "  {file} {p}")?;
            }
        }
        other => writeln!(out, "  {file}: {other}")?,
    }
    Ok(())
}

fn validate(dir: &Path) -> u8 {
    let checks = seed::check_data_dir(dir);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut failed = 0;
    for check in &checks {
        let _ = match &check.result {
            Ok(n) => writeln!(out, "OK    {} ({n} records)", check.file),
            Err(e) => {
                failed += 1;
                writeln!(out, "FAIL  {}", check.file)
                    .and_then(|_| report_problems(check.file, e, &mut out))
            }
        };
    }
    if failed == 0 {
        let _ = writeln!(out, "{} files OK", checks.len());
        0
    } else {
        let _ = writeln!(out, "{failed} of {} files invalid", checks.len());
        EXIT_DATA
    }
}

fn serve(args: ServeArgs) -> u8 {
    let state = match AppState::from_data_dir(&args.data.data_dir) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: cannot start runtime: {e}");
            return EXIT_DATA;
        }
    };
    runtime.block_on(async {
        let listener = match tokio::net::TcpListener::bind(&args.addr).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: cannot bind {}: {e}", args.addr);
                return EXIT_DATA;
            }
        };
        match listener.local_addr() {
            Ok(addr) => println!("listening on http://{addr}"),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_DATA;
            }
        }
        let _ = std::io::stdout().flush();
        match heats_api::serve(listener, state).await {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_DATA
            }
        }
    })
}
