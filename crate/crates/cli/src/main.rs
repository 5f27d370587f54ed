mod args;
mod cache;
mod request;

use std::process::ExitCode;

use clap::Parser;
use kgroth_core::verify::{run_suite, Suite, VerifyOptions};

use args::{Cli, Command, SuiteArg};
use cache::Cache;
use request::Request;

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    if let Command::Verify { suite, corrupt_d_table } = cli.command {
        return verify(suite, corrupt_d_table);
    }
    let req = match Request::from_command(&cli.command) {
        Ok(Some(req)) => req,
        Ok(None) => unreachable!("verify handled above"),
        Err(u) => {
            eprintln!("error: {}", u.0);
            return ExitCode::from(USAGE);
        }
    };
    let cache = Cache::from_env();
    if let Some(out) = cache.as_ref().and_then(|c| c.get(&req)) {
        println!("{out}");
        return ExitCode::SUCCESS;
    }
    match req.execute() {
        Ok(out) => {
            if let Some(c) = &cache {
                if let Err(e) = c.put(&req, &out) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {e}", e.kind());
            ExitCode::from(FAILURE)
        }
    }
}

fn verify(suite: SuiteArg, corrupt_d_table: bool) -> ExitCode {
    let suite = match suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::Full => Suite::Full,
    };
    let results = run_suite(suite, VerifyOptions { corrupt_d_table });
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("verify: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILURE)
    }
}
