//! Audits a small parameter grid in parallel and prints one JSON line per
//! row, in input order, with a malformed row reported inline.
//!
//! Run with `cargo run --example grid_report`.

use iontrap_audit::cli::grid_line;
use rayon::prelude::*;

fn main() {
    let rows = [
        "1,1,1,3,1,6,0",
        "1,1,2,6,0,0,0",
        "1,1,0,0,0,0,1",
        "1/0,1,1,1,1,1,1",
        "2,1,1,1,1,1,0",
    ];
    let lines: Vec<String> = rows
        .par_iter()
        .enumerate()
        .map(|(k, row)| grid_line(k + 1, &row.split(',').map(str::to_string).collect::<Vec<_>>(), false))
        .collect();
    for line in lines {
        let head: String = line.chars().take(120).collect();
        println!("{head}...");
    }
}
