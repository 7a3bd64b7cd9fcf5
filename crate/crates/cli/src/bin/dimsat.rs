//! Minimal DIMACS SAT solver front-end over CaDiCaL.
//!
//! Prints the conventional "s" / "v" lines and exits 10 (SAT), 20 (UNSAT),
//! or 1 on error, so it can serve as the default solver for the harness.

use std::path::Path;
use std::process::exit;

fn print_sat(solver: &cadical::Solver, max_var: i32) {
    println!("s SATISFIABLE");
    let mut line = String::from("v");
    for var in 1..=max_var {
        // `None` means the formula is satisfied either way; pick true.
        let lit = if solver.value(var) == Some(false) { -var } else { var };
        line.push(' ');
        line.push_str(&lit.to_string());
        if line.len() > 70 {
            println!("{line}");
            line = String::from("v");
        }
    }
    line.push_str(" 0");
    println!("{line}");
}

fn main() {
    let mut args = std::env::args().skip(1);
    let Some(path) = args.next() else {
        eprintln!("usage: dimsat FILE.cnf");
        exit(1);
    };
    if args.next().is_some() {
        eprintln!("usage: dimsat FILE.cnf");
        exit(1);
    }

    let mut solver = cadical::Solver::new();
    let max_var = match solver.read_dimacs(Path::new(&path)) {
        Ok(vars) => vars,
        Err(e) => {
            eprintln!("dimsat: cannot load {path}: {e}");
            exit(1);
        }
    };
    match solver.solve() {
        Some(true) => {
            print_sat(&solver, max_var);
            exit(10);
        }
        Some(false) => {
            println!("s UNSATISFIABLE");
            exit(20);
        }
        None => {
            eprintln!("dimsat: solver terminated without an answer");
            exit(1);
        }
    }
}
