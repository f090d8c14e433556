//! The degree of `(x1^2 - x2^2, x1*x2, x3)` over Q, step by step.
//!
//! Run with `cargo run --example counterexample`.

use witt_degree::degree::{self, Endo};
use witt_degree::{witt, FieldSpec, Ring};

fn main() -> witt_degree::Result<()> {
    let ring = Ring::new(["x1", "x2", "x3"], FieldSpec::Rationals)?;
    let endo = Endo::parse(&ring, &["x1^2 - x2^2", "x1*x2", "x3"])?;

    let qa = degree::validate(&endo)?;
    println!("local algebra has length {}", qa.dimension());

    let gram = degree::gram_form(&endo, &qa)?;
    println!("basis: {}", gram.labels().join(", "));
    for row in gram.matrix() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  [{}]", cells.join(", "));
    }

    let diag = witt::diagonalize(&gram)?;
    println!("diagonal: {diag}");
    println!("reduced:  {}", witt::witt_reduce(&diag));

    let report = degree::degree_of(&endo)?;
    println!("{}", report.summary());
    // 4 is not divisible by 3! but the class is nonzero anyway.
    println!("divisible by 3!: {}", report.divisible_by_n_factorial);
    println!("divisible by 2!: {}", report.divisible_by_nminus1_factorial);
    Ok(())
}
