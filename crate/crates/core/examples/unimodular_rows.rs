//! Unimodular rows, certificates, sections and the obstruction verdict.

use witt_degree::degree::Endo;
use witt_degree::umrow::{self, UnimodularRow};
use witt_degree::{FieldSpec, Poly, Ring};

fn main() -> witt_degree::Result<()> {
    let q = FieldSpec::Rationals;
    let row = UnimodularRow::tautological(3, q);
    let b = row.certificate().expect("tautological row is unimodular");
    let b: Vec<String> = b.iter().map(ToString::to_string).collect();
    println!("{row}: certificate ({})", b.join(", "));

    let ring = row.algebra().ring().clone();
    let lambda = Poly::parse(&ring, "x1*y2 + 3")?;
    let moved = umrow::apply_elementary(&row, 0, 1, &lambda)?;
    let cert = moved.certificate().unwrap();
    println!("{moved}: certificate checks: {}", moved.verify_certificate(cert));

    let section = umrow::build_section(row.entries())?;
    let section: Vec<String> = section.iter().map(ToString::to_string).collect();
    println!("section of the row: ({})", section.join(", "));

    let r3 = Ring::new(["x1", "x2", "x3"], q)?;
    let endos = [
        Endo::parse(&r3, &["x1^2 - x2^2", "x1*x2", "x3"])?,
        Endo::identity(&r3),
        Endo::parse(&r3, &["x1^2", "x2", "x3"])?,
    ];
    for endo in &endos {
        let report = umrow::obstruction_report(endo, 3)?;
        println!("{:?}: {}", report.verdict, report.message);
    }
    Ok(())
}
