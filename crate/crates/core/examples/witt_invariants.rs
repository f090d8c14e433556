//! Invariants, equality and reduction of diagonal forms.

use witt_degree::witt::{self, DiagForm};
use witt_degree::FieldSpec;

fn main() -> witt_degree::Result<()> {
    let q = FieldSpec::Rationals;
    for text in ["1,1", "1,-1", "-1,3,6", "1,1,1,1", "2,3,-6", "1,1,2,-2"] {
        let d = DiagForm::parse(q, text)?;
        let inv = witt::invariants(&d);
        println!("{d}: {}", serde_json::to_string(&inv.to_json()).unwrap());
        println!("  reduced {}, zero: {}", witt::witt_reduce(&d), witt::is_witt_zero(&d));
    }

    // d + (-d) is always hyperbolic.
    let d = DiagForm::from_i64(q, &[3, -5, 7])?;
    let sum = witt::orthogonal_sum(&d, &d.negate());
    println!("{d} + {}: zero = {}", d.negate(), witt::is_witt_zero(&sum));

    // Over F_p only rank parity and discriminant matter.
    let f7 = FieldSpec::prime(7)?;
    let d = DiagForm::from_i64(f7, &[1, 1])?;
    println!("{d} over F7: zero = {}", witt::is_witt_zero(&d));
    Ok(())
}
