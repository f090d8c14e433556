//! The same endomorphism over several base fields.
//!
//! Over Q the class is `<1,1>`. Over `F_p` it is `<1,1>` again, which is
//! hyperbolic exactly when -1 is a square, i.e. `p = 1 mod 4`.

use witt_degree::degree::{degree_of, Endo};
use witt_degree::{FieldSpec, Ring};

fn main() -> witt_degree::Result<()> {
    let fields = [
        FieldSpec::Rationals,
        FieldSpec::prime(3)?,
        FieldSpec::prime(5)?,
        FieldSpec::prime(7)?,
        FieldSpec::prime(13)?,
        FieldSpec::prime(101)?,
    ];
    for field in fields {
        let ring = Ring::new(["x1", "x2", "x3"], field)?;
        let endo = Endo::parse(&ring, &["x1^2 - x2^2", "x1*x2", "x3"])?;
        let report = degree_of(&endo)?;
        println!("{:>5}: {}", field.to_string(), report.summary());
    }
    Ok(())
}
