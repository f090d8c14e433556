//! Degrees of `x_i -> x_i^{m_i}` against the tensor product of
//! one-variable degrees.

use witt_degree::degree::{degree_of, univariate_tensor_oracle, Endo};
use witt_degree::{witt, FieldSpec};

fn main() -> witt_degree::Result<()> {
    let cases: [&[u32]; 6] = [&[1], &[2], &[3], &[2, 2], &[2, 3], &[3, 3, 2]];
    for m in cases {
        let endo = Endo::powers(m, FieldSpec::Rationals);
        let report = degree_of(&endo)?;
        let expected = univariate_tensor_oracle(m, FieldSpec::Rationals);
        println!(
            "{m:?}: length {}, degree {}, tensor {}, equal: {}",
            report.length,
            report.diag,
            expected,
            witt::witt_equal(&report.diag, &expected)
        );
    }
    Ok(())
}
