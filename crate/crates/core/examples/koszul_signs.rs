//! Sign conventions that make the Koszul self-duality a symmetric chain map.

use witt_degree::koszul::{self, build_duality, build_koszul, generic_sequence};
use witt_degree::FieldSpec;

fn main() -> witt_degree::Result<()> {
    for n in 1..=4 {
        let kc = build_koszul(&generic_sequence(n, FieldSpec::Rationals))?;
        let dd = build_duality(&kc);
        let exps: Vec<usize> = (0..=n).map(|i| koszul::rho_exponent(i, n)).collect();
        println!(
            "n = {n}: rho exponents {exps:?}, chain map {}, symmetric with sign {:+} {}",
            koszul::verify_chain_map(&dd),
            koszul::symmetry_sign(n),
            koszul::verify_symmetry(&dd)
        );
        match koszul::resolve_dual_convention(n) {
            Some(s) => println!("  dual sign exponents: {s:?}"),
            None => println!("  no consistent dual convention"),
        }
        // Without the rho signs the duality is not a chain map.
        let unsigned = koszul::build_duality_with_signs(&kc, &vec![1; n + 1])?;
        println!("  unsigned family is a chain map: {}", koszul::verify_chain_map(&unsigned));
    }
    Ok(())
}
