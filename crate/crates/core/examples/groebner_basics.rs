//! Groebner bases, normal forms and standard monomials of a local algebra.

use witt_degree::groebner::{buchberger, MonomialOrder};
use witt_degree::{FieldSpec, Poly, Ring};

fn main() -> witt_degree::Result<()> {
    let ring = Ring::new(["x1", "x2"], FieldSpec::Rationals)?;
    let gens = vec![Poly::parse(&ring, "x1^2 - x2^2")?, Poly::parse(&ring, "x1*x2")?];
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        let gb = buchberger(&gens, order, false)?;
        let basis: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
        println!("{order:?}: [{}]", basis.join(", "));
        let qa = gb.quotient_algebra()?;
        let monos: Vec<String> = qa
            .standard_monomials()
            .iter()
            .map(|m| m.display(ring.vars()).to_string())
            .collect();
        println!("  standard monomials: {}", monos.join(", "));
        let f = Poly::parse(&ring, "x1^3 + x1^2*x2 + 5")?;
        println!("  NF({f}) = {}", gb.normal_form(&f)?);
    }
    Ok(())
}
