//! The degree of an origin-preserving endomorphism of affine space.
//!
//! For `phi` with `phi(m) ⊂ m` and `A = k[x]/(phi(x_1), ..., phi(x_n))` of
//! finite length supported at the origin, the degree is the Witt class of the
//! residue pairing on `A`. It is computed from the Bezoutian
//! `Delta(x, u) = det[(phi_i(u_1..u_{j-1}, x_j..x_n) - phi_i(u_1..u_j, x_{j+1}..x_n)) / (x_j - u_j)]`:
//! after reducing `Delta` modulo the ideal in both sets of variables,
//! `Delta = sum B_ij m_i(x) m_j(u)` over the standard monomials and `B` is a
//! Gram matrix of the form. The identity map has degree `<1>`.

use std::sync::Arc;

use serde::Serialize;

use crate::det::determinant;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{buchberger, supported_only_at_origin, MonomialOrder, QuotientAlgebra};
use crate::poly::{Monomial, Poly, Ring};
use crate::witt::{self, DiagForm, GramForm, WittInvariants};

/// A polynomial endomorphism `x_i -> phi_i(x)` of `k[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo {
    ring: Arc<Ring>,
    images: Vec<Poly>,
}

impl Endo {
    pub fn new(images: Vec<Poly>) -> Result<Self> {
        let ring = crate::det::square_ring(&images)?;
        Ok(Endo { ring, images })
    }

    /// Parses one image per variable of `ring`.
    pub fn parse(ring: &Arc<Ring>, images: &[&str]) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::NotSquareSystem {
                rows: images.len(),
                vars: ring.nvars(),
            });
        }
        let images = images
            .iter()
            .map(|s| Poly::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endo {
            ring: ring.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Endo {
            ring: ring.clone(),
            images: (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect(),
        }
    }

    /// `x_i -> x_i^{m_i}` in `x1, ..., xn`.
    pub fn powers(exponents: &[u32], field: FieldSpec) -> Self {
        let ring = Ring::standard(exponents.len(), field);
        let images = exponents
            .iter()
            .enumerate()
            .map(|(i, &m)| Poly::var(&ring, i).pow(m))
            .collect();
        Endo { ring, images }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `self ∘ other`, i.e. `x_i -> phi_i(psi(x))`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        let images = self
            .images
            .iter()
            .map(|p| p.substitute(&other.images))
            .collect::<Result<Vec<_>>>()?;
        Endo::new(images)
    }
}

/// Checks the hypotheses and returns the local algebra `k[x]/(phi(x))`.
pub fn validate(endo: &Endo) -> Result<QuotientAlgebra> {
    validate_with(endo, MonomialOrder::Grevlex)
}

pub fn validate_with(endo: &Endo, order: MonomialOrder) -> Result<QuotientAlgebra> {
    let vars = endo.ring.vars();
    if let Some(i) = endo.images.iter().position(|p| !p.constant_term().is_zero()) {
        return Err(Error::NotOriginPreserving(vars[i].clone()));
    }
    let gb = buchberger(&endo.images, order, false)?;
    let qa = gb.quotient_algebra()?;
    if let Some(i) = qa.non_nilpotent_variable() {
        return Err(Error::SupportNotOrigin(vars[i].clone()));
    }
    debug_assert!(supported_only_at_origin(&qa));
    Ok(qa)
}

/// The ring `k[x_1..x_n, u_1..u_n]`, with `u_i` the dual of the `i`-th
/// primal variable. Dual names avoid clashes with primal names.
pub fn doubled_ring(ring: &Arc<Ring>) -> Arc<Ring> {
    let vars = ring.vars();
    let mut names: Vec<String> = vars.to_vec();
    for i in 1..=vars.len() {
        let mut name = format!("u{i}");
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    Ring::new(names, ring.field()).unwrap()
}

/// The Bezoutian `Delta(x, u)` in the doubled ring.
pub fn bezoutian(endo: &Endo) -> Result<Poly> {
    let n = endo.n();
    let big = doubled_ring(&endo.ring);
    let xs: Vec<Poly> = (0..n).map(|j| Poly::var(&big, j)).collect();
    let us: Vec<Poly> = (0..n).map(|j| Poly::var(&big, n + j)).collect();
    // point_j = (u_1..u_j, x_{j+1}..x_n) for j = 0..n
    let points: Vec<Vec<Poly>> = (0..=n)
        .map(|j| (0..n).map(|l| if l < j { us[l].clone() } else { xs[l].clone() }).collect())
        .collect();
    let mut matrix = Vec::with_capacity(n);
    for phi in &endo.images {
        let values = points
            .iter()
            .map(|pt| phi.substitute(pt))
            .collect::<Result<Vec<_>>>()?;
        let row = (0..n)
            .map(|j| {
                let diff = &values[j] - &values[j + 1];
                let den = &xs[j] - &us[j];
                diff.div_exact(&den)
                    .ok_or_else(|| Error::Internal("inexact divided difference".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        matrix.push(row);
    }
    determinant(&big, &matrix)
}

/// Gram matrix of the residue pairing in the standard-monomial basis of `qa`.
pub fn gram_form(endo: &Endo, qa: &QuotientAlgebra) -> Result<GramForm> {
    let n = endo.n();
    let big = doubled_ring(&endo.ring);
    let primal: Vec<usize> = (0..n).collect();
    let dual: Vec<usize> = (n..2 * n).collect();
    let mut gens = Vec::new();
    for g in qa.gb().basis() {
        gens.push(g.embed(&big, &primal)?);
        gens.push(g.embed(&big, &dual)?);
    }
    // leading monomials live in disjoint variables, so this is already a basis
    let doubled = buchberger(&gens, qa.gb().order(), false)?;
    let delta = doubled.normal_form(&bezoutian(endo)?)?;

    let field = endo.ring.field();
    let d = qa.dimension();
    let mut b = vec![vec![field.zero(); d]; d];
    for (m, c) in delta.terms() {
        let e = m.exponents();
        let locate = |part: &[u32]| {
            qa.index_of(&Monomial::new(part.to_vec()))
                .ok_or_else(|| Error::Internal("Bezoutian term outside the standard basis".into()))
        };
        let (i, j) = (locate(&e[..n])?, locate(&e[n..])?);
        b[i][j] = c.clone();
    }
    let vars = endo.ring.vars();
    let labels = qa
        .standard_monomials()
        .iter()
        .map(|m| m.display(vars).to_string())
        .collect();
    GramForm::new(field, b, labels).map_err(|e| match e {
        Error::NotSymmetric => Error::Internal("Bezoutian Gram matrix is not symmetric".into()),
        e => e,
    })
}

/// Text recorded with every degree: the class is expressed against the
/// Koszul generator of the top local cohomology.
pub const GENERATOR_NOTE: &str =
    "class expressed against the Koszul generator theta(x1,...,xn); identity has degree <1>";

/// Everything computed for one endomorphism.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub n: usize,
    pub length: usize,
    pub gram: GramForm,
    pub diag: DiagForm,
    /// A small representative of the class.
    pub class: DiagForm,
    pub invariants: WittInvariants,
    pub is_zero: bool,
    pub divisible_by_n_factorial: bool,
    pub divisible_by_nminus1_factorial: bool,
    pub generator_note: &'static str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    schema: u32,
    field: String,
    n: usize,
    length: usize,
    basis: &'a [String],
    gram: Vec<Vec<String>>,
    diagonal: Vec<String>,
    class: Vec<String>,
    rank: usize,
    signature: Option<i64>,
    signed_discriminant: String,
    hasse: &'a std::collections::BTreeMap<crate::numtheory::Place, i8>,
    is_zero: bool,
    nori_n_factorial: bool,
    nori_nminus1_factorial: bool,
    generator_note: &'a str,
}

impl DegreeReport {
    pub fn field(&self) -> FieldSpec {
        self.gram.field()
    }

    /// `length D; degree = <...>; zero|nonzero in W(k)`.
    pub fn summary(&self) -> String {
        let class = if self.class.rank() == 0 {
            "0".to_string()
        } else {
            self.class.to_string()
        };
        format!(
            "length {}; degree = {}; {} in W({})",
            self.length,
            class,
            if self.is_zero { "zero" } else { "nonzero" },
            self.field()
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strs = |d: &DiagForm| d.entries().iter().map(ToString::to_string).collect();
        serde_json::to_value(ReportJson {
            schema: 1,
            field: self.field().to_string(),
            n: self.n,
            length: self.length,
            basis: self.gram.labels(),
            gram: self
                .gram
                .matrix()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            diagonal: strs(&self.diag),
            class: strs(&self.class),
            rank: self.invariants.rank,
            signature: self.invariants.signature,
            signed_discriminant: self.invariants.signed_discriminant.to_string(),
            hasse: &self.invariants.hasse,
            is_zero: self.is_zero,
            nori_n_factorial: self.divisible_by_n_factorial,
            nori_nminus1_factorial: self.divisible_by_nminus1_factorial,
            generator_note: self.generator_note,
        })
        .unwrap()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The degree of `endo`, using grevlex for the local algebra.
pub fn degree_of(endo: &Endo) -> Result<DegreeReport> {
    degree_of_with(endo, MonomialOrder::Grevlex)
}

pub fn degree_of_with(endo: &Endo, order: MonomialOrder) -> Result<DegreeReport> {
    let qa = validate_with(endo, order)?;
    let gram = gram_form(endo, &qa)?;
    let diag = witt::diagonalize(&gram)?;
    let invariants = witt::invariants(&diag);
    let length = qa.dimension();
    let n = endo.n();
    Ok(DegreeReport {
        n,
        length,
        class: witt::witt_reduce(&diag),
        is_zero: witt::is_witt_zero(&diag),
        invariants,
        gram,
        diag,
        divisible_by_n_factorial: length as u128 % factorial(n) == 0,
        divisible_by_nminus1_factorial: length as u128 % factorial(n.saturating_sub(1)) == 0,
        generator_note: GENERATOR_NOTE,
    })
}

/// Degree of `x_i -> x_i^{m_i}` assembled from univariate pieces: the form of
/// `x^m` is the `m x m` antidiagonal of ones, whose class is `m/2` hyperbolic
/// planes for even `m` and `<1>` plus `(m-1)/2` planes for odd `m`.
pub fn univariate_tensor_oracle(m: &[u32], field: FieldSpec) -> DiagForm {
    assert!(!m.is_empty() && m.iter().all(|&e| e > 0));
    let piece = |e: u32| {
        let mut entries = Vec::new();
        if e % 2 == 1 {
            entries.push(1);
        }
        for _ in 0..e / 2 {
            entries.extend([1, -1]);
        }
        DiagForm::from_i64(field, &entries).unwrap()
    };
    m[1..]
        .iter()
        .fold(piece(m[0]), |acc, &e| witt::tensor(&acc, &piece(e)))
}
