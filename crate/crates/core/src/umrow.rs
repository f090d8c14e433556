//! Unimodular rows over finitely presented algebras `k[vars]/(relations)`.
//!
//! A row `a` is unimodular when some `b` has `sum b_i a_i = 1` in the algebra.
//! Certificates are found with a cofactor-tracking Gröbner basis, reduced
//! modulo the relations and re-checked by exact reduction before being handed
//! out. The obstruction report ties the row `g(x_1, ..., x_n)` over
//! `S_n = k[x, y]/(sum x_i y_i - 1)` to the degree of `g`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::degree::{degree_of, DegreeReport, Endo};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{buchberger, contains_one_with_certificate, GroebnerBasis, MonomialOrder};
use crate::poly::{same_ring, Poly, Ring};

/// `k[vars]/(relations)`.
#[derive(Debug)]
pub struct AlgebraPresentation {
    ring: Arc<Ring>,
    relations: Vec<Poly>,
    relation_gb: OnceLock<Option<GroebnerBasis>>,
}

impl AlgebraPresentation {
    pub fn new(ring: &Arc<Ring>, relations: Vec<Poly>) -> Result<Arc<Self>> {
        if relations.iter().any(|r| !same_ring(r.ring(), ring)) {
            return Err(Error::RingMismatch("relation outside the declared ring".into()));
        }
        Ok(Arc::new(AlgebraPresentation {
            ring: ring.clone(),
            relations,
            relation_gb: OnceLock::new(),
        }))
    }

    /// The polynomial ring itself.
    pub fn free(ring: &Arc<Ring>) -> Arc<Self> {
        AlgebraPresentation::new(ring, Vec::new()).unwrap()
    }

    /// `S_n = k[x_1..x_n, y_1..y_n]/(sum x_i y_i - 1)`.
    pub fn unimodular_affine(n: usize, field: FieldSpec) -> Arc<Self> {
        let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}")));
        let ring = Ring::new(names, field).unwrap();
        let rel = (0..n).fold(-&Poly::one(&ring), |acc, i| {
            &acc + &(&Poly::var(&ring, i) * &Poly::var(&ring, n + i))
        });
        AlgebraPresentation::new(&ring, vec![rel]).unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    fn gb(&self) -> Option<&GroebnerBasis> {
        self.relation_gb
            .get_or_init(|| {
                let nonzero: Vec<Poly> = self.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
                if nonzero.is_empty() {
                    None
                } else {
                    Some(buchberger(&nonzero, MonomialOrder::Grevlex, false).unwrap())
                }
            })
            .as_ref()
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, p: &Poly) -> Poly {
        match self.gb() {
            Some(gb) => gb.normal_form(p).unwrap(),
            None => p.clone(),
        }
    }

    /// Whether `p = 0` in the algebra.
    pub fn is_zero(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }
}

/// A row of elements of an algebra, given by polynomial lifts.
#[derive(Debug, Clone)]
pub struct UnimodularRow {
    algebra: Arc<AlgebraPresentation>,
    entries: Vec<Poly>,
    certificate: OnceLock<Option<Vec<Poly>>>,
}

impl UnimodularRow {
    pub fn new(algebra: &Arc<AlgebraPresentation>, entries: Vec<Poly>) -> Result<Self> {
        if entries.iter().any(|p| !same_ring(p.ring(), algebra.ring())) {
            return Err(Error::RingMismatch("row entry outside the algebra's ring".into()));
        }
        Ok(UnimodularRow {
            algebra: algebra.clone(),
            entries,
            certificate: OnceLock::new(),
        })
    }

    /// `(x_1, ..., x_n)` over `S_n`.
    pub fn tautological(n: usize, field: FieldSpec) -> Self {
        let algebra = AlgebraPresentation::unimodular_affine(n, field);
        let entries = (0..n).map(|i| Poly::var(algebra.ring(), i)).collect();
        UnimodularRow::new(&algebra, entries).unwrap()
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A certificate `b` with `sum b_i a_i = 1`, computed once.
    pub fn certificate(&self) -> Option<&[Poly]> {
        self.certificate.get_or_init(|| find_certificate(self)).as_deref()
    }

    /// Whether `b` certifies this row, by exact reduction.
    pub fn verify_certificate(&self, b: &[Poly]) -> bool {
        if b.len() != self.entries.len() || b.iter().any(|p| !same_ring(p.ring(), self.algebra.ring())) {
            return false;
        }
        let ring = self.algebra.ring();
        let total = b
            .iter()
            .zip(&self.entries)
            .fold(-&Poly::one(ring), |acc, (bi, ai)| &acc + &(bi * ai));
        self.algebra.is_zero(&total)
    }
}

impl fmt::Display for UnimodularRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn find_certificate(row: &UnimodularRow) -> Option<Vec<Poly>> {
    let k = row.entries.len();
    let gens: Vec<Poly> = row.entries.iter().chain(&row.algebra.relations).cloned().collect();
    if gens.is_empty() {
        return None;
    }
    let cofactors = contains_one_with_certificate(&gens)?;
    let b: Vec<Poly> = cofactors[..k].iter().map(|c| row.algebra.reduce(c)).collect();
    assert!(row.verify_certificate(&b), "reduced certificate failed verification");
    Some(b)
}

/// The certificate of `row`, if it is unimodular.
pub fn is_unimodular(row: &UnimodularRow) -> Option<Vec<Poly>> {
    row.certificate().map(<[Poly]>::to_vec)
}

/// `a_j += lambda * a_i` (0-based indices). A known certificate is carried
/// along: `b_i -= lambda * b_j`.
pub fn apply_elementary(row: &UnimodularRow, i: usize, j: usize, lambda: &Poly) -> Result<UnimodularRow> {
    let n = row.len();
    if i == j || i >= n || j >= n {
        return Err(Error::Index(format!("elementary move {i} -> {j} on a row of length {n}")));
    }
    if !same_ring(lambda.ring(), row.algebra.ring()) {
        return Err(Error::RingMismatch("multiplier outside the algebra's ring".into()));
    }
    let mut entries = row.entries.clone();
    entries[j] = &entries[j] + &(lambda * &row.entries[i]);
    let out = UnimodularRow::new(&row.algebra, entries)?;
    if let Some(Some(b)) = row.certificate.get() {
        let mut b = b.clone();
        b[i] = row.algebra.reduce(&(&b[i] - &(lambda * &b[j])));
        debug_assert!(out.verify_certificate(&b));
        let _ = out.certificate.set(Some(b));
    }
    Ok(out)
}

/// `(phi_1(a), ..., phi_n(a))`.
pub fn compose_with_endo(row: &UnimodularRow, endo: &Endo) -> Result<UnimodularRow> {
    if endo.n() != row.len() {
        return Err(Error::ArityMismatch {
            expected: row.len(),
            found: endo.n(),
        });
    }
    if endo.ring().field() != row.algebra.ring().field() {
        return Err(Error::RingMismatch("endomorphism and row over different fields".into()));
    }
    let entries = endo
        .images()
        .iter()
        .map(|phi| phi.substitute(&row.entries))
        .collect::<Result<Vec<_>>>()?;
    UnimodularRow::new(&row.algebra, entries)
}

/// The row `s(a)` with `s(a) · a^t = 0`: `(-a_2, a_1, -a_4, a_3, ...)`,
/// ending in `0` when the length is odd.
pub fn build_section(a: &[Poly]) -> Result<Vec<Poly>> {
    let n = a.len();
    if n < 2 {
        return Err(Error::ArityMismatch { expected: 2, found: n });
    }
    let ring = a[0].ring();
    let mut s = Vec::with_capacity(n);
    for pair in a.chunks(2) {
        match pair {
            [x, y] => {
                s.push(-y);
                s.push(x.clone());
            }
            _ => s.push(Poly::zero(ring)),
        }
    }
    let dot = s.iter().zip(a).fold(Poly::zero(ring), |acc, (si, ai)| &acc + &(si * ai));
    if !dot.is_zero() {
        return Err(Error::Internal("section does not annihilate the row".into()));
    }
    Ok(s)
}

/// What the degree says about completability of `g(x_1, ..., x_n)` over `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Nonzero obstruction: the row is not completable.
    NotCompletable,
    /// Zero obstruction: completability is not decided.
    ObstructionVanishes,
    /// Nonzero class for the tautological row itself; no row-level claim.
    NoClaim,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub degree: DegreeReport,
    pub row: UnimodularRow,
    pub verdict: Verdict,
    pub message: String,
}

/// Degree of `endo` and the resulting verdict on `endo(x_1, ..., x_n)` over
/// `S_n`, `n` odd.
pub fn obstruction_report(endo: &Endo, n: usize) -> Result<ObstructionReport> {
    if n % 2 == 0 {
        return Err(Error::EvenN(n));
    }
    if endo.n() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: endo.n(),
        });
    }
    let field = endo.ring().field();
    let degree = degree_of(endo)?;
    let row = compose_with_endo(&UnimodularRow::tautological(n, field), endo)?;
    let class = if degree.class.rank() == 0 {
        "0".to_string()
    } else {
        degree.class.to_string()
    };
    let identity = *endo == Endo::identity(endo.ring());
    let (verdict, message) = if degree.is_zero {
        (
            Verdict::ObstructionVanishes,
            "obstruction vanishes; completability not decided by this invariant".to_string(),
        )
    } else if identity {
        (Verdict::NoClaim, format!("class {class}: no vanishing; no claim"))
    } else {
        (
            Verdict::NotCompletable,
            format!("obstruction {class} != 0: {row} not completable over S{n}"),
        )
    };
    Ok(ObstructionReport {
        degree,
        row,
        verdict,
        message,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ps(r: &Arc<Ring>, items: &[&str]) -> Vec<Poly> {
        items.iter().map(|s| Poly::parse(r, s).unwrap()).collect()
    }

    #[test]
    fn certificates() {
        let r = Ring::new(["x"], Q).unwrap();
        let row = UnimodularRow::new(&AlgebraPresentation::free(&r), ps(&r, &["x", "1 - x"])).unwrap();
        assert_eq!(is_unimodular(&row).unwrap(), ps(&r, &["1", "1"]));

        let r3 = Ring::standard(3, Q);
        let row = UnimodularRow::new(&AlgebraPresentation::free(&r3), ps(&r3, &["x1", "x2", "x3"])).unwrap();
        assert!(is_unimodular(&row).is_none());

        let taut = UnimodularRow::tautological(3, Q);
        let b = is_unimodular(&taut).unwrap();
        assert!(taut.verify_certificate(&b));
        let ys = ps(taut.algebra().ring(), &["y1", "y2", "y3"]);
        assert!(taut.verify_certificate(&ys));
    }

    #[test]
    fn elementary_moves() {
        let r = Ring::new(["x"], Q).unwrap();
        let row = UnimodularRow::new(&AlgebraPresentation::free(&r), ps(&r, &["x", "1 - x"])).unwrap();
        let one = Poly::one(&r);
        let moved = apply_elementary(&row, 0, 1, &one).unwrap();
        assert_eq!(moved.entries(), ps(&r, &["x", "1"]));
        let same = apply_elementary(&row, 0, 1, &Poly::zero(&r)).unwrap();
        assert_eq!(same.entries(), row.entries());
        assert!(matches!(apply_elementary(&row, 1, 1, &one), Err(Error::Index(_))));
        assert!(matches!(apply_elementary(&row, 0, 2, &one), Err(Error::Index(_))));

        let taut = UnimodularRow::tautological(3, Q);
        taut.certificate().unwrap();
        let x1 = Poly::var(taut.algebra().ring(), 0);
        let moved = apply_elementary(&taut, 0, 2, &x1).unwrap();
        let carried = moved.certificate().unwrap().to_vec();
        assert!(moved.verify_certificate(&carried));
        let mut fresh = moved.clone();
        let _ = fresh.certificate.take();
        assert!(fresh.certificate().is_some());
    }

    #[test]
    fn composition() {
        let taut = UnimodularRow::tautological(3, Q);
        let endo = Endo::parse(&Ring::standard(3, Q), &["x1^2 - x2^2", "x1*x2", "x3"]).unwrap();
        let g = compose_with_endo(&taut, &endo).unwrap();
        assert_eq!(g.to_string(), "(x1^2 - x2^2, x1*x2, x3)");
        assert!(g.certificate().is_some());
        let id = compose_with_endo(&taut, &Endo::identity(&Ring::standard(3, Q))).unwrap();
        assert_eq!(id.entries(), taut.entries());
        let short = Endo::identity(&Ring::standard(2, Q));
        assert_eq!(
            compose_with_endo(&taut, &short).unwrap_err(),
            Error::ArityMismatch { expected: 3, found: 2 }
        );

        let r = Ring::new(["x"], Q).unwrap();
        let row = UnimodularRow::new(&AlgebraPresentation::free(&r), ps(&r, &["x"])).unwrap();
        let sq = Endo::parse(&Ring::standard(1, Q), &["x1^2"]).unwrap();
        assert_eq!(compose_with_endo(&row, &sq).unwrap().entries(), ps(&r, &["x^2"]));
    }

    #[test]
    fn sections() {
        let r = Ring::new(["a1", "a2", "a3", "a4", "a5"], Q).unwrap();
        let a = ps(&r, &["a1", "a2", "a3", "a4", "a5"]);
        assert_eq!(build_section(&a[..3]).unwrap(), ps(&r, &["-a2", "a1", "0"]));
        assert_eq!(build_section(&a[..2]).unwrap(), ps(&r, &["-a2", "a1"]));
        assert_eq!(build_section(&a).unwrap(), ps(&r, &["-a2", "a1", "-a4", "a3", "0"]));
        assert_eq!(build_section(&a[..4]).unwrap(), ps(&r, &["-a2", "a1", "-a4", "a3"]));
        assert!(build_section(&a[..1]).is_err());
    }

    #[test]
    fn obstruction_verdicts() {
        let images = ["x1^2 - x2^2", "x1*x2", "x3"];
        let rep = obstruction_report(&Endo::parse(&Ring::standard(3, Q), &images).unwrap(), 3).unwrap();
        assert_eq!(rep.verdict, Verdict::NotCompletable);
        assert_eq!(rep.message, "obstruction <1,1> != 0: (x1^2 - x2^2, x1*x2, x3) not completable over S3");

        let rep = obstruction_report(&Endo::identity(&Ring::standard(3, Q)), 3).unwrap();
        assert_eq!(rep.verdict, Verdict::NoClaim);
        assert_eq!(rep.message, "class <1>: no vanishing; no claim");

        let f5 = FieldSpec::prime(5).unwrap();
        let rep = obstruction_report(&Endo::parse(&Ring::standard(3, f5), &images).unwrap(), 3).unwrap();
        assert!(rep.degree.is_zero);
        assert_eq!(rep.verdict, Verdict::ObstructionVanishes);

        let even = Endo::identity(&Ring::standard(2, Q));
        assert_eq!(obstruction_report(&even, 2).unwrap_err(), Error::EvenN(2));
    }
}
