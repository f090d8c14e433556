//! Symmetric bilinear forms over `k` and their classes in the Witt group.
//!
//! Conventions, fixed once for every invariant reported by this crate:
//!
//! * signed discriminant of `<a_1,...,a_r>` is `(-1)^(r(r-1)/2) * a_1 * ... * a_r`;
//! * the Hasse symbol at a place `v` is `prod_{i<j} (a_i, a_j)_v`;
//! * the hyperbolic form of rank `2m` has Hasse symbol `(-1,-1)_v^(m(m-1)/2)`.
//!
//! Over `Q` a form is hyperbolic iff its rank is even, its signature is zero,
//! its signed discriminant is a square and its Hasse symbols agree with the
//! hyperbolic ones. Over `F_p` rank parity and signed discriminant suffice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar, SquareClass};
use crate::numtheory::{self, Place};

/// A symmetric matrix over `k`, with labels for its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    field: FieldSpec,
    matrix: Vec<Vec<Scalar>>,
    labels: Vec<String>,
}

impl GramForm {
    pub fn new(field: FieldSpec, matrix: Vec<Vec<Scalar>>, labels: Vec<String>) -> Result<Self> {
        let d = matrix.len();
        if labels.len() != d || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::Index("Gram matrix must be square with one label per row".into()));
        }
        for row in &matrix {
            for a in row {
                field.check(a)?;
            }
        }
        for i in 0..d {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(GramForm { field, matrix, labels })
    }

    /// Integer Gram matrix with default labels `e1, e2, ...`.
    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let matrix = rows
            .iter()
            .map(|r| r.iter().map(|&a| field.from_i64(a)).collect())
            .collect();
        GramForm::new(field, matrix, (1..=rows.len()).map(|i| format!("e{i}")).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `P * G * P^t`.
    pub fn congruent(&self, p: &[Vec<Scalar>]) -> Result<GramForm> {
        let d = self.size();
        if p.len() != d || p.iter().any(|r| r.len() != d) {
            return Err(Error::Index("change of basis has the wrong shape".into()));
        }
        let zero = self.field.zero();
        let pg: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).fold(zero.clone(), |acc, k| &acc + &(&p[i][k] * &self.matrix[k][j])))
                    .collect()
            })
            .collect();
        let m = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).fold(zero.clone(), |acc, k| &acc + &(&pg[i][k] * &p[j][k])))
                    .collect()
            })
            .collect();
        GramForm::new(self.field, m, self.labels.clone())
    }
}

/// The diagonal form `<a_1, ..., a_r>` with entries stored as square classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagForm {
    field: FieldSpec,
    entries: Vec<SquareClass>,
}

impl DiagForm {
    pub fn new(field: FieldSpec, entries: &[Scalar]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|a| field.square_class(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagForm { field, entries })
    }

    pub fn from_i64(field: FieldSpec, entries: &[i64]) -> Result<Self> {
        let scalars: Vec<Scalar> = entries.iter().map(|&a| field.from_i64(a)).collect();
        DiagForm::new(field, &scalars)
    }

    pub fn from_classes(field: FieldSpec, entries: Vec<SquareClass>) -> Self {
        assert!(entries.iter().all(|c| c.field() == field));
        DiagForm { field, entries }
    }

    /// Parses comma-separated entries such as `1,1,-2` or `1/2,3`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(DiagForm { field, entries: Vec::new() });
        }
        let mut scalars = Vec::new();
        let mut offset = 0;
        for item in text.split(',') {
            let s = item.trim();
            let value = s
                .parse::<BigRational>()
                .map_err(|_| Error::parse(offset, format!("`{s}` is not a rational number")))?;
            let a = field
                .from_rational(&value)
                .map_err(|_| Error::parse(offset, format!("`{s}` is not defined in {field}")))?;
            if a.is_zero() {
                return Err(Error::ZeroScalar);
            }
            scalars.push(a);
            offset += item.len() + 1;
        }
        DiagForm::new(field, &scalars)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `<alpha> * self`.
    pub fn scale(&self, alpha: &SquareClass) -> DiagForm {
        DiagForm {
            field: self.field,
            entries: self.entries.iter().map(|a| a.mul(alpha)).collect(),
        }
    }

    /// `<-1> * self`.
    pub fn negate(&self) -> DiagForm {
        DiagForm {
            field: self.field,
            entries: self.entries.iter().map(SquareClass::neg).collect(),
        }
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ">")
    }
}

/// A diagonalization `P * G * P^t = diag(pivots)` kept for auditing.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub form: DiagForm,
    pub pivots: Vec<Scalar>,
    pub change_of_basis: Vec<Vec<Scalar>>,
}

/// Congruence diagonalization by symmetric Gaussian elimination.
pub fn diagonalize(g: &GramForm) -> Result<DiagForm> {
    Ok(diagonalize_with_basis(g)?.form)
}

/// Like [`diagonalize`], also returning the change-of-basis matrix.
pub fn diagonalize_with_basis(g: &GramForm) -> Result<Diagonalization> {
    let d = g.size();
    let field = g.field;
    let mut a = g.matrix.clone();
    let mut p: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    for k in 0..d {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..d).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                p.swap(k, j);
            } else if let Some(j) = (k + 1..d).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j; the new pivot is 2 a_kj since a_jj = a_kk = 0
                for c in 0..d {
                    let v = &a[k][c] + &a[j][c];
                    a[k][c] = v;
                }
                for r in 0..d {
                    let v = &a[r][k] + &a[r][j];
                    a[r][k] = v;
                }
                for c in 0..d {
                    let v = &p[k][c] + &p[j][c];
                    p[k][c] = v;
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot_inv = a[k][k].inv().unwrap();
        let pivot_row: Vec<(usize, Scalar)> = (k + 1..d)
            .filter(|&c| !a[k][c].is_zero())
            .map(|c| (c, a[k][c].clone()))
            .collect();
        let p_row: Vec<(usize, Scalar)> = (0..d)
            .filter(|&c| !p[k][c].is_zero())
            .map(|c| (c, p[k][c].clone()))
            .collect();
        for &(i, ref aki) in &pivot_row {
            let f = aki * &pivot_inv;
            for (c, akc) in &pivot_row {
                let v = &a[i][*c] - &(&f * akc);
                a[i][*c] = v;
            }
            for (c, pkc) in &p_row {
                let v = &p[i][*c] - &(&f * pkc);
                p[i][*c] = v;
            }
        }
        for &(i, _) in &pivot_row {
            a[i][k] = field.zero();
            a[k][i] = field.zero();
        }
    }
    let pivots: Vec<Scalar> = (0..d).map(|k| a[k][k].clone()).collect();
    Ok(Diagonalization {
        form: DiagForm::new(field, &pivots)?,
        pivots,
        change_of_basis: p,
    })
}

/// Invariants deciding the Witt class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittInvariants {
    pub field: FieldSpec,
    pub rank: usize,
    /// Signature at the real place (rationals only).
    pub signature: Option<i64>,
    pub signed_discriminant: SquareClass,
    /// Hasse symbols at infinity and 2, and at every odd prime where it is
    /// -1 (rationals only). Unlisted places give +1, so isometric forms have
    /// equal maps.
    pub hasse: BTreeMap<Place, i8>,
}

#[derive(Serialize)]
struct InvariantsJson<'a> {
    schema: u32,
    field: String,
    rank: usize,
    signature: Option<i64>,
    signed_discriminant: String,
    hasse: &'a BTreeMap<Place, i8>,
}

impl WittInvariants {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(InvariantsJson {
            schema: 1,
            field: self.field.to_string(),
            rank: self.rank,
            signature: self.signature,
            signed_discriminant: self.signed_discriminant.to_string(),
            hasse: &self.hasse,
        })
        .unwrap()
    }
}

fn rational_rep(c: &SquareClass) -> BigInt {
    c.rep().as_rational().unwrap().to_integer()
}

/// Relevant places of a rational diagonal form.
fn relevant_places(d: &DiagForm) -> BTreeSet<Place> {
    let mut places: BTreeSet<Place> = [Place::Infinity, Place::Prime(2)].into();
    for a in &d.entries {
        let (_, primes) = numtheory::squarefree_part(&rational_rep(a)).unwrap();
        places.extend(primes.into_iter().map(Place::Prime));
    }
    places
}

fn hasse_at(d: &DiagForm, place: Place) -> i8 {
    let reps: Vec<BigInt> = d.entries.iter().map(rational_rep).collect();
    match place {
        Place::Infinity => {
            let neg = reps.iter().filter(|a| a.is_negative()).count();
            if (neg * neg.saturating_sub(1) / 2) % 2 == 1 {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let pb = BigInt::from(p);
            // entries that are p-adic units pair trivially among themselves at odd p
            let mut s = 1i8;
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    if p != 2 && !(&reps[i] % &pb).is_zero() && !(&reps[j] % &pb).is_zero() {
                        continue;
                    }
                    s *= numtheory::hilbert_squarefree(&reps[i], &reps[j], p);
                }
            }
            s
        }
    }
}

/// Rank, signature, signed discriminant and Hasse symbols.
pub fn invariants(d: &DiagForm) -> WittInvariants {
    let field = d.field;
    let r = d.rank();
    let sign = if (r * r.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
    let signed_discriminant = d
        .entries
        .iter()
        .fold(field.square_class(&field.from_i64(sign)).unwrap(), |acc, a| acc.mul(a));
    let (signature, hasse) = match field {
        FieldSpec::Rationals => {
            let sig = d
                .entries
                .iter()
                .map(|a| a.rep().signum().unwrap() as i64)
                .sum();
            let hasse = relevant_places(d)
                .into_iter()
                .map(|v| (v, hasse_at(d, v)))
                .filter(|&(v, h)| h == -1 || matches!(v, Place::Infinity | Place::Prime(2)))
                .collect();
            (Some(sig), hasse)
        }
        FieldSpec::PrimeField(_) => (None, BTreeMap::new()),
    };
    WittInvariants {
        field,
        rank: r,
        signature,
        signed_discriminant,
        hasse,
    }
}

/// Hasse symbol of the hyperbolic form of rank `2m` at `place`.
pub fn hyperbolic_hasse(m: usize, place: Place) -> i8 {
    let minus_one_minus_one = match place {
        Place::Infinity | Place::Prime(2) => -1,
        Place::Prime(_) => 1,
    };
    if (m * m.saturating_sub(1) / 2) % 2 == 1 {
        minus_one_minus_one
    } else {
        1
    }
}

/// True iff the form is hyperbolic, i.e. zero in `W(k)`.
pub fn is_witt_zero(d: &DiagForm) -> bool {
    let inv = invariants(d);
    if inv.rank % 2 == 1 || !inv.signed_discriminant.is_trivial() {
        return false;
    }
    match d.field {
        FieldSpec::PrimeField(_) => true,
        FieldSpec::Rationals => {
            let m = inv.rank / 2;
            inv.signature == Some(0)
                && inv.hasse.iter().all(|(&v, &h)| h == hyperbolic_hasse(m, v))
        }
    }
}

/// Equality of Witt classes: `d1 - d2` is hyperbolic.
pub fn witt_equal(d1: &DiagForm, d2: &DiagForm) -> bool {
    assert_eq!(d1.field, d2.field, "forms over different fields");
    is_witt_zero(&orthogonal_sum(d1, &d2.negate()))
}

pub fn orthogonal_sum(d1: &DiagForm, d2: &DiagForm) -> DiagForm {
    assert_eq!(d1.field, d2.field, "forms over different fields");
    DiagForm {
        field: d1.field,
        entries: d1.entries.iter().chain(&d2.entries).cloned().collect(),
    }
}

pub fn tensor(d1: &DiagForm, d2: &DiagForm) -> DiagForm {
    assert_eq!(d1.field, d2.field, "forms over different fields");
    DiagForm {
        field: d1.field,
        entries: d1
            .entries
            .iter()
            .flat_map(|a| d2.entries.iter().map(move |b| a.mul(b)))
            .collect(),
    }
}

fn sort_key(c: &SquareClass) -> (i128, bool) {
    let (n, _) = c.rep().lift();
    let n = n.to_i128().unwrap_or(i128::MAX);
    (n.abs(), n < 0)
}

/// A small representative of the Witt class of `d`.
///
/// Over `F_p` the result is the canonical anisotropic form (rank at most 2).
/// Over `Q`, hyperbolic planes `<a,-a>` are stripped and isotropic ternary
/// subforms `<a,b,c>` are replaced by `<-abc>` until neither applies; the
/// result has no such subforms but is not guaranteed anisotropic in rank >= 4.
pub fn witt_reduce(d: &DiagForm) -> DiagForm {
    let field = d.field;
    if let FieldSpec::PrimeField(_) = field {
        let inv = invariants(d);
        let disc = inv.signed_discriminant;
        let entries = match (inv.rank % 2, disc.is_trivial()) {
            (0, true) => vec![],
            (0, false) => vec![field.square_class(&field.one()).unwrap(), disc.neg()],
            _ => vec![disc],
        };
        return DiagForm { field, entries };
    }
    let mut entries = d.entries.clone();
    'outer: loop {
        for i in 0..entries.len() {
            let neg = entries[i].neg();
            if let Some(j) = (i + 1..entries.len()).find(|&j| entries[j] == neg) {
                entries.remove(j);
                entries.remove(i);
                continue 'outer;
            }
        }
        let r = entries.len();
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let tern = DiagForm {
                        field,
                        entries: vec![entries[i].clone(), entries[j].clone(), entries[k].clone()],
                    };
                    let rest = entries[i].mul(&entries[j]).mul(&entries[k]).neg();
                    let single = DiagForm { field, entries: vec![rest.clone()] };
                    if witt_equal(&tern, &single) {
                        entries.remove(k);
                        entries.remove(j);
                        entries[i] = rest;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    entries.sort_by_key(sort_key);
    DiagForm { field, entries }
}
