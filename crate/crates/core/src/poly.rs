//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! A [`Poly`] is a map from exponent vectors to nonzero coefficients, tied to
//! a shared [`Ring`] (variable names plus base field). Two polynomials are
//! equal iff their rings and term maps agree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groebner::MonomialOrder;

/// Variable names and base field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: FieldSpec,
}

impl Ring {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        field: FieldSpec,
    ) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::parse(0, format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::parse(0, format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    /// `x1, ..., xn` over `field`.
    pub fn standard(n: usize, field: FieldSpec) -> Arc<Ring> {
        Ring::new((1..=n).map(|i| format!("x{i}")), field).unwrap()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Exponent vector; its length is the number of ring variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders the monomial with the given variable names (`1` for the unit).
    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, vars }
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in self.vars.iter().zip(self.mono.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with exact coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Poly::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<Ring>, n: i64) -> Self {
        Poly::constant(ring, ring.field().from_i64(n))
    }

    /// The `i`-th variable.
    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses text under the polynomial grammar (see [`crate::parse`]).
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        crate::parse::parse_poly(text, ring)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    /// Terms in increasing lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let field = self.field();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * &field.from_i64(e as i64));
        }
        out
    }

    /// Composition: replaces variable `i` by `images[i]`. The result lives in
    /// the ring of the images.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            // constant polynomial in a ring without variables
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch(format!("image {bad} lives in a different ring")));
        }
        if self.field() != target.field() {
            return Err(Error::RingMismatch("images live over a different field".into()));
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses `self` in `target`, sending variable `i` to variable
    /// `var_map[i]` of the target ring.
    pub fn embed(&self, target: &Arc<Ring>, var_map: &[usize]) -> Result<Poly> {
        if var_map.len() != self.ring.nvars() || var_map.iter().any(|&j| j >= target.nvars()) {
            return Err(Error::RingMismatch("bad variable map".into()));
        }
        if target.field() != self.field() {
            return Err(Error::RingMismatch("embedding changes the field".into()));
        }
        let n = target.nvars();
        Ok(Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &j) in var_map.iter().enumerate() {
                    e[j] += m.0[i];
                }
                (Monomial(e), c.clone())
            }),
        ))
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let order = MonomialOrder::Grevlex;
        let (lm, lc) = divisor.leading_term(order)?;
        let (lm, lc_inv) = (lm.clone(), lc.inv()?);
        let mut rem = crate::groebner::Work::from_poly(self, order);
        let mut quot = Poly::zero(&self.ring);
        while let Some((m, c)) = rem.pop_leading() {
            let q = m.div(&lm)?;
            let qc = &c * &lc_inv;
            rem.sub_scaled(divisor, &q, &qc, Some(&lm));
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Applies `f` to every coefficient, keeping the ring.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Evaluates all variables at field elements.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let (num, den) = c.lift();
            let negative = num < 0.into();
            let abs = if negative { -num } else { num };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs.is_one() && den.is_one();
            if !unit || m.is_one() {
                write!(f, "{abs}")?;
                if !den.is_one() {
                    write!(f, "/{den}")?;
                }
                if !m.is_one() {
                    write!(f, "*")?;
                }
            }
            if !m.is_one() {
                write!(f, "{}", m.display(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

fn check_rings(a: &Poly, b: &Poly) {
    assert!(same_ring(&a.ring, &b.ring), "polynomials from different rings");
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        check_rings(self, rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        check_rings(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        check_rings(self, rhs);
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c = &*c + &prod)
                    .or_insert(prod);
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<Ring> {
        Ring::standard(2, FieldSpec::Rationals)
    }

    fn p(ring: &Arc<Ring>, s: &str) -> Poly {
        Poly::parse(ring, s).unwrap()
    }

    #[test]
    fn substitute_examples() {
        let r = ring2();
        let sq = p(&r, "x1^2");
        let got = sq.substitute(&[p(&r, "x1 + x2"), p(&r, "x2")]).unwrap();
        assert_eq!(got, p(&r, "x1^2 + 2*x1*x2 + x2^2"));

        let f = p(&r, "3*x1^3*x2 - x2 + 7");
        let id = [Poly::var(&r, 0), Poly::var(&r, 1)];
        assert_eq!(f.substitute(&id).unwrap(), f);

        let x1 = Poly::var(&r, 0);
        let phi = [p(&r, "x1^2 - x2^2"), p(&r, "x1*x2")];
        assert_eq!(x1.substitute(&phi).unwrap(), p(&r, "x1^2 - x2^2"));

        assert!(matches!(x1.substitute(&phi[..1]), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn substitute_into_other_ring() {
        let r = ring2();
        let big = Ring::standard(3, FieldSpec::Rationals);
        let f = p(&r, "x1*x2");
        let got = f.substitute(&[p(&big, "x3"), p(&big, "x1 + 1")]).unwrap();
        assert_eq!(got, p(&big, "x1*x3 + x3"));
    }

    #[test]
    fn derivative_and_degree() {
        let r = ring2();
        let f = p(&r, "x1^3*x2 - 4*x2^2 + 1");
        assert_eq!(f.derivative(0), p(&r, "3*x1^2*x2"));
        assert_eq!(f.derivative(1), p(&r, "x1^3 - 8*x2"));
        assert_eq!(f.total_degree(), Some(4));
        assert_eq!(Poly::zero(&r).total_degree(), None);
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let a = p(&r, "x1^2 - x2^2");
        let b = p(&r, "x1 - x2");
        assert_eq!(a.div_exact(&b).unwrap(), p(&r, "x1 + x2"));
        assert!(p(&r, "x1^2 + x2^2").div_exact(&b).is_none());
        assert!(a.div_exact(&Poly::zero(&r)).is_none());
    }

    #[test]
    fn pow_and_display() {
        let r = ring2();
        let f = p(&r, "x1 - x2");
        assert_eq!(f.pow(3).to_string(), "x1^3 - 3*x1^2*x2 + 3*x1*x2^2 - x2^3");
        assert_eq!(Poly::zero(&r).to_string(), "0");
        assert_eq!(p(&r, "-1/2*x1 + 1").to_string(), "-1/2*x1 + 1");
        assert_eq!(p(&r, "-3").to_string(), "-3");
    }

    #[test]
    fn embed_into_larger_ring() {
        let r = ring2();
        let big = Ring::standard(4, FieldSpec::Rationals);
        let f = p(&r, "x1^2*x2 + 5");
        assert_eq!(f.embed(&big, &[2, 3]).unwrap(), p(&big, "x3^2*x4 + 5"));
    }

    #[test]
    fn ring_rejects_duplicates() {
        assert!(Ring::new(["x", "x"], FieldSpec::Rationals).is_err());
        assert!(Ring::new(["1x"], FieldSpec::Rationals).is_err());
    }
}
