//! Buchberger's algorithm, normal forms and finite-length quotient algebras.
//!
//! Bases are always returned fully reduced and monic, sorted by increasing
//! leading monomial, so the output depends only on the ideal and the order.
//! S-pairs are processed by the normal strategy (smallest lcm first, ties by
//! pair index) with Buchberger's coprime and chain criteria.
//!
//! With cofactor tracking enabled every basis element carries the
//! coefficients expressing it as a combination of the input generators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{same_ring, Monomial, Poly, Ring};

/// Monomial order; variable precedence follows declaration order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                // the larger monomial has the smaller exponent in the last
                // variable where they differ
                for (x, y) in ea.iter().zip(eb).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        })
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(Error::parse(0, format!("unknown monomial order `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct OKey(Monomial, MonomialOrder);

impl Ord for OKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

impl PartialOrd for OKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial under reduction, kept sorted by the monomial order.
pub(crate) struct Work {
    order: MonomialOrder,
    map: BTreeMap<OKey, Scalar>,
}

impl Work {
    pub(crate) fn from_poly(p: &Poly, order: MonomialOrder) -> Self {
        Work {
            order,
            map: p.terms().map(|(m, c)| (OKey(m.clone(), order), c.clone())).collect(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.map.pop_last().map(|(k, c)| (k.0, c))
    }

    /// Subtracts `c * m * g`, ignoring the term of `g` at `skip`.
    pub(crate) fn sub_scaled(&mut self, g: &Poly, m: &Monomial, c: &Scalar, skip: Option<&Monomial>) {
        for (t, a) in g.terms() {
            if Some(t) == skip {
                continue;
            }
            let key = OKey(t.mul(m), self.order);
            let delta = -&(a * c);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(delta);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get() + &delta;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Elem {
    poly: Poly,
    lm: Monomial,
    cof: Option<Vec<Poly>>,
}

impl Elem {
    /// Monic element from a nonzero polynomial.
    fn new(poly: Poly, cof: Option<Vec<Poly>>, order: MonomialOrder) -> Elem {
        let (lm, lc) = poly.leading_term(order).expect("nonzero polynomial");
        let lm = lm.clone();
        let inv = lc.inv().unwrap();
        Elem {
            poly: poly.scale(&inv),
            lm,
            cof: cof.map(|v| v.iter().map(|c| c.scale(&inv)).collect()),
        }
    }
}

/// Full reduction of `p` by `elems`: remainder plus per-element quotients.
fn reduce(p: &Poly, elems: &[&Elem], order: MonomialOrder, want_quotients: bool) -> (Poly, Vec<Poly>) {
    let ring = p.ring();
    let mut work = Work::from_poly(p, order);
    let mut rem = Poly::zero(ring);
    let mut quots = if want_quotients {
        vec![Poly::zero(ring); elems.len()]
    } else {
        Vec::new()
    };
    while let Some((m, c)) = work.pop_leading() {
        match elems.iter().position(|e| e.lm.divides(&m)) {
            Some(k) => {
                let q = m.div(&elems[k].lm).unwrap();
                work.sub_scaled(&elems[k].poly, &q, &c, Some(&elems[k].lm));
                if want_quotients {
                    quots[k].add_term(q, c);
                }
            }
            None => rem.add_term(m, c),
        }
    }
    (rem, quots)
}

fn combine_cofactors(base: &[Poly], quots: &[Poly], elems: &[&Elem]) -> Vec<Poly> {
    let mut out = base.to_vec();
    for (q, e) in quots.iter().zip(elems) {
        if q.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(e.cof.as_ref().unwrap()) {
            *o = &*o - &(q * c);
        }
    }
    out
}

/// A reduced Gröbner basis together with its inputs.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<Poly>,
    elems: Vec<Elem>,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], order: MonomialOrder, track_cofactors: bool) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::RingMismatch("empty generator list".into()));
    };
    let ring = first.ring().clone();
    if let Some(bad) = gens.iter().find(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch(format!("generator {bad} lives in a different ring")));
    }
    let m = gens.len();
    let unit_vec = |i: usize| -> Vec<Poly> {
        (0..m)
            .map(|j| if i == j { Poly::one(&ring) } else { Poly::zero(&ring) })
            .collect()
    };

    let mut elems: Vec<Elem> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| Elem::new(g.clone(), track_cofactors.then(|| unit_vec(i)), order))
        .collect();

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..elems.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = elems[a.0].lm.lcm(&elems[a.1].lm);
                let lb = elems[b.0].lm.lcm(&elems[b.1].lm);
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (a, b) = (&elems[i], &elems[j]);
        if a.lm.is_coprime(&b.lm) {
            continue;
        }
        let lcm = a.lm.lcm(&b.lm);
        let chain = (0..elems.len()).any(|k| {
            k != i
                && k != j
                && elems[k].lm.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let one = ring.field().one();
        let ua = lcm.div(&a.lm).unwrap();
        let ub = lcm.div(&b.lm).unwrap();
        let s = &a.poly.mul_term(&ua, &one) - &b.poly.mul_term(&ub, &one);
        let s_cof = track_cofactors.then(|| {
            a.cof
                .as_ref()
                .unwrap()
                .iter()
                .zip(b.cof.as_ref().unwrap())
                .map(|(ca, cb)| &ca.mul_term(&ua, &one) - &cb.mul_term(&ub, &one))
                .collect::<Vec<_>>()
        });
        let refs: Vec<&Elem> = elems.iter().collect();
        let (r, quots) = reduce(&s, &refs, order, track_cofactors);
        if r.is_zero() {
            continue;
        }
        let r_cof = s_cof.map(|sc| combine_cofactors(&sc, &quots, &refs));
        let new = Elem::new(r, r_cof, order);
        let is_unit = new.lm.is_one();
        elems.push(new);
        let n = elems.len() - 1;
        if is_unit {
            elems = vec![elems.swap_remove(n)];
            break;
        }
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    // minimize: drop elements whose leading monomial is a multiple of another's
    let mut keep: Vec<Elem> = Vec::new();
    for (idx, e) in elems.iter().enumerate() {
        let redundant = elems.iter().enumerate().any(|(k, f)| {
            k != idx && f.lm.divides(&e.lm) && (f.lm != e.lm || k < idx)
        });
        if !redundant {
            keep.push(e.clone());
        }
    }

    // inter-reduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<&Elem> = keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, e)| e).collect();
        let e = &keep[idx];
        let (r, quots) = reduce(&e.poly, &others, order, track_cofactors);
        let cof = e.cof.as_ref().map(|c| combine_cofactors(c, &quots, &others));
        reduced.push(Elem::new(r, cof, order));
    }
    reduced.sort_by(|a, b| order.cmp(&a.lm, &b.lm));

    Ok(GroebnerBasis {
        ring,
        order,
        generators: gens.to_vec(),
        elems: reduced,
    })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Basis polynomials, monic, by increasing leading monomial.
    pub fn basis(&self) -> Vec<Poly> {
        self.elems.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lm.clone()).collect()
    }

    /// Row `i` expresses basis element `i` in terms of the generators.
    pub fn cofactors(&self) -> Option<Vec<Vec<Poly>>> {
        self.elems.iter().map(|e| e.cof.clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elems.iter().any(|e| e.lm.is_one())
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch(format!("{p} is not in the basis ring")));
        }
        let refs: Vec<&Elem> = self.elems.iter().collect();
        Ok(reduce(p, &refs, self.order, false).0)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Standard monomials of the quotient; see [`standard_monomials`].
    pub fn quotient_algebra(&self) -> Result<QuotientAlgebra> {
        standard_monomials(self)
    }
}

/// `k[x] / I` for a finite-length ideal, with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Monomials outside the leading-term ideal, sorted by the monomial order.
///
/// Fails with [`Error::NotFiniteLength`] if some variable has no pure power
/// among the leading monomials.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<QuotientAlgebra> {
    let n = gb.ring.nvars();
    let lms = gb.leading_monomials();
    for i in 0..n {
        let pure = lms.iter().any(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(j, &e)| (j == i) == (e > 0))
        });
        let unit = lms.iter().any(Monomial::is_one);
        if !pure && !unit {
            return Err(Error::NotFiniteLength(gb.ring.vars()[i].clone()));
        }
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(n)];
    while let Some(m) = frontier.pop() {
        if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(n, i)));
        }
        seen.insert(m);
    }
    let mut standard: Vec<Monomial> = seen.into_iter().collect();
    standard.sort_by(|a, b| gb.order.cmp(a, b));
    let index = standard.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(QuotientAlgebra {
        gb: gb.clone(),
        standard,
        index,
    })
}

impl QuotientAlgebra {
    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// The length `D` of the quotient.
    pub fn dimension(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.gb.normal_form(p)
    }

    /// Coordinates of the class of `p` in the standard-monomial basis.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<Scalar>> {
        let nf = self.normal_form(p)?;
        let mut out = vec![self.gb.ring.field().zero(); self.dimension()];
        for (m, c) in nf.terms() {
            out[self.index[m]] = c.clone();
        }
        Ok(out)
    }

    /// First variable that is not nilpotent in the quotient, if any.
    ///
    /// Multiplication by `x_i` has a minimal polynomial of degree at most `D`,
    /// so `x_i` is nilpotent iff `x_i^D` reduces to zero.
    pub fn non_nilpotent_variable(&self) -> Option<usize> {
        let ring = &self.gb.ring;
        (0..ring.nvars()).find(|&i| {
            let x = Poly::var(ring, i);
            let mut r = Poly::one(ring);
            for _ in 0..self.dimension() {
                r = self.gb.normal_form(&(&r * &x)).unwrap();
                if r.is_zero() {
                    return false;
                }
            }
            true
        })
    }
}

/// True iff the zero locus of the ideal is the origin alone.
pub fn supported_only_at_origin(qa: &QuotientAlgebra) -> bool {
    qa.non_nilpotent_variable().is_none()
}

/// If `1` lies in the ideal generated by `gens`, returns `c` with
/// `sum c_i * gens_i = 1`, checked by expansion.
pub fn contains_one_with_certificate(gens: &[Poly]) -> Option<Vec<Poly>> {
    let gb = buchberger(gens, MonomialOrder::Grevlex, true).ok()?;
    if !gb.is_unit_ideal() {
        return None;
    }
    let cert = gb.elems[0].cof.clone()?;
    let ring = gb.ring();
    let total = cert
        .iter()
        .zip(gens)
        .fold(Poly::zero(ring), |acc, (c, g)| &acc + &(c * g));
    assert!(total == Poly::one(ring), "certificate identity failed");
    Some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars.iter().copied(), FieldSpec::Rationals).unwrap()
    }

    fn ps(r: &Arc<Ring>, items: &[&str]) -> Vec<Poly> {
        items.iter().map(|s| Poly::parse(r, s).unwrap()).collect()
    }

    #[test]
    fn grevlex_and_lex_compare() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        let g = MonomialOrder::Grevlex;
        assert_eq!(g.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(g.cmp(&m(&[0, 2]), &m(&[1, 0])), Ordering::Greater);
        // x*z^2 vs y^3 in grevlex: y^3 is bigger (smaller last exponent)
        assert_eq!(g.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
        let l = MonomialOrder::Lex;
        assert_eq!(l.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn counterexample_ideal_basis() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&ps(&r, &["x^2 - y^2", "x*y"]), MonomialOrder::Grevlex, false).unwrap();
        let mut got = gb.basis();
        got.sort_by_key(|p| p.to_string());
        let mut want = ps(&r, &["x^2 - y^2", "x*y", "y^3"]);
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&ps(&r, &["x"]), MonomialOrder::Grevlex, false).unwrap();
        assert_eq!(gb.basis(), ps(&r, &["x"]));
        let gb = buchberger(&ps(&r, &["x + y", "x - y"]), MonomialOrder::Grevlex, false).unwrap();
        assert_eq!(gb.basis(), ps(&r, &["y", "x"]));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&ps(&r, &["x^2 - y^2", "x*y"]), MonomialOrder::Grevlex, false).unwrap();
        let nf = |s: &str| gb.normal_form(&Poly::parse(&r, s).unwrap()).unwrap();
        assert_eq!(nf("x^2"), Poly::parse(&r, "y^2").unwrap());
        assert!(nf("x^3").is_zero());
        assert_eq!(nf("3*x + y^2 - 1"), Poly::parse(&r, "3*x + y^2 - 1").unwrap());
    }

    #[test]
    fn standard_monomials_examples() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&ps(&r, &["x^2 - y^2", "x*y"]), MonomialOrder::Grevlex, false).unwrap();
        let qa = standard_monomials(&gb).unwrap();
        assert_eq!(qa.dimension(), 4);
        let names: BTreeSet<String> = qa
            .standard_monomials()
            .iter()
            .map(|m| m.display(r.vars()).to_string())
            .collect();
        assert_eq!(names, ["1", "x", "y", "y^2"].iter().map(|s| s.to_string()).collect());
        assert!(supported_only_at_origin(&qa));

        let r3 = ring(&["x1", "x2", "x3"]);
        let gb = buchberger(&ps(&r3, &["x1", "x2", "x3"]), MonomialOrder::Grevlex, false).unwrap();
        let qa = standard_monomials(&gb).unwrap();
        assert_eq!(qa.dimension(), 1);
        assert!(supported_only_at_origin(&qa));

        let gb = buchberger(&ps(&r, &["x"]), MonomialOrder::Grevlex, false).unwrap();
        assert_eq!(standard_monomials(&gb).unwrap_err(), Error::NotFiniteLength("y".into()));
    }

    #[test]
    fn support_away_from_origin() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&ps(&r, &["x^2 - x", "y"]), MonomialOrder::Grevlex, false).unwrap();
        let qa = standard_monomials(&gb).unwrap();
        assert_eq!(qa.dimension(), 2);
        assert!(!supported_only_at_origin(&qa));
        assert_eq!(qa.non_nilpotent_variable(), Some(0));
    }

    #[test]
    fn certificates() {
        let r = ring(&["x"]);
        let gens = ps(&r, &["x", "1 - x"]);
        assert_eq!(contains_one_with_certificate(&gens).unwrap(), ps(&r, &["1", "1"]));

        let r3 = ring(&["x1", "x2", "x3"]);
        assert!(contains_one_with_certificate(&ps(&r3, &["x1", "x2", "x3"])).is_none());

        let r6 = ring(&["x1", "x2", "x3", "y1", "y2", "y3"]);
        let gens = ps(
            &r6,
            &["x1^2 - x2^2", "x1*x2", "x3", "x1*y1 + x2*y2 + x3*y3 - 1"],
        );
        let cert = contains_one_with_certificate(&gens).unwrap();
        let total = cert.iter().zip(&gens).fold(Poly::zero(&r6), |acc, (c, g)| &acc + &(c * g));
        assert_eq!(total, Poly::one(&r6));
    }

    #[test]
    fn cofactors_reproduce_basis() {
        let r = ring(&["x", "y", "z"]);
        let gens = ps(&r, &["x^2 + y*z - 1", "x*y - z^2", "y^2 - x + z"]);
        let gb = buchberger(&gens, MonomialOrder::Grevlex, true).unwrap();
        for (b, row) in gb.basis().iter().zip(gb.cofactors().unwrap()) {
            let total = row.iter().zip(&gens).fold(Poly::zero(&r), |acc, (c, g)| &acc + &(c * g));
            assert_eq!(&total, b);
        }
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ring(&["x"]);
        let b = ring(&["y"]);
        let gens = vec![Poly::var(&a, 0), Poly::var(&b, 0)];
        assert!(matches!(buchberger(&gens, MonomialOrder::Lex, false), Err(Error::RingMismatch(_))));
        let gb = buchberger(&gens[..1], MonomialOrder::Lex, false).unwrap();
        assert!(matches!(gb.normal_form(&gens[1]), Err(Error::RingMismatch(_))));
    }
}
