//! Koszul complexes and their symmetric self-duality.
//!
//! `Kos(a_1..a_n)` has `Λ^i` in degree `i`, with basis the `i`-subsets of
//! `{1..n}` sorted lexicographically and differential
//! `d(e_{s_0} ∧ ... ∧ e_{s_{i-1}}) = sum_k (-1)^k a_{s_k} e_{S - s_k}`.
//! A map `Λ^i -> Λ^j` is stored as a matrix with rows indexed by the basis of
//! `Λ^j` and columns by the basis of `Λ^i`.
//!
//! The pairing `phi_i : Λ^i -> (Λ^{n-i})^*`, `phi_i(p)(q) = p ∧ q`, is signed
//! to `rho_i = (-1)^{in + i(i-1)/2 + n(n-1)/2} phi_i`. The shifted dual complex
//! has `(Λ^{n-i})^*` in degree `i` with differential
//! `D_i = (-1)^{s(i,n)} d_{n-i+1}^t`. The exponent family is resolved by
//! requiring `rho` to be a chain map and then frozen as `s(i,n) = n mod 2`
//! (see [`dual_sign_exponent`]). Under it `rho` satisfies
//! `rho_{n-i}^t = (-1)^{n(n+1)/2} rho_i` for every `i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{Poly, Ring};

/// A matrix of polynomials, row-major.
pub type Matrix = Vec<Vec<Poly>>;

/// `i`-subsets of `{0..n-1}` in lexicographic order.
pub fn wedge_basis(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..=n - left {
            cur.push(s);
            go(s + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        go(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign of `e_p ∧ e_q` relative to the sorted product, or 0 if they overlap.
pub fn wedge_sign(p: &[usize], q: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for a in p {
        for b in q {
            if a == b {
                return 0;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sign_of_exponent(e: usize) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exponent `in + i(i-1)/2 + n(n-1)/2` of the sign on `rho_i`.
pub fn rho_exponent(i: usize, n: usize) -> usize {
    i * n + i * i.saturating_sub(1) / 2 + n * n.saturating_sub(1) / 2
}

pub fn rho_sign(i: usize, n: usize) -> i8 {
    sign_of_exponent(rho_exponent(i, n))
}

/// Frozen exponent of the shifted-dual differential `D_i`; depends on `n` only.
pub fn dual_sign_exponent(_i: usize, n: usize) -> usize {
    n % 2
}

/// Sign relating `rho_{n-i}^t` and `rho_i`.
pub fn symmetry_sign(n: usize) -> i8 {
    sign_of_exponent(n * (n + 1) / 2)
}

/// The Koszul complex of a sequence.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ring: Arc<Ring>,
    sequence: Vec<Poly>,
    bases: Vec<Vec<Vec<usize>>>,
    /// `differentials[i - 1]` is `d_i : Λ^i -> Λ^{i-1}`.
    differentials: Vec<Matrix>,
}

impl KoszulComplex {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn sequence(&self) -> &[Poly] {
        &self.sequence
    }

    pub fn n(&self) -> usize {
        self.sequence.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.bases[i].len()
    }

    pub fn basis(&self, i: usize) -> &[Vec<usize>] {
        &self.bases[i]
    }

    /// `d_i` for `1 <= i <= n`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.differentials[i - 1]
    }
}

/// The sequence `a1, ..., an` of variables, for symbolic checks.
pub fn generic_sequence(n: usize, field: FieldSpec) -> Vec<Poly> {
    let ring = Ring::new((1..=n).map(|i| format!("a{i}")), field).unwrap();
    (0..n).map(|i| Poly::var(&ring, i)).collect()
}

pub fn build_koszul(sequence: &[Poly]) -> Result<KoszulComplex> {
    let Some(first) = sequence.first() else {
        return Err(Error::RingMismatch("empty sequence".into()));
    };
    let ring = first.ring().clone();
    if sequence.iter().any(|p| !crate::poly::same_ring(p.ring(), &ring)) {
        return Err(Error::RingMismatch("sequence mixes rings".into()));
    }
    let n = sequence.len();
    let bases: Vec<_> = (0..=n).map(|i| wedge_basis(n, i)).collect();
    let mut differentials = Vec::with_capacity(n);
    for i in 1..=n {
        let mut d = zero_matrix(&ring, bases[i - 1].len(), bases[i].len());
        for (col, s) in bases[i].iter().enumerate() {
            for (k, &sk) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&t| t != sk).collect();
                let row = bases[i - 1].iter().position(|b| *b == face).unwrap();
                d[row][col] = if k % 2 == 0 {
                    sequence[sk].clone()
                } else {
                    -&sequence[sk]
                };
            }
        }
        differentials.push(d);
    }
    let kc = KoszulComplex {
        ring,
        sequence: sequence.to_vec(),
        bases,
        differentials,
    };
    if !is_complex(&kc) {
        return Err(Error::Internal("Koszul differentials do not square to zero".into()));
    }
    Ok(kc)
}

/// `d_{i-1} ∘ d_i = 0` for every `i`.
pub fn is_complex(kc: &KoszulComplex) -> bool {
    (2..=kc.n()).all(|i| is_zero_matrix(&matmul(kc.differential(i - 1), kc.differential(i))))
}

fn zero_matrix(ring: &Arc<Ring>, rows: usize, cols: usize) -> Matrix {
    vec![vec![Poly::zero(ring); cols]; rows]
}

fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(Poly::is_zero))
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let ring = a
        .iter()
        .flatten()
        .chain(b.iter().flatten())
        .next()
        .map(|p| p.ring().clone());
    let Some(ring) = ring else {
        return vec![Vec::new(); a.len()];
    };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Poly::zero(&ring), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&row[k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn scale(m: &Matrix, sign: i8) -> Matrix {
    if sign == 1 {
        return m.clone();
    }
    m.iter().map(|r| r.iter().map(|p| -p).collect()).collect()
}

/// Pairing matrices, signed duality maps and the dual-differential convention.
#[derive(Clone, Debug)]
pub struct DualityData {
    pub complex: KoszulComplex,
    /// `phi[i]`: rows over the dual basis of `Λ^{n-i}`, columns over `Λ^i`.
    pub phi: Vec<Matrix>,
    pub rho: Vec<Matrix>,
    pub rho_signs: Vec<i8>,
    /// `dual_exponents[i - 1] = s(i, n)` for `1 <= i <= n`.
    pub dual_exponents: Vec<usize>,
}

/// Matrix of `phi_i`.
pub fn pairing_matrix(kc: &KoszulComplex, i: usize) -> Matrix {
    let n = kc.n();
    let ring = kc.ring();
    let one = Poly::one(ring);
    kc.basis(n - i)
        .iter()
        .map(|q| {
            kc.basis(i)
                .iter()
                .map(|p| match wedge_sign(p, q) {
                    0 => Poly::zero(ring),
                    1 => one.clone(),
                    _ => -&one,
                })
                .collect()
        })
        .collect()
}

/// Duality data with the signs `(-1)^{in + i(i-1)/2 + n(n-1)/2}`.
pub fn build_duality(kc: &KoszulComplex) -> DualityData {
    let n = kc.n();
    let signs: Vec<i8> = (0..=n).map(|i| rho_sign(i, n)).collect();
    build_duality_with_signs(kc, &signs).unwrap()
}

/// Duality data with arbitrary signs on `rho_0, ..., rho_n`.
pub fn build_duality_with_signs(kc: &KoszulComplex, signs: &[i8]) -> Result<DualityData> {
    let n = kc.n();
    if signs.len() != n + 1 {
        return Err(Error::ArityMismatch {
            expected: n + 1,
            found: signs.len(),
        });
    }
    let phi: Vec<Matrix> = (0..=n).map(|i| pairing_matrix(kc, i)).collect();
    let rho = phi.iter().zip(signs).map(|(m, &s)| scale(m, s)).collect();
    Ok(DualityData {
        complex: kc.clone(),
        phi,
        rho,
        rho_signs: signs.to_vec(),
        dual_exponents: (1..=n).map(|i| dual_sign_exponent(i, n)).collect(),
    })
}

/// `D_i = (-1)^{s(i,n)} d_{n-i+1}^t : (Λ^{n-i})^* -> (Λ^{n-i+1})^*`.
pub fn dual_differential(dd: &DualityData, i: usize) -> Matrix {
    dual_differential_with(dd, i, dd.dual_exponents[i - 1])
}

fn dual_differential_with(dd: &DualityData, i: usize, exponent: usize) -> Matrix {
    let n = dd.complex.n();
    scale(&transpose(dd.complex.differential(n - i + 1)), sign_of_exponent(exponent))
}

fn square_commutes(dd: &DualityData, i: usize, exponent: usize) -> bool {
    let lhs = matmul(&dd.rho[i - 1], dd.complex.differential(i));
    let rhs = matmul(&dual_differential_with(dd, i, exponent), &dd.rho[i]);
    lhs == rhs
}

/// Whether `rho_{i-1} d_i = D_i rho_i`, for `i = 1..n`.
pub fn chain_map_report(dd: &DualityData) -> Vec<bool> {
    (1..=dd.complex.n())
        .map(|i| square_commutes(dd, i, dd.dual_exponents[i - 1]))
        .collect()
}

pub fn verify_chain_map(dd: &DualityData) -> bool {
    chain_map_report(dd).into_iter().all(|ok| ok)
}

/// Whether `rho_{n-i}^t = (-1)^{n(n+1)/2} rho_i`, for `i = 0..n`.
pub fn symmetry_report(dd: &DualityData) -> Vec<bool> {
    symmetry_report_with_sign(dd, symmetry_sign(dd.complex.n()))
}

pub fn symmetry_report_with_sign(dd: &DualityData, sign: i8) -> Vec<bool> {
    let n = dd.complex.n();
    (0..=n)
        .map(|i| transpose(&dd.rho[n - i]) == scale(&dd.rho[i], sign))
        .collect()
}

pub fn verify_symmetry(dd: &DualityData) -> bool {
    symmetry_report(dd).into_iter().all(|ok| ok)
}

/// Determines, square by square, which exponents `s(i, n)` make the signed
/// duality on the generic sequence of length `n` a chain map. `None` if some
/// square commutes for neither sign.
pub fn resolve_dual_convention(n: usize) -> Option<Vec<usize>> {
    let kc = build_koszul(&generic_sequence(n, FieldSpec::Rationals)).unwrap();
    let dd = build_duality(&kc);
    (1..=n)
        .map(|i| (0..2).find(|&s| square_commutes(&dd, i, s)))
        .collect()
}
