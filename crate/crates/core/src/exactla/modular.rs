//! Multi-modular exact rank and kernel computation.
//!
//! A Gaussian-integer matrix is mapped to 𝔽_p through `i ↦ ι` with
//! `ι² = −1 (mod p)`, `p ≡ 1 (mod 4)`. Rank over 𝔽_p never exceeds rank
//! over ℚ(i), so full column (or row) rank mod p is already a proof. When the
//! kernel is nonzero, canonical kernel vectors are lifted by CRT and rational
//! reconstruction and then checked exactly against the original matrix; the
//! verified vectors bound the rank from above, so the result is certified.

use std::sync::OnceLock;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussRat;

use super::gauss_int::GaussInt;
use super::matrix::ExactMatrix;

/// Upper limit on the number of primes tried during reconstruction.
const MAX_PRIMES: usize = 160;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Prime {
    pub p: u64,
    /// Square root of −1 mod p.
    pub i: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Deterministic list of primes `p ≡ 1 (mod 4)` just below 2⁶².
pub(crate) fn primes() -> &'static [Prime] {
    static PRIMES: OnceLock<Vec<Prime>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n: u64 = (1u64 << 62) - 3; // ≡ 1 mod 4
        while out.len() < MAX_PRIMES {
            if is_prime(n) {
                let i = (2..)
                    .map(|g| powmod(g, (n - 1) / 4, n))
                    .find(|&t| mulmod(t, t, n) == n - 1)
                    .unwrap();
                out.push(Prime { p: n, i });
            }
            n -= 4;
        }
        out
    })
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

type SparseVec = Vec<(usize, u64)>;

/// `a + f·b` over 𝔽_p, both sorted by index.
fn axpy(a: &[(usize, u64)], f: u64, b: &[(usize, u64)], p: u64) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, mulmod(f, b[j].1, p)));
            j += 1;
        } else {
            let v = (a[i].1 + mulmod(f, b[j].1, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(v: &mut SparseVec, f: u64, p: u64) {
    for (_, x) in v.iter_mut() {
        *x = mulmod(*x, f, p);
    }
}

/// Column-incremental echelon form over 𝔽_p.
pub(crate) struct Echelon {
    pub pivot_cols: Vec<usize>,
    /// Canonical kernel vectors `(free column, combination)`: the combination
    /// has coefficient 1 at the free column and is supported on earlier pivot
    /// columns.
    pub kernel: Vec<(usize, SparseVec)>,
}

pub(crate) fn eliminate(
    rows: usize,
    columns: &[SparseVec],
    p: u64,
    track: bool,
    stop_at_first: bool,
) -> Echelon {
    let mut pivot_at_row: Vec<Option<u32>> = vec![None; rows];
    let mut vecs: Vec<SparseVec> = Vec::new();
    let mut combs: Vec<SparseVec> = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut kernel = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut comb: SparseVec = if track { vec![(c, 1)] } else { Vec::new() };
        loop {
            let Some(&(r, val)) = v.first() else {
                if track {
                    kernel.push((c, comb));
                }
                break;
            };
            match pivot_at_row[r] {
                Some(k) => {
                    let f = p - val;
                    v = axpy(&v, f, &vecs[k as usize], p);
                    if track {
                        comb = axpy(&comb, f, &combs[k as usize], p);
                    }
                }
                None => {
                    let inv = invmod(val, p);
                    scale(&mut v, inv, p);
                    if track {
                        scale(&mut comb, inv, p);
                    }
                    pivot_at_row[r] = Some(vecs.len() as u32);
                    vecs.push(v);
                    if track {
                        combs.push(comb);
                    }
                    pivot_cols.push(c);
                    break;
                }
            }
        }
        if stop_at_first && !kernel.is_empty() {
            break;
        }
    }
    Echelon { pivot_cols, kernel }
}

fn reduce_columns(cols: &[Vec<(usize, GaussInt)>], p: u64, iota: u64) -> Vec<SparseVec> {
    cols.iter()
        .map(|col| {
            col.iter()
                .filter_map(|(r, z)| {
                    let re = bigint_mod(&z.re, p);
                    let im = bigint_mod(&z.im, p);
                    let v = (re + mulmod(im, iota, p)) % p;
                    (v != 0).then_some((*r, v))
                })
                .collect()
        })
        .collect()
}

/// Rank over 𝔽_p of the image of `m` (a lower bound for the exact rank).
pub(crate) fn rank_mod_p(m: &ExactMatrix, prime: Prime) -> usize {
    let cols = m.integer_columns();
    let reduced = reduce_columns(&cols, prime.p, prime.i);
    eliminate(m.rows(), &reduced, prime.p, false, false).pivot_cols.len()
}

/// Rational reconstruction of `x mod modulus` with numerator and denominator
/// bounded by `sqrt(modulus / 2)`.
fn rational_reconstruct(x: &BigInt, modulus: &BigInt) -> Option<BigRational> {
    let bound = (modulus / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), x.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Chinese-remainder accumulator for one coordinate.
#[derive(Clone)]
struct Crt {
    value: BigInt,
}

impl Crt {
    fn push(&mut self, modulus: &BigInt, r: u64, p: u64) {
        // value' ≡ value (mod modulus), value' ≡ r (mod p)
        let cur = bigint_mod(&self.value, p);
        let m_mod = bigint_mod(modulus, p);
        let diff = (r + p - cur) % p;
        let k = mulmod(diff, invmod(m_mod, p), p);
        self.value = &self.value + modulus * BigInt::from(k);
    }
}

/// Image of the canonical kernel data for one prime.
struct KernelImage {
    pivot_cols: Vec<usize>,
    /// Per kernel vector: free column and dense (re, im) residues over columns ≤ free.
    vectors: Vec<(usize, Vec<(u64, u64)>)>,
}

fn kernel_image(
    m: &ExactMatrix,
    cols: &[Vec<(usize, GaussInt)>],
    prime: Prime,
    complex: bool,
    first_only: bool,
) -> Option<KernelImage> {
    let p = prime.p;
    let run = |iota: u64| {
        let reduced = reduce_columns(cols, p, iota);
        eliminate(m.rows(), &reduced, p, true, first_only)
    };
    let e1 = run(prime.i);
    let e2 = complex.then(|| run(p - prime.i));
    if let Some(e2) = &e2 {
        if e2.pivot_cols != e1.pivot_cols {
            return None;
        }
    }
    let inv2 = invmod(2, p);
    let inv2i = invmod(mulmod(2, prime.i, p), p);
    let vectors = e1
        .kernel
        .iter()
        .enumerate()
        .map(|(k, (free, comb))| {
            let mut dense = vec![(0u64, 0u64); free + 1];
            match &e2 {
                None => {
                    for (c, v) in comb {
                        dense[*c].0 = *v;
                    }
                }
                Some(e2) => {
                    let mut a = vec![0u64; free + 1];
                    let mut b = vec![0u64; free + 1];
                    for (c, v) in comb {
                        a[*c] = *v;
                    }
                    for (c, v) in &e2.kernel[k].1 {
                        b[*c] = *v;
                    }
                    for c in 0..=*free {
                        // a = re + ι·im, b = re − ι·im
                        let re = mulmod((a[c] + b[c]) % p, inv2, p);
                        let im = mulmod((a[c] + p - b[c]) % p, inv2i, p);
                        dense[c] = (re, im);
                    }
                }
            }
            (*free, dense)
        })
        .collect();
    Some(KernelImage {
        pivot_cols: e1.pivot_cols,
        vectors,
    })
}

/// Total order on pivot structures; the exact structure is the maximum.
fn better(a: &KernelImage, b: &KernelImage, first_only: bool) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if first_only {
        // later first dependency is better; no dependency at all is best
        let fa = a.vectors.first().map_or(usize::MAX, |v| v.0);
        let fb = b.vectors.first().map_or(usize::MAX, |v| v.0);
        return fa.cmp(&fb);
    }
    match a.pivot_cols.len().cmp(&b.pivot_cols.len()) {
        Ordering::Equal => b.pivot_cols.cmp(&a.pivot_cols),
        o => o,
    }
}

pub(crate) struct CertifiedKernel {
    pub rank: usize,
    /// Canonical kernel vectors (coefficient 1 at the free column, zero at
    /// later columns), not yet normalized.
    pub vectors: Vec<Vec<GaussRat>>,
}

/// Certified rank and canonical kernel basis (or only its first vector).
pub(crate) fn certified_kernel(m: &ExactMatrix, first_only: bool) -> Result<CertifiedKernel> {
    let cols = m.integer_columns();
    let complex = !m.is_real();
    let mut best: Option<KernelImage> = None;
    let mut moduli: BigInt = BigInt::one();
    let mut acc: Vec<Vec<(Crt, Crt)>> = Vec::new();
    for prime in primes() {
        let Some(img) = kernel_image(m, &cols, *prime, complex, first_only) else {
            continue;
        };
        if img.vectors.is_empty() {
            // full column rank mod p (or, for first_only, no dependency): certified
            return Ok(CertifiedKernel {
                rank: img.pivot_cols.len(),
                vectors: Vec::new(),
            });
        }
        match best.as_ref().map(|b| better(&img, b, first_only)) {
            Some(std::cmp::Ordering::Less) => continue,
            Some(std::cmp::Ordering::Equal) => {}
            _ => {
                moduli = BigInt::one();
                acc = img
                    .vectors
                    .iter()
                    .map(|(_, d)| {
                        vec![
                            (
                                Crt {
                                    value: BigInt::zero()
                                },
                                Crt {
                                    value: BigInt::zero()
                                }
                            );
                            d.len()
                        ]
                    })
                    .collect();
                best = Some(KernelImage {
                    pivot_cols: img.pivot_cols.clone(),
                    vectors: Vec::new(),
                });
            }
        }
        let p = prime.p;
        for (k, (_, dense)) in img.vectors.iter().enumerate() {
            for (c, (re, im)) in dense.iter().enumerate() {
                acc[k][c].0.push(&moduli, *re, p);
                acc[k][c].1.push(&moduli, *im, p);
            }
        }
        moduli *= BigInt::from(p);
        let best_ref = best.as_mut().unwrap();
        best_ref.vectors = img.vectors;

        if let Some(vectors) = try_reconstruct(m, &acc, &moduli) {
            return Ok(CertifiedKernel {
                rank: best_ref.pivot_cols.len(),
                vectors,
            });
        }
    }
    Err(Error::Certification(format!(
        "kernel of a {}x{} matrix not reconstructed within {} primes",
        m.rows(),
        m.cols(),
        MAX_PRIMES
    )))
}

fn try_reconstruct(
    m: &ExactMatrix,
    acc: &[Vec<(Crt, Crt)>],
    modulus: &BigInt,
) -> Option<Vec<Vec<GaussRat>>> {
    let mut out = Vec::with_capacity(acc.len());
    for coords in acc {
        let mut v = vec![GaussRat::zero(); m.cols()];
        for (c, (re, im)) in coords.iter().enumerate() {
            let re = rational_reconstruct(&re.value, modulus)?;
            let im = rational_reconstruct(&im.value, modulus)?;
            v[c] = GaussRat::new(re, im);
        }
        if m.mul_vec(&v).iter().any(|x| !x.is_zero()) {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_have_square_roots_of_minus_one() {
        for pr in primes().iter().take(8) {
            assert_eq!(pr.p % 4, 1);
            assert!(is_prime(pr.p));
            assert_eq!(mulmod(pr.i, pr.i, pr.p), pr.p - 1);
        }
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(primes()[0].p);
        for (a, b) in [(3i64, 7i64), (-5, 11), (0, 1), (123, 4567)] {
            let x = BigInt::from(a) * BigInt::from(b).modinv(&m).unwrap();
            let q = rational_reconstruct(&x.mod_floor(&m), &m).unwrap();
            assert_eq!(q, BigRational::new(a.into(), b.into()));
        }
    }

    #[test]
    fn crt_combines() {
        let (p, q) = (primes()[0].p, primes()[1].p);
        let mut c = Crt { value: BigInt::zero() };
        let x = BigInt::from(u64::MAX) * BigInt::from(12345u64);
        c.push(&BigInt::one(), bigint_mod(&x, p), p);
        c.push(&BigInt::from(p), bigint_mod(&x, q), q);
        assert_eq!(c.value, x.mod_floor(&(BigInt::from(p) * BigInt::from(q))));
    }
}
