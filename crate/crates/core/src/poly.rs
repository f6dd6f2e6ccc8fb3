//! Univariate polynomials over the rationals.
//!
//! Enough machinery to decide whether an integer matrix has an eigenvalue on
//! the unit circle without floating point: characteristic polynomials,
//! gcds, cyclotomic polynomials, and Sturm sequences.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// Dense polynomial, coefficients from the constant term upward. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_integers<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Poly { coeffs: c }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Integer coefficients when all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `x^deg p(1/x)`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// Coefficients read the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let mut c = self.coeffs.clone();
        c.reverse();
        c == self.coeffs
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - M)` via Faddeev–LeVerrier.
pub fn characteristic_polynomial(m: &IntMatrix) -> Poly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let shifted = mk.add(&IntMatrix::identity(n).scale(&coeffs[n - k + 1]));
        mk = m * &shifted;
        let tr = mk.trace();
        // exact: the trace is divisible by k
        coeffs[n - k] = -(tr / BigInt::from(k));
    }
    Poly::from_integers(coeffs)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `k`-th cyclotomic polynomial, `k >= 1`.
pub fn cyclotomic(k: u64) -> Poly {
    assert!(k >= 1);
    let mut p = Poly::monomial(k as usize).sub(&Poly::one());
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}

/// Orders `k` with `phi(k) <= degree`, ascending.
pub fn cyclotomic_orders_up_to_degree(degree: usize) -> Vec<u64> {
    // phi(k) >= sqrt(k/2), so k <= 2 d^2 covers every candidate
    let bound = 2 * (degree as u64).pow(2) + 2;
    (1..=bound).filter(|&k| euler_phi(k) as usize <= degree).collect()
}

/// Cyclotomic factor `Phi_order` dividing a polynomial `multiplicity` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub order: u64,
    pub multiplicity: usize,
    pub polynomial: Poly,
}

/// Splits off every cyclotomic factor of `p`; returns the factors and the
/// cofactor.
pub fn split_cyclotomic(p: &Poly) -> (Vec<CyclotomicFactor>, Poly) {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for k in cyclotomic_orders_up_to_degree(p.degree()) {
        if rest.degree() == 0 {
            break;
        }
        let phi = cyclotomic(k);
        if phi.degree() > rest.degree() {
            continue;
        }
        let mut multiplicity = 0;
        loop {
            let (q, r) = rest.div_rem(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            multiplicity += 1;
        }
        if multiplicity > 0 {
            factors.push(CyclotomicFactor {
                order: k,
                multiplicity,
                polynomial: phi,
            });
        }
    }
    (factors, rest)
}

/// For a palindromic `r` of even degree `2m`, the degree-`m` polynomial `q`
/// with `r(x) = x^m q(x + 1/x)`.
pub fn trace_polynomial(r: &Poly) -> Option<Poly> {
    if !r.is_palindromic() || !r.degree().is_multiple_of(2) {
        return None;
    }
    let m = r.degree() / 2;
    // D_0 = 2, D_1 = y, D_{j+1} = y D_j - D_{j-1}; x^j + x^-j = D_j(x + 1/x)
    let y = Poly::monomial(1);
    let mut dickson = vec![Poly::constant(BigRational::from_integer(BigInt::from(2))), y.clone()];
    for j in 1..m {
        let next = y.mul(&dickson[j]).sub(&dickson[j - 1]);
        dickson.push(next);
    }
    let mut q = Poly::constant(r.coeff(m));
    for j in 1..=m {
        q = q.add(&dickson[j].scale(&r.coeff(m + j)));
    }
    Some(q)
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone()];
    if p.degree() == 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_variations(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_real_roots(p: &Poly, lo: &BigRational, hi: &BigRational) -> usize {
    if p.is_zero() || lo > hi {
        return 0;
    }
    let seq = sturm_sequence(p);
    // Sturm counts roots in (lo, hi]; add lo separately
    let interior = sign_variations(&seq, lo).saturating_sub(sign_variations(&seq, hi));
    interior + usize::from(p.eval(lo).is_zero())
}

/// Closed intervals of width at most `width`, each containing exactly one
/// distinct root of `p` in `[lo, hi]`.
pub fn isolate_real_roots(
    p: &Poly,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = count_real_roots(p, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) <= width {
            out.push((a, b));
            continue;
        }
        if a == b {
            out.push((a, b));
            continue;
        }
        // split at a point that is not itself a root
        let span = &b - &a;
        let split = (2..)
            .flat_map(|d: i64| (1..d).map(move |k| (k, d)))
            .map(|(k, d)| &a + &span * ratio(k, d))
            .find(|s| !p.eval(s).is_zero())
            .expect("a polynomial has finitely many roots");
        stack.push((split.clone(), b));
        stack.push((a, split));
    }
    out.sort();
    out.dedup();
    out
}

/// Rational number from a machine integer pair; handy in tests and callers.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Content-free integer polynomial proportional to `p`.
pub fn primitive_part(p: &Poly) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let denom = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}
