//! Exact arithmetic: multiplicative orders, values of `q^k - 1`, `q^k + 1`
//! and cyclotomic polynomials at a prime power, p-adic valuations, and
//! formal products of those values.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes up to and including `bound`.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).filter(|&n| is_prime(n)).collect()
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// A prime power `ell^f` with `f >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    ell: u64,
    f: u32,
    value: BigUint,
}

impl PrimePower {
    pub fn new(ell: u64, f: u32) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if f == 0 {
            return Err(Error::InvalidPrimePower(format!("{ell}^0 is not a prime power")));
        }
        let value = BigUint::from(ell).pow(f);
        Ok(PrimePower { ell, f, value })
    }

    /// Recovers `ell` and `f` from the value itself.
    pub fn from_value(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidPrimePower(format!("{q} is not a prime power")));
        }
        let ell = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut rest = q;
        let mut f = 0;
        while rest.is_multiple_of(ell) {
            rest /= ell;
            f += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidPrimePower(format!("{q} is not a prime power")));
        }
        PrimePower::new(ell, f)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `q mod m`, for `m >= 1`.
    pub fn residue(&self, m: u64) -> u64 {
        (&self.value % m).to_u64().unwrap()
    }

    pub fn pow(&self, k: u64) -> BigInt {
        BigInt::from(self.value.pow(k as u32))
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.ell, self.f)
    }
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest `k >= 1` with `m^k = 1 (mod modulus)`. Negative `m` is reduced first.
pub fn multiplicative_order(m: i64, modulus: u64) -> Result<u64> {
    assert!(modulus >= 2, "modulus must be at least 2");
    let reduced = m.rem_euclid(modulus as i64) as u64;
    if reduced.gcd(&modulus) != 1 {
        return Err(Error::NotCoprime(m, modulus));
    }
    let mut acc = reduced;
    let mut k = 1;
    while acc != 1 {
        acc = ((acc as u128 * reduced as u128) % modulus as u128) as u64;
        k += 1;
    }
    debug_assert_eq!(mod_pow(reduced, k, modulus), 1);
    Ok(k)
}

/// Order of `m` modulo `p` for odd `p`, modulo 4 for `p = 2`.
pub fn d_p(m: i64, p: u64) -> Result<u64> {
    if p == 2 {
        multiplicative_order(m, 4)
    } else {
        multiplicative_order(m, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PsiKind {
    /// `q^k - 1`
    Minus,
    /// `q^k + 1`
    Plus,
}

pub fn psi_value(k: u64, q: &PrimePower, kind: PsiKind) -> BigInt {
    assert!(k >= 1, "psi index must be positive");
    let power = q.pow(k);
    match kind {
        PsiKind::Minus => power - 1,
        PsiKind::Plus => power + 1,
    }
}

/// `q^k - eps^k`: the factor that replaces `q^k - 1` for the unitary groups.
pub fn signed_psi_value(k: u64, q: &PrimePower, eps: i8) -> BigInt {
    psi_value(k, q, signed_kind(k, eps))
}

pub(crate) fn signed_kind(k: u64, eps: i8) -> PsiKind {
    if eps < 0 && k % 2 == 1 {
        PsiKind::Plus
    } else {
        PsiKind::Minus
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Value of the `d`-th cyclotomic polynomial at `q`, by exact division of
/// `q^d - 1` by the values at the proper divisors of `d`.
pub fn phi_value(d: u64, q: &PrimePower) -> BigInt {
    let mut cache = BTreeMap::new();
    phi_cached(d, q, &mut cache)
}

fn phi_cached(d: u64, q: &PrimePower, cache: &mut BTreeMap<u64, BigInt>) -> BigInt {
    if let Some(v) = cache.get(&d) {
        return v.clone();
    }
    let mut value = psi_value(d, q, PsiKind::Minus);
    for dd in divisors(d) {
        if dd < d {
            let part = phi_cached(dd, q, cache);
            let (quot, rem) = value.div_rem(&part);
            debug_assert!(rem.is_zero());
            value = quot;
        }
    }
    cache.insert(d, value.clone());
    value
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(x: &BigInt, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return Ok(v);
        }
        x = quot;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; negative when `p` divides the denominator.
pub fn valuation(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(valuation_int(x.numer(), p)? - valuation_int(x.denom(), p)?)
}

/// A formal product `scalar * q^q_exponent * prod psi(k, kind)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiExpr {
    scalar: BigRational,
    q_exponent: i64,
    factors: BTreeMap<(PsiKind, u64), i64>,
}

impl Default for PsiExpr {
    fn default() -> Self {
        PsiExpr::one()
    }
}

impl PsiExpr {
    pub fn one() -> Self {
        PsiExpr {
            scalar: BigRational::one(),
            q_exponent: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn with_scalar(mut self, numer: i64, denom: i64) -> Self {
        self.scalar *= BigRational::new(BigInt::from(numer), BigInt::from(denom));
        self
    }

    pub fn with_q_power(mut self, exponent: i64) -> Self {
        self.q_exponent += exponent;
        self
    }

    /// Multiplies in `psi(k, kind)^exponent`; zero exponents are never stored.
    pub fn mul_factor(&mut self, kind: PsiKind, k: u64, exponent: i64) {
        assert!(k >= 1, "psi index must be positive");
        if exponent == 0 {
            return;
        }
        let entry = self.factors.entry((kind, k)).or_insert(0);
        *entry += exponent;
        if *entry == 0 {
            self.factors.remove(&(kind, k));
        }
    }

    pub fn factor(mut self, kind: PsiKind, k: u64, exponent: i64) -> Self {
        self.mul_factor(kind, k, exponent);
        self
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn q_exponent(&self) -> i64 {
        self.q_exponent
    }

    pub fn factors(&self) -> impl Iterator<Item = (PsiKind, u64, i64)> + '_ {
        self.factors.iter().map(|(&(kind, k), &e)| (kind, k, e))
    }

    pub fn mul(&self, other: &PsiExpr) -> PsiExpr {
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        out.q_exponent += other.q_exponent;
        for (kind, k, e) in other.factors() {
            out.mul_factor(kind, k, e);
        }
        out
    }

    pub fn evaluate(&self, q: &PrimePower) -> BigRational {
        let mut numer = self.scalar.numer().clone();
        let mut denom = self.scalar.denom().clone();
        let q_power = q.pow(self.q_exponent.unsigned_abs());
        if self.q_exponent >= 0 {
            numer *= q_power;
        } else {
            denom *= q_power;
        }
        for (kind, k, e) in self.factors() {
            let v = psi_value(k, q, kind).pow(e.unsigned_abs() as u32);
            if e > 0 {
                numer *= v;
            } else {
                denom *= v;
            }
        }
        BigRational::new(numer, denom)
    }
}

impl fmt::Display for PsiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.scalar.is_one() {
            parts.push(self.scalar.to_string());
        }
        if self.q_exponent != 0 {
            parts.push(format!("q^{}", self.q_exponent));
        }
        for (kind, k, e) in self.factors() {
            let name = match kind {
                PsiKind::Minus => format!("Psi{k}"),
                PsiKind::Plus => format!("Psi'{k}"),
            };
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

/// Which combinatorial quotient labels the blocks of a classical group at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `p | q^e - 1`: blocks are labelled by e-cores.
    Core,
    /// `p | q^e + 1`: blocks are labelled by e-cocores.
    Cocore,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Core => write!(f, "core"),
            Branch::Cocore => write!(f, "cocore"),
        }
    }
}

/// `e = d_p(q^2)` and whether `p` divides `q^e - 1` or `q^e + 1`.
pub fn block_branch(p: u64, q: &PrimePower) -> Result<(u64, Branch)> {
    if p == 2 || !is_prime(p) {
        return Err(Error::OutOfScopeParameters(format!(
            "block_branch needs an odd prime, got {p}"
        )));
    }
    let residue = q.residue(p);
    if residue == 0 {
        return Err(Error::NotCoprime(residue as i64, p));
    }
    let square = (residue * residue % p) as i64;
    let e = d_p(square, p)?;
    let power = mod_pow(residue, e, p);
    if power == 1 {
        Ok((e, Branch::Core))
    } else if power == p - 1 {
        Ok((e, Branch::Cocore))
    } else {
        Err(Error::InternalError(format!(
            "q^e is neither 1 nor -1 modulo {p}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: u64) -> PrimePower {
        PrimePower::from_value(v).unwrap()
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(1, 7).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(9, 13).unwrap(), 3);
        assert_eq!(multiplicative_order(-3, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(6, 9), Err(Error::NotCoprime(6, 9)));
    }

    #[test]
    fn d_p_examples() {
        assert_eq!(d_p(14, 13).unwrap(), 1);
        assert_eq!(d_p(3, 13).unwrap(), 3);
        assert_eq!(d_p(7, 2).unwrap(), 2);
        assert_eq!(d_p(5, 2).unwrap(), 1);
        assert!(matches!(d_p(26, 13), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn psi_and_phi_examples() {
        assert_eq!(psi_value(1, &q(7), PsiKind::Minus), BigInt::from(6));
        assert_eq!(psi_value(2, &q(3), PsiKind::Minus), BigInt::from(8));
        assert_eq!(psi_value(3, &q(2), PsiKind::Plus), BigInt::from(9));
        assert_eq!(phi_value(1, &q(11)), BigInt::from(10));
        assert_eq!(phi_value(4, &q(3)), BigInt::from(10));
        assert_eq!(phi_value(6, &q(2)), BigInt::from(3));
        assert_eq!(signed_psi_value(3, &q(2), -1), BigInt::from(9));
        assert_eq!(signed_psi_value(2, &q(2), -1), BigInt::from(3));
    }

    #[test]
    fn valuation_examples() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(valuation(&r(8, 1), 2).unwrap(), 3);
        assert_eq!(valuation(&r(10, 9), 3).unwrap(), -2);
        assert_eq!(valuation(&r(6, 1), 5).unwrap(), 0);
        assert_eq!(valuation(&r(0, 1), 5), Err(Error::ZeroValuation));
    }

    #[test]
    fn psi_expr_examples() {
        assert_eq!(PsiExpr::one().evaluate(&q(5)), BigRational::one());
        let ratio = PsiExpr::one()
            .factor(PsiKind::Minus, 2, 1)
            .factor(PsiKind::Minus, 1, -1)
            .factor(PsiKind::Plus, 1, -1);
        for v in [2, 3, 4, 5, 7, 8, 9, 49, 97] {
            assert_eq!(ratio.evaluate(&q(v)), BigRational::one());
        }
        let bc = PsiExpr::one()
            .factor(PsiKind::Minus, 10, 1)
            .factor(PsiKind::Minus, 2, -1)
            .factor(PsiKind::Plus, 3, 1)
            .factor(PsiKind::Plus, 4, 1)
            .factor(PsiKind::Plus, 1, -1)
            .with_scalar(1, 2);
        assert_eq!(bc.evaluate(&q(3)), BigRational::from_integer(2118347.into()));
    }

    #[test]
    fn zero_exponents_are_dropped() {
        let mut e = PsiExpr::one();
        e.mul_factor(PsiKind::Minus, 3, 2);
        e.mul_factor(PsiKind::Minus, 3, -2);
        assert_eq!(e.factors().count(), 0);
        assert_eq!(e, PsiExpr::one());
    }

    #[test]
    fn block_branch_examples() {
        // 2^2 - 1 = 3 and 3^2 - 1 = 8, while 5 divides 2^2 + 1 and 3^2 + 1
        assert_eq!(block_branch(5, &q(2)).unwrap(), (2, Branch::Cocore));
        assert_eq!(block_branch(13, &q(3)).unwrap(), (3, Branch::Core));
        assert_eq!(block_branch(5, &q(3)).unwrap(), (2, Branch::Cocore));
        assert_eq!(block_branch(5, &q(4)).unwrap(), (1, Branch::Cocore));
        assert_eq!(block_branch(3, &q(4)).unwrap(), (1, Branch::Core));
        assert_eq!(block_branch(7, &q(3)).unwrap(), (3, Branch::Cocore));
        assert!(matches!(block_branch(3, &q(9)), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn prime_power_parsing() {
        let nine = q(9);
        assert_eq!((nine.ell(), nine.f()), (3, 2));
        assert!(PrimePower::from_value(12).is_err());
        assert!(PrimePower::new(4, 1).is_err());
        assert_eq!(nine.to_string(), "3^2");
    }
}
