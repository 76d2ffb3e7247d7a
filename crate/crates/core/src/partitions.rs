//! Integer partitions: enumeration, hook lengths, character degrees of the
//! symmetric group, e-cores on the abacus, 2-adic frames and the degrees of
//! unipotent characters of `GL_n(q)` / `GU_n(q)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{signed_psi_value, PrimePower};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::MalformedPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::from_multiset(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Hook lengths of all cells, row by row.
    pub fn hook_multiset(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.parts[j] - i - 1);
            }
        }
        hooks
    }

    /// `sum (i - 1) * lambda_i`, the exponent of `q` in the unipotent degree.
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// First-column hook lengths padded to `len` beads.
    pub fn beta_set(&self, len: usize) -> Vec<usize> {
        assert!(len >= self.len(), "beta-set must have at least one bead per part");
        (0..len)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + len - 1 - i)
            .collect()
    }

    /// Inverse of [`Partition::beta_set`]; beads must be distinct.
    pub fn from_beta_set(beads: &[usize]) -> Self {
        let mut sorted = beads.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let len = sorted.len();
        let parts = sorted
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .collect();
        Partition::from_multiset(parts)
    }

    pub fn e_core(&self, e: usize) -> Partition {
        self.e_core_with_padding(e, self.len())
    }

    /// e-core computed on a beta-set with `len` beads: every bead is pushed up
    /// its runner of the e-abacus until no bead can move.
    pub fn e_core_with_padding(&self, e: usize, len: usize) -> Partition {
        assert!(e >= 2, "e-cores need e >= 2");
        let mut per_runner = vec![0usize; e];
        for b in self.beta_set(len) {
            per_runner[b % e] += 1;
        }
        let beads: Vec<usize> = per_runner
            .iter()
            .enumerate()
            .flat_map(|(runner, &count)| (0..count).map(move |j| runner + j * e))
            .collect();
        Partition::from_beta_set(&beads)
    }

    pub fn degree(&self) -> BigUint {
        degree_sn(self)
    }
}

impl fmt::Display for Partition {
    /// Parts listed in order with repeated 1s collapsed, e.g. `(3,3,1^10)`;
    /// the parser also accepts exponents on larger parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&p| p == part).count();
            if run == 1 || part != 1 {
                groups.extend(std::iter::repeat_n(part.to_string(), run));
            } else {
                groups.push(format!("{part}^{run}"));
            }
            i += run;
        }
        write!(f, "({})", groups.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::MalformedPartition(format!("{s:?} is not parenthesised")))?;
        let bad = || Error::MalformedPartition(format!("cannot parse {s:?}"));
        let mut parts = Vec::new();
        for group in inner.split(',').map(str::trim).filter(|g| !g.is_empty()) {
            let (part, run) = match group.split_once('^') {
                Some((p, r)) => (p.trim(), r.trim().parse::<usize>().map_err(|_| bad())?),
                None => (group, 1),
            };
            let part = part.parse::<usize>().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(part, run));
        }
        Partition::new(parts)
    }
}

/// Iterator over the partitions of `n` in reverse-lexicographic order,
/// starting at `(n)` and ending at `(1^n)`.
pub struct PartitionIter {
    current: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        let out = Partition {
            parts: current.clone(),
        };
        self.current = next_reverse_lex(current);
        Some(out)
    }
}

fn next_reverse_lex(mut parts: Vec<usize>) -> Option<Vec<usize>> {
    let k = parts.iter().rposition(|&p| p > 1)?;
    let ones = parts.len() - k - 1;
    parts.truncate(k + 1);
    parts[k] -= 1;
    let fill = parts[k];
    let mut remaining = ones + 1;
    while remaining > 0 {
        let take = fill.min(remaining);
        parts.push(take);
        remaining -= take;
    }
    Some(parts)
}

pub fn partitions(n: usize) -> PartitionIter {
    let start = if n == 0 { Vec::new() } else { vec![n] };
    PartitionIter { current: Some(start) }
}

pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    partitions(n).collect()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Hook length formula.
pub fn degree_sn(lambda: &Partition) -> BigUint {
    let hooks = lambda
        .hook_multiset()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * h);
    factorial(lambda.size()) / hooks
}

fn small_valuation(mut x: usize, p: usize) -> usize {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Legendre's formula for `v_p(n!)`.
pub fn factorial_valuation(n: usize, p: usize) -> usize {
    let mut v = 0;
    let mut power = p;
    while power <= n {
        v += n / power;
        power = match power.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v
}

/// `v_p` of the hook-length degree without forming the degree.
pub fn degree_valuation_sn(lambda: &Partition, p: u64) -> usize {
    let p = p as usize;
    let hooks: usize = lambda
        .hook_multiset()
        .into_iter()
        .map(|h| small_valuation(h, p))
        .sum();
    factorial_valuation(lambda.size(), p) - hooks
}

/// The binary expansion of `n` split at the first digit exceeding `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoAdicFrame {
    /// Exponents `a_1 < ... < a_t` with `n = sum 2^{a_i}`.
    pub digits: Vec<u32>,
    /// 1-based index of the smallest digit with `r < 2^{a_{t0}}`.
    pub t0: usize,
    /// `2^{a_t} + ... + 2^{a_{t0}}`.
    pub big_t: usize,
    /// `n - T + 1`.
    pub a: usize,
}

/// The secondary frame used when `e + r` replaces `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecondFrame {
    pub s0: usize,
    pub big_s: usize,
    pub b: usize,
}

pub fn binary_digits(n: usize) -> Vec<u32> {
    (0..usize::BITS).filter(|&i| (n >> i) & 1 == 1).collect()
}

/// Index (1-based) of the first digit above `threshold` and the tail sum from it.
fn split_frame(n: usize, threshold: usize) -> Option<(Vec<u32>, usize, usize)> {
    let digits = binary_digits(n);
    let idx = digits.iter().position(|&d| threshold < 1usize << d)?;
    let tail = digits[idx..].iter().map(|&d| 1usize << d).sum();
    Some((digits, idx + 1, tail))
}

pub fn two_adic_frame(n: usize, r: usize) -> Result<TwoAdicFrame> {
    if n == 0 {
        return Err(Error::FrameUndefined("n must be positive".into()));
    }
    let (digits, t0, big_t) = split_frame(n, r).ok_or_else(|| {
        Error::FrameUndefined(format!("r = {r} is not below the top binary digit of n = {n}"))
    })?;
    Ok(TwoAdicFrame {
        digits,
        t0,
        big_t,
        a: n - big_t + 1,
    })
}

/// Frame for the threshold `e + r < 2^{a_{s0}}`.
pub fn second_frame(n: usize, r: usize, e: usize) -> Result<SecondFrame> {
    let (_, s0, big_s) = split_frame(n, e + r).ok_or_else(|| {
        Error::FrameUndefined(format!(
            "e + r = {} is not below the top binary digit of n = {n}",
            e + r
        ))
    })?;
    Ok(SecondFrame {
        s0,
        big_s,
        b: n - big_s + 1,
    })
}

/// Degree of the unipotent character of `GL_n(q)` (`eps = 1`) or `GU_n(q)`
/// (`eps = -1`) labelled by `lambda`, via the q-analogue of the hook formula.
pub fn unipotent_degree_glu(lambda: &Partition, q: &PrimePower, eps: i8) -> Result<BigInt> {
    assert!(eps == 1 || eps == -1, "eps must be +1 or -1");
    let n = lambda.size();
    let mut numer = q.pow(lambda.n_statistic() as u64);
    for i in 1..=n {
        numer *= signed_psi_value(i as u64, q, eps);
    }
    let mut denom = BigInt::one();
    for h in lambda.hook_multiset() {
        denom *= signed_psi_value(h as u64, q, eps);
    }
    let (quot, rem) = numer.div_rem(&denom);
    if !rem.is_zero() {
        return Err(Error::InternalError(format!(
            "q-hook quotient for {lambda} is not integral"
        )));
    }
    Ok(quot.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::valuation_int;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Brute-force partition count via the recursion on the largest part.
    fn count_oracle(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| count_oracle(n - k, k)).sum()
    }

    /// Removes one e-bead move at a time in random order, on random padding.
    fn random_order_core(lambda: &Partition, e: usize, rng: &mut impl Rng) -> Partition {
        let len = lambda.len() + rng.gen_range(0..4);
        let mut beads: BTreeSet<usize> = lambda.beta_set(len).into_iter().collect();
        loop {
            let mut moves: Vec<usize> = beads
                .iter()
                .copied()
                .filter(|&b| b >= e && !beads.contains(&(b - e)))
                .collect();
            if moves.is_empty() {
                break;
            }
            moves.shuffle(rng);
            let b = moves[0];
            beads.remove(&b);
            beads.insert(b - e);
        }
        Partition::from_beta_set(&beads.into_iter().collect::<Vec<_>>())
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(10).len(), 42);
        for n in 0..=20 {
            assert_eq!(partitions(n).count(), count_oracle(n, n), "n = {n}");
        }
        let four: Vec<String> = partitions(4).map(|p| p.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1^2)", "(1^4)"]);
        let all = enumerate_partitions(12);
        assert!(all.windows(2).all(|w| w[0] > w[1]), "strictly reverse-lex");
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::row(6).conjugate(), Partition::column(6));
        assert_eq!(part("(2,1)").conjugate(), part("(2,1)"));
        assert_eq!(part("(4,2,1)").conjugate(), part("(3,2,1,1)"));
    }

    #[test]
    fn hook_examples() {
        let mut row = Partition::row(5).hook_multiset();
        row.sort_unstable();
        assert_eq!(row, vec![1, 2, 3, 4, 5]);
        let mut h = part("(2,1)").hook_multiset();
        h.sort_unstable();
        assert_eq!(h, vec![1, 1, 3]);
        let mut h = part("(2,2)").hook_multiset();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 2, 3]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_sn(&Partition::row(9)), BigUint::one());
        assert_eq!(degree_sn(&Partition::column(9)), BigUint::one());
        assert_eq!(degree_sn(&part("(2,1^10)")), BigUint::from(11u32));
        assert_eq!(degree_valuation_sn(&Partition::row(7), 3), 0);
        assert_eq!(degree_valuation_sn(&part("(2,1)"), 2), 1);
        assert_eq!(degree_valuation_sn(&part("(2,1^10)"), 5), 0);
    }

    #[test]
    fn degree_valuation_matches_full_degree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=30 {
            let all = enumerate_partitions(n);
            for _ in 0..20 {
                let lambda = all.choose(&mut rng).unwrap();
                for p in [2u64, 3, 5, 7, 11, 13] {
                    let full = valuation_int(&BigInt::from(degree_sn(lambda)), p).unwrap();
                    assert_eq!(degree_valuation_sn(lambda, p) as i64, full, "{lambda} at {p}");
                }
            }
        }
    }

    #[test]
    fn core_examples() {
        assert_eq!(part("(3,2)").e_core(7), part("(3,2)"));
        for p in [3usize, 5, 7] {
            for n in 1..30 {
                assert_eq!(Partition::row(n).e_core(p), Partition::row(n % p));
            }
        }
        assert_eq!(part("(2,1^10)").e_core(5), part("(2)"));
        assert_eq!(part("(3,3,1)").e_core(5), part("(2)"));
        assert_eq!(part("(2,1)").e_core(2), part("(2,1)"));
    }

    #[test]
    fn core_is_independent_of_padding_and_order() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for n in 1..=16 {
            for lambda in partitions(n) {
                for e in 2..=6 {
                    let core = lambda.e_core(e);
                    assert_eq!(lambda.e_core_with_padding(e, lambda.len() + 3), core);
                    assert_eq!(random_order_core(&lambda, e, &mut rng), core);
                    assert_eq!((n - core.size()) % e, 0);
                }
            }
        }
    }

    #[test]
    fn beta_set_round_trip() {
        for lambda in partitions(9) {
            for extra in 0..3 {
                let beads = lambda.beta_set(lambda.len() + extra);
                assert_eq!(Partition::from_beta_set(&beads), lambda);
            }
        }
    }

    #[test]
    fn frame_examples() {
        let f = two_adic_frame(12, 2).unwrap();
        assert_eq!((f.digits.clone(), f.t0, f.big_t, f.a), (vec![2, 3], 1, 12, 1));
        let f = two_adic_frame(14, 2).unwrap();
        assert_eq!((f.digits.clone(), f.t0, f.big_t, f.a), (vec![1, 2, 3], 2, 12, 3));
        for k in 1..10 {
            let f = two_adic_frame(1 << k, 1).unwrap();
            assert_eq!((f.big_t, f.a), (1 << k, 1));
        }
        assert!(matches!(two_adic_frame(5, 4), Err(Error::FrameUndefined(_))));
    }

    #[test]
    fn second_frame_examples() {
        assert_eq!(
            second_frame(12, 2, 3).unwrap(),
            SecondFrame {
                s0: 2,
                big_s: 8,
                b: 5
            }
        );
        assert_eq!(
            second_frame(14, 2, 3).unwrap(),
            SecondFrame {
                s0: 3,
                big_s: 8,
                b: 7
            }
        );
        // threshold below the lowest digit
        assert_eq!(
            second_frame(24, 1, 3).unwrap(),
            SecondFrame {
                s0: 1,
                big_s: 24,
                b: 1
            }
        );
        assert!(matches!(second_frame(12, 3, 5), Err(Error::FrameUndefined(_))));
    }

    #[test]
    fn unipotent_degree_examples() {
        let q3 = PrimePower::new(3, 1).unwrap();
        for eps in [1, -1] {
            for n in 1..=8 {
                assert_eq!(
                    unipotent_degree_glu(&Partition::row(n), &q3, eps).unwrap(),
                    BigInt::one()
                );
                let steinberg = unipotent_degree_glu(&Partition::column(n), &q3, eps).unwrap();
                assert_eq!(steinberg, q3.pow((n * (n - 1) / 2) as u64));
            }
        }
        let d = unipotent_degree_glu(&part("(3,3,1)"), &q3, 1).unwrap();
        assert!(d.is_odd());
        assert_eq!(valuation_int(&d, 11).unwrap(), 0);
        // 3^5 * Psi6 * Psi7 / (Psi2 * Psi1) at q = 3
        let expected = BigInt::from(243) * 728 * 2186 / (8 * 2);
        assert_eq!(d, expected);
    }

    #[test]
    fn unipotent_degree_at_q_one_limit_matches_symmetric_degree() {
        // GL_n(q) degrees are q-analogues of S_n degrees; their value mod (q - 1)
        // agrees with the S_n degree when q - 1 exceeds both.
        let q = PrimePower::new(1_000_003, 1).unwrap();
        for lambda in partitions(7) {
            let d = unipotent_degree_glu(&lambda, &q, 1).unwrap();
            let m = BigInt::from(1_000_002);
            assert_eq!(d.mod_floor(&m), BigInt::from(degree_sn(&lambda)));
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(part("(2,1^10)").to_string(), "(2,1^10)");
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!(part("(3,2^2,1)").parts(), &[3, 2, 2, 1]);
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("3,2".parse::<Partition>().is_err());
    }
}
