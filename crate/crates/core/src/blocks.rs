//! Principal block membership for symmetric groups, alternating groups and
//! unipotent characters of the finite classical groups.

use rayon::prelude::*;

use crate::arith::{block_branch, Branch, PrimePower};
use crate::error::{Error, Result};
use crate::partitions::{degree_valuation_sn, partitions, Partition};
use crate::symbols::{trivial_symbol, Family, Symbol};

/// Parameters fixing which blocks are meant: family, rank, prime and, for
/// the groups of Lie type, the field size together with the derived `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockContext {
    pub family: Family,
    pub n: usize,
    pub p: u64,
    pub q: Option<PrimePower>,
    pub e: usize,
    pub branch: Branch,
}

impl BlockContext {
    pub fn symmetric(n: usize, p: u64) -> Self {
        BlockContext {
            family: Family::Symmetric,
            n,
            p,
            q: None,
            e: p as usize,
            branch: Branch::Core,
        }
    }

    /// Context for a group of Lie type in non-defining characteristic `p`.
    pub fn lie_type(family: Family, n: usize, p: u64, q: PrimePower) -> Result<Self> {
        if q.ell() == p {
            return Err(Error::OutOfScopeParameters(format!(
                "p = {p} is the defining characteristic of q = {}",
                q.value()
            )));
        }
        let (e, branch) = match family {
            Family::TypeA(eps) => {
                let signed = eps as i64 * q.residue(p) as i64;
                let e = crate::arith::d_p(signed, p)? as usize;
                (e, Branch::Core)
            }
            Family::TypeBC | Family::TypeD | Family::Type2D if p == 2 => (1, Branch::Core),
            Family::TypeBC | Family::TypeD | Family::Type2D => {
                let (e, branch) = block_branch(p, &q)?;
                (e as usize, branch)
            }
            Family::Symmetric => {
                return Err(Error::OutOfScopeParameters(
                    "symmetric groups have no field size".into(),
                ))
            }
        };
        Ok(BlockContext {
            family,
            n,
            p,
            q: Some(q),
            e,
            branch,
        })
    }

    pub fn m(&self) -> usize {
        self.n / self.e
    }

    pub fn r(&self) -> usize {
        self.n % self.e
    }
}

pub fn principal_block_sn(lambda: &Partition, p: u64) -> bool {
    let p = p as usize;
    lambda.e_core(p) == Partition::row(lambda.size() % p)
}

/// Principal-block characters of `S_n` whose degree is prime to `p`, in
/// enumeration order.
pub fn irr_pprime_principal_sn(n: usize, p: u64) -> Vec<Partition> {
    partitions(n)
        .filter(|lambda| principal_block_sn(lambda, p) && degree_valuation_sn(lambda, p) == 0)
        .collect()
}

pub fn in_irr_pprime_principal_sn(lambda: &Partition, p: u64) -> bool {
    principal_block_sn(lambda, p) && degree_valuation_sn(lambda, p) == 0
}

/// Membership in the principal block of `GL_n(q)` or `GU_n(q)`, where `e`
/// is the order of `eps * q` modulo `p`.
pub fn principal_block_type_a(lambda: &Partition, e: usize) -> bool {
    let n = lambda.size();
    if e < 2 {
        // every partition has empty 1-core
        return true;
    }
    lambda.e_core(e) == Partition::row(n % e)
}

/// Membership in the principal block of a classical group of type B, C, D
/// or twisted D; every unipotent character lies in the principal 2-block.
pub fn principal_block_classical(s: &Symbol, ctx: &BlockContext) -> Result<bool> {
    if s.rank() != ctx.n {
        return Err(Error::RankMismatch {
            found: s.rank(),
            expected: ctx.n,
        });
    }
    if !ctx.family.is_classical_symbol_family() {
        return Err(Error::OutOfScopeParameters(format!(
            "family {} is not labelled by symbols",
            ctx.family
        )));
    }
    if ctx.p == 2 {
        return Ok(true);
    }
    let trivial = trivial_symbol(ctx.family, ctx.n)?;
    Ok(match ctx.branch {
        Branch::Core => s.e_core(ctx.e) == trivial.e_core(ctx.e),
        Branch::Cocore => s.e_cocore(ctx.e) == trivial.e_cocore(ctx.e),
    })
}

/// Membership of the `A_n` character below `chi_lambda` in the principal
/// p-block of `A_n`: the blocks of `S_n` covering it are the principal block
/// and its sign twist, so either `lambda` or its conjugate must lie in
/// `B_p(S_n)`.
pub fn principal_block_an(lambda: &Partition, p: u64) -> bool {
    principal_block_sn(lambda, p) || principal_block_sn(&lambda.conjugate(), p)
}

/// One irreducible character of `A_n`, the common restriction of
/// `chi_lambda` and `chi_lambda'` for a non-self-conjugate `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnPair {
    /// The larger of the two labels in reverse-lexicographic order.
    pub label: Partition,
    pub conjugate: Partition,
    /// Some label of the pair lies in both principal blocks of `S_n`.
    pub sn_level: bool,
}

/// `Irr_{p'}(B_p(A_n)) n Irr_{q'}(B_q(A_n))` as seen from `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnIntersection {
    pub pairs: Vec<AnPair>,
    /// Self-conjugate labels in both `S_n`-level sets; their restrictions
    /// split and are not classified.
    pub indeterminate: Vec<Partition>,
}

impl AnIntersection {
    /// Number of pairs where neither label lies in both principal blocks of `S_n`.
    pub fn split_count(&self) -> usize {
        self.pairs.iter().filter(|pair| !pair.sn_level).count()
    }
}

pub fn an_intersection(n: usize, p: u64, q: u64) -> AnIntersection {
    let labels: Vec<Partition> = partitions(n).collect();
    let verdicts: Vec<Option<bool>> = labels
        .par_iter()
        .map(|lambda| {
            let coprime = degree_valuation_sn(lambda, p) == 0 && degree_valuation_sn(lambda, q) == 0;
            if !coprime {
                return None;
            }
            let conj = lambda.conjugate();
            if conj == *lambda {
                let both = principal_block_sn(lambda, p) && principal_block_sn(lambda, q);
                return both.then_some(true);
            }
            if *lambda < conj || !(principal_block_an(lambda, p) && principal_block_an(lambda, q)) {
                return None;
            }
            let sn_level = [lambda, &conj]
                .iter()
                .any(|l| principal_block_sn(l, p) && principal_block_sn(l, q));
            Some(sn_level)
        })
        .collect();
    let mut out = AnIntersection::default();
    for (lambda, verdict) in labels.into_iter().zip(verdicts) {
        let Some(sn_level) = verdict else { continue };
        let conjugate = lambda.conjugate();
        if conjugate == lambda {
            out.indeterminate.push(lambda);
        } else {
            out.pairs.push(AnPair {
                label: lambda,
                conjugate,
                sn_level,
            });
        }
    }
    out
}
