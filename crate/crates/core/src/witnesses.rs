//! Explicit witness characters lying in both principal blocks with degree
//! prime to `{2, p}`, organised by the 2-adic case split `I / IIa / IIb / IIc`.
//!
//! Write `n = me + r` with `0 <= r < e`, and let `T` be the sum of the binary
//! digits of `n` that exceed `r`, `a = n - T + 1`:
//!
//! * Case I: `r = a - 1`
//! * Case IIa: `r >= a`
//! * Case IIb: `r < a - 1` and (`e > a - 1` or `p` does not divide `m - 1`)
//! * Case IIc: `r < a - 1`, `e <= a - 1` and `p | m - 1`
//!
//! Case IIc reuses the I/IIa/IIb templates with `(me, r, a, T)` replaced by
//! `(me - e, r + e, b, S)` from the secondary frame. Each template is
//! described by a [`Shape`] carrying the effective parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{signed_kind, valuation, valuation_int, Branch, PrimePower, PsiExpr, PsiKind};
use crate::blocks::{principal_block_classical, principal_block_sn, principal_block_type_a, BlockContext};
use crate::error::{Error, Result};
use crate::partitions::{
    degree_sn, second_frame, two_adic_frame, unipotent_degree_glu, Partition, SecondFrame, TwoAdicFrame,
};
use crate::symbols::{family_defect_ok, min_rank, trivial_symbol, Family, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    I,
    IIa,
    IIb,
    IIc,
    #[serde(rename = "STEINBERG_SUFFICES")]
    SteinbergSuffices,
    #[serde(rename = "UNSUPPORTED")]
    Unsupported,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "I",
            CaseLabel::IIa => "IIa",
            CaseLabel::IIb => "IIb",
            CaseLabel::IIc => "IIc",
            CaseLabel::SteinbergSuffices => "STEINBERG_SUFFICES",
            CaseLabel::Unsupported => "UNSUPPORTED",
        })
    }
}

/// Which of the three basic templates a case instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    I,
    IIa,
    IIb,
}

/// Effective parameters of a template: `(me, r, a, T)` directly, or
/// `(me - e, r + e, b, S)` in Case IIc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    pub kind: ShapeKind,
    pub n: usize,
    pub me: usize,
    pub r: usize,
    pub a: usize,
    pub big_t: usize,
}

impl Shape {
    fn from_frame(n: usize, me: usize, r: usize, a: usize, big_t: usize) -> Shape {
        let kind = if r + 1 == a {
            ShapeKind::I
        } else if r >= a {
            ShapeKind::IIa
        } else {
            ShapeKind::IIb
        };
        Shape {
            kind,
            n,
            me,
            r,
            a,
            big_t,
        }
    }

    fn ones(&self) -> Result<usize> {
        self.me.checked_sub(self.a).ok_or_else(|| {
            Error::TemplateDegenerate(format!("me = {} is smaller than a = {}", self.me, self.a))
        })
    }

    /// `|T - me|`.
    pub fn gap(&self) -> usize {
        self.big_t.abs_diff(self.me)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: CaseLabel,
    pub n: usize,
    pub e: usize,
    pub m: usize,
    pub r: usize,
    pub frame: Option<TwoAdicFrame>,
    pub second: Option<SecondFrame>,
    pub shape: Option<Shape>,
    /// Alternative used by the residual branches (e.g. `S_n` with `r = 0`).
    pub note: Option<String>,
}

impl Classification {
    fn bare(label: CaseLabel, n: usize, e: usize) -> Self {
        Classification {
            label,
            n,
            e,
            m: n / e,
            r: n % e,
            frame: None,
            second: None,
            shape: None,
            note: None,
        }
    }

    /// `me / e` of the effective shape; `m - 1` in Case IIc.
    pub fn effective_m(&self) -> usize {
        self.shape.map(|s| s.me / self.e).unwrap_or(self.m)
    }
}

/// I/IIa/IIb/IIc for `n = me + r` with `m >= 1` and `r < 2^{a_t}`.
fn general_case(n: usize, e: usize, p: u64) -> Result<Classification> {
    let (m, r) = (n / e, n % e);
    let frame = two_adic_frame(n, r)?;
    let a = frame.a;
    let me = m * e;
    let mut out = Classification::bare(CaseLabel::I, n, e);
    if r + 1 == a {
        out.shape = Some(Shape {
            kind: ShapeKind::I,
            n,
            me,
            r,
            a,
            big_t: frame.big_t,
        });
    } else if r >= a {
        out.label = CaseLabel::IIa;
        out.shape = Some(Shape {
            kind: ShapeKind::IIa,
            n,
            me,
            r,
            a,
            big_t: frame.big_t,
        });
    } else if e > a - 1 || (m - 1) % p as usize != 0 {
        out.label = CaseLabel::IIb;
        out.shape = Some(Shape {
            kind: ShapeKind::IIb,
            n,
            me,
            r,
            a,
            big_t: frame.big_t,
        });
    } else {
        out.label = CaseLabel::IIc;
        let second = second_frame(n, r, e)?;
        out.shape = Some(Shape::from_frame(n, me - e, r + e, second.b, second.big_s));
        out.second = Some(second);
    }
    out.frame = Some(frame);
    Ok(out)
}

fn require_m(n: usize, e: usize) -> Result<()> {
    if n < e {
        return Err(Error::OutOfScopeParameters(format!(
            "n = {n} < e = {e}: p does not divide the group order"
        )));
    }
    Ok(())
}

/// Symmetric groups with `n = mp`: the IIc templates with `r = 0`, falling
/// back to `(1^S, n - S)` where those are not coprime to `p`.
fn symmetric_r0_case(n: usize, p: usize) -> Result<Classification> {
    let m = n / p;
    let mut out = Classification::bare(CaseLabel::IIc, n, p);
    if m == 1 {
        out.label = CaseLabel::SteinbergSuffices;
        out.note = Some("n = p: the sign character (1^n) has empty p-core and degree 1".into());
        return Ok(out);
    }
    let second = second_frame(n, 0, p)?;
    let (big_s, b) = (second.big_s, second.b);
    let coprime_trouble =
        (p >= b && m.is_multiple_of(p)) || (p + 1 < b && (m.is_multiple_of(p) || (m - 2).is_multiple_of(p)));
    let shape = if big_s == n || !coprime_trouble {
        Shape::from_frame(n, n - p, p, b, big_s)
    } else {
        out.note = Some("fallback (1^S, n - S)".into());
        Shape {
            kind: ShapeKind::I,
            n,
            me: big_s,
            r: n - big_s,
            a: n - big_s + 1,
            big_t: big_s,
        }
    };
    out.frame = Some(two_adic_frame(n, 0)?);
    out.second = Some(second);
    out.shape = Some(shape);
    Ok(out)
}

/// Assigns the case for `family` at rank `n`, with `e` the relevant order
/// (`p` itself for `S_n`) and `branch` the core/cocore branch at `p`.
pub fn classify_case(family: Family, n: usize, e: usize, p: u64, branch: Branch) -> Result<Classification> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::OutOfScopeParameters(format!(
            "p = {p} must be an odd prime"
        )));
    }
    if e == 0 {
        return Err(Error::OutOfScopeParameters("e must be positive".into()));
    }
    require_m(n, e)?;
    let (m, r) = (n / e, n % e);
    match family {
        Family::Symmetric => {
            if e != p as usize {
                return Err(Error::OutOfScopeParameters("for S_n the order e is p".into()));
            }
            if r == 0 {
                symmetric_r0_case(n, e)
            } else if n % 2 == 1 {
                Err(Error::ReducedFormRequired(format!(
                    "n = {n} is odd with r = {r}; reduce to n - 1 first"
                )))
            } else {
                general_case(n, e, p)
            }
        }
        Family::TypeA(_) => {
            if r < 2 {
                return Err(Error::OutOfScopeParameters(format!(
                    "r = {r} < 2: the Steinberg character already lies in both principal blocks"
                )));
            }
            general_case(n, e, p)
        }
        Family::TypeBC => {
            check_rank(family, n)?;
            general_case(n, e, p)
        }
        Family::TypeD => {
            check_rank(family, n)?;
            let cocore_odd = branch == Branch::Cocore && m % 2 == 1;
            if r == 1 || (r == 0 && !cocore_odd) {
                Ok(Classification::bare(CaseLabel::SteinbergSuffices, n, e))
            } else if r == 0 {
                d_residual_case(n, e, p)
            } else {
                general_case(n, e, p)
            }
        }
        Family::Type2D => {
            check_rank(family, n)?;
            let cocore_odd = branch == Branch::Cocore && m % 2 == 1;
            if r == 1 || (r == 0 && cocore_odd) {
                Ok(Classification::bare(CaseLabel::SteinbergSuffices, n, e))
            } else if r == 0 {
                let mut out = Classification::bare(CaseLabel::Unsupported, n, e);
                out.note = Some("r = 0 with e-cores or m even: no explicit symbol given".into());
                Ok(out)
            } else {
                general_case(n, e, p)
            }
        }
    }
}

fn check_rank(family: Family, n: usize) -> Result<()> {
    let min = match family {
        Family::TypeD => 5,
        other => min_rank(other),
    };
    if n < min {
        return Err(Error::RankTooSmall { rank: n, min });
    }
    Ok(())
}

/// Type D with `r = 0`, cocores and `m` odd: only the Case I analogue has
/// explicit symbols, `(n-e | e)` or `(1, n-e | 0, e+1)`.
fn d_residual_case(n: usize, e: usize, p: u64) -> Result<Classification> {
    let mut out = Classification::bare(CaseLabel::IIc, n, e);
    let second = match second_frame(n, 0, e) {
        Ok(s) => s,
        Err(_) => {
            out.label = CaseLabel::Unsupported;
            out.note = Some("secondary frame undefined".into());
            return Ok(out);
        }
    };
    out.second = Some(second);
    if e != n - second.big_s {
        out.label = CaseLabel::Unsupported;
        out.note = Some("r = 0, cocores, m odd with e != n - S: no explicit symbol given".into());
        return Ok(out);
    }
    let m = n / e;
    let note = if (m as i64 - 2).rem_euclid(p as i64) != 0 {
        "(n-e | e)"
    } else {
        "(1 n-e | 0 e+1)"
    };
    out.note = Some(note.into());
    Ok(out)
}

fn push_ones(parts: &mut Vec<usize>, count: usize) {
    parts.extend(std::iter::repeat_n(1, count));
}

/// Partition template for a shape.
pub fn shape_partition(shape: &Shape) -> Result<Partition> {
    let mut parts = Vec::new();
    match shape.kind {
        ShapeKind::I => {
            push_ones(&mut parts, shape.me);
            parts.push(shape.r);
        }
        ShapeKind::IIa => {
            push_ones(&mut parts, shape.ones()?);
            parts.push(shape.a);
            parts.push(shape.r);
        }
        ShapeKind::IIb => {
            push_ones(&mut parts, shape.ones()?);
            parts.push(shape.r + 1);
            parts.push(shape.a - 1);
        }
    }
    let lambda = Partition::from_multiset(parts);
    if lambda.size() != shape.n {
        return Err(Error::TemplateDegenerate(format!(
            "template {lambda} has size {} instead of {}",
            lambda.size(),
            shape.n
        )));
    }
    Ok(lambda)
}

pub fn witness_partition_sn(n: usize, p: u64) -> Result<Partition> {
    let class = classify_case(Family::Symmetric, n, p as usize, p, Branch::Core)?;
    match class.shape {
        Some(shape) => shape_partition(&shape),
        None => Ok(Partition::column(n)),
    }
}

pub fn witness_partition_type_a(n: usize, e: usize, p: u64) -> Result<Partition> {
    let class = classify_case(Family::TypeA(1), n, e, p, Branch::Core)?;
    shape_partition(&class.shape.expect("type A cases always carry a shape"))
}

/// Outcome of instantiating a symbol table entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolWitness {
    Symbol(Symbol),
    SteinbergSuffices(Symbol),
    Unsupported,
}

/// Steinberg symbol: `(0..=n | 1..=n)` for B/C, `(0..n | 1..=n)` for D,
/// `(0..=n | 1..n)` for twisted D.
pub fn steinberg_symbol(family: Family, n: usize) -> Result<Symbol> {
    let (top, bottom): (Vec<usize>, Vec<usize>) = match family {
        Family::TypeBC => ((0..=n).collect(), (1..=n).collect()),
        Family::TypeD => ((0..n).collect(), (1..=n).collect()),
        Family::Type2D => ((0..=n).collect(), (1..n).collect()),
        other => {
            return Err(Error::OutOfScopeParameters(format!(
                "{other} is not labelled by symbols"
            )))
        }
    };
    Symbol::from_rows(top, bottom)
}

fn range(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    lo..=hi
}

fn set_symbol(top: Vec<usize>, bottom: Vec<usize>) -> Result<Symbol> {
    Symbol::from_sets(&top, &bottom)
        .ok_or_else(|| Error::TemplateDegenerate(format!("repeated entry in ({top:?} | {bottom:?})")))
}

/// Table entry for a shape; `odd_cocore` selects the column for cocores with
/// odd effective `m`.
pub fn shape_symbol(family: Family, shape: &Shape, odd_cocore: bool) -> Result<Symbol> {
    let Shape {
        kind,
        n,
        me,
        r,
        big_t,
        ..
    } = *shape;
    match (family, kind) {
        (Family::TypeBC, ShapeKind::I) => {
            let top_len = me
                .checked_sub(r)
                .ok_or_else(|| Error::TemplateDegenerate(format!("me = {me} < r = {r}")))?;
            let mut top: Vec<usize> = (0..top_len).collect();
            top.push(me);
            let mut bottom: Vec<usize> = (1..top_len).collect();
            bottom.push(me);
            set_symbol(top, bottom)
        }
        (Family::TypeBC, _) => {
            let c = shape.ones()?;
            if odd_cocore {
                let top = range(0, c).chain([me]).collect();
                let bottom = range(1, c).chain([big_t]).collect();
                set_symbol(top, bottom)
            } else {
                let top = range(1, c).chain([me, big_t]).collect();
                let bottom = range(0, c).collect();
                set_symbol(top, bottom)
            }
        }
        (Family::TypeD, ShapeKind::I) => set_symbol(vec![me], vec![r]),
        (Family::TypeD, _) => {
            let c = shape.ones()?;
            if odd_cocore {
                let top = range(0, c).chain([me]).collect();
                let bottom = range(1, c + 1).chain([big_t]).collect();
                set_symbol(top, bottom)
            } else {
                let top = range(1, c).chain([me, big_t]).collect();
                let bottom = range(0, c + 1).collect();
                set_symbol(top, bottom)
            }
        }
        (Family::Type2D, ShapeKind::I) => set_symbol(vec![r, me], vec![]),
        (Family::Type2D, _) if big_t == n => {
            let top = range(1, me).collect();
            let bottom = range(0, me).chain([big_t]).collect();
            set_symbol(top, bottom)
        }
        (Family::Type2D, _) => {
            let c = shape.ones()?;
            if odd_cocore {
                let top = range(1, c).chain([big_t]).collect();
                let bottom = range(0, c + 1).chain([me]).collect();
                set_symbol(top, bottom)
            } else {
                let top = range(1, c + 1).chain([me, big_t]).collect();
                let bottom = range(0, c).collect();
                set_symbol(top, bottom)
            }
        }
        (other, _) => Err(Error::OutOfScopeParameters(format!(
            "{other} is not labelled by symbols"
        ))),
    }
}

fn odd_cocore(class: &Classification, branch: Branch) -> bool {
    branch == Branch::Cocore && class.effective_m() % 2 == 1
}

/// The symbol for a classified case of B/C, D or twisted D.
pub fn witness_symbol_for(family: Family, class: &Classification, branch: Branch) -> Result<SymbolWitness> {
    let n = class.n;
    match class.label {
        CaseLabel::SteinbergSuffices => Ok(SymbolWitness::SteinbergSuffices(steinberg_symbol(family, n)?)),
        CaseLabel::Unsupported => Ok(SymbolWitness::Unsupported),
        _ if family == Family::TypeD && class.r == 0 => {
            let e = class.e;
            let s = match class.note.as_deref() {
                Some("(n-e | e)") => set_symbol(vec![n - e], vec![e])?,
                _ => set_symbol(vec![1, n - e], vec![0, e + 1])?,
            };
            Ok(SymbolWitness::Symbol(s))
        }
        _ => {
            let shape = class.shape.expect("classified cases carry a shape");
            Ok(SymbolWitness::Symbol(shape_symbol(
                family,
                &shape,
                odd_cocore(class, branch),
            )?))
        }
    }
}

pub fn witness_symbol(family: Family, n: usize, p: u64, q: &PrimePower) -> Result<SymbolWitness> {
    let ctx = BlockContext::lie_type(family, n, p, q.clone())?;
    let class = classify_case(family, n, ctx.e, p, ctx.branch)?;
    witness_symbol_for(family, &class, ctx.branch)
}

/// The expression whose `{2, p}`-part is that of the witness degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiPart {
    /// `S_n`: an exact ratio of integers.
    Ratio(BigRational),
    Psi(PsiExpr),
}

impl PiPart {
    pub fn value(&self, q: Option<&PrimePower>) -> Result<BigRational> {
        match self {
            PiPart::Ratio(v) => Ok(v.clone()),
            PiPart::Psi(expr) => {
                let q = q.ok_or_else(|| {
                    Error::OutOfScopeParameters("a field size is needed to evaluate".into())
                })?;
                Ok(expr.evaluate(q))
            }
        }
    }
}

fn add_range(map: &mut BTreeMap<i64, i64>, lo: i64, hi: i64, sign: i64) {
    for k in lo..=hi {
        *map.entry(k).or_insert(0) += sign;
    }
}

/// Index product `prod X_k^{exponent}` of the type A degree templates.
fn type_a_indices(shape: &Shape) -> BTreeMap<i64, i64> {
    let (n, me, r, a, t) = (
        shape.n as i64,
        shape.me as i64,
        shape.r as i64,
        shape.a as i64,
        shape.big_t as i64,
    );
    let mut map = BTreeMap::new();
    match shape.kind {
        ShapeKind::I => {
            add_range(&mut map, me + 1, n - 1, 1);
            add_range(&mut map, 1, r - 1, -1);
        }
        ShapeKind::IIa | ShapeKind::IIb => {
            let lead = if shape.kind == ShapeKind::IIa {
                r - a + 1
            } else {
                me - t
            };
            add_range(&mut map, lead, lead, 1);
            add_range(&mut map, n - a + 2, n, 1);
            add_range(&mut map, n - r - a + 1, n - a, 1);
            add_range(&mut map, me, me, -1);
            add_range(&mut map, 1, r, -1);
            add_range(&mut map, 1, a - 1, -1);
        }
    }
    map.retain(|_, e| *e != 0);
    map
}

fn bc_indices(shape: &Shape) -> BTreeMap<i64, i64> {
    let (n, me, r) = (shape.n as i64, shape.me as i64, shape.r as i64);
    match shape.kind {
        ShapeKind::I => {
            let mut map = BTreeMap::new();
            add_range(&mut map, me + 1, n, 1);
            add_range(&mut map, me - r, me - 1, 1);
            add_range(&mut map, 1, r, -2);
            map.retain(|_, e| *e != 0);
            map
        }
        _ => {
            let mut map = type_a_indices(shape);
            let lead = if shape.kind == ShapeKind::IIa {
                r - shape.a as i64 + 1
            } else {
                me - shape.big_t as i64
            };
            // |T - me| is the same index in both shapes
            debug_assert_eq!(lead, shape.gap() as i64);
            map.retain(|_, e| *e != 0);
            map
        }
    }
}

fn check_indices(map: &BTreeMap<i64, i64>) -> Result<()> {
    match map.keys().next() {
        Some(&k) if k < 1 => Err(Error::TemplateDegenerate(format!(
            "degree template uses the index {k}"
        ))),
        _ => Ok(()),
    }
}

pub fn pi_part_expr(family: Family, shape: &Shape, odd_cocore: bool) -> Result<PiPart> {
    match family {
        Family::Symmetric => {
            let map = type_a_indices(shape);
            check_indices(&map)?;
            let mut numer = BigInt::one();
            let mut denom = BigInt::one();
            for (k, e) in map {
                let v = BigInt::from(k).pow(e.unsigned_abs() as u32);
                if e > 0 {
                    numer *= v;
                } else {
                    denom *= v;
                }
            }
            Ok(PiPart::Ratio(BigRational::new(numer, denom)))
        }
        Family::TypeA(eps) => {
            let map = type_a_indices(shape);
            check_indices(&map)?;
            let mut expr = PsiExpr::one();
            for (k, e) in map {
                expr.mul_factor(signed_kind(k as u64, eps), k as u64, e);
            }
            Ok(PiPart::Psi(expr))
        }
        Family::TypeBC => {
            let map = bc_indices(shape);
            check_indices(&map)?;
            let mut expr = PsiExpr::one();
            for (k, e) in map {
                expr.mul_factor(PsiKind::Minus, 2 * k as u64, e);
            }
            if shape.kind != ShapeKind::I {
                let gap = shape.gap() as u64;
                let (me, t) = (shape.me as u64, shape.big_t as u64);
                expr = expr.with_scalar(1, 2);
                expr.mul_factor(PsiKind::Plus, t, 1);
                let kind = if odd_cocore { PsiKind::Minus } else { PsiKind::Plus };
                expr.mul_factor(kind, me, 1);
                expr.mul_factor(kind, gap, -1);
            }
            Ok(PiPart::Psi(expr))
        }
        other => Err(Error::ExpressionOutOfScope(format!(
            "no degree expression is displayed for family {other}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessObject {
    Partition(Partition),
    Symbol(Symbol),
}

impl fmt::Display for WitnessObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessObject::Partition(p) => p.fmt(f),
            WitnessObject::Symbol(s) => s.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

/// Per-check verdicts; `None` means the check does not apply.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nontrivial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_principal_p: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_principal_2_or_q: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_valuation_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_valuation_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_part_matches: Option<bool>,
}

impl Checks {
    fn values(&self) -> impl Iterator<Item = bool> + '_ {
        [
            self.nontrivial,
            self.in_principal_p,
            self.in_principal_2_or_q,
            self.p_valuation_zero,
            self.second_valuation_zero,
            self.rank_ok,
            self.defect_ok,
            self.oracle_agrees,
            self.pi_part_matches,
        ]
        .into_iter()
        .flatten()
    }

    pub fn all_pass(&self) -> bool {
        self.values().all(|v| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub family: Family,
    pub n: usize,
    pub p: u64,
    /// The other prime of `{2, p}`.
    pub q: u64,
    pub ell_f: Option<PrimePower>,
    pub e: usize,
    pub m: usize,
    pub r: usize,
    pub case: CaseLabel,
    pub object: Option<WitnessObject>,
    /// Full degree for `S_n` and type A, the evaluated expression for B/C.
    pub degree: Option<BigRational>,
    pub checks: Checks,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Serialize)]
struct ReportLine<'a> {
    family: &'a str,
    n: usize,
    p: u64,
    q: u64,
    ell_f: Option<String>,
    case: CaseLabel,
    object: Option<String>,
    degree: Option<String>,
    checks: &'a Checks,
    status: Status,
}

impl WitnessReport {
    pub fn refresh_status(&mut self) {
        if self.status != Status::Unsupported {
            self.status = if self.checks.all_pass() {
                Status::Pass
            } else {
                Status::Fail
            };
        }
    }

    /// One JSON object, fields in the fixed report order.
    pub fn to_json(&self) -> String {
        let line = ReportLine {
            family: self.family.label(),
            n: self.n,
            p: self.p,
            q: self.q,
            ell_f: self.ell_f.as_ref().map(|q| q.to_string()),
            case: self.case,
            object: self.object.as_ref().map(|o| o.to_string()),
            degree: self.degree.as_ref().map(|d| d.to_string()),
            checks: &self.checks,
            status: self.status,
        };
        serde_json::to_string(&line).expect("report serialises")
    }

    fn new(family: Family, n: usize, p: u64, ell_f: Option<PrimePower>, class: &Classification) -> Self {
        WitnessReport {
            family,
            n,
            p,
            q: 2,
            ell_f,
            e: class.e,
            m: class.m,
            r: class.r,
            case: class.label,
            object: None,
            degree: None,
            checks: Checks::default(),
            status: Status::Fail,
            note: class.note.clone(),
        }
    }

    fn degenerate(mut self, err: Error) -> Self {
        self.note = Some(err.to_string());
        self.status = Status::Fail;
        self
    }
}

fn valuation_is_zero(x: &BigRational, p: u64) -> bool {
    !x.is_zero() && valuation(x, p).map(|v| v == 0).unwrap_or(false)
}

fn verify_sn(n: usize, p: u64) -> Result<WitnessReport> {
    let class = classify_case(Family::Symmetric, n, p as usize, p, Branch::Core)?;
    let mut report = WitnessReport::new(Family::Symmetric, n, p, None, &class);
    let lambda = match class.shape {
        Some(shape) => match shape_partition(&shape) {
            Ok(l) => l,
            Err(err) => return Ok(report.degenerate(err)),
        },
        None => Partition::column(n),
    };
    let degree = BigRational::from_integer(BigInt::from(degree_sn(&lambda)));
    report.checks = Checks {
        nontrivial: Some(lambda != Partition::row(n)),
        in_principal_p: Some(principal_block_sn(&lambda, p)),
        in_principal_2_or_q: Some(principal_block_sn(&lambda, 2)),
        p_valuation_zero: Some(valuation_is_zero(&degree, p)),
        second_valuation_zero: Some(valuation_is_zero(&degree, 2)),
        rank_ok: Some(lambda.size() == n),
        ..Checks::default()
    };
    report.degree = Some(degree);
    report.object = Some(WitnessObject::Partition(lambda));
    report.refresh_status();
    Ok(report)
}

/// `eps`-twisted degree with the defining-characteristic part removed when
/// `ell = 2`, so the 2-adic check concerns the cross-characteristic part.
fn type_a_second_valuation(degree: &BigInt, lambda: &Partition, q: &PrimePower) -> bool {
    let mut value = degree.clone();
    if q.ell() == 2 {
        value /= q.pow(lambda.n_statistic() as u64);
    }
    valuation_int(&value, 2).map(|v| v == 0).unwrap_or(false)
}

fn verify_type_a(eps: i8, n: usize, p: u64, q: &PrimePower) -> Result<WitnessReport> {
    let family = Family::TypeA(eps);
    let ctx = BlockContext::lie_type(family, n, p, q.clone())?;
    require_m(n, ctx.e)?;
    let class = if ctx.r() < 2 {
        let mut c = Classification::bare(CaseLabel::SteinbergSuffices, n, ctx.e);
        c.note = Some("r < 2: the Steinberg character (1^n) works".into());
        c
    } else {
        classify_case(family, n, ctx.e, p, Branch::Core)?
    };
    let mut report = WitnessReport::new(family, n, p, Some(q.clone()), &class);
    let lambda = match class.shape {
        Some(shape) => match shape_partition(&shape) {
            Ok(l) => l,
            Err(err) => return Ok(report.degenerate(err)),
        },
        None => Partition::column(n),
    };
    let degree = unipotent_degree_glu(&lambda, q, eps)?;
    report.checks = Checks {
        nontrivial: Some(lambda != Partition::row(n)),
        in_principal_p: Some(principal_block_type_a(&lambda, ctx.e)),
        // every unipotent character lies in the principal 2-block
        in_principal_2_or_q: Some(true),
        p_valuation_zero: Some(valuation_int(&degree, p)? == 0),
        second_valuation_zero: Some(type_a_second_valuation(&degree, &lambda, q)),
        rank_ok: Some(lambda.size() == n),
        ..Checks::default()
    };
    report.degree = Some(BigRational::from_integer(degree));
    report.object = Some(WitnessObject::Partition(lambda));
    report.refresh_status();
    Ok(report)
}

fn verify_symbol_family(family: Family, n: usize, p: u64, q: &PrimePower) -> Result<WitnessReport> {
    let ctx = BlockContext::lie_type(family, n, p, q.clone())?;
    let class = classify_case(family, n, ctx.e, p, ctx.branch)?;
    let mut report = WitnessReport::new(family, n, p, Some(q.clone()), &class);
    let symbol = match witness_symbol_for(family, &class, ctx.branch) {
        Ok(SymbolWitness::Symbol(s)) | Ok(SymbolWitness::SteinbergSuffices(s)) => s,
        Ok(SymbolWitness::Unsupported) => {
            report.status = Status::Unsupported;
            return Ok(report);
        }
        Err(err @ Error::TemplateDegenerate(_)) => return Ok(report.degenerate(err)),
        Err(err) => return Err(err),
    };
    let trivial = trivial_symbol(family, n)?;
    let rank_ok = symbol.rank() == n;
    report.checks = Checks {
        nontrivial: Some(symbol != trivial),
        in_principal_p: Some(rank_ok && principal_block_classical(&symbol, &ctx)?),
        in_principal_2_or_q: Some(true),
        rank_ok: Some(rank_ok),
        defect_ok: Some(family_defect_ok(&symbol, family)),
        ..Checks::default()
    };
    if family == Family::TypeBC {
        let value = match (&class.label, class.shape) {
            // the Steinberg degree is a power of q
            (CaseLabel::SteinbergSuffices, _) => Some(BigRational::one()),
            (_, Some(shape)) => match pi_part_expr(family, &shape, odd_cocore(&class, ctx.branch)) {
                Ok(expr) => Some(expr.value(Some(q))?),
                Err(err @ Error::TemplateDegenerate(_)) => return Ok(report.degenerate(err)),
                Err(err) => return Err(err),
            },
            _ => None,
        };
        if let Some(value) = value {
            report.checks.p_valuation_zero = Some(valuation_is_zero(&value, p));
            report.checks.second_valuation_zero = Some(valuation_is_zero(&value, 2));
            report.degree = Some(value);
        }
    } else if report.note.is_none() {
        report.note = Some("structure and block membership only".into());
    }
    report.object = Some(WitnessObject::Symbol(symbol));
    report.refresh_status();
    Ok(report)
}

/// Builds the witness for `(family, n, p)` and checks every claim made about
/// it: nontriviality, membership in both principal blocks, the valuations of
/// the degree (or its displayed expression), and rank/defect for symbols.
pub fn verify_witness(family: Family, n: usize, p: u64, q: Option<&PrimePower>) -> Result<WitnessReport> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::OutOfScopeParameters(format!(
            "p = {p} must be an odd prime"
        )));
    }
    match family {
        Family::Symmetric => verify_sn(n, p),
        _ => {
            let q =
                q.ok_or_else(|| Error::OutOfScopeParameters(format!("family {family} needs a field size")))?;
            match family {
                Family::TypeA(eps) => verify_type_a(eps, n, p, q),
                _ => verify_symbol_family(family, n, p, q),
            }
        }
    }
}
