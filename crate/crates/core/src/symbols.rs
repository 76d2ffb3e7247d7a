//! Symbols labelling unipotent characters of the classical groups of types
//! B, C, D and twisted D.
//!
//! A symbol is a pair of finite sets of non-negative integers. Two symbols
//! are identified when one is obtained from the other by swapping the rows or
//! by the shift that adds `0` to both rows and increments every other entry.
//! [`Symbol`] always stores the canonical representative: no `0` in both rows,
//! the longer row on top, and for rows of equal length the lexicographically
//! larger one on top.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Branch;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Symmetric,
    /// `eps = 1` for `GL_n`, `-1` for `GU_n`.
    TypeA(i8),
    TypeBC,
    TypeD,
    Type2D,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Symmetric => "sn",
            Family::TypeA(1) => "gl",
            Family::TypeA(_) => "gu",
            Family::TypeBC => "bc",
            Family::TypeD => "d",
            Family::Type2D => "2d",
        }
    }

    pub fn is_classical_symbol_family(&self) -> bool {
        matches!(self, Family::TypeBC | Family::TypeD | Family::Type2D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sn" => Ok(Family::Symmetric),
            "gl" => Ok(Family::TypeA(1)),
            "gu" => Ok(Family::TypeA(-1)),
            "bc" => Ok(Family::TypeBC),
            "d" => Ok(Family::TypeD),
            "2d" => Ok(Family::Type2D),
            other => Err(Error::OutOfScopeParameters(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

fn check_row(row: &[usize]) -> Result<()> {
    if row.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedSymbol(format!(
            "row {row:?} is not strictly increasing"
        )));
    }
    Ok(())
}

impl Symbol {
    /// Validated constructor; the result is canonical.
    pub fn from_rows(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        check_row(&top)?;
        check_row(&bottom)?;
        Ok(Symbol::canonical(top, bottom))
    }

    /// Builds a symbol from rows given as sets in any order.
    /// Returns `None` when a row repeats an entry.
    pub fn from_sets(top: &[usize], bottom: &[usize]) -> Option<Self> {
        let t: BTreeSet<usize> = top.iter().copied().collect();
        let b: BTreeSet<usize> = bottom.iter().copied().collect();
        if t.len() != top.len() || b.len() != bottom.len() {
            return None;
        }
        Some(Symbol::canonical(
            t.into_iter().collect(),
            b.into_iter().collect(),
        ))
    }

    fn canonical(mut top: Vec<usize>, mut bottom: Vec<usize>) -> Self {
        while top.first() == Some(&0) && bottom.first() == Some(&0) {
            top = top[1..].iter().map(|x| x - 1).collect();
            bottom = bottom[1..].iter().map(|x| x - 1).collect();
        }
        let swap = match top.len().cmp(&bottom.len()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => top < bottom,
        };
        if swap {
            std::mem::swap(&mut top, &mut bottom);
        }
        Symbol { top, bottom }
    }

    pub fn empty() -> Self {
        Symbol {
            top: Vec::new(),
            bottom: Vec::new(),
        }
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn rank(&self) -> usize {
        let sum: usize = self.top.iter().chain(&self.bottom).sum();
        let len = self.top.len() + self.bottom.len();
        let correction = if len == 0 { 0 } else { (len - 1) * (len - 1) / 4 };
        sum - correction
    }

    pub fn defect(&self) -> usize {
        self.top.len().abs_diff(self.bottom.len())
    }

    pub fn rank_and_defect(&self) -> (usize, usize) {
        (self.rank(), self.defect())
    }

    /// A type D symbol with equal rows labels two characters.
    pub fn is_degenerate(&self) -> bool {
        self.top == self.bottom
    }

    /// The shift `(X | Y) -> ({0} u (X + 1) | {0} u (Y + 1))`, uncanonicalised rows.
    pub fn shifted_rows(&self, times: usize) -> (Vec<usize>, Vec<usize>) {
        let shift =
            |row: &[usize]| -> Vec<usize> { (0..times).chain(row.iter().map(|x| x + times)).collect() };
        (shift(&self.top), shift(&self.bottom))
    }

    /// Strips e-hooks inside each row until none remain.
    pub fn e_core(&self, e: usize) -> Symbol {
        assert!(e >= 1, "e must be positive");
        let slide = |row: &[usize]| -> Vec<usize> {
            let mut per_runner = vec![0usize; e];
            for &x in row {
                per_runner[x % e] += 1;
            }
            let mut out: Vec<usize> = per_runner
                .iter()
                .enumerate()
                .flat_map(|(runner, &count)| (0..count).map(move |j| runner + j * e))
                .collect();
            out.sort_unstable();
            out
        };
        Symbol::canonical(slide(&self.top), slide(&self.bottom))
    }

    /// Strips e-cohooks: `y` leaves one row and `y - e` enters the other.
    pub fn e_cocore(&self, e: usize) -> Symbol {
        assert!(e >= 1, "e must be positive");
        let mut rows = [
            self.top.iter().copied().collect::<BTreeSet<_>>(),
            self.bottom.iter().copied().collect::<BTreeSet<_>>(),
        ];
        while let Some((from, y)) = first_cohook(&rows, e) {
            rows[from].remove(&y);
            rows[1 - from].insert(y - e);
        }
        let [top, bottom] = rows;
        Symbol::canonical(top.into_iter().collect(), bottom.into_iter().collect())
    }

    pub fn has_e_hook(&self, e: usize) -> bool {
        [&self.top, &self.bottom].iter().any(|row| {
            row.iter()
                .any(|&y| y >= e && row.binary_search(&(y - e)).is_err())
        })
    }

    pub fn has_e_cohook(&self, e: usize) -> bool {
        let rows = [
            self.top.iter().copied().collect::<BTreeSet<_>>(),
            self.bottom.iter().copied().collect::<BTreeSet<_>>(),
        ];
        first_cohook(&rows, e).is_some()
    }
}

/// Smallest removable cohook, as (row it leaves, entry).
pub(crate) fn first_cohook(rows: &[BTreeSet<usize>; 2], e: usize) -> Option<(usize, usize)> {
    (0..2).find_map(|from| {
        rows[from]
            .iter()
            .find(|&&y| y >= e && !rows[1 - from].contains(&(y - e)))
            .map(|&y| (from, y))
    })
}

pub fn symbol_from_rows(top: Vec<usize>, bottom: Vec<usize>) -> Result<Symbol> {
    Symbol::from_rows(top, bottom)
}

pub fn rank_and_defect(s: &Symbol) -> (usize, usize) {
    s.rank_and_defect()
}

pub fn e_core_symbol(s: &Symbol, e: usize) -> Symbol {
    s.e_core(e)
}

pub fn e_cocore_symbol(s: &Symbol, e: usize) -> Symbol {
    s.e_cocore(e)
}

pub fn min_rank(family: Family) -> usize {
    match family {
        Family::TypeBC => 3,
        _ => 4,
    }
}

/// Symbol of the trivial character.
pub fn trivial_symbol(family: Family, n: usize) -> Result<Symbol> {
    let min = min_rank(family);
    if n < min {
        return Err(Error::RankTooSmall { rank: n, min });
    }
    let s = match family {
        Family::TypeBC => Symbol::from_rows(vec![n], vec![]),
        Family::TypeD => Symbol::from_rows(vec![n], vec![0]),
        Family::Type2D => Symbol::from_rows(vec![0, n], vec![]),
        other => {
            return Err(Error::OutOfScopeParameters(format!(
                "family {other} is not labelled by symbols"
            )))
        }
    }?;
    Ok(s)
}

pub fn family_defect_ok(s: &Symbol, family: Family) -> bool {
    let d = s.defect();
    match family {
        Family::TypeBC => d % 2 == 1,
        Family::TypeD => d.is_multiple_of(4),
        Family::Type2D => d % 4 == 2,
        _ => false,
    }
}

impl fmt::Display for Symbol {
    /// `(x1 x2 | y1 y2)`; an empty row renders as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |row: &[usize]| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let top = join(&self.top);
        let bottom = join(&self.bottom);
        let left = if top.is_empty() {
            String::new()
        } else {
            format!("{top} ")
        };
        let right = if bottom.is_empty() {
            String::new()
        } else {
            format!(" {bottom}")
        };
        write!(f, "({left}|{right})")
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedSymbol(format!("cannot parse {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (top, bottom) = inner.split_once('|').ok_or_else(bad)?;
        let row = |text: &str| -> Result<Vec<usize>> {
            text.split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        Symbol::from_rows(row(top)?, row(bottom)?)
    }
}

/// The e-core or e-cocore of the trivial symbol of type D or twisted D in
/// rank `n`, as listed case by case in terms of `n = me + r`.
pub fn listed_trivial_reduction(family: Family, n: usize, e: usize, branch: Branch) -> Option<Symbol> {
    let (m, r) = (n / e, n % e);
    let pair = |top: Vec<usize>, bottom: Vec<usize>| Symbol::from_sets(&top, &bottom);
    match (family, branch) {
        (Family::TypeD, Branch::Core) if r != 0 => pair(vec![r], vec![0]),
        (Family::TypeD, Branch::Core) => Some(Symbol::empty()),
        (Family::TypeD, Branch::Cocore) => match (m % 2 == 0, r != 0) {
            (true, true) => pair(vec![r], vec![0]),
            (false, true) => pair(vec![0, r], vec![]),
            (true, false) => Some(Symbol::empty()),
            (false, false) => pair(vec![e], vec![0]),
        },
        (Family::Type2D, Branch::Core) if r != 0 => pair(vec![0, r], vec![]),
        (Family::Type2D, Branch::Core) => pair(vec![0, e], vec![]),
        (Family::Type2D, Branch::Cocore) => match (r != 0, m % 2 == 0) {
            (true, true) => pair(vec![0, r], vec![]),
            (true, false) => pair(vec![r], vec![0]),
            (false, true) => pair(vec![e], vec![0]),
            (false, false) => Some(Symbol::empty()),
        },
        _ => None,
    }
}
