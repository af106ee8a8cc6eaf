//! Price functions: validation, cost evaluation, family classification and
//! conversion of per-voter budgets into shifts.

use std::fmt;

use serde::Serialize;

use crate::{Election, Error, Result};

/// Prices π(1), …, π(m−1) for shifting `p` by that many positions; π(0) = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PriceFunction {
    table: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// π(ℓ) < π(ℓ−1).
    Decrease,
    /// π(ℓ) differs from π(r−1) although ℓ ≥ r, the position of `p`.
    NotConstant,
    /// The table does not have m−1 entries.
    Arity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PriceViolation {
    /// The offending ℓ (1-based); for arity violations, the table length.
    pub index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for PriceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::Decrease => write!(f, "price decreases at ℓ={}", self.index),
            ViolationKind::NotConstant => {
                write!(f, "price changes at ℓ={} beyond the preferred candidate's position", self.index)
            }
            ViolationKind::Arity => write!(f, "table has {} entries", self.index),
        }
    }
}

impl PriceFunction {
    pub fn new(table: Vec<u64>) -> PriceFunction {
        PriceFunction { table }
    }

    /// Builds the table ℓ ↦ f(min(ℓ, position−1)) for an election with `m` candidates.
    pub fn from_fn(m: usize, position: usize, f: impl Fn(usize) -> u64) -> PriceFunction {
        let cap = position.saturating_sub(1);
        let table = (1..m).map(|l| if l.min(cap) == 0 { 0 } else { f(l.min(cap)) }).collect();
        PriceFunction { table }
    }

    pub fn unit(m: usize, position: usize) -> PriceFunction {
        PriceFunction::from_fn(m, position, |l| l as u64)
    }

    pub fn all_or_nothing(m: usize, position: usize, c: u64) -> PriceFunction {
        PriceFunction::from_fn(m, position, |_| c)
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    /// π(ℓ), constant past the end of the table.
    pub fn price(&self, l: usize) -> u64 {
        if l == 0 || self.table.is_empty() {
            0
        } else {
            self.table[l.min(self.table.len()) - 1]
        }
    }

    /// Checks monotonicity and constancy from p's position on.
    pub fn validate(&self, p_position: usize) -> std::result::Result<(), PriceViolation> {
        for l in 1..=self.table.len() {
            if self.price(l) < self.price(l - 1) {
                return Err(PriceViolation { index: l, kind: ViolationKind::Decrease });
            }
            if l >= p_position && self.price(l) != self.price(p_position.saturating_sub(1)) {
                return Err(PriceViolation { index: l, kind: ViolationKind::NotConstant });
            }
        }
        Ok(())
    }

    /// The largest ℓ ≤ `cap` with π(ℓ) ≤ `budget`.
    pub fn affordable(&self, budget: u64, cap: usize) -> usize {
        (0..=cap).rev().find(|&l| self.price(l) <= budget).unwrap_or(0)
    }

    fn is_unit(&self, cap: usize) -> bool {
        (1..=self.table.len()).all(|l| self.price(l) == l.min(cap) as u64)
    }

    fn is_convex(&self, cap: usize) -> bool {
        (1..cap).all(|l| {
            self.price(l) - self.price(l - 1) <= self.price(l + 1) - self.price(l)
        })
    }

    fn is_all_or_nothing(&self, cap: usize) -> bool {
        (1..=cap).all(|l| self.price(l) == self.price(1))
    }
}

/// The price families a list belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyTags {
    pub unit: bool,
    pub convex: bool,
    pub all_or_nothing: bool,
    pub sortable: bool,
}

impl fmt::Display for FamilyTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            (self.unit, "unit"),
            (self.convex, "convex"),
            (self.all_or_nothing, "all_or_nothing"),
            (self.sortable, "sortable"),
        ];
        let present: Vec<&str> = names.iter().filter(|(on, _)| *on).map(|(_, s)| *s).collect();
        write!(f, "{{{}}}", present.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PriceList {
    functions: Vec<PriceFunction>,
}

impl PriceList {
    pub fn new(functions: Vec<PriceFunction>) -> PriceList {
        PriceList { functions }
    }

    pub fn unit(e: &Election, p: usize) -> PriceList {
        let m = e.num_candidates();
        PriceList::new(e.positions_of(p).into_iter().map(|r| PriceFunction::unit(m, r)).collect())
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn get(&self, voter: usize) -> &PriceFunction {
        &self.functions[voter]
    }

    pub fn functions(&self) -> &[PriceFunction] {
        &self.functions
    }

    pub fn validate(&self, e: &Election, p: usize) -> Result<()> {
        if self.len() != e.num_voters() {
            return Err(Error::LengthMismatch { expected: e.num_voters(), got: self.len() });
        }
        let m = e.num_candidates();
        for (v, f) in self.functions.iter().enumerate() {
            if f.table.len() != m - 1 {
                let violation = PriceViolation { index: f.table.len(), kind: ViolationKind::Arity };
                return Err(Error::InvalidPrice { voter: v + 1, violation });
            }
            f.validate(e.position(v, p))
                .map_err(|violation| Error::InvalidPrice { voter: v + 1, violation })?;
        }
        Ok(())
    }

    /// Total price of a shift action.
    pub fn cost(&self, s: &[usize]) -> Result<u64> {
        if s.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: s.len() });
        }
        self.functions.iter().zip(s).try_fold(0u64, |acc, (f, &k)| {
            acc.checked_add(f.price(k))
                .ok_or_else(|| Error::Capacity("total price overflows 64 bits".into()))
        })
    }

    pub fn classify(&self, e: &Election, p: usize) -> FamilyTags {
        let caps: Vec<usize> = e.positions_of(p).iter().map(|r| r - 1).collect();
        let fs = &self.functions;
        let all = |test: &dyn Fn(&PriceFunction, usize) -> bool| {
            fs.iter().zip(&caps).all(|(f, &cap)| test(f, cap))
        };
        let m = e.num_candidates();
        let sortable = e.blocks().iter().all(|block| {
            block.iter().all(|&i| {
                block.iter().all(|&j| {
                    (1..m.saturating_sub(1)).all(|l| {
                        fs[i].price(l) <= fs[j].price(l) || fs[i].price(l + 1) > fs[j].price(l + 1)
                    })
                })
            })
        });
        FamilyTags {
            unit: all(&PriceFunction::is_unit),
            convex: all(&PriceFunction::is_convex),
            all_or_nothing: all(&PriceFunction::is_all_or_nothing),
            sortable,
        }
    }

    /// For each voter, the largest shift affordable with budget `b[i]`, capped at
    /// `p`'s position minus one.
    pub fn budget_to_shifts(&self, b: &[u64], positions: &[usize]) -> Result<Vec<usize>> {
        if b.len() != self.len() || positions.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: b.len() });
        }
        Ok(self
            .functions
            .iter()
            .zip(b)
            .zip(positions)
            .map(|((f, &bi), &r)| f.affordable(bi, r - 1))
            .collect())
    }
}
