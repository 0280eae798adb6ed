//! Fibonacci, Lucas and Appell-monomial polynomial families in `x`.
//!
//! The Lucas family follows the generating function `(1 + t^2) / (1 - x t - t^2)`,
//! which gives `L_0 = 1` (not the more common `L_0 = 2`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactnum::{int, sign};
use crate::polyring::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "fib")]
    Fibonacci,
    #[serde(rename = "lucas")]
    Lucas,
    #[serde(rename = "appell")]
    AppellMonomial,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Fibonacci => "fib",
            FamilyKind::Lucas => "lucas",
            FamilyKind::AppellMonomial => "appell",
        }
    }

    /// Symbol used when rendering identities: `F`, `L` or `A`.
    pub fn symbol(self) -> char {
        match self {
            FamilyKind::Fibonacci => 'F',
            FamilyKind::Lucas => 'L',
            FamilyKind::AppellMonomial => 'A',
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fib" | "fibonacci" => Ok(FamilyKind::Fibonacci),
            "lucas" => Ok(FamilyKind::Lucas),
            "appell" => Ok(FamilyKind::AppellMonomial),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

/// Members `0..=n_max` of one family, computed once.
#[derive(Debug, Clone)]
pub struct FamilyTable {
    kind: FamilyKind,
    polys: Vec<Poly>,
}

impl FamilyTable {
    pub fn new(kind: FamilyKind, n_max: usize) -> Self {
        let x = Poly::x();
        let mut polys: Vec<Poly> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let p = match (kind, n) {
                (FamilyKind::AppellMonomial, _) => x.pow(n as u32),
                (FamilyKind::Fibonacci, 0) => Poly::zero(),
                (FamilyKind::Fibonacci, 1) | (FamilyKind::Lucas, 0) => Poly::one(),
                (FamilyKind::Lucas, 1) => x.clone(),
                (FamilyKind::Lucas, 2) => &x.pow(2) + &Poly::constant(int(2)),
                _ => &(&x * &polys[n - 1]) + &polys[n - 2],
            };
            polys.push(p);
        }
        Self { kind, polys }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }
}

pub fn family_poly(kind: FamilyKind, n: usize) -> Poly {
    FamilyTable::new(kind, n)
        .polys
        .pop()
        .expect("table is never empty")
}

/// Right-hand side of the classical derivative formula for member `n`:
/// Fibonacci `sum_k (-1)^k (n-1-2k) F_{n-1-2k}`, Lucas `n sum_k (-1)^k L_{n-1-2k}`,
/// Appell `n A_{n-1}`.
pub fn derivative_formula_rhs(table: &FamilyTable, n: usize) -> Poly {
    if n == 0 {
        return Poly::zero();
    }
    let mut acc = Poly::zero();
    match table.kind {
        FamilyKind::AppellMonomial => return table.get(n - 1).scale(&int(n as i64)),
        FamilyKind::Fibonacci => {
            for k in 0..=(n - 1) / 2 {
                let j = n - 1 - 2 * k;
                acc += table.get(j).scale(&(sign(k as i64) * int(j as i64)));
            }
        }
        FamilyKind::Lucas => {
            for k in 0..=(n - 1) / 2 {
                acc += table.get(n - 1 - 2 * k).scale(&sign(k as i64));
            }
            acc = acc.scale(&int(n as i64));
        }
    }
    acc
}

pub fn verify_derivative_formula(kind: FamilyKind, n: usize) -> bool {
    let table = FamilyTable::new(kind, n);
    let lhs = table
        .get(n)
        .diff_x()
        .expect("family members are univariate");
    lhs == derivative_formula_rhs(&table, n)
}
