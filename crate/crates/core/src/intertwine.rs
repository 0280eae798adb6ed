//! Intertwining maps from the Appell derivation to the Lucas and Fibonacci
//! derivations.
//!
//! `psi_AL(x_n) = x_n + sum_{s>=1} alpha_n^(s) x_{n-2s}` satisfies
//! `psi_AL . D_A = D_L . psi_AL`, and
//! `psi_AF(x_n) = x_{n+1} + sum_{s>=1} alpha_n^(s) x_{n+1-2s}` satisfies
//! `psi_AF . D_A = D_F . psi_AF`, for `1 <= s <= (n-1)/2`.
//!
//! The coefficients `alpha_n^(s)` are computed three independent ways:
//!
//! * [`Route::RecurrenceDirect`] chains the first-order recurrences in `n`
//!   (`(n-2s) a_n = n (a_{n-1} + a'_{n-1})` for AL,
//!   `a_n = n (a_{n-1}/(n-2s) + a'_{n-1}/(n-2s+2))` for AF, with `a_{2s} = 0`),
//!   solved in closed form by [`solve_recurrence_al`] / [`solve_recurrence_af`].
//! * [`Route::BetaDecomposition`] expands `alpha^(s)` in the falling-factorial
//!   basis and runs the triangular recursion on the basis coefficients.
//! * [`Route::SeriesReciprocal`] uses the same basis with `b_i` read off the
//!   reciprocal of a Bessel-type power series ([`b_sequence`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::derivops::Derivation;
use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, factorial, factorial_pair_series, falling_factorial, int,
    inverse_square_factorial_series, sign, Rational,
};
use crate::polyring::{Poly, Substitution, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MapKind {
    /// Appell to Lucas.
    AL,
    /// Appell to Fibonacci.
    AF,
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AL" | "al" => Ok(MapKind::AL),
            "AF" | "af" => Ok(MapKind::AF),
            _ => Err(Error::InvalidArgument(format!("unknown map kind {s:?}"))),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::AL => "AL",
            MapKind::AF => "AF",
        })
    }
}

impl MapKind {
    pub fn target(self) -> Derivation {
        match self {
            MapKind::AL => Derivation::lucas(),
            MapKind::AF => Derivation::fibonacci(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    RecurrenceDirect,
    BetaDecomposition,
    SeriesReciprocal,
}

impl Route {
    pub const ALL: [Route; 3] = [
        Route::RecurrenceDirect,
        Route::BetaDecomposition,
        Route::SeriesReciprocal,
    ];
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recurrence" => Ok(Route::RecurrenceDirect),
            "beta" => Ok(Route::BetaDecomposition),
            "series" => Ok(Route::SeriesReciprocal),
            _ => Err(Error::InvalidArgument(format!("unknown route {s:?}"))),
        }
    }
}

fn check_g_len(g: &[Rational], n_max: u32) -> Result<()> {
    if (g.len() as u64) < u64::from(n_max) {
        return Err(Error::InvalidArgument(format!(
            "forcing sequence has {} terms, need indices up to {}",
            g.len(),
            n_max.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Solves `(n-a) x_n = n (x_{n-1} + g_{n-1})`, `x_a = 0`, as
/// `x_n = n^(a falling) sum_{i=a}^{n-1} g_i / i^(a falling)`.
///
/// `g` is indexed absolutely; the result holds `x_a, ..., x_{n_max}`.
pub fn solve_recurrence_al(a: u32, g: &[Rational], n_max: u32) -> Result<Vec<Rational>> {
    check_g_len(g, n_max)?;
    let mut out = Vec::new();
    let mut acc = Rational::zero();
    for n in a..=n_max {
        if n > a {
            let i = n - 1;
            acc += &g[i as usize] / falling_factorial(i64::from(i), a);
        }
        out.push(falling_factorial(i64::from(n), a) * &acc);
    }
    Ok(out)
}

/// Solves `x_n = n (x_{n-1}/(n-s) + g_{n-1}/(n-s+2))`, `x_s = 0`, as
/// `x_n = n^(s falling) sum_{i=s}^{n-1} g_i / (i^(s-1 falling) (i-s+3))`.
///
/// `g` is indexed absolutely; the result holds `x_s, ..., x_{n_max}`.
pub fn solve_recurrence_af(s: u32, g: &[Rational], n_max: u32) -> Result<Vec<Rational>> {
    if s < 1 {
        return Err(Error::InvalidArgument("AF recurrence needs s >= 1".into()));
    }
    check_g_len(g, n_max)?;
    let s_i = i64::from(s);
    let mut out = Vec::new();
    let mut acc = Rational::zero();
    for n in s..=n_max {
        if n > s {
            let i = i64::from(n - 1);
            acc += &g[(n - 1) as usize] / (falling_factorial(i, s - 1) * int(i - s_i + 3));
        }
        out.push(falling_factorial(i64::from(n), s) * &acc);
    }
    Ok(out)
}

/// First `count` coefficients of `1/J0(sqrt(4z))` (AL) or `sqrt(z)/J1(sqrt(4z))` (AF),
/// as reciprocals of `sum (-1)^n z^n/(n!)^2` and `sum (-1)^n z^n/(n!(n+1)!)`.
pub fn b_sequence(kind: MapKind, count: usize) -> Result<Vec<Rational>> {
    let base = match kind {
        MapKind::AL => inverse_square_factorial_series(count)?,
        MapKind::AF => factorial_pair_series(count)?,
    };
    Ok(base.reciprocal()?.into_coeffs())
}

/// Falling-factorial coefficients `beta_i^(s)`, `0 <= i <= s <= s_max`, from
/// `beta_i^(s) = -beta_i^(s-1)/(s-i)` and the vanishing condition at `n = 2s`,
/// which fixes `b_s = beta_s^(s)`.
pub fn beta_table(kind: MapKind, s_max: u32) -> Vec<Vec<Rational>> {
    let mut table: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for s in 1..=s_max {
        let prev = &table[(s - 1) as usize];
        let mut row: Vec<Rational> = (0..s)
            .map(|i| -&prev[i as usize] / int(i64::from(s - i)))
            .collect();
        let mut b_s = Rational::zero();
        for (i, beta) in row.iter().enumerate() {
            let gap = s - i as u32;
            let denom = match kind {
                MapKind::AL => factorial(gap),
                MapKind::AF => factorial(gap + 1),
            };
            b_s -= beta / denom;
        }
        row.push(b_s);
        table.push(row);
    }
    table
}

/// `beta_i^(s) = (-1)^(s-i) b_i / (s-i)!` with `b` from the reciprocal series.
fn beta_from_series(kind: MapKind, s_max: u32) -> Result<Vec<Vec<Rational>>> {
    let b = b_sequence(kind, s_max as usize + 1)?;
    Ok((0..=s_max)
        .map(|s| {
            (0..=s)
                .map(|i| sign(i64::from(s - i)) * &b[i as usize] / factorial(s - i))
                .collect()
        })
        .collect())
}

fn alpha_from_beta(kind: MapKind, beta: &[Rational], n: u32, s: u32) -> Rational {
    let n_i = i64::from(n);
    match kind {
        MapKind::AL => beta
            .iter()
            .enumerate()
            .map(|(i, b)| b * falling_factorial(n_i, s + i as u32))
            .sum(),
        MapKind::AF => {
            let inner: Rational = beta
                .iter()
                .enumerate()
                .map(|(i, b)| b * falling_factorial(n_i, s - 1 + i as u32))
                .sum();
            inner * int(n_i - 2 * i64::from(s) + 1)
        }
    }
}

/// Evaluates at `n` the polynomial of degree `< values.len()` through
/// `(start + j, values[j])`, by Newton forward differences.
fn newton_extrapolate(start: u32, values: &[Rational], n: u32) -> Rational {
    let mut diffs = values.to_vec();
    let mut out = Rational::zero();
    let t = i64::from(n) - i64::from(start);
    for j in 0..values.len() {
        out += binomial(t, j as i64) * &diffs[0];
        for k in 0..diffs.len() - 1 {
            diffs[k] = &diffs[k + 1] - &diffs[k];
        }
        diffs.pop();
    }
    out
}

/// Forward solutions of the chained recurrences: `levels[s][n]` for `n >= 2s`,
/// continued below `2s` by the unique degree-`2s` polynomial through the
/// values at `n = 2s ..= 4s` (for AF the recurrence leaves `n < 2s-2`
/// undetermined, so the continuation is needed there).
fn recurrence_levels(kind: MapKind, s_max: u32, n_max: u32) -> Result<Vec<Vec<Rational>>> {
    let top = n_max.max(4 * s_max);
    let mut levels: Vec<Vec<Rational>> = vec![vec![Rational::one(); top as usize + 1]];
    for s in 1..=s_max {
        let g = &levels[(s - 1) as usize];
        let forward = match kind {
            MapKind::AL => solve_recurrence_al(2 * s, g, top)?,
            MapKind::AF => solve_recurrence_af(2 * s, g, top)?,
        };
        let start = 2 * s;
        let anchor = &forward[..=(2 * s) as usize];
        let mut row: Vec<Rational> = (0..start)
            .map(|n| newton_extrapolate(start, anchor, n))
            .collect();
        row.extend(forward);
        levels.push(row);
    }
    Ok(levels)
}

/// Table of `alpha_n^(s)` for `1 <= s <= s_max`, `0 <= n <= n_max`, by one route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    kind: MapKind,
    route: Route,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl CoeffTable {
    pub fn build(kind: MapKind, route: Route, s_max: u32, n_max: u32) -> Result<Self> {
        let mut entries = BTreeMap::new();
        match route {
            Route::RecurrenceDirect => {
                let levels = recurrence_levels(kind, s_max, n_max)?;
                for s in 1..=s_max {
                    for n in 0..=n_max {
                        entries.insert((n, s), levels[s as usize][n as usize].clone());
                    }
                }
            }
            Route::BetaDecomposition | Route::SeriesReciprocal => {
                let beta = if route == Route::BetaDecomposition {
                    beta_table(kind, s_max)
                } else {
                    beta_from_series(kind, s_max)?
                };
                for s in 1..=s_max {
                    for n in 0..=n_max {
                        entries.insert((n, s), alpha_from_beta(kind, &beta[s as usize], n, s));
                    }
                }
            }
        }
        Ok(Self {
            kind,
            route,
            entries,
        })
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// `alpha_n^(s)`; `alpha^(0) = 1`. `None` outside the table.
    pub fn get(&self, n: u32, s: u32) -> Option<Rational> {
        if s == 0 {
            return Some(Rational::one());
        }
        self.entries.get(&(n, s)).cloned()
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.entries
    }

    /// `alpha_{2s}^(s) = 0` for every `s` the table covers.
    pub fn boundary_vanishes(&self) -> bool {
        self.entries
            .iter()
            .filter(|((n, s), _)| *n == 2 * *s)
            .all(|(_, v)| v.is_zero())
    }
}

pub fn alpha(kind: MapKind, n: u32, s: u32, route: Route) -> Result<Rational> {
    if s == 0 {
        return Ok(Rational::one());
    }
    let table = CoeffTable::build(kind, route, s, n)?;
    Ok(table.get(n, s).expect("table covers the requested entry"))
}

/// First `(n, s)` where the three routes disagree, if any.
pub fn cross_check_routes(kind: MapKind, s_max: u32, n_max: u32) -> Result<Option<(u32, u32)>> {
    let tables = Route::ALL
        .iter()
        .map(|&r| CoeffTable::build(kind, r, s_max, n_max))
        .collect::<Result<Vec<_>>>()?;
    for s in 1..=s_max {
        for n in s..=n_max {
            let first = tables[0].get(n, s);
            if tables[1..].iter().any(|t| t.get(n, s) != first) {
                return Ok(Some((n, s)));
            }
        }
    }
    Ok(None)
}

/// A map `x_n -> linear form in the generators`, applied as a ring homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubstitution {
    kind: Option<MapKind>,
    images: BTreeMap<u32, Poly>,
}

impl LinearSubstitution {
    pub fn new(kind: Option<MapKind>, images: BTreeMap<u32, Poly>) -> Result<Self> {
        for (n, p) in &images {
            let linear = p
                .terms()
                .all(|(m, _)| m.total_degree() == 1 && m.exponent(Var::X) == 0);
            if !linear {
                return Err(Error::InvalidArgument(format!(
                    "image of x{n} is not a linear form: {p}"
                )));
            }
        }
        Ok(Self { kind, images })
    }

    pub fn identity(n_max: u32) -> Self {
        Self {
            kind: None,
            images: (0..=n_max).map(|n| (n, Poly::gen(n))).collect(),
        }
    }

    pub fn kind(&self) -> Option<MapKind> {
        self.kind
    }

    pub fn image(&self, n: u32) -> Option<&Poly> {
        self.images.get(&n)
    }

    pub fn images(&self) -> &BTreeMap<u32, Poly> {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let map: Substitution = self
            .images
            .iter()
            .map(|(&n, q)| (Var::Gen(n), q.clone()))
            .collect();
        p.subst(&map)
    }
}

/// `psi_AL` or `psi_AF` on `x_0, ..., x_{n_max}` with coefficients from `route`.
pub fn psi(kind: MapKind, n_max: u32, route: Route) -> Result<LinearSubstitution> {
    let s_max = n_max.saturating_sub(1) / 2;
    let table = CoeffTable::build(kind, route, s_max, n_max)?;
    psi_from_table(&table, n_max)
}

pub fn psi_from_table(table: &CoeffTable, n_max: u32) -> Result<LinearSubstitution> {
    let shift = match table.kind {
        MapKind::AL => 0,
        MapKind::AF => 1,
    };
    let mut images = BTreeMap::new();
    for n in 0..=n_max {
        let mut img = Poly::gen(n + shift);
        for s in 1..=n.saturating_sub(1) / 2 {
            let a = table.get(n, s).ok_or_else(|| {
                Error::InvalidArgument(format!("coefficient table lacks alpha_{n}^({s})"))
            })?;
            img += Poly::gen(n + shift - 2 * s).scale(&a);
        }
        images.insert(n, img);
    }
    LinearSubstitution::new(Some(table.kind), images)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntertwiningReport {
    #[serde(serialize_with = "kind_or_null")]
    pub kind: Option<MapKind>,
    pub n_max: u32,
    pub ok: bool,
    pub first_mismatch: Option<u32>,
    pub lhs: Option<Poly>,
    pub rhs: Option<Poly>,
}

fn kind_or_null<S: Serializer>(
    kind: &Option<MapKind>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match kind {
        Some(k) => s.serialize_str(&k.to_string()),
        None => s.serialize_none(),
    }
}

impl IntertwiningReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report encoding cannot fail")
    }
}

/// Compares `m(from(x_n))` with `to(m(x_n))` for `n = 0..=n_max`.
pub fn check_intertwining(
    m: &LinearSubstitution,
    from: &Derivation,
    to: &Derivation,
    n_max: u32,
) -> Result<IntertwiningReport> {
    for n in 0..=n_max {
        let image = m
            .image(n)
            .ok_or_else(|| Error::InvalidArgument(format!("map has no image for x{n}")))?;
        let lhs = m.apply(&from.image(n)?)?;
        let rhs = to.derive(image)?;
        if lhs != rhs {
            return Ok(IntertwiningReport {
                kind: m.kind(),
                n_max,
                ok: false,
                first_mismatch: Some(n),
                lhs: Some(lhs),
                rhs: Some(rhs),
            });
        }
    }
    Ok(IntertwiningReport {
        kind: m.kind(),
        n_max,
        ok: true,
        first_mismatch: None,
        lhs: None,
        rhs: None,
    })
}
