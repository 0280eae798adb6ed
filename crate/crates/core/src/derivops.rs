//! Derivations of the generator ring `Q[x0, x1, ...]`.
//!
//! A derivation is fixed by its generator images and extended to all
//! polynomials by linearity and the Leibniz rule. The three built-ins are
//! triangular (the image of `x_n` only involves lower generators), hence
//! locally nilpotent:
//!
//! * Fibonacci: `x_n -> sum_k (-1)^k (n-1-2k) x_{n-1-2k}`
//! * Lucas:     `x_n -> n sum_k (-1)^k x_{n-1-2k}`
//! * Appell:    `x_n -> n x_{n-1}`

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, falling_factorial, int, sign};
use crate::families::FamilyKind;
use crate::polyring::{Poly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Builtin {
    Fibonacci,
    Lucas,
    Appell,
}

impl Builtin {
    /// The polynomial family whose substitution homomorphism this derivation tracks.
    pub fn family(self) -> FamilyKind {
        match self {
            Builtin::Fibonacci => FamilyKind::Fibonacci,
            Builtin::Lucas => FamilyKind::Lucas,
            Builtin::Appell => FamilyKind::AppellMonomial,
        }
    }
}

impl From<FamilyKind> for Builtin {
    fn from(kind: FamilyKind) -> Self {
        match kind {
            FamilyKind::Fibonacci => Builtin::Fibonacci,
            FamilyKind::Lucas => Builtin::Lucas,
            FamilyKind::AppellMonomial => Builtin::Appell,
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<FamilyKind>().map(Builtin::from)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family().name())
    }
}

/// Image of the generator `x_n` under a built-in derivation.
pub fn builtin_image(kind: Builtin, n: u32) -> Poly {
    let mut out = Poly::zero();
    if n == 0 {
        return out;
    }
    let n_i = i64::from(n);
    match kind {
        Builtin::Appell => out = Poly::gen(n - 1).scale(&int(n_i)),
        Builtin::Fibonacci => {
            for k in 0..=(n - 1) / 2 {
                let j = n - 1 - 2 * k;
                out += Poly::gen(j).scale(&(sign(i64::from(k)) * int(i64::from(j))));
            }
        }
        Builtin::Lucas => {
            for k in 0..=(n - 1) / 2 {
                out += Poly::gen(n - 1 - 2 * k).scale(&(sign(i64::from(k)) * int(n_i)));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Builtin(Builtin),
    /// Arbitrary generator-image table. Nilpotency is not checked.
    Custom(BTreeMap<u32, Poly>),
}

impl Derivation {
    pub fn fibonacci() -> Self {
        Derivation::Builtin(Builtin::Fibonacci)
    }

    pub fn lucas() -> Self {
        Derivation::Builtin(Builtin::Lucas)
    }

    pub fn appell() -> Self {
        Derivation::Builtin(Builtin::Appell)
    }

    pub fn custom(images: BTreeMap<u32, Poly>) -> Result<Self> {
        if images.values().any(|p| p.contains_var(Var::X)) {
            return Err(Error::DistinguishedVariable);
        }
        Ok(Derivation::Custom(images))
    }

    pub fn image(&self, n: u32) -> Result<Poly> {
        match self {
            Derivation::Builtin(kind) => Ok(builtin_image(*kind, n)),
            Derivation::Custom(table) => table.get(&n).cloned().ok_or(Error::UndefinedImage(n)),
        }
    }

    /// Leibniz extension: `D(p) = sum_i dp/dx_i * D(x_i)`.
    pub fn derive(&self, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for v in p.variables() {
            let Var::Gen(i) = v else {
                return Err(Error::DistinguishedVariable);
            };
            let image = self.image(i)?;
            if image.is_zero() {
                continue;
            }
            out += &p.partial(v) * &image;
        }
        Ok(out)
    }

    pub fn derive_power(&self, p: &Poly, k: usize) -> Result<Poly> {
        let mut q = p.clone();
        for _ in 0..k {
            if q.is_zero() {
                break;
            }
            q = self.derive(&q)?;
        }
        Ok(q)
    }

    pub fn kernel_member(&self, p: &Poly) -> Result<bool> {
        Ok(self.derive(p)?.is_zero())
    }

    /// Smallest `k <= bound` with `D^k(p) = 0`, if any.
    pub fn nilpotency_index(&self, p: &Poly, bound: usize) -> Result<Option<usize>> {
        let mut q = p.clone();
        for k in 0..=bound {
            if q.is_zero() {
                return Ok(Some(k));
            }
            q = self.derive(&q)?;
        }
        Ok(None)
    }

    /// All nonzero powers `p, D(p), D^2(p), ...` until the first zero.
    pub fn orbit(&self, p: &Poly, bound: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        let mut q = p.clone();
        while !q.is_zero() {
            if out.len() > bound {
                return Err(Error::NotNilpotent(bound));
            }
            let next = self.derive(&q)?;
            out.push(q);
            q = next;
        }
        Ok(out)
    }
}

/// `D^k(x_n)` from the closed formulas, without iterating the derivation.
///
/// The inner index `i` runs over every subscript `n-k-2i` that is a valid
/// generator for the family: at least 1 for Fibonacci (whose images never
/// contain `x0`), at least 0 for Lucas.
pub fn closed_power_on_generator(kind: Builtin, n: u32, k: u32) -> Poly {
    if k == 0 {
        return Poly::gen(n);
    }
    let (n_i, k_i) = (i64::from(n), i64::from(k));
    if k > n {
        return Poly::zero();
    }
    let mut out = Poly::zero();
    match kind {
        Builtin::Appell => {
            out = Poly::gen(n - k).scale(&falling_factorial(n_i, k));
        }
        Builtin::Fibonacci => {
            let mut i = 0i64;
            while n_i - k_i - 2 * i >= 1 {
                let j = n_i - k_i - 2 * i;
                let c = sign(i)
                    * int(j)
                    * binomial(i + k_i - 1, k_i - 1)
                    * binomial(n_i - i - 1, k_i - 1);
                out += Poly::gen(j as u32).scale(&c);
                i += 1;
            }
            out = out.scale(&factorial(k - 1));
        }
        Builtin::Lucas => {
            let mut i = 0i64;
            while n_i - k_i - 2 * i >= 0 {
                let j = n_i - k_i - 2 * i;
                let c = sign(i) * binomial(i + k_i - 1, k_i - 1) * binomial(n_i - i - 1, k_i - 1);
                out += Poly::gen(j as u32).scale(&c);
                i += 1;
            }
            out = out.scale(&(int(n_i) * factorial(k - 1)));
        }
    }
    out
}

pub fn is_linear_form(p: &Poly) -> bool {
    p.terms()
        .all(|(m, c)| !c.is_zero() && m.total_degree() == 1 && m.exponent(Var::X) == 0)
}
