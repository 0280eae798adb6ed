//! Dixmier maps and Cayley kernel elements for the Fibonacci and Lucas derivations.
//!
//! For a locally nilpotent `D` with a slice `h` (`D(h) != 0`, `D^2(h) = 0`),
//! `sigma(x_n) = sum_k D^k(x_n) lambda^k / k!` with `lambda = -h / D(h)` lies in
//! the kernel of `D` extended to the localization at `D(h)`. Clearing the
//! denominator gives the Cayley element `C_n`.

use num_traits::One;

use crate::derivops::{Builtin, Derivation};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, int, sign, Rational};
use crate::polyring::{Monomial, Poly, Var};

/// `numerator / x_{denom_var}^{denom_power}`, with the power kept minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedPoly {
    numerator: Poly,
    denom_var: u32,
    denom_power: u32,
}

impl LocalizedPoly {
    pub fn new(numerator: Poly, denom_var: u32, denom_power: u32) -> Self {
        let v = Var::Gen(denom_var);
        let cancel = if numerator.is_zero() {
            denom_power
        } else {
            numerator.var_valuation(v).min(denom_power)
        };
        let numerator = numerator
            .div_var_pow(v, cancel)
            .expect("valuation bounds the cancelled power");
        Self {
            numerator,
            denom_var,
            denom_power: denom_power - cancel,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denom_var(&self) -> u32 {
        self.denom_var
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom_power == 0
    }

    /// Multiplies by `x_{denom_var}^k`; fails if the result is not a polynomial.
    pub fn clear_denominator(&self, k: u32) -> Result<Poly> {
        if k < self.denom_power {
            return Err(Error::InexactDivision);
        }
        Ok(self.numerator.mul_monomial(&Monomial::pow(
            Var::Gen(self.denom_var),
            k - self.denom_power,
        )))
    }

    /// `D(N / t^p) = (D(N) t - p N D(t)) / t^{p+1}`.
    pub fn derive(&self, d: &Derivation) -> Result<Self> {
        let t = Poly::gen(self.denom_var);
        let dn = d.derive(&self.numerator)?;
        let dt = d.derive(&t)?;
        let num = &(&dn * &t) - &(&self.numerator * &dt).scale(&int(i64::from(self.denom_power)));
        Ok(Self::new(num, self.denom_var, self.denom_power + 1))
    }
}

/// An element `h` with `D(h) != 0` and `D^2(h) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    h: Poly,
    image: Poly,
}

impl Slice {
    pub fn new(d: &Derivation, h: Poly) -> Result<Self> {
        let image = d.derive(&h)?;
        if image.is_zero() {
            return Err(Error::InvalidSlice(format!("D({h}) = 0")));
        }
        if !d.derive(&image)?.is_zero() {
            return Err(Error::InvalidSlice(format!("D^2({h}) != 0")));
        }
        Ok(Self { h, image })
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn image(&self) -> &Poly {
        &self.image
    }

    /// Standard slice: `x2` for Fibonacci (`D(x2) = x1`), `x1` for Lucas and Appell (`D(x1) = x0`).
    pub fn standard(kind: Builtin) -> Self {
        let h = match kind {
            Builtin::Fibonacci => Poly::gen(2),
            Builtin::Lucas | Builtin::Appell => Poly::gen(1),
        };
        Self::new(&Derivation::Builtin(kind), h).expect("standard slices are valid")
    }

    // D(h) = c * x_j
    fn image_as_scaled_generator(&self) -> Result<(Rational, u32)> {
        let mut terms = self.image.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) => match m.iter().collect::<Vec<_>>()[..] {
                [(Var::Gen(j), 1)] => Ok((c.clone(), j)),
                _ => Err(Error::InvalidSlice(format!(
                    "D(h) = {} is not a multiple of one generator",
                    self.image
                ))),
            },
            _ => Err(Error::InvalidSlice(format!(
                "D(h) = {} is not a multiple of one generator",
                self.image
            ))),
        }
    }
}

const ORBIT_BOUND: usize = 4096;

/// `sigma(x_n)` over the common denominator `D(h)^K`, where `K` is the last
/// nonvanishing power of `D` on `x_n`.
pub fn dixmier_sigma(d: &Derivation, slice: &Slice, n: u32) -> Result<LocalizedPoly> {
    if !d.derive(slice.image())?.is_zero() || slice.image().is_zero() {
        return Err(Error::InvalidSlice(
            "slice does not match derivation".into(),
        ));
    }
    let (c, j) = slice.image_as_scaled_generator()?;
    let orbit = d.orbit(&Poly::gen(n), ORBIT_BOUND)?;
    let top = orbit.len().saturating_sub(1) as u32;
    let minus_h = -slice.h();
    let c_inv = c.recip();
    let mut numerator = Poly::zero();
    let mut h_pow = Poly::one();
    let mut scale = Rational::one();
    for (k, dk) in orbit.iter().enumerate() {
        let k = k as u32;
        if k > 0 {
            h_pow = &h_pow * &minus_h;
            scale = scale * &c_inv / int(i64::from(k));
        }
        let term = (dk * &h_pow).mul_monomial(&Monomial::pow(Var::Gen(j), top - k));
        numerator += term.scale(&scale);
    }
    Ok(LocalizedPoly::new(numerator, j, top))
}

fn check_minimum(kind: Builtin, n: u32) -> Result<()> {
    let min = match kind {
        Builtin::Fibonacci => 3,
        Builtin::Lucas => 1,
        Builtin::Appell => {
            return Err(Error::InvalidArgument(
                "Cayley elements are defined for the Fibonacci and Lucas derivations".into(),
            ))
        }
    };
    if n < min {
        return Err(Error::BelowMinimum { n, min });
    }
    Ok(())
}

/// Cayley element `C_n` from its closed formula.
///
/// Fibonacci (`n >= 3`):
/// `x_n x1^{n-2} + sum_{k=1}^{n-3} (1/k) sum_i (-1)^{k+i} (n-k-2i) C(i+k-1,k-1) C(n-i-1,k-1) x_{n-k-2i} x2^k x1^{n-2-k} + (n-2)(-1)^n x2^{n-1}`.
///
/// Lucas (`n >= 2`):
/// `x_n x0^{n-1} + n sum_{k=1}^{n-2} (1/k) sum_i (-1)^{k+i} C(i+k-1,k-1) C(n-i-1,k-1) x_{n-k-2i} x1^k x0^{n-1-k} + (n-1)(-1)^{n-1} x1^n`,
/// and `C_1 = x0`.
pub fn cayley_closed(kind: Builtin, n: u32) -> Result<Poly> {
    check_minimum(kind, n)?;
    let n_i = i64::from(n);
    let (lead, tail, min_sub, anchor_pow) = match kind {
        Builtin::Fibonacci => (1u32, 2u32, 1i64, n - 2),
        _ => {
            if n == 1 {
                return Ok(Poly::gen(0));
            }
            (0, 1, 0, n - 1)
        }
    };
    // anchor = x1 (Fibonacci) or x0 (Lucas); mover = x2 or x1
    let anchor = Var::Gen(lead);
    let mover = Var::Gen(tail);
    let mut out = Poly::gen(n).mul_monomial(&Monomial::pow(anchor, anchor_pow));
    let k_max = match kind {
        Builtin::Fibonacci => n_i - 3,
        _ => n_i - 2,
    };
    for k in 1..=k_max {
        let mut inner = Poly::zero();
        let mut i = 0i64;
        while n_i - k - 2 * i >= min_sub {
            let sub = n_i - k - 2 * i;
            let mut c = sign(k + i) * binomial(i + k - 1, k - 1) * binomial(n_i - i - 1, k - 1);
            if kind == Builtin::Fibonacci {
                c *= int(sub);
            }
            inner += Poly::gen(sub as u32).scale(&c);
            i += 1;
        }
        let mono = Monomial::from_pairs([(mover, k as u32), (anchor, anchor_pow - k as u32)]);
        let pre = match kind {
            Builtin::Fibonacci => Rational::new(1.into(), k.into()),
            _ => Rational::new(n_i.into(), k.into()),
        };
        out += inner.mul_monomial(&mono).scale(&pre);
    }
    let (tail_coeff, tail_pow) = match kind {
        Builtin::Fibonacci => (int(n_i - 2) * sign(n_i - 2), n - 1),
        _ => (int(n_i - 1) * sign(n_i - 1), n),
    };
    out += Poly::term(tail_coeff, Monomial::pow(mover, tail_pow));
    Ok(out)
}

/// Cayley element `C_n` by running the Dixmier map and clearing the
/// denominator with `x1^{n-2}` (Fibonacci) or `x0^{n-1}` (Lucas).
pub fn cayley_constructive(kind: Builtin, n: u32) -> Result<Poly> {
    check_minimum(kind, n)?;
    let d = Derivation::Builtin(kind);
    let slice = Slice::standard(kind);
    let (target, clear) = match kind {
        // sigma(x1) = 0 for the Lucas slice; the first generator is sigma(x0) = x0
        Builtin::Lucas if n == 1 => (0, 0),
        Builtin::Lucas => (n, n - 1),
        _ => (n, n - 2),
    };
    dixmier_sigma(&d, &slice, target)?.clear_denominator(clear)
}

/// Whether `D` extended to the localization kills `p`.
pub fn is_kernel_localized(d: &Derivation, p: &LocalizedPoly) -> Result<bool> {
    Ok(p.derive(d)?.numerator().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32) -> Poly {
        Poly::gen(i)
    }

    fn parse(terms: &[(i64, &[(u32, u32)])]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(c, m)| {
            (
                int(c),
                Monomial::from_pairs(m.iter().map(|&(i, e)| (Var::Gen(i), e))),
            )
        }))
    }

    #[test]
    fn localized_normalizes() {
        let p = LocalizedPoly::new(&g(1).pow(3) * &g(2), 1, 2);
        assert_eq!(p.denom_power(), 0);
        assert_eq!(p.numerator(), &(&g(1) * &g(2)));
        let q = LocalizedPoly::new(&g(1) + &g(2), 1, 2);
        assert_eq!(q.denom_power(), 2);
        assert_eq!(LocalizedPoly::new(Poly::zero(), 0, 4).denom_power(), 0);
    }

    #[test]
    fn fibonacci_sigma_x3() {
        let d = Derivation::fibonacci();
        let s = dixmier_sigma(&d, &Slice::standard(Builtin::Fibonacci), 3).unwrap();
        assert_eq!(s.denom_var(), 1);
        assert_eq!(s.denom_power(), 1);
        assert_eq!(s.numerator(), &(&(&g(3) * &g(1)) - &g(2).pow(2)));
        assert!(is_kernel_localized(&d, &s).unwrap());
    }

    #[test]
    fn lucas_sigma_x2() {
        let d = Derivation::lucas();
        let s = dixmier_sigma(&d, &Slice::standard(Builtin::Lucas), 2).unwrap();
        assert_eq!((s.denom_var(), s.denom_power()), (0, 1));
        assert_eq!(s.numerator(), &(&(&g(2) * &g(0)) - &g(1).pow(2)));
    }

    #[test]
    fn sigma_fixes_kernel_generators() {
        let f = Derivation::fibonacci();
        let fs = Slice::standard(Builtin::Fibonacci);
        for n in [0, 1] {
            let s = dixmier_sigma(&f, &fs, n).unwrap();
            assert!(s.is_polynomial());
            assert_eq!(s.numerator(), &g(n));
        }
        let l = Derivation::lucas();
        let s = dixmier_sigma(&l, &Slice::standard(Builtin::Lucas), 0).unwrap();
        assert_eq!(s.numerator(), &g(0));
        assert!(s.is_polynomial());
    }

    #[test]
    fn slice_validation() {
        let d = Derivation::fibonacci();
        assert!(Slice::new(&d, g(1)).is_err()); // D(x1) = 0
        assert!(Slice::new(&d, g(4)).is_err()); // D^2(x4) != 0
        let s = Slice::new(&d, g(2).scale(&int(3))).unwrap();
        // D(3 x2) = 3 x1: scaled images are handled
        let sig = dixmier_sigma(&d, &s, 3).unwrap();
        assert_eq!(sig.numerator(), &(&(&g(3) * &g(1)) - &g(2).pow(2)));
        let wide = Slice::new(&d, &g(2) + &g(3)).unwrap_err();
        assert!(matches!(wide, Error::InvalidSlice(_)));
    }

    #[test]
    fn fibonacci_known_elements() {
        let c4 = parse(&[
            (2, &[(2, 3)]),
            (-3, &[(1, 1), (2, 1), (3, 1)]),
            (1, &[(1, 2), (2, 1)]),
            (1, &[(1, 2), (4, 1)]),
        ]);
        assert_eq!(cayley_closed(Builtin::Fibonacci, 4).unwrap(), c4);
        let c3 = parse(&[(1, &[(1, 1), (3, 1)]), (-1, &[(2, 2)])]);
        assert_eq!(cayley_constructive(Builtin::Fibonacci, 3).unwrap(), c3);
        let c5 = parse(&[
            (-3, &[(2, 4)]),
            (6, &[(1, 1), (2, 2), (3, 1)]),
            (-1, &[(1, 2), (2, 2)]),
            (-4, &[(1, 2), (2, 1), (4, 1)]),
            (1, &[(1, 3), (5, 1)]),
        ]);
        assert_eq!(cayley_constructive(Builtin::Fibonacci, 5).unwrap(), c5);
    }

    #[test]
    fn lucas_known_elements() {
        let c2 = parse(&[(1, &[(0, 1), (2, 1)]), (-1, &[(1, 2)])]);
        assert_eq!(cayley_closed(Builtin::Lucas, 2).unwrap(), c2);
        let c3 = parse(&[
            (2, &[(1, 3)]),
            (3, &[(0, 2), (1, 1)]),
            (-3, &[(0, 1), (1, 1), (2, 1)]),
            (1, &[(0, 2), (3, 1)]),
        ]);
        assert_eq!(cayley_closed(Builtin::Lucas, 3).unwrap(), c3);
        let c5 = parse(&[
            (4, &[(1, 5)]),
            (10, &[(0, 2), (1, 2), (3, 1)]),
            (-5, &[(0, 4), (1, 1)]),
            (-5, &[(0, 3), (1, 1), (4, 1)]),
            (-10, &[(0, 1), (1, 3), (2, 1)]),
            (5, &[(0, 3), (1, 1), (2, 1)]),
            (1, &[(0, 4), (5, 1)]),
        ]);
        assert_eq!(cayley_constructive(Builtin::Lucas, 5).unwrap(), c5);
        assert_eq!(cayley_closed(Builtin::Lucas, 1).unwrap(), g(0));
        assert_eq!(cayley_constructive(Builtin::Lucas, 1).unwrap(), g(0));
    }

    #[test]
    fn minimum_indices() {
        assert_eq!(
            cayley_closed(Builtin::Fibonacci, 2),
            Err(Error::BelowMinimum { n: 2, min: 3 })
        );
        assert_eq!(
            cayley_constructive(Builtin::Lucas, 0),
            Err(Error::BelowMinimum { n: 0, min: 1 })
        );
        assert!(cayley_closed(Builtin::Appell, 4).is_err());
    }

    #[test]
    fn leading_structure() {
        for n in 3..=12 {
            let c = cayley_closed(Builtin::Fibonacci, n).unwrap();
            let m = Monomial::from_pairs([(Var::Gen(n), 1), (Var::Gen(1), n - 2)]);
            assert!(c.coeff(&m).is_one());
        }
        for n in 2..=12 {
            let c = cayley_closed(Builtin::Lucas, n).unwrap();
            let m = Monomial::from_pairs([(Var::Gen(n), 1), (Var::Gen(0), n - 1)]);
            assert!(c.coeff(&m).is_one());
        }
    }
}
