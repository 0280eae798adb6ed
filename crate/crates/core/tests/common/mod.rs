#![allow(dead_code)]

use fiblucas::exactnum::{frac, int, Rational, TruncatedSeries};
use fiblucas::families::FamilyTable;
use fiblucas::identity::phi_subst_with;
use fiblucas::{Derivation, FamilyKind, Monomial, Poly, PolyMatrix, Var};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut StdRng) -> Rational {
    let p = r.gen_range(-9i64..=9);
    let q = r.gen_range(1i64..=4);
    frac(p, q)
}

/// Random polynomial in `x_0..=x_{max_gen}` with up to `terms` terms of degree `<= max_deg`.
pub fn random_poly(r: &mut StdRng, max_gen: u32, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..r.gen_range(0..=terms) {
        let deg = r.gen_range(0..=max_deg);
        let pairs: Vec<(Var, u32)> = (0..deg)
            .map(|_| (Var::Gen(r.gen_range(0..=max_gen)), 1))
            .collect();
        p.add_term(small_rational(r), Monomial::from_pairs(pairs));
    }
    p
}

pub fn random_univariate(r: &mut StdRng, max_deg: u32) -> Poly {
    let coeffs: Vec<Rational> = (0..=r.gen_range(0..=max_deg))
        .map(|_| small_rational(r))
        .collect();
    Poly::from_x_coeffs(&coeffs)
}

pub fn random_series(r: &mut StdRng, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |i| {
        let mut c = small_rational(r);
        while i == 0 && c == int(0) {
            c = small_rational(r);
        }
        c
    })
    .expect("order >= 1")
}

pub fn builtins() -> [(&'static str, Derivation); 3] {
    [
        ("fib", Derivation::fibonacci()),
        ("lucas", Derivation::lucas()),
        ("appell", Derivation::appell()),
    ]
}

/// Leibniz rule and linearity on `pairs` random pairs per built-in derivation.
pub fn leibniz_and_linearity(pairs: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for (name, d) in builtins() {
        for i in 0..pairs {
            let p = random_poly(&mut r, 8, 3, 5);
            let q = random_poly(&mut r, 8, 3, 5);
            let dp = d.derive(&p).unwrap();
            let dq = d.derive(&q).unwrap();
            let lhs = d.derive(&(&p * &q)).unwrap();
            if lhs != &(&dp * &q) + &(&p * &dq) {
                return Err(format!(
                    "{name}: Leibniz fails on pair {i}: p = {p}, q = {q}"
                ));
            }
            let (a, b) = (small_rational(&mut r), small_rational(&mut r));
            let combo = &p.scale(&a) + &q.scale(&b);
            if d.derive(&combo).unwrap() != &dp.scale(&a) + &dq.scale(&b) {
                return Err(format!("{name}: linearity fails on pair {i}"));
            }
        }
    }
    Ok(())
}

/// `phi(D p) == d/dx phi(p)` on `count` random polynomials per family.
pub fn phi_commutes_with_derivative(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for (kind, d) in [
        (FamilyKind::Fibonacci, Derivation::fibonacci()),
        (FamilyKind::Lucas, Derivation::lucas()),
    ] {
        let table = FamilyTable::new(kind, 8);
        for i in 0..count {
            let p = random_poly(&mut r, 8, 4, 6);
            let lhs = phi_subst_with(&table, &d.derive(&p).unwrap()).unwrap();
            let rhs = phi_subst_with(&table, &p).unwrap().diff_x().unwrap();
            if lhs != rhs {
                return Err(format!("{kind}: mismatch on sample {i}: p = {p}"));
            }
        }
    }
    Ok(())
}

/// `a * (1/a) == 1` on `count` random series of order `1..=16`.
pub fn reciprocal_round_trip(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for i in 0..count {
        let order = r.gen_range(1..=16);
        let a = random_series(&mut r, order);
        let prod = a.mul(&a.reciprocal().unwrap()).unwrap();
        if !prod.is_one() {
            return Err(format!("series {i} of order {order} fails"));
        }
    }
    Ok(())
}

pub fn weitzenbock_range() -> Result<(), String> {
    for n in 2..=12 {
        if !fiblucas::identity::weitzenbock_relation(n).unwrap() {
            return Err(format!("relation fails at n = {n}"));
        }
    }
    Ok(())
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

pub fn random_matrix(r: &mut StdRng, n: usize) -> Vec<Vec<Poly>> {
    (0..n)
        .map(|_| (0..n).map(|_| random_poly(r, 3, 1, 2)).collect())
        .collect()
}

pub fn det_matches_cofactor(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for i in 0..count {
        let rows = random_matrix(&mut r, 4);
        let bareiss = PolyMatrix::from_rows(rows.clone()).unwrap().det().unwrap();
        if bareiss != cofactor_det(&rows) {
            return Err(format!("matrix {i} disagrees"));
        }
    }
    Ok(())
}

fn poly_at(coeffs: &[i64], n: i64) -> Rational {
    int(coeffs.iter().fold(0, |acc, c| acc * n + c))
}

/// Known closed forms of `alpha_n^(s)`: AL for `s = 1..=5`, AF for `s = 1..=4`.
pub fn reference_alpha(kind: fiblucas::MapKind, s: u32, n: i64) -> Option<Rational> {
    use fiblucas::exactnum::binomial;
    use fiblucas::MapKind::{AF, AL};
    let v = match (kind, s) {
        (AL, 1) => int(n * (n - 2)),
        (AL, 2) => frac(1, 2) * int(n - 4) * binomial(n, 2) * int(3 * n - 7),
        (AL, 3) => frac(1, 6) * int(n - 6) * binomial(n, 3) * poly_at(&[19, -141, 254], n),
        (AL, 4) => {
            frac(1, 24) * int(n - 8) * binomial(n, 4) * poly_at(&[211, -3258, 16481, -27306], n)
        }
        (AL, 5) => {
            frac(1, 120)
                * int(n - 10)
                * binomial(n, 5)
                * poly_at(&[3651, -96550, 946185, -4071950, 6492024], n)
        }
        (AF, 1) => frac(1, 2) * int((n - 1) * (n - 2)),
        (AF, 2) => frac(1, 6) * int((n - 4) * (n - 3) * (n - 2) * n),
        (AF, 3) => frac(1, 144) * int((n - 1) * n * (n - 4) * (n - 5) * (7 * n - 17) * (n - 6)),
        (AF, 4) => {
            frac(1, 2880)
                * int(n - 8)
                * poly_at(&[39, -296, 545], n)
                * int((n - 7) * (n - 6) * (n - 2) * (n - 1) * n)
        }
        _ => return None,
    };
    Some(v)
}

pub fn reference_alpha_range(kind: fiblucas::MapKind) -> u32 {
    match kind {
        fiblucas::MapKind::AL => 5,
        fiblucas::MapKind::AF => 4,
    }
}

/// Parses integer-coefficient polynomials written like `4x2^5-10x2^3x3x1+x6x1^4`.
pub fn parse_compact(text: &str) -> Poly {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Poly::zero();
    let mut chunks = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            chunks.push(&text[start..i]);
            start = i;
        }
    }
    chunks.push(&text[start..]);
    for chunk in chunks {
        let (neg, body) = match chunk.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, chunk.strip_prefix('+').unwrap_or(chunk)),
        };
        let digits: String = body.chars().take_while(char::is_ascii_digit).collect();
        let coeff: i64 = if digits.is_empty() {
            1
        } else {
            digits.parse().unwrap()
        };
        let mut pairs = Vec::new();
        for factor in body[digits.len()..].split('x').filter(|f| !f.is_empty()) {
            let (idx, exp) = factor.split_once('^').unwrap_or((factor, "1"));
            pairs.push((Var::Gen(idx.parse().unwrap()), exp.parse().unwrap()));
        }
        out.add_term(
            int(if neg { -coeff } else { coeff }),
            Monomial::from_pairs(pairs),
        );
    }
    out
}
