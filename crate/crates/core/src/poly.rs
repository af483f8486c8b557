//! Univariate polynomials over a [`FieldCtx`].
//!
//! A [`Poly`] is a plain coefficient vector; every operation that needs field
//! arithmetic takes the context explicitly.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Extension, FieldCtx, FieldElem};

const SPLIT_SEED: u64 = 0x00c0_ffee_d15c_0001;

/// Ascending coefficients without trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<FieldElem>,
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down by scan index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut c: Vec<FieldElem>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(FieldElem::ONE)
    }

    pub fn constant(a: FieldElem) -> Self {
        Poly::new(vec![a])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Poly::new(vec![FieldElem::ZERO, FieldElem::ONE])
    }

    /// `a X^k`.
    pub fn monomial(a: FieldElem, k: usize) -> Self {
        let mut c = vec![FieldElem::ZERO; k + 1];
        c[k] = a;
        Poly::new(c)
    }

    /// `X - a`.
    pub fn linear(ctx: &FieldCtx, a: FieldElem) -> Self {
        Poly::new(vec![ctx.neg(a), FieldElem::ONE])
    }

    /// Coefficients given as integers, read in the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&k| ctx.from_int(k)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.c.get(k).copied().unwrap_or(FieldElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == FieldElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> FieldElem {
        self.c.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElem::ONE
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        self.c
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &a| ctx.add(ctx.mul(acc, x), a))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        Poly::new(
            (0..n)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        Poly::new(
            (0..n)
                .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(self.c.iter().map(|&a| ctx.neg(a)).collect())
    }

    pub fn scale(&self, ctx: &FieldCtx, k: FieldElem) -> Poly {
        Poly::new(self.c.iter().map(|&a| ctx.mul(a, k)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, ctx: &FieldCtx, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(ctx, self);
        }
        acc
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FieldElem::ZERO; k];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    /// Divides out the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match ctx.inv(self.lead()) {
            Some(li) if li != FieldElem::ONE => self.scale(ctx, li),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| ctx.mul(ctx.from_int(i as i64), a))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn divrem(&self, ctx: &FieldCtx, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let li = ctx.inv(d.lead()).ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![FieldElem::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = ctx.mul(r[k], li);
            if coef.is_zero() {
                continue;
            }
            q[k - dd] = coef;
            for (j, &b) in d.c.iter().enumerate() {
                r[k - dd + j] = ctx.sub(r[k - dd + j], ctx.mul(coef, b));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, ctx: &FieldCtx, d: &Poly) -> Result<Poly> {
        self.divrem(ctx, d).map(|(_, r)| r)
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, ctx: &FieldCtx, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(ctx, d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, ctx: &FieldCtx, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b)?;
            a = b;
            b = r;
        }
        Ok(a.monic(ctx))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, ctx: &FieldCtx, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(ctx, m)?;
        let mut acc = Poly::one().rem(ctx, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base).rem(ctx, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base).rem(ctx, m)?;
            }
        }
        Ok(acc)
    }

    /// `Res(f, g) = lc(f)^{deg g} ∏ g(r)` over the roots `r` of `f`, so that
    /// `Res(X - a, X - b) = a - b`.
    pub fn resultant(&self, ctx: &FieldCtx, other: &Poly) -> Result<FieldElem> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = FieldElem::ONE;
        loop {
            let da = a.degree().expect("nonzero");
            let db = b.degree().expect("nonzero");
            if db == 0 {
                return Ok(ctx.mul(acc, ctx.powu(b.lead(), da as u64)));
            }
            if da == 0 {
                return Ok(ctx.mul(acc, ctx.powu(a.lead(), db as u64)));
            }
            let r = a.rem(ctx, &b)?;
            let Some(dr) = r.degree() else {
                return Ok(FieldElem::ZERO);
            };
            if (da * db) % 2 == 1 {
                acc = ctx.neg(acc);
            }
            acc = ctx.mul(acc, ctx.powu(b.lead(), (da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// `D(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)` with `f'` taken at formal
    /// degree `d - 1`.
    pub fn discriminant(&self, ctx: &FieldCtx) -> Result<FieldElem> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        let df = self.derivative(ctx);
        let Some(k) = df.degree() else {
            return Ok(FieldElem::ZERO);
        };
        let lc = self.lead();
        let mut r = self.resultant(ctx, &df)?;
        r = ctx.mul(r, ctx.powu(lc, (d - 1 - k) as u64));
        r = ctx.div(r, lc).expect("nonzero leading coefficient");
        if (d * (d - 1) / 2) % 2 == 1 {
            r = ctx.neg(r);
        }
        Ok(r)
    }

    /// Irreducibility over the field of `ctx`.
    pub fn is_irreducible(&self, ctx: &FieldCtx) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic(ctx);
        let x = Poly::x();
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = h.powmod(ctx, ctx.q() as u64, &f).expect("nonzero modulus");
            let g = h.sub(ctx, &x).gcd(ctx, &f).expect("f nonzero");
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Monic irreducible factors with multiplicities, sorted by the
    /// polynomial order. The leading coefficient is dropped.
    pub fn factor(&self, ctx: &FieldCtx) -> Result<Vec<(Poly, usize)>> {
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        for (g, mult) in squarefree(ctx, &self.monic(ctx))? {
            for (h, d) in distinct_degree(ctx, &g)? {
                for irr in equal_degree(ctx, &h, d, &mut rng)? {
                    out.push((irr, mult));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Distinct roots in the field of `ctx`, in scan order.
    pub fn roots(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic(ctx);
        let x = Poly::x();
        let xq = x.powmod(ctx, ctx.q() as u64, &f).expect("nonzero");
        let g = xq.sub(ctx, &x).gcd(ctx, &f).expect("nonzero");
        if g.is_one() {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut r: Vec<FieldElem> = equal_degree(ctx, &g, 1, &mut rng)
            .expect("split of a product of distinct linears")
            .into_iter()
            .map(|l| ctx.neg(l.coeff(0)))
            .collect();
        r.sort();
        r
    }

    /// Roots lying in the degree-`m` extension, as elements of its big field.
    pub fn roots_in_extension(
        &self,
        ctx: &FieldCtx,
        m: usize,
    ) -> Result<(Arc<Extension>, Vec<FieldElem>)> {
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let ext = ctx.extension(m)?;
        let roots = ext.embed_poly(self).roots(ext.big());
        Ok((ext, roots))
    }

    /// Comma-separated element literals, ascending; `0` for the zero polynomial.
    pub fn to_literal(&self, ctx: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.c
            .iter()
            .map(|&a| ctx.format_elem(a))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Poly> {
        let parts = split_top_level(s);
        if parts.iter().all(|p| p.trim().is_empty()) {
            return Err(Error::Parse(format!("empty polynomial literal {s:?}")));
        }
        Ok(Poly::new(
            parts
                .iter()
                .map(|p| ctx.parse_elem(p))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Conventional notation such as `X^3+2X+1`; coefficients use `format`.
    pub fn display_with(&self, format: impl Fn(FieldElem) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let coef = format(a);
            let coef = if i > 0 && a == FieldElem::ONE {
                String::new()
            } else if i > 0 && coef.contains('+') {
                format!("({coef})")
            } else {
                coef
            };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}X"),
                _ => format!("{coef}X^{i}"),
            });
        }
        terms.join("+")
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        self.display_with(|a| ctx.format_elem(a))
    }
}

/// Splits on commas that are not inside brackets.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn pth_root(ctx: &FieldCtx, f: &Poly) -> Poly {
    let p = ctx.p() as usize;
    let e = (ctx.q() / ctx.p()) as u64;
    Poly::new(
        f.c.iter()
            .step_by(p)
            .map(|&a| ctx.powu(a, e))
            .collect(),
    )
}

fn squarefree(ctx: &FieldCtx, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let mut c = f.gcd(ctx, &f.derivative(ctx))?;
    let mut w = f.div_exact(ctx, &c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(ctx, &c)?;
        let z = w.div_exact(ctx, &y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(ctx, &w)?;
    }
    if !c.is_one() {
        let p = ctx.p() as usize;
        for (g, k) in squarefree(ctx, &pth_root(ctx, &c))? {
            out.push((g, k * p));
        }
    }
    Ok(out)
}

fn distinct_degree(ctx: &FieldCtx, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let x = Poly::x();
    let mut g = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(ctx, ctx.q() as u64, &g)?;
        let d = h.sub(ctx, &x).gcd(ctx, &g)?;
        if !d.is_one() {
            g = g.div_exact(ctx, &d)?;
            h = h.rem(ctx, &g)?;
            out.push((d, i));
        }
        i += 1;
    }
    if let Some(d) = g.degree() {
        if d > 0 {
            out.push((g, d));
        }
    }
    Ok(out)
}

fn random_poly(ctx: &FieldCtx, deg_bound: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(
        (0..deg_bound)
            .map(|_| FieldElem::from_index(rng.gen_range(0..ctx.q())))
            .collect(),
    )
}

fn equal_degree(
    ctx: &FieldCtx,
    f: &Poly,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    loop {
        let a = random_poly(ctx, n, rng);
        if a.is_constant() {
            continue;
        }
        let g = a.gcd(ctx, f)?;
        let candidate = if !g.is_one() {
            g
        } else if ctx.p() == 2 {
            // Trace map a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..(ctx.n() as usize * d) {
                t = t.mul(ctx, &t).rem(ctx, f)?;
                acc = acc.add(ctx, &t);
            }
            acc.gcd(ctx, f)?
        } else {
            // a^((q^d - 1)/2) = (∏_{i<d} a^(q^i))^((q-1)/2)
            let mut t = a.rem(ctx, f)?;
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(ctx, ctx.q() as u64, f)?;
                norm = norm.mul(ctx, &t).rem(ctx, f)?;
            }
            let b = norm.powmod(ctx, (ctx.q() as u64 - 1) / 2, f)?;
            b.sub(ctx, &Poly::one()).gcd(ctx, f)?
        };
        let k = candidate.degree().unwrap_or(0);
        if k > 0 && k < n {
            let rest = f.div_exact(ctx, &candidate)?;
            let mut out = equal_degree(ctx, &candidate, d, rng)?;
            out.extend(equal_degree(ctx, &rest, d, rng)?);
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn fq(p: u64, n: usize) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    fn pi(ctx: &FieldCtx, c: &[i64]) -> Poly {
        Poly::from_ints(ctx, c)
    }

    fn product(ctx: &FieldCtx, fs: &[(Poly, usize)]) -> Poly {
        fs.iter()
            .fold(Poly::one(), |acc, (g, k)| acc.mul(ctx, &g.pow(ctx, *k)))
    }

    #[test]
    fn gcd_examples() {
        let f5 = fq(5, 1);
        assert_eq!(
            pi(&f5, &[-1, 0, 1]).gcd(&f5, &pi(&f5, &[-1, 1])).unwrap(),
            pi(&f5, &[-1, 1])
        );
        let f = pi(&f5, &[2, 0, 4]);
        assert_eq!(f.gcd(&f5, &Poly::zero()).unwrap(), f.monic(&f5));
        assert_eq!(Poly::zero().gcd(&f5, &Poly::zero()), Err(Error::BothZero));
        let f7 = fq(7, 1);
        assert_eq!(
            pi(&f7, &[1, 0, 0, 1]).gcd(&f7, &pi(&f7, &[1, 1])).unwrap(),
            pi(&f7, &[1, 1])
        );
    }

    #[test]
    fn resultant_examples() {
        let f7 = fq(7, 1);
        for a in 0..7 {
            for b in 0..7 {
                let r = pi(&f7, &[-a, 1]).resultant(&f7, &pi(&f7, &[-b, 1])).unwrap();
                assert_eq!(r, f7.from_int(a - b));
            }
        }
        let f5 = fq(5, 1);
        assert_eq!(
            pi(&f5, &[1, 0, 1]).resultant(&f5, &Poly::x()).unwrap(),
            FieldElem::ONE
        );
        let u = 3i64;
        let lhs = pi(&f7, &[-u * u * u, 0, 0, 1])
            .resultant(&f7, &pi(&f7, &[-u, 2 * (u - 1), 1]))
            .unwrap();
        assert_eq!(lhs, f7.from_int(9 * (u - 1) * u * u * u * (1 - u + u * u)));
        assert_eq!(Poly::zero().resultant(&f5, &Poly::x()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        let f7 = fq(7, 1);
        for b in 0..7 {
            for c in 0..7 {
                let d = pi(&f7, &[c, b, 1]).discriminant(&f7).unwrap();
                assert_eq!(d, f7.from_int(b * b - 4 * c));
            }
        }
        let f5 = fq(5, 1);
        // G_{-3,1} = X^4 - 2X^3 + 3X^2 - 2X + 1
        assert!(pi(&f5, &[1, -2, 3, -2, 1]).discriminant(&f5).unwrap().is_zero());
        assert_eq!(
            Poly::constant(FieldElem::ONE).discriminant(&f5),
            Err(Error::ConstantPolynomial)
        );
        let f3 = fq(3, 1);
        assert!(pi(&f3, &[1, 0, 0, 1]).discriminant(&f3).unwrap().is_zero());
        // cubic X^3 + aX + b: -4a^3 - 27b^2
        let f11 = fq(11, 1);
        for a in 0..11 {
            for b in 0..11 {
                let d = pi(&f11, &[b, a, 0, 1]).discriminant(&f11).unwrap();
                assert_eq!(d, f11.from_int(-4 * a * a * a - 27 * b * b));
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f5 = fq(5, 1);
        let g = pi(&f5, &[1, -2, 3, -2, 1]);
        assert_eq!(g.factor(&f5).unwrap(), vec![(pi(&f5, &[1, 4, 1]), 2)]);
        for (p, n) in [(2, 1), (3, 1), (5, 1), (4, 1)] {
            let ctx = if p == 4 { fq(2, 2) } else { fq(p, n) };
            let x3 = Poly::monomial(FieldElem::ONE, 3);
            assert_eq!(x3.factor(&ctx).unwrap(), vec![(Poly::x(), 3)]);
        }
        // G_{1,2} = X^4 - 2X^3 - X^2 - 4X + 2 over F_5
        let g12 = pi(&f5, &[2, -4, -1, -2, 1]);
        assert_eq!(
            g12.factor(&f5).unwrap(),
            vec![(pi(&f5, &[-2, 1]), 2), (pi(&f5, &[3, 2, 1]), 1)]
        );
        assert_eq!(Poly::one().factor(&f5), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn factor_handles_pth_powers() {
        let f3 = fq(3, 2);
        let a = f3.generator();
        let base = Poly::new(vec![a, FieldElem::ONE, FieldElem::ONE]);
        let f = base.pow(&f3, 3).mul(&f3, &Poly::linear(&f3, a).pow(&f3, 4));
        let fs = f.factor(&f3).unwrap();
        assert_eq!(product(&f3, &fs), f.monic(&f3));
        for (g, _) in &fs {
            assert!(g.is_irreducible(&f3));
        }
    }

    #[test]
    fn roots_examples() {
        let f5 = fq(5, 1);
        assert_eq!(
            pi(&f5, &[1, 0, 1]).roots(&f5),
            vec![f5.from_int(2), f5.from_int(3)]
        );
        let (ext, r) = pi(&f5, &[3, 2, 1]).roots_in_extension(&f5, 2).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(ext.big().powu(r[0], 5), r[1]);
        assert!(r.iter().all(|&x| ext.restrict(x).is_none()));
        let (_, r1) = pi(&f5, &[3, 2, 1]).roots_in_extension(&f5, 1).unwrap();
        assert!(r1.is_empty());
        assert_eq!(pi(&f5, &[-3, 1]).roots(&f5), vec![f5.from_int(3)]);
        assert!(pi(&f5, &[1, 1]).roots_in_extension(&f5, 5).is_err());
    }

    #[test]
    fn literal_roundtrip() {
        let f9 = fq(3, 2);
        let f = Poly::parse(&f9, "[1,2],0,2,1").unwrap();
        assert_eq!(f.degree(), Some(3));
        assert_eq!(f.to_literal(&f9), "[1,2],[0,0],[2,0],[1,0]");
        assert_eq!(Poly::parse(&f9, &f.to_literal(&f9)).unwrap(), f);
        let f7 = fq(7, 1);
        assert_eq!(pi(&f7, &[1, 0, 2, 1]).display(&f7), "X^3+2X^2+1");
    }

    #[test]
    fn ordering_is_degree_then_top_coefficients() {
        let f5 = fq(5, 1);
        let mut v = vec![pi(&f5, &[0, 0, 1]), pi(&f5, &[4, 1]), pi(&f5, &[1, 1]), pi(&f5, &[0, 1, 1])];
        v.sort();
        assert_eq!(
            v,
            vec![pi(&f5, &[1, 1]), pi(&f5, &[4, 1]), pi(&f5, &[0, 0, 1]), pi(&f5, &[0, 1, 1])]
        );
    }

    fn quartic_pattern(ctx: &FieldCtx, f: &Poly) -> Vec<(usize, usize)> {
        let mut pat: Vec<(usize, usize)> = f
            .factor(ctx)
            .unwrap()
            .into_iter()
            .map(|(g, k)| (g.degree().unwrap(), k))
            .collect();
        pat.sort();
        pat
    }

    #[test]
    fn quartic_discriminant_square_class_matches_factor_pattern() {
        for p in [5u64, 7] {
            let ctx = fq(p, 1);
            let q = p as i64;
            for idx in 0..q.pow(4) {
                let c: Vec<i64> = (0..4).map(|k| (idx / q.pow(k)) % q).chain([1]).collect();
                let f = pi(&ctx, &c);
                let d = f.discriminant(&ctx).unwrap();
                let pat = quartic_pattern(&ctx, &f);
                let sqf = pat.iter().all(|&(_, k)| k == 1);
                assert_eq!(d.is_zero(), !sqf, "{c:?}");
                if d.is_zero() {
                    continue;
                }
                let degs: Vec<usize> = pat.iter().map(|&(d, _)| d).collect();
                let nonsquare = degs == [4] || degs == [1, 1, 2];
                assert_eq!(!ctx.is_square(d).unwrap(), nonsquare, "{c:?}");
            }
        }
    }

    #[test]
    fn irreducible_discriminant_parity() {
        let f5 = fq(5, 1);
        for deg in 2..=4usize {
            for idx in 0..5i64.pow(deg as u32) {
                let c: Vec<i64> = (0..deg as u32).map(|k| (idx / 5i64.pow(k)) % 5).chain([1]).collect();
                let f = pi(&f5, &c);
                if !f.is_irreducible(&f5) {
                    continue;
                }
                let sq = f5.is_square(f.discriminant(&f5).unwrap()).unwrap();
                assert_eq!(sq, deg % 2 == 1);
            }
        }
    }

    #[test]
    fn product_discriminant_law_f7() {
        let f7 = fq(7, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let da = rng.gen_range(1..5);
            let db = rng.gen_range(1..5);
            let mut f = random_poly(&f7, da, &mut rng).coeffs().to_vec();
            f.resize(da, FieldElem::ZERO);
            f.push(FieldElem::ONE);
            let mut g = random_poly(&f7, db, &mut rng).coeffs().to_vec();
            g.resize(db, FieldElem::ZERO);
            g.push(FieldElem::ONE);
            let (f, g) = (Poly::new(f), Poly::new(g));
            let lhs = f.mul(&f7, &g).discriminant(&f7).unwrap();
            let r = f.resultant(&f7, &g).unwrap();
            let rhs = f7.mul(
                f7.mul(f.discriminant(&f7).unwrap(), g.discriminant(&f7).unwrap()),
                f7.mul(r, r),
            );
            assert_eq!(lhs, rhs);
        }
    }

    fn field_strategy() -> impl Strategy<Value = (u64, usize)> {
        prop::sample::select(vec![(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (5, 2), (3, 3)])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn factor_multiplies_back((p, n) in field_strategy(), seed in any::<u64>(), deg in 1usize..=4) {
            let ctx = fq(p, n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut c = random_poly(&ctx, deg, &mut rng).coeffs().to_vec();
            c.resize(deg, FieldElem::ZERO);
            c.push(FieldElem::from_index(rng.gen_range(1..ctx.q())));
            let f = Poly::new(c);
            let fs = f.factor(&ctx).unwrap();
            prop_assert_eq!(product(&ctx, &fs), f.monic(&ctx));
            for (g, _) in &fs {
                prop_assert!(g.is_irreducible(&ctx));
                prop_assert!(g.is_monic());
            }
            let sqf = fs.iter().all(|&(_, k)| k == 1);
            prop_assert_eq!(f.discriminant(&ctx).unwrap().is_zero(), !sqf);
            for r in f.roots(&ctx) {
                prop_assert!(f.eval(&ctx, r).is_zero());
            }
            let linear = fs.iter().filter(|(g, _)| g.degree() == Some(1)).count();
            prop_assert_eq!(f.roots(&ctx).len(), linear);
        }

        #[test]
        fn divrem_reconstructs((p, n) in field_strategy(), seed in any::<u64>()) {
            let ctx = fq(p, n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_poly(&ctx, 7, &mut rng);
            let b = random_poly(&ctx, 4, &mut rng);
            prop_assume!(!b.is_zero());
            let (qq, r) = a.divrem(&ctx, &b).unwrap();
            prop_assert_eq!(qq.mul(&ctx, &b).add(&ctx, &r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
