//! Reduced rational functions, their pencils and value profiles.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;
use crate::projline::{all_points, Moebius, ProjPoint};

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Coarse triage by fiber sizes over `P¹(F_q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoarseClass {
    I,
    II,
    III,
}

impl fmt::Display for CoarseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoarseClass::I => "I",
            CoarseClass::II => "II",
            CoarseClass::III => "III",
        })
    }
}

impl RatFun {
    pub fn new(ctx: &FieldCtx, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ConstantFunction);
        }
        let (num, den) = if num.is_zero() {
            (num, Poly::one())
        } else {
            let g = num.gcd(ctx, &den)?;
            (num.div_exact(ctx, &g)?, den.div_exact(ctx, &g)?)
        };
        if num.is_constant() && den.is_constant() {
            return Err(Error::ConstantFunction);
        }
        let li = ctx.inv(den.lead()).expect("nonzero denominator");
        Ok(RatFun {
            num: num.scale(ctx, li),
            den: den.scale(ctx, li),
        })
    }

    /// Coefficients read in the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, num: &[i64], den: &[i64]) -> Result<Self> {
        RatFun::new(ctx, Poly::from_ints(ctx, num), Poly::from_ints(ctx, den))
    }

    /// A polynomial regarded as a rational function.
    pub fn from_poly(ctx: &FieldCtx, p: Poly) -> Result<Self> {
        RatFun::new(ctx, p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, ctx: &FieldCtx, pt: ProjPoint) -> ProjPoint {
        match pt {
            ProjPoint::Finite(x) => {
                match ctx.div(self.num.eval(ctx, x), self.den.eval(ctx, x)) {
                    Some(v) => ProjPoint::Finite(v),
                    None => ProjPoint::Infinity,
                }
            }
            ProjPoint::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                match dn.cmp(&dd) {
                    std::cmp::Ordering::Greater => ProjPoint::Infinity,
                    std::cmp::Ordering::Less => ProjPoint::Finite(FieldElem::ZERO),
                    std::cmp::Ordering::Equal => ProjPoint::Finite(
                        ctx.div(self.num.lead(), self.den.lead()).expect("monic"),
                    ),
                }
            }
        }
    }

    /// `f ∘ φ`.
    pub fn pre_compose(&self, ctx: &FieldCtx, phi: &Moebius) -> RatFun {
        let d = self.degree();
        let [a, b, c, dd] = phi.entries();
        let lin = Poly::new(vec![b, a]);
        let den_lin = Poly::new(vec![dd, c]);
        let lp: Vec<Poly> = (0..=d).map(|i| lin.pow(ctx, i)).collect();
        let mp: Vec<Poly> = (0..=d).map(|i| den_lin.pow(ctx, i)).collect();
        let sub = |f: &Poly| {
            let mut acc = Poly::zero();
            for (i, &k) in f.coeffs().iter().enumerate() {
                if !k.is_zero() {
                    acc = acc.add(ctx, &lp[i].mul(ctx, &mp[d - i]).scale(ctx, k));
                }
            }
            acc
        };
        RatFun::new(ctx, sub(&self.num), sub(&self.den)).expect("composition keeps the degree")
    }

    /// `ψ ∘ f`.
    pub fn post_compose(&self, ctx: &FieldCtx, psi: &Moebius) -> RatFun {
        let [a, b, c, d] = psi.entries();
        let num = self.num.scale(ctx, a).add(ctx, &self.den.scale(ctx, b));
        let den = self.num.scale(ctx, c).add(ctx, &self.den.scale(ctx, d));
        RatFun::new(ctx, num, den).expect("composition keeps the degree")
    }

    /// `ψ ∘ f ∘ φ`.
    pub fn transform(&self, ctx: &FieldCtx, psi: &Moebius, phi: &Moebius) -> RatFun {
        self.pre_compose(ctx, phi).post_compose(ctx, psi)
    }

    pub fn wronskian(&self, ctx: &FieldCtx) -> Poly {
        self.num
            .derivative(ctx)
            .mul(ctx, &self.den)
            .sub(ctx, &self.num.mul(ctx, &self.den.derivative(ctx)))
    }

    pub fn is_separable(&self, ctx: &FieldCtx) -> bool {
        !self.wronskian(ctx).is_zero()
    }

    pub fn pencil(&self, ctx: &FieldCtx) -> Result<Pencil> {
        if self.degree() != 3 {
            return Err(Error::WrongDegree(self.degree()));
        }
        Ok(Pencil::span(ctx, &self.num, &self.den).expect("coprime pair spans a plane"))
    }

    /// Values on `P¹(F_q)` in point order.
    pub fn values(&self, ctx: &FieldCtx) -> Vec<ProjPoint> {
        all_points(ctx).into_iter().map(|x| self.eval(ctx, x)).collect()
    }

    /// `f⁻¹(α) ∩ P¹(F_q)`, sorted.
    pub fn fiber(&self, ctx: &FieldCtx, alpha: ProjPoint) -> Vec<ProjPoint> {
        all_points(ctx)
            .into_iter()
            .filter(|&x| self.eval(ctx, x) == alpha)
            .collect()
    }

    /// All fibers, indexed by the value.
    pub fn fibers(&self, ctx: &FieldCtx) -> BTreeMap<ProjPoint, Vec<ProjPoint>> {
        let mut m: BTreeMap<ProjPoint, Vec<ProjPoint>> =
            all_points(ctx).into_iter().map(|a| (a, Vec::new())).collect();
        for x in all_points(ctx) {
            m.get_mut(&self.eval(ctx, x)).expect("all values present").push(x);
        }
        m
    }

    /// Fiber size ↦ number of values with that fiber size.
    pub fn value_profile(&self, ctx: &FieldCtx) -> BTreeMap<usize, usize> {
        let mut counts = vec![0usize; ctx.q() as usize + 1];
        for v in self.values(ctx) {
            let i = match v {
                ProjPoint::Finite(x) => x.index() as usize,
                ProjPoint::Infinity => ctx.q() as usize,
            };
            counts[i] += 1;
        }
        let mut out = BTreeMap::new();
        for c in counts {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    pub fn coarse_class(&self, ctx: &FieldCtx) -> Result<CoarseClass> {
        if self.degree() != 3 {
            return Err(Error::WrongDegree(self.degree()));
        }
        let prof = self.value_profile(ctx);
        Ok(if prof.contains_key(&2) {
            CoarseClass::II
        } else if prof.contains_key(&3) {
            CoarseClass::III
        } else {
            CoarseClass::I
        })
    }

    /// `NUM/DEN` with polynomial literals.
    pub fn to_literal(&self, ctx: &FieldCtx) -> String {
        format!("{}/{}", self.num.to_literal(ctx), self.den.to_literal(ctx))
    }

    /// Accepts `NUM/DEN` or a bare `NUM`.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => RatFun::new(ctx, Poly::parse(ctx, n)?, Poly::parse(ctx, d)?),
            None => RatFun::new(ctx, Poly::parse(ctx, s)?, Poly::one()),
        }
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        if self.den.is_one() {
            return self.num.display(ctx);
        }
        format!("({})/({})", self.num.display(ctx), self.den.display(ctx))
    }
}

/// The span of numerator and denominator, as the 2×4 reduced row echelon
/// matrix over the columns `X³, X², X, 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Pencil {
    rows: [[FieldElem; 4]; 2],
}

impl Pencil {
    /// `None` unless `p` and `q` have degree ≤ 3 and are linearly independent.
    pub fn span(ctx: &FieldCtx, p: &Poly, q: &Poly) -> Option<Pencil> {
        if p.degree().unwrap_or(0) > 3 || q.degree().unwrap_or(0) > 3 {
            return None;
        }
        let v = |f: &Poly| [f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0)];
        Pencil::from_rows(ctx, [v(p), v(q)])
    }

    /// Row-reduces two coefficient vectors (columns `X³, X², X, 1`).
    pub fn from_rows(ctx: &FieldCtx, mut m: [[FieldElem; 4]; 2]) -> Option<Pencil> {
        let mut r = 0;
        for col in 0..4 {
            if r == 2 {
                break;
            }
            let Some(piv) = (r..2).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, piv);
            let inv = ctx.inv(m[r][col]).expect("nonzero pivot");
            for x in m[r].iter_mut() {
                *x = ctx.mul(*x, inv);
            }
            let other = 1 - r;
            let k = m[other][col];
            if !k.is_zero() {
                for j in 0..4 {
                    m[other][j] = ctx.sub(m[other][j], ctx.mul(k, m[r][j]));
                }
            }
            r += 1;
        }
        (r == 2).then_some(Pencil { rows: m })
    }

    pub fn rows(&self) -> &[[FieldElem; 4]; 2] {
        &self.rows
    }

    /// Basis polynomials.
    pub fn polys(&self) -> [Poly; 2] {
        self.rows
            .map(|r| Poly::new(vec![r[3], r[2], r[1], r[0]]))
    }

    /// Whether `f` (degree ≤ 3) lies in the span.
    pub fn contains(&self, ctx: &FieldCtx, f: &Poly) -> bool {
        let v = [f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0)];
        f.degree().unwrap_or(0) <= 3 && rank3(ctx, [self.rows[0], self.rows[1], v]) == 2
    }
}

fn rank3(ctx: &FieldCtx, mut m: [[FieldElem; 4]; 3]) -> usize {
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) = (r..3).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = ctx.inv(m[r][col]).expect("nonzero pivot");
        for i in 0..3 {
            if i != r && !m[i][col].is_zero() {
                let k = ctx.mul(m[i][col], inv);
                for j in 0..4 {
                    m[i][j] = ctx.sub(m[i][j], ctx.mul(k, m[r][j]));
                }
            }
        }
        r += 1;
        if r == 3 {
            break;
        }
    }
    r
}
