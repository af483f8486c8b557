//! The Class III normal form `f_{s,t} = (X³+sX+t)/(X(X−1))`, its critical
//! quartic `G_{s,t}`, subclasses, and the invariants θ, λ and μ².

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;
use crate::projline::{cross_ratio, Moebius, ProjPoint};
use crate::ramify::{ram_points_from, type_of, RamType};
use crate::ratfun::{CoarseClass, RatFun};

/// A point of `Ω = {(s,t) : t(1+s+t) ≠ 0}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FstParams {
    pub s: FieldElem,
    pub t: FieldElem,
}

impl FstParams {
    pub fn new(ctx: &FieldCtx, s: FieldElem, t: FieldElem) -> Result<Self> {
        if in_omega(ctx, s, t) {
            Ok(FstParams { s, t })
        } else {
            Err(Error::OutsideOmega)
        }
    }

    pub fn from_ints(ctx: &FieldCtx, s: i64, t: i64) -> Result<Self> {
        FstParams::new(ctx, ctx.from_int(s), ctx.from_int(t))
    }

    /// `f_{s,t}` itself.
    pub fn ratfun(&self, ctx: &FieldCtx) -> RatFun {
        RatFun::new(ctx, self.numerator(), Poly::from_ints(ctx, &[0, -1, 1]))
            .expect("Ω keeps numerator and denominator coprime")
    }

    /// `X³ + sX + t`.
    pub fn numerator(&self) -> Poly {
        Poly::new(vec![self.t, self.s, FieldElem::ZERO, FieldElem::ONE])
    }

    /// `1 + s + t`.
    pub fn one_s_t(&self, ctx: &FieldCtx) -> FieldElem {
        ctx.add(ctx.one(), ctx.add(self.s, self.t))
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        format!("({}, {})", ctx.format_elem(self.s), ctx.format_elem(self.t))
    }
}

fn in_omega(ctx: &FieldCtx, s: FieldElem, t: FieldElem) -> bool {
    !t.is_zero() && !ctx.add(ctx.one(), ctx.add(s, t)).is_zero()
}

/// Ω in scan order: `s` outer, `t` inner.
pub fn omega(ctx: &FieldCtx) -> Vec<FstParams> {
    let mut out = Vec::new();
    for s in ctx.elements() {
        for t in ctx.nonzero_elements() {
            if in_omega(ctx, s, t) {
                out.push(FstParams { s, t });
            }
        }
    }
    out
}

/// `G_{s,t} = X⁴ − 2X³ − sX² − 2tX + t`.
pub fn g_quartic(ctx: &FieldCtx, sp: FstParams) -> Poly {
    let two = ctx.from_int(2);
    Poly::new(vec![
        sp.t,
        ctx.neg(ctx.mul(two, sp.t)),
        ctx.neg(sp.s),
        ctx.neg(two),
        ctx.one(),
    ])
}

/// `(a, b)` with `a ≠ b`, `t = −a²b`, `s = −2a − b + a² + 2ab` when `f_{s,t}`
/// has a fiber of size 2; the scan-least suitable root `a` of `G_{s,t}`.
pub fn class2_witness(ctx: &FieldCtx, sp: FstParams) -> Option<(FieldElem, FieldElem)> {
    let mt = ctx.neg(sp.t);
    g_quartic(ctx, sp)
        .roots(ctx)
        .into_iter()
        .find(|&x| ctx.powu(x, 3) != mt)
        .map(|a| {
            let b = ctx.div(mt, ctx.square(a)).expect("t ≠ 0 forces a ≠ 0");
            (a, b)
        })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subclass {
    IIEscape,
    IIIa,
    IIIb,
    IIIc,
    IIId,
}

impl fmt::Display for Subclass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subclass::IIEscape => "II-escape",
            Subclass::IIIa => "III-a",
            Subclass::IIIb => "III-b",
            Subclass::IIIc => "III-c",
            Subclass::IIId => "III-d",
        })
    }
}

pub fn subclass(ctx: &FieldCtx, sp: FstParams) -> Subclass {
    if class2_witness(ctx, sp).is_some() {
        return Subclass::IIEscape;
    }
    let fac = g_quartic(ctx, sp).factor(ctx).expect("G is monic of degree 4");
    let degs: Vec<(usize, usize)> = fac
        .iter()
        .map(|(g, e)| (g.degree().expect("nonconstant"), *e))
        .collect();
    match degs.as_slice() {
        [(4, 1)] => Subclass::IIIa,
        [(2, 1), (2, 1)] => Subclass::IIIb,
        [(2, 2)] => Subclass::IIIc,
        _ if degs.iter().any(|&(d, _)| d == 1) => Subclass::IIId,
        _ => unreachable!("quartic factor pattern {degs:?} without F_q roots"),
    }
}

/// `θ = s³ / (t(1+s+t))`.
pub fn theta(ctx: &FieldCtx, sp: FstParams) -> FieldElem {
    let den = ctx.mul(sp.t, sp.one_s_t(ctx));
    ctx.div(ctx.powu(sp.s, 3), den).expect("Ω")
}

/// `D(G_{s,t}) = 16 t² (1+s+t)² (θ − 27)`.
pub fn disc_identity_check(ctx: &FieldCtx, sp: FstParams) -> bool {
    let d = g_quartic(ctx, sp).discriminant(ctx).expect("nonconstant");
    let u = ctx.mul(sp.t, sp.one_s_t(ctx));
    let rhs = ctx.mul(
        ctx.mul(ctx.from_int(16), ctx.square(u)),
        ctx.sub(theta(ctx, sp), ctx.from_int(27)),
    );
    d == rhs
}

/// `G_{s,t} = (X² + a₁X + a₀)(X² + b₁X + b₀)` with both factors irreducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct QuadPair {
    pub a0: FieldElem,
    pub a1: FieldElem,
    pub b0: FieldElem,
    pub b1: FieldElem,
}

impl QuadPair {
    pub fn first(&self) -> Poly {
        Poly::new(vec![self.a0, self.a1, FieldElem::ONE])
    }

    pub fn second(&self) -> Poly {
        Poly::new(vec![self.b0, self.b1, FieldElem::ONE])
    }
}

pub fn quad_pair(ctx: &FieldCtx, sp: FstParams) -> Result<QuadPair> {
    let sc = subclass(ctx, sp);
    if sc != Subclass::IIIb {
        return Err(Error::WrongClass(format!("expected III-b, found {sc}")));
    }
    let mut fac = g_quartic(ctx, sp).factor(ctx)?;
    fac.sort_by_key(|(g, _)| (g.coeff(0), g.coeff(1)));
    let (a, b) = (&fac[0].0, &fac[1].0);
    let qp = QuadPair {
        a0: a.coeff(0),
        a1: a.coeff(1),
        b0: b.coeff(0),
        b1: b.coeff(1),
    };
    let two = ctx.from_int(2);
    let d = ctx.add(ctx.mul(two, qp.a0), qp.a1);
    let b0 = ctx
        .div(ctx.mul(qp.a0, ctx.add(two, qp.a1)), d)
        .ok_or_else(|| Error::Internal("2a₀ + a₁ vanishes on a III-b factor".into()))?;
    let b1 = ctx.sub(ctx.neg(two), qp.a1);
    if b0 != qp.b0 || b1 != qp.b1 {
        return Err(Error::Internal(format!(
            "quadratic factors of G at {} violate the cofactor relation",
            sp.format(ctx)
        )));
    }
    Ok(qp)
}

/// `M(X,Y) = (Y² − 4X)(2 + 2X + Y) / (Y (2+Y) (2X+Y))`.
pub fn m_value(ctx: &FieldCtx, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
    let two = ctx.from_int(2);
    let num = ctx.mul(
        ctx.sub(ctx.square(y), ctx.mul(ctx.from_int(4), x)),
        ctx.add(ctx.add(two, ctx.mul(two, x)), y),
    );
    let den = ctx.mul(
        ctx.mul(y, ctx.add(two, y)),
        ctx.add(ctx.mul(two, x), y),
    );
    ctx.div(num, den).ok_or(Error::DivisionByZero)
}

pub fn mu_squared(ctx: &FieldCtx, qp: &QuadPair) -> Result<FieldElem> {
    m_value(ctx, qp.a0, qp.a1)
}

/// `C(ρ₁, ρ₁^q, ρ₂, ρ₂^q) + C(…)⁻¹` over the four critical points.
pub fn lambda_cr(ctx: &FieldCtx, sp: FstParams) -> Result<FieldElem> {
    let qp = quad_pair(ctx, sp)?;
    let (ext, r1) = qp.first().roots_in_extension(ctx, 2)?;
    let (_, r2) = qp.second().roots_in_extension(ctx, 2)?;
    let big = ext.big();
    let (Some(&x1), Some(&x2)) = (r1.first(), r2.first()) else {
        return Err(Error::Internal("quadratic without roots in F_q²".into()));
    };
    let q = ctx.q() as u64;
    let pts = [x1, big.powu(x1, q), x2, big.powu(x2, q)].map(ProjPoint::Finite);
    let c = cross_ratio(big, pts)?;
    let lam = big.add(c, big.inv(c).ok_or(Error::DivisionByZero)?);
    ext.restrict(lam)
        .ok_or_else(|| Error::Internal("λ is not Frobenius-fixed".into()))
}

/// `2(9 − 2m + m²) / ((m − 1)(m − 9))`.
pub fn lambda_from_mu2(ctx: &FieldCtx, m: FieldElem) -> Result<FieldElem> {
    let c = |k| ctx.from_int(k);
    let num = ctx.mul(c(2), ctx.add(ctx.sub(c(9), ctx.mul(c(2), m)), ctx.square(m)));
    let den = ctx.mul(ctx.sub(m, c(1)), ctx.sub(m, c(9)));
    ctx.div(num, den)
        .ok_or_else(|| Error::Excluded("μ² ∈ {1, 9}".into()))
}

/// `27 + m (m − 9)² / (m − 1)²`.
pub fn theta_from_mu2(ctx: &FieldCtx, m: FieldElem) -> Result<FieldElem> {
    let c = |k| ctx.from_int(k);
    if m.is_zero() || m == c(9) {
        return Err(Error::Excluded("μ² ∈ {0, 9}".into()));
    }
    let frac = ctx
        .div(
            ctx.mul(m, ctx.square(ctx.sub(m, c(9)))),
            ctx.square(ctx.sub(m, c(1))),
        )
        .ok_or_else(|| Error::Excluded("μ² = 1".into()))?;
    Ok(ctx.add(c(27), frac))
}

/// Images of `(s,t)` under the stabilizer of `{0,1,∞}`, listed in the same
/// order as [`crate::projline::s3_stabilizer`].
pub fn s3_images(ctx: &FieldCtx, sp: FstParams) -> [FstParams; 6] {
    let (s, t) = (sp.s, sp.t);
    let u = sp.one_s_t(ctx);
    let d = |a, b| ctx.div(a, b).expect("Ω");
    let one = ctx.one();
    let raw = [
        (s, t),
        (s, ctx.neg(u)),
        (d(s, t), d(one, t)),
        (d(s, t), ctx.neg(d(u, t))),
        (ctx.neg(d(s, u)), ctx.neg(d(t, u))),
        (ctx.neg(d(s, u)), ctx.neg(d(one, u))),
    ];
    raw.map(|(s, t)| FstParams::new(ctx, s, t).expect("the stabilizer preserves Ω"))
}

/// The distinct members of [`s3_images`], first occurrence kept.
pub fn s3_orbit(ctx: &FieldCtx, sp: FstParams) -> Vec<FstParams> {
    let mut out: Vec<FstParams> = Vec::with_capacity(6);
    for x in s3_images(ctx, sp) {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// `(3(u² − u), −u³)`, whose quartic is `(X − u)²(X² + 2(u−1)X − u)`.
pub fn class3d_params(ctx: &FieldCtx, u: FieldElem) -> Result<FstParams> {
    if u.is_zero() || u == ctx.one() {
        return Err(Error::Excluded("u ∈ {0, 1}".into()));
    }
    let s = ctx.mul(ctx.from_int(3), ctx.sub(ctx.square(u), u));
    let t = ctx.neg(ctx.powu(u, 3));
    FstParams::new(ctx, s, t)
}

/// `(¾(u² − 1), −(1+u)³/8)`, a parametrization of the θ = 27 fiber apart
/// from `(−3, 1)`. Characteristic ≥ 5.
pub fn theta27_params(ctx: &FieldCtx, u: FieldElem) -> Result<FstParams> {
    if ctx.p() < 5 {
        return Err(Error::Excluded("characteristic below 5".into()));
    }
    let one = ctx.one();
    if u == one || u == ctx.neg(one) {
        return Err(Error::Excluded("u = ±1".into()));
    }
    let s = ctx.mul(
        ctx.div(ctx.from_int(3), ctx.from_int(4)).expect("p ≥ 5"),
        ctx.sub(ctx.square(u), one),
    );
    let t = ctx.neg(
        ctx.div(ctx.powu(ctx.add(one, u), 3), ctx.from_int(8))
            .expect("p ≥ 5"),
    );
    FstParams::new(ctx, s, t)
}

/// Normal form of a Class III function: move the scan-least value with
/// three preimages to `∞` and the sorted preimages to `0, 1, ∞`.
pub fn to_fst(ctx: &FieldCtx, f: &RatFun) -> Result<FstParams> {
    let class = f.coarse_class(ctx)?;
    if class != CoarseClass::III {
        return Err(Error::WrongClass(format!("expected III, found {class}")));
    }
    let (alpha, pre) = f
        .fibers(ctx)
        .into_iter()
        .find(|(_, v)| v.len() == 3)
        .expect("Class III has a full fiber");
    to_fst_with(ctx, f, alpha, [pre[0], pre[1], pre[2]])
}

/// [`to_fst`] with an explicit full fiber `f⁻¹(alpha)` listed in the order
/// that is sent to `0, 1, ∞`.
pub fn to_fst_with(
    ctx: &FieldCtx,
    f: &RatFun,
    alpha: ProjPoint,
    pre: [ProjPoint; 3],
) -> Result<FstParams> {
    let g = match alpha {
        ProjPoint::Infinity => f.clone(),
        ProjPoint::Finite(a) => {
            f.post_compose(ctx, &Moebius::new(ctx, ctx.zero(), ctx.one(), ctx.one(), ctx.neg(a))?)
        }
    };
    let phi = Moebius::from_three(ctx, pre[0], pre[1], pre[2])?;
    let h = g.pre_compose(ctx, &phi);
    if h.den() != &Poly::from_ints(ctx, &[0, -1, 1]) || h.num().degree() != Some(3) {
        return Err(Error::Internal(format!(
            "poles of the normalized map are not 0, 1, ∞: {}",
            h.display(ctx)
        )));
    }
    let num = h.num().monic(ctx);
    let c2 = num.coeff(2);
    let s = ctx.add(num.coeff(1), c2);
    FstParams::new(ctx, s, num.coeff(0))
}

/// Ramification type of `f_{s,t}`, reading critical points off `G_{s,t}`.
pub fn fst_ram_type(ctx: &FieldCtx, sp: FstParams) -> Result<RamType> {
    let f = sp.ratfun(ctx);
    Ok(type_of(&ram_points_from(ctx, &f, &g_quartic(ctx, sp))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::{enumerate_pgl, s3_stabilizer};
    use crate::ramify::ram_type;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn f27() -> FieldCtx {
        FieldCtx::new(3, 3, Some(&[1, 2, 0, 1])).unwrap()
    }

    fn f25() -> FieldCtx {
        FieldCtx::new(5, 2, Some(&[1, 1, 1])).unwrap()
    }

    fn st(ctx: &FieldCtx, s: i64, t: i64) -> FstParams {
        FstParams::from_ints(ctx, s, t).unwrap()
    }

    #[test]
    fn omega_membership() {
        let f5 = fp(5);
        assert_eq!(FstParams::from_ints(&f5, 1, 0), Err(Error::OutsideOmega));
        assert_eq!(FstParams::from_ints(&f5, 3, 1), Err(Error::OutsideOmega));
        assert_eq!(omega(&f5).len(), 5 * 4 - 4);
        assert_eq!(omega(&f5)[0], st(&f5, 0, 1));
    }

    #[test]
    fn quartic_examples() {
        let f5 = fp(5);
        let sq = Poly::from_ints(&f5, &[1, -1, 1]).pow(&f5, 2);
        assert_eq!(g_quartic(&f5, st(&f5, -3, 1)), sq);
        assert_eq!(g_quartic(&f5, st(&f5, 1, 2)), Poly::from_ints(&f5, &[2, 1, 4, 3, 1]));
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let a = f4.generator();
        let sp = FstParams::new(&f4, f4.zero(), a).unwrap();
        assert_eq!(g_quartic(&f4, sp), Poly::new(vec![a, f4.zero(), f4.zero(), f4.zero(), f4.one()]));
    }

    #[test]
    fn quartic_is_the_wronskian() {
        let f7 = fp(7);
        for sp in omega(&f7) {
            let w = sp.ratfun(&f7).wronskian(&f7);
            assert_eq!(w, g_quartic(&f7, sp));
        }
    }

    #[test]
    fn witness_examples() {
        let f7 = fp(7);
        let (a, b) = class2_witness(&f7, st(&f7, 2, 2)).unwrap();
        assert_eq!((a, b), (f7.from_int(2), f7.from_int(3)));
        let f5 = fp(5);
        assert_eq!(class2_witness(&f5, st(&f5, -3, 1)), None);
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(class2_witness(&f4, st(&f4, 1, 1)), None);
    }

    #[test]
    fn witness_reconstructs_parameters() {
        for p in [5, 7, 11] {
            let ctx = fp(p);
            for sp in omega(&ctx) {
                if let Some((a, b)) = class2_witness(&ctx, sp) {
                    assert_ne!(a, b);
                    let t = ctx.neg(ctx.mul(ctx.square(a), b));
                    let two = ctx.from_int(2);
                    let s = ctx.add(
                        ctx.sub(ctx.neg(ctx.mul(two, a)), b),
                        ctx.add(ctx.square(a), ctx.mul(two, ctx.mul(a, b))),
                    );
                    assert_eq!((s, t), (sp.s, sp.t));
                }
            }
        }
    }

    #[test]
    fn subclass_examples() {
        let f5 = fp(5);
        assert_eq!(subclass(&f5, st(&f5, -3, 1)), Subclass::IIIc);
        assert_eq!(subclass(&f5, st(&f5, 1, 2)), Subclass::IIId);
        let f3 = fp(3);
        assert_eq!(subclass(&f3, st(&f3, 0, 1)), Subclass::IIId);
        let f7 = fp(7);
        assert_eq!(subclass(&f7, st(&f7, 2, 2)), Subclass::IIEscape);
    }

    #[test]
    fn subclass_agrees_with_value_profile() {
        for p in [3, 5, 7, 11, 13] {
            let ctx = fp(p);
            for sp in omega(&ctx) {
                let escaped = subclass(&ctx, sp) == Subclass::IIEscape;
                let class = sp.ratfun(&ctx).coarse_class(&ctx).unwrap();
                assert_eq!(escaped, class == CoarseClass::II, "{}", sp.format(&ctx));
            }
        }
    }

    #[test]
    fn theta_examples() {
        let f5 = fp(5);
        assert_eq!(theta(&f5, st(&f5, -3, 1)), f5.from_int(27));
        assert_eq!(theta(&f5, st(&f5, 0, 3)), f5.zero());
        let f = f27();
        let a2 = f.parse_elem("[0,0,1]").unwrap();
        let sp = FstParams::new(&f, a2, a2).unwrap();
        assert_eq!(f.format_alpha(theta(&f, sp)), "2+α+2α^2");
    }

    #[test]
    fn discriminant_identity() {
        for p in [5, 7, 11, 13] {
            let ctx = fp(p);
            for sp in omega(&ctx) {
                assert!(disc_identity_check(&ctx, sp), "{}", sp.format(&ctx));
            }
        }
        let f5 = fp(5);
        let sp = st(&f5, -3, 1);
        assert!(g_quartic(&f5, sp).discriminant(&f5).unwrap().is_zero());
    }

    #[test]
    fn m_examples() {
        let f7 = fp(7);
        assert_eq!(m_value(&f7, f7.one(), f7.one()).unwrap(), f7.from_int(3));
        assert_eq!(m_value(&f7, f7.one(), f7.zero()), Err(Error::DivisionByZero));
        let f = f25();
        let a = f.generator();
        let s = f.add(f.from_int(2), f.mul(f.from_int(4), a));
        let sp = FstParams::new(&f, s, a).unwrap();
        let qp = quad_pair(&f, sp).unwrap();
        assert_eq!(mu_squared(&f, &qp).unwrap(), a);
    }

    #[test]
    fn quad_pair_relations() {
        for ctx in [fp(7), fp(11), fp(13), f25()] {
            let mut seen = 0;
            for sp in omega(&ctx) {
                if subclass(&ctx, sp) != Subclass::IIIb {
                    assert!(quad_pair(&ctx, sp).is_err());
                    continue;
                }
                seen += 1;
                let qp = quad_pair(&ctx, sp).unwrap();
                let s = ctx.sub(
                    ctx.neg(ctx.add(qp.a0, qp.b0)),
                    ctx.mul(qp.a1, qp.b1),
                );
                assert_eq!((s, ctx.mul(qp.a0, qp.b0)), (sp.s, sp.t));
                assert_eq!(qp.b1, ctx.sub(ctx.from_int(-2), qp.a1));
                assert_eq!(
                    m_value(&ctx, qp.a0, qp.a1).unwrap(),
                    m_value(&ctx, qp.b0, qp.b1).unwrap()
                );
            }
            assert!(seen > 0);
        }
    }

    #[test]
    fn table_rows_over_f27() {
        let f = f27();
        let e = |s: &str| f.parse_elem(s).unwrap();
        let sp = FstParams::new(&f, e("[0,1,1]"), e("[0,0,1]")).unwrap();
        let m = mu_squared(&f, &quad_pair(&f, sp).unwrap()).unwrap();
        assert_eq!(f.format_alpha(m), "2+2α");
    }

    #[test]
    fn lambda_closed_form() {
        for ctx in [fp(7), fp(11), fp(13), f25(), f27()] {
            for sp in omega(&ctx) {
                if subclass(&ctx, sp) != Subclass::IIIb {
                    continue;
                }
                let m = mu_squared(&ctx, &quad_pair(&ctx, sp).unwrap()).unwrap();
                assert_eq!(lambda_cr(&ctx, sp).unwrap(), lambda_from_mu2(&ctx, m).unwrap());
                assert_eq!(theta(&ctx, sp), theta_from_mu2(&ctx, m).unwrap());
            }
        }
    }

    #[test]
    fn theta_from_mu2_examples() {
        let f7 = fp(7);
        assert_eq!(theta_from_mu2(&f7, f7.from_int(-3)).unwrap(), f7.zero());
        assert_eq!(theta_from_mu2(&f7, f7.from_int(3)).unwrap(), f7.from_int(54));
        assert!(theta_from_mu2(&f7, f7.one()).is_err());
        assert!(theta_from_mu2(&f7, f7.from_int(9)).is_err());
        assert_eq!(lambda_from_mu2(&f7, f7.from_int(3)).unwrap(), f7.from_int(-2));
        assert_eq!(lambda_from_mu2(&f7, f7.from_int(-3)).unwrap(), f7.one());
    }

    #[test]
    fn s3_examples() {
        let f7 = fp(7);
        let orb = s3_orbit(&f7, st(&f7, 2, 2));
        assert!(orb.contains(&st(&f7, 1, 4)));
        assert_eq!(s3_images(&f7, st(&f7, 2, 2))[2], st(&f7, 1, 4));
        let f5 = fp(5);
        assert!(s3_orbit(&f5, st(&f5, -3, 1)).contains(&st(&f5, 2, 1)));
        for sp in omega(&f7) {
            let th = theta(&f7, sp);
            assert!(s3_orbit(&f7, sp).iter().all(|&x| theta(&f7, x) == th));
        }
    }

    #[test]
    fn s3_images_match_pencils() {
        let f11 = fp(11);
        let stab = s3_stabilizer(&f11);
        for sp in omega(&f11) {
            let f = sp.ratfun(&f11);
            for (phi, img) in stab.iter().zip(s3_images(&f11, sp)) {
                let lhs = f.pre_compose(&f11, phi).pencil(&f11).unwrap();
                assert_eq!(lhs, img.ratfun(&f11).pencil(&f11).unwrap());
            }
        }
    }

    #[test]
    fn class3d_examples() {
        let f5 = fp(5);
        assert_eq!(class3d_params(&f5, f5.from_int(2)).unwrap(), st(&f5, 1, 2));
        assert!(class3d_params(&f5, f5.one()).is_err());
        let f7 = fp(7);
        let u = f7.elements().find(|&u| {
            f7.add(f7.sub(f7.one(), u), f7.square(u)).is_zero()
        });
        assert_eq!(class3d_params(&f7, u.unwrap()).unwrap(), st(&f7, -3, 1));
        for u in f7.elements().skip(2) {
            let sp = class3d_params(&f7, u).unwrap();
            assert!(g_quartic(&f7, sp).eval(&f7, u).is_zero());
        }
    }

    #[test]
    fn theta27_fiber() {
        for p in [5, 7, 11, 13] {
            let ctx = fp(p);
            let fiber: std::collections::BTreeSet<FstParams> = omega(&ctx)
                .into_iter()
                .filter(|&sp| theta(&ctx, sp) == ctx.from_int(27))
                .collect();
            let mut param: std::collections::BTreeSet<FstParams> = ctx
                .elements()
                .filter_map(|u| theta27_params(&ctx, u).ok())
                .collect();
            param.insert(st(&ctx, -3, 1));
            assert_eq!(fiber, param, "p = {p}");
        }
    }

    #[test]
    fn to_fst_fixes_normal_forms() {
        let f7 = fp(7);
        for sp in omega(&f7) {
            let f = sp.ratfun(&f7);
            if f.coarse_class(&f7).unwrap() != CoarseClass::III {
                assert!(to_fst(&f7, &f).is_err());
                continue;
            }
            let [z, o, inf] = [
                ProjPoint::Finite(f7.zero()),
                ProjPoint::Finite(f7.one()),
                ProjPoint::Infinity,
            ];
            assert_eq!(to_fst_with(&f7, &f, ProjPoint::Infinity, [z, o, inf]).unwrap(), sp);
        }
    }

    #[test]
    fn to_fst_theta_is_choice_free() {
        for ctx in [fp(3), fp(5), fp(7)] {
            let pgl = enumerate_pgl(&ctx);
            for sp in omega(&ctx) {
                let f = sp.ratfun(&ctx);
                if f.coarse_class(&ctx).unwrap() != CoarseClass::III {
                    continue;
                }
                let th = theta(&ctx, sp);
                for (i, phi) in pgl.iter().enumerate().step_by(7) {
                    let g = f.transform(&ctx, &pgl[(i * 5) % pgl.len()], phi);
                    for (alpha, pre) in g.fibers(&ctx) {
                        if pre.len() != 3 {
                            continue;
                        }
                        for perm in [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]] {
                            let order = perm.map(|k| pre[k]);
                            let sp2 = to_fst_with(&ctx, &g, alpha, order).unwrap();
                            assert_eq!(theta(&ctx, sp2), th);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f3_translates_of_the_wild_point() {
        let f3 = fp(3);
        let f = st(&f3, 0, 1).ratfun(&f3);
        for psi in enumerate_pgl(&f3) {
            for phi in enumerate_pgl(&f3) {
                let sp = to_fst(&f3, &f.transform(&f3, &psi, &phi)).unwrap();
                assert_eq!(theta(&f3, sp), f3.zero());
            }
        }
    }

    #[test]
    fn ram_type_via_quartic() {
        for ctx in [fp(5), fp(7), fp(3), FieldCtx::new(2, 3, None).unwrap()] {
            for sp in omega(&ctx) {
                let f = sp.ratfun(&ctx);
                assert_eq!(fst_ram_type(&ctx, sp).unwrap(), ram_type(&ctx, &f).unwrap());
            }
        }
    }
}
