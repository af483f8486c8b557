//! The projective line `P¹(F_q)`, Möbius maps and the cross ratio.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::split_top_level;

/// A point of `F_q ∪ {∞}`. Ordered by scan index with `∞` last.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum ProjPoint {
    Finite(FieldElem),
    Infinity,
}

impl ProjPoint {
    pub fn finite(self) -> Option<FieldElem> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        self == ProjPoint::Infinity
    }

    /// Homogeneous coordinates `(x : 1)` or `(1 : 0)`.
    pub fn homogeneous(self) -> (FieldElem, FieldElem) {
        match self {
            ProjPoint::Finite(x) => (x, FieldElem::ONE),
            ProjPoint::Infinity => (FieldElem::ONE, FieldElem::ZERO),
        }
    }

    pub fn from_homogeneous(ctx: &FieldCtx, x: FieldElem, y: FieldElem) -> ProjPoint {
        match ctx.div(x, y) {
            Some(v) => ProjPoint::Finite(v),
            None => ProjPoint::Infinity,
        }
    }

    pub fn format(self, ctx: &FieldCtx) -> String {
        match self {
            ProjPoint::Finite(x) => ctx.format_elem(x),
            ProjPoint::Infinity => "inf".into(),
        }
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<ProjPoint> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(ProjPoint::Infinity),
            other => ctx.parse_elem(other).map(ProjPoint::Finite),
        }
    }
}

impl From<FieldElem> for ProjPoint {
    fn from(x: FieldElem) -> Self {
        ProjPoint::Finite(x)
    }
}

/// All `q + 1` points in order.
pub fn all_points(ctx: &FieldCtx) -> Vec<ProjPoint> {
    ctx.elements()
        .map(ProjPoint::Finite)
        .chain(std::iter::once(ProjPoint::Infinity))
        .collect()
}

/// `(aX + b)/(cX + d)` with `ad - bc ≠ 0`, scaled so that the first nonzero
/// entry of `(a, b, c, d)` is 1. The derived order is lexicographic in scan
/// indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Moebius {
    a: FieldElem,
    b: FieldElem,
    c: FieldElem,
    d: FieldElem,
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.a.index(),
            self.b.index(),
            self.c.index(),
            self.d.index()
        )
    }
}

impl Moebius {
    pub fn new(ctx: &FieldCtx, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        if ctx.mul(a, d) == ctx.mul(b, c) {
            return Err(Error::DegenerateMoebius);
        }
        let lead = [a, b, c, d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonzero determinant");
        let li = ctx.inv(lead).expect("nonzero");
        Ok(Moebius {
            a: ctx.mul(a, li),
            b: ctx.mul(b, li),
            c: ctx.mul(c, li),
            d: ctx.mul(d, li),
        })
    }

    /// Entries read in the prime subfield, as `[[a, b], [c, d]]`.
    pub fn from_ints(ctx: &FieldCtx, m: [[i64; 2]; 2]) -> Result<Self> {
        Moebius::new(
            ctx,
            ctx.from_int(m[0][0]),
            ctx.from_int(m[0][1]),
            ctx.from_int(m[1][0]),
            ctx.from_int(m[1][1]),
        )
    }

    pub fn identity() -> Self {
        Moebius {
            a: FieldElem::ONE,
            b: FieldElem::ZERO,
            c: FieldElem::ZERO,
            d: FieldElem::ONE,
        }
    }

    /// `X + b`.
    pub fn translation(b: FieldElem) -> Self {
        Moebius {
            a: FieldElem::ONE,
            b,
            c: FieldElem::ZERO,
            d: FieldElem::ONE,
        }
    }

    /// `1/X`.
    pub fn reciprocal() -> Self {
        Moebius {
            a: FieldElem::ZERO,
            b: FieldElem::ONE,
            c: FieldElem::ONE,
            d: FieldElem::ZERO,
        }
    }

    pub fn entries(&self) -> [FieldElem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self, ctx: &FieldCtx) -> FieldElem {
        ctx.sub(ctx.mul(self.a, self.d), ctx.mul(self.b, self.c))
    }

    pub fn is_identity(&self) -> bool {
        *self == Moebius::identity()
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, ctx: &FieldCtx, other: &Moebius) -> Moebius {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (other.a, other.b, other.c, other.d);
        Moebius::new(
            ctx,
            ctx.add(ctx.mul(a, e), ctx.mul(b, g)),
            ctx.add(ctx.mul(a, f), ctx.mul(b, h)),
            ctx.add(ctx.mul(c, e), ctx.mul(d, g)),
            ctx.add(ctx.mul(c, f), ctx.mul(d, h)),
        )
        .expect("product of invertible matrices")
    }

    pub fn invert(&self, ctx: &FieldCtx) -> Moebius {
        Moebius::new(ctx, self.d, ctx.neg(self.b), ctx.neg(self.c), self.a)
            .expect("adjugate of an invertible matrix")
    }

    pub fn apply(&self, ctx: &FieldCtx, pt: ProjPoint) -> ProjPoint {
        let (x, y) = pt.homogeneous();
        ProjPoint::from_homogeneous(
            ctx,
            ctx.add(ctx.mul(self.a, x), ctx.mul(self.b, y)),
            ctx.add(ctx.mul(self.c, x), ctx.mul(self.d, y)),
        )
    }

    /// The map sending `0, 1, ∞` to `v1, v2, v3`.
    pub fn from_three(ctx: &FieldCtx, v1: ProjPoint, v2: ProjPoint, v3: ProjPoint) -> Result<Self> {
        if v1 == v2 || v2 == v3 || v1 == v3 {
            return Err(Error::RepeatedPoints);
        }
        let (x1, y1) = v1.homogeneous();
        let (x2, y2) = v2.homogeneous();
        let (x3, y3) = v3.homogeneous();
        // λ V3 + μ V1 = V2
        let det = ctx.sub(ctx.mul(x3, y1), ctx.mul(x1, y3));
        let lam = ctx
            .div(ctx.sub(ctx.mul(x2, y1), ctx.mul(x1, y2)), det)
            .ok_or(Error::RepeatedPoints)?;
        let mu = ctx
            .div(ctx.sub(ctx.mul(x3, y2), ctx.mul(x2, y3)), det)
            .ok_or(Error::RepeatedPoints)?;
        Moebius::new(
            ctx,
            ctx.mul(lam, x3),
            ctx.mul(mu, x1),
            ctx.mul(lam, y3),
            ctx.mul(mu, y1),
        )
    }

    /// The map sending `v1, v2, v3` to `0, 1, ∞`.
    pub fn to_three(ctx: &FieldCtx, v1: ProjPoint, v2: ProjPoint, v3: ProjPoint) -> Result<Self> {
        Ok(Moebius::from_three(ctx, v1, v2, v3)?.invert(ctx))
    }

    /// Order in the group.
    pub fn order(&self, ctx: &FieldCtx) -> usize {
        let mut m = *self;
        let mut k = 1;
        while !m.is_identity() {
            m = m.compose(ctx, self);
            k += 1;
        }
        k
    }

    /// `a,b,c,d` as element literals.
    pub fn to_literal(&self, ctx: &FieldCtx) -> String {
        self.entries()
            .iter()
            .map(|&x| ctx.format_elem(x))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let parts = split_top_level(s);
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected a,b,c,d, got {s:?}")));
        }
        let e = parts
            .iter()
            .map(|p| ctx.parse_elem(p))
            .collect::<Result<Vec<_>>>()?;
        Moebius::new(ctx, e[0], e[1], e[2], e[3])
    }

    /// `(aX+b)/(cX+d)` with element literals.
    pub fn display(&self, ctx: &FieldCtx) -> String {
        let lin = |u: FieldElem, v: FieldElem| {
            crate::poly::Poly::new(vec![v, u]).display(ctx)
        };
        format!("({})/({})", lin(self.a, self.b), lin(self.c, self.d))
    }
}

/// All of `PGL(2, q)` in canonical form, sorted.
pub fn enumerate_pgl(ctx: &FieldCtx) -> Vec<Moebius> {
    let mut out = Vec::with_capacity((ctx.q() as usize).pow(3) - ctx.q() as usize);
    for c in ctx.nonzero_elements() {
        for d in ctx.elements() {
            out.push(Moebius {
                a: FieldElem::ZERO,
                b: FieldElem::ONE,
                c,
                d,
            });
        }
    }
    for b in ctx.elements() {
        for c in ctx.elements() {
            let bc = ctx.mul(b, c);
            for d in ctx.elements() {
                if d != bc {
                    out.push(Moebius {
                        a: FieldElem::ONE,
                        b,
                        c,
                        d,
                    });
                }
            }
        }
    }
    out
}

/// The six maps permuting `{0, 1, ∞}`: `X`, `(X-1)/(-1)`, `1/X`,
/// `1/(1-X)`, `X/(X-1)`, `(X-1)/X`.
pub fn s3_stabilizer(ctx: &FieldCtx) -> [Moebius; 6] {
    let m = |e: [[i64; 2]; 2]| Moebius::from_ints(ctx, e).expect("invertible");
    [
        m([[1, 0], [0, 1]]),
        m([[1, -1], [0, -1]]),
        m([[0, 1], [1, 0]]),
        m([[0, 1], [-1, 1]]),
        m([[1, 0], [1, -1]]),
        m([[1, -1], [1, 0]]),
    ]
}

/// `C(p1,p2,p3,p4) = (p1-p3)(p2-p4) / ((p1-p4)(p2-p3))`, with factors
/// involving `∞` cancelled.
pub fn cross_ratio(ctx: &FieldCtx, p: [ProjPoint; 4]) -> Result<FieldElem> {
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return Err(Error::RepeatedPoints);
            }
        }
    }
    let h = p.map(|x| x.homogeneous());
    let br = |i: usize, j: usize| ctx.sub(ctx.mul(h[i].0, h[j].1), ctx.mul(h[j].0, h[i].1));
    let num = ctx.mul(br(0, 2), br(1, 3));
    let den = ctx.mul(br(0, 3), br(1, 2));
    ctx.div(num, den).ok_or(Error::RepeatedPoints)
}
