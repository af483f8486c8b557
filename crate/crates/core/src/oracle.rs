//! Brute-force ground truth: equivalence search over `PGL(2, q)`, orbit
//! partitions of the `f_{s,t}` family, and named verification suites.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    class1_representatives, class2a_form, class2b_form, class3_label, class3_representatives,
    classify, counts, ClassLabel,
};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::invariants::{
    class2_witness, disc_identity_check, fst_ram_type, g_quartic, lambda_cr, lambda_from_mu2,
    mu_squared, omega, quad_pair, s3_images, subclass, theta, theta27_params, theta_from_mu2,
    FstParams, Subclass,
};
use crate::poly::Poly;
use crate::projline::{all_points, cross_ratio, enumerate_pgl, s3_stabilizer, Moebius, ProjPoint};
use crate::ramify::{ram_type, validate_ram_type, RamType};
use crate::ratfun::{CoarseClass, Pencil, RatFun};

pub const SUITES: [&str; 11] = [
    "counts",
    "theorem2",
    "s3table",
    "eq-st",
    "invariant-constancy",
    "theta-reduction",
    "ramtable",
    "identities",
    "theta-sets",
    "evenchar",
    "lambda-table",
];

/// `(aX+b)^i (cX+d)^(3−i)` for `i = 0..4`, as coefficient rows over
/// `X³, X², X, 1`.
fn cubic_basis(ctx: &FieldCtx, phi: &Moebius) -> [[FieldElem; 4]; 4] {
    let [a, b, c, d] = phi.entries();
    let lin = Poly::new(vec![b, a]);
    let den = Poly::new(vec![d, c]);
    std::array::from_fn(|i| {
        let p = lin.pow(ctx, i).mul(ctx, &den.pow(ctx, 3 - i));
        [p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)]
    })
}

/// `S(f ∘ φ)` from `S(f)` without forming `f ∘ φ`.
pub fn compose_pencil(ctx: &FieldCtx, pencil: &Pencil, phi: &Moebius) -> Pencil {
    let basis = cubic_basis(ctx, phi);
    let rows = pencil.rows().map(|r| {
        let mut out = [FieldElem::ZERO; 4];
        // r[j] is the coefficient of X^(3−j)
        for (j, &k) in r.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(basis[3 - j].iter()) {
                *o = ctx.add(*o, ctx.mul(k, b));
            }
        }
        out
    });
    Pencil::from_rows(ctx, rows).expect("PGL acts on planes")
}

/// `(x, y)` with `p = x·n + y·d`, if any.
fn solve_in_span(ctx: &FieldCtx, n: &Poly, d: &Poly, p: &Poly) -> Option<(FieldElem, FieldElem)> {
    for i in 0..4 {
        for j in i + 1..4 {
            let det = ctx.sub(
                ctx.mul(n.coeff(i), d.coeff(j)),
                ctx.mul(n.coeff(j), d.coeff(i)),
            );
            let Some(inv) = ctx.inv(det) else {
                continue;
            };
            let x = ctx.mul(
                ctx.sub(ctx.mul(p.coeff(i), d.coeff(j)), ctx.mul(p.coeff(j), d.coeff(i))),
                inv,
            );
            let y = ctx.mul(
                ctx.sub(ctx.mul(n.coeff(i), p.coeff(j)), ctx.mul(n.coeff(j), p.coeff(i))),
                inv,
            );
            let ok = n.scale(ctx, x).add(ctx, &d.scale(ctx, y)) == *p;
            return ok.then_some((x, y));
        }
    }
    None
}

/// The `ψ` with `ψ ∘ h = g`, given that `S(h) = S(g)`.
pub fn recover_psi(ctx: &FieldCtx, h: &RatFun, g: &RatFun) -> Option<Moebius> {
    let (x, y) = solve_in_span(ctx, h.num(), h.den(), g.num())?;
    let (z, w) = solve_in_span(ctx, h.num(), h.den(), g.den())?;
    Moebius::new(ctx, x, y, z, w).ok()
}

fn check_degree(f: &RatFun) -> Result<()> {
    if f.degree() != 3 {
        return Err(Error::WrongDegree(f.degree()));
    }
    Ok(())
}

/// The scan-first `φ` (and its `ψ`) with `ψ ∘ f ∘ φ = g`.
pub fn brute_equiv(ctx: &FieldCtx, f: &RatFun, g: &RatFun) -> Result<Option<(Moebius, Moebius)>> {
    check_degree(f)?;
    check_degree(g)?;
    let target = g.pencil(ctx)?;
    let pf = f.pencil(ctx)?;
    let pgl = enumerate_pgl(ctx);
    let phi = pgl
        .par_iter()
        .find_first(|phi| compose_pencil(ctx, &pf, phi) == target)
        .copied();
    Ok(phi.map(|phi| {
        let psi = recover_psi(ctx, &f.pre_compose(ctx, &phi), g).expect("equal pencils");
        (psi, phi)
    }))
}

/// Every `(ψ, φ)` with `ψ ∘ f ∘ φ = g`, in `φ` scan order.
pub fn equiv_witnesses(ctx: &FieldCtx, f: &RatFun, g: &RatFun) -> Result<Vec<(Moebius, Moebius)>> {
    check_degree(f)?;
    check_degree(g)?;
    let target = g.pencil(ctx)?;
    let pf = f.pencil(ctx)?;
    Ok(enumerate_pgl(ctx)
        .into_iter()
        .filter(|phi| compose_pencil(ctx, &pf, phi) == target)
        .map(|phi| {
            let psi = recover_psi(ctx, &f.pre_compose(ctx, &phi), g).expect("equal pencils");
            (psi, phi)
        })
        .collect())
}

/// The least pencil in the orbit of `S(f)`: equal exactly for equivalent maps.
pub fn orbit_key(ctx: &FieldCtx, f: &RatFun, pgl: &[Moebius]) -> Result<Pencil> {
    let p = f.pencil(ctx)?;
    Ok(pgl
        .par_iter()
        .map(|phi| compose_pencil(ctx, &p, phi))
        .min()
        .expect("PGL is nonempty"))
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub members: Vec<FstParams>,
    #[serde(skip)]
    pub label: ClassLabel,
}

/// Class III points of Ω grouped into equivalence orbits.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPartition {
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Members as sorted sets, for comparing partitions.
    pub fn blocks(&self) -> BTreeSet<Vec<FstParams>> {
        self.orbits
            .iter()
            .map(|o| {
                let mut m = o.members.clone();
                m.sort();
                m
            })
            .collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The f_{s,t} pencil `⟨X³ + sX + t, X² − X⟩`, whose reduced rows are
/// `[1, 0, s, t]` and `[0, 1, −1, 0]`.
fn family_member(ctx: &FieldCtx, p: &Pencil) -> Option<(FieldElem, FieldElem)> {
    let [r0, r1] = p.rows();
    let z = FieldElem::ZERO;
    (r1 == &[z, FieldElem::ONE, ctx.neg(ctx.one()), z] && r0[0] == FieldElem::ONE)
        .then_some((r0[2], r0[3]))
}

pub fn orbit_partition_fst(ctx: &FieldCtx) -> Result<OrbitPartition> {
    let pts: Vec<FstParams> = omega(ctx)
        .into_iter()
        .filter(|&sp| class2_witness(ctx, sp).is_none())
        .collect();
    orbit_partition_of(ctx, &pts)
}

/// Orbits of the given Class III points; the order of `pts` does not matter.
pub fn orbit_partition_of(ctx: &FieldCtx, pts: &[FstParams]) -> Result<OrbitPartition> {
    let index: BTreeMap<FstParams, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let pgl = enumerate_pgl(ctx);
    let edges: Vec<(usize, usize)> = pts
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, sp)| {
            let pencil = sp.ratfun(ctx).pencil(ctx).expect("degree 3");
            let mut local = BTreeSet::new();
            for phi in &pgl {
                if let Some((s, t)) = family_member(ctx, &compose_pencil(ctx, &pencil, phi)) {
                    let j = FstParams::new(ctx, s, t)
                        .ok()
                        .and_then(|x| index.get(&x).copied());
                    if let Some(j) = j {
                        local.insert(j);
                    }
                }
            }
            local.into_iter().map(move |j| (i, j))
        })
        .collect();
    let mut uf = UnionFind::new(pts.len());
    for (i, j) in edges {
        uf.union(i, j);
    }
    let mut groups: BTreeMap<usize, Vec<FstParams>> = BTreeMap::new();
    for (i, &sp) in pts.iter().enumerate() {
        let r = uf.find(i);
        groups.entry(r).or_default().push(sp);
    }
    let mut orbits = groups
        .into_values()
        .map(|mut members| {
            members.sort();
            let label = class3_label(ctx, members[0])?;
            Ok(Orbit { members, label })
        })
        .collect::<Result<Vec<_>>>()?;
    orbits.sort_by_key(|o| o.members[0]);
    Ok(OrbitPartition { orbits })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub field: String,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = format!(
            "suite {} over {}: {}\n",
            self.suite,
            self.field,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            s += &format!(
                "  [{}] {}: {}\n",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 2024,
            samples: 200,
        }
    }
}

struct Checks {
    items: Vec<Check>,
}

impl Checks {
    fn new() -> Self {
        Checks { items: Vec::new() }
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.items.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records the first failing item, or a pass with the number checked.
    fn all<T>(&mut self, name: &str, items: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<String>) {
        let mut n = 0;
        for it in items {
            n += 1;
            if let Some(w) = bad(&it) {
                self.push(name, false, w);
                return;
            }
        }
        self.push(name, true, format!("{n} cases"));
    }
}

fn field_name(ctx: &FieldCtx) -> String {
    if ctx.n() == 1 {
        format!("F_{}", ctx.p())
    } else {
        format!("F_{}^{} (modulus {:?})", ctx.p(), ctx.n(), ctx.modulus())
    }
}

pub fn verify_suite(ctx: &FieldCtx, suite: &str, opts: VerifyOptions) -> Result<Report> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let odd = ctx.p() != 2;
    let need = |ok: bool, why: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Excluded(format!("suite {suite} needs {why}")))
        }
    };
    match suite {
        "counts" => {
            need(ctx.q() <= 32, "q ≤ 32")?;
            suite_counts(ctx, &mut c)?
        }
        "theorem2" => suite_theorem2(ctx, &mut c),
        "s3table" => suite_s3table(ctx, &mut c),
        "eq-st" => suite_eq_st(ctx, &mut c, &mut rng, opts.samples),
        "invariant-constancy" => {
            need(ctx.q() <= 32, "q ≤ 32")?;
            suite_constancy(ctx, &mut c)?
        }
        "theta-reduction" => suite_theta_reduction(ctx, &mut c, &mut rng, opts.samples)?,
        "ramtable" => suite_ramtable(ctx, &mut c, &mut rng, opts.samples)?,
        "identities" => suite_identities(ctx, &mut c, &mut rng, opts.samples)?,
        "theta-sets" => {
            need(odd, "odd characteristic")?;
            suite_theta_sets(ctx, &mut c)?
        }
        "evenchar" => {
            need(!odd, "characteristic 2")?;
            need(ctx.q() <= 32, "q ≤ 32")?;
            suite_evenchar(ctx, &mut c)?
        }
        "lambda-table" => {
            need(odd, "odd characteristic")?;
            suite_lambda_table(ctx, &mut c)?
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    let passed = c.items.iter().all(|x| x.passed);
    Ok(Report {
        field: field_name(ctx),
        suite: suite.to_string(),
        passed,
        checks: c.items,
    })
}

fn class3_points(ctx: &FieldCtx) -> Vec<FstParams> {
    omega(ctx)
        .into_iter()
        .filter(|&sp| class2_witness(ctx, sp).is_none())
        .collect()
}

/// Number of distinct orbit keys and whether they are pairwise distinct.
fn distinct_keys(ctx: &FieldCtx, fs: &[RatFun], pgl: &[Moebius]) -> Result<(usize, Option<(usize, usize)>)> {
    let keys = fs
        .iter()
        .map(|f| orbit_key(ctx, f, pgl))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] == keys[j] {
                return Ok((keys.len(), Some((i, j))));
            }
        }
    }
    Ok((keys.len(), None))
}

fn suite_counts(ctx: &FieldCtx, c: &mut Checks) -> Result<()> {
    let want = counts(ctx);
    let part = orbit_partition_fst(ctx)?;
    c.push(
        "class III orbit count",
        part.len() as u64 == want.n_iii,
        format!("{} orbits, formula {}", part.len(), want.n_iii),
    );
    let pgl = enumerate_pgl(ctx);
    let mut ii: Vec<RatFun> = ctx.cube_transversal().into_iter().map(|t| class2a_form(ctx, t)).collect();
    ii.extend(ctx.nonzero_elements().map(|t| class2b_form(ctx, t)));
    let (n, clash) = distinct_keys(ctx, &ii, &pgl)?;
    c.push(
        "class II canonical forms pairwise inequivalent",
        clash.is_none(),
        match clash {
            None => format!("{n} forms"),
            Some((i, j)) => format!("{} ~ {}", ii[i].display(ctx), ii[j].display(ctx)),
        },
    );
    c.push(
        "class II count",
        n as u64 == want.n_ii,
        format!("{n} forms, formula {}", want.n_ii),
    );
    let i_reps = class1_representatives(ctx)?;
    let (ni, clash) = distinct_keys(ctx, &i_reps, &pgl)?;
    let all_one = i_reps
        .iter()
        .all(|f| f.coarse_class(ctx) == Ok(CoarseClass::I));
    c.push(
        "class I representatives",
        clash.is_none() && all_one && ni as u64 == want.n_i,
        format!("{ni} inequivalent permutation maps, formula {}", want.n_i),
    );
    let total = ni + n + part.len();
    c.push(
        "total",
        total as u64 == want.total,
        format!("{total} classes, formula {}", want.total),
    );
    Ok(())
}

fn suite_theorem2(ctx: &FieldCtx, c: &mut Checks) {
    c.all("fiber of size 2 iff G has a root with x³ ≠ −t", omega(ctx), |&sp| {
        let by_profile = sp.ratfun(ctx).coarse_class(ctx) == Ok(CoarseClass::II);
        let by_root = class2_witness(ctx, sp).is_some();
        (by_profile != by_root).then(|| {
            format!("{}: profile {by_profile}, root criterion {by_root}", sp.format(ctx))
        })
    });
    c.all("witness reproduces (s, t)", omega(ctx), |&sp| {
        let (a, b) = class2_witness(ctx, sp)?;
        let two = ctx.from_int(2);
        let t = ctx.neg(ctx.mul(ctx.square(a), b));
        let s = ctx.add(
            ctx.sub(ctx.neg(ctx.mul(two, a)), b),
            ctx.add(ctx.square(a), ctx.mul(two, ctx.mul(a, b))),
        );
        (a == b || (s, t) != (sp.s, sp.t)).then(|| sp.format(ctx))
    });
}

fn suite_s3table(ctx: &FieldCtx, c: &mut Checks) {
    let stab = s3_stabilizer(ctx);
    c.all("stabilizer images match the table", omega(ctx), |&sp| {
        let p = sp.ratfun(ctx).pencil(ctx).expect("degree 3");
        for (k, (phi, img)) in stab.iter().zip(s3_images(ctx, sp)).enumerate() {
            let lhs = compose_pencil(ctx, &p, phi);
            if lhs != img.ratfun(ctx).pencil(ctx).expect("degree 3") {
                return Some(format!("{} with φ #{k} = {}", sp.format(ctx), phi.display(ctx)));
            }
        }
        None
    });
}

/// `(g₀, g₁)` of the membership condition for `f_{s,t} ∘ φ`.
fn g0_g1(ctx: &FieldCtx, sp: FstParams, phi: &Moebius) -> (FieldElem, FieldElem) {
    let [a, b, cc, d] = phi.entries();
    let (s, t) = (sp.s, sp.t);
    let m = |xs: &[FieldElem]| xs.iter().fold(ctx.one(), |acc, &x| ctx.mul(acc, x));
    let k = |n: i64, xs: &[FieldElem]| ctx.mul(ctx.from_int(n), m(xs));
    let sum = |xs: &[FieldElem]| xs.iter().fold(ctx.zero(), |acc, &x| ctx.add(acc, x));
    let g0 = sum(&[
        k(1, &[a, a, b, b]),
        k(-1, &[a, b, b, cc]),
        k(-1, &[a, a, b, d]),
        k(-1, &[a, b, cc, d, s]),
        k(-1, &[b, cc, cc, d, t]),
        k(-1, &[a, cc, d, d, t]),
        k(1, &[cc, cc, d, d, t]),
    ]);
    let g1 = sum(&[
        k(1, &[a, a, a, a]),
        k(2, &[a, a, a, b]),
        k(-2, &[a, a, a, cc]),
        k(-3, &[a, a, b, cc]),
        k(-1, &[a, a, a, d]),
        k(-1, &[a, a, cc, cc, s]),
        k(-1, &[a, b, cc, cc, s]),
        k(-1, &[a, a, cc, d, s]),
        k(-2, &[a, cc, cc, cc, t]),
        k(-1, &[b, cc, cc, cc, t]),
        k(1, &[cc, cc, cc, cc, t]),
        k(-3, &[a, cc, cc, d, t]),
        k(2, &[cc, cc, cc, d, t]),
    ]);
    (g0, g1)
}

/// `((s, t), (s', t'))` solved from `φ ∉ S₃`, when the denominators allow.
fn st_from_phi(ctx: &FieldCtx, phi: &Moebius) -> Option<((FieldElem, FieldElem), (FieldElem, FieldElem))> {
    let [a, b, c, d] = phi.entries();
    let m = |xs: &[FieldElem]| xs.iter().fold(ctx.one(), |acc, &x| ctx.mul(acc, x));
    let k = |n: i64, xs: &[FieldElem]| ctx.mul(ctx.from_int(n), m(xs));
    let sum = |xs: &[FieldElem]| xs.iter().fold(ctx.zero(), |acc, &x| ctx.add(acc, x));
    let num = sum(&[
        k(1, &[a, a, d]),
        k(2, &[a, b, c]),
        k(2, &[a, b, d]),
        k(-2, &[a, c, d]),
        k(-1, &[a, d, d]),
        k(1, &[b, b, c]),
        k(-1, &[b, c, c]),
        k(-2, &[b, c, d]),
    ]);
    let den1 = m(&[c, d, ctx.add(c, d)]);
    let den2 = m(&[a, c, ctx.sub(a, c)]);
    let s = ctx.div(num, den1)?;
    let t = ctx.neg(ctx.div(m(&[a, b, ctx.add(a, b)]), den1)?);
    let s2 = ctx.div(num, den2)?;
    let t2 = ctx.div(m(&[b, d, ctx.sub(b, d)]), den2)?;
    Some(((s, t), (s2, t2)))
}

fn random_elem(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    ctx.elem(rng.gen_range(0..ctx.q()))
}

fn suite_eq_st(ctx: &FieldCtx, c: &mut Checks, rng: &mut ChaCha8Rng, samples: usize) {
    let in_s3 = |phi: &Moebius| {
        let [a, _, cc, _] = phi.entries();
        ctx.mul(ctx.mul(a, cc), ctx.sub(a, cc)).is_zero()
    };
    // formulas ⇒ equivalence
    let mut cases = Vec::new();
    let mut attempts = 0;
    while cases.len() < samples && attempts < samples * 200 {
        attempts += 1;
        let e: [FieldElem; 4] = std::array::from_fn(|_| random_elem(ctx, rng));
        let Ok(phi) = Moebius::new(ctx, e[0], e[1], e[2], e[3]) else {
            continue;
        };
        let Some(((s, t), (s2, t2))) = st_from_phi(ctx, &phi) else {
            continue;
        };
        if let (Ok(sp), Ok(sp2)) = (FstParams::new(ctx, s, t), FstParams::new(ctx, s2, t2)) {
            cases.push((phi, sp, sp2));
        }
    }
    c.push(
        "sampled maps outside S₃",
        !cases.is_empty() || ctx.q() <= 4,
        format!("{} usable of {attempts} draws", cases.len()),
    );
    c.all("solved (s, t) satisfy g₀ = g₁ = 0 and give (s', t')", cases, |(phi, sp, sp2)| {
        let (g0, g1) = g0_g1(ctx, *sp, phi);
        let lhs = compose_pencil(ctx, &sp.ratfun(ctx).pencil(ctx).expect("degree 3"), phi);
        let ok = g0.is_zero()
            && g1.is_zero()
            && lhs == sp2.ratfun(ctx).pencil(ctx).expect("degree 3");
        (!ok).then(|| format!("{} with φ = {} → {}", sp.format(ctx), phi.display(ctx), sp2.format(ctx)))
    });
    // equivalence ⇒ formulas
    let pts = omega(ctx);
    let pgl = enumerate_pgl(ctx);
    let chosen: Vec<FstParams> = (0..samples.min(pts.len()))
        .map(|_| pts[rng.gen_range(0..pts.len())])
        .collect();
    c.all("every family-preserving φ obeys the closed forms", chosen, |&sp| {
        let p = sp.ratfun(ctx).pencil(ctx).expect("degree 3");
        for phi in &pgl {
            let member = family_member(ctx, &compose_pencil(ctx, &p, phi));
            let (g0, g1) = g0_g1(ctx, sp, phi);
            let cond = g0.is_zero() && g1.is_zero();
            if member.is_some() != cond {
                return Some(format!("{} φ = {}: membership and g₀ = g₁ = 0 disagree", sp.format(ctx), phi.display(ctx)));
            }
            let Some(img) = member else {
                continue;
            };
            let [_, _, cc, d] = phi.entries();
            let other_side = ctx.mul(ctx.mul(cc, d), ctx.add(cc, d)).is_zero();
            if in_s3(phi) != other_side {
                return Some(format!("φ = {}: the two S₃ tests disagree", phi.display(ctx)));
            }
            if in_s3(phi) {
                continue;
            }
            match st_from_phi(ctx, phi) {
                Some((st, st2)) if st == (sp.s, sp.t) && st2 == img => {}
                _ => {
                    return Some(format!("{} φ = {}: closed forms disagree", sp.format(ctx), phi.display(ctx)))
                }
            }
        }
        None
    });
}

fn suite_constancy(ctx: &FieldCtx, c: &mut Checks) -> Result<()> {
    let part = orbit_partition_fst(ctx)?;
    c.all("label constant on orbits", &part.orbits, |o| {
        o.members.iter().find_map(|&sp| match class3_label(ctx, sp) {
            Ok(l) if l == o.label => None,
            _ => Some(format!("{} vs {}", sp.format(ctx), o.members[0].format(ctx))),
        })
    });
    c.all("θ constant on orbits", &part.orbits, |o| {
        let th = theta(ctx, o.members[0]);
        o.members
            .iter()
            .find(|&&sp| theta(ctx, sp) != th)
            .map(|sp| format!("{} vs {}", sp.format(ctx), o.members[0].format(ctx)))
    });
    let b_orbits: Vec<&crate::oracle::Orbit> = part
        .orbits
        .iter()
        .filter(|o| odd(ctx) && subclass(ctx, o.members[0]) == Subclass::IIIb)
        .collect();
    c.all("μ² and λ constant on III-b orbits", &b_orbits, |o| {
        let key = |sp: FstParams| -> Result<(FieldElem, FieldElem)> {
            Ok((mu_squared(ctx, &quad_pair(ctx, sp)?)?, lambda_cr(ctx, sp)?))
        };
        let k0 = key(o.members[0]).ok()?;
        o.members
            .iter()
            .find(|&&sp| key(sp).ok() != Some(k0))
            .map(|sp| format!("{} vs {}", sp.format(ctx), o.members[0].format(ctx)))
    });
    let mut by_theta: BTreeMap<FieldElem, usize> = BTreeMap::new();
    let mut by_mu: BTreeMap<FieldElem, usize> = BTreeMap::new();
    for o in &part.orbits {
        let sp = o.members[0];
        match (odd(ctx), subclass(ctx, sp)) {
            (true, Subclass::IIIa) | (false, _) => *by_theta.entry(theta(ctx, sp)).or_default() += 1,
            (true, Subclass::IIIb) => {
                *by_mu.entry(mu_squared(ctx, &quad_pair(ctx, sp)?)?).or_default() += 1
            }
            _ => {}
        }
    }
    let dup = |m: &BTreeMap<FieldElem, usize>| m.iter().find(|(_, &n)| n > 1).map(|(k, _)| ctx.format_elem(*k));
    let name = if odd(ctx) { "θ injective across III-a orbits" } else { "θ injective across orbits" };
    c.push(name, dup(&by_theta).is_none(), match dup(&by_theta) {
        None => format!("{} orbits", by_theta.len()),
        Some(k) => format!("θ = {k} on two orbits"),
    });
    if odd(ctx) {
        c.push("μ² injective across III-b orbits", dup(&by_mu).is_none(), match dup(&by_mu) {
            None => format!("{} orbits", by_mu.len()),
            Some(k) => format!("μ² = {k} on two orbits"),
        });
    }
    Ok(())
}

fn odd(ctx: &FieldCtx) -> bool {
    ctx.p() != 2
}

/// `(e₂/e₃, e₀/e₃)` for `(e₃X³ + e₂X² + e₁X + e₀)/X`.
fn read_over_x(ctx: &FieldCtx, f: &RatFun) -> Option<(FieldElem, FieldElem)> {
    if f.den() != &Poly::x() || f.num().degree() != Some(3) {
        return None;
    }
    let n = f.num().monic(ctx);
    Some((n.coeff(2), n.coeff(0)))
}

/// Runs the reduction of `f_{s,t}` to `(X³ + X² + t')/X` over the field of
/// the index-2 point `a`, returning `t'` restricted to `F_q`.
fn reduce_by_index2(ctx: &FieldCtx, sp: FstParams) -> Result<Option<FieldElem>> {
    let mt = ctx.neg(sp.t);
    for (g, _) in g_quartic(ctx, sp).factor(ctx)? {
        let m = g.degree().expect("nonconstant");
        let (ext, roots) = g.roots_in_extension(ctx, m)?;
        let big = ext.big();
        let Some(&a) = roots.iter().find(|&&x| big.powu(x, 3) != ext.embed(mt)) else {
            continue;
        };
        let (s, t) = (ext.embed(sp.s), ext.embed(sp.t));
        let f = RatFun::new(
            big,
            Poly::new(vec![t, s, big.zero(), big.one()]),
            Poly::from_ints(big, &[0, -1, 1]),
        )?;
        let b = big.div(ext.embed(mt), big.square(a)).expect("a ≠ 0");
        let alpha = big.add(big.add(a, a), b);
        if f.eval(big, ProjPoint::Finite(a)) != ProjPoint::Finite(alpha) {
            return Err(Error::Internal("α ≠ f(a)".into()));
        }
        let ab = big.sub(a, b);
        let step = f
            .post_compose(big, &Moebius::translation(big.neg(alpha)))
            .pre_compose(big, &Moebius::translation(a))
            .pre_compose(big, &Moebius::reciprocal())
            .post_compose(big, &Moebius::reciprocal())
            .pre_compose(big, &Moebius::translation(big.neg(big.inv(ab).expect("a ≠ b"))));
        let Some(_) = read_over_x(big, &step) else {
            return Err(Error::Internal(format!("chain ended at {}", step.display(big))));
        };
        let c3 = step.num().coeff(3);
        let c2 = step.num().coeff(2);
        let scale = big.div(c2, c3).ok_or(Error::DivisionByZero)?;
        let last = step.pre_compose(big, &Moebius::new(big, scale, big.zero(), big.zero(), big.one())?);
        let (s1, t1) = read_over_x(big, &last)
            .ok_or_else(|| Error::Internal("scaling broke the X-denominator".into()))?;
        if s1 != big.one() {
            return Err(Error::Internal("X² coefficient did not normalize to 1".into()));
        }
        return Ok(ext.restrict(t1));
    }
    Ok(None)
}

fn suite_theta_reduction(ctx: &FieldCtx, c: &mut Checks, rng: &mut ChaCha8Rng, samples: usize) -> Result<()> {
    let pts: Vec<FstParams> = class3_points(ctx)
        .into_iter()
        .filter(|sp| !sp.s.is_zero())
        .collect();
    let mut chosen: Vec<FstParams> = if pts.len() <= samples {
        pts
    } else {
        (0..samples).map(|_| pts[rng.gen_range(0..pts.len())]).collect()
    };
    chosen.sort();
    chosen.dedup();
    let mut used = 0;
    let mut failure = None;
    for sp in chosen {
        let want = ctx
            .div(ctx.mul(sp.t, sp.one_s_t(ctx)), ctx.powu(sp.s, 3))
            .expect("s ≠ 0");
        match reduce_by_index2(ctx, sp)? {
            None => continue,
            Some(t1) if t1 == want => used += 1,
            Some(t1) => {
                failure = Some(format!(
                    "{}: chain gives t' = {}, formula {}",
                    sp.format(ctx),
                    ctx.format_elem(t1),
                    ctx.format_elem(want)
                ));
                break;
            }
        }
    }
    match failure {
        Some(w) => c.push("reduction lands on t(1+s+t)/s³", false, w),
        None => c.push("reduction lands on t(1+s+t)/s³", true, format!("{used} points")),
    }
    Ok(())
}

fn suite_ramtable(ctx: &FieldCtx, c: &mut Checks, rng: &mut ChaCha8Rng, samples: usize) -> Result<()> {
    let pts = omega(ctx);
    let types = pts
        .iter()
        .map(|&sp| fst_ram_type(ctx, sp).map(|rt| (sp, rt)))
        .collect::<Result<Vec<_>>>()?;
    c.all("types are possible for the characteristic", &types, |(sp, rt)| {
        (!validate_ram_type(ctx.p(), rt)).then(|| format!("{} has {rt}", sp.format(ctx)))
    });
    c.all("type 2/1 iff Class II on Ω", &types, |(sp, rt)| {
        let ii = sp.ratfun(ctx).coarse_class(ctx) == Ok(CoarseClass::II);
        (ii != rt.has_tag(2, 1)).then(|| format!("{} has {rt}, Class II = {ii}", sp.format(ctx)))
    });
    let mut randoms = Vec::new();
    while randoms.len() < samples {
        let num: Vec<FieldElem> = (0..4).map(|_| random_elem(ctx, rng)).collect();
        let den: Vec<FieldElem> = (0..4).map(|_| random_elem(ctx, rng)).collect();
        if let Ok(f) = RatFun::new(ctx, Poly::new(num), Poly::new(den)) {
            if f.degree() == 3 && f.is_separable(ctx) {
                randoms.push(f);
            }
        }
    }
    c.all("type 2/1 iff Class II on random maps", &randoms, |f| {
        let rt = match ram_type(ctx, f) {
            Ok(rt) => rt,
            Err(e) => return Some(format!("{}: {e}", f.display(ctx))),
        };
        let ii = f.coarse_class(ctx) == Ok(CoarseClass::II);
        (ii != rt.has_tag(2, 1)).then(|| format!("{} has {rt}, Class II = {ii}", f.display(ctx)))
    });
    if odd(ctx) {
        let free: Vec<FstParams> = types
            .iter()
            .filter(|(_, rt)| !rt.indices().contains(&2))
            .map(|(sp, _)| *sp)
            .collect();
        let special = FstParams::from_ints(ctx, -3, 1)?;
        c.push(
            "(−3, 1) is the only point without index 2",
            free == vec![special],
            format!("{:?}", free.iter().map(|sp| sp.format(ctx)).collect::<Vec<_>>()),
        );
        let rt = fst_ram_type(ctx, special)?;
        let want = match (ctx.p(), ctx.q() % 6) {
            (3, _) => "3/1",
            (_, 1) => "3/1,3/1",
            _ => "3/2,3/2",
        };
        c.push(
            "type of f_{−3,1}",
            rt == RamType::parse(want)?,
            format!("{rt}, expected ({want})"),
        );
    }
    Ok(())
}

/// `K − P_c (B₂ + … + B₆)` at a point, with `a = (c − 1)²(c + 8)/c`.
pub fn k_identity_residual(ctx: &FieldCtx, c: FieldElem, x: FieldElem, y: FieldElem) -> Option<FieldElem> {
    let n = |k: i64| ctx.from_int(k);
    let ci = ctx.inv(c)?;
    let a = ctx.mul(ctx.mul(ctx.square(ctx.sub(c, n(1))), ctx.add(c, n(8))), ci);
    let pw = |b: FieldElem, e: u64| ctx.powu(b, e);
    // (coefficient, power of a, power of x, power of y)
    const K: [(i64, u64, u64, u64); 42] = [
        (8, 0, 6, 0), (-12, 0, 7, 0), (6, 0, 8, 0), (-1, 0, 9, 0),
        (-24, 0, 4, 1), (42, 0, 6, 1), (-30, 0, 7, 1), (6, 0, 8, 1),
        (-30, 0, 2, 2), (-2, 1, 2, 2), (171, 0, 3, 2), (5, 1, 3, 2),
        (-180, 0, 4, 2), (-4, 1, 4, 2), (15, 0, 5, 2), (1, 1, 5, 2),
        (42, 0, 6, 2), (-12, 0, 7, 2), (-8, 0, 0, 3), (84, 0, 1, 3),
        (4, 1, 1, 3), (-330, 0, 2, 3), (-14, 1, 2, 3), (442, 0, 3, 3),
        (14, 1, 3, 3), (-180, 0, 4, 3), (-4, 1, 4, 3), (8, 0, 6, 3),
        (-24, 0, 0, 4), (168, 0, 1, 4), (8, 1, 1, 4), (-330, 0, 2, 4),
        (-14, 1, 2, 4), (171, 0, 3, 4), (5, 1, 3, 4), (-24, 0, 4, 4),
        (-24, 0, 0, 5), (84, 0, 1, 5), (4, 1, 1, 5), (-30, 0, 2, 5),
        (-2, 1, 2, 5), (-8, 0, 0, 6),
    ];
    let mut k = ctx.zero();
    for (co, ea, ex, ey) in K {
        let term = ctx.mul(ctx.mul(n(co), pw(a, ea)), ctx.mul(pw(x, ex), pw(y, ey)));
        k = ctx.add(k, term);
    }
    let x2 = ctx.square(x);
    let y2 = ctx.square(y);
    let xy = ctx.mul(x, y);
    let x_2y = ctx.sub(x, ctx.mul(n(2), y));
    let pc = ctx.sub(
        ctx.add(
            ctx.add(ctx.mul(c, y), ctx.mul(n(2), x2)),
            ctx.sub(ctx.mul(c, y2), ctx.mul(ctx.add(n(4), c), xy)),
        ),
        ctx.mul(x2, x_2y),
    );
    let b2 = ctx.neg(ctx.mul(ctx.mul(n(8), ci), y2));
    let b3 = ctx.neg(ctx.mul(
        ctx.mul(ctx.mul(n(2), ci), y),
        ctx.add(
            ctx.sub(
                ctx.mul(ctx.mul(c, ctx.add(c, n(6))), x2),
                ctx.mul(ctx.mul(n(2), ctx.add(ctx.add(n(4), ctx.mul(n(6), c)), ctx.square(c))), xy),
            ),
            ctx.mul(n(8), y2),
        ),
    ));
    let b4 = ctx.mul(
        ci,
        [
            ctx.mul(ctx.mul(n(4), c), pw(x, 4)),
            ctx.mul(ctx.mul(c, ctx.add(n(2), ctx.mul(n(3), c))), ctx.mul(pw(x, 3), y)),
            ctx.neg(ctx.mul(
                ctx.mul(n(8), ctx.add(ctx.add(n(1), ctx.mul(n(4), c)), ctx.square(c))),
                ctx.mul(x2, y2),
            )),
            ctx.mul(
                ctx.mul(n(4), ctx.add(ctx.add(n(4), ctx.mul(n(6), c)), ctx.square(c))),
                ctx.mul(x, pw(y, 3)),
            ),
            ctx.neg(ctx.mul(n(8), pw(y, 4))),
        ]
        .into_iter()
        .fold(ctx.zero(), |acc, v| ctx.add(acc, v)),
    );
    let b5 = ctx.neg(ctx.mul(
        ctx.mul(x2, x_2y),
        ctx.sub(
            ctx.add(ctx.mul(n(4), x2), ctx.mul(ctx.sub(c, n(2)), xy)),
            ctx.mul(ctx.add(c, n(6)), y2),
        ),
    ));
    let b6 = ctx.mul(pw(x, 4), ctx.square(x_2y));
    let bsum = [b2, b3, b4, b5, b6].into_iter().fold(ctx.zero(), |acc, v| ctx.add(acc, v));
    Some(ctx.sub(k, ctx.mul(pc, bsum)))
}

fn cross_ratio_orbit_ok(ctx: &FieldCtx, pts: [ProjPoint; 4]) -> bool {
    let cr = |i: [usize; 4]| cross_ratio(ctx, i.map(|k| pts[k])).expect("distinct points");
    let c0 = cr([0, 1, 2, 3]);
    let one = ctx.one();
    let inv = |x| ctx.inv(x).expect("cross ratios avoid 0");
    cr([0, 2, 1, 3]) == ctx.sub(one, c0)
        && cr([1, 0, 2, 3]) == inv(c0)
        && cr([1, 2, 0, 3]) == ctx.sub(one, inv(c0))
        && cr([2, 0, 1, 3]) == inv(ctx.sub(one, c0))
        && cr([2, 1, 0, 3]) == ctx.div(c0, ctx.sub(c0, one)).expect("c ≠ 1")
        && cr([1, 0, 3, 2]) == c0
        && cr([2, 3, 0, 1]) == c0
        && cr([3, 2, 1, 0]) == c0
}

fn random_monic(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Poly {
    let d = rng.gen_range(1..=4);
    let mut c: Vec<FieldElem> = (0..d).map(|_| random_elem(ctx, rng)).collect();
    c.push(ctx.one());
    Poly::new(c)
}

fn suite_identities(ctx: &FieldCtx, c: &mut Checks, rng: &mut ChaCha8Rng, samples: usize) -> Result<()> {
    if odd(ctx) {
        c.all("D(G) = 16 t²(1+s+t)²(θ − 27)", omega(ctx), |&sp| {
            (!disc_identity_check(ctx, sp)).then(|| sp.format(ctx))
        });
    }
    for p in [101, 103] {
        let big = FieldCtx::prime(p)?;
        let mut pts = Vec::new();
        while pts.len() < samples.max(100) {
            let cc = random_elem(&big, rng);
            if !cc.is_zero() {
                pts.push((cc, random_elem(&big, rng), random_elem(&big, rng)));
            }
        }
        c.all(&format!("K = P_c(B₂+…+B₆) over F_{p}"), pts, |&(cc, x, y)| {
            let r = k_identity_residual(&big, cc, x, y).expect("c ≠ 0");
            (!r.is_zero()).then(|| format!("c = {}, x = {}, y = {}", cc.index(), x.index(), y.index()))
        });
    }
    let pairs: Vec<(Poly, Poly)> = (0..samples).map(|_| (random_monic(ctx, rng), random_monic(ctx, rng))).collect();
    c.all("D(fg) = D(f)D(g)Res(f,g)²", pairs, |(f, g)| {
        let lhs = f.mul(ctx, g).discriminant(ctx).ok()?;
        let r = f.resultant(ctx, g).ok()?;
        let rhs = ctx.mul(
            ctx.mul(f.discriminant(ctx).ok()?, g.discriminant(ctx).ok()?),
            ctx.square(r),
        );
        (lhs != rhs).then(|| format!("f = {}, g = {}", f.display(ctx), g.display(ctx)))
    });
    let pts = all_points(ctx);
    let quads: Vec<[ProjPoint; 4]> = if ctx.q() <= 32 {
        let mut v = Vec::new();
        for &a in &pts {
            for &b in &pts {
                for &cc in &pts {
                    for &d in &pts {
                        let q = [a, b, cc, d];
                        if (0..4).all(|i| (i + 1..4).all(|j| q[i] != q[j])) {
                            v.push(q);
                        }
                    }
                }
            }
        }
        v
    } else {
        let mut v = Vec::new();
        while v.len() < samples {
            let q: [ProjPoint; 4] = std::array::from_fn(|_| pts[rng.gen_range(0..pts.len())]);
            if (0..4).all(|i| (i + 1..4).all(|j| q[i] != q[j])) {
                v.push(q);
            }
        }
        v
    };
    c.all("cross-ratio orbit under S₄", quads, |q| {
        (!cross_ratio_orbit_ok(ctx, *q)).then(|| format!("{:?}", q.map(|x| x.format(ctx))))
    });
    if odd(ctx) {
        let b_pts: Vec<FstParams> = omega(ctx)
            .into_iter()
            .filter(|&sp| subclass(ctx, sp) == Subclass::IIIb)
            .collect();
        c.all("λ and θ from μ² on III-b", b_pts, |&sp| {
            let m = mu_squared(ctx, &quad_pair(ctx, sp).ok()?).ok()?;
            let ok = lambda_cr(ctx, sp).ok() == lambda_from_mu2(ctx, m).ok()
                && Some(theta(ctx, sp)) == theta_from_mu2(ctx, m).ok();
            (!ok).then(|| sp.format(ctx))
        });
    }
    if ctx.p() >= 5 {
        let fiber: BTreeSet<FstParams> = omega(ctx)
            .into_iter()
            .filter(|&sp| theta(ctx, sp) == ctx.from_int(27))
            .collect();
        let mut param: BTreeSet<FstParams> = ctx
            .elements()
            .filter_map(|u| theta27_params(ctx, u).ok())
            .collect();
        param.insert(FstParams::from_ints(ctx, -3, 1)?);
        c.push(
            "θ = 27 fiber is the parametrized family plus (−3, 1)",
            fiber == param,
            format!("{} points in the fiber, {} parametrized", fiber.len(), param.len()),
        );
    }
    Ok(())
}

fn squares(ctx: &FieldCtx) -> BTreeSet<FieldElem> {
    ctx.nonzero_elements().map(|x| ctx.square(x)).collect()
}

fn suite_theta_sets(ctx: &FieldCtx, c: &mut Checks) -> Result<()> {
    let q = ctx.q() as usize;
    let n = |k| ctx.from_int(k);
    let sq = squares(ctx);
    let mut th_a = BTreeSet::new();
    let mut th_b = BTreeSet::new();
    let mut th_c = BTreeSet::new();
    let mut mus = BTreeSet::new();
    for sp in omega(ctx) {
        match subclass(ctx, sp) {
            Subclass::IIIa => {
                th_a.insert(theta(ctx, sp));
            }
            Subclass::IIIb => {
                th_b.insert(theta(ctx, sp));
                mus.insert(mu_squared(ctx, &quad_pair(ctx, sp)?)?);
            }
            Subclass::IIIc => {
                th_c.insert(theta(ctx, sp));
            }
            _ => {}
        }
    }
    let want_a: BTreeSet<FieldElem> = ctx
        .nonzero_elements()
        .filter(|x| !sq.contains(x))
        .map(|x| ctx.add(n(27), x))
        .collect();
    c.push(
        "Θ_a = 27 + nonsquares",
        th_a == want_a && th_a.len() == (q - 1) / 2,
        format!("|Θ_a| = {}, expected {}", th_a.len(), (q - 1) / 2),
    );
    let excluded = [n(0), n(1), n(-1), n(3), n(-3)];
    let want_b: BTreeSet<FieldElem> = ctx
        .elements()
        .filter(|mu| !excluded.contains(mu))
        .map(|mu| {
            let m2 = ctx.square(mu);
            let v = ctx
                .div(ctx.mul(mu, ctx.sub(m2, n(9))), ctx.sub(m2, n(1)))
                .expect("μ² ≠ 1");
            ctx.add(n(27), ctx.square(v))
        })
        .collect();
    let size_b = if ctx.p() == 3 { (q - 3) / 6 } else { (q - 1) / 6 };
    c.push(
        "Θ_b = 27 + {(μ(μ²−9)/(μ²−1))²}",
        th_b == want_b && th_b.len() == size_b,
        format!("|Θ_b| = {}, expected {size_b}", th_b.len()),
    );
    let want_mu: BTreeSet<FieldElem> = sq
        .iter()
        .copied()
        .filter(|&x| x != n(1) && x != n(9))
        .collect();
    let size_mu = if ctx.p() == 3 { (q - 3) / 2 } else { (q - 5) / 2 };
    c.push(
        "μ² values on III-b",
        mus == want_mu && mus.len() == size_mu,
        format!("{} values, expected {size_mu}", mus.len()),
    );
    let c_empty_expected = ctx.p() == 3 || q % 6 == 1;
    c.push(
        "Θ_c empty exactly when expected",
        th_c.is_empty() == c_empty_expected && th_c.iter().all(|&x| x == n(27)),
        format!("Θ_c has {} values", th_c.len()),
    );
    Ok(())
}

fn rep_for(ctx: &FieldCtx, label: &ClassLabel) -> Result<RatFun> {
    for (l, sp) in class3_representatives(ctx)? {
        if &l == label {
            return Ok(sp.ratfun(ctx));
        }
    }
    Err(Error::Internal(format!("no representative for {}", label.display(ctx))))
}

fn suite_evenchar(ctx: &FieldCtx, c: &mut Checks) -> Result<()> {
    let one = ctx.one();
    c.all("Class II criterion via the absolute trace", omega(ctx), |&sp| {
        let ii = sp.ratfun(ctx).coarse_class(ctx) == Ok(CoarseClass::II);
        let crit = sp.s.is_zero() || {
            let tr = ctx.trace_q_over_2(ctx.div(sp.t, ctx.square(sp.s)).expect("s ≠ 0"));
            tr == Ok(0) && (sp.s, sp.t) != (one, one)
        };
        (ii != crit).then(|| format!("{}: profile {ii}, criterion {crit}", sp.format(ctx)))
    });
    let part = orbit_partition_fst(ctx)?;
    let thetas: BTreeSet<FieldElem> = part.orbits.iter().map(|o| theta(ctx, o.members[0])).collect();
    let all_nonzero: BTreeSet<FieldElem> = ctx.nonzero_elements().collect();
    c.push(
        "θ is a bijection from Class III orbits onto F_q*",
        thetas == all_nonzero && part.len() == thetas.len(),
        format!("{} orbits, {} θ values", part.len(), thetas.len()),
    );
    let equiv = |f: &RatFun, g: &RatFun| -> Result<bool> { Ok(brute_equiv(ctx, f, g)?.is_some()) };
    let sigma = ctx
        .nonzero_elements()
        .find(|&x| ctx.trace_q_over_2(x) == Ok(1))
        .expect("trace-one elements exist");
    let square_q = ctx.n() % 2 == 0;
    let f11 = FstParams::new(ctx, one, one)?.ratfun(ctx);
    let class_i = class1_representatives(ctx)?.remove(0);
    let x3 = RatFun::from_poly(ctx, Poly::monomial(one, 3))?;
    let row_i = if square_q { equiv(&x3, &f11)? } else { equiv(&x3, &class_i)? };
    c.push("row (i): X³", row_i, if square_q { "~ f_{1,1}" } else { "~ Class I representative" });
    let g2 = RatFun::new(
        ctx,
        Poly::new(vec![sigma, sigma, ctx.zero(), one]),
        Poly::new(vec![ctx.add(sigma, one), one, one]),
    )?;
    let row_ii = if square_q { equiv(&g2, &class_i)? } else { equiv(&g2, &f11)? };
    c.push(
        "row (ii): (X³+σX+σ)/(X²+X+σ+1)",
        row_ii,
        if square_q { "~ Class I representative" } else { "~ f_{1,1}" },
    );
    let x3x2 = RatFun::from_poly(ctx, Poly::new(vec![ctx.zero(), ctx.zero(), one, one]))?;
    c.push("row (iii): X³+X²", equiv(&x3x2, &class2b_form(ctx, one))?, "~ (X³+X²+1)/X");
    c.all("row (iv): (X³+t)/X for t in the cube transversal", ctx.cube_transversal(), |&t| {
        (classify(ctx, &class2a_form(ctx, t)).ok() != Some(ClassLabel::IIA(t)))
            .then(|| ctx.format_elem(t))
    });
    let mut row_v = Vec::new();
    for cc in ctx.elements().skip(2) {
        let f = RatFun::new(
            ctx,
            Poly::new(vec![cc, ctx.zero(), ctx.zero(), one]),
            Poly::new(vec![cc, one]),
        )?;
        let t = ctx.inv(ctx.square(ctx.add(one, cc))).expect("c ≠ 1");
        row_v.push((cc, equiv(&f, &class2b_form(ctx, t))?));
    }
    c.all("row (v): (X³+c)/(X+c) ~ (X³+X²+(1+c)⁻²)/X", row_v, |&(cc, ok)| {
        (!ok).then(|| format!("c = {} (index {})", ctx.format_elem(cc), cc.index()))
    });
    let mut row_v_fixed = Vec::new();
    for cc in ctx.elements().skip(2) {
        let f = RatFun::new(
            ctx,
            Poly::new(vec![cc, ctx.zero(), ctx.zero(), one]),
            Poly::new(vec![cc, one]),
        )?;
        let t = ctx.square(ctx.div(ctx.add(one, cc), cc).expect("c ≠ 0"));
        row_v_fixed.push((cc, equiv(&f, &class2b_form(ctx, t))?));
    }
    c.all("row (v) corrected: (X³+c)/(X+c) ~ (X³+X²+((1+c)/c)²)/X", row_v_fixed, |&(cc, ok)| {
        (!ok).then(|| format!("c = {} (index {})", ctx.format_elem(cc), cc.index()))
    });
    let mut row_vi = Vec::new();
    for b in ctx.elements().skip(2) {
        let b1 = ctx.add(b, one);
        let f = RatFun::new(
            ctx,
            Poly::new(vec![ctx.mul(b1, sigma), sigma, b, one]),
            Poly::new(vec![ctx.add(b1, sigma), one, one]),
        )?;
        let th = ctx.pow(b1, -4).expect("b ≠ 1");
        let label = ClassLabel::IIIEvenTheta(th);
        let ok = classify(ctx, &f)? == label && equiv(&f, &rep_for(ctx, &label)?)?;
        row_vi.push((b, ok));
    }
    c.all("row (vi): Class III with θ = (b+1)⁻⁴", row_vi, |&(b, ok)| {
        (!ok).then(|| format!("b = {} (index {})", ctx.format_elem(b), b.index()))
    });
    Ok(())
}

fn suite_lambda_table(ctx: &FieldCtx, c: &mut Checks) -> Result<()> {
    let n = |k| ctx.from_int(k);
    let q = ctx.q();
    // μ² ↦ (θ, λ, first III-b point)
    let mut classes: BTreeMap<FieldElem, (FieldElem, FieldElem, FstParams)> = BTreeMap::new();
    let mut bad = None;
    for sp in omega(ctx) {
        if subclass(ctx, sp) != Subclass::IIIb {
            continue;
        }
        let m = mu_squared(ctx, &quad_pair(ctx, sp)?)?;
        let lam = lambda_cr(ctx, sp)?;
        if Some(lam) != lambda_from_mu2(ctx, m).ok() && bad.is_none() {
            bad = Some(sp.format(ctx));
        }
        classes.entry(m).or_insert((theta(ctx, sp), lam, sp));
    }
    c.push("λ closed form", bad.is_none(), bad.unwrap_or_else(|| format!("{} μ² classes", classes.len())));
    let pairs: BTreeSet<(FieldElem, FieldElem)> = classes.values().map(|&(t, l, _)| (t, l)).collect();
    let twelve = q % 12 == 1 || q % 12 == 11;
    if ctx.p() == 3 {
        let want = (q as usize - 3) / 2;
        c.push(
            "(θ, λ) pairs",
            pairs.len() == want,
            format!("{} pairs, expected {want}", pairs.len()),
        );
    } else {
        let want = (q as usize - 5) / 2 - usize::from(twelve);
        c.push(
            "(θ, λ) pairs",
            pairs.len() == want,
            format!("{} pairs, expected {want}", pairs.len()),
        );
        let half = ctx.inv(n(2)).expect("odd");
        let five_halves = ctx.mul(n(5), half);
        c.all("special rows", classes.iter(), |(&m, &(th, lam, sp))| {
            let want = if m == n(-3) {
                Some((n(0), n(1)))
            } else if m == n(3) {
                Some((n(54), n(-2)))
            } else {
                let r3 = ctx.sqrt(n(3));
                r3.and_then(|r| {
                    let cands = [ctx.add(n(3), ctx.mul(n(2), r)), ctx.sub(n(3), ctx.mul(n(2), r))];
                    cands.iter().any(|&x| ctx.square(x) == m).then_some((n(54), five_halves))
                })
            };
            match want {
                Some(w) if w != (th, lam) => Some(format!("μ² = {} at {}", ctx.format_elem(m), sp.format(ctx))),
                _ => None,
            }
        });
        let minus3 = classes.contains_key(&n(-3));
        c.push(
            "μ² = −3 class present iff q ≡ 1 (mod 6)",
            minus3 == (q % 6 == 1),
            format!("present: {minus3}"),
        );
        let shared: Vec<(FieldElem, FstParams)> = classes
            .iter()
            .filter(|(_, &(th, lam, _))| (th, lam) == (n(54), five_halves))
            .map(|(&m, &(_, _, sp))| (m, sp))
            .collect();
        let expected = if twelve { 2 } else { 0 };
        let mut ok = shared.len() == expected;
        if ok && expected == 2 {
            let f = shared[0].1.ratfun(ctx);
            let g = shared[1].1.ratfun(ctx);
            ok = brute_equiv(ctx, &f, &g)?.is_none();
        }
        c.push(
            "(θ, λ) = (54, 5/2) covers two inequivalent μ² classes iff q ≡ ±1 (mod 12)",
            ok,
            format!(
                "μ² values {:?}",
                shared.iter().map(|(m, _)| ctx.format_elem(*m)).collect::<Vec<_>>()
            ),
        );
    }
    let mut per_theta: BTreeMap<FieldElem, BTreeSet<FieldElem>> = BTreeMap::new();
    for &(th, lam, _) in classes.values() {
        per_theta.entry(th).or_default().insert(lam);
    }
    let generic: Vec<(FieldElem, usize)> = per_theta
        .iter()
        .filter(|(&th, _)| ctx.p() == 3 || (th != n(0) && th != n(54)))
        .map(|(&th, l)| (th, l.len()))
        .collect();
    c.all("three λ values per generic θ", generic, |&(th, k)| {
        (k != 3).then(|| format!("θ = {} has {k}", ctx.format_elem(th)))
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn field(p: u64, n: usize) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    fn st(ctx: &FieldCtx, s: i64, t: i64) -> FstParams {
        FstParams::from_ints(ctx, s, t).unwrap()
    }

    #[test]
    fn compose_pencil_matches_composition() {
        let f7 = fp(7);
        let f = RatFun::from_ints(&f7, &[1, 2, 0, 3], &[4, 0, 1]).unwrap();
        let p = f.pencil(&f7).unwrap();
        for phi in enumerate_pgl(&f7).iter().step_by(13) {
            assert_eq!(compose_pencil(&f7, &p, phi), f.pre_compose(&f7, phi).pencil(&f7).unwrap());
        }
    }

    #[test]
    fn brute_equiv_examples() {
        let f7 = fp(7);
        let f = st(&f7, 2, 3).ratfun(&f7);
        let all = equiv_witnesses(&f7, &f, &f).unwrap();
        assert!(all.iter().any(|(psi, phi)| psi.is_identity() && phi.is_identity()));
        let g = st(&f7, 2, -1 - 2 - 3).ratfun(&f7);
        let w = equiv_witnesses(&f7, &f, &g).unwrap();
        let flip = Moebius::from_ints(&f7, [[1, -1], [0, -1]]).unwrap();
        assert!(w.iter().any(|(_, phi)| *phi == flip));
        for (psi, phi) in w {
            assert_eq!(f.transform(&f7, &psi, &phi), g);
        }
        for t in f7.nonzero_elements() {
            for t2 in f7.nonzero_elements() {
                let a = class2a_form(&f7, t);
                let b = class2b_form(&f7, t2);
                assert!(brute_equiv(&f7, &a, &b).unwrap().is_none());
            }
        }
    }

    #[test]
    fn brute_equiv_symmetric_and_transitive() {
        let f5 = fp(5);
        let pgl = enumerate_pgl(&f5);
        let f = st(&f5, 1, 2).ratfun(&f5);
        let g = f.transform(&f5, &pgl[17], &pgl[90]);
        let h = g.transform(&f5, &pgl[3], &pgl[44]);
        let (psi, phi) = brute_equiv(&f5, &f, &g).unwrap().unwrap();
        assert_eq!(f.transform(&f5, &psi, &phi), g);
        assert!(brute_equiv(&f5, &g, &f).unwrap().is_some());
        assert!(brute_equiv(&f5, &f, &h).unwrap().is_some());
        let x = RatFun::from_ints(&f5, &[0, 1], &[1]).unwrap();
        assert_eq!(brute_equiv(&f5, &f, &x), Err(Error::WrongDegree(1)));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_partition_fst(&fp(5)).unwrap().len(), 4);
        let f7 = fp(7);
        let part = orbit_partition_fst(&f7).unwrap();
        assert_eq!(part.len(), 6);
        let a = part.orbits.iter().filter(|o| matches!(o.label, ClassLabel::IIIa(_))).count();
        assert_eq!(a, 3);
        let f9 = field(3, 2);
        let part = orbit_partition_fst(&f9).unwrap();
        let kinds: Vec<&str> = part.orbits.iter().map(|o| o.label.kind()).collect();
        assert_eq!(kinds.iter().filter(|k| **k == "III-a").count(), 4);
        assert_eq!(kinds.iter().filter(|k| **k == "III-b").count(), 3);
        assert_eq!(kinds.iter().filter(|k| **k == "III-p3d").count(), 1);
    }

    #[test]
    fn orbit_partition_ignores_order() {
        let f7 = fp(7);
        let mut pts = class3_points(&f7);
        let a = orbit_partition_of(&f7, &pts).unwrap();
        pts.reverse();
        let b = orbit_partition_of(&f7, &pts).unwrap();
        assert_eq!(a.blocks(), b.blocks());
    }

    #[test]
    fn k_identity_vanishes() {
        let f101 = fp(101);
        for (c, x, y) in [(3, 5, 7), (50, 1, 99), (2, 0, 13)] {
            let r = k_identity_residual(&f101, f101.from_int(c), f101.from_int(x), f101.from_int(y));
            assert_eq!(r, Some(f101.zero()));
        }
    }

    #[test]
    fn suites_pass_at_small_fields() {
        let opts = VerifyOptions { seed: 1, samples: 40 };
        for ctx in [fp(5), fp(7), field(3, 2)] {
            for suite in SUITES {
                match verify_suite(&ctx, suite, opts) {
                    Ok(r) => assert!(r.passed, "{}", r.text()),
                    Err(Error::Excluded(_)) => {}
                    Err(e) => panic!("{suite}: {e}"),
                }
            }
        }
    }

    #[test]
    fn unknown_suite() {
        let e = verify_suite(&fp(5), "nope", VerifyOptions::default());
        assert_eq!(e.unwrap_err(), Error::UnknownSuite("nope".into()));
    }
}
