//! Finite fields `F_{p^n}`.
//!
//! Elements are stored by their *scan index* `c0 + c1 p + ... + c_{n-1} p^{n-1}`,
//! where `c_i` are the coordinates in the power basis of the generator `α`
//! (a root of the modulus). Index 0 is zero and index 1 is one, and the
//! natural order on indices is the order used for every "first in scan order"
//! choice in the crate.
//!
//! Fields with at most [`TABLE_LIMIT`] elements get exp/log/Zech tables;
//! larger ones fall back to schoolbook arithmetic on coordinates.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field order for which exp/log tables are built.
pub const TABLE_LIMIT: u64 = 1 << 22;

/// Largest supported extension degree for [`FieldCtx::extension`].
pub const MAX_EXTENSION: usize = 4;

const NO_LOG: u32 = u32::MAX;
const MAX_N: usize = 32;

#[derive(
    Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize,
)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub const fn from_index(i: u32) -> Self {
        FieldElem(i)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    /// Monic modulus, ascending, length `n + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
    extensions: [OnceLock<Arc<Extension>>; MAX_EXTENSION - 1],
}

/// Handle to an immutable finite field. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())?;
        if self.n() > 1 {
            write!(f, " mod {:?}", self.inner.modulus)?;
        }
        Ok(())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl FieldCtx {
    /// Builds `F_{p^n}`.
    ///
    /// `modulus`, when given, is the full ascending coefficient list of a monic
    /// degree-`n` polynomial over `F_p` (leading 1 included). Without it the
    /// monic irreducible with the smallest scan index of `(c0, ..., c_{n-1})`
    /// is used.
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::BadModulus("extension degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if q >= 1u128 << 32 || n > MAX_N {
            return Err(Error::FieldTooLarge(q));
        }
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(Error::BadModulus(format!(
                        "expected a monic polynomial of degree {n}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(format!("coefficient out of range mod {p}")));
                }
                let m: Vec<u32> = m.iter().map(|&c| c as u32).collect();
                if n > 1 && !modulus_is_irreducible(p32, &m)? {
                    return Err(Error::BadModulus("modulus is reducible".into()));
                }
                m
            }
            None => default_modulus(p32, n)?,
        };
        Ok(Self::assemble(p32, n as u32, modulus))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    fn assemble(p: u32, n: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(n);
        let mut inner = Inner {
            p,
            n,
            q,
            modulus,
            tables: None,
            extensions: Default::default(),
        };
        if (q as u64) <= TABLE_LIMIT && q > 2 {
            inner.tables = Some(build_tables(&inner));
        }
        FieldCtx {
            inner: Arc::new(inner),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Ascending coefficients of the monic modulus, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The generator `α` (for prime fields, the root of the modulus `X`, i.e. 0).
    pub fn generator(&self) -> FieldElem {
        if self.n() == 1 {
            self.neg(FieldElem(self.inner.modulus[0]))
        } else {
            FieldElem(self.p())
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.p() as i64) as u32)
    }

    pub fn elem(&self, index: u32) -> FieldElem {
        assert!(index < self.q(), "index {index} outside F_{}", self.q());
        FieldElem(index)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() > self.n() as usize {
            return Err(Error::Parse(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.n()
            )));
        }
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            if c >= self.p() {
                return Err(Error::Parse(format!("coordinate {c} not reduced mod {}", self.p())));
            }
            idx = idx * self.p() as u64 + c as u64;
        }
        Ok(FieldElem(idx as u32))
    }

    pub fn coords(&self, x: FieldElem) -> Vec<u32> {
        let (d, n) = self.digits(x);
        d[..n].to_vec()
    }

    /// All elements in scan order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q()).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.q()).map(FieldElem)
    }

    fn digits(&self, x: FieldElem) -> ([u32; MAX_N], usize) {
        let mut out = [0u32; MAX_N];
        let n = self.n() as usize;
        let mut v = x.0;
        for d in out.iter_mut().take(n) {
            *d = v % self.p();
            v /= self.p();
        }
        (out, n)
    }

    fn undigits(&self, d: &[u32]) -> FieldElem {
        let mut idx = 0u32;
        for &c in d.iter().rev() {
            idx = idx * self.p() + c;
        }
        FieldElem(idx)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = &*self.inner;
        if s.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if s.n == 1 {
            return FieldElem(((a.0 as u64 + b.0 as u64) % s.p as u64) as u32);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if let Some(t) = &s.tables {
            let qm1 = s.q as usize - 1;
            let la = t.log[a.0 as usize] as usize;
            let lb = t.log[b.0 as usize] as usize;
            let z = t.zech[(lb + qm1 - la) % qm1];
            if z == NO_LOG {
                return FieldElem::ZERO;
            }
            return FieldElem(t.exp[(la + z as usize) % qm1]);
        }
        let (mut da, n) = self.digits(a);
        let (db, _) = self.digits(b);
        for i in 0..n {
            da[i] = (da[i] + db[i]) % s.p;
        }
        self.undigits(&da[..n])
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let s = &*self.inner;
        if s.p == 2 || a.0 == 0 {
            return a;
        }
        if s.n == 1 {
            return FieldElem(s.p - a.0);
        }
        if let Some(t) = &s.tables {
            let qm1 = s.q as usize - 1;
            let l = t.log[a.0 as usize] as usize;
            return FieldElem(t.exp[(l + qm1 / 2) % qm1]);
        }
        let (mut d, n) = self.digits(a);
        for x in d.iter_mut().take(n) {
            *x = (s.p - *x) % s.p;
        }
        self.undigits(&d[..n])
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = &*self.inner;
        if s.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if s.n == 1 {
            return FieldElem(((a.0 as u64 + s.p as u64 - b.0 as u64) % s.p as u64) as u32);
        }
        if b.0 == 0 {
            return a;
        }
        if a.0 == 0 {
            return self.neg(b);
        }
        if let Some(t) = &s.tables {
            let qm1 = s.q as usize - 1;
            let la = t.log[a.0 as usize] as usize;
            let lb = t.log[b.0 as usize] as usize;
            // a - b = a * (1 + g^(lb - la + (q-1)/2))
            let z = t.zech[(lb + qm1 / 2 + qm1 - la) % qm1];
            if z == NO_LOG {
                return FieldElem::ZERO;
            }
            return FieldElem(t.exp[(la + z as usize) % qm1]);
        }
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let s = &*self.inner;
        if s.n == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % s.p as u64) as u32);
        }
        if let Some(t) = &s.tables {
            let qm1 = s.q as usize - 1;
            let l = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return FieldElem(t.exp[l % qm1]);
        }
        slow_mul(s, a, b)
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        let s = &*self.inner;
        if let Some(t) = &s.tables {
            let qm1 = s.q as usize - 1;
            let l = t.log[a.0 as usize] as usize;
            return Some(FieldElem(t.exp[(qm1 - l) % qm1]));
        }
        Some(self.pow_u64(a, s.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    fn pow_u64(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer `e`; `None` when `a = 0` and `e < 0`.
    pub fn pow(&self, a: FieldElem, e: i64) -> Option<FieldElem> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => None,
                std::cmp::Ordering::Equal => Some(FieldElem::ONE),
                std::cmp::Ordering::Greater => Some(FieldElem::ZERO),
            };
        }
        let qm1 = self.q() as i64 - 1;
        let e = e.rem_euclid(qm1) as u64;
        if let Some(t) = &self.inner.tables {
            let l = t.log[a.0 as usize] as u64;
            return Some(FieldElem(t.exp[((l * e) % qm1 as u64) as usize]));
        }
        Some(self.pow_u64(a, e))
    }

    /// Same as [`pow`](Self::pow) with a nonnegative exponent.
    pub fn powu(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let qm1 = self.q() as u64 - 1;
        self.pow_u64(a, e % qm1)
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.powu(a, self.p() as u64)
    }

    /// Squareness of a nonzero element.
    pub fn is_square(&self, x: FieldElem) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroSquareClass);
        }
        if self.p() == 2 {
            return Ok(true);
        }
        if let Some(t) = &self.inner.tables {
            return Ok(t.log[x.0 as usize] % 2 == 0);
        }
        Ok(self.pow_u64(x, (self.q() as u64 - 1) / 2) == FieldElem::ONE)
    }

    /// Some square root of `x`, by search. Intended for small fields.
    pub fn sqrt(&self, x: FieldElem) -> Option<FieldElem> {
        self.elements().find(|&y| self.mul(y, y) == x)
    }

    /// Absolute trace `x + x^2 + ... + x^(q/2)` as a bit; characteristic 2 only.
    pub fn trace_q_over_2(&self, x: FieldElem) -> Result<u8> {
        if self.p() != 2 {
            return Err(Error::OddCharacteristic);
        }
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.n() {
            acc = self.add(acc, y);
            y = self.mul(y, y);
        }
        match acc.0 {
            0 => Ok(0),
            1 => Ok(1),
            other => Err(Error::Internal(format!("trace landed outside F_2: index {other}"))),
        }
    }

    /// One representative per coset of cubes in `F_q^*`, each the scan-least
    /// member of its coset, listed in scan order.
    pub fn cube_transversal(&self) -> Vec<FieldElem> {
        let qm1 = self.q() as u64 - 1;
        if qm1 % 3 != 0 {
            return vec![FieldElem::ONE];
        }
        let mut seen = Vec::new();
        let mut reps = Vec::new();
        for x in self.nonzero_elements() {
            let class = self.pow_u64(x, qm1 / 3);
            if !seen.contains(&class) {
                seen.push(class);
                reps.push(x);
                if reps.len() == 3 {
                    break;
                }
            }
        }
        reps
    }

    /// The transversal element in the cube coset of `t`.
    pub fn cube_class_rep(&self, t: FieldElem) -> Option<FieldElem> {
        if t.is_zero() {
            return None;
        }
        let qm1 = self.q() as u64 - 1;
        if qm1 % 3 != 0 {
            return Some(FieldElem::ONE);
        }
        let class = self.pow_u64(t, qm1 / 3);
        self.cube_transversal()
            .into_iter()
            .find(|&c| self.pow_u64(c, qm1 / 3) == class)
    }

    /// The extension of degree `m` as a fresh degree-`n·m` field over `F_p`
    /// together with the embedding of `self`. Cached for `m > 1`.
    pub fn extension(&self, m: usize) -> Result<Arc<Extension>> {
        if m == 0 || m > MAX_EXTENSION {
            return Err(Error::UnsupportedExtension(m));
        }
        if m == 1 {
            return Ok(Arc::new(Extension::identity(self.clone())));
        }
        let slot = &self.inner.extensions[m - 2];
        if let Some(e) = slot.get() {
            return Ok(e.clone());
        }
        let built = Arc::new(Extension::build(self, m)?);
        let _ = slot.set(built);
        Ok(slot.get().expect("extension slot just set").clone())
    }

    /// Element literal: a bare integer for prime fields, `[c0,c1,...]` otherwise.
    pub fn format_elem(&self, x: FieldElem) -> String {
        if self.n() == 1 {
            return x.0.to_string();
        }
        let c: Vec<String> = self.coords(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", c.join(","))
    }

    /// Human-readable form in the generator, e.g. `2+α+2α^2`.
    pub fn format_alpha(&self, x: FieldElem) -> String {
        if self.n() == 1 {
            return x.0.to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coords(x).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let t = match i {
                0 => coef,
                1 => format!("{coef}α"),
                _ => format!("{coef}α^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Parses an element literal. Bare integers (possibly negative) denote
    /// elements of the prime subfield.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated element literal {s:?}")))?;
            let coords = body
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return self.from_coords(&coords);
        }
        let k: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad element literal {s:?}")))?;
        Ok(self.from_int(k))
    }
}

/// Parses `p^n` or `p`.
pub fn parse_field_spec(s: &str) -> Result<(u64, usize)> {
    let s = s.trim();
    let (p, n) = match s.split_once('^') {
        Some((p, n)) => (p, n),
        None => (s, "1"),
    };
    let p = p
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad field {s:?}")))?;
    let n = n
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad field {s:?}")))?;
    Ok((p, n))
}

fn slow_mul(s: &Inner, a: FieldElem, b: FieldElem) -> FieldElem {
    let n = s.n as usize;
    let p = s.p as u64;
    let mut da = [0u64; MAX_N];
    let mut db = [0u64; MAX_N];
    let (mut va, mut vb) = (a.0, b.0);
    for i in 0..n {
        da[i] = (va % s.p) as u64;
        db[i] = (vb % s.p) as u64;
        va /= s.p;
        vb /= s.p;
    }
    let mut prod = [0u64; 2 * MAX_N];
    for i in 0..n {
        if da[i] == 0 {
            continue;
        }
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (n..2 * n - 1).rev() {
        let c = prod[k] % p;
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            let m = s.modulus[i] as u64;
            prod[k - n + i] = (prod[k - n + i] + (p - c) * m) % p;
        }
    }
    let mut idx = 0u64;
    for i in (0..n).rev() {
        idx = idx * p + prod[i] % p;
    }
    FieldElem(idx as u32)
}

fn slow_pow(s: &Inner, a: FieldElem, mut e: u64) -> FieldElem {
    let mut base = a;
    let mut acc = FieldElem::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(s, acc, base);
        }
        base = slow_mul(s, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(s: &Inner) -> Tables {
    let q = s.q as u64;
    let qm1 = q - 1;
    let factors = prime_factors(qm1);
    let g = (2..s.q)
        .map(FieldElem)
        .find(|&g| factors.iter().all(|&r| slow_pow(s, g, qm1 / r) != FieldElem::ONE))
        .expect("multiplicative group is cyclic");
    let mut exp = Vec::with_capacity(qm1 as usize);
    let mut log = vec![NO_LOG; q as usize];
    let mut x = FieldElem::ONE;
    for k in 0..qm1 {
        exp.push(x.0);
        log[x.0 as usize] = k as u32;
        x = if s.n == 1 {
            FieldElem(((x.0 as u64 * g.0 as u64) % s.p as u64) as u32)
        } else {
            slow_mul(s, x, g)
        };
    }
    let zech = exp
        .iter()
        .map(|&idx| {
            let d0 = idx % s.p;
            let plus_one = if d0 == s.p - 1 { idx - (s.p - 1) } else { idx + 1 };
            if plus_one == 0 {
                NO_LOG
            } else {
                log[plus_one as usize]
            }
        })
        .collect();
    Tables { exp, log, zech }
}

fn modulus_is_irreducible(p: u32, modulus: &[u32]) -> Result<bool> {
    let fp = FieldCtx::prime(p as u64)?;
    let f = Poly::new(modulus.iter().map(|&c| FieldElem(c)).collect());
    Ok(f.is_irreducible(&fp))
}

fn default_modulus(p: u32, n: usize) -> Result<Vec<u32>> {
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    let fp = FieldCtx::prime(p as u64)?;
    let count = (p as u64).pow(n as u32);
    for idx in 0..count {
        let mut m = Vec::with_capacity(n + 1);
        let mut v = idx;
        for _ in 0..n {
            m.push((v % p as u64) as u32);
            v /= p as u64;
        }
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        let f = Poly::new(m.iter().map(|&c| FieldElem(c)).collect());
        if f.is_irreducible(&fp) {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!("no irreducible of degree {n} over F_{p}")))
}

/// A field `F_{q^m}` together with the embedding `F_q → F_{q^m}` fixing `F_p`
/// and sending the generator of `F_q` to the scan-least root of its modulus.
pub struct Extension {
    degree: usize,
    base: FieldCtx,
    big: FieldCtx,
    gen_image: FieldElem,
    embed: Vec<FieldElem>,
    restrict: HashMap<FieldElem, FieldElem>,
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊂ {:?}", self.base, self.big)
    }
}

impl Extension {
    fn identity(base: FieldCtx) -> Self {
        Extension {
            degree: 1,
            big: base.clone(),
            gen_image: base.generator(),
            base,
            embed: Vec::new(),
            restrict: HashMap::new(),
        }
    }

    fn build(base: &FieldCtx, m: usize) -> Result<Self> {
        if base.q() as u64 > 1 << 20 {
            return Err(Error::FieldTooLarge(base.q() as u128));
        }
        let big = FieldCtx::new(base.p() as u64, base.n() as usize * m, None)?;
        let gen_image = if base.n() == 1 {
            FieldElem::ZERO
        } else {
            // Coefficients lie in F_p, whose elements share indices across fields.
            let modulus = Poly::new(base.modulus().iter().map(|&c| FieldElem(c)).collect());
            *modulus
                .roots(&big)
                .first()
                .ok_or_else(|| Error::Internal("base modulus has no root in extension".into()))?
        };
        let mut powers = Vec::with_capacity(base.n() as usize);
        let mut x = FieldElem::ONE;
        for _ in 0..base.n() {
            powers.push(x);
            x = big.mul(x, gen_image);
        }
        let mut embed = Vec::with_capacity(base.q() as usize);
        let mut restrict = HashMap::with_capacity(base.q() as usize);
        for e in base.elements() {
            let mut acc = FieldElem::ZERO;
            for (c, &pw) in base.coords(e).iter().zip(&powers) {
                acc = big.add(acc, big.mul(FieldElem(*c), pw));
            }
            embed.push(acc);
            restrict.insert(acc, e);
        }
        Ok(Extension {
            degree: m,
            base: base.clone(),
            big,
            gen_image,
            embed,
            restrict,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn big(&self) -> &FieldCtx {
        &self.big
    }

    /// Image of the base generator.
    pub fn generator_image(&self) -> FieldElem {
        self.gen_image
    }

    pub fn embed(&self, x: FieldElem) -> FieldElem {
        if self.degree == 1 {
            x
        } else {
            self.embed[x.0 as usize]
        }
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn restrict(&self, y: FieldElem) -> Option<FieldElem> {
        if self.degree == 1 {
            Some(y)
        } else {
            self.restrict.get(&y).copied()
        }
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        Poly::new(f.coeffs().iter().map(|&c| self.embed(c)).collect())
    }
}
