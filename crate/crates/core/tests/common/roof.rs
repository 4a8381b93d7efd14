//! Brute-force derived hom over a prime field, independent of the crate's
//! linear algebra.
//!
//! Hom in the derived category from `x` to `y` raising degree by `k` is
//! computed from roofs `x <--s-- x' --a--> y` over one fixed quasi-isomorphism
//! `s`, the projection from `x' = x ⊕ (K --1--> K)`. Every chain map `a` is
//! enumerated, and two roofs are identified when `a − b = d∘t + t∘d` for some
//! enumerated `t`, which over a field is the same as `a − b` factoring
//! through an acyclic complex. The dimension is `log_p` of the number of
//! classes.

use std::collections::HashSet;

use tricat::chain::Complex;

/// A complex with entries in `Z/p`: `d[n]` maps degree `n` to `n − 1`,
/// stored row-major.
#[derive(Clone, Debug)]
pub struct SmallComplex {
    pub p: u64,
    pub dims: std::collections::BTreeMap<i64, usize>,
    pub d: std::collections::BTreeMap<i64, Vec<u64>>,
}

impl SmallComplex {
    pub fn from_complex(x: &Complex, p: u64) -> SmallComplex {
        let mut dims = std::collections::BTreeMap::new();
        let mut d = std::collections::BTreeMap::new();
        for n in x.lo()..=x.hi() {
            dims.insert(n, x.dim(n));
            let m = x.d(n);
            let entries = m.entries().iter().map(|e| e.to_i64().expect("residue") as u64).collect();
            d.insert(n, entries);
        }
        SmallComplex { p, dims, d }
    }

    fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// `d_n`, zero outside the stored range.
    fn diff(&self, n: i64) -> Vec<u64> {
        match self.d.get(&n) {
            Some(m) if m.len() == self.dim(n - 1) * self.dim(n) => m.clone(),
            _ => vec![0; self.dim(n - 1) * self.dim(n)],
        }
    }

    /// `self ⊕ (K --1--> K)` with the extra summand in degrees `top`, `top − 1`.
    pub fn with_contractible(&self, top: i64) -> SmallComplex {
        let mut dims = self.dims.clone();
        *dims.entry(top).or_insert(0) += 1;
        *dims.entry(top - 1).or_insert(0) += 1;
        let lo = *dims.keys().next().unwrap();
        let hi = *dims.keys().last().unwrap();
        let mut d = std::collections::BTreeMap::new();
        for n in lo..=hi + 1 {
            let (r, c) = (dims.get(&(n - 1)).copied().unwrap_or(0), dims.get(&n).copied().unwrap_or(0));
            let (r0, c0) = (self.dim(n - 1), self.dim(n));
            let old = self.diff(n);
            let mut m = vec![0; r * c];
            for i in 0..r0 {
                for j in 0..c0 {
                    m[i * c + j] = old[i * c0 + j];
                }
            }
            if n == top {
                m[(r - 1) * c + (c - 1)] = 1;
            }
            d.insert(n, m);
        }
        SmallComplex { p: self.p, dims, d }
    }
}

fn mul(p: u64, a: &[u64], b: &[u64], r: usize, k: usize, c: usize) -> Vec<u64> {
    let mut out = vec![0; r * c];
    for i in 0..r {
        for j in 0..c {
            let mut s = 0;
            for l in 0..k {
                s += a[i * k + l] * b[l * c + j];
            }
            out[i * c + j] = s % p;
        }
    }
    out
}

/// All assignments of `len` entries in `Z/p`.
fn every_vector(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let e = code % p;
                code /= p;
                e
            })
            .collect()
    })
}

/// Degrees and block offsets of a graded map `x_n → y_{n+k}`.
fn layout(x: &SmallComplex, y: &SmallComplex, k: i64) -> Vec<(i64, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (&n, &c) in &x.dims {
        let r = y.dim(n + k);
        if r * c > 0 {
            out.push((n, r, c, off));
            off += r * c;
        }
    }
    out
}

fn block(v: &[u64], lay: &[(i64, usize, usize, usize)], n: i64, r: usize, c: usize) -> Vec<u64> {
    match lay.iter().find(|b| b.0 == n) {
        Some(&(_, _, _, off)) => v[off..off + r * c].to_vec(),
        None => vec![0; r * c],
    }
}

fn total(lay: &[(i64, usize, usize, usize)]) -> usize {
    lay.iter().map(|b| b.1 * b.2).sum()
}

/// `dim Hom_D(x, y)` in degree `k`, by enumerating roofs over `x'`.
pub fn roof_hom_dim(x: &SmallComplex, y: &SmallComplex, k: i64) -> usize {
    let p = x.p;
    let top = x.dims.keys().last().copied().unwrap_or(0);
    let xp = x.with_contractible(top);
    let lay = layout(&xp, y, k);
    let degrees: Vec<i64> = xp.dims.keys().copied().collect();

    // Chain maps: f_{n−1}∘d_n = d_{n+k}∘f_n.
    let mut maps = Vec::new();
    for v in every_vector(p, total(&lay)) {
        let ok = degrees.iter().all(|&n| {
            let (cn, cn1) = (xp.dim(n), xp.dim(n - 1));
            let (rn, rn1) = (y.dim(n + k), y.dim(n + k - 1));
            let fn_ = block(&v, &lay, n, rn, cn);
            let fn1 = block(&v, &lay, n - 1, rn1, cn1);
            mul(p, &fn1, &xp.diff(n), rn1, cn1, cn) == mul(p, &y.diff(n + k), &fn_, rn1, rn, cn)
        });
        if ok {
            maps.push(v);
        }
    }

    // Null maps d∘t + t∘d for every t: x'_n → y_{n+k+1}.
    let tlay = layout(&xp, y, k + 1);
    let mut null: HashSet<Vec<u64>> = HashSet::new();
    for t in every_vector(p, total(&tlay)) {
        let mut v = vec![0; total(&lay)];
        for &(n, r, c, off) in &lay {
            let tn = block(&t, &tlay, n, y.dim(n + k + 1), c);
            let tn1 = block(&t, &tlay, n - 1, r, xp.dim(n - 1));
            let a = mul(p, &y.diff(n + k + 1), &tn, r, y.dim(n + k + 1), c);
            let b = mul(p, &tn1, &xp.diff(n), r, xp.dim(n - 1), c);
            for i in 0..r * c {
                v[off + i] = (a[i] + b[i]) % p;
            }
        }
        null.insert(v);
    }

    let classes = maps.len() / null.len();
    assert_eq!(classes * null.len(), maps.len(), "null maps do not form a subgroup of index dividing the chain maps");
    let mut dim = 0;
    let mut c = 1;
    while c < classes {
        c *= p as usize;
        dim += 1;
    }
    assert_eq!(c, classes, "class count is not a power of p");
    dim
}

/// A random two-term complex `K^a --d--> K^b` in degrees `lo + 1`, `lo`,
/// with `a, b ∈ {1, 2}`, `lo ∈ {−1, 0}` and `d` of random rank.
pub fn two_term(field: tricat::linalg::Field, rng: &mut rand_chacha::ChaCha8Rng) -> Complex {
    use rand::Rng;
    let lo = rng.gen_range(-1..=0);
    let (b, a) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let r = rng.gen_range(0..=a.min(b));
    let d = &tricat::linalg::ExactMatrix::random(field, b, r, rng) * &tricat::linalg::ExactMatrix::random(field, r, a, rng);
    Complex::new(field, lo, vec![b, a], vec![d]).expect("two-term complex")
}
