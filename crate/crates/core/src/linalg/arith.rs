//! Storage-level arithmetic kernels shared by both field representations.

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) trait Arith {
    type E: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Self::E;
    /// `acc += x * y`
    fn add_mul(&self, acc: &mut Self::E, x: &Self::E, y: &Self::E);
    /// `acc -= x * y`
    fn sub_mul(&self, acc: &mut Self::E, x: &Self::E, y: &Self::E);
}

pub(crate) struct QArith;

impl Arith for QArith {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
    fn add_mul(&self, acc: &mut BigRational, x: &BigRational, y: &BigRational) {
        if !x.is_zero() && !y.is_zero() {
            *acc += x * y;
        }
    }
    fn sub_mul(&self, acc: &mut BigRational, x: &BigRational, y: &BigRational) {
        if !x.is_zero() && !y.is_zero() {
            *acc -= x * y;
        }
    }
}

pub(crate) struct PArith(pub u32);

impl Arith for PArith {
    type E = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    fn add(&self, x: &u32, y: &u32) -> u32 {
        ((*x as u64 + *y as u64) % self.0 as u64) as u32
    }
    fn sub(&self, x: &u32, y: &u32) -> u32 {
        ((*x as u64 + self.0 as u64 - *y as u64) % self.0 as u64) as u32
    }
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        ((*x as u64 * *y as u64) % self.0 as u64) as u32
    }
    fn neg(&self, x: &u32) -> u32 {
        (self.0 - *x) % self.0
    }
    fn inv(&self, x: &u32) -> u32 {
        super::field::inv_mod(*x, self.0)
    }
    fn add_mul(&self, acc: &mut u32, x: &u32, y: &u32) {
        let p = self.0 as u64;
        *acc = ((*acc as u64 + (*x as u64 * *y as u64) % p) % p) as u32;
    }
    fn sub_mul(&self, acc: &mut u32, x: &u32, y: &u32) {
        let p = self.0 as u64;
        *acc = ((*acc as u64 + p - (*x as u64 * *y as u64) % p) % p) as u32;
    }
}

/// Row-major product of an `r×k` and a `k×c` matrix.
pub(crate) fn matmul<A: Arith>(a: &A, x: &[A::E], y: &[A::E], r: usize, k: usize, c: usize) -> Vec<A::E> {
    let mut out = vec![a.zero(); r * c];
    for i in 0..r {
        for l in 0..k {
            let xv = &x[i * k + l];
            if a.is_zero(xv) {
                continue;
            }
            let row = &y[l * c..(l + 1) * c];
            let dst = &mut out[i * c..(i + 1) * c];
            for (d, yv) in dst.iter_mut().zip(row) {
                a.add_mul(d, xv, yv);
            }
        }
    }
    out
}

/// In-place reduced row echelon form; returns pivot columns.
pub(crate) fn rref_in_place<A: Arith>(a: &A, m: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&m[r * cols + c]);
        for j in c..cols {
            let v = a.mul(&m[r * cols + j], &inv);
            m[r * cols + j] = v;
        }
        let pivot_row: Vec<A::E> = m[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * cols + c].clone();
            if a.is_zero(&factor) {
                continue;
            }
            let dst = &mut m[i * cols + c..(i + 1) * cols];
            for (d, pv) in dst.iter_mut().zip(&pivot_row) {
                a.sub_mul(d, &factor, pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
