//! Homogeneous linear congruences over `Z/2^k`.
//!
//! `Z/2^k` is a local ring: every element is `2^e · u` with `u` odd. The
//! solver diagonalizes the system with row and column operations, always
//! pivoting on an entry of minimal 2-adic valuation so that the pivot divides
//! everything left in the active block.

/// Arithmetic modulo `2^k` for `1 <= k <= 64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring2k {
    k: u32,
    mask: u64,
}

impl Ring2k {
    pub fn new(k: u32) -> Self {
        assert!((1..=64).contains(&k), "ring exponent {k} out of range 1..=64");
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Ring2k { k, mask }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a & self.mask
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a.wrapping_add(b) & self.mask
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        a.wrapping_sub(b) & self.mask
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a.wrapping_mul(b) & self.mask
    }

    /// 2-adic valuation, with `k` standing in for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        let a = self.reduce(a);
        if a == 0 {
            self.k
        } else {
            a.trailing_zeros()
        }
    }

    /// Inverse of an odd element (Newton iteration, doubling correct bits each step).
    pub fn inverse_odd(&self, u: u64) -> u64 {
        assert!(u & 1 == 1, "only odd elements are units");
        let mut x = u;
        for _ in 0..6 {
            x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
        }
        self.reduce(x)
    }
}

/// Solution module of `A·p ≡ 0 (mod 2^k)`.
#[derive(Clone, Debug)]
pub struct SolutionModule {
    ring: Ring2k,
    n: usize,
    /// Column transform `V`; solutions are `p = V·y`.
    transform: Vec<Vec<u64>>,
    inverse: Vec<Vec<u64>>,
    /// For each coordinate of `y`, the valuation `e_j`: `y_j` must be a multiple of `2^(k−e_j)`.
    exponents: Vec<u32>,
}

impl SolutionModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring2k {
        self.ring
    }

    /// `log2` of the number of solutions.
    pub fn log2_count(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Generators of the solution module (zero generators omitted).
    pub fn generators(&self) -> Vec<Vec<u64>> {
        let k = self.ring.k();
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                let scale = if k - e == 64 { 0 } else { 1u64 << (k - e) };
                (0..self.n)
                    .map(|i| self.ring.mul(self.transform[i][j], scale))
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, p: &[u64]) -> bool {
        if p.len() != self.n {
            return false;
        }
        let k = self.ring.k();
        (0..self.n).all(|j| {
            let y = self.inverse[j]
                .iter()
                .zip(p)
                .fold(0u64, |acc, (&a, &b)| self.ring.add(acc, self.ring.mul(a, b)));
            self.ring.valuation(y) >= k - self.exponents[j]
        })
    }
}

/// Solves `A·p ≡ 0 (mod 2^k)` for a matrix given by rows of length `n`.
pub fn solve_homogeneous(rows: &[Vec<u64>], n: usize, k: u32) -> SolutionModule {
    let ring = Ring2k::new(k);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "congruence row length mismatch");
            r.iter().map(|&x| ring.reduce(x)).collect()
        })
        .collect();
    let mut v: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut vinv = v.clone();
    let mut exponents = vec![k; n];

    let rank_bound = a.len().min(n);
    for t in 0..rank_bound {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                let e = ring.valuation(x);
                if e < k && best.is_none_or(|(_, _, be)| e < be) {
                    best = Some((i, j, e));
                }
            }
        }
        let Some((pi, pj, e)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            vinv.swap(t, pj);
        }
        let unit = a[t][t] >> e;
        let unit_inv = ring.inverse_odd(unit);
        for row in a.iter_mut() {
            row[t] = ring.mul(row[t], unit_inv);
        }
        for row in v.iter_mut() {
            row[t] = ring.mul(row[t], unit_inv);
        }
        for x in vinv[t].iter_mut() {
            *x = ring.mul(*x, unit);
        }
        debug_assert_eq!(a[t][t], 1 << e);

        let pivot_row = a[t].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == t || row[t] == 0 {
                continue;
            }
            let factor = row[t] >> e;
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = ring.sub(*x, ring.mul(factor, p));
            }
        }
        for j in (t + 1)..n {
            if a[t][j] == 0 {
                continue;
            }
            let factor = a[t][j] >> e;
            a[t][j] = 0;
            for row in v.iter_mut() {
                row[j] = ring.sub(row[j], ring.mul(factor, row[t]));
            }
            let source = vinv[j].clone();
            for (x, s) in vinv[t].iter_mut().zip(source) {
                *x = ring.add(*x, ring.mul(factor, s));
            }
        }
        exponents[t] = e;
    }

    SolutionModule {
        ring,
        n,
        transform: v,
        inverse: vinv,
        exponents,
    }
}
