//! Matrix bases for the classical families. Every algebra is realized inside
//! real matrices so that the Cartan involution is `X ↦ -Xᵀ`: `k` is spanned by
//! antisymmetric and `p` by symmetric basis matrices. Complex and quaternionic
//! entries become 2×2 and 4×4 real blocks.

use crate::linalg::Mat;
use crate::scalar::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Unit {
    One,
    I,
    J,
    K,
}

const IMAG: [Unit; 3] = [Unit::I, Unit::J, Unit::K];

impl Unit {
    fn prefix(self) -> &'static str {
        match self {
            Unit::One => "",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        }
    }

    /// Left multiplication on `(1, i, j, k)`, truncated to the leading
    /// `size × size` block (size 1 for ℝ, 2 for ℂ, 4 for ℍ).
    fn block(self, size: usize) -> Vec<Vec<i64>> {
        let full: [[i64; 4]; 4] = match self {
            Unit::One => [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            Unit::I => [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
            Unit::J => [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
            Unit::K => [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        };
        full.iter().take(size).map(|r| r[..size].to_vec()).collect()
    }
}

/// An `n × n` matrix over ℝ, ℂ or ℍ (block size 1, 2 or 4) written as a sum
/// of `coeff · unit · E_ab`.
pub(crate) struct HyperMatrix {
    n: usize,
    block: usize,
    terms: Vec<(usize, usize, Unit, i64)>,
}

impl HyperMatrix {
    pub(crate) fn new(n: usize, block: usize) -> Self {
        Self { n, block, terms: Vec::new() }
    }

    pub(crate) fn with(mut self, a: usize, b: usize, u: Unit, c: i64) -> Self {
        self.terms.push((a, b, u, c));
        self
    }

    pub(crate) fn realify(&self) -> Mat<Q> {
        let s = self.block;
        let mut m = Mat::zeros(self.n * s, self.n * s);
        for &(a, b, u, c) in &self.terms {
            let blk = u.block(s);
            for (i, row) in blk.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 {
                        m[(a * s + i, b * s + j)] += q(c * x);
                    }
                }
            }
        }
        m
    }
}

pub(crate) type Named = Vec<(String, Mat<Q>)>;

fn sym(n: usize, s: usize, a: usize, b: usize, u: Unit) -> Mat<Q> {
    HyperMatrix::new(n, s).with(a, b, u, 1).with(b, a, u, 1).realify()
}

fn asym(n: usize, s: usize, a: usize, b: usize, u: Unit) -> Mat<Q> {
    HyperMatrix::new(n, s).with(a, b, u, 1).with(b, a, u, -1).realify()
}

fn diag_step(n: usize, s: usize, a: usize, u: Unit) -> Mat<Q> {
    HyperMatrix::new(n, s).with(a, a, u, 1).with(a + 1, a + 1, u, -1).realify()
}

fn pair(a: usize, b: usize) -> String {
    format!("{}_{}", a + 1, b + 1)
}

/// `sl_n(ℝ)`.
pub(crate) fn sl_r(n: usize) -> (Named, Named) {
    let mut k = Vec::new();
    let mut p = Vec::new();
    for a in 0..n - 1 {
        p.push((format!("H{}", a + 1), diag_step(n, 1, a, Unit::One)));
    }
    for a in 0..n {
        for b in a + 1..n {
            k.push((format!("A{}", pair(a, b)), asym(n, 1, a, b, Unit::One)));
            p.push((format!("S{}", pair(a, b)), sym(n, 1, a, b, Unit::One)));
        }
    }
    (k, p)
}

/// `sl_n(ℂ)` as a real algebra.
pub(crate) fn sl_c(n: usize) -> (Named, Named) {
    let mut k = Vec::new();
    let mut p = Vec::new();
    for a in 0..n - 1 {
        p.push((format!("H{}", a + 1), diag_step(n, 2, a, Unit::One)));
    }
    for a in 0..n {
        for b in a + 1..n {
            p.push((format!("S{}", pair(a, b)), sym(n, 2, a, b, Unit::One)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            p.push((format!("iA{}", pair(a, b)), asym(n, 2, a, b, Unit::I)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            k.push((format!("A{}", pair(a, b)), asym(n, 2, a, b, Unit::One)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            k.push((format!("iS{}", pair(a, b)), sym(n, 2, a, b, Unit::I)));
        }
    }
    for a in 0..n - 1 {
        k.push((format!("iH{}", a + 1), diag_step(n, 2, a, Unit::I)));
    }
    (k, p)
}

/// `so(p,q)`, `su(p,q)` or `sp(p,q)` according to `block` = 1, 2, 4.
pub(crate) fn indefinite(pp: usize, qq: usize, block: usize) -> (Named, Named) {
    let n = pp + qq;
    let imag: &[Unit] = match block {
        1 => &[],
        2 => &IMAG[..1],
        _ => &IMAG,
    };
    let same = |a: usize, b: usize| (a < pp) == (b < pp);
    let mut k = Vec::new();
    let mut p = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if same(a, b) {
                k.push((format!("A{}", pair(a, b)), asym(n, block, a, b, Unit::One)));
                for &u in imag {
                    k.push((format!("{}S{}", u.prefix(), pair(a, b)), sym(n, block, a, b, u)));
                }
            } else {
                p.push((format!("S{}", pair(a, b)), sym(n, block, a, b, Unit::One)));
                for &u in imag {
                    p.push((format!("{}A{}", u.prefix(), pair(a, b)), asym(n, block, a, b, u)));
                }
            }
        }
    }
    match block {
        2 => {
            for a in 0..n - 1 {
                k.push((format!("iH{}", a + 1), diag_step(n, 2, a, Unit::I)));
            }
        }
        4 => {
            for a in 0..n {
                for &u in imag {
                    k.push((format!("{}D{}", u.prefix(), a + 1), HyperMatrix::new(n, 4).with(a, a, u, 1).realify()));
                }
            }
        }
        _ => {}
    }
    (k, p)
}

/// `sp_{2n}(ℝ)`: `k = [[A, B], [-B, A]]`, `p = [[S, T], [T, -S]]`.
pub(crate) fn sp_r(n: usize) -> (Named, Named) {
    let blocks = |tl: &Mat<Q>, tr: &Mat<Q>, bl: &Mat<Q>, br: &Mat<Q>| {
        Mat::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, bj) = (i / n, j / n);
            let m = match (bi, bj) {
                (0, 0) => tl,
                (0, 1) => tr,
                (1, 0) => bl,
                _ => br,
            };
            m[(i % n, j % n)].clone()
        })
    };
    let zero = Mat::<Q>::zeros(n, n);
    let symm = |a: usize, b: usize| {
        if a == b {
            HyperMatrix::new(n, 1).with(a, a, Unit::One, 1).realify()
        } else {
            sym(n, 1, a, b, Unit::One)
        }
    };
    let label = |a: usize, b: usize| if a == b { format!("{}", a + 1) } else { pair(a, b) };
    let mut k = Vec::new();
    let mut p = Vec::new();
    for a in 0..n {
        for b in a..n {
            let s = symm(a, b);
            let neg = s.scale(&q(-1));
            p.push((format!("P{}", label(a, b)), blocks(&s, &zero, &zero, &neg)));
        }
    }
    for a in 0..n {
        for b in a..n {
            let s = symm(a, b);
            p.push((format!("T{}", label(a, b)), blocks(&zero, &s, &s, &zero)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let x = asym(n, 1, a, b, Unit::One);
            k.push((format!("A{}", pair(a, b)), blocks(&x, &zero, &zero, &x)));
        }
    }
    for a in 0..n {
        for b in a..n {
            let s = symm(a, b);
            let neg = s.scale(&q(-1));
            k.push((format!("B{}", label(a, b)), blocks(&zero, &s, &neg, &zero)));
        }
    }
    (k, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_blocks_multiply() {
        let i = HyperMatrix::new(1, 4).with(0, 0, Unit::I, 1).realify();
        let j = HyperMatrix::new(1, 4).with(0, 0, Unit::J, 1).realify();
        let k = HyperMatrix::new(1, 4).with(0, 0, Unit::K, 1).realify();
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(i.mul(&i), Mat::identity(4).scale(&q(-1)));
    }

    #[test]
    fn parities_are_right() {
        for (k, p) in [sl_r(3), sl_c(3), indefinite(2, 3, 1), indefinite(1, 2, 2), indefinite(1, 2, 4), sp_r(2)] {
            for (_, m) in &k {
                assert_eq!(m.transpose(), m.scale(&q(-1)));
            }
            for (_, m) in &p {
                assert!(m.is_symmetric());
            }
        }
    }
}
