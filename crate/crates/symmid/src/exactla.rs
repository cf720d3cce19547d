//! Exact dense linear algebra over the rationals.
//!
//! Every dimension count in the crate bottoms out here. Ranks are computed
//! by fraction-free (Bareiss) elimination over big integers after clearing
//! denominators, so there is no floating point and no coefficient blowup
//! from naive fraction arithmetic. Subspaces are canonicalized by reduced
//! row echelon form: two subspaces are equal iff their echelon matrices are
//! identical.
//!
//! A modular rank mod a prime is always a lower bound for the rational
//! rank. Two provable shortcuts follow and are used freely even in exact
//! mode:
//! - if the modular rank equals `min(rows, cols)`, it is the exact rank;
//! - if the row space is known to lie inside a space of dimension `k` and
//!   the modular rank reaches `k`, the exact rank is `k`.
//! Fast mode additionally accepts agreement of two independent primes
//! without an exactness certificate, falling back to Bareiss when the
//! primes disagree.

use num::bigint::BigInt;
use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ratio::{rat_to_string, Rat};

pub const MOD_PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("denominator divisible by modulus {0}")]
    BadModulus(u64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// How rank queries are resolved. `Exact` certifies every answer; `Fast`
/// accepts two-prime modular agreement and confirms exactly only on
/// disagreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankMode {
    Exact,
    Fast,
}

impl RankMode {
    pub fn label(self) -> &'static str {
        match self {
            RankMode::Exact => "exact",
            RankMode::Fast => "fast",
        }
    }
}

/// Dense matrix of exact rationals, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| rat_to_string(self.get(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn stack(&self, below: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, below.cols, "column mismatch in stack");
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        RatMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let entry = self.get(r, c);
                    if !entry.is_zero() && !v[c].is_zero() {
                        acc += entry * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Rows with denominators cleared, as big integers.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    let den = self.get(r, c).denom();
                    lcm = num::integer::lcm(lcm, den.clone());
                }
                (0..self.cols)
                    .map(|c| {
                        let e = self.get(r, c);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let bound = self.rows.min(self.cols);
        if bound == 0 {
            return 0;
        }
        // provable shortcut: a modular rank hitting the dimension bound is exact
        if bound > 8 {
            if let Ok(r) = self.modular_rank(MOD_PRIMES[0]) {
                if r == bound {
                    return r;
                }
            }
        }
        bareiss_rank(self.integer_rows())
    }

    /// Rank under the requested mode. Fast mode trusts two-prime agreement.
    pub fn rank_with_mode(&self, mode: RankMode) -> usize {
        match mode {
            RankMode::Exact => self.rank(),
            RankMode::Fast => {
                let r1 = self.modular_rank(MOD_PRIMES[0]);
                let r2 = self.modular_rank(MOD_PRIMES[1]);
                match (r1, r2) {
                    (Ok(a), Ok(b)) if a == b => a,
                    _ => self.rank(),
                }
            }
        }
    }

    /// Rank of the matrix with entries reduced mod `p`. Always a lower
    /// bound for the rational rank; errors if any denominator is divisible
    /// by `p`.
    pub fn modular_rank(&self, p: u64) -> Result<usize, LinAlgError> {
        let mut echelon = ModEchelon::new(self.cols, p);
        for r in 0..self.rows {
            let mut v = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                v.push(rat_mod(self.get(r, c), p)?);
            }
            echelon.insert_dense(v);
        }
        Ok(echelon.rank())
    }

    /// Reduced row echelon form together with the pivot column list.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(r) = found else { continue };
            if r != pivot_row {
                for c in 0..m.cols {
                    m.data.swap(r * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let inv = {
                let p = m.get(pivot_row, col).clone();
                Rat::one() / p
            };
            for c in col..m.cols {
                if !m.get(pivot_row, c).is_zero() {
                    let v = m.get(pivot_row, c) * &inv;
                    m.set(pivot_row, c, v);
                }
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    if !m.get(pivot_row, c).is_zero() {
                        let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel `{v : Mv = 0}` as a canonical subspace of
    /// the coordinate space `k^cols`.
    pub fn kernel(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                let coef = rref.get(i, fc);
                if !coef.is_zero() {
                    v[pc] = -coef.clone();
                }
            }
            rows.push(v);
        }
        Subspace::from_spanning_rows(self.cols, rows)
    }
}

/// The residue of an exact rational mod `p`; errors when the denominator
/// vanishes mod `p`.
pub fn rat_mod(x: &Rat, p: u64) -> Result<u64, LinAlgError> {
    let pm = BigInt::from(p);
    let num = ((x.numer() % &pm) + &pm) % &pm;
    let den = ((x.denom() % &pm) + &pm) % &pm;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    if den == 0 {
        return Err(LinAlgError::BadModulus(p));
    }
    Ok(mul_mod(num, mod_inverse(den, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Fraction-free elimination on integer rows; returns the rank.
fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, pr);
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() && rows[rank][col].is_one() {
                // elimination still rescales the row in Bareiss form
            }
            for c in col + 1..ncols {
                let v =
                    (&rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c]) / &prev_pivot;
                rows[r][c] = v;
            }
            rows[r][col] = BigInt::zero();
        }
        prev_pivot = rows[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Row space in canonical (reduced row echelon) form. Two subspaces are
/// equal iff their echelon matrices are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RatMatrix::zero(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RatMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_spanning_rows(ambient_dim: usize, rows: Vec<Vec<Rat>>) -> Self {
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        Self::from_spanning_matrix(RatMatrix::from_rows(rows))
    }

    pub fn from_spanning_matrix(m: RatMatrix) -> Self {
        let ambient_dim = m.cols();
        let (rref, pivots) = m.rref();
        let dim = pivots.len();
        let basis = RatMatrix::from_fn(dim, ambient_dim, |r, c| rref.get(r, c).clone());
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical echelon basis matrix (full row rank).
    pub fn basis_matrix(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for c in 0..self.ambient_dim {
                    let b = self.basis.get(i, c);
                    if !b.is_zero() {
                        v[c] -= &factor * b;
                    }
                }
            }
        }
        v.iter().all(Rat::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_spanning_matrix(self.basis.stack(&other.basis))
    }

    /// Orthogonal complement under the standard coordinate pairing.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        self.basis.kernel()
    }

    /// Serializes to an echelon-matrix JSON value with string entries,
    /// labeled by the caller-provided ambient basis names.
    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        assert_eq!(labels.len(), self.ambient_dim);
        let rows: Vec<Vec<String>> = (0..self.dim())
            .map(|r| self.basis.row(r).iter().map(rat_to_string).collect())
            .collect();
        serde_json::json!({
            "ambient_basis": labels,
            "dim": self.dim(),
            "echelon_rows": rows,
        })
    }
}

/// Incremental echelon builder over the rationals. Rows are kept fully
/// reduced, so the result converts straight into a canonical subspace.
pub struct EchelonBuilder {
    cols: usize,
    rows: Vec<(usize, Vec<Rat>)>, // (pivot column, normalized reduced row)
}

impl EchelonBuilder {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; if a nonzero remainder is
    /// left, absorbs it and returns true.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for c in *pivot..self.cols {
                    if !row[c].is_zero() {
                        v[c] -= &factor * &row[c];
                    }
                }
            }
        }
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / v[lead].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // back-substitute into existing rows to stay fully reduced
        for (_, row) in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let factor = row[lead].clone();
                for c in 0..self.cols {
                    if !v[c].is_zero() {
                        row[c] -= &factor * &v[c];
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < lead);
        self.rows.insert(at, (lead, v));
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let ambient = self.cols;
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let rows: Vec<Vec<Rat>> = self.rows.into_iter().map(|(_, r)| r).collect();
        if rows.is_empty() {
            return Subspace::zero(ambient);
        }
        let basis = RatMatrix::from_rows(rows);
        Subspace {
            ambient_dim: ambient,
            basis,
            pivots,
        }
    }
}

/// Incremental echelon over `Z/p`, with a sparse insert path for vectors
/// with very few nonzero entries (orbit images of binomials).
pub struct ModEchelon {
    cols: usize,
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(cols: usize, p: u64) -> Self {
        ModEchelon {
            cols,
            p,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert_dense(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (pivot, row) in &self.rows {
            let x = v[*pivot];
            if x != 0 {
                for c in *pivot..self.cols {
                    if row[c] != 0 {
                        let sub = mul_mod(x, row[c], p);
                        v[c] = (v[c] + p - sub) % p;
                    }
                }
            }
        }
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(v[lead], p);
        for x in v.iter_mut().skip(lead) {
            if *x != 0 {
                *x = mul_mod(*x, inv, p);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < lead);
        self.rows.insert(at, (lead, v));
        true
    }

    /// Insert a vector given as (index, value) pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, i64)]) -> bool {
        let p = self.p;
        let mut v = vec![0u64; self.cols];
        for &(i, val) in entries {
            let m = (val.rem_euclid(p as i64)) as u64;
            v[i] = (v[i] + m) % p;
        }
        self.insert_dense(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_basics() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        assert_eq!(RatMatrix::zero(4, 5).rank(), 0);
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6]]).rank(), 1);
    }

    #[test]
    fn kernel_basics() {
        let k = m(&[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_matrix().row(0), &[rat(1), rat(-1)]);
        assert_eq!(RatMatrix::identity(4).kernel().dim(), 0);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..7);
            let mat = RatMatrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-4..=4)));
            let ker = mat.kernel();
            assert_eq!(ker.dim() + mat.rank(), cols);
            for r in 0..ker.dim() {
                let image = mat.mul_vec(ker.basis_matrix().row(r));
                assert!(image.iter().all(Rat::is_zero));
            }
        }
    }

    #[test]
    fn modular_rank_examples() {
        assert_eq!(RatMatrix::identity(3).modular_rank(10007).unwrap(), 3);
        let p = 10007i64;
        let degenerate = m(&[&[p, 0], &[0, 1]]);
        assert_eq!(degenerate.modular_rank(p as u64).unwrap(), 1);
        assert_eq!(degenerate.rank(), 2);
        let half = RatMatrix::from_rows(vec![vec![crate::ratio::rat_frac(1, 10007)]]);
        assert!(half.modular_rank(10007).is_err());
    }

    #[test]
    fn modular_rank_is_lower_bound() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let mat = RatMatrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-9..=9)));
            let exact = mat.rank();
            for p in MOD_PRIMES {
                assert!(mat.modular_rank(p).unwrap() <= exact);
            }
            assert_eq!(mat.rank_with_mode(RankMode::Fast), exact);
        }
    }

    #[test]
    fn bareiss_and_gauss_jordan_agree() {
        // two independent elimination routes: fraction-free over the
        // integers vs rational reduced echelon
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..40 {
            let rows = rng.gen_range(1..10);
            let cols = rng.gen_range(1..10);
            let mat = RatMatrix::from_fn(rows, cols, |_, _| {
                crate::ratio::rat_frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))
            });
            let (_, pivots) = mat.rref();
            assert_eq!(mat.rank(), pivots.len());
        }
    }

    #[test]
    fn rank_transpose_random() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let rows = rng.gen_range(1..50);
            let cols = rng.gen_range(1..50);
            let mat = RatMatrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-3..=3)));
            assert_eq!(mat.rank(), mat.transpose().rank());
        }
    }

    #[test]
    fn subspace_equality_invariant_under_row_operations() {
        let a = Subspace::from_spanning_rows(
            3,
            vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(1), rat(1)]],
        );
        let b = Subspace::from_spanning_rows(
            3,
            vec![vec![rat(2), rat(5), rat(1)], vec![rat(3), rat(7), rat(1)]],
        );
        assert_eq!(a, b);
        assert!(a.contains(&[rat(1), rat(3), rat(1)]));
        assert!(!a.contains(&[rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn complement_dims_and_involution() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let ambient = rng.gen_range(1..7);
            let nrows = rng.gen_range(0..=ambient);
            let rows: Vec<Vec<Rat>> = (0..nrows)
                .map(|_| (0..ambient).map(|_| rat(rng.gen_range(-5..=5))).collect())
                .collect();
            let s = Subspace::from_spanning_rows(ambient, rows);
            let c = s.orthogonal_complement();
            assert_eq!(s.dim() + c.dim(), ambient);
            assert_eq!(c.orthogonal_complement(), s);
        }
    }

    #[test]
    fn subspace_json_has_labels_and_echelon_rows() {
        let s = Subspace::from_spanning_rows(2, vec![vec![rat(2), rat(4)]]);
        let labels = vec!["a".to_string(), "b".to_string()];
        let v = s.to_json(&labels);
        assert_eq!(v["dim"], 1);
        assert_eq!(v["ambient_basis"][1], "b");
        assert_eq!(v["echelon_rows"][0][1], "2");
    }

    #[test]
    fn echelon_builder_matches_rref() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..20 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let rows_data: Vec<Vec<Rat>> = (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.gen_range(-4..=4))).collect())
                .collect();
            let mut builder = EchelonBuilder::new(cols);
            for r in &rows_data {
                builder.insert(r.clone());
            }
            let via_builder = builder.into_subspace();
            let via_rref = Subspace::from_spanning_rows(cols, rows_data);
            assert_eq!(via_builder, via_rref);
        }
    }

    proptest! {
        #[test]
        fn kernel_dim_plus_rank_is_cols(entries in proptest::collection::vec(-5i64..=5, 1..30)) {
            let cols = 5usize;
            let rows = entries.len().div_ceil(cols);
            let mut data = entries;
            data.resize(rows * cols, 0);
            let mat = RatMatrix::from_fn(rows, cols, |r, c| rat(data[r * cols + c]));
            prop_assert_eq!(mat.kernel().dim() + mat.rank(), cols);
        }
    }
}
