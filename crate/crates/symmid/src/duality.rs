//! Macaulay-Matlis duality realized as pairing-matrix kernels.
//!
//! A graded ideal slice `I_d ⊆ R_d` and an inverse-system slice
//! `W ⊆ S_{-d}` pair through contraction; under the monomial bases the
//! pairing matrix of a slice is just its coefficient matrix, so
//! annihilators and inverse systems in a single degree are plain kernels.
//! Inverse systems are only ever materialized one graded piece at a time:
//! the ideals here are generated in one degree and the `S_{>= -d+1}` tail
//! of their inverse systems is handled by degree bookkeeping (contracting a
//! degree-`d` form into anything shallower than `-d` gives zero).
//!
//! Invariant subspaces carry their coordinates in the `m_lambda` /
//! `M_lambda` bases; conversion to monomial coordinates is always explicit.

use serde::Serialize;

use crate::exactla::{RatMatrix, Subspace};
use crate::partitions::{self, PartitionTable};
use crate::polyring::{
    self, basis_index, big_m_basis, contract, m_basis, monomial_basis, reynolds_m_coords, Monomial,
    Polynomial,
};
use crate::ratio::Rat;
use num::Zero;

/// `dim R_d` for `n` variables: `binom(n + d - 1, d)`.
pub fn dim_graded_piece(n: usize, d: u32) -> usize {
    let d = d as u128;
    let n = n as u128;
    if n == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let mut acc: u128 = 1;
    for i in 0..d {
        acc = acc * (n + i) / (i + 1);
    }
    acc as usize
}

/// The degree-`d` piece of a homogeneous ideal of `k[x_1..x_n]`, as a
/// subspace of `R_d` over the graded-lex monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdealSlice {
    pub n: usize,
    pub d: u32,
    pub space: Subspace,
}

impl GradedIdealSlice {
    pub fn new(n: usize, d: u32, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), dim_graded_piece(n, d));
        GradedIdealSlice { n, d, space }
    }

    pub fn from_polynomials(n: usize, d: u32, polys: &[Polynomial]) -> Self {
        let basis = monomial_basis(n, d);
        let index = basis_index(&basis);
        let rows: Vec<Vec<Rat>> = polys
            .iter()
            .inspect(|p| {
                assert!(!p.is_dual(), "ideal slices live in R");
                assert!(
                    p.is_zero() || p.degree() == Some(d as i64),
                    "degree mismatch"
                );
            })
            .map(|p| p.coeff_vec(&index, basis.len()))
            .collect();
        GradedIdealSlice::new(n, d, Subspace::from_spanning_rows(basis.len(), rows))
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels: Vec<String> = monomial_basis(self.n, self.d)
            .iter()
            .map(|m| format!("{m:?}"))
            .collect();
        serde_json::json!({
            "n": self.n, "d": self.d, "space": self.space.to_json(&labels),
        })
    }
}

/// The degree-`(-d)` piece of an inverse system, as a subspace of `S_{-d}`
/// over the dual monomial basis (indexed like the monomials of `R_d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystemSlice {
    pub n: usize,
    pub d: u32,
    pub space: Subspace,
}

impl InverseSystemSlice {
    pub fn new(n: usize, d: u32, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), dim_graded_piece(n, d));
        InverseSystemSlice { n, d, space }
    }

    pub fn from_polynomials(n: usize, d: u32, polys: &[Polynomial]) -> Self {
        let basis = monomial_basis(n, d);
        let index = basis_index(&basis);
        let rows: Vec<Vec<Rat>> = polys
            .iter()
            .inspect(|p| {
                assert!(p.is_dual(), "inverse-system slices live in S");
                assert!(
                    p.is_zero() || p.degree() == Some(-(d as i64)),
                    "degree mismatch"
                );
            })
            .map(|p| p.coeff_vec(&index, basis.len()))
            .collect();
        InverseSystemSlice::new(n, d, Subspace::from_spanning_rows(basis.len(), rows))
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `[Ann_R(W + S_{>= -d+1})]_d`: the forms of degree `d` contracting every
/// element of `W` to zero. Kernel of `W`'s coefficient matrix; its
/// dimension is `dim R_d - dim W`.
pub fn ann_degree(w: &InverseSystemSlice) -> GradedIdealSlice {
    let space = if w.dim() == 0 {
        Subspace::full(w.space.ambient_dim())
    } else {
        w.space.basis_matrix().kernel()
    };
    GradedIdealSlice::new(w.n, w.d, space)
}

/// `(I^{-1})_{-d}` for the ideal generated by the given degree-`d` slice:
/// kernel of the transposed pairing.
pub fn inverse_system_degree(i: &GradedIdealSlice) -> InverseSystemSlice {
    let space = if i.dim() == 0 {
        Subspace::full(i.space.ambient_dim())
    } else {
        i.space.basis_matrix().kernel()
    };
    InverseSystemSlice::new(i.n, i.d, space)
}

/// A subspace `U` of the invariant piece `R'_d`, stored canonically in the
/// `m_lambda` coordinates (partitions of `d` with at most `n` parts, lex
/// ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspace {
    pub n: usize,
    pub d: u32,
    pub table: PartitionTable,
    pub space: Subspace,
}

/// A subspace `W` of `S'_{-d}`, stored in the dual `M_lambda` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantDualSubspace {
    pub n: usize,
    pub d: u32,
    pub table: PartitionTable,
    pub space: Subspace,
}

impl InvariantSubspace {
    pub fn from_m_rows(n: usize, d: u32, rows: Vec<Vec<Rat>>) -> Self {
        let table = partitions::enumerate(d, n);
        let space = Subspace::from_spanning_rows(table.len(), rows);
        InvariantSubspace { n, d, table, space }
    }

    /// Builds `U = span{ sum_lambda alpha_lambda M_lambda }` from rows of
    /// `M`-basis coefficients, converting to `m` coordinates via
    /// `m_lambda = multinomial * M_lambda`. Rows indexed by all partitions
    /// of `d` are accepted even when `n < d`: coordinates on partitions
    /// with more than `n` parts are dropped, since those `M_lambda` vanish
    /// in `n` variables.
    pub fn from_alpha_rows(n: usize, d: u32, alpha_rows: &[Vec<Rat>]) -> Self {
        let full = partitions::enumerate(d, d as usize);
        let table = partitions::enumerate(d, n);
        let keep: Vec<usize> = full
            .entries
            .iter()
            .enumerate()
            .filter(|(_, l)| l.num_parts() <= n)
            .map(|(i, _)| i)
            .collect();
        let scalings = polyring::m_to_big_m_scalings(&table, n);
        let rows: Vec<Vec<Rat>> = alpha_rows
            .iter()
            .map(|row| {
                assert!(row.len() == full.len() || row.len() == table.len());
                let projected: Vec<&Rat> = if row.len() == table.len() {
                    row.iter().collect()
                } else {
                    keep.iter().map(|&i| &row[i]).collect()
                };
                projected
                    .iter()
                    .zip(&scalings)
                    .map(|(a, s)| *a / s)
                    .collect()
            })
            .collect();
        let space = Subspace::from_spanning_rows(table.len(), rows);
        InvariantSubspace { n, d, table, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `M`-basis coefficient rows of the canonical `m`-coordinate basis.
    pub fn alpha_rows(&self) -> Vec<Vec<Rat>> {
        let scalings = polyring::m_to_big_m_scalings(&self.table, self.n);
        (0..self.dim())
            .map(|r| {
                self.space
                    .basis_matrix()
                    .row(r)
                    .iter()
                    .zip(&scalings)
                    .map(|(c, s)| c * s)
                    .collect()
            })
            .collect()
    }

    /// Basis rows expanded into monomial coordinates of `R_d`.
    pub fn to_form_vectors(&self) -> Vec<Vec<Rat>> {
        expand_invariant_rows(&self.space, &self.table, self.n, self.d, false)
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        (0..self.dim())
            .map(|r| {
                let mut f = Polynomial::zero(self.n, false);
                for (coef, lambda) in self
                    .space
                    .basis_matrix()
                    .row(r)
                    .iter()
                    .zip(&self.table.entries)
                {
                    if !coef.is_zero() {
                        f = f.add(&m_basis(lambda, self.n, false).unwrap().scale(coef));
                    }
                }
                f
            })
            .collect()
    }
}

impl InvariantDualSubspace {
    pub fn from_theta_rows(n: usize, d: u32, rows: Vec<Vec<Rat>>) -> Self {
        let table = partitions::enumerate(d, n);
        let space = Subspace::from_spanning_rows(table.len(), rows);
        InvariantDualSubspace { n, d, table, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Basis rows expanded into dual-monomial coordinates of `S_{-d}`.
    pub fn to_dual_vectors(&self) -> Vec<Vec<Rat>> {
        expand_invariant_rows(&self.space, &self.table, self.n, self.d, true)
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        (0..self.dim())
            .map(|r| {
                let mut f = Polynomial::zero(self.n, true);
                for (coef, lambda) in self
                    .space
                    .basis_matrix()
                    .row(r)
                    .iter()
                    .zip(&self.table.entries)
                {
                    if !coef.is_zero() {
                        f = f.add(&big_m_basis(lambda, self.n, true).unwrap().scale(coef));
                    }
                }
                f
            })
            .collect()
    }

    /// The slice of `S_{-d}` spanned by this invariant subspace.
    pub fn to_inverse_system_slice(&self) -> InverseSystemSlice {
        let ambient = dim_graded_piece(self.n, self.d);
        InverseSystemSlice::new(
            self.n,
            self.d,
            Subspace::from_spanning_rows(ambient, self.to_dual_vectors()),
        )
    }
}

/// Expands invariant coordinate rows into full monomial coordinates.
/// `m` rows put the coefficient on every monomial of the type; `M` rows
/// divide by the type's multinomial first.
fn expand_invariant_rows(
    space: &Subspace,
    table: &PartitionTable,
    n: usize,
    d: u32,
    dual: bool,
) -> Vec<Vec<Rat>> {
    let basis = monomial_basis(n, d);
    let index = basis_index(&basis);
    let scalings = polyring::m_to_big_m_scalings(table, n);
    (0..space.dim())
        .map(|r| {
            let mut v = vec![Rat::zero(); basis.len()];
            for (j, lambda) in table.entries.iter().enumerate() {
                let coef = &space.basis_matrix().row(r)[j];
                if coef.is_zero() {
                    continue;
                }
                let coef = if dual {
                    coef / &scalings[j]
                } else {
                    coef.clone()
                };
                for exps in partitions::monomials_of_type(lambda, n) {
                    let idx = index[&Monomial::new(exps)];
                    v[idx] = coef.clone();
                }
            }
            v
        })
        .collect()
}

/// `U^perp = { w in S'_{-d} : u ∘ w = 0 for all u in U }`. Because the
/// `m` and `M` bases are dual under contraction, this is the coordinate
/// orthogonal complement; `dim U + dim U^perp = P_n(d)`.
pub fn perp(u: &InvariantSubspace) -> InvariantDualSubspace {
    let space = u.space.orthogonal_complement();
    InvariantDualSubspace {
        n: u.n,
        d: u.d,
        table: u.table.clone(),
        space,
    }
}

/// The complement in the other direction; `perp_dual(perp(U)) = U`.
pub fn perp_dual(w: &InvariantDualSubspace) -> InvariantSubspace {
    let space = w.space.orthogonal_complement();
    InvariantSubspace {
        n: w.n,
        d: w.d,
        table: w.table.clone(),
        space,
    }
}

/// Checks `[Ann_R(U^perp)]_d = { f in R_d : rho(f) in U }` by computing
/// both sides independently and comparing canonical subspaces.
pub fn ann_vs_reynolds_preimage(u: &InvariantSubspace) -> bool {
    let n = u.n;
    let d = u.d;
    let basis = monomial_basis(n, d);

    // left side: annihilator of the expanded U^perp
    let w = perp(u).to_inverse_system_slice();
    let left = ann_degree(&w).space;

    // right side: preimage of U under the Reynolds coordinate map. A form
    // maps to its type-indicator sums in M coordinates; membership in U is
    // cut out by the complement of U's M-coordinate row space.
    let table = &u.table;
    let scalings = polyring::m_to_big_m_scalings(table, n);
    let u_in_m_coords = &u.space;
    // U's M-coordinate space: scale each m-coordinate by the multinomial
    let u_m_rows: Vec<Vec<Rat>> = (0..u_in_m_coords.dim())
        .map(|r| {
            u_in_m_coords
                .basis_matrix()
                .row(r)
                .iter()
                .zip(&scalings)
                .map(|(c, s)| c * s)
                .collect()
        })
        .collect();
    let u_big = Subspace::from_spanning_rows(table.len(), u_m_rows);
    let q = u_big.orthogonal_complement();
    // rows of Q * Theta, where Theta[lambda, mono] = [type(mono) = lambda]
    let mut conditions = Vec::with_capacity(q.dim());
    for r in 0..q.dim() {
        let qrow = q.basis_matrix().row(r);
        let v: Vec<Rat> = basis
            .iter()
            .map(|m| {
                let idx = table.index_of(&m.type_partition()).unwrap();
                qrow[idx].clone()
            })
            .collect();
        conditions.push(v);
    }
    let right = if conditions.is_empty() {
        Subspace::full(basis.len())
    } else {
        RatMatrix::from_rows(conditions).kernel()
    };

    left == right
}

/// Outcome of the degree-level identities tying a symmetric ideal to its
/// invariant socle data `U`.
#[derive(Clone, Debug, Serialize)]
pub struct InverseIdentityReport {
    /// `(I^{-1})_{-d}` equals `U^perp` expanded inside `S_{-d}`.
    pub inverse_slice_matches: bool,
    /// Degree `-d+1` of the module generated by `U^perp` and the invariant
    /// tail, using only elements of the truncation `S'_{>= -d+1}`:
    /// `R_1 ∘ U^perp + S'_{-d+1} = S_{-d+1}`.
    pub extension_truncated: bool,
    /// Degree `-d+1` of `R ∘ S'`: every dual monomial of degree `-d+1` is
    /// a contraction of a single-term deep invariant, verified
    /// constructively monomial by monomial.
    pub extension_full_invariants: bool,
    /// `rho(I_d) = U`.
    pub reynolds_image_matches: bool,
    pub dims: InverseIdentityDims,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseIdentityDims {
    pub inverse_slice: usize,
    pub perp: usize,
    pub truncated_reach: usize,
    pub target: usize,
}

impl InverseIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.inverse_slice_matches && self.extension_full_invariants && self.reynolds_image_matches
    }
}

/// Verifies, one graded piece at a time, the identities relating the ideal
/// generated by `slice` to the invariant subspace `U = rho(I_d)`. The
/// truncated extension check is reported as data: when `d >= 3` the
/// truncated module cannot reach all of `S_{-d+1}` for dimension reasons
/// (`n * dim W + P_n(d-1) < dim S_{-d+1}`), and the full-invariant variant
/// is the one that closes.
pub fn invariant_inverse_identities(
    slice: &GradedIdealSlice,
    u: &InvariantSubspace,
) -> InverseIdentityReport {
    let n = slice.n;
    let d = slice.d;
    assert_eq!((u.n, u.d), (n, d));
    let w = perp(u);
    let w_slice = w.to_inverse_system_slice();

    // (i) inverse system in degree -d
    let inv = inverse_system_degree(slice);
    let inverse_slice_matches = inv.space == w_slice.space;

    // (ii) truncated extension in degree -(d-1)
    let lower = monomial_basis(n, d.saturating_sub(1));
    let lower_index = basis_index(&lower);
    let target = lower.len();
    let mut reach: Vec<Vec<Rat>> = Vec::new();
    for wpoly in w.basis_polynomials() {
        for i in 0..n {
            let xi = Polynomial::monomial(n, false, Monomial::one(n).mul_var(i), num::One::one());
            let image = contract(&xi, &wpoly);
            reach.push(image.coeff_vec(&lower_index, target));
        }
    }
    if d >= 1 {
        for mu in partitions::enumerate(d - 1, n).entries {
            let inv_basis = m_basis(&mu, n, true).unwrap();
            reach.push(inv_basis.coeff_vec(&lower_index, target));
        }
    }
    let reach_space = Subspace::from_spanning_rows(target, reach);
    let truncated_reach = reach_space.dim();
    let extension_truncated = truncated_reach == target;

    // (ii') full-invariant extension: each dual monomial y^b of degree
    // d-1 is x^(q-b) ∘ (y_1^q ... y_n^q) with q = max(b)
    let mut extension_full_invariants = true;
    for mono in &lower {
        let q = mono.exps().iter().copied().max().unwrap_or(0);
        let deep = Monomial::new(vec![q; n]);
        let co = Monomial::new(mono.exps().iter().map(|&b| q - b).collect());
        let g = Polynomial::monomial(n, true, deep, num::One::one());
        let f = Polynomial::monomial(n, false, co, num::One::one());
        let image = contract(&f, &g);
        let expected = Polynomial::monomial(n, true, mono.clone(), num::One::one());
        if image != expected {
            extension_full_invariants = false;
        }
    }

    // (iii) Reynolds image of the slice
    let table = &u.table;
    let scalings = polyring::m_to_big_m_scalings(table, n);
    let basis = monomial_basis(n, d);
    let rho_rows: Vec<Vec<Rat>> = (0..slice.dim())
        .map(|r| {
            let row = slice.space.basis_matrix().row(r);
            let mut poly = Polynomial::zero(n, false);
            for (m, c) in basis.iter().zip(row.iter()) {
                if !c.is_zero() {
                    poly.add_term(m.clone(), c.clone());
                }
            }
            // m coordinates of rho(f): alpha / multinomial
            reynolds_m_coords(&poly, table)
                .into_iter()
                .zip(&scalings)
                .map(|(a, s)| a / s)
                .collect()
        })
        .collect();
    let rho_image = Subspace::from_spanning_rows(table.len(), rho_rows);
    let reynolds_image_matches = rho_image == u.space;

    InverseIdentityReport {
        inverse_slice_matches,
        extension_truncated,
        extension_full_invariants,
        reynolds_image_matches,
        dims: InverseIdentityDims {
            inverse_slice: inv.dim(),
            perp: w.dim(),
            truncated_reach,
            target,
        },
    }
}
