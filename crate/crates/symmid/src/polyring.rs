//! Sparse multivariate polynomials over the rationals, the symmetric-group
//! action, the Reynolds operator, and the contraction pairing between the
//! polynomial ring `R` and its graded dual `S`.
//!
//! One `Polynomial` type serves both rings, distinguished by a `dual` flag:
//! contraction is the only asymmetric operation and checks the flags. In
//! characteristic zero the contraction rule on monomials is factorial-free,
//! so dual monomials are stored as plain exponent vectors with no
//! divided-power bookkeeping.
//!
//! Monomials are ordered graded-lex with `x1 > x2 > ...`; a graded piece is
//! listed largest-first, which fixes the column order of every matrix built
//! downstream.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{self, Partition, PartitionTable};
use crate::ratio::{rat_from_str, rat_to_string, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("partition has {parts} parts but the ring has {n} variables")]
    TooManyParts { parts: usize, n: usize },
    #[error("cannot restrict to {d} variables from a ring with only {n}")]
    RestrictTooFew { d: usize, n: usize },
}

/// Exponent vector of fixed length `n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The monomial `x^lambda`: part `i` of `lambda` lands on variable `i`.
    pub fn from_partition(lambda: &Partition, n: usize) -> Result<Self, PolyError> {
        if lambda.num_parts() > n {
            return Err(PolyError::TooManyParts {
                parts: lambda.num_parts(),
                n,
            });
        }
        let mut exps = vec![0u32; n];
        for (i, &p) in lambda.parts().iter().enumerate() {
            exps[i] = p;
        }
        Ok(Monomial { exps })
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Nonzero exponents sorted descending.
    pub fn type_partition(&self) -> Partition {
        Partition::from_multiset(self.exps.clone())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul_var(&self, var: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var] += 1;
        Monomial { exps }
    }

    /// Componentwise difference if nonnegative everywhere, else `None`.
    /// This is the monomial contraction rule.
    pub fn try_sub(&self, other: &Monomial) -> Option<Monomial> {
        assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Graded-lex with `x1 > x2 > ...`: higher total degree wins, then the
/// earlier variable with the larger exponent.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.exps.cmp(&other.exps),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `n` variables, largest first in the
/// graded-lex order. This is the fixed column order for pairing matrices.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn go(pos: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == exps.len() {
            exps[pos] = remaining;
            out.push(Monomial::new(exps.clone()));
            exps[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            exps[pos] = e;
            go(pos + 1, remaining - e, exps, out);
            exps[pos] = 0;
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    go(0, d, &mut exps, &mut out);
    out
}

/// Lookup table from monomial to its column index in [`monomial_basis`].
pub fn basis_index(basis: &[Monomial]) -> BTreeMap<Monomial, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// A permutation of `{0, .., n-1}` by its image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` after `other`: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// All `n!` permutations (only sensible for small `n`).
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        heap_permutations(&mut items, &mut out);
        out
    }
}

fn heap_permutations(items: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    fn go(k: usize, items: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if k <= 1 {
            out.push(Permutation {
                images: items.clone(),
            });
            return;
        }
        for i in 0..k {
            go(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let n = items.len();
    go(n, items, out);
}

/// Sparse polynomial: zero coefficients are never stored. Elements of the
/// dual ring `S` carry `dual = true` and negative degrees by convention.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    dual: bool,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(n: usize, dual: bool) -> Self {
        Polynomial {
            n,
            dual,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, dual: bool, terms: Vec<(Monomial, Rat)>) -> Self {
        let mut poly = Polynomial::zero(n, dual);
        for (m, c) in terms {
            poly.add_term(m, c);
        }
        poly
    }

    pub fn monomial(n: usize, dual: bool, m: Monomial, coef: Rat) -> Self {
        Polynomial::from_terms(n, dual, vec![(m, coef)])
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.num_vars(), self.n, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Signed degree when homogeneous: `+d` in `R`, `-d` in `S`.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(if self.dual {
                -(first as i64)
            } else {
                first as i64
            })
        } else {
            None
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        assert_eq!(self.dual, other.dual);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n, self.dual);
        }
        Polynomial {
            n: self.n,
            dual: self.dual,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        assert_eq!(self.dual, other.dual, "cannot multiply across rings");
        let mut out = Polynomial::zero(self.n, self.dual);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n, self.dual);
        for (mm, c) in &self.terms {
            out.add_term(mm.mul(m), c.clone());
        }
        out
    }

    /// Coefficient vector over an indexed monomial basis (one graded piece).
    pub fn coeff_vec(&self, index: &BTreeMap<Monomial, usize>, len: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); len];
        for (m, c) in &self.terms {
            let i = *index
                .get(m)
                .unwrap_or_else(|| panic!("monomial {m:?} outside the ambient basis"));
            v[i] = c.clone();
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev() // largest monomial first, matching the column order
            .map(|(m, c)| serde_json::json!({ "exp": m.exps(), "coef": rat_to_string(c) }))
            .collect();
        serde_json::json!({ "n": self.n, "dual": self.dual, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial, String> {
        let n = v["n"].as_u64().ok_or("missing n")? as usize;
        let dual = v["dual"].as_bool().ok_or("missing dual")?;
        let mut poly = Polynomial::zero(n, dual);
        for t in v["terms"].as_array().ok_or("missing terms")? {
            let exps: Vec<u32> = t["exp"]
                .as_array()
                .ok_or("missing exp")?
                .iter()
                .map(|x| x.as_u64().map(|v| v as u32).ok_or("bad exponent"))
                .collect::<Result<_, _>>()?;
            let coef = rat_from_str(t["coef"].as_str().ok_or("missing coef")?)?;
            poly.add_term(Monomial::new(exps), coef);
        }
        Ok(poly)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{:?}", rat_to_string(c), m)?;
        }
        Ok(())
    }
}

/// The group action `sigma . f`: variable `j` of `f` becomes `x_{sigma(j)}`.
pub fn permute(f: &Polynomial, sigma: &Permutation) -> Polynomial {
    assert_eq!(f.n(), sigma.n());
    let mut out = Polynomial::zero(f.n, f.dual);
    for (m, c) in &f.terms {
        let mut exps = vec![0u32; f.n];
        for (j, &e) in m.exps().iter().enumerate() {
            exps[sigma.apply(j)] = e;
        }
        out.add_term(Monomial::new(exps), c.clone());
    }
    out
}

/// The Reynolds operator `rho(f) = (1/n!) sum_sigma sigma.f`, computed
/// term by term: a monomial of type `lambda` averages to `M_lambda`, so no
/// enumeration of the group is ever needed.
pub fn reynolds(f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.n, f.dual);
    for (m, c) in &f.terms {
        let lambda = m.type_partition();
        let stab = partitions::stabilizer_multinomial(&lambda, f.n)
            .expect("monomial type always fits in its own ring");
        let coef = c / Rat::from_integer(stab.into());
        for exps in partitions::monomials_of_type(&lambda, f.n) {
            out.add_term(Monomial::new(exps), coef.clone());
        }
    }
    out
}

/// Coordinates of `rho(f)` over the `M_lambda` basis indexed by `table`:
/// each term of type `lambda` contributes its coefficient to slot `lambda`.
pub fn reynolds_m_coords(f: &Polynomial, table: &PartitionTable) -> Vec<Rat> {
    let mut coords = vec![Rat::zero(); table.len()];
    for (m, c) in &f.terms {
        let lambda = m.type_partition();
        let i = table
            .index_of(&lambda)
            .unwrap_or_else(|| panic!("type {lambda:?} outside the partition table"));
        coords[i] += c;
    }
    coords
}

/// Contraction `f ∘ g` of `g ∈ S` by `f ∈ R`: exponentwise subtraction on
/// monomials when nonnegative, extended bilinearly. The result lives in `S`.
pub fn contract(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert!(!f.is_dual(), "left operand of contraction must live in R");
    assert!(g.is_dual(), "right operand of contraction must live in S");
    assert_eq!(f.n(), g.n());
    let mut out = Polynomial::zero(f.n, true);
    for (mf, cf) in &f.terms {
        for (mg, cg) in &g.terms {
            if let Some(m) = mg.try_sub(mf) {
                out.add_term(m, cf * cg);
            }
        }
    }
    out
}

/// `m_lambda`: the sum of all distinct monomials of type `lambda`.
pub fn m_basis(lambda: &Partition, n: usize, dual: bool) -> Result<Polynomial, PolyError> {
    if lambda.num_parts() > n {
        return Err(PolyError::TooManyParts {
            parts: lambda.num_parts(),
            n,
        });
    }
    let mut poly = Polynomial::zero(n, dual);
    for exps in partitions::monomials_of_type(lambda, n) {
        poly.add_term(Monomial::new(exps), Rat::one());
    }
    Ok(poly)
}

/// `M_lambda = rho(x^lambda) = m_lambda / multinomial(lambda, n)`.
pub fn big_m_basis(lambda: &Partition, n: usize, dual: bool) -> Result<Polynomial, PolyError> {
    let m = m_basis(lambda, n, dual)?;
    let stab =
        partitions::stabilizer_multinomial(lambda, n).map_err(|_| PolyError::TooManyParts {
            parts: lambda.num_parts(),
            n,
        })?;
    Ok(m.scale(&(Rat::one() / Rat::from_integer(stab.into()))))
}

/// Restriction to the first `d` variables (sets the rest to zero). On
/// invariants of degree `-d` this is a bijection sending `m_lambda` in `n`
/// variables to `m_lambda` in `d` variables.
pub fn delta_restrict(g: &Polynomial, d: usize) -> Result<Polynomial, PolyError> {
    if g.n() < d {
        return Err(PolyError::RestrictTooFew { d, n: g.n() });
    }
    let mut out = Polynomial::zero(d, g.dual);
    for (m, c) in &g.terms {
        if m.exps()[d..].iter().all(|&e| e == 0) {
            out.add_term(Monomial::new(m.exps()[..d].to_vec()), c.clone());
        }
    }
    Ok(out)
}

/// The multinomial scaling `m_lambda = stab * M_lambda` for every partition
/// in the table, as exact rationals. Converts between the two coordinate
/// systems on invariants.
pub fn m_to_big_m_scalings(table: &PartitionTable, n: usize) -> Vec<Rat> {
    table
        .entries
        .iter()
        .map(|l| {
            Rat::from_integer(
                partitions::stabilizer_multinomial(l, n)
                    .expect("table respects the part bound")
                    .into(),
            )
        })
        .collect()
}
