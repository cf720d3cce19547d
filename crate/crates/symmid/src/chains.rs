//! Asymptotics over a growing number of variables: equivariant Hilbert and
//! Poincaré series as exact rational functions in `s, t, u`, multiplicity
//! growth, and stability of one coefficient matrix across a whole chain of
//! rings.
//!
//! The chain attached to an `r x P(d)` coefficient matrix is the family of
//! ideals cut out by the same invariant data in every `k[x_1..x_n]`; its
//! per-`n` Hilbert functions and Betti tables are packaged into generating
//! functions whose coefficients are checked against the per-instance
//! computations, never the other way around.

use std::collections::BTreeMap;

use num::bigint::BigUint;
use num::{One, Zero};
use serde::Serialize;

use crate::construction::{certify_from_invariant, min_vars_for_construction, psi_generators};
use crate::duality::InvariantSubspace;
use crate::exactla::RankMode;
use crate::exec::{map_collect, ExecMode};
use crate::invariants::{
    betti_formula, betti_oracle, binomial, expected_general_hf, hilbert_function, BettiTable,
};
use crate::partitions::{self, Partition};
use crate::polyring::monomial_basis;
use crate::ratio::{rat, rat_abs, rat_to_string, Rat};

/// Exponent order: `[s, t, u]`.
pub type Exp = [u32; 3];

/// Polynomial over the rationals in the three series variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MPoly::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    /// The variable with the given index (`0 = s`, `1 = t`, `2 = u`).
    pub fn var(idx: usize) -> Self {
        let mut e = [0u32; 3];
        e[idx] = 1;
        let mut p = MPoly::zero();
        p.add_term(e, Rat::one());
        p
    }

    pub fn monomial(e: Exp, c: Rat) -> Self {
        let mut p = MPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&[0, 0, 0])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({"exp": e, "coef": rat_to_string(c)}))
            .collect();
        serde_json::json!(terms)
    }
}

/// `1 - s`.
fn one_minus_s() -> MPoly {
    MPoly::one().sub(&MPoly::var(0))
}

/// Quotient of polynomials in `s, t, u`. The stored pair need not be in
/// lowest terms; equality is decided by cross multiplication and all
/// expansions are exact, so every comparison behaves as if reduced.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: MPoly,
    pub den: MPoly,
}

impl RationalFunction {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        RationalFunction { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RationalFunction::new(p, MPoly::one())
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rat) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }

    /// Truncated power-series expansion around the origin; requires a unit
    /// constant term in the denominator.
    pub fn expand(&self, caps: Exp) -> TruncatedSeries {
        let d0 = self.den.constant_term();
        assert!(!d0.is_zero(), "expansion needs a unit constant term");
        let within = |e: &Exp| e[0] <= caps[0] && e[1] <= caps[1] && e[2] <= caps[2];
        let mut coeffs: BTreeMap<Exp, Rat> = BTreeMap::new();
        for s in 0..=caps[0] {
            for t in 0..=caps[1] {
                for u in 0..=caps[2] {
                    let gamma = [s, t, u];
                    let mut acc = self
                        .num
                        .terms
                        .get(&gamma)
                        .cloned()
                        .unwrap_or_else(Rat::zero);
                    for (beta, dcoef) in &self.den.terms {
                        if *beta == [0, 0, 0] || !within(beta) {
                            continue;
                        }
                        if beta[0] <= s && beta[1] <= t && beta[2] <= u {
                            let prev = [s - beta[0], t - beta[1], u - beta[2]];
                            if let Some(c) = coeffs.get(&prev) {
                                acc -= dcoef * c;
                            }
                        }
                    }
                    let value = acc / &d0;
                    if !value.is_zero() {
                        coeffs.insert(gamma, value);
                    }
                }
            }
        }
        TruncatedSeries { caps, coeffs }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

/// Coefficients of a power series through per-variable caps.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub caps: Exp,
    pub coeffs: BTreeMap<Exp, Rat>,
}

impl TruncatedSeries {
    pub fn coeff(&self, e: Exp) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// The coefficient of `s^n` as a dense polynomial in `t` (`u` at 0).
    pub fn t_polynomial_at_s(&self, n: u32) -> Vec<Rat> {
        (0..=self.caps[1]).map(|t| self.coeff([n, t, 0])).collect()
    }

    /// Multiplies back by a polynomial, truncating to the same caps.
    pub fn mul_poly(&self, p: &MPoly) -> TruncatedSeries {
        let mut coeffs: BTreeMap<Exp, Rat> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            for (f, d) in p.terms() {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                if g[0] <= self.caps[0] && g[1] <= self.caps[1] && g[2] <= self.caps[2] {
                    let entry = coeffs.entry(g).or_insert_with(Rat::zero);
                    *entry += c * d;
                }
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        TruncatedSeries {
            caps: self.caps,
            coeffs,
        }
    }

    /// Restriction of a polynomial to the cap box.
    pub fn poly_truncated(p: &MPoly, caps: Exp) -> TruncatedSeries {
        let coeffs = p
            .terms()
            .filter(|(e, _)| e[0] <= caps[0] && e[1] <= caps[1] && e[2] <= caps[2])
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        TruncatedSeries { caps, coeffs }
    }
}

/// The equivariant Hilbert series of the chain for parameters `(d, r)`, in
/// reduced form:
/// `[s * sum_{j<d} (1-s)^j t^{d-1-j} + a (1-s)^{d-1} t^d] / (1-s)^d`
/// with `a = P(d) - r`.
pub fn equivariant_hilbert_series(d: u32, r: usize) -> RationalFunction {
    let p = partitions::count(d);
    assert!(r <= p, "r must be at most P(d)");
    let a = (p - r) as i64;
    let s = MPoly::var(0);
    let t = MPoly::var(1);
    let omss = one_minus_s();
    let mut num = MPoly::zero();
    for j in 0..d {
        num = num.add(&s.mul(&omss.pow(j)).mul(&t.pow(d - 1 - j)));
    }
    num = num.add(&omss.pow(d - 1).mul(&t.pow(d)).scale(&rat(a)));
    RationalFunction::new(num, omss.pow(d))
}

/// The unreduced variant with numerator `s * sum_{j<=d} (1-s)^j t^{d-j}`:
/// kept so the per-instance oracle can adjudicate between the two written
/// forms. Expansion shows this one does not reproduce the instance Hilbert
/// functions.
pub fn hilbert_series_unreduced_variant(d: u32, r: usize) -> RationalFunction {
    let p = partitions::count(d);
    assert!(r <= p);
    let a = (p - r) as i64;
    let s = MPoly::var(0);
    let t = MPoly::var(1);
    let omss = one_minus_s();
    let mut num = MPoly::zero();
    for j in 0..=d {
        num = num.add(&s.mul(&omss.pow(j)).mul(&t.pow(d - j)));
    }
    num = num.add(&omss.pow(d - 1).mul(&t.pow(d)).scale(&rat(a)));
    RationalFunction::new(num, omss.pow(d))
}

/// The equivariant bigraded Poincaré series of the chain:
/// `1/(1-s) + s t u^d [ 1/((1-s)(1-s-stu)^d)
///                      - a/((1-s-stu)(1-stu))
///                      + (l + a u + l s u)/(1-stu) ]`
/// with `a = P(d) - r` and `l = max{P(d) - P(d-1) - r, 0}`.
pub fn equivariant_poincare_series(d: u32, r: usize) -> RationalFunction {
    let p = partitions::count(d);
    assert!(r <= p);
    let a = (p - r) as i64;
    let ell = p.saturating_sub(partitions::count(d - 1) + r) as i64;

    let s = MPoly::var(0);
    let t = MPoly::var(1);
    let u = MPoly::var(2);
    let stu = s.mul(&t).mul(&u);
    let omss = one_minus_s();
    let core = omss.sub(&stu); // 1 - s - stu
    let omstu = MPoly::one().sub(&stu); // 1 - stu

    let lead = RationalFunction::new(MPoly::one(), omss.clone());
    let term1 = RationalFunction::new(MPoly::one(), omss.mul(&core.pow(d)));
    let term2 = RationalFunction::new(MPoly::constant(rat(a)), core.mul(&omstu));
    let term3_num = MPoly::constant(rat(ell))
        .add(&u.scale(&rat(a)))
        .add(&s.mul(&u).scale(&rat(ell)));
    let term3 = RationalFunction::new(term3_num, omstu);
    let bracket = term1.sub(&term2).add(&term3);
    let prefactor = RationalFunction::from_poly(s.mul(&t).mul(&u.pow(d)));
    lead.add(&prefactor.mul(&bracket))
}

/// Multiplicity of one chain stage: `binom(n+d-1, d-1) + P(d) - r`.
pub fn multiplicity_formula(n: usize, d: u32, r: usize) -> BigUint {
    let binom = binomial((n + d as usize - 1) as u64, (d - 1) as u64);
    BigUint::from(binom) + BigUint::from(partitions::count(d) - r)
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityRow {
    pub n: usize,
    pub multiplicity: String,
    pub ratio: String,
    pub deviation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub d: u32,
    pub r: usize,
    pub limit: String,
    pub rows: Vec<MultiplicityRow>,
    /// Deviations from the limit shrink weakly along the range.
    pub deviation_monotone: bool,
    pub final_deviation: String,
}

/// Evaluates `e(R_n/I_n) / n^{d-1}` over a range of `n` and reports the
/// drift toward `1/(d-1)!`.
pub fn multiplicity_limit_check(
    d: u32,
    r: usize,
    n_range: impl Iterator<Item = usize>,
) -> MultiplicityReport {
    let mut fact = Rat::one();
    for k in 1..d as i64 {
        fact *= rat(k);
    }
    let limit = Rat::one() / fact;
    let mut rows = Vec::new();
    let mut deviations: Vec<Rat> = Vec::new();
    for n in n_range {
        let e = multiplicity_formula(n, d, r);
        let e_rat = Rat::from_integer(e.clone().into());
        let mut denom = Rat::one();
        for _ in 1..d {
            denom *= rat(n as i64);
        }
        let ratio = e_rat / denom;
        let deviation = rat_abs(&(ratio.clone() - limit.clone()));
        rows.push(MultiplicityRow {
            n,
            multiplicity: e.to_string(),
            ratio: rat_to_string(&ratio),
            deviation: rat_to_string(&deviation),
        });
        deviations.push(deviation);
    }
    let deviation_monotone = deviations.windows(2).all(|w| w[1] <= w[0]);
    let final_deviation = deviations
        .last()
        .map(|d| rat_to_string(d))
        .unwrap_or_default();
    MultiplicityReport {
        d,
        r,
        limit: rat_to_string(&limit),
        rows,
        deviation_monotone,
        final_deviation,
    }
}

/// Per-stage outcome inside a chain run.
#[derive(Serialize)]
pub struct ChainStage {
    pub n: usize,
    pub certified: bool,
    pub hf: Vec<usize>,
    pub hf_matches_formula: bool,
    pub betti_formula_totals: Vec<u64>,
    /// Koszul oracle agreement, where the oracle ran.
    pub betti_oracle_matches: Option<bool>,
    pub projective_dimension_is_n: Option<bool>,
    pub regularity_is_d: Option<bool>,
    /// Structured-generator route agrees with the annihilator route,
    /// where the construction fits.
    pub generator_route_matches: Option<bool>,
    #[serde(skip)]
    pub certificate: crate::construction::GenericityCertificate,
}

/// A fixed coefficient matrix run across a list of ring sizes.
#[derive(Serialize)]
pub struct ChainInstance {
    pub d: u32,
    pub r: usize,
    pub alpha: Vec<Vec<String>>,
    pub m0: usize,
    pub stages: Vec<ChainStage>,
    /// First `n` at which any check failed.
    pub first_failure: Option<usize>,
}

impl ChainInstance {
    pub fn all_passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Builds the chain of ideals cut out by `alpha` at each `n` in the list,
/// certifies every stage, and checks the stage data against the closed
/// formulas; on oracle-sized stages the Betti table, projective dimension
/// `n`, and regularity `d` are verified by Koszul homology.
pub fn chain_stability_check(
    alpha: &[Vec<Rat>],
    d: u32,
    r: usize,
    n_list: &[usize],
    mode: RankMode,
) -> ChainInstance {
    assert!(!alpha.is_empty() && alpha.len() == r);
    let p = partitions::count(d);
    let a = p - r;
    let expected_reg = if a > 0 {
        d as usize
    } else {
        (d as usize).saturating_sub(1)
    };

    let stages: Vec<ChainStage> = map_collect(ExecMode::Auto, n_list.to_vec(), |n| {
        let u = InvariantSubspace::from_alpha_rows(n, d, alpha);
        let outcome = certify_from_invariant(&u, r, mode);
        let hf = hilbert_function(&outcome.quotient);
        let hf_matches = hf == expected_general_hf(n, d, r);
        let formula = betti_formula(n, d, r);
        let totals: Vec<u64> = (0..=n).map(|i| formula.total(i)).collect();

        let oracle: Option<BettiTable> = betti_oracle(&outcome.quotient).ok();
        let betti_oracle_matches = oracle.as_ref().map(|o| o.beta == formula.beta);
        let projective_dimension_is_n = oracle.as_ref().map(|o| o.projective_dimension() == n);
        let regularity_is_d = oracle.as_ref().map(|o| o.regularity() == expected_reg);

        let fits = alpha.iter().all(|row| {
            let table = partitions::enumerate(d, d as usize);
            row.iter()
                .position(|c| !c.is_zero())
                .map(|idx| min_vars_for_construction(d, &table.entries[idx]) <= n)
                .unwrap_or(false)
        });
        let generator_route_matches = if fits {
            Some(match psi_generators(&u, n, mode) {
                Ok(psi) => psi.slice.space == outcome.quotient.ideal_slice.space,
                Err(_) => false,
            })
        } else {
            None
        };

        ChainStage {
            n,
            certified: outcome.certificate.passed,
            hf,
            hf_matches_formula: hf_matches,
            betti_formula_totals: totals,
            betti_oracle_matches,
            projective_dimension_is_n,
            regularity_is_d,
            generator_route_matches,
            certificate: outcome.certificate,
        }
    });

    let first_failure = stages
        .iter()
        .find(|s| {
            !s.certified
                || !s.hf_matches_formula
                || s.betti_oracle_matches == Some(false)
                || s.projective_dimension_is_n == Some(false)
                || s.regularity_is_d == Some(false)
                || s.generator_route_matches == Some(false)
        })
        .map(|s| s.n);

    ChainInstance {
        d,
        r,
        alpha: alpha
            .iter()
            .map(|row| row.iter().map(rat_to_string).collect())
            .collect(),
        m0: n_list.first().copied().unwrap_or(0),
        stages,
        first_failure,
    }
}

/// `P_n(d)`-aware listing of valid `r` values for the series grids.
pub fn all_r_for(d: u32) -> Vec<usize> {
    (1..=partitions::count(d)).collect()
}

/// The degree-`d` coefficient list `(1, n, .., dim R_{d-1}, a)` predicted
/// for a stage, used when comparing series coefficients to instances.
pub fn stage_hf_polynomial(n: usize, d: u32, r: usize) -> Vec<usize> {
    let mut v = expected_general_hf(n, d, r);
    v.pop(); // drop the trailing zero above degree d
    v
}

/// Dual monomial count of one graded piece, re-exported for reports.
pub fn graded_piece_size(n: usize, d: u32) -> usize {
    monomial_basis(n, d).len()
}

/// Lex-smallest partition of `d`, the default anchor type for chains.
pub fn smallest_partition(d: u32) -> Partition {
    partitions::enumerate(d, d as usize)
        .entries
        .first()
        .cloned()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::random_alpha;
    use crate::ratio::rat_frac;

    #[test]
    fn mpoly_arithmetic() {
        let s = MPoly::var(0);
        let t = MPoly::var(1);
        let p = s.add(&t).pow(2);
        assert_eq!(p.terms().count(), 3);
        assert_eq!(p.terms.get(&[1, 1, 0]), Some(&rat(2)));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn expansion_times_denominator_recovers_numerator() {
        // self-test of the series engine
        let s = MPoly::var(0);
        let t = MPoly::var(1);
        let den = MPoly::one().sub(&s.add(&t.scale(&rat(2))));
        let num = MPoly::one().add(&s.mul(&t));
        let f = RationalFunction::new(num.clone(), den.clone());
        let caps = [8, 8, 0];
        let series = f.expand(caps);
        let back = series.mul_poly(&den);
        // agreement on the safe window where truncation cannot leak
        for se in 0..=4u32 {
            for te in 0..=4u32 {
                assert_eq!(
                    back.coeff([se, te, 0]),
                    num.terms
                        .get(&[se, te, 0])
                        .cloned()
                        .unwrap_or_else(Rat::zero)
                );
            }
        }
    }

    #[test]
    fn geometric_series_expansion() {
        let f = RationalFunction::new(MPoly::one(), one_minus_s());
        let series = f.expand([6, 0, 0]);
        for n in 0..=6u32 {
            assert_eq!(series.coeff([n, 0, 0]), rat(1));
        }
    }

    #[test]
    fn hilbert_series_small_coefficients() {
        // d = 2, r = 1: coefficient of s^3 is 1 + 3t + t^2
        let h = equivariant_hilbert_series(2, 1);
        let series = h.expand([8, 4, 0]);
        assert_eq!(series.t_polynomial_at_s(3)[..3], [rat(1), rat(3), rat(1)]);

        // d = 1, r = 1: every stage is the residue field
        let h = equivariant_hilbert_series(1, 1);
        let series = h.expand([6, 2, 0]);
        for n in 1..=6u32 {
            assert_eq!(series.coeff([n, 0, 0]), rat(1));
            assert_eq!(series.coeff([n, 1, 0]), rat(0));
        }
        assert_eq!(series.coeff([0, 0, 0]), rat(0));

        // d = 3, r = 1: coefficient of s^5 is 1 + 5t + 15t^2 + 2t^3
        let h = equivariant_hilbert_series(3, 1);
        let series = h.expand([8, 4, 0]);
        assert_eq!(
            series.t_polynomial_at_s(5)[..4],
            [rat(1), rat(5), rat(15), rat(2)]
        );
    }

    #[test]
    fn hilbert_series_matches_stage_formula_from_n_min() {
        // below n_min the series coefficients are formula extensions (they
        // use P(d) where a small ring only sees P_n(d)), so the comparison
        // starts at the guaranteed bound
        for d in 1..=3u32 {
            for r in all_r_for(d) {
                let series = equivariant_hilbert_series(d, r).expand([8, d + 1, 0]);
                for n in crate::invariants::n_min(d, r)..=8usize {
                    let expected = stage_hf_polynomial(n, d, r);
                    let poly = series.t_polynomial_at_s(n as u32);
                    for (i, &e) in expected.iter().enumerate() {
                        assert_eq!(poly[i], rat(e as i64), "d={d} r={r} n={n} t^{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn unreduced_variant_disagrees_with_stages() {
        let h = hilbert_series_unreduced_variant(2, 1);
        let series = h.expand([6, 3, 0]);
        let poly = series.t_polynomial_at_s(3);
        assert_ne!(poly[..3], [rat(1), rat(3), rat(1)]);
    }

    #[test]
    fn poincare_series_beta_columns() {
        // coefficient of t^i u^{i+d} is a s^i + l s^{i+1}
        for (d, r) in [(2u32, 1usize), (3, 1), (3, 2), (2, 2)] {
            let p = partitions::count(d);
            let a = (p - r) as i64;
            let ell = p.saturating_sub(partitions::count(d - 1) + r) as i64;
            let series = equivariant_poincare_series(d, r).expand([10, 7, 10]);
            for i in 1..=6u32 {
                let j = i + d;
                if j > 10 {
                    continue;
                }
                for se in 0..=9u32 {
                    let expected = if se == i {
                        rat(a)
                    } else if se == i + 1 {
                        rat(ell)
                    } else {
                        rat(0)
                    };
                    assert_eq!(
                        series.coeff([se, i, j]),
                        expected,
                        "d={d} r={r} i={i} s^{se}"
                    );
                }
            }
        }
    }

    #[test]
    fn poincare_matches_betti_formula_entries() {
        for d in 1..=3u32 {
            for r in all_r_for(d) {
                let nm = crate::invariants::n_min(d, r);
                let series = equivariant_poincare_series(d, r).expand([6, 7, 9]);
                for n in nm..=6usize {
                    let table = betti_formula(n, d, r);
                    for i in 0..=n {
                        for j in i..=(i + d as usize) {
                            if i as u32 > 7 || j as u32 > 9 {
                                continue;
                            }
                            assert_eq!(
                                series.coeff([n as u32, i as u32, j as u32]),
                                rat(table.entry(i, j) as i64),
                                "d={d} r={r} n={n} beta({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicity_limits() {
        let report = multiplicity_limit_check(2, 1, (3..=50).step_by(7));
        assert_eq!(report.limit, "1");
        let last: Rat = crate::ratio::rat_from_str(&report.final_deviation).unwrap();
        assert!(last < rat_frac(1, 10));

        let report = multiplicity_limit_check(3, 1, [10, 50, 100].into_iter());
        let last: Rat = crate::ratio::rat_from_str(&report.final_deviation).unwrap();
        assert!(last < rat_frac(1, 2) * rat_frac(5, 100) + rat_frac(1, 1000));
        assert!(report.deviation_monotone);

        let report = multiplicity_limit_check(1, 1, (1..=5).into_iter());
        for row in &report.rows {
            assert_eq!(row.ratio, "1");
        }
    }

    #[test]
    fn chain_stability_quadratic() {
        let alpha = random_alpha(2, 1, 2, 50);
        let chain = chain_stability_check(&alpha, 2, 1, &[3, 4, 5], RankMode::Exact);
        assert!(
            chain.all_passed(),
            "first failure at {:?}",
            chain.first_failure
        );
        for stage in &chain.stages {
            assert_eq!(stage.betti_oracle_matches, Some(true));
            assert_eq!(stage.projective_dimension_is_n, Some(true));
            assert_eq!(stage.regularity_is_d, Some(true));
        }
        // the construction fits from n = 4 on
        assert_eq!(chain.stages[0].generator_route_matches, None);
        assert_eq!(chain.stages[1].generator_route_matches, Some(true));
    }

    #[test]
    fn chain_trivial_linear_case() {
        let alpha = vec![vec![rat(1)]];
        let chain = chain_stability_check(&alpha, 1, 1, &[2, 3, 4], RankMode::Exact);
        assert!(chain.all_passed());
    }
}
