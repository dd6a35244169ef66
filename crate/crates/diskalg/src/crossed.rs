//! Symbolic model of the crossed product of the disk algebra by a single
//! automorphism.
//!
//! Elements are finitely supported twisted Fourier polynomials `Σ f_n Uⁿ`
//! whose coefficients are expression trees, multiplied through the
//! covariance relation `U* f U = f ∘ φ`.  Coefficients stay symbolic so
//! precomposition with powers of the automorphism is exact; two expressions
//! count as equal when they agree on a fixed 64-point sample set.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{DiskAutomorphism, MoebiusWord, WordFactor, DOMAIN_TOL};
use crate::sampleset;

/// Tolerance for sample-set equality of expression trees.
pub const EQUALITY_TOL: f64 = 1e-10;

/// Expression tree for a continuous function on the closed disk, closed
/// under sums, products, conjugation, and precomposition with disk
/// automorphisms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExprFun {
    Const(#[serde(with = "crate::cx::pair")] Complex64),
    /// The coordinate function `z`.
    Z,
    /// The conjugate coordinate `z̄`.
    ConjZ,
    Add(Box<ExprFun>, Box<ExprFun>),
    Mul(Box<ExprFun>, Box<ExprFun>),
    /// `f ∘ w` for a composition word `w` of disk automorphisms.
    Precompose(MoebiusWord, Box<ExprFun>),
}

impl ExprFun {
    pub fn constant(c: Complex64) -> Self {
        ExprFun::Const(c)
    }

    pub fn zero() -> Self {
        ExprFun::Const(Complex64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        ExprFun::Const(Complex64::new(1.0, 0.0))
    }

    pub fn add(self, rhs: ExprFun) -> Self {
        ExprFun::Add(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: ExprFun) -> Self {
        ExprFun::Mul(Box::new(self), Box::new(rhs))
    }

    /// The pointwise complex conjugate, pushed down to the leaves (words are
    /// holomorphic, so conjugation passes through a precomposition).
    pub fn conj(&self) -> Self {
        match self {
            ExprFun::Const(c) => ExprFun::Const(c.conj()),
            ExprFun::Z => ExprFun::ConjZ,
            ExprFun::ConjZ => ExprFun::Z,
            ExprFun::Add(a, b) => a.conj().add(b.conj()),
            ExprFun::Mul(a, b) => a.conj().mul(b.conj()),
            ExprFun::Precompose(w, f) => ExprFun::Precompose(w.clone(), Box::new(f.conj())),
        }
    }

    /// `self ∘ w`.
    pub fn precompose(self, w: MoebiusWord) -> Self {
        ExprFun::Precompose(w, Box::new(self))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let n = z.norm();
        if !(n <= 1.0 + DOMAIN_TOL) {
            return Err(Error::Domain(format!(
                "point outside the closed disk (|z| = {n})"
            )));
        }
        self.eval_inner(z)
    }

    fn eval_inner(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self {
            ExprFun::Const(c) => *c,
            ExprFun::Z => z,
            ExprFun::ConjZ => z.conj(),
            ExprFun::Add(a, b) => a.eval_inner(z)? + b.eval_inner(z)?,
            ExprFun::Mul(a, b) => a.eval_inner(z)? * b.eval_inner(z)?,
            ExprFun::Precompose(w, f) => f.eval_inner(w.eval(z)?)?,
        })
    }

    /// Equality on the deterministic 64-point sample set to [`EQUALITY_TOL`].
    pub fn approx_eq(&self, other: &ExprFun) -> Result<bool> {
        for z in sampleset::equality_points() {
            if (self.eval(z)? - other.eval(z)?).norm() > EQUALITY_TOL {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Single-factor word `phi^n`.
fn phi_power(phi: &DiskAutomorphism, n: i64) -> MoebiusWord {
    MoebiusWord::from_factors(vec![WordFactor {
        map: *phi,
        power: n,
    }])
}

fn is_zero_const(f: &ExprFun) -> bool {
    matches!(f, ExprFun::Const(c) if c.norm() == 0.0)
}

fn unit_pow(lambda: Complex64, n: i64) -> Complex64 {
    let mut base = if n >= 0 { lambda } else { lambda.conj() };
    let mut e = n.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    n: i64,
    expr: ExprFun,
}

#[derive(Serialize, Deserialize)]
struct ElementWire {
    terms: Vec<TermWire>,
}

/// A finitely supported twisted Fourier polynomial `Σ f_n Uⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ElementWire", from = "ElementWire")]
pub struct CrossedElement {
    terms: BTreeMap<i64, ExprFun>,
}

impl From<CrossedElement> for ElementWire {
    fn from(a: CrossedElement) -> Self {
        ElementWire {
            terms: a
                .terms
                .into_iter()
                .map(|(n, expr)| TermWire { n, expr })
                .collect(),
        }
    }
}

impl From<ElementWire> for CrossedElement {
    fn from(w: ElementWire) -> Self {
        let mut out = CrossedElement::zero();
        for t in w.terms {
            out.accumulate(t.n, t.expr);
        }
        out
    }
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::embed(ExprFun::one())
    }

    /// `f U⁰`: the coefficient algebra sitting inside the crossed product.
    pub fn embed(f: ExprFun) -> Self {
        Self::from_terms([(0, f)])
    }

    /// The coordinate generator `z U⁰`.
    pub fn generator_a() -> Self {
        Self::embed(ExprFun::Z)
    }

    /// The shift unitary `U`.
    pub fn generator_u() -> Self {
        Self::u_power(1)
    }

    /// `Uⁿ`.
    pub fn u_power(n: i64) -> Self {
        Self::from_terms([(n, ExprFun::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, ExprFun)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (n, f) in terms {
            out.accumulate(n, f);
        }
        out
    }

    fn accumulate(&mut self, n: i64, f: ExprFun) {
        if is_zero_const(&f) {
            return;
        }
        match self.terms.remove(&n) {
            Some(prev) => {
                self.terms.insert(n, prev.add(f));
            }
            None => {
                self.terms.insert(n, f);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, ExprFun> {
        &self.terms
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// The coefficient of `Uⁿ` (zero when absent); this is what the gauge
    /// averaged conditional expectation extracts.
    pub fn expectation(&self, n: i64) -> ExprFun {
        self.terms.get(&n).cloned().unwrap_or_else(ExprFun::zero)
    }

    pub fn add(&self, rhs: &CrossedElement) -> CrossedElement {
        let mut out = self.clone();
        for (&n, f) in &rhs.terms {
            out.accumulate(n, f.clone());
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CrossedElement {
        if c.norm() == 0.0 {
            return CrossedElement::zero();
        }
        CrossedElement {
            terms: self
                .terms
                .iter()
                .map(|(&n, f)| (n, ExprFun::constant(c).mul(f.clone())))
                .collect(),
        }
    }

    /// Product from the covariance relation: `f Uᵐ · g Uⁿ` contributes
    /// `f · (g ∘ φ^{-m})` at degree `m + n`.
    pub fn multiply(&self, rhs: &CrossedElement, phi: &DiskAutomorphism) -> CrossedElement {
        let mut out = CrossedElement::zero();
        for (&m, f) in &self.terms {
            for (&n, g) in &rhs.terms {
                let moved = if m == 0 {
                    g.clone()
                } else {
                    g.clone().precompose(phi_power(phi, -m))
                };
                out.accumulate(m + n, f.clone().mul(moved));
            }
        }
        out
    }

    /// Involution: `(f Uⁿ)* = (f̄ ∘ φⁿ) U^{-n}`.
    pub fn adjoint(&self, phi: &DiskAutomorphism) -> CrossedElement {
        let mut out = CrossedElement::zero();
        for (&n, f) in &self.terms {
            let conj = f.conj();
            let moved = if n == 0 {
                conj
            } else {
                conj.precompose(phi_power(phi, n))
            };
            out.accumulate(-n, moved);
        }
        out
    }

    /// Dual circle action: multiplies the degree-`n` coefficient by `λⁿ`.
    pub fn gauge_act(&self, lambda: Complex64) -> Result<CrossedElement> {
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "gauge parameter must be unimodular (|lambda| = {})",
                lambda.norm()
            )));
        }
        Ok(CrossedElement {
            terms: self
                .terms
                .iter()
                .map(|(&n, f)| {
                    (
                        n,
                        ExprFun::constant(unit_pow(lambda, n)).mul(f.clone()),
                    )
                })
                .collect(),
        })
    }

    /// Fejér approximant `Σ_{|n| <= k} (1 - |n|/(k+1)) f_n Uⁿ`.
    pub fn fejer(&self, k: u32) -> CrossedElement {
        let mut out = CrossedElement::zero();
        for (&n, f) in &self.terms {
            if n.unsigned_abs() > k as u64 {
                continue;
            }
            let w = 1.0 - n.unsigned_abs() as f64 / (k as f64 + 1.0);
            out.accumulate(n, ExprFun::constant(Complex64::new(w, 0.0)).mul(f.clone()));
        }
        out
    }

    /// Coefficientwise equality on the 64-point sample set.
    pub fn approx_eq(&self, rhs: &CrossedElement) -> Result<bool> {
        let mut degrees: Vec<i64> = self.support();
        degrees.extend(rhs.support());
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            if !self.expectation(n).approx_eq(&rhs.expectation(n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn phi() -> DiskAutomorphism {
        DiskAutomorphism::hyperbolic_canonical(0.5).unwrap()
    }

    /// A coefficient with every node kind except Precompose.
    fn bumpy() -> ExprFun {
        ExprFun::Z
            .mul(ExprFun::ConjZ)
            .add(ExprFun::constant(c(0.3, -0.2)).mul(ExprFun::Z))
            .add(ExprFun::one())
    }

    fn sample_element() -> CrossedElement {
        CrossedElement::from_terms([
            (-1, ExprFun::ConjZ),
            (0, bumpy()),
            (2, ExprFun::constant(c(0.0, 1.0))),
        ])
    }

    #[test]
    fn u_times_a_precomposes_with_inverse() {
        let phi = phi();
        let ua = CrossedElement::generator_u().multiply(&CrossedElement::generator_a(), &phi);
        assert_eq!(ua.support(), vec![1]);
        for z in sampleset::equality_points() {
            let got = ua.expectation(1).eval(z).unwrap();
            let want = phi.inverse().eval(z).unwrap();
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugating_a_by_u_applies_phi() {
        let phi = phi();
        let u = CrossedElement::generator_u();
        let a = CrossedElement::generator_a();
        let lhs = u.adjoint(&phi).multiply(&a.multiply(&u, &phi), &phi);
        let rhs = CrossedElement::embed(ExprFun::Z.precompose(phi_power(&phi, 1)));
        assert_eq!(lhs.support(), vec![0]);
        assert!(lhs.approx_eq(&rhs).unwrap());
    }

    #[test]
    fn covariance_holds_for_composite_coefficients() {
        let phi = phi();
        let f = bumpy();
        let u = CrossedElement::generator_u();
        let lhs = u
            .adjoint(&phi)
            .multiply(&CrossedElement::embed(f.clone()).multiply(&u, &phi), &phi);
        let rhs = CrossedElement::embed(f.precompose(phi_power(&phi, 1)));
        assert!(lhs.approx_eq(&rhs).unwrap());
    }

    #[test]
    fn unit_is_neutral() {
        let phi = phi();
        let a = sample_element();
        assert!(a.multiply(&CrossedElement::unit(), &phi).approx_eq(&a).unwrap());
        assert!(CrossedElement::unit().multiply(&a, &phi).approx_eq(&a).unwrap());
    }

    #[test]
    fn product_is_associative_and_distributive() {
        let phi = phi();
        let a = sample_element();
        let b = CrossedElement::from_terms([(1, ExprFun::Z), (-2, bumpy())]);
        let d = CrossedElement::from_terms([(0, ExprFun::ConjZ), (1, ExprFun::one())]);
        let left = a.multiply(&b, &phi).multiply(&d, &phi);
        let right = a.multiply(&b.multiply(&d, &phi), &phi);
        assert!(left.approx_eq(&right).unwrap());
        let dist_l = a.multiply(&b.add(&d), &phi);
        let dist_r = a.multiply(&b, &phi).add(&a.multiply(&d, &phi));
        assert!(dist_l.approx_eq(&dist_r).unwrap());
    }

    #[test]
    fn adjoint_basics() {
        let phi = phi();
        let u_star = CrossedElement::generator_u().adjoint(&phi);
        assert_eq!(u_star.support(), vec![-1]);
        assert!(u_star.expectation(-1).approx_eq(&ExprFun::one()).unwrap());
        let a_star = CrossedElement::generator_a().adjoint(&phi);
        assert!(a_star.expectation(0).approx_eq(&ExprFun::ConjZ).unwrap());
        // U U* = U* U = 1.
        let u = CrossedElement::generator_u();
        assert!(u.multiply(&u_star, &phi).approx_eq(&CrossedElement::unit()).unwrap());
        assert!(u_star.multiply(&u, &phi).approx_eq(&CrossedElement::unit()).unwrap());
    }

    #[test]
    fn adjoint_is_an_involution_and_antimultiplicative() {
        let phi = phi();
        let a = sample_element();
        let b = CrossedElement::from_terms([(1, bumpy()), (0, ExprFun::ConjZ)]);
        assert!(a.adjoint(&phi).adjoint(&phi).approx_eq(&a).unwrap());
        let lhs = a.multiply(&b, &phi).adjoint(&phi);
        let rhs = b.adjoint(&phi).multiply(&a.adjoint(&phi), &phi);
        assert!(lhs.approx_eq(&rhs).unwrap());
    }

    #[test]
    fn adjoint_of_au_matches_u_star_a_star() {
        let phi = phi();
        let a = CrossedElement::generator_a();
        let u = CrossedElement::generator_u();
        let au = a.multiply(&u, &phi);
        let lhs = au.adjoint(&phi);
        let rhs = u.adjoint(&phi).multiply(&a.adjoint(&phi), &phi);
        assert!(lhs.approx_eq(&rhs).unwrap());
    }

    #[test]
    fn gauge_action_scales_by_degree() {
        let lam = Complex64::from_polar(1.0, 0.7);
        let u = CrossedElement::generator_u();
        let scaled = u.gauge_act(lam).unwrap();
        assert!(scaled.approx_eq(&u.scale(lam)).unwrap());
        assert!(sample_element()
            .gauge_act(c(1.0, 0.0))
            .unwrap()
            .approx_eq(&sample_element())
            .unwrap());
        // Even degrees are fixed by lambda = -1.
        let au2 = CrossedElement::generator_a().multiply(&CrossedElement::u_power(2), &phi());
        assert!(au2.gauge_act(c(-1.0, 0.0)).unwrap().approx_eq(&au2).unwrap());
        assert!(matches!(
            sample_element().gauge_act(c(0.5, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gauge_action_is_multiplicative_and_star_preserving() {
        let phi = phi();
        let lam = Complex64::from_polar(1.0, -1.3);
        let a = sample_element();
        let b = CrossedElement::from_terms([(1, ExprFun::Z), (0, bumpy())]);
        let lhs = a.multiply(&b, &phi).gauge_act(lam).unwrap();
        let rhs = a
            .gauge_act(lam)
            .unwrap()
            .multiply(&b.gauge_act(lam).unwrap(), &phi);
        assert!(lhs.approx_eq(&rhs).unwrap());
        let star_l = a.adjoint(&phi).gauge_act(lam).unwrap();
        let star_r = a.gauge_act(lam).unwrap().adjoint(&phi);
        assert!(star_l.approx_eq(&star_r).unwrap());
    }

    #[test]
    fn expectation_projects_degrees() {
        assert!(CrossedElement::unit()
            .expectation(0)
            .approx_eq(&ExprFun::one())
            .unwrap());
        let a = CrossedElement::generator_a()
            .add(&CrossedElement::generator_u().scale(c(3.0, 0.0)));
        assert!(a.expectation(1).approx_eq(&ExprFun::constant(c(3.0, 0.0))).unwrap());
        assert!(a.expectation(0).approx_eq(&ExprFun::Z).unwrap());
        assert!(a.expectation(2).approx_eq(&ExprFun::zero()).unwrap());
    }

    #[test]
    fn expectation_matches_gauge_average_quadrature() {
        // E_n(a) is the degree-0 coefficient of a U^{-n}; averaging the gauge
        // action over 256 roots of unity projects onto it exactly for the
        // supports in play.
        let phi = phi();
        let a = sample_element();
        for n in [-1, 0, 1, 2] {
            let shifted = a.multiply(&CrossedElement::u_power(-n), &phi);
            let want = a.expectation(n);
            for z in sampleset::interior_points(5) {
                let mut avg = c(0.0, 0.0);
                for j in 0..256 {
                    let lam = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 256.0);
                    let mut val = c(0.0, 0.0);
                    for (&k, f) in shifted.terms() {
                        val += unit_pow(lam, k) * f.eval(z).unwrap();
                    }
                    avg += val;
                }
                avg /= 256.0;
                assert!((avg - want.eval(z).unwrap()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn expectation_of_a_a_star_is_pointwise_nonnegative() {
        let phi = phi();
        let a = sample_element();
        let diag = a.multiply(&a.adjoint(&phi), &phi).expectation(0);
        for z in sampleset::equality_points() {
            let v = diag.eval(z).unwrap();
            assert!(v.re >= -1e-9, "negative value {v} at {z}");
            assert!(v.im.abs() <= 1e-9, "non-real value {v} at {z}");
        }
    }

    #[test]
    fn fejer_weights() {
        let one = CrossedElement::unit();
        for k in [0, 1, 5] {
            assert!(one.fejer(k).approx_eq(&one).unwrap());
        }
        let u = CrossedElement::generator_u();
        let half_u = u.scale(c(0.5, 0.0));
        assert!(u.fejer(1).approx_eq(&half_u).unwrap());
        assert!(u.fejer(0).approx_eq(&CrossedElement::zero()).unwrap());
        // Weight (1 - |n|/(k+1)) at n = -2, k = 3.
        let a = CrossedElement::from_terms([(-2, bumpy())]);
        let want = a.scale(c(0.5, 0.0));
        assert!(a.fejer(3).approx_eq(&want).unwrap());
        // All weights reach 1 in the limit; at k large the approximant is a.
        let s = sample_element();
        let far = s.fejer(10_000);
        for n in s.support() {
            let w = 1.0 - n.unsigned_abs() as f64 / 10_001.0;
            let got = far.expectation(n).eval(c(0.3, 0.2)).unwrap();
            let want = s.expectation(n).eval(c(0.3, 0.2)).unwrap() * w;
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn serde_wire_format() {
        let a = CrossedElement::from_terms([(0, ExprFun::Z), (1, ExprFun::one())]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"n":0,"expr":"z"},{"n":1,"expr":{"const":[1.0,0.0]}}]}"#
        );
        let back: CrossedElement = serde_json::from_str(&json).unwrap();
        assert!(back.approx_eq(&a).unwrap());
    }

    #[test]
    fn serde_round_trips_all_node_kinds() {
        let phi = phi();
        let f = bumpy()
            .conj()
            .mul(ExprFun::Z.precompose(phi_power(&phi, -2)))
            .add(ExprFun::constant(c(0.1, 0.9)));
        let a = CrossedElement::from_terms([(-3, f), (2, ExprFun::ConjZ)]);
        let json = serde_json::to_string(&a).unwrap();
        let back: CrossedElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(back.approx_eq(&a).unwrap());
    }
}
