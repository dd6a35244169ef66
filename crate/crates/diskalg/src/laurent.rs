//! Laurent polynomials on the unit circle, used as Toeplitz symbols.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct CoeffWire {
    n: i64,
    c: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct LaurentWire {
    terms: Vec<CoeffWire>,
}

/// `Σ c_n Zⁿ` with finitely many nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "LaurentWire", from = "LaurentWire")]
pub struct Laurent {
    coeffs: BTreeMap<i64, Complex64>,
}

impl From<Laurent> for LaurentWire {
    fn from(l: Laurent) -> Self {
        LaurentWire {
            terms: l
                .coeffs
                .into_iter()
                .map(|(n, c)| CoeffWire { n, c: [c.re, c.im] })
                .collect(),
        }
    }
}

impl From<LaurentWire> for Laurent {
    fn from(w: LaurentWire) -> Self {
        let mut out = Laurent::zero();
        for t in w.terms {
            out.accumulate(t.n, Complex64::new(t.c[0], t.c[1]));
        }
        out
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(n: i64, c: Complex64) -> Self {
        let mut out = Self::zero();
        out.accumulate(n, c);
        out
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, Complex64)>>(coeffs: I) -> Self {
        let mut out = Self::zero();
        for (n, c) in coeffs {
            out.accumulate(n, c);
        }
        out
    }

    fn accumulate(&mut self, n: i64, c: Complex64) {
        let v = self.coeffs.entry(n).or_insert_with(|| Complex64::new(0.0, 0.0));
        *v += c;
        if v.norm() == 0.0 {
            self.coeffs.remove(&n);
        }
    }

    pub fn coefficient(&self, n: i64) -> Complex64 {
        self.coeffs
            .get(&n)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&n, &c) in &rhs.coeffs {
            out.accumulate(n, c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Laurent {
        let mut out = Laurent::zero();
        for (&n, &v) in &self.coeffs {
            out.accumulate(n, c * v);
        }
        out
    }

    /// Convolution product.
    pub fn mul(&self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&m, &a) in &self.coeffs {
            for (&n, &b) in &rhs.coeffs {
                out.accumulate(m + n, a * b);
            }
        }
        out
    }

    /// Involution on the circle: `(Σ c_n Zⁿ)* = Σ c̄_n Z^{-n}`.
    pub fn adjoint(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (&n, &c) in &self.coeffs {
            out.accumulate(-n, c.conj());
        }
        out
    }

    /// Evaluation at a point of the circle (any nonzero point works).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in &self.coeffs {
            acc += c * z.powi(n as i32);
        }
        acc
    }

    /// Coefficientwise closeness.
    pub fn approx_eq(&self, rhs: &Laurent, tol: f64) -> bool {
        let mut keys: Vec<i64> = self.support();
        keys.extend(rhs.support());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .all(|&n| (self.coefficient(n) - rhs.coefficient(n)).norm() <= tol)
    }
}
