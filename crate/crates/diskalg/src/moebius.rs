//! Conformal automorphisms of the closed unit disk.
//!
//! Every such map is `phi(z) = e^{2 i pi theta} (z - z0) / (1 - conj(z0) z)`
//! with `theta` in `[0, 1)` and `|z0| < 1`.  The pair `(theta, z0)` is the
//! canonical parameterization used throughout the crate; composites that are
//! not reduced to this shape live in [`MoebiusWord`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::sampleset;

/// Default tolerance for the hyperbolic/parabolic/elliptic margin test.
pub const DEFAULT_CLASS_TOL: f64 = 1e-12;

/// Slack allowed when checking membership in the closed disk.
pub const DOMAIN_TOL: f64 = 1e-9;

/// Residual bound for reducing a word to `(theta, z0)` form.
pub const NORMALIZE_TOL: f64 = 1e-10;

fn frac01(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    theta: f64,
    z0: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    theta_rational: Option<(i64, u64)>,
}

/// A conformal automorphism of the closed unit disk, stored as the rotation
/// parameter `theta` and the zero `z0` of the map.
///
/// When the rotation parameter is known to be exactly rational the reduced
/// fraction is carried alongside the float so periodicity questions can be
/// answered exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct DiskAutomorphism {
    theta: f64,
    z0: Complex64,
    theta_rational: Option<(i64, u64)>,
}

impl TryFrom<Wire> for DiskAutomorphism {
    type Error = Error;

    fn try_from(w: Wire) -> Result<Self> {
        let z0 = Complex64::new(w.z0[0], w.z0[1]);
        match w.theta_rational {
            Some((p, q)) => Self::new_rational(p, q, z0),
            None => Self::new(w.theta, z0),
        }
    }
}

impl From<DiskAutomorphism> for Wire {
    fn from(a: DiskAutomorphism) -> Wire {
        Wire {
            theta: a.theta,
            z0: [a.z0.re, a.z0.im],
            theta_rational: a.theta_rational,
        }
    }
}

impl DiskAutomorphism {
    /// Builds the map from its rotation parameter and zero.  `theta` is folded
    /// into `[0, 1)`; the zero must lie strictly inside the disk.
    pub fn new(theta: f64, z0: Complex64) -> Result<Self> {
        if !theta.is_finite() || !z0.re.is_finite() || !z0.im.is_finite() {
            return Err(Error::Numerical("non-finite parameter".into()));
        }
        if z0.norm() >= 1.0 {
            return Err(Error::Domain(format!("zero parameter has modulus {}", z0.norm())));
        }
        Ok(Self {
            theta: frac01(theta),
            z0,
            theta_rational: None,
        })
    }

    /// Like [`new`](Self::new) but with `theta = p/q` recorded exactly.  The
    /// fraction is reduced and folded into `[0, 1)`.
    pub fn new_rational(p: i64, q: u64, z0: Complex64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Numerical("zero denominator".into()));
        }
        let pm = p.rem_euclid(q as i64) as u64;
        let g = gcd(pm, q).max(1);
        let (pm, q) = (pm / g, q / g);
        let mut a = Self::new(pm as f64 / q as f64, z0)?;
        a.theta_rational = Some((pm as i64, q));
        Ok(a)
    }

    pub fn identity() -> Self {
        Self::new_rational(0, 1, Complex64::new(0.0, 0.0)).unwrap()
    }

    /// Rotation `z -> e^{2 i pi theta} z`.
    pub fn rotation(theta: f64) -> Self {
        Self::new(theta, Complex64::new(0.0, 0.0)).unwrap()
    }

    /// Rotation by the exact angle `p/q` turns.
    pub fn rotation_rational(p: i64, q: u64) -> Result<Self> {
        Self::new_rational(p, q, Complex64::new(0.0, 0.0))
    }

    /// Canonical hyperbolic map `z -> (z + a) / (1 + a z)` for `0 < a < 1`:
    /// fixed points `1` (attractive) and `-1` (repelling).
    pub fn hyperbolic_canonical(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!("parameter a = {a} outside (0,1)")));
        }
        Self::new(0.0, Complex64::new(-a, 0.0))
    }

    /// Parabolic map with unique fixed point `1` and the given unimodular
    /// rotation part.  Any parabolic fixing `1` has `z0 = (1 - conj(lambda))/2`.
    pub fn parabolic_through_one(lambda: Complex64) -> Result<Self> {
        let lam = lambda / lambda.norm();
        let z0 = (Complex64::new(1.0, 0.0) - lam.conj()) / 2.0;
        Self::new(frac01(lam.arg() / TAU), z0)
    }

    /// The parabolic map fixing `1` with `phi(-1) = i`: translation part `-1`
    /// in the half-plane coordinate `i (1 + z) / (1 - z)`.
    pub fn parabolic_plus() -> Self {
        Self::parabolic_through_one(Complex64::new(0.6, -0.8)).unwrap()
    }

    /// The parabolic map fixing `1` with `phi(-1) = -i`: translation part `+1`.
    pub fn parabolic_minus() -> Self {
        Self::parabolic_through_one(Complex64::new(0.6, 0.8)).unwrap()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    /// Reduced fraction `p/q` for the rotation parameter, when it was supplied
    /// exactly.
    pub fn theta_rational(&self) -> Option<(i64, u64)> {
        self.theta_rational
    }

    /// The unimodular factor `e^{2 i pi theta}`.
    pub fn lambda(&self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.theta)
    }

    /// Applies the map.  The point must lie in the closed disk (up to
    /// [`DOMAIN_TOL`]).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let n = z.norm();
        if !(n <= 1.0 + DOMAIN_TOL) {
            return Err(Error::Domain(format!("point outside the closed disk (|z| = {n})")));
        }
        let den = Complex64::new(1.0, 0.0) - self.z0.conj() * z;
        if den.norm() < 1e-300 {
            return Err(Error::Pole);
        }
        Ok(self.lambda() * (z - self.z0) / den)
    }

    /// Complex derivative `lambda (1 - |z0|^2) / (1 - conj(z0) z)^2`, finite
    /// on the closed disk.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = Complex64::new(1.0, 0.0) - self.z0.conj() * z;
        self.lambda() * (1.0 - self.z0.norm_sqr()) / (den * den)
    }

    /// The inverse automorphism in the same parameterization:
    /// `(theta, z0) -> (-theta mod 1, -lambda z0)`.
    pub fn inverse(&self) -> Self {
        let z0 = -self.lambda() * self.z0;
        let mut inv = Self {
            theta: frac01(-self.theta),
            z0,
            theta_rational: None,
        };
        if let Some((p, q)) = self.theta_rational {
            let pm = (-p).rem_euclid(q as i64);
            inv.theta = pm as f64 / q as f64;
            inv.theta_rational = Some((pm, q));
        }
        inv
    }

    /// `n`-fold iterate (inverse iterate for negative `n`).
    pub fn iterate(&self, z: Complex64, n: i64) -> Result<Complex64> {
        let map = if n >= 0 { *self } else { self.inverse() };
        let mut w = z;
        for _ in 0..n.unsigned_abs() {
            w = map.eval(w)?;
        }
        Ok(w)
    }

    /// Coefficient matrix `[[lambda, -lambda z0], [-conj(z0), 1]]` acting by
    /// fractional linear substitution.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let lam = self.lambda();
        [
            [lam, -lam * self.z0],
            [-self.z0.conj(), Complex64::new(1.0, 0.0)],
        ]
    }

    pub fn classify(&self) -> AutomorphismClass {
        self.classify_with_tol(DEFAULT_CLASS_TOL)
    }

    /// Classifies by the sign of `|z0| - sin(pi theta)` against `tol`; the
    /// identity is split off first by parameter size.
    pub fn classify_with_tol(&self, tol: f64) -> AutomorphismClass {
        let margin = self.z0.norm() - (PI * self.theta).sin().abs();
        let near_trivial_rotation = self.theta < tol || self.theta > 1.0 - tol;
        let tag = if near_trivial_rotation && self.z0.norm() < tol {
            ClassTag::Identity
        } else if margin > tol {
            ClassTag::Hyperbolic
        } else if margin < -tol {
            ClassTag::Elliptic
        } else {
            ClassTag::Parabolic
        };
        AutomorphismClass { tag, margin }
    }

    pub fn class(&self) -> ClassTag {
        self.classify().tag
    }

    /// Fixed points in the closed disk with their multipliers `|phi'(p)|`.
    ///
    /// Hyperbolic maps return the two boundary points sorted by `(re, im)`;
    /// parabolic maps the double boundary root; elliptic maps the interior
    /// point.  The identity has no isolated fixed points and is rejected.
    pub fn fixed_points(&self) -> Result<FixedPointData> {
        let class = self.classify();
        if class.tag == ClassTag::Identity {
            return Err(Error::Class(ClassTag::Identity));
        }
        let lam = self.lambda();
        let one = Complex64::new(1.0, 0.0);

        if self.z0.norm() == 0.0 {
            // Rotation: unique interior fixed point at the origin.
            let d = (lam - one) * (lam - one);
            return Ok(FixedPointData {
                points: vec![Complex64::new(0.0, 0.0)],
                multipliers: vec![1.0],
                discriminant: d,
            });
        }

        // Roots of conj(z0) z^2 + (lambda - 1) z - lambda z0 = 0.
        let s = (PI * self.theta).sin();
        let d_real = self.z0.norm_sqr() - s * s;
        let discriminant = 4.0 * lam * d_real;
        let a = self.z0.conj();
        let b = lam - one;
        let c = -lam * self.z0;

        let points: Vec<Complex64> = if class.tag == ClassTag::Parabolic {
            vec![-b / (2.0 * a)]
        } else {
            // Square root of the discriminant along the half-angle direction.
            let root = if d_real >= 0.0 {
                Complex64::new(d_real.sqrt(), 0.0)
            } else {
                Complex64::new(0.0, (-d_real).sqrt())
            };
            let sq = 2.0 * Complex64::from_polar(1.0, PI * self.theta) * root;
            // Citardauq pairing avoids cancellation in the small root.
            let s_sq = if (b.conj() * sq).re < 0.0 { -sq } else { sq };
            let qq = -(b + s_sq) / 2.0;
            let (r1, r2) = if qq.norm() > 1e-300 {
                (qq / a, c / qq)
            } else {
                ((-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a))
            };
            match class.tag {
                ClassTag::Elliptic => {
                    vec![if r1.norm() <= r2.norm() { r1 } else { r2 }]
                }
                _ => {
                    let mut pts = vec![r1, r2];
                    pts.sort_by(|x, y| {
                        (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap()
                    });
                    pts
                }
            }
        };

        for p in &points {
            let res = (self.eval(*p)? - p).norm();
            if res > 1e-10 {
                return Err(Error::Numerical(format!(
                    "fixed point residual {res:.3e}"
                )));
            }
        }
        let multipliers = points.iter().map(|p| self.derivative(*p).norm()).collect();
        Ok(FixedPointData {
            points,
            multipliers,
            discriminant,
        })
    }

    /// The attractive boundary fixed point of a hyperbolic map, or the unique
    /// fixed point of a parabolic one.
    pub fn attractive_fixed_point(&self) -> Result<Complex64> {
        let class = self.class();
        let data = self.fixed_points()?;
        match class {
            ClassTag::Hyperbolic => {
                let i = if data.multipliers[0] <= data.multipliers[1] { 0 } else { 1 };
                Ok(data.points[i])
            }
            ClassTag::Parabolic => Ok(data.points[0]),
            other => Err(Error::Class(other)),
        }
    }
}

/// Dynamical type of a disk automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Class tag together with the margin `|z0| - sin(pi theta)` that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutomorphismClass {
    pub tag: ClassTag,
    pub margin: f64,
}

/// Fixed points, multipliers (aligned with `points`), and the discriminant
/// `4 lambda (|z0|^2 - sin^2(pi theta))` of the fixed-point quadratic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointData {
    #[serde(with = "crate::cx::pair_vec")]
    pub points: Vec<Complex64>,
    pub multipliers: Vec<f64>,
    #[serde(with = "crate::cx::pair")]
    pub discriminant: Complex64,
}

/// One factor of a composition word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WordFactor {
    pub map: DiskAutomorphism,
    #[serde(rename = "exp")]
    pub power: i64,
}

/// A finite composition `m1^{k1} ∘ m2^{k2} ∘ ...` of disk automorphisms,
/// leftmost factor outermost.  Words are kept unevaluated so conjugators can
/// be reported symbolically; [`normalize`](MoebiusWord::normalize) reduces a
/// word back to a single automorphism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoebiusWord {
    factors: Vec<WordFactor>,
}

impl MoebiusWord {
    pub fn identity() -> Self {
        Self { factors: vec![] }
    }

    pub fn from_map(map: DiskAutomorphism) -> Self {
        Self {
            factors: vec![WordFactor { map, power: 1 }],
        }
    }

    pub fn from_factors(factors: Vec<WordFactor>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[WordFactor] {
        &self.factors
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(rhs.factors.iter().copied());
        Self { factors }
    }

    pub fn inverse(&self) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| WordFactor {
                    map: f.map,
                    power: -f.power,
                })
                .collect(),
        }
    }

    pub fn power(&self, n: i64) -> Self {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = Self::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// `by ∘ self ∘ by^{-1}`.
    pub fn conjugated(&self, by: &Self) -> Self {
        by.compose(self).compose(&by.inverse())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut w = z;
        for f in self.factors.iter().rev() {
            w = f.map.iterate(w, f.power)?;
        }
        Ok(w)
    }

    /// Reduces the word to `(theta, z0)` form: `z0` is the preimage of `0`,
    /// `lambda` is read off at `1`, and the result is accepted only if it
    /// matches the word to within [`NORMALIZE_TOL`] on the 32-point
    /// validation set.
    pub fn normalize(&self) -> Result<DiskAutomorphism> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let z0 = self.inverse().eval(zero)?;
        if z0.norm() >= 1.0 {
            return Err(Error::Numerical(format!(
                "word preimage of 0 has modulus {}",
                z0.norm()
            )));
        }
        let w1 = self.eval(one)?;
        let lam = w1 * (one - z0.conj()) / (one - z0);
        let cand = DiskAutomorphism::new(frac01(lam.arg() / TAU), z0)?;
        let mut worst = 0.0f64;
        for p in sampleset::validation_points() {
            let res = (cand.eval(p)? - self.eval(p)?).norm();
            worst = worst.max(res);
        }
        if worst > NORMALIZE_TOL {
            return Err(Error::Numerical(format!(
                "normalized form residual {worst:.3e}"
            )));
        }
        Ok(cand)
    }
}

/// Coefficient matrix of the Moebius transformation sending the `srcs` triple
/// to the `dsts` triple (all points distinct within each triple).
pub fn matrix_through_points(
    srcs: [Complex64; 3],
    dsts: [Complex64; 3],
) -> [[Complex64; 2]; 2] {
    // Rows of the map sending (p1, p2, p3) to (0, 1, infinity).
    fn to_standard(p: [Complex64; 3]) -> [[Complex64; 2]; 2] {
        let [p1, p2, p3] = p;
        [[p2 - p3, -p1 * (p2 - p3)], [p2 - p1, -p3 * (p2 - p1)]]
    }
    let a = to_standard(srcs);
    let b = to_standard(dsts);
    // Adjugate of b; the scalar determinant factor is projectively irrelevant.
    let binv = [[b[1][1], -b[0][1]], [-b[1][0], b[0][0]]];
    mat_mul(binv, a)
}

pub fn mat_mul(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

/// Fractional linear action of a coefficient matrix.
pub fn apply_matrix(m: [[Complex64; 2]; 2], z: Complex64) -> Complex64 {
    (m[0][0] * z + m[0][1]) / (m[1][0] * z + m[1][1])
}

/// Recovers `(theta, z0)` parameters from a coefficient matrix known to
/// represent a disk automorphism; validated on the 32-point set.
pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<DiskAutomorphism> {
    if m[0][0].norm() < 1e-300 {
        return Err(Error::Numerical("zero of the map at infinity".into()));
    }
    let z0 = -m[0][1] / m[0][0];
    if z0.norm() >= 1.0 {
        return Err(Error::Numerical(format!(
            "matrix zero has modulus {}",
            z0.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let w1 = apply_matrix(m, one);
    let lam = w1 * (one - z0.conj()) / (one - z0);
    let cand = DiskAutomorphism::new(frac01(lam.arg() / TAU), z0)?;
    let mut worst = 0.0f64;
    for p in sampleset::validation_points() {
        let res = (cand.eval(p)? - apply_matrix(m, p)).norm();
        worst = worst.max(res);
    }
    if worst > 1e-9 {
        return Err(Error::Numerical(format!(
            "matrix does not act as a disk automorphism (residual {worst:.3e})"
        )));
    }
    Ok(cand)
}
