//! Orbits, orbit closures, fundamental domains, and the explicit arc-length
//! topological conjugacy between hyperbolic maps.
//!
//! Hyperbolic and parabolic canonical maps become affine in the half-plane
//! coordinate `c`: the canonical hyperbolic map multiplies `c` by
//! `m = (1+a)/(1-a)` and the canonical parabolic maps translate `i c` by a
//! real constant.  The fundamental domain machinery and the conjugacy
//! construction both live in that coordinate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{AutomorphismClass, ClassTag, DiskAutomorphism, DOMAIN_TOL};
use crate::normal_form::{elliptic_normal_form, rotation_number, InvariantData};
use crate::sampleset;

/// Half-width of the orbit sample recorded in an orbit closure description.
pub const ORBIT_SAMPLE_HALF_WIDTH: i64 = 100;

/// Largest denominator considered when deciding rationality of a rotation
/// number.
pub const RATIONAL_MAX_DENOMINATOR: u64 = 1_000_000;

/// Distance below which a rotation number counts as rational.
///
/// A float that encodes `p/q` exactly sits within a few units of `2^-53` of
/// it, while the best approximation of a generic irrational by fractions
/// with denominator up to 10^6 stays several orders of magnitude farther
/// away; `1e-13` separates the two regimes.
pub const RATIONAL_DETECTION_TOL: f64 = 1e-13;

/// The orbit `[phi^n(x)]` for `n` in `n_lo..=n_hi`, computed by iterating
/// the map and its inverse from `x`.
///
/// Long orbits converging to a boundary fixed point can drift a few ulps
/// outside the circle; every step is pulled back onto the closed disk so
/// the returned points always satisfy `|z| <= 1`.
pub fn orbit(
    phi: &DiskAutomorphism,
    x: Complex64,
    n_lo: i64,
    n_hi: i64,
) -> Result<Vec<Complex64>> {
    if n_lo > n_hi {
        return Ok(vec![]);
    }
    let clamp = |z: Complex64| {
        let n = z.norm();
        if n > 1.0 {
            z / n
        } else {
            z
        }
    };
    let mut z = if n_lo == 0 {
        x
    } else {
        let dir = if n_lo > 0 { *phi } else { phi.inverse() };
        let mut w = x;
        for _ in 0..n_lo.unsigned_abs() {
            w = clamp(dir.eval(w)?);
        }
        w
    };
    let mut out = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    out.push(z);
    for _ in n_lo..n_hi {
        z = clamp(phi.eval(z)?);
        out.push(z);
    }
    Ok(out)
}

/// Outcome of the rationality heuristic for a rotation number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RotationKind {
    /// The map carries an exact rational rotation parameter.
    ExactRational { p: i64, q: u64 },
    /// A fraction with denominator at most [`RATIONAL_MAX_DENOMINATOR`] lies
    /// within [`RATIONAL_DETECTION_TOL`] of the rotation number.
    NearRational { p: i64, q: u64, error: f64 },
    Irrational,
}

/// Best continued-fraction convergent `p/q` of `t` with `q <= max_den` and
/// `|t - p/q| < tol`, if one exists; convergents are scanned in order of
/// increasing denominator and the first hit is returned.
pub fn nearest_rational(t: f64, max_den: u64, tol: f64) -> Option<(i64, u64, f64)> {
    let (mut p_prev, mut q_prev): (i64, u64) = (1, 0);
    let (mut p_cur, mut q_cur): (i64, u64) = (t.floor() as i64, 1);
    let mut x = t;
    loop {
        let err = (t - p_cur as f64 / q_cur as f64).abs();
        if err < tol {
            return Some((p_cur, q_cur, err));
        }
        let frac = x - x.floor();
        if frac < 1e-15 {
            return None;
        }
        x = 1.0 / frac;
        let a = x.floor();
        if a * q_cur as f64 + q_prev as f64 > max_den as f64 {
            return None;
        }
        let p_next = a as i64 * p_cur + p_prev;
        let q_next = a as u64 * q_cur + q_prev;
        (p_prev, q_prev) = (p_cur, q_cur);
        (p_cur, q_cur) = (p_next, q_next);
    }
}

/// Rationality of the rotation number of an elliptic map (or the identity).
///
/// Exact rational tags are honored; otherwise the rotation number is taken
/// from the elliptic invariant `mu` and run through [`nearest_rational`].
/// The result is a heuristic: callers may force either treatment.
pub fn elliptic_rotation_kind(phi: &DiskAutomorphism) -> Result<RotationKind> {
    match phi.class() {
        ClassTag::Identity => Ok(RotationKind::ExactRational { p: 0, q: 1 }),
        ClassTag::Elliptic => {
            if phi.z0().norm() == 0.0 {
                if let Some((p, q)) = phi.theta_rational() {
                    return Ok(RotationKind::ExactRational { p, q });
                }
            }
            let mu = match elliptic_normal_form(phi)?.invariant {
                InvariantData::Elliptic { mu } => mu,
                _ => unreachable!(),
            };
            let t = rotation_number(mu);
            match nearest_rational(t, RATIONAL_MAX_DENOMINATOR, RATIONAL_DETECTION_TOL) {
                Some((p, q, error)) => Ok(RotationKind::NearRational { p, q, error }),
                None => Ok(RotationKind::Irrational),
            }
        }
        tag => Err(Error::Class(tag)),
    }
}

/// The closure of an orbit, described symbolically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitSet {
    /// `x` is a fixed point; the orbit never moves.
    Stationary {
        #[serde(with = "crate::cx::pair")]
        point: Complex64,
    },
    /// Parabolic: both orbit tails converge to the unique fixed point.
    FixedPoint {
        #[serde(with = "crate::cx::pair")]
        point: Complex64,
    },
    /// Hyperbolic: the tails converge to the two boundary fixed points.
    FixedPair {
        #[serde(with = "crate::cx::pair_vec")]
        points: Vec<Complex64>,
    },
    /// Elliptic with (near-)rational rotation number: a finite cycle.
    Cycle {
        #[serde(with = "crate::cx::pair_vec")]
        points: Vec<Complex64>,
    },
    /// Elliptic with irrational rotation number: the orbit fills a circle.
    Circle {
        #[serde(with = "crate::cx::pair")]
        center: Complex64,
        radius: f64,
    },
}

/// Orbit closure report: the class of the map, a window of orbit samples at
/// indices `-K..=K`, and the limit set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitClosureDescr {
    pub class: AutomorphismClass,
    #[serde(with = "crate::cx::pair_vec")]
    pub sample_orbit: Vec<Complex64>,
    pub limit_set: LimitSet,
}

/// Euclidean circumcircle through three points; `None` when they are too
/// close to collinear (or coincident) for a stable answer.
fn circumcircle(p1: Complex64, p2: Complex64, p3: Complex64) -> Option<(Complex64, f64)> {
    let num = p1.norm_sqr() * (p2 - p3) + p2.norm_sqr() * (p3 - p1) + p3.norm_sqr() * (p1 - p2);
    let den = p1.conj() * (p2 - p3) + p2.conj() * (p3 - p1) + p3.conj() * (p1 - p2);
    let scale = (p1 - p2).norm() * (p2 - p3).norm() * (p3 - p1).norm();
    if den.norm() <= 1e-9 * scale.max(1e-30) || scale == 0.0 {
        return None;
    }
    let center = num / den;
    Some((center, (p1 - center).norm()))
}

/// Describes the closure of the orbit of `x` under `phi`.
pub fn orbit_closure(phi: &DiskAutomorphism, x: Complex64) -> Result<OrbitClosureDescr> {
    let class = phi.classify();
    let sample_orbit = orbit(phi, x, -ORBIT_SAMPLE_HALF_WIDTH, ORBIT_SAMPLE_HALF_WIDTH)?;

    if (phi.eval(x)? - x).norm() < 1e-12 {
        return Ok(OrbitClosureDescr {
            class,
            sample_orbit,
            limit_set: LimitSet::Stationary { point: x },
        });
    }

    let limit_set = match class.tag {
        ClassTag::Identity => LimitSet::Stationary { point: x },
        ClassTag::Hyperbolic => LimitSet::FixedPair {
            points: phi.fixed_points()?.points,
        },
        ClassTag::Parabolic => LimitSet::FixedPoint {
            point: phi.fixed_points()?.points[0],
        },
        ClassTag::Elliptic => match elliptic_rotation_kind(phi)? {
            RotationKind::ExactRational { q, .. } | RotationKind::NearRational { q, .. } => {
                LimitSet::Cycle {
                    points: orbit(phi, x, 0, q as i64 - 1)?,
                }
            }
            RotationKind::Irrational => {
                let p2 = phi.eval(x)?;
                let p3 = phi.eval(p2)?;
                match circumcircle(x, p2, p3) {
                    Some((center, radius)) => LimitSet::Circle { center, radius },
                    None => {
                        // Orbit hugs the fixed point; fall back to the tiny
                        // circle around it.
                        let c = phi.fixed_points()?.points[0];
                        LimitSet::Circle {
                            center: c,
                            radius: (x - c).norm(),
                        }
                    }
                }
            }
        },
    };
    Ok(OrbitClosureDescr {
        class,
        sample_orbit,
        limit_set,
    })
}

const CANONICAL_TOL: f64 = 1e-9;

/// Extracts `a` from a map required to be in canonical hyperbolic form
/// `(theta = 0, z0 = -a)`.
pub fn canonical_hyperbolic_a(phi: &DiskAutomorphism) -> Result<f64> {
    let class = phi.class();
    if class != ClassTag::Hyperbolic {
        return Err(Error::Class(class));
    }
    let theta_ok = phi.theta() < CANONICAL_TOL || phi.theta() > 1.0 - CANONICAL_TOL;
    if !theta_ok || phi.z0().im.abs() > CANONICAL_TOL || phi.z0().re >= 0.0 {
        return Err(Error::Numerical(
            "map is not in canonical hyperbolic form (theta = 0, z0 = -a)".into(),
        ));
    }
    Ok(-phi.z0().re)
}

/// Multiplier `m = (1+a)/(1-a)` of a canonical hyperbolic map: the factor by
/// which the half-plane coordinate grows per step.
pub fn canonical_multiplier(phi: &DiskAutomorphism) -> Result<f64> {
    let a = canonical_hyperbolic_a(phi)?;
    Ok((1.0 + a) / (1.0 - a))
}

/// Checks that `phi` is one of the two canonical parabolic maps and returns
/// its orientation sign.
pub fn canonical_parabolic_orientation(phi: &DiskAutomorphism) -> Result<i8> {
    let class = phi.class();
    if class != ClassTag::Parabolic {
        return Err(Error::Class(class));
    }
    for (target, orient) in [
        (DiskAutomorphism::parabolic_plus(), 1i8),
        (DiskAutomorphism::parabolic_minus(), -1i8),
    ] {
        let dt = (phi.theta() - target.theta()).abs();
        let dt = dt.min(1.0 - dt);
        if dt < CANONICAL_TOL && (phi.z0() - target.z0()).norm() < CANONICAL_TOL {
            return Ok(orient);
        }
    }
    Err(Error::Numerical(
        "map is not one of the canonical parabolic forms".into(),
    ))
}

/// Linearizing coordinate of a canonical map.
///
/// Hyperbolic: `c(z) = (1+z)/(1-z)`, with `c(phi(z)) = m c(z)`.
/// Parabolic: `c(z) = i (1+z)/(1-z)`, with `c(phi(z)) = c(z) + beta` for a
/// real constant `beta`.  Fixed points of the map are excluded.
pub fn halfplane_coordinate(phi: &DiskAutomorphism, z: Complex64) -> Result<Complex64> {
    let n = z.norm();
    if !(n <= 1.0 + DOMAIN_TOL) {
        return Err(Error::Domain(format!(
            "point outside the closed disk (|z| = {n})"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    match phi.class() {
        ClassTag::Hyperbolic => {
            canonical_hyperbolic_a(phi)?;
            if (z - one).norm() < 1e-12 || (z + one).norm() < 1e-12 {
                return Err(Error::Domain("coordinate undefined at a fixed point".into()));
            }
            Ok((one + z) / (one - z))
        }
        ClassTag::Parabolic => {
            canonical_parabolic_orientation(phi)?;
            if (z - one).norm() < 1e-12 {
                return Err(Error::Domain("coordinate undefined at the fixed point".into()));
            }
            Ok(Complex64::new(0.0, 1.0) * (one + z) / (one - z))
        }
        tag => Err(Error::Class(tag)),
    }
}

/// Translation step of a canonical parabolic map in its coordinate:
/// `beta = c(phi(0)) - c(0)`, real.  `-1` for the plus map, `+1` for the
/// minus map.
pub fn translation_constant(phi: &DiskAutomorphism) -> Result<f64> {
    canonical_parabolic_orientation(phi)?;
    let zero = Complex64::new(0.0, 0.0);
    let step = halfplane_coordinate(phi, phi.eval(zero)?)? - halfplane_coordinate(phi, zero)?;
    if step.im.abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "translation constant has imaginary part {}",
            step.im
        )));
    }
    Ok(step.re)
}

/// Membership in the half-open fundamental domain `{1 <= |c(z)| < m}` of a
/// canonical hyperbolic map: the region between the imaginary diameter `L`
/// and its image `phi(L)`, including `L`, excluding `phi(L)`.
pub fn fundamental_domain_contains(phi: &DiskAutomorphism, z: Complex64) -> Result<bool> {
    let m = canonical_multiplier(phi)?;
    let one = Complex64::new(1.0, 0.0);
    // The fixed points themselves sit at coordinate 0 and infinity, both
    // outside the annulus; report them as excluded rather than erroring.
    if (z - one).norm() < 1e-12 || (z + one).norm() < 1e-12 {
        return Ok(false);
    }
    let c = halfplane_coordinate(phi, z)?;
    Ok((1.0..m).contains(&c.norm()))
}

/// Alternative closed-form predicate `{Re z >= 0 and |1 - z| >= 1 - a}`.
///
/// Its outer boundary circle `|1 - z| = 1 - a` is not the image of the
/// diameter under the map, so this region does not meet every orbit exactly
/// once; it is exposed for comparison with [`fundamental_domain_contains`].
pub fn halfspace_domain_contains(phi: &DiskAutomorphism, z: Complex64) -> Result<bool> {
    let a = canonical_hyperbolic_a(phi)?;
    Ok(z.re >= 0.0 && (Complex64::new(1.0, 0.0) - z).norm() >= 1.0 - a)
}

/// A point pulled back into the fundamental domain together with the number
/// of steps that were unwound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalOrbitPoint {
    #[serde(with = "crate::cx::pair")]
    pub representative: Complex64,
    pub index: i64,
}

/// Fundamental-domain representative of `z`: `index = floor(ln|c(z)| / ln m)`
/// and `representative = phi^{-index}(z)`, so `phi^{index}` maps the
/// representative back to `z`.
pub fn canonical_point(phi: &DiskAutomorphism, z: Complex64) -> Result<CanonicalOrbitPoint> {
    let m = canonical_multiplier(phi)?;
    let c = halfplane_coordinate(phi, z)?;
    let index = (c.norm().ln() / m.ln()).floor() as i64;
    let representative = phi.iterate(z, -index)?;
    let back = (phi.iterate(representative, index)? - z).norm();
    if back > 1e-9 {
        return Err(Error::Numerical(format!(
            "representative fails to map back (residual {back:.3e})"
        )));
    }
    Ok(CanonicalOrbitPoint {
        representative,
        index,
    })
}

/// Crossing parameter of the invariant circle through `z`: the circles
/// through `-1` and `1` cross the imaginary diameter at `i t`, `t` in
/// `[-1, 1]`; `t = +1` labels the upper boundary arc, `0` the real diameter
/// (the degenerate line member of the family), `-1` the lower arc.
pub fn circle_label(z: Complex64) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    let k = (z.norm_sqr() - 1.0) / (2.0 * z.im);
    let rho = k.hypot(1.0);
    if z.im > 0.0 {
        1.0 / (rho - k)
    } else {
        -1.0 / (rho + k)
    }
}

/// Center and radius of the invariant circle with crossing parameter `t`;
/// `None` for the degenerate diameter `t = 0`.
pub fn circle_from_label(t: f64) -> Option<(Complex64, f64)> {
    if t == 0.0 {
        return None;
    }
    let k = (t * t - 1.0) / (2.0 * t);
    Some((Complex64::new(0.0, k), k.hypot(1.0)))
}

/// The arc-length topological conjugacy between two canonical hyperbolic
/// maps.
///
/// Both maps preserve each circle through `±1`.  On the circle with
/// crossing point `p0 = i t`, a point of the fundamental domain sits at some
/// fraction of the arc from `p0` to `phi(p0)`; the conjugacy sends it to the
/// same fraction of the arc from `p0` to `psi(p0)` on the same circle, and
/// is propagated to the rest of the disk by `mu_{n+1} = psi ∘ mu_n ∘ phi⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicConjugacy {
    phi: DiskAutomorphism,
    psi: DiskAutomorphism,
    a_phi: f64,
    a_psi: f64,
    m_phi: f64,
    m_psi: f64,
}

impl HyperbolicConjugacy {
    /// Builds the conjugacy and verifies `mu ∘ phi = psi ∘ mu` on the
    /// 32-point validation set to `1e-6`.
    pub fn new(phi: DiskAutomorphism, psi: DiskAutomorphism) -> Result<Self> {
        let a_phi = canonical_hyperbolic_a(&phi)?;
        let a_psi = canonical_hyperbolic_a(&psi)?;
        let mu = Self {
            phi,
            psi,
            a_phi,
            a_psi,
            m_phi: (1.0 + a_phi) / (1.0 - a_phi),
            m_psi: (1.0 + a_psi) / (1.0 - a_psi),
        };
        let mut worst = 0.0f64;
        for z in sampleset::validation_points() {
            let lhs = mu.eval(phi.eval(z)?)?;
            let rhs = psi.eval(mu.eval(z)?)?;
            worst = worst.max((lhs - rhs).norm());
        }
        if worst > 1e-6 {
            return Err(Error::Numerical(format!(
                "conjugacy residual {worst:.3e}"
            )));
        }
        Ok(mu)
    }

    pub fn phi(&self) -> &DiskAutomorphism {
        &self.phi
    }

    pub fn psi(&self) -> &DiskAutomorphism {
        &self.psi
    }

    /// The conjugacy with the roles of the two maps swapped.
    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.psi, self.phi)
    }

    /// Arc rescaling on the fundamental domain.
    fn mu0(&self, y: Complex64) -> Result<Complex64> {
        // The diameter member of the circle family: plain proportional
        // rescaling of the segment [0, a).  The cutoff also guards the
        // curvature parameter k from overflowing for points that are many
        // orders of magnitude closer to the axis than any sample gets.
        if y.im.abs() < 1e-150 {
            return Ok(Complex64::new(y.re * self.a_psi / self.a_phi, y.im));
        }
        let k = (y.norm_sqr() - 1.0) / (2.0 * y.im);
        let q = Complex64::new(0.0, k);
        let t = if y.im > 0.0 {
            1.0 / (k.hypot(1.0) - k)
        } else {
            -1.0 / (k.hypot(1.0) + k)
        };
        let p0 = Complex64::new(0.0, t);
        let base = p0 - q;
        let step_phi = ((self.phi.eval(p0)? - q) / base).arg();
        let step_psi = ((self.psi.eval(p0)? - q) / base).arg();
        let along = ((y - q) / base).arg();
        let fraction = (along / step_phi).clamp(0.0, 1.0);
        Ok(q + base * Complex64::from_polar(1.0, fraction * step_psi))
    }

    /// Applies the conjugacy.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let n = z.norm();
        if !(n <= 1.0 + DOMAIN_TOL) {
            return Err(Error::Domain(format!(
                "point outside the closed disk (|z| = {n})"
            )));
        }
        let one = Complex64::new(1.0, 0.0);
        if (z - one).norm() < 1e-12 {
            return Ok(one);
        }
        if (z + one).norm() < 1e-12 {
            return Ok(-one);
        }
        let c = (one + z) / (one - z);
        let index = (c.norm().ln() / self.m_phi.ln()).floor() as i64;
        let y = self.phi.iterate(z, -index)?;
        let w = self.mu0(y)?;
        self.psi.iterate(w, index)
    }
}

/// Independent conjugacy between the same pair of canonical hyperbolic
/// maps: the sign-preserving power map `r e^{i alpha} -> r^kappa e^{i alpha}`
/// in the half-plane coordinate, `kappa = ln m_psi / ln m_phi`.  It
/// intertwines the two maps exactly and agrees with the arc-length
/// conjugacy on the imaginary diameter (both restrict to the identity
/// there), but differs elsewhere.
pub fn power_conjugacy_point(
    phi: &DiskAutomorphism,
    psi: &DiskAutomorphism,
    z: Complex64,
) -> Result<Complex64> {
    let m_phi = canonical_multiplier(phi)?;
    let m_psi = canonical_multiplier(psi)?;
    let one = Complex64::new(1.0, 0.0);
    if (z - one).norm() < 1e-12 {
        return Ok(one);
    }
    if (z + one).norm() < 1e-12 {
        return Ok(-one);
    }
    let c = (one + z) / (one - z);
    let kappa = m_psi.ln() / m_phi.ln();
    let w = Complex64::from_polar(c.norm().powf(kappa), c.arg());
    Ok((w - one) / (w + one))
}
