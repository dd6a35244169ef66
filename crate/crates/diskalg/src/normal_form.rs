//! Conformal normal forms and their complete invariants.
//!
//! Every non-identity disk automorphism is conformally conjugate to exactly
//! one canonical representative: `z -> (z+a)/(1+az)` for hyperbolic maps,
//! a rotation for elliptic maps, and one of the two standard parabolic maps
//! fixing `1` (distinguished by whether `-1` moves into the upper or lower
//! half of the circle).  The functions here build an explicit conjugator word
//! and report the invariant that labels the class: `a`, the rotation number
//! `mu`, or the parabolic orientation sign.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::moebius::{
    from_matrix, matrix_through_points, AutomorphismClass, ClassTag, DiskAutomorphism,
    MoebiusWord,
};
use crate::sampleset;

fn frac01(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// The conformal conjugacy invariant attached to a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantData {
    Identity,
    Hyperbolic { a: f64 },
    Elliptic {
        #[serde(with = "crate::cx::pair")]
        mu: Complex64,
    },
    Parabolic { orientation: i8 },
}

/// A canonical representative, the conjugator word carrying the input onto
/// it, the class invariant, and the worst evaluation residual of
/// `conjugator ∘ input ∘ conjugator⁻¹` against the canonical map over the
/// 64-point sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormResult {
    pub class: AutomorphismClass,
    pub canonical: DiskAutomorphism,
    pub conjugator: MoebiusWord,
    pub invariant: InvariantData,
    pub residual: f64,
}

fn conjugation_residual(
    canonical: &DiskAutomorphism,
    conjugator: &MoebiusWord,
    phi: &DiskAutomorphism,
) -> Result<f64> {
    let conj = MoebiusWord::from_map(*phi).conjugated(conjugator);
    let mut worst = 0.0f64;
    for p in sampleset::equality_points() {
        worst = worst.max((canonical.eval(p)? - conj.eval(p)?).norm());
    }
    Ok(worst)
}

/// Normal form of an automorphism of any class.
pub fn normal_form(phi: &DiskAutomorphism) -> Result<NormalFormResult> {
    match phi.class() {
        ClassTag::Identity => {
            let canonical = DiskAutomorphism::identity();
            let conjugator = MoebiusWord::identity();
            let residual = conjugation_residual(&canonical, &conjugator, phi)?;
            Ok(NormalFormResult {
                class: phi.classify(),
                canonical,
                conjugator,
                invariant: InvariantData::Identity,
                residual,
            })
        }
        ClassTag::Hyperbolic => hyperbolic_normal_form(phi),
        ClassTag::Elliptic => elliptic_normal_form(phi),
        ClassTag::Parabolic => parabolic_normal_form(phi),
    }
}

/// Conjugates a hyperbolic map onto `z -> (z+a)/(1+az)`, `a ∈ (0,1)`, with
/// `1` the attractive fixed point.
///
/// The conjugator moves the two boundary fixed points `alpha, beta` to `±1`
/// via `psi(z) = i ω (z + γ ω̄) / (1 + γ ω z)` where `ω² = conj(alpha beta)`
/// and `γ = (i - ω alpha)/(1 - i ω alpha)` is real in `(-1,1)` for exactly
/// one choice of the square-root branch; a final half-turn makes `z0`
/// negative so `1` is attractive.
pub fn hyperbolic_normal_form(phi: &DiskAutomorphism) -> Result<NormalFormResult> {
    let class = phi.classify();
    if class.tag != ClassTag::Hyperbolic {
        return Err(Error::Class(class.tag));
    }
    let fp = phi.fixed_points()?;
    let (alpha, beta) = (fp.points[0], fp.points[1]);
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);

    let omega0 = (alpha * beta).conj().sqrt();
    let mut chosen: Option<(Complex64, f64)> = None;
    for omega in [omega0, -omega0] {
        let gamma = (i - omega * alpha) / (one - i * omega * alpha);
        if gamma.im.abs() < 1e-7 && gamma.re.abs() < 1.0 {
            chosen = Some((omega, gamma.re));
            break;
        }
    }
    let (omega, gamma) = chosen.ok_or_else(|| {
        Error::Numerical("no square-root branch gives a real gamma in (-1,1)".into())
    })?;
    let psi = DiskAutomorphism::new(
        frac01((i * omega).arg() / TAU),
        -gamma * omega.conj(),
    )?;

    let mut conjugator = MoebiusWord::from_map(psi);
    let mut reduced = MoebiusWord::from_map(*phi)
        .conjugated(&conjugator)
        .normalize()?;
    if reduced.z0().re > 0.0 {
        // Half-turn swaps the images of the fixed points.
        conjugator = MoebiusWord::from_map(DiskAutomorphism::rotation(0.5)).compose(&conjugator);
        reduced = MoebiusWord::from_map(*phi)
            .conjugated(&conjugator)
            .normalize()?;
    }
    let a = reduced.z0().norm();
    let canonical = DiskAutomorphism::hyperbolic_canonical(a)?;
    let residual = conjugation_residual(&canonical, &conjugator, phi)?;
    Ok(NormalFormResult {
        class,
        canonical,
        conjugator,
        invariant: InvariantData::Hyperbolic { a },
        residual,
    })
}

/// Conjugates an elliptic map onto the rotation by its rotation number `mu`:
/// first move the interior fixed point `c` to the origin with
/// `psi(z) = (z - c)/(1 - conj(c) z)`, then read the rotation off the
/// reduced parameters.  `mu` equals `phi'(c)`.
pub fn elliptic_normal_form(phi: &DiskAutomorphism) -> Result<NormalFormResult> {
    let class = phi.classify();
    if class.tag != ClassTag::Elliptic {
        return Err(Error::Class(class.tag));
    }
    let fp = phi.fixed_points()?;
    let c = fp.points[0];

    if c.norm() == 0.0 {
        // Already a rotation; keep exact rationality if present.
        let conjugator = MoebiusWord::identity();
        let residual = conjugation_residual(phi, &conjugator, phi)?;
        return Ok(NormalFormResult {
            class,
            canonical: *phi,
            conjugator,
            invariant: InvariantData::Elliptic { mu: phi.lambda() },
            residual,
        });
    }

    let psi = DiskAutomorphism::new(0.0, c)?;
    let conjugator = MoebiusWord::from_map(psi);
    let reduced = MoebiusWord::from_map(*phi)
        .conjugated(&conjugator)
        .normalize()?;
    let canonical = DiskAutomorphism::rotation(reduced.theta());
    let residual = conjugation_residual(&canonical, &conjugator, phi)?;
    Ok(NormalFormResult {
        class,
        canonical,
        conjugator,
        invariant: InvariantData::Elliptic {
            mu: reduced.lambda(),
        },
        residual,
    })
}

/// Conjugates a parabolic map onto the canonical parabolic fixing `1`.
///
/// The fixed point is rotated to `1`; the orientation is the sign of
/// `Im phi1(-1)`; the remaining conjugator is the unique Moebius map fixing
/// `1` and `-1` and sending `phi1(-1)` to `i` (orientation `+1`) or `-i`
/// (orientation `-1`).
pub fn parabolic_normal_form(phi: &DiskAutomorphism) -> Result<NormalFormResult> {
    let class = phi.classify();
    if class.tag != ClassTag::Parabolic {
        return Err(Error::Class(class.tag));
    }
    let fp = phi.fixed_points()?;
    let alpha = fp.points[0];
    let one = Complex64::new(1.0, 0.0);
    let m_one = Complex64::new(-1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);

    let rot = DiskAutomorphism::rotation(frac01(-alpha.arg() / TAU));
    let phi1 = MoebiusWord::from_map(*phi).conjugated(&MoebiusWord::from_map(rot));
    let v = phi1.eval(m_one)?;
    if v.im == 0.0 {
        return Err(Error::Numerical(
            "parabolic image of -1 is real; orientation undefined".into(),
        ));
    }
    let orientation: i8 = if v.im > 0.0 { 1 } else { -1 };
    let target = if orientation > 0 { i } else { -i };

    let m = matrix_through_points([one, m_one, v], [one, m_one, target]);
    let psi1 = from_matrix(m)?;
    let conjugator = MoebiusWord::from_map(psi1).compose(&MoebiusWord::from_map(rot));
    let canonical = if orientation > 0 {
        DiskAutomorphism::parabolic_plus()
    } else {
        DiskAutomorphism::parabolic_minus()
    };
    let residual = conjugation_residual(&canonical, &conjugator, phi)?;
    Ok(NormalFormResult {
        class,
        canonical,
        conjugator,
        invariant: InvariantData::Parabolic { orientation },
        residual,
    })
}

/// Rotation number of an elliptic invariant: `arg(mu)/2π` folded to `[0,1)`.
pub fn rotation_number(mu: Complex64) -> f64 {
    frac01(mu.arg() / TAU)
}

fn circle_distance(t1: f64, t2: f64) -> f64 {
    let d = (t1 - t2).abs();
    d.min(1.0 - d)
}

/// Decides topological conjugacy.
///
/// All hyperbolic maps are mutually conjugate, as are all parabolic maps
/// (a mirror homeomorphism merges the two orientations).  Elliptic maps are
/// conjugate exactly when their rotation numbers agree up to reflection
/// `t' ∈ {t, 1-t}`; for exact rational rotations the comparison is exact,
/// otherwise within `1e-9`.
pub fn are_topologically_conjugate(
    phi: &DiskAutomorphism,
    psi: &DiskAutomorphism,
) -> Result<bool> {
    let (ca, cb) = (phi.class(), psi.class());
    if ca != cb {
        return Ok(false);
    }
    if ca != ClassTag::Elliptic {
        return Ok(true);
    }
    if phi.z0().norm() == 0.0 && psi.z0().norm() == 0.0 {
        if let (Some((p1, q1)), Some((p2, q2))) = (phi.theta_rational(), psi.theta_rational()) {
            let same = p1 == p2 && q1 == q2;
            let mirrored = q1 == q2 && (p1 + p2) as u64 % q1 == 0;
            return Ok(same || mirrored);
        }
    }
    let mu1 = match elliptic_normal_form(phi)?.invariant {
        InvariantData::Elliptic { mu } => mu,
        _ => unreachable!(),
    };
    let mu2 = match elliptic_normal_form(psi)?.invariant {
        InvariantData::Elliptic { mu } => mu,
        _ => unreachable!(),
    };
    let (t1, t2) = (rotation_number(mu1), rotation_number(mu2));
    Ok(circle_distance(t1, t2) < 1e-9 || circle_distance(t1, frac01(-t2)) < 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_hyperbolic_is_its_own_form() {
        let phi = DiskAutomorphism::hyperbolic_canonical(0.5).unwrap();
        let nf = hyperbolic_normal_form(&phi).unwrap();
        assert!(matches!(nf.invariant, InvariantData::Hyperbolic { a } if (a - 0.5).abs() < 1e-12));
        assert!((nf.canonical.z0() - c(-0.5, 0.0)).norm() < 1e-12);
        assert!(nf.residual < 1e-10);
    }

    #[test]
    fn hyperbolic_with_fixed_points_on_imaginary_axis() {
        // Conjugating the canonical map by a quarter turn puts the fixed
        // points at ±i.
        let base = DiskAutomorphism::hyperbolic_canonical(0.5).unwrap();
        let w = MoebiusWord::from_map(DiskAutomorphism::rotation(0.25));
        let phi = MoebiusWord::from_map(base).conjugated(&w).normalize().unwrap();
        let fp = phi.fixed_points().unwrap();
        assert!(fp.points.iter().any(|p| (p - c(0.0, 1.0)).norm() < 1e-9));
        let nf = hyperbolic_normal_form(&phi).unwrap();
        assert!(matches!(nf.invariant, InvariantData::Hyperbolic { a } if (a - 0.5).abs() < 1e-9));
        assert!(nf.residual < 1e-9, "residual {}", nf.residual);
    }

    #[test]
    fn hyperbolic_with_skew_fixed_points_takes_other_branch() {
        // Move the fixed points to 1 and i; the principal square root then
        // gives a gamma outside (-1,1) and the branch switch must trigger.
        let base = DiskAutomorphism::hyperbolic_canonical(0.5).unwrap();
        let mover = from_matrix(matrix_through_points(
            [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, -1.0)],
            [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)],
        ))
        .unwrap();
        let w = MoebiusWord::from_map(mover);
        let phi = MoebiusWord::from_map(base).conjugated(&w).normalize().unwrap();
        let nf = hyperbolic_normal_form(&phi).unwrap();
        assert!(matches!(nf.invariant, InvariantData::Hyperbolic { a } if (a - 0.5).abs() < 1e-9));
        assert!(nf.residual < 1e-9, "residual {}", nf.residual);
    }

    #[test]
    fn hyperbolic_invariant_is_stable_under_conjugation() {
        let base = DiskAutomorphism::new(0.13, c(0.52, 0.31)).unwrap();
        assert_eq!(base.class(), ClassTag::Hyperbolic);
        let a0 = match hyperbolic_normal_form(&base).unwrap().invariant {
            InvariantData::Hyperbolic { a } => a,
            _ => unreachable!(),
        };
        for psi in [
            DiskAutomorphism::new(0.7, c(0.2, -0.4)).unwrap(),
            DiskAutomorphism::new(0.41, c(-0.6, 0.1)).unwrap(),
        ] {
            let w = MoebiusWord::from_map(psi);
            let phi = MoebiusWord::from_map(base).conjugated(&w).normalize().unwrap();
            let a1 = match hyperbolic_normal_form(&phi).unwrap().invariant {
                InvariantData::Hyperbolic { a } => a,
                _ => unreachable!(),
            };
            assert!((a0 - a1).abs() < 1e-9, "a0 {a0} a1 {a1}");
        }
    }

    #[test]
    fn pure_rotation_normal_form_is_trivial() {
        let phi = DiskAutomorphism::rotation_rational(1, 4).unwrap();
        let nf = elliptic_normal_form(&phi).unwrap();
        assert!(matches!(nf.invariant, InvariantData::Elliptic { mu } if (mu - c(0.0, 1.0)).norm() < 1e-12));
        assert_eq!(nf.canonical.theta_rational(), Some((1, 4)));
        assert!(nf.conjugator.factors().is_empty());
    }

    #[test]
    fn elliptic_with_offset_center_reduces_to_rotation() {
        let phi = DiskAutomorphism::new(0.25, c(0.3, 0.0)).unwrap();
        let nf = elliptic_normal_form(&phi).unwrap();
        assert!(nf.residual < 1e-9, "residual {}", nf.residual);
        let mu = match nf.invariant {
            InvariantData::Elliptic { mu } => mu,
            _ => unreachable!(),
        };
        // The rotation number equals the derivative at the fixed point.
        let cfix = phi.fixed_points().unwrap().points[0];
        assert!((mu - phi.derivative(cfix)).norm() < 1e-10);
        // Moving the center shifts the rotation number away from theta.
        assert!((rotation_number(mu) - 0.25).abs() > 1e-3);
    }

    #[test]
    fn elliptic_rotation_number_agrees_across_conjugates() {
        let base = DiskAutomorphism::rotation(0.37);
        let mut mus = vec![];
        for psi in [
            DiskAutomorphism::new(0.11, c(0.4, 0.2)).unwrap(),
            DiskAutomorphism::new(0.83, c(-0.3, 0.5)).unwrap(),
        ] {
            let w = MoebiusWord::from_map(psi);
            let phi = MoebiusWord::from_map(base).conjugated(&w).normalize().unwrap();
            match elliptic_normal_form(&phi).unwrap().invariant {
                InvariantData::Elliptic { mu } => mus.push(mu),
                _ => unreachable!(),
            }
        }
        assert!((mus[0] - mus[1]).norm() < 1e-10);
        assert!((mus[0] - base.lambda()).norm() < 1e-10);
    }

    #[test]
    fn parabolic_plus_is_its_own_form() {
        let phi = DiskAutomorphism::parabolic_plus();
        let nf = parabolic_normal_form(&phi).unwrap();
        assert!(matches!(nf.invariant, InvariantData::Parabolic { orientation: 1 }));
        assert!((nf.canonical.z0() - phi.z0()).norm() < 1e-12);
        assert!(nf.residual < 1e-10);
        for p in sampleset::validation_points() {
            assert!((nf.conjugator.eval(p).unwrap() - p).norm() < 1e-9);
        }
    }

    #[test]
    fn mirrored_parabolic_gets_minus_orientation() {
        // Parameters (conj lambda, conj z0) realize the coordinate mirror of
        // the plus map.
        let plus = DiskAutomorphism::parabolic_plus();
        let phi = DiskAutomorphism::new(
            frac01(plus.lambda().conj().arg() / TAU),
            plus.z0().conj(),
        )
        .unwrap();
        let nf = parabolic_normal_form(&phi).unwrap();
        assert!(matches!(nf.invariant, InvariantData::Parabolic { orientation: -1 }));
        assert!((nf.canonical.z0() - DiskAutomorphism::parabolic_minus().z0()).norm() < 1e-12);
        assert!(nf.residual < 1e-9);
    }

    #[test]
    fn generic_parabolic_reduces() {
        let phi = DiskAutomorphism::new(1.0 / 6.0, c(0.5, 0.0)).unwrap();
        assert_eq!(phi.class(), ClassTag::Parabolic);
        let nf = parabolic_normal_form(&phi).unwrap();
        assert!(nf.residual < 1e-9, "residual {}", nf.residual);
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let rot = DiskAutomorphism::rotation(0.3);
        assert!(matches!(
            hyperbolic_normal_form(&rot),
            Err(Error::Class(ClassTag::Elliptic))
        ));
        let hyp = DiskAutomorphism::hyperbolic_canonical(0.4).unwrap();
        assert!(matches!(
            elliptic_normal_form(&hyp),
            Err(Error::Class(ClassTag::Hyperbolic))
        ));
        assert!(matches!(
            parabolic_normal_form(&hyp),
            Err(Error::Class(ClassTag::Hyperbolic))
        ));
    }

    #[test]
    fn normal_form_dispatches_and_is_idempotent() {
        for phi in [
            DiskAutomorphism::hyperbolic_canonical(0.3).unwrap(),
            DiskAutomorphism::rotation(0.2),
            DiskAutomorphism::parabolic_plus(),
            DiskAutomorphism::identity(),
        ] {
            let nf = normal_form(&phi).unwrap();
            let again = normal_form(&nf.canonical).unwrap();
            assert!((again.canonical.theta() - nf.canonical.theta()).abs() < 1e-9);
            assert!((again.canonical.z0() - nf.canonical.z0()).norm() < 1e-9);
            assert!(again.residual < 1e-9);
        }
    }

    #[test]
    fn topological_conjugacy_frozen_cases() {
        let r15 = DiskAutomorphism::rotation_rational(1, 5).unwrap();
        let r45 = DiskAutomorphism::rotation_rational(4, 5).unwrap();
        let r25 = DiskAutomorphism::rotation_rational(2, 5).unwrap();
        assert!(are_topologically_conjugate(&r15, &r45).unwrap());
        assert!(!are_topologically_conjugate(&r15, &r25).unwrap());
        let h13 = DiskAutomorphism::hyperbolic_canonical(1.0 / 3.0).unwrap();
        let h23 = DiskAutomorphism::hyperbolic_canonical(2.0 / 3.0).unwrap();
        assert!(are_topologically_conjugate(&h13, &h23).unwrap());
        assert!(!are_topologically_conjugate(&r15, &h13).unwrap());
        assert!(are_topologically_conjugate(
            &DiskAutomorphism::parabolic_plus(),
            &DiskAutomorphism::parabolic_minus()
        )
        .unwrap());
    }

    #[test]
    fn topological_conjugacy_float_rotations() {
        let a = DiskAutomorphism::rotation(0.2);
        let b = DiskAutomorphism::rotation(0.8);
        assert!(are_topologically_conjugate(&a, &b).unwrap());
        assert!(!are_topologically_conjugate(&a, &DiskAutomorphism::rotation(0.4)).unwrap());
    }
}
