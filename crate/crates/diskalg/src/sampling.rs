//! Seeded random samplers for maps, points, and crossed-product elements.
//!
//! Draws are bounded away from degeneracies: class margins of at least
//! 0.05, map parameters at most 0.9 from the boundary, and parabolic
//! rotation parameters kept clear of the |z0| -> 1 pinch at theta = 1/2.
//! Conjugator constructions lose roughly a factor 1/margin in accuracy, so
//! tests that assert tight tolerances must not sample arbitrarily close to
//! the class boundaries.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crossed::{CrossedElement, ExprFun};
use crate::moebius::{ClassTag, DiskAutomorphism, MoebiusWord, WordFactor};
use crate::spectra::{SpectrumFlag, SpectrumModel, SpectrumPoint, SpectrumSet};

/// Minimum classification margin guaranteed by the class samplers.
pub const MARGIN: f64 = 0.05;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the disk of the given radius.
pub fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let a = std::f64::consts::TAU * rng.gen::<f64>();
    Complex64::from_polar(r, a)
}

/// Interior sample point, kept off the boundary.
pub fn interior_point(rng: &mut ChaCha8Rng) -> Complex64 {
    disk_point(rng, 0.9)
}

/// Point of the unit circle.
pub fn boundary_point(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>())
}

fn raw_map(rng: &mut ChaCha8Rng) -> DiskAutomorphism {
    let theta = rng.gen::<f64>();
    let z0 = disk_point(rng, 0.9);
    DiskAutomorphism::new(theta, z0).expect("parameters are in range")
}

/// Random map that is hyperbolic with margin at least [`MARGIN`].
pub fn hyperbolic_map(rng: &mut ChaCha8Rng) -> DiskAutomorphism {
    loop {
        let phi = raw_map(rng);
        let cls = phi.classify();
        if cls.tag == ClassTag::Hyperbolic && cls.margin >= MARGIN {
            return phi;
        }
    }
}

/// Random map that is elliptic with margin at most -[`MARGIN`].
pub fn elliptic_map(rng: &mut ChaCha8Rng) -> DiskAutomorphism {
    loop {
        let phi = raw_map(rng);
        let cls = phi.classify();
        if cls.tag == ClassTag::Elliptic && cls.margin <= -MARGIN {
            return phi;
        }
    }
}

/// Random parabolic map: a canonical one-fixed-point map at a rotation
/// parameter in [0.05, 0.45] ∪ [0.55, 0.95], conjugated by a random
/// automorphism and renormalized.  The parabolic identity |z0| = |sin πθ|
/// survives the float conjugation well inside the classification
/// tolerance.
pub fn parabolic_map(rng: &mut ChaCha8Rng) -> DiskAutomorphism {
    loop {
        let mut theta = 0.05 + 0.8 * rng.gen::<f64>();
        if theta > 0.45 {
            theta += 0.1;
        }
        let lambda = Complex64::from_polar(1.0, std::f64::consts::TAU * theta);
        let base = DiskAutomorphism::parabolic_through_one(lambda)
            .expect("rotation parameter is clear of the pinch");
        let by = MoebiusWord::from_map(DiskAutomorphism::new(rng.gen::<f64>(), disk_point(rng, 0.6)).unwrap());
        let conjugated = MoebiusWord::from_map(base).conjugated(&by);
        if let Ok(phi) = conjugated.normalize() {
            // Conjugation moves the rotation parameter, so it can drift
            // toward the pinch; reject those draws too.
            if phi.class() == ClassTag::Parabolic && phi.z0().norm() <= 0.9 {
                return phi;
            }
        }
    }
}

/// Random map of the named class.
pub fn map_of_class(rng: &mut ChaCha8Rng, tag: ClassTag) -> DiskAutomorphism {
    match tag {
        ClassTag::Identity => DiskAutomorphism::identity(),
        ClassTag::Elliptic => elliptic_map(rng),
        ClassTag::Parabolic => parabolic_map(rng),
        ClassTag::Hyperbolic => hyperbolic_map(rng),
    }
}

/// Random coefficient tree of the given depth; leaves mix constants with
/// the coordinate and its conjugate, inner nodes mix sums, products, and
/// precompositions with random automorphisms.
pub fn expr_fun(rng: &mut ChaCha8Rng, depth: u32) -> ExprFun {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => ExprFun::constant(disk_point(rng, 1.5)),
            1 => ExprFun::Z,
            _ => ExprFun::ConjZ,
        };
    }
    match rng.gen_range(0..4) {
        0 => expr_fun(rng, depth - 1).add(expr_fun(rng, depth - 1)),
        1 => expr_fun(rng, depth - 1).mul(expr_fun(rng, depth - 1)),
        2 => {
            let word = MoebiusWord::from_factors(vec![WordFactor {
                map: raw_map(rng),
                power: rng.gen_range(-2..=2),
            }]);
            expr_fun(rng, depth - 1).precompose(word)
        }
        _ => expr_fun(rng, 0),
    }
}

/// Random crossed-product element with support inside
/// `[-max_degree, max_degree]` and at least one term.
pub fn crossed_element(rng: &mut ChaCha8Rng, max_degree: i64, depth: u32) -> CrossedElement {
    loop {
        let mut terms = Vec::new();
        for n in -max_degree..=max_degree {
            if rng.gen::<f64>() < 0.5 {
                terms.push((n, expr_fun(rng, depth)));
            }
        }
        let a = CrossedElement::from_terms(terms);
        if !a.support().is_empty() {
            return a;
        }
    }
}

fn unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>())
}

fn spectrum_point(rng: &mut ChaCha8Rng, model: SpectrumModel) -> SpectrumPoint {
    match model {
        SpectrumModel::Hyperbolic => {
            if rng.gen::<bool>() {
                SpectrumPoint::OrbitClass {
                    u: rng.gen::<f64>(),
                    omega: unimodular(rng),
                }
            } else {
                SpectrumPoint::BoundaryChar {
                    epsilon: if rng.gen::<bool>() { 1 } else { -1 },
                    omega: unimodular(rng),
                }
            }
        }
        SpectrumModel::Parabolic => {
            if rng.gen::<bool>() {
                SpectrumPoint::ParabolicClass {
                    point: disk_point(rng, 0.9),
                }
            } else {
                SpectrumPoint::Char {
                    omega: unimodular(rng),
                }
            }
        }
        SpectrumModel::EllipticIrrational => {
            if rng.gen::<bool>() {
                SpectrumPoint::Fiber {
                    r: 0.05 + 0.95 * rng.gen::<f64>(),
                }
            } else {
                SpectrumPoint::Char {
                    omega: unimodular(rng),
                }
            }
        }
        SpectrumModel::EllipticRational => SpectrumPoint::TorusPoint {
            t: rng.gen::<f64>(),
            alpha: unimodular(rng),
            beta: unimodular(rng),
        },
    }
}

/// Random finite spectrum description for the given model: up to four
/// points of the model-appropriate kinds, plus each admissible flag with
/// small probability.
pub fn spectrum_set(rng: &mut ChaCha8Rng, model: SpectrumModel) -> SpectrumSet {
    let count = rng.gen_range(0..=4);
    let points = (0..count).map(|_| spectrum_point(rng, model)).collect();
    let mut flags = Vec::new();
    let admissible: &[SpectrumFlag] = match model {
        SpectrumModel::Hyperbolic => &[SpectrumFlag::AllBoundaryChars],
        SpectrumModel::Parabolic => &[SpectrumFlag::AllChars],
        SpectrumModel::EllipticIrrational => {
            &[SpectrumFlag::AllChars, SpectrumFlag::AccumulatesAtZero]
        }
        SpectrumModel::EllipticRational => &[],
    };
    for &f in admissible {
        if rng.gen::<f64>() < 0.2 {
            flags.push(f);
        }
    }
    SpectrumSet::new(model, points, flags).expect("sampled description is valid")
}
