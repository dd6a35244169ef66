//! Symbolic closure operators for the four spectrum topologies.
//!
//! Closed sets in these spectra are finite point lists plus flags naming
//! the infinite blocks (whole boundary circles, whole character circles)
//! that the non-Hausdorff topologies force in.  The four topologies are
//! interchangeable strategies behind the [`ClosureModel`] trait and are
//! looked up by name at runtime.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{canonical_multiplier, circle_label, halfplane_coordinate};
use crate::error::{Error, Result};
use crate::moebius::DiskAutomorphism;

/// Which spectrum topology a set lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumModel {
    Hyperbolic,
    Parabolic,
    EllipticIrrational,
    EllipticRational,
}

/// One point of a spectrum description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumPoint {
    /// Hyperbolic orbit class on the open cylinder: invariant-circle
    /// parameter `u` and angular position `omega`.
    OrbitClass {
        u: f64,
        #[serde(with = "crate::cx::pair")]
        omega: Complex64,
    },
    /// Hyperbolic boundary character on the circle labeled by the fixed
    /// point `epsilon` (-1 or +1).
    BoundaryChar {
        epsilon: i8,
        #[serde(with = "crate::cx::pair")]
        omega: Complex64,
    },
    /// Parabolic orbit class, tagged by a representative point of the disk
    /// minus the fixed point 1.
    ParabolicClass {
        #[serde(with = "crate::cx::pair")]
        point: Complex64,
    },
    /// A character on the circle (parabolic and elliptic models).
    Char {
        #[serde(with = "crate::cx::pair")]
        omega: Complex64,
    },
    /// A whole circle fiber of the irrational-rotation spectrum; fibers are
    /// atomic because the fiber algebra carries the coarse topology.
    Fiber { r: f64 },
    /// A point of the rational-rotation solid torus.
    TorusPoint {
        t: f64,
        #[serde(with = "crate::cx::pair")]
        alpha: Complex64,
        #[serde(with = "crate::cx::pair")]
        beta: Complex64,
    },
}

/// Infinite blocks a closed set may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumFlag {
    /// Both boundary character circles of the hyperbolic spectrum.
    AllBoundaryChars,
    /// The full character circle.
    AllChars,
    /// Declares that the listed fibers accumulate at radius 0; the closure
    /// then pulls in the whole character circle.
    AccumulatesAtZero,
}

fn unimodular(omega: Complex64, what: &str) -> Result<()> {
    if (omega.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "{what} must be unimodular (|value| = {})",
            omega.norm()
        )));
    }
    Ok(())
}

fn validate_point(model: SpectrumModel, p: &SpectrumPoint) -> Result<()> {
    let bad_model = |kind: &str| {
        Err(Error::Domain(format!(
            "{kind} point does not belong to the {model:?} model"
        )))
    };
    match p {
        SpectrumPoint::OrbitClass { u, omega } => {
            if model != SpectrumModel::Hyperbolic {
                return bad_model("orbit_class");
            }
            if !(0.0..=1.0).contains(u) {
                return Err(Error::Domain(format!("cylinder parameter u = {u}")));
            }
            unimodular(*omega, "omega")
        }
        SpectrumPoint::BoundaryChar { epsilon, omega } => {
            if model != SpectrumModel::Hyperbolic {
                return bad_model("boundary_char");
            }
            if *epsilon != -1 && *epsilon != 1 {
                return Err(Error::Domain(format!("epsilon = {epsilon} not in {{-1, 1}}")));
            }
            unimodular(*omega, "omega")
        }
        SpectrumPoint::ParabolicClass { point } => {
            if model != SpectrumModel::Parabolic {
                return bad_model("parabolic_class");
            }
            if point.norm() > 1.0 + 1e-9 {
                return Err(Error::Domain(format!(
                    "orbit representative outside the disk (|z| = {})",
                    point.norm()
                )));
            }
            if (point - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
                return Err(Error::Domain("orbit representative equals the fixed point".into()));
            }
            Ok(())
        }
        SpectrumPoint::Char { omega } => {
            if model != SpectrumModel::Parabolic && model != SpectrumModel::EllipticIrrational {
                return bad_model("char");
            }
            unimodular(*omega, "omega")
        }
        SpectrumPoint::Fiber { r } => {
            if model != SpectrumModel::EllipticIrrational {
                return bad_model("fiber");
            }
            if !(*r > 0.0 && *r <= 1.0) {
                return Err(Error::Domain(format!("fiber radius r = {r} outside (0, 1]")));
            }
            Ok(())
        }
        SpectrumPoint::TorusPoint { t, alpha, beta } => {
            if model != SpectrumModel::EllipticRational {
                return bad_model("torus_point");
            }
            if !(0.0..=1.0).contains(t) {
                return Err(Error::Domain(format!("torus radius t = {t}")));
            }
            unimodular(*alpha, "alpha")?;
            unimodular(*beta, "beta")
        }
    }
}

fn validate_flag(model: SpectrumModel, f: SpectrumFlag) -> Result<()> {
    let ok = match f {
        SpectrumFlag::AllBoundaryChars => model == SpectrumModel::Hyperbolic,
        SpectrumFlag::AllChars => {
            model == SpectrumModel::Parabolic || model == SpectrumModel::EllipticIrrational
        }
        SpectrumFlag::AccumulatesAtZero => model == SpectrumModel::EllipticIrrational,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "flag {f:?} does not belong to the {model:?} model"
        )))
    }
}

fn variant_rank(p: &SpectrumPoint) -> u8 {
    match p {
        SpectrumPoint::OrbitClass { .. } => 0,
        SpectrumPoint::BoundaryChar { .. } => 1,
        SpectrumPoint::ParabolicClass { .. } => 2,
        SpectrumPoint::Char { .. } => 3,
        SpectrumPoint::Fiber { .. } => 4,
        SpectrumPoint::TorusPoint { .. } => 5,
    }
}

fn point_fields(p: &SpectrumPoint) -> [f64; 6] {
    match p {
        SpectrumPoint::OrbitClass { u, omega } => [*u, omega.re, omega.im, 0.0, 0.0, 0.0],
        SpectrumPoint::BoundaryChar { epsilon, omega } => {
            [*epsilon as f64, omega.re, omega.im, 0.0, 0.0, 0.0]
        }
        SpectrumPoint::ParabolicClass { point } => [point.re, point.im, 0.0, 0.0, 0.0, 0.0],
        SpectrumPoint::Char { omega } => [omega.re, omega.im, 0.0, 0.0, 0.0, 0.0],
        SpectrumPoint::Fiber { r } => [*r, 0.0, 0.0, 0.0, 0.0, 0.0],
        SpectrumPoint::TorusPoint { t, alpha, beta } => {
            [*t, alpha.re, alpha.im, beta.re, beta.im, 0.0]
        }
    }
}

fn cmp_points(a: &SpectrumPoint, b: &SpectrumPoint) -> Ordering {
    variant_rank(a).cmp(&variant_rank(b)).then_with(|| {
        let fa = point_fields(a);
        let fb = point_fields(b);
        for i in 0..6 {
            let c = fa[i].total_cmp(&fb[i]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

#[derive(Serialize, Deserialize)]
struct SetWire {
    model: SpectrumModel,
    points: Vec<SpectrumPoint>,
    flags: Vec<SpectrumFlag>,
}

/// A finitely described subset of a spectrum, kept in canonical form:
/// points sorted and deduplicated, points subsumed by a flag removed,
/// flags sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetWire", into = "SetWire")]
pub struct SpectrumSet {
    model: SpectrumModel,
    points: Vec<SpectrumPoint>,
    flags: Vec<SpectrumFlag>,
}

impl From<SpectrumSet> for SetWire {
    fn from(s: SpectrumSet) -> Self {
        SetWire {
            model: s.model,
            points: s.points,
            flags: s.flags,
        }
    }
}

impl TryFrom<SetWire> for SpectrumSet {
    type Error = Error;

    fn try_from(w: SetWire) -> Result<Self> {
        SpectrumSet::new(w.model, w.points, w.flags)
    }
}

impl SpectrumSet {
    /// Validates coordinates and model membership, then canonicalizes.
    pub fn new(
        model: SpectrumModel,
        points: Vec<SpectrumPoint>,
        flags: Vec<SpectrumFlag>,
    ) -> Result<Self> {
        for p in &points {
            validate_point(model, p)?;
        }
        for &f in &flags {
            validate_flag(model, f)?;
        }
        let mut s = Self {
            model,
            points,
            flags,
        };
        s.canonicalize();
        Ok(s)
    }

    pub fn empty(model: SpectrumModel) -> Self {
        Self {
            model,
            points: vec![],
            flags: vec![],
        }
    }

    pub fn model(&self) -> SpectrumModel {
        self.model
    }

    pub fn points(&self) -> &[SpectrumPoint] {
        &self.points
    }

    pub fn flags(&self) -> &[SpectrumFlag] {
        &self.flags
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.flags.is_empty()
    }

    fn canonicalize(&mut self) {
        self.flags.sort_unstable();
        self.flags.dedup();
        let flags = self.flags.clone();
        self.points.retain(|p| match p {
            SpectrumPoint::BoundaryChar { .. } => !flags.contains(&SpectrumFlag::AllBoundaryChars),
            SpectrumPoint::Char { .. } => !flags.contains(&SpectrumFlag::AllChars),
            _ => true,
        });
        self.points.sort_unstable_by(cmp_points);
        self.points.dedup();
    }

    fn with_flag(&self, flag: SpectrumFlag) -> Self {
        let mut out = self.clone();
        out.flags.push(flag);
        out.canonicalize();
        out
    }

    /// Set union; both sides must use the same model.
    pub fn union(&self, rhs: &SpectrumSet) -> Result<SpectrumSet> {
        if self.model != rhs.model {
            return Err(Error::KindMismatch(format!(
                "cannot union {:?} with {:?}",
                self.model, rhs.model
            )));
        }
        let mut out = self.clone();
        out.points.extend(rhs.points.iter().copied());
        out.flags.extend(rhs.flags.iter().copied());
        out.canonicalize();
        Ok(out)
    }

    fn contains_point(&self, p: &SpectrumPoint) -> bool {
        if self.points.contains(p) {
            return true;
        }
        match p {
            SpectrumPoint::BoundaryChar { .. } => {
                self.flags.contains(&SpectrumFlag::AllBoundaryChars)
            }
            SpectrumPoint::Char { .. } => self.flags.contains(&SpectrumFlag::AllChars),
            _ => false,
        }
    }

    /// `rhs ⊆ self` under flag subsumption.
    pub fn contains(&self, rhs: &SpectrumSet) -> bool {
        self.model == rhs.model
            && rhs.flags.iter().all(|f| self.flags.contains(f))
            && rhs.points.iter().all(|p| self.contains_point(p))
    }
}

/// A closure operator for one spectrum topology, selectable by name.
pub trait ClosureModel {
    fn name(&self) -> &'static str;
    fn model(&self) -> SpectrumModel;
    fn close(&self, s: &SpectrumSet) -> Result<SpectrumSet>;
}

/// Hyperbolic cylinder-plus-two-circles topology: any orbit class pulls
/// both boundary character circles into the closure.
pub struct HyperbolicClosure;

impl ClosureModel for HyperbolicClosure {
    fn name(&self) -> &'static str {
        "hyperbolic"
    }

    fn model(&self) -> SpectrumModel {
        SpectrumModel::Hyperbolic
    }

    fn close(&self, s: &SpectrumSet) -> Result<SpectrumSet> {
        let has_orbit = s
            .points()
            .iter()
            .any(|p| matches!(p, SpectrumPoint::OrbitClass { .. }));
        Ok(if has_orbit {
            s.with_flag(SpectrumFlag::AllBoundaryChars)
        } else {
            s.clone()
        })
    }
}

/// Parabolic topology: any orbit class pulls the whole character circle in.
pub struct ParabolicClosure;

impl ClosureModel for ParabolicClosure {
    fn name(&self) -> &'static str {
        "parabolic"
    }

    fn model(&self) -> SpectrumModel {
        SpectrumModel::Parabolic
    }

    fn close(&self, s: &SpectrumSet) -> Result<SpectrumSet> {
        let has_orbit = s
            .points()
            .iter()
            .any(|p| matches!(p, SpectrumPoint::ParabolicClass { .. }));
        Ok(if has_orbit {
            s.with_flag(SpectrumFlag::AllChars)
        } else {
            s.clone()
        })
    }
}

/// Irrational-rotation topology: fibers are atomic and force nothing by
/// themselves; a declared accumulation at radius 0 pulls in the character
/// circle.
pub struct EllipticIrrationalClosure;

impl ClosureModel for EllipticIrrationalClosure {
    fn name(&self) -> &'static str {
        "elliptic_irrational"
    }

    fn model(&self) -> SpectrumModel {
        SpectrumModel::EllipticIrrational
    }

    fn close(&self, s: &SpectrumSet) -> Result<SpectrumSet> {
        Ok(if s.flags().contains(&SpectrumFlag::AccumulatesAtZero) {
            s.with_flag(SpectrumFlag::AllChars)
        } else {
            s.clone()
        })
    }
}

/// Rational-rotation solid torus: Hausdorff, so finite sets are closed.
pub struct EllipticRationalClosure;

impl ClosureModel for EllipticRationalClosure {
    fn name(&self) -> &'static str {
        "elliptic_rational"
    }

    fn model(&self) -> SpectrumModel {
        SpectrumModel::EllipticRational
    }

    fn close(&self, s: &SpectrumSet) -> Result<SpectrumSet> {
        Ok(s.clone())
    }
}

/// All registered closure models.
pub fn closure_models() -> Vec<Box<dyn ClosureModel>> {
    vec![
        Box::new(HyperbolicClosure),
        Box::new(ParabolicClosure),
        Box::new(EllipticIrrationalClosure),
        Box::new(EllipticRationalClosure),
    ]
}

/// Looks a closure model up by its registry name.
pub fn closure_model(name: &str) -> Option<Box<dyn ClosureModel>> {
    closure_models().into_iter().find(|m| m.name() == name)
}

/// Registry names, in registration order.
pub fn closure_model_names() -> Vec<&'static str> {
    closure_models().iter().map(|m| m.name()).collect()
}

fn model_for(s: &SpectrumSet) -> Box<dyn ClosureModel> {
    closure_models()
        .into_iter()
        .find(|m| m.model() == s.model())
        .expect("every model is registered")
}

/// Topological closure of a finitely described set.
pub fn closure(s: &SpectrumSet) -> Result<SpectrumSet> {
    model_for(s).close(s)
}

/// A set is closed when taking the closure changes nothing.
pub fn is_closed(s: &SpectrumSet) -> Result<bool> {
    Ok(closure(s)? == *s)
}

/// Outcome of the closure-axiom sweep over a family of sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub sets_checked: usize,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the Kuratowski closure axioms (empty set fixed, extensivity,
/// idempotence, distribution over finite unions, monotonicity) over a
/// family of sets sharing one model.
pub fn closure_axioms_check(sets: &[SpectrumSet]) -> Result<AxiomReport> {
    let mut failures = Vec::new();
    if let Some(first) = sets.first() {
        if sets.iter().any(|s| s.model() != first.model()) {
            return Err(Error::KindMismatch(
                "axiom sweep needs sets from a single model".into(),
            ));
        }
        let empty = SpectrumSet::empty(first.model());
        if closure(&empty)? != empty {
            failures.push("closure of the empty set is not empty".into());
        }
    }
    for (i, s) in sets.iter().enumerate() {
        let cl = closure(s)?;
        if !cl.contains(s) {
            failures.push(format!("set #{i}: closure is not extensive"));
        }
        if closure(&cl)? != cl {
            failures.push(format!("set #{i}: closure is not idempotent"));
        }
    }
    let mut pairs = 0;
    for (i, s) in sets.iter().enumerate() {
        for (j, t) in sets.iter().enumerate().skip(i + 1) {
            pairs += 1;
            let u = s.union(t)?;
            let cu = closure(&u)?;
            let joined = closure(s)?.union(&closure(t)?)?;
            if cu != joined {
                failures.push(format!(
                    "sets #{i}, #{j}: closure does not distribute over the union"
                ));
            }
            if !cu.contains(&closure(s)?) {
                failures.push(format!("sets #{i}, #{j}: closure is not monotone"));
            }
        }
    }
    Ok(AxiomReport {
        sets_checked: sets.len(),
        pairs_checked: pairs,
        failures,
    })
}

/// Cylinder coordinates of the orbit class of `x` under a canonical
/// hyperbolic map: `u` relabels the invariant circle through `x` to `[0,1]`
/// (0 = upper boundary arc, 1/2 = real diameter, 1 = lower arc) and `omega`
/// marks the position within the orbit, `ω = e^{2iπ·frac(ln|c(x)|/ln m)}`.
/// Constant along orbits by construction.
pub fn orbit_class_coordinates(
    phi: &DiskAutomorphism,
    x: Complex64,
) -> Result<(f64, Complex64)> {
    let m = canonical_multiplier(phi)?;
    let c = halfplane_coordinate(phi, x)?;
    let u = (1.0 - circle_label(x)) / 2.0;
    let frac = (c.norm().ln() / m.ln()).rem_euclid(1.0);
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * frac);
    Ok((u, omega))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn om(t: f64) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * t)
    }

    #[test]
    fn hyperbolic_orbit_class_forces_boundary_circles() {
        let s = SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![SpectrumPoint::OrbitClass {
                u: 0.5,
                omega: om(0.2),
            }],
            vec![],
        )
        .unwrap();
        assert!(!is_closed(&s).unwrap());
        let cl = closure(&s).unwrap();
        assert!(cl.flags().contains(&SpectrumFlag::AllBoundaryChars));
        assert_eq!(cl.points().len(), 1);
        assert!(is_closed(&cl).unwrap());
        // Char-only sets are already closed.
        let chars = SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![
                SpectrumPoint::BoundaryChar {
                    epsilon: 1,
                    omega: om(0.1),
                },
                SpectrumPoint::BoundaryChar {
                    epsilon: -1,
                    omega: om(0.6),
                },
            ],
            vec![],
        )
        .unwrap();
        assert!(is_closed(&chars).unwrap());
        let both = SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![],
            vec![SpectrumFlag::AllBoundaryChars],
        )
        .unwrap();
        assert!(is_closed(&both).unwrap());
    }

    #[test]
    fn empty_sets_are_closed() {
        for model in [
            SpectrumModel::Hyperbolic,
            SpectrumModel::Parabolic,
            SpectrumModel::EllipticIrrational,
            SpectrumModel::EllipticRational,
        ] {
            let e = SpectrumSet::empty(model);
            assert!(closure(&e).unwrap().is_empty());
        }
    }

    #[test]
    fn parabolic_orbit_class_forces_char_circle() {
        let s = SpectrumSet::new(
            SpectrumModel::Parabolic,
            vec![SpectrumPoint::ParabolicClass { point: c(0.2, 0.1) }],
            vec![],
        )
        .unwrap();
        let cl = closure(&s).unwrap();
        assert!(cl.flags().contains(&SpectrumFlag::AllChars));
        let single_char = SpectrumSet::new(
            SpectrumModel::Parabolic,
            vec![SpectrumPoint::Char { omega: om(0.3) }],
            vec![],
        )
        .unwrap();
        assert!(is_closed(&single_char).unwrap());
    }

    #[test]
    fn irrational_fibers_are_atomic() {
        let s = SpectrumSet::new(
            SpectrumModel::EllipticIrrational,
            vec![
                SpectrumPoint::Fiber { r: 0.3 },
                SpectrumPoint::Char { omega: om(0.9) },
            ],
            vec![],
        )
        .unwrap();
        assert!(is_closed(&s).unwrap());
        let acc = SpectrumSet::new(
            SpectrumModel::EllipticIrrational,
            vec![SpectrumPoint::Fiber { r: 0.3 }],
            vec![SpectrumFlag::AccumulatesAtZero],
        )
        .unwrap();
        assert!(!is_closed(&acc).unwrap());
        let cl = closure(&acc).unwrap();
        assert!(cl.flags().contains(&SpectrumFlag::AllChars));
    }

    #[test]
    fn rational_model_is_hausdorff_on_finite_sets() {
        let s = SpectrumSet::new(
            SpectrumModel::EllipticRational,
            vec![
                SpectrumPoint::TorusPoint {
                    t: 0.4,
                    alpha: om(0.2),
                    beta: om(0.7),
                },
                SpectrumPoint::TorusPoint {
                    t: 1.0,
                    alpha: om(0.0),
                    beta: om(0.5),
                },
            ],
            vec![],
        )
        .unwrap();
        assert!(is_closed(&s).unwrap());
        assert_eq!(closure(&s).unwrap(), s);
    }

    #[test]
    fn validation_rejects_bad_coordinates() {
        assert!(SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![SpectrumPoint::OrbitClass {
                u: 1.5,
                omega: om(0.0)
            }],
            vec![],
        )
        .is_err());
        assert!(SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![SpectrumPoint::BoundaryChar {
                epsilon: 0,
                omega: om(0.0)
            }],
            vec![],
        )
        .is_err());
        assert!(SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![SpectrumPoint::OrbitClass {
                u: 0.5,
                omega: c(0.5, 0.0)
            }],
            vec![],
        )
        .is_err());
        assert!(SpectrumSet::new(
            SpectrumModel::EllipticIrrational,
            vec![SpectrumPoint::Fiber { r: 0.0 }],
            vec![],
        )
        .is_err());
        assert!(SpectrumSet::new(
            SpectrumModel::Parabolic,
            vec![SpectrumPoint::ParabolicClass {
                point: c(1.0, 0.0)
            }],
            vec![],
        )
        .is_err());
        // Wrong variant or flag for the model.
        assert!(SpectrumSet::new(
            SpectrumModel::Parabolic,
            vec![SpectrumPoint::Fiber { r: 0.5 }],
            vec![],
        )
        .is_err());
        assert!(SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![],
            vec![SpectrumFlag::AccumulatesAtZero],
        )
        .is_err());
    }

    #[test]
    fn canonical_form_subsumes_and_dedups() {
        let s = SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![
                SpectrumPoint::BoundaryChar {
                    epsilon: 1,
                    omega: om(0.25),
                },
                SpectrumPoint::OrbitClass {
                    u: 0.5,
                    omega: om(0.1),
                },
                SpectrumPoint::OrbitClass {
                    u: 0.5,
                    omega: om(0.1),
                },
            ],
            vec![SpectrumFlag::AllBoundaryChars, SpectrumFlag::AllBoundaryChars],
        )
        .unwrap();
        assert_eq!(s.flags(), &[SpectrumFlag::AllBoundaryChars]);
        assert_eq!(s.points().len(), 1);
        assert!(matches!(s.points()[0], SpectrumPoint::OrbitClass { .. }));
        // The subsumed char point is still a member.
        assert!(s.contains_point(&SpectrumPoint::BoundaryChar {
            epsilon: 1,
            omega: om(0.25)
        }));
    }

    #[test]
    fn kuratowski_axioms_hold_per_model() {
        let hyp = vec![
            SpectrumSet::empty(SpectrumModel::Hyperbolic),
            SpectrumSet::new(
                SpectrumModel::Hyperbolic,
                vec![SpectrumPoint::OrbitClass {
                    u: 0.2,
                    omega: om(0.4),
                }],
                vec![],
            )
            .unwrap(),
            SpectrumSet::new(
                SpectrumModel::Hyperbolic,
                vec![SpectrumPoint::BoundaryChar {
                    epsilon: -1,
                    omega: om(0.8),
                }],
                vec![],
            )
            .unwrap(),
            SpectrumSet::new(
                SpectrumModel::Hyperbolic,
                vec![
                    SpectrumPoint::OrbitClass {
                        u: 0.9,
                        omega: om(0.0),
                    },
                    SpectrumPoint::BoundaryChar {
                        epsilon: 1,
                        omega: om(0.5),
                    },
                ],
                vec![SpectrumFlag::AllBoundaryChars],
            )
            .unwrap(),
        ];
        let report = closure_axioms_check(&hyp).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.sets_checked, 4);
        assert_eq!(report.pairs_checked, 6);

        let ell = vec![
            SpectrumSet::empty(SpectrumModel::EllipticIrrational),
            SpectrumSet::new(
                SpectrumModel::EllipticIrrational,
                vec![SpectrumPoint::Fiber { r: 0.4 }],
                vec![],
            )
            .unwrap(),
            SpectrumSet::new(
                SpectrumModel::EllipticIrrational,
                vec![SpectrumPoint::Fiber { r: 0.1 }],
                vec![SpectrumFlag::AccumulatesAtZero],
            )
            .unwrap(),
            SpectrumSet::new(
                SpectrumModel::EllipticIrrational,
                vec![SpectrumPoint::Char { omega: om(0.6) }],
                vec![],
            )
            .unwrap(),
        ];
        let report = closure_axioms_check(&ell).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);

        // Mixed models are refused.
        let mixed = vec![
            SpectrumSet::empty(SpectrumModel::Hyperbolic),
            SpectrumSet::empty(SpectrumModel::Parabolic),
        ];
        assert!(closure_axioms_check(&mixed).is_err());
    }

    #[test]
    fn registry_resolves_models_by_name() {
        assert_eq!(
            closure_model_names(),
            vec![
                "hyperbolic",
                "parabolic",
                "elliptic_irrational",
                "elliptic_rational"
            ]
        );
        let m = closure_model("hyperbolic").unwrap();
        assert_eq!(m.model(), SpectrumModel::Hyperbolic);
        assert!(closure_model("euclidean").is_none());
        // Dispatch through the registry agrees with the free function.
        let s = SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![SpectrumPoint::OrbitClass {
                u: 0.3,
                omega: om(0.3),
            }],
            vec![],
        )
        .unwrap();
        assert_eq!(m.close(&s).unwrap(), closure(&s).unwrap());
    }

    #[test]
    fn orbit_coordinates_are_orbit_invariants() {
        let phi = DiskAutomorphism::hyperbolic_canonical(0.5).unwrap();
        let (u0, w0) = orbit_class_coordinates(&phi, c(0.0, 0.0)).unwrap();
        assert!((u0 - 0.5).abs() < 1e-15);
        assert!((w0 - c(1.0, 0.0)).norm() < 1e-12);
        for x in [c(0.3, 0.2), c(-0.5, -0.4), c(0.0, 0.9)] {
            let (u1, w1) = orbit_class_coordinates(&phi, x).unwrap();
            let (u2, w2) = orbit_class_coordinates(&phi, phi.eval(x).unwrap()).unwrap();
            assert!((u1 - u2).abs() < 1e-9, "u drifted at {x}");
            assert!((w1 - w2).norm() < 1e-9, "omega drifted at {x}");
        }
        // Same invariant circle, different orbit: same u, different omega.
        let x = c(0.0, 0.3);
        let y = phi.eval(x).unwrap();
        let mid = (x + y) / 2.0;
        let on_circle = {
            // Project the midpoint chord back onto the circle through x.
            let t = circle_label(x);
            let (center, radius) = crate::dynamics::circle_from_label(t).unwrap();
            center + (mid - center) / (mid - center).norm() * radius
        };
        let (ux, _) = orbit_class_coordinates(&phi, x).unwrap();
        let (um, wm) = orbit_class_coordinates(&phi, on_circle).unwrap();
        assert!((ux - um).abs() < 1e-9);
        assert!((wm - c(1.0, 0.0)).norm() > 1e-3);
        // Fixed points are outside the chart.
        assert!(orbit_class_coordinates(&phi, c(1.0, 0.0)).is_err());
        assert!(orbit_class_coordinates(&phi, c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn serde_wire_format() {
        let s = SpectrumSet::new(
            SpectrumModel::Hyperbolic,
            vec![SpectrumPoint::OrbitClass {
                u: 0.5,
                omega: c(1.0, 0.0),
            }],
            vec![SpectrumFlag::AllBoundaryChars],
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"model":"hyperbolic","points":[{"kind":"orbit_class","u":0.5,"omega":[1.0,0.0]}],"flags":["all_boundary_chars"]}"#
        );
        let back: SpectrumSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        // Deserialization validates.
        let bad = r#"{"model":"parabolic","points":[{"kind":"fiber","r":0.5}],"flags":[]}"#;
        assert!(serde_json::from_str::<SpectrumSet>(bad).is_err());
    }
}
