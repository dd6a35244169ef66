//! Finite matrix truncations of the irreducible representations, plus
//! structural verifiers: Toeplitz-block decomposition for hyperbolic maps,
//! shift-plus-compact structure for parabolic maps, the elliptic field of
//! circle fibers, and the rational q×q model.
//!
//! Truncation is zero-fill: the shift drops basis vectors at the edges
//! rather than wrapping, matching compression of a fixed bilateral
//! operator.  Structural identities therefore hold exactly on interior
//! indices and all checks quantify over those.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::crossed::CrossedElement;
use crate::dynamics::{canonical_hyperbolic_a, orbit};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::moebius::{ClassTag, DiskAutomorphism};

/// Largest allowed half-width for truncations (dense linear algebra scale).
pub const MAX_HALF_WIDTH: usize = 512;

/// Which irreducible representation a truncation models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepKind {
    /// Orbit representation of a hyperbolic map based at `x`.
    HyperbolicOrbit {
        #[serde(with = "crate::cx::pair")]
        x: Complex64,
    },
    /// Orbit representation of a parabolic map based at `x`.
    ParabolicOrbit {
        #[serde(with = "crate::cx::pair")]
        x: Complex64,
    },
    /// Orbit representation of an elliptic map; the orbit fills (part of) an
    /// invariant circle through `x`.
    EllipticCircle {
        #[serde(with = "crate::cx::pair")]
        x: Complex64,
    },
    /// One-dimensional character: `f Uⁿ ↦ f(a_value)·e^{2iπ·u_phase·n}`;
    /// `a_value` must be a fixed point of the map.
    Character {
        u_phase: f64,
        #[serde(with = "crate::cx::pair")]
        a_value: Complex64,
    },
    /// q×q model for an exact rotation by p/q: `U ↦ η·(cyclic shift)`,
    /// coefficients evaluated on the cycle `λ·ω^k`, `ω = e^{2iπp/q}`.
    EllipticRational {
        p: i64,
        q: u64,
        #[serde(with = "crate::cx::pair")]
        eta: Complex64,
        #[serde(with = "crate::cx::pair")]
        lambda: Complex64,
    },
}

#[derive(Serialize, Deserialize)]
struct RepWire {
    phi: DiskAutomorphism,
    kind: RepKind,
    half_width: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// A finite truncation of a representation: the map, the representation
/// kind, the half-width `N` (orbit truncations act on indices `-N..=N`),
/// and the dense matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RepWire", into = "RepWire")]
pub struct TruncatedRep {
    phi: DiskAutomorphism,
    kind: RepKind,
    half_width: usize,
    matrix: DMatrix<Complex64>,
}

impl From<TruncatedRep> for RepWire {
    fn from(r: TruncatedRep) -> Self {
        let matrix = (0..r.matrix.nrows())
            .map(|i| {
                (0..r.matrix.ncols())
                    .map(|j| [r.matrix[(i, j)].re, r.matrix[(i, j)].im])
                    .collect()
            })
            .collect();
        RepWire {
            phi: r.phi,
            kind: r.kind,
            half_width: r.half_width,
            matrix,
        }
    }
}

impl TryFrom<RepWire> for TruncatedRep {
    type Error = String;

    fn try_from(w: RepWire) -> std::result::Result<Self, String> {
        let rows = w.matrix.len();
        let cols = w.matrix.first().map_or(0, |r| r.len());
        if w.matrix.iter().any(|r| r.len() != cols) {
            return Err("ragged matrix rows".into());
        }
        let matrix = DMatrix::from_fn(rows, cols, |i, j| {
            Complex64::new(w.matrix[i][j][0], w.matrix[i][j][1])
        });
        Ok(TruncatedRep {
            phi: w.phi,
            kind: w.kind,
            half_width: w.half_width,
            matrix,
        })
    }
}

impl TruncatedRep {
    pub fn phi(&self) -> &DiskAutomorphism {
        &self.phi
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// CSV of the nonzero entries, `row,col,re,im` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for i in 0..self.matrix.nrows() {
            for j in 0..self.matrix.ncols() {
                let v = self.matrix[(i, j)];
                if v.norm() != 0.0 {
                    out.push_str(&format!("{i},{j},{},{}\n", v.re, v.im));
                }
            }
        }
        out
    }
}

/// Operator 2-norm (largest singular value).
///
/// Small matrices go through the Hermitian eigendecomposition of `M*M`;
/// larger ones use a deterministic power iteration on the same Gram
/// operator, which is accurate far beyond the tolerances used anywhere in
/// the test surface.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.nrows().min(m.ncols()) <= 256 {
        let gram = m.adjoint() * m;
        let eig = gram.symmetric_eigen();
        return eig
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l))
            .max(0.0)
            .sqrt();
    }
    let n = m.ncols();
    let mut v = nalgebra::DVector::from_fn(n, |k, _| {
        Complex64::new(1.0 + (k % 7) as f64, 0.2 * (k % 3) as f64)
    });
    let scale = v.norm();
    v /= Complex64::new(scale, 0.0);
    let mut sigma = 0.0f64;
    for it in 0..2000 {
        let w = m * &v;
        let next_sigma = w.norm();
        if next_sigma < 1e-300 {
            return 0.0;
        }
        let back = m.adjoint() * w;
        let bn = back.norm();
        if bn < 1e-300 {
            return next_sigma;
        }
        v = back / Complex64::new(bn, 0.0);
        if it % 10 == 9 && (next_sigma - sigma).abs() <= 1e-13 * next_sigma.max(1.0) {
            return next_sigma;
        }
        sigma = next_sigma;
    }
    sigma
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

fn check_half_width(n: usize) -> Result<()> {
    if n > MAX_HALF_WIDTH {
        return Err(Error::Domain(format!(
            "half-width {n} exceeds the dense cap {MAX_HALF_WIDTH}"
        )));
    }
    Ok(())
}

/// Cyclic powers `ω⁰, ω¹, …, ω^{q-1}` built by repeated multiplication so
/// the covariance relation of the q×q model closes to rounding error.
fn omega_powers(p: i64, q: u64) -> Vec<Complex64> {
    let omega = Complex64::from_polar(
        1.0,
        std::f64::consts::TAU * p as f64 / q as f64,
    );
    let mut pw = Vec::with_capacity(q as usize);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..q {
        pw.push(acc);
        acc *= omega;
    }
    pw
}

/// Builds the truncated matrix of `a` in the given representation.
///
/// Orbit kinds produce a `(2N+1)`-square matrix over the orbit
/// `φ^{-N}(x)..φ^{N}(x)`: the term `f Uⁿ` contributes `f(φ^k(x))` at
/// logical entry `(k, k-n)`, entries falling off the edge are dropped.
/// Characters are 1×1 and `EllipticRational` is q×q regardless of `N`.
pub fn represent(
    a: &CrossedElement,
    phi: &DiskAutomorphism,
    kind: &RepKind,
    half_width: usize,
) -> Result<TruncatedRep> {
    check_half_width(half_width)?;
    let tag = phi.class();
    let matrix = match kind {
        RepKind::HyperbolicOrbit { x }
        | RepKind::ParabolicOrbit { x }
        | RepKind::EllipticCircle { x } => {
            let want = match kind {
                RepKind::HyperbolicOrbit { .. } => ClassTag::Hyperbolic,
                RepKind::ParabolicOrbit { .. } => ClassTag::Parabolic,
                _ => ClassTag::Elliptic,
            };
            if tag != want {
                return Err(Error::KindMismatch(format!(
                    "{want:?} orbit kind given a {tag:?} map"
                )));
            }
            let n = half_width as i64;
            let pts = orbit(phi, *x, -n, n)?;
            let size = 2 * half_width + 1;
            let mut m = DMatrix::zeros(size, size);
            for (&deg, f) in a.terms() {
                for r in 0..size {
                    let c = r as i64 - deg;
                    if c < 0 || c >= size as i64 {
                        continue;
                    }
                    m[(r, c as usize)] += f.eval(pts[r])?;
                }
            }
            m
        }
        RepKind::Character { u_phase, a_value } => {
            if (phi.eval(*a_value)? - a_value).norm() > 1e-9 {
                return Err(Error::KindMismatch(
                    "character point is not fixed by the map".into(),
                ));
            }
            let u = Complex64::from_polar(1.0, std::f64::consts::TAU * u_phase);
            let mut v = Complex64::new(0.0, 0.0);
            for (&deg, f) in a.terms() {
                v += f.eval(*a_value)? * unit_pow(u, deg);
            }
            DMatrix::from_element(1, 1, v)
        }
        RepKind::EllipticRational { p, q, eta, lambda } => {
            if *q == 0 {
                return Err(Error::Domain("zero denominator".into()));
            }
            if (eta.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "shift twist must be unimodular (|eta| = {})",
                    eta.norm()
                )));
            }
            if phi.z0().norm() != 0.0 {
                return Err(Error::RationalityRequired(
                    "q-by-q model needs an exact rational rotation".into(),
                ));
            }
            match phi.theta_rational() {
                None => {
                    return Err(Error::RationalityRequired(
                        "rotation parameter carries no exact fraction".into(),
                    ))
                }
                Some((pp, qq)) => {
                    let folded = (p.rem_euclid(*q as i64), *q);
                    if (pp, qq) != folded {
                        return Err(Error::KindMismatch(format!(
                            "kind fraction {}/{} disagrees with the map's {}/{}",
                            folded.0, folded.1, pp, qq
                        )));
                    }
                }
            }
            if lambda.norm() > 1.0 + 1e-12 {
                return Err(Error::Domain(format!(
                    "cycle radius {} exceeds the disk",
                    lambda.norm()
                )));
            }
            let qq = *q as usize;
            let pw = omega_powers(*p, *q);
            let pts: Vec<Complex64> = pw.iter().map(|w| lambda * w).collect();
            let mut m = DMatrix::zeros(qq, qq);
            for (&deg, f) in a.terms() {
                let twist = unit_pow(*eta, deg);
                for cidx in 0..qq {
                    let ridx = (cidx as i64 + deg).rem_euclid(qq as i64) as usize;
                    m[(ridx, cidx)] += f.eval(pts[ridx])? * twist;
                }
            }
            m
        }
    };
    Ok(TruncatedRep {
        phi: *phi,
        kind: *kind,
        half_width,
        matrix,
    })
}

/// Covariance defect of the truncated orbit model: the maximum over
/// interior indices `|k| <= N-1` of the diagonal difference between
/// `S̃* Diag(φ^k(x)) S̃` and `Diag(φ^{k+1}(x))`.  Zero-fill truncation
/// breaks the relation only at the edge, so this is rounding-level.
pub fn covariance_residual(phi: &DiskAutomorphism, x: Complex64, half_width: usize) -> Result<f64> {
    check_half_width(half_width)?;
    let n = half_width as i64;
    let pts = orbit(phi, x, -n, n)?;
    let mut worst = 0.0f64;
    // (S̃* D S̃)_kk = d_{k+1} for k < N; the target is φ(φ^k(x)).
    for k in 0..2 * half_width {
        let lhs = pts[k + 1];
        let rhs = phi.eval(pts[k])?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Exact-relation defect `‖U'* A' U' - ω A'‖_max` of the q×q model with
/// twisted shift `U'` and diagonal `A' = diag(λω^k)`.
pub fn rational_relation_residual(p: i64, q: u64, eta: Complex64, lambda: Complex64) -> Result<f64> {
    if q == 0 {
        return Err(Error::Domain("zero denominator".into()));
    }
    if (eta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "shift twist must be unimodular (|eta| = {})",
            eta.norm()
        )));
    }
    let qq = q as usize;
    let pw = omega_powers(p, q);
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * p as f64 / q as f64);
    let mut u = DMatrix::<Complex64>::zeros(qq, qq);
    for k in 0..qq {
        u[((k + 1) % qq, k)] = eta;
    }
    let a = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        qq,
        pw.iter().map(|w| lambda * w),
    ));
    let lhs = u.adjoint() * &a * &u;
    let rhs = a.map(|v| omega * v);
    let diff = lhs - rhs;
    Ok(diff.iter().fold(0.0f64, |acc, v| acc.max(v.norm())))
}

/// The pair of boundary symbols of a crossed-product element under a
/// canonical hyperbolic map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolPair {
    /// `Σ f_n(-1) Z^{-n}`: the symbol at the repelling end.
    pub minus: Laurent,
    /// `Σ f_n(+1) Zⁿ`: the symbol at the attracting end.
    pub plus: Laurent,
}

impl SymbolPair {
    pub fn mul(&self, rhs: &SymbolPair) -> SymbolPair {
        SymbolPair {
            minus: self.minus.mul(&rhs.minus),
            plus: self.plus.mul(&rhs.plus),
        }
    }

    pub fn adjoint(&self) -> SymbolPair {
        SymbolPair {
            minus: self.minus.adjoint(),
            plus: self.plus.adjoint(),
        }
    }
}

/// Boundary symbols of `a`: along any orbit the diagonal entries
/// `f_n(φ^k(x))` tend to `f_n(±1)`, so evaluation at the fixed points is
/// the symbol map.  Requires the canonical hyperbolic form.
pub fn symbol(a: &CrossedElement, phi: &DiskAutomorphism) -> Result<SymbolPair> {
    canonical_hyperbolic_a(phi)?;
    let mut minus = Laurent::zero();
    let mut plus = Laurent::zero();
    let m_one = Complex64::new(-1.0, 0.0);
    let p_one = Complex64::new(1.0, 0.0);
    for (&n, f) in a.terms() {
        minus = minus.add(&Laurent::monomial(-n, f.eval(m_one)?));
        plus = plus.add(&Laurent::monomial(n, f.eval(p_one)?));
    }
    Ok(SymbolPair { minus, plus })
}

/// Submatrix on the logical indices with `|k| > margin` and its norm.
fn tail_norm(matrix: &DMatrix<Complex64>, half_width: usize, margin: usize) -> f64 {
    let keep: Vec<usize> = (0..matrix.nrows())
        .filter(|&i| (i as i64 - half_width as i64).unsigned_abs() as usize > margin)
        .collect();
    if keep.is_empty() {
        return 0.0;
    }
    let sub = DMatrix::from_fn(keep.len(), keep.len(), |i, j| matrix[(keep[i], keep[j])]);
    operator_norm(&sub)
}

/// Toeplitz-block split of a hyperbolic orbit truncation: the two symbol
/// blocks plus the compact part.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    /// Toeplitz matrix of the minus symbol on logical indices `-N..=-1`.
    pub toeplitz_minus: DMatrix<Complex64>,
    /// Toeplitz matrix of the plus symbol on logical indices `0..=N`.
    pub toeplitz_plus: DMatrix<Complex64>,
    /// `matrix - (block assembly)`: the compact-approximable remainder.
    pub compact_residual: DMatrix<Complex64>,
    half_width: usize,
}

impl BlockDecomposition {
    /// Norm of the residual restricted to logical indices `|k| > margin`;
    /// decay in the margin is the finite-truncation reading of compactness.
    pub fn residual_tail_norm(&self, margin: usize) -> f64 {
        tail_norm(&self.compact_residual, self.half_width, margin)
    }

    /// Rebuilds the block assembly (zero off the two diagonal blocks).
    pub fn assembly(&self) -> DMatrix<Complex64> {
        let n = self.half_width;
        let size = 2 * n + 1;
        let mut m = DMatrix::zeros(size, size);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = self.toeplitz_minus[(r, c)];
            }
        }
        for r in 0..=n {
            for c in 0..=n {
                m[(n + r, n + c)] = self.toeplitz_plus[(r, c)];
            }
        }
        m
    }
}

/// Splits a hyperbolic orbit truncation of `a` into Toeplitz blocks built
/// from the boundary symbols and a residual.
pub fn block_decompose(rep: &TruncatedRep, a: &CrossedElement) -> Result<BlockDecomposition> {
    if !matches!(rep.kind, RepKind::HyperbolicOrbit { .. }) {
        return Err(Error::KindMismatch(
            "Toeplitz block split needs a hyperbolic orbit truncation".into(),
        ));
    }
    let sym = symbol(a, &rep.phi)?;
    let n = rep.half_width;
    // Entry (r, c) of either block models f_{r-c} at the fixed point.
    let toeplitz_minus =
        DMatrix::from_fn(n, n, |r, c| sym.minus.coefficient(c as i64 - r as i64));
    let toeplitz_plus =
        DMatrix::from_fn(n + 1, n + 1, |r, c| sym.plus.coefficient(r as i64 - c as i64));
    let mut compact_residual = rep.matrix.clone();
    for r in 0..n {
        for c in 0..n {
            compact_residual[(r, c)] -= toeplitz_minus[(r, c)];
        }
    }
    for r in 0..=n {
        for c in 0..=n {
            compact_residual[(n + r, n + c)] -= toeplitz_plus[(r, c)];
        }
    }
    Ok(BlockDecomposition {
        toeplitz_minus,
        toeplitz_plus,
        compact_residual,
        half_width: n,
    })
}

/// Shift-plus-compact split of a parabolic orbit truncation: the scalar
/// Laurent part read at the unique fixed point, and the residual.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicStructure {
    /// `Σ f_n(p) Zⁿ` at the fixed point `p` — the shift-algebra part.
    pub laurent: Laurent,
    /// `matrix - (bilateral Toeplitz assembly of the Laurent part)`.
    pub residual: DMatrix<Complex64>,
    half_width: usize,
}

impl ParabolicStructure {
    pub fn residual_tail_norm(&self, margin: usize) -> f64 {
        tail_norm(&self.residual, self.half_width, margin)
    }
}

/// Splits a parabolic orbit truncation of `a` into a bilateral Laurent
/// shift polynomial and a compact-approximable residual; both orbit tails
/// converge to the single fixed point so one symbol suffices.
pub fn parabolic_structure_residual(
    rep: &TruncatedRep,
    a: &CrossedElement,
) -> Result<ParabolicStructure> {
    if !matches!(rep.kind, RepKind::ParabolicOrbit { .. }) {
        return Err(Error::KindMismatch(
            "shift-plus-compact split needs a parabolic orbit truncation".into(),
        ));
    }
    let fp = rep.phi.fixed_points()?.points[0];
    let mut laurent = Laurent::zero();
    for (&n, f) in a.terms() {
        laurent = laurent.add(&Laurent::monomial(n, f.eval(fp)?));
    }
    let size = 2 * rep.half_width + 1;
    let mut residual = rep.matrix.clone();
    for r in 0..size {
        for c in 0..size {
            residual[(r, c)] -= laurent.coefficient(r as i64 - c as i64);
        }
    }
    Ok(ParabolicStructure {
        laurent,
        residual,
        half_width: rep.half_width,
    })
}

/// Field evaluation of a crossed-product element over the circle fibers of
/// a rotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipticFieldReport {
    /// The fiber image at radius 0: `Σ f_n(0) Zⁿ`, a scalar polynomial in
    /// the shift — no coordinate content survives at the center.
    pub scalar_part: Laurent,
    /// For each requested radius `t`: the largest deviation of any
    /// coefficient from its mean over 64 samples of the circle of radius
    /// `t` (0 exactly when every coefficient is constant on the fiber).
    pub fiber_v_content: Vec<(f64, f64)>,
    /// Defect of the rotation-algebra relation `V U = e^{2iπθ} U V` in the
    /// truncated model (q×q when the rotation is exactly rational).
    pub relation_residual: f64,
}

/// Evaluates the circle-fiber field of `a` over a rotation and checks the
/// rotation-algebra relation in the matching finite model.
pub fn elliptic_field_check(
    a: &CrossedElement,
    phi: &DiskAutomorphism,
    radii: &[f64],
    half_width: usize,
) -> Result<EllipticFieldReport> {
    check_half_width(half_width)?;
    match phi.class() {
        ClassTag::Elliptic | ClassTag::Identity => {}
        tag => return Err(Error::Class(tag)),
    }
    if phi.z0().norm() != 0.0 {
        return Err(Error::Numerical(
            "field evaluation needs a pure rotation".into(),
        ));
    }

    let mut scalar_part = Laurent::zero();
    let zero = Complex64::new(0.0, 0.0);
    for (&n, f) in a.terms() {
        scalar_part = scalar_part.add(&Laurent::monomial(n, f.eval(zero)?));
    }

    let mut fiber_v_content = Vec::with_capacity(radii.len());
    for &t in radii {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("fiber radius {t} outside [0, 1]")));
        }
        let mut content = 0.0f64;
        for f in a.terms().values() {
            let samples: Vec<Complex64> = (0..64)
                .map(|j| {
                    let z = Complex64::from_polar(t, std::f64::consts::TAU * j as f64 / 64.0);
                    f.eval(z)
                })
                .collect::<Result<_>>()?;
            let mean = samples.iter().sum::<Complex64>() / 64.0;
            for s in &samples {
                content = content.max((s - mean).norm());
            }
        }
        fiber_v_content.push((t, content));
    }

    let relation_residual = match phi.theta_rational() {
        Some((p, q)) => {
            // Exact q×q model: U' the cyclic shift, V = diag(ω^k).
            let qq = q as usize;
            let pw = omega_powers(p, q);
            let omega =
                Complex64::from_polar(1.0, std::f64::consts::TAU * p as f64 / q as f64);
            let mut u = DMatrix::<Complex64>::zeros(qq, qq);
            for k in 0..qq {
                u[((k + 1) % qq, k)] = Complex64::new(1.0, 0.0);
            }
            let v = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                qq,
                pw.iter().copied(),
            ));
            let diff = &v * &u - (&u * &v).map(|z| omega * z);
            diff.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
        }
        None => {
            // Truncated bilateral model: U the zero-fill shift, V the
            // diagonal of fiber angles e^{2iπkθ}.
            let size = 2 * half_width + 1;
            let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * phi.theta());
            let mut diag = Vec::with_capacity(size);
            let mut acc = unit_pow(omega, -(half_width as i64));
            for _ in 0..size {
                diag.push(acc);
                acc *= omega;
            }
            let mut worst = 0.0f64;
            // (VU) e_k = v_{k+1} e_{k+1}, (UV) e_k = v_k e_{k+1}.
            for k in 0..size - 1 {
                worst = worst.max((diag[k + 1] - omega * diag[k]).norm());
            }
            worst
        }
    };

    Ok(EllipticFieldReport {
        scalar_part,
        fiber_v_content,
        relation_residual,
    })
}

/// Truncated operator norms of `a` at increasing half-widths.
pub fn truncated_norm(
    a: &CrossedElement,
    phi: &DiskAutomorphism,
    kind: &RepKind,
    half_widths: &[usize],
) -> Result<Vec<f64>> {
    half_widths
        .iter()
        .map(|&n| Ok(operator_norm(&represent(a, phi, kind, n)?.matrix)))
        .collect()
}

/// Eigenvalues of a diagonal truncation (the orbit samples); errors if the
/// matrix has off-diagonal content.
pub fn truncated_spectrum(rep: &TruncatedRep) -> Result<Vec<Complex64>> {
    let m = &rep.matrix;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if r != c && m[(r, c)].norm() > 1e-12 {
                return Err(Error::KindMismatch(format!(
                    "matrix is not diagonal (entry ({r},{c}) = {})",
                    m[(r, c)]
                )));
            }
        }
    }
    Ok((0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).collect())
}
