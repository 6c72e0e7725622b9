//! Constructors for the standard instance families.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::AlgebraData;
use crate::bundle::{BundleError, TwistedBundle};
use crate::group::FiniteGroup;
use crate::linalg::{Field, Matrix, Scalar};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("the permutation data is not a group action: {0}")]
    InvalidAction(String),
    #[error("volume vanishes at point {0}")]
    ZeroVolume(usize),
    #[error("volume is not constant on orbits: points {0} and {1} differ")]
    NonInvariantVolume(usize, usize),
    #[error("beta({g},{h}) vanishes at point {point}")]
    NonInvertibleBeta { g: usize, h: usize, point: usize },
    #[error("beta violates the cocycle identities at elements {0:?}")]
    CocycleViolation(Vec<usize>),
    #[error("projective matrix for element {0} is singular")]
    SingularProjectiveMatrix(usize),
    #[error("characteristic {0} is not allowed for this family")]
    BadCharacteristic(u64),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("builder output failed validation")]
    Validation(Box<Report>),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

/// `K[H]` with `θ = δ_e`, `H` acting on itself by conjugation, trivial cocycle.
pub fn group_algebra_bundle(h: &FiniteGroup, field: Field) -> TwistedBundle {
    let n = h.order();
    let e = h.identity();
    let mut entries = Vec::with_capacity(n * n);
    for a in h.elements() {
        for b in h.elements() {
            entries.push((a, b, h.mul(a, b), field.one()));
        }
    }
    let unit = crate::linalg::unit_vec(field, n, e);
    let algebra = AlgebraData::from_sparse(field, n, &entries, unit.clone(), unit.clone())
        .expect("indices are group elements");
    let rho = h
        .elements()
        .map(|g| permutation_matrix(field, n, |x| h.conj(g, x)))
        .collect();
    let cocycle = vec![vec![unit.clone(); n]; n];
    TwistedBundle::new(algebra, h.clone(), rho, cocycle, unit).expect("shapes agree by construction")
}

/// The one-dimensional algebra `K` with `θ(1) = t` over the trivial group.
pub fn scalar_bundle(field: Field, t: Scalar) -> TwistedBundle {
    let algebra = AlgebraData::new(field, 1, vec![field.one()], vec![field.one()], vec![t])
        .expect("dimension one");
    TwistedBundle::new(
        algebra,
        FiniteGroup::trivial(),
        vec![Matrix::identity(field, 1)],
        vec![vec![vec![field.one()]]],
        vec![field.one()],
    )
    .expect("dimension one")
}

/// Functions on a finite `G`-set `X` with pointwise product.
///
/// `action[g][x]` is `g·x`; `ρ(g)δ_x = δ_{g·x}`; `θ(f) = Σ volume(x) f(x)`;
/// `c_{g,h} = beta[g][h]` and `c_e = beta[e][e]`, each a function on `X`.
pub fn function_algebra_bundle(
    group: &FiniteGroup,
    field: Field,
    action: &[Vec<usize>],
    volume: Vec<Scalar>,
    beta: Vec<Vec<Vec<Scalar>>>,
) -> Result<TwistedBundle, BuilderError> {
    let n = volume.len();
    let order = group.order();
    if action.len() != order || action.iter().any(|row| row.len() != n || row.iter().any(|&y| y >= n)) {
        return Err(BuilderError::InvalidAction(format!("expected {order} maps on {n} points")));
    }
    let e = group.identity();
    if (0..n).any(|x| action[e][x] != x) {
        return Err(BuilderError::InvalidAction("identity does not act trivially".into()));
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            if let Some(x) = (0..n).find(|&x| action[gh][x] != action[g][action[h][x]]) {
                return Err(BuilderError::InvalidAction(format!("({g}{h})·{x} != {g}·({h}·{x})")));
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| volume[x].is_zero()) {
        return Err(BuilderError::ZeroVolume(x));
    }
    for g in group.elements() {
        for x in 0..n {
            let y = action[g][x];
            if volume[x] != volume[y] {
                return Err(BuilderError::NonInvariantVolume(x, y));
            }
        }
    }
    if beta.len() != order || beta.iter().any(|row| row.len() != order || row.iter().any(|f| f.len() != n)) {
        return Err(BuilderError::BadParameter(format!("beta must be {order} x {order} functions on {n} points")));
    }
    for (g, row) in beta.iter().enumerate() {
        for (h, f) in row.iter().enumerate() {
            if let Some(point) = f.iter().position(Scalar::is_zero) {
                return Err(BuilderError::NonInvertibleBeta { g, h, point });
            }
        }
    }

    let entries: Vec<_> = (0..n).map(|x| (x, x, x, field.one())).collect();
    let unit = vec![field.one(); n];
    let algebra = AlgebraData::from_sparse(field, n, &entries, unit, volume)
        .map_err(|e| BuilderError::BadParameter(e.to_string()))?;
    let rho = group.elements().map(|g| permutation_matrix(field, n, |x| action[g][x])).collect();
    let c_e = beta[e][e].clone();
    let bundle = TwistedBundle::new(algebra, group.clone(), rho, beta, c_e)?;
    let cocycle = bundle.verify_cocycle();
    if let Some(bad) = cocycle.failures().next() {
        let elements = bad.witness.as_ref().map(|w| w.elements.clone()).unwrap_or_default();
        return Err(BuilderError::CocycleViolation(elements));
    }
    finish(bundle)
}

/// `Z/2` swapping two points of equal volume, trivial B-field.
pub fn swap_bundle(field: Field) -> TwistedBundle {
    let z2 = FiniteGroup::cyclic(2);
    let ones = vec![field.one(); 2];
    function_algebra_bundle(&z2, field, &[vec![0, 1], vec![1, 0]], ones.clone(), vec![vec![ones; 2]; 2])
        .expect("swap instance is valid")
}

/// `Z/2 × Z/2` on a point with B-field `(-1)^{g₂h₁}` when `twisted`, else trivial.
///
/// Elements are indexed `g₁ + 2g₂` as in [`FiniteGroup::klein`].
pub fn discrete_torsion_bundle(field: Field, twisted: bool) -> TwistedBundle {
    let klein = FiniteGroup::klein();
    let beta = (0..4)
        .map(|g| {
            (0..4)
                .map(|h| {
                    let sign = twisted && (g / 2) * (h % 2) == 1;
                    vec![if sign { field.from_i64(-1) } else { field.one() }]
                })
                .collect()
        })
        .collect();
    function_algebra_bundle(&klein, field, &vec![vec![0]; 4], vec![field.one()], beta)
        .expect("discrete torsion is a cocycle")
}

/// `M_k(K)` with `θ = trace`, `ρ(g) = Ad P(g)`, `c_{g,h} = P(g)P(h)P(gh)⁻¹`, `c_e = P(e)`.
///
/// The matrix unit `E_ij` has basis index `i * k + j`.
pub fn matrix_projective_bundle(group: &FiniteGroup, field: Field, p: &[Matrix]) -> Result<TwistedBundle, BuilderError> {
    if p.len() != group.order() {
        return Err(BuilderError::BadParameter(format!("expected {} matrices, found {}", group.order(), p.len())));
    }
    let k = p.first().map(Matrix::rows).unwrap_or(0);
    if k == 0 || p.iter().any(|m| m.rows() != k || m.cols() != k || m.field() != field) {
        return Err(BuilderError::BadParameter("projective matrices must be square of one common size".into()));
    }
    let mut inverses = Vec::with_capacity(p.len());
    for (g, m) in p.iter().enumerate() {
        inverses.push(m.invert().map_err(|_| BuilderError::SingularProjectiveMatrix(g))?);
    }
    let n = k * k;
    let vec_of = |m: &Matrix| m.entries().to_vec();
    let mut entries = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                entries.push((i * k + j, j * k + l, i * k + l, field.one()));
            }
        }
    }
    let unit = vec_of(&Matrix::identity(field, k));
    let trace = unit.clone();
    let algebra = AlgebraData::from_sparse(field, n, &entries, unit, trace).expect("indices below k²");
    let rho = group
        .elements()
        .map(|g| {
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|c| {
                    let mut eij = Matrix::zeros(field, k, k);
                    eij.set(c / k, c % k, field.one());
                    vec_of(&p[g].mul(&eij).mul(&inverses[g]))
                })
                .collect();
            Matrix::from_columns(field, n, &cols).expect("k² columns of length k²")
        })
        .collect();
    let cocycle = group
        .elements()
        .map(|g| {
            group
                .elements()
                .map(|h| vec_of(&p[g].mul(&p[h]).mul(&inverses[group.mul(g, h)])))
                .collect()
        })
        .collect();
    let c_e = vec_of(&p[group.identity()]);
    finish(TwistedBundle::new(algebra, group.clone(), rho, cocycle, c_e)?)
}

/// The Pauli projective representation of `Z/2 × Z/2` on `K²`, for which `c_{b,a} = -1`.
pub fn pauli_matrices(field: Field) -> Vec<Matrix> {
    let m = |x: [i64; 4]| Matrix::from_fn(field, 2, 2, |i, j| field.from_i64(x[i * 2 + j]));
    let a = m([0, 1, 1, 0]);
    let b = m([1, 0, 0, -1]);
    let ab = a.mul(&b);
    vec![Matrix::identity(field, 2), a, b, ab]
}

pub fn pauli_bundle(field: Field) -> Result<TwistedBundle, BuilderError> {
    matrix_projective_bundle(&FiniteGroup::klein(), field, &pauli_matrices(field))
}

/// `K[x]/(x³)` with `θ` the coefficient of `x²`, `Z/2` acting by `x ↦ -x` or trivially.
pub fn truncated_polynomial_bundle(sign_action: bool, field: Field) -> Result<TwistedBundle, BuilderError> {
    if sign_action && field.characteristic() == 2 {
        return Err(BuilderError::BadCharacteristic(2));
    }
    let one = field.one();
    let entries: Vec<_> = (0..3usize)
        .flat_map(|i| (0..3usize).filter(move |j| i + j < 3).map(move |j| (i, j, i + j)))
        .map(|(i, j, k)| (i, j, k, one.clone()))
        .collect();
    let algebra = AlgebraData::from_sparse(
        field,
        3,
        &entries,
        vec![field.one(), field.zero(), field.zero()],
        vec![field.zero(), field.zero(), field.one()],
    )
    .expect("indices below 3");
    let mut s = Matrix::identity(field, 3);
    if sign_action {
        s.set(1, 1, field.from_i64(-1));
    }
    let unit = algebra.unit().to_vec();
    let bundle = TwistedBundle::new(
        algebra,
        FiniteGroup::cyclic(2),
        vec![Matrix::identity(field, 3), s],
        vec![vec![unit.clone(); 2]; 2],
        unit,
    )?;
    finish(bundle)
}

fn finish(bundle: TwistedBundle) -> Result<TwistedBundle, BuilderError> {
    let report = bundle.validate();
    if report.passed() {
        Ok(bundle)
    } else {
        Err(BuilderError::Validation(Box::new(report)))
    }
}

fn permutation_matrix(field: Field, n: usize, image: impl Fn(usize) -> usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for x in 0..n {
        m.set(image(x), x, field.one());
    }
    m
}

/// A group named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Klein,
}

impl GroupSpec {
    pub fn build(self) -> FiniteGroup {
        match self {
            GroupSpec::Trivial => FiniteGroup::trivial(),
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(n),
            GroupSpec::Symmetric(n) => FiniteGroup::symmetric(n),
            GroupSpec::Klein => FiniteGroup::klein(),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = BuilderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BuilderError::BadParameter(format!("unknown group {s:?}; use trivial, klein, cyclic:<n> or symmetric:<n>"));
        match s {
            "trivial" => return Ok(GroupSpec::Trivial),
            "klein" => return Ok(GroupSpec::Klein),
            _ => {}
        }
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "cyclic" if (1..=64).contains(&n) => Ok(GroupSpec::Cyclic(n)),
            "symmetric" if (1..=5).contains(&n) => Ok(GroupSpec::Symmetric(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Klein => write!(f, "klein"),
        }
    }
}

/// A builder family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuilderSpec {
    GroupAlgebra(GroupSpec),
    /// `Z/2` swapping two points.
    FunctionSwap,
    /// `Z/2 × Z/2` on a point, with or without discrete torsion.
    FunctionKlein { twisted: bool },
    MatrixPauli,
    TruncatedPolynomial { sign_action: bool },
}

impl BuilderSpec {
    pub fn build(&self, field: Field) -> Result<TwistedBundle, BuilderError> {
        match self {
            BuilderSpec::GroupAlgebra(g) => Ok(group_algebra_bundle(&g.build(), field)),
            BuilderSpec::FunctionSwap => Ok(swap_bundle(field)),
            BuilderSpec::FunctionKlein { twisted } => Ok(discrete_torsion_bundle(field, *twisted)),
            BuilderSpec::MatrixPauli => pauli_bundle(field),
            BuilderSpec::TruncatedPolynomial { sign_action } => truncated_polynomial_bundle(*sign_action, field),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BuilderSpec::GroupAlgebra(g) => format!("group-algebra {g}"),
            BuilderSpec::FunctionSwap => "function-algebra swap".into(),
            BuilderSpec::FunctionKlein { twisted: false } => "function-algebra klein".into(),
            BuilderSpec::FunctionKlein { twisted: true } => "function-algebra klein-torsion".into(),
            BuilderSpec::MatrixPauli => "matrix-projective pauli".into(),
            BuilderSpec::TruncatedPolynomial { sign_action: true } => "truncated-polynomial sign".into(),
            BuilderSpec::TruncatedPolynomial { sign_action: false } => "truncated-polynomial trivial".into(),
        }
    }
}

/// The instances shipped as golden files, keyed by file stem.
pub fn shipped_instances() -> Vec<(&'static str, BuilderSpec)> {
    vec![
        ("trivial", BuilderSpec::GroupAlgebra(GroupSpec::Trivial)),
        ("group-algebra-z2", BuilderSpec::GroupAlgebra(GroupSpec::Cyclic(2))),
        ("group-algebra-z3", BuilderSpec::GroupAlgebra(GroupSpec::Cyclic(3))),
        ("group-algebra-s3", BuilderSpec::GroupAlgebra(GroupSpec::Symmetric(3))),
        ("function-swap", BuilderSpec::FunctionSwap),
        ("function-klein", BuilderSpec::FunctionKlein { twisted: false }),
        ("function-klein-torsion", BuilderSpec::FunctionKlein { twisted: true }),
        ("matrix-pauli", BuilderSpec::MatrixPauli),
        ("truncated-sign", BuilderSpec::TruncatedPolynomial { sign_action: true }),
        ("truncated-trivial", BuilderSpec::TruncatedPolynomial { sign_action: false }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn group_algebras_validate() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)] {
            let b = group_algebra_bundle(&g, Q);
            assert!(b.validate().passed(), "{}", b.validate());
        }
        assert_eq!(group_algebra_bundle(&FiniteGroup::trivial(), Q).dim(), 1);
    }

    #[test]
    fn pauli_cocycle_is_minus_one_at_b_a() {
        let b = pauli_bundle(Q).unwrap();
        let minus_id = vec![Q.from_i64(-1), Q.zero(), Q.zero(), Q.from_i64(-1)];
        assert_eq!(b.cocycle(2, 1), minus_id.as_slice());
        assert_eq!(b.cocycle(1, 2), b.algebra().unit());
    }

    #[test]
    fn singular_projective_matrix() {
        let mut p = pauli_matrices(Q);
        p[2] = Matrix::from_fn(Q, 2, 2, |i, _| if i == 0 { Q.one() } else { Q.zero() });
        assert_eq!(
            matrix_projective_bundle(&FiniteGroup::klein(), Q, &p).unwrap_err(),
            BuilderError::SingularProjectiveMatrix(2)
        );
    }

    #[test]
    fn truncated_polynomial_characteristic() {
        let gf2 = Field::prime(2).unwrap();
        assert_eq!(truncated_polynomial_bundle(true, gf2).unwrap_err(), BuilderError::BadCharacteristic(2));
        assert!(truncated_polynomial_bundle(false, gf2).is_ok());
        let b = truncated_polynomial_bundle(true, Q).unwrap();
        assert_eq!(b.apply(1, &[Q.zero(), Q.one(), Q.zero()]), vec![Q.zero(), Q.from_i64(-1), Q.zero()]);
    }

    #[test]
    fn function_algebra_errors() {
        let z2 = FiniteGroup::cyclic(2);
        let ones = vec![Q.one(); 2];
        let swap = [vec![0, 1], vec![1, 0]];
        let trivial_beta = vec![vec![ones.clone(); 2]; 2];
        assert_eq!(
            function_algebra_bundle(&z2, Q, &swap, vec![Q.one(), Q.from_i64(2)], trivial_beta.clone()).unwrap_err(),
            BuilderError::NonInvariantVolume(0, 1)
        );
        let mut zero_beta = trivial_beta.clone();
        zero_beta[1][1] = vec![Q.one(), Q.zero()];
        assert!(matches!(
            function_algebra_bundle(&z2, Q, &swap, ones.clone(), zero_beta),
            Err(BuilderError::NonInvertibleBeta { g: 1, h: 1, point: 1 })
        ));
        let mut bad_beta = trivial_beta;
        bad_beta[1][1] = vec![Q.from_i64(2), Q.from_i64(3)];
        assert!(matches!(
            function_algebra_bundle(&z2, Q, &swap, ones, bad_beta),
            Err(BuilderError::CocycleViolation(_))
        ));
    }

    #[test]
    fn point_with_trivial_beta_is_ground_field() {
        let b = function_algebra_bundle(&FiniteGroup::trivial(), Q, &[vec![0]], vec![Q.one()], vec![vec![vec![Q.one()]]])
            .unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.algebra().trace_vector(), &[Q.one()]);
    }

    #[test]
    fn discrete_torsion_values() {
        let b = discrete_torsion_bundle(Q, true);
        // g₂h₁ = 1 exactly when g ∈ {b, ab} and h ∈ {a, ab}
        for g in 0..4 {
            for h in 0..4 {
                let expect = if (g == 2 || g == 3) && (h == 1 || h == 3) { -1 } else { 1 };
                assert_eq!(b.cocycle(g, h), &[Q.from_i64(expect)]);
            }
        }
    }

    #[test]
    fn group_spec_parsing() {
        assert_eq!("cyclic:3".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(3));
        assert_eq!("symmetric:3".parse::<GroupSpec>().unwrap().build().order(), 6);
        assert!("symmetric:9".parse::<GroupSpec>().is_err());
        assert!("dihedral:4".parse::<GroupSpec>().is_err());
        assert_eq!(GroupSpec::Klein.to_string(), "klein");
    }

    #[test]
    fn shipped_instances_build_over_both_fields() {
        let gf = Field::prime(101).unwrap();
        for (_, spec) in shipped_instances() {
            spec.build(Q).unwrap();
            spec.build(gf).unwrap();
        }
    }
}
