//! A Frobenius algebra with a categorical (twisted) action of a finite group.
//!
//! The action is `ρ(g)` together with invertible elements `c_{g,h}` and `c_e`
//! subject to `ρ(g)ρ(h) = Ad(c_{g,h})ρ(gh)` and `ρ(e) = Ad(c_e)`, where
//! `Ad(c)` is `x ↦ c x c⁻¹`.

use thiserror::Error;

use crate::algebra::{AlgebraData, AlgebraError, Copairing};
use crate::group::FiniteGroup;
use crate::linalg::{Field, Matrix, Scalar};
use crate::report::{CheckBuilder, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("expected {expected} {what}, found {found}")]
    Shape { what: &'static str, expected: usize, found: usize },
    #[error("field mismatch between algebra ({0}) and action data")]
    FieldMismatch(Field),
    #[error("{what} is not invertible")]
    NotInvertible { what: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedBundle {
    algebra: AlgebraData,
    group: FiniteGroup,
    rho: Vec<Matrix>,
    cocycle: Vec<Vec<Scalar>>,
    c_e: Vec<Scalar>,
}

/// Inverses of the twisting elements, needed by every downstream construction.
#[derive(Clone, Debug)]
pub struct TwistInverses {
    pub c_e_inv: Vec<Scalar>,
    /// Index `g * |G| + h`.
    pub cocycle_inv: Vec<Vec<Scalar>>,
}

impl TwistedBundle {
    /// Assembles a bundle, checking shapes only. `cocycle[g][h]` is `c_{g,h}`.
    pub fn new(
        algebra: AlgebraData,
        group: FiniteGroup,
        rho: Vec<Matrix>,
        cocycle: Vec<Vec<Vec<Scalar>>>,
        c_e: Vec<Scalar>,
    ) -> Result<Self, BundleError> {
        let n = algebra.dim();
        let order = group.order();
        let shape = |what, expected, found| {
            if expected == found { Ok(()) } else { Err(BundleError::Shape { what, expected, found }) }
        };
        shape("rho matrices", order, rho.len())?;
        for m in &rho {
            shape("rho rows", n, m.rows())?;
            shape("rho columns", n, m.cols())?;
            if m.field() != algebra.field() {
                return Err(BundleError::FieldMismatch(algebra.field()));
            }
        }
        shape("cocycle rows", order, cocycle.len())?;
        let mut flat = Vec::with_capacity(order * order);
        for row in cocycle {
            shape("cocycle entries per row", order, row.len())?;
            for c in row {
                shape("cocycle element coordinates", n, c.len())?;
                flat.push(c);
            }
        }
        shape("c_e coordinates", n, c_e.len())?;
        let fields_ok = flat.iter().flatten().chain(c_e.iter()).all(|s| s.field() == algebra.field());
        if !fields_ok {
            return Err(BundleError::FieldMismatch(algebra.field()));
        }
        Ok(TwistedBundle { algebra, group, rho, cocycle: flat, c_e })
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn rho(&self, g: usize) -> &Matrix {
        &self.rho[g]
    }

    /// `c_{g,h}`.
    pub fn cocycle(&self, g: usize, h: usize) -> &[Scalar] {
        &self.cocycle[g * self.group.order() + h]
    }

    pub fn c_e(&self) -> &[Scalar] {
        &self.c_e
    }

    /// `g(c) = ρ(g) c`.
    pub fn apply(&self, g: usize, c: &[Scalar]) -> Vec<Scalar> {
        self.rho[g].mul_vec(c)
    }

    /// Copy with one rho matrix replaced; used to build negative test inputs.
    pub fn with_rho(&self, g: usize, m: Matrix) -> Self {
        let mut out = self.clone();
        out.rho[g] = m;
        out
    }

    /// Copy with `c_{g,h}` replaced.
    pub fn with_cocycle(&self, g: usize, h: usize, c: Vec<Scalar>) -> Self {
        let mut out = self.clone();
        let idx = g * self.group.order() + h;
        out.cocycle[idx] = c;
        out
    }

    /// Copy with the algebra replaced (same dimension and field).
    pub fn with_algebra(&self, algebra: AlgebraData) -> Self {
        assert_eq!(algebra.dim(), self.dim(), "replacement algebra has a different dimension");
        let mut out = self.clone();
        out.algebra = algebra;
        out
    }

    pub fn twist_inverses(&self) -> Result<TwistInverses, BundleError> {
        let a = &self.algebra;
        let c_e_inv = a
            .element_inverse(&self.c_e)
            .map_err(|_| BundleError::NotInvertible { what: "c_e".into() })?;
        let order = self.group.order();
        let mut cocycle_inv = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                let inv = a.element_inverse(self.cocycle(g, h)).map_err(|_| BundleError::NotInvertible {
                    what: format!("c_({g},{h})"),
                })?;
                cocycle_inv.push(inv);
            }
        }
        Ok(TwistInverses { c_e_inv, cocycle_inv })
    }

    /// Matrix of `Ad(c)` given `c` and `c⁻¹`.
    pub fn ad_matrix(&self, c: &[Scalar], c_inv: &[Scalar]) -> Matrix {
        self.algebra.left_mul_matrix(c).mul(&self.algebra.right_mul_matrix(c_inv))
    }

    /// Each `ρ(g)` is invertible, multiplicative on basis pairs, and fixes the unit.
    pub fn verify_automorphisms(&self) -> Report {
        let a = &self.algebra;
        let n = a.dim();
        let mut report = Report::new("automorphisms");
        let mut inv = CheckBuilder::new("action.rho_invertible");
        let mut mult = CheckBuilder::new("action.rho_multiplicative");
        let mut unit = CheckBuilder::new("action.rho_unital");
        for g in self.group.elements() {
            let r = &self.rho[g];
            inv.case(r.invert().is_ok(), || Witness::new(&[g], &[]));
            let images: Vec<Vec<Scalar>> = (0..n).map(|i| r.column(i)).collect();
            'pairs: for i in 0..n {
                for j in 0..n {
                    let lhs = r.mul_vec(a.basis_product(i, j));
                    let rhs = a.mul(&images[i], &images[j]);
                    if !mult.case(lhs == rhs, || Witness::new(&[g], &[i, j]).sides(&lhs, &rhs)) {
                        break 'pairs;
                    }
                }
            }
            let u = r.mul_vec(a.unit());
            unit.case(u == a.unit(), || Witness::new(&[g], &[]).sides(&u, a.unit()));
        }
        report.push(inv.finish());
        report.push(mult.finish());
        report.push(unit.finish());
        report
    }

    /// `ρ(g)ρ(h) = Ad(c_{g,h})ρ(gh)` and `ρ(e) = Ad(c_e)`, column by column.
    pub fn verify_composition(&self) -> Report {
        let mut report = Report::new("composition");
        let mut comp = CheckBuilder::new("action.composition");
        let mut ident = CheckBuilder::new("action.identity_is_inner");
        let inverses = self.twist_inverses();
        match &inverses {
            Err(e) => {
                comp.fail(format!("cannot form Ad: {e}"), None);
                ident.fail(format!("cannot form Ad: {e}"), None);
            }
            Ok(inv) => {
                let order = self.group.order();
                'outer: for g in 0..order {
                    for h in 0..order {
                        let gh = self.group.mul(g, h);
                        let lhs = self.rho[g].mul(&self.rho[h]);
                        let ad = self.ad_matrix(self.cocycle(g, h), &inv.cocycle_inv[g * order + h]);
                        let rhs = ad.mul(&self.rho[gh]);
                        if let Some(col) = first_mismatch(&lhs, &rhs) {
                            comp.case(false, || {
                                Witness::new(&[g, h], &[col]).sides(&lhs.column(col), &rhs.column(col))
                            });
                            break 'outer;
                        }
                        comp.case(true, Witness::default);
                    }
                }
                let e = self.group.identity();
                let ad = self.ad_matrix(&self.c_e, &inv.c_e_inv);
                let lhs = &self.rho[e];
                match first_mismatch(lhs, &ad) {
                    Some(col) => {
                        ident.case(false, || Witness::new(&[e], &[col]).sides(&lhs.column(col), &ad.column(col)));
                    }
                    None => {
                        ident.case(true, Witness::default);
                    }
                }
            }
        }
        report.push(comp.finish());
        report.push(ident.finish());
        report
    }

    /// `c_{g,h} c_{gh,k} = g(c_{h,k}) c_{g,hk}`, `c_{g,e} = g(c_e)`, `c_{e,g} = c_e`.
    pub fn verify_cocycle(&self) -> Report {
        let a = &self.algebra;
        let grp = &self.group;
        let e = grp.identity();
        let mut report = Report::new("cocycle");

        let mut assoc = CheckBuilder::new("cocycle.associativity");
        'outer: for g in grp.elements() {
            for h in grp.elements() {
                for k in grp.elements() {
                    let gh = grp.mul(g, h);
                    let hk = grp.mul(h, k);
                    let lhs = a.mul(self.cocycle(g, h), self.cocycle(gh, k));
                    let rhs = a.mul(&self.apply(g, self.cocycle(h, k)), self.cocycle(g, hk));
                    if !assoc.case(lhs == rhs, || Witness::new(&[g, h, k], &[]).sides(&lhs, &rhs)) {
                        break 'outer;
                    }
                }
            }
        }
        report.push(assoc.finish());

        let mut right = CheckBuilder::new("cocycle.right_unit");
        let mut left = CheckBuilder::new("cocycle.left_unit");
        for g in grp.elements() {
            let lhs = self.cocycle(g, e);
            let rhs = self.apply(g, &self.c_e);
            right.case(lhs == rhs.as_slice(), || Witness::new(&[g], &[]).sides(lhs, &rhs));
            let lhs = self.cocycle(e, g);
            left.case(lhs == self.c_e.as_slice(), || Witness::new(&[g], &[]).sides(lhs, &self.c_e));
        }
        report.push(right.finish());
        report.push(left.finish());
        report
    }

    /// `θ ∘ ρ(g) = θ` for every `g`.
    pub fn verify_trace_invariance(&self) -> Report {
        let a = &self.algebra;
        let mut report = Report::new("trace invariance");
        let mut check = CheckBuilder::new("action.trace_invariance");
        'outer: for g in self.group.elements() {
            for i in 0..a.dim() {
                let lhs = a.trace(&self.rho[g].column(i));
                let rhs = a.trace_vector()[i].clone();
                if !check.case(lhs == rhs, || Witness::new(&[g], &[i]).sides(std::slice::from_ref(&lhs), std::slice::from_ref(&rhs))) {
                    break 'outer;
                }
            }
        }
        report.push(check.finish());
        report
    }

    /// `ξ' ⊗ g⁻¹(ξ'') = Ad(c_e⁻¹)Ad(c_{g,g⁻¹}⁻¹)g(ξ') ⊗ ξ''` in the tensor square.
    pub fn verify_ginv_identity(&self, xi: &Copairing) -> Report {
        let mut report = Report::new("G-invariance of the copairing");
        let mut check = CheckBuilder::new("copairing.group_invariance");
        match self.twist_inverses() {
            Err(e) => check.fail(format!("cannot form Ad: {e}"), None),
            Ok(inv) => {
                let order = self.group.order();
                let x = &xi.matrix;
                for g in self.group.elements() {
                    let gi = self.group.inv(g);
                    // (1 ⊗ B) applied to X is X Bᵀ; (A ⊗ 1) applied to X is A X.
                    let lhs = x.mul(&self.rho[gi].transpose());
                    let c = self.algebra.mul(self.cocycle(g, gi), &self.c_e);
                    let c_inv = self.algebra.mul(&inv.c_e_inv, &inv.cocycle_inv[g * order + gi]);
                    let ad = self.ad_matrix(&c_inv, &c);
                    let rhs = ad.mul(&self.rho[g]).mul(x);
                    check.case(lhs == rhs, || Witness::new(&[g], &[]).sides(lhs.entries(), rhs.entries()));
                }
            }
        }
        report.push(check.finish());
        report
    }

    /// `Ad(c_{g,g⁻¹} c_e) = ρ(g)ρ(g⁻¹)` for every `g`.
    pub fn verify_inverse_consistency(&self) -> Report {
        let mut report = Report::new("inverse consistency");
        let mut check = CheckBuilder::new("action.inverse_consistency");
        match self.twist_inverses() {
            Err(e) => check.fail(format!("cannot form Ad: {e}"), None),
            Ok(inv) => {
                let order = self.group.order();
                for g in self.group.elements() {
                    let gi = self.group.inv(g);
                    let c = self.algebra.mul(self.cocycle(g, gi), &self.c_e);
                    let c_inv = self.algebra.mul(&inv.c_e_inv, &inv.cocycle_inv[g * order + gi]);
                    let lhs = self.ad_matrix(&c, &c_inv);
                    let rhs = self.rho[g].mul(&self.rho[gi]);
                    check.case(lhs == rhs, || Witness::new(&[g], &[]).sides(lhs.entries(), rhs.entries()));
                }
            }
        }
        report.push(check.finish());
        report
    }

    /// Every check a twisted Frobenius algebra bundle must pass.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("twisted bundle validation");
        report.extend(self.algebra.verify());

        let mut frob = CheckBuilder::new("algebra.frobenius");
        let xi = match self.algebra.copairing() {
            Ok(xi) => {
                frob.case(true, Witness::default);
                Some(xi)
            }
            Err(e) => {
                frob.fail(e.to_string(), None);
                None
            }
        };
        report.push(frob.finish());
        if let Some(xi) = &xi {
            report.extend(self.algebra.verify_copairing(xi));
        }

        let mut invertible = CheckBuilder::new("twist.invertible");
        if let Err(e) = self.twist_inverses() {
            invertible.fail(e.to_string(), None);
        } else {
            invertible.case(true, Witness::default);
        }
        report.push(invertible.finish());

        report.extend(self.verify_automorphisms());
        report.extend(self.verify_composition());
        report.extend(self.verify_cocycle());
        report.extend(self.verify_trace_invariance());
        match &xi {
            Some(xi) => report.extend(self.verify_ginv_identity(xi)),
            None => {
                let mut c = CheckBuilder::new("copairing.group_invariance");
                c.fail("no copairing", None);
                report.push(c.finish());
            }
        }
        report.extend(self.verify_inverse_consistency());
        report
    }

    /// The same bundle written in the basis `f_i = Σ_k P[k][i] e_k`.
    pub fn change_basis(&self, p: &Matrix) -> Result<TwistedBundle, BundleError> {
        let a = &self.algebra;
        let n = a.dim();
        let field = a.field();
        let p_inv = p.invert().map_err(|_| BundleError::NotInvertible { what: "change of basis".into() })?;
        let new_basis: Vec<Vec<Scalar>> = (0..n).map(|i| p.column(i)).collect();
        let mut structure = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                structure.extend(p_inv.mul_vec(&a.mul(&new_basis[i], &new_basis[j])));
            }
        }
        let unit = p_inv.mul_vec(a.unit());
        let trace: Vec<Scalar> = new_basis.iter().map(|v| a.trace(v)).collect();
        let algebra = AlgebraData::new(field, n, structure, unit, trace)?;
        let rho = self.rho.iter().map(|r| p_inv.mul(r).mul(p)).collect();
        let order = self.group.order();
        let cocycle = (0..order)
            .map(|g| (0..order).map(|h| p_inv.mul_vec(self.cocycle(g, h))).collect())
            .collect();
        let c_e = p_inv.mul_vec(&self.c_e);
        TwistedBundle::new(algebra, self.group.clone(), rho, cocycle, c_e)
    }
}

/// First column where two equally shaped matrices differ.
pub(crate) fn first_mismatch(a: &Matrix, b: &Matrix) -> Option<usize> {
    (0..a.cols()).find(|&j| (0..a.rows()).any(|i| a.get(i, j) != b.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn trivial_group_on_ground_field_validates() {
        let b = builders::group_algebra_bundle(&FiniteGroup::trivial(), Field::Rationals);
        assert!(b.validate().passed(), "{}", b.validate());
        assert_eq!(b.apply(0, &[Field::Rationals.from_i64(7)]), vec![Field::Rationals.from_i64(7)]);
    }

    #[test]
    fn conjugation_bundle_permutes_basis() {
        let g = FiniteGroup::symmetric(3);
        let b = builders::group_algebra_bundle(&g, Field::Rationals);
        for x in g.elements() {
            for h in g.elements() {
                let img = b.apply(x, &b.algebra().basis_vector(h));
                assert_eq!(img, b.algebra().basis_vector(g.conj(x, h)));
            }
        }
    }

    #[test]
    fn non_multiplicative_rho_is_caught() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(2), Field::Rationals);
        let f = Field::Rationals;
        // ρ(s) = diag(1, 2) fixes the unit but is not multiplicative
        let m = Matrix::from_fn(f, 2, 2, |i, j| if i != j { f.zero() } else { f.from_i64(i as i64 + 1) });
        let bad = b.with_rho(1, m);
        let r = bad.verify_automorphisms();
        let c = r.get("action.rho_multiplicative").unwrap();
        assert!(!c.passed());
        assert_eq!(c.witness.as_ref().unwrap().elements, vec![1]);
    }

    #[test]
    fn replacing_projective_cocycle_by_unit_breaks_composition() {
        let b = builders::pauli_bundle(Field::Rationals).unwrap();
        assert!(b.verify_composition().passed());
        let unit = b.algebra().unit().to_vec();
        // c_{b,a} = -1 in the Pauli bundle; replacing it with 1 breaks nothing in Ad, so
        // break a pair where c_{g,h} is not central instead.
        let mut broke = false;
        for g in 0..4 {
            for h in 0..4 {
                let mutated = b.with_cocycle(g, h, unit.clone());
                if !mutated.verify_composition().passed() {
                    broke = true;
                }
            }
        }
        assert!(broke || !b.with_cocycle(2, 1, unit).verify_cocycle().passed());
    }

    #[test]
    fn negated_cocycle_breaks_first_identity() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(3), Field::Rationals);
        let neg: Vec<Scalar> = b.cocycle(1, 2).iter().map(|x| -x).collect();
        let bad = b.with_cocycle(1, 2, neg);
        let r = bad.verify_cocycle();
        assert!(!r.get("cocycle.associativity").unwrap().passed());
    }

    #[test]
    fn sign_action_on_dual_numbers_breaks_trace_invariance() {
        // K[x]/(x²), θ(a + bx) = b, s: x ↦ -x
        let f = Field::Rationals;
        let one = f.one();
        let algebra = AlgebraData::from_sparse(
            f,
            2,
            &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone())],
            vec![f.one(), f.zero()],
            vec![f.zero(), f.one()],
        )
        .unwrap();
        let z2 = FiniteGroup::cyclic(2);
        let id = Matrix::identity(f, 2);
        let mut sign = Matrix::identity(f, 2);
        sign.set(1, 1, f.from_i64(-1));
        let unit = vec![f.one(), f.zero()];
        let b = TwistedBundle::new(algebra, z2, vec![id, sign], vec![vec![unit.clone(); 2]; 2], unit).unwrap();
        let r = b.verify_trace_invariance();
        let c = &r.checks[0];
        assert!(!c.passed());
        let w = c.witness.as_ref().unwrap();
        assert_eq!(w.elements, vec![1]);
        assert_eq!(w.lhs, vec!["-1"]);
        assert_eq!(w.rhs, vec!["1"]);
    }

    #[test]
    fn shape_errors() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(2), Field::Rationals);
        let err = TwistedBundle::new(
            b.algebra().clone(),
            b.group().clone(),
            vec![b.rho(0).clone()],
            vec![vec![b.c_e().to_vec(); 2]; 2],
            b.c_e().to_vec(),
        );
        assert!(matches!(err, Err(BundleError::Shape { .. })));
    }
}
