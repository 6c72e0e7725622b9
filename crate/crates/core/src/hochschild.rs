//! The G-graded zeroth Hochschild homology `HH₀_h = A / C_h` of a twisted
//! bundle, where `C_h = span{ab - b·h(a)}`, together with the maps
//! `T_h(g): A → A` and the induced `𝒯_h(g): HH₀_h → HH₀_{ghg⁻¹}`.

use thiserror::Error;

use crate::algebra::{AlgebraError, Copairing};
use crate::bundle::{BundleError, TwistInverses, TwistedBundle};
use crate::linalg::{Matrix, QuotientData, Scalar, Subspace};
use crate::report::{CheckBuilder, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

#[derive(Clone, Debug)]
pub struct HochschildBundle {
    bundle: TwistedBundle,
    copairing: Copairing,
    inverses: TwistInverses,
    commutators: Vec<Subspace>,
    quotients: Vec<QuotientData>,
    /// `T_h(g)` at index `g * |G| + h`.
    t_maps: Vec<Matrix>,
    /// `𝒯_h(g)` at index `g * |G| + h`.
    induced: Vec<Matrix>,
}

/// `span{e_i e_j - e_j h(e_i)}` over all basis pairs.
pub fn twisted_commutator_subspace(bundle: &TwistedBundle, h: usize) -> Subspace {
    let a = bundle.algebra();
    let n = a.dim();
    let rho = bundle.rho(h);
    let mut gens = Vec::with_capacity(n * n);
    for i in 0..n {
        let hi = rho.column(i);
        for j in 0..n {
            let ej = a.basis_vector(j);
            let mut v = a.basis_product(i, j).to_vec();
            for (x, y) in v.iter_mut().zip(a.mul(&ej, &hi)) {
                *x -= &y;
            }
            gens.push(v);
        }
    }
    Subspace::span(a.field(), n, &gens).expect("generators have length n")
}

/// Matrix of `c ↦ c_e⁻¹ c_{g,g⁻¹}⁻¹ g(c) c_{g,h} c_{gh,g⁻¹}`.
pub fn t_map(bundle: &TwistedBundle, inverses: &TwistInverses, g: usize, h: usize) -> Matrix {
    let a = bundle.algebra();
    let grp = bundle.group();
    let order = grp.order();
    let gi = grp.inv(g);
    let left = a.mul(&inverses.c_e_inv, &inverses.cocycle_inv[g * order + gi]);
    let right = a.mul(bundle.cocycle(g, h), bundle.cocycle(grp.mul(g, h), gi));
    a.left_mul_matrix(&left).mul(&a.right_mul_matrix(&right)).mul(bundle.rho(g))
}

impl HochschildBundle {
    pub fn build(bundle: TwistedBundle) -> Result<Self, HochschildError> {
        let copairing = bundle.algebra().copairing()?;
        Self::with_copairing(bundle, copairing)
    }

    /// Uses the given copairing instead of recomputing it from the trace.
    pub fn with_copairing(bundle: TwistedBundle, copairing: Copairing) -> Result<Self, HochschildError> {
        let inverses = bundle.twist_inverses()?;
        let grp = bundle.group().clone();
        let commutators: Vec<Subspace> =
            grp.elements().map(|h| twisted_commutator_subspace(&bundle, h)).collect();
        let quotients: Vec<QuotientData> = commutators.iter().map(Subspace::quotient).collect();
        let mut t_maps = Vec::with_capacity(grp.order() * grp.order());
        let mut induced = Vec::with_capacity(grp.order() * grp.order());
        for g in grp.elements() {
            for h in grp.elements() {
                let t = t_map(&bundle, &inverses, g, h);
                let target = &quotients[grp.conj(g, h)];
                induced.push(target.projection.mul(&t).mul(&quotients[h].section));
                t_maps.push(t);
            }
        }
        Ok(HochschildBundle { bundle, copairing, inverses, commutators, quotients, t_maps, induced })
    }

    pub fn bundle(&self) -> &TwistedBundle {
        &self.bundle
    }

    pub fn copairing(&self) -> &Copairing {
        &self.copairing
    }

    pub fn inverses(&self) -> &TwistInverses {
        &self.inverses
    }

    pub fn commutator(&self, h: usize) -> &Subspace {
        &self.commutators[h]
    }

    pub fn quotient(&self, h: usize) -> &QuotientData {
        &self.quotients[h]
    }

    /// `dim HH₀_h`.
    pub fn dim(&self, h: usize) -> usize {
        self.quotients[h].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.quotients.iter().map(QuotientData::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// `T_h(g)` on the ambient algebra.
    pub fn t_matrix(&self, g: usize, h: usize) -> &Matrix {
        &self.t_maps[g * self.bundle.group().order() + h]
    }

    /// `𝒯_h(g): HH₀_h → HH₀_{ghg⁻¹}`.
    pub fn induced(&self, g: usize, h: usize) -> &Matrix {
        &self.induced[g * self.bundle.group().order() + h]
    }

    /// Section lift of a class in `HH₀_h`.
    pub fn lift(&self, h: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.quotients[h].section.mul_vec(v)
    }

    pub fn project(&self, h: usize, c: &[Scalar]) -> Vec<Scalar> {
        self.quotients[h].projection.mul_vec(c)
    }

    /// `T_h(g)(C_h) = C_{ghg⁻¹}`, plus `π ∘ T_h(g) = 𝒯_h(g) ∘ π` on every ambient vector.
    pub fn verify_prop_maps(&self) -> Report {
        let grp = self.bundle.group();
        let mut report = Report::new("commutator subspaces under T");
        let mut image = CheckBuilder::new("hochschild.commutator_image");
        let mut well = CheckBuilder::new("hochschild.induced_well_defined");
        for g in grp.elements() {
            for h in grp.elements() {
                let t = self.t_matrix(g, h);
                let target = grp.conj(g, h);
                let img = self.commutators[h].image(t);
                image.case(img == self.commutators[target], || {
                    let mut w = Witness::new(&[g, h], &[]);
                    w.lhs = vec![format!("dim {}", img.dim())];
                    w.rhs = vec![format!("dim {}", self.commutators[target].dim())];
                    w
                });
                let lhs = self.quotients[target].projection.mul(t);
                let rhs = self.induced(g, h).mul(&self.quotients[h].projection);
                well.case(lhs == rhs, || Witness::new(&[g, h], &[]).sides(lhs.entries(), rhs.entries()));
            }
        }
        report.push(image.finish());
        report.push(well.finish());
        report
    }

    /// `𝒯(g₁)𝒯(g₂) = 𝒯(g₁g₂)`, `𝒯(e) = id`, and `𝒯_g(g) = id` on `HH₀_g`.
    pub fn verify_prop_repr(&self) -> Report {
        let grp = self.bundle.group();
        let e = grp.identity();
        let mut report = Report::new("induced representation");
        let mut comp = CheckBuilder::new("hochschild.representation");
        'outer: for g1 in grp.elements() {
            for g2 in grp.elements() {
                for h in grp.elements() {
                    let mid = grp.conj(g2, h);
                    let lhs = self.induced(g1, mid).mul(self.induced(g2, h));
                    let rhs = self.induced(grp.mul(g1, g2), h);
                    if !comp.case(lhs == *rhs, || {
                        Witness::new(&[g1, g2, h], &[]).sides(lhs.entries(), rhs.entries())
                    }) {
                        break 'outer;
                    }
                }
            }
        }
        report.push(comp.finish());

        let mut ident = CheckBuilder::new("hochschild.identity_acts_trivially");
        let mut special = CheckBuilder::new("hochschild.special");
        for h in grp.elements() {
            let m = self.induced(e, h);
            ident.case(m.is_identity(), || Witness::new(&[h], &[]).sides(m.entries(), &[]));
            let m = self.induced(h, h);
            special.case(m.is_identity(), || Witness::new(&[h], &[]).sides(m.entries(), &[]));
        }
        report.push(ident.finish());
        report.push(special.finish());
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::group::FiniteGroup;
    use crate::linalg::Field;

    #[test]
    fn trivial_group_has_one_summand() {
        let hb = HochschildBundle::build(builders::group_algebra_bundle(&FiniteGroup::trivial(), Field::Rationals))
            .unwrap();
        assert_eq!(hb.dims(), vec![1]);
        assert!(hb.induced(0, 0).is_identity());
    }

    #[test]
    fn z2_group_algebra() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(2), Field::Rationals);
        let hb = HochschildBundle::build(b).unwrap();
        assert_eq!(hb.dims(), vec![2, 2]);
        assert_eq!(hb.commutator(1).dim(), 0);
        for g in 0..2 {
            for h in 0..2 {
                assert!(hb.induced(g, h).is_identity());
            }
        }
    }

    #[test]
    fn t_map_on_group_algebra_is_conjugation() {
        let grp = FiniteGroup::symmetric(3);
        let b = builders::group_algebra_bundle(&grp, Field::Rationals);
        let hb = HochschildBundle::build(b).unwrap();
        let a = hb.bundle().algebra();
        for g in grp.elements() {
            for h in grp.elements() {
                for k in grp.elements() {
                    let img = hb.t_matrix(g, h).mul_vec(&a.basis_vector(k));
                    assert_eq!(img, a.basis_vector(grp.conj(g, k)));
                }
            }
        }
        assert!(hb.verify_prop_maps().passed());
        assert!(hb.verify_prop_repr().passed());
    }

    #[test]
    fn broken_rho_is_visible_in_the_representation() {
        let grp = FiniteGroup::cyclic(3);
        let b = builders::group_algebra_bundle(&grp, Field::Rationals);
        // send every generator to the identity basis vector's image of a different power
        let perm = Matrix::from_fn(Field::Rationals, 3, 3, |i, j| {
            if i == (3 - j) % 3 { Field::Rationals.one() } else { Field::Rationals.zero() }
        });
        let hb = HochschildBundle::build(b.with_rho(1, perm)).unwrap();
        let mut r = hb.verify_prop_maps();
        r.extend(hb.verify_prop_repr());
        assert!(!r.passed());
    }
}
