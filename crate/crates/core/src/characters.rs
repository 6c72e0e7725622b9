//! 2-characters `χ(g, h) = Tr(𝒯_h(g) on HH₀_h)` for commuting pairs, with the
//! 2-class function and SL(2,ℤ) invariance checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::hochschild::HochschildBundle;
use crate::linalg::Scalar;
use crate::report::{CheckBuilder, Report, Witness};

/// Seed for the sampled SL(2,ℤ) words when none is given.
pub const DEFAULT_MODULAR_SEED: u64 = 0x2c_5eed;
/// Number of random SL(2,ℤ) words checked by [`verify_modular`].
pub const MODULAR_SAMPLES: usize = 10;
/// Maximum length of a sampled word in `S^{±1}`, `T^{±1}`.
pub const MODULAR_WORD_LENGTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl CharTable {
    pub fn value(&self, g: usize, h: usize) -> Result<&Scalar, CharacterError> {
        self.entries.get(&(g, h)).ok_or(CharacterError::NotCommuting(g, h))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Copy with one entry replaced; used for negative tests.
    pub fn with_entry(&self, g: usize, h: usize, v: Scalar) -> Self {
        let mut out = self.clone();
        out.entries.insert((g, h), v);
        out
    }
}

/// Characters on all commuting pairs.
pub fn two_character(hb: &HochschildBundle) -> CharTable {
    let grp = hb.bundle().group();
    let mut entries = BTreeMap::new();
    for (g, h) in grp.commuting_pairs() {
        let m = hb.induced(g, h);
        assert!(m.is_square() && grp.conj(g, h) == h, "T_h(g) is not an endomorphism");
        entries.insert((g, h), m.trace());
    }
    CharTable { entries }
}

/// `χ(kgk⁻¹, khk⁻¹) = χ(g, h)` for all `k` and commuting `(g, h)`.
pub fn verify_two_class(table: &CharTable, group: &FiniteGroup) -> Report {
    let mut report = Report::new("2-class function");
    let mut check = CheckBuilder::new("characters.two_class");
    for (&(g, h), v) in table.entries() {
        for k in group.elements() {
            let w = table.value(group.conj(k, g), group.conj(k, h));
            let ok = w == Ok(v);
            check.case(ok, || {
                let other: Vec<Scalar> = w.iter().map(|x| (*x).clone()).collect();
                Witness::new(&[k, g, h], &[]).sides(&other, std::slice::from_ref(v))
            });
        }
    }
    report.push(check.finish());
    report
}

/// `(a b; c d)` with `(g, h) ↦ (g^a h^b, g^c h^d)`.
pub type Sl2 = [i64; 4];

const S: Sl2 = [0, -1, 1, 0];
const T: Sl2 = [1, 1, 0, 1];
const S_INV: Sl2 = [0, 1, -1, 0];
const T_INV: Sl2 = [1, -1, 0, 1];

fn compose(x: Sl2, y: Sl2) -> Sl2 {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Reproducible random words in the SL(2,ℤ) generators.
pub fn sample_sl2(seed: u64, count: usize) -> Vec<(String, Sl2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=MODULAR_WORD_LENGTH);
            let mut word = String::new();
            let mut m: Sl2 = [1, 0, 0, 1];
            for _ in 0..len {
                let (name, gen) = match rng.random_range(0..4) {
                    0 => ("S", S),
                    1 => ("T", T),
                    2 => ("S'", S_INV),
                    _ => ("T'", T_INV),
                };
                word.push_str(name);
                m = compose(m, gen);
            }
            (word, m)
        })
        .collect()
}

fn transform(group: &FiniteGroup, m: &Sl2, g: usize, h: usize) -> (usize, usize) {
    let p = |a, b| group.mul(group.pow(g, a), group.pow(h, b));
    (p(m[0], m[1]), p(m[2], m[3]))
}

/// The T and S generator identities on all commuting pairs, plus sampled words.
pub fn verify_modular(table: &CharTable, group: &FiniteGroup, seed: u64) -> Report {
    let mut report = Report::new("modular invariance");
    let words = [("T", T), ("S", S)];
    for (name, m) in words {
        let mut check = CheckBuilder::new(format!("characters.modular_{name}"));
        for (&(g, h), v) in table.entries() {
            let (x, y) = transform(group, &m, g, h);
            let w = table.value(x, y);
            let ok = w == Ok(v);
            check.case(ok, || {
                let other: Vec<Scalar> = w.iter().map(|x| (*x).clone()).collect();
                Witness::new(&[g, h, x, y], &[]).sides(&other, std::slice::from_ref(v))
            });
        }
        report.push(check.finish());
    }
    let mut sampled = CheckBuilder::new("characters.modular_sampled");
    for (word, m) in sample_sl2(seed, MODULAR_SAMPLES) {
        for (&(g, h), v) in table.entries() {
            let (x, y) = transform(group, &m, g, h);
            let w = table.value(x, y);
            if w == Ok(v) {
                sampled.case(true, Witness::default);
            } else if sampled.failed() {
                sampled.case(false, Witness::default);
            } else {
                let other: Vec<Scalar> = w.iter().map(|x| (*x).clone()).collect();
                sampled.fail(
                    format!("word {word} = {m:?}"),
                    Some(Witness::new(&[g, h, x, y], &[]).sides(&other, std::slice::from_ref(v))),
                );
            }
        }
    }
    report.push(sampled.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::linalg::Field;

    #[test]
    fn sampled_words_are_in_sl2() {
        for (_, m) in sample_sl2(DEFAULT_MODULAR_SEED, 50) {
            assert_eq!(m[0] * m[3] - m[1] * m[2], 1);
        }
        assert_eq!(sample_sl2(7, 10), sample_sl2(7, 10));
    }

    #[test]
    fn generators_act_as_documented() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(transform(&g, &T, 1, 2), (3, 2));
        assert_eq!(transform(&g, &S, 1, 2), (4, 1));
    }

    #[test]
    fn z2_table_is_constant() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(2), Field::Rationals);
        let hb = HochschildBundle::build(b).unwrap();
        let t = two_character(&hb);
        assert_eq!(t.len(), 4);
        assert!(t.entries().all(|(_, v)| *v == Field::Rationals.from_i64(2)));
        assert!(verify_two_class(&t, hb.bundle().group()).passed());
        assert!(verify_modular(&t, hb.bundle().group(), DEFAULT_MODULAR_SEED).passed());
    }

    #[test]
    fn non_commuting_pair_is_rejected() {
        let grp = FiniteGroup::symmetric(3);
        let hb = HochschildBundle::build(builders::group_algebra_bundle(&grp, Field::Rationals)).unwrap();
        let t = two_character(&hb);
        assert_eq!(t.len(), 18);
        assert_eq!(t.value(1, 2), Err(CharacterError::NotCommuting(1, 2)));
    }

    #[test]
    fn corrupted_entry_breaks_class_function() {
        let grp = FiniteGroup::symmetric(3);
        let hb = HochschildBundle::build(builders::group_algebra_bundle(&grp, Field::Rationals)).unwrap();
        let t = two_character(&hb).with_entry(0, 1, Field::Rationals.from_i64(99));
        let r = verify_two_class(&t, &grp);
        assert!(!r.passed());
        assert!(r.checks[0].witness.is_some());
    }
}
