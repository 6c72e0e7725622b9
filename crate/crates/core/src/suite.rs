//! The complete battery of checks for one bundle, as used by the CLI `verify`
//! command and the acceptance tests.

use crate::algebra::Copairing;
use crate::bundle::TwistedBundle;
use crate::characters::{two_character, verify_modular, verify_two_class, CharTable};
use crate::crossed::{CrossedAlgebra, SeparabilityOutcome};
use crate::hochschild::HochschildBundle;
use crate::report::{CheckBuilder, Report, Witness};

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub validation: Report,
    pub dims: Option<Vec<usize>>,
    pub hochschild: Report,
    pub crossed: Report,
    pub separability: Option<SeparabilityOutcome>,
    pub table: Option<CharTable>,
    pub characters: Report,
}

impl SuiteOutcome {
    /// All checks in a fixed order.
    pub fn combined(&self) -> Report {
        let mut r = Report::new("full suite");
        r.extend(self.validation.clone());
        r.extend(self.hochschild.clone());
        r.extend(self.crossed.clone());
        if let Some(s) = &self.separability {
            r.extend(s.report.clone());
        }
        r.extend(self.characters.clone());
        r
    }

    pub fn passed(&self) -> bool {
        self.combined().passed()
    }
}

/// Validation, Hochschild checks, weak crossed axioms, separability, and characters.
///
/// With `copairing` given, it replaces the one derived from the trace in every
/// downstream construction and is itself checked against the algebra.
pub fn run_suite(bundle: &TwistedBundle, copairing: Option<Copairing>, seed: u64) -> SuiteOutcome {
    let mut validation = bundle.validate();
    if let Some(xi) = &copairing {
        let mut supplied = bundle.algebra().verify_copairing(xi);
        for c in &mut supplied.checks {
            c.name = format!("supplied_{}", c.name);
        }
        validation.extend(supplied);
    }
    let built = match copairing {
        Some(xi) => HochschildBundle::with_copairing(bundle.clone(), xi),
        None => HochschildBundle::build(bundle.clone()),
    };
    let hb = match built {
        Ok(hb) => hb,
        Err(e) => {
            let mut c = CheckBuilder::new("construction");
            c.fail(e.to_string(), None);
            let mut hochschild = Report::new("hochschild");
            hochschild.push(c.finish());
            return SuiteOutcome {
                validation,
                dims: None,
                hochschild,
                crossed: Report::new("weak crossed G-algebra"),
                separability: None,
                table: None,
                characters: Report::new("characters"),
            };
        }
    };
    let mut hochschild = hb.verify_prop_maps();
    hochschild.extend(hb.verify_prop_repr());
    let dims = hb.dims();
    let table = two_character(&hb);
    let group = bundle.group().clone();
    let ca = CrossedAlgebra::from_hh0(hb);
    let crossed = ca.verify_weak_crossed();
    let separability = ca.separability_unit();

    let mut characters = verify_two_class(&table, &group);
    characters.subject = "characters".into();
    characters.extend(verify_modular(&table, &group, seed));
    // the S identity is a consequence of the torus axiom, the T identity of speciality
    let implied = [
        ("characters.s_follows_torus", crossed.get("torus.trace_form"), "characters.modular_S"),
        ("characters.t_follows_special", hochschild.get("hochschild.special"), "characters.modular_T"),
    ];
    let mut consistency = Vec::new();
    for (name, premise, conclusion) in implied {
        let premise = premise.is_some_and(|c| c.passed());
        let conclusion = characters.get(conclusion).is_some_and(|c| c.passed());
        let mut c = CheckBuilder::new(name);
        c.case(!premise || conclusion, Witness::default);
        consistency.push(c.finish());
    }
    for c in consistency {
        characters.push(c);
    }
    SuiteOutcome {
        validation,
        dims: Some(dims),
        hochschild,
        crossed,
        separability: Some(separability),
        table: Some(table),
        characters,
    }
}
