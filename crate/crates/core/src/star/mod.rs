//! The monomial `*`-semigroup, its conditional expectations, and trace
//! functionals evaluated on it.

mod functional;
mod monomial;
mod normal;
mod verify;

pub use functional::{
    chi_eval, tau_eval, Functional, FunctionalDoc, FunctionalKind, PulledBack, TraceFunctional,
    Twisted,
};
pub use monomial::{expect_d, monomials, Monomial};
pub use normal::{canonical_cyclic_form, classify, expect_m, is_normal, ray_power, NormalForm};
pub use verify::{
    check_edge_invariance, check_gauge, check_traciality, ck_additivity_check,
    cylinder_measure_check, default_gram_family, gram_psd_check, Counterexample, GaugeVerdict,
    GramReport, Suite, Verdict,
};
