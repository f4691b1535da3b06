//! Shared group constructions for the integration tests.

#![allow(dead_code)]

use endslab::group::{AbelianFactor, Factor, GroupSpec};

/// F_2 = Z * Z with generators a, b.
pub fn f2() -> GroupSpec {
    GroupSpec::free_group(2).unwrap()
}

/// Z/3 * Z/3 with factor elements named {1,a,a2} and {1,b,b2}.
pub fn z3z3() -> GroupSpec {
    let fa = GroupSpec::cyclic_factor(3, vec!["1".into(), "a".into(), "a2".into()]).unwrap();
    let fb = GroupSpec::cyclic_factor(3, vec!["1".into(), "b".into(), "b2".into()]).unwrap();
    GroupSpec::new("Z3*Z3", vec![Factor::Finite(fa), Factor::Finite(fb)]).unwrap()
}

/// Z^2 * Z with Z^2 generators x, y and Z generator t.
pub fn z2z() -> GroupSpec {
    let za = AbelianFactor::new(2, vec!["x".into(), "y".into()], "Z^2").unwrap();
    let zb = AbelianFactor::new(1, vec!["t".into()], "Z").unwrap();
    GroupSpec::new("Z2*Z", vec![Factor::Abelian(za), Factor::Abelian(zb)]).unwrap()
}
