use proptest::prelude::*;
use qtype_core::algebra::{herm_from_text, holo_from_text, point_from_text};
use qtype_core::curves::{ideal_nu_along, nu_along};
use qtype_core::decomp::{decompose, truncate, twisted_ideal, union_basis, RationalUnitary};
use qtype_core::ideals::{mult, HoloIdeal};
use qtype_core::rng::{herm_poly, rng_from_seed};
use qtype_core::types::{dq_via_slices, HypersurfaceModel, Params, Status};
use qtype_core::{CurveGerm, Order, TypeValue};

#[test]
fn end_to_end_type_of_a_quartic() {
    let m = HypersurfaceModel::new(2, vec![herm_from_text("Re(z2) + |z1|^4", 2).unwrap()], "quartic").unwrap();
    let rep = dq_via_slices(&m, &point_from_text("0,0").unwrap(), 1, &Params::default()).unwrap();
    assert_eq!(rep.agreed_value, Some(TypeValue::int(4)));
    assert_eq!(rep.agreed_status, Some(Status::Exact));
    let w = &rep.estimate.unwrap().witnesses[0];
    assert_eq!(nu_along(&m.gens[0], &w.curve).unwrap(), Order::Finite(4));
}

#[test]
fn twisted_ideal_with_identity_contains_the_monomials() {
    let r = herm_from_text("Re(z3) + |z1^2 - z2|^2", 3).unwrap();
    let n = union_basis(std::slice::from_ref(&r), 4).unwrap().len();
    let i = twisted_ideal(std::slice::from_ref(&r), &RationalUnitary::identity(n), 4).unwrap();
    // f - g = m, so every basis monomial is a generator.
    assert_eq!(i.gens().len(), n + 1);
    let j = HoloIdeal::new(2, vec![holo_from_text("z1^2", 2).unwrap(), holo_from_text("z2^3", 2).unwrap()]).unwrap();
    assert_eq!(mult(&j, 24).unwrap().value, Order::Finite(6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_reconstructs_the_truncation(seed in any::<u64>(), n in 1usize..=3, deg in 1u32..=6) {
        let r = herm_poly(&mut rng_from_seed(seed), n, deg);
        for k in 1..=deg {
            let d = decompose(&r, k).unwrap();
            prop_assert!(d.reconstruct().sub(&truncate(&r, k).unwrap()).is_zero());
        }
    }

    #[test]
    fn ideal_order_is_the_minimum(a in -3i64..=3, b in 1u32..=4) {
        let r1 = herm_from_text("Re(z2) + |z1|^2", 2).unwrap();
        let r2 = herm_from_text("|z2|^2 + |z1|^6", 2).unwrap();
        let g = CurveGerm::from_text(&format!("(t^{b}, {a}*t^{})", b + 1), None);
        if let Ok(g) = g {
            let both = ideal_nu_along(&[r1.clone(), r2.clone()], &g).unwrap();
            prop_assert_eq!(both, nu_along(&r1, &g).unwrap().min(nu_along(&r2, &g).unwrap()));
        }
    }
}
