use proptest::prelude::*;

use zcenter_core::affweyl::{AffineRoot, AffineWeylElement};
use zcenter_core::blocks::{enumerate_xi_sc, reduce_to_fundamental};
use zcenter_core::formulas::{sign_multiplicity, theorem_c_dim};
use zcenter_core::rankone::{build_algebra, center_space, verify_product_rule};
use zcenter_core::rootdata::{enumerate_weyl, RootDatum};

fn rd(s: &str) -> RootDatum {
    RootDatum::new(s.parse().unwrap()).unwrap()
}

fn element(d: &RootDatum, w: usize, mu: &[i64]) -> AffineWeylElement {
    let weyl = enumerate_weyl(d).unwrap();
    AffineWeylElement::new(weyl[w % weyl.len()].clone(), mu[..d.rank()].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn affine_group_laws(t in 0usize..4, a in 0usize..48, b in 0usize..48, mu in prop::collection::vec(-6i64..7, 4), nu in prop::collection::vec(-6i64..7, 4)) {
        let d = rd(["A2", "B2", "G2", "A3"][t]);
        let (x, y) = (element(&d, a, &mu), element(&d, b, &nu));
        prop_assert!(x.compose(&x.inverse()).is_identity());
        prop_assert_eq!(x.compose(&y).inverse(), y.inverse().compose(&x.inverse()));
        prop_assert_eq!(x.compose(&y).length(&d) % 2, (x.length(&d) + y.length(&d)) % 2);
    }

    #[test]
    fn reflection_squares_to_one(t in 0usize..3, i in 0usize..6, m in -5i64..6) {
        let d = rd(["A2", "B2", "G2"][t]);
        let roots = d.all_roots();
        let s = AffineWeylElement::reflection(&d, &AffineRoot::new(roots[i % roots.len()].clone(), m)).unwrap();
        prop_assert!(s.compose(&s).is_identity());
        prop_assert_eq!(s.length(&d) % 2, 1);
    }

    #[test]
    fn reduction_lands_in_alcove(t in 0usize..2, lam in prop::collection::vec(-40i64..41, 2)) {
        let (name, ell) = [("A1", 5), ("A2", 5)][t];
        let d = rd(name);
        let lam = &lam[..d.rank()];
        let (omega, x) = reduce_to_fundamental(&d, lam, ell);
        prop_assert_eq!(x.act_dot(lam), omega.clone());
        prop_assert!(x.in_dilated_affine(&d, ell));
        let pts = enumerate_xi_sc(&d, ell, false).unwrap();
        prop_assert!(pts.iter().any(|p| p.omega == omega));
    }

    #[test]
    fn reduction_is_canonical(w in 0usize..6, mu in prop::collection::vec(-3i64..4, 2), k in 0usize..21) {
        let d = rd("A2");
        let pts = enumerate_xi_sc(&d, 5, false).unwrap();
        let omega = &pts[k % pts.len()].omega;
        let x = element(&d, w, &[mu[0], mu[1]]).dilate(5);
        let moved = x.act_dot(omega);
        if x.in_dilated_affine(&d, 5) {
            prop_assert_eq!(&reduce_to_fundamental(&d, &moved, 5).0, omega);
        }
    }

    #[test]
    fn trivial_group_multiplicity(t in 0usize..3, q in 2i64..6) {
        let d = rd(["A1", "A2", "B2"][t]);
        prop_assert_eq!(sign_multiplicity(&d, &[], q).unwrap(), q.pow(d.rank() as u32));
        prop_assert!(sign_multiplicity(&d, d.positive_roots(), q).unwrap() >= 0);
    }
}

#[test]
fn closed_form_grows_with_ell() {
    let d = rd("B2");
    let values: Vec<i64> = [5, 7, 9, 11].iter().map(|&l| theorem_c_dim(&d, l).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_central_products(coeffs in prop::collection::vec(-2i64..3, 48)) {
        let alg = build_algebra(4, 3).unwrap();
        let center = center_space(&alg);
        let combine = |cs: &[i64]| {
            center.iter().zip(cs).fold(alg.zero(), |acc, (z, &c)| {
                let mut s = z.clone();
                for v in s.coeffs.iter_mut() {
                    *v *= num_rational::BigRational::from_integer(c.into());
                }
                alg.add(&acc, &s)
            })
        };
        let (z, w) = (combine(&coeffs[..24]), combine(&coeffs[24..]));
        prop_assert!(alg.is_central(&z));
        prop_assert!(verify_product_rule(&alg, &z, &w));
        prop_assert!(alg.is_central(&alg.mul(&z, &w)));
    }
}
