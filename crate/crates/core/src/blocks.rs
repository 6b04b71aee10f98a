//! Lattice points of the closed shifted ℓ-alcove, their facet types and
//! stabilizers, and the free action of the fundamental group on them.

use num_integer::Integer;
use serde::Serialize;

use crate::affweyl::{dot, AffineWeylElement, NodeSet};
use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, smith_normal_form, IntMatrix};
use crate::rootdata::{classify_subsystem, enumerate_weyl, generate_group, reflection_subgroup, RootDatum, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPoint {
    pub omega: Vec<i64>,
    pub ell: i64,
    pub facet_type: NodeSet,
    /// Positive roots with `<alpha, omega + rho> = 0 mod ell`.
    pub stabilizer_roots: Vec<Vec<i64>>,
    pub stabilizer_order: u64,
    pub stabilizer_type: String,
}

impl BlockPoint {
    pub fn shifted(&self) -> Vec<i64> {
        self.omega.iter().map(|c| c + 1).collect()
    }
}

/// Checks `ell` odd, `ell >= h`, prime to `e`, and prime to 3 in type G2.
pub fn check_admissible(rd: &RootDatum, ell: i64) -> Result<()> {
    let h = rd.coxeter_number() as i64;
    let e = rd.pi1_order() as i64;
    if ell < 1 {
        return Err(Error::input(format!("ell = {ell} must be positive")));
    }
    if ell % 2 == 0 {
        return Err(Error::input(format!("ell = {ell} must be odd")));
    }
    if ell < h {
        return Err(Error::input(format!("ell = {ell} must be at least h = {h}")));
    }
    if ell.gcd(&e) != 1 {
        return Err(Error::input(format!("ell = {ell} must be prime to e = {e}")));
    }
    if rd.cartan_type().to_string() == "G2" && ell % 3 == 0 {
        return Err(Error::input(format!("ell = {ell} must be prime to 3 in type G2")));
    }
    Ok(())
}

pub fn is_admissible(rd: &RootDatum, ell: i64) -> bool {
    check_admissible(rd, ell).is_ok()
}

fn guard(rd: &RootDatum, ell: i64, force: bool) -> Result<()> {
    if force {
        if ell < 1 {
            return Err(Error::input(format!("ell = {ell} must be positive")));
        }
        Ok(())
    } else {
        check_admissible(rd, ell)
    }
}

/// Facet type of a shifted point `v = omega + rho` of the closed ℓ-alcove.
pub fn facet_type(rd: &RootDatum, v: &[i64], ell: i64) -> NodeSet {
    let mut j = NodeSet::EMPTY;
    if dot(rd.highest_root(), v) == ell {
        j.insert(0);
    }
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            j.insert(i + 1);
        }
    }
    j
}

/// Order of the finite image of the parabolic generated by `j`.
pub fn parabolic_order(rd: &RootDatum, j: NodeSet) -> Result<u64> {
    let gens: Vec<WeylElement> = j
        .nodes()
        .map(|i| {
            if i == 0 {
                rd.reflection(rd.highest_root())
            } else {
                Ok(rd.simple_reflection(i - 1))
            }
        })
        .collect::<Result<_>>()?;
    Ok(generate_group(rd.rank(), &gens, crate::rootdata::WEYL_BOUND)?.len() as u64)
}

fn block_point(rd: &RootDatum, v: Vec<i64>, ell: i64) -> Result<BlockPoint> {
    let stabilizer_roots: Vec<Vec<i64>> = rd
        .positive_roots()
        .iter()
        .filter(|a| dot(a, &v).rem_euclid(ell) == 0)
        .cloned()
        .collect();
    let order = reflection_subgroup(rd, &stabilizer_roots)?.len() as u64;
    let j = facet_type(rd, &v, ell);
    let parabolic = parabolic_order(rd, j)?;
    if order != parabolic {
        return Err(Error::invariant(format!(
            "stabilizer of {v:?} has order {order} but its parabolic has order {parabolic}"
        )));
    }
    let info = classify_subsystem(rd, &stabilizer_roots)?;
    if info.group_order != order {
        return Err(Error::invariant("stabilizer type does not match its order"));
    }
    Ok(BlockPoint {
        omega: v.iter().map(|c| c - 1).collect(),
        ell,
        facet_type: j,
        stabilizer_roots,
        stabilizer_order: order,
        stabilizer_type: info.label(),
    })
}

/// Shifted points `v >= 0` with `<theta, v> <= ell`, lexicographic.
fn shifted_alcove_points(rd: &RootDatum, ell: i64) -> Vec<Vec<i64>> {
    let theta = rd.highest_root().to_vec();
    let r = rd.rank();
    let mut out = Vec::new();
    let mut v = vec![0i64; r];
    fn rec(i: usize, budget: i64, theta: &[i64], v: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == v.len() {
            out.push(v.clone());
            return;
        }
        let mut c = 0;
        while c * theta[i] <= budget {
            v[i] = c;
            rec(i + 1, budget - c * theta[i], theta, v, out);
            c += 1;
        }
        v[i] = 0;
    }
    rec(0, ell, &theta, &mut v, &mut out);
    out
}

/// The lattice points of the closed shifted ℓ-alcove, sorted lexicographically
/// in `omega`. `force` skips the admissibility check.
pub fn enumerate_xi_sc(rd: &RootDatum, ell: i64, force: bool) -> Result<Vec<BlockPoint>> {
    guard(rd, ell, force)?;
    let mut pts = shifted_alcove_points(rd, ell)
        .into_iter()
        .map(|v| block_point(rd, v, ell))
        .collect::<Result<Vec<_>>>()?;
    for p in &pts {
        let v = p.shifted();
        if rd.positive_roots().iter().any(|a| !(0..=ell).contains(&dot(a, &v))) {
            return Err(Error::invariant("alcove point violates a root inequality"));
        }
    }
    pts.sort_by(|a, b| a.omega.cmp(&b.omega));
    Ok(pts)
}

/// `u` and `v` (shifted) satisfy `v in W u + ell Λ`.
fn same_orbit(weyl: &[WeylElement], u: &[i64], v: &[i64], ell: i64) -> bool {
    weyl.iter().any(|w| {
        w.act_coweight(u).iter().zip(v).all(|(a, b)| (a - b).rem_euclid(ell) == 0)
    })
}

/// Partition of the alcove points into orbits of the fundamental group; every
/// orbit must have exactly `e` elements.
pub fn xi_orbits(rd: &RootDatum, ell: i64, force: bool) -> Result<Vec<Vec<BlockPoint>>> {
    let pts = enumerate_xi_sc(rd, ell, force)?;
    let weyl = enumerate_weyl(rd)?;
    let e = rd.pi1_order() as usize;
    let mut assigned = vec![false; pts.len()];
    let mut orbits = Vec::new();
    for i in 0..pts.len() {
        if assigned[i] {
            continue;
        }
        let u = pts[i].shifted();
        let mut orbit = Vec::new();
        for k in i..pts.len() {
            if !assigned[k] && same_orbit(&weyl, &u, &pts[k].shifted(), ell) {
                assigned[k] = true;
                orbit.push(pts[k].clone());
            }
        }
        if orbit.len() != e {
            return Err(Error::invariant(format!(
                "orbit of {:?} has {} points, expected e = {e}",
                pts[i].omega,
                orbit.len()
            )));
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Basis of `Q ∩ ell Λ` as rows, from the Smith form of the coroot matrix.
fn coroot_lattice_meet(rd: &RootDatum, ell: i64) -> IntMatrix {
    let c = rd.coroot_matrix();
    let snf = smith_normal_form(c);
    let uc = snf.left.mul(c);
    let rows: Vec<Vec<i64>> = (0..rd.rank())
        .map(|i| {
            let g = ell.gcd(&snf.diagonal[i]);
            uc.row(i).iter().map(|x| x * (ell / g)).collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

/// Whether `ell Q = Q ∩ ell Λ` inside the coweight lattice.
pub fn check_lattice_identity(rd: &RootDatum, ell: i64) -> bool {
    let dilated = IntMatrix::from_rows(
        &rd.coroot_matrix().to_rows().iter().map(|r| r.iter().map(|x| x * ell).collect()).collect::<Vec<_>>(),
    );
    let equal = hermite_normal_form(&dilated) == hermite_normal_form(&coroot_lattice_meet(rd, ell));
    let snf = smith_normal_form(rd.coroot_matrix());
    let predicted = snf.diagonal.iter().all(|d| ell.gcd(d) == 1);
    debug_assert_eq!(equal, predicted);
    equal
}

/// Moves `lambda` into the closed shifted ℓ-alcove by the dot action of the
/// ℓ-dilated affine Weyl group; returns the point and an element `x` with
/// `x • lambda` equal to it.
pub fn reduce_to_fundamental(rd: &RootDatum, lambda: &[i64], ell: i64) -> (Vec<i64>, AffineWeylElement) {
    let r = rd.rank();
    let mut x = AffineWeylElement::identity(r);
    let mut cur = lambda.to_vec();
    loop {
        let v: Vec<i64> = cur.iter().map(|c| c + 1).collect();
        let node = if let Some(i) = v.iter().position(|&c| c < 0) {
            i + 1
        } else if dot(rd.highest_root(), &v) > ell {
            0
        } else {
            return (cur, x);
        };
        let s = AffineWeylElement::simple(rd, node, ell);
        cur = s.act_dot(&cur);
        x = s.compose(&x);
    }
}
