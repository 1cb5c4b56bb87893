//! Surgery-line intersections of A-curves and the replay of the `deg_M = 0`
//! contradiction.
//!
//! A point `(u, v)` on the `1/N` surgery line satisfies `u v^N = 1`. On the
//! curve `A(M, L) = 0` this means `v` is a root of `v^(N deg_M) A(v^-N, v)`.
//! Roots of unity are split off exactly by cyclotomic trial division, so
//! whether `u = 1` never depends on floating point.

use std::f64::consts::PI;
use std::fmt::{self, Write};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::roots::{find_roots, relative_residual};
use crate::poly::{squarefree_decomposition, BivarPoly, UnivarPoly};
use crate::structure::{
    divide_out_cyclotomics, euler_phi, mdeg_trivial_decomposition, orders_with_phi_at_most,
    MdegTrivialOutcome, TrivialDecomposition, Violation,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_N_MAX: u32 = 5;

/// Meridian and longitude eigenvalues `(u, v)` in `C* x C*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPoint {
    pub u: Complex64,
    pub v: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    /// `v = exp(2 pi i index / order)` with `gcd(index, order) = 1`.
    UnitRoot { order: u64, index: u64 },
    NonUnit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurgeryPoint {
    pub point: EigenPoint,
    pub class: PointClass,
    pub multiplicity: u32,
    /// `|u| = |v| = 1`: exact for unit roots, within tolerance otherwise.
    pub on_su2_torus: bool,
    /// `u = 1`, decided exactly.
    pub forces_trivial: bool,
    /// `|u v^N - 1|`; zero for unit roots.
    pub surgery_residual: f64,
    /// Relative residual of the root in the substituted polynomial.
    pub curve_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurgeryIntersection {
    pub n: u32,
    /// `v^(N deg_M) A(v^-N, v)` with powers of `v` removed.
    pub restricted: UnivarPoly,
    pub unit_factors: Vec<(u64, u32)>,
    pub points: Vec<SurgeryPoint>,
}

impl SurgeryIntersection {
    pub fn all_forced_trivial(&self) -> bool {
        self.points.iter().all(|p| p.forces_trivial)
    }

    pub fn has_nontrivial_point(&self) -> bool {
        self.points.iter().any(|p| !p.forces_trivial)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SurgeryOutcome {
    Points(SurgeryIntersection),
    /// The surgery relation divides `A`, so the whole line lies on the curve.
    CurveContainsLine,
}

/// Largest order `e` with `phi(e) <= degree`; trial division up to it finds
/// every root of unity of a polynomial of that degree.
pub fn complete_order_bound(degree: usize) -> u64 {
    orders_with_phi_at_most(degree).last().copied().unwrap_or(1)
}

/// Root-of-unity content of `f`: `(order, multiplicity)` per cyclotomic factor
/// `Phi_e` with `e <= bound`, and the cofactor.
pub fn classify_unit_root(f: &UnivarPoly, bound: u64) -> (Vec<(u64, u32)>, UnivarPoly) {
    let deg = f.degree().unwrap_or(0);
    let orders: Vec<u64> = orders_with_phi_at_most(deg)
        .into_iter()
        .filter(|&e| e <= bound)
        .collect();
    let (factors, rest) = divide_out_cyclotomics(f, &orders);
    (
        factors.into_iter().map(|f| (f.order, f.multiplicity)).collect(),
        rest,
    )
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn unit_root(index: u64, order: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * index as f64 / order as f64)
}

/// Intersects the curve `A = 0` with the surgery line `u v^N = 1`.
pub fn surgery_intersection(a: &BivarPoly, n: u32, tolerance: f64) -> Result<SurgeryOutcome> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial("surgery_intersection"));
    }
    let substituted = a.substitute_surgery(n)?;
    if substituted.is_zero() {
        return Ok(SurgeryOutcome::CurveContainsLine);
    }
    let restricted = substituted.shift_down(substituted.low_degree());
    let deg = restricted.degree().unwrap_or(0);
    let (unit_factors, rest) = classify_unit_root(&restricted, complete_order_bound(deg));

    let mut points = Vec::new();
    let big_n = u64::from(n);
    for &(order, multiplicity) in &unit_factors {
        for index in (0..order).filter(|&k| gcd_u64(k, order) == 1) {
            // u = v^-N, still an order-dividing root of unity.
            let u_index = (order - (big_n * index) % order) % order;
            points.push(SurgeryPoint {
                point: EigenPoint {
                    u: unit_root(u_index, order),
                    v: unit_root(index, order),
                },
                class: PointClass::UnitRoot { order, index },
                multiplicity,
                on_su2_torus: true,
                forces_trivial: u_index == 0,
                surgery_residual: 0.0,
                curve_residual: 0.0,
            });
        }
    }

    if rest.degree().unwrap_or(0) > 0 {
        for (factor, multiplicity) in squarefree_decomposition(&rest)? {
            for v in find_roots(&factor) {
                let u = v.powi(-(n as i32));
                let on_circle = |z: Complex64| (z.norm() - 1.0).abs() < tolerance;
                points.push(SurgeryPoint {
                    point: EigenPoint { u, v },
                    class: PointClass::NonUnit,
                    multiplicity,
                    on_su2_torus: on_circle(u) && on_circle(v),
                    forces_trivial: false,
                    surgery_residual: (u * v.powi(n as i32) - 1.0).norm(),
                    curve_residual: relative_residual(&factor, v),
                });
            }
        }
    }

    Ok(SurgeryOutcome::Points(SurgeryIntersection {
        n,
        restricted,
        unit_factors,
        points,
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayStep {
    pub n: u32,
    pub slope_denominator: u32,
    pub intersection: SurgeryIntersection,
}

impl ReplayStep {
    pub fn all_forced_trivial(&self) -> bool {
        self.intersection.all_forced_trivial()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayReport {
    pub polynomial: BivarPoly,
    pub decomposition: MdegTrivialOutcome,
    pub n_max: u32,
    pub steps: Vec<ReplayStep>,
}

impl ReplayReport {
    pub fn d(&self) -> Option<u64> {
        match &self.decomposition {
            MdegTrivialOutcome::Decomposed(dec) => Some(dec.d()),
            MdegTrivialOutcome::Violation(_) => None,
        }
    }

    pub fn violation(&self) -> Option<&Violation> {
        match &self.decomposition {
            MdegTrivialOutcome::Violation(v) => Some(v),
            MdegTrivialOutcome::Decomposed(_) => None,
        }
    }

    /// True when the decomposition succeeded and every point at every slope
    /// has `u = 1`.
    pub fn contradiction_holds(&self) -> bool {
        self.violation().is_none() && self.steps.iter().all(ReplayStep::all_forced_trivial)
    }

    pub fn narrative(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "A(M, L) = {}", self.polynomial);
        let _ = writeln!(out, "1. deg_M A = 0, so A is a polynomial in L alone.");
        let dec = match &self.decomposition {
            MdegTrivialOutcome::Violation(v) => {
                let _ = writeln!(
                    out,
                    "2. A is not (L - 1) times distinct cyclotomic polynomials: {v}."
                );
                let _ = write!(out, "   The replay stops; no surgery slopes were examined.");
                return out;
            }
            MdegTrivialOutcome::Decomposed(dec) => dec,
        };
        let _ = writeln!(out, "2. A = {}", factorization_text(dec));
        let orders = dec.profile.orders();
        if orders.is_empty() {
            let _ = writeln!(out, "3. There are no cyclotomic factors besides L - 1, so d = 1.");
        } else {
            let list: Vec<String> = orders.iter().map(u64::to_string).collect();
            let _ = writeln!(
                out,
                "3. The roots of the cyclotomic factors have orders {}; d = {} = {}.",
                list.join(", "),
                list.join(" * "),
                dec.d()
            );
        }
        let _ = writeln!(
            out,
            "   Every root xi of A satisfies xi^d = 1 with d = {}.",
            dec.d()
        );
        let _ = writeln!(
            out,
            "4. On the surgery line of slope 1/N a point (u, v) satisfies u v^N = 1."
        );
        for step in &self.steps {
            let i = &step.intersection;
            let trivial = i.points.iter().filter(|p| p.forces_trivial).count();
            let _ = writeln!(
                out,
                "   n = {}, N = n*d = {}: {} intersection point(s), {} with u = v^(-N) = 1{}",
                step.n,
                step.slope_denominator,
                i.points.len(),
                trivial,
                if step.all_forced_trivial() { "." } else { "  <-- NOT ALL TRIVIAL" }
            );
            for p in &i.points {
                if let PointClass::UnitRoot { order, index } = p.class {
                    let _ = writeln!(
                        out,
                        "      v = exp(2 pi i * {index}/{order}), u = {}",
                        if p.forces_trivial { "1" } else { "a nontrivial root of unity" }
                    );
                }
            }
        }
        if self.contradiction_holds() {
            let _ = writeln!(
                out,
                "5. Meridian eigenvalue u = 1 at every point: an SU(2) representation sending the"
            );
            let _ = writeln!(
                out,
                "   meridian to I is trivial, because the meridian normally generates the knot group."
            );
            let _ = write!(
                out,
                "   No irreducible representation can land on these slopes: contradiction."
            );
        } else {
            let _ = write!(out, "5. Some point has u != 1; the contradiction does not close.");
        }
        out
    }
}

fn factorization_text(dec: &TrivialDecomposition) -> String {
    let mut parts = vec!["(L - 1)".to_string()];
    for f in &dec.profile.factors {
        parts.push(format!(
            "Phi_{}(L) [= {}]",
            f.order,
            crate::structure::cyclotomic(f.order).expect("order >= 1")
        ));
    }
    let sign = if dec.sign < 0 { "-" } else { "" };
    format!("{sign}{}", parts.join(" * "))
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.narrative())
    }
}

/// Replays the contradiction for `deg_M = 0`: with `d` the product of the
/// cyclotomic orders, every curve point on the `1/(n d)` surgery line has
/// meridian eigenvalue `u = 1`.
pub fn replay_contradiction(a: &BivarPoly, n_max: u32, tolerance: f64) -> Result<ReplayReport> {
    let a = a.normalized()?;
    let decomposition = mdeg_trivial_decomposition(&a)?;
    let mut steps = Vec::new();
    if let MdegTrivialOutcome::Decomposed(dec) = &decomposition {
        let d = u32::try_from(dec.d()).map_err(|_| {
            Error::InvalidKnot(format!("cyclotomic order product {} is too large", dec.d()))
        })?;
        for n in 1..=n_max {
            let slope_denominator = n * d;
            match surgery_intersection(&a, slope_denominator, tolerance)? {
                SurgeryOutcome::Points(intersection) => steps.push(ReplayStep {
                    n,
                    slope_denominator,
                    intersection,
                }),
                SurgeryOutcome::CurveContainsLine => {
                    unreachable!("a nonzero polynomial in L alone never vanishes on a surgery line")
                }
            }
        }
    }
    Ok(ReplayReport {
        polynomial: a,
        decomposition,
        n_max,
        steps,
    })
}

impl Serialize for ReplayReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct StepJson {
            n: u32,
            slope_denominator: u32,
            points: usize,
            forced_trivial: usize,
            all_forced_trivial: bool,
        }
        let steps: Vec<StepJson> = self
            .steps
            .iter()
            .map(|s| StepJson {
                n: s.n,
                slope_denominator: s.slope_denominator,
                points: s.intersection.points.len(),
                forced_trivial: s
                    .intersection
                    .points
                    .iter()
                    .filter(|p| p.forces_trivial)
                    .count(),
                all_forced_trivial: s.all_forced_trivial(),
            })
            .collect();
        let mut st = s.serialize_struct("ReplayReport", 7)?;
        st.serialize_field("polynomial", &self.polynomial.to_string())?;
        st.serialize_field(
            "orders",
            &match &self.decomposition {
                MdegTrivialOutcome::Decomposed(dec) => Some(dec.profile.orders()),
                MdegTrivialOutcome::Violation(_) => None,
            },
        )?;
        st.serialize_field("d", &self.d())?;
        st.serialize_field("violation", &self.violation().map(ToString::to_string))?;
        st.serialize_field("n_max", &self.n_max)?;
        st.serialize_field("steps", &steps)?;
        st.serialize_field("contradiction", &self.contradiction_holds())?;
        st.end()
    }
}

/// Number of primitive `e`-th roots, i.e. points contributed by `Phi_e`.
pub fn points_per_order(e: u64) -> u64 {
    euler_phi(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(terms: &[(i64, u32, u32)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().copied())
    }
    fn lm1() -> BivarPoly {
        bp(&[(1, 0, 1), (-1, 0, 0)])
    }
    fn points(a: &BivarPoly, n: u32) -> SurgeryIntersection {
        match surgery_intersection(a, n, DEFAULT_TOLERANCE).unwrap() {
            SurgeryOutcome::Points(p) => p,
            SurgeryOutcome::CurveContainsLine => panic!("line contained"),
        }
    }

    #[test]
    fn unknot_meets_every_line_at_the_identity() {
        let i = points(&lm1(), 5);
        assert_eq!(i.points.len(), 1);
        let p = i.points[0];
        assert!(p.forces_trivial);
        assert_eq!(p.point.v, Complex64::new(1.0, 0.0));
        assert_eq!(p.point.u, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn l_squared_minus_one_at_slope_half() {
        let a = &lm1() * &bp(&[(1, 0, 1), (1, 0, 0)]);
        let i = points(&a, 2);
        assert_eq!(i.points.len(), 2);
        assert!(i.points.iter().all(|p| p.forces_trivial));
        let mut orders: Vec<u64> = i
            .points
            .iter()
            .map(|p| match p.class {
                PointClass::UnitRoot { order, .. } => order,
                PointClass::NonUnit => 0,
            })
            .collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2]);
    }

    #[test]
    fn cube_roots_of_minus_one() {
        // L + M^2 at N = 1 restricts to v^3 + 1
        let i = points(&bp(&[(1, 0, 1), (1, 2, 0)]), 1);
        assert_eq!(i.restricted, UnivarPoly::from_i64(&[1, 0, 0, 1]));
        assert_eq!(i.points.len(), 3);
        assert!(i.points.iter().all(|p| !p.forces_trivial));
        for p in &i.points {
            let check = p.point.u * p.point.v - 1.0;
            assert!(check.norm() < 1e-12);
        }
    }

    #[test]
    fn line_contained_in_curve() {
        // L*M - 1 vanishes identically on u v = 1.
        let a = bp(&[(1, 1, 1), (-1, 0, 0)]);
        assert_eq!(
            surgery_intersection(&a, 1, DEFAULT_TOLERANCE).unwrap(),
            SurgeryOutcome::CurveContainsLine
        );
    }

    #[test]
    fn classify_examples() {
        let (f, r) = classify_unit_root(&UnivarPoly::from_i64(&[-1, 0, 1]), 10);
        assert_eq!((f, r.is_unit()), (vec![(1, 1), (2, 1)], true));
        let (f, r) = classify_unit_root(&UnivarPoly::from_i64(&[1, 0, 1]), 10);
        assert_eq!((f, r.is_unit()), (vec![(4, 1)], true));
        let (f, r) = classify_unit_root(&UnivarPoly::from_i64(&[-3, 1]), 10);
        assert_eq!((f, r), (vec![], UnivarPoly::from_i64(&[-3, 1])));
    }

    #[test]
    fn nonunit_roots_satisfy_both_equations() {
        let trefoil = &lm1() * &bp(&[(1, 6, 1), (1, 0, 0)]);
        let a = &trefoil + &bp(&[(3, 1, 0)]);
        for n in 1..4 {
            let i = points(&a, n);
            for p in i.points.iter().filter(|p| p.class == PointClass::NonUnit) {
                assert!(p.surgery_residual < 1e-8);
                let r = a.eval_complex(p.point.u, p.point.v).norm()
                    / a.magnitude_at(p.point.u, p.point.v);
                assert!(r < 1e-8, "residual {r}");
            }
        }
    }

    #[test]
    fn replay_examples() {
        let a = &lm1() * &bp(&[(1, 0, 1), (1, 0, 0)]);
        let r = replay_contradiction(&a, 3, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.d(), Some(2));
        let dens: Vec<u32> = r.steps.iter().map(|s| s.slope_denominator).collect();
        assert_eq!(dens, vec![2, 4, 6]);
        assert!(r.contradiction_holds());

        let r = replay_contradiction(&lm1(), 2, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.d(), Some(1));
        assert!(r.steps.iter().all(|s| s.intersection.points.len() == 1));

        let phi3 = bp(&[(1, 0, 2), (1, 0, 1), (1, 0, 0)]);
        let phi4 = bp(&[(1, 0, 2), (1, 0, 0)]);
        let a = &(&lm1() * &phi3) * &phi4;
        let r = replay_contradiction(&a, 2, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.d(), Some(12));
        for s in &r.steps {
            assert_eq!(s.intersection.points.len(), 5);
            assert!(s.all_forced_trivial());
        }
        assert!(r.narrative().contains("d = 3 * 4 = 12"));
    }

    #[test]
    fn replay_rejects_nonzero_m_degree_and_reports_violations() {
        let a = bp(&[(1, 1, 1), (1, 0, 0)]);
        assert_eq!(
            replay_contradiction(&a, 2, DEFAULT_TOLERANCE),
            Err(Error::NonzeroMDegree(1))
        );
        let bad = &lm1() * &bp(&[(1, 0, 1), (-2, 0, 0)]);
        let r = replay_contradiction(&bad, 2, DEFAULT_TOLERANCE).unwrap();
        assert!(r.violation().is_some());
        assert!(r.steps.is_empty());
        assert!(!r.contradiction_holds());
    }

    #[test]
    fn trefoil_has_nontrivial_points_on_every_line() {
        let trefoil = &lm1() * &bp(&[(1, 6, 1), (1, 0, 0)]);
        for n in 1..=10 {
            let i = points(&trefoil, n);
            let nontrivial = i
                .points
                .iter()
                .any(|p| (p.point.u - 1.0).norm() > 1e-6);
            assert!(nontrivial, "N = {n}");
        }
    }
}
