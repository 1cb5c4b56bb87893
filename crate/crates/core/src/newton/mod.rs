//! Newton polygons of bivariate polynomials: exact lattice hulls, edge
//! slopes and vertical-edge detection.

mod svg;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;

pub use svg::render_svg;

/// Exponent vector `(i, j)`: `i` is the `M`-exponent, `j` the `L`-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub i: u32,
    pub j: u32,
}

impl LatticePoint {
    pub const fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Slope `dj/di` of an edge in lowest terms, or vertical when `di = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    /// `num/den` with `den > 0` and `gcd(num, den) = 1`.
    Rational { num: i64, den: i64 },
    Vertical,
}

impl Slope {
    fn between(a: LatticePoint, b: LatticePoint) -> Self {
        let di = i64::from(b.i) - i64::from(a.i);
        let dj = i64::from(b.j) - i64::from(a.j);
        if di == 0 {
            return Slope::Vertical;
        }
        let g = di.gcd(&dj);
        let (mut num, mut den) = (dj / g, di / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Slope::Rational { num, den }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Slope::Vertical => f.write_str("VERTICAL"),
            Slope::Rational { num, den: 1 } => write!(f, "{num}"),
            Slope::Rational { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub slope: Slope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    None,
    Point,
    Segment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<LatticePoint>,
    edges: Vec<Edge>,
    support: Vec<LatticePoint>,
    degeneracy: Degeneracy,
}

impl NewtonPolygon {
    /// Hull vertices, counterclockwise from the lexicographically smallest.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The points the hull was built from, sorted.
    pub fn support(&self) -> &[LatticePoint] {
        &self.support
    }

    pub fn degeneracy(&self) -> Degeneracy {
        self.degeneracy
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy != Degeneracy::None
    }

    /// True when `p` lies inside or on the hull (exact).
    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && (a.i.min(b.i)..=a.i.max(b.i)).contains(&p.i)
                    && (a.j.min(b.j)..=a.j.max(b.j)).contains(&p.j)
            }
            n => (0..n).all(|k| cross(self.vertices[k], self.vertices[(k + 1) % n], p) >= 0),
        }
    }
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    let (oi, oj) = (i64::from(o.i), i64::from(o.j));
    (i64::from(a.i) - oi) * (i64::from(b.j) - oj) - (i64::from(a.j) - oj) * (i64::from(b.i) - oi)
}

/// Exponent support of `p`.
pub fn support(p: &BivarPoly) -> Result<BTreeSet<LatticePoint>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("support"));
    }
    Ok(p.terms().map(|(e, _)| LatticePoint::new(e.m, e.l)).collect())
}

/// Monotone-chain hull with collinear points dropped. Panics on an empty set.
pub fn convex_hull(points: &BTreeSet<LatticePoint>) -> NewtonPolygon {
    assert!(!points.is_empty(), "convex hull of an empty point set");
    let pts: Vec<LatticePoint> = points.iter().copied().collect();
    let vertices = if pts.len() < 3 {
        pts.clone()
    } else {
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    };
    let degeneracy = match vertices.len() {
        1 => Degeneracy::Point,
        2 => Degeneracy::Segment,
        _ => Degeneracy::None,
    };
    let edges = match vertices.len() {
        1 => Vec::new(),
        2 => vec![Edge {
            start: vertices[0],
            end: vertices[1],
            slope: Slope::between(vertices[0], vertices[1]),
        }],
        n => (0..n)
            .map(|k| {
                let (a, b) = (vertices[k], vertices[(k + 1) % n]);
                Edge {
                    start: a,
                    end: b,
                    slope: Slope::between(a, b),
                }
            })
            .collect(),
    };
    NewtonPolygon {
        vertices,
        edges,
        support: pts,
        degeneracy,
    }
}

/// Newton polygon of a nonzero polynomial.
pub fn newton_polygon(p: &BivarPoly) -> Result<NewtonPolygon> {
    Ok(convex_hull(&support(p)?))
}

/// One slope per hull edge, in counterclockwise order.
pub fn edge_slopes(poly: &NewtonPolygon) -> Result<Vec<Slope>> {
    if poly.degeneracy == Degeneracy::Point {
        return Err(Error::SinglePointPolygon);
    }
    Ok(poly.edges.iter().map(|e| e.slope).collect())
}

pub fn has_vertical_edge(poly: &NewtonPolygon) -> Result<bool> {
    Ok(edge_slopes(poly)?.contains(&Slope::Vertical))
}
