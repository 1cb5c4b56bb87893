//! Gcd and square-free parts in `Z[M, L]`, viewing polynomials as elements
//! of `Z[M][L]` and running a primitive remainder sequence in `L`.

use num_traits::Zero;

use super::{gcd_univar, squarefree_univar, BivarPoly, UnivarPoly};
use crate::error::{Error, Result};

type Rows = Vec<UnivarPoly>;

fn trim(mut rows: Rows) -> Rows {
    while rows.last().is_some_and(UnivarPoly::is_zero) {
        rows.pop();
    }
    rows
}

fn degree(rows: &Rows) -> Option<usize> {
    rows.len().checked_sub(1)
}

/// Gcd in `Z[M]` of the `L`-coefficients.
fn content(rows: &Rows) -> UnivarPoly {
    let mut g = UnivarPoly::zero();
    for r in rows {
        if r.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            r.clone()
        } else {
            gcd_univar(&g, r).expect("nonzero argument")
        };
        if g.degree() == Some(0) && g.is_unit() {
            break;
        }
    }
    g
}

fn primitive(rows: &Rows) -> Rows {
    let c = content(rows);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Rows = rows
        .iter()
        .map(|r| r.div_exact(&c).expect("content divides each coefficient"))
        .collect();
    if out
        .last()
        .and_then(UnivarPoly::leading_coeff)
        .is_some_and(|c| c < &num_bigint::BigInt::zero())
    {
        out = out.iter().map(|r| -r).collect();
    }
    out
}

fn pseudo_rem(a: &Rows, b: &Rows) -> Rows {
    let db = degree(b).expect("pseudo-remainder by zero");
    let lc = &b[db];
    let mut rem = a.clone();
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let lr = rem[dr].clone();
        let mut next: Rows = rem.iter().map(|r| r * lc).collect();
        for (k, bc) in b.iter().enumerate() {
            next[dr - db + k] = &next[dr - db + k] - &(bc * &lr);
        }
        rem = trim(next);
    }
    rem
}

fn rows_of(p: &BivarPoly) -> Rows {
    trim(p.l_coefficients())
}

/// Gcd in `Z[M, L]`, normalized so that the leading term under graded-lex
/// with `L > M` is positive.
pub fn gcd_bivar(f: &BivarPoly, g: &BivarPoly) -> Result<BivarPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if f.is_zero() || g.is_zero() {
        let nz = if f.is_zero() { g } else { f };
        return Ok(sign_normalized(nz.clone()));
    }
    let (fa, ga) = (rows_of(f), rows_of(g));
    let c = gcd_univar(&content(&fa), &content(&ga))?;
    let (mut a, mut b) = (primitive(&fa), primitive(&ga));
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    let a = primitive(&a);
    let rows: Rows = a.iter().map(|r| r * &c).collect();
    Ok(sign_normalized(BivarPoly::from_l_coefficients(&rows)))
}

fn sign_normalized(p: BivarPoly) -> BivarPoly {
    if p.leading_term().is_some_and(|(_, c)| c < &num_bigint::BigInt::zero()) {
        -&p
    } else {
        p
    }
}

/// Splits `f` into its `Z[M]`-content (positive leading coefficient) and the
/// primitive part in `Z[M][L]`.
pub fn split_m_content(f: &BivarPoly) -> Result<(UnivarPoly, BivarPoly)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("split_m_content"));
    }
    let rows = rows_of(f);
    let c = content(&rows).primitive_part();
    let prim: Rows = rows
        .iter()
        .map(|r| r.div_exact(&c).expect("content divides each coefficient"))
        .collect();
    Ok((c, BivarPoly::from_l_coefficients(&prim)))
}

/// Product of the distinct irreducible factors of `f`, up to an integer
/// constant: the `Z[M]`-content is made square-free separately, and the
/// primitive part is divided by its gcd with `d/dL`.
pub fn squarefree_bivar(f: &BivarPoly) -> Result<BivarPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_bivar"));
    }
    let rows = rows_of(f);
    let cont = content(&rows);
    let prim = BivarPoly::from_l_coefficients(&primitive(&rows));
    let cont_part = BivarPoly::from_univar_m(&squarefree_univar(&cont)?);
    let prim_part = if prim.deg_l()? == 0 {
        BivarPoly::one()
    } else {
        let g = gcd_bivar(&prim, &prim.derivative_l())?;
        prim.div_exact(&g).expect("gcd divides its argument")
    };
    Ok(sign_normalized(&cont_part * &prim_part))
}
