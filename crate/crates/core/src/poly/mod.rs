//! Exact integer polynomials in one and two variables, the elimination
//! carrier in `t`, resultants, gcds and root finding.

mod bivar;
mod bigcd;
mod resultant;
pub mod roots;
mod univar;

pub use bigcd::{gcd_bivar, split_m_content, squarefree_bivar};
pub use bivar::{BivarPoly, Exponent, Normalized, Stripped};
pub use resultant::{resultant_t, TriPolyInT};
pub use univar::{gcd_univar, squarefree_decomposition, squarefree_univar, UnivarPoly};

pub(crate) use univar::big_to_f64;

use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Joins signed terms as `c*X^a*Y^b`, omitting unit coefficients and unit
/// exponents. Terms must already be in display order.
pub(crate) fn print_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (BigInt, Vec<(char, u32)>)>,
{
    let mut out = String::new();
    for (c, vars) in terms {
        let vars: Vec<String> = vars
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
