use crate::fieldlin::Scalar;
use crate::grassmann::{BasisMask, Multivector};

fn monomial(m: BasisMask) -> String {
    let idx: Vec<String> = m.indices().iter().map(|i| i.to_string()).collect();
    format!("e{{{}}}", idx.join(","))
}

/// `|c|·e_m` without its sign; coefficient 1 is dropped on monomials.
fn unsigned_term(m: BasisMask, c: &Scalar) -> String {
    let c = c.abs();
    if m.grade() == 0 {
        c.to_string()
    } else if c.is_one() {
        monomial(m)
    } else {
        format!("{c}*{}", monomial(m))
    }
}

/// Canonical text: terms by grade then mask, e.g. `1 + 2*e{1} - 1/2*e{1,3}`.
/// Residues print as their representative in `0..p`, so they never carry a
/// sign. The output parses back to the same element.
pub fn format_multivector(a: &Multivector) -> String {
    let mut out = String::new();
    for (k, (m, c)) in a.terms().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&unsigned_term(m, c));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
