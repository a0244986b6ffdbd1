//! LaTeX display of matrices. Lossy: the ring descriptor is not rendered.

use std::fmt::Write;

use lkb_core::braid::compact_label;
use lkb_core::group::GroupElement;
use lkb_core::matrix::RepMatrix;
use lkb_core::ring::RingElement;
use num_bigint::{BigInt, Sign};

fn variable_names(rank: usize) -> Vec<String> {
    match rank {
        1 => vec!["q".into()],
        2 => vec!["q_1".into(), "q_2".into()],
        _ => (1..=rank).map(|k| format!("x_{{{k}}}")).collect(),
    }
}

fn power(out: &mut Vec<String>, name: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{{{e}}}")),
    }
}

/// `x^v t^c` as a product of powers, empty for the identity.
fn monomial(g: &GroupElement, names: &[String]) -> String {
    let mut factors = Vec::new();
    for (name, &e) in names.iter().zip(g.v()) {
        power(&mut factors, name, e);
    }
    power(&mut factors, "t", g.c());
    factors.join(" ")
}

/// Signed sum of monomials, e.g. `q_2 - q_1 t`.
pub fn ring_element(a: &RingElement) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let names = variable_names(a.ring().rank());
    let mut out = String::new();
    for (k, (g, x)) in a.terms().enumerate() {
        let negative = x.sign() == Sign::Minus;
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag: BigInt = if negative { -x } else { x.clone() };
        let mono = monomial(g, &names);
        if mono.is_empty() {
            write!(out, "{mag}").unwrap();
        } else if mag == BigInt::from(1) {
            out.push_str(&mono);
        } else {
            write!(out, "{mag} {mono}").unwrap();
        }
    }
    out
}

/// A `pmatrix` in basis order, preceded by a comment naming the basis.
pub fn matrix(m: &RepMatrix) -> String {
    let keys = m.keys();
    let mut out = String::new();
    let labels: Vec<String> = keys.iter().map(compact_label).collect();
    writeln!(out, "% basis: {}", labels.join(", ")).unwrap();
    out.push_str("\\begin{pmatrix}\n");
    for (k, r) in keys.iter().enumerate() {
        let cells: Vec<String> = keys.iter().map(|c| m.get(r, c).map_or_else(|| "0".into(), ring_element)).collect();
        out.push_str(&cells.join(" & "));
        out.push_str(if k + 1 < keys.len() { " \\\\\n" } else { "\n" });
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lkb_core::braid::{classical_matrix, sigma_matrix};
    use lkb_core::group::theta_group;

    #[test]
    fn entries() {
        let th = theta_group();
        let m = |c: i64, v: [i64; 2], t: i64| RingElement::monomial(&th, c, th.normalize(&v, t).unwrap());
        assert_eq!(ring_element(&m(-1, [1, 1], 1)), "-q_1 q_2 t");
        assert_eq!(ring_element(&(&m(1, [0, 1], 0) - &m(1, [1, 0], 1))), "q_2 - q_1 t");
        assert_eq!(ring_element(&(&m(3, [0, 0], 0) + &m(-2, [0, -2], -1))), "-2 q_2^{-2} t^{-1} + 3");
        assert_eq!(ring_element(&RingElement::zero(&th)), "0");
        assert_eq!(ring_element(&RingElement::one(&th)), "1");
    }

    #[test]
    fn matrices() {
        let s = matrix(&sigma_matrix(3, 1).unwrap());
        assert_eq!(
            s,
            "% basis: 20, 11, 02\n\\begin{pmatrix}\n-q_1 q_2 t & -q_1 q_2 + q_1 q_2 t & q_1 q_2 \\\\\n0 & -q_1 & q_1 \\\\\n0 & 0 & 1\n\\end{pmatrix}\n"
        );
        let c = matrix(&classical_matrix(3, 1).unwrap());
        assert!(c.contains("-q_2^{2} t"), "{c}");
    }
}
