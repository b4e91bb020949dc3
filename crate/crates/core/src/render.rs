//! Canonical text rendering shared by coefficients, normal forms and symbols.

use crate::scalar::Scalar;

/// Render a sum of terms `scalar · h^k · monomial`, in the order given.
/// `monomial` is the already-rendered basis element ("" for the identity).
pub fn render_terms(terms: impl IntoIterator<Item = (Scalar, u32, String)>) -> String {
    let mut out = String::new();
    for (i, (s, k, mono)) in terms.into_iter().enumerate() {
        let (neg, s) = if s.leading_negative() { (true, s.neg()) } else { (false, s) };
        let mut factors: Vec<String> = Vec::new();
        let bare = k == 0 && mono.is_empty();
        if !s.is_one() || bare {
            if s.is_compound() {
                factors.push(format!("({})", s.render()));
            } else {
                factors.push(s.render());
            }
        }
        match k {
            0 => {}
            1 => factors.push("h".to_string()),
            _ => factors.push(format!("h^{k}")),
        }
        if !mono.is_empty() {
            factors.push(mono);
        }
        let body = factors.join(" ");
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// `name`, `name^k` or `name^(a/b)` for a rational exponent.
pub fn render_power(name: &str, num: i64, den: i64) -> String {
    match crate::ring::render_q_exponent(num, den) {
        None => name.to_string(),
        Some(e) => format!("{name}{e}"),
    }
}
