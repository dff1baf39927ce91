use std::cmp::Ordering;

use crate::poly::{Mono, Poly, Rat};

/// Monomial orders usable in the localization at the origin.
///
/// Under a local order `1` is the largest monomial, so the leading term of a
/// polynomial sits among its terms of lowest total degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LocalOrder {
    /// Lower total degree is larger; ties broken reverse lexicographically,
    /// so `x1 > x2 > ... > xn` among the variables.
    #[default]
    NegDegRevLex,
}

impl LocalOrder {
    /// `Greater` means `a` is the larger (more leading) monomial.
    pub fn compare(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            LocalOrder::NegDegRevLex => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| revlex(a.exponents(), b.exponents())),
        }
    }

    pub fn leading_term(self, p: &Poly) -> Option<(&Mono, &Rat)> {
        p.terms().max_by(|s, t| self.compare(s.0, t.0))
    }

    pub fn leading_monomial(self, p: &Poly) -> Option<Mono> {
        self.leading_term(p).map(|(m, _)| m.clone())
    }

    /// Total degree minus the degree of the leading monomial.
    pub fn ecart(self, p: &Poly) -> u32 {
        match (p.total_degree(), self.leading_term(p)) {
            (Some(d), Some((m, _))) => d - m.degree(),
            _ => 0,
        }
    }

    /// Sorts largest first.
    pub fn sort_descending(self, monos: &mut [Mono]) {
        monos.sort_by(|a, b| self.compare(b, a));
    }
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn m(e: &[u32]) -> Mono {
        Mono::from_exponents(e.to_vec())
    }

    #[test]
    fn one_is_largest() {
        let o = LocalOrder::default();
        for e in [[1, 0], [0, 1], [3, 2]] {
            assert_eq!(o.compare(&m(&[0, 0]), &m(&e)), Ordering::Greater);
        }
    }

    #[test]
    fn variables_in_order() {
        let o = LocalOrder::default();
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2]), &m(&[1, 1])), Ordering::Less);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn leading_term_and_ecart() {
        let o = LocalOrder::default();
        let p = parse_poly("x^2 + y^3", &["x", "y"]).unwrap();
        assert_eq!(o.leading_monomial(&p), Some(m(&[2, 0])));
        assert_eq!(o.ecart(&p), 1);
        let q = parse_poly("1 + x", &["x", "y"]).unwrap();
        assert_eq!(o.leading_monomial(&q), Some(m(&[0, 0])));
    }
}
