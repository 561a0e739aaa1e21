use std::cmp::Ordering;

use crate::polyparse::Monomial;

/// Global monomial orders understood by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Block order: degree-reverse-lexicographic on the variables flagged in
    /// `mask` first, ties broken by degree-reverse-lexicographic on the rest.
    /// Any monomial containing a flagged variable beats every monomial free of
    /// them, which is what elimination needs.
    Elimination {
        mask: u64,
    },
    /// Homogenized local degree order on `k[x_0..x_{n-1}, h]` with `h` the
    /// last variable: total degree first, then the negative degree reverse
    /// lexicographic order on the `x`-part. Gröbner bases of homogenized
    /// generators for this order dehomogenize to standard bases at the origin.
    LocalHomogenized,
}

fn revlex_tiebreak(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

fn masked_degree(m: &[u32], mask: u64, inside: bool) -> u32 {
    m.iter()
        .enumerate()
        .filter(|(i, _)| ((mask >> i) & 1 == 1) == inside)
        .map(|(_, e)| e)
        .sum()
}

fn masked_revlex(a: &[u32], b: &[u32], mask: u64, inside: bool) -> Ordering {
    for i in (0..a.len()).rev() {
        if ((mask >> i) & 1 == 1) != inside {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| revlex_tiebreak(a, b))
            }
            MonomialOrder::Elimination { mask } => masked_degree(a, mask, true)
                .cmp(&masked_degree(b, mask, true))
                .then_with(|| masked_revlex(a, b, mask, true))
                .then_with(|| masked_degree(a, mask, false).cmp(&masked_degree(b, mask, false)))
                .then_with(|| masked_revlex(a, b, mask, false)),
            MonomialOrder::LocalHomogenized => {
                let n = a.len() - 1;
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                let (xa, xb): (u32, u32) = (a[..n].iter().sum(), b[..n].iter().sum());
                da.cmp(&db)
                    .then_with(|| xb.cmp(&xa))
                    .then_with(|| revlex_tiebreak(&a[..n], &b[..n]))
            }
        }
    }

    /// True when the order refines total degree, so that any degree bound on
    /// a leading monomial bounds the whole polynomial.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(
            self,
            MonomialOrder::DegRevLex | MonomialOrder::LocalHomogenized
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = MonomialOrder::Elimination { mask: 0b100 };
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn local_prefers_low_x_degree() {
        let o = MonomialOrder::LocalHomogenized;
        // x*h beats x^2 at equal total degree
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    fn exps(n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..4, n)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in exps(4), b in exps(4), w in exps(4)) {
            let orders = [
                MonomialOrder::Lex,
                MonomialOrder::DegRevLex,
                MonomialOrder::Elimination { mask: 0b0101 },
                MonomialOrder::LocalHomogenized,
            ];
            let (a, b, w) = (m(&a), m(&b), m(&w));
            for o in orders {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                prop_assert!(o.cmp(&a.mul(&w), &a) != Ordering::Less);
            }
        }
    }
}
