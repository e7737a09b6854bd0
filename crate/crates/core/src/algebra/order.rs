use std::cmp::Ordering;
use std::fmt;

use super::ring::Monomial;

/// Monomial orders understood by the engine.
///
/// `cmp(a, b) == Greater` means `a` is the larger monomial, i.e. it would be
/// the leading term. The local order makes `1` the largest monomial, which is
/// what computations in the localization at the origin require.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    NegDegRevLex,
    /// Consecutive blocks of variables, each compared by degrevlex; an
    /// earlier block dominates every later one.
    Elimination(Vec<usize>),
}

fn revlex_tiebreak(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex_tiebreak(a, b))
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::NegDegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                db.cmp(&da).then_with(|| revlex_tiebreak(a, b))
            }
            MonomialOrder::Elimination(blocks) => {
                let mut start = 0;
                for &len in blocks {
                    let end = (start + len).min(a.len());
                    let o = degrevlex(&a[start..end], &b[start..end]);
                    if o != Ordering::Equal {
                        return o;
                    }
                    start = end;
                }
                if start < a.len() {
                    degrevlex(&a[start..], &b[start..])
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn is_global(&self) -> bool {
        !self.is_local()
    }

    pub fn is_local(&self) -> bool {
        matches!(self, MonomialOrder::NegDegRevLex)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "global-degrevlex".into(),
            MonomialOrder::Lex => "global-lex".into(),
            MonomialOrder::NegDegRevLex => "local-negdegrevlex".into(),
            MonomialOrder::Elimination(b) => format!(
                "elimination({})",
                b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn local_order_puts_one_on_top() {
        let o = MonomialOrder::NegDegRevLex;
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn degrevlex_tiebreak() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn elimination_dominates_by_first_block() {
        let o = MonomialOrder::Elimination(vec![1, 2]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[1, 1, 0])), Ordering::Less);
    }
}
