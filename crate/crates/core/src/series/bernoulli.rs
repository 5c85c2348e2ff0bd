use super::{big, binomial, Rational};
use num_traits::{One, Zero};

/// Bernoulli numbers `B_0..=B_m` with `x/(e^x - 1) = sum B_m x^m / m!`
/// (so `B_1 = -1/2`).
pub fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(m + 1);
    table.push(Rational::one());
    for k in 1..=m {
        // sum_{j=0}^{k} binom(k+1, j) B_j = 0
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += big(binomial(k + 1, j)) * b;
        }
        table.push(-acc / big(binomial(k + 1, k)));
    }
    table
}

pub fn bernoulli(m: usize) -> Rational {
    bernoulli_table(m).pop().expect("table is never empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        let table = bernoulli_table(20);
        for k in 1..10 {
            assert!(table[2 * k + 1].is_zero(), "B_{} != 0", 2 * k + 1);
        }
    }

    #[test]
    fn von_staudt_clausen_denominators() {
        let table = bernoulli_table(12);
        for two_k in (2usize..=12).step_by(2) {
            let expected: i64 = (2..=two_k as i64 + 1)
                .filter(|&p| (2..p).all(|d| p % d != 0))
                .filter(|&p| two_k as i64 % (p - 1) == 0)
                .product();
            assert_eq!(*table[two_k].denom(), expected.into(), "B_{two_k}");
        }
    }
}
