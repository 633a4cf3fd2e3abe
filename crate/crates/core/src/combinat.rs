//! Exact binomial coefficients and factorials with memoization.

use dashu::integer::UBig;

/// Pascal's triangle, grown row by row on demand.
#[derive(Clone, Debug, Default)]
pub struct Binomials {
    rows: Vec<Vec<UBig>>,
}

impl Binomials {
    pub fn new() -> Self {
        Binomials { rows: vec![vec![UBig::ONE]] }
    }

    /// C(n, k); zero when k < 0, n < 0 or k > n.
    pub fn get(&mut self, n: i64, k: i64) -> UBig {
        if n < 0 || k < 0 || k > n {
            return UBig::ZERO;
        }
        let (n, k) = (n as usize, k as usize);
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(UBig::ONE);
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(UBig::ONE);
            self.rows.push(row);
        }
        self.rows[n][k].clone()
    }
}

pub fn factorial(n: usize) -> UBig {
    (2..=n).fold(UBig::ONE, |acc, k| acc * k)
}

/// (2l-1)!! = 1 * 3 * ... * (2l-1), with (-1)!! = 1.
pub fn double_factorial_odd(l: usize) -> UBig {
    (1..=l).fold(UBig::ONE, |acc, i| acc * (2 * i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let mut b = Binomials::new();
        assert_eq!(b.get(5, 2), UBig::from(10u32));
        assert_eq!(b.get(30, 15), UBig::from(155117520u32));
        assert_eq!(b.get(3, 4), UBig::ZERO);
        assert_eq!(b.get(-1, 0), UBig::ZERO);
        assert_eq!(factorial(5), UBig::from(120u32));
        assert_eq!(double_factorial_odd(3), UBig::from(15u32));
        assert_eq!(double_factorial_odd(0), UBig::ONE);
    }
}
