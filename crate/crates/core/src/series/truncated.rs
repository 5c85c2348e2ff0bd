use super::{int, CoefficientRing, Rational, RingOps};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// Power series in one variable with every term of degree `> order` dropped.
///
/// The coefficient vector always has length `order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: CoefficientRing> TruncatedSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coefficients(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero_value());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![C::zero_value(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one_value())
    }

    pub fn constant(order: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^degree`; the zero series when `degree > order`.
    pub fn monomial(order: usize, degree: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The formal variable `x`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(order, 1, C::one_value())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &C {
        &self.coeffs[degree]
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coefficients(order, self.coeffs.clone())
    }

    /// Applies `f` to every coefficient.
    pub fn map<D: CoefficientRing>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, C::plus))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, C::minus))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![C::zero_value(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_value() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if b.is_zero_value() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// `exp(a) = sum a^k / k!`, defined when the constant term vanishes.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_value() {
            return Err(Error::NonzeroConstant);
        }
        // f' = a' f  =>  k f_k = sum_{j=1}^{k} j a_j f_{k-j}
        let order = self.order();
        let mut f: Vec<C> = Vec::with_capacity(order + 1);
        f.push(C::one_value());
        for k in 1..=order {
            let mut acc = C::zero_value();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if a.is_zero_value() {
                    continue;
                }
                acc = acc.plus(&a.times(&f[k - j]).scale(&int(j as i64)));
            }
            f.push(acc.scale(&Rational::new(One::one(), k.into())));
        }
        Ok(Self { coeffs: f })
    }

    /// `log(a) = sum (-1)^{k+1} (a-1)^k / k`, defined when the constant term is 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].minus(&C::one_value()).is_zero_value() {
            return Err(Error::ConstantNotOne);
        }
        // a' = l' a  =>  k l_k = k a_k - sum_{j=1}^{k-1} j l_j a_{k-j}
        let order = self.order();
        let mut l: Vec<C> = Vec::with_capacity(order + 1);
        l.push(C::zero_value());
        for k in 1..=order {
            let mut acc = self.coeffs[k].scale(&int(k as i64));
            for (j, lj) in l.iter().enumerate().take(k).skip(1) {
                if lj.is_zero_value() {
                    continue;
                }
                acc = acc.minus(&lj.times(&self.coeffs[k - j]).scale(&int(j as i64)));
            }
            l.push(acc.scale(&Rational::new(One::one(), k.into())));
        }
        Ok(Self { coeffs: l })
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let lead = self.coeffs[0]
            .as_rational()
            .filter(|r| !r.is_zero())
            .ok_or(Error::NonUnitConstant)?;
        let lead_inv = lead.recip();
        let order = self.order();
        let mut b: Vec<C> = Vec::with_capacity(order + 1);
        b.push(C::from_rational(&lead_inv));
        for k in 1..=order {
            let mut acc = C::zero_value();
            for j in 1..=k {
                if self.coeffs[j].is_zero_value() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[j].times(&b[k - j]));
            }
            b.push(acc.scale(&-lead_inv.clone()));
        }
        Ok(Self { coeffs: b })
    }
}

impl<C: CoefficientRing> RingOps for TruncatedSeries<C> {
    fn plus(&self, other: &Self) -> Self {
        self.add(other).expect("series orders must agree")
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other).expect("series orders must agree")
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other).expect("series orders must agree")
    }
    fn negate(&self) -> Self {
        self.map(C::negate)
    }
    fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries::scale(self, r)
    }
    fn is_zero_value(&self) -> bool {
        self.coeffs.iter().all(C::is_zero_value)
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Self::one(self.order())
    }
}

impl TruncatedSeries<Rational> {
    /// Convenience constructor from integer coefficients.
    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coefficients(order, coeffs.iter().map(|&c| int(c)).collect())
    }
}

impl<C: CoefficientRing> TruncatedSeries<C> {
    pub fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero_value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{factorial, rat};
    use proptest::prelude::*;

    type S = TruncatedSeries<Rational>;

    fn exp_x(order: usize, sign: i64) -> S {
        S::from_coefficients(
            order,
            (0..=order)
                .map(|k| int(sign.pow(k as u32)) / factorial(k))
                .collect(),
        )
    }

    // Direct definitions, used as oracles for the recurrences.
    fn exp_by_definition(a: &S) -> S {
        let mut acc = S::one(a.order());
        let mut power = S::one(a.order());
        for k in 1..=a.order() {
            power = power.mul(a).unwrap();
            acc = acc.add(&power.scale(&factorial(k).recip())).unwrap();
        }
        acc
    }

    fn log_by_definition(a: &S) -> S {
        let u = a.sub(&S::one(a.order())).unwrap();
        let mut acc = S::zero(a.order());
        let mut power = S::one(a.order());
        for k in 1..=a.order() {
            power = power.mul(&u).unwrap();
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&rat(sign, k as i64))).unwrap();
        }
        acc
    }

    #[test]
    fn products() {
        let a = S::from_ints(3, &[1, 1]);
        let b = S::from_ints(3, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), S::from_ints(3, &[1, 0, -1, 0]));
        let c = S::from_ints(1, &[1, 1]);
        assert_eq!(c.mul(&c).unwrap(), S::from_ints(1, &[1, 2]));
        assert!(exp_x(5, 1).mul(&exp_x(5, -1)).unwrap().is_one());
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = S::one(2);
        let b = S::one(3);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch { left: 2, right: 3 }));
        assert!(a.add(&b).is_err());
        assert_eq!(S::new(vec![]), Err(Error::EmptySeries));
    }

    #[test]
    fn exp_examples() {
        let x = S::variable(3);
        let expected = S::from_coefficients(3, vec![int(1), int(1), rat(1, 2), rat(1, 6)]);
        assert_eq!(x.exp().unwrap(), expected);
        assert!(S::zero(4).exp().unwrap().is_one());
        let log1px = S::from_ints(4, &[1, 1]).log().unwrap();
        assert_eq!(log1px.exp().unwrap(), S::from_ints(4, &[1, 1]));
        assert_eq!(S::one(2).exp(), Err(Error::NonzeroConstant));
    }

    #[test]
    fn log_examples() {
        let expected = S::from_coefficients(3, vec![int(0), int(1), rat(-1, 2), rat(1, 3)]);
        assert_eq!(S::from_ints(3, &[1, 1]).log().unwrap(), expected);
        assert!(S::one(3).log().unwrap().is_zero_value());
        assert_eq!(exp_x(5, 1).log().unwrap(), S::variable(5));
        assert_eq!(S::from_ints(2, &[2, 1]).log(), Err(Error::ConstantNotOne));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            S::from_ints(3, &[1, -1]).inverse().unwrap(),
            S::from_ints(3, &[1, 1, 1, 1])
        );
        assert_eq!(
            S::from_ints(2, &[2]).inverse().unwrap(),
            S::from_coefficients(2, vec![rat(1, 2)])
        );
        let sq = S::from_ints(2, &[1, 2, 1]);
        let inv = sq.inverse().unwrap();
        assert_eq!(inv, S::from_ints(2, &[1, -2, 3]));
        assert!(sq.mul(&inv).unwrap().is_one());
        assert_eq!(
            S::from_ints(2, &[0, 1]).inverse(),
            Err(Error::NonUnitConstant)
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn series_of(order: usize) -> impl Strategy<Value = S> {
        prop::collection::vec(small_rational(), order + 1)
            .prop_map(move |c| S::from_coefficients(order, c))
    }

    fn triple() -> impl Strategy<Value = (S, S, S)> {
        (0usize..=12).prop_flat_map(|o| (series_of(o), series_of(o), series_of(o)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn truncation_locality((a, b, _c) in triple(), k in 0usize..=12) {
            let k = k.min(a.order());
            let full = a.mul(&b).unwrap().truncate(k);
            let low = a.truncate(k).mul(&b.truncate(k)).unwrap();
            prop_assert_eq!(full, low);
        }

        #[test]
        fn exp_log_roundtrip((a, b, _c) in (0usize..=8).prop_flat_map(|o| (series_of(o), series_of(o), series_of(o)))) {
            let mut unit = a.into_coefficients();
            unit[0] = int(1);
            let unit = S::new(unit).unwrap();
            let mut nil = b.into_coefficients();
            nil[0] = int(0);
            let nil = S::new(nil).unwrap();

            prop_assert_eq!(unit.log().unwrap().exp().unwrap(), unit.clone());
            prop_assert_eq!(nil.exp().unwrap().log().unwrap(), nil.clone());
            prop_assert_eq!(nil.exp().unwrap(), exp_by_definition(&nil));
            prop_assert_eq!(unit.log().unwrap(), log_by_definition(&unit));
        }

        #[test]
        fn inverse_is_multiplicative_inverse((a, _b, _c) in triple(), lead in 1i64..5) {
            let mut coeffs = a.into_coefficients();
            coeffs[0] = int(lead);
            let a = S::new(coeffs).unwrap();
            prop_assert!(a.mul(&a.inverse().unwrap()).unwrap().is_one());
        }
    }
}
