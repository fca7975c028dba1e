use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Polynomial with exact rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoly {
    pub coeffs: Vec<BigRational>,
}

impl HPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().expect("finite rational")).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs_f64().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

fn mul_linear(p: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    // p(x) (x - root)
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (e, c) in p.iter().enumerate() {
        out[e + 1] += c;
        out[e] -= c * root;
    }
    out
}

/// `h(x, s)` of degree `2s`: the interpolant through `(x_i, 2 H_i)` with
/// `x_i = [i(i+1) - 2s(s+1)] / 2` and `H_i` the `i`-th harmonic number,
/// shifted so that `h(s², s) = 0`.
pub fn h_poly(two_s: usize) -> HPoly {
    let t = two_s as i64;
    // 2s(s+1)/2 = t(t+2)/4
    let nodes: Vec<BigRational> = (0..=t).map(|l| rat(l * (l + 1), 2) - rat(t * (t + 2), 4)).collect();
    let mut harmonic = BigRational::zero();
    let mut coeffs = vec![BigRational::zero(); two_s + 1];
    for i in 1..=two_s {
        harmonic += rat(1, i as i64);
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for xl in nodes.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, x)| x) {
            basis = mul_linear(&basis, xl);
            denom *= &nodes[i] - xl;
        }
        let scale = &harmonic * rat(2, 1) / denom;
        for (c, b) in coeffs.iter_mut().zip(basis) {
            *c += b * &scale;
        }
    }
    let mut poly = HPoly { coeffs };
    let shift = poly.eval_exact(&rat(t * t, 4));
    poly.coeffs[0] -= shift;
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expect(two_s: usize, row: &[(i64, i64)]) {
        let got = h_poly(two_s);
        let want: Vec<BigRational> = row.iter().map(|&(n, d)| rat(n, d)).collect();
        assert_eq!(got.coeffs, want, "two_s = {two_s}");
    }

    #[test]
    fn small_spins() {
        expect(1, &[(-1, 2), (2, 1)]);
        expect(2, &[(0, 1), (1, 2), (-1, 2)]);
        expect(3, &[(-3, 4), (-1, 8), (1, 27), (2, 27)]);
        expect(4, &[(-1, 2), (13, 24), (43, 432), (-5, 216), (-1, 144)]);
    }

    #[test]
    fn highest_weight_value_vanishes() {
        for two_s in 1..=8 {
            let p = h_poly(two_s);
            assert_eq!(p.degree(), two_s);
            assert!(p.eval_exact(&rat((two_s * two_s) as i64, 4)).is_zero());
        }
    }

    #[test]
    fn float_evaluation() {
        let p = h_poly(1);
        assert_eq!(p.eval(0.25), 0.0);
        assert_eq!(p.eval(-0.75), -2.0);
    }
}
