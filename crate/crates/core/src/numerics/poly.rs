/// Real polynomial of degree at most four, coefficients in ascending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly {
    pub c: [f64; 5],
}

impl Poly {
    pub const fn new(c: [f64; 5]) -> Self {
        Poly { c }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.c;
        (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]
    }

    pub fn deriv(&self) -> Poly {
        let c = &self.c;
        Poly::new([c[1], 2.0 * c[2], 3.0 * c[3], 4.0 * c[4], 0.0])
    }

    /// Quotient of `self` by `(x - root)`; the remainder is dropped.
    pub fn deflate(&self, root: f64) -> Poly {
        let c = &self.c;
        let mut q = [0.0; 5];
        q[3] = c[4];
        q[2] = c[3] + root * q[3];
        q[1] = c[2] + root * q[2];
        q[0] = c[1] + root * q[1];
        Poly::new(q)
    }

    /// Newton iterations from `x`, kept inside `[lo, hi]`. Returns the
    /// polished point or `x` unchanged if a step would leave the interval.
    pub fn polish(&self, mut x: f64, lo: f64, hi: f64) -> f64 {
        let d = self.deriv();
        for _ in 0..4 {
            let fx = self.eval(x);
            let dx = d.eval(x);
            if fx == 0.0 || dx == 0.0 || !dx.is_finite() {
                break;
            }
            let next = x - fx / dx;
            if !(next >= lo && next <= hi) || self.eval(next).abs() >= fx.abs() {
                break;
            }
            x = next;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deflation_recovers_factor() {
        // (x - 2)(x^3 + x - 1)
        let p = Poly::new([2.0, -3.0, 1.0, -2.0, 1.0]);
        let q = p.deflate(2.0);
        assert_eq!(q.c, [-1.0, 1.0, 0.0, 1.0, 0.0]);
        for &x in &[-1.0, 0.3, 5.0] {
            assert!((p.eval(x) - (x - 2.0) * q.eval(x)).abs() < 1e-12);
        }
    }
}
