//! Small shared numerics: binomials, compensated summation, gamma at
//! integer and half-integer arguments.

/// Binomial coefficient `C(n, k)` as `f64`, exact for the dimensions used
/// here (accumulated in `u128` before conversion).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
        // keep intermediates reduced so u128 never overflows for n ≤ 64
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    (num / den) as f64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// `n!` as `f64`, exact through `n = 22`.
pub fn factorial(n: usize) -> f64 {
    let mut acc: u128 = 1;
    for i in 2..=n {
        acc *= i as u128;
    }
    acc as f64
}

/// Gamma function at `m/2` for positive integer `m`, via the exact
/// recursions `Γ(x+1) = xΓ(x)`, `Γ(1) = 1`, `Γ(1/2) = √π`.
pub fn gamma_half(m: usize) -> f64 {
    assert!(m >= 1, "gamma_half needs a positive half-integer argument");
    let mut x = if m % 2 == 0 { 1.0 } else { 0.5 };
    let mut value = if m % 2 == 0 {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    while 2.0 * x + 1e-9 < m as f64 {
        value *= x;
        x += 1.0;
    }
    value
}

/// Neumaier compensated summation.
///
/// Used where the spec of an expansion calls for compensated evaluation;
/// keeps alternating-sign trigonometric sums at full precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator of terms.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(4, 1), 4.0);
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(3, 2), 3.0);
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(3, 5), 0.0);
    }

    #[test]
    fn binomial_large_exact() {
        // C(60, 30) fits u128 with the running gcd reduction
        assert_relative_eq!(
            binomial(60, 30),
            118264581564861424.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn gamma_half_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma_half(1), sqrt_pi, max_relative = 1e-15); // Γ(1/2)
        assert_relative_eq!(gamma_half(2), 1.0, max_relative = 1e-15); // Γ(1)
        assert_relative_eq!(gamma_half(3), 0.5 * sqrt_pi, max_relative = 1e-15); // Γ(3/2)
        assert_relative_eq!(gamma_half(4), 1.0, max_relative = 1e-15); // Γ(2)
        assert_relative_eq!(gamma_half(6), 2.0, max_relative = 1e-15); // Γ(3)
        assert_relative_eq!(gamma_half(8), 6.0, max_relative = 1e-15); // Γ(4)
        assert_relative_eq!(gamma_half(5), 0.75 * sqrt_pi, max_relative = 1e-15); // Γ(5/2)
    }

    #[test]
    fn compensated_sum_beats_naive() {
        // 1 + 1e-16 repeated: naive summation loses the small terms
        let mut c = CompensatedSum::new();
        c.add(1.0);
        for _ in 0..1000 {
            c.add(1e-16);
        }
        assert_relative_eq!(c.value(), 1.0 + 1000.0 * 1e-16, max_relative = 1e-15);
    }
}
