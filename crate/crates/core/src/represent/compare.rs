use crate::numkernel::EigenValue;
use crate::scalar::{to_c64, Real};

/// Distance between two extended complex numbers that is relative for large
/// values: `min(|a−b|, |a−b|/√(|a||b|))`, zero for two infinities and one
/// between a finite and an infinite value.
pub fn chordal_distance<T: Real>(a: &EigenValue<T>, b: &EigenValue<T>) -> f64 {
    match (a, b) {
        (EigenValue::Infinite, EigenValue::Infinite) => 0.0,
        (EigenValue::Finite(x), EigenValue::Finite(y)) => {
            let (x, y) = (to_c64(*x), to_c64(*y));
            let d = (x - y).norm();
            let s = (x.norm() * y.norm()).sqrt();
            if s > 0.0 {
                d.min(d / s)
            } else {
                d
            }
        }
        (EigenValue::Finite(x), EigenValue::Infinite) | (EigenValue::Infinite, EigenValue::Finite(x)) => {
            let x = to_c64(*x).norm();
            // Approaches 0 as |x| → ∞.
            1.0 / (1.0 + x)
        }
    }
}

/// Greedy multiset matching: repeatedly pairs the closest remaining
/// elements and returns the largest distance used. `None` if the sizes differ.
pub fn match_distance<T: Real>(a: &[EigenValue<T>], b: &[EigenValue<T>]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0f64;
    for _ in 0..a.len() {
        let mut best = (f64::INFINITY, 0, 0);
        for (i, x) in a.iter().enumerate().filter(|(i, _)| !used_a[*i]) {
            for (j, y) in b.iter().enumerate().filter(|(j, _)| !used_b[*j]) {
                let d = chordal_distance(x, y);
                if d < best.0 || best.0.is_infinite() {
                    best = (d, i, j);
                }
            }
        }
        used_a[best.1] = true;
        used_b[best.2] = true;
        worst = worst.max(best.0);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C;

    #[test]
    fn matching_is_order_free() {
        let a = vec![EigenValue::Finite(C::new(1.0, 0.0)), EigenValue::Infinite];
        let b = vec![EigenValue::Infinite, EigenValue::Finite(C::new(1.0 + 1e-12, 0.0))];
        assert!(match_distance(&a, &b).unwrap() < 1e-11);
        assert!(match_distance(&a, &b[..1]).is_none());
    }

    #[test]
    fn large_values_are_relative() {
        let a = EigenValue::Finite(C::new(1e8, 0.0));
        let b = EigenValue::Finite(C::new(1e8 + 1.0, 0.0));
        assert!(chordal_distance(&a, &b) < 1e-7);
    }
}
