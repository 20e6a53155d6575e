use nalgebra::DMatrix;

/// Geršgorin disc of one Gram row, seen on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: f64,
    pub radius: f64,
}

impl Disc {
    pub fn contains(&self, lambda: f64, slack: f64) -> bool {
        (lambda - self.center).abs() <= self.radius + slack
    }
}

/// One disc per row: center `a[i,i]`, radius `Σ_{j≠i} |a[i,j]|`.
pub fn gersgorin_intervals(a: &DMatrix<f64>) -> Vec<Disc> {
    (0..a.nrows())
        .map(|i| Disc {
            center: a[(i, i)],
            radius: (0..a.ncols()).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum(),
        })
        .collect()
}

/// Whether `lambda` lies in the union of `discs`.
pub fn in_union(discs: &[Disc], lambda: f64, slack: f64) -> bool {
    discs.iter().any(|d| d.contains(lambda, slack))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigensolve;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_discs() {
        let d = gersgorin_intervals(&DMatrix::identity(3, 3));
        assert!(d.iter().all(|d| d.center == 1.0 && d.radius == 0.0));
    }

    #[test]
    fn pair_endpoints() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        let d = gersgorin_intervals(&a);
        assert_eq!(d, vec![Disc { center: 1.0, radius: 0.5 }; 2]);
        assert!(in_union(&d, 0.5, 0.0) && in_union(&d, 1.5, 0.0));
        assert!(!in_union(&d, 1.5 + 1e-12, 0.0));
    }

    #[test]
    fn union_covers_spectrum_of_dominant_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.random_range(2..10);
            let mut a = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..i {
                    let v = rng.random_range(-1.0..1.0);
                    a[(i, j)] = v;
                    a[(j, i)] = v;
                }
                a[(i, i)] = rng.random_range(-10.0..10.0);
            }
            let discs = gersgorin_intervals(&a);
            for lambda in eigensolve(&a).unwrap().values {
                assert!(in_union(&discs, lambda, 1e-9));
            }
        }
    }
}
