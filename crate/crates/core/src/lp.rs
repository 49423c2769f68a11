//! Exact feasibility of rational linear systems by Fourier-Motzkin
//! elimination, with a witness point on success.
//!
//! The systems this crate produces are tiny (at most a dozen variables), so
//! the potential blowup of the method is irrelevant; what matters is that
//! the yes/no answer is exact.

use num_traits::Signed;

use crate::linalg::FieldScalar;

/// `a . x = b` rows and `a . x >= b` rows over `nvars` variables.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem<F> {
    pub nvars: usize,
    pub equalities: Vec<(Vec<F>, F)>,
    pub inequalities: Vec<(Vec<F>, F)>,
}

impl<F: FieldScalar + PartialOrd + Signed> LinearSystem<F> {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn eq(&mut self, coeffs: Vec<F>, rhs: F) {
        assert_eq!(coeffs.len(), self.nvars);
        self.equalities.push((coeffs, rhs));
    }

    pub fn ge(&mut self, coeffs: Vec<F>, rhs: F) {
        assert_eq!(coeffs.len(), self.nvars);
        self.inequalities.push((coeffs, rhs));
    }

    /// Lower bound `x_i >= rhs` on a single variable.
    pub fn bound(&mut self, i: usize, rhs: F) {
        let mut row = vec![F::zero(); self.nvars];
        row[i] = F::one();
        self.ge(row, rhs);
    }

    /// Decides feasibility; returns a witness assignment when feasible.
    pub fn feasible(&self) -> Option<Vec<F>> {
        // substitutions x_pivot = c + sum coeff_k x_k recorded for replay
        let mut subs: Vec<(usize, Vec<F>, F)> = Vec::new();
        let mut eqs = self.equalities.clone();
        let mut ineqs = self.inequalities.clone();

        while let Some((a, b)) = eqs.pop() {
            let Some(pivot) = (0..self.nvars).find(|&j| a[j] != F::zero()) else {
                if b != F::zero() {
                    return None;
                }
                continue;
            };
            // x_pivot = (b - sum_{k != pivot} a_k x_k) / a_pivot
            let inv = F::one() / a[pivot].clone();
            let rhs_const = b.clone() * inv.clone();
            let mut rhs_coeffs = vec![F::zero(); self.nvars];
            for k in 0..self.nvars {
                if k != pivot {
                    rhs_coeffs[k] = -(a[k].clone() * inv.clone());
                }
            }
            let substitute = |row: &mut Vec<F>, rhs: &mut F| {
                let c = row[pivot].clone();
                if c == F::zero() {
                    return;
                }
                row[pivot] = F::zero();
                for k in 0..rhs_coeffs.len() {
                    let v = row[k].clone() + c.clone() * rhs_coeffs[k].clone();
                    row[k] = v;
                }
                // a.x >= b with x_pivot replaced shifts the rhs
                *rhs = rhs.clone() - c * rhs_const.clone();
            };
            for (row, rhs) in eqs.iter_mut() {
                substitute(row, rhs);
            }
            for (row, rhs) in ineqs.iter_mut() {
                substitute(row, rhs);
            }
            subs.push((pivot, rhs_coeffs, rhs_const));
        }

        // Fourier-Motzkin on the remaining inequality system.
        let mut eliminated: Vec<(usize, Vec<(Vec<F>, F)>)> = Vec::new();
        let still_free: Vec<usize> = (0..self.nvars)
            .filter(|j| !subs.iter().any(|(p, _, _)| p == j))
            .collect();
        for &var in still_free.iter().rev() {
            if ineqs.iter().all(|(a, _)| a[var] == F::zero()) {
                eliminated.push((var, Vec::new()));
                continue;
            }
            let involved: Vec<(Vec<F>, F)> =
                ineqs.iter().filter(|(a, _)| a[var] != F::zero()).cloned().collect();
            let mut next: Vec<(Vec<F>, F)> =
                ineqs.iter().filter(|(a, _)| a[var] == F::zero()).cloned().collect();
            let lowers: Vec<&(Vec<F>, F)> =
                involved.iter().filter(|(a, _)| a[var] > F::zero()).collect();
            let uppers: Vec<&(Vec<F>, F)> =
                involved.iter().filter(|(a, _)| a[var] < F::zero()).collect();
            for (la, lb) in &lowers {
                for (ua, ub) in &uppers {
                    // scale so the var cancels: (l/l_v) + (u/(-u_v))
                    let lv = la[var].clone();
                    let uv = -ua[var].clone();
                    let mut row = vec![F::zero(); self.nvars];
                    for k in 0..self.nvars {
                        row[k] = la[k].clone() / lv.clone() + ua[k].clone() / uv.clone();
                    }
                    let rhs = lb.clone() / lv.clone() + ub.clone() / uv.clone();
                    next.push((row, rhs));
                }
            }
            dedup_rows(&mut next);
            ineqs = next;
            eliminated.push((var, involved));
        }

        for (a, b) in &ineqs {
            debug_assert!(a.iter().all(|c| *c == F::zero()));
            if *b > F::zero() {
                return None;
            }
        }

        // back-substitute a witness
        let mut x = vec![F::zero(); self.nvars];
        for (var, involved) in eliminated.iter().rev() {
            let mut lo: Option<F> = None;
            let mut hi: Option<F> = None;
            for (a, b) in involved {
                let mut rest = b.clone();
                for k in 0..self.nvars {
                    if k != *var {
                        rest = rest - a[k].clone() * x[k].clone();
                    }
                }
                let bound = rest / a[*var].clone();
                if a[*var] > F::zero() {
                    lo = Some(match lo {
                        Some(l) if l >= bound => l,
                        _ => bound,
                    });
                } else {
                    hi = Some(match hi {
                        Some(h) if h <= bound => h,
                        _ => bound,
                    });
                }
            }
            let two = F::one() + F::one();
            x[*var] = match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / two,
                (Some(l), None) => l,
                (None, Some(h)) => h,
                (None, None) => F::zero(),
            };
        }
        for (pivot, coeffs, c) in subs.iter().rev() {
            let mut v = c.clone();
            for k in 0..self.nvars {
                v = v + coeffs[k].clone() * x[k].clone();
            }
            x[*pivot] = v;
        }

        debug_assert!(self.check(&x));
        Some(x)
    }

    /// Verifies a point against every constraint.
    pub fn check(&self, x: &[F]) -> bool {
        let dot = |a: &[F]| -> F {
            a.iter().zip(x).fold(F::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
        };
        self.equalities.iter().all(|(a, b)| dot(a) == *b)
            && self.inequalities.iter().all(|(a, b)| dot(a) >= *b)
    }
}

fn dedup_rows<F: FieldScalar + PartialOrd + Signed>(rows: &mut Vec<(Vec<F>, F)>) {
    // normalize by the first nonzero coefficient's absolute value, drop
    // trivially satisfied rows and exact duplicates
    let mut out: Vec<(Vec<F>, F)> = Vec::new();
    'next: for (mut a, mut b) in rows.drain(..) {
        if let Some(f) = a.iter().find(|c| **c != F::zero()) {
            let scale = F::one() / f.abs();
            for c in a.iter_mut() {
                *c = c.clone() * scale.clone();
            }
            b = b * scale;
        } else if b <= F::zero() {
            continue;
        }
        for (ea, eb) in &out {
            if *ea == a && *eb == b {
                continue 'next;
            }
        }
        out.push((a, b));
    }
    *rows = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    #[test]
    fn simple_feasible_system() {
        let mut sys = LinearSystem::<Rat>::new(2);
        sys.eq(vec![rat(1, 1), rat(1, 1)], rat(1, 1));
        sys.bound(0, rat(0, 1));
        sys.bound(1, rat(0, 1));
        let x = sys.feasible().expect("feasible");
        assert!(sys.check(&x));
    }

    #[test]
    fn infeasible_bounds() {
        let mut sys = LinearSystem::<Rat>::new(1);
        sys.bound(0, rat(1, 1));
        sys.ge(vec![rat(-1, 1)], rat(0, 1));
        assert!(sys.feasible().is_none());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut sys = LinearSystem::<Rat>::new(2);
        sys.eq(vec![rat(1, 1), rat(1, 1)], rat(0, 1));
        sys.eq(vec![rat(2, 1), rat(2, 1)], rat(1, 1));
        assert!(sys.feasible().is_none());
    }

    #[test]
    fn unbounded_directions_are_fine() {
        let mut sys = LinearSystem::<Rat>::new(3);
        sys.bound(0, rat(5, 1));
        let x = sys.feasible().unwrap();
        assert!(sys.check(&x));
    }
}
