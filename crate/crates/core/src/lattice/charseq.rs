use super::matrix::{IntMatrix, LatticeScalar};
use super::snf::{smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

/// Finitely generated abelian group presented by rank and invariant factors.
/// Factors are `> 1` and each divides the next, so the presentation is
/// canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbPresentation<I = crate::Int> {
    pub rank: usize,
    pub invariant_factors: Vec<I>,
}

impl<I: LatticeScalar> FinAbPresentation<I> {
    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Canonical coordinates of an element of `Z^n / M`: a free part and one
/// residue per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientClass<I = crate::Int> {
    pub free: Vec<I>,
    pub torsion: Vec<I>,
}

/// The exact sequence `0 -> M -> Z^n -> Z^n/M -> 0` of character lattices
/// attached to a ray map `f`, with `M` embedded by the transpose pairing.
///
/// The stored Smith decomposition of the inclusion is the lift procedure:
/// it converts between lifts in `Z^n` and canonical quotient classes.
#[derive(Clone, Debug)]
pub struct CharacterSequence<I: LatticeScalar = crate::Int> {
    m_inclusion: IntMatrix<I>,
    quotient: FinAbPresentation<I>,
    snf: SmithDecomposition<I>,
    /// positions on the diagonal carrying a nontrivial invariant factor
    torsion_slots: Vec<usize>,
}

impl<I: LatticeScalar> CharacterSequence<I> {
    /// Columns of the returned matrix are the chosen basis of `M` inside
    /// `Z^n`.  The basis is not canonical; both conversion directions are.
    pub fn m_inclusion(&self) -> &IntMatrix<I> {
        &self.m_inclusion
    }

    pub fn quotient(&self) -> &FinAbPresentation<I> {
        &self.quotient
    }

    pub fn ambient_rank(&self) -> usize {
        self.m_inclusion.nrows()
    }

    pub fn sub_rank(&self) -> usize {
        self.m_inclusion.ncols()
    }

    /// Canonical class of a lift.  Two lifts differing by an element of `M`
    /// get equal classes, and `class_of(lift_of(c)) == c`.
    pub fn class_of(&self, lift: &[I]) -> QuotientClass<I> {
        assert_eq!(lift.len(), self.ambient_rank());
        let y = self.snf.u_inv().mul_vec(lift);
        let diag = self.snf.diagonal();
        let torsion = self
            .torsion_slots
            .iter()
            .map(|&i| y[i].mod_floor(&diag[i]))
            .collect();
        let free = y[self.sub_rank()..].to_vec();
        QuotientClass { free, torsion }
    }

    /// A lift of a canonical class back to `Z^n`.
    pub fn lift_of(&self, class: &QuotientClass<I>) -> Vec<I> {
        assert_eq!(class.free.len(), self.quotient.rank);
        assert_eq!(class.torsion.len(), self.torsion_slots.len());
        let mut y = vec![I::zero(); self.ambient_rank()];
        for (slot, residue) in self.torsion_slots.iter().zip(&class.torsion) {
            y[*slot] = residue.clone();
        }
        for (k, v) in class.free.iter().enumerate() {
            y[self.sub_rank() + k] = v.clone();
        }
        self.snf.u.mul_vec(&y)
    }

    /// Whether two lifts represent the same class.
    pub fn same_class(&self, a: &[I], b: &[I]) -> bool {
        self.class_of(a) == self.class_of(b)
    }
}

/// Builds the character sequence of a `d x n` ray map of full rank `d`.
///
/// `M = Hom(N, Z)` lands in `Z^n` through the transpose of `f`, so the
/// composite pairing with the rays recovers evaluation on `N`; the quotient
/// is the class group presented by its invariant factors.
pub fn character_sequence<I: LatticeScalar>(f: &IntMatrix<I>) -> Result<CharacterSequence<I>> {
    let d = f.nrows();
    let m_inclusion = f.transpose();
    let snf = smith_normal_form(&m_inclusion);
    if snf.rank() < d {
        return Err(Error::RankDeficient { rank: snf.rank(), expected: d });
    }
    let diag = snf.diagonal();
    let torsion_slots: Vec<usize> =
        (0..d).filter(|&i| !diag[i].is_zero() && !diag[i].is_one()).collect();
    let quotient = FinAbPresentation {
        rank: m_inclusion.nrows() - d,
        invariant_factors: torsion_slots.iter().map(|&i| diag[i].clone()).collect(),
    };
    Ok(CharacterSequence { m_inclusion, quotient, snf, torsion_slots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IMat, Int};

    #[test]
    fn p1_character_sequence() {
        let f = IMat::from_i64(1, 2, &[1, -1]);
        let cs = character_sequence(&f).unwrap();
        assert!(super::super::lattice_eq(cs.m_inclusion(), &IMat::from_i64(2, 1, &[1, -1])));
        assert_eq!(cs.quotient().rank, 1);
        assert!(cs.quotient().is_free());
    }

    #[test]
    fn p2_character_sequence() {
        let f = IMat::from_i64(2, 3, &[1, 0, -1, 0, 1, -1]);
        let cs = character_sequence(&f).unwrap();
        assert_eq!(cs.quotient().rank, 1);
        assert!(cs.quotient().is_free());
        // composite Z^d -> Z^n -> quotient vanishes
        for col in cs.m_inclusion().columns() {
            let zero = cs.class_of(&vec![Int::from(0); 3]);
            assert_eq!(cs.class_of(&col), zero);
        }
    }

    #[test]
    fn mu2_gerbe_has_two_torsion() {
        // rays (1,0) and (1,2): quotient of rank 0 with a single factor [2]
        let f = IMat::from_i64(2, 2, &[1, 1, 0, 2]);
        let cs = character_sequence(&f).unwrap();
        assert_eq!(cs.quotient().rank, 0);
        assert_eq!(cs.quotient().invariant_factors, vec![Int::from(2)]);
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let f = IMat::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(matches!(
            character_sequence(&f),
            Err(crate::Error::RankDeficient { rank: 1, expected: 2 })
        ));
    }

    #[test]
    fn class_canonicalization_is_idempotent_and_lift_invariant() {
        let f = IMat::from_i64(2, 3, &[1, 0, -1, 0, 1, -1]);
        let cs = character_sequence(&f).unwrap();
        let lift = vec![Int::from(3), Int::from(-1), Int::from(2)];
        let c = cs.class_of(&lift);
        assert_eq!(cs.class_of(&cs.lift_of(&c)), c);
        // shifting by a column of M keeps the class
        let m0 = cs.m_inclusion().column(0);
        let shifted: Vec<Int> = lift.iter().zip(&m0).map(|(a, b)| a + b).collect();
        assert!(cs.same_class(&lift, &shifted));
    }
}
