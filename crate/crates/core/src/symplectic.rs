//! GF(2) elimination over Pauli operators: rank, independence and exact
//! (phase-aware) stabilizer-group membership.

use crate::pauli::PauliOperator;

/// Reduced row-echelon form of a set of Pauli operators. Rows are combined
/// by exact Pauli multiplication, so for a commuting set of generators every
/// row is an element of the generated group with its true sign.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    n: usize,
    rows: Vec<PauliOperator>,
    pivots: Vec<usize>,
}

/// Column `c` in `0..2n`: X bits first, then Z bits.
fn bit(p: &PauliOperator, col: usize, n: usize) -> bool {
    if col < n {
        p.x_bit(col)
    } else {
        p.z_bit(col - n)
    }
}

impl EchelonForm {
    pub fn new(n: usize, generators: &[PauliOperator]) -> Self {
        let mut rows: Vec<PauliOperator> = generators.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..2 * n {
            let Some(found) = (r..rows.len()).find(|&i| bit(&rows[i], col, n)) else {
                continue;
            };
            rows.swap(r, found);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && bit(row, col, n) {
                    row.mul_assign_unchecked(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        EchelonForm { n, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Multiplies `p` by pivot rows until no pivot bit remains; returns the
    /// residue. `p` lies in the span iff the residue has trivial letters.
    pub fn reduce(&self, p: &PauliOperator) -> PauliOperator {
        let mut out = p.clone();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if bit(&out, col, self.n) {
                out.mul_assign_unchecked(row);
            }
        }
        out
    }

    /// Membership up to phase (letters only).
    pub fn spans(&self, p: &PauliOperator) -> bool {
        self.reduce(p).is_trivial()
    }

    /// Exact membership in the group generated by commuting Hermitian
    /// generators, sign included.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        self.reduce(p).is_identity()
    }
}

pub fn rank(n: usize, ops: &[PauliOperator]) -> usize {
    EchelonForm::new(n, ops).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn membership_tracks_sign() {
        let gens = vec![p("ZZI"), p("IZZ")];
        let ech = EchelonForm::new(3, &gens);
        assert_eq!(ech.rank(), 2);
        assert!(ech.contains(&p("ZIZ")));
        assert!(!ech.contains(&p("-ZIZ")));
        assert!(ech.spans(&p("-ZIZ")));
        assert!(!ech.spans(&p("XII")));
    }

    #[test]
    fn dependent_rows_drop_out() {
        let gens = vec![p("XX"), p("ZZ"), p("-YY")];
        assert_eq!(rank(2, &gens), 2);
    }
}
