//! Shift matrices and admissible shapes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Composition;

/// A square matrix `sigma = (s_ij)` of nonnegative integers with
/// `s_ij + s_jk = s_ik` whenever `j` lies between `i` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftMatrix {
    rows: Vec<Vec<u32>>,
}

impl ShiftMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<ShiftMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadShiftMatrix("empty matrix".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::BadShiftMatrix(format!("row {} has {} entries, expected {n}", r + 1, rows[r].len())));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let between = (i <= j && j <= k) || (k <= j && j <= i);
                    if between && rows[i][j] + rows[j][k] != rows[i][k] {
                        return Err(Error::BadShiftMatrix(format!(
                            "s[{},{}] + s[{},{}] != s[{},{}]",
                            i + 1,
                            j + 1,
                            j + 1,
                            k + 1,
                            i + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(ShiftMatrix { rows })
    }

    pub fn zero(n: usize) -> ShiftMatrix {
        ShiftMatrix { rows: vec![vec![0; n]; n] }
    }

    /// Parses `"zero"` (needs `n`) or rows such as `"0,1;0,0"`.
    pub fn parse(text: &str, n: usize) -> Result<ShiftMatrix> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("zero") || text == "0" {
            return Ok(ShiftMatrix::zero(n));
        }
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::BadShiftMatrix(format!("not a nonnegative integer: {x:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = ShiftMatrix::new(rows)?;
        if m.n() != n {
            return Err(Error::BadShiftMatrix(format!("matrix is {}x{} but n = {n}", m.n(), m.n())));
        }
        Ok(m)
    }

    /// The matrix with `s_{i,i+1} = upper[i-1]` and `s_{i+1,i} = lower[i-1]`,
    /// extended by additivity.
    pub fn from_adjacent(upper: &[u32], lower: &[u32]) -> Result<ShiftMatrix> {
        if upper.len() != lower.len() {
            return Err(Error::BadShiftMatrix(format!("{} entries above the diagonal but {} below", upper.len(), lower.len())));
        }
        let n = upper.len() + 1;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i < j { upper[i..j].iter().sum() } else { lower[j..i].iter().sum() })
                    .collect()
            })
            .collect();
        ShiftMatrix::new(rows)
    }

    /// Every `n x n` shift matrix whose adjacent entries are at most `max`.
    pub fn all(n: usize, max: u32) -> Vec<ShiftMatrix> {
        let k = 2 * (n - 1);
        let total = (max as usize + 1).pow(k as u32);
        (0..total)
            .map(|mut code| {
                let digits: Vec<u32> = (0..k)
                    .map(|_| {
                        let d = (code % (max as usize + 1)) as u32;
                        code /= max as usize + 1;
                        d
                    })
                    .collect();
                ShiftMatrix::from_adjacent(&digits[..n - 1], &digits[n - 1..]).expect("additive by construction")
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// `s_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x == 0)
    }
}

impl fmt::Display for ShiftMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// An admissible pair `(sigma, mu)` with the block-level shifts `s^mu_{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftData {
    sigma: ShiftMatrix,
    mu: Composition,
    table: Vec<Vec<u32>>,
}

impl ShiftData {
    pub fn new(sigma: ShiftMatrix, mu: Composition) -> Result<ShiftData> {
        let n = sigma.n();
        if mu.n() != n {
            return Err(Error::BadComposition { parts: mu.parts().to_vec(), n });
        }
        let m = mu.len();
        for a in 1..=m {
            for i in 1..=mu.part(a) {
                for j in 1..=mu.part(a) {
                    let v = sigma.get(mu.offset(a) + i, mu.offset(a) + j);
                    if v != 0 {
                        return Err(Error::NotAdmissible {
                            mu: mu.parts().to_vec(),
                            i: mu.offset(a) + i,
                            j: mu.offset(a) + j,
                            value: v,
                        });
                    }
                }
            }
        }
        let mut table = vec![vec![0; m]; m];
        for a in 1..=m {
            for b in 1..=m {
                let s = sigma.get(mu.offset(a + 1), mu.offset(b + 1));
                for i in 1..=mu.part(a) {
                    for j in 1..=mu.part(b) {
                        let v = sigma.get(mu.offset(a) + i, mu.offset(b) + j);
                        if v != s {
                            return Err(Error::BadShiftMatrix(format!(
                                "s[{},{}] = {v} differs from the block value {s}",
                                mu.offset(a) + i,
                                mu.offset(b) + j
                            )));
                        }
                    }
                }
                table[a - 1][b - 1] = s;
            }
        }
        Ok(ShiftData { sigma, mu, table })
    }

    pub fn unshifted(mu: Composition) -> ShiftData {
        let n = mu.n();
        ShiftData::new(ShiftMatrix::zero(n), mu).expect("the zero shift is admissible for every shape")
    }

    pub fn sigma(&self) -> &ShiftMatrix {
        &self.sigma
    }

    pub fn mu(&self) -> &Composition {
        &self.mu
    }

    /// `s^mu_{a,b}`, 1-based.
    pub fn s(&self, a: usize, b: usize) -> u32 {
        self.table[a - 1][b - 1]
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    /// Smallest superscript allowed for `E_{a,b}` (`a < b`) or `F_{a,b}` (`a > b`).
    pub fn min_superscript(&self, a: usize, b: usize) -> u32 {
        self.s(a, b) + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_data_examples() {
        let sigma = ShiftMatrix::parse("0,1;0,0", 2).unwrap();
        let d = ShiftData::new(sigma.clone(), Composition::ones(2)).unwrap();
        assert_eq!(d.s(1, 2), 1);
        assert_eq!(d.s(2, 1), 0);
        let rejected = ShiftData::new(sigma, Composition::new(vec![2]).unwrap());
        assert!(matches!(rejected, Err(Error::NotAdmissible { i: 1, j: 2, value: 1, .. })));
        for mu in Composition::all(3) {
            let d = ShiftData::unshifted(mu.clone());
            assert!(d.table().iter().flatten().all(|&x| x == 0));
        }
    }

    #[test]
    fn additivity_is_enforced() {
        assert!(ShiftMatrix::parse("0,1,1;0,0,1;0,0,0", 3).is_err());
        let ok = ShiftMatrix::parse("0,1,2;0,0,1;0,0,0", 3).unwrap();
        assert_eq!(ok.get(1, 3), 2);
        assert!(ShiftMatrix::parse("0,1;0", 2).is_err());
        assert!(ShiftMatrix::parse("1,0;0,0", 2).is_err());
        assert!(ShiftMatrix::parse("0,x;0,0", 2).is_err());
    }

    #[test]
    fn enumeration_by_adjacent_entries() {
        let all = ShiftMatrix::all(3, 1);
        assert_eq!(all.len(), 16);
        assert!(all.contains(&ShiftMatrix::parse("0,1,2;0,0,1;0,0,0", 3).unwrap()));
        assert!(all.contains(&ShiftMatrix::zero(3)));
        assert_eq!(ShiftMatrix::all(1, 3), vec![ShiftMatrix::zero(1)]);
    }

    #[test]
    fn block_table_for_refined_shapes() {
        let sigma = ShiftMatrix::parse("0,0,2;0,0,2;0,0,0", 3).unwrap();
        let d = ShiftData::new(sigma.clone(), Composition::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(d.table(), &[vec![0, 2], vec![0, 0]]);
        let d = ShiftData::new(sigma, Composition::ones(3)).unwrap();
        assert_eq!(d.s(1, 3), 2);
        assert_eq!(d.s(1, 2), 0);
        assert_eq!(d.s(2, 3), 2);
    }
}
