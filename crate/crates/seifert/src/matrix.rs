use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::SeifertError;

/// Integer Seifert matrix, row-major; `braid` records where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    braid: Option<BraidWord>,
}

#[derive(Deserialize)]
struct RawMatrix {
    entries: Vec<Vec<i64>>,
    braid: Option<BraidWord>,
}

impl TryFrom<RawMatrix> for SeifertMatrix {
    type Error = SeifertError;
    fn try_from(r: RawMatrix) -> Result<Self, Self::Error> {
        let mut m = SeifertMatrix::new(r.entries)?;
        m.braid = r.braid;
        Ok(m)
    }
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(SeifertError::NotSquare);
        }
        Ok(SeifertMatrix { entries, braid: None })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        self.braid.as_ref()
    }

    /// `V + V^T`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i][j] + self.entries[j][i]).collect())
            .collect()
    }

    fn block_sum(parts: &[&SeifertMatrix], extra_zero: usize) -> SeifertMatrix {
        let n: usize = parts.iter().map(|m| m.size()).sum::<usize>() + extra_zero;
        let mut e = vec![vec![0; n]; n];
        let mut off = 0;
        for m in parts {
            for i in 0..m.size() {
                for j in 0..m.size() {
                    e[off + i][off + j] = m.entries[i][j];
                }
            }
            off += m.size();
        }
        SeifertMatrix { entries: e, braid: None }
    }
}

/// Seifert matrix of the closure of a positive braid on its canonical surface.
///
/// One generator per pair of consecutive occurrences of the same letter.
/// Missing letters split the closure; each split adds a tube whose class
/// pairs trivially with everything.
pub fn seifert_from_positive_braid(b: &BraidWord) -> SeifertMatrix {
    let letters = b.letters();
    // (column, start, end) with start/end positions in the word
    let mut cycles: Vec<(usize, usize, usize)> = Vec::new();
    for col in 1..b.strands() {
        let pos: Vec<usize> = (0..letters.len()).filter(|&k| letters[k] == col).collect();
        for w in pos.windows(2) {
            cycles.push((col, w[0], w[1]));
        }
    }
    let tubes = b.missing_generators();
    let n = cycles.len() + tubes;
    let mut e = vec![vec![0i64; n]; n];
    for (x, &(ci, a, bb)) in cycles.iter().enumerate() {
        e[x][x] = -1;
        for (y, &(cj, c, d)) in cycles.iter().enumerate() {
            if cj == ci && c == bb {
                e[x][y] = 1;
            } else if cj == ci + 1 {
                if a < c && c < bb && bb < d {
                    e[x][y] -= 1;
                } else if c < a && a < d && d < bb {
                    e[x][y] += 1;
                }
            }
        }
    }
    SeifertMatrix { entries: e, braid: Some(b.clone()) }
}

pub fn connected_sum(v1: &SeifertMatrix, v2: &SeifertMatrix) -> SeifertMatrix {
    SeifertMatrix::block_sum(&[v1, v2], 0)
}

/// Split union: the two surfaces are joined by a tube, adding a null class.
pub fn disconnected_sum(v1: &SeifertMatrix, v2: &SeifertMatrix) -> SeifertMatrix {
    SeifertMatrix::block_sum(&[v1, v2], 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_braid;

    #[test]
    fn hopf_anchor() {
        let v = seifert_from_positive_braid(&torus_braid(2, 2).unwrap());
        assert_eq!(v.entries(), &[vec![-1]]);
    }

    #[test]
    fn trefoil_matrix() {
        let v = seifert_from_positive_braid(&torus_braid(2, 3).unwrap());
        assert_eq!(v.entries(), &[vec![-1, 1], vec![0, -1]]);
    }

    #[test]
    fn size_is_first_betti_number() {
        for (p, q) in [(2, 5), (3, 4), (3, 5), (4, 6), (5, 7)] {
            let b = torus_braid(p, q).unwrap();
            let v = seifert_from_positive_braid(&b);
            assert_eq!(v.size(), b.letters().len() - b.strands() + 1);
        }
    }

    #[test]
    fn split_words_get_tubes() {
        let b = BraidWord::new(4, &[1, 1, 1, 3, 3, 3]).unwrap();
        let v = seifert_from_positive_braid(&b);
        assert_eq!(v.size(), 5);
        assert!(v.entries()[4].iter().all(|&e| e == 0));
    }

    #[test]
    fn sums() {
        let t = seifert_from_positive_braid(&torus_braid(2, 3).unwrap());
        assert_eq!(connected_sum(&t, &t).size(), 4);
        assert_eq!(disconnected_sum(&t, &t).size(), 5);
        assert!(SeifertMatrix::new(vec![vec![1, 2]]).is_err());
    }
}
