use serde::{Deserialize, Serialize};

use crate::SeifertError;

/// Positive braid word; letter `i` stands for `σ_i`, `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

#[derive(Deserialize)]
struct RawBraid {
    strands: usize,
    letters: Vec<i64>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = SeifertError;
    fn try_from(r: RawBraid) -> Result<Self, Self::Error> {
        BraidWord::new(r.strands, &r.letters)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: &[i64]) -> Result<Self, SeifertError> {
        if strands == 0 {
            return Err(SeifertError::NoStrands);
        }
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l < 0 {
                return Err(SeifertError::NegativeLetter(l));
            }
            if l == 0 || l as usize >= strands {
                return Err(SeifertError::LetterOutOfRange(l, strands));
            }
            out.push(l as usize);
        }
        Ok(BraidWord { strands, letters: out })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Number of closure components, from the braid permutation.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            perm.swap(l - 1, l);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        cycles
    }

    /// Generators `1..strands` that never occur; each splits the closure.
    pub fn missing_generators(&self) -> usize {
        (1..self.strands).filter(|i| !self.letters.contains(i)).count()
    }

    /// Copy with `σ_i` inserted at position `pos`.
    pub fn with_letter(&self, pos: usize, i: usize) -> Result<Self, SeifertError> {
        let mut letters: Vec<i64> = self.letters.iter().map(|&l| l as i64).collect();
        letters.insert(pos.min(letters.len()), i as i64);
        BraidWord::new(self.strands, &letters)
    }
}

/// `(σ_1 σ_2 … σ_{p-1})^q` on `p` strands.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord, SeifertError> {
    if p < 2 || q < 1 {
        return Err(SeifertError::BadTorus(p, q));
    }
    let letters: Vec<i64> = (0..q).flat_map(|_| 1..p).collect();
    BraidWord::new(p as usize, &letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_words() {
        assert_eq!(torus_braid(2, 3).unwrap().letters(), &[1, 1, 1]);
        assert_eq!(torus_braid(3, 2).unwrap().letters(), &[1, 2, 1, 2]);
        assert_eq!(torus_braid(2, 2).unwrap().letters(), &[1, 1]);
        assert!(torus_braid(1, 3).is_err());
    }

    #[test]
    fn component_counts() {
        assert_eq!(torus_braid(2, 3).unwrap().components(), 1);
        assert_eq!(torus_braid(2, 2).unwrap().components(), 2);
        assert_eq!(torus_braid(4, 6).unwrap().components(), 2);
        assert_eq!(torus_braid(3, 3).unwrap().components(), 3);
        assert_eq!(BraidWord::new(3, &[]).unwrap().components(), 3);
    }

    #[test]
    fn rejects_bad_letters() {
        assert_eq!(BraidWord::new(2, &[-1]), Err(SeifertError::NegativeLetter(-1)));
        assert_eq!(BraidWord::new(2, &[2]), Err(SeifertError::LetterOutOfRange(2, 2)));
        assert_eq!(BraidWord::new(0, &[]), Err(SeifertError::NoStrands));
    }
}
