use std::cmp::Ordering;
use std::fmt;

/// A basis monomial e_{i₁} ∧ ⋯ ∧ e_{i_k} (i₁ < ⋯ < i_k) as a bitmask:
/// bit i−1 is set iff e_i occurs.
///
/// Ordered by grade first, then by mask value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisMask(pub u32);

impl BasisMask {
    pub const UNIT: BasisMask = BasisMask(0);

    /// Mask of the given 1-based generator indices. Duplicates collapse.
    pub fn from_indices(indices: &[usize]) -> BasisMask {
        BasisMask(indices.iter().fold(0, |m, &i| m | (1 << (i - 1))))
    }

    pub fn generator(i: usize) -> BasisMask {
        BasisMask(1 << (i - 1))
    }

    pub fn top(n: usize) -> BasisMask {
        BasisMask(((1u64 << n) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn is_disjoint(self, other: BasisMask) -> bool {
        self.0 & other.0 == 0
    }

    /// All masks of the given grade among n generators, in increasing mask order.
    pub fn of_grade(n: usize, grade: usize) -> impl Iterator<Item = BasisMask> {
        (0..(1u32 << n)).map(BasisMask).filter(move |m| m.grade() == grade)
    }
}

/// Sign of e_S ∧ e_T relative to e_{S∪T}: `None` when S ∩ T ≠ ∅ (the product
/// vanishes), `Some(true)` when the sign is negative.
///
/// The sign is (−1)^{#{(s,t) ∈ S×T : s > t}}, counted with one popcount per
/// element of T.
pub fn wedge_sign(s: BasisMask, t: BasisMask) -> Option<bool> {
    if !s.is_disjoint(t) {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = t.0;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (s.0 >> b >> 1).count_ones();
    }
    Some(inversions % 2 == 1)
}

impl PartialOrd for BasisMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then(self.0.cmp(&other.0))
    }
}

impl fmt::Display for BasisMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e{{{}}}", idx.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sorts the concatenated index word by adjacent swaps and counts them.
    fn bubble_sign(s: BasisMask, t: BasisMask) -> Option<bool> {
        let mut word: Vec<usize> = s.indices();
        word.extend(t.indices());
        let mut swaps = 0;
        for i in 0..word.len() {
            for j in 0..word.len().saturating_sub(1 + i) {
                if word[j] == word[j + 1] {
                    return None;
                }
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(swaps % 2 == 1)
    }

    #[test]
    fn sign_matches_bubble_sort_exhaustively() {
        for s in 0..64u32 {
            for t in 0..64u32 {
                assert_eq!(wedge_sign(BasisMask(s), BasisMask(t)), bubble_sign(BasisMask(s), BasisMask(t)), "{s} {t}");
            }
        }
    }

    #[test]
    fn small_signs() {
        let e = BasisMask::generator;
        assert_eq!(wedge_sign(e(1), e(2)), Some(false));
        assert_eq!(wedge_sign(e(2), e(1)), Some(true));
        assert_eq!(wedge_sign(e(1), e(1)), None);
        assert_eq!(wedge_sign(BasisMask::from_indices(&[1, 3]), e(2)), Some(true));
    }

    #[test]
    fn grade_then_value_order() {
        let mut v = vec![BasisMask(3), BasisMask(4), BasisMask(0), BasisMask(1)];
        v.sort();
        assert_eq!(v, vec![BasisMask(0), BasisMask(1), BasisMask(4), BasisMask(3)]);
        assert_eq!(BasisMask::from_indices(&[1, 3]).to_string(), "e{1,3}");
    }
}
