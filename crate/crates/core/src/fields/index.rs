//! Basis words for the exterior and symmetric factors.

use std::fmt;

/// Strictly increasing tuple of variable indices: the basis word
/// `dx^{i1} ^ ... ^ dx^{ik}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FormIndex(pub(crate) Vec<u8>);

/// Weakly increasing tuple of variable indices: the basis word
/// `d_{j1} v ... v d_{jl}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymIndex(pub(crate) Vec<u8>);

/// Basis element of `Ω^k ⊗ S^l`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Basis {
    pub form: FormIndex,
    pub sym: SymIndex,
}

impl FormIndex {
    pub fn empty() -> Self {
        FormIndex(Vec::new())
    }

    /// Sort an arbitrary word. Returns the sorted index and whether the
    /// permutation was odd, or `None` when an index repeats.
    pub fn from_word(word: &[usize]) -> Option<(FormIndex, bool)> {
        let mut v: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((FormIndex(v), odd))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| usize::from(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.0.contains(&(var as u8))
    }

    /// `dx^self ^ dx^other` as (index, odd sign), or `None` on overlap.
    pub fn wedge(&self, other: &FormIndex) -> Option<(FormIndex, bool)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut odd = false;
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // other[j] jumps over the remaining self entries
                    if (self.0.len() - i) % 2 == 1 {
                        odd = !odd;
                    }
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some((FormIndex(out), odd))
    }

    /// Contraction `i_{∂_var} dx^self` as (index, odd sign).
    pub fn contract(&self, var: usize) -> Option<(FormIndex, bool)> {
        let pos = self.0.iter().position(|&i| usize::from(i) == var)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some((FormIndex(v), pos % 2 == 1))
    }

    /// `dx^var ^ dx^self`.
    pub fn prepend(&self, var: usize) -> Option<(FormIndex, bool)> {
        FormIndex(vec![var as u8]).wedge(self)
    }
}

impl SymIndex {
    pub fn empty() -> Self {
        SymIndex(Vec::new())
    }

    pub fn from_word(word: &[usize]) -> SymIndex {
        let mut v: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        v.sort_unstable();
        SymIndex(v)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| usize::from(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn merge(&self, other: &SymIndex) -> SymIndex {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        SymIndex(v)
    }

    pub fn push(&self, var: usize) -> SymIndex {
        self.merge(&SymIndex(vec![var as u8]))
    }

    /// Drop the factor at position `pos`.
    pub fn remove_at(&self, pos: usize) -> SymIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        SymIndex(v)
    }

    /// Replace the factor at `pos` by `var`.
    pub fn replace_at(&self, pos: usize, var: usize) -> SymIndex {
        self.remove_at(pos).push(var)
    }

    /// Number of occurrences of `var`.
    pub fn multiplicity(&self, var: usize) -> usize {
        self.0.iter().filter(|&&i| usize::from(i) == var).count()
    }
}

impl Basis {
    pub fn new(form: FormIndex, sym: SymIndex) -> Self {
        Basis { form, sym }
    }

    pub fn scalar() -> Self {
        Basis::default()
    }
}

impl fmt::Display for FormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All strictly increasing words of length `k` over `0..n`.
pub fn form_indices(n: usize, k: usize) -> Vec<FormIndex> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<FormIndex>) {
        if cur.len() == k {
            out.push(FormIndex(cur.clone()));
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All weakly increasing words of length `l` over `0..n`.
pub fn sym_indices(n: usize, l: usize) -> Vec<SymIndex> {
    fn rec(n: usize, l: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<SymIndex>) {
        if cur.len() == l {
            out.push(SymIndex(cur.clone()));
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(n, l, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, l, 0, &mut Vec::new(), &mut out);
    out
}
