//! Weyl group elements of `𝔖_{ℓ+1}`, the word grammar, and the canonical
//! interval-string decomposition `ω = s_{Λ_t} ⋯ s_{Λ_1}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, EdgeLabel};
use crate::error::{Error, Result};
use crate::lattice::CoordSystem;
use crate::moves::enumerate_all_moves;

/// Parses either `(s2 s3 s4)(s3)(s2)(s1)` or `2 3 | 1` into a flat list of
/// generator indices. Indices must lie in `[1, ell]`.
pub fn parse_word(text: &str, ell: usize) -> Result<Vec<usize>> {
    let word = parse_word_unchecked(text)?;
    if let Some(&index) = word.iter().find(|&&i| i == 0 || i > ell) {
        return Err(Error::GeneratorOutOfRange { index, ell });
    }
    Ok(word)
}

/// Parses the grammar without a rank bound (index 0 is still rejected).
pub fn parse_word_unchecked(text: &str) -> Result<Vec<usize>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut in_group = false;
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' | b',' => pos += 1,
            b'(' if !in_group => {
                in_group = true;
                pos += 1;
            }
            b'(' => return Err(err(pos, "nested '('")),
            b')' if in_group => {
                in_group = false;
                pos += 1;
            }
            b')' => return Err(err(pos, "unmatched ')'")),
            b'|' if !in_group => pos += 1,
            b'|' => return Err(err(pos, "'|' inside a group")),
            b's' | b'S' | b'0'..=b'9' => {
                let start = if c.is_ascii_digit() { pos } else { pos + 1 };
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(err(pos, "expected generator index after 's'"));
                }
                let index: usize = text[start..end].parse().map_err(|_| err(start, "generator index too large"))?;
                if index == 0 {
                    return Err(Error::GeneratorOutOfRange { index, ell: 0 });
                }
                out.push(index);
                pos = end;
            }
            _ => return Err(err(pos, &format!("unexpected character {:?}", c as char))),
        }
    }
    if in_group {
        return Err(err(bytes.len(), "unclosed '('"));
    }
    Ok(out)
}

/// An element of `𝔖_{ℓ+1}` stored as its image array: `perm[x-1] = ω(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    ell: usize,
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { ell, perm: (1..=ell + 1).collect() })
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n < 2 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; n + 1];
        for &x in &perm {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{perm:?}")));
            }
        }
        Ok(Self { ell: n - 1, perm })
    }

    /// The product `s_{w[0]} s_{w[1]} ⋯` as a composition of maps.
    pub fn from_word(ell: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(ell)?;
        for &g in word {
            w.mul_generator_right(g)?;
        }
        Ok(w)
    }

    pub fn parse(text: &str, ell: usize) -> Result<Self> {
        Self::from_word(ell, &parse_word(text, ell)?)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x - 1]
    }

    /// `self ← self · s_g`.
    pub fn mul_generator_right(&mut self, g: usize) -> Result<()> {
        self.check_generator(g)?;
        self.perm.swap(g - 1, g);
        Ok(())
    }

    /// `self ← s_g · self`.
    pub fn mul_generator_left(&mut self, g: usize) -> Result<()> {
        self.check_generator(g)?;
        for x in &mut self.perm {
            if *x == g {
                *x = g + 1;
            } else if *x == g + 1 {
                *x = g;
            }
        }
        Ok(())
    }

    fn check_generator(&self, g: usize) -> Result<()> {
        if g == 0 || g > self.ell {
            return Err(Error::GeneratorOutOfRange { index: g, ell: self.ell });
        }
        Ok(())
    }

    pub fn inversions(&self) -> usize {
        let n = self.perm.len();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.perm[a] > self.perm[b]).count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(x, &y)| x + 1 == y)
    }

    /// All `(ℓ+1)!` elements, in lexicographic order of image arrays.
    pub fn all(ell: usize) -> Result<Vec<Self>> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            let n = used.len() - 1;
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for x in 1..=n {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        if ell == 0 {
            return Err(Error::ZeroRank);
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; ell + 2], &mut out);
        out.into_iter().map(Self::from_perm).collect()
    }
}

/// The canonical decomposition `ω = s_{Λ_t} s_{Λ_{t-1}} ⋯ s_{Λ_1}` into
/// intervals with strictly decreasing maxima, plus derived index data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionRepr", into = "DecompositionRepr")]
pub struct WeylDecomposition {
    ell: usize,
    /// `strings[0]` is `Λ_t`, the last entry is `Λ_1`.
    strings: Vec<Vec<usize>>,
    coords: CoordSystem,
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    ell: usize,
    strings: Vec<Vec<usize>>,
}

impl TryFrom<DecompositionRepr> for WeylDecomposition {
    type Error = Error;
    fn try_from(r: DecompositionRepr) -> Result<Self> {
        WeylDecomposition::from_strings(r.ell, r.strings)
    }
}

impl From<WeylDecomposition> for DecompositionRepr {
    fn from(d: WeylDecomposition) -> Self {
        Self { ell: d.ell, strings: d.strings }
    }
}

/// Greedy extraction: the leftmost factor ending in `s_m` is
/// `s_k s_{k+1} ⋯ s_m` with `k = w(m+1)`; strip it and recurse on `𝔖_m`.
pub fn decompose(w: &WeylElement) -> WeylDecomposition {
    let ell = w.ell();
    let mut rest = w.clone();
    let mut strings = Vec::new();
    for m in (1..=ell).rev() {
        let k = rest.apply(m + 1);
        if k != m + 1 {
            for g in k..=m {
                rest.mul_generator_left(g).expect("generator within rank");
            }
            strings.push((k..=m).collect());
        }
        debug_assert_eq!(rest.apply(m + 1), m + 1);
    }
    debug_assert!(rest.is_identity());
    WeylDecomposition::from_strings(ell, strings).expect("greedy output is canonical")
}

impl WeylDecomposition {
    /// Validates a list `[Λ_t, …, Λ_1]` of intervals.
    pub fn from_strings(ell: usize, strings: Vec<Vec<usize>>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ZeroRank);
        }
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        let mut prev_max = usize::MAX;
        for s in &strings {
            let (Some(&lo), Some(&hi)) = (s.first(), s.last()) else {
                return bad("empty string".into());
            };
            if lo == 0 || hi > ell {
                return bad(format!("string {s:?} outside [1, {ell}]"));
            }
            if s.iter().zip(lo..).any(|(&a, b)| a != b) {
                return bad(format!("string {s:?} is not an interval"));
            }
            if hi >= prev_max {
                return bad("string maxima must strictly decrease left to right".into());
            }
            prev_max = hi;
        }
        let coords = CoordSystem::new(ell, &strings);
        Ok(Self { ell, strings, coords })
    }

    pub fn from_word_text(text: &str, ell: usize) -> Result<Self> {
        Ok(decompose(&WeylElement::parse(text, ell)?))
    }

    /// Parses a word and infers `ℓ` as its largest generator index unless given.
    pub fn parse(text: &str, ell: Option<usize>) -> Result<Self> {
        let word = parse_word_unchecked(text)?;
        let ell = match ell {
            Some(e) => e,
            None => word.iter().copied().max().unwrap_or(1),
        };
        Ok(decompose(&WeylElement::parse(text, ell)?))
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of nonempty strings.
    pub fn t(&self) -> usize {
        self.strings.len()
    }

    /// `[Λ_t, …, Λ_1]`.
    pub fn strings(&self) -> &[Vec<usize>] {
        &self.strings
    }

    /// `Λ_k`, for `1 ≤ k ≤ t`.
    pub fn string(&self, k: usize) -> &[usize] {
        &self.strings[self.t() - k]
    }

    pub fn string_min(&self, k: usize) -> usize {
        self.string(k)[0]
    }

    pub fn string_max(&self, k: usize) -> usize {
        *self.string(k).last().expect("strings are nonempty")
    }

    pub fn contains(&self, k: usize, i: usize) -> bool {
        k >= 1 && k <= self.t() && self.string(k).contains(&i)
    }

    /// `J_i = {k ≥ 1 : i ∈ Λ_k}`, ascending.
    pub fn j_set(&self, i: usize) -> Vec<usize> {
        (1..=self.t()).filter(|&k| self.contains(k, i)).collect()
    }

    pub fn length(&self) -> usize {
        self.strings.iter().map(Vec::len).sum()
    }

    pub fn coords(&self) -> &CoordSystem {
        &self.coords
    }

    /// The flat reduced word, left to right.
    pub fn word(&self) -> Vec<usize> {
        self.strings.iter().flatten().copied().collect()
    }

    pub fn element(&self) -> WeylElement {
        WeylElement::from_word(self.ell, &self.word()).expect("indices within rank")
    }

    /// Generators occurring in exactly one string.
    pub fn singleton_generators(&self) -> BTreeSet<usize> {
        (1..=self.ell).filter(|&i| self.j_set(i).len() == 1).collect()
    }

    /// `(ω-grammar)` rendering, e.g. `(s2 s3 s4)(s3)(s2)(s1)`.
    pub fn to_word_text(&self) -> String {
        self.strings
            .iter()
            .map(|s| {
                let g: Vec<String> = s.iter().map(|i| format!("s{i}")).collect();
                format!("({})", g.join(" "))
            })
            .collect()
    }
}

/// `i_min`, `j_min`, `j_max` and the level `i_0` of the forced 0th segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisConstants {
    pub i_min: usize,
    pub j_min: usize,
    pub j_max: usize,
    pub i_0: usize,
}

fn repeated_generator(d: &WeylDecomposition) -> Result<(usize, usize, usize)> {
    (1..=d.ell())
        .find_map(|i| {
            let j = d.j_set(i);
            (j.len() > 1).then(|| (i, j[0], *j.last().unwrap()))
        })
        .ok_or(Error::NoRepeatedGenerator)
}

pub fn axis_constants(d: &WeylDecomposition) -> Result<AxisConstants> {
    let (i_min, j_min, j_max) = repeated_generator(d)?;
    let i_0 = derive_i0(d)?;
    Ok(AxisConstants { i_min, j_min, j_max, i_0 })
}

/// Removes the labelled horizontals of every `s_i` with `|J_i| = 1`, then
/// collects the 0th segments of all moves whose `j_min`-th segment is
/// `(i_min, i_min)`. Exactly one level must occur.
pub fn derive_i0(d: &WeylDecomposition) -> Result<usize> {
    let (i_min, j_min, _) = repeated_generator(d)?;
    let removed = EdgeLabel::all_for_generators(d, &d.singleton_generators());
    let diagram = build_diagram(d, &removed)?;
    let levels: BTreeSet<usize> =
        enumerate_all_moves(&diagram).iter().filter(|p| p.segment(j_min) == (i_min, i_min)).map(|p| p.i0()).collect();
    match levels.len() {
        1 => Ok(*levels.iter().next().unwrap()),
        _ => Err(Error::NonUniqueI0(levels.into_iter().collect())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_four() -> WeylDecomposition {
        WeylDecomposition::from_word_text("(s2 s3 s4)(s3)(s2)(s1)", 4).unwrap()
    }

    #[test]
    fn parses_both_grammars() {
        assert_eq!(parse_word("(s2 s3 s4)(s3)(s2)(s1)", 4).unwrap(), vec![2, 3, 4, 3, 2, 1]);
        assert_eq!(parse_word("(s2s3s4)(s3)(s2)(s1)", 4).unwrap(), vec![2, 3, 4, 3, 2, 1]);
        assert_eq!(parse_word("", 3).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_word("2 3 | 1", 3).unwrap(), vec![2, 3, 1]);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(matches!(parse_word("(s2", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("s", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("x1", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("((s1))", 3), Err(Error::Syntax { .. })));
        assert_eq!(parse_word("s4", 3), Err(Error::GeneratorOutOfRange { index: 4, ell: 3 }));
        assert!(matches!(parse_word("s0", 3), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn rank_four_example_decomposes() {
        let d = rank_four();
        assert_eq!(d.strings(), &[vec![2, 3, 4], vec![3], vec![2], vec![1]]);
        assert_eq!(d.t(), 4);
        assert_eq!(d.length(), 6);
        assert_eq!(d.j_set(2), vec![2, 4]);
        assert_eq!(d.j_set(3), vec![3, 4]);
        assert_eq!(d.j_set(1), vec![1]);
        assert_eq!(d.j_set(4), vec![4]);
    }

    #[test]
    fn identity_has_no_strings() {
        let d = decompose(&WeylElement::identity(3).unwrap());
        assert_eq!(d.t(), 0);
        assert_eq!(d.length(), 0);
    }

    #[test]
    fn non_reduced_input_word_is_canonicalised() {
        // s1 s2 s1 = s2 s1 s2 = (s1 s2)(s1)
        let a = WeylDecomposition::from_word_text("1 2 1", 2).unwrap();
        let b = WeylDecomposition::from_word_text("2 1 2", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.strings(), &[vec![1, 2], vec![1]]);
        let c = WeylDecomposition::from_word_text("1 1", 2).unwrap();
        assert_eq!(c.t(), 0);
    }

    #[test]
    fn rank_four_axis_constants() {
        let c = axis_constants(&rank_four()).unwrap();
        assert_eq!(c, AxisConstants { i_min: 2, j_min: 2, j_max: 4, i_0: 1 });
    }

    #[test]
    fn s1_is_degenerate() {
        let d = WeylDecomposition::from_word_text("s1", 1).unwrap();
        assert_eq!(axis_constants(&d), Err(Error::NoRepeatedGenerator));
        assert_eq!(derive_i0(&d), Err(Error::NoRepeatedGenerator));
    }

    #[test]
    fn s1s2_s1_constants() {
        let d = WeylDecomposition::from_word_text("(s1 s2)(s1)", 2).unwrap();
        let c = axis_constants(&d).unwrap();
        assert_eq!((c.i_min, c.j_min, c.j_max), (1, 1, 2));
        assert_eq!(c.i_0, 1);
    }

    #[test]
    fn json_shape() {
        let d = rank_four();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"ell":4,"strings":[[2,3,4],[3],[2],[1]]}"#);
        let back: WeylDecomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<WeylDecomposition>(r#"{"ell":3,"strings":[[1],[2]]}"#).is_err());
    }
}
