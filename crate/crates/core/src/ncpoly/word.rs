use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// Word in `X`, `Y`. Ordered by length, then lexicographically with `X < Y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a string over `{X, Y}`; `"1"` is the empty word.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                _ => Err(Error::Parse(format!("bad word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn swapped(&self) -> Word {
        Word(self.0.iter().map(|l| l.swapped()).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Lexicographic order alone, ignoring length.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    /// `X^{k_d-1} Y ... X^{k_1-1} Y` for the index `(k_1, ..., k_d)`.
    pub fn regular(index: &[usize]) -> Result<Word> {
        if index.is_empty() || index.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "index {index:?} must be non-empty with positive entries"
            )));
        }
        let mut v = Vec::new();
        for &k in index.iter().rev() {
            v.extend(std::iter::repeat_n(Letter::X, k - 1));
            v.push(Letter::Y);
        }
        Ok(Word(v))
    }

    /// Inverse of [`Word::regular`]; `None` unless the word ends in `Y`.
    pub fn index(&self) -> Option<Vec<usize>> {
        if self.0.last() != Some(&Letter::Y) {
            return None;
        }
        let mut out = Vec::new();
        let mut run = 1;
        for &l in &self.0 {
            match l {
                Letter::X => run += 1,
                Letter::Y => {
                    out.push(run);
                    run = 1;
                }
            }
        }
        out.reverse();
        Some(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "X",
                Letter::Y => "Y",
            })?;
        }
        Ok(())
    }
}

/// All words of length `1..=max_len` in word order.
pub fn all_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| [w.push(Letter::X), w.push(Letter::Y)])
            .collect();
        layer.sort();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Formal integer combination of words.
pub type LinComb = BTreeMap<Word, i64>;

/// Shuffle product of two words.
pub fn shuffle(u: &Word, v: &Word) -> LinComb {
    let mut out = LinComb::new();
    shuffle_into(u.letters(), v.letters(), &mut Vec::new(), 1, &mut out);
    out
}

fn shuffle_into(u: &[Letter], v: &[Letter], prefix: &mut Vec<Letter>, mult: i64, out: &mut LinComb) {
    if u.is_empty() || v.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        *out.entry(Word(w)).or_insert(0) += mult;
        return;
    }
    prefix.push(u[0]);
    shuffle_into(&u[1..], v, prefix, mult, out);
    prefix.pop();
    prefix.push(v[0]);
    shuffle_into(u, &v[1..], prefix, mult, out);
    prefix.pop();
}

/// Bilinear extension of [`shuffle`].
pub fn shuffle_lin(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = LinComb::new();
    for (u, &x) in a {
        for (v, &y) in b {
            for (w, c) in shuffle(u, v) {
                *out.entry(w).or_insert(0) += x * y * c;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let mut v = [w("Y"), w("XX"), w("1"), w("X"), w("YX"), w("XY")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["1", "X", "Y", "XX", "XY", "YX"]);
        assert_eq!(all_words(3).len(), 14);
    }

    #[test]
    fn regular_words_round_trip() {
        assert_eq!(Word::regular(&[1, 2]).unwrap(), w("XYY"));
        assert_eq!(Word::regular(&[2, 1]).unwrap(), w("YXY"));
        assert_eq!(Word::regular(&[3]).unwrap(), w("XXY"));
        assert_eq!(w("YXY").index(), Some(vec![2, 1]));
        assert_eq!(w("YX").index(), None);
        assert!(Word::regular(&[0]).is_err());
    }

    #[test]
    fn shuffle_by_hand() {
        let s = shuffle(&w("XY"), &w("Y"));
        assert_eq!(s, LinComb::from([(w("XYY"), 2), (w("YXY"), 1)]));
        let s = shuffle(&w("X"), &w("X"));
        assert_eq!(s, LinComb::from([(w("XX"), 2)]));
        // binomial count: |u ш v| = C(|u|+|v|, |u|)
        let total: i64 = shuffle(&w("XXY"), &w("YX")).values().sum();
        assert_eq!(total, 10);
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 0..=max).prop_map(Word)
    }

    proptest! {
        #[test]
        fn shuffle_is_commutative_and_associative(a in arb_word(3), b in arb_word(3), c in arb_word(2)) {
            prop_assert_eq!(shuffle(&a, &b), shuffle(&b, &a));
            let one = |x: &Word| LinComb::from([(x.clone(), 1)]);
            let left = shuffle_lin(&shuffle(&a, &b), &one(&c));
            let right = shuffle_lin(&one(&a), &shuffle(&b, &c));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn parse_display_round_trip(a in arb_word(6)) {
            prop_assert_eq!(Word::parse(&a.to_string()).unwrap(), a);
        }
    }
}
