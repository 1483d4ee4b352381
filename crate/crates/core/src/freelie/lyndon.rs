use crate::ncpoly::{Letter, Word};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

/// Lyndon words of length `1..=max_len` in word order.
pub fn lyndon_words(max_len: usize) -> Vec<Word> {
    // Duval's generation in lexicographic order.
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(Word::new(
            w.iter()
                .map(|&b| if b == 0 { Letter::X } else { Letter::Y })
                .collect(),
        ));
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        match w.last_mut() {
            Some(b) => *b = 1,
            None => break,
        }
    }
    out.sort();
    out
}

pub fn is_lyndon(w: &Word) -> bool {
    let n = w.len();
    n > 0 && (1..n).all(|k| w.lex_cmp(&w.slice(k, n).concat(&w.slice(0, k))).is_lt())
}

/// `w = uv` with `v` the longest proper Lyndon suffix. `None` for letters.
pub fn standard_factorization(w: &Word) -> Option<(Word, Word)> {
    let n = w.len();
    (1..n)
        .map(|k| (w.slice(0, k), w.slice(k, n)))
        .find(|(_, v)| is_lyndon(v))
}

thread_local! {
    static EXPANSIONS: RefCell<HashMap<Word, BTreeMap<Word, i64>>> = RefCell::new(HashMap::new());
}

/// Word expansion of the bracketing of a Lyndon word.
pub fn bracket_expansion(w: &Word) -> BTreeMap<Word, i64> {
    if let Some(hit) = EXPANSIONS.with(|m| m.borrow().get(w).cloned()) {
        return hit;
    }
    let out = match standard_factorization(w) {
        None => BTreeMap::from([(w.clone(), 1)]),
        Some((u, v)) => {
            let (pu, pv) = (bracket_expansion(&u), bracket_expansion(&v));
            let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
            for (a, &x) in &pu {
                for (b, &y) in &pv {
                    *acc.entry(a.concat(b)).or_insert(0) += x * y;
                    *acc.entry(b.concat(a)).or_insert(0) -= x * y;
                }
            }
            acc.retain(|_, c| *c != 0);
            acc
        }
    };
    EXPANSIONS.with(|m| m.borrow_mut().insert(w.clone(), out.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn counts_match_necklace_formula() {
        // Witt's formula for two letters: 2, 1, 2, 3, 6, 9, 18, 30
        let words = lyndon_words(8);
        let mut counts = [0usize; 9];
        for x in &words {
            counts[x.len()] += 1;
        }
        assert_eq!(&counts[1..], &[2, 1, 2, 3, 6, 9, 18, 30]);
        assert!(words.iter().all(is_lyndon));
    }

    #[test]
    fn factorization_takes_longest_lyndon_suffix() {
        assert_eq!(standard_factorization(&w("XXY")), Some((w("X"), w("XY"))));
        assert_eq!(standard_factorization(&w("XYY")), Some((w("XY"), w("Y"))));
        assert_eq!(standard_factorization(&w("XXYXY")), Some((w("XXY"), w("XY"))));
        assert_eq!(standard_factorization(&w("X")), None);
    }

    #[test]
    fn expansion_is_word_plus_larger_words() {
        let e = bracket_expansion(&w("XYY"));
        assert_eq!(e, BTreeMap::from([(w("XYY"), 1), (w("YXY"), -2), (w("YYX"), 1)]));
        for l in lyndon_words(7) {
            let e = bracket_expansion(&l);
            assert_eq!(e.get(&l), Some(&1));
            assert!(e.keys().all(|u| u.lex_cmp(&l).is_ge()));
        }
    }
}
