//! Lyndon words and the Lyndon basis of the free Lie algebra over the integers.
//!
//! A basis element `b(w)` is the standard bracketing of the Lyndon word `w`.
//! Brackets of basis elements are rewritten back into the basis by expanding
//! into the free associative algebra and peeling off lexicographically
//! smallest words: `b(w) = w + (larger words)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LyndonWord(Vec<u8>);

impl LyndonWord {
    pub fn letter(i: usize) -> Self {
        LyndonWord(vec![i as u8])
    }

    /// Validates the Lyndon property.
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if !is_lyndon(&letters) {
            return Err(Error::Type(format!("{letters:?} is not a Lyndon word")));
        }
        Ok(LyndonWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_letter(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains_any(&self, letters: &[usize]) -> bool {
        self.0.iter().any(|&c| letters.contains(&(c as usize)))
    }

    /// Standard factorization `w = u v` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        if self.0.len() < 2 {
            return None;
        }
        for split in 1..self.0.len() {
            let suffix = &self.0[split..];
            if is_lyndon(suffix) {
                return Some((LyndonWord(self.0[..split].to_vec()), LyndonWord(suffix.to_vec())));
            }
        }
        unreachable!("the last letter is always a Lyndon suffix")
    }
}

/// Shorter words first, then lexicographic.
impl Ord for LyndonWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LyndonWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LyndonWord {
    /// Nested `F[..]` form of the standard bracketing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.standard_factorization() {
            None => write!(f, "d{}", self.0[0]),
            Some((u, v)) => write!(f, "F[{u},{v}]"),
        }
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Strictly smaller than every proper rotation.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|r| {
        let rot = w[r..].iter().chain(&w[..r]);
        w.iter().cmp(rot) == Ordering::Less
    })
}

/// All Lyndon words of length `d` over `n` letters, sorted lexicographically
/// (Duval's generation algorithm).
pub fn lyndon_basis(n: usize, d: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let mut w: Vec<i64> = vec![-1];
    while let Some(last) = w.last_mut() {
        *last += 1;
        if w.len() == d {
            out.push(LyndonWord(w.iter().map(|&c| c as u8).collect()));
        }
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(n as i64 - 1)) {
            w.pop();
        }
    }
    out
}

/// Integer combination of Lyndon basis elements.
pub type LieCombo = BTreeMap<LyndonWord, i64>;

type Assoc = BTreeMap<Vec<u8>, i64>;

fn add_into(acc: &mut Assoc, w: Vec<u8>, c: i64) {
    if c == 0 {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

fn assoc_commutator(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut ab = wa.clone();
            ab.extend_from_slice(wb);
            add_into(&mut out, ab, ca * cb);
            let mut ba = wb.clone();
            ba.extend_from_slice(wa);
            add_into(&mut out, ba, -ca * cb);
        }
    }
    out
}

/// Memoized Lyndon-basis structure constants. Cloning shares the cache.
type BracketCache = HashMap<(LyndonWord, LyndonWord), Arc<LieCombo>>;

#[derive(Clone, Default)]
pub struct LyndonTable {
    expansions: Arc<RwLock<HashMap<LyndonWord, Arc<Assoc>>>>,
    brackets: Arc<RwLock<BracketCache>>,
}

impl fmt::Debug for LyndonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LyndonTable")
    }
}

impl LyndonTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expansion of `b(w)` in the free associative algebra.
    fn expansion(&self, w: &LyndonWord) -> Arc<Assoc> {
        if let Some(e) = self.expansions.read().unwrap().get(w) {
            return e.clone();
        }
        let e = match w.standard_factorization() {
            None => {
                let mut a = Assoc::new();
                a.insert(w.0.clone(), 1);
                a
            }
            Some((u, v)) => assoc_commutator(&self.expansion(&u), &self.expansion(&v)),
        };
        let e = Arc::new(e);
        self.expansions.write().unwrap().insert(w.clone(), e.clone());
        e
    }

    /// Rewrite a Lie polynomial, given by its associative expansion, in the Lyndon basis.
    fn decompose(&self, mut p: Assoc) -> LieCombo {
        let mut out = LieCombo::new();
        while let Some((w, &c)) = p.iter().next() {
            let word = LyndonWord(w.clone());
            assert!(is_lyndon(&word.0), "leading word of a Lie polynomial must be Lyndon");
            for (v, d) in self.expansion(&word).iter() {
                add_into(&mut p, v.clone(), -c * d);
            }
            out.insert(word, c);
        }
        out
    }

    /// `[b(u), b(v)]` in the Lyndon basis.
    pub fn bracket(&self, u: &LyndonWord, v: &LyndonWord) -> Arc<LieCombo> {
        let key = (u.clone(), v.clone());
        if let Some(r) = self.brackets.read().unwrap().get(&key) {
            return r.clone();
        }
        let r = if u == v {
            LieCombo::new()
        } else {
            self.decompose(assoc_commutator(&self.expansion(u), &self.expansion(v)))
        };
        let r = Arc::new(r);
        self.brackets.write().unwrap().insert(key, r.clone());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: usize, d: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let total = n.pow(d as u32);
        for mut code in 0..total {
            let mut w = vec![0u8; d];
            for slot in w.iter_mut().rev() {
                *slot = (code % n) as u8;
                code /= n;
            }
            // rotation test written out directly
            let rots_larger = (1..d).all(|r| {
                let rot: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
                w < rot
            });
            if rots_larger {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn small_bases() {
        let b: Vec<Vec<u8>> = lyndon_basis(2, 1).into_iter().map(|w| w.0).collect();
        assert_eq!(b, vec![vec![0], vec![1]]);
        let b: Vec<Vec<u8>> = lyndon_basis(2, 2).into_iter().map(|w| w.0).collect();
        assert_eq!(b, vec![vec![0, 1]]);
    }

    #[test]
    fn duval_matches_brute_force() {
        for n in 1..=3 {
            for d in 1..=6 {
                let got: Vec<Vec<u8>> = lyndon_basis(n, d).into_iter().map(|w| w.0).collect();
                assert_eq!(got, brute_force(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn standard_factorization_examples() {
        let w = LyndonWord::new(vec![0, 0, 1]).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!((u.0, v.0), (vec![0], vec![0, 1]));
        let w = LyndonWord::new(vec![0, 1, 1]).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!((u.0, v.0), (vec![0, 1], vec![1]));
        assert_eq!(w.to_string(), "F[F[d0,d1],d1]");
    }

    #[test]
    fn bracket_rewrites() {
        let t = LyndonTable::new();
        let a = LyndonWord::letter(0);
        let b = LyndonWord::letter(1);
        let ab = LyndonWord::new(vec![0, 1]).unwrap();
        assert_eq!(*t.bracket(&a, &b), LieCombo::from([(ab.clone(), 1)]));
        assert_eq!(*t.bracket(&b, &a), LieCombo::from([(ab.clone(), -1)]));
        // [[0,1],0] = -[0,[0,1]]
        let aab = LyndonWord::new(vec![0, 0, 1]).unwrap();
        assert_eq!(*t.bracket(&ab, &a), LieCombo::from([(aab, -1)]));
        assert!(t.bracket(&a, &a).is_empty());
    }
}
