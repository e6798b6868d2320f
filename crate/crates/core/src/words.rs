//! Reduced words in free groups and Cayley-ball enumeration.

use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default upper bound on the number of words [`ball`] will materialize.
pub const DEFAULT_BALL_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A generator `a_k` or its inverse. Ordered as `a1 < a1^-1 < a2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    generator: NonZeroU32,
    sign: Sign,
}

impl Letter {
    pub fn new(generator: u32, sign: Sign) -> Result<Self> {
        let generator =
            NonZeroU32::new(generator).ok_or_else(|| Error::bad_input("generator indices start at 1"))?;
        Ok(Letter { generator, sign })
    }

    pub fn pos(generator: u32) -> Result<Self> {
        Self::new(generator, Sign::Pos)
    }

    pub fn neg(generator: u32) -> Result<Self> {
        Self::new(generator, Sign::Neg)
    }

    pub fn generator(self) -> u32 {
        self.generator.get()
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "a{}", self.generator),
            Sign::Neg => write!(f, "a{}^-1", self.generator),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::bad_input(format!("bad letter {s:?}; expected a<k> or a<k>^-1"));
        let body = s.strip_prefix('a').ok_or_else(bad)?;
        let (index, sign) = match body.strip_suffix("^-1") {
            Some(idx) => (idx, Sign::Neg),
            None => (body, Sign::Pos),
        };
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Letter::new(index.parse().map_err(|_| bad())?, sign)
    }
}

/// A reduced word. The identity is the empty word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length `|x|`.
    #[allow(clippy::len_without_is_empty)] // emptiness is `is_identity`
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// `letter^n` for `n >= 0`.
    pub fn power(letter: Letter, n: usize) -> Word {
        Word {
            letters: vec![letter; n],
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let overlap = self
            .letters
            .iter()
            .rev()
            .zip(&other.letters)
            .take_while(|(a, b)| a.cancels(**b))
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * overlap);
        letters.extend_from_slice(&self.letters[..self.len() - overlap]);
        letters.extend_from_slice(&other.letters[overlap..]);
        Word { letters }
    }

    /// Length of `self^{-1} * other` without building the product.
    pub fn distance(&self, other: &Word) -> usize {
        let common = self
            .letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count();
        self.len() + other.len() - 2 * common
    }

    /// Signed exponent sum with generator `a_k` weighted by `k`.
    pub fn weighted_exponent_sum(&self) -> i128 {
        self.letters
            .iter()
            .map(|l| {
                let k = i128::from(l.generator());
                match l.sign {
                    Sign::Pos => k,
                    Sign::Neg => -k,
                }
            })
            .sum()
    }
}

/// Cancel adjacent inverse pairs until none remain (single stack pass).
pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last().is_some_and(|top| top.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word { letters: stack }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts unreduced input and reduces it.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens == ["e"] {
            return Ok(Word::identity());
        }
        let letters = tokens
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<Letter>>>()?;
        Ok(reduce(letters))
    }
}

/// Group rank: finite `r >= 1` with `q = 2r - 1`, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(NonZeroU32),
    Infinite,
}

impl Rank {
    pub fn finite(r: u32) -> Result<Rank> {
        NonZeroU32::new(r)
            .map(Rank::Finite)
            .ok_or_else(|| Error::bad_input("rank must be at least 1"))
    }

    pub fn r(self) -> Option<u32> {
        match self {
            Rank::Finite(r) => Some(r.get()),
            Rank::Infinite => None,
        }
    }

    /// Branching number `q = 2r - 1`.
    pub fn q(self) -> Option<u64> {
        self.r().map(|r| 2 * u64::from(r) - 1)
    }

    pub(crate) fn require_finite(self, what: &str) -> Result<u64> {
        self.q()
            .ok_or_else(|| Error::bad_input(format!("{what} needs a finite rank")))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Rank::Infinite),
            t => {
                let r: u32 = t
                    .parse()
                    .map_err(|_| Error::bad_input(format!("bad rank {s:?}")))?;
                Rank::finite(r)
            }
        }
    }
}

/// `|E_n|`: 1 for `n = 0`, `(q+1) q^(n-1)` otherwise.
pub fn sphere_size(rank: Rank, n: usize) -> Result<u64> {
    let q = rank.require_finite("sphere_size")?;
    if n == 0 {
        return Ok(1);
    }
    let exp = u32::try_from(n - 1).map_err(|_| Error::Overflow("sphere size"))?;
    q.checked_pow(exp)
        .and_then(|p| p.checked_mul(q + 1))
        .ok_or(Error::Overflow("sphere size"))
}

fn ball_size(rank: Rank, radius: usize) -> Result<u128> {
    let mut total: u128 = 0;
    for n in 0..=radius {
        let s = match sphere_size(rank, n) {
            Ok(s) => u128::from(s),
            Err(Error::Overflow(_)) => return Ok(u128::MAX),
            Err(e) => return Err(e),
        };
        total = total.saturating_add(s);
    }
    Ok(total)
}

/// All reduced words of length `<= radius`, sorted by (length, lex).
pub fn ball(rank: Rank, radius: usize) -> Result<Vec<Word>> {
    ball_with_cap(rank, radius, DEFAULT_BALL_CAP)
}

pub fn ball_with_cap(rank: Rank, radius: usize, cap: usize) -> Result<Vec<Word>> {
    let r = rank
        .r()
        .ok_or_else(|| Error::bad_input("balls are only enumerable for finite rank"))?;
    let predicted = ball_size(rank, radius)?;
    if predicted > cap as u128 {
        return Err(Error::CapExceeded { predicted, cap });
    }
    let alphabet: Vec<Letter> = (1..=r)
        .flat_map(|g| [Sign::Pos, Sign::Neg].map(|s| Letter::new(g, s).expect("g >= 1")))
        .collect();

    let mut words = vec![Word::identity()];
    let mut layer_start = 0;
    for _ in 0..radius {
        let layer_end = words.len();
        for i in layer_start..layer_end {
            let last = words[i].letters.last().copied();
            for &l in &alphabet {
                if last.is_some_and(|t| t.cancels(l)) {
                    continue;
                }
                let mut letters = Vec::with_capacity(words[i].len() + 1);
                letters.extend_from_slice(&words[i].letters);
                letters.push(l);
                words.push(Word { letters });
            }
        }
        layer_start = layer_end;
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn a(k: u32) -> Letter {
        Letter::pos(k).unwrap()
    }

    fn ai(k: u32) -> Letter {
        Letter::neg(k).unwrap()
    }

    /// Repeatedly delete the first adjacent cancelling pair.
    fn reduce_by_rewriting(mut letters: Vec<Letter>) -> Vec<Letter> {
        loop {
            match letters.windows(2).position(|p| p[0].cancels(p[1])) {
                Some(i) => {
                    letters.drain(i..i + 2);
                }
                None => return letters,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce([a(1), ai(1)]), Word::identity());
        assert_eq!(reduce([a(1), a(2), ai(2), a(1)]), Word::power(a(1), 2));
        let input = vec![ai(2), a(1), ai(1), a(2), a(2)];
        assert_eq!(reduce_by_rewriting(input.clone()), vec![a(2)]);
        assert_eq!(reduce(input), w("a2"));
        assert_eq!(reduce([]), Word::identity());
    }

    #[test]
    fn multiply_and_inverse_examples() {
        let x = w("a1 a2 a1^-1");
        assert!(x.multiply(&x.inverse()).is_identity());
        let x = w("a1 a2");
        let y = w("a2^-1 a1^-1 a2");
        let xy = x.multiply(&y);
        assert_eq!(xy, w("a2"));
        assert_eq!((x.len() + y.len()) % 2, xy.len() % 2);
        assert_eq!(w("a1 a2").inverse(), w("a2^-1 a1^-1"));
    }

    #[test]
    fn text_format() {
        assert_eq!(w("a1 a2^-1 a1").to_string(), "a1 a2^-1 a1");
        assert_eq!(w("e").to_string(), "e");
        assert_eq!(w("").to_string(), "e");
        assert_eq!(w("a17^-1").letters()[0].generator(), 17);
        assert!("b1".parse::<Word>().is_err());
        assert!("a0".parse::<Word>().is_err());
        assert!("a^-1".parse::<Word>().is_err());
    }

    #[test]
    fn sphere_sizes() {
        let r2 = Rank::finite(2).unwrap();
        assert_eq!(sphere_size(r2, 0).unwrap(), 1);
        assert_eq!(sphere_size(r2, 1).unwrap(), 4);
        assert_eq!(sphere_size(r2, 2).unwrap(), 12);
        assert_eq!(sphere_size(Rank::finite(1).unwrap(), 5).unwrap(), 2);
        assert_eq!(sphere_size(r2, 100), Err(Error::Overflow("sphere size")));
        assert!(sphere_size(Rank::Infinite, 1).is_err());
    }

    #[test]
    fn ball_sizes_and_order() {
        let r2 = Rank::finite(2).unwrap();
        assert_eq!(ball(r2, 1).unwrap().len(), 5);
        assert_eq!(ball(r2, 2).unwrap().len(), 17);
        assert_eq!(ball(r2, 3).unwrap().len(), 53);
        let b = ball(r2, 3).unwrap();
        assert!(b.windows(2).all(|p| (p[0].len(), &p[0]) < (p[1].len(), &p[1])));
        let names: Vec<String> = ball(r2, 1).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["e", "a1", "a1^-1", "a2", "a2^-1"]);
    }

    #[test]
    fn ball_size_matches_sphere_sum() {
        for r in 1..=3 {
            let rank = Rank::finite(r).unwrap();
            for radius in 0..=6 {
                let expected: u64 = (0..=radius).map(|n| sphere_size(rank, n).unwrap()).sum();
                let b = ball(rank, radius).unwrap();
                assert_eq!(b.len() as u64, expected, "r={r} N={radius}");
                let set: std::collections::HashSet<_> = b.iter().collect();
                assert_eq!(set.len(), b.len());
                for x in &b {
                    assert!(set.contains(&x.inverse()));
                    assert_eq!(x.inverse().len(), x.len());
                    assert_eq!(reduce(x.letters().to_vec()), *x);
                }
            }
        }
    }

    #[test]
    fn ball_cap_is_enforced() {
        let r2 = Rank::finite(2).unwrap();
        assert_eq!(
            ball_with_cap(r2, 3, 50),
            Err(Error::CapExceeded {
                predicted: 53,
                cap: 50
            })
        );
        assert!(matches!(ball(r2, 40), Err(Error::CapExceeded { .. })));
        assert!(ball(Rank::Infinite, 1).is_err());
    }

    fn arb_letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((1u32..4, any::<bool>()), 0..12).prop_map(|v| {
            v.into_iter()
                .map(|(g, neg)| Letter::new(g, if neg { Sign::Neg } else { Sign::Pos }).unwrap())
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn multiply_agrees_with_reducing_concat(x in arb_letters(), y in arb_letters()) {
            let (x, y) = (reduce(x), reduce(y));
            let concat: Vec<Letter> = x.letters().iter().chain(y.letters()).copied().collect();
            let xy = x.multiply(&y);
            prop_assert_eq!(&reduce(concat.clone()), &xy);
            prop_assert_eq!(reduce_by_rewriting(concat), xy.letters().to_vec());
            prop_assert_eq!(xy.len() % 2, (x.len() + y.len()) % 2);
            prop_assert_eq!(x.distance(&y), x.inverse().multiply(&y).len());
        }
    }
}
