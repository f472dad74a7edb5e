//! Finite words over small alphabets: square and palindrome detection, the
//! square-free generators built from Thue's morphisms, and block expansion.
//!
//! Symbols are stored 0-based. Text I/O (see [`crate::format`]) is 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// A finite word together with the size of the alphabet it is drawn from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequence {
    symbols: Vec<Symbol>,
    alphabet_size: u32,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: u32) -> Result<Self> {
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol,
                alphabet_size,
            });
        }
        Ok(Sequence {
            symbols,
            alphabet_size,
        })
    }

    /// Builds a sequence whose alphabet is just large enough for its symbols.
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        let alphabet_size = symbols.iter().max().map_or(0, |&m| m + 1);
        Sequence {
            symbols,
            alphabet_size,
        }
    }

    /// Builds a sequence from 1-based symbols, as they appear in text.
    pub fn from_one_based(symbols: &[u32]) -> Result<Self> {
        let mut out = Vec::with_capacity(symbols.len());
        for (position, &s) in symbols.iter().enumerate() {
            if s == 0 {
                return Err(Error::SymbolOutOfRange {
                    position,
                    symbol: 0,
                    alphabet_size: 0,
                });
            }
            out.push(s - 1);
        }
        Ok(Sequence::from_symbols(out))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.symbols.iter().map(|&s| s + 1).collect()
    }

    /// The first `len` symbols, keeping the alphabet.
    pub fn prefix(&self, len: usize) -> Sequence {
        Sequence {
            symbols: self.symbols[..len.min(self.len())].to_vec(),
            alphabet_size: self.alphabet_size,
        }
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s + 1)?;
        }
        Ok(())
    }
}

/// Occurrence of a factor `ww` at `start` with `|w| = half_length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub start: usize,
    pub half_length: usize,
}

/// Returns true when `word` is itself a square `ww` (the empty word is not).
pub fn is_square<T: PartialEq>(word: &[T]) -> bool {
    let n = word.len();
    n > 0 && n.is_multiple_of(2) && word[..n / 2] == word[n / 2..]
}

/// Least-start, then shortest, square factor of `seq`.
pub fn find_square(seq: &Sequence) -> Option<Square> {
    find_square_in(seq.symbols())
}

pub fn find_square_in<T: PartialEq>(word: &[T]) -> Option<Square> {
    let n = word.len();
    for start in 0..n {
        for half_length in 1..=(n - start) / 2 {
            let mid = start + half_length;
            if word[start..mid] == word[mid..mid + half_length] {
                return Some(Square { start, half_length });
            }
        }
    }
    None
}

/// Least-start, then shortest, palindromic factor of length at least 2.
/// Returns `(start, length)`.
pub fn find_palindrome(seq: &Sequence) -> Option<(usize, usize)> {
    let w = seq.symbols();
    let n = w.len();
    for start in 0..n {
        for len in 2..=n - start {
            let f = &w[start..start + len];
            if f.iter().eq(f.iter().rev()) {
                return Some((start, len));
            }
        }
    }
    None
}

/// Prefix of the ternary Thue-Morse word, the fixed point of
/// `1 -> 123, 2 -> 13, 3 -> 2`. It starts `1 2 3 1 3 2 1 2 3 2 1 3`.
pub fn thue_squarefree(length: usize) -> Sequence {
    const IMAGES: [&[Symbol]; 3] = [&[0, 1, 2], &[0, 2], &[1]];
    let mut word: Vec<Symbol> = vec![0];
    while word.len() < length {
        word = word
            .iter()
            .flat_map(|&c| IMAGES[c as usize].iter().copied())
            .collect();
    }
    word.truncate(length);
    Sequence {
        symbols: word,
        alphabet_size: 3,
    }
}

/// `thue_squarefree` with the symbol 4 at every third position (1-based
/// positions 3, 6, 9, ...). Square-free and palindrome-free.
pub fn palindrome_free_thue(length: usize) -> Sequence {
    let base = thue_squarefree(length.div_ceil(3) * 2);
    let mut out = Vec::with_capacity(length);
    let mut it = base.symbols().iter();
    while out.len() < length {
        if out.len() % 3 == 2 {
            out.push(3);
        } else {
            out.push(*it.next().expect("base word long enough"));
        }
    }
    Sequence {
        symbols: out,
        alphabet_size: 4,
    }
}

/// Letters of the five-letter substitution driving [`thue_aba_bab_free`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Thue5 {
    A,
    B,
    C,
    D,
    E,
}

impl Thue5 {
    fn image(self) -> &'static [Thue5] {
        use Thue5::*;
        match self {
            A => &[B, D, A, E, A, C],
            B => &[B, D, C],
            C => &[B, D, A, E],
            D => &[B, E, A, C],
            E => &[B, E, A, E],
        }
    }

    /// Translation into the block letters x=ca, y=cb, z=cab, u=cba.
    fn blocks(self) -> &'static [Block] {
        use Block::*;
        match self {
            Thue5::A => &[Z, U, Y, X, U],
            Thue5::B => &[Z, U],
            Thue5::C => &[Z, U, Y],
            Thue5::D => &[Z, X, U],
            Thue5::E => &[Z, X, Y],
        }
    }

    pub fn letter(self) -> char {
        match self {
            Thue5::A => 'A',
            Thue5::B => 'B',
            Thue5::C => 'C',
            Thue5::D => 'D',
            Thue5::E => 'E',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    X,
    Y,
    Z,
    U,
}

impl Block {
    // a = 0, b = 1, c = 2
    fn letters(self) -> &'static [Symbol] {
        match self {
            Block::X => &[2, 0],
            Block::Y => &[2, 1],
            Block::Z => &[2, 0, 1],
            Block::U => &[2, 1, 0],
        }
    }
}

/// The five-letter word after `iterations` substitution steps from `B`.
pub fn thue5_stage(iterations: usize) -> Vec<Thue5> {
    let mut word = vec![Thue5::B];
    for _ in 0..iterations {
        word = word
            .iter()
            .flat_map(|c| c.image().iter().copied())
            .collect();
    }
    word
}

fn expand_thue5(word: &[Thue5]) -> Vec<Symbol> {
    word.iter()
        .flat_map(|c| c.blocks().iter())
        .flat_map(|b| b.letters().iter().copied())
        .collect()
}

/// Prefix of a square-free word on `a, b, c` (encoded 1, 2, 3) with no factor
/// `aba` or `bab`, starting with `c`.
pub fn thue_aba_bab_free(length: usize) -> Sequence {
    let mut stage = vec![Thue5::B];
    let mut word = expand_thue5(&stage);
    while word.len() < length {
        stage = stage
            .iter()
            .flat_map(|c| c.image().iter().copied())
            .collect();
        word = expand_thue5(&stage);
    }
    word.truncate(length);
    Sequence {
        symbols: word,
        alphabet_size: 3,
    }
}

/// Replaces each symbol `t` by the block `t*w, t*w+1, ..., t*w+w-1`.
pub fn block_expand(seq: &Sequence, w: usize) -> Result<Sequence> {
    if w == 0 {
        return Err(Error::InvalidParameter(
            "block width must be at least 1".into(),
        ));
    }
    let w32 = w as u32;
    let symbols = seq
        .symbols()
        .iter()
        .flat_map(|&t| (0..w32).map(move |j| t * w32 + j))
        .collect();
    Ok(Sequence {
        symbols,
        alphabet_size: seq.alphabet_size() * w32,
    })
}
