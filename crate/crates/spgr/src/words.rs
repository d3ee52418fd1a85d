//! Words in the generators `s_0, ..., s_n`, serialized as digit strings for
//! `n <= 9` (e.g. `"0210"`) and as comma-separated integers otherwise.

use crate::error::{Error, Result};

pub type Letter = u8;
pub type Word = Vec<Letter>;

pub fn format_word(word: &[Letter], rank: usize) -> String {
    if word.is_empty() {
        return String::new();
    }
    if rank <= 9 {
        word.iter().map(|l| char::from(b'0' + l)).collect()
    } else {
        word.iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn parse_word(s: &str, rank: usize) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let letters: Word = if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| Error::BadWord(s.into())))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::BadWord(s.into()))
            })
            .collect::<Result<_>>()?
    };
    for &l in &letters {
        if l as usize > rank {
            return Err(Error::LetterOutOfRange {
                index: l as usize,
                rank,
            });
        }
    }
    Ok(letters)
}

/// `u` as a subsequence of `v` (classical subword test).
pub fn is_subword(u: &[Letter], v: &[Letter]) -> bool {
    let mut it = v.iter();
    u.iter().all(|a| it.any(|b| b == a))
}
