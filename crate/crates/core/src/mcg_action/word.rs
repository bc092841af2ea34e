use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A generator of the centrally extended pure mapping class group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Twist along the cycle `α`, acting as `T_O`.
    A,
    /// Twist along `β_i` (1-based), acting as `T_{κ(x_i)}`.
    B(usize),
    /// The central element, acting as `[1]`.
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            Generator::A => write!(f, "a")?,
            Generator::B(i) => write!(f, "b{i}")?,
            Generator::T => write!(f, "t")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter, Error> {
        let (base, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s.strip_suffix("^1").unwrap_or(s), false),
        };
        let gen = match base {
            "a" => Generator::A,
            "t" => Generator::T,
            _ => match base.strip_prefix('b').map(str::parse::<usize>) {
                Some(Ok(i)) if i >= 1 => Generator::B(i),
                _ => return Err(Error::Parse(format!("unknown letter '{s}'"))),
            },
        };
        Ok(Letter { gen, inverse })
    }
}

/// A word in `a`, `b_i` and `t`, acting on objects right to left.
///
/// ```
/// use nodal_mirror::mcg_action::McgWord;
/// let w: McgWord = "b1 a b2^-1".parse().unwrap();
/// assert_eq!(w.len(), 3);
/// assert_eq!(w.inverse().to_string(), "b2 a^-1 b1^-1");
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct McgWord {
    pub letters: Vec<Letter>,
}

impl McgWord {
    pub fn new(letters: Vec<Letter>) -> McgWord {
        McgWord { letters }
    }

    pub fn identity() -> McgWord {
        McgWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self · other`: apply `other` first.
    pub fn then(&self, other: &McgWord) -> McgWord {
        McgWord::new(self.letters.iter().chain(&other.letters).copied().collect())
    }

    pub fn pow(&self, k: usize) -> McgWord {
        McgWord::new(self.letters.repeat(k))
    }

    pub fn inverse(&self) -> McgWord {
        McgWord::new(self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    /// Largest `b` index used, 0 if none.
    pub fn max_index(&self) -> usize {
        self.letters
            .iter()
            .map(|l| match l.gen {
                Generator::B(i) => i,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn check_range(&self, n: usize) -> Result<(), Error> {
        match self.max_index() {
            i if i > n => Err(Error::Parse(format!("letter b{i} out of range for n = {n}"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for McgWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<McgWord, Error> {
        s.split_whitespace().map(str::parse).collect::<Result<_, _>>().map(McgWord::new)
    }
}

impl TryFrom<String> for McgWord {
    type Error = Error;

    fn try_from(s: String) -> Result<McgWord, Error> {
        s.parse()
    }
}

impl From<McgWord> for String {
    fn from(w: McgWord) -> String {
        w.to_string()
    }
}
