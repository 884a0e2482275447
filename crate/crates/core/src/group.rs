//! Elementary abelian 2-groups and their sign characters.
//!
//! Group elements are bit-words: bit `i` set means entry `i` of the
//! corresponding ±1 vector is `-1`. The group law is XOR, the identity is the
//! zero word (the all `+1` vector), and every element is its own inverse.
//!
//! Two groups appear throughout the crate:
//!
//! * the full cube `Z_2^N` of all `N`-bit words, and
//! * its even-parity subgroup (words of even popcount), a group of
//!   dimension `N - 1` that carries the connected component of the Hadamard
//!   graph containing the all-ones vector.
//!
//! Characters are indexed by masks: `chi_S(v) = (-1)^{|S & v|}`. On the
//! even-parity subgroup the masks `S` and `S ^ 1...1` agree, so characters
//! there are canonicalized to the mask with bit 0 clear.

use std::fmt;

use num_rational::Ratio;

use crate::error::{ensure_len, Error, Result};

/// Longest word length representable by a [`GroupElement`].
pub const MAX_WORD_LEN: usize = 64;

fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_word_len(len: usize) -> Result<()> {
    if len == 0 || len > MAX_WORD_LEN {
        return Err(Error::Parameter(format!(
            "word length must be in 1..={MAX_WORD_LEN}, got {len}"
        )));
    }
    Ok(())
}

/// Sign convention used when a word is written out as a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Entries `+1` / `-1`.
    #[default]
    PlusMinusOne,
    /// Entries `1` / `0`, with `-1` written as `0`.
    ZeroOne,
}

impl Convention {
    /// Entry written for a cleared bit (`+1`) and for a set bit (`-1`).
    fn symbols(self) -> (i8, i8) {
        match self {
            Convention::PlusMinusOne => (1, -1),
            Convention::ZeroOne => (1, 0),
        }
    }
}

/// Element of `Z_2^len`, stored as a bit-word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    bits: u64,
    len: usize,
}

impl GroupElement {
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        check_word_len(len)?;
        if bits & !low_mask(len) != 0 {
            return Err(Error::Parameter(format!(
                "bits {bits:#x} do not fit in a word of length {len}"
            )));
        }
        Ok(Self { bits, len })
    }

    pub fn identity(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    /// Number of `-1` entries.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_even(&self) -> bool {
        self.weight().is_multiple_of(2)
    }

    /// True when entry `i` is `-1`.
    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        element_mul(self, other)
    }

    /// The vector of entries in the requested convention.
    pub fn entries(&self, convention: Convention) -> Vec<i8> {
        let (plus, minus) = convention.symbols();
        (0..self.len)
            .map(|i| if self.bit(i) { minus } else { plus })
            .collect()
    }

    /// Parses a vector written in `convention` back into a word.
    pub fn from_entries(entries: &[i8], convention: Convention) -> Result<Self> {
        check_word_len(entries.len())?;
        let (plus, minus) = convention.symbols();
        let mut bits = 0u64;
        for (i, &e) in entries.iter().enumerate() {
            if e == minus {
                bits |= 1 << i;
            } else if e != plus {
                return Err(Error::Parameter(format!(
                    "entry {e} at position {i} is not valid in {convention:?} convention"
                )));
            }
        }
        Self::new(bits, entries.len())
    }

    /// Binary text with position 0 first, e.g. `w(0,1)` of length 4 is `1100`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Inverse of [`GroupElement::to_bit_string`].
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let s = s.trim();
        check_word_len(s.len())?;
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(Error::Parameter(format!(
                        "invalid character {other:?} in bit-word {s:?}"
                    )))
                }
            }
        }
        Self::new(bits, s.len())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Converts a written vector between the `±1` and `0/1` conventions.
pub fn convert_entries(entries: &[i8], from: Convention, to: Convention) -> Result<Vec<i8>> {
    Ok(GroupElement::from_entries(entries, from)?.entries(to))
}

/// Group product: component-wise multiplication of ±1 vectors, XOR of words.
pub fn element_mul(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    ensure_len(a.len, b.len)?;
    Ok(GroupElement {
        bits: a.bits ^ b.bits,
        len: a.len,
    })
}

/// The word with `-1` exactly at positions `i` and `j`.
pub fn pair_generator(len: usize, i: usize, j: usize) -> Result<GroupElement> {
    check_word_len(len)?;
    if i == j {
        return Err(Error::Index(format!("pair generator needs i != j, got {i}")));
    }
    if i >= len || j >= len {
        return Err(Error::Index(format!(
            "pair ({i}, {j}) out of range for length {len}"
        )));
    }
    GroupElement::new((1 << i) | (1 << j), len)
}

/// Sign character `v -> (-1)^{|mask & v|}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    mask: u64,
    len: usize,
}

impl Character {
    pub fn new(mask: u64, len: usize) -> Result<Self> {
        let e = GroupElement::new(mask, len)?;
        Ok(Self {
            mask: e.bits,
            len,
        })
    }

    pub fn trivial(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    /// The character of the even-parity subgroup that is `-1` on `w(0, i)`
    /// and `+1` on every other `w(0, j)`.
    pub fn pair_dual(len: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= len {
            return Err(Error::Index(format!(
                "dual generator index must be in 1..{len}, got {i}"
            )));
        }
        Self::new(1 << i, len)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.mask == 0
    }

    /// Product of characters (XOR of masks).
    pub fn mul(&self, other: &Character) -> Result<Character> {
        ensure_len(self.len, other.len)?;
        Ok(Character {
            mask: self.mask ^ other.mask,
            len: self.len,
        })
    }

    /// Canonical representative on the even-parity subgroup: masks that differ
    /// by the all-ones word agree there, the one with bit 0 clear is kept.
    pub fn canonical_even(&self) -> Character {
        let mask = if self.mask & 1 == 1 {
            self.mask ^ low_mask(self.len)
        } else {
            self.mask
        };
        Character {
            mask,
            len: self.len,
        }
    }

    pub fn eval(&self, v: &GroupElement) -> Result<i8> {
        char_eval(self, v)
    }
}

#[inline]
pub(crate) fn sign_of_parity(word: u64) -> i8 {
    if word.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Evaluates a sign character on a group element.
pub fn char_eval(s: &Character, v: &GroupElement) -> Result<i8> {
    ensure_len(s.len, v.len)?;
    Ok(sign_of_parity(s.mask & v.bits))
}

/// A finite elementary abelian 2-group realised inside `Z_2^len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    /// All words of the given length.
    Full { len: usize },
    /// Words of even popcount.
    EvenParity { len: usize },
}

impl Subgroup {
    /// Resolves a group from the ambient word length and its dimension:
    /// `dim == len` is the full cube, `dim == len - 1` the even-parity subgroup.
    pub fn from_dims(len: usize, dim: usize) -> Result<Self> {
        check_word_len(len)?;
        if dim == len {
            Ok(Subgroup::Full { len })
        } else if dim + 1 == len {
            Ok(Subgroup::EvenParity { len })
        } else {
            Err(Error::Dimension {
                expected: len,
                found: dim,
            })
        }
    }

    pub fn word_len(&self) -> usize {
        match *self {
            Subgroup::Full { len } | Subgroup::EvenParity { len } => len,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Subgroup::Full { len } => len,
            Subgroup::EvenParity { len } => len - 1,
        }
    }

    /// Group order as `u64`; fails beyond `2^63`.
    pub fn order(&self) -> Result<u64> {
        let d = self.dim();
        if d >= 64 {
            return Err(Error::Size {
                what: "group dimension",
                actual: d,
                limit: 63,
            });
        }
        Ok(1u64 << d)
    }

    pub fn contains(&self, v: &GroupElement) -> bool {
        match *self {
            Subgroup::Full { len } => v.len == len,
            Subgroup::EvenParity { len } => v.len == len && v.is_even(),
        }
    }

    /// Elements in ascending order of their bit-word.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let len = self.word_len();
        let end = if len >= 64 { u64::MAX } else { 1u64 << len };
        let even_only = matches!(self, Subgroup::EvenParity { .. });
        (0..end)
            .filter(move |w| !even_only || w.count_ones() % 2 == 0)
            .map(move |bits| GroupElement { bits, len })
    }
}

/// `(1/|G|) * sum_g alpha(g) beta(g)` over the group of dimension `group_dim`
/// inside the characters' ambient cube.
pub fn char_inner_product(
    alpha: &Character,
    beta: &Character,
    group_dim: usize,
) -> Result<Ratio<i64>> {
    ensure_len(alpha.len, beta.len)?;
    let group = Subgroup::from_dims(alpha.len, group_dim)?;
    crate::error::ensure_size("group dimension for enumeration", group_dim, 40)?;
    let product = alpha.mask ^ beta.mask;
    let sum: i64 = group
        .elements()
        .map(|g| i64::from(sign_of_parity(product & g.bits)))
        .sum();
    Ok(Ratio::new(sum, group.order()? as i64))
}

/// Rank over GF(2) of a list of bit-words.
pub fn gf2_rank(words: impl IntoIterator<Item = u64>) -> usize {
    // basis[b] holds a vector whose highest set bit is b
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut w in words {
        while w != 0 {
            let top = 63 - w.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = w;
                rank += 1;
                break;
            }
            w ^= basis[top];
        }
    }
    rank
}

/// Inverse-closed set of non-identity elements defining a Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    elements: Vec<GroupElement>,
    len: usize,
}

impl ConnectionSet {
    /// Builds a connection set; duplicates are merged, the identity is rejected.
    pub fn new(len: usize, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        check_word_len(len)?;
        let mut elements: Vec<GroupElement> = elements.into_iter().collect();
        for e in &elements {
            ensure_len(len, e.len)?;
            if e.is_identity() {
                return Err(Error::Invariant(
                    "connection set contains the identity".into(),
                ));
            }
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(Self { elements, len })
    }

    pub fn from_bits(len: usize, bits: impl IntoIterator<Item = u64>) -> Result<Self> {
        let elements = bits
            .into_iter()
            .map(|b| GroupElement::new(b, len))
            .collect::<Result<Vec<_>>>()?;
        Self::new(len, elements)
    }

    /// Parses one binary bit-word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let word = GroupElement::from_bit_string(line).map_err(|e| Error::Parse {
                line: lineno + 1,
                message: e.to_string(),
            })?;
            words.push(word);
        }
        let len = match words.first() {
            Some(w) => w.len(),
            None => {
                return Err(Error::Parse {
                    line: 0,
                    message: "connection set file has no words".into(),
                })
            }
        };
        Self::new(len, words)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_bit_string());
            out.push('\n');
        }
        out
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &GroupElement) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    /// Every element's inverse is present. Always true in a 2-group.
    pub fn is_inverse_closed(&self) -> bool {
        // x^{-1} = x
        self.elements.iter().all(|e| self.contains(e))
    }

    pub fn rank(&self) -> usize {
        gf2_rank(self.elements.iter().map(|e| e.bits))
    }
}

/// True iff the connection set spans a group of dimension `target_dim`.
pub fn generates(c: &ConnectionSet, target_dim: usize) -> bool {
    c.rank() == target_dim
}
