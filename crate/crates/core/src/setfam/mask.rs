use std::fmt;

use serde::{Serialize, Serializer};

/// Largest supported ground set: every subset fits in one `u64`.
pub const MAX_GROUND: u8 = 63;

/// An element of the ground set `{1..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub u8);

impl Element {
    /// The distinguished element of the 2-good definition.
    pub const ONE: Element = Element(1);

    #[inline]
    pub fn bit(self) -> u64 {
        1u64 << (self.0 - 1)
    }

    pub fn mask(self) -> Mask {
        Mask(self.bit())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of `{1..63}`; element `e` is bit `e - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask(pub u64);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    pub fn from_elements<I: IntoIterator<Item = u8>>(elements: I) -> Mask {
        Mask(
            elements
                .into_iter()
                .fold(0, |acc, e| acc | Element(e).bit()),
        )
    }

    /// `{1..n}`.
    pub fn ground(n: u8) -> Mask {
        if n >= 64 {
            Mask(u64::MAX)
        } else {
            Mask((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, e: Element) -> bool {
        self.0 & e.bit() != 0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, e: Element) -> Mask {
        Mask(self.0 | e.bit())
    }

    #[inline]
    pub fn without(self, e: Element) -> Mask {
        Mask(self.0 & !e.bit())
    }

    #[inline]
    pub fn is_subset_of(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: Mask) -> bool {
        self != other && self.is_subset_of(other)
    }

    #[inline]
    pub fn meets(self, other: Mask) -> bool {
        self.0 & other.0 != 0
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<Element> {
        (self.0 != 0).then(|| Element(64 - self.0.leading_zeros() as u8))
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All submasks of `self`, ascending as integers (starting with `EMPTY`).
    pub fn submasks(self) -> Submasks {
        Submasks {
            full: self.0,
            next: Some(0),
        }
    }

    /// Compresses `self ∩ base` into local coordinates: bit `i` set iff the
    /// `i`-th smallest element of `base` is present.
    pub fn to_local(self, base: Mask) -> usize {
        let mut out = 0usize;
        for (i, e) in base.elements().enumerate() {
            if self.contains(e) {
                out |= 1 << i;
            }
        }
        out
    }

    /// Inverse of [`Mask::to_local`].
    pub fn from_local(local: usize, base: Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for (i, e) in base.elements().enumerate() {
            if local >> i & 1 == 1 {
                out = out.with(e);
            }
        }
        out
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

/// Serialized as the ascending element list, matching the family file format.
impl Serialize for Mask {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.elements().map(|e| e.0))
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Element(tz as u8 + 1))
    }
}

pub struct Submasks {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            // next submask in increasing order
            Some(((cur | !self.full).wrapping_add(1)) & self.full)
        };
        Some(Mask(cur))
    }
}
