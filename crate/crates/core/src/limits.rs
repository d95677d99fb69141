/// Caps on the sizes of enumerations, so that a mistyped bound fails fast
/// instead of exhausting memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order whose elements or characters are listed.
    pub group: u128,
    /// Largest number of sector vectors or character combinations.
    pub enumeration: u128,
    /// Largest number of monomials or correlators in a truncation.
    pub truncation: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group: 4096,
            enumeration: 2_000_000,
            truncation: 2_000_000,
        }
    }
}

impl Limits {
    /// Every cap set to `cap`.
    pub fn uniform(cap: u128) -> Self {
        Limits {
            group: cap,
            enumeration: cap,
            truncation: cap,
        }
    }
}
