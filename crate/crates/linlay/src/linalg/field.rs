//! Arithmetic in prime fields GF(q) for q prime, 2 <= q <= 251.
//!
//! Elements are residues stored as `u8`. All products fit in `u16`, so a
//! `FieldSpec` is just the modulus and stays `Copy`.

/// A prime field GF(q), identified by its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    q: u16,
}

pub const MAX_FIELD_ORDER: u16 = 251;

fn is_prime(q: u16) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Creates GF(q). Panics unless q is prime and 2 <= q <= 251.
    pub fn new(q: u16) -> FieldSpec {
        assert!(
            (2..=MAX_FIELD_ORDER).contains(&q) && is_prime(q),
            "field order {q} must be a prime in 2..=251"
        );
        FieldSpec { q }
    }

    pub fn order(&self) -> u16 {
        self.q
    }

    pub fn is_element(&self, a: u8) -> bool {
        (a as u16) < self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q) as u8
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q - b as u16) % self.q) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        ((self.q - a as u16) % self.q) as u8
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q) as u8
    }

    /// Multiplicative inverse via a^(q-2); panics on zero.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, (self.q - 2) as u32)
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let mut base = a as u32;
        let q = self.q as u32;
        let mut acc = 1u32;
        base %= q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        acc as u8
    }

    /// All field elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|x| x as u8)
    }
}
