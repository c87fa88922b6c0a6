//! Arithmetic in GF(2^p) for 1 <= p <= 8.
//!
//! Elements are bytes holding polynomial coefficients over GF(2), bit `i`
//! being the coefficient of `x^i`. Reduction uses a fixed irreducible
//! polynomial per degree (the Conway polynomials for characteristic 2):
//!
//! | p | polynomial                  |
//! |---|-----------------------------|
//! | 1 | x + 1                       |
//! | 2 | x^2 + x + 1                 |
//! | 3 | x^3 + x + 1                 |
//! | 4 | x^4 + x + 1                 |
//! | 5 | x^5 + x^2 + 1               |
//! | 6 | x^6 + x^4 + x^3 + x + 1     |
//! | 7 | x^7 + x + 1                 |
//! | 8 | x^8 + x^4 + x^3 + x^2 + 1   |
//!
//! For p >= 2 the class of `x` (the byte `2`) is a primitive element.

use super::GroupError;

const CONWAY: [u16; 9] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b1_0011,
    0b10_0101,
    0b101_1011,
    0b1000_0011,
    0b1_0001_1101,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldGF2p {
    degree: u32,
    poly: u16,
}

impl FieldGF2p {
    pub fn new(degree: u32) -> Result<Self, GroupError> {
        if !(1..=8).contains(&degree) {
            return Err(GroupError::Unsupported(format!(
                "GF(2^{degree}) is outside 1..=8"
            )));
        }
        Ok(Self {
            degree,
            poly: CONWAY[degree as usize],
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Irreducible polynomial as a bit mask, including the leading term.
    pub fn polynomial(&self) -> u16 {
        self.poly
    }

    pub fn size(&self) -> usize {
        1 << self.degree
    }

    /// A primitive element: the class of `x`, or `1` in GF(2).
    pub fn generator(&self) -> u8 {
        if self.degree == 1 {
            1
        } else {
            2
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.size()).map(|v| v as u8)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        let mut acc: u16 = 0;
        let mut a = a as u16;
        let mut b = b;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
        }
        for bit in (self.degree..16).rev() {
            if acc & (1 << bit) != 0 {
                acc ^= self.poly << (bit - self.degree);
            }
        }
        acc as u8
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.size() as u32 - 2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_exhaustive_up_to_degree_five() {
        for p in 1..=5 {
            let f = FieldGF2p::new(p).unwrap();
            let els: Vec<u8> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.add(a, a), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p={p} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert!((f.mul(a, b) as usize) < f.size());
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn generator_is_primitive() {
        for p in 1..=8 {
            let f = FieldGF2p::new(p).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u8;
            for _ in 0..f.size() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len(), f.size() - 1, "degree {p}");
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(FieldGF2p::new(3).unwrap().inv(0), None);
        assert!(FieldGF2p::new(9).is_err());
    }
}
