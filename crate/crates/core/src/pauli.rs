//! Pauli operators with exact phase tracking.
//!
//! An operator is stored as `i^e · X^x · Z^z`, with all X factors written to
//! the left of the Z factors on each qubit. A `Y` letter is `i·X·Z`.

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// A fourth root of unity `i^e`, stored as `e mod 4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Phase {
        Phase(e.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn prefix(self) -> &'static str {
        match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl Add<u8> for Phase {
    type Output = Phase;
    fn add(self, rhs: u8) -> Phase {
        Phase((self.0 + rhs % 4) % 4)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        self + 2
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    xbits: BitVec,
    zbits: BitVec,
    phase: Phase,
}

impl PauliOp {
    pub fn new(xbits: BitVec, zbits: BitVec, phase: Phase) -> Result<Self> {
        if xbits.len() != zbits.len() {
            return Err(Error::dim(xbits.len(), zbits.len()));
        }
        Ok(PauliOp { xbits, zbits, phase })
    }

    pub fn identity(n: usize) -> Self {
        PauliOp {
            xbits: BitVec::zeros(n),
            zbits: BitVec::zeros(n),
            phase: Phase::ONE,
        }
    }

    pub fn x_type(xbits: BitVec) -> Self {
        let n = xbits.len();
        PauliOp {
            xbits,
            zbits: BitVec::zeros(n),
            phase: Phase::ONE,
        }
    }

    pub fn z_type(zbits: BitVec) -> Self {
        let n = zbits.len();
        PauliOp {
            xbits: BitVec::zeros(n),
            zbits,
            phase: Phase::ONE,
        }
    }

    /// Single-qubit `X` on qubit `q` of `n`.
    pub fn single_x(n: usize, q: usize) -> Self {
        PauliOp::x_type(BitVec::from_indices(n, &[q]))
    }

    pub fn single_z(n: usize, q: usize) -> Self {
        PauliOp::z_type(BitVec::from_indices(n, &[q]))
    }

    pub fn num_qubits(&self) -> usize {
        self.xbits.len()
    }

    pub fn xbits(&self) -> &BitVec {
        &self.xbits
    }

    pub fn zbits(&self) -> &BitVec {
        &self.zbits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Number of qubits carrying a `Y` (both bits set).
    pub fn y_count(&self) -> usize {
        self.xbits.and_weight_unchecked(&self.zbits)
    }

    /// True iff the operator equals its adjoint.
    pub fn is_hermitian(&self) -> bool {
        (self.phase.exponent() as usize + self.y_count()) % 2 == 0
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.xbits.is_zero() && self.zbits.is_zero()
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::dim(self.num_qubits(), other.num_qubits()));
        }
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliOp) -> bool {
        let a = self.xbits.and_weight_unchecked(&other.zbits);
        let b = self.zbits.and_weight_unchecked(&other.xbits);
        (a + b) % 2 == 0
    }

    /// Operator product `self · other` with the exact phase.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::dim(self.num_qubits(), other.num_qubits()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliOp) -> PauliOp {
        // X^a Z^b X^c Z^d = (-1)^{|b·c|} X^{a+c} Z^{b+d}
        let swaps = self.zbits.and_weight_unchecked(&other.xbits);
        let mut xbits = self.xbits.clone();
        xbits.xor_assign_unchecked(&other.xbits);
        let mut zbits = self.zbits.clone();
        zbits.xor_assign_unchecked(&other.zbits);
        PauliOp {
            xbits,
            zbits,
            phase: self.phase * other.phase + (2 * (swaps % 2)) as u8,
        }
    }

    /// Conjugation `X_y · self · X_y`: flips the sign once per overlap of `y` with the Z part.
    pub fn conjugate_by_x(&self, y: &BitVec) -> PauliOp {
        let flips = self.zbits.and_weight_unchecked(y);
        let mut out = self.clone();
        out.phase = out.phase + (2 * (flips % 2)) as u8;
        out
    }

    /// Restriction to the given qubit positions (phase kept).
    pub fn select(&self, positions: &[usize]) -> PauliOp {
        PauliOp {
            xbits: self.xbits.select(positions),
            zbits: self.zbits.select(positions),
            phase: self.phase,
        }
    }

    /// Phase of the letter form: the stored phase with one `-i` per `Y` factored out.
    fn letter_phase(&self) -> Phase {
        Phase::from_exponent(self.phase.exponent() as i64 - self.y_count() as i64)
    }
}

pub fn commutes(p: &PauliOp, q: &PauliOp) -> Result<bool> {
    p.commutes(q)
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter_phase().prefix())?;
        for i in 0..self.num_qubits() {
            let ch = match (self.xbits.get(i), self.zbits.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Parses `[sign]LETTERS` where sign is one of `+`, `-`, `+i`, `-i` (default `+`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (letter_phase, body, offset) = if let Some(rest) = s.strip_prefix("+i") {
            (Phase::I, rest, 2)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MINUS_I, rest, 2)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::ONE, rest, 1)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, rest, 1)
        } else {
            (Phase::ONE, s, 0)
        };
        let n = body.chars().count();
        let mut xbits = BitVec::zeros(n);
        let mut zbits = BitVec::zeros(n);
        let mut ys = 0i64;
        for (i, ch) in body.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => xbits.set(i, true),
                'Z' => zbits.set(i, true),
                'Y' => {
                    xbits.set(i, true);
                    zbits.set(i, true);
                    ys += 1;
                }
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: offset + i + 1,
                        message: format!("expected one of I, X, Y, Z, found {other:?}"),
                    })
                }
            }
        }
        Ok(PauliOp {
            xbits,
            zbits,
            phase: Phase::from_exponent(letter_phase.exponent() as i64 + ys),
        })
    }
}
