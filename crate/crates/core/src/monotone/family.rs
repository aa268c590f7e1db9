//! Byte record packing a sequence of monotone codes.
//!
//! ```text
//! "MFC1" | count: u32 | (len: u32 | code)* | crc32: u32
//! code     = direction: u8 | baseline: ext | n: u32 | (rational ext)^n
//!                                          | m: u32 | (rational ext)^m
//! ext      = 0 (−∞) | 1 rational | 2 (+∞)
//! rational = sign: u8 | len: u32 | numerator BE | len: u32 | denominator BE
//! ```
//!
//! Integers are big-endian. The checksum covers every preceding byte. A
//! record that fails any check decodes as invalid, and an invalid family
//! answers the constant-0 function at every index.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Direction, MonotoneCode};
use crate::rational::ExtRational;

const MAGIC: &[u8; 4] = b"MFC1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneFamilyCode {
    entries: Vec<MonotoneCode>,
    valid: bool,
}

impl MonotoneFamilyCode {
    pub fn invalid() -> Self {
        MonotoneFamilyCode {
            entries: Vec::new(),
            valid: false,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[MonotoneCode] {
        &self.entries
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        put_u32(&mut out, self.entries.len());
        for code in &self.entries {
            let mut body = Vec::new();
            write_code(&mut body, code);
            put_u32(&mut out, body.len());
            out.extend_from_slice(&body);
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_be_bytes());
        out
    }

    /// Never fails: anything that does not parse is an invalid family.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        parse_family(bytes).map_or_else(Self::invalid, |entries| MonotoneFamilyCode { entries, valid: true })
    }
}

pub fn pack_family(codes: &[MonotoneCode]) -> MonotoneFamilyCode {
    MonotoneFamilyCode {
        entries: codes.to_vec(),
        valid: true,
    }
}

/// The `n`-th coded function, or the constant 0 when the family is invalid
/// or has no entry `n`.
pub fn unpack_family(family: &MonotoneFamilyCode, n: usize) -> MonotoneCode {
    match family.entries.get(n) {
        Some(code) if family.valid => code.clone(),
        _ => MonotoneCode::constant(BigRational::zero()),
    }
}

fn put_u32(out: &mut Vec<u8>, n: usize) {
    out.extend_from_slice(&(n as u32).to_be_bytes());
}

fn write_rational(out: &mut Vec<u8>, q: &BigRational) {
    out.push(u8::from(q.is_negative()));
    for part in [q.numer(), q.denom()] {
        let bytes = if part.is_zero() {
            Vec::new()
        } else {
            part.magnitude().to_bytes_be()
        };
        put_u32(out, bytes.len());
        out.extend_from_slice(&bytes);
    }
}

fn write_ext(out: &mut Vec<u8>, v: &ExtRational) {
    match v {
        ExtRational::NegInfinity => out.push(0),
        ExtRational::Finite(q) => {
            out.push(1);
            write_rational(out, q);
        }
        ExtRational::PosInfinity => out.push(2),
    }
}

fn write_code(out: &mut Vec<u8>, code: &MonotoneCode) {
    out.push(match code.direction() {
        Direction::NonDecreasing => 0,
        Direction::NonIncreasing => 1,
    });
    write_ext(out, code.baseline());
    for map in [code.rational_samples(), code.discontinuity_samples()] {
        put_u32(out, map.len());
        for (k, v) in map {
            write_rational(out, k);
            write_ext(out, v);
        }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.bytes.len() < n {
            return None;
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Some(head)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|b| b[0])
    }

    fn u32(&mut self) -> Option<usize> {
        let b = self.take(4)?;
        Some(u32::from_be_bytes([b[0], b[1], b[2], b[3]]) as usize)
    }

    fn magnitude(&mut self) -> Option<BigUint> {
        let len = self.u32()?;
        let bytes = self.take(len)?;
        // canonical: no leading zero bytes, zero is empty
        if bytes.first() == Some(&0) {
            return None;
        }
        Some(BigUint::from_bytes_be(bytes))
    }

    fn rational(&mut self) -> Option<BigRational> {
        let negative = match self.u8()? {
            0 => false,
            1 => true,
            _ => return None,
        };
        let num = self.magnitude()?;
        let den = self.magnitude()?;
        if den.is_zero() || !num.gcd(&den).is_one() || (negative && num.is_zero()) {
            return None;
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Some(BigRational::new_raw(
            BigInt::from_biguint(sign, num),
            BigInt::from_biguint(Sign::Plus, den),
        ))
    }

    fn ext(&mut self) -> Option<ExtRational> {
        match self.u8()? {
            0 => Some(ExtRational::NegInfinity),
            1 => self.rational().map(ExtRational::Finite),
            2 => Some(ExtRational::PosInfinity),
            _ => None,
        }
    }

    fn samples(&mut self) -> Option<BTreeMap<BigRational, ExtRational>> {
        let n = self.u32()?;
        let mut map = BTreeMap::new();
        for _ in 0..n {
            let k = self.rational()?;
            let v = self.ext()?;
            if map.insert(k, v).is_some() {
                return None;
            }
        }
        Some(map)
    }

    fn code(&mut self) -> Option<MonotoneCode> {
        let direction = match self.u8()? {
            0 => Direction::NonDecreasing,
            1 => Direction::NonIncreasing,
            _ => return None,
        };
        let baseline = self.ext()?;
        let rational_samples = self.samples()?;
        let discontinuity_samples = self.samples()?;
        MonotoneCode::with_baseline(direction, baseline, rational_samples, discontinuity_samples).ok()
    }
}

fn parse_family(bytes: &[u8]) -> Option<Vec<MonotoneCode>> {
    let (payload, crc) = bytes.split_at(bytes.len().checked_sub(4)?);
    if crc32fast::hash(payload).to_be_bytes() != crc {
        return None;
    }
    let mut reader = Reader { bytes: payload };
    if reader.take(4)? != MAGIC {
        return None;
    }
    let count = reader.u32()?;
    let mut entries = Vec::new();
    for _ in 0..count {
        let len = reader.u32()?;
        let mut record = Reader {
            bytes: reader.take(len)?,
        };
        entries.push(record.code()?);
        if !record.bytes.is_empty() {
            return None;
        }
    }
    reader.bytes.is_empty().then_some(entries)
}
