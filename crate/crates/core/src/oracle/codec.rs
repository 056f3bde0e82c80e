//! Binary oracle format.
//!
//! ```text
//! magic  "SPOR1"           5 bytes
//! version                  u16
//! kind                     u8   (1 simple, 2 thorup-zwick, 3 combined)
//! body length              u64
//! body                     kind-specific
//! crc32                    u32  over every preceding byte
//! ```
//!
//! All integers are little-endian and distances are IEEE-754 `f64`.

use thiserror::Error;

use super::{CombinedOracle, SimpleOracle, TzOracle};

pub const MAGIC: &[u8; 5] = b"SPOR1";
pub const FORMAT_VERSION: u16 = 1;

const HEADER_LEN: usize = 5 + 2 + 1 + 8;
const KIND_SIMPLE: u8 = 1;
const KIND_TZ: u8 = 2;
const KIND_COMBINED: u8 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodecError {
    #[error("not an oracle file (bad magic)")]
    BadMagic,
    #[error("unsupported format version {found}, expected {FORMAT_VERSION}")]
    VersionMismatch { found: u16 },
    #[error("truncated stream: need {needed} bytes, have {available}")]
    Truncated { needed: usize, available: usize },
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("unknown oracle kind {0}")]
    UnknownKind(u8),
    #[error("expected a {expected} oracle, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("malformed body: {0}")]
    Malformed(String),
}

/// Any of the three oracles, as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub enum Oracle {
    Simple(SimpleOracle),
    Tz(TzOracle),
    Combined(CombinedOracle),
}

impl Oracle {
    pub fn kind_name(&self) -> &'static str {
        kind_name(self.kind())
    }

    fn kind(&self) -> u8 {
        match self {
            Oracle::Simple(_) => KIND_SIMPLE,
            Oracle::Tz(_) => KIND_TZ,
            Oracle::Combined(_) => KIND_COMBINED,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Oracle::Simple(o) => o.n(),
            Oracle::Tz(o) => o.n(),
            Oracle::Combined(o) => o.n(),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut body = Writer::default();
        match self {
            Oracle::Simple(o) => write_simple(&mut body, o),
            Oracle::Tz(o) => write_tz(&mut body, o),
            Oracle::Combined(o) => {
                body.f64(o.eps);
                body.f64(o.delta);
                write_tz(&mut body, &o.tz);
                write_simple(&mut body, &o.landmark);
            }
        }
        let mut out = Writer::default();
        out.0.extend_from_slice(MAGIC);
        out.0.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.0.push(self.kind());
        out.u64(body.0.len() as u64);
        out.0.extend_from_slice(&body.0);
        let crc = crc32fast::hash(&out.0);
        out.0.extend_from_slice(&crc.to_le_bytes());
        out.0
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        if bytes.len() < MAGIC.len() {
            return Err(truncated(HEADER_LEN + 4, bytes.len()));
        }
        if &bytes[..MAGIC.len()] != MAGIC {
            return Err(CodecError::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(truncated(HEADER_LEN + 4, bytes.len()));
        }
        let version = u16::from_le_bytes([bytes[5], bytes[6]]);
        if version != FORMAT_VERSION {
            return Err(CodecError::VersionMismatch { found: version });
        }
        let kind = bytes[7];
        let body_len = u64::from_le_bytes(bytes[8..16].try_into().expect("8 bytes"));
        let total = usize::try_from(body_len)
            .ok()
            .and_then(|b| b.checked_add(HEADER_LEN + 4))
            .ok_or_else(|| CodecError::Malformed("body length overflows".into()))?;
        if bytes.len() < total {
            return Err(truncated(total, bytes.len()));
        }
        if bytes.len() > total {
            return Err(CodecError::Malformed(format!(
                "{} trailing bytes",
                bytes.len() - total
            )));
        }
        let stored = u32::from_le_bytes(bytes[total - 4..].try_into().expect("4 bytes"));
        let computed = crc32fast::hash(&bytes[..total - 4]);
        if stored != computed {
            return Err(CodecError::ChecksumMismatch { stored, computed });
        }

        let mut r = Reader {
            buf: &bytes[HEADER_LEN..total - 4],
            pos: 0,
        };
        let oracle = match kind {
            KIND_SIMPLE => Oracle::Simple(read_simple(&mut r)?),
            KIND_TZ => Oracle::Tz(read_tz(&mut r)?),
            KIND_COMBINED => {
                let eps = r.f64()?;
                let delta = r.f64()?;
                let tz = read_tz(&mut r)?;
                let landmark = read_simple(&mut r)?;
                if tz.n != landmark.n {
                    return Err(CodecError::Malformed("sub-oracle sizes differ".into()));
                }
                Oracle::Combined(CombinedOracle {
                    eps,
                    delta,
                    tz,
                    landmark,
                })
            }
            other => return Err(CodecError::UnknownKind(other)),
        };
        if r.pos != r.buf.len() {
            return Err(CodecError::Malformed("unused bytes in body".into()));
        }
        Ok(oracle)
    }
}

fn kind_name(kind: u8) -> &'static str {
    match kind {
        KIND_SIMPLE => "simple",
        KIND_TZ => "tz",
        KIND_COMBINED => "combined",
        _ => "unknown",
    }
}

fn truncated(needed: usize, available: usize) -> CodecError {
    CodecError::Truncated { needed, available }
}

macro_rules! typed_codec {
    ($ty:ty, $variant:ident, $name:literal) => {
        impl $ty {
            pub fn to_bytes(&self) -> Vec<u8> {
                Oracle::$variant(self.clone()).to_bytes()
            }

            pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
                match Oracle::from_bytes(bytes)? {
                    Oracle::$variant(o) => Ok(o),
                    other => Err(CodecError::KindMismatch {
                        expected: $name,
                        found: other.kind_name(),
                    }),
                }
            }
        }
    };
}

typed_codec!(SimpleOracle, Simple, "simple");
typed_codec!(TzOracle, Tz, "tz");
typed_codec!(CombinedOracle, Combined, "combined");

#[derive(Default)]
struct Writer(Vec<u8>);

impl Writer {
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N], CodecError> {
        let end = self.pos + N;
        let chunk = self
            .buf
            .get(self.pos..end)
            .ok_or_else(|| CodecError::Malformed("body shorter than its contents".into()))?;
        self.pos = end;
        Ok(chunk.try_into().expect("length checked"))
    }

    fn u64(&mut self) -> Result<u64, CodecError> {
        self.take().map(u64::from_le_bytes)
    }

    fn usize(&mut self) -> Result<usize, CodecError> {
        usize::try_from(self.u64()?).map_err(|_| CodecError::Malformed("length overflows".into()))
    }

    fn u32(&mut self) -> Result<u32, CodecError> {
        self.take().map(u32::from_le_bytes)
    }

    fn f64(&mut self) -> Result<f64, CodecError> {
        self.take().map(f64::from_le_bytes)
    }

    /// Guards allocations sized by untrusted counts.
    fn expect_room(&self, count: usize, width: usize) -> Result<(), CodecError> {
        let need = count.checked_mul(width);
        if need.is_some_and(|need| need <= self.buf.len() - self.pos) {
            Ok(())
        } else {
            Err(CodecError::Malformed("count exceeds body size".into()))
        }
    }
}

fn write_simple(w: &mut Writer, o: &SimpleOracle) {
    w.f64(o.eps);
    w.u64(o.n as u64);
    w.u64(o.landmarks.len() as u64);
    for &u in &o.landmarks {
        w.u64(u as u64);
    }
    for &d in &o.table {
        w.f64(d);
    }
}

fn read_simple(r: &mut Reader<'_>) -> Result<SimpleOracle, CodecError> {
    let eps = r.f64()?;
    let n = r.usize()?;
    let count = r.usize()?;
    r.expect_room(count, 8)?;
    let landmarks = (0..count)
        .map(|_| r.usize())
        .collect::<Result<Vec<_>, _>>()?;
    if landmarks.iter().any(|&u| u >= n) {
        return Err(CodecError::Malformed("landmark out of range".into()));
    }
    let cells = count
        .checked_mul(n)
        .ok_or_else(|| CodecError::Malformed("table size overflows".into()))?;
    r.expect_room(cells, 8)?;
    let table = (0..cells).map(|_| r.f64()).collect::<Result<Vec<_>, _>>()?;
    Ok(SimpleOracle {
        eps,
        n,
        landmarks,
        table,
    })
}

fn write_tz(w: &mut Writer, o: &TzOracle) {
    w.u64(o.k as u64);
    w.u64(o.n as u64);
    for &l in &o.level {
        w.u32(l);
    }
    for p in &o.pivots {
        match *p {
            Some((v, d)) => {
                w.0.push(1);
                w.u32(v);
                w.f64(d);
            }
            None => w.0.push(0),
        }
    }
    for b in &o.bunches {
        w.u64(b.len() as u64);
        for &(v, d) in b {
            w.u32(v);
            w.f64(d);
        }
    }
}

fn read_tz(r: &mut Reader<'_>) -> Result<TzOracle, CodecError> {
    let k = r.usize()?;
    let n = r.usize()?;
    if k == 0 {
        return Err(CodecError::Malformed("k must be positive".into()));
    }
    r.expect_room(n, 4)?;
    let level = (0..n).map(|_| r.u32()).collect::<Result<Vec<_>, _>>()?;
    if level.iter().any(|&l| l as usize >= k) {
        return Err(CodecError::Malformed("level exceeds k".into()));
    }
    let slots = k
        .checked_mul(n)
        .ok_or_else(|| CodecError::Malformed("pivot table overflows".into()))?;
    r.expect_room(slots, 1)?;
    let mut pivots = Vec::with_capacity(slots);
    for _ in 0..slots {
        pivots.push(match r.take::<1>()?[0] {
            0 => None,
            1 => Some((vertex(r.u32()?, n)?, r.f64()?)),
            tag => return Err(CodecError::Malformed(format!("bad pivot tag {tag}"))),
        });
    }
    let mut bunches = Vec::with_capacity(n);
    for _ in 0..n {
        let len = r.usize()?;
        r.expect_room(len, 12)?;
        let mut b = Vec::with_capacity(len);
        for _ in 0..len {
            b.push((vertex(r.u32()?, n)?, r.f64()?));
        }
        if b.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(CodecError::Malformed("bunch not sorted".into()));
        }
        bunches.push(b);
    }
    Ok(TzOracle {
        k,
        n,
        level,
        pivots,
        bunches,
    })
}

fn vertex(v: u32, n: usize) -> Result<u32, CodecError> {
    if (v as usize) < n {
        Ok(v)
    } else {
        Err(CodecError::Malformed(format!("vertex {v} out of range")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::apsp;
    use crate::net::{build_net_greedy, NetMethod};

    fn simple_p10() -> SimpleOracle {
        let g = generate::path(10);
        let net = build_net_greedy(&apsp(&g.perturb(0)).unwrap(), 0.5).unwrap();
        SimpleOracle::build(&g, &net).unwrap()
    }

    #[test]
    fn simple_round_trip() {
        let o = simple_p10();
        let bytes = o.to_bytes();
        assert_eq!(&bytes[..5], b"SPOR1");
        let back = SimpleOracle::from_bytes(&bytes).unwrap();
        assert_eq!(back, o);
        for a in 0..10 {
            for b in 0..10 {
                assert_eq!(back.query(a, b), o.query(a, b));
            }
        }
    }

    #[test]
    fn distinct_errors() {
        let bytes = simple_p10().to_bytes();

        for cut in [0, 3, 10, bytes.len() - 1] {
            let err = Oracle::from_bytes(&bytes[..cut]).unwrap_err();
            assert!(
                matches!(err, CodecError::Truncated { .. }),
                "cut {cut}: {err}"
            );
        }

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert_eq!(Oracle::from_bytes(&bad).unwrap_err(), CodecError::BadMagic);

        let mut bad = bytes.clone();
        bad[5] = 9;
        assert_eq!(
            Oracle::from_bytes(&bad).unwrap_err(),
            CodecError::VersionMismatch { found: 9 }
        );

        let mut bad = bytes.clone();
        bad[HEADER_LEN + 3] ^= 0x40;
        assert!(matches!(
            Oracle::from_bytes(&bad).unwrap_err(),
            CodecError::ChecksumMismatch { .. }
        ));

        assert_eq!(
            TzOracle::from_bytes(&bytes).unwrap_err(),
            CodecError::KindMismatch {
                expected: "tz",
                found: "simple"
            }
        );
    }

    #[test]
    fn tz_and_combined_round_trip() {
        let g = generate::gnp(64, 0.1, 2).unwrap();
        let tz = TzOracle::build(&g, 3, 5).unwrap();
        assert_eq!(TzOracle::from_bytes(&tz.to_bytes()).unwrap(), tz);
        let c = CombinedOracle::build(&g, 0.25, 0.5, 5, NetMethod::Greedy).unwrap();
        let back = CombinedOracle::from_bytes(&c.to_bytes()).unwrap();
        assert_eq!(back, c);
        for a in 0..64 {
            for b in 0..64 {
                assert_eq!(back.query(a, b), c.query(a, b));
            }
        }
    }
}
