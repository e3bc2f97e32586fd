//! Byte layout of one label.
//!
//! ```text
//! header   version: u8 | id: u32 little-endian | level count: u8
//! level    median: varint | dist: varint | flags: u8 | star elements: varint*
//!          | left side? | right side?
//! side     entry count: varint | (separator: varint, distance: varint)* | dist: varint
//! ```
//!
//! Varints are unsigned LEB128. Flag bits 0-1 hold the number of star label
//! elements; bits 2 and 3 mark the presence of the left and right sides.

use super::{CodecError, LevelRecord, SidePart, VertexLabel};
use crate::star::StarLabel;
use crate::tree_labels::TreeLabel;

pub const WIRE_VERSION: u8 = 1;

const LEFT: u8 = 1 << 2;
const RIGHT: u8 = 1 << 3;

fn put_varint(out: &mut Vec<u8>, mut x: u32) {
    while x >= 0x80 {
        out.push((x as u8) | 0x80);
        x >>= 7;
    }
    out.push(x as u8);
}

fn put_side(out: &mut Vec<u8>, side: &SidePart) {
    put_varint(out, side.tree.entries.len() as u32);
    for &(sep, dist) in &side.tree.entries {
        put_varint(out, sep);
        put_varint(out, dist);
    }
    put_varint(out, side.dist);
}

pub fn serialize(label: &VertexLabel) -> Vec<u8> {
    let mut out = Vec::with_capacity(6 + 24 * label.levels.len());
    out.push(WIRE_VERSION);
    out.extend_from_slice(&label.id.to_le_bytes());
    out.push(u8::try_from(label.levels.len()).expect("at most 255 levels"));
    for level in &label.levels {
        put_varint(&mut out, level.median);
        put_varint(&mut out, level.dist);
        let elements = level.star.elements();
        let mut flags = elements.len() as u8;
        if level.left.is_some() {
            flags |= LEFT;
        }
        if level.right.is_some() {
            flags |= RIGHT;
        }
        out.push(flags);
        for e in elements {
            put_varint(&mut out, e);
        }
        for side in [&level.left, &level.right].into_iter().flatten() {
            put_side(&mut out, side);
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, CodecError> {
        Err(CodecError::Wire {
            offset: self.pos,
            msg: msg.into(),
        })
    }

    fn byte(&mut self) -> Result<u8, CodecError> {
        match self.bytes.get(self.pos) {
            Some(&b) => {
                self.pos += 1;
                Ok(b)
            }
            None => self.fail("unexpected end of label"),
        }
    }

    fn varint(&mut self) -> Result<u32, CodecError> {
        let start = self.pos;
        let mut value: u64 = 0;
        for shift in (0..35).step_by(7) {
            let b = self.byte()?;
            value |= u64::from(b & 0x7f) << shift;
            if b & 0x80 == 0 {
                return u32::try_from(value).or_else(|_| {
                    self.pos = start;
                    self.fail("varint exceeds 32 bits")
                });
            }
        }
        self.pos = start;
        self.fail("varint longer than 5 bytes")
    }

    fn side(&mut self) -> Result<SidePart, CodecError> {
        let count = self.varint()? as usize;
        if count > self.bytes.len() - self.pos {
            return self.fail("tree label longer than the remaining input");
        }
        let entries = (0..count)
            .map(|_| Ok((self.varint()?, self.varint()?)))
            .collect::<Result<Vec<_>, CodecError>>()?;
        Ok(SidePart {
            tree: TreeLabel { entries },
            dist: self.varint()?,
        })
    }
}

pub fn deserialize(bytes: &[u8]) -> Result<VertexLabel, CodecError> {
    let mut r = Reader { bytes, pos: 0 };
    let version = r.byte()?;
    if version != WIRE_VERSION {
        r.pos = 0;
        return r.fail(format!("unsupported version {version}"));
    }
    let mut id = [0u8; 4];
    for b in &mut id {
        *b = r.byte()?;
    }
    let count = r.byte()?;
    let mut levels = Vec::with_capacity(usize::from(count));
    for _ in 0..count {
        let median = r.varint()?;
        let dist = r.varint()?;
        let flag_pos = r.pos;
        let flags = r.byte()?;
        if flags & !(3 | LEFT | RIGHT) != 0 || flags & 3 == 3 {
            r.pos = flag_pos;
            return r.fail(format!("invalid flags {flags:#04x}"));
        }
        let star = match flags & 3 {
            0 => StarLabel::Empty,
            1 => StarLabel::Single(r.varint()?),
            _ => {
                let (a, b) = (r.varint()?, r.varint()?);
                if a >= b {
                    return r.fail("pair label not in ascending order");
                }
                StarLabel::Pair(a, b)
            }
        };
        let left = if flags & LEFT != 0 {
            Some(r.side()?)
        } else {
            None
        };
        let right = if flags & RIGHT != 0 {
            Some(r.side()?)
        } else {
            None
        };
        levels.push(LevelRecord {
            median,
            dist,
            star,
            left,
            right,
        });
    }
    if r.pos != bytes.len() {
        return r.fail("trailing bytes after the last level");
    }
    Ok(VertexLabel {
        id: u32::from_le_bytes(id),
        levels,
    })
}
