//! Label file: a header line, then one `id <TAB> base64(label)` line per vertex.
//!
//! ```text
//! bdl-labels  v1  n=<n>  instance=<hex>  checksum=<hex>
//! ```
//!
//! Header fields are tab-separated. `instance` is the first 8 bytes of the
//! SHA-256 of the graph's canonical text form; `checksum` is the first 8
//! bytes of the SHA-256 of the body (every line after the header, each
//! terminated by `\n`).

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use sha2::{Digest, Sha256};

use super::{decode, deserialize, serialize, CodecError, VertexLabel, WIRE_VERSION};
use crate::graph::Graph;

pub const FILE_MAGIC: &str = "bdl-labels";

fn short_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes)[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Fingerprint of a graph: hash of its canonical edge-list text.
pub fn instance_hash(g: &Graph) -> String {
    short_hash(g.to_text().as_bytes())
}

/// All labels of one encoding together with the instance they belong to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    pub instance: String,
    /// Labels indexed by vertex id.
    pub labels: Vec<VertexLabel>,
}

impl LabelSet {
    pub fn new(g: &Graph, labels: Vec<VertexLabel>) -> Self {
        LabelSet {
            instance: instance_hash(g),
            labels,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, id: u32) -> Result<&VertexLabel, CodecError> {
        self.labels
            .get(id as usize)
            .ok_or(CodecError::UnknownVertex(id))
    }

    pub fn decode(&self, u: u32, v: u32) -> Result<u32, CodecError> {
        Ok(decode(self.get(u)?, self.get(v)?))
    }

    /// Decodes `u` from `self` against `v` from `other`, refusing labels of
    /// different instances.
    pub fn decode_across(&self, u: u32, other: &LabelSet, v: u32) -> Result<u32, CodecError> {
        self.ensure_instance(&other.instance)?;
        Ok(decode(self.get(u)?, other.get(v)?))
    }

    pub fn ensure_instance(&self, expected: &str) -> Result<(), CodecError> {
        if self.instance == expected {
            Ok(())
        } else {
            Err(CodecError::InstanceMismatch {
                expected: expected.to_owned(),
                found: self.instance.clone(),
            })
        }
    }

    pub fn to_text(&self) -> String {
        let mut body = String::new();
        for label in &self.labels {
            body.push_str(&format!(
                "{}\t{}\n",
                label.id,
                STANDARD.encode(serialize(label))
            ));
        }
        format!(
            "{FILE_MAGIC}\tv{WIRE_VERSION}\tn={}\tinstance={}\tchecksum={}\n{body}",
            self.labels.len(),
            self.instance,
            short_hash(body.as_bytes())
        )
    }

    pub fn parse(text: &str) -> Result<Self, CodecError> {
        let line_err = |line: usize, msg: String| CodecError::Line { line, msg };
        let (header, body) = text
            .split_once('\n')
            .ok_or_else(|| line_err(1, "missing header".into()))?;
        let fields: Vec<&str> = header.split('\t').collect();
        let [magic, version, n, instance, checksum] = fields.as_slice() else {
            return Err(line_err(
                1,
                format!("expected 5 header fields, found {}", fields.len()),
            ));
        };
        if *magic != FILE_MAGIC || *version != format!("v{WIRE_VERSION}") {
            return Err(line_err(
                1,
                format!("unsupported format `{magic} {version}`"),
            ));
        }
        let field = |raw: &str, key: &str| -> Result<String, CodecError> {
            raw.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(|| line_err(1, format!("expected `{key}=` field, found `{raw}`")))
        };
        let n: usize = field(n, "n")?
            .parse()
            .map_err(|_| line_err(1, "invalid vertex count".into()))?;
        let instance = field(instance, "instance")?;
        let expected = field(checksum, "checksum")?;
        let found = short_hash(body.as_bytes());
        if found != expected {
            return Err(CodecError::Checksum { expected, found });
        }
        let mut labels = Vec::with_capacity(n);
        for (i, line) in body.lines().enumerate() {
            let lineno = i + 2;
            let (id, encoded) = line
                .split_once('\t')
                .ok_or_else(|| line_err(lineno, "expected `id<TAB>label`".into()))?;
            let id: u32 = id
                .parse()
                .map_err(|_| line_err(lineno, format!("invalid id `{id}`")))?;
            if id as usize != labels.len() {
                return Err(line_err(
                    lineno,
                    format!("expected id {}, found {id}", labels.len()),
                ));
            }
            let bytes = STANDARD
                .decode(encoded)
                .map_err(|e| line_err(lineno, format!("invalid base64: {e}")))?;
            let label = deserialize(&bytes).map_err(|e| line_err(lineno, e.to_string()))?;
            if label.id != id {
                return Err(line_err(lineno, format!("label encodes id {}", label.id)));
            }
            labels.push(label);
        }
        if labels.len() != n {
            return Err(line_err(
                1,
                format!("header declares {n} labels, body has {}", labels.len()),
            ));
        }
        Ok(LabelSet { instance, labels })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_graph;
    use crate::graph::path_graph;

    #[test]
    fn singleton_file_has_one_line() {
        let g = Graph::singleton();
        let set = LabelSet::new(&g, encode_graph(&g).unwrap());
        let text = set.to_text();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(LabelSet::parse(&text).unwrap(), set);
    }

    #[test]
    fn checksum_and_instance_guard() {
        let g = path_graph(6);
        let set = LabelSet::new(&g, encode_graph(&g).unwrap());
        let text = set.to_text();
        let tampered = text.replacen("\n0\t", "\n0\tA", 1);
        assert!(matches!(
            LabelSet::parse(&tampered),
            Err(CodecError::Checksum { .. })
        ));

        let h = path_graph(7);
        let other = LabelSet::new(&h, encode_graph(&h).unwrap());
        assert!(matches!(
            set.decode_across(0, &other, 1),
            Err(CodecError::InstanceMismatch { .. })
        ));
        assert_eq!(set.decode_across(0, &set.clone(), 5).unwrap(), 5);
        assert_eq!(set.decode(9, 0), Err(CodecError::UnknownVertex(9)));
    }
}
