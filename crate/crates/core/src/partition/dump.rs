//! Binary dump of a [`LogPartitionTable`].
//!
//! Little-endian layout:
//!
//! | offset | type        | field                         |
//! |--------|-------------|-------------------------------|
//! | 0      | `[u8; 4]`   | magic `CPLT`                  |
//! | 4      | `u32`       | format version (1)            |
//! | 8      | `u64`       | `n_max`                       |
//! | 16     | `f64`       | `lambda`                      |
//! | 24     | `f64`       | `h`                           |
//! | 32     | `u8`        | law id (1 = zeta, 2 = srw)    |
//! | 33     | `f64`       | `alpha`                       |
//! | 41     | `f64 × (n_max+1)` | `log_zc`                |
//! | …      | `f64`       | `log_z_free`                  |
//! | …      | `f64 × (n_max+1)` | `charge_prefix`         |

use std::io::{Read, Write};

use super::LogPartitionTable;
use crate::error::{Error, Result};
use crate::model::RenewalKind;

const MAGIC: &[u8; 4] = b"CPLT";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 41;

impl LogPartitionTable {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * (2 * self.n_max + 3));
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.n_max as u64).to_le_bytes());
        out.extend_from_slice(&self.lambda.to_le_bytes());
        out.extend_from_slice(&self.h.to_le_bytes());
        out.push(self.law_kind.code());
        out.extend_from_slice(&self.alpha.to_le_bytes());
        for v in &self.log_zc {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&self.log_z_free.to_le_bytes());
        for v in &self.charge_prefix {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::Format("missing CPLT header".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(4);
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let n_max = usize::try_from(u64_at(8))
            .map_err(|_| Error::Format("n_max overflows usize".into()))?;
        let expected = n_max
            .checked_mul(16)
            .and_then(|x| x.checked_add(HEADER_LEN + 24))
            .ok_or_else(|| Error::Format("n_max too large".into()))?;
        if bytes.len() != expected {
            return Err(Error::Format(format!(
                "expected {expected} bytes, found {}",
                bytes.len()
            )));
        }
        let law_kind = match bytes[32] {
            1 => RenewalKind::ZetaTail,
            2 => RenewalKind::SrwReturn,
            other => return Err(Error::Format(format!("unknown law id {other}"))),
        };
        let mut off = HEADER_LEN;
        let mut read_vec = |count: usize| {
            let v: Vec<f64> = (0..count).map(|i| f64_at(off + 8 * i)).collect();
            off += 8 * count;
            v
        };
        let log_zc = read_vec(n_max + 1);
        let log_z_free = read_vec(1)[0];
        let charge_prefix = read_vec(n_max + 1);
        Ok(LogPartitionTable {
            n_max,
            lambda: f64_at(16),
            h: f64_at(24),
            law_kind,
            alpha: f64_at(33),
            log_zc,
            log_z_free,
            charge_prefix,
        })
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_disorder, CopolymerParams, DisorderLaw, InterArrivalLaw};
    use crate::partition::build_partition_table;

    #[test]
    fn dump_round_trip_and_corruption() {
        let law = InterArrivalLaw::srw();
        let omega = sample_disorder(&DisorderLaw::Rademacher, 40, 1, 1)
            .unwrap()
            .omega;
        let table =
            build_partition_table(&omega, &CopolymerParams::new(0.9, 0.2).unwrap(), &law).unwrap();
        let bytes = table.to_bytes();
        assert_eq!(&bytes[..4], b"CPLT");
        assert_eq!(bytes.len(), HEADER_LEN + 16 * 40 + 24);
        let back = LogPartitionTable::from_bytes(&bytes).unwrap();
        assert_eq!(back, table);
        assert!(LogPartitionTable::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut bad = bytes.clone();
        bad[32] = 9;
        assert!(LogPartitionTable::from_bytes(&bad).is_err());
    }
}
