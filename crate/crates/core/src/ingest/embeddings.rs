//! `NWEMB1` binary embedding files.
//!
//! ```text
//! magic   "NWEMB1\n"                7 bytes
//! dim     u32 LE
//! flag    u8   (1 = vectors are unit norm)
//! count   u64 LE
//! count × { id_len u16 LE, id UTF-8 bytes, dim × f32 LE }
//! ```

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::embed::{l2_norm, EmbeddingTable, UNIT_NORM_TOLERANCE};
use crate::error::{Error, Result};

pub const EMBEDDING_MAGIC: &[u8; 7] = b"NWEMB1\n";

pub fn write_embeddings(path: &Path, table: &EmbeddingTable) -> Result<()> {
    if table.is_normalized() {
        for (id, v) in table.iter() {
            let norm = l2_norm(v);
            if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                return Err(Error::NotUnitNorm {
                    id: id.to_string(),
                    norm,
                });
            }
        }
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    w.write_all(EMBEDDING_MAGIC).map_err(io)?;
    w.write_all(&(table.dim() as u32).to_le_bytes()).map_err(io)?;
    w.write_all(&[table.is_normalized() as u8]).map_err(io)?;
    w.write_all(&(table.len() as u64).to_le_bytes()).map_err(io)?;
    for (id, v) in table.iter() {
        let id_bytes = id.as_bytes();
        let len = u16::try_from(id_bytes.len())
            .map_err(|_| Error::Config(format!("id {id:?} longer than 65535 bytes")))?;
        w.write_all(&len.to_le_bytes()).map_err(io)?;
        w.write_all(id_bytes).map_err(io)?;
        for x in v {
            w.write_all(&x.to_le_bytes()).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl<'a> Cursor<'a> {
    fn fail(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::EmbeddingFormat {
            path: self.path.to_path_buf(),
            offset: offset as u64,
            message: message.into(),
        }
    }

    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(self.fail(self.pos, format!("truncated {what}")));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }
}

pub fn read_embeddings(path: &Path) -> Result<EmbeddingTable> {
    let mut buf = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut buf))
        .map_err(|e| Error::io(path, e))?;
    let mut cur = Cursor {
        buf: &buf,
        pos: 0,
        path,
    };
    if cur.take(EMBEDDING_MAGIC.len(), "magic")? != EMBEDDING_MAGIC {
        return Err(cur.fail(0, "magic mismatch"));
    }
    let dim = u32::from_le_bytes(cur.take(4, "dim")?.try_into().unwrap()) as usize;
    if dim == 0 {
        return Err(cur.fail(7, "zero dimension"));
    }
    let flag_at = cur.pos;
    let normalized = match cur.take(1, "flag")?[0] {
        0 => false,
        1 => true,
        other => return Err(cur.fail(flag_at, format!("bad normalized flag {other}"))),
    };
    let count = u64::from_le_bytes(cur.take(8, "count")?.try_into().unwrap());
    let mut table = EmbeddingTable::new(dim, normalized);
    let mut values = vec![0f32; dim];
    for _ in 0..count {
        let rec_at = cur.pos;
        let id_len = u16::from_le_bytes(cur.take(2, "id length")?.try_into().unwrap()) as usize;
        let id = std::str::from_utf8(cur.take(id_len, "id")?)
            .map_err(|_| cur.fail(rec_at + 2, "id is not UTF-8"))?
            .to_string();
        let payload = cur.take(dim * 4, "vector payload")?;
        for (slot, chunk) in values.iter_mut().zip(payload.chunks_exact(4)) {
            *slot = f32::from_le_bytes(chunk.try_into().unwrap());
        }
        table
            .insert(id, &values)
            .map_err(|e| cur.fail(rec_at, e.to_string()))?;
    }
    if cur.pos != buf.len() {
        return Err(cur.fail(cur.pos, "trailing bytes"));
    }
    Ok(table)
}
