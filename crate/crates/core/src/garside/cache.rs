//! On-disk cache of enumerated Coxeter groups.
//!
//! Layout (little endian): the magic `ARTW1`, a family byte, rank `u8`,
//! dihedral parameter `u32` (0 if none), element count `u32`, key length
//! `u32`, then each element's representation coordinates as `i32`s in BFS
//! order. A loaded file is re-verified before use: the element count must
//! match |W|, the first element must be the identity, the set must be closed
//! under right multiplication by generators, and replaying the BFS must
//! reproduce the stored order exactly.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::catalog::{CatalogEntry, CoxeterType, Family};
use crate::error::{Error, Result};
use crate::garside::engine::{Representation, WEngine};

const MAGIC: &[u8; 5] = b"ARTW1";

fn family_byte(f: Family) -> u8 {
    match f {
        Family::A => b'A',
        Family::B => b'B',
        Family::D => b'D',
        Family::E => b'E',
        Family::F => b'F',
        Family::H => b'H',
        Family::I2 => b'I',
    }
}

pub fn cache_path(dir: &Path, ty: CoxeterType) -> PathBuf {
    let name = ty.to_string().replace(['(', ')'], "_");
    dir.join(format!("{name}.artw"))
}

pub fn save(path: &Path, engine: &WEngine) -> Result<()> {
    let ty = engine
        .coxeter_type()
        .ok_or_else(|| Error::InvalidParameter("only catalog engines can be cached".into()))?;
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut out = BufWriter::new(fs::File::create(&tmp)?);
        out.write_all(MAGIC)?;
        out.write_all(&[family_byte(ty.family), ty.rank as u8])?;
        out.write_all(&ty.p.unwrap_or(0).to_le_bytes())?;
        out.write_all(&(engine.size() as u32).to_le_bytes())?;
        out.write_all(&(engine.key_len as u32).to_le_bytes())?;
        for &c in &engine.keys {
            out.write_all(&c.to_le_bytes())?;
        }
        out.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos + k;
        if end > self.buf.len() {
            return Err(Error::CorruptCache("truncated file".into()));
        }
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

pub fn load(path: &Path, ty: CoxeterType, bound: u64) -> Result<WEngine> {
    let entry = CatalogEntry::new(ty);
    if entry.w_order > bound {
        return Err(Error::BoundExceeded {
            what: ty.to_string(),
            needed: entry.w_order,
            bound,
        });
    }
    let buf = fs::read(path)?;
    let mut r = Reader { buf: &buf, pos: 0 };
    if r.take(5)? != MAGIC {
        return Err(Error::CorruptCache("bad magic".into()));
    }
    let head = r.take(2)?;
    let (fam, rank) = (head[0], head[1] as usize);
    let p = r.u32()?;
    if fam != family_byte(ty.family) || rank != ty.rank || p != ty.p.unwrap_or(0) {
        return Err(Error::CorruptCache(format!("file does not describe {ty}")));
    }
    let count = r.u32()? as usize;
    if count as u64 != entry.w_order {
        return Err(Error::CorruptCache(format!(
            "{count} elements stored, |W({ty})| = {}",
            entry.w_order
        )));
    }
    let rep = Representation::for_graph(&entry.graph)?;
    let key_len = r.u32()? as usize;
    if key_len != rep.key_len() {
        return Err(Error::CorruptCache("key length mismatch".into()));
    }
    let raw = r.take(count * key_len * 4)?;
    if r.pos != buf.len() {
        return Err(Error::CorruptCache("trailing bytes".into()));
    }
    let keys: Vec<i32> = raw
        .chunks_exact(4)
        .map(|c| i32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if keys[..key_len] != rep.identity()[..] {
        return Err(Error::CorruptCache(
            "first element is not the identity".into(),
        ));
    }
    let mut index: HashMap<&[i32], u32> = HashMap::with_capacity(count);
    for (i, k) in keys.chunks_exact(key_len).enumerate() {
        if index.insert(k, i as u32).is_some() {
            return Err(Error::CorruptCache("duplicate element".into()));
        }
    }

    let n = entry.graph.n;
    let mut rmul = Vec::with_capacity(count * n);
    let mut lmul = Vec::with_capacity(count * n);
    let mut length = vec![0u16; count];
    let mut parent = vec![0u32; count];
    let mut last = vec![u8::MAX; count];
    let mut discovered = 1usize;
    for x in 0..count {
        if x >= discovered {
            return Err(Error::CorruptCache(
                "element unreachable in BFS order".into(),
            ));
        }
        let xk = &keys[x * key_len..(x + 1) * key_len];
        for s in 0..n {
            let y = rep.right_gen(xk, s);
            let yi = *index
                .get(&y[..])
                .ok_or_else(|| Error::CorruptCache("set not closed under generators".into()))?;
            if yi as usize == discovered {
                length[discovered] = length[x] + 1;
                parent[discovered] = x as u32;
                last[discovered] = s as u8;
                discovered += 1;
            } else if yi as usize > discovered {
                return Err(Error::CorruptCache("elements not in BFS order".into()));
            }
            rmul.push(yi);
            let z = rep.left_gen(s, xk);
            let zi = *index
                .get(&z[..])
                .ok_or_else(|| Error::CorruptCache("set not closed under generators".into()))?;
            lmul.push(zi);
        }
    }
    drop(index);
    Ok(WEngine::from_tables(
        Some(ty),
        entry.graph.clone(),
        rmul,
        lmul,
        length,
        parent,
        last,
        keys,
        key_len,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::engine::DEFAULT_ENGINE_BOUND;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for ty in [CoxeterType::b(3), CoxeterType::h(3), CoxeterType::i2(7)] {
            let e = WEngine::for_type(ty, DEFAULT_ENGINE_BOUND).unwrap();
            let path = cache_path(dir.path(), ty);
            save(&path, &e).unwrap();
            let l = load(&path, ty, DEFAULT_ENGINE_BOUND).unwrap();
            assert_eq!(l.rmul, e.rmul);
            assert_eq!(l.lmul, e.lmul);
            assert_eq!(l.tau, e.tau);
            assert_eq!(l.w0, e.w0);
        }
    }

    #[test]
    fn corruption_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let ty = CoxeterType::a(3);
        let e = WEngine::for_type(ty, DEFAULT_ENGINE_BOUND).unwrap();
        let path = cache_path(dir.path(), ty);
        save(&path, &e).unwrap();
        let good = fs::read(&path).unwrap();

        // flip a coordinate of the last element
        let mut bad = good.clone();
        let k = bad.len() - 4;
        bad[k] ^= 0x40;
        fs::write(&path, &bad).unwrap();
        assert!(matches!(
            load(&path, ty, DEFAULT_ENGINE_BOUND),
            Err(Error::CorruptCache(_))
        ));

        // truncation
        fs::write(&path, &good[..good.len() - 8]).unwrap();
        assert!(matches!(
            load(&path, ty, DEFAULT_ENGINE_BOUND),
            Err(Error::CorruptCache(_))
        ));

        // wrong type
        fs::write(&path, &good).unwrap();
        assert!(load(&path, CoxeterType::b(3), DEFAULT_ENGINE_BOUND).is_err());
        assert!(load(&path, ty, DEFAULT_ENGINE_BOUND).is_ok());
    }

    #[test]
    fn swapped_order_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let ty = CoxeterType::a(2);
        let e = WEngine::for_type(ty, DEFAULT_ENGINE_BOUND).unwrap();
        let path = cache_path(dir.path(), ty);
        save(&path, &e).unwrap();
        let mut buf = fs::read(&path).unwrap();
        let header = 5 + 2 + 4 + 4 + 4;
        let kl = e.key_len * 4;
        // swap elements 1 and 2
        let (a, b) = (header + kl, header + 2 * kl);
        let first: Vec<u8> = buf[a..a + kl].to_vec();
        buf.copy_within(b..b + kl, a);
        buf[b..b + kl].copy_from_slice(&first);
        fs::write(&path, &buf).unwrap();
        assert!(matches!(
            load(&path, ty, DEFAULT_ENGINE_BOUND),
            Err(Error::CorruptCache(_))
        ));
    }
}
