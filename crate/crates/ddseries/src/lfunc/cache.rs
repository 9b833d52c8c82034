use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use super::l_central;
use crate::arith::{EightChar, QuadChar};
use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::value::ValueWithError;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Afe,
    Hurwitz,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Afe => "afe",
            Method::Hurwitz => "hurwitz",
        }
    }
}

/// A computed central value `L(1/2, χ_{d0}χψ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LRecord {
    pub d0: u64,
    pub chi: QuadChar,
    pub psi_index: EightChar,
    pub value: ValueWithError<f64>,
    pub method: Method,
}

type Key = (u64, u64, EightChar, Method);

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    d0: u64,
    q: u64,
    psi: String,
    method: String,
    re: f64,
    im: f64,
    abs_error: f64,
}

/// Append-only store of central values keyed by `(d0, q, ψ, method)`, where
/// `q` is the conductor of the twisting character. Any number of readers;
/// appends are serialized through one writer.
#[derive(Debug)]
pub struct LCache {
    map: RwLock<HashMap<Key, ValueWithError<f64>>>,
    writer: Option<Mutex<File>>,
    path: Option<PathBuf>,
}

impl LCache {
    pub fn in_memory() -> Self {
        LCache {
            map: RwLock::new(HashMap::new()),
            writer: None,
            path: None,
        }
    }

    /// Opens (or creates) the CSV file and loads its rows.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut map = HashMap::new();
        let exists = path.exists() && std::fs::metadata(&path)?.len() > 0;
        if exists {
            let mut rdr = csv::Reader::from_path(&path)?;
            for row in rdr.deserialize::<Row>() {
                let r = row?;
                let psi: EightChar = r.psi.parse()?;
                let method = match r.method.as_str() {
                    "afe" => Method::Afe,
                    "hurwitz" => Method::Hurwitz,
                    m => return Err(Error::Domain(format!("unknown cache method {m:?}"))),
                };
                map.insert(
                    (r.d0, r.q, psi, method),
                    ValueWithError::new(C64::new(r.re, r.im), r.abs_error),
                );
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&path)?;
        if !exists {
            writeln!(file, "d0,q,psi,method,re,im,abs_error")?;
        }
        Ok(LCache {
            map: RwLock::new(map),
            writer: Some(Mutex::new(file)),
            path: Some(path),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(
        &self,
        d0: u64,
        chi: &QuadChar,
        psi: EightChar,
        method: Method,
    ) -> Option<ValueWithError<f64>> {
        self.map
            .read()
            .unwrap()
            .get(&(d0, chi.conductor(), psi, method))
            .copied()
    }

    pub fn insert(&self, rec: &LRecord) -> Result<()> {
        let key = (rec.d0, rec.chi.conductor(), rec.psi_index, rec.method);
        {
            let mut map = self.map.write().unwrap();
            if map.contains_key(&key) {
                return Ok(());
            }
            map.insert(key, rec.value);
        }
        if let Some(w) = &self.writer {
            let mut f = w.lock().unwrap();
            writeln!(
                f,
                "{},{},{},{},{:?},{:?},{:?}",
                rec.d0,
                rec.chi.conductor(),
                rec.psi_index.tag(),
                rec.method.as_str(),
                rec.value.value.re,
                rec.value.value.im,
                rec.value.abs_error
            )?;
        }
        Ok(())
    }

    /// `L(1/2, ξ)` by the approximate functional equation, stored under
    /// `d0` the odd conductor of `ξ`, trivial `χ`, and `ψ` chosen so that
    /// `χ_{d0}ψ = ξ`.
    pub fn central(&self, xi: &QuadChar, policy: &TruncationPolicy) -> Result<ValueWithError<f64>> {
        let k = xi.odd_conductor();
        let psi = if k & 3 == 3 {
            xi.eight_part().mul(EightChar::PsiM1)
        } else {
            xi.eight_part()
        };
        self.get_or_compute(k, &QuadChar::trivial(), psi, Method::Afe, || {
            l_central(xi, policy)
        })
    }

    /// Looks up a value or computes and stores it.
    pub fn get_or_compute<F>(
        &self,
        d0: u64,
        chi: &QuadChar,
        psi: EightChar,
        method: Method,
        f: F,
    ) -> Result<ValueWithError<f64>>
    where
        F: FnOnce() -> Result<ValueWithError<f64>>,
    {
        if let Some(v) = self.get(d0, chi, psi, method) {
            return Ok(v);
        }
        let value = f()?;
        self.insert(&LRecord {
            d0,
            chi: *chi,
            psi_index: psi,
            value,
            method,
        })?;
        Ok(value)
    }
}
