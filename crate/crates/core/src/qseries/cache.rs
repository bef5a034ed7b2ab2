//! Plain-text series files: a header `char=<a₁a₂b₁b₂> N=<N>` followed by one
//! line `n0 n1 n2 c0 c1 c2 c3` per term.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::chargeom::Char;
use crate::error::{Error, Result};
use crate::exact_arith::CycInt8;

use super::{theta_qexp, ExpTriple, QSeries};

pub fn header(m: Char, n: u32) -> String {
    let [a1, a2, b1, b2] = m.bits();
    format!("char={a1}{a2}{b1}{b2} N={n}")
}

pub fn write_series<W: Write>(mut w: W, m: Char, s: &QSeries) -> Result<()> {
    writeln!(w, "{}", header(m, s.truncation()))?;
    for (e, c) in s.terms() {
        let [c0, c1, c2, c3] = c.0;
        writeln!(w, "{} {} {} {c0} {c1} {c2} {c3}", e.n0, e.n1, e.n2)?;
    }
    Ok(())
}

pub fn parse_series(text: &str) -> Result<(Char, QSeries)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or_else(|| Error::Cache("empty file".into()))?;
    let mut m = None;
    let mut n = None;
    for field in head.split_whitespace() {
        if let Some(v) = field.strip_prefix("char=") {
            m = Char::parse(v);
        } else if let Some(v) = field.strip_prefix("N=") {
            n = v.parse::<u32>().ok();
        }
    }
    let (m, n) = m.zip(n).ok_or_else(|| Error::Cache(format!("bad header `{head}`")))?;
    let mut terms = Vec::new();
    for line in lines {
        let v: Vec<i64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Cache(format!("bad term line `{line}`")))?;
        if v.len() != 7 || v[..3].iter().any(|x| *x < 0) {
            return Err(Error::Cache(format!("bad term line `{line}`")));
        }
        let e = ExpTriple::new(v[0] as u32, v[1] as u32, v[2] as u32);
        if e.degree() > n {
            return Err(Error::Cache(format!("term `{line}` beyond N={n}")));
        }
        terms.push((e, CycInt8([v[3], v[4], v[5], v[6]])));
    }
    Ok((m, QSeries::from_terms(terms, n)))
}

/// Theta expansions backed by a directory of series files.
#[derive(Clone, Debug)]
pub struct SeriesCache {
    dir: PathBuf,
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(SeriesCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, m: Char, n: u32) -> PathBuf {
        let [a1, a2, b1, b2] = m.bits();
        self.dir.join(format!("theta_{a1}{a2}{b1}{b2}_N{n}.txt"))
    }

    /// Load `θ[m]` to truncation `n`, computing and storing it on a miss.
    /// A stored file that disagrees with its own header is an error.
    pub fn theta(&self, m: Char, n: u32) -> Result<QSeries> {
        let p = self.path(m, n);
        if p.exists() {
            let (got, s) = parse_series(&fs::read_to_string(&p)?)?;
            if got != m || s.truncation() != n {
                return Err(Error::Cache(format!("{} holds {} at N={}", p.display(), got, s.truncation())));
            }
            return Ok(s);
        }
        let s = theta_qexp(m, n);
        let mut buf = Vec::new();
        write_series(&mut buf, m, &s)?;
        fs::write(&p, buf)?;
        Ok(s)
    }
}
