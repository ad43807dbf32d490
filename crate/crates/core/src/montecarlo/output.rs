// Copyright 2026 The mfqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! Results table: one row per circuit and physical rate.

use serde::{Deserialize, Serialize};

use super::PointEstimate;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "code,mode,noise,p_phys,p_err0,p_err1,p_err2plus,p_log2plus,stderr,p_log";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub code: String,
    pub mode: String,
    pub noise: String,
    pub p_phys: f64,
    pub p_err0: f64,
    pub p_err1: f64,
    pub p_err2plus: f64,
    pub p_log2plus: f64,
    pub stderr: f64,
    pub p_log: f64,
}

impl CsvRow {
    pub fn new(code: &str, mode: &str, noise: &str, e: &PointEstimate) -> Self {
        CsvRow {
            code: code.into(),
            mode: mode.into(),
            noise: noise.into(),
            p_phys: e.p_phys,
            p_err0: e.p_err0,
            p_err1: e.p_err1,
            p_err2plus: e.p_err2plus,
            p_log2plus: e.p_log2plus,
            stderr: e.stderr,
            p_log: e.p_log,
        }
    }

    /// One-sigma error of `p_log`.
    pub fn sigma(&self) -> f64 {
        self.stderr * self.p_err2plus
    }
}

pub fn write_csv(rows: &[CsvRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.code, r.mode, r.noise, r.p_phys, r.p_err0, r.p_err1, r.p_err2plus, r.p_log2plus, r.stderr, r.p_log
        ));
    }
    s
}

pub fn read_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        Some(h) => return Err(Error::Parse(format!("unexpected header {h:?}"))),
        None => return Err(Error::Parse("empty results file".into())),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 10 {
                return Err(Error::Parse(format!("row {}: expected 10 fields, got {}", i + 2, f.len())));
            }
            let num = |k: usize| {
                f[k].parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: bad number {:?}", i + 2, f[k])))
            };
            Ok(CsvRow {
                code: f[0].into(),
                mode: f[1].into(),
                noise: f[2].into(),
                p_phys: num(3)?,
                p_err0: num(4)?,
                p_err1: num(5)?,
                p_err2plus: num(6)?,
                p_log2plus: num(7)?,
                stderr: num(8)?,
                p_log: num(9)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_round_trip() {
        let rows = vec![CsvRow {
            code: "steane".into(),
            mode: "FF".into(),
            noise: "depolarizing".into(),
            p_phys: 1e-3,
            p_err0: 0.7,
            p_err1: 0.2,
            p_err2plus: 0.1,
            p_log2plus: 0.125,
            stderr: 0.003,
            p_log: 0.0125,
        }];
        let text = write_csv(&rows);
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(read_csv(&text).unwrap(), rows);
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(read_csv("a,b\n").is_err());
    }
}
