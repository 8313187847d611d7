use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::CountError;
use crate::bignat::BigNat;
use crate::group::GroupSpec;

/// Exact `f_a(h)` for every `a` (canonical index order) and every `0 <= h <= hmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    group: GroupSpec,
    rows: Vec<Vec<BigNat>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    group: String,
    n: usize,
    #[serde(default)]
    h_min: usize,
    hmax: usize,
    rows: Vec<Vec<BigNat>>,
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    group: &'a str,
    h: usize,
    a_index: usize,
    count: String,
}

impl CountTable {
    /// Wraps rows `0..rows.len()`, each of length `n`.
    pub fn from_rows(group: GroupSpec, rows: Vec<Vec<BigNat>>) -> Result<Self, CountError> {
        if rows.is_empty() {
            return Err(CountError::Malformed("no rows".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != group.order()) {
            return Err(CountError::Malformed(format!(
                "row {bad} has {} entries, expected {}",
                rows[bad].len(),
                group.order()
            )));
        }
        Ok(CountTable { group, rows })
    }

    pub(crate) fn from_rows_unchecked(group: GroupSpec, rows: Vec<Vec<BigNat>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == group.order()));
        CountTable { group, rows }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn hmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, h: usize) -> Option<&[BigNat]> {
        self.rows.get(h).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<BigNat>] {
        &self.rows
    }

    pub(crate) fn require_row(&self, h: usize) -> Result<&[BigNat], CountError> {
        self.row(h).ok_or(CountError::MissingRow(h))
    }

    pub fn get(&self, h: usize, a_index: usize) -> Option<&BigNat> {
        self.rows.get(h)?.get(a_index)
    }

    /// `(min_a f_a(h), max_a f_a(h))`.
    pub fn min_max(&self, h: usize) -> Result<(BigNat, BigNat), CountError> {
        let row = self.require_row(h)?;
        let min = row.iter().min().cloned().unwrap_or_default();
        let max = row.iter().max().cloned().unwrap_or_default();
        Ok((min, max))
    }

    /// `max_a f_a(h) - min_a f_a(h)`.
    pub fn deviation(&self, h: usize) -> Result<BigNat, CountError> {
        let (min, max) = self.min_max(h)?;
        Ok(max.checked_sub(&min)?)
    }

    pub fn row_sum(&self, h: usize) -> Result<BigNat, CountError> {
        Ok(self.require_row(h)?.iter().sum())
    }

    /// Keeps rows `0..=hmax`.
    pub fn truncated(&self, hmax: usize) -> CountTable {
        CountTable {
            group: self.group.clone(),
            rows: self.rows[..=hmax.min(self.hmax())].to_vec(),
        }
    }

    /// First `(h, a_index)` where the two tables differ, comparing the common rows.
    pub fn first_difference(&self, other: &CountTable) -> Option<(usize, usize)> {
        if self.group != other.group {
            return Some((0, 0));
        }
        self.rows
            .iter()
            .zip(&other.rows)
            .enumerate()
            .find_map(|(h, (x, y))| x.iter().zip(y).position(|(p, q)| p != q).map(|a| (h, a)))
    }

    /// CSV with header `group,h,a_index,count`, rows sorted by `(h, a_index)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        self.write_csv_range(out, 0, self.hmax())
    }

    /// CSV restricted to rows `h_min..=h_max`.
    pub fn write_csv_range<W: Write>(
        &self,
        out: W,
        h_min: usize,
        h_max: usize,
    ) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        let group = self.group.to_string();
        let h_max = h_max.min(self.hmax());
        for (h, row) in self.rows.iter().enumerate().take(h_max + 1).skip(h_min) {
            for (a_index, count) in row.iter().enumerate() {
                w.serialize(CsvRecord {
                    group: &group,
                    h,
                    a_index,
                    count: count.to_string(),
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Parses the CSV produced by [`CountTable::write_csv`].
    pub fn read_csv<R: Read>(input: R) -> Result<Self, CountError> {
        let mut r = csv::Reader::from_reader(input);
        let mut group: Option<GroupSpec> = None;
        let mut rows: Vec<Vec<BigNat>> = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| CountError::Malformed(e.to_string()))?;
            let field = |i: usize| rec.get(i).unwrap_or_default();
            let g = match &group {
                Some(g) => g,
                None => group.insert(field(0).parse()?),
            };
            let parse_usize = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| CountError::Malformed(format!("{s:?}: {e}")))
            };
            let h = parse_usize(field(1))?;
            let a = parse_usize(field(2))?;
            let count: BigNat = field(3)
                .parse()
                .map_err(|e| CountError::Malformed(format!("{e}")))?;
            if h == rows.len() {
                rows.push(Vec::with_capacity(g.order()));
            } else if h + 1 != rows.len() {
                return Err(CountError::Malformed(format!("unexpected row h = {h}")));
            }
            let row = rows.last_mut().expect("row pushed above");
            if a != row.len() {
                return Err(CountError::Malformed(format!(
                    "unexpected a_index {a} in row {h}"
                )));
            }
            row.push(count);
        }
        let group = group.ok_or_else(|| CountError::Malformed("empty table".into()))?;
        CountTable::from_rows(group, rows)
    }

    /// JSON form; counts are decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        self.to_json_range(0, self.hmax())
    }

    /// JSON restricted to rows `h_min..=h_max`; `rows[k]` holds `h = h_min + k`.
    pub fn to_json_range(&self, h_min: usize, h_max: usize) -> serde_json::Value {
        let h_max = h_max.min(self.hmax());
        serde_json::to_value(TableJson {
            group: self.group.to_string(),
            n: self.group.order(),
            h_min,
            hmax: h_max,
            rows: self.rows[h_min.min(h_max + 1)..=h_max].to_vec(),
        })
        .expect("count table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, CountError> {
        let raw: TableJson = serde_json::from_value(value.clone())
            .map_err(|e| CountError::Malformed(e.to_string()))?;
        let group: GroupSpec = raw.group.parse()?;
        if raw.h_min != 0 {
            return Err(CountError::Malformed("partial table (h_min > 0)".into()));
        }
        if group.order() != raw.n || raw.rows.len() != raw.hmax + 1 {
            return Err(CountError::Malformed("header does not match rows".into()));
        }
        CountTable::from_rows(group, raw.rows)
    }
}
