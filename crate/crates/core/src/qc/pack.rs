//! Half-size storage for matrices whose row space is invariant under an
//! involution of the columns.
//!
//! A representative row is stored together with a flag saying whether its
//! image under the involution is an independent row. Unpacking emits
//! `r_1, P r_1, r_2, P r_2, ..` with the images of unflagged rows skipped,
//! which gives a basis of the original row space in a fixed order.
//!
//! Text layout: `[qc]` section with `packing = pairs`, the involution as an
//! index list, the flags as a 0/1 string, then the representatives in the
//! usual matrix format.

use crate::gf::FieldSpec;
use crate::linalg::FMatrix;
use crate::pkc::{KeyFile, PkcError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedMatrix {
    /// Column involution; column `j` of the image is column `perm[j]`.
    pub perm: Vec<usize>,
    pub reps: FMatrix,
    /// Whether the image of each representative is stored implicitly.
    pub pair_flags: Vec<bool>,
}

impl PackedMatrix {
    /// Packs `h`, whose row space must be invariant under `perm`.
    /// Candidates are the rows of `h` and their pairwise sums; a candidate
    /// whose image is independent as well is preferred, so rows lying in an
    /// eigenspace of the involution only end up stored alone when no pair
    /// is left.
    pub fn pack(h: &FMatrix, perm: &[usize], spec: &FieldSpec) -> Option<PackedMatrix> {
        let level = h.level();
        let cols = h.cols();
        let rows = h.row_vecs();
        let mut candidates = rows.clone();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                candidates.push(rows[i].iter().zip(&rows[j]).map(|(&a, &b)| spec.add(a, b)).collect());
            }
        }
        let one_row = |r: &Vec<_>| FMatrix::from_rows(vec![r.clone()], cols, level);
        let mut span = FMatrix::zeros(0, cols, level);
        let mut reps = Vec::new();
        let mut flags = Vec::new();
        for want_pair in [true, false] {
            for r in &candidates {
                let row = one_row(r);
                if span.row_space_contains(&row, spec) {
                    continue;
                }
                let with_row = span.vstack(&row);
                let image = row.permute_columns(perm);
                let independent = !with_row.row_space_contains(&image, spec);
                if want_pair && !independent {
                    continue;
                }
                span = if independent { with_row.vstack(&image) } else { with_row };
                reps.push(r.clone());
                flags.push(independent);
            }
        }
        let packed = PackedMatrix { perm: perm.to_vec(), reps: FMatrix::from_rows(reps, cols, level), pair_flags: flags };
        packed.unpack().row_space_eq(h, spec).then_some(packed)
    }

    pub fn unpack(&self) -> FMatrix {
        let mut rows = Vec::new();
        for (r, &flag) in self.reps.row_vecs().into_iter().zip(&self.pair_flags) {
            if flag {
                let image: Vec<_> = self.perm.iter().map(|&p| r[p]).collect();
                rows.push(r);
                rows.push(image);
            } else {
                rows.push(r);
            }
        }
        FMatrix::from_rows(rows, self.reps.cols(), self.reps.level())
    }

    /// Stored symbols over the unpacked size.
    pub fn ratio(&self) -> f64 {
        let full = self.unpack().rows().max(1);
        self.reps.rows() as f64 / full as f64
    }

    pub fn write_section(&self, kf: &mut KeyFile, spec: &FieldSpec) {
        let perm: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        let flags: String = self.pair_flags.iter().map(|&f| if f { '1' } else { '0' }).collect();
        let body = format!("packing = pairs\ninvolution = {}\nflags = {}\n{}", perm.join(" "), flags, self.reps.to_text(spec));
        kf.add_section("qc", body);
    }

    pub fn read_section(kf: &KeyFile, spec: &FieldSpec, level: usize) -> Result<PackedMatrix, PkcError> {
        let body = kf.section("qc")?;
        let ferr = |m: &str| PkcError::Format(m.to_string());
        let mut lines = body.lines().filter(|l| !l.trim().is_empty());
        let mut field = |key: &str| -> Result<String, PkcError> {
            let line = lines.next().ok_or_else(|| ferr("truncated [qc] section"))?;
            let (k, v) = line.split_once('=').ok_or_else(|| ferr("expected key = value in [qc]"))?;
            if k.trim() != key {
                return Err(PkcError::Format(format!("expected {key} in [qc], found {}", k.trim())));
            }
            Ok(v.trim().to_string())
        };
        if field("packing")? != "pairs" {
            return Err(ferr("unsupported packing"));
        }
        let perm = field("involution")?
            .split_whitespace()
            .map(|s| s.parse::<usize>().map_err(|_| ferr("bad involution entry")))
            .collect::<Result<Vec<_>, _>>()?;
        let pair_flags = field("flags")?
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(ferr("flags must be 0/1")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rest: Vec<&str> = lines.collect();
        let reps = FMatrix::from_text(&rest.join("\n"), spec, level)?;
        if reps.rows() != pair_flags.len() || perm.len() != reps.cols() {
            return Err(ferr("[qc] section sizes disagree"));
        }
        Ok(PackedMatrix { perm, reps, pair_flags })
    }
}
