//! Sequence input: FASTA parsing, the four-channel indicator mapping and
//! real-valued signals.

use std::io::BufRead;

use crate::error::{Error, Result};

/// The four unambiguous DNA bases, in the channel order used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Nucleotide {
    A,
    T,
    C,
    G,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::T, Nucleotide::C, Nucleotide::G];

    pub fn as_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::T => 'T',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
        }
    }

    fn from_byte(b: u8) -> Option<Nucleotide> {
        match b {
            b'A' => Some(Nucleotide::A),
            b'T' => Some(Nucleotide::T),
            b'C' => Some(Nucleotide::C),
            b'G' => Some(Nucleotide::G),
            _ => None,
        }
    }
}

/// How to treat residues outside A, C, G, T.
///
/// Lenient handling keeps ambiguity codes (N, R, Y, ...) in the sequence;
/// they later map to all-zero indicator columns. Strict handling rejects
/// them at parse time. `U` is folded to `T` under lenient handling so RNA
/// input works unchanged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AmbiguityPolicy {
    #[default]
    Lenient,
    Strict,
}

/// A named DNA sequence of length >= 1, stored as uppercase ASCII.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnaSequence {
    id: String,
    residues: Vec<u8>,
}

impl DnaSequence {
    /// Builds a sequence from raw text. Whitespace and digits are dropped
    /// (so numbered GenBank ORIGIN blocks paste straight in), letters are
    /// uppercased, and the result is validated against `policy`.
    pub fn new(id: impl Into<String>, raw: &str, policy: AmbiguityPolicy) -> Result<Self> {
        let id = id.into();
        let residues = normalize_residues(raw, policy)?;
        if residues.is_empty() {
            return Err(Error::EmptyRecord { id });
        }
        Ok(DnaSequence { id, residues })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// The residues as uppercase ASCII bytes.
    pub fn residues(&self) -> &[u8] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        // Construction rejects empty sequences, so this is always false.
        self.residues.is_empty()
    }

    /// Serializes the record as FASTA with 60-column line wrapping.
    pub fn to_fasta(&self) -> String {
        let mut out = String::with_capacity(self.id.len() + self.residues.len() + 8);
        out.push('>');
        out.push_str(&self.id);
        out.push('\n');
        for chunk in self.residues.chunks(60) {
            out.push_str(std::str::from_utf8(chunk).expect("residues are ASCII"));
            out.push('\n');
        }
        out
    }

    pub(crate) fn from_validated(id: String, residues: Vec<u8>) -> Self {
        DnaSequence { id, residues }
    }
}

/// Normalizes raw sequence text: strips whitespace and digits, uppercases,
/// folds U to T, and under strict policy rejects anything outside ACGT.
/// Positions in errors refer to the normalized (0-based) residue index.
fn normalize_residues(raw: &str, policy: AmbiguityPolicy) -> Result<Vec<u8>> {
    let mut residues = Vec::with_capacity(raw.len());
    for ch in raw.chars() {
        if ch.is_whitespace() || ch.is_ascii_digit() {
            continue;
        }
        let up = ch.to_ascii_uppercase();
        let b = match up {
            'A' | 'C' | 'G' | 'T' => up as u8,
            'U' if policy == AmbiguityPolicy::Lenient => b'T',
            _ if up.is_ascii_alphabetic() && policy == AmbiguityPolicy::Lenient => up as u8,
            _ => {
                return Err(Error::InvalidResidue {
                    position: residues.len(),
                    residue: ch,
                })
            }
        };
        residues.push(b);
    }
    Ok(residues)
}

/// Parses FASTA (or bare sequence text with no header) into records.
///
/// Returns `EmptyInput` when no residues are found at all, `EmptyRecord`
/// for a header with no body, and `InvalidResidue` under strict policy.
/// Input with no `>` header yields a single record with id `seq1`.
pub fn parse_fasta<R: BufRead>(input: R, policy: AmbiguityPolicy) -> Result<Vec<DnaSequence>> {
    let mut records: Vec<DnaSequence> = Vec::new();
    let mut current: Option<(String, Vec<u8>)> = None;
    let mut saw_data = false;

    let finish =
        |current: &mut Option<(String, Vec<u8>)>, records: &mut Vec<DnaSequence>| -> Result<()> {
            if let Some((id, residues)) = current.take() {
                if residues.is_empty() {
                    return Err(Error::EmptyRecord { id });
                }
                records.push(DnaSequence::from_validated(id, residues));
            }
            Ok(())
        };

    for line in input.lines() {
        let line = line.map_err(|_| Error::EmptyInput)?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(header) = trimmed.strip_prefix('>') {
            finish(&mut current, &mut records)?;
            // id = first whitespace-delimited token; the rest is description
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            let id = if id.is_empty() {
                format!("seq{}", records.len() + 1)
            } else {
                id
            };
            current = Some((id, Vec::new()));
            saw_data = true;
        } else {
            if current.is_none() {
                current = Some((format!("seq{}", records.len() + 1), Vec::new()));
            }
            let (_, residues) = current.as_mut().expect("record in progress");
            let start = residues.len();
            let mut parsed = normalize_residues(trimmed, policy).map_err(|e| match e {
                Error::InvalidResidue { position, residue } => Error::InvalidResidue {
                    position: start + position,
                    residue,
                },
                other => other,
            })?;
            residues.append(&mut parsed);
            saw_data = true;
        }
    }
    finish(&mut current, &mut records)?;

    if !saw_data || records.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(records)
}

/// The four binary indicator tracks of a DNA sequence.
///
/// Channel `alpha` holds 1 at position `n` when the residue there is
/// `alpha`, else 0. Ambiguous residues leave a zero in every channel;
/// `ambiguous()` reports how many positions did so, which callers may want
/// to surface since those positions contribute no spectral power.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSet {
    id: String,
    len: usize,
    channels: [Vec<u8>; 4],
    ambiguous: usize,
}

impl IndicatorSet {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Sequence length N (every channel has this length).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The indicator track for one base.
    pub fn channel(&self, nt: Nucleotide) -> &[u8] {
        &self.channels[nt as usize]
    }

    /// All four tracks in A, T, C, G order.
    pub fn channels(&self) -> [&[u8]; 4] {
        [
            &self.channels[0],
            &self.channels[1],
            &self.channels[2],
            &self.channels[3],
        ]
    }

    /// Number of positions with no 1 in any channel.
    pub fn ambiguous(&self) -> usize {
        self.ambiguous
    }

    pub(crate) fn from_parts(
        id: String,
        len: usize,
        channels: [Vec<u8>; 4],
        ambiguous: usize,
    ) -> Self {
        IndicatorSet {
            id,
            len,
            channels,
            ambiguous,
        }
    }
}

/// Expands a sequence into its four indicator tracks.
///
/// Under strict policy any residue outside ACGT is an error; under lenient
/// policy it becomes an all-zero column and is counted as ambiguous.
pub fn voss_map(seq: &DnaSequence, policy: AmbiguityPolicy) -> Result<IndicatorSet> {
    let n = seq.len();
    let mut channels = [vec![0u8; n], vec![0u8; n], vec![0u8; n], vec![0u8; n]];
    let mut ambiguous = 0usize;
    for (pos, &b) in seq.residues().iter().enumerate() {
        match Nucleotide::from_byte(b) {
            Some(nt) => channels[nt as usize][pos] = 1,
            None => {
                if policy == AmbiguityPolicy::Strict {
                    return Err(Error::InvalidResidue {
                        position: pos,
                        residue: b as char,
                    });
                }
                ambiguous += 1;
            }
        }
    }
    Ok(IndicatorSet::from_parts(
        seq.id().to_string(),
        n,
        channels,
        ambiguous,
    ))
}

/// A finite, non-empty real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSignal {
    samples: Vec<f64>,
}

impl RealSignal {
    /// Validates that the signal is non-empty and every sample is finite.
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(position) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { position });
        }
        Ok(RealSignal { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(raw: &str) -> DnaSequence {
        DnaSequence::new("t", raw, AmbiguityPolicy::Lenient).unwrap()
    }

    #[test]
    fn parses_single_record() {
        let recs = parse_fasta(&b">x\nACGT\n"[..], AmbiguityPolicy::Strict).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].id(), "x");
        assert_eq!(recs[0].residues(), b"ACGT");
        assert_eq!(recs[0].len(), 4);
    }

    #[test]
    fn parses_multiple_records_and_wrapping() {
        let input = b">a desc here\nACG\nTAC\n\n>b\nGGGG\n";
        let recs = parse_fasta(&input[..], AmbiguityPolicy::Strict).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].id(), "a");
        assert_eq!(recs[0].residues(), b"ACGTAC");
        assert_eq!(recs[1].id(), "b");
        assert_eq!(recs[1].residues(), b"GGGG");
    }

    #[test]
    fn headerless_input_gets_default_id() {
        let recs = parse_fasta(&b"acgt\nacgt\n"[..], AmbiguityPolicy::Strict).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].id(), "seq1");
        assert_eq!(recs[0].residues(), b"ACGTACGT");
    }

    #[test]
    fn strips_whitespace_and_digits() {
        // GenBank ORIGIN style lines
        let input = b">g\n1 acgta cgtac\n11 gtacg\n";
        let recs = parse_fasta(&input[..], AmbiguityPolicy::Strict).unwrap();
        assert_eq!(recs[0].len(), 15);
        assert_eq!(recs[0].residues(), b"ACGTACGTACGTACG");
    }

    #[test]
    fn crlf_input_parses() {
        let recs = parse_fasta(&b">x\r\nACGT\r\n"[..], AmbiguityPolicy::Strict).unwrap();
        assert_eq!(recs[0].residues(), b"ACGT");
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            parse_fasta(&b""[..], AmbiguityPolicy::Lenient).unwrap_err(),
            Error::EmptyInput
        );
        assert_eq!(
            parse_fasta(&b"\n  \n"[..], AmbiguityPolicy::Lenient).unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn header_without_body_is_an_error() {
        let err = parse_fasta(&b">x\n>y\nACGT\n"[..], AmbiguityPolicy::Lenient).unwrap_err();
        assert_eq!(err, Error::EmptyRecord { id: "x".into() });
    }

    #[test]
    fn strict_rejects_ambiguity_codes_with_position() {
        let err = parse_fasta(&b">x\nACGNT\n"[..], AmbiguityPolicy::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidResidue {
                position: 3,
                residue: 'N'
            }
        );
        // position counts normalized residues across wrapped lines
        let err = parse_fasta(&b">x\nACG\nTAN\n"[..], AmbiguityPolicy::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidResidue {
                position: 5,
                residue: 'N'
            }
        );
    }

    #[test]
    fn lenient_keeps_ambiguity_codes() {
        let recs = parse_fasta(&b">x\nACGNRT\n"[..], AmbiguityPolicy::Lenient).unwrap();
        assert_eq!(recs[0].residues(), b"ACGNRT");
    }

    #[test]
    fn u_folds_to_t_only_when_lenient() {
        let recs = parse_fasta(&b">x\nACGU\n"[..], AmbiguityPolicy::Lenient).unwrap();
        assert_eq!(recs[0].residues(), b"ACGT");
        let err = parse_fasta(&b">x\nACGU\n"[..], AmbiguityPolicy::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidResidue {
                position: 3,
                residue: 'U'
            }
        );
    }

    #[test]
    fn non_alphabetic_junk_is_rejected_even_lenient() {
        let err = parse_fasta(&b">x\nAC-GT\n"[..], AmbiguityPolicy::Lenient).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidResidue {
                position: 2,
                residue: '-'
            }
        );
    }

    #[test]
    fn fasta_round_trip_preserves_record() {
        let s = DnaSequence::new("probe_1", &"ACGTT".repeat(30), AmbiguityPolicy::Strict).unwrap();
        let text = s.to_fasta();
        // 150 residues wrap at 60 columns
        assert_eq!(text.lines().count(), 1 + 3);
        let back = parse_fasta(text.as_bytes(), AmbiguityPolicy::Strict).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0], s);
    }

    #[test]
    fn voss_map_matches_worked_tracks() {
        // TAGCCTGCTGAT expands to these four tracks
        let ind = voss_map(&seq("TAGCCTGCTGAT"), AmbiguityPolicy::Strict).unwrap();
        assert_eq!(
            ind.channel(Nucleotide::A),
            &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]
        );
        assert_eq!(
            ind.channel(Nucleotide::T),
            &[1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1]
        );
        assert_eq!(
            ind.channel(Nucleotide::C),
            &[0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0]
        );
        assert_eq!(
            ind.channel(Nucleotide::G),
            &[0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0]
        );
        assert_eq!(ind.ambiguous(), 0);
    }

    #[test]
    fn voss_map_homopolymer() {
        let ind = voss_map(&seq("AAAA"), AmbiguityPolicy::Strict).unwrap();
        assert_eq!(ind.channel(Nucleotide::A), &[1, 1, 1, 1]);
        for nt in [Nucleotide::T, Nucleotide::C, Nucleotide::G] {
            assert_eq!(ind.channel(nt), &[0, 0, 0, 0]);
        }
    }

    #[test]
    fn voss_map_counts_ambiguous_columns() {
        let ind = voss_map(&seq("ACGN"), AmbiguityPolicy::Lenient).unwrap();
        assert_eq!(ind.ambiguous(), 1);
        let col_sum: u8 = ind.channels().iter().map(|ch| ch[3]).sum();
        assert_eq!(col_sum, 0);
        // exactly one channel fires per unambiguous position
        for pos in 0..3 {
            let s: u8 = ind.channels().iter().map(|ch| ch[pos]).sum();
            assert_eq!(s, 1);
        }
    }

    #[test]
    fn voss_map_strict_rejects_ambiguous() {
        let err = voss_map(&seq("ACGN"), AmbiguityPolicy::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidResidue {
                position: 3,
                residue: 'N'
            }
        );
    }

    #[test]
    fn real_signal_validation() {
        assert_eq!(RealSignal::new(vec![]).unwrap_err(), Error::EmptyInput);
        assert_eq!(
            RealSignal::new(vec![1.0, f64::NAN]).unwrap_err(),
            Error::NonFiniteSample { position: 1 }
        );
        assert_eq!(RealSignal::new(vec![1.0, -2.5]).unwrap().len(), 2);
    }
}
