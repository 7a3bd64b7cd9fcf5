//! Embedded named tournaments and external tournament databases, with
//! machine-checked claims for each.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::canon::are_isomorphic;
use crate::catalog::{parse_catalog, CatalogError};
use crate::tournament::{
    h_complement, h_tournament, quadratic_residues, Tournament, TournamentError,
};

const FIG2_33_TXT: &str = include_str!("artifacts/data/fig2_33.txt");
const FIG3_9_TXT: &str = include_str!("artifacts/data/fig3_9.txt");
const Y7_TXT: &str = include_str!("artifacts/data/y7.txt");
const Y8_TXT: &str = include_str!("artifacts/data/y8.txt");
const H6_TXT: &str = include_str!("artifacts/data/h6.txt");
const H6C_TXT: &str = include_str!("artifacts/data/h6c.txt");

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("unknown artifact name {0:?}")]
    UnknownName(String),
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("database has {found} entries, expected {expected}")]
    CountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Tournament(#[from] TournamentError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<CatalogError> for ArtifactError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::ParseError { line, msg } => ArtifactError::ParseError { line, msg },
            CatalogError::Tournament(t) => ArtifactError::Tournament(t),
            other => ArtifactError::InvariantViolation(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArtifactName {
    Fig2_33,
    Fig3_9,
    Y7,
    Y8,
    H6,
    H6c,
    Qr23,
}

impl ArtifactName {
    pub const ALL: [ArtifactName; 7] = [
        ArtifactName::Fig2_33,
        ArtifactName::Fig3_9,
        ArtifactName::Y7,
        ArtifactName::Y8,
        ArtifactName::H6,
        ArtifactName::H6c,
        ArtifactName::Qr23,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ArtifactName::Fig2_33 => "FIG2_33",
            ArtifactName::Fig3_9 => "FIG3_9",
            ArtifactName::Y7 => "Y7",
            ArtifactName::Y8 => "Y8",
            ArtifactName::H6 => "H6",
            ArtifactName::H6c => "H6C",
            ArtifactName::Qr23 => "QR23",
        }
    }
}

impl std::str::FromStr for ArtifactName {
    type Err = ArtifactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "FIG2_33" => Ok(ArtifactName::Fig2_33),
            "FIG3_9" => Ok(ArtifactName::Fig3_9),
            "Y7" => Ok(ArtifactName::Y7),
            "Y8" => Ok(ArtifactName::Y8),
            "H6" => Ok(ArtifactName::H6),
            "H6C" => Ok(ArtifactName::H6c),
            "QR23" => Ok(ArtifactName::Qr23),
            other => Err(ArtifactError::UnknownName(other.into())),
        }
    }
}

impl fmt::Display for ArtifactName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reference constructions some artifacts are claimed to match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    H(usize),
    HComplement(usize),
    QrCirculant(u64),
}

impl Construction {
    pub fn build(&self) -> Result<Tournament, TournamentError> {
        match *self {
            Construction::H(n) => h_tournament(n),
            Construction::HComplement(n) => h_complement(n),
            Construction::QrCirculant(p) => {
                Tournament::from_circulant(p as usize, &quadratic_residues(p)?)
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::H(n) => write!(f, "H_{n}"),
            Construction::HComplement(n) => write!(f, "H_{n} complement"),
            Construction::QrCirculant(p) => write!(f, "QR_{p} circulant"),
        }
    }
}

/// A machine-checkable claim about a named tournament. Counting thresholds
/// marked `derived` were pinned by brute-force computation, not quoted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Order(usize),
    TtFree(usize),
    ContainsTt(usize),
    DoublyRegular,
    /// exact 3-cycle count; `derived` distinguishes computed pins from
    /// quoted counts
    ThreeCycles { count: u64, derived: bool },
    ThreeCyclesAtLeast { count: u64, derived: bool },
    Tt3Count { count: u64, derived: bool },
    EqualsConstruction(Construction),
    ReverseIsomorphicTo(Construction),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let derived = |d: bool| if d { " [derived]" } else { "" };
        match *self {
            Claim::Order(n) => write!(f, "order = {n}"),
            Claim::TtFree(k) => write!(f, "TT_{k}-free"),
            Claim::ContainsTt(k) => write!(f, "contains TT_{k}"),
            Claim::DoublyRegular => write!(f, "doubly regular"),
            Claim::ThreeCycles { count, derived: d } => {
                write!(f, "3-cycle count = {count}{}", derived(d))
            }
            Claim::ThreeCyclesAtLeast { count, derived: d } => {
                write!(f, "3-cycle count >= {count}{}", derived(d))
            }
            Claim::Tt3Count { count, derived: d } => {
                write!(f, "TT_3 count = {count}{}", derived(d))
            }
            Claim::EqualsConstruction(c) => write!(f, "equals {c} construction"),
            Claim::ReverseIsomorphicTo(c) => write!(f, "reverse isomorphic to {c}"),
        }
    }
}

impl Claim {
    pub fn check(&self, t: &Tournament) -> bool {
        match *self {
            Claim::Order(n) => t.n() == n,
            Claim::TtFree(k) => !t.has_tt_k(k),
            Claim::ContainsTt(k) => t.has_tt_k(k),
            Claim::DoublyRegular => t.degree_profile().is_doubly_regular,
            Claim::ThreeCycles { count, .. } => t.count_3cycles() == count,
            Claim::ThreeCyclesAtLeast { count, .. } => t.count_3cycles() >= count,
            Claim::Tt3Count { count, .. } => t.count_tt3() == count,
            Claim::EqualsConstruction(c) => c.build().map_or(false, |r| r == *t),
            Claim::ReverseIsomorphicTo(c) => {
                c.build().map_or(false, |r| are_isomorphic(&r.reverse(), t))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedArtifact {
    pub name: ArtifactName,
    pub tournament: Tournament,
    pub claims: Vec<Claim>,
}

pub fn load_artifact(name: ArtifactName) -> NamedArtifact {
    let (text, claims) = match name {
        ArtifactName::Fig2_33 => (
            FIG2_33_TXT,
            vec![Claim::Order(33), Claim::TtFree(7), Claim::ContainsTt(6)],
        ),
        ArtifactName::Fig3_9 => (
            FIG3_9_TXT,
            vec![Claim::Order(9), Claim::ThreeCyclesAtLeast { count: 17, derived: true }],
        ),
        ArtifactName::Y7 => (
            Y7_TXT,
            vec![Claim::Order(7), Claim::ThreeCycles { count: Y7_THREE_CYCLES, derived: true }],
        ),
        ArtifactName::Y8 => (
            Y8_TXT,
            vec![Claim::Order(8), Claim::ThreeCycles { count: Y8_THREE_CYCLES, derived: true }],
        ),
        ArtifactName::H6 => (
            H6_TXT,
            vec![
                Claim::Order(6),
                Claim::EqualsConstruction(Construction::H(6)),
                Claim::ContainsTt(5),
                Claim::TtFree(6),
            ],
        ),
        ArtifactName::H6c => (
            H6C_TXT,
            vec![
                Claim::Order(6),
                Claim::EqualsConstruction(Construction::HComplement(6)),
                Claim::ReverseIsomorphicTo(Construction::H(6)),
                Claim::ContainsTt(5),
                Claim::TtFree(6),
            ],
        ),
        ArtifactName::Qr23 => (
            "",
            vec![
                Claim::Order(23),
                Claim::EqualsConstruction(Construction::QrCirculant(23)),
                Claim::DoublyRegular,
                Claim::TtFree(6),
                Claim::ThreeCycles { count: 506, derived: false },
                Claim::Tt3Count { count: 1265, derived: true },
            ],
        ),
    };
    let tournament = if name == ArtifactName::Qr23 {
        Construction::QrCirculant(23)
            .build()
            .expect("23 is prime with residue-set tournament condition")
    } else {
        Tournament::from_matrix_text(text).expect("embedded matrix is well-formed")
    };
    NamedArtifact { name, tournament, claims }
}

/// Derived counts for the sparse-cycle tournaments; pinned by the
/// brute-force triple count.
pub const Y7_THREE_CYCLES: u64 = 8;
pub const Y8_THREE_CYCLES: u64 = 15;

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub claim: Claim,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub name: ArtifactName,
    pub results: Vec<ClaimResult>,
    /// computed facts reported without an asserted expectation
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{} {}: {}",
                if r.pass { "ok  " } else { "FAIL" },
                self.name,
                r.claim
            )?;
        }
        for note in &self.notes {
            writeln!(f, "note {}: {note}", self.name)?;
        }
        Ok(())
    }
}

pub fn verify_artifact(a: &NamedArtifact) -> VerifyReport {
    let results = a
        .claims
        .iter()
        .map(|&claim| ClaimResult { claim, pass: claim.check(&a.tournament) })
        .collect();
    let mut notes = Vec::new();
    match a.name {
        ArtifactName::Y7 | ArtifactName::Y8 => {
            let y7 = load_artifact(ArtifactName::Y7).tournament;
            let y8 = load_artifact(ArtifactName::Y8).tournament;
            let fig3 = load_artifact(ArtifactName::Fig3_9).tournament;
            if a.name == ArtifactName::Y7 {
                notes.push(format!(
                    "embeds in Y8: {}; embeds in FIG3_9: {}",
                    y8.contains_subtournament(&a.tournament),
                    fig3.contains_subtournament(&a.tournament),
                ));
            } else {
                notes.push(format!(
                    "contains Y7: {}; embeds in FIG3_9: {}",
                    a.tournament.contains_subtournament(&y7),
                    fig3.contains_subtournament(&a.tournament),
                ));
            }
        }
        ArtifactName::Fig3_9 => {
            notes.push(format!("3-cycle count: {}", a.tournament.count_3cycles()));
        }
        _ => {}
    }
    VerifyReport { name: a.name, results, notes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbFormat {
    MatrixText,
    CatalogHex,
}

impl std::str::FromStr for DbFormat {
    type Err = ArtifactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "matrix" => Ok(DbFormat::MatrixText),
            "hex" | "catalog" => Ok(DbFormat::CatalogHex),
            other => Err(ArtifactError::UnknownName(other.into())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExternalDb {
    pub path: PathBuf,
    pub format: DbFormat,
    pub tournaments: Vec<Tournament>,
}

/// Parses an external tournament database. With `doubly_regular_claim` set,
/// requires exactly 37 entries, all doubly regular.
pub fn parse_external_db(
    path: &Path,
    format: DbFormat,
    doubly_regular_claim: bool,
) -> Result<ExternalDb, ArtifactError> {
    let text = fs::read_to_string(path)?;
    let tournaments = match format {
        DbFormat::MatrixText => parse_matrix_blocks(&text)?,
        DbFormat::CatalogHex => {
            parse_catalog(&text)?.entries.into_iter().map(|e| e.tournament).collect()
        }
    };
    if doubly_regular_claim {
        if tournaments.len() != 37 {
            return Err(ArtifactError::CountMismatch { expected: 37, found: tournaments.len() });
        }
        for (i, t) in tournaments.iter().enumerate() {
            if !t.degree_profile().is_doubly_regular {
                return Err(ArtifactError::InvariantViolation(format!(
                    "entry {i} is not doubly regular"
                )));
            }
        }
    }
    Ok(ExternalDb { path: path.to_path_buf(), format, tournaments })
}

/// Splits matrix text into consecutive square blocks: the width of each
/// block's first row fixes how many rows it spans.
fn parse_matrix_blocks(text: &str) -> Result<Vec<Tournament>, ArtifactError> {
    let rows: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut tournaments = Vec::new();
    let mut at = 0;
    while at < rows.len() {
        let n = rows[at].1.chars().count();
        if at + n > rows.len() {
            return Err(ArtifactError::ParseError {
                line: rows[at].0,
                msg: format!(
                    "matrix of order {n} truncated: {} rows remain",
                    rows.len() - at
                ),
            });
        }
        let block: String = rows[at..at + n]
            .iter()
            .flat_map(|(_, l)| [*l, "\n"])
            .collect();
        let t = Tournament::from_matrix_text(&block).map_err(|e| match e {
            TournamentError::ParseError { line, msg } => ArtifactError::ParseError {
                line: rows[at + line.saturating_sub(1)].0,
                msg,
            },
            other => ArtifactError::ParseError {
                line: rows[at].0,
                msg: other.to_string(),
            },
        })?;
        tournaments.push(t);
        at += n;
    }
    Ok(tournaments)
}
