use std::fmt;
use std::io;

/// Everything that can go wrong outside of plain programmer error.
///
/// Invariant breakage inside the constructions themselves (a closed-form
/// layer disagreeing with an explicit closure, say) is a bug and panics;
/// this type is reserved for bad inputs and environmental failure.
#[derive(Debug)]
pub enum Error {
    /// Two operands live over different ground sets.
    GroundMismatch { left: u8, right: u8 },
    /// A 1-based element label falls outside `1..=n`.
    IndexOutOfRange { index: u32, ground_n: u8 },
    /// The same element label was given twice.
    DuplicateIndex { index: u32 },
    /// The ground set does not fit in the word-backed representation.
    GroundTooLarge { ground_n: u32, max: u32 },
    /// The ground set is within representation range but too large for an
    /// exhaustive enumeration to finish honestly.
    GroundTooLargeForEnumeration { ground_n: u8, max: u8 },
    /// The ground set is too large for a search over *families* of subsets
    /// (doubly exponential) or over all even subsets per member.
    GroundTooLargeForExhaustion { ground_n: u8, max: u8 },
    /// A requested subset size exceeds the ground size.
    SizeOutOfRange { size: u32, ground_n: u32 },
    /// An operation that needs at least one member was handed none.
    EmptyFamily,
    /// A family operation defined only for odd-sized members met an even one.
    EvenMemberPresent { member: String },
    /// A pairwise scan was asked for on a family past the quadratic budget.
    FamilyTooLarge { size: usize, max: usize },
    /// A uniform-cardinality check met a member of the wrong size.
    WrongCardinality { expected: u32, member: String },
    /// A seven-element window starting at this offset leaves the word.
    WindowOverflow { offset: u32 },
    /// A construction parameter is outside its documented range.
    InvalidParameter { what: &'static str, details: String },
    /// A family file failed to parse; `line` is 1-based.
    FamilyFile { line: usize, message: String },
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GroundMismatch { left, right } => {
                write!(f, "ground sets differ: [{left}] vs [{right}]")
            }
            Error::IndexOutOfRange { index, ground_n } => {
                write!(f, "element {index} is outside the ground set [{ground_n}]")
            }
            Error::DuplicateIndex { index } => {
                write!(f, "element {index} appears more than once")
            }
            Error::GroundTooLarge { ground_n, max } => {
                write!(f, "ground size {ground_n} is outside the supported range 2..={max}")
            }
            Error::GroundTooLargeForEnumeration { ground_n, max } => {
                write!(
                    f,
                    "ground size {ground_n} is too large for exhaustive search (max {max})"
                )
            }
            Error::GroundTooLargeForExhaustion { ground_n, max } => {
                write!(
                    f,
                    "ground size {ground_n} is too large for brute-force exhaustion (max {max})"
                )
            }
            Error::SizeOutOfRange { size, ground_n } => {
                write!(f, "subset size {size} exceeds ground size {ground_n}")
            }
            Error::EmptyFamily => write!(f, "the family has no members"),
            Error::EvenMemberPresent { member } => {
                write!(f, "member {{{member}}} has even cardinality")
            }
            Error::FamilyTooLarge { size, max } => {
                write!(f, "family of size {size} exceeds the pairwise-scan budget {max}")
            }
            Error::WrongCardinality { expected, member } => {
                write!(f, "member {{{member}}} does not have cardinality {expected}")
            }
            Error::WindowOverflow { offset } => {
                write!(f, "window offset {offset} pushes the seven-point block past the word")
            }
            Error::InvalidParameter { what, details } => write!(f, "invalid {what}: {details}"),
            Error::FamilyFile { line, message } => {
                write!(f, "family file, line {line}: {message}")
            }
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
