use std::fmt;

/// Exit codes.
pub const VERDICT_FAILED: u8 = 1;
pub const INPUT: u8 = 2;
pub const NUMERIC: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(m: impl fmt::Display) -> Self {
        Failure { code: INPUT, message: m.to_string() }
    }

    pub fn numeric(m: impl fmt::Display) -> Self {
        Failure { code: NUMERIC, message: m.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// JSON errors carry the position.
pub fn json_error(path: &std::path::Path, e: &serde_json::Error) -> Failure {
    Failure::input(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
}

pub fn spectra(e: sigmorse_spectra::SpectraError) -> Failure {
    Failure::input(e)
}

pub fn seifert(e: sigmorse_seifert::SeifertError) -> Failure {
    use sigmorse_seifert::SeifertError::*;
    match e {
        IllConditioned { .. } | NoRightLimit(_) => Failure::numeric(e),
        _ => Failure::input(e),
    }
}

pub fn morse(e: sigmorse_morse::MorseError) -> Failure {
    Failure::input(e)
}

pub fn tracer(e: sigmorse_tracer::TraceError) -> Failure {
    use sigmorse_tracer::TraceError::*;
    match e {
        BadSpec(_) | NonIsolated(_) | NearCritical { .. } => Failure::input(e),
        _ => Failure::numeric(e),
    }
}
