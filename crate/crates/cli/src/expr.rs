//! Product expressions: whitespace-separated tokens `S<v>`, `E<v>`, `K<v>`,
//! `K<v>^-1` and `M@<path>`, multiplied left to right.

use std::path::PathBuf;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Simple(String),
    GenSimple(String),
    Torus(String),
    TorusInv(String),
    Module(PathBuf),
}

fn vertex(tok: &str, rest: &str) -> Result<String, CliError> {
    if rest.is_empty() || rest.chars().any(char::is_whitespace) {
        return Err(CliError::Input(format!("bad token `{tok}`: missing vertex")));
    }
    Ok(rest.to_string())
}

pub fn parse_token(tok: &str) -> Result<Token, CliError> {
    if let Some(path) = tok.strip_prefix("M@") {
        if path.is_empty() {
            return Err(CliError::Input("bad token `M@`: missing path".into()));
        }
        return Ok(Token::Module(PathBuf::from(path)));
    }
    if let Some(rest) = tok.strip_prefix('K') {
        if let Some(v) = rest.strip_suffix("^-1") {
            return Ok(Token::TorusInv(vertex(tok, v)?));
        }
        return Ok(Token::Torus(vertex(tok, rest)?));
    }
    if let Some(rest) = tok.strip_prefix('S') {
        return Ok(Token::Simple(vertex(tok, rest)?));
    }
    if let Some(rest) = tok.strip_prefix('E') {
        return Ok(Token::GenSimple(vertex(tok, rest)?));
    }
    Err(CliError::Input(format!("unknown token `{tok}`")))
}

/// Splits every argument on whitespace, so `"S1 S2"` and `S1 S2` agree.
pub fn parse_expression<S: AsRef<str>>(args: &[S]) -> Result<Vec<Token>, CliError> {
    let toks: Vec<Token> = args
        .iter()
        .flat_map(|a| a.as_ref().split_whitespace().map(str::to_string).collect::<Vec<_>>())
        .map(|t| parse_token(&t))
        .collect::<Result<_, _>>()?;
    if toks.is_empty() {
        return Err(CliError::Input("empty expression".into()));
    }
    Ok(toks)
}
