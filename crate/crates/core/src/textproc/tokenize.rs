use super::Token;

const DELIMITERS: &str = "{}[](),.;:!?\"'-/\\|<>@#$%^&*_=+~`";

/// Whitespace, control characters and the punctuation delimiter set.
pub fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || c.is_control() || DELIMITERS.contains(c)
}

pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(is_delimiter)
        .filter(|piece| !piece.is_empty())
        .enumerate()
        .map(|(position, piece)| Token::new(piece, position))
        .collect()
}
