/// Whether `(line, column)` (both 1-based, column counted in characters)
/// names an existing character of `src`. A line's terminating newline counts
/// as its last character.
pub fn position_exists(src: &str, line: usize, column: usize) -> bool {
    if line == 0 || column == 0 {
        return false;
    }
    let lines: Vec<&str> = src.split('\n').collect();
    match lines.get(line - 1) {
        Some(text) => {
            let newline = usize::from(line < lines.len());
            column <= text.chars().count() + newline
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        assert!(position_exists("ab\ncd", 2, 2));
        assert!(!position_exists("ab\ncd", 2, 3));
        assert!(!position_exists("ab\ncd", 3, 1));
        assert!(position_exists("é!", 1, 2));
        assert!(position_exists("ab\n", 1, 3));
        assert!(!position_exists("ab\n", 2, 1));
    }
}
