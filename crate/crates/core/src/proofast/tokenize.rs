/// A token of a proof file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofToken<'a> {
    pub line: usize,
    pub column: usize,
    pub text: &'a str,
}

/// True for lines that carry no proof content.
pub(crate) fn is_comment_or_blank(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('*')
}

/// Splits a proof into whitespace-separated tokens, keeping line numbers.
/// Comment lines (starting with `*`) are dropped. Never fails.
pub fn tokenize(text: &str) -> Vec<ProofToken<'_>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !is_comment_or_blank(l))
        .flat_map(|(i, l)| {
            crate::opb::split_tokens(l)
                .into_iter()
                .map(move |t| ProofToken {
                    line: i + 1,
                    column: t.column,
                    text: t.text,
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(text: &str) -> Vec<&str> {
        tokenize(text).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(texts("pol 1 2 +"), vec!["pol", "1", "2", "+"]);
        assert!(texts("* comment").is_empty());
        assert_eq!(
            texts("rup +1 x1 >= 1 ; 3"),
            vec!["rup", "+1", "x1", ">=", "1", ";", "3"]
        );
    }

    #[test]
    fn line_numbers_survive_comments() {
        let toks = tokenize("* c\n\npol 1 *\n");
        assert_eq!(toks.len(), 3);
        assert!(toks.iter().all(|t| t.line == 3));
        assert_eq!(toks[2].column, 7);
    }
}
