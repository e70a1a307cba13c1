//! Number rendering for report output.

use std::fmt::Display;

/// Human output groups digits in blocks of five from the right; machine output is plain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Machine,
}

pub fn group_digits(digits: &str) -> String {
    let (sign, body) = match digits.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", digits),
    };
    let lead = body.len() % 5;
    let mut out = String::from(sign);
    out.push_str(&body[..lead]);
    for (i, chunk) in body.as_bytes()[lead..].chunks(5).enumerate() {
        if lead > 0 || i > 0 {
            out.push(' ');
        }
        out.push_str(std::str::from_utf8(chunk).expect("ASCII digits"));
    }
    out
}

pub fn number(value: &impl Display, format: OutputFormat) -> String {
    let s = value.to_string();
    match format {
        OutputFormat::Human => group_digits(&s),
        OutputFormat::Machine => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouping() {
        assert_eq!(group_digits("1064"), "1064");
        assert_eq!(group_digits("12345"), "12345");
        assert_eq!(group_digits("123456"), "1 23456");
        assert_eq!(group_digits("535281401856"), "53 52814 01856");
        assert_eq!(group_digits("-1234567"), "-12 34567");
        assert_eq!(group_digits("0"), "0");
        assert_eq!(number(&16942080u64, OutputFormat::Machine), "16942080");
        assert_eq!(number(&16942080u64, OutputFormat::Human), "169 42080");
    }
}
