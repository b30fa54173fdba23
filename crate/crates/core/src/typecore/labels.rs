//! ASCII generator names and their conventional symbols.

const ALIASES: &[(&str, &str)] = &[
    ("lt", "≺"),
    ("gt", "≻"),
    ("cir", "∘"),
    ("bul", "•"),
    ("lv", "⊣"),
    ("rv", "⊢"),
    ("st", "★"),
    ("perp", "⊥"),
    ("dot", "·"),
    ("nw", "↖"),
    ("ne", "↗"),
    ("sw", "↙"),
    ("se", "↘"),
    ("up", "↑"),
    ("dn", "↓"),
    ("wedge", "∧"),
    ("vee", "∨"),
];

/// Symbol for an ASCII name, if it has one.
pub fn symbol_for(name: &str) -> Option<&'static str> {
    ALIASES.iter().find(|(a, _)| *a == name).map(|(_, s)| *s)
}

/// ASCII name for a single-character symbol, if it has one.
pub fn name_for(symbol: char) -> Option<&'static str> {
    ALIASES
        .iter()
        .find(|(_, s)| s.chars().eq(std::iter::once(symbol)))
        .map(|(a, _)| *a)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Renders a label with symbols substituted, e.g. `(lt|gt^)` → `(≺|≻^)`.
pub fn display_label(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        if !word.is_empty() {
            out.push_str(symbol_for(word).unwrap_or(word));
            word.clear();
        }
    };
    for c in label.chars() {
        if is_name_char(c) {
            word.push(c);
        } else {
            flush(&mut word, &mut out);
            out.push(c);
        }
    }
    flush(&mut word, &mut out);
    out
}

/// Label of a product generator. Tuple labels are flattened so that
/// iterated products read `(a|b|c)`.
pub fn tuple_label(a: &str, b: &str) -> String {
    format!("({}|{})", strip_tuple(a), strip_tuple(b))
}

/// Components of a tuple label; a plain label is a 1-tuple.
pub fn tuple_components(label: &str) -> Vec<&str> {
    match label.strip_prefix('(').and_then(|l| l.strip_suffix(')')) {
        Some(inner) => inner.split('|').collect(),
        None => vec![label],
    }
}

fn strip_tuple(label: &str) -> &str {
    label
        .strip_prefix('(')
        .and_then(|l| l.strip_suffix(')'))
        .unwrap_or(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols() {
        assert_eq!(display_label("(lt|gt^)"), "(≺|≻^)");
        assert_eq!(display_label("foo"), "foo");
        assert_eq!(name_for('⊣'), Some("lv"));
        assert_eq!(name_for('x'), None);
    }

    #[test]
    fn tuples_flatten() {
        let ab = tuple_label("lt", "gt");
        assert_eq!(ab, "(lt|gt)");
        assert_eq!(tuple_label(&ab, "cir"), "(lt|gt|cir)");
        assert_eq!(tuple_components("(lt|gt|cir)"), vec!["lt", "gt", "cir"]);
        assert_eq!(tuple_components("lt"), vec!["lt"]);
    }
}
