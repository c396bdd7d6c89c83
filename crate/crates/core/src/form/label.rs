use std::collections::BTreeMap;

/// Human label for an IRI: the override if one exists, otherwise the local
/// name split at camelCase boundaries, `_` and `-`, each word capitalized.
pub fn derive_label(iri: &str, overrides: &BTreeMap<String, String>) -> String {
    if let Some(label) = overrides.get(iri) {
        return label.clone();
    }
    let local = iri.rsplit(['/', '#']).next().unwrap_or(iri);
    if local.is_empty() {
        return iri.to_string();
    }
    split_words(local)
        .iter()
        .map(|w| capitalize(w))
        .collect::<Vec<_>>()
        .join(" ")
}

fn split_words(local: &str) -> Vec<String> {
    let chars: Vec<char> = local.chars().collect();
    let mut words = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c == '_' || c == '-' || c.is_whitespace() {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            continue;
        }
        if c.is_uppercase() && !current.is_empty() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            // "journalArticle" splits before 'A'; "hasORCIDId" splits
            // before "ORCID" and before "Id".
            if prev.is_lowercase() || prev.is_ascii_digit() || (prev.is_uppercase() && next_lower) {
                words.push(std::mem::take(&mut current));
            }
        }
        current.push(c);
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(iri: &str) -> String {
        derive_label(iri, &BTreeMap::new())
    }

    #[test]
    fn examples() {
        assert_eq!(label("http://purl.org/spar/fabio/ArchivalDocument"), "Archival Document");
        assert_eq!(label("http://purl.org/spar/fabio/JournalArticle"), "Journal Article");
        assert_eq!(label("http://purl.org/spar/fabio/Book"), "Book");
        assert_eq!(label("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), "Type");
        assert_eq!(label("http://purl.org/dc/terms/title"), "Title");
        assert_eq!(label("http://purl.org/spar/scoro/hasORCID"), "Has ORCID");
        assert_eq!(label("http://e/hasORCIDId"), "Has ORCID Id");
        assert_eq!(label("http://e/publication_date"), "Publication Date");
        assert_eq!(label("http://e/"), "http://e/");
    }

    #[test]
    fn override_wins() {
        let overrides = BTreeMap::from([("http://purl.org/dc/terms/title".to_string(), "Title".to_string())]);
        assert_eq!(derive_label("http://purl.org/dc/terms/title", &overrides), "Title");
        let overrides = BTreeMap::from([("http://e/x".to_string(), "Something else".to_string())]);
        assert_eq!(derive_label("http://e/x", &overrides), "Something else");
    }
}
