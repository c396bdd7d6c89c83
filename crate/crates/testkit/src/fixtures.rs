//! Shipped fixture documents.

pub const RESOURCE_TTL: &str = include_str!("../../core/fixtures/resource_shape.ttl");
pub const RESOURCE_STANDARD_TTL: &str = include_str!("../../core/fixtures/resource_shape_standard.ttl");
pub const BIBLIOGRAPHIC_ENTITY: &str = include_str!("../../core/fixtures/bibliographic_entity.ttl");
pub const OCDM: &str = include_str!("../../core/fixtures/ocdm.ttl");
pub const CONFORMING: &str = include_str!("../../core/fixtures/conforming.ttl");
pub const TWO_TITLES: &str = include_str!("../../core/fixtures/two_titles.ttl");

pub const ALL: [(&str, &str); 6] = [
    ("resource_shape.ttl", RESOURCE_TTL),
    ("resource_shape_standard.ttl", RESOURCE_STANDARD_TTL),
    ("bibliographic_entity.ttl", BIBLIOGRAPHIC_ENTITY),
    ("ocdm.ttl", OCDM),
    ("conforming.ttl", CONFORMING),
    ("two_titles.ttl", TWO_TITLES),
];

pub const RESOURCE_SHAPE: &str = "http://schema.org/BibliographicResourceShape";
pub const ENTITY_SHAPE: &str = "http://schema.org/BibliographicEntityShape";
pub const AGENT_SHAPE: &str = "http://schema.org/ResponsibleAgentShape";
pub const JOURNAL_SHAPE: &str = "http://schema.org/JournalShape";

pub const FABIO: &str = "http://purl.org/spar/fabio/";
pub const TITLE: &str = "http://purl.org/dc/terms/title";
pub const IDENTIFIER: &str = "http://purl.org/dc/terms/identifier";
pub const HAS_IDENTIFIER: &str = "http://purl.org/spar/datacite/hasIdentifier";
pub const HAS_ORCID: &str = "http://purl.org/spar/scoro/hasORCID";
pub const ISSN: &str = "http://prismstandard.org/namespaces/basic/2.0/issn";
pub const JOURNAL_ARTICLE: &str = "http://purl.org/spar/fabio/JournalArticle";
pub const BOOK: &str = "http://purl.org/spar/fabio/Book";

/// The sh:in list of the resource shape's rdf:type property, in printed order.
pub const RESOURCE_TYPES: [&str; 6] = [
    "ArchivalDocument",
    "Book",
    "BookChapter",
    "JournalArticle",
    "Thesis",
    "ProceedingsPaper",
];
