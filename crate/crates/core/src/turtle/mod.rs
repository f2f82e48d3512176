//! Turtle subset: prefixes, prefixed names, `a`, predicate and object lists,
//! short strings, numeric and boolean shorthand, labeled and anonymous blank
//! nodes. Collections, long strings and exponent numerals are rejected with
//! an error naming the construct.

mod parser;
mod serializer;

pub use parser::{parse_turtle, ParseOutcome};
pub use serializer::serialize_turtle;
