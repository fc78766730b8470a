//! Graph files, instance generators and the batch suite driver.

pub mod generate;
pub mod io;
pub mod suite;

pub use generate::{hex_patch, lemma_compliant, random_inclass, random_planar, GenError};
pub use io::{graph_to_json, graph_to_text, parse_graph, GraphData, ParseError};
pub use suite::{run_suite, SuiteReport};
