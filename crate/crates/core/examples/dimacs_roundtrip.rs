//! Reading and writing DIMACS and understanding documents.

use usat::counterexamples::{initial_table_d, instance_d, INSTANCE_D_NAMES};
use usat::io::{
    emit_dimacs_with_comments, emit_understanding, name_comments, parse_dimacs,
    parse_understanding, Dialect, DimacsDocument,
};

fn main() {
    let text = emit_dimacs_with_comments(&instance_d(), &name_comments(&INSTANCE_D_NAMES));
    print!("{text}");
    assert_eq!(parse_dimacs(&text).unwrap(), instance_d());

    let doc = DimacsDocument::parse(&text, Dialect::Strict).unwrap();
    println!("¬x resolves to {:?}", doc.resolve_literal("-x"));

    let u = emit_understanding(&initial_table_d());
    assert_eq!(parse_understanding(&u, 7).unwrap(), initial_table_d());
    print!("{u}");

    for bad in ["p cnf 2 1\n1 1 2 0\n", "p cnf 3 1\n1 2 0\n", "p cnf 3 1\n1 2 3 0 4\n"] {
        println!("{}", parse_dimacs(bad).unwrap_err());
    }
}
