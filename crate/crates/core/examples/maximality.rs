use std::time::Instant;

use pisys::catalog;
use pisys::maximality::{self, Budgets, Status};

fn main() {
    let t = Instant::now();
    let cat = catalog::standard_catalog();
    println!("catalog: {} diagrams in {:.1?}", cat.len(), t.elapsed());
    let rep = maximality::order_report(&cat, &Budgets::default());
    print!("{}", rep.table());
    for e in &rep.entries {
        match &e.status {
            Status::MaximalProved { .. } => println!("maximal {} rank {} det {}", e.label, e.rank, e.det),
            Status::Undecided { missing } => println!("undecided {} rank {} det {} vs {:?}", e.label, e.rank, e.det, missing),
            _ => {}
        }
    }
    println!("elapsed {:.1?}", t.elapsed());
}
