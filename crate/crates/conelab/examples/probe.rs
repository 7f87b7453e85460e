use conelab::horn::{horn_description, HornOptions};
use conelab::lp::{is_redundant, minimize_description};
use conelab::offdiag::{a_description, AMethod, OffdiagOptions};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let d = a_description(3, 3, AMethod::Fflp, OffdiagOptions { c1_only: false, chamber: true }).unwrap();
    println!("A(3,3) fflp+chamber rows = {}", d.inequalities.len());
    let (min, report) = minimize_description(&d).unwrap();
    println!("kept = {} dropped = {}  [{:?}]", min.inequalities.len(), report.dropped.len(), t0.elapsed());

    let t0 = Instant::now();
    let d = a_description(2, 2, AMethod::Embed, OffdiagOptions { c1_only: false, chamber: true }).unwrap();
    println!("A(2,2) embed+chamber rows = {}", d.inequalities.len());
    let (min, _) = minimize_description(&d).unwrap();
    println!("kept = {}  [{:?}]", min.inequalities.len(), t0.elapsed());

    let t0 = Instant::now();
    let horn6 = horn_description(6, HornOptions { c1_only: true, chamber: true }).unwrap();
    println!("Horn(6) c1+chamber rows = {}  [{:?}]", horn6.inequalities.len(), t0.elapsed());
    let t0 = Instant::now();
    let v = is_redundant(&horn6, 0).unwrap();
    println!("row 0 redundant: {}  [{:?}]", v.redundant, t0.elapsed());
    let t0 = Instant::now();
    let v = is_redundant(&horn6, 300).unwrap();
    println!("row 300 redundant: {}  [{:?}]", v.redundant, t0.elapsed());
}
