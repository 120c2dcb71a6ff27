//! Exact short-vector enumeration on a rational Gram matrix read from a file
//! (rows of whitespace-separated rationals), or on E8 by default.

use amlat::enumerate::{minimum_and_kissing, short_vectors};
use amlat::exact::{Rat, RatMat};

fn e8() -> RatMat {
    let rows = [
        [4, -2, 0, 0, 0, 0, 0, 1],
        [-2, 2, -1, 0, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, 0],
        [1, 0, 0, 0, 0, 0, 0, 2],
    ];
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    RatMat::from_rows(rows).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gram = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let rows = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| {
                    l.split_whitespace()
                        .map(|t| t.parse())
                        .collect::<Result<Vec<Rat>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            RatMat::from_rows(rows)?
        }
        None => e8(),
    };
    let (min, kissing) = minimum_and_kissing(&gram)?;
    println!("min = {min}, kissing = {kissing}");

    let bound = &min * Rat::from_integer(2.into());
    let mut shells = std::collections::BTreeMap::new();
    for (_, norm) in short_vectors(&gram, &bound)? {
        *shells.entry(norm).or_insert(0u64) += 1;
    }
    for (norm, count) in shells {
        println!("  norm {norm}: {count} vectors");
    }
    Ok(())
}
