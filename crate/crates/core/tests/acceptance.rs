//! The acceptance suite: fourteen criteria, one PASS/FAIL line each.
//! Runs without the libtest harness so the report reads top to bottom;
//! the process exits nonzero if any criterion fails.

mod oracle;

use std::collections::HashMap;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use amlat::arith::is_prime;
use amlat::classify::{beta_for, construct, exists_arakelov_modular, plan, Case};
use amlat::enumerate::minimum_and_kissing;
use amlat::exact::{Rat, RatMat};
use amlat::ideal::{prime_ideal_above, TwoSidedIdeal};
use amlat::ideal_lattice::{IdealLattice, ModularityCertificate};
use amlat::order::{CatalogOrder, Order};
use amlat::quaternion::{QElem, QuaternionAlgebra};
use amlat::symbols::{hilbert_symbol, hilbert_table, Place};
use oracle::{r, Q4};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rows_q4(l: &IdealLattice) -> Vec<Q4> {
    l.ideal()
        .lattice()
        .elements()
        .into_iter()
        .map(|e| e.0)
        .collect()
}

/// Checks a constructed lattice against independent recomputation: the Gram
/// matrix from the oracle product, its determinant by cofactor expansion,
/// parity from the entries, and the minimum from a certified brute-force box.
fn check_lattice(
    ell: u64,
    l: &IdealLattice,
    cert: &ModularityCertificate,
    algebra: (i64, i64),
    det: i64,
    min: i64,
) -> Outcome {
    let (a, b) = (l.algebra().a(), l.algebra().b());
    ensure!(
        (a, b) == algebra,
        "ℓ={ell}: algebra ({a},{b}), expected {algebra:?}"
    );
    ensure!(
        cert.is_valid(),
        "ℓ={ell}: certificate fails {:?}",
        cert.checks.failures()
    );
    let g = oracle::gram(a, b, &rows_q4(l), l.alpha());
    ensure!(g.len() == 4, "ℓ={ell}: dimension {}", g.len());
    ensure!(
        g == oracle::rows_of(l.gram()),
        "ℓ={ell}: Gram differs from the oracle"
    );
    let d = oracle::det(&g);
    ensure!(d == r(det), "ℓ={ell}: det {d}, expected {det}");
    ensure!(
        l.discriminant().map_err(|e| e.to_string())? == d,
        "ℓ={ell}: library det differs"
    );
    let even = g.iter().flatten().all(oracle::is_int)
        && (0..4).all(|i| oracle::is_int(&(&g[i][i] / r(2))));
    ensure!(even && l.is_even(), "ℓ={ell}: not even");
    let (m, k) = l.minimum_and_kissing().map_err(|e| e.to_string())?;
    ensure!(m == r(min), "ℓ={ell}: minimum {m}, expected {min}");
    let radius = oracle::certified_box(&g).max(1);
    if radius <= 6 {
        let (bm, bk) = oracle::brute_min(&g, radius);
        ensure!(
            (bm.clone(), bk) == (m.clone(), k),
            "ℓ={ell}: brute force ({bm},{bk}) vs ({m},{k})"
        );
    }
    Ok(())
}

fn level(ell: u64, algebra: (i64, i64), det: i64, min: i64) -> Outcome {
    let (l, c) = construct(ell).map_err(|e| e.to_string())?;
    check_lattice(ell, &l, &c, algebra, det, min)
}

fn c1() -> Outcome {
    level(2, (-1, -1), 4, 2)
}

fn c2() -> Outcome {
    level(3, (-1, -3), 9, 2)
}

fn c3() -> Outcome {
    level(5, (-2, -5), 25, 2)
}

fn c4() -> Outcome {
    let p = plan(17).map_err(|e| e.to_string())?;
    ensure!(p.q == Some(3), "q = {:?}", p.q);
    level(17, (-3, -17), 289, 2)
}

/// `(P, q_α)` for the prime `P` above `p`, checked to equal the constructed lattice.
fn prime_level(
    ell: u64,
    p: u64,
    preset: CatalogOrder,
    algebra: (i64, i64),
    det: i64,
    min: i64,
) -> Outcome {
    let (l, c) = construct(ell).map_err(|e| e.to_string())?;
    let alg = QuaternionAlgebra::new(algebra.0, algebra.1).unwrap();
    let order = preset.order(&alg).map_err(|e| e.to_string())?;
    ensure!(
        l.ideal().order() == &order,
        "ℓ={ell}: order is not the {preset} preset"
    );
    let prime = prime_ideal_above(&order, p).map_err(|e| e.to_string())?;
    ensure!(
        l.ideal().lattice() == prime.lattice(),
        "ℓ={ell}: lattice is not P"
    );
    ensure!(l.alpha() == &r(1), "ℓ={ell}: α = {}", l.alpha());
    check_lattice(ell, &l, &c, algebra, det, min)
}

fn c5() -> Outcome {
    prime_level(8, 2, CatalogOrder::Hurwitz, (-1, -1), 64, 4)
}

fn c6() -> Outcome {
    prime_level(27, 3, CatalogOrder::Case2, (-1, -3), 729, 6)
}

fn c7() -> Outcome {
    let (l, c) = construct(12).map_err(|e| e.to_string())?;
    ensure!(l.alpha() == &r(2), "α = {}", l.alpha());
    ensure!(
        l.ideal().lattice() == l.ideal().order().lattice(),
        "ideal is not the order"
    );
    check_lattice(12, &l, &c, (-1, -3), 144, 4)
}

/// The minimum is exactly 2 without enumeration: the lattice is even and
/// contains 1, whose norm is `trd(1) = 2`.
fn c8() -> Outcome {
    let mut count = 0;
    for ell in (2..200u64).filter(|&p| is_prime(p)) {
        let (l, c) = construct(ell).map_err(|e| format!("ℓ={ell}: {e}"))?;
        ensure!(
            c.is_valid(),
            "ℓ={ell}: certificate fails {:?}",
            c.checks.failures()
        );
        let (a, b) = (l.algebra().a(), l.algebra().b());
        ensure!(
            l.algebra().ramified_primes() == [ell],
            "ℓ={ell}: ramification"
        );
        let g = oracle::gram(a, b, &rows_q4(&l), l.alpha());
        let d = oracle::det(&g);
        ensure!(d == r((ell * ell) as i64), "ℓ={ell}: det {d}");
        ensure!(l.is_even(), "ℓ={ell}: not even");
        ensure!(
            l.ideal().lattice().contains(&QElem::one()),
            "ℓ={ell}: 1 not in lattice"
        );
        let (m, _) = l.minimum_and_kissing().map_err(|e| e.to_string())?;
        ensure!(m == r(2), "ℓ={ell}: minimum {m}");
        if ell % 8 == 1 {
            let q = plan(ell).unwrap().q.unwrap();
            ensure!(
                q % 4 == 3 && amlat::symbols::legendre(ell as i64, q) == Ok(-1),
                "ℓ={ell}: q={q}"
            );
        }
        count += 1;
    }
    ensure!(count == 46, "expected 46 primes below 200, got {count}");
    Ok(())
}

fn catalog() -> Vec<(CatalogOrder, Order)> {
    CatalogOrder::ALL
        .iter()
        .map(|&c| (c, c.order(&c.default_algebra()).unwrap()))
        .collect()
}

fn c9() -> Outcome {
    for (c, order) in catalog() {
        for ell in [4u64, 9, 16, 25, 36, 49] {
            let e = exists_arakelov_modular(&order, ell).map_err(|e| e.to_string())?;
            ensure!(!e.exists, "{c}, ℓ={ell}: reported to exist");
            ensure!(
                e.reason == "square level",
                "{c}, ℓ={ell}: reason {:?}",
                e.reason
            );
        }
    }
    Ok(())
}

fn c10() -> Outcome {
    let grid: Vec<i64> = (-50..=50).filter(|&x| x != 0).collect();
    let mut memo: HashMap<(i64, i64, u64), i8> = HashMap::new();
    for &a in &grid {
        for &b in &grid {
            let table = hilbert_table(a, b).map_err(|e| format!("({a},{b}): {e}"))?;
            let product: i8 = table.iter().map(|(_, s)| s).product();
            ensure!(product == 1, "({a},{b}): product {product}");
            for &(place, s) in &table {
                let expected = match place {
                    Place::Infinite => oracle::hilbert_at_infinity(a, b),
                    Place::Prime(p) => {
                        let key = (oracle::squarefree_part(a), oracle::squarefree_part(b), p);
                        *memo
                            .entry(key)
                            .or_insert_with(|| oracle::hilbert_by_search(a, b, p))
                    }
                };
                ensure!(
                    s == expected,
                    "({a},{b})_{place} = {s}, search says {expected}"
                );
                ensure!(
                    hilbert_symbol(b, a, place) == Ok(s),
                    "({a},{b})_{place} not symmetric"
                );
            }
        }
    }
    let at = |a: i64, b: i64, v: Place| hilbert_symbol(a, b, v).unwrap();
    for &a in &grid {
        for &b in &grid {
            let places = [
                Place::Infinite,
                Place::Prime(2),
                Place::Prime(3),
                Place::Prime(5),
                Place::Prime(7),
            ];
            for v in places {
                ensure!(at(a, -a, v) == 1, "({a},{}){v} != 1", -a);
                if a != 1 {
                    ensure!(at(a, 1 - a, v) == 1, "({a},{}){v} != 1", 1 - a);
                }
                ensure!(at(a, b * b, v) == 1, "({a},{}^2){v} != 1", b);
            }
        }
    }
    // bimultiplicativity (a, bc) = (a, b)(a, c) at every place dividing 2abc
    let sparse: Vec<i64> = grid
        .iter()
        .copied()
        .filter(|x| x % 7 == 0 || x.abs() <= 6)
        .collect();
    for &a in &grid {
        for &b in &sparse {
            for &c in &grid {
                for (v, s) in hilbert_table(a, b * c).unwrap() {
                    ensure!(
                        s == at(a, b, v) * at(a, c, v),
                        "({a},{b}*{c})_{v} not multiplicative"
                    );
                }
            }
        }
    }
    Ok(())
}

/// The grid of ideals: `Λ`, `P`, `pΛ`, `βΛ` over each catalog order.
fn ideal_grid() -> Vec<(String, TwoSidedIdeal, Rat)> {
    let mut out = Vec::new();
    for (c, order) in catalog() {
        let p = order.algebra().ramified_primes()[0];
        let beta = beta_for(Case::of_prime(p), &order, p).unwrap();
        let prime = prime_ideal_above(&order, p).unwrap();
        let ideals = [
            ("Λ", TwoSidedIdeal::unit(&order).unwrap(), r(1)),
            ("P", prime.clone(), r(p as i64)),
            (
                "pΛ",
                TwoSidedIdeal::scalar(&order, &r(p as i64)).unwrap(),
                r((p * p) as i64),
            ),
            (
                "βΛ",
                TwoSidedIdeal::principal(&order, &beta).unwrap(),
                r(p as i64),
            ),
        ];
        for (name, ideal, norm) in ideals {
            out.push((format!("{c}/{name}"), ideal, norm));
        }
    }
    out
}

fn alphas() -> [Rat; 3] {
    [r(1), r(2), Rat::new(3.into(), 2.into())]
}

fn c11() -> Outcome {
    for (name, ideal, _) in ideal_grid() {
        for alpha in alphas() {
            let l = IdealLattice::new(ideal.clone(), alpha.clone()).unwrap();
            let by_gram = l.dual_by_gram().map_err(|e| e.to_string())?;
            let by_ideal = l.dual_by_ideal().map_err(|e| e.to_string())?;
            ensure!(by_gram == by_ideal, "{name}, α={alpha}: duals differ");
            // oracle: the dual basis pairs integrally with I and has inverse covolume
            let (a, b) = (l.algebra().a(), l.algebra().b());
            let primal = rows_q4(&l);
            let dual: Vec<Q4> = by_ideal.elements().into_iter().map(|e| e.0).collect();
            for x in &dual {
                for y in &primal {
                    let v = oracle::qmul(a, b, x, &oracle::qconj(y))[0].clone() * r(2) * &alpha;
                    ensure!(oracle::is_int(&v), "{name}, α={alpha}: pairing {v}");
                }
            }
            let dg = oracle::det(&oracle::gram(a, b, &dual, &alpha));
            let pg = oracle::det(&oracle::gram(a, b, &primal, &alpha));
            ensure!(dg * pg == r(1), "{name}, α={alpha}: det(dual) det(I) != 1");
        }
    }
    Ok(())
}

fn c12() -> Outcome {
    for (name, ideal, norm) in ideal_grid() {
        let disc = r(ideal.order().algebra().discriminant() as i64);
        for alpha in alphas() {
            let l = IdealLattice::new(ideal.clone(), alpha.clone()).unwrap();
            let (a, b) = (l.algebra().a(), l.algebra().b());
            let det = oracle::det(&oracle::gram(a, b, &rows_q4(&l), &alpha));
            let a2 = &alpha * &alpha;
            let n2 = &norm * &norm;
            let formula = &a2 * &a2 * &n2 * &n2 * &disc * &disc;
            ensure!(
                det == formula,
                "{name}, α={alpha}: det {det}, formula {formula}"
            );
            let lib = l.discriminant().map_err(|e| e.to_string())?;
            ensure!(lib == det, "{name}, α={alpha}: library {lib}");
            ensure!(
                ideal.nrd().unwrap() == norm,
                "{name}: n(I) = {}",
                ideal.nrd().unwrap()
            );
        }
    }
    Ok(())
}

fn random_grams(n: usize) -> Vec<Vec<Vec<Rat>>> {
    let mut rng = StdRng::seed_from_u64(0x5eed_1a77);
    let mut out = Vec::new();
    while out.len() < n {
        let a: Vec<Vec<i64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let g: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| (0..4).map(|k| a[k][i] * a[k][j]).sum())
                    .collect()
            })
            .collect();
        if g.iter().flatten().any(|v: &i64| v.abs() > 10) {
            continue;
        }
        let g: Vec<Vec<Rat>> = g
            .iter()
            .map(|row| row.iter().map(|&v| r(v)).collect())
            .collect();
        if oracle::positive_definite(&g) && oracle::certified_box(&g) <= 5 {
            out.push(g);
        }
    }
    out
}

fn c13() -> Outcome {
    let mut grams = random_grams(50);
    for ell in [2u64, 3, 5, 17, 8, 27, 12] {
        grams.push(oracle::rows_of(construct(ell).unwrap().0.gram()));
    }
    for (n, g) in grams.iter().enumerate() {
        let m = RatMat::from_rows(g.clone()).unwrap();
        let got = minimum_and_kissing(&m).map_err(|e| e.to_string())?;
        let radius = oracle::certified_box(g).max(5);
        let expected = oracle::brute_min(g, radius);
        ensure!(
            got == expected,
            "matrix {n}: {got:?} vs brute force {expected:?} (box {radius})"
        );
    }
    Ok(())
}

/// Validates a basis from scratch: integral trace and norm on the basis, closure
/// of all 16 products, and `disc^2 = det(trd(v_k v_l))`.
fn oracle_order(a: i64, b: i64, basis: &[Q4], ell: i64) -> Outcome {
    let m: Vec<Vec<Rat>> = basis.iter().map(|v| v.to_vec()).collect();
    for x in basis {
        ensure!(oracle::is_int(&(&x[0] * r(2))), "trace of {x:?}");
        ensure!(oracle::is_int(&oracle::qnrd(a, b, x)), "norm of {x:?}");
        for y in basis {
            let c = oracle::solve_row(&m, &oracle::qmul(a, b, x, y));
            ensure!(c.iter().all(oracle::is_int), "product leaves the lattice");
        }
    }
    let t: Vec<Vec<Rat>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| oracle::qmul(a, b, x, y)[0].clone() * r(2))
                .collect()
        })
        .collect();
    let d = oracle::det(&t);
    ensure!(
        d == r(-ell * ell) || d == r(ell * ell),
        "det trace form {d}"
    );
    Ok(())
}

fn c14() -> Outcome {
    let mut seen = (0, 0);
    for ell in (3..100u64).filter(|&p| is_prime(p)) {
        let (preset, a) = match ell % 8 {
            3 | 7 => (CatalogOrder::Case2, -1),
            5 => (CatalogOrder::Case3, -2),
            _ => continue,
        };
        let b = -(ell as i64);
        let alg = QuaternionAlgebra::new(a, b).unwrap();
        let order =
            Order::from_basis(&alg, &preset.basis()).map_err(|e| format!("ℓ={ell}: {e}"))?;
        ensure!(order.is_maximal(), "ℓ={ell}: not maximal");
        ensure!(
            *order.reduced_discriminant() == ell.into(),
            "ℓ={ell}: disc {}",
            order.reduced_discriminant()
        );
        let basis: Vec<Q4> = preset.basis().into_iter().map(|e| e.0).collect();
        oracle_order(a, b, &basis, ell as i64).map_err(|e| format!("ℓ={ell}: {e}"))?;
        if preset == CatalogOrder::Case2 {
            seen.0 += 1;
        } else {
            seen.1 += 1;
        }
    }
    ensure!(seen == (13, 6), "covered {seen:?} primes");
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("construct(2): det 4, even, min 2, certificate valid", c1),
        ("construct(3): det 9, even, min 2, certificate valid", c2),
        ("construct(5) over (-2,-5): det 25, even, min 2", c3),
        (
            "construct(17) over (-3,-17), q = 3: det 289, even, min 2",
            c4,
        ),
        (
            "construct(8) = (P, q_1) over (-1,-1): det 64, even, min 4",
            c5,
        ),
        (
            "construct(27) = (P, q_1) over (-1,-3): det 729, even, min 6",
            c6,
        ),
        (
            "construct(12) = (Λ, q_2) over (-1,-3): det 144, even, min 4",
            c7,
        ),
        (
            "every prime ℓ < 200: valid certificate, det ℓ², even, min 2",
            c8,
        ),
        ("square levels 4..49 impossible on every catalog order", c9),
        (
            "Hilbert symbols on [-50,50]²: product formula, oracle, properties",
            c10,
        ),
        ("dual via Gram inverse equals dual via ideal formula", c11),
        ("det(Gram) equals α⁴ n(I)⁴ d(A)²", c12),
        (
            "Fincke-Pohst agrees with brute force on 57 Gram matrices",
            c13,
        ),
        (
            "case-2 and case-3 bases are maximal orders for all ℓ < 100",
            c14,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name}  ({secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2}: FAIL  {name}  ({secs:.2}s)\n    {why}",
                    n + 1
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
