use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::Result;

use super::cyclotomic::Cyclotomic;
use super::table::{CharacterTable, ClassFunction, ConjugacyClass};

/// The cyclic group of order n: class k is g^k, χ_j(g^k) = ζ_n^{jk}.
pub fn cyclic(n: u32) -> Result<CharacterTable> {
    let classes = (0..n)
        .map(|k| ConjugacyClass {
            label: format!("g^{k}"),
            size: 1,
            element_order: (n / n.gcd(&k)) as u64,
            square_class: ((2 * k) % n) as usize,
        })
        .collect();
    let irreducibles = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| Cyclotomic::root_of_unity(n, (j as i64) * (k as i64)))
                .collect::<Result<Vec<_>>>()
                .map(ClassFunction)
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterTable::new(format!("C{n}"), n as u64, classes, irreducibles)
}

pub fn trivial() -> CharacterTable {
    cyclic(1).expect("trivial group table is valid")
}

fn real_root_sum(n: u32, k: i64) -> Cyclotomic {
    let one = BigInt::from(1);
    Cyclotomic::from_exponents(n, [(k, one.clone()), (-k, one)]).expect("positive conductor")
}

/// PSL₂(8), order 504, nine classes.
///
/// Square classes come from doubling root-of-unity arguments: the order-7
/// classes cycle 4 → 5 → 6 → 4 and the order-9 classes 7 → 8 → 9 → 7.
pub fn psl2_8() -> CharacterTable {
    let sizes = [1u64, 63, 56, 72, 72, 72, 56, 56, 56];
    let orders = [1u64, 2, 3, 7, 7, 7, 9, 9, 9];
    let squares = [0usize, 0, 2, 4, 5, 3, 7, 8, 6];
    let labels = ["1a", "2a", "3a", "7a", "7b", "7c", "9a", "9b", "9c"];
    let classes = (0..9)
        .map(|i| ConjugacyClass {
            label: labels[i].to_string(),
            size: sizes[i],
            element_order: orders[i],
            square_class: squares[i],
        })
        .collect();

    let int = |v: i64| Cyclotomic::integer(v);
    // Degree-7 characters on the order-9 torus take −(ρ^j + ρ^{−j}).
    let n9 = |k| -&real_root_sum(9, k);
    let s7 = |k| real_root_sum(7, k);
    let rows: Vec<Vec<Cyclotomic>> = vec![
        [1, 1, 1, 1, 1, 1, 1, 1, 1].map(int).to_vec(),
        [7, -1, -2, 0, 0, 0, 1, 1, 1].map(int).to_vec(),
        vec![int(7), int(-1), int(1), int(0), int(0), int(0), n9(1), n9(2), n9(4)],
        vec![int(7), int(-1), int(1), int(0), int(0), int(0), n9(4), n9(1), n9(2)],
        vec![int(7), int(-1), int(1), int(0), int(0), int(0), n9(2), n9(4), n9(1)],
        [8, 0, -1, 1, 1, 1, -1, -1, -1].map(int).to_vec(),
        vec![int(9), int(1), int(0), s7(1), s7(2), s7(3), int(0), int(0), int(0)],
        vec![int(9), int(1), int(0), s7(3), s7(1), s7(2), int(0), int(0), int(0)],
        vec![int(9), int(1), int(0), s7(2), s7(3), s7(1), int(0), int(0), int(0)],
    ];
    CharacterTable::new("PSL2(8)", 504, classes, rows.into_iter().map(ClassFunction).collect())
        .expect("built-in PSL2(8) table is valid")
}
