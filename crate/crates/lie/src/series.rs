use std::collections::BTreeMap;

/// Coefficients of `Π (1 + q^d)`; zero coefficients are omitted.
pub fn exterior_poincare(gen_degrees: &[i64]) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::from([(0i64, 1u64)]);
    for &d in gen_degrees {
        let mut next = out.clone();
        for (&k, &v) in &out {
            *next.entry(k + d).or_insert(0) += v;
        }
        out = next;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Graded dimensions of the exterior algebra on generators of degree
/// `1 - 2i`, `i = 1..=n`.
pub fn theorem_a_series(n: usize) -> BTreeMap<i64, u64> {
    let degs: Vec<i64> = (1..=n as i64).map(|i| 1 - 2 * i).collect();
    exterior_poincare(&degs)
}

/// `s -> -s` on degrees.
pub fn reflect(series: &BTreeMap<i64, u64>) -> BTreeMap<i64, u64> {
    series.iter().map(|(&k, &v)| (-k, v)).collect()
}

/// Dense list of coefficients for degrees `0..=top`.
pub fn dense(series: &BTreeMap<i64, u64>, top: usize) -> Vec<u64> {
    (0..=top as i64).map(|k| series.get(&k).copied().unwrap_or(0)).collect()
}
