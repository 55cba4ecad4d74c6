use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use ramcoh_valuation::{is_prime, Error, Result};

use crate::{smith_form, FgComplex, IntMatrix};

/// Degree offset used by [`decalage`]: terms are scaled by `p^{a(i + s)}`
/// with `s = max(0, -lo)` so that exponents stay nonnegative.
pub fn decalage_shift(c: &FgComplex) -> i64 {
    (-c.lo()).max(0)
}

/// `(eta C)^i = { x in p^{a(i+s)} C^i : dx in p^{a(i+s+1)} C^{i+1} }` with the
/// restricted differential, written in an explicit lattice basis. Its
/// cohomology is `H^i(C) / H^i(C)[p^a]`.
///
/// This is the naive eta on an honest complex of free modules, which is the
/// only case we feed it.
pub fn decalage(c: &FgComplex, p: u64, a: u32) -> Result<FgComplex> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if a == 0 {
        return Err(Error::InvalidArgument("decalage exponent must be positive".into()));
    }
    let pa = num_traits::pow(BigInt::from(p), a as usize);
    // lattice {y : d y = 0 mod p^a} = Q diag(c)
    let bases: Vec<(IntMatrix, IntMatrix, Vec<BigInt>)> = c
        .degrees()
        .map(|i| {
            let sf = smith_form(&c.d(i));
            let n = c.dim(i);
            let scale = (0..n)
                .map(|k| if k < sf.rank { &pa / sf.diagonal[k].gcd(&pa) } else { BigInt::one() })
                .collect();
            (sf.q, sf.q_inv, scale)
        })
        .collect();
    let mut diffs = Vec::new();
    for (k, i) in (c.lo()..c.hi()).enumerate() {
        let (q, _, cs) = &bases[k];
        let (_, q1_inv, cs1) = &bases[k + 1];
        let mut n = &(q1_inv * &c.d(i)) * q;
        for col in 0..n.cols() {
            for row in 0..n.rows() {
                let v = n.get(row, col) * &cs[col];
                let den = &cs1[row] * &pa;
                let (qq, r) = v.div_rem(&den);
                if !r.is_zero() {
                    return Err(Error::InvalidInput("lattice basis not preserved by the differential".into()));
                }
                n.set(row, col, qq);
            }
        }
        diffs.push(n);
    }
    FgComplex::new(c.lo(), c.dims().to_vec(), diffs)
}
