//! The small worked examples run by `selftest --quick`.

use std::collections::BTreeMap;

use ramcoh_building::{build_ball, simplicial_cohomology};
use ramcoh_cyclotomic::{trace_sigma_slack, CycElement};
use ramcoh_homology::{
    cone, decalage, snf, split_free_torsion, triangle_composite_vanishing, two_term_cohomology, ChainMap,
    FgComplex, FgModule, IntMatrix,
};
use ramcoh_ledger::{e, res_cores, spectral_window, triangle, LinExpr, TorsionCert, WindowCount};
use ramcoh_lie::{betti_numbers, ce_complex, exterior_poincare, lazard_check, lie_cohomology, LieAlgebraZ};
use ramcoh_ramification::{
    different_lower, different_upper, herbrand_phi, herbrand_psi, lower_to_upper, tame_compose, FiltrationProfile,
};
use ramcoh_towers::{cyclotomic_jumps, is_sufficiently_ramified, JumpSequence};
use ramcoh_valuation::{
    ball_restriction_image, factorial_valuation, one_plus_p_power_valuation, rat, unit_power_image, vp,
    BallRestriction, BigInt, ExtendedRational, Result, SeriesWindow,
};
use ramcoh_witt::{artin_schreier_solve, series_split_p_typical, AsRoot, FiniteField, PTypicalWitt, UnitSeries};

use crate::acceptance::Check;

type Case = (&'static str, fn() -> Result<bool>);

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn zeta9() -> Result<CycElement> {
    CycElement::zeta_power(3, 2, 12, 1)
}

fn z_times(k: i64) -> FgComplex {
    FgComplex::two_term(0, IntMatrix::from_rows(&[vec![k]]))
}

pub const CASES: &[Case] = &[
    ("vp(18, 3) = 2", || Ok(vp(&rat(18), 3)? == ExtendedRational::from(2))),
    ("vp(0, 5) = infinity", || Ok(vp(&rat(0), 5)? == ExtendedRational::Infinity)),
    ("factorial_valuation(1, 5)", || {
        let f = factorial_valuation(1, 5)?;
        Ok(f.v == rat(0) && f.bound == rat(0) && f.holds)
    }),
    ("one_plus_p_power_valuation(3, 1) = 1", || Ok(one_plus_p_power_valuation(3, 1)? == 1)),
    ("unit_power_image(2, 1, 5) rejected", || {
        Ok(unit_power_image(2, 1, 5).is_err_and(|e| e.kind() == "precondition-violation"))
    }),
    ("ball_restriction_image of the zero series", || {
        let w = SeriesWindow::zero(3, 1, 8, rat(0));
        Ok(ball_restriction_image(3, 0, 0, &rat(1), &w)? == BallRestriction { m: 1, verified: true })
    }),
    ("herbrand_phi of an unramified profile is the identity", || {
        Ok(herbrand_phi(&FiltrationProfile::new(vec![(-1, 5), (0, 1)])?).is_identity())
    }),
    ("herbrand_psi of the identity profile is the identity", || {
        Ok(herbrand_psi(&FiltrationProfile::new(vec![(-1, 1)])?).is_identity())
    }),
    ("tame e = 4 has a single upper jump at 0", || {
        let up = lower_to_upper(&FiltrationProfile::new(vec![(0, 4), (1, 1)])?);
        Ok(up.len() == 1 && up[0].v == rat(0) && up[0].order == 4)
    }),
    ("unramified has its only upper jump at -1", || {
        let up = lower_to_upper(&FiltrationProfile::new(vec![(-1, 3), (0, 1)])?);
        Ok(up.len() == 1 && up[0].v == rat(-1))
    }),
    ("tame cyclic of order e has different e - 1", || {
        Ok((2..=9u64).all(|e| {
            FiltrationProfile::new(vec![(0, e), (1, 1)]).is_ok_and(|g| different_lower(&g) == e - 1)
        }))
    }),
    ("unramified has upper different 0", || {
        Ok(different_upper(&FiltrationProfile::new(vec![(-1, 3), (0, 1)])?) == rat(0))
    }),
    ("tame cyclic of order 2 has upper different 1", || {
        Ok(different_upper(&FiltrationProfile::new(vec![(0, 2), (1, 1)])?) == rat(1))
    }),
    ("tame_compose with e = 1 is the identity", || {
        let js = vec![rat(-1), rat(1), rat(2)];
        Ok(tame_compose(&js, 1, 3)? == js)
    }),
    ("tame_compose with e = p is rejected", || Ok(tame_compose(&[rat(-1), rat(1), rat(2)], 3, 3).is_err())),
    ("cyclotomic_jumps(5, 5) is rejected", || Ok(cyclotomic_jumps(5, 5).is_err())),
    ("an unramified first level is not sufficiently ramified", || {
        let s = JumpSequence::from_jumps(3, 1, [-1, -1, 1, 2, 3].map(rat).to_vec())?;
        Ok(!is_sufficiently_ramified(&s, 5))
    }),
    ("v(p) = 1 in the cyclotomic tower", || {
        Ok(CycElement::from_int(3, 2, 12, 3)?.valuation()? == ExtendedRational::from(1))
    }),
    ("v(zeta_9) = 0", || Ok(zeta9()?.valuation()? == ExtendedRational::from(0))),
    ("zeta_9 under a = 4 is zeta_9^4", || Ok(zeta9()?.galois_act(4)? == CycElement::zeta_power(3, 2, 12, 4)?)),
    ("zeta_9 under a = 1 is zeta_9", || Ok(zeta9()?.galois_act(1)? == zeta9()?)),
    ("trace of zeta_9 to Q_3(zeta_3) is 0", || Ok(zeta9()?.trace_step()?.is_zero())),
    ("trace of 1 is 3", || Ok(CycElement::from_int(3, 2, 12, 1)?.trace_step()? == CycElement::from_int(3, 1, 12, 3)?)),
    ("normalized trace is the identity on K", || {
        let x = CycElement::zeta_power(3, 1, 12, 1)?;
        Ok(x.normalized_trace()? == x)
    }),
    ("sigma-fixed elements have infinite slack", || {
        Ok(trace_sigma_slack(&CycElement::from_int(3, 1, 12, 7)?)? == ExtendedRational::Infinity)
    }),
    ("snf of the 3x3 identity", || Ok(snf(&IntMatrix::identity(3)) == (big(&[1, 1, 1]), 3))),
    ("snf of the zero matrix", || Ok(snf(&IntMatrix::zeros(2, 3)) == (vec![], 0))),
    ("cohomology of Z --p--> Z", || {
        let h = z_times(3).cohomology();
        Ok(h[&0].is_zero() && h[&1] == FgModule::from_cyclic(0, &big(&[3])))
    }),
    ("cone of the identity is acyclic", || Ok(cone(&ChainMap::identity(&FgComplex::single(0, 2))).complex.is_acyclic())),
    ("cone of multiplication by p on Z", || {
        let c = FgComplex::single(0, 1);
        let h = cone(&ChainMap::scalar(&c, &BigInt::from(3))).complex.cohomology();
        let nonzero: Vec<&FgModule> = h.values().filter(|m| !m.is_zero()).collect();
        Ok(nonzero == [&FgModule::from_cyclic(0, &big(&[3]))])
    }),
    ("decalage leaves free complexes with zero differential alone", || {
        let c = FgComplex::new(0, vec![2, 1], vec![IntMatrix::zeros(1, 2)])?;
        let h = c.cohomology();
        let he = decalage(&c, 3, 1)?.cohomology();
        Ok(h.iter().all(|(i, m)| he.get(i).unwrap_or(&FgModule::zero()) == m))
    }),
    ("split_free_torsion of Z + Z/p^2", || {
        let s = split_free_torsion(&IntMatrix::from_rows(&[vec![0], vec![9]]), 3)?;
        Ok(s.rank == 1 && s.torsion_exponents == [2])
    }),
    ("split_free_torsion of a free presentation", || {
        let s = split_free_torsion(&IntMatrix::zeros(3, 0), 3)?;
        Ok(s.rank == 3 && s.torsion_exponents.is_empty())
    }),
    ("two_term_cohomology refuses the trivial character", || {
        Ok(two_term_cohomology(&IntMatrix::identity(2), 3, 4, None, &BigInt::from(1)).is_err())
    }),
    ("triangle composite of identities vanishes", || {
        let id = ChainMap::identity(&FgComplex::single(0, 1));
        triangle_composite_vanishing(&id, &id, &id)
    }),
    ("composing with the zero certificate", || {
        let c = TorsionCert::everywhere(e("N+2"));
        Ok(c.compose(&TorsionCert::zero()) == c)
    }),
    ("triangle with a zero certificate", || {
        let cy = TorsionCert::everywhere(e("3"));
        Ok(triangle(&TorsionCert::zero(), &cy) == cy)
    }),
    ("spectral window with cd = 0", || {
        let c = TorsionCert::from_degree(0, e("r"));
        Ok([WindowCount::Cd, WindowCount::CdPlusOne].iter().all(|&w| {
            spectral_window(&c, &LinExpr::zero(), w).is_ok_and(|out| out.get(5) == Some(e("r")))
        }))
    }),
    ("res_cores with index prime to p", || {
        let c = TorsionCert::everywhere(e("N+3"));
        Ok(res_cores(&c, &LinExpr::zero()) == c)
    }),
    ("abelian dim 1: zero differentials, H = (Z, Z)", || {
        let l = LieAlgebraZ::abelian(1)?;
        let c = ce_complex(&l)?;
        let h = lie_cohomology(&l)?;
        Ok(c.differentials().iter().all(IntMatrix::is_zero) && h.values().all(|m| *m == FgModule::free(1)) && h.len() == 2)
    }),
    ("gl_1 + gl_1 has Betti numbers (1, 2, 1)", || {
        let g1 = LieAlgebraZ::gl(1)?;
        Ok(betti_numbers(&g1.direct_sum(&g1)?)? == [1, 2, 1])
    }),
    ("exterior series on one degree-1 generator", || {
        Ok(exterior_poincare(&[1]) == BTreeMap::from([(0, 1), (1, 1)]))
    }),
    ("lazard_check(1, 3, 1)", || {
        let r = lazard_check(1, 3, 1)?;
        Ok(r.ranks == [1, 1] && r.max_exponent == 0 && r.ranks_match)
    }),
    ("ghost of (1, 1) at p = 3", || Ok(PTypicalWitt::from_ints(3, None, &[1, 1])?.ghost()? == big(&[1, 4]))),
    ("ghost of a Teichmuller vector", || {
        Ok(PTypicalWitt::from_ints(3, None, &[2, 0, 0])?.ghost()? == big(&[2, 8, 512]))
    }),
    ("u + 0 = u", || {
        let u = PTypicalWitt::from_ints(5, Some(3), &[7, 11, 2])?;
        Ok(u.add(&PTypicalWitt::zero(5, Some(3), 3)?)? == u)
    }),
    ("p-typical series are their own p-part", || {
        let f = FiniteField::prime(3)?;
        let g = UnitSeries::from_coordinates(f, 30, &BTreeMap::from([(1, 2), (3, 1), (9, 2)]))?;
        let s = series_split_p_typical(&g)?;
        Ok(s.p_part == g && s.prime_to_p_parts.is_empty())
    }),
    ("artin_schreier_solve(0) = 0 in the base field", || {
        let f = FiniteField::new(3, 2)?;
        let s = artin_schreier_solve(&f, 0)?;
        Ok(s.field_degree == 2 && matches!(s.root, AsRoot::Base(0)))
    }),
    ("a single vertex has cohomology {0: 1}", || {
        let b = build_ball(2, 3, 0)?;
        Ok(b.vertices.len() == 1 && simplicial_cohomology(&b, 2)? == BTreeMap::from([(0, 1)]))
    }),
];

pub fn run() -> Vec<Check> {
    CASES
        .iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let (pass, detail) = match f() {
                Ok(b) => (b, serde_json::Value::Null),
                Err(e) => (false, serde_json::json!({ "error": e.kind(), "message": e.to_string() })),
            };
            Check { id: format!("q{}", i + 1), name: (*name).into(), pass, detail }
        })
        .collect()
}
