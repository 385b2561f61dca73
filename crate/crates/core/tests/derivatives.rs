use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclic_dd::bits::{BinaryMatrix, BitVec};
use cyclic_dd::codealg::{
    cyclic_shift, min_distance_exhaustive, rm_exponent_set, CodeSpec, ExponentSet,
};
use cyclic_dd::derivative::{
    check_equivalence_shift, coordinates_to_positions, covered_set, cyclic_da, cyclic_dd,
    derivative_codeword, minimal_dd_basis, rm_projection, summed_minimal_dd_rank,
};
use cyclic_dd::gf2m::Field;
use cyclic_dd::poly::Gf2Poly;
use cyclic_dd::Error;

fn field(m: u32) -> Arc<Field> {
    Arc::new(Field::with_default_poly(m).unwrap())
}

fn code_16_7() -> CodeSpec {
    CodeSpec::from_generator(field(4), Gf2Poly::from_hex("0x1D1").unwrap()).unwrap()
}

fn word(s: &str) -> BitVec {
    BitVec::from_bits(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>())
}

fn binom(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn random_codeword(code: &CodeSpec, rng: &mut impl Rng) -> BitVec {
    code.encode(&BitVec::from_fn(code.dimension(), |_| rng.random()))
}

fn random_nonzero(f: &Field, rng: &mut impl Rng) -> u32 {
    rng.random_range(1..f.size() as u32)
}

/// A random conjugacy-closed exponent set of GF(2^m), never just {0}.
fn random_code(m: u32, rng: &mut impl Rng) -> CodeSpec {
    let f = field(m);
    let n = f.n();
    let seeds: Vec<usize> = (0..rng.random_range(1..4)).map(|_| rng.random_range(1..n)).collect();
    CodeSpec::from_exponents(f, ExponentSet::closure_of(n, seeds.into_iter().chain([0])))
}

// Direct definition: the union of the coset closures of all proper submasks
// of every member.
fn dd_oracle(s: &ExponentSet) -> BTreeSet<usize> {
    let n = s.n();
    let mut out = BTreeSet::new();
    for x in s.iter() {
        let mut sub = x;
        loop {
            sub = (sub.wrapping_sub(1)) & x;
            if sub == x {
                break;
            }
            let mut c = sub;
            loop {
                out.insert(c);
                c = 2 * c % n;
                if c == sub {
                    break;
                }
            }
            if sub == 0 {
                break;
            }
        }
    }
    out
}

#[test]
fn covered_sets_of_example() {
    assert!(covered_set(0).is_empty());
    assert_eq!(covered_set(1), [0].into());
    assert_eq!(covered_set(5), [0, 1, 4].into());
    for s in 1..256usize {
        assert_eq!(covered_set(s).len(), (1 << s.count_ones()) - 1);
    }
}

#[test]
fn example_descendant_is_hadamard_code() {
    let c = code_16_7();
    let d = cyclic_dd(c.exponents());
    assert_eq!(d.members(), &[0, 1, 2, 4, 8].into());
    assert_eq!(d, rm_exponent_set(1, 4));
    let dc = CodeSpec::from_exponents(c.field().clone(), d);
    assert_eq!(min_distance_exhaustive(dc.generator_matrix()).unwrap(), 8);
}

#[test]
fn example_minimal_descendant() {
    let c = code_16_7();
    let basis = minimal_dd_basis(&c, 1).unwrap();
    assert_eq!(basis.dimension(), 3);
    let reference = BinaryMatrix::from_rows(
        16,
        vec![
            word("1100001110110010"),
            word("0011010111100010"),
            word("0000100110101111"),
        ],
    );
    assert!(basis.basis.same_row_space(&reference));
    assert_eq!(min_distance_exhaustive(&basis.basis).unwrap(), 8);
}

#[test]
fn example_derivative_vectors() {
    let c = code_16_7();
    let f = c.field();
    let a = word("1010001011100000");
    assert!(c.is_member(&a));
    let a1 = cyclic_shift(&a, 1);
    assert_eq!(a1, word("1100010111000000"));
    let d_alpha = derivative_codeword(f, &a, f.alpha_pow(1)).unwrap();
    assert_eq!(d_alpha, word("0001101011110001"));
    // the unit-direction vector is the derivative of the shifted word
    let d_unit = derivative_codeword(f, &a1, 1).unwrap();
    assert_eq!(d_unit, word("0011010111100010"));
    assert_eq!(cyclic_shift(&d_alpha, 1), d_unit);
    assert_eq!(derivative_codeword(f, &a, 1).unwrap(), word("1111011001010000"));
    assert!(check_equivalence_shift(f, &a, 1));
    assert!(matches!(derivative_codeword(f, &a, 0), Err(Error::ZeroDirection)));
}

#[test]
fn descendants_of_length_64_codes() {
    let f = field(6);
    let c = CodeSpec::from_generator(f.clone(), Gf2Poly::from_hex("0xF69AC20921").unwrap()).unwrap();
    assert_eq!(c.dimension(), 24);
    assert_eq!(c.exponents().representatives(), [0, 1, 3, 5, 9, 21].into());
    let d = cyclic_dd(c.exponents());
    assert_eq!(d.representatives(), [0, 1, 5].into());
    assert_eq!(d.len(), 13);

    let c = CodeSpec::from_generator(f, Gf2Poly::from_hex("0x782CF").unwrap()).unwrap();
    assert_eq!(c.dimension(), 45);
    assert_eq!(
        c.exponents().representatives(),
        [0, 1, 3, 5, 7, 9, 11, 13, 21, 27].into()
    );
    let d = cyclic_dd(c.exponents());
    assert_eq!(d.representatives(), [0, 1, 3, 5, 9, 11, 13].into());
    assert_eq!(d.len(), 34);
}

#[test]
fn ascendant_of_length_256_code() {
    let f = field(8);
    let c = CodeSpec::from_generator(f.clone(), Gf2Poly::from_hex("0x11377F7700FA55335BA55").unwrap())
        .unwrap();
    assert_eq!(c.dimension(), 175);
    let a = CodeSpec::from_exponents(f, cyclic_da(c.exponents()));
    assert_eq!(a.dimension(), 191);
    assert_eq!(a.gen_poly(), &Gf2Poly::from_hex("0x19ACCC1AE68A0CEFF").unwrap());
}

#[test]
fn descendant_matches_definition_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let m = rng.random_range(3..=8);
        let c = random_code(m, &mut rng);
        assert_eq!(cyclic_dd(c.exponents()).members(), &dd_oracle(c.exponents()));
    }
}

#[test]
fn ascendant_is_largest_preimage() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let m = rng.random_range(3..=6);
        let s = random_code(m, &mut rng).exponents().clone();
        let a = cyclic_da(&s);
        // D(A(C)) ⊆ C
        assert!(cyclic_dd(&a).is_subset(&s));
        // S ⊆ A(D(S)) and every s outside A has a covered element outside S
        assert!(s.is_subset(&cyclic_da(&cyclic_dd(&s))));
        for x in 0..s.n() {
            let ok = dd_oracle(&ExponentSet::closure_of(s.n(), [x])).iter().all(|y| s.contains(*y));
            assert_eq!(a.contains(x), ok);
        }
    }
    assert_eq!(cyclic_da(&ExponentSet::full(31)), ExponentSet::full(31));
}

#[test]
fn dimension_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let m = rng.random_range(3..=7);
        let s = random_code(m, &mut rng).exponents().clone();
        let deg = s.degree();
        let upper_dd: usize = (0..deg).map(|i| binom(m, i)).sum();
        let upper_da: usize = (0..=(deg + 1).min(m)).map(|i| binom(m, i)).sum();
        assert!(cyclic_dd(&s).len() <= upper_dd);
        assert!(cyclic_da(&s).len() <= upper_da);
    }
}

#[test]
fn reed_muller_chain() {
    for m in 2..=6u32 {
        for r in 1..m {
            let s = rm_exponent_set(r, m);
            assert_eq!(cyclic_dd(&s), rm_exponent_set(r - 1, m), "r={r} m={m}");
            let upper: usize = (0..r).map(|i| binom(m, i)).sum();
            assert_eq!(cyclic_dd(&s).len(), upper);
            assert_eq!(cyclic_da(&s), rm_exponent_set(r + 1, m), "r={r} m={m}");
            let upper: usize = (0..=r + 1).map(|i| binom(m, i)).sum();
            assert_eq!(cyclic_da(&s).len() + (r + 1 == m) as usize, upper);
        }
    }
}

#[test]
fn derivative_invariants_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let m = rng.random_range(3..=6);
        let c = random_code(m, &mut rng);
        let f = c.field().clone();
        let d = CodeSpec::from_exponents(f.clone(), cyclic_dd(c.exponents()));
        let a = random_codeword(&c, &mut rng);
        let a2 = random_codeword(&c, &mut rng);
        let beta = random_nonzero(&f, &mut rng);
        let da = derivative_codeword(&f, &a, beta).unwrap();
        // membership in the cyclic descendant
        assert!(d.is_member(&da));
        // second derivative in the same direction vanishes
        assert!(derivative_codeword(&f, &da, beta).unwrap().is_zero());
        // linearity
        assert_eq!(
            derivative_codeword(&f, &a.xor(&a2), beta).unwrap(),
            da.xor(&derivative_codeword(&f, &a2, beta).unwrap())
        );
        // constant on pairs {x, x + β}
        for p in 0..f.size() {
            let q = f.position(f.add(f.element_at(p), beta));
            assert_eq!(da.get(p), da.get(q));
        }
        assert_eq!(da.weight() % 2, 0);
        assert!(da.weight() <= 2 * a.weight());
    }
}

#[test]
fn shifted_derivatives_lie_in_unit_direction_descendant() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..40 {
        let m = rng.random_range(3..=6);
        let c = random_code(m, &mut rng);
        let f = c.field().clone();
        let unit = minimal_dd_basis(&c, 1).unwrap().basis;
        for _ in 0..10 {
            let a = random_codeword(&c, &mut rng);
            let b = rng.random_range(0..f.n() as i64);
            assert!(check_equivalence_shift(&f, &a, b));
            let d = derivative_codeword(&f, &a, f.alpha_pow(b)).unwrap();
            assert!(unit.row_space_contains(&cyclic_shift(&d, b)));
        }
        // every direction's minimal descendant has the same dimension
        let b = rng.random_range(1..f.n() as i64);
        assert_eq!(
            minimal_dd_basis(&c, f.alpha_pow(b)).unwrap().dimension(),
            unit.num_rows()
        );
    }
}

#[test]
fn minimal_descendants_sum_to_cyclic_descendant() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..30 {
        let c = random_code(4, &mut rng);
        assert_eq!(summed_minimal_dd_rank(&c), cyclic_dd(c.exponents()).len());
    }
    assert_eq!(summed_minimal_dd_rank(&code_16_7()), 5);
}

#[test]
fn distance_sandwich_on_small_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let c = random_code(4, &mut rng);
        if c.dimension() == c.length() - 1 {
            continue;
        }
        let f = c.field().clone();
        let d = min_distance_exhaustive(c.generator_matrix()).unwrap();
        let dd = CodeSpec::from_exponents(f.clone(), cyclic_dd(c.exponents()));
        let d_dd = min_distance_exhaustive(dd.generator_matrix()).unwrap();
        let minimal = minimal_dd_basis(&c, 1).unwrap().basis;
        if minimal.num_rows() > 0 {
            assert!(min_distance_exhaustive(&minimal).unwrap() >= d_dd);
        }
        let da = CodeSpec::from_exponents(f, cyclic_da(c.exponents()));
        if da.dimension() <= 20 {
            assert!(2 * min_distance_exhaustive(da.generator_matrix()).unwrap() >= d);
        }
        assert!(d_dd <= 2 * d);
    }
}

#[test]
fn table_minimal_descendant_dimensions() {
    for (m, delta, k, k_d, k_d1) in [(7u32, 31usize, 36usize, 22usize, 14usize), (8, 91, 37, 25, 16), (8, 55, 79, 45, 31)] {
        let c = CodeSpec::bch(field(m), delta);
        assert_eq!(c.dimension(), k);
        assert_eq!(cyclic_dd(c.exponents()).len(), k_d);
        assert_eq!(minimal_dd_basis(&c, 1).unwrap().dimension(), k_d1);
    }
}

#[test]
fn reed_muller_projection() {
    let f = field(4);
    let rm14 = CodeSpec::reed_muller(f.clone(), 1);
    let msgs = 1u32 << rm14.dimension();
    for w in 0..msgs {
        let a = rm14.encode(&BitVec::from_fn(5, |i| w >> i & 1 == 1));
        for beta in 1..16 {
            let p = rm_projection(&f, &a, beta).unwrap();
            assert!(p.is_zero() || p.weight() == 8, "{p}");
        }
    }
    assert!(rm_projection(&f, &BitVec::zeros(16), 3).unwrap().is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let f5 = field(5);
    let f4 = field(4);
    let rm25 = CodeSpec::reed_muller(f5.clone(), 2);
    let rm14 = CodeSpec::reed_muller(f4.clone(), 1);
    for _ in 0..200 {
        let a = random_codeword(&rm25, &mut rng);
        let beta = random_nonzero(&f5, &mut rng);
        let p = rm_projection(&f5, &a, beta).unwrap();
        assert!(rm14.is_member(&coordinates_to_positions(&f4, &p)));
    }
}
