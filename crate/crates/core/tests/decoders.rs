use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use cyclic_dd::bits::{BinaryMatrix, BitVec};
use cyclic_dd::codealg::{rm_exponent_set, CodeSpec};
use cyclic_dd::decoders::{
    dual_orbit_parity_matrix, eg_line_parity_matrix, mld_exhaustive, osd_candidate_count,
    osd_decode, Mld, Osd, Provenance, SoftDecoder, Spa, SparseParityMatrix,
};
use cyclic_dd::derivative::cyclic_dd;
use cyclic_dd::gf2m::Field;
use cyclic_dd::poly::Gf2Poly;
use cyclic_dd::Error;

fn field(m: u32) -> Arc<Field> {
    Arc::new(Field::with_default_poly(m).unwrap())
}

fn from_hex(m: u32, hex: &str) -> CodeSpec {
    CodeSpec::from_generator(field(m), Gf2Poly::from_hex(hex).unwrap()).unwrap()
}

fn descendant(c: &CodeSpec) -> CodeSpec {
    CodeSpec::from_exponents(c.field().clone(), cyclic_dd(c.exponents()))
}

fn code_16_7() -> CodeSpec {
    from_hex(4, "0x1D1")
}

fn noisy(cw: &BitVec, ebn0_db: f64, rate: f64, rng: &mut impl Rng) -> Vec<f64> {
    let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
    (0..cw.len())
        .map(|i| {
            let x = if cw.get(i) { -1.0 } else { 1.0 };
            let z: f64 = rng.sample(StandardNormal);
            2.0 * (x + sigma2.sqrt() * z) / sigma2
        })
        .collect()
}

fn saturated(cw: &BitVec, mag: f64) -> Vec<f64> {
    (0..cw.len()).map(|i| if cw.get(i) { -mag } else { mag }).collect()
}

// Σ_{c_i = 1} L_i; smaller is more likely.
fn cost(cw: &BitVec, llr: &[f64]) -> f64 {
    cw.iter_ones().map(|i| llr[i]).sum()
}

fn assert_sparse_orthogonal(h: &SparseParityMatrix, code: &CodeSpec) {
    for row in code.generator_matrix().rows() {
        for (r, checks) in h.rows().iter().enumerate() {
            let parity = checks.iter().filter(|&&p| row.get(p)).count() % 2;
            assert_eq!(parity, 0, "check {r}");
        }
    }
}

#[test]
fn eg_lines_of_64_point_geometry() {
    let f = field(6);
    let h = eg_line_parity_matrix(&f, 3, 2).unwrap();
    assert_eq!((h.num_rows(), h.num_cols()), (336, 64));
    assert!(h.row_weights().iter().all(|&w| w == 4));
    assert!(h.col_weights().iter().all(|&w| w == 21));
    let distinct: BTreeSet<&Vec<usize>> = h.rows().iter().collect();
    assert_eq!(distinct.len(), 336);
    assert_eq!(h.provenance(), Provenance::EgLines);
    let dd = descendant(&from_hex(6, "0xF69AC20921"));
    assert_eq!(dd.dimension(), 13);
    assert_sparse_orthogonal(&h, &dd);
    assert_eq!(h.to_dense().rank(), 64 - 13);
}

#[test]
fn eg_lines_of_256_point_geometry() {
    let f = field(8);
    let h = eg_line_parity_matrix(&f, 2, 4).unwrap();
    assert_eq!((h.num_rows(), h.num_cols()), (272, 256));
    assert!(h.row_weights().iter().all(|&w| w == 16));
    assert!(h.col_weights().iter().all(|&w| w == 17));
    let eg = from_hex(8, "0x11377F7700FA55335BA55");
    assert_eq!(eg.dimension(), 175);
    assert_sparse_orthogonal(&h, &eg);
}

#[test]
fn descendant_of_64_45_code_lies_in_plane_geometry_code() {
    let f = field(6);
    let h = eg_line_parity_matrix(&f, 2, 3).unwrap();
    assert_eq!((h.num_rows(), h.row_weights()[0]), (72, 8));
    // the null space of the line incidence matrix of EG(2, 8) is the (64, 37) code
    assert_eq!(64 - h.to_dense().rank(), 37);
    let dd = descendant(&from_hex(6, "0x782CF"));
    assert_eq!(dd.dimension(), 34);
    assert_sparse_orthogonal(&h, &dd);
}

#[test]
fn eg_rejects_bad_parameters() {
    let f = field(6);
    assert!(matches!(eg_line_parity_matrix(&f, 4, 2), Err(Error::InvalidGeometry(_))));
    let line = eg_line_parity_matrix(&field(4), 1, 4).unwrap();
    assert_eq!(line.rows(), &[(0..16).collect::<Vec<_>>()]);
}

#[test]
fn dual_orbit_of_64_34_descendant() {
    let dd = descendant(&from_hex(6, "0x782CF"));
    let h = dual_orbit_parity_matrix(&dd, 8).unwrap();
    assert_eq!(h.num_rows(), 72);
    assert!(h.row_weights().iter().all(|&w| w == 8));
    assert!(h.col_weights().iter().all(|&w| w == 9));
    assert_sparse_orthogonal(&h, &dd);
    assert!(matches!(
        dual_orbit_parity_matrix(&dd, 7),
        Err(Error::EmptyParityMatrix { max_weight: 7 })
    ));
}

#[test]
fn alist_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eg.alist");
    let h = eg_line_parity_matrix(&field(6), 3, 2).unwrap();
    h.write_alist(&path).unwrap();
    let back = SparseParityMatrix::read_alist(&path).unwrap();
    assert_eq!(back.rows(), h.rows());
    assert_eq!(back.provenance(), Provenance::File);
    let bad = dir.path().join("bad.alist");
    std::fs::write(&bad, "3 2\n2 2\n").unwrap();
    assert!(SparseParityMatrix::read_alist(&bad).is_err());
}

#[test]
fn spa_on_eg_lines() {
    let code = descendant(&from_hex(6, "0xF69AC20921"));
    let spa = Spa::new(eg_line_parity_matrix(&field(6), 3, 2).unwrap(), 50);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cw = code.encode(&BitVec::from_fn(13, |_| rng.random()));

    let out = spa.decode(&saturated(&cw, 30.0));
    assert_eq!(out.codeword, cw);
    assert!(out.converged);
    assert_eq!(out.iterations, 1);

    let mut llr = saturated(&cw, 4.0);
    llr[17] = if cw.get(17) { 0.3 } else { -0.3 };
    let out = spa.decode(&llr);
    assert_eq!(out.codeword, cw);
    assert!(out.converged);

    let out = spa.decode(&vec![0.0; 64]);
    assert!(!out.converged);
    assert_eq!(out.iterations, 50);

    // every converged output satisfies the checks
    for _ in 0..200 {
        let llr = noisy(&cw, 2.0, 13.0 / 64.0, &mut rng);
        let out = spa.decode(&llr);
        if out.converged {
            assert!(code.is_member(&out.codeword));
        }
    }
}

#[test]
fn osd_agrees_with_mld_on_small_code() {
    let code = code_16_7();
    let g = code.generator_matrix();
    let mld = Mld::new(g).unwrap();
    let osd = Osd::new(g.clone(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let frames = 10_000;
    let mut agree = 0;
    for _ in 0..frames {
        let cw = code.encode(&BitVec::from_fn(7, |_| rng.random()));
        let llr = noisy(&cw, 4.0, 7.0 / 16.0, &mut rng);
        let a = osd.decode(&llr).codeword;
        let b = mld.decode(&llr).codeword;
        assert!(code.is_member(&a));
        assert!(cost(&a, &llr) >= cost(&b, &llr) - 1e-9);
        agree += (a == b) as usize;
    }
    assert!(agree as f64 >= 0.99 * frames as f64, "agreement {agree}/{frames}");
}

#[test]
fn osd_cost_is_monotone_in_order() {
    let code = CodeSpec::bch(field(6), 9);
    let g = code.generator_matrix();
    let osds: Vec<Osd> = (0..=3).map(|l| Osd::new(g.clone(), l).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rate = code.dimension() as f64 / 64.0;
    for _ in 0..200 {
        let cw = code.encode(&BitVec::from_fn(code.dimension(), |_| rng.random()));
        let llr = noisy(&cw, 1.0, rate, &mut rng);
        let costs: Vec<f64> = osds.iter().map(|o| o.decode_with_cost(&llr).1).collect();
        for w in costs.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "{costs:?}");
        }
        let (best, c) = osds[3].decode_with_cost(&llr);
        assert!(code.is_member(&best));
        // disagreement with the hard decision differs from the cost by a constant
        let offset: f64 = llr.iter().filter(|&&x| x < 0.0).map(|x| -x).sum();
        assert!((cost(&best, &llr) + offset - c).abs() < 1e-9 * (1.0 + c));
    }
    assert_eq!(osd_candidate_count(code.dimension(), 0), 1);
}

#[test]
fn full_order_osd_is_mld() {
    let code = CodeSpec::from_exponents(field(4), rm_exponent_set(1, 4));
    let g = code.generator_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let cw = code.encode(&BitVec::from_fn(5, |_| rng.random()));
        let llr = noisy(&cw, 0.0, 5.0 / 16.0, &mut rng);
        let a = osd_decode(g, &llr, 5).unwrap();
        let b = mld_exhaustive(g, &llr).unwrap();
        assert!((cost(&a, &llr) - cost(&b, &llr)).abs() < 1e-9);
    }
}

#[test]
fn mld_beats_random_codewords() {
    let code = CodeSpec::bch(field(5), 7);
    let g = code.generator_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = code.dimension();
    for _ in 0..20 {
        let cw = code.encode(&BitVec::from_fn(k, |_| rng.random()));
        let llr = noisy(&cw, 1.0, k as f64 / 32.0, &mut rng);
        let best = mld_exhaustive(g, &llr).unwrap();
        let c = cost(&best, &llr);
        for _ in 0..100 {
            let other = code.encode(&BitVec::from_fn(k, |_| rng.random()));
            assert!(c <= cost(&other, &llr) + 1e-9);
        }
    }
    let cw = code.encode(&BitVec::from_fn(k, |i| i % 3 == 0));
    assert_eq!(mld_exhaustive(g, &saturated(&cw, 5.0)).unwrap(), cw);
}

#[test]
fn rank_deficient_generator_rejected() {
    let g = BinaryMatrix::from_bit_rows(&[&[1, 1, 0, 0], &[1, 1, 0, 0]]);
    assert!(matches!(Osd::new(g, 1), Err(Error::RankDeficient { rank: 1, k: 2 })));
}
