use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stepanov::ffield::{subgroup_of_order, FieldCtx};
use stepanov::oracle::{
    coset_intersection, coset_intersection_via_map, enumerate_m_polys, verify_instance,
    InstanceSpec, Status,
};
use stepanov::sweep::window_divisors;
use stepanov::DensePoly;

#[test]
fn intersection_paths_agree_on_random_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for &p in &[1021u64, 7919, 65537] {
        let ctx = FieldCtx::new(p).unwrap();
        let ts: Vec<u64> = (2..p).filter(|t| (p - 1) % t == 0).take(8).collect();
        for &t in &ts {
            let k = rng.gen_range(1..=3);
            let mut shifts: Vec<u64> = Vec::new();
            while shifts.len() < k {
                let s = rng.gen_range(1..p);
                if !shifts.contains(&s) {
                    shifts.push(s);
                }
            }
            assert_eq!(
                coset_intersection(&ctx, t, &shifts).unwrap(),
                coset_intersection_via_map(&ctx, t, &shifts).unwrap()
            );
        }
    }
}

#[test]
fn enumeration_is_deterministic_and_order_free() {
    let ctx = FieldCtx::new(7919).unwrap();
    let sg = subgroup_of_order(&ctx, 74).unwrap();
    let f = DensePoly::from_i64(ctx, &[3, 1, 1]);
    let g = DensePoly::linear_root(ctx, 10);
    let (cf, cg) = (sg.coset(5).unwrap(), sg.coset(17).unwrap());
    let a = enumerate_m_polys(&[f.clone(), g.clone()], &[cf.clone(), cg.clone()]).unwrap();
    let b = enumerate_m_polys(&[g, f], &[cg, cf]).unwrap();
    assert_eq!(a, b);
    assert!(a.m.windows(2).all(|w| w[0] < w[1]));
}

fn random_linear_instance(rng: &mut ChaCha8Rng, p: u64, t: u64) -> InstanceSpec {
    let ctx = FieldCtx::new(p).unwrap();
    let r1 = rng.gen_range(1..p);
    let mut r2 = rng.gen_range(1..p);
    while r2 == r1 {
        r2 = rng.gen_range(1..p);
    }
    InstanceSpec {
        p,
        t,
        polys: vec![
            DensePoly::linear_root(ctx, r1),
            DensePoly::linear_root(ctx, r2),
        ],
        cosets: vec![rng.gen_range(1..p), rng.gen_range(1..p)],
    }
}

#[test]
fn oracle_never_exceeds_the_certificate_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut passed = 0;
    for &p in &[1021u64, 2017, 4051] {
        for &t in window_divisors(p, &[1, 1]).iter().take(3) {
            let spec = random_linear_instance(&mut rng, p, t);
            let r = verify_instance(&spec).unwrap();
            assert_eq!(
                r.status,
                Status::Passed,
                "p={p} t={t} {:?}",
                r.failed_checks()
            );
            assert!(r.m_size as u64 <= r.implied_bound.unwrap());
            passed += 1;
        }
    }
    assert!(passed >= 6);
}

#[test]
fn permuting_polynomials_with_cosets_changes_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for &p in &[1021u64, 7919] {
        for &t in window_divisors(p, &[1, 1]).iter().take(2) {
            let spec = random_linear_instance(&mut rng, p, t);
            let swapped = InstanceSpec {
                polys: vec![spec.polys[1].clone(), spec.polys[0].clone()],
                cosets: vec![spec.cosets[1], spec.cosets[0]],
                ..spec.clone()
            };
            let a = verify_instance(&spec).unwrap();
            let b = verify_instance(&swapped).unwrap();
            assert_eq!(a.elements, b.elements);
            assert_eq!(a.implied_bound, b.implied_bound);
            assert_eq!(a.status, b.status);
        }
    }
}

#[test]
fn mixed_degree_instance_is_skipped_not_failed() {
    let ctx = FieldCtx::new(7919).unwrap();
    let spec = InstanceSpec {
        p: 7919,
        t: 37,
        polys: vec![
            DensePoly::from_i64(ctx, &[3, 1, 1]),
            DensePoly::linear_root(ctx, 10),
        ],
        cosets: vec![1, 1],
    };
    let r = verify_instance(&spec).unwrap();
    assert_eq!(r.status, Status::Skipped);
}
