use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stepanov::ffield::{subgroup_of_order, FieldCtx};
use stepanov::stepanov::{build_linear_system, compute_params, pk_sequence, solve_nullspace};
use stepanov::{DensePoly, PolySystem};

fn random_poly(rng: &mut ChaCha8Rng, ctx: FieldCtx, deg: usize) -> DensePoly {
    let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..ctx.p())).collect();
    c.push(rng.gen_range(1..ctx.p()));
    DensePoly::new(ctx, c)
}

/// `(∏f)^k d^k/dx^k (x^a ∏ f_i^{b_i t})` against `(∏ f_i^{b_i t}) P_k`.
#[test]
fn recurrence_matches_direct_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut trials = 0;
    for &p in &[31u64, 97] {
        let ctx = FieldCtx::new(p).unwrap();
        for _ in 0..150 {
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let polys = vec![
                random_poly(&mut rng, ctx, d1),
                random_poly(&mut rng, ctx, d2),
            ];
            let a = rng.gen_range(0..6);
            let b = [rng.gen_range(0..3u64), rng.gen_range(0..3u64)];
            let t = rng.gen_range(1..8u64);
            let k_max = rng.gen_range(0..=3usize);
            let seq = pk_sequence(&polys, a, &b, t, k_max);
            let product = &polys[0] * &polys[1];
            let base = &polys[0].pow(b[0] * t) * &polys[1].pow(b[1] * t);
            let g = &DensePoly::monomial(ctx, 1, a) * &base;
            for (k, pk) in seq.iter().enumerate() {
                let lhs = &product.pow(k as u64) * &g.nth_derivative(k);
                assert_eq!(lhs, &base * pk, "p={p} a={a} b={b:?} t={t} k={k}");
                if let Some(d) = pk.degree() {
                    assert!(
                        d <= a + (polys[0].degree().unwrap() + polys[1].degree().unwrap() - 1) * k
                    );
                }
            }
            trials += 1;
        }
    }
    assert!(trials >= 200);
}

#[test]
fn three_factor_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ctx = FieldCtx::new(97).unwrap();
    for _ in 0..40 {
        let polys: Vec<DensePoly> = (0..3).map(|_| random_poly(&mut rng, ctx, 2)).collect();
        let b = [1u64, 0, 2];
        let seq = pk_sequence(&polys, 2, &b, 3, 3);
        let base = polys
            .iter()
            .zip(&b)
            .fold(DensePoly::one(ctx), |acc, (f, &bi)| &acc * &f.pow(bi * 3));
        let product = polys.iter().fold(DensePoly::one(ctx), |acc, f| &acc * f);
        let g = &DensePoly::monomial(ctx, 1, 2) * &base;
        for (k, pk) in seq.iter().enumerate() {
            assert_eq!(&product.pow(k as u64) * &g.nth_derivative(k), &base * pk);
        }
    }
}

#[test]
fn kernel_nonzero_whenever_cond_var_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    for &p in &[1021u64, 7919, 12289] {
        let ctx = FieldCtx::new(p).unwrap();
        for t in (17..400).filter(|t| (p - 1) % t == 0) {
            let sys = PolySystem::new(
                ctx,
                vec![random_poly(&mut rng, ctx, 1), random_poly(&mut rng, ctx, 1)],
            )
            .unwrap();
            let Ok(params) = compute_params(&sys, t) else {
                continue;
            };
            if !params.cond_var_ok {
                continue;
            }
            let sg = subgroup_of_order(&ctx, t).unwrap();
            let cosets = vec![
                sg.coset(rng.gen_range(1..p)).unwrap(),
                sg.coset(rng.gen_range(1..p)).unwrap(),
            ];
            let ls = build_linear_system(&sys, &params, &cosets).unwrap();
            assert!((ls.equations() as u64) <= ls.equation_bound());
            let lambda = solve_nullspace(&ls).expect("cond-var guarantees a free variable");
            assert!(lambda.iter().any(|&v| v != 0));
            checked += 1;
        }
    }
    assert!(checked > 5);
}
