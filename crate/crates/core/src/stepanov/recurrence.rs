use super::PolySystem;
use crate::poly::DensePoly;

/// Per-system data shared by every `(a, b)` recurrence: `F = ∏ f_i`, `F'`
/// and `U_i = f_i' ∏_{j≠i} f_j`.
pub(crate) struct RecurrenceBasis {
    product: DensePoly,
    product_deriv: DensePoly,
    partials: Vec<DensePoly>,
}

impl RecurrenceBasis {
    pub(crate) fn new(polys: &[DensePoly]) -> Self {
        let ctx = *polys[0].ctx();
        let one = DensePoly::one(ctx);
        let product = polys.iter().fold(one.clone(), |acc, f| &acc * f);
        let partials: Vec<DensePoly> = (0..polys.len())
            .map(|i| {
                polys
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(polys[i].derivative(), |acc, (_, f)| &acc * f)
            })
            .collect();
        Self {
            product_deriv: product.derivative(),
            product,
            partials,
        }
    }

    /// `P_0..=P_{k_max}` for one `(a, b)`.
    pub(crate) fn sequence(&self, a: usize, b: &[u64], t: u64, k_max: usize) -> Vec<DensePoly> {
        let ctx = *self.product.ctx();
        // Σ_i (b_i t - k) U_i = V_b - k F'
        let v_b = self
            .partials
            .iter()
            .zip(b)
            .fold(DensePoly::zero(ctx), |acc, (u, &bi)| {
                &acc + &u.scale(ctx.mul(ctx.reduce(bi), ctx.reduce(t)))
            });
        let mut out = Vec::with_capacity(k_max + 1);
        let mut cur = DensePoly::monomial(ctx, 1, a);
        for k in 0..k_max {
            let s_k = &v_b - &self.product_deriv.scale(ctx.reduce(k as u64));
            let next = &(&self.product * &cur.derivative()) + &(&cur * &s_k);
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
        out
    }
}

/// `P_{0..=k_max, a, b}` from the recurrence
/// `P_0 = x^a`, `P_{k+1} = F·P_k' + P_k·Σ_i (b_i t - k) f_i' ∏_{j≠i} f_j`,
/// which satisfies
/// `F^k · d^k/dx^k (x^a ∏ f_i^{b_i t}) = (∏ f_i^{b_i t}) · P_k`.
///
/// Works for any number of factors; `b.len()` must equal `polys.len()`.
pub fn pk_sequence(
    polys: &[DensePoly],
    a: usize,
    b: &[u64],
    t: u64,
    k_max: usize,
) -> Vec<DensePoly> {
    assert!(!polys.is_empty(), "need at least one factor");
    assert_eq!(polys.len(), b.len(), "one exponent per factor");
    RecurrenceBasis::new(polys).sequence(a, b, t, k_max)
}

pub fn pk_recurrence(
    sys: &PolySystem,
    a: usize,
    b: &[u64],
    t: u64,
    k_max: usize,
) -> Vec<DensePoly> {
    pk_sequence(sys.polys(), a, b, t, k_max)
}
