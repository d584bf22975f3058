//! A hand-built free resolution of F_p over E(x)⊗P_k(y)/(xy^{k−1}).

use std::sync::Arc;

use super::resolution::FreeResolution;
use crate::algebra::{Algebra, Presentation};
use crate::error::{invalid, Result};
use crate::fp::PrimeField;

fn y_power(e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => "y".into(),
        e => format!("y^{e}"),
    }
}

/// The algebra R = E(x)⊗P_k(y)/(xy^{k−1}) with |x| = 2r−1, |y| = 2r.
pub fn truncated_quotient_algebra(field: PrimeField, r: u32, k: u32, max_degree: u32) -> Result<Algebra> {
    if r < 1 || k < 2 {
        return Err(invalid("need r ≥ 1 and k ≥ 2"));
    }
    let pres = Presentation::builder(field)
        .ext("x", 2 * r - 1)
        .truncated("y", 2 * r, k)
        .relation(&format!("x*{}", y_power(k - 1)))
        .build()?;
    Algebra::new(pres, max_degree)
}

/// The explicit resolution of F_p over R through internal degree D.
///
/// Stage 1 is γ_1 ↦ x, υ_1 ↦ y. For i ≥ 2, stage i has
/// d(γ_i) = xγ_{i−1}, d(w_i) = y^{k−1}γ_{i−1}, d(z_i) = y^{k−1}υ_{i−1},
/// d(a_i) = xy^{k−2}υ_{i−1}, d(υ_i) = yγ_{i−1} − xυ_{i−1},
/// and stage 3 also has b_3 ↦ −w_2 + y^{k−2}υ_2 + a_2. This covers every
/// bidegree of total degree below the next family of corrections, which
/// starts above 2p for the parameters in use.
pub fn case_four_resolution(field: PrimeField, r: u32, k: u32, max_degree: u32) -> Result<FreeResolution> {
    let alg = truncated_quotient_algebra(field, r, k, max_degree)?;
    let (dx, dy) = (2 * r - 1, 2 * r);
    let yk1 = y_power(k - 1);
    let yk2 = y_power(k - 2);
    let xyk2 = if k == 2 { "x".to_string() } else { format!("x*{yk2}") };
    let mut res = FreeResolution::new(Arc::new(alg));
    res.add_generator(1, "gamma_1", dx, &[("1", "x")])?;
    res.add_generator(1, "upsilon_1", dy, &[("1", "y")])?;
    let mut deg_gamma = dx;
    let mut deg_ups = dy;
    let max_s = max_degree / dx + 1;
    for i in 2..=max_s {
        let g = format!("gamma_{}", i - 1);
        let u = format!("upsilon_{}", i - 1);
        let degs = (
            dx + deg_gamma,
            (k - 1) * dy + deg_gamma,
            (k - 1) * dy + deg_ups,
            dx + (k - 2) * dy + deg_ups,
            dy + deg_gamma,
        );
        res.add_generator(i as usize, &format!("gamma_{i}"), degs.0, &[(&g, "x")])?;
        res.add_generator(i as usize, &format!("w_{i}"), degs.1, &[(&g, &yk1)])?;
        res.add_generator(i as usize, &format!("z_{i}"), degs.2, &[(&u, &yk1)])?;
        res.add_generator(i as usize, &format!("a_{i}"), degs.3, &[(&u, &xyk2)])?;
        res.add_generator(i as usize, &format!("upsilon_{i}"), degs.4, &[(&g, "y"), (&u, "-x")])?;
        if i == 3 {
            let d_w2 = (k - 1) * dy + dx;
            res.add_generator(3, "b_3", d_w2, &[("w_2", "-1"), ("upsilon_2", &yk2), ("a_2", "1")])?;
        }
        deg_gamma = degs.0;
        deg_ups = degs.4;
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_shape_at_p5() {
        let f = PrimeField::new(5).unwrap();
        let res = case_four_resolution(f, 2, 2, 12).unwrap();
        let stage2: Vec<(String, u32)> = res.stage(2).iter().map(|g| (g.name.clone(), g.degree)).collect();
        let degs: Vec<u32> = stage2.iter().map(|x| x.1).collect();
        assert_eq!(degs, vec![6, 7, 8, 7, 7]);
        res.check_square_zero(12).unwrap();
        assert!(res.exactness(10).exact());
        let down = res.tensor_down().unwrap();
        let h = down.total_homology(10);
        assert_eq!(&h[7..=10], &[0, 1, 2, 1]);
        // b_3 survives only as −w_2 + a_2 + υ_2.
        let col = down.differential(3, 7).unwrap().column(0);
        assert_eq!(down.describe(2, 7, &col), "-w_2 + a_2 + upsilon_2");
    }

    #[test]
    fn larger_truncation_is_still_a_complex() {
        let f = PrimeField::new(7).unwrap();
        let res = case_four_resolution(f, 2, 3, 20).unwrap();
        res.check_square_zero(20).unwrap();
    }
}
