// Sign relationship between the closed-form residuals and the geometric ones.
use lozi_lab::map::Params;
use lozi_lab::solver::{geometric_residuals, residual_f1, residual_f2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut n = 0;
    let mut flips1 = 0;
    let mut flips2 = 0;
    while n < 400 {
        let params: Params<f64> = Params::from_f64(
            rng.gen_range(1.45..2.1),
            rng.gen_range(0.02..0.55),
            rng.gen_range(0.0..0.3),
        );
        let Ok(vp) = params.validated() else { continue };
        let Ok(geo) = geometric_residuals(&vp) else { continue };
        let (Ok(r1), Ok(r2)) = (residual_f1(&params), residual_f2(&params)) else {
            continue;
        };
        n += 1;
        if (geo.r1 > 0.0) != (r1 > 0.0) {
            flips1 += 1;
            if flips1 < 6 {
                println!(
                    "r1 flip at a={:.4} b={:.4} c={:.4}: geo={:+.3e} closed={:+.3e} ratio={:.3}",
                    params.a, params.b, params.c, geo.r1, r1, r1 / geo.r1
                );
            }
        }
        if (geo.r2 > 0.0) != (r2 > 0.0) {
            flips2 += 1;
            if flips2 < 6 {
                println!(
                    "r2 flip at a={:.4} b={:.4} c={:.4}: geo={:+.3e} closed={:+.3e} ratio={:.3}",
                    params.a, params.b, params.c, geo.r2, r2, r2 / geo.r2
                );
            }
        }
    }
    println!("samples={n} r1 sign flips={flips1} r2 sign flips={flips2}");

    let p: Params<f64> = Params::from_f64(1.8, 0.3, 0.0);
    let geo = geometric_residuals(&p.validated().unwrap()).unwrap();
    println!(
        "at (1.8,0.3,0): geo r1={:+.6e} closed r1={:+.6e} | geo r2={:+.6e} closed r2={:+.6e}",
        geo.r1,
        residual_f1(&p).unwrap(),
        geo.r2,
        residual_f2(&p).unwrap()
    );
}
