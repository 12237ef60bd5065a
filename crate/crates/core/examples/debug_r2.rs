// Scratch diagnostics for the second residual transcription.
use lozi_lab::conditions::slopes;
use lozi_lab::geometry::distinguished_points;
use lozi_lab::map::{eval, period2_point, Params};
use lozi_lab::solver::{geometric_residuals, residual_f2};

fn main() {
    let a = 1.65531960296885174459210852526;
    let b = 0.276507107967726099812119447619;
    let c = 0.0;
    let params: Params<f64> = Params::from_f64(a, b, c);
    let vp = params.validated().unwrap();
    let dp = distinguished_points(&vp).unwrap();
    let sl = slopes(&params).unwrap();
    let q = period2_point(&params).unwrap();

    println!("D  = {:?}", dp.d);
    for i in 1..=5 {
        println!("F^{i}(D) = {:?}", dp.fd[i]);
    }
    println!("M  = {:?}", dp.m);
    println!("B  = {:?}", dp.b);
    println!("FB = {:?}", dp.fb);
    println!("Q  = {:?}", q);
    println!("s  = {}", sl.s);
    println!("s2 = {}", sl.s2);

    // Closed form for F(B) from the appendix.
    let w = (4.0 * b + (a + c) * (a + c)).sqrt();
    let xb1 = 1.0
        - b * (3.0 * a - c + w) * (2.0 + a + c + w)
            / (2.0 * (-2.0 * b + 4.0 * a * (a - c)) * (1.0 + a - b + c));
    println!("x_B1 closed = {xb1}");
    println!("x_B1 geom   = {}", dp.fb.x);

    let geo = geometric_residuals(&vp).unwrap();
    println!("geo r1 = {:e}, geo r2 = {:e}", geo.r1, geo.r2);
    println!("closed r2 = {:e}", residual_f2(&params).unwrap());

    // Check the stable-manifold claim directly: iterate F(B) and see if it
    // converges to the period-two orbit.
    let mut p = dp.fb;
    for i in 0..12 {
        p = eval(&params, p);
        println!("F^{}(FB) = {:?}  (Q = {:?})", i + 1, p, q);
    }
}
