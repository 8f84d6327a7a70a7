use hyperct::hypergamma::{gamma, QuasiPeriods};
use hyperct::numerics::QuadratureSpec;
use hyperct::{c, mul_i, Complex};

fn main() {
    let pi = std::f64::consts::PI;
    let qp = QuasiPeriods::new(Complex::from_polar(1.0, -pi/6.0), Complex::from_polar(1.0, -pi/3.0)).unwrap();
    let w = qp.omega();
    let spec = QuadratureSpec { rel_tol: 1e-5, abs_tol: 1e-12, ..Default::default() };
    let x = c(0.5, 0.0);
    let gams = [c(-0.3,-0.1), c(-0.25,0.05), c(-0.2,-0.2), c(-0.35,0.1)];
    let mut args = vec![
        ("x+iw", x + mul_i(w)), ("x-iw", x - mul_i(w)),
        ("x+iwp/2", x + mul_i(0.5*qp.wplus())), ("x-iwp/2", x - mul_i(0.5*qp.wplus())),
        ("x+iwm/2", x + mul_i(0.5*qp.wminus())), ("x-iwm/2", x - mul_i(0.5*qp.wminus())),
    ];
    for (i, g) in gams.iter().enumerate() {
        args.push((Box::leak(format!("x+i(w+g{i})").into_boxed_str()), x + mul_i(w + g)));
        args.push((Box::leak(format!("x-i(w+g{i})").into_boxed_str()), x - mul_i(w + g)));
    }
    for (name, z) in args {
        let d = qp.singularity_distance(z);
        let r = gamma(&qp, z, &spec);
        println!("{name}: z={z:.4} dist={d:.4e} ok={}", r.is_ok());
    }
}
