use frachyp::special::{mittag_leffler, mittag_leffler_gen, MLParams};
use frachyp::oracle::{ml_series_highprec, MlValue};
use num_complex::Complex64;

fn main() {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // ml_at_zero / general params at 0
    let p = MLParams::new(0.7, 2.0, 1.5).unwrap();
    println!("gen(0) = {:?} want 1/Gamma(2)=1", mittag_leffler_gen(&p, c(0.0, 0.0)));
    // alpha=1 exp
    for &z in &[c(2.0, 0.0), c(-3.0, 1.0), c(15.0, 3.0)] {
        match mittag_leffler(1.0, z) {
            Ok(v) => println!("E_1({z}) = {v}  exp = {}", z.exp()),
            Err(e) => println!("E_1({z}) ERR {e}"),
        }
    }
    // E_{1/2}(1)
    match mittag_leffler(0.5, c(1.0, 0.0)) {
        Ok(v) => println!("E_0.5(1) = {v:.15}"),
        Err(e) => println!("E_0.5(1) ERR {e}"),
    }
    // oracle high precision value for freezing
    let p = MLParams::new(0.5, 1.0, 1.0).unwrap();
    match ml_series_highprec(&p, c(1.0, 0.0), 1e-16) {
        Ok(MlValue::Finite(v)) => println!("oracle E_0.5(1) = {:.16e}", v.re),
        other => println!("oracle ERR {other:?}"),
    }
    // deriv fd case
    match frachyp::special::mittag_leffler_deriv(0.7, 2, c(-3.0, 0.0)) {
        Ok(v) => println!("E'' = {v}"),
        Err(e) => println!("E'' ERR {e}"),
    }
    // negative axis values for sector decay
    for &r in &[1.0, 5.0, 10.0, 30.0, 50.0] {
        match mittag_leffler(0.5, c(-r, 0.0)) {
            Ok(v) => println!("E_0.5(-{r}) = {v:e}"),
            Err(e) => println!("E_0.5(-{r}) ERR {e}"),
        }
    }
}
