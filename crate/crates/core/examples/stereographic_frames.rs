//! The weighted stereographic map between plane and sphere, the probability
//! measure in all three frames, and the gradient identity on the sphere.

use cknmt::geometry::{
    gradient_identity_check, integrate_measure, sigma_alpha, sigma_alpha_inv, Frame, FrameFn, MeasureSpec,
    PolarPoint,
};
use cknmt::mt_lab::{corpus, OnSphere};

fn main() -> cknmt::Result<()> {
    let alpha = 1.5;
    for r in [0.01, 1.0, 100.0] {
        let x = PolarPoint::new(r, 0.4);
        let s = sigma_alpha(alpha, x);
        let back = sigma_alpha_inv(alpha, s)?;
        println!("r={r:<6} -> z={:+.12} -> r={:.15}", s.z(), back.r);
    }

    for frame in [Frame::Plane, Frame::Sphere, Frame::Cylinder] {
        let m = MeasureSpec::new(frame, alpha)?;
        let one = match frame {
            Frame::Plane => FrameFn::Plane(&|_| 1.0),
            Frame::Sphere => FrameFn::Sphere(&|_| 1.0),
            Frame::Cylinder => FrameFn::Cylinder(&|_| 1.0),
        };
        println!("{frame:>8}: total mass {:.15}", integrate_measure(&m, one, 1e-12)?);
    }

    let f = &corpus(1, 1)[0];
    let (plane, sphere) = gradient_identity_check(alpha, &OnSphere::new(alpha, f), 1e-10)?;
    println!("gradient energy: plane {plane:.12}, sphere {sphere:.12}");
    Ok(())
}
