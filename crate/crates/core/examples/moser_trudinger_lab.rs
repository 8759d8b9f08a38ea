//! Both forms of the weighted Moser-Trudinger inequality on a seeded corpus,
//! in each of the three frames.

use cknmt::geometry::Frame;
use cknmt::mt_lab::{corpus, frame_transport, mt_check, mt_check_in, MtForm};

fn main() -> cknmt::Result<()> {
    let fns = corpus(7, 12);
    for alpha in [-0.5, 0.0, 1.0, 4.0] {
        let (mut plain_min, mut strong_min) = (f64::INFINITY, f64::INFINITY);
        for f in &fns {
            plain_min = plain_min.min(mt_check(alpha, f, MtForm::Plain)?.deficit);
            strong_min = strong_min.min(mt_check(alpha, f, MtForm::Strengthened)?.deficit);
        }
        println!("α={alpha:>4}: smallest deficit plain {plain_min:+.6e}, strengthened {strong_min:+.6e}");
    }

    let f = &fns[0];
    for frame in [Frame::Plane, Frame::Sphere, Frame::Cylinder] {
        let r = mt_check_in(1.0, f, MtForm::Strengthened, frame)?;
        println!("{frame:>8}: lhs {:.12}, rhs {:.12}", r.lhs_log, r.rhs_log);
    }
    println!("max frame discrepancy {:.2e}", frame_transport(1.0, f, MtForm::Strengthened)?.max_discrepancy);
    Ok(())
}
