//! The constructions on diagrams with known serials.
use pisys::catalog::serial_gcm;
use pisys::principles::{self, StarCase};
use pisys::search::{verify, Certificate};

fn show(what: &str, r: pisys::Result<principles::PrincipleApplication>) {
    match r {
        Ok(app) => {
            let c = Certificate::from_principle(&app);
            println!("{what}: type {:?}, det {}, verified {}", app.predicted.edge_list(), app.predicted.det(), verify(&c).ok);
        }
        Err(e) => println!("{what}: {e}"),
    }
}

fn main() {
    let g = |s| serial_gcm(s).unwrap();
    show("A on G219", principles::apply_a(&g(219), 1, 0));
    show("B on G159 at the long root of G2", principles::apply_b_at(&g(159), &[1, 2, 3], 2));
    show("B on G160 at the short root of G2", principles::apply_b_at(&g(160), &[1, 2, 3], 2));
    show("C on B8++", principles::apply_c(&g(236), &[4, 5]));
    show("B then D on G163", principles::apply_b_then_d(&g(163), &[1, 2, 3], &[1, 0, 0], &[3]));
    show("E on G218", principles::apply_e(&g(218), 3, 4));
    for case in StarCase::ALL {
        let (ambient, _, _) = principles::star_data(case);
        show(&format!("star {case:?}"), principles::apply_star(&ambient, case));
    }
}
