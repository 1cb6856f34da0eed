//! Benchmark fixtures shared by the criterion targets.

use ck_core::presentation::{parse_grp_file, EpiOverG, GroupPresentation};

pub fn trefoil_over_z() -> (GroupPresentation, EpiOverG) {
    let f = parse_grp_file(
        "group Z\ngens t\n\ngroup T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nepi Z : x -> t, y -> t",
    )
    .unwrap();
    let epi = f.resolve_epi(&f.epis[0]).unwrap();
    (f.group("T").unwrap().clone(), epi)
}

pub fn fiber_system() -> (GroupPresentation, EpiOverG) {
    let f = parse_grp_file(
        "group G\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n\
         group A\ngens x y t\nrel [x,t]\nrel [y,t]\nepi G : x -> x, y -> y, t -> [x,y]",
    )
    .unwrap();
    let epi = f.resolve_epi(&f.epis[0]).unwrap();
    (f.group("A").unwrap().clone(), epi)
}
