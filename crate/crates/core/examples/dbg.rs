use bandkit::core::standard::krasner;
use bandkit::schemes::{grassmannian, plucker_relations};
use bandkit::visualize::*;

fn main() {
    let t0 = std::time::Instant::now();
    let f1 = bandkit::core::standard::f1pm();
    let gr = grassmannian(2, 4, &f1).unwrap();
    eprintln!("charts {} pts {} {:?}", gr.charts.len(), gr.points.len(), t0.elapsed());
    let k = krasner();
    let ps = points(&gr, &k).unwrap();
    eprintln!("Gr(2,4)(K) = {} {:?}", ps.len(), t0.elapsed());
    let oracle = all_matroids(2, 4);
    eprintln!("oracle {} {:?}", oracle.len(), t0.elapsed());
    let (subsets, _) = plucker_relations(2, 4);
    let mut extracted: Vec<_> = (0..ps.len()).map(|p| matroid_from_point(&subsets, &gr, &ps, p, 4, 2).unwrap()).collect();
    extracted.sort();
    let os: std::collections::BTreeSet<_> = oracle.into_iter().collect();
    let es: std::collections::BTreeSet<_> = extracted.into_iter().collect();
    eprintln!("matroid sets equal: {} {:?}", os == es, t0.elapsed());
    let fine = fine_topology(&gr, &ps).unwrap();
    eprintln!("fine basis {} {:?}", fine.basis().len(), t0.elapsed());
    let tits = tits_space(&gr).unwrap();
    eprintln!("tits {} {:?}", tits.point_indices.len(), t0.elapsed());
    let ker = kernel_space(&gr, 6).unwrap();
    eprintln!("ker {} {:?}", ker.point_indices.len(), t0.elapsed());
    let chi = characteristic_map(&gr, &ps).unwrap();
    eprintln!("chi {} {:?}", chi.iter().collect::<std::collections::BTreeSet<_>>().len(), t0.elapsed());
}
