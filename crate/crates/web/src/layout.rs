use ifpart::{Adjacency, PlaneGraph};

const SWEEPS: usize = 400;

/// Tutte's barycentric drawing: outer-face vertices on the unit circle, every
/// other vertex at the mean of its neighbors (Gauss-Seidel sweeps).
pub fn tutte_layout(g: &PlaneGraph) -> Vec<(f64, f64)> {
    let n = g.vertex_count();
    let mut ring: Vec<usize> = Vec::new();
    for &v in &g.outer_face().boundary {
        if !ring.contains(&v) {
            ring.push(v);
        }
    }
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let k = ring.len() as f64;
    for (i, &v) in ring.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / k;
        pos[v] = (a.cos(), -a.sin());
        fixed[v] = true;
    }
    for _ in 0..SWEEPS {
        for v in (0..n).filter(|&v| !fixed[v]) {
            let nb = g.neighbors(v);
            let (sx, sy) = nb.iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            pos[v] = (sx / nb.len() as f64, sy / nb.len() as f64);
        }
    }
    pos
}
