use proptest::prelude::*;
use superhom::scoring::{cech_score, half_diameter, min_enclosing_ball, vr_score, PointCloud};

fn cloud() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 2), 1..7)
}

/// Smallest enclosing circle by trying every circle through two or three of
/// the points.
fn brute_force_radius(p: &[Vec<f64>]) -> f64 {
    if p.len() == 1 {
        return 0.0;
    }
    let covers = |c: (f64, f64), r: f64| {
        p.iter()
            .all(|q| (q[0] - c.0).hypot(q[1] - c.1) <= r * (1.0 + 1e-9) + 1e-9)
    };
    let mut best = f64::INFINITY;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let c = ((p[i][0] + p[j][0]) / 2.0, (p[i][1] + p[j][1]) / 2.0);
            let r = (p[i][0] - c.0).hypot(p[i][1] - c.1);
            if covers(c, r) {
                best = best.min(r);
            }
            for k in j + 1..p.len() {
                let (ax, ay, bx, by, cx, cy) =
                    (p[i][0], p[i][1], p[j][0], p[j][1], p[k][0], p[k][1]);
                let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
                if d.abs() < 1e-12 {
                    continue;
                }
                let (a2, b2, c2) = (ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy);
                let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
                let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
                let r = (ax - ux).hypot(ay - uy);
                if covers((ux, uy), r) {
                    best = best.min(r);
                }
            }
        }
    }
    best
}

proptest! {
    #[test]
    fn cech_matches_brute_force_circle(points in cloud()) {
        let n = points.len();
        let pc = PointCloud::from_rows(points.clone()).unwrap();
        let vertices: Vec<usize> = (0..n).collect();
        let cech = cech_score(&vertices, &pc).unwrap();
        let oracle = brute_force_radius(&points);
        prop_assert!((cech - oracle).abs() <= 1e-7 * (1.0 + oracle), "{} vs {}", cech, oracle);
        let (center, r) = min_enclosing_ball(&points);
        for p in &points {
            let d = ((p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2)).sqrt();
            prop_assert!(d <= r + 1e-7);
        }
    }

    #[test]
    fn vr_bounds_cech(points in cloud()) {
        let n = points.len();
        let pc = PointCloud::from_rows(points.clone()).unwrap();
        let vertices: Vec<usize> = (0..n).collect();
        let vr = vr_score(&vertices, &pc).unwrap();
        let cech = cech_score(&vertices, &pc).unwrap();
        prop_assert!((vr - half_diameter(&points)).abs() < 1e-12);
        prop_assert!(vr <= cech + 1e-9);
        // Jung's theorem in the plane.
        prop_assert!(cech <= vr * 2.0 / 3f64.sqrt() + 1e-9);
    }

    #[test]
    fn scores_are_monotone(points in cloud()) {
        let pc = PointCloud::from_rows(points.clone()).unwrap();
        let n = points.len();
        for k in 1..n {
            let small: Vec<usize> = (0..k).collect();
            let large: Vec<usize> = (0..=k).collect();
            prop_assert!(vr_score(&small, &pc).unwrap() <= vr_score(&large, &pc).unwrap());
            prop_assert!(cech_score(&small, &pc).unwrap() <= cech_score(&large, &pc).unwrap() + 1e-9);
        }
    }
}
