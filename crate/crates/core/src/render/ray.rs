//! Ray-primitive intersection tests.

use nalgebra::Vector3;

/// Smallest nonnegative ray parameter at which the ray touches the capsule
/// with segment `a`–`b` and the given radius, or `None` on a miss. A
/// degenerate segment (`a == b`) is a sphere. A ray starting inside the
/// capsule reports the exit distance.
pub fn ray_capsule_intersect(
    origin: &Vector3<f64>,
    direction: &Vector3<f64>,
    a: &Vector3<f64>,
    b: &Vector3<f64>,
    radius: f64,
) -> Option<f64> {
    debug_assert!((direction.norm() - 1.0).abs() <= 1e-9, "direction must be unit");
    debug_assert!(radius > 0.0);

    let mut best: Option<f64> = None;
    let mut consider = |t: Option<f64>| {
        if let Some(t) = t {
            best = Some(match best {
                Some(b) if b <= t => b,
                _ => t,
            });
        }
    };

    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 > 0.0 {
        // infinite cylinder, restricted to the segment span
        let m = origin - a;
        let nd = direction.dot(&ab);
        let md = m.dot(&ab);
        let n_perp = direction - ab * (nd / len2);
        let m_perp = m - ab * (md / len2);
        let qa = n_perp.norm_squared();
        let qb = 2.0 * m_perp.dot(&n_perp);
        let qc = m_perp.norm_squared() - radius * radius;
        if qa > 1e-30 {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                    if t >= 0.0 {
                        let u = (md + t * nd) / len2;
                        if (0.0..=1.0).contains(&u) {
                            consider(Some(t));
                            break; // roots are ascending; first valid is nearest
                        }
                    }
                }
            }
        }
    }

    consider(ray_sphere(origin, direction, a, radius));
    if len2 > 0.0 {
        consider(ray_sphere(origin, direction, b, radius));
    }
    best
}

/// Smallest nonnegative parameter at which the ray hits the sphere.
pub fn ray_sphere(
    origin: &Vector3<f64>,
    direction: &Vector3<f64>,
    center: &Vector3<f64>,
    radius: f64,
) -> Option<f64> {
    let m = origin - center;
    let qb = 2.0 * m.dot(direction);
    let qc = m.norm_squared() - radius * radius;
    let disc = qb * qb - 4.0 * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t0 = (-qb - sq) / 2.0;
    if t0 >= 0.0 {
        return Some(t0);
    }
    let t1 = (-qb + sq) / 2.0;
    (t1 >= 0.0).then_some(t1)
}
