//! Geographic coordinates and great-circle distances.

use serde::Serialize;

/// Mean Earth radius in kilometers (IUGG).
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// A latitude/longitude pair in decimal degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    /// Returns `None` unless `lat ∈ [-90, 90]` and `lon ∈ [-180, 180]`.
    pub fn new(lat: f64, lon: f64) -> Option<Self> {
        ((-90.0..=90.0).contains(&lat) && (-180.0..=180.0).contains(&lon))
            .then_some(Self { lat, lon })
    }
}

/// Haversine distance between two points, in kilometers.
pub fn great_circle_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let phi1 = a.lat.to_radians();
    let phi2 = b.lat.to_radians();
    let dphi = (b.lat - a.lat).to_radians();
    let dlambda = (b.lon - a.lon).to_radians();

    let h = (dphi / 2.0).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda / 2.0).sin().powi(2);
    let h = h.clamp(0.0, 1.0);
    // atan2 stays well conditioned near antipodes where asin(√h) does not.
    let c = 2.0 * h.sqrt().atan2((1.0 - h).sqrt());
    EARTH_RADIUS_KM * c
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(lat: f64, lon: f64) -> GeoPoint {
        GeoPoint::new(lat, lon).unwrap()
    }

    #[test]
    fn identical_points() {
        assert_eq!(great_circle_km(p(46.52, 6.63), p(46.52, 6.63)), 0.0);
    }

    #[test]
    fn antipodal_is_half_circumference() {
        let d = great_circle_km(p(0.0, 0.0), p(0.0, 180.0));
        assert!((d - PI * EARTH_RADIUS_KM).abs() < 1e-9);
    }

    #[test]
    fn quarter_circumference() {
        let d = great_circle_km(p(0.0, 0.0), p(0.0, 90.0));
        assert!((d - PI * EARTH_RADIUS_KM / 2.0).abs() < 1e-9);
        let pole = great_circle_km(p(0.0, 0.0), p(90.0, 0.0));
        assert!((pole - d).abs() < 1e-9);
    }

    #[test]
    fn london_paris_order_of_magnitude() {
        let d = great_circle_km(p(51.5074, -0.1278), p(48.8566, 2.3522));
        assert!((d - 344.0).abs() < 5.0);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(GeoPoint::new(95.0, 0.0).is_none());
        assert!(GeoPoint::new(0.0, -180.5).is_none());
        assert!(GeoPoint::new(f64::NAN, 0.0).is_none());
    }
}
