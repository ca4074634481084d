//! User placement and disk geometry.

use std::f64::consts::PI;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// User positions inside the square region `[0, L]^2`, each at least the
/// activation radius away from every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct UserLocations {
    positions: Vec<Point>,
    region_side: f64,
    radius: f64,
}

impl UserLocations {
    pub fn new(positions: Vec<Point>, region_side: f64, radius: f64) -> Result<Self> {
        check_geometry(positions.len(), region_side, radius)?;
        let (lo, hi) = (radius, region_side - radius);
        for (i, p) in positions.iter().enumerate() {
            if !(lo..=hi).contains(&p.x) || !(lo..=hi).contains(&p.y) {
                return Err(Error::config(
                    "positions",
                    format!("user {i} at ({}, {}) lies outside [{lo}, {hi}]^2", p.x, p.y),
                ));
            }
        }
        Ok(UserLocations {
            positions,
            region_side,
            radius,
        })
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn region_side(&self) -> f64 {
        self.region_side
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.positions[i].distance(&self.positions[j])
    }
}

fn check_geometry(n: usize, region_side: f64, radius: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::config("users", "at least one user is required"));
    }
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::config(
            "radius",
            format!("must be finite and >= 0, got {radius}"),
        ));
    }
    if !region_side.is_finite() || region_side <= 2.0 * radius {
        return Err(Error::config(
            "region_side",
            format!(
                "must exceed twice the radius ({}), got {region_side}",
                2.0 * radius
            ),
        ));
    }
    Ok(())
}

/// Places `n` users uniformly in `[0, L]^2` using the border method: any draw
/// closer than `radius` to an edge is redrawn. A zero radius disables the
/// border.
pub fn deploy_users(
    n: usize,
    region_side: f64,
    radius: f64,
    rng: &mut dyn RngCore,
) -> Result<UserLocations> {
    check_geometry(n, region_side, radius)?;
    let inside = |v: f64| v >= radius && v <= region_side - radius;
    let mut positions = Vec::with_capacity(n);
    while positions.len() < n {
        let p = Point::new(
            rng.random::<f64>() * region_side,
            rng.random::<f64>() * region_side,
        );
        if inside(p.x) && inside(p.y) {
            positions.push(p);
        }
    }
    Ok(UserLocations {
        positions,
        region_side,
        radius,
    })
}

/// Area of the lens formed by two disks of equal `radius` whose centres are
/// `distance` apart. Zero once the disks no longer overlap.
pub fn disk_intersection_area(distance: f64, radius: f64) -> f64 {
    if distance >= 2.0 * radius {
        return 0.0;
    }
    if distance <= 0.0 {
        return PI * radius * radius;
    }
    let r2 = radius * radius;
    let half = distance / 2.0;
    2.0 * r2 * (half / radius).acos() - half * (4.0 * r2 - distance * distance).sqrt()
}
