//! Closed-form values shared by the integration targets.

use std::f64::consts::PI;

/// (class label, starlike T22, starlike T31, convex T22, convex T31)
pub fn expected_table() -> Vec<(&'static str, f64, f64, f64, f64)> {
    let b1 = 8.0 / (PI * PI);
    let b2 = 16.0 / (3.0 * PI * PI);
    let s = b1 * b1 + b2;
    vec![
        ("janowski[A=1;B=-1]", 13.0, 24.0, 2.0, 4.0),
        (
            "exp[alpha=0]",
            25.0 / 16.0,
            63.0 / 16.0,
            5.0 / 16.0,
            25.0 / 16.0,
        ),
        (
            "cardioid",
            265.0 / 81.0,
            200.0 / 27.0,
            445.0 / 729.0,
            1520.0 / 729.0,
        ),
        ("sine", 5.0 / 4.0, 15.0 / 4.0, 5.0 / 18.0, 14.0 / 9.0),
        ("lune", 25.0 / 16.0, 63.0 / 16.0, 5.0 / 16.0, 25.0 / 16.0),
        (
            "parabolic",
            s * s / 4.0 + b1 * b1,
            1.0 + 2.0 * b1 * b1 + s * (3.0 * b1 * b1 - b2) / 4.0,
            s * s / 36.0 + b1 * b1 / 4.0,
            1.0 + b1 * b1 / 2.0 + s * (2.0 * b1 * b1 - b2) / 36.0,
        ),
        (
            "limacon",
            57.0 / 16.0,
            135.0 / 16.0,
            97.0 / 144.0,
            323.0 / 144.0,
        ),
        ("nephroid", 5.0 / 4.0, 15.0 / 4.0, 5.0 / 18.0, 14.0 / 9.0),
    ]
}
