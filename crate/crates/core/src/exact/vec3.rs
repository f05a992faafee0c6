use std::ops::{Add, Neg, Sub};


use super::Scalar;

/// Homogeneous coordinate vector over an exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S> Vec3<S> {
    pub const fn new(x: S, y: S, z: S) -> Self {
        Vec3 { x, y, z }
    }

    pub fn coords(&self) -> [&S; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Vec3<T> {
        Vec3::new(f(&self.x), f(&self.y), f(&self.z))
    }
}

impl<S: Scalar> Vec3<S> {
    pub fn zero() -> Self {
        Vec3::new(S::zero(), S::zero(), S::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|c| k.clone() * c.clone())
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Vec3<S>;

    fn add(self, rhs: Self) -> Self {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Vec3<S>;

    fn sub(self, rhs: Self) -> Self {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Vec3<S>;

    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

fn mul<S: Scalar>(a: &S, b: &S) -> S {
    a.clone() * b.clone()
}

/// Standard cross product. Used both as the line through two points and as
/// the intersection point of two lines.
pub fn cross<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    Vec3::new(
        mul(&a.y, &b.z) - mul(&a.z, &b.y),
        mul(&a.z, &b.x) - mul(&a.x, &b.z),
        mul(&a.x, &b.y) - mul(&a.y, &b.x),
    )
}

pub fn dot<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> S {
    mul(&a.x, &b.x) + mul(&a.y, &b.y) + mul(&a.z, &b.z)
}

/// Determinant of the 3x3 matrix with columns `a, b, c`, by the Leibniz
/// expansion (kept separate from `dot(a, cross(b, c))` so the two can check
/// each other).
pub fn det3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>) -> S {
    let pos = mul(&mul(&a.x, &b.y), &c.z) + mul(&mul(&b.x, &c.y), &a.z) + mul(&mul(&c.x, &a.y), &b.z);
    let neg = mul(&mul(&a.x, &c.y), &b.z) + mul(&mul(&b.x, &a.y), &c.z) + mul(&mul(&c.x, &b.y), &a.z);
    pos - neg
}
