use crate::ring::{rat, Ring};

/// Graded Lie polylogarithms `(l_0, l_1, l_2, l_3)` along one path.
#[derive(Clone, Debug, PartialEq)]
pub struct LiVector<R>(pub [R; 4]);

impl<R: Ring> LiVector<R> {
    pub fn zero() -> Self {
        LiVector([R::zero(), R::zero(), R::zero(), R::zero()])
    }

    pub fn plus(&self, o: &Self) -> Self {
        LiVector(std::array::from_fn(|j| self.0[j].plus(&o.0[j])))
    }

    pub fn scaled(&self, q: &crate::ring::Rational) -> Self {
        LiVector(std::array::from_fn(|j| self.0[j].scaled(q)))
    }
}

/// `a3 + b3 + ½(a0 b2 - b0 a2) + 1/12 (a0² b1 - a0 a1 b0 - a0 b0 b1 + a1 b0²)`.
pub fn p3<R: Ring>(a: &LiVector<R>, b: &LiVector<R>) -> R {
    let [a0, a1, a2, a3] = &a.0;
    let [b0, b1, b2, b3] = &b.0;
    let half = a0.times(b2).minus(&b0.times(a2)).scaled(&rat(1, 2));
    let twelfth = a0
        .times(a0)
        .times(b1)
        .minus(&a0.times(a1).times(b0))
        .minus(&a0.times(b0).times(b1))
        .plus(&a1.times(b0).times(b0))
        .scaled(&rat(1, 12));
    a3.plus(b3).plus(&half).plus(&twelfth)
}
