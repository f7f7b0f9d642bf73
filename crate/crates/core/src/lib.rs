//! Link-diagram calculus for germs of surfaces in R⁴.
//!
//! A surface germ is modeled by the knot or link it cuts out of a small
//! sphere, decorated with metric data: bridge sites carrying exponents
//! `(q, β)` and pinch pairs of arcs with tangency order above one. The crate
//! implements the constructions on these decorated links (bridge breaking,
//! twisting, knot attachment, tangent cones, the universal germ `X_K`) and
//! certifies that two germs are *not* ambient Lipschitz equivalent by
//! comparing invariants of derived links.

pub mod arc;
pub mod certify;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod gauss;
pub mod germ;
pub mod invariants;
pub mod poly;
pub mod random;
pub mod rational;
pub mod reidemeister;
pub mod render;

pub use crate::arc::{PuiseuxArc, Tord};
pub use crate::certify::{Certificate, Method, Verdict, VerdictKind};
pub use crate::diagram::{Crossing, Edge, Face, LinkDiagram};
pub use crate::error::{Error, Result};
pub use crate::germ::{BridgeSite, Germ, PinchPair, PinchedLink};
pub use crate::invariants::Profile;
pub use crate::poly::LaurentPoly;
pub use crate::rational::Rational;
