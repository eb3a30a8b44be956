//! The doubled-edge path graph, label vectors on it, and validation.
//!
//! `DPath(m, n)` is a path `a_m - ... - a_1 = b_1 - ... - b_n` whose middle
//! edge `a_1 b_1` is doubled. An arithmetical structure assigns a positive
//! integer to every vertex such that each label divides the sum of its
//! neighbors' labels (the doubled edge counts the opposite junction label
//! twice) and the labels as a whole are coprime. Equivalently, with
//! `d_i = neighbor_sum_i / label_i`, the matrix `diag(d) - A` annihilates the
//! label vector.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The pair (m, n) identifying the graph: `m` vertices on the a-arm, `n` on
/// the b-arm, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Shape {
    m: u32,
    n: u32,
}

impl Shape {
    pub fn new(m: u32, n: u32) -> Result<Self, StructureError> {
        if m == 0 || n == 0 {
            return Err(StructureError::EmptyArm);
        }
        Ok(Shape { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> u32 {
        self.m + self.n
    }

    /// The mirrored shape (n, m).
    pub fn transpose(&self) -> Shape {
        Shape {
            m: self.n,
            n: self.m,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DPath({},{})", self.m, self.n)
    }
}

/// A vertex named the way the labels are ordered: `A(i)` is `a_i`, `B(i)` is
/// `b_i`, both 1-based from the junction outward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    A(usize),
    B(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::A(i) => write!(f, "a{i}"),
            Vertex::B(i) => write!(f, "b{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("each arm needs at least one vertex")]
    EmptyArm,
    #[error("label at {vertex} must be positive")]
    NonPositiveLabel { vertex: Vertex },
    #[error("divisibility violation at {vertex}: {label} does not divide neighbor sum {neighbor_sum}")]
    DivisibilityViolation {
        vertex: Vertex,
        label: BigUint,
        neighbor_sum: BigUint,
    },
    #[error("labels share a nontrivial common factor {gcd}")]
    GcdViolation { gcd: BigUint },
    #[error("vertex {vertex} out of range for {shape}")]
    InvalidVertex { vertex: Vertex, shape: Shape },
    #[error("shape ({m},{n}) does not match label arrays of lengths ({a_len},{b_len})")]
    ShapeMismatch {
        m: u32,
        n: u32,
        a_len: usize,
        b_len: usize,
    },
    #[error("d-vector has {got} entries, expected {expected}")]
    DVectorLength { expected: usize, got: usize },
    #[error("arm end label {label} is not 1 or 2; canonical structures cannot do this")]
    EndpointInvariant { label: BigUint },
}

/// A validated, canonical arithmetical structure: positive labels, every
/// divisibility condition satisfied, overall gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArithStructure {
    shape: Shape,
    a: Vec<BigUint>,
    b: Vec<BigUint>,
}

/// The quotient vector `d_i = neighbor_sum_i / label_i`, ordered
/// `a_1..a_m, b_1..b_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DVector {
    shape: Shape,
    values: Vec<BigUint>,
}

impl DVector {
    pub fn new(shape: Shape, values: Vec<BigUint>) -> Result<Self, StructureError> {
        let expected = shape.vertices() as usize;
        if values.len() != expected {
            return Err(StructureError::DVectorLength {
                expected,
                got: values.len(),
            });
        }
        Ok(DVector { shape, values })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// All m + n quotients, a-arm first.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn a_values(&self) -> &[BigUint] {
        &self.values[..self.shape.m as usize]
    }

    pub fn b_values(&self) -> &[BigUint] {
        &self.values[self.shape.m as usize..]
    }
}

/// Neighbor sum over raw label slices; the doubled edge contributes the
/// opposite junction label twice. With m = 1 the junction's whole sum is
/// `2 b_1`.
fn neighbor_sum_raw(a: &[BigUint], b: &[BigUint], vertex: Vertex) -> Option<BigUint> {
    let arm_sum = |arm: &[BigUint], other_junction: &BigUint, i: usize| -> Option<BigUint> {
        if i == 0 || i > arm.len() {
            return None;
        }
        let idx = i - 1;
        let mut sum = BigUint::zero();
        if idx == 0 {
            sum += other_junction * 2u32;
        } else {
            sum += &arm[idx - 1];
        }
        if idx + 1 < arm.len() {
            sum += &arm[idx + 1];
        }
        Some(sum)
    };
    match vertex {
        Vertex::A(i) => arm_sum(a, &b[0], i),
        Vertex::B(i) => arm_sum(b, &a[0], i),
    }
}

/// Sum of the labels adjacent to `vertex`, counting the doubled edge twice.
pub fn neighbor_sum(s: &ArithStructure, vertex: Vertex) -> Result<BigUint, StructureError> {
    neighbor_sum_raw(&s.a, &s.b, vertex).ok_or(StructureError::InvalidVertex {
        vertex,
        shape: s.shape,
    })
}

fn all_vertices(m: usize, n: usize) -> impl Iterator<Item = Vertex> {
    (1..=m).map(Vertex::A).chain((1..=n).map(Vertex::B))
}

fn label_at<'l>(a: &'l [BigUint], b: &'l [BigUint], v: Vertex) -> &'l BigUint {
    match v {
        Vertex::A(i) => &a[i - 1],
        Vertex::B(i) => &b[i - 1],
    }
}

/// Divisibility part of validation: positive labels, each dividing its
/// neighbor sum. Returns the quotients in vertex order. Does not look at the
/// gcd, so `canonicalize` can reuse it on unreduced labels.
fn check_divisibility(a: &[BigUint], b: &[BigUint]) -> Result<Vec<BigUint>, StructureError> {
    if a.is_empty() || b.is_empty() {
        return Err(StructureError::EmptyArm);
    }
    for v in all_vertices(a.len(), b.len()) {
        if label_at(a, b, v).is_zero() {
            return Err(StructureError::NonPositiveLabel { vertex: v });
        }
    }
    let mut quotients = Vec::with_capacity(a.len() + b.len());
    for v in all_vertices(a.len(), b.len()) {
        let label = label_at(a, b, v);
        let sum = neighbor_sum_raw(a, b, v).expect("vertex enumerated in range");
        let (q, r) = sum.div_rem(label);
        if !r.is_zero() {
            return Err(StructureError::DivisibilityViolation {
                vertex: v,
                label: label.clone(),
                neighbor_sum: sum,
            });
        }
        quotients.push(q);
    }
    Ok(quotients)
}

fn labels_gcd(a: &[BigUint], b: &[BigUint]) -> BigUint {
    let mut g = BigUint::zero();
    for x in a.iter().chain(b.iter()) {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Full validation: divisibility at every vertex, then global coprimality.
/// On success returns the d-vector, which satisfies `(diag(d) - A) r = 0`.
pub fn validate(a: &[BigUint], b: &[BigUint]) -> Result<DVector, StructureError> {
    let quotients = check_divisibility(a, b)?;
    let g = labels_gcd(a, b);
    if !g.is_one() {
        return Err(StructureError::GcdViolation { gcd: g });
    }
    let shape = Shape::new(a.len() as u32, b.len() as u32)?;
    Ok(DVector {
        shape,
        values: quotients,
    })
}

/// Divide all labels by their common gcd, producing the canonical structure.
/// Idempotent; divisibility is scale-invariant so it is checked on the raw
/// input.
pub fn canonicalize(a: &[BigUint], b: &[BigUint]) -> Result<ArithStructure, StructureError> {
    check_divisibility(a, b)?;
    let g = labels_gcd(a, b);
    let reduce = |arm: &[BigUint]| arm.iter().map(|x| x / &g).collect::<Vec<_>>();
    ArithStructure::new(reduce(a), reduce(b))
}

/// Exact check that `(diag(d) - A) r = 0`, entrywise:
/// `d_i * r_i == neighbor_sum_i` for every vertex.
pub fn laplacian_check(s: &ArithStructure, d: &DVector) -> bool {
    if d.shape != s.shape {
        return false;
    }
    all_vertices(s.a.len(), s.b.len())
        .zip(d.values.iter())
        .all(|(v, dv)| {
            let sum = neighbor_sum_raw(&s.a, &s.b, v).expect("vertex in range");
            dv * label_at(&s.a, &s.b, v) == sum
        })
}

impl ArithStructure {
    /// Validate `a`, `b` as a canonical arithmetical structure and take
    /// ownership of the labels.
    pub fn new(a: Vec<BigUint>, b: Vec<BigUint>) -> Result<Self, StructureError> {
        validate(&a, &b)?;
        let shape = Shape::new(a.len() as u32, b.len() as u32)?;
        Ok(ArithStructure { shape, a, b })
    }

    /// Convenience constructor from plain integers, mostly for tests.
    pub fn from_u64(a: &[u64], b: &[u64]) -> Result<Self, StructureError> {
        Self::new(
            a.iter().copied().map(BigUint::from).collect(),
            b.iter().copied().map(BigUint::from).collect(),
        )
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn a_labels(&self) -> &[BigUint] {
        &self.a
    }

    pub fn b_labels(&self) -> &[BigUint] {
        &self.b
    }

    pub fn label(&self, vertex: Vertex) -> Result<&BigUint, StructureError> {
        let in_range = match vertex {
            Vertex::A(i) => i >= 1 && i <= self.a.len(),
            Vertex::B(i) => i >= 1 && i <= self.b.len(),
        };
        if !in_range {
            return Err(StructureError::InvalidVertex {
                vertex,
                shape: self.shape,
            });
        }
        Ok(label_at(&self.a, &self.b, vertex))
    }

    /// Junction labels `(a_1, b_1)`.
    pub fn junction(&self) -> (&BigUint, &BigUint) {
        (&self.a[0], &self.b[0])
    }

    /// End labels `(a_m, b_n)`.
    pub fn ends(&self) -> (&BigUint, &BigUint) {
        (self.a.last().unwrap(), self.b.last().unwrap())
    }

    /// The d-vector. Structures are valid by construction, so this cannot
    /// fail.
    pub fn d_vector(&self) -> DVector {
        validate(&self.a, &self.b).expect("structure validated at construction")
    }

    /// Swap the two arms, giving a structure on the transposed shape.
    pub fn mirror(&self) -> ArithStructure {
        ArithStructure {
            shape: self.shape.transpose(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

// Deterministic order for streams and set merges: shape, then junction pair,
// then the full label sequences.
impl Ord for ArithStructure {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.shape, &self.a[0], &self.b[0], &self.a, &self.b).cmp(&(
            other.shape,
            &other.a[0],
            &other.b[0],
            &other.a,
            &other.b,
        ))
    }
}

impl PartialOrd for ArithStructure {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ArithStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |arm: &[BigUint]| {
            arm.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({} | {})", join(&self.a), join(&self.b))
    }
}

/// The scaled representative with `a_m = 2`: the canonical structure itself
/// when its end label is already 2, or the whole structure doubled when the
/// end label is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoForm {
    a: Vec<BigUint>,
    b: Vec<BigUint>,
}

impl RhoForm {
    pub fn a_labels(&self) -> &[BigUint] {
        &self.a
    }

    pub fn b_labels(&self) -> &[BigUint] {
        &self.b
    }

    pub fn junction(&self) -> (&BigUint, &BigUint) {
        (&self.a[0], &self.b[0])
    }

    /// Reduce back to the canonical structure.
    pub fn canonical(&self) -> ArithStructure {
        canonicalize(&self.a, &self.b).expect("rho form is a scaled valid structure")
    }
}

/// Scale a canonical structure so that `a_m = 2`. A canonical end label other
/// than 1 or 2 would contradict the endpoint invariant and is reported as an
/// error rather than silently accepted.
pub fn rho_form(s: &ArithStructure) -> Result<RhoForm, StructureError> {
    let end = s.a.last().unwrap();
    if *end == BigUint::from(2u32) {
        return Ok(RhoForm {
            a: s.a.clone(),
            b: s.b.clone(),
        });
    }
    if end.is_one() {
        let double = |arm: &[BigUint]| arm.iter().map(|x| x * 2u32).collect::<Vec<_>>();
        return Ok(RhoForm {
            a: double(&s.a),
            b: double(&s.b),
        });
    }
    Err(StructureError::EndpointInvariant { label: end.clone() })
}

fn biguint_to_number(x: &BigUint) -> serde_json::Number {
    x.to_string()
        .parse()
        .expect("decimal digits parse as a JSON number")
}

fn number_to_biguint(n: &serde_json::Number) -> Result<BigUint, String> {
    let s = n.to_string();
    if s.contains(['-', '.', 'e', 'E']) {
        return Err(format!("label {s} is not a nonnegative integer"));
    }
    s.parse()
        .map_err(|e| format!("label {s} is not an integer: {e}"))
}

// Wire format, field order fixed: {"m":3,"n":2,"a":[6,4,2],"b":[13,1]}.
impl Serialize for ArithStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let nums = |arm: &[BigUint]| arm.iter().map(biguint_to_number).collect::<Vec<_>>();
        let mut st = serializer.serialize_struct("ArithStructure", 4)?;
        st.serialize_field("m", &self.shape.m)?;
        st.serialize_field("n", &self.shape.n)?;
        st.serialize_field("a", &nums(&self.a))?;
        st.serialize_field("b", &nums(&self.b))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ArithStructure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            m: u32,
            n: u32,
            a: Vec<serde_json::Number>,
            b: Vec<serde_json::Number>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.m as usize != wire.a.len() || wire.n as usize != wire.b.len() {
            return Err(D::Error::custom(
                StructureError::ShapeMismatch {
                    m: wire.m,
                    n: wire.n,
                    a_len: wire.a.len(),
                    b_len: wire.b.len(),
                }
                .to_string(),
            ));
        }
        let convert = |arm: &[serde_json::Number]| -> Result<Vec<BigUint>, D::Error> {
            arm.iter()
                .map(|n| number_to_biguint(n).map_err(D::Error::custom))
                .collect()
        };
        ArithStructure::new(convert(&wire.a)?, convert(&wire.b)?)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
