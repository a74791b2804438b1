//! Vectors, generator matrices and linear codes over GF(q).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// A vector over GF(q). Binary vectors also carry a bit-packed copy so that
/// weights and distances reduce to XOR and popcount.
#[derive(Clone)]
pub struct FqVector {
    field: Field,
    elems: Vec<Elem>,
    packed: Option<Vec<u64>>,
}

pub(crate) fn pack(elems: &[Elem]) -> Vec<u64> {
    let mut words = vec![0u64; elems.len().div_ceil(64)];
    for (i, &e) in elems.iter().enumerate() {
        if e != 0 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

impl FqVector {
    pub fn new(field: &Field, elems: Vec<Elem>) -> Result<FqVector> {
        for &e in &elems {
            field.check(e as u64)?;
        }
        Ok(Self::from_trusted(field, elems))
    }

    pub fn from_u64s(field: &Field, values: &[u64]) -> Result<FqVector> {
        let elems = values
            .iter()
            .map(|&v| field.check(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(field, elems))
    }

    pub(crate) fn from_trusted(field: &Field, elems: Vec<Elem>) -> FqVector {
        let packed = (field.q() == 2).then(|| pack(&elems));
        FqVector {
            field: field.clone(),
            elems,
            packed,
        }
    }

    pub fn zeros(field: &Field, n: usize) -> FqVector {
        Self::from_trusted(field, vec![0; n])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<Elem> {
        self.elems
    }

    pub(crate) fn packed(&self) -> Option<&[u64]> {
        self.packed.as_deref()
    }

    /// A copy with coordinate `j` replaced by `value`.
    pub fn with_entry(&self, j: usize, value: Elem) -> FqVector {
        let mut elems = self.elems.clone();
        elems[j] = value;
        Self::from_trusted(&self.field, elems)
    }

    fn compatible(&self, other: &FqVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FqVector) -> Result<FqVector> {
        self.compatible(other)?;
        let f = &self.field;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Self::from_trusted(f, elems))
    }

    pub fn sub(&self, other: &FqVector) -> Result<FqVector> {
        self.compatible(other)?;
        let f = &self.field;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Self::from_trusted(f, elems))
    }

    pub fn scale(&self, alpha: Elem) -> FqVector {
        let f = &self.field;
        let elems = self.elems.iter().map(|&a| f.mul(alpha, a)).collect();
        Self::from_trusted(f, elems)
    }

    /// Each coordinate repeated `times` times in place: `(a, b)` becomes
    /// `(a, a, a, b, b, b)` for `times = 3`.
    pub fn replicate(&self, times: usize) -> FqVector {
        let elems = self
            .elems
            .iter()
            .flat_map(|&e| std::iter::repeat_n(e, times))
            .collect();
        Self::from_trusted(&self.field, elems)
    }

    pub fn concat(&self, other: &FqVector) -> Result<FqVector> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        Ok(Self::from_trusted(&self.field, elems))
    }
}

impl PartialEq for FqVector {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elems == other.elems
    }
}

impl Eq for FqVector {}

impl PartialOrd for FqVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the element encodings.
impl Ord for FqVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elems.cmp(&other.elems)
    }
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.elems)
    }
}

pub fn hamming_weight(v: &FqVector) -> usize {
    match v.packed() {
        Some(words) => words.iter().map(|w| w.count_ones() as usize).sum(),
        None => v.elems.iter().filter(|&&e| e != 0).count(),
    }
}

pub fn hamming_distance(u: &FqVector, v: &FqVector) -> Result<usize> {
    u.compatible(v)?;
    Ok(match (u.packed(), v.packed()) {
        (Some(a), Some(b)) => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x ^ y).count_ones() as usize)
            .sum(),
        _ => u.elems.iter().zip(&v.elems).filter(|(a, b)| a != b).count(),
    })
}

/// The unpacked reference paths, kept for checking the packed ones.
pub fn hamming_weight_generic(v: &FqVector) -> usize {
    v.elems.iter().filter(|&&e| e != 0).count()
}

pub fn hamming_distance_generic(u: &FqVector, v: &FqVector) -> Result<usize> {
    u.compatible(v)?;
    Ok(u.elems.iter().zip(&v.elems).filter(|(a, b)| a != b).count())
}

/// A k×n matrix over GF(q), stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct GenMatrix {
    field: Field,
    n: usize,
    rows: Vec<FqVector>,
}

impl GenMatrix {
    pub fn new(field: &Field, n: usize, rows: Vec<FqVector>) -> Result<GenMatrix> {
        for row in &rows {
            if row.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.q(),
                    right: row.field().q(),
                });
            }
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(GenMatrix {
            field: field.clone(),
            n,
            rows,
        })
    }

    pub fn from_rows(field: &Field, rows: &[&[u64]]) -> Result<GenMatrix> {
        let n = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| FqVector::from_u64s(field, r))
            .collect::<Result<Vec<_>>>()?;
        GenMatrix::new(field, n, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[FqVector] {
        &self.rows
    }

    /// Message-by-matrix product.
    pub fn combine(&self, message: &[Elem]) -> Result<FqVector> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: message.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![0; self.n];
        for (&coef, row) in message.iter().zip(&self.rows) {
            if coef == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row.elems()) {
                *o = f.add(*o, f.mul(coef, r));
            }
        }
        Ok(FqVector::from_trusted(f, out))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &GenMatrix) -> Result<GenMatrix> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: other.k(),
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect::<Result<Vec<_>>>()?;
        GenMatrix::new(&self.field, self.n + other.n, rows)
    }

    pub fn replicate_columns(&self, times: usize) -> GenMatrix {
        GenMatrix {
            field: self.field.clone(),
            n: self.n * times,
            rows: self.rows.iter().map(|r| r.replicate(times)).collect(),
        }
    }
}

impl fmt::Debug for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}x{} ", self.field, self.k(), self.n)?;
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.elems()))
            .finish()
    }
}

/// Reduced row echelon form and rank. Pivots are taken in the leftmost
/// column that still has a nonzero entry, from the topmost such row.
pub fn rref_rank(mat: &GenMatrix) -> (GenMatrix, usize) {
    let f = mat.field();
    let mut rows: Vec<Vec<Elem>> = mat.rows.iter().map(|r| r.elems.clone()).collect();
    let mut rank = 0;
    for col in 0..mat.n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
        for e in rows[rank].iter_mut() {
            *e = f.mul(inv, *e);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if r == rank || factor == 0 {
                continue;
            }
            for (e, &p) in row.iter_mut().zip(&pivot_row) {
                *e = f.sub(*e, f.mul(factor, p));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| FqVector::from_trusted(f, r))
        .collect();
    (
        GenMatrix {
            field: f.clone(),
            n: mat.n,
            rows,
        },
        rank,
    )
}

/// A linear code given by a full-rank generator matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    gen: GenMatrix,
    rank: usize,
}

impl LinearCode {
    pub fn new(gen: GenMatrix) -> Result<LinearCode> {
        let (_, rank) = rref_rank(&gen);
        if rank != gen.k() {
            return Err(Error::NotFullRank { rank, k: gen.k() });
        }
        Ok(LinearCode { gen, rank })
    }

    pub fn gen(&self) -> &GenMatrix {
        &self.gen
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn q(&self) -> u64 {
        self.gen.field().q() as u64
    }

    pub fn k(&self) -> usize {
        self.gen.k()
    }

    pub fn n(&self) -> usize {
        self.gen.n()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True iff `x` lies in the row space: appending it does not raise the rank.
    pub fn contains(&self, x: &FqVector) -> Result<bool> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        let mut rows = self.gen.rows.clone();
        rows.push(x.clone());
        let extended = GenMatrix::new(self.field(), self.n(), rows)?;
        Ok(rref_rank(&extended).1 == self.rank)
    }
}

pub fn encode(code: &LinearCode, message: &FqVector) -> Result<FqVector> {
    if message.field() != code.field() {
        return Err(Error::FieldMismatch {
            left: code.field().q(),
            right: message.field().q(),
        });
    }
    code.gen.combine(message.elems())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    fn vec_of(q: u64, v: &[u64]) -> FqVector {
        FqVector::from_u64s(&gf(q), v).unwrap()
    }

    #[test]
    fn encode_examples() {
        let f2 = gf(2);
        let c =
            LinearCode::new(GenMatrix::from_rows(&f2, &[&[1, 0, 1], &[0, 1, 1]]).unwrap()).unwrap();
        assert_eq!(
            encode(&c, &vec_of(2, &[1, 1])).unwrap(),
            vec_of(2, &[1, 1, 0])
        );
        assert_eq!(
            encode(&c, &vec_of(2, &[0, 0])).unwrap(),
            vec_of(2, &[0, 0, 0])
        );

        let f3 = gf(3);
        let c = LinearCode::new(GenMatrix::from_rows(&f3, &[&[1, 1, 1]]).unwrap()).unwrap();
        assert_eq!(encode(&c, &vec_of(3, &[2])).unwrap(), vec_of(3, &[2, 2, 2]));
        assert!(matches!(
            encode(&c, &vec_of(3, &[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let f5 = gf(5);
        let id = GenMatrix::from_rows(&f5, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(rref_rank(&id).1, 3);
        let dup = GenMatrix::from_rows(&f5, &[&[1, 2, 3], &[1, 2, 3]]).unwrap();
        assert_eq!(rref_rank(&dup).1, 1);
        let m = GenMatrix::from_rows(&gf(2), &[&[1, 1], &[1, 1], &[0, 1]]).unwrap();
        let (reduced, rank) = rref_rank(&m);
        assert_eq!(rank, 2);
        assert_eq!(reduced.rows()[0].elems(), &[1, 0]);
        assert_eq!(reduced.rows()[1].elems(), &[0, 1]);
        assert_eq!(reduced.rows()[2].elems(), &[0, 0]);
        // input untouched
        assert_eq!(m.rows()[0].elems(), &[1, 1]);
    }

    #[test]
    fn rref_over_gf4() {
        let f4 = gf(4);
        let m = GenMatrix::from_rows(&f4, &[&[2, 3, 1], &[3, 1, 2]]).unwrap();
        let (r, rank) = rref_rank(&m);
        // second row is x+1 times the first: (x+1)x = x^2+x = 1, (x+1)^2 = x, (x+1)*1 = x+1
        assert_eq!(rank, 1);
        assert_eq!(r.rows()[0].elems()[0], 1);
        assert!(matches!(
            LinearCode::new(m),
            Err(Error::NotFullRank { rank: 1, k: 2 })
        ));
    }

    #[test]
    fn weight_and_distance_examples() {
        assert_eq!(hamming_weight(&vec_of(2, &[0; 6])), 0);
        assert_eq!(hamming_weight(&vec_of(2, &[1, 1, 1, 1])), 4);
        assert_eq!(hamming_weight(&vec_of(3, &[0, 2, 0, 1, 2])), 3);
        let v = vec_of(5, &[1, 4, 0]);
        assert_eq!(hamming_distance(&v, &v).unwrap(), 0);
        assert_eq!(
            hamming_distance(&vec_of(2, &[1, 0, 1]), &vec_of(2, &[0, 0, 1])).unwrap(),
            1
        );
        assert_eq!(
            hamming_distance(&vec_of(3, &[1, 1, 1]), &vec_of(3, &[0, 0, 1])).unwrap(),
            2
        );
        assert!(hamming_distance(&vec_of(3, &[1]), &vec_of(3, &[1, 0])).is_err());
        assert!(hamming_distance(&vec_of(3, &[1]), &vec_of(5, &[1])).is_err());
    }

    #[test]
    fn membership() {
        let f3 = gf(3);
        let c = LinearCode::new(GenMatrix::from_rows(&f3, &[&[1, 1, 1]]).unwrap()).unwrap();
        assert!(c.contains(&vec_of(3, &[2, 2, 2])).unwrap());
        assert!(!c.contains(&vec_of(3, &[0, 0, 1])).unwrap());
    }

    fn field_and_vec(max_len: usize) -> impl Strategy<Value = (u64, Vec<u64>)> {
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9])
            .prop_flat_map(move |q| (Just(q), prop::collection::vec(0..q, 0..max_len)))
    }

    proptest! {
        #[test]
        fn weight_is_scale_invariant((q, v) in field_and_vec(40), a in 1u64..9) {
            let f = gf(q);
            let alpha = (a % (q - 1) + 1) as Elem;
            let v = FqVector::from_u64s(&f, &v).unwrap();
            prop_assert_eq!(hamming_weight(&v.scale(alpha)), hamming_weight(&v));
        }

        #[test]
        fn triangle_inequality(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]),
                               raw in prop::collection::vec((0u64..9, 0u64..9, 0u64..9), 0..40)) {
            let f = gf(q);
            let pick = |g: fn(&(u64, u64, u64)) -> u64| {
                FqVector::from_u64s(&f, &raw.iter().map(|t| g(t) % q).collect::<Vec<_>>()).unwrap()
            };
            let (u, v, w) = (pick(|t| t.0), pick(|t| t.1), pick(|t| t.2));
            let d = |a: &FqVector, b: &FqVector| hamming_distance(a, b).unwrap();
            prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
            prop_assert_eq!(d(&u, &v), d(&v, &u));
            prop_assert_eq!(d(&u, &v) == 0, u == v);
            prop_assert_eq!(d(&u, &v), hamming_weight(&u.sub(&v).unwrap()));
        }

        #[test]
        fn packed_matches_generic(a in prop::collection::vec(0u64..2, 0..200),
                                  b in prop::collection::vec(0u64..2, 0..200)) {
            let f = gf(2);
            let n = a.len().min(b.len());
            let u = FqVector::from_u64s(&f, &a[..n]).unwrap();
            let v = FqVector::from_u64s(&f, &b[..n]).unwrap();
            prop_assert_eq!(hamming_weight(&u), hamming_weight_generic(&u));
            prop_assert_eq!(hamming_distance(&u, &v).unwrap(), hamming_distance_generic(&u, &v).unwrap());
        }

        #[test]
        fn encode_is_linear(q in prop::sample::select(vec![2u64, 3, 4, 5, 7]),
                            seed in prop::collection::vec(0u64..7, 3 * 6 + 3 + 3),
                            a in 0u64..7) {
            let f = gf(q);
            let vals: Vec<u64> = seed.iter().map(|s| s % q).collect();
            let rows: Vec<&[u64]> = vals[..18].chunks(6).collect();
            let gen = GenMatrix::from_rows(&f, &rows).unwrap();
            let u = FqVector::from_u64s(&f, &vals[18..21]).unwrap();
            let v = FqVector::from_u64s(&f, &vals[21..24]).unwrap();
            let alpha = (a % q) as Elem;
            let enc = |m: &FqVector| gen.combine(m.elems()).unwrap();
            prop_assert_eq!(enc(&u.add(&v).unwrap()), enc(&u).add(&enc(&v)).unwrap());
            prop_assert_eq!(enc(&u.scale(alpha)), enc(&u).scale(alpha));
        }
    }
}
