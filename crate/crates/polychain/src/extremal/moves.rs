//! Length-vector exchange moves. Each move rewrites a length vector the way
//! one of the extremal-proof transformations does, and knows the closed-form
//! psi delta that transformation is claimed to have. The delta of any move
//! is an integer combination of f, g, h, so expected and recomputed deltas
//! can be compared exactly as coefficient triples.

use std::fmt;

use crate::chain::LengthVector;
use crate::extremal::ExtremalError;
use crate::index::{f_val, g_val, h_val, Alpha};

/// Which external segment a move works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Front,
    Back,
}

/// Delta of (segment count, external length-2 count, internal length-2
/// count); psi changes by exactly f*ds + g*db + h*da.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiDelta {
    pub d_segments: i64,
    pub d_external_twos: i64,
    pub d_internal_twos: i64,
}

impl PsiDelta {
    pub const ZERO: PsiDelta = PsiDelta { d_segments: 0, d_external_twos: 0, d_internal_twos: 0 };

    /// Indicator difference between two length vectors.
    pub fn between(after: &LengthVector, before: &LengthVector) -> PsiDelta {
        let ia = after.indicators();
        let ib = before.indicators();
        PsiDelta {
            d_segments: after.segment_count() as i64 - before.segment_count() as i64,
            d_external_twos: ia.external_two_count() as i64 - ib.external_two_count() as i64,
            d_internal_twos: ia.internal_two_count() as i64 - ib.internal_two_count() as i64,
        }
    }

    pub fn eval(&self, a: f64) -> f64 {
        self.d_segments as f64 * f_val(a)
            + self.d_external_twos as f64 * g_val(a)
            + self.d_internal_twos as f64 * h_val(a)
    }
}

impl fmt::Display for PsiDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}f {:+}g {:+}h",
            self.d_segments, self.d_external_twos, self.d_internal_twos
        )
    }
}

/// The exchange moves used by the extremal arguments. Indices are 0-based
/// positions into the length vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeMove {
    /// Leave the vector unchanged.
    Identity,
    /// Replace an external segment of length l >= 3 by l-1 segments of
    /// length 2. Needs s >= 2. Delta: g + (l-2)(f+h).
    SplitExternalIntoTwos { end: End },
    /// Split an internal segment of length l >= 3 into 2 and l-1.
    /// Delta: f + (1+y)h with y = 1 iff l = 3.
    SplitInternalAtTwo { index: usize },
    /// Merge an internal length-2 segment into its right neighbour.
    /// Delta: -(f + x g + h) against the last segment (x = 1 iff it has
    /// length 2), -(f + (1+y)h) otherwise (y = 1 iff the neighbour has
    /// length 2).
    MergeInternalTwo { index: usize },
    /// Split a segment of length l >= 5 into 3 and l-2. Delta: f.
    SplitLongWithThree { index: usize },
    /// Shrink two length-4 segments to 3 and grow a new length-3 segment at
    /// an end whose external segment has length >= 3. Delta: f.
    MergeTwoFours { first: usize, second: usize },
    /// Remove an external length-2 segment. If the opposite external also
    /// has length 2 it grows by one (delta: -(f + 2g)); otherwise the
    /// neighbour, which must have length >= 3, grows by one (delta:
    /// -(f + g)).
    AbsorbExternalTwo { end: End },
    /// Shave one square off a length-4 segment and move it to the back
    /// (front, if only the front external has length 2 or 3). External
    /// fours split off a new length-2 end (delta: f + g); internal fours
    /// feed a length-2 external (delta: -g) or append beyond a length-3
    /// external (delta: f + g).
    ShaveFourToEnd { index: usize },
}

impl fmt::Display for ExchangeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExchangeMove::Identity => write!(f, "identity"),
            ExchangeMove::SplitExternalIntoTwos { end } => {
                write!(f, "split-external-into-2s({end:?})")
            }
            ExchangeMove::SplitInternalAtTwo { index } => write!(f, "split-internal-at-2({index})"),
            ExchangeMove::MergeInternalTwo { index } => write!(f, "merge-internal-2({index})"),
            ExchangeMove::SplitLongWithThree { index } => write!(f, "split-length>=5-with-3({index})"),
            ExchangeMove::MergeTwoFours { first, second } => {
                write!(f, "merge-two-4s({first},{second})")
            }
            ExchangeMove::AbsorbExternalTwo { end } => write!(f, "absorb-external-2({end:?})"),
            ExchangeMove::ShaveFourToEnd { index } => write!(f, "shave-4-to-end({index})"),
        }
    }
}

fn not_applicable(mv: &ExchangeMove, lv: &LengthVector) -> ExtremalError {
    ExtremalError::MoveNotApplicable { mv: mv.to_string(), lv: lv.to_string() }
}

fn oriented(lv: &LengthVector, end: End) -> Vec<usize> {
    let mut ls = lv.lengths().to_vec();
    if end == End::Back {
        ls.reverse();
    }
    ls
}

fn restore(mut ls: Vec<usize>, end: End) -> LengthVector {
    if end == End::Back {
        ls.reverse();
    }
    LengthVector::new(ls).expect("moves preserve length-vector validity")
}

impl ExchangeMove {
    /// Applies the move, or reports why it does not fit this vector.
    pub fn apply(&self, lv: &LengthVector) -> Result<LengthVector, ExtremalError> {
        let ls = lv.lengths();
        let s = ls.len();
        match *self {
            ExchangeMove::Identity => Ok(lv.clone()),

            ExchangeMove::SplitExternalIntoTwos { end } => {
                let v = oriented(lv, end);
                if s < 2 || v[0] < 3 {
                    return Err(not_applicable(self, lv));
                }
                let mut out = vec![2; v[0] - 1];
                out.extend_from_slice(&v[1..]);
                Ok(restore(out, end))
            }

            ExchangeMove::SplitInternalAtTwo { index } => {
                if s < 3 || index == 0 || index >= s - 1 || ls[index] < 3 {
                    return Err(not_applicable(self, lv));
                }
                let mut out = ls[..index].to_vec();
                out.push(2);
                out.push(ls[index] - 1);
                out.extend_from_slice(&ls[index + 1..]);
                Ok(LengthVector::new(out).expect("split keeps lengths >= 2"))
            }

            ExchangeMove::MergeInternalTwo { index } => {
                if s < 3 || index == 0 || index >= s - 1 || ls[index] != 2 {
                    return Err(not_applicable(self, lv));
                }
                let mut out = ls[..index].to_vec();
                out.push(ls[index + 1] + 1);
                out.extend_from_slice(&ls[index + 2..]);
                Ok(LengthVector::new(out).expect("merge keeps lengths >= 2"))
            }

            ExchangeMove::SplitLongWithThree { index } => {
                if index >= s || ls[index] < 5 {
                    return Err(not_applicable(self, lv));
                }
                let mut out = ls[..index].to_vec();
                out.push(3);
                out.push(ls[index] - 2);
                out.extend_from_slice(&ls[index + 1..]);
                Ok(LengthVector::new(out).expect("split keeps lengths >= 2"))
            }

            ExchangeMove::MergeTwoFours { first, second } => {
                if first >= second || second >= s || ls[first] != 4 || ls[second] != 4 {
                    return Err(not_applicable(self, lv));
                }
                let mut shrunk = ls.to_vec();
                shrunk[first] = 3;
                shrunk[second] = 3;
                let out = if ls[0] >= 3 {
                    let mut out = vec![3];
                    out.extend_from_slice(&shrunk);
                    out
                } else if ls[s - 1] >= 3 {
                    shrunk.push(3);
                    shrunk
                } else {
                    return Err(not_applicable(self, lv));
                };
                Ok(LengthVector::new(out).expect("lengths stay >= 2"))
            }

            ExchangeMove::AbsorbExternalTwo { end } => {
                let v = oriented(lv, end);
                if s < 2 || v[0] != 2 {
                    return Err(not_applicable(self, lv));
                }
                let out = if v[s - 1] == 2 {
                    // Opposite external is a 2 as well: drop the front one
                    // and grow the far end.
                    if s >= 3 && v[1] < 3 {
                        return Err(not_applicable(self, lv));
                    }
                    let mut out = v[1..].to_vec();
                    *out.last_mut().expect("s >= 2") += 1;
                    out
                } else {
                    if v[1] < 3 {
                        return Err(not_applicable(self, lv));
                    }
                    let mut out = v[1..].to_vec();
                    out[0] += 1;
                    out
                };
                Ok(restore(out, end))
            }

            ExchangeMove::ShaveFourToEnd { index } => {
                if index >= s || ls[index] != 4 {
                    return Err(not_applicable(self, lv));
                }
                if index == 0 && s == 1 {
                    return Ok(LengthVector::new(vec![2, 3]).expect("valid"));
                }
                if index == 0 {
                    let mut out = vec![2, 3];
                    out.extend_from_slice(&ls[1..]);
                    return Ok(LengthVector::new(out).expect("valid"));
                }
                if index == s - 1 {
                    let mut out = ls[..s - 1].to_vec();
                    out.push(3);
                    out.push(2);
                    return Ok(LengthVector::new(out).expect("valid"));
                }
                // Internal four: work against whichever external has length
                // 2 or 3, preferring the back.
                let (v, end) = if ls[s - 1] == 2 || ls[s - 1] == 3 {
                    (ls.to_vec(), End::Front)
                } else if ls[0] == 2 || ls[0] == 3 {
                    (oriented(lv, End::Back), End::Back)
                } else {
                    return Err(not_applicable(self, lv));
                };
                let idx = if end == End::Back { s - 1 - index } else { index };
                let mut out = v;
                out[idx] -= 1;
                if out[s - 1] == 2 {
                    out[s - 1] = 3;
                } else {
                    out.push(2);
                }
                Ok(restore(out, end))
            }
        }
    }

    /// The closed-form delta the transformation is claimed to have, as
    /// integer coefficients of (f, g, h). Applicability is the same as for
    /// `apply`.
    pub fn expected_delta(&self, lv: &LengthVector) -> Result<PsiDelta, ExtremalError> {
        let ls = lv.lengths();
        let s = ls.len();
        match *self {
            ExchangeMove::Identity => Ok(PsiDelta::ZERO),

            ExchangeMove::SplitExternalIntoTwos { end } => {
                let v = oriented(lv, end);
                if s < 2 || v[0] < 3 {
                    return Err(not_applicable(self, lv));
                }
                let l = v[0] as i64;
                Ok(PsiDelta { d_segments: l - 2, d_external_twos: 1, d_internal_twos: l - 2 })
            }

            ExchangeMove::SplitInternalAtTwo { index } => {
                if s < 3 || index == 0 || index >= s - 1 || ls[index] < 3 {
                    return Err(not_applicable(self, lv));
                }
                let y = i64::from(ls[index] == 3);
                Ok(PsiDelta { d_segments: 1, d_external_twos: 0, d_internal_twos: 1 + y })
            }

            ExchangeMove::MergeInternalTwo { index } => {
                if s < 3 || index == 0 || index >= s - 1 || ls[index] != 2 {
                    return Err(not_applicable(self, lv));
                }
                if index == s - 2 {
                    let x = i64::from(ls[s - 1] == 2);
                    Ok(PsiDelta { d_segments: -1, d_external_twos: -x, d_internal_twos: -1 })
                } else {
                    let y = i64::from(ls[index + 1] == 2);
                    Ok(PsiDelta { d_segments: -1, d_external_twos: 0, d_internal_twos: -1 - y })
                }
            }

            ExchangeMove::SplitLongWithThree { index } => {
                if index >= s || ls[index] < 5 {
                    return Err(not_applicable(self, lv));
                }
                Ok(PsiDelta { d_segments: 1, d_external_twos: 0, d_internal_twos: 0 })
            }

            ExchangeMove::MergeTwoFours { first, second } => {
                if first >= second
                    || second >= s
                    || ls[first] != 4
                    || ls[second] != 4
                    || (ls[0] < 3 && ls[s - 1] < 3)
                {
                    return Err(not_applicable(self, lv));
                }
                Ok(PsiDelta { d_segments: 1, d_external_twos: 0, d_internal_twos: 0 })
            }

            ExchangeMove::AbsorbExternalTwo { end } => {
                let v = oriented(lv, end);
                if s < 2 || v[0] != 2 {
                    return Err(not_applicable(self, lv));
                }
                if v[s - 1] == 2 {
                    if s >= 3 && v[1] < 3 {
                        return Err(not_applicable(self, lv));
                    }
                    Ok(PsiDelta { d_segments: -1, d_external_twos: -2, d_internal_twos: 0 })
                } else {
                    if v[1] < 3 {
                        return Err(not_applicable(self, lv));
                    }
                    Ok(PsiDelta { d_segments: -1, d_external_twos: -1, d_internal_twos: 0 })
                }
            }

            ExchangeMove::ShaveFourToEnd { index } => {
                if index >= s || ls[index] != 4 {
                    return Err(not_applicable(self, lv));
                }
                if index == 0 || index == s - 1 {
                    return Ok(PsiDelta { d_segments: 1, d_external_twos: 1, d_internal_twos: 0 });
                }
                let external = if ls[s - 1] == 2 || ls[s - 1] == 3 {
                    ls[s - 1]
                } else if ls[0] == 2 || ls[0] == 3 {
                    ls[0]
                } else {
                    return Err(not_applicable(self, lv));
                };
                if external == 2 {
                    Ok(PsiDelta { d_segments: 0, d_external_twos: -1, d_internal_twos: 0 })
                } else {
                    Ok(PsiDelta { d_segments: 1, d_external_twos: 1, d_internal_twos: 0 })
                }
            }
        }
    }

    /// Every non-identity move instance that applies to the vector.
    pub fn enumerate_applicable(lv: &LengthVector) -> Vec<ExchangeMove> {
        let s = lv.segment_count();
        let mut candidates = vec![
            ExchangeMove::SplitExternalIntoTwos { end: End::Front },
            ExchangeMove::SplitExternalIntoTwos { end: End::Back },
            ExchangeMove::AbsorbExternalTwo { end: End::Front },
            ExchangeMove::AbsorbExternalTwo { end: End::Back },
        ];
        for index in 0..s {
            candidates.push(ExchangeMove::SplitInternalAtTwo { index });
            candidates.push(ExchangeMove::MergeInternalTwo { index });
            candidates.push(ExchangeMove::SplitLongWithThree { index });
            candidates.push(ExchangeMove::ShaveFourToEnd { index });
            for second in index + 1..s {
                candidates.push(ExchangeMove::MergeTwoFours { first: index, second });
            }
        }
        candidates.retain(|mv| mv.apply(lv).is_ok());
        candidates
    }
}

/// Psi(moved) - Psi(original), evaluated through the indicator difference.
pub fn psi_exchange_delta(
    lv: &LengthVector,
    mv: &ExchangeMove,
    alpha: Alpha,
) -> Result<f64, ExtremalError> {
    let moved = mv.apply(lv)?;
    Ok(PsiDelta::between(&moved, lv).eval(alpha.value()))
}
