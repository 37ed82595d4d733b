// Copyright 2026 The fumine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use crate::error::{Error, Result};

/// A linguistic region of a membership function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    pub index: usize,
    pub label: String,
}

/// Piecewise-linear membership curves, one per region.
///
/// Each curve is a list of `(utility breakpoint, degree)` vertices with
/// strictly increasing breakpoints. Between vertices the degree is linearly
/// interpolated; outside the breakpoint range it is clamped to the first or
/// last vertex degree.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipFunction {
    regions: Vec<Region>,
    curves: Vec<Vec<(f64, f64)>>,
}

impl MembershipFunction {
    pub fn new<S: Into<String>>(curves: Vec<(S, Vec<(f64, f64)>)>) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::Invalid("membership function has no regions".into()));
        }
        let mut regions = Vec::with_capacity(curves.len());
        let mut pts = Vec::with_capacity(curves.len());
        for (index, (label, vertices)) in curves.into_iter().enumerate() {
            let label = label.into();
            validate_label(&label)?;
            if regions.iter().any(|r: &Region| r.label == label) {
                return Err(Error::Invalid(format!("duplicate region label `{label}`")));
            }
            if vertices.is_empty() {
                return Err(Error::Invalid(format!("region `{label}` has no vertices")));
            }
            for &(u, f) in &vertices {
                if !u.is_finite() {
                    return Err(Error::Invalid(format!(
                        "region `{label}`: bad breakpoint {u}"
                    )));
                }
                if !(0.0..=1.0).contains(&f) {
                    return Err(Error::Invalid(format!(
                        "region `{label}`: degree {f} outside [0,1]"
                    )));
                }
            }
            if vertices.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(Error::Invalid(format!(
                    "region `{label}`: breakpoints must be strictly increasing"
                )));
            }
            regions.push(Region { index, label });
            pts.push(vertices);
        }
        Ok(MembershipFunction {
            regions,
            curves: pts,
        })
    }

    /// The three-region reference curve: Low falls from 1 to 0 over [1, 6],
    /// Middle peaks at 6 over [1, 11], High rises from 0 to 1 over [6, 11].
    pub fn reference() -> Self {
        MembershipFunction::new(vec![
            ("Low", vec![(1.0, 1.0), (6.0, 0.0)]),
            ("Middle", vec![(1.0, 0.0), (6.0, 1.0), (11.0, 0.0)]),
            ("High", vec![(6.0, 0.0), (11.0, 1.0)]),
        ])
        .expect("reference membership function is valid")
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn region(&self, label: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.label == label)
    }

    pub fn region_or_err(&self, label: &str) -> Result<usize> {
        self.region(label)
            .map(|r| r.index)
            .ok_or_else(|| Error::UnknownRegion(label.to_string()))
    }

    pub fn label(&self, region: usize) -> &str {
        &self.regions[region].label
    }

    pub fn curve(&self, region: usize) -> &[(f64, f64)] {
        &self.curves[region]
    }

    /// Membership degree of utility `u` in `region`.
    pub fn membership(&self, region: usize, u: f64) -> f64 {
        interpolate(&self.curves[region], u)
    }

    /// Degrees of `u` in every region.
    pub fn fuzzify(&self, u: f64) -> FuzzySet {
        FuzzySet(self.curves.iter().map(|c| interpolate(c, u)).collect())
    }
}

fn validate_label(label: &str) -> Result<()> {
    if label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || c == '.' || c == ':')
    {
        return Err(Error::Invalid(format!("illegal region label `{label}`")));
    }
    Ok(())
}

fn interpolate(vertices: &[(f64, f64)], u: f64) -> f64 {
    let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
    if u <= first.0 {
        return first.1;
    }
    if u >= last.0 {
        return last.1;
    }
    // first vertex with breakpoint > u; u lies in [prev, next)
    let hi = vertices.partition_point(|&(b, _)| b <= u);
    let (u0, f0) = vertices[hi - 1];
    let (u1, f1) = vertices[hi];
    let t = (u - u0) / (u1 - u0);
    (f0 + t * (f1 - f0)).clamp(0.0, 1.0)
}

/// Membership degrees of one utility value, aligned with the regions.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet(pub Vec<f64>);

impl FuzzySet {
    pub fn degree(&self, region: usize) -> f64 {
        self.0[region]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EPS: f64 = 1e-9;

    #[test]
    fn reference_values() {
        let mf = MembershipFunction::reference();
        let low = mf.region_or_err("Low").unwrap();
        let mid = mf.region_or_err("Middle").unwrap();
        let high = mf.region_or_err("High").unwrap();
        assert!((mf.membership(low, 2.0) - 0.8).abs() < EPS);
        assert!((mf.membership(high, 12.0) - 1.0).abs() < EPS);
        assert!((mf.membership(mid, 8.0) - 0.6).abs() < EPS);
    }

    #[test]
    fn fuzzify_examples() {
        let mf = MembershipFunction::reference();
        let close = |a: &FuzzySet, b: &[f64]| a.0.iter().zip(b).all(|(x, y)| (x - y).abs() < EPS);
        assert!(close(&mf.fuzzify(2.0), &[0.8, 0.2, 0.0]));
        assert!(close(&mf.fuzzify(1.0), &[1.0, 0.0, 0.0]));
        assert!(close(&mf.fuzzify(8.0), &[0.0, 0.6, 0.4]));
    }

    #[test]
    fn clamping_outside_breakpoints() {
        let mf = MembershipFunction::reference();
        assert_eq!(mf.fuzzify(0.1).0, vec![1.0, 0.0, 0.0]);
        assert_eq!(mf.fuzzify(500.0).0, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn single_region_and_single_vertex() {
        let mf = MembershipFunction::new(vec![("All", vec![(3.0, 0.5)])]).unwrap();
        assert_eq!(mf.membership(0, -10.0), 0.5);
        assert_eq!(mf.membership(0, 100.0), 0.5);
    }

    #[test]
    fn invalid_functions() {
        assert!(MembershipFunction::new(vec![("Low", vec![(1.0, 1.5)])]).is_err());
        assert!(MembershipFunction::new(vec![("Low", vec![(2.0, 1.0), (2.0, 0.0)])]).is_err());
        assert!(MembershipFunction::new(vec![("Low", vec![]) as (&str, Vec<(f64, f64)>)]).is_err());
        assert!(
            MembershipFunction::new(vec![("A", vec![(1.0, 1.0)]), ("A", vec![(1.0, 1.0)])])
                .is_err()
        );
        assert!(MembershipFunction::new(Vec::<(&str, Vec<(f64, f64)>)>::new()).is_err());
        assert!(MembershipFunction::new(vec![("a.b", vec![(1.0, 1.0)])]).is_err());
    }

    proptest! {
        #[test]
        fn degrees_in_unit_interval(u in -50.0f64..200.0) {
            let mf = MembershipFunction::reference();
            for r in 0..mf.region_count() {
                let d = mf.membership(r, u);
                prop_assert!((0.0..=1.0).contains(&d));
            }
        }

        #[test]
        fn partition_of_unity_on_interior(u in 1.0f64..=11.0) {
            let mf = MembershipFunction::reference();
            let f = mf.fuzzify(u);
            if u <= 6.0 {
                prop_assert!((f.0[0] + f.0[1] - 1.0).abs() < EPS);
            }
            if u >= 6.0 {
                prop_assert!((f.0[1] + f.0[2] - 1.0).abs() < EPS);
            }
        }

        #[test]
        fn fuzzify_agrees_with_membership(u in -5.0f64..30.0) {
            let mf = MembershipFunction::reference();
            let f = mf.fuzzify(u);
            for r in 0..mf.region_count() {
                prop_assert_eq!(f.degree(r), mf.membership(r, u));
            }
        }
    }
}
