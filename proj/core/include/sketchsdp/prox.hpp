#pragma once

// Separation diagnostics for a clustering: the proximity score, cluster
// geometry and the sketch-size shape parameter.

#include "sketchsdp/core.hpp"
#include "sketchsdp/linalg.hpp"

namespace sketchsdp {

using linalg::spectral_norm;

struct ShapeStats {
  double delta;    // min distance between centroids
  double r;        // max distance from a point to its centroid
  double prox;
  double pi_min;   // smallest cluster fraction
  double pi_max;   // largest cluster fraction
  int k;
  Index d;
  double shape_parameter;  // +inf when the recovery hypotheses fail
};

/// min_{i in S} <x_i - (c_S + c_T)/2, (c_S - c_T)/||c_S - c_T||>.
/// Throws "degenerate centroid pair" when c_S == c_T.
double alpha(const Dataset& x, const Partition& partition, int s, int t);

/// (1/2) ((1/|S| + 1/|T|) sum_R ||X_R||_{2->2}^2)^{1/2}, X_R the centered
/// members of cluster R.
double beta(const Dataset& x, const Partition& partition, int s, int t);

/// min over ordered pairs S != T of alpha_ST - beta_ST.
double prox_value(const Dataset& x, const Partition& partition);

/// The scale-free quantities the shape parameter depends on.
struct ShapeInputs {
  double delta;
  double r;
  double prox;
  double pi_min;
  double pi_max;
  int k;
  Index d;
};

/// C = max(c1, c2): c1 is the closed-form lower end of the sketch-size
/// condition, c2 the crossing point of the proximity condition found by
/// log-space bisection. Returns +inf unless prox > 0 and r < delta/2
/// (r == delta/2 makes c1 infinite).
double shape_parameter(const ShapeInputs& in);
double shape_parameter(const Dataset& x, const Partition& partition);

/// The two pieces of the shape parameter, exposed for tests.
double shape_threshold_c1(const ShapeInputs& in);
/// Right side of the proximity condition (in units of r) at sketch-size
/// ratio c.
double shape_proximity_rhs(const ShapeInputs& in, double c);
double shape_threshold_c2(const ShapeInputs& in);

ShapeStats cluster_stats(const Dataset& x, const Partition& partition);

}  // namespace sketchsdp
