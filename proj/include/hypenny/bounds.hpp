#pragma once

// Bounds on the asymptotic touching-pair density c(d): the limit of
// (maximum touching pairs)/n for packings of n circles of diameter d.
//
// Five upper bounds and one lower bound; which upper bounds apply depends on
// whether d is the side length of an order-k triangular tiling ("triangular
// critical"), of a semiregular square-plus-triangles tiling ("semiregular
// critical"), or neither.

namespace hypenny {

// Valid for every d > 0.
double upper_bound_all(double d);

// Valid when d is a semiregular critical length (one square and k-1
// triangles around each vertex).
double upper_bound_semiregular(double d);
double upper_bound_semiregular_area(double d);

// Valid when d is neither a triangular nor a semiregular critical length.
double upper_bound_generic(double d);
double upper_bound_generic_area(double d);

// Valid for every d > 0.
double lower_bound_all(double d);

struct DistanceClass {
    bool triangular = false;   // d == side of the order-k triangular tiling
    int k = 0;
    bool semiregular = false;  // d == side of the square + (kbar-1)-triangle tiling
    int kbar = 0;
};

DistanceClass classify_distance(double d, double tol = 1e-9);

// Smallest applicable upper bound at d.
double upper_envelope(double d, double tol = 1e-9);

// Distance at which the two generic upper bounds exchange roles.
double generic_bounds_crossing();

// Distance above which upper_bound_generic_area alone certifies that the
// density stays below its value at the order-7 triangular length.
double order7_dominance_threshold();

}  // namespace hypenny
