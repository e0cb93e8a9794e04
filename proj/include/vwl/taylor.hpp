#pragma once

#include "vwl/grid.hpp"
#include "vwl/vortex.hpp"

#include <vector>

namespace vwl {

// Symmetric counter-rotating pair at -x+iy (strength lambda) and x+iy (strength -lambda).
struct PairConfig {
    double x = 1.0;
    double y = -6.0;
    double lambda = 0.0;

    void validate() const;
    std::vector<Vortex> vortices() const;
};

struct StabilityProfile {
    double gamma = 0.0;
    double inf_value = 1.0;
    double argmin_alpha = 0.0;
    double crossing_depth = 0.0;
};

double a1_flat_pair(double alpha, const PairConfig& cfg);
// The two correction terms of a1_flat_pair separately.
double g1_term(double alpha, const PairConfig& cfg);
double g2_term(double alpha, const PairConfig& cfg);

double g_profile(double k);
double f_reduced(double gamma, double k);

struct InfResult {
    double value;
    double argmin;
};
InfResult inf_a1_flat(const PairConfig& cfg);

double crossing_depth(double lambda);
double gamma_of(double lambda, double y);
double lambda_of(double gamma, double y);

StabilityProfile stability_profile(const PairConfig& cfg);

// int db / ((b - w1)(b - conj w2)) = 2 pi i / (conj w2 - w1).
cplx residue_pair_integral(cplx w1, cplx w2);
// Same integral by adaptive Gauss-Kronrod quadrature over the real line.
cplx residue_pair_quadrature(cplx w1, cplx w2, double tol = 1e-13);

// Closed form of (1/2pi) int |Qbar(a) - Qbar(b)|^2 / (a - b)^2 db on the flat line.
double interaction_sum(const std::vector<Vortex>& vortices, double alpha);
Field interaction_sum(const std::vector<Vortex>& vortices, const GridPtr& grid);

struct SweepRow {
    double gamma, x, y, lambda, inf_A1, argmin_alpha;
};
std::vector<SweepRow> sweep(double gamma_min, double gamma_max, int steps, double x, double y);

}  // namespace vwl
