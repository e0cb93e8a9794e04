#pragma once

#include "vwl/grid.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace vwl {

struct RadiusExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GevreyParams {
    double L0 = 10.0;
    double delta0 = 1000.0;
    int n_max = 40;
    double tail_tol = 1e-14;

    void validate() const;
};

enum class GevreyKind { X, Xdot, Y, Ydot };

struct GevreyReport {
    double value = 0.0;
    std::vector<double> terms;
    int truncated_at = 0;
    bool roundoff_flag = false;
};

void to_json(nlohmann::json& j, const GevreyReport& r);

GevreyReport gevrey_norm(const Field& f, double sigma, GevreyKind kind, const GevreyParams& params = {});

double radius(double t, const GevreyParams& params);

// 1/2 (|U|^2_{Ydot_phi} + |W_alpha|^2_{X_phi}) at phi = radius(t).
double energy(const Field& W, const Field& U, double t, const GevreyParams& params);

// (((n+1)!)^2 / sigma^{n+1} + (n!)^2 / sigma^n) |f|_{X_sigma}
double embedding_bound(const Field& f, double sigma, int n, const GevreyParams& params = {});

// |f^(k)|^2 with coefficients below the transform round-off level set to zero.
std::vector<double> resolved_power_spectrum(const Field& f);

}  // namespace vwl
