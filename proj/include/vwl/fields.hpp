#pragma once

#include "vwl/grid.hpp"
#include "vwl/spectral.hpp"
#include "vwl/vortex.hpp"

#include <vector>

namespace vwl {

struct ProximityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WaveState {
    Field W;
    Field U;
    std::vector<Vortex> vortices;
    double t = 0.0;

    const GridPtr& grid() const { return W.grid_ptr(); }
};

struct Reconstruction {
    Field Z;
    Field F;
    Field Z_alpha;
};

struct DerivedFields {
    Field Z, Z_alpha, F, Q, DtZ, DtQ;
    Field b, b0, b1, A1, A, G, R;
    // Re{[Fbar, H](1/Z_alpha - 1)}
    Field transport_commutator;
    std::vector<cplx> zdot;
    double b_residual = 0.0;
    double d_I = 0.0;
    double chord_arc = 1.0;
    double inf_A1 = 1.0;
    double argmin_alpha = 0.0;
};

Reconstruction reconstruct(const Field& W, const Field& U);

// min over grid points and vortices of |Z(alpha) - z_j|; +inf without vortices.
double interface_distance(const Field& Z, const std::vector<Vortex>& vortices);
// Throws ProximityError when a vortex is within `spacings` grid spacings of
// the curve or not strictly below it.
void check_vortex_clearance(const Field& Z, const std::vector<Vortex>& vortices, double spacings);

Field compute_Q(const Field& Z, const std::vector<Vortex>& vortices);
// Conjugate of the flat-line vortex field: sum_j (lambda_j i / 2pi) / (alpha - conj z_j).
Field flat_pole_part(const GridPtr& grid, const std::vector<Vortex>& vortices);

cplx vortex_velocity(const WaveState& state, const DerivedFields& d, std::size_t j);
Field compute_DtQ(const WaveState& state, const DerivedFields& d);

struct BParts {
    Field b, b0, b1;
    Field transport_commutator;
    double residual;
};
BParts compute_b(const WaveState& state, const DerivedFields& d);

struct A1Result {
    Field A1;
    double inf;
    double argmin;
};
A1Result compute_A1(const WaveState& state, const DerivedFields& d, Kernel kernel = Kernel::convolution);

struct GR {
    Field G, R;
};
GR compute_G_R(const WaveState& state, const DerivedFields& d);

double chord_arc_constant(const Field& Z, const Field& Z_alpha);

// Full assembly pass; the result is read-only afterwards.
DerivedFields assemble(const WaveState& state);

// Equal to 1 on |alpha| <= 3L/4, smooth taper to 0 at the ends; multiplies the
// wave right-hand side so that alpha = -L stays a node of every odd field.
Field boundary_window(const GridPtr& grid);

struct Rhs {
    Field dW, dU;
    std::vector<cplx> dz;
};
Rhs rhs(const WaveState& state);
Rhs rhs(const WaveState& state, const DerivedFields& d);

// Grid minimum refined by a parabola through the neighbours.
std::pair<double, double> refined_minimum(const Field& f);

}  // namespace vwl
