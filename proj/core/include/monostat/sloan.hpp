#pragma once

#include <string>
#include <vector>

#include "monostat/trimesh.hpp"

namespace monostat {

enum class PhaseKind { Linear, Eta, EtaFourier };

struct FourierTerm {
    int order = 1;      // k >= 1, distinct per spec
    double coeff = 0.0; // |a_k| <= 1
};

/// Azimuthal phase P(theta) of the surface perturbation.
/// linear: c * theta. eta: the baseline phase that zeroes the first-order
/// center-of-mass offset. eta_fourier: eta(theta) + sum a_k sin(k * eta(theta)).
class PhaseSpec {
  public:
    static PhaseSpec linear(double c);
    static PhaseSpec eta();
    static PhaseSpec eta_fourier(std::vector<FourierTerm> terms);

    PhaseKind kind() const { return kind_; }
    double linear_coeff() const { return linear_coeff_; }
    const std::vector<FourierTerm>& terms() const { return terms_; }
    std::string describe() const;

  private:
    PhaseSpec() = default;
    PhaseKind kind_ = PhaseKind::Eta;
    double linear_coeff_ = 0.0;
    std::vector<FourierTerm> terms_;
};

/// Parameters of the radial family r^4 = 1 + 4 beta sin(theta) cos(phi - P(theta)).
/// beta = 0 is the unit sphere; radius positivity needs 4 beta < 1 and the
/// documented family bound is beta <= 0.17.
struct SloanParams {
    double beta = 0.0;
    PhaseSpec phase = PhaseSpec::eta();

    SloanParams(double beta_, PhaseSpec phase_);
};

/// (3*pi/2) * (cos(theta) - cos^3(theta) / 3); runs from +pi at theta=0
/// to -pi at theta=pi.
double eta(double theta);

double phase_value(const PhaseSpec& spec, double theta);

/// (1 + 4 beta sin(theta) cos(phi - P(theta)))^(1/4)
double sloan_radius(const SloanParams& params, double theta, double phi);

TriMesh sloan_mesh(const SloanParams& params, int n_theta, int n_phi);

/// Modulus of the center-of-mass constraint integral
/// int_0^pi sin^3(theta) exp(i P(theta)) dtheta,
/// by composite Simpson quadrature with panel doubling (>= 2000 panels,
/// converged when doubling changes the result by < 1e-9).
double com_constraint_violation(const PhaseSpec& spec);

/// Mesh-free support height: c . d minus the minimum of v(theta,phi) . d over
/// the continuous surface, found by multi-start pattern-search descent seeded
/// from a 16x32 grid scan (best n_starts cells).
double analytic_height(const SloanParams& params, const Vec3& centroid, const Vec3& direction,
                       int n_starts = 12);

/// A published parameter set together with its expected oracle outcome.
struct VerifiedInstance {
    std::string name;
    SloanParams params;
    int expected_ecs = 1;
    double expected_h_range = 0.0;
};

/// The three published mono-monostatic parameter sets.
const std::vector<VerifiedInstance>& verified_instances();

/// Lookup by name ("primary", "second", "third"); throws on unknown name.
const VerifiedInstance& verified_instance(const std::string& name);

}  // namespace monostat
