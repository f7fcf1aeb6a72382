#include "monostat/sloan.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace monostat {

PhaseSpec PhaseSpec::linear(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("phase: linear coefficient must be finite");
    PhaseSpec spec;
    spec.kind_ = PhaseKind::Linear;
    spec.linear_coeff_ = c;
    return spec;
}

PhaseSpec PhaseSpec::eta() {
    PhaseSpec spec;
    spec.kind_ = PhaseKind::Eta;
    return spec;
}

PhaseSpec PhaseSpec::eta_fourier(std::vector<FourierTerm> terms) {
    std::set<int> orders;
    for (const FourierTerm& t : terms) {
        if (t.order < 1) throw std::invalid_argument("phase: Fourier order must be >= 1");
        if (!orders.insert(t.order).second)
            throw std::invalid_argument("phase: duplicate Fourier order " + std::to_string(t.order));
        if (!(std::abs(t.coeff) <= 1.0))
            throw std::invalid_argument("phase: |a_k| must be <= 1");
    }
    PhaseSpec spec;
    spec.kind_ = PhaseKind::EtaFourier;
    spec.terms_ = std::move(terms);
    return spec;
}

std::string PhaseSpec::describe() const {
    std::ostringstream out;
    switch (kind_) {
        case PhaseKind::Linear: out << "linear(" << linear_coeff_ << ")"; break;
        case PhaseKind::Eta: out << "eta"; break;
        case PhaseKind::EtaFourier: {
            out << "eta";
            for (const FourierTerm& t : terms_)
                out << (t.coeff < 0 ? " - " : " + ") << std::abs(t.coeff) << "*sin(" << t.order
                    << "*eta)";
            break;
        }
    }
    return out.str();
}

SloanParams::SloanParams(double beta_, PhaseSpec phase_) : beta(beta_), phase(std::move(phase_)) {
    if (!std::isfinite(beta) || beta < 0.0 || beta > 0.17)
        throw std::invalid_argument("sloan: beta must lie in [0, 0.17]");
    if (4.0 * beta >= 1.0) throw std::invalid_argument("sloan: 4*beta must be < 1");
}

double eta(double theta) {
    const double c = std::cos(theta);
    return 1.5 * M_PI * (c - c * c * c / 3.0);
}

double phase_value(const PhaseSpec& spec, double theta) {
    switch (spec.kind()) {
        case PhaseKind::Linear: return spec.linear_coeff() * theta;
        case PhaseKind::Eta: return eta(theta);
        case PhaseKind::EtaFourier: {
            const double e = eta(theta);
            double p = e;
            for (const FourierTerm& t : spec.terms()) p += t.coeff * std::sin(t.order * e);
            return p;
        }
    }
    throw std::logic_error("phase_value: unknown phase kind");
}

double sloan_radius(const SloanParams& params, double theta, double phi) {
    const double radicand =
        1.0 + 4.0 * params.beta * std::sin(theta) * std::cos(phi - phase_value(params.phase, theta));
    return std::pow(radicand, 0.25);
}

TriMesh sloan_mesh(const SloanParams& params, int n_theta, int n_phi) {
    return mesh_from_radial(
        [&](double theta, double phi) { return sloan_radius(params, theta, phi); }, n_theta,
        n_phi);
}

namespace {

std::complex<double> simpson_constraint(const PhaseSpec& spec, int panels) {
    const double h = M_PI / panels;
    auto f = [&](double theta) -> std::complex<double> {
        const double s = std::sin(theta);
        const double p = phase_value(spec, theta);
        return std::complex<double>(std::cos(p), std::sin(p)) * (s * s * s);
    };
    std::complex<double> acc = f(0.0) + f(M_PI);
    for (int i = 1; i < panels; ++i) acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

}  // namespace

double com_constraint_violation(const PhaseSpec& spec) {
    int panels = 2000;
    std::complex<double> prev = simpson_constraint(spec, panels);
    for (int iter = 0; iter < 8; ++iter) {
        panels *= 2;
        const std::complex<double> next = simpson_constraint(spec, panels);
        if (std::abs(next - prev) < 1e-9) return std::abs(next);
        prev = next;
    }
    throw std::runtime_error("com_constraint_violation: quadrature did not converge");
}

namespace {

struct SupportObjective {
    const SloanParams& params;
    const Vec3& dir;

    double operator()(double theta, double phi) const {
        const double r = sloan_radius(params, theta, phi);
        const double st = std::sin(theta);
        const Vec3 v{r * st * std::cos(phi), r * st * std::sin(phi), r * std::cos(theta)};
        return dot(v, dir);
    }
};

// Derivative-free pattern search on (theta, phi) with shrinking step.
// phi wraps; theta is clamped to [0, pi].
double pattern_search(const SupportObjective& f, double theta, double phi, double step) {
    double best = f(theta, phi);
    while (step >= 1e-10) {
        bool improved = false;
        const double candidates[4][2] = {{theta + step, phi},
                                         {theta - step, phi},
                                         {theta, phi + step},
                                         {theta, phi - step}};
        for (const auto& c : candidates) {
            const double t = std::clamp(c[0], 0.0, M_PI);
            const double value = f(t, c[1]);
            if (value < best) {
                best = value;
                theta = t;
                phi = c[1];
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace

double analytic_height(const SloanParams& params, const Vec3& centroid, const Vec3& direction,
                       int n_starts) {
    if (n_starts < 8) throw std::invalid_argument("analytic_height: n_starts must be >= 8");
    const SupportObjective f{params, direction};

    constexpr int kGridTheta = 16;
    constexpr int kGridPhi = 32;
    struct Cell {
        double value, theta, phi;
    };
    std::vector<Cell> cells;
    cells.reserve((kGridTheta + 1) * kGridPhi);
    for (int i = 0; i <= kGridTheta; ++i) {
        const double theta = M_PI * i / kGridTheta;
        for (int j = 0; j < kGridPhi; ++j) {
            const double phi = 2.0 * M_PI * j / kGridPhi;
            cells.push_back({f(theta, phi), theta, phi});
        }
    }
    const int seeds = std::min<int>(n_starts, static_cast<int>(cells.size()));
    std::partial_sort(cells.begin(), cells.begin() + seeds, cells.end(),
                      [](const Cell& a, const Cell& b) { return a.value < b.value; });

    double min_support = cells.front().value;  // best grid point always counts
    const double step0 = M_PI / kGridTheta;
    for (int s = 0; s < seeds; ++s)
        min_support = std::min(min_support, pattern_search(f, cells[s].theta, cells[s].phi, step0));

    return dot(centroid, direction) - min_support;
}

const std::vector<VerifiedInstance>& verified_instances() {
    static const std::vector<VerifiedInstance> table = {
        {"primary", SloanParams(0.0231, PhaseSpec::eta_fourier({{1, 0.2344}})), 1, 0.051},
        {"second", SloanParams(0.0321, PhaseSpec::eta_fourier({{2, 0.1376}})), 1, 0.064},
        {"third", SloanParams(0.0517, PhaseSpec::eta_fourier({{3, -0.0552}})), 1, 0.099},
    };
    return table;
}

const VerifiedInstance& verified_instance(const std::string& name) {
    for (const VerifiedInstance& inst : verified_instances())
        if (inst.name == name) return inst;
    throw std::invalid_argument("unknown verified instance: " + name);
}

}  // namespace monostat
