#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace frex {

enum class FieldChoice { u, v };

/// Per-time L^1, L^2, L^inf norms of both components, plus their signed
/// masses (the zero Fourier mode) for the conservation diagnostics.
/// Times are strictly increasing; recording a non-finite entry truncates
/// the series at that point.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> l1_u, l2_u, linf_u;
    std::vector<double> l1_v, l2_v, linf_v;
    std::vector<double> mass_u, mass_v;
    bool truncated = false;

    std::size_t size() const { return times.size(); }

    void record(double t, double n1u, double n2u, double niu, double n1v, double n2v,
                double niv, double mu, double mv) {
        if (truncated) return;
        if (!times.empty() && t <= times.back())
            throw std::invalid_argument("NormSeries: times must be strictly increasing");
        bool finite = std::isfinite(n1u) && std::isfinite(n2u) && std::isfinite(niu) &&
                      std::isfinite(n1v) && std::isfinite(n2v) && std::isfinite(niv);
        if (!finite) {
            truncated = true;
            return;
        }
        times.push_back(t);
        l1_u.push_back(n1u);
        l2_u.push_back(n2u);
        linf_u.push_back(niu);
        l1_v.push_back(n1v);
        l2_v.push_back(n2v);
        linf_v.push_back(niv);
        mass_u.push_back(mu);
        mass_v.push_back(mv);
    }

    const std::vector<double>& column(FieldChoice w, double m) const {
        bool is_u = w == FieldChoice::u;
        if (m == 1.0) return is_u ? l1_u : l1_v;
        if (m == 2.0) return is_u ? l2_u : l2_v;
        if (std::isinf(m)) return is_u ? linf_u : linf_v;
        throw std::invalid_argument("NormSeries: only m in {1, 2, inf} is recorded");
    }
};

}  // namespace frex
