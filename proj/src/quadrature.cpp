#include "ffgain/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "ffgain/errors.hpp"
#include "ffgain/units.hpp"

namespace ffgain::quadrature {

namespace {

Rule compute_rule(std::size_t n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n(x).
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                                   (static_cast<double>(k) - 1.0) * p0) /
                                  static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
    if (n == 0) throw validation_error("quadrature order must be >= 1");
    static std::mutex mutex;
    static std::map<std::size_t, Rule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

Rule gauss_legendre(std::size_t n, double a, double b) {
    const Rule& base = gauss_legendre(n);
    Rule mapped;
    mapped.nodes.resize(n);
    mapped.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        mapped.nodes[i] = mid + halfwidth * base.nodes[i];
        mapped.weights[i] = halfwidth * base.weights[i];
    }
    return mapped;
}

}  // namespace ffgain::quadrature
