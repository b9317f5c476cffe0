#pragma once

#include <cstddef>
#include <vector>

namespace ffgain::quadrature {

// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computes the n-point rule via Newton iteration on the Legendre polynomial.
// Results are cached per n; the returned reference stays valid for the
// process lifetime.
const Rule& gauss_legendre(std::size_t n);

// Same rule mapped to [a, b].
Rule gauss_legendre(std::size_t n, double a, double b);

}  // namespace ffgain::quadrature
