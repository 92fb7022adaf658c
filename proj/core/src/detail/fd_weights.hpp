#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace hartree::detail {

/// Finite-difference weights at x0 on arbitrary nodes (Fornberg's recursion).
/// Entry [k][j] is the weight of node j for the k-th derivative, k = 0..max_order.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            std::size_t max_order);

}  // namespace hartree::detail
