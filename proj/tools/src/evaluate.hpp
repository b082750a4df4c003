#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "scatter/exact_reference.hpp"
#include "scatter/potential.hpp"
#include "scatter_cli/cli.hpp"

namespace scatter::cli::detail {

/// Exact / reference scattering length for any family.
double exact_length(const Potential& pot);

/// Partial-wave cross section; singular family is unsupported.
double exact_sigma(const Potential& pot, double k);

/// Phase shifts at k > 0 until |delta| < 1e-12 three times running.
std::vector<exact::PhaseShift> phase_shifts(const Potential& pot, double k);

/// Runs body(i) for i in [0, n) on a small thread pool. Rows are independent,
/// so results land in grid order regardless of scheduling.
void parallel_rows(std::size_t n, const std::function<void(std::size_t)>& body);

/// Evaluates fn into a cell, capturing any error.
Cell guarded(const std::function<double()>& fn);

}  // namespace scatter::cli::detail
