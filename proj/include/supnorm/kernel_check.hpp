#pragma once

// Grid property suites for the kernel layer: the Chebyshev majorant, the
// heat-kernel transform of the resolvent, the two routes to g_k, and the
// three analytic inequalities bounding them.

#include "json.hpp"

#include <string>
#include <vector>

namespace supnorm {

struct KernelGrid {
    std::vector<int> ks = {1, 2, 6};
    std::vector<double> eps = {0.1, 0.5};
    std::vector<double> sigmas = {1.5, 2.0, 10.0};
    int chebyshev_k_max = 50;
    double transform_tol = 1e-4;  // relative, for the heat-kernel transform
    double dual_tol = 1e-6;       // relative, for the two g_k routes
};

/// Default grid extended with weights up to k_max (k_max <= 6 leaves it unchanged).
KernelGrid kernel_grid(int k_max = 6);

struct KernelCheckItem {
    std::string suite;
    bool passed = false;
    int points = 0;
    double worst = 0.0;  // largest observed ratio or relative error
    double limit = 0.0;  // threshold the worst value is compared against
    std::string detail;
};

struct KernelCheckReport {
    std::vector<KernelCheckItem> items;
    bool all_passed() const;
    nlohmann::json to_json() const;
    std::string table() const;
};

KernelCheckReport run_kernel_checks(const KernelGrid& grid);

}  // namespace supnorm
